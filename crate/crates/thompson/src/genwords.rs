//! Words over named generators: the gadgets `φ_¬, φ_∨, φ_∧, φ_{0f,4}`, the
//! adjacent transpositions `τ_{i,i+1}`, and the κ elements.
//!
//! A [`GenWord`] is written the way functions compose: the leftmost token is
//! applied last. [`eval`] interprets a word pointwise without building any
//! tables, so it also works for transpositions whose tables would be huge.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::codes::{bit_words, Letter, Word};
use crate::kappa::{kappa_apply, kappa_conjugate, kappa_is_identity, KTok, KappaWord};
use crate::table::Table;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("kappa tokens have no finite table")]
    KappaToken,
    #[error("sigma needs i < j, got ({0}, {1})")]
    Index(usize, usize),
    #[error("word has a nontrivial kappa part")]
    KappaPresent,
    #[error("table is not in the bit-preserving mod 3 subgroup")]
    NotInSubgroup,
}

/// The generator named by a token, without its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Not,
    Or,
    And,
    F4,
    /// `τ_{i,i+1}`.
    Tau(usize),
    /// `κ_i` for `i ∈ {0,1,2,3}`.
    K(u8),
    /// `κ₃₂₁ = κ₁⁻¹κ₂⁻¹κ₃⁻¹`.
    K321,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenToken {
    pub kind: GenKind,
    pub inverse: bool,
}

impl GenToken {
    pub const NOT: GenToken = GenToken::new(GenKind::Not);
    pub const OR: GenToken = GenToken::new(GenKind::Or);
    pub const AND: GenToken = GenToken::new(GenKind::And);
    pub const F4: GenToken = GenToken::new(GenKind::F4);
    pub const K321: GenToken = GenToken::new(GenKind::K321);

    pub const fn new(kind: GenKind) -> GenToken {
        GenToken { kind, inverse: false }
    }

    pub const fn tau(i: usize) -> GenToken {
        GenToken::new(GenKind::Tau(i))
    }

    pub const fn k(i: u8) -> GenToken {
        GenToken::new(GenKind::K(i))
    }

    pub fn inv(self) -> GenToken {
        GenToken { kind: self.kind, inverse: !self.inverse }
    }

    pub fn is_kappa(self) -> bool {
        matches!(self.kind, GenKind::K(_) | GenKind::K321)
    }

    /// The token as a κ-word, for κ tokens.
    pub fn kappa_word(self) -> Option<KappaWord> {
        let k = match self.kind {
            GenKind::K(i) => KappaWord(vec![KTok::new(i, false)]),
            GenKind::K321 => KappaWord::k321_pow(1),
            _ => return None,
        };
        Some(if self.inverse { k.inverse() } else { k })
    }
}

impl fmt::Display for GenToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Not => f.write_str("not")?,
            GenKind::Or => f.write_str("or")?,
            GenKind::And => f.write_str("and")?,
            GenKind::F4 => f.write_str("f4")?,
            GenKind::Tau(i) => write!(f, "t{i}")?,
            GenKind::K(i) => write!(f, "k{i}")?,
            GenKind::K321 => f.write_str("K")?,
        }
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A product of generator tokens; the leftmost token is applied last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenWord(pub Vec<GenToken>);

impl GenWord {
    pub fn new(tokens: Vec<GenToken>) -> GenWord {
        GenWord(tokens)
    }

    pub fn tokens(&self) -> &[GenToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GenWord {
        GenWord(self.0.iter().rev().map(|t| t.inv()).collect())
    }

    /// `self · other`: `other` acts first.
    pub fn then_after(&self, other: &GenWord) -> GenWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GenWord(v)
    }

    pub fn push_left(&mut self, other: &GenWord) {
        let mut v = other.0.clone();
        v.extend_from_slice(&self.0);
        self.0 = v;
    }

    pub fn power(&self, n: usize) -> GenWord {
        GenWord(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }

    pub fn has_kappa(&self) -> bool {
        self.0.iter().any(|t| t.is_kappa())
    }

    /// Largest `i` among the `τ_{i,i+1}` tokens.
    pub fn max_tau_index(&self) -> Option<usize> {
        self.0
            .iter()
            .filter_map(|t| match t.kind {
                GenKind::Tau(i) => Some(i),
                _ => None,
            })
            .max()
    }

    /// Length when every `τ_{i,i+1}` is charged `i + 1` symbols, as if its
    /// index were written in unary.
    pub fn unary_length(&self) -> usize {
        self.0
            .iter()
            .map(|t| match t.kind {
                GenKind::Tau(i) => i + 1,
                _ => 1,
            })
            .sum()
    }

    /// Removes adjacent inverse pairs.
    pub fn reduced(&self) -> GenWord {
        let mut out: Vec<GenToken> = Vec::with_capacity(self.0.len());
        for &t in &self.0 {
            if out.last() == Some(&t.inv()) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        GenWord(out)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

const F4_ROWS: [(&str, &str); 9] = [
    ("0", "0000"),
    ("#", "000#"),
    ("10", "01"),
    ("1#", "0#"),
    ("110", "001"),
    ("11#", "00#"),
    ("1110", "0001"),
    ("111#", "#"),
    ("1111", "1"),
];

fn f4_apply(w: &[Letter], inverse: bool) -> Option<Word> {
    F4_ROWS.iter().find_map(|(a, b)| {
        let (src, dst) = if inverse { (b, a) } else { (a, b) };
        let src = Word::parse(src).expect("static row");
        src.is_prefix_of(w).then(|| Word::parse(dst).expect("static row").concat(&w[src.len()..]))
    })
}

/// Applies a gate that flips the first bit by `op(x₁, x₂)` on three-bit
/// prefixes and fixes `{0,1}^{≤2}#`.
fn gate_apply(w: &[Letter], op: fn(bool, bool) -> bool) -> Option<Word> {
    let head: Vec<Option<bool>> = w.iter().take(3).map(|l| l.as_bit()).collect();
    match head.as_slice() {
        [Some(a), Some(b), Some(c)] => {
            let mut v = w.to_vec();
            v[0] = Letter::bit(a ^ op(*b, *c));
            Some(Word::from_letters(v))
        }
        _ if head.contains(&None) => Some(Word::from_letters(w.to_vec())),
        _ => None,
    }
}

/// Number of bits in front of the first `#`, or `None` if there is no `#`.
fn bit_prefix_len(w: &[Letter]) -> Option<usize> {
    w.iter().position(|&l| l == Letter::Hash)
}

/// The word over `{τ_{0,1}, τ_{1,2}, κ₁, κ₂, κ₃₂₁}` that equals
/// `τ_{i,i+1}`. Its length is linear in `i`.
pub fn tau_word_over_finite_gens(i: usize) -> GenWord {
    if i <= 1 {
        return GenWord(vec![GenToken::tau(i)]);
    }
    let n = (i - 1) / 3;
    let r = (i - 1) % 3;
    let k = GenToken::K321;
    // The κ₁ and κ₂ corrections conjugate from outside the κ₃₂₁ powers.
    let outer: Vec<GenToken> = match r {
        0 => vec![],
        1 => vec![GenToken::k(1)],
        _ => vec![GenToken::k(2), GenToken::k(1)],
    };
    let mut toks = outer.clone();
    toks.extend(core::iter::repeat_n(k.inv(), n));
    toks.push(GenToken::tau(1));
    toks.extend(core::iter::repeat_n(k, n));
    toks.extend(outer.iter().rev().map(|t| t.inv()));
    GenWord(toks)
}

/// Destination of position `k` when a word of positional tokens (τ and κ)
/// acts on `len` bits followed by `#`.
fn positional_dest(w: &GenWord, len: usize, mut k: usize) -> usize {
    for t in w.0.iter().rev() {
        match t.kind {
            GenKind::Tau(j) => {
                if len >= j + 2 {
                    if k == j {
                        k = j + 1;
                    } else if k == j + 1 {
                        k = j;
                    }
                }
            }
            _ => {
                let kw = t.kappa_word().expect("positional word holds only tau and kappa tokens");
                for kt in kw.0.iter().rev() {
                    k = kt.dest(len, k);
                }
            }
        }
    }
    k
}

/// Where `τ_{i,i+1}` sends each position of a bit block of length `len`
/// shorter than `i + 2`. These short values come from the κ-conjugation
/// formula for the transposition.
pub fn tau_short_perm(i: usize, len: usize) -> Vec<usize> {
    let w = tau_word_over_finite_gens(i);
    (0..len).map(|k| positional_dest(&w, len, k)).collect()
}

fn tau_apply(i: usize, w: &[Letter]) -> Option<Word> {
    let bits = w.iter().take(i + 2).take_while(|l| l.is_bit()).count();
    if bits >= i + 2 {
        let mut v = w.to_vec();
        v.swap(i, i + 1);
        return Some(Word::from_letters(v));
    }
    let len = bit_prefix_len(w)?;
    let perm = tau_short_perm(i, len);
    let mut v = w.to_vec();
    for (k, &d) in perm.iter().enumerate() {
        v[d] = w[k];
    }
    Some(Word::from_letters(v))
}

/// Applies one token pointwise.
pub fn token_apply(t: GenToken, w: &[Letter]) -> Option<Word> {
    match t.kind {
        GenKind::Not => {
            let first = *w.first()?;
            let mut v = w.to_vec();
            v[0] = match first {
                Letter::Zero => Letter::One,
                Letter::One => Letter::Zero,
                Letter::Hash => Letter::Hash,
            };
            Some(Word::from_letters(v))
        }
        GenKind::Or => gate_apply(w, |a, b| a | b),
        GenKind::And => gate_apply(w, |a, b| a & b),
        GenKind::F4 => f4_apply(w, t.inverse),
        GenKind::Tau(i) => tau_apply(i, w),
        GenKind::K(_) | GenKind::K321 => kappa_apply(&t.kappa_word().expect("kappa token"), w),
    }
}

/// Applies the tokens right to left; `None` if some stage is undefined.
pub fn eval(w: &GenWord, x: &[Letter]) -> Option<Word> {
    let mut cur = Word::from_letters(x.to_vec());
    for t in w.0.iter().rev() {
        cur = token_apply(*t, &cur)?;
    }
    Some(cur)
}

fn table_from_rule(domain: &[Word], f: impl Fn(&Word) -> Word) -> Table {
    Table::from_bijection(domain.iter().map(|x| (x.clone(), f(x))).collect())
}

/// `{0,1}^n ∪ {0,1}^{<n}#`.
fn depth_code(n: usize) -> Vec<Word> {
    let mut code = bit_words(n);
    for k in 0..n {
        code.extend(bit_words(k).into_iter().map(|v| v.child(Letter::Hash)));
    }
    code
}

/// The table of `τ_{i,i+1}` on `{0,1}^{i+2} ∪ {0,1}^{≤i+1}#`.
pub fn make_adjacent_transposition(i: usize) -> Table {
    table_from_rule(&depth_code(i + 2), |x| tau_apply(i, x).expect("total on its domain code"))
}

/// The table of `τ_{i,j}`, the swap of positions `i` and `j`, built from
/// adjacent transpositions.
pub fn make_transposition(i: usize, j: usize) -> Table {
    materialize(&transposition_word(i, j)).expect("tau words are kappa free")
}

/// `τ_{i,i+1} τ_{i+1,i+2} ⋯ τ_{j-1,j} ⋯ τ_{i+1,i+2} τ_{i,i+1}`.
pub fn transposition_word(i: usize, j: usize) -> GenWord {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == j {
        return GenWord::default();
    }
    let mut toks: Vec<GenToken> = (i..j).map(GenToken::tau).collect();
    toks.extend((i..j - 1).rev().map(GenToken::tau));
    GenWord(toks)
}

/// `σ_{i,j} = τ_{j-1,j} ⋯ τ_{i,i+1}`, the cyclic left shift of positions
/// `i..=j`.
pub fn sigma_word(i: usize, j: usize) -> Result<GenWord, GenError> {
    if i >= j {
        return Err(GenError::Index(i, j));
    }
    Ok(GenWord((i..j).rev().map(GenToken::tau).collect()))
}

/// The table of a non-κ token.
pub fn token_table(t: GenToken) -> Result<Table, GenError> {
    let base = match t.kind {
        GenKind::Not => table_from_rule(&depth_code(1), |x| token_apply(t, x).expect("total")),
        GenKind::Or | GenKind::And => {
            table_from_rule(&depth_code(3), |x| token_apply(t, x).expect("total"))
        }
        GenKind::F4 => Table::from_bijection(
            F4_ROWS.iter().map(|(a, b)| (Word::parse(a).unwrap(), Word::parse(b).unwrap())).collect(),
        ),
        GenKind::Tau(i) => make_adjacent_transposition(i),
        GenKind::K(_) | GenKind::K321 => return Err(GenError::KappaToken),
    };
    Ok(if t.inverse { base.invert() } else { base })
}

/// Tables of tokens seen so far, so long words do not rebuild them.
#[derive(Default)]
pub struct TableCache {
    tables: BTreeMap<GenToken, Table>,
}

impl TableCache {
    pub fn get(&mut self, t: GenToken) -> Result<&Table, GenError> {
        match self.tables.entry(t) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(token_table(t)?)),
        }
    }
}

/// Splits a word into a table part and a κ part: the word equals `g · K`
/// with `K` acting first. Table tokens must preserve bit words, `#`-words
/// and lengths mod 3, which every built-in gadget does.
pub fn split_kappa(w: &GenWord) -> Result<(Table, KappaWord), GenError> {
    let mut cache = TableCache::default();
    let mut g = Table::identity();
    let mut k: Vec<KTok> = Vec::new();
    for t in w.0.iter().rev() {
        if let Some(kw) = t.kappa_word() {
            g = kappa_conjugate(&g, &kw).map_err(|_| GenError::NotInSubgroup)?;
            let mut next = kw.0;
            next.extend_from_slice(&k);
            k = next;
        } else {
            g = cache.get(*t)?.compose(&g);
        }
    }
    Ok((g, KappaWord(k)))
}

/// The canonical table of the element a word denotes. κ tokens are allowed
/// as long as they cancel.
pub fn materialize(w: &GenWord) -> Result<Table, GenError> {
    let (g, k) = split_kappa(w)?;
    if kappa_is_identity(&k) {
        Ok(g)
    } else {
        Err(GenError::KappaPresent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bit_words_upto, w};
    use crate::table::{member_of, GroupTag};

    fn gw(toks: &[GenToken]) -> GenWord {
        GenWord(toks.to_vec())
    }

    #[test]
    fn gadget_rows() {
        assert_eq!(token_apply(GenToken::OR, &w("001")), Some(w("101")));
        assert_eq!(token_apply(GenToken::OR, &w("101")), Some(w("001")));
        assert_eq!(token_apply(GenToken::AND, &w("111#")), Some(w("011#")));
        assert_eq!(token_apply(GenToken::OR, &w("1#")), Some(w("1#")));
        assert_eq!(token_apply(GenToken::OR, &w("10")), None);
        assert_eq!(token_apply(GenToken::F4, &w("#")), Some(w("000#")));
        assert_eq!(token_apply(GenToken::F4, &w("10")), Some(w("01")));
        assert_eq!(token_apply(GenToken::F4.inv(), &w("0000")), Some(w("0")));
        assert_eq!(token_apply(GenToken::NOT, &w("")), None);
    }

    #[test]
    fn token_tables_match_pointwise_rules() {
        let toks = [
            GenToken::NOT,
            GenToken::OR,
            GenToken::AND,
            GenToken::F4,
            GenToken::F4.inv(),
            GenToken::tau(0),
            GenToken::tau(1),
            GenToken::tau(3),
        ];
        for t in toks {
            let table = token_table(t).unwrap();
            assert!(member_of(&table, GroupTag::G31Mod3_01Sharp), "{t}");
            for x in bit_words_upto(6) {
                let xh = x.child(Letter::Hash);
                assert_eq!(table.apply(&xh), token_apply(t, &xh), "{t} on {xh}");
                // Pointwise rules may be undefined where the maximal
                // extension is not.
                if let Some(y) = token_apply(t, &x) {
                    assert_eq!(table.apply(&x), Some(y));
                }
            }
        }
        assert_eq!(token_table(GenToken::K321), Err(GenError::KappaToken));
    }

    #[test]
    fn adjacent_transpositions() {
        assert_eq!(make_adjacent_transposition(1).apply(&w("010")), Some(w("001")));
        assert_eq!(make_adjacent_transposition(0).apply(&w("0#")), Some(w("0#")));
        let t4 = make_adjacent_transposition(4);
        for x in bit_words(6) {
            let mut y = x.clone().into_letters();
            y.swap(4, 5);
            assert_eq!(t4.apply(&x), Some(Word::from_letters(y)));
        }
        for i in 0..6 {
            assert_eq!(make_adjacent_transposition(i).size(), (1 << (i + 3)) - 1);
        }
    }

    #[test]
    fn transpositions() {
        let t02 = make_transposition(0, 2);
        for x in bit_words(3) {
            let mut y = x.clone().into_letters();
            y.swap(0, 2);
            assert_eq!(t02.apply(&x), Some(Word::from_letters(y)));
        }
        assert!(make_transposition(3, 3).is_identity());
        assert_eq!(make_transposition(1, 2), make_adjacent_transposition(1));
        assert_eq!(make_transposition(2, 1), make_adjacent_transposition(1));
    }

    #[test]
    fn tau_words() {
        assert_eq!(tau_word_over_finite_gens(1), gw(&[GenToken::tau(1)]));
        assert_eq!(
            tau_word_over_finite_gens(4),
            gw(&[GenToken::K321.inv(), GenToken::tau(1), GenToken::K321])
        );
        assert_eq!(
            tau_word_over_finite_gens(2),
            gw(&[GenToken::k(1), GenToken::tau(1), GenToken::k(1).inv()])
        );
        for i in 0..40 {
            assert!(tau_word_over_finite_gens(i).len() <= 2 * i.div_ceil(3) + 5);
        }
        assert_eq!(tau_word_over_finite_gens(5).len(), 5);
    }

    #[test]
    fn tau_words_swap_long_arguments() {
        for i in 0..=10 {
            let word = tau_word_over_finite_gens(i);
            for x in bit_words_upto(i + 4) {
                let xh = x.child(Letter::Hash);
                assert_eq!(eval(&word, &xh), token_apply(GenToken::tau(i), &xh), "i={i} x={x}");
            }
        }
    }

    #[test]
    fn sigma_shifts() {
        assert_eq!(sigma_word(0, 1).unwrap(), gw(&[GenToken::tau(0)]));
        assert_eq!(sigma_word(0, 2).unwrap(), gw(&[GenToken::tau(1), GenToken::tau(0)]));
        assert_eq!(sigma_word(2, 2), Err(GenError::Index(2, 2)));
        let s = sigma_word(0, 3).unwrap();
        for x in bit_words(4) {
            let mut y = x[1..].to_vec();
            y.push(x[0]);
            assert_eq!(eval(&s, &x), Some(Word::from_letters(y)));
        }
    }

    #[test]
    fn eval_basics() {
        let x = w("0110#1");
        assert_eq!(eval(&gw(&[GenToken::NOT, GenToken::NOT]), &x), Some(x.clone()));
        assert_eq!(eval(&GenWord::default(), &x), Some(x));
        let k = gw(&[GenToken::K321]);
        let labels = eval(&k, &w("1000000000#")).unwrap();
        assert_eq!(labels, w("1000000000#"));
        // x₁ ends up at position 3.
        assert_eq!(eval(&k, &w("0100000000#")), Some(w("0001000000#")));
    }

    #[test]
    fn materialization() {
        let not = token_table(GenToken::NOT).unwrap();
        assert_eq!(materialize(&gw(&[GenToken::NOT])), Ok(not));
        assert!(materialize(&gw(&[GenToken::tau(0), GenToken::tau(0)])).unwrap().is_identity());
        assert_eq!(
            materialize(&gw(&[GenToken::K321.inv(), GenToken::tau(1), GenToken::K321])),
            Ok(make_adjacent_transposition(4))
        );
        assert_eq!(materialize(&tau_word_over_finite_gens(2)), Ok(make_adjacent_transposition(2)));
        assert_eq!(materialize(&gw(&[GenToken::K321])), Err(GenError::KappaPresent));
        assert!(materialize(&GenWord::default()).unwrap().is_identity());
    }

    #[test]
    fn reduction_and_powers() {
        let word = gw(&[GenToken::NOT, GenToken::OR, GenToken::OR.inv(), GenToken::F4]);
        assert_eq!(word.reduced(), gw(&[GenToken::NOT, GenToken::F4]));
        assert_eq!(gw(&[GenToken::tau(2)]).power(3).len(), 3);
        assert_eq!(gw(&[GenToken::tau(2), GenToken::NOT]).unary_length(), 4);
    }
}
