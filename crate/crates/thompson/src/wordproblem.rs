//! Word-problem deciders, the fixator membership test, separators, and the
//! circuit-equivalence pipeline built on them.
//!
//! There are three deciders for generator words:
//!
//! * [`wp_table`] materializes a κ-free word and compares with the identity.
//! * [`wp_normal_form`] rewrites a word over table tokens and `K` into
//!   `g · K^e` and tests `e = 0`, `g = 1`.
//! * [`wp_bounded_witness`] searches for a moved point `x#` up to the
//!   length bound `3N+1`. The search is symbolic: probe bits are variables
//!   and a branch is opened only when a gate reads an unassigned bit.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::circuits::{compile_strong, Circuit, CircuitError};
use crate::codes::{comparable, Letter, Word};
use crate::genwords::{eval, materialize, GenError, GenKind, GenToken, GenWord, TableCache};
use crate::kappa::{kappa_conjugate, kappa_position_perm, KappaWord};
use crate::table::{member_of, stab_fix_predicate, GroupTag, StabMode, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("element is outside G31_MOD3_01_SHARP")]
    NotInSubgroup,
    #[error("separator inputs are prefix-comparable")]
    ComparableInput,
    #[error("separator inputs must lie under 0 and be bit words or bit words ending in #")]
    Precondition,
    #[error("circuits differ in input or output count")]
    ArityMismatch,
    #[error("oracle and group modes disagree")]
    ModesDisagree,
    #[error("normal form supports only K among the kappa tokens")]
    UnsupportedKappa,
}

/// True iff the κ-free word denotes the identity.
pub fn wp_table(w: &GenWord) -> Result<bool, WpError> {
    if w.has_kappa() {
        return Err(GenError::KappaPresent.into());
    }
    Ok(materialize(w)?.is_identity())
}

/// Rewrites `w` as `g · K^e` with `K` applied first, scanning right to left.
pub fn wp_normal_form(w: &GenWord) -> Result<(Table, i64), WpError> {
    let mut cache = TableCache::default();
    let mut g = Table::identity();
    let mut e = 0i64;
    for &t in w.tokens().iter().rev() {
        match t.kind {
            GenKind::K321 => {
                let k = KappaWord::k321_pow(if t.inverse { -1 } else { 1 });
                g = kappa_conjugate(&g, &k).map_err(|_| WpError::NotInSubgroup)?;
                e += if t.inverse { -1 } else { 1 };
            }
            GenKind::K(_) => return Err(WpError::UnsupportedKappa),
            _ => {
                let a = cache.get(t)?;
                if !member_of(a, GroupTag::G31Mod3_01Sharp) {
                    return Err(WpError::NotInSubgroup);
                }
                g = a.compose(&g);
            }
        }
    }
    Ok((g, e))
}

/// Whether the normal form is trivial.
pub fn wp_normal_form_is_identity(w: &GenWord) -> Result<bool, WpError> {
    let (g, e) = wp_normal_form(w)?;
    Ok(e == 0 && g.is_identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessConfig {
    /// Longest word in the domain and image codes of the table tokens.
    pub ell: usize,
    /// Longest probe the search will try.
    pub cap: usize,
}

impl WitnessConfig {
    pub const DEFAULT_CAP: usize = 21;

    /// Takes `ℓ` from the tables of the tokens that occur in `w`.
    pub fn for_word(w: &GenWord, cap: usize) -> WitnessConfig {
        let mut cache = TableCache::default();
        let ell = w
            .tokens()
            .iter()
            .filter(|t| !t.is_kappa())
            .map(|&t| cache.get(t).map_or(1, |tab| tab.max_word_len()))
            .max()
            .unwrap_or(1)
            .max(1);
        WitnessConfig { ell, cap: cap.max(1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    IdentityProven,
    NotIdentity(Word),
    IdentityUpTo(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::IdentityProven => f.write_str("identity-proven"),
            Verdict::NotIdentity(x) => write!(f, "not-identity {x}"),
            Verdict::IdentityUpTo(l) => write!(f, "identity-up-to {l}"),
        }
    }
}

/// `N = ℓ · (table tokens) + 6 · (κ tokens)`, with `K` counting as three
/// κ tokens.
pub fn witness_weight(w: &GenWord, ell: usize) -> usize {
    w.tokens()
        .iter()
        .map(|t| match t.kind {
            GenKind::K321 => 18,
            GenKind::K(_) => 6,
            _ => ell,
        })
        .sum()
}

/// Complete probe length `L* = 3N + 1`.
pub fn witness_bound(w: &GenWord, ell: usize) -> usize {
    3 * witness_weight(w, ell) + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    Hash,
    Bit(bool),
    /// Probe variable, possibly negated.
    Var(u32, bool),
}

fn resolve(s: Sym, assign: &[Option<bool>]) -> Sym {
    match s {
        Sym::Var(v, neg) => assign[v as usize].map_or(s, |b| Sym::Bit(b ^ neg)),
        _ => s,
    }
}

/// What a symbolic step is missing: the value of a probe variable, or a
/// letter beyond the end of an open word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Need {
    Var(u32),
    More,
}

impl From<u32> for Need {
    fn from(v: u32) -> Need {
        Need::Var(v)
    }
}

/// Result of one symbolic step: the new word, or what is needed first.
type Step = Result<Vec<Sym>, Need>;

fn sym_letter(s: Sym, assign: &[Option<bool>]) -> Result<Letter, u32> {
    match resolve(s, assign) {
        Sym::Hash => Ok(Letter::Hash),
        Sym::Bit(b) => Ok(Letter::bit(b)),
        Sym::Var(v, _) => Err(v),
    }
}

fn negate(s: Sym) -> Sym {
    match s {
        Sym::Hash => Sym::Hash,
        Sym::Bit(b) => Sym::Bit(!b),
        Sym::Var(v, n) => Sym::Var(v, !n),
    }
}

fn permute(w: &[Sym], dest: &[usize]) -> Vec<Sym> {
    let mut out = w.to_vec();
    for (k, &d) in dest.iter().enumerate() {
        out[d] = w[k];
    }
    out
}

/// Applies one token to a symbolic word. The word may be open, standing for
/// every word it is a prefix of; a step that would read past its end
/// reports [`Need::More`]. Tokens never look past the first `#`, so words
/// that contain one are never short of letters.
fn sym_step(t: GenToken, w: &[Sym], assign: &[Option<bool>], short: &mut ShortPerms) -> Step {
    let first_hash = w.iter().position(|s| *s == Sym::Hash);
    match t.kind {
        GenKind::Not => {
            let first = *w.first().ok_or(Need::More)?;
            let mut out = w.to_vec();
            out[0] = negate(first);
            Ok(out)
        }
        GenKind::Or | GenKind::And => {
            if w.iter().take(3).any(|s| *s == Sym::Hash) {
                return Ok(w.to_vec());
            }
            if w.len() < 3 {
                return Err(Need::More);
            }
            let absorbing = t.kind == GenKind::Or;
            let a = resolve(w[1], assign);
            let b = resolve(w[2], assign);
            let r = match (a, b) {
                (Sym::Bit(x), _) | (_, Sym::Bit(x)) if x == absorbing => absorbing,
                (Sym::Bit(_), Sym::Bit(_)) => !absorbing,
                (Sym::Var(v, _), _) | (_, Sym::Var(v, _)) => return Err(Need::Var(v)),
                _ => unreachable!("no # in the first three letters"),
            };
            let mut out = w.to_vec();
            if r {
                out[0] = negate(w[0]);
            }
            Ok(out)
        }
        GenKind::F4 => {
            let table = short.f4(t.inverse);
            let mut head = Vec::new();
            for &s in w {
                head.push(sym_letter(s, assign)?);
                if table.entries().iter().any(|(d, _)| d.letters() == head.as_slice()) {
                    let img = table.apply(&head).expect("domain entry");
                    let mut out: Vec<Sym> =
                        img.letters().iter().map(|l| l.as_bit().map_or(Sym::Hash, Sym::Bit)).collect();
                    out.extend_from_slice(&w[head.len()..]);
                    return Ok(out);
                }
            }
            Err(Need::More)
        }
        GenKind::Tau(i) => match first_hash {
            Some(len) if len < i + 2 => Ok(permute(w, short.tau(i, len))),
            _ if w.len() >= i + 2 => {
                let mut out = w.to_vec();
                out.swap(i, i + 1);
                Ok(out)
            }
            _ => Err(Need::More),
        },
        GenKind::K(_) | GenKind::K321 => {
            let len = first_hash.ok_or(Need::More)?;
            let k = t.kappa_word().expect("kappa token");
            Ok(permute(w, &kappa_position_perm(&k, len)))
        }
    }
}

/// Memoized position maps for short transpositions and the `F4` tables.
#[derive(Default)]
struct ShortPerms {
    tau: BTreeMap<(usize, usize), Vec<usize>>,
    f4: Option<(Table, Table)>,
}

impl ShortPerms {
    fn tau(&mut self, i: usize, len: usize) -> &[usize] {
        self.tau.entry((i, len)).or_insert_with(|| crate::genwords::tau_short_perm(i, len))
    }

    fn f4(&mut self, inverse: bool) -> &Table {
        let (fwd, inv) = self.f4.get_or_insert_with(|| {
            let t = crate::genwords::token_table(GenToken::F4).expect("finite token");
            let i = t.invert();
            (t, i)
        });
        if inverse {
            inv
        } else {
            fwd
        }
    }
}

/// Least assignment extending `assign` that makes the output differ from
/// the probe, if any.
fn leaf_witness(n: usize, out: &[Sym], assign: &[Option<bool>]) -> Option<Vec<bool>> {
    let complete = |fix: &[(usize, bool)]| {
        let mut a: Vec<bool> = assign.iter().map(|b| b.unwrap_or(false)).collect();
        for &(v, b) in fix {
            a[v] = b;
        }
        a
    };
    let shape_differs = out.len() != n + 1
        || out[n] != Sym::Hash
        || out[..n].contains(&Sym::Hash);
    if shape_differs {
        return Some(complete(&[]));
    }
    let mut best: Option<Vec<bool>> = None;
    let mut offer = |cand: Vec<bool>| {
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };
    for (j, &s) in out[..n].iter().enumerate() {
        match (resolve(s, assign), assign[j]) {
            (Sym::Bit(c), Some(a)) => {
                if a != c {
                    offer(complete(&[]));
                }
            }
            (Sym::Bit(c), None) => offer(complete(&[(j, !c)])),
            (Sym::Var(k, neg), _) => {
                let k = k as usize;
                if k == j {
                    if neg {
                        offer(complete(&[]));
                    }
                    continue;
                }
                match assign[j] {
                    // x_k ^ neg must differ from x_j.
                    Some(a) => offer(complete(&[(k, !(a ^ neg))])),
                    None if k < j => offer(complete(&[(k, false), (j, !neg)])),
                    None => offer(complete(&[(j, false), (k, !neg)])),
                }
            }
            (Sym::Hash, _) => unreachable!("shape already checked"),
        }
    }
    best
}

/// Least moved probe `x#` with `|x| = n`.
fn search_length(w: &GenWord, n: usize) -> Option<Vec<bool>> {
    let toks: Vec<GenToken> = w.tokens().iter().rev().copied().collect();
    let mut start: Vec<Sym> = (0..n as u32).map(|v| Sym::Var(v, false)).collect();
    start.push(Sym::Hash);
    let mut best: Option<Vec<bool>> = None;
    let mut short = ShortPerms::default();
    let mut stack = vec![(start, vec![None; n], 0usize)];
    while let Some((mut word, mut assign, mut next)) = stack.pop() {
        let mut branched = false;
        while next < toks.len() {
            match sym_step(toks[next], &word, &assign, &mut short) {
                Ok(out) => {
                    word = out;
                    next += 1;
                }
                Err(Need::More) => unreachable!("probe words end in #"),
                Err(Need::Var(v)) => {
                    let mut hi = assign.clone();
                    hi[v as usize] = Some(true);
                    stack.push((word.clone(), hi, next));
                    assign[v as usize] = Some(false);
                    stack.push((word.clone(), assign.clone(), next));
                    branched = true;
                    break;
                }
            }
        }
        if branched {
            continue;
        }
        if let Some(c) = leaf_witness(n, &word, &assign) {
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best
}

/// Searches `{0,1}^{≤L}·#` for a point moved by `w`, shortest first and
/// lexicographically least within a length.
pub fn wp_bounded_witness(w: &GenWord, cfg: WitnessConfig) -> Verdict {
    let bound = witness_bound(w, cfg.ell);
    let limit = bound.min(cfg.cap);
    for n in 0..=limit {
        if let Some(bits) = search_length(w, n) {
            let mut probe = Word::from_bits(bits);
            probe.push(Letter::Hash);
            let image = eval(w, &probe);
            assert_ne!(image.as_ref(), Some(&probe), "symbolic witness failed re-verification");
            return Verdict::NotIdentity(probe);
        }
    }
    if bound <= cfg.cap {
        Verdict::IdentityProven
    } else {
        Verdict::IdentityUpTo(cfg.cap)
    }
}

/// A concrete input, one letter longer than the pattern when the lengths
/// differ, on which the symbolic input and output disagree.
fn distinguish(inp: &[Sym], out: &[Sym], assign: &[Option<bool>]) -> Option<Vec<Letter>> {
    let mut assign = assign.to_vec();
    let mut tail = None;
    let opposite = |s: Sym| match s {
        Sym::Hash => Letter::Zero,
        Sym::Bit(b) => Letter::bit(!b),
        Sym::Var(..) => Letter::Hash,
    };
    let mut found = false;
    for j in 0..inp.len().max(out.len()) {
        match (inp.get(j), out.get(j)) {
            (Some(&a), Some(&b)) => {
                let (a, b) = (resolve(a, &assign), resolve(b, &assign));
                match (a, b) {
                    _ if a == b => continue,
                    (Sym::Var(v, n), Sym::Bit(c)) | (Sym::Bit(c), Sym::Var(v, n)) => {
                        assign[v as usize] = Some(!c ^ n);
                    }
                    (Sym::Var(v, n1), Sym::Var(u, n2)) if v != u => {
                        assign[v as usize] = Some(false);
                        assign[u as usize] = Some(!n1 ^ n2);
                    }
                    _ => {}
                }
            }
            (None, Some(&b)) => tail = Some(opposite(resolve(b, &assign))),
            (Some(&a), None) => tail = Some(opposite(resolve(a, &assign))),
            (None, None) => unreachable!(),
        }
        found = true;
        break;
    }
    if !found {
        return None;
    }
    let mut x: Vec<Letter> = inp
        .iter()
        .map(|&s| match resolve(s, &assign) {
            Sym::Hash => Letter::Hash,
            Sym::Bit(b) => Letter::bit(b),
            Sym::Var(..) => Letter::Zero,
        })
        .collect();
    x.extend(tail);
    Some(x)
}

/// A point of `0·{0,1,#}*` moved by the κ-free word `w`, with its image, or
/// `None` when `w` fixes that ideal.
///
/// Tokens only read letters in front of the first `#` and never create or
/// remove a `#`, so the inputs `0·β^k` and `0·β^k·#` with unknown bits `β`
/// cover the ideal. The search lengthens them until every token is defined
/// and branches on a bit only when a gate or an `F4` row reads it, which
/// keeps the work polynomial in the word length instead of exponential in
/// the width of the bits it touches.
pub fn moved_under_zero(w: &GenWord) -> Result<Option<(Word, Word)>, WpError> {
    if w.has_kappa() {
        return Err(WpError::Gen(GenError::KappaToken));
    }
    let toks: Vec<GenToken> = w.tokens().iter().rev().copied().collect();
    let mut short = ShortPerms::default();
    // (bits after the leading 0, closed by #, assignment)
    let mut stack = vec![(0usize, false, Vec::<Option<bool>>::new())];
    while let Some((n, closed, mut assign)) = stack.pop() {
        let mut inp = vec![Sym::Bit(false)];
        inp.extend((0..n as u32).map(|v| Sym::Var(v, false)));
        if closed {
            inp.push(Sym::Hash);
        }
        let mut word = inp.clone();
        let mut next = 0;
        let mut pending = None;
        while next < toks.len() {
            match sym_step(toks[next], &word, &assign, &mut short) {
                Ok(out) => {
                    word = out;
                    next += 1;
                }
                Err(need) => {
                    pending = Some(need);
                    break;
                }
            }
        }
        match pending {
            Some(Need::Var(v)) => {
                let mut hi = assign.clone();
                hi[v as usize] = Some(true);
                stack.push((n, closed, hi));
                assign[v as usize] = Some(false);
                stack.push((n, closed, assign));
            }
            Some(Need::More) => {
                debug_assert!(!closed, "closed words are never short of letters");
                let mut longer = assign.clone();
                longer.push(None);
                stack.push((n + 1, false, longer));
                stack.push((n, true, assign));
            }
            None => {
                if let Some(x) = distinguish(&inp, &word, &assign) {
                    let y = eval(w, &x).expect("defined on every extension of the pattern");
                    let x = Word::from_letters(x);
                    assert_ne!(x, y, "symbolic mismatch failed re-verification");
                    return Ok(Some((x, y)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `φ` fixes every point of `0·{0,1,#}*` where it is defined.
pub fn is_pfix_zero(phi: &Table) -> bool {
    stab_fix_predicate(phi, &[Word::from_letters(vec![Letter::Zero])], StabMode::PFix)
}

/// The maximal code made of `path`'s three children and every sibling met
/// on the way down to it.
fn code_around(path: &Word) -> Vec<Word> {
    let mut code = Vec::new();
    let mut prefix = Word::empty();
    for &l in path.letters() {
        code.extend(Letter::ALL.iter().filter(|&&c| c != l).map(|&c| prefix.child(c)));
        prefix.push(l);
    }
    code.extend(Letter::ALL.iter().map(|&c| path.child(c)));
    code
}

fn swap_table(code: Vec<Word>, a: &Word, b: &Word) -> Table {
    let pairs = code
        .into_iter()
        .map(|x| {
            let y = if x == *a {
                b.clone()
            } else if x == *b {
                a.clone()
            } else {
                x.clone()
            };
            (x, y)
        })
        .collect();
    Table::new(pairs).expect("swap of two members of one maximal code")
}

/// An element of `pFix({1,#}·{0,1,#}*)` that moves `y` (or `y·0` when `y`
/// is a bit word) and fixes everything incomparable with the moved words
/// other than `avoid`'s side.
fn mover(y: &Word, avoid: Option<&Word>) -> Table {
    if y.is_bits() {
        swap_table(code_around(y), &y.child(Letter::Zero), &y.child(Letter::One))
    } else {
        // y = y₀#: swap y₀# with y₀b# for the bit b on the side away from
        // `avoid`.
        let y0 = y.parent().expect("ends in #");
        let b = match avoid.and_then(|x| x.letters().get(y0.len()).filter(|_| y0.is_prefix_of(x))) {
            Some(Letter::Zero) => Letter::One,
            _ => Letter::Zero,
        };
        let mid = y0.child(b);
        let mut code = code_around(&mid);
        code.retain(|c| *c != mid);
        let far = mid.child(Letter::Hash);
        swap_table(code, y, &far)
    }
}

/// A separator for two incomparable points under `0`: it fixes
/// `{1,#}·{0,1,#}*` pointwise, fixes `x·0` (or `x`), and moves `y·0` (or
/// `y`). Points ending in `#` are treated without the trailing `0`.
pub fn build_separator(x: &Word, y: &Word) -> Result<Table, WpError> {
    if comparable(x, y) {
        return Err(WpError::ComparableInput);
    }
    let shaped = |w: &Word| w.first() == Some(&Letter::Zero) && (w.is_bits() || w.is_bits_hash());
    if !shaped(x) || !shaped(y) {
        return Err(WpError::Precondition);
    }
    Ok(mover(y, Some(x)))
}

fn commutes(g: &Table, h: &Table) -> bool {
    g.compose(h) == h.compose(g)
}

/// An `h ∈ pFix({1,#}·{0,1,#}*)` that does not commute with `g`, or `None`
/// exactly when `g` fixes the ideal `0·{0,1,#}*`.
pub fn find_noncommuting_witness(g: &Table) -> Result<Option<Table>, WpError> {
    if !member_of(g, GroupTag::G31Mod3_01Sharp) {
        return Err(WpError::NotInSubgroup);
    }
    if is_pfix_zero(g) {
        return Ok(None);
    }
    let zero = Word::from_letters(vec![Letter::Zero]);
    let under_zero = |w: &Word| zero.is_prefix_of(w);
    for (x, y) in g.refine_against(core::slice::from_ref(&zero)) {
        if !under_zero(&x) || x == y {
            continue;
        }
        let candidate = if !under_zero(&y) {
            // g pushes x out of the 0-region; any h moving x will do.
            mover(&x, None)
        } else {
            let (x, y) = separate(&x, &y);
            mover(&y, Some(&x))
        };
        if !commutes(g, &candidate) {
            return Ok(Some(candidate));
        }
    }
    unreachable!("every element moving a point under 0 has a separator")
}

/// Extends a comparable pair of bit words `x ↦ y` by one letter so the two
/// sides become incomparable.
fn separate(x: &Word, y: &Word) -> (Word, Word) {
    if !comparable(x, y) {
        return (x.clone(), y.clone());
    }
    let (short, long) = if x.len() < y.len() { (x, y) } else { (y, x) };
    let next = long[short.len()];
    let c = if next == Letter::Zero { Letter::One } else { Letter::Zero };
    (x.child(c), y.child(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    Oracle,
    Group,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivReport {
    pub equivalent: bool,
    /// Least input on which the circuits differ (oracle side).
    pub input: Option<Vec<bool>>,
    /// A point under `0` moved by `Φ₂⁻¹Φ₁` (group side).
    pub moved: Option<(Word, Word)>,
}

fn oracle_difference(c1: &Circuit, c2: &Circuit) -> Result<Option<Vec<bool>>, WpError> {
    let m = c1.inputs();
    for k in 0..1u64 << m {
        let x: Vec<bool> = (0..m).rev().map(|j| k >> j & 1 == 1).collect();
        if c1.eval(&x)? != c2.eval(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// The table of `Φ₂⁻¹Φ₁` for the strong simulations of two circuits. Its
/// size grows exponentially with the width of the simulation, so this is
/// practical only for very small circuits; [`circuit_equiv`] decides the
/// same question with [`moved_under_zero`].
pub fn difference_element(c1: &Circuit, c2: &Circuit) -> Result<Table, WpError> {
    let w = compile_strong(c2).inverse().then_after(&compile_strong(c1));
    Ok(materialize(&w)?)
}

/// Decides whether two circuits compute the same function, by truth table,
/// through the group, or both.
pub fn circuit_equiv(c1: &Circuit, c2: &Circuit, mode: EquivMode) -> Result<EquivReport, WpError> {
    if c1.inputs() != c2.inputs() || c1.output_count() != c2.output_count() {
        return Err(WpError::ArityMismatch);
    }
    let mut report = EquivReport { equivalent: true, input: None, moved: None };
    if mode != EquivMode::Group {
        report.input = oracle_difference(c1, c2)?;
        report.equivalent = report.input.is_none();
    }
    if mode != EquivMode::Oracle {
        let w = compile_strong(c2).inverse().then_after(&compile_strong(c1));
        report.moved = moved_under_zero(&w)?;
        let group = report.moved.is_none();
        if mode == EquivMode::Both && group != report.equivalent {
            return Err(WpError::ModesDisagree);
        }
        report.equivalent = group;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{Gate, GateKind, Source};
    use crate::codes::w;
    use alloc::string::ToString;

    fn gw(toks: &[GenToken]) -> GenWord {
        GenWord(toks.to_vec())
    }

    fn t(pairs: &[(&str, &str)]) -> Table {
        Table::new(pairs.iter().map(|(a, b)| (w(a), w(b))).collect()).unwrap()
    }

    #[test]
    fn table_decider() {
        assert_eq!(wp_table(&gw(&[GenToken::NOT, GenToken::NOT])), Ok(true));
        assert_eq!(wp_table(&gw(&[GenToken::tau(0)])), Ok(false));
        // (τ₀τ₁)³ is trivial on long words but acts as τ₀ on two-bit words
        // ending in #, where τ₁ is the identity.
        let braid: Vec<GenToken> = (0..6).map(|k| GenToken::tau(k % 2)).collect();
        assert_eq!(wp_table(&gw(&braid)), Ok(false));
        let fixes_long = crate::codes::bit_words(4).iter().all(|x| eval(&gw(&braid), x).as_ref() == Some(x));
        assert!(fixes_long);
        assert_eq!(eval(&gw(&braid), &w("01#")), Some(w("10#")));
        assert!(wp_table(&gw(&[GenToken::K321])).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let k = GenToken::K321;
        assert_eq!(wp_normal_form_is_identity(&gw(&[k, k.inv()])), Ok(true));
        let conj = gw(&[k.inv(), GenToken::tau(1), k, GenToken::tau(4).inv()]);
        assert_eq!(wp_normal_form_is_identity(&conj), Ok(true));
        let not = gw(&[GenToken::NOT, k, GenToken::NOT.inv(), k.inv()]);
        assert_eq!(wp_normal_form_is_identity(&not), Ok(true));
        let (g, e) = wp_normal_form(&gw(&[k, GenToken::NOT])).unwrap();
        assert_eq!(e, 1);
        assert_eq!(g.size(), 3);
        assert_eq!(wp_normal_form(&gw(&[GenToken::k(1)])), Err(WpError::UnsupportedKappa));
    }

    #[test]
    fn witness_search_examples() {
        let cfg = WitnessConfig { ell: 1, cap: 21 };
        assert_eq!(wp_bounded_witness(&GenWord::default(), cfg), Verdict::IdentityProven);
        let k0 = gw(&[GenToken::k(0)]);
        match wp_bounded_witness(&k0, cfg) {
            Verdict::NotIdentity(x) => assert!(x.len() <= 4, "{x}"),
            v => panic!("{v}"),
        }
        let k = GenToken::K321;
        let not = gw(&[GenToken::NOT, k, GenToken::NOT.inv(), k.inv()]);
        let cfg = WitnessConfig::for_word(&not, 1000);
        assert_eq!(wp_bounded_witness(&not, cfg), Verdict::IdentityProven);
        let small = WitnessConfig { ell: 1, cap: 5 };
        assert_eq!(wp_bounded_witness(&not, small), Verdict::IdentityUpTo(5));
    }

    #[test]
    fn witness_is_least_moved_probe() {
        let word = gw(&[GenToken::OR, GenToken::tau(3)]);
        let cfg = WitnessConfig::for_word(&word, 21);
        let Verdict::NotIdentity(found) = wp_bounded_witness(&word, cfg) else { panic!() };
        let brute = crate::codes::bit_words_upto(8)
            .into_iter()
            .map(|x| x.child(Letter::Hash))
            .filter(|x| eval(&word, x).as_ref() != Some(x))
            .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
            .unwrap();
        assert_eq!(found, brute);
    }

    #[test]
    fn pfix_examples() {
        assert!(is_pfix_zero(&Table::identity()));
        let s = [("00", "01"), ("01", "00"), ("0#", "0#"), ("1", "1"), ("#", "#")];
        assert!(!is_pfix_zero(&t(&s)));
        let s = [("10", "11"), ("11", "10"), ("1#", "1#"), ("0", "0"), ("#", "#")];
        assert!(is_pfix_zero(&t(&s)));
    }

    #[test]
    fn separators() {
        let h = build_separator(&w("00"), &w("01")).unwrap();
        assert_eq!(h.apply(&w("000")), Some(w("000")));
        assert_eq!(h.apply(&w("010")), Some(w("011")));
        assert!(stab_fix_predicate(&h, &[w("1"), w("#")], StabMode::PFix));
        assert!(member_of(&h, GroupTag::G31Mod3_01Sharp));
        let h = build_separator(&w("00#"), &w("01#")).unwrap();
        assert_eq!(h.apply(&w("00#")), Some(w("00#")));
        assert_ne!(h.apply(&w("01#")), Some(w("01#")));
        assert!(stab_fix_predicate(&h, &[w("1"), w("#")], StabMode::PFix));
        assert!(member_of(&h, GroupTag::G31Mod3_01Sharp));
        assert_eq!(build_separator(&w("0"), &w("1")), Err(WpError::Precondition));
        assert_eq!(build_separator(&w("0"), &w("01")), Err(WpError::ComparableInput));
    }

    #[test]
    fn noncommuting_witnesses() {
        assert_eq!(find_noncommuting_witness(&Table::identity()), Ok(None));
        let s = t(&[("00", "01"), ("01", "00"), ("0#", "0#"), ("1", "1"), ("#", "#")]);
        let h = find_noncommuting_witness(&s).unwrap().unwrap();
        assert!(!commutes(&s, &h));
        // Moves 00 into the 1-region.
        let out = t(&[
            ("00", "10"),
            ("01", "01"),
            ("0#", "0#"),
            ("10", "00"),
            ("11", "11"),
            ("1#", "1#"),
            ("#", "#"),
        ]);
        let h = find_noncommuting_witness(&out).unwrap().unwrap();
        assert!(!commutes(&out, &h));
        assert!(stab_fix_predicate(&h, &[w("1"), w("#")], StabMode::PFix));
    }

    #[test]
    fn symbolic_fixing_agrees_with_tables() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let alphabet = [GenToken::NOT, GenToken::OR, GenToken::AND, GenToken::F4, GenToken::tau(0), GenToken::tau(2)];
        let mut moved = 0;
        for k in 0..400 {
            let mut word = crate::sample::random_genword(&mut rng, k % 7, &alphabet);
            if k % 3 == 0 {
                // Conjugates often fix the 0-region.
                let c = crate::sample::random_genword(&mut rng, 3, &alphabet);
                word = c.then_after(&word).then_after(&c.inverse());
            }
            let table = materialize(&word).unwrap();
            let found = moved_under_zero(&word).unwrap();
            assert_eq!(found.is_none(), is_pfix_zero(&table), "{word}");
            if let Some((x, y)) = found {
                assert!(x[0] == Letter::Zero && eval(&word, &x) == Some(y));
                moved += 1;
            }
        }
        assert!(moved > 50 && moved < 350, "{moved}");
    }

    fn gate(id: &str, kind: GateKind, srcs: &[Source]) -> Gate {
        Gate { id: id.to_string(), kind, srcs: srcs.to_vec() }
    }

    #[test]
    fn circuit_equivalence() {
        let (a, b) = (Source::Input(0), Source::Input(1));
        let or_ab = Circuit::new(2, vec![gate("g", GateKind::Or, &[a, b])], vec![Source::Gate(0)]).unwrap();
        let or_ba = Circuit::new(2, vec![gate("g", GateKind::Or, &[b, a])], vec![Source::Gate(0)]).unwrap();
        let and_ab =
            Circuit::new(2, vec![gate("g", GateKind::And, &[a, b])], vec![Source::Gate(0)]).unwrap();
        let same = circuit_equiv(&or_ab, &or_ba, EquivMode::Both).unwrap();
        assert!(same.equivalent);
        let diff = circuit_equiv(&or_ab, &and_ab, EquivMode::Both).unwrap();
        assert!(!diff.equivalent);
        assert_eq!(diff.input, Some(vec![false, true]));
        assert!(diff.moved.is_some());
        assert!(circuit_equiv(&or_ab, &or_ab, EquivMode::Group).unwrap().equivalent);
    }
}
