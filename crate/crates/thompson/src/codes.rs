//! Words over the alphabet `{0,1,#}` and prefix codes.
//!
//! Words are ordered lexicographically with `0 < 1 < #`. Under this order a
//! word sorts before all of its extensions, so the members of a sorted code
//! that share a prefix form one contiguous run. Most lookups in this crate
//! rely on that.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use thiserror::Error;

/// One letter of the alphabet `{0,1,#}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Zero,
    One,
    Hash,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::Zero, Letter::One, Letter::Hash];
    pub const BITS: [Letter; 2] = [Letter::Zero, Letter::One];

    pub fn bit(b: bool) -> Letter {
        if b {
            Letter::One
        } else {
            Letter::Zero
        }
    }

    pub fn is_bit(self) -> bool {
        self != Letter::Hash
    }

    /// The bit value, or `None` for `#`.
    pub fn as_bit(self) -> Option<bool> {
        match self {
            Letter::Zero => Some(false),
            Letter::One => Some(true),
            Letter::Hash => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
            Letter::Hash => '#',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            '0' => Some(Letter::Zero),
            '1' => Some(Letter::One),
            '#' => Some(Letter::Hash),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid character {0:?} in word")]
    BadChar(char),
    #[error("code does not have the endmarker shape P1 ∪ P2#")]
    Shape,
    #[error("pins are prefix-comparable with each other or with the complement")]
    PinConflict,
    #[error("requested code size {requested} is not reachable from {minimum}")]
    Size { requested: usize, minimum: usize },
    #[error("inner tree has neither a leaf nor two one-child vertices at depth ≡ {0} mod 3")]
    HypothesisFail(u8),
    #[error("not a maximal prefix code over the binary alphabet")]
    NotBinaryMaximal,
}

/// A finite word over `{0,1,#}`. The empty word prints as `@`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Word {
        Word(bits.into_iter().map(Letter::bit).collect())
    }

    /// Parses `0`, `1`, `#` characters; `@` alone is the empty word.
    pub fn parse(s: &str) -> Result<Word, CodeError> {
        let s = s.trim();
        if s == "@" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| Letter::from_char(c).ok_or(CodeError::BadChar(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn child(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn concat(&self, tail: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + tail.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(tail);
        Word(v)
    }

    /// The word without its last letter, or `None` for ε.
    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn is_prefix_of(&self, other: &[Letter]) -> bool {
        other.starts_with(&self.0)
    }

    pub fn is_strict_prefix_of(&self, other: &[Letter]) -> bool {
        self.0.len() < other.len() && other.starts_with(&self.0)
    }

    /// True if the word lies in `{0,1}*`.
    pub fn is_bits(&self) -> bool {
        self.0.iter().all(|l| l.is_bit())
    }

    /// True if the word lies in `{0,1}*#`.
    pub fn is_bits_hash(&self) -> bool {
        match self.0.split_last() {
            Some((Letter::Hash, rest)) => rest.iter().all(|l| l.is_bit()),
            _ => false,
        }
    }

    /// Position of the first `#`.
    pub fn first_hash(&self) -> Option<usize> {
        self.0.iter().position(|&l| l == Letter::Hash)
    }

    /// Length mod 3.
    pub fn residue(&self) -> u8 {
        (self.0.len() % 3) as u8
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromStr for Word {
    type Err = CodeError;
    fn from_str(s: &str) -> Result<Word, CodeError> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("@");
        }
        let s: String = self.0.iter().map(|l| l.to_char()).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for tests and examples: panics on invalid characters.
pub fn w(s: &str) -> Word {
    Word::parse(s).expect("invalid word literal")
}

/// Relation between two words in the prefix order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixOrder {
    StrictPrefix,
    Equal,
    StrictExtension,
    Incomparable,
}

pub fn prefix_compare(u: &[Letter], v: &[Letter]) -> PrefixOrder {
    if u == v {
        PrefixOrder::Equal
    } else if v.starts_with(u) {
        PrefixOrder::StrictPrefix
    } else if u.starts_with(v) {
        PrefixOrder::StrictExtension
    } else {
        PrefixOrder::Incomparable
    }
}

pub fn comparable(u: &[Letter], v: &[Letter]) -> bool {
    prefix_compare(u, v) != PrefixOrder::Incomparable
}

/// Sorted, deduplicated copy of a word list.
pub fn sorted(words: &[Word]) -> Vec<Word> {
    let mut v = words.to_vec();
    v.sort();
    v.dedup();
    v
}

/// True if no member is a prefix of a different member and there are no
/// duplicates.
pub fn is_prefix_code(words: &[Word]) -> bool {
    let mut v = words.to_vec();
    v.sort();
    // In sorted order every extension of `a` follows `a` directly, so
    // comparing neighbours is enough.
    v.windows(2).all(|p| !p[0].is_prefix_of(&p[1]))
}

/// All strict prefixes of members: the inner vertices of the prefix tree.
pub fn inner_vertices(words: &[Word]) -> BTreeSet<Word> {
    let mut inner = BTreeSet::new();
    for m in words {
        for k in 0..m.len() {
            inner.insert(Word(m[..k].to_vec()));
        }
    }
    inner
}

fn is_maximal_over(words: &[Word], alphabet: &[Letter]) -> bool {
    if words.is_empty() || !is_prefix_code(words) {
        return false;
    }
    if words.iter().any(|m| m.iter().any(|l| !alphabet.contains(l))) {
        return false;
    }
    let members: BTreeSet<&Word> = words.iter().collect();
    let inner = inner_vertices(words);
    inner.iter().all(|p| {
        alphabet.iter().all(|&c| {
            let ch = p.child(c);
            members.contains(&ch) || inner.contains(&ch)
        })
    })
}

/// A prefix code over `{0,1,#}` whose prefix tree is complete.
pub fn is_maximal_prefix_code(words: &[Word]) -> bool {
    is_maximal_over(words, &Letter::ALL)
}

/// A prefix code over `{0,1}` whose prefix tree is complete.
pub fn is_maximal_binary_code(words: &[Word]) -> bool {
    is_maximal_over(words, &Letter::BITS)
}

/// Leaves of the inner tree: inner vertices whose children are all members.
pub fn inner_tree_leaves(words: &[Word]) -> Vec<Word> {
    let inner = inner_vertices(words);
    inner
        .iter()
        .filter(|p| Letter::ALL.iter().all(|&c| !inner.contains(&p.child(c))))
        .cloned()
        .collect()
}

/// Splits a maximal code of shape `{0,1}* ∪ {0,1}*#` into its bit part
/// `P1` and the stems `P2` of its `#`-words.
pub fn endmarker_decompose(code: &[Word]) -> Result<(Vec<Word>, Vec<Word>), CodeError> {
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for m in code {
        if m.is_bits() {
            p1.push(m.clone());
        } else if m.is_bits_hash() {
            p2.push(Word(m[..m.len() - 1].to_vec()));
        } else {
            return Err(CodeError::Shape);
        }
    }
    p1.sort();
    p2.sort();
    if !is_maximal_binary_code(&p1) {
        return Err(CodeError::Shape);
    }
    let stems: Vec<Word> = inner_vertices(&p1).into_iter().collect();
    if stems != p2 {
        return Err(CodeError::Shape);
    }
    Ok((p1, p2))
}

/// `P1 ∪ {p# : p a strict prefix of a member of P1}`, sorted.
pub fn complete_with_endmarkers(p1: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = p1.to_vec();
    out.extend(inner_vertices(p1).into_iter().map(|p| p.child(Letter::Hash)));
    out.sort();
    out.dedup();
    out
}

/// Completes `pins ∪ complement` to a maximal prefix code by adding the
/// missing children of every inner vertex. When `target_size` is given, the
/// added set is grown by splitting its least leaf until it has that size.
pub fn extend_to_maximal(
    pins: &[Word],
    complement: &[Word],
    target_size: Option<usize>,
) -> Result<Vec<Word>, CodeError> {
    let mut all: Vec<Word> = pins.to_vec();
    all.extend_from_slice(complement);
    if !is_prefix_code(&all) {
        return Err(CodeError::PinConflict);
    }
    let mut q: BTreeSet<Word> = BTreeSet::new();
    if all.is_empty() {
        q.insert(Word::empty());
    } else {
        let members: BTreeSet<&Word> = all.iter().collect();
        let inner = inner_vertices(&all);
        for p in &inner {
            for c in Letter::ALL {
                let ch = p.child(c);
                if !members.contains(&ch) && !inner.contains(&ch) {
                    q.insert(ch);
                }
            }
        }
    }
    if let Some(target) = target_size {
        let minimum = q.len();
        if target < minimum || !(target - minimum).is_multiple_of(2) || (minimum == 0 && target > 0) {
            return Err(CodeError::Size { requested: target, minimum });
        }
        while q.len() < target {
            let least = q.pop_first().expect("nonempty");
            for c in Letter::ALL {
                q.insert(least.child(c));
            }
        }
    }
    Ok(q.into_iter().collect())
}

/// Counts of members by length residue mod 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Mod3Card {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
}

impl Mod3Card {
    pub fn total(&self) -> usize {
        self.n0 + self.n1 + self.n2
    }
}

pub fn mod3_cardinality(words: &[Word]) -> Mod3Card {
    let mut c = Mod3Card::default();
    for m in words {
        match m.len() % 3 {
            0 => c.n0 += 1,
            1 => c.n1 += 1,
            _ => c.n2 += 1,
        }
    }
    c
}

/// Inner vertices of a binary code with exactly one inner child.
fn one_child_vertices(inner: &BTreeSet<Word>) -> Vec<Word> {
    inner
        .iter()
        .filter(|p| {
            let a = inner.contains(&p.child(Letter::Zero));
            let b = inner.contains(&p.child(Letter::One));
            a != b
        })
        .cloned()
        .collect()
}

fn binary_inner_leaves(inner: &BTreeSet<Word>) -> Vec<Word> {
    inner
        .iter()
        .filter(|p| {
            !inner.contains(&p.child(Letter::Zero)) && !inner.contains(&p.child(Letter::One))
        })
        .cloned()
        .collect()
}

/// Moves the inner subtree hanging below `a` to the free child slot of `b`.
/// Both are one-child vertices at depths congruent mod 3 and `a` is not an
/// ancestor of `b`; afterwards `a` is a leaf of the inner tree.
fn relocate_subtree(code: &mut BTreeSet<Word>, inner: &BTreeSet<Word>, a: &Word, b: &Word) {
    let inner_letter = if inner.contains(&a.child(Letter::Zero)) {
        Letter::Zero
    } else {
        Letter::One
    };
    let free_letter = if inner.contains(&b.child(Letter::Zero)) {
        Letter::One
    } else {
        Letter::Zero
    };
    let root = a.child(inner_letter);
    let slot = b.child(free_letter);
    let moved: Vec<Word> = code.iter().filter(|m| root.is_prefix_of(m)).cloned().collect();
    for m in &moved {
        code.remove(m);
    }
    code.remove(&slot);
    for m in moved {
        code.insert(slot.concat(&m[root.len()..]));
    }
    code.insert(root);
}

/// Rearranges a binary maximal code without changing its mod 3 cardinality
/// so that its inner tree has distinct leaves at the requested depth
/// residues. Returns the new code and the chosen leaves, one per residue.
pub fn rearrange_leaves_mod3_marked(
    q1: &[Word],
    residues: &[u8],
) -> Result<(Vec<Word>, Vec<Word>), CodeError> {
    if !is_maximal_binary_code(q1) {
        return Err(CodeError::NotBinaryMaximal);
    }
    let mut code: BTreeSet<Word> = q1.iter().cloned().collect();
    let mut chosen: Vec<Word> = Vec::new();
    for &r in residues {
        let r = r % 3;
        let as_vec: Vec<Word> = code.iter().cloned().collect();
        let inner = inner_vertices(&as_vec);
        let free_leaf = binary_inner_leaves(&inner)
            .into_iter()
            .find(|l| l.residue() == r && !chosen.contains(l));
        if let Some(l) = free_leaf {
            chosen.push(l);
            continue;
        }
        let cands: Vec<Word> = one_child_vertices(&inner)
            .into_iter()
            .filter(|v| v.residue() == r)
            .collect();
        if cands.len() < 2 {
            return Err(CodeError::HypothesisFail(r));
        }
        let (a, b) = if cands[0].is_prefix_of(&cands[1]) {
            (cands[1].clone(), cands[0].clone())
        } else {
            (cands[0].clone(), cands[1].clone())
        };
        // Earlier choices may sit inside the relocated subtree.
        let root_letter = if inner.contains(&a.child(Letter::Zero)) {
            Letter::Zero
        } else {
            Letter::One
        };
        let root = a.child(root_letter);
        let slot_letter = if inner.contains(&b.child(Letter::Zero)) {
            Letter::One
        } else {
            Letter::Zero
        };
        let slot = b.child(slot_letter);
        for c in chosen.iter_mut() {
            if root.is_prefix_of(c) {
                *c = slot.concat(&c[root.len()..]);
            }
        }
        relocate_subtree(&mut code, &inner, &a, &b);
        chosen.push(a);
    }
    Ok((code.into_iter().collect(), chosen))
}

/// Same as [`rearrange_leaves_mod3_marked`], returning only the code.
pub fn rearrange_leaves_mod3(q1: &[Word], residues: &[u8]) -> Result<Vec<Word>, CodeError> {
    rearrange_leaves_mod3_marked(q1, residues).map(|(c, _)| c)
}

/// All words of `{0,1}^n`, in lexicographic order.
pub fn bit_words(n: usize) -> Vec<Word> {
    (0..1usize << n)
        .map(|k| Word::from_bits((0..n).map(|j| (k >> (n - 1 - j)) & 1 == 1)))
        .collect()
}

/// All words of `{0,1}^{≤n}`, shortest first.
pub fn bit_words_upto(n: usize) -> Vec<Word> {
    (0..=n).flat_map(bit_words).collect()
}
