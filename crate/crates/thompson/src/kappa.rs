//! The permutations `γ₀..γ₃` of the natural numbers and the elements
//! `κ₀..κ₃` that permute the bits in front of the first `#`.
//!
//! `γ_i` fixes every `k < i` and cycles each triple `(i+3q, i+3q+1, i+3q+2)`
//! forward. `κ_i` moves the letter at position `k` to position `γ_i(k)`, but
//! only inside the largest block of bits in front of the first `#` whose
//! length is at least `i` and congruent to `i` mod 3 (`κ₀` and `κ₃` need at
//! least three bits, `κ₁` four, `κ₂` five). Leftover bits, the `#` and the
//! tail are untouched. Without a `#` the action is undefined.
//!
//! Because every `κ_i` only shuffles letters inside aligned triples, its
//! action on a bit block depends on nothing but the block length. That
//! locality is what makes conjugation of a table by `κ_i` a table again.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::codes::{Letter, Word};
use crate::table::{member_of, GroupTag, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("table is not in the bit-preserving mod 3 subgroup")]
    NotInSubgroup,
}

/// One of `γ_i^{±1}` or `κ_i^{±1}` for `i ∈ {0,1,2,3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTok {
    pub index: u8,
    pub inverse: bool,
}

impl KTok {
    pub fn new(index: u8, inverse: bool) -> KTok {
        assert!(index < 4, "kappa index out of range");
        KTok { index, inverse }
    }

    pub fn inv(self) -> KTok {
        KTok { index: self.index, inverse: !self.inverse }
    }

    /// Shortest bit block on which `κ_i` is not the identity.
    pub fn min_block(self) -> usize {
        match self.index {
            0 | 3 => 3,
            1 => 4,
            _ => 5,
        }
    }

    /// Length of the permuted block when `len` bits precede the first `#`.
    pub fn block_len(self, len: usize) -> usize {
        let min = self.min_block();
        if len < min {
            return 0;
        }
        len - (len - min) % 3
    }

    /// Destination of position `k` in a bit block of length `len`.
    pub fn dest(self, len: usize, k: usize) -> usize {
        if k < self.block_len(len) {
            gamma_apply(self.index, self.inverse, k)
        } else {
            k
        }
    }
}

impl fmt::Display for KTok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k{}{}", self.index, if self.inverse { "'" } else { "" })
    }
}

/// A word over `γ₀..γ₃` and their inverses. The rightmost token acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GammaWord(pub Vec<KTok>);

/// A word over `κ₀..κ₃` and their inverses. The rightmost token acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KappaWord(pub Vec<KTok>);

impl KappaWord {
    pub fn inverse(&self) -> KappaWord {
        KappaWord(self.0.iter().rev().map(|t| t.inv()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `κ₃₂₁^n`, where `κ₃₂₁ = κ₁⁻¹κ₂⁻¹κ₃⁻¹` (with `κ₃⁻¹` acting first).
    pub fn k321_pow(n: i64) -> KappaWord {
        let one = [KTok::new(1, true), KTok::new(2, true), KTok::new(3, true)];
        let mut toks = Vec::new();
        for _ in 0..n.unsigned_abs() {
            toks.extend_from_slice(&one);
        }
        let w = KappaWord(toks);
        if n < 0 {
            w.inverse()
        } else {
            w
        }
    }
}

impl fmt::Display for KappaWord {
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

/// `γ_i(n)`, or `γ_i⁻¹(n)` when `inverse` is set.
pub fn gamma_apply(i: u8, inverse: bool, n: usize) -> usize {
    let lo = i as usize;
    if n < lo {
        return n;
    }
    let r = (n - lo) % 3;
    let step = if inverse { 2 } else { 1 };
    n - r + (r + step) % 3
}

pub fn gamma_word_apply(pi: &GammaWord, n: usize) -> usize {
    pi.0.iter().rev().fold(n, |m, t| gamma_apply(t.index, t.inverse, m))
}

/// Every word in the `γ_i` commutes with adding 3 beyond a threshold
/// linear in its length, so checking a finite prefix suffices.
pub fn gamma_is_identity(pi: &GammaWord) -> bool {
    (0..=2 * pi.0.len() + 3).all(|n| gamma_word_apply(pi, n) == n)
}

/// Applies one token to the bits in front of position `len`.
fn permute_block(t: KTok, letters: &mut [Letter], len: usize) {
    let b = t.block_len(len);
    if b == 0 {
        return;
    }
    let src: Vec<Letter> = letters[..b].to_vec();
    for (k, &l) in src.iter().enumerate() {
        letters[gamma_apply(t.index, t.inverse, k)] = l;
    }
}

/// Applies a κ-word to the block of `len` leading bits, as if a `#`
/// followed them.
pub fn kappa_apply_block(k: &KappaWord, letters: &[Letter], len: usize) -> Word {
    let mut v = letters.to_vec();
    for t in k.0.iter().rev() {
        permute_block(*t, &mut v, len);
    }
    Word::from_letters(v)
}

/// `K(w)`, or `None` when `w` has no `#`.
pub fn kappa_apply(k: &KappaWord, w: &[Letter]) -> Option<Word> {
    let len = w.iter().position(|&l| l == Letter::Hash)?;
    Some(kappa_apply_block(k, w, len))
}

/// `σ` with `K(x#) = y#` where `y_{σ(j)} = x_j`, for `|x| = len`.
pub fn kappa_position_perm(k: &KappaWord, len: usize) -> Vec<usize> {
    (0..len)
        .map(|j| k.0.iter().rev().fold(j, |p, t| t.dest(len, p)))
        .collect()
}

/// Decides `K = 1` from block lengths up to `6|K| + 3`.
pub fn kappa_is_identity(k: &KappaWord) -> bool {
    (0..=6 * k.len() + 3).all(|b| kappa_position_perm(k, b).iter().enumerate().all(|(j, &d)| j == d))
}

/// Splits a bit entry until both sides are long enough and aligned with the
/// triples permuted by `κ_i`.
fn align_entry(lo: usize, x: Word, y: Word, out: &mut Vec<(Word, Word)>) {
    if !x.is_bits() {
        out.push((x, y));
        return;
    }
    let aligned = x.len() >= lo && y.len() >= lo && x.len() % 3 == lo % 3;
    if aligned {
        out.push((x, y));
        return;
    }
    for c in Letter::ALL {
        align_entry(lo, x.child(c), y.child(c), out);
    }
}

/// Maps one table entry through a single token. Bit entries are aligned, so
/// their blocks are permuted on their own; `#` entries are permuted in front
/// of their first `#`.
fn conjugate_token(phi: &Table, t: KTok) -> Table {
    let lo = t.index as usize;
    let mut aligned = Vec::with_capacity(phi.size());
    for (x, y) in phi.entries() {
        align_entry(lo, x.clone(), y.clone(), &mut aligned);
    }
    let k = KappaWord(alloc::vec![t]);
    let map = |w: &Word| {
        let len = w.first_hash().unwrap_or(w.len());
        kappa_apply_block(&k, w, len)
    };
    let pairs: Vec<(Word, Word)> = aligned.iter().map(|(x, y)| (map(x), map(y))).collect();
    debug_assert!(Table::new(pairs.clone()).is_ok());
    Table::from_bijection(pairs)
}

/// The table of `K φ K⁻¹`. Requires `φ` to preserve bit words, `#`-words and
/// lengths mod 3.
pub fn kappa_conjugate(phi: &Table, k: &KappaWord) -> Result<Table, KappaError> {
    if !member_of(phi, GroupTag::G31Mod3_01) {
        return Err(KappaError::NotInSubgroup);
    }
    Ok(k.0.iter().rev().fold(phi.clone(), |g, &t| conjugate_token(&g, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bit_words, w};
    use alloc::vec;

    fn kw(toks: &[(u8, bool)]) -> KappaWord {
        KappaWord(toks.iter().map(|&(i, s)| KTok::new(i, s)).collect())
    }

    #[test]
    fn gamma_cycles() {
        assert_eq!(gamma_apply(0, false, 0), 1);
        assert_eq!(gamma_apply(1, false, 0), 0);
        assert_eq!(gamma_apply(2, false, 5), 6);
        assert_eq!(gamma_apply(2, false, 7), 5);
        assert_eq!(gamma_apply(3, true, 3), 5);
        for i in 0..4 {
            for n in 3..60 {
                assert_eq!(gamma_apply(i, false, n + 3), gamma_apply(i, false, n) + 3);
                assert_eq!(gamma_apply(i, true, gamma_apply(i, false, n)), n);
            }
        }
    }

    #[test]
    fn gamma_words() {
        let g0 = KTok::new(0, false);
        assert_eq!(gamma_word_apply(&GammaWord(vec![]), 7), 7);
        assert_eq!(gamma_word_apply(&GammaWord(vec![g0, g0, g0]), 1), 1);
        assert_eq!(gamma_word_apply(&GammaWord(vec![KTok::new(1, true), KTok::new(1, false)]), 4), 4);
        assert!(gamma_is_identity(&GammaWord(vec![])));
        assert!(!gamma_is_identity(&GammaWord(vec![g0])));
        assert!(!gamma_is_identity(&GammaWord(vec![KTok::new(3, true), g0])));
        assert!(gamma_is_identity(&GammaWord(vec![g0, g0, g0])));
    }

    #[test]
    fn single_kappa_action() {
        assert_eq!(kappa_apply(&kw(&[(0, false)]), &w("01##")), Some(w("01##")));
        assert_eq!(kappa_apply(&kw(&[(0, false)]), &w("100#")), Some(w("010#")));
        assert_eq!(kappa_apply(&kw(&[(0, false)]), &w("110#1")), Some(w("011#1")));
        assert_eq!(kappa_apply(&kw(&[(1, false)]), &w("#0101")), Some(w("#0101")));
        assert_eq!(kappa_apply(&kw(&[(1, false)]), &w("0100")), None);
        // κ₁ on 4 bits fixes x₀ and cycles the next three; the fifth bit is
        // leftover.
        assert_eq!(kappa_apply(&kw(&[(1, false)]), &w("01001#")), Some(w("00101#")));
    }

    #[test]
    fn k321_moves_positions_as_expected() {
        // Track ten distinct labels through K by reading off destinations.
        let perm = kappa_position_perm(&KappaWord::k321_pow(1), 10);
        let mut out = [0usize; 10];
        for (j, &d) in perm.iter().enumerate() {
            out[d] = j;
        }
        assert_eq!(out, [0, 4, 5, 1, 7, 8, 2, 6, 9, 3]);
    }

    #[test]
    fn position_perms() {
        assert_eq!(kappa_position_perm(&kw(&[(0, false)]), 3), vec![1, 2, 0]);
        assert_eq!(kappa_position_perm(&KappaWord::default(), 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(kappa_position_perm(&kw(&[(0, false); 3]), 3), vec![0, 1, 2]);
    }

    #[test]
    fn identity_decisions() {
        assert!(kappa_is_identity(&kw(&[(1, false), (1, true)])));
        assert!(!kappa_is_identity(&kw(&[(0, false)])));
        let k = KappaWord::k321_pow(1);
        let mut both = k.inverse().0;
        both.extend(k.0.iter().copied());
        assert!(kappa_is_identity(&KappaWord(both)));
        assert!(kappa_is_identity(&kw(&[(2, false); 3])));
    }

    #[test]
    fn leftmost_bit_fixed_by_k1_k2_k3() {
        for i in 1..4 {
            for x in bit_words(7) {
                let y = kappa_apply(&kw(&[(i, false)]), &x.child(Letter::Hash)).unwrap();
                assert_eq!(y[0], x[0]);
            }
        }
    }

    #[test]
    fn conjugating_identity() {
        let k = kw(&[(0, false), (2, true), (3, false)]);
        assert_eq!(kappa_conjugate(&Table::identity(), &k), Ok(Table::identity()));
    }

    #[test]
    fn conjugation_rejects_outside_subgroup() {
        let mixed: Table = "0 -> 1\n1 -> #\n# -> 0".parse().unwrap();
        assert_eq!(kappa_conjugate(&mixed, &kw(&[(1, false)])), Err(KappaError::NotInSubgroup));
    }

    #[test]
    fn conjugation_agrees_pointwise() {
        let phi: Table = "0 -> 1\n1 -> 0\n# -> #".parse().unwrap();
        for k in [kw(&[(0, false)]), kw(&[(1, true)]), KappaWord::k321_pow(-2)] {
            let c = kappa_conjugate(&phi, &k).unwrap();
            for n in 0..9 {
                for x in bit_words(n) {
                    let xh = x.child(Letter::Hash);
                    let want = kappa_apply(&k.inverse(), &xh)
                        .and_then(|u| phi.apply(&u))
                        .and_then(|u| kappa_apply(&k, &u));
                    assert_eq!(c.apply(&xh), want);
                }
            }
        }
    }
}
