//! Generating sets of bounded table-size and factorization over them.
//!
//! A table of size `n` is factored by inserting rows: a new maximal code
//! `P` is lined up under the domain row so that both resulting factors
//! contain a full triple `z0, z1, z#` in one column block. Each factor then
//! collapses to size at most `n - 2`, and no step adds columns, so every
//! intermediate table has size at most `n`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::codes::{
    complete_with_endmarkers, inner_tree_leaves, rearrange_leaves_mod3_marked, Letter, Word,
};
use crate::table::{member_of, GroupTag, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresError {
    #[error("generator sets exist only for G31_01_SHARP and G31_MOD3_01_SHARP")]
    UnsupportedTag,
    #[error("element is not in {0}")]
    NotInGroup(&'static str),
    #[error("no generator of table-size {0} matches")]
    Missing(usize),
}

/// Tables of size at most `bound` in one subgroup, with stable ids.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub tag: GroupTag,
    pub bound: usize,
    /// Elements below this table-size are used as generators directly;
    /// those not enumerated are added on demand.
    pub threshold: usize,
    members: Vec<Table>,
    inverse: Vec<usize>,
    index: BTreeMap<Table, usize>,
}

impl GeneratorSet {
    /// Default size below which mod 3 elements count as generators.
    pub const MOD3_THRESHOLD: usize = 63;

    pub fn members(&self) -> &[Table] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&Table> {
        self.members.get(id)
    }

    pub fn inverse_id(&self, id: usize) -> Option<usize> {
        self.inverse.get(id).copied()
    }

    pub fn id_of(&self, t: &Table) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Builds a set from explicit members, keeping their order and adding
    /// missing inverses at the end.
    pub fn from_members(tag: GroupTag, bound: usize, members: Vec<Table>) -> Result<GeneratorSet, PresError> {
        if tag != GroupTag::G31_01Sharp && tag != GroupTag::G31Mod3_01Sharp {
            return Err(PresError::UnsupportedTag);
        }
        let mut set = GeneratorSet {
            tag,
            bound,
            threshold: if tag.is_mod3() { GeneratorSet::MOD3_THRESHOLD } else { bound + 1 },
            members: Vec::new(),
            inverse: Vec::new(),
            index: BTreeMap::new(),
        };
        for t in members {
            if !member_of(&t, tag) {
                return Err(PresError::NotInGroup(tag.name()));
            }
            if t.size() > bound {
                return Err(PresError::Missing(t.size()));
            }
            set.insert(t);
        }
        Ok(set)
    }

    pub fn with_threshold(mut self, threshold: usize) -> GeneratorSet {
        self.threshold = threshold.max(self.bound + 1);
        self
    }

    /// Adds a member and its inverse, returning the member's id.
    fn insert(&mut self, t: Table) -> usize {
        if let Some(id) = self.id_of(&t) {
            return id;
        }
        let inv = t.invert();
        let id = self.members.len();
        self.index.insert(t.clone(), id);
        self.members.push(t);
        self.inverse.push(id);
        if let Some(j) = self.id_of(&inv) {
            self.inverse[id] = j;
        } else {
            let j = self.members.len();
            self.index.insert(inv.clone(), j);
            self.members.push(inv);
            self.inverse.push(id);
            self.inverse[id] = j;
        }
        id
    }

    /// Composite of a factorization: the leftmost id is applied last.
    pub fn evaluate(&self, ids: &[usize]) -> Table {
        ids.iter().fold(Table::identity(), |acc, &id| acc.compose(&self.members[id]))
    }
}

/// All maximal binary prefix codes with `k` members, sorted.
pub fn binary_codes(k: usize) -> Vec<Vec<Word>> {
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        return vec![vec![Word::empty()]];
    }
    let mut out = Vec::new();
    for a in 1..k {
        for left in binary_codes(a) {
            for right in binary_codes(k - a) {
                let mut code: Vec<Word> = Vec::with_capacity(k);
                let mut prefixed = |c: &[Word], l: Letter| {
                    for w in c {
                        let mut v = vec![l];
                        v.extend_from_slice(w);
                        code.push(Word::from_letters(v));
                    }
                };
                prefixed(&left, Letter::Zero);
                prefixed(&right, Letter::One);
                out.push(code);
            }
        }
    }
    out
}

/// Lexicographic successor of a permutation; `false` after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..k).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Enumerates every canonical table of the given shape with table-size at
/// most `bound`.
pub fn enumerate_generators(tag: GroupTag, bound: usize) -> Result<GeneratorSet, PresError> {
    if !matches!(tag, GroupTag::G31_01Sharp | GroupTag::G31Mod3_01Sharp) {
        return Err(PresError::UnsupportedTag);
    }
    let mut found: alloc::collections::BTreeSet<Table> = alloc::collections::BTreeSet::new();
    found.insert(Table::identity());
    for k in 1..=bound.div_ceil(2) {
        if 2 * k - 1 > bound {
            break;
        }
        let codes = binary_codes(k);
        let bit_perms = permutations(k);
        let hash_perms = permutations(k - 1);
        for p1 in &codes {
            let dom = complete_with_endmarkers(p1);
            let (dom_bits, dom_hash): (Vec<Word>, Vec<Word>) = dom.into_iter().partition(|w| w.is_bits());
            for q1 in &codes {
                let img = complete_with_endmarkers(q1);
                let (img_bits, img_hash): (Vec<Word>, Vec<Word>) =
                    img.into_iter().partition(|w| w.is_bits());
                for bp in &bit_perms {
                    let residues_ok = !tag.is_mod3()
                        || bp.iter().enumerate().all(|(a, &b)| dom_bits[a].residue() == img_bits[b].residue());
                    if !residues_ok {
                        continue;
                    }
                    for hp in &hash_perms {
                        let mut pairs: Vec<(Word, Word)> =
                            bp.iter().enumerate().map(|(a, &b)| (dom_bits[a].clone(), img_bits[b].clone())).collect();
                        pairs.extend(
                            hp.iter().enumerate().map(|(a, &b)| (dom_hash[a].clone(), img_hash[b].clone())),
                        );
                        let t = Table::new(pairs).expect("bijection between maximal codes");
                        found.insert(t);
                    }
                }
            }
        }
    }
    let mut gens = GeneratorSet {
        tag,
        bound,
        threshold: if tag.is_mod3() { GeneratorSet::MOD3_THRESHOLD } else { bound + 1 },
        members: Vec::new(),
        inverse: Vec::new(),
        index: BTreeMap::new(),
    };
    for t in found {
        gens.insert(t);
    }
    Ok(gens)
}

/// Class of a column: `#`-words, or bit words by length residue (all bit
/// words share one class outside the mod 3 group).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ColType {
    Bits(u8),
    Hash,
}

fn col_type(w: &Word, mod3: bool) -> ColType {
    if w.is_bits() {
        ColType::Bits(if mod3 { w.residue() } else { 0 })
    } else {
        ColType::Hash
    }
}

/// Lines `code` up under the columns: `fixed` pins some columns and the
/// remaining words fill the remaining columns of their class in order.
fn assign_row(code: &[Word], types: &[ColType], fixed: &[(usize, Word)], mod3: bool) -> Option<Vec<Word>> {
    let mut row: Vec<Option<Word>> = vec![None; types.len()];
    for (c, w) in fixed {
        if row[*c].is_some() || col_type(w, mod3) != types[*c] {
            return None;
        }
        row[*c] = Some(w.clone());
    }
    let mut rest: Vec<&Word> = code.iter().filter(|w| !fixed.iter().any(|(_, f)| f == *w)).collect();
    rest.sort();
    for (c, slot) in row.iter_mut().enumerate() {
        if slot.is_some() {
            continue;
        }
        let k = rest.iter().position(|w| col_type(w, mod3) == types[c])?;
        *slot = Some(rest.remove(k).clone());
    }
    rest.is_empty().then(|| row.into_iter().map(|w| w.expect("filled")).collect())
}

fn triple(u: &Word) -> [Word; 3] {
    [u.child(Letter::Zero), u.child(Letter::One), u.child(Letter::Hash)]
}

/// A binary code of size `k ≥ 2` with two inner leaves, `0` and the last
/// split vertex.
fn two_cherry_code(k: usize) -> (Vec<Word>, Word, Word) {
    let mut code = vec![Word::parse("00").unwrap(), Word::parse("01").unwrap(), Word::parse("1").unwrap()];
    let mut last = Word::parse("1").unwrap();
    while code.len() < k.max(3) {
        code.retain(|w| *w != last);
        code.push(last.child(Letter::Zero));
        code.push(last.child(Letter::One));
        last = last.child(Letter::One);
    }
    if code.len() == 3 {
        // No second cherry at size 3; callers need k ≥ 4.
        return (code, Word::parse("0").unwrap(), Word::parse("0").unwrap());
    }
    let v = last.parent().expect("split at least once");
    (code, Word::parse("0").unwrap(), v)
}

/// A row code with inner leaves at the requested residues, plus those leaves.
fn row_code(bits: &[Word], residues: [u8; 2], mod3: bool) -> Option<(Vec<Word>, Word, Word)> {
    if mod3 {
        let (code, chosen) = rearrange_leaves_mod3_marked(bits, &residues).ok()?;
        Some((complete_with_endmarkers(&code), chosen[0].clone(), chosen[1].clone()))
    } else {
        if bits.len() < 4 {
            return None;
        }
        let (code, u, v) = two_cherry_code(bits.len());
        Some((complete_with_endmarkers(&code), u, v))
    }
}

/// Column blocks `[a, b, h]` of two bit columns of one class and a `#`
/// column, avoiding `excluded`. The second value is the residue an inner
/// leaf must have to sit on the block.
fn blocks(types: &[ColType], excluded: &[usize]) -> Vec<([usize; 3], u8)> {
    let free: Vec<usize> = (0..types.len()).filter(|c| !excluded.contains(c)).collect();
    let mut out = Vec::new();
    for (i, &a) in free.iter().enumerate() {
        let ColType::Bits(r) = types[a] else { continue };
        for &b in free[i + 1..].iter().filter(|&&b| types[b] == types[a]) {
            for &h in free.iter().filter(|&&h| types[h] == ColType::Hash) {
                out.push(([a, b, h], (r + 2) % 3));
            }
        }
    }
    out
}

/// Inserts one row between each pair of consecutive blocks. Row `i`
/// carries inner-leaf triples on blocks `i` and `i+1`, so every factor
/// collapses on a block. Factors are returned leftmost applied last.
fn chain(phi: &Table, types: &[ColType], path: &[([usize; 3], u8)], mod3: bool) -> Option<Vec<Table>> {
    let entries = phi.entries();
    let dom_bits: Vec<Word> = entries.iter().filter(|(x, _)| x.is_bits()).map(|(x, _)| x.clone()).collect();
    let mut rows: Vec<Vec<Word>> = vec![entries.iter().map(|(x, _)| x.clone()).collect()];
    for pair in path.windows(2) {
        let ((b0, r0), (b1, r1)) = (&pair[0], &pair[1]);
        let (code, u, v) = row_code(&dom_bits, [*r0, *r1], mod3)?;
        let mut fixed: Vec<(usize, Word)> = b0.iter().copied().zip(triple(&u)).collect();
        fixed.extend(b1.iter().copied().zip(triple(&v)));
        rows.push(assign_row(&code, types, &fixed, mod3)?);
    }
    rows.push(entries.iter().map(|(_, y)| y.clone()).collect());
    let mut factors = Vec::with_capacity(rows.len() - 1);
    for pair in rows.windows(2).rev() {
        factors.push(Table::new(pair[0].iter().cloned().zip(pair[1].iter().cloned()).collect()).ok()?);
    }
    Some(factors)
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|c| !b.contains(c))
}

/// One factorization step: tables whose composite, leftmost applied last,
/// is `phi`. Tries one inserted row, then two, then three.
fn split(phi: &Table, mod3: bool) -> Option<Vec<Table>> {
    let entries = phi.entries();
    let types: Vec<ColType> = entries.iter().map(|(x, _)| col_type(x, mod3)).collect();
    let dom_col = |w: &Word| entries.iter().position(|(x, _)| x == w).expect("domain member");
    let img_col = |w: &Word| entries.iter().position(|(_, y)| y == w).expect("image member");
    let mut pairs = Vec::new();
    for x in inner_tree_leaves(&phi.domain()) {
        for y in inner_tree_leaves(&phi.image()) {
            let xb = triple(&x).map(|t| dom_col(&t));
            let yb = triple(&y).map(|t| img_col(&t));
            pairs.push(((xb, x.residue()), (yb, y.residue())));
        }
    }
    for (xs, ys) in &pairs {
        if disjoint(&xs.0, &ys.0) {
            if let Some(f) = chain(phi, &types, &[*xs, *ys], mod3) {
                return Some(f);
            }
        }
    }
    for (xs, ys) in &pairs {
        let used: Vec<usize> = xs.0.iter().chain(ys.0.iter()).copied().collect();
        for c in blocks(&types, &used) {
            if let Some(f) = chain(phi, &types, &[*xs, c, *ys], mod3) {
                return Some(f);
            }
        }
    }
    for (xs, ys) in &pairs {
        for c in blocks(&types, &xs.0) {
            let used: Vec<usize> = ys.0.iter().chain(c.0.iter()).copied().collect();
            for d in blocks(&types, &used) {
                if let Some(f) = chain(phi, &types, &[*xs, c, d, *ys], mod3) {
                    return Some(f);
                }
            }
        }
    }
    None
}

/// Factors `phi` over `gens`. The composite of the returned ids, leftmost
/// applied last, is `phi`; the second value is the largest table-size of
/// any intermediate factor.
pub fn factor_traced(phi: &Table, gens: &mut GeneratorSet) -> Result<(Vec<usize>, usize), PresError> {
    if !member_of(phi, gens.tag) {
        return Err(PresError::NotInGroup(gens.tag.name()));
    }
    let mod3 = gens.tag.is_mod3();
    let mut out = Vec::new();
    let mut largest = 0;
    let mut stack = vec![phi.clone()];
    while let Some(t) = stack.pop() {
        largest = largest.max(t.size());
        if t.is_identity() {
            continue;
        }
        if let Some(id) = gens.id_of(&t) {
            out.push(id);
            continue;
        }
        if t.size() < gens.threshold && t.size() > gens.bound {
            out.push(gens.insert(t));
            continue;
        }
        if t.size() <= gens.bound {
            return Err(PresError::Missing(t.size()));
        }
        match split(&t, mod3) {
            Some(parts) => {
                debug_assert!(parts.iter().all(|p| member_of(p, gens.tag) && p.size() < t.size()));
                // Process left to right so ids come out in word order.
                stack.extend(parts.into_iter().rev());
            }
            None if mod3 => out.push(gens.insert(t)),
            None => return Err(PresError::Missing(t.size())),
        }
    }
    Ok((out, largest))
}

/// Factors `phi` over `gens`; see [`factor_traced`].
pub fn factor(phi: &Table, gens: &mut GeneratorSet) -> Result<Vec<usize>, PresError> {
    factor_traced(phi, gens).map(|(ids, _)| ids)
}
