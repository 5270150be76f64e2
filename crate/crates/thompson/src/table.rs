//! Elements of `G_{3,1}` given by finite tables.
//!
//! A [`Table`] is a bijection between two maximal prefix codes over
//! `{0,1,#}`, always kept in canonical form: maximally extended (no sibling
//! triple `u0,u1,u#` maps entrywise onto a sibling triple `v0,v1,v#`) and
//! sorted by domain word. Two tables describe the same group element exactly
//! when they are equal as values.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::codes::{is_maximal_prefix_code, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("domain words do not form a maximal prefix code")]
    DomainNotACode,
    #[error("image words do not form a maximal prefix code")]
    ImageNotACode,
    #[error("pairing is not a bijection")]
    NotBijective,
    #[error("malformed table line {line}: {reason}")]
    Parse { line: usize, reason: &'static str },
}

/// The subgroups of `G_{3,1}` distinguished by the shape of their tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupTag {
    G31,
    G31_01,
    G31_01Sharp,
    G31Mod3,
    G31Mod3_01,
    G31Mod3_01Sharp,
}

impl GroupTag {
    pub const ALL: [GroupTag; 6] = [
        GroupTag::G31,
        GroupTag::G31_01,
        GroupTag::G31_01Sharp,
        GroupTag::G31Mod3,
        GroupTag::G31Mod3_01,
        GroupTag::G31Mod3_01Sharp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupTag::G31 => "G31",
            GroupTag::G31_01 => "G31_01",
            GroupTag::G31_01Sharp => "G31_01_SHARP",
            GroupTag::G31Mod3 => "G31_MOD3",
            GroupTag::G31Mod3_01 => "G31_MOD3_01",
            GroupTag::G31Mod3_01Sharp => "G31_MOD3_01_SHARP",
        }
    }

    pub fn is_mod3(self) -> bool {
        matches!(
            self,
            GroupTag::G31Mod3 | GroupTag::G31Mod3_01 | GroupTag::G31Mod3_01Sharp
        )
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupTag {
    type Err = ();
    fn from_str(s: &str) -> Result<GroupTag, ()> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        GroupTag::ALL.iter().copied().find(|t| t.name() == norm).ok_or(())
    }
}

/// Which stabilizer or fixator condition [`stab_fix_predicate`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabMode {
    PStab,
    TStab,
    PFix,
    TFix,
}

/// A canonical table element of `G_{3,1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    entries: Vec<(Word, Word)>,
}

/// Repeatedly collapses sibling triples. The input must already be a
/// bijection between maximal prefix codes.
fn canonicalize(pairs: Vec<(Word, Word)>) -> Vec<(Word, Word)> {
    let mut map: BTreeMap<Word, Word> = pairs.into_iter().collect();
    let mut work: BTreeSet<Word> = map.keys().filter_map(|k| k.parent()).collect();
    while let Some(u) = work.pop_last() {
        let Some(v0) = map.get(&u.child(Letter::Zero)) else { continue };
        if v0.last() != Some(&Letter::Zero) {
            continue;
        }
        let v = v0.parent().expect("nonempty");
        let matches = [Letter::One, Letter::Hash]
            .iter()
            .all(|&c| map.get(&u.child(c)) == Some(&v.child(c)));
        if !matches {
            continue;
        }
        for c in Letter::ALL {
            map.remove(&u.child(c));
        }
        if let Some(p) = u.parent() {
            work.insert(p);
        }
        map.insert(u, v);
    }
    map.into_iter().collect()
}

/// Index of the member of a sorted prefix code that is a prefix of `w`.
fn prefix_index<T>(sorted: &[(Word, T)], w: &[Letter]) -> Option<usize> {
    let k = sorted.partition_point(|(d, _)| d.letters() <= w);
    if k == 0 {
        return None;
    }
    let cand = &sorted[k - 1].0;
    cand.is_prefix_of(w).then_some(k - 1)
}

/// Range of members of a sorted code that extend `w`.
fn extension_range<T>(sorted: &[(Word, T)], w: &[Letter]) -> core::ops::Range<usize> {
    let start = sorted.partition_point(|(d, _)| d.letters() < w);
    let len = sorted[start..].iter().take_while(|(d, _)| d.starts_with(w)).count();
    start..start + len
}

impl Table {
    /// Builds the canonical table of a bijection between two maximal prefix
    /// codes.
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<Table, TableError> {
        let dom: Vec<Word> = pairs.iter().map(|p| p.0.clone()).collect();
        let img: Vec<Word> = pairs.iter().map(|p| p.1.clone()).collect();
        if !is_maximal_prefix_code(&dom) {
            return Err(TableError::DomainNotACode);
        }
        if !is_maximal_prefix_code(&img) {
            return Err(TableError::ImageNotACode);
        }
        // A maximal prefix code has no duplicates, so equal lengths already
        // make the pairing a bijection.
        if dom.len() != img.len() {
            return Err(TableError::NotBijective);
        }
        Ok(Table { entries: canonicalize(pairs) })
    }

    /// Canonicalizes pairs that are known to form a bijection between
    /// maximal prefix codes.
    pub(crate) fn from_bijection(pairs: Vec<(Word, Word)>) -> Table {
        Table { entries: canonicalize(pairs) }
    }

    pub fn identity() -> Table {
        Table { entries: alloc::vec![(Word::empty(), Word::empty())] }
    }

    pub fn entries(&self) -> &[(Word, Word)] {
        &self.entries
    }

    pub fn domain(&self) -> Vec<Word> {
        self.entries.iter().map(|p| p.0.clone()).collect()
    }

    pub fn image(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.entries.iter().map(|p| p.1.clone()).collect();
        v.sort();
        v
    }

    /// Cardinality of the domain code of the canonical table.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].0.is_empty() && self.entries[0].1.is_empty()
    }

    /// Image of `w`, or `None` when no domain word is a prefix of `w`.
    pub fn apply(&self, w: &[Letter]) -> Option<Word> {
        let k = prefix_index(&self.entries, w)?;
        let (p, q) = &self.entries[k];
        Some(q.concat(&w[p.len()..]))
    }

    /// Preimage of `w`.
    pub fn apply_inverse(&self, w: &[Letter]) -> Option<Word> {
        self.entries
            .iter()
            .find(|(_, q)| q.is_prefix_of(w))
            .map(|(p, q)| p.concat(&w[q.len()..]))
    }

    /// The inverse element.
    pub fn invert(&self) -> Table {
        let mut entries: Vec<(Word, Word)> =
            self.entries.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        entries.sort();
        Table { entries }
    }

    /// The product `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Table) -> Table {
        let mut out = Vec::with_capacity(self.entries.len().max(other.entries.len()));
        for (x, y) in &other.entries {
            if let Some(k) = prefix_index(&self.entries, y) {
                let (p, q) = &self.entries[k];
                out.push((x.clone(), q.concat(&y[p.len()..])));
            } else {
                for (p, q) in &self.entries[extension_range(&self.entries, y)] {
                    out.push((x.concat(&p[y.len()..]), q.clone()));
                }
            }
        }
        Table::from_bijection(out)
    }

    /// Splits entries until no domain or image word is a strict prefix of a
    /// member of `s`. The result is a table for the same element, no longer
    /// canonical.
    pub fn refine_against(&self, s: &[Word]) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        let mut stack: Vec<(Word, Word)> = self.entries.iter().rev().cloned().collect();
        while let Some((x, y)) = stack.pop() {
            let split = s.iter().any(|m| x.is_strict_prefix_of(m) || y.is_strict_prefix_of(m));
            if split {
                for c in Letter::ALL.iter().rev() {
                    stack.push((x.child(*c), y.child(*c)));
                }
            } else {
                out.push((x, y));
            }
        }
        out
    }

    /// Longest domain or image word.
    pub fn max_word_len(&self) -> usize {
        self.entries.iter().map(|(x, y)| x.len().max(y.len())).max().unwrap_or(0)
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in &self.entries {
            writeln!(f, "{x} -> {y}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (x, y)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}→{y}")?;
        }
        f.write_str("]")
    }
}

/// Parses the `dom -> img` line format. Blank lines and lines starting with
/// `//` are skipped.
impl FromStr for Table {
    type Err = TableError;
    fn from_str(text: &str) -> Result<Table, TableError> {
        let mut pairs = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            let (a, b) = line
                .split_once("->")
                .ok_or(TableError::Parse { line: k + 1, reason: "expected `dom -> img`" })?;
            let x = Word::parse(a)
                .map_err(|_| TableError::Parse { line: k + 1, reason: "bad domain word" })?;
            let y = Word::parse(b)
                .map_err(|_| TableError::Parse { line: k + 1, reason: "bad image word" })?;
            pairs.push((x, y));
        }
        Table::new(pairs)
    }
}

/// Convenience alias matching the operation list: builds a canonical table.
pub fn make_table(pairs: Vec<(Word, Word)>) -> Result<Table, TableError> {
    Table::new(pairs)
}

/// Checks the table-shape characterization of each subgroup.
pub fn member_of(phi: &Table, tag: GroupTag) -> bool {
    let kinds_match = |x: &Word, y: &Word| x.is_bits() == y.is_bits();
    let sharp_shape = |x: &Word, y: &Word| {
        (x.is_bits() && y.is_bits()) || (x.is_bits_hash() && y.is_bits_hash())
    };
    let mod3 = |x: &Word, y: &Word| !x.is_bits() || x.residue() == y.residue();
    phi.entries().iter().all(|(x, y)| match tag {
        GroupTag::G31 => true,
        GroupTag::G31_01 => kinds_match(x, y),
        GroupTag::G31_01Sharp => sharp_shape(x, y),
        GroupTag::G31Mod3 => mod3(x, y),
        GroupTag::G31Mod3_01 => kinds_match(x, y) && mod3(x, y),
        GroupTag::G31Mod3_01Sharp => sharp_shape(x, y) && mod3(x, y),
    })
}

fn in_ideal(s: &[Word], w: &[Letter]) -> bool {
    s.iter().any(|m| m.is_prefix_of(w))
}

/// Partial and total stabilizer and fixator conditions for the right ideal
/// `S·{0,1,#}*`.
pub fn stab_fix_predicate(phi: &Table, s: &[Word], mode: StabMode) -> bool {
    let refined = phi.refine_against(s);
    let stab = || refined.iter().all(|(x, y)| in_ideal(s, x) == in_ideal(s, y));
    let fix = || refined.iter().all(|(x, y)| !in_ideal(s, x) || x == y);
    let total = || {
        s.iter().all(|m| phi.apply(m).is_some() && phi.apply_inverse(m).is_some())
    };
    match mode {
        StabMode::PStab => stab(),
        StabMode::TStab => stab() && total(),
        StabMode::PFix => fix(),
        StabMode::TFix => fix() && total(),
    }
}

/// A domain word whose image is prefix-incomparable with it, or `None` for
/// the identity.
pub fn noncomparable_witness(phi: &Table) -> Option<(Word, Word)> {
    phi.entries()
        .iter()
        .find(|(x, y)| !crate::codes::comparable(x, y))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::w;
    use alloc::string::ToString;
    use alloc::vec;

    fn t(pairs: &[(&str, &str)]) -> Table {
        Table::new(pairs.iter().map(|(a, b)| (w(a), w(b))).collect()).unwrap()
    }

    fn all_words(max: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max {
            layer = layer
                .iter()
                .flat_map(|p| Letter::ALL.iter().map(move |&c| p.child(c)))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn not() -> Table {
        t(&[("0", "1"), ("1", "0"), ("#", "#")])
    }

    fn tau01() -> Table {
        let mut pairs = vec![];
        for a in ["0", "1"] {
            for b in ["0", "1"] {
                for c in ["0", "1", "#"] {
                    pairs.push((w(&[a, b, c].concat()), w(&[b, a, c].concat())));
                }
            }
            pairs.push((w(&[a, "#"].concat()), w(&[a, "#"].concat())));
        }
        pairs.push((w("#"), w("#")));
        Table::new(pairs).unwrap()
    }

    #[test]
    fn collapse_one_step() {
        let phi = t(&[("00", "10"), ("01", "11"), ("0#", "1#"), ("1", "0"), ("#", "#")]);
        assert_eq!(phi, not());
        for x in all_words(3) {
            let direct = [("00", "10"), ("01", "11"), ("0#", "1#"), ("1", "0"), ("#", "#")]
                .iter()
                .find(|(a, _)| w(a).is_prefix_of(&x))
                .map(|(a, b)| w(b).concat(&x[a.len()..]));
            if direct.is_some() {
                assert_eq!(phi.apply(&x), direct);
            }
        }
    }

    #[test]
    fn identity_collapses_to_root() {
        assert_eq!(t(&[("0", "0"), ("1", "1"), ("#", "#")]), Table::identity());
        assert_eq!(Table::identity().to_string(), "@ -> @\n");
    }

    #[test]
    fn construction_errors() {
        let bad = Table::new(vec![(w("0"), w("1")), (w("1"), w("#"))]);
        assert_eq!(bad, Err(TableError::DomainNotACode));
        let bad = Table::new(vec![(w("0"), w("1")), (w("1"), w("#")), (w("#"), w("1"))]);
        assert_eq!(bad, Err(TableError::ImageNotACode));
    }

    #[test]
    fn apply_cases() {
        assert_eq!(not().apply(&w("01#")), Some(w("11#")));
        assert_eq!(Table::identity().apply(&w("0#1")), Some(w("0#1")));
        assert_eq!(tau01().apply(&w("0")), None);
        assert_eq!(tau01().apply(&w("01")), Some(w("10")));
        assert_eq!(tau01().apply(&w("1")), None);
    }

    #[test]
    fn composition() {
        assert!(not().compose(&not()).is_identity());
        assert_eq!(tau01().size(), 7);
        assert_eq!(tau01().compose(&tau01().invert()), Table::identity());
        let phi = t(&[("0", "00"), ("10", "01"), ("11", "0#"), ("1#", "1"), ("#", "#")]);
        assert_eq!(phi.compose(&Table::identity()), phi);
        assert_eq!(Table::identity().compose(&phi), phi);
        assert!(phi.compose(&phi.invert()).is_identity());
        for x in all_words(4) {
            if let Some(y) = tau01().apply(&x).and_then(|y| phi.apply(&y)) {
                assert_eq!(phi.compose(&tau01()).apply(&x), Some(y));
            }
        }
    }

    #[test]
    fn membership() {
        assert!(member_of(&not(), GroupTag::G31Mod3_01Sharp));
        let bad = t(&[("0", "00"), ("10", "01"), ("11", "1"), ("1#", "0#"), ("#", "#")]);
        assert!(member_of(&bad, GroupTag::G31_01Sharp));
        assert!(!member_of(&bad, GroupTag::G31Mod3_01Sharp));
        assert!(member_of(&bad, GroupTag::G31));
        let mixed = t(&[("0", "1"), ("1", "#"), ("#", "0")]);
        assert!(!member_of(&mixed, GroupTag::G31_01));
        assert!(member_of(&mixed, GroupTag::G31Mod3));
    }

    #[test]
    fn stabilizers_and_fixators() {
        let id = Table::identity();
        assert!(stab_fix_predicate(&id, &[w("0")], StabMode::PFix));
        assert!(stab_fix_predicate(&id, &[w("0")], StabMode::TFix));
        let swap = t(&[("00", "01"), ("01", "00"), ("0#", "0#"), ("1", "1"), ("#", "#")]);
        assert!(stab_fix_predicate(&swap, &[w("1"), w("#")], StabMode::PFix));
        assert!(!stab_fix_predicate(&swap, &[w("0")], StabMode::PFix));
        assert!(stab_fix_predicate(&swap, &[w("0")], StabMode::PStab));
        assert!(!stab_fix_predicate(&swap, &[w("0")], StabMode::TStab));
        assert!(stab_fix_predicate(&swap, &[w("00"), w("01")], StabMode::TStab));
        assert!(!stab_fix_predicate(&not(), &[w("0")], StabMode::PStab));
        // τ_{0,1} is undefined on 0 and 1 themselves.
        assert!(stab_fix_predicate(&tau01(), &[w("00"), w("11")], StabMode::PFix));
        assert!(!stab_fix_predicate(&tau01(), &[w("0")], StabMode::TStab));
    }

    #[test]
    fn witnesses() {
        assert_eq!(noncomparable_witness(&Table::identity()), None);
        assert_eq!(noncomparable_witness(&not()), Some((w("0"), w("1"))));
        assert_eq!(noncomparable_witness(&tau01()), Some((w("01"), w("10"))));
    }

    #[test]
    fn text_round_trip() {
        let phi = tau01();
        let back: Table = phi.to_string().parse().unwrap();
        assert_eq!(back, phi);
        assert!(matches!("0 1".parse::<Table>(), Err(TableError::Parse { line: 1, .. })));
    }

    #[test]
    fn tags_parse() {
        for tag in GroupTag::ALL {
            assert_eq!(tag.name().parse::<GroupTag>(), Ok(tag));
        }
        assert_eq!("g31-mod3-01-sharp".parse::<GroupTag>(), Ok(GroupTag::G31Mod3_01Sharp));
    }
}
