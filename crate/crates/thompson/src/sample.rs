//! Random tables, circuits and generator words for property tests and the
//! acceptance suite. Every function takes the generator explicitly so runs
//! are reproducible from a seed.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuits::{Circuit, Gate, GateKind, Source};
use crate::codes::{complete_with_endmarkers, mod3_cardinality, Letter, Word};
use crate::genwords::{GenToken, GenWord};
use crate::table::Table;

/// A maximal binary prefix code with `k` members, grown by splitting random
/// leaves.
pub fn random_binary_code<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Word> {
    let mut code = vec![Word::empty()];
    while code.len() < k.max(1) {
        let leaf = code.swap_remove(rng.random_range(0..code.len()));
        code.push(leaf.child(Letter::Zero));
        code.push(leaf.child(Letter::One));
    }
    code.sort();
    code
}

/// A random element of `G_{3,1}(0,1;#)`, or of its mod 3 subgroup, whose
/// canonical table has at most `max_size` entries.
pub fn random_sharp_table<R: Rng + ?Sized>(rng: &mut R, max_size: usize, mod3: bool) -> Table {
    let k = rng.random_range(1..=max_size.div_ceil(2).max(1));
    let p1 = random_binary_code(rng, k);
    let q1 = matching_code(rng, &p1, mod3);
    sharp_from_codes(rng, &p1, &q1, mod3, &[])
}

/// Like [`random_sharp_table`], but the element maps `0` to itself and so
/// fixes every word that starts with `0`. Needs `max_size >= 3`.
pub fn random_zero_fixing_table<R: Rng + ?Sized>(rng: &mut R, max_size: usize, mod3: bool) -> Table {
    let k = rng.random_range(1..=max_size.div_ceil(2).max(2) - 1);
    let under_one = |c: Vec<Word>| -> Vec<Word> {
        let mut out = vec![Word::empty().child(Letter::Zero)];
        out.extend(c.iter().map(|w| {
            let mut v = vec![Letter::One];
            v.extend_from_slice(w);
            Word::from_letters(v)
        }));
        out
    };
    let r1 = random_binary_code(rng, k);
    let r2 = matching_code(rng, &r1, mod3);
    // Shifting both codes under `1` adds one to every length, which keeps
    // the residue classes aligned.
    let zero = Word::empty().child(Letter::Zero);
    sharp_from_codes(rng, &under_one(r1), &under_one(r2), mod3, &[zero])
}

/// A random maximal code with as many members as `p1` and, for the mod 3
/// shape, the same number of words in each length class.
fn matching_code<R: Rng + ?Sized>(rng: &mut R, p1: &[Word], mod3: bool) -> Vec<Word> {
    let mut q1 = random_binary_code(rng, p1.len());
    if mod3 {
        let want = mod3_cardinality(p1);
        let mut tries = 0;
        while mod3_cardinality(&q1) != want {
            tries += 1;
            q1 = if tries < 200 { random_binary_code(rng, p1.len()) } else { p1.to_vec() };
        }
    }
    q1
}

/// A random shape-respecting bijection `p1 -> q1`, completed with the
/// endmarker rows. Words in `fixed` belong to both codes and map to
/// themselves.
fn sharp_from_codes<R: Rng + ?Sized>(rng: &mut R, p1: &[Word], q1: &[Word], mod3: bool, fixed: &[Word]) -> Table {
    let mut pairs: Vec<(Word, Word)> = fixed.iter().map(|w| (w.clone(), w.clone())).collect();
    for r in 0..3u8 {
        let class = |c: &[Word]| -> Vec<Word> {
            c.iter().filter(|w| !fixed.contains(w) && (!mod3 || w.residue() == r)).cloned().collect()
        };
        let dom = class(p1);
        let mut img = class(q1);
        img.shuffle(rng);
        pairs.extend(dom.into_iter().zip(img));
        if !mod3 {
            break;
        }
    }
    let stems = |c: &[Word]| -> Vec<Word> {
        complete_with_endmarkers(c).into_iter().filter(|w| !w.is_bits()).collect()
    };
    let mut img_hash = stems(q1);
    img_hash.shuffle(rng);
    pairs.extend(stems(p1).into_iter().zip(img_hash));
    Table::new(pairs).expect("bijection between maximal codes")
}

/// A random circuit with `m` inputs and size at most `max_size`, which must
/// be at least `m`.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, m: usize, max_size: usize) -> Circuit {
    let mut pool: Vec<Source> = (0..m).map(Source::Input).collect();
    let mut gates: Vec<Gate> = Vec::new();
    let mut fan_in = 0;
    let take = |rng: &mut R, pool: &mut Vec<Source>| pool.swap_remove(rng.random_range(0..pool.len()));
    loop {
        let size = fan_in + pool.len();
        let kinds: Vec<GateKind> = [GateKind::Not, GateKind::Id, GateKind::And, GateKind::Or, GateKind::Fork]
            .into_iter()
            .filter(|k| {
                let grow = if *k == GateKind::Fork { 2 } else { 1 };
                pool.len() >= k.fan_in() && size + grow <= max_size
            })
            .collect();
        if kinds.is_empty() || rng.random_range(0..8) == 0 {
            break;
        }
        let kind = kinds[rng.random_range(0..kinds.len())];
        let srcs: Vec<Source> = (0..kind.fan_in()).map(|_| take(rng, &mut pool)).collect();
        let idx = gates.len();
        gates.push(Gate { id: format!("g{idx}"), kind, srcs });
        fan_in += kind.fan_in();
        if kind == GateKind::Fork {
            pool.push(Source::Half(idx, 0));
            pool.push(Source::Half(idx, 1));
        } else {
            pool.push(Source::Gate(idx));
        }
    }
    pool.shuffle(rng);
    Circuit::new(m, gates, pool).expect("generated circuits are valid")
}

/// A word of length `len` over `alphabet` and its inverses.
pub fn random_genword<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: &[GenToken]) -> GenWord {
    GenWord(
        (0..len)
            .map(|_| {
                let t = alphabet[rng.random_range(0..alphabet.len())];
                if rng.random_bool(0.5) {
                    t.inv()
                } else {
                    t
                }
            })
            .collect(),
    )
}

fn rebuild(c: &Circuit, gates: Vec<Gate>, outputs: Vec<Source>) -> Circuit {
    Circuit::new(c.inputs(), gates, outputs).expect("rewrites keep circuits valid")
}

/// A different circuit computing the same function: swaps the inputs of a
/// binary gate, or routes an output through two NOT gates.
pub fn equivalent_variant<R: Rng + ?Sized>(rng: &mut R, c: &Circuit) -> Circuit {
    let mut gates = c.gates().to_vec();
    let mut outputs = c.outputs().to_vec();
    let binary: Vec<usize> = (0..gates.len()).filter(|&g| gates[g].kind.fan_in() == 2).collect();
    if !binary.is_empty() && rng.random_bool(0.5) {
        let g = binary[rng.random_range(0..binary.len())];
        gates[g].srcs.swap(0, 1);
        if gates[g].srcs[0] != gates[g].srcs[1] {
            return rebuild(c, gates, outputs);
        }
    }
    let k = rng.random_range(0..outputs.len());
    let n = gates.len();
    gates.push(Gate { id: format!("n{n}a"), kind: GateKind::Not, srcs: vec![outputs[k]] });
    gates.push(Gate { id: format!("n{n}b"), kind: GateKind::Not, srcs: vec![Source::Gate(n)] });
    outputs[k] = Source::Gate(n + 1);
    rebuild(c, gates, outputs)
}

/// A circuit that usually computes a different function: flips AND and OR
/// in one gate, or negates one output.
pub fn mutate<R: Rng + ?Sized>(rng: &mut R, c: &Circuit) -> Circuit {
    let mut gates = c.gates().to_vec();
    let mut outputs = c.outputs().to_vec();
    let binary: Vec<usize> = (0..gates.len()).filter(|&g| gates[g].kind.fan_in() == 2).collect();
    if !binary.is_empty() && rng.random_bool(0.5) {
        let g = binary[rng.random_range(0..binary.len())];
        gates[g].kind = if gates[g].kind == GateKind::And { GateKind::Or } else { GateKind::And };
        return rebuild(c, gates, outputs);
    }
    let k = rng.random_range(0..outputs.len());
    let n = gates.len();
    gates.push(Gate { id: format!("m{n}"), kind: GateKind::Not, srcs: vec![outputs[k]] });
    outputs[k] = Source::Gate(n);
    rebuild(c, gates, outputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{member_of, GroupTag};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_tables_have_the_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let t = random_sharp_table(&mut rng, 21, true);
            assert!(t.size() <= 21);
            assert!(member_of(&t, GroupTag::G31Mod3_01Sharp));
            let t = random_sharp_table(&mut rng, 21, false);
            assert!(t.size() <= 21);
            assert!(member_of(&t, GroupTag::G31_01Sharp));
            let t = random_zero_fixing_table(&mut rng, 21, true);
            assert!(t.size() <= 21);
            assert!(member_of(&t, GroupTag::G31Mod3_01Sharp));
            assert!(crate::wordproblem::is_pfix_zero(&t), "{t:?}");
        }
    }

    #[test]
    fn random_circuits_respect_the_size_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let m = rng.random_range(1..=4);
            let c = random_circuit(&mut rng, m, 10);
            assert!(c.size() <= 10);
            let v = equivalent_variant(&mut rng, &c);
            for k in 0..1u32 << m {
                let x: Vec<bool> = (0..m).map(|j| k >> j & 1 == 1).collect();
                assert_eq!(c.eval(&x), v.eval(&x));
            }
            assert_eq!(mutate(&mut rng, &c).inputs(), m);
        }
    }
}
