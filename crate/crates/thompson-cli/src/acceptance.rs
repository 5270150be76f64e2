//! The acceptance suite: ten seeded end-to-end checks with pinned sample
//! counts and time limits. Each check prints one PASS or FAIL line.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thompson::circuits::{compile, compile_strong, pad, strictify, Circuit};
use thompson::codes::{bit_words, Letter};
use thompson::genwords::{eval, make_adjacent_transposition, GenToken};
use thompson::kappa::{kappa_apply, kappa_conjugate, kappa_is_identity, KTok, KappaWord};
use thompson::presentation::{enumerate_generators, factor_traced};
use thompson::sample::{
    equivalent_variant, mutate, random_circuit, random_genword, random_sharp_table, random_zero_fixing_table,
};
use thompson::table::member_of;
use thompson::wordproblem::{
    circuit_equiv, find_noncommuting_witness, is_pfix_zero, wp_bounded_witness, wp_normal_form_is_identity,
    wp_table, witness_bound, EquivMode, Verdict, WitnessConfig,
};
use thompson::{GroupTag, Table, Word};

pub const DEFAULT_SEED: u64 = 20;

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    /// The check itself succeeded; timing is judged separately.
    pub correct: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.correct && self.elapsed <= self.limit
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:>2} {}: {} [{:.3} s, limit {} s]",
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

type Check = fn(&mut ChaCha8Rng) -> Result<String, String>;

/// Names, time limits and bodies of the criteria, in order.
const CRITERIA: [(&str, u64, Check); 10] = [
    ("transposition table-size law", 5, transposition_sizes),
    ("simulation correctness", 60, simulation),
    ("strong simulation circuit-independence", 60, strong_independence),
    ("compiler bounds", 10, compiler_bounds),
    ("decider agreement", 120, decider_agreement),
    ("commutation test", 60, commutation_test),
    ("kappa word problem", 120, kappa_word_problem),
    ("conjugation coherence", 60, conjugation_coherence),
    ("factorization round trip", 60, factorization),
    ("group/oracle equivalence", 120, group_oracle),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based) with a generator derived from `seed`.
pub fn run_one(id: u8, seed: u64) -> Outcome {
    let (name, limit, check) = CRITERIA[usize::from(id) - 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(u64::from(id)));
    let start = Instant::now();
    let result = check(&mut rng);
    let elapsed = start.elapsed();
    let (correct, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id, name, correct, elapsed, limit: Duration::from_secs(limit), detail }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=CRITERIA.len() as u8).map(|id| run_one(id, seed)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bits_of(k: u64, m: usize) -> Vec<bool> {
    (0..m).rev().map(|j| k >> j & 1 == 1).collect()
}

fn bit_letters(bits: &[bool]) -> Vec<Letter> {
    bits.iter().map(|&b| Letter::bit(b)).collect()
}

fn transposition_sizes(_: &mut ChaCha8Rng) -> Result<String, String> {
    for i in 0..=7usize {
        let got = make_adjacent_transposition(i).size();
        let want = (1usize << (i + 3)) - 1;
        ensure(got == want, || format!("i = {i}: table-size {got}, expected {want}"))?;
    }
    Ok("table-size 2^(i+3) - 1 for i = 0..7".into())
}

/// The circuits shared by the simulation and bound criteria.
fn criterion_circuits(rng: &mut ChaCha8Rng, count: usize) -> Vec<Circuit> {
    (0..count)
        .map(|_| {
            let m = rng.random_range(1..=4);
            random_circuit(rng, m, 10)
        })
        .collect()
}

fn simulation(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let circuits = criterion_circuits(rng, 60);
    let suffixes: [&[Letter]; 3] = [&[], &[Letter::Zero], &[Letter::One, Letter::One]];
    let mut probes = 0;
    for c in &circuits {
        let w = compile(c);
        let m = c.inputs();
        let p = pad(c.output_count());
        for k in 0..1u64 << m {
            let x = bits_of(k, m);
            let fx = c.eval(&x).map_err(|e| e.to_string())?;
            for s in suffixes {
                let mut input = vec![Letter::Zero];
                input.extend(bit_letters(&x));
                input.extend_from_slice(s);
                input.push(Letter::Hash);
                let mut want = vec![Letter::Zero; 1 + p];
                want.extend(bit_letters(&fx));
                want.extend_from_slice(&input[1..]);
                let got = eval(&w, &input);
                probes += 1;
                ensure(got.as_deref() == Some(&want[..]), || {
                    format!("circuit\n{c}input {}: got {:?}", Word::from_letters(input.clone()), got)
                })?;
            }
        }
    }
    Ok(format!("{} circuits, {probes} probes", circuits.len()))
}

fn strong_independence(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut probes = 0;
    let pairs = 15;
    for _ in 0..pairs {
        let m = rng.random_range(2..=4);
        let c1 = random_circuit(rng, m, 10);
        let c2 = equivalent_variant(rng, &c1);
        ensure(c1 != c2, || "variant equals the original".into())?;
        let (w1, w2) = (compile_strong(&c1), compile_strong(&c2));
        for k in 0..m {
            for x in bit_words(k) {
                let mut input = vec![Letter::Zero];
                input.extend_from_slice(&x);
                input.push(Letter::Hash);
                probes += 1;
                let (a, b) = (eval(&w1, &input), eval(&w2, &input));
                ensure(a == b, || {
                    format!("short input {} gives {a:?} and {b:?} for\n{c1}and\n{c2}", Word::from_letters(input.clone()))
                })?;
            }
        }
    }
    Ok(format!("{pairs} pairs, {probes} short inputs"))
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        let dx = x.ln() - mx;
        (a + dx * (y.ln() - my), b + dx * dx)
    });
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn compiler_bounds(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let circuits = criterion_circuits(rng, 60);
    let mut points = Vec::new();
    for c in &circuits {
        let size = strictify(c).size();
        let w = compile(c);
        let max_tau = w.max_tau_index().unwrap_or(0);
        ensure(max_tau <= 3 * size * size, || {
            format!("max tau index {max_tau} exceeds 3 * {size}^2 for\n{c}")
        })?;
        points.push((size as f64, w.len().max(1) as f64));
    }
    let slope = log_log_slope(&points);
    ensure(slope <= 4.0, || format!("token count grows with exponent {slope:.2}"))?;
    Ok(format!("{} circuits, fitted exponent {slope:.2}", circuits.len()))
}

fn decider_agreement(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let alphabet = [
        GenToken::NOT,
        GenToken::OR,
        GenToken::AND,
        GenToken::F4,
        GenToken::tau(0),
        GenToken::tau(1),
        GenToken::K321,
    ];
    let (mut identities, mut with_table) = (0, 0);
    let total = 500;
    for _ in 0..total {
        let len = rng.random_range(0..=8);
        let w = random_genword(rng, len, &alphabet);
        let nf = wp_normal_form_is_identity(&w).map_err(|e| format!("{w}: {e}"))?;
        let cfg = WitnessConfig::for_word(&w, 0);
        let cfg = WitnessConfig { cap: witness_bound(&w, cfg.ell), ..cfg };
        let verdict = wp_bounded_witness(&w, cfg);
        let agrees = match &verdict {
            Verdict::IdentityProven => nf,
            Verdict::NotIdentity(_) => !nf,
            Verdict::IdentityUpTo(_) => false,
        };
        ensure(agrees, || format!("{w}: normal form says {nf}, witness search says {verdict}"))?;
        if !w.has_kappa() {
            with_table += 1;
            let t = wp_table(&w).map_err(|e| format!("{w}: {e}"))?;
            ensure(t == nf, || format!("{w}: table says {t}, normal form says {nf}"))?;
        }
        identities += usize::from(nf);
    }
    Ok(format!("{total} words ({identities} identities, {with_table} checked by table)"))
}

fn commutation_test(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let (mut fixing, mut separated) = (0, 0);
    let total = 200;
    for k in 0..total {
        let g = if k % 2 == 0 {
            random_sharp_table(rng, 21, true)
        } else {
            random_zero_fixing_table(rng, 21, true)
        };
        let fixes = is_pfix_zero(&g);
        let witness = find_noncommuting_witness(&g).map_err(|e| format!("{g:?}: {e}"))?;
        ensure(fixes == witness.is_none(), || {
            format!("{g:?}: pfix {fixes} but separator {witness:?}")
        })?;
        if let Some(h) = witness {
            ensure(g.compose(&h) != h.compose(&g), || format!("{g:?} commutes with {h:?}"))?;
            separated += 1;
        }
        fixing += usize::from(fixes);
    }
    Ok(format!("{total} tables ({fixing} fix 0A*, {separated} separated)"))
}

/// Position reached by bit `k` under `κ_i^{±1}` when `len` bits precede
/// the `#`, straight from the definition: the permuted block is the longest
/// prefix of length `3n + 3 + c_i` with `c = (0, 1, 2, 0)`, and inside it
/// positions from `i` on rotate within consecutive triples.
fn oracle_dest(i: u8, inverse: bool, len: usize, k: usize) -> usize {
    let extra = [0, 1, 2, 0][usize::from(i)];
    let block = (0..=len / 3).rev().map(|n| 3 * n + 3 + extra).find(|&b| b <= len).unwrap_or(0);
    let lo = usize::from(i);
    if k >= block || k < lo {
        return k;
    }
    let base = k - (k - lo) % 3;
    let r = (k - lo) % 3;
    base + if inverse { (r + 2) % 3 } else { (r + 1) % 3 }
}

/// Applies a κ-word to every bit string of length `len` and reports the
/// first one that moves.
fn oracle_moves(word: &[KTok], len: usize) -> Option<u32> {
    let maps: Vec<Vec<usize>> = word
        .iter()
        .rev()
        .map(|t| (0..len).map(|k| oracle_dest(t.index, t.inverse, len, k)).collect())
        .collect();
    (0..1u32 << len).find(|&x| {
        let y = maps.iter().fold(x, |v, map| {
            map.iter().enumerate().fold(0, |acc, (k, &d)| acc | (v >> k & 1) << d)
        });
        y != x
    })
}

fn kappa_word_problem(_: &mut ChaCha8Rng) -> Result<String, String> {
    let letters: Vec<KTok> = (0..3u8).flat_map(|i| [KTok::new(i, false), KTok::new(i, true)]).collect();
    let mut words: Vec<Vec<KTok>> = vec![Vec::new()];
    let mut frontier = words.clone();
    for _ in 0..3 {
        frontier = frontier
            .iter()
            .flat_map(|w| letters.iter().map(move |&t| [w.as_slice(), &[t]].concat()))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    let mut identities = 0;
    for w in &words {
        let k = KappaWord(w.clone());
        let decided = kappa_is_identity(&k);
        let moved = (0..=6 * w.len() + 3).find_map(|len| oracle_moves(w, len).map(|x| (len, x)));
        ensure(decided == moved.is_none(), || format!("{k}: decider {decided}, oracle moves {moved:?}"))?;
        identities += usize::from(decided);
    }
    Ok(format!("{} words ({identities} identities)", words.len()))
}

fn random_probe(rng: &mut ChaCha8Rng) -> Vec<Letter> {
    let n = rng.random_range(0..=20);
    let mut v: Vec<Letter> = (0..n).map(|_| Letter::bit(rng.random_bool(0.5))).collect();
    v.push(Letter::Hash);
    let tail = rng.random_range(0..=3);
    v.extend((0..tail).map(|_| [Letter::Zero, Letter::One, Letter::Hash][rng.random_range(0..3)]));
    v
}

fn conjugation_coherence(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let ks = [
        KappaWord(vec![KTok::new(1, false)]),
        KappaWord(vec![KTok::new(2, false)]),
        KappaWord(vec![KTok::new(3, false)]),
        KappaWord::k321_pow(1),
    ];
    let total = 100;
    let mut compared = 0;
    for _ in 0..total {
        let phi = random_sharp_table(rng, 15, true);
        let base = &ks[rng.random_range(0..ks.len())];
        let k = if rng.random_bool(0.5) { base.inverse() } else { base.clone() };
        let c = kappa_conjugate(&phi, &k).map_err(|e| format!("{phi:?} by {k}: {e}"))?;
        ensure(member_of(&c, GroupTag::G31Mod3_01Sharp), || format!("{phi:?} by {k} leaves the subgroup"))?;
        let back = kappa_conjugate(&c, &k.inverse()).map_err(|e| e.to_string())?;
        ensure(back == phi, || format!("{phi:?} by {k} does not round-trip"))?;
        for _ in 0..500 {
            let u = random_probe(rng);
            let pointwise = kappa_apply(&k.inverse(), &u)
                .and_then(|v| phi.apply(&v))
                .and_then(|v| kappa_apply(&k, &v));
            if let Some(p) = pointwise {
                compared += 1;
                let got = c.apply(&u);
                ensure(got.as_ref() == Some(&p), || {
                    format!("{phi:?} by {k} at {}: {got:?} vs {p}", Word::from_letters(u.clone()))
                })?;
            }
        }
    }
    let tau = kappa_conjugate(&make_adjacent_transposition(1), &KappaWord::k321_pow(1).inverse())
        .map_err(|e| e.to_string())?;
    ensure(tau == make_adjacent_transposition(4), || format!("tau(1,2) conjugates to {tau:?}"))?;
    Ok(format!("{total} tables, {compared} pointwise comparisons, tau(1,2) -> tau(4,5)"))
}

fn factorization(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut gens = enumerate_generators(GroupTag::G31_01Sharp, 7).map_err(|e| e.to_string())?;
    let total = 100;
    let mut letters = 0;
    for _ in 0..total {
        let phi = random_sharp_table(rng, 21, false);
        let (ids, largest) = factor_traced(&phi, &mut gens).map_err(|e| format!("{phi:?}: {e}"))?;
        ensure(gens.evaluate(&ids) == phi, || format!("{phi:?}: factorization does not compose back"))?;
        ensure(largest <= phi.size(), || {
            format!("{phi:?}: intermediate table-size {largest} exceeds {}", phi.size())
        })?;
        let gen_ok = ids.iter().all(|&id| gens.get(id).is_some_and(|t: &Table| t.size() <= 7));
        ensure(gen_ok, || format!("{phi:?}: factor outside the generating set"))?;
        letters += ids.len();
    }
    Ok(format!("{total} tables over {} generators, {letters} letters in total", gens.len()))
}

fn group_oracle(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut equivalent = 0;
    for k in 0..30 {
        let m = rng.random_range(1..=4);
        let c1 = random_circuit(rng, m, 10);
        let c2 = if k < 15 { equivalent_variant(rng, &c1) } else { mutate(rng, &c1) };
        let oracle = circuit_equiv(&c1, &c2, EquivMode::Oracle).map_err(|e| e.to_string())?;
        let group = circuit_equiv(&c1, &c2, EquivMode::Group).map_err(|e| e.to_string())?;
        ensure(oracle.equivalent == group.equivalent, || {
            format!("oracle {} group {} for\n{c1}and\n{c2}", oracle.equivalent, group.equivalent)
        })?;
        ensure(k >= 15 || oracle.equivalent, || format!("variant differs from\n{c1}"))?;
        equivalent += usize::from(oracle.equivalent);
    }
    Ok(format!("30 pairs ({equivalent} equivalent)"))
}
