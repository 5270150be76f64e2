//! Acyclic boolean circuits and their compilation into generator words.
//!
//! The compiled word works on a prefix of the input word, called the
//! region, that holds leading zeros followed by variables. Every gate writes
//! its value into a leading zero with `φ_∨`, `φ_∧` or `φ_¬` and then rotates
//! it behind the variables it was computed from, so nothing is ever
//! overwritten. `φ_{0f,4}` supplies three fresh zeros whenever the supply
//! runs low, which keeps the zero count in `{1,2,3}`. After the last slice
//! the outputs are moved out of the way, the earlier slices are replayed
//! backwards to erase their intermediate values, and a final permutation
//! produces `0^{1+pad(n)} f(x) x`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::genwords::{GenToken, GenWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate {0} has the wrong number of sources")]
    GateArity(String),
    #[error("source {0} does not exist or has the wrong form")]
    BadSource(String),
    #[error("circuit has a cycle through gate {0}")]
    Cycle(String),
    #[error("source {0} is used {1} times, expected exactly once")]
    Fanout(String, usize),
    #[error("expected {expected} input bits, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("circuits need at least one input and one output")]
    Empty,
    #[error("circuit is not of depth one")]
    NotDepthOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Not,
    And,
    Or,
    Fork,
    Id,
}

impl GateKind {
    pub fn fan_in(self) -> usize {
        match self {
            GateKind::And | GateKind::Or => 2,
            _ => 1,
        }
    }

    pub fn fan_out(self) -> usize {
        if self == GateKind::Fork {
            2
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Fork => "FORK",
            GateKind::Id => "ID",
        }
    }

    fn eval(self, a: bool, b: bool) -> bool {
        match self {
            GateKind::Not => !a,
            GateKind::And => a & b,
            GateKind::Or => a | b,
            GateKind::Fork | GateKind::Id => a,
        }
    }
}

/// Where a wire comes from. Gates are referenced by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Input(usize),
    Gate(usize),
    /// One of the two outputs of a FORK gate.
    Half(usize, u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub srcs: Vec<Source>,
}

/// A validated acyclic circuit with single-use wires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    m: usize,
    gates: Vec<Gate>,
    outputs: Vec<Source>,
    order: Vec<usize>,
}

impl Circuit {
    pub fn new(m: usize, gates: Vec<Gate>, outputs: Vec<Source>) -> Result<Circuit, CircuitError> {
        if m == 0 || outputs.is_empty() {
            return Err(CircuitError::Empty);
        }
        for g in &gates {
            if g.srcs.len() != g.kind.fan_in() {
                return Err(CircuitError::GateArity(g.id.clone()));
            }
        }
        let mut c = Circuit { m, gates, outputs, order: Vec::new() };
        let mut uses: Vec<(Source, usize)> = Vec::new();
        uses.extend((0..m).map(|k| (Source::Input(k), 0)));
        for (k, g) in c.gates.iter().enumerate() {
            if g.kind == GateKind::Fork {
                uses.push((Source::Half(k, 0), 0));
                uses.push((Source::Half(k, 1), 0));
            } else {
                uses.push((Source::Gate(k), 0));
            }
        }
        uses.sort();
        let consumed = c.gates.iter().flat_map(|g| g.srcs.iter()).chain(c.outputs.iter());
        for s in consumed {
            match uses.binary_search_by(|(u, _)| u.cmp(s)) {
                Ok(k) => uses[k].1 += 1,
                Err(_) => return Err(CircuitError::BadSource(c.source_name(*s))),
            }
        }
        if let Some((s, n)) = uses.iter().find(|(_, n)| *n != 1) {
            return Err(CircuitError::Fanout(c.source_name(*s), *n));
        }
        c.order = c.topological_order()?;
        Ok(c)
    }

    fn topological_order(&self) -> Result<Vec<usize>, CircuitError> {
        // 0 = unvisited, 1 = on the stack, 2 = done.
        let mut state = vec![0u8; self.gates.len()];
        let mut order = Vec::with_capacity(self.gates.len());
        for root in 0..self.gates.len() {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (g, ref mut next)) = stack.last_mut() {
                if let Some(&s) = self.gates[g].srcs.get(*next) {
                    *next += 1;
                    let Some(h) = gate_of(s) else { continue };
                    match state[h] {
                        0 => {
                            state[h] = 1;
                            stack.push((h, 0));
                        }
                        1 => return Err(CircuitError::Cycle(self.gates[h].id.clone())),
                        _ => {}
                    }
                } else {
                    state[g] = 2;
                    order.push(g);
                    stack.pop();
                }
            }
        }
        Ok(order)
    }

    pub fn source_name(&self, s: Source) -> String {
        use alloc::format;
        match s {
            Source::Input(k) => format!("in.{k}"),
            Source::Gate(g) => self.gates.get(g).map_or(format!("#{g}"), |x| x.id.clone()),
            Source::Half(g, h) => {
                let id = self.gates.get(g).map_or(format!("#{g}"), |x| x.id.clone());
                format!("{id}.{h}")
            }
        }
    }

    pub fn inputs(&self) -> usize {
        self.m
    }

    pub fn outputs(&self) -> &[Source] {
        &self.outputs
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// `|C| = k₁ + 2k₂ + n` with `k₁` fan-in-one gates, `k₂` fan-in-two
    /// gates and `n` outputs.
    pub fn size(&self) -> usize {
        self.gates.iter().map(|g| g.kind.fan_in()).sum::<usize>() + self.outputs.len()
    }

    /// Evaluates the circuit gate by gate.
    pub fn eval(&self, bits: &[bool]) -> Result<Vec<bool>, CircuitError> {
        if bits.len() != self.m {
            return Err(CircuitError::Arity { expected: self.m, got: bits.len() });
        }
        let mut val = vec![false; self.gates.len()];
        let read = |val: &[bool], s: Source| match s {
            Source::Input(k) => bits[k],
            Source::Gate(g) | Source::Half(g, _) => val[g],
        };
        for &g in &self.order {
            let gate = &self.gates[g];
            let a = read(&val, gate.srcs[0]);
            let b = gate.srcs.get(1).is_some_and(|&s| read(&val, s));
            val[g] = gate.kind.eval(a, b);
        }
        Ok(self.outputs.iter().map(|&s| read(&val, s)).collect())
    }
}

fn gate_of(s: Source) -> Option<usize> {
    match s {
        Source::Input(_) => None,
        Source::Gate(g) | Source::Half(g, _) => Some(g),
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {}", self.m)?;
        for g in &self.gates {
            write!(f, "gate {} {}", g.id, g.kind.name())?;
            for &s in &g.srcs {
                write!(f, " {}", self.source_name(s))?;
            }
            writeln!(f)?;
        }
        f.write_str("outputs")?;
        for &s in &self.outputs {
            write!(f, " {}", self.source_name(s))?;
        }
        writeln!(f)
    }
}

/// `eval_circuit` under its operation name.
pub fn eval_circuit(c: &Circuit, bits: &[bool]) -> Result<Vec<bool>, CircuitError> {
    c.eval(bits)
}

/// A gate of one layer; sources index the previous layer's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceGate {
    pub kind: GateKind,
    pub srcs: Vec<usize>,
}

/// One layer of a strictly layered circuit. Its variables are the outputs
/// of its gates in order, two for a FORK.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub inputs: usize,
    pub gates: Vec<SliceGate>,
}

impl Slice {
    pub fn output_count(&self) -> usize {
        self.gates.iter().map(|g| g.kind.fan_out()).sum()
    }

    /// Size of the slice as a circuit whose outputs are all gate outputs.
    pub fn size(&self) -> usize {
        self.gates.iter().map(|g| g.kind.fan_in()).sum::<usize>() + self.output_count()
    }

    pub fn eval(&self, x: &[bool]) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.output_count());
        for g in &self.gates {
            let a = x[g.srcs[0]];
            let b = g.srcs.get(1).is_some_and(|&s| x[s]);
            let v = g.kind.eval(a, b);
            out.extend(core::iter::repeat_n(v, g.kind.fan_out()));
        }
        out
    }
}

/// A circuit in which every gate reads only the layer right before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredCircuit {
    pub m: usize,
    pub slices: Vec<Slice>,
    /// `outputs[i]` is the index of the `i`-th circuit output among the
    /// variables of the last slice.
    pub outputs: Vec<usize>,
    /// Number of identity gates added by [`strictify`].
    pub inserted: usize,
}

impl LayeredCircuit {
    pub fn depth(&self) -> usize {
        self.slices.len()
    }

    /// `k₁ + 2k₂ + n` of the layered circuit.
    pub fn size(&self) -> usize {
        self.slices
            .iter()
            .flat_map(|s| s.gates.iter())
            .map(|g| g.kind.fan_in())
            .sum::<usize>()
            + self.outputs.len()
    }

    pub fn eval(&self, x: &[bool]) -> Vec<bool> {
        let mut cur = x.to_vec();
        for s in &self.slices {
            cur = s.eval(&cur);
        }
        self.outputs.iter().map(|&k| cur[k]).collect()
    }
}

/// Inserts identity gates so that every gate and every output reads from
/// the layer directly below it.
pub fn strictify(c: &Circuit) -> LayeredCircuit {
    let mut level = vec![0usize; c.gates.len()];
    let src_level = |level: &[usize], s: Source| gate_of(s).map_or(0, |g| level[g]);
    for &g in &c.order {
        let l = c.gates[g].srcs.iter().map(|&s| src_level(&level, s)).max().unwrap_or(0);
        level[g] = l + 1;
    }
    let depth = c.outputs.iter().map(|&s| src_level(&level, s)).max().unwrap_or(0).max(1);

    // Every source is consumed exactly once; record the consumer's level.
    let mut consumers: Vec<(Source, usize)> = Vec::new();
    for (g, gate) in c.gates.iter().enumerate() {
        consumers.extend(gate.srcs.iter().map(|&s| (s, level[g])));
    }
    consumers.extend(c.outputs.iter().map(|&s| (s, depth + 1)));
    consumers.sort();
    let consumer_level = |s: Source| {
        let k = consumers.binary_search_by(|(u, _)| u.cmp(&s)).expect("validated");
        consumers[k].1
    };

    // Variables of the current layer, keyed by the source they carry.
    let mut vars: Vec<Source> = (0..c.m).map(Source::Input).collect();
    let mut slices = Vec::with_capacity(depth);
    let mut inserted = 0;
    for l in 1..=depth {
        let index = |vars: &[Source], s: Source| vars.iter().position(|&v| v == s).expect("alive");
        let mut gates = Vec::new();
        let mut next = Vec::new();
        for (g, gate) in c.gates.iter().enumerate().filter(|(g, _)| level[*g] == l) {
            let srcs = gate.srcs.iter().map(|&s| index(&vars, s)).collect();
            gates.push(SliceGate { kind: gate.kind, srcs });
            if gate.kind == GateKind::Fork {
                next.push(Source::Half(g, 0));
                next.push(Source::Half(g, 1));
            } else {
                next.push(Source::Gate(g));
            }
        }
        for (k, &s) in vars.iter().enumerate() {
            if consumer_level(s) > l {
                gates.push(SliceGate { kind: GateKind::Id, srcs: vec![k] });
                next.push(s);
                inserted += 1;
            }
        }
        slices.push(Slice { inputs: vars.len(), gates });
        vars = next;
    }
    let outputs = c
        .outputs
        .iter()
        .map(|&s| vars.iter().position(|&v| v == s).expect("outputs live on the last layer"))
        .collect();
    LayeredCircuit { m: c.m, slices, outputs, inserted }
}

/// Number of leading zeros beyond the first that makes `n` new output bits
/// preserve length mod 3: `(-n) mod 3`.
pub fn pad(n: usize) -> usize {
    (3 - n % 3) % 3
}

/// Contents of one position of the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Zero,
    Var(usize),
}

/// Tracks the region while emitting tokens in application order.
struct Emitter {
    slots: Vec<Slot>,
    applied: Vec<GenToken>,
    fresh: usize,
}

impl Emitter {
    fn new(m: usize) -> Emitter {
        let mut slots = vec![Slot::Zero];
        slots.extend((0..m).map(Slot::Var));
        Emitter { slots, applied: Vec::new(), fresh: m }
    }

    fn zeros(&self) -> usize {
        self.slots.iter().take_while(|s| **s == Slot::Zero).count()
    }

    fn pos(&self, v: usize) -> usize {
        self.slots.iter().position(|s| *s == Slot::Var(v)).expect("variable in region")
    }

    fn tau(&mut self, i: usize) {
        assert!(i + 1 < self.slots.len(), "transposition reaches outside the region");
        self.slots.swap(i, i + 1);
        self.applied.push(GenToken::tau(i));
    }

    /// `τ_{i,j}` as adjacent transpositions.
    fn swap(&mut self, i: usize, j: usize) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if i == j {
            return;
        }
        for k in i..j {
            self.tau(k);
        }
        for k in (i..j - 1).rev() {
            self.tau(k);
        }
    }

    fn f4(&mut self) {
        assert_eq!(self.slots[0], Slot::Zero);
        self.slots.splice(0..0, [Slot::Zero; 3]);
        self.applied.push(GenToken::F4);
    }

    /// Writes `op(x_a, x_b)` into position 0 and moves it behind every
    /// variable. Unary gates pass `b = None` and read a zero instead.
    fn gate(&mut self, op: GenToken, negate: bool, a: usize, b: Option<usize>) -> usize {
        let mut swaps = Vec::new();
        match b {
            Some(b) => {
                let pa = self.pos(a);
                swaps.push((1, pa));
                self.swap(1, pa);
                let pb = self.pos(b);
                swaps.push((2, pb));
                self.swap(2, pb);
            }
            None => {
                debug_assert_eq!(self.slots[1], Slot::Zero);
                let pa = self.pos(a);
                swaps.push((2, pa));
                self.swap(2, pa);
            }
        }
        assert_eq!(self.slots[0], Slot::Zero);
        self.applied.push(op);
        if negate {
            self.applied.push(GenToken::NOT);
        }
        for &(i, j) in swaps.iter().rev() {
            self.swap(i, j);
        }
        let v = self.fresh;
        self.fresh += 1;
        self.slots[0] = Slot::Var(v);
        for k in 0..self.slots.len() - 1 {
            self.tau(k);
        }
        v
    }

    /// Emits one slice. `ins` are the variable ids of the slice inputs;
    /// returns the ids of its outputs.
    fn slice(&mut self, s: &Slice, ins: &[usize]) -> Vec<usize> {
        let mut outs = Vec::with_capacity(s.output_count());
        for g in &s.gates {
            let k = g.kind.fan_out();
            if self.zeros() <= k {
                self.f4();
            }
            let a = ins[g.srcs[0]];
            match g.kind {
                GateKind::And | GateKind::Or => {
                    let op = if g.kind == GateKind::And { GenToken::AND } else { GenToken::OR };
                    outs.push(self.gate(op, false, a, Some(ins[g.srcs[1]])));
                }
                GateKind::Not => outs.push(self.gate(GenToken::OR, true, a, None)),
                GateKind::Id => outs.push(self.gate(GenToken::OR, false, a, None)),
                GateKind::Fork => {
                    outs.push(self.gate(GenToken::OR, false, a, None));
                    outs.push(self.gate(GenToken::OR, false, a, None));
                }
            }
        }
        outs
    }

    /// Bubble-sorts the region into `target`. Zeros are interchangeable.
    fn permute_to(&mut self, target: &[Slot]) {
        assert_eq!(target.len(), self.slots.len());
        for (i, want) in target.iter().enumerate() {
            let j = (i..self.slots.len()).find(|&j| self.slots[j] == *want).expect("same multiset");
            for k in (i..j).rev() {
                self.tau(k);
            }
        }
    }

    fn finish(self) -> GenWord {
        GenWord(self.applied.into_iter().rev().collect())
    }
}

/// Compiles a depth-one circuit into a word mapping `0x` to
/// `0^{1+pad(n)} f(x) x`.
pub fn compile_slice(s: &Slice) -> GenWord {
    let mut e = Emitter::new(s.inputs);
    let ins: Vec<usize> = (0..s.inputs).collect();
    let outs = e.slice(s, &ins);
    let mut target = vec![Slot::Zero; e.zeros()];
    target.extend(outs.iter().chain(ins.iter()).map(|&v| Slot::Var(v)));
    e.permute_to(&target);
    e.finish()
}

/// Compiles a circuit into a word that simulates it: on `0·x·s·#` with
/// `|x| = m` it yields `0^{1+pad(n)}·f(x)·x·s·#`.
pub fn compile(c: &Circuit) -> GenWord {
    compile_layered(&strictify(c))
}

pub fn compile_layered(lc: &LayeredCircuit) -> GenWord {
    let m = lc.m;
    let mut e = Emitter::new(m);
    let mut ins: Vec<usize> = (0..m).collect();
    let depth = lc.slices.len();
    let mut before_last = GenWord::default();
    let mut layout_before_last = e.slots.clone();
    for (l, s) in lc.slices.iter().enumerate() {
        if l + 1 == depth {
            before_last = GenWord(e.applied.iter().rev().copied().collect());
            layout_before_last = e.slots.clone();
        }
        ins = e.slice(s, &ins);
    }
    let outs: Vec<usize> = lc.outputs.iter().map(|&k| ins[k]).collect();

    // Park the outputs behind the layout the earlier slices produced,
    // together with the surplus zeros.
    let z_before = layout_before_last.iter().take_while(|s| **s == Slot::Zero).count();
    if e.zeros() < z_before {
        e.f4();
    }
    let surplus = e.zeros() - z_before;
    let mut target = layout_before_last.clone();
    target.extend(outs.iter().map(|&v| Slot::Var(v)));
    target.extend(core::iter::repeat_n(Slot::Zero, surplus));
    e.permute_to(&target);

    // Replay the earlier slices backwards.
    let undo = before_last.inverse();
    let mut slots = vec![Slot::Zero];
    slots.extend((0..m).map(Slot::Var));
    slots.extend(outs.iter().map(|&v| Slot::Var(v)));
    slots.extend(core::iter::repeat_n(Slot::Zero, surplus));
    e.slots = slots;
    e.applied.extend(undo.0.iter().rev().copied());

    let mut target = vec![Slot::Zero; 1 + surplus];
    target.extend(outs.iter().map(|&v| Slot::Var(v)));
    target.extend((0..m).map(Slot::Var));
    e.permute_to(&target);
    debug_assert_eq!(surplus, pad(outs.len()));
    e.finish()
}

/// Adds pre- and post-processing so that inputs shorter than `m` bits are
/// also mapped, in a way that depends only on the function computed.
///
/// The pre-processing applies `φ_{0f,4}` `⌈m/3⌉` times and rotates the new
/// zeros behind `x`. A short input `0·x₁…x_k·#` thus reaches the body with
/// at least `1+m` bits and a leading `0`, where the body acts as the
/// simulation of `f` itself. The post-processing undoes the padding.
pub fn compile_strong(c: &Circuit) -> GenWord {
    let m = c.inputs();
    let n = c.output_count();
    let p = pad(n);
    let k = m.div_ceil(3);
    let zeros = |count: usize| core::iter::repeat_n(Slot::Zero, count);

    let mut pre = Emitter::new(m);
    for _ in 0..k {
        pre.f4();
    }
    let mut target = vec![Slot::Zero];
    target.extend((0..m).map(Slot::Var));
    target.extend(zeros(3 * k));
    pre.permute_to(&target);

    let outs = (m..m + n).map(Slot::Var);
    let mut slots: Vec<Slot> = zeros(1 + p).chain(outs.clone()).collect();
    slots.extend((0..m).map(Slot::Var));
    slots.extend(zeros(3 * k));
    let mut post = Emitter { slots, applied: Vec::new(), fresh: m + n };
    let mut target: Vec<Slot> = zeros(1 + 3 * k + p).chain(outs).collect();
    target.extend((0..m).map(Slot::Var));
    post.permute_to(&target);
    post.applied.extend(core::iter::repeat_n(GenToken::F4.inv(), k));

    post.finish().then_after(&compile(c)).then_after(&pre.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{Letter, Word};
    use crate::genwords::eval;
    use alloc::string::ToString;

    fn gate(id: &str, kind: GateKind, srcs: &[Source]) -> Gate {
        Gate { id: id.to_string(), kind, srcs: srcs.to_vec() }
    }

    fn or2() -> Circuit {
        Circuit::new(2, vec![gate("g1", GateKind::Or, &[Source::Input(0), Source::Input(1)])], vec![
            Source::Gate(0),
        ])
        .unwrap()
    }

    fn bits_word(bits: &[bool]) -> Vec<Letter> {
        bits.iter().map(|&b| Letter::bit(b)).collect()
    }

    fn check_simulation(c: &Circuit, w: &GenWord) {
        let m = c.inputs();
        let p = pad(c.output_count());
        for k in 0..1usize << m {
            let x: Vec<bool> = (0..m).map(|j| k >> j & 1 == 1).collect();
            let fx = c.eval(&x).unwrap();
            for s in [&[][..], &[Letter::Zero][..], &[Letter::One, Letter::One][..]] {
                let mut input = vec![Letter::Zero];
                input.extend(bits_word(&x));
                input.extend_from_slice(s);
                input.push(Letter::Hash);
                let mut want = vec![Letter::Zero; 1 + p];
                want.extend(bits_word(&fx));
                want.extend(bits_word(&x));
                want.extend_from_slice(s);
                want.push(Letter::Hash);
                assert_eq!(eval(w, &input), Some(Word::from_letters(want)), "{c}");
            }
        }
    }

    #[test]
    fn construction_and_size() {
        assert_eq!(or2().size(), 3);
        let wire = Circuit::new(1, vec![], vec![Source::Input(0)]).unwrap();
        assert_eq!(wire.size(), 1);
        let reuse = Circuit::new(
            1,
            vec![gate("a", GateKind::Not, &[Source::Input(0)]), gate("b", GateKind::Not, &[Source::Input(0)])],
            vec![Source::Gate(0), Source::Gate(1)],
        );
        assert!(matches!(reuse, Err(CircuitError::Fanout(_, 2))));
        let cyc = Circuit::new(
            1,
            vec![
                gate("a", GateKind::And, &[Source::Input(0), Source::Gate(1)]),
                gate("b", GateKind::Fork, &[Source::Gate(0)]),
            ],
            vec![Source::Half(1, 0)],
        );
        // b.1 is unused, but the cycle is found first only if fan-out passes;
        // fan-out reports the unused half.
        assert!(cyc.is_err());
        let cyc = Circuit::new(
            1,
            vec![
                gate("a", GateKind::And, &[Source::Input(0), Source::Half(1, 1)]),
                gate("b", GateKind::Fork, &[Source::Gate(0)]),
            ],
            vec![Source::Half(1, 0)],
        );
        assert_eq!(cyc, Err(CircuitError::Cycle("a".to_string())));
        assert_eq!(Circuit::new(0, vec![], vec![]), Err(CircuitError::Empty));
    }

    #[test]
    fn evaluation() {
        assert_eq!(or2().eval(&[false, true]), Ok(vec![true]));
        let not = Circuit::new(1, vec![gate("n", GateKind::Not, &[Source::Input(0)])], vec![Source::Gate(0)])
            .unwrap();
        assert_eq!(not.eval(&[true]), Ok(vec![false]));
        let fork = Circuit::new(1, vec![gate("f", GateKind::Fork, &[Source::Input(0)])], vec![
            Source::Half(0, 0),
            Source::Half(0, 1),
        ])
        .unwrap();
        assert_eq!(fork.eval(&[true]), Ok(vec![true, true]));
        assert_eq!(fork.eval(&[]), Err(CircuitError::Arity { expected: 1, got: 0 }));
    }

    #[test]
    fn strictification() {
        let lc = strictify(&or2());
        assert_eq!(lc.inserted, 0);
        assert_eq!(lc.depth(), 1);
        let c = Circuit::new(
            2,
            vec![
                gate("n", GateKind::Not, &[Source::Input(1)]),
                gate("o", GateKind::Or, &[Source::Input(0), Source::Gate(0)]),
            ],
            vec![Source::Gate(1)],
        )
        .unwrap();
        let lc = strictify(&c);
        assert_eq!(lc.inserted, 1);
        assert_eq!(lc.depth(), 2);
        for k in 0..4 {
            let x = [k & 1 == 1, k & 2 == 2];
            assert_eq!(lc.eval(&x), c.eval(&x).unwrap());
        }
        let wire = Circuit::new(1, vec![], vec![Source::Input(0)]).unwrap();
        assert_eq!(strictify(&wire).inserted, 1);
    }

    #[test]
    fn padding() {
        assert_eq!(pad(1), 2);
        assert_eq!(pad(2), 1);
        assert_eq!(pad(3), 0);
        for n in 0..10 {
            assert_eq!((n + pad(n)) % 3, 0);
        }
    }

    #[test]
    fn single_slices() {
        let lc = strictify(&or2());
        let w = compile_slice(&lc.slices[0]);
        check_simulation(&or2(), &w);
        let fork = Circuit::new(1, vec![gate("f", GateKind::Fork, &[Source::Input(0)])], vec![
            Source::Half(0, 0),
            Source::Half(0, 1),
        ])
        .unwrap();
        let w = compile_slice(&strictify(&fork).slices[0]);
        for x in [false, true] {
            let b = Letter::bit(x);
            let input = [Letter::Zero, b, Letter::Hash];
            let out = [Letter::Zero, Letter::Zero, b, b, b, Letter::Hash];
            assert_eq!(eval(&w, &input).unwrap().letters(), &out);
        }
    }

    #[test]
    fn compile_two_layers() {
        let c = Circuit::new(
            2,
            vec![
                gate("o", GateKind::Or, &[Source::Input(0), Source::Input(1)]),
                gate("n", GateKind::Not, &[Source::Gate(0)]),
            ],
            vec![Source::Gate(1)],
        )
        .unwrap();
        check_simulation(&c, &compile(&c));
        let wire = Circuit::new(1, vec![], vec![Source::Input(0)]).unwrap();
        check_simulation(&wire, &compile(&wire));
    }

    #[test]
    fn strong_compile_on_long_and_short_inputs() {
        let c = or2();
        let w = compile_strong(&c);
        check_simulation(&c, &w);
        assert!(eval(&w, &[Letter::Hash]).is_some());
        assert!(eval(&w, &[Letter::Zero, Letter::One, Letter::Hash]).is_some());
    }
}
