//! Text formats: circuits (`.ckt`), generator words (`.gw`), tables,
//! generator sets, factorizations and word-problem verdicts.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;
use thompson::circuits::{Circuit, CircuitError, Gate, GateKind, Source};
use thompson::genwords::{sigma_word, GenKind, GenToken, GenWord};
use thompson::presentation::{GeneratorSet, PresError};
use thompson::table::TableError;
use thompson::wordproblem::Verdict;
use thompson::{GroupTag, Table, Word};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Generators(#[from] PresError),
}

fn syntax(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, reason: reason.into() }
}

/// Lines that carry content, numbered from 1, with `#` comments and blank
/// lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_kind(s: &str) -> Option<GateKind> {
    match s.to_ascii_uppercase().as_str() {
        "NOT" => Some(GateKind::Not),
        "AND" => Some(GateKind::And),
        "OR" => Some(GateKind::Or),
        "FORK" => Some(GateKind::Fork),
        "ID" => Some(GateKind::Id),
        _ => None,
    }
}

/// Parses the line-based `.ckt` format. Gates may be referenced before the
/// line that defines them.
pub fn parse_circuit(text: &str) -> Result<Circuit, FormatError> {
    let mut inputs: Option<usize> = None;
    let mut raw_gates: Vec<(usize, String, GateKind, Vec<String>)> = Vec::new();
    let mut raw_outputs: Option<(usize, Vec<String>)> = None;
    for (line, l) in content_lines(text) {
        let mut parts = l.split_whitespace();
        match parts.next() {
            Some("inputs") => {
                let m = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(line, "expected `inputs <m>`"))?;
                if inputs.replace(m).is_some() {
                    return Err(syntax(line, "duplicate `inputs` line"));
                }
            }
            Some("gate") => {
                let id = parts.next().ok_or_else(|| syntax(line, "missing gate id"))?;
                let kind = parts
                    .next()
                    .and_then(parse_kind)
                    .ok_or_else(|| syntax(line, "expected NOT, AND, OR, FORK or ID"))?;
                if id.starts_with("in.") || id.contains('.') {
                    return Err(syntax(line, format!("invalid gate id `{id}`")));
                }
                raw_gates.push((line, id.to_string(), kind, parts.map(str::to_string).collect()));
            }
            Some("outputs") => {
                if raw_outputs.is_some() {
                    return Err(syntax(line, "duplicate `outputs` line"));
                }
                raw_outputs = Some((line, parts.map(str::to_string).collect()));
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    let m = inputs.ok_or_else(|| syntax(0, "missing `inputs` line"))?;
    let (out_line, outs) = raw_outputs.ok_or_else(|| syntax(0, "missing `outputs` line"))?;
    let mut ids: HashMap<&str, (usize, GateKind)> = HashMap::new();
    for (k, (line, id, kind, _)) in raw_gates.iter().enumerate() {
        if ids.insert(id.as_str(), (k, *kind)).is_some() {
            return Err(syntax(*line, format!("duplicate gate id `{id}`")));
        }
    }
    let source = |line: usize, s: &str| -> Result<Source, FormatError> {
        let bad = || syntax(line, format!("unknown source `{s}`"));
        if let Some(k) = s.strip_prefix("in.") {
            let k: usize = k.parse().map_err(|_| bad())?;
            return if k < m { Ok(Source::Input(k)) } else { Err(bad()) };
        }
        if let Some((id, half)) = s.split_once('.') {
            let (g, kind) = *ids.get(id).ok_or_else(bad)?;
            let h: u8 = match half {
                "0" => 0,
                "1" => 1,
                _ => return Err(bad()),
            };
            return if kind == GateKind::Fork { Ok(Source::Half(g, h)) } else { Err(bad()) };
        }
        match ids.get(s) {
            Some(&(g, kind)) if kind != GateKind::Fork => Ok(Source::Gate(g)),
            Some(_) => Err(syntax(line, format!("FORK `{s}` must be used as `{s}.0` or `{s}.1`"))),
            None => Err(bad()),
        }
    };
    let mut gates = Vec::with_capacity(raw_gates.len());
    for (line, id, kind, srcs) in &raw_gates {
        let srcs = srcs.iter().map(|s| source(*line, s)).collect::<Result<Vec<_>, _>>()?;
        gates.push(Gate { id: id.clone(), kind: *kind, srcs });
    }
    let outputs = outs.iter().map(|s| source(out_line, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Circuit::new(m, gates, outputs)?)
}

/// Writes a circuit in the `.ckt` format.
pub fn write_circuit(c: &Circuit) -> String {
    c.to_string()
}

fn parse_token(line: usize, tok: &str) -> Result<Vec<GenToken>, FormatError> {
    let (body, inverse) = match tok.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let bad = || syntax(line, format!("unknown token `{tok}`"));
    let number = |s: &str| -> Result<usize, FormatError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    let kind = match body {
        "not" => GenKind::Not,
        "or" => GenKind::Or,
        "and" => GenKind::And,
        "f4" => GenKind::F4,
        "K" => GenKind::K321,
        "k0" | "k1" | "k2" | "k3" => GenKind::K(body.as_bytes()[1] - b'0'),
        _ => {
            if let Some(rest) = body.strip_prefix('s') {
                let (i, j) = rest.split_once('_').ok_or_else(bad)?;
                let word = sigma_word(number(i)?, number(j)?).map_err(|e| syntax(line, e.to_string()))?;
                let word = if inverse { word.inverse() } else { word };
                return Ok(word.0);
            }
            let i = body.strip_prefix('t').ok_or_else(bad)?;
            GenKind::Tau(number(i)?)
        }
    };
    Ok(vec![GenToken { kind, inverse }])
}

/// Parses the `.gw` format. The leftmost token is applied last; `s<i>_<j>`
/// expands to its transposition word.
pub fn parse_genword(text: &str) -> Result<GenWord, FormatError> {
    let mut tokens = Vec::new();
    for (line, l) in content_lines(text) {
        for tok in l.split_whitespace() {
            tokens.extend(parse_token(line, tok)?);
        }
    }
    Ok(GenWord(tokens))
}

/// Writes a word on one line, followed by a newline.
pub fn write_genword(w: &GenWord) -> String {
    format!("{w}\n")
}

pub fn parse_table(text: &str) -> Result<Table, FormatError> {
    Ok(text.parse()?)
}

pub fn write_table(t: &Table) -> String {
    t.to_string()
}

/// Writes a generator set as a header followed by one `gen <id>` block per
/// member in id order.
pub fn write_generator_set(gens: &GeneratorSet) -> String {
    let mut out = String::new();
    writeln!(out, "tag {}", gens.tag).unwrap();
    writeln!(out, "bound {}", gens.bound).unwrap();
    for (id, t) in gens.members().iter().enumerate() {
        let inv = gens.inverse_id(id).expect("every member has an inverse");
        writeln!(out, "gen {id} inverse {inv}").unwrap();
        out.push_str(&t.to_string());
    }
    out
}

/// Reads a generator set written by [`write_generator_set`]. Ids must be
/// consecutive and the set closed under inverses.
pub fn parse_generator_set(text: &str) -> Result<GeneratorSet, FormatError> {
    let mut tag: Option<GroupTag> = None;
    let mut bound: Option<usize> = None;
    let mut blocks: Vec<(usize, usize, String)> = Vec::new();
    for (line, l) in text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())) {
        if l.is_empty() || l.starts_with("//") {
            continue;
        }
        let mut parts = l.split_whitespace();
        match parts.next() {
            Some("tag") => {
                let t = parts.next().and_then(|s| s.parse().ok());
                tag = Some(t.ok_or_else(|| syntax(line, "unknown group tag"))?);
            }
            Some("bound") => {
                let b = parts.next().and_then(|s| s.parse().ok());
                bound = Some(b.ok_or_else(|| syntax(line, "expected `bound <n>`"))?);
            }
            Some("gen") => {
                let id: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(line, "expected `gen <id> inverse <id>`"))?;
                if id != blocks.len() {
                    return Err(syntax(line, format!("expected generator id {}", blocks.len())));
                }
                let inv = match (parts.next(), parts.next().and_then(|s| s.parse().ok())) {
                    (Some("inverse"), Some(j)) => j,
                    _ => return Err(syntax(line, "expected `gen <id> inverse <id>`")),
                };
                blocks.push((line, inv, String::new()));
            }
            Some(_) => {
                let (_, _, body) = blocks.last_mut().ok_or_else(|| syntax(line, "table row before `gen`"))?;
                body.push_str(l);
                body.push('\n');
            }
            None => {}
        }
    }
    let tag = tag.ok_or_else(|| syntax(0, "missing `tag` line"))?;
    let bound = bound.ok_or_else(|| syntax(0, "missing `bound` line"))?;
    let mut members = Vec::with_capacity(blocks.len());
    for (line, _, body) in &blocks {
        members.push(body.parse::<Table>().map_err(|e| syntax(*line, e.to_string()))?);
    }
    let gens = GeneratorSet::from_members(tag, bound, members)?;
    if gens.len() != blocks.len() {
        return Err(syntax(0, "generator set is not closed under inverses"));
    }
    for (id, (line, inv, _)) in blocks.iter().enumerate() {
        if gens.inverse_id(id) != Some(*inv) {
            return Err(syntax(*line, format!("generator {id} does not have inverse {inv}")));
        }
    }
    Ok(gens)
}

/// Writes a factorization as one line of generator ids, leftmost applied
/// last.
pub fn write_factorization(ids: &[usize]) -> String {
    let parts: Vec<String> = ids.iter().map(usize::to_string).collect();
    format!("{}\n", parts.join(" "))
}

pub fn parse_factorization(text: &str) -> Result<Vec<usize>, FormatError> {
    let mut ids = Vec::new();
    for (line, l) in content_lines(text) {
        for tok in l.split_whitespace() {
            ids.push(tok.parse().map_err(|_| syntax(line, format!("bad generator id `{tok}`")))?);
        }
    }
    Ok(ids)
}

pub fn write_verdict(v: &Verdict) -> String {
    format!("{v}\n")
}

pub fn parse_verdict(text: &str) -> Result<Verdict, FormatError> {
    let l = text.trim();
    let bad = || syntax(1, format!("unknown verdict `{l}`"));
    if l == "identity-proven" {
        return Ok(Verdict::IdentityProven);
    }
    if let Some(x) = l.strip_prefix("not-identity ") {
        return Ok(Verdict::NotIdentity(Word::parse(x).map_err(|_| bad())?));
    }
    if let Some(n) = l.strip_prefix("identity-up-to ") {
        return Ok(Verdict::IdentityUpTo(n.trim().parse().map_err(|_| bad())?));
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use thompson::genwords::eval;
    use thompson::presentation::enumerate_generators;

    const HALF_ADDER: &str = "\
# sum and carry of two bits
inputs 2
gate fa FORK in.0
gate fb FORK in.1
gate n1 NOT fa.1
gate n2 NOT fb.1
gate l AND fa.0 n2
gate r AND n1 fb.0
gate s OR l r
outputs s
";

    #[test]
    fn circuit_round_trip() {
        let c = parse_circuit(HALF_ADDER).unwrap();
        assert_eq!(c.eval(&[true, false]).unwrap(), vec![true]);
        assert_eq!(c.eval(&[true, true]).unwrap(), vec![false]);
        assert_eq!(parse_circuit(&write_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn circuit_errors_name_the_line() {
        let err = parse_circuit("inputs 1\ngate a NAND in.0\noutputs a\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2"), "{err}");
        assert!(parse_circuit("inputs 1\noutputs in.1\n").is_err());
        assert!(parse_circuit("inputs 2\noutputs in.0\n").is_err());
        assert!(parse_circuit("inputs 1\ngate f FORK in.0\noutputs f\n").is_err());
        assert!(parse_circuit("inputs 1\ngate a NOT b\ngate b NOT a\noutputs in.0\n").is_err());
    }

    #[test]
    fn genword_tokens() {
        let w = parse_genword("# comment\nnot or' t12\nK k0' f4\n").unwrap();
        assert_eq!(w.to_string(), "not or' t12 K k0' f4");
        assert_eq!(parse_genword(&write_genword(&w)).unwrap(), w);
        let s = parse_genword("s0_3").unwrap();
        assert_eq!(eval(&s, &Word::parse("0111#").unwrap()), Word::parse("1110#").ok());
        let si = parse_genword("s0_3'").unwrap();
        assert_eq!(si, s.inverse());
        assert!(parse_genword("t").is_err());
        assert!(parse_genword("k4").is_err());
        assert!(parse_genword("s3_1").is_err());
    }

    #[test]
    fn generator_set_round_trip() {
        let gens = enumerate_generators(GroupTag::G31_01Sharp, 5).unwrap();
        let text = write_generator_set(&gens);
        let back = parse_generator_set(&text).unwrap();
        assert_eq!(back.members(), gens.members());
        assert_eq!(back.tag, gens.tag);
        let broken = text.replacen("inverse 0", "inverse 1", 1);
        assert!(parse_generator_set(&broken).is_err());
    }

    #[test]
    fn verdicts_and_factorizations() {
        for v in [Verdict::IdentityProven, Verdict::NotIdentity(Word::parse("01#").unwrap()), Verdict::IdentityUpTo(21)] {
            assert_eq!(parse_verdict(&write_verdict(&v)).unwrap(), v);
        }
        assert!(parse_verdict("maybe").is_err());
        assert_eq!(parse_factorization(&write_factorization(&[3, 0, 7])).unwrap(), vec![3, 0, 7]);
    }
}
