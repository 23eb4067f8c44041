//! The job language.
//!
//! ```text
//! job     := stmt*
//! stmt    := ring | params | run
//! ring    := 'ring' name '=' field? '[' names ']' '/' '(' polys? ')' ';'
//! field   := 'F' digits | 'Q' | 'k'
//! params  := 'params' name '=' '(' polys ')' ';'
//! run     := 'run' command ('with' opt (',' opt)*)? ';'
//! opt     := ('n' | 'm' | 'seed') '=' integer
//! ```
//!
//! `#` starts a comment. Exactly one ring statement is allowed and it must
//! come first.

use std::fmt;

use gcmwb_core::poly::{Cursor, PolyParser, PolyRing};
use gcmwb_core::local::RingPresentation;
use gcmwb_core::{EngineError, Result};
use serde::{Deserialize, Serialize};

pub const DEFAULT_CHARACTERISTIC: u32 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Invariants,
    Graded,
    Rees,
    Suite,
    GcmTest,
}

impl Command {
    pub const ALL: [Command; 5] = [Command::Invariants, Command::Graded, Command::Rees, Command::Suite, Command::GcmTest];

    pub fn name(self) -> &'static str {
        match self {
            Command::Invariants => "invariants",
            Command::Graded => "graded",
            Command::Rees => "rees",
            Command::Suite => "suite",
            Command::GcmTest => "gcm-test",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSpec {
    pub command: Command,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsSpec {
    pub name: String,
    pub elements: Vec<String>,
}

/// A parsed job. Polynomials are stored in the canonical printed form of
/// the ambient ring, so printing and reparsing is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub ring_name: String,
    /// 0 means the rationals.
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub params: Vec<ParamsSpec>,
    pub runs: Vec<RunSpec>,
}

impl JobSpec {
    pub fn presentation(&self) -> Result<RingPresentation> {
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        RingPresentation::parse(self.characteristic, &names, &gens)
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.characteristic {
            0 => "Q".to_string(),
            p => format!("F{p}"),
        };
        writeln!(
            f,
            "ring {} = {field}[{}]/({});",
            self.ring_name,
            self.variables.join(","),
            self.generators.join(", ")
        )?;
        for p in &self.params {
            writeln!(f, "params {} = ({});", p.name, p.elements.join(", "))?;
        }
        for r in &self.runs {
            write!(f, "run {}", r.command.name())?;
            let mut opts = Vec::new();
            if let Some(n) = r.n {
                opts.push(format!("n={n}"));
            }
            if let Some(m) = r.m {
                opts.push(format!("m={m}"));
            }
            if let Some(s) = r.seed {
                opts.push(format!("seed={s}"));
            }
            if !opts.is_empty() {
                write!(f, " with {}", opts.join(", "))?;
            }
            writeln!(f, ";")?;
        }
        Ok(())
    }
}

fn keyword(c: &mut Cursor, word: &str) -> Result<()> {
    c.peek();
    let at = c.position();
    match c.ident() {
        Some(w) if w == word => Ok(()),
        Some(w) => Err(err_at(at, format!("expected '{word}', found '{w}'"))),
        None => Err(c.unexpected(&format!("expected '{word}'"))),
    }
}

fn name(c: &mut Cursor, what: &str) -> Result<String> {
    c.ident().ok_or_else(|| c.unexpected(&format!("expected {what}")))
}

fn err_at((line, column): (usize, usize), message: impl Into<String>) -> EngineError {
    EngineError::Parse { line, column, message: message.into() }
}

/// Parses `(p1, ..., pk)`; returns the polynomials in canonical text with
/// the position of each.
fn poly_list(c: &mut Cursor, ring: &PolyRing, allow_empty: bool) -> Result<Vec<(String, (usize, usize))>> {
    c.expect(b'(')?;
    let mut out = Vec::new();
    if c.eat(b')') {
        if allow_empty {
            return Ok(out);
        }
        return Err(c.error("expected at least one polynomial"));
    }
    let parser = PolyParser::new(ring);
    loop {
        c.peek();
        let at = c.position();
        let p = parser.expr(c)?;
        out.push((ring.display(&p), at));
        if c.eat(b')') {
            return Ok(out);
        }
        if !c.eat(b',') {
            return Err(c.unexpected("expected ',' or ')'"));
        }
    }
}

fn field(c: &mut Cursor) -> Result<u32> {
    if c.peek() == Some(b'[') {
        return Ok(DEFAULT_CHARACTERISTIC);
    }
    let at = c.position();
    let word = name(c, "a field (F<p>, Q or k)")?;
    match word.as_str() {
        "Q" | "F0" => Ok(0),
        "k" => Ok(DEFAULT_CHARACTERISTIC),
        w if w.starts_with('F') && w.len() > 1 && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
            let p: u64 = w[1..].parse().map_err(|_| err_at(at, "characteristic must be prime (too large)"))?;
            if p > u32::MAX as u64 || gcmwb_core::poly::Field::with_characteristic(p).is_err() {
                return Err(err_at(at, format!("characteristic must be prime (got {p})")));
            }
            Ok(p as u32)
        }
        w => Err(err_at(at, format!("expected a field (F<p>, Q or k), found '{w}'"))),
    }
}

fn ring_stmt(c: &mut Cursor) -> Result<(JobSpec, PolyRing)> {
    keyword(c, "ring")?;
    let ring_name = name(c, "a ring name")?;
    c.expect(b'=')?;
    let characteristic = field(c)?;
    c.expect(b'[')?;
    let mut variables: Vec<String> = Vec::new();
    loop {
        c.peek();
        let at = c.position();
        let v = name(c, "a variable name")?;
        if variables.contains(&v) {
            return Err(err_at(at, format!("variable '{v}' declared twice")));
        }
        variables.push(v);
        if c.eat(b']') {
            break;
        }
        if !c.eat(b',') {
            return Err(c.unexpected("expected ',' or ']'"));
        }
    }
    c.expect(b'/')?;
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    let probe = RingPresentation::parse(characteristic, &names, &[])?;
    let ring = probe.ring().clone();
    let gens = poly_list(c, &ring, true)?;
    for (g, at) in &gens {
        let p = ring.parse(g)?;
        if !ring.constant_term(&p).is_zero() {
            return Err(err_at(*at, format!("generator has nonzero constant term: {g}")));
        }
    }
    c.expect(b';')?;
    let generators = gens.into_iter().map(|(g, _)| g).filter(|g| g != "0").collect();
    let spec = JobSpec { ring_name, characteristic, variables, generators, params: vec![], runs: vec![] };
    Ok((spec, ring))
}

fn run_stmt(c: &mut Cursor) -> Result<RunSpec> {
    c.peek();
    let at = c.position();
    let mut word = name(c, "a command")?;
    if word == "gcm" && c.eat(b'-') {
        word.push('-');
        word.push_str(&name(c, "a command")?);
    }
    let command = Command::ALL
        .into_iter()
        .find(|k| k.name() == word)
        .ok_or_else(|| err_at(at, format!("unknown command '{word}' (expected invariants, graded, rees, suite or gcm-test)")))?;
    let mut run = RunSpec { command, n: None, m: None, seed: None };
    c.peek();
    let at = c.position();
    if let Some(w) = c.ident() {
        if w != "with" {
            return Err(err_at(at, format!("expected 'with' or ';', found '{w}'")));
        }
        loop {
            c.peek();
            let at = c.position();
            let key = name(c, "n, m or seed")?;
            c.expect(b'=')?;
            let v = c.integer()?;
            let small = || u32::try_from(v).map_err(|_| err_at(at, format!("{key} = {v} is too large")));
            let slot_taken = match key.as_str() {
                "n" => run.n.replace(small()?).is_some(),
                "m" => run.m.replace(small()?).is_some(),
                "seed" => run.seed.replace(v).is_some(),
                other => return Err(err_at(at, format!("unknown option '{other}' (expected n, m or seed)"))),
            };
            if slot_taken {
                return Err(err_at(at, format!("option '{key}' given twice")));
            }
            if !c.eat(b',') {
                break;
            }
        }
    }
    c.expect(b';')?;
    Ok(run)
}

/// Parses a job. Errors carry the line and column of the offending token.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let mut c = Cursor::new(text);
    if c.at_end() {
        return Err(c.error("empty job: expected 'ring'"));
    }
    let (mut spec, ring) = ring_stmt(&mut c)?;
    while !c.at_end() {
        let at = c.position();
        match c.ident().as_deref() {
            Some("params") => {
                c.peek();
                let at = c.position();
                let pname = name(&mut c, "a parameter list name")?;
                if spec.params.iter().any(|p| p.name == pname) {
                    return Err(err_at(at, format!("parameter list '{pname}' declared twice")));
                }
                c.expect(b'=')?;
                let elements = poly_list(&mut c, &ring, false)?.into_iter().map(|(p, _)| p).collect();
                c.expect(b';')?;
                spec.params.push(ParamsSpec { name: pname, elements });
            }
            Some("run") => spec.runs.push(run_stmt(&mut c)?),
            Some("ring") => return Err(err_at(at, "only one ring statement is allowed")),
            Some(w) => return Err(err_at(at, format!("expected 'params' or 'run', found '{w}'"))),
            None => return Err(c.unexpected("expected 'params' or 'run'")),
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_job() {
        let spec = parse_job("ring A = F101[x,y]/(x^2, x*y^3); params Q = (y); run suite;").unwrap();
        assert_eq!(spec.characteristic, 101);
        assert_eq!(spec.generators, ["x^2", "x*y^3"]);
        assert_eq!(spec.params[0].elements, ["y"]);
        assert_eq!(spec.runs[0].command, Command::Suite);
    }

    #[test]
    fn semantic_errors() {
        let e = parse_job("ring A = F101[x,y]/(x - 1);").unwrap_err().to_string();
        assert!(e.contains("generator has nonzero constant term"), "{e}");
        let e = parse_job("ring A = F4[x]/();").unwrap_err().to_string();
        assert!(e.contains("characteristic must be prime"), "{e}");
        let e = parse_job("ring A = [x]/(y);").unwrap_err().to_string();
        assert!(e.contains("unknown variable 'y'") && e.contains("1:15"), "{e}");
    }

    #[test]
    fn defaults_and_options() {
        let spec = parse_job("ring B = [x, y]/();\nrun gcm-test with n=3, seed=9;").unwrap();
        assert_eq!(spec.characteristic, DEFAULT_CHARACTERISTIC);
        assert!(spec.generators.is_empty());
        assert_eq!(spec.runs[0], RunSpec { command: Command::GcmTest, n: Some(3), m: None, seed: Some(9) });
        assert_eq!(parse_job("ring B = Q[x]/(x^2);").unwrap().characteristic, 0);
    }

    #[test]
    fn positioned_syntax_errors() {
        match parse_job("ring A = F101[x,y]/(x^2);\nrun suite with q=1;") {
            Err(EngineError::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 16));
                assert!(message.contains("unknown option"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        match parse_job("ring A = F101[x,y]/(x^2)") {
            Err(EngineError::Parse { line, column, message }) => {
                assert_eq!((line, column), (1, 25));
                assert!(message.contains("expected ';'"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }
}
