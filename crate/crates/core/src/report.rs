//! Command execution and the result document shared by the CLI and the C
//! interface. Field names are documented in `docs/schema.md`.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposition::{betti_decomposition, recurrence_detail};
use crate::error::{Error, Result};
use crate::formulas::{self, detect_stem, find_ci_split, CiSplit};
use crate::ideal::MonomialIdeal;
use crate::invariants::{self, ClassificationReport};
use crate::monomial::Monomial;
use crate::oracle;
use crate::parse::{parse_batch, parse_ideal_with, ParsedIdeal};
use crate::random;
use crate::taylor::{self, BettiTable, TaylorResolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Multiplicity,
    Codim,
    Classify,
    Betti,
    Taylor,
    Diagram,
    Verify,
    Regularity,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Multiplicity,
        Command::Codim,
        Command::Classify,
        Command::Betti,
        Command::Taylor,
        Command::Diagram,
        Command::Verify,
        Command::Regularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Multiplicity => "multiplicity",
            Command::Codim => "codim",
            Command::Classify => "classify",
            Command::Betti => "betti",
            Command::Taylor => "taylor",
            Command::Diagram => "diagram",
            Command::Verify => "verify",
            Command::Regularity => "regularity",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub check: bool,
    /// Forces `multiplicity` to use this method instead of choosing one.
    pub method: Option<String>,
}

/// Names of the multiplicity methods, as they appear in documents.
pub mod method {
    pub const CODIM1: &str = "codim1";
    pub const CI: &str = "complete_intersection";
    pub const STEM: &str = "stem";
    pub const QUADRATIC: &str = "quadratic_dominant";
    pub const ACI: &str = "aci";
    pub const STRUCTURAL: &str = "structural";
    pub const RECURRENCE: &str = "recurrence";
    pub const PS: &str = "ps";
    pub const ORACLE: &str = "oracle";
    pub const TAYLOR: &str = "taylor";
    pub const DECOMPOSITION: &str = "decomposition";

    /// Methods that compute a multiplicity.
    pub const MULTIPLICITY: [&str; 9] = [CODIM1, CI, STEM, QUADRATIC, ACI, STRUCTURAL, RECURRENCE, PS, ORACLE];
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    /// Input monomials removed by minimalization.
    pub dropped: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CrossCheck {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        ErrorRecord {
            kind: e.kind().to_string(),
            message: e.to_string(),
            exit_code: e.exit_code(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub input: Option<InputEcho>,
    pub classification: Option<Value>,
    pub result: Option<Value>,
    pub method: Option<String>,
    pub cross_checks: Vec<CrossCheck>,
    /// `None` when nothing was cross-checked.
    pub agreement: Option<bool>,
    pub timing_us: u64,
    pub error: Option<ErrorRecord>,
}

impl ResultDocument {
    fn new(command: Command) -> Self {
        ResultDocument {
            command: command.name().to_string(),
            input: None,
            classification: None,
            result: None,
            method: None,
            cross_checks: Vec::new(),
            agreement: None,
            timing_us: 0,
            error: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit_code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    /// Plain-text rendering of the same record.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(input) = &self.input {
            out.push_str(&format!("ideal: ({})\n", input.generators.join(", ")));
            if !input.dropped.is_empty() {
                out.push_str(&format!("note: dropped non-minimal {}\n", input.dropped.join(", ")));
            }
        }
        if let Some(r) = &self.result {
            match r.get("value") {
                Some(v) if r.as_object().is_some_and(|o| o.len() == 1) => {
                    out.push_str(&format!("{}: {v}\n", self.command))
                }
                _ => out.push_str(&format!(
                    "{}:\n{}\n",
                    self.command,
                    serde_json::to_string_pretty(r).expect("value serializes")
                )),
            }
        }
        if let Some(m) = &self.method {
            out.push_str(&format!("method: {m}\n"));
        }
        for c in &self.cross_checks {
            match (&c.value, &c.error) {
                (Some(v), _) => out.push_str(&format!("  {}: {v}\n", c.method)),
                (None, Some(e)) => out.push_str(&format!("  {}: error: {}\n", c.method, e.message)),
                _ => {}
            }
        }
        if let Some(a) = self.agreement {
            out.push_str(&format!("agreement: {a}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error ({}): {}\n", e.kind, e.message));
        }
        out
    }
}

fn names(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(ToString::to_string).collect()
}

fn gen_names(m: &MonomialIdeal, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| m.generator(i).to_string()).collect()
}

fn is_quadratic(m: &MonomialIdeal) -> bool {
    m.generators().iter().all(|g| g.degree() == 2)
}

/// Everything the method selection needs, computed once.
struct Facts {
    report: ClassificationReport,
    stem: Option<formulas::StemStructure>,
    split: Option<CiSplit>,
    quadratic: bool,
    /// First generator the one-generator recurrence can split off.
    pivot: Option<usize>,
}

impl Facts {
    fn of(m: &MonomialIdeal) -> Self {
        let report = invariants::classify(m);
        let stem = if report.is_dominant { detect_stem(m) } else { None };
        let split = if report.is_dominant { find_ci_split(m) } else { None };
        let quadratic = report.is_dominant && is_quadratic(m);
        let pivot = if report.is_dominant && m.len() >= 2 {
            (0..m.len()).find(|&i| m.without(i).is_ok_and(|m1| invariants::codim(&m1) == report.codim))
        } else {
            None
        };
        Facts {
            report,
            stem,
            split,
            quadratic,
            pivot,
        }
    }

    fn to_json(&self, m: &MonomialIdeal) -> Value {
        let r = &self.report;
        json!({
            "generators": m.len(),
            "codim": r.codim,
            "dominant": r.is_dominant,
            "dominant_witness": r
                .dominant_witness
                .iter()
                .map(|w| w.map(|v| m.ring().name(v).to_string()))
                .collect::<Vec<_>>(),
            "complete_intersection": r.is_ci,
            "almost_complete_intersection": r.aci_witness.map(|t| m.generator(t).to_string()),
            "codim1": r.is_codim1,
            "stem": self.stem.as_ref().map(|s| json!({
                "stems": names(&s.stems),
                "blocks": s.blocks.iter().map(|b| gen_names(m, b)).collect::<Vec<_>>(),
            })),
            "quadratic_dominant": self.quadratic,
            "ci_split": self.split.as_ref().map(|s| json!({
                "ci": gen_names(m, &s.ci),
                "free": gen_names(m, &s.free),
            })),
        })
    }

    /// Closed form chosen by `multiplicity`, cheapest first.
    fn closed_form(&self) -> &'static str {
        let r = &self.report;
        if r.is_codim1 {
            method::CODIM1
        } else if r.is_ci {
            method::CI
        } else if self.stem.is_some() {
            method::STEM
        } else if r.aci_witness.is_some() {
            method::ACI
        } else if self.split.is_some() {
            method::STRUCTURAL
        } else {
            method::PS
        }
    }

    /// Every multiplicity method whose hypotheses hold.
    fn applicable(&self) -> Vec<&'static str> {
        let r = &self.report;
        let mut out = Vec::new();
        if r.is_codim1 {
            out.push(method::CODIM1);
        }
        if r.is_ci {
            out.push(method::CI);
        }
        if self.stem.is_some() {
            out.push(method::STEM);
        }
        if self.quadratic {
            out.push(method::QUADRATIC);
        }
        if r.aci_witness.is_some() {
            out.push(method::ACI);
        }
        if self.split.is_some() {
            out.push(method::STRUCTURAL);
        }
        if self.pivot.is_some() {
            out.push(method::RECURRENCE);
        }
        out.push(method::PS);
        out.push(method::ORACLE);
        out
    }
}

fn run_method(m: &MonomialIdeal, facts: &Facts, name: &str) -> Result<u64> {
    match name {
        method::CODIM1 => formulas::e_codim1(m),
        method::CI => formulas::e_complete_intersection(m),
        method::STEM => formulas::e_stem(m),
        method::QUADRATIC => formulas::e_quadratic_dominant(m),
        method::ACI => formulas::e_aci(m),
        method::STRUCTURAL => match &facts.split {
            Some(s) => formulas::e_structural(m, s),
            None => Err(Error::Hypothesis("no complete-intersection split".into())),
        },
        method::RECURRENCE => match facts.pivot {
            Some(p) => recurrence_detail(m, p).map(|r| r.value),
            None => Err(Error::Hypothesis("no pivot admits the recurrence".into())),
        },
        method::PS => taylor::multiplicity_ps(m),
        method::ORACLE => oracle::multiplicity_associativity(m),
        other => Err(Error::Internal(format!("unknown method {other}"))),
    }
}

fn check_record(name: &str, r: &Result<u64>) -> CrossCheck {
    match r {
        Ok(v) => CrossCheck {
            method: name.to_string(),
            value: Some(json!(v)),
            error: None,
        },
        Err(e) => CrossCheck {
            method: name.to_string(),
            value: None,
            error: Some(e.into()),
        },
    }
}

/// Agreement over the values that were produced; the error to report when
/// they disagree or a method failed.
fn consensus(values: &[(&str, Result<u64>)]) -> (bool, Option<Error>) {
    let ok: Vec<u64> = values.iter().filter_map(|(_, r)| r.as_ref().ok().copied()).collect();
    let agree = ok.windows(2).all(|w| w[0] == w[1]);
    if !agree {
        let detail: Vec<String> = values
            .iter()
            .filter_map(|(n, r)| r.as_ref().ok().map(|v| format!("{n}={v}")))
            .collect();
        return (false, Some(Error::Internal(format!("methods disagree: {}", detail.join(", ")))));
    }
    let failure = values
        .iter()
        .filter_map(|(_, r)| r.as_ref().err())
        .max_by_key(|e| e.exit_code())
        .cloned();
    (true, failure)
}

fn echo(parsed: &ParsedIdeal, text: &str, line: Option<usize>) -> InputEcho {
    InputEcho {
        text: text.to_string(),
        line,
        variables: parsed.ideal.ring().names().to_vec(),
        generators: names(parsed.ideal.generators()),
        dropped: names(&parsed.dropped),
    }
}

fn betti_json(t: &BettiTable) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|((i, l), c)| json!({"hdeg": i, "mdeg": l.to_string(), "count": c}))
        .collect();
    let graded: Vec<Value> = t
        .graded()
        .iter()
        .map(|((i, d), c)| json!({"hdeg": i, "degree": d, "count": c}))
        .collect();
    let totals: Vec<u64> = (0..=t.max_hdeg()).map(|i| t.total(i)).collect();
    json!({"totals": totals, "graded": graded, "entries": entries})
}

fn taylor_json(res: &TaylorResolution) -> Result<Value> {
    let faces: Vec<Value> = res
        .faces()
        .iter()
        .map(|f| {
            let members: Vec<usize> = (0..32).filter(|i| f.members >> i & 1 == 1).collect();
            json!({"members": members, "hdeg": f.hdeg(), "mdeg": f.mdeg.to_string()})
        })
        .collect();
    Ok(json!({
        "ranks": res.ranks(),
        "minimal": taylor::is_taylor_minimal(res.ideal())?,
        "faces": faces,
    }))
}

/// Multiplicity by the cheapest applicable method, with that method's name.
pub fn multiplicity_auto(m: &MonomialIdeal) -> Result<(&'static str, u64)> {
    let facts = Facts::of(m);
    let chosen = facts.closed_form();
    run_method(m, &facts, chosen).map(|v| (chosen, v))
}

/// Executes one command against one parsed ideal.
pub fn run(command: Command, parsed: &ParsedIdeal, text: &str, line: Option<usize>, opts: &Options) -> ResultDocument {
    let start = Instant::now();
    let mut doc = ResultDocument::new(command);
    doc.input = Some(echo(parsed, text, line));
    let m = &parsed.ideal;
    let facts = Facts::of(m);
    doc.classification = Some(facts.to_json(m));
    if let Err(e) = execute(command, m, &facts, opts, &mut doc) {
        doc.error = Some((&e).into());
    }
    doc.timing_us = start.elapsed().as_micros() as u64;
    doc
}

fn execute(command: Command, m: &MonomialIdeal, facts: &Facts, opts: &Options, doc: &mut ResultDocument) -> Result<()> {
    match command {
        Command::Codim => {
            doc.result = Some(json!({"value": facts.report.codim}));
        }
        Command::Classify => {
            doc.result = doc.classification.clone();
        }
        Command::Multiplicity => {
            let chosen = match &opts.method {
                Some(name) => method::MULTIPLICITY
                    .into_iter()
                    .find(|x| x == name)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{name}`")))?,
                None => facts.closed_form(),
            };
            let value = run_method(m, facts, chosen)?;
            doc.method = Some(chosen.to_string());
            doc.result = Some(json!({"value": value}));
            if opts.check {
                let mut all = vec![(chosen, Ok(value))];
                for other in [method::PS, method::ORACLE] {
                    if other != chosen {
                        let r = run_method(m, facts, other);
                        doc.cross_checks.push(check_record(other, &r));
                        all.push((other, r));
                    }
                }
                let (agree, failure) = consensus(&all);
                doc.agreement = Some(agree);
                if let Some(e) = failure {
                    return Err(e);
                }
            }
        }
        Command::Verify => {
            let methods = facts.applicable();
            let results: Vec<(&str, Result<u64>)> = methods
                .par_iter()
                .map(|&name| (name, run_method(m, facts, name)))
                .collect();
            doc.cross_checks = results.iter().map(|(n, r)| check_record(n, r)).collect();
            let (agree, failure) = consensus(&results);
            doc.agreement = Some(agree);
            let mut table: Vec<(u64, Vec<&str>)> = Vec::new();
            for (name, r) in &results {
                if let Ok(v) = r {
                    match table.iter_mut().find(|(x, _)| x == v) {
                        Some((_, ms)) => ms.push(name),
                        None => table.push((*v, vec![name])),
                    }
                }
            }
            doc.result = Some(json!({
                "consensus": table
                    .iter()
                    .map(|(v, ms)| json!({"value": v, "methods": ms}))
                    .collect::<Vec<_>>(),
            }));
            if table.is_empty() {
                return Err(failure.unwrap_or_else(|| Error::Internal("no method produced a value".into())));
            }
            if !agree {
                return Err(failure.expect("disagreement carries an error"));
            }
            if let Some(e) = failure.filter(|e| e.exit_code() != 4) {
                return Err(e);
            }
        }
        Command::Betti => {
            let table = taylor::betti_table(m)?;
            doc.method = Some(method::TAYLOR.to_string());
            if opts.check {
                if let Some(split) = &facts.split {
                    let r = betti_decomposition(m, split);
                    let agree = r.as_ref().is_ok_and(|t| *t == table);
                    doc.cross_checks.push(CrossCheck {
                        method: method::DECOMPOSITION.to_string(),
                        value: r.as_ref().ok().map(|_| json!(agree)),
                        error: r.as_ref().err().map(Into::into),
                    });
                    doc.agreement = Some(agree);
                    r?;
                    if !agree {
                        doc.result = Some(betti_json(&table));
                        return Err(Error::Internal("Betti decomposition differs from the Taylor table".into()));
                    }
                }
            }
            doc.result = Some(betti_json(&table));
        }
        Command::Taylor => {
            let res = TaylorResolution::new(m)?;
            doc.result = Some(taylor_json(&res)?);
        }
        Command::Diagram => {
            let sets: Vec<Value> = m
                .generators()
                .iter()
                .zip(m.polar_sets())
                .map(|(g, a)| json!({"generator": g.to_string(), "labels": a.label_names(m.ring())}))
                .collect();
            doc.result = Some(json!({"sets": sets}));
        }
        Command::Regularity => {
            if !facts.report.is_dominant {
                return Err(Error::Unsupported(
                    "regularity is only available for dominant ideals".into(),
                ));
            }
            if facts.quadratic {
                let q = formulas::reg_quadratic_dominant(m);
                let t = taylor::regularity_dominant(m);
                doc.method = Some(method::QUADRATIC.to_string());
                doc.cross_checks.push(check_record(method::TAYLOR, &t));
                let all = [(method::QUADRATIC, q.clone()), (method::TAYLOR, t)];
                let (agree, failure) = consensus(&all);
                doc.agreement = Some(agree);
                if let Ok(v) = q {
                    doc.result = Some(json!({"value": v}));
                }
                if let Some(e) = failure {
                    return Err(e);
                }
            } else {
                let v = taylor::regularity_dominant(m)?;
                doc.method = Some(method::TAYLOR.to_string());
                doc.result = Some(json!({"value": v}));
            }
        }
    }
    Ok(())
}

/// Document for input that failed to parse.
pub fn parse_failure(command: Command, text: &str, line: Option<usize>, e: &Error) -> ResultDocument {
    let mut doc = ResultDocument::new(command);
    doc.input = Some(InputEcho {
        text: text.to_string(),
        line,
        variables: Vec::new(),
        generators: Vec::new(),
        dropped: Vec::new(),
    });
    doc.error = Some(e.into());
    doc
}

/// Parses and runs a single ideal.
pub fn run_text(command: Command, text: &str, vars: Option<&[String]>, opts: &Options) -> ResultDocument {
    match parse_ideal_with(text, vars) {
        Ok(p) => run(command, &p, text, None, opts),
        Err(e) => parse_failure(command, text, None, &e),
    }
}

/// One document per ideal line, in input order.
pub fn run_batch(command: Command, text: &str, vars: Option<&[String]>, opts: &Options) -> Vec<ResultDocument> {
    parse_batch(text, vars)
        .into_par_iter()
        .map(|(line_no, line, parsed)| match parsed {
            Ok(p) => run(command, &p, &line, Some(line_no), opts),
            Err(e) => parse_failure(command, &line, Some(line_no), &e),
        })
        .collect()
}

/// Shape of the ideals drawn by `verify --random`.
pub const RANDOM_SHAPE: random::Shape = random::Shape::new(8, 6, 4);

/// `verify` on `cases` seeded random ideals.
pub fn verify_random(seed: u64, cases: usize) -> Vec<ResultDocument> {
    let mut rng = random::rng(seed);
    let ideals: Vec<MonomialIdeal> = (0..cases).map(|_| random::ideal(&mut rng, RANDOM_SHAPE)).collect();
    ideals
        .into_par_iter()
        .enumerate()
        .map(|(i, m)| {
            let text = m.to_string();
            let parsed = ParsedIdeal {
                ideal: m,
                dropped: Vec::new(),
            };
            run(Command::Verify, &parsed, &text, Some(i + 1), &Options::default())
        })
        .collect()
}

/// Highest exit code across documents.
pub fn batch_exit_code(docs: &[ResultDocument]) -> i32 {
    docs.iter().map(ResultDocument::exit_code).max().unwrap_or(0)
}
