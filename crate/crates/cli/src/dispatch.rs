//! Runs a parsed job and renders its report.

use serde::{Deserialize, Serialize};

use gcmwb_core::config::EngineConfig;
use gcmwb_core::graded::{postulation, regularity_g, GradedView, RegularityCertificate};
use gcmwb_core::harness::{gcm_status, run_suite, theorem28_experiment, BoundReport, Theorem28Report, Theorem28Verdict, REPORT_VERSION};
use gcmwb_core::invariants::{invariant_ia, invariant_iq, IAEstimate, IAStatus, InvariantRecord};
use gcmwb_core::local::{make_local_ring, LocalRing, ParameterSystem};
use gcmwb_core::rees::{rees_presentation, ReesPresentation};
use gcmwb_core::report::{emit_report, ReportFormat};
use gcmwb_core::Result;

use crate::dsl::{Command, JobSpec, RunSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Default `(n_max, m_max)` grid for suites.
pub const DEFAULT_GRID: (u32, u32) = (5, 2);
/// Default prefix-power budget for `gcm-test`.
pub const DEFAULT_BUDGET: u32 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamOutcome {
    pub name: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub invariants: Option<InvariantRecord>,
    pub graded: Option<GradedView>,
    pub regularity: Option<RegularityCertificate>,
    pub rees: Option<ReesPresentation>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutput {
    pub command: Command,
    pub ring: String,
    pub seed: u64,
    pub ia: Option<IAEstimate>,
    pub params: Vec<ParamOutcome>,
    pub suite: Option<BoundReport>,
    pub experiment: Option<Theorem28Report>,
    pub verdict: Option<String>,
    pub errors: Vec<String>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobReport {
    pub version: String,
    pub job: String,
    pub runs: Vec<RunOutput>,
    pub exit_code: i32,
}

struct Context {
    ring: LocalRing,
    params: Vec<(String, ParameterSystem)>,
}

fn context(spec: &JobSpec) -> Result<Context> {
    let ring = make_local_ring(spec.presentation()?)?;
    let params = spec
        .params
        .iter()
        .map(|p| {
            let xs: Vec<&str> = p.elements.iter().map(String::as_str).collect();
            Ok((p.name.clone(), ring.parse_parameter_system(&xs)?))
        })
        .collect::<Result<_>>()?;
    Ok(Context { ring, params })
}

fn empty_run(run: &RunSpec, ring: String, seed: u64) -> RunOutput {
    RunOutput {
        command: run.command,
        ring,
        seed,
        ia: None,
        params: vec![],
        suite: None,
        experiment: None,
        verdict: None,
        errors: vec![],
        exit_code: EXIT_PASS,
    }
}

/// Runs every `run` statement of the job in order. The job exit code is
/// the worst run exit code.
pub fn dispatch(spec: &JobSpec, cfg: &EngineConfig) -> JobReport {
    let job = spec.to_string();
    let ctx = context(spec);
    let mut runs = Vec::new();
    for run in &spec.runs {
        let mut cfg = cfg.clone();
        if let Some(seed) = run.seed {
            cfg.seed = seed;
        }
        let out = match &ctx {
            Ok(ctx) => execute(ctx, run, &cfg),
            Err(e) => {
                let mut out = empty_run(run, job.lines().next().unwrap_or_default().to_string(), cfg.seed);
                out.errors.push(e.to_string());
                out.exit_code = EXIT_ERROR;
                out
            }
        };
        runs.push(out);
    }
    let exit_code = match (&ctx, runs.iter().map(|r| r.exit_code).max()) {
        (Err(_), _) => EXIT_ERROR,
        (_, Some(code)) => code,
        (_, None) => EXIT_PASS,
    };
    JobReport { version: REPORT_VERSION.to_string(), job, runs, exit_code }
}

fn execute(ctx: &Context, run: &RunSpec, cfg: &EngineConfig) -> RunOutput {
    let a = &ctx.ring;
    let mut out = empty_run(run, a.describe(), cfg.seed);
    if ctx.params.is_empty() {
        out.errors.push("no parameter list declared: add a 'params' statement".into());
        out.exit_code = EXIT_ERROR;
        return out;
    }
    let qs: Vec<ParameterSystem> = ctx.params.iter().map(|(_, q)| q.clone()).collect();
    let outcome = |i: usize| ParamOutcome {
        name: ctx.params[i].0.clone(),
        q: qs[i].display(a.ring()),
        ..Default::default()
    };
    match run.command {
        Command::Invariants => {
            let mut cfg = cfg.clone();
            if let Some(n) = run.n {
                cfg.fit_cap = n;
            }
            record(&mut out, invariant_ia(a, &qs[0], cfg.ia_n_max, &cfg));
            for i in 0..qs.len() {
                let mut o = outcome(i);
                match invariant_iq(a, &qs[i], &cfg) {
                    Ok(r) => o.invariants = Some(r),
                    Err(e) => o.error = Some(e.to_string()),
                }
                out.params.push(o);
            }
        }
        Command::Graded => {
            let mut cfg = cfg.clone();
            if let Some(n) = run.n {
                cfg.horizon = Some(n);
            }
            record(&mut out, invariant_ia(a, &qs[0], cfg.ia_n_max, &cfg));
            let ia = out.ia.as_ref().filter(|e| e.is_stabilized()).map(|e| e.value);
            for i in 0..qs.len() {
                let mut o = outcome(i);
                let r = regularity_g(a, &qs[i], ia, &cfg).and_then(|cert| {
                    let view = postulation(a, &qs[i], cert.horizon, cfg.window)?;
                    Ok((cert, view))
                });
                match r {
                    Ok((cert, view)) => {
                        o.regularity = Some(cert);
                        o.graded = Some(view);
                    }
                    Err(e) => o.error = Some(e.to_string()),
                }
                out.params.push(o);
            }
        }
        Command::Rees => {
            for i in 0..qs.len() {
                let mut o = outcome(i);
                match rees_presentation(a, &qs[i]) {
                    Ok(p) => o.rees = Some(p),
                    Err(e) => o.error = Some(e.to_string()),
                }
                out.params.push(o);
            }
        }
        Command::Suite => {
            let grid = (run.n.unwrap_or(DEFAULT_GRID.0), run.m.unwrap_or(DEFAULT_GRID.1));
            match run_suite(a, &qs, grid, cfg) {
                Ok(rep) => {
                    out.ia = rep.ia.clone();
                    if rep.has_failures() {
                        out.exit_code = EXIT_FAIL;
                    }
                    if rep.has_errors() {
                        out.errors.push(format!("{} bound entr(ies) ended in an engine error", rep.summary.error));
                    }
                    out.suite = Some(rep);
                }
                Err(e) => out.errors.push(e.to_string()),
            }
        }
        Command::GcmTest => {
            let (ia, status) = gcm_status(a, &qs, cfg);
            record(&mut out, ia);
            match theorem28_experiment(a, &qs, run.n.unwrap_or(DEFAULT_BUDGET), cfg) {
                Ok(exp) => {
                    let divergent = out.ia.as_ref().is_some_and(|e| e.status == IAStatus::Divergent);
                    let verdict = if divergent || exp.verdict == Theorem28Verdict::NotGcm {
                        Theorem28Verdict::NotGcm
                    } else if status.verified && exp.verdict == Theorem28Verdict::GcmConsistent {
                        Theorem28Verdict::GcmConsistent
                    } else {
                        Theorem28Verdict::Inconclusive
                    };
                    out.verdict = Some(verdict.to_string());
                    out.experiment = Some(exp);
                }
                Err(e) => out.errors.push(e.to_string()),
            }
        }
    }
    out.errors.extend(out.params.iter().filter_map(|p| p.error.as_ref().map(|e| format!("{}: {e}", p.q))));
    if !out.errors.is_empty() {
        out.exit_code = EXIT_ERROR;
    }
    out
}

fn record(out: &mut RunOutput, ia: Result<IAEstimate>) {
    match ia {
        Ok(est) => out.ia = Some(est),
        Err(e) => out.errors.push(format!("I(A): {e}")),
    }
}

pub fn render(report: &JobReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        ReportFormat::Text => render_text(report),
        ReportFormat::Csv => render_csv(report),
    }
}

fn render_text(report: &JobReport) -> String {
    let mut s = format!("# {}\n", report.version);
    for run in &report.runs {
        s.push_str(&format!("== run {} on {} (seed {})\n", run.command.name(), run.ring, run.seed));
        if let Some(rep) = &run.suite {
            let text = emit_report(rep, ReportFormat::Text);
            s.push_str(text.split_once('\n').map_or("", |(_, rest)| rest));
        } else if let Some(ia) = &run.ia {
            s.push_str(&format!("I(A) = {} ({}), trace {:?}\n", ia.value, ia.status, ia.trace));
        }
        for p in &run.params {
            if let Some(r) = &p.invariants {
                s.push_str(&format!(
                    "{} = {}: colength {}, e {}, I(Q,A) {}\n",
                    p.name, p.q, r.colength, r.multiplicity, r.iq
                ));
            }
            if let (Some(g), Some(c)) = (&p.graded, &p.regularity) {
                s.push_str(&format!(
                    "{} = {}: reg {}, p {}, h {:?}, filter-regular ({})\n",
                    p.name,
                    p.q,
                    c.value,
                    g.postulation,
                    g.hilbert,
                    c.sequence.iter().map(|x| x.element.as_str()).collect::<Vec<_>>().join(", ")
                ));
            }
            if let Some(r) = &p.rees {
                s.push_str(&format!("{} = {}: reltype {}, relations {:?}\n", p.name, p.q, r.reltype, r.generators));
            }
            if let Some(e) = &p.error {
                s.push_str(&format!("{} = {}: ERROR {e}\n", p.name, p.q));
            }
        }
        if let Some(exp) = &run.experiment {
            for x in &exp.samples {
                s.push_str(&format!("  ({}) k={}: reltype {}, colon exponent {}\n", x.q, x.power, x.reltype, x.colon_exponent));
            }
            s.push_str(&format!("r_obs {}, s {}, containment {}\n", exp.r_obs, exp.s, exp.containment_holds));
            if let Some(w) = &exp.witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            s.push_str(&format!("scope: {}\n", exp.scope));
        }
        if let Some(v) = &run.verdict {
            s.push_str(&format!("verdict: {v}\n"));
        }
        for e in &run.errors {
            s.push_str(&format!("error: {e}\n"));
        }
        s.push_str(&format!("exit {}\n", run.exit_code));
    }
    s
}

fn render_csv(report: &JobReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut row = |cols: [&str; 5]| w.write_record(cols).expect("in-memory write");
    row(["command", "Q", "key", "value", "version"]);
    for run in &report.runs {
        let cmd = run.command.name();
        let mut kv = |q: &str, k: &str, v: String| row([cmd, q, k, &v, &report.version]);
        if let Some(ia) = &run.ia {
            kv("", "I(A)", ia.value.to_string());
            kv("", "I(A) status", ia.status.to_string());
        }
        if let Some(rep) = &run.suite {
            for e in &rep.entries {
                let key = match (e.n, e.m) {
                    (Some(n), Some(m)) => format!("{} n={n} m={m}", e.bound),
                    (Some(n), None) => format!("{} n={n}", e.bound),
                    _ => e.bound.clone(),
                };
                let lr = match (e.lhs, e.rhs) {
                    (Some(l), Some(r)) => format!("{l} <= {r} "),
                    _ => String::new(),
                };
                kv(&e.q, &key, format!("{lr}{}", e.verdict));
            }
        }
        for p in &run.params {
            if let Some(r) = &p.invariants {
                kv(&p.q, "colength", r.colength.to_string());
                kv(&p.q, "e", r.multiplicity.to_string());
                kv(&p.q, "I(Q,A)", r.iq.to_string());
            }
            if let (Some(g), Some(c)) = (&p.graded, &p.regularity) {
                kv(&p.q, "reg", c.value.to_string());
                kv(&p.q, "p", g.postulation.to_string());
            }
            if let Some(r) = &p.rees {
                kv(&p.q, "reltype", r.reltype.to_string());
            }
            if let Some(e) = &p.error {
                kv(&p.q, "error", e.clone());
            }
        }
        if let Some(v) = &run.verdict {
            kv("", "verdict", v.clone());
        }
        for e in &run.errors {
            kv("", "error", e.clone());
        }
        kv("", "exit", run.exit_code.to_string());
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
