//! Full verification suites per ring: gCM status first, then every bound
//! over the sampled parameter ideals and the `(n, m)` grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{postulation_rhs, regularity_rhs, BoundEntry, Verdict};
use crate::config::EngineConfig;
use crate::error::{EngineError, Result};
use crate::graded::{postulation, regularity_g, GradedView, RegularityCertificate};
use crate::invariants::{
    check_colon_bounds, check_hilbert_bound, check_theorem_invariant_bound, colon_exponent, gcm_colon_test,
    invariant_ia, invariant_iq, quotient_ring_by_subsystem, ColonTestReport, IAEstimate, InvariantRecord,
};
use crate::local::{LocalRing, ParameterSystem};
use crate::poly::Polynomial;
use crate::rees::{rees_presentation, ReesPresentation};

pub const REPORT_VERSION: &str = "gcmwb-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcmStatus {
    pub verified: bool,
    pub evidence: String,
    pub colon_test: Option<ColonTestReport>,
}

/// Everything computed for one parameter ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub invariants: Option<InvariantRecord>,
    pub graded: Option<GradedView>,
    pub regularity: Option<RegularityCertificate>,
    pub rees: Option<ReesPresentation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
    pub sharp: usize,
    /// FAIL entries on a ring verified to be gCM.
    pub contradictions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub truncation: u32,
    pub fit: u32,
    pub window: usize,
    pub divergence_factor: u64,
    pub ia_n_max: u32,
    pub saturation: usize,
    pub colon: u32,
    pub retry: u32,
    pub slack: u32,
    pub horizon: Option<u32>,
    pub grid_n: u32,
    pub grid_m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seeds {
    pub engine: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub caps: Caps,
    pub seeds: Seeds,
    pub char: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Report format version, bumped on any schema change.
    pub version: String,
    pub ring: String,
    pub d: usize,
    pub ia: Option<IAEstimate>,
    pub gcm: GcmStatus,
    pub scope: String,
    pub entries: Vec<BoundEntry>,
    pub records: Vec<ParameterRecord>,
    pub summary: Summary,
    pub config: ConfigSnapshot,
}

impl BoundReport {
    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn has_errors(&self) -> bool {
        self.summary.error > 0
    }

    pub fn entries_for(&self, bound: &str) -> impl Iterator<Item = &BoundEntry> {
        let bound = bound.to_string();
        self.entries.iter().filter(move |e| e.bound == bound)
    }
}

pub fn snapshot(a: &LocalRing, cfg: &EngineConfig, grid: (u32, u32)) -> ConfigSnapshot {
    ConfigSnapshot {
        caps: Caps {
            truncation: cfg.truncation_cap,
            fit: cfg.fit_cap,
            window: cfg.window,
            divergence_factor: cfg.divergence_factor,
            ia_n_max: cfg.ia_n_max,
            saturation: cfg.saturation_cap,
            colon: cfg.colon_cap,
            retry: cfg.retry_cap,
            slack: cfg.slack,
            horizon: cfg.horizon,
            grid_n: grid.0,
            grid_m: grid.1,
        },
        seeds: Seeds { engine: cfg.seed },
        char: a.presentation().characteristic(),
    }
}

fn summarize(entries: &[BoundEntry], gcm: bool) -> Summary {
    let mut s = Summary::default();
    for e in entries {
        match e.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => {
                s.fail += 1;
                if gcm {
                    s.contradictions += 1;
                }
            }
            Verdict::Skipped => s.skipped += 1,
            Verdict::Error => s.error += 1,
        }
        if e.is_sharp() {
            s.sharp += 1;
        }
    }
    s
}

/// `I(A)` and the colon test over `qs`.
pub fn gcm_status(a: &LocalRing, qs: &[ParameterSystem], cfg: &EngineConfig) -> (Result<IAEstimate>, GcmStatus) {
    let ia = invariant_ia(a, &qs[0], cfg.ia_n_max, cfg);
    let colon = gcm_colon_test(a, qs, cfg.colon_cap);
    let status = match (&ia, &colon) {
        (Ok(est), Ok(ct)) => {
            let verified = est.is_stabilized() && ct.uniform_within_cap;
            let evidence = format!(
                "I trace {:?} ({}); colon exponents {:?}{}",
                est.trace,
                est.status,
                ct.samples.iter().map(|s| s.exponent).collect::<Vec<_>>(),
                if verified { "" } else { "; not verified" }
            );
            GcmStatus { verified, evidence, colon_test: Some(ct.clone()) }
        }
        (Err(e), _) | (_, Err(e)) => GcmStatus {
            verified: false,
            evidence: format!("engine error: {e}"),
            colon_test: colon.as_ref().ok().cloned(),
        },
    };
    (ia, status)
}

/// Every bound for every parameter ideal in `qs` on the grid
/// `n ≤ grid.0`, `1 ≤ m ≤ grid.1`. An erroring entry is recorded and the
/// suite continues.
pub fn run_suite(a: &LocalRing, qs: &[ParameterSystem], grid: (u32, u32), cfg: &EngineConfig) -> Result<BoundReport> {
    if qs.is_empty() {
        return Err(EngineError::Precondition("run_suite needs at least one parameter ideal".into()));
    }
    let (ia_result, gcm) = gcm_status(a, qs, cfg);
    let ia_value = ia_result.as_ref().ok().filter(|e| e.is_stabilized()).map(|e| e.value);
    let per_q: Vec<(Vec<BoundEntry>, ParameterRecord)> = qs
        .par_iter()
        .map(|q| suite_for(a, q, grid, ia_value, cfg))
        .collect();
    let mut entries = Vec::new();
    let mut records = Vec::new();
    for (e, r) in per_q {
        entries.extend(e);
        records.push(r);
    }
    if let Err(e) = &ia_result {
        entries.push(BoundEntry::error("I(A)", &qs[0].display(a.ring()), None, None, e.to_string()));
    }
    entries.sort_by(|x, y| (&x.bound, &x.q, x.n, x.m).cmp(&(&y.bound, &y.q, y.n, y.m)));
    let summary = summarize(&entries, gcm.verified);
    Ok(BoundReport {
        version: REPORT_VERSION.to_string(),
        ring: a.describe(),
        d: a.dim(),
        ia: ia_result.ok(),
        gcm,
        scope: format!(
            "I(A) is the sup over the powers of the first parameter ideal only; {} sampled parameter ideal(s)",
            qs.len()
        ),
        entries,
        records,
        summary,
        config: snapshot(a, cfg, grid),
    })
}

fn suite_for(
    a: &LocalRing,
    q: &ParameterSystem,
    grid: (u32, u32),
    ia: Option<u64>,
    cfg: &EngineConfig,
) -> (Vec<BoundEntry>, ParameterRecord) {
    let qs = q.display(a.ring());
    let d = a.dim();
    let mut entries = Vec::new();
    let mut record = ParameterRecord { invariants: None, graded: None, regularity: None, rees: None };
    let err = |b: &str, e: &EngineError| BoundEntry::error(b, &qs, None, None, e.to_string());
    let Some(ia) = ia else {
        for b in ["Lemma1.1", "Thm1.2", "Cor1.3", "Cor1.4", "Thm2.5", "Cor2.6", "Cor2.7", "Lemma2.4"] {
            entries.push(BoundEntry::skipped(b, &qs, "I(A) not stabilized: bounds assume a gCM ring"));
        }
        record.invariants = invariant_iq(a, q, cfg).ok();
        return (entries, record);
    };

    match invariant_iq(a, q, cfg) {
        Ok(rec) => {
            for n in 0..=grid.0 {
                entries.push(
                    check_hilbert_bound(a, q, n, rec.multiplicity, ia)
                        .unwrap_or_else(|e| BoundEntry::error("Lemma1.1", &qs, Some(n as u64), None, e.to_string())),
                );
            }
            record.invariants = Some(rec);
        }
        Err(e) => entries.push(err("Lemma1.1", &e)),
    }

    if d < 2 {
        for b in ["Thm1.2", "Cor1.3", "Cor1.4", "Lemma2.4"] {
            entries.push(BoundEntry::skipped(b, &qs, format!("needs d ≥ 2 (d = {d})")));
        }
    } else {
        for i in 1..d {
            for n in 0..=grid.0 {
                entries.push(check_theorem_invariant_bound(a, q, i, n, ia, cfg));
                for m in 1..=grid.1 {
                    let (c13, c14) = check_colon_bounds(a, q, i, n, m, ia);
                    entries.push(c13);
                    if i == 1 {
                        entries.push(c14);
                    }
                }
            }
        }
    }

    let reg = regularity_g(a, q, Some(ia), cfg);
    match &reg {
        Ok(cert) => entries.push(
            BoundEntry::compare("Thm2.5", &qs, None, None, cert.value as i64, regularity_rhs(ia as i64, d))
                .with_note(format!("horizon {}; stage ends {:?}", cert.horizon, cert.stage_ends)),
        ),
        Err(e) => entries.push(err("Thm2.5", e)),
    }
    let horizon = reg.as_ref().map(|c| c.horizon).unwrap_or(regularity_rhs(ia as i64, d) as u32 + cfg.slack);
    let view = postulation(a, q, horizon, cfg.window);
    match &view {
        Ok(v) => entries.push(BoundEntry::compare("Cor2.6", &qs, None, None, v.postulation as i64, postulation_rhs(ia as i64, d))),
        Err(e) => entries.push(err("Cor2.6", e)),
    }
    match rees_presentation(a, q) {
        Ok(p) => {
            entries.push(BoundEntry::compare("Cor2.7", &qs, None, None, p.reltype as i64, postulation_rhs(ia as i64, d)));
            record.rees = Some(p);
        }
        Err(e) => entries.push(err("Cor2.7", &e)),
    }

    if d >= 2 {
        match (&reg, &view) {
            (Ok(cert), Ok(v)) => entries.extend(gap_entries(a, q, cert, v, ia, cfg)),
            (Err(e), _) | (_, Err(e)) => entries.push(err("Lemma2.4", e)),
        }
    }
    record.graded = view.ok();
    record.regularity = reg.ok();
    (entries, record)
}

/// Gap entries for `n = p(Q)..=p(Q)+2`, above the regularity of the
/// hyperplane section `A/(x)`.
fn gap_entries(
    a: &LocalRing,
    q: &ParameterSystem,
    cert: &RegularityCertificate,
    view: &GradedView,
    ia: u64,
    cfg: &EngineConfig,
) -> Vec<BoundEntry> {
    let qs = q.display(a.ring());
    let lower = (|| -> Result<u32> {
        let chosen: Vec<Polynomial> = cert
            .sequence
            .iter()
            .map(|c| a.parse_poly(&c.element))
            .collect::<Result<_>>()?;
        let j = a.validate_parameter_system(&chosen[..1])?;
        let b = quotient_ring_by_subsystem(a, &j, 1)?;
        let rest = b.validate_parameter_system(&chosen[1..])?;
        Ok(regularity_g(&b, &rest, Some(ia), cfg)?.value)
    })();
    match lower {
        Ok(lower) => {
            let p = view.postulation;
            crate::graded::mumford_gap_check(a, q, cert, view, lower, p..=p + 2)
        }
        Err(e) => vec![BoundEntry::error("Lemma2.4", &qs, None, None, e.to_string())],
    }
}

/// Parameter ideals for a suite: the base system, its square powers and
/// random rows `Σ_j a_ij q_j^k` (with `k ∈ {1, 2}` per row, over
/// parameters of equal degree so homogeneous inputs stay homogeneous).
/// Every sample is validated and duplicates are dropped.
pub fn sample_parameter_systems(a: &LocalRing, base: &ParameterSystem, count: usize, seed: u64) -> Vec<ParameterSystem> {
    let ring = a.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ParameterSystem> = vec![base.clone()];
    let mut seen = vec![base.display(ring)];
    let mut push = |out: &mut Vec<ParameterSystem>, xs: Vec<Polynomial>| {
        if let Ok(p) = a.validate_parameter_system(&xs) {
            let key = p.display(ring);
            if !seen.contains(&key) {
                seen.push(key);
                out.push(p);
            }
        }
    };
    let q = base.elements();
    push(&mut out, q.iter().map(|x| ring.pow(x, 2)).collect());
    let degrees: Vec<Option<u32>> = q.iter().map(|x| x.total_degree()).collect();
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count.max(1) {
        attempts += 1;
        let rows: Vec<Polynomial> = (0..q.len())
            .map(|i| {
                let k = rng.gen_range(1..=2u32);
                let mut row = ring.zero();
                for (j, x) in q.iter().enumerate() {
                    if degrees[j] != degrees[i] && j != i {
                        continue;
                    }
                    let c = rng.gen_range(-4i64..=5);
                    let c = if j == i && c == 0 { 1 } else { c };
                    row = ring.add(&row, &ring.scale(&ring.pow(x, k), &ring.field().from_i64(c)));
                }
                row
            })
            .collect();
        push(&mut out, rows);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem28Verdict {
    GcmConsistent,
    NotGcm,
    Inconclusive,
}

impl std::fmt::Display for Theorem28Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Theorem28Verdict::GcmConsistent => "gCM-consistent (uniformly bounded)",
            Theorem28Verdict::NotGcm => "not gCM (growth detected)",
            Theorem28Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem28Sample {
    #[serde(rename = "Q")]
    pub q: String,
    pub family_index: usize,
    pub power: u32,
    /// Relation type of `x_d` over `A/(x_1..x_(d-1))`.
    pub reltype: u32,
    pub colon_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem28Report {
    pub ring: String,
    pub samples: Vec<Theorem28Sample>,
    pub r_obs: u32,
    pub s: usize,
    /// Every colon exponent is at most `r_obs * s`.
    pub containment_holds: bool,
    pub witness: Option<String>,
    pub verdict: Theorem28Verdict,
    pub scope: String,
}

/// The sample used for family member `sop` at power `k`: the first `d-1`
/// parameters raised to `k` (for `d = 1`, the single parameter).
fn powered(a: &LocalRing, sop: &ParameterSystem, k: u32) -> Result<ParameterSystem> {
    let ring = a.ring();
    let d = sop.len();
    let xs: Vec<Polynomial> = sop
        .elements()
        .iter()
        .enumerate()
        .map(|(i, x)| if i + 1 < d || d == 1 { ring.pow(x, k) } else { x.clone() })
        .collect();
    a.validate_parameter_system(&xs)
}

fn strictly_increasing(xs: &[u32]) -> bool {
    xs.len() >= 3 && xs.windows(2).all(|w| w[0] < w[1])
}

/// Samples parameter systems (each family member with its first `d-1`
/// parameters raised to `k = 1..=budget`), records the relation type of
/// the last parameter over the quotient by the others and the least colon
/// exponent, and looks for unbounded growth.
pub fn theorem28_experiment(
    a: &LocalRing,
    family: &[ParameterSystem],
    budget: u32,
    cfg: &EngineConfig,
) -> Result<Theorem28Report> {
    if budget == 0 || family.is_empty() {
        return Err(EngineError::Precondition("the experiment needs a family and a budget of at least 1".into()));
    }
    let d = a.dim();
    let mut samples = Vec::new();
    for (idx, sop) in family.iter().enumerate() {
        for k in 1..=budget {
            let p = powered(a, sop, k)?;
            let (prefix, last) = p.elements().split_at(d - 1);
            let base = a.extend(&a.ideal(prefix.iter().cloned()));
            let (_, e) = base.saturate(&a.ideal([last[0].clone()]), cfg.saturation_cap)?;
            samples.push(Theorem28Sample {
                q: p.display(a.ring()),
                family_index: idx,
                power: k,
                reltype: (e as u32).max(1),
                colon_exponent: colon_exponent(a, &p)?,
            });
        }
    }
    let r_obs = samples.iter().map(|s| s.reltype).max().unwrap_or(1);
    let s = a.ring().nvars();
    let containment_holds = samples.iter().all(|x| x.colon_exponent as usize <= r_obs as usize * s);

    let mut witness = None;
    for idx in 0..family.len() {
        let chain: Vec<u32> = samples.iter().filter(|x| x.family_index == idx).map(|x| x.colon_exponent).collect();
        if strictly_increasing(&chain) {
            witness = Some(format!(
                "{} with the first {} parameter(s) raised to k = 1..={budget}: colon exponents {:?}",
                family[idx].display(a.ring()),
                d.saturating_sub(1).max(1),
                chain
            ));
            break;
        }
    }
    if witness.is_none() {
        for k in 1..=budget {
            let chain: Vec<u32> = samples.iter().filter(|x| x.power == k).map(|x| x.colon_exponent).collect();
            if strictly_increasing(&chain) {
                witness = Some(format!("along the family at power k = {k}: colon exponents {chain:?}"));
                break;
            }
        }
    }
    let chains_long_enough = budget >= 3 || family.len() >= 3;
    let verdict = if witness.is_some() {
        Theorem28Verdict::NotGcm
    } else if containment_holds && chains_long_enough {
        Theorem28Verdict::GcmConsistent
    } else {
        Theorem28Verdict::Inconclusive
    };
    Ok(Theorem28Report {
        ring: a.describe(),
        samples,
        r_obs,
        s,
        containment_holds,
        witness,
        verdict,
        scope: format!(
            "{} family member(s), powers k = 1..={budget} of the first d-1 parameters; quotients A/J for J over these prefixes only",
            family.len()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::{make_local_ring, RingPresentation};

    fn local(names: &[&str], gens: &[&str]) -> LocalRing {
        make_local_ring(RingPresentation::parse(101, names, gens).unwrap()).unwrap()
    }

    #[test]
    fn example_suite_is_sharp() {
        let a = local(&["x", "y"], &["x^2", "x*y^3"]);
        let q = a.parse_parameter_system(&["y"]).unwrap();
        let rep = run_suite(&a, &[q], (5, 2), &EngineConfig::default()).unwrap();
        assert!(rep.gcm.verified, "{:?}", rep.gcm);
        assert_eq!(rep.summary.fail, 0);
        assert_eq!(rep.summary.error, 0, "{:#?}", rep.entries);
        let thm = rep.entries_for("Thm2.5").next().unwrap();
        assert_eq!((thm.lhs, thm.rhs), (Some(2), Some(2)));
        for b in ["Thm2.5", "Cor2.6", "Cor2.7"] {
            assert!(rep.entries_for(b).all(|e| e.is_sharp()), "{b}");
        }
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let b = local(&["x", "y"], &[]);
        let q = b.parse_parameter_system(&["x", "y"]).unwrap();
        let s1 = sample_parameter_systems(&b, &q, 6, 3);
        let s2 = sample_parameter_systems(&b, &q, 6, 3);
        assert_eq!(s1, s2);
        assert!(s1.len() >= 5);
        assert!(s1.iter().all(|p| p.is_full() && p.elements().iter().all(|x| x.is_homogeneous())));
    }

    #[test]
    fn experiment_verdicts() {
        let c = local(&["x", "y", "z"], &["x*y", "x*z"]);
        let fam: Vec<ParameterSystem> = (1..=3)
            .map(|t| c.parse_parameter_system(&[&format!("x - y^{t}"), "z"]).unwrap())
            .collect();
        let rep = theorem28_experiment(&c, &fam, 3, &EngineConfig::default()).unwrap();
        assert_eq!(rep.verdict, Theorem28Verdict::NotGcm, "{rep:#?}");
        let a = local(&["x", "y"], &["x^2", "x*y^2"]);
        let fam = vec![a.parse_parameter_system(&["y"]).unwrap(), a.parse_parameter_system(&["y + x"]).unwrap()];
        let rep = theorem28_experiment(&a, &fam, 3, &EngineConfig::default()).unwrap();
        assert_eq!(rep.verdict, Theorem28Verdict::GcmConsistent, "{rep:#?}");
        assert_eq!(rep.r_obs, 2);
        let short = theorem28_experiment(&a, &fam[..1], 1, &EngineConfig::default()).unwrap();
        assert_eq!(short.verdict, Theorem28Verdict::Inconclusive);
    }
}
