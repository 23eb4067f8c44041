//! Multiplicity, `I(Q,A)`, the `I(A)` trace and the length bounds built
//! on them.

use serde::{Deserialize, Serialize};

use crate::bounds::{binom, BoundEntry};
use crate::config::EngineConfig;
use crate::error::{EngineError, Result};
use crate::ideal::AmbientIdeal;
use crate::local::{LocalRing, ParameterSystem};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub value: u64,
    /// Range of `n` whose `d`-th differences of `ℓ(A/Q^(n+1))` matched.
    pub window: (u32, u32),
    /// Whether the value is backed by the Koszul Euler characteristic.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub ring: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub colength: u64,
    pub multiplicity: u64,
    pub iq: u64,
    pub provenance: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IAStatus {
    Stabilized,
    Divergent,
    CapReached,
}

impl std::fmt::Display for IAStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IAStatus::Stabilized => "stabilized",
            IAStatus::Divergent => "divergent",
            IAStatus::CapReached => "cap-reached",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IAEstimate {
    pub value: u64,
    pub status: IAStatus,
    /// `I((x_1^n, ..., x_d^n), A)` for `n = 1..`.
    pub trace: Vec<u64>,
}

impl IAEstimate {
    /// Least `n` from which the trace is constant.
    pub fn stable_from(&self) -> Option<u32> {
        let last = *self.trace.last()?;
        let k = self.trace.iter().rev().take_while(|&&v| v == last).count();
        Some((self.trace.len() - k + 1) as u32)
    }

    pub fn is_stabilized(&self) -> bool {
        self.status == IAStatus::Stabilized
    }
}

fn full_system(q: &ParameterSystem) -> Result<()> {
    if q.is_full() {
        Ok(())
    } else {
        Err(EngineError::Precondition("a full system of parameters is required".into()))
    }
}

/// Euler characteristic of the Koszul complex of `xs` on `U/V`, where
/// `I ⊆ V ⊆ U`. Splits off one element at a time:
/// `χ(x; M) = χ(x'; M/x₁M) - χ(x'; 0 :_M x₁)`.
pub fn koszul_euler_characteristic(
    a: &LocalRing,
    u: &AmbientIdeal,
    v: &AmbientIdeal,
    xs: &[Polynomial],
) -> Result<i64> {
    if v.contains_ideal(u) {
        return Ok(0);
    }
    let Some((x, rest)) = xs.split_first() else {
        return Ok(a.finite_subquotient_length(u, v)? as i64);
    };
    let xu = v.with(u.gens().iter().map(|g| a.ring().mul(x, g)));
    let h0 = koszul_euler_characteristic(a, u, &xu, rest)?;
    let torsion = v.quotient(x)?.intersect(u);
    let h1 = koszul_euler_characteristic(a, &torsion, v, rest)?;
    Ok(h0 - h1)
}

/// `e(Q, A)` as the Euler characteristic of the Koszul complex.
pub fn multiplicity_by_euler(a: &LocalRing, q: &ParameterSystem) -> Result<u64> {
    full_system(q)?;
    let unit = AmbientIdeal::unit(a.ring());
    let chi = koszul_euler_characteristic(a, &unit, a.defining_ideal(), q.elements())?;
    u64::try_from(chi).map_err(|_| EngineError::Uncertified(format!("negative Euler characteristic {chi}")))
}

/// `ℓ(A/Q^(n+1))` for `n = 0..count`.
pub fn hilbert_samuel(a: &LocalRing, q: &ParameterSystem, count: u32) -> Result<Vec<u64>> {
    (1..=count)
        .map(|n| {
            a.power_colength(q.elements(), n)
                .finite()
                .ok_or_else(|| EngineError::InfiniteLength(format!("A/Q^{n}")))
        })
        .collect()
}

fn dth_differences(values: &[u64], d: usize) -> Vec<i64> {
    let mut diff: Vec<i64> = values.iter().map(|&v| v as i64).collect();
    for _ in 0..d {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    diff
}

/// Fits the Hilbert-Samuel function until `window` consecutive `d`-th
/// differences agree with `target` (or with each other when `target` is
/// `None`).
fn fit(a: &LocalRing, q: &ParameterSystem, cap: u32, window: usize, target: Option<u64>) -> Result<(u64, (u32, u32))> {
    let d = a.dim();
    let mut values = Vec::new();
    for n in 0..cap {
        let l = a
            .power_colength(q.elements(), n + 1)
            .finite()
            .ok_or_else(|| EngineError::InfiniteLength(format!("A/Q^{}", n + 1)))?;
        values.push(l);
        let diff = dth_differences(&values, d);
        if diff.len() < window {
            continue;
        }
        let tail = &diff[diff.len() - window..];
        let want = target.map(|t| t as i64).unwrap_or(tail[0]);
        if tail.iter().all(|&v| v == want) && want >= 0 {
            return Ok((want as u64, (n + 1 - window as u32, n)));
        }
    }
    Err(EngineError::cap("multiplicity fit: d-th differences did not stabilize", cap as usize))
}

/// The finite-difference fit alone, with no independent check.
pub fn multiplicity_by_fit(a: &LocalRing, q: &ParameterSystem, cap: u32, window: usize) -> Result<u64> {
    full_system(q)?;
    Ok(fit(a, q, cap, window, None)?.0)
}

/// `e(Q, A)`: the Euler characteristic, confirmed by the Hilbert-Samuel
/// fit reaching the same value within the fit cap.
pub fn multiplicity(a: &LocalRing, q: &ParameterSystem, cfg: &EngineConfig) -> Result<Multiplicity> {
    full_system(q)?;
    match multiplicity_by_euler(a, q) {
        Ok(e) => {
            let (_, window) = fit(a, q, cfg.fit_cap, cfg.window, Some(e))?;
            Ok(Multiplicity { value: e, window, certified: true })
        }
        Err(EngineError::CapExceeded { .. }) | Err(EngineError::InfiniteLength(_)) => {
            let (value, window) = fit(a, q, cfg.fit_cap, cfg.window, None)?;
            Ok(Multiplicity { value, window, certified: false })
        }
        Err(e) => Err(e),
    }
}

pub fn invariant_iq(a: &LocalRing, q: &ParameterSystem, cfg: &EngineConfig) -> Result<InvariantRecord> {
    full_system(q)?;
    let colength = a
        .colength(&q.ideal(a.ring()))
        .finite()
        .ok_or_else(|| EngineError::InfiniteLength("A/Q".into()))?;
    let e = multiplicity(a, q, cfg)?;
    let iq = colength.checked_sub(e.value).ok_or_else(|| {
        EngineError::Uncertified(format!("colength {colength} below multiplicity {}", e.value))
    })?;
    Ok(InvariantRecord {
        ring: a.describe(),
        q: q.display(a.ring()),
        colength,
        multiplicity: e.value,
        iq,
        provenance: format!(
            "{}; fit window n = {}..{}",
            if e.certified { "Koszul Euler characteristic" } else { "finite-difference fit only" },
            e.window.0,
            e.window.1
        ),
    })
}

/// `Q^[n] = (x_1^n, ..., x_d^n)`.
pub fn bracket_power(a: &LocalRing, q: &ParameterSystem, n: u32) -> Vec<Polynomial> {
    q.elements().iter().map(|x| a.ring().pow(x, n)).collect()
}

/// The trace `I(Q^[n], A) = ℓ(A/Q^[n]) - n^d e(Q, A)` for `n = 1..=n_max`,
/// with its stabilization status.
pub fn invariant_ia(a: &LocalRing, q: &ParameterSystem, n_max: u32, cfg: &EngineConfig) -> Result<IAEstimate> {
    full_system(q)?;
    let e = multiplicity(a, q, cfg)?.value;
    let d = a.dim() as u32;
    let mut trace: Vec<u64> = Vec::new();
    for n in 1..=n_max {
        let l = a
            .colength(&a.ideal(bracket_power(a, q, n)))
            .finite()
            .ok_or_else(|| EngineError::InfiniteLength(format!("A/Q^[{n}]")))?;
        let en = e * (n as u64).pow(d);
        let i = l
            .checked_sub(en)
            .ok_or_else(|| EngineError::Uncertified(format!("I(Q^[{n}], A) is negative")))?;
        if let Some(&prev) = trace.last() {
            if i < prev {
                return Err(EngineError::Uncertified(format!(
                    "I trace decreased from {prev} to {i} at n = {n}"
                )));
            }
        }
        trace.push(i);
    }
    Ok(classify_trace(trace, cfg))
}

/// Stabilized when the last `w` values agree. Divergent when the last `w`
/// values strictly increase and either the threshold is passed or the
/// whole trace (at least `2w` long) strictly increases.
fn classify_trace(trace: Vec<u64>, cfg: &EngineConfig) -> IAEstimate {
    let w = cfg.window.max(2);
    let value = trace.last().copied().unwrap_or(0);
    let status = if trace.len() >= w {
        let tail = &trace[trace.len() - w..];
        let threshold = cfg.divergence_factor.saturating_mul(trace[0] + 1);
        if tail.iter().all(|&v| v == tail[0]) {
            IAStatus::Stabilized
        } else if tail.windows(2).all(|p| p[0] < p[1])
            && (value >= threshold || (trace.len() >= 2 * w && trace.windows(2).all(|p| p[0] < p[1])))
        {
            IAStatus::Divergent
        } else {
            IAStatus::CapReached
        }
    } else {
        IAStatus::CapReached
    };
    IAEstimate { value, status, trace }
}

/// `A / J^power` for a partial system `J`, checked to have dimension
/// `d - i`.
pub fn quotient_ring_by_subsystem(a: &LocalRing, j: &ParameterSystem, power: u32) -> Result<LocalRing> {
    if j.is_empty() || j.len() >= a.dim() {
        return Err(EngineError::Precondition(format!(
            "subsystem length {} must lie strictly between 0 and {}",
            j.len(),
            a.dim()
        )));
    }
    let b = a.quotient_by(j.elements(), power)?;
    if b.dim() != a.dim() - j.len() {
        return Err(EngineError::NotParameterSystem(format!(
            "dim A/{}^{power} = {}, expected {}",
            j.display(a.ring()),
            b.dim(),
            a.dim() - j.len()
        )));
    }
    Ok(b)
}

/// `ℓ(A/Q^(n+1)) ≤ C(n+d, d) e + C(n+d-1, d-1) I(A)`.
pub fn check_hilbert_bound(a: &LocalRing, q: &ParameterSystem, n: u32, e: u64, ia: u64) -> Result<BoundEntry> {
    let d = a.dim() as i64;
    let n64 = n as i64;
    let lhs = a
        .power_colength(q.elements(), n + 1)
        .finite()
        .ok_or_else(|| EngineError::InfiniteLength("A/Q^(n+1)".into()))?;
    let rhs = binom(n64 + d, d) * e as i64 + binom(n64 + d - 1, d - 1) * ia as i64;
    Ok(BoundEntry::compare("Lemma1.1", &q.display(a.ring()), Some(n as u64), None, lhs as i64, rhs))
}

/// `I(A/J^(n+1)) ≤ C(n+i-1, i-1) I(A)` with `J` the first `i` parameters,
/// the left side computed along the images of the remaining parameters.
pub fn check_theorem_invariant_bound(
    a: &LocalRing,
    q: &ParameterSystem,
    i: usize,
    n: u32,
    ia: u64,
    cfg: &EngineConfig,
) -> BoundEntry {
    let label = "Thm1.2";
    let qs = q.display(a.ring());
    if i == 0 || i >= a.dim() {
        return BoundEntry::skipped(label, &qs, format!("needs 0 < i < d (i = {i}, d = {})", a.dim()));
    }
    let rhs = binom(n as i64 + i as i64 - 1, i as i64 - 1) * ia as i64;
    let at = |e: EngineError| BoundEntry::error(label, &qs, Some(n as u64), Some(i as u64), e.to_string());
    let b = match quotient_ring_by_subsystem(a, &q.prefix(i), n + 1) {
        Ok(b) => b,
        Err(e) => return at(e),
    };
    let rest = match b.validate_parameter_system(&q.elements()[i..]) {
        Ok(r) => r,
        Err(e) => return at(e),
    };
    match invariant_ia(&b, &rest, cfg.ia_n_max, cfg) {
        Ok(est) => {
            let entry = BoundEntry::compare(label, &qs, Some(n as u64), Some(i as u64), est.value as i64, rhs);
            let note = format!("i = {i}; quotient trace {:?} ({})", est.trace, est.status);
            if est.status == IAStatus::Divergent {
                let mut entry = entry.with_note(note);
                entry.verdict = crate::bounds::Verdict::Fail;
                entry
            } else {
                entry.with_note(note)
            }
        }
        Err(e) => at(e),
    }
}

/// `ℓ(((J^(n+1) + I) : x^m) / (J^(n+1) + I))`.
pub fn colon_length(a: &LocalRing, j: &[Polynomial], n: u32, x: &Polynomial, m: u32) -> Result<u64> {
    let base = a.power_ideal(j, n);
    let colon = base.quotient(&a.ring().pow(x, m))?;
    a.finite_subquotient_length(&colon, &base)
}

/// Colon bounds at `(n, m)`: the first for `J = (x_1..x_i)`
/// against `x_(i+1)`, the second for `Q^(n+m) : x_d^m` over `Q^n`.
pub fn check_colon_bounds(
    a: &LocalRing,
    q: &ParameterSystem,
    i: usize,
    n: u32,
    m: u32,
    ia: u64,
) -> (BoundEntry, BoundEntry) {
    let qs = q.display(a.ring());
    let d = a.dim();
    let (nn, mm) = (Some(n as u64), Some(m as u64));
    let first = if i == 0 || i >= d {
        BoundEntry::skipped("Cor1.3", &qs, format!("needs 0 < i < d (i = {i}, d = {d})"))
    } else {
        let rhs = binom(n as i64 + i as i64 - 1, i as i64 - 1) * ia as i64;
        match colon_length(a, &q.elements()[..i], n + 1, &q.elements()[i], m) {
            Ok(l) => BoundEntry::compare("Cor1.3", &qs, nn, mm, l as i64, rhs).with_note(format!("i = {i}")),
            Err(e) => BoundEntry::error("Cor1.3", &qs, nn, mm, e.to_string()),
        }
    };
    let second = if d < 2 {
        BoundEntry::skipped("Cor1.4", &qs, format!("needs d ≥ 2 (d = {d})"))
    } else {
        let rhs = binom(n as i64 + d as i64 - 2, d as i64 - 2) * ia as i64;
        let xd = &q.elements()[d - 1];
        let value = (|| -> Result<u64> {
            let big = a.power_ideal(q.elements(), n + m);
            let colon = big.quotient(&a.ring().pow(xd, m))?;
            a.finite_subquotient_length(&colon, &a.power_ideal(q.elements(), n))
        })();
        match value {
            Ok(l) => BoundEntry::compare("Cor1.4", &qs, nn, mm, l as i64, rhs),
            Err(e) => BoundEntry::error("Cor1.4", &qs, nn, mm, e.to_string()),
        }
    };
    (first, second)
}

/// Least `n` with `m^n ((x_1..x_(d-1)) : x_d^∞) ⊆ (x_1..x_(d-1))` in `A`;
/// zero when the saturated colon adds nothing.
pub fn colon_exponent(a: &LocalRing, sop: &ParameterSystem) -> Result<u32> {
    full_system(sop)?;
    let d = sop.len();
    if d == 0 {
        return Ok(0);
    }
    let w = a.extend(&sop.prefix(d - 1).ideal(a.ring()));
    let colon = w.saturate_element(&sop.elements()[d - 1]);
    let mut best = 0u32;
    for g in colon.gens() {
        let g = w.normal_form(g);
        if g.is_zero() {
            continue;
        }
        let annihilator = w.quotient(&g)?;
        if let Some(top) = annihilator.local_leading_ideal().max_standard_degree() {
            best = best.max(top as u32 + 1);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonSample {
    #[serde(rename = "Q")]
    pub q: String,
    /// `None` when the exponent exceeds the cap.
    pub exponent: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonTestReport {
    pub samples: Vec<ColonSample>,
    pub max_exponent: Option<u32>,
    pub uniform_within_cap: bool,
    pub n_cap: u32,
}

/// Least colon exponent for each sample and whether one `n` serves them all.
pub fn gcm_colon_test(a: &LocalRing, sops: &[ParameterSystem], n_cap: u32) -> Result<ColonTestReport> {
    let mut samples = Vec::with_capacity(sops.len());
    for sop in sops {
        let n = colon_exponent(a, sop)?;
        samples.push(ColonSample {
            q: sop.display(a.ring()),
            exponent: (n <= n_cap).then_some(n),
        });
    }
    let uniform = samples.iter().all(|s| s.exponent.is_some());
    let max_exponent = if uniform {
        samples.iter().filter_map(|s| s.exponent).max()
    } else {
        None
    };
    Ok(ColonTestReport {
        samples,
        max_exponent,
        uniform_within_cap: uniform,
        n_cap,
    })
}
