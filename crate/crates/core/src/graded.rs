//! The associated graded ring `G = ⊕ Qⁿ/Qⁿ⁺¹`, with each graded piece
//! realized as a subquotient of `A`: Hilbert function and polynomial,
//! postulation number, `G_+`-torsion and regularity.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{regularity_rhs, BoundEntry};
use crate::config::EngineConfig;
use crate::error::{EngineError, Result};
use crate::ideal::{power_generators, AmbientIdeal};
use crate::invariants::colon_length;
use crate::local::{LocalRing, ParameterSystem};
use crate::poly::{Coefficient, Field, Polynomial};

/// `h(n) = ℓ(Qⁿ/Qⁿ⁺¹)`.
pub fn hilbert_g(a: &LocalRing, q: &ParameterSystem, n: u32) -> Result<u64> {
    let hi = finite(a, q, n + 1)?;
    let lo = finite(a, q, n)?;
    Ok(hi - lo)
}

fn finite(a: &LocalRing, q: &ParameterSystem, n: u32) -> Result<u64> {
    a.power_colength(q.elements(), n)
        .finite()
        .ok_or_else(|| EngineError::InfiniteLength(format!("A/Q^{n}")))
}

/// `h(0), ..., h(count - 1)`.
pub fn hilbert_values(a: &LocalRing, q: &ParameterSystem, count: u32) -> Result<Vec<u64>> {
    let mut lengths = Vec::with_capacity(count as usize + 1);
    for n in 0..=count {
        lengths.push(finite(a, q, n)?);
    }
    Ok(lengths.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Generalized binomial `C(m, k)` for any integer `m`.
fn gbinom(m: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= m as i128 - i;
        den *= i + 1;
    }
    (num / den) as i64
}

/// An integer-valued polynomial `P(n) = Σ a_k C(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    pub binomial_coefficients: Vec<i64>,
}

impl HilbertPolynomial {
    /// The polynomial of degree `< values.len()` through `(start + j, values[j])`.
    pub fn interpolate(start: i64, values: &[i64]) -> Self {
        let k = values.len();
        let mut diffs = Vec::with_capacity(k);
        let mut row = values.to_vec();
        for _ in 0..k {
            diffs.push(row[0]);
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let newton = |n: i64| -> i64 { diffs.iter().enumerate().map(|(j, &c)| c * gbinom(n - start, j)).sum() };
        let at_zero: Vec<i64> = (0..k as i64).map(newton).collect();
        let mut coeffs = Vec::with_capacity(k);
        let mut row = at_zero;
        for _ in 0..k {
            coeffs.push(row[0]);
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbertPolynomial { binomial_coefficients: coeffs }
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.binomial_coefficients
            .iter()
            .enumerate()
            .map(|(k, &a)| a * gbinom(n, k))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedView {
    pub ring: String,
    #[serde(rename = "Q")]
    pub q: String,
    /// `h(n)` for `n = 0..`.
    pub hilbert: Vec<u64>,
    pub polynomial: HilbertPolynomial,
    pub postulation: u32,
}

/// Fits the Hilbert polynomial from the last `d` values of `h` on
/// `0..=horizon + window` and returns the least `n₀` from which `h`
/// agrees with it. At least `window` agreeing values beyond the fitted
/// ones are required after the last disagreement.
pub fn postulation(a: &LocalRing, q: &ParameterSystem, horizon: u32, window: usize) -> Result<GradedView> {
    let count = horizon + window as u32 + 1;
    let hilbert = hilbert_values(a, q, count)?;
    let d = a.dim();
    let len = hilbert.len();
    let polynomial = if d == 0 {
        HilbertPolynomial { binomial_coefficients: vec![] }
    } else {
        let start = len - d;
        let tail: Vec<i64> = hilbert[start..].iter().map(|&v| v as i64).collect();
        HilbertPolynomial::interpolate(start as i64, &tail)
    };
    let last_disagreement = (0..len).rev().find(|&n| hilbert[n] as i64 != polynomial.eval(n as i64));
    let p = last_disagreement.map(|j| j + 1).unwrap_or(0);
    if len - p < d + window {
        return Err(EngineError::cap("postulation: Hilbert function tail not stabilized within the horizon", count as usize));
    }
    Ok(GradedView {
        ring: a.describe(),
        q: q.display(a.ring()),
        hilbert,
        polynomial,
        postulation: p as u32,
    })
}

/// The ideals `D_n + I = (z_1..z_i) Q^(n-1) + Q^(n+1) + I` whose quotients
/// `Qⁿ/D_n` are the graded pieces of `G/(z_1..z_i)G`.
struct Stage<'a> {
    a: &'a LocalRing,
    q: Vec<Polynomial>,
    modded: Vec<Polynomial>,
    cache: std::sync::Mutex<HashMap<u32, Arc<AmbientIdeal>>>,
}

impl<'a> Stage<'a> {
    fn new(a: &'a LocalRing, q: &[Polynomial], modded: &[Polynomial]) -> Self {
        Stage {
            a,
            q: q.to_vec(),
            modded: modded.to_vec(),
            cache: std::sync::Mutex::new(HashMap::new()),
        }
    }

    fn power(&self, n: u32) -> Arc<AmbientIdeal> {
        self.a.power_ideal(&self.q, n)
    }

    fn denominator(&self, n: u32) -> Arc<AmbientIdeal> {
        if let Some(d) = self.cache.lock().unwrap().get(&n) {
            return d.clone();
        }
        let mut ideal = (*self.power(n + 1)).clone();
        if n >= 1 && !self.modded.is_empty() {
            let ring = self.a.ring();
            let lower = power_generators(ring, &self.q, n - 1);
            let mut extra = Vec::new();
            for z in &self.modded {
                for g in &lower {
                    let p = self.a.reduce(&ring.mul(z, g));
                    if !p.is_zero() {
                        extra.push(p);
                    }
                }
            }
            ideal = ideal.with(extra);
        }
        let ideal = Arc::new(ideal);
        self.cache.lock().unwrap().entry(n).or_insert(ideal).clone()
    }

    /// `ℓ({f ∈ Qⁿ : x^m f ∈ D_(n+m)} / D_n)`.
    fn killed_by_power(&self, n: u32, x: &Polynomial, m: u32) -> Result<u64> {
        let ring = self.a.ring();
        let colon = self.denominator(n + m).quotient(&ring.pow(x, m))?;
        let u = self.power(n).intersect(&colon);
        self.a.finite_subquotient_length(&u, &self.denominator(n))
    }

    /// `ℓ({f ∈ Qⁿ : Q^m f ⊆ D_(n+m)} / D_n)`.
    fn killed_by_ideal_power(&self, n: u32, m: u32) -> Result<u64> {
        let qm = self.a.ideal(power_generators(self.a.ring(), &self.q, m));
        let colon = self.denominator(n + m).quotient_ideal(&qm)?;
        let u = self.power(n).intersect(&colon);
        self.a.finite_subquotient_length(&u, &self.denominator(n))
    }

    /// `ℓ(Qⁿ/D_n)`.
    fn piece(&self, n: u32) -> Result<u64> {
        let lo = self.a.colength_of_ideal(&self.power(n));
        let hi = self.a.colength_of_ideal(&self.denominator(n));
        match (hi, lo) {
            (crate::ideal::Length::Finite(h), crate::ideal::Length::Finite(l)) => Ok(h - l),
            _ => Err(EngineError::InfiniteLength("graded piece".into())),
        }
    }
}

/// Lengths of the pieces of degree `0..=upto` of `H⁰_{G+}(G/(z_1..z_i)G)`,
/// with the `z_j` the initial forms of `modded`, and the exponent `m` at
/// which the kernel chain stabilized. With `x` given, torsion is the kernel
/// of `(x*)^m` (valid for filter-regular `x*`); otherwise the kernel of
/// `G_+^m`. The chain is compared as a whole in degrees `0..=upto`, so
/// `upto` must reach past the last degree that can carry torsion. When
/// `modded` generates `Q` the quotient has finite length and every piece
/// is torsion.
pub fn plus_torsion_lengths(
    a: &LocalRing,
    q: &ParameterSystem,
    modded: &[Polynomial],
    upto: u32,
    x: Option<&Polynomial>,
    cap: usize,
) -> Result<(Vec<u64>, u32)> {
    let stage = Stage::new(a, q.elements(), modded);
    torsion_in(&stage, upto, x, cap)
}

fn torsion_in(stage: &Stage<'_>, upto: u32, x: Option<&Polynomial>, cap: usize) -> Result<(Vec<u64>, u32)> {
    if x.is_none() && stage.modded.len() >= stage.q.len() {
        let pieces = (0..=upto).map(|n| stage.piece(n)).collect::<Result<Vec<_>>>()?;
        return Ok((pieces, 0));
    }
    let mut prev: Option<Vec<u64>> = None;
    for m in 1..=cap as u32 {
        let mut lengths = Vec::with_capacity(upto as usize + 1);
        for n in 0..=upto {
            lengths.push(match x {
                Some(x) => stage.killed_by_power(n, x, m)?,
                None => stage.killed_by_ideal_power(n, m)?,
            });
        }
        if prev.as_ref() == Some(&lengths) {
            return Ok((lengths, m - 1));
        }
        prev = Some(lengths);
    }
    Err(EngineError::cap("torsion kernel chain did not stabilize", cap))
}

/// `ℓ((0 :_{G/(z)G} x*)_n)`.
fn annihilator_in(stage: &Stage<'_>, n: u32, x: &Polynomial) -> Result<u64> {
    stage.killed_by_power(n, x, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterRegularCertificate {
    pub element: String,
    /// Degrees `lo..=hi` where `(0 : x*)_n` was checked to vanish.
    pub window: (u32, u32),
    pub attempts: u32,
}

fn random_coefficient(field: &Field, rng: &mut ChaCha8Rng) -> Coefficient {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(1..*p as i64)),
        Field::Rational => field.from_i64(rng.gen_range(1..=9)),
    }
}

/// Candidate `q_i + Σ_(k>i) c_k q_k`; the unitriangular shape keeps the
/// chosen sequence a generating set of `Q`.
fn candidate(a: &LocalRing, q: &[Polynomial], i: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = a.ring();
    let mut x = q[i].clone();
    for qk in &q[i + 1..] {
        let c = random_coefficient(ring.field(), rng);
        x = ring.add(&x, &ring.scale(qk, &c));
    }
    x
}

/// A random element whose initial form is filter-regular on
/// `G/(z_1..z_i)G`, certified by `(0 : x*)_n = 0` for `n` in `window`.
pub fn filter_regular_initial_form(
    a: &LocalRing,
    q: &ParameterSystem,
    modded: &[Polynomial],
    window: (u32, u32),
    rng: &mut ChaCha8Rng,
    retry_cap: u32,
) -> Result<(Polynomial, FilterRegularCertificate)> {
    let i = modded.len();
    if i >= q.len() {
        return Err(EngineError::Precondition("no parameters left to choose from".into()));
    }
    let stage = Stage::new(a, q.elements(), modded);
    for attempt in 1..=retry_cap {
        let x = candidate(a, q.elements(), i, rng);
        let mut ok = true;
        for n in window.0..=window.1 {
            if annihilator_in(&stage, n, &x)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            let cert = FilterRegularCertificate {
                element: a.ring().display(&x),
                window,
                attempts: attempt,
            };
            return Ok((x, cert));
        }
    }
    Err(EngineError::cap(
        format!("filter-regular element: (0 : x*) nonzero in degrees {}..={}", window.0, window.1),
        retry_cap as usize,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    pub value: u32,
    pub sequence: Vec<FilterRegularCertificate>,
    /// Last degree of nonzero torsion at each stage `0..=d`.
    pub stage_ends: Vec<Option<u32>>,
    pub horizon: u32,
    /// Exponent `m` with `L = 0 : (x*)^m` on the first stage.
    pub torsion_exponent: u32,
    /// `ℓ(L_n)` for `n = 0..=horizon`, where `L = H⁰_{G+}(G)`.
    pub torsion: Vec<u64>,
    pub seed: u64,
}

/// The working horizon: the theoretical bound plus slack when `I(A)` is
/// known, else an explicit override.
pub fn working_horizon(d: usize, ia: Option<u64>, cfg: &EngineConfig) -> Result<(u32, Option<u32>)> {
    if let Some(h) = cfg.horizon {
        return Ok((h, ia.map(|i| regularity_rhs(i as i64, d) as u32)));
    }
    match ia {
        Some(i) => {
            let b = regularity_rhs(i as i64, d);
            let b = u32::try_from(b).map_err(|_| EngineError::cap("regularity bound too large for a horizon", u32::MAX as usize))?;
            Ok((b + cfg.slack, Some(b)))
        }
        None => Err(EngineError::Uncertified(
            "no horizon: I(A) is not certified and no override was given".into(),
        )),
    }
}

/// `reg(G)` as the maximum over stages `i = 0..=d` of the end degree of
/// `H⁰_{G+}(G/(z_1..z_i)G)`, floored at 0.
pub fn regularity_g(
    a: &LocalRing,
    q: &ParameterSystem,
    ia: Option<u64>,
    cfg: &EngineConfig,
) -> Result<RegularityCertificate> {
    let d = a.dim();
    let (horizon, bound) = working_horizon(d, ia, cfg)?;
    let w = cfg.window as u32;
    let window = (bound.map(|b| b + 1).unwrap_or(horizon + 1), horizon + w);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut chosen: Vec<Polynomial> = Vec::new();
    let mut sequence = Vec::new();
    let mut stage_ends = Vec::new();
    let mut torsion_exponent = 0;
    let mut first_stage = Vec::new();
    for i in 0..=d {
        let stage = Stage::new(a, q.elements(), &chosen);
        let x = if i < d {
            let (x, cert) = filter_regular_initial_form(a, q, &chosen, window, &mut rng, cfg.retry_cap)?;
            sequence.push(cert);
            Some(x)
        } else {
            None
        };
        let (lengths, m) = torsion_in(&stage, horizon, x.as_ref(), cfg.saturation_cap)?;
        if i == 0 {
            torsion_exponent = m;
            first_stage = lengths.clone();
        }
        let end = lengths.iter().rposition(|&l| l > 0).map(|n| n as u32);
        stage_ends.push(end);
        if let Some(x) = x {
            chosen.push(x);
        }
    }
    let value = stage_ends.iter().flatten().copied().max().unwrap_or(0);
    Ok(RegularityCertificate {
        value,
        sequence,
        stage_ends,
        horizon,
        torsion_exponent: torsion_exponent.max(1),
        torsion: first_stage,
        seed: cfg.seed,
    })
}

/// Gap inequality `p_G(n) - h_{G/L}(n) ≤ ℓ(Qⁿ⁺¹:x/Qⁿ) + ℓ(Qⁿ⁺ᵐ⁺¹:x^m/Qⁿ⁺¹)`
/// for each `n` in `range`, where `x` is the first filter-regular element
/// of `cert`, `m` its torsion exponent and `ℓ(L_n)` read from `cert`.
pub fn mumford_gap_check(
    a: &LocalRing,
    q: &ParameterSystem,
    cert: &RegularityCertificate,
    view: &GradedView,
    lower: u32,
    range: std::ops::RangeInclusive<u32>,
) -> Vec<BoundEntry> {
    let label = "Lemma2.4";
    let qs = q.display(a.ring());
    let m = cert.torsion_exponent;
    let x = match cert.sequence.first().map(|c| a.parse_poly(&c.element)) {
        Some(Ok(x)) => x,
        _ => return vec![BoundEntry::error(label, &qs, None, None, "no filter-regular element recorded")],
    };
    range
        .map(|n| {
            let (nn, mm) = (Some(n as u64), Some(m as u64));
            if n < lower {
                return BoundEntry::skipped(label, &qs, format!("n = {n} is below reg of the hyperplane section ({lower})"));
            }
            let value = (|| -> Result<(i64, i64, u64)> {
                let h = hilbert_g(a, q, n)? as i64;
                let l = cert.torsion.get(n as usize).copied().unwrap_or(0);
                let lhs = view.polynomial.eval(n as i64) - (h - l as i64);
                let first = colon_length(a, q.elements(), n + 1, &x, 1)?;
                let big = a.power_ideal(q.elements(), n + m + 1);
                let colon = big.quotient(&a.ring().pow(&x, m))?;
                let second = a.finite_subquotient_length(&colon, &a.power_ideal(q.elements(), n + 1))?;
                Ok((lhs, (first + second) as i64, l))
            })();
            match value {
                Ok((lhs, rhs, l)) => BoundEntry::compare(label, &qs, nn, mm, lhs, rhs).with_note(format!(
                    "x = {}; ℓ(L_n) = {l}; hyperplane-section bound n + gap = {}",
                    a.ring().display(&x),
                    n as i64 + lhs
                )),
                Err(e) => BoundEntry::error(label, &qs, nn, mm, e.to_string()),
            }
        })
        .collect()
}
