//! The local ring `k[x]/I` localized at the origin: dimensions, colengths,
//! parameter systems and lengths of finite subquotients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::ideal::{power_generators, series_total, AmbientIdeal, Length};
use crate::poly::{Field, MonomialOrder, PolyRing, Polynomial};

/// `k[x_1..x_s]/I` with `I` inside the maximal ideal at the origin.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: PolyRing,
    gens: Vec<Polynomial>,
}

impl RingPresentation {
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Self> {
        let ring = ring.with_order(MonomialOrder::DegRevLex);
        for g in &gens {
            if !ring.constant_term(g).is_zero() {
                return Err(EngineError::InvalidPresentation(format!(
                    "generator {} has a nonzero constant term",
                    ring.display(g)
                )));
            }
        }
        let gens = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.adopt(g)).collect();
        Ok(RingPresentation { ring, gens })
    }

    /// Builds a presentation from a characteristic (0 for the rationals),
    /// variable names and generator texts.
    pub fn parse(characteristic: u32, names: &[&str], gens: &[&str]) -> Result<Self> {
        let field = Field::with_characteristic(characteristic as u64)
            .map_err(|e| EngineError::InvalidPresentation(e.to_string()))?;
        let ring = PolyRing::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::DegRevLex,
        );
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        RingPresentation::new(&ring, polys)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.field().characteristic()
    }

    /// Text form `F<p>[vars]/(gens)`, with `Q` for the rationals.
    pub fn describe(&self) -> String {
        let field = match self.characteristic() {
            0 => "Q".to_string(),
            p => format!("F{p}"),
        };
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.display(g)).collect();
        format!("{field}[{}]/({})", self.ring.names().join(","), gens.join(", "))
    }
}

/// Elements `x_1..x_i` of the maximal ideal forming a (partial) system of
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterSystem {
    elements: Vec<Polynomial>,
    full: bool,
}

impl ParameterSystem {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// The first `i` elements, which again form a partial system.
    pub fn prefix(&self, i: usize) -> ParameterSystem {
        ParameterSystem {
            elements: self.elements[..i.min(self.len())].to_vec(),
            full: self.full && i >= self.len(),
        }
    }

    /// The ambient ideal generated by the elements.
    pub fn ideal(&self, ring: &PolyRing) -> AmbientIdeal {
        AmbientIdeal::new(ring, self.elements.iter().cloned())
    }

    pub fn display(&self, ring: &PolyRing) -> String {
        let shown: Vec<String> = self.elements.iter().map(|e| ring.display(e)).collect();
        format!("({})", shown.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationCaps {
    /// Largest `N` tried for `m^N` truncation.
    pub truncation: u32,
}

impl Default for TruncationCaps {
    fn default() -> Self {
        TruncationCaps { truncation: 1 << 10 }
    }
}

type PowerKey = (Vec<Polynomial>, u32);

/// A presented local ring with its dimension and memoized lengths.
pub struct LocalRing {
    presentation: RingPresentation,
    ideal: AmbientIdeal,
    dim: usize,
    colengths: Mutex<HashMap<Vec<Polynomial>, Length>>,
    powers: Mutex<HashMap<PowerKey, Arc<AmbientIdeal>>>,
}

impl std::fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (d = {})", self.presentation.describe(), self.dim)
    }
}

pub fn make_local_ring(p: RingPresentation) -> Result<LocalRing> {
    LocalRing::new(p)
}

impl LocalRing {
    pub fn new(presentation: RingPresentation) -> Result<Self> {
        // the presentation constructor already rejects constant terms
        let ideal = AmbientIdeal::new(presentation.ring(), presentation.gens().iter().cloned());
        let dim = ideal
            .local_leading_ideal()
            .dimension()
            .ok_or_else(|| EngineError::InvalidPresentation("the local ring is zero".into()))?;
        Ok(LocalRing {
            presentation,
            ideal,
            dim,
            colengths: Mutex::new(HashMap::new()),
            powers: Mutex::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn ring(&self) -> &PolyRing {
        self.presentation.ring()
    }

    /// The defining ideal `I`.
    pub fn defining_ideal(&self) -> &AmbientIdeal {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn describe(&self) -> String {
        self.presentation.describe()
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial> {
        self.ring().parse(text)
    }

    pub fn ideal(&self, gens: impl IntoIterator<Item = Polynomial>) -> AmbientIdeal {
        AmbientIdeal::new(self.ring(), gens)
    }

    pub fn parse_ideal(&self, gens: &[&str]) -> Result<AmbientIdeal> {
        AmbientIdeal::parse(self.ring(), gens)
    }

    /// Reduces `f` modulo `I`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.ideal.normal_form(f)
    }

    /// `I + J` as an ambient ideal.
    pub fn extend(&self, j: &AmbientIdeal) -> AmbientIdeal {
        self.ideal.sum(j)
    }

    /// `I + (gens)^n`, with the power's generators reduced modulo `I`.
    pub fn power_ideal(&self, gens: &[Polynomial], n: u32) -> Arc<AmbientIdeal> {
        let key = (gens.to_vec(), n);
        if let Some(p) = self.powers.lock().unwrap().get(&key) {
            return p.clone();
        }
        let mut reduced: Vec<Polynomial> = power_generators(self.ring(), gens, n)
            .iter()
            .map(|g| self.reduce(g))
            .filter(|g| !g.is_zero())
            .collect();
        reduced.sort_by(|a, b| a.terms().len().cmp(&b.terms().len()));
        let p = Arc::new(self.ideal.with(reduced));
        self.powers.lock().unwrap().entry(key).or_insert(p).clone()
    }

    pub fn local_dimension(&self) -> usize {
        self.dim
    }

    /// `ℓ(A/mⁿ)` for `n = 1..=count`, counted in the truncated quotients.
    pub fn hilbert_samuel_of_max(&self, count: u32) -> Vec<u64> {
        let m: Vec<Polynomial> = (0..self.ring().nvars()).map(|i| self.ring().var(i)).collect();
        (1..=count)
            .map(|n| {
                self.power_ideal(&m, n)
                    .kdim_quotient()
                    .finite()
                    .expect("I + m^n is m-primary")
            })
            .collect()
    }

    /// Dimension from the growth of `ℓ(A/mⁿ)`: the degree of the eventual
    /// polynomial, read off once `window` consecutive values of the
    /// `k`-th difference agree for some `k`.
    pub fn local_dimension_by_truncation(&self, cap: u32, window: usize) -> Result<usize> {
        let s = self.ring().nvars();
        let m: Vec<Polynomial> = (0..s).map(|i| self.ring().var(i)).collect();
        let mut values: Vec<i128> = Vec::new();
        for n in 1..=cap {
            let l = self.power_ideal(&m, n).kdim_quotient();
            values.push(l.finite().expect("I + m^n is m-primary") as i128);
            if values.len() < s + window + 1 {
                continue;
            }
            // the least k whose k-th differences are constant on the tail
            let mut diff = values.clone();
            for k in 0..=s {
                let tail = &diff[diff.len() - window..];
                if tail.iter().all(|&v| v == tail[0]) {
                    return Ok(k);
                }
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
        }
        Err(EngineError::cap("local dimension: Hilbert-Samuel growth did not stabilize", cap as usize))
    }

    /// `ℓ((A/JA)_m)`, or `Infinite` when `A/JA` has positive dimension at
    /// the origin.
    pub fn colength(&self, j: &AmbientIdeal) -> Length {
        self.colength_of_ideal(&self.extend(j))
    }

    /// Local colength of an ideal that already contains `I`.
    pub fn colength_of_ideal(&self, k: &AmbientIdeal) -> Length {
        let key = k.gens().to_vec();
        if let Some(&l) = self.colengths.lock().unwrap().get(&key) {
            return l;
        }
        let l = k.local_colength();
        self.colengths.lock().unwrap().insert(key, l);
        l
    }

    /// `ℓ(A/(gens)^n)`.
    pub fn power_colength(&self, gens: &[Polynomial], n: u32) -> Length {
        let p = self.power_ideal(gens, n);
        self.colength_of_ideal(&p)
    }

    /// Colength through the truncations `I + J + m^N`, `N = 1, 2, 4, ...`.
    /// Equal counts at `N` and `N + 1` force `m^N ⊆ I + J + m^(N+1)`, hence
    /// `m^N ⊆ (I + J)_m` by Nakayama, so the count at `N` is exact.
    pub fn colength_by_truncation(&self, j: &AmbientIdeal, caps: TruncationCaps) -> Result<u64> {
        let target = self.extend(j);
        let m: Vec<Polynomial> = (0..self.ring().nvars()).map(|i| self.ring().var(i)).collect();
        let count = |n: u32| -> u64 {
            target
                .with(power_generators(self.ring(), &m, n))
                .kdim_quotient()
                .finite()
                .expect("truncated quotient is finite")
        };
        let mut n = 1;
        while n <= caps.truncation {
            let a = count(n);
            if a == count(n + 1) {
                return Ok(a);
            }
            n *= 2;
        }
        Err(EngineError::cap("colength truncation", caps.truncation as usize))
    }

    /// `ℓ((U/V)_m)` for `V ⊆ U` modulo `I`, from the local Hilbert series of
    /// `V + I` and `U + I`: their difference is a polynomial exactly when
    /// the subquotient has finite length, and its value at 1 is the length.
    pub fn finite_subquotient_length(&self, u: &AmbientIdeal, v: &AmbientIdeal) -> Result<u64> {
        let uu = self.extend(u);
        let vv = self.extend(v);
        if !uu.contains_ideal(&vv) {
            return Err(EngineError::Precondition(format!(
                "{} is not contained in {} modulo the defining ideal",
                v.display(),
                u.display()
            )));
        }
        let nv = vv.local_leading_ideal().hilbert_numerator();
        let nu = uu.local_leading_ideal().hilbert_numerator();
        let diff = sub_series(&nv, &nu);
        match series_total(&diff, self.ring().nvars()) {
            Some(total) if total >= 0 => Ok(total as u64),
            _ => Err(EngineError::InfiniteLength(format!(
                "{} / {} has infinite length at the origin",
                u.display(),
                v.display()
            ))),
        }
    }

    /// Same length through the saturation `W = (V + I) : m^∞ ∩ (U + I)` and
    /// the difference of affine Hilbert functions of `V + I` and `W`.
    pub fn finite_subquotient_length_by_saturation(
        &self,
        u: &AmbientIdeal,
        v: &AmbientIdeal,
        cap: usize,
    ) -> Result<u64> {
        let uu = self.extend(u);
        let vv = self.extend(v);
        if !uu.contains_ideal(&vv) {
            return Err(EngineError::Precondition("V is not contained in U".into()));
        }
        let (sat, _) = vv.saturate(&AmbientIdeal::maximal(self.ring()), cap)?;
        let w = sat.intersect(&uu);
        let diff = sub_series(&vv.affine_numerator()?, &w.affine_numerator()?);
        series_total(&diff, self.ring().nvars())
            .filter(|&t| t >= 0)
            .map(|t| t as u64)
            .ok_or_else(|| EngineError::InfiniteLength("affine Hilbert difference is unbounded".into()))
    }

    /// Checks that `xs` is a system of parameters (`|xs| = d`) or part of
    /// one (`|xs| < d`).
    pub fn validate_parameter_system(&self, xs: &[Polynomial]) -> Result<ParameterSystem> {
        let d = self.dim;
        if xs.len() > d {
            return Err(EngineError::NotParameterSystem(format!(
                "{} elements given but dim A = {d}",
                xs.len()
            )));
        }
        for x in xs {
            if !self.ring().constant_term(x).is_zero() {
                return Err(EngineError::NotParameterSystem(format!(
                    "{} is not in the maximal ideal",
                    self.ring().display(x)
                )));
            }
        }
        let elements: Vec<Polynomial> = xs.iter().map(|x| self.ring().adopt(x)).collect();
        let j = AmbientIdeal::new(self.ring(), elements.iter().cloned());
        if xs.len() == d {
            if !self.colength(&j).is_finite() {
                return Err(EngineError::NotParameterSystem(format!(
                    "colength of {} is infinite",
                    j.display()
                )));
            }
        } else {
            let quotient = self.extend(&j).local_leading_ideal().dimension().unwrap_or(0);
            if quotient != d - xs.len() {
                return Err(EngineError::NotParameterSystem(format!(
                    "dim A/{} = {quotient}, expected {}",
                    j.display(),
                    d - xs.len()
                )));
            }
        }
        Ok(ParameterSystem {
            elements,
            full: xs.len() == d,
        })
    }

    pub fn parse_parameter_system(&self, xs: &[&str]) -> Result<ParameterSystem> {
        let polys = xs.iter().map(|x| self.parse_poly(x)).collect::<Result<Vec<_>>>()?;
        self.validate_parameter_system(&polys)
    }

    /// The local ring `A / (gens)^power A`.
    pub fn quotient_by(&self, gens: &[Polynomial], power: u32) -> Result<LocalRing> {
        let ideal = self.power_ideal(gens, power);
        let p = RingPresentation::new(self.ring(), ideal.gens().to_vec())?;
        LocalRing::new(p)
    }
}

fn sub_series(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}
