//! Gröbner bases and the ideal calculus over the ambient polynomial ring.

mod groebner;
mod monomial_ideal;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use groebner::{groebner, is_groebner, reduce, GroebnerBasis};
pub use monomial_ideal::{series_coefficient, series_total, Length, MonomialIdeal, SeriesNumerator};

use crate::error::{EngineError, Result};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

const AUX: &str = "__t";
const HOMOG: &str = "__h";

/// An ideal of the ambient ring given by generators, with lazily cached
/// Gröbner bases per monomial order. Cache writes are idempotent, so
/// concurrent readers may race to populate an entry harmlessly.
pub struct AmbientIdeal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
    local: Mutex<Option<Arc<MonomialIdeal>>>,
}

impl Clone for AmbientIdeal {
    fn clone(&self) -> Self {
        AmbientIdeal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
            local: Mutex::new(self.local.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for AmbientIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shown: Vec<String> = self.gens.iter().map(|g| self.ring.display(g)).collect();
        write!(f, "({})", shown.join(", "))
    }
}

impl AmbientIdeal {
    pub fn new(ring: &PolyRing, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut gens: Vec<Polynomial> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| ring.adopt(&g))
            .collect();
        gens.dedup();
        AmbientIdeal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(HashMap::new()),
            local: Mutex::new(None),
        }
    }

    pub fn parse(ring: &PolyRing, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ok(AmbientIdeal::new(ring, polys))
    }

    pub fn unit(ring: &PolyRing) -> Self {
        AmbientIdeal::new(ring, [ring.one()])
    }

    pub fn zero(ring: &PolyRing) -> Self {
        AmbientIdeal::new(ring, [])
    }

    /// The maximal ideal `(x_1, ..., x_s)` at the origin.
    pub fn maximal(ring: &PolyRing) -> Self {
        AmbientIdeal::new(ring, (0..ring.nvars()).map(|i| ring.var(i)))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn display(&self) -> String {
        format!("{self:?}")
    }

    pub fn groebner(&self) -> Arc<GroebnerBasis> {
        self.groebner_in(self.ring.order().clone())
    }

    pub fn groebner_in(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return gb.clone();
        }
        let ring = self.ring.with_order(order.clone());
        let gb = Arc::new(groebner(&ring, &self.gens));
        self.cache.lock().unwrap().entry(order).or_insert(gb).clone()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let gb = self.groebner();
        self.ring.adopt(&gb.normal_form(f))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner().contains(f)
    }

    pub fn contains_ideal(&self, other: &AmbientIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by mutual membership against reduced bases.
    pub fn equals(&self, other: &AmbientIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &AmbientIdeal) -> AmbientIdeal {
        AmbientIdeal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> AmbientIdeal {
        AmbientIdeal::new(&self.ring, self.gens.iter().cloned().chain(extra))
    }

    pub fn product(&self, other: &AmbientIdeal) -> AmbientIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        AmbientIdeal::new(&self.ring, gens)
    }

    /// `n`-fold product; `power(0)` is the unit ideal.
    pub fn power(&self, n: u32) -> AmbientIdeal {
        AmbientIdeal::new(&self.ring, power_generators(&self.ring, &self.gens, n))
    }

    pub fn combine(&self, other: &AmbientIdeal, op: CombineOp) -> AmbientIdeal {
        match op {
            CombineOp::Sum => self.sum(other),
            CombineOp::Product => self.product(other),
            CombineOp::Power(n) => self.power(n),
        }
    }

    /// `U ∩ V` via `t U + (1 - t) V` with `t` eliminated.
    pub fn intersect(&self, other: &AmbientIdeal) -> AmbientIdeal {
        if self.is_zero() || other.is_zero() {
            return AmbientIdeal::zero(&self.ring);
        }
        let n = self.ring.nvars();
        let ext = self.ring.extend(&[AUX]);
        let t = ext.var(n);
        let one_minus_t = ext.sub(&ext.one(), &t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(ext.mul(&t, &self.ring.embed_into(&ext, g)));
        }
        for g in &other.gens {
            gens.push(ext.mul(&one_minus_t, &self.ring.embed_into(&ext, g)));
        }
        self.eliminate_aux(&ext, gens, &[n])
    }

    /// Eliminates the given trailing auxiliary variables of `ext` and maps
    /// the result back to this ring.
    fn eliminate_aux(&self, ext: &PolyRing, gens: Vec<Polynomial>, drop: &[usize]) -> AmbientIdeal {
        let order = MonomialOrder::elimination(drop, ext.nvars());
        let gb = groebner(&ext.with_order(order), &gens);
        let keep: Vec<usize> = (0..self.ring.nvars()).collect();
        let out = gb
            .gens()
            .iter()
            .filter(|g| drop.iter().all(|&v| !g.involves(v)))
            .map(|g| ext.project_into(&self.ring, &keep, g))
            .collect::<Vec<_>>();
        AmbientIdeal::new(&self.ring, out)
    }

    /// `{g : g f ∈ U}`.
    pub fn quotient(&self, f: &Polynomial) -> Result<AmbientIdeal> {
        if f.is_zero() {
            return Err(EngineError::Precondition("ideal quotient by zero".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = AmbientIdeal::new(&self.ring, [f.clone()]);
        let meet = self.intersect(&principal);
        let gens = meet
            .gens
            .iter()
            .map(|g| {
                self.ring
                    .div_exact(g, f)
                    .expect("generators of U ∩ (f) are multiples of f")
            })
            .collect::<Vec<_>>();
        Ok(AmbientIdeal::new(&self.ring, gens))
    }

    /// `U : V`, the intersection of the quotients by each generator of `V`.
    pub fn quotient_ideal(&self, other: &AmbientIdeal) -> Result<AmbientIdeal> {
        let mut acc: Option<AmbientIdeal> = None;
        for g in &other.gens {
            let q = self.quotient(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.ok_or_else(|| EngineError::Precondition("ideal quotient by the zero ideal".into()))
    }

    /// `U : V^∞` by iterated quotients, with the least exponent `e` such
    /// that `U : V^e = U : V^(e+1)`.
    pub fn saturate(&self, other: &AmbientIdeal, cap: usize) -> Result<(AmbientIdeal, usize)> {
        let mut current = self.clone();
        for e in 0..cap {
            let next = current.quotient_ideal(other)?;
            if current.contains_ideal(&next) {
                return Ok((current, e));
            }
            current = next;
        }
        Err(EngineError::cap("saturation did not stabilize", cap))
    }

    /// `U : f^∞` through `(U, 1 - t f) ∩ k[x]`.
    pub fn saturate_element(&self, f: &Polynomial) -> AmbientIdeal {
        let n = self.ring.nvars();
        let ext = self.ring.extend(&[AUX]);
        let tf = ext.mul(&ext.var(n), &self.ring.embed_into(&ext, f));
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| self.ring.embed_into(&ext, g)).collect();
        gens.push(ext.sub(&ext.one(), &tf));
        self.eliminate_aux(&ext, gens, &[n])
    }

    /// `U ∩ k[remaining variables]`, expressed in this ring.
    pub fn eliminate(&self, drop: &[usize]) -> AmbientIdeal {
        let order = MonomialOrder::elimination(drop, self.ring.nvars());
        let gb = self.groebner_in(order);
        AmbientIdeal::new(
            &self.ring,
            gb.gens()
                .iter()
                .filter(|g| drop.iter().all(|&v| !g.involves(v)))
                .cloned(),
        )
    }

    /// Leading-term ideal for the ring's (global) order.
    pub fn leading_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), self.groebner().leading_monomials())
    }

    /// `dim_k k[x]/U` as the number of standard monomials.
    pub fn kdim_quotient(&self) -> Length {
        self.leading_ideal().standard_count()
    }

    /// `dim_k` of `k[x]/U` truncated at total degree `<= t`.
    pub fn affine_hilbert(&self, t: u64) -> Result<u64> {
        if !self.ring.order().is_degree_compatible() {
            return Err(EngineError::OrderNotDegreeCompatible);
        }
        Ok(self.leading_ideal().affine_hilbert(t))
    }

    /// Affine Hilbert series numerator over `(1 - t)^(s + 1)`.
    pub fn affine_numerator(&self) -> Result<SeriesNumerator> {
        if !self.ring.order().is_degree_compatible() {
            return Err(EngineError::OrderNotDegreeCompatible);
        }
        Ok(self.leading_ideal().hilbert_numerator())
    }

    /// True iff `U ⊆ (x_1, ..., x_s)`.
    pub fn contained_in_max_ideal(&self) -> bool {
        let gb = self.groebner();
        gb.gens().iter().all(|g| self.ring.constant_term(g).is_zero())
    }

    /// Leading ideal of `U k[x]_m` for the local degree order (lowest degree
    /// terms lead). Its standard monomials count local lengths: the number
    /// of standard monomials of degree `< n` is `ℓ(k[x]_m / (U + m^n))`.
    pub fn local_leading_ideal(&self) -> Arc<MonomialIdeal> {
        if let Some(l) = self.local.lock().unwrap().as_ref() {
            return l.clone();
        }
        let l = Arc::new(compute_local_leading_ideal(&self.ring, &self.gens));
        self.local.lock().unwrap().get_or_insert(l).clone()
    }

    /// Local length `ℓ(k[x]_m / U_m)`.
    pub fn local_colength(&self) -> Length {
        self.local_leading_ideal().standard_count()
    }

    /// `f ∈ U k[x]_m`, decided by `U : f ⊄ m`.
    pub fn locally_contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() || self.contains(f) {
            return Ok(true);
        }
        Ok(!self.quotient(f)?.contained_in_max_ideal())
    }

    pub fn locally_contains_ideal(&self, other: &AmbientIdeal) -> Result<bool> {
        for g in &other.gens {
            if !self.locally_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Product,
    Power(u32),
}

/// All products of `n` generators (with repetition).
pub fn power_generators(ring: &PolyRing, gens: &[Polynomial], n: u32) -> Vec<Polynomial> {
    let mut layer = vec![(0usize, ring.one())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, p) in &layer {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, ring.mul(p, g)));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|(_, p)| p).collect()
}

fn compute_local_leading_ideal(ring: &PolyRing, gens: &[Polynomial]) -> MonomialIdeal {
    let n = ring.nvars();
    if gens.iter().all(|g| g.is_homogeneous()) {
        // lowest-degree-first and highest-degree-first agree on forms
        let gb = groebner(&ring.with_order(MonomialOrder::DegRevLex), gens);
        return MonomialIdeal::new(n, gb.leading_monomials());
    }
    let ext = ring.extend(&[HOMOG]);
    let ext = ext.with_order(MonomialOrder::Homogenized { h: n });
    let homog: Vec<Polynomial> = gens.iter().map(|g| ring.homogenize(&ext, n, g)).collect();
    let gb = groebner(&ext, &homog);
    let keep: Vec<usize> = (0..n).collect();
    MonomialIdeal::new(
        n,
        gb.leading_monomials().iter().map(|m: &Monomial| m.project(&keep)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_from_names, Field};

    fn ring(names: &[&str]) -> PolyRing {
        ring_from_names(Field::Prime(101), names)
    }

    fn ideal(r: &PolyRing, gens: &[&str]) -> AmbientIdeal {
        AmbientIdeal::parse(r, gens).unwrap()
    }

    #[test]
    fn combine_examples() {
        let r = ring(&["x", "y"]);
        let x = ideal(&r, &["x"]);
        let y = ideal(&r, &["y"]);
        assert!(x.product(&y).equals(&ideal(&r, &["x*y"])));
        assert!(ideal(&r, &["x", "y"]).power(2).equals(&ideal(&r, &["x^2", "x*y", "y^2"])));
        assert!(ideal(&r, &["x^2"]).sum(&y).equals(&ideal(&r, &["x^2", "y"])));
        assert!(x.power(0).is_unit());
    }

    #[test]
    fn quotient_examples() {
        let r = ring(&["x", "y"]);
        for rr in 1..5 {
            let u = ideal(&r, &["x^2", &format!("x*y^{rr}")]);
            let q = u.quotient(&r.var(0)).unwrap();
            assert!(q.equals(&ideal(&r, &["x", &format!("y^{rr}")])));
        }
        let u = ideal(&r, &["x^2"]);
        assert!(u.quotient(&r.var(1)).unwrap().equals(&u));
        assert!(u.quotient(&r.one()).unwrap().equals(&u));
        assert!(u.quotient(&Polynomial::zero()).is_err());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let m = AmbientIdeal::maximal(&r);
        for rr in 1..5 {
            let u = ideal(&r, &["x^2", &format!("x*y^{rr}")]);
            let (sat, e) = u.saturate(&m, 64).unwrap();
            assert!(sat.equals(&ideal(&r, &["x"])));
            assert_eq!(e, rr as usize);
        }
        let (sat, e) = ideal(&r, &["x*y"]).saturate(&ideal(&r, &["x"]), 64).unwrap();
        assert!(sat.equals(&ideal(&r, &["y"])));
        assert_eq!(e, 1);
        let (sat, e) = ideal(&r, &["x"]).saturate(&ideal(&r, &["y"]), 64).unwrap();
        assert!(sat.equals(&ideal(&r, &["x"])));
        assert_eq!(e, 0);
        let v = ideal(&r, &["x*y^2", "x^3"]).saturate_element(&r.var(1));
        assert!(v.equals(&ideal(&r, &["x"])));
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "x", "y"]);
        let e = ideal(&r, &["t - x", "y - t^2"]).eliminate(&[0]);
        assert!(e.equals(&ideal(&r, &["y - x^2"])));
        let r2 = ring(&["x", "y"]);
        assert!(ideal(&r2, &["x"]).eliminate(&[1]).equals(&ideal(&r2, &["x"])));
        let e = ideal(&r, &["t*x - 1", "y"]).eliminate(&[0]);
        assert!(e.equals(&ideal(&r, &["y"])));
    }

    #[test]
    fn kdim_and_affine_hilbert() {
        let r = ring(&["x", "y"]);
        assert_eq!(ideal(&r, &["x^2", "x*y^3", "y"]).kdim_quotient(), Length::Finite(2));
        assert_eq!(ideal(&r, &["x^2"]).kdim_quotient(), Length::Infinite);
        let r1 = ring(&["x"]);
        assert_eq!(ideal(&r1, &["x^5"]).kdim_quotient(), Length::Finite(5));
        assert_eq!(ideal(&r, &["x^2", "x*y", "y^2"]).affine_hilbert(5).unwrap(), 3);
        assert_eq!(AmbientIdeal::zero(&r).affine_hilbert(2).unwrap(), 6);
        let lex = r.with_order(MonomialOrder::Lex);
        assert_eq!(
            AmbientIdeal::zero(&lex).affine_hilbert(2),
            Err(EngineError::OrderNotDegreeCompatible)
        );
    }

    #[test]
    fn max_ideal_containment() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x^2", "y"]).contained_in_max_ideal());
        assert!(!ideal(&r, &["x - 1"]).contained_in_max_ideal());
        assert!(!AmbientIdeal::unit(&r).contained_in_max_ideal());
    }

    #[test]
    fn local_lengths_ignore_points_away_from_origin() {
        let r = ring(&["x", "y"]);
        // x(x-1) = 0, y^2 = 0: two points, each of length 2
        let u = ideal(&r, &["x^2 - x", "y^2"]);
        assert_eq!(u.kdim_quotient(), Length::Finite(4));
        assert_eq!(u.local_colength(), Length::Finite(2));
        // a curve through the origin
        assert_eq!(ideal(&r, &["x - y^2 - x^3"]).local_colength(), Length::Infinite);
        // unit locally
        assert_eq!(ideal(&r, &["x - 1"]).local_colength(), Length::Finite(0));
        assert!(ideal(&r, &["x*(1 + y)"]).locally_contains(&r.var(0)).unwrap());
        assert!(!ideal(&r, &["x*y"]).locally_contains(&r.var(0)).unwrap());
    }
}
