//! Buchberger's algorithm with the normal selection strategy and the
//! product and chain criteria.

use std::collections::BTreeSet;

use crate::poly::{Monomial, PolyRing, Polynomial};

/// A reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Full remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(&self.ring, f, &self.gens)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Fully reduces `f` by `basis` (every term, not just the leading one).
pub fn reduce(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = ring.field();
    let mut p = ring.adopt(f);
    let mut rem: Vec<(Monomial, crate::poly::Coefficient)> = Vec::new();
    'outer: while let Some((m, c)) = p.terms().first().cloned() {
        for g in basis {
            let lm = g.leading_monomial().unwrap();
            if let Some(q) = lm.divide_into(&m) {
                let coef = field.neg(&field.div(&c, g.leading_coefficient().unwrap()));
                p = ring.add_scaled(&p, &coef, &q, g);
                continue 'outer;
            }
        }
        rem.push((m, c));
        p = p.without_leading();
    }
    // rem was collected in descending order already
    ring.from_terms(rem)
}

fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let field = ring.field();
    let uf = lf.divide_into(&l).unwrap();
    let ug = lg.divide_into(&l).unwrap();
    // both inputs are monic
    let a = ring.mul_monomial(f, &uf);
    let minus = field.neg(&field.one());
    ring.add_scaled(&a, &minus, &ug, g)
}

/// Computes the reduced Gröbner basis of `gens` for the order of `ring`.
pub fn groebner(ring: &PolyRing, gens: &[Polynomial]) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut input: Vec<Polynomial> = gens
        .iter()
        .map(|g| ring.monic(&ring.adopt(g)))
        .filter(|g| !g.is_zero())
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return unit_basis(ring);
    }
    input.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();

    // pending pairs keyed by (lcm, i, j) in ascending order: normal strategy
    let mut pending: BTreeSet<(SortKey, usize, usize)> = BTreeSet::new();
    let mut lms: Vec<Monomial> = Vec::new();

    let add = |basis: &mut Vec<Polynomial>,
                   lms: &mut Vec<Monomial>,
                   pending: &mut BTreeSet<(SortKey, usize, usize)>,
                   h: Polynomial| {
        let n = basis.len();
        let lh = h.leading_monomial().unwrap().clone();
        for (i, lm) in lms.iter().enumerate() {
            pending.insert((SortKey::new(ring, lm.lcm(&lh)), i, n));
        }
        basis.push(h);
        lms.push(lh);
    };

    for g in input {
        let h = ring.monic(&reduce(ring, &g, &basis));
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit_basis(ring);
        }
        add(&mut basis, &mut lms, &mut pending, h);
    }

    while let Some(entry) = pending.iter().next().cloned() {
        pending.remove(&entry);
        let (key, i, j) = entry;
        let l = &key.mono;
        if lms[i].coprime(&lms[j]) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(l)
                && !has_pair(&pending, &lms, ring, i, k)
                && !has_pair(&pending, &lms, ring, j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(ring, &basis[i], &basis[j]);
        let h = ring.monic(&reduce(ring, &s, &basis));
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit_basis(ring);
        }
        add(&mut basis, &mut lms, &mut pending, h);
    }
    GroebnerBasis {
        ring: ring.clone(),
        gens: interreduce(ring, basis),
        reduced: true,
    }
}

fn has_pair(
    pending: &BTreeSet<(SortKey, usize, usize)>,
    lms: &[Monomial],
    ring: &PolyRing,
    a: usize,
    b: usize,
) -> bool {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    pending.contains(&(SortKey::new(ring, lms[i].lcm(&lms[j])), i, j))
}

fn unit_basis(ring: &PolyRing) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        gens: vec![ring.one()],
        reduced: true,
    }
}

fn interreduce(ring: &PolyRing, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let g = &minimal[i];
        // the leading term is irreducible by a minimal basis; reduce the tail
        let (lm, lc) = (g.leading_monomial().unwrap(), g.leading_coefficient().unwrap());
        let lead = ring.from_terms(vec![(lm.clone(), lc.clone())]);
        let tail = ring.sub(g, &lead);
        let red = ring.add(&lead, &reduce(ring, &tail, &others));
        out.push(ring.monic(&red));
    }
    out.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

/// A monomial ordered by the ring's monomial order, for use in ordered sets.
#[derive(Clone, Debug)]
struct SortKey {
    mono: Monomial,
    order: crate::poly::MonomialOrder,
}

impl SortKey {
    fn new(ring: &PolyRing, mono: Monomial) -> Self {
        SortKey {
            mono,
            order: ring.order().clone(),
        }
    }
}

impl PartialEq for SortKey {
    fn eq(&self, other: &Self) -> bool {
        self.mono == other.mono
    }
}
impl Eq for SortKey {}
impl PartialOrd for SortKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SortKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order.compare(&self.mono, &other.mono)
    }
}

/// Buchberger criterion check: every S-polynomial reduces to zero.
pub fn is_groebner(ring: &PolyRing, gens: &[Polynomial]) -> bool {
    let monic: Vec<Polynomial> = gens.iter().map(|g| ring.monic(g)).collect();
    for i in 0..monic.len() {
        for j in (i + 1)..monic.len() {
            let s = s_polynomial(ring, &monic[i], &monic[j]);
            if !reduce(ring, &s, &monic).is_zero() {
                return false;
            }
        }
    }
    true
}
