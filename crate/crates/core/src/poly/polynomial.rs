use std::cmp::Ordering;
use std::fmt::Write;

use super::coeff::{Coefficient, Field};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{EngineError, Result};

/// A polynomial as a list of terms sorted in descending order for the ring
/// it was built in. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coefficient)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Coefficient)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Coefficient> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn without_leading(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// Whether any term involves variable `i`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }
}

/// The ambient ring `k[x_1..x_s]` with an active monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, names: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            names,
            order,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same field and variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing {
            field: self.field.clone(),
            names: self.names.clone(),
            order,
        }
    }

    /// Appends fresh variables; the order is reset to degrevlex.
    pub fn extend(&self, extra: &[&str]) -> PolyRing {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.to_string()));
        PolyRing::new(self.field.clone(), names, MonomialOrder::DegRevLex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Sorts and merges arbitrary terms into canonical form.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Coefficient)>) -> Polynomial {
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coefficient)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
            if out.last().map(|(_, c)| c.is_zero()).unwrap_or(false) {
                out.pop();
            }
        }
        // merging may leave zeros that were followed by equal monomials
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial (possibly built in another order) for this ring.
    pub fn adopt(&self, p: &Polynomial) -> Polynomial {
        let mut terms = p.terms.clone();
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn is_canonical(&self, p: &Polynomial) -> bool {
        p.terms.iter().all(|(m, c)| !c.is_zero() && m.nvars() == self.nvars())
            && p
                .terms
                .windows(2)
                .all(|w| self.order.compare(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn constant(&self, c: Coefficient) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn from_i64(&self, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial {
            terms: vec![(Monomial::var(self.nvars(), i), self.field.one())],
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial {
            terms: vec![(m, self.field.one())],
        }
    }

    pub fn constant_term(&self, p: &Polynomial) -> Coefficient {
        p.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        match p.terms.first() {
            Some((m, _)) if m.nvars() != self.nvars() => Err(EngineError::MismatchedRings),
            _ => Ok(()),
        }
    }

    /// Checked arithmetic entry point for polynomials of unknown provenance.
    pub fn arith(&self, a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    /// `a + coef * mono * b`, the workhorse of every reduction.
    pub fn add_scaled(
        &self,
        a: &Polynomial,
        coef: &Coefficient,
        mono: &Monomial,
        b: &Polynomial,
    ) -> Polynomial {
        if coef.is_zero() || b.is_zero() {
            return a.clone();
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut ia = a.terms.iter().peekable();
        let mut ib = b
            .terms
            .iter()
            .map(|(m, c)| (m.mul(mono), f.mul(c, coef)))
            .peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => self.order.compare(ma, mb),
            };
            match ord {
                Ordering::Greater => out.push(ia.next().unwrap().clone()),
                Ordering::Less => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (m, ca) = ia.next().unwrap();
                    let (_, cb) = ib.next().unwrap();
                    let c = f.add(ca, &cb);
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.add_scaled(a, &self.field.one(), &Monomial::one(self.nvars()), b)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let minus = self.field.neg(&self.field.one());
        self.add_scaled(a, &minus, &Monomial::one(self.nvars()), b)
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        self.scale(a, &self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, a: &Polynomial, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), self.field.mul(d, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, a: &Polynomial, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: a.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = self.add_scaled(&acc, c, m, big);
        }
        acc
    }

    pub fn pow(&self, a: &Polynomial, n: u32) -> Polynomial {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, a: &Polynomial) -> Polynomial {
        match a.leading_coefficient() {
            None => Polynomial::zero(),
            Some(c) if c.is_one() => a.clone(),
            Some(c) => self.scale(a, &self.field.inv(c).unwrap()),
        }
    }

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    pub fn div_exact(&self, a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
        let (lb, lcb) = (b.leading_monomial()?, b.leading_coefficient()?);
        let inv = self.field.inv(lcb)?;
        let mut rem = a.clone();
        let mut quo = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lb.divide_into(&m)?;
            let qc = self.field.mul(&c, &inv);
            rem = self.add_scaled(&rem, &self.field.neg(&qc), &q, b);
            quo.push((q, qc));
        }
        Some(Polynomial { terms: quo })
    }

    /// Embeds into a ring with `k` extra trailing variables.
    pub fn embed_into(&self, target: &PolyRing, p: &Polynomial) -> Polynomial {
        let k = target.nvars() - self.nvars();
        target.from_terms(p.terms.iter().map(|(m, c)| (m.extend(k), c.clone())).collect())
    }

    /// Maps a polynomial that only involves `keep` into `target`, whose
    /// variables are `keep` in order.
    pub fn project_into(&self, target: &PolyRing, keep: &[usize], p: &Polynomial) -> Polynomial {
        target.from_terms(p.terms.iter().map(|(m, c)| (m.project(keep), c.clone())).collect())
    }

    /// Substitutes polynomials of `target` for each variable of `self`.
    pub fn substitute(&self, target: &PolyRing, p: &Polynomial, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &p.terms {
            let mut t = target.constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = target.mul(&t, &target.pow(img, e));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Homogenizes with respect to the extra variable `h` of `target`.
    pub fn homogenize(&self, target: &PolyRing, h: usize, p: &Polynomial) -> Polynomial {
        let top = p.total_degree().unwrap_or(0);
        target.from_terms(
            p.terms
                .iter()
                .map(|(m, c)| {
                    let mut e: Vec<u32> = m.exps().iter().map(|&x| x as u32).collect();
                    e.insert(h, top - m.degree());
                    (Monomial::from_exps(&e), c.clone())
                })
                .collect(),
        )
    }

    pub fn display(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in p.terms.iter().enumerate() {
            let neg = c.is_negative_display(&self.field);
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs_display(&self.field);
            let mut factors: Vec<String> = Vec::new();
            if abs != "1" || m.is_one() {
                factors.push(abs);
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring_from_names;

    #[test]
    fn binomial_square_over_rationals() {
        let r = ring_from_names(Field::Rational, &["x", "y"]);
        let s = r.add(&r.var(0), &r.var(1));
        let sq = r.arith(&s, &s, ArithOp::Mul).unwrap();
        assert_eq!(r.display(&sq), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = ring_from_names(Field::Prime(2), &["x", "y"]);
        let s = r.add(&r.var(0), &r.var(1));
        assert_eq!(r.display(&r.mul(&s, &s)), "x^2 + y^2");
    }

    #[test]
    fn mismatched_rings_rejected() {
        let r2 = ring_from_names(Field::Prime(101), &["x", "y"]);
        let r3 = ring_from_names(Field::Prime(101), &["x", "y", "z"]);
        assert_eq!(
            r2.arith(&r2.var(0), &r3.var(2), ArithOp::Add),
            Err(EngineError::MismatchedRings)
        );
    }

    #[test]
    fn constant_term_examples() {
        let r = ring_from_names(Field::Prime(101), &["x", "y"]);
        let p = r.parse("x^2 + 3").unwrap();
        assert_eq!(r.constant_term(&p), r.field().from_i64(3));
        assert!(r.constant_term(&r.parse("x + y").unwrap()).is_zero());
        assert!(r.constant_term(&Polynomial::zero()).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring_from_names(Field::Prime(101), &["x", "y"]);
        let f = r.parse("x - y").unwrap();
        let g = r.parse("x^3 - y^3").unwrap();
        assert_eq!(r.display(&r.div_exact(&g, &f).unwrap()), "x^2 + x*y + y^2");
        assert!(r.div_exact(&r.var(0), &r.var(1)).is_none());
    }
}
