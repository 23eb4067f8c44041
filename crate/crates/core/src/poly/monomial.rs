use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// An exponent vector with its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    /// Panics when an exponent does not fit the machine representation.
    pub fn from_exps(exps: &[u32]) -> Self {
        let exps: SmallVec<[u16; 8]> = exps
            .iter()
            .map(|&e| u16::try_from(e).expect("exponent overflow"))
            .collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| {
                u16::try_from(a as u32 * n).expect("exponent overflow")
            })
            .collect();
        Monomial {
            exps,
            degree: self.degree * n,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends `k` zero exponents.
    pub fn extend(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(k));
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Keeps only the listed variables, in the listed order.
    pub fn project(&self, keep: &[usize]) -> Monomial {
        let exps: SmallVec<[u16; 8]> = keep.iter().map(|&i| self.exps[i]).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    /// Degree in a subset of the variables.
    pub fn partial_degree(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i] as u32).sum()
    }

    /// Whether this is `x_i^e` for some `i` and `e > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// A monomial order on a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Blocks compared one after the other, each by degrevlex restricted to
    /// its variables. The blocks must partition the variables.
    Block(Vec<Vec<usize>>),
    /// Total degree, then larger exponent of variable `h`, then degrevlex.
    /// Dehomogenizing a basis for this order at `h = 1` yields a standard
    /// basis for the local degree order in the remaining variables.
    Homogenized { h: usize },
}

fn revlex_tail(a: &[u16], b: &[u16], vars: impl DoubleEndedIterator<Item = usize>) -> Ordering {
    for i in vars.rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Elimination order with `front` variables compared first.
    pub fn elimination(front: &[usize], nvars: usize) -> MonomialOrder {
        let rest: Vec<usize> = (0..nvars).filter(|i| !front.contains(i)).collect();
        MonomialOrder::Block(vec![front.to_vec(), rest])
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a
                .degree
                .cmp(&b.degree)
                .then_with(|| revlex_tail(&a.exps, &b.exps, 0..a.nvars())),
            MonomialOrder::Block(blocks) => {
                for block in blocks {
                    let o = a
                        .partial_degree(block)
                        .cmp(&b.partial_degree(block))
                        .then_with(|| revlex_tail(&a.exps, &b.exps, block.iter().copied()));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Homogenized { h } => a
                .degree
                .cmp(&b.degree)
                .then_with(|| a.exps[*h].cmp(&b.exps[*h]))
                .then_with(|| revlex_tail(&a.exps, &b.exps, 0..a.nvars())),
        }
    }

    /// Whether the order refines total degree.
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::DegRevLex | MonomialOrder::Homogenized { .. } => true,
            MonomialOrder::Lex => false,
            MonomialOrder::Block(blocks) => blocks.iter().filter(|b| !b.is_empty()).count() <= 1,
        }
    }
}
