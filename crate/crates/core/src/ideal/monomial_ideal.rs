//! Monomial ideals and their Hilbert series, counted through the
//! standard pivot recursion `N(M) = N(M + (p)) + t^deg(p) N(M : p)`.

use serde::{Deserialize, Serialize};

use crate::poly::Monomial;

/// A dimension count that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// A univariate integer polynomial in `t`, low degree first.
pub type SeriesNumerator = Vec<i128>;

/// A monomial ideal kept as a minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Vec<u16>>,
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn poly_sub(a: &mut SeriesNumerator, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

fn poly_add_shift(a: &mut SeriesNumerator, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn trim(mut p: SeriesNumerator) -> SeriesNumerator {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn numerator(gens: Vec<Vec<u16>>, nvars: usize) -> SeriesNumerator {
    let gens = minimize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![];
    }
    // pairwise coprime generators: product formula
    let mut used = vec![false; nvars];
    let mut coprime = true;
    'scan: for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                if used[i] {
                    coprime = false;
                    break 'scan;
                }
                used[i] = true;
            }
        }
    }
    if coprime {
        let mut acc: SeriesNumerator = vec![1];
        for g in &gens {
            let d: usize = g.iter().map(|&e| e as usize).sum();
            let mut next = acc.clone();
            poly_sub(&mut next, &acc, d);
            acc = next;
        }
        return trim(acc);
    }
    // pivot on the variable occurring in the most non-pure generators
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        if g.iter().filter(|&&e| e > 0).count() > 1 {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    counts[i] += 1;
                }
            }
        }
    }
    let var = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    // exponents from mixed generators stay below any pure power of `var`
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g[var] > 0 && g.iter().filter(|&&e| e > 0).count() > 1)
        .map(|g| g[var])
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pivot = vec![0u16; nvars];
    pivot[var] = e;

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[var] = h[var].saturating_sub(e);
            h
        })
        .collect();
    let mut acc = numerator(with_pivot, nvars);
    let inner = numerator(colon, nvars);
    poly_add_shift(&mut acc, &inner, e as usize);
    trim(acc)
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Divides by `(1 - t)` if exact.
fn div_one_minus_t(p: &[i128]) -> Option<SeriesNumerator> {
    if p.is_empty() {
        return Some(vec![]);
    }
    if p.iter().sum::<i128>() != 0 {
        return None;
    }
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0i128;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    Some(trim(q))
}

/// Coefficient of `t^k` in `num / (1 - t)^n`.
pub fn series_coefficient(num: &[i128], n: usize, k: u64) -> i128 {
    let k = k as i128;
    num.iter()
        .enumerate()
        .map(|(j, &c)| {
            let j = j as i128;
            if j > k {
                0
            } else if n == 0 {
                if j == k {
                    c
                } else {
                    0
                }
            } else {
                c * binom(k - j + n as i128 - 1, n as i128 - 1)
            }
        })
        .sum()
}

/// Total of the finite series `num / (1 - t)^n`, or `None` when it is not
/// a polynomial (infinitely many terms).
pub fn series_total(num: &[i128], n: usize) -> Option<i128> {
    let mut p = trim(num.to_vec());
    for _ in 0..n {
        p = div_one_minus_t(&p)?;
    }
    Some(p.iter().sum())
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let gens = gens.into_iter().map(|m| m.exps().to_vec()).collect();
        MonomialIdeal {
            nvars,
            gens: minimize(gens),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| Monomial::from_exps(&g.iter().map(|&e| e as u32).collect::<Vec<_>>()))
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| divides(g, m.exps()))
    }

    /// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^nvars` of the
    /// quotient by this ideal.
    pub fn hilbert_numerator(&self) -> SeriesNumerator {
        numerator(self.gens.clone(), self.nvars)
    }

    /// Number of standard monomials.
    pub fn standard_count(&self) -> Length {
        if !self.is_zero_dimensional() {
            return Length::Infinite;
        }
        let total = series_total(&self.hilbert_numerator(), self.nvars)
            .expect("zero-dimensional quotient has a polynomial Hilbert series");
        Length::Finite(total as u64)
    }

    /// Whether some pure power of every variable lies in the ideal.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        (0..self.nvars).all(|i| {
            self.gens
                .iter()
                .any(|g| g[i] > 0 && g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
    }

    /// Krull dimension of the quotient; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        let mut p = self.hilbert_numerator();
        if p.is_empty() {
            return None;
        }
        let mut d = self.nvars;
        while d > 0 {
            match div_one_minus_t(&p) {
                Some(q) => {
                    p = q;
                    d -= 1;
                }
                None => break,
            }
        }
        Some(d)
    }

    /// Number of standard monomials of degree exactly `k`.
    pub fn hilbert_function(&self, k: u64) -> u64 {
        series_coefficient(&self.hilbert_numerator(), self.nvars, k) as u64
    }

    /// Number of standard monomials of degree at most `t`.
    pub fn affine_hilbert(&self, t: u64) -> u64 {
        series_coefficient(&self.hilbert_numerator(), self.nvars + 1, t) as u64
    }

    /// Largest degree of a standard monomial, if there are finitely many
    /// and at least one.
    pub fn max_standard_degree(&self) -> Option<u64> {
        if self.is_unit() || !self.is_zero_dimensional() {
            return None;
        }
        let mut p = self.hilbert_numerator();
        for _ in 0..self.nvars {
            p = div_one_minus_t(&p)?;
        }
        let p = trim(p);
        if p.is_empty() {
            None
        } else {
            Some(p.len() as u64 - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|g| Monomial::from_exps(g)))
    }

    /// Brute-force count of standard monomials of degree <= bound.
    fn brute(ideal: &MonomialIdeal, bound: u32) -> Vec<u64> {
        let n = ideal.nvars();
        let mut counts = vec![0u64; bound as usize + 1];
        let mut stack = vec![vec![]];
        while let Some(v) = stack.pop() {
            let used: u32 = v.iter().sum();
            if v.len() == n {
                let m = Monomial::from_exps(&v);
                if !ideal.contains(&m) {
                    counts[used as usize] += 1;
                }
                continue;
            }
            for e in 0..=(bound - used) {
                let mut w = v.clone();
                w.push(e);
                stack.push(w);
            }
        }
        counts
    }

    #[test]
    fn hilbert_function_matches_enumeration() {
        let cases = [
            mi(2, &[&[2, 0], &[1, 3]]),
            mi(3, &[&[1, 1, 0], &[1, 0, 1]]),
            mi(3, &[&[2, 1, 0], &[0, 2, 2], &[1, 1, 1], &[3, 0, 0]]),
            mi(2, &[]),
        ];
        for ideal in &cases {
            let counts = brute(ideal, 9);
            for (k, &c) in counts.iter().enumerate() {
                assert_eq!(ideal.hilbert_function(k as u64), c, "{ideal:?} deg {k}");
            }
        }
    }

    #[test]
    fn standard_counts() {
        assert_eq!(mi(2, &[&[2, 0], &[1, 3], &[0, 1]]).standard_count(), Length::Finite(2));
        assert_eq!(mi(1, &[&[5]]).standard_count(), Length::Finite(5));
        assert_eq!(mi(2, &[&[2, 0]]).standard_count(), Length::Infinite);
        assert_eq!(mi(2, &[&[0, 0]]).standard_count(), Length::Finite(0));
    }

    #[test]
    fn dimensions() {
        assert_eq!(mi(3, &[&[1, 1, 0], &[1, 0, 1]]).dimension(), Some(2));
        assert_eq!(mi(2, &[&[2, 0], &[1, 3]]).dimension(), Some(1));
        assert_eq!(mi(2, &[]).dimension(), Some(2));
        assert_eq!(mi(2, &[&[0, 0]]).dimension(), None);
        assert_eq!(mi(2, &[&[1, 0], &[0, 4]]).dimension(), Some(0));
    }

    #[test]
    fn affine_hilbert_examples() {
        assert_eq!(mi(2, &[&[2, 0], &[1, 1], &[0, 2]]).affine_hilbert(5), 3);
        assert_eq!(mi(2, &[]).affine_hilbert(2), 6);
        // (x^2, x y^r): y-powers plus x*y^{<r}
        let r = 3;
        let ideal = mi(2, &[&[2, 0], &[1, r]]);
        for t in (r as u64 + 1)..12 {
            assert_eq!(ideal.affine_hilbert(t), (t + 1) + r as u64);
        }
    }

    #[test]
    fn max_standard_degree() {
        assert_eq!(mi(2, &[&[1, 0], &[0, 3]]).max_standard_degree(), Some(2));
        assert_eq!(mi(2, &[&[0, 0]]).max_standard_degree(), None);
    }
}
