//! The Rees algebra `R_Q(A) = A[T_1..T_d]/ℑ` and the relation type of `Q`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::ideal::{groebner, AmbientIdeal};
use crate::local::{LocalRing, ParameterSystem};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesPresentation {
    /// Ring variables followed by `T1..Td`.
    pub variables: Vec<String>,
    /// Minimal generators of `ℑ` of positive `T`-degree, lowest degree first.
    pub generators: Vec<String>,
    pub degrees: Vec<u32>,
    pub reltype: u32,
}

fn t_names(d: usize) -> Vec<String> {
    (1..=d).map(|j| format!("T{j}")).collect()
}

/// Splits `f` into its `T`-homogeneous components.
fn t_components(f: &Polynomial, ring: &PolyRing, t_vars: &[usize]) -> BTreeMap<u32, Polynomial> {
    let mut parts: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for (m, c) in f.terms() {
        parts.entry(m.partial_degree(t_vars)).or_default().push((m.clone(), c.clone()));
    }
    parts.into_iter().map(|(k, terms)| (k, ring.from_terms(terms))).collect()
}

/// `f ∈ U · k[x]_m[T]`: some `s ∉ m` of `k[x]` has `s f ∈ U`.
fn locally_in(u: &AmbientIdeal, f: &Polynomial, t_vars: &[usize]) -> Result<bool> {
    if u.contains(f) {
        return Ok(true);
    }
    let colon = u.quotient(f)?.eliminate(t_vars);
    Ok(!colon.contained_in_max_ideal())
}

/// Computes `ℑ` by eliminating `t` from `I + (T_j - t x_j)` and extracts
/// minimal generators degree by degree. A candidate of `T`-degree `n` is
/// kept unless it lies, locally, in the ideal generated by `I` and the
/// generators kept so far.
pub fn rees_presentation(a: &LocalRing, q: &ParameterSystem) -> Result<ReesPresentation> {
    if !q.is_full() {
        return Err(EngineError::Precondition("a full system of parameters is required".into()));
    }
    let ring = a.ring();
    let s = ring.nvars();
    let d = q.len();
    let names = t_names(d);
    let mut extra: Vec<String> = names.iter().map(|n| format!("__{n}")).collect();
    extra.push("__t".into());
    let extra_refs: Vec<&str> = extra.iter().map(|x| x.as_str()).collect();
    let big = ring.extend(&extra_refs);
    let t = s + d;
    let t_vars: Vec<usize> = (s..s + d).collect();
    let mut gens: Vec<Polynomial> = a.defining_ideal().gens().iter().map(|g| ring.embed_into(&big, g)).collect();
    for (j, x) in q.elements().iter().enumerate() {
        let tx = big.mul(&big.var(t), &ring.embed_into(&big, x));
        gens.push(big.sub(&big.var(s + j), &tx));
    }
    let order = MonomialOrder::Block(vec![vec![t], t_vars.clone(), (0..s).collect()]);
    let gb = groebner(&big.with_order(order), &gens);

    let xt = ring.extend(&extra_refs[..d]);
    let keep: Vec<usize> = (0..s + d).collect();
    let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for g in gb.gens().iter().filter(|g| !g.involves(t)) {
        let g = big.project_into(&xt, &keep, g);
        for (k, part) in t_components(&g, &xt, &t_vars) {
            if k > 0 {
                by_degree.entry(k).or_default().push(xt.monic(&part));
            }
        }
    }

    let mut kept: Vec<(u32, Polynomial)> = Vec::new();
    let base: Vec<Polynomial> = a.defining_ideal().gens().iter().map(|g| ring.embed_into(&xt, g)).collect();
    for (k, mut candidates) in by_degree {
        candidates.sort_by(|f, g| match (f.leading_monomial(), g.leading_monomial()) {
            (Some(a), Some(b)) => xt.compare(a, b),
            _ => std::cmp::Ordering::Equal,
        });
        candidates.dedup();
        for f in candidates {
            let u = AmbientIdeal::new(&xt, base.iter().cloned().chain(kept.iter().map(|(_, g)| g.clone())));
            if !locally_in(&u, &f, &t_vars)? {
                kept.push((k, f));
            }
        }
    }

    let mut variables: Vec<String> = ring.names().to_vec();
    variables.extend(names.iter().cloned());
    let display_ring = PolyRing::new(ring.field().clone(), variables.clone(), MonomialOrder::DegRevLex);
    Ok(ReesPresentation {
        variables,
        generators: kept.iter().map(|(_, g)| display_ring.display(&display_ring.adopt(g))).collect(),
        degrees: kept.iter().map(|(k, _)| *k).collect(),
        reltype: kept.iter().map(|(k, _)| *k).max().unwrap_or(1).max(1),
    })
}

/// Relation type of a principal parameter ideal `(x)`: the Rees algebra is
/// `A[T]/(z Tⁿ : z ∈ 0 :_A xⁿ)`, so new relations appear exactly where the
/// chain `0 : xⁿ` grows.
pub fn reltype_principal(a: &LocalRing, x: &Polynomial, cap: usize) -> Result<u32> {
    let (_, e) = a.defining_ideal().saturate(&a.ideal([x.clone()]), cap)?;
    Ok((e as u32).max(1))
}
