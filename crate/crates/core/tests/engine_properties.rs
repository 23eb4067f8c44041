//! Randomized oracles for the polynomial and ideal kernel: small ideals in
//! at most three variables with generators of degree at most four.

use gcmwb_core::ideal::{AmbientIdeal, Length};
use gcmwb_core::poly::{Field, MonomialOrder, PolyRing, Polynomial};
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn ring(nvars: usize, order: MonomialOrder) -> PolyRing {
    PolyRing::new(Field::Prime(101), NAMES[..nvars].iter().map(|s| s.to_string()).collect(), order)
}

/// Terms `(coefficient, exponents)` with total degree at most 4.
type Terms = Vec<(i64, [u32; 3])>;

fn terms(nvars: usize, max_terms: usize) -> impl Strategy<Value = Terms> {
    let exps = prop::array::uniform3(0u32..=4).prop_map(move |mut e| {
        for i in nvars..3 {
            e[i] = 0;
        }
        while e.iter().sum::<u32>() > 4 {
            let i = e.iter().position(|&x| x > 0).unwrap();
            e[i] -= 1;
        }
        e
    });
    prop::collection::vec((-20i64..=20, exps), 1..=max_terms)
}

fn text(ts: &Terms) -> String {
    let mut parts = Vec::new();
    for (c, e) in ts {
        let mut s = format!("({c})");
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                s.push_str(&format!("*{}^{k}", NAMES[i]));
            }
        }
        parts.push(s);
    }
    parts.join(" + ")
}

fn poly(r: &PolyRing, ts: &Terms) -> Polynomial {
    r.parse(&text(ts)).unwrap()
}

/// A random ideal: `(nvars, generators)`.
fn ideal_input() -> impl Strategy<Value = (usize, Vec<Terms>)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(terms(n, 3), 1..=3)))
}

fn build(r: &PolyRing, gens: &[Terms]) -> AmbientIdeal {
    AmbientIdeal::new(r, gens.iter().map(|g| poly(r, g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(f in terms(3, 4), g in terms(3, 4), h in terms(3, 4)) {
        let r = ring(3, MonomialOrder::DegRevLex);
        let (f, g, h) = (poly(&r, &f), poly(&r, &g), poly(&r, &h));
        prop_assert_eq!(r.mul(&r.add(&f, &g), &h), r.add(&r.mul(&f, &h), &r.mul(&g, &h)));
        prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
        prop_assert_eq!(r.add(&f, &r.neg(&f)), r.zero());
        prop_assert_eq!(r.parse(&r.display(&f)).unwrap(), f);
    }

    #[test]
    fn membership_is_sound((n, gens) in ideal_input(), cofactors in prop::collection::vec(terms(3, 2), 3), probe in terms(3, 3)) {
        let r = ring(n, MonomialOrder::DegRevLex);
        let i = build(&r, &gens);
        let mut combo = r.zero();
        for (g, c) in i.gens().iter().zip(&cofactors) {
            let c = r.parse(&text(&c.iter().map(|&(k, mut e)| { for j in n..3 { e[j] = 0; } (k, e) }).collect())).unwrap();
            combo = r.add(&combo, &r.mul(g, &c));
        }
        prop_assert!(i.contains(&combo));
        for g in i.gens() {
            prop_assert!(i.contains(g));
        }
        let p: Terms = probe.into_iter().map(|(k, mut e)| { for j in n..3 { e[j] = 0; } (k, e) }).collect();
        let p = poly(&r, &p);
        let nf = i.normal_form(&p);
        prop_assert!(i.contains(&r.sub(&p, &nf)));
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert_eq!(i.contains(&p), nf.is_zero());
        // Membership does not depend on the order used for the basis.
        let lex = i.groebner_in(MonomialOrder::Lex);
        prop_assert_eq!(lex.contains(&r.with_order(MonomialOrder::Lex).adopt(&p)), nf.is_zero());
    }

    #[test]
    fn quotient_and_saturation_laws((n, gens) in ideal_input(), f in terms(3, 2), g in terms(3, 2)) {
        let r = ring(n, MonomialOrder::DegRevLex);
        let strip = |t: &Terms| -> Polynomial {
            poly(&r, &t.iter().map(|&(k, mut e)| { for j in n..3 { e[j] = 0; } (k, e) }).collect())
        };
        let (f, g) = (strip(&f), strip(&g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let i = build(&r, &gens);
        let q = i.quotient(&f).unwrap();
        prop_assert!(q.contains_ideal(&i));
        for h in q.gens() {
            prop_assert!(i.contains(&r.mul(h, &f)));
        }
        // (I : f) : g = I : fg
        prop_assert!(q.quotient(&g).unwrap().equals(&i.quotient(&r.mul(&f, &g)).unwrap()));
        // I : f^oo is stable under a further colon by f, and both routes agree.
        let sat = i.saturate_element(&f);
        prop_assert!(sat.quotient(&f).unwrap().equals(&sat));
        let (sat2, e) = i.saturate(&AmbientIdeal::new(&r, [f.clone()]), 64).unwrap();
        prop_assert!(sat.equals(&sat2));
        prop_assert!(i.quotient(&r.pow(&f, e as u32)).unwrap().equals(&sat));
    }

    #[test]
    fn finite_colengths_do_not_depend_on_the_order((n, gens) in ideal_input()) {
        let r = ring(n, MonomialOrder::DegRevLex);
        let mut i = build(&r, &gens);
        // Pure powers make the quotient finite and supported at the origin.
        i = i.with((0..n).map(|v| r.pow(&r.var(v), 4)));
        let grevlex = i.kdim_quotient();
        prop_assert!(matches!(grevlex, Length::Finite(_)));
        let mut orders = vec![MonomialOrder::Lex];
        if n >= 2 {
            orders.push(MonomialOrder::elimination(&[0], n));
            orders.push(MonomialOrder::elimination(&[n - 1], n));
        }
        for order in orders {
            let ro = r.with_order(order);
            let io = AmbientIdeal::new(&ro, i.gens().iter().map(|g| ro.adopt(g)));
            prop_assert_eq!(io.kdim_quotient(), grevlex);
        }
        prop_assert_eq!(i.local_colength(), grevlex);
    }
}
