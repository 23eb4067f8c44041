//! Acceptance checks. Each test prints one `criterion N: PASS|FAIL` line
//! straight to stderr so it shows even when output is captured.

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use gcmwb_core::bounds::Verdict;
use gcmwb_core::config::EngineConfig;
use gcmwb_core::graded::{hilbert_values, postulation, regularity_g};
use gcmwb_core::harness::{run_suite, sample_parameter_systems, theorem28_experiment, BoundReport, Theorem28Verdict};
use gcmwb_core::ideal::{AmbientIdeal, Length};
use gcmwb_core::invariants::{
    check_hilbert_bound, hilbert_samuel, invariant_ia, invariant_iq, quotient_ring_by_subsystem, IAStatus,
};
use gcmwb_core::local::{make_local_ring, LocalRing, ParameterSystem, RingPresentation};
use gcmwb_core::poly::{Field, MonomialOrder, PolyRing, Polynomial};
use gcmwb_core::rees::rees_presentation;
use gcmwb_core::report::{emit_report, ReportFormat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, ok: bool, detail: impl AsRef<str>) {
    let line = format!("criterion {n}: {} - {}\n", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(ok, "{}", line.trim_end());
}

fn local(names: &[&str], gens: &[&str]) -> LocalRing {
    make_local_ring(RingPresentation::parse(101, names, gens).unwrap()).unwrap()
}

fn example(r: u32) -> (LocalRing, ParameterSystem) {
    let g = format!("x*y^{r}");
    let a = local(&["x", "y"], &["x^2", &g]);
    let q = a.parse_parameter_system(&["y"]).unwrap();
    (a, q)
}

const EXAMPLE_R: [u32; 5] = [1, 2, 3, 4, 6];
const SAMPLES: usize = 6;

struct Case {
    name: &'static str,
    ring: LocalRing,
    qs: Vec<ParameterSystem>,
    gcm: bool,
}

fn corpus() -> &'static [Case] {
    static CORPUS: OnceLock<Vec<Case>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        for (r, name) in EXAMPLE_R.into_iter().zip(["E_1", "E_2", "E_3", "E_4", "E_6"]) {
            let (a, q) = example(r);
            out.push(Case { name, ring: a, qs: vec![q], gcm: true });
        }
        let sampled = |name, names: &[&str], gens: &[&str], base: &[&str], gcm| {
            let a = local(names, gens);
            let base = a.parse_parameter_system(base).unwrap();
            let qs = sample_parameter_systems(&a, &base, SAMPLES, 7);
            Case { name, ring: a, qs, gcm }
        };
        out.push(sampled("F101[x,y]", &["x", "y"], &[], &["x", "y"], true));
        out.push(sampled("F101[x,y,z]", &["x", "y", "z"], &[], &["x", "y", "z"], true));
        out.push(sampled("two planes", &["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"], &["x + u", "y + v"], true));
        let a = local(&["x", "y", "z"], &["x*y", "x*z"]);
        let q = a.parse_parameter_system(&["x - y", "z"]).unwrap();
        out.push(Case { name: "xy,xz", ring: a, qs: vec![q], gcm: false });
        out
    })
}

fn case(name: &str) -> &'static Case {
    corpus().iter().find(|c| c.name == name).unwrap()
}

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn cm_suites() -> &'static [(String, BoundReport)] {
    static S: OnceLock<Vec<(String, BoundReport)>> = OnceLock::new();
    S.get_or_init(|| {
        ["F101[x,y]", "F101[x,y,z]"]
            .into_iter()
            .map(|n| {
                let c = case(n);
                (n.to_string(), run_suite(&c.ring, &c.qs, (5, 2), &cfg()).unwrap())
            })
            .collect()
    })
}

fn buchsbaum_suite() -> &'static (BoundReport, Duration) {
    static S: OnceLock<(BoundReport, Duration)> = OnceLock::new();
    S.get_or_init(|| {
        let c = case("two planes");
        let t = Instant::now();
        let rep = run_suite(&c.ring, &c.qs, (3, 2), &cfg()).unwrap();
        (rep, t.elapsed())
    })
}

#[test]
fn criterion_1_example_family_exactness() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for r in EXAMPLE_R {
        let (a, q) = example(r);
        let ia = invariant_ia(&a, &q, 8, &cfg()).unwrap();
        let reg = regularity_g(&a, &q, Some(ia.value), &cfg()).unwrap();
        let rees = rees_presentation(&a, &q).unwrap();
        let view = postulation(&a, &q, reg.horizon, 3).unwrap();
        let got = (ia.status, ia.value, reg.value, rees.reltype, view.postulation);
        if got != (IAStatus::Stabilized, r as u64, r - 1, r, r) {
            bad.push(format!("r={r}: {got:?}"));
        }
    }
    let elapsed = t.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(60);
    report(
        1,
        ok,
        format!("I(A)=r, reg=r-1, reltype=r, p=r for r in {EXAMPLE_R:?} in {elapsed:.2?}; mismatches {bad:?}"),
    );
}

#[test]
fn criterion_2_sharpness() {
    let mut bad = Vec::new();
    for r in EXAMPLE_R {
        let (a, q) = example(r);
        let rep = run_suite(&a, &[q], (5, 2), &cfg()).unwrap();
        for b in ["Thm2.5", "Cor2.6", "Cor2.7"] {
            let entries: Vec<_> = rep.entries_for(b).collect();
            if entries.len() != 1 || !entries[0].is_sharp() || entries[0].verdict != Verdict::Pass {
                bad.push(format!("r={r} {b}: {entries:?}"));
            }
        }
    }
    report(2, bad.is_empty(), format!("Thm2.5, Cor2.6, Cor2.7 have lhs = rhs on the example family; {bad:?}"));
}

#[test]
fn criterion_3_cm_baseline() {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (name, rep) in cm_suites() {
        counts.push(format!("{name}: {} ideals", rep.records.len()));
        if rep.records.len() < 5 {
            bad.push(format!("{name}: only {} parameter ideals", rep.records.len()));
        }
        let ia = rep.ia.as_ref().unwrap();
        if !(ia.is_stabilized() && ia.value == 0) {
            bad.push(format!("{name}: I(A) {ia:?}"));
        }
        for rec in &rep.records {
            let reg = rec.regularity.as_ref().map(|c| c.value);
            let p = rec.graded.as_ref().map(|g| g.postulation);
            let rt = rec.rees.as_ref().map(|r| r.reltype);
            let iq = rec.invariants.as_ref().map(|r| r.iq);
            if (reg, p, rt, iq) != (Some(0), Some(0), Some(1), Some(0)) {
                bad.push(format!("{name} {:?}: reg {reg:?} p {p:?} reltype {rt:?} I(Q) {iq:?}", rec.invariants.as_ref().map(|r| &r.q)));
            }
        }
        let s = &rep.summary;
        if s.fail + s.error > 0 {
            bad.push(format!("{name}: {} fail, {} error", s.fail, s.error));
        }
    }
    report(3, bad.is_empty(), format!("I(A)=0, reg=0, reltype=1, p=0, no failing entries ({}); {bad:?}", counts.join(", ")));
}

#[test]
fn criterion_4_buchsbaum_instance() {
    let c = case("two planes");
    let mut bad = Vec::new();
    let ia = invariant_ia(&c.ring, &c.qs[0], 4, &cfg()).unwrap();
    if !(ia.is_stabilized() && ia.value == 1 && ia.stable_from().unwrap() <= 2) {
        bad.push(format!("I(A) {ia:?}"));
    }
    let (rep, elapsed) = buchsbaum_suite();
    if rep.records.len() < 5 {
        bad.push(format!("only {} parameter ideals", rep.records.len()));
    }
    for rec in &rep.records {
        let q = rec.invariants.as_ref().map(|r| r.q.clone()).unwrap_or_default();
        match (&rec.regularity, &rec.rees, &rec.graded) {
            (Some(reg), Some(rees), Some(g)) => {
                let ok = reg.value <= 2 && rees.reltype <= 3 && g.postulation <= 3 && rees.reltype <= reg.value + 1;
                if !ok {
                    bad.push(format!("{q}: reg {} reltype {} p {}", reg.value, rees.reltype, g.postulation));
                }
            }
            _ => bad.push(format!("{q}: missing graded data")),
        }
    }
    for e in rep.entries_for("Thm1.2").filter(|e| e.n.is_some_and(|n| n <= 2)) {
        if e.verdict != Verdict::Pass || e.rhs != Some(1) {
            bad.push(format!("{e:?}"));
        }
    }
    for b in ["Cor1.3", "Cor1.4", "Thm2.5"] {
        for e in rep.entries_for(b) {
            if e.verdict != Verdict::Pass {
                bad.push(format!("{e:?}"));
            }
        }
    }
    if rep.entries_for("Thm1.2").count() == 0 || rep.entries_for("Cor1.4").count() == 0 {
        bad.push("missing Thm1.2 or Cor1.4 entries".into());
    }
    let ok = bad.is_empty() && *elapsed < Duration::from_secs(600);
    report(
        4,
        ok,
        format!(
            "I(A)=1 from n={:?}; {} parameter ideals with reg<=2, reltype<=3, p<=3, reltype-1<=reg; Thm1.2/Cor1.3/Cor1.4 pass; suite {elapsed:.2?}; {bad:?}",
            ia.stable_from(),
            rep.records.len()
        ),
    );
}

#[test]
fn criterion_5_hilbert_bound_on_corpus() {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut skipped = Vec::new();
    for c in corpus() {
        let ia = invariant_ia(&c.ring, &c.qs[0], 8, &cfg()).unwrap();
        if !ia.is_stabilized() {
            // I(A) is infinite: the right-hand side is unbounded.
            skipped.push(c.name);
            continue;
        }
        for q in &c.qs {
            let rec = invariant_iq(&c.ring, q, &cfg()).unwrap();
            for n in 0..=5 {
                let e = check_hilbert_bound(&c.ring, q, n, rec.multiplicity, ia.value).unwrap();
                checked += 1;
                if e.verdict != Verdict::Pass || e.lhs.is_none() || e.rhs.is_none() {
                    bad.push(format!("{}: {e:?}", c.name));
                }
            }
        }
    }
    report(
        5,
        bad.is_empty(),
        format!("{checked} Lemma1.1 entries with lhs/rhs all pass for n <= 5 (vacuous on {skipped:?}); {bad:?}"),
    );
}

#[test]
fn criterion_6_gap_check_on_buchsbaum() {
    let (rep, _) = buchsbaum_suite();
    let entries: Vec<_> = rep.entries_for("Lemma2.4").collect();
    let mut bad: Vec<String> = entries.iter().filter(|e| e.verdict != Verdict::Pass).map(|e| format!("{e:?}")).collect();
    for rec in &rep.records {
        let p = rec.graded.as_ref().unwrap().postulation as u64;
        let q = &rec.graded.as_ref().unwrap().q;
        let ns: Vec<u64> = entries.iter().filter(|e| &e.q == q).filter_map(|e| e.n).collect();
        if ns != [p, p + 1, p + 2] {
            bad.push(format!("{q}: n values {ns:?}, p = {p}"));
        }
    }
    report(6, bad.is_empty(), format!("{} gap entries pass for n in p..=p+2; {bad:?}", entries.len()));
}

#[test]
fn criterion_7_non_gcm_detection() {
    let c = case("xy,xz");
    let ia = invariant_ia(&c.ring, &c.qs[0], 6, &cfg()).unwrap();
    let increasing = ia.trace.windows(2).all(|w| w[0] < w[1]);
    let family: Vec<ParameterSystem> = (1..=5)
        .map(|t| c.ring.parse_parameter_system(&[&format!("x - y^{t}"), "z"]).unwrap())
        .collect();
    let exp = theorem28_experiment(&c.ring, &family, 3, &cfg()).unwrap();
    let growing = (0..family.len()).all(|i| {
        let chain: Vec<u32> = exp.samples.iter().filter(|s| s.family_index == i).map(|s| s.colon_exponent).collect();
        chain.windows(2).all(|w| w[0] < w[1])
    });
    let ok = ia.status == IAStatus::Divergent && increasing && growing && exp.verdict == Theorem28Verdict::NotGcm;
    report(
        7,
        ok,
        format!(
            "I trace {:?} ({}); experiment verdict '{}', witness {:?}",
            ia.trace,
            ia.status,
            exp.verdict,
            exp.witness
        ),
    );
}

#[test]
fn criterion_8_internal_consistency() {
    let mut bad = Vec::new();
    let mut checks = 0;
    for c in corpus() {
        let a = &c.ring;
        let ia = invariant_ia(a, &c.qs[0], 6, &cfg()).unwrap();
        checks += 1;
        if ia.trace.windows(2).any(|w| w[0] > w[1]) {
            bad.push(format!("{}: trace {:?} not monotone", c.name, ia.trace));
        }
        for q in &c.qs {
            let h = hilbert_values(a, q, 6).unwrap();
            let hs = hilbert_samuel(a, q, 6).unwrap();
            let partial: Vec<u64> = h.iter().scan(0, |s, &x| { *s += x; Some(*s) }).collect();
            checks += 1;
            if partial != hs {
                bad.push(format!("{} {}: Σh {partial:?} vs {hs:?}", c.name, q.display(a.ring())));
            }
            let rec = invariant_iq(a, q, &cfg()).unwrap();
            checks += 1;
            if rec.colength < rec.multiplicity {
                bad.push(format!("{}: I(Q,A) negative", c.name));
            }
            if !c.gcm {
                continue;
            }
            for i in 1..a.dim() {
                let j = a.validate_parameter_system(&q.elements()[..i]).unwrap();
                let b = quotient_ring_by_subsystem(a, &j, 1).unwrap();
                let rest = b.validate_parameter_system(&q.elements()[i..]).unwrap();
                let rb = invariant_iq(&b, &rest, &cfg()).unwrap();
                checks += 1;
                if rb.iq != rec.iq {
                    bad.push(format!("{} {}: I over A/(x1..x{i}) = {} vs {}", c.name, q.display(a.ring()), rb.iq, rec.iq));
                }
            }
            let reg = regularity_g(a, q, Some(ia.value), &cfg()).unwrap();
            let view = postulation(a, q, reg.horizon, 3).unwrap();
            for (n, &hn) in view.hilbert.iter().enumerate().skip(reg.value as usize + 1) {
                checks += 1;
                if view.polynomial.eval(n as i64) != hn as i64 {
                    bad.push(format!("{} {}: h({n}) = {hn} but P({n}) = {}", c.name, q.display(a.ring()), view.polynomial.eval(n as i64)));
                }
            }
        }
    }
    for name in ["E_3", "two planes"] {
        let c = case(name);
        let qs = &c.qs[..c.qs.len().min(2)];
        let one = emit_report(&run_suite(&c.ring, qs, (2, 1), &cfg()).unwrap(), ReportFormat::Json);
        let two = emit_report(&run_suite(&c.ring, qs, (2, 1), &cfg()).unwrap(), ReportFormat::Json);
        checks += 1;
        if one != two {
            bad.push(format!("{name}: JSON reports differ for the same seed"));
        }
    }
    report(
        8,
        bad.is_empty(),
        format!("{checks} checks: telescoping, monotone trace, I(Q,A) >= 0, quotient invariance, h = P past reg, byte-identical JSON; {bad:?}"),
    );
}

fn random_poly(r: &PolyRing, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = r.nvars();
    let mut s = String::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=4) {
            e[rng.gen_range(0..n)] += 1;
        }
        s.push_str(&format!(" + ({})", rng.gen_range(-20i64..=20)));
        for (i, k) in e.iter().enumerate() {
            if *k > 0 {
                s.push_str(&format!("*{}^{k}", r.names()[i]));
            }
        }
    }
    r.parse(&s).unwrap()
}

#[test]
fn criterion_9_engine_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let names = ["x", "y", "z"];
    let mut bad = Vec::new();
    let (mut membership, mut laws, mut orders) = (0, 0, 0);
    for case in 0..240 {
        let n = 1 + case % 3;
        let r = PolyRing::new(Field::Prime(101), names[..n].iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex);
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&r, &mut rng)).collect();
        let i = AmbientIdeal::new(&r, gens.clone());
        let mut combo = r.zero();
        for g in &gens {
            combo = r.add(&combo, &r.mul(g, &random_poly(&r, &mut rng)));
        }
        let p = random_poly(&r, &mut rng);
        let nf = i.normal_form(&p);
        membership += 1;
        if !i.contains(&combo) || !i.contains(&r.sub(&p, &nf)) || i.normal_form(&nf) != nf {
            bad.push(format!("membership on {}", i.display()));
        }
        let f = random_poly(&r, &mut rng);
        if !f.is_zero() {
            laws += 1;
            let q = i.quotient(&f).unwrap();
            let sat = i.saturate_element(&f);
            let ok = q.contains_ideal(&i)
                && q.gens().iter().all(|h| i.contains(&r.mul(h, &f)))
                && sat.quotient(&f).unwrap().equals(&sat)
                && sat.contains_ideal(&q);
            if !ok {
                bad.push(format!("colon laws on {} : {}", i.display(), r.display(&f)));
            }
        }
        let fin = i.with((0..n).map(|v| r.pow(&r.var(v), 4)));
        let base = fin.kdim_quotient();
        let lex = r.with_order(MonomialOrder::Lex);
        let other = AmbientIdeal::new(&lex, fin.gens().iter().map(|g| lex.adopt(g))).kdim_quotient();
        orders += 1;
        if !matches!(base, Length::Finite(_)) || other != base || fin.local_colength() != base {
            bad.push(format!("order dependence on {}", fin.display()));
        }
    }
    let ok = bad.is_empty() && membership >= 200 && laws >= 200 && orders >= 200;
    report(
        9,
        ok,
        format!("{membership} membership, {laws} quotient/saturation, {orders} order-independence cases on random ideals; {bad:?}"),
    );
}
