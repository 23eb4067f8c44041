use criterion::{criterion_group, criterion_main, Criterion};
use gcmwb_core::ideal::AmbientIdeal;
use gcmwb_core::poly::{Field, MonomialOrder, PolyRing};
use std::hint::black_box;

fn ring(names: &[&str]) -> PolyRing {
    PolyRing::new(Field::Prime(32003), names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex)
}

fn groebner(c: &mut Criterion) {
    let r = ring(&["x", "y", "z"]);
    let cyclic = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"];
    c.bench_function("groebner cyclic-3", |b| {
        b.iter(|| AmbientIdeal::parse(&r, black_box(&cyclic)).unwrap().groebner().gens().len())
    });
    let r4 = ring(&["a", "b", "c", "d"]);
    let katsura = ["a + 2*b + 2*c + 2*d - 1", "a^2 + 2*b^2 + 2*c^2 + 2*d^2 - a", "2*a*b + 2*b*c + 2*c*d - b", "b^2 + 2*a*c + 2*b*d - c"];
    c.bench_function("groebner katsura-4", |b| {
        b.iter(|| AmbientIdeal::parse(&r4, black_box(&katsura)).unwrap().groebner().gens().len())
    });
}

fn local_lengths(c: &mut Criterion) {
    let r = ring(&["x", "y", "z"]);
    let gens = ["x^3 - y^2*z", "y^3 - x*z^2", "z^3 + x^2*y", "x*y*z"];
    c.bench_function("local colength 3 vars", |b| {
        b.iter(|| AmbientIdeal::parse(&r, black_box(&gens)).unwrap().local_colength())
    });
}

criterion_group!(benches, groebner, local_lengths);
criterion_main!(benches);
