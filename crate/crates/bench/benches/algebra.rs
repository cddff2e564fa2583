use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ldiag::{
    codes_up_to, diagram_multiplicities, shifted_twist_product, twist_product, verify_hopf,
    zeta_eval, DeformParams, DiagramCode, Hopf, MonomialWord, ZetaWord,
};

fn products(c: &mut Criterion) {
    let u: MonomialWord = "[x1^2*x2, x1, x2^2]".parse().unwrap();
    let v: MonomialWord = "[x2, x1*x2, x1]".parse().unwrap();
    c.bench_function("twist_product 3x3 entries", |b| {
        b.iter(|| twist_product(black_box(&u), black_box(&v)))
    });
    let a: DiagramCode = "[x2^2*x3, x1*x2*x3^3, x3*x4^2]".parse().unwrap();
    c.bench_function("shifted product 11+11 lines", |b| {
        b.iter(|| shifted_twist_product(black_box(&a), black_box(&a)))
    });
}

fn coproducts(c: &mut Criterion) {
    let codes = codes_up_to(4);
    for (name, params) in [
        (
            "coproduct all <=4 lines (0,0,0)",
            DeformParams::numeric(0, 0, 0).unwrap(),
        ),
        (
            "coproduct all <=4 lines symbolic qt=0",
            DeformParams::symbolic(0).unwrap(),
        ),
    ] {
        c.bench_function(name, |b| {
            b.iter(|| {
                let h = Hopf::new(params.clone());
                for w in &codes {
                    black_box(h.coproduct(w));
                }
            })
        });
    }
    c.bench_function("verify_hopf (1,1,1) <=3 lines", |b| {
        let p = DeformParams::numeric(1, 1, 1).unwrap();
        b.iter(|| verify_hopf(&p, 3, 5).unwrap())
    });
}

fn partitions_and_zeta(c: &mut Criterion) {
    c.bench_function("diagram multiplicities n=5", |b| {
        b.iter(|| diagram_multiplicities(black_box(5), 7).unwrap())
    });
    let zw = ZetaWord::positive(vec![3, 1, 2]).unwrap();
    c.bench_function("zeta (3,1,2) N=1e5", |b| {
        b.iter(|| zeta_eval(black_box(&zw), 100_000).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = products, coproducts, partitions_and_zeta
}
criterion_main!(benches);
