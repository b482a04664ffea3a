use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use skewring_core::classify::Classifier;
use skewring_core::group::{realize_text, with_c2_factors, DEFAULT_COSET_LIMIT};
use skewring_core::groupring::is_skew_commutative;
use skewring_core::harness::groups::named_presentation;
use skewring_core::orient::{enumerate_kernels, Orientation};
use skewring_core::ring::{CoeffRing, RingClass};
use skewring_core::structure::find_isomorphism;

fn realize(c: &mut Criterion) {
    for name in ["Q8", "G[16,13]", "G[32,30]"] {
        let p = named_presentation(name).unwrap();
        c.bench_function(&format!("realize {name}"), |b| {
            b.iter(|| realize_text(black_box(p), DEFAULT_COSET_LIMIT).unwrap())
        });
    }
}

fn isomorphism(c: &mut Criterion) {
    let g = realize_text(named_presentation("G[32,24]").unwrap(), DEFAULT_COSET_LIMIT).unwrap();
    let h = realize_text("<g,a,b | g^4=a^4=b^2=1, ga=ag, gb=bg, ab=g^2ba>", DEFAULT_COSET_LIMIT).unwrap();
    c.bench_function("find_isomorphism G[32,24]", |b| b.iter(|| find_isomorphism(&g, &h, None).unwrap()));
}

fn decide(c: &mut Criterion) {
    let base = realize_text(named_presentation("G[32,35]").unwrap(), DEFAULT_COSET_LIMIT).unwrap();
    let classifier = Classifier::new().unwrap();
    for rank in [0, 2] {
        let g = Arc::new(with_c2_factors(&base, rank).unwrap());
        let n = enumerate_kernels(&g).swap_remove(0);
        let o = Orientation::new(g.clone(), n.clone()).unwrap();
        let z4: CoeffRing = "z/4".parse().unwrap();
        c.bench_function(&format!("is_skew_commutative order {}", g.order()), |b| {
            b.iter(|| is_skew_commutative(&o, z4).unwrap())
        });
        c.bench_function(&format!("classify order {}", g.order()), |b| {
            b.iter(|| classifier.classify(&g, &n, RingClass::Char4).unwrap())
        });
    }
}

criterion_group!(benches, realize, isomorphism, decide);
criterion_main!(benches);
