use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tsca_core::involution::{enumerate_involutions, EnumerationSpec};
use tsca_core::rule::{Alphabet, Neighborhood};
use tsca_core::symmetry::{find_symmetry, FindSymmetry};
use tsca_core::zoo;

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate involutions, m=2 offsets {-1,0,1}", |b| {
        b.iter(|| {
            let spec = EnumerationSpec::new(
                Alphabet::new(2).unwrap(),
                Neighborhood::new(vec![-1, 0, 1]).unwrap(),
                1 << 20,
            );
            enumerate_involutions(black_box(&spec)).unwrap()
        });
    });
    c.bench_function("enumerate involutions, m=2 offsets {-1,0,1,2}", |b| {
        b.iter(|| {
            let spec = EnumerationSpec::new(
                Alphabet::new(2).unwrap(),
                Neighborhood::new(vec![-1, 0, 1, 2]).unwrap(),
                1 << 22,
            );
            enumerate_involutions(black_box(&spec)).unwrap()
        });
    });
}

fn bench_symmetry_search(c: &mut Criterion) {
    let (_, _, f) = zoo::hedlund_pair();
    c.bench_function("find_symmetry for the infinite-order rule, span 3", |b| {
        b.iter(|| match find_symmetry(black_box(&f), 3, 1 << 22) {
            FindSymmetry::Found(cert) => cert,
            other => panic!("expected a certificate, got {other:?}"),
        });
    });
    c.bench_function("find_symmetry exhausting on the shift, span 2", |b| {
        b.iter(
            || match find_symmetry(black_box(&zoo::shift(1)), 2, 1 << 22) {
                FindSymmetry::Exhausted { .. } => (),
                FindSymmetry::Found(cert) => panic!("unexpected certificate {cert:?}"),
            },
        );
    });
}

criterion_group!(benches, bench_enumeration, bench_symmetry_search);
criterion_main!(benches);
