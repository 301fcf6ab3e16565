use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tsca_core::grid2d::{
    ant_step, billiard_step, oracle_to_grid, primary_arrow, AntOracle, Arrow, BilliardCell, Dir,
    TorusGrid, TurnConvention,
};

fn bench_ant(c: &mut Criterion) {
    c.bench_function("ant oracle, 1000 steps", |b| {
        b.iter(|| {
            let mut oracle =
                AntOracle::on_white(128, 128, 64, 64, Dir::N, TurnConvention::WhiteRight);
            for _ in 0..1000 {
                oracle.step();
            }
            black_box(oracle.pose())
        });
    });
    c.bench_function("ant cell form, 100 steps on 64x64", |b| {
        let start = oracle_to_grid(&AntOracle::on_white(
            64,
            64,
            32,
            32,
            Dir::N,
            TurnConvention::WhiteRight,
        ));
        b.iter(|| {
            let mut g = start.clone();
            for _ in 0..100 {
                g = ant_step(&g, TurnConvention::WhiteRight).unwrap();
            }
            black_box(g)
        });
    });
}

fn bench_billiard(c: &mut Criterion) {
    let start = TorusGrid::filled(
        32,
        32,
        BilliardCell {
            black: false,
            arrow: Arrow::Ne,
        },
    )
    .map(|(x, y), _| BilliardCell {
        black: (x * 7 + y * 3) % 5 == 0,
        arrow: primary_arrow(x, y),
    });
    c.bench_function("billiard, 100 steps on 32x32", |b| {
        b.iter(|| {
            let mut g = start.clone();
            for _ in 0..100 {
                g = billiard_step(&g).unwrap();
            }
            black_box(g)
        });
    });
}

criterion_group!(benches, bench_ant, bench_billiard);
criterion_main!(benches);
