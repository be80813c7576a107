use criterion::{black_box, criterion_group, criterion_main, Criterion};
use jetgauge_core::dynamics::{integrate_lorentz, ParticleState, UniformPotential};
use jetgauge_core::liealg::so_generator;
use jetgauge_core::octonion::{g2_basis, is_derivation, stabilizer_su3, ImOctonion};
use jetgauge_core::proca::{mode_census, proca_table, SectorLabel};

fn exact(c: &mut Criterion) {
    let a = so_generator(28, 5, 9).unwrap();
    let b = so_generator(28, 9, 17).unwrap();
    c.bench_function("commutator 28x28", |bch| {
        bch.iter(|| black_box(&a).commutator(black_box(&b)).unwrap())
    });
    c.bench_function("proca_table", |bch| bch.iter(proca_table));
    c.bench_function("census (3,3)", |bch| {
        bch.iter(|| mode_census(SectorLabel::new(3, 3).unwrap()).unwrap())
    });
    let g2 = g2_basis();
    c.bench_function("is_derivation x14", |bch| {
        bch.iter(|| g2.iter().all(|m| is_derivation(m).unwrap()))
    });
    c.bench_function("stabilizer e4", |bch| {
        bch.iter(|| stabilizer_su3(&ImOctonion::e(4)).unwrap())
    });
}

fn numeric(c: &mut Criterion) {
    let p = ParticleState {
        x: [0.0; 4],
        u: [1.25, 0.75, 0.0, 0.0],
        m: 1.0,
        q: 1.0,
        charge: vec![],
    };
    let field = UniformPotential::magnetic([0.0, 0.0, 1.0]);
    c.bench_function("rk4 1000 steps", |bch| {
        bch.iter(|| integrate_lorentz(black_box(&p), &field, 0.01, 1000).unwrap())
    });
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
