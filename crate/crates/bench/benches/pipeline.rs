use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sqtile::criterion::{mmy_check, AffineWord};
use sqtile::enumerate::canonical_origamis;
use sqtile::galois::analyze_reciprocal;
use sqtile::homology::{kz_action, Homology};
use sqtile::lyapunov::{estimate_exponents, LyapunovConfig};
use sqtile::orbit::orbit;
use sqtile::origami::fixtures::s3;
use sqtile::poly::IntPolynomial;
use sqtile::Word;
use sqtile_bench::surfaces;

fn orbits(c: &mut Criterion) {
    for (name, o) in surfaces() {
        c.bench_function(&format!("orbit/{name}"), |b| b.iter(|| orbit(black_box(&o)).unwrap()));
        c.bench_function(&format!("canonical_form/{name}"), |b| b.iter(|| black_box(&o).canonical_form()));
    }
}

fn kz(c: &mut Criterion) {
    let word = Word::parse("L4R2L4R8").unwrap();
    for (name, o) in surfaces() {
        let h = Homology::new(&o);
        c.bench_function(&format!("homology/{name}"), |b| b.iter(|| Homology::new(black_box(&o))));
        c.bench_function(&format!("kz/{name}"), |b| b.iter(|| kz_action(&h, black_box(&word)).unwrap()));
    }
}

fn certificates(c: &mut Criterion) {
    let quartic: IntPolynomial = "x^4 - 2*x^3 - 30*x^2 - 2*x + 1".parse().unwrap();
    let sextic: IntPolynomial = "x^6 + 39*x^5 + 42*x^4 - 596*x^3 + 42*x^2 + 39*x + 1".parse().unwrap();
    c.bench_function("galois/quartic", |b| b.iter(|| analyze_reciprocal(black_box(&quartic), 400).unwrap()));
    c.bench_function("galois/sextic", |b| b.iter(|| analyze_reciprocal(black_box(&sextic), 400).unwrap()));
    let (w1, w2) = (AffineWord::parse("L8R2L2R2").unwrap(), AffineWord::parse("L6R2L2R2").unwrap());
    let o = s3();
    c.bench_function("mmy/s3", |b| b.iter(|| mmy_check(black_box(&o), &w1, &w2).unwrap()));
}

fn heavy(c: &mut Criterion) {
    let mut group = c.benchmark_group("heavy");
    group.sample_size(10);
    for (name, o) in surfaces() {
        let cfg = LyapunovConfig::new(20_000, 1);
        group.bench_function(format!("lyapunov_20k/{name}"), |b| b.iter(|| estimate_exponents(black_box(&o), &cfg).unwrap()));
    }
    group.bench_function("enumerate/n7_h22", |b| b.iter(|| canonical_origamis(black_box(7), &[2, 2])));
    group.finish();
}

criterion_group!(benches, orbits, kz, certificates, heavy);
criterion_main!(benches);
