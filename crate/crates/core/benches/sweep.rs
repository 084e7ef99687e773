use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use halfplane::par;
use halfplane::quadrature::QuadratureSpec;
use halfplane::scenario::{FieldPoint, Profile, ScenarioConfig};
use halfplane::sommerfeld::StationaryAmplitude;
use halfplane::timedomain::TimeDomain;

fn grid(n: usize) -> Vec<FieldPoint> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let rho = 0.25 + 4.0 * i as f64 / n as f64;
            // offset keeps the grid off the faces and jump rays
            let phi = 0.05 + 6.1 * (j as f64 + 0.37) / n as f64;
            pts.push(FieldPoint::new(rho, phi).unwrap());
        }
    }
    pts
}

fn sweep(c: &mut Criterion) {
    let sc = ScenarioConfig::reference();
    let spec = QuadratureSpec::default();
    let profile = Profile::smooth_ramp(1.0).unwrap();
    let st = StationaryAmplitude::new(&sc, spec);
    let td = TimeDomain::new(&sc, &profile, spec);
    let pts = grid(12);

    let mut g = c.benchmark_group("diffracted-sweep");
    g.sample_size(10);
    let stationary = |p: &FieldPoint| st.amplitude_diffracted(*p, None).unwrap();
    let timed = |p: &FieldPoint| td.diffracted(*p, 6.0).unwrap();
    g.bench_function(BenchmarkId::new("stationary", "sequential"), |b| {
        b.iter(|| par::map_sequential(&pts, stationary))
    });
    g.bench_function(BenchmarkId::new("stationary", "parallel"), |b| {
        b.iter(|| par::map_parallel(&pts, stationary))
    });
    g.bench_function(BenchmarkId::new("time", "sequential"), |b| {
        b.iter(|| par::map_sequential(&pts, timed))
    });
    g.bench_function(BenchmarkId::new("time", "parallel"), |b| b.iter(|| par::map_parallel(&pts, timed)));
    g.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
