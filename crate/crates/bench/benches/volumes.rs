use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use flatvol_core::oracle;
use flatvol_core::triangle::{h_hyperbolic_quad, h_hyperbolic_series, l_of_phi};
use flatvol_core::volumes::{vol_r_klein, vol_r_orientable, vol_r_two_boundaries, SeriesOptions};
use flatvol_core::GroupModel;

fn finite(c: &mut Criterion) {
    let s3 = GroupModel::by_name("s3").unwrap();
    let id = s3.identity();
    let opts = SeriesOptions::default();
    c.bench_function("s3 orientable l=2 character sum", |b| {
        b.iter(|| vol_r_orientable(&s3, black_box(2), &id, &opts).unwrap())
    });
    c.bench_function("s3 orientable l=2 brute-force count", |b| {
        b.iter(|| oracle::count_surface_tuples(&s3, black_box(2), &id).unwrap())
    });
    let d4 = GroupModel::by_name("d4").unwrap();
    let id = d4.identity();
    c.bench_function("d4 klein l=1 brute-force count", |b| {
        b.iter(|| oracle::count_klein_tuples(&d4, black_box(1), &id).unwrap())
    });
}

fn su2(c: &mut Criterion) {
    let m = GroupModel::su2();
    let h = m.angle_element(1.0).unwrap();
    let h2 = m.angle_element(2.0).unwrap();
    c.bench_function("su2 orientable l=2 default truncation", |b| {
        b.iter(|| vol_r_orientable(&m, 2, black_box(&h), &SeriesOptions::default()).unwrap())
    });
    c.bench_function("su2 two boundaries l=1 default truncation", |b| {
        b.iter(|| vol_r_two_boundaries(&m, 1, black_box(&h), &h2, &SeriesOptions::default()).unwrap())
    });
    c.bench_function("su2 klein l=1 truncation 1e4", |b| {
        b.iter(|| vol_r_klein(&m, black_box(1), &SeriesOptions::truncated(10_000)).unwrap())
    });
}

fn triangle(c: &mut Criterion) {
    let phi = PI / 3.0;
    let side = l_of_phi(2.0, phi).unwrap();
    c.bench_function("h hyperbolic quadrature", |b| {
        b.iter(|| h_hyperbolic_quad(black_box(phi), side, 1e-12).unwrap())
    });
    c.bench_function("h hyperbolic series k=3", |b| b.iter(|| h_hyperbolic_series(black_box(3), side).unwrap()));
}

criterion_group!(benches, finite, su2, triangle);
criterion_main!(benches);
