use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use digitop::homotopy::{homotopic, is_irreducible, DEFAULT_BUDGET};
use digitop::hspace::{fixture, search_hspace_multiplications};
use digitop::image::enumerate_images;
use digitop::{Category, DigitalImage, DigitalMap};

fn homotopy(c: &mut Criterion) {
    let rho = fixture("rho").unwrap().into_map().unwrap();
    let id = DigitalMap::identity(rho.domain().clone());
    let w = rho.domain().clone();
    c.bench_function("homotopic rho id (NP1)", |b| {
        b.iter(|| homotopic(black_box(&rho), black_box(&id), Category::Np1, DEFAULT_BUDGET).unwrap())
    });
    c.bench_function("is_irreducible W (NP1)", |b| {
        b.iter(|| is_irreducible(black_box(&w), Category::Np1, DEFAULT_BUDGET).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_images(6)", |b| b.iter(|| enumerate_images(black_box(6)).unwrap().count()));
    let path = Arc::new(DigitalImage::interval(2));
    c.bench_function("count H-spaces on [0,2] (NP1)", |b| {
        b.iter(|| {
            search_hspace_multiplications(black_box(&path), 1, Category::Np1, DEFAULT_BUDGET)
                .unwrap()
                .count()
        })
    });
}

criterion_group!(benches, homotopy, enumeration);
criterion_main!(benches);
