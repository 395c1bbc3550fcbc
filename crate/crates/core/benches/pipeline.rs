use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jetgeom::exec::Execution;
use jetgeom::geometry::Geometry;
use jetgeom::model::ModelSpec;
use jetgeom::verify::{verify, Settings};

fn spec(name: &str) -> ModelSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(format!("{name}.toml"));
    ModelSpec::load(path).unwrap()
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(20);
    for name in ["sphere", "polar", "mixed"] {
        let spec = spec(name);
        for (label, exec) in [("seq", Execution::Sequential), ("par", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, name), &spec, |b, spec| {
                b.iter(|| {
                    let geom = Geometry::compute(spec, exec).unwrap();
                    verify(&geom, &Settings::default(), exec).unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
