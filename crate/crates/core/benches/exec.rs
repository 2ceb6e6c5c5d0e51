use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hardknots::exec::Exec;
use hardknots::search::{survey_with, Enumerator, ShapeFilter, SurveyOptions};
use hardknots::LinkCatalog;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn shadows(c: &mut Criterion) {
    let mut g = c.benchmark_group("shadows");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 7), &exec, |b, &exec| {
            // A fresh enumerator each time so the level cache does not hide the work.
            b.iter(|| Enumerator::new(exec).shadows(7, ShapeFilter::REDUCED).len())
        });
    }
    g.finish();
}

fn survey(c: &mut Criterion) {
    let catalog = LinkCatalog::bundled();
    let mut g = c.benchmark_group("survey");
    g.sample_size(10);
    for (name, exec) in MODES {
        let en = Enumerator::new(exec);
        en.shadows(7, ShapeFilter::PRIME);
        let opts = SurveyOptions {
            filter: ShapeFilter::PRIME,
            exec,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::new(name, 7), &opts, |b, opts| {
            b.iter(|| survey_with(&en, 7, &catalog, opts).hard.len())
        });
    }
    g.finish();
}

criterion_group!(benches, shadows, survey);
criterion_main!(benches);
