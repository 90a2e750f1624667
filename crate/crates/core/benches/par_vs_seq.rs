use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semik::bmod::chi::{order_unit_obstruction, prime_independence};
use semik::bratteli::{iso_ultramatricial, BratteliPresentation, FieldTag, IsoOptions};
use semik::lab::{analyze_table, FiniteSemiringTable, LabOptions};
use semik::trop::{is_free_trop_with, FreenessOptions, TropSpan};
use semik::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("arithmetic");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("order_unit_obstruction", name), &exec, |b, &exec| {
            b.iter(|| order_unit_obstruction(1 << 16, 31, 16, exec))
        });
        g.bench_with_input(BenchmarkId::new("prime_independence", name), &exec, |b, &exec| {
            b.iter(|| prime_independence(13, 4, exec))
        });
    }
    g.finish();
}

fn freeness(c: &mut Criterion) {
    // Two generators share every row, so no private row exists and the
    // probe grid is scanned.
    let sp = TropSpan::from_ints(&[
        &[Some(0), Some(0), Some(-3), Some(-1)],
        &[Some(-1), Some(0), Some(0), Some(-2)],
        &[Some(-2), Some(-5), Some(0), Some(0)],
        &[Some(0), Some(-4), Some(-1), Some(0)],
    ])
    .unwrap();
    let mut g = c.benchmark_group("trop_grid");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = FreenessOptions { probe_depth: 8, analytic_fallback: false, exec, ..FreenessOptions::default() };
        g.bench_with_input(BenchmarkId::new("is_free_trop", name), &opts, |b, opts| {
            b.iter(|| is_free_trop_with(&sp, opts))
        });
    }
    g.finish();
}

fn iso_sweep(c: &mut Criterion) {
    let tuples: Vec<Vec<u64>> = (0..27u64).map(|code| (0..3).map(|i| code / 3u64.pow(i) % 3 + 1).collect()).collect();
    let presentations: Vec<BratteliPresentation> =
        tuples.into_iter().map(|t| BratteliPresentation::constant(FieldTag::Bool, t).unwrap()).collect();
    let mut g = c.benchmark_group("iso_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = IsoOptions { depth: 4, exec, ..IsoOptions::default() };
        g.bench_with_input(BenchmarkId::new("constant_rank3", name), &opts, |b, opts| {
            b.iter(|| {
                presentations
                    .iter()
                    .flat_map(|p| presentations.iter().map(move |q| (p, q)))
                    .filter(|(p, q)| iso_ultramatricial(p, q, opts).label() == "ISO")
                    .count()
            })
        });
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let b = FiniteSemiringTable::boolean();
    let tables = [
        b.matrix_semiring(2).unwrap(),
        FiniteSemiringTable::gf(16).unwrap(),
        b.product(&b).unwrap().product(&b).unwrap(),
    ];
    let mut g = c.benchmark_group("decomposition");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = LabOptions { exec, ..LabOptions::default() };
        g.bench_with_input(BenchmarkId::new("analyze_table", name), &opts, |bch, opts| {
            bch.iter(|| tables.iter().filter(|t| analyze_table(t, opts).unwrap().congruence_semisimple).count())
        });
    }
    g.finish();
}

criterion_group!(benches, arithmetic, freeness, iso_sweep, decomposition);
criterion_main!(benches);
