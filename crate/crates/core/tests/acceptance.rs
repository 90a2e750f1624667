//! Acceptance run: one line per criterion with its verdict, elapsed time and
//! time budget. Exits non-zero if any criterion fails or runs over budget.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use semik::bmod::chi::{order_unit_obstruction, prime_independence, primes_up_to, three_times_power_of_two_solutions};
use semik::bmod::{are_isomorphic, column_span_bool, is_free_bool, is_projective, BoolSemimodule};
use semik::bratteli::{
    iso_ultramatricial, sk0_matricial, sk0_ultramatricial, verify_witness, BratteliPresentation, FieldTag, IsoOptions,
    IsoVerdict, MatricialAlgebra,
};
use semik::kflow::{limit_equal, Equality, LimitElement, DEFAULT_DEPTH};
use semik::lab::{
    analyze_table, classify_factors, congruence_semisimple_decompose, Factor, FiniteSemiringTable, LabOptions,
};
use semik::semiring::{Element, Kernel, Trop};
use semik::trop::{self, is_free_trop, is_free_trop_with, Freeness, FreenessOptions, TropSpan};
use semik::Exec;

type Check = Result<String, String>;

/// Id, name, time budget in seconds, runner.
type Criterion = (u32, &'static str, f64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn block_diag_bits(a: &Bits, b: &Bits) -> Bits {
    let (n, m) = (a.len(), b.len());
    (0..n + m)
        .map(|i| {
            (0..n + m)
                .map(|j| match (i < n, j < n) {
                    (true, true) => a[i][j],
                    (false, false) => b[i - n][j - n],
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn column_span_of_two_by_two() -> Check {
    let m = column_span_bool(&bits_to_matrix(&vec![vec![1, 0], vec![1, 1]])).map_err(|e| e.to_string())?;
    let target = BoolSemimodule::from_coords(&[vec![0, 0], vec![0, 1], vec![1, 1]]).map_err(|e| e.to_string())?;
    ensure(are_isomorphic(&m, &target).map_err(|e| e.to_string())?.is_some(), || {
        "not isomorphic to the 3-chain".into()
    })?;
    let oracle: BTreeSet<u32> = oracle_bool_span(&[0b11, 0b10]);
    ensure(oracle.len() == 3 && m.len() == 3, || format!("span has {} elements, oracle {}", m.len(), oracle.len()))?;
    ensure(is_projective(&m), || "expected projective".into())?;
    ensure(is_free_bool(&m).is_none(), || "expected not free".into())?;
    ensure(!m.len().is_power_of_two(), || "oracle: a free module has 2^d elements".into())?;
    Ok("iso to {(0,0),(0,1),(1,1)}, projective, not free".into())
}

fn matricial_groups() -> Check {
    let g = sk0_matricial(&MatricialAlgebra::new(FieldTag::Bool, vec![2, 3]).map_err(|e| e.to_string())?);
    ensure(g.rank() == 2 && g.unit() == [2, 3], || format!("(2,3) gave rank {} unit {:?}", g.rank(), g.unit()))?;
    for n in 1..=6 {
        let g = sk0_matricial(&MatricialAlgebra::new(FieldTag::Bool, vec![n]).map_err(|e| e.to_string())?);
        ensure(g.rank() == 1 && g.unit() == [n], || format!("({n}) gave rank {} unit {:?}", g.rank(), g.unit()))?;
    }
    Ok("(2,3) -> (Z^2,(2,3)); (n) -> (Z,n) for n <= 6".into())
}

fn dyadic_limits() -> Check {
    let dyadic = BratteliPresentation::rank_one_stationary(FieldTag::Bool, 2, 3).map_err(|e| e.to_string())?;
    let dyadic4 = BratteliPresentation::rank_one_stationary(FieldTag::Bool, 4, 3).map_err(|e| e.to_string())?;
    let triadic = BratteliPresentation::rank_one_stationary(FieldTag::Bool, 3, 3).map_err(|e| e.to_string())?;
    let sys = sk0_ultramatricial(&dyadic);
    let eq = limit_equal(&sys, &LimitElement::from_ints(0, &[1]), &LimitElement::from_ints(1, &[2]), DEFAULT_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure(eq == Equality::Equal { stage: 1 }, || format!("(0,1) vs (1,2): {eq:?}"))?;
    let ne = limit_equal(&sys, &LimitElement::from_ints(0, &[1]), &LimitElement::from_ints(0, &[2]), DEFAULT_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure(matches!(ne, Equality::Distinct { .. }), || format!("(0,1) vs (0,2): {ne:?}"))?;
    // Oracle: the class of `v` at stage `k` is `v / 2^k` in Z[1/2].
    let same = |(i, a): (u32, i64), (j, b): (u32, i64)| a << j == b << i;
    ensure(same((0, 1), (1, 2)) && !same((0, 1), (0, 2)), || "oracle disagrees".into())?;

    let opts = IsoOptions { depth: 3, ..IsoOptions::default() };
    let witness = match iso_ultramatricial(&dyadic, &dyadic4, &opts) {
        IsoVerdict::Iso { witness } => witness,
        other => return Err(format!("dyadic [2] vs [4]: {}", other.label())),
    };
    ensure(verify_witness(&dyadic, &dyadic4, &witness), || "witness failed re-validation".into())?;
    ensure(oracle_intertwines(&dyadic, &dyadic4, &witness), || "witness failed the oracle".into())?;
    let v = iso_ultramatricial(&dyadic, &triadic, &IsoOptions::default());
    ensure(matches!(v, IsoVerdict::NotIso { .. }), || format!("dyadic vs triadic: {}", v.label()))?;
    Ok(format!(
        "EQUAL(1), DISTINCT, ISO at stages ({},{}), NOT_ISO vs triadic",
        witness.left_stage, witness.right_stage
    ))
}

fn constant_presentations() -> Check {
    let mut tuples: Vec<Vec<u64>> = Vec::new();
    for r in 1..=3u32 {
        for code in 0..4u64.pow(r) {
            tuples.push((0..r).map(|i| code / 4u64.pow(i) % 4 + 1).collect());
        }
    }
    let presentations: Vec<BratteliPresentation> = tuples
        .iter()
        .map(|t| BratteliPresentation::constant(FieldTag::Bool, t.clone()))
        .collect::<semik::Result<_>>()
        .map_err(|e| e.to_string())?;
    let opts = IsoOptions { depth: 4, ..IsoOptions::default() };
    let (mut pairs, mut unknown) = (0usize, 0usize);
    for (s, p) in tuples.iter().zip(&presentations) {
        for (t, q) in tuples.iter().zip(&presentations) {
            let mut ss = s.clone();
            let mut tt = t.clone();
            ss.sort_unstable();
            tt.sort_unstable();
            let verdict = iso_ultramatricial(p, q, &opts);
            pairs += 1;
            match (&verdict, ss == tt) {
                (IsoVerdict::Iso { witness }, true) => {
                    ensure(verify_witness(p, q, witness), || format!("{s:?} vs {t:?}: witness rejected"))?
                }
                (IsoVerdict::NotIso { .. }, false) => {}
                (IsoVerdict::Unknown, _) => unknown += 1,
                (v, expected) => return Err(format!("{s:?} vs {t:?}: {} but oracle says iso={expected}", v.label())),
            }
        }
    }
    ensure(unknown == 0, || format!("{unknown} UNKNOWN verdicts"))?;
    Ok(format!("{pairs} pairs agree with sorted-multiset oracle, 0 UNKNOWN"))
}

fn weak_dimension_additivity() -> Check {
    let mut rng = rng(0x5eed_0006);
    for case in 0..100 {
        let a = random_bool_idempotent(&mut rng, 5);
        let b = random_bool_idempotent(&mut rng, 5);
        ensure(bool_product(&a, &a) == a && bool_product(&b, &b) == b, || format!("case {case}: not idempotent"))?;
        let wd = |x: &Bits| -> Result<usize, String> {
            Ok(column_span_bool(&bits_to_matrix(x)).map_err(|e| e.to_string())?.weak_dimension())
        };
        let sum = block_diag_bits(&a, &b);
        let (da, db, ds) = (wd(&a)?, wd(&b)?, wd(&sum)?);
        let oracle = |x: &Bits| oracle_join_irreducibles(&oracle_bool_span(&columns_as_masks(x)));
        ensure(da == oracle(&a) && db == oracle(&b) && ds == oracle(&sum), || {
            format!("bool case {case}: oracle mismatch")
        })?;
        ensure(ds == da + db, || format!("bool case {case}: {ds} != {da} + {db}"))?;
    }
    for case in 0..100 {
        let p = random_span(&mut rng, 4, 4);
        let q = random_span(&mut rng, 4, 4);
        let s = p.block_sum(&q);
        let (dp, dq, ds) = (trop::weak_dimension(&p), trop::weak_dimension(&q), trop::weak_dimension(&s));
        ensure(dp == brute_force_min_generators(&p) && dq == brute_force_min_generators(&q), || {
            format!("trop case {case}: brute-force mismatch")
        })?;
        ensure(ds == dp + dq, || format!("trop case {case}: {ds} != {dp} + {dq}"))?;
    }
    Ok("100 Boolean idempotent pairs, 100 tropical span pairs additive".into())
}

fn arithmetic_sweeps() -> Check {
    for exec in [Exec::Sequential, Exec::Parallel] {
        let report = prime_independence(13, 4, exec);
        ensure(report.failure.is_none(), || format!("prime independence failed at {:?}", report.failure))?;
        ensure(order_unit_obstruction(1 << 16, 31, 16, exec).is_none(), || "some c has no avoiding prime".into())?;
    }
    // Oracle: distinct exponent vectors give distinct products.
    let primes = primes_up_to(13);
    let mut products = HashSet::new();
    for code in 0..5usize.pow(primes.len() as u32) {
        let product = primes
            .iter()
            .enumerate()
            .fold(1u128, |acc, (i, &p)| acc * u128::from(p).pow((code / 5usize.pow(i as u32) % 5) as u32));
        products.insert(product);
    }
    ensure(products.len() == 5usize.pow(primes.len() as u32), || "oracle found a repeated product".into())?;
    ensure(three_times_power_of_two_solutions(20).is_empty(), || "3*2^n = 2^m has a solution".into())?;
    ensure((0..=20u32).all(|n| (0..=20u32).all(|m| 3u64 << n != 1u64 << m)), || "oracle found a solution".into())?;
    // Oracle: p divides some power of c iff p divides c.
    ensure((1..=1u64 << 16).all(|c| primes_up_to(31).iter().any(|p| c % p != 0)), || "oracle".into())?;
    Ok(format!("{} multisets independent; no 3*2^n = 2^m; every c <= 2^16 avoided", products.len()))
}

fn tropical_collapse() -> Check {
    let rows = vec![vec![Trop::int(0), Trop::int(-1)], vec![Trop::int(0), Trop::int(0)]];
    let m = trop_matrix(&rows);
    ensure(m.is_idempotent().map_err(|e| e.to_string())?, || "matrix is not idempotent".into())?;
    let sp = TropSpan::new(2, vec![tv(&[0, 0]), tv(&[-1, 0])]).map_err(|e| e.to_string())?;
    let w = match is_free_trop(&sp) {
        Freeness::NotFree { witness } => witness,
        other => return Err(format!("expected NOT_FREE, got {}", other.label())),
    };
    ensure(trop::verify_witness(&sp, &w), || "library check rejected the witness".into())?;
    let gens: Vec<Vec<Scaled>> =
        w.generators.iter().map(|&j| sp.generators()[j].iter().map(scaled).collect()).collect();
    let left: Vec<Scaled> = w.left().iter().map(scaled).collect();
    let right: Vec<Scaled> = w.right().iter().map(scaled).collect();
    let image: Vec<Scaled> = w.image().iter().map(scaled).collect();
    ensure(left != right, || "witness sides coincide".into())?;
    ensure(oracle_combine(2, &gens, &left) == image && oracle_combine(2, &gens, &right) == image, || {
        "oracle images differ".into()
    })?;
    let wd = trop::weak_dimension(&sp);
    ensure(wd == 2 && brute_force_min_generators(&sp) == 2, || format!("weak dimension {wd}"))?;
    Ok(format!("idempotent, NOT_FREE with {:?} ~ {:?} -> {:?}, dim_w = 2", w.left, w.right, w.image))
}

fn weak_cancellation() -> Check {
    let b = Kernel::Bool.weak_cancellation();
    ensure(!b.cancellative && b.witness == Some((Element::Bool(true), Element::Bool(false))), || {
        format!("BOOL: {b:?}")
    })?;
    let join = |x: bool, y: bool| x || y;
    let oracle = [false, true]
        .iter()
        .find_map(|&a| [false, true].iter().find(|&&b| b != a && join(a, a) == join(a, b)).map(|&b| (a, b)));
    ensure(oracle == Some((true, false)), || format!("oracle found {oracle:?}"))?;
    let t = Kernel::Trop.weak_cancellation();
    ensure(!t.cancellative, || "TROP reported cancellative".into())?;
    if let Some((Element::Trop(a), Element::Trop(b))) = &t.witness {
        ensure(a != b && a.oplus(a) == a.oplus(b), || "TROP witness does not collapse".into())?;
    } else {
        return Err("TROP witness missing".into());
    }
    let n = Kernel::Nat.weak_cancellation();
    ensure(n.cancellative && n.witness.is_none(), || "NAT reported not cancellative".into())?;
    ensure((0u32..50).all(|a| (0u32..50).all(|b| a + a != a + b || a == b)), || "oracle".into())?;
    Ok("BOOL false with (1,0); TROP false; NAT true".into())
}

fn table_corpus() -> semik::Result<Vec<FiniteSemiringTable>> {
    let b = FiniteSemiringTable::boolean();
    let gf2 = FiniteSemiringTable::gf(2)?;
    Ok(vec![
        b.clone(),
        b.product(&b)?,
        b.product(&b)?.product(&b)?,
        b.product(&gf2)?,
        b.matrix_semiring(2)?,
        FiniteSemiringTable::zmod(4),
        FiniteSemiringTable::zmod(6),
        FiniteSemiringTable::zmod(8),
        FiniteSemiringTable::zmod(9),
        FiniteSemiringTable::zmod(5),
        FiniteSemiringTable::gf(4)?,
        FiniteSemiringTable::gf(8)?,
        FiniteSemiringTable::gf(9)?,
        FiniteSemiringTable::gf(16)?,
        gf2.product(&FiniteSemiringTable::gf(3)?)?,
        gf2.matrix_semiring(2)?,
    ])
}

fn table_classification() -> Check {
    let b = FiniteSemiringTable::boolean();
    let m2 = b.matrix_semiring(2).map_err(|e| e.to_string())?;
    let f = classify_factors(&m2).map_err(|e| e.to_string())?;
    ensure(f == Some(vec![Factor::Bool { n: 2 }]), || format!("M2(B) classified as {f:?}"))?;
    let bb = b.product(&b).map_err(|e| e.to_string())?;
    ensure(congruence_semisimple_decompose(&bb).map_err(|e| e.to_string())?.is_some(), || {
        "B x B did not decompose".into()
    })?;
    let z4 = FiniteSemiringTable::zmod(4);
    ensure(
        classify_factors(&z4).map_err(|e| e.to_string())?.is_none()
            && congruence_semisimple_decompose(&z4).map_err(|e| e.to_string())?.is_none(),
        || "Z/4 was accepted".into(),
    )?;
    let corpus = table_corpus().map_err(|e| e.to_string())?;
    for t in &corpus {
        ensure(t.order() <= 16, || format!("{} too large", t.name()))?;
        let r = analyze_table(t, &LabOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.procedures_agree && r.opposite_agrees, || format!("{}: procedures disagree", t.name()))?;
        // Oracle: zerosumfree means no nonzero pair sums to zero.
        let n = t.order();
        let zsf = (0..n).all(|x| (0..n).all(|y| t.add(x, y) != t.zero() || (x == t.zero() && y == t.zero())));
        ensure(zsf == r.flags.zerosumfree, || format!("{}: zerosumfree flag", t.name()))?;
        if let (true, Some(fs)) = (zsf, &r.factors) {
            ensure(fs.iter().all(|f| matches!(f, Factor::Bool { .. })), || {
                format!("{}: zerosumfree with field factor", t.name())
            })?;
        }
        if let Some(fs) = &r.factors {
            let order: u128 = fs.iter().map(Factor::order).product();
            ensure(order == n as u128, || format!("{}: factor orders multiply to {order}", t.name()))?;
        }
    }
    Ok(format!("M2(B) -> [BOOL 2], B x B decomposes, Z/4 rejected, {} tables agree", corpus.len()))
}

fn verdict_fingerprint(exec: Exec) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    out.push(format!("{:?}", prime_independence(11, 3, exec).failure));
    out.push(format!("{:?}", order_unit_obstruction(1 << 12, 31, 16, exec)));
    let mut rng = rng(0x5eed_000a);
    for _ in 0..20 {
        let sp = random_span(&mut rng, 3, 4);
        let opts = FreenessOptions { exec, ..FreenessOptions::default() };
        out.push(format!("{:?}", is_free_trop_with(&sp, &opts)));
    }
    let opts = IsoOptions { exec, ..IsoOptions::default() };
    for (s, t) in [(vec![1, 2], vec![2, 1]), (vec![2, 2, 3], vec![2, 3, 2]), (vec![1, 3], vec![1, 4])] {
        let p = BratteliPresentation::constant(FieldTag::Bool, s).map_err(|e| e.to_string())?;
        let q = BratteliPresentation::constant(FieldTag::Bool, t).map_err(|e| e.to_string())?;
        out.push(format!("{:?}", iso_ultramatricial(&p, &q, &opts)));
    }
    let lab = LabOptions { exec, ..LabOptions::default() };
    for t in table_corpus().map_err(|e| e.to_string())?.iter().take(8) {
        out.push(format!("{:?}", analyze_table(t, &lab).map_err(|e| e.to_string())?));
    }
    let rows: Vec<Vec<u8>> = (0..4).map(|_| (0..4).map(|_| u8::from(rng.gen_bool(0.5))).collect()).collect();
    let m = column_span_bool(&bits_to_matrix(&rows)).map_err(|e| e.to_string())?;
    out.push(format!("{}", semik::bmod::is_projective_with(&m, exec)));
    Ok(out)
}

/// Re-runs the parallel fingerprint on pools of several sizes.
#[cfg(feature = "parallel")]
fn pooled_runs_agree(reference: &[String]) -> Result<Vec<usize>, String> {
    let sizes = vec![1, 2, 4];
    for &n in &sizes {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| e.to_string())?;
        let got = pool.install(|| verdict_fingerprint(Exec::Parallel))?;
        ensure(got == reference, || format!("{n} threads differ from sequential"))?;
    }
    Ok(sizes)
}

#[cfg(not(feature = "parallel"))]
fn pooled_runs_agree(_: &[String]) -> Result<Vec<usize>, String> {
    Ok(Vec::new())
}

fn determinism() -> Check {
    let reference = verdict_fingerprint(Exec::Sequential)?;
    ensure(verdict_fingerprint(Exec::Parallel)? == reference, || "parallel differs from sequential".into())?;
    ensure(verdict_fingerprint(Exec::Sequential)? == reference, || "sequential differs across runs".into())?;
    let threads = pooled_runs_agree(&reference)?;
    Ok(format!("{} verdicts identical: sequential x2, parallel, pools of {threads:?} threads", reference.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "Boolean column span", 0.1, column_span_of_two_by_two),
        (2, "matricial SK0 groups", 0.1, matricial_groups),
        (3, "dyadic direct limits", 5.0, dyadic_limits),
        (4, "constant presentations", 60.0, constant_presentations),
        (5, "weak dimension additivity", 30.0, weak_dimension_additivity),
        (6, "arithmetic sweeps", 10.0, arithmetic_sweeps),
        (7, "tropical idempotent collapse", 1.0, tropical_collapse),
        (8, "weak cancellativity", 0.1, weak_cancellation),
        (9, "finite semiring classification", 120.0, table_classification),
        (10, "determinism across schedules", 300.0, determinism),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs_f64(budget);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {id:>2} {name:<32} {:>9.3}s / {budget}s  {detail}", elapsed.as_secs_f64());
    }
    let spent = total.elapsed().as_secs_f64();
    println!("acceptance: {} passed, {failed} failed in {spent:.3}s", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
