//! Acceptance criteria, one line each. Runs single-threaded unless
//! `GSW_THREADS` is set.
//!
//! Criteria 6 and 10 are false as stated and are evaluated literally; the
//! counterexamples they print are the record. The run fails when the set
//! of failing criteria differs from that pair.

use std::time::{Duration, Instant};

use gsw_core::fuzz::{self, Suite, DEFAULT_SEED};
use gsw_core::regularity::{
    koszul_regularity, local_cohomology, min_koszul_zero_regular_truncation, regularity, verify_theorem_a,
    verify_truncation_support, weighted_regularity,
};
use gsw_core::resolution::minimal_free_resolution;
use gsw_core::toric::{
    check_containment, intersect_primes, irrelevant_torsion_vanishes, lemma_technical_check, multigraded_truncate,
    CoxData, Fan,
};
use gsw_core::{Degree, Field, Grading, Monomial, PolyRing, Polynomial, PresentedModule, Rationals, Result};

const KNOWN_RED: [u32; 2] = [6, 10];

type Outcome = Result<(bool, String)>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn weighted_ring(w: &[i64]) -> PolyRing<Rationals> {
    PolyRing::new(Rationals, Grading::weighted(w).unwrap())
}

/// `x_i` for `i` in declaration order.
fn var(ring: &PolyRing<Rationals>, i: usize) -> Polynomial<Rationals> {
    Polynomial::monomial(ring, Monomial::var(ring.grading.sorted_index(i)), ring.field.one())
}

fn twists(m: &PresentedModule<Rationals>) -> Vec<i64> {
    m.twists().iter().map(|d| d.value()).collect()
}

fn koszul_complex_golden() -> Outcome {
    let ring = weighted_ring(&[2, 3, 5]);
    let m: Vec<_> = (0..3).map(|i| var(&ring, i)).collect();
    let q = PresentedModule::quotient_ring(&ring, &m)?;
    let res = minimal_free_resolution(&q)?;
    let degs: Vec<Vec<i64>> = res
        .modules()
        .iter()
        .map(|f| {
            let mut d: Vec<i64> = f.twists.iter().map(|t| t.value()).collect();
            d.sort();
            d
        })
        .collect();
    let a = verify_theorem_a(&q)?;
    let bounds: Vec<(i64, bool)> = a.rows.iter().filter(|r| r.i > 0).map(|r| (r.max_allowed(), r.is_sharp())).collect();
    let ok = degs == vec![vec![0], vec![2, 3, 5], vec![5, 7, 8], vec![10]]
        && bounds == vec![(5, true), (8, true), (10, true)]
        && a.holds();
    Ok((ok, format!("twists {degs:?}, bounds (max, sharp) {bounds:?}")))
}

fn two_tables_golden() -> Outcome {
    let ring = weighted_ring(&[1, 2]);
    let m = PresentedModule::ideal(&ring, &[var(&ring, 0), var(&ring, 1)])?;
    let a = PresentedModule::quotient_ring(&ring, &[var(&ring, 1)])?.twist(&Degree::scalar(-1));
    let big = a.direct_sum(&PresentedModule::free(&ring, vec![Degree::scalar(2)])?)?;
    let expected = "   0 1\n1: 1 .\n2: 1 1\n";
    let mut ok = true;
    let mut detail = Vec::new();
    for (label, module, koszul) in [("m", &m, 1), ("M", &big, 2)] {
        let table = minimal_free_resolution(module)?.betti_table().to_string();
        let r = regularity(module)?;
        ok &= table == expected && r.koszul.value == koszul && r.weighted.value == 1;
        detail.push(format!(
            "{label}: table {}, koszul {}, weighted {}",
            if table == expected { "matches" } else { "differs" },
            r.koszul.value,
            r.weighted.value
        ));
    }
    let sigma = gsw_core::grading::sigma(&ring.grading)?;
    ok &= sigma == 1;
    detail.push(format!("sigma {sigma}"));
    Ok((ok, detail.join("; ")))
}

fn coordinate_quotients() -> Outcome {
    let mut ok = true;
    let mut bad = Vec::new();
    for d in [[2, 3, 5, 7], [1, 2, 3, 4], [3, 3, 3, 3], [1, 1, 2, 9], [2, 2, 5, 5]] {
        let ring = weighted_ring(&d);
        let q = PresentedModule::quotient_ring(&ring, &[var(&ring, 2), var(&ring, 3)])?;
        let s = local_cohomology(&q)?;
        let mut expect = vec![None; 5];
        expect[2] = Some(-d[0] - d[1]);
        let r = regularity(&q)?;
        let good = s.max_degree == expect
            && r.weighted.value == 2 - d[0] - d[1]
            && r.koszul.value == d[3] - d[0] - d[1] + 1;
        if !good {
            bad.push(format!("{d:?}: support {:?}, weighted {}, koszul {}", s.max_degree, r.weighted.value, r.koszul.value));
        }
        ok &= good;
    }
    Ok((ok, if bad.is_empty() { "5 weight vectors exact".into() } else { bad.join("; ") }))
}

fn steep_truncations() -> Outcome {
    let ring = weighted_ring(&[1, 10]);
    let s = PresentedModule::free(&ring, vec![Degree::scalar(0)])?;
    let t1 = twists(&s.truncate_twist(1)?);
    let t7 = twists(&s.truncate_twist(7)?);
    Ok((t1 == vec![0, 9] && t7 == vec![0, 3], format!("r=1 {t1:?}, r=7 {t7:?}")))
}

fn fuzz_line(r: &fuzz::FuzzReport) -> String {
    let first = r
        .outcomes
        .iter()
        .find(|o| !o.passed)
        .map(|o| format!(" first failure #{}: {} {}", o.index, o.instance, o.error.as_deref().unwrap_or(&o.detail)))
        .unwrap_or_default();
    format!("{}{first}", r.summary())
}

fn betti_bound_fuzz() -> Outcome {
    let reports: Vec<_> = [Suite::TheoremA, Suite::TheoremB, Suite::Symonds]
        .into_iter()
        .map(|s| fuzz::run(s, DEFAULT_SEED, 200))
        .collect();
    let ok = reports.iter().all(|r| r.holds());
    Ok((ok, reports.iter().map(fuzz_line).collect::<Vec<_>>().join("; ")))
}

/// At the least Koszul 0-regular `r`, as stated.
fn truncation_support_fuzz() -> Outcome {
    let mut failures = Vec::new();
    let mut corrected_failures = 0;
    for (k, inst) in fuzz::instances(Suite::TheoremA, DEFAULT_SEED, 50).iter().enumerate() {
        let ring = inst.ring(Rationals)?;
        let m = inst.module(&ring)?;
        min_koszul_zero_regular_truncation(&m)?;
        let r = verify_truncation_support(&m)?;
        if !r.least.holds() {
            failures.push(format!("#{k} {inst} at r = {}: {:?}", r.least.r, r.least.violations));
        }
        if !r.positive_depth.holds() {
            corrected_failures += 1;
        }
    }
    let first = failures.first().cloned().unwrap_or_default();
    Ok((
        failures.is_empty(),
        format!(
            "{} of 50 violate at the least r (entries (i, j) with j = w^(i+1) in the last index; e.g. {first}); \
             {corrected_failures} violate at the least r with positive depth",
            failures.len()
        ),
    ))
}

fn triple_oracle() -> Outcome {
    let r = fuzz::run(Suite::Triple, DEFAULT_SEED, 25);
    Ok((r.holds(), fuzz_line(&r)))
}

fn standard_graded() -> Outcome {
    let r = fuzz::run(Suite::Standard, DEFAULT_SEED, 20);
    Ok((r.holds(), fuzz_line(&r)))
}

fn hirzebruch_golden() -> Outcome {
    let cox = CoxData::new(Fan::hirzebruch(3)?)?;
    let mut checks = Vec::new();
    checks.push(("degree matrix", cox.degree_matrix == vec![vec![1, -3, 1, 0], vec![0, 1, 0, 1]]));
    let masks: Vec<u32> = cox.collections.iter().map(|c| c.mask()).collect();
    checks.push(("collections", masks == vec![0b0101, 0b1010]));
    checks.push(("irrelevant ideal", cox.irrelevant == intersect_primes(&[0b0101, 0b1010])));
    let fns: Vec<&Vec<i64>> = cox.collections.iter().map(|c| &c.functional).collect();
    checks.push(("projections", fns == [&vec![1, 0], &vec![0, 1]]));
    checks.push(("w <= 2", cox.collections.iter().all(|c| (0..=6).all(|j| c.w(j) <= 2))));

    let ring = cox.ring(Rationals);
    let n = PresentedModule::quotient_ring(&ring, &[Polynomial::monomial(&ring, cox.monomial(0b0011), ring.field.one())])?;
    let t = multigraded_truncate(&n, &Degree::from_slice(&[2, 3]))?.module;
    let betti = minimal_free_resolution(&t)?.betti_table();
    let d = |x: i64, y: i64| Degree::from_slice(&[x, y]);
    let mut got: Vec<(usize, Degree, usize)> = betti.entries().map(|(i, a, m)| (i, a.clone(), m)).collect();
    got.sort();
    let mut expect = vec![
        (0, d(0, 0), 6),
        (1, d(-3, 1), 2),
        (1, d(0, 1), 3),
        (1, d(1, 0), 5),
        (2, d(-2, 1), 1),
        (2, d(1, 1), 3),
    ];
    expect.sort();
    checks.push(("resolution", got == expect));
    checks.push(("H^0_B = 0", irrelevant_torsion_vanishes(&t, &cox)?));
    checks.push(("containment", check_containment(&t, &cox, true)?.holds()));
    let mut lemmas = true;
    for c in &cox.collections {
        lemmas &= lemma_technical_check(&t, &cox, &c.members)?.holds();
    }
    checks.push(("Tor bound", lemmas));
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Ok((
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            format!("failed: {failed:?}")
        },
    ))
}

/// Koszul regularity multiplied by `λ`, as stated.
fn rescaling() -> Outcome {
    let mut koszul_bad = Vec::new();
    let mut weighted_witness = None;
    for inst in fuzz::instances(Suite::Rescale, DEFAULT_SEED, 10) {
        let m = inst.module(&inst.ring(Rationals)?)?;
        let (k, w) = (koszul_regularity(&m)?, weighted_regularity(&m)?);
        for lambda in [2, 3] {
            let s = inst.rescaled(lambda);
            let sm = s.module(&s.ring(Rationals)?)?;
            let (sk, sw) = (koszul_regularity(&sm)?, weighted_regularity(&sm)?);
            if sk != lambda * k {
                koszul_bad.push(format!("{inst} lambda {lambda}: {k} -> {sk}"));
            }
            if sw != lambda * w && weighted_witness.is_none() {
                weighted_witness = Some(format!("{inst} lambda {lambda}: {w} -> {sw}"));
            }
        }
    }
    let ok = koszul_bad.is_empty() && weighted_witness.is_some();
    Ok((
        ok,
        format!(
            "koszul not multiplied in {} of 20 cases (e.g. {}); weighted witness: {}",
            koszul_bad.len(),
            koszul_bad.first().map_or("none", |s| s.as_str()),
            weighted_witness.as_deref().unwrap_or("none")
        ),
    ))
}

fn main() {
    if std::env::var("GSW_THREADS").is_err() {
        std::env::set_var("GSW_THREADS", "1");
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "Koszul complex on (2,3,5)", budget: secs(1), run: koszul_complex_golden },
        Criterion { id: 2, name: "two modules over (1,2)", budget: secs(1), run: two_tables_golden },
        Criterion { id: 3, name: "S/(x2,x3) for five weight vectors", budget: secs(5), run: coordinate_quotients },
        Criterion { id: 4, name: "truncations over (1,10)", budget: secs(1), run: steep_truncations },
        Criterion { id: 5, name: "Betti/cohomology bound fuzz", budget: secs(600), run: betti_bound_fuzz },
        Criterion { id: 6, name: "truncation Betti support fuzz", budget: secs(600), run: truncation_support_fuzz },
        Criterion { id: 7, name: "three Tor computations agree", budget: secs(300), run: triple_oracle },
        Criterion { id: 8, name: "standard grading regression", budget: secs(120), run: standard_graded },
        Criterion { id: 9, name: "Hirzebruch surface", budget: secs(120), run: hirzebruch_golden },
        Criterion { id: 10, name: "rescaling", budget: secs(120), run: rescaling },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, d)) => (ok && elapsed <= c.budget, d),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "criterion {:>2} {}: {} ({:.2?} of {:?}) {detail}",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            c.budget
        );
        if !ok {
            failed.push(c.id);
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    let unexpected: Vec<u32> = failed.iter().copied().filter(|i| !KNOWN_RED.contains(i)).collect();
    let recovered: Vec<u32> = KNOWN_RED.iter().copied().filter(|i| !failed.contains(i)).collect();
    if !recovered.is_empty() {
        println!("criteria {recovered:?} were expected to fail and passed");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
