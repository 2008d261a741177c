//! Acceptance suite: one line per criterion with its verdict, elapsed time
//! and time limit. Runs without the libtest harness so the lines always
//! print; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loopbrauer::algebra::{check_relations, generated_subalgebra, symmetric_plus, Element, TwoParamElement};
use loopbrauer::analysis::{
    branching_check, central_checks, content_identity, dimension_summary, ind_res_check, radical_scan, ContentCase,
    XMode,
};
use loopbrauer::diagrams::{enumerate, Family, GeneratorKind};
use loopbrauer::matrix::Matrix;
use loopbrauer::par::Exec;
use loopbrauer::scalars::{rat, ratio};
use loopbrauer::symgroup::{contents_scalar, partitions_of, SpechtRep};
use loopbrauer::Result;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn dimensions() -> Outcome {
    let expected = [(Family::A, [1u128, 2, 10, 76, 764]), (Family::L, [1, 2, 7, 34, 209])];
    let mut ok = true;
    for (f, values) in expected {
        for (n, &v) in values.iter().enumerate() {
            let s = dimension_summary(f, n)?;
            ok &= s.formula == v && s.enumerated as u128 == v;
        }
    }
    Ok((ok, "A: 1 2 10 76 764, L: 1 2 7 34 209".into()))
}

fn relations() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for n in [3, 4] {
        for r in check_relations(n)? {
            total += 1;
            if !r.holds {
                bad.push(format!("n={n} {}", r.name));
            }
        }
    }
    Ok((bad.is_empty(), format!("{total} relations, failing: {bad:?}")))
}

fn associativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let basis = enumerate(Family::A, 3);
    let mut bad = 0;
    for _ in 0..1000 {
        let pick: Vec<_> = (0..3).map(|_| basis.choose(&mut rng).unwrap().clone()).collect();
        let [a, b, c] = [0, 1, 2].map(|i| Element::basis(pick[i].clone()));
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? || a.mul(&b)?.star() != b.star().mul(&a.star())? {
            bad += 1;
        }
        let [a, b, c] = [0, 1, 2].map(|i| TwoParamElement::basis(pick[i].clone()));
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? || a.mul(&b)?.star() != b.star().mul(&a.star())? {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("1000 triples x 2 modes, {bad} failures")))
}

fn spans() -> Outcome {
    let mut ok = true;
    let mut sizes = Vec::new();
    for n in [2, 3] {
        let a = generated_subalgebra(&symmetric_plus(n, &[GeneratorKind::E, GeneratorKind::U]), n)?;
        let l = generated_subalgebra(&symmetric_plus(n, &[GeneratorKind::U]), n)?;
        ok &= a.equals_family(Family::A) && l.equals_family(Family::L);
        sizes.push(format!("n={n}: A {} L {}", a.len(), l.len()));
    }
    Ok((ok, sizes.join(", ")))
}

fn sum_of_squares() -> Outcome {
    let mut ok = true;
    for f in [Family::A, Family::L] {
        for n in 0..=4 {
            let s = dimension_summary(f, n)?;
            ok &= s.sum_of_squares == s.formula;
        }
    }
    Ok((ok, "families A, L, n = 0..4".into()))
}

fn branching() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for (f, max_n) in [(Family::A, 3), (Family::L, 4)] {
        for n in 1..=max_n {
            for m in 0..=n {
                for lambda in partitions_of(m) {
                    count += 1;
                    if !branching_check(f, n, &lambda)?.holds() {
                        bad.push(format!("{f}{n}{lambda}"));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} modules, failing: {bad:?}")))
}

fn induction() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for f in [Family::A, Family::L] {
        for n in 0..=3 {
            for m in 0..=n {
                for lambda in partitions_of(m) {
                    count += 1;
                    if !ind_res_check(f, n, &lambda)?.holds() {
                        bad.push(format!("{f}{n}{lambda}"));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} modules, failing: {bad:?}")))
}

fn central() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for f in [Family::L, Family::A] {
        for n in 1..=3 {
            for r in central_checks(f, n, &XMode::Symbolic)? {
                count += 1;
                if !r.holds {
                    bad.push(r.name);
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} identities, failing: {bad:?}")))
}

fn class_sums() -> Outcome {
    let mut count = 0;
    let mut ok = true;
    for m in 0..=5 {
        for lambda in partitions_of(m) {
            let rep = SpechtRep::new(&lambda);
            let expect = Matrix::identity(rep.dim()).scale(&contents_scalar(&lambda));
            ok &= rep.transposition_class_sum() == expect;
            count += 1;
        }
    }
    Ok((ok, format!("{count} partitions")))
}

fn semisimplicity() -> Outcome {
    let runs = [
        (Family::L, 4, vec![rat(1), rat(-1), ratio(1, 2), rat(3)]),
        (Family::A, 3, vec![ratio(1, 2), ratio(5, 2), ratio(-3, 2)]),
    ];
    let mut probes = 0;
    let mut bad = Vec::new();
    for (f, max_n, x0) in runs {
        for n in 1..=max_n {
            let r = radical_scan(f, n, &x0, Exec::Parallel)?;
            probes += r.probes.len();
            for p in r.probes.iter().filter(|p| p.radical_dim != 0) {
                bad.push(format!("{f}{n}{} at {}", p.lambda, p.x0));
            }
        }
    }
    Ok((bad.is_empty(), format!("{probes} probes, nonzero radicals: {bad:?}")))
}

fn content() -> Outcome {
    let mut count = 0;
    let mut ok = true;
    for m in 1..=4usize {
        for lambda in partitions_of(m) {
            for h in (1..=2).filter(|&h| h <= m) {
                let cases: &[ContentCase] = if h == 1 {
                    &[ContentCase::Single]
                } else {
                    &[ContentCase::Mixed, ContentCase::LoopFree]
                };
                for mu in partitions_of(m - h) {
                    for &case in cases {
                        ok &= content_identity(&lambda, &mu, case)?.is_integer();
                        count += 1;
                    }
                }
            }
        }
    }
    Ok((ok, format!("{count} pairs")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("dimension formulas", 5, dimensions),
        ("relation suite", 5, relations),
        ("associativity and anti-automorphism", 30, associativity),
        ("generator spans", 60, spans),
        ("cell dimensions sum of squares", 10, sum_of_squares),
        ("branching", 120, branching),
        ("induction and restriction", 30, induction),
        ("central identities", 120, central),
        ("transposition class sums", 10, class_sums),
        ("semisimplicity probes", 300, semisimplicity),
        ("content identity integrality", 1, content),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (pass, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<38} {} {:>9.3}s / {}s  {detail}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit,
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
