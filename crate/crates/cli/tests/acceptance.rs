//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every criterion runs even when an earlier one fails.

use std::process::Command;
use std::time::{Duration, Instant};

use lctlab::arcs::count_contact_jets;
use lctlab::budget::DEFAULT_BUDGET;
use lctlab::equiv::{formal_equiv_rank2, tougeron, verify_map};
use lctlab::expsum::{decay_profile, igusa_identity_check, OrthCheck, Sigma};
use lctlab::jacobian::{milnor_inequality, milnor_number, IdealGens};
use lctlab::lct::{
    check_cor_d, cor_d_corpus, det_roots, diag_brute_force, lct_det_fj2, lct_diag_fj2, newton_lct, yano_roots,
    CertificateWitness, CorDStatus, Threshold,
};
use lctlab::randgen::{rank2_case, taylor_case, taylor_identity_holds, tougeron_case};
use lctlab::{parse_poly, Execution, Multiplicity, Polynomial, Rational, TruncatedSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_secs), || format!("took {elapsed:.2?}, limit {limit_secs}s"))
}

fn lctlab(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_lctlab")).args(args).env_remove("LCTLAB_BUDGET").output().unwrap();
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn diagonal_grid() -> Outcome {
    let start = Instant::now();
    for n in 2..=8u32 {
        for d in 2..=8u32 {
            let (n64, d64) = (n as i64, d as i64);
            let expected = rat(n64 + d64 - 2, 2 * d64 - 2).min(rat(n64, d64));
            let got = lct_diag_fj2(n, d).map_err(|e| e.to_string())?.value;
            ensure(got == expected, || format!("n={n} d={d}: {got} != {expected}"))?;
            let (brute, _) = diag_brute_force(n, d, 50);
            ensure(brute == expected, || format!("n={n} d={d}: brute force {brute}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 1)?;
    for n in 2..=8u32 {
        for d in 2..=8u32 {
            let (code, out) = lctlab(&["lct", "diagonal", "--n", &n.to_string(), "--d", &d.to_string()]);
            let expected = rat(n as i64 + d as i64 - 2, 2 * d as i64 - 2).min(rat(n as i64, d as i64));
            ensure(code == Some(0) && out.trim() == expected.to_string(), || format!("cli n={n} d={d}: {out:?}"))?;
        }
    }
    Ok(format!("49 cells exact, brute force agrees, {elapsed:.2?}"))
}

fn determinantal() -> Outcome {
    let start = Instant::now();
    for n in 2..=6u32 {
        let cert = lct_det_fj2(n).map_err(|e| e.to_string())?;
        ensure(cert.value == rat(2, 1), || format!("n={n}: {}", cert.value))?;
        let mut lambda = vec![0u32; n as usize];
        lambda[0] = 1;
        lambda[1] = 1;
        ensure(cert.witness == CertificateWitness::Partition(lambda), || format!("n={n}: witness {:?}", cert.witness))?;
        ensure(cert.verify(), || format!("n={n}: certificate"))?;
        let alpha = det_roots(n).map_err(|e| e.to_string())?.min_exponent;
        ensure(alpha == rat(2, 1) && alpha == cert.value, || format!("n={n}: alpha {alpha}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 1)?;
    let (code, out) = lctlab(&["lct", "det", "--n", "5", "--format", "tsv"]);
    ensure(code == Some(0) && out.contains("alpha_eq_lct_fJ2=true") && out.contains("witness=1,1,0,0,0"), || {
        out.clone()
    })?;
    Ok(format!("n=2..6 give 2 with witness (1,1,0,...), alpha = 2, {elapsed:.2?}"))
}

fn theorem_regimes() -> Outcome {
    let mut strict = 0;
    for n in 2..=8u32 {
        for d in 2..=8u32 {
            let lct = lct_diag_fj2(n, d).map_err(|e| e.to_string())?.value;
            let alpha = yano_roots(n, d).map_err(|e| e.to_string())?.min_exponent;
            ensure(alpha == rat(n as i64, d as i64), || format!("n={n} d={d}: alpha {alpha}"))?;
            ensure(alpha >= lct, || format!("n={n} d={d}: {alpha} < {lct}"))?;
            ensure((alpha > lct) == (3 <= d && d < n), || format!("n={n} d={d}: strictness"))?;
            ensure((lct > rat(1, 1)) == (d < n), || format!("n={n} d={d}: lct {lct} vs 1"))?;
            strict += (alpha > lct) as u32;
        }
    }
    let (code, _) = lctlab(&["check", "thmB"]);
    ensure(code == Some(0), || "check thmB failed".into())?;
    let (code, _) = lctlab(&["check", "thmA"]);
    ensure(code == Some(0), || "check thmA failed".into())?;
    Ok(format!("alpha >= lct on 49 cells, {strict} strict, regimes exact"))
}

fn milnor() -> Outcome {
    let start = Instant::now();
    for n in 1..=3u32 {
        for d in 2..=4u32 {
            let nv = n as usize;
            let f = (0..nv).fold(Polynomial::zero(nv), |acc, i| &acc + &Polynomial::var(nv, i).pow(d));
            let mu = milnor_number(&f, 40).map_err(|e| e.to_string())?.mu();
            let expected = u64::from(d - 1).pow(n);
            ensure(mu == Some(expected), || format!("n={n} d={d}: mu {mu:?}"))?;
            let ineq = milnor_inequality(nv, expected, &rat(n as i64, d as i64));
            ensure(ineq.holds && ineq.equality == (d == 2), || format!("n={n} d={d}: {} vs {}", ineq.lhs, ineq.rhs))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 30)?;
    Ok(format!("mu = (d-1)^n for n <= 3, d <= 4, inequality tight exactly at d = 2, {elapsed:.2?}"))
}

fn equivalence() -> Outcome {
    const N: u32 = 12;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(lctlab_cli::DEFAULT_SEED);
    for i in 0..20 {
        let case = tougeron_case(&mut rng, N);
        ensure(case.f.nvars() <= 3 && case.f.multiplicity() == Multiplicity::Finite(3), || format!("case {i}: shape"))?;
        let res = tougeron(&case.f, &case.witness, N).map_err(|e| format!("tougeron case {i}: {e}"))?;
        let fg = TruncatedSeries::new(&case.f + case.g(), N);
        let check = verify_map(&case.f, &fg, &res.map, N);
        ensure(check.equal && res.map.is_automorphism(), || {
            format!("tougeron case {i}: {:?}", check.first_difference)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(lctlab_cli::DEFAULT_SEED + 1);
    for i in 0..10 {
        let case = rank2_case(&mut rng, N);
        ensure(case.f.multiplicity() == Multiplicity::Finite(2), || format!("rank2 case {i}: shape"))?;
        let res = formal_equiv_rank2(&case.f, &case.witness, N).map_err(|e| format!("rank2 case {i}: {e}"))?;
        let check = verify_map(&(&case.f + case.g()), &res.target, &res.map, N);
        ensure(check.equal && res.map.is_automorphism(), || format!("rank2 case {i}: {:?}", check.first_difference))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!("20 Tougeron and 10 rank-2 cases exact mod m^{N}, {elapsed:.2?}"))
}

fn igusa() -> Outcome {
    let mut done = 0;
    let mut vacuous = 0;
    for text in ["x^2", "x^3 + y^3", "x^3 + y^3 + z^3"] {
        let nvars = 1 + text.matches('y').count().min(1) + text.matches('z').count().min(1);
        let f = parse_poly(text, nvars).map_err(|e| e.to_string())?;
        for p in [7, 11] {
            for m in [2, 3] {
                let rep = igusa_identity_check(&f, p, m, None, None, DEFAULT_BUDGET, Execution::default())
                    .map_err(|e| format!("{text} p={p} m={m}: {e}"))?;
                ensure(rep.efz1.delta < 1e-9 && rep.efz1.holds, || {
                    format!("{text} p={p} m={m}: efz1 {}", rep.efz1.delta)
                })?;
                ensure(rep.efzj.delta < 1e-9 && rep.efzj.holds, || {
                    format!("{text} p={p} m={m}: efzj {}", rep.efzj.delta)
                })?;
                match rep.orth {
                    OrthCheck::Holds { .. } => {}
                    OrthCheck::Vacuous => vacuous += 1,
                    OrthCheck::Fails { magnitude, .. } => return Err(format!("{text} p={p} m={m}: orth {magnitude}")),
                }
                done += 1;
            }
        }
    }
    Ok(format!("{done} cases, |delta| < 1e-9, coset vanishing holds ({vacuous} vacuous)"))
}

fn decay() -> Outcome {
    let start = Instant::now();
    let f = parse_poly("x^3 + y^3", 2).map_err(|e| e.to_string())?;
    let profile = decay_profile(&f, 7, 4, Some(rat(2, 3)), 0.15, DEFAULT_BUDGET, Execution::default())
        .map_err(|e| e.to_string())?;
    let bound = 2.0 / 3.0 - 0.15;
    let mut sigmas = Vec::new();
    for level in profile.levels.iter().filter(|l| l.m >= 3) {
        let s = level.sigma.ok_or("missing sigma")?;
        ensure(s.at_least(bound), || format!("x^3+y^3 m={}: sigma {s}", level.m))?;
        sigmas.push(s.to_string());
    }
    ensure(sigmas.len() == 2, || "levels 3 and 4 missing".into())?;
    let g = parse_poly("x^2", 1).map_err(|e| e.to_string())?;
    let profile =
        decay_profile(&g, 11, 4, None, 0.15, DEFAULT_BUDGET, Execution::default()).map_err(|e| e.to_string())?;
    for level in profile.levels.iter().filter(|l| l.m >= 2) {
        let ok = matches!(level.sigma, Some(Sigma::Finite(s)) if (s - 0.5).abs() < 1e-6);
        ensure(ok, || format!("x^2 m={}: sigma {:?}", level.m, level.sigma))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    Ok(format!(
        "x^3+y^3 at 7: sigma_3, sigma_4 = {} >= {bound:.4}; x^2 at 11: sigma = 1/2, {elapsed:.2?}",
        sigmas.join(", ")
    ))
}

fn cor_d() -> Outcome {
    let corpus = cor_d_corpus();
    ensure(corpus.len() == 10, || format!("corpus has {} ideals", corpus.len()))?;
    let mono = |e: &[&[u32]]| {
        let gens = e.iter().map(|m| {
            let n = m.len();
            (0..n).fold(Polynomial::constant(n, rat(1, 1)), |acc, i| &acc * &Polynomial::var(n, i).pow(m[i]))
        });
        IdealGens::new(gens.collect()).unwrap()
    };
    for required in [mono(&[&[3, 0], &[0, 3]]), mono(&[&[2, 2]])] {
        ensure(corpus.contains(&required), || format!("{required} missing from corpus"))?;
    }
    for a in &corpus {
        let lct = newton_lct(a).map_err(|e| e.to_string())?;
        ensure(lct < Threshold::Finite(rat(1, 1)), || format!("{a}: lct {lct} not below 1"))?;
        let rep = check_cor_d(a).map_err(|e| e.to_string())?;
        ensure(rep.status == CorDStatus::Equal && rep.lct_a == rep.lct_enlarged, || {
            format!("{a}: {} vs {}", rep.lct_a, rep.lct_enlarged)
        })?;
    }
    Ok("10 ideals, lct(a + D(a)^2) = lct(a) exactly".into())
}

fn jets() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        let x = IdealGens::new(vec![Polynomial::var(1, 0)]).unwrap();
        for m in 0..=3u32 {
            for e in 0..=m + 1 {
                let c =
                    count_contact_jets(&x, p, m, e, DEFAULT_BUDGET, Execution::default()).map_err(|e| e.to_string())?;
                ensure(c == p.pow(m + 1 - e), || format!("x: p={p} m={m} e={e}: {c}"))?;
                checked += 1;
            }
        }
    }
    let det = IdealGens::new(vec![parse_poly("x1*x4 - x2*x3", 4).unwrap()]).unwrap();
    for p in [3u64, 5] {
        let c = count_contact_jets(&det, p, 1, 1, DEFAULT_BUDGET, Execution::default()).map_err(|e| e.to_string())?;
        let reduced = p.pow(3) + p.pow(2) - p;
        ensure(c == p.pow(4) * reduced && c / p.pow(4) == reduced, || format!("det p={p}: {c}"))?;
    }
    Ok(format!("{checked} coordinate counts = p^(m+1-e); det counts p^4 (p^3+p^2-p) for p = 3, 5"))
}

fn taylor() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(lctlab_cli::DEFAULT_SEED);
    for i in 0..100 {
        let (f, u, v) = taylor_case(&mut rng);
        ensure(taylor_identity_holds(&f, &u, &v), || format!("instance {i}: f = {f}"))?;
    }
    Ok("100 seeded instances exact".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("diagonal lct grid", diagonal_grid),
        ("determinantal lct", determinantal),
        ("alpha vs lct regimes", theorem_regimes),
        ("Milnor numbers", milnor),
        ("formal equivalence", equivalence),
        ("restricted-sum identities", igusa),
        ("exponential-sum decay", decay),
        ("monomial ideals", cor_d),
        ("jet counts", jets),
        ("divided-power Taylor", taylor),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
