use lctlab::arcs::count_contact_jets;
use lctlab::equiv::{formal_equiv_rank2, morsify, tougeron, verify_map, EquivError};
use lctlab::expsum::{
    count_solutions, decay_profile, exp_sum, igusa_identity_check, residue_histogram, restricted_histogram, OrthCheck,
    ResidueHistogram, Sigma,
};
use lctlab::jacobian::{
    jacobian_square, jacobian_square_pairs, milnor_inequality, milnor_number, IdealGens, MembershipWitness,
    MilnorNumber,
};
use lctlab::lct::{
    check_cor_d, check_diagonal_grid, check_theorems, cor_d_corpus, det_roots, diag_brute_force, lct_det_fj2,
    lct_diag_closed_form, lct_diag_fj2, newton_lct, yano_roots, CertificateWitness, CorDStatus, Family, TheoremReport,
};
use lctlab::randgen::{random_witness, rank2_case, taylor_case, taylor_identity_holds, tougeron_case};
use lctlab::{CoordinateMap, Multiplicity, Polynomial, Rational, TruncatedSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::input;
use crate::report::{sig12, Format, Report, Row};
use crate::{CheckCommand, CliError, Command, GlobalOpts, JetsCommand, LctCommand};

/// Integer range of the brute-force cross-check in `lct diagonal`.
const BRUTE_FORCE_LIMIT: u64 = 50;
/// Largest determinantal size in the family checks.
const DET_MAX: u32 = 6;

pub fn dispatch(command: &Command, g: &GlobalOpts) -> Result<Report, CliError> {
    match command {
        Command::Lct(LctCommand::Diagonal { n, d }) => lct_diagonal(*n, *d, g),
        Command::Lct(LctCommand::Det { n }) => lct_det(*n, g),
        Command::Lct(LctCommand::Monomial { ideal }) => {
            let a = input::ideal(&ideal.ideal, ideal.nvars)?;
            let mut r = Report::new("lct monomial", config(g).with("ideal", ideal.ideal.as_str()));
            r.headline = Some("lct".into());
            r.row(
                Row::new()
                    .with("ideal", a.to_string())
                    .with("nvars", a.nvars())
                    .with("lct", newton_lct(&a)?.to_string()),
            );
            Ok(r)
        }
        Command::Morsify { poly, order } => {
            let f = input::poly(poly)?;
            run_morsify(&f, *order, g)
        }
        Command::Tougeron { poly, witness, order } => {
            let f = input::poly(poly)?;
            run_tougeron(&f, witness.as_deref(), *order, g)
        }
        Command::Milnor { poly, order, alpha } => {
            let f = input::poly(poly)?;
            let alpha = alpha.as_deref().map(input::rational).transpose()?;
            run_milnor(&f, *order, alpha, g)
        }
        Command::Jets(JetsCommand::Count { ideal, p, m, e }) => {
            let a = input::ideal(&ideal.ideal, ideal.nvars)?;
            let count = count_contact_jets(&a, *p, *m, *e, g.budget, g.exec())?;
            let n = a.nvars() as u32;
            let density = count as f64 / (*p as f64).powi(((*m + 1) * n) as i32);
            let mut r = Report::new(
                "jets count",
                config(g).with("ideal", ideal.ideal.as_str()).with("p", *p).with("m", *m).with("e", *e),
            );
            r.headline = Some("count".into());
            r.row(
                Row::new()
                    .with("p", *p)
                    .with("m", *m)
                    .with("e", *e)
                    .with("count", count)
                    .with("density", num12(density)),
            );
            Ok(r)
        }
        Command::Expsum { poly, p, m, restrict } => {
            let f = input::poly(poly)?;
            let z = restrict.as_deref().map(|s| input::ideal(s, Some(f.nvars()))).transpose()?;
            let hist = match &z {
                Some(z) => restricted_histogram(&f, *p, *m, Some(z), g.budget, g.exec())?,
                None => residue_histogram(&f, *p, *m, g.budget, g.exec())?,
            };
            let mut cfg = config(g).with("poly", f.to_string()).with("p", *p).with("m", *m);
            if let Some(z) = &z {
                cfg.push("restrict", z.to_string());
            }
            let mut r = Report::new("expsum", cfg);
            r.row(sum_row(*p, *m, &hist));
            Ok(r)
        }
        Command::Decay { poly, p, mmax, lct, epsilon } => {
            let f = input::poly(poly)?;
            let lct = lct.as_deref().map(input::rational).transpose()?;
            run_decay(&f, *p, *mmax, lct, *epsilon, g)
        }
        Command::IgusaCheck { poly, p, m, restrict, min_p } => {
            let f = input::poly(poly)?;
            let z = restrict.as_deref().map(|s| input::ideal(s, Some(f.nvars()))).transpose()?;
            run_igusa(&f, *p, *m, z.as_ref(), *min_p, g)
        }
        Command::Nk { poly, p, k } => {
            let f = input::poly(poly)?;
            let count = count_solutions(&f, *p, *k, g.budget, g.exec())?;
            let mut r = Report::new("nk", config(g).with("poly", f.to_string()).with("p", *p).with("k", *k));
            r.headline = Some("count".into());
            r.row(Row::new().with("p", *p).with("k", *k).with("count", count));
            Ok(r)
        }
        Command::Check(c) => check(c, g),
        Command::Golden => unreachable!("handled before dispatch"),
    }
}

fn config(g: &GlobalOpts) -> Row {
    let format = match g.format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Tsv => "tsv",
    };
    Row::new()
        .with("budget", g.budget)
        .with("seed", g.seed)
        .with("format", format)
        .with("execution", if g.exec().is_parallel() { "parallel" } else { "sequential" })
}

/// JSON number rounded to 12 significant digits; non-finite values as text.
pub fn num12(x: f64) -> Value {
    let s = sig12(x);
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Value::from(v),
        _ => Value::from(s),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn map_images(map: &CoordinateMap) -> Vec<String> {
    map.images().iter().map(|s| s.poly().to_string()).collect()
}

fn lct_diagonal(n: u32, d: u32, g: &GlobalOpts) -> Result<Report, CliError> {
    let cert = lct_diag_fj2(n, d)?;
    let alpha = yano_roots(n, d)?.min_exponent;
    let (brute, _) = diag_brute_force(n, d, BRUTE_FORCE_LIMIT);
    let closed = lct_diag_closed_form(n, d);
    let CertificateWitness::Diagonal { a, b, .. } = cert.witness else {
        return Err(CliError::Failed("unexpected certificate shape".into()));
    };
    let verified = cert.verify();
    let mut r = Report::new("lct diagonal", config(g).with("n", n).with("d", d));
    r.headline = Some("lct_fJ2".into());
    r.fail_unless(verified && closed == cert.value && brute == cert.value);
    r.row(
        Row::new()
            .with("n", n)
            .with("d", d)
            .with("lct_fJ2", cert.value.to_string())
            .with("alpha", alpha.to_string())
            .with("strict", alpha > cert.value)
            .with("witness", format!("a={a},b={b}"))
            .with("certificate_verified", verified)
            .with("closed_form", closed.to_string())
            .with("brute_force", brute.to_string())
            .with("bound", cert.bound_proof.as_str()),
    );
    Ok(r)
}

fn lct_det(n: u32, g: &GlobalOpts) -> Result<Report, CliError> {
    let cert = lct_det_fj2(n)?;
    let alpha = det_roots(n)?.min_exponent;
    let CertificateWitness::Partition(lambda) = &cert.witness else {
        return Err(CliError::Failed("unexpected certificate shape".into()));
    };
    let verified = cert.verify();
    let mut r = Report::new("lct det", config(g).with("n", n));
    r.headline = Some("lct_fJ2".into());
    r.fail_unless(verified);
    r.row(
        Row::new()
            .with("n", n)
            .with("lct_fJ2", cert.value.to_string())
            .with("witness", join(lambda))
            .with("alpha", alpha.to_string())
            .with("alpha_eq_lct_fJ2", alpha == cert.value)
            .with("certificate_verified", verified)
            .with("bound", cert.bound_proof.as_str()),
    );
    Ok(r)
}

fn run_morsify(f: &Polynomial, order: u32, g: &GlobalOpts) -> Result<Report, CliError> {
    let m = morsify(f, order)?;
    let check = verify_map(f, &m.normal_form(), &m.map, order);
    let mut r = Report::new("morsify", config(g).with("poly", f.to_string()).with("order", order));
    r.fail_unless(check.equal);
    r.row(
        Row::new()
            .with("rank", m.rank())
            .with("diag_coeffs", join(&m.diag_coeffs))
            .with("residual", m.residual.poly().to_string())
            .with("map", map_images(&m.map))
            .with("automorphism", m.map.is_automorphism())
            .with("verified", check.equal)
            .with("first_difference", check.first_difference),
    );
    Ok(r)
}

fn run_tougeron(f: &Polynomial, witness: Option<&str>, order: u32, g: &GlobalOpts) -> Result<Report, CliError> {
    let n = f.nvars();
    let mult = f.multiplicity();
    let witness = match witness {
        Some(list) => {
            let hs = input::poly_list(list, Some(n), n)?;
            let pairs = jacobian_square_pairs(n).len();
            if hs.len() != pairs || hs.iter().any(|h| h.nvars() != n) {
                return Err(CliError::Usage(format!("--witness needs {pairs} entries h_ij (i <= j) in {n} variables")));
            }
            let mut w = MembershipWitness {
                target: Polynomial::zero(n),
                coefficients: hs.into_iter().map(|h| TruncatedSeries::new(h, order)).collect(),
                order,
            };
            w.target = w.combination(&jacobian_square(f)?);
            w
        }
        None => {
            // h_ij in m keeps the quadratic part, as the rank-2 case needs
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            random_witness(&mut rng, f, order, mult.lower_bound() >= 3)
        }
    };
    let gpoly = witness.target.clone();
    let fg = f + &gpoly;
    let mut cfg = config(g).with("poly", f.to_string()).with("order", order);
    cfg.push("g", gpoly.to_string());
    let mut r = Report::new("tougeron", cfg);
    let (mode, map, iterations, check) = match mult {
        Multiplicity::Finite(2) => {
            let res = formal_equiv_rank2(f, &witness, order)?;
            let check = verify_map(&fg, &res.target, &res.map, order);
            ("rank2", res.map, res.tougeron_iterations, check)
        }
        _ => {
            let res = tougeron(f, &witness, order)?;
            let check = verify_map(f, &TruncatedSeries::new(fg.clone(), order), &res.map, order);
            ("tougeron", res.map, res.iterations, check)
        }
    };
    r.fail_unless(check.equal);
    r.row(
        Row::new()
            .with("mode", mode)
            .with("g", gpoly.to_string())
            .with("iterations", iterations)
            .with("map", map_images(&map))
            .with("automorphism", map.is_automorphism())
            .with("verified", check.equal)
            .with("first_difference", check.first_difference),
    );
    Ok(r)
}

fn run_milnor(f: &Polynomial, order: u32, alpha: Option<Rational>, g: &GlobalOpts) -> Result<Report, CliError> {
    let result = milnor_number(f, order)?;
    let mut cfg = config(g).with("poly", f.to_string()).with("order", order);
    if let Some(a) = &alpha {
        cfg.push("alpha", a.to_string());
    }
    let mut r = Report::new("milnor", cfg);
    r.headline = Some(if result.mu().is_some() { "mu" } else { "status" }.into());
    let mut row = Row::new();
    match &result {
        MilnorNumber::Isolated { mu, stabilized_at } => {
            row.push("status", "isolated");
            row.push("mu", *mu);
            row.push("stabilized_at", *stabilized_at);
        }
        MilnorNumber::NonIsolated { last_order, colengths } => {
            row.push("status", "non-isolated (heuristic)");
            row.push("mu", Value::Null);
            row.push("last_order", *last_order);
            row.push("colengths", join(colengths));
        }
        MilnorNumber::Inconclusive { max_order, colengths } => {
            row.push("status", "inconclusive");
            row.push("mu", Value::Null);
            row.push("last_order", *max_order);
            row.push("colengths", join(colengths));
        }
    }
    if let (Some(a), Some(mu)) = (alpha, result.mu()) {
        let ineq = milnor_inequality(f.nvars(), mu, &a);
        row.push("lhs", ineq.lhs.to_string());
        row.push("rhs", ineq.rhs.to_string());
        row.push("holds", ineq.holds);
        row.push("equality", ineq.equality);
        r.fail_unless(ineq.holds);
    }
    r.row(row);
    Ok(r)
}

fn sigma_value(s: Option<Sigma>) -> Value {
    match s {
        None => Value::Null,
        Some(Sigma::Infinite) => Value::from("+inf"),
        Some(Sigma::Finite(x)) => num12(x),
    }
}

/// Rounding noise of the summation, below anything a sum of `p^k` roots of
/// unity can produce in the supported range.
const SUM_NOISE: f64 = 1e-12;

fn zap(x: f64) -> f64 {
    if x.abs() < SUM_NOISE {
        0.0
    } else {
        x
    }
}

pub(crate) fn sum_row(p: u64, m: u32, hist: &ResidueHistogram) -> Row {
    let e = exp_sum(hist);
    let (re, im) = (zap(e.re), zap(e.im));
    let abs = re.hypot(im);
    let exact_zero = hist.sums_to_zero();
    let sigma = (m >= 2).then(|| {
        if exact_zero {
            Sigma::Infinite
        } else {
            Sigma::Finite(-abs.ln() / (m as f64 * (p as f64).ln()))
        }
    });
    Row::new()
        .with("p", p)
        .with("m", m)
        .with("re", num12(re))
        .with("im", num12(im))
        .with("abs", num12(abs))
        .with("sigma_m", sigma_value(sigma))
        .with("exact_zero", exact_zero)
}

fn run_decay(
    f: &Polynomial,
    p: u64,
    mmax: u32,
    lct: Option<Rational>,
    epsilon: f64,
    g: &GlobalOpts,
) -> Result<Report, CliError> {
    let profile = decay_profile(f, p, mmax, lct.clone(), epsilon, g.budget, g.exec())?;
    let mut cfg = config(g).with("poly", f.to_string()).with("p", p).with("mmax", mmax).with("epsilon", num12(epsilon));
    if let Some(l) = &lct {
        cfg.push("lct", l.to_string());
    }
    let mut r = Report::new("decay", cfg);
    for level in &profile.levels {
        r.row(
            Row::new()
                .with("m", level.m)
                .with("re", num12(zap(level.value.re)))
                .with("im", num12(zap(level.value.im)))
                .with("abs", num12(level.abs))
                .with("sigma_m", sigma_value(level.sigma))
                .with("exact_zero", level.exact_zero)
                .with("violation", profile.violations.contains(&level.m)),
        );
    }
    r.fail_unless(profile.violations.is_empty());
    Ok(r)
}

fn run_igusa(
    f: &Polynomial,
    p: u64,
    m: u32,
    z: Option<&IdealGens>,
    min_p: Option<u64>,
    g: &GlobalOpts,
) -> Result<Report, CliError> {
    let rep = igusa_identity_check(f, p, m, z, min_p, g.budget, g.exec())?;
    let mut cfg = config(g).with("poly", f.to_string()).with("p", p).with("m", m).with("min_p", rep.min_p);
    if let Some(z) = z {
        cfg.push("restrict", z.to_string());
    }
    let mut r = Report::new("igusa-check", cfg);
    let e = rep.efz1.lhs;
    let sigma = if e.norm() == 0.0 || rep.efz1.exact && e.norm() < f64::EPSILON {
        Value::from("+inf")
    } else {
        num12(-e.norm().ln() / (m as f64 * (p as f64).ln()))
    };
    let orth = match &rep.orth {
        OrthCheck::Holds { .. } => Value::from(true),
        OrthCheck::Fails { .. } => Value::from(false),
        OrthCheck::Vacuous => Value::from("vacuous"),
    };
    let checks = serde_json::json!({ "efz1": rep.efz1.holds, "efzj": rep.efzj.holds, "orth": orth });
    let mut row = Row::new()
        .with("p", p)
        .with("m", m)
        .with("re", num12(zap(e.re)))
        .with("im", num12(zap(e.im)))
        .with("abs", num12(e.norm()))
        .with("sigma_m", sigma)
        .with("checks", checks)
        .with("delta_efz1", num12(rep.efz1.delta))
        .with("delta_efzj", num12(rep.efzj.delta));
    if let OrthCheck::Fails { x0, magnitude } = &rep.orth {
        row.push("orth_x0", join(x0));
        row.push("orth_magnitude", num12(*magnitude));
    }
    r.row(row);
    if !rep.passed() {
        if rep.below_min_p {
            r.warnings.push(format!("identity check failed at p = {p} <= min-p = {}", rep.min_p));
        } else {
            r.fail_unless(false);
        }
    }
    Ok(r)
}

fn check(c: &CheckCommand, g: &GlobalOpts) -> Result<Report, CliError> {
    match c {
        CheckCommand::ThmB { grid } => theorem_grid("check thmB", *grid, THM_B, g),
        CheckCommand::ThmA { grid } => theorem_grid("check thmA", *grid, THM_A, g),
        CheckCommand::CorD { ideal, nvars } => {
            let ideals = match ideal {
                Some(s) => vec![input::ideal(s, *nvars)?],
                None => cor_d_corpus(),
            };
            let mut cfg = config(g);
            cfg.push("corpus", if ideal.is_some() { "user" } else { "built-in" });
            let mut r = Report::new("check corD", cfg);
            for a in &ideals {
                let rep = check_cor_d(a)?;
                let status = match rep.status {
                    CorDStatus::Equal => "equal",
                    CorDStatus::Differ => "differ",
                    CorDStatus::Skipped => "skipped",
                };
                r.fail_unless(rep.status != CorDStatus::Differ);
                r.row(
                    Row::new()
                        .with("ideal", a.to_string())
                        .with("lct", rep.lct_a.to_string())
                        .with("lct_enlarged", rep.lct_enlarged.to_string())
                        .with("status", status),
                );
            }
            Ok(r)
        }
        CheckCommand::Milnor { n, d } => {
            if *n == 0 || *d < 2 {
                return Err(CliError::Usage("check milnor needs --n >= 1 and --d >= 2".into()));
            }
            let mut r = Report::new("check milnor", config(g).with("n", *n).with("d", *d));
            for row in milnor_rows(*n, *d)? {
                r.fail_unless(row.get("ok") == Some(&Value::from(true)));
                r.row(row);
            }
            Ok(r)
        }
        CheckCommand::Equiv { cases, order } => run_equiv(*cases, *order, g),
        CheckCommand::Taylor { cases } => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let failed: Vec<usize> = (0..*cases)
                .filter(|_| {
                    let (f, u, v) = taylor_case(&mut rng);
                    !taylor_identity_holds(&f, &u, &v)
                })
                .collect();
            let mut r = Report::new("check taylor", config(g).with("cases", *cases));
            r.fail_unless(failed.is_empty());
            r.row(Row::new().with("cases", *cases).with("passed", cases - failed.len()).with("failed", join(&failed)));
            Ok(r)
        }
    }
}

const THM_B: &[&str] = &[
    "certificate",
    "closed_form",
    "alpha_is_n_over_d",
    "alpha_ge_lct_fj2",
    "strict_iff_3_le_d_lt_n",
    "witness_is_1_1_0",
    "alpha_is_2",
    "alpha_eq_lct_fj2",
];

const THM_A: &[&str] = &[
    "certificate",
    "lct_f_matches_newton",
    "rational_iff_d_lt_n",
    "rational_iff_alpha_gt_1",
    "lct_fj2_eq_lct_f_if_d_ge_n",
    "witness_is_1_1_0",
    "rational",
];

fn theorem_row(rep: &TheoremReport, names: &[&str]) -> (Row, bool) {
    let failed: Vec<&str> = rep.checks.iter().filter(|(k, ok)| names.contains(k) && !ok).map(|(k, _)| *k).collect();
    let mut row = Row::new();
    match rep.family {
        Family::Diagonal { n, d } => {
            row.push("family", "diagonal");
            row.push("n", n);
            row.push("d", d);
        }
        Family::Determinantal { n } => {
            row.push("family", "determinantal");
            row.push("n", n);
        }
    }
    row.push("lct_f", rep.lct_f.to_string());
    row.push("lct_fJ2", rep.lct_fj2.to_string());
    row.push("alpha", rep.alpha.to_string());
    row.push("strict", rep.strict);
    row.push("rational", rep.rational);
    row.push("ok", failed.is_empty());
    if !failed.is_empty() {
        row.push("failed", failed.join(","));
    }
    (row, failed.is_empty())
}

fn theorem_grid(name: &str, grid: u32, checks: &[&str], g: &GlobalOpts) -> Result<Report, CliError> {
    if grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let mut r = Report::new(name, config(g).with("grid", grid));
    let mut reports = check_diagonal_grid(grid, grid, g.exec())?;
    for n in 2..=grid.min(DET_MAX) {
        reports.push(check_theorems(Family::Determinantal { n })?);
    }
    for rep in &reports {
        let (row, ok) = theorem_row(rep, checks);
        r.fail_unless(ok);
        r.row(row);
    }
    Ok(r)
}

/// Milnor numbers of `x_1^d + ... + x_n^d` against `(d-1)^n` and the
/// inequality with `alpha = n/d`, over `1..=n_max`, `2..=d_max`.
pub fn milnor_rows(n_max: u32, d_max: u32) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for d in 2..=d_max {
            let nv = n as usize;
            let f = (0..nv).fold(Polynomial::zero(nv), |acc, i| &acc + &Polynomial::var(nv, i).pow(d));
            let mu = milnor_number(&f, 4 * d * n + 4)?.mu();
            let expected = u64::from(d - 1).pow(n);
            let alpha = yano_roots(n, d)?.min_exponent;
            let mut row = Row::new().with("n", n).with("d", d).with("mu", mu).with("expected_mu", expected);
            let ok = match mu {
                Some(mu) => {
                    let ineq = milnor_inequality(nv, mu, &alpha);
                    row.push("alpha", alpha.to_string());
                    row.push("lhs", ineq.lhs.to_string());
                    row.push("rhs", ineq.rhs.to_string());
                    row.push("holds", ineq.holds);
                    row.push("equality", ineq.equality);
                    mu == expected && ineq.holds && ineq.equality == (d == 2)
                }
                None => false,
            };
            row.push("ok", ok);
            rows.push(row);
        }
    }
    Ok(rows)
}

fn equiv_row(kind: &str, i: usize, f: &Polynomial, result: Result<(u32, bool, bool), EquivError>) -> (Row, bool) {
    let row = Row::new().with("kind", kind).with("case", i).with("nvars", f.nvars()).with("f", f.to_string());
    match result {
        Ok((iterations, verified, automorphism)) => {
            let ok = verified && automorphism;
            (
                row.with("iterations", iterations)
                    .with("verified", verified)
                    .with("automorphism", automorphism)
                    .with("ok", ok),
                ok,
            )
        }
        Err(e) => (row.with("error", e.to_string()).with("ok", false), false),
    }
}

/// `cases` Tougeron instances (multiplicity 3) and `cases / 2` rank-2
/// instances from one seeded stream.
pub fn equiv_cases(seed: u64, cases: usize, order: u32) -> Vec<(Row, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..cases {
        let case = tougeron_case(&mut rng, order);
        let fg = TruncatedSeries::new(&case.f + case.g(), order);
        let res = tougeron(&case.f, &case.witness, order)
            .map(|t| (t.iterations, verify_map(&case.f, &fg, &t.map, order).equal, t.map.is_automorphism()));
        out.push(equiv_row("tougeron", i, &case.f, res));
    }
    for i in 0..cases / 2 {
        let case = rank2_case(&mut rng, order);
        let fg = &case.f + case.g();
        let res = formal_equiv_rank2(&case.f, &case.witness, order)
            .map(|t| (t.tougeron_iterations, verify_map(&fg, &t.target, &t.map, order).equal, t.map.is_automorphism()));
        out.push(equiv_row("rank2", i, &case.f, res));
    }
    out
}

fn run_equiv(cases: usize, order: u32, g: &GlobalOpts) -> Result<Report, CliError> {
    if order < 3 {
        return Err(CliError::Usage("--order must be at least 3".into()));
    }
    let mut r = Report::new("check equiv", config(g).with("cases", cases).with("order", order));
    for (row, ok) in equiv_cases(g.seed, cases, order) {
        r.fail_unless(ok);
        r.row(row);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_check_names_exist() {
        let diag = check_theorems(Family::Diagonal { n: 4, d: 3 }).unwrap();
        let det = check_theorems(Family::Determinantal { n: 3 }).unwrap();
        for name in THM_A.iter().chain(THM_B) {
            assert!(diag.checks.iter().chain(&det.checks).any(|(k, _)| k == name), "{name}");
        }
    }

    #[test]
    fn noise_is_zeroed() {
        assert_eq!(zap(-1.7e-18), 0.0);
        assert_eq!(zap(0.0204), 0.0204);
        assert_eq!(num12(1.0 / 3.0), Value::from(0.333333333333));
    }
}
