//! Golden TSV tables.
//!
//! Every table starts with `#` comment lines naming the schema and, for
//! floating columns, the comparison tolerance. Rows are `key=value` cells in
//! a fixed column order, so a rerun is byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use lctlab::expsum::residue_histogram;
use lctlab::lct::{det_roots, lct_det_fj2, lct_diag_fj2, yano_roots};
use lctlab::{parse_poly, Execution, Rational};

use crate::commands::{milnor_rows, sum_row};
use crate::report::{Row, SCHEMA};
use crate::CliError;

/// Diagonal families `x_1^d + ... + x_n^d` for `2 <= n, d <= GRID`.
pub const GRID: u32 = 8;
pub const DET_MAX: u32 = 6;
/// Absolute tolerance for floating columns.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// `(polynomial, p, m_max)` for the exponential-sum profiles.
pub const EXPSUM_PROFILES: &[(&str, u64, u32)] =
    &[("x^2", 11, 4), ("x^3", 7, 4), ("x*y", 5, 4), ("x^3 + y^3", 7, 4), ("x^3 + y^3 + z^3", 5, 3)];

/// One golden table: file name and full contents.
pub struct Table {
    pub name: &'static str,
    pub contents: String,
}

fn table(name: &'static str, comments: &[&str], rows: impl IntoIterator<Item = Row>) -> Table {
    let mut s = String::new();
    let _ = writeln!(s, "# schema={SCHEMA}\ttable={}", name.trim_end_matches(".tsv"));
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    for r in rows {
        let _ = writeln!(s, "{}", r.to_tsv());
    }
    Table { name, contents: s }
}

fn diagonal() -> Result<Table, CliError> {
    let mut rows = Vec::new();
    for n in 2..=GRID {
        for d in 2..=GRID {
            let lct = lct_diag_fj2(n, d)?.value;
            let alpha = yano_roots(n, d)?.min_exponent;
            let strict = alpha > lct;
            rows.push(
                Row::new()
                    .with("n", n)
                    .with("d", d)
                    .with("lct_fJ2", lct.to_string())
                    .with("alpha", alpha.to_string())
                    .with("strict", strict),
            );
        }
    }
    Ok(table("diagonal.tsv", &["f = x_1^d + ... + x_n^d; exact rationals"], rows))
}

fn det() -> Result<Table, CliError> {
    let mut rows = Vec::new();
    for n in 2..=DET_MAX {
        let lct = lct_det_fj2(n)?.value;
        let alpha = det_roots(n)?.min_exponent;
        rows.push(Row::new().with("n", n).with("lct_fJ2", lct.to_string()).with("alpha", alpha.to_string()));
    }
    Ok(table("det.tsv", &["f = det of the generic n x n matrix; exact rationals"], rows))
}

/// Roots as `r^k` where `k` is the multiplicity.
fn root_list(roots: &[(Rational, u64)]) -> String {
    let cell = |(r, k): &(Rational, u64)| if *k == 1 { r.to_string() } else { format!("{r}^{k}") };
    roots.iter().map(cell).collect::<Vec<_>>().join(",")
}

fn yano() -> Result<Table, CliError> {
    let mut rows = Vec::new();
    for n in 1..=4 {
        for d in 2..=5 {
            let t = yano_roots(n, d)?;
            rows.push(
                Row::new()
                    .with("n", n)
                    .with("d", d)
                    .with("alpha", t.min_exponent.to_string())
                    .with("roots", root_list(&t.roots)),
            );
        }
    }
    Ok(table("yano.tsv", &["negated roots of b_f(s)/(s+1) for x_1^d + ... + x_n^d, written root^multiplicity"], rows))
}

fn milnor() -> Result<Table, CliError> {
    let rows = milnor_rows(3, 4)?;
    Ok(table(
        "milnor.tsv",
        &["f = x_1^d + ... + x_n^d; alpha^n mu >= (n/2)^n with lhs = alpha^n mu, rhs = (n/2)^n"],
        rows,
    ))
}

fn expsum(budget: u64, exec: Execution) -> Result<Table, CliError> {
    let mut rows = Vec::new();
    for &(text, p, mmax) in EXPSUM_PROFILES {
        let nvars = text.matches(['x', 'y', 'z']).collect::<std::collections::BTreeSet<_>>().len();
        let f = parse_poly(text, nvars)?;
        for m in 1..=mmax {
            let hist = residue_histogram(&f, p, m, budget, exec)?;
            let mut row = Row::new().with("f", f.to_string());
            row.0.extend(sum_row(p, m, &hist).0);
            rows.push(row);
        }
    }
    let tol = format!(
        "floats to 12 significant digits; compare re, im, abs, sigma_m with absolute tolerance {FLOAT_TOLERANCE:e}"
    );
    Ok(table("expsum.tsv", &["E(p^m) = p^(-mn) sum_x exp(2 pi i f(x) / p^m)", &tol], rows))
}

/// All golden tables, in the order they are written.
pub fn golden_tables(budget: u64, exec: Execution) -> Result<Vec<Table>, CliError> {
    Ok(vec![diagonal()?, det()?, yano()?, milnor()?, expsum(budget, exec)?])
}

/// Writes every table into `dir`, returning the paths written.
pub fn emit_golden_tables(dir: &Path, budget: u64, exec: Execution) -> Result<Vec<PathBuf>, CliError> {
    let tables = golden_tables(budget, exec)?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    let mut written = Vec::new();
    for t in tables {
        let path = dir.join(t.name);
        std::fs::write(&path, &t.contents).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        written.push(path);
    }
    Ok(written)
}
