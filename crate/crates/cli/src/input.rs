//! Polynomial, ideal and rational arguments.

use std::str::FromStr;

use lctlab::jacobian::IdealGens;
use lctlab::polyring::ParseError;
use lctlab::{parse_poly, Polynomial, Rational};

use crate::{CliError, PolyArg};

/// Smallest variable count accepted by the parser for every text.
fn infer_nvars(texts: &[&str]) -> Result<usize, CliError> {
    let mut n = 1;
    for t in texts {
        loop {
            match parse_poly(t, n) {
                Ok(_) => break,
                Err(ParseError::VarOutOfRange { index, .. }) if index > n => n = index,
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(n)
}

fn resolve_nvars(texts: &[&str], nvars: Option<usize>) -> Result<usize, CliError> {
    match nvars {
        Some(0) => Err(CliError::Usage("--nvars must be positive".into())),
        Some(n) => Ok(n),
        None => infer_nvars(texts),
    }
}

pub fn poly(arg: &PolyArg) -> Result<Polynomial, CliError> {
    let n = resolve_nvars(&[&arg.poly], arg.nvars)?;
    Ok(parse_poly(&arg.poly, n)?)
}

fn split(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).collect()
}

/// Comma-separated polynomials in a common ring; `nvars` at least `min`.
pub fn poly_list(list: &str, nvars: Option<usize>, min: usize) -> Result<Vec<Polynomial>, CliError> {
    let texts = split(list);
    if texts.iter().any(|t| t.is_empty()) {
        return Err(CliError::Usage(format!("empty entry in list {list:?}")));
    }
    let n = resolve_nvars(&texts, nvars)?.max(min);
    texts.iter().map(|t| Ok(parse_poly(t, n)?)).collect()
}

pub fn ideal(list: &str, nvars: Option<usize>) -> Result<IdealGens, CliError> {
    Ok(IdealGens::new(poly_list(list, nvars, 1)?)?)
}

pub fn rational(text: &str) -> Result<Rational, CliError> {
    Rational::from_str(text.trim()).map_err(|_| CliError::Usage(format!("not a rational number: {text:?}")))
}
