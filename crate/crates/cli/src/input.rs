//! Parsing of command-line polynomial and value arguments.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use transum_core::{parse_polynomial, RationalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn polynomial(text: &str) -> Result<RationalPolynomial, InputError> {
    parse_polynomial(text).map_err(|e| InputError(format!("cannot parse polynomial {text:?}: {e}")))
}

/// `"(a,b)(c,d)..."` as `(a·n+b)(c·n+d)...`.
pub fn factor_list(text: &str) -> Result<Vec<(i64, i64)>, InputError> {
    let err = |m: &str| InputError(format!("bad factor list {text:?}: {m}"));
    let mut rest = text.trim();
    let mut factors = Vec::new();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
        let close = body.find(')').ok_or_else(|| err("missing ')'"))?;
        let (a, b) = body[..close].split_once(',').ok_or_else(|| err("expected 'a,b'"))?;
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| err(&format!("{:?} is not an integer", s.trim())));
        let a = parse(a)?;
        if a == 0 {
            return Err(err("leading coefficient of a factor must be nonzero"));
        }
        factors.push((a, parse(b)?));
        rest = body[close + 1..].trim_start();
    }
    if factors.is_empty() {
        return Err(err("no factors"));
    }
    Ok(factors)
}

/// Either a factor list (recognised by its commas) or ordinary polynomial text.
pub fn denominator(text: &str) -> Result<RationalPolynomial, InputError> {
    if text.contains(',') {
        Ok(RationalPolynomial::product_of_linear(&factor_list(text)?))
    } else {
        polynomial(text)
    }
}

/// Comma-separated rationals such as `"1,-3/2,1/2"`.
pub fn rational_list(text: &str) -> Result<Vec<BigRational>, InputError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            match s.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| InputError(format!("bad value {s:?}")))?;
                    let d: BigInt = d.trim().parse().map_err(|_| InputError(format!("bad value {s:?}")))?;
                    if d == BigInt::from(0) {
                        return Err(InputError(format!("zero denominator in {s:?}")));
                    }
                    Ok(BigRational::new(n, d))
                }
                None => s
                    .parse::<BigInt>()
                    .map(BigRational::from_integer)
                    .map_err(|_| InputError(format!("bad value {s:?}"))),
            }
        })
        .collect()
}
