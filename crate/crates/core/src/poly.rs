//! Dense univariate polynomials over the rationals.
//!
//! The text form uses the variable `n`: `16*n^2+12*n-1`, `3/2*n - 1/2`, `n^3`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::factorize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("zero denominator in coefficient at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error("domain error: {0}")]
    Domain(String),
}

/// Coefficients indexed by degree, no trailing zeros. The empty vector is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

/// Rational roots of a polynomial with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    /// Roots in decreasing order.
    pub roots: Vec<(BigRational, u32)>,
    /// True iff the polynomial is a constant times a product of rational linear factors.
    pub fully_split: bool,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `a·x + b`.
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::new(vec![
            BigRational::from_integer(b.into()),
            BigRational::from_integer(a.into()),
        ])
    }

    /// `∏ (a·x + b)` over the given pairs.
    pub fn product_of_linear(factors: &[(i64, i64)]) -> Self {
        factors
            .iter()
            .fold(Self::one(), |acc, &(a, b)| &acc * &Self::linear(a, b))
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigRational {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Divides by `x - root`, assuming it is a root.
    fn deflate(&self, root: &BigRational) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for k in (1..n).rev() {
            carry = &carry * root + &self.coeffs[k];
            out[k - 1] = carry.clone();
        }
        Self::new(out)
    }

    /// Scales to integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer_form(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Rational roots by the rational root theorem on the primitive integer form.
    pub fn rational_roots(&self) -> Result<RootReport, PolyError> {
        match self.degree() {
            None | Some(0) => {
                return Err(PolyError::Domain(
                    "rational_roots needs a polynomial of degree >= 1".into(),
                ))
            }
            _ => {}
        }
        let mut rest = self.clone();
        let mut roots: Vec<(BigRational, u32)> = Vec::new();

        let zero = BigRational::zero();
        let mut zero_mult = 0;
        while rest.coeffs[0].is_zero() {
            rest = Self::new(rest.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((zero, zero_mult));
        }

        if rest.degree().unwrap() > 0 {
            let prim = rest.primitive_integer_form();
            let nums = divisors(&prim[0])?;
            let dens = divisors(prim.last().unwrap())?;
            let mut candidates: Vec<BigRational> = Vec::new();
            for a in &nums {
                for b in &dens {
                    let r = BigRational::new(BigInt::from(*a), BigInt::from(*b));
                    candidates.push(-r.clone());
                    candidates.push(r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for cand in candidates {
                let mut mult = 0;
                while rest.degree().unwrap() > 0 && rest.evaluate(&cand).is_zero() {
                    rest = rest.deflate(&cand);
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((cand, mult));
                }
            }
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(RootReport {
            roots,
            fully_split: rest.degree() == Some(0),
        })
    }
}

fn divisors(n: &BigInt) -> Result<Vec<u64>, PolyError> {
    let n = n.abs().to_u64().ok_or_else(|| {
        PolyError::Domain(format!("coefficient {n} too large for rational root search"))
    })?;
    let mut divs = vec![1u64];
    for (p, e) in factorize(n).factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// Monic gcd by the Euclidean algorithm.
pub fn poly_gcd(
    a: &RationalPolynomial,
    b: &RationalPolynomial,
) -> Result<RationalPolynomial, PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::Domain("gcd(0, 0) is undefined".into()));
    }
    let mut x = a.monic();
    let mut y = b.monic();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y);
        x = y;
        y = r.monic();
    }
    Ok(x)
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for RationalPolynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_polynomial(s)
    }
}

/// Parses the `c*n^k` term grammar; whitespace is ignored and like terms are combined.
pub fn parse_polynomial(text: &str) -> Result<RationalPolynomial, PolyError> {
    Parser::new(text).polynomial()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn polynomial(&mut self) -> Result<RationalPolynomial, PolyError> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None if first => return self.error("empty polynomial"),
                None => break,
                Some(_) if first => false,
                Some(_) => return self.error("expected '+' or '-'"),
            };
            first = false;
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            if negative {
                coeffs[k] -= c;
            } else {
                coeffs[k] += c;
            }
        }
        Ok(RationalPolynomial::new(coeffs))
    }

    fn term(&mut self) -> Result<(BigRational, usize), PolyError> {
        match self.peek() {
            Some(b'n') => {
                let k = self.power()?;
                Ok((BigRational::one(), k))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                    if den.is_zero() {
                        return Err(PolyError::ZeroDenominator { offset: start });
                    }
                }
                let c = BigRational::new(num, den);
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'n') {
                        return self.error("expected 'n' after '*'");
                    }
                    let k = self.power()?;
                    Ok((c, k))
                } else {
                    Ok((c, 0))
                }
            }
            Some(_) => self.error("expected a coefficient or 'n'"),
            None => self.error("unexpected end of input"),
        }
    }

    /// Consumes `n` and an optional `^k`.
    fn power(&mut self) -> Result<usize, PolyError> {
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let k = self.integer()?;
            k.to_usize().filter(|&k| k <= 4096).ok_or(PolyError::Syntax {
                offset: at,
                message: "exponent too large".into(),
            })
        } else {
            Ok(1)
        }
    }
}
