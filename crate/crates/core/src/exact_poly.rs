//! Exact integers, rationals and dense univariate polynomials.
//!
//! Every quantity in this crate is an integer or an exact rational, so the
//! substrate is arbitrary precision throughout. Integers and rationals come
//! from `num-bigint`/`num-rational`; the two polynomial types are dense
//! coefficient vectors indexed by degree with no trailing zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// Builds the rational `n/1`.
pub fn rational(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

/// Binomial coefficient `a choose b` for any integer `a`, using the falling
/// factorial `a (a-1) ... (a-b+1) / b!`.
pub fn binomial(a: i64, b: i64) -> Result<BigInt> {
    if b < 0 {
        return Err(Error::NegativeBinomialIndex(b));
    }
    if (0..b).contains(&a) {
        return Ok(BigInt::zero());
    }
    let mut acc = BigInt::one();
    // acc stays integral: after step i it equals binomial(a, i + 1)
    for i in 0..b {
        acc *= BigInt::from(a) - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Dense polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `1 - t^e`.
    pub fn one_minus_t_pow(e: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); e as usize + 1];
        coeffs[0] += 1;
        coeffs[e as usize] -= 1;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Sum of the coefficients.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + rational(c.clone()))
    }

    /// Splits off every factor `(1 - t)`: returns `(z, q)` with
    /// `self = (1 - t)^z * q` and `q(1) != 0`.
    pub fn root_multiplicity_at_one(&self) -> Result<(u32, IntPolynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut z = 0;
        let mut current = self.clone();
        while current.value_at_one().is_zero() {
            // p_i = q_i - q_{i-1}, so q is the running prefix sum of p
            let mut quotient = Vec::with_capacity(current.coeffs.len() - 1);
            let mut running = BigInt::zero();
            for c in &current.coeffs[..current.coeffs.len() - 1] {
                running += c;
                quotient.push(running.clone());
            }
            current = IntPolynomial::new(quotient);
            z += 1;
        }
        Ok((z, current))
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(rational).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

/// Product of two integer polynomials.
pub fn poly_mul(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    p * q
}

/// Dense polynomial with exact rational coefficients.
///
/// Alongside the coefficients it keeps `scaled / denominator`, the same
/// polynomial over a common denominator, so integer evaluation runs in
/// integer arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<ExactRational>,
    scaled: Vec<BigInt>,
    denominator: BigInt,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let denominator = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = coeffs
            .iter()
            .map(|c| c.numer() * (&denominator / c.denom()))
            .collect();
        Self {
            coeffs,
            scaled,
            denominator,
        }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: ExactRational, c1: ExactRational) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> ExactRational {
        self.eval(&rational(x))
    }

    /// Evaluates at an integer, failing unless the value is an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let x = BigInt::from(x);
        let total = self
            .scaled
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c);
        let (quotient, remainder) = total.div_rem(&self.denominator);
        remainder.is_zero().then_some(quotient)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The polynomial `x -> self(offset + slope * x)`.
    pub fn compose_affine(&self, offset: i64, slope: i64) -> Self {
        let inner = RatPolynomial::linear(rational(offset), rational(slope));
        self.coeffs.iter().rev().fold(RatPolynomial::zero(), |acc, c| {
            &(&acc * &inner) + &RatPolynomial::constant(c.clone())
        })
    }

    /// The polynomial `x -> binomial(x + offset, k)`.
    pub fn binomial_in(offset: i64, k: u32) -> Self {
        let mut acc = RatPolynomial::constant(ExactRational::one());
        for i in 0..k as i64 {
            let factor = RatPolynomial::linear(
                ExactRational::new((offset - i).into(), (i + 1).into()),
                ExactRational::new(1.into(), (i + 1).into()),
            );
            acc = &acc * &factor;
        }
        acc
    }
}

impl Default for RatPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &RatPolynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Zero::zero);
        RatPolynomial::new((0..len).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;

    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        self + &(-rhs)
    }
}

fn write_terms<C>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    var: &str,
    descending: bool,
) -> fmt::Result
where
    C: Zero + One + Signed + fmt::Display + Clone + PartialEq,
{
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let order: Vec<usize> = if descending {
        (0..coeffs.len()).rev().collect()
    } else {
        (0..coeffs.len()).collect()
    };
    let mut first = true;
    for i in order {
        let c = &coeffs[i];
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        first = false;
        let unit = magnitude.is_one();
        match i {
            0 => write!(f, "{magnitude}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{magnitude}*{var}")?,
            _ if unit => write!(f, "{var}^{i}")?,
            _ => write!(f, "{magnitude}*{var}^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "t", false)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "j", true)
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial({self})")
    }
}
