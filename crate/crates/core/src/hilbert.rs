//! Hilbert series and eventually-polynomial graded dimension functions.
//!
//! A [`HilbertSeries`] is a rational function `N(t) / prod_i (1 - t^{e_i})`.
//! A [`GradedDimensionFunction`] is an integer-valued function on degrees
//! `j` that agrees with one polynomial for `j < lo`, with another for
//! `j > hi`, and is tabulated explicitly in between. The two views convert
//! into each other; Segre products are computed on the second one.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_poly::{binomial, rational, ExactRational, IntPolynomial, RatPolynomial};

/// Extra coefficients checked beyond the last "interesting" degree.
const GUARD: i64 = 3;

/// Length of a graded module: a nonnegative integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(BigInt),
    Infinite,
}

impl Length {
    pub fn zero() -> Self {
        Length::Finite(BigInt::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    /// Multiplies a finite length by a nonnegative integer weight.
    pub fn weighted(&self, weight: &BigInt) -> Length {
        match self {
            Length::Finite(n) => Length::Finite(n * weight),
            Length::Infinite if weight.is_zero() => Length::zero(),
            Length::Infinite => Length::Infinite,
        }
    }
}

impl Add for Length {
    type Output = Length;

    fn add(self, rhs: Length) -> Length {
        match (self, rhs) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a + b),
            _ => Length::Infinite,
        }
    }
}

impl Sum for Length {
    fn sum<I: Iterator<Item = Length>>(iter: I) -> Length {
        iter.fold(Length::zero(), Add::add)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => crate::report::serialize_bigint(n, serializer),
            Length::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

/// Rational generating function `N(t) / prod_i (1 - t^{e_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    numerator: IntPolynomial,
    denominator_exponents: Vec<u32>,
}

impl HilbertSeries {
    /// Builds a ring-valued series, checking that the expansion has
    /// nonnegative coefficients up to a guard degree.
    pub fn new(numerator: IntPolynomial, denominator_exponents: Vec<u32>) -> Result<Self> {
        let series = Self::new_unchecked(numerator, denominator_exponents)?;
        let guard = series.numerator.degree().unwrap_or(0) as i64
            + series.denominator_exponents.iter().map(|&e| e as i64).sum::<i64>()
            + 10;
        if let Some((j, c)) = series
            .expand(guard as usize)
            .into_iter()
            .enumerate()
            .find(|(_, c)| c.is_negative())
        {
            return Err(Error::MalformedSeries(format!(
                "coefficient {c} at degree {j} is negative"
            )));
        }
        Ok(series)
    }

    /// Builds an arbitrary rational function of the supported shape without
    /// the nonnegativity check.
    pub fn new_unchecked(numerator: IntPolynomial, mut denominator_exponents: Vec<u32>) -> Result<Self> {
        if denominator_exponents.contains(&0) {
            return Err(Error::MalformedSeries(
                "denominator exponents must be positive".into(),
            ));
        }
        denominator_exponents.sort_unstable();
        Ok(Self {
            numerator,
            denominator_exponents,
        })
    }

    /// `1 / (1 - t)^n`.
    pub fn free(n: u32) -> Self {
        Self {
            numerator: IntPolynomial::one(),
            denominator_exponents: vec![1; n as usize],
        }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator_exponents(&self) -> &[u32] {
        &self.denominator_exponents
    }

    /// Coefficients `c_0 ..= c_upto` of the power series expansion.
    pub fn expand(&self, upto: usize) -> Vec<BigInt> {
        let mut c: Vec<BigInt> = (0..=upto).map(|i| self.numerator.coeff(i)).collect();
        // dividing by (1 - t^e) is a running sum with stride e
        for &e in &self.denominator_exponents {
            let e = e as usize;
            for i in e..=upto {
                let prev = c[i - e].clone();
                c[i] += prev;
            }
        }
        c
    }

    /// `deg N - sum e_i`; equals the a-invariant for Cohen-Macaulay rings.
    pub fn series_degree(&self) -> Result<i64> {
        let deg = self.numerator.degree().ok_or(Error::ZeroPolynomial)? as i64;
        Ok(deg - self.denominator_exponents.iter().map(|&e| e as i64).sum::<i64>())
    }

    /// Pole order at `t = 1`.
    pub fn krull_dimension(&self) -> Result<u32> {
        let (z, _) = self.numerator.root_multiplicity_at_one()?;
        let s = self.denominator_exponents.len() as i64;
        let dim = s - z as i64;
        if dim < 0 {
            return Err(Error::MalformedSeries(format!(
                "numerator vanishes to order {z} at t = 1, more than the {s} denominator factors"
            )));
        }
        Ok(dim as u32)
    }

    /// Normalized leading coefficient of the Hilbert polynomial; the total
    /// length for an artinian series.
    pub fn multiplicity(&self) -> Result<BigInt> {
        self.krull_dimension()?;
        let (_, reduced) = self.numerator.root_multiplicity_at_one()?;
        let top = reduced.value_at_one();
        let bottom: BigInt = self
            .denominator_exponents
            .iter()
            .map(|&e| BigInt::from(e))
            .product();
        if !(&top % &bottom).is_zero() || !(&top / &bottom).is_positive() {
            return Err(Error::MalformedSeries(format!(
                "multiplicity {top}/{bottom} is not a positive integer"
            )));
        }
        Ok(top / bottom)
    }

    /// Whether the two rational functions are equal.
    pub fn equivalent(&self, other: &HilbertSeries) -> bool {
        let cross = |num: &IntPolynomial, exps: &[u32]| {
            exps.iter()
                .fold(num.clone(), |acc, &e| &acc * &IntPolynomial::one_minus_t_pow(e))
        };
        cross(&self.numerator, &other.denominator_exponents)
            == cross(&other.numerator, &self.denominator_exponents)
    }

    /// Eventually-polynomial form of the coefficient sequence.
    pub fn to_dimension_function(&self) -> Result<GradedDimensionFunction> {
        let dim = self.krull_dimension()?;
        let degree = self.series_degree()?;
        if dim == 0 {
            if degree < 0 {
                return Err(Error::MalformedSeries(format!(
                    "finite series has negative degree {degree}"
                )));
            }
            let coeffs = self.expand((degree + GUARD) as usize);
            if let Some(j) = (degree + 1..=degree + GUARD).find(|&j| !coeffs[j as usize].is_zero()) {
                return Err(Error::GuardMismatch {
                    degree: j,
                    expected: coeffs[j as usize].to_string(),
                    fitted: "0".into(),
                });
            }
            let table = coeffs[..=degree as usize].to_vec();
            return GradedDimensionFunction::new(RatPolynomial::zero(), 0, table, RatPolynomial::zero());
        }

        let d = dim as i64;
        let hi = (degree + 1).max(0);
        let last_checked = hi + 2 * d + GUARD;
        let coeffs = self.expand(last_checked as usize);
        let points: Vec<BigInt> = coeffs[(hi + 1) as usize..=(hi + d) as usize].to_vec();
        let pos_tail = interpolate_forward(hi + 1, &points);
        for j in hi + 1..=last_checked {
            if pos_tail.eval_integer(j).as_ref() != Some(&coeffs[j as usize]) {
                let fitted = pos_tail.eval_int(j);
                return Err(Error::GuardMismatch {
                    degree: j,
                    expected: coeffs[j as usize].to_string(),
                    fitted: fitted.to_string(),
                });
            }
        }
        let table = coeffs[..=hi as usize].to_vec();
        GradedDimensionFunction::new(RatPolynomial::zero(), 0, table, pos_tail)
    }

    /// Inverse of [`to_dimension_function`](Self::to_dimension_function):
    /// `(sum_j f(j) t^j) * (1 - t)^dim`, checked to be a polynomial.
    pub fn from_dimension_function(f: &GradedDimensionFunction, dim: u32) -> Result<Self> {
        let non_terminating = |reason: String| Error::NonTerminating {
            dimension: dim,
            reason,
        };
        if !f.neg_tail().is_zero() {
            return Err(non_terminating("negative tail is not zero".into()));
        }
        if let Some(j) = (f.lo()..0).find(|&j| !f.value(j).is_zero()) {
            return Err(non_terminating(format!("nonzero value in negative degree {j}")));
        }
        match f.pos_tail().degree() {
            Some(deg) if deg as u32 + 1 > dim => {
                return Err(non_terminating(format!(
                    "Hilbert polynomial has degree {deg}"
                )))
            }
            None if dim > 0 => {
                return Err(non_terminating("Hilbert polynomial is zero".into()));
            }
            _ => {}
        }

        let d = dim as i64;
        let hi = f.hi().max(0);
        let last = hi + 2 * d + GUARD;
        let values: Vec<BigInt> = (0..=last).map(|j| f.value(j)).collect();
        let weights: Vec<BigInt> = (0..=d)
            .map(|i| {
                let w = binomial(d, i).expect("nonnegative index");
                if i % 2 == 0 {
                    w
                } else {
                    -w
                }
            })
            .collect();
        let coefficient = |m: i64| -> BigInt {
            weights
                .iter()
                .enumerate()
                .filter(|(i, _)| m >= *i as i64)
                .map(|(i, w)| w * &values[(m - i as i64) as usize])
                .sum()
        };
        if let Some(m) = (hi + d + 1..=last).find(|&m| !coefficient(m).is_zero()) {
            return Err(non_terminating(format!(
                "numerator coefficient at degree {m} does not vanish"
            )));
        }
        let numerator = IntPolynomial::new((0..=hi + d).map(coefficient).collect());
        Self::new_unchecked(numerator, vec![1; dim as usize])
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.denominator_exponents.is_empty() {
            return Ok(());
        }
        f.write_str("/")?;
        let mut i = 0;
        while i < self.denominator_exponents.len() {
            let e = self.denominator_exponents[i];
            let run = self.denominator_exponents[i..]
                .iter()
                .take_while(|&&x| x == e)
                .count();
            let base = if e == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{e})") };
            if run == 1 {
                f.write_str(&base)?;
            } else {
                write!(f, "{base}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Newton forward-difference interpolation through `(start + i, values[i])`.
fn interpolate_forward(start: i64, values: &[BigInt]) -> RatPolynomial {
    let mut diffs: Vec<BigInt> = values.to_vec();
    let mut result = RatPolynomial::zero();
    for k in 0..values.len() {
        let term = RatPolynomial::binomial_in(-start, k as u32).scale(&rational(diffs[0].clone()));
        result = &result + &term;
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    result
}

/// Integer-valued function on degrees, polynomial on both far ends.
#[derive(Clone, Debug)]
pub struct GradedDimensionFunction {
    neg_tail: RatPolynomial,
    lo: i64,
    table: Vec<BigInt>,
    pos_tail: RatPolynomial,
}

impl GradedDimensionFunction {
    /// `neg_tail` applies below `lo`, `table[i]` at `lo + i`, and `pos_tail`
    /// above the table.
    pub fn new(
        neg_tail: RatPolynomial,
        lo: i64,
        table: Vec<BigInt>,
        pos_tail: RatPolynomial,
    ) -> Result<Self> {
        let f = Self {
            neg_tail,
            lo,
            table,
            pos_tail,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn zero() -> Self {
        Self {
            neg_tail: RatPolynomial::zero(),
            lo: 0,
            table: Vec::new(),
            pos_tail: RatPolynomial::zero(),
        }
    }

    /// Function with finite support given explicitly from degree `lo` on.
    pub fn finite(lo: i64, table: Vec<BigInt>) -> Result<Self> {
        Self::new(RatPolynomial::zero(), lo, table, RatPolynomial::zero())
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDimensionFunction(msg));
        if let Some((i, v)) = self.table.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return bad(format!("negative value {v} at degree {}", self.lo + i as i64));
        }
        // integer-valued on deg + 1 consecutive points means integer-valued everywhere
        let checks = [
            (&self.neg_tail, -1i64, self.lo - 1),
            (&self.pos_tail, 1i64, self.hi() + 1),
        ];
        for (tail, direction, start) in checks {
            let Some(deg) = tail.degree() else { continue };
            let far_sign = if direction < 0 && deg % 2 == 1 {
                -tail.leading_coefficient()
            } else {
                tail.leading_coefficient()
            };
            if far_sign.is_negative() {
                return bad(format!("tail {tail} is eventually negative"));
            }
            for step in 0..deg as i64 + 1 + GUARD {
                let j = start + direction * step;
                match tail.eval_integer(j) {
                    Some(v) if !v.is_negative() => {}
                    _ => return bad(format!("tail {tail} has value {} at degree {j}", tail.eval_int(j))),
                }
            }
        }
        Ok(())
    }

    pub fn neg_tail(&self) -> &RatPolynomial {
        &self.neg_tail
    }

    pub fn pos_tail(&self) -> &RatPolynomial {
        &self.pos_tail
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last tabulated degree; `lo - 1` when the table is empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.table.len() as i64 - 1
    }

    pub fn table(&self) -> &[BigInt] {
        &self.table
    }

    pub fn value(&self, j: i64) -> BigInt {
        let tail = if j < self.lo {
            &self.neg_tail
        } else if j > self.hi() {
            &self.pos_tail
        } else {
            return self.table[(j - self.lo) as usize].clone();
        };
        tail.eval_integer(j)
            .expect("tails are integer-valued by construction")
    }

    pub fn is_zero(&self) -> bool {
        self.neg_tail.is_zero() && self.pos_tail.is_zero() && self.table.iter().all(Zero::is_zero)
    }

    /// Nonzero tabulated values as `(degree, value)` pairs.
    pub fn support(&self) -> Vec<(i64, BigInt)> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (self.lo + i as i64, v.clone()))
            .collect()
    }

    /// Largest degree with a nonzero value, if bounded above.
    pub fn top_degree(&self) -> Option<i64> {
        if !self.pos_tail.is_zero() {
            return None;
        }
        if let Some((j, _)) = self.support().last() {
            return Some(*j);
        }
        if self.neg_tail.is_zero() {
            return None;
        }
        // only the negative tail is nonzero; it has finitely many roots
        (0..)
            .map(|step| self.lo - 1 - step)
            .find(|&j| !self.neg_tail.eval_int(j).is_zero())
    }

    /// Drops table entries at either end that the adjacent tail already
    /// predicts.
    fn trimmed(mut self) -> Self {
        let mut front = 0;
        while front < self.table.len()
            && Some(&self.table[front]) == self.neg_tail.eval_integer(self.lo + front as i64).as_ref()
        {
            front += 1;
        }
        self.table.drain(..front);
        self.lo += front as i64;
        while let Some(last) = self.table.last() {
            if Some(last) != self.pos_tail.eval_integer(self.hi()).as_ref() {
                break;
            }
            self.table.pop();
        }
        self
    }

    /// Degreewise product `j -> f(j) g(j)`.
    pub fn pointwise_product(&self, other: &GradedDimensionFunction) -> GradedDimensionFunction {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let table = (lo..=hi).map(|j| self.value(j) * other.value(j)).collect();
        Self {
            neg_tail: &self.neg_tail * &other.neg_tail,
            lo,
            table,
            pos_tail: &self.pos_tail * &other.pos_tail,
        }
        .trimmed()
    }

    /// Grading shift `j -> f(k + j)`.
    pub fn shift(&self, k: i64) -> GradedDimensionFunction {
        Self {
            neg_tail: self.neg_tail.compose_affine(k, 1),
            lo: self.lo - k,
            table: self.table.clone(),
            pos_tail: self.pos_tail.compose_affine(k, 1),
        }
    }

    /// Graded duality `j -> f(a - j)`.
    pub fn reflect(&self, a: i64) -> GradedDimensionFunction {
        let mut table = self.table.clone();
        table.reverse();
        Self {
            neg_tail: self.pos_tail.compose_affine(a, -1),
            lo: a - self.hi(),
            table,
            pos_tail: self.neg_tail.compose_affine(a, -1),
        }
    }

    pub fn total_length(&self) -> Length {
        if self.neg_tail.is_zero() && self.pos_tail.is_zero() {
            Length::Finite(self.table.iter().sum())
        } else {
            Length::Infinite
        }
    }

    /// Sum of two functions.
    pub fn sum(&self, other: &GradedDimensionFunction) -> GradedDimensionFunction {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let table = (lo..=hi).map(|j| self.value(j) + other.value(j)).collect();
        Self {
            neg_tail: &self.neg_tail + &other.neg_tail,
            lo,
            table,
            pos_tail: &self.pos_tail + &other.pos_tail,
        }
        .trimmed()
    }
}

/// Equality of values at every degree.
impl PartialEq for GradedDimensionFunction {
    fn eq(&self, other: &Self) -> bool {
        self.neg_tail == other.neg_tail
            && self.pos_tail == other.pos_tail
            && (self.lo.min(other.lo)..=self.hi().max(other.hi()))
                .all(|j| self.value(j) == other.value(j))
    }
}

impl Eq for GradedDimensionFunction {}

impl fmt::Display for GradedDimensionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.neg_tail.is_zero() {
            write!(f, "j < {}: {}; ", self.lo, self.neg_tail)?;
        }
        f.write_str("{")?;
        for (i, (j, v)) in self.support().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{j}: {v}")?;
        }
        f.write_str("}")?;
        if !self.pos_tail.is_zero() {
            write!(f, "; j > {}: {}", self.hi(), self.pos_tail)?;
        }
        Ok(())
    }
}

/// Coefficient of `j^(dim-1)` in the Hilbert polynomial times `(dim-1)!`.
pub fn normalized_leading_coefficient(f: &GradedDimensionFunction, dim: u32) -> ExactRational {
    let factorial: BigInt = (1..dim as i64).map(BigInt::from).product::<BigInt>().max(BigInt::one());
    match f.pos_tail().degree() {
        Some(deg) if deg + 1 == dim as usize => f.pos_tail().leading_coefficient() * rational(factorial),
        _ => ExactRational::zero(),
    }
}
