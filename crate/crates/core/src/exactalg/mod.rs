//! Exact scalars, vectors, matrices and sparse polynomials over the rationals.
//!
//! Nothing in this module touches floating point.

mod matrix;
mod poly;
mod series;

pub use matrix::{rank_and_kernel, QMatrix};
pub use poly::{Monomial, MultiPoly, PolyRecord, TermRecord};
pub use series::{series_reciprocal, TruncatedSeries};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Dense vector of rationals.
pub type QVector = Vec<Rational>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn qvec(values: &[(i64, i64)]) -> QVector {
    values.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn ivec(values: &[i64]) -> QVector {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses `"num/den"`, `"num"` or a decimal-free signed integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Renders as `num/den`, or `num` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn parse_point(text: &str) -> Result<QVector> {
    text.split(',').map(parse_rational).collect()
}

pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Homogeneous coordinates `(1, v)` of an affine point.
pub fn homogenize_point(v: &[Rational]) -> QVector {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(Rational::one());
    out.extend(v.iter().cloned());
    out
}

/// Scales `v` to coprime integer entries whose first nonzero entry is positive.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> QVector {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let negate = first.is_negative();
    let mut out = primitive_keep_sign(v);
    if negate {
        for x in &mut out {
            *x = -x.clone();
        }
    }
    out
}

/// Scales `v` by a positive rational to coprime integer entries.
pub fn primitive_keep_sign(v: &[Rational]) -> QVector {
    if v.iter().all(Zero::is_zero) {
        return v.to_vec();
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

/// True when `a = λ b` for some nonzero rational λ.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let a_zero = a.iter().all(Zero::is_zero);
    let b_zero = b.iter().all(Zero::is_zero);
    if a_zero || b_zero {
        return a_zero && b_zero;
    }
    // a_i b_j == a_j b_i for all pairs against one pivot
    let pivot = a.iter().position(|x| !x.is_zero()).unwrap();
    if b[pivot].is_zero() {
        return false;
    }
    a.iter()
        .zip(b)
        .all(|(x, y)| x * &b[pivot] == y * &a[pivot])
}

/// Signed determinant by fraction-free elimination.
pub fn determinant(rows: &[QVector]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut m: Vec<QVector> = rows.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -2 ").unwrap(), int(-2));
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert_eq!(format_rational(&int(8)), "8");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn primitive_normalization() {
        assert_eq!(primitive(&qvec(&[(0, 1), (-1, 2), (3, 4)])), ivec(&[0, -2, 3]).into_iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(primitive(&ivec(&[4, 6])), ivec(&[2, 3]));
        assert_eq!(primitive_keep_sign(&ivec(&[-4, 6])), ivec(&[-2, 3]));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[ivec(&[2, 1]), ivec(&[1, 3])]), int(5));
        assert_eq!(determinant(&[ivec(&[0, 1]), ivec(&[1, 0])]), int(-1));
        assert_eq!(determinant(&[ivec(&[1, 2]), ivec(&[2, 4])]), int(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(factorial(4), BigInt::from(24));
    }
}
