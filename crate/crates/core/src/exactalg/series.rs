use num_traits::One;

use super::{format_rational, MultiPoly};
use crate::error::{Error, Result};

/// Multivariate power series truncated above a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: MultiPoly,
    max_total_degree: u32,
}

impl TruncatedSeries {
    pub fn new(poly: &MultiPoly, max_total_degree: u32) -> Self {
        Self {
            poly: poly.truncate(max_total_degree),
            max_total_degree,
        }
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    pub fn vars(&self) -> usize {
        self.poly.vars()
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.max_total_degree.min(other.max_total_degree);
        TruncatedSeries {
            poly: self.poly.mul_truncated(&other.poly, d),
            max_total_degree: d,
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> TruncatedSeries {
        TruncatedSeries {
            poly: self.poly.mul_truncated(p, self.max_total_degree),
            max_total_degree: self.max_total_degree,
        }
    }
}

/// Inverse of `p` as a power series, truncated above total degree `d_max`.
///
/// Writes `p = 1 - q` and sums `q^k` for `k <= d_max`, which is exact since
/// `q` has no constant term.
pub fn series_reciprocal(p: &MultiPoly, d_max: u32) -> Result<TruncatedSeries> {
    let c = p.constant_term();
    if !c.is_one() {
        return Err(Error::NonUnitConstant(format_rational(&c)));
    }
    let vars = p.vars();
    let q = &MultiPoly::one(vars) - p;
    let mut result = MultiPoly::one(vars);
    // Horner: r <- 1 + q r, d_max times
    for _ in 0..d_max {
        result = &MultiPoly::one(vars) + &q.mul_truncated(&result, d_max);
    }
    Ok(TruncatedSeries::new(&result, d_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Monomial};
    use num_traits::Zero;

    fn t(vars: usize, i: usize) -> MultiPoly {
        MultiPoly::var(vars, i)
    }

    #[test]
    fn geometric_series() {
        let p = &MultiPoly::one(1) - &t(1, 0);
        let s = series_reciprocal(&p, 3).unwrap();
        let mut expected = MultiPoly::zero(1);
        for e in 0..=3 {
            expected.add_term(Monomial::new(vec![e]), int(1));
        }
        assert_eq!(s.as_poly(), &expected);
    }

    #[test]
    fn product_of_two_geometric_series() {
        let a = &MultiPoly::one(2) - &t(2, 0);
        let b = &MultiPoly::one(2) - &t(2, 1);
        let s = series_reciprocal(&(&a * &b), 2).unwrap();
        let expected: MultiPoly = MultiPoly::from_terms(
            2,
            Monomial::all_up_to_degree(2, 2).into_iter().map(|m| (m, int(1))),
        )
        .unwrap();
        assert_eq!(s.as_poly(), &expected);
    }

    #[test]
    fn rejects_non_unit_constant() {
        let p = &MultiPoly::constant(1, int(2)) - &t(1, 0);
        assert!(series_reciprocal(&p, 2).is_err());
        assert!(series_reciprocal(&MultiPoly::zero(1), 2).is_err());
    }

    #[test]
    fn unit_square_vertex_product_inverts() {
        // Π ℓ_v over the unit square vertices (0,0),(1,0),(0,1),(1,1)
        let one = MultiPoly::one(2);
        let l10 = &one - &t(2, 0);
        let l01 = &one - &t(2, 1);
        let l11 = &l10 - &t(2, 1);
        let prod = &(&l10 * &l01) * &l11;
        let s = series_reciprocal(&prod, 2).unwrap();
        let back = s.mul_poly(&prod);
        assert_eq!(back.as_poly(), &one);
        assert!(!back.as_poly().coefficient(&Monomial::one(2)).is_zero());
    }
}
