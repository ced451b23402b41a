//! Moments of the uniform distribution on a polytope.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::adjoint::{adjoint_warren, vertex_form};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, series_reciprocal, Monomial, MultiPoly, Rational};
use crate::polytope::{Polytope, Simplex};
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub max_total_degree: u32,
    pub entries: BTreeMap<Monomial, Rational>,
}

/// `∫_σ t^I dt` for every `I` with `|I| <= d_max`, by expanding `t` in
/// barycentric coordinates and applying the Dirichlet integral.
fn simplex_integrals(p: &Polytope, s: &Simplex, d_max: u32) -> BTreeMap<Monomial, Rational> {
    let n = p.dim();
    let k = n + 1;
    // t_i = Σ_j λ_j v_j[i]
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let coeffs: Vec<Rational> = s.vertices.iter().map(|&v| p.vertices()[v][i].clone()).collect();
            MultiPoly::linear_form(&coeffs)
        })
        .collect();
    let scale = Rational::from_integer(factorial(n as u32)) * &s.volume;
    let mut out = BTreeMap::new();
    let mut expansions: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
    for mono in Monomial::all_up_to_degree(n, d_max) {
        let poly = match mono.exponents().iter().position(|&e| e > 0) {
            None => MultiPoly::one(k),
            Some(i) => {
                let mut lower = mono.exponents().to_vec();
                lower[i] -= 1;
                &expansions[&Monomial::new(lower)] * &images[i]
            }
        };
        let mut integral = Rational::zero();
        for (m, c) in poly.terms() {
            let num: BigInt = m.exponents().iter().map(|&a| factorial(a)).product();
            let den = factorial(n as u32 + m.degree());
            integral += c * Rational::new(num, den);
        }
        out.insert(mono.clone(), integral * &scale);
        expansions.insert(mono, poly);
    }
    out
}

fn table_from(p: &Polytope, simplices: &[Simplex], d_max: u32) -> MomentTable {
    let vol: Rational = simplices.iter().map(|s| s.volume.clone()).sum();
    let mut entries: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for s in simplices {
        for (m, v) in simplex_integrals(p, s, d_max) {
            *entries.entry(m).or_insert_with(Rational::zero) += v;
        }
    }
    for v in entries.values_mut() {
        *v /= &vol;
    }
    MomentTable {
        max_total_degree: d_max,
        entries,
    }
}

/// All moments `m_I` with `|I| <= d_max`.
pub fn moment_table(p: &Polytope, d_max: u32) -> MomentTable {
    table_from(p, &p.triangulate(), d_max)
}

/// Moments computed over the pulling triangulation for `order`.
pub fn moment_table_with_order(p: &Polytope, d_max: u32, order: &[usize]) -> MomentTable {
    table_from(p, &p.triangulate_with_order(order), d_max)
}

pub fn moment(p: &Polytope, index: &[u32]) -> Result<Rational> {
    if index.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: index.len(),
        });
    }
    let m = Monomial::new(index.to_vec());
    Ok(moment_table(p, m.degree()).entries[&m].clone())
}

/// `c_I = (|I| + n)! / (i_1! ⋯ i_n! n!)`.
pub fn moment_coefficient(index: &[u32]) -> BigInt {
    let n = index.len() as u32;
    let total: u32 = index.iter().sum();
    let den: BigInt = index.iter().map(|&i| factorial(i)).product::<BigInt>() * factorial(n);
    factorial(total + n) / den
}

/// `Σ c_I m_I t^I` against `adj_P(t) / (vol(P) Π ℓ_v(t))` up to degree
/// `d_max`, for simplicial polytopes.
pub fn verify_generating_identity(p: &Polytope, d_max: u32) -> Result<Check> {
    if !p.is_simplicial() {
        return Err(Error::Invalid("the moment identity is checked for simplicial polytopes only".into()));
    }
    let n = p.dim();
    let table = moment_table(p, d_max);
    let mut lhs = MultiPoly::zero(n);
    for (m, v) in &table.entries {
        lhs.add_term(m.clone(), v * Rational::from_integer(moment_coefficient(m.exponents())));
    }
    let product = p.vertices().iter().fold(MultiPoly::one(n), |acc, v| &acc * &vertex_form(v));
    let vol = p.volume();
    let rhs = series_reciprocal(&product, d_max)?
        .mul_poly(&adjoint_warren(p))
        .as_poly()
        .scale(&vol.recip());
    let mut check = Check::new("moment-generating-identity", "Σ c_I m_I t^I = adj_P / (vol(P) Π ℓ_v)");
    for m in Monomial::all_up_to_degree(n, d_max) {
        let (a, b) = (lhs.coefficient(&m), rhs.coefficient(&m));
        check.require(a == b, || format!("I = {:?}: {a} vs {b}", m.exponents()));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::adjoint_warren_with_order;
    use crate::exactalg::{int, ivec, rat};
    use crate::fixtures;

    #[test]
    fn interval_moments() {
        let p = fixtures::build("unit-interval").unwrap();
        for i in 0..6 {
            assert_eq!(moment(&p, &[i]).unwrap(), rat(1, i as i64 + 1));
        }
    }

    #[test]
    fn square_moments() {
        let sq = fixtures::build("unit-square").unwrap();
        assert_eq!(moment(&sq, &[1, 1]).unwrap(), rat(1, 4));
        assert_eq!(moment(&sq, &[2, 0]).unwrap(), rat(1, 3));
        assert_eq!(moment(&sq, &[0, 0]).unwrap(), int(1));
    }

    #[test]
    fn box_moments_factor() {
        let b = Polytope::from_vertices(
            [[0, 0, 0], [2, 0, 0], [0, 3, 0], [2, 3, 0], [0, 0, 1], [2, 0, 1], [0, 3, 1], [2, 3, 1]]
                .iter()
                .map(|v| ivec(v))
                .collect(),
        )
        .unwrap();
        let table = moment_table(&b, 3);
        // interval [0, a]: m_i = a^i / (i + 1)
        let interval = |a: i64, i: u32| Rational::from_integer(BigInt::from(a).pow(i)) / int(i as i64 + 1);
        for (m, v) in &table.entries {
            let e = m.exponents();
            assert_eq!(*v, interval(2, e[0]) * interval(3, e[1]) * interval(1, e[2]));
        }
    }

    #[test]
    fn coefficients() {
        assert_eq!(moment_coefficient(&[0, 0, 0]), BigInt::from(1));
        assert_eq!(moment_coefficient(&[4]), BigInt::from(5));
        assert_eq!(moment_coefficient(&[1, 1]), BigInt::from(12));
    }

    #[test]
    fn identity_on_a_triangle_and_rejects_cube() {
        let t = fixtures::build("triangle").unwrap();
        assert!(verify_generating_identity(&t, 4).unwrap().passed);
        // all polygons are simplicial; the cube is not
        let c = fixtures::build("cube-regular").unwrap();
        assert!(verify_generating_identity(&c, 2).is_err());
    }

    #[test]
    fn triangulation_independent() {
        let h = fixtures::build("hexagon").unwrap();
        let order: Vec<usize> = (0..6).rev().collect();
        assert_eq!(moment_table(&h, 3), moment_table_with_order(&h, 3, &order));
        assert_eq!(adjoint_warren_with_order(&h, &order), adjoint_warren(&h));
    }
}
