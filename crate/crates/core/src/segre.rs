//! Newton regions of monomial schemes and their adjoints, with vertices at
//! infinity in coordinate directions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::adjoint::vertex_form;
use crate::error::{Error, Result};
use crate::exactalg::{determinant, factorial, ivec, MultiPoly, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RegionVertex {
    Finite(usize),
    /// Vertex at infinity in direction `e_i` (0-based axis).
    Infinite(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSimplex {
    pub vertices: Vec<RegionVertex>,
    /// Normalized volume divided by `n!`, with sign for signed fans.
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonRegion {
    pub n: usize,
    /// Finite vertices; index 0 is the origin.
    pub finite_vertices: Vec<QVector>,
    pub infinite_directions: Vec<usize>,
    pub triangulation: Vec<RegionSimplex>,
    /// Boundary cycle (counterclockwise) for `n = 2`.
    cycle: Vec<RegionVertex>,
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Minimal elements of `points` under the componentwise order, deduplicated.
pub fn minimal_elements(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for p in points {
        let dominated = points.iter().any(|q| q != p && q.iter().zip(p).all(|(a, b)| a <= b));
        if !dominated && !out.contains(p) {
            out.push(p.clone());
        }
    }
    out.sort();
    out
}

/// Normalized volume over `n!` of a simplex with finite vertex coordinates
/// `finite` and infinite directions `dirs`: project along `dirs` and take
/// the determinant of the remaining edge vectors.
fn simplex_weight(n: usize, finite: &[&QVector], dirs: &[usize]) -> Rational {
    let keep: Vec<usize> = (0..n).filter(|i| !dirs.contains(i)).collect();
    let rows: Vec<QVector> = finite[1..]
        .iter()
        .map(|p| keep.iter().map(|&i| &p[i] - &finite[0][i]).collect())
        .collect();
    determinant(&rows).abs() / Rational::from_integer(factorial(n as u32))
}

impl NewtonRegion {
    /// Region given explicitly; simplices list region vertices and get
    /// their unsigned weights computed here.
    pub fn explicit(n: usize, finite_vertices: Vec<QVector>, infinite_directions: Vec<usize>, simplices: Vec<Vec<RegionVertex>>) -> Result<Self> {
        let mut triangulation = Vec::new();
        for s in simplices {
            if s.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: s.len(),
                });
            }
            let mut finite = Vec::new();
            let mut dirs = Vec::new();
            for v in &s {
                match v {
                    RegionVertex::Finite(i) => finite.push(finite_vertices.get(*i).ok_or_else(|| Error::Invalid(format!("no finite vertex {i}")))?),
                    RegionVertex::Infinite(i) if infinite_directions.contains(i) => dirs.push(*i),
                    RegionVertex::Infinite(i) => return Err(Error::Invalid(format!("no vertex at infinity in direction {i}"))),
                }
            }
            let weight = simplex_weight(n, &finite, &dirs);
            triangulation.push(RegionSimplex { vertices: s, weight });
        }
        Ok(NewtonRegion {
            n,
            finite_vertices,
            infinite_directions,
            triangulation,
            cycle: Vec::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.finite_vertices.len() + self.infinite_directions.len()
    }

    pub fn vertices(&self) -> Vec<RegionVertex> {
        let mut out: Vec<RegionVertex> = (0..self.finite_vertices.len()).map(RegionVertex::Finite).collect();
        out.extend(self.infinite_directions.iter().map(|&i| RegionVertex::Infinite(i)));
        out
    }

    /// `ℓ_v`: `1 - v·t` for finite vertices, `-t_i` at infinity.
    pub fn vertex_form(&self, v: &RegionVertex) -> MultiPoly {
        match v {
            RegionVertex::Finite(i) => vertex_form(&self.finite_vertices[*i]),
            RegionVertex::Infinite(i) => MultiPoly::var(self.n, *i).scale(&-Rational::one()),
        }
    }

    /// Signed weight of an ordered planar triangle, counterclockwise positive.
    fn signed_weight(&self, tri: &[RegionVertex; 3]) -> Rational {
        let inf = tri.iter().position(|v| matches!(v, RegionVertex::Infinite(_)));
        let pt = |v: &RegionVertex| match v {
            RegionVertex::Finite(i) => &self.finite_vertices[*i],
            RegionVertex::Infinite(_) => unreachable!(),
        };
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        match inf {
            None => cross(pt(&tri[0]), pt(&tri[1]), pt(&tri[2])) * half,
            Some(k) => {
                // rotate to (X, Y, ∞)
                let x = pt(&tri[(k + 1) % 3]);
                let y = pt(&tri[(k + 2) % 3]);
                match tri[k] {
                    RegionVertex::Infinite(1) => (&y[0] - &x[0]) * half,
                    RegionVertex::Infinite(0) => (&x[1] - &y[1]) * half,
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Signed fan triangulation of a planar region from a finite vertex.
    pub fn fan_from(&self, apex: usize) -> Result<NewtonRegion> {
        if self.n != 2 || self.cycle.is_empty() {
            return Err(Error::Invalid("signed fans need an automatically built planar region".into()));
        }
        if apex >= self.finite_vertices.len() {
            return Err(Error::Invalid(format!("apex {apex} is not a finite vertex")));
        }
        let a = RegionVertex::Finite(apex);
        let len = self.cycle.len();
        let mut triangulation = Vec::new();
        for i in 0..len {
            let b = self.cycle[i].clone();
            let c = self.cycle[(i + 1) % len].clone();
            if b == a || c == a {
                continue;
            }
            let tri = [a.clone(), b, c];
            if tri.iter().filter(|v| matches!(v, RegionVertex::Infinite(_))).count() > 1 {
                return Err(Error::Invalid("fan triangle with two vertices at infinity".into()));
            }
            let weight = self.signed_weight(&tri);
            if !weight.is_zero() {
                triangulation.push(RegionSimplex {
                    vertices: tri.to_vec(),
                    weight,
                });
            }
        }
        let mut out = self.clone();
        out.triangulation = triangulation;
        Ok(out)
    }
}

/// Newton region of a planar monomial scheme with exponent set `a`.
pub fn newton_region(a: &[Vec<i64>]) -> Result<NewtonRegion> {
    if a.is_empty() {
        return Err(Error::Invalid("empty exponent set".into()));
    }
    if let Some(bad) = a.iter().find(|p| p.len() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: bad.len(),
        });
    }
    if a.iter().flatten().any(|&x| x < 0) {
        return Err(Error::Invalid("exponents must be nonnegative".into()));
    }
    let minimal = minimal_elements(a);
    if minimal.iter().any(|p| p.iter().all(|&x| x == 0)) {
        return Err(Error::Invalid("the unit ideal has an empty Newton region".into()));
    }
    // minimal points sorted by x ascending have y descending; keep the
    // strictly convex lower hull chain
    let pts: Vec<QVector> = minimal.iter().map(|p| ivec(p)).collect();
    let mut chain: Vec<QVector> = Vec::new();
    for p in pts {
        while chain.len() >= 2 && !cross(&chain[chain.len() - 2], &chain[chain.len() - 1], &p).is_positive() {
            chain.pop();
        }
        chain.push(p);
    }
    let e2_infinite = chain[0][0].is_positive();
    let e1_infinite = chain.last().unwrap()[1].is_positive();
    let mut finite_vertices = vec![ivec(&[0, 0])];
    finite_vertices.extend(chain.iter().cloned());
    let mut infinite_directions = Vec::new();
    if e1_infinite {
        infinite_directions.push(0);
    }
    if e2_infinite {
        infinite_directions.push(1);
    }
    // counterclockwise boundary: origin, along the x-axis, chain right to left, up the y-axis
    let mut cycle = vec![RegionVertex::Finite(0)];
    if e1_infinite {
        cycle.push(RegionVertex::Infinite(0));
    }
    cycle.extend((1..=chain.len()).rev().map(RegionVertex::Finite));
    if e2_infinite {
        cycle.push(RegionVertex::Infinite(1));
    }
    let mut region = NewtonRegion {
        n: 2,
        finite_vertices,
        infinite_directions,
        triangulation: Vec::new(),
        cycle,
    };
    region.triangulation = region.fan_from(0)?.triangulation;
    Ok(region)
}

/// `Σ_σ w(σ) Π_{v ∉ σ} ℓ_v(t)` over the region's triangulation.
pub fn region_adjoint(r: &NewtonRegion) -> MultiPoly {
    let vertices = r.vertices();
    let forms: Vec<MultiPoly> = vertices.iter().map(|v| r.vertex_form(v)).collect();
    let mut total = MultiPoly::zero(r.n);
    for s in &r.triangulation {
        let mut term = MultiPoly::constant(r.n, s.weight.clone());
        for (v, f) in vertices.iter().zip(&forms) {
            if !s.vertices.contains(v) {
                term = &term * f;
            }
        }
        total = &total + &term;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreExpr {
    pub n: usize,
    pub adjoint: MultiPoly,
    /// `n!·X_1⋯X_n·adj(-X)`, expanded.
    pub numerator: MultiPoly,
    /// `ℓ_v(-X)` for every region vertex: vertices at infinity first, then
    /// finite vertices by coordinates (the origin's factor is 1).
    pub denominator_factors: Vec<MultiPoly>,
}

pub fn segre_expr_of(r: &NewtonRegion) -> SegreExpr {
    let n = r.n;
    let adjoint = region_adjoint(r);
    let neg: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i).scale(&-Rational::one())).collect();
    let adj_neg = adjoint.compose(&neg).expect("same variable count");
    let mut numerator = MultiPoly::constant(n, Rational::from_integer(factorial(n as u32)));
    for i in 0..n {
        numerator = &numerator * &MultiPoly::var(n, i);
    }
    numerator = &numerator * &adj_neg;
    let mut order: Vec<RegionVertex> = r.infinite_directions.iter().map(|&i| RegionVertex::Infinite(i)).collect();
    let mut finite: Vec<usize> = (0..r.finite_vertices.len()).collect();
    finite.sort_by(|&a, &b| r.finite_vertices[a].cmp(&r.finite_vertices[b]));
    order.extend(finite.into_iter().map(RegionVertex::Finite));
    let denominator_factors = order
        .iter()
        .map(|v| r.vertex_form(v).compose(&neg).expect("same variable count"))
        .collect();
    SegreExpr {
        n,
        adjoint,
        numerator,
        denominator_factors,
    }
}

pub fn segre_expr(a: &[Vec<i64>]) -> Result<SegreExpr> {
    Ok(segre_expr_of(&newton_region(a)?))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}_{i}")).collect()
}

impl SegreExpr {
    pub fn adjoint_text(&self) -> String {
        self.adjoint.display_compact(&names("t", self.n))
    }

    /// Denominator as a product of factors; constant factors are omitted
    /// and single-term factors are not parenthesized.
    pub fn denominator_text(&self) -> String {
        let x = names("X", self.n);
        self.denominator_factors
            .iter()
            .filter(|f| !f.is_one_poly())
            .map(|f| {
                let s = f.display_compact(&x);
                if f.len() == 1 {
                    s
                } else {
                    format!("({s})")
                }
            })
            .collect()
    }

    pub fn numerator_text(&self) -> String {
        self.numerator.display_compact(&names("X", self.n))
    }

    /// `n!X_1⋯X_n adj(-X_1,…,-X_n)` in symbolic form.
    pub fn symbolic_numerator(&self) -> String {
        let x = names("X", self.n);
        let args: Vec<String> = x.iter().map(|v| format!("-{v}")).collect();
        format!("{}{} adj({})", factorial(self.n as u32), x.join(""), args.join(","))
    }
}

impl MultiPoly {
    fn is_one_poly(&self) -> bool {
        self.len() == 1 && self.total_degree() == Some(0) && self.constant_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::adjoint_warren;
    use crate::exactalg::{int, Monomial};
    use crate::polytope::Polytope;

    fn aluffi() -> Vec<Vec<i64>> {
        vec![vec![2, 6], vec![3, 4], vec![4, 3], vec![5, 1], vec![7, 0]]
    }

    #[test]
    fn aluffi_region_shape() {
        let r = newton_region(&aluffi()).unwrap();
        let expected: Vec<QVector> = [[0, 0], [2, 6], [3, 4], [5, 1], [7, 0]].iter().map(|p| ivec(p)).collect();
        assert_eq!(r.finite_vertices, expected);
        assert_eq!(r.infinite_directions, vec![1]);
        assert_eq!(r.vertex_count(), 6);
        let weights: Vec<Rational> = r.triangulation.iter().map(|s| s.weight.clone()).collect();
        assert_eq!(weights, vec![Rational::new(7.into(), 2.into()), Rational::new(17.into(), 2.into()), int(5), int(1)]);
    }

    #[test]
    fn aluffi_adjoint_low_terms() {
        // hand evaluation: constant from the strip, linear terms from all four simplices
        let adj = region_adjoint(&newton_region(&aluffi()).unwrap());
        assert_eq!(adj.constant_term(), int(1));
        assert_eq!(adj.coefficient(&Monomial::new(vec![1, 0])), int(-15));
        assert_eq!(adj.coefficient(&Monomial::new(vec![0, 1])), int(-22));
    }

    #[test]
    fn unit_simplex_region() {
        let r = newton_region(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(r.infinite_directions.is_empty());
        assert_eq!(region_adjoint(&r), MultiPoly::constant(2, Rational::new(1.into(), 2.into())));
        let e = segre_expr_of(&r);
        assert_eq!(e.numerator_text(), "X_1X_2");
    }

    #[test]
    fn strip_region() {
        let r = newton_region(&[vec![2, 0]]).unwrap();
        assert_eq!(r.finite_vertices, vec![ivec(&[0, 0]), ivec(&[2, 0])]);
        assert_eq!(r.infinite_directions, vec![1]);
        let e = segre_expr_of(&r);
        assert_eq!(e.denominator_text(), "X_2(1+2X_1)");
        assert_eq!(e.adjoint, MultiPoly::one(2));
    }

    #[test]
    fn point_ideal() {
        let r = newton_region(&[vec![1, 1]]).unwrap();
        let adj = region_adjoint(&r);
        let half = Rational::new((-1).into(), 2.into());
        let expected = MultiPoly::linear_form(&[half.clone(), half]);
        assert_eq!(adj, expected);
        assert_eq!(region_adjoint(&r.fan_from(1).unwrap()), adj);
    }

    #[test]
    fn bounded_region_matches_polytope() {
        let r = newton_region(&[vec![0, 2], vec![1, 1], vec![2, 0]]).unwrap();
        let tri = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[2, 0]), ivec(&[0, 2])]).unwrap();
        assert_eq!(region_adjoint(&r), adjoint_warren(&tri));
    }

    #[test]
    fn signed_fans_agree() {
        let r = newton_region(&aluffi()).unwrap();
        let base = region_adjoint(&r);
        for apex in 1..r.finite_vertices.len() {
            assert_eq!(region_adjoint(&r.fan_from(apex).unwrap()), base, "apex {apex}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(newton_region(&[]).is_err());
        assert!(newton_region(&[vec![0, 0]]).is_err());
        assert!(newton_region(&[vec![-1, 2]]).is_err());
    }
}
