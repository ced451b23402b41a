//! Wachspress coordinates, the Wachspress map and its inverse projection.

use num_traits::{One, Signed, Zero};

use crate::adjoint::{adjoint_kernel_with, adjoint_warren, omega_space_with, vertex_form};
use crate::error::{Error, Result};
use crate::exactalg::{
    determinant, dot, factorial, format_vector, homogenize_point, primitive, Monomial, MultiPoly, QMatrix, QVector, Rational,
};
use crate::polytope::Polytope;
use crate::report::Check;
use crate::residual::{residual_arrangement, ResidualArrangement};
use crate::sampling::Sampler;

/// Data for evaluating Wachspress coordinates of a polytope. Everything is
/// computed on the polytope translated so its vertex centroid is the origin.
#[derive(Clone, Debug)]
pub struct Wachspress {
    centroid: QVector,
    dual: Polytope,
    /// Warren adjoint of the dual, in centered coordinates.
    denominator: MultiPoly,
    /// Warren adjoint of each dual facet (cone volumes from the origin).
    facet_adjoints: Vec<MultiPoly>,
    /// `vol(F_u)` for simplicial dual facets, `None` otherwise.
    facet_volumes: Vec<Option<Rational>>,
    vertex_count: usize,
}

fn cone_volume(points: &[&QVector]) -> Rational {
    let rows: Vec<QVector> = points.iter().map(|p| (*p).clone()).collect();
    let n = rows.len() as u32;
    determinant(&rows).abs() / Rational::from_integer(factorial(n))
}

impl Wachspress {
    pub fn new(p: &Polytope) -> Result<Self> {
        let (centered, shift) = p.recenter();
        let dual = centered.dual()?;
        let n = p.dim();
        let forms: Vec<MultiPoly> = dual.vertices().iter().map(|v| vertex_form(v)).collect();
        let mut facet_adjoints = Vec::new();
        let mut facet_volumes = Vec::new();
        for u in 0..p.vertex_count() {
            let facet = dual.facet_vertices(u);
            let mut adj = MultiPoly::zero(n);
            for simplex in dual.triangulate_face(&facet, n - 1, &facet) {
                let pts: Vec<&QVector> = simplex.iter().map(|&w| &dual.vertices()[w]).collect();
                let mut term = MultiPoly::constant(n, cone_volume(&pts));
                for &w in facet.iter().filter(|w| !simplex.contains(w)) {
                    term = &term * &forms[w];
                }
                adj = &adj + &term;
            }
            facet_adjoints.push(adj);
            facet_volumes.push(if facet.len() == n {
                let pts: Vec<&QVector> = facet.iter().map(|&w| &dual.vertices()[w]).collect();
                Some(cone_volume(&pts))
            } else {
                None
            });
        }
        Ok(Wachspress {
            centroid: shift.iter().map(|x| -x).collect(),
            denominator: adjoint_warren(&dual),
            dual,
            facet_adjoints,
            facet_volumes,
            vertex_count: p.vertex_count(),
        })
    }

    fn centered(&self, t: &[Rational]) -> Result<QVector> {
        if t.len() != self.centroid.len() {
            return Err(Error::DimensionMismatch {
                expected: self.centroid.len(),
                found: t.len(),
            });
        }
        Ok(t.iter().zip(&self.centroid).map(|(a, c)| a - c).collect())
    }

    /// `Π_{F ∌ u} ℓ_{v_F}(t')` for every vertex `u`.
    fn products(&self, tc: &[Rational]) -> Vec<Rational> {
        let values: Vec<Rational> = self.dual.vertices().iter().map(|v| Rational::one() - dot(v, tc)).collect();
        (0..self.vertex_count)
            .map(|u| {
                (0..values.len())
                    .filter(|&f| !self.dual.incidence()[u][f])
                    .map(|f| &values[f])
                    .fold(Rational::one(), |acc, x| acc * x)
            })
            .collect()
    }

    fn denominator_at(&self, tc: &[Rational]) -> Result<Rational> {
        let den = self.denominator.eval(tc)?;
        if den.is_zero() {
            return Err(Error::DenominatorZero);
        }
        Ok(den)
    }

    /// Coordinates with `vol(F_u)` weights; requires a simple polytope.
    pub fn coords_simple(&self, t: &[Rational]) -> Result<QVector> {
        if self.facet_volumes.iter().any(Option::is_none) {
            return Err(Error::NotSimple("a vertex lies on more than n facets".into()));
        }
        let tc = self.centered(t)?;
        let den = self.denominator_at(&tc)?;
        Ok(self
            .products(&tc)
            .iter()
            .zip(&self.facet_volumes)
            .map(|(prod, vol)| prod * vol.as_ref().unwrap() / &den)
            .collect())
    }

    /// Coordinates with the dual facet adjoints as weights. Where numerator
    /// and denominator both vanish (vertices on more than n facets) the value
    /// is the limit along the segment from the centroid.
    pub fn coords_general(&self, t: &[Rational]) -> Result<QVector> {
        let tc = self.centered(t)?;
        if self.denominator.eval(&tc)?.is_zero() {
            return self.coords_limit(&tc);
        }
        let den = self.denominator_at(&tc)?;
        self.products(&tc)
            .iter()
            .zip(&self.facet_adjoints)
            .map(|(prod, adj)| Ok(prod * adj.eval(&tc)? / &den))
            .collect()
    }

    fn coords_limit(&self, tc: &[Rational]) -> Result<QVector> {
        // t'(s) = (1 - s) tc, so s = 0 is the point and s = 1 the centroid.
        let line: Vec<MultiPoly> = tc
            .iter()
            .map(|x| MultiPoly::affine_linear(x.clone(), &[-x.clone()]))
            .collect();
        let den = self.denominator.compose(&line)?;
        let order = lowest_order(&den).ok_or(Error::DenominatorZero)?;
        let lead = den.coefficient(&Monomial::new(vec![order]));
        let values: Vec<MultiPoly> = self
            .dual
            .vertices()
            .iter()
            .map(|v| MultiPoly::affine_linear(Rational::one() - dot(v, tc), &[dot(v, tc)]))
            .collect();
        (0..self.vertex_count)
            .map(|u| {
                let num = (0..values.len())
                    .filter(|&f| !self.dual.incidence()[u][f])
                    .fold(self.facet_adjoints[u].compose(&line)?, |acc, f| &acc * &values[f]);
                if lowest_order(&num).is_some_and(|k| k < order) {
                    return Err(Error::DenominatorZero);
                }
                Ok(num.coefficient(&Monomial::new(vec![order])) / &lead)
            })
            .collect()
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }
}

/// Lowest exponent with a nonzero coefficient in a univariate polynomial.
fn lowest_order(f: &MultiPoly) -> Option<u32> {
    f.terms().map(|(m, _)| m.exponents()[0]).min()
}

pub fn coords_simple(p: &Polytope, t: &[Rational]) -> Result<QVector> {
    Wachspress::new(p)?.coords_simple(t)
}

pub fn coords_general(p: &Polytope, t: &[Rational]) -> Result<QVector> {
    Wachspress::new(p)?.coords_general(t)
}

/// `ω_u = Π_{F ∌ u} ℓ_F` as homogeneous polynomials in `t_0..t_n`.
pub fn map_numerators(p: &Polytope) -> Vec<MultiPoly> {
    let forms: Vec<MultiPoly> = p.facets().iter().map(|f| MultiPoly::linear_form(f)).collect();
    (0..p.vertex_count())
        .map(|u| {
            (0..p.facet_count())
                .filter(|&f| !p.incidence()[f][u])
                .fold(MultiPoly::one(p.dim() + 1), |acc, f| &acc * &forms[f])
        })
        .collect()
}

/// The Wachspress map at a homogeneous point.
pub fn wachspress_map(p: &Polytope, t: &[Rational]) -> QVector {
    let values: Vec<Rational> = p.facets().iter().map(|f| dot(f, t)).collect();
    (0..p.vertex_count())
        .map(|u| {
            (0..p.facet_count())
                .filter(|&f| !p.incidence()[f][u])
                .fold(Rational::one(), |acc, f| acc * &values[f])
        })
        .collect()
}

/// Basis of Ω_P starting with `t_0·A, ..., t_n·A` for the adjoint `A`.
#[derive(Clone, Debug)]
pub struct AdjointBasis {
    pub adjoint: MultiPoly,
    pub polys: Vec<MultiPoly>,
    /// `polys[j] = Σ_u change_of_basis[j][u] · ω_u`.
    pub change_of_basis: QMatrix,
}

fn coefficient_rank(polys: &[MultiPoly]) -> usize {
    let mut monos: Vec<crate::exactalg::Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows = polys.iter().map(|p| p.coefficients_in(&monos)).collect();
    QMatrix::from_rows(monos.len(), rows).unwrap().rank()
}

pub fn adjoint_basis(p: &Polytope) -> Result<AdjointBasis> {
    adjoint_basis_with(p, &residual_arrangement(p))
}

pub fn adjoint_basis_with(p: &Polytope, r: &ResidualArrangement) -> Result<AdjointBasis> {
    let n = p.dim();
    let adjoint = adjoint_kernel_with(p, r)?;
    let mut polys: Vec<MultiPoly> = (0..=n).map(|i| &MultiPoly::var(n + 1, i) * &adjoint).collect();
    if coefficient_rank(&polys) != n + 1 {
        return Err(Error::Violation("t_i·adj are linearly dependent".into()));
    }
    let (dim, omega) = omega_space_with(p, r);
    if dim != p.vertex_count() {
        return Err(Error::KernelDimension {
            expected: p.vertex_count(),
            found: dim,
        });
    }
    for phi in omega {
        if polys.len() == dim {
            break;
        }
        let mut trial = polys.clone();
        trial.push(phi);
        if coefficient_rank(&trial) == trial.len() {
            polys = trial;
        }
    }
    if polys.len() != dim {
        return Err(Error::Violation("could not complete the adjoint block to a basis of Ω_P".into()));
    }
    let numerators = map_numerators(p);
    let hv: Vec<QVector> = p.vertices().iter().map(|v| homogenize_point(v)).collect();
    let diag: Vec<Rational> = numerators.iter().zip(&hv).map(|(w, v)| w.eval(v)).collect::<Result<_>>()?;
    let mut m = QMatrix::zeros(dim, dim);
    for (j, b) in polys.iter().enumerate() {
        for u in 0..dim {
            m.set(j, u, b.eval(&hv[u])? / &diag[u]);
        }
    }
    // exact reconstruction b_j = Σ_u m_ju ω_u
    for (j, b) in polys.iter().enumerate() {
        let mut sum = MultiPoly::zero(n + 1);
        for u in 0..dim {
            sum = &sum + &numerators[u].scale(m.get(j, u));
        }
        if &sum != b {
            return Err(Error::Violation(format!("basis element {j} is not in the span of the map numerators")));
        }
    }
    Ok(AdjointBasis {
        adjoint,
        polys,
        change_of_basis: m,
    })
}

impl AdjointBasis {
    /// Converts a vertex-indexed map value to adjoint-basis coordinates.
    pub fn to_adjoint_coordinates(&self, w: &[Rational]) -> Result<QVector> {
        self.change_of_basis.mul_vec(w)
    }

    /// Projection from the span of the adjoint image: the first `n + 1`
    /// adjoint-basis coordinates of a vertex-indexed map value.
    pub fn inverse_projection(&self, w: &[Rational]) -> Result<QVector> {
        let n1 = self.adjoint.vars();
        let coords = self.to_adjoint_coordinates(w)?;
        let head: QVector = coords[..n1].to_vec();
        if head.iter().all(Zero::is_zero) {
            return Err(Error::Violation("point lies in the span of the adjoint image".into()));
        }
        Ok(head)
    }
}

/// Same projective point (both nonzero and proportional).
pub fn projectively_equal(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().any(|x| !x.is_zero()) && crate::exactalg::proportional(a, b)
}

/// Checks that the map vanishes on the residual arrangement and nowhere
/// else on the facet hyperplanes.
pub fn check_base_locus(p: &Polytope, samples: usize, seed: u64) -> Vec<Check> {
    check_base_locus_with(p, &residual_arrangement(p), samples, seed)
}

pub fn check_base_locus_with(p: &Polytope, r: &ResidualArrangement, samples: usize, seed: u64) -> Vec<Check> {
    let mut on = Check::new("base-locus-contains-residual", "the map vanishes identically on the residual arrangement");
    for (i, c) in r.components().enumerate() {
        for x in c.sample_points(samples, seed.wrapping_add(i as u64)) {
            if wachspress_map(p, &x).iter().any(|v| !v.is_zero()) {
                on.fail(format!("component {i} at ({})", format_vector(&x)));
            }
        }
    }
    let mut off = Check::new("base-locus-within-residual", "off the residual arrangement the map has a nonzero coordinate");
    let mut sampler = Sampler::new(seed ^ 0x5eed);
    for (f, form) in p.facets().iter().enumerate() {
        let m = QMatrix::from_rows(p.dim() + 1, vec![form.clone()]).unwrap();
        let (_, basis) = crate::exactalg::rank_and_kernel(&m);
        let mut taken = 0;
        let mut attempts = 0;
        while taken < samples && attempts < 20 * samples {
            attempts += 1;
            let x = sampler.combination(&basis);
            if r.all_members.iter().any(|s| s.contains_point(&x)) {
                continue;
            }
            taken += 1;
            if wachspress_map(p, &x).iter().all(Zero::is_zero) {
                off.fail(format!("facet {f} at ({})", format_vector(&x)));
            }
        }
        off.require(taken == samples, || format!("facet {f}: only {taken} samples off the arrangement"));
    }
    vec![on, off]
}

/// `[ω_u(v)]` is diagonal with nonzero diagonal.
pub fn check_diagonal(p: &Polytope) -> Check {
    let mut c = Check::new("diagonal-evaluation", "ω_u(v) is zero exactly when u ≠ v");
    for (v, x) in p.vertices().iter().enumerate() {
        let w = wachspress_map(p, &homogenize_point(x));
        for (u, val) in w.iter().enumerate() {
            if val.is_zero() == (u == v) {
                c.fail(format!("ω_{u} at vertex {v} is {val}"));
            }
        }
    }
    c
}

/// Barycentric checks at seeded interior points and at the vertices.
pub fn check_barycentric(p: &Polytope, w: &Wachspress, points: usize, seed: u64) -> Vec<Check> {
    let mut unity = Check::new("partition-of-unity", "Σ β_u(t) = 1");
    let mut precision = Check::new("linear-precision", "Σ β_u(t)·u = t");
    let mut positive = Check::new("positivity", "β_u(t) > 0 in the interior");
    let mut indicator = Check::new("vertex-indicator", "β(v) is the indicator vector of v");
    let mut agree = Check::new("general-matches-simple", "the general and simple formulas agree");
    let simple = p.is_simple_polytope();
    let mut sampler = Sampler::new(seed);
    for _ in 0..points {
        let t = sampler.convex_combination(p.vertices());
        let beta = match w.coords_general(&t) {
            Ok(b) => b,
            Err(e) => {
                unity.fail(format!("at ({}): {e}", format_vector(&t)));
                continue;
            }
        };
        let sum: Rational = beta.iter().sum();
        unity.require(sum.is_one(), || format!("sum {sum} at ({})", format_vector(&t)));
        let mut lin = vec![Rational::zero(); p.dim()];
        for (b, v) in beta.iter().zip(p.vertices()) {
            for (l, x) in lin.iter_mut().zip(v) {
                *l += b * x;
            }
        }
        precision.require(lin == t, || format!("at ({})", format_vector(&t)));
        positive.require(beta.iter().all(Signed::is_positive), || format!("at ({})", format_vector(&t)));
        if simple {
            match w.coords_simple(&t) {
                Ok(s) => agree.require(s == beta, || format!("at ({})", format_vector(&t))),
                Err(e) => agree.fail(e.to_string()),
            }
        }
    }
    for (v, x) in p.vertices().iter().enumerate() {
        match w.coords_general(x) {
            Ok(beta) => indicator.require(
                beta.iter().enumerate().all(|(u, b)| if u == v { b.is_one() } else { b.is_zero() }),
                || format!("vertex {v}: ({})", format_vector(&beta)),
            ),
            Err(e) => indicator.fail(format!("vertex {v}: {e}")),
        }
    }
    let mut out = vec![unity, precision, positive, indicator];
    if simple {
        out.push(agree);
    }
    out
}

/// `ρ(ω(t)) ∼ t` at seeded points off the adjoint hypersurface.
pub fn check_inverse(p: &Polytope, basis: &AdjointBasis, points: usize, seed: u64) -> Check {
    let mut c = Check::new("inverse-projection", "projection from the adjoint image span inverts the map");
    let mut sampler = Sampler::new(seed);
    let n1 = p.dim() + 1;
    let unit: Vec<QVector> = (0..n1)
        .map(|i| (0..n1).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut done = 0;
    let mut attempts = 0;
    while done < points && attempts < 10 * points {
        attempts += 1;
        let t = sampler.combination(&unit);
        if basis.adjoint.eval(&t).map_or(true, |a| a.is_zero()) {
            continue;
        }
        done += 1;
        let w = wachspress_map(p, &t);
        match basis.inverse_projection(&w) {
            Ok(back) => c.require(projectively_equal(&back, &t), || format!("({}) maps back to ({})", format_vector(&t), format_vector(&back))),
            Err(e) => c.fail(format!("({}): {e}", format_vector(&t))),
        }
    }
    for (v, x) in p.vertices().iter().enumerate() {
        let h = homogenize_point(x);
        match basis.inverse_projection(&wachspress_map(p, &h)) {
            Ok(back) => c.require(projectively_equal(&back, &h), || format!("vertex {v}")),
            Err(e) => c.fail(format!("vertex {v}: {e}")),
        }
    }
    c
}

/// Rational parametrization of an adjoint hypersurface of degree one or two.
#[derive(Clone, Debug)]
pub enum AdjointParametrization {
    /// Points spanning the hyperplane.
    Hyperplane(Vec<QVector>),
    /// A quadric with a rational point on it: lines through the point meet
    /// the quadric in one more point.
    Quadric { quadric: MultiPoly, point: QVector },
}

impl AdjointParametrization {
    /// Builds a parametrization of `adjoint`; for quadrics the base point is
    /// taken on a residual component.
    pub fn for_adjoint(adjoint: &MultiPoly, r: &ResidualArrangement) -> Result<Self> {
        let vars = adjoint.vars();
        match adjoint.total_degree() {
            Some(1) => {
                let coeffs: QVector = (0..vars)
                    .map(|i| adjoint.coefficient(&Monomial::var(vars, i)))
                    .collect();
                let (_, basis) = crate::exactalg::rank_and_kernel(&QMatrix::from_rows(vars, vec![coeffs]).unwrap());
                Ok(AdjointParametrization::Hyperplane(basis))
            }
            Some(2) => {
                let c = r
                    .components()
                    .next()
                    .ok_or_else(|| Error::Invalid("no residual component to anchor the quadric".into()))?;
                let point = c.param_basis[0].clone();
                if !adjoint.eval(&point)?.is_zero() {
                    return Err(Error::Violation("adjoint does not contain the residual arrangement".into()));
                }
                Ok(AdjointParametrization::Quadric {
                    quadric: adjoint.clone(),
                    point,
                })
            }
            other => Err(Error::Invalid(format!("no rational parametrization for adjoint degree {other:?}"))),
        }
    }

    pub fn sample(&self, sampler: &mut Sampler) -> Result<QVector> {
        match self {
            AdjointParametrization::Hyperplane(basis) => Ok(sampler.combination(basis)),
            AdjointParametrization::Quadric { quadric, point } => {
                let vars = point.len();
                let unit: Vec<QVector> = (0..vars)
                    .map(|i| (0..vars).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                    .collect();
                let q = sampler.combination(&unit);
                // Q(p + s q) = s (2 B(p, q) + s Q(q)), B the polar form
                let qq = quadric.eval(&q)?;
                let pq: Vec<Rational> = point.iter().zip(&q).map(|(a, b)| a + b).collect();
                let two_b = quadric.eval(&pq)? - &qq - quadric.eval(point)?;
                let x: QVector = point.iter().zip(&q).map(|(a, b)| &qq * a - &two_b * b).collect();
                Ok(primitive(&x))
            }
        }
    }
}

/// Projective dimension of the span of the map image of the adjoint
/// hypersurface, from at least `2N` sampled points outside the base locus.
pub fn adjoint_image_span(p: &Polytope, param: &AdjointParametrization, seed: u64) -> Result<isize> {
    let target = 2 * p.vertex_count();
    let mut sampler = Sampler::new(seed);
    let mut rows = Vec::new();
    let mut attempts = 0;
    while rows.len() < target {
        attempts += 1;
        if attempts > 20 * target {
            return Err(Error::Violation("too many samples landed in the base locus".into()));
        }
        let x = param.sample(&mut sampler)?;
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        let w = wachspress_map(p, &x);
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        rows.push(w);
    }
    let m = QMatrix::from_rows(p.vertex_count(), rows)?;
    Ok(m.rank() as isize - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, qvec, rat};
    use crate::fixtures;

    #[test]
    fn square_center_is_uniform() {
        let sq = fixtures::build("unit-square").unwrap();
        let beta = coords_simple(&sq, &qvec(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(beta, vec![rat(1, 4); 4]);
    }

    #[test]
    fn square_off_center_is_bilinear() {
        // Wachspress on a parallelogram is bilinear interpolation
        let sq = fixtures::build("unit-square").unwrap();
        let (x, y) = (rat(1, 4), rat(1, 2));
        let beta = coords_general(&sq, &[x.clone(), y.clone()]).unwrap();
        let one = Rational::one();
        let expected = vec![
            (&one - &x) * (&one - &y),
            &x * (&one - &y),
            &x * &y,
            (&one - &x) * &y,
        ];
        assert_eq!(beta, expected);
    }

    #[test]
    fn octahedron_partition_of_unity() {
        let o = fixtures::build("octahedron").unwrap();
        let w = Wachspress::new(&o).unwrap();
        let beta = w.coords_general(&qvec(&[(1, 5), (-1, 7), (1, 9)])).unwrap();
        assert_eq!(beta.iter().sum::<Rational>(), int(1));
        assert!(w.coords_simple(&qvec(&[(0, 1), (0, 1), (0, 1)])).is_err());
        for (v, x) in o.vertices().iter().enumerate() {
            let beta = w.coords_general(x).unwrap();
            assert!(beta.iter().enumerate().all(|(u, b)| if u == v { b.is_one() } else { b.is_zero() }));
        }
    }

    #[test]
    fn pentagon_properties() {
        let p = fixtures::build("pentagon").unwrap();
        let w = Wachspress::new(&p).unwrap();
        for c in check_barycentric(&p, &w, 10, 3) {
            assert!(c.passed, "{c:?}");
        }
        assert!(check_diagonal(&p).passed);
        for c in check_base_locus(&p, 5, 9) {
            assert!(c.passed, "{c:?}");
        }
        let basis = adjoint_basis(&p).unwrap();
        assert!(check_inverse(&p, &basis, 10, 4).passed);
        let r = residual_arrangement(&p);
        let param = AdjointParametrization::for_adjoint(&basis.adjoint, &r).unwrap();
        assert_eq!(adjoint_image_span(&p, &param, 2).unwrap(), 5 - 2 - 2);
    }
}
