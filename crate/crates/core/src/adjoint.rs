//! Adjoint polynomials: Warren's triangulation sum and the kernel of the
//! vanishing conditions along the residual arrangement.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rank_and_kernel, Monomial, MultiPoly, QMatrix, QVector, Rational};
use crate::polytope::Polytope;
use crate::report::Check;
use crate::residual::{residual_arrangement, ProjSubspace, ResidualArrangement};

/// `ℓ_v(t) = 1 - v·t`.
pub fn vertex_form(v: &[Rational]) -> MultiPoly {
    let coeffs: Vec<Rational> = v.iter().map(|x| -x).collect();
    MultiPoly::affine_linear(Rational::one(), &coeffs)
}

/// Warren's adjoint over the pulling triangulation in index order.
pub fn adjoint_warren(p: &Polytope) -> MultiPoly {
    let order: Vec<usize> = (0..p.vertex_count()).collect();
    adjoint_warren_with_order(p, &order)
}

/// `Σ_σ vol(σ) Π_{v ∉ σ} ℓ_v(t)` over the pulling triangulation for `order`.
pub fn adjoint_warren_with_order(p: &Polytope, order: &[usize]) -> MultiPoly {
    let forms: Vec<MultiPoly> = p.vertices().iter().map(|v| vertex_form(v)).collect();
    let mut total = MultiPoly::zero(p.dim());
    for s in p.triangulate_with_order(order) {
        let mut term = MultiPoly::constant(p.dim(), s.volume.clone());
        for (v, f) in forms.iter().enumerate() {
            if !s.vertices.contains(&v) {
                term = &term * f;
            }
        }
        total = &total + &term;
    }
    total
}

/// Warren's adjoint homogenized to its nominal degree `|V| - n - 1`.
pub fn adjoint_warren_homogeneous(p: &Polytope) -> MultiPoly {
    let degree = (p.vertex_count() - p.dim() - 1) as u32;
    adjoint_warren(p).homogenize(degree).expect("Warren sum has degree at most |V| - n - 1")
}

/// Linear conditions on the coefficients of degree-`degree` forms in
/// `vars` variables.
#[derive(Clone, Debug)]
pub struct VanishingSystem {
    pub degree: u32,
    pub vars: usize,
    pub monomial_basis: Vec<Monomial>,
    pub matrix: QMatrix,
    pub multiplicities: Vec<u32>,
}

impl VanishingSystem {
    pub fn kernel(&self) -> (usize, Vec<QVector>) {
        rank_and_kernel(&self.matrix)
    }

    pub fn polynomial(&self, coeffs: &[Rational]) -> MultiPoly {
        MultiPoly::from_coefficients(self.vars, &self.monomial_basis, coeffs)
    }
}

/// Falling factorial coefficient of `∂^α x^β`.
fn derivative_coefficient(beta: &[u32], alpha: &[u32]) -> BigInt {
    let mut c = BigInt::one();
    for (&b, &a) in beta.iter().zip(alpha) {
        for k in 0..a {
            c *= BigInt::from(b - k);
        }
    }
    c
}

/// Rows expressing that every derivative of order `< m` of a degree-`degree`
/// form vanishes on the subspace spanned by `basis`.
fn member_rows(basis: &[QVector], degree: u32, m: u32, monomials: &[Monomial]) -> Vec<QVector> {
    let vars = basis[0].len();
    let k = basis.len();
    // x_i = Σ_j basis_j[i] s_j
    let images: Vec<MultiPoly> = (0..vars)
        .map(|i| {
            let coeffs: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            MultiPoly::linear_form(&coeffs)
        })
        .collect();
    let mut cache: HashMap<Vec<u32>, MultiPoly> = HashMap::new();
    cache.insert(vec![0; vars], MultiPoly::one(k));
    fn power(e: &[u32], images: &[MultiPoly], cache: &mut HashMap<Vec<u32>, MultiPoly>) -> MultiPoly {
        if let Some(p) = cache.get(e) {
            return p.clone();
        }
        let i = e.iter().position(|&x| x > 0).unwrap();
        let mut lower = e.to_vec();
        lower[i] -= 1;
        let p = &power(&lower, images, cache) * &images[i];
        cache.insert(e.to_vec(), p.clone());
        p
    }
    let mut rows = Vec::new();
    for order in 0..m.min(degree + 1) {
        for alpha in Monomial::all_of_degree(vars, order) {
            let s_monos = Monomial::all_of_degree(k, degree - order);
            let index: BTreeMap<&Monomial, usize> = s_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut block = vec![vec![Rational::zero(); monomials.len()]; s_monos.len()];
            for (col, beta) in monomials.iter().enumerate() {
                if !alpha.divides(beta) {
                    continue;
                }
                let rest: Vec<u32> = beta.exponents().iter().zip(alpha.exponents()).map(|(b, a)| b - a).collect();
                let c = Rational::from_integer(derivative_coefficient(beta.exponents(), alpha.exponents()));
                for (sm, coef) in power(&rest, &images, &mut cache).terms() {
                    block[index[sm]][col] += &c * coef;
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
    }
    rows
}

/// Conditions for vanishing to order `multiplicities[i]` along `members[i]`.
pub fn vanishing_system(members: &[&ProjSubspace], vars: usize, degree: u32, multiplicities: &[u32]) -> VanishingSystem {
    let monomial_basis = Monomial::all_of_degree(vars, degree);
    let mut matrix = QMatrix::zeros(0, monomial_basis.len());
    for (member, &m) in members.iter().zip(multiplicities) {
        for row in member_rows(&member.param_basis, degree, m, &monomial_basis) {
            matrix.push_row(row).expect("row length matches basis");
        }
    }
    VanishingSystem {
        degree,
        vars,
        monomial_basis,
        matrix,
        multiplicities: multiplicities.to_vec(),
    }
}

fn simple_vanishing(p: &Polytope, r: &ResidualArrangement, degree: u32) -> VanishingSystem {
    let comps = r.component_list();
    let ones = vec![1; comps.len()];
    vanishing_system(&comps, p.dim() + 1, degree, &ones)
}

/// The unique degree `d - n - 1` form vanishing on the residual arrangement,
/// primitive with positive leading coefficient.
pub fn adjoint_kernel(p: &Polytope) -> Result<MultiPoly> {
    adjoint_kernel_with(p, &residual_arrangement(p))
}

pub fn adjoint_kernel_with(p: &Polytope, r: &ResidualArrangement) -> Result<MultiPoly> {
    let degree = (p.facet_count() - p.dim() - 1) as u32;
    let system = simple_vanishing(p, r, degree);
    let (_, kernel) = system.kernel();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension {
            expected: 1,
            found: kernel.len(),
        });
    }
    Ok(system.polynomial(&kernel[0]).primitive_normalized())
}

/// Kernel dimension of the degree `d - n - 1` system (whatever it is).
pub fn adjoint_kernel_dimension(p: &Polytope, r: &ResidualArrangement) -> usize {
    let degree = (p.facet_count() - p.dim() - 1) as u32;
    simple_vanishing(p, r, degree).kernel().1.len()
}

/// Degree `d - n` forms vanishing on the residual arrangement.
pub fn omega_space(p: &Polytope) -> (usize, Vec<MultiPoly>) {
    omega_space_with(p, &residual_arrangement(p))
}

pub fn omega_space_with(p: &Polytope, r: &ResidualArrangement) -> (usize, Vec<MultiPoly>) {
    let degree = (p.facet_count() - p.dim()) as u32;
    let system = simple_vanishing(p, r, degree);
    let (_, kernel) = system.kernel();
    let basis: Vec<MultiPoly> = kernel.iter().map(|k| system.polynomial(k)).collect();
    (basis.len(), basis)
}

/// Evaluates Warren's adjoint of `p` on the residual arrangement of its
/// dual, and compares it with the dual's kernel adjoint when that exists.
pub fn verify_warren_on_dual_residual(p: &Polytope, samples_per_member: usize, seed: u64) -> Result<Vec<Check>> {
    let dual = p.dual()?;
    let warren = adjoint_warren_homogeneous(p);
    let r = residual_arrangement(&dual);
    let mut vanish = Check::new("warren-vanishes-on-dual-residual", "Warren's adjoint vanishes along the dual residual arrangement");
    'outer: for (i, member) in r.all_members.iter().enumerate() {
        for x in member.sample_points(samples_per_member, seed.wrapping_add(i as u64)) {
            if !warren.eval(&x)?.is_zero() {
                vanish.fail(format!("member {i} at {}", crate::exactalg::format_vector(&x)));
                break 'outer;
            }
        }
    }
    let mut checks = vec![vanish];
    if r.simple {
        let mut prop = Check::new("warren-matches-dual-kernel", "Warren's adjoint is the adjoint hypersurface of the dual");
        match adjoint_kernel_with(&dual, &r) {
            Ok(k) if k.is_proportional(&warren) => {}
            Ok(k) => prop.fail(format!("kernel adjoint {k} not proportional to {warren}")),
            Err(e) => prop.fail(e.to_string()),
        }
        checks.push(prop);
    }
    Ok(checks)
}

/// Kernel adjoint of `p` from Warren's adjoint of the recentered dual,
/// written in the original coordinates and normalized.
pub fn adjoint_via_dual(p: &Polytope) -> Result<MultiPoly> {
    let (centered, shift) = p.recenter();
    let dual = centered.dual()?;
    let w = adjoint_warren_homogeneous(&dual);
    let back: Vec<Rational> = shift.iter().map(|x| -x).collect();
    Ok(w.translate_homogeneous(&back)?.primitive_normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ivec, qvec, rat};
    use crate::fixtures;

    fn poly(vars: usize, terms: &[(&[u32], Rational)]) -> MultiPoly {
        MultiPoly::from_terms(vars, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), c.clone()))).unwrap()
    }

    #[test]
    fn simplex_adjoint_is_volume() {
        let t = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[3, 0]), ivec(&[0, 2])]).unwrap();
        assert_eq!(adjoint_warren(&t), MultiPoly::constant(2, int(3)));
    }

    #[test]
    fn unit_square_warren() {
        let sq = fixtures::build("unit-square").unwrap();
        let expected = poly(2, &[(&[0, 0], int(1)), (&[1, 0], rat(-1, 2)), (&[0, 1], rat(-1, 2))]);
        assert_eq!(adjoint_warren(&sq), expected);
        let h = adjoint_warren_homogeneous(&sq);
        assert_eq!(h, poly(3, &[(&[1, 0, 0], int(1)), (&[0, 1, 0], rat(-1, 2)), (&[0, 0, 1], rat(-1, 2))]));
    }

    #[test]
    fn centered_square_dual_warren_is_constant() {
        let sq = fixtures::build("centered-square").unwrap();
        let d = sq.dual().unwrap();
        assert_eq!(adjoint_warren(&d), MultiPoly::constant(2, int(8)));
        assert_eq!(adjoint_warren_homogeneous(&d), poly(3, &[(&[1, 0, 0], int(8))]));
        // the square's kernel adjoint is the line at infinity
        assert_eq!(adjoint_kernel(&sq).unwrap(), poly(3, &[(&[1, 0, 0], int(1))]));
    }

    #[test]
    fn empty_system_is_everything() {
        let s = vanishing_system(&[], 4, 3, &[]);
        assert_eq!(s.matrix.rows(), 0);
        assert_eq!(s.kernel().1.len(), 20);
    }

    #[test]
    fn pentagon_conic_is_unique() {
        let p = fixtures::build("pentagon").unwrap();
        let r = residual_arrangement(&p);
        let sys = simple_vanishing(&p, &r, 2);
        let (rank, kernel) = sys.kernel();
        assert_eq!((rank, kernel.len()), (5, 1));
        let conic = sys.polynomial(&kernel[0]);
        // oracle: the conic through five points is the determinant of the
        // 6x6 matrix of monomials; check vanishing directly instead
        for c in r.components() {
            assert!(conic.eval(&c.param_basis[0]).unwrap().is_zero());
        }
        for v in p.vertices() {
            let mut h = vec![int(1)];
            h.extend(v.iter().cloned());
            assert!(!conic.eval(&h).unwrap().is_zero());
        }
    }

    #[test]
    fn multiplicity_two_at_a_point() {
        // forms vanishing doubly at (1:0:0) in degree 2: span of x1², x1x2, x2²
        let pt = crate::residual::ProjSubspace {
            defining_forms: vec![ivec(&[0, 1, 0]), ivec(&[0, 0, 1])],
            codim: 2,
            generator_set: Default::default(),
            param_basis: vec![ivec(&[1, 0, 0])],
        };
        let s = vanishing_system(&[&pt], 3, 2, &[2]);
        assert_eq!(s.kernel().1.len(), 3);
    }

    #[test]
    fn warren_is_order_independent() {
        let h = fixtures::build("hexagon").unwrap();
        let a = adjoint_warren(&h);
        let b = adjoint_warren_with_order(&h, &[3, 4, 5, 0, 1, 2]);
        assert_eq!(a, b);
    }

    #[test]
    fn hexagon_homogenizes_to_cubic() {
        let h = fixtures::build("hexagon").unwrap();
        let w = adjoint_warren_homogeneous(&h);
        assert!(w.is_homogeneous());
        assert_eq!(w.total_degree(), Some(3));
        assert_eq!(w.dehomogenize(), adjoint_warren(&h));
    }

    #[test]
    fn hexagon_omega_has_six() {
        let h = fixtures::build("hexagon").unwrap();
        assert_eq!(omega_space(&h).0, 6);
    }

    #[test]
    fn kernel_matches_dual_warren_on_pentagon() {
        let p = fixtures::build("pentagon").unwrap();
        let k = adjoint_kernel(&p).unwrap();
        assert_eq!(adjoint_via_dual(&p).unwrap(), k);
        let (c, _) = p.recenter();
        let checks = verify_warren_on_dual_residual(&c.dual().unwrap(), 3, 5).unwrap();
        assert!(checks.iter().all(|c| c.passed));
    }

    #[test]
    fn triangle_in_rational_coordinates() {
        let t = Polytope::from_vertices(vec![qvec(&[(0, 1), (0, 1)]), qvec(&[(1, 2), (0, 1)]), qvec(&[(0, 1), (1, 3)])]).unwrap();
        assert_eq!(adjoint_warren(&t), MultiPoly::constant(2, rat(1, 12)));
        assert_eq!(adjoint_kernel(&t).unwrap(), MultiPoly::one(3));
    }
}
