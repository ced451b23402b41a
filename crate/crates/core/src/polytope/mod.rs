//! Full-dimensional convex polytopes with exact vertices and facet forms.
//!
//! Facets are homogeneous linear forms `c0 t0 + c1 t1 + ... + cn tn` with
//! coprime integer coefficients, oriented so that `c0 + c·v >= 0` on every
//! vertex `v`.

mod io;
mod triangulate;

pub use io::PolytopeFile;
pub use triangulate::Simplex;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::exactalg::{
    dot, homogenize_point, primitive_keep_sign, proportional, rank_and_kernel, QMatrix, QVector,
    Rational,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<QVector>,
    facets: Vec<QVector>,
    incidence: Vec<Vec<bool>>,
}

/// Affine rank of a point set: dimension of its affine hull, or -1 if empty.
pub(crate) fn affine_dimension(points: &[&QVector]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let cols = points[0].len() + 1;
    let rows: Vec<QVector> = points.iter().map(|p| homogenize_point(p)).collect();
    let m = QMatrix::from_rows(cols, rows).expect("uniform point length");
    m.rank() as isize - 1
}

/// Value of a homogeneous form at the affine point `v`.
pub(crate) fn eval_affine(form: &[Rational], v: &[Rational]) -> Rational {
    &form[0] + dot(&form[1..], v)
}

impl Polytope {
    /// Convex hull of an exact vertex set; every input point must be a vertex.
    pub fn from_vertices(vertices: Vec<QVector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Degenerate("empty vertex list".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::Degenerate("zero-dimensional points".into()));
        }
        if let Some(bad) = vertices.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(Error::Degenerate(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        let all: Vec<&QVector> = vertices.iter().collect();
        if affine_dimension(&all) != n as isize {
            return Err(Error::Degenerate(format!(
                "points do not affinely span {n}-space"
            )));
        }
        let facets = hull_facets(&vertices);
        let incidence = facets
            .iter()
            .map(|f| vertices.iter().map(|v| eval_affine(f, v).is_zero()).collect())
            .collect();
        let p = Polytope {
            dim: n,
            vertices,
            facets,
            incidence,
        };
        p.check_extremal()?;
        Ok(p)
    }

    /// Polytope `{x : c0 + c·x >= 0}` from inequality forms `(c0, c)`.
    /// Redundant inequalities are dropped.
    pub fn from_inequalities(forms: &[QVector]) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Degenerate("no inequalities".into()));
        };
        let n = first.len() - 1;
        let mut vertices: Vec<QVector> = Vec::new();
        for subset in combinations(forms.len(), n) {
            let rows: Vec<QVector> = subset.iter().map(|&i| forms[i].clone()).collect();
            let m = QMatrix::from_rows(n + 1, rows)?;
            let (rank, kernel) = rank_and_kernel(&m);
            if rank != n || kernel[0][0].is_zero() {
                continue;
            }
            let x: QVector = kernel[0][1..].iter().map(|c| c / &kernel[0][0]).collect();
            if forms.iter().all(|f| !eval_affine(f, &x).is_negative()) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
        Polytope::from_vertices(vertices)
    }

    /// Builds a polytope from explicit facet data, validated against the
    /// hull of the vertices.
    pub fn from_parts(
        vertices: Vec<QVector>,
        facets: Vec<QVector>,
        incidence: Option<Vec<Vec<bool>>>,
    ) -> Result<Self> {
        let hull = Polytope::from_vertices(vertices)?;
        let n = hull.dim;
        let mut normalized = Vec::with_capacity(facets.len());
        for f in &facets {
            if f.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: f.len(),
                });
            }
            let mut g = primitive_keep_sign(f);
            if hull.vertices.iter().any(|v| eval_affine(&g, v).is_negative()) {
                if hull.vertices.iter().any(|v| eval_affine(&g, v).is_positive()) {
                    return Err(Error::Invalid("facet form does not support the polytope".into()));
                }
                g = g.into_iter().map(|x| -x).collect();
            }
            normalized.push(g);
        }
        if normalized.len() != hull.facets.len()
            || !normalized.iter().all(|f| hull.facets.contains(f))
        {
            return Err(Error::Invalid(
                "facet list does not match the facets of the vertex hull".into(),
            ));
        }
        let computed: Vec<Vec<bool>> = normalized
            .iter()
            .map(|f| hull.vertices.iter().map(|v| eval_affine(f, v).is_zero()).collect())
            .collect();
        if let Some(given) = incidence {
            if given != computed {
                return Err(Error::Invalid("incidence does not match facet forms".into()));
            }
        }
        Ok(Polytope {
            dim: n,
            vertices: hull.vertices,
            facets: normalized,
            incidence: computed,
        })
    }

    fn check_extremal(&self) -> Result<()> {
        for (i, _) in self.vertices.iter().enumerate() {
            let rows: Vec<QVector> = self.vertex_facets(i).iter().map(|&f| self.facets[f].clone()).collect();
            let m = QMatrix::from_rows(self.dim + 1, rows)?;
            if m.rank() != self.dim {
                return Err(Error::RedundantPoint(i));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[QVector] {
        &self.facets
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Vertex indices on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.incidence[f][v]).collect()
    }

    /// Facet indices through vertex `v`.
    pub fn vertex_facets(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.incidence[f][v]).collect()
    }

    /// Value of facet form `f` at a homogeneous point.
    pub fn facet_value(&self, f: usize, point: &[Rational]) -> Rational {
        dot(&self.facets[f], point)
    }

    pub fn centroid(&self) -> QVector {
        let k = Rational::from_integer(self.vertices.len().into());
        (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| &v[i]).sum::<Rational>() / &k)
            .collect()
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        self.facets.iter().all(|f| f[0].is_positive())
    }

    /// Every vertex lies on exactly `dim` facets.
    pub fn is_simple_polytope(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.vertex_facets(v).len() == self.dim)
    }

    /// Every facet has exactly `dim` vertices.
    pub fn is_simplicial(&self) -> bool {
        (0..self.facets.len()).all(|f| self.facet_vertices(f).len() == self.dim)
    }

    /// No point of projective space lies on more than `dim` facet hyperplanes.
    pub fn is_simple_arrangement(&self) -> bool {
        let n = self.dim;
        combinations(self.facets.len(), n + 1).all(|subset| {
            let rows = subset.iter().map(|&i| self.facets[i].clone()).collect();
            QMatrix::from_rows(n + 1, rows).unwrap().rank() == n + 1
        })
    }

    /// Translates by `shift` (adds it to every vertex).
    pub fn translated(&self, shift: &[Rational]) -> Polytope {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        // ℓ(x) = c0 + a·x, x = y - shift  =>  (c0 - a·shift) + a·y
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g[0] = &f[0] - dot(&f[1..], shift);
                primitive_keep_sign(&g)
            })
            .collect();
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            incidence: self.incidence.clone(),
        }
    }

    /// Moves the vertex centroid to the origin. Returns the recentered
    /// polytope and the translation that was applied.
    pub fn recenter(&self) -> (Polytope, QVector) {
        let shift: QVector = self.centroid().into_iter().map(|x| -x).collect();
        (self.translated(&shift), shift)
    }

    /// Polar dual `{y : 1 - x·y >= 0 for all x in P}`; requires the origin in
    /// the interior. Dual vertex `i` is the polar of facet `i`, dual facet `j`
    /// the polar of vertex `j`.
    pub fn dual(&self) -> Result<Polytope> {
        if !self.contains_origin_in_interior() {
            return Err(Error::OriginNotInterior);
        }
        let vertices: Vec<QVector> = self
            .facets
            .iter()
            .map(|f| f[1..].iter().map(|a| -a / &f[0]).collect())
            .collect();
        let facets: Vec<QVector> = self
            .vertices
            .iter()
            .map(|u| {
                let mut g = vec![Rational::one()];
                g.extend(u.iter().map(|x| -x));
                primitive_keep_sign(&g)
            })
            .collect();
        let incidence: Vec<Vec<bool>> = (0..self.vertices.len())
            .map(|u| (0..self.facets.len()).map(|f| self.incidence[f][u]).collect())
            .collect();
        let dual = Polytope {
            dim: self.dim,
            vertices,
            facets,
            incidence,
        };
        dual.validate()?;
        Ok(dual)
    }

    /// Checks the structural invariants: incidence matches the forms, all
    /// forms support the polytope, facets span hyperplanes, vertices are
    /// extremal and distinct, facets pairwise non-proportional.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for (f, form) in self.facets.iter().enumerate() {
            if form.len() != n + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: form.len(),
                });
            }
            for (v, x) in self.vertices.iter().enumerate() {
                let val = eval_affine(form, x);
                if val.is_negative() {
                    return Err(Error::Invalid(format!("vertex {v} violates facet {f}")));
                }
                if val.is_zero() != self.incidence[f][v] {
                    return Err(Error::Invalid(format!("incidence mismatch at facet {f}, vertex {v}")));
                }
            }
            let on: Vec<&QVector> = self.facet_vertices(f).iter().map(|&v| &self.vertices[v]).collect();
            if affine_dimension(&on) != n as isize - 1 {
                return Err(Error::Invalid(format!("facet {f} vertices do not span its hyperplane")));
            }
        }
        for i in 0..self.facets.len() {
            for j in i + 1..self.facets.len() {
                if proportional(&self.facets[i], &self.facets[j]) {
                    return Err(Error::Invalid(format!("facets {i} and {j} coincide")));
                }
            }
        }
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if self.vertices[i] == self.vertices[j] {
                    return Err(Error::Degenerate(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        self.check_extremal()
    }

    /// Sizes `|V(F)|` of all facets, in facet order.
    pub fn facet_sizes(&self) -> Vec<usize> {
        (0..self.facets.len()).map(|f| self.facet_vertices(f).len()).collect()
    }

    /// Facets `f`, `g` share a ridge (their common vertices span dimension
    /// `dim - 2`).
    pub fn facets_adjacent(&self, f: usize, g: usize) -> bool {
        let common: Vec<&QVector> = (0..self.vertices.len())
            .filter(|&v| self.incidence[f][v] && self.incidence[g][v])
            .map(|v| &self.vertices[v])
            .collect();
        affine_dimension(&common) == self.dim as isize - 2
    }

    pub fn volume(&self) -> Rational {
        self.triangulate().iter().map(|s| s.volume.clone()).sum()
    }
}

/// Facet forms of the convex hull of `vertices`, found by testing every
/// affinely independent `n`-subset.
pub fn hull_facets(vertices: &[QVector]) -> Vec<QVector> {
    let n = vertices[0].len();
    let mut seen = BTreeSet::new();
    let mut facets = Vec::new();
    for subset in combinations(vertices.len(), n) {
        let rows: Vec<QVector> = subset.iter().map(|&i| homogenize_point(&vertices[i])).collect();
        let m = QMatrix::from_rows(n + 1, rows).unwrap();
        let (rank, kernel) = rank_and_kernel(&m);
        if rank != n {
            continue;
        }
        let mut form = kernel.into_iter().next().unwrap();
        let values: Vec<Rational> = vertices.iter().map(|v| eval_affine(&form, v)).collect();
        let has_pos = values.iter().any(Signed::is_positive);
        let has_neg = values.iter().any(Signed::is_negative);
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            form = form.into_iter().map(|x| -x).collect();
        }
        let form = primitive_keep_sign(&form);
        let key: Vec<String> = form.iter().map(|x| x.to_string()).collect();
        if seen.insert(key) {
            facets.push(form);
        }
    }
    facets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ivec, qvec, rat};

    pub(crate) fn unit_square() -> Polytope {
        Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1])]).unwrap()
    }

    fn cube(lo: i64, hi: i64) -> Polytope {
        let mut vs = Vec::new();
        for x in [lo, hi] {
            for y in [lo, hi] {
                for z in [lo, hi] {
                    vs.push(ivec(&[x, y, z]));
                }
            }
        }
        Polytope::from_vertices(vs).unwrap()
    }

    fn octahedron() -> Polytope {
        let mut vs = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = ivec(&[0, 0, 0]);
                v[i] = int(s);
                vs.push(v);
            }
        }
        Polytope::from_vertices(vs).unwrap()
    }

    #[test]
    fn square_facets() {
        let sq = unit_square();
        let mut facets = sq.facets().to_vec();
        facets.sort_by_key(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        let mut expected = vec![ivec(&[0, 1, 0]), ivec(&[0, 0, 1]), ivec(&[1, -1, 0]), ivec(&[1, 0, -1])];
        expected.sort_by_key(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        assert_eq!(facets, expected);
    }

    #[test]
    fn simplex_in_three_space() {
        let p = Polytope::from_vertices(vec![ivec(&[0, 0, 0]), ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]).unwrap();
        assert_eq!(p.facet_count(), 4);
        assert!(p.is_simple_polytope());
        assert!(p.is_simple_arrangement());
        assert_eq!(p.volume(), rat(1, 6));
    }

    #[test]
    fn rejects_redundant_and_degenerate() {
        let err = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[2, 0]), ivec(&[0, 2]), ivec(&[1, 0])]);
        assert!(matches!(err, Err(Error::RedundantPoint(3))));
        let interior = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[3, 0]), ivec(&[0, 3]), ivec(&[1, 1])]);
        assert!(matches!(interior, Err(Error::RedundantPoint(3))));
        let flat = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[1, 1]), ivec(&[2, 2])]);
        assert!(matches!(flat, Err(Error::Degenerate(_))));
    }

    #[test]
    fn simplicity() {
        let c = cube(0, 1);
        assert!(c.is_simple_polytope());
        assert!(!c.is_simple_arrangement());
        let o = octahedron();
        assert!(!o.is_simple_polytope());
        assert!(o.is_simplicial());
        let tri = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[3, 1]), ivec(&[1, 2])]).unwrap();
        assert!(tri.is_simple_arrangement());
    }

    #[test]
    fn centered_square_dual() {
        let sq = Polytope::from_vertices(vec![
            qvec(&[(-1, 2), (-1, 2)]),
            qvec(&[(1, 2), (-1, 2)]),
            qvec(&[(1, 2), (1, 2)]),
            qvec(&[(-1, 2), (1, 2)]),
        ])
        .unwrap();
        let d = sq.dual().unwrap();
        let mut vs = d.vertices().to_vec();
        vs.sort();
        let mut expected = vec![ivec(&[2, 0]), ivec(&[-2, 0]), ivec(&[0, 2]), ivec(&[0, -2])];
        expected.sort();
        assert_eq!(vs, expected);
        let dd = d.dual().unwrap();
        let mut back = dd.vertices().to_vec();
        back.sort();
        let mut orig = sq.vertices().to_vec();
        orig.sort();
        assert_eq!(back, orig);
    }

    #[test]
    fn cube_dual_is_octahedral() {
        let (c, _) = cube(0, 1).recenter();
        let d = c.dual().unwrap();
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.facet_count(), 8);
        assert!(d.is_simplicial());
        assert!(unit_square().dual().is_err());
    }

    #[test]
    fn explicit_parts_are_validated() {
        let sq = unit_square();
        let ok = Polytope::from_parts(sq.vertices().to_vec(), sq.facets().to_vec(), Some(sq.incidence().to_vec()));
        assert!(ok.is_ok());
        let mut short = sq.facets().to_vec();
        short.pop();
        assert!(Polytope::from_parts(sq.vertices().to_vec(), short, None).is_err());
    }

    #[test]
    fn inequalities_give_vertices() {
        let forms = vec![ivec(&[0, 1, 0]), ivec(&[0, 0, 1]), ivec(&[1, -1, -1]), ivec(&[5, 1, 1])];
        let p = Polytope::from_inequalities(&forms).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.facet_count(), 3);
    }

    #[test]
    fn simple_three_polytope_counts() {
        let c = cube(0, 1);
        let d = c.facet_count() as i64;
        assert_eq!(c.vertex_count() as i64, 2 * (d - 2));
        let edges: usize = c.facet_sizes().iter().sum::<usize>() / 2;
        assert_eq!(edges as i64, 3 * (d - 2));
    }
}
