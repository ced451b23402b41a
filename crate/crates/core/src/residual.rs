//! Residual arrangement: intersections of facet hyperplanes that contain no
//! vertex (hence no face) of the polytope.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::exactalg::{dot, format_rational, rank_and_kernel, QMatrix, QVector};
use crate::polytope::Polytope;
use crate::sampling::Sampler;

/// Projective linear subspace cut out by facet hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjSubspace {
    /// Independent facet forms cutting out the subspace.
    pub defining_forms: Vec<QVector>,
    pub codim: usize,
    /// All facets whose hyperplane contains the subspace.
    pub generator_set: BTreeSet<usize>,
    /// Homogeneous points spanning the subspace.
    pub param_basis: Vec<QVector>,
}

impl ProjSubspace {
    /// Intersection of the given forms, with `generator_set` closed under
    /// every facet of `p` that vanishes on it.
    fn cut(p: &Polytope, subset: &[usize]) -> ProjSubspace {
        let n = p.dim();
        let rows: Vec<QVector> = subset.iter().map(|&f| p.facets()[f].clone()).collect();
        let (_, kernel) = rank_and_kernel(&QMatrix::from_rows(n + 1, rows).unwrap());
        let generator_set: BTreeSet<usize> = (0..p.facet_count())
            .filter(|&f| kernel.iter().all(|x| dot(&p.facets()[f], x).is_zero()))
            .collect();
        let mut defining_forms: Vec<QVector> = Vec::new();
        for &f in &generator_set {
            let mut trial = defining_forms.clone();
            trial.push(p.facets()[f].clone());
            if QMatrix::from_rows(n + 1, trial.clone()).unwrap().rank() == trial.len() {
                defining_forms = trial;
            }
        }
        ProjSubspace {
            codim: defining_forms.len(),
            defining_forms,
            generator_set,
            param_basis: kernel,
        }
    }

    pub fn dimension(&self) -> usize {
        self.param_basis.len() - 1
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &ProjSubspace) -> bool {
        other.generator_set.is_subset(&self.generator_set)
    }

    pub fn contains_point(&self, x: &[crate::exactalg::Rational]) -> bool {
        self.defining_forms.iter().all(|f| dot(f, x).is_zero())
    }

    /// Seeded rational points on the subspace.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<QVector> {
        let mut s = Sampler::new(seed);
        (0..count).map(|_| s.combination(&self.param_basis)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stats3d {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub line_count: usize,
}

#[derive(Clone, Debug)]
pub struct ResidualArrangement {
    pub all_members: Vec<ProjSubspace>,
    /// Indices into `all_members` of the maximal members.
    pub components: Vec<usize>,
    pub simple: bool,
    /// For non-simple arrangements: facet subsets of size `n + 1` with a
    /// common point.
    pub diagnostics: Vec<Vec<usize>>,
    pub stats3d: Option<Stats3d>,
}

pub fn residual_arrangement(p: &Polytope) -> ResidualArrangement {
    let n = p.dim();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut members = Vec::new();
    for k in 2..=n {
        for subset in combinations(p.facet_count(), k) {
            let holds_vertex = (0..p.vertex_count()).any(|v| subset.iter().all(|&f| p.incidence()[f][v]));
            if holds_vertex {
                continue;
            }
            let s = ProjSubspace::cut(p, &subset);
            if s.param_basis.is_empty() {
                continue;
            }
            // the closure may pick up facets through a vertex
            let closure_holds_vertex =
                (0..p.vertex_count()).any(|v| s.generator_set.iter().all(|&f| p.incidence()[f][v]));
            if !closure_holds_vertex && seen.insert(s.generator_set.clone()) {
                members.push(s);
            }
        }
    }
    members.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.generator_set.cmp(&b.generator_set)));
    let components = (0..members.len())
        .filter(|&i| {
            !members
                .iter()
                .enumerate()
                .any(|(j, m)| j != i && members[i].is_contained_in(m) && members[i] != *m)
        })
        .collect();
    let simple = p.is_simple_arrangement();
    let diagnostics = if simple {
        Vec::new()
    } else {
        combinations(p.facet_count(), n + 1)
            .filter(|subset| {
                let rows = subset.iter().map(|&f| p.facets()[f].clone()).collect();
                QMatrix::from_rows(n + 1, rows).unwrap().rank() <= n
            })
            .collect()
    };
    let mut r = ResidualArrangement {
        all_members: members,
        components,
        simple,
        diagnostics,
        stats3d: None,
    };
    if n == 3 {
        r.stats3d = Some(compute_stats3d(&r));
    }
    r
}

fn compute_stats3d(r: &ResidualArrangement) -> Stats3d {
    let lines: Vec<&ProjSubspace> = r.components().filter(|m| m.codim == 2).collect();
    let mut through: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, m) in r.all_members.iter().enumerate() {
        if m.codim == 3 {
            let k = lines.iter().filter(|l| m.is_contained_in(l)).count();
            through.insert(i, k);
        }
    }
    Stats3d {
        a: r.components().filter(|m| m.codim == 3).count(),
        b: through.values().filter(|&&k| k == 2).count(),
        c: through.values().filter(|&&k| k >= 3).count(),
        line_count: lines.len(),
    }
}

impl ResidualArrangement {
    pub fn components(&self) -> impl Iterator<Item = &ProjSubspace> {
        self.components.iter().map(|&i| &self.all_members[i])
    }

    pub fn component_list(&self) -> Vec<&ProjSubspace> {
        self.components().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.all_members.is_empty()
    }

    /// Component counts by codimension.
    pub fn component_codims(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in self.components() {
            *out.entry(c.codim).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components()
            .map(|c| {
                serde_json::json!({
                    "codim": c.codim,
                    "forms": c.defining_forms.iter()
                        .map(|f| f.iter().map(format_rational).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "facets": c.generator_set.iter().collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "simple": self.simple,
            "members": self.all_members.len(),
            "components": comps,
            "non_simple_subsets": self.diagnostics,
            "stats3d": self.stats3d,
        })
    }
}

/// `(a, b, c, line_count)` of a 3-polytope's residual arrangement.
pub fn stats3d(r: &ResidualArrangement, p: &Polytope) -> Result<Stats3d> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: p.dim(),
        });
    }
    Ok(r.stats3d.unwrap_or_else(|| compute_stats3d(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ivec;

    fn polygon(points: &[[i64; 2]]) -> Polytope {
        Polytope::from_vertices(points.iter().map(|p| ivec(p)).collect()).unwrap()
    }

    #[test]
    fn square_has_two_points_at_infinity() {
        let sq = polygon(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let r = residual_arrangement(&sq);
        assert_eq!(r.components.len(), 2);
        for c in r.components() {
            assert_eq!(c.param_basis.len(), 1);
            assert!(c.param_basis[0][0].is_zero());
        }
        assert!(r.stats3d.is_none());
    }

    #[test]
    fn pentagon_has_five_points() {
        let p = polygon(&[[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]);
        let r = residual_arrangement(&p);
        assert_eq!(r.components.len(), 5);
        assert!(r.simple);
        for c in r.components() {
            for x in c.sample_points(3, 11) {
                for &f in &c.generator_set {
                    assert!(p.facet_value(f, &x).is_zero());
                }
            }
        }
    }

    #[test]
    fn triangle_is_empty() {
        let t = polygon(&[[0, 0], [1, 0], [0, 1]]);
        assert!(residual_arrangement(&t).is_empty());
    }

    #[test]
    fn regular_cube_three_lines_at_infinity() {
        let mut vs = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    vs.push(ivec(&[x, y, z]));
                }
            }
        }
        let c = Polytope::from_vertices(vs).unwrap();
        let r = residual_arrangement(&c);
        assert!(!r.simple);
        assert_eq!(r.component_codims().get(&2), Some(&3));
        assert!(!r.diagnostics.is_empty());
        let st = stats3d(&r, &c).unwrap();
        assert_eq!(st.line_count, 3);
    }
}
