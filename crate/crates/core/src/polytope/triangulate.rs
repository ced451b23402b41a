use num_traits::Signed;

use super::{affine_dimension, Polytope};
use crate::exactalg::{determinant, factorial, QVector, Rational};

/// A full-dimensional simplex of a triangulation, by vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub volume: Rational,
}

/// Euclidean volume of the simplex spanned by `n + 1` points in `n`-space.
pub fn simplex_volume(points: &[&QVector]) -> Rational {
    let n = points.len() - 1;
    let rows: Vec<QVector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    determinant(&rows).abs() / Rational::from_integer(factorial(n as u32))
}

impl Polytope {
    /// Pulling triangulation with vertices pulled in index order.
    pub fn triangulate(&self) -> Vec<Simplex> {
        let order: Vec<usize> = (0..self.vertex_count()).collect();
        self.triangulate_with_order(&order)
    }

    /// Pulling triangulation; `order` lists vertex indices, earliest pulled
    /// first. Vertices missing from `order` are pulled last, by index.
    pub fn triangulate_with_order(&self, order: &[usize]) -> Vec<Simplex> {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.triangulate_face(&all, self.dim, order)
            .into_iter()
            .map(|vs| {
                let pts: Vec<&QVector> = vs.iter().map(|&v| &self.vertices[v]).collect();
                let volume = simplex_volume(&pts);
                Simplex { vertices: vs, volume }
            })
            .collect()
    }

    /// Pulling triangulation of a face of dimension `face_dim` given by its
    /// vertex set. Returns simplices as vertex index lists, apex first.
    pub fn triangulate_face(&self, face: &[usize], face_dim: usize, order: &[usize]) -> Vec<Vec<usize>> {
        let rank = |v: usize| order.iter().position(|&u| u == v).unwrap_or(order.len() + v);
        let mut out = Vec::new();
        self.pull(face, face_dim, &rank, &mut out);
        out
    }

    fn pull(&self, face: &[usize], k: usize, rank: &dyn Fn(usize) -> usize, out: &mut Vec<Vec<usize>>) {
        if face.len() == k + 1 {
            out.push(face.to_vec());
            return;
        }
        let apex = *face.iter().min_by_key(|&&v| rank(v)).unwrap();
        for sub in self.subfaces(face, k) {
            if sub.contains(&apex) {
                continue;
            }
            let mut inner = Vec::new();
            self.pull(&sub, k - 1, rank, &mut inner);
            for s in inner {
                let mut simplex = vec![apex];
                simplex.extend(s);
                out.push(simplex);
            }
        }
    }

    /// Facets of a `k`-face: its intersections with facets of the polytope
    /// that have dimension `k - 1`.
    pub(crate) fn subfaces(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut subs: Vec<Vec<usize>> = Vec::new();
        for f in 0..self.facet_count() {
            let s: Vec<usize> = face.iter().copied().filter(|&v| self.incidence[f][v]).collect();
            if s.len() == face.len() || s.len() < k || subs.contains(&s) {
                continue;
            }
            let pts: Vec<&QVector> = s.iter().map(|&v| &self.vertices[v]).collect();
            if affine_dimension(&pts) == k as isize - 1 {
                subs.push(s);
            }
        }
        subs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ivec, rat};

    fn hexagon() -> Polytope {
        Polytope::from_vertices(vec![
            ivec(&[2, 0]),
            ivec(&[1, 2]),
            ivec(&[-1, 2]),
            ivec(&[-2, 0]),
            ivec(&[-1, -2]),
            ivec(&[1, -2]),
        ])
        .unwrap()
    }

    #[test]
    fn square_split_into_two() {
        let sq = Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1])]).unwrap();
        let t = sq.triangulate();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.volume == rat(1, 2)));
        assert!(t.iter().all(|s| s.vertices[0] == 0));
    }

    #[test]
    fn volume_independent_of_order() {
        let h = hexagon();
        // shoelace area of the hexagon is 12
        assert_eq!(h.volume(), int(12));
        for start in 0..6 {
            let order: Vec<usize> = (0..6).map(|i| (i + start) % 6).collect();
            let t = h.triangulate_with_order(&order);
            assert_eq!(t.len(), 4);
            assert_eq!(t.iter().map(|s| s.volume.clone()).sum::<Rational>(), int(12));
        }
    }

    #[test]
    fn cube_volume() {
        let mut vs = Vec::new();
        for x in [0, 2] {
            for y in [0, 3] {
                for z in [0, 5] {
                    vs.push(ivec(&[x, y, z]));
                }
            }
        }
        let c = Polytope::from_vertices(vs).unwrap();
        let t = c.triangulate();
        assert_eq!(t.iter().map(|s| s.volume.clone()).sum::<Rational>(), int(30));
        assert_eq!(t.len(), 6);
    }
}
