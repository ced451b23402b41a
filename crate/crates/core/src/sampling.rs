//! Seeded generation of small rationals and points.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{QVector, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform on `{p/q : |p| <= 9, 1 <= q <= 9}` (with repetition).
    pub fn small_rational(&mut self) -> Rational {
        let p: i64 = self.rng.random_range(-9..=9);
        let q: i64 = self.rng.random_range(1..=9);
        Rational::new(p.into(), q.into())
    }

    /// Positive small rational.
    pub fn positive_rational(&mut self) -> Rational {
        let p: i64 = self.rng.random_range(1..=9);
        let q: i64 = self.rng.random_range(1..=9);
        Rational::new(p.into(), q.into())
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    /// Nonzero combination `Σ w_j basis_j` with small rational weights.
    pub fn combination(&mut self, basis: &[QVector]) -> QVector {
        let len = basis[0].len();
        loop {
            let mut out = vec![Rational::zero(); len];
            for b in basis {
                let w = self.small_rational();
                for (o, x) in out.iter_mut().zip(b) {
                    *o += &w * x;
                }
            }
            if out.iter().any(|x| !x.is_zero()) {
                return out;
            }
        }
    }

    /// Strict convex combination of the given points (all weights positive).
    pub fn convex_combination(&mut self, points: &[QVector]) -> QVector {
        let weights: Vec<Rational> = points.iter().map(|_| self.positive_rational()).collect();
        let total: Rational = weights.iter().sum();
        let len = points[0].len();
        let mut out = vec![Rational::zero(); len];
        for (w, p) in weights.iter().zip(points) {
            for (o, x) in out.iter_mut().zip(p) {
                *o += w * x;
            }
        }
        out.into_iter().map(|x| x / &total).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ivec;

    #[test]
    fn reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.small_rational(), b.small_rational());
        }
    }

    #[test]
    fn convex_combination_is_inside_segment() {
        let mut s = Sampler::new(1);
        let p = s.convex_combination(&[ivec(&[0]), ivec(&[1])]);
        assert!(p[0] > Rational::zero() && p[0] < Rational::from_integer(1.into()));
    }
}
