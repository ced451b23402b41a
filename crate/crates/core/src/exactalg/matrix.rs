use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{primitive, QVector, Rational};
use crate::error::{Error, Result};

/// Dense rational matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<QVector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: QVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Exact inverse via Gauss-Jordan; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<QVector> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut inv: Vec<QVector> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &pivot;
                inv[col][c] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let da = &f * &a[col][c];
                    a[r][c] -= da;
                    let di = &f * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        let data = inv.into_iter().flatten().collect();
        Some(QMatrix {
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }
}

/// Fraction-free row echelon form of a matrix after clearing denominators.
struct Echelon {
    /// Nonzero echelon rows, integer valued.
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each row.
    pivots: Vec<usize>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Bareiss elimination. Every intermediate entry is a minor of the integer
/// matrix, so the division by the previous pivot is exact.
fn echelon(m: &QMatrix) -> Echelon {
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| integer_row(m.row(r)))
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() {
                    v
                } else {
                    debug_assert!((&v % &prev).is_zero());
                    v / &prev
                };
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
        // rows that became zero carry no information
        let keep: Vec<Vec<BigInt>> = a
            .drain(r..)
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        a.extend(keep);
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Rank and an exact kernel basis of `m`.
///
/// Kernel vectors are primitive integer vectors whose first nonzero entry is
/// positive, one per free column in increasing column order.
pub fn rank_and_kernel(m: &QMatrix) -> (usize, Vec<QVector>) {
    let ech = echelon(m);
    let rank = ech.pivots.len();
    let cols = m.cols;
    let mut is_pivot = vec![None; cols];
    for (i, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let rows: Vec<Vec<Rational>> = ech
        .rows
        .iter()
        .map(|row| row.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let mut kernel = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for i in (0..rank).rev() {
            let pc = ech.pivots[i];
            let row = &rows[i];
            let s: Rational = (pc + 1..cols)
                .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                .map(|j| &row[j] * &x[j])
                .sum();
            x[pc] = -s / &row[pc];
        }
        kernel.push(primitive(&x));
    }
    (rank, kernel)
}

#[cfg(test)]
/// True when the entries of `v` are all integers and `v` is nonzero with a
/// positive leading entry.
pub(crate) fn is_primitive_normalized(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
        && v.iter().find(|x| !x.is_zero()).is_some_and(num_traits::Signed::is_positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ivec, rat};

    #[test]
    fn identity_has_trivial_kernel() {
        let (rank, kernel) = rank_and_kernel(&QMatrix::identity(2));
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn single_row_kernel() {
        let m = QMatrix::from_rows(2, vec![ivec(&[1, 1])]).unwrap();
        let (rank, kernel) = rank_and_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(kernel, vec![ivec(&[1, -1])]);
    }

    #[test]
    fn empty_matrix() {
        let m = QMatrix::zeros(0, 3);
        let (rank, kernel) = rank_and_kernel(&m);
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
    }

    #[test]
    fn kernel_with_fractions() {
        let m = QMatrix::from_rows(
            3,
            vec![
                vec![rat(1, 2), rat(1, 3), int(0)],
                vec![int(0), rat(2, 5), rat(-1, 7)],
            ],
        )
        .unwrap();
        let (rank, kernel) = rank_and_kernel(&m);
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
        let prod = m.mul_vec(&kernel[0]).unwrap();
        assert!(prod.iter().all(Zero::is_zero));
        assert!(is_primitive_normalized(&kernel[0]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_rows(2, vec![ivec(&[2, 1]), ivec(&[5, 3])]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        let singular = QMatrix::from_rows(2, vec![ivec(&[1, 2]), ivec(&[2, 4])]).unwrap();
        assert!(singular.inverse().is_none());
    }
}
