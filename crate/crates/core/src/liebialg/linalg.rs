//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::Q;

/// A dense rational matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row-echelon form and its pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    m.swap(p * cols + k, r * cols + k);
                }
            }
            let inv = Q::one() / &m[r * cols + c];
            for k in c..cols {
                m[r * cols + k] *= &inv;
            }
            for i in 0..rows {
                if i == r || m[i * cols + c].is_zero() {
                    continue;
                }
                let factor = m[i * cols + c].clone();
                for k in c..cols {
                    let delta = &factor * &m[r * cols + k];
                    m[i * cols + k] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r * cols);
        (
            RationalMatrix {
                rows: r,
                cols,
                data: m,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, each with a 1 in
    /// its free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(row, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Canonical form of the span of `vectors`: the RREF of the matrix whose
/// rows are the vectors.
pub fn span_rref(cols: usize, vectors: &[Vec<Q>]) -> RationalMatrix {
    RationalMatrix::from_rows(cols, vectors.to_vec()).rref().0
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(cols: usize, basis: &[Vec<Q>], v: &[Q]) -> bool {
    let before = RationalMatrix::from_rows(cols, basis.to_vec()).rank();
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    RationalMatrix::from_rows(cols, extended).rank() == before
}

/// Polynomial with rational coefficients, lowest degree first.
pub(crate) type Poly = Vec<Q>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let b = trim(b.clone());
    let db = b.len() - 1;
    let lead = b[db].clone();
    loop {
        r = trim(r);
        if r.len() < b.len() {
            return r;
        }
        let shift = r.len() - b.len();
        let factor = r.last().unwrap().clone() / &lead;
        for (i, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            r[shift + i] -= delta;
        }
    }
}

/// Monic gcd; the zero polynomial is returned as an empty vector.
pub(crate) fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let m = RationalMatrix::from_rows(3, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Q = m.row(0).iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn full_rank_square_matrix_has_trivial_nullspace() {
        let m = RationalMatrix::from_rows(2, vec![vec![q(1), q(1)], vec![q(1), q(-1)]]);
        assert!(m.nullspace().is_empty());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        assert_eq!(RationalMatrix::zeros(4, 3).nullspace().len(), 3);
    }

    #[test]
    fn gcd_of_quadratics_sharing_a_root() {
        // (s − 1)(s + 2) and (s − 1)(s − 5)
        let a = vec![q(-2), q(1), q(1)];
        let b = vec![q(5), q(-6), q(1)];
        assert_eq!(poly_gcd(&a, &b), vec![q(-1), q(1)]);
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert!(in_span(3, &basis, &[q(2), q(3), q(5)]));
        assert!(!in_span(3, &basis, &[q(0), q(0), q(1)]));
    }
}
