//! Square matrices and row vectors over [`Scalar`].
//!
//! Vectors are rows and matrices act on the right: `x ↦ x·M`.

use std::fmt;

use super::{AlgebraError, Scalar};

pub type Vector = Vec<Scalar>;

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn int_vec(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

/// The integer coordinates of `v`, if all coordinates are integers.
pub fn as_int_vec(v: &[Scalar]) -> Option<Vec<i64>> {
    v.iter().map(Scalar::as_i64).collect()
}

/// Compares vectors lexicographically by their real parts; complex entries compare as unordered.
pub fn lex_cmp(a: &[Scalar], b: &[Scalar]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    for (x, y) in a.iter().zip(b) {
        match (x - y).signum() {
            Ok(1) => return Ordering::Greater,
            Ok(-1) => return Ordering::Less,
            _ => {}
        }
    }
    Ordering::Equal
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Reduced row echelon form of `rows`, returning the nonzero rows and their pivot columns.
pub fn row_reduce(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut a: Vec<Vector> = rows.to_vec();
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        a[r] = vec_scale(&inv, &a[r]);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let sub = vec_scale(&f, &a[r]);
                a[i] = vec_sub(&a[i], &sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Dimension of the span of `rows`.
pub fn rank(rows: &[Vector]) -> usize {
    row_reduce(rows).1.len()
}

/// A basis of the orthogonal complement of the span of `rows` in dimension `n`.
pub fn orthogonal_complement(rows: &[Vector], n: usize) -> Vec<Vector> {
    let (red, pivots) = row_reduce(rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Scalar::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Scalar::one();
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        Matrix::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                data.push(acc);
            }
        }
        Matrix { n, data }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let data = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Matrix { n, data }
    }

    /// `x·M` for a row vector `x`.
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        (0..self.n)
            .map(|j| (0..self.n).fold(Scalar::zero(), |acc, i| acc + &x[i] * self.get(i, j)))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                let (top, bottom) = a.split_at_mut(r);
                for (x, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = &*x - &(p * &f);
                }
            }
        }
        det
    }

    pub fn is_orthogonal(&self) -> bool {
        self.mul(&self.transpose()).is_identity()
    }

    /// The scalar entries as rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n).map(|i| fmt_vec(self.row(i))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
