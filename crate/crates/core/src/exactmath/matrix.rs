use std::fmt;

use super::scalar::{ExactDiv, Field, Ring};
use super::MathError;
use crate::exactmath::LaurentPoly;

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_struct("ExactMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

impl<T: Clone> ExactMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MathError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MathError::Ragged);
        }
        let nrows = rows.len();
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Keep the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        ExactMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }
}

impl<T: Ring> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MathError> {
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(ExactMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, MathError> {
        if self.cols != v.len() {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<T, MathError> {
        self.require_square()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(cofactor(self, &idx, &idx))
    }

    fn require_square(&self) -> Result<(), MathError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MathError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

fn cofactor<T: Ring>(m: &ExactMatrix<T>, rows: &[usize], cols: &[usize]) -> T {
    match rows.len() {
        0 => T::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let rest = &rows[1..];
            let mut acc = T::zero();
            for (k, &c) in cols.iter().enumerate() {
                let entry = m.get(rows[0], c);
                if entry.is_zero() {
                    continue;
                }
                let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry.clone() * cofactor(m, rest, &minor_cols);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

impl<T: ExactDiv> ExactMatrix<T> {
    /// Fraction-free Bareiss elimination.
    pub fn det_bareiss(&self) -> Result<T, MathError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num.div_exact(&prev).ok_or(MathError::InexactDivision)?;
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    /// Cofactor expansion up to size 6, Bareiss above.
    pub fn determinant(&self) -> Result<T, MathError> {
        if self.rows <= 6 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }
}

/// Exact determinant of a Laurent-polynomial matrix.
pub fn laurent_det(m: &ExactMatrix<LaurentPoly>) -> Result<LaurentPoly, MathError> {
    m.determinant()
}

/// Reduced row echelon form. Returns the pivot columns.
pub fn rref<F: Field>(m: &mut ExactMatrix<F>) -> Result<Vec<usize>, MathError> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = m.get(row, col).inv()?;
        for c in 0..m.cols {
            let v = m.get(row, c).clone() * inv.clone();
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in 0..m.cols {
                let v = m.get(r, c).clone() - factor.clone() * m.get(row, c).clone();
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Ok(pivots)
}

pub fn rank<F: Field>(m: &ExactMatrix<F>) -> Result<usize, MathError> {
    let mut work = m.clone();
    Ok(rref(&mut work)?.len())
}

/// Solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<F> {
    Inconsistent,
    Solved {
        particular: Vec<F>,
        kernel: Vec<Vec<F>>,
    },
}

impl<F> LinearSolution<F> {
    pub fn kernel_dim(&self) -> Option<usize> {
        match self {
            LinearSolution::Inconsistent => None,
            LinearSolution::Solved { kernel, .. } => Some(kernel.len()),
        }
    }
}

pub fn solve_linear<F: Field>(a: &ExactMatrix<F>, b: &[F]) -> Result<LinearSolution<F>, MathError> {
    if b.len() != a.rows {
        return Err(MathError::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let n = a.cols;
    let mut aug = ExactMatrix::from_fn(a.rows, n + 1, |r, c| {
        if c < n {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(&mut aug)?;
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![F::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug.get(r, n).clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); n];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -aug.get(r, fc).clone();
            }
            v
        })
        .collect();
    Ok(LinearSolution::Solved { particular, kernel })
}
