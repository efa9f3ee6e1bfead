use crate::error::{Error, Result};
use crate::numerics::scalar::Scalar;
use crate::precision::PrecisionCtx;

/// Dense square matrix in row-major order. All entries share the working
/// precision of the context that built them.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(dim: usize, prec: u32) -> Self {
        Matrix {
            dim,
            data: vec![T::zero(prec); dim * dim],
        }
    }

    pub fn identity(dim: usize, prec: u32) -> Self {
        let mut m = Matrix::zero(dim, prec);
        for i in 0..dim {
            *m.at_mut(i, i) = T::one(prec);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix rows must all have length = dim"));
        }
        Ok(Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from a function of (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn set_row(&mut self, i: usize, row: Vec<T>) {
        assert_eq!(row.len(), self.dim);
        self.data[i * self.dim..(i + 1) * self.dim]
            .iter_mut()
            .zip(row)
            .for_each(|(slot, v)| *slot = v);
    }

    /// Exact entrywise symmetry (the assembly code mirrors entries, so
    /// equality is bitwise, not approximate).
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let prec = self.prec();
        let mut out = Matrix::zero(self.dim, prec);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = T::zero(prec);
                for k in 0..self.dim {
                    acc = acc + self.at(i, k).clone() * rhs.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero(self.prec());
        for i in 0..self.dim {
            acc = acc + self.at(i, i);
        }
        acc
    }

    fn prec(&self) -> u32 {
        self.data.first().map(|v| v.prec_of()).unwrap_or(64)
    }
}

/// Gauss-Jordan determinant and inverse in one sweep, with partial
/// (max-modulus) pivoting. Returns `(0, None)` when a pivot column vanishes
/// exactly at working precision.
pub fn det_and_inverse<T: Scalar>(
    m: &Matrix<T>,
    ctx: &PrecisionCtx,
) -> Result<(T, Option<Matrix<T>>)> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::invalid("0-dimensional matrix"));
    }
    let prec = ctx.prec_bits();
    let mut a = m.clone();
    let mut inv: Matrix<T> = Matrix::identity(n, prec);
    let mut detval = T::one(prec);

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = a.at(k, k).magnitude();
        for i in k + 1..n {
            let mag = a.at(i, k).magnitude();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag.is_zero() {
            return Ok((T::zero(prec), None));
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = a.at(k, j).clone();
                *a.at_mut(k, j) = a.at(pivot_row, j).clone();
                *a.at_mut(pivot_row, j) = tmp;
                let tmp = inv.at(k, j).clone();
                *inv.at_mut(k, j) = inv.at(pivot_row, j).clone();
                *inv.at_mut(pivot_row, j) = tmp;
            }
            detval = -detval;
        }
        let pivot = a.at(k, k).clone();
        detval = detval * &pivot;
        for j in 0..n {
            *a.at_mut(k, j) = a.at(k, j).clone() / &pivot;
            *inv.at_mut(k, j) = inv.at(k, j).clone() / &pivot;
        }
        for i in 0..n {
            if i == k || a.at(i, k).is_zero_val() {
                continue;
            }
            let factor = a.at(i, k).clone();
            for j in 0..n {
                let da = factor.clone() * a.at(k, j);
                *a.at_mut(i, j) = a.at(i, j).clone() - &da;
                let di = factor.clone() * inv.at(k, j);
                *inv.at_mut(i, j) = inv.at(i, j).clone() - &di;
            }
        }
    }
    Ok((detval, Some(inv)))
}

/// Determinant by Gaussian elimination with partial (max-modulus) pivoting
/// at working precision.
///
/// A pivot column with no nonzero entry short-circuits to an exact zero.
/// Dimension 0 is rejected.
pub fn det<T: Scalar>(matrix: &Matrix<T>, ctx: &PrecisionCtx) -> Result<T> {
    if matrix.dim() == 0 {
        return Err(Error::invalid("determinant of a 0-dimensional matrix"));
    }
    let n = matrix.dim();
    let prec = ctx.prec_bits();
    let mut a = matrix.clone();
    let mut sign_flip = false;
    let mut diag_product = T::one(prec);

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = a.at(k, k).magnitude();
        for i in k + 1..n {
            let mag = a.at(i, k).magnitude();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag.is_zero() {
            return Ok(T::zero(prec));
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = a.at(k, j).clone();
                *a.at_mut(k, j) = a.at(pivot_row, j).clone();
                *a.at_mut(pivot_row, j) = tmp;
            }
            sign_flip = !sign_flip;
        }
        let pivot = a.at(k, k).clone();
        for i in k + 1..n {
            if a.at(i, k).is_zero_val() {
                continue;
            }
            let factor = a.at(i, k).clone() / &pivot;
            for j in k + 1..n {
                let delta = factor.clone() * a.at(k, j);
                *a.at_mut(i, j) = a.at(i, j).clone() - &delta;
            }
        }
        diag_product = diag_product * &pivot;
    }

    Ok(if sign_flip { -diag_product } else { diag_product })
}
