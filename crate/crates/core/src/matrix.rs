//! Small dense matrices over exact scalars.
//!
//! Everything in this crate that looks like linear algebra — homomorphism
//! matrices, subgroup generator lattices, kernel and preimage computations —
//! runs through this module.  The matrix type is generic over any exact
//! signed scalar (anything ordered implementing [`num_traits::Signed`]);
//! the two instantiations actually used are arbitrary-precision integers
//! ([`IntMatrix`]) and rationals in lowest terms ([`RatMatrix`]).
//!
//! Matrices at this scale are tiny (layer groups rarely exceed rank 3), so
//! the algorithms favour clarity and exactness over asymptotics: Hermite
//! reduction is plain integer Gaussian elimination with Euclidean pivoting.

use crate::{Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Exact scalar usable as a matrix entry.
pub trait Scalar: Clone + Ord + Signed + fmt::Debug + fmt::Display {}
impl<T> Scalar for T where T: Clone + Ord + Signed + fmt::Debug + fmt::Display {}

/// Dense row-major matrix.  Either dimension may be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix over arbitrary-precision integers.
pub type IntMatrix = Matrix<Int>;
/// Matrix over arbitrary-precision rationals.
pub type RatMatrix = Matrix<Rat>;

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    ///
    /// A matrix with zero rows has an ambiguous column count, so `cols` is
    /// taken explicitly and checked against every row.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::domain(format!(
                "expected {rows} rows, got {}",
                entries.len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            if row.len() != cols {
                return Err(Error::domain(format!(
                    "expected rows of length {cols}, got {}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Build from explicit columns; all columns must have equal length.
    pub fn from_cols(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Result<Self> {
        Ok(Self::from_rows(cols, rows, entries)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::domain(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect())
    }

    /// Apply `f` to every entry.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::domain(format!(
                "cannot stack {} rows next to {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.extend_from_slice(rhs.row(i));
            entries.push(row);
        }
        Self::from_rows(self.rows, self.cols + rhs.cols, entries)
    }

    /// Column index of the first non-zero entry of row `i`, if any.
    pub fn leading_col(&self, i: usize) -> Option<usize> {
        (0..self.cols).find(|&j| !self[(i, j)].is_zero())
    }

    /// Row index of the first non-zero entry of column `j`, if any.
    pub fn leading_row(&self, j: usize) -> Option<usize> {
        (0..self.rows).find(|&i| !self[(i, j)].is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let c = self.cols;
            self.data.swap(i * c + a, i * c + b);
        }
    }

    /// `row[a] -= q * row[b]`
    fn row_sub(&mut self, a: usize, b: usize, q: &T) {
        for j in 0..self.cols {
            let delta = q.clone() * self[(b, j)].clone();
            self[(a, j)] = self[(a, j)].clone() - delta;
        }
    }

    /// `col[a] -= q * col[b]`
    fn col_sub(&mut self, a: usize, b: usize, q: &T) {
        for i in 0..self.rows {
            let delta = q.clone() * self[(i, b)].clone();
            self[(i, a)] = self[(i, a)].clone() - delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    /// Renders in the row-list syntax the parsers accept: `[[1,2],[3,4]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar + Integer> Matrix<T> {
    /// Canonical row-style Hermite normal form of the row lattice.
    ///
    /// The result spans the same set of integer row combinations and is the
    /// unique representative with: zero rows removed, pivots in strictly
    /// increasing column order, every pivot positive, and every entry above a
    /// pivot reduced into `[0, pivot)`.  Two generator sets span the same
    /// lattice exactly when their Hermite forms are identical.
    pub fn hermite_rows(&self) -> Self {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // Euclidean elimination below the prospective pivot.
            loop {
                let best = (pivot_row..m.rows)
                    .filter(|&r| !m[(r, col)].is_zero())
                    .min_by_key(|&r| m[(r, col)].abs());
                let Some(best) = best else { break };
                m.swap_rows(best, pivot_row);
                let mut live_below = false;
                for r in pivot_row + 1..m.rows {
                    if !m[(r, col)].is_zero() {
                        // Truncated quotient: the remainder is strictly
                        // smaller in absolute value than the pivot, so the
                        // loop terminates like the Euclidean algorithm.
                        let q = m[(r, col)].clone() / m[(pivot_row, col)].clone();
                        m.row_sub(r, pivot_row, &q);
                        if !m[(r, col)].is_zero() {
                            live_below = true;
                        }
                    }
                }
                if !live_below {
                    break;
                }
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            if m[(pivot_row, col)].is_negative() {
                m.negate_row(pivot_row);
            }
            // Reduce entries above the pivot into [0, pivot).
            for r in 0..pivot_row {
                if !m[(r, col)].is_zero() {
                    let q = m[(r, col)].div_floor(&m[(pivot_row, col)]);
                    m.row_sub(r, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
        let entries = (0..pivot_row).map(|i| m.row(i).to_vec()).collect();
        Matrix::from_rows(pivot_row, m.cols, entries).expect("rows verified rectangular")
    }

    /// Does `v` lie in the integer span of the rows?
    ///
    /// `self` must be in Hermite form (see [`Matrix::hermite_rows`]); the
    /// echelon shape makes greedy divisibility reduction exact.
    pub fn hermite_row_span_contains(&self, v: &[T]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::domain(format!(
                "vector length {} does not match lattice dimension {}",
                v.len(),
                self.cols
            )));
        }
        let mut v = v.to_vec();
        for i in 0..self.rows {
            let Some(c) = self.leading_col(i) else { continue };
            if !v[c].is_zero() {
                let (q, rem) = v[c].div_rem(&self[(i, c)]);
                if !rem.is_zero() {
                    return Ok(false);
                }
                for j in 0..self.cols {
                    let delta = q.clone() * self[(i, j)].clone();
                    v[j] = v[j].clone() - delta;
                }
            }
        }
        Ok(v.iter().all(|x| x.is_zero()))
    }

    /// Basis of the integer kernel `{ x : self * x = 0 }`, as matrix columns.
    ///
    /// Computed by unimodular column reduction mirrored onto an identity
    /// matrix; the columns of the identity image that correspond to zeroed
    /// columns of the work matrix span the kernel.
    pub fn kernel_columns(&self) -> Self {
        let mut a = self.clone();
        let mut u = Self::identity(self.cols);
        let mut pivot_col = 0;
        for row in 0..a.rows {
            if pivot_col == a.cols {
                break;
            }
            loop {
                let best = (pivot_col..a.cols)
                    .filter(|&c| !a[(row, c)].is_zero())
                    .min_by_key(|&c| a[(row, c)].abs());
                let Some(best) = best else { break };
                a.swap_cols(best, pivot_col);
                u.swap_cols(best, pivot_col);
                let mut live_right = false;
                for c in pivot_col + 1..a.cols {
                    if !a[(row, c)].is_zero() {
                        let q = a[(row, c)].clone() / a[(row, pivot_col)].clone();
                        a.col_sub(c, pivot_col, &q);
                        u.col_sub(c, pivot_col, &q);
                        if !a[(row, c)].is_zero() {
                            live_right = true;
                        }
                    }
                }
                if !live_right {
                    break;
                }
            }
            if !a[(row, pivot_col)].is_zero() {
                pivot_col += 1;
            }
        }
        let kernel_cols: Vec<Vec<T>> = (pivot_col..a.cols)
            .map(|c| u.col(c))
            .collect();
        Matrix::from_cols(self.cols, kernel_cols.len(), kernel_cols)
            .expect("kernel columns verified rectangular")
    }

    /// Rank of the matrix (over the rationals; column reduction preserves it).
    pub fn rank(&self) -> usize {
        self.cols - self.kernel_columns().cols()
    }
}

impl IntMatrix {
    /// Exact embedding into rational matrices.
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| Rat::from_integer(x.clone()))
    }
}

impl RatMatrix {
    /// Inverse of [`IntMatrix::to_rational`], when every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.data.iter().all(|x| x.is_integer()) {
            return None;
        }
        Some(self.map(|x| x.to_integer()))
    }

    /// Clear denominators row by row.
    ///
    /// Each row is multiplied by a positive integer (the lcm of its entry
    /// denominators), which preserves the kernel and the solution set of
    /// `Ax = 0`-style conditions.
    pub fn scale_rows_to_integer(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            let mut scale = Int::one();
            for j in 0..self.cols {
                scale = scale.lcm(self[(i, j)].denom());
            }
            for j in 0..self.cols {
                let scaled = self[(i, j)].clone() * Rat::from_integer(scale.clone());
                debug_assert!(scaled.is_integer());
                out[(i, j)] = scaled.to_integer();
            }
        }
        out
    }
}
