use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Exact rational scalar.
pub type Rat = BigRational;

/// `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Dense matrix over `Q`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    pub fn from_rows(rows_entries: Vec<Vec<Rat>>) -> Self {
        let rows = rows_entries.len();
        let cols = rows_entries.first().map_or(0, |r| r.len());
        for r in &rows_entries {
            assert_eq!(r.len(), cols, "ragged rows");
        }
        Mat {
            rows,
            cols,
            entries: rows_entries.into_iter().flatten().collect(),
        }
    }

    /// Column vector from coefficients.
    pub fn column(v: &[Rat]) -> Self {
        Mat::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    /// Row vector from coefficients.
    pub fn row(v: &[Rat]) -> Self {
        Mat::from_fn(1, v.len(), |_, j| v[j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = v;
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    /// Kronecker product; block `(i,j)` of the result is `self[i,j] * other`.
    pub fn tensor(&self, other: &Mat) -> Mat {
        Mat::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.at(i1, j1) * other.at(i2, j2)
            },
        )
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// Reduced row echelon form; returns `(rref, pivot_columns)`.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| !m.at(i, c).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(r * m.cols + j, p * m.cols + j);
                }
            }
            let inv = m.at(r, c).recip();
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j) - &factor * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, one basis vector per column. The basis is empty
    /// (zero columns) when the map is injective.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Rat::one());
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(p, k, -r.at(i, f).clone());
            }
        }
        basis
    }

    /// Cokernel of `self` viewed as a map into `Q^rows`: the quotient of the
    /// codomain by the column space. Returns `(projection, section)` with
    /// `projection * self = 0` and `projection * section = identity` on the
    /// quotient.
    pub fn cokernel(&self) -> (Mat, Mat) {
        // Column space = row space of the transpose; read off a complement
        // from the pivot structure of its RREF.
        let (r, pivots) = self.transpose().rref();
        let free: Vec<usize> = (0..self.rows).filter(|c| !pivots.contains(c)).collect();
        let q = free.len();
        let mut projection = Mat::zeros(q, self.rows);
        for (k, &f) in free.iter().enumerate() {
            projection.set(k, f, Rat::one());
        }
        // Pivot coordinates map to minus the free part of their RREF row.
        for (i, &p) in pivots.iter().enumerate() {
            for (k, &f) in free.iter().enumerate() {
                projection.set(k, p, -r.at(i, f).clone());
            }
        }
        let mut section = Mat::zeros(self.rows, q);
        for (k, &f) in free.iter().enumerate() {
            section.set(f, k, Rat::one());
        }
        (projection, section)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Mat::identity(n)).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
    }

    /// Solve `self * X = b` for all columns of `b` simultaneously.
    pub fn solve(&self, b: &Mat) -> Result<SolveOutcome> {
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "solve: {}x{} vs rhs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // Any pivot in the rhs block means some column is inconsistent.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(SolveOutcome::Inconsistent);
        }
        let mut particular = Mat::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(p, j, r.at(i, self.cols + j).clone());
            }
        }
        let kernel = self.kernel();
        Ok(SolveOutcome::Solution {
            nullity: kernel.cols(),
            particular,
            kernel,
        })
    }
}

/// Result of an exact linear solve: the affine solution space or a proof of
/// inconsistency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution {
        particular: Mat,
        nullity: usize,
        kernel: Mat,
    },
    Inconsistent,
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "mul shape: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut m = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.at(i, j) + a * other.at(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }
}

/// Matrix of `id ⊗ … ⊗ f ⊗ … ⊗ id` on a tensor product with factor
/// dimensions `dims`, where `f` replaces the factor at position `t`.
pub fn apply_at(dims: &[usize], t: usize, f: &Mat) -> Mat {
    assert_eq!(dims[t], f.cols(), "apply_at: factor dimension mismatch");
    let before: usize = dims[..t].iter().product();
    let after: usize = dims[t + 1..].iter().product();
    Mat::identity(before).tensor(f).tensor(&Mat::identity(after))
}

/// Extend an action `act: V_t ⊗ A → V_t` over a whole tensor product: the
/// returned matrix maps `(⊗ V_i) ⊗ A → ⊗ V_i`, acting on factor `t`.
pub fn action_at(dims: &[usize], t: usize, act: &Mat, adim: usize) -> Mat {
    assert_eq!(act.cols(), dims[t] * adim, "action_at: action shape");
    assert_eq!(act.rows(), dims[t], "action_at: action shape");
    let total: usize = dims.iter().product();
    let after: usize = dims[t + 1..].iter().product();
    let mut m = Mat::zeros(total, total * adim);
    for v in 0..total {
        let vt = (v / after) % dims[t];
        let v_rest_hi = v / (after * dims[t]);
        let v_rest_lo = v % after;
        for a in 0..adim {
            let col = v * adim + a;
            let acted = act.col_vec(vt * adim + a);
            for (wt, coeff) in acted.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let row = (v_rest_hi * dims[t] + wt) * after + v_rest_lo;
                m.set(row, col, coeff.clone());
            }
        }
    }
    m
}

/// Permutation of tensor factors: factor at old position `i` moves to new
/// position `perm[i]`. Returns the matrix from the old product to the new.
pub fn perm_tensor(dims: &[usize], perm: &[usize]) -> Mat {
    assert_eq!(dims.len(), perm.len());
    let total: usize = dims.iter().product();
    let mut new_dims = vec![0usize; dims.len()];
    for (i, &p) in perm.iter().enumerate() {
        new_dims[p] = dims[i];
    }
    let mut m = Mat::zeros(total, total);
    for v in 0..total {
        // unpack v in old coordinates (big-endian over dims)
        let mut idx = vec![0usize; dims.len()];
        let mut rem = v;
        for i in (0..dims.len()).rev() {
            idx[i] = rem % dims[i];
            rem /= dims[i];
        }
        // repack into new coordinates
        let mut w = 0usize;
        for j in 0..dims.len() {
            let old_pos = perm.iter().position(|&p| p == j).unwrap();
            w = w * new_dims[j] + idx[old_pos];
        }
        m.set(w, v, Rat::one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(Mat::identity(3).kernel().cols(), 0);
    }

    #[test]
    fn cokernel_of_zero_map_is_identity() {
        let z = Mat::zeros(1, 1);
        let (p, s) = z.cokernel();
        assert_eq!(p, Mat::identity(1));
        assert_eq!(s, Mat::identity(1));
    }

    #[test]
    fn solve_two_x_equals_three() {
        let a = Mat::from_rows(vec![vec![rat_int(2)]]);
        let b = Mat::from_rows(vec![vec![rat_int(3)]]);
        match a.solve(&b).unwrap() {
            SolveOutcome::Solution {
                particular,
                nullity,
                ..
            } => {
                assert_eq!(particular.at(0, 0), &rat(3, 2));
                assert_eq!(nullity, 0);
            }
            SolveOutcome::Inconsistent => panic!("consistent system reported inconsistent"),
        }
    }

    #[test]
    fn cokernel_projection_kills_image_and_splits() {
        // Map Q^2 -> Q^3, image spanned by (1,1,0) and (0,1,1).
        let a = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1)],
        ]);
        let (p, s) = a.cokernel();
        assert!((&p * &a).is_zero());
        assert_eq!(&p * &s, Mat::identity(1));
        let sp = &s * &p;
        assert_eq!(&sp * &sp, sp);
    }

    #[test]
    fn inconsistent_system_detected() {
        let a = Mat::from_rows(vec![vec![rat_int(0)]]);
        let b = Mat::from_rows(vec![vec![rat_int(1)]]);
        assert_eq!(a.solve(&b).unwrap(), SolveOutcome::Inconsistent);
    }

    #[test]
    fn tensor_permutation_roundtrip() {
        let dims = [2, 3, 2];
        let p = perm_tensor(&dims, &[1, 2, 0]);
        let newdims = [2, 2, 3];
        let q = perm_tensor(&newdims, &[2, 0, 1]);
        assert_eq!(&q * &p, Mat::identity(12));
    }

    #[test]
    fn apply_at_matches_kronecker() {
        let f = Mat::from_rows(vec![vec![rat_int(1), rat_int(2)]]);
        let m = apply_at(&[3, 2], 1, &f);
        assert_eq!(m, Mat::identity(3).tensor(&f));
    }
}
