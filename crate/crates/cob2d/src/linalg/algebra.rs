use super::mat::{rat_int, Mat, Rat};
use crate::error::{Error, Result};
use num::{One, Zero};

/// Finite-dimensional unital associative algebra over `Q`, presented by
/// structure constants.
///
/// `mult` is a `dim × dim²` matrix; column `i·dim + j` holds the basis
/// coefficients of `b_i · b_j`. Associativity and the unit laws are checked
/// at construction as exact matrix identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    unit: Vec<Rat>,
    mult: Mat,
}

impl Algebra {
    pub fn new(dim: usize, unit: Vec<Rat>, mult: Mat) -> Result<Self> {
        if unit.len() != dim {
            return Err(Error::Shape(format!(
                "unit vector has length {}, algebra dimension is {}",
                unit.len(),
                dim
            )));
        }
        if (mult.rows(), mult.cols()) != (dim, dim * dim) {
            return Err(Error::Shape(format!(
                "multiplication tensor is {}x{}, expected {}x{}",
                mult.rows(),
                mult.cols(),
                dim,
                dim * dim
            )));
        }
        let a = Algebra { dim, unit, mult };
        let id = Mat::identity(dim);
        let left = &a.mult * &a.mult.tensor(&id);
        let right = &a.mult * &id.tensor(&a.mult);
        if left != right {
            return Err(Error::Validation("multiplication is not associative".into()));
        }
        let unit_mat = Mat::column(&a.unit);
        if &a.mult * &unit_mat.tensor(&id) != id || &a.mult * &id.tensor(&unit_mat) != id {
            return Err(Error::Validation("unit laws fail".into()));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    pub fn mult(&self) -> &Mat {
        &self.mult
    }

    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.dim {
                    out[k] += &c * self.mult.at(k, i * self.dim + j);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[Rat]) -> Mat {
        Mat::from_fn(self.dim, self.dim, |k, j| {
            (0..self.dim)
                .map(|i| &x[i] * self.mult.at(k, i * self.dim + j))
                .sum()
        })
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult(&self, x: &[Rat]) -> Mat {
        Mat::from_fn(self.dim, self.dim, |k, i| {
            (0..self.dim)
                .map(|j| &x[j] * self.mult.at(k, i * self.dim + j))
                .sum()
        })
    }

    /// The map `A ⊗ A → A`, `x ⊗ y ↦ xy − yx`, whose cokernel is `HH₀`.
    pub fn commutator_map(&self) -> Mat {
        let d = self.dim;
        Mat::from_fn(d, d * d, |k, c| {
            let (i, j) = (c / d, c % d);
            self.mult.at(k, i * d + j) - self.mult.at(k, j * d + i)
        })
    }

    /// Invert `x`, if invertible.
    pub fn invert(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let lx = self.left_mult(x);
        let inv = lx.inverse()?;
        Some((&inv * &Mat::column(&self.unit)).col_vec(0))
    }

    /// The rationals as a 1-dimensional algebra.
    pub fn rationals() -> Self {
        Algebra::new(1, vec![Rat::one()], Mat::identity(1)).unwrap()
    }

    /// Group algebra `Q[Z/2] = Q[x]/(x² − 1)`, basis `(1, x)`.
    pub fn group_z2() -> Self {
        let mult = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(1), rat_int(0)],
        ]);
        Algebra::new(2, vec![rat_int(1), rat_int(0)], mult).unwrap()
    }

    /// Product algebra `Q × Q`, basis the two idempotents.
    pub fn square() -> Self {
        let mult = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)],
        ]);
        Algebra::new(2, vec![rat_int(1), rat_int(1)], mult).unwrap()
    }

    /// Dual numbers `Q[x]/(x²)`, basis `(1, x)`.
    pub fn dual_numbers() -> Self {
        let mult = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(1), rat_int(0)],
        ]);
        Algebra::new(2, vec![rat_int(1), rat_int(0)], mult).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn sample_algebras_validate() {
        Algebra::rationals();
        Algebra::group_z2();
        Algebra::square();
        Algebra::dual_numbers();
    }

    #[test]
    fn z2_multiplication() {
        let a = Algebra::group_z2();
        let x = vec![rat_int(0), rat_int(1)];
        assert_eq!(a.multiply(&x, &x), vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn commutator_map_vanishes_for_commutative() {
        assert!(Algebra::group_z2().commutator_map().is_zero());
        assert!(Algebra::square().commutator_map().is_zero());
    }

    #[test]
    fn inversion() {
        let a = Algebra::group_z2();
        // (1 + x)/2 + ... : 2·1 is invertible with inverse 1/2.
        let two = vec![rat_int(2), rat_int(0)];
        assert_eq!(a.invert(&two).unwrap(), vec![rat(1, 2), rat_int(0)]);
        // 1 + x is a zero divisor.
        assert!(a.invert(&[rat_int(1), rat_int(1)]).is_none());
    }

    #[test]
    fn broken_unit_law_rejected() {
        // b1 · b0 = b0 breaks the right unit law for the claimed unit b0.
        let mult = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
        ]);
        assert!(Algebra::new(2, vec![rat_int(1), rat_int(0)], mult).is_err());
    }
}
