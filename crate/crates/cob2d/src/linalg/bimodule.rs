use super::algebra::Algebra;
use super::mat::{action_at, Mat};
use crate::error::{Error, Result};
use num::Zero;

/// A space with families of commuting unital actions, one per boundary
/// factor of the acting algebras.
///
/// Each action is a matrix `V ⊗ A → V` (column `v·adim + a` holds the image
/// of `e_v ⊗ e_a`). Whether a factor is a "left" or "right" action is pure
/// bookkeeping here; the balancing used by [`relative_tensor`] pairs one
/// action from each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub dim: usize,
    pub left: Vec<Mat>,
    pub right: Vec<Mat>,
}

impl Bimodule {
    pub fn new(dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> Self {
        Bimodule { dim, left, right }
    }

    /// Check that every action is unital and associative for `a`, and that
    /// distinct actions commute.
    pub fn validate(&self, a: &Algebra) -> Result<()> {
        let all: Vec<&Mat> = self.left.iter().chain(self.right.iter()).collect();
        let d = self.dim;
        let ad = a.dim();
        let id = Mat::identity(d);
        let unit = Mat::column(a.unit());
        for (t, act) in all.iter().enumerate() {
            if (act.rows(), act.cols()) != (d, d * ad) {
                return Err(Error::Shape(format!(
                    "action {} is {}x{}, expected {}x{}",
                    t,
                    act.rows(),
                    act.cols(),
                    d,
                    d * ad
                )));
            }
            if *act * &id.tensor(&unit) != id {
                return Err(Error::Validation(format!("action {t} is not unital")));
            }
            // act(act(v⊗a)⊗b) = act(v⊗ab)
            let two_step = *act * &act.tensor(&Mat::identity(ad));
            let mult_first = *act * &id.tensor(a.mult());
            if two_step != mult_first {
                return Err(Error::Validation(format!("action {t} is not associative")));
            }
        }
        for (s, a1) in all.iter().enumerate() {
            for (t, a2) in all.iter().enumerate().skip(s + 1) {
                // act1(act2(v⊗b)⊗a) = act2(act1(v⊗a)⊗b) after aligning the
                // algebra slots.
                let lhs = *a1 * &a2.tensor(&Mat::identity(ad));
                let swap = super::mat::perm_tensor(&[d, ad, ad], &[0, 2, 1]);
                let rhs = &(*a2 * &a1.tensor(&Mat::identity(ad))) * &swap;
                if lhs != rhs {
                    return Err(Error::Validation(format!("actions {s} and {t} do not commute")));
                }
            }
        }
        Ok(())
    }
}

/// Coequalizer of a family of two-sided actions on `V1 ⊗ V2`.
///
/// For each `(act1, act2, adim)` the quotient identifies
/// `act1(v⊗a) ⊗ w` with `v ⊗ act2(w⊗a)`. Returns
/// `(quotient_dim, projection, section)` with `projection · section`
/// the identity on the quotient.
pub fn coequalize(dim1: usize, dim2: usize, pairs: &[(&Mat, &Mat, usize)]) -> (usize, Mat, Mat) {
    let total = dim1 * dim2;
    let mut diff: Option<Mat> = None;
    for (act1, act2, adim) in pairs {
        let mut d = Mat::zeros(total, dim1 * adim * dim2);
        for i in 0..dim1 {
            for j in 0..*adim {
                let acted1 = act1.col_vec(i * adim + j);
                for k in 0..dim2 {
                    let col = (i * adim + j) * dim2 + k;
                    for (v, c) in acted1.iter().enumerate() {
                        if !c.is_zero() {
                            let cur = d.at(v * dim2 + k, col) + c;
                            d.set(v * dim2 + k, col, cur);
                        }
                    }
                    let acted2 = act2.col_vec(k * adim + j);
                    for (w, c) in acted2.iter().enumerate() {
                        if !c.is_zero() {
                            let cur = d.at(i * dim2 + w, col) - c;
                            d.set(i * dim2 + w, col, cur);
                        }
                    }
                }
            }
        }
        diff = Some(match diff {
            None => d,
            Some(prev) => prev.hstack(&d),
        });
    }
    let diff = diff.unwrap_or_else(|| Mat::zeros(total, 0));
    let (p, s) = diff.cokernel();
    (p.rows(), p, s)
}

/// Relative tensor product `M ⊗_A N` balancing `m.right[m_factor]` against
/// `n.left[n_factor]`, computed as the cokernel of the two-sided action
/// difference. Returns the quotient bimodule (carrying the remaining
/// actions, `m`'s factors first) and the recorded projection and section.
pub fn relative_tensor(
    m: &Bimodule,
    a: &Algebra,
    n: &Bimodule,
    m_factor: usize,
    n_factor: usize,
) -> Result<(Bimodule, Mat, Mat)> {
    let act_m = m
        .right
        .get(m_factor)
        .ok_or_else(|| Error::Shape(format!("no right action {m_factor} on the left module")))?;
    let act_n = n
        .left
        .get(n_factor)
        .ok_or_else(|| Error::Shape(format!("no left action {n_factor} on the right module")))?;
    let ad = a.dim();
    if act_m.cols() != m.dim * ad || act_n.cols() != n.dim * ad {
        return Err(Error::Shape("action does not match the given algebra".into()));
    }
    let (q, proj, sect) = coequalize(m.dim, n.dim, &[(act_m, act_n, ad)]);
    let dims = [m.dim, n.dim];
    let conj = |act: &Mat, factor: usize, adim: usize| -> Mat {
        let ext = action_at(&dims, factor, act, adim);
        &(&proj * &ext) * &sect.tensor(&Mat::identity(adim))
    };
    let mut left = Vec::new();
    for act in &m.left {
        left.push(conj(act, 0, act.cols() / m.dim));
    }
    for (t, act) in n.left.iter().enumerate() {
        if t != n_factor {
            left.push(conj(act, 1, act.cols() / n.dim));
        }
    }
    let mut right = Vec::new();
    for (t, act) in m.right.iter().enumerate() {
        if t != m_factor {
            right.push(conj(act, 0, act.cols() / m.dim));
        }
    }
    for act in &n.right {
        right.push(conj(act, 1, act.cols() / n.dim));
    }
    Ok((Bimodule::new(q, left, right), proj, sect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    /// The regular bimodule: A acting on itself by left and right
    /// multiplication. Left action at factor 0, right action at factor 0.
    fn regular(a: &Algebra) -> Bimodule {
        let d = a.dim();
        // left action: v ⊗ a ↦ a·v? The regular bimodule's left factor acts
        // by multiplication on the left: act(e_v ⊗ e_a) = b_a · b_v.
        let mut left = Mat::zeros(d, d * d);
        let mut right = Mat::zeros(d, d * d);
        for v in 0..d {
            for x in 0..d {
                let lv = a.multiply(&basis(d, x), &basis(d, v));
                let rv = a.multiply(&basis(d, v), &basis(d, x));
                for k in 0..d {
                    left.set(k, v * d + x, lv[k].clone());
                    right.set(k, v * d + x, rv[k].clone());
                }
            }
        }
        Bimodule::new(d, vec![left], vec![right])
    }

    fn basis(d: usize, i: usize) -> Vec<crate::linalg::Rat> {
        let mut v = vec![rat_int(0); d];
        v[i] = rat_int(1);
        v
    }

    #[test]
    fn regular_bimodule_validates() {
        for a in [Algebra::group_z2(), Algebra::square(), Algebra::dual_numbers()] {
            regular(&a).validate(&a).unwrap();
        }
    }

    #[test]
    fn a_tensor_a_over_a_is_a_with_multiplication_projection() {
        for a in [
            Algebra::rationals(),
            Algebra::group_z2(),
            Algebra::square(),
            Algebra::dual_numbers(),
        ] {
            let m = regular(&a);
            let (q, proj, sect) = relative_tensor(&m, &a, &m, 0, 0).unwrap();
            assert_eq!(q.dim, a.dim());
            // The multiplication map descends to an isomorphism of the
            // quotient with A, and the projection corresponds to it.
            let mult_iso = a.mult() * &sect;
            assert!(mult_iso.inverse().is_some());
            assert_eq!(&mult_iso * &proj, a.mult().clone());
        }
    }

    #[test]
    fn relative_tensor_over_rationals_is_plain_tensor() {
        let a = Algebra::rationals();
        let m = regular(&a);
        let two = Bimodule::new(
            2,
            vec![Mat::identity(2)],
            vec![Mat::identity(2)],
        );
        let (q, _, _) = relative_tensor(&two, &a, &m, 0, 0).unwrap();
        assert_eq!(q.dim, 2);
    }

    #[test]
    fn m_tensor_a_is_m_for_dual_numbers() {
        let a = Algebra::dual_numbers();
        let m = regular(&a);
        let (q, proj, sect) = relative_tensor(&m, &a, &m, 0, 0).unwrap();
        // Right unitor: contraction by the right action is an isomorphism.
        let mut contract = Mat::zeros(2, 4);
        for v in 0..2 {
            for x in 0..2 {
                let prod = a.multiply(&basis(2, v), &basis(2, x));
                for k in 0..2 {
                    contract.set(k, v * 2 + x, prod[k].clone());
                }
            }
        }
        let iso = &contract * &sect;
        assert!(iso.inverse().is_some());
        assert_eq!(q.dim, 2);
        assert_eq!(&iso * &proj, contract);
    }

    #[test]
    fn coequalizer_sections_split() {
        let a = Algebra::group_z2();
        let m = regular(&a);
        let (_, p, s) = relative_tensor(&m, &a, &m, 0, 0).unwrap();
        assert_eq!(&p * &s, Mat::identity(p.rows()));
        let sp = &s * &p;
        assert_eq!(&sp * &sp, sp);
    }
}
