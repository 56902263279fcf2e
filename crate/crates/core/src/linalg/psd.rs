use num_traits::{One, Signed, Zero};

use super::{Rational, RationalMatrix};
use crate::error::Result;

/// `M = L · diag(d) · Lᵀ` with `L` unit lower triangular and every `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdlFactorization {
    pub l: RationalMatrix,
    pub d: Vec<Rational>,
}

impl LdlFactorization {
    pub fn reconstruct(&self) -> RationalMatrix {
        let n = self.d.len();
        let mut ld = self.l.clone();
        for i in 0..n {
            for j in 0..n {
                ld[(i, j)] = &self.l[(i, j)] * &self.d[j];
            }
        }
        &ld * &self.l.transpose()
    }

    pub fn rank(&self) -> usize {
        self.d.iter().filter(|v| !v.is_zero()).count()
    }
}

/// A vector `x` with `xᵀ M x = value < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdWitness {
    pub vector: Vec<Rational>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd(LdlFactorization),
    NotPsd(PsdWitness),
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd(_))
    }

    pub fn witness(&self) -> Option<&PsdWitness> {
        match self {
            PsdVerdict::NotPsd(w) => Some(w),
            PsdVerdict::Psd(_) => None,
        }
    }

    pub fn factorization(&self) -> Option<&LdlFactorization> {
        match self {
            PsdVerdict::Psd(f) => Some(f),
            PsdVerdict::NotPsd(_) => None,
        }
    }
}

/// Exact positive-semidefiniteness test by symmetric elimination.
///
/// A zero pivot is accepted only when the rest of its column in the current
/// Schur complement is zero; otherwise, or on a negative pivot, a witness is
/// built in Schur coordinates and pulled back through `L⁻ᵀ`.
pub fn psd_check(m: &RationalMatrix) -> Result<PsdVerdict> {
    m.check_symmetric()?;
    let n = m.dim();
    let mut s = m.clone();
    let mut l = RationalMatrix::identity(n);
    let mut d = Vec::with_capacity(n);

    for k in 0..n {
        let pivot = s[(k, k)].clone();
        if pivot.is_negative() {
            let mut z = vec![Rational::zero(); n];
            z[k] = Rational::one();
            return Ok(PsdVerdict::NotPsd(witness(m, &l, k, z)?));
        }
        if pivot.is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !s[(j, k)].is_zero()) {
                // y = t e_k + e_j gives 2 t s_jk + s_jj; pick t so that this is -1.
                let t = -(&s[(j, j)] + Rational::one()) / (&s[(j, k)] * Rational::from_integer(2.into()));
                let mut z = vec![Rational::zero(); n];
                z[k] = t;
                z[j] = Rational::one();
                return Ok(PsdVerdict::NotPsd(witness(m, &l, k, z)?));
            }
            d.push(Rational::zero());
            continue;
        }
        for i in k + 1..n {
            l[(i, k)] = &s[(i, k)] / &pivot;
        }
        for i in k + 1..n {
            if l[(i, k)].is_zero() {
                continue;
            }
            for j in k + 1..=i {
                let delta = &l[(i, k)] * &s[(k, j)];
                s[(i, j)] -= &delta;
                if i != j {
                    s[(j, i)] -= delta;
                }
            }
        }
        d.push(pivot);
    }
    Ok(PsdVerdict::Psd(LdlFactorization { l, d }))
}

/// Solve `L_kᵀ x = z`, where only the first `k` columns of `l` are filled.
fn witness(m: &RationalMatrix, l: &RationalMatrix, k: usize, z: Vec<Rational>) -> Result<PsdWitness> {
    let n = z.len();
    let mut x = z;
    for i in (0..k).rev() {
        let mut acc = x[i].clone();
        for r in i + 1..n {
            if !l[(r, i)].is_zero() {
                acc -= &l[(r, i)] * &x[r];
            }
        }
        x[i] = acc;
    }
    let value = m.quadratic_form(&x)?;
    debug_assert!(value.is_negative());
    Ok(PsdWitness { vector: x, value })
}

#[cfg(test)]
mod tests {
    use super::super::{integer, rational};
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    #[test]
    fn identity_is_psd() {
        let v = psd_check(&RationalMatrix::identity(4)).unwrap();
        assert!(v.is_psd());
        assert_eq!(v.factorization().unwrap().rank(), 4);
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]], 1).unwrap();
        let w = psd_check(&m).unwrap().witness().cloned().unwrap();
        assert_eq!(w.vector, vec![integer(-2), integer(1)]);
        assert_eq!(w.value, integer(-3));
        // The textbook witness (1, -1) also certifies.
        assert_eq!(m.quadratic_form(&[integer(1), integer(-1)]).unwrap(), integer(-2));
    }

    #[test]
    fn zero_pivot_with_nonzero_column() {
        let m = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 5]], 1).unwrap();
        let w = psd_check(&m).unwrap().witness().cloned().unwrap();
        assert_eq!(w.value, integer(-1));
        assert_eq!(m.quadratic_form(&w.vector).unwrap(), w.value);
    }

    #[test]
    fn zero_pivot_after_elimination() {
        // Rank one leading block, then an off-diagonal entry in the null direction.
        let m = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]], 1).unwrap();
        let w = psd_check(&m).unwrap().witness().cloned().unwrap();
        assert!(w.value < integer(0));
        assert_eq!(m.quadratic_form(&w.vector).unwrap(), w.value);
    }

    #[test]
    fn singular_psd_accepts_zero_rows() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]], 3).unwrap();
        let f = psd_check(&m).unwrap().factorization().cloned().unwrap();
        assert_eq!(f.d, vec![rational(1, 3), integer(0), integer(0)]);
        assert_eq!(f.reconstruct(), m);
    }

    #[test]
    fn asymmetric_is_an_error() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 0], &[1, 1]], 1).unwrap();
        assert!(matches!(psd_check(&m), Err(Error::Asymmetric { .. })));
    }

    fn arb_symmetric() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                let mut m = RationalMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..=i {
                        m[(i, j)] = rational(v[i * n + j], 2);
                        m[(j, i)] = rational(v[i * n + j], 2);
                    }
                }
                m
            })
        })
    }

    /// Gram matrices `AᵀA` of small integer matrices, often singular.
    fn arb_gram() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=6, 1usize..=4).prop_flat_map(|(n, r)| {
            proptest::collection::vec(-2i64..=2, n * r).prop_map(move |v| {
                let mut m = RationalMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = integer((0..r).map(|k| v[k * n + i] * v[k * n + j]).sum());
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn verdicts_are_self_certifying(m in arb_symmetric()) {
            match psd_check(&m).unwrap() {
                PsdVerdict::Psd(f) => {
                    prop_assert!(f.d.iter().all(|v| !v.is_negative()));
                    prop_assert_eq!(f.reconstruct(), m);
                }
                PsdVerdict::NotPsd(w) => {
                    prop_assert!(w.value.is_negative());
                    prop_assert_eq!(m.quadratic_form(&w.vector).unwrap(), w.value);
                }
            }
        }

        #[test]
        fn gram_matrices_are_psd(m in arb_gram()) {
            let v = psd_check(&m).unwrap();
            prop_assert!(v.is_psd());
            prop_assert_eq!(v.factorization().unwrap().reconstruct(), m);
        }
    }
}
