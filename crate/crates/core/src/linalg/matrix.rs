use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Dense square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { dim, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]], den: i64) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::rational(v, den)).collect())
                .collect(),
        )
    }

    /// Rows of `"num/den"` strings.
    pub fn parse_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(s.as_ref())).collect())
                .collect::<Result<_>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Exact `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut total = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row: Rational = self.entries[i * self.dim..(i + 1) * self.dim]
                .iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (m, xj)| acc + m * xj);
            total += xi * row;
        }
        Ok(total)
    }

    /// `Σ_ab self_ab · other_ab`.
    pub fn frobenius(&self, other: &RationalMatrix) -> Result<Rational> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{integer, rational};
    use super::*;

    #[test]
    fn quadratic_forms() {
        let id = RationalMatrix::identity(3);
        let x = vec![integer(1), rational(-1, 2), integer(3)];
        assert_eq!(id.quadratic_form(&x).unwrap(), rational(41, 4));
        assert!(id.quadratic_form(&vec![integer(0); 3]).unwrap().is_zero());
        assert!(matches!(
            id.quadratic_form(&[integer(1)]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn symmetry_check_reports_position() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[3, 1]], 1).unwrap();
        assert_eq!(m.check_symmetric(), Err(Error::Asymmetric { row: 1, col: 0 }));
        assert!(m.transpose().transpose() == m);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RationalMatrix::from_rows(vec![vec![integer(1)], vec![]]).is_err());
    }

    #[test]
    fn product_and_frobenius() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[3, 4]], 1).unwrap();
        let b = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]], 2).unwrap();
        let ab = &a * &b;
        assert_eq!(ab, RationalMatrix::from_i64_rows(&[&[2, 1], &[4, 3]], 2).unwrap());
        assert_eq!(a.frobenius(&b).unwrap(), rational(5, 2));
        assert_eq!((&a + &a), a.scale(&integer(2)));
        assert_eq!(a.trace(), integer(5));
    }
}
