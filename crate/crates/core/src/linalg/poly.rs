use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed, Zero};

use super::{Rational, RationalMatrix};

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs_low_first: &[i64]) -> Self {
        Self::new(coeffs_low_first.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn x_minus(root: Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        factors
            .into_iter()
            .fold(Polynomial::constant(Rational::one()), |acc, f| &acc * f)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::product(std::iter::repeat_n(self, e as usize))
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// For a real-rooted monic polynomial: whether every root is `>= 0`,
    /// read off from weakly alternating coefficient signs.
    pub fn roots_nonnegative_by_signs(&self) -> bool {
        let n = self.degree();
        (0..=n).all(|k| {
            let c = self.coeff(n - k);
            if k % 2 == 0 {
                !c.is_negative()
            } else {
                !c.is_positive()
            }
        })
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let body = if magnitude.is_integer() {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            match power {
                0 => f.write_str(&body)?,
                _ => {
                    if !magnitude.is_one() {
                        f.write_str(&body)?;
                    }
                    f.write_str("x")?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Both sign conventions of the characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    /// `det(xI - M)`, monic.
    pub x_minus_m: Polynomial,
    /// `det(M - xI) = (-1)^dim · det(xI - M)`.
    pub m_minus_x: Polynomial,
}

/// Characteristic polynomial by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &RationalMatrix) -> CharPoly {
    let n = m.dim();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = RationalMatrix::identity(n);
    for k in 1..=n {
        let am = m * &aux;
        let c = -am.trace() / Rational::from_integer((k as i64).into());
        let mut next = am;
        for i in 0..n {
            next[(i, i)] += &c;
        }
        coeffs[n - k] = c;
        aux = next;
    }
    let x_minus_m = Polynomial::new(coeffs);
    let m_minus_x = if n.is_multiple_of(2) {
        x_minus_m.clone()
    } else {
        x_minus_m.neg()
    };
    CharPoly {
        x_minus_m,
        m_minus_x,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{integer, psd_check, rational};
    use super::*;
    use proptest::prelude::*;

    /// Independent route: Laplace expansion of det(xI - M) over polynomial entries.
    fn det_poly(rows: &[Vec<Polynomial>]) -> Polynomial {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut total = Polynomial::new(vec![]);
        for j in 0..n {
            let minor: Vec<Vec<Polynomial>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = &rows[0][j] * &det_poly(&minor);
            let term = if j % 2 == 0 { term } else { term.neg() };
            total = Polynomial::new(
                (0..=total.degree().max(term.degree()))
                    .map(|p| total.coeff(p) + term.coeff(p))
                    .collect(),
            );
        }
        total
    }

    fn laplace_char_poly(m: &RationalMatrix) -> Polynomial {
        let n = m.dim();
        let rows: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut c = vec![-m[(i, j)].clone()];
                        if i == j {
                            c.push(Rational::one());
                        }
                        Polynomial::new(c)
                    })
                    .collect()
            })
            .collect();
        det_poly(&rows)
    }

    #[test]
    fn display() {
        let p = Polynomial::from_i64(&[53766, -930, 1]);
        assert_eq!(p.to_string(), "x^2 - 930x + 53766");
        assert_eq!(Polynomial::from_i64(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(Polynomial::new(vec![rational(1, 2), integer(1)]).to_string(), "x + (1/2)");
        assert_eq!(Polynomial::new(vec![]).to_string(), "0");
    }

    #[test]
    fn small_char_polys() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 2]], 1).unwrap();
        let cp = char_poly(&m);
        assert_eq!(cp.x_minus_m, Polynomial::from_i64(&[3, -4, 1]));
        assert_eq!(cp.m_minus_x, cp.x_minus_m);
        let m3 = RationalMatrix::identity(3);
        let cp3 = char_poly(&m3);
        assert_eq!(cp3.x_minus_m, Polynomial::x_minus(integer(1)).pow(3));
        assert_eq!(cp3.m_minus_x, cp3.x_minus_m.neg());
    }

    #[test]
    fn eval_and_roots() {
        let p = Polynomial::product(&[Polynomial::x_minus(integer(2)), Polynomial::x_minus(integer(5))]);
        assert!(p.eval(&integer(5)).is_zero());
        assert!(p.roots_nonnegative_by_signs());
        let q = Polynomial::product(&[Polynomial::x_minus(integer(-1)), Polynomial::x_minus(integer(3))]);
        assert!(!q.roots_nonnegative_by_signs());
    }

    fn arb_symmetric() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
                let mut m = RationalMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..=i {
                        m[(i, j)] = rational(v[i * n + j], 3);
                        m[(j, i)] = rational(v[i * n + j], 3);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_laplace_expansion(m in arb_symmetric()) {
            prop_assert_eq!(char_poly(&m).x_minus_m, laplace_char_poly(&m));
        }

        #[test]
        fn sign_pattern_agrees_with_psd_verdict(m in arb_symmetric()) {
            let by_signs = char_poly(&m).x_minus_m.roots_nonnegative_by_signs();
            prop_assert_eq!(by_signs, psd_check(&m).unwrap().is_psd());
        }
    }
}
