use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::FloatMatrix;
use crate::certificate::{verify, Certificate, VerificationReport};
use crate::error::{Error, Result};
use crate::linalg::{PsdWitness, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct RoundingPolicy {
    /// Common denominators, tried in order.
    pub denominators: Vec<u64>,
    /// Added as `μI` to every block when the plain rounding is not PSD.
    pub diagonal_boost: Option<Rational>,
    /// Per-entry best approximation with bounded denominator, tried after the
    /// ladder.
    pub fallback_max_denominator: Option<u64>,
}

impl Default for RoundingPolicy {
    fn default() -> Self {
        RoundingPolicy {
            denominators: vec![625, 2500, 12500, 62500],
            diagonal_boost: None,
            fallback_max_denominator: None,
        }
    }
}

impl RoundingPolicy {
    pub fn with_denominators(denominators: Vec<u64>) -> Result<Self> {
        let p = RoundingPolicy {
            denominators,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.denominators.contains(&0) || self.fallback_max_denominator == Some(0) {
            return Err(Error::arg("denominators must be positive"));
        }
        if self.diagonal_boost.as_ref().is_some_and(|m| m.is_negative()) {
            return Err(Error::arg("diagonal boost must be non-negative"));
        }
        Ok(())
    }
}

/// One rounding tried against the verifier.
#[derive(Clone, Debug)]
pub struct RoundingAttempt {
    /// `"1/625"`, `"1/625 + μI"`, `"cf ≤ 1000"`, ...
    pub label: String,
    pub psd: bool,
    pub bound: Rational,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct RoundingFailure {
    pub attempts: Vec<RoundingAttempt>,
    /// The lowest bound seen, certified or not.
    pub best_bound: Option<Rational>,
    /// `(block, witness)` from the first attempt that was not PSD.
    pub witness: Option<(usize, PsdWitness)>,
}

#[derive(Clone, Debug)]
pub enum RoundingOutcome {
    Certified {
        certificate: Certificate,
        report: VerificationReport,
        attempts: Vec<RoundingAttempt>,
    },
    Failed(RoundingFailure),
}

impl RoundingOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            RoundingOutcome::Certified { certificate, .. } => Some(certificate),
            RoundingOutcome::Failed(_) => None,
        }
    }

    pub fn bound(&self) -> Option<&Rational> {
        match self {
            RoundingOutcome::Certified { report, .. } => Some(&report.bound),
            RoundingOutcome::Failed(_) => None,
        }
    }
}

fn exact_float(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Sdp(format!("{x} is not finite")))
}

fn to_common(x: f64, d: u64) -> Result<Rational> {
    let scaled = exact_float(x)? * Rational::from_integer(BigInt::from(d));
    Ok(Rational::new(scaled.round().to_integer(), BigInt::from(d)))
}

/// Closest rational to `x` with denominator at most `max_den`.
fn limit_denominator(x: &Rational, max_den: u64) -> Rational {
    let max = BigInt::from(max_den);
    if x.denom() <= &max {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::from(1), BigInt::from(1), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let r = &n - &a * &d;
        (n, d) = (d, r);
    }
    let k = (&max - &q0).div_floor(&q1);
    let lower = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let upper = Rational::new(p1, q1);
    if (&upper - x).abs() <= (&lower - x).abs() {
        upper
    } else {
        lower
    }
}

fn exact_matrix(m: &FloatMatrix, round: &dyn Fn(f64) -> Result<Rational>) -> Result<RationalMatrix> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|&x| round(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let r = RationalMatrix::from_rows(rows)?;
    let two = Rational::from_integer(BigInt::from(2));
    Ok((&r + &r.transpose()).scale(&(Rational::from_integer(1.into()) / two)))
}

/// Rounds solver matrices to exact ones and re-verifies them against the
/// skeleton's flag lists and claimed bound.
pub fn round_solution(
    matrices: &[FloatMatrix],
    policy: &RoundingPolicy,
    skeleton: &Certificate,
) -> Result<RoundingOutcome> {
    policy.validate()?;
    if matrices.len() != skeleton.blocks.len() {
        return Err(Error::Dimension {
            expected: skeleton.blocks.len(),
            found: matrices.len(),
        });
    }
    for (m, b) in matrices.iter().zip(&skeleton.blocks) {
        if m.len() != b.basis.len() {
            return Err(Error::Dimension {
                expected: b.basis.len(),
                found: m.len(),
            });
        }
    }

    type Rounder = Box<dyn Fn(f64) -> Result<Rational>>;
    let mut candidates: Vec<(String, Rounder)> = policy
        .denominators
        .iter()
        .map(|&d| (format!("1/{d}"), Box::new(move |x| to_common(x, d)) as Rounder))
        .collect();
    if let Some(max) = policy.fallback_max_denominator {
        candidates.push((
            format!("cf ≤ {max}"),
            Box::new(move |x| Ok(limit_denominator(&exact_float(x)?, max))),
        ));
    }

    let mut attempts = Vec::new();
    let mut best: Option<Rational> = None;
    let mut witness = None;
    for (label, round) in &candidates {
        let exact = matrices
            .iter()
            .map(|m| exact_matrix(m, round.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let mut variants = vec![(label.clone(), exact.clone())];
        if let Some(mu) = policy.diagonal_boost.as_ref().filter(|m| !m.is_zero()) {
            let boosted = exact
                .iter()
                .map(|q| q + &RationalMatrix::identity(q.dim()).scale(mu))
                .collect();
            variants.push((format!("{label} + {mu}I"), boosted));
        }
        for (label, qs) in variants {
            let cert = skeleton.with_matrices(qs)?;
            let report = verify(&cert)?;
            if best.as_ref().is_none_or(|b| report.bound < *b) {
                best = Some(report.bound.clone());
            }
            if witness.is_none() {
                witness = report
                    .psd
                    .iter()
                    .enumerate()
                    .find_map(|(i, v)| v.witness().map(|w| (i, w.clone())));
            }
            let psd = report.all_psd();
            attempts.push(RoundingAttempt {
                label,
                psd,
                bound: report.bound.clone(),
                passed: report.passed,
            });
            if report.passed {
                return Ok(RoundingOutcome::Certified {
                    certificate: cert,
                    report,
                    attempts,
                });
            }
            if psd {
                break;
            }
        }
    }
    Ok(RoundingOutcome::Failed(RoundingFailure {
        attempts,
        best_bound: best,
        witness,
    }))
}
