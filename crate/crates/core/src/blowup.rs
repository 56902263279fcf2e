//! Blow-ups and the exact pentagon count.
//!
//! Replacing every vertex `v` of a base graph by an independent set of
//! `factors[v]` vertices, and joining two parts completely exactly when their
//! base vertices are adjacent, preserves triangle-freeness. Balanced blow-ups
//! of `C5` have `(n/5)^5` pentagons.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{count_induced_copies, induced_density, ForbiddenFamily, Graph, MAX_VERTICES};
use crate::linalg::{rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    base: Graph,
    factors: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(base: Graph, factors: Vec<usize>) -> Result<Self> {
        if factors.len() != base.order() {
            return Err(Error::Dimension {
                expected: base.order(),
                found: factors.len(),
            });
        }
        if factors.contains(&0) {
            return Err(Error::arg("blow-up factors must be positive"));
        }
        let total: usize = factors.iter().sum();
        if total > MAX_VERTICES {
            return Err(Error::Size(format!(
                "blow-up has {total} vertices, more than {MAX_VERTICES}"
            )));
        }
        Ok(BlowupSpec { base, factors })
    }

    pub fn uniform(base: Graph, n: usize) -> Result<Self> {
        let k = base.order();
        Self::new(base, vec![n; k])
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().sum()
    }
}

/// Vertices of part `v` are numbered consecutively, parts in base order.
pub fn blow_up(spec: &BlowupSpec) -> Result<Graph> {
    let mut start = Vec::with_capacity(spec.factors.len());
    let mut acc = 0;
    for &f in &spec.factors {
        start.push(acc);
        acc += f;
    }
    let mut g = Graph::empty(acc)?;
    for (u, v) in spec.base.edges() {
        for x in start[u]..start[u] + spec.factors[u] {
            for y in start[v]..start[v] + spec.factors[v] {
                g.set_edge(x, y, true);
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErdosVerdict {
    Below,
    Tight,
    Violation,
}

impl fmt::Display for ErdosVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErdosVerdict::Below => "below",
            ErdosVerdict::Tight => "tight",
            ErdosVerdict::Violation => "VIOLATION",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErdosCheck {
    pub order: usize,
    pub count: u64,
    pub cap: Rational,
    pub verdict: ErdosVerdict,
}

impl ErdosCheck {
    /// `cap - count`.
    pub fn margin(&self) -> Rational {
        &self.cap - Rational::from_integer(BigInt::from(self.count))
    }
}

impl fmt::Display for ErdosCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.verdict == ErdosVerdict::Violation { ">" } else { "≤" };
        write!(f, "{} {} {}: {}", self.count, rel, self.cap, self.verdict)
    }
}

/// Compares the number of pentagons in a triangle-free `g` with `(n/5)^5`.
pub fn erdos_check(g: &Graph) -> Result<ErdosCheck> {
    if !ForbiddenFamily::triangle().admits(g) {
        return Err(Error::arg("graph contains a triangle"));
    }
    let n = g.order();
    let count = if n < 5 {
        0
    } else {
        count_induced_copies(g, &Graph::cycle(5)?)?
    };
    let cap = pow(&rational(n as i64, 5), 5);
    let c = Rational::from_integer(BigInt::from(count));
    let verdict = if c < cap {
        ErdosVerdict::Below
    } else if c == cap {
        ErdosVerdict::Tight
    } else {
        ErdosVerdict::Violation
    };
    Ok(ErdosCheck {
        order: n,
        count,
        cap,
        verdict,
    })
}

fn pow(r: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

/// `d_a(blow_up(base, N))` for `N = 1..=n_max`.
pub fn density_trend(base: &Graph, a: &Graph, n_max: usize) -> Result<Vec<(usize, Rational)>> {
    (1..=n_max)
        .map(|n| {
            let g = blow_up(&BlowupSpec::uniform(*base, n)?)?;
            let d = if g.order() < a.order() {
                Rational::zero()
            } else {
                induced_density(&g, a)?
            };
            Ok((n, d))
        })
        .collect()
}

/// Walks through the blow-up argument with the numbers of `g`.
///
/// If `g` had `(n/5)^5 + ε` pentagons, its `N`-fold blow-ups would have
/// pentagon density tending to `120 (count) / n^5 = 24/625 + 120ε/n^5`.
pub fn theorem2_reduction_demo(g: &Graph) -> Result<String> {
    let check = erdos_check(g)?;
    let n = g.order();
    let margin = check.margin();
    let limit = if n == 0 {
        Rational::zero()
    } else {
        Rational::from_integer(BigInt::from(120u64 * check.count))
            / pow(&Rational::from_integer(BigInt::from(n)), 5)
    };
    let bound = rational(24, 625);
    let mut out = String::new();
    out.push_str(&format!("graph on {n} vertices, triangle-free\n"));
    out.push_str(&format!("pentagons: {}\n", check.count));
    out.push_str(&format!("cap (n/5)^5: {}\n", check.cap));
    out.push_str(&format!("margin cap - count: {margin}\n"));
    out.push_str(&format!("epsilon = count - cap: {}\n", -margin.clone()));
    out.push_str(&format!(
        "blow-up limit density 120*count/n^5: {limit} ({} 24/625)\n",
        if limit > bound {
            ">"
        } else if limit == bound {
            "="
        } else {
            "<"
        }
    ));
    if check.verdict == ErdosVerdict::Violation {
        out.push_str("the blow-ups would exceed the density bound 24/625\n");
    } else {
        out.push_str("the blow-ups stay within the density bound 24/625\n");
    }
    out.push_str(&format!("@erdos\t{}\t{}\t{}\n", check.count, check.cap, check.verdict));
    out.push_str(&format!("@margin\t{margin}\n"));
    out.push_str(&format!("@limit\t{limit}\n"));
    Ok(out)
}
