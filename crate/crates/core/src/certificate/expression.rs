use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Certificate;
use crate::error::{Error, Result};
use crate::flag::pair_density_table;
use crate::graph::{binomial, induced_density, write_graph6, Hosts};
use crate::linalg::Rational;

/// `coefficient · q_ab` in type `block`, with `a <= b` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressionTerm {
    pub block: usize,
    pub a: usize,
    pub b: usize,
    pub coefficient: u64,
}

/// `d_A(H) + Σ c_H` written as `(Σ coefficient · q_ab + constant) / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostExpression {
    pub terms: Vec<ExpressionTerm>,
    pub constant: u64,
    pub denominator: u64,
    names: Vec<String>,
}

fn block_names(count: usize) -> Vec<String> {
    if count <= 3 {
        ["p", "q", "r"][..count].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=count).map(|i| format!("m{i}_")).collect()
    }
}

impl HostExpression {
    /// The numerator as text, e.g. `12p11 + 24p12 + 12q11`.
    pub fn numerator(&self) -> String {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let coef = if t.coefficient == 1 {
                    String::new()
                } else {
                    t.coefficient.to_string()
                };
                let (a, b) = (t.a + 1, t.b + 1);
                let index = if a < 10 && b < 10 {
                    format!("{a}{b}")
                } else {
                    format!("{a},{b}")
                };
                format!("{coef}{}{index}", self.names[t.block])
            })
            .collect();
        if self.constant != 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        parts.join(" + ")
    }
}

impl fmt::Display for HostExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/{}", self.numerator(), self.denominator)
    }
}

fn to_u64(r: &Rational) -> Result<u64> {
    if !r.is_integer() {
        return Err(Error::Rational(format!("{r} is not an integer")));
    }
    r.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Rational(format!("{r} does not fit in u64")))
}

/// Symbolic `d_A(H) + Σ c_H` per host, in host enumeration order.
pub fn host_expressions(cert: &Certificate) -> Result<Vec<HostExpression>> {
    let hosts = Hosts::enumerate(cert.l, &cert.family)?;
    let names = block_names(cert.blocks.len());
    let mut tables = Vec::with_capacity(hosts.len());
    let mut den = binomial(cert.l, cert.target.order());
    for h in hosts.graphs() {
        let row = cert
            .blocks
            .iter()
            .map(|b| pair_density_table(&b.basis, h))
            .collect::<Result<Vec<_>>>()?;
        for t in &row {
            den = den.lcm(&t.configurations());
        }
        tables.push(row);
    }
    let mut out = Vec::with_capacity(hosts.len());
    for (h, row) in hosts.graphs().iter().zip(tables) {
        let mut terms = Vec::new();
        for (block, t) in row.iter().enumerate() {
            let scale = den / t.configurations();
            for ((a, b), c) in t.merged() {
                terms.push(ExpressionTerm {
                    block,
                    a,
                    b,
                    coefficient: c * scale,
                });
            }
        }
        let d = induced_density(h, &cert.target)? * Rational::from_integer(BigInt::from(den));
        out.push(HostExpression {
            terms,
            constant: if d.is_zero() { 0 } else { to_u64(&d)? },
            denominator: den,
            names: names.clone(),
        });
    }
    Ok(out)
}

/// One line per host: index, reference index if known, graph6, expression.
pub fn expression_report(cert: &Certificate) -> Result<String> {
    let hosts = Hosts::enumerate(cert.l, &cert.family)?;
    let reference = cert.reference_index(&hosts)?;
    let exprs = host_expressions(cert)?;
    let mut out = String::new();
    for (i, (h, e)) in hosts.graphs().iter().zip(&exprs).enumerate() {
        let r = reference
            .as_ref()
            .map(|r| format!(" (ref H{})", r[i] + 1))
            .unwrap_or_default();
        out.push_str(&format!("H{} {}{}: {}\n", i + 1, write_graph6(h), r, e));
    }
    Ok(out)
}
