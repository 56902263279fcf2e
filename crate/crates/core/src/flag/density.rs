use num_bigint::BigInt;
use num_traits::Zero;

use super::{flag_key, Flag, FlagBasis};
use crate::error::{Error, Result};
use crate::graph::{binomial, induced_density, ForbiddenFamily, Graph, Hosts};
use crate::linalg::{Rational, RationalMatrix};

/// Checks that `theta` is an injection into `g` whose image, in label order,
/// induces `ty_graph`.
fn check_theta(theta: &[usize], g: &Graph, ty_graph: &Graph) -> Result<()> {
    if theta.len() != ty_graph.order() {
        return Err(Error::arg(format!(
            "theta has {} entries, the type has {} vertices",
            theta.len(),
            ty_graph.order()
        )));
    }
    let mut seen = 0u32;
    for &v in theta {
        if v >= g.order() || seen >> v & 1 == 1 {
            return Err(Error::arg("theta is not an injection into the graph"));
        }
        seen |= 1 << v;
    }
    if g.induced_by_order(theta) != *ty_graph {
        return Err(Error::arg("theta does not induce the type"));
    }
    Ok(())
}

/// All `k`-subsets of `pool`, as vertex lists in increasing order.
fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut cur, &mut out);
    out
}

/// Probability that a uniform `m`-set `V ⊇ im(theta)` of `g` induces a flag
/// isomorphic to `f`, with label `i + 1` on `theta[i]`.
pub fn flag_density(f: &Flag, theta: &[usize], g: &Graph) -> Result<Rational> {
    let s = f.type_size();
    let m = f.order();
    check_theta(theta, g, &f.type_graph())?;
    if m > g.order() {
        return Err(Error::Size(format!(
            "flag order {m} exceeds graph order {}",
            g.order()
        )));
    }
    let rest: Vec<usize> = (0..g.order()).filter(|v| !theta.contains(v)).collect();
    let mut hits = 0u64;
    for ext in subsets(&rest, m - s) {
        let mut order = theta.to_vec();
        order.extend(&ext);
        if flag_key(g, &order, s) == f.key() {
            hits += 1;
        }
    }
    Ok(Rational::new(
        BigInt::from(hits),
        BigInt::from(binomial(rest.len(), m - s)),
    ))
}

/// Averaged pair densities `t_ab = E_θ[p(F_a, F_b, θ; H)]` for one host,
/// stored as integer counts over a common number of configurations.
///
/// A configuration is an injection θ of the labels into `V(H)`, an `m`-set
/// `V_a ⊇ im θ` and an `m`-set `V_b` with `V_a ∩ V_b = im θ`. Configurations
/// whose θ does not induce the type, or whose flags fall outside the basis,
/// contribute nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDensityTable {
    dim: usize,
    counts: Vec<u64>,
    configurations: u64,
}

impl PairDensityTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of ordered configurations the counts are taken over.
    pub fn configurations(&self) -> u64 {
        self.configurations
    }

    pub fn count(&self, a: usize, b: usize) -> u64 {
        self.counts[a * self.dim + b]
    }

    pub fn entry(&self, a: usize, b: usize) -> Rational {
        Rational::new(
            BigInt::from(self.count(a, b)),
            BigInt::from(self.configurations),
        )
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                m[(a, b)] = self.entry(a, b);
            }
        }
        m
    }

    /// `Σ_ab t_ab`.
    pub fn total(&self) -> Rational {
        Rational::new(
            BigInt::from(self.counts.iter().sum::<u64>()),
            BigInt::from(self.configurations),
        )
    }

    /// `Σ_ab q_ab t_ab` over ordered pairs.
    pub fn contract(&self, q: &RationalMatrix) -> Result<Rational> {
        if q.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: q.dim(),
            });
        }
        let mut acc = Rational::zero();
        for a in 0..self.dim {
            for b in 0..self.dim {
                let c = self.count(a, b);
                if c != 0 {
                    acc += &q[(a, b)] * Rational::from_integer(c.into());
                }
            }
        }
        Ok(acc / Rational::from_integer(self.configurations.into()))
    }

    /// Counts with symmetric pairs merged: `((a, b), count_ab + count_ba)` for
    /// `a < b` and `((a, a), count_aa)`, nonzero only, `a` then `b` increasing.
    pub fn merged(&self) -> Vec<((usize, usize), u64)> {
        let mut out = Vec::new();
        for a in 0..self.dim {
            for b in a..self.dim {
                let c = if a == b {
                    self.count(a, a)
                } else {
                    self.count(a, b) + self.count(b, a)
                };
                if c != 0 {
                    out.push(((a, b), c));
                }
            }
        }
        out
    }

    /// One line per nonzero ordered entry: `a b num/den`, 1-based indices.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for a in 0..self.dim {
            for b in 0..self.dim {
                if self.count(a, b) != 0 {
                    s.push_str(&format!("{} {} {}\n", a + 1, b + 1, self.entry(a, b)));
                }
            }
        }
        s
    }
}

fn falling(n: usize, k: usize) -> u64 {
    (0..k).map(|i| (n - i) as u64).product()
}

pub fn pair_density_table(basis: &FlagBasis, h: &Graph) -> Result<PairDensityTable> {
    let s = basis.flag_type().size();
    let m = basis.order();
    let l = h.order();
    let ext = m - s;
    if 2 * m > l + s {
        return Err(Error::Size(format!(
            "two {m}-sets overlapping in {s} vertices need {} vertices, host has {l}",
            2 * m - s
        )));
    }
    let dim = basis.len();
    let configurations = falling(l, s) * binomial(l - s, ext) * binomial(l - m, ext);
    let mut counts = vec![0u64; dim * dim];
    let ty = *basis.flag_type().graph();

    let mut theta = Vec::with_capacity(s);
    for_each_injection(l, s, &mut theta, &mut |theta| {
        if h.induced_by_order(theta) != ty {
            return;
        }
        let rest: Vec<usize> = (0..l).filter(|v| !theta.contains(v)).collect();
        let sides: Vec<(u32, Option<usize>)> = subsets(&rest, ext)
            .into_iter()
            .map(|e| {
                let mask = e.iter().fold(0u32, |acc, &v| acc | 1 << v);
                let mut order = theta.to_vec();
                order.extend(&e);
                (mask, basis.classify(h, &order))
            })
            .collect();
        for (ma, ia) in &sides {
            let Some(ia) = ia else { continue };
            for (mb, ib) in &sides {
                if ma & mb != 0 {
                    continue;
                }
                if let Some(ib) = ib {
                    counts[ia * dim + ib] += 1;
                }
            }
        }
    });
    Ok(PairDensityTable {
        dim,
        counts,
        configurations,
    })
}

fn for_each_injection(n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for v in 0..n {
        if !cur.contains(&v) {
            cur.push(v);
            for_each_injection(n, k, cur, f);
            cur.pop();
        }
    }
}

/// `c_H(σ, m, Q) = Σ_ab q_ab t_ab`.
pub fn c_h(basis: &FlagBasis, q: &RationalMatrix, h: &Graph) -> Result<Rational> {
    if q.dim() != basis.len() {
        return Err(Error::Dimension {
            expected: basis.len(),
            found: q.dim(),
        });
    }
    q.check_symmetric()?;
    pair_density_table(basis, h)?.contract(q)
}

/// `p(H; g)` over the hosts `enumerate_free_graphs(l, fam)`, in that order.
pub fn subgraph_distribution(g: &Graph, l: usize, fam: &ForbiddenFamily) -> Result<Vec<Rational>> {
    Hosts::enumerate(l, fam)?.distribution(g)
}

/// Both sides of `d_A(g) = Σ_H d_A(H) p(H; g)`.
pub fn averaging_identity_check(
    g: &Graph,
    a: &Graph,
    l: usize,
    fam: &ForbiddenFamily,
) -> Result<(Rational, Rational)> {
    if a.order() > l || l > g.order() {
        return Err(Error::Size(format!(
            "need |V(A)| <= l <= |V(G)|, got {} <= {l} <= {}",
            a.order(),
            g.order()
        )));
    }
    let hosts = Hosts::enumerate(l, fam)?;
    let p = hosts.distribution(g)?;
    let lhs = induced_density(g, a)?;
    let mut rhs = Rational::zero();
    for (h, ph) in hosts.graphs().iter().zip(&p) {
        if !ph.is_zero() {
            rhs += induced_density(h, a)? * ph;
        }
    }
    Ok((lhs, rhs))
}
