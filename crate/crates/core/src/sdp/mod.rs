//! Bridge to external SDP solvers.
//!
//! The search for matrices `Q_i` minimising the bound is written in SDPA
//! sparse format, in the solver's dual form `max ⟨F0, Y⟩` subject to
//! `⟨F_H, Y⟩ = c_H`, `Y ⪰ 0`, with `Y = diag(Q_1, …, Q_t, S, λ₊, λ₋)`:
//!
//! ```text
//! ⟨T_H, Q⟩ + s_H − λ₊ + λ₋ = −d_A(H)    for every host H
//! objective: maximise λ₋ − λ₊ = −λ
//! ```
//!
//! `S` is a diagonal slack block with one entry per host. Solver output is
//! brought back with [`round_solution`], which only ever returns certificates
//! that passed the exact verifier.

mod round;

pub use round::{round_solution, RoundingAttempt, RoundingFailure, RoundingOutcome, RoundingPolicy};

use std::fmt::Write as _;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::flag::{pair_density_table, FlagBasis, PairDensityTable};
use crate::graph::{induced_density, write_graph6, ForbiddenFamily, Graph, Hosts};
use crate::linalg::{approx, Rational};

/// A float matrix as read from solver output, row-major.
pub type FloatMatrix = Vec<Vec<f64>>;

#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub l: usize,
    pub hosts: Vec<Graph>,
    /// `d_A(H)` per host.
    pub densities: Vec<Rational>,
    pub bases: Vec<FlagBasis>,
    /// `tables[h][i]` is the pair table of host `h` and type `i`.
    pub tables: Vec<Vec<PairDensityTable>>,
}

impl SdpProblem {
    pub fn build(l: usize, family: &ForbiddenFamily, target: &Graph, bases: Vec<FlagBasis>) -> Result<Self> {
        if target.order() > l {
            return Err(Error::arg(format!(
                "target has {} vertices, more than l = {l}",
                target.order()
            )));
        }
        let hosts = Hosts::enumerate(l, family)?;
        let mut densities = Vec::with_capacity(hosts.len());
        let mut tables = Vec::with_capacity(hosts.len());
        for h in hosts.graphs() {
            densities.push(induced_density(h, target)?);
            tables.push(
                bases
                    .iter()
                    .map(|b| pair_density_table(b, h))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(SdpProblem {
            l,
            hosts: hosts.graphs().to_vec(),
            densities,
            bases,
            tables,
        })
    }

    pub fn from_certificate(cert: &Certificate) -> Result<Self> {
        let bases = cert.blocks.iter().map(|b| b.basis.clone()).collect();
        Self::build(cert.l, &cert.family, &cert.target, bases)
    }

    pub fn constraint_count(&self) -> usize {
        self.hosts.len()
    }

    /// SDPA block structure: the type blocks, then `-|H|`, `-1`, `-1`.
    pub fn block_struct(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.bases.iter().map(|b| b.len() as i64).collect();
        out.push(-(self.hosts.len() as i64));
        out.push(-1);
        out.push(-1);
        out
    }

    /// `(matno, blkno, i, j, value)` with 1-based indices and `i <= j`.
    fn entries(&self) -> Vec<(usize, usize, usize, usize, Rational)> {
        let t = self.bases.len();
        let (slack, plus, minus) = (t + 1, t + 2, t + 3);
        let one = Rational::from_integer(1.into());
        let mut out = vec![(0, plus, 1, 1, -one.clone()), (0, minus, 1, 1, one.clone())];
        for (h, row) in self.tables.iter().enumerate() {
            let k = h + 1;
            for (i, table) in row.iter().enumerate() {
                for a in 0..table.dim() {
                    for b in a..table.dim() {
                        if table.count(a, b) != 0 {
                            out.push((k, i + 1, a + 1, b + 1, table.entry(a, b)));
                        }
                    }
                }
            }
            out.push((k, slack, k, k, one.clone()));
            out.push((k, plus, 1, 1, -one.clone()));
            out.push((k, minus, 1, 1, one.clone()));
        }
        out
    }

    fn header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "\"flag-algebra bound, hosts on {} vertices", self.l);
        for (i, b) in self.bases.iter().enumerate() {
            let _ = writeln!(
                s,
                "\"block {}: type {} ({} vertices), m = {}, {} flags",
                i + 1,
                write_graph6(b.flag_type().graph()),
                b.flag_type().size(),
                b.order(),
                b.len()
            );
            for (j, f) in b.flags().iter().enumerate() {
                let labels: Vec<String> = f.labels().iter().map(|v| (v + 1).to_string()).collect();
                let _ = writeln!(
                    s,
                    "\"  index {}: {} labels {}",
                    j + 1,
                    write_graph6(f.graph()),
                    labels.join(",")
                );
            }
        }
        let t = self.bases.len();
        let _ = writeln!(s, "\"block {}: slack, one diagonal entry per host", t + 1);
        let _ = writeln!(s, "\"block {}: lambda+, block {}: lambda-, bound = lambda+ - lambda-", t + 2, t + 3);
        for (k, h) in self.hosts.iter().enumerate() {
            let _ = writeln!(s, "\"constraint {}: host {}, d_A = {}", k + 1, write_graph6(h), self.densities[k]);
        }
        s
    }

    /// SDPA sparse text with decimals in shortest round-trip form.
    pub fn to_sdpa(&self) -> String {
        let mut s = self.header();
        let _ = writeln!(s, "{}", self.constraint_count());
        let _ = writeln!(s, "{}", self.block_struct().len());
        let blocks: Vec<String> = self.block_struct().iter().map(|b| b.to_string()).collect();
        let _ = writeln!(s, "{}", blocks.join(" "));
        let c: Vec<String> = self.densities.iter().map(|d| format!("{}", -approx(d))).collect();
        let _ = writeln!(s, "{}", c.join(" "));
        for (m, b, i, j, v) in self.entries() {
            let _ = writeln!(s, "{m} {b} {i} {j} {}", approx(&v));
        }
        s
    }

    /// The same data with exact rationals: `c k value` lines for the
    /// right-hand side, then `matno blkno i j value`.
    pub fn exact_sidecar(&self) -> String {
        let mut s = String::from("# exact values for the SDPA file\n");
        for (k, d) in self.densities.iter().enumerate() {
            let _ = writeln!(s, "c {} {}", k + 1, -d.clone());
        }
        for (m, b, i, j, v) in self.entries() {
            let _ = writeln!(s, "{m} {b} {i} {j} {v}");
        }
        s
    }
}

/// SDPA text for the given setup.
pub fn emit_sdp(l: usize, family: &ForbiddenFamily, target: &Graph, bases: Vec<FlagBasis>) -> Result<String> {
    Ok(SdpProblem::build(l, family, target, bases)?.to_sdpa())
}

/// Solver output: square matrices, whitespace-separated rows, blocks
/// separated by blank lines. Lines starting with `#` are ignored.
pub fn parse_solver_blocks(text: &str) -> Result<Vec<FloatMatrix>> {
    let mut blocks = Vec::new();
    let mut cur: FloatMatrix = Vec::new();
    let flush = |cur: &mut FloatMatrix, blocks: &mut Vec<FloatMatrix>| -> Result<()> {
        if cur.is_empty() {
            return Ok(());
        }
        let n = cur.len();
        if let Some(r) = cur.iter().position(|r| r.len() != n) {
            return Err(Error::Sdp(format!(
                "block {}: row {} has {} entries, expected {n}",
                blocks.len() + 1,
                r + 1,
                cur[r].len()
            )));
        }
        blocks.push(std::mem::take(cur));
        Ok(())
    };
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut cur, &mut blocks)?;
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Sdp(format!("line {}: bad number {t:?}", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        cur.push(row);
    }
    flush(&mut cur, &mut blocks)?;
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{enumerate_flags, FlagType};
    use crate::linalg::parse_rational;
    use crate::pentagon;

    #[test]
    fn pentagon_shape() {
        let p = SdpProblem::from_certificate(&pentagon::certificate()).unwrap();
        assert_eq!(p.constraint_count(), 14);
        assert_eq!(p.block_struct(), vec![8, 6, 5, -14, -1, -1]);
        let text = p.to_sdpa();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('"')).collect();
        assert_eq!(body[0], "14");
        assert_eq!(body[1], "6");
        assert_eq!(body[2], "8 6 5 -14 -1 -1");
        assert_eq!(body[3].split(' ').count(), 14);
        assert!(text.contains("\"  index 8: CF labels 1,2,3\n"));
    }

    #[test]
    fn sidecar_matches_tables() {
        let cert = pentagon::certificate();
        let p = SdpProblem::from_certificate(&cert).unwrap();
        let hosts = Hosts::enumerate(5, &cert.family).unwrap();
        let mut n = 0;
        for line in p.exact_sidecar().lines().skip(1) {
            let f: Vec<&str> = line.split(' ').collect();
            if f[0] == "c" {
                continue;
            }
            let (k, blk, i, j): (usize, usize, usize, usize) =
                (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap());
            if k == 0 || blk > 3 {
                continue;
            }
            let t = pair_density_table(&cert.blocks[blk - 1].basis, &hosts.graphs()[k - 1]).unwrap();
            assert_eq!(parse_rational(f[4]).unwrap(), t.entry(i - 1, j - 1));
            n += 1;
        }
        let expected: usize = p.tables.iter().flatten().map(|t| t.merged().len()).sum();
        assert_eq!(n, expected);
    }

    #[test]
    fn single_type_and_empty_setups() {
        let fam = ForbiddenFamily::triangle();
        let c5 = Graph::cycle(5).unwrap();
        let sigma0 = enumerate_flags(&FlagType::three_vertex(0).unwrap(), 4, &fam).unwrap();
        let p = SdpProblem::build(5, &fam, &c5, vec![sigma0]).unwrap();
        assert_eq!(p.constraint_count(), 14);
        assert_eq!(p.block_struct(), vec![8, -14, -1, -1]);
        let p = SdpProblem::build(5, &fam, &c5, vec![]).unwrap();
        assert_eq!(p.block_struct(), vec![-14, -1, -1]);
    }

    #[test]
    fn solver_blocks() {
        let blocks = parse_solver_blocks("# from solver\n1 0.5\n0.5 2\n\n\n3\n").unwrap();
        assert_eq!(blocks, vec![vec![vec![1.0, 0.5], vec![0.5, 2.0]], vec![vec![3.0]]]);
        assert!(parse_solver_blocks("1 2\n3\n").is_err());
        assert!(parse_solver_blocks("1 x\n").is_err());
        assert!(parse_solver_blocks("").unwrap().is_empty());
    }
}
