//! Certificate files and their exact verification.
//!
//! A certificate fixes a forbidden family, a target graph `A`, a host order
//! `l` and, per type, an explicit flag list with a symmetric matrix. The
//! verifier recomputes everything else and checks
//! `max_H (d_A(H) + Σ_i c_H(σ_i, m_i, Q_i)) <= claimed_bound` together with
//! positive semidefiniteness of every `Q_i`.

mod expression;
mod verify;

pub use expression::{expression_report, host_expressions, ExpressionTerm, HostExpression};
pub use verify::{max_density_bound, verify, HostValue, VerificationReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag::{Flag, FlagBasis, FlagType};
use crate::graph::{parse_graph6, write_graph6, ForbiddenFamily, Graph, Hosts, MAX_CANONICAL};
use crate::linalg::{parse_rational, Rational, RationalMatrix};

/// One type with its flag list and matrix.
#[derive(Clone, Debug)]
pub struct TypeBlock {
    pub basis: FlagBasis,
    pub matrix: RationalMatrix,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub family: ForbiddenFamily,
    pub target: Graph,
    pub l: usize,
    pub blocks: Vec<TypeBlock>,
    pub claimed_bound: Rational,
    /// Optional reference numbering of the hosts, used only for cross-reference
    /// columns in reports.
    pub host_order: Option<Vec<Graph>>,
}

impl Certificate {
    pub fn new(
        family: ForbiddenFamily,
        target: Graph,
        l: usize,
        blocks: Vec<TypeBlock>,
        claimed_bound: Rational,
    ) -> Result<Self> {
        if l == 0 || l > MAX_CANONICAL {
            return Err(Error::cert(format!("l must be in 1..={MAX_CANONICAL}, got {l}")));
        }
        if target.order() > l {
            return Err(Error::cert(format!(
                "target has {} vertices, more than l = {l}",
                target.order()
            )));
        }
        for (i, block) in blocks.iter().enumerate() {
            let s = block.basis.flag_type().size();
            let m = block.basis.order();
            if 2 * m > l + s {
                return Err(Error::cert(format!(
                    "type {}: m = {m} violates m <= (l + |σ|)/2 = ({l} + {s})/2",
                    i + 1
                )));
            }
            if block.matrix.dim() != block.basis.len() {
                return Err(Error::cert(format!(
                    "type {}: matrix has dimension {}, but {} flags are listed",
                    i + 1,
                    block.matrix.dim(),
                    block.basis.len()
                )));
            }
            block
                .matrix
                .check_symmetric()
                .map_err(|e| Error::cert(format!("type {}: {e}", i + 1)))?;
            for (j, f) in block.basis.flags().iter().enumerate() {
                if !family.admits(f.graph()) {
                    return Err(Error::cert(format!(
                        "type {}: flag {} contains a forbidden subgraph",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Certificate {
            family,
            target,
            l,
            blocks,
            claimed_bound,
            host_order: None,
        })
    }

    /// One warning per type whose flag list omits admissible flags.
    pub fn completeness_warnings(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (i, block) in self.blocks.iter().enumerate() {
            let missing = block.basis.missing(&self.family)?;
            if !missing.is_empty() {
                out.push(format!(
                    "type {} lists {} of {} admissible flags",
                    i + 1,
                    block.basis.len(),
                    block.basis.len() + missing.len()
                ));
            }
        }
        Ok(out)
    }

    /// Position of every host in `host_order`, if one is given.
    pub fn reference_index(&self, hosts: &Hosts) -> Result<Option<Vec<usize>>> {
        let Some(order) = &self.host_order else {
            return Ok(None);
        };
        if order.len() != hosts.len() {
            return Err(Error::cert(format!(
                "host_order lists {} graphs, there are {} hosts",
                order.len(),
                hosts.len()
            )));
        }
        let mut index = vec![usize::MAX; hosts.len()];
        for (pos, g) in order.iter().enumerate() {
            let h = hosts
                .classify(g)
                .ok_or_else(|| Error::cert(format!("host_order entry {g} is not a host")))?;
            if index[h] != usize::MAX {
                return Err(Error::cert(format!("host_order repeats host {g}")));
            }
            index[h] = pos;
        }
        Ok(Some(index))
    }

    /// The same certificate with different matrices (same dimensions).
    pub fn with_matrices(&self, matrices: Vec<RationalMatrix>) -> Result<Self> {
        if matrices.len() != self.blocks.len() {
            return Err(Error::Dimension {
                expected: self.blocks.len(),
                found: matrices.len(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .zip(matrices)
            .map(|(b, m)| TypeBlock {
                basis: b.basis.clone(),
                matrix: m,
            })
            .collect();
        let mut c = Certificate::new(
            self.family.clone(),
            self.target,
            self.l,
            blocks,
            self.claimed_bound.clone(),
        )?;
        c.host_order = self.host_order.clone();
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            family: self.family.members().iter().map(write_graph6).collect(),
            target: write_graph6(&self.target),
            l: self.l,
            types: self
                .blocks
                .iter()
                .map(|b| TypeFile {
                    ty: write_graph6(b.basis.flag_type().graph()),
                    m: b.basis.order(),
                    flags: b
                        .basis
                        .flags()
                        .iter()
                        .map(|f| FlagFile {
                            graph: write_graph6(f.graph()),
                            labels: f.labels().iter().map(|v| v + 1).collect(),
                        })
                        .collect(),
                    matrix: b
                        .matrix
                        .rows()
                        .map(|r| r.iter().map(|v| v.to_string()).collect())
                        .collect(),
                })
                .collect(),
            claimed_bound: self.claimed_bound.to_string(),
            host_order: self
                .host_order
                .as_ref()
                .map(|o| o.iter().map(write_graph6).collect()),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("plain data serialises");
        s.push('\n');
        s
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    family: Vec<String>,
    target: String,
    l: usize,
    types: Vec<TypeFile>,
    claimed_bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    host_order: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeFile {
    #[serde(rename = "type")]
    ty: String,
    m: usize,
    flags: Vec<FlagFile>,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagFile {
    graph: String,
    labels: Vec<usize>,
}

fn graph_field(what: &str, s: &str) -> Result<Graph> {
    parse_graph6(s).map_err(|e| Error::cert(format!("{what}: {e}")))
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let file: CertificateFile =
        serde_json::from_str(text).map_err(|e| Error::cert(format!("schema: {e}")))?;
    let members = file
        .family
        .iter()
        .map(|s| graph_field("family", s))
        .collect::<Result<Vec<_>>>()?;
    let family = ForbiddenFamily::new(members).map_err(|e| Error::cert(format!("family: {e}")))?;
    let target = graph_field("target", &file.target)?;

    let mut blocks = Vec::with_capacity(file.types.len());
    for (i, t) in file.types.iter().enumerate() {
        let which = format!("type {}", i + 1);
        let ty = FlagType::new(graph_field(&which, &t.ty)?)
            .map_err(|e| Error::cert(format!("{which}: {e}")))?;
        let flags = t
            .flags
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let g = graph_field(&format!("{which} flag {}", j + 1), &f.graph)?;
                if f.labels.contains(&0) {
                    return Err(Error::cert(format!("{which} flag {}: labels are 1-based", j + 1)));
                }
                Flag::new(g, f.labels.iter().map(|v| v - 1).collect())
                    .map_err(|e| Error::cert(format!("{which} flag {}: {e}", j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = FlagBasis::new(ty, t.m, flags).map_err(|e| Error::cert(format!("{which}: {e}")))?;
        let matrix =
            RationalMatrix::parse_rows(&t.matrix).map_err(|e| Error::cert(format!("{which}: {e}")))?;
        blocks.push(TypeBlock { basis, matrix });
    }
    let claimed = parse_rational(&file.claimed_bound)
        .map_err(|e| Error::cert(format!("claimed_bound: {e}")))?;
    let mut cert = Certificate::new(family, target, file.l, blocks, claimed)?;
    if let Some(order) = &file.host_order {
        cert.host_order = Some(
            order
                .iter()
                .map(|s| graph_field("host_order", s))
                .collect::<Result<_>>()?,
        );
    }
    Ok(cert)
}
