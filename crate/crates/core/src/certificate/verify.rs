use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Value};

use super::Certificate;
use crate::error::{Error, Result};
use crate::flag::pair_density_table;
use crate::graph::{induced_density, write_graph6, ForbiddenFamily, Graph, Hosts};
use crate::linalg::{approx, psd_check, PsdVerdict, Rational};

/// Everything the verifier computed for one host.
#[derive(Clone, Debug)]
pub struct HostValue {
    /// Position in the deterministic host enumeration.
    pub index: usize,
    /// Position in the certificate's `host_order`, if it has one.
    pub reference: Option<usize>,
    pub graph: Graph,
    pub density: Rational,
    pub contributions: Vec<Rational>,
    pub total: Rational,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub l: usize,
    pub psd: Vec<PsdVerdict>,
    pub hosts: Vec<HostValue>,
    pub bound: Rational,
    pub claimed_bound: Rational,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn all_psd(&self) -> bool {
        self.psd.iter().all(PsdVerdict::is_psd)
    }

    /// Hosts attaining the bound.
    pub fn tight_hosts(&self) -> Vec<&HostValue> {
        self.hosts.iter().filter(|h| h.total == self.bound).collect()
    }

    /// Prose followed by `@`-prefixed machine lines. With `approx`, decimal
    /// values are appended to the prose lines only.
    pub fn render(&self, approx_values: bool) -> String {
        let show = |r: &Rational| {
            if approx_values {
                format!("{r} (~{:.6})", approx(r))
            } else {
                r.to_string()
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "hosts: {} (order {})", self.hosts.len(), self.l);
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for (i, v) in self.psd.iter().enumerate() {
            match v {
                PsdVerdict::Psd(f) => {
                    let _ = writeln!(out, "type {}: PSD (rank {})", i + 1, f.rank());
                }
                PsdVerdict::NotPsd(w) => {
                    let vec: Vec<String> = w.vector.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "type {}: NOT PSD, x = ({}) gives x^T Q x = {}",
                        i + 1,
                        vec.join(", "),
                        w.value
                    );
                }
            }
        }
        for h in &self.hosts {
            let reference = h
                .reference
                .map(|r| format!(" (ref H{})", r + 1))
                .unwrap_or_default();
            let parts: Vec<String> = h.contributions.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                out,
                "H{} {}{}: d_A = {}, c = [{}], total = {}",
                h.index + 1,
                write_graph6(&h.graph),
                reference,
                h.density,
                parts.join(", "),
                show(&h.total)
            );
        }
        let _ = writeln!(
            out,
            "bound: {}, claimed: {}, verdict: {}",
            show(&self.bound),
            show(&self.claimed_bound),
            if self.passed { "PASS" } else { "FAIL" }
        );
        for (i, v) in self.psd.iter().enumerate() {
            let _ = writeln!(out, "@psd\t{}\t{}", i + 1, if v.is_psd() { "yes" } else { "no" });
        }
        for h in &self.hosts {
            let parts: Vec<String> = h.contributions.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                out,
                "@host\t{}\t{}\t{}\t{}",
                h.index + 1,
                h.density,
                parts.join(","),
                h.total
            );
        }
        let _ = writeln!(out, "@bound\t{}", self.bound);
        let _ = writeln!(out, "@claimed\t{}", self.claimed_bound);
        let _ = writeln!(out, "@verdict\t{}", if self.passed { "pass" } else { "fail" });
        out
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serialises")
    }

    pub fn to_json(&self) -> Value {
        let psd: Vec<Value> = self
            .psd
            .iter()
            .map(|v| match v {
                PsdVerdict::Psd(f) => json!({"psd": true, "rank": f.rank()}),
                PsdVerdict::NotPsd(w) => json!({
                    "psd": false,
                    "witness": w.vector.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "value": w.value.to_string(),
                }),
            })
            .collect();
        let hosts: Vec<Value> = self
            .hosts
            .iter()
            .map(|h| {
                json!({
                    "index": h.index + 1,
                    "reference": h.reference.map(|r| r + 1),
                    "graph": write_graph6(&h.graph),
                    "density": h.density.to_string(),
                    "contributions": h.contributions.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "total": h.total.to_string(),
                })
            })
            .collect();
        json!({
            "l": self.l,
            "psd": psd,
            "hosts": hosts,
            "bound": self.bound.to_string(),
            "claimed_bound": self.claimed_bound.to_string(),
            "warnings": self.warnings,
            "passed": self.passed,
        })
    }
}

/// Exact verification of a certificate.
pub fn verify(cert: &Certificate) -> Result<VerificationReport> {
    let hosts = Hosts::enumerate(cert.l, &cert.family)?;
    if hosts.is_empty() {
        return Err(Error::cert("the family admits no graph on l vertices"));
    }
    let reference = cert.reference_index(&hosts)?;
    let psd = cert
        .blocks
        .iter()
        .map(|b| psd_check(&b.matrix))
        .collect::<Result<Vec<_>>>()?;

    let mut values = Vec::with_capacity(hosts.len());
    for (index, h) in hosts.graphs().iter().enumerate() {
        let density = induced_density(h, &cert.target)?;
        let contributions = cert
            .blocks
            .iter()
            .map(|b| pair_density_table(&b.basis, h)?.contract(&b.matrix))
            .collect::<Result<Vec<_>>>()?;
        let total = contributions.iter().fold(density.clone(), |acc, c| acc + c);
        values.push(HostValue {
            index,
            reference: reference.as_ref().map(|r| r[index]),
            graph: *h,
            density,
            contributions,
            total,
        });
    }
    let bound = values
        .iter()
        .map(|v| &v.total)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let passed = psd.iter().all(PsdVerdict::is_psd) && bound <= cert.claimed_bound;
    Ok(VerificationReport {
        l: cert.l,
        psd,
        hosts: values,
        bound,
        claimed_bound: cert.claimed_bound.clone(),
        warnings: cert.completeness_warnings()?,
        passed,
    })
}

/// The trivial bound `max_H d_A(H)` over hosts on `l` vertices.
pub fn max_density_bound(l: usize, fam: &ForbiddenFamily, target: &Graph) -> Result<Rational> {
    let hosts = Hosts::enumerate(l, fam)?;
    let mut best: Option<Rational> = None;
    for h in hosts.graphs() {
        let d = induced_density(h, target)?;
        if best.as_ref().is_none_or(|b| d > *b) {
            best = Some(d);
        }
    }
    best.ok_or_else(|| Error::Argument("the family admits no graph on l vertices".into()))
}
