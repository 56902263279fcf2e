//! The shipped pentagon certificate: `C5` density at most `24/625` in
//! triangle-free graphs, with hosts on five vertices and three types on three
//! vertices.

use crate::certificate::{parse_certificate, Certificate};

pub const CERTIFICATE_JSON: &str = include_str!("../data/erdos-pentagon.cert.json");

pub fn certificate() -> Certificate {
    parse_certificate(CERTIFICATE_JSON).expect("shipped certificate is well formed")
}
