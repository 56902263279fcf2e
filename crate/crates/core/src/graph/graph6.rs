//! Headerless graph6 for graphs on at most 32 vertices.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let first = *bytes.first().ok_or_else(|| err(0, "empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(err(0, format!("byte {first:#04x} outside 63..=126")));
    }
    if first == 126 {
        return Err(err(0, format!("more than {MAX_VERTICES} vertices")));
    }
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_VERTICES {
        return Err(err(0, format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let pairs = n * (n - 1) / 2;
    let body_len = pairs.div_ceil(6);
    if bytes.len() != 1 + body_len {
        return Err(err(
            bytes.len().min(1 + body_len),
            format!(
                "expected {} bytes for {n} vertices, found {}",
                1 + body_len,
                bytes.len()
            ),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for (offset, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(err(offset, format!("byte {b:#04x} outside 63..=126")));
        }
        let chunk = b - 63;
        for bit in (0..6).rev() {
            let set = chunk >> bit & 1 == 1;
            if k < pairs {
                if set {
                    let (i, j) = pair_at(k);
                    g.set_edge(i, j, true);
                }
            } else if set {
                return Err(err(offset, "nonzero padding bits"));
            }
            k += 1;
        }
    }
    Ok(g)
}

/// The `k`-th pair in column order `(0,1), (0,2), (1,2), (0,3), ...`.
fn pair_at(k: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= k {
        start += j;
        j += 1;
    }
    (k - start, j)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        // Reference strings from networkx's graph6 writer.
        assert_eq!(write_graph6(&Graph::empty(5).unwrap()), "D??");
        assert_eq!(write_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(write_graph6(&Graph::cycle(5).unwrap()), "Dhc");
        assert_eq!(write_graph6(&Graph::petersen()), "IheA@GUAo");
        assert!(write_graph6(&Graph::complete(32).unwrap()).starts_with("_~~~~~~~~~"));
    }

    #[test]
    fn parses_known_strings() {
        assert_eq!(parse_graph6("D??").unwrap(), Graph::empty(5).unwrap());
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5.edges(), vec![(0, 1), (1, 2), (2, 3), (0, 4), (3, 4)]);
        assert_eq!(parse_graph6("IheA@GUAo\n").unwrap(), Graph::petersen());
    }

    #[test]
    fn errors_name_the_offset() {
        let offset = |s: &str| match parse_graph6(s) {
            Err(Error::Graph6 { offset, .. }) => offset,
            other => panic!("expected graph6 error, got {other:?}"),
        };
        assert_eq!(offset(""), 0);
        assert_eq!(offset("?"), 0);
        assert_eq!(offset(">>graph6<<D??"), 0);
        assert_eq!(offset("~?@A"), 0);
        assert_eq!(offset("D?"), 2);
        assert_eq!(offset("D???"), 3);
        assert_eq!(offset("D? "), 2);
        // 10 pairs occupy 2 bytes, the last 2 bits are padding.
        assert_eq!(offset("D?@"), 2);
    }

    #[test]
    fn pair_order_matches_column_layout() {
        let got: Vec<_> = (0..6).map(pair_at).collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=32).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        g.set_edge(i, j, bits[k]);
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_graph()) {
            let s = write_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
            prop_assert_eq!(write_graph6(&parse_graph6(&s).unwrap()), s);
        }
    }
}
