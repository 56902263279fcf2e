use super::Graph;
use crate::error::{Error, Result};

/// Largest order for which canonical forms are computed.
pub const MAX_CANONICAL: usize = 8;

/// Lexicographically smallest upper-triangle code over all vertex permutations.
///
/// `bits` holds the `n(n-1)/2` adjacency bits in graph6 column order with the
/// first pair most significant, so integer order is lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u8,
    pub bits: u32,
}

impl CanonicalForm {
    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        Graph::from_upper_code(self.n as usize, self.bits as u64)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g, 0).map(|(form, _)| form)
}

/// Minimal code over permutations that keep vertices `0..fixed` in place.
///
/// Returns the form together with an ordering `order` such that
/// `g.induced_by_order(&order)` has exactly that code.
pub fn canonical_labeling(g: &Graph, fixed: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > MAX_CANONICAL {
        return Err(Error::Size(format!(
            "canonical forms are limited to {MAX_CANONICAL} vertices, got {n}"
        )));
    }
    if fixed > n {
        return Err(Error::arg("more fixed vertices than the graph has"));
    }
    let (bits, order) = min_code(g, fixed);
    Ok((
        CanonicalForm {
            n: n as u8,
            bits,
        },
        order,
    ))
}

#[derive(Clone, Copy)]
struct Partial {
    used: u32,
    order: [u8; MAX_CANONICAL],
}

/// Level-by-level search: all partial orderings at a given depth share the
/// same code prefix, so only extensions achieving the minimal next column
/// survive.
fn min_code(g: &Graph, fixed: usize) -> (u32, Vec<usize>) {
    let n = g.order();
    let mut level = vec![Partial {
        used: 0,
        order: [0; MAX_CANONICAL],
    }];
    for (pos, v) in (0..fixed).enumerate() {
        level[0].order[pos] = v as u8;
        level[0].used |= 1 << v;
    }
    let mut code = 0u32;
    for k in 0..fixed {
        code = code << k | column(g, &level[0].order[..k], level[0].order[k] as usize);
    }

    let mut next = Vec::new();
    for k in fixed..n {
        let mut best = u32::MAX;
        next.clear();
        for p in &level {
            let mut free = !p.used & ((1u32 << n) - 1);
            while free != 0 {
                let v = free.trailing_zeros() as usize;
                free &= free - 1;
                let col = column(g, &p.order[..k], v);
                if col > best {
                    continue;
                }
                if col < best {
                    best = col;
                    next.clear();
                }
                let mut q = *p;
                q.order[k] = v as u8;
                q.used |= 1 << v;
                next.push(q);
            }
        }
        code = code << k | best;
        std::mem::swap(&mut level, &mut next);
    }
    let order = level[0].order[..n].iter().map(|&v| v as usize).collect();
    (code, order)
}

/// Adjacency of `v` to the already placed vertices, earliest placed first.
#[inline]
fn column(g: &Graph, placed: &[u8], v: usize) -> u32 {
    let row = g.neighbors(v);
    placed
        .iter()
        .fold(0u32, |acc, &u| acc << 1 | (row >> u & 1))
}
