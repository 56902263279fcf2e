use super::{canonical_form, Graph};
use crate::error::{Error, Result};

/// Forbidden subgraphs, stored as canonical representatives.
///
/// A graph is free of the family when no member occurs as a (not necessarily
/// induced) subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    members: Vec<Graph>,
}

impl ForbiddenFamily {
    pub fn new(members: impl IntoIterator<Item = Graph>) -> Result<Self> {
        let mut forms = Vec::new();
        for g in members {
            if g.edge_count() == 0 {
                return Err(Error::arg(format!("forbidden graph {g} has no edges")));
            }
            forms.push(canonical_form(&g)?);
        }
        forms.sort_by_key(|f| (f.n, f.edge_count(), f.bits));
        let before = forms.len();
        forms.dedup();
        if forms.len() != before {
            return Err(Error::arg("forbidden family members must be pairwise non-isomorphic"));
        }
        if forms.is_empty() {
            return Err(Error::arg("forbidden family is empty"));
        }
        Ok(ForbiddenFamily {
            members: forms.iter().map(|f| f.graph()).collect(),
        })
    }

    pub fn triangle() -> Self {
        ForbiddenFamily::new([Graph::complete(3).unwrap()]).unwrap()
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn admits(&self, g: &Graph) -> bool {
        !contains_forbidden(g, self)
    }
}

pub fn contains_forbidden(g: &Graph, fam: &ForbiddenFamily) -> bool {
    fam.members.iter().any(|f| contains_subgraph(g, f))
}

/// Whether `pattern` maps injectively into `g` preserving edges.
pub fn contains_subgraph(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.order();
    if k > g.order() || pattern.edge_count() > g.edge_count() {
        return false;
    }
    // Place high-degree pattern vertices first to fail early.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    let mut image = vec![0usize; k];
    extend(g, pattern, &order, 0, 0, &mut image)
}

fn extend(
    g: &Graph,
    pattern: &Graph,
    order: &[usize],
    depth: usize,
    used: u32,
    image: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    let mut candidates = g.vertex_mask() & !used;
    for &prev in &order[..depth] {
        if pattern.has_edge(pv, prev) {
            candidates &= g.neighbors(image[prev]);
        }
    }
    let need = pattern.degree(pv);
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        if g.degree(v) < need {
            continue;
        }
        image[pv] = v;
        if extend(g, pattern, order, depth + 1, used | 1 << v, image) {
            return true;
        }
    }
    false
}
