//! Types, flags and flag bases.
//!
//! A *type* is a graph whose vertices carry the labels `1..=|σ|` in vertex
//! order. A *flag* over that type is a larger graph together with an
//! injective labelling of `|σ|` of its vertices such that the labelled
//! vertices, taken in label order, induce the type. Flags are compared up to
//! isomorphisms that fix every label.

mod density;

pub use density::{
    averaging_identity_check, c_h, flag_density, pair_density_table, subgraph_distribution,
    PairDensityTable,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{canonical_labeling, CanonicalForm, ForbiddenFamily, Graph, MAX_CANONICAL};

/// A fully labelled graph; vertex `i` carries label `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FlagType {
    graph: Graph,
}

impl FlagType {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.order() > MAX_CANONICAL {
            return Err(Error::Size(format!(
                "types are limited to {MAX_CANONICAL} vertices, got {}",
                graph.order()
            )));
        }
        Ok(FlagType { graph })
    }

    /// The three types on three vertices: no edges, the edge `{1,2}`, and the
    /// path `1-2-3`.
    pub fn three_vertex(edges: usize) -> Result<Self> {
        let g = match edges {
            0 => Graph::empty(3)?,
            1 => Graph::from_edges(3, &[(0, 1)])?,
            2 => Graph::from_edges(3, &[(0, 1), (1, 2)])?,
            _ => return Err(Error::arg("three-vertex types have 0, 1 or 2 edges")),
        };
        FlagType::new(g)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.graph.order()
    }
}

pub fn make_type(g: &Graph) -> Result<FlagType> {
    FlagType::new(*g)
}

/// A graph with `labels[i]` the vertex carrying label `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    graph: Graph,
    labels: Vec<usize>,
    key: CanonicalForm,
}

impl Flag {
    pub fn new(graph: Graph, labels: Vec<usize>) -> Result<Self> {
        let m = graph.order();
        if m > MAX_CANONICAL {
            return Err(Error::Size(format!(
                "flags are limited to {MAX_CANONICAL} vertices, got {m}"
            )));
        }
        let mut seen = 0u32;
        for &v in &labels {
            if v >= m {
                return Err(Error::arg(format!("label vertex {v} out of range for {m} vertices")));
            }
            if seen >> v & 1 == 1 {
                return Err(Error::arg(format!("vertex {v} carries two labels")));
            }
            seen |= 1 << v;
        }
        let order = labelled_order(m, &labels);
        let key = flag_key(&graph, &order, labels.len());
        Ok(Flag { graph, labels, key })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn type_size(&self) -> usize {
        self.labels.len()
    }

    /// The labelled vertices, in label order.
    pub fn type_graph(&self) -> Graph {
        if self.labels.is_empty() {
            // The empty type has no graph; callers only compare sizes then.
            return Graph::empty(1).unwrap();
        }
        self.graph.induced_by_order(&self.labels)
    }

    pub fn induces(&self, ty: &FlagType) -> bool {
        self.labels.len() == ty.size() && (ty.size() == 0 || self.type_graph() == *ty.graph())
    }

    /// Label-preserving canonical form.
    pub fn key(&self) -> CanonicalForm {
        self.key
    }

    /// The same flag with labelled vertices first, in canonical labelling.
    pub fn canonical(&self) -> Flag {
        let s = self.labels.len();
        Flag {
            graph: self.key.graph(),
            labels: (0..s).collect(),
            key: self.key,
        }
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag({}, labels {:?})", self.graph, self.labels)
    }
}

/// Labelled vertices in label order, then the rest increasing.
pub(crate) fn labelled_order(m: usize, labels: &[usize]) -> Vec<usize> {
    let mut order = labels.to_vec();
    order.extend((0..m).filter(|v| !labels.contains(v)));
    order
}

/// Canonical form of `g.induced_by_order(order)` with the first `s` positions fixed.
pub(crate) fn flag_key(g: &Graph, order: &[usize], s: usize) -> CanonicalForm {
    let h = g.induced_by_order(order);
    canonical_labeling(&h, s).expect("order checked by caller").0
}

pub fn flag_isomorphic(f1: &Flag, f2: &Flag) -> Result<bool> {
    if f1.type_size() != f2.type_size() || f1.type_graph() != f2.type_graph() {
        return Err(Error::arg("flags are over different types"));
    }
    Ok(f1.key == f2.key)
}

/// Pairwise non-isomorphic σ-flags of a fixed order, in a fixed index order.
#[derive(Clone, Debug)]
pub struct FlagBasis {
    ty: FlagType,
    m: usize,
    flags: Vec<Flag>,
    index: HashMap<CanonicalForm, usize>,
}

impl FlagBasis {
    /// A basis in caller-chosen order. Flags must induce `ty`, have order `m`,
    /// and be pairwise non-isomorphic.
    pub fn new(ty: FlagType, m: usize, flags: Vec<Flag>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, f) in flags.iter().enumerate() {
            if f.order() != m {
                return Err(Error::arg(format!(
                    "flag {} has order {}, expected {m}",
                    i + 1,
                    f.order()
                )));
            }
            if !f.induces(&ty) {
                return Err(Error::arg(format!("flag {} does not induce the type", i + 1)));
            }
            if let Some(j) = index.insert(f.key, i) {
                return Err(Error::arg(format!(
                    "flags {} and {} are isomorphic",
                    j + 1,
                    i + 1
                )));
            }
        }
        Ok(FlagBasis {
            ty,
            m,
            flags,
            index,
        })
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ty
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn position(&self, key: &CanonicalForm) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Index of the flag induced on `order` (labelled vertices first).
    pub(crate) fn classify(&self, g: &Graph, order: &[usize]) -> Option<usize> {
        self.position(&flag_key(g, order, self.ty.size()))
    }

    /// Admissible flags missing from this basis.
    pub fn missing(&self, fam: &ForbiddenFamily) -> Result<Vec<Flag>> {
        let full = enumerate_flags(&self.ty, self.m, fam)?;
        Ok(full
            .flags
            .into_iter()
            .filter(|f| self.position(&f.key).is_none())
            .collect())
    }
}

/// All admissible σ-flags of order `m`, ordered by edge count and then
/// labelled canonical code.
pub fn enumerate_flags(ty: &FlagType, m: usize, fam: &ForbiddenFamily) -> Result<FlagBasis> {
    let s = ty.size();
    if m < s || m > MAX_CANONICAL {
        return Err(Error::Size(format!(
            "flag order must satisfy {s} <= m <= {MAX_CANONICAL}, got {m}"
        )));
    }
    let labels: Vec<usize> = (0..s).collect();
    let mut level: Vec<Graph> = if fam.admits(ty.graph()) {
        vec![*ty.graph()]
    } else {
        vec![]
    };
    for k in s + 1..=m {
        let mut seen: BTreeMap<(usize, u32), Graph> = BTreeMap::new();
        for g in &level {
            for nbhd in 0u32..1 << (k - 1) {
                let mut h = crate::graph::Graph::empty(k)?;
                for (u, v) in g.edges() {
                    h.set_edge(u, v, true);
                }
                for u in 0..k - 1 {
                    if nbhd >> u & 1 == 1 {
                        h.set_edge(u, k - 1, true);
                    }
                }
                if !fam.admits(&h) {
                    continue;
                }
                let (form, _) = canonical_labeling(&h, s)?;
                seen.entry((form.edge_count(), form.bits))
                    .or_insert_with(|| form.graph());
            }
        }
        level = seen.into_values().collect();
    }
    if m == s {
        level.sort_by_key(|g| g.edge_count());
    }
    let flags = level
        .into_iter()
        .map(|g| Flag::new(g, labels.clone()))
        .collect::<Result<Vec<_>>>()?;
    FlagBasis::new(*ty, m, flags)
}
