use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::{
    binomial, canonical_form, canonical_labeling, for_each_subset_code, CanonicalForm,
    ForbiddenFamily, Graph, MAX_CANONICAL,
};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// One representative per isomorphism class of `fam`-free graphs on `l`
/// vertices, ordered by `(edge count, canonical bits)`.
///
/// Each representative is returned in its canonical labelling.
pub fn enumerate_free_graphs(l: usize, fam: &ForbiddenFamily) -> Result<Vec<Graph>> {
    if l == 0 || l > MAX_CANONICAL {
        return Err(Error::Size(format!(
            "host order must be in 1..={MAX_CANONICAL}, got {l}"
        )));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?];
    for k in 2..=l {
        let mut seen: BTreeMap<(usize, u32), Graph> = BTreeMap::new();
        for g in &level {
            for nbhd in 0u32..1 << (k - 1) {
                let mut h = grow(g);
                for u in 0..k - 1 {
                    if nbhd >> u & 1 == 1 {
                        h.set_edge(u, k - 1, true);
                    }
                }
                if !fam.admits(&h) {
                    continue;
                }
                let form = canonical_form(&h)?;
                seen.entry((form.edge_count(), form.bits))
                    .or_insert_with(|| form.graph());
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

/// Copy of `g` with one extra isolated vertex.
pub(crate) fn grow(g: &Graph) -> Graph {
    let mut h = Graph::empty(g.order() + 1).expect("caller keeps orders small");
    for (u, v) in g.edges() {
        h.set_edge(u, v, true);
    }
    h
}

/// The host family: all `fam`-free graphs on `l` vertices, indexed in
/// enumeration order.
#[derive(Clone, Debug)]
pub struct Hosts {
    l: usize,
    family: ForbiddenFamily,
    graphs: Vec<Graph>,
    index: HashMap<CanonicalForm, usize>,
}

impl Hosts {
    pub fn enumerate(l: usize, family: &ForbiddenFamily) -> Result<Self> {
        let graphs = enumerate_free_graphs(l, family)?;
        let index = graphs
            .iter()
            .enumerate()
            .map(|(i, g)| Ok((canonical_form(g)?, i)))
            .collect::<Result<_>>()?;
        Ok(Hosts {
            l,
            family: family.clone(),
            graphs,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.l
    }

    pub fn family(&self) -> &ForbiddenFamily {
        &self.family
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Index of the host isomorphic to `g`, if any.
    pub fn classify(&self, g: &Graph) -> Option<usize> {
        if g.order() != self.l {
            return None;
        }
        let (form, _) = canonical_labeling(g, 0).ok()?;
        self.index.get(&form).copied()
    }

    /// `p(H; g)` for every host `H`: the probability that a uniform
    /// `l`-subset of `g` induces `H`.
    pub fn distribution(&self, g: &Graph) -> Result<Vec<Rational>> {
        if g.order() < self.l {
            return Err(Error::Size(format!(
                "graph has {} vertices, fewer than the host order {}",
                g.order(),
                self.l
            )));
        }
        if !self.family.admits(g) {
            return Err(Error::NotFree);
        }
        let mut counts = vec![0u64; self.graphs.len()];
        let mut cache: HashMap<u64, usize> = HashMap::new();
        let mut missing = false;
        for_each_subset_code(g, self.l, None, |_, code| {
            let idx = *cache.entry(code).or_insert_with(|| {
                self.classify(&Graph::from_upper_code(self.l, code))
                    .unwrap_or(usize::MAX)
            });
            match counts.get_mut(idx) {
                Some(c) => *c += 1,
                None => missing = true,
            }
        });
        if missing {
            return Err(Error::NotFree);
        }
        let total = BigInt::from(binomial(g.order(), self.l));
        Ok(counts
            .into_iter()
            .map(|c| Rational::new(BigInt::from(c), total.clone()))
            .collect())
    }
}

#[cfg(test)]
pub(crate) fn sum(values: &[Rational]) -> Rational {
    values.iter().fold(<Rational as num_traits::Zero>::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use std::collections::BTreeSet;

    /// Full scan over all labelled graphs on `l` vertices.
    fn brute_force_forms(l: usize, fam: &ForbiddenFamily) -> BTreeSet<CanonicalForm> {
        let pairs = l * (l - 1) / 2;
        (0u64..1 << pairs)
            .map(|code| Graph::from_upper_code(l, code))
            .filter(|g| fam.admits(g))
            .map(|g| canonical_form(&g).unwrap())
            .collect()
    }

    #[test]
    fn triangle_free_counts() {
        let fam = ForbiddenFamily::triangle();
        let counts: Vec<usize> = (1..=6)
            .map(|l| enumerate_free_graphs(l, &fam).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 7, 14, 38]);
    }

    #[test]
    fn enumeration_is_complete_and_duplicate_free() {
        let families = [
            ForbiddenFamily::triangle(),
            ForbiddenFamily::new([Graph::cycle(4).unwrap()]).unwrap(),
            ForbiddenFamily::new([Graph::complete(3).unwrap(), Graph::cycle(4).unwrap()]).unwrap(),
        ];
        for fam in &families {
            for l in 1..=6 {
                let listed: Vec<CanonicalForm> = enumerate_free_graphs(l, fam)
                    .unwrap()
                    .iter()
                    .map(|g| canonical_form(g).unwrap())
                    .collect();
                let unique: BTreeSet<_> = listed.iter().copied().collect();
                assert_eq!(unique.len(), listed.len());
                assert_eq!(unique, brute_force_forms(l, fam), "l = {l}");
            }
        }
    }

    #[test]
    fn order_is_edges_then_bits() {
        let hosts = enumerate_free_graphs(5, &ForbiddenFamily::triangle()).unwrap();
        let keys: Vec<_> = hosts
            .iter()
            .map(|g| (g.edge_count(), canonical_form(g).unwrap().bits))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(hosts[0], Graph::empty(5).unwrap());
        for g in &hosts {
            assert_eq!(canonical_form(g).unwrap().bits as u64, g.upper_code());
        }
    }

    #[test]
    fn three_vertex_hosts() {
        let hosts = enumerate_free_graphs(3, &ForbiddenFamily::triangle()).unwrap();
        let edges: Vec<usize> = hosts.iter().map(Graph::edge_count).collect();
        assert_eq!(edges, vec![0, 1, 2]);
    }

    #[test]
    fn distribution_examples() {
        let fam = ForbiddenFamily::triangle();
        let hosts = Hosts::enumerate(5, &fam).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        let c5_idx = hosts.classify(&c5).unwrap();
        let p = hosts.distribution(&c5).unwrap();
        for (i, v) in p.iter().enumerate() {
            assert_eq!(v.is_one(), i == c5_idx);
        }
        let p = hosts.distribution(&Graph::empty(9).unwrap()).unwrap();
        assert!(p[0].is_one());
        assert!(sum(&hosts.distribution(&Graph::petersen()).unwrap()).is_one());
        assert_eq!(
            hosts.distribution(&Graph::complete(5).unwrap()),
            Err(Error::NotFree)
        );
        assert!(hosts.distribution(&Graph::empty(4).unwrap()).is_err());
    }
}
