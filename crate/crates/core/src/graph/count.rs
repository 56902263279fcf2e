use std::collections::HashSet;

use num_bigint::BigInt;

use super::{Graph, MAX_CANONICAL};
use crate::error::{Error, Result};
use crate::linalg::Rational;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Visit every `k`-subset of `g` in lexicographic order together with the
/// upper code of its induced subgraph (vertices in increasing order).
///
/// Subsets whose induced edge count would exceed `max_edges` are skipped
/// without being visited.
pub fn for_each_subset_code<F>(g: &Graph, k: usize, max_edges: Option<usize>, mut f: F)
where
    F: FnMut(&[usize], u64),
{
    if k == 0 || k > g.order() || k > 11 {
        return;
    }
    let mut chosen = Vec::with_capacity(k);
    walk(g, k, 0, 0, 0, max_edges.unwrap_or(usize::MAX), &mut chosen, &mut f);
}

#[allow(clippy::too_many_arguments)]
fn walk<F>(
    g: &Graph,
    k: usize,
    start: usize,
    code: u64,
    edges: usize,
    max_edges: usize,
    chosen: &mut Vec<usize>,
    f: &mut F,
) where
    F: FnMut(&[usize], u64),
{
    if chosen.len() == k {
        f(chosen, code);
        return;
    }
    let remaining = k - chosen.len();
    for v in start..=g.order() - remaining {
        let row = g.neighbors(v);
        let col = chosen.iter().fold(0u64, |acc, &u| acc << 1 | (row >> u & 1) as u64);
        let e = edges + col.count_ones() as usize;
        if e > max_edges {
            continue;
        }
        let shifted = code << chosen.len() | col;
        chosen.push(v);
        walk(g, k, v + 1, shifted, e, max_edges, chosen, f);
        chosen.pop();
    }
}

/// Recognises induced copies of a fixed small graph by its set of labelled codes.
#[derive(Clone, Debug)]
pub struct InducedMatcher {
    k: usize,
    edges: usize,
    codes: HashSet<u64>,
}

impl InducedMatcher {
    pub fn new(a: &Graph) -> Result<Self> {
        let k = a.order();
        if k > MAX_CANONICAL {
            return Err(Error::Size(format!(
                "pattern graphs are limited to {MAX_CANONICAL} vertices, got {k}"
            )));
        }
        let mut codes = HashSet::new();
        let mut perm: Vec<usize> = (0..k).collect();
        heap_permutations(&mut perm, k, &mut |p| {
            codes.insert(a.induced_by_order(p).upper_code());
        });
        Ok(InducedMatcher {
            k,
            edges: a.edge_count(),
            codes,
        })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn matches(&self, code: u64) -> bool {
        self.codes.contains(&code)
    }

    pub fn count_in(&self, g: &Graph) -> u64 {
        let mut count = 0;
        for_each_subset_code(g, self.k, Some(self.edges), |_, code| {
            if code.count_ones() as usize == self.edges && self.codes.contains(&code) {
                count += 1;
            }
        });
        count
    }
}

fn heap_permutations(p: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(p);
        return;
    }
    for i in 0..k {
        heap_permutations(p, k - 1, f);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Number of `|V(a)|`-subsets of `g` inducing a copy of `a`.
pub fn count_induced_copies(g: &Graph, a: &Graph) -> Result<u64> {
    Ok(InducedMatcher::new(a)?.count_in(g))
}

/// `count_induced_copies(g, a) / C(n, k)`, exactly.
pub fn induced_density(g: &Graph, a: &Graph) -> Result<Rational> {
    let count = count_induced_copies(g, a)?;
    let total = binomial(g.order(), a.order());
    if total == 0 {
        return Ok(Rational::from_integer(BigInt::from(0)));
    }
    Ok(Rational::new(BigInt::from(count), BigInt::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;
    use num_traits::{One, Zero};

    /// Independent route: classify every subset by canonical form.
    fn brute_count(g: &Graph, a: &Graph) -> u64 {
        let target = canonical_form(a).unwrap();
        let n = g.order();
        let k = a.order();
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .filter(|&m| {
                let s: Vec<usize> = (0..n).filter(|v| m >> v & 1 == 1).collect();
                canonical_form(&g.induced_subgraph(&s).unwrap()).unwrap() == target
            })
            .count() as u64
    }

    fn c5_blowup_2() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            let j = (i + 1) % 5;
            for x in 0..2 {
                for y in 0..2 {
                    edges.push((2 * i + x, 2 * j + y));
                }
            }
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(32, 5), 201_376);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(32, 16), 601_080_390);
    }

    #[test]
    fn c5_counts() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(count_induced_copies(&c5, &c5).unwrap(), 1);
        assert_eq!(brute_count(&Graph::petersen(), &c5), 12);
        assert_eq!(count_induced_copies(&Graph::petersen(), &c5).unwrap(), 12);
        assert_eq!(brute_count(&c5_blowup_2(), &c5), 32);
        assert_eq!(count_induced_copies(&c5_blowup_2(), &c5).unwrap(), 32);
    }

    #[test]
    fn densities() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(induced_density(&c5, &c5).unwrap().is_one());
        assert_eq!(
            induced_density(&c5_blowup_2(), &c5).unwrap(),
            Rational::new(8.into(), 63.into())
        );
        assert!(induced_density(&Graph::empty(6).unwrap(), &c5).unwrap().is_zero());
    }

    #[test]
    fn subset_walk_visits_every_subset_once() {
        let g = Graph::petersen();
        let mut seen = HashSet::new();
        for_each_subset_code(&g, 4, None, |s, code| {
            assert!(seen.insert(s.to_vec()));
            assert_eq!(g.induced_by_order(s).upper_code(), code);
        });
        assert_eq!(seen.len() as u64, binomial(10, 4));
    }

    #[test]
    fn counting_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let patterns = [
            Graph::cycle(5).unwrap(),
            Graph::path(4).unwrap(),
            Graph::single_edge(3).unwrap(),
            Graph::empty(3).unwrap(),
            Graph::cycle(4).unwrap(),
        ];
        for _ in 0..40 {
            let n = rng.gen_range(5..=10);
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.4) {
                        g.set_edge(i, j, true);
                    }
                }
            }
            for a in &patterns {
                assert_eq!(count_induced_copies(&g, a).unwrap(), brute_count(&g, a));
            }
        }
    }

    #[test]
    fn density_is_one_iff_every_subset_matches() {
        let k4 = Graph::complete(4).unwrap();
        assert!(induced_density(&Graph::complete(7).unwrap(), &k4).unwrap().is_one());
        let d = induced_density(&Graph::petersen(), &Graph::empty(3).unwrap()).unwrap();
        assert!(d > Rational::zero() && d < Rational::one());
    }
}
