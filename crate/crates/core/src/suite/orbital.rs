//! Orbital graphs of a transitive action and their connectivity.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::suite::perm_action::PermAction;
use crate::suite::search::{derangement_search, SearchResult};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, Serialize)]
pub struct OrbitalRecord {
    pub beta: u32,
    pub suborbit_size: usize,
    /// Weak connectivity of the orbital graph containing `(α, β)`.
    pub connected: bool,
    pub search: Option<SearchResult>,
}

impl OrbitalRecord {
    pub fn min_fixed_points(&self) -> Option<usize> {
        self.search.as_ref().and_then(|s| s.fixed_point_histogram.keys().next().copied())
    }
}

/// Visited arcs, as a bitset for small degrees and a hash set otherwise.
enum ArcSet {
    Bits(Vec<u64>, usize),
    Hash(HashSet<u64>),
}

impl ArcSet {
    fn new(degree: usize) -> Self {
        if degree <= 1 << 14 {
            ArcSet::Bits(vec![0; (degree * degree).div_ceil(64)], degree)
        } else {
            ArcSet::Hash(HashSet::new())
        }
    }

    fn insert(&mut self, a: u32, b: u32) -> bool {
        match self {
            ArcSet::Bits(bits, n) => {
                let i = a as usize * *n + b as usize;
                let fresh = bits[i / 64] & (1 << (i % 64)) == 0;
                bits[i / 64] |= 1 << (i % 64);
                fresh
            }
            ArcSet::Hash(set) => set.insert(((a as u64) << 32) | b as u64),
        }
    }
}

/// Number of arcs of the orbital graph of `(α, β)` and whether its weak
/// closure is connected, by closing the arc set under the generators.
pub fn orbital_graph(action: &PermAction, beta: u32, max_arcs: usize) -> Result<(usize, bool)> {
    let alpha = action.alpha();
    let gens = action.generators();
    let mut seen = ArcSet::new(action.degree());
    let mut uf = UnionFind::new(action.degree());
    let mut queue = vec![(alpha, beta)];
    seen.insert(alpha, beta);
    uf.union(alpha, beta);
    let mut cursor = 0;
    while cursor < queue.len() {
        let (a, b) = queue[cursor];
        cursor += 1;
        for g in gens {
            let (c, d) = (g.apply(a), g.apply(b));
            if seen.insert(c, d) {
                if queue.len() >= max_arcs {
                    return Err(Error::Budget(format!("orbital graph exceeds {max_arcs} arcs")));
                }
                queue.push((c, d));
                uf.union(c, d);
            }
        }
    }
    Ok((queue.len(), uf.components() == 1))
}

/// One record per non-diagonal suborbit, represented by its first point.
pub fn orbital_graphs(action: &PermAction, with_search: bool, stabilizer_cap: usize) -> Result<Vec<OrbitalRecord>> {
    let n = action.degree();
    let mut out = Vec::new();
    for sub in action.suborbits() {
        let beta = sub[0];
        if beta == action.alpha() {
            continue;
        }
        let (arcs, connected) = orbital_graph(action, beta, n.saturating_mul(n))?;
        if arcs != n * sub.len() {
            return Err(Error::Certification(format!(
                "orbital graph of ({}, {beta}) has {arcs} arcs, expected {}",
                action.alpha(),
                n * sub.len()
            )));
        }
        let search = if with_search { Some(derangement_search(action, beta, stabilizer_cap)?) } else { None };
        out.push(OrbitalRecord { beta, suborbit_size: sub.len(), connected, search });
    }
    Ok(out)
}

/// Primitivity by the orbital-graph criterion.
pub fn is_primitive_by_orbitals(action: &PermAction) -> Result<bool> {
    if !action.is_transitive() {
        return Ok(false);
    }
    let n = action.degree();
    for sub in action.suborbits() {
        if sub[0] != action.alpha() && !orbital_graph(action, sub[0], n.saturating_mul(n))?.1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn action(n: usize, cycles: &[&[&[u32]]]) -> PermAction {
        let gens = cycles.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
        PermAction::new(gens, 0, None, ChaCha8Rng::seed_from_u64(1)).unwrap()
    }

    #[test]
    fn natural_s3_single_connected_orbital() {
        let a = action(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let recs = orbital_graphs(&a, true, 100).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].suborbit_size, 2);
        assert!(recs[0].connected);
        assert!(is_primitive_by_orbitals(&a).unwrap());
    }

    #[test]
    fn c4_diagonal_pairs_disconnected() {
        let a = action(4, &[&[&[0, 1, 2, 3]]]);
        let (arcs, connected) = orbital_graph(&a, 2, 100).unwrap();
        assert_eq!(arcs, 4);
        assert!(!connected);
        assert!(orbital_graph(&a, 1, 100).unwrap().1);
        assert!(!is_primitive_by_orbitals(&a).unwrap());
    }

    #[test]
    fn suborbit_sizes_sum_to_degree() {
        let a = action(6, &[&[&[0, 1, 2, 3, 4, 5]], &[&[1, 5], &[2, 4]]]);
        let total: usize = a.suborbits().iter().map(|s| s.len()).sum();
        assert_eq!(total, 6);
        let recs = orbital_graphs(&a, false, 100).unwrap();
        assert_eq!(recs.iter().map(|r| r.suborbit_size).sum::<usize>(), 5);
    }

    #[test]
    fn arc_budget_enforced() {
        let a = action(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        assert!(matches!(orbital_graph(&a, 1, 3), Err(Error::Budget(_))));
    }
}
