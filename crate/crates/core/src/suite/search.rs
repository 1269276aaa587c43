//! Searches over the elements mapping `α` to `β`, the coset `G_α·u`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::suite::perm_action::PermAction;

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub alpha: u32,
    pub beta: u32,
    pub candidates: usize,
    /// First candidate (in enumeration order) satisfying the predicate.
    #[serde(serialize_with = "serialize_perm")]
    pub found: Option<Perm>,
    /// Fixed-point count -> number of candidates.
    pub fixed_point_histogram: BTreeMap<usize, usize>,
}

fn serialize_perm<S: serde::Serializer>(p: &Option<Perm>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(p.images()),
        None => s.serialize_none(),
    }
}

fn scan(action: &PermAction, beta: u32, cap: usize, wanted: impl Fn(usize) -> bool) -> Result<SearchResult> {
    let alpha = action.alpha();
    if alpha == beta {
        return Err(Error::Domain("the two points must differ".into()));
    }
    let u = action.transporter(beta)?;
    let mut found = None;
    let mut hist = BTreeMap::new();
    let stab = action.stabilizer_elements(cap)?;
    for h in &stab {
        let g = h.compose(&u)?;
        let f = g.fixed_point_count();
        *hist.entry(f).or_insert(0) += 1;
        if found.is_none() && wanted(f) {
            found = Some(g);
        }
    }
    if let Some(g) = &found {
        if g.apply(alpha) != beta || !wanted(g.fixed_point_count()) {
            return Err(Error::Certification("search returned an element failing its own test".into()));
        }
    }
    Ok(SearchResult { alpha, beta, candidates: stab.len(), found, fixed_point_histogram: hist })
}

/// An element mapping `α` to `β` with no fixed points.
pub fn derangement_search(action: &PermAction, beta: u32, cap: usize) -> Result<SearchResult> {
    scan(action, beta, cap, |f| f == 0)
}

/// An element mapping `α` to `β` whose fixed-point count is not 1.
pub fn fixne1_search(action: &PermAction, beta: u32, cap: usize) -> Result<SearchResult> {
    scan(action, beta, cap, |f| f != 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub degree: usize,
    pub pairs_checked: usize,
    /// Points `β` for which every element mapping `α` to `β` fixes exactly one point.
    pub violations: Vec<u32>,
    /// Over all pairs: the smallest fixed-point count attainable other than 1 -> number of pairs.
    pub best_counts: BTreeMap<usize, usize>,
}

/// Runs [`fixne1_search`] for `α` against every other point. By
/// transitivity this covers all ordered pairs of distinct points.
pub fn fixne1_sweep(action: &PermAction, cap: usize) -> Result<SweepReport> {
    if !action.is_transitive() {
        return Err(Error::Domain("sweep needs a transitive action".into()));
    }
    let mut violations = Vec::new();
    let mut best_counts = BTreeMap::new();
    let mut pairs = 0;
    for beta in 0..action.degree() as u32 {
        if beta == action.alpha() {
            continue;
        }
        pairs += 1;
        let r = fixne1_search(action, beta, cap)?;
        match r.fixed_point_histogram.keys().copied().find(|&f| f != 1) {
            Some(f) => *best_counts.entry(f).or_insert(0) += 1,
            None => violations.push(beta),
        }
    }
    Ok(SweepReport { degree: action.degree(), pairs_checked: pairs, violations, best_counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn action(n: usize, gens: Vec<Perm>) -> PermAction {
        let _ = n;
        PermAction::new(gens, 0, None, ChaCha8Rng::seed_from_u64(3)).unwrap()
    }

    #[test]
    fn regular_c3_always_has_derangements() {
        let a = action(3, vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]);
        for beta in 1..3 {
            let r = derangement_search(&a, beta, 10).unwrap();
            let g = r.found.unwrap();
            assert_eq!(g.apply(0), beta);
            assert_eq!(g.fixed_point_count(), 0);
            assert_eq!(r.candidates, 1);
        }
    }

    #[test]
    fn s3_three_cycle_found() {
        let a = action(
            3,
            vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()],
        );
        let r = derangement_search(&a, 1, 10).unwrap();
        assert_eq!(r.found.unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap());
        assert_eq!(r.fixed_point_histogram, BTreeMap::from([(0, 1), (1, 1)]));
        assert!(derangement_search(&a, 0, 10).is_err());
    }

    #[test]
    fn frobenius_21_kernel_gives_derangements() {
        let gens = vec![
            Perm::new((0..7).map(|x| (x + 1) % 7).collect()).unwrap(),
            Perm::new((0..7).map(|x| (2 * x) % 7).collect()).unwrap(),
        ];
        let a = action(7, gens);
        let sw = fixne1_sweep(&a, 10).unwrap();
        assert_eq!(sw.pairs_checked, 6);
        assert!(sw.violations.is_empty());
        assert_eq!(sw.best_counts, BTreeMap::from([(0, 6)]));
        for beta in 1..7 {
            assert_eq!(fixne1_search(&a, beta, 10).unwrap().found.unwrap().fixed_point_count(), 0);
        }
    }

    #[test]
    fn fixne1_on_s3_finds_three_cycle() {
        let a = action(
            3,
            vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()],
        );
        let r = fixne1_search(&a, 1, 10).unwrap();
        assert_eq!(r.found.unwrap().fixed_point_count(), 0);
    }
}
