//! Exhaustive check, on small groups, that a coset `Ux` lies in the union of
//! the conjugates of `U` exactly when no element mapping the point `U` to the
//! point `Ux` of the coset action is a derangement.

use serde::Serialize;

use crate::actions::coset_action;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::SmallGroup;
use crate::keys::KeySet;
use crate::perm::Perm;
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub degree: usize,
    pub double_cosets: usize,
    /// Double cosets (including `U` itself) whose cosets are covered.
    pub covered: usize,
    /// Coset points where coverage and absence of derangements disagree.
    pub mismatches: Vec<u32>,
    pub holds: bool,
}

pub fn coverage_derangement_duality_check(
    group: &SmallGroup<Perm>,
    subgroup: &SmallGroup<Perm>,
) -> Result<DualityReport> {
    if group.len() > 100_000 {
        return Err(Error::Budget(format!("group of order {} is too large for brute force", group.len())));
    }
    if subgroup.elements().iter().any(|u| !group.contains(u)) {
        return Err(Error::Domain("subgroup is not contained in the group".into()));
    }
    let mut conjugates = KeySet::default();
    for g in group.elements() {
        let gi = g.inverse();
        for u in subgroup.elements() {
            conjugates.insert(gi.mul(u).mul(g).key());
        }
    }
    let action = coset_action(group.generators(), subgroup, Some(group.len() as u128), group.len())?;
    let n = action.degree();
    let mut covered = vec![true; n];
    let mut deranged = vec![false; n];
    for y in group.elements() {
        let p = action.point_of(y)? as usize;
        if !conjugates.contains(&y.key()) {
            covered[p] = false;
        }
        if action.perm_of(y)?.fixed_point_count() == 0 {
            deranged[p] = true;
        }
    }
    let mut uf = UnionFind::new(n);
    for u in subgroup.generators() {
        let pu = action.perm_of(u)?;
        for p in 0..n as u32 {
            uf.union(p, pu.apply(p));
        }
    }
    let mut roots: Vec<u32> = (0..n as u32).map(|p| uf.find(p)).collect();
    for p in 0..n {
        if covered[p] != covered[roots[p] as usize] {
            return Err(Error::Certification("coverage differs inside one double coset".into()));
        }
    }
    let mismatches: Vec<u32> = (0..n as u32).filter(|&p| covered[p as usize] == deranged[p as usize]).collect();
    let covered_count = (0..n).filter(|&p| roots[p] as usize == p && covered[p]).count();
    roots.sort_unstable();
    roots.dedup();
    Ok(DualityReport {
        group_order: group.len(),
        subgroup_order: subgroup.len(),
        degree: n,
        double_cosets: roots.len(),
        covered: covered_count,
        holds: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure_enumerate;

    fn p(n: usize, c: &[&[u32]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    fn group(gens: &[Perm]) -> SmallGroup<Perm> {
        let id = Perm::identity(gens[0].degree());
        closure_enumerate(gens, &id, 100_000).unwrap()
    }

    #[test]
    fn s4_over_point_stabilizer() {
        let g = group(&[p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 1]])]);
        let u = group(&[p(4, &[&[0, 1, 2]]), p(4, &[&[0, 1]])]);
        let r = coverage_derangement_duality_check(&g, &u).unwrap();
        assert!(r.holds);
        assert_eq!((r.degree, r.double_cosets), (4, 2));
        assert_eq!(r.covered, 1);
    }

    #[test]
    fn trivial_subgroup_regular_action() {
        let g = group(&[p(3, &[&[0, 1]]), p(3, &[&[0, 1, 2]])]);
        let u = group(&[Perm::identity(3)]);
        let r = coverage_derangement_duality_check(&g, &u).unwrap();
        assert!(r.holds);
        assert_eq!(r.degree, 6);
        assert_eq!(r.double_cosets, 6);
        // only U itself is covered
        assert_eq!(r.covered, 1);
    }

    #[test]
    fn frobenius_21_over_complement() {
        let g = group(&[
            Perm::new((0..7).map(|x| (x + 1) % 7).collect()).unwrap(),
            Perm::new((0..7).map(|x| (2 * x) % 7).collect()).unwrap(),
        ]);
        let u = group(&[Perm::new((0..7).map(|x| (2 * x) % 7).collect()).unwrap()]);
        let r = coverage_derangement_duality_check(&g, &u).unwrap();
        assert!(r.holds);
        assert_eq!(r.degree, 7);
        assert_eq!(r.covered, 1);
    }

    #[test]
    fn rejects_foreign_subgroup() {
        let g = group(&[p(4, &[&[0, 1, 2, 3]])]);
        let u = group(&[p(4, &[&[0, 1]])]);
        assert!(coverage_derangement_duality_check(&g, &u).is_err());
    }
}
