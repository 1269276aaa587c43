//! PSL(3,4) acting on the 4032 cosets of a subgroup of order 5: a transitive
//! action with a connected orbital graph but no derangement along one of its arcs.

use log::info;
use serde::Serialize;

use crate::actions::{coset_action, CosetAction};
use crate::data::PSL3_4_PERM;
use crate::element::{GroupElement, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::group::{closure_enumerate, ProductReplacement, SmallGroup};
use crate::perm::{Perm, PermGroupFile};
use crate::suite::orbital::{orbital_graph, OrbitalRecord};
use crate::suite::perm_action::PermAction;
use crate::suite::search::{derangement_search, SearchResult};
use crate::triality::{phase_rng, Phase};

pub const PSL3_4_ORDER: u128 = 20160;
pub const COSET_DEGREE: usize = 4032;

pub struct PslCosetSetup {
    pub natural: PermAction,
    pub u: Perm,
    pub subgroup: SmallGroup<Perm>,
    pub cosets: CosetAction<Perm>,
    pub action: PermAction,
}

/// Certifies the 21-point group, picks `u` of order 5 from the seeded
/// random stream and builds the coset action of `<u>` with `α` = the coset `<u>`.
pub fn build_psl_coset_action(seed: u64) -> Result<PslCosetSetup> {
    let file = PermGroupFile::parse(PSL3_4_PERM)?;
    let natural = PermAction::new(file.generators.clone(), 0, None, phase_rng(seed, Phase::SmallGroups))?;
    if natural.order() != PSL3_4_ORDER {
        return Err(Error::Certification(format!("21-point group has order {}", natural.order())));
    }
    let id = Perm::identity(file.degree);
    let mut pr = ProductReplacement::new(&file.generators, &id, phase_rng(seed, Phase::SmallGroups));
    let u = loop {
        let r = pr.next_element();
        let m = r.order(DEFAULT_ORDER_CAP)?;
        if m % 5 == 0 {
            break r.pow((m / 5) as i64);
        }
    };
    let subgroup = closure_enumerate(std::slice::from_ref(&u), &id, 5)?;
    let cosets = coset_action(&file.generators, &subgroup, Some(PSL3_4_ORDER), COSET_DEGREE)?;
    let seed_point = cosets.point_of(&id)?;
    let action = PermAction::new(
        cosets.generators().to_vec(),
        seed_point,
        Some(PSL3_4_ORDER),
        phase_rng(seed, Phase::Verification),
    )?;
    info!("coset action of degree {} certified", action.degree());
    Ok(PslCosetSetup { natural, u, subgroup, cosets, action })
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub degree: usize,
    /// Non-diagonal suborbits in search order (increasing size).
    pub records: Vec<OrbitalRecord>,
    /// First pair with a connected orbital graph and no derangement.
    pub pair: Option<(u32, u32)>,
    pub witness: Option<SearchResult>,
}

/// Walks the non-diagonal suborbits by increasing size (ties by first point)
/// and tests the first point of each. Without `sweep` it stops at the first
/// counterexample.
pub fn counterexample_search(action: &PermAction, sweep: bool, stabilizer_cap: usize) -> Result<CounterexampleReport> {
    let n = action.degree();
    let mut subs: Vec<Vec<u32>> = action.suborbits().into_iter().filter(|s| s[0] != action.alpha()).collect();
    subs.sort_by_key(|s| (s.len(), s[0]));
    let mut records = Vec::new();
    let mut pair = None;
    let mut witness = None;
    for sub in subs {
        let beta = sub[0];
        let (_, connected) = orbital_graph(action, beta, n.saturating_mul(n))?;
        let search = derangement_search(action, beta, stabilizer_cap)?;
        if connected && search.found.is_none() && pair.is_none() {
            pair = Some((action.alpha(), beta));
            witness = Some(search.clone());
        }
        records.push(OrbitalRecord { beta, suborbit_size: sub.len(), connected, search: Some(search) });
        if pair.is_some() && !sweep {
            break;
        }
    }
    Ok(CounterexampleReport { degree: n, records, pair, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triality::DEFAULT_SEED;

    #[test]
    fn coset_action_and_counterexample() {
        let setup = build_psl_coset_action(DEFAULT_SEED).unwrap();
        assert_eq!(setup.natural.order(), PSL3_4_ORDER);
        assert_eq!(setup.u.order(DEFAULT_ORDER_CAP).unwrap(), 5);
        assert_eq!(setup.subgroup.len(), 5);
        assert_eq!(setup.action.degree(), COSET_DEGREE);
        assert_eq!(setup.action.stabilizer_order(), 5);
        let rep = counterexample_search(&setup.action, false, 100).unwrap();
        let (a, b) = rep.pair.unwrap();
        let w = rep.witness.unwrap();
        assert_eq!(w.candidates, 5);
        assert!(w.found.is_none());
        assert!(w.fixed_point_histogram.keys().all(|&f| f >= 1));
        assert!(orbital_graph(&setup.action, b, usize::MAX).unwrap().1);
        assert_eq!(a, setup.action.alpha());
        // suborbits are visited by increasing size
        let sizes: Vec<usize> = rep.records.iter().map(|r| r.suborbit_size).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }
}
