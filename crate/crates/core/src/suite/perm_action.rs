//! A transitive permutation group with a stabilizer chain based at a chosen
//! point `α`, giving direct access to `G_α`, its orbits and transversals.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{schreier_sims, SchreierSimsOptions, StabChain};
use crate::perm::Perm;
use crate::unionfind::UnionFind;

#[derive(Clone, Debug)]
pub struct PermAction {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
    alpha: u32,
}

impl PermAction {
    /// Builds the chain with `alpha` as first base point. Without a known
    /// order the chain is completed by a full Schreier-generator pass.
    pub fn new(generators: Vec<Perm>, alpha: u32, known_order: Option<u128>, rng: ChaCha8Rng) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Domain("no generators".into()))?;
        if alpha as usize >= degree {
            return Err(Error::Domain(format!("point {alpha} outside degree {degree}")));
        }
        let opts = SchreierSimsOptions { base_prefix: vec![alpha], ..Default::default() };
        let chain = schreier_sims(degree, &generators, known_order, rng, &opts)?;
        if chain.levels().first().map(|l| l.base_point()) != Some(alpha) {
            return Err(Error::Domain("the group is trivial".into()));
        }
        Ok(PermAction { degree, generators, chain, alpha })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_transitive(&self) -> bool {
        self.chain.levels()[0].orbit().len() == self.degree
    }

    pub fn stabilizer_order(&self) -> u128 {
        self.chain.levels()[1..].iter().map(|l| l.orbit().len() as u128).product()
    }

    /// Strong generators fixing `α`.
    pub fn stabilizer_generators(&self) -> Vec<Perm> {
        self.chain
            .strong_generators()
            .iter()
            .filter(|g| g.apply(self.alpha) == self.alpha)
            .cloned()
            .collect()
    }

    /// All elements of `G_α`, at most `cap` of them.
    pub fn stabilizer_elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let order = self.stabilizer_order();
        if order > cap as u128 {
            return Err(Error::Budget(format!("point stabilizer of order {order} exceeds {cap}")));
        }
        let mut elements = vec![Perm::identity(self.degree)];
        for i in (1..self.chain.levels().len()).rev() {
            let reps: Vec<Perm> = self.chain.levels()[i]
                .orbit()
                .iter()
                .map(|&p| self.chain.coset_rep(i, p).expect("orbit point"))
                .collect();
            elements = elements
                .iter()
                .flat_map(|h| reps.iter().map(move |r| h.compose(r).expect("degrees agree")))
                .collect();
        }
        Ok(elements)
    }

    /// Some `u` with `α^u = β`.
    pub fn transporter(&self, beta: u32) -> Result<Perm> {
        self.chain
            .coset_rep(0, beta)
            .ok_or_else(|| Error::Domain(format!("point {beta} not in the orbit of {}", self.alpha)))
    }

    /// Orbits of `G_α`, each listed in breadth-first order from its smallest
    /// point; the list is ordered by smallest point, so `{α}` comes where `α` falls.
    pub fn suborbits(&self) -> Vec<Vec<u32>> {
        let stab = self.stabilizer_generators();
        let mut uf = UnionFind::new(self.degree);
        for g in &stab {
            for p in 0..self.degree as u32 {
                uf.union(p, g.apply(p));
            }
        }
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize] = true;
            let mut cursor = 0;
            while cursor < orbit.len() {
                let p = orbit[cursor];
                cursor += 1;
                for g in &stab {
                    let q = g.apply(p);
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        orbit.push(q);
                    }
                }
            }
            debug_assert!(orbit.iter().all(|&q| uf.find(q) == uf.find(start)));
            out.push(orbit);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(5)
    }

    fn s4() -> Vec<Perm> {
        vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(), Perm::from_cycles(4, &[&[0, 1]]).unwrap()]
    }

    #[test]
    fn stabilizer_of_s4_point() {
        let a = PermAction::new(s4(), 2, None, rng()).unwrap();
        assert_eq!(a.order(), 24);
        assert_eq!(a.stabilizer_order(), 6);
        let stab = a.stabilizer_elements(100).unwrap();
        assert_eq!(stab.len(), 6);
        assert!(stab.iter().all(|g| g.apply(2) == 2));
        let mut imgs: Vec<Vec<u32>> = stab.iter().map(|g| g.images().to_vec()).collect();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), 6);
        assert!(a.stabilizer_elements(5).is_err());
    }

    #[test]
    fn suborbits_partition_points() {
        let a = PermAction::new(s4(), 0, None, rng()).unwrap();
        let mut subs = a.suborbits();
        subs[1].sort();
        assert_eq!(subs, vec![vec![0], vec![1, 2, 3]]);
        let u = a.transporter(3).unwrap();
        assert_eq!(u.apply(0), 3);
    }

    #[test]
    fn intransitive_group_detected() {
        let g = vec![Perm::from_cycles(4, &[&[0, 1]]).unwrap()];
        let a = PermAction::new(g, 0, None, rng()).unwrap();
        assert!(!a.is_transitive());
        assert!(a.transporter(2).is_err());
        let fixing = vec![Perm::from_cycles(3, &[&[1, 2]]).unwrap()];
        let b = PermAction::new(fixing, 0, None, rng()).unwrap();
        assert_eq!((b.order(), b.stabilizer_order()), (2, 2));
        assert!(PermAction::new(vec![Perm::identity(3)], 0, None, rng()).is_err());
    }
}
