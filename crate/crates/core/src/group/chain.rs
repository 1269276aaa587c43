//! Base and strong generating sets for permutation groups, built by random
//! Schreier-Sims and certified either by a known order or by sifting every
//! Schreier generator.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::random::ProductReplacement;
use crate::perm::Perm;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT_LABEL: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub struct StabLevel {
    base_point: u32,
    /// Indices into the chain's strong generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Per point: index into `gens` of the generator that reached it.
    labels: Vec<u32>,
}

impl StabLevel {
    pub fn base_point(&self) -> u32 {
        self.base_point
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<StabLevel>,
}

#[derive(Clone, Debug)]
pub struct SchreierSimsOptions {
    /// Random elements to try before giving up on reaching a known order.
    pub max_random: usize,
    /// Consecutive trivial sifts that end the random phase when no order is known.
    pub quiet_rounds: usize,
    /// Points to use first as base points, in order.
    pub base_prefix: Vec<u32>,
}

impl Default for SchreierSimsOptions {
    fn default() -> Self {
        SchreierSimsOptions { max_random: 20_000, quiet_rounds: 40, base_prefix: Vec::new() }
    }
}

impl StabChain {
    fn empty(degree: usize) -> Self {
        StabChain { degree, strong: Vec::new(), strong_inv: Vec::new(), levels: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn levels(&self) -> &[StabLevel] {
        &self.levels
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn rebuild_level(&mut self, i: usize) {
        let prefix: Vec<u32> = self.levels[..i].iter().map(|l| l.base_point).collect();
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&s| prefix.iter().all(|&b| self.strong[s].apply(b) == b))
            .collect();
        let level = &mut self.levels[i];
        level.gens = gens;
        level.labels = vec![NOT_IN_ORBIT; self.degree];
        level.labels[level.base_point as usize] = ROOT_LABEL;
        level.orbit = vec![level.base_point];
        let mut cursor = 0;
        while cursor < level.orbit.len() {
            let p = level.orbit[cursor];
            cursor += 1;
            for (gi, &s) in level.gens.iter().enumerate() {
                let q = self.strong[s].apply(p);
                if level.labels[q as usize] == NOT_IN_ORBIT {
                    level.labels[q as usize] = gi as u32;
                    level.orbit.push(q);
                }
            }
        }
    }

    /// Sifts `g` starting at `level`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when all base points are fixed).
    pub fn sift_from(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let mut p = g.apply(level.base_point);
            if level.labels[p as usize] == NOT_IN_ORBIT {
                return (g, i);
            }
            while p != level.base_point {
                let s = level.gens[level.labels[p as usize] as usize];
                let inv = &self.strong_inv[s];
                g = g.compose(inv).expect("degrees agree");
                p = inv.apply(p);
            }
        }
        (g, self.levels.len())
    }

    pub fn sift(&self, g: &Perm) -> (Perm, usize) {
        self.sift_from(g, 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.sift(g);
        r.is_identity_perm()
    }

    /// Coset representative `u` with `base_point(i)^u = p`.
    pub fn coset_rep(&self, i: usize, p: u32) -> Option<Perm> {
        let level = &self.levels[i];
        if level.labels[p as usize] == NOT_IN_ORBIT {
            return None;
        }
        let mut word = Vec::new();
        let mut q = p;
        while q != level.base_point {
            let s = level.gens[level.labels[q as usize] as usize];
            word.push(s);
            q = self.strong_inv[s].apply(q);
        }
        let mut u = Perm::identity(self.degree);
        for &s in word.iter().rev() {
            u = u.compose(&self.strong[s]).expect("degrees agree");
        }
        Some(u)
    }

    /// Adds a non-identity residue that fixes base points `0..level`.
    fn insert(&mut self, residue: Perm, level: usize) {
        debug_assert!(!residue.is_identity_perm());
        if level == self.levels.len() {
            let b = residue.first_moved().expect("residue is not the identity");
            self.push_level(b);
        }
        self.strong_inv.push(residue.inverse_perm());
        self.strong.push(residue);
        for i in 0..=level {
            self.rebuild_level(i);
        }
    }

    fn push_level(&mut self, b: u32) {
        self.levels.push(StabLevel { base_point: b, gens: Vec::new(), orbit: vec![b], labels: Vec::new() });
        let i = self.levels.len() - 1;
        self.rebuild_level(i);
    }

    /// Sifts `g`; on a non-trivial residue extends the chain. Returns whether
    /// the chain changed.
    fn absorb(&mut self, g: &Perm) -> bool {
        let (r, level) = self.sift(g);
        if r.is_identity_perm() {
            return false;
        }
        self.insert(r, level);
        true
    }

    /// Sifts every Schreier generator; adds the first non-trivial residue
    /// found and reports whether one was found.
    fn schreier_pass(&mut self) -> bool {
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            let orbit = level.orbit.clone();
            let gens = level.gens.clone();
            for &p in &orbit {
                let up = self.coset_rep(i, p).expect("orbit point");
                for &s in &gens {
                    let q = self.strong[s].apply(p);
                    let uq_inv = self.coset_rep(i, q).expect("orbit closed").inverse_perm();
                    let sg = up.compose(&self.strong[s]).unwrap().compose(&uq_inv).unwrap();
                    let (r, stop) = self.sift_from(&sg, i + 1);
                    if !r.is_identity_perm() {
                        self.insert(r, stop);
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Every strong generator sifts to the identity and the orbit product
    /// matches the recorded levels.
    pub fn verify_strong_generators(&self) -> bool {
        self.strong.iter().all(|g| self.contains(g))
    }

    /// Rebuilds a chain from a base and strong generators (as read from a
    /// cache) and recomputes its basic orbits.
    pub fn from_base_and_generators(degree: usize, base: &[u32], strong: Vec<Perm>) -> Result<Self> {
        if strong.iter().any(|g| g.degree() != degree) {
            return Err(Error::Domain("strong generator degree mismatch".into()));
        }
        if base.iter().any(|&b| b as usize >= degree) {
            return Err(Error::Domain("base point out of range".into()));
        }
        let mut chain = StabChain::empty(degree);
        chain.strong_inv = strong.iter().map(|g| g.inverse_perm()).collect();
        chain.strong = strong;
        for &b in base {
            chain.push_level(b);
        }
        Ok(chain)
    }
}

/// Builds a stabilizer chain for `<generators>` on `degree` points.
///
/// With `known_order`, random elements are sifted until the chain order reaches
/// it, which certifies the chain. Without it, the random phase ends after a
/// run of trivial sifts and a full Schreier-generator pass completes the chain.
pub fn schreier_sims(
    degree: usize,
    generators: &[Perm],
    known_order: Option<u128>,
    rng: ChaCha8Rng,
    opts: &SchreierSimsOptions,
) -> Result<StabChain> {
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::Domain("generator degree mismatch".into()));
    }
    let mut chain = StabChain::empty(degree);
    for &b in &opts.base_prefix {
        chain.push_level(b);
    }
    for g in generators {
        chain.absorb(g);
    }
    let id = Perm::identity(degree);
    let mut pr = ProductReplacement::new(generators, &id, rng);
    let mut quiet = 0;
    let mut tries = 0;
    loop {
        if let Some(n) = known_order {
            let o = chain.order();
            if o == n {
                break;
            }
            if o > n {
                return Err(Error::Certification(format!("chain order {o} exceeds expected {n}")));
            }
        } else if quiet >= opts.quiet_rounds {
            break;
        }
        if tries >= opts.max_random {
            return Err(Error::Certification(format!(
                "chain order {} after {} random elements; expected {}",
                chain.order(),
                tries,
                known_order.map(|n| n.to_string()).unwrap_or_else(|| "unknown".into())
            )));
        }
        tries += 1;
        let r = pr.next_element();
        if chain.absorb(&r) {
            quiet = 0;
        } else {
            quiet += 1;
        }
    }
    if known_order.is_none() {
        while chain.schreier_pass() {}
    }
    // drop base points from the prefix that turned out redundant at the end
    while chain.levels.last().is_some_and(|l| l.orbit.len() == 1) {
        chain.levels.pop();
    }
    debug_assert!(chain.verify_strong_generators());
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    fn s5() -> Vec<Perm> {
        vec![
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_group_order() {
        let known = schreier_sims(5, &s5(), Some(120), rng(), &Default::default()).unwrap();
        assert_eq!(known.order(), 120);
        let unknown = schreier_sims(5, &s5(), None, rng(), &Default::default()).unwrap();
        assert_eq!(unknown.order(), 120);
        assert!(unknown.verify_strong_generators());
    }

    #[test]
    fn deterministic_verification_completes_a_poor_random_phase() {
        let opts = SchreierSimsOptions { max_random: 0, quiet_rounds: 0, base_prefix: vec![] };
        let c = schreier_sims(5, &s5(), None, rng(), &opts).unwrap();
        assert_eq!(c.order(), 120);
        // A5 inside S5
        let a5 = vec![
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let c = schreier_sims(5, &a5, None, rng(), &opts).unwrap();
        assert_eq!(c.order(), 60);
        assert!(!c.contains(&s5()[0]));
    }

    #[test]
    fn membership() {
        let c = schreier_sims(5, &s5(), Some(120), rng(), &Default::default()).unwrap();
        assert!(c.contains(&Perm::identity(5)));
        let prod = c.strong_generators().iter().fold(Perm::identity(5), |a, g| a.mul(g));
        assert!(c.contains(&prod));
        let d4 = vec![
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2]]).unwrap(),
        ];
        let c = schreier_sims(4, &d4, None, rng(), &Default::default()).unwrap();
        assert_eq!(c.order(), 8);
        assert!(!c.contains(&Perm::from_cycles(4, &[&[0, 1]]).unwrap()));
        assert!(c.contains(&Perm::from_cycles(4, &[&[1, 3]]).unwrap()));
    }

    #[test]
    fn wrong_known_order_fails() {
        let opts = SchreierSimsOptions { max_random: 200, ..Default::default() };
        assert!(schreier_sims(5, &s5(), Some(240), rng(), &opts).is_err());
        assert!(schreier_sims(5, &s5(), Some(60), rng(), &opts).is_err());
    }

    #[test]
    fn trivial_group_and_base_prefix() {
        let c = schreier_sims(3, &[Perm::identity(3)], None, rng(), &Default::default()).unwrap();
        assert_eq!(c.order(), 1);
        let opts = SchreierSimsOptions { base_prefix: vec![3, 2], ..Default::default() };
        let c = schreier_sims(5, &s5(), Some(120), rng(), &opts).unwrap();
        assert_eq!(&c.base()[..2], &[3, 2]);
        let cr = c.coset_rep(0, 1).unwrap();
        assert_eq!(cr.apply(3), 1);
    }

    #[test]
    fn rebuild_from_generators() {
        let c = schreier_sims(5, &s5(), Some(120), rng(), &Default::default()).unwrap();
        let r = StabChain::from_base_and_generators(5, &c.base(), c.strong_generators().to_vec()).unwrap();
        assert_eq!(r.order(), 120);
        assert_eq!(r.basic_orbit_lengths(), c.basic_orbit_lengths());
    }
}
