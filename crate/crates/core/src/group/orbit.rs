//! Breadth-first orbit enumeration with 128-bit point keys and a Schreier
//! vector.

use std::collections::VecDeque;

use log::debug;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::keys::{KeyMap, PointKey};

/// A point of an implicit orbit; equal points must have equal keys.
pub trait OrbitPoint: Clone + PartialEq + Send + Sync {
    fn point_key(&self) -> PointKey;
}

impl OrbitPoint for u64 {
    fn point_key(&self) -> PointKey {
        *self as PointKey
    }
}

impl OrbitPoint for crate::matrix::Mat {
    fn point_key(&self) -> PointKey {
        self.key()
    }
}

impl OrbitPoint for crate::perm::Perm {
    fn point_key(&self) -> PointKey {
        crate::element::GroupElement::key(self)
    }
}

impl OrbitPoint for u32 {
    fn point_key(&self) -> PointKey {
        *self as PointKey
    }
}

pub const ROOT: u32 = u32::MAX;

/// Back-pointer to the BFS parent and the generator that reached this point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchreierLink {
    pub parent: u32,
    pub generator: u8,
}

#[derive(Clone, Copy, Debug)]
pub struct OrbitOptions {
    pub max_points: usize,
    /// Keep every point's payload; otherwise payloads are re-derived by
    /// walking Schreier links on demand.
    pub store_payloads: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { max_points: 50_000_000, store_payloads: true }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitTable<P> {
    seed: P,
    num_generators: usize,
    keys: KeyMap<u32>,
    schreier: Vec<SchreierLink>,
    payloads: Option<Vec<P>>,
}

impl<P: OrbitPoint> OrbitTable<P> {
    pub fn len(&self) -> usize {
        self.schreier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schreier.is_empty()
    }

    pub fn seed(&self) -> &P {
        &self.seed
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn schreier(&self) -> &[SchreierLink] {
        &self.schreier
    }

    pub fn has_payloads(&self) -> bool {
        self.payloads.is_some()
    }

    pub fn payloads(&self) -> Option<&[P]> {
        self.payloads.as_deref()
    }

    pub fn payload(&self, idx: u32) -> Option<&P> {
        self.payloads.as_ref().map(|p| &p[idx as usize])
    }

    pub fn drop_payloads(&mut self) {
        self.payloads = None;
    }

    pub fn lookup_key(&self, key: PointKey) -> Option<u32> {
        self.keys.get(&key).copied()
    }

    /// Index of `p`, confirming payload equality when payloads are stored.
    pub fn index_of(&self, p: &P) -> Result<Option<u32>> {
        let key = p.point_key();
        match self.keys.get(&key) {
            None => Ok(None),
            Some(&idx) => match &self.payloads {
                Some(pl) if pl[idx as usize] != *p => Err(Error::HashCollision(key)),
                _ => Ok(Some(idx)),
            },
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = (PointKey, u32)> + '_ {
        self.keys.iter().map(|(&k, &v)| (k, v))
    }

    /// Generator indices along the Schreier path from the seed to `idx`.
    pub fn path(&self, idx: u32) -> Vec<u8> {
        let mut out = Vec::new();
        let mut cur = idx;
        while self.schreier[cur as usize].parent != ROOT {
            let link = self.schreier[cur as usize];
            out.push(link.generator);
            cur = link.parent;
        }
        out.reverse();
        out
    }

    pub fn depth(&self, idx: u32) -> usize {
        let mut d = 0;
        let mut cur = idx;
        while self.schreier[cur as usize].parent != ROOT {
            cur = self.schreier[cur as usize].parent;
            d += 1;
        }
        d
    }

    /// Element `u` with `seed^u = point(idx)`.
    pub fn transversal_element<E: GroupElement>(&self, idx: u32, generators: &[E], identity: &E) -> E {
        self.path(idx)
            .into_iter()
            .fold(identity.clone(), |acc, g| acc.mul(&generators[g as usize]))
    }

    /// Payload of `idx`, from storage or by replaying the Schreier path.
    pub fn derive_payload<F>(&self, idx: u32, act: F) -> P
    where
        F: Fn(&P, usize) -> P,
    {
        if let Some(p) = self.payload(idx) {
            return p.clone();
        }
        self.path(idx)
            .into_iter()
            .fold(self.seed.clone(), |p, g| act(&p, g as usize))
    }

    /// Assembles a table from stored parts, checking the Schreier structure.
    pub fn from_parts(
        seed: P,
        num_generators: usize,
        schreier: Vec<SchreierLink>,
        keys: Vec<PointKey>,
        payloads: Option<Vec<P>>,
    ) -> Result<Self> {
        if keys.len() != schreier.len() {
            return Err(Error::Cache("key and Schreier vector lengths differ".into()));
        }
        if schreier.first().map(|l| l.parent) != Some(ROOT) {
            return Err(Error::Cache("first point is not the root".into()));
        }
        for (i, l) in schreier.iter().enumerate().skip(1) {
            if l.parent as usize >= i || l.generator as usize >= num_generators {
                return Err(Error::Cache(format!("bad Schreier link at point {i}")));
            }
        }
        if let Some(pl) = &payloads {
            if pl.len() != keys.len() {
                return Err(Error::Cache("payload count mismatch".into()));
            }
            for (i, (p, &k)) in pl.iter().zip(&keys).enumerate() {
                if p.point_key() != k {
                    return Err(Error::Cache(format!("key mismatch at point {i}")));
                }
            }
            if pl[0] != seed {
                return Err(Error::Cache("seed payload mismatch".into()));
            }
        }
        let mut map = KeyMap::default();
        map.reserve(keys.len());
        for (i, k) in keys.into_iter().enumerate() {
            if map.insert(k, i as u32).is_some() {
                return Err(Error::Cache(format!("duplicate key at point {i}")));
            }
        }
        Ok(OrbitTable { seed, num_generators, keys: map, schreier, payloads })
    }

    /// Keys in point order.
    pub fn key_list(&self) -> Vec<PointKey> {
        let mut out = vec![0; self.len()];
        for (&k, &i) in &self.keys {
            out[i as usize] = k;
        }
        out
    }
}

/// Enumerates the orbit of `seed` under `num_generators` generators, with
/// `act(p, i)` the image of `p` under generator `i`. Points are numbered in
/// BFS discovery order with generators tried in index order.
pub fn orbit<P, F>(seed: P, num_generators: usize, act: F, opts: OrbitOptions) -> Result<OrbitTable<P>>
where
    P: OrbitPoint,
    F: Fn(&P, usize) -> P,
{
    assert!(num_generators <= 256, "generator index must fit in a byte");
    let mut table = OrbitTable {
        seed: seed.clone(),
        num_generators,
        keys: KeyMap::default(),
        schreier: vec![SchreierLink { parent: ROOT, generator: 0 }],
        payloads: opts.store_payloads.then(|| vec![seed.clone()]),
    };
    table.keys.insert(seed.point_key(), 0);
    let mut frontier: VecDeque<(u32, P)> = VecDeque::new();
    if !opts.store_payloads {
        frontier.push_back((0, seed));
    }
    let mut cursor = 0usize;
    loop {
        let (idx, point) = if let Some(pl) = &table.payloads {
            if cursor >= pl.len() {
                break;
            }
            cursor += 1;
            ((cursor - 1) as u32, pl[cursor - 1].clone())
        } else {
            match frontier.pop_front() {
                Some(x) => x,
                None => break,
            }
        };
        for g in 0..num_generators {
            let image = act(&point, g);
            let key = image.point_key();
            if let Some(&existing) = table.keys.get(&key) {
                let same = match &table.payloads {
                    Some(pl) => pl[existing as usize] == image,
                    None => table.derive_payload(existing, &act) == image,
                };
                if !same {
                    return Err(Error::HashCollision(key));
                }
                continue;
            }
            let new_idx = table.schreier.len();
            if new_idx >= opts.max_points {
                return Err(Error::Budget(format!(
                    "orbit exceeds {} points ({} discovered, {} processed)",
                    opts.max_points,
                    new_idx,
                    idx + 1
                )));
            }
            table.keys.insert(key, new_idx as u32);
            table.schreier.push(SchreierLink { parent: idx, generator: g as u8 });
            match &mut table.payloads {
                Some(pl) => pl.push(image),
                None => frontier.push_back((new_idx as u32, image)),
            }
        }
        if idx > 0 && idx % 1_000_000 == 0 {
            debug!("orbit: processed {} points, {} discovered", idx, table.len());
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn perm_orbit(seed: u32, gens: &[Perm], store: bool) -> OrbitTable<u32> {
        orbit(seed, gens.len(), |&p, g| gens[g].apply(p), OrbitOptions { max_points: 1000, store_payloads: store })
            .unwrap()
    }

    #[test]
    fn small_orbits() {
        let c = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        assert_eq!(perm_orbit(0, std::slice::from_ref(&c), true).len(), 3);
        assert_eq!(perm_orbit(3, &[c], true).len(), 1);
        assert_eq!(perm_orbit(0, &[], true).len(), 1);
    }

    #[test]
    fn transversals_reach_their_points() {
        let gens = vec![
            Perm::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            Perm::from_cycles(7, &[&[1, 2, 4], &[3, 6, 5]]).unwrap(),
        ];
        for store in [true, false] {
            let t = perm_orbit(0, &gens, store);
            assert_eq!(t.len(), 7);
            let id = Perm::identity(7);
            assert!(t.transversal_element(0, &gens, &id).is_identity_perm());
            for i in 0..t.len() as u32 {
                let u = t.transversal_element(i, &gens, &id);
                let p = t.derive_payload(i, |&p, g| gens[g].apply(p));
                assert_eq!(u.apply(0), p);
                assert_eq!(t.index_of(&p).unwrap(), Some(i));
                if i > 0 {
                    assert!(t.schreier()[i as usize].parent < i);
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = Perm::from_cycles(10, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]]).unwrap();
        let r = orbit(0u32, 1, |&p, _| g.apply(p), OrbitOptions { max_points: 4, store_payloads: true });
        assert!(matches!(r, Err(Error::Budget(_))));
    }

    /// A point type whose key deliberately ignores half the payload.
    #[derive(Clone, PartialEq, Debug)]
    struct Weak(u32);
    impl OrbitPoint for Weak {
        fn point_key(&self) -> PointKey {
            (self.0 / 2) as PointKey
        }
    }

    #[test]
    fn collisions_are_fatal() {
        for store in [true, false] {
            let r = orbit(Weak(0), 1, |p, _| Weak((p.0 + 1) % 6), OrbitOptions { max_points: 100, store_payloads: store });
            assert!(matches!(r, Err(Error::HashCollision(_))));
        }
    }

    #[test]
    fn rebuild_from_parts() {
        let g = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let t = perm_orbit(0, &[g], true);
        let t2 = OrbitTable::from_parts(0u32, 1, t.schreier().to_vec(), t.key_list(), t.payloads().map(|p| p.to_vec()))
            .unwrap();
        assert_eq!(t2.len(), 4);
        let mut bad = t.schreier().to_vec();
        bad[2].parent = 3;
        assert!(OrbitTable::from_parts(0u32, 1, bad, t.key_list(), None).is_err());
    }
}
