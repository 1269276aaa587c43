//! Explicitly enumerated groups and stabilizers obtained from random
//! Schreier generators.

use log::debug;
use rand_chacha::ChaCha8Rng;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::group::orbit::{OrbitPoint, OrbitTable};
use crate::group::random::ProductReplacement;
use crate::keys::KeyMap;

#[derive(Clone, Debug)]
pub struct SmallGroup<E> {
    generators: Vec<E>,
    elements: Vec<E>,
    index: KeyMap<u32>,
}

impl<E: GroupElement> SmallGroup<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn identity(&self) -> &E {
        &self.elements[0]
    }

    pub fn index_of(&self, g: &E) -> Option<usize> {
        let idx = *self.index.get(&g.key())? as usize;
        (self.elements[idx] == *g).then_some(idx)
    }

    pub fn contains(&self, g: &E) -> bool {
        self.index_of(g).is_some()
    }

    /// Checks closure under products and inverses over all pairs.
    pub fn verify_closure(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.mul(b)))
        })
    }

    pub fn order_histogram(&self) -> Vec<(u64, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for g in &self.elements {
            let o = g.order(crate::element::DEFAULT_ORDER_CAP).expect("finite group element");
            *h.entry(o).or_insert(0) += 1;
        }
        h.into_iter().collect()
    }
}

/// Lists `<generators>` by BFS under right multiplication.
pub fn closure_enumerate<E: GroupElement>(generators: &[E], identity: &E, cap: usize) -> Result<SmallGroup<E>> {
    let mut elements = vec![identity.clone()];
    let mut index = KeyMap::default();
    index.insert(identity.key(), 0u32);
    let mut cursor = 0;
    while cursor < elements.len() {
        let g = elements[cursor].clone();
        cursor += 1;
        for s in generators {
            let h = g.mul(s);
            let key = h.key();
            if let Some(&i) = index.get(&key) {
                if elements[i as usize] != h {
                    return Err(Error::HashCollision(key));
                }
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::Budget(format!("group has more than {cap} elements")));
            }
            index.insert(key, elements.len() as u32);
            elements.push(h);
        }
    }
    Ok(SmallGroup { generators: generators.to_vec(), elements, index })
}

/// Stabilizer of the orbit seed, generated from random elements `r` as
/// `r * u^-1` where `u` is the transversal element for `seed^r`. Stops once
/// `|stabilizer| * |orbit| = group_order`.
#[allow(clippy::too_many_arguments)]
pub fn point_stabilizer<E, P, A>(
    table: &OrbitTable<P>,
    generators: &[E],
    identity: &E,
    act: A,
    group_order: u128,
    rng: ChaCha8Rng,
    max_iterations: usize,
) -> Result<SmallGroup<E>>
where
    E: GroupElement,
    P: OrbitPoint,
    A: Fn(&P, &E) -> P,
{
    if !group_order.is_multiple_of(table.len() as u128) {
        return Err(Error::Certification(format!(
            "orbit length {} does not divide group order {group_order}",
            table.len()
        )));
    }
    let target = group_order / table.len() as u128;
    let mut pr = ProductReplacement::new(generators, identity, rng);
    let mut stab_gens: Vec<E> = Vec::new();
    let mut current = closure_enumerate(&stab_gens, identity, 1)?;
    for it in 0..max_iterations {
        if current.len() as u128 == target {
            debug!("stabilizer of order {target} after {it} random elements");
            return Ok(current);
        }
        let r = pr.next_element();
        let image = act(table.seed(), &r);
        let idx = table
            .index_of(&image)?
            .ok_or_else(|| Error::Domain("random element leaves the orbit".into()))?;
        let u = table.transversal_element(idx, generators, identity);
        let h = r.mul(&u.inverse());
        if act(table.seed(), &h) != *table.seed() {
            return Err(Error::Domain("Schreier element does not fix the seed".into()));
        }
        if current.contains(&h) {
            continue;
        }
        stab_gens.push(h);
        let cap = usize::try_from(target).unwrap_or(usize::MAX);
        current = closure_enumerate(&stab_gens, identity, cap)?;
    }
    Err(Error::Budget(format!(
        "stabilizer reached order {} of {target} within {max_iterations} iterations",
        current.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::orbit::{orbit, OrbitOptions};
    use crate::perm::Perm;
    use rand::SeedableRng;

    fn perm_table(gens: &[Perm], seed: u32) -> OrbitTable<u32> {
        orbit(seed, gens.len(), |&p, g| gens[g].apply(p), OrbitOptions::default()).unwrap()
    }

    #[test]
    fn closure_sizes() {
        let id = Perm::identity(5);
        assert_eq!(closure_enumerate(std::slice::from_ref(&id), &id, 10).unwrap().len(), 1);
        assert_eq!(closure_enumerate(&[], &id, 10).unwrap().len(), 1);
        let s5 = vec![Perm::from_cycles(5, &[&[0, 1]]).unwrap(), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()];
        let g = closure_enumerate(&s5, &id, 1000).unwrap();
        assert_eq!(g.len(), 120);
        assert!(g.verify_closure());
        assert!(closure_enumerate(&s5, &id, 100).is_err());
    }

    #[test]
    fn stabilizers() {
        let c3 = vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()];
        let t = perm_table(&c3, 0);
        let id = Perm::identity(3);
        let st = point_stabilizer(&t, &c3, &id, |&p, g: &Perm| g.apply(p), 3, ChaCha8Rng::seed_from_u64(0), 100).unwrap();
        assert_eq!(st.len(), 1);

        let s3 = vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()];
        let t = perm_table(&s3, 0);
        let st = point_stabilizer(&t, &s3, &id, |&p, g: &Perm| g.apply(p), 6, ChaCha8Rng::seed_from_u64(0), 100).unwrap();
        assert_eq!(st.len(), 2);
        assert!(st.elements().iter().all(|g| g.apply(0) == 0));
        // orbit-stabilizer
        assert_eq!(st.len() * t.len(), 6);
    }
}
