//! Product replacement random elements (with an accumulator, "rattle" style).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::element::GroupElement;

pub struct ProductReplacement<E> {
    slots: Vec<E>,
    acc: E,
    rng: ChaCha8Rng,
}

impl<E: GroupElement> ProductReplacement<E> {
    /// `identity` fixes the element type when `generators` is empty.
    pub fn new(generators: &[E], identity: &E, rng: ChaCha8Rng) -> Self {
        let mut slots: Vec<E> = generators.to_vec();
        if slots.is_empty() {
            slots.push(identity.clone());
        }
        let base = slots.len();
        while slots.len() < 10.max(2 * base) {
            let g = slots[slots.len() % base].clone();
            slots.push(g);
        }
        let mut pr = ProductReplacement { slots, acc: identity.clone(), rng };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> E {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = if self.rng.gen_bool(0.5) {
            self.slots[i].mul(&other)
        } else {
            other.mul(&self.slots[i])
        };
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use rand::SeedableRng;

    #[test]
    fn trivial_group_gives_identity() {
        let id = Perm::identity(4);
        let mut pr = ProductReplacement::new(&[], &id, ChaCha8Rng::seed_from_u64(1));
        for _ in 0..20 {
            assert!(pr.next_element().is_identity_perm());
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let gens = vec![
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let id = Perm::identity(5);
        let mut a = ProductReplacement::new(&gens, &id, ChaCha8Rng::seed_from_u64(7));
        let mut b = ProductReplacement::new(&gens, &id, ChaCha8Rng::seed_from_u64(7));
        for _ in 0..50 {
            assert_eq!(a.next_element(), b.next_element());
        }
    }

    #[test]
    fn covers_small_group() {
        let gens = vec![
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        ];
        let id = Perm::identity(4);
        let mut pr = ProductReplacement::new(&gens, &id, ChaCha8Rng::seed_from_u64(3));
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2000 {
            seen.insert(pr.next_element().images().to_vec());
        }
        assert_eq!(seen.len(), 24);
    }
}
