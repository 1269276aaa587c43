//! Concrete permutation actions derived from matrix and permutation groups:
//! projective points, conjugation on cyclic subgroups, and right cosets.

use std::cmp::Ordering;

use log::info;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::field::{ff_inv, FieldElem, FieldSpec};
use crate::group::orbit::{orbit, OrbitOptions, OrbitTable};
use crate::group::small::SmallGroup;
use crate::matrix::{scale_lanes, Mat};
use crate::perm::Perm;

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize_projective(v: u64, spec: FieldSpec) -> u64 {
    if v == 0 {
        return 0;
    }
    let lead = FieldElem((v >> (v.trailing_zeros() / 8 * 8)) as u8);
    let inv = ff_inv(lead, spec).expect("nonzero lead").0;
    scale_lanes(v, inv, spec)
}

/// The action of a matrix group on one orbit of projective points.
#[derive(Clone, Debug)]
pub struct ProjectiveAction {
    spec: FieldSpec,
    n: usize,
    table: OrbitTable<u64>,
    generators: Vec<Perm>,
    /// Seeds tried, with the orbit size found or `None` when abandoned early.
    pub scanned: Vec<(u64, Option<usize>)>,
}

#[derive(Clone, Copy, Debug)]
pub struct ProjectiveOptions {
    pub random_candidates: usize,
    pub max_points: usize,
    pub seed: u64,
}

impl Default for ProjectiveOptions {
    fn default() -> Self {
        ProjectiveOptions { random_candidates: 16, max_points: 5_000_000, seed: 0x5eed_0001 }
    }
}

impl ProjectiveAction {
    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn points(&self) -> &[u64] {
        self.table.payloads().expect("projective orbits keep their points")
    }

    pub fn seed_vector(&self) -> u64 {
        *self.table.seed()
    }

    /// The permutation induced by `m`; fails if `m` does not preserve the orbit.
    pub fn perm_of(&self, m: &Mat) -> Result<Perm> {
        if m.n() != self.n || m.spec() != self.spec {
            return Err(Error::Domain("matrix shape differs from the action".into()));
        }
        let images = self
            .points()
            .iter()
            .map(|&v| {
                let w = normalize_projective(m.vec_mul(v), self.spec);
                self.table
                    .index_of(&w)?
                    .ok_or_else(|| Error::Domain("matrix does not preserve the orbit".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::new(images)
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, spec: FieldSpec) -> u64 {
    loop {
        let mut v = 0u64;
        for j in 0..n {
            v |= (rng.gen_range(0..spec.size()) as u64) << (8 * j);
        }
        if v != 0 {
            return v;
        }
    }
}

/// Finds the smallest orbit of projective points among the candidate seeds
/// (standard basis vectors, then a fixed pseudorandom sequence) and returns
/// the generators as permutations of that orbit.
pub fn projective_action(generators: &[Mat], opts: &ProjectiveOptions) -> Result<ProjectiveAction> {
    let first = generators.first().ok_or_else(|| Error::Domain("no generators".into()))?;
    let (n, spec) = (first.n(), first.spec());
    let mut candidates: Vec<u64> = (0..n).map(|i| 1u64 << (8 * i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_candidates {
        candidates.push(normalize_projective(random_vector(&mut rng, n, spec), spec));
    }
    let act = |v: &u64, g: usize| normalize_projective(generators[g].vec_mul(*v), spec);
    let mut best: Option<OrbitTable<u64>> = None;
    let mut scanned = Vec::new();
    for &cand in &candidates {
        if let Some(b) = &best {
            if b.lookup_key(cand as u128).is_some() {
                continue;
            }
        }
        let limit = best.as_ref().map_or(opts.max_points, |b| b.len());
        match orbit(cand, generators.len(), act, OrbitOptions { max_points: limit, store_payloads: true }) {
            Ok(t) => {
                scanned.push((cand, Some(t.len())));
                best = Some(t);
            }
            Err(Error::Budget(_)) => scanned.push((cand, None)),
            Err(e) => return Err(e),
        }
    }
    let table = best.ok_or_else(|| {
        Error::Budget(format!("no projective orbit with at most {} points", opts.max_points))
    })?;
    info!("projective action: degree {} from seed {:#x}", table.len(), table.seed());
    let mut action = ProjectiveAction { spec, n, table, generators: Vec::new(), scanned };
    action.generators = generators.iter().map(|g| action.perm_of(g)).collect::<Result<_>>()?;
    Ok(action)
}

/// Conjugation action of a group on the conjugates of a cyclic subgroup
/// `<t>` of known order. A point is the canonical generator of its subgroup.
#[derive(Clone, Debug)]
pub struct CyclicConjugation<E> {
    generators: Vec<E>,
    inverses: Vec<E>,
    order: u64,
}

impl<E: GroupElement + crate::group::OrbitPoint> CyclicConjugation<E> {
    pub fn new(generators: &[E], order: u64) -> Self {
        CyclicConjugation {
            generators: generators.to_vec(),
            inverses: generators.iter().map(|g| g.inverse()).collect(),
            order,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn canonical(&self, t: &E) -> E {
        crate::element::cyclic_canonical(t, self.order)
    }

    /// Image of the point under generator `i`.
    pub fn apply(&self, p: &E, i: usize) -> E {
        self.canonical(&self.inverses[i].mul(p).mul(&self.generators[i]))
    }

    /// Image of the point under an arbitrary element.
    pub fn apply_element(&self, p: &E, g: &E) -> E {
        self.canonical(&p.conj(g))
    }

    pub fn orbit(&self, t: &E, opts: OrbitOptions) -> Result<OrbitTable<E>> {
        orbit(self.canonical(t), self.generators.len(), |p, i| self.apply(p, i), opts)
    }
}

/// Matrix specialization with the fast canonicalization path.
impl CyclicConjugation<Mat> {
    pub fn apply_mat(&self, p: &Mat, g: &Mat, g_inv: &Mat) -> Mat {
        p.conj_by(g, g_inv).cyclic_canonical(self.order)
    }
}

/// Right-coset action of a group on the cosets of an enumerated subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction<E> {
    subgroup: Vec<E>,
    generators: Vec<E>,
    table: OrbitTable<E>,
    perms: Vec<Perm>,
}

impl<E: GroupElement + crate::group::OrbitPoint> CosetAction<E> {
    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.perms
    }

    pub fn group_generators(&self) -> &[E] {
        &self.generators
    }

    pub fn table(&self) -> &OrbitTable<E> {
        &self.table
    }

    /// Least element of the coset `U g`.
    pub fn canonical(&self, g: &E) -> E {
        canonical_coset_rep(&self.subgroup, g)
    }

    /// Index of the coset `U g`.
    pub fn point_of(&self, g: &E) -> Result<u32> {
        self.table
            .index_of(&self.canonical(g))?
            .ok_or_else(|| Error::Domain("coset not in the enumerated orbit".into()))
    }

    /// Permutation induced on the cosets by right multiplication with `g`.
    pub fn perm_of(&self, g: &E) -> Result<Perm> {
        let pl = self.table.payloads().expect("coset tables keep their points");
        let images = pl.iter().map(|rep| self.point_of(&rep.mul(g))).collect::<Result<Vec<_>>>()?;
        Perm::new(images)
    }
}

fn canonical_coset_rep<E: GroupElement>(subgroup: &[E], g: &E) -> E {
    let mut best = subgroup[0].mul(g);
    for h in &subgroup[1..] {
        let c = h.mul(g);
        if c.lex_cmp(&best) == Ordering::Less {
            best = c;
        }
    }
    best
}

/// Builds the action on right cosets `U g` by right multiplication. When the
/// group order is given, the degree must equal `group_order / |U|`.
pub fn coset_action<E>(
    generators: &[E],
    subgroup: &SmallGroup<E>,
    group_order: Option<u128>,
    max_points: usize,
) -> Result<CosetAction<E>>
where
    E: GroupElement + crate::group::OrbitPoint,
{
    let subgroup_elems = subgroup.elements().to_vec();
    let identity = subgroup.identity().clone();
    let seed = canonical_coset_rep(&subgroup_elems, &identity);
    let table = orbit(
        seed,
        generators.len(),
        |p, i| canonical_coset_rep(&subgroup_elems, &p.mul(&generators[i])),
        OrbitOptions { max_points, store_payloads: true },
    )?;
    if let Some(n) = group_order {
        if table.len() as u128 * subgroup.len() as u128 != n {
            return Err(Error::Certification(format!(
                "{} cosets of a subgroup of order {} in a group of order {n}",
                table.len(),
                subgroup.len()
            )));
        }
    }
    let mut action = CosetAction {
        subgroup: subgroup_elems,
        generators: generators.to_vec(),
        table,
        perms: Vec::new(),
    };
    action.perms = generators.iter().map(|g| action.perm_of(g)).collect::<Result<_>>()?;
    Ok(action)
}
