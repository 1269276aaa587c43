//! Conjugacy classes by conjugation orbits, cheap class tags validated against
//! class membership sets, and conjugacy of order-13 elements by power fusion.

use std::collections::{BTreeMap, HashSet, VecDeque};

use log::info;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};
use crate::group::{OrbitTable, ProductReplacement, SmallGroup};
use crate::keys::KeySet;
use crate::actions::normalize_projective;
use crate::matrix::{scale_lanes, Mat, RankProfile};

/// Class tag: the rank profile, refined by [`ReferenceOrbit::refinement`]
/// when the profile alone is shared by several classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassTag {
    pub profile: RankProfile,
    pub refinement: Option<[u32; 3]>,
}

impl ClassTag {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut v = self.profile.to_bytes();
        for x in self.refinement.iter().flatten() {
            v.extend_from_slice(&x.to_be_bytes());
        }
        v
    }
}

/// A group-invariant set of projective points (normalized packed vectors).
#[derive(Clone, Debug)]
pub struct ReferenceOrbit {
    points: Vec<u64>,
    set: HashSet<u64>,
}

impl ReferenceOrbit {
    pub fn new(points: &[u64]) -> Self {
        ReferenceOrbit { points: points.to_vec(), set: points.iter().copied().collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn fixed_points(&self, y: &Mat) -> u32 {
        let spec = y.spec();
        self.points.iter().filter(|&&v| normalize_projective(y.vec_mul(v), spec) == v).count() as u32
    }

    /// Moved points `p` whose projective line through `p` and `p·y` lies
    /// entirely inside the orbit.
    pub fn moved_lines_inside(&self, y: &Mat) -> u32 {
        let spec = y.spec();
        let mut count = 0;
        for &p in &self.points {
            let q = normalize_projective(y.vec_mul(p), spec);
            if q == p {
                continue;
            }
            let inside = (1..spec.size() as u8)
                .all(|l| self.set.contains(&normalize_projective(p ^ scale_lanes(q, l, spec), spec)));
            count += inside as u32;
        }
        count
    }

    /// `[fixed points of y, fixed points of y², moved lines of y inside]`.
    pub fn refinement(&self, y: &Mat) -> [u32; 3] {
        [self.fixed_points(y), self.fixed_points(&y.mat_mul(y)), self.moved_lines_inside(y)]
    }
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub representative: Mat,
    pub tag: ClassTag,
    pub size: u64,
    pub centralizer_order: u128,
    /// 128-bit keys of all class members.
    pub members: Option<KeySet>,
}

impl ClassRecord {
    pub fn order(&self) -> u64 {
        self.tag.profile.order
    }

    pub fn contains(&self, y: &Mat) -> Option<bool> {
        self.members.as_ref().map(|m| m.contains(&y.key()))
    }
}

/// The class of `y` as the orbit of `y` under conjugation by the generators.
pub fn conjugation_orbit(
    y: &Mat,
    gens: &[Mat],
    gens_inv: &[Mat],
    group_order: u128,
    cap: usize,
    keep_members: bool,
) -> Result<ClassRecord> {
    let mut seen = KeySet::default();
    seen.insert(y.key());
    let mut queue = VecDeque::from([*y]);
    while let Some(z) = queue.pop_front() {
        for (g, gi) in gens.iter().zip(gens_inv) {
            let w = z.conj_by(g, gi);
            if seen.insert(w.key()) {
                if seen.len() > cap {
                    return Err(Error::Budget(format!("conjugacy class exceeds {cap} elements")));
                }
                queue.push_back(w);
            }
        }
    }
    let size = seen.len() as u64;
    if !group_order.is_multiple_of(size as u128) {
        return Err(Error::Certification(format!("class size {size} does not divide {group_order}")));
    }
    Ok(ClassRecord {
        representative: *y,
        tag: ClassTag { profile: y.rank_profile()?, refinement: None },
        size,
        centralizer_order: group_order / size as u128,
        members: keep_members.then_some(seen),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplingStats {
    pub samples: usize,
    /// Per target order: random samples of exactly that order.
    pub observed: BTreeMap<u64, usize>,
    /// Per target order: samples expected from the discovered class sizes.
    pub expected: BTreeMap<u64, f64>,
}

#[derive(Clone, Debug)]
pub struct ClassTable {
    pub group_order: u128,
    pub records: Vec<ClassRecord>,
    /// Tags are pairwise distinct across the discovered classes.
    pub tags_separate: bool,
    pub stats: SamplingStats,
    /// Points used to refine ambiguous rank profiles.
    pub reference: Option<ReferenceOrbit>,
}

pub struct ClassTableOptions {
    pub orders: Vec<u64>,
    pub samples: usize,
    pub class_cap: usize,
}

impl Default for ClassTableOptions {
    fn default() -> Self {
        ClassTableOptions { orders: vec![2, 4], samples: 50_000, class_cap: 10_000_000 }
    }
}

impl ClassTable {
    pub fn classify_by_members(&self, y: &Mat, order: u64) -> Option<usize> {
        let key = y.key();
        self.records.iter().position(|r| {
            r.order() == order && r.members.as_ref().is_some_and(|m| m.contains(&key))
        })
    }

    pub fn classify_by_tag(&self, y: &Mat, order: u64) -> Option<usize> {
        let profile = y.rank_profile_with_order(order);
        let mut candidates = (0..self.records.len()).filter(|&i| self.records[i].tag.profile == profile);
        let first = candidates.next()?;
        if self.records[first].tag.refinement.is_none() {
            return Some(first);
        }
        let refinement = Some(self.reference.as_ref()?.refinement(y));
        std::iter::once(first).chain(candidates).find(|&i| self.records[i].tag.refinement == refinement)
    }

    /// Full tag of `y` as it would be stored for its class.
    pub fn tag_of(&self, y: &Mat, order: u64) -> ClassTag {
        let profile = y.rank_profile_with_order(order);
        let refined = self.records.iter().any(|r| r.tag.profile == profile && r.tag.refinement.is_some());
        let refinement = match (&self.reference, refined) {
            (Some(reference), true) => Some(reference.refinement(y)),
            _ => None,
        };
        ClassTag { profile, refinement }
    }

    /// Class index of `y`, by tag when tags are validated, else by membership.
    pub fn classify(&self, y: &Mat, order: u64) -> Option<usize> {
        if self.tags_separate {
            self.classify_by_tag(y, order)
        } else {
            self.classify_by_members(y, order)
        }
    }

    pub fn classes_of_order(&self, order: u64) -> Vec<usize> {
        (0..self.records.len()).filter(|&i| self.records[i].order() == order).collect()
    }

    /// One line per class: order, class size, centralizer order, tag bytes.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let hex: String = r.tag.to_bytes().iter().map(|b| format!("{b:02x}")).collect();
            out.push_str(&format!("{} {} {} {}\n", r.order(), r.size, r.centralizer_order, hex));
        }
        out
    }
}

/// Discovers the classes of the requested element orders from `seeds` and
/// random elements powered down to each order, then validates the rank
/// profile tags against the membership sets. Classes whose rank profiles
/// coincide get their tags refined on `reference`.
#[allow(clippy::too_many_arguments)]
pub fn build_class_table(
    gens: &[Mat],
    gens_inv: &[Mat],
    identity: &Mat,
    group_order: u128,
    seeds: &[Mat],
    reference: Option<ReferenceOrbit>,
    rng: ChaCha8Rng,
    opts: &ClassTableOptions,
) -> Result<ClassTable> {
    let mut records: Vec<ClassRecord> = Vec::new();
    let absorb = |y: &Mat, o: u64, records: &mut Vec<ClassRecord>| -> Result<()> {
        let key = y.key();
        let known = records
            .iter()
            .any(|r| r.order() == o && r.members.as_ref().is_some_and(|m| m.contains(&key)));
        if !known {
            let rec = conjugation_orbit(y, gens, gens_inv, group_order, opts.class_cap, true)?;
            info!("class of order {o}: size {}, centralizer {}", rec.size, rec.centralizer_order);
            records.push(rec);
        }
        Ok(())
    };
    for y in seeds {
        let o = y.element_order(DEFAULT_ORDER_CAP)?;
        if opts.orders.contains(&o) {
            absorb(y, o, &mut records)?;
        }
    }
    let mut pr = ProductReplacement::new(gens, identity, rng);
    let mut observed: BTreeMap<u64, usize> = opts.orders.iter().map(|&o| (o, 0)).collect();
    for _ in 0..opts.samples {
        let r = pr.next_element();
        let m = r.element_order(DEFAULT_ORDER_CAP)?;
        for &o in &opts.orders {
            if m % o != 0 {
                continue;
            }
            if m == o {
                *observed.get_mut(&o).unwrap() += 1;
            }
            let y = crate::element::GroupElement::pow(&r, (m / o) as i64);
            absorb(&y, o, &mut records)?;
        }
    }
    records.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then(b.centralizer_order.cmp(&a.centralizer_order))
    });
    let mut expected = BTreeMap::new();
    for &o in &opts.orders {
        let total: u64 = records.iter().filter(|r| r.order() == o).map(|r| r.size).sum();
        let e = opts.samples as f64 * total as f64 / group_order as f64;
        let seen = observed[&o] as f64;
        // the two counts estimate the same proportion
        if (seen - e).abs() > 6.0 * e.sqrt() + 6.0 {
            return Err(Error::Certification(format!(
                "order {o}: {seen} random samples vs {e:.1} expected from the class sizes"
            )));
        }
        expected.insert(o, e);
    }
    let profiles: Vec<RankProfile> = records.iter().map(|r| r.tag.profile).collect();
    if let Some(reference) = &reference {
        for r in records.iter_mut() {
            if profiles.iter().filter(|&&p| p == r.tag.profile).count() > 1 {
                r.tag.refinement = Some(reference.refinement(&r.representative));
            }
        }
    }
    let mut tags: Vec<ClassTag> = records.iter().map(|r| r.tag).collect();
    tags.sort();
    tags.dedup();
    let tags_separate = tags.len() == records.len();
    Ok(ClassTable {
        group_order,
        records,
        tags_separate,
        stats: SamplingStats { samples: opts.samples, observed, expected },
        reference,
    })
}

/// Which exponents `j` have `s^j` conjugate to `s` inside `H`.
#[derive(Clone, Debug)]
pub struct Order13Fusion {
    pub exponents: Vec<u64>,
}

impl Order13Fusion {
    pub fn from_h(s: &Mat, h: &SmallGroup<Mat>) -> Result<Self> {
        let powers = powers_of(s, 13);
        let mut exps: Vec<u64> = Vec::new();
        for z in h.elements() {
            let sz = s.conj_by(z, &z.mat_inv()?);
            let j = powers
                .iter()
                .position(|p| *p == sz)
                .ok_or_else(|| Error::Certification("H does not normalize <s>".into()))?;
            if !exps.contains(&(j as u64)) {
                exps.push(j as u64);
            }
        }
        exps.sort();
        Ok(Order13Fusion { exponents: exps })
    }
}

fn powers_of(s: &Mat, n: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(n);
    let mut p = Mat::identity(s.n(), s.spec());
    for _ in 0..n {
        out.push(p);
        p = p.mat_mul(s);
    }
    out
}

/// Whether `t` (of order 13) is conjugate to `s`: move `<t>` onto `<s>` with
/// the inverse of its Sylow transversal and read off the exponent.
pub fn order13_conjugacy_test(
    s: &Mat,
    t: &Mat,
    sylow: &OrbitTable<Mat>,
    gens: &[Mat],
    fusion: &Order13Fusion,
) -> Result<bool> {
    if t.element_order(DEFAULT_ORDER_CAP)? != 13 {
        return Ok(false);
    }
    let canon = t.cyclic_canonical(13);
    let idx = match sylow.payloads() {
        Some(_) => sylow.index_of(&canon)?,
        None => sylow.lookup_key(canon.key()),
    }
    .ok_or_else(|| Error::Domain("subgroup of an order-13 element missing from the Sylow orbit".into()))?;
    let u = sylow.transversal_element(idx, gens, &Mat::identity(s.n(), s.spec()));
    let moved = t.conj_by(&u.mat_inv()?, &u);
    let j = powers_of(s, 13)
        .iter()
        .position(|p| *p == moved)
        .ok_or_else(|| Error::Domain("transversal does not map <t> onto <s>".into()))?;
    Ok(fusion.exponents.contains(&(j as u64)))
}
