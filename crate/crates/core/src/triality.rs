//! The ³D₄(2) setup: generators, the reference permutation action, the
//! certified stabilizer chain, the action on Sylow 13-subgroups and the
//! normalizer `H` of `<ab>`.

use std::time::Instant;

use log::info;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::actions::{projective_action, CyclicConjugation, ProjectiveAction, ProjectiveOptions};
use crate::data::{triality_data, MatrixGroupData};
use crate::element::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};
use crate::group::{
    closure_enumerate, orbit::OrbitOptions, point_stabilizer, schreier_sims, OrbitTable, SchreierSimsOptions,
    SmallGroup, StabChain,
};
use crate::matrix::{eval_word, Mat};

/// |³D₄(2)| = 2^12 · 3^4 · 7^2 · 13.
pub const GROUP_ORDER: u128 = 211_341_312;
/// Number of Sylow 13-subgroups.
pub const SYLOW_DEGREE: usize = 4_064_256;
pub const H_ORDER: usize = 52;

const _: () = assert!(GROUP_ORDER == 4096 * 81 * 49 * 13);
const _: () = assert!(GROUP_ORDER == (SYLOW_DEGREE * H_ORDER) as u128);

/// Independent RNG streams, one per randomized phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Chain = 1,
    Stabilizer = 2,
    Classes = 3,
    Normalizer = 4,
    Sampling = 5,
    SmallGroups = 6,
    Verification = 7,
}

pub fn phase_rng(seed: u64, phase: Phase) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(phase as u64);
    rng
}

pub const DEFAULT_SEED: u64 = 0x3d42_0001;

#[derive(Clone, Debug)]
pub struct TrialityConfig {
    pub seed: u64,
    /// Keep per-point canonical matrices of the Sylow orbit in memory.
    pub store_payloads: bool,
    pub projective: ProjectiveOptions,
}

impl Default for TrialityConfig {
    fn default() -> Self {
        TrialityConfig { seed: DEFAULT_SEED, store_payloads: true, projective: ProjectiveOptions::default() }
    }
}

/// Generators and derived elements that need no heavy computation.
#[derive(Clone, Debug)]
pub struct Generators {
    pub data: &'static MatrixGroupData,
    pub gens: Vec<Mat>,
    pub gens_inv: Vec<Mat>,
    /// `s = ab`, of order 13.
    pub s: Mat,
    pub x: Mat,
    pub identity: Mat,
}

impl Generators {
    pub fn load() -> Result<Self> {
        let data = triality_data();
        let gens = data.generators.clone();
        if gens.len() != 2 {
            return Err(Error::Domain("expected two generators a, b".into()));
        }
        let gens_inv = gens.iter().map(|g| g.mat_inv()).collect::<Result<Vec<_>>>()?;
        let s = gens[0].mat_mul(&gens[1]);
        let so = s.element_order(DEFAULT_ORDER_CAP)?;
        if so != 13 {
            return Err(Error::Certification(format!("ab has order {so}, expected 13")));
        }
        let word = data.word("x").ok_or_else(|| Error::Domain("no word x in data".into()))?;
        let x = eval_word(word, &gens)?;
        let identity = Mat::identity(8, data.spec);
        Ok(Generators { data, gens, gens_inv, s, x, identity })
    }

    pub fn sylow_action(&self) -> CyclicConjugation<Mat> {
        CyclicConjugation::new(&self.gens, 13)
    }
}

pub fn build_reference_action(g: &Generators, cfg: &TrialityConfig) -> Result<(ProjectiveAction, StabChain)> {
    let t = Instant::now();
    let action = projective_action(&g.gens, &cfg.projective)?;
    let chain = schreier_sims(
        action.degree(),
        action.generators(),
        Some(GROUP_ORDER),
        phase_rng(cfg.seed, Phase::Chain),
        &SchreierSimsOptions::default(),
    )?;
    info!(
        "reference action of degree {} certified order {} in {:.2?}",
        action.degree(),
        chain.order(),
        t.elapsed()
    );
    Ok((action, chain))
}

pub fn build_sylow_orbit(g: &Generators, cfg: &TrialityConfig) -> Result<OrbitTable<Mat>> {
    let t = Instant::now();
    let conj = g.sylow_action();
    let table = conj.orbit(
        &g.s,
        OrbitOptions { max_points: 4_100_000, store_payloads: cfg.store_payloads },
    )?;
    info!("Sylow 13 orbit: {} points in {:.2?}", table.len(), t.elapsed());
    if table.len() != SYLOW_DEGREE {
        return Err(Error::Certification(format!(
            "Sylow orbit has {} points, expected {SYLOW_DEGREE}",
            table.len()
        )));
    }
    Ok(table)
}

/// `H = N_G(<s>)` as the stabilizer of the seed of the Sylow orbit.
pub fn build_normalizer_h(g: &Generators, sylow: &OrbitTable<Mat>, cfg: &TrialityConfig) -> Result<SmallGroup<Mat>> {
    let conj = g.sylow_action();
    let found = point_stabilizer(
        sylow,
        &g.gens,
        &g.identity,
        |p, r| conj.apply_element(p, r),
        GROUP_ORDER,
        phase_rng(cfg.seed, Phase::Stabilizer),
        1000,
    )?;
    // re-enumerate from <s, c> so the element order is reproducible
    let c = first_of_order(&found, 4).ok_or_else(|| Error::Certification("H has no element of order 4".into()))?;
    let h = closure_enumerate(&[g.s, c], &g.identity, H_ORDER)?;
    if h.len() != H_ORDER || h.elements().iter().any(|e| !found.contains(e)) {
        return Err(Error::Certification("H is not generated by s and an order-4 element".into()));
    }
    Ok(h)
}

pub fn first_of_order(group: &SmallGroup<Mat>, order: u64) -> Option<Mat> {
    group
        .elements()
        .iter()
        .find(|e| e.element_order(DEFAULT_ORDER_CAP).ok() == Some(order))
        .copied()
}

/// Structure facts of `H = <s> ⋊ <c>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStructure {
    /// `s^c = s^j`.
    pub exponent: u64,
    pub c_order: u64,
    pub order_histogram: Vec<(u64, usize)>,
}

pub fn h_structure(g: &Generators, h: &SmallGroup<Mat>, c: &Mat) -> Result<HStructure> {
    let sc = g.s.conj_by(c, &c.mat_inv()?);
    let mut p = g.identity;
    let mut exponent = None;
    for j in 0..13 {
        if p == sc {
            exponent = Some(j);
            break;
        }
        p = p.mat_mul(&g.s);
    }
    let exponent = exponent.ok_or_else(|| Error::Certification("c does not normalize <s>".into()))?;
    Ok(HStructure {
        exponent,
        c_order: c.element_order(DEFAULT_ORDER_CAP)?,
        order_histogram: h.order_histogram(),
    })
}

/// Everything the theorem and census need, assembled once.
pub struct Triality {
    pub g: Generators,
    pub action: ProjectiveAction,
    pub chain: StabChain,
    pub sylow: OrbitTable<Mat>,
    pub h: SmallGroup<Mat>,
    pub c: Mat,
}

impl Triality {
    pub fn build(cfg: &TrialityConfig) -> Result<Self> {
        let g = Generators::load()?;
        let (action, chain) = build_reference_action(&g, cfg)?;
        let sylow = build_sylow_orbit(&g, cfg)?;
        Self::assemble(g, action, chain, sylow, cfg)
    }

    pub fn assemble(
        g: Generators,
        action: ProjectiveAction,
        chain: StabChain,
        sylow: OrbitTable<Mat>,
        cfg: &TrialityConfig,
    ) -> Result<Self> {
        let h = build_normalizer_h(&g, &sylow, cfg)?;
        let c = first_of_order(&h, 4).expect("H has order-4 elements");
        Ok(Triality { g, action, chain, sylow, h, c })
    }

    /// Sylow point of `<s>^y`.
    pub fn sylow_point(&self, y: &Mat) -> Result<u32> {
        let conj = self.g.sylow_action();
        let p = conj.apply_mat(&self.g.s, y, &y.mat_inv()?);
        match self.sylow.payloads() {
            Some(_) => self.sylow.index_of(&p)?,
            None => self.sylow.lookup_key(p.key()),
        }
        .ok_or_else(|| Error::Domain("subgroup not found in the Sylow orbit".into()))
    }

    /// Transversal element `u` with `<s>^u` the given point.
    pub fn sylow_transversal(&self, idx: u32) -> Mat {
        self.sylow.transversal_element(idx, &self.g.gens, &self.g.identity)
    }

    /// Canonical matrix of a Sylow point, stored or re-derived.
    pub fn sylow_payload(&self, idx: u32) -> Mat {
        let conj = self.g.sylow_action();
        self.sylow.derive_payload(idx, |p, i| conj.apply(p, i))
    }

    /// Membership of a matrix in `H` through the reference action's chain of `H`.
    pub fn h_chain(&self, seed: u64) -> Result<StabChain> {
        let perms = self.h.generators().iter().map(|m| self.action.perm_of(m)).collect::<Result<Vec<_>>>()?;
        schreier_sims(
            self.action.degree(),
            &perms,
            Some(H_ORDER as u128),
            phase_rng(seed, Phase::Verification),
            &SchreierSimsOptions::default(),
        )
    }
}

/// Element of `³D₄(2)` as a permutation in the reference action.
pub fn to_perm(t: &Triality, m: &Mat) -> Result<crate::perm::Perm> {
    t.action.perm_of(m)
}
