//! The normalizer of `<c>` and its elements inverting `c` whose product with
//! `s` is conjugate to `s`.

use log::info;
use serde::Serialize;

use crate::actions::CyclicConjugation;
use crate::classes::{order13_conjugacy_test, Order13Fusion};
use crate::element::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};
use crate::group::{point_stabilizer, OrbitOptions};
use crate::matrix::{encode_atlas_string, Mat};
use crate::suite::census::h_orbit_of;
use crate::triality::{phase_rng, Phase, Triality, GROUP_ORDER};

#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    pub matrix: String,
    pub in_hxh: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkBReport {
    pub c_matrix: String,
    pub c_class_size: usize,
    pub normalizer_order: usize,
    pub order4_elements: usize,
    pub inverting_c: usize,
    pub survivors: Vec<Survivor>,
    pub all_in_hxh: bool,
}

pub fn remark_b_analysis(
    t: &Triality,
    fusion: &Order13Fusion,
    x: &Mat,
    seed: u64,
    store_payloads: bool,
) -> Result<RemarkBReport> {
    let c = t.c;
    let c_inv = c.mat_inv()?;
    let conj4 = CyclicConjugation::new(&t.g.gens, 4);
    let table = conj4.orbit(&c, OrbitOptions { max_points: 10_000_000, store_payloads })?;
    info!("conjugates of <c>: {}", table.len());
    let n = point_stabilizer(
        &table,
        &t.g.gens,
        &t.g.identity,
        |p, r| conj4.apply_mat(p, r, &r.mat_inv().expect("invertible")),
        GROUP_ORDER,
        phase_rng(seed, Phase::Normalizer),
        2000,
    )?;
    drop(table);
    if n.len() != 128 {
        return Err(Error::Certification(format!("normalizer of <c> has order {}", n.len())));
    }
    let conj13 = t.g.sylow_action();
    let hxh = h_orbit_of(&conj13, &t.h, &t.g.s, x)?;
    let mut order4 = 0;
    let mut inverting = 0;
    let mut survivors = Vec::new();
    for z in n.elements() {
        if z.element_order(DEFAULT_ORDER_CAP)? != 4 {
            continue;
        }
        order4 += 1;
        if c.conj_by(z, &z.mat_inv()?) != c_inv {
            continue;
        }
        inverting += 1;
        let sz = t.g.s.mat_mul(z);
        if !order13_conjugacy_test(&t.g.s, &sz, &t.sylow, &t.g.gens, fusion)? {
            continue;
        }
        let point = conj13.apply_mat(&t.g.s, z, &z.mat_inv()?);
        survivors.push(Survivor { matrix: encode_atlas_string(z)?, in_hxh: hxh.contains(&point) });
    }
    Ok(RemarkBReport {
        c_matrix: encode_atlas_string(&c)?,
        c_class_size: (GROUP_ORDER / n.len() as u128) as usize,
        normalizer_order: n.len(),
        order4_elements: order4,
        inverting_c: inverting,
        all_in_hxh: !survivors.is_empty() && survivors.iter().all(|s| s.in_hxh),
        survivors,
    })
}
