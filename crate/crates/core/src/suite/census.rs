//! `H`-orbits on the Sylow points, i.e. the double cosets `HyH`, and which of
//! them consist of covered cosets.

use std::time::Instant;

use log::info;
use rayon::prelude::*;
use serde::Serialize;

use crate::actions::CyclicConjugation;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::suite::coverage::CoverageCriterion;
use crate::suite::path_word;
use crate::triality::Triality;
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, Serialize)]
pub struct CoveredOrbit {
    /// Position among the non-seed orbits, ordered by smallest point.
    pub orbit_id: usize,
    pub representative: u32,
    pub size: usize,
    /// Word in `a, b` for a representative `y` of the double coset.
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    /// Number of `H`-orbits other than `{seed}`.
    pub orbit_count: usize,
    pub seed_orbit_size: usize,
    pub total_points: usize,
    /// Orbit size -> number of non-seed orbits of that size.
    pub orbit_size_histogram: Vec<(usize, usize)>,
    pub covered_orbits: Vec<CoveredOrbit>,
    /// Sylow point of `<s>^x` and whether its orbit is covered.
    pub x_point: u32,
    pub x_orbit_covered: bool,
    pub partition_seconds: f64,
    pub coverage_seconds: f64,
}

/// Partitions the Sylow points into `H`-orbits and tests one coset per orbit.
pub fn double_coset_census(t: &Triality, criterion: &CoverageCriterion<'_>, x: &Mat) -> Result<CensusReport> {
    let started = Instant::now();
    let n = t.sylow.len();
    let conj = t.g.sylow_action();
    let h_gens: Vec<Mat> = t.h.generators().to_vec();
    let h_inv: Vec<Mat> = h_gens.iter().map(|g| g.mat_inv()).collect::<Result<_>>()?;
    let images: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map(|i| -> Result<Vec<u32>> {
            let p = t.sylow_payload(i);
            h_gens
                .iter()
                .zip(&h_inv)
                .map(|(g, gi)| {
                    let q = conj.apply_mat(&p, g, gi);
                    lookup(t, &q)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut uf = UnionFind::new(n);
    for (i, img) in images.iter().enumerate() {
        for &j in img {
            uf.union(i as u32, j);
        }
    }
    drop(images);
    // orbits keyed by their smallest point, in increasing order
    let mut root_to_orbit = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for i in 0..n as u32 {
        let r = uf.find(i) as usize;
        if root_to_orbit[r] == u32::MAX {
            root_to_orbit[r] = reps.len() as u32;
            reps.push(i);
            sizes.push(0);
        }
        sizes[root_to_orbit[r] as usize] += 1;
    }
    let partition_seconds = started.elapsed().as_secs_f64();
    info!("census: {} H-orbits in {:.1}s", reps.len(), partition_seconds);
    if reps[0] != 0 || sizes[0] != 1 {
        return Err(Error::Certification(format!("seed orbit has {} points", sizes[0])));
    }
    let x_point = t.sylow_point(x)?;
    let x_orbit = root_to_orbit[uf.find(x_point) as usize] as usize;

    let started = Instant::now();
    let covered_flags: Vec<bool> = reps[1..]
        .par_iter()
        .map(|&rep| {
            let y = t.sylow_transversal(rep);
            criterion.coset_covered(&t.h, &y)
        })
        .collect::<Result<_>>()?;
    let coverage_seconds = started.elapsed().as_secs_f64();
    info!("census: coverage tests in {:.1}s", coverage_seconds);

    let covered_orbits: Vec<CoveredOrbit> = covered_flags
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(k, _)| {
            let rep = reps[k + 1];
            CoveredOrbit {
                orbit_id: k + 1,
                representative: rep,
                size: sizes[k + 1],
                word: path_word(&t.sylow.path(rep), &t.g.data.names),
            }
        })
        .collect();
    let mut hist = std::collections::BTreeMap::new();
    for &s in &sizes[1..] {
        *hist.entry(s).or_insert(0) += 1;
    }
    Ok(CensusReport {
        orbit_count: reps.len() - 1,
        seed_orbit_size: sizes[0],
        total_points: sizes.iter().sum(),
        orbit_size_histogram: hist.into_iter().collect(),
        x_orbit_covered: x_orbit > 0 && covered_flags[x_orbit - 1],
        covered_orbits,
        x_point,
        partition_seconds,
        coverage_seconds,
    })
}

fn lookup(t: &Triality, q: &Mat) -> Result<u32> {
    match t.sylow.payloads() {
        Some(_) => t.sylow.index_of(q)?,
        None => t.sylow.lookup_key(q.key()),
    }
    .ok_or_else(|| Error::Domain("H maps a Sylow point outside the orbit".into()))
}

/// Sylow points of the `H`-orbit of `<s>^y`, as canonical matrices.
pub fn h_orbit_of(conj: &CyclicConjugation<Mat>, h: &crate::group::SmallGroup<Mat>, s: &Mat, y: &Mat) -> Result<Vec<Mat>> {
    let base = conj.apply_mat(s, y, &y.mat_inv()?);
    let mut out: Vec<Mat> = Vec::new();
    for z in h.elements() {
        let p = conj.apply_mat(&base, z, &z.mat_inv()?);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}
