//! On-disk cache of the certified reference chain and the Sylow orbit table.
//!
//! Layout: magic `DRGT1`, a version byte, then sections, each a tag byte, a
//! little-endian `u64` length, an xxh3-128 checksum of the body, and the body.
//! Loading re-checks every checksum, the chain order, membership of the
//! generators, all point keys and a sample of Schreier links.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};

use crate::actions::{projective_action, ProjectiveAction};
use crate::error::{Error, Result};
use crate::field::GF8;
use crate::group::{OrbitTable, SchreierLink, StabChain};
use crate::keys::key128;
use crate::matrix::Mat;
use crate::perm::Perm;
use crate::triality::{build_reference_action, build_sylow_orbit, Generators, Triality, TrialityConfig, GROUP_ORDER};

pub const MAGIC: &[u8; 5] = b"DRGT1";
pub const VERSION: u8 = 1;

const META: u8 = 1;
const BASE: u8 = 2;
const STRONG: u8 = 3;
const KEYS: u8 = 4;
const SCHREIER: u8 = 5;
const PAYLOADS: u8 = 6;

/// Schreier links re-derived on load.
const LINK_SAMPLE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Built,
    Loaded,
    /// The file existed but was rejected; the payload is the reason.
    Rebuilt(String),
}

pub fn cache_path(dir: &Path, cfg: &TrialityConfig) -> PathBuf {
    let kind = if cfg.store_payloads { "full" } else { "lean" };
    dir.join(format!("triality-{:016x}-{kind}.drgt", cfg.seed))
}

fn section(out: &mut impl Write, tag: u8, body: &[u8]) -> Result<()> {
    out.write_all(&[tag])?;
    out.write_all(&(body.len() as u64).to_le_bytes())?;
    out.write_all(&key128(body).to_le_bytes())?;
    out.write_all(body)?;
    Ok(())
}

pub fn save(path: &Path, cfg: &TrialityConfig, chain: &StabChain, sylow: &OrbitTable<Mat>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    let mut out = BufWriter::new(fs::File::create(&tmp)?);
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION])?;

    let mut meta = Vec::new();
    meta.extend_from_slice(&cfg.seed.to_le_bytes());
    meta.extend_from_slice(&(chain.degree() as u32).to_le_bytes());
    meta.extend_from_slice(&chain.order().to_le_bytes());
    meta.extend_from_slice(&(sylow.len() as u32).to_le_bytes());
    meta.push(sylow.num_generators() as u8);
    meta.push(sylow.has_payloads() as u8);
    section(&mut out, META, &meta)?;

    let base: Vec<u8> = chain.base().iter().flat_map(|b| b.to_le_bytes()).collect();
    section(&mut out, BASE, &base)?;
    let mut strong = (chain.strong_generators().len() as u32).to_le_bytes().to_vec();
    for g in chain.strong_generators() {
        strong.extend(g.images().iter().flat_map(|x| x.to_le_bytes()));
    }
    section(&mut out, STRONG, &strong)?;

    let keys: Vec<u8> = sylow.key_list().iter().flat_map(|k| k.to_le_bytes()).collect();
    section(&mut out, KEYS, &keys)?;
    let mut links = Vec::with_capacity(sylow.len() * 5);
    for l in sylow.schreier() {
        links.extend_from_slice(&l.parent.to_le_bytes());
        links.push(l.generator);
    }
    section(&mut out, SCHREIER, &links)?;
    if let Some(pl) = sylow.payloads() {
        let mut body = Vec::with_capacity(pl.len() * 64);
        for m in pl {
            body.extend(m.rows().iter().flat_map(|r| r.to_le_bytes()));
        }
        section(&mut out, PAYLOADS, &body)?;
    }
    out.flush()?;
    drop(out);
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.data.len());
        let end = end.ok_or_else(|| Error::Cache("truncated file".into()))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn section(&mut self, tag: u8) -> Result<&'a [u8]> {
        let t = self.take(1)?[0];
        if t != tag {
            return Err(Error::Cache(format!("expected section {tag}, found {t}")));
        }
        let len = u64::from_le_bytes(self.take(8)?.try_into().unwrap()) as usize;
        let sum = u128::from_le_bytes(self.take(16)?.try_into().unwrap());
        let body = self.take(len)?;
        if key128(body) != sum {
            return Err(Error::Cache(format!("checksum mismatch in section {tag}")));
        }
        Ok(body)
    }
}

fn u32s(b: &[u8]) -> impl Iterator<Item = u32> + '_ {
    b.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap()))
}

/// Reads and re-verifies a cache written by [`save`] for the same configuration.
pub fn load(path: &Path, g: &Generators, cfg: &TrialityConfig) -> Result<(ProjectiveAction, StabChain, OrbitTable<Mat>)> {
    let data = fs::read(path)?;
    if data.len() < 6 || &data[..5] != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    if data[5] != VERSION {
        return Err(Error::Cache(format!("unsupported version {}", data[5])));
    }
    let mut r = Reader { data: &data, pos: 6 };
    let meta = r.section(META)?;
    if meta.len() != 34 {
        return Err(Error::Cache("bad metadata".into()));
    }
    let seed = u64::from_le_bytes(meta[0..8].try_into().unwrap());
    let degree = u32::from_le_bytes(meta[8..12].try_into().unwrap()) as usize;
    let order = u128::from_le_bytes(meta[12..28].try_into().unwrap());
    let points = u32::from_le_bytes(meta[28..32].try_into().unwrap()) as usize;
    let ngens = meta[32] as usize;
    let has_payloads = meta[33] == 1;
    if seed != cfg.seed || has_payloads != cfg.store_payloads || order != GROUP_ORDER {
        return Err(Error::Cache("cache written for a different configuration".into()));
    }

    let base: Vec<u32> = u32s(r.section(BASE)?).collect();
    let strong_body = r.section(STRONG)?;
    if strong_body.len() < 4 {
        return Err(Error::Cache("bad strong generator section".into()));
    }
    let count = u32::from_le_bytes(strong_body[..4].try_into().unwrap()) as usize;
    let images: Vec<u32> = u32s(&strong_body[4..]).collect();
    if images.len() != count * degree {
        return Err(Error::Cache("bad strong generator section".into()));
    }
    let strong = images.chunks_exact(degree.max(1)).map(|c| Perm::new(c.to_vec())).collect::<Result<Vec<_>>>()?;
    let chain = StabChain::from_base_and_generators(degree, &base, strong)?;
    if chain.order() != GROUP_ORDER || !chain.verify_strong_generators() {
        return Err(Error::Cache(format!("cached chain has order {}", chain.order())));
    }
    let action = projective_action(&g.gens, &cfg.projective)?;
    if action.degree() != degree || !action.generators().iter().all(|p| chain.contains(p)) {
        return Err(Error::Cache("cached chain does not contain the generators".into()));
    }

    let keys: Vec<u128> = r
        .section(KEYS)?
        .chunks_exact(16)
        .map(|c| u128::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let schreier: Vec<SchreierLink> = r
        .section(SCHREIER)?
        .chunks_exact(5)
        .map(|c| SchreierLink { parent: u32::from_le_bytes(c[..4].try_into().unwrap()), generator: c[4] })
        .collect();
    if keys.len() != points || schreier.len() != points {
        return Err(Error::Cache("orbit sections have the wrong length".into()));
    }
    let payloads = if has_payloads {
        let body = r.section(PAYLOADS)?;
        if body.len() != points * 64 {
            return Err(Error::Cache("payload section has the wrong length".into()));
        }
        let mut pl = Vec::with_capacity(points);
        for chunk in body.chunks_exact(64) {
            let rows: Vec<u64> = chunk.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
            pl.push(Mat::from_packed_rows(8, GF8, &rows)?);
        }
        Some(pl)
    } else {
        None
    };
    if r.pos != data.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    let conj = g.sylow_action();
    let table = OrbitTable::from_parts(conj.canonical(&g.s), ngens, schreier, keys, payloads)?;
    // re-derive a spread of points from their Schreier paths
    let step = (points / LINK_SAMPLE).max(1);
    for idx in (0..points).step_by(step).chain([points - 1]) {
        let derived = table.transversal_element(idx as u32, &g.gens, &g.identity);
        let p = conj.apply_mat(&g.s, &derived, &derived.mat_inv()?);
        if table.lookup_key(p.key()) != Some(idx as u32) {
            return Err(Error::Cache(format!("Schreier path of point {idx} does not reach it")));
        }
    }
    Ok((action, chain, table))
}

/// Loads the cached chain and orbit from `cache_dir` when possible and
/// otherwise builds them (and writes the cache).
pub fn load_or_build(cfg: &TrialityConfig, cache_dir: Option<&Path>) -> Result<(Triality, CacheStatus)> {
    let g = Generators::load()?;
    let Some(dir) = cache_dir else {
        return Ok((Triality::build(cfg)?, CacheStatus::Disabled));
    };
    let path = cache_path(dir, cfg);
    let mut status = CacheStatus::Built;
    if path.exists() {
        let t = Instant::now();
        match load(&path, &g, cfg) {
            Ok((action, chain, sylow)) => {
                info!("cache {} loaded and verified in {:.2?}", path.display(), t.elapsed());
                return Ok((Triality::assemble(g, action, chain, sylow, cfg)?, CacheStatus::Loaded));
            }
            Err(e) => {
                warn!("rejecting cache {}: {e}", path.display());
                status = CacheStatus::Rebuilt(e.to_string());
            }
        }
    }
    let (action, chain) = build_reference_action(&g, cfg)?;
    let sylow = build_sylow_orbit(&g, cfg)?;
    save(&path, cfg, &chain, &sylow)?;
    info!("cache written to {}", path.display());
    Ok((Triality::assemble(g, action, chain, sylow, cfg)?, status))
}
