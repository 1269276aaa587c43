//! Block systems of transitive actions: the smallest block containing two
//! points by union-find closure, and an exhaustive search over candidate blocks.

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::unionfind::UnionFind;

/// Block labels (class root per point) of the finest block system in which
/// `a` and `b` share a block.
pub fn minimal_block_system(generators: &[Perm], degree: usize, a: u32, b: u32) -> Vec<u32> {
    let mut uf = UnionFind::new(degree);
    let mut pending = Vec::new();
    if uf.union(a, b) {
        pending.push((a, b));
    }
    while let Some((x, y)) = pending.pop() {
        for g in generators {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.find(gx) != uf.find(gy) {
                uf.union(gx, gy);
                pending.push((gx, gy));
            }
        }
    }
    (0..degree as u32).map(|p| uf.find(p)).collect()
}

/// Size of the smallest block containing `a` and `b`.
pub fn minimal_block_size(generators: &[Perm], degree: usize, a: u32, b: u32) -> usize {
    let labels = minimal_block_system(generators, degree, a, b);
    labels.iter().filter(|&&l| l == labels[a as usize]).count()
}

pub fn is_primitive_by_blocks(generators: &[Perm], degree: usize) -> bool {
    (1..degree as u32).all(|b| minimal_block_size(generators, degree, 0, b) == degree)
}

/// Whether the images of `block` under the group are pairwise equal or disjoint.
pub fn is_block(generators: &[Perm], degree: usize, block: &[u32]) -> bool {
    let as_mask = |s: &[u32]| {
        let mut m = vec![false; degree];
        for &p in s {
            m[p as usize] = true;
        }
        m
    };
    let mut images: Vec<Vec<bool>> = vec![as_mask(block)];
    let mut cursor = 0;
    while cursor < images.len() {
        let current: Vec<u32> = (0..degree as u32).filter(|&p| images[cursor][p as usize]).collect();
        cursor += 1;
        for g in generators {
            let img: Vec<u32> = current.iter().map(|&p| g.apply(p)).collect();
            let mask = as_mask(&img);
            let mut is_new = true;
            for other in &images {
                let common = img.iter().filter(|&&p| other[p as usize]).count();
                if common == img.len() {
                    is_new = false;
                    break;
                }
                if common != 0 {
                    return false;
                }
            }
            if is_new {
                images.push(mask);
            }
        }
    }
    true
}

/// All nontrivial blocks containing point 0, by testing every subset whose
/// size properly divides the degree. Fails when there are more than
/// `max_candidates` subsets to test.
pub fn brute_force_blocks(generators: &[Perm], degree: usize, max_candidates: u64) -> Result<Vec<Vec<u32>>> {
    let sizes: Vec<usize> = (2..degree).filter(|k| degree.is_multiple_of(*k)).collect();
    let total: u64 = sizes.iter().map(|&k| binomial(degree as u64 - 1, k as u64 - 1)).sum();
    if total > max_candidates {
        return Err(Error::Budget(format!("{total} candidate blocks exceed {max_candidates}")));
    }
    let mut out = Vec::new();
    for k in sizes {
        let mut pick: Vec<u32> = (1..k as u32).collect();
        loop {
            let mut block = vec![0];
            block.extend_from_slice(&pick);
            if is_block(generators, degree, &block) {
                out.push(block);
            }
            if !next_combination(&mut pick, degree as u32 - 1) {
                break;
            }
        }
    }
    Ok(out)
}

/// Advances a sorted combination of values in `1..=max`.
fn next_combination(pick: &mut [u32], max: u32) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < max - (k - 1 - i) as u32 {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
