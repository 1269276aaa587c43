//! Permutations of `0..degree` acting on the right: `x^(pq) = (x^p)^q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::element::GroupElement;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

/// Cycle lengths with multiplicities, ascending by length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<(usize, usize)>);

impl CycleType {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(l, m)| l * m).sum()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for (i, &im) in images.iter().enumerate() {
            let im = im as usize;
            if im >= images.len() || seen[im] {
                return Err(Error::Domain(format!(
                    "image list is not a bijection (position {i})"
                )));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cyc in cycles {
            for (i, &p) in cyc.iter().enumerate() {
                let q = cyc[(i + 1) % cyc.len()];
                if p as usize >= degree || q as usize >= degree {
                    return Err(Error::Domain(format!("point {p} outside degree {degree}")));
                }
                images[p as usize] = q;
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    /// `self` first, then `q`.
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::Domain(format!(
                "degree mismatch {} vs {}",
                self.degree(),
                q.degree()
            )));
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    fn compose_unchecked(&self, q: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| q.images[x as usize]).collect() }
    }

    pub fn inverse_perm(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity_perm(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0usize) += 1;
        }
        CycleType(counts.into_iter().collect())
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 != x)
    }

    /// Least common multiple of the cycle lengths.
    pub fn perm_order(&self) -> u64 {
        self.cycle_type()
            .0
            .iter()
            .fold(1u64, |acc, &(l, _)| acc / gcd(acc, l as u64) * l as u64)
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity_perm() {
            return write!(f, "()");
        }
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl GroupElement for Perm {
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.compose_unchecked(rhs)
    }

    fn inverse(&self) -> Self {
        self.inverse_perm()
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }

    fn is_identity(&self) -> bool {
        self.is_identity_perm()
    }

    /// Big-endian images, so byte order agrees with numeric order.
    fn write_bytes(&self, out: &mut Vec<u8>) {
        out.reserve(4 * self.degree());
        for &x in &self.images {
            out.extend_from_slice(&x.to_be_bytes());
        }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }

    fn order(&self, _cap: u64) -> Result<u64> {
        Ok(self.perm_order())
    }
}

/// A permutation group given by generators, in the text file format:
/// `degree n` followed by one generator per line as `n` images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl PermGroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut generators = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::Parse { pos: lineno + 1, msg };
            match degree {
                None => {
                    let rest = line
                        .strip_prefix("degree")
                        .ok_or_else(|| bad("expected 'degree n'".into()))?;
                    degree = Some(
                        rest.trim()
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad degree {rest:?}")))?,
                    );
                }
                Some(n) => {
                    let images = line
                        .split_whitespace()
                        .map(|t| t.parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("non-integer image".into()))?;
                    if images.len() != n {
                        return Err(bad(format!("{} images for degree {n}", images.len())));
                    }
                    generators.push(Perm::new(images).map_err(|e| bad(e.to_string()))?);
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse { pos: 0, msg: "empty file".into() })?;
        Ok(PermGroupFile { degree, generators })
    }

    pub fn render(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for l in c.lines() {
                out.push_str(&format!("# {l}\n"));
            }
        }
        out.push_str(&format!("degree {}\n", self.degree));
        for g in &self.generators {
            let line: Vec<String> = g.images().iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
