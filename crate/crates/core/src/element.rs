//! The common interface shared by matrix and permutation group elements.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::keys::{key128, PointKey};

pub trait GroupElement: Clone + PartialEq + Debug + Send + Sync {
    fn mul(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;

    /// Canonical serialization; equal elements serialize identically.
    fn write_bytes(&self, out: &mut Vec<u8>);

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_bytes(&mut out);
        out
    }

    fn key(&self) -> PointKey {
        key128(&self.to_bytes())
    }

    /// Lexicographic order on serializations.
    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.to_bytes().cmp(&other.to_bytes())
    }

    fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Least `m >= 1` with `self^m = 1`, by repeated multiplication.
    fn order(&self, cap: u64) -> Result<u64> {
        let mut p = self.clone();
        let mut m = 1;
        while !p.is_identity() {
            m += 1;
            if m > cap {
                return Err(Error::OrderCapExceeded(cap));
            }
            p = p.mul(self);
        }
        Ok(m)
    }

    /// `rhs^-1 * self * rhs`
    fn conj(&self, rhs: &Self) -> Self {
        rhs.inverse().mul(self).mul(rhs)
    }
}

/// Default cap for element orders; all orders arising here are far below it.
pub const DEFAULT_ORDER_CAP: u64 = 5000;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Canonical representative of the cyclic subgroup generated by `t`: the
/// lexicographically least serialization among its generators `t^i`,
/// `gcd(i, order) = 1`.
pub fn cyclic_canonical<E: GroupElement>(t: &E, order: u64) -> E {
    let mut best = t.clone();
    let mut p = t.clone();
    for i in 2..order {
        p = p.mul(t);
        if gcd(i, order) == 1 && p.lex_cmp(&best) == Ordering::Less {
            best = p.clone();
        }
    }
    best
}
