//! Arithmetic in GF(2^k), k <= 8, with elements stored as polynomial residues.
//!
//! Bit `i` of a residue is the coefficient of `x^i`. The modulus uses the same
//! convention, so the Conway-style list `[1, 1, 0, 1]` (constant term first)
//! becomes `0b1011`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    k: u8,
    modulus: u16,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u8);

/// GF(8) with `w^3 = w + 1`.
pub const GF8: FieldSpec = FieldSpec { k: 3, modulus: 0b1011 };

/// GF(4) with `w^2 = w + 1`.
pub const GF4: FieldSpec = FieldSpec { k: 2, modulus: 0b111 };

const LANE_LOW: u64 = 0x0101_0101_0101_0101;

fn clmul_reduce(a: u16, b: u16, k: u8, modulus: u16) -> u16 {
    let mut acc = 0u16;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << k) != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_degree(p: u16) -> i32 {
    15 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u16, b: u16) -> u16 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

impl FieldSpec {
    /// Builds a field spec, checking that `modulus` has degree `k` and is
    /// irreducible over GF(2).
    pub fn new(k: u8, modulus: u16) -> Result<Self> {
        if !(1..=8).contains(&k) {
            return Err(Error::Field(format!("extension degree {k} outside 1..=8")));
        }
        if poly_degree(modulus) != k as i32 {
            return Err(Error::Field(format!(
                "modulus {modulus:#b} does not have degree {k}"
            )));
        }
        // trial division by every polynomial of degree 1..=k/2
        for d in 1..=(k / 2) {
            for p in (1u16 << d)..(1u16 << (d + 1)) {
                if poly_rem(modulus, p) == 0 {
                    return Err(Error::Field(format!(
                        "modulus {modulus:#b} is divisible by {p:#b}"
                    )));
                }
            }
        }
        Ok(FieldSpec { k, modulus })
    }

    /// Builds a spec from coefficients listed constant term first.
    pub fn from_coefficients(coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.len() > 9 {
            return Err(Error::Field(format!("{} coefficients", coeffs.len())));
        }
        let mut modulus = 0u16;
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => modulus |= 1 << i,
                _ => return Err(Error::Field(format!("coefficient {c} is not 0 or 1"))),
            }
        }
        FieldSpec::new((coeffs.len() - 1) as u8, modulus)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        1 << self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size()).map(|v| FieldElem(v as u8))
    }

    pub fn is_valid(&self, a: FieldElem) -> bool {
        (a.0 as usize) < self.size()
    }

    /// The residue class of `x`.
    pub fn generator(&self) -> FieldElem {
        if self.k == 1 {
            FieldElem(1)
        } else {
            FieldElem(2)
        }
    }

    /// Multiplies each byte lane of `v` by `x`; lanes must hold valid residues.
    #[inline]
    pub(crate) fn mul_x_lanes(&self, v: u64) -> u64 {
        let k = self.k as u32;
        let carry = (v >> (k - 1)) & LANE_LOW;
        let lane_mask = (((1u64 << k) - 1) & 0xfe) * LANE_LOW;
        ((v << 1) & lane_mask) ^ (carry * (self.modulus as u64 & ((1u64 << k) - 1)))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[inline]
pub fn ff_add(a: FieldElem, b: FieldElem) -> FieldElem {
    FieldElem(a.0 ^ b.0)
}

#[inline]
pub fn ff_mul(a: FieldElem, b: FieldElem, spec: FieldSpec) -> FieldElem {
    FieldElem(clmul_reduce(a.0 as u16, b.0 as u16, spec.k, spec.modulus) as u8)
}

pub fn ff_pow(a: FieldElem, mut e: u64, spec: FieldSpec) -> FieldElem {
    let mut base = a;
    let mut acc = FieldElem::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = ff_mul(acc, base, spec);
        }
        base = ff_mul(base, base, spec);
        e >>= 1;
    }
    acc
}

pub fn ff_inv(a: FieldElem, spec: FieldSpec) -> Result<FieldElem> {
    if a.is_zero() {
        return Err(Error::Domain("inverse of zero field element".into()));
    }
    // a^(2^k - 2) = a^-1 in a group of order 2^k - 1
    Ok(ff_pow(a, (spec.size() - 2) as u64, spec))
}
