//! Dense square matrices over GF(2^k) with dimension at most 8.
//!
//! Each row is packed into a `u64`, one byte lane per column, with column `j`
//! in byte `j` (little-endian). The row-major byte serialization is therefore
//! just the concatenation of the rows' first `n` little-endian bytes.

use std::cmp::Ordering;
use std::fmt;

use crate::element::{GroupElement, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::field::{ff_inv, ff_mul, ff_pow, FieldElem, FieldSpec};
use crate::keys::{key128, PointKey};

pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat {
    n: u8,
    spec: FieldSpec,
    rows: [u64; MAX_DIM],
}

/// Order of an element plus ranks of `y - 1`, `y^2 - 1`, `y^4 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankProfile {
    pub order: u64,
    pub ranks: [u8; 3],
}

impl RankProfile {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut v = self.order.to_be_bytes().to_vec();
        v.extend_from_slice(&self.ranks);
        v
    }
}

/// Multiplies every lane of `v` by the scalar `c`.
#[inline]
pub fn scale_lanes(v: u64, c: u8, spec: FieldSpec) -> u64 {
    let mut acc = 0;
    let mut p = v;
    let mut c = c;
    while c != 0 {
        if c & 1 != 0 {
            acc ^= p;
        }
        c >>= 1;
        if c != 0 {
            p = spec.mul_x_lanes(p);
        }
    }
    acc
}

#[inline]
fn lane(v: u64, j: usize) -> u8 {
    (v >> (8 * j)) as u8
}

impl Mat {
    pub fn zero(n: usize, spec: FieldSpec) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} outside 1..=8");
        Mat { n: n as u8, spec, rows: [0; MAX_DIM] }
    }

    pub fn identity(n: usize, spec: FieldSpec) -> Self {
        let mut m = Mat::zero(n, spec);
        for i in 0..n {
            m.rows[i] = 1 << (8 * i);
        }
        m
    }

    pub fn from_entries(n: usize, spec: FieldSpec, entries: &[FieldElem]) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Domain(format!("dimension {n} outside 1..=8")));
        }
        if entries.len() != n * n {
            return Err(Error::Domain(format!("{} entries for dimension {n}", entries.len())));
        }
        let mut m = Mat::zero(n, spec);
        for (idx, &e) in entries.iter().enumerate() {
            if !spec.is_valid(e) {
                return Err(Error::Domain(format!("entry {} is not a residue", e.0)));
            }
            m.set(idx / n, idx % n, e);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows[..self.n()]
    }

    /// Rebuilds a matrix from packed rows, validating every entry.
    pub fn from_packed_rows(n: usize, spec: FieldSpec, packed: &[u64]) -> Result<Self> {
        if n == 0 || n > MAX_DIM || packed.len() != n {
            return Err(Error::Domain(format!("{} packed rows for dimension {n}", packed.len())));
        }
        let mut m = Mat::zero(n, spec);
        for (i, &r) in packed.iter().enumerate() {
            let bytes = r.to_le_bytes();
            if bytes[n..].iter().any(|&b| b != 0) || bytes[..n].iter().any(|&b| b as usize >= spec.size()) {
                return Err(Error::Domain(format!("row {i} is not a packed residue vector")));
            }
            m.rows[i] = r;
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        FieldElem(lane(self.rows[i], j))
    }

    pub fn set(&mut self, i: usize, j: usize, e: FieldElem) {
        let shift = 8 * j;
        self.rows[i] = (self.rows[i] & !(0xff << shift)) | ((e.0 as u64) << shift);
    }

    pub fn entries(&self) -> Vec<FieldElem> {
        let n = self.n();
        (0..n * n).map(|idx| self.get(idx / n, idx % n)).collect()
    }

    fn check_compatible(&self, other: &Mat) {
        assert!(
            self.n == other.n && self.spec == other.spec,
            "matrix shape or field mismatch"
        );
    }

    pub fn mat_mul(&self, rhs: &Mat) -> Mat {
        self.check_compatible(rhs);
        let n = self.n();
        let mut out = [0u64; MAX_DIM];
        if self.spec.k() <= 4 {
            let q = self.spec.size();
            let mut table = [0u64; 16];
            for k in 0..n {
                // table[c] = c * rhs.row[k]
                table[1] = rhs.rows[k];
                let mut c = 2;
                while c < q {
                    if c & (c - 1) == 0 {
                        table[c] = self.spec.mul_x_lanes(table[c >> 1]);
                    } else {
                        let top = 1 << (usize::BITS - 1 - c.leading_zeros());
                        table[c] = table[top] ^ table[c ^ top];
                    }
                    c += 1;
                }
                for (i, o) in out.iter_mut().enumerate().take(n) {
                    *o ^= table[lane(self.rows[i], k) as usize];
                }
            }
        } else {
            for k in 0..n {
                for (i, o) in out.iter_mut().enumerate().take(n) {
                    *o ^= scale_lanes(rhs.rows[k], lane(self.rows[i], k), self.spec);
                }
            }
        }
        Mat { n: self.n, spec: self.spec, rows: out }
    }

    /// Row vector times matrix; `v` is packed like a matrix row.
    #[inline]
    pub fn vec_mul(&self, v: u64) -> u64 {
        let mut acc = 0;
        for k in 0..self.n() {
            let c = lane(v, k);
            if c != 0 {
                acc ^= scale_lanes(self.rows[k], c, self.spec);
            }
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination, pivoting on the first nonzero entry.
    pub fn mat_inv(&self) -> Result<Mat> {
        let n = self.n();
        let mut a = self.rows;
        let mut b = Mat::identity(n, self.spec).rows;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| lane(a[r], col) != 0)
                .ok_or_else(|| Error::Domain("singular matrix".into()))?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let s = ff_inv(FieldElem(lane(a[col], col)), self.spec)?.0;
            a[col] = scale_lanes(a[col], s, self.spec);
            b[col] = scale_lanes(b[col], s, self.spec);
            for r in 0..n {
                let f = lane(a[r], col);
                if r != col && f != 0 {
                    a[r] ^= scale_lanes(a[col], f, self.spec);
                    b[r] ^= scale_lanes(b[col], f, self.spec);
                }
            }
        }
        Ok(Mat { n: self.n, spec: self.spec, rows: b })
    }

    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut a = self.rows;
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| lane(a[r], col) != 0) else {
                continue;
            };
            a.swap(rank, pivot);
            let s = ff_inv(FieldElem(lane(a[rank], col)), self.spec)
                .expect("pivot is nonzero")
                .0;
            a[rank] = scale_lanes(a[rank], s, self.spec);
            for r in 0..n {
                let f = lane(a[r], col);
                if r != rank && f != 0 {
                    a[r] ^= scale_lanes(a[rank], f, self.spec);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn is_identity_matrix(&self) -> bool {
        self.rows == Mat::identity(self.n(), self.spec).rows
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        self.check_compatible(rhs);
        let mut rows = self.rows;
        for (r, s) in rows.iter_mut().zip(rhs.rows.iter()) {
            *r ^= s;
        }
        Mat { n: self.n, spec: self.spec, rows }
    }

    /// Least `m >= 1` with `M^m = I`, by direct powering with early exit.
    pub fn element_order(&self, cap: u64) -> Result<u64> {
        let mut p = *self;
        let mut m = 1;
        while !p.is_identity_matrix() {
            m += 1;
            if m > cap {
                return Err(Error::OrderCapExceeded(cap));
            }
            p = p.mat_mul(self);
        }
        Ok(m)
    }

    pub fn rank_profile(&self) -> Result<RankProfile> {
        Ok(self.rank_profile_with_order(self.element_order(DEFAULT_ORDER_CAP)?))
    }

    /// Rank profile for an element whose order is already known.
    pub fn rank_profile_with_order(&self, order: u64) -> RankProfile {
        let id = Mat::identity(self.n(), self.spec);
        let y2 = self.mat_mul(self);
        let y4 = y2.mat_mul(&y2);
        RankProfile {
            order,
            ranks: [
                self.add(&id).rank() as u8,
                y2.add(&id).rank() as u8,
                y4.add(&id).rank() as u8,
            ],
        }
    }

    /// `g^-1 * self * g` given both `g` and its inverse.
    #[inline]
    pub fn conj_by(&self, g: &Mat, g_inv: &Mat) -> Mat {
        g_inv.mat_mul(self).mat_mul(g)
    }

    /// Row-major bytes, one residue per entry.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for r in self.rows() {
            out.extend_from_slice(&r.to_le_bytes()[..n]);
        }
        out
    }

    pub fn key(&self) -> PointKey {
        let n = self.n();
        let mut buf = [0u8; MAX_DIM * MAX_DIM];
        for (i, r) in self.rows().iter().enumerate() {
            buf[i * n..(i + 1) * n].copy_from_slice(&r.to_le_bytes()[..n]);
        }
        key128(&buf[..n * n])
    }

    /// Lexicographic comparison of the row-major byte serializations.
    #[inline]
    pub fn lex_cmp_rows(&self, other: &Mat) -> Ordering {
        for i in 0..self.n() {
            let c = self.rows[i].swap_bytes().cmp(&other.rows[i].swap_bytes());
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }

    /// Canonical generator of the cyclic subgroup `<self>` of known order.
    pub fn cyclic_canonical(&self, order: u64) -> Mat {
        let mut best = *self;
        let mut p = *self;
        for i in 2..order {
            p = p.mat_mul(self);
            if gcd(i, order) == 1 && p.lex_cmp_rows(&best) == Ordering::Less {
                best = p;
            }
        }
        best
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[")?;
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for b in &r.to_le_bytes()[..self.n()] {
                write!(f, "{b}")?;
            }
        }
        write!(f, "]")
    }
}

impl GroupElement for Mat {
    fn mul(&self, rhs: &Self) -> Self {
        self.mat_mul(rhs)
    }

    fn inverse(&self) -> Self {
        self.mat_inv().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        Mat::identity(self.n(), self.spec)
    }

    fn is_identity(&self) -> bool {
        self.is_identity_matrix()
    }

    fn write_bytes(&self, out: &mut Vec<u8>) {
        let n = self.n();
        for r in self.rows() {
            out.extend_from_slice(&r.to_le_bytes()[..n]);
        }
    }

    fn key(&self) -> PointKey {
        Mat::key(self)
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp_rows(other)
    }

    fn order(&self, cap: u64) -> Result<u64> {
        self.element_order(cap)
    }
}

/// Decodes the ATLAS compact matrix format: `n^2` characters, row-major,
/// `'.'` for zero and digit `d` for `w^d`, where `w` is the class of `x`.
pub fn decode_atlas_string(s: &str, spec: FieldSpec) -> Result<Mat> {
    let chars: Vec<char> = s.chars().collect();
    let n = (chars.len() as f64).sqrt().round() as usize;
    if n * n != chars.len() || n == 0 {
        return Err(Error::Parse {
            pos: chars.len(),
            msg: format!("length {} is not a positive perfect square", chars.len()),
        });
    }
    if n > MAX_DIM {
        return Err(Error::Parse { pos: 0, msg: format!("dimension {n} exceeds {MAX_DIM}") });
    }
    let w = spec.generator();
    let mut entries = Vec::with_capacity(n * n);
    for (pos, ch) in chars.iter().enumerate() {
        let e = match ch {
            '.' => FieldElem::ZERO,
            c if c.is_ascii_digit() => {
                let d = c.to_digit(10).unwrap() as usize;
                if d >= spec.size() - 1 {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("exponent {d} out of range for GF({})", spec.size()),
                    });
                }
                ff_pow(w, d as u64, spec)
            }
            c => {
                return Err(Error::Parse { pos, msg: format!("illegal character {c:?}") });
            }
        };
        entries.push(e);
    }
    Mat::from_entries(n, spec, &entries)
}

/// Inverse of [`decode_atlas_string`]; fails for entries whose discrete log
/// does not fit in one digit.
pub fn encode_atlas_string(m: &Mat) -> Result<String> {
    let spec = m.spec();
    let w = spec.generator();
    let mut out = String::with_capacity(m.n() * m.n());
    for e in m.entries() {
        if e.is_zero() {
            out.push('.');
            continue;
        }
        let mut p = FieldElem::ONE;
        let mut d = 0;
        while p != e {
            p = ff_mul(p, w, spec);
            d += 1;
            if d > 9 || p == FieldElem::ONE {
                return Err(Error::Domain(format!("entry {} has no one-digit log", e.0)));
            }
        }
        out.push(char::from_digit(d, 10).unwrap());
    }
    Ok(out)
}

/// A word in group generators: `(generator index, nonzero exponent)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupWord(pub Vec<(usize, i64)>);

impl GroupWord {
    /// Parses words such as `b a b^-2 (b a)^2 b^{-2}` over single-letter
    /// generator names taken from `names`.
    pub fn parse(text: &str, names: &[char]) -> Result<GroupWord> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let w = parse_seq(&chars, &mut pos, names)?;
        if pos != chars.len() {
            return Err(Error::Parse { pos, msg: "unbalanced ')'".into() });
        }
        Ok(GroupWord(simplify(w)))
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn render(&self, names: &[char]) -> String {
        let mut s = String::new();
        for &(g, e) in &self.0 {
            s.push(names[g]);
            if e != 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }
}

fn simplify(word: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(word.len());
    for (g, e) in word {
        if let Some(last) = out.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        if e != 0 {
            out.push((g, e));
        }
    }
    out
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && (chars[*pos].is_whitespace() || chars[*pos] == '*') {
        *pos += 1;
    }
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<i64> {
    skip_ws(chars, pos);
    if *pos >= chars.len() || chars[*pos] != '^' {
        return Ok(1);
    }
    *pos += 1;
    let braced = *pos < chars.len() && chars[*pos] == '{';
    if braced {
        *pos += 1;
    }
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let text: String = chars[start..*pos].iter().collect();
    let e = text
        .parse::<i64>()
        .map_err(|_| Error::Parse { pos: start, msg: format!("bad exponent {text:?}") })?;
    if braced {
        if *pos >= chars.len() || chars[*pos] != '}' {
            return Err(Error::Parse { pos: *pos, msg: "expected '}'".into() });
        }
        *pos += 1;
    }
    Ok(e)
}

fn parse_seq(chars: &[char], pos: &mut usize, names: &[char]) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() || chars[*pos] == ')' {
            return Ok(out);
        }
        let c = chars[*pos];
        if c == '(' {
            let open = *pos;
            *pos += 1;
            let inner = parse_seq(chars, pos, names)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(Error::Parse { pos: open, msg: "unclosed '('".into() });
            }
            *pos += 1;
            let e = parse_exponent(chars, pos)?;
            let unit: Vec<(usize, i64)> = if e < 0 {
                inner.iter().rev().map(|&(g, x)| (g, -x)).collect()
            } else {
                inner
            };
            for _ in 0..e.unsigned_abs() {
                out.extend_from_slice(&unit);
            }
        } else if let Some(g) = names.iter().position(|&n| n == c) {
            *pos += 1;
            let e = parse_exponent(chars, pos)?;
            out.push((g, e));
        } else {
            return Err(Error::Parse { pos: *pos, msg: format!("unknown generator {c:?}") });
        }
    }
}

/// Left-to-right product of the word's letters.
pub fn eval_word<E: GroupElement>(word: &GroupWord, generators: &[E]) -> Result<E> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Domain("no generators".into()))?;
    let mut acc = first.identity_like();
    let inverses: Vec<E> = generators.iter().map(|g| g.inverse()).collect();
    for &(g, e) in &word.0 {
        if g >= generators.len() {
            return Err(Error::Domain(format!("generator index {g} out of range")));
        }
        let base = if e < 0 { &inverses[g] } else { &generators[g] };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(base);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{ATLAS_A, ATLAS_B, THEOREM_WORD};
    use crate::field::GF8;

    fn ab() -> (Mat, Mat) {
        (decode_atlas_string(ATLAS_A, GF8).unwrap(), decode_atlas_string(ATLAS_B, GF8).unwrap())
    }

    /// Schoolbook product through scalar field arithmetic.
    fn naive_mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.n();
        let spec = a.spec();
        let mut out = Mat::zero(n, spec);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u8;
                for k in 0..n {
                    acc ^= ff_mul(a.get(i, k), b.get(k, j), spec).0;
                }
                out.set(i, j, FieldElem(acc));
            }
        }
        out
    }

    #[test]
    fn decode_paper_strings() {
        let (a, b) = ab();
        assert_eq!(a.get(0, 0), FieldElem::ZERO);
        assert_eq!(a.get(0, 1), FieldElem::ONE);
        assert!(a.is_invertible());
        assert!(b.is_invertible());
        assert_eq!(a.mat_mul(&b).element_order(DEFAULT_ORDER_CAP).unwrap(), 13);
    }

    #[test]
    fn decode_errors() {
        assert!(matches!(decode_atlas_string("...", GF8), Err(Error::Parse { .. })));
        assert!(matches!(
            decode_atlas_string("..x.", GF8),
            Err(Error::Parse { pos: 2, .. })
        ));
        // w^7 = 1 is not a legal digit for GF(8)
        assert!(matches!(
            decode_atlas_string("7...", GF8),
            Err(Error::Parse { pos: 0, .. })
        ));
        let z = decode_atlas_string(&".".repeat(64), GF8).unwrap();
        assert_eq!(z, Mat::zero(8, GF8));
    }

    #[test]
    fn encode_round_trip() {
        for s in [ATLAS_A, ATLAS_B] {
            let m = decode_atlas_string(s, GF8).unwrap();
            assert_eq!(encode_atlas_string(&m).unwrap(), s);
        }
    }

    #[test]
    fn packed_product_matches_schoolbook() {
        let (a, b) = ab();
        let ab = a.mat_mul(&b);
        assert_eq!(ab, naive_mul(&a, &b));
        assert_eq!(ab.mat_mul(&a), naive_mul(&ab, &a));
        let spec256 = FieldSpec::new(8, 0x11b).unwrap();
        let e: Vec<FieldElem> = (0..16).map(|i| FieldElem((i * 53 + 7) as u8)).collect();
        let f: Vec<FieldElem> = (0..16).map(|i| FieldElem((i * 91 + 200) as u8)).collect();
        let m1 = Mat::from_entries(4, spec256, &e).unwrap();
        let m2 = Mat::from_entries(4, spec256, &f).unwrap();
        assert_eq!(m1.mat_mul(&m2), naive_mul(&m1, &m2));
    }

    #[test]
    fn inverse_and_identity() {
        let (a, b) = ab();
        let i8 = Mat::identity(8, GF8);
        assert_eq!(a.mat_mul(&i8), a);
        assert_eq!(i8.mat_inv().unwrap(), i8);
        assert_eq!(b.mat_inv().unwrap().mat_mul(&b), i8);
        assert_eq!(b.mat_mul(&b.mat_inv().unwrap()), i8);
        assert!(Mat::zero(8, GF8).mat_inv().is_err());
        assert_eq!(i8.element_order(10).unwrap(), 1);
        assert_eq!(i8.rank_profile().unwrap(), RankProfile { order: 1, ranks: [0, 0, 0] });
    }

    #[test]
    fn generator_orders_by_powering() {
        let (a, b) = ab();
        // oracle: first m with a^m = I via independent schoolbook products
        let brute = |m: &Mat| {
            let mut p = *m;
            let mut k = 1;
            while p != Mat::identity(8, GF8) {
                p = naive_mul(&p, m);
                k += 1;
                assert!(k < 1000);
            }
            k
        };
        assert_eq!(a.element_order(DEFAULT_ORDER_CAP).unwrap(), brute(&a));
        assert_eq!(b.element_order(DEFAULT_ORDER_CAP).unwrap(), brute(&b));
        assert!(a.element_order(1).is_err() || brute(&a) == 1);
    }

    #[test]
    fn word_parsing_and_evaluation() {
        let (a, b) = ab();
        let w = GroupWord::parse("ab", &['a', 'b']).unwrap();
        assert_eq!(w.0, vec![(0, 1), (1, 1)]);
        assert_eq!(eval_word(&w, &[a, b]).unwrap(), a.mat_mul(&b));
        let empty = GroupWord::parse("", &['a', 'b']).unwrap();
        assert_eq!(eval_word(&empty, &[a, b]).unwrap(), Mat::identity(8, GF8));
        let x = GroupWord::parse(THEOREM_WORD, &['a', 'b']).unwrap();
        let manual = GroupWord::parse(
            "b a b^-2 a b^3 a b^-1 a b b a b^-2 a b a b^-2 a b^-2",
            &['a', 'b'],
        )
        .unwrap();
        assert_eq!(x, manual);
        let inv = GroupWord::parse("(ab^2)^-1", &['a', 'b']).unwrap();
        assert_eq!(inv.0, vec![(1, -2), (0, -1)]);
        assert!(GroupWord::parse("abc", &['a', 'b']).is_err());
        assert!(GroupWord::parse("(ab", &['a', 'b']).is_err());
        assert!(eval_word(&GroupWord(vec![(2, 1)]), &[a, b]).is_err());
    }

    #[test]
    fn rank_profile_conjugation_invariant() {
        let (a, b) = ab();
        let y = a.mat_mul(&b).mat_mul(&b);
        let p = y.rank_profile().unwrap();
        for g in [a, b, a.mat_mul(&b), b.mat_mul(&b).mat_mul(&a)] {
            let c = g.mat_inv().unwrap().mat_mul(&y).mat_mul(&g);
            assert_eq!(c.rank_profile().unwrap(), p);
        }
    }

    #[test]
    fn lex_order_matches_bytes() {
        let (a, b) = ab();
        for (x, y) in [(a, b), (b, a), (a, a), (a.mat_mul(&b), b)] {
            assert_eq!(x.lex_cmp_rows(&y), x.canonical_bytes().cmp(&y.canonical_bytes()));
        }
    }

    #[test]
    fn vector_action_matches_matrix_rows() {
        let (a, _) = ab();
        for i in 0..8 {
            let e_i = 1u64 << (8 * i);
            assert_eq!(a.vec_mul(e_i), a.rows()[i]);
        }
    }
}
