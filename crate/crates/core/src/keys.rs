//! 128-bit point keys and a pass-through hasher for maps keyed by them.

use std::collections::{HashMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

use xxhash_rust::xxh3::xxh3_128;

pub type PointKey = u128;

#[inline]
pub fn key128(bytes: &[u8]) -> PointKey {
    xxh3_128(bytes)
}

/// Hasher for keys that are already uniformly distributed hashes.
#[derive(Default, Clone, Copy)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            self.0 ^= u64::from_le_bytes(buf);
        }
    }

    fn write_u128(&mut self, v: u128) {
        self.0 = (v as u64) ^ ((v >> 64) as u64);
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = v;
    }
}

pub type KeyMap<V> = HashMap<PointKey, V, BuildHasherDefault<KeyHasher>>;
pub type KeySet = HashSet<PointKey, BuildHasherDefault<KeyHasher>>;
