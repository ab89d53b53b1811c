//! Deduplicating store of fixed-length residue vectors.
//!
//! Coefficients are packed at the narrowest signed width that holds every
//! stored value and widened in place when a larger value arrives. Hashes
//! are computed from the `i64` values, so widening never rehashes.

use alloc::vec::Vec;

use hashbrown::HashTable;

#[derive(Debug, Clone)]
enum Packed {
    W8(Vec<i8>),
    W16(Vec<i16>),
    W32(Vec<i32>),
    W64(Vec<i64>),
}

impl Packed {
    fn get(&self, i: usize) -> i64 {
        match self {
            Packed::W8(v) => v[i] as i64,
            Packed::W16(v) => v[i] as i64,
            Packed::W32(v) => v[i] as i64,
            Packed::W64(v) => v[i],
        }
    }

    fn len(&self) -> usize {
        match self {
            Packed::W8(v) => v.len(),
            Packed::W16(v) => v.len(),
            Packed::W32(v) => v.len(),
            Packed::W64(v) => v.len(),
        }
    }

    fn fits(&self, x: i64) -> bool {
        match self {
            Packed::W8(_) => i8::try_from(x).is_ok(),
            Packed::W16(_) => i16::try_from(x).is_ok(),
            Packed::W32(_) => i32::try_from(x).is_ok(),
            Packed::W64(_) => true,
        }
    }

    fn widen(&mut self) {
        let n = self.len();
        *self = match self {
            Packed::W8(v) => Packed::W16(v.iter().map(|&x| x as i16).collect()),
            Packed::W16(v) => Packed::W32(v.iter().map(|&x| x as i32).collect()),
            Packed::W32(v) => Packed::W64(v.iter().map(|&x| x as i64).collect()),
            Packed::W64(_) => return,
        };
        debug_assert_eq!(n, self.len());
    }

    fn push(&mut self, x: i64) {
        while !self.fits(x) {
            self.widen();
        }
        match self {
            Packed::W8(v) => v.push(x as i8),
            Packed::W16(v) => v.push(x as i16),
            Packed::W32(v) => v.push(x as i32),
            Packed::W64(v) => v.push(x),
        }
    }

    fn bytes_per_value(&self) -> usize {
        match self {
            Packed::W8(_) => 1,
            Packed::W16(_) => 2,
            Packed::W32(_) => 4,
            Packed::W64(_) => 8,
        }
    }
}

fn hash_values(values: impl Iterator<Item = i64>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in values {
        h = (h.rotate_left(5) ^ x as u64).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
    h ^ (h >> 31)
}

pub(crate) fn hash_residue(r: &[i64]) -> u64 {
    hash_values(r.iter().copied())
}

/// Vertices are numbered in insertion order.
#[derive(Debug, Clone)]
pub struct VertexStore {
    len: usize,
    data: Packed,
    index: HashTable<u32>,
}

impl VertexStore {
    pub fn new(residue_len: usize) -> Self {
        assert!(residue_len >= 1);
        VertexStore { len: residue_len, data: Packed::W8(Vec::new()), index: HashTable::new() }
    }

    pub fn residue_len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.data.len() / self.len
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn get_into(&self, id: u32, out: &mut [i64]) {
        let base = id as usize * self.len;
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.data.get(base + k);
        }
    }

    pub fn get(&self, id: u32) -> Vec<i64> {
        let mut v = alloc::vec![0; self.len];
        self.get_into(id, &mut v);
        v
    }

    fn matches(&self, id: u32, r: &[i64]) -> bool {
        let base = id as usize * self.len;
        r.iter().enumerate().all(|(k, &x)| self.data.get(base + k) == x)
    }

    pub fn find(&self, r: &[i64]) -> Option<u32> {
        self.index.find(hash_residue(r), |&id| self.matches(id, r)).copied()
    }

    /// Insert if absent; returns `(id, newly_inserted)`.
    pub fn insert(&mut self, r: &[i64]) -> (u32, bool) {
        debug_assert_eq!(r.len(), self.len);
        let h = hash_residue(r);
        if let Some(&id) = self.index.find(h, |&id| self.matches(id, r)) {
            return (id, false);
        }
        let id = u32::try_from(self.count()).expect("vertex ids fit in u32");
        for &x in r {
            self.data.push(x);
        }
        let (data, len) = (&self.data, self.len);
        self.index.insert_unique(h, id, |&j| {
            let base = j as usize * len;
            hash_values((0..len).map(|k| data.get(base + k)))
        });
        (id, true)
    }

    /// Approximate heap footprint in bytes.
    pub fn memory_bytes(&self) -> usize {
        self.data.len() * self.data.bytes_per_value() + self.index.capacity() * 5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_find_and_widen() {
        let mut s = VertexStore::new(3);
        assert_eq!(s.insert(&[1, 0, 0]), (0, true));
        assert_eq!(s.insert(&[-1, 2, 0]), (1, true));
        assert_eq!(s.insert(&[1, 0, 0]), (0, false));
        assert_eq!(s.insert(&[300, 0, -5]), (2, true));
        assert_eq!(s.insert(&[0, 1 << 40, 0]), (3, true));
        for _ in 0..1000 {
            // force table growth after widening
            let k = s.count() as i64;
            s.insert(&[k, -k, 7]);
        }
        assert_eq!(s.find(&[-1, 2, 0]), Some(1));
        assert_eq!(s.find(&[300, 0, -5]), Some(2));
        assert_eq!(s.get(3), [0, 1 << 40, 0]);
        assert_eq!(s.find(&[9, 9, 9]), None);
        assert_eq!(hash_residue(&[1, 2, 3]), hash_residue(&[1, 2, 3]));
    }
}
