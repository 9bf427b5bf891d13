//! Growable bit sequence with MSB-first packing.
//!
//! Codewords and encoded payloads are bit strings whose length is rarely a
//! whole number of bytes. `Bits` stores them packed, most significant bit of
//! each byte first, so bit `i` lives at `bytes[i / 8]` masked by
//! `0x80 >> (i % 8)`. Persistence writes the packed bytes verbatim together
//! with the exact bit length.

/// A sequence of bits, packed MSB-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    bytes: Vec<u8>,
    len: usize,
}

impl Bits {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Bits {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// Reconstructs a sequence from packed bytes and an exact bit length.
    ///
    /// Returns `None` if `bytes` is not the minimal buffer for `len` bits.
    pub fn from_raw(bytes: Vec<u8>, len: usize) -> Option<Self> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut bits = Bits { bytes, len };
        bits.clear_padding();
        Some(bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed bytes; trailing padding bits are zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.bytes[i / 8] & (0x80 >> (i % 8)) != 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Appends the low `len` bits of `code`, most significant first.
    pub fn push_code(&mut self, code: u64, len: u8) {
        debug_assert!(len <= 64);
        for shift in (0..len).rev() {
            self.push((code >> shift) & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &Bits) {
        for i in 0..other.len {
            self.push(other.get(i));
        }
    }

    /// True if `needle` occurs starting at bit offset `at`.
    pub fn matches_at(&self, at: usize, needle: &Bits) -> bool {
        if at + needle.len > self.len {
            return false;
        }
        (0..needle.len).all(|i| self.get(at + i) == needle.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn clear_padding(&mut self) {
        let tail = self.len % 8;
        if tail != 0 {
            if let Some(last) = self.bytes.last_mut() {
                *last &= !(0xffu8 >> tail);
            }
        }
    }
}

impl std::fmt::Display for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut bits = Bits::new();
        for b in iter {
            bits.push(b);
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_and_get() {
        let mut b = Bits::new();
        b.push_code(0b1011, 4);
        assert_eq!(b.len(), 4);
        assert_eq!(b.to_string(), "1011");
        assert_eq!(b.as_bytes(), &[0b1011_0000]);
    }

    #[test]
    fn raw_round_trip() {
        let mut b = Bits::new();
        b.push_code(0x2f3, 10);
        let again = Bits::from_raw(b.as_bytes().to_vec(), b.len()).unwrap();
        assert_eq!(b, again);
        assert!(Bits::from_raw(vec![0, 0, 0], 10).is_none());
    }

    #[test]
    fn from_raw_masks_padding() {
        let b = Bits::from_raw(vec![0xff], 3).unwrap();
        assert_eq!(b.as_bytes(), &[0b1110_0000]);
    }

    #[test]
    fn substring_match() {
        let mut hay = Bits::new();
        hay.push_code(0b110101, 6);
        let mut needle = Bits::new();
        needle.push_code(0b101, 3);
        assert!(hay.matches_at(1, &needle));
        assert!(!hay.matches_at(0, &needle));
        assert!(!hay.matches_at(4, &needle));
    }
}
