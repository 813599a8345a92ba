//! Shared cryptographic primitives: one-way hash, key-chain step, keyed MAC,
//! key derivation, and a counter-mode stream cipher.
//!
//! A single 256-bit hash (SHA-256) backs everything here: the one-way
//! function of the broadcast-auth key chain, the HMAC-style MAC, the key
//! derivation function, and the counter-mode keystream. Using one primitive
//! keeps test vectors self-consistent; nothing below pretends to be
//! radio-grade cryptography beyond the properties the protocols need
//! (determinism, one-wayness, key separation, length preservation).

use sha2::{Digest as _, Sha256};

/// 32-byte output of the one-way hash.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; 32]);

/// 16-byte symmetric key.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key(pub [u8; 16]);

/// 16-byte MAC tag (truncated HMAC output).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tag(pub [u8; 16]);

impl Digest {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex_encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex_decode(s)?;
        let arr: [u8; 32] = bytes.try_into().ok()?;
        Some(Digest(arr))
    }
}

impl Key {
    pub fn as_bytes(&self) -> &[u8; 16] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex_encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex_decode(s)?;
        let arr: [u8; 16] = bytes.try_into().ok()?;
        Some(Key(arr))
    }
}

impl Tag {
    pub fn as_bytes(&self) -> &[u8; 16] {
        &self.0
    }

    /// Constant-time equality, used for MAC verification.
    pub fn ct_eq(&self, other: &Tag) -> bool {
        let mut diff = 0u8;
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            diff |= a ^ b;
        }
        diff == 0
    }

    pub fn to_hex(&self) -> String {
        hex_encode(&self.0)
    }
}

impl std::fmt::Debug for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digest({})", &self.to_hex()[..12])
    }
}

impl std::fmt::Debug for Key {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Key({})", &self.to_hex()[..12])
    }
}

impl std::fmt::Debug for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tag({})", &self.to_hex()[..12])
    }
}

/// One-way hash of an arbitrary byte string (SHA-256).
pub fn hash(input: &[u8]) -> Digest {
    let out = Sha256::digest(input);
    Digest(out.into())
}

fn hash_parts(parts: &[&[u8]]) -> Digest {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    Digest(h.finalize().into())
}

/// The key-chain one-way function F: the first 16 bytes of `hash(k)`.
///
/// Chains are built by repeated application, so `K_i = chain_step(K_{i+1})`.
pub fn chain_step(k: &Key) -> Key {
    truncate_key(&hash(&k.0))
}

/// Apply `chain_step` n times.
pub fn chain_step_n(k: &Key, n: u64) -> Key {
    let mut cur = *k;
    for _ in 0..n {
        cur = chain_step(&cur);
    }
    cur
}

const HMAC_BLOCK: usize = 64;

/// Keyed MAC: HMAC-SHA256 truncated to 16 bytes.
pub fn mac(key: &Key, msg: &[u8]) -> Tag {
    let mut ipad = [0x36u8; HMAC_BLOCK];
    let mut opad = [0x5cu8; HMAC_BLOCK];
    for (i, b) in key.0.iter().enumerate() {
        ipad[i] ^= b;
        opad[i] ^= b;
    }
    let inner = hash_parts(&[&ipad, msg]);
    let outer = hash_parts(&[&opad, &inner.0]);
    Tag(outer.0[..16].try_into().unwrap())
}

/// Verify a tag in constant time.
pub fn mac_verify(key: &Key, msg: &[u8], tag: &Tag) -> bool {
    mac(key, msg).ct_eq(tag)
}

/// Derive a sub-key from a master key and a label: the first 16 bytes of
/// `hash(master || label)`. Distinct labels give independent-looking keys.
pub fn derive_key(master: &Key, label: &[u8]) -> Key {
    truncate_key(&hash_parts(&[&master.0, label]))
}

/// Counter-mode encryption: keystream blocks are
/// `hash(key || counter_be || block_index_be)`, XORed into the plaintext.
/// Length-preserving; `ctr_decrypt` is the same operation.
pub fn ctr_encrypt(key: &Key, counter: u64, plaintext: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(plaintext.len());
    let ctr_be = counter.to_be_bytes();
    let mut block_idx = 0u64;
    let mut offset = 0usize;
    while offset < plaintext.len() {
        let block = hash_parts(&[&key.0, &ctr_be, &block_idx.to_be_bytes()]);
        let take = (plaintext.len() - offset).min(32);
        for i in 0..take {
            out.push(plaintext[offset + i] ^ block.0[i]);
        }
        offset += take;
        block_idx += 1;
    }
    out
}

/// Inverse of [`ctr_encrypt`] (XOR stream ciphers are involutions).
pub fn ctr_decrypt(key: &Key, counter: u64, ciphertext: &[u8]) -> Vec<u8> {
    ctr_encrypt(key, counter, ciphertext)
}

fn truncate_key(d: &Digest) -> Key {
    Key(d.0[..16].try_into().unwrap())
}

pub fn hex_encode(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

pub fn hex_decode(s: &str) -> Option<Vec<u8>> {
    let s = s.trim();
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
        .collect()
}
