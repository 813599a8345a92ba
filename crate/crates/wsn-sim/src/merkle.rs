//! Public-key certification without signatures: a hash tree over
//! `(id, pk)` leaves.
//!
//! Leaves are `hash(id_be32 || pk)` and internal nodes are
//! `hash(left || right)`. Each node is provisioned with the root and its H
//! sibling digests (H + 1 stored digests); a peer's key is authentic iff
//! folding its leaf up through the presented siblings reproduces the root.
//!
//! Directories whose size is not a power of two are padded with sentinel
//! leaves (the hash of a 32-byte zero block) so every member has a full
//! H-step path; duplicating the last leaf instead would give two ids the
//! same proof shape.

use crate::crypto::{hash, Digest};
use crate::model::NodeId;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MerkleError {
    #[error("duplicate node id {0} in key directory")]
    DuplicateId(u32),
    #[error("key directory is empty")]
    Empty,
    #[error("unknown node id {0}")]
    UnknownId(u32),
}

/// Ordered `(id, public key)` directory; ascending id so the tree is
/// canonical.
#[derive(Debug, Clone)]
pub struct KeyDirectory {
    entries: Vec<(NodeId, Vec<u8>)>,
}

impl KeyDirectory {
    pub fn new(mut entries: Vec<(NodeId, Vec<u8>)>) -> Result<Self, MerkleError> {
        if entries.is_empty() {
            return Err(MerkleError::Empty);
        }
        entries.sort_by_key(|(id, _)| *id);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(MerkleError::DuplicateId(w[0].0 .0));
            }
        }
        Ok(KeyDirectory { entries })
    }

    pub fn entries(&self) -> &[(NodeId, Vec<u8>)] {
        &self.entries
    }

    pub fn get(&self, id: NodeId) -> Option<&[u8]> {
        self.entries
            .binary_search_by_key(&id, |(i, _)| *i)
            .ok()
            .map(|idx| self.entries[idx].1.as_slice())
    }
}

/// Which side a path sibling sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Sibling digests along one leaf's path, bottom-up. Together with the root
/// this is exactly the H + 1 digests a verifier stores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthPath {
    pub siblings: Vec<(Side, Digest)>,
}

impl AuthPath {
    pub fn len(&self) -> usize {
        self.siblings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.siblings.is_empty()
    }

    /// One `L <hex>` or `R <hex>` line per sibling, bottom-up.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (side, d) in &self.siblings {
            s.push(match side {
                Side::Left => 'L',
                Side::Right => 'R',
            });
            s.push(' ');
            s.push_str(&d.to_hex());
            s.push('\n');
        }
        s
    }

    pub fn from_lines(text: &str) -> Option<Self> {
        let mut siblings = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (side, hex) = line.split_once(' ')?;
            let side = match side {
                "L" => Side::Left,
                "R" => Side::Right,
                _ => return None,
            };
            siblings.push((side, Digest::from_hex(hex)?));
        }
        Some(AuthPath { siblings })
    }
}

/// Canonical hash tree over a key directory.
#[derive(Debug, Clone)]
pub struct MerkleTree {
    /// levels[0] = padded leaves, levels[height] = [root]
    levels: Vec<Vec<Digest>>,
    ids: Vec<NodeId>,
    height: u32,
}

fn leaf_digest(id: NodeId, pk: &[u8]) -> Digest {
    let mut buf = Vec::with_capacity(4 + pk.len());
    buf.extend_from_slice(&id.0.to_be_bytes());
    buf.extend_from_slice(pk);
    hash(&buf)
}

fn sentinel_leaf() -> Digest {
    hash(&[0u8; 32])
}

fn combine(left: &Digest, right: &Digest) -> Digest {
    let mut buf = [0u8; 64];
    buf[..32].copy_from_slice(&left.0);
    buf[32..].copy_from_slice(&right.0);
    hash(&buf)
}

impl MerkleTree {
    pub fn build(dir: &KeyDirectory) -> Self {
        let n_real = dir.entries().len();
        let height = (n_real as u64).next_power_of_two().trailing_zeros();
        let padded = 1usize << height;
        let mut leaves: Vec<Digest> = dir
            .entries()
            .iter()
            .map(|(id, pk)| leaf_digest(*id, pk))
            .collect();
        leaves.resize(padded, sentinel_leaf());

        let mut levels = vec![leaves];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next: Vec<Digest> = prev
                .chunks(2)
                .map(|pair| combine(&pair[0], &pair[1]))
                .collect();
            levels.push(next);
        }
        MerkleTree {
            height: (levels.len() - 1) as u32,
            ids: dir.entries().iter().map(|(id, _)| *id).collect(),
            levels,
        }
    }

    pub fn root(&self) -> Digest {
        self.levels[self.height as usize][0]
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn leaf_count(&self) -> usize {
        self.ids.len()
    }

    /// Sibling path for a member id, bottom-up with position flags.
    pub fn prove(&self, id: NodeId) -> Result<AuthPath, MerkleError> {
        let mut idx = self
            .ids
            .binary_search(&id)
            .map_err(|_| MerkleError::UnknownId(id.0))?;
        let mut siblings = Vec::with_capacity(self.height as usize);
        for level in 0..self.height as usize {
            let (side, sib_idx) = if idx % 2 == 0 {
                (Side::Right, idx + 1)
            } else {
                (Side::Left, idx - 1)
            };
            siblings.push((side, self.levels[level][sib_idx]));
            idx /= 2;
        }
        Ok(AuthPath { siblings })
    }
}

/// Fold a claimed `(id, pk)` up through the path; authentic iff the result
/// equals the root. A path of the wrong length simply fails to reproduce the
/// root, so the answer is `false` rather than an error.
pub fn verify(root: &Digest, id: NodeId, pk: &[u8], path: &AuthPath) -> bool {
    let mut acc = leaf_digest(id, pk);
    for (side, sib) in &path.siblings {
        acc = match side {
            Side::Left => combine(sib, &acc),
            Side::Right => combine(&acc, sib),
        };
    }
    acc == *root
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn dir_of(n: u32) -> KeyDirectory {
        KeyDirectory::new(
            (0..n)
                .map(|i| (NodeId(i), vec![i as u8; 8]))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    // Independent recomputation of the two defining equations, kept separate
    // from the implementation path.
    fn oracle_leaf(id: u32, pk: &[u8]) -> Digest {
        let mut buf = id.to_be_bytes().to_vec();
        buf.extend_from_slice(pk);
        hash(&buf)
    }

    fn oracle_pair(a: &Digest, b: &Digest) -> Digest {
        let mut buf = a.0.to_vec();
        buf.extend_from_slice(&b.0);
        hash(&buf)
    }

    #[test]
    fn singleton_tree_root_is_leaf_with_empty_path() {
        let dir = dir_of(1);
        let t = MerkleTree::build(&dir);
        assert_eq!(t.height(), 0);
        assert_eq!(t.root(), oracle_leaf(0, &[0u8; 8]));
        let path = t.prove(NodeId(0)).unwrap();
        assert!(path.is_empty());
        assert!(verify(&t.root(), NodeId(0), &[0u8; 8], &path));
    }

    #[test]
    fn four_leaf_root_matches_hand_composition() {
        let dir = dir_of(4);
        let t = MerkleTree::build(&dir);
        assert_eq!(t.height(), 2);
        let phi: Vec<Digest> = (0..4).map(|i| oracle_leaf(i, &[i as u8; 8])).collect();
        let expected = oracle_pair(&oracle_pair(&phi[0], &phi[1]), &oracle_pair(&phi[2], &phi[3]));
        assert_eq!(t.root(), expected);
    }

    #[test]
    fn five_leaves_pad_to_eight_with_height_three() {
        let dir = dir_of(5);
        let t = MerkleTree::build(&dir);
        assert_eq!(t.height(), 3);
        for i in 0..5 {
            let path = t.prove(NodeId(i)).unwrap();
            // Verifier storage is H + 1 digests: H siblings plus the root.
            assert_eq!(path.len(), 3);
            assert!(verify(&t.root(), NodeId(i), &[i as u8; 8], &path));
        }
    }

    #[test]
    fn proof_of_leaf_zero_in_four_leaf_tree() {
        let dir = dir_of(4);
        let t = MerkleTree::build(&dir);
        let phi: Vec<Digest> = (0..4).map(|i| oracle_leaf(i, &[i as u8; 8])).collect();
        let path = t.prove(NodeId(0)).unwrap();
        assert_eq!(path.siblings[0], (Side::Right, phi[1]));
        assert_eq!(path.siblings[1], (Side::Right, oracle_pair(&phi[2], &phi[3])));
        assert!(t.prove(NodeId(9)).is_err());
    }

    #[test]
    fn every_leaf_of_eight_verifies() {
        let dir = dir_of(8);
        let t = MerkleTree::build(&dir);
        for i in 0..8 {
            let path = t.prove(NodeId(i)).unwrap();
            assert!(verify(&t.root(), NodeId(i), &[i as u8; 8], &path));
        }
    }

    #[test]
    fn tampered_pk_path_or_root_always_rejected() {
        let dir = dir_of(4);
        let t = MerkleTree::build(&dir);
        let pk = vec![2u8; 8];
        let path = t.prove(NodeId(2)).unwrap();
        let root = t.root();
        assert!(verify(&root, NodeId(2), &pk, &path));

        // Every single-bit flip of the pk.
        for bit in 0..pk.len() * 8 {
            let mut p = pk.clone();
            p[bit / 8] ^= 1 << (bit % 8);
            assert!(!verify(&root, NodeId(2), &p, &path));
        }
        // Every single-bit flip of every path digest, and flipped sides.
        for s in 0..path.siblings.len() {
            for bit in 0..256 {
                let mut p = path.clone();
                p.siblings[s].1 .0[bit / 8] ^= 1 << (bit % 8);
                assert!(!verify(&root, NodeId(2), &pk, &p));
            }
            let mut p = path.clone();
            p.siblings[s].0 = match p.siblings[s].0 {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            };
            assert!(!verify(&root, NodeId(2), &pk, &p));
        }
        // Every single-bit flip of the root.
        for bit in 0..256 {
            let mut r = root;
            r.0[bit / 8] ^= 1 << (bit % 8);
            assert!(!verify(&r, NodeId(2), &pk, &path));
        }
        // Swapped sibling from another leaf's path.
        let other = t.prove(NodeId(0)).unwrap();
        let mut p = path.clone();
        p.siblings[0] = other.siblings[0];
        assert!(!verify(&root, NodeId(2), &pk, &p));
        // Wrong path length.
        let mut p = path.clone();
        p.siblings.pop();
        assert!(!verify(&root, NodeId(2), &pk, &p));
    }

    #[test]
    fn random_forgeries_never_verify() {
        let dir = dir_of(8);
        let t = MerkleTree::build(&dir);
        let root = t.root();
        let honest_path = t.prove(NodeId(3)).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..100_000 {
            let mut pk = [0u8; 8];
            rng.fill_bytes(&mut pk);
            if pk == [3u8; 8] {
                continue;
            }
            assert!(!verify(&root, NodeId(3), &pk, &honest_path));
        }
    }

    #[test]
    fn build_is_canonical_in_input_order() {
        let a = KeyDirectory::new(vec![
            (NodeId(2), b"pk2".to_vec()),
            (NodeId(0), b"pk0".to_vec()),
            (NodeId(1), b"pk1".to_vec()),
        ])
        .unwrap();
        let b = KeyDirectory::new(vec![
            (NodeId(0), b"pk0".to_vec()),
            (NodeId(1), b"pk1".to_vec()),
            (NodeId(2), b"pk2".to_vec()),
        ])
        .unwrap();
        assert_eq!(MerkleTree::build(&a).root(), MerkleTree::build(&b).root());
        assert_eq!(
            KeyDirectory::new(vec![(NodeId(1), vec![]), (NodeId(1), vec![])]).unwrap_err(),
            MerkleError::DuplicateId(1)
        );
    }

    #[test]
    fn path_lines_roundtrip() {
        let t = MerkleTree::build(&dir_of(5));
        let path = t.prove(NodeId(4)).unwrap();
        let text = t.prove(NodeId(4)).unwrap().to_lines();
        assert_eq!(AuthPath::from_lines(&text).unwrap(), path);
    }

    proptest::proptest! {
        #[test]
        fn completeness_for_random_directories(n in 1usize..24, seed in 0u64..500) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let entries: Vec<(NodeId, Vec<u8>)> = (0..n).map(|i| {
                let mut pk = vec![0u8; 16];
                rng.fill_bytes(&mut pk);
                (NodeId(i as u32), pk)
            }).collect();
            let dir = KeyDirectory::new(entries.clone()).unwrap();
            let t = MerkleTree::build(&dir);
            for (id, pk) in &entries {
                let path = t.prove(*id).unwrap();
                proptest::prop_assert!(verify(&t.root(), *id, pk, &path));
            }
        }
    }
}
