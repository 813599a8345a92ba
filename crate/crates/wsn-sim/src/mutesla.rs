//! Broadcast authentication with a one-way key chain and delayed key
//! disclosure.
//!
//! The sender derives a chain `K_0..K_n` with `K_i = F(K_{i+1})`, tags each
//! broadcast with the key of its time interval, and discloses interval keys
//! a fixed lag later. Receivers hold the authentic commitment `K_0`, buffer
//! packets that pass the safety condition (the tagging key cannot yet have
//! been disclosed), and on each authentic disclosure verify and release
//! everything buffered for the intervals the disclosure covers. A disclosure
//! for interval `i` authenticates even when earlier disclosures were lost:
//! intermediate keys are re-derived by stepping the disclosed key down the
//! chain.

use crate::crypto::{chain_step, chain_step_n, mac, mac_verify, Key, Tag};
use crate::model::Tick;
use std::collections::VecDeque;
use thiserror::Error;

/// Maximum packets a receiver buffers awaiting disclosure; the oldest entry
/// is evicted first.
pub const PENDING_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainParams {
    pub interval_len: Tick,
    pub start_time: Tick,
    pub disclosure_lag: u64,
    pub chain_len: u64,
}

impl ChainParams {
    /// Interval index of tick `t`; ticks before the start count as interval 0.
    pub fn interval_of(&self, t: Tick) -> u64 {
        t.saturating_sub(self.start_time) / self.interval_len
    }

    /// Global tick at which the key of `interval` is disclosed.
    pub fn disclosure_time(&self, interval: u64) -> Tick {
        self.start_time + (interval + self.disclosure_lag) * self.interval_len
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ChainError {
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("time {0} is beyond the chain lifetime (interval > {1})")]
    BeyondLifetime(Tick, u64),
}

/// Sender-side key chain. `keys[i]` is `K_i`; `keys[0]` is the commitment
/// distributed to receivers at bootstrap.
#[derive(Debug, Clone)]
pub struct KeyChain {
    keys: Vec<Key>,
    pub params: ChainParams,
}

pub fn generate_chain(seed: Key, n: u64, params: ChainParams) -> Result<KeyChain, ChainError> {
    if n == 0 {
        return Err(ChainError::EmptyChain);
    }
    let mut keys = vec![seed; (n + 1) as usize];
    for i in (0..n as usize).rev() {
        keys[i] = chain_step(&keys[i + 1]);
    }
    Ok(KeyChain {
        keys,
        params: ChainParams {
            chain_len: n,
            ..params
        },
    })
}

impl KeyChain {
    pub fn commitment(&self) -> Key {
        self.keys[0]
    }

    pub fn key(&self, interval: u64) -> Option<Key> {
        self.keys.get(interval as usize).copied()
    }

    pub fn len(&self) -> u64 {
        self.keys.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Tag a payload with the key of the interval containing sender time `t`.
    /// The key used is still secret at `t`: its disclosure lies
    /// `disclosure_lag` intervals in the future.
    pub fn auth_broadcast(&self, payload: &[u8], t: Tick) -> Result<AuthedBroadcast, ChainError> {
        let interval = self.params.interval_of(t);
        if interval >= self.keys.len() as u64 {
            return Err(ChainError::BeyondLifetime(t, self.len()));
        }
        let key = self.keys[interval as usize];
        Ok(AuthedBroadcast {
            interval,
            tag: mac(&key, payload),
        })
    }
}

/// A tagged broadcast: the claimed interval travels with the packet so the
/// receiver can apply the safety condition before the key exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuthedBroadcast {
    pub interval: u64,
    pub tag: Tag,
}

/// A disclosed chain key, broadcast by the sender after the lag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisclosedKey {
    pub interval_index: u64,
    pub key: Key,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendingPacket {
    pub uid: u64,
    pub interval: u64,
    pub payload: Vec<u8>,
    pub tag: Tag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcceptOutcome {
    Buffered,
    /// The tagging key may already be public: an adversary could have forged
    /// the tag, so the packet must not be trusted or buffered.
    RejectedUnsafe,
}

#[derive(Debug, Error, PartialEq)]
pub enum DisclosureError {
    #[error("disclosed key for interval {0} fails the chain check")]
    Inauthentic(u64),
    #[error("disclosed interval {0} is beyond the chain length {1}")]
    BeyondChain(u64, u64),
}

/// Receiver state: bootstrapped out of band with the authentic commitment
/// and chain parameters.
#[derive(Debug, Clone)]
pub struct ReceiverAuthState {
    pub last_auth_index: u64,
    pub last_auth_key: Key,
    pub epsilon: u64,
    pub params: ChainParams,
    pending: VecDeque<PendingPacket>,
}

impl ReceiverAuthState {
    pub fn new(commitment: Key, epsilon: u64, params: ChainParams) -> Self {
        ReceiverAuthState {
            last_auth_index: 0,
            last_auth_key: commitment,
            epsilon,
            params,
            pending: VecDeque::new(),
        }
    }

    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    /// Safety condition: the latest possible sender time (`local_t +
    /// epsilon`) must map to an interval strictly before the disclosure
    /// interval of the tagging key, i.e.
    /// `interval(local_t + epsilon) < i + disclosure_lag`.
    pub fn accept(
        &mut self,
        uid: u64,
        payload: &[u8],
        auth: &AuthedBroadcast,
        local_t: Tick,
    ) -> AcceptOutcome {
        if auth.interval > self.params.chain_len {
            return AcceptOutcome::RejectedUnsafe;
        }
        let latest_sender_interval = self.params.interval_of(local_t + self.epsilon);
        if latest_sender_interval >= auth.interval + self.params.disclosure_lag {
            return AcceptOutcome::RejectedUnsafe;
        }
        if self.pending.len() == PENDING_CAP {
            self.pending.pop_front();
        }
        self.pending.push_back(PendingPacket {
            uid,
            interval: auth.interval,
            payload: payload.to_vec(),
            tag: auth.tag,
        });
        AcceptOutcome::Buffered
    }

    /// Verify a disclosed key against the last authentic key and, on
    /// success, release every buffered packet whose MAC checks under its
    /// interval key. Pending packets of covered intervals that fail their
    /// MAC are discarded. A disclosure for an already-authenticated interval
    /// is a no-op.
    pub fn verify_disclosure(
        &mut self,
        disclosed: &DisclosedKey,
    ) -> Result<Vec<PendingPacket>, DisclosureError> {
        if disclosed.interval_index <= self.last_auth_index {
            return Ok(Vec::new());
        }
        if disclosed.interval_index > self.params.chain_len {
            return Err(DisclosureError::BeyondChain(
                disclosed.interval_index,
                self.params.chain_len,
            ));
        }
        let steps = disclosed.interval_index - self.last_auth_index;
        if chain_step_n(&disclosed.key, steps) != self.last_auth_key {
            return Err(DisclosureError::Inauthentic(disclosed.interval_index));
        }

        // Derive every intermediate key: interval j gets
        // chain_step^(index - j)(disclosed).
        let base = self.last_auth_index;
        let mut keys = vec![disclosed.key; steps as usize + 1];
        for j in (0..steps as usize).rev() {
            keys[j] = chain_step(&keys[j + 1]);
        }
        let key_for = |interval: u64| -> Option<Key> {
            if interval > base && interval <= disclosed.interval_index {
                Some(keys[(interval - base) as usize])
            } else {
                None
            }
        };

        let mut released = Vec::new();
        let mut remaining = VecDeque::new();
        for p in self.pending.drain(..) {
            match key_for(p.interval) {
                Some(k) => {
                    if mac_verify(&k, &p.payload, &p.tag) {
                        released.push(p);
                    }
                    // else: forged or corrupted, silently discarded
                }
                None if p.interval > disclosed.interval_index => remaining.push_back(p),
                // Interval at or below the previously authenticated point:
                // its key was already public when buffered; drop.
                None => {}
            }
        }
        self.pending = remaining;
        self.last_auth_index = disclosed.interval_index;
        self.last_auth_key = disclosed.key;
        Ok(released)
    }
}
