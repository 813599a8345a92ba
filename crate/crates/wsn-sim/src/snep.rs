//! Pairwise sessions with counter-mode confidentiality, MAC authentication,
//! replay protection, and weak freshness.
//!
//! Both endpoints derive an encryption key and a MAC key from the pair's
//! master key and keep a shared counter per direction; the counter is never
//! sent on the wire. A message is `ciphertext = CTR(k_encr, c, data)` with
//! `tag = MAC(k_mac, c_be || ciphertext)`, and the counter increments after
//! each send and each accepted receive. The receiver tries the counters in
//! its acceptance window, so short loss runs are absorbed without any
//! exchange; longer gaps need the three-message resynchronization below.
//!
//! `k_rand` is derived alongside the other sub-keys because the key schedule
//! names it, but no procedure here consumes it.

use crate::crypto::{ctr_decrypt, ctr_encrypt, derive_key, mac, mac_verify, Key, Tag};
use crate::model::NodeId;
use thiserror::Error;

/// Receiver acceptance window: how many counters past the expected one are
/// tried before a message is rejected. Bounds the try-decrypt cost while
/// tolerating short loss runs.
pub const DEFAULT_WINDOW: u32 = 4;

pub const TAG_LEN: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SnepError {
    /// The tag matched no counter in the acceptance window: tampering, loss
    /// beyond the window, or a replay. The wire gives no way to tell these
    /// apart; ground-truth classification is the simulator's job.
    #[error("message rejected: tag matches no window counter")]
    RejectAuth,
    #[error("resynchronization aborted: MAC failure")]
    ResyncAuth,
    #[error("message too short for tag")]
    Truncated,
}

/// One endpoint's half of a pairwise session.
#[derive(Debug, Clone)]
pub struct SnepSession {
    pub self_id: NodeId,
    pub peer: NodeId,
    k_encr: Key,
    k_mac: Key,
    #[allow(dead_code)] // named by the key schedule, unused by any procedure
    k_rand: Key,
    pub send_counter: u32,
    pub recv_counter: u32,
    pub window: u32,
}

impl SnepSession {
    /// Derive the session from the pair's master key. Both endpoints call
    /// this with the same master, so the halves agree on all sub-keys.
    pub fn new(self_id: NodeId, peer: NodeId, master: &Key, window: u32) -> Self {
        SnepSession {
            self_id,
            peer,
            k_encr: derive_key(master, b"encr"),
            k_mac: derive_key(master, b"mac"),
            k_rand: derive_key(master, b"rand"),
            send_counter: 0,
            recv_counter: 0,
            window,
        }
    }

    /// Encrypt-and-tag under the current send counter, then increment it.
    pub fn send(&mut self, data: &[u8]) -> SnepMessage {
        let c = self.send_counter;
        let ciphertext = ctr_encrypt(&self.k_encr, c as u64, data);
        let tag = mac(&self.k_mac, &mac_input(c, &ciphertext));
        self.send_counter = self.send_counter.wrapping_add(1);
        SnepMessage { ciphertext, tag }
    }

    /// Try counters `recv_counter .. recv_counter + window - 1`; accept at
    /// the first match, advancing the counter past it. A replayed message
    /// (counter already consumed) can never match.
    pub fn receive(&mut self, msg: &SnepMessage) -> Result<Vec<u8>, SnepError> {
        for offset in 0..self.window {
            let c = self.recv_counter.wrapping_add(offset);
            if mac_verify(&self.k_mac, &mac_input(c, &msg.ciphertext), &msg.tag) {
                self.recv_counter = c.wrapping_add(1);
                return Ok(ctr_decrypt(&self.k_encr, c as u64, &msg.ciphertext));
            }
        }
        Err(SnepError::RejectAuth)
    }
}

fn mac_input(counter: u32, ciphertext: &[u8]) -> Vec<u8> {
    let mut v = Vec::with_capacity(4 + ciphertext.len());
    v.extend_from_slice(&counter.to_be_bytes());
    v.extend_from_slice(ciphertext);
    v
}

/// Wire form of a session message. Layout inside `Packet.payload`:
/// `tag (16 bytes) || ciphertext (rest)` — the counter itself is never
/// carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnepMessage {
    pub ciphertext: Vec<u8>,
    pub tag: Tag,
}

impl SnepMessage {
    pub fn to_wire(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(TAG_LEN + self.ciphertext.len());
        v.extend_from_slice(&self.tag.0);
        v.extend_from_slice(&self.ciphertext);
        v
    }

    pub fn from_wire(bytes: &[u8]) -> Result<Self, SnepError> {
        if bytes.len() < TAG_LEN {
            return Err(SnepError::Truncated);
        }
        Ok(SnepMessage {
            tag: Tag(bytes[..TAG_LEN].try_into().unwrap()),
            ciphertext: bytes[TAG_LEN..].to_vec(),
        })
    }
}

// ---------------------------------------------------------------------------
// Counter resynchronization: a three-message MAC-authenticated exchange.
//
//   challenge:  A -> B   nonce
//   report:     B -> A   nonce, B.send, B.recv, MAC
//   confirm:    A -> B   nonce, A.send', A.recv', MAC
//
// Each exchange draws a fresh nonce, so replayed reports or confirms fail
// verification. After the exchange both directions adopt the maximum of the
// two sides' views, which re-enables delivery after arbitrarily large gaps.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResyncChallenge {
    pub nonce: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResyncReport {
    pub nonce: u64,
    pub send_counter: u32,
    pub recv_counter: u32,
    pub tag: Tag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResyncConfirm {
    pub nonce: u64,
    pub send_counter: u32,
    pub recv_counter: u32,
    pub tag: Tag,
}

fn resync_mac(k_mac: &Key, stage: u8, nonce: u64, send: u32, recv: u32) -> Tag {
    let mut buf = Vec::with_capacity(17);
    buf.push(stage);
    buf.extend_from_slice(&nonce.to_be_bytes());
    buf.extend_from_slice(&send.to_be_bytes());
    buf.extend_from_slice(&recv.to_be_bytes());
    mac(k_mac, &buf)
}

impl SnepSession {
    pub fn resync_challenge(&self, nonce: u64) -> ResyncChallenge {
        ResyncChallenge { nonce }
    }

    /// Responder: report current counters under the exchange nonce.
    pub fn resync_report(&self, challenge: &ResyncChallenge) -> ResyncReport {
        ResyncReport {
            nonce: challenge.nonce,
            send_counter: self.send_counter,
            recv_counter: self.recv_counter,
            tag: resync_mac(
                &self.k_mac,
                1,
                challenge.nonce,
                self.send_counter,
                self.recv_counter,
            ),
        }
    }

    /// Initiator: verify the report, adopt synchronized counters, and emit
    /// the confirm message. On MAC failure nothing changes.
    pub fn resync_confirm(
        &mut self,
        nonce: u64,
        report: &ResyncReport,
    ) -> Result<ResyncConfirm, SnepError> {
        let expected = resync_mac(
            &self.k_mac,
            1,
            report.nonce,
            report.send_counter,
            report.recv_counter,
        );
        if report.nonce != nonce || !expected.ct_eq(&report.tag) {
            return Err(SnepError::ResyncAuth);
        }
        // Direction self->peer is my send / their recv; both sides take the max.
        self.send_counter = self.send_counter.max(report.recv_counter);
        self.recv_counter = self.recv_counter.max(report.send_counter);
        Ok(ResyncConfirm {
            nonce,
            send_counter: self.send_counter,
            recv_counter: self.recv_counter,
            tag: resync_mac(&self.k_mac, 2, nonce, self.send_counter, self.recv_counter),
        })
    }

    /// Responder: verify the confirm and adopt the initiator's view.
    /// On MAC failure nothing changes.
    pub fn resync_finish(&mut self, nonce: u64, confirm: &ResyncConfirm) -> Result<(), SnepError> {
        let expected = resync_mac(
            &self.k_mac,
            2,
            confirm.nonce,
            confirm.send_counter,
            confirm.recv_counter,
        );
        if confirm.nonce != nonce || !expected.ct_eq(&confirm.tag) {
            return Err(SnepError::ResyncAuth);
        }
        // The initiator's send feeds my recv and vice versa.
        self.recv_counter = self.recv_counter.max(confirm.send_counter);
        self.send_counter = self.send_counter.max(confirm.recv_counter);
        Ok(())
    }
}

/// Run the whole exchange in-process between two session halves.
pub fn counter_resync(
    a: &mut SnepSession,
    b: &mut SnepSession,
    nonce: u64,
) -> Result<(), SnepError> {
    let challenge = a.resync_challenge(nonce);
    let report = b.resync_report(&challenge);
    let confirm = a.resync_confirm(nonce, &report)?;
    b.resync_finish(nonce, &confirm)
}
