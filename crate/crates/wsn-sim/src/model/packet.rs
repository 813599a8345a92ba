use super::NodeId;
use crate::crypto::Tag;

/// Frame kinds used by the protocol modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PacketKind {
    Data,
    Hello,
    Rreq,
    Rrep,
    FRq,
    FRp,
    Probe,
    FurtherProbe,
    Notification,
    CoopDetectRequest,
    KeyDisclosure,
    BroadcastClaim,
    CounterResync,
}

impl PacketKind {
    pub fn label(self) -> &'static str {
        match self {
            PacketKind::Data => "data",
            PacketKind::Hello => "hello",
            PacketKind::Rreq => "rreq",
            PacketKind::Rrep => "rrep",
            PacketKind::FRq => "frq",
            PacketKind::FRp => "frp",
            PacketKind::Probe => "probe",
            PacketKind::FurtherProbe => "fprobe",
            PacketKind::Notification => "notify",
            PacketKind::CoopDetectRequest => "coopreq",
            PacketKind::KeyDisclosure => "keydisc",
            PacketKind::BroadcastClaim => "claim",
            PacketKind::CounterResync => "resync",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NextHop {
    Node(NodeId),
    Broadcast,
}

/// A radio frame. `size_bits` is fixed at construction as
/// `header_bits + 8 * payload.len()`; the header width is a scenario
/// constant (default 128 bits).
#[derive(Debug, Clone)]
pub struct Packet {
    pub uid: u64,
    pub kind: PacketKind,
    pub src: NodeId,
    pub dst: NodeId,
    pub next_hop: NextHop,
    pub payload: Vec<u8>,
    pub tag: Option<Tag>,
    pub counter: Option<u64>,
    pub ttl: u32,
    pub size_bits: u64,
}

impl Packet {
    pub fn new(
        uid: u64,
        kind: PacketKind,
        src: NodeId,
        dst: NodeId,
        next_hop: NextHop,
        payload: Vec<u8>,
        ttl: u32,
        header_bits: u64,
    ) -> Self {
        let size_bits = header_bits + 8 * payload.len() as u64;
        Packet {
            uid,
            kind,
            src,
            dst,
            next_hop,
            payload,
            tag: None,
            counter: None,
            ttl,
            size_bits,
        }
    }

    pub fn with_tag(mut self, tag: Tag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn with_counter(mut self, counter: u64) -> Self {
        self.counter = Some(counter);
        self
    }

    /// Copy of this packet re-addressed to a new next hop, with the payload
    /// possibly re-encrypted. The uid is preserved: it identifies the
    /// logical packet across hops.
    pub fn forwarded(&self, next_hop: NextHop, payload: Vec<u8>, header_bits: u64) -> Self {
        let mut p = self.clone();
        p.size_bits = header_bits + 8 * payload.len() as u64;
        p.payload = payload;
        p.next_hop = next_hop;
        p
    }
}

/// Queue action payload: deliver a frame to a node's radio, or fire a
/// node-local timer.
#[derive(Debug, Clone)]
pub enum Action<T> {
    Deliver { node: NodeId, packet: Packet },
    Timer { node: NodeId, token: T },
}
