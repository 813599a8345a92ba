//! Virtual time, topology, radio-independent packet frames, loosely
//! synchronized clocks, and energy accounting: the substrate every protocol
//! module runs on.

mod clock;
mod energy;
mod packet;
mod queue;
mod topology;

pub use clock::LooseClock;
pub use energy::{ChargeCause, EnergyConfig, EnergyMeter};
pub use packet::{Action, NextHop, Packet, PacketKind};
pub use queue::{EventQueue, ScheduleError};
pub use topology::{Topology, TopologyError, TopologySpec};

/// Node identifier; ids are dense `0..N-1` within a scenario.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Debug for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Virtual time in ticks.
pub type Tick = u64;
