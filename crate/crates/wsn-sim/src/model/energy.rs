use super::NodeId;
use serde::{Deserialize, Serialize};

/// Energy cost constants in instruction-equivalent units. Transmitting one
/// bit costs about as much as executing 800 to 1000 instructions on a sensor
/// node; the default uses the upper end. The receive cost has no measured
/// counterpart and its default of 500 is an invented, configurable value.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct EnergyConfig {
    pub tx_cost_per_bit: u64,
    pub rx_cost_per_bit: u64,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        EnergyConfig {
            tx_cost_per_bit: 1000,
            rx_cost_per_bit: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChargeCause {
    Transmit { bits: u64 },
    Receive { bits: u64 },
    Compute { instructions: u64 },
}

/// Per-node accumulators in instruction-equivalent units; monotonically
/// non-decreasing, split by cause so transmit totals can be compared across
/// protocols.
#[derive(Debug, Clone)]
pub struct EnergyMeter {
    config: EnergyConfig,
    transmit: Vec<u64>,
    receive: Vec<u64>,
    compute: Vec<u64>,
}

impl EnergyMeter {
    pub fn new(node_count: usize, config: EnergyConfig) -> Self {
        EnergyMeter {
            config,
            transmit: vec![0; node_count],
            receive: vec![0; node_count],
            compute: vec![0; node_count],
        }
    }

    /// Charge `node` for a cause; returns the charged amount.
    pub fn charge(&mut self, node: NodeId, cause: ChargeCause) -> u64 {
        let i = node.index();
        match cause {
            ChargeCause::Transmit { bits } => {
                let units = bits * self.config.tx_cost_per_bit;
                self.transmit[i] += units;
                units
            }
            ChargeCause::Receive { bits } => {
                let units = bits * self.config.rx_cost_per_bit;
                self.receive[i] += units;
                units
            }
            ChargeCause::Compute { instructions } => {
                self.compute[i] += instructions;
                instructions
            }
        }
    }

    pub fn node_total(&self, node: NodeId) -> u64 {
        let i = node.index();
        self.transmit[i] + self.receive[i] + self.compute[i]
    }

    pub fn node_transmit(&self, node: NodeId) -> u64 {
        self.transmit[node.index()]
    }

    pub fn total_transmit(&self) -> u64 {
        self.transmit.iter().sum()
    }

    pub fn total_receive(&self) -> u64 {
        self.receive.iter().sum()
    }

    pub fn total_compute(&self) -> u64 {
        self.compute.iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.total_transmit() + self.total_receive() + self.total_compute()
    }

    pub fn per_node_totals(&self) -> Vec<u64> {
        (0..self.transmit.len())
            .map(|i| self.transmit[i] + self.receive[i] + self.compute[i])
            .collect()
    }

    pub fn per_node_transmit(&self) -> &[u64] {
        &self.transmit
    }
}
