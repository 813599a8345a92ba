use super::{NodeId, Tick};
use rand::Rng;

/// Loosely synchronized clocks: every node's local time is the global
/// virtual time plus a fixed per-node offset with `|offset| <= epsilon`.
/// Offsets are drawn once at init from a seeded stream; there is no drift.
#[derive(Debug, Clone)]
pub struct LooseClock {
    offsets: Vec<i64>,
    epsilon: u64,
}

impl LooseClock {
    pub fn new<R: Rng>(node_count: usize, epsilon: u64, rng: &mut R) -> Self {
        let offsets = (0..node_count)
            .map(|_| {
                if epsilon == 0 {
                    0
                } else {
                    rng.random_range(-(epsilon as i64)..=(epsilon as i64))
                }
            })
            .collect();
        LooseClock { offsets, epsilon }
    }

    pub fn epsilon(&self) -> u64 {
        self.epsilon
    }

    pub fn offset(&self, node: NodeId) -> i64 {
        self.offsets[node.index()]
    }

    /// Local time of `node` at global time `global`. Saturates at zero so
    /// early-sim negative local times cannot occur.
    pub fn local_time(&self, node: NodeId, global: Tick) -> Tick {
        let t = global as i64 + self.offsets[node.index()];
        t.max(0) as Tick
    }
}
