use super::NodeId;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Declarative topology input: either an explicit edge list over listed node
/// ids, or unit-disk adjacency derived from 2D positions and a radio range.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TopologySpec {
    Explicit {
        nodes: Vec<u32>,
        edges: Vec<(u32, u32)>,
    },
    UnitDisk {
        positions: Vec<(f64, f64)>,
        radio_range: f64,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("duplicate node id {0}")]
    DuplicateNodeId(u32),
    #[error("node ids must be dense 0..N-1, missing id {0}")]
    NonDenseIds(u32),
    #[error("edge ({0}, {1}) references unknown node id")]
    UnknownEdgeEndpoint(u32, u32),
    #[error("self-loop on node {0} (adjacency must be irreflexive)")]
    SelfLoop(u32),
    #[error("topology has no nodes")]
    Empty,
    #[error("radio range must be positive")]
    BadRadioRange,
}

/// Symmetric, irreflexive neighbor relation over dense node ids.
#[derive(Debug, Clone)]
pub struct Topology {
    neighbors: Vec<Vec<NodeId>>,
    positions: Option<Vec<(f64, f64)>>,
    radio_range: Option<f64>,
}

impl Topology {
    pub fn build(spec: &TopologySpec) -> Result<Self, TopologyError> {
        match spec {
            TopologySpec::Explicit { nodes, edges } => {
                if nodes.is_empty() {
                    return Err(TopologyError::Empty);
                }
                let n = nodes.len();
                let mut seen = vec![false; n];
                for &id in nodes {
                    if (id as usize) >= n {
                        return Err(TopologyError::NonDenseIds(id));
                    }
                    if seen[id as usize] {
                        return Err(TopologyError::DuplicateNodeId(id));
                    }
                    seen[id as usize] = true;
                }
                let mut adj = vec![std::collections::BTreeSet::new(); n];
                for &(a, b) in edges {
                    if a as usize >= n || b as usize >= n {
                        return Err(TopologyError::UnknownEdgeEndpoint(a, b));
                    }
                    if a == b {
                        return Err(TopologyError::SelfLoop(a));
                    }
                    adj[a as usize].insert(NodeId(b));
                    adj[b as usize].insert(NodeId(a));
                }
                Ok(Topology {
                    neighbors: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
                    positions: None,
                    radio_range: None,
                })
            }
            TopologySpec::UnitDisk {
                positions,
                radio_range,
            } => {
                if positions.is_empty() {
                    return Err(TopologyError::Empty);
                }
                if !(*radio_range > 0.0) {
                    return Err(TopologyError::BadRadioRange);
                }
                let n = positions.len();
                let mut adj = vec![Vec::new(); n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        if euclid(positions[i], positions[j]) <= *radio_range {
                            adj[i].push(NodeId(j as u32));
                            adj[j].push(NodeId(i as u32));
                        }
                    }
                }
                for list in &mut adj {
                    list.sort();
                }
                Ok(Topology {
                    neighbors: adj,
                    positions: Some(positions.clone()),
                    radio_range: Some(*radio_range),
                })
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node.index() < self.neighbors.len()
    }

    /// Neighbors of `node` in ascending id order.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.neighbors[node.index()]
    }

    pub fn are_neighbors(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors[a.index()].binary_search(&b).is_ok()
    }

    pub fn positions(&self) -> Option<&[(f64, f64)]> {
        self.positions.as_deref()
    }

    pub fn radio_range(&self) -> Option<f64> {
        self.radio_range
    }

    /// Nodes within `range` of `node` (unit-disk mode only). Used by the
    /// hello-flood adversary, whose transmissions carry farther than the
    /// nominal radio range.
    pub fn nodes_within(&self, node: NodeId, range: f64) -> Vec<NodeId> {
        let Some(pos) = &self.positions else {
            return self.neighbors(node).to_vec();
        };
        let p = pos[node.index()];
        (0..pos.len())
            .filter(|&i| i != node.index() && euclid(p, pos[i]) <= range)
            .map(|i| NodeId(i as u32))
            .collect()
    }

    /// BFS hop counts from `root`; unreachable nodes get `None`.
    pub fn bfs_hops(&self, root: NodeId) -> Vec<Option<u32>> {
        self.bfs_hops_avoiding(root, &[])
    }

    /// BFS hop counts from `root` over the graph with `avoid` removed.
    pub fn bfs_hops_avoiding(&self, root: NodeId, avoid: &[NodeId]) -> Vec<Option<u32>> {
        let n = self.node_count();
        let mut hops = vec![None; n];
        if avoid.contains(&root) {
            return hops;
        }
        hops[root.index()] = Some(0);
        let mut frontier = std::collections::VecDeque::from([root]);
        while let Some(u) = frontier.pop_front() {
            let d = hops[u.index()].unwrap();
            for &v in self.neighbors(u) {
                if avoid.contains(&v) || hops[v.index()].is_some() {
                    continue;
                }
                hops[v.index()] = Some(d + 1);
                frontier.push_back(v);
            }
        }
        hops
    }

    /// Shortest path from `src` to `dst` avoiding the given nodes, ties
    /// broken toward lower-id predecessors so the result is deterministic.
    pub fn shortest_path_avoiding(
        &self,
        src: NodeId,
        dst: NodeId,
        avoid: &[NodeId],
    ) -> Option<Vec<NodeId>> {
        if avoid.contains(&src) || avoid.contains(&dst) {
            return None;
        }
        let hops = self.bfs_hops_avoiding(src, avoid);
        hops[dst.index()]?;
        let mut path = vec![dst];
        let mut cur = dst;
        while cur != src {
            let d = hops[cur.index()].unwrap();
            let prev = self
                .neighbors(cur)
                .iter()
                .copied()
                .find(|p| !avoid.contains(p) && hops[p.index()] == Some(d - 1))
                .expect("BFS predecessor exists");
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        Some(path)
    }
}

fn euclid(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}
