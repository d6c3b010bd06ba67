//! Dinic's maximum flow over `f64` capacities, sized for the small bipartite
//! networks built by [`super::build_allocation`].

use std::collections::VecDeque;

/// Residual capacities at or below this are treated as saturated.
const RESIDUAL_EPS: f64 = 1e-15;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    capacity: f64,
    flow: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from → to` and returns its edge id.
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: f64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge {
            to,
            capacity,
            flow: 0.0,
        });
        self.edges.push(Edge {
            to: from,
            capacity: 0.0,
            flow: 0.0,
        });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    pub fn flow(&self, edge: usize) -> f64 {
        self.edges[edge].flow
    }

    fn residual(&self, edge: usize) -> f64 {
        self.edges[edge].capacity - self.edges[edge].flow
    }

    fn levels(&self, source: usize, sink: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.adjacency.len()];
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adjacency[u] {
                let v = self.edges[e].to;
                if level[v] == usize::MAX && self.residual(e) > RESIDUAL_EPS {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (level[sink] != usize::MAX).then_some(level)
    }

    fn augment(
        &mut self,
        u: usize,
        sink: usize,
        limit: f64,
        level: &[usize],
        cursor: &mut [usize],
    ) -> f64 {
        if u == sink {
            return limit;
        }
        while cursor[u] < self.adjacency[u].len() {
            let e = self.adjacency[u][cursor[u]];
            let v = self.edges[e].to;
            let residual = self.residual(e);
            if level[v] == level[u] + 1 && residual > RESIDUAL_EPS {
                let pushed = self.augment(v, sink, limit.min(residual), level, cursor);
                if pushed > 0.0 {
                    self.edges[e].flow += pushed;
                    self.edges[e ^ 1].flow -= pushed;
                    return pushed;
                }
            }
            cursor[u] += 1;
        }
        0.0
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> f64 {
        let mut total = 0.0;
        while let Some(level) = self.levels(source, sink) {
            let mut cursor = vec![0; self.adjacency.len()];
            loop {
                let pushed = self.augment(source, sink, f64::INFINITY, &level, &mut cursor);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}
