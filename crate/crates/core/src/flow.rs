//! Dinic max-flow on small integer networks.
//!
//! Arcs are explored in insertion order, so the resulting flow is a
//! deterministic function of how the network was built.

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u64,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from -> to` with capacity `cap`, returning the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently routed through arc `id`.
    pub fn flow(&self, id: usize) -> u64 {
        self.arcs[id ^ 1].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0;
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        loop {
            level.fill(usize::MAX);
            level[source] = 0;
            let mut queue = std::collections::VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &id in &self.adj[u] {
                    let arc = &self.arcs[id];
                    if arc.cap > 0 && level[arc.to] == usize::MAX {
                        level[arc.to] = level[u] + 1;
                        queue.push_back(arc.to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            next.fill(0);
            loop {
                let pushed = self.augment(source, sink, u64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(
        &mut self,
        u: usize,
        sink: usize,
        limit: u64,
        level: &[usize],
        next: &mut [usize],
    ) -> u64 {
        if u == sink {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let pushed = self.augment(to, sink, limit.min(cap), level, next);
                if pushed > 0 {
                    self.arcs[id].cap -= pushed;
                    self.arcs[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_network() {
        // s=0, a=1, b=2, t=3
        let mut net = FlowNetwork::new(4);
        let sa = net.add_arc(0, 1, 3);
        net.add_arc(0, 2, 2);
        net.add_arc(1, 2, 1);
        net.add_arc(1, 3, 2);
        net.add_arc(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
        assert_eq!(net.flow(sa), 3);
    }

    #[test]
    fn bipartite_perfect_matching() {
        // 3x3 bipartite graph with a unique perfect matching 0-0, 1-1, 2-2
        // once greedy choices are undone.
        let mut net = FlowNetwork::new(8);
        for l in 0..3 {
            net.add_arc(0, 1 + l, 1);
            net.add_arc(4 + l, 7, 1);
        }
        for (l, r) in [(0, 0), (0, 1), (1, 1), (1, 0), (2, 0), (2, 2)] {
            net.add_arc(1 + l, 4 + r, 1);
        }
        assert_eq!(net.max_flow(0, 7), 3);
    }
}
