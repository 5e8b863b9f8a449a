//! Simple undirected graphs and the structural primitives used by the rest
//! of the crate.
//!
//! Vertices are `0..n`. Neighbor lists are kept sorted and duplicate free,
//! which makes equality of graphs equality of labeled adjacency.

mod blowup;
pub mod io;
mod small;

use std::collections::VecDeque;

use thiserror::Error;

pub use blowup::{blow_up, twin_contract, MultiplicityVector, TwinContraction};
pub use small::{
    find_induced_odd_cycle, induced_cycles, is_isomorphic_small, isomorphisms, SMALL_GRAPH_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    Asymmetric(usize, usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("expected {expected} multiplicities, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("multiplicity vector has no positive entry")]
    AllZeroMultiplicities,
    #[error("graph has {order} vertices, limit for this operation is {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("cycle length {0} is not supported (need at least 4)")]
    CycleLength(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// An induced subgraph together with the original id of each new vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from neighbor lists, checking every invariant.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = adj.len();
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if list.binary_search(&u).is_ok() {
                return Err(GraphError::SelfLoop(u));
            }
        }
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { adj })
    }

    /// Caller guarantees sorted, symmetric, loop-free lists.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, l)| l.windows(2).all(|w| w[0] < w[1]) && l.binary_search(&u).is_err()));
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Graph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid complete bipartite graph")
    }

    /// The Petersen graph with outer cycle `0..5` and inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
    }

    /// Disjoint union, `other` relabeled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + off).collect()),
        );
        Graph { adj }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .skip_while(move |&v| v < u)
                .map(move |v| (u, v))
        })
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut block = Vec::new();
            while let Some(u) = stack.pop() {
                block.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// True for graphs with exactly one component. The null graph is not
    /// connected.
    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return false;
        }
        let mut seen = vec![false; self.order()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.order()
    }

    /// Two color classes with every edge crossing, or `None` when an odd
    /// cycle exists. The smallest vertex of each component gets class 0.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.order();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (left, right): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| color[v] == Some(false));
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Some triangle `[u, v, w]` with `u < v < w`, or `None`.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        // Orient every edge toward the endpoint of higher (degree, id) rank;
        // each triangle is then found from its lowest-ranked vertex.
        let n = self.order();
        let rank = |v: usize| (self.degree(v), v);
        let out: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                self.adj[u]
                    .iter()
                    .copied()
                    .filter(|&v| rank(v) > rank(u))
                    .collect()
            })
            .collect();
        let mut mark = vec![usize::MAX; n];
        for u in 0..n {
            for &v in &out[u] {
                mark[v] = u;
            }
            for &v in &out[u] {
                if let Some(&w) = out[v].iter().find(|&&w| mark[w] == u) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let n = self.order();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if index[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Ok(InducedSubgraph {
            graph: Graph { adj },
            original: vertices.to_vec(),
        })
    }

    /// Induced subgraph on the vertices not in `removed`, in ascending order.
    pub fn without_vertices(&self, removed: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let n = self.order();
        let mut gone = vec![false; n];
        for &v in removed {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Writes the graph in DOT syntax, vertex ids as labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}
