//! Exact matching-theoretic predicates.
//!
//! [`maximum_matching`] and the predicates built on it are polynomial and
//! work on any graph. Everything that needs the minimum size of a maximal
//! matching goes through [`Oracle`], which refuses graphs above its vertex
//! ceiling instead of approximating.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_ORACLE_CEILING: usize = 20;

/// Hard upper bound for the ceiling; the search keeps vertex sets in a `u64`.
pub const MAX_ORACLE_CEILING: usize = 64;

/// Largest degree on the smaller side for the subset enumeration in
/// [`bipartite_equimatchable_lesk`].
pub const LESK_DEGREE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {order} vertices, oracle ceiling is {ceiling}")]
    CeilingExceeded { order: usize, ceiling: usize },
    #[error("oracle ceiling must be between 1 and {MAX_ORACLE_CEILING}, got {0}")]
    InvalidCeiling(usize),
    #[error("graph is not factor-critical")]
    NotFactorCritical,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex {vertex} has degree {degree}, subset enumeration is limited to {limit}")]
    DegreeGuard {
        vertex: usize,
        degree: usize,
        limit: usize,
    },
    #[error("{0:?} is not an edge of the graph")]
    NotAnEdge((usize, usize)),
    #[error("vertex {0} is covered twice")]
    SharedVertex(usize),
}

/// A set of pairwise disjoint edges, stored as sorted `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Validates `edges` against `g`.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, OracleError> {
        let mut covered = vec![false; g.order()];
        let mut list = Vec::new();
        for (u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(OracleError::NotAnEdge((u, v)));
            }
            for x in [u, v] {
                if std::mem::replace(&mut covered[x], true) {
                    return Err(OracleError::SharedVertex(x));
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Matching { edges: list })
    }

    fn from_mate(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != NONE && u < v)
            .map(|(u, &v)| (u, v))
            .collect();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Saturated vertices, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs
    }

    /// No edge of `g` has both endpoints exposed.
    pub fn is_maximal_in(&self, g: &Graph) -> bool {
        let mut covered = vec![false; g.order()];
        for &(u, v) in &self.edges {
            covered[u] = true;
            covered[v] = true;
        }
        g.edges().all(|(u, v)| covered[u] || covered[v])
    }
}

const NONE: usize = usize::MAX;

/// Maximum cardinality matching by Edmonds' blossom algorithm, O(n^3).
pub fn maximum_matching(g: &Graph) -> Matching {
    Matching::from_mate(&Blossom::new(g).run())
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.g.order();
        // Greedy start; augmenting paths finish the job.
        for u in 0..n {
            if self.mate[u] == NONE {
                if let Some(&v) = self.g.neighbors(u).iter().find(|&&v| self.mate[v] == NONE) {
                    self.mate[u] = v;
                    self.mate[v] = u;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
            }
        }
        self.mate
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.degree(v) {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.order().is_multiple_of(2) && 2 * maximum_matching(g).len() == g.order()
}

/// Odd order and `g - v` has a perfect matching for every `v`.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.order();
    n % 2 == 1
        && (0..n).all(|v| {
            let rest = g.without_vertices(&[v]).expect("vertex in range").graph;
            has_perfect_matching(&rest)
        })
}

/// Connected randomly matchable graphs are exactly `K_{2k}` and `K_{k,k}`,
/// so this is a structural test.
pub fn is_randomly_matchable(g: &Graph) -> Result<bool, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let (n, m) = (g.order(), g.size());
    if n % 2 == 1 {
        return Ok(false);
    }
    if m == n * (n - 1) / 2 {
        return Ok(true);
    }
    Ok(match g.bipartition() {
        Some((a, b)) => a.len() == b.len() && m == a.len() * b.len(),
        None => false,
    })
}

/// Summary of an exhaustive equimatchability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquimatchabilityReport {
    pub verdict: bool,
    pub max_size: usize,
    pub min_maximal_size: usize,
    /// A maximal matching smaller than a maximum one, when the verdict is
    /// negative.
    pub witness_small: Option<Matching>,
}

/// An independent triple whose removal leaves a perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleWitness {
    pub triple: [usize; 3],
    /// Perfect matching of the remaining graph, in original vertex ids.
    pub matching: Matching,
}

/// Exhaustive ground truth for graphs up to a vertex ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    ceiling: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            ceiling: DEFAULT_ORACLE_CEILING,
        }
    }
}

impl Oracle {
    pub fn new(ceiling: usize) -> Result<Self, OracleError> {
        if !(1..=MAX_ORACLE_CEILING).contains(&ceiling) {
            return Err(OracleError::InvalidCeiling(ceiling));
        }
        Ok(Oracle { ceiling })
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn check(&self, g: &Graph) -> Result<(), OracleError> {
        if g.order() > self.ceiling {
            return Err(OracleError::CeilingExceeded {
                order: g.order(),
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// A maximal matching of minimum cardinality.
    ///
    /// Branch and bound over vertices in ascending order: the lowest
    /// undecided vertex is either matched to an undecided neighbor or
    /// declared exposed, in which case all its neighbors must end up matched.
    pub fn min_maximal_matching(&self, g: &Graph) -> Result<Matching, OracleError> {
        self.check(g)?;
        let adj: Vec<u64> = (0..g.order())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let greedy = greedy_maximal(g);
        let mut search = MinMaximal {
            adj: &adj,
            all: if g.order() == 64 { u64::MAX } else { (1u64 << g.order()) - 1 },
            best: greedy.len(),
            best_edges: greedy.edges().to_vec(),
            stack: Vec::new(),
        };
        search.branch(0, 0);
        Ok(Matching::new(g, search.best_edges).expect("search yields a matching"))
    }

    pub fn min_maximal_matching_size(&self, g: &Graph) -> Result<usize, OracleError> {
        Ok(self.min_maximal_matching(g)?.len())
    }

    pub fn equimatchability(&self, g: &Graph) -> Result<EquimatchabilityReport, OracleError> {
        let small = self.min_maximal_matching(g)?;
        let max_size = maximum_matching(g).len();
        let verdict = small.len() == max_size;
        Ok(EquimatchabilityReport {
            verdict,
            max_size,
            min_maximal_size: small.len(),
            witness_small: (!verdict).then_some(small),
        })
    }

    pub fn is_equimatchable(&self, g: &Graph) -> Result<bool, OracleError> {
        Ok(self.equimatchability(g)?.verdict)
    }

    /// For factor-critical `g`: the first independent triple, in
    /// lexicographic order, whose removal leaves a perfect matching.
    pub fn independent_triple(&self, g: &Graph) -> Result<Option<TripleWitness>, OracleError> {
        self.check(g)?;
        if !is_factor_critical(g) {
            return Err(OracleError::NotFactorCritical);
        }
        let n = g.order();
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if g.has_edge(a, c) || g.has_edge(b, c) {
                        continue;
                    }
                    let rest = g.without_vertices(&[a, b, c]).expect("in range");
                    let m = maximum_matching(&rest.graph);
                    if 2 * m.len() == rest.graph.order() {
                        let edges = m
                            .edges()
                            .iter()
                            .map(|&(u, v)| (rest.original[u], rest.original[v]));
                        return Ok(Some(TripleWitness {
                            triple: [a, b, c],
                            matching: Matching::new(g, edges).expect("lifted matching"),
                        }));
                    }
                }
            }
        }
        Ok(None)
    }
}

fn greedy_maximal(g: &Graph) -> Matching {
    let mut covered = vec![false; g.order()];
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            edges.push((u, v));
        }
    }
    Matching { edges }
}

struct MinMaximal<'a> {
    adj: &'a [u64],
    all: u64,
    best: usize,
    best_edges: Vec<(usize, usize)>,
    stack: Vec<(usize, usize)>,
}

impl MinMaximal<'_> {
    /// `matched` and `exposed` are the decided vertices. No edge joins two
    /// exposed vertices at any point.
    fn branch(&mut self, matched: u64, exposed: u64) {
        let undecided = self.all & !matched & !exposed;
        // Undecided vertices next to an exposed one must be matched.
        let mut forced = 0u64;
        let mut bits = exposed;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            forced |= self.adj[x] & undecided;
        }
        let mut f = forced;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            if self.adj[x] & undecided == 0 {
                return;
            }
        }
        let lower = (forced.count_ones() as usize).div_ceil(2);
        if self.stack.len() + lower >= self.best {
            return;
        }
        if undecided == 0 {
            self.best = self.stack.len();
            self.best_edges = self.stack.clone();
            return;
        }
        let v = undecided.trailing_zeros() as usize;
        let open = self.adj[v] & undecided;
        let mut cands = open;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.stack.push((v, w));
            self.branch(matched | 1 << v | 1 << w, exposed);
            self.stack.pop();
        }
        if self.adj[v] & exposed == 0 {
            self.branch(matched, exposed | 1 << v);
        }
    }
}

/// Bipartite equimatchability test for a connected bipartite graph with
/// sides `U`, `V`, `|U| <= |V|`: every `u` in `U` needs a nonempty
/// `X ⊆ N(u)` with `|N(X)| <= |X|`.
pub fn bipartite_equimatchable_lesk(g: &Graph) -> Result<bool, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let (a, b) = g.bipartition().ok_or(OracleError::NotBipartite)?;
    let small = if a.len() <= b.len() { a } else { b };
    if let Some(&v) = small.iter().find(|&&v| g.degree(v) > LESK_DEGREE_LIMIT) {
        return Err(OracleError::DegreeGuard {
            vertex: v,
            degree: g.degree(v),
            limit: LESK_DEGREE_LIMIT,
        });
    }
    let mut stamp = vec![0u64; g.order()];
    let mut clock = 0u64;
    for &u in &small {
        let nu = g.neighbors(u);
        let mut ok = false;
        for subset in 1u64..1 << nu.len() {
            clock += 1;
            let mut union = 0usize;
            let size = subset.count_ones() as usize;
            let mut bits = subset;
            while bits != 0 && union <= size {
                let x = nu[bits.trailing_zeros() as usize];
                bits &= bits - 1;
                for &y in g.neighbors(x) {
                    if stamp[y] != clock {
                        stamp[y] = clock;
                        union += 1;
                    }
                }
            }
            if union <= size {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::path(4)
    }

    #[test]
    fn maximum_matching_sizes() {
        assert_eq!(maximum_matching(&Graph::complete_bipartite(3, 3)).len(), 3);
        assert_eq!(maximum_matching(&Graph::cycle(5)).len(), 2);
        assert_eq!(maximum_matching(&Graph::petersen()).len(), 5);
        assert_eq!(maximum_matching(&Graph::empty(4)).len(), 0);
        let m = maximum_matching(&Graph::petersen());
        assert!(Matching::new(&Graph::petersen(), m.edges().iter().copied()).is_ok());
    }

    #[test]
    fn blossom_needs_contraction() {
        // Triangle with a pendant path on each side: 0-1-2 triangle, 3~0, 4~2, 5~4.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (2, 4), (4, 5)]).unwrap();
        assert_eq!(maximum_matching(&g).len(), 3);
    }

    #[test]
    fn perfect_matchings() {
        assert!(has_perfect_matching(&Graph::complete(2)));
        assert!(!has_perfect_matching(&Graph::cycle(5)));
        assert!(has_perfect_matching(&p4()));
        assert!(has_perfect_matching(&Graph::empty(0)));
    }

    #[test]
    fn factor_critical() {
        assert!(is_factor_critical(&Graph::cycle(5)));
        assert!(is_factor_critical(&Graph::cycle(7)));
        assert!(!is_factor_critical(&Graph::complete_bipartite(3, 3)));
        assert!(is_factor_critical(&Graph::empty(1)));
        assert!(!is_factor_critical(&Graph::path(3)));
    }

    #[test]
    fn min_maximal() {
        let o = Oracle::default();
        assert_eq!(o.min_maximal_matching_size(&p4()).unwrap(), 1);
        assert_eq!(o.min_maximal_matching(&p4()).unwrap().edges(), &[(1, 2)]);
        assert_eq!(o.min_maximal_matching_size(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(
            o.min_maximal_matching_size(&Graph::complete_bipartite(3, 3)).unwrap(),
            3
        );
        // Star: every maximal matching is one edge.
        assert_eq!(
            o.min_maximal_matching_size(&Graph::complete_bipartite(1, 4)).unwrap(),
            1
        );
        assert_eq!(o.min_maximal_matching_size(&Graph::cycle(9)).unwrap(), 3);
    }

    #[test]
    fn ceiling_is_enforced() {
        let o = Oracle::new(6).unwrap();
        assert_eq!(
            o.min_maximal_matching_size(&Graph::cycle(7)),
            Err(OracleError::CeilingExceeded { order: 7, ceiling: 6 })
        );
        assert_eq!(Oracle::new(0), Err(OracleError::InvalidCeiling(0)));
        assert_eq!(Oracle::new(65), Err(OracleError::InvalidCeiling(65)));
    }

    #[test]
    fn equimatchability_reports() {
        let o = Oracle::default();
        assert!(o.equimatchability(&Graph::cycle(5)).unwrap().verdict);
        let c9 = o.equimatchability(&Graph::cycle(9)).unwrap();
        assert!(!c9.verdict);
        assert_eq!((c9.max_size, c9.min_maximal_size), (4, 3));
        let r = o.equimatchability(&p4()).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness_small.unwrap().edges(), &[(1, 2)]);
        let ok = o.equimatchability(&Graph::complete_bipartite(3, 3)).unwrap();
        assert!(ok.witness_small.is_none());
    }

    #[test]
    fn randomly_matchable() {
        assert!(is_randomly_matchable(&Graph::complete(4)).unwrap());
        assert!(is_randomly_matchable(&Graph::complete_bipartite(2, 2)).unwrap());
        assert!(!is_randomly_matchable(&Graph::cycle(6)).unwrap());
        assert!(!is_randomly_matchable(&Graph::complete_bipartite(2, 3)).unwrap());
        assert_eq!(
            is_randomly_matchable(&Graph::empty(2)),
            Err(OracleError::Disconnected)
        );
    }

    #[test]
    fn independent_triples() {
        let o = Oracle::default();
        assert_eq!(o.independent_triple(&Graph::cycle(7)).unwrap(), None);
        assert_eq!(o.independent_triple(&Graph::cycle(5)).unwrap(), None);
        let w = o.independent_triple(&Graph::cycle(9)).unwrap().unwrap();
        assert_eq!(w.triple, [0, 3, 6]);
        assert_eq!(w.matching.len(), 3);
        assert_eq!(
            o.independent_triple(&Graph::complete_bipartite(3, 3)),
            Err(OracleError::NotFactorCritical)
        );
        assert!(matches!(
            Oracle::new(5).unwrap().independent_triple(&Graph::cycle(7)),
            Err(OracleError::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn c9_triple_from_every_third_vertex() {
        // Removing 0, 3, 6 leaves the three edges 1-2, 4-5, 7-8.
        let c9 = Graph::cycle(9);
        let rest = c9.without_vertices(&[0, 3, 6]).unwrap();
        assert!(has_perfect_matching(&rest.graph));
        assert_eq!(rest.graph.size(), 3);
    }

    #[test]
    fn lesk() {
        for n in 1..5 {
            assert!(bipartite_equimatchable_lesk(&Graph::complete_bipartite(n, n)).unwrap());
        }
        assert!(bipartite_equimatchable_lesk(&Graph::complete_bipartite(1, 3)).unwrap());
        assert!(!bipartite_equimatchable_lesk(&p4()).unwrap());
        assert_eq!(
            bipartite_equimatchable_lesk(&Graph::cycle(5)),
            Err(OracleError::NotBipartite)
        );
        assert_eq!(
            bipartite_equimatchable_lesk(&Graph::empty(2)),
            Err(OracleError::Disconnected)
        );
        assert!(matches!(
            bipartite_equimatchable_lesk(&Graph::complete_bipartite(21, 21)),
            Err(OracleError::DegreeGuard { .. })
        ));
    }

    #[test]
    fn matching_validation() {
        let g = p4();
        assert_eq!(Matching::new(&g, [(0, 2)]), Err(OracleError::NotAnEdge((0, 2))));
        assert_eq!(
            Matching::new(&g, [(0, 1), (1, 2)]),
            Err(OracleError::SharedVertex(1))
        );
        let m = Matching::new(&g, [(3, 2), (1, 0)]).unwrap();
        assert_eq!(m.edges(), &[(0, 1), (2, 3)]);
        assert!(m.is_maximal_in(&g));
        assert_eq!(m.vertices(), vec![0, 1, 2, 3]);
    }
}
