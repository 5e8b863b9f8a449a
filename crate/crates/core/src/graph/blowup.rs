use std::collections::HashMap;

use super::{Graph, GraphError};

/// Per-vertex multiplicities for a blow-up. At least one entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityVector(Vec<usize>);

impl MultiplicityVector {
    pub fn new(counts: Vec<usize>) -> Result<Self, GraphError> {
        if counts.iter().all(|&c| c == 0) {
            return Err(GraphError::AllZeroMultiplicities);
        }
        Ok(MultiplicityVector(counts))
    }

    pub fn ones(len: usize) -> Self {
        assert!(len > 0);
        MultiplicityVector(vec![1; len])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertex count of the blown-up graph.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for MultiplicityVector {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// Replaces template vertex `i` by an independent set of `mults[i]` vertices.
///
/// The copies of vertex `i` occupy a contiguous block, blocks appear in
/// template order, and blocks with multiplicity zero are absent.
pub fn blow_up(template: &Graph, mults: &MultiplicityVector) -> Result<Graph, GraphError> {
    if mults.len() != template.order() {
        return Err(GraphError::LengthMismatch {
            expected: template.order(),
            got: mults.len(),
        });
    }
    let mut offset = Vec::with_capacity(template.order());
    let mut next = 0;
    for &m in mults.counts() {
        offset.push(next);
        next += m;
    }
    let mut adj = Vec::with_capacity(next);
    for (i, &m) in mults.counts().iter().enumerate() {
        if m == 0 {
            continue;
        }
        let deg: usize = template.neighbors(i).iter().map(|&j| mults[j]).sum();
        let mut list = Vec::with_capacity(deg);
        for &j in template.neighbors(i) {
            list.extend(offset[j]..offset[j] + mults[j]);
        }
        for _ in 1..m {
            adj.push(list.clone());
        }
        adj.push(list);
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// The twin-free quotient of a graph.
///
/// Vertices with identical open neighborhoods form one class; classes are
/// numbered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinContraction {
    pub quotient: Graph,
    pub mults: MultiplicityVector,
    pub class_of: Vec<usize>,
}

impl TwinContraction {
    /// Smallest original vertex of every class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.quotient.order()];
        for (v, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = v;
            }
        }
        reps
    }
}

/// Groups vertices by neighbor list. Runs in time linear in `n + m` apart
/// from sorting quotient neighbor lists.
pub fn twin_contract(g: &Graph) -> TwinContraction {
    let n = g.order();
    let mut class_of = Vec::with_capacity(n);
    let mut reps = Vec::new();
    let mut counts = Vec::new();
    let mut by_neighborhood: HashMap<&[usize], usize> = HashMap::new();
    for v in 0..n {
        let class = *by_neighborhood.entry(g.neighbors(v)).or_insert_with(|| {
            reps.push(v);
            counts.push(0);
            reps.len() - 1
        });
        counts[class] += 1;
        class_of.push(class);
    }
    let adj = reps
        .iter()
        .map(|&r| {
            let mut list: Vec<usize> = g.neighbors(r).iter().map(|&w| class_of[w]).collect();
            list.sort_unstable();
            list.dedup();
            list
        })
        .collect();
    let mults = if counts.is_empty() {
        MultiplicityVector(Vec::new())
    } else {
        MultiplicityVector(counts)
    };
    TwinContraction {
        quotient: Graph::from_sorted_adjacency(adj),
        mults,
        class_of,
    }
}
