//! Exhaustive routines for graphs with a few dozen vertices at most.

use super::{Graph, GraphError};

/// Largest order accepted by [`is_isomorphic_small`].
pub const SMALL_GRAPH_LIMIT: usize = 16;

/// Largest order accepted by the induced cycle search.
const CYCLE_SEARCH_LIMIT: usize = 32;

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Adjacency-preserving bijection `a -> b`, if one exists.
///
/// The returned map is the first one found when vertices of `a` are
/// assigned in ascending order to candidates of `b` in ascending order.
pub fn is_isomorphic_small(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    let mut first = None;
    for_each_isomorphism(a, b, &mut |map| {
        first = Some(map.to_vec());
        false
    })?;
    Ok(first)
}

/// Every isomorphism `a -> b`, in the same order as [`is_isomorphic_small`]
/// would try them.
pub fn isomorphisms(a: &Graph, b: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut all = Vec::new();
    for_each_isomorphism(a, b, &mut |map| {
        all.push(map.to_vec());
        true
    })?;
    Ok(all)
}

/// Calls `visit` on isomorphisms `a -> b` until it returns `false`.
fn for_each_isomorphism(
    a: &Graph,
    b: &Graph,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(), GraphError> {
    for g in [a, b] {
        if g.order() > SMALL_GRAPH_LIMIT {
            return Err(GraphError::TooLarge {
                order: g.order(),
                limit: SMALL_GRAPH_LIMIT,
            });
        }
    }
    let n = a.order();
    if n != b.order() || a.size() != b.size() {
        return Ok(());
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(());
    }
    let mut search = IsoSearch {
        a,
        b,
        ma: masks(a),
        mb: masks(b),
        map: vec![usize::MAX; n],
        used: 0,
        visit,
    };
    search.extend(0);
    Ok(())
}

struct IsoSearch<'a, 'v> {
    a: &'a Graph,
    b: &'a Graph,
    ma: Vec<u64>,
    mb: Vec<u64>,
    map: Vec<usize>,
    used: u64,
    visit: &'v mut dyn FnMut(&[usize]) -> bool,
}

impl IsoSearch<'_, '_> {
    /// Returns `false` once the visitor asks to stop.
    fn extend(&mut self, v: usize) -> bool {
        if v == self.map.len() {
            return (self.visit)(&self.map);
        }
        for w in 0..self.map.len() {
            if self.used & 1 << w != 0 || self.a.degree(v) != self.b.degree(w) {
                continue;
            }
            let consistent =
                (0..v).all(|u| (self.ma[v] >> u & 1) == (self.mb[w] >> self.map[u] & 1));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used |= 1 << w;
            let go_on = self.extend(v + 1);
            self.used &= !(1 << w);
            self.map[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn check_cycle_args(g: &Graph, len: usize) -> Result<(), GraphError> {
    if g.order() > CYCLE_SEARCH_LIMIT {
        return Err(GraphError::TooLarge {
            order: g.order(),
            limit: CYCLE_SEARCH_LIMIT,
        });
    }
    if len < 4 {
        return Err(GraphError::CycleLength(len));
    }
    Ok(())
}

/// Walks induced paths starting at their smallest vertex; `visit` sees each
/// chordless cycle of length `len` twice (once per direction) unless it
/// returns `true` to stop.
fn search_cycles(g: &Graph, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let adj = masks(g);
    let mut path = Vec::with_capacity(len);
    for s in 0..g.order() {
        path.clear();
        path.push(s);
        if grow(&adj, len, &mut path, 1 << s, visit) {
            return;
        }
    }
}

fn grow(
    adj: &[u64],
    len: usize,
    path: &mut Vec<usize>,
    on_path: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    let closing = path.len() == len - 1;
    // A vertex adjacent to an earlier path vertex would create a chord. The
    // closing vertex must see `start` and nothing else before `last`.
    let interior = path
        .get(1..path.len() - 1)
        .unwrap_or(&[])
        .iter().fold(0u64, |m, &p| m | adj[p]);
    let mut candidates = adj[last] & !on_path & !((1u64 << (start + 1)) - 1) & !interior;
    if closing {
        candidates &= adj[start];
    } else if path.len() > 1 {
        candidates &= !adj[start];
    }
    while candidates != 0 {
        let w = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        path.push(w);
        let stop = if closing {
            visit(path)
        } else {
            grow(adj, len, path, on_path | 1 << w, visit)
        };
        path.pop();
        if stop {
            return true;
        }
    }
    false
}

/// First chordless cycle of the given length, as a vertex sequence starting
/// at its smallest vertex.
pub fn find_induced_odd_cycle(g: &Graph, len: usize) -> Result<Option<Vec<usize>>, GraphError> {
    check_cycle_args(g, len)?;
    let mut found = None;
    search_cycles(g, len, &mut |c| {
        found = Some(c.to_vec());
        true
    });
    Ok(found)
}

/// Every chordless cycle of the given length, each listed once.
pub fn induced_cycles(g: &Graph, len: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    check_cycle_args(g, len)?;
    let mut all = Vec::new();
    search_cycles(g, len, &mut |c| {
        if c[1] < c[c.len() - 1] {
            all.push(c.to_vec());
        }
        false
    });
    Ok(all)
}
