//! Brute-force ground truth on small instances.
//!
//! Exhaustive enumeration of `(n,s)`-words and necklaces, and exact
//! longest-cycle / longest-path search over the induced subgraph of the
//! de Bruijn graph. Longest path and cycle are NP-hard in general, so the
//! searches are capped at tiny orders where an exhaustive branch-and-bound
//! finishes; they confirm the counting results by an independent route.

use crate::bitword::{BitWord, Necklace};
use crate::enumeration::count_necklace_words;
use crate::generators::{acyclic_zero_run_exceeds, cyclic_zero_run_exceeds, word_mask};
use crate::{Error, Result};

/// Cap for exhaustive word enumeration.
pub const MAX_WORD_ENUM_ORDER: u32 = 20;
/// Cap for exhaustive necklace classification.
pub const MAX_NECKLACE_ENUM_ORDER: u32 = 24;
/// Unconditional cap for the longest-cycle/path searches.
pub const MAX_EXHAUSTIVE_SEARCH_ORDER: u32 = 5;
/// The search also accepts order 6, pruning with the counting bound.
pub const MAX_PRUNED_SEARCH_ORDER: u32 = 6;

fn validate(n: u32, s: u32, cap: u32, what: &str) -> Result<()> {
    if n < 1 || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and s >= 1, got ({n},{s})"
        )));
    }
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "{what} needs n <= {cap}, got {n}"
        )));
    }
    Ok(())
}

/// All `(n,s)`-words in increasing value order.
pub fn enumerate_ns_words(n: u32, s: u32) -> Result<Vec<BitWord>> {
    validate(n, s, MAX_WORD_ENUM_ORDER, "word enumeration")?;
    let scan = |v: u64| (!acyclic_zero_run_exceeds(v, n, s)).then(|| BitWord::new(v, n));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..1u64 << n).into_par_iter().filter_map(scan).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..1u64 << n).filter_map(scan).collect())
    }
}

/// All `(n,s)`-necklaces, by canonical representative in increasing
/// order; classifies every value of the full word space.
pub fn enumerate_ns_necklaces(n: u32, s: u32) -> Result<Vec<Necklace>> {
    validate(n, s, MAX_NECKLACE_ENUM_ORDER, "necklace enumeration")?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..1u64 << n)
            .into_par_iter()
            .filter_map(|v| classify_canonical(v, n, s))
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_ns_necklaces_seq(n, s)
    }
}

/// Single-threaded variant of [`enumerate_ns_necklaces`]; also the
/// benchmark baseline for the parallel build.
pub fn enumerate_ns_necklaces_seq(n: u32, s: u32) -> Result<Vec<Necklace>> {
    validate(n, s, MAX_NECKLACE_ENUM_ORDER, "necklace enumeration")?;
    Ok((0..1u64 << n)
        .filter_map(|v| classify_canonical(v, n, s))
        .collect())
}

fn classify_canonical(v: u64, n: u32, s: u32) -> Option<Necklace> {
    if cyclic_zero_run_exceeds(v, n, s) {
        return None;
    }
    let w = BitWord::new(v, n);
    (w.min_rotation() == w).then(|| w.necklace())
}

/// Induced subgraph of the de Bruijn graph on the `(n,s)`-words: vertices
/// in increasing order, out-edges to the shift-successors that stay in
/// the set.
#[derive(Debug, Clone)]
pub struct GraphNS {
    pub n: u32,
    pub s: u32,
    pub vertices: Vec<u64>,
    pub successors: Vec<Vec<u32>>,
}

impl GraphNS {
    pub fn build(n: u32, s: u32) -> Result<Self> {
        let vertices: Vec<u64> = enumerate_ns_words(n, s)?
            .into_iter()
            .map(|w| w.value())
            .collect();
        let mask = word_mask(n);
        let successors = vertices
            .iter()
            .map(|&v| {
                let base = (v << 1) & mask;
                [base, base | 1]
                    .into_iter()
                    .filter_map(|u| vertices.binary_search(&u).ok().map(|i| i as u32))
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            s,
            vertices,
            successors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// Search state over a graph of at most 64 vertices, using bitmask sets.
struct Search {
    succ_mask: Vec<u64>,
    pred_mask: Vec<u64>,
    best: usize,
    /// Counting bound for the weaker order-6 mode; search stops early
    /// once it is met.
    stop_at: Option<usize>,
    stopped: bool,
}

impl Search {
    fn new(graph: &GraphNS, stop_at: Option<usize>) -> Self {
        let count = graph.vertex_count();
        assert!(count <= 64, "bitmask search needs at most 64 vertices");
        let mut succ_mask = vec![0u64; count];
        let mut pred_mask = vec![0u64; count];
        for (v, outs) in graph.successors.iter().enumerate() {
            for &u in outs {
                succ_mask[v] |= 1 << u;
                pred_mask[u as usize] |= 1 << v;
            }
        }
        Self {
            succ_mask,
            pred_mask,
            best: 0,
            stop_at,
            stopped: false,
        }
    }

    /// Vertices reachable from `from` through `allowed` (including
    /// `from` itself when allowed).
    fn reachable(&self, from: usize, allowed: u64) -> u64 {
        let mut seen = (1u64 << from) & allowed;
        let mut frontier = self.succ_mask[from] & allowed & !seen;
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.succ_mask[v];
            }
            frontier = next & allowed & !seen;
        }
        seen
    }

    fn note(&mut self, len: usize) {
        if len > self.best {
            self.best = len;
        }
        if let Some(cap) = self.stop_at {
            if self.best >= cap {
                self.stopped = true;
            }
        }
    }

    /// Extends a cycle anchored at `root` (the smallest vertex on it).
    fn cycle_dfs(&mut self, root: usize, cur: usize, visited: u64, len: usize) {
        if self.stopped {
            return;
        }
        if self.succ_mask[cur] >> root & 1 == 1 {
            self.note(len);
        }
        let above = above_mask(root);
        let mut f = self.succ_mask[cur] & above & !visited;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            let future = self.reachable(v, above & !visited);
            // The rest of the cycle lives in `future` and must get back
            // to the root.
            if future & self.pred_mask[root] == 0 {
                continue;
            }
            if len + future.count_ones() as usize <= self.best {
                continue;
            }
            self.cycle_dfs(root, v, visited | (1 << v), len + 1);
        }
    }

    fn path_dfs(&mut self, cur: usize, visited: u64, len: usize) {
        if self.stopped {
            return;
        }
        self.note(len);
        let mut f = self.succ_mask[cur] & !visited;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            let future = self.reachable(v, !visited);
            if len + future.count_ones() as usize <= self.best {
                continue;
            }
            self.path_dfs(v, visited | (1 << v), len + 1);
        }
    }
}

/// Set of vertex indices strictly greater than `root`.
fn above_mask(root: usize) -> u64 {
    if root + 1 >= 64 {
        0
    } else {
        !((1u64 << (root + 1)) - 1)
    }
}

fn search_caps(n: u32, s: u32) -> Result<Option<usize>> {
    // Order 6 runs in the weaker mode that trusts ell as an upper bound;
    // below that the search is fully exhaustive.
    if n == MAX_PRUNED_SEARCH_ORDER {
        Ok(Some(count_necklace_words(n, s)? as usize))
    } else {
        Ok(None)
    }
}

/// Maximum number of distinct windows over all cyclic sequences whose
/// windows are distinct `(n,s)`-words: the longest vertex-disjoint cycle
/// in the induced graph, by exhaustive depth-first search.
pub fn max_cycle_words(n: u32, s: u32) -> Result<usize> {
    validate(n, s, MAX_PRUNED_SEARCH_ORDER, "cycle search")?;
    let graph = GraphNS::build(n, s)?;
    let cycle_cap = search_caps(n, s)?;
    let mut search = Search::new(&graph, cycle_cap);
    for root in 0..graph.vertex_count() {
        if search.stopped {
            break;
        }
        search.cycle_dfs(root, root, 1 << root, 1);
    }
    Ok(search.best)
}

/// Maximum number of distinct windows over all acyclic such sequences:
/// the longest vertex-disjoint path, counted in vertices.
pub fn max_path_words(n: u32, s: u32) -> Result<usize> {
    validate(n, s, MAX_PRUNED_SEARCH_ORDER, "path search")?;
    let graph = GraphNS::build(n, s)?;
    let path_cap = search_caps(n, s)?.map(|ell| if s < n - 1 { ell + s as usize } else { ell });
    let mut search = Search::new(&graph, path_cap);
    for root in 0..graph.vertex_count() {
        if search.stopped {
            break;
        }
        search.path_dfs(root, 1 << root, 1);
    }
    Ok(search.best)
}

/// True iff every maximum-length cycle covers exactly the words of the
/// `(n,s)`-necklaces. Enumerates all maximum cycles, so the cap is
/// stricter than for the plain searches.
pub fn check_exact_cover(n: u32, s: u32) -> Result<bool> {
    validate(n, s, MAX_EXHAUSTIVE_SEARCH_ORDER, "exact-cover search")?;
    let graph = GraphNS::build(n, s)?;
    let max = max_cycle_words(n, s)?;
    let necklace_mask = graph
        .vertices
        .iter()
        .enumerate()
        .filter(|&(_, &v)| !cyclic_zero_run_exceeds(v, n, s))
        .fold(0u64, |m, (i, _)| m | (1 << i));

    // Second pass: walk every cycle that can still reach `max` vertices
    // and compare the vertex set of each maximum one.
    let mut scan = CoverScan {
        search: Search::new(&graph, None),
        max,
        target: necklace_mask,
        ok: true,
    };
    for root in 0..graph.vertex_count() {
        scan.walk(root, root, 1 << root, 1);
        if !scan.ok {
            break;
        }
    }
    Ok(scan.ok)
}

struct CoverScan {
    search: Search,
    max: usize,
    target: u64,
    ok: bool,
}

impl CoverScan {
    fn walk(&mut self, root: usize, cur: usize, visited: u64, len: usize) {
        if !self.ok {
            return;
        }
        if len == self.max && self.search.succ_mask[cur] >> root & 1 == 1 && visited != self.target
        {
            self.ok = false;
            return;
        }
        let above = above_mask(root);
        let mut f = self.search.succ_mask[cur] & above & !visited;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            let future = self.search.reachable(v, above & !visited);
            if future & self.search.pred_mask[root] == 0 {
                continue;
            }
            if len + (future.count_ones() as usize) < self.max {
                continue;
            }
            self.walk(root, v, visited | (1 << v), len + 1);
        }
    }
}
