//! The bipartite incompatibility graph `G_k` and exact searches over its
//! non-trivial independent sets.
//!
//! Prefix vertex `x_p` is joined to suffix vertex `y_s` when some `t`-prefix of
//! `p` equals the `t`-suffix of `s`, `1 <= t <= k`. An independent set
//! `X_C ∪ Y_C` with both sides non-empty yields a `(1, k)`-overlap-free code of
//! size `|X_C| · |Y_C| · 2^(n-2k)`, and every optimal code arises this way.
//!
//! Any non-trivial independent set lies inside `X_0 ∪ Y_1` (prefixes starting
//! with 0, suffixes ending with 1) or its bit-complement mirror `X_1 ∪ Y_0`, so
//! the searches enumerate subsets of `X_0` and take `Y_C` to be every vertex of
//! `Y_1` that stays compatible.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::codecheck::PrefixSuffixSystem;
use crate::counting::SymbolicSize;
use crate::error::{capacity, domain, Result};
use crate::word::{prefix_bits, suffix_bits, BitWord};

/// Largest `k` for which the full adjacency table is built.
pub const MAX_GRAPH_K: u32 = 16;
/// Largest `k` for which the searches are guaranteed to finish.
pub const EXACT_SEARCH_MAX_K: u32 = 6;
/// Largest `k` for the reduction-free [`exhaustive_search`].
pub const EXHAUSTIVE_MAX_K: u32 = 5;

/// `x_p ~ y_s` in `G_k`, straight from the definition.
#[inline]
pub fn adjacent(p: u64, s: u64, k: u32) -> bool {
    (1..=k).any(|t| prefix_bits(p, k, t) == suffix_bits(s, t))
}

/// Adjacency rows of `G_k`: `row(p)` holds every `s` with `x_p ~ y_s`.
#[derive(Clone, Debug)]
pub struct OverlapGraph {
    k: u32,
    rows: Vec<Bitset>,
}

impl OverlapGraph {
    pub fn build(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_GRAPH_K {
            return Err(capacity(format!("G_k is built for 1 <= k <= {MAX_GRAPH_K}, got {k}")));
        }
        let size = 1usize << k;
        let rows = (0..size as u64)
            .into_par_iter()
            .map(|p| {
                let mut row = Bitset::new(size);
                // y_s is a neighbour iff s ≡ (t-prefix of p) mod 2^t for some t
                for t in 1..=k {
                    let head = prefix_bits(p, k, t) as usize;
                    for high in 0..(1usize << (k - t)) {
                        row.insert((high << t) | head);
                    }
                }
                row
            })
            .collect();
        Ok(Self { k, rows })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `|X| = |Y| = 2^k`.
    pub fn side_len(&self) -> usize {
        1 << self.k
    }

    pub fn is_edge(&self, p: u64, s: u64) -> bool {
        self.rows[p as usize].contains(s as usize)
    }

    /// Neighbours of `x_p` in ascending order.
    pub fn neighbours(&self, p: u64) -> impl Iterator<Item = BitWord> + '_ {
        self.rows[p as usize].iter().map(move |s| BitWord::truncating(s as u64, self.k))
    }

    pub fn degree(&self, p: u64) -> usize {
        self.rows[p as usize].count()
    }

    /// Direct scan of every `(x, y)` pair.
    pub fn is_independent(&self, x_set: &[u64], y_set: &[u64]) -> bool {
        x_set.iter().all(|&p| y_set.iter().all(|&s| !self.is_edge(p, s)))
    }
}

/// A non-trivial independent set `X_C ∪ Y_C` of `G_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchResult {
    pub k: u32,
    pub x_set: Vec<BitWord>,
    pub y_set: Vec<BitWord>,
    /// False when a time limit cut the search short.
    pub optimal: bool,
}

impl SearchResult {
    pub fn product(&self) -> u64 {
        self.x_set.len() as u64 * self.y_set.len() as u64
    }

    pub fn cardinality(&self) -> usize {
        self.x_set.len() + self.y_set.len()
    }

    /// Size of the code family the set generates.
    pub fn symbolic_size(&self) -> SymbolicSize {
        SymbolicSize::new(self.product(), 2 * self.k)
    }

    pub fn to_system(&self) -> PrefixSuffixSystem {
        let values = |ws: &[BitWord]| -> Vec<u64> {
            let mut v: Vec<u64> = ws.iter().map(BitWord::value).collect();
            v.sort_unstable();
            v
        };
        PrefixSuffixSystem::from_sorted_unchecked(self.k, values(&self.x_set), values(&self.y_set))
    }

    fn x_values(&self) -> Vec<u64> {
        self.x_set.iter().map(BitWord::value).collect()
    }

    fn y_values(&self) -> Vec<u64> {
        self.y_set.iter().map(BitWord::value).collect()
    }

    /// Independence checked against the definitional predicate, not a graph.
    pub fn is_independent(&self) -> bool {
        let (xs, ys) = (self.x_values(), self.y_values());
        xs.iter().all(|&p| ys.iter().all(|&s| !adjacent(p, s, self.k)))
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} |X_C|={} |Y_C|={} product={}{}",
            self.k,
            self.x_set.len(),
            self.y_set.len(),
            self.product(),
            if self.optimal { "" } else { " (not proven optimal)" }
        )
    }
}

/// What a search maximizes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Objective {
    /// `|X_C| · |Y_C|`.
    Product,
    /// `|X_C| + |Y_C|`.
    Cardinality,
    /// `|X_C| · |Y_C|` first, then `|X_C| + |Y_C|` among equal products.
    ProductThenCardinality,
}

impl Objective {
    #[inline]
    fn score(self, x: usize, y: usize) -> (u64, u64) {
        let (x, y) = (x as u64, y as u64);
        match self {
            Objective::Product => (x * y, 0),
            Objective::Cardinality => (x + y, 0),
            Objective::ProductThenCardinality => (x * y, x + y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Product => "product",
            Objective::Cardinality => "cardinality",
            Objective::ProductThenCardinality => "product-then-cardinality",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Return the optimum with the lexicographically smallest sorted `X_C`.
    pub canonical: bool,
    /// Give up after this long and return the incumbent, flagged non-optimal.
    pub time_limit: Option<Duration>,
}

/// Maximizes `|X_C| · |Y_C|`.
pub fn max_product_search(g: &OverlapGraph, opts: SearchOptions) -> Result<SearchResult> {
    reduced_search(g, Objective::Product, opts)
}

/// Maximizes `|X_C| + |Y_C|`.
pub fn max_cardinality_search(g: &OverlapGraph, opts: SearchOptions) -> Result<SearchResult> {
    reduced_search(g, Objective::Cardinality, opts)
}

/// Largest `|X_C| + |Y_C|` among the sets that maximize `|X_C| · |Y_C|`, with
/// such a set. This is the quantity tabulated next to `C(k, n)` for `k <= 6`.
pub fn product_optimal_cardinality(g: &OverlapGraph, opts: SearchOptions) -> Result<SearchResult> {
    reduced_search(g, Objective::ProductThenCardinality, opts)
}

/// Search over `X_0 × Y_1` for any objective.
pub fn reduced_search(
    g: &OverlapGraph,
    objective: Objective,
    opts: SearchOptions,
) -> Result<SearchResult> {
    let k = g.k;
    let half = 1u64 << (k - 1);
    // X_0 = values 0..half; Y_1 = odd values, indexed by s >> 1
    let left: Vec<u64> = (0..half).collect();
    let rows: Vec<Bitset> = left
        .iter()
        .map(|&p| {
            let mut row = Bitset::new(half as usize);
            for s in g.rows[p as usize].iter().filter(|s| s & 1 == 1) {
                row.insert(s >> 1);
            }
            row
        })
        .collect();
    let right: Vec<u64> = (0..half).map(|i| (i << 1) | 1).collect();
    run_search(k, &left, &rows, &right, objective, opts)
}

/// Reduction-free search over all of `X × Y`, for cross-checking the
/// `X_0 × Y_1` reduction at small `k`.
pub fn exhaustive_search(g: &OverlapGraph, objective: Objective) -> Result<SearchResult> {
    if g.k > EXHAUSTIVE_MAX_K {
        return Err(capacity(format!(
            "reduction-free search is limited to k <= {EXHAUSTIVE_MAX_K}"
        )));
    }
    let all: Vec<u64> = (0..g.side_len() as u64).collect();
    run_search(g.k, &all, &g.rows, &all, objective, SearchOptions::default())
}

struct Search<'a> {
    rows: &'a [Bitset],
    objective: Objective,
    canonical: bool,
    deadline: Option<Instant>,
    timed_out: bool,
    nodes: u64,
    best_score: (u64, u64),
    best_x: Vec<usize>,
    best_y: Option<Bitset>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, chosen: &mut Vec<usize>, y: &Bitset) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return;
        }
        let y_count = y.count();
        let remaining = self.rows.len() - i;
        let bound = self.objective.score(chosen.len() + remaining, y_count);
        if bound < self.best_score || (bound == self.best_score && !self.canonical) {
            return;
        }
        if i == self.rows.len() {
            self.consider(chosen, y, y_count);
            return;
        }
        let row = &self.rows[i];
        if !row.intersects(y) {
            // compatible with everything left on the right: taking it never hurts
            chosen.push(i);
            self.run(i + 1, chosen, y);
            chosen.pop();
            return;
        }
        if y.difference_count(row) > 0 {
            let mut shrunk = y.clone();
            shrunk.difference_with(row);
            chosen.push(i);
            self.run(i + 1, chosen, &shrunk);
            chosen.pop();
        }
        self.run(i + 1, chosen, y);
    }

    fn consider(&mut self, chosen: &[usize], y: &Bitset, y_count: usize) {
        if chosen.is_empty() || y_count == 0 {
            return;
        }
        let score = self.objective.score(chosen.len(), y_count);
        let better = score > self.best_score
            || (self.canonical && score == self.best_score && chosen < self.best_x.as_slice());
        if better || self.best_y.is_none() {
            self.best_score = score;
            self.best_x = chosen.to_vec();
            self.best_y = Some(y.clone());
        }
    }
}

fn run_search(
    k: u32,
    left: &[u64],
    rows: &[Bitset],
    right: &[u64],
    objective: Objective,
    opts: SearchOptions,
) -> Result<SearchResult> {
    if left.is_empty() || right.is_empty() {
        return Err(domain("search needs both sides non-empty"));
    }
    let mut search = Search {
        rows,
        objective,
        canonical: opts.canonical,
        deadline: opts.time_limit.map(|d| Instant::now() + d),
        timed_out: false,
        nodes: 0,
        best_score: (0, 0),
        best_x: Vec::new(),
        best_y: None,
    };
    let mut chosen = Vec::with_capacity(left.len());
    search.run(0, &mut chosen, &Bitset::full(right.len()));
    let y = search
        .best_y
        .ok_or_else(|| domain("no non-trivial independent set found before the time limit"))?;
    let mut x_set: Vec<BitWord> =
        search.best_x.iter().map(|&i| BitWord::truncating(left[i], k)).collect();
    let mut y_set: Vec<BitWord> = y.iter().map(|j| BitWord::truncating(right[j], k)).collect();
    x_set.sort_unstable();
    y_set.sort_unstable();
    Ok(SearchResult { k, x_set, y_set, optimal: !search.timed_out })
}

/// A matching inside `X_0 × Y_1` of size `2^(k-1) - 1`, together with the
/// independent set `{0^k} ∪ Y_1` of size `2^(k-1) + 1` that shows the
/// resulting cardinality bound is attained.
#[derive(Clone, Debug)]
pub struct MatchingCertificate {
    pub k: u32,
    /// `(p, s)` pairs, each an edge `x_p ~ y_s`.
    pub matching: Vec<(BitWord, BitWord)>,
    pub extremal: SearchResult,
}

/// Largest `k` accepted by [`mis_matching_certificate`].
pub const CERTIFICATE_MAX_K: u32 = 16;

pub fn mis_matching_certificate(k: u32) -> Result<MatchingCertificate> {
    if !(2..=CERTIFICATE_MAX_K).contains(&k) {
        return Err(domain(format!("certificate needs 2 <= k <= {CERTIFICATE_MAX_K}, got {k}")));
    }
    let top = 1u64 << (k - 1);
    let mut matching = Vec::with_capacity(top as usize - 1);
    for p in 0..top {
        if p & 1 == 1 {
            // starts with 0, ends with 1: match to itself
            matching.push((p, p));
        } else if p != 0 {
            // p = u 1 0^r with u starting with 0  ->  s = 1^r u 1, sharing u 1
            let r = p.trailing_zeros();
            let u = p >> (r + 1);
            let s = (((1u64 << r) - 1) << (k - r)) | (u << 1) | 1;
            matching.push((p, s));
        }
    }
    let matching = matching
        .into_iter()
        .map(|(p, s)| (BitWord::truncating(p, k), BitWord::truncating(s, k)))
        .collect();
    let extremal = SearchResult {
        k,
        x_set: vec![BitWord::truncating(0, k)],
        y_set: (0..top).map(|i| BitWord::truncating((i << 1) | 1, k)).collect(),
        optimal: true,
    };
    Ok(MatchingCertificate { k, matching, extremal })
}

impl MatchingCertificate {
    /// Checks every claim by the definitional predicate. Returns a description
    /// of the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let k = self.k;
        let expected = (1usize << (k - 1)) - 1;
        if self.matching.len() != expected {
            return Err(format!("matching has {} pairs, expected {expected}", self.matching.len()));
        }
        let mut ps: Vec<u64> = Vec::with_capacity(expected);
        let mut ss: Vec<u64> = Vec::with_capacity(expected);
        for &(p, s) in &self.matching {
            let (pv, sv) = (p.value(), s.value());
            if p.len() != k || s.len() != k {
                return Err(format!("pair ({p}, {s}) has the wrong length"));
            }
            if pv >> (k - 1) != 0 || sv & 1 != 1 {
                return Err(format!("pair ({p}, {s}) leaves X_0 × Y_1"));
            }
            if !adjacent(pv, sv, k) {
                return Err(format!("pair ({p}, {s}) is not an edge"));
            }
            ps.push(pv);
            ss.push(sv);
        }
        for (name, v) in [("prefix", &mut ps), ("suffix", &mut ss)] {
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("a {name} vertex is matched twice"));
            }
        }
        if self.extremal.cardinality() != (1usize << (k - 1)) + 1 {
            return Err("extremal set has the wrong size".into());
        }
        if !self.extremal.is_independent() {
            return Err("extremal set is not independent".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn g2_neighbourhoods() {
        let g = OverlapGraph::build(2).unwrap();
        let n00: Vec<String> = g.neighbours(0).map(|b| b.to_string()).collect();
        assert_eq!(n00, ["00", "10"]);
        assert!(!g.is_edge(0b00, 0b11));
        for p in 0..4 {
            assert!(g.is_edge(p, p));
        }
        assert!(g.is_independent(&[0b00, 0b01], &[0b11]));
    }

    #[test]
    fn build_range() {
        assert!(OverlapGraph::build(0).is_err());
        assert!(OverlapGraph::build(17).is_err());
    }

    #[test]
    fn small_products() {
        for (k, product) in [(1, 1), (2, 2), (3, 6), (4, 20)] {
            let g = OverlapGraph::build(k).unwrap();
            let r = max_product_search(&g, SearchOptions::default()).unwrap();
            assert_eq!(r.product(), product, "k={k}");
            assert!(r.is_independent());
            assert!(r.optimal);
        }
    }

    #[test]
    fn k2_canonical_matches_example() {
        let g = OverlapGraph::build(2).unwrap();
        let r = max_product_search(&g, SearchOptions { canonical: true, ..Default::default() })
            .unwrap();
        // both {00} x {01, 11} and {00, 01} x {11} have product 2; {00} sorts first
        assert_eq!(r.x_set, vec![w("00")]);
        assert_eq!(r.y_set, vec![w("01"), w("11")]);
    }

    #[test]
    fn cardinality_reaches_half_plus_one() {
        for k in 1..=5 {
            let g = OverlapGraph::build(k).unwrap();
            let r = max_cardinality_search(&g, SearchOptions::default()).unwrap();
            assert_eq!(r.cardinality(), (1 << (k - 1)) + 1, "k={k}");
        }
    }

    #[test]
    fn certificate_small() {
        let c = mis_matching_certificate(2).unwrap();
        assert_eq!(c.matching, vec![(w("01"), w("01"))]);
        c.verify().unwrap();
        let c = mis_matching_certificate(4).unwrap();
        assert_eq!(c.matching.len(), 7);
        assert!(c.matching.contains(&(w("0010"), w("1001"))));
        assert!(c.matching.contains(&(w("0100"), w("1101"))));
        assert!(c.matching.contains(&(w("0110"), w("1011"))));
        c.verify().unwrap();
        assert!(mis_matching_certificate(1).is_err());
        assert!(mis_matching_certificate(17).is_err());
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = mis_matching_certificate(4).unwrap();
        c.matching[0].1 = w("1111");
        assert!(c.verify().is_err());
    }

    #[test]
    fn time_limit_flags_result() {
        let g = OverlapGraph::build(7).unwrap();
        let r = max_product_search(
            &g,
            SearchOptions { canonical: false, time_limit: Some(Duration::from_millis(1)) },
        );
        if let Ok(r) = r {
            assert!(r.is_independent());
        }
    }
}
