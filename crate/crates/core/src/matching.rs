//! Perfect matchings of Q_n and FQ_n: validation, exhaustive enumeration,
//! exact counting, uniform sampling and classification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::topology::{
    complementary_class, dimension_class, edge_class, Edge, EdgeClass, Graph, VertexLabel,
};

/// A set of pairwise nonadjacent edges over n-bit labels, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    n: usize,
    edges: Vec<Edge>,
}

impl Matching {
    /// Rejects edges of the wrong dimension and any shared endpoint.
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.dimension() != n) {
            return Err(Error::DimensionMismatch { left: n, right: e.dimension() });
        }
        edges.sort();
        let mut endpoints: Vec<VertexLabel> = edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        endpoints.sort();
        if let Some(w) = endpoints.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::SharedEndpoint(w[0].to_string()));
        }
        Ok(Matching { n, edges })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        Matching { n, edges }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Size equals 2^(n-1), i.e. every vertex of Q_n/FQ_n is saturated.
    pub fn is_perfect(&self) -> bool {
        self.n >= 1 && self.edges.len() == 1 << (self.n - 1)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Partner of each vertex, `u32::MAX` where unsaturated.
    pub fn mates(&self) -> Vec<u32> {
        let mut mate = vec![u32::MAX; 1 << self.n];
        for e in &self.edges {
            mate[e.u().bits() as usize] = e.v().bits();
            mate[e.v().bits() as usize] = e.u().bits();
        }
        mate
    }

    /// Number of complementary edges (all n positions differ).
    pub fn complementary_count(&self) -> usize {
        let full = crate::topology::full_mask(self.n);
        self.edges.iter().filter(|e| self.n >= 2 && e.u().bits() ^ e.v().bits() == full).count()
    }

    /// One canonical edge per line, LF-terminated.
    pub fn to_file_string(&self) -> String {
        self.edges.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Why an edge set fails to be a perfect matching of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingDefect {
    NotAnEdge(Edge),
    SharedEndpoint(VertexLabel),
    WrongSize { expected: usize, found: usize },
}

impl fmt::Display for MatchingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingDefect::NotAnEdge(e) => write!(f, "{e} is not an edge of the graph"),
            MatchingDefect::SharedEndpoint(v) => write!(f, "vertex {v} is covered twice"),
            MatchingDefect::WrongSize { expected, found } => {
                write!(f, "expected {expected} edges, found {found}")
            }
        }
    }
}

/// Diagnostic form of [`is_perfect_matching`].
pub fn check_perfect_matching(g: &Graph, edges: &[Edge]) -> std::result::Result<(), MatchingDefect> {
    let mut covered = vec![false; g.vertex_count()];
    for e in edges {
        if !g.contains_edge(e) {
            return Err(MatchingDefect::NotAnEdge(*e));
        }
        for x in [e.u(), e.v()] {
            if std::mem::replace(&mut covered[x.bits() as usize], true) {
                return Err(MatchingDefect::SharedEndpoint(x));
            }
        }
    }
    let expected = g.vertex_count() / 2;
    if edges.len() != expected {
        return Err(MatchingDefect::WrongSize { expected, found: edges.len() });
    }
    Ok(())
}

pub fn is_perfect_matching(g: &Graph, edges: &[Edge]) -> bool {
    check_perfect_matching(g, edges).is_ok()
}

fn vertex_mask_guard(g: &Graph, limit: usize, what: &'static str) -> Result<u64> {
    let vertices = g.vertex_count();
    if vertices > limit.min(64) {
        return Err(Error::ExhaustionLimitExceeded { what, vertices, limit: limit.min(64) });
    }
    Ok(if vertices == 64 { u64::MAX } else { (1u64 << vertices) - 1 })
}

#[inline]
fn lowest_unmatched(mask: u64) -> u32 {
    (!mask).trailing_zeros()
}

/// Every perfect matching of `g`, each exactly once, in canonical order:
/// branch on the lowest unsaturated vertex and try its neighbors ascending.
pub fn enumerate_perfect_matchings(g: &Graph) -> Result<PerfectMatchings<'_>> {
    enumerate_perfect_matchings_with(g, &Limits::default())
}

pub fn enumerate_perfect_matchings_with<'g>(g: &'g Graph, limits: &Limits) -> Result<PerfectMatchings<'g>> {
    let full = vertex_mask_guard(g, limits.max_enumeration_vertices, "perfect-matching enumeration")?;
    Ok(PerfectMatchings { g, full, mask: 0, stack: Vec::new(), started: false })
}

struct Frame {
    vertex: u32,
    next: usize,
    chosen: Option<u32>,
}

/// Streaming depth-first enumerator returned by [`enumerate_perfect_matchings`].
pub struct PerfectMatchings<'g> {
    g: &'g Graph,
    full: u64,
    mask: u64,
    stack: Vec<Frame>,
    started: bool,
}

impl PerfectMatchings<'_> {
    fn current(&self) -> Matching {
        let n = self.g.dimension();
        let edges = self
            .stack
            .iter()
            .map(|f| Edge::from_bits(f.vertex, f.chosen.expect("complete frame"), n))
            .collect();
        Matching::from_sorted_unchecked(n, edges)
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if !self.started {
            self.started = true;
            if self.full == 0 {
                return None;
            }
            self.stack.push(Frame { vertex: 0, next: 0, chosen: None });
        }
        loop {
            let top = self.stack.last_mut()?;
            if let Some(w) = top.chosen.take() {
                self.mask &= !((1 << top.vertex) | (1 << w));
            }
            let row = self.g.neighbors(top.vertex);
            let candidate = row[top.next..].iter().position(|&w| self.mask & (1 << w) == 0);
            let Some(offset) = candidate else {
                self.stack.pop();
                continue;
            };
            let w = row[top.next + offset];
            top.next += offset + 1;
            top.chosen = Some(w);
            self.mask |= (1 << top.vertex) | (1 << w);
            if self.mask == self.full {
                return Some(self.current());
            }
            let vertex = lowest_unmatched(self.mask);
            self.stack.push(Frame { vertex, next: 0, chosen: None });
        }
    }
}

/// Memoized subset DP: the number of perfect matchings of the subgraph left
/// after removing a set of already-matched vertices.
///
/// A state is the bitmask of matched vertices. The lowest unmatched vertex is
/// always matched next, so each matching is counted exactly once.
pub struct MatchingCounter<'g> {
    g: &'g Graph,
    full: u64,
    memo: HashMap<u64, u128>,
}

impl<'g> MatchingCounter<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        Self::with_limits(g, &Limits::default())
    }

    pub fn with_limits(g: &'g Graph, limits: &Limits) -> Result<Self> {
        let full = vertex_mask_guard(g, limits.max_count_vertices, "perfect-matching count")?;
        Ok(MatchingCounter { g, full, memo: HashMap::new() })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    /// Completions of the partial matching that saturates exactly `matched`.
    pub fn completions(&mut self, matched: u64) -> u128 {
        if matched == self.full {
            return 1;
        }
        if let Some(&c) = self.memo.get(&matched) {
            return c;
        }
        let v = lowest_unmatched(matched);
        let g = self.g;
        let mut total = 0u128;
        for &w in g.neighbors(v) {
            if matched & (1 << w) == 0 {
                // at most 63!! < 2^128, so the sum cannot overflow
                total += self.completions(matched | (1 << v) | (1 << w));
            }
        }
        self.memo.insert(matched, total);
        total
    }

    pub fn total(&mut self) -> u128 {
        self.completions(0)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Exact number of perfect matchings of `g`.
pub fn count_perfect_matchings(g: &Graph) -> Result<BigUint> {
    count_perfect_matchings_with(g, &Limits::default())
}

pub fn count_perfect_matchings_with(g: &Graph, limits: &Limits) -> Result<BigUint> {
    Ok(BigUint::from(MatchingCounter::with_limits(g, limits)?.total()))
}

/// Uniform sampler over the perfect matchings of a graph. The DP memo is
/// shared across draws.
pub struct PerfectMatchingSampler<'g> {
    counter: MatchingCounter<'g>,
}

impl<'g> PerfectMatchingSampler<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        Self::with_limits(g, &Limits::default())
    }

    pub fn with_limits(g: &'g Graph, limits: &Limits) -> Result<Self> {
        let mut counter = MatchingCounter::with_limits(g, limits)?;
        if counter.total() == 0 {
            return Err(Error::NoPerfectMatching);
        }
        Ok(PerfectMatchingSampler { counter })
    }

    pub fn total(&mut self) -> u128 {
        self.counter.total()
    }

    /// Walks the branch tree choosing each partner with probability
    /// proportional to its number of completions.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Matching {
        let g = self.counter.graph();
        let mut matched = 0u64;
        let mut edges = Vec::with_capacity(g.vertex_count() / 2);
        let mut options: Vec<(u32, u128)> = Vec::new();
        while matched != self.counter.full {
            let v = lowest_unmatched(matched);
            options.clear();
            for &w in g.neighbors(v) {
                if matched & (1 << w) == 0 {
                    let c = self.counter.completions(matched | (1 << v) | (1 << w));
                    if c > 0 {
                        options.push((w, c));
                    }
                }
            }
            let total: u128 = options.iter().map(|&(_, c)| c).sum();
            let mut r = rng.gen_range(0..total);
            let &(w, _) = options
                .iter()
                .find(|&&(_, c)| {
                    if r < c {
                        true
                    } else {
                        r -= c;
                        false
                    }
                })
                .expect("r < total");
            edges.push(Edge::from_bits(v, w, g.dimension()));
            matched |= (1 << v) | (1 << w);
        }
        Matching::from_sorted_unchecked(g.dimension(), edges)
    }
}

/// One uniformly random perfect matching of `g`, determined by `seed`.
pub fn sample_perfect_matching(g: &Graph, seed: u64) -> Result<Matching> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(PerfectMatchingSampler::new(g)?.sample(&mut rng))
}

/// Random walk on the perfect matchings of a regular graph by 4-cycle
/// switches: pick a vertex u with partner v and a neighbor x of u with
/// partner y; if v and y are adjacent, replace uv, xy by ux, vy.
///
/// Proposals are symmetric, so the walk is uniform in the limit over the
/// matchings reachable from the start. It needs no counting and so has no
/// vertex guard; prefer [`PerfectMatchingSampler`] where that fits.
pub struct SwitchChain<'g> {
    g: &'g Graph,
    mate: Vec<u32>,
    steps_per_sample: usize,
}

impl<'g> SwitchChain<'g> {
    /// Starts from `start`, running `4 |V|` switch attempts between samples.
    pub fn new(g: &'g Graph, start: &Matching) -> Result<Self> {
        if let Err(defect) = check_perfect_matching(g, start.edges()) {
            return Err(Error::NotAPerfectMatching(defect.to_string()));
        }
        let mut mate = vec![u32::MAX; g.vertex_count()];
        for e in start.edges() {
            mate[e.u().bits() as usize] = e.v().bits();
            mate[e.v().bits() as usize] = e.u().bits();
        }
        Ok(SwitchChain { g, mate, steps_per_sample: 4 * g.vertex_count() })
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let u = rng.gen_range(0..self.mate.len() as u32);
        let row = self.g.neighbors(u);
        let x = row[rng.gen_range(0..row.len())];
        let v = self.mate[u as usize];
        if x == v {
            return;
        }
        let y = self.mate[x as usize];
        if self.g.has_edge(v, y) {
            self.mate[u as usize] = x;
            self.mate[x as usize] = u;
            self.mate[v as usize] = y;
            self.mate[y as usize] = v;
        }
    }

    pub fn current(&self) -> Matching {
        let n = self.g.dimension();
        let edges = (0..self.mate.len() as u32)
            .filter(|&u| u < self.mate[u as usize])
            .map(|u| Edge::from_bits(u, self.mate[u as usize], n))
            .collect();
        Matching::from_sorted_unchecked(n, edges)
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Matching {
        for _ in 0..self.steps_per_sample {
            self.step(rng);
        }
        self.current()
    }
}

/// Where a perfect matching of FQ_n sits relative to the classes E^i and E_c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingClass {
    AllComplementary,
    SingleDimension(usize),
    Mixed { complementary_count: usize, dimension_histogram: BTreeMap<usize, usize> },
}

impl MatchingClass {
    pub fn is_mixed(&self) -> bool {
        matches!(self, MatchingClass::Mixed { .. })
    }
}

impl fmt::Display for MatchingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingClass::AllComplementary => write!(f, "E_c"),
            MatchingClass::SingleDimension(i) => write!(f, "E^{i}"),
            MatchingClass::Mixed { complementary_count, dimension_histogram } => {
                write!(f, "mixed(c={complementary_count}")?;
                for (i, k) in dimension_histogram {
                    write!(f, ",{i}:{k}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Classifies a perfect matching of FQ_n.
pub fn classify_matching(n: usize, m: &Matching) -> Result<MatchingClass> {
    if m.dimension() != n {
        return Err(Error::DimensionMismatch { left: n, right: m.dimension() });
    }
    if n < 2 {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: crate::limits::DEFAULT_MAX_DIMENSION });
    }
    if !m.is_perfect() {
        return Err(Error::NotAPerfectMatching(
            MatchingDefect::WrongSize { expected: 1 << (n - 1), found: m.len() }.to_string(),
        ));
    }
    let mut complementary_count = 0;
    let mut dimension_histogram = BTreeMap::new();
    for e in m.edges() {
        match edge_class(n, e).map_err(|err| Error::NotAPerfectMatching(err.to_string()))? {
            EdgeClass::Complementary => complementary_count += 1,
            EdgeClass::Dimensional(i) => *dimension_histogram.entry(i).or_insert(0) += 1,
        }
    }
    Ok(if complementary_count == m.len() {
        MatchingClass::AllComplementary
    } else if complementary_count == 0 && dimension_histogram.len() == 1 {
        MatchingClass::SingleDimension(*dimension_histogram.keys().next().expect("one class"))
    } else {
        MatchingClass::Mixed { complementary_count, dimension_histogram }
    })
}

/// E^i as a [`Matching`].
pub fn dimension_matching(n: usize, i: usize) -> Result<Matching> {
    Ok(Matching::from_sorted_unchecked(n, dimension_class(n, i)?))
}

/// E_c as a [`Matching`].
pub fn complementary_matching(n: usize) -> Result<Matching> {
    Ok(Matching::from_sorted_unchecked(n, complementary_class(n)?))
}

/// Parses the matching file format: one `<u> <v>` edge per line. Lines may
/// come in any order; a vertex covered twice is reported with its line.
pub fn parse_matching(text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    let mut owner: HashMap<VertexLabel, usize> = HashMap::new();
    let mut n = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let e = Edge::parse(line).map_err(|err| Error::Parse {
            line: line_no,
            message: match err {
                Error::Parse { message, .. } => message,
                other => other.to_string(),
            },
        })?;
        match n {
            None => n = Some(e.dimension()),
            Some(d) if d != e.dimension() => {
                return Err(Error::Parse { line: line_no, message: format!("labels must have {d} bits") })
            }
            _ => {}
        }
        for x in [e.u(), e.v()] {
            if let Some(first) = owner.insert(x, line_no) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex {x} already covered on line {first}"),
                });
            }
        }
        edges.push(e);
    }
    let n = n.ok_or(Error::Parse { line: 1, message: "no edges".into() })?;
    Matching::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_folded_hypercube, build_hypercube};

    fn e(a: &str, b: &str) -> Edge {
        Edge::parse(&format!("{a} {b}")).unwrap()
    }

    #[test]
    fn perfect_matching_predicate() {
        let fq3 = build_folded_hypercube(3).unwrap();
        assert!(is_perfect_matching(&fq3, complementary_class(3).unwrap().as_slice()));
        let fq4 = build_folded_hypercube(4).unwrap();
        assert!(is_perfect_matching(&fq4, dimension_class(4, 2).unwrap().as_slice()));
        let bad = [e("000", "001"), e("001", "011"), e("100", "110"), e("101", "111")];
        assert!(!is_perfect_matching(&fq3, &bad));
        assert_eq!(
            check_perfect_matching(&fq3, &bad),
            Err(MatchingDefect::SharedEndpoint(VertexLabel::parse("001").unwrap()))
        );
        assert!(matches!(
            check_perfect_matching(&fq3, &[e("000", "011")]),
            Err(MatchingDefect::NotAnEdge(_))
        ));
        assert!(matches!(
            check_perfect_matching(&fq3, &[e("000", "111")]),
            Err(MatchingDefect::WrongSize { expected: 4, found: 1 })
        ));
    }

    #[test]
    fn matching_rejects_shared_endpoint() {
        assert!(matches!(
            Matching::new(3, vec![e("000", "001"), e("001", "011")]),
            Err(Error::SharedEndpoint(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let counts = |g: &Graph| enumerate_perfect_matchings(g).unwrap().count();
        assert_eq!(counts(&build_folded_hypercube(2).unwrap()), 3);
        assert_eq!(counts(&build_hypercube(3).unwrap()), 9);
        assert_eq!(counts(&build_folded_hypercube(3).unwrap()), 24);
        assert_eq!(counts(&build_hypercube(1).unwrap()), 1);
    }

    #[test]
    fn enumeration_order_is_canonical() {
        let fq2 = build_folded_hypercube(2).unwrap();
        let all: Vec<String> =
            enumerate_perfect_matchings(&fq2).unwrap().map(|m| m.to_file_string()).collect();
        assert_eq!(all, ["00 01\n10 11\n", "00 10\n01 11\n", "00 11\n01 10\n"]);
    }

    #[test]
    fn enumeration_guard() {
        let q6 = build_hypercube(6).unwrap();
        assert!(matches!(
            enumerate_perfect_matchings(&q6),
            Err(Error::ExhaustionLimitExceeded { vertices: 64, limit: 32, .. })
        ));
        assert!(count_perfect_matchings(&q6).unwrap_err().is_resource_guard());
    }

    #[test]
    fn counts() {
        let count = |g: Graph| count_perfect_matchings(&g).unwrap();
        assert_eq!(count(build_hypercube(2).unwrap()), BigUint::from(2u32));
        assert_eq!(count(build_hypercube(3).unwrap()), BigUint::from(9u32));
        let q4 = count(build_hypercube(4).unwrap());
        assert_eq!(q4, BigUint::from(272u32));
        assert!(count(build_folded_hypercube(4).unwrap()) > q4);
    }

    #[test]
    fn census_for_fq3() {
        let fq3 = build_folded_hypercube(3).unwrap();
        let mut census = BTreeMap::new();
        for m in enumerate_perfect_matchings(&fq3).unwrap() {
            *census.entry(m.complementary_count()).or_insert(0) += 1;
        }
        assert_eq!(census, BTreeMap::from([(0, 9), (1, 8), (2, 6), (4, 1)]));
    }

    #[test]
    fn sampler_basics() {
        let q1 = build_hypercube(1).unwrap();
        assert_eq!(sample_perfect_matching(&q1, 7).unwrap().to_file_string(), "0 1\n");
        let fq4 = build_folded_hypercube(4).unwrap();
        for seed in [0, 1, 99, u64::MAX] {
            assert_eq!(
                sample_perfect_matching(&fq4, seed).unwrap(),
                sample_perfect_matching(&fq4, seed).unwrap()
            );
            assert!(is_perfect_matching(&fq4, sample_perfect_matching(&fq4, seed).unwrap().edges()));
        }
        let empty = Graph::from_edges(2, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(sample_perfect_matching(&empty, 1), Err(Error::NoPerfectMatching)));
    }

    #[test]
    fn sampler_is_uniform_on_k4() {
        let fq2 = build_folded_hypercube(2).unwrap();
        let mut tally: BTreeMap<String, usize> = BTreeMap::new();
        for seed in 0..3000 {
            *tally.entry(sample_perfect_matching(&fq2, seed).unwrap().to_file_string()).or_default() += 1;
        }
        assert_eq!(tally.len(), 3);
        for (m, k) in &tally {
            assert!((900..=1100).contains(k), "{m:?} drawn {k} times");
        }
        let chi2: f64 = tally.values().map(|&k| (k as f64 - 1000.0).powi(2) / 1000.0).sum();
        // 2 degrees of freedom, p = 0.001
        assert!(chi2 < 13.82, "chi-square {chi2}");
    }

    #[test]
    fn switch_chain_stays_perfect_and_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=8 {
            let fq = build_folded_hypercube(n).unwrap();
            let start = dimension_matching(n, 1).unwrap();
            let mut chain = SwitchChain::new(&fq, &start).unwrap();
            let m = chain.sample(&mut rng);
            assert!(is_perfect_matching(&fq, m.edges()), "n={n}");
            if n >= 4 {
                assert_ne!(m, start, "n={n}");
            }
        }
        let fq = build_folded_hypercube(3).unwrap();
        let half = Matching::new(3, vec![Edge::parse("000 001").unwrap()]).unwrap();
        assert!(matches!(SwitchChain::new(&fq, &half), Err(Error::NotAPerfectMatching(_))));
    }

    #[test]
    fn switch_chain_is_uniform_on_fq3() {
        // all 24 perfect matchings of FQ_3 are switch-connected
        let fq = build_folded_hypercube(3).unwrap();
        let mut chain = SwitchChain::new(&fq, &dimension_matching(3, 1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut tally: BTreeMap<Matching, usize> = BTreeMap::new();
        let draws = 12_000;
        for _ in 0..draws {
            *tally.entry(chain.sample(&mut rng)).or_insert(0) += 1;
        }
        assert_eq!(tally.len(), 24);
        let expected = draws as f64 / 24.0;
        let chi2: f64 = tally.values().map(|&k| (k as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 49.73, "chi-square {chi2}");
    }

    #[test]
    fn classification() {
        let ec = complementary_matching(4).unwrap();
        assert_eq!(classify_matching(4, &ec).unwrap(), MatchingClass::AllComplementary);
        let e3 = dimension_matching(4, 3).unwrap();
        assert_eq!(classify_matching(4, &e3).unwrap(), MatchingClass::SingleDimension(3));
        let mixed = Matching::new(
            3,
            vec![e("000", "111"), e("001", "011"), e("010", "110"), e("100", "101")],
        )
        .unwrap();
        assert_eq!(
            classify_matching(3, &mixed).unwrap(),
            MatchingClass::Mixed {
                complementary_count: 1,
                dimension_histogram: BTreeMap::from([(1, 1), (2, 1), (3, 1)])
            }
        );
        let partial = Matching::new(3, vec![e("000", "111")]).unwrap();
        assert!(matches!(classify_matching(3, &partial), Err(Error::NotAPerfectMatching(_))));
        let not_fq = Matching::new(3, vec![e("000", "011"), e("001", "010"), e("100", "111"), e("101", "110")])
            .unwrap();
        assert!(matches!(classify_matching(3, &not_fq), Err(Error::NotAPerfectMatching(_))));
    }

    #[test]
    fn special_classes_classify_for_all_small_n() {
        for n in 2..=8 {
            assert_eq!(
                classify_matching(n, &complementary_matching(n).unwrap()).unwrap(),
                MatchingClass::AllComplementary
            );
            for i in 1..=n {
                assert_eq!(
                    classify_matching(n, &dimension_matching(n, i).unwrap()).unwrap(),
                    MatchingClass::SingleDimension(i)
                );
            }
        }
    }

    #[test]
    fn matching_file_format() {
        let text = "000 111\n001 011\n010 110\n100 101\n";
        let m = parse_matching(text).unwrap();
        assert_eq!(m.to_file_string(), text);
        let shuffled = parse_matching("100 101\n011 001\n000 111\n010 110\n").unwrap();
        assert_eq!(shuffled, m);
        let err = parse_matching("000 111\n001 011\n011 010\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "vertex 011 already covered on line 2".into() });
        assert!(matches!(parse_matching("000 111\n0011 0010\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matching(""), Err(Error::Parse { .. })));
    }
}
