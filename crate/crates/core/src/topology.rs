//! Hypercube and folded hypercube construction, edge classes, distances and
//! neighborhood queries.
//!
//! Vertices are n-bit integers. Position `i` (1-based, as in `x_1 x_2 ... x_n`)
//! is bit `n - i`, so `x_1` is the most significant bit and the rendered
//! binary string reads left to right in position order.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Hard ceiling imposed by the `u32` vertex encoding.
const ENCODING_MAX_DIMENSION: usize = 30;

/// Bit mask of position `i` (1-based) in an `n`-bit label.
#[inline]
pub fn position_mask(n: usize, i: usize) -> u32 {
    debug_assert!(1 <= i && i <= n);
    1 << (n - i)
}

/// Mask with all `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

fn check_position(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::PositionOutOfRange { i, n });
    }
    Ok(())
}

/// An n-bit binary string naming a vertex of Q_n or FQ_n.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    bits: u32,
    n: u8,
}

impl VertexLabel {
    pub fn new(bits: u32, n: usize) -> Result<Self> {
        if n > ENCODING_MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange { n, min: 0, max: ENCODING_MAX_DIMENSION });
        }
        if u64::from(bits) >= 1u64 << n {
            return Err(Error::VertexOutOfRange { vertex: bits.into(), n });
        }
        Ok(VertexLabel { bits, n: n as u8 })
    }

    pub(crate) fn new_unchecked(bits: u32, n: usize) -> Self {
        debug_assert!(u64::from(bits) < 1u64 << n);
        VertexLabel { bits, n: n as u8 }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn dimension(self) -> usize {
        self.n as usize
    }

    /// Value of position `i` (1-based, leftmost is 1).
    pub fn bit(self, i: usize) -> Result<bool> {
        check_position(self.dimension(), i)?;
        Ok(self.bits & position_mask(self.dimension(), i) != 0)
    }

    /// The bitwise complement, i.e. the other end of this vertex's
    /// complementary edge.
    pub fn complement(self) -> Self {
        VertexLabel { bits: self.bits ^ full_mask(self.dimension()), n: self.n }
    }

    /// Parses an n-character string of `0`/`1`; n is the string length.
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > ENCODING_MAX_DIMENSION {
            return Err(Error::Parse { line: 0, message: format!("bad vertex label {s:?}") });
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(Error::Parse {
                            line: 0,
                            message: format!("bad vertex label {s:?}"),
                        })
                    }
                };
        }
        Ok(VertexLabel { bits, n: s.len() as u8 })
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return Ok(());
        }
        write!(f, "{:0width$b}", self.bits, width = self.n as usize)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexLabel::parse(s)
    }
}

/// Unordered vertex pair, stored with the smaller label first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: VertexLabel,
    v: VertexLabel,
}

impl Edge {
    pub fn new(a: VertexLabel, b: VertexLabel) -> Result<Self> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch { left: a.dimension(), right: b.dimension() });
        }
        if a == b {
            return Err(Error::InvalidEdge {
                u: a.to_string(),
                v: b.to_string(),
                reason: "endpoints coincide",
            });
        }
        Ok(Edge::from_ordered(a, b))
    }

    /// Builds an edge from raw vertex ids; the caller guarantees `a != b`.
    pub(crate) fn from_bits(a: u32, b: u32, n: usize) -> Self {
        debug_assert_ne!(a, b);
        Edge::from_ordered(VertexLabel::new_unchecked(a, n), VertexLabel::new_unchecked(b, n))
    }

    fn from_ordered(a: VertexLabel, b: VertexLabel) -> Self {
        if a.bits <= b.bits {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> VertexLabel {
        self.u
    }

    pub fn v(&self) -> VertexLabel {
        self.v
    }

    pub fn dimension(&self) -> usize {
        self.u.dimension()
    }

    pub fn contains(&self, x: VertexLabel) -> bool {
        self.u == x || self.v == x
    }

    /// Parses `"<u> <v>"` as two binary strings.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split(' ');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse { line: 0, message: format!("expected two labels in {s:?}") });
        };
        Edge::new(VertexLabel::parse(a)?, VertexLabel::parse(b)?)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Which class of FQ_n an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    /// Endpoints differ only at this position (1-based).
    Dimensional(usize),
    /// Endpoints differ at every position.
    Complementary,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeClass::Dimensional(i) => write!(f, "E^{i}"),
            EdgeClass::Complementary => write!(f, "E_c"),
        }
    }
}

/// Classifies `e` as an i-dimensional or complementary edge of FQ_n.
///
/// For n = 1 the two notions coincide and the edge is reported as
/// `Dimensional(1)`.
pub fn edge_class(n: usize, e: &Edge) -> Result<EdgeClass> {
    if e.dimension() != n {
        return Err(Error::DimensionMismatch { left: n, right: e.dimension() });
    }
    let diff = e.u.bits ^ e.v.bits;
    if diff.count_ones() == 1 {
        let i = n - diff.trailing_zeros() as usize;
        Ok(EdgeClass::Dimensional(i))
    } else if diff == full_mask(n) {
        Ok(EdgeClass::Complementary)
    } else {
        Err(Error::NotAnFqEdge { u: e.u.to_string(), v: e.v.to_string(), n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Hypercube,
    FoldedHypercube,
    Derived,
}

/// Immutable simple undirected graph on the 2^n vertices `0..2^n`.
///
/// Adjacency is stored in compressed rows with each row sorted ascending.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    kind: GraphKind,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("kind", &self.kind)
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// Structural equality: same dimension and same edge set. The kind tag is
/// provenance only and does not take part.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Eq for Graph {}

fn check_dimension(n: usize, min: usize, limits: &Limits) -> Result<()> {
    let max = limits.max_dimension.min(ENCODING_MAX_DIMENSION);
    if n < min || n > max {
        return Err(Error::DimensionOutOfRange { n, min, max });
    }
    Ok(())
}

/// Q_n with the default dimension guard.
pub fn build_hypercube(n: usize) -> Result<Graph> {
    build_hypercube_with(n, &Limits::default())
}

pub fn build_hypercube_with(n: usize, limits: &Limits) -> Result<Graph> {
    check_dimension(n, 1, limits)?;
    Ok(Graph::cube(n, false))
}

/// FQ_n with the default dimension guard.
pub fn build_folded_hypercube(n: usize) -> Result<Graph> {
    build_folded_hypercube_with(n, &Limits::default())
}

pub fn build_folded_hypercube_with(n: usize, limits: &Limits) -> Result<Graph> {
    check_dimension(n, 2, limits)?;
    Ok(Graph::cube(n, true))
}

impl Graph {
    fn cube(n: usize, folded: bool) -> Graph {
        let count = 1usize << n;
        let degree = n + usize::from(folded);
        let full = full_mask(n);
        let mut offsets = Vec::with_capacity(count + 1);
        let mut targets = Vec::with_capacity(count * degree);
        offsets.push(0);
        for u in 0..count as u32 {
            let start = targets.len();
            targets.extend((0..n).map(|k| u ^ (1 << k)));
            if folded {
                targets.push(u ^ full);
            }
            targets[start..].sort_unstable();
            offsets.push(targets.len());
        }
        let kind = if folded { GraphKind::FoldedHypercube } else { GraphKind::Hypercube };
        Graph { n, kind, offsets, targets }
    }

    /// Builds a derived graph on `0..2^n` from an edge list. Loops, repeated
    /// edges and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n > ENCODING_MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange { n, min: 0, max: ENCODING_MAX_DIMENSION });
        }
        let count = 1usize << n;
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); count];
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= count {
                    return Err(Error::VertexOutOfRange { vertex: x.into(), n });
                }
            }
            if a == b {
                let l = VertexLabel::new_unchecked(a, n).to_string();
                return Err(Error::InvalidEdge { u: l.clone(), v: l, reason: "self-loop" });
            }
            rows[a as usize].push(b);
            rows[b as usize].push(a);
        }
        let mut offsets = Vec::with_capacity(count + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for (a, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    u: VertexLabel::new_unchecked(a as u32, n).to_string(),
                    v: VertexLabel::new_unchecked(w[0], n).to_string(),
                    reason: "repeated edge",
                });
            }
            targets.extend(row);
            offsets.push(targets.len());
        }
        Ok(Graph { n, kind: GraphKind::Derived, offsets, targets })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbor row of `v`.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        (a as usize) < self.vertex_count() && self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        e.dimension() == self.n && self.has_edge(e.u.bits, e.v.bits)
    }

    pub fn label(&self, v: u32) -> VertexLabel {
        VertexLabel::new_unchecked(v, self.n)
    }

    /// The edge `{a, b}` if it exists in this graph.
    pub fn edge(&self, a: VertexLabel, b: VertexLabel) -> Result<Edge> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let e = Edge::new(a, b)?;
        if !self.has_edge(a.bits, b.bits) {
            return Err(Error::EdgeNotPresent(e.to_string()));
        }
        Ok(e)
    }

    /// Edges as `(low, high)` vertex pairs in canonical sorted order.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32)
            .flat_map(move |a| self.neighbors(a).iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_pairs().map(move |(a, b)| Edge::from_bits(a, b, self.n))
    }

    pub(crate) fn check_vertex(&self, v: VertexLabel) -> Result<()> {
        if v.dimension() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: v.dimension() });
        }
        if v.bits as usize >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v.bits.into(), n: self.n });
        }
        Ok(())
    }

    /// BFS distances from `source`; `u32::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize] + 1;
            for &y in self.neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = d;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Component index per vertex, numbered in order of lowest member.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.vertex_count() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s as u32);
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    if comp[y as usize] == usize::MAX {
                        comp[y as usize] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Subgraph induced by `vertices`, relabeled `0..len` in the given order.
    /// `len` must be a power of two.
    pub fn induced(&self, vertices: &[u32]) -> Result<Graph> {
        let len = vertices.len();
        if !len.is_power_of_two() {
            return Err(Error::Usage(format!("induced subgraph on {len} vertices is not 2^k")));
        }
        let mut index = vec![u32::MAX; self.vertex_count()];
        for (k, &v) in vertices.iter().enumerate() {
            index[v as usize] = k as u32;
        }
        let pairs = vertices.iter().flat_map(|&a| {
            let index = &index;
            self.neighbors(a)
                .iter()
                .filter(move |&&b| b > a && index[b as usize] != u32::MAX)
                .map(move |&b| (index[a as usize], index[b as usize]))
        });
        Graph::from_edges(len.trailing_zeros() as usize, pairs.collect::<Vec<_>>())
    }
}

/// E^i: all edges joining `u` and `u` with position `i` flipped.
pub fn dimension_class(n: usize, i: usize) -> Result<Vec<Edge>> {
    check_position(n, i)?;
    let mask = position_mask(n, i);
    Ok((0..1u32 << n).filter(|u| u & mask == 0).map(|u| Edge::from_bits(u, u | mask, n)).collect())
}

/// E_c: all edges joining a label to its complement.
pub fn complementary_class(n: usize) -> Result<Vec<Edge>> {
    if !(2..=ENCODING_MAX_DIMENSION).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: ENCODING_MAX_DIMENSION });
    }
    let full = full_mask(n);
    let top = position_mask(n, 1);
    Ok((0..1u32 << n).filter(|u| u & top == 0).map(|u| Edge::from_bits(u, u ^ full, n)).collect())
}

/// Shortest-path length between `u` and `v`.
pub fn distance(g: &Graph, u: VertexLabel, v: VertexLabel) -> Result<usize> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    match g.bfs_distances(u.bits)[v.bits as usize] {
        u32::MAX => Err(Error::VerificationFailed {
            subject: format!("distance({u}, {v})"),
            detail: "vertices lie in different components".into(),
        }),
        d => Ok(d as usize),
    }
}

/// `min{d(u,x), d(u,y), d(v,x), d(v,y)}` for edges `uv` and `xy` of `g`.
pub fn edge_distance(g: &Graph, e: &Edge, f: &Edge) -> Result<usize> {
    for edge in [e, f] {
        if !g.contains_edge(edge) {
            return Err(Error::EdgeNotPresent(edge.to_string()));
        }
    }
    let from_u = g.bfs_distances(e.u.bits);
    let from_v = g.bfs_distances(e.v.bits);
    let best = [&from_u, &from_v]
        .iter()
        .flat_map(|d| [d[f.u.bits as usize], d[f.v.bits as usize]])
        .min()
        .unwrap_or(u32::MAX);
    if best == u32::MAX {
        return Err(Error::VerificationFailed {
            subject: format!("edge_distance({e:?}, {f:?})"),
            detail: "edges lie in different components".into(),
        });
    }
    Ok(best as usize)
}

/// Sorted intersection of the neighborhoods of `u` and `v`.
pub fn common_neighbors(g: &Graph, u: VertexLabel, v: VertexLabel) -> Result<Vec<VertexLabel>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidEdge {
            u: u.to_string(),
            v: v.to_string(),
            reason: "common neighbors need two distinct vertices",
        });
    }
    Ok(common_neighbor_ids(g, u.bits, v.bits).map(|x| g.label(x)).collect())
}

/// Merge of two sorted neighbor rows.
pub(crate) fn common_neighbor_ids(g: &Graph, a: u32, b: u32) -> impl Iterator<Item = u32> + '_ {
    let rb = g.neighbors(b);
    g.neighbors(a).iter().copied().filter(move |x| rb.binary_search(x).is_ok())
}

/// Renders `g` in the edge-list text format: a `<vertices> <edges>` header,
/// then one canonical edge per line in sorted order, LF-terminated.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

/// Parses the edge-list text format back into a graph.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let nums: Vec<usize> = header
        .split(' ')
        .map(|t| t.parse().map_err(|_| Error::Parse { line: 1, message: format!("bad header {header:?}") }))
        .collect::<Result<_>>()?;
    let [vertex_count, edge_count] = nums[..] else {
        return Err(Error::Parse { line: 1, message: format!("bad header {header:?}") });
    };
    if !vertex_count.is_power_of_two() || vertex_count < 2 {
        return Err(Error::Parse { line: 1, message: format!("vertex count {vertex_count} is not 2^n") });
    }
    let n = vertex_count.trailing_zeros() as usize;
    let mut pairs = Vec::with_capacity(edge_count);
    for (idx, line) in lines {
        let at = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse { line: idx + 1, message },
            other => Error::Parse { line: idx + 1, message: other.to_string() },
        };
        let e = Edge::parse(line).map_err(at)?;
        if e.dimension() != n {
            return Err(Error::Parse { line: idx + 1, message: format!("labels must have {n} bits") });
        }
        pairs.push((e.u.bits, e.v.bits));
    }
    if pairs.len() != edge_count {
        return Err(Error::Parse {
            line: 1,
            message: format!("header declares {edge_count} edges, found {}", pairs.len()),
        });
    }
    Graph::from_edges(n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> VertexLabel {
        VertexLabel::parse(s).unwrap()
    }

    fn e(a: &str, b: &str) -> Edge {
        Edge::new(l(a), l(b)).unwrap()
    }

    /// Girth by BFS from every vertex.
    fn girth(g: &Graph) -> usize {
        let mut best = usize::MAX;
        for s in 0..g.vertex_count() as u32 {
            let mut dist = vec![u32::MAX; g.vertex_count()];
            let mut parent = vec![u32::MAX; g.vertex_count()];
            let mut q = VecDeque::from([s]);
            dist[s as usize] = 0;
            while let Some(x) = q.pop_front() {
                for &y in g.neighbors(x) {
                    if dist[y as usize] == u32::MAX {
                        dist[y as usize] = dist[x as usize] + 1;
                        parent[y as usize] = x;
                        q.push_back(y);
                    } else if parent[x as usize] != y {
                        best = best.min((dist[x as usize] + dist[y as usize] + 1) as usize);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn hypercube_sizes() {
        let q1 = build_hypercube(1).unwrap();
        assert_eq!((q1.vertex_count(), q1.edge_count()), (2, 1));
        let q3 = build_hypercube(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert!((0..8).all(|v| q3.degree(v) == 3));
        // bipartite by popcount parity
        assert!(q3.edge_pairs().all(|(a, b)| a.count_ones() % 2 != b.count_ones() % 2));
        let q4 = build_hypercube(4).unwrap();
        assert_eq!((q4.vertex_count(), q4.edge_count()), (16, 32));
        assert_eq!(girth(&q4), 4);
    }

    #[test]
    fn folded_sizes() {
        let fq2 = build_folded_hypercube(2).unwrap();
        assert_eq!(fq2.edge_count(), 6);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(fq2.has_edge(a, b), a != b);
            }
        }
        let fq3 = build_folded_hypercube(3).unwrap();
        assert_eq!((fq3.vertex_count(), fq3.edge_count()), (8, 16));
        assert!((0..8).all(|v| fq3.degree(v) == 4));
        let fq4 = build_folded_hypercube(4).unwrap();
        assert_eq!((fq4.vertex_count(), fq4.edge_count()), (16, 40));
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(build_hypercube(0), Err(Error::DimensionOutOfRange { .. })));
        assert!(matches!(build_folded_hypercube(1), Err(Error::DimensionOutOfRange { .. })));
        let err = build_hypercube(21).unwrap_err();
        assert!(err.is_resource_guard());
        let tight = Limits { max_dimension: 5, ..Limits::default() };
        assert!(build_folded_hypercube_with(6, &tight).is_err());
        assert!(build_folded_hypercube_with(5, &tight).is_ok());
    }

    #[test]
    fn labels_render_msb_first() {
        let v = VertexLabel::new(0b0100, 4).unwrap();
        assert_eq!(v.to_string(), "0100");
        assert!(v.bit(2).unwrap());
        assert!(!v.bit(1).unwrap());
        assert_eq!(v.complement().to_string(), "1011");
        assert!(VertexLabel::new(16, 4).is_err());
        assert!(VertexLabel::parse("01x").is_err());
        assert_eq!(e("0100", "0000").u(), l("0000"));
    }

    #[test]
    fn edge_classes() {
        assert_eq!(edge_class(4, &e("0000", "0100")).unwrap(), EdgeClass::Dimensional(2));
        assert_eq!(edge_class(4, &e("0100", "1011")).unwrap(), EdgeClass::Complementary);
        assert!(matches!(edge_class(4, &e("0000", "0011")), Err(Error::NotAnFqEdge { .. })));
        assert_eq!(edge_class(1, &e("0", "1")).unwrap(), EdgeClass::Dimensional(1));
    }

    #[test]
    fn classes_as_edge_lists() {
        assert_eq!(dimension_class(2, 1).unwrap(), vec![e("00", "10"), e("01", "11")]);
        let e3 = dimension_class(3, 3).unwrap();
        assert_eq!(e3.len(), 4);
        assert!(e3.iter().all(|x| x.u().bits() & 1 == 0 && x.v().bits() == x.u().bits() | 1));
        for i in 1..=4 {
            let ei = dimension_class(4, i).unwrap();
            assert_eq!(ei.len(), 8);
            let mut seen: Vec<u32> = ei.iter().flat_map(|x| [x.u().bits(), x.v().bits()]).collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..16).collect::<Vec<_>>());
        }
        assert!(dimension_class(4, 5).is_err());
        assert!(dimension_class(4, 0).is_err());

        assert_eq!(complementary_class(2).unwrap(), vec![e("00", "11"), e("01", "10")]);
        assert_eq!(
            complementary_class(3).unwrap(),
            vec![e("000", "111"), e("001", "110"), e("010", "101"), e("011", "100")]
        );
        assert!(complementary_class(1).is_err());
    }

    #[test]
    fn classes_partition_folded_edges() {
        for n in 2..=8 {
            let fq = build_folded_hypercube(n).unwrap();
            let mut all: Vec<Edge> = complementary_class(n).unwrap();
            for i in 1..=n {
                all.extend(dimension_class(n, i).unwrap());
            }
            all.sort();
            let before = all.len();
            all.dedup();
            assert_eq!(before, all.len(), "classes overlap for n={n}");
            assert_eq!(all, fq.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn distances() {
        let q3 = build_hypercube(3).unwrap();
        let fq3 = build_folded_hypercube(3).unwrap();
        let fq4 = build_folded_hypercube(4).unwrap();
        assert_eq!(distance(&q3, l("000"), l("111")).unwrap(), 3);
        assert_eq!(distance(&q3, l("010"), l("010")).unwrap(), 0);
        assert_eq!(distance(&fq3, l("000"), l("111")).unwrap(), 1);
        assert_eq!(distance(&fq4, l("0000"), l("0111")).unwrap(), 2);
        assert!(distance(&q3, l("000"), l("0000")).is_err());
    }

    #[test]
    fn edge_distances() {
        let q3 = build_hypercube(3).unwrap();
        let a = e("000", "001");
        assert_eq!(edge_distance(&q3, &a, &a).unwrap(), 0);
        assert_eq!(edge_distance(&q3, &a, &e("110", "111")).unwrap(), 2);
        // d(001, 011) = 1, so the minimum over the four endpoint pairs is 1
        assert_eq!(edge_distance(&q3, &a, &e("011", "111")).unwrap(), 1);
        // Hamming distance is the closed form on Q_n
        let hamming = |x: &Edge, y: &Edge| {
            [(x.u(), y.u()), (x.u(), y.v()), (x.v(), y.u()), (x.v(), y.v())]
                .iter()
                .map(|(p, q)| (p.bits() ^ q.bits()).count_ones() as usize)
                .min()
                .unwrap()
        };
        let edges: Vec<Edge> = q3.edges().collect();
        for x in &edges {
            for y in &edges {
                assert_eq!(edge_distance(&q3, x, y).unwrap(), hamming(x, y));
            }
        }
        assert!(matches!(
            edge_distance(&q3, &a, &e("000", "011")),
            Err(Error::EdgeNotPresent(_))
        ));
    }

    #[test]
    fn common_neighbor_examples() {
        let fq4 = build_folded_hypercube(4).unwrap();
        assert_eq!(common_neighbors(&fq4, l("0000"), l("0011")).unwrap(), vec![l("0001"), l("0010")]);
        let fq3 = build_folded_hypercube(3).unwrap();
        assert_eq!(common_neighbors(&fq3, l("000"), l("011")).unwrap().len(), 4);
        let q5 = build_hypercube(5).unwrap();
        for (a, b) in q5.edge_pairs() {
            assert!(common_neighbors(&q5, q5.label(a), q5.label(b)).unwrap().is_empty());
        }
        assert!(common_neighbors(&fq4, l("0000"), l("0000")).is_err());
    }

    #[test]
    fn removing_complementary_edges_gives_hypercube_edge_set() {
        for n in 2..=6 {
            let fq = build_folded_hypercube(n).unwrap();
            let ec = complementary_class(n).unwrap();
            let rest: Vec<Edge> = fq.edges().filter(|x| !ec.contains(x)).collect();
            assert_eq!(rest, build_hypercube(n).unwrap().edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let fq3 = build_folded_hypercube(3).unwrap();
        let text = write_edge_list(&fq3);
        assert!(text.starts_with("8 16\n000 001\n000 010\n000 100\n000 111\n"));
        assert!(!text.lines().any(|line| line.ends_with(' ')));
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, fq3);
        assert_eq!(write_edge_list(&back), text);
        assert!(matches!(parse_edge_list("8 2\n000 001\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("8 1\n000 0a1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 4)]).is_err());
    }
}
