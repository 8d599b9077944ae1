//! Deciding whether a graph is Q_n, with checkable certificates either way.
//!
//! A positive answer is a [`Labeling`] that maps every edge to a pair of labels
//! at Hamming distance 1; a negative answer is a [`Witness`], usually a vertex
//! pair whose number of common neighbors is neither 0 nor 2.

use std::collections::VecDeque;
use std::fmt;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matching::{classify_matching, Matching};
use crate::topology::{
    build_folded_hypercube_with, common_neighbor_ids, full_mask, position_mask, Edge, Graph, VertexLabel,
};

/// A bijection from the vertices of a graph onto the labels of Q_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    n: usize,
    map: Vec<u32>,
}

impl Labeling {
    pub fn identity(n: usize) -> Self {
        Labeling { n, map: (0..1u32 << n).collect() }
    }

    /// Rejects maps that are not permutations of `0..2^n`.
    pub fn from_map(n: usize, map: Vec<u32>) -> Result<Self> {
        let count = 1usize << n;
        if map.len() != count {
            return Err(Error::Usage(format!("labeling has {} entries, expected {count}", map.len())));
        }
        let mut seen = vec![false; count];
        for (v, &image) in map.iter().enumerate() {
            if image as usize >= count || std::mem::replace(&mut seen[image as usize], true) {
                return Err(Error::Usage(format!(
                    "labeling is not a bijection at {}",
                    VertexLabel::new_unchecked(v as u32, n)
                )));
            }
        }
        Ok(Labeling { n, map })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.map[v as usize]
    }

    pub fn image(&self, v: VertexLabel) -> VertexLabel {
        VertexLabel::new_unchecked(self.apply(v.bits()), self.n)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    /// `<source> <image>` per vertex, sorted by source.
    pub fn to_certificate_string(&self) -> String {
        let mut out = String::with_capacity(self.map.len() * (2 * self.n + 2));
        for (v, &image) in self.map.iter().enumerate() {
            out.push_str(&format!(
                "{} {}\n",
                VertexLabel::new_unchecked(v as u32, self.n),
                VertexLabel::new_unchecked(image, self.n)
            ));
        }
        out
    }

    /// SHA-256 of the certificate text, hex encoded.
    pub fn digest(&self) -> String {
        Sha256::digest(self.to_certificate_string().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn parse_certificate(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let bad = |message: String| Error::Parse { line: idx + 1, message };
            let (a, b) = line.split_once(' ').ok_or_else(|| bad(format!("expected two labels in {line:?}")))?;
            let a = VertexLabel::parse(a).map_err(|e| bad(e.to_string()))?;
            let b = VertexLabel::parse(b).map_err(|e| bad(e.to_string()))?;
            if a.dimension() != b.dimension() {
                return Err(bad("label lengths differ".into()));
            }
            pairs.push((a, b));
        }
        let n = pairs.first().map(|p| p.0.dimension()).ok_or(Error::Parse { line: 1, message: "empty".into() })?;
        let mut map = vec![u32::MAX; 1 << n];
        for (idx, (a, b)) in pairs.iter().enumerate() {
            if a.dimension() != n {
                return Err(Error::Parse { line: idx + 1, message: format!("labels must have {n} bits") });
            }
            map[a.bits() as usize] = b.bits();
        }
        if map.contains(&u32::MAX) {
            return Err(Error::Parse { line: pairs.len(), message: "not every vertex is mapped".into() });
        }
        Labeling::from_map(n, map)
    }
}

/// The bijection that certifies FQ_n - E^i ≅ Q_n: fixes labels whose position
/// `i` is 0 and complements every other position of the rest.
pub fn phi_map(n: usize, i: usize) -> Result<Labeling> {
    if !(2..=30).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: 30 });
    }
    if i == 0 || i > n {
        return Err(Error::PositionOutOfRange { i, n });
    }
    let pos = position_mask(n, i);
    let flip = full_mask(n) ^ pos;
    let map = (0..1u32 << n).map(|u| if u & pos == 0 { u } else { u ^ flip }).collect();
    Ok(Labeling { n, map })
}

/// Why a labeling fails to certify `g ≅ Q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoDefect {
    VertexCount { expected: usize, found: usize },
    EdgeCount { expected: usize, found: usize },
    NotBijective,
    EdgeNotPreserved { edge: Edge, image: (VertexLabel, VertexLabel) },
}

impl fmt::Display for IsoDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoDefect::VertexCount { expected, found } => write!(f, "expected {expected} vertices, found {found}"),
            IsoDefect::EdgeCount { expected, found } => write!(f, "expected {expected} edges, found {found}"),
            IsoDefect::NotBijective => write!(f, "labeling is not a bijection"),
            IsoDefect::EdgeNotPreserved { edge, image } => {
                write!(f, "edge {edge} maps to non-adjacent pair {} {}", image.0, image.1)
            }
        }
    }
}

/// Diagnostic form of [`verify_isomorphism`]; reports the first violation.
pub fn check_isomorphism(g: &Graph, target_n: usize, lab: &Labeling) -> std::result::Result<(), IsoDefect> {
    let expected = 1usize << target_n;
    if g.vertex_count() != expected || lab.map.len() != expected {
        return Err(IsoDefect::VertexCount { expected, found: g.vertex_count() });
    }
    let mut seen = vec![false; expected];
    for &image in &lab.map {
        if image as usize >= expected || std::mem::replace(&mut seen[image as usize], true) {
            return Err(IsoDefect::NotBijective);
        }
    }
    let edges = target_n << target_n.saturating_sub(1);
    if g.edge_count() != edges {
        return Err(IsoDefect::EdgeCount { expected: edges, found: g.edge_count() });
    }
    for (a, b) in g.edge_pairs() {
        let (x, y) = (lab.apply(a), lab.apply(b));
        if (x ^ y).count_ones() != 1 {
            return Err(IsoDefect::EdgeNotPreserved {
                edge: Edge::from_bits(a, b, g.dimension()),
                image: (VertexLabel::new_unchecked(x, target_n), VertexLabel::new_unchecked(y, target_n)),
            });
        }
    }
    Ok(())
}

/// True iff `lab` is a bijection onto Q_{target_n} that preserves every edge
/// of `g`, and `g` has exactly as many edges as Q_{target_n}.
pub fn verify_isomorphism(g: &Graph, target_n: usize, lab: &Labeling) -> bool {
    check_isomorphism(g, target_n, lab).is_ok()
}

/// `g` with the edges of `m` deleted.
pub fn remove_matching(g: &Graph, m: &Matching) -> Result<Graph> {
    if m.dimension() != g.dimension() {
        return Err(Error::DimensionMismatch { left: g.dimension(), right: m.dimension() });
    }
    if let Some(e) = m.edges().iter().find(|e| !g.contains_edge(e)) {
        return Err(Error::EdgeNotPresent(e.to_string()));
    }
    let mate = m.mates();
    Graph::from_edges(g.dimension(), g.edge_pairs().filter(|&(a, b)| mate[a as usize] != b).collect::<Vec<_>>())
}

/// Structural reason a graph cannot be Q_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Degree { vertex: VertexLabel, degree: usize, expected: usize },
    EdgeCount { expected: usize, found: usize },
    Disconnected { components: usize },
    OddCycle { edge: Edge },
    /// Label propagation could not extend to this vertex.
    LabelingFailed { vertex: VertexLabel },
    /// The completed labeling did not verify.
    CertificateRejected { defect: String },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Degree { vertex, degree, expected } => {
                write!(f, "vertex {vertex} has degree {degree}, expected {expected}")
            }
            Mismatch::EdgeCount { expected, found } => write!(f, "expected {expected} edges, found {found}"),
            Mismatch::Disconnected { components } => write!(f, "graph has {components} components"),
            Mismatch::OddCycle { edge } => write!(f, "edge {edge} closes an odd cycle"),
            Mismatch::LabelingFailed { vertex } => write!(f, "no consistent label for {vertex}"),
            Mismatch::CertificateRejected { defect } => write!(f, "labeling rejected: {defect}"),
        }
    }
}

impl Mismatch {
    fn tag(&self) -> &'static str {
        match self {
            Mismatch::Degree { .. } => "degree",
            Mismatch::EdgeCount { .. } => "edge_count",
            Mismatch::Disconnected { .. } => "disconnected",
            Mismatch::OddCycle { .. } => "not_bipartite",
            Mismatch::LabelingFailed { .. } => "labeling_failed",
            Mismatch::CertificateRejected { .. } => "certificate_rejected",
        }
    }
}

/// Evidence that a graph is not isomorphic to Q_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `u` and `v` have a number of common neighbors other than 0 or 2.
    /// `matching_edge` is the deleted edge that broke a square, when known.
    CommonNeighborViolation {
        u: VertexLabel,
        v: VertexLabel,
        neighbors: Vec<VertexLabel>,
        matching_edge: Option<Edge>,
    },
    /// A 4-cycle of FQ_n meeting the deleted matching in exactly `m_edge`.
    FourCycle { cycle: [VertexLabel; 4], m_edge: Edge },
    StructuralMismatch(Mismatch),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::CommonNeighborViolation { .. } => "common_neighbor_violation",
            Witness::FourCycle { .. } => "four_cycle",
            Witness::StructuralMismatch(_) => "structural_mismatch",
        }
    }

    pub fn to_json(&self) -> Value {
        let edge = |e: &Edge| json!([e.u().to_string(), e.v().to_string()]);
        match self {
            Witness::CommonNeighborViolation { u, v, neighbors, matching_edge } => json!({
                "kind": self.kind(),
                "vertices": [u.to_string(), v.to_string()],
                "common_neighbors": neighbors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "matching_edge": matching_edge.as_ref().map(edge),
            }),
            Witness::FourCycle { cycle, m_edge } => json!({
                "kind": self.kind(),
                "vertices": cycle.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "matching_edge": edge(m_edge),
            }),
            Witness::StructuralMismatch(reason) => json!({
                "kind": self.kind(),
                "vertices": [],
                "matching_edge": null,
                "reason": reason.tag(),
                "detail": reason.to_string(),
            }),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::CommonNeighborViolation { u, v, neighbors, .. } => {
                write!(f, "{u} and {v} have {} common neighbor(s) {:?}", neighbors.len(), neighbors)
            }
            Witness::FourCycle { cycle, m_edge } => write!(
                f,
                "4-cycle {} {} {} {} contains only matching edge {m_edge}",
                cycle[0], cycle[1], cycle[2], cycle[3]
            ),
            Witness::StructuralMismatch(reason) => write!(f, "{reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoResult {
    Isomorphic(Labeling),
    NotIsomorphic(Witness),
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

/// Lexicographically smallest pair with a common-neighbor count outside
/// {0, 2}.
pub fn find_common_neighbor_violation(g: &Graph) -> Option<Witness> {
    let count = g.vertex_count();
    let mut hits = vec![0u32; count];
    let mut touched = Vec::new();
    for u in 0..count as u32 {
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x) {
                if w > u {
                    if hits[w as usize] == 0 {
                        touched.push(w);
                    }
                    hits[w as usize] += 1;
                }
            }
        }
        let worst = touched.iter().copied().filter(|&w| hits[w as usize] != 2).min();
        for &w in &touched {
            hits[w as usize] = 0;
        }
        touched.clear();
        if let Some(w) = worst {
            return Some(Witness::CommonNeighborViolation {
                u: g.label(u),
                v: g.label(w),
                neighbors: common_neighbor_ids(g, u, w).map(|x| g.label(x)).collect(),
                matching_edge: None,
            });
        }
    }
    None
}

fn structural_mismatch(g: &Graph, n: usize) -> Option<Mismatch> {
    if let Some(v) = (0..g.vertex_count() as u32).find(|&v| g.degree(v) != n) {
        return Some(Mismatch::Degree { vertex: g.label(v), degree: g.degree(v), expected: n });
    }
    let expected = n << n.saturating_sub(1);
    if g.edge_count() != expected {
        return Some(Mismatch::EdgeCount { expected, found: g.edge_count() });
    }
    let (components, _) = g.components();
    if components != 1 {
        return Some(Mismatch::Disconnected { components });
    }
    let dist = g.bfs_distances(0);
    g.edge_pairs()
        .find(|&(a, b)| dist[a as usize] % 2 == dist[b as usize] % 2)
        .map(|(a, b)| Mismatch::OddCycle { edge: Edge::from_bits(a, b, g.dimension()) })
}

/// Decides whether `g` is isomorphic to Q_n.
///
/// Cheap invariants are checked first. Then labels are propagated level by
/// level from vertex 0 and the resulting map is verified edge by edge; only
/// a verified map yields `Isomorphic`. Every negative answer carries a
/// common-neighbor violation when the graph has one.
pub fn recognize_hypercube(g: &Graph, n: usize) -> Result<IsoResult> {
    if n == 0 || n > 30 || g.vertex_count() != 1 << n {
        return Err(Error::DimensionMismatch { left: n, right: g.vertex_count().trailing_zeros() as usize });
    }
    let reject = |mismatch: Mismatch| {
        let witness = find_common_neighbor_violation(g).unwrap_or(Witness::StructuralMismatch(mismatch));
        Ok(IsoResult::NotIsomorphic(witness))
    };
    if let Some(mismatch) = structural_mismatch(g, n) {
        return reject(mismatch);
    }
    let labels = match label_by_levels(g, n) {
        Ok(labels) => labels,
        Err(v) => return reject(Mismatch::LabelingFailed { vertex: g.label(v) }),
    };
    let lab = Labeling { n, map: labels };
    match check_isomorphism(g, n, &lab) {
        Ok(()) => Ok(IsoResult::Isomorphic(lab)),
        Err(defect) => reject(Mismatch::CertificateRejected { defect: defect.to_string() }),
    }
}

/// Level-synchronous label propagation: the root is 0, its neighbors get unit
/// masks in discovery order, and each vertex at distance `d >= 2` gets the
/// union of its two lowest back-neighbor labels, provided that has weight `d`,
/// is unused, and is at Hamming distance 1 from every labeled back-neighbor.
fn label_by_levels(g: &Graph, n: usize) -> std::result::Result<Vec<u32>, u32> {
    let count = g.vertex_count();
    let dist = g.bfs_distances(0);
    let mut levels: Vec<Vec<u32>> = Vec::new();
    // BFS discovery order within each level
    let mut seen = vec![false; count];
    let mut queue = VecDeque::from([0u32]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize] as usize;
        if levels.len() <= d {
            levels.push(Vec::new());
        }
        levels[d].push(x);
        for &y in g.neighbors(x) {
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    let mut label = vec![u32::MAX; count];
    let mut used = vec![false; count];
    label[0] = 0;
    used[0] = true;
    let mut back = Vec::with_capacity(n);
    for (d, level) in levels.iter().enumerate().skip(1) {
        for (k, &v) in level.iter().enumerate() {
            let candidate = if d == 1 {
                if k >= n {
                    return Err(v);
                }
                1u32 << k
            } else {
                back.clear();
                back.extend(
                    g.neighbors(v).iter().filter(|&&z| dist[z as usize] as usize == d - 1).map(|&z| label[z as usize]),
                );
                if back.len() < 2 {
                    return Err(v);
                }
                back.sort_unstable();
                let candidate = back[0] | back[1];
                if back.iter().any(|&l| (l ^ candidate).count_ones() != 1) {
                    return Err(v);
                }
                candidate
            };
            if candidate.count_ones() as usize != d || used[candidate as usize] {
                return Err(v);
            }
            label[v as usize] = candidate;
            used[candidate as usize] = true;
        }
    }
    Ok(label)
}

/// Exact isomorphism test by backtracking, for desk-scale graphs.
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    brute_force_isomorphic_with(g, h, &Limits::default())
}

pub fn brute_force_isomorphic_with(g: &Graph, h: &Graph, limits: &Limits) -> Result<bool> {
    let limit = limits.max_brute_force_vertices.min(64);
    for x in [g, h] {
        if x.vertex_count() > limit {
            return Err(Error::ExhaustionLimitExceeded {
                what: "brute-force isomorphism",
                vertices: x.vertex_count(),
                limit,
            });
        }
    }
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let count = g.vertex_count();
    let degrees = |x: &Graph| {
        let mut d: Vec<usize> = (0..count as u32).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(g) != degrees(h) {
        return Ok(false);
    }
    let rows = |x: &Graph| -> Vec<u64> {
        (0..count as u32).map(|v| x.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w)).collect()
    };
    let (gr, hr) = (rows(g), rows(h));

    // Map vertices with the most already-placed neighbors first.
    let mut order = Vec::with_capacity(count);
    let mut placed = 0u64;
    while order.len() < count {
        let v = (0..count)
            .filter(|&v| placed & (1 << v) == 0)
            .max_by_key(|&v| ((gr[v] & placed).count_ones(), gr[v].count_ones(), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        order.push(v);
        placed |= 1 << v;
    }
    let mut image = vec![usize::MAX; count];
    let mut used = 0u64;
    Ok(extend_map(0, &order, &gr, &hr, &mut image, &mut used))
}

fn extend_map(depth: usize, order: &[usize], gr: &[u64], hr: &[u64], image: &mut [usize], used: &mut u64) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'candidates: for t in 0..gr.len() {
        if *used & (1 << t) != 0 || gr[v].count_ones() != hr[t].count_ones() {
            continue;
        }
        for &p in &order[..depth] {
            let g_adj = gr[v] & (1 << p) != 0;
            let h_adj = hr[t] & (1 << image[p]) != 0;
            if g_adj != h_adj {
                continue 'candidates;
            }
        }
        image[v] = t;
        *used |= 1 << t;
        if extend_map(depth + 1, order, gr, hr, image, used) {
            return true;
        }
        *used &= !(1 << t);
        image[v] = usize::MAX;
    }
    false
}

/// Which part of the search produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessRoute {
    /// A complementary matching edge next to a hypercube matching edge.
    ComplementaryNeighbor,
    /// The square through the first matching edge along the connecting edge.
    SquareThroughFirstEdge,
    /// The square through the second matching edge along the connecting edge.
    SquareThroughSecondEdge,
    /// Exhaustive scan of all 4-cycles; reaching it indicates a gap in the
    /// structured search.
    FallbackScan,
}

/// A witness that FQ_n - m is not Q_n, for a perfect matching `m` of FQ_n
/// other than E_c and E^1..E^n (n >= 4).
pub fn find_noniso_witness(n: usize, m: &Matching) -> Result<Witness> {
    find_noniso_witness_traced(n, m, &Limits::default()).map(|(w, _)| w)
}

pub fn find_noniso_witness_traced(n: usize, m: &Matching, limits: &Limits) -> Result<(Witness, WitnessRoute)> {
    if n < 4 {
        return Err(Error::DimensionOutOfRange { n, min: 4, max: limits.max_dimension });
    }
    let class = classify_matching(n, m)?;
    if !class.is_mixed() {
        return Err(Error::NotMixed(class.to_string()));
    }
    let fq = build_folded_hypercube_with(n, limits)?;
    let mate = m.mates();
    let full = full_mask(n);
    let in_m = |a: u32, b: u32| mate[a as usize] == b;
    let hypercube_edge = |a: u32, b: u32| (a ^ b).count_ones() == 1;
    let count = fq.vertex_count() as u32;

    if m.complementary_count() > 0 {
        let reduced = remove_matching(&fq, m)?;
        for u in (0..count).filter(|&u| in_m(u, u ^ full)) {
            for k in 0..n {
                let v1 = u ^ (1 << k);
                let u1 = mate[v1 as usize];
                if !hypercube_edge(v1, u1) {
                    continue;
                }
                let neighbors: Vec<u32> = common_neighbor_ids(&reduced, u, u1).collect();
                if neighbors.len() == 1 {
                    return Ok((
                        Witness::CommonNeighborViolation {
                            u: fq.label(u),
                            v: fq.label(u1),
                            neighbors: neighbors.into_iter().map(|x| fq.label(x)).collect(),
                            matching_edge: Some(Edge::from_bits(v1, u1, n)),
                        },
                        WitnessRoute::ComplementaryNeighbor,
                    ));
                }
            }
        }
    } else {
        // Two matching edges of different dimensions joined by a hypercube
        // edge x-w: e = {u, x}, f = {w, a}.
        let four_cycle = |c: [u32; 4]| -> Option<Witness> {
            let sides = [(c[0], c[1]), (c[1], c[2]), (c[2], c[3]), (c[3], c[0])];
            if !sides.iter().all(|&(p, q)| fq.has_edge(p, q)) {
                return None;
            }
            let mut hit = sides.iter().filter(|&&(p, q)| in_m(p, q));
            let &(p, q) = hit.next()?;
            if hit.next().is_some() {
                return None;
            }
            Some(Witness::FourCycle { cycle: c.map(|x| fq.label(x)), m_edge: Edge::from_bits(p, q, n) })
        };
        for x in 0..count {
            let u = mate[x as usize];
            for k in 0..n {
                let w = x ^ (1 << k);
                let a = mate[w as usize];
                if (u ^ x) == (a ^ w) || in_m(x, w) {
                    continue;
                }
                if let Some(found) = four_cycle([u, x, w, u ^ (1 << k)]) {
                    return Ok((found, WitnessRoute::SquareThroughFirstEdge));
                }
                if let Some(found) = four_cycle([x, w, a, x ^ (a ^ w)]) {
                    return Ok((found, WitnessRoute::SquareThroughSecondEdge));
                }
            }
        }
    }

    let witness = scan_four_cycles(&fq, &mate).ok_or_else(|| Error::VerificationFailed {
        subject: m.to_file_string().trim_end().replace('\n', ";"),
        detail: "no 4-cycle of FQ_n meets the matching in exactly one edge".into(),
    })?;
    log::warn!("witness for FQ_{n} - M found only by the fallback 4-cycle scan: {witness}");
    Ok((witness, WitnessRoute::FallbackScan))
}

/// First 4-cycle `a b c d` (in lexicographic order) containing exactly one
/// matched edge.
fn scan_four_cycles(fq: &Graph, mate: &[u32]) -> Option<Witness> {
    let n = fq.dimension();
    for a in 0..fq.vertex_count() as u32 {
        let row = fq.neighbors(a);
        for (idx, &b) in row.iter().enumerate() {
            for &d in &row[idx + 1..] {
                for c in common_neighbor_ids(fq, b, d).filter(|&c| c != a) {
                    let cycle = [a, b, c, d];
                    let matched: Vec<(u32, u32)> = (0..4)
                        .map(|j| (cycle[j], cycle[(j + 1) % 4]))
                        .filter(|&(p, q)| mate[p as usize] == q)
                        .collect();
                    if let [(p, q)] = matched[..] {
                        return Some(Witness::FourCycle {
                            cycle: cycle.map(|x| fq.label(x)),
                            m_edge: Edge::from_bits(p, q, n),
                        });
                    }
                }
            }
        }
    }
    None
}
