//! Experiment drivers: exhaustive and sampled checks of which perfect
//! matchings M of FQ_n leave a graph isomorphic to Q_n, plus the supporting
//! common-neighbor and two-copies checks.
//!
//! Every positive verdict is backed by a re-verified labeling and every
//! negative verdict by a witness that is re-checked from the raw definitions
//! of FQ_n, independently of the [`Graph`] adjacency used to find it.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isomorphism::{
    find_noniso_witness_traced, recognize_hypercube, remove_matching, verify_isomorphism, IsoResult, Labeling,
    Witness, WitnessRoute,
};
use crate::limits::Limits;
use crate::matching::{
    classify_matching, complementary_matching, count_perfect_matchings_with, dimension_matching,
    enumerate_perfect_matchings_with, Matching, MatchingClass,
    PerfectMatchingSampler, SwitchChain,
};
use crate::topology::{build_folded_hypercube_with, full_mask, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sampled" => Ok(Mode::Sampled),
            other => Err(Error::Usage(format!("unknown mode {other:?}"))),
        }
    }
}

/// Knobs shared by the drivers.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PassRecord {
    pub class: String,
    pub certificate_digest: String,
    #[serde(skip)]
    pub matching: Matching,
    #[serde(skip)]
    pub certificate: Labeling,
}

#[derive(Debug, Clone)]
pub struct FailRecord {
    pub matching: Matching,
    pub class: MatchingClass,
    pub witness: Witness,
    pub route: WitnessRoute,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n: usize,
    pub mode: Mode,
    pub examined: u64,
    pub passes: Vec<PassRecord>,
    pub fail_count: u64,
    pub witness_kinds: BTreeMap<String, u64>,
    /// Matchings by number of complementary edges.
    pub census: BTreeMap<usize, u64>,
    pub seed: Option<u64>,
    /// "uniform" or "switch_chain" in sampled mode.
    pub sampler: Option<&'static str>,
    pub elapsed_ms: u64,
    /// At least one perfect matching was shown to leave a graph that is not Q_n.
    pub corollary_witnessed: bool,
    /// Witnesses that needed the exhaustive 4-cycle scan.
    pub fallback_witnesses: u64,
    #[serde(skip)]
    pub failures: Vec<FailRecord>,
}

impl VerificationReport {
    fn new(theorem: &str, n: usize, mode: Mode, seed: Option<u64>) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            n,
            mode,
            examined: 0,
            passes: Vec::new(),
            fail_count: 0,
            witness_kinds: BTreeMap::new(),
            census: (0..=1usize << (n - 1)).map(|k| (k, 0)).collect(),
            seed,
            sampler: None,
            elapsed_ms: 0,
            corollary_witnessed: false,
            fallback_witnesses: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, m: &Matching, outcome: Outcome) {
        self.examined += 1;
        *self.census.entry(m.complementary_count()).or_insert(0) += 1;
        match outcome {
            Outcome::Pass(record) => self.passes.push(*record),
            Outcome::Fail(record) => {
                self.fail_count += 1;
                *self.witness_kinds.entry(record.witness.kind().to_string()).or_insert(0) += 1;
                if record.route == WitnessRoute::FallbackScan {
                    self.fallback_witnesses += 1;
                }
                self.failures.push(*record);
            }
        }
    }

    fn finish(&mut self, started: Instant) {
        self.passes.sort_by(|a, b| a.matching.cmp(&b.matching));
        self.failures.sort_by(|a, b| a.matching.cmp(&b.matching));
        self.corollary_witnessed = self.fail_count > 0;
        self.elapsed_ms = started.elapsed().as_millis() as u64;
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

enum Outcome {
    Pass(Box<PassRecord>),
    Fail(Box<FailRecord>),
}

fn describe(m: &Matching) -> String {
    m.edges().iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

fn run_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::Usage(format!("cannot start {k} worker threads: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Checks that FQ_n - m is Q_n and returns the verified certificate.
fn expect_isomorphic(fq: &Graph, n: usize, m: &Matching, class: &MatchingClass) -> Result<Outcome> {
    let reduced = remove_matching(fq, m)?;
    match recognize_hypercube(&reduced, n)? {
        IsoResult::Isomorphic(lab) if verify_isomorphism(&reduced, n, &lab) => Ok(Outcome::Pass(Box::new(PassRecord {
            class: class.to_string(),
            certificate_digest: lab.digest(),
            matching: m.clone(),
            certificate: lab,
        }))),
        IsoResult::Isomorphic(_) => Err(Error::VerificationFailed {
            subject: describe(m),
            detail: "recognizer returned a certificate that does not verify".into(),
        }),
        IsoResult::NotIsomorphic(w) => Err(Error::VerificationFailed {
            subject: describe(m),
            detail: format!("FQ_{n} - M ({class}) is not recognized as Q_{n}: {w}"),
        }),
    }
}

/// Witness first, recognizer as confirmation; disagreement is an error.
fn expect_refuted(fq: &Graph, n: usize, m: &Matching, class: MatchingClass, limits: &Limits) -> Result<Outcome> {
    let (witness, route) = find_noniso_witness_traced(n, m, limits)?;
    if let Err(why) = revalidate_witness(n, m, &witness) {
        return Err(Error::VerificationFailed {
            subject: describe(m),
            detail: format!("witness {} failed re-validation: {why}", witness.to_json()),
        });
    }
    let reduced = remove_matching(fq, m)?;
    if let IsoResult::Isomorphic(lab) = recognize_hypercube(&reduced, n)? {
        return Err(Error::VerificationFailed {
            subject: describe(m),
            detail: format!(
                "witness {} contradicts recognizer certificate digest {}",
                witness.to_json(),
                lab.digest()
            ),
        });
    }
    Ok(Outcome::Fail(Box::new(FailRecord { matching: m.clone(), class, witness, route })))
}

/// FQ_n - M ≅ Q_n for every perfect matching M of FQ_2 and FQ_3.
pub fn verify_theorem1(n: usize) -> Result<VerificationReport> {
    verify_theorem1_with(n, &VerifyOptions::default())
}

pub fn verify_theorem1_with(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: 3 });
    }
    let started = Instant::now();
    let fq = build_folded_hypercube_with(n, &opts.limits)?;
    let matchings: Vec<Matching> = enumerate_perfect_matchings_with(&fq, &opts.limits)?.collect();
    let expected = count_perfect_matchings_with(&fq, &opts.limits)?;
    if expected != (matchings.len() as u64).into() {
        return Err(Error::VerificationFailed {
            subject: format!("FQ_{n}"),
            detail: format!("enumerated {} perfect matchings, counter says {expected}", matchings.len()),
        });
    }
    let outcomes = run_pool(opts.threads, || {
        matchings
            .par_iter()
            .map(|m| expect_isomorphic(&fq, n, m, &classify_matching(n, m)?))
            .collect::<Vec<_>>()
    })?;
    let mut report = VerificationReport::new("theorem1", n, Mode::Exhaustive, None);
    for (m, outcome) in matchings.iter().zip(outcomes) {
        report.record(m, outcome?);
    }
    if n == 3 && report.census.get(&3).copied().unwrap_or(0) != 0 {
        return Err(Error::VerificationFailed {
            subject: "FQ_3".into(),
            detail: "found perfect matchings with exactly three complementary edges".into(),
        });
    }
    report.finish(started);
    Ok(report)
}

/// FQ_n - M ≅ Q_n iff M is E_c or some E^i, for n >= 4.
///
/// Exhaustive mode enumerates every perfect matching (n = 4 by default).
/// Sampled mode checks E^1..E^n and E_c explicitly and then `samples`
/// random perfect matchings drawn from `seed`. These are exactly uniform
/// while FQ_n fits the counter's vertex guard and come from a 4-cycle
/// switch chain beyond it.
pub fn verify_theorem2(n: usize, mode: Mode, samples: usize, seed: u64) -> Result<VerificationReport> {
    verify_theorem2_with(n, mode, samples, seed, &VerifyOptions::default())
}

pub fn verify_theorem2_with(
    n: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let limits = &opts.limits;
    let max = match mode {
        Mode::Exhaustive => limits.max_exhaustive_n,
        Mode::Sampled => limits.max_sampled_n,
    };
    if n < 4 || n > max {
        return Err(Error::DimensionOutOfRange { n, min: 4, max });
    }
    let started = Instant::now();
    let fq = build_folded_hypercube_with(n, limits)?;
    let mut sampler_name = None;
    let (matchings, seed) = match mode {
        Mode::Exhaustive => {
            let all: Vec<Matching> = enumerate_perfect_matchings_with(&fq, limits)?.collect();
            let expected = count_perfect_matchings_with(&fq, limits)?;
            if expected != (all.len() as u64).into() {
                return Err(Error::VerificationFailed {
                    subject: format!("FQ_{n}"),
                    detail: format!("enumerated {} perfect matchings, counter says {expected}", all.len()),
                });
            }
            (all, None)
        }
        Mode::Sampled => {
            let mut batch = (1..=n).map(|i| dimension_matching(n, i)).collect::<Result<Vec<_>>>()?;
            batch.push(complementary_matching(n)?);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if fq.vertex_count() <= limits.max_count_vertices.min(64) {
                let mut sampler = PerfectMatchingSampler::with_limits(&fq, limits)?;
                batch.extend((0..samples).map(|_| sampler.sample(&mut rng)));
                sampler_name = Some("uniform");
            } else {
                let mut chain = SwitchChain::new(&fq, &batch[0])?;
                batch.extend((0..samples).map(|_| chain.sample(&mut rng)));
                sampler_name = Some("switch_chain");
            }
            (batch, Some(seed))
        }
    };

    let outcomes = run_pool(opts.threads, || {
        matchings
            .par_iter()
            .map(|m| {
                let class = classify_matching(n, m)?;
                if class.is_mixed() {
                    expect_refuted(&fq, n, m, class, limits)
                } else {
                    expect_isomorphic(&fq, n, m, &class)
                }
            })
            .collect::<Vec<_>>()
    })?;
    let mut report = VerificationReport::new("theorem2", n, mode, seed);
    report.sampler = sampler_name;
    for (m, outcome) in matchings.iter().zip(outcomes) {
        report.record(m, outcome?);
    }
    if mode == Mode::Exhaustive && report.passes.len() != n + 1 {
        return Err(Error::VerificationFailed {
            subject: format!("FQ_{n}"),
            detail: format!("{} matchings pass, expected exactly {}", report.passes.len(), n + 1),
        });
    }
    report.finish(started);
    Ok(report)
}

/// Re-checks a witness against FQ_n - m using only the definitions: two
/// labels are adjacent in FQ_n iff they differ in exactly one position or in
/// all of them.
pub fn revalidate_witness(n: usize, m: &Matching, witness: &Witness) -> std::result::Result<(), String> {
    let full = full_mask(n);
    let fq_adjacent = |a: u32, b: u32| {
        let d = a ^ b;
        d.count_ones() == 1 || d == full
    };
    let removed: HashSet<(u32, u32)> =
        m.edges().iter().map(|e| (e.u().bits(), e.v().bits())).flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let adjacent_after = |a: u32, b: u32| fq_adjacent(a, b) && !removed.contains(&(a, b));
    match witness {
        Witness::CommonNeighborViolation { u, v, neighbors, .. } => {
            let (a, b) = (u.bits(), v.bits());
            if a == b {
                return Err("pair is a single vertex".into());
            }
            let common: Vec<u32> = (0..1u32 << n).filter(|&z| adjacent_after(a, z) && adjacent_after(b, z)).collect();
            if matches!(common.len(), 0 | 2) {
                return Err(format!("{u} and {v} have {} common neighbors", common.len()));
            }
            let listed: Vec<u32> = neighbors.iter().map(|x| x.bits()).collect();
            if listed != common {
                return Err(format!("listed neighbors {neighbors:?} differ from recount"));
            }
            Ok(())
        }
        Witness::FourCycle { cycle, m_edge } => {
            let c: Vec<u32> = cycle.iter().map(|x| x.bits()).collect();
            let distinct: HashSet<u32> = c.iter().copied().collect();
            if distinct.len() != 4 {
                return Err("cycle repeats a vertex".into());
            }
            let sides: Vec<(u32, u32)> = (0..4).map(|j| (c[j], c[(j + 1) % 4])).collect();
            if let Some(&(a, b)) = sides.iter().find(|&&(a, b)| !fq_adjacent(a, b)) {
                return Err(format!("{a:b}-{b:b} is not an edge of FQ_{n}"));
            }
            let hits: Vec<&(u32, u32)> = sides.iter().filter(|s| removed.contains(s)).collect();
            if hits.len() != 1 {
                return Err(format!("cycle meets the matching in {} edges", hits.len()));
            }
            let (a, b) = *hits[0];
            if (a.min(b), a.max(b)) != (m_edge.u().bits(), m_edge.v().bits()) {
                return Err("reported matching edge is not the one on the cycle".into());
            }
            Ok(())
        }
        Witness::StructuralMismatch(reason) => Err(format!("structural mismatch is not a local witness: {reason}")),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairViolation {
    pub u: String,
    pub v: String,
    pub common_neighbors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub pairs: u64,
    /// Number of vertex pairs by common-neighbor count.
    pub histogram: BTreeMap<usize, u64>,
    /// Pairs whose count is neither 0 nor 2.
    pub violations: Vec<PairViolation>,
    pub holds: bool,
    pub elapsed_ms: u64,
}

/// Scans every vertex pair of FQ_n for its number of common neighbors. For
/// n >= 4 any count other than 0 or 2 is an error; for n = 3 the violating
/// pairs are reported.
pub fn verify_lemma_common_neighbors(n: usize) -> Result<LemmaReport> {
    if !(3..=8).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 3, max: 8 });
    }
    let started = Instant::now();
    let fq = build_folded_hypercube_with(n, &Limits::default())?;
    let count = fq.vertex_count() as u32;
    let mut histogram = BTreeMap::new();
    let mut violations = Vec::new();
    let mut pairs = 0;
    for u in 0..count {
        let row_u = fq.neighbors(u);
        for v in u + 1..count {
            let row_v = fq.neighbors(v);
            let k = row_u.iter().filter(|x| row_v.contains(x)).count();
            pairs += 1;
            *histogram.entry(k).or_insert(0) += 1;
            if k != 0 && k != 2 {
                violations.push(PairViolation {
                    u: fq.label(u).to_string(),
                    v: fq.label(v).to_string(),
                    common_neighbors: k,
                });
            }
        }
    }
    let holds = violations.is_empty();
    if n >= 4 && !holds {
        let first = &violations[0];
        return Err(Error::VerificationFailed {
            subject: format!("FQ_{n}"),
            detail: format!("{} and {} have {} common neighbors", first.u, first.v, first.common_neighbors),
        });
    }
    Ok(LemmaReport { n, pairs, histogram, violations, holds, elapsed_ms: started.elapsed().as_millis() as u64 })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoCopiesReport {
    pub n: usize,
    pub i: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub certificate_digests: Vec<String>,
}

/// FQ_n minus E^i and E_c splits into two copies of Q_{n-1}.
pub fn verify_two_copies(n: usize, i: usize) -> Result<TwoCopiesReport> {
    verify_two_copies_with(n, i, &Limits::default())
}

pub fn verify_two_copies_with(n: usize, i: usize, limits: &Limits) -> Result<TwoCopiesReport> {
    if n < 3 {
        return Err(Error::DimensionOutOfRange { n, min: 3, max: limits.max_dimension });
    }
    let fq = build_folded_hypercube_with(n, limits)?;
    let ei = dimension_matching(n, i)?;
    let ec = complementary_matching(n)?;
    let (mate_i, mate_c) = (ei.mates(), ec.mates());
    let rest = Graph::from_edges(
        n,
        fq.edge_pairs().filter(|&(a, b)| mate_i[a as usize] != b && mate_c[a as usize] != b).collect::<Vec<_>>(),
    )?;
    let (components, comp) = rest.components();
    let subject = || format!("FQ_{n} - (E^{i} ∪ E_c)");
    if components != 2 {
        return Err(Error::VerificationFailed { subject: subject(), detail: format!("{components} components") });
    }
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); components];
    for (v, &c) in comp.iter().enumerate() {
        members[c].push(v as u32);
    }
    let mut certificate_digests = Vec::new();
    for part in &members {
        if part.len() != 1 << (n - 1) {
            return Err(Error::VerificationFailed {
                subject: subject(),
                detail: format!("component of size {}", part.len()),
            });
        }
        let sub = rest.induced(part)?;
        match recognize_hypercube(&sub, n - 1)? {
            IsoResult::Isomorphic(lab) if verify_isomorphism(&sub, n - 1, &lab) => {
                certificate_digests.push(lab.digest())
            }
            other => {
                return Err(Error::VerificationFailed {
                    subject: subject(),
                    detail: format!("component containing {} is not Q_{}: {other:?}", fq.label(part[0]), n - 1),
                })
            }
        }
    }
    Ok(TwoCopiesReport {
        n,
        i,
        components,
        component_sizes: members.iter().map(Vec::len).collect(),
        certificate_digests,
    })
}
