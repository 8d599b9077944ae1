//! Resource guards. Every exhaustive or exponential routine checks one of
//! these before doing any work and reports the configured value on failure.

/// Largest dimension for which Q_n/FQ_n are materialized by default.
pub const DEFAULT_MAX_DIMENSION: usize = 20;

/// Environment variable that overrides [`Limits::max_dimension`] in the CLI.
pub const MAX_N_ENV: &str = "FOLDCUBE_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on n for graph construction.
    pub max_dimension: usize,
    /// Vertex bound for exhaustive perfect-matching enumeration.
    pub max_enumeration_vertices: usize,
    /// Vertex bound for the subset-DP counter (and hence the sampler).
    pub max_count_vertices: usize,
    /// Vertex bound for the backtracking isomorphism oracle.
    pub max_brute_force_vertices: usize,
    /// Largest n accepted by the exhaustive `verify_theorem2` driver.
    pub max_exhaustive_n: usize,
    /// Largest n accepted by the sampled `verify_theorem2` driver.
    pub max_sampled_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dimension: DEFAULT_MAX_DIMENSION,
            max_enumeration_vertices: 32,
            max_count_vertices: 32,
            max_brute_force_vertices: 16,
            max_exhaustive_n: 4,
            max_sampled_n: 8,
        }
    }
}

impl Limits {
    /// Defaults, with `FOLDCUBE_MAX_N` applied when set to a valid integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_dimension = n;
        }
        limits
    }
}
