//! Run configuration shared by the library entry points and the CLI.

use std::path::PathBuf;

use crate::rational::Rational;

/// Caps, sample sets, budgets, and the seed. A fixed config (seed included)
/// makes every JSON report byte-identical across runs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub degree_cap: usize,
    pub closure_cap: u64,
    pub hom_cap: u64,
    pub recombination_cap: u64,
    /// None means the default sample set {1,2,3,5,7} minus strictly
    /// post-critical values.
    pub samples: Option<Vec<Rational>>,
    pub prime_budget: usize,
    /// Depth for the constant-field candidate ledger (the criterion uses
    /// max(N, constant_depth)).
    pub constant_depth: u32,
    pub cache_path: Option<PathBuf>,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            degree_cap: crate::tower::DEFAULT_DEGREE_CAP,
            closure_cap: crate::tree::CLOSURE_CAP,
            hom_cap: crate::tree::HOM_CAP,
            recombination_cap: crate::zassenhaus::DEFAULT_RECOMBINATION_CAP,
            samples: None,
            prime_budget: 25,
            constant_depth: 3,
            cache_path: None,
            json: false,
        }
    }
}
