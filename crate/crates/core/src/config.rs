use serde::{Deserialize, Serialize};

/// Caps, windows and seeds shared by every computation. Every cap hit is
/// reported as a labeled error rather than a truncated answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Largest `N` for `m^N` truncation.
    pub truncation_cap: u32,
    /// Largest `n` tried when confirming the multiplicity fit.
    pub fit_cap: u32,
    /// Number of consecutive equal values that count as stabilized.
    pub window: usize,
    /// Divergence threshold factor for the I(A) trace.
    pub divergence_factor: u64,
    /// Length of the I(A) trace.
    pub ia_n_max: u32,
    /// Iterations allowed for ideal saturation.
    pub saturation_cap: usize,
    /// Largest colon exponent searched in the colon test.
    pub colon_cap: u32,
    /// Attempts per filter-regular element.
    pub retry_cap: u32,
    /// Extra degrees past the theoretical regularity bound.
    pub slack: u32,
    /// Explicit working horizon for graded computations.
    pub horizon: Option<u32>,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            truncation_cap: 1 << 10,
            fit_cap: 40,
            window: 3,
            divergence_factor: 10,
            ia_n_max: 8,
            saturation_cap: 64,
            colon_cap: 32,
            retry_cap: 8,
            slack: 3,
            horizon: None,
            seed: 1,
        }
    }
}
