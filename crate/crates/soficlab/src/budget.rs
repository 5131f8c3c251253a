/// Resource budgets shared by the bounded computations. Defaults match the
/// documented CLI defaults; every budget can be raised per call.
#[derive(Debug, Clone)]
pub struct Budgets {
    /// Census horizon: counts are computed for periods 1..=n_max.
    pub n_max: u32,
    /// Horizon for the counting conditions inside decision procedures.
    pub decide_n_max: u32,
    /// Largest window radius tried when searching for cyclic block colorings.
    pub k_max: u32,
    /// Maximum component tree depth before giving up.
    pub depth_max: u32,
    /// Cap on explored states in subset and product automata.
    pub state_cap: usize,
    /// Cap on enumerated words or walks in brute-force enumerations.
    pub word_budget: u64,
    /// Target width of entropy enclosures, in log units.
    pub tol: f64,
    /// Cap on the crossover index searched when closing count comparisons
    /// beyond the exact horizon.
    pub crossover_cap: u64,
    /// Seed for randomized corpus generators. Fixed seed, fixed corpus.
    pub seed: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            n_max: 12,
            decide_n_max: 10,
            k_max: 3,
            depth_max: 16,
            state_cap: 1_000_000,
            word_budget: 100_000_000,
            tol: 1e-9,
            crossover_cap: 20_000,
            seed: 0x50F1C,
        }
    }
}
