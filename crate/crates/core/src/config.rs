/// Budgets and tolerances shared by every pipeline stage. Exceeding a budget
/// is always a hard error.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Maximum number of critical pairs a single Gröbner computation may create.
    pub max_pairs: usize,
    /// Relative tolerance for simultaneous root iteration.
    pub root_tolerance: f64,
    /// Iteration cap for simultaneous root iteration.
    pub max_root_iterations: usize,
    /// Two numeric values closer than this (relative to `max(1, |v|)`) are merged.
    pub value_tolerance: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_pairs: 200_000, root_tolerance: 1e-12, max_root_iterations: 2000, value_tolerance: 1e-10 }
    }
}
