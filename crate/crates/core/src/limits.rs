/// Enumeration budgets. Every exhaustive search checks its input against
/// one of these before starting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest monoid whose submonoids are enumerated.
    pub max_monoid_size: usize,
    /// Largest product `M × [n]` the brute-force oracle will scan.
    pub max_oracle_size: usize,
    /// Largest lattice on which saturated transfer systems are enumerated.
    pub max_st_lattice_size: usize,
    /// Cap on the number of submonoids collected by the search above the
    /// mask-filter threshold.
    pub max_submonoids: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_monoid_size: 20,
            max_oracle_size: 14,
            max_st_lattice_size: 8,
            max_submonoids: 1 << 22,
        }
    }
}
