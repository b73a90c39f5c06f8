use serde::{Deserialize, Serialize};

/// Work limits guarding the enumerative routines.
///
/// `enumeration` caps the number of GAP index tuples (and generated set
/// elements), `pairs` caps pair spaces such as `I x H` in a stratification,
/// and `work` caps search nodes in backtracking and tuple enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub enumeration: u64,
    pub pairs: u64,
    pub work: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration: 1 << 24,
            pairs: 1 << 26,
            work: 1 << 32,
        }
    }
}
