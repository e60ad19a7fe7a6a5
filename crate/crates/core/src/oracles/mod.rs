//! Classical subset-sum solvers used as ground truth.

mod brute;
mod dp;
mod mitm;

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::verdict::Verdict;

pub use brute::subset_sum_histogram;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub verdict: Verdict,
    /// Indices into `A` of a subset summing to `B`, when one was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub solver_name: String,
}

impl OracleResult {
    fn new(verdict: Verdict, witness: Option<Vec<usize>>, solver: &str) -> Self {
        OracleResult {
            verdict,
            witness,
            solver_name: solver.to_owned(),
        }
    }
}

/// Size limits for the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub brute_force_max_n: usize,
    pub mitm_max_n: usize,
    /// Memory the DP table may use, bytes.
    pub dp_memory_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            brute_force_max_n: 25,
            mitm_max_n: 50,
            dp_memory_budget: 1 << 30,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleChoice {
    #[default]
    Auto,
    Dp,
    BruteForce,
    MeetInTheMiddle,
}

impl FromStr for OracleChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(OracleChoice::Auto),
            "dp" => Ok(OracleChoice::Dp),
            "brute" => Ok(OracleChoice::BruteForce),
            "mitm" => Ok(OracleChoice::MeetInTheMiddle),
            other => Err(Error::InvalidValue(format!(
                "unknown oracle {other:?} (expected dp, brute, mitm or auto)"
            ))),
        }
    }
}

impl OracleConfig {
    pub fn solve_dp(&self, instance: &Instance, want_witness: bool) -> Result<OracleResult> {
        dp::solve(instance, want_witness, self.dp_memory_budget)
    }

    pub fn solve_bruteforce(&self, instance: &Instance) -> Result<OracleResult> {
        brute::solve(instance, self.brute_force_max_n)
    }

    pub fn solve_mitm(&self, instance: &Instance) -> Result<OracleResult> {
        mitm::solve(instance, self.mitm_max_n)
    }

    /// Brute force when `2^n ≤ n·B` (and `n` is within its cap), otherwise
    /// DP when its table fits the budget, otherwise meet in the middle.
    pub fn pick(&self, instance: &Instance) -> OracleChoice {
        let n = instance.len();
        let n_times_b = n as u128 * u128::from(instance.target());
        if n <= self.brute_force_max_n && (1u128 << n) <= n_times_b {
            OracleChoice::BruteForce
        } else if dp::table_bytes(instance, false) <= self.dp_memory_budget {
            OracleChoice::Dp
        } else {
            OracleChoice::MeetInTheMiddle
        }
    }

    pub fn solve_auto(&self, instance: &Instance) -> Result<OracleResult> {
        self.solve_with(self.pick(instance), instance, false)
    }

    pub fn solve_with(
        &self,
        choice: OracleChoice,
        instance: &Instance,
        want_witness: bool,
    ) -> Result<OracleResult> {
        match choice {
            OracleChoice::Auto => self.solve_auto(instance),
            OracleChoice::Dp => self.solve_dp(instance, want_witness),
            OracleChoice::BruteForce => self.solve_bruteforce(instance),
            OracleChoice::MeetInTheMiddle => self.solve_mitm(instance),
        }
    }
}

/// Pseudo-polynomial DP with the default memory budget.
pub fn solve_dp(instance: &Instance, want_witness: bool) -> Result<OracleResult> {
    OracleConfig::default().solve_dp(instance, want_witness)
}

/// Exhaustive enumeration of all `2^n` subsets (default cap `n ≤ 25`).
pub fn solve_bruteforce(instance: &Instance) -> Result<OracleResult> {
    OracleConfig::default().solve_bruteforce(instance)
}

/// Meet in the middle over two halves of `A` (default cap `n ≤ 50`).
pub fn solve_mitm(instance: &Instance) -> Result<OracleResult> {
    OracleConfig::default().solve_mitm(instance)
}

/// Gray-code walk over all subsets of `values`, calling `visit(mask, sum)`
/// once per subset. Stops early when `visit` returns `true`.
pub(crate) fn walk_subsets(values: &[u64], mut visit: impl FnMut(u64, u128) -> bool) -> bool {
    debug_assert!(values.len() < 64);
    let mut mask = 0u64;
    let mut sum = 0u128;
    if visit(mask, sum) {
        return true;
    }
    for g in 1u64..(1u64 << values.len()) {
        let bit = g.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask & (1 << bit) != 0 {
            sum += u128::from(values[bit]);
        } else {
            sum -= u128::from(values[bit]);
        }
        if visit(mask, sum) {
            return true;
        }
    }
    false
}
