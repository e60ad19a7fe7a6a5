use super::{walk_subsets, OracleResult};
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::verdict::Verdict;

const NAME: &str = "mitm";

/// Sorts the subset sums of one half, then walks the other half looking up
/// the complement. `O(2^(n/2) · n)` time, `O(2^(n/2))` memory.
pub(super) fn solve(instance: &Instance, cap: usize) -> Result<OracleResult> {
    let n = instance.len();
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "meet in the middle is capped at n = {cap}, instance has n = {n}"
        )));
    }
    let target = u128::from(instance.target());
    let (left, right) = instance.values().split_at(n / 2);

    let mut right_sums = Vec::with_capacity(1 << right.len());
    walk_subsets(right, |_, sum| {
        if sum <= target {
            right_sums.push(sum);
        }
        false
    });
    right_sums.sort_unstable();
    right_sums.dedup();

    let found = walk_subsets(left, |_, sum| {
        sum <= target && right_sums.binary_search(&(target - sum)).is_ok()
    });
    Ok(OracleResult::new(Verdict::from(found), None, NAME))
}
