use std::collections::BTreeMap;

use super::{walk_subsets, OracleResult};
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::verdict::Verdict;

const NAME: &str = "brute";

fn check_cap(instance: &Instance, cap: usize) -> Result<()> {
    if instance.len() > cap {
        return Err(Error::ResourceLimit(format!(
            "brute force is capped at n = {cap}, instance has n = {}",
            instance.len()
        )));
    }
    Ok(())
}

pub(super) fn solve(instance: &Instance, cap: usize) -> Result<OracleResult> {
    check_cap(instance, cap)?;
    let target = u128::from(instance.target());
    let found = walk_subsets(instance.values(), |_, sum| sum == target);
    Ok(OracleResult::new(Verdict::from(found), None, NAME))
}

/// Multiset of all `2^n` subset sums as `sum → number of subsets`.
pub fn subset_sum_histogram(instance: &Instance, cap: usize) -> Result<BTreeMap<u128, u64>> {
    check_cap(instance, cap)?;
    let mut hist = BTreeMap::new();
    walk_subsets(instance.values(), |_, sum| {
        *hist.entry(sum).or_insert(0) += 1;
        false
    });
    Ok(hist)
}
