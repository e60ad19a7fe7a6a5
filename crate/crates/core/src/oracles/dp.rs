//! Reachable-sum DP over `0..=B`, bit-packed.

use super::OracleResult;
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::verdict::Verdict;

const NAME: &str = "dp";
const UNSET: u32 = u32::MAX;

/// Bytes the table needs; zero when `B` exceeds the total and no table is built.
pub(super) fn table_bytes(instance: &Instance, want_witness: bool) -> u64 {
    let target = u128::from(instance.target());
    if target > instance.sum() {
        return 0;
    }
    let cells = target + 1;
    let bits = cells.div_ceil(64) * 8;
    let setters = if want_witness { cells * 4 } else { 0 };
    u64::try_from(bits + setters).unwrap_or(u64::MAX)
}

pub(super) fn solve(instance: &Instance, want_witness: bool, budget: u64) -> Result<OracleResult> {
    let target = instance.target();
    if u128::from(target) > instance.sum() {
        return Ok(OracleResult::new(Verdict::No, None, NAME));
    }
    let needed = table_bytes(instance, want_witness);
    if needed > budget {
        return Err(Error::ResourceLimit(format!(
            "DP table for B = {target} needs {needed} bytes, budget is {budget}"
        )));
    }
    if want_witness && instance.len() >= UNSET as usize {
        return Err(Error::ResourceLimit("too many values for witness indices".into()));
    }

    let cells = target as usize + 1;
    let words = cells.div_ceil(64);
    let tail_mask = match cells % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    };
    let mut reach = vec![0u64; words];
    reach[0] = 1;
    // setter[s] = index of the value that first made sum `s` reachable.
    let mut setter = if want_witness {
        vec![UNSET; cells]
    } else {
        Vec::new()
    };

    let is_set = |reach: &[u64], s: usize| reach[s / 64] >> (s % 64) & 1 == 1;

    for (i, &a) in instance.values().iter().enumerate() {
        if a > target {
            continue;
        }
        let (word_shift, bit_shift) = ((a / 64) as usize, (a % 64) as u32);
        // High to low so every read sees the table from before this value.
        for w in (word_shift..words).rev() {
            let src = w - word_shift;
            let mut shifted = reach[src] << bit_shift;
            if bit_shift != 0 && src > 0 {
                shifted |= reach[src - 1] >> (64 - bit_shift);
            }
            if w == words - 1 {
                shifted &= tail_mask;
            }
            let fresh = shifted & !reach[w];
            if fresh == 0 {
                continue;
            }
            reach[w] |= fresh;
            if want_witness {
                let mut bits = fresh;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    setter[w * 64 + b] = i as u32;
                    bits &= bits - 1;
                }
            }
        }
        if is_set(&reach, target as usize) {
            break;
        }
    }

    let verdict = Verdict::from(is_set(&reach, target as usize));
    let witness = (want_witness && verdict.is_yes()).then(|| {
        let mut picked = Vec::new();
        let mut s = target as usize;
        while s > 0 {
            let i = setter[s] as usize;
            picked.push(i);
            s -= instance.values()[i] as usize;
        }
        picked.reverse();
        picked
    });
    Ok(OracleResult::new(verdict, witness, NAME))
}
