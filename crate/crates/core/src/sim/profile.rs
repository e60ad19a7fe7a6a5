use std::io::{self, Write};
use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::model::{DeviceLayout, EpsilonLayout, Quanta, Stage};

/// Ray counts stay in `u64` until they could exceed it (`2^64` rays needs
/// 64 stages), then move to big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Counts {
    Narrow(Vec<u64>),
    Wide(Vec<BigUint>),
}

const NARROW_STAGE_LIMIT: usize = 63;

/// Arrival moments at a node and how many rays arrive at each.
///
/// Entries are kept sorted by time with equal times coalesced, so the size
/// is bounded by the number of distinct subset sums rather than `2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalProfile {
    stage_index: usize,
    times: Vec<Quanta>,
    counts: Counts,
}

impl Default for ArrivalProfile {
    fn default() -> Self {
        Self::start()
    }
}

impl ArrivalProfile {
    /// The single undivided ray at the start node.
    pub fn start() -> Self {
        ArrivalProfile {
            stage_index: 0,
            times: vec![0],
            counts: Counts::Narrow(vec![1]),
        }
    }

    /// Splits every ray across an arc pair and coalesces equal arrival times.
    pub fn push_stage(&mut self, skip: Quanta, take: Quanta) {
        if self.stage_index >= NARROW_STAGE_LIMIT {
            self.widen();
        }
        let times = std::mem::take(&mut self.times);
        match &mut self.counts {
            Counts::Narrow(c) => {
                let (t, c2) = split_merge(&times, c, skip, take);
                self.times = t;
                *c = c2;
            }
            Counts::Wide(c) => {
                let (t, c2) = split_merge(&times, c, skip, take);
                self.times = t;
                *c = c2;
            }
        }
        self.stage_index += 1;
    }

    fn widen(&mut self) {
        if let Counts::Narrow(c) = &self.counts {
            self.counts = Counts::Wide(c.iter().map(|&x| BigUint::from(x)).collect());
        }
    }

    /// Number of stages propagated so far.
    pub fn stage_index(&self) -> usize {
        self.stage_index
    }

    /// Number of distinct arrival moments.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[Quanta] {
        &self.times
    }

    pub fn contains(&self, t: Quanta) -> bool {
        self.times.binary_search(&t).is_ok()
    }

    pub fn count_at(&self, t: Quanta) -> BigUint {
        match self.times.binary_search(&t) {
            Ok(i) => self.count_by_index(i),
            Err(_) => BigUint::zero(),
        }
    }

    fn count_by_index(&self, i: usize) -> BigUint {
        match &self.counts {
            Counts::Narrow(c) => BigUint::from(c[i]),
            Counts::Wide(c) => c[i].clone(),
        }
    }

    /// `(time, count)` in ascending time order.
    pub fn iter(&self) -> impl Iterator<Item = (Quanta, BigUint)> + '_ {
        self.times
            .iter()
            .enumerate()
            .map(move |(i, &t)| (t, self.count_by_index(i)))
    }

    pub fn total_count(&self) -> BigUint {
        match &self.counts {
            Counts::Narrow(c) => c.iter().map(|&x| BigUint::from(x)).sum(),
            Counts::Wide(c) => c.iter().sum(),
        }
    }

    pub fn earliest(&self) -> Option<Quanta> {
        self.times.first().copied()
    }

    pub fn latest(&self) -> Option<Quanta> {
        self.times.last().copied()
    }

    /// Writes one `<time> <count>` line per entry, ascending.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        match &self.counts {
            Counts::Narrow(c) => {
                for (t, n) in self.times.iter().zip(c) {
                    writeln!(out, "{t} {n}")?;
                }
            }
            Counts::Wide(c) => {
                for (t, n) in self.times.iter().zip(c) {
                    writeln!(out, "{t} {n}")?;
                }
            }
        }
        Ok(())
    }

    pub fn dump_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_dump(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("dump is ASCII")
    }
}

/// Merges `times + a` and `times + b` (both sorted) into one sorted list,
/// summing counts on collisions.
fn split_merge<C>(times: &[Quanta], counts: &[C], a: Quanta, b: Quanta) -> (Vec<Quanta>, Vec<C>)
where
    C: Clone + for<'c> AddAssign<&'c C>,
{
    let n = times.len();
    let mut out_t = Vec::with_capacity(2 * n);
    let mut out_c: Vec<C> = Vec::with_capacity(2 * n);
    let (mut i, mut j) = (0, 0);
    let emit = |t: Quanta, c: &C, out_t: &mut Vec<Quanta>, out_c: &mut Vec<C>| {
        if out_t.last() == Some(&t) {
            *out_c.last_mut().unwrap() += c;
        } else {
            out_t.push(t);
            out_c.push(c.clone());
        }
    };
    while i < n || j < n {
        let ta = (i < n).then(|| times[i] + a);
        let tb = (j < n).then(|| times[j] + b);
        match (ta, tb) {
            (Some(x), Some(y)) if x <= y => {
                emit(x, &counts[i], &mut out_t, &mut out_c);
                i += 1;
            }
            (Some(x), None) => {
                emit(x, &counts[i], &mut out_t, &mut out_c);
                i += 1;
            }
            (_, Some(y)) => {
                emit(y, &counts[j], &mut out_t, &mut out_c);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (out_t, out_c)
}

pub fn propagate_stages(stages: &[Stage]) -> ArrivalProfile {
    let mut profile = ArrivalProfile::start();
    for s in stages {
        profile.push_stage(s.skip_delay, s.take_delay);
    }
    profile
}

/// Arrival profile at the destination node of the offset device.
pub fn propagate(layout: &DeviceLayout) -> ArrivalProfile {
    propagate_stages(layout.stages())
}

/// Arrival profile of the epsilon device (skip arcs of length `ε`, take arcs
/// of length `a_i`).
pub fn propagate_epsilon(layout: &EpsilonLayout) -> ArrivalProfile {
    propagate_stages(layout.stages())
}
