//! Execution schedules. With the `parallel` feature the data-parallel loops
//! run on rayon; without it every schedule falls back to sequential code.
//! Results never depend on the schedule: searches keep the first hit in
//! enumeration order and sums use a fixed pairwise tree.

use crate::mat2::{C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    Sequential,
    #[default]
    Parallel,
}

impl Schedule {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Schedule::Parallel
    }
}

/// First `Some` in slice order.
pub fn find_map_first<T, R, F>(schedule: Schedule, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = schedule;
    items.iter().find_map(f)
}

/// `f(i)` for every `i in 0..count`, in index order.
pub fn map_indexed<R, F>(schedule: Schedule, count: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = schedule;
    (0..count).map(f).collect()
}

const LEAF: usize = 64;
#[cfg(feature = "parallel")]
const FORK: usize = 1 << 14;

/// Pairwise (tree) sum with a fixed split at the midpoint, so every schedule
/// produces bitwise-identical results.
pub fn pairwise_sum(schedule: Schedule, xs: &[C64]) -> C64 {
    if xs.len() <= LEAF {
        return xs.iter().fold(ZERO, |acc, &x| acc + x);
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() && xs.len() >= FORK {
        let (a, b) = rayon::join(|| pairwise_sum(schedule, lo), || pairwise_sum(schedule, hi));
        return a + b;
    }
    pairwise_sum(schedule, lo) + pairwise_sum(schedule, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_agree_bitwise() {
        let xs: Vec<C64> = (0..100_000)
            .map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 1.1).cos() * 1e-3))
            .collect();
        let a = pairwise_sum(Schedule::Sequential, &xs);
        let b = pairwise_sum(Schedule::Parallel, &xs);
        assert_eq!(a, b);
    }

    #[test]
    fn first_hit_wins() {
        let items: Vec<u32> = (0..10_000).collect();
        let hit = find_map_first(Schedule::Parallel, &items, |&x| (x % 997 == 996).then_some(x));
        assert_eq!(hit, Some(996));
        assert_eq!(map_indexed(Schedule::Parallel, 5, |i| i * 2), vec![0, 2, 4, 6, 8]);
    }
}
