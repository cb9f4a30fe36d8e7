//! Data-parallel helpers with a sequential fallback.

/// How independent per-item work is scheduled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Rayon work stealing when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Parallel,
    Sequential,
}

impl Schedule {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Schedule::Parallel
    }
}

pub fn map<T, R, F>(schedule: Schedule, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = schedule;
    items.iter().map(f).collect()
}

/// The first `Some` in item order, whatever order the work ran in.
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
