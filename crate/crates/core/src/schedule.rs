//! Sequential / data-parallel evaluation of independent sweep points.
//!
//! Every sweep in the crate funnels through [`Schedule`]. Results always come
//! back in input order, and both schedules produce bit-identical values since
//! each item is evaluated by the same pure function.

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Sequential,
    /// Rayon work-stealing over items. Falls back to sequential when the
    /// crate is built without the `parallel` feature.
    Parallel,
}

impl Default for Schedule {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Schedule::Parallel
        } else {
            Schedule::Sequential
        }
    }
}

impl Schedule {
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Schedule::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Like [`Schedule::map`], but returns the error of the lowest-index
    /// failing item so that failures are reported deterministically.
    pub fn try_map<T, U, F>(self, items: &[T], f: F) -> Result<Vec<U>>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Result<U> + Sync + Send,
    {
        if self == Schedule::Sequential || !cfg!(feature = "parallel") {
            return items.iter().map(f).collect();
        }
        self.map(items, f).into_iter().collect()
    }
}
