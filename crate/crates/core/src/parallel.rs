//! Execution mode switch. Without the `parallel` feature every mode runs
//! sequentially.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecMode {
    /// Single-threaded reference mode.
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// Whether work is actually spread over threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Run `f(index, chunk, scratch)` on every `chunk`-sized piece of `buf`.
///
/// Each worker owns one scratch value built by `init`. The error reported
/// is the one from the lowest index, whatever the thread schedule.
pub fn for_each_chunk<T, S, I, F>(mode: ExecMode, buf: &mut [T], chunk: usize, init: I, f: F) -> Result<()>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(usize, &mut [T], &mut S) -> Result<()> + Sync + Send,
{
    if chunk == 0 {
        return Ok(());
    }
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        let errs: Vec<(usize, crate::error::Error)> = buf
            .par_chunks_mut(chunk)
            .enumerate()
            .map_init(&init, |s, (i, c)| f(i, c, s).err().map(|e| (i, e)))
            .flatten()
            .collect();
        return match errs.into_iter().min_by_key(|(i, _)| *i) {
            Some((_, e)) => Err(e),
            None => Ok(()),
        };
    }
    let _ = mode;
    let mut s = init();
    for (i, c) in buf.chunks_mut(chunk).enumerate() {
        f(i, c, &mut s)?;
    }
    Ok(())
}

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_indices<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}
