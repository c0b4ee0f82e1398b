//! Text formats, Graphviz export, random generation and verification
//! campaigns built on `jacobi-core`, plus the support code of the `jacobi`
//! command line.

pub mod dot;
pub mod format;
pub mod random;
pub mod report;
pub mod verify;

/// Environment variable holding the number of worker threads.
pub const THREADS_VAR: &str = "JACOBI_THREADS";

/// Sizes the global rayon pool from `JACOBI_THREADS`. Unset, empty or zero
/// means one worker per available hardware thread.
pub fn init_threads() -> Result<(), String> {
    let n = match std::env::var(THREADS_VAR) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_VAR} must be a non-negative integer, got {v:?}"))?,
        _ => 0,
    };
    // a pool that was already built (by an earlier call) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
