//! Global cap on total Hilbert-space dimension.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Once;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DIM: usize = 4096;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "TANGNET_MAX_DIM";

static MAX_DIM: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DIM);
static ENV_INIT: Once = Once::new();

fn init_from_env() {
    ENV_INIT.call_once(|| {
        if let Some(v) = std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            MAX_DIM.store(v, Ordering::Relaxed);
        }
    });
}

/// Current cap on any total dimension (matrix side or state length).
pub fn max_dim() -> usize {
    init_from_env();
    MAX_DIM.load(Ordering::Relaxed)
}

/// Overrides the cap for the rest of the process.
pub fn set_max_dim(cap: usize) {
    init_from_env();
    MAX_DIM.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check_dim(requested: usize) -> Result<()> {
    let cap = max_dim();
    if requested > cap {
        return Err(Error::SizeLimit { requested, cap });
    }
    Ok(())
}

/// Product of `dims`, or a size-limit error on overflow or when above the cap.
pub(crate) fn checked_total(dims: &[usize]) -> Result<usize> {
    let mut total: usize = 1;
    for &d in dims {
        total = total.checked_mul(d).ok_or(Error::SizeLimit {
            requested: usize::MAX,
            cap: max_dim(),
        })?;
    }
    check_dim(total)?;
    Ok(total)
}
