//! Retry harness for Las Vegas algorithms.

use crate::error::{Error, Result};

/// Default failure probability bound.
pub const DEFAULT_EPSILON: f64 = 1.0 / (1u64 << 20) as f64;

/// Number of independent rounds after which a procedure that succeeds with
/// probability at least `p` per round fails with probability at most `eps`.
pub fn rounds_for(eps: f64, p: f64) -> u64 {
    assert!(eps > 0.0 && eps < 1.0, "epsilon must lie in (0, 1)");
    let p = p.clamp(1e-9, 1.0);
    if p >= 1.0 {
        return 1;
    }
    ((eps.ln() / (1.0 - p).ln()).ceil() as u64).max(1)
}

/// Runs `round` until it returns `Some`, at most `budget` times.
pub fn run<T>(budget: u64, mut round: impl FnMut() -> Option<T>) -> Result<T> {
    for _ in 0..budget {
        if let Some(x) = round() {
            return Ok(x);
        }
    }
    Err(Error::BudgetExhausted(budget))
}

/// Like [`run`], but a round may also fail hard.
pub fn try_run<T>(budget: u64, mut round: impl FnMut() -> Result<Option<T>>) -> Result<T> {
    for _ in 0..budget {
        if let Some(x) = round()? {
            return Ok(x);
        }
    }
    Err(Error::BudgetExhausted(budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_formula() {
        // (1/2)^20 = 2^-20
        assert_eq!(rounds_for(DEFAULT_EPSILON, 0.5), 20);
        assert_eq!(rounds_for(0.01, 1.0), 1);
        assert!(rounds_for(DEFAULT_EPSILON, 0.01) > 1000);
    }

    #[test]
    fn run_stops_at_first_success() {
        let mut calls = 0;
        let r = run(10, || {
            calls += 1;
            (calls == 3).then_some(calls)
        });
        assert_eq!(r.unwrap(), 3);
        assert!(matches!(run::<()>(4, || None), Err(Error::BudgetExhausted(4))));
    }
}
