//! Guardrails: formula-size and DNF caps, degree cap, and an injected clock.

use crate::error::{Error, Result};
use crate::formula::Formula;

/// Millisecond clock supplied by the host (the core crate has no `std`).
pub trait Clock {
    fn now_millis(&self) -> u64;
}

/// A clock that never advances; time limits are then never hit.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_millis(&self) -> u64 {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum symbol count of an intermediate formula.
    pub max_size: usize,
    /// Maximum number of literal occurrences produced by a DNF conversion.
    pub dnf_cap: usize,
    /// Maximum degree of a polynomial handed to the real-closed-field kernel.
    pub max_degree: usize,
    /// Wall-clock budget.
    pub max_millis: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_size: 10_000_000, dnf_cap: 10_000_000, max_degree: 12, max_millis: None }
    }
}

/// Limits together with the clock and the start time they are measured from.
pub struct Guard<'c> {
    pub limits: Limits,
    clock: &'c dyn Clock,
    start: u64,
}

static NO_CLOCK: NoClock = NoClock;

impl Default for Guard<'static> {
    fn default() -> Self {
        Guard::new(Limits::default(), &NO_CLOCK)
    }
}

impl<'c> Guard<'c> {
    pub fn new(limits: Limits, clock: &'c dyn Clock) -> Guard<'c> {
        let start = clock.now_millis();
        Guard { limits, clock, start }
    }

    pub fn elapsed_millis(&self) -> u64 {
        self.clock.now_millis().saturating_sub(self.start)
    }

    pub fn check_time(&self) -> Result<()> {
        match self.limits.max_millis {
            Some(ms) if self.elapsed_millis() > ms => Err(Error::Timeout { limit_ms: ms }),
            _ => Ok(()),
        }
    }

    pub fn check_size(&self, f: &Formula) -> Result<()> {
        let size = f.size();
        if size > self.limits.max_size {
            return Err(Error::Blowup { size, limit: self.limits.max_size });
        }
        self.check_time()
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.limits.max_degree {
            return Err(Error::DegreeCap { degree, cap: self.limits.max_degree });
        }
        Ok(())
    }
}
