use alloc::sync::Arc;
use core::cell::Cell;
use core::fmt;

/// Limits for the exact solvers.
///
/// The core has no clock, so wall-clock limits come in as a callback that
/// reports whether time is up. It is polled every few thousand steps.
#[derive(Clone, Default)]
pub struct Budget {
    pub max_steps: Option<u64>,
    pub expired: Option<Arc<dyn Fn() -> bool + Send + Sync>>,
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("max_steps", &self.max_steps)
            .field("expired", &self.expired.is_some())
            .finish()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn steps(max_steps: u64) -> Self {
        Budget {
            max_steps: Some(max_steps),
            expired: None,
        }
    }

    pub fn with_expiry(mut self, f: Arc<dyn Fn() -> bool + Send + Sync>) -> Self {
        self.expired = Some(f);
        self
    }

    pub(crate) fn meter(&self) -> Meter<'_> {
        Meter {
            budget: self,
            steps: Cell::new(0),
            out: Cell::new(false),
        }
    }
}

pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    steps: Cell<u64>,
    out: Cell<bool>,
}

impl Meter<'_> {
    /// Counts one step. Returns false once the budget is spent.
    pub fn tick(&self) -> bool {
        if self.out.get() {
            return false;
        }
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if let Some(m) = self.budget.max_steps {
            if s > m {
                self.out.set(true);
                return false;
            }
        }
        if s % 4096 == 0 {
            if let Some(f) = &self.budget.expired {
                if f() {
                    self.out.set(true);
                    return false;
                }
            }
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.out.get()
    }
}
