use crate::error::{Error, Result};

/// Caps on search effort.  `max_nodes` bounds visited search-tree nodes,
/// `max_results` bounds stored results (e.g. factorizations).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_results: u64,
}

impl Budget {
    pub fn new(max_nodes: u64, max_results: u64) -> Self {
        Budget {
            max_nodes,
            max_results,
        }
    }

    /// A budget large enough for everything exercised in the test suites.
    pub fn generous() -> Self {
        Budget {
            max_nodes: u64::MAX / 2,
            max_results: u64::MAX / 2,
        }
    }

    pub(crate) fn meter(&self, context: &'static str) -> Meter {
        Meter {
            used: 0,
            max: self.max_nodes,
            context,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1_000_000,
            max_results: 100_000,
        }
    }
}

/// Running node counter tied to a budget.
#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    max: u64,
    context: &'static str,
}

impl Meter {
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            Err(Error::budget(format!(
                "{} (after {} search nodes)",
                self.context, self.used
            )))
        } else {
            Ok(())
        }
    }
}
