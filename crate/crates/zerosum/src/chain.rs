//! Chains of factorizations of a fixed element.

use crate::error::{Error, Result};
use crate::factorization::{distance, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    NonDecreasing,
    NonIncreasing,
    None,
}

/// A walk through factorizations of one element.  `max_step` is the largest
/// distance between consecutive members; the monotone flag describes the
/// length profile (a constant-length chain counts as non-decreasing).
#[derive(Clone, Debug)]
pub struct Chain {
    pub steps: Vec<Factorization>,
    pub max_step: u64,
    pub monotone: Monotone,
}

impl Chain {
    /// Build from steps, computing `max_step` and the monotone flag and
    /// dropping consecutive duplicates.
    pub fn new(steps: Vec<Factorization>) -> Result<Chain> {
        if steps.is_empty() {
            return Err(Error::invalid("a chain needs at least one step"));
        }
        let mut dedup: Vec<Factorization> = Vec::with_capacity(steps.len());
        for s in steps {
            if dedup.last() != Some(&s) {
                dedup.push(s);
            }
        }
        let max_step = dedup
            .windows(2)
            .map(|w| distance(&w[0], &w[1]))
            .max()
            .unwrap_or(0);
        let lengths: Vec<u64> = dedup.iter().map(|z| z.len()).collect();
        let nondec = lengths.windows(2).all(|w| w[0] <= w[1]);
        let noninc = lengths.windows(2).all(|w| w[0] >= w[1]);
        let monotone = if nondec {
            Monotone::NonDecreasing
        } else if noninc {
            Monotone::NonIncreasing
        } else {
            Monotone::None
        };
        Ok(Chain {
            steps: dedup,
            max_step,
            monotone,
        })
    }

    pub fn first(&self) -> &Factorization {
        self.steps.first().unwrap()
    }

    pub fn last(&self) -> &Factorization {
        self.steps.last().unwrap()
    }

    pub fn reversed(&self) -> Chain {
        let mut steps = self.steps.clone();
        steps.reverse();
        Chain::new(steps).unwrap()
    }

    /// Check the stored data against recomputation: equal products along the
    /// chain, `max_step` exact, monotone flag truthful.
    pub fn validate(&self) -> Result<()> {
        let product = self.first().product();
        for z in &self.steps {
            if z.product() != product {
                return Err(Error::internal("chain steps factor different elements"));
            }
        }
        let fresh = Chain::new(self.steps.clone())?;
        if fresh.max_step != self.max_step {
            return Err(Error::internal("chain max_step is stale"));
        }
        let flag_ok = match self.monotone {
            Monotone::NonDecreasing => {
                self.steps.windows(2).all(|w| w[0].len() <= w[1].len())
            }
            Monotone::NonIncreasing => {
                self.steps.windows(2).all(|w| w[0].len() >= w[1].len())
            }
            Monotone::None => true,
        };
        if !flag_ok {
            return Err(Error::internal("chain monotone flag is wrong"));
        }
        Ok(())
    }
}
