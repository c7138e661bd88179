use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_OBJECTS: u64 = 10_000_000;
pub const DEFAULT_RANK_NODES: u64 = 1_000_000;

/// Work limits for the exhaustive searches.
///
/// `objects` is cumulative over everything charged to one `Budget`;
/// `rank_nodes` bounds each individual tensor-rank search.
#[derive(Debug)]
pub struct Budget {
    objects: u64,
    rank_nodes: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(objects: u64, rank_nodes: u64) -> Self {
        Budget {
            objects,
            rank_nodes,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX, u64::MAX)
    }

    pub fn objects_limit(&self) -> u64 {
        self.objects
    }

    pub fn rank_nodes(&self) -> u64 {
        self.rank_nodes
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Records `n` generated objects, failing once the limit is passed.
    pub fn charge(&self, what: &'static str, n: u64) -> Result<()> {
        let prev = self.used.fetch_add(n, Ordering::Relaxed);
        if prev.saturating_add(n) > self.objects {
            return Err(Error::Budget {
                what,
                limit: self.objects,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_OBJECTS, DEFAULT_RANK_NODES)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charge_until_exhausted() {
        let b = Budget::new(10, 5);
        assert!(b.charge("x", 6).is_ok());
        assert!(b.charge("x", 4).is_ok());
        assert_eq!(
            b.charge("x", 1),
            Err(Error::Budget {
                what: "x",
                limit: 10
            })
        );
    }
}
