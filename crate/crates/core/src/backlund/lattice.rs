use super::state::{seed_state, PotentialState};
use crate::error::{Error, Result};

/// Default bound on `|n|`.
pub const DEFAULT_MAX_INDEX: i64 = 40;

/// Memoized states `n = -k..=k`, grown on demand from the seed.
#[derive(Clone, Debug)]
pub struct Lattice {
    max_index: i64,
    /// `up[k]` is the state at `n = k`.
    up: Vec<PotentialState>,
    /// `down[k]` is the state at `n = -k`.
    down: Vec<PotentialState>,
}

impl Default for Lattice {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_INDEX)
    }
}

impl Lattice {
    pub fn new(max_index: i64) -> Self {
        let seed = seed_state();
        Lattice {
            max_index,
            up: vec![seed.clone()],
            down: vec![seed],
        }
    }

    pub fn max_index(&self) -> i64 {
        self.max_index
    }

    pub fn solution(&mut self, n: i64) -> Result<&PotentialState> {
        if n.abs() > self.max_index {
            return Err(Error::Budget {
                requested: n,
                limit: self.max_index,
            });
        }
        let k = n.unsigned_abs() as usize;
        let chain = if n >= 0 { &mut self.up } else { &mut self.down };
        while chain.len() <= k {
            let last = chain.last().unwrap();
            let next = if n >= 0 {
                last.step_up()?
            } else {
                last.step_down()?
            };
            chain.push(next);
        }
        Ok(&chain[k])
    }

    /// States for every `n` in `lo..=hi`, in increasing order of `n`.
    pub fn range(&mut self, lo: i64, hi: i64) -> Result<Vec<PotentialState>> {
        (lo..=hi).map(|n| self.solution(n).cloned()).collect()
    }
}
