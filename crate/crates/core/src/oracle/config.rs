use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{rat, Rational};

/// Search space of the enumerative oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzConfig {
    /// Degree bound for polynomial tails in `X`.
    pub max_degree: usize,
    /// Candidate coefficient values, sorted and without duplicates.
    pub grid: Vec<Rational>,
    /// Seed for randomized corpora built around an oracle run.
    pub seed: u64,
    /// Maximum number of enumerated candidates before giving up.
    pub budget: u64,
}

impl AnsatzConfig {
    pub fn new(max_degree: usize, grid: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut grid: Vec<Rational> = grid.into_iter().collect();
        grid.sort();
        grid.dedup();
        if grid.is_empty() {
            return Err(Error::Precondition("the coefficient grid is empty".into()));
        }
        Ok(AnsatzConfig { max_degree, grid, seed: 0, budget: 2_000_000 })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// `|grid|^k`, saturating.
    pub(crate) fn grid_power(&self, k: usize) -> u64 {
        (self.grid.len() as u64).saturating_pow(k.min(u32::MAX as usize) as u32)
    }
}

impl Default for AnsatzConfig {
    /// Degree 2 over the grid `{−2, …, 2}`.
    fn default() -> Self {
        AnsatzConfig::new(2, (-2..=2).map(rat)).expect("nonempty grid")
    }
}

/// Visits every tuple over `grid` of length `len` in lexicographic order.
/// Stops early when `visit` returns `Err` or `Ok(false)`.
pub(crate) fn for_each_tuple<F>(grid: &[Rational], len: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[Rational]) -> Result<bool>,
{
    let mut idx = vec![0usize; len];
    loop {
        let tuple: Vec<Rational> = idx.iter().map(|&i| grid[i].clone()).collect();
        if !visit(&tuple)? {
            return Ok(());
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
