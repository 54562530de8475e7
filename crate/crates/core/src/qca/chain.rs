use crate::error::{domain, QcaError, Result};

/// Largest Hilbert-space dimension that is ever materialised densely.
pub const DENSE_LIMIT: usize = 4096;

/// A periodic chain of `n_sites` spins of local dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    n_sites: usize,
    d: usize,
}

impl ChainSpec {
    pub fn new(n_sites: usize, d: usize) -> Result<Self> {
        if n_sites == 0 {
            return domain("a chain needs at least one site");
        }
        if d < 2 {
            return domain(format!("local dimension must be at least 2, got {d}"));
        }
        Ok(ChainSpec { n_sites, d })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![self.d; self.n_sites]
    }

    /// `d^{n_sites}`, or `None` on overflow.
    pub fn hilbert_dim(&self) -> Option<usize> {
        checked_pow(self.d, self.n_sites)
    }

    /// Hilbert-space dimension, provided it is within [`DENSE_LIMIT`].
    pub fn dense_dim(&self) -> Result<usize> {
        match self.hilbert_dim() {
            Some(dim) if dim <= DENSE_LIMIT => Ok(dim),
            _ => Err(QcaError::Budget(format!(
                "{}^{} exceeds the dense limit {DENSE_LIMIT}",
                self.d, self.n_sites
            ))),
        }
    }

    /// Reduces a (possibly negative) site label onto the ring.
    pub fn wrap(&self, site: i64) -> usize {
        site.rem_euclid(self.n_sites as i64) as usize
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// A contiguous window of `len` sites starting at `start`, wrapping around
/// the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    start: usize,
    len: usize,
}

impl Interval {
    pub fn new(start: usize, len: usize) -> Self {
        Interval { start, len }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn validate(&self, chain: &ChainSpec) -> Result<()> {
        if self.len == 0 || self.len > chain.n_sites() {
            return domain(format!(
                "interval length {} not in 1..={}",
                self.len,
                chain.n_sites()
            ));
        }
        if self.start >= chain.n_sites() {
            return domain(format!("interval start {} is off the chain", self.start));
        }
        Ok(())
    }

    /// Site labels in order from left to right.
    pub fn sites(&self, chain: &ChainSpec) -> Vec<usize> {
        (0..self.len).map(|k| (self.start + k) % chain.n_sites()).collect()
    }

    /// The interval of length `len` immediately to the right.
    pub fn next(&self, len: usize, chain: &ChainSpec) -> Interval {
        Interval::new((self.start + self.len) % chain.n_sites(), len)
    }

    /// Left and right halves of an even-length interval.
    pub fn halves(&self, chain: &ChainSpec) -> Result<(Vec<usize>, Vec<usize>)> {
        if self.len % 2 != 0 {
            return domain(format!("interval of odd length {} has no midpoint", self.len));
        }
        let sites = self.sites(chain);
        let (l, r) = sites.split_at(self.len / 2);
        Ok((l.to_vec(), r.to_vec()))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}; {}]", self.start, self.len)
    }
}
