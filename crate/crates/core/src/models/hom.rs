use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Size data for a hom-set, enough to compare hom-sets up to bijection.
///
/// A hom-set is described as `ℤ^int_rank × ℕ^nat_rank × ∏_p F_p^{d_p}`
/// where `d_p` is `cofinite_fp_dim` for every prime not listed in
/// `fp_dims`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomInvariant {
    pub int_rank: u64,
    pub nat_rank: u64,
    pub cofinite_fp_dim: u64,
    pub fp_dims: BTreeMap<u64, u64>,
}

impl HomInvariant {
    pub fn new(int_rank: u64, nat_rank: u64, cofinite_fp_dim: u64, fp_dims: BTreeMap<u64, u64>) -> Self {
        let mut h = Self { int_rank, nat_rank, cofinite_fp_dim, fp_dims };
        h.canonicalize();
        h
    }

    fn canonicalize(&mut self) {
        let c = self.cofinite_fp_dim;
        self.fp_dims.retain(|_, d| *d != c);
    }

    pub fn fp_dim(&self, p: u64) -> u64 {
        self.fp_dims.get(&p).copied().unwrap_or(self.cofinite_fp_dim)
    }

    /// Invariant of the product of two hom-sets.
    pub fn product(&self, other: &Self) -> Self {
        let primes = self.fp_dims.keys().chain(other.fp_dims.keys());
        let fp_dims = primes.map(|&p| (p, self.fp_dim(p) + other.fp_dim(p))).collect();
        Self::new(
            self.int_rank + other.int_rank,
            self.nat_rank + other.nat_rank,
            self.cofinite_fp_dim + other.cofinite_fp_dim,
            fp_dims,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.int_rank == 0 && self.nat_rank == 0 && self.cofinite_fp_dim == 0
    }

    /// Number of elements, when finite.
    pub fn count(&self) -> Option<BigUint> {
        if !self.is_finite() {
            return None;
        }
        Some(self.fp_dims.iter().fold(BigUint::from(1u32), |acc, (&p, &d)| acc * BigUint::from(p).pow(d as u32)))
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.fp_dims.is_empty()
    }
}
