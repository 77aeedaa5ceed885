//! Size ceilings shared by the enumeration and tensor layers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Ceilings for the exhaustive and tensor-valued computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest order accepted by the group and brace enumerators.
    pub max_order: usize,
    /// Largest number of basis coefficients, `(n^2)^k`, a universal tensor
    /// computation may span.
    pub max_tensor_dim: usize,
    /// Largest brace order the universal (tensor-algebra) suites run on.
    pub max_universal_order: usize,
    /// Largest brace order the Yangian suites run on.
    pub max_yangian_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 6, max_tensor_dim: 65_536, max_universal_order: 4, max_yangian_order: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{what}: requested {requested}, ceiling is {ceiling}")]
pub struct LimitExceeded {
    pub what: &'static str,
    pub requested: usize,
    pub ceiling: usize,
}

impl Limits {
    pub fn check_order(&self, n: usize) -> Result<(), LimitExceeded> {
        if n > self.max_order {
            return Err(LimitExceeded { what: "enumeration order", requested: n, ceiling: self.max_order });
        }
        Ok(())
    }

    /// Guards a tensor of order `k` over an algebra of dimension `n^2`.
    pub fn check_tensor(&self, n: usize, k: usize) -> Result<(), LimitExceeded> {
        let dim = (n * n).checked_pow(k as u32).unwrap_or(usize::MAX);
        if dim > self.max_tensor_dim {
            return Err(LimitExceeded { what: "tensor dimension", requested: dim, ceiling: self.max_tensor_dim });
        }
        Ok(())
    }
}
