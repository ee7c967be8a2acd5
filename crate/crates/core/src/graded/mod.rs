//! Degrees, scalars, bases, Koszul signs and unshuffles.

pub(crate) mod linalg;
mod perm;
mod scalar;
mod space;

pub use perm::{koszul_sign, unshuffles, Permutation};
pub(crate) use perm::{front_mask_odd, odd, split_masks};
pub use scalar::{format_scalar, int, inv_factorial, one, parse_scalar, ratio, sign, zero, Scalar};
pub(crate) use scalar::is_negative;
pub use space::{BasisElement, GradedSpace};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceilings on word length. Every finite sum in the kernel is finite
/// only because families have finite support; these caps make the checked
/// range explicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest monomial weight an identity is checked on.
    pub max_weight: usize,
    /// Largest arity a family may have.
    pub max_arity: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_weight: 6,
            max_arity: 6,
        }
    }
}

impl Bounds {
    /// Words are held in 32-bit position masks.
    pub const HARD_LIMIT: usize = 12;

    pub fn new(max_weight: usize, max_arity: usize) -> Result<Self> {
        let b = Bounds {
            max_weight,
            max_arity,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn with_weight(max_weight: usize) -> Self {
        Bounds {
            max_weight,
            ..Bounds::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("max weight", self.max_weight), ("max arity", self.max_arity)] {
            if v == 0 {
                return Err(Error::malformed(format!("{what} must be positive")));
            }
            if v > Self::HARD_LIMIT {
                return Err(Error::Truncation {
                    what: "weight bound",
                    needed: v,
                    cap: Self::HARD_LIMIT,
                });
            }
        }
        Ok(())
    }

    pub fn check_weight(&self, what: &'static str, needed: usize) -> Result<()> {
        if needed > self.max_weight {
            return Err(Error::Truncation {
                what,
                needed,
                cap: self.max_weight,
            });
        }
        Ok(())
    }

    pub fn check_arity(&self, what: &'static str, needed: usize) -> Result<()> {
        if needed > self.max_arity {
            return Err(Error::Truncation {
                what,
                needed,
                cap: self.max_arity,
            });
        }
        Ok(())
    }
}
