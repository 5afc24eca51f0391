use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symbol of a k-ary string. Alphabets up to k = 256 are supported, which
/// covers every regime of interest here while keeping ensembles and DP
/// tables compact.
pub type Symbol = u8;

/// Largest supported alphabet, fixed by the `u8` symbol representation.
pub const MAX_ALPHABET: u32 = 256;

/// The experiment index: alphabet size `k`, number of strings `d`, and
/// string length `n` (in symbols).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub k: u32,
    pub d: u32,
    pub n: usize,
}

impl Params {
    pub fn new(k: u32, d: u32, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "alphabet size k={k} must be >= 2"
            )));
        }
        if k > MAX_ALPHABET {
            return Err(Error::InvalidParams(format!(
                "alphabet size k={k} exceeds the maximum {MAX_ALPHABET} (symbols are 8-bit)"
            )));
        }
        if d < 1 {
            return Err(Error::InvalidParams("need at least d=1 string".into()));
        }
        Ok(Params { k, d, n })
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(k={}, d={}, n={})", self.k, self.d, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(Params::new(1, 2, 10).is_err());
        assert!(Params::new(2, 0, 10).is_err());
        assert!(Params::new(257, 2, 10).is_err());
        assert!(Params::new(2, 1, 0).is_ok());
        assert!(Params::new(256, 14, 100).is_ok());
    }
}
