//! Subsequence predicates and the binary projection used by the k-ary
//! reduction (keep two chosen symbols, remap to {0, 1}).

use crate::error::{Error, Result};
use crate::params::Symbol;

/// True iff `w` can be obtained from `x` by deleting zero or more symbols.
/// Greedy left-to-right matching; the earliest match is always safe.
pub fn is_subsequence(w: &[Symbol], x: &[Symbol]) -> bool {
    let mut it = x.iter();
    w.iter().all(|&c| it.any(|&s| s == c))
}

/// Project `x` onto the two-symbol alphabet `{a, b}`: keep occurrences of
/// `a` and `b` in order, remapped `a -> 0`, `b -> 1`.
pub fn binary_filter(x: &[Symbol], a: Symbol, b: Symbol) -> Result<Vec<Symbol>> {
    if a == b {
        return Err(Error::Domain(format!(
            "binary_filter needs distinct symbols, got a=b={a}"
        )));
    }
    Ok(x.iter()
        .filter_map(|&s| {
            if s == a {
                Some(0)
            } else if s == b {
                Some(1)
            } else {
                None
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(&[], &sym("0101")));
        assert!(is_subsequence(&sym("011"), &sym("0011")));
        assert!(!is_subsequence(&sym("110"), &sym("0011")));
        assert!(is_subsequence(&[], &[]));
        assert!(!is_subsequence(&sym("0"), &[]));
    }

    #[test]
    fn filter_examples() {
        assert_eq!(binary_filter(&sym("20102"), 0, 1).unwrap(), sym("010"));
        assert_eq!(
            binary_filter(&sym("222"), 0, 1).unwrap(),
            Vec::<Symbol>::new()
        );
        // keep symbols 1,2 of "31213" in order -> "121", remap 1->0, 2->1
        assert_eq!(binary_filter(&sym("31213"), 1, 2).unwrap(), sym("010"));
        assert!(binary_filter(&sym("01"), 1, 1).is_err());
    }
}
