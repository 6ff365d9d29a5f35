//! Partitions indexing Pontryagin numbers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::classes::graded::{ClassVar, Monomial};

/// A partition `(j_1 >= j_2 >= ...)`, standing for `p_{j_1} p_{j_2} ...`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition(Vec<u32>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed partition key `{0}`")]
pub struct PartitionParseError(pub String);

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::from_factors(self.0.iter().map(|&j| (ClassVar::P(j), 1)))
    }

    /// Inverse of [`Partition::to_monomial`] for monomials in ambient Pontryagin classes.
    pub fn from_monomial(m: &Monomial) -> Option<Self> {
        let mut parts = Vec::new();
        for (v, e) in m.factors() {
            match v {
                ClassVar::P(j) => parts.extend(std::iter::repeat_n(*j, *e as usize)),
                _ => return None,
            }
        }
        Self::new(parts)
    }

    /// All partitions of `n`, in descending lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for j in (1..=n.min(max)).rev() {
                prefix.push(j);
                rec(n - j, j, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    /// Key form with weakly increasing indices, e.g. `p1.p1.p2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys: Vec<String> = self.0.iter().rev().map(|j| format!("p{j}")).collect();
        f.write_str(&keys.join("."))
    }
}

impl FromStr for Partition {
    type Err = PartitionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionParseError(s.to_string());
        let mut parts = Vec::new();
        for tok in s.split('.') {
            let j: u32 = tok
                .strip_prefix('p')
                .and_then(|r| r.parse().ok())
                .ok_or_else(err)?;
            if j == 0 || parts.last().is_some_and(|&prev| prev > j) {
                return Err(err());
            }
            parts.push(j);
        }
        Self::new(parts).ok_or_else(err)
    }
}
