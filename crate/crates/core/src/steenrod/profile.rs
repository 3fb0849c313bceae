use serde::{Deserialize, Serialize};
use std::fmt;

/// Which part of the Steenrod algebra a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubalgebraProfile {
    /// The whole algebra, only ever enumerated up to `max_degree`.
    Truncated { max_degree: u32 },
    /// The finite subalgebra A(p) generated by Sq^1, ..., Sq^{2^p}.
    A(u32),
}

impl SubalgebraProfile {
    /// Exclusive bound on the exponent r_i (1-based `i`), or `None` if unbounded.
    pub fn exponent_bound(&self, i: usize) -> Option<u32> {
        match *self {
            SubalgebraProfile::Truncated { .. } => None,
            SubalgebraProfile::A(p) => {
                let p = p as usize;
                if i == 0 || i > p + 1 {
                    Some(1)
                } else {
                    Some(1 << (p + 2 - i))
                }
            }
        }
    }

    pub fn admits(&self, exponents: &[u32]) -> bool {
        exponents
            .iter()
            .enumerate()
            .all(|(k, &r)| self.exponent_bound(k + 1).is_none_or(|b| r < b))
    }

    /// Largest degree in which the basis is enumerated.
    pub fn top_degree(&self) -> u32 {
        match *self {
            SubalgebraProfile::Truncated { max_degree } => max_degree,
            SubalgebraProfile::A(p) => (1..=p as usize + 1)
                .map(|i| ((1u32 << (p as usize + 2 - i)) - 1) * ((1u32 << i) - 1))
                .sum(),
        }
    }

    /// Total dimension, for the finite subalgebras.
    pub fn dimension(&self) -> Option<u64> {
        match *self {
            SubalgebraProfile::Truncated { .. } => None,
            SubalgebraProfile::A(p) => Some(1u64 << ((p + 1) * (p + 2) / 2)),
        }
    }

    /// Number of ξ_i that can appear with nonzero exponent.
    pub fn max_index(&self) -> usize {
        match *self {
            SubalgebraProfile::A(p) => p as usize + 1,
            SubalgebraProfile::Truncated { max_degree } => {
                let mut i = 0;
                while (1u64 << (i + 1)) - 1 <= max_degree as u64 {
                    i += 1;
                }
                i
            }
        }
    }

    /// Short name used in cache headers and on the command line.
    pub fn name(&self) -> String {
        match *self {
            SubalgebraProfile::A(p) => format!("A{p}"),
            SubalgebraProfile::Truncated { max_degree } => format!("A<={max_degree}"),
        }
    }
}

impl fmt::Display for SubalgebraProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubalgebraProfile::A(p) => write!(f, "A({p})"),
            SubalgebraProfile::Truncated { max_degree } => write!(f, "A[deg <= {max_degree}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_bounds() {
        let p = SubalgebraProfile::A(2);
        assert_eq!(p.exponent_bound(1), Some(8));
        assert_eq!(p.exponent_bound(2), Some(4));
        assert_eq!(p.exponent_bound(3), Some(2));
        assert_eq!(p.exponent_bound(4), Some(1));
        assert_eq!(p.top_degree(), 23);
        assert_eq!(p.dimension(), Some(64));
        assert_eq!(SubalgebraProfile::A(1).top_degree(), 6);
        assert_eq!(SubalgebraProfile::A(0).top_degree(), 1);
    }

    #[test]
    fn truncated_index() {
        assert_eq!(SubalgebraProfile::Truncated { max_degree: 6 }.max_index(), 2);
        assert_eq!(SubalgebraProfile::Truncated { max_degree: 7 }.max_index(), 3);
    }
}
