//! A finite (or degree-truncated) piece of the Steenrod algebra with a
//! precomputed multiplication table, indexed by global basis position.

use super::milnor::{milnor_basis, milnor_product_terms, MilnorElt};
use super::profile::SubalgebraProfile;
use std::collections::HashMap;

pub struct Algebra {
    profile: SubalgebraProfile,
    max_degree: u32,
    basis: Vec<MilnorElt>,
    // basis[offsets[d]..offsets[d+1]] is the degree-d part
    offsets: Vec<usize>,
    index: HashMap<MilnorElt, usize>,
    // products[a * n + b] = global indices of the terms of basis[a] * basis[b]
    products: Vec<Vec<u32>>,
}

impl Algebra {
    /// The algebra of `profile`, enumerated through `max_degree` (capped at the top
    /// degree for finite profiles).
    pub fn new(profile: SubalgebraProfile, max_degree: u32) -> Self {
        let max_degree = max_degree.min(profile.top_degree());
        let mut basis = Vec::new();
        let mut offsets = vec![0];
        for d in 0..=max_degree {
            basis.extend(milnor_basis(profile, d));
            offsets.push(basis.len());
        }
        let index: HashMap<_, _> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let n = basis.len();
        let mut products = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                if basis[a].degree() + basis[b].degree() > max_degree {
                    continue;
                }
                let mut terms: Vec<u32> =
                    milnor_product_terms(basis[a].exponents(), basis[b].exponents())
                        .into_iter()
                        .filter(|t| profile.admits(t))
                        .map(|t| index[&MilnorElt::new(t)] as u32)
                        .collect();
                terms.sort_unstable();
                products[a * n + b] = terms;
            }
        }
        Algebra {
            profile,
            max_degree,
            basis,
            offsets,
            index,
            products,
        }
    }

    pub fn profile(&self) -> SubalgebraProfile {
        self.profile
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[MilnorElt] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &MilnorElt {
        &self.basis[i]
    }

    pub fn index_of(&self, m: &MilnorElt) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn dim(&self, degree: i64) -> usize {
        if degree < 0 || degree > self.max_degree as i64 {
            0
        } else {
            self.offsets[degree as usize + 1] - self.offsets[degree as usize]
        }
    }

    /// Global index range of the degree-`d` basis.
    pub fn degree_range(&self, degree: i64) -> std::ops::Range<usize> {
        if degree < 0 || degree > self.max_degree as i64 {
            0..0
        } else {
            self.offsets[degree as usize]..self.offsets[degree as usize + 1]
        }
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.basis[i].degree()
    }

    /// Terms of basis[a] * basis[b] as global indices.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> &[u32] {
        &self.products[a * self.basis.len() + b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_table() {
        let a = Algebra::new(SubalgebraProfile::A(2), 100);
        assert_eq!(a.len(), 64);
        assert_eq!(a.max_degree(), 23);
        assert_eq!(a.dim(0), 1);
        assert_eq!(a.dim(23), 1);
        let sq1 = a.index_of(&MilnorElt::sq(1)).unwrap();
        assert!(a.product(sq1, sq1).is_empty());
    }
}
