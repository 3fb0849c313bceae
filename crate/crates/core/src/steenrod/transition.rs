//! Change of basis between admissible words and the Milnor basis.

use super::adem::{admissible_words, is_admissible, Word};
use super::milnor::{milnor_basis, milnor_product_terms, MilnorElt, SteenrodElt};
use super::profile::SubalgebraProfile;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon, PivotOrder};
use std::collections::{BTreeSet, HashMap};

/// Milnor expansion of a word (admissible or not) in total squares.
pub fn word_to_milnor(word: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut acc: BTreeSet<Vec<u32>> = BTreeSet::from([Vec::new()]);
    for &l in word {
        let mut next = BTreeSet::new();
        for r in &acc {
            for t in milnor_product_terms(r, &[l]) {
                if !next.remove(&t) {
                    next.insert(t);
                }
            }
        }
        acc = next;
    }
    acc
}

pub fn admissible_to_milnor(word: &[u32]) -> Result<SteenrodElt> {
    if !is_admissible(word) || word.contains(&0) {
        return Err(Error::Input(format!("{word:?} is not an admissible word")));
    }
    let deg: u32 = word.iter().sum();
    SteenrodElt::from_terms(
        SubalgebraProfile::Truncated { max_degree: deg },
        word_to_milnor(word).into_iter().map(MilnorElt::new),
    )
}

/// Inverse of the transition matrix in one degree, as a lookup table.
pub struct TransitionTable {
    degree: u32,
    milnor: Vec<MilnorElt>,
    index: HashMap<MilnorElt, usize>,
    words: Vec<Word>,
    // solves Σ x_w · milnor(w) = target
    echelon: Echelon,
}

impl TransitionTable {
    pub fn new(degree: u32) -> Self {
        let milnor = milnor_basis(SubalgebraProfile::Truncated { max_degree: degree }, degree);
        let index: HashMap<_, _> = milnor
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let words = admissible_words(degree);
        let rows = words
            .iter()
            .map(|w| {
                BitVec::from_indices(
                    milnor.len(),
                    word_to_milnor(w)
                        .into_iter()
                        .map(|t| index[&MilnorElt::new(t)]),
                )
            })
            .collect();
        let echelon = Echelon::with_transforms(rows, milnor.len(), PivotOrder::First);
        assert_eq!(echelon.rank(), milnor.len(), "transition matrix singular");
        TransitionTable {
            degree,
            milnor,
            index,
            words,
            echelon,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn milnor_basis(&self) -> &[MilnorElt] {
        &self.milnor
    }

    pub fn admissible_basis(&self) -> &[Word] {
        &self.words
    }

    /// Admissible expansion of a single Milnor basis element.
    pub fn to_admissible(&self, m: &MilnorElt) -> BTreeSet<Word> {
        let i = self.index[m];
        let x = self
            .echelon
            .solve(&BitVec::unit(self.milnor.len(), i))
            .expect("transition matrix is invertible");
        x.iter_ones().map(|w| self.words[w].clone()).collect()
    }
}

pub fn milnor_to_admissible(e: &SteenrodElt) -> Result<BTreeSet<Word>> {
    let Some(deg) = e.degree() else {
        return Ok(BTreeSet::new());
    };
    // SteenrodElt already refuses mixed degrees; keep the check for safety
    if e.terms().any(|t| t.degree() != deg) {
        return Err(Error::Input("mixed-degree element".into()));
    }
    let table = TransitionTable::new(deg);
    let mut out = BTreeSet::new();
    for t in e.terms() {
        for w in table.to_admissible(t) {
            if !out.remove(&w) {
                out.insert(w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_squares() {
        for k in 1..12 {
            let e = admissible_to_milnor(&[k]).unwrap();
            assert_eq!(e.terms().cloned().collect::<Vec<_>>(), vec![MilnorElt::sq(k)]);
            assert_eq!(milnor_to_admissible(&e).unwrap(), BTreeSet::from([vec![k]]));
        }
    }

    #[test]
    fn sq2sq1() {
        let e = admissible_to_milnor(&[2, 1]).unwrap();
        assert_eq!(e.to_string(), "Sq(0,1) + Sq(3)");
    }

    #[test]
    fn round_trip_all_words() {
        for d in 0..=23 {
            let table = TransitionTable::new(d);
            assert_eq!(table.milnor_basis().len(), table.admissible_basis().len());
            for w in admissible_words(d) {
                if w.is_empty() {
                    continue;
                }
                let e = admissible_to_milnor(&w).unwrap();
                assert_eq!(milnor_to_admissible(&e).unwrap(), BTreeSet::from([w]));
            }
        }
    }
}
