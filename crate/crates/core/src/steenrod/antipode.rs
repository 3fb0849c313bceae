//! The canonical anti-automorphism χ.

use super::milnor::{milnor_product_terms, MilnorElt, SteenrodElt};
use super::profile::SubalgebraProfile;
use super::transition::TransitionTable;
use crate::error::Result;
use std::collections::BTreeSet;

type Terms = BTreeSet<Vec<u32>>;

fn toggle(set: &mut Terms, t: Vec<u32>) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

fn product(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for x in a {
        for y in b {
            for t in milnor_product_terms(x, y) {
                toggle(&mut out, t);
            }
        }
    }
    out
}

/// χ(Sq^0), ..., χ(Sq^k) as Milnor term sets.
fn antipode_table(k: u32) -> Vec<Terms> {
    let mut chi: Vec<Terms> = vec![Terms::from([Vec::new()])];
    for n in 1..=k {
        let mut acc = Terms::new();
        for i in 1..=n {
            for t in product(&Terms::from([vec![i]]), &chi[(n - i) as usize]) {
                toggle(&mut acc, t);
            }
        }
        chi.push(acc);
    }
    chi
}

/// χ(Sq^k) in the Milnor basis.
pub fn antipode_sq(k: u32) -> SteenrodElt {
    let terms = antipode_table(k).pop().unwrap();
    SteenrodElt::from_terms(
        SubalgebraProfile::Truncated { max_degree: k },
        terms.into_iter().map(MilnorElt::new),
    )
    .expect("antipode terms are homogeneous")
}

/// χ of an arbitrary homogeneous element, using χ(xy) = χ(y)χ(x) on admissible words.
pub fn antipode(e: &SteenrodElt) -> Result<SteenrodElt> {
    let profile = e.profile();
    let Some(deg) = e.degree() else {
        return Ok(SteenrodElt::zero(profile));
    };
    let table = TransitionTable::new(deg);
    let chi = antipode_table(deg);
    let mut acc = Terms::new();
    for m in e.terms() {
        for w in table.to_admissible(m) {
            let mut p = Terms::from([Vec::new()]);
            for &l in w.iter().rev() {
                p = product(&p, &chi[l as usize]);
            }
            for t in p {
                toggle(&mut acc, t);
            }
        }
    }
    SteenrodElt::from_terms(profile, acc.into_iter().map(MilnorElt::new))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::adem::{adem_reduce, Word};
    use crate::steenrod::milnor::milnor_basis;
    use crate::steenrod::transition::word_to_milnor;

    fn milnor_of_words(words: &BTreeSet<Word>) -> Terms {
        let mut out = Terms::new();
        for w in words {
            for t in word_to_milnor(w) {
                toggle(&mut out, t);
            }
        }
        out
    }

    #[test]
    fn low_degrees() {
        assert_eq!(antipode_sq(1).to_string(), "Sq(1)");
        assert_eq!(antipode_sq(2).to_string(), "Sq(2)");
        // χ(Sq^4) = Sq^4 + Sq^3 Sq^1
        let expected = milnor_of_words(&BTreeSet::from([vec![4], vec![3, 1]]));
        let got: Terms = antipode_sq(4)
            .terms()
            .map(|m| m.exponents().to_vec())
            .collect();
        assert_eq!(got, expected);
    }

    // χ(Sq^k) is the sum of every Milnor basis element of degree k.
    #[test]
    fn sum_of_basis_oracle() {
        for k in 0..=24 {
            let all: Terms = milnor_basis(SubalgebraProfile::Truncated { max_degree: k }, k)
                .into_iter()
                .map(|m| m.exponents().to_vec())
                .collect();
            let got: Terms = antipode_sq(k)
                .terms()
                .map(|m| m.exponents().to_vec())
                .collect();
            assert_eq!(got, all, "k = {k}");
        }
    }

    #[test]
    fn involution() {
        for k in 0..=32 {
            let c = antipode_sq(k);
            let cc = antipode(&c).unwrap();
            if k == 0 {
                assert_eq!(cc.to_string(), "Sq()");
            } else {
                assert_eq!(cc.terms().cloned().collect::<Vec<_>>(), vec![MilnorElt::sq(k)]);
            }
        }
    }

    #[test]
    fn anti_homomorphism() {
        for a in 1..=15u32 {
            for b in 1..=(16 - a) {
                let lhs_words = adem_reduce(&[a, b]);
                let lhs_terms = milnor_of_words(&lhs_words);
                let e = SteenrodElt::from_terms(
                    SubalgebraProfile::Truncated { max_degree: a + b },
                    lhs_terms.into_iter().map(MilnorElt::new),
                )
                .unwrap();
                let lhs: Terms = antipode(&e)
                    .unwrap()
                    .terms()
                    .map(|m| m.exponents().to_vec())
                    .collect();
                let cb: Terms = antipode_sq(b).terms().map(|m| m.exponents().to_vec()).collect();
                let ca: Terms = antipode_sq(a).terms().map(|m| m.exponents().to_vec()).collect();
                assert_eq!(lhs, product(&cb, &ca), "a={a} b={b}");
            }
        }
    }
}
