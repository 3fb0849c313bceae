//! Admissible words, Adem relations and the reduction to normal form.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// A word Sq^{i_1} ... Sq^{i_k} in total squares, all letters positive.
pub type Word = Vec<u32>;

/// binom(n, k) mod 2 by Lucas' theorem; zero for negative arguments.
#[inline]
pub fn binom2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (n & k) == k
}

pub fn is_admissible(word: &[u32]) -> bool {
    word.windows(2).all(|w| w[0] >= 2 * w[1])
}

fn toggle(set: &mut BTreeSet<Word>, w: Word) {
    if !set.remove(&w) {
        set.insert(w);
    }
}

/// Right-hand side of the Adem relation for Sq^a Sq^b with 0 < a < 2b.
pub fn adem_expand(a: u32, b: u32) -> Result<BTreeSet<Word>> {
    if a == 0 || b == 0 {
        return Err(Error::Input(format!("Sq^{a}Sq^{b}: letters must be positive")));
    }
    if a >= 2 * b {
        return Err(Error::Input(format!("Sq^{a}Sq^{b} is already admissible")));
    }
    let mut out = BTreeSet::new();
    for c in 0..=a / 2 {
        if binom2(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
            let w = if c == 0 {
                vec![a + b]
            } else {
                vec![a + b - c, c]
            };
            toggle(&mut out, w);
        }
    }
    Ok(out)
}

/// Normal form of a word as an F₂-sum of admissible words.
pub fn adem_reduce(word: &[u32]) -> BTreeSet<Word> {
    let mut memo = HashMap::new();
    reduce_memo(word, &mut memo)
}

fn reduce_memo(word: &[u32], memo: &mut HashMap<Word, BTreeSet<Word>>) -> BTreeSet<Word> {
    let word: Word = word.iter().copied().filter(|&l| l > 0).collect();
    if is_admissible(&word) {
        return BTreeSet::from([word]);
    }
    if let Some(r) = memo.get(&word) {
        return r.clone();
    }
    // rewrite the rightmost inadmissible pair, then reduce each resulting word
    let p = (0..word.len() - 1)
        .rev()
        .find(|&p| word[p] < 2 * word[p + 1])
        .unwrap();
    let mut out = BTreeSet::new();
    for rhs in adem_expand(word[p], word[p + 1]).unwrap() {
        let mut w = word[..p].to_vec();
        w.extend(rhs);
        w.extend_from_slice(&word[p + 2..]);
        for r in reduce_memo(&w, memo) {
            toggle(&mut out, r);
        }
    }
    memo.insert(word, out.clone());
    out
}

/// Reduce an F₂-sum of words.
pub fn adem_reduce_sum<'a>(words: impl IntoIterator<Item = &'a Word>) -> BTreeSet<Word> {
    let mut memo = HashMap::new();
    let mut out = BTreeSet::new();
    for w in words {
        for r in reduce_memo(w, &mut memo) {
            toggle(&mut out, r);
        }
    }
    out
}

/// All admissible words of a given degree, in lexicographic order.
pub fn admissible_words(degree: u32) -> Vec<Word> {
    let mut out = Vec::new();
    if degree == 0 {
        out.push(Vec::new());
        return out;
    }
    // build from the right: the last letter is free, each earlier one at least twice the next
    fn go(rem: u32, min_first: u32, suffix: &mut Vec<u32>, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for l in min_first.max(1)..=rem {
            suffix.push(l);
            go(rem - l, 2 * l, suffix, out);
            suffix.pop();
        }
    }
    go(degree, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sq^k as an F₂-sum of words whose letters are all powers of two.
pub fn decompose_sq(k: u32) -> BTreeSet<Word> {
    let mut memo: HashMap<u32, BTreeSet<Word>> = HashMap::new();
    decompose_memo(k, &mut memo)
}

fn decompose_memo(k: u32, memo: &mut HashMap<u32, BTreeSet<Word>>) -> BTreeSet<Word> {
    if k == 0 {
        return BTreeSet::from([Vec::new()]);
    }
    if k.is_power_of_two() {
        return BTreeSet::from([vec![k]]);
    }
    if let Some(r) = memo.get(&k) {
        return r.clone();
    }
    let mut out = BTreeSet::new();
    for (x, y) in decompose_pairs(k) {
        let dx = decompose_memo(x, memo);
        let dy = decompose_memo(y, memo);
        for u in &dx {
            for v in &dy {
                let mut w = u.clone();
                w.extend_from_slice(v);
                toggle(&mut out, w);
            }
        }
    }
    memo.insert(k, out.clone());
    out
}

/// For k not a power of two: pairs (x, y) with Sq^k = Σ Sq^x Sq^y, where
/// every x and y is smaller than k (y = 0 never occurs).
///
/// Comes from the Adem relation for Sq^a Sq^{2^j}, a = k − 2^j, whose
/// leading coefficient binom(2^j − 1, a) is odd.
pub fn decompose_pairs(k: u32) -> Vec<(u32, u32)> {
    assert!(k > 0 && !k.is_power_of_two());
    let two_j = 1u32 << (31 - k.leading_zeros());
    let a = k - two_j;
    let mut out = vec![(a, two_j)];
    for c in 1..=a / 2 {
        if binom2(two_j as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
            out.push((k - c, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ws: &[&[u32]]) -> BTreeSet<Word> {
        ws.iter().map(|w| w.to_vec()).collect()
    }

    #[test]
    fn lucas() {
        assert!(binom2(0, 0));
        assert!(!binom2(0, 1));
        assert!(binom2(5, 1));
        assert!(!binom2(4, 1));
        assert!(!binom2(-1, 0));
    }

    #[test]
    fn expand_examples() {
        assert!(adem_expand(1, 1).unwrap().is_empty());
        assert_eq!(adem_expand(1, 2).unwrap(), set(&[&[3]]));
        assert_eq!(adem_expand(2, 2).unwrap(), set(&[&[3, 1]]));
        assert!(adem_expand(2, 1).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(adem_reduce(&[3, 1]), set(&[&[3, 1]]));
        assert_eq!(adem_reduce(&[1, 2]), set(&[&[3]]));
        assert!(adem_reduce(&[2, 2, 1]).is_empty());
    }

    #[test]
    fn admissible_counts() {
        assert_eq!(admissible_words(4), vec![vec![3, 1], vec![4]]);
        assert_eq!(admissible_words(0), vec![Vec::<u32>::new()]);
        for d in 0..20 {
            assert!(admissible_words(d).iter().all(|w| is_admissible(w)));
        }
    }

    #[test]
    fn decompose_small() {
        assert_eq!(decompose_sq(2), set(&[&[2]]));
        assert_eq!(decompose_sq(3), set(&[&[1, 2]]));
        for k in 1..=32 {
            let words = decompose_sq(k);
            assert!(words
                .iter()
                .flatten()
                .all(|l| l.is_power_of_two()));
            assert_eq!(adem_reduce_sum(&words), set(&[&[k]]), "k = {k}");
        }
    }
}
