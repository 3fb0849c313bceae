//! Dense bit-packed linear algebra over F₂.
//!
//! Vectors are packed 64 entries per word. Matrices are stored as a list of
//! row vectors; every operation here works on rows, so "the image" of a
//! matrix always means the span of its rows.

use serde::{Deserialize, Serialize};
use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over F₂.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// XOR `other` into `self` starting at bit `offset`; `other` must fit.
    pub fn xor_at(&mut self, offset: usize, other: &BitVec) {
        debug_assert!(offset + other.len <= self.len);
        for i in other.iter_ones() {
            self.flip(offset + i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    /// First set bit at position `>= start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut wi = start / WORD;
        let mut w = self.words[wi] & (!0u64 << (start % WORD));
        loop {
            if w != 0 {
                let i = wi * WORD + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    /// Copy of the bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones() {
            if i >= start && i < start + len {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Same bits, longer length (new entries zero).
    pub fn extended(&self, len: usize) -> BitVec {
        assert!(len >= self.len);
        let mut words = self.words.clone();
        words.resize(words_for(len), 0);
        BitVec { len, words }
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = self.extended(self.len + other.len);
        if self.len % WORD == 0 {
            out.words[self.len / WORD..self.len / WORD + other.words.len()]
                .copy_from_slice(&other.words);
        } else {
            for i in other.iter_ones() {
                out.set(self.len + i, true);
            }
        }
        out
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// Which available row becomes the pivot for a column during elimination.
/// Different orders give different particular solutions of underdetermined
/// systems; ranks and row spaces do not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotOrder {
    #[default]
    First,
    Last,
}

/// Reduced row echelon form of a set of rows, optionally remembering which
/// combination of the original rows produced each echelon row.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    transforms: Option<Vec<BitVec>>,
}

impl Echelon {
    pub fn empty(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            transforms: None,
        }
    }

    /// Row-reduce `rows` (each of length `cols`).
    pub fn new(rows: Vec<BitVec>, cols: usize) -> Self {
        Self::build(rows, cols, false, PivotOrder::First)
    }

    /// Row-reduce and track transforms so that [`Echelon::solve`] works.
    pub fn with_transforms(rows: Vec<BitVec>, cols: usize, order: PivotOrder) -> Self {
        Self::build(rows, cols, true, order)
    }

    fn build(rows: Vec<BitVec>, cols: usize, track: bool, order: PivotOrder) -> Self {
        let n = rows.len();
        let (mut work, mut tf): (Vec<BitVec>, Vec<BitVec>) = if track {
            let tf = (0..n).map(|i| BitVec::unit(n, i)).collect();
            (rows, tf)
        } else {
            (rows, Vec::new())
        };
        let mut pivots = Vec::new();
        let mut rank = 0;
        let mut col = 0;
        while rank < n && col < cols {
            // candidate rows for this column
            let found = match order {
                PivotOrder::First => (rank..n).find(|&r| work[r].get(col)),
                PivotOrder::Last => (rank..n).rev().find(|&r| work[r].get(col)),
            };
            let Some(r) = found else {
                // skip ahead to the next column that has any nonzero entry below `rank`
                col = (rank..n)
                    .filter_map(|r| work[r].first_one_from(col + 1))
                    .min()
                    .unwrap_or(cols);
                continue;
            };
            work.swap(rank, r);
            if track {
                tf.swap(rank, r);
            }
            let (head, tail) = work.split_at_mut(rank + 1);
            let (before, pivot) = head.split_at_mut(rank);
            let pivot_row = &pivot[0];
            for (i, row) in before.iter_mut().chain(tail.iter_mut()).enumerate() {
                if row.get(col) {
                    row.xor_assign(pivot_row);
                    if track {
                        let src = rank;
                        let dst = if i < rank { i } else { i + 1 };
                        let t = tf[src].clone();
                        tf[dst].xor_assign(&t);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            col += 1;
        }
        work.truncate(rank);
        let transforms = track.then(|| {
            tf.truncate(rank);
            tf
        });
        Echelon {
            cols,
            rows: work,
            pivots,
            transforms,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the row space; returns the canonical remainder.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v` (assumed already reduced, nonzero) keeping reduced form.
    pub fn push_reduced(&mut self, v: BitVec) {
        let p = v.first_one().expect("push_reduced on zero vector");
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        self.transforms = None;
    }

    /// Find `x` with `Σ x_i · row_i = target` over the original rows.
    /// Requires the echelon to have been built with transforms.
    pub fn solve(&self, target: &BitVec) -> Option<BitVec> {
        let tf = self
            .transforms
            .as_ref()
            .expect("Echelon::solve needs transforms");
        let n = tf.first().map_or(0, BitVec::len);
        let mut v = target.clone();
        let mut x: Option<BitVec> = None;
        for ((row, &p), t) in self.rows.iter().zip(&self.pivots).zip(tf) {
            if v.get(p) {
                v.xor_assign(row);
                match &mut x {
                    Some(x) => x.xor_assign(t),
                    None => x = Some(t.clone()),
                }
            }
        }
        v.is_zero().then(|| x.unwrap_or_else(|| BitVec::zeros(n)))
    }
}

/// Row space and left kernel of a matrix given by rows of length `cols`.
///
/// Returns the reduced row space and a basis of `{x : Σ x_i row_i = 0}` as
/// vectors of length `rows.len()`.
pub fn image_and_kernel(rows: &[BitVec], cols: usize) -> (Echelon, Vec<BitVec>) {
    let n = rows.len();
    let augmented: Vec<BitVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.concat(&BitVec::unit(n, i)))
        .collect();
    let ech = Echelon::new(augmented, cols + n);
    let mut image = Vec::new();
    let mut kernel = Vec::new();
    for row in ech.rows {
        let left = row.slice(0, cols);
        if left.is_zero() {
            kernel.push(row.slice(cols, n));
        } else {
            image.push(left);
        }
    }
    // left parts of the pivot rows are already in reduced echelon form
    let pivots = image.iter().map(|r| r.first_one().unwrap()).collect();
    (
        Echelon {
            cols,
            rows: image,
            pivots,
            transforms: None,
        },
        kernel,
    )
}

pub fn rank(rows: &[BitVec], cols: usize) -> usize {
    Echelon::new(rows.to_vec(), cols).rank()
}

/// Product of row-matrices: row i of the result is `Σ_j a[i][j] · b[j]`.
pub fn mat_mul(a: &[BitVec], b: &[BitVec], cols: usize) -> Vec<BitVec> {
    a.iter()
        .map(|row| {
            let mut out = BitVec::zeros(cols);
            for j in row.iter_ones() {
                out.xor_assign(&b[j]);
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(bits: &[u8]) -> BitVec {
        BitVec::from_indices(
            bits.len(),
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| i),
        )
    }

    #[test]
    fn first_one_crosses_words() {
        let mut v = BitVec::zeros(200);
        v.set(130, true);
        assert_eq!(v.first_one(), Some(130));
        assert_eq!(v.first_one_from(131), None);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![130]);
    }

    #[test]
    fn concat_unaligned() {
        let a = bv(&[1, 0, 1]);
        let b = bv(&[0, 1]);
        assert_eq!(a.concat(&b), bv(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let rows = vec![bv(&[1, 1, 0]), bv(&[0, 1, 1]), bv(&[1, 0, 1])];
        let (img, ker) = image_and_kernel(&rows, 3);
        assert_eq!(img.rank(), 2);
        assert_eq!(ker, vec![bv(&[1, 1, 1])]);
    }

    #[test]
    fn solve_both_pivot_orders() {
        let rows = vec![bv(&[1, 0]), bv(&[1, 0]), bv(&[0, 1])];
        let target = bv(&[1, 1]);
        for order in [PivotOrder::First, PivotOrder::Last] {
            let e = Echelon::with_transforms(rows.clone(), 2, order);
            let x = e.solve(&target).unwrap();
            let mut acc = BitVec::zeros(2);
            for i in x.iter_ones() {
                acc.xor_assign(&rows[i]);
            }
            assert_eq!(acc, target);
        }
        let e = Echelon::with_transforms(vec![bv(&[1, 0])], 2, PivotOrder::First);
        assert!(e.solve(&bv(&[0, 1])).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = (Vec<BitVec>, usize)> {
        (1usize..12, 1usize..80).prop_flat_map(|(n, cols)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), n).prop_map(
                move |rows| {
                    let rows = rows
                        .into_iter()
                        .map(|r| {
                            BitVec::from_indices(
                                cols,
                                r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                            )
                        })
                        .collect();
                    (rows, cols)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((rows, cols) in arb_matrix()) {
            let (img, ker) = image_and_kernel(&rows, cols);
            prop_assert_eq!(img.rank() + ker.len(), rows.len());
            for k in &ker {
                let mut acc = BitVec::zeros(cols);
                for i in k.iter_ones() { acc.xor_assign(&rows[i]); }
                prop_assert!(acc.is_zero());
            }
            for r in &rows {
                prop_assert!(img.contains(r));
            }
        }
    }
}
