//! Milnor basis elements and their product.

use super::profile::SubalgebraProfile;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[inline]
pub(crate) fn xi_degree(i: usize) -> u32 {
    (1u32 << i) - 1
}

/// A Milnor basis element Sq(r_1, ..., r_k), stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MilnorElt {
    exponents: Vec<u32>,
    degree: u32,
}

impl MilnorElt {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        let degree = exponents
            .iter()
            .enumerate()
            .map(|(i, &r)| r * xi_degree(i + 1))
            .sum();
        MilnorElt { exponents, degree }
    }

    pub fn unit() -> Self {
        MilnorElt::new(Vec::new())
    }

    /// The total square Sq^k = Sq(k).
    pub fn sq(k: u32) -> Self {
        MilnorElt::new(vec![k])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }
}

impl fmt::Display for MilnorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq(")?;
        for (i, r) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MilnorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An F₂-linear combination of Milnor basis elements of a single degree.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteenrodElt {
    terms: BTreeSet<MilnorElt>,
    profile: SubalgebraProfile,
}

impl SteenrodElt {
    pub fn zero(profile: SubalgebraProfile) -> Self {
        SteenrodElt {
            terms: BTreeSet::new(),
            profile,
        }
    }

    pub fn from_terms(
        profile: SubalgebraProfile,
        terms: impl IntoIterator<Item = MilnorElt>,
    ) -> Result<Self> {
        let mut out = Self::zero(profile);
        for t in terms {
            out.add_term(t)?;
        }
        Ok(out)
    }

    /// Toggle a term. Fails if the term is outside the profile or of the wrong degree.
    pub fn add_term(&mut self, m: MilnorElt) -> Result<()> {
        if !self.profile.admits(m.exponents()) {
            return Err(Error::Input(format!("{m} is not in {}", self.profile)));
        }
        if let Some(d) = self.degree() {
            if d != m.degree() {
                return Err(Error::Input(format!(
                    "mixed degrees {d} and {} in one element",
                    m.degree()
                )));
            }
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &SteenrodElt) -> Result<()> {
        for t in &other.terms {
            self.add_term(t.clone())?;
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = &MilnorElt> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &MilnorElt) -> bool {
        self.terms.contains(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(MilnorElt::degree)
    }

    pub fn profile(&self) -> SubalgebraProfile {
        self.profile
    }
}

impl fmt::Display for SteenrodElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SteenrodElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All basis elements of `degree` allowed by `profile`, in lexicographic order.
pub fn milnor_basis(profile: SubalgebraProfile, degree: u32) -> Vec<MilnorElt> {
    if degree > profile.top_degree() {
        return Vec::new();
    }
    let top = profile.max_index().max(1);
    let mut out = Vec::new();
    let mut exps = vec![0u32; top];
    fill(profile, top, degree, &mut exps, &mut out);
    out.sort();
    out
}

// assign r_i for i = idx down to 1, with `rem` degree left to distribute
fn fill(
    profile: SubalgebraProfile,
    idx: usize,
    rem: u32,
    exps: &mut [u32],
    out: &mut Vec<MilnorElt>,
) {
    if idx == 0 {
        if rem == 0 {
            out.push(MilnorElt::new(exps.to_vec()));
        }
        return;
    }
    let w = xi_degree(idx);
    let mut max = rem / w;
    if let Some(b) = profile.exponent_bound(idx) {
        max = max.min(b - 1);
    }
    for r in 0..=max {
        exps[idx - 1] = r;
        fill(profile, idx - 1, rem - r * w, exps, out);
    }
    exps[idx - 1] = 0;
}

/// Product in the Milnor basis, via the matrix formula.
pub fn milnor_product(
    a: &MilnorElt,
    b: &MilnorElt,
    profile: SubalgebraProfile,
) -> Result<SteenrodElt> {
    for x in [a, b] {
        if !profile.admits(x.exponents()) {
            return Err(Error::Input(format!("{x} is not in {profile}")));
        }
    }
    let mut out = SteenrodElt::zero(profile);
    for t in milnor_product_terms(a.exponents(), b.exponents()) {
        // subalgebras are closed, so this only filters in degenerate truncations
        if profile.admits(&t) {
            out.add_term(MilnorElt::new(t))?;
        }
    }
    Ok(out)
}

/// Raw matrix-formula product; returns every exponent sequence with odd
/// coefficient (no duplicates).
pub(crate) fn milnor_product_terms(r: &[u32], s: &[u32]) -> Vec<Vec<u32>> {
    let rows = r.len();
    let cols = s.len();
    // x[i][j] for 1 <= i <= rows, 1 <= j <= cols, row-major
    let mut x = vec![0u32; rows * cols];
    let mut row_rem: Vec<u32> = r.to_vec();
    let mut col_rem: Vec<u32> = s.to_vec();
    let mut result: BTreeSet<Vec<u32>> = BTreeSet::new();
    enumerate_cells(
        0,
        rows,
        cols,
        &mut x,
        &mut row_rem,
        &mut col_rem,
        &mut result,
    );
    result.into_iter().collect()
}

fn enumerate_cells(
    cell: usize,
    rows: usize,
    cols: usize,
    x: &mut [u32],
    row_rem: &mut [u32],
    col_rem: &mut [u32],
    result: &mut BTreeSet<Vec<u32>>,
) {
    if cell == rows * cols {
        if let Some(t) = diagonal_sums(rows, cols, x, row_rem, col_rem) {
            if !result.remove(&t) {
                result.insert(t);
            }
        }
        return;
    }
    let i = cell / cols;
    let j = cell % cols;
    let w = 1u32 << (j + 1);
    let max = (row_rem[i] / w).min(col_rem[j]);
    for v in 0..=max {
        x[cell] = v;
        row_rem[i] -= v * w;
        col_rem[j] -= v;
        enumerate_cells(cell + 1, rows, cols, x, row_rem, col_rem, result);
        row_rem[i] += v * w;
        col_rem[j] += v;
    }
    x[cell] = 0;
}

// Entries on diagonal n are x_{i,n-i}; x_{i,0} = row_rem[i-1], x_{0,j} = col_rem[j-1].
// Returns None when some diagonal multinomial is even.
fn diagonal_sums(
    rows: usize,
    cols: usize,
    x: &[u32],
    row_rem: &[u32],
    col_rem: &[u32],
) -> Option<Vec<u32>> {
    let entry = |i: usize, j: usize| -> u32 {
        match (i, j) {
            (0, 0) => 0,
            (i, 0) => row_rem[i - 1],
            (0, j) => col_rem[j - 1],
            (i, j) => x[(i - 1) * cols + (j - 1)],
        }
    };
    let mut t = Vec::with_capacity(rows.max(cols));
    for n in 1..=rows + cols {
        let mut acc = 0u32;
        let mut sum = 0u32;
        for i in n.saturating_sub(cols)..=n.min(rows) {
            let e = entry(i, n - i);
            if acc & e != 0 {
                return None;
            }
            acc |= e;
            sum += e;
        }
        t.push(sum);
    }
    while t.last() == Some(&0) {
        t.pop();
    }
    Some(t)
}
