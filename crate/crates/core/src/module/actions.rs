//! Action matrices of a finite module, completion from definition records,
//! and the Adem consistency check.

use super::milnor_action::subalgebra_violations;
use super::presentation::{ActionRecord, ModulePresentation};
use crate::steenrod::MilnorElt;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::steenrod::adem::{adem_expand, decompose_pairs};
use std::fmt;

/// How definition records are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CompletionMode {
    /// Sq^{2^i} records generate; every other Sq^k is derived and any listed
    /// value is cross-checked.
    #[default]
    Generate,
    /// Records are taken literally and everything unlisted is zero.
    Strict,
}

/// Matrices of Sq^k on a finite module. Rows of `sq[k][d]` are the images of
/// the degree-d basis vectors, as vectors in degree d + k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    degrees: Vec<i32>,
    min_degree: i32,
    max_degree: i32,
    basis: Vec<Vec<usize>>,
    position: Vec<usize>,
    sq: Vec<Vec<Vec<BitVec>>>,
    complete: bool,
}

impl ActionTable {
    fn empty(degrees: &[i32]) -> Self {
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let span = (max_degree - min_degree) as usize;
        let mut basis = vec![Vec::new(); span + 1];
        let mut position = vec![0; degrees.len()];
        for (i, &d) in degrees.iter().enumerate() {
            let b = &mut basis[(d - min_degree) as usize];
            position[i] = b.len();
            b.push(i);
        }
        let mut table = ActionTable {
            degrees: degrees.to_vec(),
            min_degree,
            max_degree,
            basis,
            position,
            sq: Vec::new(),
            complete: false,
        };
        for k in 0..=span as u32 {
            let layer = (0..=span as i32)
                .map(|o| {
                    let d = min_degree + o;
                    let target = table.dim(d + k as i32);
                    (0..table.dim(d))
                        .map(|r| {
                            if k == 0 {
                                BitVec::unit(target, r)
                            } else {
                                BitVec::zeros(target)
                            }
                        })
                        .collect()
                })
                .collect();
            table.sq.push(layer);
        }
        table
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.max_degree
    }

    pub fn span(&self) -> u32 {
        (self.max_degree - self.min_degree) as u32
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.min_degree || d > self.max_degree {
            0
        } else {
            self.basis[(d - self.min_degree) as usize].len()
        }
    }

    /// Generators in degree `d`, in the order used for vectors of that degree.
    pub fn basis(&self, d: i32) -> &[usize] {
        if d < self.min_degree || d > self.max_degree {
            &[]
        } else {
            &self.basis[(d - self.min_degree) as usize]
        }
    }

    /// Position of generator `i` within its degree.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    /// Rows of the Sq^k matrix out of degree `d`.
    pub fn matrix(&self, k: u32, d: i32) -> &[BitVec] {
        if d < self.min_degree || d > self.max_degree || k as usize >= self.sq.len() {
            &[]
        } else {
            &self.sq[k as usize][(d - self.min_degree) as usize]
        }
    }

    /// Sq^k applied to a vector in degree `d`.
    pub fn apply(&self, k: u32, d: i32, v: &BitVec) -> BitVec {
        let target = self.dim(d + k as i32);
        let mut out = BitVec::zeros(target);
        if target == 0 {
            return out;
        }
        let m = self.matrix(k, d);
        for i in v.iter_ones() {
            out.xor_assign(&m[i]);
        }
        out
    }

    /// Apply a word Sq^{i_1} ... Sq^{i_k} (rightmost letter first).
    pub fn apply_word(&self, word: &[u32], d: i32, v: &BitVec) -> BitVec {
        let mut deg = d;
        let mut v = v.clone();
        for &l in word.iter().rev() {
            v = self.apply(l, deg, &v);
            deg += l as i32;
        }
        v
    }

    /// The image of generator `i` under Sq^k as a set of generators.
    pub fn image(&self, i: usize, k: u32) -> Vec<usize> {
        let d = self.degrees[i];
        if k > self.span() {
            return Vec::new();
        }
        let t = self.basis(d + k as i32);
        self.matrix(k, d)
            .get(self.position[i])
            .map(|row| row.iter_ones().map(|j| t[j]).collect())
            .unwrap_or_default()
    }

    fn set_row(&mut self, k: u32, i: usize, targets: &[usize]) {
        let d = self.degrees[i];
        let target = self.dim(d + k as i32);
        let row = BitVec::from_indices(target, targets.iter().map(|&j| self.position[j]));
        let o = (d - self.min_degree) as usize;
        self.sq[k as usize][o][self.position[i]] = row;
    }

    fn compose(&self, x: u32, y: u32, d: i32) -> Vec<BitVec> {
        self.matrix(y, d)
            .iter()
            .map(|row| self.apply(x, d + y as i32, row))
            .collect()
    }

    /// Keep only the part in degrees `<= max_degree` (a quotient module).
    pub fn truncated(&self, max_degree: i32) -> ActionTable {
        if max_degree >= self.max_degree {
            return self.clone();
        }
        let keep: Vec<usize> = (0..self.degrees.len())
            .filter(|&i| self.degrees[i] <= max_degree)
            .collect();
        let degrees: Vec<i32> = keep.iter().map(|&i| self.degrees[i]).collect();
        let mut out = ActionTable::empty(&degrees);
        // degree-wise bases keep their relative order, so matrices restrict directly
        for k in 1..=out.span() {
            for o in 0..=out.span() as i32 {
                let d = out.min_degree + o;
                if d + k as i32 > out.max_degree {
                    continue;
                }
                out.sq[k as usize][o as usize] = self.matrix(k, d).to_vec();
            }
        }
        out.complete = self.complete;
        out
    }

    /// Records for every nonzero Sq^k (1 <= k <= max_square) on every generator.
    pub fn to_presentation(&self, name: &str, max_square: u32) -> ModulePresentation {
        let mut m = ModulePresentation::new(name, self.degrees.clone());
        for i in 0..self.degrees.len() {
            for k in 1..=self.span().min(max_square) {
                let img = self.image(i, k);
                if !img.is_empty() {
                    m.set_action(i, k, img).unwrap();
                }
            }
        }
        m
    }

    /// Build a complete table from explicit Sq^k images on generators, for k = 1..=span.
    pub fn from_fn(degrees: &[i32], mut f: impl FnMut(usize, u32) -> Vec<usize>) -> Self {
        let mut t = ActionTable::empty(degrees);
        for i in 0..degrees.len() {
            for k in 1..=t.span() {
                let img = f(i, k);
                t.set_row(k, i, &img);
            }
        }
        t.complete = true;
        t
    }
}

/// Turn definition records into action matrices.
pub fn complete_actions(m: &ModulePresentation, mode: CompletionMode) -> Result<ActionTable> {
    if let Some(bad) = m.degree_violations().first() {
        return Err(Error::Consistency(format!(
            "record {} {} has a target in the wrong degree",
            bad.generator, bad.square
        )));
    }
    let (table, conflicts) = complete_unchecked(m, mode);
    if let Some(c) = conflicts.first() {
        return Err(Error::Completion {
            generator: c.generator,
            square: c.square,
            msg: format!("listed {:?}, derived {:?}", c.listed, c.derived),
        });
    }
    Ok(table)
}

/// A listed non-2-power record disagreeing with its derived value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionConflict {
    pub generator: usize,
    pub square: u32,
    pub listed: Vec<usize>,
    pub derived: Vec<usize>,
}

// Records in the wrong degree are skipped.
fn complete_unchecked(
    m: &ModulePresentation,
    mode: CompletionMode,
) -> (ActionTable, Vec<CompletionConflict>) {
    let mut t = ActionTable::empty(m.degrees());
    let span = t.span();
    let valid = |r: &ActionRecord| {
        r.square <= span
            && r.targets
                .iter()
                .all(|&j| m.degree(j) == m.degree(r.generator) + r.square as i32)
    };
    let mut conflicts = Vec::new();
    match mode {
        CompletionMode::Strict => {
            for r in m.records().filter(|r| valid(r)) {
                let targets: Vec<usize> = r.targets.iter().copied().collect();
                t.set_row(r.square, r.generator, &targets);
            }
        }
        CompletionMode::Generate => {
            for r in m
                .records()
                .filter(|r| r.square.is_power_of_two() && valid(r))
            {
                let targets: Vec<usize> = r.targets.iter().copied().collect();
                t.set_row(r.square, r.generator, &targets);
            }
            for k in 2..=span {
                if k.is_power_of_two() {
                    continue;
                }
                for o in 0..=span as i32 {
                    let d = t.min_degree + o;
                    let target = t.dim(d + k as i32);
                    let mut acc: Vec<BitVec> =
                        (0..t.dim(d)).map(|_| BitVec::zeros(target)).collect();
                    for (x, y) in decompose_pairs(k) {
                        for (a, b) in acc.iter_mut().zip(t.compose(x, y, d)) {
                            a.xor_assign(&b);
                        }
                    }
                    t.sq[k as usize][o as usize] = acc;
                }
            }
            for r in m
                .records()
                .filter(|r| !r.square.is_power_of_two() && valid(r))
            {
                let derived = t.image(r.generator, r.square);
                let listed: Vec<usize> = r.targets.iter().copied().collect();
                if derived != listed {
                    conflicts.push(CompletionConflict {
                        generator: r.generator,
                        square: r.square,
                        listed,
                        derived,
                    });
                }
            }
        }
    }
    t.complete = true;
    (t, conflicts)
}

/// A failed Adem relation Sq^a Sq^b = Σ ..., with the generators on which it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdemViolation {
    pub a: u32,
    pub b: u32,
    pub witnesses: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub degree_errors: Vec<ActionRecord>,
    pub conflicts: Vec<CompletionConflict>,
    pub adem_violations: Vec<AdemViolation>,
    /// Set when the records only determine an A(q)-module: the largest listed
    /// 2-power square is Sq^{2^q} but the module reaches degree 2^{q+1}.
    pub scope: Option<u32>,
    /// (Sq^{2^i}, θ) where Sq^{2^i}·(θ x) and (Sq^{2^i}θ)·x disagree.
    pub subalgebra_violations: Vec<(u32, MilnorElt)>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.degree_errors.is_empty()
            && self.conflicts.is_empty()
            && self.adem_violations.is_empty()
            && self.subalgebra_violations.is_empty()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "consistent");
        }
        for r in &self.degree_errors {
            writeln!(
                f,
                "degree error: line \"{} {} {} {}\"",
                r.generator,
                r.square,
                r.targets.len(),
                r.targets
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        for c in &self.conflicts {
            writeln!(
                f,
                "listed Sq^{} on g{} is {:?} but the generating squares give {:?}",
                c.square, c.generator, c.listed, c.derived
            )?;
        }
        for (k, theta) in &self.subalgebra_violations {
            writeln!(f, "Sq^{k} composed with {theta} does not act as their product")?;
        }
        for v in &self.adem_violations {
            writeln!(
                f,
                "Adem relation for Sq^{}Sq^{} fails on generators {:?}",
                v.a, v.b, v.witnesses
            )?;
        }
        Ok(())
    }
}

/// The largest k for which the records determine Sq^k: everything below
/// Sq^{2^{q+1}} when the largest listed 2-power square is Sq^{2^q}.
pub fn determined_squares(m: &ModulePresentation) -> u32 {
    match largest_listed_power(m) {
        Some(q) if m.span() >= 1 << (q + 1) => (1 << (q + 1)) - 1,
        _ => u32::MAX,
    }
}

fn largest_listed_power(m: &ModulePresentation) -> Option<u32> {
    m.records()
        .filter(|r| r.square.is_power_of_two())
        .map(|r| r.square.trailing_zeros())
        .max()
}

/// Degree check, listed-value cross-check, and Adem relations.
///
/// Relations are checked in the subalgebra generated by the 2-power squares
/// the records mention. When Sq^{2^q} is the largest of those and the module
/// reaches degree 2^{q+1}, the Adem pairs are checked below degree 2^{q+1} and
/// the A(q)-module axioms exactly on the whole module (q <= 2).
pub fn check_consistency(m: &ModulePresentation, mode: CompletionMode) -> ConsistencyReport {
    let degree_errors = m.degree_violations();
    let (t, conflicts) = complete_unchecked(m, mode);
    let q = largest_listed_power(m);
    let mut report = ConsistencyReport {
        degree_errors,
        conflicts,
        ..Default::default()
    };
    match q {
        Some(q) if q <= 2 && t.span() >= 1 << (q + 1) => {
            report.scope = Some(q);
            report.adem_violations = adem_violations_below(&t, (1 << (q + 1)) - 1);
            report.subalgebra_violations = subalgebra_violations(&t, q);
        }
        _ => report.adem_violations = adem_violations(&t),
    }
    report
}

/// Every pair 0 < a < 2b with a + b within the span, checked on every generator.
pub fn adem_violations(t: &ActionTable) -> Vec<AdemViolation> {
    adem_violations_below(t, t.span())
}

fn adem_violations_below(t: &ActionTable, span: u32) -> Vec<AdemViolation> {
    let mut out = Vec::new();
    for b in 1..=span {
        for a in 1..(2 * b).min(span + 1) {
            if a + b > span {
                break;
            }
            let rhs = adem_expand(a, b).unwrap();
            let mut witnesses = Vec::new();
            for (g, &d) in t.degrees().iter().enumerate() {
                let v = BitVec::unit(t.dim(d), t.position(g));
                let lhs = t.apply_word(&[a, b], d, &v);
                let mut r = BitVec::zeros(lhs.len());
                for w in &rhs {
                    r.xor_assign(&t.apply_word(w, d, &v));
                }
                if lhs != r {
                    witnesses.push(g);
                }
            }
            if !witnesses.is_empty() {
                out.push(AdemViolation { a, b, witnesses });
            }
        }
    }
    out
}
