//! May spectral sequence for Ext_{A(2)}(A1) from E1 = F₂[h₂, h_{2,1}, h_{3,0}].
//!
//! d_1 vanishes. d_2, d_3, d_4 act on monomials through the binary digits of
//! the exponents: d_2 reads bit 1 of the h_{2,1} exponent, d_3 bit 1 of the
//! h_{3,0} exponent and d_4 bit 2 of it. Pages are tracked per (s, t) as
//! representatives in the ambient monomial space modulo accumulated
//! boundaries.

use crate::error::{Error, Result};
use crate::gf2::{image_and_kernel, BitVec, Echelon, PivotOrder};
use std::collections::BTreeMap;

/// h₂^a · h_{2,1}^b · h_{3,0}^c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MayMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl MayMonomial {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        MayMonomial { a, b, c }
    }

    pub fn s(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn t(&self) -> u32 {
        4 * self.a + 6 * self.b + 7 * self.c
    }

    /// May weight.
    pub fn u(&self) -> u32 {
        self.a + 3 * self.b + 5 * self.c
    }

    pub fn stem(&self) -> i32 {
        self.t() as i32 - self.s() as i32
    }

    /// d_r of the monomial, for r in 2..=4.
    pub fn differential(&self, r: u32) -> Option<MayMonomial> {
        let MayMonomial { a, b, c } = *self;
        match r {
            2 if (b >> 1) & 1 == 1 => Some(MayMonomial::new(a + 3, b - 2, c)),
            3 if (c >> 1) & 1 == 1 => Some(MayMonomial::new(a + 2, b + 1, c - 2)),
            4 if (c >> 2) & 1 == 1 => Some(MayMonomial::new(a + 1, b + 4, c - 4)),
            _ => None,
        }
    }
}

impl std::fmt::Display for MayMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("h2", self.a), ("h21", self.b), ("h30", self.c)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Monomials in bidegree (s, t), sorted.
pub fn monomials(s: u32, t: u32) -> Vec<MayMonomial> {
    let mut out = Vec::new();
    for c in 0..=s {
        for b in 0..=s - c {
            let m = MayMonomial::new(s - b - c, b, c);
            if m.t() == t {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
struct Cell {
    basis: Vec<MayMonomial>,
    // page representatives and accumulated boundaries, as ambient vectors
    reps: Vec<BitVec>,
    bound: Vec<BitVec>,
}

/// One page of the spectral sequence.
#[derive(Clone, Debug)]
pub struct PageState {
    pub page: u32,
    pub t_max: u32,
    cells: BTreeMap<(u32, u32), Cell>,
}

impl PageState {
    pub fn dim(&self, s: u32, t: u32) -> usize {
        self.cells.get(&(s, t)).map_or(0, |c| c.reps.len())
    }

    /// Nonzero dims keyed by (s, t).
    pub fn dims(&self) -> BTreeMap<(u32, u32), usize> {
        self.cells
            .iter()
            .filter(|(_, c)| !c.reps.is_empty())
            .map(|(&k, c)| (k, c.reps.len()))
            .collect()
    }

    /// Survivors at (s, t) as sums of monomials.
    pub fn representatives(&self, s: u32, t: u32) -> Vec<Vec<MayMonomial>> {
        let Some(c) = self.cells.get(&(s, t)) else {
            return Vec::new();
        };
        c.reps
            .iter()
            .map(|v| v.iter_ones().map(|i| c.basis[i]).collect())
            .collect()
    }

    /// Σ_s (-1)^s dim at internal degree t.
    pub fn euler_characteristic(&self, t: u32) -> i64 {
        self.cells
            .iter()
            .filter(|((_, tt), _)| *tt == t)
            .map(|(&(s, _), c)| if s % 2 == 0 { c.reps.len() as i64 } else { -(c.reps.len() as i64) })
            .sum()
    }

    fn ambient(&self, m: &MayMonomial) -> Option<(u32, u32, usize)> {
        let c = self.cells.get(&(m.s(), m.t()))?;
        c.basis.binary_search(m).ok().map(|i| (m.s(), m.t(), i))
    }

    // d_r of an ambient vector at (s, t)
    fn apply(&self, r: u32, s: u32, t: u32, v: &BitVec) -> BitVec {
        let src = &self.cells[&(s, t)];
        let n = self.cells.get(&(s + 1, t)).map_or(0, |c| c.basis.len());
        let mut out = BitVec::zeros(n);
        for i in v.iter_ones() {
            if let Some(m) = src.basis[i].differential(r) {
                let (_, _, j) = self.ambient(&m).expect("target monomial in range");
                out.flip(j);
            }
        }
        out
    }
}

/// E1 (= E2): every monomial with t <= t_max.
pub fn may_e1(t_max: u32) -> PageState {
    let mut cells = BTreeMap::new();
    for t in 0..=t_max {
        for s in 0..=t / 4 {
            let basis = monomials(s, t);
            if basis.is_empty() {
                continue;
            }
            let n = basis.len();
            cells.insert(
                (s, t),
                Cell {
                    basis,
                    reps: (0..n).map(|i| BitVec::unit(n, i)).collect(),
                    bound: Vec::new(),
                },
            );
        }
    }
    PageState {
        page: 2,
        t_max,
        cells,
    }
}

/// Per-page record of the run.
#[derive(Clone, Debug)]
pub struct MayRun {
    /// E_2 through E_5.
    pub pages: Vec<PageState>,
    /// rank of d_r out of each (s, t), for r = 2, 3, 4
    pub ranks: Vec<BTreeMap<(u32, u32), usize>>,
}

impl MayRun {
    pub fn e_infinity(&self) -> &PageState {
        self.pages.last().expect("at least one page")
    }

    /// Text table of page dims: one block per page, rows s, columns stem.
    pub fn report(&self, max_stem: i32) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for p in &self.pages {
            let dims = p.dims();
            let s_top = dims.keys().map(|k| k.0).max().unwrap_or(0);
            writeln!(out, "E{}", p.page).unwrap();
            for s in (0..=s_top).rev() {
                write!(out, "{s:>3} |").unwrap();
                for stem in 0..=max_stem {
                    let t = stem + s as i32;
                    let d = if t < 0 { 0 } else { p.dim(s, t as u32) };
                    if d == 0 {
                        write!(out, "  .").unwrap();
                    } else {
                        write!(out, "{d:>3}").unwrap();
                    }
                }
                writeln!(out).unwrap();
            }
            write!(out, "    +").unwrap();
            for stem in 0..=max_stem {
                write!(out, "{:>3}", stem % 100).unwrap();
            }
            writeln!(out).unwrap();
        }
        out
    }
}

// Page coordinates of an ambient vector. Components along monomials that are
// not cycles of the page are dropped; the solver rows are boundaries, then
// representatives, then unit vectors completing the ambient basis.
fn coordinates(cell: &Cell, ech: &Echelon, y: &BitVec) -> BitVec {
    let x = ech.solve(y).expect("solver rows span the ambient space");
    let nb = cell.bound.len();
    let nr = cell.reps.len();
    BitVec::from_indices(
        nr,
        x.iter_ones().filter(|&i| i >= nb && i < nb + nr).map(|i| i - nb),
    )
}

fn solver(cell: &Cell) -> Echelon {
    let n = cell.basis.len();
    let mut span = Echelon::new(Vec::new(), n);
    let mut rows = Vec::new();
    for v in cell.bound.iter().chain(&cell.reps) {
        let red = span.reduce(v);
        debug_assert!(!red.is_zero());
        span.push_reduced(red);
        rows.push(v.clone());
    }
    for i in 0..n {
        let e = BitVec::unit(n, i);
        let red = span.reduce(&e);
        if !red.is_zero() {
            span.push_reduced(red);
            rows.push(e);
        }
    }
    Echelon::with_transforms(rows, n, PivotOrder::First)
}

/// Apply d_r to a page and pass to homology.
pub fn next_page(page: &PageState) -> Result<(PageState, BTreeMap<(u32, u32), usize>)> {
    let r = page.page;
    let mut solvers: BTreeMap<(u32, u32), Echelon> = BTreeMap::new();
    for (&k, cell) in &page.cells {
        solvers.insert(k, solver(cell));
    }
    // matrix of d_r in page coordinates, per source cell
    let mut mats: BTreeMap<(u32, u32), (Vec<BitVec>, usize)> = BTreeMap::new();
    for (&(s, t), cell) in &page.cells {
        let Some(target) = page.cells.get(&(s + 1, t)) else {
            mats.insert((s, t), (vec![BitVec::zeros(0); cell.reps.len()], 0));
            continue;
        };
        let ech = &solvers[&(s + 1, t)];
        let mut rows = Vec::new();
        for v in &cell.reps {
            let y = page.apply(r, s, t, v);
            rows.push(coordinates(target, ech, &y));
        }
        mats.insert((s, t), (rows, target.reps.len()));
    }
    let mut ranks = BTreeMap::new();
    let mut cells = BTreeMap::new();
    for (&(s, t), cell) in &page.cells {
        let (rows, cols) = &mats[&(s, t)];
        let (_, kernel) = image_and_kernel(rows, *cols);
        // incoming image in this cell's page coordinates
        let incoming: Vec<BitVec> = match s.checked_sub(1).and_then(|p| mats.get(&(p, t))) {
            Some((rows_in, _)) => rows_in.clone(),
            None => Vec::new(),
        };
        let image = Echelon::new(incoming.clone(), cell.reps.len());
        ranks.insert((s, t), Echelon::new(rows.clone(), *cols).rank());
        // d_r ∘ d_r = 0: every incoming image dies under d_r
        for y in image.rows() {
            let mut out = BitVec::zeros(*cols);
            for i in y.iter_ones() {
                out.xor_assign(&rows[i]);
            }
            if !out.is_zero() {
                return Err(Error::Invariant(format!("d{r}∘d{r} != 0 at ({s},{t})")));
            }
        }
        let lift = |c: &BitVec| {
            let mut v = BitVec::zeros(cell.basis.len());
            for i in c.iter_ones() {
                v.xor_assign(&cell.reps[i]);
            }
            v
        };
        let mut quotient = image.clone();
        let mut reps = Vec::new();
        for k in kernel {
            let red = quotient.reduce(&k);
            if !red.is_zero() {
                reps.push(lift(&k));
                quotient.push_reduced(red);
            }
        }
        let mut bound = cell.bound.clone();
        bound.extend(image.rows().iter().map(lift));
        cells.insert(
            (s, t),
            Cell {
                basis: cell.basis.clone(),
                reps,
                bound,
            },
        );
    }
    Ok((
        PageState {
            page: r + 1,
            t_max: page.t_max,
            cells,
        },
        ranks,
    ))
}

/// Run E2 → E5. E5 = E∞.
pub fn may_run(t_max: u32) -> Result<MayRun> {
    let mut pages = vec![may_e1(t_max)];
    let mut ranks = Vec::new();
    for _ in 2..=4 {
        let (next, rk) = next_page(pages.last().unwrap())?;
        pages.push(next);
        ranks.push(rk);
    }
    Ok(MayRun { pages, ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cells() {
        let e = may_e1(20);
        assert_eq!(e.representatives(1, 4), vec![vec![MayMonomial::new(1, 0, 0)]]);
        assert_eq!(monomials(2, 12), vec![MayMonomial::new(0, 2, 0)]);
        assert_eq!(monomials(2, 14), vec![MayMonomial::new(0, 0, 2)]);
    }

    #[test]
    fn named_differentials() {
        assert_eq!(
            MayMonomial::new(0, 2, 0).differential(2),
            Some(MayMonomial::new(3, 0, 0))
        );
        assert_eq!(
            MayMonomial::new(0, 0, 2).differential(3),
            Some(MayMonomial::new(2, 1, 0))
        );
        assert_eq!(
            MayMonomial::new(0, 0, 4).differential(4),
            Some(MayMonomial::new(1, 4, 0))
        );
        for r in 2..=4 {
            for m in [MayMonomial::new(1, 0, 0), MayMonomial::new(0, 1, 0), MayMonomial::new(0, 0, 1)] {
                assert_eq!(m.differential(r), None);
            }
        }
    }

    #[test]
    fn h2_cubed_dies_at_e3() {
        let run = may_run(20).unwrap();
        assert_eq!(run.pages[0].representatives(3, 12), vec![vec![MayMonomial::new(3, 0, 0)]]);
        assert_eq!(run.pages[1].dim(3, 12), run.pages[0].dim(3, 12) - 1);
    }

    #[test]
    fn periodicity_class_survives() {
        let run = may_run(56).unwrap();
        let e5 = run.e_infinity();
        let b4 = MayMonomial::new(0, 0, 8);
        assert!(e5.representatives(8, 56).iter().any(|r| r.contains(&b4)));
    }

    #[test]
    fn euler_characteristic_is_constant() {
        let run = may_run(60).unwrap();
        for t in 0..=60 {
            let chi = run.pages[0].euler_characteristic(t);
            for p in &run.pages[1..] {
                assert_eq!(p.euler_characteristic(t), chi, "t = {t}, E{}", p.page);
            }
        }
    }

    #[test]
    fn rank_bookkeeping() {
        let run = may_run(60).unwrap();
        for (i, rk) in run.ranks.iter().enumerate() {
            let (before, after) = (&run.pages[i], &run.pages[i + 1]);
            for (&(s, t), &r_out) in rk {
                let r_in = s.checked_sub(1).and_then(|p| rk.get(&(p, t))).copied().unwrap_or(0);
                assert_eq!(after.dim(s, t), before.dim(s, t) - r_out - r_in);
            }
        }
    }

    #[test]
    fn vanishing_line() {
        let e5 = may_run(80).unwrap().pages.pop().unwrap();
        for ((s, t), _) in e5.dims() {
            let stem = t as i32 - s as i32;
            assert!(5 * s as i32 <= stem + 5, "({s},{t})");
        }
    }

    proptest! {
        #[test]
        fn differential_tridegree(a in 0u32..12, b in 0u32..12, c in 0u32..12, r in 2u32..=4) {
            let m = MayMonomial::new(a, b, c);
            if let Some(d) = m.differential(r) {
                prop_assert_eq!(d.s(), m.s() + 1);
                prop_assert_eq!(d.t(), m.t());
                prop_assert_eq!(d.u() as i64, m.u() as i64 + 1 - 2 * r as i64);
                prop_assert_eq!(d.differential(r), None);
            }
        }
    }
}
