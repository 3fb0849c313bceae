//! Minimal free resolutions over A(n) or the degree-truncated algebra.

use crate::error::{Error, Result};
use crate::gf2::{image_and_kernel, BitVec, Echelon};
use crate::module::{complete_actions, ActionTable, CompletionMode, MilnorActions, ModulePresentation};
use crate::steenrod::{Algebra, SubalgebraProfile};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A term θ·g of a free module element: algebra basis index and generator index.
pub type Term = (u32, u32);

/// A generator of F_s with its internal degree and differential.
///
/// For s = 0 the differential is a set of module generators (all of degree
/// `degree`); for s > 0 it is a sum of terms θ·h with h a generator of F_{s-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub degree: i32,
    pub diff: Vec<Term>,
}

/// Resource limits for [`Resolution::extend`].
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Largest allowed dimension of a free module in a single degree.
    pub max_cell_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cell_dim: 200_000,
        }
    }
}

pub struct Resolution {
    module: ModulePresentation,
    table: ActionTable,
    alg: Arc<Algebra>,
    actions: MilnorActions,
    gens: Vec<Vec<Generator>>,
    s_bound: u32,
    t_bound: i32,
}

/// Where each generator's block starts in a degree-t free module.
struct Layout {
    offsets: Vec<usize>,
    dim: usize,
}

impl Resolution {
    /// Prepare to resolve `module` (read in generate mode) over `profile`.
    /// For a truncated profile, `algebra_degree` bounds the algebra enumeration.
    pub fn new(module: &ModulePresentation, profile: SubalgebraProfile) -> Result<Self> {
        let table = complete_actions(module, CompletionMode::Generate)?;
        let max_deg = match profile {
            SubalgebraProfile::A(_) => profile.top_degree(),
            SubalgebraProfile::Truncated { max_degree } => max_degree,
        };
        let alg = Arc::new(Algebra::new(profile, max_deg));
        Ok(Self::with_algebra(module.clone(), table, alg))
    }

    pub fn with_algebra(module: ModulePresentation, table: ActionTable, alg: Arc<Algebra>) -> Self {
        let actions = MilnorActions::new(&table, &alg);
        let t_bound = table.min_degree() - 1;
        Resolution {
            module,
            table,
            alg,
            actions,
            gens: vec![Vec::new()],
            s_bound: 0,
            t_bound,
        }
    }

    /// Resolve in one go.
    pub fn resolve(
        module: &ModulePresentation,
        profile: SubalgebraProfile,
        s_max: u32,
        t_max: i32,
    ) -> Result<Self> {
        let mut r = Self::new(module, profile)?;
        r.extend(s_max, t_max, &Budget::default())?;
        Ok(r)
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<Algebra> {
        self.alg.clone()
    }

    pub fn profile(&self) -> SubalgebraProfile {
        self.alg.profile()
    }

    /// Largest filtration computed.
    pub fn s_bound(&self) -> u32 {
        self.s_bound
    }

    /// Largest internal degree computed (below the module's bottom degree if nothing was done).
    pub fn t_bound(&self) -> i32 {
        self.t_bound
    }

    pub fn min_degree(&self) -> i32 {
        self.table.min_degree()
    }

    pub fn generators(&self, s: u32) -> &[Generator] {
        self.gens.get(s as usize).map_or(&[], Vec::as_slice)
    }

    /// Number of generators of F_s in degree t, i.e. dim Ext^{s,t}.
    pub fn ext_dim(&self, s: u32, t: i32) -> usize {
        self.generators(s).iter().filter(|g| g.degree == t).count()
    }

    /// Indices of the generators of F_s in degree t.
    pub fn generators_in(&self, s: u32, t: i32) -> Vec<usize> {
        self.generators(s)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == t)
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn raw_parts(&self) -> (&[Vec<Generator>], u32, i32) {
        (&self.gens, self.s_bound, self.t_bound)
    }

    pub(crate) fn restore(&mut self, gens: Vec<Vec<Generator>>, s_bound: u32, t_bound: i32) {
        self.gens = gens;
        self.s_bound = s_bound;
        self.t_bound = t_bound;
    }

    fn layout(&self, s: u32, t: i32) -> Layout {
        let mut offsets = Vec::new();
        let mut dim = 0;
        for g in self.generators(s) {
            if g.degree > t {
                break;
            }
            offsets.push(dim);
            dim += self.alg.dim((t - g.degree) as i64);
        }
        Layout { offsets, dim }
    }

    /// Dimension of F_s in degree t (generators so far).
    pub fn free_dim(&self, s: u32, t: i32) -> usize {
        self.layout(s, t).dim
    }

    /// Dimension of the target of d_s in degree t.
    fn target_dim(&self, s: u32, t: i32) -> usize {
        if s == 0 {
            self.table.dim(t)
        } else {
            self.layout(s - 1, t).dim
        }
    }

    /// Decode a position of F_s in degree t into (generator, algebra basis index).
    pub fn decode(&self, s: u32, t: i32, pos: usize) -> (usize, usize) {
        let layout = self.layout(s, t);
        let g = layout.offsets.partition_point(|&o| o <= pos) - 1;
        let deg = t - self.generators(s)[g].degree;
        (g, self.alg.degree_range(deg as i64).start + pos - layout.offsets[g])
    }

    /// Position of θ·g in F_s at degree t.
    pub fn encode(&self, s: u32, t: i32, g: usize, theta: usize) -> usize {
        let layout = self.layout(s, t);
        let deg = t - self.generators(s)[g].degree;
        layout.offsets[g] + theta - self.alg.degree_range(deg as i64).start
    }

    /// Convert a vector of F_s in degree t into terms.
    pub fn to_terms(&self, s: u32, t: i32, v: &BitVec) -> Vec<Term> {
        let layout = self.layout(s, t);
        v.iter_ones()
            .map(|pos| {
                let g = layout.offsets.partition_point(|&o| o <= pos) - 1;
                let deg = t - self.generators(s)[g].degree;
                let theta = self.alg.degree_range(deg as i64).start + pos - layout.offsets[g];
                (theta as u32, g as u32)
            })
            .collect()
    }

    /// Convert terms (all of internal degree t) of F_s into a vector.
    pub fn from_terms(&self, s: u32, t: i32, terms: &[Term]) -> BitVec {
        let layout = self.layout(s, t);
        let mut v = BitVec::zeros(layout.dim);
        for &(theta, g) in terms {
            let deg = t - self.generators(s)[g as usize].degree;
            v.flip(layout.offsets[g as usize] + theta as usize - self.alg.degree_range(deg as i64).start);
        }
        v
    }

    /// θ · x for x given as terms of F_s of degree `deg`; result in F_s at degree deg + |θ|.
    pub fn act_terms(&self, theta: usize, terms: &[Term]) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for &(phi, h) in terms {
            for &psi in self.alg.product(theta, phi as usize) {
                out.push((psi, h));
            }
        }
        cancel_pairs(out)
    }

    /// d_s(θ·g) as a vector in the target at degree t = deg g + |θ|.
    fn image_row(&self, s: u32, t: i32, g: usize, theta: usize, target: &Layout) -> BitVec {
        let gen = &self.generators(s)[g];
        if s == 0 {
            let v = BitVec::from_indices(
                self.table.dim(gen.degree),
                gen.diff.iter().map(|&(_, m)| self.table.position(m as usize)),
            );
            self.actions.apply(theta, gen.degree, &v, self.table.dim(t))
        } else {
            let prev = self.generators(s - 1);
            let mut row = BitVec::zeros(target.dim);
            for &(phi, h) in &gen.diff {
                let hdeg = prev[h as usize].degree;
                let start = self.alg.degree_range((t - hdeg) as i64).start;
                for &psi in self.alg.product(theta, phi as usize) {
                    row.flip(target.offsets[h as usize] + psi as usize - start);
                }
            }
            row
        }
    }

    /// Rows of d_s on F_s at degree t, using generators of degree `< t` (or `<= t`).
    fn matrix(&self, s: u32, t: i32, include_degree_t: bool) -> (Vec<BitVec>, usize) {
        let target = if s == 0 {
            Layout {
                offsets: Vec::new(),
                dim: self.table.dim(t),
            }
        } else {
            self.layout(s - 1, t)
        };
        let mut cells = Vec::new();
        for (g, gen) in self.generators(s).iter().enumerate() {
            if gen.degree > t || (!include_degree_t && gen.degree == t) {
                break;
            }
            for theta in self.alg.degree_range((t - gen.degree) as i64) {
                cells.push((g, theta));
            }
        }
        let rows = cells
            .par_iter()
            .map(|&(g, theta)| self.image_row(s, t, g, theta, &target))
            .collect();
        (rows, target.dim)
    }

    /// Kernel of d_s in degree t (all generators), as vectors of F_s.
    pub fn kernel(&self, s: u32, t: i32) -> Vec<BitVec> {
        let (rows, cols) = self.matrix(s, t, true);
        image_and_kernel(&rows, cols).1
    }

    /// Image of d_s in degree t.
    pub fn image(&self, s: u32, t: i32) -> Echelon {
        let (rows, cols) = self.matrix(s, t, true);
        Echelon::new(rows, cols)
    }

    /// Full matrix of d_s at degree t (rows indexed like F_s).
    pub fn differential_matrix(&self, s: u32, t: i32) -> (Vec<BitVec>, usize) {
        self.matrix(s, t, true)
    }

    /// Extend the computed range to s <= s_max, t <= t_max.
    ///
    /// On a budget error the resolution is left in a consistent smaller range.
    pub fn extend(&mut self, s_max: u32, t_max: i32, budget: &Budget) -> Result<()> {
        while self.gens.len() <= s_max as usize {
            self.gens.push(Vec::new());
        }
        let t_min = self.min_degree();
        // more filtrations over the degrees already done, all or nothing
        if s_max > self.s_bound && self.t_bound >= t_min {
            let backup = self.gens.clone();
            for t in t_min..=self.t_bound {
                if let Err(e) = self.run_column(t, self.s_bound + 1, s_max, budget) {
                    self.gens = backup;
                    return Err(e);
                }
            }
        }
        self.s_bound = self.s_bound.max(s_max);
        if self.t_bound < t_min {
            // nothing computed yet: the filtration bound is whatever was asked for
            self.s_bound = s_max;
        }
        for t in (self.t_bound + 1)..=t_max {
            log::info!("resolving {} at t = {t}", self.module.name());
            if let Err(e) = self.run_column(t, 0, self.s_bound, budget) {
                for gs in &mut self.gens {
                    gs.retain(|g| g.degree < t);
                }
                self.t_bound = t - 1;
                return Err(e);
            }
            self.t_bound = t;
        }
        Ok(())
    }

    fn run_column(&mut self, t: i32, s_from: u32, s_to: u32, budget: &Budget) -> Result<()> {
        // vectors that must be hit by d_{s_from} at degree t
        let mut need: Vec<BitVec> = if s_from == 0 {
            let n = self.table.dim(t);
            (0..n).map(|i| BitVec::unit(n, i)).collect()
        } else {
            self.kernel(s_from - 1, t)
        };
        for s in s_from..=s_to {
            let old_dim = self.layout(s, t).dim;
            let target_dim = self.target_dim(s, t);
            if old_dim > budget.max_cell_dim || target_dim > budget.max_cell_dim {
                return Err(Error::Budget(format!(
                    "F_{s} in degree {t} has dimension {}",
                    old_dim.max(target_dim)
                )));
            }
            let (rows, cols) = self.matrix(s, t, false);
            let (mut image, kernel) = image_and_kernel(&rows, cols);
            let mut new = Vec::new();
            for v in need {
                let r = image.reduce(&v);
                if !r.is_zero() {
                    image.push_reduced(r);
                    new.push(v);
                }
            }
            let diff_terms: Vec<Vec<Term>> = new
                .iter()
                .map(|v| {
                    if s == 0 {
                        self.table
                            .basis(t)
                            .iter()
                            .enumerate()
                            .filter(|(p, _)| v.get(*p))
                            .map(|(_, &m)| (0, m as u32))
                            .collect()
                    } else {
                        self.to_terms(s - 1, t, v)
                    }
                })
                .collect();
            for diff in diff_terms {
                self.gens[s as usize].push(Generator { degree: t, diff });
            }
            let full = self.layout(s, t).dim;
            need = kernel.into_iter().map(|k| k.extended(full)).collect();
        }
        Ok(())
    }
}

/// Drop terms that occur an even number of times.
pub(crate) fn cancel_pairs(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_unstable();
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}
