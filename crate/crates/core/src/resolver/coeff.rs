//! Ext with coefficients in a finite module, from the Hom complex of a
//! minimal resolution.
//!
//! Ext_A(X ⊗ N, F₂) ≅ Ext_A(N, DX), so a tensor product with a large module
//! can be handled by resolving the smaller factor and putting the other one
//! into the coefficients.

use super::resolution::{Budget, Resolution};
use crate::error::{Error, Result};
use crate::gf2::{rank, BitVec};
use crate::module::{
    complete_actions, dualize, ActionTable, CompletionMode, MilnorActions, ModulePresentation,
};
use crate::steenrod::{Algebra, SubalgebraProfile};

/// Coefficients L for Hom_A(F_s, L); reusable across resolutions over one algebra.
pub struct Coefficients {
    table: ActionTable,
    actions: MilnorActions,
}

impl Coefficients {
    pub fn new(coeff: &ModulePresentation, alg: &Algebra) -> Result<Self> {
        let table = complete_actions(coeff, CompletionMode::Generate)?;
        let actions = MilnorActions::new(&table, alg);
        Ok(Coefficients { table, actions })
    }

    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    /// Filtration and internal degree a resolution must reach for dim(s, t).
    pub fn required(&self, s: u32, t: i32) -> (u32, i32) {
        (s + 1, t + self.table.max_degree())
    }

    // basis of C^{s,t}: (generator, position in L_{deg g - t}); returns block offsets
    fn blocks(&self, res: &Resolution, s: u32, t: i32) -> (Vec<Option<usize>>, usize) {
        let mut offsets = Vec::new();
        let mut dim = 0;
        for g in res.generators(s) {
            let n = self.table.dim(g.degree - t);
            if n == 0 {
                offsets.push(None);
            } else {
                offsets.push(Some(dim));
                dim += n;
            }
        }
        (offsets, dim)
    }

    /// Matrix of δ: C^{s,t} → C^{s+1,t}, one row per basis vector of C^{s,t}.
    fn coboundary(&self, res: &Resolution, s: u32, t: i32) -> (Vec<BitVec>, usize) {
        let (src, src_dim) = self.blocks(res, s, t);
        let (dst, dst_dim) = self.blocks(res, s + 1, t);
        let mut rows = vec![BitVec::zeros(dst_dim); src_dim];
        let alg = res.algebra();
        let prev = res.generators(s);
        for (g2, gen) in res.generators(s + 1).iter().enumerate() {
            let Some(dst_off) = dst[g2] else { continue };
            let dst_deg = gen.degree - t;
            for &(theta, h) in &gen.diff {
                let Some(src_off) = src[h as usize] else { continue };
                let h_deg = prev[h as usize].degree - t;
                let m = self.actions.matrix(theta as usize, h_deg);
                debug_assert_eq!(h_deg + alg.degree_of(theta as usize) as i32, dst_deg);
                for (l, image) in m.iter().enumerate() {
                    rows[src_off + l].xor_at(dst_off, image);
                }
            }
        }
        (rows, dst_dim)
    }

    /// dim Ext^{s,t}(N, L) from a resolution of N.
    pub fn dim(&self, res: &Resolution, s: u32, t: i32) -> Result<usize> {
        let (s_need, t_need) = self.required(s, t);
        if res.s_bound() < s_need || res.t_bound() < t_need {
            return Err(Error::Depth(format!(
                "need s <= {s_need} and t <= {t_need}, resolution has s <= {} and t <= {}",
                res.s_bound(),
                res.t_bound()
            )));
        }
        let (_, c) = self.blocks(res, s, t);
        let (rows_out, cols_out) = self.coboundary(res, s, t);
        let rank_out = rank(&rows_out, cols_out);
        let rank_in = if s == 0 {
            0
        } else {
            let (rows_in, cols_in) = self.coboundary(res, s - 1, t);
            rank(&rows_in, cols_in)
        };
        Ok(c - rank_in - rank_out)
    }
}

/// Ext^{s,t}(N, L) for an owned resolution of N and a coefficient module L.
pub struct CoefficientExt {
    res: Resolution,
    coeff: Coefficients,
}

impl CoefficientExt {
    pub fn new(res: Resolution, coeff: &ModulePresentation) -> Result<Self> {
        let coeff = Coefficients::new(coeff, res.algebra())?;
        Ok(CoefficientExt { res, coeff })
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    /// Make sure the resolution reaches what dim(s, t) needs.
    pub fn prepare(&mut self, s: u32, t: i32, budget: &Budget) -> Result<()> {
        let (s_need, t_need) = self.coeff.required(s, t);
        if self.res.s_bound() < s_need || self.res.t_bound() < t_need {
            let s_max = self.res.s_bound().max(s_need);
            let t_max = self.res.t_bound().max(t_need);
            self.res.extend(s_max, t_max, budget)?;
        }
        Ok(())
    }

    /// dim Ext^{s,t}; the resolution must already reach s + 1 and t + top degree of L.
    pub fn dim(&self, s: u32, t: i32) -> Result<usize> {
        self.coeff.dim(&self.res, s, t)
    }
}

/// dim Ext^{s,t}(X ⊗ N) over `profile`, resolving N and using DX as coefficients.
pub fn tensor_ext_dim(
    x: &ModulePresentation,
    n: &ModulePresentation,
    profile: SubalgebraProfile,
    s: u32,
    t: i32,
    budget: &Budget,
) -> Result<usize> {
    let dx = dualize(x)?;
    let mut c = CoefficientExt::new(Resolution::new(n, profile)?, &dx)?;
    c.prepare(s, t, budget)?;
    c.dim(s, t)
}
