//! Chain maps from the resolution of a module to the resolution of F₂, and the
//! products they induce.

use super::chart::Label;
use super::resolution::{cancel_pairs, Resolution, Term};
use crate::error::{Error, Result};
use crate::gf2::{Echelon, PivotOrder};
use std::collections::HashMap;
use std::fmt::Write as _;

/// A lift of the class dual to generator `class` of F^M_{s0}: level k sends
/// generators of F^M_{s0+k} to elements of F^{S⁰}_k, lowering degree by t0.
#[derive(Clone, Debug)]
pub struct ChainMapLift {
    pub class: Label,
    pub t0: i32,
    /// maps[k][g] = image of generator g of F^M_{s0+k}
    pub maps: Vec<Vec<Vec<Term>>>,
}

impl ChainMapLift {
    pub fn depth(&self) -> u32 {
        self.maps.len() as u32 - 1
    }
}

/// Lift the cocycle dual to `class` through `depth` levels.
pub fn lift_cocycle(
    res_m: &Resolution,
    class: Label,
    res_s0: &Resolution,
    depth: u32,
    order: PivotOrder,
) -> Result<ChainMapLift> {
    let s0 = class.s;
    let t0 = res_m
        .generators(s0)
        .get(class.g)
        .ok_or_else(|| Error::Input(format!("no generator {class}")))?
        .degree;
    if s0 + depth > res_m.s_bound() || depth > res_s0.s_bound() {
        return Err(Error::Depth(format!(
            "need filtration {} for the module and {depth} for the sphere, have {} and {}",
            s0 + depth,
            res_m.s_bound(),
            res_s0.s_bound()
        )));
    }
    let t_need = res_m.t_bound() - t0;
    if res_s0.t_bound() < t_need {
        return Err(Error::Depth(format!(
            "sphere resolved through t = {}, need t = {t_need}",
            res_s0.t_bound()
        )));
    }
    if res_s0.module().dim() != 1 || res_s0.min_degree() != 0 {
        return Err(Error::Input("target resolution must be of the sphere".into()));
    }
    let mut maps: Vec<Vec<Vec<Term>>> = Vec::new();
    // level 0: the chosen generator goes to the unit of F_0, others to zero
    let unit = res_s0.algebra().degree_range(0).start as u32;
    maps.push(
        (0..res_m.generators(s0).len())
            .map(|g| if g == class.g { vec![(unit, 0)] } else { Vec::new() })
            .collect(),
    );
    for k in 1..=depth {
        let mut solvers: HashMap<i32, Echelon> = HashMap::new();
        let mut level = Vec::new();
        for gen in res_m.generators(s0 + k) {
            let t = gen.degree - t0;
            // f_{k-1}(d g)
            let mut rhs: Vec<Term> = Vec::new();
            for &(theta, h) in &gen.diff {
                rhs.extend(res_s0.act_terms(theta as usize, &maps[k as usize - 1][h as usize]));
            }
            let rhs = cancel_pairs(rhs);
            if rhs.is_empty() {
                level.push(Vec::new());
                continue;
            }
            let ech = solvers.entry(t).or_insert_with(|| {
                let (rows, cols) = res_s0.differential_matrix(k, t);
                Echelon::with_transforms(rows, cols, order)
            });
            let target = res_s0.from_terms(k - 1, t, &rhs);
            let x = ech.solve(&target).ok_or_else(|| {
                Error::Invariant(format!(
                    "chain map equation has no solution at level {k}, t = {t}"
                ))
            })?;
            level.push(res_s0.to_terms(k, t, &x));
        }
        maps.push(level);
    }
    Ok(ChainMapLift {
        class,
        t0,
        maps,
    })
}

/// One product y · x = Σ results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRecord {
    pub y: Label,
    pub results: Vec<Label>,
}

/// For every generator y of F^{S⁰}_k (k <= depth) with nonzero product, the
/// generators of F^M_{s0+k} whose image has the coefficient of y·1.
pub fn product_table(lift: &ChainMapLift, res_s0: &Resolution) -> Vec<ProductRecord> {
    let unit = res_s0.algebra().degree_range(0).start as u32;
    let mut out = Vec::new();
    for k in 0..=lift.depth() {
        let mut by_y: std::collections::BTreeMap<usize, Vec<Label>> = Default::default();
        for (g, img) in lift.maps[k as usize].iter().enumerate() {
            for &(theta, y) in img {
                if theta == unit {
                    by_y.entry(y as usize).or_default().push(Label {
                        s: lift.class.s + k,
                        g,
                    });
                }
            }
        }
        for (y, results) in by_y {
            out.push(ProductRecord {
                y: Label { s: k, g: y },
                results,
            });
        }
    }
    out
}

/// Map.aug lines "s g1 g": y = (s)_(g1) times the lifted class gives generator g
/// of filtration s0 + s. One line per (y, g) pair.
pub fn map_aug(records: &[ProductRecord]) -> String {
    let mut out = String::new();
    for r in records {
        for l in &r.results {
            writeln!(out, "{} {} {}", r.y.s, r.y.g, l.g).unwrap();
        }
    }
    out
}
