//! E1 page of the algebraic tmf spectral sequence.
//!
//! E1^{s,t,n} = ⊕ Ext_{A(2)}^{s, t-8(i_1+...+i_n)}(X ⊗ bo_{i_1} ⊗ ... ⊗ bo_{i_n}),
//! drawn at (t-s-n, s+n). In display coordinates (stem, y) a summand with
//! indices I contributes Ext^{y-n, stem+y-8ΣI}. Each group is computed as
//! Ext(X, D(bo_I)) from one shared resolution of X.

use crate::error::{Error, Result};
use crate::module::{builtin, dualize, tensor_all, ModulePresentation};
use crate::resolver::{Budget, Coefficients, Resolution};
use crate::steenrod::SubalgebraProfile;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

/// Tensor factors bo_{i_1} ⊗ ... ⊗ bo_{i_n}, indices sorted (the factors commute).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandKey {
    indices: Vec<u32>,
}

impl SummandKey {
    pub fn new(mut indices: Vec<u32>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Input("bo indices start at 1".into()));
        }
        indices.sort_unstable();
        Ok(SummandKey { indices })
    }

    pub fn base() -> Self {
        SummandKey { indices: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.indices.len() as u32
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn weight(&self) -> u32 {
        self.indices.iter().sum()
    }

    /// Marker: • for n = 0, o1 and o2 for bo_1 and bo_2, (x) for bo_1 ⊗ bo_1.
    pub fn glyph(&self) -> String {
        match self.indices.as_slice() {
            [] => "•".into(),
            [1] => "o1".into(),
            [2] => "o2".into(),
            [1, 1] => "(x)".into(),
            ix => format!(
                "[{}]",
                ix.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }

    /// Bidegree of the summand's own Ext group feeding display cell (stem, y).
    pub fn source(&self, stem: i32, y: u32) -> Option<(u32, i32)> {
        let s = y.checked_sub(self.n())?;
        Some((s, stem + y as i32 - 8 * self.weight() as i32))
    }

    /// Whether the vanishing lines for X = A1 ⊗ DA1 allow a nonzero group at
    /// (stem, y). With a bo factor Ext^{s,t} = 0 for 5s > (t - s) + 6; without
    /// one h₂ survives and the line is one higher, 5s > (t - s) + 11.
    pub fn allowed(&self, stem: i32, y: u32) -> bool {
        let slack = if self.indices.is_empty() { 11 } else { 6 };
        match self.source(stem, y) {
            Some((s, t)) => 5 * s as i32 <= t - s as i32 + slack,
            None => false,
        }
    }
}

impl std::fmt::Display for SummandKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "X");
        }
        write!(f, "X")?;
        for i in &self.indices {
            write!(f, "*bo{i}")?;
        }
        Ok(())
    }
}

/// Display window: stems and y = s + n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub stems: RangeInclusive<i32>,
    pub filtrations: RangeInclusive<u32>,
}

impl Window {
    pub fn new(stems: RangeInclusive<i32>, filtrations: RangeInclusive<u32>) -> Self {
        Window { stems, filtrations }
    }

    pub fn cells(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.stems
            .clone()
            .flat_map(move |x| self.filtrations.clone().map(move |y| (x, y)))
    }
}

/// Multi-indices min_part <= i_1 <= ... <= i_n with sum `total`.
fn partitions(n: u32, total: u32, min_part: u32, out: &mut Vec<u32>, acc: &mut Vec<Vec<u32>>) {
    if n == 0 {
        if total == 0 {
            acc.push(out.clone());
        }
        return;
    }
    let mut p = min_part;
    while p * n <= total {
        out.push(p);
        partitions(n - 1, total - p, p, out, acc);
        out.pop();
        p += 1;
    }
}

fn keys_with(n: u32, weight: u32) -> Vec<SummandKey> {
    let mut acc = Vec::new();
    partitions(n, weight, 1, &mut Vec::new(), &mut acc);
    acc.into_iter().map(|indices| SummandKey { indices }).collect()
}

/// Summands that the vanishing line allows somewhere in the window. Pure arithmetic.
pub fn enumerate_summands(window: &Window, max_n: Option<u32>) -> Vec<SummandKey> {
    let (x_max, y_max) = (*window.stems.end(), *window.filtrations.end());
    let mut out = Vec::new();
    let n_top = y_max.min(max_n.unwrap_or(u32::MAX));
    for n in 0..=n_top {
        // weight is at least n and, for n >= 1, 8·weight <= x_max + n + 6
        let w_top = (x_max + n as i32 + 6).max(0) as u32 / 8;
        for w in n..=w_top.max(n) {
            for key in keys_with(n, w) {
                if window.cells().any(|(x, y)| key.allowed(x, y)) {
                    out.push(key);
                }
            }
        }
        if n > 0 && 7 * n as i32 > x_max + 6 {
            break;
        }
    }
    out.sort_by(|a, b| (a.n(), &a.indices).cmp(&(b.n(), &b.indices)));
    out
}

/// Every summand that can be nonzero in the window for a module bounded below by `min_degree`.
pub fn all_summands(window: &Window, min_degree: i32, max_n: Option<u32>) -> Vec<SummandKey> {
    let x_max = *window.stems.end();
    let y_max = *window.filtrations.end();
    let mut out = Vec::new();
    for n in 0..=y_max.min(max_n.unwrap_or(u32::MAX)) {
        // the summand's own stem is stem + n - 8·weight and must be >= min_degree
        let top = x_max + n as i32 - min_degree;
        if top < 8 * n as i32 {
            continue;
        }
        for w in n..=(top / 8) as u32 {
            out.extend(keys_with(n, w));
        }
    }
    out
}

/// The bo_i modules this crate knows.
pub fn bo(i: u32) -> Result<ModulePresentation> {
    match i {
        1 => builtin("bo1"),
        2 => builtin("bo2"),
        _ => Err(Error::Unsupported(format!("bo{i} is not available (only bo1, bo2)"))),
    }
}

fn factors(key: &SummandKey) -> Result<ModulePresentation> {
    let mods = key.indices.iter().map(|&i| bo(i)).collect::<Result<Vec<_>>>()?;
    tensor_all(&mods)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Entry {
    pub key: SummandKey,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Table {
    pub name: String,
    pub window: Window,
    /// (stem, y) -> nonzero entries
    pub cells: BTreeMap<(i32, u32), Vec<E1Entry>>,
}

impl E1Table {
    /// Total dimension of cell (stem, y).
    pub fn total(&self, stem: i32, y: u32) -> usize {
        self.cells.get(&(stem, y)).map_or(0, |v| v.iter().map(|e| e.dim).sum())
    }

    /// Dimension contributed by summands with this glyph.
    pub fn count(&self, stem: i32, y: u32, glyph: &str) -> usize {
        self.cells.get(&(stem, y)).map_or(0, |v| {
            v.iter().filter(|e| e.key.glyph() == glyph).map(|e| e.dim).sum()
        })
    }

    /// "stem s n indices dim" lines.
    pub fn records(&self) -> String {
        let mut out = String::new();
        for (&(x, y), entries) in &self.cells {
            for e in entries {
                let ix = if e.key.indices.is_empty() {
                    "-".to_string()
                } else {
                    e.key.indices.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                };
                writeln!(out, "{x} {y} {} {ix} {}", e.key.n(), e.dim).unwrap();
            }
        }
        out
    }

    /// Grid with rows y (descending) and stem columns, each cell listing glyphs.
    pub fn render_text(&self) -> String {
        let stems: Vec<i32> = self.window.stems.clone().collect();
        let text = |x: i32, y: u32| -> String {
            let Some(entries) = self.cells.get(&(x, y)) else {
                return "0".into();
            };
            let mut parts = Vec::new();
            for e in entries {
                parts.push(e.key.glyph().repeat(e.dim));
            }
            parts.join(" ")
        };
        let width = stems
            .iter()
            .flat_map(|&x| self.window.filtrations.clone().map(move |y| (x, y)))
            .map(|(x, y)| text(x, y).chars().count())
            .max()
            .unwrap_or(1)
            .max(4);
        let mut out = String::new();
        writeln!(out, "{}", self.name).unwrap();
        write!(out, "{:>4} |", "s").unwrap();
        for x in &stems {
            write!(out, " {x:^width$} |").unwrap();
        }
        writeln!(out).unwrap();
        for y in self.window.filtrations.clone().rev() {
            write!(out, "{y:>4} |").unwrap();
            for &x in &stems {
                let t = text(x, y);
                let pad = width - t.chars().count();
                write!(out, " {t}{} |", " ".repeat(pad)).unwrap();
            }
            writeln!(out).unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct E1Options {
    /// Skip cells the vanishing line rules out (valid for X = A1 ⊗ DA1).
    pub prune: bool,
    pub max_n: Option<u32>,
}

/// Resolution of X over A(2) deep enough for the window.
pub fn resolve_for_window(x: &ModulePresentation, window: &Window, budget: &Budget) -> Result<Resolution> {
    let mut res = Resolution::new(x, SubalgebraProfile::A(2))?;
    let (x_max, y_max) = (*window.stems.end(), *window.filtrations.end());
    res.extend(y_max + 1, x_max + y_max as i32, budget)?;
    Ok(res)
}

/// E1 table from a resolution of X over A(2) (extended as needed).
pub fn assemble_e1_with(
    res: &mut Resolution,
    window: &Window,
    opts: E1Options,
    budget: &Budget,
) -> Result<E1Table> {
    if res.profile() != SubalgebraProfile::A(2) {
        return Err(Error::Input("the algebraic tmf E1 page is over A(2)".into()));
    }
    let keys = if opts.prune {
        enumerate_summands(window, opts.max_n)
    } else {
        all_summands(window, res.min_degree(), opts.max_n)
    };
    let (x_max, y_max) = (*window.stems.end(), *window.filtrations.end());
    if res.s_bound() < y_max + 1 || res.t_bound() < x_max + y_max as i32 {
        res.extend(res.s_bound().max(y_max + 1), res.t_bound().max(x_max + y_max as i32), budget)?;
    }
    let mut cells: BTreeMap<(i32, u32), Vec<E1Entry>> = BTreeMap::new();
    for key in keys {
        let coeff = Coefficients::new(&dualize(&factors(&key)?)?, res.algebra())?;
        for (x, y) in window.cells() {
            if opts.prune && !key.allowed(x, y) {
                continue;
            }
            let Some((s, t)) = key.source(x, y) else { continue };
            let dim = coeff.dim(res, s, t)?;
            if dim > 0 {
                cells.entry((x, y)).or_default().push(E1Entry {
                    key: key.clone(),
                    dim,
                });
            }
        }
    }
    Ok(E1Table {
        name: res.module().name().to_string(),
        window: window.clone(),
        cells,
    })
}

pub fn assemble_e1(
    x: &ModulePresentation,
    window: &Window,
    opts: E1Options,
    budget: &Budget,
) -> Result<E1Table> {
    let mut res = resolve_for_window(x, window, budget)?;
    assemble_e1_with(&mut res, window, opts, budget)
}

/// One group Ext^{s,t}(X ⊗ bo_{factors}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTarget {
    pub s: u32,
    pub t: i32,
    pub factors: Vec<u32>,
}

impl std::fmt::Display for ZeroTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ext^{{{},{}}}(X", self.s, self.t)?;
        for i in &self.factors {
            write!(f, "*bo{i}")?;
        }
        write!(f, ")")
    }
}

/// The groups whose vanishing makes b30^4 at (8, 56) a permanent cycle.
pub fn b30_4_checklist() -> Vec<ZeroTarget> {
    vec![
        ZeroTarget { s: 8, t: 48, factors: vec![1] },
        ZeroTarget { s: 7, t: 40, factors: vec![1, 1] },
        ZeroTarget { s: 6, t: 32, factors: vec![1, 1, 1] },
        ZeroTarget { s: 5, t: 24, factors: vec![1, 1, 1, 1] },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroGroupResult {
    pub target: ZeroTarget,
    pub dim: usize,
}

/// Compute every group in the checklist.
pub fn zero_group_checklist(
    x: &ModulePresentation,
    checklist: &[ZeroTarget],
    budget: &Budget,
) -> Result<Vec<ZeroGroupResult>> {
    let mut res = Resolution::new(x, SubalgebraProfile::A(2))?;
    let mut out = Vec::new();
    for target in checklist {
        let key = SummandKey::new(target.factors.clone())?;
        let coeff = Coefficients::new(&dualize(&factors(&key)?)?, res.algebra())?;
        let (s_need, t_need) = coeff.required(target.s, target.t);
        if res.s_bound() < s_need || res.t_bound() < t_need {
            res.extend(res.s_bound().max(s_need), res.t_bound().max(t_need), budget)?;
        }
        out.push(ZeroGroupResult {
            target: target.clone(),
            dim: coeff.dim(&res, target.s, target.t)?,
        });
    }
    Ok(out)
}

/// A ⊗ DA for one of the A1 models.
pub fn a1_smash_dual(model: &str) -> Result<ModulePresentation> {
    let a = builtin(model)?;
    let x = crate::module::tensor(&a, &dualize(&a)?)?;
    Ok(x.with_name(&format!("{model}*D{model}")))
}
