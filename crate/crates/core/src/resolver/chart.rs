//! Ext charts with s_g labels and Hopf-element edges.

use super::resolution::Resolution;
use crate::steenrod::MilnorElt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Generator `g` of filtration `s`, written s_g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub s: u32,
    pub g: usize,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}_{}", self.s, self.g)
    }
}

/// Multiplication by h_i from `source` to `target` (one filtration up).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HopfEdge {
    pub i: u32,
    pub source: Label,
    pub target: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtChart {
    pub name: String,
    pub profile: String,
    pub s_bound: u32,
    pub t_bound: i32,
    /// (s, t) -> labels, each list in discovery order.
    pub cells: BTreeMap<(u32, i32), Vec<Label>>,
    /// t of every label.
    pub degrees: BTreeMap<Label, i32>,
    pub edges: Vec<HopfEdge>,
}

impl ExtChart {
    pub fn dim(&self, s: u32, t: i32) -> usize {
        self.cells.get(&(s, t)).map_or(0, Vec::len)
    }

    pub fn labels(&self, s: u32, t: i32) -> &[Label] {
        self.cells.get(&(s, t)).map_or(&[], Vec::as_slice)
    }

    /// Nonzero dims keyed by (s, t).
    pub fn dims(&self) -> BTreeMap<(u32, i32), usize> {
        self.cells.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn stem(&self, l: Label) -> i32 {
        self.degrees[&l] - l.s as i32
    }

    /// Records "s g t stem", one per generator, ordered by s then g.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (l, t) in &self.degrees {
            writeln!(out, "{} {} {} {}", l.s, l.g, t, t - l.s as i32).unwrap();
        }
        out
    }

    /// Lines "h<i> s_g -> s'_g'".
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            writeln!(out, "h{} {} -> {}", e.i, e.source, e.target).unwrap();
        }
        out
    }
}

/// Labels for every computed generator, plus Hopf edges h_0..h_3.
pub fn ext_chart(res: &Resolution) -> ExtChart {
    let mut cells: BTreeMap<(u32, i32), Vec<Label>> = BTreeMap::new();
    let mut degrees = BTreeMap::new();
    for s in 0..=res.s_bound() {
        for (g, gen) in res.generators(s).iter().enumerate() {
            let l = Label { s, g };
            cells.entry((s, gen.degree)).or_default().push(l);
            degrees.insert(l, gen.degree);
        }
    }
    ExtChart {
        name: res.module().name().to_string(),
        profile: res.profile().name(),
        s_bound: res.s_bound(),
        t_bound: res.t_bound(),
        cells,
        degrees,
        edges: hopf_actions(res),
    }
}

/// h_i · x contains y iff Sq(2^i)·x is a term of d(y).
///
/// In a minimal resolution d lands in the augmentation ideal; Milnor basis
/// elements other than Sq(2^j) span the decomposables, so the Sq(2^i)
/// coefficient is the indecomposable part that detects h_i.
pub fn hopf_actions(res: &Resolution) -> Vec<HopfEdge> {
    let alg = res.algebra();
    let squares: Vec<(u32, u32)> = (0..4)
        .filter_map(|i| {
            alg.index_of(&MilnorElt::sq(1 << i))
                .map(|a| (i, a as u32))
        })
        .collect();
    let mut edges = Vec::new();
    for s in 1..=res.s_bound() {
        for (g, gen) in res.generators(s).iter().enumerate() {
            for &(theta, h) in &gen.diff {
                if let Some(&(i, _)) = squares.iter().find(|&&(_, a)| a == theta) {
                    edges.push(HopfEdge {
                        i,
                        source: Label { s: s - 1, g: h as usize },
                        target: Label { s, g },
                    });
                }
            }
        }
    }
    edges.sort();
    edges
}

/// Classes of the sphere's Ext over A(2) that have names, by (s, stem).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub name: &'static str,
    pub s: u32,
    pub stem: i32,
}

impl NamedClass {
    pub fn t(&self) -> i32 {
        self.stem + self.s as i32
    }
}

pub const NAMED_CLASSES: [NamedClass; 7] = [
    NamedClass { name: "g", s: 4, stem: 20 },
    NamedClass { name: "b30^4", s: 8, stem: 48 },
    NamedClass { name: "e0r", s: 10, stem: 47 },
    NamedClass { name: "b30^8", s: 16, stem: 96 },
    NamedClass { name: "wgr", s: 19, stem: 95 },
    NamedClass { name: "v2^20h1", s: 21, stem: 121 },
    NamedClass { name: "g^6", s: 24, stem: 120 },
];

pub fn named_class(name: &str) -> Option<NamedClass> {
    NAMED_CLASSES.iter().copied().find(|c| c.name == name)
}
