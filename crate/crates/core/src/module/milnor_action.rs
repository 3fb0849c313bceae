//! Action of algebra basis elements on a finite module.
//!
//! For A(p) every basis element is written as a sum of words in
//! Sq^1, Sq^2, ..., Sq^{2^p}, so only those squares of the module are used.
//! This matters for definition files that describe an A(p)-module and leave
//! the higher indecomposable squares unspecified.

use super::actions::ActionTable;
use crate::gf2::{BitVec, Echelon, PivotOrder};
use crate::steenrod::{Algebra, SubalgebraProfile, TransitionTable};

type Matrices = Vec<Vec<BitVec>>;

/// Matrices of every basis element of an algebra acting on a module.
pub struct MilnorActions {
    // matrices[a][d - min_degree]: rows indexed by the degree-d basis
    matrices: Vec<Matrices>,
    min_degree: i32,
}

impl MilnorActions {
    pub fn new(t: &ActionTable, alg: &Algebra) -> Self {
        let matrices = match alg.profile() {
            SubalgebraProfile::A(p) => via_generators(t, alg, p).0,
            SubalgebraProfile::Truncated { .. } => via_admissible(t, alg),
        };
        MilnorActions {
            matrices,
            min_degree: t.min_degree(),
        }
    }

    /// Rows of the action of basis element `a` out of degree `d`.
    pub fn matrix(&self, a: usize, d: i32) -> &[BitVec] {
        let o = d - self.min_degree;
        if o < 0 || o as usize >= self.matrices[a].len() {
            &[]
        } else {
            &self.matrices[a][o as usize]
        }
    }

    /// Apply basis element `a` to a vector in degree `d`.
    pub fn apply(&self, a: usize, d: i32, v: &BitVec, target_dim: usize) -> BitVec {
        let mut out = BitVec::zeros(target_dim);
        let m = self.matrix(a, d);
        for i in v.iter_ones() {
            out.xor_assign(&m[i]);
        }
        out
    }
}

fn identity(t: &ActionTable) -> Matrices {
    (t.min_degree()..=t.max_degree())
        .map(|d| (0..t.dim(d)).map(|r| BitVec::unit(t.dim(d), r)).collect())
        .collect()
}

fn zero(t: &ActionTable, e: u32) -> Matrices {
    (t.min_degree()..=t.max_degree())
        .map(|d| {
            (0..t.dim(d))
                .map(|_| BitVec::zeros(t.dim(d + e as i32)))
                .collect()
        })
        .collect()
}

// Sq^k ∘ m, where m raises degree by e.
fn after_square(t: &ActionTable, k: u32, e: u32, m: &Matrices) -> Matrices {
    m.iter()
        .enumerate()
        .map(|(o, rows)| {
            let d = t.min_degree() + o as i32;
            rows.iter().map(|r| t.apply(k, d + e as i32, r)).collect()
        })
        .collect()
}

fn add_into(acc: &mut Matrices, m: &Matrices) {
    for (a, b) in acc.iter_mut().zip(m) {
        for (x, y) in a.iter_mut().zip(b) {
            x.xor_assign(y);
        }
    }
}

fn via_admissible(t: &ActionTable, alg: &Algebra) -> Vec<Matrices> {
    let span = t.span();
    let mut tables: Vec<Option<TransitionTable>> = (0..=alg.max_degree()).map(|_| None).collect();
    (0..alg.len())
        .map(|a| {
            let elt = alg.element(a);
            let e = elt.degree();
            let mut acc = zero(t, e);
            if e > span {
                return acc;
            }
            let words = tables[e as usize]
                .get_or_insert_with(|| TransitionTable::new(e))
                .to_admissible(elt);
            for w in words {
                let mut m = identity(t);
                let mut deg = 0;
                for &l in w.iter().rev() {
                    m = after_square(t, l, deg, &m);
                    deg += l;
                }
                add_into(&mut acc, &m);
            }
            acc
        })
        .collect()
}

/// Per basis element: its action, built from a spanning family of words
/// Sq^{2^i} · w. Also returns, for each generator Sq^{2^i} and basis
/// element θ, the action of the word Sq^{2^i} θ computed by composition,
/// which must equal the action of the product Sq^{2^i}θ when the squares
/// really define an A(p)-module.
fn via_generators(t: &ActionTable, alg: &Algebra, p: u32) -> (Vec<Matrices>, Vec<(usize, usize, Matrices)>) {
    let mut actions: Vec<Option<Matrices>> = vec![None; alg.len()];
    let mut composites = Vec::new();
    actions[alg.degree_range(0).start] = Some(identity(t));
    let gens: Vec<(u32, usize)> = (0..=p)
        .filter_map(|i| {
            let k = 1u32 << i;
            alg.index_of(&crate::steenrod::MilnorElt::sq(k)).map(|a| (k, a))
        })
        .collect();
    for e in 1..=alg.max_degree() as i64 {
        let range = alg.degree_range(e);
        let n = range.len();
        // candidate words Sq^k · θ with θ a basis element of degree e - k
        let mut cands: Vec<(BitVec, Matrices, usize, usize)> = Vec::new();
        for &(k, g) in &gens {
            for b in alg.degree_range(e - k as i64) {
                let prod = BitVec::from_indices(
                    n,
                    alg.product(g, b).iter().map(|&c| c as usize - range.start),
                );
                let m = after_square(t, k, (e - k as i64) as u32, actions[b].as_ref().unwrap());
                cands.push((prod, m, g, b));
            }
        }
        let rows: Vec<BitVec> = cands.iter().map(|c| c.0.clone()).collect();
        let ech = Echelon::with_transforms(rows, n, PivotOrder::First);
        assert_eq!(ech.rank(), n, "A({p}) is generated by its 2-power squares");
        for (j, a) in range.clone().enumerate() {
            let x = ech.solve(&BitVec::unit(n, j)).unwrap();
            let mut acc = zero(t, e as u32);
            for c in x.iter_ones() {
                add_into(&mut acc, &cands[c].1);
            }
            actions[a] = Some(acc);
        }
        for (_, m, g, b) in cands {
            composites.push((g, b, m));
        }
    }
    (actions.into_iter().map(Option::unwrap).collect(), composites)
}

/// Pairs (Sq^{2^i}, θ) on which Sq^{2^i}(θ x) differs from (Sq^{2^i}θ) x,
/// i.e. where the 2-power squares fail to define an A(p)-module.
pub fn subalgebra_violations(t: &ActionTable, p: u32) -> Vec<(u32, crate::steenrod::MilnorElt)> {
    let alg = Algebra::new(SubalgebraProfile::A(p), u32::MAX);
    let (actions, composites) = via_generators(t, &alg, p);
    let mut out = Vec::new();
    for (g, b, m) in composites {
        let e = alg.degree_of(g) + alg.degree_of(b);
        let mut expected = zero(t, e);
        for &c in alg.product(g, b) {
            add_into(&mut expected, &actions[c as usize]);
        }
        if expected != m {
            out.push((alg.degree_of(g), alg.element(b).clone()));
        }
    }
    out
}
