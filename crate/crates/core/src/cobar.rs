//! Brute-force Ext through the reduced cobar complex of A(n)_*.
//!
//! Cochains are words [x_1|...|x_s] of positive-degree monomials in the
//! ξ_i tensored with the dual of the module; the coboundary uses the
//! coproduct of the dual algebra and the coaction obtained by transposing
//! the action of each Milnor basis element. Only the admissible-basis change
//! and the Sq^k tables are shared with the rest of the crate.

use crate::error::{Error, Result};
use crate::gf2::{rank, BitVec};
use crate::module::{
    complete_actions, determined_squares, ActionTable, CompletionMode, ModulePresentation,
};
use crate::steenrod::{MilnorElt, SubalgebraProfile, TransitionTable};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Monomial ξ_1^{e_1} ... ξ_m^{e_m}, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualBasisElt(Vec<u32>);

impl DualBasisElt {
    pub fn new(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        DualBasisElt(e)
    }

    pub fn one() -> Self {
        DualBasisElt(Vec::new())
    }

    /// ξ_i (1-based).
    pub fn xi(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        DualBasisElt(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| e * ((1 << (i + 1)) - 1))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Product in A(n)_*, or None if it vanishes by truncation.
    pub fn mul(&self, other: &Self, profile: SubalgebraProfile) -> Option<Self> {
        let n = self.0.len().max(other.0.len());
        let mut e = vec![0; n];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0);
        }
        let e = DualBasisElt::new(e);
        in_profile(&e.0, profile).then_some(e)
    }
}

impl std::fmt::Display for DualBasisElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match e {
                1 => write!(f, "ξ{}", i + 1)?,
                _ => write!(f, "ξ{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

fn in_profile(e: &[u32], profile: SubalgebraProfile) -> bool {
    e.iter().enumerate().all(|(i, &x)| match profile {
        SubalgebraProfile::A(p) => {
            let i = i + 1;
            x == 0 || (i <= p as usize + 1 && x < 1 << (p as usize + 2 - i))
        }
        SubalgebraProfile::Truncated { .. } => true,
    })
}

/// All monomials of A(n)_* in degree `d`.
pub fn dual_basis(profile: SubalgebraProfile, d: u32) -> Vec<DualBasisElt> {
    fn go(
        i: usize,
        rest: u32,
        cur: &mut Vec<u32>,
        profile: SubalgebraProfile,
        out: &mut Vec<DualBasisElt>,
    ) {
        if i == 0 {
            if rest == 0 && in_profile(cur, profile) {
                out.push(DualBasisElt::new(cur.clone()));
            }
            return;
        }
        let w = (1u32 << i) - 1;
        for e in 0..=rest / w {
            cur[i - 1] = e;
            go(i - 1, rest - e * w, cur, profile, out);
        }
        cur[i - 1] = 0;
    }
    let mut top = 0;
    while (1u32 << (top + 1)) - 1 <= d.max(1) {
        top += 1;
    }
    let mut out = Vec::new();
    go(top, d, &mut vec![0; top], profile, &mut out);
    out.sort();
    out
}

type Tensor = BTreeSet<(DualBasisElt, DualBasisElt)>;

fn toggle<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

fn tensor_mul(a: &Tensor, b: &Tensor, profile: SubalgebraProfile) -> Tensor {
    let mut out = Tensor::new();
    for (a1, a2) in a {
        for (b1, b2) in b {
            if let (Some(l), Some(r)) = (a1.mul(b1, profile), a2.mul(b2, profile)) {
                toggle(&mut out, (l, r));
            }
        }
    }
    out
}

/// ψ(ξ_i^{2^k}) = Σ_j ξ_{i-j}^{2^{j+k}} ⊗ ξ_j^{2^k}.
fn coproduct_xi_power(i: usize, k: u32, profile: SubalgebraProfile) -> Tensor {
    let mut out = Tensor::new();
    for j in 0..=i {
        let mut l = vec![0; i];
        let mut r = vec![0; i];
        if j < i {
            l[i - j - 1] = 1 << (j as u32 + k);
        }
        if j > 0 {
            r[j - 1] = 1 << k;
        }
        let (l, r) = (DualBasisElt::new(l), DualBasisElt::new(r));
        if in_profile(&l.0, profile) && in_profile(&r.0, profile) {
            toggle(&mut out, (l, r));
        }
    }
    out
}

/// ψ(x) as a set of tensor pairs.
pub fn coproduct(x: &DualBasisElt, profile: SubalgebraProfile) -> Vec<(DualBasisElt, DualBasisElt)> {
    let mut acc = Tensor::from([(DualBasisElt::one(), DualBasisElt::one())]);
    for (i, &e) in x.0.iter().enumerate() {
        for k in 0..32 {
            if e >> k & 1 == 1 {
                acc = tensor_mul(&acc, &coproduct_xi_power(i + 1, k, profile), profile);
            }
        }
    }
    acc.into_iter().collect()
}

/// ψ(x) − x⊗1 − 1⊗x.
pub fn reduced_coproduct(
    x: &DualBasisElt,
    profile: SubalgebraProfile,
) -> Vec<(DualBasisElt, DualBasisElt)> {
    coproduct(x, profile)
        .into_iter()
        .filter(|(a, b)| !a.is_one() && !b.is_one())
        .collect()
}

/// Largest cochain space the oracle will build.
pub const MAX_COCHAIN_DIM: usize = 50_000;

/// The reduced cobar complex with coefficients in the dual of a finite module.
pub struct CobarComplex {
    profile: SubalgebraProfile,
    table: ActionTable,
    t_max: i32,
    // letters[d] = monomials of degree d
    letters: Vec<Vec<DualBasisElt>>,
    letter_index: HashMap<DualBasisElt, (u32, usize)>,
    // coaction[(d, m-position)] at letter degree k: module degree d - k positions
    sq_r: HashMap<(DualBasisElt, i32), Vec<BitVec>>,
}

/// Basis element of C^{s,t}: letters as (degree, index) and a module position.
type Cochain = (Vec<(u32, usize)>, i32, usize);

impl CobarComplex {
    pub fn new(m: &ModulePresentation, profile: SubalgebraProfile, t_max: i32) -> Result<Self> {
        let table = complete_actions(m, CompletionMode::Generate)?;
        let top = (t_max - table.min_degree()).max(0) as u32;
        let letters: Vec<Vec<DualBasisElt>> = (0..=top)
            .map(|d| if d == 0 { Vec::new() } else { dual_basis(profile, d) })
            .collect();
        let letter_index = letters
            .iter()
            .enumerate()
            .flat_map(|(d, v)| v.iter().enumerate().map(move |(i, x)| (x.clone(), (d as u32, i))))
            .collect();
        let mut c = CobarComplex {
            profile,
            table,
            t_max,
            letters,
            letter_index,
            sq_r: HashMap::new(),
        };
        c.build_actions(determined_squares(m))?;
        Ok(c)
    }

    // The matrix of Sq(R) out of each module degree, through admissible words.
    fn build_actions(&mut self, max_square: u32) -> Result<()> {
        let t = &self.table;
        let span = t.span();
        for k in 1..=span.min(self.letters.len().saturating_sub(1) as u32) {
            let trans = TransitionTable::new(k);
            for x in &self.letters[k as usize] {
                let words = trans.to_admissible(&MilnorElt::new(x.0.clone()));
                if let Some(w) = words.iter().find(|w| w.iter().any(|&l| l > max_square)) {
                    return Err(Error::Unsupported(format!(
                        "Sq({}) needs {:?}, beyond the squares the module determines",
                        x.0.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                        w
                    )));
                }
                for d in t.min_degree()..=t.max_degree() - k as i32 {
                    let src = t.dim(d);
                    let dst = t.dim(d + k as i32);
                    if src == 0 || dst == 0 {
                        continue;
                    }
                    let rows: Vec<BitVec> = (0..src)
                        .map(|i| {
                            let v = BitVec::unit(src, i);
                            let mut acc = BitVec::zeros(dst);
                            for w in &words {
                                acc.xor_assign(&t.apply_word(w, d, &v));
                            }
                            acc
                        })
                        .collect();
                    if rows.iter().any(|r| !r.is_zero()) {
                        self.sq_r.insert((x.clone(), d), rows);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn profile(&self) -> SubalgebraProfile {
        self.profile
    }

    fn letter(&self, (d, i): (u32, usize)) -> &DualBasisElt {
        &self.letters[d as usize][i]
    }

    /// Basis of C^{s,t}.
    fn basis(&self, s: u32, t: i32) -> Vec<Cochain> {
        let mut out = Vec::new();
        let t_ = &self.table;
        for d in t_.min_degree()..=t_.max_degree() {
            let w = t - d;
            if w < s as i32 || t_.dim(d) == 0 || (s == 0 && w != 0) {
                continue;
            }
            let mut words = Vec::new();
            self.words(s, w as u32, &mut Vec::new(), &mut words);
            for word in words {
                for p in 0..t_.dim(d) {
                    out.push((word.clone(), d, p));
                }
            }
        }
        out
    }

    fn words(&self, s: u32, w: u32, cur: &mut Vec<(u32, usize)>, out: &mut Vec<Vec<(u32, usize)>>) {
        if s == 0 {
            if w == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 1..=w - (s - 1) {
            for i in 0..self.letters[d as usize].len() {
                cur.push((d, i));
                self.words(s - 1, w - d, cur, out);
                cur.pop();
            }
        }
    }

    pub fn cochain_dim(&self, s: u32, t: i32) -> usize {
        self.basis(s, t).len()
    }

    /// Matrix of δ: C^{s,t} → C^{s+1,t}, one row per source basis element.
    pub fn coboundary(&self, s: u32, t: i32) -> Result<(Vec<BitVec>, usize)> {
        let src = self.basis(s, t);
        let dst = self.basis(s + 1, t);
        if src.len() > MAX_COCHAIN_DIM || dst.len() > MAX_COCHAIN_DIM {
            return Err(Error::Budget(format!(
                "cobar cochains in ({s},{t}) have dimension {}",
                src.len().max(dst.len())
            )));
        }
        let index: HashMap<&Cochain, usize> = dst.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut rows = Vec::with_capacity(src.len());
        for (word, d, p) in &src {
            let mut row = BitVec::zeros(dst.len());
            // coproduct on each letter
            for (pos, &l) in word.iter().enumerate() {
                for (a, b) in reduced_coproduct(self.letter(l), self.profile) {
                    let mut w = word.clone();
                    w.splice(pos..=pos, [self.letter_index[&a], self.letter_index[&b]]);
                    row.flip(index[&(w, *d, *p)]);
                }
            }
            // coaction: terms ξ^R ⊗ m'* with ⟨m*, Sq(R) m'⟩ = 1
            for k in 1..=(*d - self.table.min_degree()) {
                if k as usize >= self.letters.len() {
                    break;
                }
                for (i, x) in self.letters[k as usize].iter().enumerate() {
                    let Some(m) = self.sq_r.get(&(x.clone(), d - k)) else {
                        continue;
                    };
                    for (q, r) in m.iter().enumerate() {
                        if r.get(*p) {
                            let mut w = word.clone();
                            w.push((k as u32, i));
                            row.flip(index[&(w, d - k, q)]);
                        }
                    }
                }
            }
            rows.push(row);
        }
        Ok((rows, dst.len()))
    }

    /// dim H^{s,t}.
    pub fn ext_dim(&self, s: u32, t: i32) -> Result<usize> {
        if t > self.t_max {
            return Err(Error::Depth(format!("complex built for t <= {}", self.t_max)));
        }
        let c = self.cochain_dim(s, t);
        let (out, cols) = self.coboundary(s, t)?;
        let r_out = rank(&out, cols);
        let r_in = if s == 0 {
            0
        } else {
            let (inc, cols) = self.coboundary(s - 1, t)?;
            rank(&inc, cols)
        };
        Ok(c - r_in - r_out)
    }
}

/// Nonzero dims of Ext^{s,t}(M) for s <= s_max, t <= t_max.
pub fn cobar_ext(
    m: &ModulePresentation,
    profile: SubalgebraProfile,
    s_max: u32,
    t_max: i32,
) -> Result<BTreeMap<(u32, i32), usize>> {
    let c = CobarComplex::new(m, profile, t_max)?;
    let min = c.table.min_degree();
    // internal degrees are independent
    let per_t: Vec<Vec<((u32, i32), usize)>> = (min..=t_max)
        .into_par_iter()
        .map(|t| {
            // C^{s,t} vanishes once s exceeds t - min
            let top = s_max.min((t - min) as u32);
            let mut ranks = vec![0usize; top as usize + 2];
            for s in 0..=top {
                let (rows, cols) = c.coboundary(s, t)?;
                ranks[s as usize + 1] = rank(&rows, cols);
            }
            Ok((0..=top)
                .filter_map(|s| {
                    let dim = c.cochain_dim(s, t) - ranks[s as usize] - ranks[s as usize + 1];
                    (dim > 0).then_some(((s, t), dim))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_t.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::mat_mul;
    use crate::module::builtin;

    const A1: SubalgebraProfile = SubalgebraProfile::A(1);
    const A2: SubalgebraProfile = SubalgebraProfile::A(2);

    fn set(v: Vec<(DualBasisElt, DualBasisElt)>) -> BTreeSet<(DualBasisElt, DualBasisElt)> {
        v.into_iter().collect()
    }

    #[test]
    fn xi1_is_primitive() {
        let x = DualBasisElt::xi(1);
        assert_eq!(
            set(coproduct(&x, A2)),
            BTreeSet::from([(x.clone(), DualBasisElt::one()), (DualBasisElt::one(), x)])
        );
    }

    #[test]
    fn xi2_coproduct() {
        let x = DualBasisElt::xi(2);
        let one = DualBasisElt::one();
        let expect = BTreeSet::from([
            (x.clone(), one.clone()),
            (DualBasisElt::new(vec![2]), DualBasisElt::xi(1)),
            (one, x),
        ]);
        assert_eq!(set(coproduct(&DualBasisElt::xi(2), A2)), expect);
    }

    #[test]
    fn dual_dimensions() {
        for (p, n) in [(0u32, 2usize), (1, 8), (2, 64)] {
            let pr = SubalgebraProfile::A(p);
            let total: usize = (0..=pr.top_degree()).map(|d| dual_basis(pr, d).len()).sum();
            assert_eq!(total, n);
        }
    }

    fn triple_left(x: &DualBasisElt, p: SubalgebraProfile) -> BTreeSet<[DualBasisElt; 3]> {
        let mut out = BTreeSet::new();
        for (a, b) in coproduct(x, p) {
            for (c, d) in coproduct(&a, p) {
                toggle(&mut out, [c, d, b.clone()]);
            }
        }
        out
    }

    fn triple_right(x: &DualBasisElt, p: SubalgebraProfile) -> BTreeSet<[DualBasisElt; 3]> {
        let mut out = BTreeSet::new();
        for (a, b) in coproduct(x, p) {
            for (c, d) in coproduct(&b, p) {
                toggle(&mut out, [a.clone(), c, d]);
            }
        }
        out
    }

    #[test]
    fn coassociative_and_counital_on_a2() {
        for d in 0..=A2.top_degree() {
            for x in dual_basis(A2, d) {
                assert_eq!(triple_left(&x, A2), triple_right(&x, A2), "{x}");
                let c = coproduct(&x, A2);
                assert!(c.contains(&(x.clone(), DualBasisElt::one())));
                assert!(c.contains(&(DualBasisElt::one(), x.clone())));
                assert!(c.iter().all(|(a, b)| a.degree() + b.degree() == d));
            }
        }
    }

    // coproduct is dual to the Milnor product: ⟨ψ(ξ^T), Sq(R)⊗Sq(S)⟩ = coeff of Sq(T) in Sq(R)Sq(S)
    #[test]
    fn coproduct_dual_to_product() {
        let alg = crate::steenrod::Algebra::new(A2, A2.top_degree());
        for a in 0..alg.len() {
            for b in 0..alg.len() {
                let (ra, rb) = (alg.element(a), alg.element(b));
                let prod: BTreeSet<u32> = alg.product(a, b).iter().copied().collect();
                let d = ra.degree() + rb.degree();
                for x in dual_basis(A2, d) {
                    let pair = (
                        DualBasisElt::new(ra.exponents().to_vec()),
                        DualBasisElt::new(rb.exponents().to_vec()),
                    );
                    let lhs = coproduct(&x, A2).contains(&pair);
                    let idx = alg.index_of(&MilnorElt::new(x.0.clone())).unwrap() as u32;
                    assert_eq!(lhs, prod.contains(&idx));
                }
            }
        }
    }

    #[test]
    fn d_squared_is_zero() {
        for (name, p) in [("S0", A2), ("Ceta", A2), ("A1-00", A1), ("A1-00", A2), ("bo1", A2)] {
            let c = CobarComplex::new(&builtin(name).unwrap(), p, 9).unwrap();
            for t in 0..=9 {
                for s in 0..4 {
                    let (d0, _) = c.coboundary(s, t).unwrap();
                    let (d1, c2) = c.coboundary(s + 1, t).unwrap();
                    let prod = mat_mul(&d0, &d1, c2);
                    assert!(prod.iter().all(BitVec::is_zero), "{name} ({s},{t})");
                }
            }
        }
    }

    #[test]
    fn euler_characteristic() {
        let m = builtin("Ceta").unwrap();
        let c = CobarComplex::new(&m, A2, 8).unwrap();
        let h = cobar_ext(&m, A2, 20, 8).unwrap();
        for t in 0..=8 {
            let chi_c: i64 = (0..=t as u32 + 2)
                .map(|s| (-1i64).pow(s) * c.cochain_dim(s, t) as i64)
                .sum();
            let chi_h: i64 = h
                .iter()
                .filter(|((_, tt), _)| *tt == t)
                .map(|(&(s, _), &d)| (-1i64).pow(s) * d as i64)
                .sum();
            assert_eq!(chi_c, chi_h, "t = {t}");
        }
    }

    #[test]
    fn sphere_over_a2() {
        let h = cobar_ext(&builtin("S0").unwrap(), A2, 1, 8).unwrap();
        assert_eq!(h.get(&(0, 0)), Some(&1));
        for t in 0..=8 {
            let want = usize::from([1, 2, 4].contains(&t));
            assert_eq!(h.get(&(1, t)).copied().unwrap_or(0), want, "t = {t}");
        }
    }

    #[test]
    fn sphere_over_a0_tower() {
        let h = cobar_ext(&builtin("S0").unwrap(), SubalgebraProfile::A(0), 8, 8).unwrap();
        let expect: BTreeMap<(u32, i32), usize> = (0..=8).map(|s| ((s, s as i32), 1)).collect();
        assert_eq!(h, expect);
    }

    #[test]
    fn a1_00_free_over_a1() {
        let h = cobar_ext(&builtin("A1-00").unwrap(), A1, 10, 10).unwrap();
        assert_eq!(h, BTreeMap::from([((0, 0), 1)]));
    }

    #[test]
    fn refuses_undetermined_squares() {
        let r = CobarComplex::new(&builtin("bo2").unwrap(), SubalgebraProfile::A(3), 12);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn agrees_with_resolver() {
        use crate::resolver::{ext_chart, Resolution};
        for name in ["S0", "Ceta", "A1-00", "bo1"] {
            let m = builtin(name).unwrap();
            for p in [A1, A2] {
                let h = cobar_ext(&m, p, 13, 12).unwrap();
                let r = Resolution::resolve(&m, p, 13, 12).unwrap();
                assert_eq!(h, ext_chart(&r).dims(), "{name} over {p}");
            }
        }
    }
}
