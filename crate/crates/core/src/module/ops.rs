//! Dual, tensor product and suspension of finite modules.

use super::actions::{complete_actions, determined_squares, ActionTable, CompletionMode};
use super::presentation::ModulePresentation;
use crate::error::Result;
use crate::gf2::BitVec;

pub fn suspend(m: &ModulePresentation, k: i32) -> ModulePresentation {
    m.suspend(k)
}

/// Matrices of χ(Sq^k) for k = 0..=span, from χ(Sq^k) = Σ_{i=1..k} Sq^i χ(Sq^{k-i}).
fn antipode_actions(t: &ActionTable) -> Vec<Vec<Vec<BitVec>>> {
    let span = t.span() as i32;
    let mut chi: Vec<Vec<Vec<BitVec>>> = Vec::new();
    for k in 0..=span {
        let layer = (0..=span)
            .map(|o| {
                let d = t.min_degree() + o;
                (0..t.dim(d))
                    .map(|r| {
                        let v = BitVec::unit(t.dim(d), r);
                        if k == 0 {
                            return v;
                        }
                        let mut acc = BitVec::zeros(t.dim(d + k));
                        for i in 1..=k {
                            let rest = &chi[(k - i) as usize][o as usize];
                            let mut w = BitVec::zeros(t.dim(d + k - i));
                            for j in v.iter_ones() {
                                w.xor_assign(&rest[j]);
                            }
                            acc.xor_assign(&t.apply(i as u32, d + k - i, &w));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        chi.push(layer);
    }
    chi
}

/// The dual module: degrees negated, Sq^k acting by the transpose of χ(Sq^k).
pub fn dualize(m: &ModulePresentation) -> Result<ModulePresentation> {
    let t = complete_actions(m, CompletionMode::Generate)?;
    let chi = antipode_actions(&t);
    let degrees: Vec<i32> = m.degrees().iter().map(|d| -d).collect();
    let dual = ActionTable::from_fn(&degrees, |j, k| {
        // Sq^k g_j^* = Σ_i <χ(Sq^k) g_i, g_j> g_i^*, over g_i in degree d_j - k
        let dj = m.degree(j);
        let di = dj - k as i32;
        let o = di - t.min_degree();
        if o < 0 || k > t.span() {
            return Vec::new();
        }
        let rows = &chi[k as usize][o as usize];
        let pj = t.position(j);
        t.basis(di)
            .iter()
            .zip(rows)
            .filter(|(_, row)| row.get(pj))
            .map(|(&i, _)| i)
            .collect()
    });
    Ok(dual.to_presentation(&format!("D{}", m.name()), determined_squares(m)))
}

/// Tensor product with the Cartan diagonal; generator g_i ⊗ h_j has index i·dim(N) + j.
pub fn tensor(m: &ModulePresentation, n: &ModulePresentation) -> Result<ModulePresentation> {
    let tm = complete_actions(m, CompletionMode::Generate)?;
    let tn = complete_actions(n, CompletionMode::Generate)?;
    let dn = n.dim();
    let degrees: Vec<i32> = m
        .degrees()
        .iter()
        .flat_map(|a| n.degrees().iter().map(move |b| a + b))
        .collect();
    let sq_m: Vec<Vec<Vec<usize>>> = (0..m.dim())
        .map(|i| (0..=tm.span()).map(|k| img(&tm, i, k)).collect())
        .collect();
    let sq_n: Vec<Vec<Vec<usize>>> = (0..dn)
        .map(|j| (0..=tn.span()).map(|k| img(&tn, j, k)).collect())
        .collect();
    let t = ActionTable::from_fn(&degrees, |g, k| {
        let (i, j) = (g / dn, g % dn);
        let mut out = std::collections::BTreeSet::new();
        for a in 0..=k.min(tm.span()) {
            let b = k - a;
            if b > tn.span() {
                continue;
            }
            for &x in &sq_m[i][a as usize] {
                for &y in &sq_n[j][b as usize] {
                    let z = x * dn + y;
                    if !out.remove(&z) {
                        out.insert(z);
                    }
                }
            }
        }
        out.into_iter().collect()
    });
    let max_square = determined_squares(m).min(determined_squares(n));
    Ok(t.to_presentation(&format!("{}*{}", m.name(), n.name()), max_square))
}

fn img(t: &ActionTable, i: usize, k: u32) -> Vec<usize> {
    if k == 0 {
        vec![i]
    } else {
        t.image(i, k)
    }
}

/// Iterated tensor product; the empty product is the sphere.
pub fn tensor_all(ms: &[ModulePresentation]) -> Result<ModulePresentation> {
    let mut acc = ModulePresentation::sphere();
    for (n, m) in ms.iter().enumerate() {
        acc = if n == 0 { m.clone() } else { tensor(&acc, m)? };
    }
    Ok(acc)
}
