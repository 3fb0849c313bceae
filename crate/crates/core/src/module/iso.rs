//! Searching for module isomorphisms.

use super::actions::{complete_actions, ActionTable, CompletionMode};
use super::presentation::ModulePresentation;
use crate::error::Result;
use crate::gf2::{image_and_kernel, rank, BitVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A degree-preserving map: `images[i]` is the image of generator i of the
/// source, as a set of generators of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub images: Vec<Vec<usize>>,
}

/// Exhaustive search is used when Hom has at most this dimension.
const EXHAUSTIVE_DIM: usize = 16;
const RANDOM_TRIALS: usize = 4096;

/// An isomorphism M → N commuting with every Sq^{2^i}, if one is found.
///
/// Computes Hom_A(M, N) in degree 0 by linear algebra, then looks for an
/// invertible element: exhaustively for small Hom, otherwise by seeded
/// random sampling (a `None` from the sampler is not a proof).
pub fn iso_check(m: &ModulePresentation, n: &ModulePresentation) -> Result<Option<ModuleMap>> {
    let mut dm = m.degrees().to_vec();
    let mut dn = n.degrees().to_vec();
    dm.sort_unstable();
    dn.sort_unstable();
    if dm != dn {
        return Ok(None);
    }
    let tm = complete_actions(m, CompletionMode::Generate)?;
    let tn = complete_actions(n, CompletionMode::Generate)?;
    let hom = hom_basis(&tm, &tn);
    let layout = Layout::new(&tm);

    let test = |coeffs: &[bool]| -> Option<ModuleMap> {
        let mut f = BitVec::zeros(layout.total);
        for (c, h) in coeffs.iter().zip(&hom) {
            if *c {
                f.xor_assign(h);
            }
        }
        layout.is_invertible(&f, &tm).then(|| layout.to_map(&f, &tm, &tn))
    };

    if hom.len() <= EXHAUSTIVE_DIM {
        for mask in 1u64..(1u64 << hom.len()) {
            let coeffs: Vec<bool> = (0..hom.len()).map(|b| mask >> b & 1 == 1).collect();
            if let Some(f) = test(&coeffs) {
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1505);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<bool> = (0..hom.len()).map(|_| rng.gen()).collect();
        if let Some(f) = test(&coeffs) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

// Unknowns: for each degree d, a dim M_d × dim N_d block, row-major.
struct Layout {
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(tm: &ActionTable) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for d in tm.min_degree()..=tm.max_degree() {
            offsets.push(total);
            let k = tm.dim(d);
            total += k * k;
        }
        Layout { offsets, total }
    }

    fn var(&self, tm: &ActionTable, d: i32, row: usize, col: usize) -> usize {
        self.offsets[(d - tm.min_degree()) as usize] + row * tm.dim(d) + col
    }

    fn block(&self, f: &BitVec, tm: &ActionTable, d: i32) -> Vec<BitVec> {
        let k = tm.dim(d);
        (0..k)
            .map(|r| BitVec::from_indices(k, (0..k).filter(|&c| f.get(self.var(tm, d, r, c)))))
            .collect()
    }

    fn is_invertible(&self, f: &BitVec, tm: &ActionTable) -> bool {
        (tm.min_degree()..=tm.max_degree()).all(|d| {
            let k = tm.dim(d);
            rank(&self.block(f, tm, d), k) == k
        })
    }

    fn to_map(&self, f: &BitVec, tm: &ActionTable, tn: &ActionTable) -> ModuleMap {
        let mut images = vec![Vec::new(); tm.total_dim()];
        for d in tm.min_degree()..=tm.max_degree() {
            let block = self.block(f, tm, d);
            for (r, &g) in tm.basis(d).iter().enumerate() {
                let mut img: Vec<usize> = block[r].iter_ones().map(|c| tn.basis(d)[c]).collect();
                img.sort_unstable();
                images[g] = img;
            }
        }
        ModuleMap { images }
    }
}

/// Basis of degree-0 module maps M → N (same degreewise dimensions assumed),
/// as vectors in the block layout.
fn hom_basis(tm: &ActionTable, tn: &ActionTable) -> Vec<BitVec> {
    let layout = Layout::new(tm);
    // one column per unknown; equations f(Sq x) = Sq f(x) for 2-power squares
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); layout.total];
    let mut eq = 0usize;
    let span = tm.span();
    let mut k = 1;
    while k <= span {
        for d in tm.min_degree()..=tm.max_degree() {
            let e = d + k as i32;
            let (src, dst) = (tm.dim(d), tm.dim(e));
            if src == 0 || dst == 0 {
                continue;
            }
            let sm = tm.matrix(k, d);
            let sn = tn.matrix(k, d);
            for x in 0..src {
                for c in 0..dst {
                    // (Sq x) f, column c:  Σ_y Sq_m[x][y] f_e[y][c]
                    for y in sm[x].iter_ones() {
                        columns[layout.var(tm, e, y, c)].push(eq);
                    }
                    // f(x) Sq, column c:  Σ_z f_d[x][z] Sq_n[z][c]
                    for (z, row) in sn.iter().enumerate() {
                        if row.get(c) {
                            columns[layout.var(tm, d, x, z)].push(eq);
                        }
                    }
                    eq += 1;
                }
            }
        }
        k *= 2;
    }
    let rows: Vec<BitVec> = columns
        .into_iter()
        .map(|c| BitVec::from_indices(eq, c))
        .collect();
    image_and_kernel(&rows, eq).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn different_degrees_not_isomorphic() {
        let a = ModulePresentation::parse("1\n0\n").unwrap();
        let b = ModulePresentation::parse("1\n1\n").unwrap();
        assert_eq!(iso_check(&a, &b).unwrap(), None);
    }

    #[test]
    fn ceta_vs_split() {
        let ceta = ModulePresentation::parse("2\n0 2\n0 2 1 1\n").unwrap();
        let split = ModulePresentation::parse("2\n0 2\n").unwrap();
        assert!(iso_check(&ceta, &ceta).unwrap().is_some());
        assert!(iso_check(&ceta, &split).unwrap().is_none());
    }
}
