//! Minimal resolutions, Ext charts, Hopf actions and products.

pub mod cache;
pub mod chart;
pub mod coeff;
pub mod lift;
pub mod resolution;

pub use cache::{load_cache, load_or_new, module_hash, save_cache};
pub use chart::{
    ext_chart, hopf_actions, named_class, ExtChart, HopfEdge, Label, NamedClass, NAMED_CLASSES,
};
pub use coeff::{tensor_ext_dim, CoefficientExt, Coefficients};
pub use lift::{lift_cocycle, map_aug, product_table, ChainMapLift, ProductRecord};
pub use resolution::{Budget, Generator, Resolution, Term};

/// Exact structural checks: d∘d = 0 and minimality on every generator.
pub fn verify_resolution(res: &Resolution) -> crate::Result<()> {
    use crate::Error;
    let alg = res.algebra();
    for s in 1..=res.s_bound() {
        for (g, gen) in res.generators(s).iter().enumerate() {
            if gen.diff.iter().any(|&(theta, _)| alg.degree_of(theta as usize) == 0) {
                return Err(Error::Invariant(format!("d({s}_{g}) has a unit term")));
            }
            // d(d g)
            if s == 1 {
                let t = res.table();
                let mut acc = crate::gf2::BitVec::zeros(t.dim(gen.degree));
                let acts = crate::module::MilnorActions::new(t, alg);
                for &(theta, h) in &gen.diff {
                    let hg = &res.generators(0)[h as usize];
                    let v = crate::gf2::BitVec::from_indices(
                        t.dim(hg.degree),
                        hg.diff.iter().map(|&(_, m)| t.position(m as usize)),
                    );
                    acc.xor_assign(&acts.apply(theta as usize, hg.degree, &v, t.dim(gen.degree)));
                }
                if !acc.is_zero() {
                    return Err(Error::Invariant(format!("d∘d({s}_{g}) != 0")));
                }
            } else {
                let mut terms = Vec::new();
                for &(theta, h) in &gen.diff {
                    terms.extend(res.act_terms(theta as usize, &res.generators(s - 1)[h as usize].diff));
                }
                if !resolution::cancel_pairs(terms).is_empty() {
                    return Err(Error::Invariant(format!("d∘d({s}_{g}) != 0")));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::PivotOrder;
    use crate::module::{builtin, ModulePresentation};
    use crate::steenrod::SubalgebraProfile;

    const A0: SubalgebraProfile = SubalgebraProfile::A(0);
    const A1: SubalgebraProfile = SubalgebraProfile::A(1);
    const A2: SubalgebraProfile = SubalgebraProfile::A(2);

    fn b(n: &str) -> ModulePresentation {
        builtin(n).unwrap()
    }

    #[test]
    fn sphere_over_a2_hopf_generators() {
        let r = Resolution::resolve(&b("S0"), A2, 3, 12).unwrap();
        let t1: Vec<i32> = r.generators(1).iter().map(|g| g.degree).collect();
        assert_eq!(t1, vec![1, 2, 4]);
        verify_resolution(&r).unwrap();
        let c = ext_chart(&r);
        assert_eq!(c.dim(0, 0), 1);
        assert!(c.edges.contains(&HopfEdge {
            i: 0,
            source: Label { s: 0, g: 0 },
            target: Label { s: 1, g: 0 },
        }));
    }

    #[test]
    fn sphere_over_a0_is_a_tower() {
        let r = Resolution::resolve(&b("S0"), A0, 5, 5).unwrap();
        for s in 0..=5u32 {
            for t in 0..=5 {
                assert_eq!(r.ext_dim(s, t), usize::from(t == s as i32), "({s},{t})");
            }
        }
    }

    #[test]
    fn a1_models_free_over_a1() {
        for n in ["A1-00", "A1-01", "A1-10", "A1-11"] {
            let r = Resolution::resolve(&b(n), A1, 10, 20).unwrap();
            let total: usize = (0..=10).map(|s| r.generators(s).len()).sum();
            assert_eq!(total, 1, "{n}");
            assert_eq!(r.ext_dim(0, 0), 1);
        }
    }

    #[test]
    fn exactness_and_structure() {
        for n in ["S0", "Ceta", "A1-00", "bo1"] {
            let r = Resolution::resolve(&b(n), A2, 5, 16).unwrap();
            verify_resolution(&r).unwrap();
            for s in 0..5 {
                for t in r.min_degree()..=16 {
                    let ker = r.kernel(s, t).len();
                    let im = r.image(s + 1, t).rank();
                    assert_eq!(ker, im, "{n} ({s},{t})");
                }
            }
        }
    }

    #[test]
    fn a1_00_stem_six_and_h2() {
        let r = Resolution::resolve(&b("A1-00"), A2, 3, 20).unwrap();
        let c = ext_chart(&r);
        let x = c.labels(1, 7);
        assert_eq!(x.len(), 1);
        let x = x[0];
        assert!(c.edges.iter().any(|e| e.i == 2 && e.source == x));
        assert!(!c.edges.iter().any(|e| e.i == 0 && e.source == Label { s: 0, g: 0 }));
        assert_eq!(c.dim(1, 1), 0);
    }

    #[test]
    fn resume_matches_fresh() {
        let m = b("Ceta");
        let fresh = Resolution::resolve(&m, A2, 6, 20).unwrap();
        let mut r = Resolution::resolve(&m, A2, 4, 14).unwrap();
        r.extend(6, 20, &Budget::default()).unwrap();
        assert_eq!(ext_chart(&r), ext_chart(&fresh));
    }

    #[test]
    fn budget_abort_is_clean() {
        let mut r = Resolution::new(&b("S0"), A2).unwrap();
        let err = r.extend(4, 30, &Budget { max_cell_dim: 12 });
        assert!(matches!(err, Err(crate::Error::Budget(_))), "{err:?}");
        let t = r.t_bound();
        assert!(t >= 0 && t < 30);
        let fresh = Resolution::resolve(&b("S0"), A2, 4, t).unwrap();
        assert_eq!(ext_chart(&r).dims(), ext_chart(&fresh).dims());
        r.extend(4, 30, &Budget::default()).unwrap();
        let full = Resolution::resolve(&b("S0"), A2, 4, 30).unwrap();
        assert_eq!(ext_chart(&r), ext_chart(&full));
    }

    #[test]
    fn truncation_does_not_change_ext_in_range() {
        let m = b("bo2");
        let full = Resolution::resolve(&m, A2, 4, 10).unwrap();
        let t = crate::module::complete_actions(&m, crate::module::CompletionMode::Generate)
            .unwrap()
            .truncated(10);
        let alg = full.algebra_arc();
        let mut cut = Resolution::with_algebra(m.clone(), t, alg);
        cut.extend(4, 10, &Budget::default()).unwrap();
        assert_eq!(ext_chart(&cut).dims(), ext_chart(&full).dims());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let r = Resolution::resolve(&b("A1-00"), A2, 4, 18).unwrap();
        save_cache(&r, &path).unwrap();
        let l = load_cache(&path).unwrap();
        assert_eq!(ext_chart(&l), ext_chart(&r));
        // resuming from the cache equals a fresh computation
        let mut l = l;
        l.extend(6, 22, &Budget::default()).unwrap();
        let fresh = Resolution::resolve(&b("A1-00"), A2, 6, 22).unwrap();
        assert_eq!(ext_chart(&l), ext_chart(&fresh));

        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("milnor-lex/generator-major", "other-order")).unwrap();
        assert!(matches!(load_cache(&path), Err(crate::Error::Cache(_))));
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(load_cache(&path), Err(crate::Error::Cache(_))));
    }

    #[test]
    fn unit_lift_is_identity() {
        let s0 = Resolution::resolve(&b("S0"), A2, 4, 14).unwrap();
        let lift = lift_cocycle(&s0, Label { s: 0, g: 0 }, &s0, 4, PivotOrder::First).unwrap();
        for rec in product_table(&lift, &s0) {
            assert_eq!(rec.results, vec![rec.y]);
        }
        let n: usize = (0..=4).map(|s| s0.generators(s).len()).sum();
        assert_eq!(product_table(&lift, &s0).len(), n);
    }

    #[test]
    fn products_independent_of_lift_and_match_hopf() {
        let m = Resolution::resolve(&b("A1-00"), A2, 5, 20).unwrap();
        let s0 = Resolution::resolve(&b("S0"), A2, 5, 20).unwrap();
        let chart = ext_chart(&m);
        let s0_chart = ext_chart(&s0);
        let h: Vec<Label> = (0..3)
            .map(|i| s0_chart.labels(1, 1 << i)[0])
            .collect();
        for s in 0..4u32 {
            for (g, _) in m.generators(s).iter().enumerate() {
                let x = Label { s, g };
                let a = lift_cocycle(&m, x, &s0, 5 - s, PivotOrder::First).unwrap();
                let bl = lift_cocycle(&m, x, &s0, 5 - s, PivotOrder::Last).unwrap();
                let pa = product_table(&a, &s0);
                assert_eq!(pa, product_table(&bl, &s0), "{x}");
                for (i, hi) in h.iter().enumerate() {
                    let via_lift: Vec<Label> = pa
                        .iter()
                        .find(|r| r.y == *hi)
                        .map(|r| r.results.clone())
                        .unwrap_or_default();
                    let mut via_edges: Vec<Label> = chart
                        .edges
                        .iter()
                        .filter(|e| e.i == i as u32 && e.source == x)
                        .map(|e| e.target)
                        .collect();
                    via_edges.sort();
                    assert_eq!(via_lift, via_edges, "h{i} * {x}");
                }
            }
        }
    }

    #[test]
    fn lift_needs_depth() {
        let m = Resolution::resolve(&b("A1-00"), A2, 2, 10).unwrap();
        let s0 = Resolution::resolve(&b("S0"), A2, 2, 10).unwrap();
        assert!(matches!(
            lift_cocycle(&m, Label { s: 0, g: 0 }, &s0, 3, PivotOrder::First),
            Err(crate::Error::Depth(_))
        ));
    }

    #[test]
    fn adjoint_route_matches_direct() {
        let budget = Budget::default();
        let cases = [("Ceta", "bo1"), ("A1-00", "Ceta"), ("Y", "bo1")];
        for (x, n) in cases {
            let (x, n) = (b(x), b(n));
            let direct = Resolution::resolve(&crate::module::tensor(&x, &n).unwrap(), A2, 4, 16).unwrap();
            let dx = crate::module::dualize(&x).unwrap();
            let mut c = CoefficientExt::new(Resolution::new(&n, A2).unwrap(), &dx).unwrap();
            c.prepare(4, 16, &budget).unwrap();
            for s in 0..=4 {
                for t in -6..=16 {
                    assert_eq!(c.dim(s, t).unwrap(), direct.ext_dim(s, t), "({s},{t})");
                }
            }
        }
    }
}
