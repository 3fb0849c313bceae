//! Finite modules over the Steenrod algebra in Bruner's definition-file format.

pub mod actions;
pub mod builtin;
pub mod iso;
pub mod milnor_action;
pub mod ops;
pub mod presentation;

pub use actions::{
    adem_violations, check_consistency, determined_squares, complete_actions, ActionTable, AdemViolation,
    CompletionConflict, CompletionMode, ConsistencyReport,
};
pub use milnor_action::{subalgebra_violations, MilnorActions};
pub use builtin::{builtin, BUILTIN_NAMES};
pub use iso::{iso_check, ModuleMap};
pub use ops::{dualize, suspend, tensor, tensor_all};
pub use presentation::{ActionRecord, ModulePresentation};

#[cfg(test)]
mod tests {
    use super::builtin::{A1_00_DEF, BO1_DEF, BO2_DEF};
    use super::*;
    use crate::gf2::{rank, BitVec};
    use crate::steenrod::{Algebra, SubalgebraProfile};

    fn b(name: &str) -> ModulePresentation {
        builtin(name).unwrap()
    }

    #[test]
    fn sample_files_parse() {
        let a = ModulePresentation::parse(A1_00_DEF).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.degrees(), &[0, 1, 2, 3, 3, 4, 5, 6]);
        assert_eq!(a.record_count(), 10);
        assert_eq!(a.action(1, 4).unwrap().iter().copied().collect::<Vec<_>>(), vec![6]);
        let bo1 = ModulePresentation::parse(BO1_DEF).unwrap();
        assert_eq!(bo1.degrees(), &[0, 4, 6, 7]);
        assert_eq!(bo1.record_count(), 6);
        assert!(bo1.action(0, 4).is_some());
        let bo2 = ModulePresentation::parse(BO2_DEF).unwrap();
        assert_eq!(bo2.record_count(), 22);
    }

    #[test]
    fn round_trips() {
        for text in [A1_00_DEF, BO1_DEF, BO2_DEF] {
            let m = ModulePresentation::parse(text).unwrap();
            assert_eq!(ModulePresentation::parse(&m.serialize()).unwrap(), m);
        }
        // the paper's layout is already canonical for these two
        assert_eq!(b("A1-00").serialize(), A1_00_DEF);
        assert_eq!(b("bo1").serialize(), BO1_DEF);
    }

    #[test]
    fn builtins_consistent() {
        for name in BUILTIN_NAMES {
            let r = check_consistency(&b(name), CompletionMode::Generate);
            assert!(r.passed(), "{name}: {r}");
        }
        assert!(matches!(builtin("bo3"), Err(crate::Error::UnknownModule(_))));
    }

    #[test]
    fn a1_strict_mode_fails() {
        let r = check_consistency(&b("A1-00"), CompletionMode::Strict);
        assert!(!r.adem_violations.is_empty());
    }

    #[test]
    fn derived_sq3() {
        let t = complete_actions(&b("A1-00"), CompletionMode::Generate).unwrap();
        assert_eq!(t.image(0, 3), vec![3]);
        let s = complete_actions(&b("S0"), CompletionMode::Generate).unwrap();
        assert_eq!(s.span(), 0);
        // bo2 lists "3 6 1 8"; the derived Sq^6 must agree
        let t = complete_actions(&b("bo2"), CompletionMode::Generate).unwrap();
        assert_eq!(t.image(3, 6), vec![8]);
    }

    #[test]
    fn mutations_classified() {
        let bad = A1_00_DEF.replace("0 2 1 2", "0 2 1 3");
        let r = check_consistency(&ModulePresentation::parse(&bad).unwrap(), CompletionMode::Generate);
        assert_eq!(r.degree_errors.len(), 1);
        assert_eq!(r.degree_errors[0].generator, 0);

        let bad = A1_00_DEF.replace("2 1 1 3\n", "");
        let r = check_consistency(&ModulePresentation::parse(&bad).unwrap(), CompletionMode::Generate);
        assert!(r.degree_errors.is_empty());
        assert!(!r.adem_violations.is_empty());
    }

    #[test]
    fn bo2_is_an_a2_module() {
        let r = check_consistency(&b("bo2"), CompletionMode::Generate);
        assert_eq!(r.scope, Some(2));
        // with the omitted Sq^8 on the bottom cell it is consistent over the whole algebra
        let mut full = b("bo2");
        full.set_action(0, 8, [4]).unwrap();
        let r = check_consistency(&full, CompletionMode::Generate);
        assert_eq!(r.scope, None);
        assert!(r.passed(), "{r}");
        // and the A(2)-check notices a broken Sq^4
        let mut broken = b("bo2");
        broken.set_action(4, 4, [8]).unwrap();
        let r = check_consistency(&broken, CompletionMode::Generate);
        assert!(!r.subalgebra_violations.is_empty());
    }

    #[test]
    fn bo2_products_stay_consistent() {
        let x = tensor(&b("bo2"), &b("Ceta")).unwrap();
        assert!(complete_actions(&x, CompletionMode::Generate).is_ok());
        assert!(check_consistency(&x, CompletionMode::Generate).passed());
        let d = dualize(&b("bo2")).unwrap();
        assert!(check_consistency(&d, CompletionMode::Generate).passed());
    }

    #[test]
    fn listed_conflict_detected() {
        let bad = BO2_DEF.replace("3 6 1 8", "3 6 1 7").replace("7 1 1 8 \n", "");
        let m = ModulePresentation::parse(&bad).unwrap();
        assert!(matches!(
            complete_actions(&m, CompletionMode::Generate),
            Err(crate::Error::Completion { .. }) | Err(crate::Error::Consistency(_))
        ));
    }

    #[test]
    fn suspension_of_bo1() {
        assert_eq!(suspend(&b("bo1"), 8).degrees(), &[8, 12, 14, 15]);
    }

    #[test]
    fn dual_of_sphere() {
        assert_eq!(dualize(&b("S0")).unwrap(), b("S0"));
    }

    #[test]
    fn a1_dualities() {
        let iso = |x: &ModulePresentation, y: &ModulePresentation| iso_check(x, y).unwrap().is_some();
        let sd = |n: &str| suspend(&dualize(&b(n)).unwrap(), 6);
        assert!(iso(&sd("A1-11"), &b("A1-00")));
        assert!(iso(&sd("A1-00"), &b("A1-11")));
        assert!(iso(&sd("A1-01"), &b("A1-01")));
        assert!(iso(&sd("A1-10"), &b("A1-10")));
        assert!(iso(&b("A1-00"), &b("A1-00")));
        assert!(!iso(&b("A1-00"), &b("A1-01")));
    }

    #[test]
    fn a1_models_distinct_and_free() {
        let names = ["A1-00", "A1-01", "A1-10", "A1-11"];
        for (x, n) in names.iter().enumerate() {
            for m in &names[x + 1..] {
                assert!(iso_check(&b(n), &b(m)).unwrap().is_none(), "{n} vs {m}");
            }
        }
        let alg = Algebra::new(SubalgebraProfile::A(1), 6);
        for n in names {
            let t = complete_actions(&b(n), CompletionMode::Generate).unwrap();
            let acts = MilnorActions::new(&t, &alg);
            // images of g0 under all eight A(1) basis elements, as vectors in M
            let rows: Vec<BitVec> = (0..alg.len())
                .map(|a| {
                    let d = alg.degree_of(a) as i32;
                    let img = acts.matrix(a, 0)[0].clone();
                    let mut v = BitVec::zeros(8);
                    for p in img.iter_ones() {
                        v.set(t.basis(d)[p], true);
                    }
                    v
                })
                .collect();
            assert_eq!(rank(&rows, 8), 8, "{n}");
        }
    }

    #[test]
    fn double_dual() {
        for name in BUILTIN_NAMES {
            let m = b(name);
            let dd = dualize(&dualize(&m).unwrap()).unwrap();
            assert!(iso_check(&dd, &m).unwrap().is_some(), "{name}");
        }
    }

    #[test]
    fn tensor_examples() {
        let a = b("A1-00");
        let t = tensor(&b("S0"), &a).unwrap();
        assert!(iso_check(&t, &a).unwrap().is_some());
        let x = tensor(&a, &dualize(&a).unwrap()).unwrap();
        assert_eq!(x.dim(), 64);
        assert_eq!((x.min_degree(), x.max_degree()), (-6, 6));
        assert_eq!(x.degrees().iter().filter(|&&d| d == 6).count(), 1);
        assert_eq!(x.degrees().iter().filter(|&&d| d == -6).count(), 1);
        let bb = tensor(&b("bo1"), &b("bo1")).unwrap();
        assert_eq!(bb.dim(), 16);
        assert!(check_consistency(&bb, CompletionMode::Generate).passed());
        assert!(check_consistency(&x, CompletionMode::Strict).passed());
    }

    #[test]
    fn cartan_associativity() {
        let c = b("Ceta");
        let l = tensor(&tensor(&c, &c).unwrap(), &c).unwrap();
        let r = tensor(&c, &tensor(&c, &c).unwrap()).unwrap();
        assert!(iso_check(&l, &r).unwrap().is_some());
    }

    #[test]
    fn dual_of_tensor() {
        let pairs = [("Ceta", "Y"), ("Y", "bo1"), ("Ceta", "A1-10"), ("bo1", "bo1")];
        for (m, n) in pairs {
            let (m, n) = (b(m), b(n));
            let l = dualize(&tensor(&m, &n).unwrap()).unwrap();
            let r = tensor(&dualize(&n).unwrap(), &dualize(&m).unwrap()).unwrap();
            assert!(iso_check(&l, &r).unwrap().is_some(), "{} {}", m.name(), n.name());
        }
    }

    #[test]
    fn outputs_respect_degrees() {
        let a = b("A1-01");
        for m in [
            dualize(&a).unwrap(),
            tensor(&a, &b("bo1")).unwrap(),
            suspend(&a, 5),
        ] {
            assert!(m.degree_violations().is_empty());
        }
    }
}
