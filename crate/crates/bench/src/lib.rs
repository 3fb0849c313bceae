//! Inputs shared by the benchmarks in `benches/`.

use a2ext_core::module::builtin;
use a2ext_core::steenrod::milnor_basis;
use a2ext_core::{MilnorElt, ModulePresentation, SubalgebraProfile};

pub fn module(name: &str) -> ModulePresentation {
    builtin(name).expect("builtin module")
}

/// Every Milnor basis element of A(p).
pub fn basis(p: u32) -> Vec<MilnorElt> {
    let profile = SubalgebraProfile::A(p);
    (0..=profile.top_degree())
        .flat_map(|d| milnor_basis(profile, d))
        .collect()
}
