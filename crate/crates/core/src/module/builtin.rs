//! Built-in modules: the sample definition files and the small cell complexes
//! used to build them.

use super::presentation::ModulePresentation;
use crate::error::{Error, Result};

pub const A1_00_DEF: &str = "8\n\n0 1 2 3 3 4 5 6\n\n0 1 1 1\n0 2 1 2\n1 2 1 4\n1 4 1 6\n2 1 1 3\n2 2 1 5\n3 2 1 6\n4 1 1 5\n5 2 1 7\n6 1 1 7\n";

pub const BO1_DEF: &str = "4\n\n0 4 6 7\n\n0 4 1 1\n0 6 1 2\n0 7 1 3\n1 2 1 2\n1 3 1 3\n2 1 1 3\n";

pub const BO2_DEF: &str = "11\n\n0 4 6 7 8 10 11 12 13 14 15\n\n0 4 1 1 \n0 6 1 2 \n0 7 1 3 \n1 2 1 2 \n1 3 1 3 \n2 1 1 3 \n2 4 1 5 \n2 5 1 6 \n3 4 1 6 \n3 6 1 8 \n4 2 1 5 \n4 3 1 6 \n4 4 1 7 \n4 5 1 8 \n4 6 1 9 \n4 7 1 10 \n5 1 1 6 \n6 2 1 8 \n7 1 1 8 \n7 2 1 9 \n7 3 1 10 \n9 1 1 10 \n";

const CETA_DEF: &str = "2\n\n0 2\n\n0 2 1 1\n";

const Y_DEF: &str = "4\n\n0 1 2 3\n\n0 1 1 1\n0 2 1 2\n1 2 1 3\n2 1 1 3\n";

pub const BUILTIN_NAMES: [&str; 9] = [
    "S0", "Ceta", "Y", "A1-00", "A1-01", "A1-10", "A1-11", "bo1", "bo2",
];

/// Sq^4 on the degree-0 generator (i) and on the degree-2 generator (j).
fn a1(i: bool, j: bool) -> ModulePresentation {
    let mut m = ModulePresentation::parse(A1_00_DEF).expect("sample parses");
    if i {
        m.set_action(0, 4, [5]).unwrap();
    }
    if j {
        m.set_action(2, 4, [7]).unwrap();
    }
    m
}

pub fn builtin(name: &str) -> Result<ModulePresentation> {
    let m = match name {
        "S0" => ModulePresentation::sphere(),
        "Ceta" => ModulePresentation::parse(CETA_DEF)?,
        "Y" => ModulePresentation::parse(Y_DEF)?,
        "A1-00" => a1(false, false),
        "A1-01" => a1(false, true),
        "A1-10" => a1(true, false),
        "A1-11" => a1(true, true),
        "bo1" => ModulePresentation::parse(BO1_DEF)?,
        "bo2" => ModulePresentation::parse(BO2_DEF)?,
        _ => return Err(Error::UnknownModule(name.to_string())),
    };
    Ok(m.with_name(name))
}
