//! On-disk resolution cache.
//!
//! JSON with a versioned header: format version, basis-order tag, profile,
//! and a SHA-256 of the module definition. Generators are stored with their
//! differentials as (algebra index, generator index) terms, which is why the
//! basis order is part of the header.

use super::resolution::{Generator, Resolution};
use crate::error::{Error, Result};
use crate::module::ModulePresentation;
use crate::steenrod::SubalgebraProfile;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;
pub const BASIS_ORDER: &str = "milnor-lex/generator-major";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    basis_order: String,
    profile: SubalgebraProfile,
    module_sha256: String,
    module_def: String,
    module_name: String,
    s_bound: u32,
    t_bound: i32,
    generators: Vec<Vec<Generator>>,
}

pub fn module_hash(m: &ModulePresentation) -> String {
    let digest = Sha256::digest(m.serialize().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn save_cache(res: &Resolution, path: &Path) -> Result<()> {
    let (gens, s_bound, t_bound) = res.raw_parts();
    let file = CacheFile {
        format_version: FORMAT_VERSION,
        basis_order: BASIS_ORDER.to_string(),
        profile: res.profile(),
        module_sha256: module_hash(res.module()),
        module_def: res.module().serialize(),
        module_name: res.module().name().to_string(),
        s_bound,
        t_bound,
        generators: gens.to_vec(),
    };
    let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
    // write then rename so a crash never leaves a half-written cache
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_cache(path: &Path) -> Result<Resolution> {
    let text = std::fs::read_to_string(path)?;
    let file: CacheFile =
        serde_json::from_str(&text).map_err(|e| Error::Cache(format!("corrupt cache: {e}")))?;
    if file.format_version != FORMAT_VERSION || file.basis_order != BASIS_ORDER {
        return Err(Error::Cache(format!(
            "cache written with format {} / basis order {:?}, this build uses {} / {:?}",
            file.format_version, file.basis_order, FORMAT_VERSION, BASIS_ORDER
        )));
    }
    let module = ModulePresentation::parse_named(&file.module_name, &file.module_def)?;
    if module_hash(&module) != file.module_sha256 {
        return Err(Error::Cache("module hash mismatch".into()));
    }
    let mut res = Resolution::new(&module, file.profile)?;
    let algebra_len = res.algebra().len() as u32;
    for (s, gs) in file.generators.iter().enumerate() {
        for g in gs {
            let bad = if s == 0 {
                g.diff.iter().any(|&(_, m)| m as usize >= module.dim())
            } else {
                g.diff.iter().any(|&(a, h)| {
                    a >= algebra_len || h as usize >= file.generators[s - 1].len()
                })
            };
            if bad {
                return Err(Error::Cache(format!("corrupt differential in filtration {s}")));
            }
        }
    }
    res.restore(file.generators, file.s_bound, file.t_bound);
    Ok(res)
}

/// Load `path` if it holds a resolution of `module` over `profile`, else start fresh.
pub fn load_or_new(
    path: &Path,
    module: &ModulePresentation,
    profile: SubalgebraProfile,
) -> Result<Resolution> {
    if path.exists() {
        let res = load_cache(path)?;
        if res.profile() == profile && module_hash(res.module()) == module_hash(module) {
            return Ok(res);
        }
        log::warn!("cache at {} is for a different module or profile; starting over", path.display());
    }
    Resolution::new(module, profile)
}
