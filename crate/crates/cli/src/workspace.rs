//! Workspace directory: one subdirectory per installed module.
//!
//! ```text
//! <root>/.a2ext.lock
//! <root>/<name>/def           definition file
//! <root>/<name>/<profile>.json   resolution cache
//! ```

use a2ext_core::module::{builtin, ModulePresentation};
use a2ext_core::resolver::{load_or_new, save_cache};
use a2ext_core::{Resolution, SubalgebraProfile};
use anyhow::{bail, Context, Result};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

pub struct Workspace {
    root: PathBuf,
}

impl Workspace {
    pub fn new(root: PathBuf) -> Self {
        Workspace { root }
    }

    pub fn module_dir(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn def_path(&self, name: &str) -> PathBuf {
        self.module_dir(name).join("def")
    }

    pub fn cache_path(&self, name: &str, profile: SubalgebraProfile) -> PathBuf {
        self.module_dir(name).join(format!("{}.json", profile.name()))
    }

    pub fn lock(&self) -> Result<WorkspaceLock> {
        fs::create_dir_all(&self.root)
            .with_context(|| format!("creating workspace {}", self.root.display()))?;
        let path = self.root.join(".a2ext.lock");
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                writeln!(f, "{}", std::process::id())?;
                Ok(WorkspaceLock { path })
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => bail!(
                "workspace {} is locked by another process (remove {} if it is stale)",
                self.root.display(),
                path.display()
            ),
            Err(e) => Err(e.into()),
        }
    }

    pub fn install(&self, name: &str, m: &ModulePresentation) -> Result<PathBuf> {
        let dir = self.module_dir(name);
        fs::create_dir_all(&dir)?;
        let path = self.def_path(name);
        fs::write(&path, m.serialize())?;
        Ok(path)
    }

    /// An installed module.
    pub fn installed(&self, name: &str) -> Result<ModulePresentation> {
        let path = self.def_path(name);
        if !path.exists() {
            bail!(
                "module {name} is not installed in {} (run newmodule first)",
                self.root.display()
            );
        }
        read_module(&path, name)
    }

    /// An installed module, a definition file, or a builtin, in that order.
    pub fn module(&self, spec: &str) -> Result<ModulePresentation> {
        if self.def_path(spec).exists() {
            return self.installed(spec);
        }
        let path = Path::new(spec);
        if path.is_file() {
            let name = path.file_stem().map_or(spec.into(), |s| s.to_string_lossy().into_owned());
            return read_module(path, &name);
        }
        Ok(builtin(spec)?)
    }

    pub fn resolution(&self, name: &str, profile: SubalgebraProfile) -> Result<Resolution> {
        let m = self.installed(name)?;
        Ok(load_or_new(&self.cache_path(name, profile), &m, profile)?)
    }

    /// The cached resolution, which must exist.
    pub fn cached(&self, name: &str, profile: SubalgebraProfile) -> Result<Resolution> {
        let path = self.cache_path(name, profile);
        if !path.exists() {
            bail!("no {} resolution of {name} yet (run dims first)", profile.name());
        }
        self.resolution(name, profile)
    }

    pub fn save(&self, name: &str, res: &Resolution) -> Result<()> {
        Ok(save_cache(res, &self.cache_path(name, res.profile()))?)
    }
}

pub fn read_module(path: &Path, name: &str) -> Result<ModulePresentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ModulePresentation::parse_named(name, &text)?)
}

pub struct WorkspaceLock {
    path: PathBuf,
}

impl Drop for WorkspaceLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}
