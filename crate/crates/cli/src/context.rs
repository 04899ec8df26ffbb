use std::path::{Path, PathBuf};

use clusteralg::bundle::BUILTIN_BIMODULES;
use clusteralg::catalog::{catalog_dir, generate};
use clusteralg::{BilinearForm, Bimodule, Bundle, ClusterAlgebra, Error, InterMap, Result, Tensor2};

/// Objects from the user's bundles, with catalog entries pulled in on demand.
pub struct Context {
    pub bundle: Bundle,
    pub user: Bundle,
    dir: PathBuf,
}

pub fn read_bundle(path: &Path) -> Result<Bundle> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Bundle::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl Context {
    pub fn new(paths: &[PathBuf]) -> Result<Context> {
        let mut user = Bundle::default();
        for p in paths {
            user.merge(read_bundle(p)?);
        }
        Ok(Context { bundle: user.clone(), user, dir: catalog_dir() })
    }

    /// Make `name` available, loading the catalog entry of that name if the
    /// bundles lack it. User objects always win over catalog ones.
    pub fn ensure(&mut self, name: &str) -> Result<()> {
        if self.bundle.kind_of(name).is_some() {
            return Ok(());
        }
        let path = self.dir.join(format!("{name}.json"));
        let mut cat = if path.exists() {
            read_bundle(&path)?
        } else {
            match generate(name) {
                Ok(e) if name.starts_with("zero_") => e.bundle,
                _ => return Err(Error::UnknownEntry(name.to_string())),
            }
        };
        cat.meta = None;
        cat.merge(std::mem::take(&mut self.bundle));
        self.bundle = cat;
        Ok(())
    }

    pub fn algebra(&mut self, name: &str) -> Result<ClusterAlgebra> {
        self.ensure(name)?;
        if let Ok(a) = self.bundle.algebra(name) {
            return Ok(a.clone());
        }
        // a catalog map entry names the algebra it acts on
        let rec = self.bundle.maps.get(name).and_then(|m| m.algebra.clone());
        match rec {
            Some(an) => Ok(self.bundle.algebra(&an)?.clone()),
            None => Err(Error::UnknownEntry(format!("algebra `{name}`"))),
        }
    }

    pub fn bimodule(&mut self, name: &str, a: &ClusterAlgebra) -> Result<Bimodule> {
        if !BUILTIN_BIMODULES.contains(&name) {
            self.ensure(name)?;
        }
        self.bundle.bimodule(name, a)
    }

    pub fn map(&mut self, name: &str) -> Result<InterMap> {
        self.ensure(name)?;
        Ok(self.bundle.map(name)?.clone())
    }

    pub fn tensor(&mut self, name: &str) -> Result<Tensor2> {
        self.ensure(name)?;
        Ok(self.bundle.tensor(name)?.clone())
    }

    pub fn form(&mut self, name: &str, dim: usize) -> Result<BilinearForm> {
        if name == "zero" {
            return Ok(BilinearForm::zero(dim));
        }
        self.ensure(name)?;
        Ok(self.bundle.form(name)?.clone())
    }

    pub fn catalog_dir(&self) -> &Path {
        &self.dir
    }

    /// Names an object's record refers to (its algebra, bimodule).
    pub fn references(&self, name: &str) -> Vec<String> {
        let b = &self.bundle;
        let mut out: Vec<String> = Vec::new();
        if let Some(r) = b.bimodules.get(name) {
            out.extend(r.algebra.clone());
        }
        if let Some(r) = b.maps.get(name) {
            out.extend(r.algebra.clone());
            out.extend(r.bimodule.clone().filter(|m| !BUILTIN_BIMODULES.contains(&m.as_str())));
        }
        if let Some(r) = b.tensors.get(name) {
            out.extend(r.algebra.clone());
        }
        if let Some(r) = b.forms.get(name) {
            out.extend(r.algebra.clone());
        }
        out
    }
}
