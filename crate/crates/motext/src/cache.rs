//! Resolutions shared between computations, optionally persisted as
//! checkpoints in a directory.

use std::collections::BTreeMap;
use std::path::PathBuf;

use motext_core::{AlgebraSpec, ExtTable, Resolution};

use crate::checkpoint;
use crate::error::Result;

/// Environment variable naming the checkpoint directory.
pub const CACHE_DIR_VAR: &str = "MOTEXT_CACHE_DIR";

/// The `(max_s, max_t)` rectangle giving Ext in stems `≤ max_stem` at
/// filtrations `≤ max_filtration`. Motivic Ext in filtration `f` needs
/// stage `f + 1`, so one extra stage is resolved.
pub fn rectangle(spec: AlgebraSpec, max_stem: u32, max_filtration: u32) -> (u32, u32) {
    let extra = u32::from(spec.is_motivic());
    (max_filtration + extra, max_stem + max_filtration)
}

/// Default filtration bound for a stem range.
pub fn default_filtration(max_stem: u32) -> u32 {
    max_stem / 2 + 2
}

/// A resolution with its Ext table.
pub struct Entry {
    pub res: Resolution,
    pub table: ExtTable,
}

type Key = (AlgebraSpec, u32, u32);

#[derive(Default)]
pub struct ResolutionCache {
    dir: Option<PathBuf>,
    entries: BTreeMap<Key, Entry>,
}

impl ResolutionCache {
    /// In-memory only.
    pub fn new() -> Self {
        Self::default()
    }

    /// Persist under `dir`, one checkpoint per algebra and rectangle.
    pub fn in_dir(dir: impl Into<PathBuf>) -> Self {
        ResolutionCache {
            dir: Some(dir.into()),
            entries: BTreeMap::new(),
        }
    }

    /// Persist under `$MOTEXT_CACHE_DIR` when it is set.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_VAR) {
            Some(d) if !d.is_empty() => Self::in_dir(d),
            _ => Self::new(),
        }
    }

    pub fn path(&self, spec: AlgebraSpec, max_s: u32, max_t: u32) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}-s{max_s}-t{max_t}.ckpt", spec.name())))
    }

    /// Make sure the resolution of `spec` on `(max_s, max_t)` is available,
    /// loading its checkpoint or computing and saving it.
    pub fn ensure(&mut self, spec: AlgebraSpec, max_s: u32, max_t: u32) -> Result<()> {
        let key = (spec, max_s, max_t);
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        let path = self.path(spec, max_s, max_t);
        let res = match &path {
            Some(p) if p.exists() => checkpoint::load(p)?,
            _ => {
                let mut res = Resolution::new(spec);
                res.extend(max_s, max_t)?;
                if let Some(p) = &path {
                    std::fs::create_dir_all(p.parent().expect("file in a directory"))
                        .map_err(|e| crate::MotextError::io(p, e))?;
                    checkpoint::save(&res, p)?;
                }
                res
            }
        };
        if res.spec() != spec || res.range() != Some((max_s, max_t)) {
            return Err(crate::MotextError::Malformed(format!(
                "cached checkpoint holds {} on {:?}, expected {} on ({max_s}, {max_t})",
                res.spec().name(),
                res.range(),
                spec.name()
            )));
        }
        let table = res.ext();
        self.entries.insert(key, Entry { res, table });
        Ok(())
    }

    /// An entry made available by [`ensure`](Self::ensure).
    pub fn entry(&self, spec: AlgebraSpec, max_s: u32, max_t: u32) -> Option<&Entry> {
        self.entries.get(&(spec, max_s, max_t))
    }

    pub fn get(&mut self, spec: AlgebraSpec, max_s: u32, max_t: u32) -> Result<&Entry> {
        self.ensure(spec, max_s, max_t)?;
        Ok(&self.entries[&(spec, max_s, max_t)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangles() {
        assert_eq!(rectangle(AlgebraSpec::CLASSICAL, 20, 8), (8, 28));
        assert_eq!(rectangle(AlgebraSpec::MOTIVIC, 20, 8), (9, 28));
        assert_eq!(default_filtration(30), 17);
    }

    #[test]
    fn persisted_resolutions_are_reused() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = ResolutionCache::in_dir(dir.path());
        let a = checkpoint::to_string(&cache.get(AlgebraSpec::CLASSICAL, 3, 10).unwrap().res);
        let file = cache.path(AlgebraSpec::CLASSICAL, 3, 10).unwrap();
        assert_eq!(std::fs::read_to_string(&file).unwrap(), a);
        let mut again = ResolutionCache::in_dir(dir.path());
        assert_eq!(checkpoint::to_string(&again.get(AlgebraSpec::CLASSICAL, 3, 10).unwrap().res), a);
    }

    #[test]
    fn corrupted_cache_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = ResolutionCache::in_dir(dir.path());
        cache.ensure(AlgebraSpec::CLASSICAL, 2, 6).unwrap();
        let file = cache.path(AlgebraSpec::CLASSICAL, 2, 6).unwrap();
        let text = std::fs::read_to_string(&file).unwrap().replace("\"t\":1", "\"t\":2");
        std::fs::write(&file, text).unwrap();
        let err = ResolutionCache::in_dir(dir.path()).ensure(AlgebraSpec::CLASSICAL, 2, 6).unwrap_err();
        assert!(err.to_string().contains("checksum"), "{err}");
    }
}
