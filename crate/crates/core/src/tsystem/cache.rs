//! Characters of labels, memoised at shift zero and optionally stored on disk.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use super::label::{canonical_label, highest_monomial, Family, ModuleLabel};
use crate::error::{Error, Result};
use crate::fm::{fm_qcharacter_with, FmLimits};
use crate::qchar::QCharacter;

/// Memo of characters keyed by canonical label at `s = 0`. With a directory,
/// each entry is also written to `<dir>/<stem>.json`.
#[derive(Debug, Default)]
pub struct CharacterCache {
    dir: Option<PathBuf>,
    mem: Mutex<FxHashMap<ModuleLabel, Arc<QCharacter>>>,
}

impl CharacterCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        CharacterCache { dir: Some(dir.into()), mem: Mutex::default() }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, label: &ModuleLabel) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", label.file_stem())))
    }

    pub fn get(&self, label: &ModuleLabel) -> Option<Arc<QCharacter>> {
        if let Some(x) = self.mem.lock().unwrap().get(label) {
            return Some(x.clone());
        }
        let path = self.path_for(label)?;
        let text = fs::read_to_string(path).ok()?;
        let x: QCharacter = serde_json::from_str(&text).ok()?;
        let x = Arc::new(x);
        self.mem.lock().unwrap().insert(label.clone(), x.clone());
        Some(x)
    }

    pub fn insert(&self, label: &ModuleLabel, x: Arc<QCharacter>) -> Result<()> {
        if let Some(path) = self.path_for(label) {
            if let Some(d) = path.parent() {
                fs::create_dir_all(d).map_err(|e| Error::Io(e.to_string()))?;
            }
            let text = serde_json::to_string(&*x).map_err(|e| Error::Io(e.to_string()))?;
            let tmp = path.with_extension("json.tmp");
            fs::write(&tmp, text).map_err(|e| Error::Io(e.to_string()))?;
            fs::rename(&tmp, &path).map_err(|e| Error::Io(e.to_string()))?;
        }
        self.mem.lock().unwrap().insert(label.clone(), x);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.mem.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A way of producing q-characters of labels.
pub trait CharacterSource: Send + Sync {
    /// The character of a canonical label at shift zero other than `Zero` and `One`.
    fn compute_base(&self, label: &ModuleLabel) -> Result<QCharacter>;

    fn cache(&self) -> &CharacterCache;

    /// The character of any label.
    fn character(&self, label: &ModuleLabel) -> Result<Arc<QCharacter>> {
        let c = canonical_label(label);
        match c.family {
            Family::Zero => return Ok(Arc::new(QCharacter::zero())),
            Family::One => return Ok(Arc::new(QCharacter::one())),
            _ => {}
        }
        let base_label = c.with_shift(0);
        let base = match self.cache().get(&base_label) {
            Some(x) => x,
            None => {
                let x = Arc::new(self.compute_base(&base_label)?);
                self.cache().insert(&base_label, x.clone())?;
                x
            }
        };
        let off = c.spectral_offset();
        Ok(if off == 0 { base } else { Arc::new(base.tau_shift(off)) })
    }
}

/// Characters from the FM algorithm; barred labels go through the involution.
#[derive(Debug, Default)]
pub struct FmSource {
    pub cache: CharacterCache,
    pub limits: FmLimits,
}

impl FmSource {
    pub fn new(cache: CharacterCache, limits: FmLimits) -> Self {
        FmSource { cache, limits }
    }
}

impl CharacterSource for FmSource {
    fn compute_base(&self, label: &ModuleLabel) -> Result<QCharacter> {
        if label.family.is_barred() {
            let m = highest_monomial(&label.bar())?;
            Ok(fm_qcharacter_with(&m, self.limits)?.iota())
        } else {
            fm_qcharacter_with(&highest_monomial(label)?, self.limits)
        }
    }

    fn cache(&self) -> &CharacterCache {
        &self.cache
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_and_bars() {
        let src = FmSource::default();
        let t = ModuleLabel::t(1, 0, 0, 3);
        let x = src.character(&t).unwrap();
        assert_eq!(x.highest().unwrap().to_string(), "3_3");
        let tb = src.character(&t.bar()).unwrap();
        assert_eq!(tb.highest().unwrap().to_string(), "3_-3");
        assert_eq!(*tb, x.iota());
        assert_eq!(src.cache().len(), 1);
        assert!(src.character(&ModuleLabel::t(-1, 0, 0, 0)).unwrap().is_zero());
    }

    #[test]
    fn disk_round_trip() {
        let dir = std::env::temp_dir().join(format!("c3q-cache-test-{}", std::process::id()));
        let src = FmSource::new(CharacterCache::with_dir(&dir), FmLimits::default());
        let l = ModuleLabel::t(1, 0, 1, 2);
        let x = src.character(&l).unwrap();
        assert!(dir.join("T_k1_l0_m1.json").exists());
        let again = FmSource::new(CharacterCache::with_dir(&dir), FmLimits::default());
        assert!(again.cache().get(&l.with_shift(0)).is_some());
        assert_eq!(*again.character(&l).unwrap(), *x);
        fs::remove_dir_all(dir).unwrap();
    }
}
