//! On-disk character tables, keyed by the SHA-256 of the field record.
//!
//! A cached table is never trusted: it is reloaded through
//! [`CharacterTable::from_values`], which reruns both orthogonality checks,
//! and its class list must equal the freshly enumerated one.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use gsp4_core::chartab::cyclotomic::Cyclotomic;
use gsp4_core::chartab::CharacterTable;
use gsp4_core::conj::{ClassData, ClassSummary};
use gsp4_core::ffield::FieldRecord;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedTable {
    pub version: u32,
    pub field: FieldRecord,
    pub conductor: u32,
    pub prime: u64,
    pub group_order: u64,
    pub classes: ClassSummary,
    pub inverse: Vec<usize>,
    /// Power-basis coefficients of every value, row-major.
    pub values: Vec<Vec<Vec<i64>>>,
}

impl CachedTable {
    pub fn from_table(field: FieldRecord, ct: &CharacterTable) -> CachedTable {
        CachedTable {
            version: CACHE_VERSION,
            field,
            conductor: ct.conductor(),
            prime: ct.prime(),
            group_order: ct.group_order(),
            classes: ct.classes().clone(),
            inverse: ct.inverse_classes().to_vec(),
            values: ct.values().iter().map(|row| row.iter().map(|v| v.coeffs().to_vec()).collect()).collect(),
        }
    }

    /// Rebuilds and revalidates the table.
    pub fn into_table(self) -> anyhow::Result<CharacterTable> {
        let n = self.conductor;
        let values = self
            .values
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| Cyclotomic::from_coeffs(n, c).context("coefficient vector of the wrong length"))
                    .collect::<anyhow::Result<Vec<_>>>()
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(CharacterTable::from_values(n, self.prime, self.group_order, self.classes, self.inverse, values)?)
    }
}

/// Hex SHA-256 of the JSON encoding of the field record.
pub fn field_hash(field: &FieldRecord) -> String {
    let bytes = serde_json::to_vec(field).expect("field records serialize");
    hex::encode(Sha256::digest(bytes))
}

pub fn cache_path(dir: &Path, field: &FieldRecord) -> PathBuf {
    dir.join(format!("chartab-q{}-{}.json", field.p.pow(field.n), &field_hash(field)[..16]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit(PathBuf),
    Written(PathBuf),
    /// An unusable file was replaced; the reason is kept.
    Replaced(PathBuf, String),
}

impl CacheStatus {
    pub fn path(&self) -> Option<&Path> {
        match self {
            CacheStatus::Disabled => None,
            CacheStatus::Hit(p) | CacheStatus::Written(p) | CacheStatus::Replaced(p, _) => Some(p),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CacheStatus::Disabled => "disabled".into(),
            CacheStatus::Hit(p) => format!("loaded {}", p.display()),
            CacheStatus::Written(p) => format!("wrote {}", p.display()),
            CacheStatus::Replaced(p, why) => format!("replaced {} ({why})", p.display()),
        }
    }
}

fn load(path: &Path, field: &FieldRecord, cd: &ClassData) -> anyhow::Result<CharacterTable> {
    let text = fs::read_to_string(path)?;
    let cached: CachedTable = serde_json::from_str(&text)?;
    if cached.version != CACHE_VERSION {
        bail!("cache version {} != {CACHE_VERSION}", cached.version);
    }
    if &cached.field != field {
        bail!("field record differs");
    }
    if cached.classes != cd.summary() {
        bail!("class list differs from the enumeration");
    }
    cached.into_table()
}

fn store(path: &Path, field: &FieldRecord, ct: &CharacterTable) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let json = serde_json::to_string(&CachedTable::from_table(field.clone(), ct))?;
    // write then rename so a crash never leaves a truncated cache
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, json).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// The character table of `cd`, from the cache when a valid entry exists.
pub fn load_or_build(dir: Option<&Path>, cd: &ClassData) -> anyhow::Result<(CharacterTable, CacheStatus)> {
    let field = cd.group().field().record();
    let Some(dir) = dir else {
        return Ok((CharacterTable::compute(cd)?, CacheStatus::Disabled));
    };
    let path = cache_path(dir, &field);
    let stale = if path.exists() {
        match load(&path, &field, cd) {
            Ok(ct) => return Ok((ct, CacheStatus::Hit(path))),
            Err(e) => Some(e.to_string()),
        }
    } else {
        None
    };
    let ct = CharacterTable::compute(cd)?;
    store(&path, &field, &ct)?;
    Ok((
        ct,
        match stale {
            Some(why) => CacheStatus::Replaced(path, why),
            None => CacheStatus::Written(path),
        },
    ))
}
