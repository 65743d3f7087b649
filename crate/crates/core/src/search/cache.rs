use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::canon::{canonicalize, IsoClass};
use super::enumerate::enumerate_maximal_capped;
use crate::error::{Error, Result};
use crate::family::{from_text, to_text};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Contents of `index.json` in a cache entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheIndex {
    pub format_version: u32,
    pub n: u32,
    pub r: u32,
    pub t: u32,
    pub count: usize,
    pub orbit_sizes: Vec<u64>,
    /// SHA-256 of the class files concatenated in order, hex.
    pub checksum: String,
}

pub fn cache_entry_dir(root: &Path, n: u32, r: u32, t: u32) -> PathBuf {
    root.join(format!("maximal-v{CACHE_FORMAT_VERSION}")).join(format!("n{n}-r{r}-t{t}"))
}

fn class_file(i: usize) -> String {
    format!("class-{i:05}.txt")
}

fn checksum(texts: &[String]) -> String {
    let mut h = Sha256::new();
    for t in texts {
        h.update(t.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn load(dir: &Path, n: u32, r: u32, t: u32) -> Result<Option<Vec<IsoClass>>> {
    let Ok(raw) = fs::read_to_string(dir.join("index.json")) else { return Ok(None) };
    let Ok(index) = serde_json::from_str::<CacheIndex>(&raw) else { return Ok(None) };
    if (index.format_version, index.n, index.r, index.t) != (CACHE_FORMAT_VERSION, n, r, t) {
        return Ok(None);
    }
    let mut texts = Vec::with_capacity(index.count);
    for i in 0..index.count {
        match fs::read_to_string(dir.join(class_file(i))) {
            Ok(s) => texts.push(s),
            Err(_) => return Ok(None),
        }
    }
    if checksum(&texts) != index.checksum {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(texts.len());
    for (text, &orbit) in texts.iter().zip(&index.orbit_sizes) {
        let fam = from_text(text)?;
        let class = canonicalize(&fam)?;
        if class.canonical != fam || class.orbit_size != orbit {
            return Ok(None);
        }
        out.push(class);
    }
    Ok(Some(out))
}

fn store(dir: &Path, n: u32, r: u32, t: u32, classes: &[IsoClass]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let texts: Vec<String> = classes.iter().map(|c| to_text(&c.canonical)).collect();
    for (i, text) in texts.iter().enumerate() {
        fs::write(dir.join(class_file(i)), text)?;
    }
    let index = CacheIndex {
        format_version: CACHE_FORMAT_VERSION,
        n,
        r,
        t,
        count: classes.len(),
        orbit_sizes: classes.iter().map(|c| c.orbit_size).collect(),
        checksum: checksum(&texts),
    };
    let json = serde_json::to_string_pretty(&index).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(dir.join("index.json"), json + "\n")?;
    Ok(())
}

/// [`enumerate_maximal_capped`] backed by an on-disk cache under `root`.
/// Entries whose index or checksum does not match are recomputed.
pub fn enumerate_maximal_cached(root: &Path, n: u32, r: u32, t: u32, cap: u32) -> Result<Vec<IsoClass>> {
    let dir = cache_entry_dir(root, n, r, t);
    if let Some(classes) = load(&dir, n, r, t)? {
        return Ok(classes);
    }
    let classes = enumerate_maximal_capped(n, r, t, cap)?;
    store(&dir, n, r, t, &classes)?;
    Ok(classes)
}
