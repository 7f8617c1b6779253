//! Single-file census cache keyed by grid size and a hash of the core sources.
//!
//! Writers serialize the whole map to a sibling temp file and rename it over
//! the cache, so readers never see a partial file. Concurrent writers may
//! drop each other's new entries but cannot corrupt the store.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use omega_core::census::{cube_census, ComponentLabeling, GridSpec};

pub struct CensusCache {
    path: PathBuf,
}

type Store = BTreeMap<String, ComponentLabeling>;

impl CensusCache {
    pub fn new(path: Option<&Path>) -> Self {
        let path = path.map(Path::to_path_buf).unwrap_or_else(|| match std::env::var_os("OMEGA_CERT_CACHE") {
            Some(p) => PathBuf::from(p),
            None => std::env::temp_dir().join("omega-cert").join("census-cache.json"),
        });
        CensusCache { path }
    }

    pub fn key(n: usize) -> String {
        format!("n={n};v={};src={}", omega_core::VERSION, omega_core::SOURCE_HASH)
    }

    fn read(&self) -> Store {
        fs::read_to_string(&self.path).ok().and_then(|s| serde_json::from_str(&s).ok()).unwrap_or_default()
    }

    pub fn load(&self, n: usize) -> Option<ComponentLabeling> {
        self.read().remove(&Self::key(n))
    }

    pub fn store(&self, lab: &ComponentLabeling) -> std::io::Result<()> {
        let mut store = self.read();
        store.insert(Self::key(lab.grid.n), lab.clone());
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&store).expect("labeling serializes"))?;
        fs::rename(&tmp, &self.path)
    }

    /// Cached labeling for `grid`, building and storing it on a miss. Hits
    /// and misses are reported on stderr so the JSON report stays identical.
    pub fn get_or_build(&self, grid: &GridSpec) -> std::io::Result<ComponentLabeling> {
        if let Some(lab) = self.load(grid.n) {
            eprintln!("census n={}: loaded from {}", grid.n, self.path.display());
            return Ok(lab);
        }
        let lab = cube_census(grid);
        self.store(&lab)?;
        eprintln!("census n={}: built and stored in {}", grid.n, self.path.display());
        Ok(lab)
    }
}
