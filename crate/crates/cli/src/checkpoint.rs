//! Resumable partial results: one JSON file per task, named by the hash of the
//! value-determining part of the task, holding every relation finished so far.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use g2lift::engine::{element_from_terms, element_json, TermJson};
use g2lift::lifting::Relation;
use g2lift::rootdata::{BraidingConfig, Root};

#[derive(Serialize, Deserialize, Default)]
struct Contents {
    spec: Value,
    relations: BTreeMap<String, StoredRelation>,
}

#[derive(Serialize, Deserialize, Clone)]
struct StoredRelation {
    exponent: u16,
    rhs: Vec<TermJson>,
}

pub struct Store {
    path: PathBuf,
    contents: Mutex<Contents>,
}

impl Store {
    pub fn open(dir: &Path, spec: &Value) -> anyhow::Result<Store> {
        let digest = Sha256::digest(serde_json::to_string(spec)?.as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        let path = dir.join(format!("{name}.json"));
        let contents = if path.exists() {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let c: Contents = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            anyhow::ensure!(&c.spec == spec, "checkpoint {} belongs to a different task", path.display());
            c
        } else {
            Contents { spec: spec.clone(), relations: BTreeMap::new() }
        };
        Ok(Store { path, contents: Mutex::new(contents) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn restore(&self, root: Root, config: BraidingConfig) -> Option<Relation> {
        let c = self.contents.lock().expect("checkpoint lock");
        let s = c.relations.get(root.name())?;
        let rhs = element_from_terms(&s.rhs, config.n, config.a).ok()?;
        Some(Relation { root, exponent: s.exponent, rhs })
    }

    pub fn save(&self, rel: &Relation) -> anyhow::Result<()> {
        let mut c = self.contents.lock().expect("checkpoint lock");
        let rhs: Vec<TermJson> = serde_json::from_value(element_json(&rel.rhs))?;
        c.relations.insert(rel.root.name().to_string(), StoredRelation { exponent: rel.exponent, rhs });
        if let Some(dir) = self.path.parent() {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let tmp = self.path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string(&*c)?).with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, &self.path).with_context(|| format!("renaming {}", tmp.display()))?;
        Ok(())
    }
}
