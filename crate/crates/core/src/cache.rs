//! Content-addressed on-disk store for expanded rule sets.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::poly::{Polynomial, RuleSet, VarTable};
use crate::solvelist::table_text;

const MAGIC: &str = "# rdpinv rules sha256:";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Uses `dir`, creating it on first store.
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.rules"))
    }

    /// Reads a stored rule set; unreadable or mismatching files count as misses.
    pub fn load(&self, key: &str) -> Option<RuleSet> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        read_rules(&text, Some(key))
    }

    /// Best-effort write; I/O failures only cost a recomputation later.
    pub fn store(&self, key: &str, rules: &RuleSet) {
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        if fs::write(&tmp, write_rules(key, rules)).is_ok() {
            let _ = fs::rename(&tmp, self.path(key));
        }
    }
}

/// Serializes a rule set with its content hash in the header.
pub fn write_rules(key: &str, rules: &RuleSet) -> String {
    let mut out = format!("{MAGIC}{key}\n");
    for (v, p) in rules {
        out.push_str(&format!("{v} [{}] = {p}\n", table_text(p.vars())));
    }
    out
}

pub fn read_rules(text: &str, expect_key: Option<&str>) -> Option<RuleSet> {
    let mut lines = text.lines();
    let header = lines.next()?.strip_prefix(MAGIC)?;
    if let Some(k) = expect_key {
        if header != k {
            return None;
        }
    }
    let mut rules = RuleSet::new();
    for line in lines {
        let (lhs, rhs) = line.split_once(" = ")?;
        let (name, vars) = lhs.split_once(" [")?;
        let vars = vars.strip_suffix(']')?;
        let mut pairs: Vec<(String, u32)> = Vec::new();
        for item in vars.split(',').filter(|s| !s.is_empty()) {
            let (n, w) = item.split_once(':')?;
            pairs.push((n.to_string(), w.parse().ok()?));
        }
        let table: Arc<VarTable> = VarTable::new(&pairs).ok()?;
        rules.insert(name.to_string(), Polynomial::parse(rhs, &table).ok()?);
    }
    Some(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::table;

    #[test]
    fn roundtrip_through_disk() {
        let dir = std::env::temp_dir().join(format!("rdpinv-cache-test-{}", std::process::id()));
        let cache = Cache::new(&dir);
        let t = table(&[("s1", 1), ("s2", 2)]);
        let mut r = RuleSet::new();
        r.insert("e2".into(), Polynomial::parse("-2*s1^2 + 3/7*s2", &t).unwrap());
        cache.store("abc", &r);
        assert_eq!(cache.load("abc"), Some(r));
        assert_eq!(cache.load("abd"), None);
        let _ = fs::remove_dir_all(dir);
    }
}
