use rustc_hash::FxHashMap;
use std::sync::Arc;

use super::PolyError;

/// Ordered variable names with their C*-weights. The order fixes the
/// monomial order of every polynomial built on the table.
#[derive(Debug, Clone)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
    index: FxHashMap<String, usize>,
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.weights == other.weights
    }
}

impl Eq for VarTable {}

impl VarTable {
    pub fn new<S: AsRef<str>>(vars: &[(S, u32)]) -> Result<Arc<Self>, PolyError> {
        let mut t = VarTable { names: Vec::new(), weights: Vec::new(), index: FxHashMap::default() };
        for (name, w) in vars {
            t.push(name.as_ref(), *w)?;
        }
        Ok(Arc::new(t))
    }

    pub fn empty() -> Arc<Self> {
        Self::new::<&str>(&[]).expect("empty table")
    }

    fn push(&mut self, name: &str, w: u32) -> Result<(), PolyError> {
        if self.index.contains_key(name) {
            return Err(PolyError::DuplicateVariable(name.to_string()));
        }
        if self.names.len() >= u16::MAX as usize {
            return Err(PolyError::TooManyVariables);
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.weights.push(w);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn weight_of(&self, name: &str) -> Option<u32> {
        self.index_of(name).map(|i| self.weights[i])
    }

    /// Appends the variables of `extra` that are missing from `self`.
    /// Shared names must agree on weight.
    pub fn union(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>, PolyError> {
        if Arc::ptr_eq(a, b) || a == b {
            return Ok(a.clone());
        }
        let mut grown: Option<VarTable> = None;
        for (name, &w) in b.names.iter().zip(&b.weights) {
            match a.index_of(name) {
                Some(i) if a.weights[i] != w => {
                    return Err(PolyError::WeightConflict { name: name.clone(), left: a.weights[i], right: w })
                }
                Some(_) => {}
                None => {
                    grown.get_or_insert_with(|| (**a).clone()).push(name, w)?;
                }
            }
        }
        Ok(match grown {
            Some(t) => Arc::new(t),
            None => a.clone(),
        })
    }

    /// New table with `extra` appended (names already present must match).
    pub fn extended<S: AsRef<str>>(self: &Arc<Self>, extra: &[(S, u32)]) -> Result<Arc<Self>, PolyError> {
        let b = VarTable::new(extra)?;
        Self::union(self, &b)
    }

    /// True when every variable of `self` occurs in `other` with the same weight.
    pub fn embeds_into(&self, other: &VarTable) -> bool {
        self.names.iter().zip(&self.weights).all(|(n, w)| other.weight_of(n) == Some(*w))
    }
}
