use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Signature, SyntaxError};

/// A model with an explicit finite domain `{0, …, domain_size-1}`.
///
/// Tables are flattened row-major with the first argument most significant,
/// so `f(a0, a1)` lives at `a0 * n + a1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModel {
    sig: Signature,
    domain_size: usize,
    functions: Vec<Vec<usize>>,
    relations: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid signature: {0}")]
    Signature(#[from] SyntaxError),
    #[error("domain_size must be at least 1")]
    EmptyDomain,
    #[error("{field}: missing table")]
    MissingTable { field: String },
    #[error("{field}: no such symbol in the signature")]
    UnknownTable { field: String },
    #[error("{field}: expected {expected} entries, found {found}")]
    TableLength { field: String, expected: usize, found: usize },
    #[error("{field}[{index}]: value {value} is outside the domain of size {domain_size}")]
    OutOfRange { field: String, index: usize, value: usize, domain_size: usize },
    #[error("malformed model file: {0}")]
    Json(String),
}

/// The on-disk form of a [`FiniteModel`]; tables are keyed by symbol name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub signature: Signature,
    pub domain_size: usize,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<bool>>,
}

pub(crate) fn table_len(domain_size: usize, arity: usize) -> usize {
    domain_size.pow(arity as u32)
}

pub(crate) fn table_index(domain_size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * domain_size + a)
}

impl FiniteModel {
    pub fn new(
        sig: Signature,
        domain_size: usize,
        functions: Vec<Vec<usize>>,
        relations: Vec<Vec<bool>>,
    ) -> Result<Self, ModelError> {
        sig.validate()?;
        if domain_size == 0 {
            return Err(ModelError::EmptyDomain);
        }
        let check_len = |field: String, arity: usize, found: usize| {
            let expected = table_len(domain_size, arity);
            if expected == found {
                Ok(())
            } else {
                Err(ModelError::TableLength { field, expected, found })
            }
        };
        if functions.len() != sig.functions.len() {
            let missing = sig.functions.get(functions.len()).map_or("functions".to_string(), |s| format!("functions.{}", s.name));
            return Err(ModelError::MissingTable { field: missing });
        }
        if relations.len() != sig.relations.len() {
            let missing = sig.relations.get(relations.len()).map_or("relations".to_string(), |s| format!("relations.{}", s.name));
            return Err(ModelError::MissingTable { field: missing });
        }
        for (sym, table) in sig.functions.iter().zip(&functions) {
            let field = format!("functions.{}", sym.name);
            check_len(field.clone(), sym.arity, table.len())?;
            if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= domain_size) {
                return Err(ModelError::OutOfRange { field, index, value, domain_size });
            }
        }
        for (sym, table) in sig.relations.iter().zip(&relations) {
            check_len(format!("relations.{}", sym.name), sym.arity, table.len())?;
        }
        Ok(Self { sig, domain_size, functions, relations })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn function_table(&self, f: usize) -> &[usize] {
        &self.functions[f]
    }

    pub fn relation_table(&self, r: usize) -> &[bool] {
        &self.relations[r]
    }

    pub fn apply(&self, f: usize, args: &[usize]) -> usize {
        self.functions[f][table_index(self.domain_size, args)]
    }

    pub fn holds(&self, r: usize, args: &[usize]) -> bool {
        self.relations[r][table_index(self.domain_size, args)]
    }

    /// The copy in which element `a` is renamed to `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.domain_size;
        assert_eq!(perm.len(), n);
        let remap = |arity: usize, old_index: usize| {
            // decode old argument tuple, rename each component, re-encode
            let mut args = vec![0; arity];
            let mut rest = old_index;
            for slot in args.iter_mut().rev() {
                *slot = perm[rest % n];
                rest /= n;
            }
            table_index(n, &args)
        };
        let functions = self
            .sig
            .functions
            .iter()
            .zip(&self.functions)
            .map(|(sym, table)| {
                let mut out = vec![0; table.len()];
                for (i, &v) in table.iter().enumerate() {
                    out[remap(sym.arity, i)] = perm[v];
                }
                out
            })
            .collect();
        let relations = self
            .sig
            .relations
            .iter()
            .zip(&self.relations)
            .map(|(sym, table)| {
                let mut out = vec![false; table.len()];
                for (i, &v) in table.iter().enumerate() {
                    out[remap(sym.arity, i)] = v;
                }
                out
            })
            .collect();
        Self { sig: self.sig.clone(), domain_size: n, functions, relations }
    }

    pub fn from_file(file: ModelFile) -> Result<Self, ModelError> {
        let ModelFile { signature, domain_size, mut functions, mut relations } = file;
        signature.validate()?;
        let mut fs = Vec::new();
        for s in &signature.functions {
            fs.push(functions.remove(&s.name).ok_or_else(|| ModelError::MissingTable { field: format!("functions.{}", s.name) })?);
        }
        let mut rs = Vec::new();
        for s in &signature.relations {
            rs.push(relations.remove(&s.name).ok_or_else(|| ModelError::MissingTable { field: format!("relations.{}", s.name) })?);
        }
        if let Some(name) = functions.keys().next() {
            return Err(ModelError::UnknownTable { field: format!("functions.{name}") });
        }
        if let Some(name) = relations.keys().next() {
            return Err(ModelError::UnknownTable { field: format!("relations.{name}") });
        }
        Self::new(signature, domain_size, fs, rs)
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            signature: self.sig.clone(),
            domain_size: self.domain_size,
            functions: self.sig.functions.iter().map(|s| s.name.clone()).zip(self.functions.iter().cloned()).collect(),
            relations: self.sig.relations.iter().map(|s| s.name.clone()).zip(self.relations.iter().cloned()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }

    /// Every model over `sig` with domain size exactly `n`, in odometer order.
    pub fn enumerate(sig: &Signature, n: usize) -> AllModels {
        let fn_lens: Vec<usize> = sig.functions.iter().map(|s| table_len(n, s.arity)).collect();
        let rel_lens: Vec<usize> = sig.relations.iter().map(|s| table_len(n, s.arity)).collect();
        AllModels {
            sig: sig.clone(),
            n,
            functions: fn_lens.iter().map(|&l| vec![0; l]).collect(),
            relations: rel_lens.iter().map(|&l| vec![false; l]).collect(),
            done: false,
        }
    }

    /// Every model over `sig` with domain size between 1 and `max`.
    pub fn enumerate_upto(sig: &Signature, max: usize) -> impl Iterator<Item = FiniteModel> + '_ {
        (1..=max).flat_map(move |n| Self::enumerate(sig, n))
    }
}

pub struct AllModels {
    sig: Signature,
    n: usize,
    functions: Vec<Vec<usize>>,
    relations: Vec<Vec<bool>>,
    done: bool,
}

impl Iterator for AllModels {
    type Item = FiniteModel;

    fn next(&mut self) -> Option<FiniteModel> {
        if self.done {
            return None;
        }
        let current = FiniteModel {
            sig: self.sig.clone(),
            domain_size: self.n,
            functions: self.functions.clone(),
            relations: self.relations.clone(),
        };
        // advance the odometer: relations are the fast digits
        let mut carried = true;
        'outer: for table in self.relations.iter_mut().rev() {
            for cell in table.iter_mut().rev() {
                *cell = !*cell;
                if *cell {
                    carried = false;
                    break 'outer;
                }
            }
        }
        if carried {
            'outer: for table in self.functions.iter_mut().rev() {
                for cell in table.iter_mut().rev() {
                    *cell += 1;
                    if *cell < self.n {
                        carried = false;
                        break 'outer;
                    }
                    *cell = 0;
                }
            }
        }
        self.done = carried;
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::from_pairs(&[("f", 1)], &[("P", 1)])
    }

    #[test]
    fn validation_names_the_cell() {
        let err = FiniteModel::new(sig(), 2, vec![vec![0, 2]], vec![vec![true, false]]).unwrap_err();
        assert_eq!(err.to_string(), "functions.f[1]: value 2 is outside the domain of size 2");
        let err = FiniteModel::new(sig(), 2, vec![vec![0]], vec![vec![true, false]]).unwrap_err();
        assert!(matches!(err, ModelError::TableLength { .. }));
        assert_eq!(FiniteModel::new(sig(), 0, vec![vec![]], vec![vec![]]).unwrap_err(), ModelError::EmptyDomain);
    }

    #[test]
    fn json_roundtrip_and_missing_table() {
        let m = FiniteModel::new(sig(), 2, vec![vec![1, 0]], vec![vec![true, false]]).unwrap();
        assert_eq!(FiniteModel::from_json(&m.to_json()).unwrap(), m);
        let text = r#"{"signature":{"functions":[{"name":"f","arity":1}],"relations":[{"name":"P","arity":1}]},
                       "domain_size":2,"functions":{"f":[1,0]},"relations":{}}"#;
        let err = FiniteModel::from_json(text).unwrap_err();
        assert_eq!(err, ModelError::MissingTable { field: "relations.P".into() });
    }

    #[test]
    fn enumeration_counts() {
        // 2^2 function tables × 2^2 relation tables on two elements
        assert_eq!(FiniteModel::enumerate(&sig(), 2).count(), 16);
        assert_eq!(FiniteModel::enumerate(&sig(), 1).count(), 2);
        let r = Signature::from_pairs(&[("c", 0)], &[("R", 2)]);
        assert_eq!(FiniteModel::enumerate(&r, 2).count(), 2 * 16);
    }

    #[test]
    fn relabel_moves_entries() {
        let m = FiniteModel::new(sig(), 2, vec![vec![0, 0]], vec![vec![true, false]]).unwrap();
        let swapped = m.relabel(&[1, 0]);
        assert_eq!(swapped.function_table(0), &[1, 1]);
        assert_eq!(swapped.relation_table(0), &[false, true]);
    }
}
