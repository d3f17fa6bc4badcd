//! C3 linearization of contract inheritance.
//!
//! Solidity resolves multiple inheritance with C3 linearization over the
//! *reversed* base list: `contract D is B, C` merges the linearizations of C
//! and B (in that order) plus `[C, B]`, so the rightmost base is the most
//! derived ancestor. The result is ordered most-derived first, starting with
//! the contract itself.

use crate::ast::ContractDef;
use crate::span::Span;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearizationError {
    #[error("contract `{contract}` inherits from unknown base `{base}`")]
    UnknownBase { contract: String, base: String, span: Span },
    #[error("inheritance cycle: {}", path.join(" -> "))]
    Cycle { path: Vec<String> },
    #[error("bases of `{contract}` cannot be linearized (no valid C3 merge candidate)")]
    NoValidMerge { contract: String },
}

/// Linearize one contract against the set of all known contracts.
/// The first element of the result is the contract itself.
pub fn linearize(
    contract: &ContractDef,
    all: &BTreeMap<String, &ContractDef>,
) -> Result<Vec<String>, LinearizationError> {
    let mut memo = BTreeMap::new();
    let mut visiting = Vec::new();
    resolve(&contract.name, all, &mut memo, &mut visiting)
}

fn resolve(
    name: &str,
    all: &BTreeMap<String, &ContractDef>,
    memo: &mut BTreeMap<String, Vec<String>>,
    visiting: &mut Vec<String>,
) -> Result<Vec<String>, LinearizationError> {
    if let Some(done) = memo.get(name) {
        return Ok(done.clone());
    }
    if let Some(pos) = visiting.iter().position(|v| v == name) {
        let mut path: Vec<String> = visiting[pos..].to_vec();
        path.push(name.to_string());
        return Err(LinearizationError::Cycle { path });
    }
    let def = match all.get(name) {
        Some(def) => *def,
        // The caller resolves bases before recursing; a top-level unknown
        // name can only come from a direct `linearize` call.
        None => {
            return Err(LinearizationError::UnknownBase {
                contract: name.to_string(),
                base: name.to_string(),
                span: Span::default(),
            })
        }
    };

    visiting.push(name.to_string());
    let result = linearize_bases(def, all, memo, visiting);
    visiting.pop();

    let order = result?;
    memo.insert(name.to_string(), order.clone());
    Ok(order)
}

fn linearize_bases(
    def: &ContractDef,
    all: &BTreeMap<String, &ContractDef>,
    memo: &mut BTreeMap<String, Vec<String>>,
    visiting: &mut Vec<String>,
) -> Result<Vec<String>, LinearizationError> {
    let reversed: Vec<&crate::ast::BaseSpecifier> = def.bases.iter().rev().collect();
    let mut sequences: Vec<Vec<String>> = Vec::new();
    for base in &reversed {
        if !all.contains_key(&base.name) {
            return Err(LinearizationError::UnknownBase {
                contract: def.name.clone(),
                base: base.name.clone(),
                span: base.name_span,
            });
        }
        sequences.push(resolve(&base.name, all, memo, visiting)?);
    }
    sequences.push(reversed.iter().map(|b| b.name.clone()).collect());

    let merged = c3_merge(sequences).ok_or_else(|| LinearizationError::NoValidMerge {
        contract: def.name.clone(),
    })?;
    let mut order = Vec::with_capacity(merged.len() + 1);
    order.push(def.name.clone());
    order.extend(merged);
    Ok(order)
}

/// The C3 merge: repeatedly take the first list head that appears in no
/// list's tail; `None` when the candidates are exhausted before the lists.
fn c3_merge(mut sequences: Vec<Vec<String>>) -> Option<Vec<String>> {
    let mut result = Vec::new();
    loop {
        sequences.retain(|s| !s.is_empty());
        if sequences.is_empty() {
            return Some(result);
        }
        let candidate = sequences
            .iter()
            .map(|s| &s[0])
            .find(|head| !sequences.iter().any(|s| s[1..].contains(head)))?
            .clone();
        for seq in &mut sequences {
            seq.retain(|n| *n != candidate);
        }
        result.push(candidate);
    }
}
