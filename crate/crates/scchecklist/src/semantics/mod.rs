//! Semantic analysis over the parsed AST: inheritance linearization, symbol
//! tables, intraprocedural control-flow graphs, call classification, and
//! state-variable effect collection, bundled into an [`AnalysisContext`]
//! consumed by the rules.

pub mod calls;
pub mod cfg;
pub mod effects;
pub mod linearize;
pub mod symbols;

pub use calls::{classify_calls, CallKind, CallSite};
pub use cfg::{build_cfg, Cfg};
pub use effects::{collect_state_effects, StateEffect};
pub use linearize::{linearize, LinearizationError};
pub use symbols::{build_symbols, SymbolKind, SymbolTable};

use crate::ast::*;
use crate::span::Span;
use std::collections::{BTreeMap, BTreeSet};

/// Everything the rules need to know about one source unit, precomputed.
///
/// Function-level results (`cfgs`, `calls`, `effects`) are keyed by the
/// definition's span; `calls` and `effects` also carry entries for modifier
/// bodies. Contracts whose inheritance cannot be linearized fall back to a
/// self-only linearization and the error is kept for reporting.
pub struct AnalysisContext<'a> {
    pub unit: &'a SourceUnit,
    /// Every contract definition in the scan set, by name (this unit's own
    /// contracts included), so rules can walk inherited bodies.
    pub contracts: BTreeMap<String, &'a ContractDef>,
    /// Contract names defined anywhere in the scan set.
    pub known_contracts: BTreeSet<String>,
    pub linearizations: BTreeMap<String, Vec<String>>,
    pub linearization_errors: Vec<LinearizationError>,
    pub symbols: SymbolTable,
    pub cfgs: BTreeMap<Span, Cfg>,
    pub calls: BTreeMap<Span, Vec<CallSite>>,
    pub effects: BTreeMap<Span, StateEffect>,
}

impl<'a> AnalysisContext<'a> {
    /// Analyze one unit against the scan-wide contract table (which must
    /// include this unit's own contracts).
    pub fn build(unit: &'a SourceUnit, global: &BTreeMap<String, &'a ContractDef>) -> Self {
        let known_contracts: BTreeSet<String> = global.keys().cloned().collect();

        let mut linearizations = BTreeMap::new();
        let mut linearization_errors = Vec::new();
        for contract in &unit.contracts {
            match linearize(contract, global) {
                Ok(order) => {
                    linearizations.insert(contract.name.clone(), order);
                }
                Err(err) => {
                    linearization_errors.push(err);
                    linearizations.insert(contract.name.clone(), vec![contract.name.clone()]);
                }
            }
        }

        let symbols = build_symbols(unit, global, &linearizations);

        let mut cfgs = BTreeMap::new();
        let mut call_map = BTreeMap::new();
        let mut effect_map = BTreeMap::new();
        for contract in &unit.contracts {
            for func in &contract.functions {
                if let Some(cfg) = build_cfg(func) {
                    cfgs.insert(func.span, cfg);
                }
                call_map.insert(
                    func.span,
                    classify_calls(func, &contract.name, &symbols, &known_contracts),
                );
                effect_map.insert(
                    func.span,
                    collect_state_effects(func, &symbols),
                );
            }
            for m in &contract.modifiers {
                let Some(body) = &m.body else { continue };
                call_map.insert(
                    m.span,
                    calls::classify_calls_in_block(body, &contract.name, &symbols, &known_contracts),
                );
                effect_map.insert(
                    m.span,
                    effects::collect_state_effects_in_block(body, &symbols),
                );
            }
        }

        AnalysisContext {
            unit,
            contracts: global.clone(),
            known_contracts,
            linearizations,
            linearization_errors,
            symbols,
            cfgs,
            calls: call_map,
            effects: effect_map,
        }
    }

    /// Analyze a unit in isolation (its own contracts form the scan set).
    pub fn build_single(unit: &'a SourceUnit) -> Self {
        let global: BTreeMap<String, &ContractDef> =
            unit.contracts.iter().map(|c| (c.name.clone(), c)).collect();
        Self::build(unit, &global)
    }

    pub fn cfg_for(&self, func: &FunctionDef) -> Option<&Cfg> {
        self.cfgs.get(&func.span)
    }

    pub fn calls_for(&self, span: Span) -> &[CallSite] {
        self.calls.get(&span).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn effects_for(&self, span: Span) -> Option<&StateEffect> {
        self.effects.get(&span)
    }

    /// Linearization of a contract, falling back to the contract alone.
    pub fn linearization_of(&self, name: &str) -> Vec<String> {
        self.linearizations
            .get(name)
            .cloned()
            .unwrap_or_else(|| vec![name.to_string()])
    }
}
