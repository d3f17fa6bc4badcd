//! Merge automated diagnostics and manual answers into per-item statuses.
//!
//! The status function is total — every manifest item gets exactly one
//! status — and evaluation is a pure function of (diagnostics, config), so
//! the same inputs always produce the same report.

use super::config::{ManualAnswer, ManualStatus, ScanConfig};
use super::ChecklistItem;
use crate::rules::{Diagnostic, Severity};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ItemStatus {
    Pass,
    Fail,
    NeedsReview,
    ManualPending,
    Disabled,
    NotApplicable,
}

impl ItemStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ItemStatus::Pass => "pass",
            ItemStatus::Fail => "fail",
            ItemStatus::NeedsReview => "needs-review",
            ItemStatus::ManualPending => "manual-pending",
            ItemStatus::Disabled => "disabled",
            ItemStatus::NotApplicable => "not-applicable",
        }
    }
}

impl std::fmt::Display for ItemStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated checklist item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemResult {
    pub item: &'static ChecklistItem,
    pub status: ItemStatus,
    /// Indices into the diagnostics list this report was evaluated against.
    pub evidence: Vec<usize>,
    pub answer: Option<ManualAnswer>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChecklistReport {
    pub items: Vec<ItemResult>,
    /// Item count per phase name.
    pub per_phase: BTreeMap<&'static str, usize>,
    /// Item count per status name; values sum to the manifest size.
    pub per_status: BTreeMap<&'static str, usize>,
}

/// Evaluate the checklist against one scan's diagnostics.
pub fn evaluate_checklist(
    items: &'static [ChecklistItem],
    diagnostics: &[Diagnostic],
    config: &ScanConfig,
) -> ChecklistReport {
    let results: Vec<ItemResult> = items
        .iter()
        .map(|item| {
            let evidence: Vec<usize> = diagnostics
                .iter()
                .enumerate()
                .filter(|(_, d)| item.automation.contains(&d.rule_id))
                .map(|(i, _)| i)
                .collect();
            let answer = config.manual_answers.get(item.item_id).cloned();
            let status = status_for(item, &evidence, diagnostics, answer.as_ref(), config);
            ItemResult { item, status, evidence, answer }
        })
        .collect();

    let mut per_phase: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut per_status: BTreeMap<&'static str, usize> = BTreeMap::new();
    for r in &results {
        *per_phase.entry(r.item.phase.as_str()).or_default() += 1;
        *per_status.entry(r.status.as_str()).or_default() += 1;
    }
    ChecklistReport { items: results, per_phase, per_status }
}

fn status_for(
    item: &ChecklistItem,
    evidence: &[usize],
    diagnostics: &[Diagnostic],
    answer: Option<&ManualAnswer>,
    config: &ScanConfig,
) -> ItemStatus {
    // Config verdicts outrank everything the scan found.
    if config.disabled_items.contains(item.item_id) {
        return ItemStatus::Disabled;
    }
    if answer.is_some_and(|a| a.status == ManualStatus::NotApplicable) {
        return ItemStatus::NotApplicable;
    }

    let has_noninfo = evidence
        .iter()
        .any(|&i| diagnostics[i].severity > Severity::Info);
    let manual_fail = answer.is_some_and(|a| a.status == ManualStatus::Fail);
    if has_noninfo || manual_fail {
        return ItemStatus::Fail;
    }
    if !evidence.is_empty() {
        // Automation spoke, but only at info level: a human decides.
        return ItemStatus::NeedsReview;
    }

    // Automation is clean. If nothing automated actually ran — every linked
    // rule disabled — the item cannot be vouched for mechanically.
    let nothing_ran = !item.automation.is_empty()
        && item.automation.iter().all(|r| !config.rule_enabled(r));
    let needs_human = item.manual_required || nothing_ran;
    if !needs_human {
        return ItemStatus::Pass;
    }
    match answer {
        Some(a) if a.status == ManualStatus::Pass => ItemStatus::Pass,
        _ => ItemStatus::ManualPending,
    }
}
