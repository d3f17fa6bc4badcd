//! Project configuration: disabled rules/items, severity overrides,
//! detection thresholds, and manual checklist answers.
//!
//! Configuration is a JSON document (default name `scchecklist.json`).
//! Unknown rule or item identifiers are load errors — a typo that silently
//! disabled nothing would defeat the point of a checklist.

use crate::rules::Severity;
use regex::Regex;
use serde::Deserialize;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("config field `{field}`: unknown rule id `{id}`")]
    UnknownRule { field: String, id: String },
    #[error("config field `{field}`: unknown checklist item id `{id}`")]
    UnknownItem { field: String, id: String },
    #[error("config field `thresholds.{field}`: invalid pattern: {source}")]
    BadPattern {
        field: String,
        source: regex::Error,
    },
}

/// Manual verdict for one checklist item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManualStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl ManualStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ManualStatus::Pass => "pass",
            ManualStatus::Fail => "fail",
            ManualStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManualAnswer {
    pub status: ManualStatus,
    #[serde(default)]
    pub note: Option<String>,
    #[serde(default)]
    pub author: Option<String>,
}

/// Detection thresholds and name patterns, all with working defaults.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Thresholds {
    /// Statement budget for fallback functions (C09).
    pub fallback_max_statements: usize,
    /// Case-insensitive regex naming owner-like state variables (C03).
    pub owner_name_pattern: String,
    /// Case-insensitive regex naming safe-math libraries (C05).
    pub safemath_name_pattern: String,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            fallback_max_statements: 3,
            owner_name_pattern: "owner".to_string(),
            safemath_name_pattern: "SafeMath".to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub disabled_rules: BTreeSet<String>,
    pub disabled_items: BTreeSet<String>,
    pub severity_overrides: BTreeMap<String, Severity>,
    pub thresholds: Thresholds,
    pub manual_answers: BTreeMap<String, ManualAnswer>,
}

impl ScanConfig {
    /// Parse and validate a JSON config document.
    pub fn from_json(text: &str, origin: &str) -> Result<ScanConfig, ConfigError> {
        let config: ScanConfig =
            serde_json::from_str(text).map_err(|source| ConfigError::Parse {
                path: origin.to_string(),
                source,
            })?;
        config.validate()?;
        Ok(config)
    }

    /// Load and validate a config file.
    pub fn load(path: &Path) -> Result<ScanConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    /// Check every referenced id against the rule catalog and manifest, and
    /// compile the name patterns.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let rule_ids: BTreeSet<&str> =
            crate::rules::catalog().iter().map(|r| r.id).collect();
        let item_ids: BTreeSet<&str> = crate::checklist::manifest_items()
            .iter()
            .map(|i| i.item_id)
            .collect();

        for id in &self.disabled_rules {
            if !rule_ids.contains(id.as_str()) {
                return Err(ConfigError::UnknownRule {
                    field: "disabled_rules".to_string(),
                    id: id.clone(),
                });
            }
        }
        for id in self.severity_overrides.keys() {
            if !rule_ids.contains(id.as_str()) {
                return Err(ConfigError::UnknownRule {
                    field: "severity_overrides".to_string(),
                    id: id.clone(),
                });
            }
        }
        for id in &self.disabled_items {
            if !item_ids.contains(id.as_str()) {
                return Err(ConfigError::UnknownItem {
                    field: "disabled_items".to_string(),
                    id: id.clone(),
                });
            }
        }
        for id in self.manual_answers.keys() {
            if !item_ids.contains(id.as_str()) {
                return Err(ConfigError::UnknownItem {
                    field: "manual_answers".to_string(),
                    id: id.clone(),
                });
            }
        }
        self.owner_regex().map_err(|source| ConfigError::BadPattern {
            field: "owner_name_pattern".to_string(),
            source,
        })?;
        self.safemath_regex().map_err(|source| ConfigError::BadPattern {
            field: "safemath_name_pattern".to_string(),
            source,
        })?;
        Ok(())
    }

    pub fn rule_enabled(&self, id: &str) -> bool {
        !self.disabled_rules.contains(id)
    }

    pub fn owner_regex(&self) -> Result<Regex, regex::Error> {
        Regex::new(&format!("(?i){}", self.thresholds.owner_name_pattern))
    }

    pub fn safemath_regex(&self) -> Result<Regex, regex::Error> {
        Regex::new(&format!("(?i){}", self.thresholds.safemath_name_pattern))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_all_defaults() {
        let config = ScanConfig::from_json("{}", "test").unwrap();
        assert!(config.disabled_rules.is_empty());
        assert!(config.disabled_items.is_empty());
        assert!(config.severity_overrides.is_empty());
        assert!(config.manual_answers.is_empty());
        assert_eq!(config.thresholds.fallback_max_statements, 3);
        assert_eq!(config.thresholds.owner_name_pattern, "owner");
        assert_eq!(config.thresholds.safemath_name_pattern, "SafeMath");
    }

    #[test]
    fn single_disabled_rule_keeps_other_defaults() {
        let config = ScanConfig::from_json(r#"{"disabled_rules": ["C07"]}"#, "test").unwrap();
        assert!(!config.rule_enabled("C07"));
        assert!(config.rule_enabled("C01"));
        assert_eq!(config.thresholds.fallback_max_statements, 3);
    }

    #[test]
    fn unknown_rule_id_is_an_error_naming_the_id() {
        let err = ScanConfig::from_json(r#"{"disabled_rules": ["C99"]}"#, "test").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("C99"), "message was: {msg}");
        assert!(msg.contains("disabled_rules"));
    }

    #[test]
    fn unknown_item_and_bad_severity_are_errors() {
        let err = ScanConfig::from_json(r#"{"disabled_items": ["XYZ-99"]}"#, "test").unwrap_err();
        assert!(err.to_string().contains("XYZ-99"));

        let err =
            ScanConfig::from_json(r#"{"severity_overrides": {"C04": "severe"}}"#, "test")
                .unwrap_err();
        assert!(err.to_string().contains("severe"));

        let err = ScanConfig::from_json(
            r#"{"severity_overrides": {"C99": "info"}}"#,
            "test",
        )
        .unwrap_err();
        assert!(err.to_string().contains("C99"));
    }

    #[test]
    fn unknown_top_level_keys_are_rejected() {
        let err = ScanConfig::from_json(r#"{"disable_rules": []}"#, "test").unwrap_err();
        assert!(err.to_string().contains("disable_rules"));
    }

    #[test]
    fn non_integer_threshold_is_a_parse_error() {
        let err = ScanConfig::from_json(
            r#"{"thresholds": {"fallback_max_statements": "three"}}"#,
            "test",
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::Parse { .. }));
    }

    #[test]
    fn manual_answers_parse_with_optional_fields() {
        let config = ScanConfig::from_json(
            r#"{"manual_answers": {"DES-03": {"status": "not-applicable", "note": "no channels"}}}"#,
            "test",
        )
        .unwrap();
        let answer = &config.manual_answers["DES-03"];
        assert_eq!(answer.status, ManualStatus::NotApplicable);
        assert_eq!(answer.note.as_deref(), Some("no channels"));
        assert!(answer.author.is_none());
    }

    #[test]
    fn bad_regex_pattern_is_reported() {
        let err = ScanConfig::from_json(
            r#"{"thresholds": {"owner_name_pattern": "("}}"#,
            "test",
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::BadPattern { .. }));
    }

    #[test]
    fn owner_regex_is_case_insensitive() {
        let config = ScanConfig::default();
        let re = config.owner_regex().unwrap();
        assert!(re.is_match("contractOwner"));
        assert!(re.is_match("OWNER"));
        assert!(!re.is_match("admin"));
    }
}
