//! Deterministic rendering of scan results.
//!
//! A [`ScanResult`] is a pure value: it carries no timestamps, absolute
//! paths, or other machine-varying data, so rendering the same result twice
//! yields byte-identical output in every format. Three formats are
//! supported: a compiler-style text listing, a stable JSON document, and a
//! Markdown checklist suitable for pasting into review notes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::checklist::{appendix_entries, ChecklistReport};
use crate::rules::{rule_spec, Diagnostic, Severity};
use crate::span::LineIndex;

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!(
                "unknown format `{other}` (expected text, json, or markdown)"
            )),
        }
    }
}

/// One scanned file and whether it parsed.
#[derive(Debug, Clone)]
pub struct FileRecord {
    /// Path relative to the scan root, with `/` separators.
    pub path: String,
    pub parsed: bool,
}

/// A diagnostic with its span resolved to editor coordinates (1-based
/// lines and columns) and its checklist linkage attached.
#[derive(Debug, Clone)]
pub struct DiagnosticRecord {
    pub rule: &'static str,
    pub severity: Severity,
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub end_line: u32,
    pub end_col: u32,
    pub message: String,
    pub patterns: &'static [&'static str],
    /// Checklist item the rule automates.
    pub item: &'static str,
}

impl DiagnosticRecord {
    /// Resolve a raw diagnostic against the source text it was produced
    /// from. The start position is carried on the span; the end position
    /// is looked up in `index`.
    pub fn resolve(d: &Diagnostic, text: &str, index: &LineIndex) -> Self {
        let (end_line, end_col) = index.position(text, d.span.end);
        let spec = rule_spec(d.rule_id).expect("diagnostic rule is in the catalog");
        DiagnosticRecord {
            rule: d.rule_id,
            severity: d.severity,
            file: d.file.clone(),
            line: d.span.line,
            col: d.span.col,
            end_line,
            end_col,
            message: d.message.clone(),
            patterns: d.pattern_ids,
            item: spec.checklist_item,
        }
    }
}

/// Everything one scan produced, ready to render.
///
/// `diagnostics` must be in final sorted order, and the checklist's
/// evidence indices refer to positions in that same vector.
#[derive(Debug)]
pub struct ScanResult {
    pub tool: &'static str,
    pub version: &'static str,
    pub files: Vec<FileRecord>,
    pub diagnostics: Vec<DiagnosticRecord>,
    pub checklist: ChecklistReport,
    /// Free-form remarks, e.g. parse failures of excluded files.
    pub notes: Vec<String>,
}

impl ScanResult {
    pub fn new(
        files: Vec<FileRecord>,
        diagnostics: Vec<DiagnosticRecord>,
        checklist: ChecklistReport,
        notes: Vec<String>,
    ) -> Self {
        ScanResult {
            tool: "scchecklist",
            version: env!("CARGO_PKG_VERSION"),
            files,
            diagnostics,
            checklist,
            notes,
        }
    }

    /// Count of diagnostics at exactly `sev`.
    pub fn count_at(&self, sev: Severity) -> usize {
        self.diagnostics.iter().filter(|d| d.severity == sev).count()
    }
}

/// Render `result` in the chosen format. Pure and deterministic.
pub fn render(result: &ScanResult, format: Format) -> String {
    match format {
        Format::Text => render_text(result),
        Format::Json => render_json(result),
        Format::Markdown => render_markdown(result),
    }
}

const STATUS_ORDER: [&str; 6] = [
    "pass",
    "fail",
    "needs-review",
    "manual-pending",
    "disabled",
    "not-applicable",
];

fn render_text(r: &ScanResult) -> String {
    let mut out = String::new();
    for d in &r.diagnostics {
        writeln!(
            out,
            "{}:{}:{} {} {} {} [{}]",
            d.file,
            d.line,
            d.col,
            d.severity,
            d.rule,
            d.message,
            d.patterns.join(",")
        )
        .unwrap();
    }
    if !r.diagnostics.is_empty() {
        out.push('\n');
    }
    if !r.notes.is_empty() {
        out.push_str("Notes:\n");
        for n in &r.notes {
            writeln!(out, "  {n}").unwrap();
        }
        out.push('\n');
    }

    out.push_str("Checklist:\n");
    for item in &r.checklist.items {
        writeln!(
            out,
            "  {:<8}{:<16}{}",
            item.item.item_id,
            item.status.as_str(),
            item.item.title
        )
        .unwrap();
        if !item.evidence.is_empty() {
            let refs: Vec<String> = item
                .evidence
                .iter()
                .map(|&i| {
                    let d = &r.diagnostics[i];
                    format!("{}:{}:{}", d.file, d.line, d.col)
                })
                .collect();
            writeln!(out, "          evidence: {}", refs.join(", ")).unwrap();
        }
        if let Some(a) = &item.answer {
            let mut line = format!("          answer: {}", a.status.as_str());
            if let Some(n) = &a.note {
                line.push_str(&format!(" — {n}"));
            }
            if let Some(p) = &a.author {
                line.push_str(&format!(" ({p})"));
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out.push('\n');

    out.push_str("Summary:\n");
    let parsed = r.files.iter().filter(|f| f.parsed).count();
    writeln!(out, "  files: {} scanned, {} parsed", r.files.len(), parsed).unwrap();
    writeln!(
        out,
        "  diagnostics: {} (error {}, warning {}, info {})",
        r.diagnostics.len(),
        r.count_at(Severity::Error),
        r.count_at(Severity::Warning),
        r.count_at(Severity::Info)
    )
    .unwrap();
    writeln!(
        out,
        "  items: design {}, coding {}, testing {}",
        r.checklist.per_phase.get("design").copied().unwrap_or(0),
        r.checklist.per_phase.get("coding").copied().unwrap_or(0),
        r.checklist.per_phase.get("testing").copied().unwrap_or(0)
    )
    .unwrap();
    let status_parts: Vec<String> = STATUS_ORDER
        .iter()
        .map(|s| format!("{s} {}", r.checklist.per_status.get(s).copied().unwrap_or(0)))
        .collect();
    writeln!(out, "  status: {}", status_parts.join(", ")).unwrap();
    out.push('\n');

    out.push_str("Additional patterns (informational):\n");
    for entry in appendix_entries() {
        writeln!(out, "  {}: {}", entry.name, entry.description).unwrap();
    }
    out
}

fn render_json(r: &ScanResult) -> String {
    let files: Vec<Value> = r
        .files
        .iter()
        .map(|f| json!({ "path": f.path, "parsed": f.parsed }))
        .collect();

    let diagnostics: Vec<Value> = r
        .diagnostics
        .iter()
        .map(|d| {
            json!({
                "rule": d.rule,
                "severity": d.severity.as_str(),
                "file": d.file,
                "line": d.line,
                "col": d.col,
                "end_line": d.end_line,
                "end_col": d.end_col,
                "message": d.message,
                "patterns": d.patterns,
                "item": d.item,
            })
        })
        .collect();

    let checklist: Vec<Value> = r
        .checklist
        .items
        .iter()
        .map(|item| {
            let mut obj = Map::new();
            obj.insert("item".into(), json!(item.item.item_id));
            obj.insert("phase".into(), json!(item.item.phase.as_str()));
            obj.insert("title".into(), json!(item.item.title));
            obj.insert("status".into(), json!(item.status.as_str()));
            obj.insert("evidence".into(), json!(item.evidence));
            if let Some(a) = &item.answer {
                let mut ans = Map::new();
                ans.insert("status".into(), json!(a.status.as_str()));
                if let Some(n) = &a.note {
                    ans.insert("note".into(), json!(n));
                }
                if let Some(p) = &a.author {
                    ans.insert("author".into(), json!(p));
                }
                obj.insert("answer".into(), Value::Object(ans));
            }
            Value::Object(obj)
        })
        .collect();

    let by_status: Map<String, Value> = STATUS_ORDER
        .iter()
        .map(|&s| {
            (
                s.to_string(),
                json!(r.checklist.per_status.get(s).copied().unwrap_or(0)),
            )
        })
        .collect();

    let summary = json!({
        "files": r.files.len(),
        "parsed": r.files.iter().filter(|f| f.parsed).count(),
        "diagnostics": r.diagnostics.len(),
        "by_severity": {
            "error": r.count_at(Severity::Error),
            "warning": r.count_at(Severity::Warning),
            "info": r.count_at(Severity::Info),
        },
        "by_phase": {
            "design": r.checklist.per_phase.get("design").copied().unwrap_or(0),
            "coding": r.checklist.per_phase.get("coding").copied().unwrap_or(0),
            "testing": r.checklist.per_phase.get("testing").copied().unwrap_or(0),
        },
        "by_status": by_status,
    });

    let root = json!({
        "tool": r.tool,
        "version": r.version,
        "files": files,
        "diagnostics": diagnostics,
        "checklist": checklist,
        "notes": r.notes,
        "summary": summary,
    });
    let mut text = serde_json::to_string_pretty(&root).expect("value serializes");
    text.push('\n');
    text
}

fn render_markdown(r: &ScanResult) -> String {
    let mut out = String::from("# Security assurance checklist\n");
    for phase in ["design", "coding", "testing"] {
        let mut heading = phase.to_string();
        heading[..1].make_ascii_uppercase();
        write!(out, "\n## {heading}\n\n").unwrap();
        for item in &r.checklist.items {
            if item.item.phase.as_str() != phase {
                continue;
            }
            let mark = if item.status == crate::checklist::ItemStatus::Pass {
                'x'
            } else {
                ' '
            };
            write!(
                out,
                "- [{mark}] **{}** {} — {}",
                item.item.item_id,
                item.item.title,
                item.status.as_str()
            )
            .unwrap();
            if !item.evidence.is_empty() {
                let refs: Vec<String> = item
                    .evidence
                    .iter()
                    .map(|&i| {
                        let d = &r.diagnostics[i];
                        format!("`{}:{}`", d.file, d.line)
                    })
                    .collect();
                write!(out, " ({})", refs.join(", ")).unwrap();
            }
            out.push('\n');
        }
    }

    out.push_str("\n## Additional patterns\n\nInformational, not scored:\n\n");
    for entry in appendix_entries() {
        writeln!(out, "- **{}** — {}", entry.name, entry.description).unwrap();
    }

    out.push_str("\n## Summary\n\n");
    let parsed = r.files.iter().filter(|f| f.parsed).count();
    writeln!(out, "- files: {} scanned, {} parsed", r.files.len(), parsed).unwrap();
    writeln!(
        out,
        "- diagnostics: {} (error {}, warning {}, info {})",
        r.diagnostics.len(),
        r.count_at(Severity::Error),
        r.count_at(Severity::Warning),
        r.count_at(Severity::Info)
    )
    .unwrap();
    for n in &r.notes {
        writeln!(out, "- note: {n}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checklist::{
        evaluate_checklist, manifest_items, ManualAnswer, ManualStatus, ScanConfig,
    };
    use crate::parser::parse;
    use crate::rules::evaluate_rules;
    use crate::semantics::AnalysisContext;

    /// Run the full single-file pipeline over `src` as `t.sol`.
    fn build_result(src: &str, config: &ScanConfig) -> ScanResult {
        let unit = parse(src).expect("fixture parses");
        let ctx = AnalysisContext::build_single(&unit);
        let diags = evaluate_rules(&ctx, config, "t.sol");
        let checklist = evaluate_checklist(manifest_items(), &diags, config);
        let index = LineIndex::new(src);
        let records = diags
            .iter()
            .map(|d| DiagnosticRecord::resolve(d, src, &index))
            .collect();
        ScanResult::new(
            vec![FileRecord { path: "t.sol".into(), parsed: true }],
            records,
            checklist,
            Vec::new(),
        )
    }

    const TX_ORIGIN_SRC: &str = "pragma solidity 0.8.19;\n\
                                 contract Gate {\n\
                                 address owner;\n\
                                 function enter() public {\n\
                                 require(tx.origin == owner);\n\
                                 }\n\
                                 }\n";

    #[test]
    fn text_diagnostic_lines_follow_the_editor_convention() {
        let result = build_result(TX_ORIGIN_SRC, &ScanConfig::default());
        let text = render(&result, Format::Text);
        let re = regex::Regex::new(r"(?m)^.+\.sol:\d+:\d+ error C04 .+\[AU\]$").unwrap();
        assert!(re.is_match(&text), "no C04 line in:\n{text}");
        assert!(text.contains("t.sol:5:"));
    }

    #[test]
    fn text_render_includes_checklist_and_appendix_sections() {
        let result = build_result(TX_ORIGIN_SRC, &ScanConfig::default());
        let text = render(&result, Format::Text);
        assert!(text.contains("Checklist:"));
        assert!(text.contains("COD-06  fail"));
        assert!(text.contains("evidence: t.sol:5:"));
        assert!(text.contains("Additional patterns (informational):"));
        assert!(text.contains("Publisher-Subscriber:"));
        assert!(text.contains("status: pass "));
    }

    #[test]
    fn empty_result_renders_the_degenerate_shapes() {
        let checklist =
            evaluate_checklist(manifest_items(), &[], &ScanConfig::default());
        let result = ScanResult::new(Vec::new(), Vec::new(), checklist, Vec::new());

        let js: Value = serde_json::from_str(&render(&result, Format::Json)).unwrap();
        assert_eq!(js["diagnostics"], json!([]));
        assert_eq!(js["checklist"].as_array().unwrap().len(), 32);
        for entry in js["checklist"].as_array().unwrap() {
            let status = entry["status"].as_str().unwrap();
            assert!(status == "pass" || status == "manual-pending");
        }
        assert_eq!(js["summary"]["by_status"]["pass"], json!(10));
        assert_eq!(js["summary"]["by_status"]["manual-pending"], json!(22));

        let text = render(&result, Format::Text);
        assert!(text.starts_with("Checklist:\n"));
        assert!(text.contains("files: 0 scanned, 0 parsed"));
    }

    #[test]
    fn json_has_the_stable_key_set_and_round_trips() {
        let result = build_result(TX_ORIGIN_SRC, &ScanConfig::default());
        let rendered = render(&result, Format::Json);

        let js: Value = serde_json::from_str(&rendered).unwrap();
        let keys: Vec<&str> = js.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            vec!["tool", "version", "files", "diagnostics", "checklist", "notes", "summary"]
        );
        let diag = &js["diagnostics"][0];
        let dkeys: Vec<&str> =
            diag.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            dkeys,
            vec![
                "rule", "severity", "file", "line", "col", "end_line", "end_col",
                "message", "patterns", "item"
            ]
        );
        assert_eq!(diag["rule"], json!("C04"));
        assert_eq!(diag["line"], json!(5));
        assert_eq!(diag["item"], json!("COD-06"));
        assert_eq!(diag["patterns"], json!(["AU"]));
        assert_eq!(diag["end_line"], json!(5));
        assert!(diag["end_col"].as_u64().unwrap() > diag["col"].as_u64().unwrap());

        // Parse and re-render: byte-identical.
        let mut again = serde_json::to_string_pretty(&js).unwrap();
        again.push('\n');
        assert_eq!(rendered, again);
    }

    #[test]
    fn json_evidence_indices_point_into_the_diagnostics_array() {
        let result = build_result(TX_ORIGIN_SRC, &ScanConfig::default());
        let js: Value = serde_json::from_str(&render(&result, Format::Json)).unwrap();
        let n = js["diagnostics"].as_array().unwrap().len() as u64;
        let cod06 = js["checklist"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["item"] == json!("COD-06"))
            .unwrap();
        assert_eq!(cod06["status"], json!("fail"));
        for idx in cod06["evidence"].as_array().unwrap() {
            assert!(idx.as_u64().unwrap() < n);
        }
    }

    #[test]
    fn json_includes_manual_answers_when_present() {
        let mut config = ScanConfig::default();
        config.manual_answers.insert(
            "TST-04".into(),
            ManualAnswer {
                status: ManualStatus::Pass,
                note: Some("unit suite in ci".into()),
                author: Some("alice".into()),
            },
        );
        let result = build_result(TX_ORIGIN_SRC, &config);
        let js: Value = serde_json::from_str(&render(&result, Format::Json)).unwrap();
        let tst04 = js["checklist"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["item"] == json!("TST-04"))
            .unwrap();
        assert_eq!(tst04["status"], json!("pass"));
        assert_eq!(tst04["answer"]["status"], json!("pass"));
        assert_eq!(tst04["answer"]["note"], json!("unit suite in ci"));
        assert_eq!(tst04["answer"]["author"], json!("alice"));
    }

    #[test]
    fn markdown_has_exactly_32_checkboxes_under_three_phase_headings() {
        let result = build_result(TX_ORIGIN_SRC, &ScanConfig::default());
        let md = render(&result, Format::Markdown);
        let boxes = md.lines().filter(|l| l.starts_with("- [")).count();
        assert_eq!(boxes, 32);
        for heading in ["## Design", "## Coding", "## Testing"] {
            assert!(md.contains(heading));
        }
        assert!(md.contains("- [ ] **COD-06**"));
        assert!(md.contains("(`t.sol:5`)"));
        assert!(md.contains("## Additional patterns"));
    }

    #[test]
    fn markdown_checks_passing_items() {
        let checklist =
            evaluate_checklist(manifest_items(), &[], &ScanConfig::default());
        let result = ScanResult::new(
            vec![FileRecord { path: "t.sol".into(), parsed: true }],
            Vec::new(),
            checklist,
            Vec::new(),
        );
        let md = render(&result, Format::Markdown);
        let checked = md.lines().filter(|l| l.starts_with("- [x]")).count();
        assert_eq!(checked, 10);
        assert!(md.contains("- [x] **COD-06** Avoid using tx.origin for authorizations — pass"));
    }

    #[test]
    fn summary_counts_match_recomputed_counts() {
        let result = build_result(TX_ORIGIN_SRC, &ScanConfig::default());
        let js: Value = serde_json::from_str(&render(&result, Format::Json)).unwrap();
        let diags = js["diagnostics"].as_array().unwrap();
        assert_eq!(js["summary"]["diagnostics"], json!(diags.len()));
        for sev in ["error", "warning", "info"] {
            let n = diags.iter().filter(|d| d["severity"] == json!(sev)).count();
            assert_eq!(js["summary"]["by_severity"][sev], json!(n), "severity {sev}");
        }
        let items = js["checklist"].as_array().unwrap();
        for status in STATUS_ORDER {
            let n = items.iter().filter(|e| e["status"] == json!(status)).count();
            assert_eq!(js["summary"]["by_status"][status], json!(n), "status {status}");
        }
        let mut phases = std::collections::BTreeMap::new();
        for e in items {
            *phases.entry(e["phase"].as_str().unwrap().to_string()).or_insert(0usize) += 1;
        }
        for phase in ["design", "coding", "testing"] {
            assert_eq!(js["summary"]["by_phase"][phase], json!(phases[phase]));
        }
    }

    #[test]
    fn rendering_is_deterministic_across_repeated_pipeline_runs() {
        let config = ScanConfig::default();
        let first = build_result(TX_ORIGIN_SRC, &config);
        let second = build_result(TX_ORIGIN_SRC, &config);
        for format in [Format::Text, Format::Json, Format::Markdown] {
            assert_eq!(render(&first, format), render(&second, format));
        }
    }

    #[test]
    fn format_parses_from_cli_spellings() {
        assert_eq!("text".parse::<Format>().unwrap(), Format::Text);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("markdown".parse::<Format>().unwrap(), Format::Markdown);
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn notes_render_in_text_and_markdown() {
        let checklist =
            evaluate_checklist(manifest_items(), &[], &ScanConfig::default());
        let result = ScanResult::new(
            vec![FileRecord { path: "bad.sol".into(), parsed: false }],
            Vec::new(),
            checklist,
            vec!["bad.sol: parse error: unexpected token".into()],
        );
        let text = render(&result, Format::Text);
        assert!(text.contains("Notes:\n  bad.sol: parse error"));
        assert!(text.contains("files: 1 scanned, 0 parsed"));
        let md = render(&result, Format::Markdown);
        assert!(md.contains("- note: bad.sol: parse error"));
        let js: Value = serde_json::from_str(&render(&result, Format::Json)).unwrap();
        assert_eq!(js["notes"][0], json!("bad.sol: parse error: unexpected token"));
        assert_eq!(js["files"][0]["parsed"], json!(false));
    }
}
