//! Command-line interface.
//!
//! Exit statuses form a total contract: 0 means the scan ran and nothing at
//! or above the `--fail-on` gate was found; 1 means the scan ran and gated
//! findings exist; 2 means the invocation itself failed (usage, config,
//! unreadable input, or parse errors without `--skip-unparsable`).

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::checklist::{
    checklist_item, evaluate_checklist, manifest_items, manifest_patterns, ChecklistItem,
    ConfigError, Pattern, ScanConfig,
};
use crate::report::{render, Format, ScanResult};
use crate::rules::{catalog, rule_spec, RuleSpec, Severity};
use crate::scan::run_scan;

const EXIT_OK: u8 = 0;
const EXIT_FINDINGS: u8 = 1;
const EXIT_ERROR: u8 = 2;

/// Environment variable consulted for a config path when `--config` is not
/// given.
pub const CONFIG_ENV: &str = "SC_CHECKLIST_CONFIG";

/// Default configuration written by `init`. Kept as literal text so the
/// generated file is stable and readable; it must always deserialize to
/// `ScanConfig::default()`.
pub const DEFAULT_CONFIG_JSON: &str = r#"{
  "disabled_rules": [],
  "disabled_items": [],
  "severity_overrides": {},
  "thresholds": {
    "fallback_max_statements": 3,
    "owner_name_pattern": "owner",
    "safemath_name_pattern": "SafeMath"
  },
  "manual_answers": {}
}
"#;

#[derive(Parser)]
#[command(
    name = "scchecklist",
    version,
    about = "Solidity security linter and assurance checklist"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze Solidity sources and render diagnostics plus the checklist.
    Scan(ScanArgs),
    /// List every lint rule with its phase, severity, and checklist item.
    ListRules,
    /// Describe a rule (C04), checklist item (COD-06), or pattern (CEI).
    Explain {
        /// Identifier to look up, case-insensitive.
        id: String,
    },
    /// Write a default `scchecklist.json` configuration file.
    Init {
        /// Directory to place the file in, or a `.json` path to write.
        #[arg(default_value = ".")]
        path: PathBuf,
        /// Overwrite an existing file.
        #[arg(long)]
        force: bool,
    },
    /// Render the checklist itself, with no sources scanned.
    Checklist(ChecklistArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Files or directories searched recursively for `*.sol`.
    #[arg(default_value = ".")]
    paths: Vec<PathBuf>,
    /// Output format: text, json, or markdown.
    #[arg(long, short, default_value = "text")]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Configuration file (defaults: $SC_CHECKLIST_CONFIG, then
    /// ./scchecklist.json if present, then built-in defaults).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Lowest severity that makes the exit status 1.
    #[arg(long, default_value = "error")]
    fail_on: Severity,
    /// Comma-separated rule ids; every other rule is disabled.
    #[arg(long, value_delimiter = ',')]
    rules: Option<Vec<String>>,
    /// Keep exit status 0/1 even when some files fail to parse
    /// (unparsable files are always excluded from analysis).
    #[arg(long)]
    skip_unparsable: bool,
}

#[derive(Args)]
struct ChecklistArgs {
    /// Output format: text, json, or markdown.
    #[arg(long, short, default_value = "markdown")]
    format: Format,
    /// Write the checklist to a file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Configuration file (same resolution as `scan`).
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Parse `std::env::args` and run. Returns the process exit status.
pub fn run() -> u8 {
    match Cli::parse().command {
        Command::Scan(args) => cmd_scan(args),
        Command::ListRules => cmd_list_rules(),
        Command::Explain { id } => cmd_explain(&id),
        Command::Init { path, force } => cmd_init(&path, force),
        Command::Checklist(args) => cmd_checklist(args),
    }
}

fn load_config(flag: Option<&Path>) -> Result<ScanConfig, ConfigError> {
    if let Some(path) = flag {
        return ScanConfig::load(path);
    }
    if let Ok(env_path) = std::env::var(CONFIG_ENV) {
        if !env_path.is_empty() {
            return ScanConfig::load(Path::new(&env_path));
        }
    }
    let local = Path::new("scchecklist.json");
    if local.exists() {
        return ScanConfig::load(local);
    }
    Ok(ScanConfig::default())
}

fn emit(output: Option<&Path>, text: &str) -> std::io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_scan(args: ScanArgs) -> u8 {
    let mut config = match load_config(args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };

    if let Some(selected) = &args.rules {
        let known: BTreeSet<&str> = catalog().iter().map(|r| r.id).collect();
        for id in selected {
            if !known.contains(id.as_str()) {
                eprintln!("error: unknown rule id `{id}` in --rules");
                return EXIT_ERROR;
            }
        }
        let keep: BTreeSet<&str> = selected.iter().map(String::as_str).collect();
        for rule in catalog() {
            if !keep.contains(rule.id) {
                config.disabled_rules.insert(rule.id.to_string());
            }
        }
    }

    let outcome = match run_scan(&args.paths, &config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };

    if let Err(e) = emit(args.output.as_deref(), &render(&outcome.result, args.format)) {
        eprintln!("error: cannot write report: {e}");
        return EXIT_ERROR;
    }

    for failure in &outcome.failures {
        eprintln!("parse error in {}:", failure.display);
        for err in &failure.errors {
            eprintln!("  {err}");
        }
    }
    if outcome.had_parse_errors() && !args.skip_unparsable {
        return EXIT_ERROR;
    }

    let gated = outcome
        .result
        .diagnostics
        .iter()
        .any(|d| d.severity >= args.fail_on);
    if gated {
        EXIT_FINDINGS
    } else {
        EXIT_OK
    }
}

fn cmd_list_rules() -> u8 {
    println!(
        "{:<6}{:<9}{:<9}{:<8}{}",
        "rule", "phase", "severity", "item", "title"
    );
    for r in catalog() {
        println!(
            "{:<6}{:<9}{:<9}{:<8}{}",
            r.id,
            r.phase.as_str(),
            r.default_severity.as_str(),
            r.checklist_item,
            r.title
        );
    }
    EXIT_OK
}

fn pattern_names(ids: &[&str]) -> String {
    if ids.is_empty() {
        return "none".to_string();
    }
    ids.iter()
        .map(|id| {
            match manifest_patterns().iter().find(|p| p.id == *id) {
                Some(p) => format!("{} ({})", p.id, p.name),
                None => (*id).to_string(),
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_rule(r: &RuleSpec) {
    println!("{} — {}", r.id, r.title);
    println!("phase: {}", r.phase.as_str());
    println!("default severity: {}", r.default_severity.as_str());
    let item_title = checklist_item(r.checklist_item)
        .map(|i| i.title)
        .unwrap_or("");
    println!("checklist item: {} — {}", r.checklist_item, item_title);
    println!("patterns: {}", pattern_names(r.patterns));
    println!();
    println!("{}", r.doc);
}

fn print_item(item: &ChecklistItem) {
    println!("{} — {}", item.item_id, item.title);
    println!("phase: {}", item.phase.as_str());
    println!("patterns: {}", pattern_names(item.pattern_ids));
    if item.automation.is_empty() {
        println!("automated by: none (manual review only)");
    } else {
        println!("automated by: {}", item.automation.join(", "));
    }
    println!(
        "manual review: {}",
        if item.manual_required {
            "required even when automation is clean"
        } else {
            "not required once automation is clean"
        }
    );
    println!();
    println!("{}", item.description);
}

fn print_pattern(p: &Pattern) {
    println!("{} — {}", p.id, p.name);
    println!();
    println!("{}", p.description);
}

fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut row = vec![i + 1];
        for (j, cb) in b.iter().enumerate() {
            let subst = prev[j] + usize::from(ca != cb);
            row.push(subst.min(prev[j + 1] + 1).min(row[j] + 1));
        }
        prev = row;
    }
    prev[b.len()]
}

fn cmd_explain(id: &str) -> u8 {
    let query = id.to_uppercase();
    if let Some(r) = rule_spec(&query) {
        print_rule(r);
        return EXIT_OK;
    }
    if let Some(item) = checklist_item(&query) {
        print_item(item);
        return EXIT_OK;
    }
    if let Some(p) = manifest_patterns().iter().find(|p| p.id == query) {
        print_pattern(p);
        return EXIT_OK;
    }

    eprintln!("error: unknown id `{id}`");
    let mut all_ids: Vec<&str> = catalog().iter().map(|r| r.id).collect();
    all_ids.extend(manifest_items().iter().map(|i| i.item_id));
    all_ids.extend(manifest_patterns().iter().map(|p| p.id));
    let near: Vec<&str> = all_ids
        .into_iter()
        .filter(|cand| levenshtein(&query, cand) <= 1)
        .collect();
    if !near.is_empty() {
        eprintln!("did you mean: {}?", near.join(", "));
    }
    EXIT_ERROR
}

fn cmd_init(path: &Path, force: bool) -> u8 {
    let target = if path.extension().and_then(|e| e.to_str()) == Some("json") {
        path.to_path_buf()
    } else {
        path.join("scchecklist.json")
    };
    if target.exists() && !force {
        eprintln!(
            "error: `{}` already exists (pass --force to overwrite)",
            target.display()
        );
        return EXIT_ERROR;
    }
    if let Err(e) = fs::write(&target, DEFAULT_CONFIG_JSON) {
        eprintln!("error: cannot write `{}`: {e}", target.display());
        return EXIT_ERROR;
    }
    println!("wrote {}", target.display());
    EXIT_OK
}

fn cmd_checklist(args: ChecklistArgs) -> u8 {
    let config = match load_config(args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let checklist = evaluate_checklist(manifest_items(), &[], &config);
    let result = ScanResult::new(Vec::new(), Vec::new(), checklist, Vec::new());
    if let Err(e) = emit(args.output.as_deref(), &render(&result, args.format)) {
        eprintln!("error: cannot write checklist: {e}");
        return EXIT_ERROR;
    }
    EXIT_OK
}
