//! Filesystem traversal and the end-to-end analysis pipeline.
//!
//! A scan takes a list of files and directories, locates every Solidity
//! source, parses them, builds one shared contract table so inheritance
//! works across files, evaluates all rules and the checklist, and returns a
//! render-ready [`ScanResult`]. Files that fail to parse are excluded from
//! rule evaluation — no findings are ever derived from a half-understood
//! tree — and surface both as notes in the result and as structured
//! [`ParseFailure`] values for the caller to report.
//!
//! Determinism: sources are processed in lexicographic order of their
//! rendered paths, and those paths are relative to the scan roots the user
//! named, so the same invocation always yields byte-identical reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;
use walkdir::WalkDir;

use crate::ast::ContractDef;
use crate::checklist::{evaluate_checklist, manifest_items, ScanConfig};
use crate::parser::{parse, ParseError};
use crate::report::{DiagnosticRecord, FileRecord, ScanResult};
use crate::rules::evaluate_rules;
use crate::semantics::AnalysisContext;
use crate::span::LineIndex;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("cannot read `{path}`: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("no Solidity sources found")]
    NoSources,
}

/// One source file located on disk and loaded into memory.
#[derive(Debug)]
pub struct SourceFile {
    /// Report path: relative to the scan root that found the file.
    pub display: String,
    pub text: String,
}

/// A file that did not parse, with every error the parser reported.
#[derive(Debug)]
pub struct ParseFailure {
    pub display: String,
    pub errors: Vec<ParseError>,
}

/// Everything a scan produced.
#[derive(Debug)]
pub struct ScanOutcome {
    pub result: ScanResult,
    /// Parse failures, for detailed out-of-band reporting.
    pub failures: Vec<ParseFailure>,
}

impl ScanOutcome {
    pub fn had_parse_errors(&self) -> bool {
        !self.failures.is_empty()
    }
}

/// Reduce a user-supplied path to the prefix used in report paths:
/// `./`-segments dropped, trailing separator dropped, and absolute paths
/// shortened to be relative to the working directory when possible, or to
/// their final component otherwise.
fn display_prefix(arg: &Path) -> String {
    let arg = match std::env::current_dir() {
        Ok(cwd) => arg.strip_prefix(&cwd).unwrap_or(arg),
        Err(_) => arg,
    };
    let mut parts: Vec<String> = Vec::new();
    for comp in arg.components() {
        use std::path::Component;
        match comp {
            Component::CurDir | Component::RootDir | Component::Prefix(_) => {}
            Component::ParentDir => parts.push("..".into()),
            Component::Normal(p) => parts.push(p.to_string_lossy().into_owned()),
        }
    }
    if arg.is_absolute() {
        // An absolute path outside the working directory keeps only its
        // final component; reports must not embed machine-specific roots.
        parts.drain(..parts.len().saturating_sub(1));
    }
    parts.join("/")
}

/// Locate every Solidity source reachable from `paths` and load it.
///
/// Directory arguments are searched recursively for `*.sol`; file arguments
/// are taken as given. The same physical file reachable through several
/// arguments is loaded once. The returned list is sorted by display path.
pub fn collect_sources(paths: &[PathBuf]) -> Result<Vec<SourceFile>, ScanError> {
    let unreadable = |path: &Path, source: std::io::Error| ScanError::Unreadable {
        path: path.to_string_lossy().into_owned(),
        source,
    };

    // (display, canonical, open path), in discovery order.
    let mut found: Vec<(String, PathBuf, PathBuf)> = Vec::new();
    for arg in paths {
        let meta = fs::metadata(arg).map_err(|e| unreadable(arg, e))?;
        let prefix = display_prefix(arg);
        if meta.is_dir() {
            let mut entries: Vec<(String, PathBuf)> = Vec::new();
            for entry in WalkDir::new(arg) {
                let entry = entry.map_err(|e| {
                    let path = e.path().unwrap_or(arg).to_path_buf();
                    match e.into_io_error() {
                        Some(io) => unreadable(&path, io),
                        None => unreadable(
                            &path,
                            std::io::Error::other("filesystem loop or traversal error"),
                        ),
                    }
                })?;
                if !entry.file_type().is_file() {
                    continue;
                }
                let path = entry.into_path();
                if path.extension().and_then(|e| e.to_str()) != Some("sol") {
                    continue;
                }
                let rel = path
                    .strip_prefix(arg)
                    .expect("walked path is under its root")
                    .to_string_lossy()
                    .into_owned();
                let display = if prefix.is_empty() {
                    rel
                } else {
                    format!("{prefix}/{rel}")
                };
                entries.push((display, path));
            }
            entries.sort();
            for (display, path) in entries {
                let canon = fs::canonicalize(&path).map_err(|e| unreadable(&path, e))?;
                found.push((display, canon, path));
            }
        } else {
            let canon = fs::canonicalize(arg).map_err(|e| unreadable(arg, e))?;
            found.push((prefix, canon, arg.clone()));
        }
    }

    // Drop duplicates of the same physical file, then make the remaining
    // display names unique so every diagnostic resolves to one source text.
    let mut seen_canon: BTreeSet<PathBuf> = BTreeSet::new();
    let mut seen_display: BTreeSet<String> = BTreeSet::new();
    let mut sources: Vec<SourceFile> = Vec::new();
    for (mut display, canon, path) in found {
        if !seen_canon.insert(canon) {
            continue;
        }
        let mut k = 1;
        while !seen_display.insert(display.clone()) {
            k += 1;
            display = format!("{display}~{k}");
        }
        let text = fs::read_to_string(&path).map_err(|e| unreadable(&path, e))?;
        sources.push(SourceFile { display, text });
    }
    sources.sort_by(|a, b| a.display.cmp(&b.display));
    Ok(sources)
}

/// Run the whole pipeline over `paths`.
pub fn run_scan(paths: &[PathBuf], config: &ScanConfig) -> Result<ScanOutcome, ScanError> {
    let sources = collect_sources(paths)?;
    if sources.is_empty() {
        return Err(ScanError::NoSources);
    }
    Ok(analyze_sources(&sources, config))
}

/// Analyze already-loaded sources. Split out from [`run_scan`] so callers
/// with in-memory inputs (tests, fuzzing) can drive the same pipeline.
pub fn analyze_sources(sources: &[SourceFile], config: &ScanConfig) -> ScanOutcome {
    let mut failures: Vec<ParseFailure> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let mut files: Vec<FileRecord> = Vec::new();
    let mut parsed = Vec::new();

    for sf in sources {
        match parse(&sf.text) {
            Ok(unit) => {
                files.push(FileRecord { path: sf.display.clone(), parsed: true });
                parsed.push((sf, unit));
            }
            Err(errors) => {
                files.push(FileRecord { path: sf.display.clone(), parsed: false });
                notes.push(format!(
                    "{}: excluded from analysis: {} parse error(s), first at {}",
                    sf.display,
                    errors.len(),
                    errors[0]
                ));
                failures.push(ParseFailure { display: sf.display.clone(), errors });
            }
        }
    }

    // One contract table across every parsed file, so `is`-clauses resolve
    // over file boundaries. On a name clash the first definition in display
    // order wins.
    let mut global: BTreeMap<String, &ContractDef> = BTreeMap::new();
    for (_, unit) in &parsed {
        for c in &unit.contracts {
            global.entry(c.name.clone()).or_insert(c);
        }
    }

    let mut diagnostics = Vec::new();
    for (sf, unit) in &parsed {
        let ctx = AnalysisContext::build(unit, &global);
        diagnostics.append(&mut evaluate_rules(&ctx, config, &sf.display));
    }
    diagnostics.sort_by(|a, b| {
        (a.file.as_str(), a.span.start, a.rule_id, a.span.end, a.message.as_str()).cmp(&(
            b.file.as_str(),
            b.span.start,
            b.rule_id,
            b.span.end,
            b.message.as_str(),
        ))
    });

    let checklist = evaluate_checklist(manifest_items(), &diagnostics, config);

    let indexes: BTreeMap<&str, (&str, LineIndex)> = parsed
        .iter()
        .map(|(sf, _)| (sf.display.as_str(), (sf.text.as_str(), LineIndex::new(&sf.text))))
        .collect();
    let records = diagnostics
        .iter()
        .map(|d| {
            let (text, index) = &indexes[d.file.as_str()];
            DiagnosticRecord::resolve(d, text, index)
        })
        .collect();

    ScanOutcome {
        result: ScanResult::new(files, records, checklist, notes),
        failures,
    }
}
