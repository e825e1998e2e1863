//! The compilation pipeline behind `jscc build`, `check` and `lint`.
//!
//! [`compile`] is a pure function of a [`SourceMap`]; [`load_sources`] does
//! the file discovery.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;
use walkdir::WalkDir;

use crate::codegen::{emit_image, ClasspoolImage, ImageOptions};
use crate::diagnostic::{codes, has_errors, Diagnostic, Severity, SourceMap};
use crate::js::ast::{JsFunction, Stmt, StmtKind};
use crate::js::{find_global_assignments, find_restricted_writes, LintFinding, WriteKind};
use crate::pool::{build_pool, initialization_order, resolve_supers, ClassPool, MixinResolver};
use crate::syntax::{parse_unit, Decl, SourceUnit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Build,
    Check,
    Lint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildConfig {
    pub roots: Vec<PathBuf>,
    pub out_path: PathBuf,
    pub deny_warnings: bool,
    pub json_diagnostics: bool,
    pub manifest: bool,
    pub kernel_override: Option<PathBuf>,
}

impl BuildConfig {
    pub fn new(roots: Vec<PathBuf>, out_path: impl Into<PathBuf>) -> Self {
        BuildConfig {
            roots,
            out_path: out_path.into(),
            deny_warnings: false,
            json_diagnostics: false,
            manifest: false,
            kernel_override: None,
        }
    }

    /// Checks the invariants the pipeline relies on: at least one root and an
    /// existing directory for the output file.
    pub fn validate(&self) -> Result<(), DriverError> {
        if self.roots.is_empty() {
            return Err(DriverError::Usage("at least one source root is required".into()));
        }
        let parent = self.out_path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(DriverError::Usage(format!("output directory {} does not exist", parent.display())));
        }
        Ok(())
    }

    /// Path of the manifest written next to the image.
    pub fn manifest_path(&self) -> PathBuf {
        let mut p = self.out_path.clone().into_os_string();
        p.push(".manifest");
        PathBuf::from(p)
    }
}

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl DriverError {
    fn io(path: &Path, source: impl Into<std::io::Error>) -> DriverError {
        DriverError::Io { path: path.to_path_buf(), source: source.into() }
    }
}

/// Result of running the pipeline over one source set.
#[derive(Debug, Clone)]
pub struct Compilation {
    pub diagnostics: Vec<Diagnostic>,
    /// Present only for [`Mode::Build`] when nothing blocks emission.
    pub image: Option<ClasspoolImage>,
}

impl Compilation {
    pub fn error_count(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.severity == Severity::Error).count()
    }

    pub fn warning_count(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.severity == Severity::Warning).count()
    }
}

/// 0 on success, 1 if any error, or any warning under `deny_warnings`.
pub fn exit_code(mode: Mode, diagnostics: &[Diagnostic], deny_warnings: bool) -> i32 {
    let fails = match mode {
        Mode::Lint => !diagnostics.is_empty(),
        Mode::Build | Mode::Check => has_errors(diagnostics) || (deny_warnings && !diagnostics.is_empty()),
    };
    i32::from(fails)
}

/// Finds `**/*.jsc` under every root and loads them, sorted by path.
pub fn load_sources(roots: &[PathBuf]) -> Result<SourceMap, DriverError> {
    if roots.is_empty() {
        return Err(DriverError::Usage("at least one source root is required".into()));
    }
    let mut found = Vec::new();
    for root in roots {
        if !root.is_dir() {
            return Err(DriverError::Io {
                path: root.clone(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "source root is not a directory"),
            });
        }
        for entry in WalkDir::new(root).follow_links(true) {
            let entry = entry.map_err(|e| DriverError::io(root, e))?;
            let path = entry.path();
            if !entry.file_type().is_file() || path.extension().and_then(|e| e.to_str()) != Some("jsc") {
                continue;
            }
            let rel = path.strip_prefix(root).unwrap_or(path).to_path_buf();
            found.push((path.to_path_buf(), rel));
        }
    }
    found.sort();
    let mut map = SourceMap::new();
    for (path, rel) in found {
        let text = std::fs::read_to_string(&path).map_err(|e| DriverError::io(&path, e))?;
        map.add(slash_path(&path), rel, text);
    }
    Ok(map)
}

fn slash_path(p: &Path) -> String {
    p.to_string_lossy().replace(std::path::MAIN_SEPARATOR, "/")
}

/// Reads the kernel override, if any.
pub fn image_options(config: &BuildConfig) -> Result<ImageOptions, DriverError> {
    let mut options = ImageOptions::default();
    if let Some(path) = &config.kernel_override {
        let text = std::fs::read_to_string(path).map_err(|e| DriverError::io(path, e))?;
        if text.trim().is_empty() {
            return Err(DriverError::Usage(format!("kernel file {} is empty", path.display())));
        }
        options.kernel_text = text;
    }
    Ok(options)
}

fn parse_all(sources: &SourceMap) -> (Vec<SourceUnit>, Vec<Diagnostic>) {
    let results: Vec<_> = sources
        .files()
        .par_iter()
        .map(|f| parse_unit(&f.text, &slash_path(&f.rel_path), f.id))
        .collect();
    let mut units = Vec::new();
    let mut diags = Vec::new();
    for r in results {
        match r {
            Ok(u) => units.push(u),
            Err(d) => diags.extend(d),
        }
    }
    (units, diags)
}

fn lint_message(f: &LintFinding) -> String {
    match f.kind {
        WriteKind::Assignment => format!("assignment to undeclared variable `{}` creates a global; declare it with `var`", f.name),
        WriteKind::Update => format!("update of undeclared variable `{}` creates a global; declare it with `var`", f.name),
        WriteKind::ForInTarget => {
            format!("for-in target `{}` is undeclared and becomes a global; declare it with `var`", f.name)
        }
    }
}

fn lint_function(f: &JsFunction, out: &mut Vec<Diagnostic>) {
    for finding in find_global_assignments(f) {
        out.push(Diagnostic::warning(codes::GLOBAL_WRITE, finding.span, lint_message(&finding)));
    }
    for finding in find_restricted_writes(f) {
        out.push(Diagnostic::warning(
            codes::RESTRICTED_WRITE,
            finding.span,
            format!("assignment to `{}` is not allowed; it is a restricted name", finding.name),
        ));
    }
}

/// Undeclared-global and restricted writes in every body of a unit,
/// including slot default expressions.
pub fn lint_unit(unit: &SourceUnit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let Decl::Class(class) = &unit.decl else { return out };
    for m in class.all_methods() {
        lint_function(&m.body, &mut out);
    }
    for slot in &class.slots {
        if let Some(d) = &slot.default {
            // defaults run inside a generated thunk
            let thunk = JsFunction {
                name: None,
                params: Vec::new(),
                body: vec![Stmt { kind: StmtKind::Return(Some(d.expr.clone())), span: d.expr.span }],
                span: d.expr.span,
            };
            lint_function(&thunk, &mut out);
        }
    }
    out
}

fn semantic(units: Vec<SourceUnit>, diags: &mut Vec<Diagnostic>) -> Option<ClassPool> {
    let mut pool = match build_pool(units) {
        Ok(p) => p,
        Err(d) => {
            diags.extend(d);
            return None;
        }
    };
    let resolve = resolve_supers(&mut pool);
    if has_errors(&resolve) {
        diags.extend(resolve);
        return None;
    }
    diags.extend(resolve);
    let mut resolver = MixinResolver::new(&pool);
    let names: Vec<String> = pool.class_names().map(str::to_string).collect();
    for name in &names {
        let (eff, member_diags) = resolver.members(name);
        diags.extend(member_diags);
        let (protocol_diags, _stubs) = crate::pool::check_protocols(&pool, name, &eff);
        diags.extend(protocol_diags);
    }
    Some(pool)
}

/// Runs the pipeline for `mode`. Diagnostics come back sorted by file, then
/// position, then code.
pub fn compile(sources: &SourceMap, mode: Mode, options: &ImageOptions, deny_warnings: bool) -> Compilation {
    let mut diags = Vec::new();
    if sources.files().is_empty() {
        diags.push(Diagnostic::global_error(codes::NO_INPUT, "no input files"));
        return Compilation { diagnostics: diags, image: None };
    }
    let (units, parse_diags) = parse_all(sources);
    let parse_failed = has_errors(&parse_diags);
    diags.extend(parse_diags);
    for unit in &units {
        diags.extend(lint_unit(unit));
    }
    let mut image = None;
    if mode != Mode::Lint && !parse_failed {
        if let Some(pool) = semantic(units, &mut diags) {
            if mode == Mode::Build && exit_code(mode, &diags, deny_warnings) == 0 {
                image = Some(emit_image(&pool, &initialization_order(&pool), options));
            }
        }
    }
    sources.sort(&mut diags);
    Compilation { diagnostics: diags, image }
}

/// Renders every diagnostic, one per line (human notes indented below).
pub fn render_diagnostics(sources: &SourceMap, diags: &[Diagnostic], json: bool) -> String {
    let mut out = String::new();
    for d in diags {
        if json {
            out.push_str(&sources.render_json(d));
        } else {
            out.push_str(&sources.render_human(d));
        }
        out.push('\n');
    }
    out
}
