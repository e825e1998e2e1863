use std::collections::{BTreeMap, BTreeSet};

use crate::diagnostic::{codes, Diagnostic};
use crate::span::Span;
use crate::syntax::{ClassDecl, Decl, DeclKind, ProtocolDecl, SourceUnit};

#[derive(Debug, Clone)]
pub struct PoolEntry {
    pub canonical: String,
    pub unit: SourceUnit,
}

impl PoolEntry {
    pub fn decl(&self) -> &Decl {
        &self.unit.decl
    }

    pub fn kind(&self) -> DeclKind {
        self.unit.decl.kind()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuperKind {
    /// A class whose members are copied into the subclass.
    Mixin,
    Protocol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperEdge {
    pub target: String,
    pub kind: SuperKind,
    /// The reference in the `extends` clause.
    pub span: Span,
}

/// All declarations keyed by canonical name.
#[derive(Debug, Clone, Default)]
pub struct ClassPool {
    pub entries: BTreeMap<String, PoolEntry>,
    /// Filled in by [`resolve_supers`], in `extends` order.
    pub super_edges: BTreeMap<String, Vec<SuperEdge>>,
}

impl ClassPool {
    pub fn get(&self, name: &str) -> Option<&PoolEntry> {
        self.entries.get(name)
    }

    pub fn class(&self, name: &str) -> Option<&ClassDecl> {
        self.get(name).and_then(|e| e.decl().as_class())
    }

    pub fn protocol(&self, name: &str) -> Option<&ProtocolDecl> {
        self.get(name).and_then(|e| e.decl().as_protocol())
    }

    pub fn edges(&self, name: &str) -> &[SuperEdge] {
        self.super_edges.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.entries.values().filter(|e| e.kind() == DeclKind::Class).map(|e| e.canonical.as_str())
    }
}

/// Collects units under their canonical names and checks that each file's
/// location matches its declaration (`<package dirs>/<Name>.jsc`).
pub fn build_pool(units: Vec<SourceUnit>) -> Result<ClassPool, Vec<Diagnostic>> {
    let mut pool = ClassPool::default();
    let mut diags = Vec::new();
    for unit in units {
        check_location(&unit, &mut diags);
        let canonical = unit.canonical_name();
        if let Some(existing) = pool.entries.get(&canonical) {
            diags.push(
                Diagnostic::error(
                    codes::DUPLICATE_CLASS,
                    unit.decl.name_span(),
                    format!("`{canonical}` is declared more than once"),
                )
                .with_note(Some(existing.unit.decl.name_span()), "previously declared here"),
            );
            continue;
        }
        pool.entries.insert(canonical.clone(), PoolEntry { canonical, unit });
    }
    if diags.is_empty() {
        Ok(pool)
    } else {
        Err(diags)
    }
}

fn check_location(unit: &SourceUnit, diags: &mut Vec<Diagnostic>) {
    let mut parts: Vec<&str> = unit.file_path.split('/').filter(|s| !s.is_empty()).collect();
    let file = parts.pop().unwrap_or("");
    let stem = file.strip_suffix(".jsc").unwrap_or(file);
    let name = unit.decl.name();
    if stem != name {
        diags.push(Diagnostic::error(
            codes::FILE_NAME_MISMATCH,
            unit.decl.name_span(),
            format!("`{name}` must be declared in a file named `{name}.jsc`, not `{file}`"),
        ));
    }
    if parts != unit.package.segments {
        let expected = unit.package.segments.join("/");
        let actual = parts.join("/");
        diags.push(Diagnostic::error(
            codes::PACKAGE_PATH_MISMATCH,
            unit.package.span,
            format!(
                "package `{}` must live in directory `{expected}` under the source root, found `{}`",
                unit.package.text(),
                if actual.is_empty() { "." } else { &actual }
            ),
        ));
    }
}

/// Resolves every `extends` reference and classifies it. A name resolves as
/// written, or else relative to the declaring package.
pub fn resolve_supers(pool: &mut ClassPool) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut edges = BTreeMap::new();
    for (name, entry) in &pool.entries {
        let mut out = Vec::new();
        for sup in entry.decl().supers() {
            let written = sup.text();
            let local = format!("{}.{}", entry.unit.package.text(), written);
            let Some(target) = pool.entries.get(&written).or_else(|| pool.entries.get(&local)) else {
                diags.push(Diagnostic::error(
                    codes::UNRESOLVED_SUPER,
                    sup.span,
                    format!("cannot find class or protocol `{written}`"),
                ));
                continue;
            };
            let kind = match (entry.kind(), target.kind()) {
                (_, DeclKind::Protocol) => SuperKind::Protocol,
                (DeclKind::Class, DeclKind::Class) => SuperKind::Mixin,
                (DeclKind::Protocol, DeclKind::Class) => {
                    diags.push(Diagnostic::error(
                        codes::PROTOCOL_EXTENDS_CLASS,
                        sup.span,
                        format!("protocol `{name}` may only extend protocols, but `{}` is a class", target.canonical),
                    ));
                    continue;
                }
            };
            out.push(SuperEdge { target: target.canonical.clone(), kind, span: sup.span });
        }
        edges.insert(name.clone(), out);
    }
    pool.super_edges = edges;
    diags.extend(find_cycles(pool));
    diags
}

fn find_cycles(pool: &ClassPool) -> Vec<Diagnostic> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }

    fn visit<'a>(
        pool: &'a ClassPool,
        node: &'a str,
        marks: &mut BTreeMap<&'a str, Mark>,
        stack: &mut Vec<(&'a str, Span)>,
        found: &mut BTreeSet<Vec<String>>,
        diags: &mut Vec<Diagnostic>,
    ) {
        marks.insert(node, Mark::Active);
        for edge in pool.edges(node) {
            let target = edge.target.as_str();
            stack.push((node, edge.span));
            match marks.get(target) {
                Some(Mark::Active) => {
                    let from = stack.iter().position(|(n, _)| *n == target).unwrap_or(0);
                    let cycle = &stack[from..];
                    let names: Vec<String> = cycle.iter().map(|(n, _)| n.to_string()).collect();
                    // rotate so the smallest name leads, for a stable report
                    let lead = (0..names.len()).min_by_key(|&i| &names[i]).unwrap_or(0);
                    let mut key = names.clone();
                    key.rotate_left(lead);
                    if found.insert(key.clone()) {
                        let mut path = key.join(" -> ");
                        path.push_str(" -> ");
                        path.push_str(&key[0]);
                        diags.push(Diagnostic::error(
                            codes::SUPER_CYCLE,
                            cycle[lead].1,
                            format!("inheritance cycle: {path}"),
                        ));
                    }
                }
                Some(Mark::Done) => {}
                None => visit(pool, target, marks, stack, found, diags),
            }
            stack.pop();
        }
        marks.insert(node, Mark::Done);
    }

    let mut marks = BTreeMap::new();
    let mut found = BTreeSet::new();
    let mut diags = Vec::new();
    for name in pool.entries.keys() {
        if !marks.contains_key(name.as_str()) {
            visit(pool, name, &mut marks, &mut Vec::new(), &mut found, &mut diags);
        }
    }
    diags
}
