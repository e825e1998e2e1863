#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::path::{Path, PathBuf};

use jsc::js::Sexpr;
use jsc::pool::{check_protocols, MemberKind, MixinResolver};
use jsc::syntax::{Decl, MethodDecl, SourceUnit};
use jsc::{build_pool, codes, load_sources, parse_unit, resolve_supers, Diagnostic, SourceMap, Span};

pub fn corpus_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn load(name: &str) -> SourceMap {
    load_sources(&[corpus_dir(name)]).expect("corpus loads")
}

pub fn in_memory(files: &[(String, String)]) -> SourceMap {
    let mut map = SourceMap::new();
    for (path, text) in files {
        map.add(path.clone(), path.clone(), text.clone());
    }
    map
}

pub fn parse_all(map: &SourceMap) -> (Vec<SourceUnit>, Vec<Diagnostic>) {
    let mut units = Vec::new();
    let mut diags = Vec::new();
    for f in map.files() {
        let rel = f.rel_path.to_string_lossy().replace('\\', "/");
        match parse_unit(&f.text, &rel, f.id) {
            Ok(u) => units.push(u),
            Err(d) => diags.extend(d),
        }
    }
    (units, diags)
}

/// Compares against a checked-in golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        return Ok(());
    }
    let line = expected.lines().zip(actual.lines()).position(|(a, b)| a != b);
    Err(format!("{} differs from golden (first differing line: {:?})", path.display(), line.map(|l| l + 1)))
}

fn pos(s: Span) -> String {
    format!("{}:{}-{}:{}", s.start_line, s.start_col, s.end_line, s.end_col)
}

fn method(out: &mut String, label: &str, m: &MethodDecl) {
    let _ = writeln!(out, "  {label} {} @{} params=[{}]", m.name, pos(m.name_span), m.params.join(","));
    let _ = writeln!(out, "    ast {}", m.body.sexpr());
    let _ = writeln!(out, "    text {:?}", m.body_text);
}

/// A stable, span-aware text rendering of a parsed unit.
pub fn snapshot(unit: &SourceUnit) -> String {
    let mut out = String::new();
    let d = &unit.decl;
    let _ = writeln!(out, "file {}", unit.file_path);
    let _ = writeln!(out, "{} {} package={} @{}", d.kind().as_str(), unit.canonical_name(), unit.package, pos(d.name_span()));
    for s in d.supers() {
        let _ = writeln!(out, "  extends {} @{}", s, pos(s.span));
    }
    match d {
        Decl::Class(c) => {
            for s in &c.slots {
                let _ = writeln!(out, "  slot {} get={} set={} @{}", s.name, s.getter_name, s.setter_name, pos(s.span));
                if let Some(def) = &s.default {
                    let _ = writeln!(out, "    default {:?} {}", def.text, def.expr.sexpr());
                }
            }
            if let Some(ctor) = &c.ctor {
                method(&mut out, "ctor", ctor);
            }
            for m in &c.methods {
                method(&mut out, "method", m);
            }
            for m in &c.statics {
                method(&mut out, "static", m);
            }
        }
        Decl::Protocol(p) => {
            for r in &p.requirements {
                let _ = writeln!(out, "  requires {} {} @{}", r.name, r.required, pos(r.span));
            }
        }
    }
    out
}

/// A generated hierarchy `P.C0 .. P.Cn`: `supers[i]` lists earlier class
/// indices in extends order, `members[i]` the method names class i declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hierarchy {
    pub supers: Vec<Vec<usize>>,
    pub members: Vec<Vec<&'static str>>,
}

pub const ALPHABET: [&str; 3] = ["a", "b", "c"];

pub fn class_name(i: usize) -> String {
    format!("P.C{i}")
}

impl Hierarchy {
    pub fn sources(&self) -> Vec<(String, String)> {
        (0..self.supers.len())
            .map(|i| {
                let ext = if self.supers[i].is_empty() {
                    String::new()
                } else {
                    let names: Vec<String> = self.supers[i].iter().map(|&j| class_name(j)).collect();
                    format!(" extends {}", names.join(", "))
                };
                let methods: Vec<String> =
                    self.members[i].iter().map(|m| format!("{m}: function () {{ return {i}; }}")).collect();
                (format!("P/C{i}.jsc"), format!("package P;\nclass C{i}{ext} {{\n{}\n}}\n", methods.join(",\n")))
            })
            .collect()
    }

    /// Effective method name -> declaring class index, by literal copying:
    /// each super's result in order, then the class's own methods.
    pub fn naive_effective(&self) -> Vec<BTreeMap<String, usize>> {
        let mut eff: Vec<BTreeMap<String, usize>> = Vec::new();
        for i in 0..self.supers.len() {
            let mut map = BTreeMap::new();
            for &s in &self.supers[i] {
                for (name, origin) in &eff[s] {
                    map.insert(name.clone(), *origin);
                }
            }
            for m in &self.members[i] {
                map.insert(m.to_string(), i);
            }
            eff.push(map);
        }
        eff
    }

    /// Names that reach class i from at least two distinct declaring classes
    /// through its supers and that class i does not declare itself.
    pub fn naive_conflicts(&self) -> Vec<BTreeSet<String>> {
        let eff = self.naive_effective();
        (0..self.supers.len())
            .map(|i| {
                let mut origins: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
                for &s in &self.supers[i] {
                    for (name, origin) in &eff[s] {
                        origins.entry(name).or_default().insert(*origin);
                    }
                }
                origins
                    .into_iter()
                    .filter(|(n, o)| o.len() > 1 && !self.members[i].contains(n))
                    .map(|(n, _)| n.to_string())
                    .collect()
            })
            .collect()
    }
}

/// Compiles `h` and compares every class against the naive model.
pub fn check_hierarchy(h: &Hierarchy) -> Result<(), String> {
    let map = in_memory(&h.sources());
    let (units, diags) = parse_all(&map);
    if !diags.is_empty() {
        return Err(format!("parse failed: {diags:?}"));
    }
    let mut pool = build_pool(units).map_err(|d| format!("{d:?}"))?;
    let resolve = resolve_supers(&mut pool);
    if !resolve.is_empty() {
        return Err(format!("resolve failed: {resolve:?}"));
    }
    let naive = h.naive_effective();
    let conflicts = h.naive_conflicts();
    let mut resolver = MixinResolver::new(&pool);
    for i in 0..h.supers.len() {
        let (eff, diags) = resolver.members(&class_name(i));
        let actual: BTreeMap<String, usize> = eff
            .method_surface()
            .into_iter()
            .filter(|(_, o)| o.kind == MemberKind::Method)
            .map(|(n, o)| (n, o.origin_class.trim_start_matches("P.C").parse().unwrap()))
            .collect();
        if actual != naive[i] {
            return Err(format!("{h:?}: C{i} effective {actual:?}, naive {:?}", naive[i]));
        }
        let warned: BTreeSet<String> = diags
            .iter()
            .filter(|d| d.code == codes::MIXIN_CONFLICT)
            .map(|d| d.message.split('`').nth(1).unwrap().to_string())
            .collect();
        if warned != conflicts[i] {
            return Err(format!("{h:?}: C{i} warned {warned:?}, expected {:?}", conflicts[i]));
        }
        if let Some(other) = diags.iter().find(|d| d.code != codes::MIXIN_CONFLICT) {
            return Err(format!("{h:?}: unexpected {other:?}"));
        }
    }
    Ok(())
}

/// Every DAG on n nodes where edges go from later to earlier classes and
/// super lists are in ascending index order.
pub fn dag_shapes(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut shapes: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for shape in &shapes {
            for mask in 0..(1u32 << i) {
                let supers: Vec<usize> = (0..i).filter(|j| mask & (1 << j) != 0).collect();
                let mut s = shape.clone();
                s.push(supers);
                next.push(s);
            }
        }
        shapes = next;
    }
    shapes
}

pub fn member_subset(mask: usize) -> Vec<&'static str> {
    ALPHABET.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, m)| *m).collect()
}

/// Member assignments for n classes, 3 bits per class. All of them up to 3
/// classes; beyond that an odd stride, so every class still takes every
/// subset.
pub fn assignment_codes(n: usize) -> impl Iterator<Item = usize> {
    let assignments = 8usize.pow(n as u32);
    let stride = if n <= 3 { 1 } else { (assignments / 61) | 1 };
    (0..assignments).step_by(stride)
}

/// The exhaustive sweep: all shapes and all member assignments for up to 3
/// classes; all shapes for 4 and 5 classes with member assignments walked
/// by a fixed stride so every per-class subset still occurs.
pub fn exhaustive_sweep() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=5 {
        for shape in dag_shapes(n) {
            for code in assignment_codes(n) {
                let members = (0..n).map(|i| member_subset((code >> (3 * i)) & 7)).collect();
                check_hierarchy(&Hierarchy { supers: shape.clone(), members })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Class `UI.Component.Widget extends UI.Component.Draggable` with the given
/// protocol methods present; returns (diagnostic codes, stubs).
pub fn protocol_case(element: bool, listener: bool) -> (Vec<&'static str>, BTreeSet<String>) {
    let mut methods = Vec::new();
    if element {
        methods.push("element: function () { return null; }");
    }
    if listener {
        methods.push("eventListener: function (e) { }");
    }
    let files = vec![
        (
            "UI/Component/Draggable.jsc".to_string(),
            "package UI.Component;\n\nprotocol Draggable {\n  element: true,\n  eventListener: false\n}\n".to_string(),
        ),
        (
            "UI/Component/Widget.jsc".to_string(),
            format!("package UI.Component;\n\nclass Widget extends UI.Component.Draggable {{\n  {}\n}}\n", methods.join(",\n  ")),
        ),
    ];
    let map = in_memory(&files);
    let (units, diags) = parse_all(&map);
    assert!(diags.is_empty(), "{diags:?}");
    let mut pool = build_pool(units).unwrap();
    assert!(resolve_supers(&mut pool).is_empty());
    let (eff, mut diags) = MixinResolver::new(&pool).members("UI.Component.Widget");
    let (protocol_diags, stubs) = check_protocols(&pool, "UI.Component.Widget", &eff);
    diags.extend(protocol_diags);
    (diags.iter().map(|d| d.code).collect(), stubs)
}
