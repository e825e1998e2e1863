//! Emission of the classpool image.
//!
//! Layout (LF line endings):
//!
//! ```text
//! /* jscc image format 1 */
//! (function (global) { "use strict";<kernel>global.Class = Class; })(typeof globalThis !== "undefined" ? globalThis : this);
//! Class.define("<canonical>", { ... });      one per entry, supers first
//! Class.initAll();
//! ```

use std::fmt::Write as _;

use serde::Serialize;

use crate::pool::{ClassPool, PoolEntry};
use crate::syntax::{Decl, DeclKind, SlotSpec};

/// The runtime kernel bundled into every image.
pub const DEFAULT_KERNEL: &str = include_str!("kernel.js");

pub const FORMAT_HEADER: &str = "/* jscc image format 1 */";

const WRAPPER_OPEN: &str = "(function (global) {";
const WRAPPER_CLOSE: &str =
    "global.Class = Class; })(typeof globalThis !== \"undefined\" ? globalThis : this);\n";
const INIT_ALL: &str = "Class.initAll();\n";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageOptions {
    pub kernel_text: String,
    pub header_comment: String,
    pub strict: bool,
}

impl Default for ImageOptions {
    fn default() -> Self {
        ImageOptions { kernel_text: DEFAULT_KERNEL.to_string(), header_comment: FORMAT_HEADER.to_string(), strict: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifestEntry {
    pub name: String,
    pub kind: &'static str,
    pub start_byte: usize,
    pub end_byte: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClasspoolImage {
    pub text: String,
    pub manifest: Vec<ManifestEntry>,
}

impl ClasspoolImage {
    /// Line-delimited JSON, one record per registration.
    pub fn manifest_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.manifest {
            out.push_str(&serde_json::to_string(entry).expect("manifest entry serializes"));
            out.push('\n');
        }
        out
    }
}

/// A JavaScript string literal. U+2028/U+2029 are escaped because ES5 does
/// not allow them raw inside string literals.
pub fn js_string(s: &str) -> String {
    serde_json::to_string(s)
        .expect("string serializes")
        .replace('\u{2028}', "\\u2028")
        .replace('\u{2029}', "\\u2029")
}

fn write_slot(out: &mut String, slot: &SlotSpec) {
    let _ = write!(
        out,
        "{{name:{},getter:{},setter:{},hasDefault:{}",
        js_string(&slot.name),
        js_string(&slot.getter_name),
        js_string(&slot.setter_name),
        slot.default.is_some()
    );
    if let Some(d) = &slot.default {
        let _ = write!(out, ",default:function () {{ return {}; }}", d.text);
    }
    out.push('}');
}

fn write_map<'a>(out: &mut String, items: impl Iterator<Item = (&'a str, &'a str)>) {
    let mut any = false;
    out.push('{');
    for (i, (k, v)) in items.enumerate() {
        out.push_str(if i == 0 { " " } else { ", " });
        let _ = write!(out, "{k}: {v}");
        any = true;
    }
    out.push_str(if any { " }" } else { "}" });
}

fn write_supers(out: &mut String, pool: Option<&ClassPool>, entry: &PoolEntry) {
    // resolved canonical names when available, as written otherwise
    let names: Vec<String> = match pool {
        Some(p) if p.super_edges.contains_key(&entry.canonical) => {
            p.edges(&entry.canonical).iter().map(|e| e.target.clone()).collect()
        }
        _ => entry.decl().supers().iter().map(|s| s.text()).collect(),
    };
    out.push('[');
    for (i, n) in names.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&js_string(n));
    }
    out.push(']');
}

/// One `Class.define(...)` statement with a trailing newline. Classes carry
/// their declared members only; mixin copying happens in the kernel.
pub fn emit_registration(pool: Option<&ClassPool>, entry: &PoolEntry) -> String {
    let mut out = String::new();
    let _ = write!(out, "Class.define({}, {{ kind: \"{}\", supers: ", js_string(&entry.canonical), entry.kind().as_str());
    write_supers(&mut out, pool, entry);
    match entry.decl() {
        Decl::Class(c) => {
            out.push_str(", slots: [");
            for (i, s) in c.slots.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_slot(&mut out, s);
            }
            out.push_str("], methods: ");
            write_map(&mut out, c.methods.iter().map(|m| (m.name.as_str(), m.body_text.as_str())));
            out.push_str(", statics: ");
            write_map(&mut out, c.statics.iter().map(|m| (m.name.as_str(), m.body_text.as_str())));
            out.push_str(", ctor: ");
            out.push_str(c.ctor.as_ref().map(|m| m.body_text.as_str()).unwrap_or("null"));
            out.push_str(", required: {}");
        }
        Decl::Protocol(p) => {
            out.push_str(", required: ");
            write_map(
                &mut out,
                p.requirements.iter().map(|r| (r.name.as_str(), if r.required { "true" } else { "false" })),
            );
        }
    }
    out.push_str(" });\n");
    out
}

/// Assembles the full image. `order` lists canonical names, supers first.
pub fn emit_image(pool: &ClassPool, order: &[String], options: &ImageOptions) -> ClasspoolImage {
    let mut text = String::new();
    text.push_str(&options.header_comment);
    text.push('\n');
    text.push_str(WRAPPER_OPEN);
    if options.strict {
        text.push_str(" \"use strict\";");
    }
    text.push_str(&options.kernel_text);
    text.push_str(WRAPPER_CLOSE);
    let mut manifest = Vec::with_capacity(order.len());
    for name in order {
        let Some(entry) = pool.get(name) else { continue };
        let start = text.len();
        text.push_str(&emit_registration(Some(pool), entry));
        manifest.push(ManifestEntry {
            name: name.clone(),
            kind: match entry.kind() {
                DeclKind::Class => "class",
                DeclKind::Protocol => "protocol",
            },
            start_byte: start,
            // exclusive of the trailing newline
            end_byte: text.len() - 1,
        });
    }
    text.push_str(INIT_ALL);
    ClasspoolImage { text, manifest }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pool::{build_pool, initialization_order, resolve_supers};
    use crate::span::FileId;
    use crate::syntax::parse_unit;

    fn pool(units: &[(&str, &str)]) -> ClassPool {
        let units = units.iter().enumerate().map(|(i, (p, s))| parse_unit(s, p, FileId(i as u32)).unwrap()).collect();
        let mut pool = build_pool(units).unwrap();
        assert!(resolve_supers(&mut pool).is_empty());
        pool
    }

    #[test]
    fn empty_class_registration() {
        let p = pool(&[("P/A.jsc", "package P; class A {}")]);
        assert_eq!(
            emit_registration(Some(&p), p.get("P.A").unwrap()),
            "Class.define(\"P.A\", { kind: \"class\", supers: [], slots: [], methods: {}, statics: {}, ctor: null, required: {} });\n"
        );
    }

    #[test]
    fn protocol_registration() {
        let p = pool(&[("UI/Component/Draggable.jsc", "package UI.Component;\n\nprotocol Draggable {\n  element: true,\n  eventListener: false\n}\n")]);
        assert_eq!(
            emit_registration(Some(&p), p.get("UI.Component.Draggable").unwrap()),
            "Class.define(\"UI.Component.Draggable\", { kind: \"protocol\", supers: [], required: { element: true, eventListener: false } });\n"
        );
    }

    #[test]
    fn slot_defaults_are_thunks() {
        let p = pool(&[("P/A.jsc", "package P; class A { slots: { s: { setter: \"put\", default: [1, 2] } } }")]);
        let reg = emit_registration(Some(&p), p.get("P.A").unwrap());
        assert!(reg.contains(
            "slots: [{name:\"s\",getter:\"getS\",setter:\"put\",hasDefault:true,default:function () { return [1, 2]; }}]"
        ));
    }

    #[test]
    fn image_layout() {
        let p = pool(&[("P/A.jsc", "package P; class A {}")]);
        let opts = ImageOptions { kernel_text: "\nfunction Class() {}\n".into(), ..ImageOptions::default() };
        let img = emit_image(&p, &initialization_order(&p), &opts);
        assert_eq!(
            img.text,
            "/* jscc image format 1 */\n(function (global) { \"use strict\";\nfunction Class() {}\nglobal.Class = Class; })(typeof globalThis !== \"undefined\" ? globalThis : this);\nClass.define(\"P.A\", { kind: \"class\", supers: [], slots: [], methods: {}, statics: {}, ctor: null, required: {} });\nClass.initAll();\n"
        );
        let m = &img.manifest[0];
        assert!(img.text[m.start_byte..m.end_byte].starts_with("Class.define(\"P.A\""));
        assert!(img.text[m.start_byte..m.end_byte].ends_with("});"));
        assert_eq!(
            img.manifest_text(),
            format!("{{\"name\":\"P.A\",\"kind\":\"class\",\"startByte\":{},\"endByte\":{}}}\n", m.start_byte, m.end_byte)
        );
    }

    #[test]
    fn string_escaping() {
        assert_eq!(js_string("a\"b\u{2028}"), "\"a\\\"b\\u2028\"");
    }
}
