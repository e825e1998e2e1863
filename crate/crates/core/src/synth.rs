//! Deterministic synthetic source trees, used by the throughput tests and
//! the benchmarks.

use std::fmt::Write;

/// One generated file: root-relative path and text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthFile {
    pub rel_path: String,
    pub text: String,
}

/// Generates `classes` classes spread over three packages, each with roughly
/// `bytes_per_class` bytes of method bodies. Every class mixes in up to two
/// earlier classes and the corpus compiles without diagnostics.
pub fn corpus(classes: usize, bytes_per_class: usize) -> Vec<SynthFile> {
    let mut files = vec![SynthFile {
        rel_path: "Synth/Base/Named.jsc".into(),
        text: "package Synth.Base;\n\nprotocol Named {\n    describe: true,\n    label: false\n}\n".into(),
    }];
    for i in 0..classes {
        files.push(class_file(i, bytes_per_class));
    }
    files
}

fn package(i: usize) -> String {
    format!("Synth.P{}", i % 3)
}

fn class_name(i: usize) -> String {
    format!("C{i:03}")
}

fn class_file(i: usize, bytes: usize) -> SynthFile {
    let pkg = package(i);
    let name = class_name(i);
    let mut supers: Vec<String> = [i.checked_sub(1), i.checked_sub(3)]
        .into_iter()
        .flatten()
        .map(|j| format!("{}.{}", package(j), class_name(j)))
        .collect();
    supers.dedup();
    supers.push("Synth.Base.Named".into());

    let mut t = String::with_capacity(bytes + 512);
    let _ = writeln!(t, "package {pkg};\n");
    let _ = writeln!(t, "class {name} extends {} {{", supers.join(", "));
    let _ = writeln!(t, "    slots: [count{i}, items{i}],\n");
    let _ = writeln!(t, "    {name}: function(n) {{\n        this.count{i} = n || 0;\n        this.items{i} = [];\n    }},\n");
    if i == 0 {
        let _ = writeln!(t, "    describe: function() {{\n        return \"{name}(\" + this.count{i} + \")\";\n    }},\n");
    }
    let mut m = 0;
    while t.len() < bytes {
        let _ = writeln!(t, "{},\n", method(i, m));
        m += 1;
    }
    let _ = writeln!(t, "    static: {{\n        make{i}: function(n) {{ return Class(\"{pkg}.{name}\").create(n); }}\n    }}");
    t.push_str("}\n");
    SynthFile { rel_path: format!("{}/{name}.jsc", pkg.replace('.', "/")), text: t }
}

fn method(i: usize, m: usize) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        r#"    step{i}_{m}: function(input, limit) {{
        var total = 0, seen = {{}}, out = [];
        for (var k = 0; k < limit; k++) {{
            var key = "k" + (k % 7);
            if (!seen.hasOwnProperty(key)) {{
                seen[key] = k * {m} + 1;
            }} else {{
                total += seen[key] / 2;
            }}
            out.push(/[a-z]+\d*/g.test(key) ? total : -total);
        }}
        switch (typeof input) {{
        case "string":
            total += input.length;
            break;
        case "number":
            total = total > input ? total - input : input;
            break;
        default:
            try {{
                total += input.valueOf();
            }} catch (e) {{
                total = 0;
            }}
        }}
        this.items{i}.push({{ index: {m}, value: total, tag: 'step' }});
        return out.length ? out[out.length - 1] : null;
    }}"#
    );
    s
}

/// Total bytes of all method, constructor and static bodies in the corpus,
/// measured the same way the image stores them.
pub fn body_bytes(files: &[SynthFile]) -> usize {
    use crate::diagnostic::SourceMap;
    use crate::syntax::{parse_unit, Decl};
    let mut map = SourceMap::new();
    let mut total = 0;
    for f in files {
        let id = map.add(f.rel_path.clone(), f.rel_path.clone(), f.text.clone());
        if let Ok(unit) = parse_unit(&f.text, &f.rel_path, id) {
            if let Decl::Class(c) = &unit.decl {
                total += c.all_methods().map(|m| m.body_text.len()).sum::<usize>();
            }
        }
    }
    total
}
