mod common;

use common::{check_golden, load, parse_all, snapshot};
use jsc::codegen::ImageOptions;
use jsc::driver::{compile, Mode};
use jsc::{codes, Severity};

#[test]
fn listings_parse_without_diagnostics() {
    for corpus in ["paper", "extended", "lint"] {
        let map = load(corpus);
        let (units, diags) = parse_all(&map);
        assert!(diags.is_empty(), "{corpus}: {diags:?}");
        assert_eq!(units.len(), map.files().len());
        for unit in &units {
            let golden = format!("units/{}.snap", unit.file_path.trim_end_matches(".jsc").replace('/', "."));
            check_golden(&golden, &snapshot(unit)).unwrap();
        }
    }
}

#[test]
fn paper_corpus_golden_image() {
    let map = load("paper");
    let c = compile(&map, Mode::Build, &ImageOptions::default(), false);
    assert!(c.diagnostics.is_empty(), "{:?}", c.diagnostics);
    let image = c.image.unwrap();
    check_golden("paper.classpool.js", &image.text).unwrap();
    check_golden("paper.classpool.js.manifest", &image.manifest_text()).unwrap();

    assert_eq!(image.text.matches("\nClass.define(").count(), 4);
    let rect = image.text.find("Class.define(\"UI.Component.Rectangle\"").unwrap();
    let pos = image.text.find("Class.define(\"UI.Component.PositionedRectangle\"").unwrap();
    assert!(rect < pos);
    for accessor in ["getHeight", "setHeight", "getWidth", "setWidth", "getX", "setX", "getY", "setY"] {
        assert!(image.text.contains(&format!("\"{accessor}\"")), "{accessor}");
    }
    let (units, _) = parse_all(&map);
    for unit in &units {
        if let Some(class) = unit.decl.as_class() {
            for m in class.all_methods() {
                assert!(image.text.contains(&m.body_text), "{}", m.name);
            }
        }
    }
}

#[test]
fn image_is_byte_stable() {
    let a = compile(&load("paper"), Mode::Build, &ImageOptions::default(), false).image.unwrap();
    let b = compile(&load("paper"), Mode::Build, &ImageOptions::default(), false).image.unwrap();
    assert_eq!(a, b);
}

#[test]
fn lint_listing_reports_global_only() {
    let map = load("lint");
    let c = compile(&map, Mode::Lint, &ImageOptions::default(), false);
    assert_eq!(c.diagnostics.len(), 1, "{:?}", c.diagnostics);
    let d = &c.diagnostics[0];
    assert_eq!((d.code, d.severity), (codes::GLOBAL_WRITE, Severity::Warning));
    let span = d.span.unwrap();
    assert_eq!((span.start_line, span.start_col, span.end_line, span.end_col), (6, 5, 6, 11));
    assert!(d.message.contains("`global`"));
    assert_eq!(
        map.render_human(d).lines().next().unwrap(),
        format!("{}:6:5: warning[JSC-W001]: {}", map.files()[0].display_path, d.message)
    );
}

#[test]
fn extended_slot_listing() {
    let map = load("extended");
    let c = compile(&map, Mode::Build, &ImageOptions::default(), false);
    assert!(c.diagnostics.is_empty(), "{:?}", c.diagnostics);
    let text = c.image.unwrap().text;
    assert!(text.contains(
        "{name:\"aSlot\",getter:\"getSlot\",setter:\"setIt\",hasDefault:true,default:function () { return 1; }}"
    ));
    assert!(text.contains(
        "{name:\"anotherSlot\",getter:\"getAnotherSlot\",setter:\"setAnotherSlot\",hasDefault:true,default:function () { return Class(\"Baz.Bing\").create(1,2); }}"
    ));
}
