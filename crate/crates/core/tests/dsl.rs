mod common;

use twistcross::action::verify_action;
use twistcross::crossed::build_crossed_product;
use twistcross::dsl::{self, parse, parse_with_field, print, Document, ErrorKind};
use twistcross::Field;

use common::*;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join("errors").join(format!("{name}.tc"))).unwrap()
}

fn error_at(name: &str) -> (ErrorKind, Option<String>, usize, usize) {
    let e = parse(&fixture(name)).unwrap_err();
    (e.kind, e.name, e.line, e.column)
}

#[test]
fn corpus_is_a_print_fixpoint() {
    let files = corpus_files();
    assert!(files.len() >= 10);
    for (name, text) in files {
        let doc = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print(&doc);
        let again = parse(&printed).unwrap_or_else(|e| panic!("{name} reprinted: {e}\n{printed}"));
        assert_eq!(again, doc, "{name}");
        assert_eq!(print(&again), printed, "{name}");
    }
}

#[test]
fn semantic_errors_name_the_offender() {
    let sem = ErrorKind::Semantic;
    assert_eq!(error_at("unknown_basis"), (sem, Some("e3".into()), 6, 6));
    assert_eq!(error_at("unknown_element"), (sem, Some("h".into()), 18, 3));
    assert_eq!(error_at("unknown_group"), (sem, Some("Z7".into()), 8, 19));
    assert_eq!(error_at("theta_shape"), (sem, Some("g".into()), 18, 12));
    assert_eq!(error_at("bad_literal"), (sem, None, 5, 11));
}

#[test]
fn syntax_error_location() {
    assert_eq!(error_at("syntax"), (ErrorKind::Syntax, None, 6, 3));
    let e = parse(&fixture("syntax")).unwrap_err();
    assert_eq!(e.to_string(), "6:3: syntax error: expected ';', found 'e2'");
}

#[test]
fn small_errors() {
    let cases = [
        ("field F 6;", "6 is not prime"),
        ("field Q; group G { elements 1 1; table: 1; }", "duplicate"),
        ("field Q; group G { elements 1 a; table: 1 a; a a; }", "group"),
        ("algebra A { basis x; } field Q;", "field"),
        ("field Q; algebra A { basis x; x*x = x; x*x = x; }", "given twice"),
        ("field Q; algebra A { basis x } ", "expected a basis name"),
        ("field Q; algebra A { basis x; x*x = x; } $", "unexpected character"),
    ];
    for (text, needle) in cases {
        let e = parse(text).unwrap_err();
        assert!(e.to_string().contains(needle), "{text}: {e}");
    }
}

#[test]
fn printer_output_is_canonical() {
    let text = "field F 5; group Z2 { elements 1 g; table: 1 g; g 1; }
        algebra A { basis e f; e*e = e; f*f = 3 f - e; }
        grading B on A by Z2 { 1: e (e + 2 f); }";
    let doc = parse(text).unwrap();
    let expected = "field F 5;

group Z2 {
  elements 1 g;
  table:
    1 g;
    g 1;
}

algebra A {
  basis e f;
  e*e = e;
  f*f = 3 f - e;
}

grading B on A by Z2 {
  1: e (e + 2 f);
}
";
    let printed = print(&doc);
    assert_eq!(printed, expected);
    let _: Document = parse(&printed).unwrap();
}

#[test]
fn field_override_reinterprets_literals() {
    let text = std::fs::read_to_string(corpus_dir().join("quaternion.tc")).unwrap();
    let doc = parse_with_field(&text, Some(Field::Prime(7))).unwrap();
    let th = dsl::build_action(&doc, "H", Field::Prime(7)).unwrap();
    assert_eq!(th.ambient().field(), Field::Prime(7));
    assert!(verify_action(&th).passed());
    assert_eq!(build_crossed_product(&th).unwrap().dim(), 4);
    // 1/2 has no meaning in F 2.
    let mixed = std::fs::read_to_string(corpus_dir().join("twisted_z2.tc")).unwrap();
    assert!(parse_with_field(&mixed, Some(Field::Prime(2))).is_err());
}

#[test]
fn declarations_round_trip_through_objects() {
    for (file, name, th) in corpus_verified_actions() {
        let doc = corpus_doc(&file);
        let decl = &doc.actions[&name];
        let alg = doc.action_algebra(decl).unwrap();
        let grp = doc.action_group(decl).unwrap();
        let mut rebuilt = Document {
            field: doc.field,
            ..Default::default()
        };
        rebuilt.groups.insert(grp.into(), dsl::group_decl(th.group()));
        rebuilt.algebras.insert(alg.into(), dsl::algebra_decl(th.ambient()));
        rebuilt.actions.insert(name.clone(), dsl::action_decl(&th, alg, grp));
        let f = doc.field(None).unwrap();
        let back = dsl::build_action(&parse(&print(&rebuilt)).unwrap(), &name, f).unwrap();
        for g in th.group().elements() {
            assert_eq!(back.domain(g).space(), th.domain(g).space(), "{file}");
            assert_eq!(back.theta(g), th.theta(g), "{file}");
            for h in th.group().elements() {
                assert_eq!(back.twist(g, h), th.twist(g, h), "{file}");
            }
        }
    }
    for (file, name, gb) in corpus_gradings() {
        let doc = corpus_doc(&file);
        let decl = &doc.gradings[&name];
        let mut rebuilt = Document {
            field: doc.field,
            ..Default::default()
        };
        rebuilt.groups.insert(decl.group.clone(), dsl::group_decl(gb.group()));
        rebuilt
            .algebras
            .insert(decl.algebra.clone(), dsl::algebra_decl(gb.ambient()));
        rebuilt
            .gradings
            .insert(name.clone(), dsl::grading_decl(&gb, &decl.algebra, &decl.group));
        let f = doc.field(None).unwrap();
        let back = dsl::build_grading(&parse(&print(&rebuilt)).unwrap(), &name, f).unwrap();
        assert_eq!(back.components(), gb.components(), "{file}");
    }
}
