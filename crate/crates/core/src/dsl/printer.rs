use std::fmt::Write;

use super::ast::*;

fn lincomb(lc: &LinComb) -> String {
    if lc.0.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in lc.0.iter().enumerate() {
        let (neg, mag) = match t.coef.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, t.coef.as_str()),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != "1" {
            out.push_str(mag);
            out.push(' ');
        }
        out.push_str(&t.name);
    }
    out
}

fn vectors(vs: &[LinComb]) -> String {
    let parts: Vec<String> = vs
        .iter()
        .map(|v| match v.0.as_slice() {
            [t] if t.coef == "1" => t.name.clone(),
            _ => format!("({})", lincomb(v)),
        })
        .collect();
    parts.join(" ")
}

fn matrix(m: &MatrixLit) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn list_line(out: &mut String, head: &str, vs: &[LinComb]) {
    if vs.is_empty() {
        writeln!(out, "  {head}:;").unwrap();
    } else {
        writeln!(out, "  {head}: {};", vectors(vs)).unwrap();
    }
}

/// Canonical text: the field, then groups, algebras, gradings and actions,
/// each sorted by name.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    match doc.field {
        Some(FieldDecl::Rational) => out.push_str("field Q;\n"),
        Some(FieldDecl::Prime(p)) => writeln!(out, "field F {p};").unwrap(),
        None => {}
    }
    for (name, g) in &doc.groups {
        writeln!(out, "\ngroup {name} {{").unwrap();
        writeln!(out, "  elements {};", g.elements.join(" ")).unwrap();
        out.push_str("  table:\n");
        for row in &g.table {
            writeln!(out, "    {};", row.join(" ")).unwrap();
        }
        out.push_str("}\n");
    }
    for (name, a) in &doc.algebras {
        writeln!(out, "\nalgebra {name} {{").unwrap();
        writeln!(out, "  basis {};", a.basis.join(" ")).unwrap();
        for (l, r, rhs) in &a.products {
            writeln!(out, "  {l}*{r} = {};", lincomb(rhs)).unwrap();
        }
        out.push_str("}\n");
    }
    for (name, gr) in &doc.gradings {
        writeln!(out, "\ngrading {name} on {} by {} {{", gr.algebra, gr.group).unwrap();
        for (g, vs) in &gr.components {
            list_line(&mut out, g, vs);
        }
        out.push_str("}\n");
    }
    for (name, a) in &doc.actions {
        write!(out, "\naction {name}").unwrap();
        if let Some(alg) = &a.algebra {
            write!(out, " on {alg}").unwrap();
        }
        if let Some(grp) = &a.group {
            write!(out, " by {grp}").unwrap();
        }
        out.push_str(" {\n");
        for (g, vs) in &a.domains {
            list_line(&mut out, &format!("domain {g}"), vs);
        }
        for (g, m) in &a.thetas {
            writeln!(out, "  theta {g}: {};", matrix(m)).unwrap();
        }
        for w in &a.twists {
            writeln!(
                out,
                "  twist {} {}: (R={}, L={});",
                w.g,
                w.h,
                matrix(&w.r),
                matrix(&w.l)
            )
            .unwrap();
        }
        out.push_str("}\n");
    }
    out.trim_start().to_string()
}
