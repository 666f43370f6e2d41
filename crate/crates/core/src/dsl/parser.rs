use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::ast::*;
use super::build::{carrier_dims, group_from_decl};
use super::lexer::{lex, Tok, Token};
use crate::field::Field;
use crate::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
pub struct ParseError {
    pub kind: ErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// The offending name, for unresolved references and duplicates.
    pub name: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Syntax => "syntax",
            ErrorKind::Semantic => "semantic",
        };
        write!(f, "{}:{}: {kind} error: {}", self.line, self.column, self.message)
    }
}

type PResult<T> = Result<T, ParseError>;

pub fn parse(text: &str) -> PResult<Document> {
    parse_with_field(text, None)
}

/// Parses with literals interpreted in `over` instead of the declared field.
pub fn parse_with_field(text: &str, over: Option<Field>) -> PResult<Document> {
    let toks = lex(text).map_err(|(c, line, column)| ParseError {
        kind: ErrorKind::Syntax,
        line,
        column,
        message: format!("unexpected character '{c}'"),
        name: None,
    })?;
    let mut p = Parser {
        toks,
        pos: 0,
        doc: Document::default(),
        field: over.unwrap_or(Field::Rational),
        over,
        groups: BTreeMap::new(),
    };
    p.document()?;
    Ok(p.doc)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    doc: Document,
    field: Field,
    over: Option<Field>,
    groups: BTreeMap<String, FiniteGroup>,
}

fn is_ident(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

fn is_number(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("'{w}'"),
        Tok::Punct(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, t: &Token, kind: ErrorKind, message: String, name: Option<String>) -> ParseError {
        ParseError {
            kind,
            line: t.line,
            column: t.column,
            message,
            name,
        }
    }

    fn syntax<T>(&self, expected: &str) -> PResult<T> {
        let t = self.peek();
        Err(self.err_at(
            t,
            ErrorKind::Syntax,
            format!("expected {expected}, found {}", describe(&t.tok)),
            None,
        ))
    }

    fn semantic<T>(&self, t: &Token, message: String, name: Option<&str>) -> PResult<T> {
        Err(self.err_at(t, ErrorKind::Semantic, message, name.map(String::from)))
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w == k)
    }

    fn punct(&mut self, c: char) -> PResult<()> {
        if self.is_punct(c) {
            self.next();
            Ok(())
        } else {
            self.syntax(&format!("'{c}'"))
        }
    }

    fn keyword(&mut self, k: &str) -> PResult<()> {
        if self.is_keyword(k) {
            self.next();
            Ok(())
        } else {
            self.syntax(&format!("'{k}'"))
        }
    }

    fn word(&mut self, what: &str) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                Ok((w, self.next()))
            }
            _ => self.syntax(what),
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Word(w) if is_ident(w) => {
                let w = w.clone();
                Ok((w, self.next()))
            }
            _ => self.syntax(what),
        }
    }

    fn document(&mut self) -> PResult<()> {
        let mut first = true;
        while self.peek().tok != Tok::Eof {
            let (kw, t) = self.word("a declaration")?;
            match kw.as_str() {
                "field" if first => self.field_decl()?,
                "field" => return Err(self.err_at(&t, ErrorKind::Syntax, "field must be declared first".into(), None)),
                "group" => self.group_decl()?,
                "algebra" => self.algebra_decl()?,
                "grading" => self.grading_decl()?,
                "action" => self.action_decl()?,
                _ => {
                    return Err(self.err_at(
                        &t,
                        ErrorKind::Syntax,
                        format!("expected a declaration, found '{kw}'"),
                        None,
                    ))
                }
            }
            first = false;
        }
        Ok(())
    }

    fn field_decl(&mut self) -> PResult<()> {
        let (w, _) = self.word("'Q' or 'F'")?;
        let decl = match w.as_str() {
            "Q" => FieldDecl::Rational,
            "F" => {
                let (p, t) = self.word("a prime")?;
                let n = match p.parse::<u64>() {
                    Ok(n) if is_number(&p) => n,
                    _ => {
                        return Err(self.err_at(&t, ErrorKind::Syntax, format!("expected a prime, found '{p}'"), None))
                    }
                };
                if Field::prime(n).is_err() {
                    return self.semantic(&t, format!("{n} is not prime"), None);
                }
                FieldDecl::Prime(n)
            }
            _ => {
                self.pos -= 1;
                return self.syntax("'Q' or 'F'");
            }
        };
        if self.is_punct(';') {
            self.next();
        }
        self.doc.field = Some(decl);
        if self.over.is_none() {
            self.field = decl.field().expect("checked above");
        }
        Ok(())
    }

    fn fresh<V>(&self, map: &BTreeMap<String, V>, name: &str, t: &Token, what: &str) -> PResult<()> {
        if map.contains_key(name) {
            return self.semantic(t, format!("duplicate {what} '{name}'"), Some(name));
        }
        Ok(())
    }

    fn group_decl(&mut self) -> PResult<()> {
        let (name, nt) = self.word("a group name")?;
        self.fresh(&self.doc.groups, &name, &nt, "group")?;
        self.punct('{')?;
        self.keyword("elements")?;
        let mut elements = Vec::new();
        while let Tok::Word(_) = self.peek().tok {
            let (e, t) = self.word("an element")?;
            if elements.contains(&e) {
                return self.semantic(&t, format!("duplicate element '{e}'"), Some(&e));
            }
            elements.push(e);
        }
        self.punct(';')?;
        self.keyword("table")?;
        self.punct(':')?;
        let mut table = Vec::new();
        while !self.is_punct('}') {
            let start = self.peek().clone();
            let mut row = Vec::new();
            while let Tok::Word(_) = self.peek().tok {
                let (e, t) = self.word("an element")?;
                if !elements.contains(&e) {
                    return self.semantic(&t, format!("unknown group element '{e}'"), Some(&e));
                }
                row.push(e);
            }
            self.punct(';')?;
            if row.len() != elements.len() {
                return self.semantic(
                    &start,
                    format!("table row has {} entries, expected {}", row.len(), elements.len()),
                    None,
                );
            }
            table.push(row);
        }
        let close = self.peek().clone();
        self.punct('}')?;
        if table.len() != elements.len() {
            return self.semantic(
                &close,
                format!("table has {} rows, expected {}", table.len(), elements.len()),
                None,
            );
        }
        let decl = GroupDecl { elements, table };
        match group_from_decl(&decl) {
            Ok(g) => {
                self.groups.insert(name.clone(), g);
            }
            Err(e) => return self.semantic(&nt, format!("group '{name}': {e}"), Some(&name)),
        }
        self.doc.groups.insert(name, decl);
        Ok(())
    }

    fn literal(&mut self) -> PResult<String> {
        let start = self.peek().clone();
        let mut text = String::new();
        if self.is_punct('-') {
            self.next();
            text.push('-');
        }
        let (n, t) = self.word("a number")?;
        if !is_number(&n) {
            return Err(self.err_at(&t, ErrorKind::Syntax, format!("expected a number, found '{n}'"), None));
        }
        text.push_str(&n);
        if self.is_punct('/') {
            self.next();
            let (d, t) = self.word("a denominator")?;
            if !is_number(&d) {
                return Err(self.err_at(&t, ErrorKind::Syntax, format!("expected a number, found '{d}'"), None));
            }
            text.push('/');
            text.push_str(&d);
        }
        self.check_literal(&text, &start)?;
        Ok(text)
    }

    fn check_literal(&self, text: &str, t: &Token) -> PResult<()> {
        if self.field.parse_literal(text).is_none() {
            return self.semantic(t, format!("'{text}' is not an element of {}", self.field), None);
        }
        Ok(())
    }

    fn basis_name(&mut self, basis: &[String]) -> PResult<String> {
        let (n, t) = self.ident("a basis element")?;
        if !basis.contains(&n) {
            return self.semantic(&t, format!("unknown basis element '{n}'"), Some(&n));
        }
        Ok(n)
    }

    /// `0` or `[-][c] x (+|- [c] x)*`.
    fn lincomb(&mut self, basis: &[String]) -> PResult<LinComb> {
        if matches!(self.peek().tok, Tok::Word(ref w) if w == "0")
            && !matches!(self.peek_at(1), Tok::Word(_) | Tok::Punct('/'))
        {
            self.next();
            return Ok(LinComb::default());
        }
        let mut terms = Vec::new();
        let mut neg = if self.is_punct('-') {
            self.next();
            true
        } else {
            false
        };
        loop {
            let start = self.peek().clone();
            let mut coef = if neg { "-".to_string() } else { String::new() };
            if matches!(self.peek().tok, Tok::Word(ref w) if is_number(w)) {
                let (n, _) = self.word("a number")?;
                coef.push_str(&n);
                if self.is_punct('/') {
                    self.next();
                    let (d, t) = self.word("a denominator")?;
                    if !is_number(&d) {
                        return Err(self.err_at(
                            &t,
                            ErrorKind::Syntax,
                            format!("expected a number, found '{d}'"),
                            None,
                        ));
                    }
                    coef.push('/');
                    coef.push_str(&d);
                }
                self.check_literal(&coef, &start)?;
            } else {
                coef.push('1');
            }
            let name = self.basis_name(basis)?;
            terms.push(Term { coef, name });
            if self.is_punct('+') {
                neg = false;
            } else if self.is_punct('-') {
                neg = true;
            } else {
                break;
            }
            self.next();
        }
        Ok(LinComb(terms))
    }

    /// Names or parenthesized combinations up to `;`.
    fn vectors(&mut self, basis: &[String]) -> PResult<Vec<LinComb>> {
        let mut out = Vec::new();
        while !self.is_punct(';') {
            if self.is_punct('(') {
                self.next();
                out.push(self.lincomb(basis)?);
                self.punct(')')?;
            } else if matches!(self.peek().tok, Tok::Word(_)) {
                out.push(LinComb::name(&self.basis_name(basis)?));
            } else {
                return self.syntax("a basis element, '(' or ';'");
            }
        }
        self.next();
        Ok(out)
    }

    fn algebra_decl(&mut self) -> PResult<()> {
        let (name, nt) = self.word("an algebra name")?;
        self.fresh(&self.doc.algebras, &name, &nt, "algebra")?;
        self.punct('{')?;
        self.keyword("basis")?;
        let mut basis = Vec::new();
        while !self.is_punct(';') {
            let (b, t) = self.ident("a basis name")?;
            if basis.contains(&b) {
                return self.semantic(&t, format!("duplicate basis element '{b}'"), Some(&b));
            }
            basis.push(b);
        }
        self.next();
        let mut products: Vec<(String, String, LinComb)> = Vec::new();
        while !self.is_punct('}') {
            let start = self.peek().clone();
            let l = self.basis_name(&basis)?;
            self.punct('*')?;
            let r = self.basis_name(&basis)?;
            if products.iter().any(|(a, b, _)| *a == l && *b == r) {
                return self.semantic(&start, format!("product {l}*{r} given twice"), None);
            }
            self.punct('=')?;
            let rhs = self.lincomb(&basis)?;
            self.punct(';')?;
            products.push((l, r, rhs));
        }
        self.next();
        self.doc.algebras.insert(name, AlgebraDecl { basis, products });
        Ok(())
    }

    fn reference<V>(&mut self, map: &BTreeMap<String, V>, what: &str) -> PResult<String> {
        let (n, t) = self.word(&format!("{what} name"))?;
        if !map.contains_key(&n) {
            return self.semantic(&t, format!("unknown {what} '{n}'"), Some(&n));
        }
        Ok(n)
    }

    fn element(&mut self, group: &str) -> PResult<String> {
        let (e, t) = self.word("a group element")?;
        if !self.doc.groups[group].elements.contains(&e) {
            return self.semantic(&t, format!("unknown group element '{e}'"), Some(&e));
        }
        Ok(e)
    }

    fn grading_decl(&mut self) -> PResult<()> {
        let (name, nt) = self.word("a grading name")?;
        self.fresh(&self.doc.gradings, &name, &nt, "grading")?;
        self.keyword("on")?;
        let algebra = self.reference(&self.doc.algebras.clone(), "algebra")?;
        self.keyword("by")?;
        let group = self.reference(&self.doc.groups.clone(), "group")?;
        let basis = self.doc.algebras[&algebra].basis.clone();
        self.punct('{')?;
        let mut components: Vec<(String, Vec<LinComb>)> = Vec::new();
        while !self.is_punct('}') {
            let t = self.peek().clone();
            let g = self.element(&group)?;
            if components.iter().any(|(h, _)| *h == g) {
                return self.semantic(&t, format!("component '{g}' given twice"), Some(&g));
            }
            self.punct(':')?;
            components.push((g, self.vectors(&basis)?));
        }
        self.next();
        self.doc.gradings.insert(
            name,
            GradingDecl {
                algebra,
                group,
                components,
            },
        );
        Ok(())
    }

    fn matrix(&mut self) -> PResult<(MatrixLit, Token)> {
        let start = self.peek().clone();
        self.punct('[')?;
        let mut rows = Vec::new();
        while self.is_punct('[') {
            self.next();
            let mut row = Vec::new();
            while !self.is_punct(']') {
                row.push(self.literal()?);
                if !self.is_punct(']') {
                    self.punct(',')?;
                }
            }
            self.next();
            rows.push(row);
            if !self.is_punct(']') {
                self.punct(',')?;
            }
        }
        self.punct(']')?;
        Ok((rows, start))
    }

    fn action_decl(&mut self) -> PResult<()> {
        let (name, nt) = self.word("an action name")?;
        self.fresh(&self.doc.actions, &name, &nt, "action")?;
        let mut algebra = None;
        let mut group = None;
        if self.is_keyword("on") {
            self.next();
            algebra = Some(self.reference(&self.doc.algebras.clone(), "algebra")?);
        }
        if self.is_keyword("by") {
            self.next();
            group = Some(self.reference(&self.doc.groups.clone(), "group")?);
        }
        let mut decl = ActionDecl {
            algebra,
            group,
            domains: Vec::new(),
            thetas: Vec::new(),
            twists: Vec::new(),
        };
        let Some(alg_name) = self.doc.action_algebra(&decl).map(String::from) else {
            return self.semantic(&nt, format!("action '{name}' needs 'on <algebra>'"), Some(&name));
        };
        let Some(grp_name) = self.doc.action_group(&decl).map(String::from) else {
            return self.semantic(&nt, format!("action '{name}' needs 'by <group>'"), Some(&name));
        };
        let basis = self.doc.algebras[&alg_name].basis.clone();
        self.punct('{')?;
        let mut theta_pos = Vec::new();
        let mut twist_pos = Vec::new();
        while !self.is_punct('}') {
            let (kw, kt) = self.word("'domain', 'theta' or 'twist'")?;
            match kw.as_str() {
                "domain" => {
                    let t = self.peek().clone();
                    let g = self.element(&grp_name)?;
                    if decl.domains.iter().any(|(h, _)| *h == g) {
                        return self.semantic(&t, format!("domain '{g}' given twice"), Some(&g));
                    }
                    self.punct(':')?;
                    decl.domains.push((g, self.vectors(&basis)?));
                }
                "theta" => {
                    let t = self.peek().clone();
                    let g = self.element(&grp_name)?;
                    if decl.thetas.iter().any(|(h, _)| *h == g) {
                        return self.semantic(&t, format!("theta '{g}' given twice"), Some(&g));
                    }
                    self.punct(':')?;
                    let (m, mt) = self.matrix()?;
                    self.punct(';')?;
                    theta_pos.push(mt);
                    decl.thetas.push((g, m));
                }
                "twist" => {
                    let t = self.peek().clone();
                    let g = self.element(&grp_name)?;
                    let h = self.element(&grp_name)?;
                    if decl.twists.iter().any(|w| w.g == g && w.h == h) {
                        return self.semantic(&t, format!("twist '{g} {h}' given twice"), None);
                    }
                    self.punct(':')?;
                    self.punct('(')?;
                    self.keyword("R")?;
                    self.punct('=')?;
                    let (r, rt) = self.matrix()?;
                    self.punct(',')?;
                    self.keyword("L")?;
                    self.punct('=')?;
                    let (l, lt) = self.matrix()?;
                    self.punct(')')?;
                    self.punct(';')?;
                    twist_pos.push((rt, lt));
                    decl.twists.push(TwistDecl { g, h, r, l });
                }
                _ => {
                    return Err(self.err_at(
                        &kt,
                        ErrorKind::Syntax,
                        format!("expected 'domain', 'theta' or 'twist', found '{kw}'"),
                        None,
                    ))
                }
            }
        }
        let close = self.peek().clone();
        self.next();
        self.check_action_shapes(&decl, &alg_name, &grp_name, &theta_pos, &twist_pos, &close)?;
        self.doc.actions.insert(name, decl);
        Ok(())
    }

    fn check_action_shapes(
        &self,
        decl: &ActionDecl,
        alg_name: &str,
        grp_name: &str,
        theta_pos: &[Token],
        twist_pos: &[(Token, Token)],
        close: &Token,
    ) -> PResult<()> {
        let grp = &self.groups[grp_name];
        let alg = &self.doc.algebras[alg_name];
        let (dom, carrier) = carrier_dims(self.field, alg, grp, decl).map_err(|e| ParseError {
            kind: ErrorKind::Semantic,
            line: close.line,
            column: close.column,
            message: e.to_string(),
            name: None,
        })?;
        let shape = |m: &MatrixLit| -> Option<(usize, usize)> {
            let cols = m.first().map_or(0, |r| r.len());
            m.iter().all(|r| r.len() == cols).then_some((m.len(), cols))
        };
        let ok = |m: &MatrixLit, rows: usize, cols: usize| match shape(m) {
            Some((r, c)) => r == rows && (c == cols || rows == 0),
            None => false,
        };
        for ((g, m), t) in decl.thetas.iter().zip(theta_pos) {
            let gi = grp.index_of(g).unwrap();
            let (r, c) = (dom[grp.inv(gi)], dom[gi]);
            if !ok(m, r, c) {
                return self.semantic(t, format!("theta {g} must be {r}x{c} (D_g^-1 to D_g)"), Some(g));
            }
        }
        for g in grp.elements() {
            let named = decl.thetas.iter().any(|(h, _)| grp.index_of(h) == Some(g));
            if !named && g != grp.identity() && dom[g] + dom[grp.inv(g)] > 0 {
                let n = grp.name(g);
                return self.semantic(close, format!("theta {n} is missing"), Some(n));
            }
        }
        for (w, (rt, lt)) in decl.twists.iter().zip(twist_pos) {
            let (g, h) = (grp.index_of(&w.g).unwrap(), grp.index_of(&w.h).unwrap());
            let d = carrier[g * grp.order() + h];
            for (m, t) in [(&w.r, rt), (&w.l, lt)] {
                if !ok(m, d, d) {
                    return self.semantic(t, format!("twist {} {} must be {d}x{d} (on D_g D_gh)", w.g, w.h), None);
                }
            }
        }
        Ok(())
    }
}
