//! Parser for class-declaration sources such as
//!
//! ```text
//! class C<T> {}
//! class E<T> extends C<T> {}
//! class F<T> extends D {}
//! ```
//!
//! Classes take at most one type parameter, and a generic superclass may only
//! be instantiated with the subclass's own parameter. Bodies must be empty.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{DeclErrorKind, Error, Result};
use crate::graph::{DirectedGraph, Label};
use crate::intervals::NamingConfig;
use crate::product::SubclassingGraph;

const TOP_ALIASES: [&str; 2] = ["O", "Object"];
const BOTTOM_ALIASES: [&str; 2] = ["N", "Null"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: Label,
    pub type_param: Option<String>,
    /// `None` when the class extends the top class.
    pub super_name: Option<Label>,
    pub super_arg: Option<String>,
}

impl ClassDecl {
    pub fn is_generic(&self) -> bool {
        self.type_param.is_some()
    }
}

impl fmt::Display for ClassDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {}", self.name)?;
        if let Some(p) = &self.type_param {
            write!(f, "<{p}>")?;
        }
        if let Some(s) = &self.super_name {
            write!(f, " extends {s}")?;
            if let Some(a) = &self.super_arg {
                write!(f, "<{a}>")?;
            }
        }
        f.write_str(" {}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassTable {
    pub decls: Vec<ClassDecl>,
    pub names: BTreeSet<Label>,
}

impl ClassTable {
    pub fn get(&self, name: &Label) -> Option<&ClassDecl> {
        self.decls.iter().find(|d| d.name == *name)
    }
}

impl fmt::Display for ClassTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Lexeme {
    tok: Tok,
    line: usize,
    column: usize,
}

fn decl_error(line: usize, column: usize, kind: DeclErrorKind) -> Error {
    Error::Declaration { line, column, kind }
}

fn lex(source: &str) -> Result<(Vec<Lexeme>, (usize, usize))> {
    let mut out = Vec::new();
    let mut chars = source.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '/' {
            bump(&mut chars);
            if chars.peek() != Some(&'/') {
                return Err(decl_error(
                    start_line,
                    start_col,
                    DeclErrorKind::Syntax("expected `//` comment".into()),
                ));
            }
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    word.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push(Lexeme {
                tok: Tok::Ident(word),
                line: start_line,
                column: start_col,
            });
        } else if "<>{},".contains(c) {
            bump(&mut chars);
            out.push(Lexeme {
                tok: Tok::Sym(c),
                line: start_line,
                column: start_col,
            });
        } else {
            return Err(decl_error(
                start_line,
                start_col,
                DeclErrorKind::Syntax(format!("unexpected character {c:?}")),
            ));
        }
    }
    Ok((out, (line, column)))
}

/// A superclass type argument as written, before validation.
#[derive(Debug, Clone)]
struct TypeRef {
    name: String,
    args: Vec<TypeRef>,
}

impl fmt::Display for TypeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "<{}>", args.join(", "))?;
        }
        Ok(())
    }
}

struct RawDecl {
    name: String,
    params: Vec<String>,
    super_ref: Option<TypeRef>,
    line: usize,
    column: usize,
}

struct Parser {
    lexemes: Vec<Lexeme>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn here(&self) -> (usize, usize) {
        self.lexemes
            .get(self.pos)
            .map_or(self.eof, |l| (l.line, l.column))
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(decl_error(
            line,
            column,
            DeclErrorKind::Syntax(message.into()),
        ))
    }

    fn peek(&self) -> Option<&Tok> {
        self.lexemes.get(self.pos).map(|l| &l.tok)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.syntax(format!("expected `{c}`"))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(w)) if w != "class" && w != "extends" => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.syntax("expected an identifier"),
        }
    }

    fn type_ref(&mut self) -> Result<TypeRef> {
        let name = self.ident()?;
        let mut args = Vec::new();
        if self.eat_sym('<') {
            loop {
                args.push(self.type_ref()?);
                if self.eat_sym('>') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        Ok(TypeRef { name, args })
    }

    fn decl(&mut self) -> Result<RawDecl> {
        let (line, column) = self.here();
        if !self.eat_keyword("class") {
            return self.syntax("expected `class`");
        }
        let name = self.ident()?;
        let mut params = Vec::new();
        if self.eat_sym('<') {
            loop {
                params.push(self.ident()?);
                if self.eat_sym('>') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        let super_ref = if self.eat_keyword("extends") {
            Some(self.type_ref()?)
        } else {
            None
        };
        self.expect_sym('{')?;
        if !self.eat_sym('}') {
            return self.syntax("class bodies must be empty: expected `}`");
        }
        Ok(RawDecl {
            name,
            params,
            super_ref,
            line,
            column,
        })
    }
}

/// Parses and validates a declaration source.
pub fn parse_decls(source: &str) -> Result<ClassTable> {
    let (lexemes, eof) = lex(source)?;
    let mut parser = Parser {
        lexemes,
        pos: 0,
        eof,
    };
    let mut raw = Vec::new();
    while parser.peek().is_some() {
        raw.push(parser.decl()?);
    }
    validate(raw)
}

fn validate(raw: Vec<RawDecl>) -> Result<ClassTable> {
    let reserved = |n: &str| TOP_ALIASES.contains(&n) || BOTTOM_ALIASES.contains(&n);
    let mut arity: BTreeMap<&str, usize> = BTreeMap::new();
    for d in &raw {
        let err = |kind| Err(decl_error(d.line, d.column, kind));
        if reserved(&d.name) {
            return err(DeclErrorKind::ReservedName(d.name.clone()));
        }
        if d.params.len() > 1 {
            return err(DeclErrorKind::UnsupportedArity(d.name.clone()));
        }
        if arity.insert(&d.name, d.params.len()).is_some() {
            return err(DeclErrorKind::DuplicateClass(d.name.clone()));
        }
    }

    let mut decls = Vec::with_capacity(raw.len());
    for d in &raw {
        let err = |kind| Err(decl_error(d.line, d.column, kind));
        let type_param = d.params.first().cloned();
        let (super_name, super_arg) = match &d.super_ref {
            None => (None, None),
            Some(s) if TOP_ALIASES.contains(&s.name.as_str()) && s.args.is_empty() => (None, None),
            Some(s) => {
                if BOTTOM_ALIASES.contains(&s.name.as_str()) {
                    return err(DeclErrorKind::UnsupportedInstantiation(format!(
                        "`{}` cannot extend the bottom class",
                        d.name
                    )));
                }
                let Some(&super_arity) = arity.get(s.name.as_str()) else {
                    return err(DeclErrorKind::UnknownSuperclass(s.name.clone()));
                };
                if s.args.len() != super_arity {
                    return err(DeclErrorKind::UnsupportedInstantiation(format!(
                        "`{s}` does not match the {super_arity} type parameter(s) of `{}`",
                        s.name
                    )));
                }
                let arg = match s.args.first() {
                    None => None,
                    Some(a) if a.args.is_empty() && Some(&a.name) == type_param.as_ref() => {
                        Some(a.name.clone())
                    }
                    Some(_) => {
                        return err(DeclErrorKind::UnsupportedInstantiation(format!(
                            "`extends {s}`: a generic superclass must be instantiated with the \
                             subclass's own type parameter"
                        )))
                    }
                };
                (Some(Label::new(s.name.clone())?), arg)
            }
        };
        decls.push(ClassDecl {
            name: Label::new(d.name.clone())?,
            type_param,
            super_name,
            super_arg,
        });
    }

    // Each class has at most one superclass, so a cycle shows up as a
    // superclass chain longer than the number of classes.
    let parent: BTreeMap<&Label, &Label> = decls
        .iter()
        .filter_map(|d| d.super_name.as_ref().map(|s| (&d.name, s)))
        .collect();
    for (d, r) in decls.iter().zip(&raw) {
        let mut cur = &d.name;
        for _ in 0..=decls.len() {
            match parent.get(cur) {
                Some(next) => cur = next,
                None => break,
            }
            if *cur == d.name {
                return Err(decl_error(
                    r.line,
                    r.column,
                    DeclErrorKind::InheritanceCycle(d.name.to_string()),
                ));
            }
        }
    }

    let names = decls.iter().map(|d| d.name.clone()).collect();
    Ok(ClassTable { decls, names })
}

/// The subclassing graph of `t`: declared `extends` edges, `x -> top` for
/// classes without a declared superclass, `bottom -> x` for every class.
pub fn build_subclassing(t: &ClassTable, cfg: &NamingConfig) -> Result<SubclassingGraph> {
    let mut g = DirectedGraph::new();
    g.add_edge(cfg.bottom.clone(), cfg.top.clone());
    for d in &t.decls {
        let sup = d.super_name.clone().unwrap_or_else(|| cfg.top.clone());
        g.add_edge(d.name.clone(), sup);
        g.add_edge(cfg.bottom.clone(), d.name.clone());
    }
    let generics = t
        .decls
        .iter()
        .filter(|d| d.is_generic())
        .map(|d| d.name.clone())
        .collect();
    SubclassingGraph::new(g, generics, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> DeclErrorKind {
        parse_decls(src)
            .unwrap_err()
            .decl_kind()
            .cloned()
            .expect("declaration error")
    }

    fn edges(c: &SubclassingGraph) -> Vec<(String, String)> {
        c.graph()
            .edges()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn single_generic_class() {
        let t = parse_decls("class C<T> {}").unwrap();
        assert_eq!(t.decls.len(), 1);
        assert!(t.decls[0].is_generic());
        assert_eq!(t.decls[0].super_name, None);
    }

    #[test]
    fn generic_with_plain_superclass() {
        let t = parse_decls("class D {}\nclass F<T> extends D {}").unwrap();
        let f = &t.decls[1];
        assert_eq!(f.type_param.as_deref(), Some("T"));
        assert_eq!(f.super_name.as_ref().map(Label::as_str), Some("D"));
        assert_eq!(f.super_arg, None);
    }

    #[test]
    fn nested_superclass_instantiation_is_rejected() {
        let src = "class C<T> {}\nclass D<T> extends C<D<T>> {}";
        assert!(matches!(
            kind(src),
            DeclErrorKind::UnsupportedInstantiation(_)
        ));
        let src = "class E<T> {}\nclass C<T> extends E<E<T>> {}";
        assert!(matches!(
            kind(src),
            DeclErrorKind::UnsupportedInstantiation(_)
        ));
    }

    #[test]
    fn instantiation_must_reuse_own_parameter() {
        assert!(matches!(
            kind("class C<T> {} class E<U> extends C<T> {}"),
            DeclErrorKind::UnsupportedInstantiation(_)
        ));
        assert!(matches!(
            kind("class C<T> {} class E<T> extends C {}"),
            DeclErrorKind::UnsupportedInstantiation(_)
        ));
        assert!(matches!(
            kind("class C {} class E<T> extends C<T> {}"),
            DeclErrorKind::UnsupportedInstantiation(_)
        ));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            kind("class C {} class C {}"),
            DeclErrorKind::DuplicateClass(_)
        ));
        assert!(matches!(
            kind("class C extends D {}"),
            DeclErrorKind::UnknownSuperclass(_)
        ));
        assert!(matches!(
            kind("class Object {}"),
            DeclErrorKind::ReservedName(_)
        ));
        assert!(matches!(
            kind("class M<K, V> {}"),
            DeclErrorKind::UnsupportedArity(_)
        ));
        assert!(matches!(
            kind("class A extends B {} class B extends A {}"),
            DeclErrorKind::InheritanceCycle(_)
        ));
        assert!(matches!(
            kind("class C { int x; }"),
            DeclErrorKind::Syntax(_)
        ));
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_decls("class C<T> {}\n  klass D {}") {
            Err(Error::Declaration { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_decls("class C<T> {") {
            Err(Error::Declaration { line, column, .. }) => assert_eq!((line, column), (1, 13)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_forward_references() {
        let src =
            "// Example 3\nclass E<T> extends C<T> {} // later\nclass C<T> extends Object {}\n";
        let t = parse_decls(src).unwrap();
        assert_eq!(t.decls.len(), 2);
        assert_eq!(t.decls[1].super_name, None);
    }

    #[test]
    fn subclassing_of_examples() {
        let cfg = NamingConfig::default();
        let c = build_subclassing(&parse_decls("class C<T> {}").unwrap(), &cfg).unwrap();
        assert_eq!(
            edges(&c),
            [("C".into(), "O".into()), ("N".into(), "C".into())]
        );

        let src = "class C {}\nclass E extends C {}\nclass D {}\nclass F<T> extends D {}";
        let c = build_subclassing(&parse_decls(src).unwrap(), &cfg).unwrap();
        let mut got = edges(&c);
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("N", "E"),
            ("E", "C"),
            ("C", "O"),
            ("N", "F"),
            ("F", "D"),
            ("D", "O"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(c.generics().len(), 1);

        let empty = build_subclassing(&parse_decls("").unwrap(), &cfg).unwrap();
        assert_eq!(edges(&empty), [("N".into(), "O".into())]);
    }

    #[test]
    fn pretty_print_round_trips() {
        let src =
            "class C<T> {}\nclass E<T> extends C<T> {}\nclass D {}\nclass F<T> extends D {}\n";
        let t = parse_decls(src).unwrap();
        assert_eq!(t.to_string(), src);
        assert_eq!(parse_decls(&t.to_string()).unwrap(), t);
    }
}
