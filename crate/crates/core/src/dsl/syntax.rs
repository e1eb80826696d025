//! Lexer and recursive-descent parser for `.gpd` documents.
//!
//! ```text
//! document  := section+
//! section   := "field" ":" tokens ";"
//!            | "groupoid" "{" ("objects" ":" names ";"
//!                            | "arrows" ":" arrow ("," arrow)* ";"
//!                            | "compose" ":" relation ("," relation)* ";")* "}"
//!            | "ring" "{" (object ":" names ";")* "}"
//!            | "action" "{" (arrow ":" ("none" | entry ("," entry)*) ";")* "}"
//!            | "subgroupoid" NAME "=" "{" names? "}" ";"
//!            | "subring" NAME "=" block ("+" block)* ";"
//!            | "assert" word+ ";"
//! arrow     := NAME ":" NAME "->" NAME
//! relation  := word "=" word ("=" word)*        word := NAME+
//! entry     := NAME "->" [AUT] NAME
//! block     := FIELD "(" [AUT] NAME ("+" [AUT] NAME)* ")"
//! ```
//!
//! Names may carry a power suffix written without spaces (`g^2`, `l^-1`,
//! `frob^2`). `#` starts a comment that runs to the end of the line.

use super::ast::*;
use super::diagnostic::{Category, Diagnostic};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Arrow,
    Sym(char),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::Arrow => "->".into(),
            Tok::Sym(c) => c.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |c: char, i: &mut usize, line: &mut usize, col: &mut usize| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
        if c.is_whitespace() {
            advance(c, &mut i, &mut line, &mut col);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(chars[i], &mut i, &mut line, &mut col);
            }
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                s.push(chars[i]);
                advance(chars[i], &mut i, &mut line, &mut col);
            }
            // power suffix: ^k or ^-k, glued to the name
            if i + 1 < chars.len() && chars[i] == '^' {
                let mut j = i + 1;
                if j < chars.len() && chars[j] == '-' {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    while i < j {
                        s.push(chars[i]);
                        advance(chars[i], &mut i, &mut line, &mut col);
                    }
                }
            }
            out.push(Token { tok: Tok::Ident(s), span });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                advance(chars[i], &mut i, &mut line, &mut col);
            }
            out.push(Token { tok: Tok::Number(s), span });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            advance(c, &mut i, &mut line, &mut col);
            advance('>', &mut i, &mut line, &mut col);
            out.push(Token { tok: Tok::Arrow, span });
        } else if ":;,{}()=+-^".contains(c) {
            advance(c, &mut i, &mut line, &mut col);
            out.push(Token { tok: Tok::Sym(c), span });
        } else {
            return Err(Diagnostic::new(span, Category::Syntax, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: Span,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |t| t.span)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let found = self.peek().map_or("end of input".to_string(), |t| format!("`{}`", t.text()));
        Err(Diagnostic::new(self.span(), Category::Syntax, format!("{}, found {found}", msg.into())))
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_arrow(&mut self) -> PResult<()> {
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            Ok(())
        } else {
            self.err("expected `->`")
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let n = Name::new(s.clone(), self.span());
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a name"),
        }
    }

    fn is_name(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)))
    }

    /// Raw tokens up to (not including) the terminator, concatenated.
    fn raw_until(&mut self, stop: impl Fn(&Tok, usize) -> bool) -> PResult<Name> {
        let span = self.span();
        let mut s = String::new();
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            if stop(t, depth) {
                break;
            }
            match t {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth = depth.saturating_sub(1),
                _ => {}
            }
            s.push_str(&t.text());
            self.pos += 1;
        }
        if s.is_empty() {
            return self.err("expected a field name");
        }
        Ok(Name::new(s, span))
    }

    fn names(&mut self, stop: char) -> PResult<Vec<Name>> {
        let mut out = Vec::new();
        if self.is_sym(stop) {
            return Ok(out);
        }
        out.push(self.name()?);
        while self.is_sym(',') {
            self.pos += 1;
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn document(&mut self) -> PResult<SpecDocument> {
        let mut doc = SpecDocument::default();
        if self.peek().is_none() {
            return self.err("expected a section");
        }
        while self.peek().is_some() {
            let span = self.span();
            let dup = |what: &str| Err(Diagnostic::new(span, Category::Syntax, format!("second `{what}` section")));
            match self.peek() {
                Some(Tok::Ident(k)) if k == "field" => {
                    self.pos += 1;
                    self.expect_sym(':')?;
                    let f = self.raw_until(|t, _| *t == Tok::Sym(';'))?;
                    self.expect_sym(';')?;
                    if doc.field.is_some() {
                        return dup("field");
                    }
                    doc.field = Some(f);
                }
                Some(Tok::Ident(k)) if k == "groupoid" => {
                    self.pos += 1;
                    let g = self.groupoid()?;
                    if doc.groupoid.is_some() {
                        return dup("groupoid");
                    }
                    doc.groupoid = Some(g);
                }
                Some(Tok::Ident(k)) if k == "ring" => {
                    self.pos += 1;
                    self.expect_sym('{')?;
                    while !self.is_sym('}') {
                        let obj = self.name()?;
                        self.expect_sym(':')?;
                        let idems = self.names(';')?;
                        self.expect_sym(';')?;
                        doc.ring.push((obj, idems));
                    }
                    self.expect_sym('}')?;
                }
                Some(Tok::Ident(k)) if k == "action" => {
                    self.pos += 1;
                    self.expect_sym('{')?;
                    while !self.is_sym('}') {
                        doc.action.push(self.action_decl()?);
                    }
                    self.expect_sym('}')?;
                }
                Some(Tok::Ident(k)) if k == "subgroupoid" => {
                    self.pos += 1;
                    let name = self.name()?;
                    self.expect_sym('=')?;
                    self.expect_sym('{')?;
                    let members = self.names('}')?;
                    self.expect_sym('}')?;
                    self.expect_sym(';')?;
                    doc.subgroupoids.push(SubgroupoidDecl { name, members });
                }
                Some(Tok::Ident(k)) if k == "subring" => {
                    self.pos += 1;
                    let name = self.name()?;
                    self.expect_sym('=')?;
                    let mut blocks = vec![self.block()?];
                    while self.is_sym('+') {
                        self.pos += 1;
                        blocks.push(self.block()?);
                    }
                    self.expect_sym(';')?;
                    doc.subrings.push(SubringDecl { name, blocks });
                }
                Some(Tok::Ident(k)) if k == "assert" => {
                    self.pos += 1;
                    let mut words = Vec::new();
                    while !self.is_sym(';') {
                        match self.peek() {
                            Some(Tok::Ident(_)) => words.push(self.name()?),
                            Some(Tok::Number(n)) => {
                                words.push(Name::new(n.clone(), self.span()));
                                self.pos += 1;
                            }
                            Some(Tok::Sym('=')) => self.pos += 1,
                            _ => return self.err("expected an assertion word"),
                        }
                    }
                    if words.is_empty() {
                        return self.err("empty assertion");
                    }
                    self.expect_sym(';')?;
                    doc.assertions.push(Assertion { words, span: SpanEq(span) });
                }
                _ => return self.err("expected a section (field, groupoid, ring, action, subgroupoid, subring, assert)"),
            }
        }
        Ok(doc)
    }

    fn groupoid(&mut self) -> PResult<GroupoidSection> {
        let mut g = GroupoidSection::default();
        self.expect_sym('{')?;
        while !self.is_sym('}') {
            if self.is_keyword("objects") {
                self.pos += 1;
                self.expect_sym(':')?;
                g.objects.extend(self.names(';')?);
                self.expect_sym(';')?;
            } else if self.is_keyword("arrows") {
                self.pos += 1;
                self.expect_sym(':')?;
                loop {
                    let name = self.name()?;
                    self.expect_sym(':')?;
                    let source = self.name()?;
                    self.expect_arrow()?;
                    let target = self.name()?;
                    g.arrows.push(ArrowDecl { name, source, target });
                    if self.is_sym(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect_sym(';')?;
            } else if self.is_keyword("compose") {
                self.pos += 1;
                self.expect_sym(':')?;
                loop {
                    let mut words = vec![self.word()?];
                    if !self.is_sym('=') {
                        return self.err("expected `=` in a composition relation");
                    }
                    while self.is_sym('=') {
                        self.pos += 1;
                        words.push(self.word()?);
                    }
                    g.relations.push(words);
                    if self.is_sym(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect_sym(';')?;
            } else {
                return self.err("expected `objects`, `arrows` or `compose`");
            }
        }
        self.expect_sym('}')?;
        Ok(g)
    }

    fn word(&mut self) -> PResult<Vec<Name>> {
        let mut w = vec![self.name()?];
        while self.is_name() {
            w.push(self.name()?);
        }
        Ok(w)
    }

    fn action_decl(&mut self) -> PResult<ActionDecl> {
        let arrow = self.name()?;
        self.expect_sym(':')?;
        let mut entries = Vec::new();
        if self.is_keyword("none") {
            self.pos += 1;
        } else {
            loop {
                let from = self.name()?;
                self.expect_arrow()?;
                let first = self.name()?;
                let (automorphism, to) = if self.is_name() { (Some(first), self.name()?) } else { (None, first) };
                entries.push(MapEntry { from, automorphism, to });
                if self.is_sym(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect_sym(';')?;
        Ok(ActionDecl { arrow, entries })
    }

    /// `FIELD ( member + member … )`; the field name is everything before the
    /// last top-level parenthesised group of the block.
    fn block(&mut self) -> PResult<BlockDecl> {
        let start = self.pos;
        // Find the end of this block: next top-level `+` or `;`.
        let mut depth = 0usize;
        let mut end = self.pos;
        let mut last_open = None;
        while let Some(t) = self.toks.get(end).map(|t| &t.tok) {
            match t {
                Tok::Sym('(') => {
                    if depth == 0 {
                        last_open = Some(end);
                    }
                    depth += 1;
                }
                Tok::Sym(')') => depth = depth.saturating_sub(1),
                Tok::Sym('+') | Tok::Sym(';') if depth == 0 => break,
                _ => {}
            }
            end += 1;
        }
        let Some(open) = last_open.filter(|&o| o > start && end > 0 && self.toks[end - 1].tok == Tok::Sym(')')) else {
            return self.err("expected a block such as `k(e1 + e2)`");
        };
        let field = Name::new(self.toks[start..open].iter().map(|t| t.tok.text()).collect(), self.toks[start].span);
        self.pos = open + 1;
        let mut members = Vec::new();
        loop {
            let first = self.name()?;
            if self.is_name() {
                members.push((Some(first), self.name()?));
            } else {
                members.push((None, first));
            }
            if self.is_sym('+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect_sym(')')?;
        if self.pos != end {
            return self.err("unexpected tokens after block");
        }
        Ok(BlockDecl { field, members })
    }
}

/// Parses the syntax of a document (names are resolved later).
pub fn parse_document(text: &str) -> Result<SpecDocument, Vec<Diagnostic>> {
    let toks = lex(text).map_err(|d| vec![d])?;
    let lines = text.lines().count().max(1);
    let end = Span { line: lines, column: text.lines().last().map_or(1, |l| l.chars().count() + 1) };
    let mut p = Parser { toks, pos: 0, end };
    p.document().map_err(|d| vec![d])
}
