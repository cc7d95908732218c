use std::collections::BTreeSet;

use crate::error::{Error, ParseError};
use crate::exactla::{parse_scalar, Matrix, Scalar, Vector};
use crate::homcore::{HomAlgebra, Kind, StructureTensor};
use crate::homrep::{Action, ActionTensor, Representation};

use super::{Document, Item, Space};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Comma,
    Star,
    Eq,
    Arrow,
    Plus,
    Minus,
    Colon,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Colon => "`:`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn error(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (ln + 1, i + 1);
            let start = i;
            let tok = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    out.push(Token {
                        tok: Tok::Ident(chars[start..i].iter().collect()),
                        line,
                        col,
                    });
                    continue;
                }
                c if c.is_ascii_digit() => {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                        i += 1;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    out.push(Token {
                        tok: Tok::Num(chars[start..i].iter().collect()),
                        line,
                        col,
                    });
                    continue;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Tok::Arrow
                }
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '*' => Tok::Star,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                ':' => Tok::Colon,
                other => return Err(error(line, col, format!("unexpected character `{other}`"))),
            };
            i += 1;
            out.push(Token { tok, line, col });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Position reported for errors at end of input.
    end: (usize, usize),
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_on_line(&self, line: usize) -> Option<&Tok> {
        self.peek().filter(|t| t.line == line).map(|t| &t.tok)
    }

    fn next(&mut self, what: &str) -> PResult<Token> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(error(self.end.0, self.end.1, format!("expected {what}, found end of input"))),
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        let what = tok.describe();
        let t = self.next(&what)?;
        if t.tok != tok {
            return Err(error(t.line, t.col, format!("expected {what}, found {}", t.tok.describe())));
        }
        Ok(t)
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Token)> {
        let t = self.next(what)?;
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(error(t.line, t.col, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Token> {
        let (s, t) = self.ident(&format!("`{kw}`"))?;
        if s != kw {
            return Err(error(t.line, t.col, format!("expected `{kw}`, found `{s}`")));
        }
        Ok(t)
    }

    fn count(&mut self) -> PResult<usize> {
        let t = self.next("a dimension")?;
        match &t.tok {
            Tok::Num(s) if !s.contains('/') => s
                .parse()
                .map_err(|_| error(t.line, t.col, format!("dimension `{s}` is too large"))),
            other => Err(error(t.line, t.col, format!("expected a dimension, found {}", other.describe()))),
        }
    }

    /// A basis symbol `{symbol}k` with `1 <= k <= dim`, as a zero-based index.
    fn basis(&mut self, symbol: char, dim: usize) -> PResult<usize> {
        let (s, t) = self.ident(&format!("a basis symbol `{symbol}k`"))?;
        let index = s
            .strip_prefix(symbol)
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok());
        match index {
            Some(k) if (1..=dim).contains(&k) => Ok(k - 1),
            _ => Err(error(t.line, t.col, format!("unknown basis symbol `{s}` (dimension {dim})"))),
        }
    }

    fn is_basis_like(tok: Option<&Tok>) -> bool {
        matches!(tok, Some(Tok::Ident(s)) if s.len() > 1 && s[1..].bytes().all(|b| b.is_ascii_digit()))
    }

    /// A rational linear combination, confined to the line it starts on.
    fn lincomb(&mut self, symbol: char, dim: usize) -> PResult<Vector> {
        let start = self
            .peek()
            .cloned()
            .ok_or_else(|| error(self.end.0, self.end.1, "expected a linear combination, found end of input"))?;
        let line = start.line;
        let mut v = Vector::zeros(dim);
        let mut first = true;
        loop {
            let mut sign = Scalar::from_integer(1.into());
            match self.peek_on_line(line) {
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(Tok::Plus) if !first => self.pos += 1,
                _ if !first => break,
                _ => {}
            }
            let coef = match self.peek_on_line(line) {
                Some(Tok::Num(s)) => {
                    let s = s.clone();
                    let t = self.next("a coefficient")?;
                    Some(parse_scalar(&s).ok_or_else(|| error(t.line, t.col, format!("bad coefficient `{s}`")))?)
                }
                _ => None,
            };
            if Parser::is_basis_like(self.peek_on_line(line)) {
                let i = self.basis(symbol, dim)?;
                let c = coef.unwrap_or_else(|| Scalar::from_integer(1.into()));
                let cur = v[i].clone();
                v.set(i, cur + sign * c);
            } else if !matches!(&coef, Some(c) if *c == Scalar::from_integer(0.into())) {
                let (l, c) = self.peek().filter(|t| t.line == line).map_or((line, 0), |t| (t.line, t.col));
                let found = self.peek_on_line(line).map_or("end of line".to_string(), Tok::describe);
                let col = if c == 0 { start.col } else { c };
                return Err(error(l, col, format!("expected a basis symbol `{symbol}k`, found {found}")));
            }
            first = false;
        }
        Ok(v)
    }

    /// `{ entry* }`, calling `entry` until the closing brace.
    fn block(&mut self, mut entry: impl FnMut(&mut Parser) -> PResult<()>) -> PResult<()> {
        self.expect(Tok::LBrace)?;
        loop {
            match self.peek() {
                Some(Token { tok: Tok::RBrace, .. }) => {
                    self.pos += 1;
                    return Ok(());
                }
                Some(_) => entry(self)?,
                None => return Err(error(self.end.0, self.end.1, "expected `}`, found end of input")),
            }
        }
    }

    /// `ei -> <lincomb>` entries filling the columns of a `rows x cols` matrix.
    fn map_block(&mut self, src: Space, dst: Space) -> PResult<Matrix> {
        let mut m = Matrix::zeros(dst.dim, src.dim);
        let mut seen = BTreeSet::new();
        self.block(|p| {
            let t = p.peek().cloned().expect("inside block");
            let j = p.basis(src.symbol, src.dim)?;
            if !seen.insert(j) {
                return Err(error(t.line, t.col, format!("duplicate entry for `{}{}`", src.symbol, j + 1)));
            }
            p.expect(Tok::Arrow)?;
            let v = p.lincomb(dst.symbol, dst.dim)?;
            for i in 0..dst.dim {
                m.set(i, j, v[i].clone());
            }
            Ok(())
        })?;
        Ok(m)
    }

    fn algebra(&mut self) -> PResult<(String, Token, Item)> {
        let (name, name_tok) = self.ident("an algebra name")?;
        self.expect(Tok::LBrace)?;
        self.keyword("dim")?;
        let dim = self.count()?;
        self.keyword("kind")?;
        let (k, kt) = self.ident("a kind")?;
        let kind = Kind::from_keyword(&k)
            .ok_or_else(|| error(kt.line, kt.col, format!("unknown kind `{k}` (expected assoc, leibniz or poisson)")))?;
        let e = Space { dim, symbol: 'e' };
        let mut dot = None;
        let mut bracket = None;
        let mut alpha = None;
        loop {
            let t = self.next("a section or `}`")?;
            let section = match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(s) => s.clone(),
                other => return Err(error(t.line, t.col, format!("expected a section, found {}", other.describe()))),
            };
            let dup = |present: bool| {
                if present {
                    Err(error(t.line, t.col, format!("duplicate `{section}` section")))
                } else {
                    Ok(())
                }
            };
            match section.as_str() {
                "dot" | "bracket" => {
                    let is_dot = section == "dot";
                    if (is_dot && !kind.has_dot()) || (!is_dot && !kind.has_bracket()) {
                        return Err(error(t.line, t.col, format!("a {} algebra has no `{section}`", kind.keyword())));
                    }
                    dup(if is_dot { dot.is_some() } else { bracket.is_some() })?;
                    let table = self.product_block(dim, is_dot)?;
                    if is_dot {
                        dot = Some(table);
                    } else {
                        bracket = Some(table);
                    }
                }
                "alpha" => {
                    dup(alpha.is_some())?;
                    alpha = Some(self.map_block(e, e)?);
                }
                other => return Err(error(t.line, t.col, format!("unknown section `{other}`"))),
            }
        }
        let dot = kind.has_dot().then(|| dot.unwrap_or_else(|| StructureTensor::zero(dim)));
        let bracket = kind.has_bracket().then(|| bracket.unwrap_or_else(|| StructureTensor::zero(dim)));
        let alpha = alpha.unwrap_or_else(|| Matrix::zeros(dim, dim));
        let alg = HomAlgebra::new(kind, dot, bracket, alpha).map_err(|err| at(&name_tok, err))?;
        Ok((name, name_tok, Item::Algebra(alg)))
    }

    fn product_block(&mut self, dim: usize, is_dot: bool) -> PResult<StructureTensor> {
        let mut table = StructureTensor::zero(dim);
        let mut seen = BTreeSet::new();
        self.block(|p| {
            let t = p.peek().cloned().expect("inside block");
            let (i, j) = if is_dot {
                let i = p.basis('e', dim)?;
                p.expect(Tok::Star)?;
                (i, p.basis('e', dim)?)
            } else {
                p.expect(Tok::LBrack)?;
                let i = p.basis('e', dim)?;
                p.expect(Tok::Comma)?;
                let j = p.basis('e', dim)?;
                p.expect(Tok::RBrack)?;
                (i, j)
            };
            if !seen.insert((i, j)) {
                return Err(error(t.line, t.col, format!("duplicate entry for e{}, e{}", i + 1, j + 1)));
            }
            p.expect(Tok::Eq)?;
            let v = p.lincomb('e', dim)?;
            for k in 0..dim {
                table.set(i, j, k, v[k].clone());
            }
            Ok(())
        })?;
        Ok(table)
    }

    fn map(&mut self, doc: &Document) -> PResult<(String, Token, Item)> {
        let (name, name_tok) = self.ident("a map name")?;
        self.expect(Tok::Colon)?;
        let (src, st) = self.ident("a source name")?;
        let src_space = doc.space(&src).map_err(|e| at(&st, e))?;
        self.expect(Tok::Arrow)?;
        let (dst, dt) = self.ident("a target name")?;
        let dst_space = doc.space(&dst).map_err(|e| at(&dt, e))?;
        let matrix = self.map_block(src_space, dst_space)?;
        Ok((name, name_tok, Item::Map { src, dst, matrix }))
    }

    fn representation(&mut self, doc: &Document) -> PResult<(String, Token, Item)> {
        let (name, name_tok) = self.ident("a representation name")?;
        self.keyword("on")?;
        let (base, bt) = self.ident("an algebra name")?;
        let alg = doc.algebra(&base).map_err(|e| at(&bt, e))?.clone();
        self.expect(Tok::LBrace)?;
        self.keyword("dim")?;
        let m = self.count()?;
        let f = Space { dim: m, symbol: 'f' };
        let mut phi = None;
        let mut actions: [Option<ActionTensor>; 4] = Default::default();
        let mut seen = BTreeSet::new();
        loop {
            let t = self.next("a section or `}`")?;
            let section = match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(s) => s.clone(),
                other => return Err(error(t.line, t.col, format!("expected a section, found {}", other.describe()))),
            };
            if section == "phi" {
                if phi.is_some() {
                    return Err(error(t.line, t.col, "duplicate `phi` section"));
                }
                phi = Some(self.map_block(f, f)?);
                continue;
            }
            let a = Action::from_name(&section)
                .ok_or_else(|| error(t.line, t.col, format!("unknown section `{section}`")))?;
            if !(match a.op() {
                crate::homcore::Op::Dot => alg.kind().has_dot(),
                crate::homcore::Op::Bracket => alg.kind().has_bracket(),
            }) {
                return Err(error(
                    t.line,
                    t.col,
                    format!("a representation of a {} algebra has no `{section}`", alg.kind().keyword()),
                ));
            }
            let i = self.basis('e', alg.dim())?;
            if !seen.insert((section.clone(), i)) {
                return Err(error(t.line, t.col, format!("duplicate `{section} e{}` section", i + 1)));
            }
            let mat = self.map_block(f, f)?;
            let slot = actions[a as usize].get_or_insert_with(|| ActionTensor::zero(alg.dim(), m));
            for r in 0..m {
                for c in 0..m {
                    slot.set_entry(i, r, c, mat.get(r, c).clone());
                }
            }
        }
        let mut rep = Representation::zero(alg.kind(), alg.dim(), phi.unwrap_or_else(|| Matrix::zeros(m, m)))
            .map_err(|e| at(&name_tok, e))?;
        for a in Action::ALL {
            if let Some(t) = actions[a as usize].take() {
                rep = rep.with_action(a, t).map_err(|e| at(&name_tok, e))?;
            }
        }
        Ok((name, name_tok, Item::Representation { base, rep }))
    }
}

fn at(t: &Token, err: Error) -> ParseError {
    match err {
        Error::Parse(p) => p,
        Error::UnknownName(n) => error(t.line, t.col, format!("unknown name `{n}`")),
        other => error(t.line, t.col, other.to_string()),
    }
}

/// Parses a document. References must point to earlier definitions.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let toks = lex(text)?;
    let end = match text.lines().enumerate().last() {
        Some((i, _)) if text.ends_with('\n') => (i + 2, 1),
        Some((i, l)) => (i + 1, l.chars().count() + 1),
        None => (1, 1),
    };
    let mut p = Parser { toks, pos: 0, end };
    let mut doc = Document::new();
    while p.peek().is_some() {
        let (kw, kt) = p.ident("`algebra`, `map` or `representation`")?;
        let (name, name_tok, item) = match kw.as_str() {
            "algebra" => p.algebra()?,
            "map" => p.map(&doc)?,
            "representation" => p.representation(&doc)?,
            other => {
                return Err(error(
                    kt.line,
                    kt.col,
                    format!("expected `algebra`, `map` or `representation`, found `{other}`"),
                ))
            }
        };
        doc.push(name, item).map_err(|e| at(&name_tok, e))?;
    }
    Ok(doc)
}
