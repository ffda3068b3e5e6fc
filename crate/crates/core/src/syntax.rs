//! Tokenizer and recursive-descent parser for ground type expressions such
//! as `C<? <: D<N>>` or `C<E<?> - C<?>>`. The delimiters come from a
//! [`NamingConfig`], so the same parser reads whatever spelling the renderer
//! produces. Whitespace between tokens is insignificant.

use crate::error::{Error, Result};
use crate::graph::Label;
use crate::intervals::{render_interval, Interval, NamingConfig};

const SUBTYPE_OPERATOR: &str = "<:";

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Punct(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    offset: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn pieces(delim: &str) -> Vec<String> {
    delim.split_whitespace().map(str::to_owned).collect()
}

struct Delims {
    wildcard: Vec<String>,
    lower: Vec<String>,
    upper: Vec<String>,
    separator: Vec<String>,
    open: Vec<String>,
    close: Vec<String>,
    subtype: Vec<String>,
}

impl Delims {
    fn new(cfg: &NamingConfig) -> Self {
        Delims {
            wildcard: pieces(&cfg.wildcard),
            lower: pieces(&cfg.lower_bounded_prefix),
            upper: pieces(&cfg.upper_bounded_suffix),
            separator: pieces(&cfg.interval_separator),
            open: pieces(&cfg.open_bracket),
            close: pieces(&cfg.close_bracket),
            subtype: pieces(SUBTYPE_OPERATOR),
        }
    }

    fn all_pieces(&self) -> Vec<&str> {
        let mut all: Vec<&str> = [
            &self.wildcard,
            &self.lower,
            &self.upper,
            &self.separator,
            &self.open,
            &self.close,
            &self.subtype,
        ]
        .into_iter()
        .flatten()
        .map(String::as_str)
        .collect();
        // Longest match first, so `<:` wins over `<`.
        all.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        all.dedup();
        all
    }
}

fn tokenize(text: &str, delims: &Delims) -> Result<Vec<Spanned>> {
    let puncts = delims.all_pieces();
    let mut out = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        let Some(first) = rest.chars().next() else {
            return Ok(out);
        };
        if is_ident_start(first) {
            let end = rest
                .char_indices()
                .find(|&(_, c)| !is_ident_continue(c))
                .map_or(rest.len(), |(i, _)| i);
            let word = &rest[..end];
            let token = if puncts.contains(&word) {
                Token::Punct(word.to_owned())
            } else {
                Token::Ident(word.to_owned())
            };
            out.push(Spanned { token, offset });
            offset += end;
            rest = &rest[end..];
        } else if let Some(p) = puncts.iter().find(|p| rest.starts_with(**p)) {
            out.push(Spanned {
                token: Token::Punct((*p).to_owned()),
                offset,
            });
            offset += p.len();
            rest = &rest[p.len()..];
        } else {
            return Err(Error::Parse {
                offset,
                message: format!("unexpected character {first:?}"),
            });
        }
    }
}

struct Parser<'a> {
    cfg: &'a NamingConfig,
    delims: Delims,
    tokens: Vec<Spanned>,
    pos: usize,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, cfg: &'a NamingConfig) -> Result<Self> {
        let delims = Delims::new(cfg);
        let tokens = tokenize(text, &delims)?;
        Ok(Parser {
            cfg,
            delims,
            tokens,
            pos: 0,
            text_len: text.len(),
        })
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.text_len, |t| t.offset)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek_is(&self, seq: &[String]) -> bool {
        seq.iter().enumerate().all(|(i, piece)| {
            matches!(self.tokens.get(self.pos + i), Some(Spanned { token: Token::Punct(p), .. }) if p == piece)
        })
    }

    fn eat(&mut self, seq: &[String]) -> bool {
        if self.peek_is(seq) {
            self.pos += seq.len();
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }

    fn type_expr(&mut self) -> Result<Label> {
        let name = match self.tokens.get(self.pos) {
            Some(Spanned {
                token: Token::Ident(name),
                ..
            }) => name.clone(),
            Some(_) => return self.error("expected a class name"),
            None => return self.error("expected a class name, found end of input"),
        };
        self.pos += 1;
        let head = match name.as_str() {
            "Object" => self.cfg.top.as_str().to_owned(),
            "Null" => self.cfg.bottom.as_str().to_owned(),
            _ => name,
        };
        if !self.eat(&self.delims.open.clone()) {
            return Label::new(head);
        }
        let arg = self.argument()?;
        if !self.eat(&self.delims.close.clone()) {
            return self.error(format!(
                "expected `{}` to close the type argument of `{head}`",
                self.cfg.close_bracket
            ));
        }
        Label::new(
            self.cfg
                .instantiate(&head, &render_interval(&arg, self.cfg)),
        )
    }

    fn argument(&mut self) -> Result<Interval> {
        let start = self.pos;
        if self.eat(&self.delims.lower.clone()) {
            if let Ok(hi) = self.type_expr() {
                return Ok(Interval::new(self.cfg.bottom.clone(), hi));
            }
            self.pos = start;
        }
        if self.eat(&self.delims.wildcard.clone()) {
            if self.at_end() || self.peek_is(&self.delims.close) {
                return Ok(Interval::new(self.cfg.bottom.clone(), self.cfg.top.clone()));
            }
            self.pos = start;
        }
        let lo = self.type_expr()?;
        if self.eat(&self.delims.upper.clone()) {
            return Ok(Interval::new(lo, self.cfg.top.clone()));
        }
        if self.eat(&self.delims.separator.clone()) {
            let hi = self.type_expr()?;
            return Ok(Interval::new(lo, hi));
        }
        Ok(Interval::new(lo.clone(), lo))
    }
}

pub(crate) fn parse_type(text: &str, cfg: &NamingConfig) -> Result<Label> {
    let mut p = Parser::new(text, cfg)?;
    let label = p.type_expr()?;
    p.expect_end()?;
    Ok(label)
}

pub(crate) fn parse_argument(text: &str, cfg: &NamingConfig) -> Result<Interval> {
    let mut p = Parser::new(text, cfg)?;
    let arg = p.argument()?;
    p.expect_end()?;
    Ok(arg)
}

pub(crate) fn parse_subtype_query(text: &str, cfg: &NamingConfig) -> Result<(Label, Label)> {
    let mut p = Parser::new(text, cfg)?;
    let sub = p.type_expr()?;
    if !p.eat(&p.delims.subtype.clone()) {
        return p.error(format!(
            "expected `{SUBTYPE_OPERATOR}` between the two types"
        ));
    }
    let sup = p.type_expr()?;
    p.expect_end()?;
    Ok((sub, sup))
}
