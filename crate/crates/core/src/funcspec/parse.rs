//! Recursive-descent parser for the function DSL.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Expr, FunctionSpec};
use crate::error::Error;

/// A syntax or validation error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
    text: String,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos: start, text: (c as char).to_string() });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let text = &input[start..i];
            out.push(Token { tok: Tok::Ident(text.to_string()), pos: start, text: text.into() });
        } else if c.is_ascii_digit() || c == b'.' || c == b'-' {
            if c == b'-' {
                i += 1;
            }
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &input[start..i];
            let value: f64 = text.parse().map_err(|_| ParseError {
                position: start,
                message: alloc::format!("malformed number '{text}'"),
            })?;
            out.push(Token { tok: Tok::Num(value), pos: start, text: text.into() });
        } else {
            let ch = input[start..].chars().next().unwrap_or('?');
            return Err(ParseError {
                position: start,
                message: alloc::format!("unexpected character '{ch}'"),
            });
        }
    }
    out.push(Token { tok: Tok::End, pos: input.len(), text: String::new() });
    Ok(out)
}

enum Value {
    Num(f64, usize),
    Expr(Expr, usize),
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek_next(&self) -> &Tok {
        let i = (self.at + 1).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, position: usize, message: impl Into<String>) -> ParseError {
        // Keep the offset inside the input, pointing at the last byte for
        // errors found at end of input.
        let position = position.min(self.input.len().saturating_sub(1));
        ParseError { position, message: message.into() }
    }

    fn describe(t: &Token) -> String {
        if t.tok == Tok::End {
            "end of input".into()
        } else {
            alloc::format!("'{}'", t.text)
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek().tok == want {
            Ok(self.bump())
        } else {
            let t = self.peek();
            Err(self.err(t.pos, alloc::format!("expected {what}, found {}", Self::describe(t))))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        while self.peek().tok == Tok::Plus {
            self.bump();
            let right = self.term()?;
            left = Expr::sum(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if let Tok::Num(c) = self.peek().tok {
            let pos = self.peek().pos;
            self.bump();
            self.expect(Tok::Star, "'*' after a scale factor")?;
            if !(c > 0.0 && c.is_finite()) {
                return Err(self.err(pos, alloc::format!("scale factor must be > 0, got {c}")));
            }
            let inner = self.atom()?;
            return Ok(Expr::scale(c, inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(ref name) => {
                self.expect(Tok::LParen, "'(' after a function name")?;
                let args = self.args()?;
                self.expect(Tok::RParen, "')' closing the argument list")?;
                self.builtin(name, t.pos, args)
            }
            _ => Err(self.err(
                t.pos,
                alloc::format!("expected a function or '(', found {}", Self::describe(&t)),
            )),
        }
    }

    fn args(&mut self) -> Result<Vec<Value>, ParseError> {
        let mut out = Vec::new();
        loop {
            out.push(self.value()?);
            if self.peek().tok == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        let pos = self.peek().pos;
        if let Tok::Num(v) = self.peek().tok {
            if *self.peek_next() != Tok::Star {
                self.bump();
                return Ok(Value::Num(v, pos));
            }
        }
        Ok(Value::Expr(self.expr()?, pos))
    }

    fn number(&self, name: &str, v: &Value) -> Result<f64, ParseError> {
        match *v {
            Value::Num(x, _) => Ok(x),
            Value::Expr(_, pos) => Err(self.err(pos, alloc::format!("{name} expects a number"))),
        }
    }

    fn order(&self, name: &str, v: &Value) -> Result<u32, ParseError> {
        let x = self.number(name, v)?;
        let pos = match *v {
            Value::Num(_, p) | Value::Expr(_, p) => p,
        };
        if x >= 0.0 && x <= u32::MAX as f64 && libm::trunc(x) == x {
            Ok(x as u32)
        } else {
            Err(self.err(pos, alloc::format!("{name} expects a nonnegative integer, got {x}")))
        }
    }

    fn arity(&self, name: &str, pos: usize, args: &[Value], n: usize) -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(self.err(
                pos,
                alloc::format!("{name} takes {n} argument(s), got {}", args.len()),
            ))
        }
    }

    fn builtin(&self, name: &str, pos: usize, args: Vec<Value>) -> Result<Expr, ParseError> {
        match name {
            "pow" => {
                self.arity(name, pos, &args, 1)?;
                let p = self.number(name, &args[0])?;
                if !(p >= 1.0 && p.is_finite()) {
                    let at = match args[0] {
                        Value::Num(_, at) | Value::Expr(_, at) => at,
                    };
                    return Err(self.err(at, alloc::format!("pow exponent must be >= 1, got {p}")));
                }
                Ok(Expr::Pow(p))
            }
            "exptrunc" | "geomtrunc" | "neglogtrunc" => {
                self.arity(name, pos, &args, 1)?;
                let k = self.order(name, &args[0])?;
                Ok(match name {
                    "exptrunc" => Expr::ExpTrunc(k),
                    "geomtrunc" => Expr::GeomTrunc(k),
                    _ => Expr::NegLogTrunc(k),
                })
            }
            "series" => {
                if args.len() < 2 {
                    return Err(self.err(pos, "series needs n0 and at least one coefficient"));
                }
                let start = self.order(name, &args[0])?;
                if start < 1 {
                    return Err(self.err(pos, "series must start at n0 >= 1"));
                }
                let mut coeffs = Vec::with_capacity(args.len() - 1);
                for a in &args[1..] {
                    let c = self.number(name, a)?;
                    if !(c >= 0.0 && c.is_finite()) {
                        let at = match *a {
                            Value::Num(_, p) | Value::Expr(_, p) => p,
                        };
                        return Err(self.err(
                            at,
                            alloc::format!("series coefficients must be nonnegative, got {c}"),
                        ));
                    }
                    coeffs.push(c);
                }
                Ok(Expr::Series { start, coeffs })
            }
            "compose" => {
                self.arity(name, pos, &args, 2)?;
                let mut it = args.into_iter();
                let outer = match it.next() {
                    Some(Value::Expr(e, _)) => e,
                    Some(Value::Num(_, p)) => {
                        return Err(self.err(p, "compose expects function arguments"))
                    }
                    None => unreachable!(),
                };
                let inner = match it.next() {
                    Some(Value::Expr(e, _)) => e,
                    Some(Value::Num(_, p)) => {
                        return Err(self.err(p, "compose expects function arguments"))
                    }
                    None => unreachable!(),
                };
                Ok(Expr::compose(outer, inner))
            }
            other => Err(self.err(pos, alloc::format!("unknown function '{other}'"))),
        }
    }
}

/// Parses the function DSL into a validated [`FunctionSpec`] labelled with
/// the input text.
pub fn parse(text: &str) -> Result<FunctionSpec, Error> {
    let tokens = lex(text)?;
    let mut p = Parser { input: text, tokens, at: 0 };
    if p.peek().tok == Tok::End {
        return Err(ParseError { position: 0, message: "empty function spec".into() }.into());
    }
    let expr = p.expr()?;
    if p.peek().tok != Tok::End {
        let t = p.peek();
        return Err(p.err(t.pos, alloc::format!("unexpected trailing {}", Parser::describe(t))).into());
    }
    let spec = FunctionSpec::new(expr).map_err(|e| match e {
        Error::InvalidArgument(message) => Error::Parse(ParseError { position: 0, message }),
        other => other,
    })?;
    Ok(spec.with_label(text.trim()))
}
