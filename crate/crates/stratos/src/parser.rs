//! Recursive-descent parser for the formula language.
//!
//! Grammar (EBNF, whitespace free between tokens):
//!
//! ```text
//! formula  = implies ;
//! implies  = or , [ "->" , implies ] ;              (* right associative *)
//! or       = and , { "|" , and } ;
//! and      = unary , { "&" , unary } ;
//! unary    = "!" , unary
//!          | "P" , unary
//!          | "F" , unary
//!          | "[]" , "(" , agent , [ "," , time ] , ")" , unary
//!          | "<>" , "(" , agent , [ "," , time ] , ")" , unary
//!          | primary ;
//! primary  = "(" , formula , ")"
//!          | "true" | "false"
//!          | atom , [ "@" , time ] ;
//! atom     = ident ;  agent = ident ;  time = integer ;
//! ident    = letter | "_" , { letter | digit | "_" | "-" } ;
//! ```
//!
//! `P`, `F`, `true`, and `false` are reserved words. Errors carry the
//! 1-based column of the offending token.

use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::world::Time;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    Comma,
    At,
    Amp,
    Pipe,
    Bang,
    Arrow,
    BoxOp,
    DiamondOp,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token plus its 1-based column. End-of-input is anchored to the
    /// last source column so truncated formulas point at what is incomplete.
    fn next(&mut self) -> Result<(Token, usize)> {
        self.skip_ws();
        let col = self.pos + 1;
        if self.pos >= self.src.len() {
            return Ok((Token::End, self.src.len().max(1)));
        }
        let rest = &self.src[self.pos..];
        let two = |a: u8, b: u8| rest.len() >= 2 && rest[0] == a && rest[1] == b;
        let tok = if two(b'-', b'>') {
            self.pos += 2;
            Token::Arrow
        } else if two(b'[', b']') {
            self.pos += 2;
            Token::BoxOp
        } else if two(b'<', b'>') {
            self.pos += 2;
            Token::DiamondOp
        } else {
            let c = rest[0];
            self.pos += 1;
            match c {
                b'(' => Token::LParen,
                b')' => Token::RParen,
                b',' => Token::Comma,
                b'@' => Token::At,
                b'&' => Token::Amp,
                b'|' => Token::Pipe,
                b'!' => Token::Bang,
                b'0'..=b'9' => {
                    let start = self.pos - 1;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let n: usize = text.parse().map_err(|_| Error::Parse {
                        column: col,
                        message: format!("integer `{text}` out of range"),
                    })?;
                    Token::Int(n)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos - 1;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_'
                            || self.src[self.pos] == b'-')
                    {
                        // `->` must not be swallowed by an identifier.
                        if self.src[self.pos] == b'-'
                            && self.src.get(self.pos + 1) == Some(&b'>')
                        {
                            break;
                        }
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    Token::Ident(text.to_string())
                }
                c => {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("unexpected character `{}`", c as char),
                    })
                }
            }
        };
        Ok((tok, col))
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    ix: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.ix].0
    }

    fn col(&self) -> usize {
        self.tokens[self.ix].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.ix].0.clone();
        if self.ix + 1 < self.tokens.len() {
            self.ix += 1;
        }
        t
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(Error::Parse {
                column: self.col(),
                message: format!("expected {what}"),
            })
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Token::Pipe {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn modal_index(&mut self) -> Result<(String, Option<Time>)> {
        self.expect(Token::LParen, "`(` after modal operator")?;
        let agent = match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                name
            }
            _ => {
                return Err(Error::Parse {
                    column: self.col(),
                    message: "expected agent name".into(),
                })
            }
        };
        let time = if *self.peek() == Token::Comma {
            self.bump();
            match self.peek().clone() {
                Token::Int(t) => {
                    self.bump();
                    Some(t)
                }
                _ => {
                    return Err(Error::Parse {
                        column: self.col(),
                        message: "expected time index".into(),
                    })
                }
            }
        } else {
            None
        };
        self.expect(Token::RParen, "`)`")?;
        Ok((agent, time))
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Token::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::Ident(name) if name == "P" => {
                self.bump();
                Ok(Formula::past(self.unary()?))
            }
            Token::Ident(name) if name == "F" => {
                self.bump();
                Ok(Formula::future(self.unary()?))
            }
            Token::BoxOp => {
                self.bump();
                let (agent, time) = self.modal_index()?;
                let body = self.unary()?;
                Ok(match time {
                    Some(t) => Formula::nec_at(&agent, t, body),
                    None => Formula::nec(&agent, body),
                })
            }
            Token::DiamondOp => {
                self.bump();
                let (agent, time) = self.modal_index()?;
                let body = self.unary()?;
                Ok(match time {
                    Some(t) => Formula::pos_at(&agent, t, body),
                    None => Formula::pos(&agent, body),
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        let col = self.col();
        match self.peek().clone() {
            Token::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(f)
            }
            Token::Ident(name) if name == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Token::Ident(name) if name == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Token::Ident(name) => {
                self.bump();
                if *self.peek() == Token::At {
                    self.bump();
                    match self.peek().clone() {
                        Token::Int(t) => {
                            self.bump();
                            Ok(Formula::atom_at(&name, t))
                        }
                        _ => Err(Error::Parse {
                            column: self.col(),
                            message: "expected time after `@`".into(),
                        }),
                    }
                } else {
                    Ok(Formula::Atom(name))
                }
            }
            _ => Err(Error::Parse {
                column: col,
                message: "expected a formula".into(),
            }),
        }
    }
}

/// Parses formula text into an AST, or a column-annotated syntax error.
pub fn parse(text: &str) -> Result<Formula> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        let (tok, col) = lexer.next()?;
        let end = tok == Token::End;
        tokens.push((tok, col));
        if end {
            break;
        }
    }
    let mut parser = Parser { tokens, ix: 0 };
    let f = parser.formula()?;
    if *parser.peek() != Token::End {
        return Err(Error::Parse {
            column: parser.col(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(f)
}
