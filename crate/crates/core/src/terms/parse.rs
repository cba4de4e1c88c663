//! Concrete term syntax: identifiers `[A-Za-z0-9_]+`, applications
//! `f(t1,...,tn)`, constants without parentheses. Dumps additionally use `#`
//! for the bullet and `f@` for circled symbols; those forms are accepted only
//! by [`parse_term_debug`].

use crate::error::{Error, Result};

use super::{Decoration, Signature, Term};

/// Identifiers with this prefix are reserved for generated names.
pub(crate) const RESERVED_PREFIX: char = '_';

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Arrow,
    Hash,
    At,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            ';' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '#' => Tok::Hash,
            '@' => Tok::At,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {}
                    _ => {
                        return Err(Error::Syntax {
                            offset,
                            message: "expected `->`".into(),
                        })
                    }
                }
                Tok::Arrow
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Ident(ident),
                    offset,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    offset,
                    message: format!("unexpected character `{}`", other),
                })
            }
        };
        chars.next();
        out.push(Token { tok, offset });
    }
    Ok(out)
}

/// An unresolved parse tree: names are not yet classified as variables or
/// symbols.
#[derive(Clone, Debug)]
pub(crate) struct Ast {
    pub name: String,
    pub decoration: Decoration,
    /// `None` when written without parentheses.
    pub args: Option<Vec<Ast>>,
    pub offset: usize,
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    allow_decorations: bool,
}

impl Parser {
    pub fn new(text: &str, allow_decorations: bool) -> Result<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            end: text.len(),
            allow_decorations,
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    pub fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|t| t.offset)
            .unwrap_or(self.end)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    pub fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}", what))
        }
    }

    pub fn ast(&mut self) -> Result<Ast> {
        let offset = self.offset();
        let (name, mut decoration) = match self.bump() {
            Some(Tok::Ident(name)) => (name, Decoration::Plain),
            Some(Tok::Hash) if self.allow_decorations => ("#".to_string(), Decoration::Bullet),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.error("expected a term");
            }
        };
        if self.allow_decorations && decoration == Decoration::Plain && self.peek() == Some(&Tok::At)
        {
            self.bump();
            decoration = Decoration::Circled;
        }
        let args = if self.peek() == Some(&Tok::LParen) {
            self.bump();
            let mut args = Vec::new();
            if self.peek() == Some(&Tok::RParen) {
                self.bump();
            } else {
                loop {
                    args.push(self.ast()?);
                    match self.bump() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => break,
                        _ => {
                            self.pos = self.pos.saturating_sub(1);
                            return self.error("expected `,` or `)`");
                        }
                    }
                }
            }
            Some(args)
        } else {
            None
        };
        Ok(Ast {
            name,
            decoration,
            args,
            offset,
        })
    }
}

pub(crate) fn resolve(
    ast: &Ast,
    vars: &[&str],
    sig: &Signature,
    check_reserved: bool,
) -> Result<Term> {
    if check_reserved && ast.name.starts_with(RESERVED_PREFIX) {
        return Err(Error::ReservedIdentifier(ast.name.clone()));
    }
    if ast.decoration == Decoration::Plain && vars.contains(&ast.name.as_str()) {
        if ast.args.is_some() {
            return Err(Error::Syntax {
                offset: ast.offset,
                message: format!("variable `{}` applied to arguments", ast.name),
            });
        }
        return Ok(Term::var(&ast.name));
    }
    let sym = sig
        .lookup(&ast.name, ast.decoration)
        .ok_or_else(|| Error::UnknownSymbol(ast.name.clone()))?;
    let args = ast.args.as_deref().unwrap_or(&[]);
    if args.len() != sym.arity() {
        return Err(Error::Arity {
            symbol: sym.to_string(),
            expected: sym.arity(),
            found: args.len(),
        });
    }
    let args = args
        .iter()
        .map(|a| resolve(a, vars, sig, check_reserved))
        .collect::<Result<Vec<_>>>()?;
    Ok(Term::app(sym.clone(), args))
}

fn parse_with(text: &str, vars: &[&str], sig: &Signature, debug: bool) -> Result<Term> {
    let mut p = Parser::new(text, debug)?;
    let ast = p.ast()?;
    if !p.at_end() {
        return p.error("trailing input after term");
    }
    resolve(&ast, vars, sig, !debug)
}

/// Parses a term in user syntax. Identifiers listed in `declared_vars` are
/// variables; every other identifier must be a symbol of `sig` used with its
/// arity.
pub fn parse_term<S: AsRef<str>>(text: &str, declared_vars: &[S], sig: &Signature) -> Result<Term> {
    let vars: Vec<&str> = declared_vars.iter().map(AsRef::as_ref).collect();
    parse_with(text, &vars, sig, false)
}

/// Like [`parse_term`], but also accepts `#` and `f@` and reserved names, as
/// printed in automaton dumps and witnesses over extended signatures.
pub fn parse_term_debug<S: AsRef<str>>(
    text: &str,
    declared_vars: &[S],
    sig: &Signature,
) -> Result<Term> {
    let vars: Vec<&str> = declared_vars.iter().map(AsRef::as_ref).collect();
    parse_with(text, &vars, sig, true)
}
