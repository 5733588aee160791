//! Recursive-descent parser for the surface syntax.
//!
//! ```text
//! formula := or ("->" formula)?
//! or      := and ("\/" and)*
//! and     := unary ("/\" unary)*
//! unary   := "~" unary | ("forall" | "exists") NAME "." formula | primary
//! primary := "false" | "(" formula ")" | NAME | NAME "(" term,* ")"
//! term    := NAME | NAME "(" term,* ")"
//! ```
//!
//! The Unicode forms `∀ ∃ → ∧ ∨ ¬ ⊥` are accepted as well. A quantifier body
//! extends as far to the right as possible.

use thiserror::Error;

use super::{Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    And,
    Or,
    Not,
    Forall,
    Exists,
    False,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::And => "`/\\`".into(),
        Tok::Or => "`\\/`".into(),
        Tok::Not => "`~`".into(),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::False => "`false`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos, message: &str| ParseError { pos, message: message.to_string() };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let two = |s: &str| chars[i..].iter().take(2).collect::<String>() == s;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' | '¬' => Tok::Not,
            '→' => Tok::Arrow,
            '∧' => Tok::And,
            '∨' => Tok::Or,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '⊥' => Tok::False,
            '-' if two("->") => {
                i += 1;
                Tok::Arrow
            }
            '/' if two("/\\") => {
                i += 1;
                Tok::And
            }
            '\\' if two("\\/") => {
                i += 1;
                Tok::Or
            }
            c if c.is_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_' || chars[i + 1] == '\'') {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                }
            }
            _ => return Err(err(start, &format!("unexpected character `{c}`"))),
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((chars.len(), Tok::Eof));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    sig: &'a Signature,
    /// Bound names, innermost last.
    bound: Vec<String>,
    free: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {}, found {}", describe(&want), describe(self.peek())))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            q @ (Tok::Forall | Tok::Exists) => {
                self.bump();
                let name = match self.bump() {
                    Tok::Ident(n) => n,
                    other => {
                        self.at -= 1;
                        return self.fail(format!("expected a variable name, found {}", describe(&other)));
                    }
                };
                self.expect(Tok::Dot)?;
                self.bound.push(name);
                let body = self.formula();
                self.bound.pop();
                let body = body?;
                Ok(if q == Tok::Forall { Formula::all(body) } else { Formula::ex(body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::False => Ok(Formula::Bot),
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => {
                let Some(r) = self.sig.relation(&name) else {
                    return Err(ParseError { pos, message: format!("unknown relation symbol `{name}`") });
                };
                let args = if *self.peek() == Tok::LParen { self.arguments()? } else { Vec::new() };
                let arity = self.sig.relations[r].arity;
                if args.len() != arity {
                    return Err(ParseError {
                        pos,
                        message: format!("arity mismatch: `{name}` expects {arity} argument(s), got {}", args.len()),
                    });
                }
                Ok(Formula::Atom(r, args))
            }
            other => {
                self.at -= 1;
                self.fail(format!("expected a formula, found {}", describe(&other)))
            }
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            args.push(self.term()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let name = match self.bump() {
            Tok::Ident(n) => n,
            other => {
                self.at -= 1;
                return self.fail(format!("expected a term, found {}", describe(&other)));
            }
        };
        if *self.peek() == Tok::LParen {
            let Some(f) = self.sig.function(&name) else {
                return Err(ParseError { pos, message: format!("unknown function symbol `{name}`") });
            };
            let args = self.arguments()?;
            let arity = self.sig.functions[f].arity;
            if args.len() != arity {
                return Err(ParseError {
                    pos,
                    message: format!("arity mismatch: `{name}` expects {arity} argument(s), got {}", args.len()),
                });
            }
            return Ok(Term::App(f, args));
        }
        if let Some(i) = self.bound.iter().rposition(|b| *b == name) {
            return Ok(Term::Var(self.bound.len() - 1 - i));
        }
        if let Some(j) = self.free.iter().position(|f| *f == name) {
            return Ok(Term::Var(self.bound.len() + j));
        }
        match self.sig.function(&name) {
            Some(f) if self.sig.functions[f].arity == 0 => Ok(Term::constant(f)),
            _ => Err(ParseError { pos, message: format!("unbound variable `{name}`") }),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => self.fail(format!("unexpected {} after end of expression", describe(t))),
        }
    }
}

/// Parses a closed formula.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_formula_open(text, sig, &[])
}

/// Parses a formula in which `free[j]` names the free index `j`.
pub fn parse_formula_open(text: &str, sig: &Signature, free: &[&str]) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, sig, bound: Vec::new(), free };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str, sig: &Signature, free: &[&str]) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, sig, bound: Vec::new(), free };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1), ("R", 2), ("Q", 0)])
    }

    #[test]
    fn binders_become_indices() {
        let s = sig();
        assert_eq!(parse_formula("forall x. P(x)", &s).unwrap(), Formula::all(Formula::atom(0, vec![Term::Var(0)])));
        assert_eq!(
            parse_formula("forall x. exists y. R(x,y)", &s).unwrap(),
            Formula::all(Formula::ex(Formula::atom(1, vec![Term::Var(1), Term::Var(0)])))
        );
        assert_eq!(
            parse_formula("∀x. ∃y. R(x,y) → ¬P(f(c))", &s).unwrap(),
            parse_formula("forall x. exists y. R(x,y) -> ~P(f(c()))", &s).unwrap()
        );
    }

    #[test]
    fn precedence() {
        let s = sig();
        let q = || Formula::atom(2, vec![]);
        assert_eq!(
            parse_formula("Q -> Q -> Q", &s).unwrap(),
            Formula::imp(q(), Formula::imp(q(), q()))
        );
        assert_eq!(
            parse_formula("Q \\/ Q /\\ ~Q", &s).unwrap(),
            Formula::or(q(), Formula::and(q(), Formula::not(q())))
        );
        assert_eq!(
            parse_formula("Q /\\ Q /\\ Q", &s).unwrap(),
            Formula::and(Formula::and(q(), q()), q())
        );
    }

    #[test]
    fn errors() {
        let s = sig();
        let e = parse_formula("P(x)", &s).unwrap_err();
        assert!(e.message.contains("unbound variable"), "{e}");
        assert_eq!(e.pos, 2);
        assert!(parse_formula("R(c)", &s).unwrap_err().message.contains("arity"));
        assert!(parse_formula("P(c) /\\", &s).is_err());
        assert!(parse_formula("P(c) $", &s).unwrap_err().message.contains("unexpected character"));
        assert!(parse_formula("S(c)", &s).unwrap_err().message.contains("unknown relation"));
    }

    #[test]
    fn free_names() {
        let s = sig();
        let f = parse_formula_open("forall x. R(x, v1)", &s, &["v0", "v1"]).unwrap();
        assert_eq!(f, Formula::all(Formula::atom(1, vec![Term::Var(0), Term::Var(2)])));
        assert_eq!(parse_term("f(v0)", &s, &["v0"]).unwrap(), Term::App(1, vec![Term::Var(0)]));
    }
}
