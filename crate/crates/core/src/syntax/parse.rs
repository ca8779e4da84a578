use std::fmt;

use super::{CalculusLevel, Context, Formula, Judgment, Pattern, Sequent, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Star,
    Backslash,
    Slash,
    Bang,
    Comma,
    Colon,
    Dot,
    Dash,
    Turnstile,
    /// `\l`
    LamL,
    /// `\r`
    LamR,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Star => "`*`",
            Tok::Backslash => "`\\`",
            Tok::Slash => "`/`",
            Tok::Bang => "`!`",
            Tok::Comma => "`,`",
            Tok::Colon => "`:`",
            Tok::Dot => "`.`",
            Tok::Dash => "`-`",
            Tok::Turnstile => "`|-`",
            Tok::LamL => "`\\l`",
            Tok::LamR => "`\\r`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '$'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |i: usize| bytes.get(i).map(|&(_, c)| c);
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '!' => Some(Tok::Bang),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '-' => Some(Tok::Dash),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            continue;
        }
        if c == '|' {
            if at(i + 1) == Some('-') {
                out.push((Tok::Turnstile, pos));
                i += 2;
                continue;
            }
            return Err(ParseError {
                pos,
                message: "expected `|-`".into(),
            });
        }
        if c == '\\' {
            let next = at(i + 1);
            let after = at(i + 2);
            let lone = after.is_none_or(|c| !is_ident_char(c));
            match next {
                Some('l') if lone => {
                    out.push((Tok::LamL, pos));
                    i += 2;
                }
                Some('r') if lone => {
                    out.push((Tok::LamR, pos));
                    i += 2;
                }
                _ => {
                    out.push((Tok::Backslash, pos));
                    i += 1;
                }
            }
            continue;
        }
        if is_ident_start(c) {
            let mut j = i;
            while j < bytes.len() && is_ident_char(bytes[j].1) {
                j += 1;
            }
            let end = bytes.get(j).map_or(text.len(), |&(p, _)| p);
            let mut word = text[pos..end].to_string();
            if (word == "promote" || word == "derelict") && at(j) == Some('!') {
                word.push('!');
                j += 1;
            }
            out.push((Tok::Ident(word), pos));
            i = j;
            continue;
        }
        return Err(ParseError {
            pos,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "let", "be", "in", "copy", "as", "discard", "for", "with", "appl", "appr", "unit", "exchl",
    "exchr", "promotek", "derelictk", "promote!", "derelict!",
];

fn is_lower_ident(s: &str) -> bool {
    s.chars()
        .next()
        .is_some_and(|c| c.is_ascii_lowercase() || c == '_')
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{kw}`, found {}", self.peek()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err(format!("unexpected {} after end of expression", self.peek()))
        }
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.tensor_formula()?;
        match self.peek() {
            Tok::Backslash | Tok::LamL | Tok::LamR => {
                let rhs = self.rimp_tail()?;
                Ok(Formula::rimp(lhs, rhs))
            }
            Tok::Slash => {
                let mut acc = lhs;
                while *self.peek() == Tok::Slash {
                    self.bump();
                    let rhs = self.tensor_formula()?;
                    acc = Formula::limp(acc, rhs);
                }
                if matches!(self.peek(), Tok::Backslash | Tok::LamL | Tok::LamR) {
                    return self.err("`\\` and `/` mixed without parentheses");
                }
                Ok(acc)
            }
            _ => Ok(lhs),
        }
    }

    /// Consumes a `\` (possibly lexed as `\l`/`\r` glued to an atom) and the
    /// right-associated remainder.
    fn rimp_tail(&mut self) -> Result<Formula, ParseError> {
        let operand = match self.bump() {
            Tok::Backslash => self.tensor_formula()?,
            Tok::LamL => self.tensor_continue(Formula::atom("l"))?,
            Tok::LamR => self.tensor_continue(Formula::atom("r"))?,
            _ => unreachable!(),
        };
        match self.peek() {
            Tok::Backslash | Tok::LamL | Tok::LamR => {
                let rest = self.rimp_tail()?;
                Ok(Formula::rimp(operand, rest))
            }
            Tok::Slash => self.err("`\\` and `/` mixed without parentheses"),
            _ => Ok(operand),
        }
    }

    fn tensor_formula(&mut self) -> Result<Formula, ParseError> {
        let first = self.prefix_formula()?;
        self.tensor_continue(first)
    }

    fn tensor_continue(&mut self, mut acc: Formula) -> Result<Formula, ParseError> {
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.prefix_formula()?;
            acc = Formula::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn prefix_formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::bang(self.prefix_formula()?))
            }
            Tok::Ident(s) if s == "k" => {
                self.bump();
                Ok(Formula::kappa(self.prefix_formula()?))
            }
            Tok::Ident(s) if s == "I" => {
                self.bump();
                Ok(Formula::Unit)
            }
            Tok::Ident(s) if is_lower_ident(&s) => {
                self.bump();
                Ok(Formula::Atom(s))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            t => self.err(format!("expected a formula, found {t}")),
        }
    }

    // ---- terms ----

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if is_lower_ident(&s) && !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected a variable, found {t}")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::LamL | Tok::LamR => {
                let left = *self.peek() == Tok::LamL;
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let ann = self.formula()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(if left {
                    Term::LamL(x, ann, Box::new(body))
                } else {
                    Term::LamR(x, ann, Box::new(body))
                })
            }
            Tok::Ident(kw) => match kw.as_str() {
                "let" => {
                    self.bump();
                    let s = self.term()?;
                    self.expect_kw("be")?;
                    let p = self.pattern()?;
                    self.expect_kw("in")?;
                    let body = self.term()?;
                    Ok(Term::Let(Box::new(s), p, Box::new(body)))
                }
                "copy" => {
                    self.bump();
                    let s = self.term()?;
                    self.expect_kw("as")?;
                    let x = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect_kw("in")?;
                    let body = self.term()?;
                    Ok(Term::Copy(Box::new(s), x, y, Box::new(body)))
                }
                "discard" => {
                    self.bump();
                    let s = self.term()?;
                    self.expect_kw("in")?;
                    let body = self.term()?;
                    Ok(Term::Discard(Box::new(s), Box::new(body)))
                }
                "promote!" | "promotek" => {
                    let bang = kw == "promote!";
                    let start = self.pos();
                    self.bump();
                    let mut srcs = Vec::new();
                    if !self.is_kw("for") {
                        srcs.push(self.term()?);
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            srcs.push(self.term()?);
                        }
                    }
                    self.expect_kw("for")?;
                    let mut vars = Vec::new();
                    if !self.is_kw("in") {
                        vars.push(self.ident()?);
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            vars.push(self.ident()?);
                        }
                    }
                    if srcs.len() != vars.len() {
                        return Err(ParseError {
                            pos: start,
                            message: format!(
                                "promote arity mismatch: {} sources, {} variables",
                                srcs.len(),
                                vars.len()
                            ),
                        });
                    }
                    self.expect_kw("in")?;
                    let body = Box::new(self.term()?);
                    Ok(if bang {
                        Term::PromoteBang(srcs, vars, body)
                    } else {
                        Term::PromoteKappa(srcs, vars, body)
                    })
                }
                "exchl" | "exchr" => {
                    let left = kw == "exchl";
                    self.bump();
                    let t1 = self.term()?;
                    self.expect(Tok::Comma)?;
                    let t2 = self.term()?;
                    self.expect_kw("with")?;
                    let x = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect_kw("in")?;
                    let body = self.term()?;
                    let (t1, t2, body) = (Box::new(t1), Box::new(t2), Box::new(body));
                    Ok(if left {
                        Term::ExchL(t1, t2, x, y, body)
                    } else {
                        Term::ExchR(t1, t2, x, y, body)
                    })
                }
                _ => self.tensor_term(),
            },
            _ => self.tensor_term(),
        }
    }

    fn tensor_term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.app_term()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.app_term()?;
            acc = Term::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn app_term(&mut self) -> Result<Term, ParseError> {
        if let Tok::Ident(kw) = self.peek().clone() {
            match kw.as_str() {
                "appl" | "appr" => {
                    self.bump();
                    let f = self.atom_term()?;
                    let a = self.atom_term()?;
                    return Ok(if kw == "appl" {
                        Term::app_l(f, a)
                    } else {
                        Term::app_r(f, a)
                    });
                }
                "derelict!" => {
                    self.bump();
                    return Ok(Term::derelict_bang(self.atom_term()?));
                }
                "derelictk" => {
                    self.bump();
                    return Ok(Term::derelict_kappa(self.atom_term()?));
                }
                _ => {}
            }
        }
        self.atom_term()
    }

    fn atom_term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if s == "unit" => {
                self.bump();
                Ok(Term::Unit)
            }
            Tok::Ident(_) => Ok(Term::Var(self.ident()?)),
            t => self.err(format!("expected a term, found {t}")),
        }
    }

    fn pattern(&mut self) -> Result<Pattern, ParseError> {
        let mut acc = self.atom_pattern()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.atom_pattern()?;
            acc = Pattern::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn atom_pattern(&mut self) -> Result<Pattern, ParseError> {
        match self.peek().clone() {
            Tok::Dash => {
                self.bump();
                Ok(Pattern::Wildcard)
            }
            Tok::LParen => {
                self.bump();
                let p = self.pattern()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Ident(s) if s == "unit" => {
                self.bump();
                Ok(Pattern::Unit)
            }
            Tok::Ident(_) => Ok(Pattern::Var(self.ident()?)),
            t => self.err(format!("expected a pattern, found {t}")),
        }
    }

    // ---- contexts and sequents ----

    fn formula_list(&mut self) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Turnstile {
            return Ok(out);
        }
        out.push(self.formula()?);
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn typed_context(&mut self) -> Result<Context, ParseError> {
        let mut out: Context = Vec::new();
        if matches!(self.peek(), Tok::Turnstile | Tok::Eof) {
            return Ok(out);
        }
        loop {
            let pos = self.pos();
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let a = self.formula()?;
            if out.iter().any(|(y, _)| *y == x) {
                return Err(ParseError {
                    pos,
                    message: format!("variable `{x}` declared twice"),
                });
            }
            out.push((x, a));
            if *self.peek() != Tok::Comma {
                break;
            }
            self.bump();
        }
        Ok(out)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.pattern()?;
    p.finish()?;
    Ok(t)
}

/// `A1, …, An |- B`
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let ante = p.formula_list()?;
    p.expect(Tok::Turnstile)?;
    let succ = p.formula()?;
    p.finish()?;
    Ok(Sequent::new(ante, succ))
}

/// `x1:A1, …, xn:An` (possibly empty).
pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    let mut p = Parser::new(text)?;
    let ctx = p.typed_context()?;
    p.finish()?;
    Ok(ctx)
}

/// `x1:A1, …, xn:An |- t`
pub fn parse_judgment(text: &str) -> Result<Judgment, ParseError> {
    let mut p = Parser::new(text)?;
    let context = p.typed_context()?;
    p.expect(Tok::Turnstile)?;
    let term = p.term()?;
    p.finish()?;
    Ok(Judgment { context, term })
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

impl std::str::FromStr for CalculusLevel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CalculusLevel::from_name(s).ok_or_else(|| format!("unknown level `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn formula_precedence() {
        assert_eq!(parse_formula("a").unwrap(), a("a"));
        assert_eq!(
            parse_formula("!a * b").unwrap(),
            Formula::tensor(Formula::bang(a("a")), a("b"))
        );
        assert_eq!(
            parse_formula("a \\ b \\ c").unwrap(),
            Formula::rimp(a("a"), Formula::rimp(a("b"), a("c")))
        );
        assert_eq!(
            parse_formula("a / b / c").unwrap(),
            Formula::limp(Formula::limp(a("a"), a("b")), a("c"))
        );
        assert_eq!(
            parse_formula("a * b * c").unwrap(),
            Formula::tensor(Formula::tensor(a("a"), a("b")), a("c"))
        );
        assert_eq!(
            parse_formula("k k a * I").unwrap(),
            Formula::tensor(Formula::kappa(Formula::kappa(a("a"))), Formula::Unit)
        );
    }

    #[test]
    fn backslash_glued_to_atom() {
        assert_eq!(parse_formula("a \\l").unwrap(), Formula::rimp(a("a"), a("l")));
        assert_eq!(
            parse_formula("a\\r\\b").unwrap(),
            Formula::rimp(a("a"), Formula::rimp(a("r"), a("b")))
        );
        assert_eq!(parse_formula("a \\lb").unwrap(), Formula::rimp(a("a"), a("lb")));
    }

    #[test]
    fn mixing_implications_is_rejected() {
        assert!(parse_formula("a \\ b / c").is_err());
        assert!(parse_formula("a / b \\ c").is_err());
        assert!(parse_formula("(a \\ b) / c").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("a * ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_formula("a # b").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn term_examples() {
        assert_eq!(
            parse_term("appl (\\l x:a. x) y").unwrap(),
            Term::app_l(Term::lam_l("x", a("a"), Term::var("x")), Term::var("y"))
        );
        assert_eq!(
            parse_term("let u be x * y in x * y").unwrap(),
            Term::let_(
                Term::var("u"),
                Pattern::tensor(Pattern::Var("x".into()), Pattern::Var("y".into())),
                Term::tensor(Term::var("x"), Term::var("y"))
            )
        );
        assert_eq!(
            parse_term("derelictk (promotek t for x in x)").unwrap(),
            Term::derelict_kappa(Term::promote_kappa(vec![Term::var("t")], &["x"], Term::var("x")))
        );
    }

    #[test]
    fn promote_arity_mismatch() {
        let e = parse_term("promote! a, b for x in x").unwrap_err();
        assert!(e.message.contains("arity"));
        assert!(parse_term("promote! for in unit").is_ok());
    }

    #[test]
    fn sequents_and_judgments() {
        let s = parse_sequent("k a, b |- b * k a").unwrap();
        assert_eq!(s.antecedent.len(), 2);
        let s = parse_sequent("|- a \\ a").unwrap();
        assert!(s.antecedent.is_empty());
        let j = parse_judgment("x:k a, y:b |- exchl x,y with u,v in u * v").unwrap();
        assert_eq!(j.context.len(), 2);
        assert!(parse_context("x:a, x:b").is_err());
        assert_eq!(parse_context("").unwrap(), vec![]);
    }
}
