//! Canonical S-expression encoding of formulas, terms and sequents.

use std::fmt;

use super::{Context, Formula, Pattern, Sequent, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SexpError(pub String);

impl fmt::Display for SexpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed s-expression: {}", self.0)
    }
}

impl std::error::Error for SexpError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, SexpError> {
    Err(SexpError(msg.into()))
}

impl Sexp {
    pub fn atom(s: &str) -> Sexp {
        Sexp::Atom(s.to_string())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items)
    }

    pub fn as_atom(&self) -> Result<&str, SexpError> {
        match self {
            Sexp::Atom(s) => Ok(s),
            Sexp::List(_) => bad(format!("expected atom, found {self}")),
        }
    }

    pub fn as_list(&self) -> Result<&[Sexp], SexpError> {
        match self {
            Sexp::List(v) => Ok(v),
            Sexp::Atom(_) => bad(format!("expected list, found {self}")),
        }
    }

    /// Splits `(head args...)`.
    pub fn head(&self) -> Result<(&str, &[Sexp]), SexpError> {
        let items = self.as_list()?;
        match items.split_first() {
            Some((h, rest)) => Ok((h.as_atom()?, rest)),
            None => bad("empty list"),
        }
    }

    /// Reads every top-level expression in `text`.
    pub fn parse_all(text: &str) -> Result<Vec<Sexp>, SexpError> {
        let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
        let mut chars = text.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            match c {
                ';' => {
                    for (_, c) in chars.by_ref() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                '(' => stack.push(Vec::new()),
                ')' => {
                    if stack.len() < 2 {
                        return bad(format!("unbalanced `)` at {i}"));
                    }
                    let done = stack.pop().unwrap();
                    stack.last_mut().unwrap().push(Sexp::List(done));
                }
                c if c.is_whitespace() => {}
                _ => {
                    let mut s = String::from(c);
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' {
                            break;
                        }
                        s.push(c);
                        chars.next();
                    }
                    stack.last_mut().unwrap().push(Sexp::Atom(s));
                }
            }
        }
        if stack.len() != 1 {
            return bad("unbalanced `(`");
        }
        Ok(stack.pop().unwrap())
    }

    pub fn parse(text: &str) -> Result<Sexp, SexpError> {
        let mut all = Sexp::parse_all(text)?;
        if all.len() != 1 {
            return bad(format!("expected one expression, found {}", all.len()));
        }
        Ok(all.pop().unwrap())
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s) => f.write_str(s),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{it}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn tag(name: &str, mut rest: Vec<Sexp>) -> Sexp {
    rest.insert(0, Sexp::atom(name));
    Sexp::List(rest)
}

fn arity(name: &str, args: &[Sexp], n: usize) -> Result<(), SexpError> {
    if args.len() == n {
        Ok(())
    } else {
        bad(format!("`{name}` takes {n} arguments, found {}", args.len()))
    }
}

pub fn formula_to_sexp(f: &Formula) -> Sexp {
    match f {
        Formula::Atom(a) => tag("atom", vec![Sexp::atom(a)]),
        Formula::Unit => tag("unit", vec![]),
        Formula::Tensor(a, b) => tag("tensor", vec![formula_to_sexp(a), formula_to_sexp(b)]),
        Formula::RImp(a, b) => tag("rimp", vec![formula_to_sexp(a), formula_to_sexp(b)]),
        Formula::LImp(a, b) => tag("limp", vec![formula_to_sexp(a), formula_to_sexp(b)]),
        Formula::Bang(a) => tag("bang", vec![formula_to_sexp(a)]),
        Formula::Kappa(a) => tag("kappa", vec![formula_to_sexp(a)]),
    }
}

pub fn formula_from_sexp(s: &Sexp) -> Result<Formula, SexpError> {
    let (h, args) = s.head()?;
    let bin = |args: &[Sexp]| -> Result<(Formula, Formula), SexpError> {
        arity(h, args, 2)?;
        Ok((formula_from_sexp(&args[0])?, formula_from_sexp(&args[1])?))
    };
    Ok(match h {
        "atom" => {
            arity(h, args, 1)?;
            Formula::Atom(args[0].as_atom()?.to_string())
        }
        "unit" => {
            arity(h, args, 0)?;
            Formula::Unit
        }
        "tensor" => {
            let (a, b) = bin(args)?;
            Formula::tensor(a, b)
        }
        "rimp" => {
            let (a, b) = bin(args)?;
            Formula::rimp(a, b)
        }
        "limp" => {
            let (a, b) = bin(args)?;
            Formula::limp(a, b)
        }
        "bang" => {
            arity(h, args, 1)?;
            Formula::bang(formula_from_sexp(&args[0])?)
        }
        "kappa" => {
            arity(h, args, 1)?;
            Formula::kappa(formula_from_sexp(&args[0])?)
        }
        other => return bad(format!("unknown formula tag `{other}`")),
    })
}

pub fn pattern_to_sexp(p: &Pattern) -> Sexp {
    match p {
        Pattern::Wildcard => tag("pwild", vec![]),
        Pattern::Var(x) => tag("pvar", vec![Sexp::atom(x)]),
        Pattern::Unit => tag("punit", vec![]),
        Pattern::Tensor(a, b) => tag("ptensor", vec![pattern_to_sexp(a), pattern_to_sexp(b)]),
    }
}

pub fn pattern_from_sexp(s: &Sexp) -> Result<Pattern, SexpError> {
    let (h, args) = s.head()?;
    Ok(match h {
        "pwild" => Pattern::Wildcard,
        "punit" => Pattern::Unit,
        "pvar" => {
            arity(h, args, 1)?;
            Pattern::Var(args[0].as_atom()?.to_string())
        }
        "ptensor" => {
            arity(h, args, 2)?;
            Pattern::tensor(pattern_from_sexp(&args[0])?, pattern_from_sexp(&args[1])?)
        }
        other => return bad(format!("unknown pattern tag `{other}`")),
    })
}

pub fn term_to_sexp(t: &Term) -> Sexp {
    let v = |x: &String| Sexp::atom(x);
    match t {
        Term::Var(x) => tag("var", vec![v(x)]),
        Term::Unit => tag("unit", vec![]),
        Term::Tensor(a, b) => tag("pair", vec![term_to_sexp(a), term_to_sexp(b)]),
        Term::LamL(x, a, b) => tag("laml", vec![v(x), formula_to_sexp(a), term_to_sexp(b)]),
        Term::LamR(x, a, b) => tag("lamr", vec![v(x), formula_to_sexp(a), term_to_sexp(b)]),
        Term::AppL(a, b) => tag("appl", vec![term_to_sexp(a), term_to_sexp(b)]),
        Term::AppR(a, b) => tag("appr", vec![term_to_sexp(a), term_to_sexp(b)]),
        Term::Let(s, p, b) => tag("let", vec![term_to_sexp(s), pattern_to_sexp(p), term_to_sexp(b)]),
        Term::Copy(s, x, y, b) => tag("copy", vec![term_to_sexp(s), v(x), v(y), term_to_sexp(b)]),
        Term::Discard(s, b) => tag("discard", vec![term_to_sexp(s), term_to_sexp(b)]),
        Term::PromoteBang(srcs, xs, b) | Term::PromoteKappa(srcs, xs, b) => tag(
            if matches!(t, Term::PromoteBang(..)) {
                "promote!"
            } else {
                "promotek"
            },
            vec![
                Sexp::List(srcs.iter().map(term_to_sexp).collect()),
                Sexp::List(xs.iter().map(v).collect()),
                term_to_sexp(b),
            ],
        ),
        Term::DerelictBang(a) => tag("derelict!", vec![term_to_sexp(a)]),
        Term::DerelictKappa(a) => tag("derelictk", vec![term_to_sexp(a)]),
        Term::ExchL(a, b, x, y, c) | Term::ExchR(a, b, x, y, c) => tag(
            if matches!(t, Term::ExchL(..)) { "exchl" } else { "exchr" },
            vec![term_to_sexp(a), term_to_sexp(b), v(x), v(y), term_to_sexp(c)],
        ),
    }
}

pub fn term_from_sexp(s: &Sexp) -> Result<Term, SexpError> {
    let (h, args) = s.head()?;
    let t = |i: usize| term_from_sexp(&args[i]);
    let x = |i: usize| args[i].as_atom().map(str::to_string);
    Ok(match h {
        "var" => {
            arity(h, args, 1)?;
            Term::Var(x(0)?)
        }
        "unit" => {
            arity(h, args, 0)?;
            Term::Unit
        }
        "pair" => {
            arity(h, args, 2)?;
            Term::tensor(t(0)?, t(1)?)
        }
        "laml" | "lamr" => {
            arity(h, args, 3)?;
            let ann = formula_from_sexp(&args[1])?;
            if h == "laml" {
                Term::LamL(x(0)?, ann, Box::new(t(2)?))
            } else {
                Term::LamR(x(0)?, ann, Box::new(t(2)?))
            }
        }
        "appl" => {
            arity(h, args, 2)?;
            Term::app_l(t(0)?, t(1)?)
        }
        "appr" => {
            arity(h, args, 2)?;
            Term::app_r(t(0)?, t(1)?)
        }
        "let" => {
            arity(h, args, 3)?;
            Term::let_(t(0)?, pattern_from_sexp(&args[1])?, t(2)?)
        }
        "copy" => {
            arity(h, args, 4)?;
            Term::Copy(Box::new(t(0)?), x(1)?, x(2)?, Box::new(t(3)?))
        }
        "discard" => {
            arity(h, args, 2)?;
            Term::discard(t(0)?, t(1)?)
        }
        "promote!" | "promotek" => {
            arity(h, args, 3)?;
            let srcs = args[0]
                .as_list()?
                .iter()
                .map(term_from_sexp)
                .collect::<Result<Vec<_>, _>>()?;
            let xs = args[1]
                .as_list()?
                .iter()
                .map(|s| s.as_atom().map(str::to_string))
                .collect::<Result<Vec<_>, _>>()?;
            if srcs.len() != xs.len() {
                return bad("promote arity mismatch");
            }
            let body = Box::new(t(2)?);
            if h == "promote!" {
                Term::PromoteBang(srcs, xs, body)
            } else {
                Term::PromoteKappa(srcs, xs, body)
            }
        }
        "derelict!" => {
            arity(h, args, 1)?;
            Term::derelict_bang(t(0)?)
        }
        "derelictk" => {
            arity(h, args, 1)?;
            Term::derelict_kappa(t(0)?)
        }
        "exchl" | "exchr" => {
            arity(h, args, 5)?;
            let (a, b, c) = (Box::new(t(0)?), Box::new(t(1)?), Box::new(t(4)?));
            if h == "exchl" {
                Term::ExchL(a, b, x(2)?, x(3)?, c)
            } else {
                Term::ExchR(a, b, x(2)?, x(3)?, c)
            }
        }
        other => return bad(format!("unknown term tag `{other}`")),
    })
}

pub fn sequent_to_sexp(s: &Sequent) -> Sexp {
    tag(
        "seq",
        vec![
            Sexp::List(s.antecedent.iter().map(formula_to_sexp).collect()),
            formula_to_sexp(&s.succedent),
        ],
    )
}

pub fn sequent_from_sexp(s: &Sexp) -> Result<Sequent, SexpError> {
    let (h, args) = s.head()?;
    if h != "seq" {
        return bad(format!("expected `seq`, found `{h}`"));
    }
    arity(h, args, 2)?;
    let ante = args[0]
        .as_list()?
        .iter()
        .map(formula_from_sexp)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sequent::new(ante, formula_from_sexp(&args[1])?))
}

/// `(judge :ctx ((x a) ...) :term <t> :type <A>)`
pub fn judgment_to_sexp(ctx: &Context, t: &Term, ty: &Formula) -> Sexp {
    let ctx = ctx
        .iter()
        .map(|(x, a)| Sexp::List(vec![Sexp::atom(x), formula_to_sexp(a)]))
        .collect();
    tag(
        "judge",
        vec![
            Sexp::atom(":ctx"),
            Sexp::List(ctx),
            Sexp::atom(":term"),
            term_to_sexp(t),
            Sexp::atom(":type"),
            formula_to_sexp(ty),
        ],
    )
}
