use std::fmt::{self, Write};

use super::{Formula, Judgment, Pattern, Sequent, Term};

// Precedence levels for formulas: 0 implication, 1 tensor, 2 prefix/atom.
fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::RImp(..) | Formula::LImp(..) => 0,
        Formula::Tensor(..) => 1,
        _ => 2,
    }
}

fn write_formula(out: &mut String, f: &Formula, paren: bool) {
    if paren {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(a),
        Formula::Unit => out.push('I'),
        Formula::Tensor(a, b) => {
            write_formula(out, a, formula_prec(a) < 1);
            out.push_str(" * ");
            write_formula(out, b, formula_prec(b) < 2);
        }
        Formula::RImp(a, b) => {
            write_formula(out, a, formula_prec(a) < 1);
            out.push_str(" \\ ");
            write_formula(out, b, matches!(**b, Formula::LImp(..)));
        }
        Formula::LImp(a, b) => {
            write_formula(out, a, matches!(**a, Formula::RImp(..)));
            out.push_str(" / ");
            // A tensor argument of `/` is parenthesized for readability.
            write_formula(out, b, formula_prec(b) < 2);
        }
        Formula::Bang(a) => {
            out.push('!');
            write_formula(out, a, formula_prec(a) < 2);
        }
        Formula::Kappa(a) => {
            out.push_str("k ");
            write_formula(out, a, formula_prec(a) < 2);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(&mut s, self, false);
        f.write_str(&s)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(|a| a.to_string()).collect();
        if ante.is_empty() {
            write!(f, "|- {}", self.succedent)
        } else {
            write!(f, "{} |- {}", ante.join(", "), self.succedent)
        }
    }
}

fn write_pattern(out: &mut String, p: &Pattern, paren: bool) {
    match p {
        Pattern::Wildcard => out.push('-'),
        Pattern::Var(x) => out.push_str(x),
        Pattern::Unit => out.push_str("unit"),
        Pattern::Tensor(a, b) => {
            if paren {
                out.push('(');
            }
            write_pattern(out, a, false);
            out.push_str(" * ");
            write_pattern(out, b, true);
            if paren {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_pattern(&mut s, self, false);
        f.write_str(&s)
    }
}

// Term levels: 0 binder forms, 1 tensor, 2 application, 3 atoms.
fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Var(_) | Term::Unit => 3,
        Term::AppL(..) | Term::AppR(..) | Term::DerelictBang(_) | Term::DerelictKappa(_) => 2,
        Term::Tensor(..) => 1,
        _ => 0,
    }
}

/// Surface details that differ between the Lambek and ILL renderings.
pub(crate) struct Style {
    pub ann: fn(&Formula) -> String,
    pub lam_r: &'static str,
    pub app_r: &'static str,
}

const LAMBEK: Style = Style {
    ann: |f| f.to_string(),
    lam_r: "\\r ",
    app_r: "appr ",
};

pub(crate) fn render_term(t: &Term, st: &Style) -> String {
    let mut s = String::new();
    write_term(&mut s, t, st);
    s
}

fn write_at(out: &mut String, t: &Term, min: u8, st: &Style) {
    if term_prec(t) < min {
        out.push('(');
        write_term(out, t, st);
        out.push(')');
    } else {
        write_term(out, t, st);
    }
}

fn write_list(out: &mut String, ts: &[Term], st: &Style) {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_at(out, t, 1, st);
    }
}

fn write_term(out: &mut String, t: &Term, st: &Style) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Unit => out.push_str("unit"),
        Term::Tensor(a, b) => {
            write_at(out, a, 1, st);
            out.push_str(" * ");
            write_at(out, b, 2, st);
        }
        Term::LamL(x, a, b) | Term::LamR(x, a, b) => {
            out.push_str(if matches!(t, Term::LamL(..)) { "\\l " } else { st.lam_r });
            let _ = write!(out, "{x}:{}. ", (st.ann)(a));
            write_term(out, b, st);
        }
        Term::AppL(f, a) | Term::AppR(f, a) => {
            out.push_str(if matches!(t, Term::AppL(..)) { "appl " } else { st.app_r });
            write_at(out, f, 3, st);
            out.push(' ');
            write_at(out, a, 3, st);
        }
        Term::Let(s, p, b) => {
            out.push_str("let ");
            write_at(out, s, 1, st);
            let _ = write!(out, " be {p} in ");
            write_term(out, b, st);
        }
        Term::Copy(s, x, y, b) => {
            out.push_str("copy ");
            write_at(out, s, 1, st);
            let _ = write!(out, " as {x}, {y} in ");
            write_term(out, b, st);
        }
        Term::Discard(s, b) => {
            out.push_str("discard ");
            write_at(out, s, 1, st);
            out.push_str(" in ");
            write_term(out, b, st);
        }
        Term::PromoteBang(srcs, xs, b) | Term::PromoteKappa(srcs, xs, b) => {
            out.push_str(if matches!(t, Term::PromoteBang(..)) {
                "promote!"
            } else {
                "promotek"
            });
            if !srcs.is_empty() {
                out.push(' ');
            }
            write_list(out, srcs, st);
            out.push_str(" for");
            if !xs.is_empty() {
                out.push(' ');
            }
            out.push_str(&xs.join(", "));
            out.push_str(" in ");
            write_term(out, b, st);
        }
        Term::DerelictBang(a) => {
            out.push_str("derelict! ");
            write_at(out, a, 3, st);
        }
        Term::DerelictKappa(a) => {
            out.push_str("derelictk ");
            write_at(out, a, 3, st);
        }
        Term::ExchL(a, b, x, y, c) | Term::ExchR(a, b, x, y, c) => {
            out.push_str(if matches!(t, Term::ExchL(..)) { "exchl " } else { "exchr " });
            write_at(out, a, 1, st);
            out.push_str(", ");
            write_at(out, b, 1, st);
            let _ = write!(out, " with {x}, {y} in ");
            write_term(out, c, st);
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, self, &LAMBEK);
        f.write_str(&s)
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx: Vec<String> = self
            .context
            .iter()
            .map(|(x, a)| format!("{x}:{a}"))
            .collect();
        if ctx.is_empty() {
            write!(f, "|- {}", self.term)
        } else {
            write!(f, "{} |- {}", ctx.join(", "), self.term)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, parse_term, Formula};

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn formula_rendering() {
        assert_eq!(Formula::tensor(a("a"), a("b")).to_string(), "a * b");
        assert_eq!(
            Formula::rimp(Formula::tensor(a("a"), a("b")), a("c")).to_string(),
            "a * b \\ c"
        );
        assert_eq!(
            Formula::limp(a("a"), Formula::tensor(a("b"), a("c"))).to_string(),
            "a / (b * c)"
        );
        assert_eq!(
            Formula::rimp(Formula::rimp(a("a"), a("b")), a("c")).to_string(),
            "(a \\ b) \\ c"
        );
        assert_eq!(
            Formula::limp(a("a"), Formula::limp(a("b"), a("c"))).to_string(),
            "a / (b / c)"
        );
        assert_eq!(Formula::kappa(Formula::bang(a("a"))).to_string(), "k !a");
        assert_eq!(Formula::bang(Formula::tensor(a("a"), a("b"))).to_string(), "!(a * b)");
    }

    #[test]
    fn term_rendering_round_trips() {
        for src in [
            "appl (\\l x:a. x) y",
            "let u be x * (y * z) in x * y * z",
            "(\\r x:a. x) * y",
            "x * (y * z)",
            "promote! (let u be unit in v), w for x, y in x * y",
            "exchl derelictk a, (appr f b) with x, y in y * x",
            "copy derelict! (promote! for in unit) as x, y in discard x in y",
            "let (\\l x:a. x) be - in unit",
        ] {
            let t = parse_term(src).unwrap();
            let shown = t.to_string();
            assert_eq!(parse_term(&shown).unwrap(), t, "{src} rendered as {shown}");
        }
    }

    #[test]
    fn formula_round_trips() {
        for src in ["a / b / c", "(a / b) \\ c", "k (a * b) \\ !I", "a \\ (b / c)"] {
            let f = parse_formula(src).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
