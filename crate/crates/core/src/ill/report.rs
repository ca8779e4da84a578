use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::exec::Exec;
use crate::rewrite::{reducts, Mode, Redex};
use crate::syntax::{alpha_normalize, CalculusLevel, Context, Formula, Term};
use crate::typing::typecheck;

use super::{embed_formula, embed_term, ill_typecheck, IllJudgment};

/// Longest ILL reduction searched for the image of one source step.
pub const MAX_TARGET_STEPS: usize = 10;
const SEARCH_NODES: usize = 20_000;

#[derive(Clone, Debug)]
pub struct StepReport {
    pub redex: Redex,
    /// Fewest ILL steps from the image of the redex to the image of the
    /// reduct; `None` if not reached within [`MAX_TARGET_STEPS`].
    pub target_steps: Option<usize>,
}

impl StepReport {
    pub fn ok(&self) -> bool {
        match self.target_steps {
            None => false,
            Some(0) => !self.redex.rule.is_beta(),
            Some(_) => true,
        }
    }

    /// Anything other than exactly one target step is flagged for audit.
    pub fn flagged(&self) -> bool {
        self.target_steps != Some(1)
    }
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub source_type: Option<Formula>,
    /// `Err` carries the source or target typing failure.
    pub typing: Result<(), String>,
    pub steps: Vec<StepReport>,
}

#[derive(Clone, Debug, Default)]
pub struct PreservationReport {
    pub entries: Vec<EntryReport>,
}

impl PreservationReport {
    pub fn typed(&self) -> usize {
        self.entries.iter().filter(|e| e.typing.is_ok()).count()
    }

    pub fn steps(&self) -> impl Iterator<Item = &StepReport> {
        self.entries.iter().flat_map(|e| e.steps.iter())
    }

    pub fn step_failures(&self) -> usize {
        self.steps().filter(|s| !s.ok()).count()
    }

    pub fn flagged(&self) -> usize {
        self.steps().filter(|s| s.flagged()).count()
    }

    pub fn ok(&self) -> bool {
        self.typed() == self.entries.len() && self.step_failures() == 0
    }
}

impl fmt::Display for PreservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            match &e.typing {
                Ok(()) => writeln!(f, "{i}\ttyped\t{} steps", e.steps.len())?,
                Err(m) => writeln!(f, "{i}\tFAILED\t{m}")?,
            }
            for s in &e.steps {
                let n = s
                    .target_steps
                    .map_or_else(|| "none".to_string(), |n| n.to_string());
                let mark = if !s.ok() {
                    "FAILED"
                } else if s.flagged() {
                    "flag"
                } else {
                    "ok"
                };
                writeln!(f, "{i}\t{}\t{n}\t{mark}", s.redex)?;
            }
        }
        write!(
            f,
            "entries {} typed {} steps {} failures {} flagged {}",
            self.entries.len(),
            self.typed(),
            self.steps().count(),
            self.step_failures(),
            self.flagged()
        )
    }
}

/// Embeds each judgment and each of its one-step reductions into ILL.
pub fn preservation_report(
    corpus: &[(Context, Term, CalculusLevel)],
    exec: Exec,
) -> PreservationReport {
    PreservationReport {
        entries: exec.map(corpus, |(ctx, t, level)| entry(ctx, t, *level)),
    }
}

fn entry(ctx: &Context, t: &Term, level: CalculusLevel) -> EntryReport {
    let ty = match typecheck(ctx, t, level) {
        Ok(a) => a,
        Err(e) => {
            return EntryReport {
                source_type: None,
                typing: Err(format!("source: {e}")),
                steps: vec![],
            }
        }
    };
    let j = IllJudgment {
        context: ctx.iter().map(|(x, a)| (x.clone(), embed_formula(a))).collect(),
        term: embed_term(t),
        ty: embed_formula(&ty),
    };
    let typing = ill_typecheck(&j).map_err(|e| format!("target: {e}"));
    let steps = reducts(t, Mode::Lambek)
        .into_iter()
        .map(|(redex, u)| StepReport {
            redex,
            target_steps: distance(&embed_term(t).to_term(), &embed_term(&u).to_term()),
        })
        .collect();
    EntryReport {
        source_type: Some(ty),
        typing,
        steps,
    }
}

/// Breadth-first search over ILL reductions, up to α-equivalence.
fn distance(from: &Term, to: &Term) -> Option<usize> {
    let target = alpha_normalize(to);
    let start = alpha_normalize(from);
    if start == target {
        return Some(0);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = VecDeque::from([(start, 0)]);
    while let Some((cur, d)) = frontier.pop_front() {
        if d == MAX_TARGET_STEPS {
            continue;
        }
        for (_, next) in reducts(&cur, Mode::Ill) {
            let next = alpha_normalize(&next);
            if next == target {
                return Some(d + 1);
            }
            if seen.len() < SEARCH_NODES && seen.insert(next.clone()) {
                frontier.push_back((next, d + 1));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::RewriteRule;
    use crate::syntax::{parse_context, parse_term};

    fn run(ctx: &str, t: &str, level: CalculusLevel) -> PreservationReport {
        let c = parse_context(ctx).unwrap();
        preservation_report(&[(c, parse_term(t).unwrap(), level)], Exec::Sequential)
    }

    #[test]
    fn beta_maps_to_one_step() {
        let r = run("y:a", "appl (\\l x:a. x) y", CalculusLevel::L);
        assert!(r.ok(), "{r}");
        assert_eq!(r.entries[0].steps[0].target_steps, Some(1));
    }

    #[test]
    fn exchange_conversion_maps_to_zero_steps() {
        let r = run(
            "x:k a, y:b, u:c * d",
            "let (exchl x, y with p, q in p * q) be m * n in let u be v * w in (m * n) * (v * w)",
            CalculusLevel::LKappa,
        );
        assert!(r.ok(), "{r}");
        let s = &r.entries[0].steps[0];
        assert_eq!(s.redex.rule, RewriteRule::NatEl);
        assert_eq!(s.target_steps, Some(0));
    }
}
