use crate::rewrite::{reducts, Mode, Redex};
use crate::syntax::{CalculusLevel, Context, Formula, Term};

use super::{typecheck, TypeError};

#[derive(Clone, Debug)]
pub struct Violation {
    pub redex: Redex,
    pub reduct: Term,
    /// What the reduct typechecked to instead.
    pub found: Result<Formula, TypeError>,
}

#[derive(Clone, Debug)]
pub struct SubjectReductionReport {
    pub ty: Formula,
    pub reducts_checked: usize,
    pub violations: Vec<Violation>,
}

impl SubjectReductionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Retypes every one-step reduct of `t` and records those whose type differs.
pub fn subject_reduction_report(
    ctx: &Context,
    t: &Term,
    level: CalculusLevel,
) -> Result<SubjectReductionReport, TypeError> {
    let ty = typecheck(ctx, t, level)?;
    let mut violations = Vec::new();
    let rs = reducts(t, Mode::Lambek);
    for (redex, reduct) in &rs {
        let found = typecheck(ctx, reduct, level);
        if found.as_ref() != Ok(&ty) {
            violations.push(Violation {
                redex: redex.clone(),
                reduct: reduct.clone(),
                found,
            });
        }
    }
    Ok(SubjectReductionReport {
        ty,
        reducts_checked: rs.len(),
        violations,
    })
}
