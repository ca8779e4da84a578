use std::collections::{HashMap, HashSet};

use super::Derivation;
use crate::syntax::{CalculusLevel, Formula, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_depth: usize,
    pub max_visited: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 24,
            max_visited: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProveOutcome {
    Found(Derivation),
    NotProvable,
    BudgetExceeded,
}

impl ProveOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, ProveOutcome::Found(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub visited: usize,
    pub depth_cutoffs: usize,
}

enum Res {
    Proved(Derivation),
    /// `cyclic`: the failure relied on pruning a sequent already on the
    /// current branch, so it is only valid in this branch.
    Failed { cyclic: bool },
    Abort,
}

struct Search {
    level: CalculusLevel,
    budget: SearchBudget,
    proved: HashMap<Sequent, Derivation>,
    /// Failures that do not depend on the current branch; the value is the
    /// largest remaining depth at which the failure was observed
    /// (`usize::MAX` when no depth cutoff was involved).
    failed: HashMap<Sequent, usize>,
    on_path: HashSet<Sequent>,
    stats: SearchStats,
    /// Whether any depth cutoff was taken in this search.
    incomplete: bool,
    /// Set while the current subtree has hit a depth cutoff.
    cut_here: bool,
}

/// Backward cut-free proof search with loop detection.
///
/// Rules are tried in [`RuleName`](super::RuleName) order and principal
/// positions left to right, so the result is deterministic. At the modal
/// levels the depth bound is raised one step at a time, so the proof returned
/// is the first one in that order among the shallowest.
pub fn prove(s: &Sequent, level: CalculusLevel, budget: SearchBudget) -> ProveOutcome {
    prove_with_stats(s, level, budget).0
}

pub fn prove_with_stats(
    s: &Sequent,
    level: CalculusLevel,
    budget: SearchBudget,
) -> (ProveOutcome, SearchStats) {
    let mut search = Search {
        level,
        budget,
        proved: HashMap::new(),
        failed: HashMap::new(),
        on_path: HashSet::new(),
        stats: SearchStats::default(),
        incomplete: false,
        cut_here: false,
    };
    // Every L rule shrinks the sequent, so one pass at full depth is complete
    // there. The modal rules do not, and a plain depth-first pass gets lost in
    // contraction chains; deepen gradually instead.
    let (first, last) = if level == CalculusLevel::L {
        let d = budget.max_depth.max(s.size() + 1);
        (d, d)
    } else {
        (1.min(budget.max_depth), budget.max_depth)
    };
    for depth in first..=last {
        search.incomplete = false;
        match search.go(s, depth) {
            Res::Proved(d) => return (ProveOutcome::Found(d), search.stats),
            Res::Failed { .. } if !search.incomplete => {
                return (ProveOutcome::NotProvable, search.stats)
            }
            Res::Failed { .. } => {}
            Res::Abort => break,
        }
    }
    (ProveOutcome::BudgetExceeded, search.stats)
}

impl Search {
    fn go(&mut self, s: &Sequent, remaining: usize) -> Res {
        if let Some(d) = self.proved.get(s) {
            return Res::Proved(d.clone());
        }
        if let Some(&r) = self.failed.get(s) {
            if r >= remaining {
                if r != usize::MAX {
                    self.cut_here = true;
                }
                return Res::Failed { cyclic: false };
            }
        }
        if self.on_path.contains(s) {
            return Res::Failed { cyclic: true };
        }
        if remaining == 0 {
            self.incomplete = true;
            self.cut_here = true;
            self.stats.depth_cutoffs += 1;
            return Res::Failed { cyclic: false };
        }
        self.stats.visited += 1;
        if self.stats.visited > self.budget.max_visited {
            return Res::Abort;
        }
        self.on_path.insert(s.clone());
        let saved_cut = std::mem::replace(&mut self.cut_here, false);
        let res = self.expand(s, remaining - 1);
        self.on_path.remove(s);
        let cut_below = self.cut_here;
        self.cut_here = saved_cut || cut_below;
        match &res {
            Res::Proved(d) => {
                self.proved.insert(s.clone(), d.clone());
            }
            Res::Failed { cyclic: false } => {
                let r = if cut_below { remaining } else { usize::MAX };
                let e = self.failed.entry(s.clone()).or_insert(0);
                *e = (*e).max(r);
            }
            _ => {}
        }
        res
    }

    fn expand(&mut self, s: &Sequent, rem: usize) -> Res {
        let ctx = &s.antecedent;
        let succ = &s.succedent;
        let n = ctx.len();
        let mut cyclic = false;

        macro_rules! try_unary {
            ($prem:expr, $build:expr) => {{
                match self.go(&$prem, rem) {
                    Res::Proved(d) => return Res::Proved($build(d)),
                    Res::Failed { cyclic: c } => cyclic |= c,
                    Res::Abort => return Res::Abort,
                }
            }};
        }
        macro_rules! try_binary {
            ($p0:expr, $p1:expr, $build:expr) => {{
                match self.go(&$p0, rem) {
                    Res::Proved(d0) => match self.go(&$p1, rem) {
                        Res::Proved(d1) => return Res::Proved($build(d0, d1)),
                        Res::Failed { cyclic: c } => cyclic |= c,
                        Res::Abort => return Res::Abort,
                    },
                    Res::Failed { cyclic: c } => cyclic |= c,
                    Res::Abort => return Res::Abort,
                }
            }};
        }

        // Ax
        if n == 1 && ctx[0] == *succ {
            return Res::Proved(Derivation::ax(succ.clone()));
        }
        // Ur
        if n == 0 && *succ == Formula::Unit {
            return Res::Proved(Derivation::ur());
        }
        // Ul
        for k in 0..n {
            if ctx[k] == Formula::Unit {
                let mut prem = ctx.clone();
                prem.remove(k);
                try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::ul(d, k));
            }
        }
        // Tl
        for k in 0..n {
            if let Formula::Tensor(a, b) = &ctx[k] {
                let prem = super::splice(ctx, k, 1, &[(**a).clone(), (**b).clone()]);
                try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::tl(d, k));
            }
        }
        // Tr
        if let Formula::Tensor(a, b) = succ {
            for i in 0..=n {
                try_binary!(
                    Sequent::new(ctx[..i].to_vec(), (**a).clone()),
                    Sequent::new(ctx[i..].to_vec(), (**b).clone()),
                    Derivation::tr
                );
            }
        }
        // IRl
        if let Formula::LImp(a, b) = succ {
            let mut prem = ctx.clone();
            prem.push((**b).clone());
            try_unary!(Sequent::new(prem, (**a).clone()), Derivation::irl);
        }
        // ILl
        for k in 0..n {
            if let Formula::LImp(a, b) = &ctx[k] {
                for j in k + 1..=n {
                    let mut rest = ctx[..k].to_vec();
                    rest.push((**a).clone());
                    rest.extend_from_slice(&ctx[j..]);
                    try_binary!(
                        Sequent::new(ctx[k + 1..j].to_vec(), (**b).clone()),
                        Sequent::new(rest, succ.clone()),
                        |d0, d1| Derivation::ill(d0, d1, k)
                    );
                }
            }
        }
        // IRr
        if let Formula::RImp(a, b) = succ {
            let mut prem = vec![(**a).clone()];
            prem.extend_from_slice(ctx);
            try_unary!(Sequent::new(prem, (**b).clone()), Derivation::irr);
        }
        // ILr
        for k in 0..n {
            if let Formula::RImp(a, b) = &ctx[k] {
                for i in 0..=k {
                    let mut rest = ctx[..i].to_vec();
                    rest.push((**b).clone());
                    rest.extend_from_slice(&ctx[k + 1..]);
                    try_binary!(
                        Sequent::new(ctx[i..k].to_vec(), (**a).clone()),
                        Sequent::new(rest, succ.clone()),
                        |d0, d1| Derivation::ilr(d0, d1, i)
                    );
                }
            }
        }
        if self.level.has_bang() {
            // C
            for k in 0..n {
                if ctx[k].is_bang() {
                    let prem = super::splice(ctx, k, 0, &[ctx[k].clone()]);
                    try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::contract(
                        d, k
                    ));
                }
            }
            // W
            for k in 0..n {
                if ctx[k].is_bang() {
                    let prem = super::splice(ctx, k, 1, &[]);
                    let f = ctx[k].clone();
                    try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::weaken(
                        d, k, f
                    ));
                }
            }
            // Br
            if let Formula::Bang(a) = succ {
                if ctx.iter().all(Formula::is_bang) {
                    try_unary!(Sequent::new(ctx.clone(), (**a).clone()), Derivation::br);
                }
            }
            // Bl
            for k in 0..n {
                if let Formula::Bang(a) = &ctx[k] {
                    let prem = super::splice(ctx, k, 1, &[(**a).clone()]);
                    try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::bl(d, k));
                }
            }
        }
        if self.level.has_kappa() {
            // Er
            if let Formula::Kappa(a) = succ {
                if ctx.iter().all(Formula::is_kappa) {
                    try_unary!(Sequent::new(ctx.clone(), (**a).clone()), Derivation::er);
                }
            }
            // El
            for k in 0..n {
                if let Formula::Kappa(a) = &ctx[k] {
                    let prem = super::splice(ctx, k, 1, &[(**a).clone()]);
                    try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::el(d, k));
                }
            }
            // E1
            for k in 0..n.saturating_sub(1) {
                if ctx[k].is_kappa() {
                    let mut prem = ctx.clone();
                    prem.swap(k, k + 1);
                    try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::e1(d, k));
                }
            }
            // E2
            for k in 1..n {
                if ctx[k].is_kappa() {
                    let mut prem = ctx.clone();
                    prem.swap(k - 1, k);
                    try_unary!(Sequent::new(prem, succ.clone()), |d| Derivation::e2(d, k));
                }
            }
        }
        Res::Failed { cyclic }
    }
}
