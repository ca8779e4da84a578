//! Oracles shared by the integration and acceptance tests. Written
//! independently of the library's search and table code.

#![allow(dead_code)]

use std::collections::HashMap;

use lambek::algebra::FinBiclosedPoset;
use lambek::syntax::{Formula, Sequent};

/// Cut-free provability in L by exhaustive backward rule application.
/// Every rule removes a connective, so the recursion is finite.
pub struct LOracle {
    memo: HashMap<(Vec<Formula>, Formula), bool>,
}

impl LOracle {
    pub fn new() -> LOracle {
        LOracle {
            memo: HashMap::new(),
        }
    }

    pub fn provable(&mut self, s: &Sequent) -> bool {
        self.prov(&s.antecedent, &s.succedent)
    }

    fn prov(&mut self, ctx: &[Formula], goal: &Formula) -> bool {
        let key = (ctx.to_vec(), goal.clone());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.search(ctx, goal);
        self.memo.insert(key, r);
        r
    }

    fn search(&mut self, ctx: &[Formula], goal: &Formula) -> bool {
        if ctx.len() == 1 && &ctx[0] == goal {
            return true;
        }
        // right rules
        match goal {
            Formula::Unit if ctx.is_empty() => return true,
            Formula::Tensor(a, b) => {
                for i in 0..=ctx.len() {
                    if self.prov(&ctx[..i], a) && self.prov(&ctx[i..], b) {
                        return true;
                    }
                }
            }
            Formula::RImp(a, b) => {
                let mut c = vec![(**a).clone()];
                c.extend_from_slice(ctx);
                if self.prov(&c, b) {
                    return true;
                }
            }
            Formula::LImp(b, a) => {
                let mut c = ctx.to_vec();
                c.push((**a).clone());
                if self.prov(&c, b) {
                    return true;
                }
            }
            _ => {}
        }
        // left rules
        for k in 0..ctx.len() {
            let (pre, post) = (&ctx[..k], &ctx[k + 1..]);
            match &ctx[k] {
                Formula::Unit => {
                    if self.prov(&[pre, post].concat(), goal) {
                        return true;
                    }
                }
                Formula::Tensor(a, b) => {
                    let c = [pre, &[(**a).clone(), (**b).clone()], post].concat();
                    if self.prov(&c, goal) {
                        return true;
                    }
                }
                // Γ ⊢ A and Δ1, B, Δ2 ⊢ C give Δ1, Γ, A⇀B, Δ2 ⊢ C
                Formula::RImp(a, b) => {
                    for i in 0..=k {
                        if self.prov(&ctx[i..k], a) {
                            let c = [&ctx[..i], &[(**b).clone()], post].concat();
                            if self.prov(&c, goal) {
                                return true;
                            }
                        }
                    }
                }
                // Γ ⊢ A and Δ1, B, Δ2 ⊢ C give Δ1, B↼A, Γ, Δ2 ⊢ C
                Formula::LImp(b, a) => {
                    for j in k + 1..=ctx.len() {
                        if self.prov(&ctx[k + 1..j], a) {
                            let c = [pre, &[(**b).clone()], &ctx[j..]].concat();
                            if self.prov(&c, goal) {
                                return true;
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        false
    }
}

/// Every formula of depth ≤ 2 (atoms have depth 1) over `bases`.
pub fn small_formulas(bases: &[Formula]) -> Vec<Formula> {
    let mut out = bases.to_vec();
    for a in bases {
        for b in bases {
            out.push(Formula::tensor(a.clone(), b.clone()));
            out.push(Formula::rimp(a.clone(), b.clone()));
            out.push(Formula::limp(a.clone(), b.clone()));
        }
    }
    out
}

/// All sequents with at most `max_ante` antecedent formulas from `fs`.
pub fn all_sequents(fs: &[Formula], max_ante: usize) -> Vec<Sequent> {
    let mut ctxs: Vec<Vec<Formula>> = vec![vec![]];
    let mut layer: Vec<Vec<Formula>> = vec![vec![]];
    for _ in 0..max_ante {
        layer = layer
            .iter()
            .flat_map(|c| {
                fs.iter().map(move |f| {
                    let mut c = c.clone();
                    c.push(f.clone());
                    c
                })
            })
            .collect();
        ctxs.extend(layer.iter().cloned());
    }
    ctxs.into_iter()
        .flat_map(|c| fs.iter().map(move |g| Sequent::new(c.clone(), g.clone())))
        .collect()
}

/// Greatest `x` with `a∘x ≤ b` (right) or `x∘a ≤ b` (left), by scanning.
pub fn residual_oracle(m: &FinBiclosedPoset, right: bool) -> Option<Vec<Vec<usize>>> {
    let n = m.names.len();
    let mut t = vec![vec![0; n]; n];
    for (a, row) in t.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let below: Vec<usize> = (0..n)
                .filter(|&x| {
                    let p = if right { m.op[a][x] } else { m.op[x][a] };
                    m.leq[p][b]
                })
                .collect();
            *cell = *below
                .iter()
                .find(|&&top| below.iter().all(|&x| m.leq[x][top]))?;
        }
    }
    Some(t)
}
