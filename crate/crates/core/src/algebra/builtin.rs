use super::{center_kappa, FinBiclosedPoset};

pub const BUILTIN_NAMES: [&str; 3] = ["trivial", "two", "rel2"];

pub fn builtin(name: &str) -> Option<FinBiclosedPoset> {
    match name {
        "trivial" => Some(trivial()),
        "two" => Some(two()),
        "rel2" => Some(rel_quantale(2)),
        _ => None,
    }
}

/// The one-element model; every sequent holds in it.
pub fn trivial() -> FinBiclosedPoset {
    FinBiclosedPoset {
        label: "trivial".into(),
        names: vec!["0".into()],
        leq: vec![vec![true]],
        op: vec![vec![0]],
        unit: 0,
        rres: vec![vec![0]],
        lres: vec![vec![0]],
        kappa: Some(vec![0]),
        bang: Some(vec![0]),
    }
}

/// The chain `0 < 1` with meet as product and unit `1`.
pub fn two() -> FinBiclosedPoset {
    let mut m = FinBiclosedPoset::from_tables(
        "two",
        vec!["0".into(), "1".into()],
        vec![vec![true, true], vec![false, true]],
        vec![vec![0, 0], vec![0, 1]],
        1,
    )
    .expect("two has residuals");
    m.kappa = Some(vec![0, 1]);
    m.bang = Some(vec![0, 1]);
    m
}

fn relation_name(mask: usize, n: usize) -> String {
    let pairs: Vec<String> = (0..n * n)
        .filter(|bit| mask >> bit & 1 == 1)
        .map(|bit| format!("{}{}", bit / n, bit % n))
        .collect();
    format!("{{{}}}", pairs.join(","))
}

fn compose(r: usize, s: usize, n: usize) -> usize {
    let mut out = 0;
    for i in 0..n {
        for k in 0..n {
            if (0..n).any(|j| r >> (i * n + j) & 1 == 1 && s >> (j * n + k) & 1 == 1) {
                out |= 1 << (i * n + k);
            }
        }
    }
    out
}

/// All binary relations on `{0..n}` under inclusion and relational
/// composition (`r∘s` = first `r`, then `s`), with the identity as unit.
/// `!r` is `r ∩ id` and `κ` is the largest central relation below.
/// Element `i` is the relation whose bit `a*n + b` marks the pair `(a, b)`.
pub fn rel_quantale(n: usize) -> FinBiclosedPoset {
    assert!((1..=2).contains(&n), "rel_quantale supports n = 1 or 2");
    let size = 1usize << (n * n);
    let names = (0..size).map(|m| relation_name(m, n)).collect();
    let leq = (0..size)
        .map(|a| (0..size).map(|b| a & !b == 0).collect())
        .collect();
    let op = (0..size)
        .map(|a| (0..size).map(|b| compose(a, b, n)).collect())
        .collect();
    let id: usize = (0..n).map(|i| 1 << (i * n + i)).sum();
    let mut m = FinBiclosedPoset::from_tables(&format!("rel{n}"), names, leq, op, id)
        .expect("relation quantales are residuated");
    m.bang = Some((0..size).map(|a| a & id).collect());
    m.kappa = Some(center_kappa(&m).expect("centre of a relation quantale"));
    m
}
