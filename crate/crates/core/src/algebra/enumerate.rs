use std::collections::BTreeMap;

use crate::exec::Exec;

use super::{compute_residuals, validate, FinBiclosedPoset};

/// Enumeration is exhaustive, so the size is capped.
pub const MAX_ENUMERATION_SIZE: usize = 3;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Encoding of `m` relabelled by `p` (old index `a` becomes `p[a]`).
fn encode(m: &FinBiclosedPoset, p: &[usize]) -> Vec<usize> {
    let n = m.len();
    let mut inv = vec![0; n];
    for (a, &b) in p.iter().enumerate() {
        inv[b] = a;
    }
    let mut code = vec![p[m.unit]];
    for a in 0..n {
        for b in 0..n {
            code.push(usize::from(m.leq[inv[a]][inv[b]]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            code.push(p[m.op[inv[a]][inv[b]]]);
        }
    }
    for t in [&m.kappa, &m.bang] {
        match t {
            Some(t) => code.extend((0..n).map(|a| 1 + p[t[inv[a]]])),
            None => code.push(0),
        }
    }
    code
}

/// Smallest encoding over all relabellings, with the relabelling achieving it.
fn canonical(m: &FinBiclosedPoset) -> (Vec<usize>, Vec<usize>) {
    permutations(m.len())
        .into_iter()
        .map(|p| (encode(m, &p), p))
        .min()
        .expect("at least one permutation")
}

pub fn canonical_code(m: &FinBiclosedPoset) -> Vec<usize> {
    canonical(m).0
}

/// Brute-force isomorphism test over all bijections.
pub fn isomorphic(a: &FinBiclosedPoset, b: &FinBiclosedPoset) -> bool {
    a.len() == b.len() && canonical_code(a) == canonical_code(b)
}

fn partial_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << off.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for (i, &(a, b)) in off.iter().enumerate() {
            leq[a][b] = mask >> i & 1 == 1;
        }
        let antisym = off.iter().all(|&(a, b)| !(leq[a][b] && leq[b][a]));
        let trans = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c]))
        });
        if antisym && trans {
            out.push(leq);
        }
    }
    out
}

fn decode_op(mut code: usize, n: usize) -> Vec<Vec<usize>> {
    let mut op = vec![vec![0; n]; n];
    for row in op.iter_mut() {
        for x in row.iter_mut() {
            *x = code % n;
            code /= n;
        }
    }
    op
}

fn candidate(leq: &[Vec<bool>], op: Vec<Vec<usize>>) -> Option<FinBiclosedPoset> {
    let n = leq.len();
    let unit = (0..n).find(|&e| (0..n).all(|a| op[e][a] == a && op[a][e] == a))?;
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op[op[a][b]][c] == op[a][op[b][c]])));
    if !assoc {
        return None;
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    let mut m = FinBiclosedPoset {
        label: String::new(),
        names,
        leq: leq.to_vec(),
        op,
        unit,
        rres: vec![],
        lres: vec![],
        kappa: None,
        bang: None,
    };
    let (r, l) = compute_residuals(&m).ok()?;
    m.rres = r;
    m.lres = l;
    validate(&m).ok().then_some(m)
}

fn relabel(m: &FinBiclosedPoset, p: &[usize]) -> FinBiclosedPoset {
    let n = m.len();
    let mut inv = vec![0; n];
    for (a, &b) in p.iter().enumerate() {
        inv[b] = a;
    }
    let table = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| (0..n).map(|b| p[t[inv[a]][inv[b]]]).collect())
            .collect()
    };
    FinBiclosedPoset {
        label: m.label.clone(),
        names: m.names.clone(),
        leq: (0..n)
            .map(|a| (0..n).map(|b| m.leq[inv[a]][inv[b]]).collect())
            .collect(),
        op: table(&m.op),
        unit: p[m.unit],
        rres: table(&m.rres),
        lres: table(&m.lres),
        kappa: m.kappa.as_ref().map(|k| (0..n).map(|a| p[k[inv[a]]]).collect()),
        bang: m.bang.as_ref().map(|k| (0..n).map(|a| p[k[inv[a]]]).collect()),
    }
}

/// Every biclosed poset on `n` elements up to isomorphism, each in its
/// canonical labelling, ordered by canonical encoding.
pub fn enumerate_biclosed(n: usize, exec: Exec) -> Vec<FinBiclosedPoset> {
    assert!(
        (1..=MAX_ENUMERATION_SIZE).contains(&n),
        "enumeration supports 1..={MAX_ENUMERATION_SIZE} elements"
    );
    let orders = partial_orders(n);
    let tables = n.pow((n * n) as u32);
    let jobs: Vec<(usize, usize)> = (0..orders.len())
        .flat_map(|o| (0..tables).map(move |t| (o, t)))
        .collect();
    let found = exec.map(&jobs, |&(o, t)| {
        candidate(&orders[o], decode_op(t, n)).map(|m| {
            let (code, p) = canonical(&m);
            (code, relabel(&m, &p))
        })
    });
    let mut unique: BTreeMap<Vec<usize>, FinBiclosedPoset> = BTreeMap::new();
    for (code, m) in found.into_iter().flatten() {
        unique.entry(code).or_insert(m);
    }
    unique
        .into_values()
        .enumerate()
        .map(|(i, mut m)| {
            m.label = format!("enum{n}.{i}");
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{trivial, two};

    #[test]
    fn order_counts() {
        assert_eq!(partial_orders(1).len(), 1);
        assert_eq!(partial_orders(2).len(), 3);
        assert_eq!(partial_orders(3).len(), 19);
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_biclosed(1, Exec::Sequential);
        assert_eq!(one.len(), 1);
        let mut t = trivial();
        t.kappa = None;
        t.bang = None;
        assert!(isomorphic(&one[0], &t));
        let mut b = two();
        b.kappa = None;
        b.bang = None;
        let twos = enumerate_biclosed(2, Exec::Sequential);
        assert!(twos.iter().any(|m| isomorphic(m, &b)));
        assert!(twos.iter().all(|m| validate(m).ok()));
        for (i, x) in twos.iter().enumerate() {
            for y in &twos[i + 1..] {
                assert!(!isomorphic(x, y));
            }
        }
    }

    #[test]
    fn relabelling_preserves_validity() {
        let m = two();
        let r = relabel(&m, &[1, 0]);
        assert!(validate(&r).ok());
        assert!(isomorphic(&m, &r));
    }
}
