//! Finite carriers and their elements.
//!
//! Every carrier is indexed `0..size`. Products are row-major, functions are
//! little-endian mixed radix over the domain, and bounded multisets are
//! ranked by size, then lexicographically as sorted index lists.

use std::fmt;

use super::DialError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Base(usize),
    Prod(Box<Carrier>, Box<Carrier>),
    Func(Box<Carrier>, Box<Carrier>),
    /// Multisets over the base carrier with total multiplicity at most the bound.
    Bags(Box<Carrier>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Idx(usize),
    Pair(Box<Val>, Box<Val>),
    /// Values at each domain index.
    Fun(Vec<Val>),
    /// Sorted element indices.
    Bag(Vec<usize>),
}

impl Val {
    pub fn pair(a: Val, b: Val) -> Val {
        Val::Pair(Box::new(a), Box::new(b))
    }

    pub fn idx(&self) -> usize {
        match self {
            Val::Idx(i) => *i,
            other => panic!("expected a base element, found {other:?}"),
        }
    }

    pub fn split(&self) -> (&Val, &Val) {
        match self {
            Val::Pair(a, b) => (a, b),
            other => panic!("expected a pair, found {other:?}"),
        }
    }

    pub fn entries(&self) -> &[Val] {
        match self {
            Val::Fun(v) => v,
            other => panic!("expected a function, found {other:?}"),
        }
    }

    pub fn bag(&self) -> &[usize] {
        match self {
            Val::Bag(v) => v,
            other => panic!("expected a multiset, found {other:?}"),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Idx(i) => write!(f, "{i}"),
            Val::Pair(a, b) => write!(f, "({a}, {b})"),
            Val::Fun(v) => {
                f.write_str("[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Val::Bag(v) => {
                f.write_str("{")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

fn binom(n: u128, k: u128) -> Option<u128> {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// Multisets of exactly `l` elements over `n` values.
fn bags_of_len(n: u128, l: u128) -> Option<u128> {
    if l == 0 {
        return Some(1);
    }
    if n == 0 {
        return Some(0);
    }
    binom(n + l - 1, l)
}

impl Carrier {
    pub fn base(n: usize) -> Carrier {
        Carrier::Base(n)
    }

    pub fn prod(a: Carrier, b: Carrier) -> Carrier {
        Carrier::Prod(Box::new(a), Box::new(b))
    }

    pub fn func(dom: Carrier, cod: Carrier) -> Carrier {
        Carrier::Func(Box::new(dom), Box::new(cod))
    }

    pub fn bags(base: Carrier, bound: usize) -> Carrier {
        Carrier::Bags(Box::new(base), bound)
    }

    /// Exact size, or `None` past `u128`.
    pub fn size_u128(&self) -> Option<u128> {
        match self {
            Carrier::Base(n) => Some(*n as u128),
            Carrier::Prod(a, b) => a.size_u128()?.checked_mul(b.size_u128()?),
            Carrier::Func(d, c) => {
                let d = u32::try_from(d.size_u128()?).ok()?;
                c.size_u128()?.checked_pow(d)
            }
            Carrier::Bags(b, k) => {
                let n = b.size_u128()?;
                (0..=*k as u128).try_fold(0u128, |acc, l| acc.checked_add(bags_of_len(n, l)?))
            }
        }
    }

    /// Size as an index range; errors when it does not fit.
    pub fn size(&self) -> Result<usize, DialError> {
        self.size_u128()
            .and_then(|s| usize::try_from(s).ok())
            .filter(|&s| s < usize::MAX / 2)
            .ok_or(DialError::SizeExceeded {
                what: "carrier index",
                size: self.size_u128(),
            })
    }

    /// Size, refusing anything above `cap` elements.
    pub fn size_within(&self, cap: usize, what: &'static str) -> Result<usize, DialError> {
        match self.size_u128() {
            Some(s) if s <= cap as u128 => Ok(s as usize),
            s => Err(DialError::SizeExceeded { what, size: s }),
        }
    }

    pub fn encode(&self, v: &Val) -> usize {
        match (self, v) {
            (Carrier::Base(_), Val::Idx(i)) => *i,
            (Carrier::Prod(a, b), Val::Pair(x, y)) => {
                a.encode(x) * b.size().expect("encodable carrier") + b.encode(y)
            }
            (Carrier::Func(_, c), Val::Fun(vs)) => {
                let n = c.size().expect("encodable carrier");
                vs.iter().rev().fold(0, |acc, x| acc * n + c.encode(x))
            }
            (Carrier::Bags(b, _), Val::Bag(xs)) => {
                let n = b.size().expect("encodable carrier") as u128;
                let l = xs.len() as u128;
                let mut r: u128 = (0..l).map(|j| bags_of_len(n, j).unwrap()).sum();
                let mut prev = 0usize;
                for (pos, &a) in xs.iter().enumerate() {
                    let rest = l - pos as u128 - 1;
                    for v in prev..a {
                        r += bags_of_len(n - v as u128, rest).unwrap();
                    }
                    prev = a;
                }
                r as usize
            }
            _ => panic!("value {v} does not belong to carrier {self:?}"),
        }
    }

    pub fn decode(&self, i: usize) -> Val {
        match self {
            Carrier::Base(_) => Val::Idx(i),
            Carrier::Prod(a, b) => {
                let n = b.size().expect("decodable carrier");
                Val::pair(a.decode(i / n), b.decode(i % n))
            }
            Carrier::Func(d, c) => {
                let n = c.size().expect("decodable carrier");
                let m = d.size().expect("decodable carrier");
                let mut rest = i;
                let mut out = Vec::with_capacity(m);
                for _ in 0..m {
                    out.push(c.decode(rest % n));
                    rest /= n;
                }
                Val::Fun(out)
            }
            Carrier::Bags(b, _) => {
                let n = b.size().expect("decodable carrier") as u128;
                let mut r = i as u128;
                let mut l = 0u128;
                loop {
                    let c = bags_of_len(n, l).unwrap();
                    if r < c {
                        break;
                    }
                    r -= c;
                    l += 1;
                }
                let mut out = Vec::new();
                let mut v = 0usize;
                for pos in 0..l {
                    let rest = l - pos - 1;
                    loop {
                        let c = bags_of_len(n - v as u128, rest).unwrap();
                        if r < c {
                            break;
                        }
                        r -= c;
                        v += 1;
                    }
                    out.push(v);
                }
                Val::Bag(out)
            }
        }
    }

    /// Every element, in index order.
    pub fn elements(&self, cap: usize, what: &'static str) -> Result<Vec<Val>, DialError> {
        let n = self.size_within(cap, what)?;
        Ok((0..n).map(|i| self.decode(i)).collect())
    }

    /// Looks up a function value at `arg`, where `self` is the domain.
    pub fn apply<'v>(&self, f: &'v Val, arg: &Val) -> &'v Val {
        &f.entries()[self.encode(arg)]
    }
}

/// An encoder with carrier sizes precomputed, for hot loops.
#[derive(Clone, Debug)]
pub(crate) enum Codec {
    Base,
    /// Left, right, size of right.
    Prod(Box<Codec>, Box<Codec>, usize),
    /// Codomain and its size.
    Func(Box<Codec>, usize),
    Bags(Carrier),
}

impl Codec {
    /// Panics on carriers too large to index; callers size-check first.
    pub(crate) fn new(c: &Carrier) -> Codec {
        match c {
            Carrier::Base(_) => Codec::Base,
            Carrier::Prod(a, b) => Codec::Prod(
                Box::new(Codec::new(a)),
                Box::new(Codec::new(b)),
                b.size().expect("encodable carrier"),
            ),
            Carrier::Func(_, c) => {
                Codec::Func(Box::new(Codec::new(c)), c.size().expect("encodable carrier"))
            }
            Carrier::Bags(..) => Codec::Bags(c.clone()),
        }
    }

    pub(crate) fn encode(&self, v: &Val) -> usize {
        match (self, v) {
            (Codec::Base, Val::Idx(i)) => *i,
            (Codec::Prod(a, b, n), Val::Pair(x, y)) => a.encode(x) * n + b.encode(y),
            (Codec::Func(c, n), Val::Fun(vs)) => {
                vs.iter().rev().fold(0, |acc, x| acc * n + c.encode(x))
            }
            (Codec::Bags(c), v) => c.encode(v),
            _ => panic!("value {v} does not fit codec {self:?}"),
        }
    }

    pub(crate) fn apply<'v>(&self, f: &'v Val, arg: &Val) -> &'v Val {
        &f.entries()[self.encode(arg)]
    }
}

/// Sorted union of two multisets.
pub fn bag_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_carriers() -> Vec<Carrier> {
        vec![
            Carrier::base(3),
            Carrier::prod(Carrier::base(2), Carrier::base(3)),
            Carrier::func(Carrier::base(2), Carrier::base(3)),
            Carrier::bags(Carrier::base(2), 2),
            Carrier::bags(Carrier::base(3), 3),
            Carrier::func(Carrier::base(2), Carrier::bags(Carrier::base(2), 2)),
            Carrier::bags(Carrier::base(1), 0),
        ]
    }

    #[test]
    fn sizes() {
        let s: Vec<usize> = sample_carriers().iter().map(|c| c.size().unwrap()).collect();
        assert_eq!(s, vec![3, 6, 9, 6, 20, 36, 1]);
    }

    #[test]
    fn round_trip_and_order() {
        for c in sample_carriers() {
            let all = c.elements(1000, "test").unwrap();
            for (i, v) in all.iter().enumerate() {
                assert_eq!(c.encode(v), i, "{c:?} {v}");
            }
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
        let bags = Carrier::bags(Carrier::base(2), 2);
        let listed: Vec<String> = bags
            .elements(10, "test")
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(listed, vec!["{}", "{0}", "{1}", "{0,0}", "{0,1}", "{1,1}"]);
    }

    proptest! {
        #[test]
        fn bag_ranks_round_trip(n in 1usize..6, k in 0usize..5, seed in any::<u64>()) {
            let c = Carrier::bags(Carrier::base(n), k);
            let size = c.size().unwrap();
            let i = (seed % size as u64) as usize;
            prop_assert_eq!(c.encode(&c.decode(i)), i);
        }
    }

    #[test]
    fn huge_carriers_are_refused() {
        let big = Carrier::func(Carrier::base(64), Carrier::base(64));
        assert!(big.size().is_err());
        assert!(Carrier::base(10).size_within(5, "x").is_err());
    }
}
