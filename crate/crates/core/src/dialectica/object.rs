use std::fmt;

use super::carrier::{Carrier, Codec, Val};
use crate::algebra::FinBiclosedPoset;

/// A dialectica object `(U, X, α)` over a host poset supplied by [`super::Dial`].
///
/// Composite objects keep their structure; `α` is evaluated on demand from
/// the components, so only the carriers a computation enumerates get
/// tabulated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DialObject {
    /// `alpha[u * x + x']` for `u < u`, `x' < x`.
    Base { u: usize, x: usize, alpha: Vec<usize> },
    Unit,
    Tensor(Box<DialObject>, Box<DialObject>),
    /// `A ⇀ B`. Fields: argument, result.
    HomR(Box<DialObject>, Box<DialObject>),
    /// `B ↼ A`. Fields: result, argument.
    HomL(Box<DialObject>, Box<DialObject>),
    Kappa(Box<DialObject>),
    /// `!A` with multisets truncated at the bound.
    Bang(Box<DialObject>, usize),
}

impl DialObject {
    pub fn u_carrier(&self) -> Carrier {
        match self {
            DialObject::Base { u, .. } => Carrier::base(*u),
            DialObject::Unit => Carrier::base(1),
            DialObject::Tensor(a, b) => Carrier::prod(a.u_carrier(), b.u_carrier()),
            DialObject::HomR(a, b) | DialObject::HomL(b, a) => Carrier::prod(
                Carrier::func(a.u_carrier(), b.u_carrier()),
                Carrier::func(b.x_carrier(), a.x_carrier()),
            ),
            DialObject::Kappa(a) | DialObject::Bang(a, _) => a.u_carrier(),
        }
    }

    pub fn x_carrier(&self) -> Carrier {
        match self {
            DialObject::Base { x, .. } => Carrier::base(*x),
            DialObject::Unit => Carrier::base(1),
            DialObject::Tensor(a, b) => Carrier::prod(
                Carrier::func(b.u_carrier(), a.x_carrier()),
                Carrier::func(a.u_carrier(), b.x_carrier()),
            ),
            DialObject::HomR(a, b) | DialObject::HomL(b, a) => {
                Carrier::prod(a.u_carrier(), b.x_carrier())
            }
            DialObject::Kappa(a) => a.x_carrier(),
            DialObject::Bang(a, k) => {
                Carrier::func(a.u_carrier(), Carrier::bags(a.x_carrier(), *k))
            }
        }
    }

    /// `α(u, x)`. Panics if a κ-object is evaluated on a host without κ;
    /// [`super::Dial`] refuses to build those.
    pub fn alpha(&self, m: &FinBiclosedPoset, u: &Val, x: &Val) -> usize {
        match self {
            DialObject::Base { x: nx, alpha, .. } => alpha[u.idx() * nx + x.idx()],
            DialObject::Unit => m.unit,
            DialObject::Tensor(a, b) => {
                let (ua, ub) = u.split();
                let (h, k) = x.split();
                let l = a.alpha(m, ua, b.u_carrier().apply(h, ub));
                let r = b.alpha(m, ub, a.u_carrier().apply(k, ua));
                m.mul(l, r)
            }
            DialObject::HomR(a, b) => {
                let (p, q) = hom_parts(m, a, b, u, x);
                m.rres[p][q]
            }
            DialObject::HomL(b, a) => {
                let (p, q) = hom_parts(m, a, b, u, x);
                m.lres[p][q]
            }
            DialObject::Kappa(a) => {
                let k = m.kappa.as_ref().expect("host has a kappa table");
                k[a.alpha(m, u, x)]
            }
            DialObject::Bang(a, _) => {
                let xs = a.x_carrier();
                let bag = a.u_carrier().apply(x, u);
                bag.bag()
                    .iter()
                    .fold(m.unit, |acc, &i| m.mul(acc, a.alpha(m, u, &xs.decode(i))))
            }
        }
    }

    /// Whether any subobject is a κ-object.
    pub fn uses_kappa(&self) -> bool {
        match self {
            DialObject::Base { .. } | DialObject::Unit => false,
            DialObject::Kappa(_) => true,
            DialObject::Bang(a, _) => a.uses_kappa(),
            DialObject::Tensor(a, b) | DialObject::HomR(a, b) | DialObject::HomL(a, b) => {
                a.uses_kappa() || b.uses_kappa()
            }
        }
    }

    pub fn uses_bang(&self) -> bool {
        match self {
            DialObject::Base { .. } | DialObject::Unit => false,
            DialObject::Bang(..) => true,
            DialObject::Kappa(a) => a.uses_bang(),
            DialObject::Tensor(a, b) | DialObject::HomR(a, b) | DialObject::HomL(a, b) => {
                a.uses_bang() || b.uses_bang()
            }
        }
    }
}

/// `(α(u, G y), β(g u, y))` for an element `(g, G)` of a hom object at `(u, y)`.
/// `α` with the carrier codecs of every subobject built once.
pub(crate) enum Eval<'o> {
    Base { nx: usize, alpha: &'o [usize] },
    Unit,
    Tensor { a: Box<Eval<'o>>, b: Box<Eval<'o>>, ua: Codec, ub: Codec },
    Hom { right: bool, a: Box<Eval<'o>>, b: Box<Eval<'o>>, ua: Codec, xb: Codec },
    Kappa(Box<Eval<'o>>),
    Bang { a: Box<Eval<'o>>, ua: Codec, xa: Carrier },
}

impl<'o> Eval<'o> {
    pub(crate) fn new(o: &'o DialObject) -> Eval<'o> {
        let sub = |a: &'o DialObject| Box::new(Eval::new(a));
        match o {
            DialObject::Base { x, alpha, .. } => Eval::Base { nx: *x, alpha },
            DialObject::Unit => Eval::Unit,
            DialObject::Tensor(a, b) => Eval::Tensor {
                a: sub(a),
                b: sub(b),
                ua: Codec::new(&a.u_carrier()),
                ub: Codec::new(&b.u_carrier()),
            },
            DialObject::HomR(a, b) | DialObject::HomL(b, a) => Eval::Hom {
                right: matches!(o, DialObject::HomR(..)),
                a: sub(a),
                b: sub(b),
                ua: Codec::new(&a.u_carrier()),
                xb: Codec::new(&b.x_carrier()),
            },
            DialObject::Kappa(a) => Eval::Kappa(sub(a)),
            DialObject::Bang(a, _) => Eval::Bang {
                a: sub(a),
                ua: Codec::new(&a.u_carrier()),
                xa: a.x_carrier(),
            },
        }
    }

    pub(crate) fn alpha(&self, m: &FinBiclosedPoset, u: &Val, x: &Val) -> usize {
        match self {
            Eval::Base { nx, alpha } => alpha[u.idx() * nx + x.idx()],
            Eval::Unit => m.unit,
            Eval::Tensor { a, b, ua, ub } => {
                let (u1, u2) = u.split();
                let (h, k) = x.split();
                m.mul(a.alpha(m, u1, ub.apply(h, u2)), b.alpha(m, u2, ua.apply(k, u1)))
            }
            Eval::Hom { right, a, b, ua, xb } => {
                let (g, big_g) = u.split();
                let (u1, y) = x.split();
                let p = a.alpha(m, u1, xb.apply(big_g, y));
                let q = b.alpha(m, ua.apply(g, u1), y);
                if *right {
                    m.rres[p][q]
                } else {
                    m.lres[p][q]
                }
            }
            Eval::Kappa(a) => {
                let k = m.kappa.as_ref().expect("host has a kappa table");
                k[a.alpha(m, u, x)]
            }
            Eval::Bang { a, ua, xa } => ua
                .apply(x, u)
                .bag()
                .iter()
                .fold(m.unit, |acc, &i| m.mul(acc, a.alpha(m, u, &xa.decode(i)))),
        }
    }
}

fn hom_parts(
    m: &FinBiclosedPoset,
    a: &DialObject,
    b: &DialObject,
    gg: &Val,
    x: &Val,
) -> (usize, usize) {
    let (g, big_g) = gg.split();
    let (u, y) = x.split();
    let p = a.alpha(m, u, b.x_carrier().apply(big_g, y));
    let q = b.alpha(m, a.u_carrier().apply(g, u), y);
    (p, q)
}

impl fmt::Display for DialObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DialObject::Base { u, x, .. } => write!(f, "base[{u}x{x}]"),
            DialObject::Unit => f.write_str("I"),
            DialObject::Tensor(a, b) => write!(f, "({a} * {b})"),
            DialObject::HomR(a, b) => write!(f, "({a} -> {b})"),
            DialObject::HomL(b, a) => write!(f, "({b} <- {a})"),
            DialObject::Kappa(a) => write!(f, "k{a}"),
            DialObject::Bang(a, k) => write!(f, "!{k}{a}"),
        }
    }
}
