use super::carrier::Val;
use super::object::{DialObject, Eval};
use super::{Dial, DialError};

/// `f : U → V` and `F : Y → X` as index tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DialMorphism {
    pub source: DialObject,
    pub target: DialObject,
    pub f: Vec<usize>,
    pub big_f: Vec<usize>,
}

impl DialMorphism {
    pub fn fwd(&self, u: &Val) -> Val {
        let i = self.source.u_carrier().encode(u);
        self.target.u_carrier().decode(self.f[i])
    }

    pub fn back(&self, y: &Val) -> Val {
        let i = self.target.x_carrier().encode(y);
        self.source.x_carrier().decode(self.big_f[i])
    }

    /// Index-level `F`.
    pub fn back_idx(&self, y: usize) -> usize {
        self.big_f[y]
    }
}

/// A sorted multiset, refused above `bound`.
pub(crate) fn bag(bound: usize, mut items: Vec<usize>, at: &str) -> Result<Val, DialError> {
    if items.len() > bound {
        return Err(DialError::BoundExceeded {
            bound,
            size: items.len(),
            at: at.to_string(),
        });
    }
    items.sort_unstable();
    Ok(Val::Bag(items))
}

fn mismatch(what: &str, a: &DialObject, b: &DialObject) -> DialError {
    DialError::ShapeMismatch(format!("{what}: {a} vs {b}"))
}

pub(crate) fn tensor_parts(a: &DialObject) -> Result<(&DialObject, &DialObject), DialError> {
    match a {
        DialObject::Tensor(l, r) => Ok((l, r)),
        other => Err(DialError::ShapeMismatch(format!("{other} is not a tensor"))),
    }
}

pub(crate) fn bang_parts(a: &DialObject) -> Result<(&DialObject, usize), DialError> {
    match a {
        DialObject::Bang(inner, k) => Ok((inner, *k)),
        other => Err(DialError::ShapeMismatch(format!("{other} is not a !-object"))),
    }
}

impl<'m> Dial<'m> {
    /// `None` when `(f, F)` is a morphism `a → b`, otherwise the first
    /// failing `(u, y)` in index order.
    pub fn is_morphism(
        &self,
        a: &DialObject,
        b: &DialObject,
        f: &[usize],
        big_f: &[usize],
    ) -> Result<Option<(usize, usize)>, DialError> {
        let nu = a.u_carrier().size_within(self.cap, "source U")?;
        let ny = b.x_carrier().size_within(self.cap, "target X")?;
        let nv = b.u_carrier().size()?;
        let nx = a.x_carrier().size()?;
        if f.len() != nu || big_f.len() != ny {
            return Err(DialError::ShapeMismatch(format!(
                "tables of length {}/{} for carriers {nu}/{ny}",
                f.len(),
                big_f.len()
            )));
        }
        if f.iter().any(|&v| v >= nv) || big_f.iter().any(|&x| x >= nx) {
            return Err(DialError::ShapeMismatch("table entry out of range".into()));
        }
        let us = a.u_carrier().elements(self.cap, "source U")?;
        let vc = b.u_carrier();
        let xc = a.x_carrier();
        let yc = b.x_carrier();
        let fu: Vec<Val> = f.iter().map(|&v| vc.decode(v)).collect();
        let ys: Vec<usize> = (0..ny).collect();
        let m = self.host;
        let (ea, eb) = (Eval::new(a), Eval::new(b));
        let found = self.exec.map(&ys, |&yi| {
            let y = yc.decode(yi);
            let x = xc.decode(big_f[yi]);
            us.iter()
                .enumerate()
                .find(|(ui, u)| !m.le(ea.alpha(m, u, &x), eb.alpha(m, &fu[*ui], &y)))
                .map(|(ui, _)| (ui, yi))
        });
        let mut first: Option<(usize, usize)> = None;
        for w in found.into_iter().flatten() {
            if first.is_none_or(|(u, y)| (w.0, w.1) < (u, y)) {
                first = Some(w);
            }
        }
        Ok(first)
    }

    /// Checks and wraps explicit tables.
    pub fn morphism(
        &self,
        source: &DialObject,
        target: &DialObject,
        f: Vec<usize>,
        big_f: Vec<usize>,
    ) -> Result<DialMorphism, DialError> {
        if let Some((u, y)) = self.is_morphism(source, target, &f, &big_f)? {
            return Err(DialError::NotAMorphism { u, y });
        }
        Ok(DialMorphism {
            source: source.clone(),
            target: target.clone(),
            f,
            big_f,
        })
    }

    /// Tabulates `fwd` over the source `U` and `back` over the target `X`,
    /// then checks adjointness.
    pub fn build<Fw, Bk>(
        &self,
        source: &DialObject,
        target: &DialObject,
        fwd: Fw,
        back: Bk,
    ) -> Result<DialMorphism, DialError>
    where
        Fw: Fn(&Val) -> Result<Val, DialError> + Sync + Send,
        Bk: Fn(&Val) -> Result<Val, DialError> + Sync + Send,
    {
        let vc = target.u_carrier();
        let xc = source.x_carrier();
        vc.size()?;
        xc.size()?;
        let us = source.u_carrier().elements(self.cap, "source U")?;
        let ys = target.x_carrier().elements(self.cap, "target X")?;
        let f = us
            .iter()
            .map(|u| fwd(u).map(|v| vc.encode(&v)))
            .collect::<Result<Vec<_>, _>>()?;
        let big_f = self
            .exec
            .map(&ys, |y| back(y).map(|x| xc.encode(&x)))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        self.morphism(source, target, f, big_f)
    }

    pub fn id(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        let nu = a.u_carrier().size_within(self.cap, "U carrier")?;
        let nx = a.x_carrier().size_within(self.cap, "X carrier")?;
        self.morphism(a, a, (0..nu).collect(), (0..nx).collect())
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &DialMorphism, f: &DialMorphism) -> Result<DialMorphism, DialError> {
        if f.target != g.source {
            return Err(mismatch("compose", &f.target, &g.source));
        }
        let fw = f.f.iter().map(|&v| g.f[v]).collect();
        let bk = g.big_f.iter().map(|&y| f.big_f[y]).collect();
        self.morphism(&f.source, &g.target, fw, bk)
    }

    pub fn tensor_mor(&self, f: &DialMorphism, g: &DialMorphism) -> Result<DialMorphism, DialError> {
        let src = self.tensor_obj(&f.source, &g.source)?;
        let tgt = self.tensor_obj(&f.target, &g.target)?;
        let ua = f.source.u_carrier().elements(self.cap, "U carrier")?;
        let ub = g.source.u_carrier().elements(self.cap, "U carrier")?;
        let uc = f.target.u_carrier();
        let ud = g.target.u_carrier();
        self.build(
            &src,
            &tgt,
            |u| {
                let (a, b) = u.split();
                Ok(Val::pair(f.fwd(a), g.fwd(b)))
            },
            |x| {
                let (h, k) = x.split();
                let h2 = ub.iter().map(|v| f.back(ud.apply(h, &g.fwd(v)))).collect();
                let k2 = ua.iter().map(|u| g.back(uc.apply(k, &f.fwd(u)))).collect();
                Ok(Val::pair(Val::Fun(h2), Val::Fun(k2)))
            },
        )
    }

    /// `λ : I ⊗ A → A`.
    pub fn left_unitor(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        let src = self.tensor_obj(&DialObject::Unit, a)?;
        let nu = a.u_carrier().size_within(self.cap, "U carrier")?;
        self.build(
            &src,
            a,
            |u| Ok(u.split().1.clone()),
            |x| Ok(Val::pair(Val::Fun(vec![Val::Idx(0); nu]), Val::Fun(vec![x.clone()]))),
        )
    }

    pub fn left_unitor_inv(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        let tgt = self.tensor_obj(&DialObject::Unit, a)?;
        self.build(
            a,
            &tgt,
            |u| Ok(Val::pair(Val::Idx(0), u.clone())),
            |x| Ok(x.split().1.entries()[0].clone()),
        )
    }

    /// `ρ : A ⊗ I → A`.
    pub fn right_unitor(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        let src = self.tensor_obj(a, &DialObject::Unit)?;
        let nu = a.u_carrier().size_within(self.cap, "U carrier")?;
        self.build(
            &src,
            a,
            |u| Ok(u.split().0.clone()),
            |x| Ok(Val::pair(Val::Fun(vec![x.clone()]), Val::Fun(vec![Val::Idx(0); nu]))),
        )
    }

    pub fn right_unitor_inv(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        let tgt = self.tensor_obj(a, &DialObject::Unit)?;
        self.build(
            a,
            &tgt,
            |u| Ok(Val::pair(u.clone(), Val::Idx(0))),
            |x| Ok(x.split().0.entries()[0].clone()),
        )
    }

    /// `(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`.
    pub fn associator(
        &self,
        a: &DialObject,
        b: &DialObject,
        c: &DialObject,
    ) -> Result<DialMorphism, DialError> {
        let ab = self.tensor_obj(a, b)?;
        let bc = self.tensor_obj(b, c)?;
        let src = self.tensor_obj(&ab, c)?;
        let tgt = self.tensor_obj(a, &bc)?;
        let ua = a.u_carrier().elements(self.cap, "U carrier")?;
        let ub = b.u_carrier().elements(self.cap, "U carrier")?;
        let uc = c.u_carrier().elements(self.cap, "U carrier")?;
        let ubc = bc.u_carrier();
        let ca = a.u_carrier();
        let cb = b.u_carrier();
        let cc = c.u_carrier();
        self.build(
            &src,
            &tgt,
            |u| {
                let (uv, w) = u.split();
                let (u, v) = uv.split();
                Ok(Val::pair(u.clone(), Val::pair(v.clone(), w.clone())))
            },
            |x| {
                let (r, s) = x.split();
                let p = uc
                    .iter()
                    .map(|w| {
                        let h = ub
                            .iter()
                            .map(|v| ubc.apply(r, &Val::pair(v.clone(), w.clone())).clone())
                            .collect();
                        let k = ua
                            .iter()
                            .map(|u| cc.apply(ca.apply(s, u).split().0, w).clone())
                            .collect();
                        Val::pair(Val::Fun(h), Val::Fun(k))
                    })
                    .collect();
                let mut q = Vec::new();
                for u in &ua {
                    for v in &ub {
                        q.push(cb.apply(ca.apply(s, u).split().1, v).clone());
                    }
                }
                Ok(Val::pair(Val::Fun(p), Val::Fun(q)))
            },
        )
    }

    /// `A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C`.
    pub fn associator_inv(
        &self,
        a: &DialObject,
        b: &DialObject,
        c: &DialObject,
    ) -> Result<DialMorphism, DialError> {
        let ab = self.tensor_obj(a, b)?;
        let bc = self.tensor_obj(b, c)?;
        let src = self.tensor_obj(a, &bc)?;
        let tgt = self.tensor_obj(&ab, c)?;
        let ua = a.u_carrier().elements(self.cap, "U carrier")?;
        let ub = b.u_carrier().elements(self.cap, "U carrier")?;
        let uc = c.u_carrier().elements(self.cap, "U carrier")?;
        let uab = ab.u_carrier();
        let ca = a.u_carrier();
        let cb = b.u_carrier();
        let cc = c.u_carrier();
        self.build(
            &src,
            &tgt,
            |u| {
                let (u, vw) = u.split();
                let (v, w) = vw.split();
                Ok(Val::pair(Val::pair(u.clone(), v.clone()), w.clone()))
            },
            |x| {
                let (p, q) = x.split();
                let mut r = Vec::new();
                for v in &ub {
                    for w in &uc {
                        r.push(cb.apply(cc.apply(p, w).split().0, v).clone());
                    }
                }
                let s = ua
                    .iter()
                    .map(|u| {
                        let h = uc
                            .iter()
                            .map(|w| ca.apply(cc.apply(p, w).split().1, u).clone())
                            .collect();
                        let k = ub
                            .iter()
                            .map(|v| uab.apply(q, &Val::pair(u.clone(), v.clone())).clone())
                            .collect();
                        Val::pair(Val::Fun(h), Val::Fun(k))
                    })
                    .collect();
                Ok(Val::pair(Val::Fun(r), Val::Fun(s)))
            },
        )
    }

    /// `Hom(A ⊗ B, C) → Hom(B, A ⇀ C)`.
    pub fn curry_r(&self, m: &DialMorphism) -> Result<DialMorphism, DialError> {
        let (a, b) = tensor_parts(&m.source)?;
        let c = &m.target;
        let tgt = self.hom_r(a, c)?;
        let ua = a.u_carrier().elements(self.cap, "U carrier")?;
        let zs = c.x_carrier().elements(self.cap, "X carrier")?;
        let cb = b.u_carrier();
        let ca = a.u_carrier();
        let backs: Vec<Val> = zs.iter().map(|z| m.back(z)).collect();
        self.build(
            b,
            &tgt,
            |v| {
                let g = ua.iter().map(|u| m.fwd(&Val::pair(u.clone(), v.clone()))).collect();
                let gg = backs.iter().map(|hk| cb.apply(hk.split().0, v).clone()).collect();
                Ok(Val::pair(Val::Fun(g), Val::Fun(gg)))
            },
            |x| {
                let (u, z) = x.split();
                let hk = &backs[c.x_carrier().encode(z)];
                Ok(ca.apply(hk.split().1, u).clone())
            },
        )
    }

    /// `Hom(B, A ⇀ C) → Hom(A ⊗ B, C)`.
    pub fn uncurry_r(&self, n: &DialMorphism) -> Result<DialMorphism, DialError> {
        let (a, c) = match &n.target {
            DialObject::HomR(a, c) => (a.as_ref(), c.as_ref()),
            other => return Err(DialError::ShapeMismatch(format!("{other} is not A -> C"))),
        };
        let b = &n.source;
        let src = self.tensor_obj(a, b)?;
        let ua = a.u_carrier().elements(self.cap, "U carrier")?;
        let ub = b.u_carrier().elements(self.cap, "U carrier")?;
        let ca = a.u_carrier();
        let cz = c.x_carrier();
        let images: Vec<Val> = ub.iter().map(|v| n.fwd(v)).collect();
        self.build(
            &src,
            c,
            |uv| {
                let (u, v) = uv.split();
                let g = &images[b.u_carrier().encode(v)];
                Ok(ca.apply(g.split().0, u).clone())
            },
            |z| {
                let h = images.iter().map(|g| cz.apply(g.split().1, z).clone()).collect();
                let k = ua.iter().map(|u| n.back(&Val::pair(u.clone(), z.clone()))).collect();
                Ok(Val::pair(Val::Fun(h), Val::Fun(k)))
            },
        )
    }

    /// `Hom(A ⊗ B, C) → Hom(A, C ↼ B)`.
    pub fn curry_l(&self, m: &DialMorphism) -> Result<DialMorphism, DialError> {
        let (a, b) = tensor_parts(&m.source)?;
        let c = &m.target;
        let tgt = self.hom_l(c, b)?;
        let ub = b.u_carrier().elements(self.cap, "U carrier")?;
        let zs = c.x_carrier().elements(self.cap, "X carrier")?;
        let ca = a.u_carrier();
        let cb = b.u_carrier();
        let backs: Vec<Val> = zs.iter().map(|z| m.back(z)).collect();
        self.build(
            a,
            &tgt,
            |u| {
                let g = ub.iter().map(|v| m.fwd(&Val::pair(u.clone(), v.clone()))).collect();
                let gg = backs.iter().map(|hk| ca.apply(hk.split().1, u).clone()).collect();
                Ok(Val::pair(Val::Fun(g), Val::Fun(gg)))
            },
            |x| {
                let (v, z) = x.split();
                let hk = &backs[c.x_carrier().encode(z)];
                Ok(cb.apply(hk.split().0, v).clone())
            },
        )
    }

    /// `Hom(A, C ↼ B) → Hom(A ⊗ B, C)`.
    pub fn uncurry_l(&self, n: &DialMorphism) -> Result<DialMorphism, DialError> {
        let (c, b) = match &n.target {
            DialObject::HomL(c, b) => (c.as_ref(), b.as_ref()),
            other => return Err(DialError::ShapeMismatch(format!("{other} is not C <- B"))),
        };
        let a = &n.source;
        let src = self.tensor_obj(a, b)?;
        let ua = a.u_carrier().elements(self.cap, "U carrier")?;
        let ub = b.u_carrier().elements(self.cap, "U carrier")?;
        let cb = b.u_carrier();
        let cz = c.x_carrier();
        let images: Vec<Val> = ua.iter().map(|u| n.fwd(u)).collect();
        self.build(
            &src,
            c,
            |uv| {
                let (u, v) = uv.split();
                let g = &images[a.u_carrier().encode(u)];
                Ok(cb.apply(g.split().0, v).clone())
            },
            |z| {
                let h = ub.iter().map(|v| n.back(&Val::pair(v.clone(), z.clone()))).collect();
                let k = images.iter().map(|g| cz.apply(g.split().1, z).clone()).collect();
                Ok(Val::pair(Val::Fun(h), Val::Fun(k)))
            },
        )
    }

    /// `A ⇀ k : (A ⇀ C) → (A ⇀ C')`.
    pub fn hom_r_post(&self, a: &DialObject, k: &DialMorphism) -> Result<DialMorphism, DialError> {
        let src = self.hom_r(a, &k.source)?;
        let tgt = self.hom_r(a, &k.target)?;
        self.hom_post(&src, &tgt, a, k)
    }

    /// `k ↼ B : (C ↼ B) → (C' ↼ B)`.
    pub fn hom_l_post(&self, k: &DialMorphism, b: &DialObject) -> Result<DialMorphism, DialError> {
        let src = self.hom_l(&k.source, b)?;
        let tgt = self.hom_l(&k.target, b)?;
        self.hom_post(&src, &tgt, b, k)
    }

    fn hom_post(
        &self,
        src: &DialObject,
        tgt: &DialObject,
        arg: &DialObject,
        k: &DialMorphism,
    ) -> Result<DialMorphism, DialError> {
        let us = arg.u_carrier().elements(self.cap, "U carrier")?;
        let zs = k.target.x_carrier().elements(self.cap, "X carrier")?;
        let cu = arg.u_carrier();
        let cz = k.source.x_carrier();
        self.build(
            src,
            tgt,
            |gg| {
                let (g, big_g) = gg.split();
                let g2 = us.iter().map(|u| k.fwd(cu.apply(g, u))).collect();
                let gg2 = zs.iter().map(|z| cz.apply(big_g, &k.back(z)).clone()).collect();
                Ok(Val::pair(Val::Fun(g2), Val::Fun(gg2)))
            },
            |x| {
                let (u, z) = x.split();
                Ok(Val::pair(u.clone(), k.back(z)))
            },
        )
    }

    /// Reuses `f`'s tables between `κA` and `κB`.
    pub fn kappa_mor(&self, f: &DialMorphism) -> Result<DialMorphism, DialError> {
        let src = self.kappa_obj(&f.source)?;
        let tgt = self.kappa_obj(&f.target)?;
        self.morphism(&src, &tgt, f.f.clone(), f.big_f.clone())
    }

    fn same_tables(&self, src: &DialObject, tgt: &DialObject) -> Result<DialMorphism, DialError> {
        let nu = src.u_carrier().size_within(self.cap, "U carrier")?;
        let nx = src.x_carrier().size_within(self.cap, "X carrier")?;
        self.morphism(src, tgt, (0..nu).collect(), (0..nx).collect())
    }

    /// `ε : κA → A`.
    pub fn eps_kappa(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        self.same_tables(&self.kappa_obj(a)?, a)
    }

    /// `δ : κA → κκA`.
    pub fn delta_kappa(&self, a: &DialObject) -> Result<DialMorphism, DialError> {
        let ka = self.kappa_obj(a)?;
        let kka = self.kappa_obj(&ka)?;
        self.same_tables(&ka, &kka)
    }

    fn swap(&self, src: &DialObject, tgt: &DialObject) -> Result<DialMorphism, DialError> {
        self.build(
            src,
            tgt,
            |u| {
                let (a, b) = u.split();
                Ok(Val::pair(b.clone(), a.clone()))
            },
            |x| {
                let (h, k) = x.split();
                Ok(Val::pair(k.clone(), h.clone()))
            },
        )
    }

    /// `βL : κA ⊗ B → B ⊗ κA`.
    pub fn beta_l(&self, a: &DialObject, b: &DialObject) -> Result<DialMorphism, DialError> {
        let ka = self.kappa_obj(a)?;
        self.swap(&self.tensor_obj(&ka, b)?, &self.tensor_obj(b, &ka)?)
    }

    /// `βR : A ⊗ κB → κB ⊗ A`.
    pub fn beta_r(&self, a: &DialObject, b: &DialObject) -> Result<DialMorphism, DialError> {
        let kb = self.kappa_obj(b)?;
        self.swap(&self.tensor_obj(a, &kb)?, &self.tensor_obj(&kb, a)?)
    }

    /// `!f : !_k A → !_k B`; `F` acts elementwise on multisets.
    pub fn bang_mor(&self, f: &DialMorphism, bound: usize) -> Result<DialMorphism, DialError> {
        let src = self.bang_obj(&f.source, bound)?;
        let tgt = self.bang_obj(&f.target, bound)?;
        let us = f.source.u_carrier().elements(self.cap, "U carrier")?;
        let cv = f.target.u_carrier();
        self.build(
            &src,
            &tgt,
            |u| Ok(f.fwd(u)),
            |psi| {
                let phi = us
                    .iter()
                    .map(|u| {
                        let ys = cv.apply(psi, &f.fwd(u)).bag();
                        bag(bound, ys.iter().map(|&y| f.big_f[y]).collect(), "!f")
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Val::Fun(phi))
            },
        )
    }

    /// `ε : !_k A → A`, sending `x` to the constant singleton.
    pub fn eps_bang(&self, a: &DialObject, bound: usize) -> Result<DialMorphism, DialError> {
        let src = self.bang_obj(a, bound)?;
        let nu = a.u_carrier().size_within(self.cap, "U carrier")?;
        let xc = a.x_carrier();
        self.build(
            &src,
            a,
            |u| Ok(u.clone()),
            |x| {
                let single = bag(bound, vec![xc.encode(x)], "eps")?;
                Ok(Val::Fun(vec![single; nu]))
            },
        )
    }

    /// `δ : !_{kj} A → !_k !_j A`, flattening multisets of multisets.
    pub fn delta_bang(&self, a: &DialObject, k: usize, j: usize) -> Result<DialMorphism, DialError> {
        let src = self.bang_obj(a, k * j)?;
        let inner = self.bang_obj(a, j)?;
        let tgt = self.bang_obj(&inner, k)?;
        let us = a.u_carrier().elements(self.cap, "U carrier")?;
        let cu = a.u_carrier();
        let cx = inner.x_carrier();
        self.build(
            &src,
            &tgt,
            |u| Ok(u.clone()),
            |big_phi| {
                let phi = us
                    .iter()
                    .map(|u| {
                        let mut items = Vec::new();
                        for &xi in cu.apply(big_phi, u).bag() {
                            items.extend_from_slice(cu.apply(&cx.decode(xi), u).bag());
                        }
                        bag(k * j, items, "delta")
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Val::Fun(phi))
            },
        )
    }

    /// `e : !_k A → I`.
    pub fn e_arrow(&self, a: &DialObject, bound: usize) -> Result<DialMorphism, DialError> {
        let src = self.bang_obj(a, bound)?;
        let nu = a.u_carrier().size_within(self.cap, "U carrier")?;
        self.build(
            &src,
            &DialObject::Unit,
            |_| Ok(Val::Idx(0)),
            |_| Ok(Val::Fun(vec![Val::Bag(vec![]); nu])),
        )
    }

    /// `d : !_{2k} A → !_k A ⊗ !_k A`.
    pub fn d_arrow(&self, a: &DialObject, k: usize) -> Result<DialMorphism, DialError> {
        let src = self.bang_obj(a, 2 * k)?;
        let half = self.bang_obj(a, k)?;
        let tgt = self.tensor_obj(&half, &half)?;
        let us = a.u_carrier().elements(self.cap, "U carrier")?;
        let cu = a.u_carrier();
        self.build(
            &src,
            &tgt,
            |u| Ok(Val::pair(u.clone(), u.clone())),
            |x| {
                let (h, kk) = x.split();
                let phi = us
                    .iter()
                    .map(|u| {
                        let mut items = cu.apply(cu.apply(h, u), u).bag().to_vec();
                        items.extend_from_slice(cu.apply(cu.apply(kk, u), u).bag());
                        bag(2 * k, items, "d")
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Val::Fun(phi))
            },
        )
    }

    /// `!_k A → !_j A` for `j ≤ k`: multisets are included unchanged.
    pub fn bang_incl(&self, a: &DialObject, k: usize, j: usize) -> Result<DialMorphism, DialError> {
        let src = self.bang_obj(a, k)?;
        let tgt = self.bang_obj(a, j)?;
        self.build(&src, &tgt, |u| Ok(u.clone()), |x| {
            for b in x.entries() {
                bag(k, b.bag().to_vec(), "inclusion")?;
            }
            Ok(x.clone())
        })
    }
}
