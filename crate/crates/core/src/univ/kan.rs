use std::collections::HashMap;

use super::set::{compatible_families, set_quotient, Quotient};
use super::UnivError;
use crate::base::Adjunction;
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::{
    all_bridges, comma_category, compose_passages, vertical_compose, whisker_left, Bridge, CatError, Category,
    FinCategory, HomSets, MorId, ObjId, Passage, SetCat,
};

/// Set-valued functors on a fixed finite category and the natural
/// transformations between them.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunctors {
    pub shape: FinCategory,
}

impl Category for SetFunctors {
    type Obj = Passage<SetCat>;
    type Mor = Bridge<SetCat>;

    fn source(&self, m: &Bridge<SetCat>) -> Passage<SetCat> {
        m.source().clone()
    }

    fn target(&self, m: &Bridge<SetCat>) -> Passage<SetCat> {
        m.target().clone()
    }

    fn identity(&self, x: &Passage<SetCat>) -> Bridge<SetCat> {
        Bridge::identity(x)
    }

    fn compose(&self, f: &Bridge<SetCat>, g: &Bridge<SetCat>) -> Option<Bridge<SetCat>> {
        vertical_compose(f, g).ok()
    }
}

impl HomSets for SetFunctors {
    fn hom(&self, a: &Passage<SetCat>, b: &Passage<SetCat>) -> Result<Vec<Bridge<SetCat>>, CatError> {
        all_bridges(a, b)
    }
}

impl SetFunctors {
    /// Every functor into Set whose object images are the standard sets
    /// `{0, …, k-1}` with `k ≤ max`.
    pub fn all_bounded(&self, max: usize) -> Vec<Passage<SetCat>> {
        let c = &self.shape;
        let sets: Vec<FinSet> = (0..=max).map(|k| FinSet::atoms((0..k).map(|i| i.to_string()))).collect();
        let mut out = Vec::new();
        let sizes: Vec<Vec<usize>> = vec![(0..=max).collect(); c.n_objects()];
        for choice in crate::elem::product_choices(&sizes) {
            let objs: Vec<FinSet> = choice.iter().map(|&k| sets[k].clone()).collect();
            let options: Vec<Vec<SetFn>> = c
                .morphisms()
                .map(|m| {
                    let (a, b) = (&objs[c.src(m).0], &objs[c.tgt(m).0]);
                    if c.is_identity(m) {
                        vec![SetFn::identity(a)]
                    } else {
                        SetFn::all(a, b)
                    }
                })
                .collect();
            for mors in crate::elem::product_choices(&options) {
                if let Ok(p) = Passage::new(c.clone(), SetCat, objs.clone(), mors) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// A natural isomorphism between two Set functors, if one exists.
pub fn natural_iso(a: &Passage<SetCat>, b: &Passage<SetCat>) -> Result<Option<Bridge<SetCat>>, CatError> {
    Ok(all_bridges(a, b)?
        .into_iter()
        .find(|br| br.components().iter().all(|f| f.is_injective() && f.dom().len() == f.cod().len())))
}

#[derive(Debug, Clone)]
enum Pointwise {
    /// Per `c1`: the quotient over `(K ↓ c1)`.
    Left(Vec<Quotient>),
    /// Per `c1`: the families over `(c1 ↓ K)`.
    Right,
}

/// A pointwise Kan extension of `S: C2 → Set` along `K: C2 → C1`.
///
/// For `lan`, `bridge` is the unit `η: S ⇒ K ; lan`; for `ran` it is the
/// counit `ε: K ; ran ⇒ S`.
#[derive(Debug, Clone)]
pub struct KanExtension {
    pub along: Passage<FinCategory>,
    pub diagram: Passage<SetCat>,
    pub extension: Passage<SetCat>,
    pub bridge: Bridge<SetCat>,
    /// Per `c1`: comma object index by `(c2, u)`, and the comma objects.
    index: Vec<HashMap<(ObjId, MorId), usize>>,
    commas: Vec<Vec<(ObjId, MorId)>>,
    data: Pointwise,
}

fn commas(k: &Passage<FinCategory>, left: bool) -> Result<Vec<crate::fincat::Comma<FinCategory>>, CatError> {
    let c1 = k.target();
    c1.objects()
        .map(|c| {
            let point = Passage::constant(FinCategory::terminal(), c1.clone(), c);
            if left {
                comma_category(k, &point)
            } else {
                comma_category(&point, k)
            }
        })
        .collect()
}

/// `lan_K S`, pointwise as the colimit over `(K ↓ c1)`.
pub fn lan(k: &Passage<FinCategory>, s: &Passage<SetCat>) -> Result<KanExtension, UnivError> {
    if k.source() != s.source() {
        return Err(CatError::EndpointMismatch("S and K have different sources".into()).into());
    }
    let c1 = k.target();
    let cs = commas(k, true)?;
    let mut quotients = Vec::new();
    let mut index = Vec::new();
    let mut objs = Vec::new();
    for comma in &cs {
        quotients.push(set_quotient(&compose_passages(&comma.left, s)?));
        let o: Vec<(ObjId, MorId)> = comma.objects.iter().map(|(c2, _, u)| (*c2, *u)).collect();
        index.push(o.iter().enumerate().map(|(j, p)| (*p, j)).collect::<HashMap<_, _>>());
        objs.push(o);
    }
    let objects: Vec<FinSet> = quotients.iter().map(|q| q.classes.clone()).collect();
    let morphisms = c1
        .morphisms()
        .map(|w| {
            let (a, b) = (c1.src(w).0, c1.tgt(w).0);
            let q = &quotients[a];
            SetFn::from_fn(q.classes.clone(), quotients[b].classes.clone(), |e| {
                let (j, x) = &q.origin[e];
                let (c2, u) = objs[a][j.0];
                let j2 = index[b][&(c2, c1.comp(u, w).expect("composable"))];
                let xi = s.obj(c2).index_of(x).expect("element");
                quotients[b].rep[j2][xi].clone()
            })
            .expect("classes")
        })
        .collect();
    let extension = Passage::new(c1.clone(), SetCat, objects, morphisms)?;
    let unit = k
        .source()
        .objects()
        .map(|c2| {
            let kc = k.obj(c2).0;
            let j = index[kc][&(c2, c1.id(*k.obj(c2)))];
            SetFn::from_images_unchecked(s.obj(c2).clone(), quotients[kc].classes.clone(), quotients[kc].rep[j].clone())
        })
        .collect();
    let bridge = Bridge::new(s.clone(), compose_passages(k, &extension)?, unit)?;
    Ok(KanExtension {
        along: k.clone(),
        diagram: s.clone(),
        extension,
        bridge,
        index,
        commas: objs,
        data: Pointwise::Left(quotients),
    })
}

/// `ran_K S`, pointwise as the limit over `(c1 ↓ K)`.
pub fn ran(k: &Passage<FinCategory>, s: &Passage<SetCat>) -> Result<KanExtension, UnivError> {
    if k.source() != s.source() {
        return Err(CatError::EndpointMismatch("S and K have different sources".into()).into());
    }
    let c1 = k.target();
    let cs = commas(k, false)?;
    let mut objects = Vec::new();
    let mut index = Vec::new();
    let mut objs = Vec::new();
    for comma in &cs {
        let fams = compatible_families(&compose_passages(&comma.right, s)?);
        objects.push(fams.into_iter().map(Elem::Tuple).collect::<FinSet>());
        let o: Vec<(ObjId, MorId)> = comma.objects.iter().map(|(_, c2, u)| (*c2, *u)).collect();
        index.push(o.iter().enumerate().map(|(j, p)| (*p, j)).collect::<HashMap<_, _>>());
        objs.push(o);
    }
    let morphisms = c1
        .morphisms()
        .map(|w| {
            let (a, b) = (c1.src(w).0, c1.tgt(w).0);
            SetFn::from_fn(objects[a].clone(), objects[b].clone(), |fam| {
                let xs = fam.as_tuple().expect("family");
                Elem::Tuple(
                    objs[b].iter().map(|&(c2, u)| xs[index[a][&(c2, c1.comp(w, u).expect("composable"))]].clone()).collect(),
                )
            })
            .expect("families map to families")
        })
        .collect();
    let extension = Passage::new(c1.clone(), SetCat, objects, morphisms)?;
    let counit = k
        .source()
        .objects()
        .map(|c2| {
            let kc = k.obj(c2).0;
            let j = index[kc][&(c2, c1.id(*k.obj(c2)))];
            SetFn::from_fn(extension.obj(*k.obj(c2)).clone(), s.obj(c2).clone(), |fam| {
                fam.as_tuple().expect("family")[j].clone()
            })
            .expect("projection")
        })
        .collect();
    let bridge = Bridge::new(compose_passages(k, &extension)?, s.clone(), counit)?;
    Ok(KanExtension { along: k.clone(), diagram: s.clone(), extension, bridge, index, commas: objs, data: Pointwise::Right })
}

impl KanExtension {
    pub fn is_left(&self) -> bool {
        matches!(self.data, Pointwise::Left(_))
    }

    /// The universal factorization. For `lan`, `α: S ⇒ K ; S1` gives the
    /// unique `β: lan ⇒ S1` with `α = η • (K ∘ β)`; for `ran`,
    /// `α: K ; S1 ⇒ S` gives the unique `β: S1 ⇒ ran` with
    /// `α = (K ∘ β) • ε`.
    pub fn factor(&self, s1: &Passage<SetCat>, alpha: &Bridge<SetCat>) -> Result<Bridge<SetCat>, UnivError> {
        let k = &self.along;
        let c1 = k.target();
        let ks1 = compose_passages(k, s1)?;
        match &self.data {
            Pointwise::Left(quotients) => {
                if alpha.source() != &self.diagram || alpha.target() != &ks1 {
                    return Err(UnivError::NoMediator("α must run S ⇒ K ; S1".into()));
                }
                let comps = c1
                    .objects()
                    .map(|c| {
                        let q = &quotients[c.0];
                        SetFn::from_fn(q.classes.clone(), s1.obj(c).clone(), |e| {
                            let (j, x) = &q.origin[e];
                            let (c2, u) = self.commas[c.0][j.0];
                            let y = alpha.component(c2).apply(x).expect("total");
                            s1.mor(u).apply(y).expect("total").clone()
                        })
                        .expect("lands in S1")
                    })
                    .collect();
                Ok(Bridge::new(self.extension.clone(), s1.clone(), comps)?)
            }
            Pointwise::Right => {
                if alpha.target() != &self.diagram || alpha.source() != &ks1 {
                    return Err(UnivError::NoMediator("α must run K ; S1 ⇒ S".into()));
                }
                let comps = c1
                    .objects()
                    .map(|c| {
                        SetFn::from_fn(s1.obj(c).clone(), self.extension.obj(c).clone(), |y| {
                            Elem::Tuple(
                                self.commas[c.0]
                                    .iter()
                                    .map(|&(c2, u)| {
                                        let z = s1.mor(u).apply(y).expect("total");
                                        alpha.component(c2).apply(z).expect("total").clone()
                                    })
                                    .collect(),
                            )
                        })
                        .map_err(|e| UnivError::NoMediator(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Bridge::new(s1.clone(), self.extension.clone(), comps)?)
            }
        }
    }

    /// Comma object count per object of `C1`.
    pub fn comma_sizes(&self) -> Vec<usize> {
        self.index.iter().map(|m| m.len()).collect()
    }
}

/// `lan_K ⊣ (K ; −)` on Set-valued functors.
#[derive(Debug, Clone)]
pub struct LeftKan {
    pub along: Passage<FinCategory>,
    lower: SetFunctors,
    upper: SetFunctors,
}

/// `(K ; −) ⊣ ran_K` on Set-valued functors.
#[derive(Debug, Clone)]
pub struct RightKan {
    pub along: Passage<FinCategory>,
    lower: SetFunctors,
    upper: SetFunctors,
}

pub fn kan_adjunction(k: &Passage<FinCategory>) -> (LeftKan, RightKan) {
    let c2 = SetFunctors { shape: k.source().clone() };
    let c1 = SetFunctors { shape: k.target().clone() };
    (
        LeftKan { along: k.clone(), lower: c2.clone(), upper: c1.clone() },
        RightKan { along: k.clone(), lower: c1, upper: c2 },
    )
}

fn restrict(k: &Passage<FinCategory>, s1: &Passage<SetCat>) -> Passage<SetCat> {
    compose_passages(k, s1).expect("K ; S1")
}

impl Adjunction for LeftKan {
    type Lower = SetFunctors;
    type Upper = SetFunctors;

    fn lower(&self) -> &SetFunctors {
        &self.lower
    }

    fn upper(&self) -> &SetFunctors {
        &self.upper
    }

    fn left_obj(&self, s: &Passage<SetCat>) -> Passage<SetCat> {
        lan(&self.along, s).expect("lan").extension
    }

    /// `lan(β)` for `β: S ⇒ S'`: the factorization of `β • η'`.
    fn left_mor(&self, b: &Bridge<SetCat>) -> Bridge<SetCat> {
        let l = lan(&self.along, b.source()).expect("lan");
        let l2 = lan(&self.along, b.target()).expect("lan");
        let alpha = vertical_compose(b, &l2.bridge).expect("β • η'");
        l.factor(&l2.extension, &alpha).expect("universal")
    }

    fn right_obj(&self, s1: &Passage<SetCat>) -> Passage<SetCat> {
        restrict(&self.along, s1)
    }

    fn right_mor(&self, g: &Bridge<SetCat>) -> Bridge<SetCat> {
        whisker_left(&self.along, g).expect("restriction")
    }

    fn unit(&self, s: &Passage<SetCat>) -> Bridge<SetCat> {
        lan(&self.along, s).expect("lan").bridge
    }

    /// `lan(K ; S1) ⇒ S1`, the factorization of the identity.
    fn counit(&self, s1: &Passage<SetCat>) -> Bridge<SetCat> {
        let ks1 = restrict(&self.along, s1);
        lan(&self.along, &ks1).expect("lan").factor(s1, &Bridge::identity(&ks1)).expect("universal")
    }
}

impl Adjunction for RightKan {
    type Lower = SetFunctors;
    type Upper = SetFunctors;

    fn lower(&self) -> &SetFunctors {
        &self.lower
    }

    fn upper(&self) -> &SetFunctors {
        &self.upper
    }

    fn left_obj(&self, s1: &Passage<SetCat>) -> Passage<SetCat> {
        restrict(&self.along, s1)
    }

    fn left_mor(&self, g: &Bridge<SetCat>) -> Bridge<SetCat> {
        whisker_left(&self.along, g).expect("restriction")
    }

    fn right_obj(&self, s: &Passage<SetCat>) -> Passage<SetCat> {
        ran(&self.along, s).expect("ran").extension
    }

    /// `ran(β)` for `β: S ⇒ S'`: the factorization of `ε • β`.
    fn right_mor(&self, b: &Bridge<SetCat>) -> Bridge<SetCat> {
        let r = ran(&self.along, b.source()).expect("ran");
        let r2 = ran(&self.along, b.target()).expect("ran");
        let alpha = vertical_compose(&r.bridge, b).expect("ε • β");
        r2.factor(&r.extension, &alpha).expect("universal")
    }

    /// `S1 ⇒ ran(K ; S1)`, the factorization of the identity.
    fn unit(&self, s1: &Passage<SetCat>) -> Bridge<SetCat> {
        let ks1 = restrict(&self.along, s1);
        ran(&self.along, &ks1).expect("ran").factor(s1, &Bridge::identity(&ks1)).expect("universal")
    }

    fn counit(&self, s: &Passage<SetCat>) -> Bridge<SetCat> {
        ran(&self.along, s).expect("ran").bridge
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::check_hom_bijection;

    fn point_into_uv() -> Passage<FinCategory> {
        let uv = FinCategory::discrete(["u", "v"]);
        Passage::constant(FinCategory::terminal(), uv.clone(), uv.obj_by_name("u").unwrap())
    }

    fn two() -> Passage<SetCat> {
        Passage::constant(FinCategory::terminal(), SetCat, FinSet::atoms(["1", "2"]))
    }

    #[test]
    fn point_extension() {
        let k = point_into_uv();
        let l = lan(&k, &two()).unwrap();
        let c1 = k.target();
        assert_eq!(l.extension.obj(c1.obj_by_name("u").unwrap()).len(), 2);
        assert_eq!(l.extension.obj(c1.obj_by_name("v").unwrap()).len(), 0);
        let r = ran(&k, &two()).unwrap();
        assert_eq!(r.extension.obj(c1.obj_by_name("u").unwrap()).len(), 2);
        assert_eq!(r.extension.obj(c1.obj_by_name("v").unwrap()).len(), 1);
    }

    #[test]
    fn identity_extension_is_isomorphic() {
        let c = FinCategory::arrow();
        let k = Passage::identity(&c);
        for s in (SetFunctors { shape: c.clone() }).all_bounded(2) {
            let l = lan(&k, &s).unwrap();
            assert!(natural_iso(&l.extension, &s).unwrap().is_some());
            assert!(l.bridge.components().iter().all(|f| f.is_injective()));
            let r = ran(&k, &s).unwrap();
            assert!(natural_iso(&r.extension, &s).unwrap().is_some());
        }
    }

    #[test]
    fn adjunctions_on_the_point_inclusion() {
        let k = point_into_uv();
        let (left, right) = kan_adjunction(&k);
        let small2 = (SetFunctors { shape: k.source().clone() }).all_bounded(2);
        let small1 = (SetFunctors { shape: k.target().clone() }).all_bounded(1);
        for s in &small2 {
            assert!(left.left_triangle(s));
            assert!(right.right_triangle(s));
            for s1 in &small1 {
                check_hom_bijection(&left, s, s1).unwrap();
                check_hom_bijection(&right, s1, s).unwrap();
            }
        }
        for s1 in &small1 {
            assert!(left.right_triangle(s1));
            assert!(right.left_triangle(s1));
        }
    }
}
