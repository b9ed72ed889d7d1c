use super::set::{compatible_families, set_quotient};
use super::{LimitResult, UnivError};
use crate::base::{ListCat, ListX, Signature, SignatureMorphism};
use crate::diagrams::{ArityProjection, SortProjection};
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::{Cone, ConeKind, Passage};

/// Colimit in List(X): the arity colimit in Set, each class sorted by
/// the common sort of its members.
pub fn colimit_in_listx(d: &Passage<ListX>) -> Result<LimitResult<ListX>, UnivError> {
    let x = d.target().sorts.clone();
    let arities = d.then(&ArityProjection(d.target().clone()))?;
    let q = set_quotient(&arities);
    let mut sorts = Vec::with_capacity(q.classes.len());
    for c in q.classes.iter() {
        let mut it = q.members[c].iter().map(|(r, i)| d.obj(*r).sort_of(i).expect("in arity"));
        let first = it.next().expect("class has members");
        if it.any(|s| s != first) {
            return Err(UnivError::SortGluingConflict(c.clone()));
        }
        sorts.push((c.clone(), first.clone()));
    }
    let vertex = Signature::from_pairs(q.classes.clone(), x, sorts)?;
    let legs = d
        .source()
        .objects()
        .map(|r| {
            let h = SetFn::from_images_unchecked(d.obj(r).arity().clone(), q.classes.clone(), q.rep[r.0].clone());
            SignatureMorphism::in_list_x(d.obj(r).clone(), vertex.clone(), h)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone { kind: ConeKind::Colimit, vertex: vertex.clone(), legs };
    Ok(LimitResult::new(d.clone(), cone, move |c: &Cone<ListX>| {
        let h = SetFn::from_fn(vertex.arity().clone(), c.vertex.arity().clone(), |e| {
            let (r, i) = &q.origin[e];
            c.legs[r.0].h().apply(i).expect("total").clone()
        })
        .map_err(|e| UnivError::NoMediator(e.to_string()))?;
        SignatureMorphism::in_list_x(vertex.clone(), c.vertex.clone(), h).map_err(|e| UnivError::NoMediator(e.to_string()))
    }))
}

/// Limit in List(X), i.e. in the slice over X: compatible families of
/// attributes sharing one sort. The empty diagram gives `X` itself.
pub fn limit_in_listx(d: &Passage<ListX>) -> Result<LimitResult<ListX>, UnivError> {
    let x = d.target().sorts.clone();
    let shape = d.source();
    if shape.n_objects() == 0 {
        let vertex = Signature::terminal(&x);
        let cone = Cone { kind: ConeKind::Limit, vertex: vertex.clone(), legs: vec![] };
        return Ok(LimitResult::new(d.clone(), cone, move |c: &Cone<ListX>| {
            SignatureMorphism::in_list_x(c.vertex.clone(), vertex.clone(), c.vertex.sort_fn().clone())
                .map_err(|e| UnivError::NoMediator(e.to_string()))
        }));
    }
    let arities = d.then(&ArityProjection(d.target().clone()))?;
    let sort_of = |r: usize, i: &Elem| d.object_images()[r].sort_of(i).expect("in arity").clone();
    let mut pairs = Vec::new();
    for fam in compatible_families(&arities) {
        let s0 = sort_of(0, &fam[0]);
        if fam.iter().enumerate().all(|(r, i)| sort_of(r, i) == s0) {
            pairs.push((Elem::Tuple(fam), s0));
        }
    }
    let arity: FinSet = pairs.iter().map(|(e, _)| e.clone()).collect();
    let vertex = Signature::from_pairs(arity.clone(), x, pairs)?;
    let legs = shape
        .objects()
        .map(|r| {
            let h = SetFn::from_images_unchecked(
                arity.clone(),
                d.obj(r).arity().clone(),
                arity.iter().map(|f| f.as_tuple().expect("family")[r.0].clone()).collect(),
            );
            SignatureMorphism::in_list_x(vertex.clone(), d.obj(r).clone(), h)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone { kind: ConeKind::Limit, vertex: vertex.clone(), legs };
    Ok(LimitResult::new(d.clone(), cone, move |c: &Cone<ListX>| {
        let h = SetFn::from_fn(c.vertex.arity().clone(), vertex.arity().clone(), |v| {
            Elem::Tuple(c.legs.iter().map(|l| l.h().apply(v).expect("total").clone()).collect())
        })
        .map_err(|e| UnivError::NoMediator(e.to_string()))?;
        SignatureMorphism::in_list_x(c.vertex.clone(), vertex.clone(), h).map_err(|e| UnivError::NoMediator(e.to_string()))
    }))
}

/// Colimit in List, where sort sets vary: Set colimits of arities and of
/// sort sets, with the induced sort map.
pub fn colimit_in_list(d: &Passage<ListCat>) -> Result<LimitResult<ListCat>, UnivError> {
    let arities = set_quotient(&d.then(&ArityProjection(ListCat))?);
    let sorts = set_quotient(&d.then(&SortProjection(ListCat))?);
    let mut pairs = Vec::new();
    for c in arities.classes.iter() {
        let sort_class = |(r, i): &(crate::fincat::ObjId, Elem)| {
            let s = d.obj(*r).sort_of(i).expect("in arity");
            let j = d.obj(*r).sort_set().index_of(s).expect("sort");
            sorts.rep[r.0][j].clone()
        };
        let mut it = arities.members[c].iter().map(sort_class);
        let first = it.next().expect("class has members");
        if it.any(|s| s != first) {
            return Err(UnivError::SortGluingConflict(c.clone()));
        }
        pairs.push((c.clone(), first));
    }
    let vertex = Signature::from_pairs(arities.classes.clone(), sorts.classes.clone(), pairs)?;
    let legs = d
        .source()
        .objects()
        .map(|r| {
            let s = d.obj(r);
            let h = SetFn::from_images_unchecked(s.arity().clone(), arities.classes.clone(), arities.rep[r.0].clone());
            let f = SetFn::from_images_unchecked(s.sort_set().clone(), sorts.classes.clone(), sorts.rep[r.0].clone());
            SignatureMorphism::new(s.clone(), vertex.clone(), h, f)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone { kind: ConeKind::Colimit, vertex: vertex.clone(), legs };
    Ok(LimitResult::new(d.clone(), cone, move |c: &Cone<ListCat>| {
        let err = |e: crate::elem::SetError| UnivError::NoMediator(e.to_string());
        let h = SetFn::from_fn(vertex.arity().clone(), c.vertex.arity().clone(), |e| {
            let (r, i) = &arities.origin[e];
            c.legs[r.0].h().apply(i).expect("total").clone()
        })
        .map_err(err)?;
        let f = SetFn::from_fn(vertex.sort_set().clone(), c.vertex.sort_set().clone(), |e| {
            let (r, x) = &sorts.origin[e];
            c.legs[r.0].f().apply(x).expect("total").clone()
        })
        .map_err(err)?;
        SignatureMorphism::new(vertex.clone(), c.vertex.clone(), h, f).map_err(|e| UnivError::NoMediator(e.to_string()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinCategory, HomSets};
    use crate::fixtures::span_shape;

    fn xs() -> FinSet {
        FinSet::atoms(["p"])
    }

    fn sig(attrs: &[(&str, &str)]) -> Signature {
        Signature::from_atoms(&xs(), attrs).unwrap()
    }

    fn span_schema() -> Passage<ListX> {
        let shape = span_shape();
        let (a, c, b) = (sig(&[("a", "p")]), sig(&[("c", "p")]), sig(&[("b", "p")]));
        let to = |s: &Signature, t: &Signature, x: &str, y: &str| {
            SignatureMorphism::in_list_x(s.clone(), t.clone(), crate::fixtures::fn_from(s.arity(), t.arity(), &[(x, y)]))
                .unwrap()
        };
        let l = shape.mor_by_name("l").unwrap();
        let r = shape.mor_by_name("r").unwrap();
        Passage::from_generators(
            shape,
            ListX::new(xs()),
            vec![a.clone(), c.clone(), b.clone()],
            vec![(l, to(&c, &a, "c", "a")), (r, to(&c, &b, "c", "b"))],
            true,
        )
        .unwrap()
    }

    #[test]
    fn one_object_colimit_is_isomorphic() {
        let s = sig(&[("a", "p"), ("b", "p")]);
        let d = Passage::constant(FinCategory::terminal(), ListX::new(xs()), s.clone());
        let c = colimit_in_listx(&d).unwrap();
        assert_eq!(c.vertex().arity().len(), 2);
        assert!(c.legs()[0].h().is_injective());
    }

    #[test]
    fn span_colimit_glues_to_one_attribute() {
        let c = colimit_in_listx(&span_schema()).unwrap();
        assert_eq!(c.vertex().arity().len(), 1);
        assert_eq!(c.vertex().sort_fn().images(), &[Elem::atom("p")]);
    }

    #[test]
    fn discrete_limit_is_fiber_product() {
        let shape = FinCategory::discrete(["u", "v"]);
        let (a, b) = (sig(&[("a", "p")]), sig(&[("b", "p")]));
        let d = Passage::new(
            shape,
            ListX::new(xs()),
            vec![a.clone(), b.clone()],
            vec![SignatureMorphism::identity(&a), SignatureMorphism::identity(&b)],
        )
        .unwrap();
        let l = limit_in_listx(&d).unwrap();
        assert_eq!(l.vertex().arity().len(), 1);
        let mixed = Signature::from_atoms(&FinSet::atoms(["p", "q"]), &[("a", "p")]).unwrap();
        let other = Signature::from_atoms(&FinSet::atoms(["p", "q"]), &[("b", "q")]).unwrap();
        let d2 = Passage::new(
            FinCategory::discrete(["u", "v"]),
            ListX::new(FinSet::atoms(["p", "q"])),
            vec![mixed.clone(), other.clone()],
            vec![SignatureMorphism::identity(&mixed), SignatureMorphism::identity(&other)],
        )
        .unwrap();
        assert_eq!(limit_in_listx(&d2).unwrap().vertex().arity().len(), 0);
    }

    #[test]
    fn empty_limit_is_terminal_and_universal() {
        let x = FinSet::atoms(["p", "q"]);
        let d = Passage::new(FinCategory::empty(), ListX::new(x.clone()), vec![], vec![]).unwrap();
        let l = limit_in_listx(&d).unwrap();
        assert_eq!(l.vertex(), &Signature::terminal(&x));
        let s = Signature::from_atoms(&x, &[("a", "p"), ("b", "q"), ("c", "q")]).unwrap();
        let cand = Cone { kind: ConeKind::Limit, vertex: s, legs: vec![] };
        l.check_universal_for(&cand).unwrap();
        let c = colimit_in_listx(&d).unwrap();
        assert_eq!(c.vertex().arity().len(), 0);
    }

    #[test]
    fn colimit_mediates_uniquely() {
        let d = span_schema();
        let c = colimit_in_listx(&d).unwrap();
        let v = sig(&[("u", "p"), ("w", "p")]);
        for cand in crate::fincat::all_cones(&d, ConeKind::Colimit, &v).unwrap() {
            c.check_universal_for(&cand).unwrap();
        }
        assert_eq!(ListX::new(xs()).hom(c.vertex(), &v).unwrap().len(), 2);
    }

    #[test]
    fn general_colimit_glues_sorts() {
        let shape = FinCategory::free_on_acyclic_graph(&["A", "B"], &[("e", "A", "B")]).unwrap();
        let a = Signature::from_atoms(&FinSet::atoms(["p"]), &[("x", "p")]).unwrap();
        let b = Signature::from_atoms(&FinSet::atoms(["q", "r"]), &[("y", "q"), ("z", "r")]).unwrap();
        let m = SignatureMorphism::new(
            a.clone(),
            b.clone(),
            crate::fixtures::fn_from(a.arity(), b.arity(), &[("x", "y")]),
            crate::fixtures::fn_from(a.sort_set(), b.sort_set(), &[("p", "q")]),
        )
        .unwrap();
        let d = Passage::from_generators(shape.clone(), ListCat, vec![a, b], vec![(shape.mor_by_name("e").unwrap(), m)], true)
            .unwrap();
        let c = colimit_in_list(&d).unwrap();
        assert_eq!(c.vertex().arity().len(), 2);
        assert_eq!(c.vertex().sort_set().len(), 2);
        assert!(c.mediate(&c.cone).unwrap().h().is_identity());
    }
}
