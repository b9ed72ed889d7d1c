use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::{LimitResult, UnivError};
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::{Cone, ConeKind, FinCategory, ObjId, Passage, SetCat};

/// Compatible families `(x_r)` of a Set diagram, as tuples in object
/// order. Backtracks object by object, checking every morphism whose
/// endpoints are both chosen.
pub(crate) fn compatible_families(d: &Passage<SetCat>) -> Vec<Vec<Elem>> {
    let shape = d.source();
    let n = shape.n_objects();
    // Morphisms to check once object `i` is chosen: those whose larger
    // endpoint is `i`.
    let mut checks: Vec<Vec<_>> = vec![Vec::new(); n];
    for m in shape.non_identity_morphisms() {
        let (a, b) = (shape.src(m).0, shape.tgt(m).0);
        checks[a.max(b)].push((a, b, m));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Elem> = Vec::with_capacity(n);
    fn go(
        d: &Passage<SetCat>,
        checks: &[Vec<(usize, usize, crate::fincat::MorId)>],
        chosen: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let i = chosen.len();
        if i == checks.len() {
            out.push(chosen.clone());
            return;
        }
        for x in d.obj(ObjId(i)).iter() {
            chosen.push(x.clone());
            let ok = checks[i].iter().all(|&(a, b, m)| d.mor(m).apply(&chosen[a]) == Some(&chosen[b]));
            if ok {
                go(d, checks, chosen, out);
            }
            chosen.pop();
        }
    }
    go(d, &checks, &mut chosen, &mut out);
    out
}

/// The limit of a finite Set diagram: compatible families in the
/// product, with the projections as legs.
pub fn limit_in_set(d: &Passage<SetCat>) -> LimitResult<SetCat> {
    let families = compatible_families(d);
    let vertex: FinSet = families.iter().cloned().map(Elem::Tuple).collect();
    let legs = d
        .source()
        .objects()
        .map(|r| {
            let images = vertex.iter().map(|f| f.as_tuple().expect("family")[r.0].clone()).collect();
            SetFn::from_images_unchecked(vertex.clone(), d.obj(r).clone(), images)
        })
        .collect();
    let cone = Cone { kind: ConeKind::Limit, vertex: vertex.clone(), legs };
    LimitResult::new(d.clone(), cone, move |c: &Cone<SetCat>| {
        SetFn::from_fn(c.vertex.clone(), vertex.clone(), |v| {
            Elem::Tuple(c.legs.iter().map(|l| l.apply(v).expect("leg is total").clone()).collect())
        })
        .map_err(|e| UnivError::NoMediator(e.to_string()))
    })
}

/// The disjoint union of a Set diagram quotiented by the equivalence the
/// diagram morphisms generate. Elements of the union are tagged with the
/// name of their object; each class is represented by its least element.
#[derive(Debug, Clone)]
pub(crate) struct Quotient {
    /// Representative of every element, per object, aligned with the set.
    pub rep: Vec<Vec<Elem>>,
    /// The representatives.
    pub classes: FinSet,
    /// `(object, element)` behind each representative.
    pub origin: HashMap<Elem, (ObjId, Elem)>,
    /// All members of each class.
    pub members: HashMap<Elem, Vec<(ObjId, Elem)>>,
}

pub(crate) fn set_quotient(d: &Passage<SetCat>) -> Quotient {
    let shape = d.source();
    let mut offset = Vec::with_capacity(shape.n_objects());
    let mut total = 0;
    for r in shape.objects() {
        offset.push(total);
        total += d.obj(r).len();
    }
    let mut uf = UnionFind::<usize>::new(total);
    for m in shape.non_identity_morphisms() {
        let (a, b) = (shape.src(m), shape.tgt(m));
        let f = d.mor(m);
        for (i, y) in f.images().iter().enumerate() {
            let j = d.obj(b).index_of(y).expect("codomain");
            uf.union(offset[a.0] + i, offset[b.0] + j);
        }
    }
    let tagged = |r: ObjId, x: &Elem| Elem::tag(shape.obj_name(r), x.clone());
    let mut least: HashMap<usize, Elem> = HashMap::new();
    let mut members: HashMap<usize, Vec<(ObjId, Elem)>> = HashMap::new();
    for r in shape.objects() {
        for (i, x) in d.obj(r).iter().enumerate() {
            let root = uf.find(offset[r.0] + i);
            let t = tagged(r, x);
            least.entry(root).and_modify(|e| if t < *e { *e = t.clone() }).or_insert(t);
            members.entry(root).or_default().push((r, x.clone()));
        }
    }
    let rep = shape
        .objects()
        .map(|r| (0..d.obj(r).len()).map(|i| least[&uf.find(offset[r.0] + i)].clone()).collect())
        .collect();
    let classes: FinSet = least.values().cloned().collect();
    let mut origin = HashMap::new();
    let mut by_rep = HashMap::new();
    for (root, e) in least {
        let ms = members.remove(&root).expect("class has members");
        let o = ms.iter().find(|(r, x)| tagged(*r, x) == e).cloned().expect("least member");
        origin.insert(e.clone(), o);
        by_rep.insert(e, ms);
    }
    Quotient { rep, classes, origin, members: by_rep }
}

/// The colimit of a finite Set diagram, computed by union-find.
pub fn colimit_in_set(d: &Passage<SetCat>) -> LimitResult<SetCat> {
    let q = set_quotient(d);
    let legs = d
        .source()
        .objects()
        .map(|r| SetFn::from_images_unchecked(d.obj(r).clone(), q.classes.clone(), q.rep[r.0].clone()))
        .collect();
    let cone = Cone { kind: ConeKind::Colimit, vertex: q.classes.clone(), legs };
    LimitResult::new(d.clone(), cone, move |c: &Cone<SetCat>| {
        SetFn::from_fn(q.classes.clone(), c.vertex.clone(), |e| {
            let (r, x) = &q.origin[e];
            c.legs[r.0].apply(x).expect("leg is total").clone()
        })
        .map_err(|e| UnivError::NoMediator(e.to_string()))
    })
}

/// Discrete shape with the given set images, for tests and callers that
/// only need products or sums.
#[allow(dead_code)]
pub(crate) fn discrete_diagram(sets: Vec<FinSet>) -> Passage<SetCat> {
    let names: Vec<String> = (0..sets.len()).map(|i| format!("{i}")).collect();
    let shape = FinCategory::discrete(&names);
    let ids = sets.iter().map(SetFn::identity).collect();
    Passage::new(shape, SetCat, sets, ids).expect("discrete")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::MorId;

    fn s(items: &[&str]) -> FinSet {
        FinSet::atoms(items.iter().copied())
    }

    #[test]
    fn empty_diagram() {
        let d = Passage::new(FinCategory::empty(), SetCat, vec![], vec![]).unwrap();
        assert_eq!(limit_in_set(&d).vertex().len(), 1);
        assert_eq!(colimit_in_set(&d).vertex().len(), 0);
    }

    #[test]
    fn discrete_product_and_sum() {
        let d = discrete_diagram(vec![s(&["a", "b"]), s(&["x", "y", "z"])]);
        let lim = limit_in_set(&d);
        let colim = colimit_in_set(&d);
        assert_eq!(lim.vertex().len(), 6);
        assert_eq!(colim.vertex().len(), 5);
        // The cone itself factors through the identity.
        assert!(lim.mediate(&lim.cone).unwrap().is_identity());
        assert!(colim.mediate(&colim.cone).unwrap().is_identity());
    }

    #[test]
    fn coequalizer() {
        let shape = FinCategory::free_on_acyclic_graph(&["A", "B"], &[("f", "A", "B"), ("g", "A", "B")]).unwrap();
        let a = s(&["a", "b"]);
        let b = s(&["1", "2", "3"]);
        let pairs = |p: &[(&str, &str)]| {
            SetFn::from_pairs(a.clone(), b.clone(), p.iter().map(|(x, y)| (Elem::atom(*x), Elem::atom(*y)))).unwrap()
        };
        let f = pairs(&[("a", "1"), ("b", "2")]);
        let g = pairs(&[("a", "2"), ("b", "2")]);
        let mut mors = vec![SetFn::identity(&a); shape.n_morphisms()];
        mors[shape.mor_by_name("f").unwrap().0] = f;
        mors[shape.mor_by_name("g").unwrap().0] = g;
        mors[shape.id(shape.obj_by_name("B").unwrap()).0] = SetFn::identity(&b);
        let d = Passage::new(shape.clone(), SetCat, vec![a, b], mors).unwrap();
        let c = colimit_in_set(&d);
        // {1,2} glued with a and b; 3 alone.
        assert_eq!(c.vertex().len(), 2);
        let leg_b = &c.legs()[1];
        assert_eq!(leg_b.apply(&Elem::atom("1")), leg_b.apply(&Elem::atom("2")));
        assert_ne!(leg_b.apply(&Elem::atom("1")), leg_b.apply(&Elem::atom("3")));
        let _ = MorId(0);
    }
}
