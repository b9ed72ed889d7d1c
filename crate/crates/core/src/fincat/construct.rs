use std::collections::HashMap;

use super::{Bridge, CatError, Category, FinCategory, HomSets, MorId, ObjId, Passage, RawCategory};

/// `C^op`: same names, endpoints swapped, composition reversed.
/// Object and morphism ids are preserved.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let raw = c.to_raw();
    RawCategory {
        objects: raw.objects,
        morphisms: raw.morphisms.into_iter().map(|(n, s, t)| (n, t, s)).collect(),
        identities: raw.identities,
        compose: raw.compose.into_iter().map(|((f, g), h)| ((g, f), h)).collect(),
    }
    .canonicalize()
}

/// The product category with its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub category: FinCategory,
    pub left: Passage<FinCategory>,
    pub right: Passage<FinCategory>,
}

pub fn product_category(c1: &FinCategory, c2: &FinCategory) -> Product {
    let (n2, m2) = (c2.n_objects(), c2.n_morphisms());
    let mut objects = Vec::new();
    for a in c1.objects() {
        for b in c2.objects() {
            objects.push(format!("({},{})", c1.obj_name(a), c2.obj_name(b)));
        }
    }
    let mut morphisms = Vec::new();
    for f in c1.morphisms() {
        for g in c2.morphisms() {
            morphisms.push((
                format!("({},{})", c1.mor_name(f), c2.mor_name(g)),
                c1.src(f).0 * n2 + c2.src(g).0,
                c1.tgt(f).0 * n2 + c2.tgt(g).0,
            ));
        }
    }
    let identities = c1
        .objects()
        .flat_map(|a| c2.objects().map(move |b| (a, b)))
        .map(|(a, b)| c1.id(a).0 * m2 + c2.id(b).0)
        .collect();
    let mut compose = HashMap::new();
    for (f1, f2, f) in c1.composable_pairs() {
        for (g1, g2, g) in c2.composable_pairs() {
            compose.insert((f1.0 * m2 + g1.0, f2.0 * m2 + g2.0), f.0 * m2 + g.0);
        }
    }
    let category = RawCategory { objects, morphisms, identities, compose }.canonicalize();
    let obj_of = |a: ObjId, b: ObjId| {
        category.obj_by_name(&format!("({},{})", c1.obj_name(a), c2.obj_name(b))).expect("product object")
    };
    let mut left_obj = vec![ObjId(0); category.n_objects()];
    let mut right_obj = vec![ObjId(0); category.n_objects()];
    for a in c1.objects() {
        for b in c2.objects() {
            let p = obj_of(a, b);
            left_obj[p.0] = a;
            right_obj[p.0] = b;
        }
    }
    let mut left_mor = vec![MorId(0); category.n_morphisms()];
    let mut right_mor = vec![MorId(0); category.n_morphisms()];
    for f in c1.morphisms() {
        for g in c2.morphisms() {
            let p = category
                .mor_by_name(&format!("({},{})", c1.mor_name(f), c2.mor_name(g)))
                .expect("product morphism");
            left_mor[p.0] = f;
            right_mor[p.0] = g;
        }
    }
    let left = Passage::new(category.clone(), c1.clone(), left_obj, left_mor).expect("projection");
    let right = Passage::new(category.clone(), c2.clone(), right_obj, right_mor).expect("projection");
    Product { category, left, right }
}

/// The coproduct (disjoint union) with its two injections. Names are
/// tagged `1:` and `2:`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub category: FinCategory,
    pub left: Passage<FinCategory>,
    pub right: Passage<FinCategory>,
}

impl Coproduct {
    /// The copairing `[F, G]` of two passages with a common target.
    pub fn copair<T: Category>(&self, f: &Passage<T>, g: &Passage<T>) -> Result<Passage<T>, CatError> {
        if f.source() != self.left.source() || g.source() != self.right.source() || f.target() != g.target() {
            return Err(CatError::EndpointMismatch("copairing of mismatched passages".into()));
        }
        let c = &self.category;
        let mut objects = vec![None; c.n_objects()];
        let mut morphisms = vec![None; c.n_morphisms()];
        for (inj, p) in [(&self.left, f), (&self.right, g)] {
            for x in inj.source().objects() {
                objects[inj.obj(x).0] = Some(p.obj(x).clone());
            }
            for m in inj.source().morphisms() {
                morphisms[inj.mor(m).0] = Some(p.mor(m).clone());
            }
        }
        Passage::new(
            c.clone(),
            f.target().clone(),
            objects.into_iter().map(|o| o.expect("covered")).collect(),
            morphisms.into_iter().map(|m| m.expect("covered")).collect(),
        )
    }
}

pub fn coproduct_category(c1: &FinCategory, c2: &FinCategory) -> Coproduct {
    let (n1, m1) = (c1.n_objects(), c1.n_morphisms());
    let objects: Vec<String> = c1
        .objects()
        .map(|x| format!("1:{}", c1.obj_name(x)))
        .chain(c2.objects().map(|x| format!("2:{}", c2.obj_name(x))))
        .collect();
    let morphisms: Vec<(String, usize, usize)> = c1
        .morphisms()
        .map(|f| (format!("1:{}", c1.mor_name(f)), c1.src(f).0, c1.tgt(f).0))
        .chain(c2.morphisms().map(|f| (format!("2:{}", c2.mor_name(f)), n1 + c2.src(f).0, n1 + c2.tgt(f).0)))
        .collect();
    let identities = c1
        .objects()
        .map(|x| c1.id(x).0)
        .chain(c2.objects().map(|x| m1 + c2.id(x).0))
        .collect();
    let mut compose = HashMap::new();
    for (f, g, h) in c1.composable_pairs() {
        compose.insert((f.0, g.0), h.0);
    }
    for (f, g, h) in c2.composable_pairs() {
        compose.insert((m1 + f.0, m1 + g.0), m1 + h.0);
    }
    let category = RawCategory { objects, morphisms, identities, compose }.canonicalize();
    let inj = |c: &FinCategory, tag: &str| {
        Passage::new(
            c.clone(),
            category.clone(),
            c.objects()
                .map(|x| category.obj_by_name(&format!("{tag}:{}", c.obj_name(x))).expect("tagged"))
                .collect(),
            c.morphisms()
                .map(|m| category.mor_by_name(&format!("{tag}:{}", c.mor_name(m))).expect("tagged"))
                .collect(),
        )
        .expect("injection")
    };
    let left = inj(c1, "1");
    let right = inj(c2, "2");
    Coproduct { category, left, right }
}

/// The pullback `C1 ×_E C2` of two passages into a common category, with
/// its projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub category: FinCategory,
    pub left: Passage<FinCategory>,
    pub right: Passage<FinCategory>,
}

impl Pullback {
    /// The mediating passage `<P1, P2>` for passages that agree over E, or
    /// `None` when they do not.
    pub fn pair(&self, p1: &Passage<FinCategory>, p2: &Passage<FinCategory>) -> Option<Passage<FinCategory>> {
        let c = &self.category;
        let src = p1.source();
        let mut obj_index = HashMap::new();
        for x in c.objects() {
            obj_index.insert((*self.left.obj(x), *self.right.obj(x)), x);
        }
        let mut mor_index = HashMap::new();
        for m in c.morphisms() {
            mor_index.insert((*self.left.mor(m), *self.right.mor(m)), m);
        }
        let objects: Option<Vec<ObjId>> =
            src.objects().map(|x| obj_index.get(&(*p1.obj(x), *p2.obj(x))).copied()).collect();
        let morphisms: Option<Vec<MorId>> =
            src.morphisms().map(|m| mor_index.get(&(*p1.mor(m), *p2.mor(m))).copied()).collect();
        Passage::new(src.clone(), c.clone(), objects?, morphisms?).ok()
    }
}

pub fn pullback_category<T: Category>(f: &Passage<T>, g: &Passage<T>) -> Result<Pullback, CatError> {
    if f.target() != g.target() {
        return Err(CatError::EndpointMismatch("pullback of passages into different categories".into()));
    }
    let (c1, c2) = (f.source(), g.source());
    let mut objects = Vec::new();
    let mut obj_pairs = Vec::new();
    let mut obj_ix = HashMap::new();
    for a in c1.objects() {
        for b in c2.objects() {
            if f.obj(a) == g.obj(b) {
                obj_ix.insert((a, b), objects.len());
                objects.push(format!("({},{})", c1.obj_name(a), c2.obj_name(b)));
                obj_pairs.push((a, b));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    let mut mor_ix = HashMap::new();
    for u in c1.morphisms() {
        for v in c2.morphisms() {
            if f.mor(u) == g.mor(v) {
                let s = obj_ix[&(c1.src(u), c2.src(v))];
                let t = obj_ix[&(c1.tgt(u), c2.tgt(v))];
                mor_ix.insert((u, v), morphisms.len());
                morphisms.push((format!("({},{})", c1.mor_name(u), c2.mor_name(v)), s, t));
                mor_pairs.push((u, v));
            }
        }
    }
    let identities = obj_pairs.iter().map(|&(a, b)| mor_ix[&(c1.id(a), c2.id(b))]).collect();
    let mut compose = HashMap::new();
    for (i, &(u1, v1)) in mor_pairs.iter().enumerate() {
        for (j, &(u2, v2)) in mor_pairs.iter().enumerate() {
            if let (Some(u), Some(v)) = (c1.comp(u1, u2), c2.comp(v1, v2)) {
                compose.insert((i, j), mor_ix[&(u, v)]);
            }
        }
    }
    let category = RawCategory { objects, morphisms, identities, compose }.canonicalize();
    let proj = |pick_left: bool| {
        let objs = category
            .objects()
            .map(|x| {
                let &(a, b) = &obj_pairs[obj_ix_by_name(&category, x, &obj_pairs, c1, c2)];
                if pick_left { a } else { b }
            })
            .collect();
        let mors = category
            .morphisms()
            .map(|m| {
                let name = category.mor_name(m);
                let &(u, v) = mor_pairs
                    .iter()
                    .find(|(u, v)| format!("({},{})", c1.mor_name(*u), c2.mor_name(*v)) == name)
                    .expect("pullback morphism");
                if pick_left { u } else { v }
            })
            .collect();
        let target = if pick_left { c1.clone() } else { c2.clone() };
        Passage::new(category.clone(), target, objs, mors).expect("projection")
    };
    let left = proj(true);
    let right = proj(false);
    Ok(Pullback { category, left, right })
}

fn obj_ix_by_name(
    cat: &FinCategory,
    x: ObjId,
    pairs: &[(ObjId, ObjId)],
    c1: &FinCategory,
    c2: &FinCategory,
) -> usize {
    let name = cat.obj_name(x);
    pairs
        .iter()
        .position(|&(a, b)| format!("({},{})", c1.obj_name(a), c2.obj_name(b)) == name)
        .expect("pullback object")
}

/// The comma category `(F ↓ G)` with its projections and the canonical
/// bridge `P_C ; F ⇒ P_D ; G` whose component at `(c, d, e)` is `e`.
#[derive(Debug, Clone)]
pub struct Comma<T: Category> {
    pub category: FinCategory,
    /// `(c, d, e)` per comma object, aligned with object ids.
    pub objects: Vec<(ObjId, ObjId, T::Mor)>,
    pub left: Passage<FinCategory>,
    pub right: Passage<FinCategory>,
    pub bridge: Bridge<T>,
}

pub fn comma_category<T: HomSets>(f: &Passage<T>, g: &Passage<T>) -> Result<Comma<T>, CatError> {
    if f.target() != g.target() {
        return Err(CatError::EndpointMismatch("comma of passages into different categories".into()));
    }
    let e_cat = f.target();
    let (c, d) = (f.source(), g.source());
    let mut names = Vec::new();
    let mut data: Vec<(ObjId, ObjId, T::Mor)> = Vec::new();
    for x in c.objects() {
        for y in d.objects() {
            for (k, e) in e_cat.hom(f.obj(x), g.obj(y))?.into_iter().enumerate() {
                names.push(format!("({},{},#{k})", c.obj_name(x), d.obj_name(y)));
                data.push((x, y, e));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new();
    let mut mor_ix = HashMap::new();
    for (i, (x, y, e)) in data.iter().enumerate() {
        for (j, (x2, y2, e2)) in data.iter().enumerate() {
            for u in c.homs(*x, *x2) {
                for v in d.homs(*y, *y2) {
                    let lhs = e_cat.compose(e, g.mor(v));
                    let rhs = e_cat.compose(f.mor(u), e2);
                    if lhs.is_some() && lhs == rhs {
                        mor_ix.insert((i, j, u, v), morphisms.len());
                        morphisms.push((
                            format!("({},{}):{}->{}", c.mor_name(u), d.mor_name(v), names[i], names[j]),
                            i,
                            j,
                        ));
                        mor_data.push((i, j, u, v));
                    }
                }
            }
        }
    }
    let identities = data
        .iter()
        .enumerate()
        .map(|(i, (x, y, _))| mor_ix[&(i, i, c.id(*x), d.id(*y))])
        .collect();
    let mut compose = HashMap::new();
    for (a, &(i, j, u1, v1)) in mor_data.iter().enumerate() {
        for (b, &(j2, k, u2, v2)) in mor_data.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let u = c.comp(u1, u2).expect("composable");
            let v = d.comp(v1, v2).expect("composable");
            compose.insert((a, b), mor_ix[&(i, k, u, v)]);
        }
    }
    let raw_names = names.clone();
    let raw_mor_names: Vec<String> = morphisms.iter().map(|(n, _, _)| n.clone()).collect();
    let category = RawCategory { objects: names, morphisms, identities, compose }.canonicalize();
    let mut objects = Vec::with_capacity(data.len());
    let mut by_new = vec![0usize; data.len()];
    for (old, n) in raw_names.iter().enumerate() {
        by_new[category.obj_by_name(n).expect("comma object").0] = old;
    }
    for new in 0..data.len() {
        objects.push(data[by_new[new]].clone());
    }
    let mut mor_by_new = vec![0usize; mor_data.len()];
    for (old, n) in raw_mor_names.iter().enumerate() {
        mor_by_new[category.mor_by_name(n).expect("comma morphism").0] = old;
    }
    let left = Passage::new(
        category.clone(),
        c.clone(),
        objects.iter().map(|(x, _, _)| *x).collect(),
        mor_by_new.iter().map(|&old| mor_data[old].2).collect(),
    )?;
    let right = Passage::new(
        category.clone(),
        d.clone(),
        objects.iter().map(|(_, y, _)| *y).collect(),
        mor_by_new.iter().map(|&old| mor_data[old].3).collect(),
    )?;
    let bridge = Bridge::new(
        left.then(f)?,
        right.then(g)?,
        objects.iter().map(|(_, _, e)| e.clone()).collect(),
    )?;
    Ok(Comma { category, objects, left, right, bridge })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cospan() -> FinCategory {
        FinCategory::free_on_acyclic_graph(&["a", "b", "c"], &[("f", "a", "c"), ("g", "b", "c")]).unwrap()
    }

    #[test]
    fn opposite_is_involution() {
        let c = cospan();
        assert_eq!(opposite(&opposite(&c)), c);
        assert_eq!(opposite(&FinCategory::terminal()), FinCategory::terminal());
    }

    #[test]
    fn opposite_of_cospan_is_span() {
        let op = opposite(&cospan());
        let span = FinCategory::free_on_acyclic_graph(&["a", "b", "c"], &[("f", "c", "a"), ("g", "c", "b")]).unwrap();
        assert_eq!(op, span);
        let arrow_op = opposite(&FinCategory::arrow());
        let u = arrow_op.mor_by_name("u").unwrap();
        assert_eq!(arrow_op.obj_name(arrow_op.src(u)), "b");
    }

    #[test]
    fn coproduct_counts_and_units() {
        let a = FinCategory::arrow();
        let cp = coproduct_category(&a, &a);
        assert_eq!((cp.category.n_objects(), cp.category.n_morphisms()), (4, 6));
        cp.category.check_laws().unwrap();
        let e = coproduct_category(&FinCategory::empty(), &cospan());
        assert_eq!(e.category.n_morphisms(), 5);
        assert_eq!(e.right.object_images().len(), 3);
    }

    #[test]
    fn product_with_terminal() {
        let p = product_category(&FinCategory::terminal(), &cospan());
        assert_eq!((p.category.n_objects(), p.category.n_morphisms()), (3, 5));
        p.category.check_laws().unwrap();
        let q = product_category(&FinCategory::arrow(), &FinCategory::arrow());
        assert_eq!(q.category.n_morphisms(), 9);
        q.category.check_laws().unwrap();
    }

    #[test]
    fn pullback_diagonal_and_empty() {
        let c = cospan();
        let id = Passage::identity(&c);
        let pb = pullback_category(&id, &id).unwrap();
        assert_eq!((pb.category.n_objects(), pb.category.n_morphisms()), (3, 5));
        let a = c.obj_by_name("a").unwrap();
        let b = c.obj_by_name("b").unwrap();
        let ka = Passage::constant(FinCategory::arrow(), c.clone(), a);
        let kb = Passage::constant(FinCategory::arrow(), c.clone(), b);
        assert_eq!(pullback_category(&ka, &kb).unwrap().category.n_objects(), 0);
        // Both constant at the same object: the full product.
        let ka2 = Passage::constant(cospan(), c.clone(), a);
        let pb = pullback_category(&ka, &ka2).unwrap();
        let prod = product_category(&FinCategory::arrow(), &cospan());
        assert_eq!(pb.category, prod.category);
    }

    #[test]
    fn comma_examples() {
        let t = FinCategory::terminal();
        let id = Passage::identity(&t);
        let cm = comma_category(&id, &id).unwrap();
        assert_eq!((cm.category.n_objects(), cm.category.n_morphisms()), (1, 1));

        let uv = FinCategory::discrete(["u", "v"]);
        let u = uv.obj_by_name("u").unwrap();
        let v = uv.obj_by_name("v").unwrap();
        let k = Passage::constant(t.clone(), uv.clone(), u);
        let at_v = Passage::constant(t.clone(), uv.clone(), v);
        let at_u = Passage::constant(t.clone(), uv.clone(), u);
        assert_eq!(comma_category(&k, &at_v).unwrap().category.n_objects(), 0);
        let cu = comma_category(&k, &at_u).unwrap();
        assert_eq!((cu.category.n_objects(), cu.category.n_morphisms()), (1, 1));

        let empty = Passage::new(FinCategory::empty(), uv.clone(), vec![], vec![]).unwrap();
        assert_eq!(comma_category(&empty, &at_v).unwrap().category.n_objects(), 0);
    }
}
