use super::{Bridge, CatError, FinCategory, HomSets, MorId, ObjId, Passage};

/// Every passage `C → D` between finite categories.
pub fn all_passages(c: &FinCategory, d: &FinCategory) -> Vec<Passage<FinCategory>> {
    let mut out = Vec::new();
    let n = c.n_objects();
    let mut objs = vec![ObjId(0); n];
    if n == 0 {
        out.push(Passage::new_unchecked(c.clone(), d.clone(), vec![], vec![]).expect("empty passage"));
        return out;
    }
    if d.n_objects() == 0 {
        return out;
    }
    loop {
        let mut mors: Vec<Option<MorId>> = vec![None; c.n_morphisms()];
        for x in c.objects() {
            mors[c.id(x).0] = Some(d.id(objs[x.0]));
        }
        let free: Vec<MorId> = c.morphisms().filter(|m| !c.is_identity(*m)).collect();
        fill_morphisms(c, d, &objs, &free, 0, &mut mors, &mut out);
        // Advance the object assignment like an odometer.
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            objs[i].0 += 1;
            if objs[i].0 < d.n_objects() {
                break;
            }
            objs[i].0 = 0;
            i += 1;
        }
    }
}

fn fill_morphisms(
    c: &FinCategory,
    d: &FinCategory,
    objs: &[ObjId],
    free: &[MorId],
    k: usize,
    mors: &mut Vec<Option<MorId>>,
    out: &mut Vec<Passage<FinCategory>>,
) {
    if k == free.len() {
        out.push(Passage::new_unchecked(
            c.clone(),
            d.clone(),
            objs.to_vec(),
            mors.iter().map(|m| m.expect("assigned")).collect(),
        )
        .expect("sized"));
        return;
    }
    let m = free[k];
    let candidates: Vec<MorId> = d.homs(objs[c.src(m).0], objs[c.tgt(m).0]).collect();
    for cand in candidates {
        mors[m.0] = Some(cand);
        if consistent(c, d, mors) {
            fill_morphisms(c, d, objs, free, k + 1, mors, out);
        }
    }
    mors[m.0] = None;
}

fn consistent(c: &FinCategory, d: &FinCategory, mors: &[Option<MorId>]) -> bool {
    c.composable_pairs().all(|(f, g, h)| match (mors[f.0], mors[g.0], mors[h.0]) {
        (Some(a), Some(b), Some(ab)) => d.comp(a, b) == Some(ab),
        _ => true,
    })
}

/// Every natural transformation `F ⇒ G` between passages into a category
/// with enumerable hom-sets.
pub fn all_bridges<T: HomSets>(f: &Passage<T>, g: &Passage<T>) -> Result<Vec<Bridge<T>>, CatError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(CatError::EndpointMismatch("bridges between passages with different endpoints".into()));
    }
    let c = f.source();
    let t = f.target();
    let homs: Vec<Vec<T::Mor>> = c.objects().map(|x| t.hom(f.obj(x), g.obj(x))).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut chosen: Vec<T::Mor> = Vec::with_capacity(c.n_objects());
    search_bridges(f, g, &homs, &mut chosen, &mut out);
    Ok(out)
}

fn search_bridges<T: HomSets>(
    f: &Passage<T>,
    g: &Passage<T>,
    homs: &[Vec<T::Mor>],
    chosen: &mut Vec<T::Mor>,
    out: &mut Vec<Bridge<T>>,
) {
    let c = f.source();
    let k = chosen.len();
    if k == homs.len() {
        out.push(Bridge::new_unchecked(f.clone(), g.clone(), chosen.clone()).expect("sized"));
        return;
    }
    for cand in &homs[k] {
        chosen.push(cand.clone());
        // Naturality squares whose two corners are both assigned.
        let ok = c.morphisms().all(|m| {
            let (s, t) = (c.src(m).0, c.tgt(m).0);
            if s > k || t > k {
                return true;
            }
            let cat = f.target();
            let lhs = cat.compose(f.mor(m), &chosen[t]);
            let rhs = cat.compose(&chosen[s], g.mor(m));
            lhs.is_some() && lhs == rhs
        });
        if ok {
            search_bridges(f, g, homs, chosen, out);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::{FinSet, SetFn};
    use crate::fincat::SetCat;

    #[test]
    fn passages_into_arrow() {
        let a = FinCategory::arrow();
        // Monotone maps 2 → 2.
        assert_eq!(all_passages(&a, &a).len(), 3);
        assert_eq!(all_passages(&FinCategory::terminal(), &a).len(), 2);
        assert_eq!(all_passages(&FinCategory::empty(), &a).len(), 1);
        assert_eq!(all_passages(&a, &FinCategory::empty()).len(), 0);
        for p in all_passages(&a, &a) {
            p.validate().unwrap();
        }
    }

    #[test]
    fn bridges_between_set_functors() {
        let t = FinCategory::terminal();
        let two = FinSet::atoms(["0", "1"]);
        let three = FinSet::atoms(["a", "b", "c"]);
        let f = Passage::constant(t.clone(), SetCat, two.clone());
        let g = Passage::constant(t.clone(), SetCat, three.clone());
        assert_eq!(all_bridges(&f, &g).unwrap().len(), 9);

        // Over the arrow, bridges must commute with the image of u.
        let a = FinCategory::arrow();
        let id2 = SetFn::identity(&two);
        let f = Passage::from_fn(a.clone(), SetCat, |_| two.clone(), |_| id2.clone()).unwrap();
        let bs = all_bridges(&f, &f).unwrap();
        // Pairs (α0, α1) of endomaps with α0 = α1.
        assert_eq!(bs.len(), 4);
        for b in bs {
            b.validate().unwrap();
        }
    }
}
