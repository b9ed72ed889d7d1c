use super::list::{colimit_in_listx, limit_in_listx};
use super::set::{colimit_in_set, limit_in_set, set_quotient};
use super::{LimitResult, UnivError};
use crate::base::{ListX, SignedDomain, Table, TableMorphism, TblA, TblCat};
use crate::diagrams::{Database, DatabaseMorphism, LaxMorphism};
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::{Category, Cone, ConeKind, Passage};

/// The signature diagram of a fixed-A database, covariant over its shape:
/// `r: a → b` goes to the arity map `I_a → I_b` of `T(r)`.
pub fn signature_diagram(db: &Database<TblA>) -> Passage<ListX> {
    let tables = db.tables();
    Passage::new_unchecked(
        db.shape().clone(),
        ListX::new(tables.target().domain.sorts().clone()),
        tables.object_images().iter().map(|t| t.signature().clone()).collect(),
        tables.morphism_images().iter().map(|m| m.dom().signature_morphism()).collect(),
    )
    .expect("sizes match")
}

/// The join: the limit of the table diagram in Tbl(A).
///
/// Signature: the colimit of the signature diagram. Keys: compatible key
/// families whose rows glue to one tuple over that signature.
pub fn limit_tbl(db: &Database<TblA>) -> Result<LimitResult<TblA>, UnivError> {
    let a = db.tables().target().domain.clone();
    let sigs = colimit_in_listx(&signature_diagram(db))?;
    let keys = limit_in_set(&db.key_diagram());
    let s0 = sigs.vertex().clone();
    let i0 = s0.arity().clone();
    let mut rows = Vec::new();
    'family: for fam in keys.vertex().iter() {
        let ks = fam.as_tuple().expect("family");
        let mut slots: Vec<Option<Elem>> = vec![None; i0.len()];
        for r in db.shape().objects() {
            let t = db.table(r);
            let vals = t.tuple(&ks[r.0]).expect("key").as_tuple().expect("tuple");
            for (i, v) in vals.iter().enumerate() {
                let j = i0.index_of(sigs.legs()[r.0].h().at(i)).expect("leg lands in I0");
                match &slots[j] {
                    Some(w) if w != v => continue 'family,
                    _ => slots[j] = Some(v.clone()),
                }
            }
        }
        let t0: Vec<Elem> = slots.into_iter().map(|s| s.expect("colimit legs are jointly onto")).collect();
        rows.push((fam.clone(), Elem::Tuple(t0)));
    }
    let k0: FinSet = rows.iter().map(|(k, _)| k.clone()).collect();
    let join = Table::new(SignedDomain::new(s0, a)?, k0.clone(), rows)?;
    let legs = db
        .shape()
        .objects()
        .map(|r| {
            let proj = keys.legs()[r.0].images();
            let images = k0.iter().map(|k| proj[keys.vertex().index_of(k).expect("family")].clone()).collect();
            TableMorphism::fixed(
                join.clone(),
                db.table(r).clone(),
                sigs.legs()[r.0].h().clone(),
                SetFn::from_images_unchecked(k0.clone(), db.table(r).keys().clone(), images),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone { kind: ConeKind::Limit, vertex: join.clone(), legs };
    let sig_diagram = sigs.diagram.clone();
    Ok(LimitResult::new(db.tables().clone(), cone, move |c: &Cone<TblA>| {
        let v = &c.vertex;
        let sig_cone = Cone {
            kind: ConeKind::Colimit,
            vertex: v.signature().clone(),
            legs: c.legs.iter().map(|m| m.dom().signature_morphism()).collect(),
        };
        sig_cone.check_over(&sig_diagram).map_err(|e| UnivError::NoMediator(e.to_string()))?;
        let h = sigs.mediate(&sig_cone)?;
        let key_cone = Cone { kind: ConeKind::Limit, vertex: v.keys().clone(), legs: c.legs.iter().map(|m| m.keys().clone()).collect() };
        let k = keys.mediate(&key_cone)?;
        let k = k.with_codomain(k0.clone()).map_err(|_| UnivError::NoMediator("a key family does not glue".into()))?;
        TableMorphism::fixed(v.clone(), join.clone(), h.h().clone(), k).map_err(|e| UnivError::NoMediator(e.to_string()))
    }))
}

/// The sum: the colimit of the table diagram in Tbl(A).
///
/// Signature: the limit of the signature diagram. Keys: the colimit of the
/// key diagram; each key class carries the common restriction of its
/// members' rows.
pub fn colimit_tbl(db: &Database<TblA>) -> Result<LimitResult<TblA>, UnivError> {
    let a = db.tables().target().domain.clone();
    let sigs = limit_in_listx(&signature_diagram(db))?;
    let kd = db.key_diagram();
    let q = set_quotient(&kd);
    let keys = colimit_in_set(&kd);
    let s0 = sigs.vertex().clone();
    let restrict = |r: crate::fincat::ObjId, k: &Elem| -> Elem {
        let t = db.table(r);
        let vals = t.tuple(k).expect("key").as_tuple().expect("tuple");
        let pi = sigs.legs()[r.0].h();
        Elem::Tuple(pi.images().iter().map(|i| vals[t.signature().arity().index_of(i).expect("attr")].clone()).collect())
    };
    let mut rows = Vec::new();
    for c in q.classes.iter() {
        let mut it = q.members[c].iter().map(|(r, k)| restrict(*r, k));
        let first = it.next().expect("class has members");
        if it.any(|t| t != first) {
            return Err(UnivError::TupleGluingInconsistent { key: c.clone() });
        }
        rows.push((c.clone(), first));
    }
    let sum = Table::new(SignedDomain::new(s0, a)?, q.classes.clone(), rows)?;
    let legs = db
        .shape()
        .objects()
        .map(|r| TableMorphism::fixed(db.table(r).clone(), sum.clone(), sigs.legs()[r.0].h().clone(), keys.legs()[r.0].clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone { kind: ConeKind::Colimit, vertex: sum.clone(), legs };
    let sig_diagram = sigs.diagram.clone();
    Ok(LimitResult::new(db.tables().clone(), cone, move |c: &Cone<TblA>| {
        let v = &c.vertex;
        let sig_cone = Cone {
            kind: ConeKind::Limit,
            vertex: v.signature().clone(),
            legs: c.legs.iter().map(|m| m.dom().signature_morphism()).collect(),
        };
        sig_cone.check_over(&sig_diagram).map_err(|e| UnivError::NoMediator(e.to_string()))?;
        let h = sigs.mediate(&sig_cone)?;
        let key_cocone = Cone { kind: ConeKind::Colimit, vertex: v.keys().clone(), legs: c.legs.iter().map(|m| m.keys().clone()).collect() };
        let k = keys.mediate(&key_cocone)?;
        TableMorphism::fixed(sum.clone(), v.clone(), h.h().clone(), k).map_err(|e| UnivError::NoMediator(e.to_string()))
    }))
}

/// A general database whose tables all share one type domain and whose
/// arrows lie over its identity, as a fixed-A database.
fn as_fixed(db: &Database<TblCat>) -> Result<Database<TblA>, UnivError> {
    let tables = db.tables();
    let Some(first) = tables.object_images().first() else {
        return Err(UnivError::UnsupportedVaryingTypeDomains);
    };
    let a = first.type_domain().clone();
    let same = tables.object_images().iter().all(|t| t.type_domain() == &a)
        && tables.morphism_images().iter().all(|m| m.is_over_identity());
    if !same {
        return Err(UnivError::UnsupportedVaryingTypeDomains);
    }
    let p = Passage::new_unchecked(
        tables.source().clone(),
        TblA::new(a),
        tables.object_images().to_vec(),
        tables.morphism_images().to_vec(),
    )?;
    Ok(Database::new(db.shape().clone(), p)?)
}

/// Join of a general database; rejected unless it is fixed-A.
pub fn join_general(db: &Database<TblCat>) -> Result<LimitResult<TblA>, UnivError> {
    limit_tbl(&as_fixed(db)?)
}

/// Sum of a general database; rejected unless it is fixed-A.
pub fn sum_general(db: &Database<TblCat>) -> Result<LimitResult<TblA>, UnivError> {
    colimit_tbl(&as_fixed(db)?)
}

/// The morphism `join(T1) → join(T2)` induced by a database morphism
/// `⟨R2, T2⟩ → ⟨R1, T1⟩`: the mediator for the cone with legs
/// `π_{R r} ; ξ_r`.
pub fn lim_passage_on_morphism(m: &DatabaseMorphism<TblA>) -> Result<TableMorphism, UnivError> {
    let j1 = limit_tbl(m.target())?;
    let j2 = limit_tbl(m.source())?;
    let tbl = m.source().tables().target();
    let legs = m
        .source()
        .shape()
        .objects()
        .map(|r| {
            tbl.compose(&j1.legs()[m.shape().obj(r).0], m.component(r))
                .ok_or_else(|| UnivError::NoMediator("component does not compose with the join leg".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    j2.mediate(&Cone { kind: ConeKind::Limit, vertex: j1.vertex().clone(), legs })
}

/// The morphism `colim(S2) → colim(S1)` induced by a schema morphism
/// `⟨R, σ⟩ : S2 → S1` over a fixed sort set.
pub fn colim_passage_on_schema_morphism(
    m: &LaxMorphism<ListX>,
) -> Result<crate::base::SignatureMorphism, UnivError> {
    let c2 = colimit_in_listx(m.source())?;
    let c1 = colimit_in_listx(m.target())?;
    let list = m.source().target();
    let legs = m
        .source()
        .source()
        .objects()
        .map(|r| {
            list.compose(m.bridge().component(r), &c1.legs()[m.shape().obj(r).0])
                .ok_or_else(|| UnivError::NoMediator("component does not compose with the colimit leg".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    c2.mediate(&Cone { kind: ConeKind::Colimit, vertex: c1.vertex().clone(), legs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{column_table, join_domain, join_fixture, single_table_db};

    #[test]
    fn join_fixture_has_three_rows() {
        let j = limit_tbl(&join_fixture()).unwrap();
        let t = j.vertex();
        assert_eq!(t.keys().len(), 3);
        assert_eq!(t.signature().arity().len(), 1);
        let mut vals: Vec<String> = t.rows().iter().map(|r| r.to_string()).collect();
        vals.sort();
        assert_eq!(vals, vec!["(1)", "(1)", "(2)"]);
        assert!(j.mediate(&j.cone).unwrap() == TableMorphism::identity(t));
    }

    #[test]
    fn single_table_join_and_sum() {
        let t = column_table(&join_domain(), "a", "p", &[("k", "1"), ("j", "2")]);
        let db = single_table_db(t.clone());
        let j = limit_tbl(&db).unwrap();
        assert_eq!(j.vertex().keys().len(), 2);
        assert!(j.legs()[0].keys().is_injective());
        let s = colimit_tbl(&db).unwrap();
        assert_eq!(s.vertex().keys().len(), 2);
    }

    #[test]
    fn empty_join_is_terminal_table() {
        let a = join_domain();
        let db = Database::new(
            crate::fincat::FinCategory::empty(),
            Passage::new(crate::fincat::FinCategory::empty(), TblA::new(a.clone()), vec![], vec![]).unwrap(),
        )
        .unwrap();
        let j = limit_tbl(&db).unwrap();
        assert_eq!(j.vertex(), &Table::terminal(&a));
        let s = colimit_tbl(&db).unwrap();
        assert!(s.vertex().keys().is_empty());
        assert_eq!(s.vertex().signature(), &crate::base::Signature::terminal(a.sorts()));
    }

    #[test]
    fn general_join_rejects_varying_domains() {
        let db = join_fixture().to_general();
        assert!(join_general(&db).is_ok());
        let other = crate::fixtures::a_flat();
        let t = column_table(&other, "a", "p", &[("k", "1")]);
        let shape = crate::fincat::FinCategory::discrete(["u", "v"]);
        let t2 = db.table(crate::fincat::ObjId(0)).clone();
        let p = Passage::new(
            shape.clone(),
            TblCat,
            vec![t.clone(), t2.clone()],
            vec![TableMorphism::identity(&t), TableMorphism::identity(&t2)],
        )
        .unwrap();
        let mixed = Database::new(shape, p).unwrap();
        assert_eq!(join_general(&mixed).unwrap_err(), UnivError::UnsupportedVaryingTypeDomains);
    }

    #[test]
    fn identity_morphism_induces_identity() {
        let db = join_fixture();
        let id = DatabaseMorphism::identity(&db);
        let m = lim_passage_on_morphism(&id).unwrap();
        assert_eq!(m, TableMorphism::identity(limit_tbl(&db).unwrap().vertex()));
    }
}
