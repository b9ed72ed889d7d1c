mod common;

use common::{
    brute_families, dbcat_pool, join_iso_witness, join_vertices, kan_shapes, leg_iso, nested_loop_join, orbit_classes,
    sum_vertices,
};
use fole::base::{Adjunction, Signature, Table, TableMorphism};
use fole::diagrams::{Database, DatabaseMorphism};
use fole::elem::{Elem, FinSet};
use fole::fincat::{all_bridges, all_cones, compose_passages, Cone, ConeKind, FinCategory, HomSets, Passage};
use fole::fixtures::{join_fixture, single_table_db, span_shape};
use fole::gen::{self, Bounds, ShapeKind};
use fole::univ::{
    check_continuity, colimit_in_listx, colimit_in_set, colimit_tbl, db_coproduct, db_initial_universal, db_product,
    finite_model, groth_structured_colimit, groth_structured_limit, grothendieck, kan_adjunction, lan,
    lim_passage_on_morphism, limit_in_set, limit_tbl, oracle_universal_fin, ran, signature_diagram, Convention,
    DbCat, SetFunctors, ShapeProjection, UnivError,
};
use rand::Rng;

fn small_shapes() -> Vec<FinCategory> {
    vec![
        FinCategory::empty(),
        FinCategory::discrete(["x", "y"]),
        span_shape(),
        gen::shape(ShapeKind::ThreeArrow),
        FinCategory::free_on_acyclic_graph(&["a", "b"], &[("s", "a", "b"), ("t", "a", "b")]).unwrap(),
    ]
}

#[test]
fn set_colimit_matches_orbit_closure() {
    let mut r = gen::rng(1);
    for shape in small_shapes() {
        for _ in 0..15 {
            let d = gen::set_diagram(&mut r, &shape, 3);
            let c = colimit_in_set(&d);
            let classes = orbit_classes(&d);
            assert_eq!(c.vertex().len(), classes.len());
            for class in &classes {
                let images: Vec<&Elem> =
                    class.iter().map(|(x, e)| c.legs()[*x].apply(e).unwrap()).collect();
                assert!(images.iter().all(|i| *i == images[0]));
            }
        }
    }
}

#[test]
fn set_limit_matches_brute_force() {
    let mut r = gen::rng(2);
    for shape in small_shapes() {
        for _ in 0..15 {
            let d = gen::set_diagram(&mut r, &shape, 3);
            let l = limit_in_set(&d);
            let fams = brute_families(&d);
            assert_eq!(l.vertex().len(), fams.len());
            for e in l.vertex().iter() {
                let fam: Vec<Elem> = l.legs().iter().map(|p| p.apply(e).unwrap().clone()).collect();
                assert!(fams.contains(&fam));
            }
        }
    }
}

#[test]
fn set_universality_against_all_small_cones() {
    let mut r = gen::rng(3);
    let span = span_shape();
    for _ in 0..10 {
        let d = gen::set_diagram(&mut r, &span, 2);
        let lim = limit_in_set(&d);
        let colim = colimit_in_set(&d);
        for n in 0..=2 {
            let v = FinSet::atoms((0..n).map(|i| format!("v{i}")));
            for c in all_cones(&d, ConeKind::Limit, &v).unwrap().iter().take(30) {
                lim.check_universal_for(c).unwrap();
            }
            for c in all_cones(&d, ConeKind::Colimit, &v).unwrap().iter().take(30) {
                colim.check_universal_for(c).unwrap();
            }
        }
    }
}

#[test]
fn join_fixture_has_three_rows_and_one_column() {
    let j = limit_tbl(&join_fixture()).unwrap();
    assert_eq!(j.vertex().keys().len(), 3);
    assert_eq!(j.vertex().signature().arity().len(), 1);
    let mut vals: Vec<String> = j.vertex().rows().iter().map(|r| r.to_string()).collect();
    vals.sort();
    assert_eq!(vals, ["(1)", "(1)", "(2)"]);
}

#[test]
fn join_matches_nested_loop_oracle() {
    let mut r = gen::rng(4);
    for kind in [ShapeKind::Cospan, ShapeKind::ThreeArrow] {
        for _ in 0..25 {
            let a = gen::type_domain(&mut r, Bounds::default());
            let db = gen::database(&mut r, &a, &gen::shape(kind), Bounds::default());
            let j = limit_tbl(&db).unwrap();
            let o = nested_loop_join(&db);
            join_iso_witness(&j, &o).unwrap();
            // The join's signature is the reference signature on the nose.
            let reference = colimit_in_listx(&signature_diagram(&db)).unwrap();
            assert_eq!(j.vertex().signature(), reference.vertex());
        }
    }
}

#[test]
fn join_and_sum_are_universal_against_candidates() {
    let mut r = gen::rng(5);
    let b = Bounds { keys: 3, ..Bounds::default() };
    for kind in [ShapeKind::Cospan, ShapeKind::ThreeArrow] {
        for _ in 0..6 {
            let a = gen::type_domain(&mut r, b);
            let db = gen::database(&mut r, &a, &gen::shape(kind), b);
            let j = limit_tbl(&db).unwrap();
            let mut seen = 0;
            for v in join_vertices(&mut r, &db, j.vertex()) {
                for c in all_cones(db.tables(), ConeKind::Limit, &v).unwrap().iter().take(20) {
                    j.check_universal_for(c).unwrap();
                    seen += 1;
                }
            }
            assert!(seen > 0);
            let s = colimit_tbl(&db).unwrap();
            for v in sum_vertices(&mut r, &db, s.vertex()) {
                for c in all_cones(db.tables(), ConeKind::Colimit, &v).unwrap().iter().take(20) {
                    s.check_universal_for(c).unwrap();
                }
            }
        }
    }
}

#[test]
fn sum_of_discrete_pair_is_disjoint_union() {
    let a = fole::fixtures::join_domain();
    let t1 = fole::fixtures::column_table(&a, "a", "p", &[("k1", "1"), ("k2", "2")]);
    let t2 = fole::fixtures::column_table(&a, "a", "p", &[("j1", "2")]);
    let c = db_coproduct(&single_table_db(t1), &single_table_db(t2)).unwrap();
    let s = colimit_tbl(&c.database).unwrap();
    assert_eq!(s.vertex().keys().len(), 3);
    // Fiber product over the shared sort: one pair of attributes.
    assert_eq!(s.vertex().signature().arity().len(), 1);
}

#[test]
fn empty_shape_join_and_sum() {
    let a = fole::fixtures::join_domain();
    let db = fole::univ::db_initial(&a);
    let j = limit_tbl(&db).unwrap();
    assert_eq!(j.vertex(), &Table::terminal(&a));
    let s = colimit_tbl(&db).unwrap();
    assert!(s.vertex().keys().is_empty());
    assert_eq!(s.vertex().signature(), &Signature::terminal(a.sorts()));
}

#[test]
fn varying_type_domains_are_rejected() {
    let info = {
        let mut r = gen::rng(6);
        gen::infomorphism(&mut r, Bounds::default())
    };
    let a1 = info.target().clone();
    let a2 = info.source().clone();
    let t1 = Table::terminal(&a1);
    let t2 = Table::terminal(&a2);
    let shape = FinCategory::discrete(["x", "y"]);
    let tables = Passage::new(
        fole::fincat::opposite(&shape),
        fole::base::TblCat,
        vec![t1.clone(), t2.clone()],
        vec![TableMorphism::identity(&t1), TableMorphism::identity(&t2)],
    )
    .unwrap();
    let db = Database::new(shape, tables).unwrap();
    if a1 != a2 {
        assert_eq!(fole::univ::join_general(&db).unwrap_err(), UnivError::UnsupportedVaryingTypeDomains);
    }
}

#[test]
fn induced_join_morphisms_are_functorial() {
    let db = join_fixture();
    let id = DatabaseMorphism::identity(&db);
    let m = lim_passage_on_morphism(&id).unwrap();
    assert_eq!(m, TableMorphism::identity(limit_tbl(&db).unwrap().vertex()));
    // Collapse the discrete pair {x, y} onto the single object of a table.
    let a = fole::fixtures::join_domain();
    let t = fole::fixtures::column_table(&a, "a", "p", &[("k1", "1"), ("k2", "2")]);
    let one = single_table_db(t.clone());
    let pair = db_coproduct(&one, &one).unwrap();
    let collapse = pair.copair(&DatabaseMorphism::identity(&one), &DatabaseMorphism::identity(&one)).unwrap();
    let induced = lim_passage_on_morphism(&collapse).unwrap();
    let jp = limit_tbl(&pair.database).unwrap();
    assert_eq!(jp.vertex().keys().len(), 4);
    assert_eq!(induced.source().keys().len(), 2);
    // Functoriality on the composable pair (left injection, collapse).
    let composite = pair.left.then(&collapse).unwrap();
    let lhs = lim_passage_on_morphism(&composite).unwrap();
    let rhs = lim_passage_on_morphism(&collapse).unwrap().then(&lim_passage_on_morphism(&pair.left).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn database_constructions_are_universal() {
    let mut r = gen::rng(7);
    let b = Bounds { keys: 2, attrs: 1, values: 3, ..Bounds::default() };
    for _ in 0..4 {
        let a = gen::type_domain(&mut r, b);
        let d1 = gen::database(&mut r, &a, &FinCategory::arrow(), b);
        let t = d1.table(fole::fincat::ObjId(0)).clone();
        let d2 = single_table_db(t);
        let cat = DbCat { domain: a.clone() };

        let init = db_initial_universal(&a);
        for x in dbcat_pool(&mut r, &a, &[d1.clone()]) {
            let c = Cone { kind: ConeKind::Colimit, vertex: x, legs: vec![] };
            init.check_universal_for(&c).unwrap();
        }

        let co = db_coproduct(&d1, &d2).unwrap();
        let u = co.universal();
        let mut seen = 0;
        for x in dbcat_pool(&mut r, &a, &[d1.clone(), co.database.clone()]) {
            for c in all_cones(&u.diagram, ConeKind::Colimit, &x).unwrap().iter().take(10) {
                u.check_universal_for(c).unwrap();
                seen += 1;
            }
        }
        assert!(seen > 0);

        let pr = db_product(&d1, &d2).unwrap();
        let p = pr.universal();
        for x in dbcat_pool(&mut r, &a, &[d1.clone(), d2.clone(), pr.database.clone()]) {
            for c in all_cones(&p.diagram, ConeKind::Limit, &x).unwrap().iter().take(10) {
                let exhaustive = cat
                    .hom(&c.vertex, &pr.database)
                    .unwrap()
                    .iter()
                    .filter(|h| c.factors_through(&cat, &p.cone, h))
                    .count();
                match p.check_universal_for(c) {
                    Ok(_) => assert_eq!(exhaustive, 1),
                    Err(UnivError::NoMediator(_)) => assert_eq!(exhaustive, 0),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn shape_projection_preserves_coproduct_and_initial() {
    let mut r = gen::rng(8);
    let b = Bounds { keys: 2, attrs: 1, ..Bounds::default() };
    let a = gen::type_domain(&mut r, b);
    let d1 = gen::database(&mut r, &a, &FinCategory::arrow(), b);
    let d2 = single_table_db(d1.table(fole::fincat::ObjId(1)).clone());
    let proj = ShapeProjection(DbCat { domain: a.clone() });
    let pool = vec![FinCategory::terminal(), FinCategory::discrete(["x", "y"]), FinCategory::arrow()];
    let co = db_coproduct(&d1, &d2).unwrap();
    assert!(check_continuity(&proj, &co.universal(), &pool).unwrap().passed());
    assert!(check_continuity(&proj, &db_initial_universal(&a), &pool).unwrap().passed());
}

#[test]
fn kan_factorizations_are_unique() {
    for k in kan_shapes() {
        let lower = SetFunctors { shape: k.source().clone() }.all_bounded(1);
        let upper = SetFunctors { shape: k.target().clone() }.all_bounded(1);
        for s in &lower {
            let l = lan(&k, s).unwrap();
            let rr = ran(&k, s).unwrap();
            for s1 in &upper {
                let ks1 = compose_passages(&k, s1).unwrap();
                for alpha in all_bridges(s, &ks1).unwrap() {
                    let beta = l.factor(s1, &alpha).unwrap();
                    let hits = all_bridges(&l.extension, s1)
                        .unwrap()
                        .into_iter()
                        .filter(|bb| {
                            let kb = fole::fincat::whisker_left(&k, bb).unwrap();
                            fole::fincat::vertical_compose(&l.bridge, &kb).unwrap() == alpha
                        })
                        .collect::<Vec<_>>();
                    assert_eq!(hits, vec![beta]);
                }
                for alpha in all_bridges(&ks1, s).unwrap() {
                    let beta = rr.factor(s1, &alpha).unwrap();
                    let hits = all_bridges(s1, &rr.extension)
                        .unwrap()
                        .into_iter()
                        .filter(|bb| {
                            let kb = fole::fincat::whisker_left(&k, bb).unwrap();
                            fole::fincat::vertical_compose(&kb, &rr.bridge).unwrap() == alpha
                        })
                        .collect::<Vec<_>>();
                    assert_eq!(hits, vec![beta]);
                }
            }
        }
    }
}

#[test]
fn kan_adjunction_triangles() {
    for k in kan_shapes().into_iter().take(4) {
        let (left, right) = kan_adjunction(&k);
        for s in (SetFunctors { shape: k.source().clone() }).all_bounded(2).iter().take(40) {
            assert!(left.left_triangle(s));
            assert!(right.right_triangle(s));
        }
        for s1 in (SetFunctors { shape: k.target().clone() }).all_bounded(1) {
            assert!(left.right_triangle(&s1));
            assert!(right.left_triangle(&s1));
        }
    }
}

#[test]
fn lan_composes_along_composite_passages() {
    let chain = gen::chain(3);
    let arrow = FinCategory::arrow();
    let k1 = Passage::constant(FinCategory::terminal(), arrow.clone(), arrow.obj_by_name("a").unwrap());
    let k2 = fole::fincat::all_passages(&arrow, &chain).into_iter().nth(1).unwrap();
    let k12 = compose_passages(&k1, &k2).unwrap();
    for s in (SetFunctors { shape: FinCategory::terminal() }).all_bounded(2) {
        let once = lan(&k12, &s).unwrap().extension;
        let twice = lan(&k2, &lan(&k1, &s).unwrap().extension).unwrap().extension;
        assert!(fole::univ::natural_iso(&once, &twice).unwrap().is_some());
    }
}

#[test]
fn grothendieck_structured_limits_match_oracle() {
    let mut r = gen::rng(9);
    let shapes = [FinCategory::empty(), FinCategory::discrete(["x", "y"]), span_shape(), FinCategory::arrow()];
    for _ in 0..12 {
        let ix = gen::indexed_adjunction(&mut r, 3, 4);
        for conv in [Convention::Opfibration, Convention::Fibration] {
            let total = grothendieck(&ix, conv).unwrap();
            let cat = &total.category;
            for shape in &shapes {
                let all = fole::fincat::all_passages(shape, cat);
                for _ in 0..3 {
                    let d = &all[r.gen_range(0..all.len())];
                    let s_lim = groth_structured_limit(&total, d).unwrap();
                    let o_lim = oracle_universal_fin(d, ConeKind::Limit).unwrap();
                    assert!(leg_iso(&s_lim, &o_lim));
                    let s_col = groth_structured_colimit(&total, d).unwrap();
                    let o_col = oracle_universal_fin(d, ConeKind::Colimit).unwrap();
                    assert!(leg_iso(&s_col, &o_col));
                    let pool: Vec<_> = ix.index.objects().collect();
                    assert!(check_continuity(&total.projection, &s_lim, &pool).unwrap().passed());
                    assert!(check_continuity(&total.projection, &s_col, &pool).unwrap().passed());
                }
            }
        }
    }
}

#[test]
fn grothendieck_transpose_is_a_bijection() {
    let mut r = gen::rng(10);
    for _ in 0..10 {
        let ix = gen::indexed_adjunction(&mut r, 3, 4);
        let op = grothendieck(&ix, Convention::Opfibration).unwrap();
        let fib = grothendieck(&ix, Convention::Fibration).unwrap();
        assert_eq!(op.category.n_morphisms(), fib.category.n_morphisms());
        let mut images = Vec::new();
        for m in op.category.morphisms() {
            let t = op.transpose_into(&fib, m).unwrap().unwrap();
            assert_eq!(fib.transpose_into(&op, t).unwrap(), Some(m));
            images.push(t);
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), fib.category.n_morphisms());
        // Composition agrees in either presentation.
        for (f, g, fg) in op.category.composable_pairs() {
            let (tf, tg) = (op.transpose_into(&fib, f).unwrap().unwrap(), op.transpose_into(&fib, g).unwrap().unwrap());
            assert_eq!(fib.category.comp(tf, tg), op.transpose_into(&fib, fg).unwrap());
        }
    }
}

#[test]
fn list_fiber_grothendieck_matches_schemed_domain_morphisms() {
    // Two sort sets and one sort function: fibers are List(X) truncated to
    // arity at most one, so hom-sets stay small.
    let mut r = gen::rng(12);
    let info = gen::infomorphism(&mut r, Bounds { sorts: 2, values: 2, ..Bounds::default() });
    let adj = fole::base::ListFiberAdjunction::new(info.f().clone());
    let x2 = info.source().sorts().clone();
    let x1 = info.target().sorts().clone();
    let list2 = fole::base::ListX::new(x2.clone());
    let list1 = fole::base::ListX::new(x1.clone());
    let objs2 = gen::all_signatures(&x2, 1);
    let objs1 = gen::all_signatures(&x1, 1);
    let m2 = finite_model(&list2, objs2.clone()).unwrap();
    let m1 = finite_model(&list1, objs1.clone()).unwrap();
    // Σ_f and f* restricted to the truncations; f* of an arity-1 signature
    // can have larger arity, so keep only sort functions that are injective.
    if !info.f().is_injective() {
        return;
    }
    let sigma = m2.lift(&adj.sigma(), &m1);
    let fstar = m1.lift(&adj.f_star(), &m2);
    let (Ok(sigma), Ok(fstar)) = (sigma, fstar) else { return };
    let w = fole::base::AdjunctionWitness::new(
        sigma.clone(),
        fstar.clone(),
        objs2.iter().map(|s| m2.mor_id(&adj.unit(s)).unwrap()).collect(),
        objs1.iter().map(|s| m1.mor_id(&adj.counit(s)).unwrap()).collect(),
    )
    .unwrap();
    let index = FinCategory::arrow();
    let ix = fole::univ::IndexedAdjunction::new(
        index.clone(),
        vec![m2.category.clone(), m1.category.clone()],
        index
            .morphisms()
            .map(|m| {
                if index.is_identity(m) {
                    let c = if index.src(m).0 == 0 { &m2.category } else { &m1.category };
                    fole::base::AdjunctionWitness::identity(c)
                } else {
                    w.clone()
                }
            })
            .collect(),
    )
    .unwrap();
    let total = grothendieck(&ix, Convention::Opfibration).unwrap();
    // Over the non-identity index arrow, total morphisms ⟨S2⟩ → ⟨S1⟩ are
    // ListX(X1)-morphisms Σ_f S2 → S1.
    let u = index.mor_by_name("u").unwrap();
    for (i2, s2) in objs2.iter().enumerate() {
        for (i1, s1) in objs1.iter().enumerate() {
            let x = total.obj(index.obj_by_name("a").unwrap(), fole::fincat::ObjId(i2));
            let y = total.obj(index.obj_by_name("b").unwrap(), fole::fincat::ObjId(i1));
            let over_u = total.category.homs(x, y).filter(|&m| total.morphisms[m.0].0 == u).count();
            assert_eq!(over_u, list1.hom(&adj.left_obj(s2), s1).unwrap().len());
        }
    }
}
