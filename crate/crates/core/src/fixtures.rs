//! Small named instances used in documentation, tests and the CLI.

use crate::base::{Signature, SignedDomain, Table, TableMorphism, TblA, TypeDomain};
use crate::diagrams::Database;
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::FinCategory;

/// `A♭`: sorts `{p, q}`, values `{1, 2, 3}`, `1 ⊨ p`, `2 ⊨ p`, `2 ⊨ q`,
/// `3 ⊨ q`.
pub fn a_flat() -> TypeDomain {
    TypeDomain::from_atoms(&["p", "q"], &["1", "2", "3"], &[("1", "p"), ("2", "p"), ("2", "q"), ("3", "q")])
        .expect("valid classification")
}

/// One sort `p` classifying both values `1` and `2`.
pub fn join_domain() -> TypeDomain {
    TypeDomain::from_atoms(&["p"], &["1", "2"], &[("1", "p"), ("2", "p")]).expect("valid classification")
}

/// A one-column table over `a` with attribute `attr`.
pub fn column_table(a: &TypeDomain, attr: &str, sort: &str, rows: &[(&str, &str)]) -> Table {
    let d = SignedDomain::new(Signature::from_atoms(a.sorts(), &[(attr, sort)]).expect("signature"), a.clone())
        .expect("signed domain");
    Table::new(
        d,
        FinSet::atoms(rows.iter().map(|(k, _)| *k)),
        rows.iter().map(|(k, v)| (Elem::atom(*k), Elem::tuple([Elem::atom(*v)]))),
    )
    .expect("valid table")
}

pub fn fn_from(dom: &FinSet, cod: &FinSet, pairs: &[(&str, &str)]) -> SetFn {
    SetFn::from_pairs(dom.clone(), cod.clone(), pairs.iter().map(|(a, b)| (Elem::atom(*a), Elem::atom(*b))))
        .expect("valid function")
}

/// The span shape `L ← M → R` with edges `l: M → L` and `r: M → R`.
pub fn span_shape() -> FinCategory {
    FinCategory::free_on_acyclic_graph(&["L", "M", "R"], &[("l", "M", "L"), ("r", "M", "R")]).expect("acyclic")
}

/// The join fixture: `T_L` (keys k1, k2; a ↦ 1, 2), `T_M` (m1, m2; c ↦ 1, 2),
/// `T_R` (r1, r2, r3; b ↦ 1, 1, 2), with `c ↦ a`, `k1 ↦ m1`, `k2 ↦ m2` and
/// `c ↦ b`, `r1, r2 ↦ m1`, `r3 ↦ m2`. Its join has three rows.
pub fn join_fixture() -> Database<TblA> {
    let a = join_domain();
    let tl = column_table(&a, "a", "p", &[("k1", "1"), ("k2", "2")]);
    let tm = column_table(&a, "c", "p", &[("m1", "1"), ("m2", "2")]);
    let tr = column_table(&a, "b", "p", &[("r1", "1"), ("r2", "1"), ("r3", "2")]);
    let shape = span_shape();
    let l = shape.mor_by_name("l").expect("edge");
    let r = shape.mor_by_name("r").expect("edge");
    let ml = TableMorphism::fixed(
        tl.clone(),
        tm.clone(),
        fn_from(tm.signature().arity(), tl.signature().arity(), &[("c", "a")]),
        fn_from(tl.keys(), tm.keys(), &[("k1", "m1"), ("k2", "m2")]),
    )
    .expect("valid morphism");
    let mr = TableMorphism::fixed(
        tr.clone(),
        tm.clone(),
        fn_from(tm.signature().arity(), tr.signature().arity(), &[("c", "b")]),
        fn_from(tr.keys(), tm.keys(), &[("r1", "m1"), ("r2", "m1"), ("r3", "m2")]),
    )
    .expect("valid morphism");
    let tables = vec![tl, tm, tr];
    Database::from_arrows(TblA::new(a), shape, tables, vec![(l, ml), (r, mr)], true).expect("valid database")
}

/// A database with a single table.
pub fn single_table_db(t: Table) -> Database<TblA> {
    let a = t.type_domain().clone();
    Database::from_arrows(TblA::new(a), FinCategory::terminal(), vec![t], vec![], true).expect("valid database")
}
