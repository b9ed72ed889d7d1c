//! Independent brute-force oracles shared by the integration suites.
//! Nothing here calls into the constructions it is used to check; the
//! candidate generators at the bottom only read their results.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fole::base::{Signature, SignedDomain, Table, TableMorphism, TblA};
use fole::diagrams::Database;
use fole::elem::{Elem, FinSet, SetFn};
use fole::fincat::{Category, Cone, ConeKind, FinCategory, MorId, ObjId, Passage, SetCat};
use fole::gen::{self, Bounds};
use fole::univ::LimitResult;
use rand::Rng;

/// Equivalence classes of `⊔_j D(j)` under `x ~ D(m)(x)`, by repeated
/// relabelling until nothing changes. Classes list `(object, element)`.
pub fn orbit_classes(d: &Passage<SetCat>) -> Vec<Vec<(usize, Elem)>> {
    let shape = d.source();
    let mut label: BTreeMap<(usize, Elem), usize> = BTreeMap::new();
    for x in shape.objects() {
        for e in d.obj(x).iter() {
            let n = label.len();
            label.insert((x.0, e.clone()), n);
        }
    }
    loop {
        let mut changed = false;
        for m in shape.morphisms() {
            let (a, b) = (shape.src(m).0, shape.tgt(m).0);
            for (e, fe) in d.mor(m).pairs() {
                let (la, lb) = (label[&(a, e.clone())], label[&(b, fe.clone())]);
                if la != lb {
                    let low = la.min(lb);
                    let high = la.max(lb);
                    for v in label.values_mut() {
                        if *v == high {
                            *v = low;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeMap<usize, Vec<(usize, Elem)>> = BTreeMap::new();
    for (k, v) in label {
        classes.entry(v).or_default().push(k);
    }
    classes.into_values().collect()
}

/// Compatible families of a Set diagram, by nested loops over the
/// product of all object sets.
pub fn brute_families(d: &Passage<SetCat>) -> Vec<Vec<Elem>> {
    let shape = d.source();
    let mut out = vec![vec![]];
    for x in shape.objects() {
        let mut next = Vec::new();
        for fam in &out {
            for e in d.obj(x).iter() {
                let mut f: Vec<Elem> = fam.clone();
                f.push(e.clone());
                next.push(f);
            }
        }
        out = next;
    }
    out.retain(|fam| {
        shape.morphisms().all(|m| d.mor(m).apply(&fam[shape.src(m).0]) == Some(&fam[shape.tgt(m).0]))
    });
    out
}

/// The nested-loop join of a fixed-A database.
///
/// Keys are key families (one per shape object) agreeing along every
/// arrow; columns are the classes of `(object, attribute)` pairs under the
/// identifications made by the arrows' arity maps; a family survives when
/// all the values it assigns to one column agree.
pub struct OracleJoin {
    pub table: Table,
    /// Per column (in table order), its member `(object, attribute)` pairs.
    pub columns: Vec<Vec<(usize, Elem)>>,
}

pub fn nested_loop_join(db: &Database<TblA>) -> OracleJoin {
    let shape = db.shape();
    let a = db.tables().target().domain.clone();
    // Attribute diagram: r: x → y carries I_x → I_y.
    let attrs = Passage::new_unchecked(
        shape.clone(),
        SetCat,
        shape.objects().map(|x| db.table(x).signature().arity().clone()).collect(),
        shape.morphisms().map(|m| db.arrow(m).h().clone()).collect(),
    )
    .unwrap();
    let mut columns = orbit_classes(&attrs);
    columns.sort();
    let names: Vec<Elem> = (0..columns.len()).map(|i| Elem::atom(format!("c{i:02}"))).collect();
    let sorts: Vec<(Elem, Elem)> = columns
        .iter()
        .zip(&names)
        .map(|(c, n)| {
            let (x, i) = &c[0];
            (n.clone(), db.table(ObjId(*x)).signature().sort_of(i).unwrap().clone())
        })
        .collect();
    let sig = Signature::from_pairs(FinSet::new(names.clone()), a.sorts().clone(), sorts).unwrap();
    let keysets: Vec<Vec<Elem>> = shape.objects().map(|x| db.table(x).keys().iter().cloned().collect()).collect();
    let mut families: Vec<Vec<Elem>> = vec![vec![]];
    for ks in &keysets {
        families = families
            .iter()
            .flat_map(|f| {
                ks.iter().map(move |k| {
                    let mut g = f.clone();
                    g.push(k.clone());
                    g
                })
            })
            .collect();
    }
    let mut rows = Vec::new();
    'fam: for fam in families {
        for m in shape.non_identity_morphisms() {
            let (x, y) = (shape.src(m).0, shape.tgt(m).0);
            // T(m): T_y → T_x sends keys of y to keys of x.
            if db.arrow(m).keys().apply(&fam[y]) != Some(&fam[x]) {
                continue 'fam;
            }
        }
        let mut row = Vec::new();
        for col in &columns {
            let mut vals = col.iter().map(|(x, i)| {
                let t = db.table(ObjId(*x));
                let pos = t.signature().arity().index_of(i).unwrap();
                t.tuple(&fam[*x]).unwrap().as_tuple().unwrap()[pos].clone()
            });
            let v = vals.next().unwrap();
            if vals.any(|w| w != v) {
                continue 'fam;
            }
            row.push(v);
        }
        rows.push((Elem::Tuple(fam), Elem::Tuple(row)));
    }
    let keys = FinSet::new(rows.iter().map(|r| r.0.clone()));
    let table = Table::new(SignedDomain::new(sig, a).unwrap(), keys, rows).unwrap();
    OracleJoin { table, columns }
}

/// An explicit isomorphism `join ≅ oracle` in Tbl(A): both directions are
/// valid table morphisms and compose to identities.
pub fn join_iso_witness(join: &LimitResult<TblA>, oracle: &OracleJoin) -> Result<(TableMorphism, TableMorphism), String> {
    let j = join.vertex();
    let o = &oracle.table;
    // Column c of the oracle goes to where any member's leg sends it.
    let mut h = Vec::new();
    for (name, col) in o.signature().arity().iter().zip(&oracle.columns) {
        let targets: Vec<&Elem> = col.iter().map(|(x, i)| join.legs()[*x].h().apply(i).unwrap()).collect();
        if targets.iter().any(|t| *t != targets[0]) {
            return Err(format!("column {name} is split in the join"));
        }
        h.push((name.clone(), targets[0].clone()));
    }
    let h = SetFn::from_pairs(o.signature().arity().clone(), j.signature().arity().clone(), h).map_err(|e| e.to_string())?;
    let inv_h = invert(&h)?;
    let keys = SetFn::from_fn(j.keys().clone(), o.keys().clone(), |k| k.clone()).map_err(|e| e.to_string())?;
    let inv_keys = invert(&keys)?;
    let there = TableMorphism::fixed(j.clone(), o.clone(), h, keys).map_err(|e| e.to_string())?;
    let back = TableMorphism::fixed(o.clone(), j.clone(), inv_h, inv_keys).map_err(|e| e.to_string())?;
    let tbl = join.diagram.target();
    if tbl.compose(&there, &back) != Some(TableMorphism::identity(j))
        || tbl.compose(&back, &there) != Some(TableMorphism::identity(o))
    {
        return Err("witness does not compose to identities".into());
    }
    Ok((there, back))
}

pub fn invert(f: &SetFn) -> Result<SetFn, String> {
    if !f.is_injective() || f.dom().len() != f.cod().len() {
        return Err(format!("{f:?} is not a bijection"));
    }
    SetFn::from_pairs(f.cod().clone(), f.dom().clone(), f.pairs().map(|(a, b)| (b.clone(), a.clone())))
        .map_err(|e| e.to_string())
}

/// Cones with vertex `v`, enumerated by brute force over all leg choices
/// and filtered for commutation. Used where the library's own cone
/// enumeration would be circular.
pub fn cones_by_brute_force<T: fole::fincat::HomSets>(d: &Passage<T>, kind: ConeKind, v: &T::Obj) -> Vec<Cone<T>> {
    let shape = d.source();
    let t = d.target();
    let options: Vec<Vec<T::Mor>> = shape
        .objects()
        .map(|x| match kind {
            ConeKind::Limit => t.hom(v, d.obj(x)).unwrap(),
            ConeKind::Colimit => t.hom(d.obj(x), v).unwrap(),
        })
        .collect();
    fole::elem::product_choices(&options)
        .into_iter()
        .map(|legs| Cone { kind, vertex: v.clone(), legs })
        .filter(|c| c.check_over(d).is_ok())
        .collect()
}

/// Morphism of a finite category `x → y`, if it is the only one.
pub fn unique_hom(c: &FinCategory, x: ObjId, y: ObjId) -> Option<MorId> {
    let hs: Vec<MorId> = c.homs(x, y).collect();
    (hs.len() == 1).then(|| hs[0])
}

/// Vertices for candidate cones over a join: the join with repeated keys
/// and an extra column, plus an unrelated random table.
pub fn join_vertices(r: &mut gen::GenRng, db: &Database<TblA>, join: &Table) -> Vec<Table> {
    let a = db.tables().target().domain.clone();
    let mut out = Vec::new();
    for _ in 0..3 {
        let n = if join.keys().is_empty() { 0 } else { r.gen_range(0..=3usize) };
        let sort = a.sorts().get(r.gen_range(0..a.sorts().len())).clone();
        let extra = Elem::atom("zz");
        let mut pairs: Vec<(Elem, Elem)> =
            join.signature().sort_fn().pairs().map(|(i, s)| (i.clone(), s.clone())).collect();
        pairs.push((extra.clone(), sort.clone()));
        let sig =
            Signature::from_pairs(FinSet::new(pairs.iter().map(|p| p.0.clone())), a.sorts().clone(), pairs).unwrap();
        let records: Vec<(Elem, Vec<(Elem, Elem)>)> = (0..n)
            .map(|i| {
                let k = join.keys().get(r.gen_range(0..join.keys().len()));
                let row = join.tuple(k).unwrap().as_tuple().unwrap();
                let mut vals: Vec<(Elem, Elem)> =
                    join.signature().arity().iter().cloned().zip(row.iter().cloned()).collect();
                let ext = a.extent(&sort);
                vals.push((extra.clone(), ext.get(r.gen_range(0..ext.len())).clone()));
                (Elem::atom(format!("u{i}")), vals)
            })
            .collect();
        out.push(Table::from_records(SignedDomain::new(sig, a.clone()).unwrap(), records).unwrap());
    }
    let sig = gen::signature(r, a.sorts(), 2, "q");
    out.push(gen::table(r, &a, sig, 3, "w"));
    out
}

pub fn sum_vertices(r: &mut gen::GenRng, db: &Database<TblA>, sum: &Table) -> Vec<Table> {
    let a = db.tables().target().domain.clone();
    let mut out = vec![sum.clone()];
    // Forget a random set of columns, then add fresh rows.
    let keep: Vec<(Elem, Elem)> =
        sum.signature().sort_fn().pairs().filter(|_| r.gen_bool(0.6)).map(|(i, s)| (i.clone(), s.clone())).collect();
    let sig = Signature::from_pairs(FinSet::new(keep.iter().map(|p| p.0.clone())), a.sorts().clone(), keep.clone())
        .unwrap();
    let mut records: Vec<(Elem, Vec<(Elem, Elem)>)> = sum
        .keys()
        .iter()
        .zip(sum.rows())
        .map(|(k, row)| {
            let vals = keep
                .iter()
                .map(|(i, _)| (i.clone(), row.as_tuple().unwrap()[sum.signature().arity().index_of(i).unwrap()].clone()))
                .collect();
            (k.clone(), vals)
        })
        .collect();
    records.push((Elem::atom("fresh"), keep.iter().map(|(i, s)| (i.clone(), a.extent(s).get(0).clone())).collect()));
    out.push(Table::from_records(SignedDomain::new(sig, a).unwrap(), records).unwrap());
    out
}

pub fn dbcat_pool(r: &mut gen::GenRng, a: &fole::base::TypeDomain, extra: &[Database<TblA>]) -> Vec<Database<TblA>> {
    let b = Bounds { keys: 2, attrs: 1, ..Bounds::default() };
    let mut out = extra.to_vec();
    let shape = FinCategory::arrow();
    for _ in 0..2 {
        out.push(gen::database(r, a, &shape, b));
    }
    out
}

pub fn kan_shapes() -> Vec<Passage<FinCategory>> {
    let uv = FinCategory::discrete(["u", "v"]);
    let arrow = FinCategory::arrow();
    let chain = gen::chain(3);
    let mut ks = vec![
        Passage::constant(FinCategory::terminal(), uv.clone(), uv.obj_by_name("u").unwrap()),
        Passage::identity(&arrow),
    ];
    ks.extend(fole::fincat::all_passages(&FinCategory::discrete(["x", "y"]), &arrow));
    ks.extend(fole::fincat::all_passages(&arrow, &chain).into_iter().take(3));
    ks.push(Passage::constant(arrow.clone(), FinCategory::terminal(), fole::fincat::ObjId(0)));
    ks
}

pub fn leg_iso<T: fole::fincat::Category + 'static>(a: &LimitResult<T>, b: &LimitResult<T>) -> bool {
    let cat = a.diagram.target();
    let (Ok(u), Ok(v)) = (a.mediate(&b.cone), b.mediate(&a.cone)) else { return false };
    let (uv, vu) = match a.kind() {
        ConeKind::Limit => (cat.compose(&v, &u), cat.compose(&u, &v)),
        ConeKind::Colimit => (cat.compose(&u, &v), cat.compose(&v, &u)),
    };
    uv == Some(cat.identity(a.vertex())) && vu == Some(cat.identity(b.vertex()))
}
