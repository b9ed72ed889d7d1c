//! Loading a [`Document`] into library values, checking every entity on
//! the way in.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use fole::base::{
    AdjunctionWitness, DomMorphism, Infomorphism, Signature, SignatureMorphism, SignedDomain, Table, TableMorphism,
    TblA, TblCat, TypeDomain,
};
use fole::diagrams::{Database, DatabaseMorphism};
use fole::elem::{Elem, FinSet, SetFn};
use fole::fincat::{make_category, FinCategory, MorId, ObjId, Passage, SetCat};
use fole::univ::IndexedAdjunction;
use thiserror::Error;

use crate::doc::*;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("{kind} `{name}`: no {wanted} named `{target}`")]
    Resolution { kind: &'static str, name: String, wanted: &'static str, target: String },
    #[error("{kind} `{name}`: {law}")]
    Validation { kind: &'static str, name: String, law: String },
    #[error("name `{0}` is declared more than once")]
    DuplicateName(String),
}

/// A database as loaded: over one type domain when its tables share one.
#[derive(Debug, Clone, PartialEq)]
pub enum Db {
    Fixed(Database<TblA>),
    General(Database<TblCat>),
}

impl Db {
    pub fn general(&self) -> Database<TblCat> {
        match self {
            Db::Fixed(d) => d.to_general(),
            Db::General(d) => d.clone(),
        }
    }

    pub fn shape(&self) -> &FinCategory {
        match self {
            Db::Fixed(d) => d.shape(),
            Db::General(d) => d.shape(),
        }
    }
}

/// A fully resolved, validated workspace.
#[derive(Debug, Clone)]
pub struct Workspace {
    /// The document in canonical form.
    pub document: Document,
    pub typedomains: BTreeMap<String, TypeDomain>,
    pub infomorphisms: BTreeMap<String, Infomorphism>,
    pub signatures: BTreeMap<String, SignedDomain>,
    pub tables: BTreeMap<String, Table>,
    pub shapes: BTreeMap<String, FinCategory>,
    pub databases: BTreeMap<String, Db>,
    pub morphisms: BTreeMap<String, DatabaseMorphism<TblA>>,
    pub diagrams: BTreeMap<String, Passage<SetCat>>,
    pub passages: BTreeMap<String, Passage<FinCategory>>,
    pub indexed: BTreeMap<String, IndexedAdjunction>,
}

impl PartialEq for Workspace {
    // Indexed categories are compared through the document that built them.
    fn eq(&self, other: &Self) -> bool {
        self.document == other.document
            && self.typedomains == other.typedomains
            && self.infomorphisms == other.infomorphisms
            && self.signatures == other.signatures
            && self.tables == other.tables
            && self.shapes == other.shapes
            && self.databases == other.databases
            && self.morphisms == other.morphisms
            && self.diagrams == other.diagrams
            && self.passages == other.passages
            && self.indexed.keys().eq(other.indexed.keys())
    }
}

pub fn parse_workspace(path: &Path) -> Result<Workspace, LoadError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| LoadError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<Workspace, LoadError> {
    let doc: Document = if text.trim().is_empty() {
        Document::default()
    } else {
        serde_json::from_str(text).map_err(|e| LoadError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?
    };
    Workspace::load(doc)
}

/// The canonical document text of a workspace.
pub fn serialize(ws: &Workspace) -> String {
    let mut s = serde_json::to_string_pretty(&ws.document).expect("documents serialize");
    s.push('\n');
    s
}

fn atoms(xs: &[String]) -> FinSet {
    FinSet::atoms(xs.iter().cloned())
}

struct Ctx {
    kind: &'static str,
    name: String,
}

impl Ctx {
    fn new(kind: &'static str, name: &str) -> Self {
        Ctx { kind, name: name.to_string() }
    }

    fn bad(&self, law: impl ToString) -> LoadError {
        LoadError::Validation { kind: self.kind, name: self.name.clone(), law: law.to_string() }
    }

    fn missing(&self, wanted: &'static str, target: &str) -> LoadError {
        LoadError::Resolution { kind: self.kind, name: self.name.clone(), wanted, target: target.to_string() }
    }

    fn get<'a, T>(&self, map: &'a BTreeMap<String, T>, wanted: &'static str, key: &str) -> Result<&'a T, LoadError> {
        map.get(key).ok_or_else(|| self.missing(wanted, key))
    }

    fn func(&self, what: &str, dom: &FinSet, cod: &FinSet, pairs: &Pairs) -> Result<SetFn, LoadError> {
        let mut seen = BTreeSet::new();
        for (a, _) in pairs {
            if !seen.insert(a) {
                return Err(self.bad(format!("{what}: `{a}` is mapped twice")));
            }
        }
        SetFn::from_pairs(dom.clone(), cod.clone(), pairs.iter().map(|(a, b)| (Elem::atom(a), Elem::atom(b))))
            .map_err(|e| self.bad(format!("{what}: {e}")))
    }

    fn obj(&self, c: &FinCategory, name: &str) -> Result<ObjId, LoadError> {
        c.obj_by_name(name).ok_or_else(|| self.missing("shape object", name))
    }

    fn mor(&self, c: &FinCategory, name: &str) -> Result<MorId, LoadError> {
        c.mor_by_name(name).ok_or_else(|| self.missing("shape arrow", name))
    }

    /// Object images listed once per source object.
    fn object_map<T>(&self, c: &FinCategory, pairs: &[(String, T)]) -> Result<Vec<T>, LoadError>
    where
        T: Clone,
    {
        let mut out: Vec<Option<T>> = vec![None; c.n_objects()];
        for (x, v) in pairs {
            let i = self.obj(c, x)?;
            if out[i.0].replace(v.clone()).is_some() {
                return Err(self.bad(format!("object `{x}` is assigned twice")));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| self.bad(format!("object `{}` is unassigned", c.obj_name(ObjId(i))))))
            .collect()
    }

    fn passage(&self, src: &FinCategory, tgt: &FinCategory, objects: &Pairs, arrows: &Pairs) -> Result<Passage<FinCategory>, LoadError> {
        let objs = self
            .object_map(src, objects)?
            .iter()
            .map(|y| self.obj(tgt, y))
            .collect::<Result<Vec<_>, _>>()?;
        let given = arrows
            .iter()
            .map(|(a, b)| Ok((self.mor(src, a)?, self.mor(tgt, b)?)))
            .collect::<Result<Vec<_>, LoadError>>()?;
        Passage::from_generators(src.clone(), tgt.clone(), objs, given, true).map_err(|e| self.bad(e))
    }
}

impl Workspace {
    pub fn load(doc: Document) -> Result<Self, LoadError> {
        let doc = doc.canonical();
        let mut names = BTreeSet::new();
        let all = doc
            .typedomains
            .iter()
            .map(|x| &x.name)
            .chain(doc.infomorphisms.iter().map(|x| &x.name))
            .chain(doc.signatures.iter().map(|x| &x.name))
            .chain(doc.tables.iter().map(|x| &x.name))
            .chain(doc.shapes.iter().map(|x| &x.name))
            .chain(doc.databases.iter().map(|x| &x.name))
            .chain(doc.morphisms.iter().map(|x| &x.name))
            .chain(doc.diagrams.iter().map(|x| &x.name))
            .chain(doc.passages.iter().map(|x| &x.name))
            .chain(doc.indexed.iter().map(|x| &x.name));
        for n in all {
            if !names.insert(n.clone()) {
                return Err(LoadError::DuplicateName(n.clone()));
            }
        }

        let mut typedomains = BTreeMap::new();
        for t in &doc.typedomains {
            let cx = Ctx::new("typedomain", &t.name);
            let a = TypeDomain::new(
                atoms(&t.sorts),
                atoms(&t.values),
                t.incidence.iter().map(|(v, s)| (Elem::atom(v), Elem::atom(s))),
            )
            .map_err(|e| cx.bad(e))?;
            typedomains.insert(t.name.clone(), a);
        }

        let mut infomorphisms = BTreeMap::new();
        for i in &doc.infomorphisms {
            let cx = Ctx::new("infomorphism", &i.name);
            let a2 = cx.get(&typedomains, "typedomain", &i.source)?;
            let a1 = cx.get(&typedomains, "typedomain", &i.target)?;
            let f = cx.func("f", a2.sorts(), a1.sorts(), &i.f)?;
            let g = cx.func("g", a1.values(), a2.values(), &i.g)?;
            let m = Infomorphism::new(a2.clone(), a1.clone(), f, g).map_err(|e| cx.bad(e))?;
            infomorphisms.insert(i.name.clone(), m);
        }

        let mut signatures = BTreeMap::new();
        for s in &doc.signatures {
            let cx = Ctx::new("signature", &s.name);
            let a = cx.get(&typedomains, "typedomain", &s.typedomain)?;
            let arity = FinSet::atoms(s.attrs.iter().map(|p| p.0.clone()));
            let sort = cx.func("attrs", &arity, a.sorts(), &s.attrs)?;
            let d = SignedDomain::new(Signature::new(sort), a.clone()).map_err(|e| cx.bad(e))?;
            signatures.insert(s.name.clone(), d);
        }

        let mut tables = BTreeMap::new();
        for t in &doc.tables {
            let cx = Ctx::new("table", &t.name);
            let d = cx.get(&signatures, "signature", &t.signature)?;
            let mut keys = BTreeSet::new();
            for r in &t.rows {
                if !keys.insert(&r.key) {
                    return Err(cx.bad(format!("key `{}` has two rows", r.key)));
                }
            }
            let records = t
                .rows
                .iter()
                .map(|r| {
                    let vals = cx.func(&format!("row of key `{}`", r.key), d.signature().arity(), d.type_domain().values(), &r.values)?;
                    Ok((Elem::atom(&r.key), vals.pairs().map(|(a, b)| (a.clone(), b.clone())).collect()))
                })
                .collect::<Result<Vec<_>, LoadError>>()?;
            let table = Table::from_records(d.clone(), records).map_err(|e| cx.bad(e))?;
            tables.insert(t.name.clone(), table);
        }

        let mut shapes = BTreeMap::new();
        for s in &doc.shapes {
            let cx = Ctx::new("shape", &s.name);
            let c = match &s.body {
                ShapeBody::FreeAcyclic(f) => FinCategory::free_on_acyclic_graph(&f.nodes, &f.edges),
                ShapeBody::Extensional(e) => make_category(&e.objects, &e.morphisms, &e.identities, &e.composition),
            }
            .map_err(|e| cx.bad(e))?;
            shapes.insert(s.name.clone(), c);
        }

        let mut databases = BTreeMap::new();
        for d in &doc.databases {
            let cx = Ctx::new("database", &d.name);
            let shape = cx.get(&shapes, "shape", &d.shape)?;
            let tnames = cx.object_map(shape, &d.tables)?;
            let ts = tnames.iter().map(|n| cx.get(&tables, "table", n).cloned()).collect::<Result<Vec<_>, _>>()?;
            let fixed = ts.windows(2).all(|w| w[0].type_domain() == w[1].type_domain())
                && d.arrows.iter().all(|a| a.infomorphism.is_none());
            let mut arrows = Vec::new();
            for a in &d.arrows {
                let r = cx.mor(shape, &a.arrow)?;
                let (ta, tb) = (&ts[shape.src(r).0], &ts[shape.tgt(r).0]);
                let what = format!("arrow `{}`", a.arrow);
                let h = cx.func(&format!("{what} h"), ta.signature().arity(), tb.signature().arity(), &a.h)?;
                let k = cx.func(&format!("{what} k"), tb.keys(), ta.keys(), &a.k)?;
                let m = match &a.infomorphism {
                    None => TableMorphism::fixed(tb.clone(), ta.clone(), h, k),
                    Some(i) => {
                        let info = cx.get(&infomorphisms, "infomorphism", i)?;
                        DomMorphism::new(ta.domain().clone(), tb.domain().clone(), h, info.clone())
                            .and_then(|dom| TableMorphism::new(tb.clone(), ta.clone(), dom, k))
                    }
                }
                .map_err(|e| cx.bad(format!("{what}: {e}")))?;
                arrows.push((r, m));
            }
            let db = if fixed {
                let a = ts.first().map(|t| t.type_domain().clone()).ok_or_else(|| cx.bad("a database needs a table"))?;
                Db::Fixed(Database::from_arrows(TblA::new(a), shape.clone(), ts, arrows, true).map_err(|e| cx.bad(e))?)
            } else {
                Db::General(Database::from_arrows(TblCat, shape.clone(), ts, arrows, true).map_err(|e| cx.bad(e))?)
            };
            databases.insert(d.name.clone(), db);
        }

        let mut morphisms = BTreeMap::new();
        for m in &doc.morphisms {
            let cx = Ctx::new("morphism", &m.name);
            let fixed = |n: &str| match cx.get(&databases, "database", n)? {
                Db::Fixed(d) => Ok(d.clone()),
                Db::General(_) => Err(cx.bad(format!("database `{n}` varies over type domains"))),
            };
            let (src, tgt) = (fixed(&m.source)?, fixed(&m.target)?);
            if src.tables().target() != tgt.tables().target() {
                return Err(cx.bad("source and target live over different type domains"));
            }
            let a = src.tables().target().domain.clone();
            let shape = cx.passage(src.shape(), tgt.shape(), &m.objects, &m.arrows)?;
            let mut comps: Vec<Option<TableMorphism>> = vec![None; src.shape().n_objects()];
            for c in &m.components {
                let r = cx.obj(src.shape(), &c.object)?;
                let (t1, t2) = (tgt.table(*shape.obj(r)), src.table(r));
                let what = format!("component at `{}`", c.object);
                let h = cx.func(&format!("{what} h"), t2.signature().arity(), t1.signature().arity(), &c.h)?;
                let k = cx.func(&format!("{what} k"), t1.keys(), t2.keys(), &c.k)?;
                // The table morphism condition is left to `check`.
                let dom = SignatureMorphism::in_list_x(t2.signature().clone(), t1.signature().clone(), h)
                    .and_then(|sm| DomMorphism::over_identity(&sm, &a))
                    .map_err(|e| cx.bad(format!("{what}: {e}")))?;
                if comps[r.0].replace(TableMorphism::new_unchecked(t1.clone(), t2.clone(), dom, k)).is_some() {
                    return Err(cx.bad(format!("{what} is given twice")));
                }
            }
            let comps = comps
                .into_iter()
                .enumerate()
                .map(|(i, c)| c.ok_or_else(|| cx.bad(format!("no component at `{}`", src.shape().obj_name(ObjId(i))))))
                .collect::<Result<Vec<_>, _>>()?;
            let dm = DatabaseMorphism::new(src, tgt, shape, comps).map_err(|e| cx.bad(e))?;
            morphisms.insert(m.name.clone(), dm);
        }

        let mut diagrams = BTreeMap::new();
        for d in &doc.diagrams {
            let cx = Ctx::new("diagram", &d.name);
            let shape = cx.get(&shapes, "shape", &d.shape)?;
            let sets: Vec<(String, FinSet)> = d.sets.iter().map(|(x, s)| (x.clone(), atoms(s))).collect();
            let sets = cx.object_map(shape, &sets)?;
            let given = d
                .maps
                .iter()
                .map(|m| {
                    let r = cx.mor(shape, &m.arrow)?;
                    let f = cx.func(&format!("map `{}`", m.arrow), &sets[shape.src(r).0], &sets[shape.tgt(r).0], &m.pairs)?;
                    Ok((r, f))
                })
                .collect::<Result<Vec<_>, LoadError>>()?;
            let p = Passage::from_generators(shape.clone(), SetCat, sets, given, true).map_err(|e| cx.bad(e))?;
            diagrams.insert(d.name.clone(), p);
        }

        let mut passages = BTreeMap::new();
        for p in &doc.passages {
            let cx = Ctx::new("passage", &p.name);
            let src = cx.get(&shapes, "shape", &p.source)?;
            let tgt = cx.get(&shapes, "shape", &p.target)?;
            passages.insert(p.name.clone(), cx.passage(src, tgt, &p.objects, &p.arrows)?);
        }

        let mut indexed = BTreeMap::new();
        for ix in &doc.indexed {
            let cx = Ctx::new("indexed", &ix.name);
            let index = cx.get(&shapes, "shape", &ix.index)?.clone();
            let fnames = cx.object_map(&index, &ix.fibers)?;
            let fibers = fnames.iter().map(|n| cx.get(&shapes, "shape", n).cloned()).collect::<Result<Vec<_>, _>>()?;
            // Per index morphism, identities filled in.
            let assign = |list: &[FiberPassageDoc], covariant: bool| -> Result<Option<Vec<Passage<FinCategory>>>, LoadError> {
                if list.is_empty() {
                    return Ok(None);
                }
                let mut out: Vec<Option<Passage<FinCategory>>> = vec![None; index.n_morphisms()];
                for p in list {
                    let a = cx.mor(&index, &p.morphism)?;
                    let (i, j) = (index.src(a), index.tgt(a));
                    let (s, t) = if covariant { (i, j) } else { (j, i) };
                    let q = cx.passage(&fibers[s.0], &fibers[t.0], &p.objects, &p.arrows)?;
                    if out[a.0].replace(q).is_some() {
                        return Err(cx.bad(format!("morphism `{}` is assigned twice", p.morphism)));
                    }
                }
                index
                    .morphisms()
                    .map(|a| match out[a.0].take() {
                        Some(p) => Ok(p),
                        None if index.is_identity(a) => Ok(Passage::identity(&fibers[index.src(a).0])),
                        None => Err(cx.bad(format!("morphism `{}` has no fiber passage", index.mor_name(a)))),
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some)
            };
            let acute = assign(&ix.acute, true)?;
            let grave = assign(&ix.grave, false)?;
            let built = match (acute, grave) {
                (Some(l), Some(r)) => {
                    let ws = l
                        .into_iter()
                        .zip(r)
                        .enumerate()
                        .map(|(k, (l, r))| {
                            AdjunctionWitness::between_posets(l, r).ok_or_else(|| {
                                cx.bad(format!(
                                    "passages at `{}` are not adjoint between preorders",
                                    index.mor_name(MorId(k))
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    IndexedAdjunction::new(index, fibers, ws)
                }
                (Some(l), None) => IndexedAdjunction::covariant(index, fibers, l),
                (None, Some(r)) => IndexedAdjunction::contravariant(index, fibers, r),
                (None, None) => return Err(cx.bad("needs `acute` or `grave` passages")),
            }
            .map_err(|e| cx.bad(e))?;
            indexed.insert(ix.name.clone(), built);
        }

        Ok(Workspace {
            document: doc,
            typedomains,
            infomorphisms,
            signatures,
            tables,
            shapes,
            databases,
            morphisms,
            diagrams,
            passages,
            indexed,
        })
    }

    /// The kind of the entity called `name`, if any.
    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        let kinds: [(&'static str, bool); 10] = [
            ("typedomain", self.typedomains.contains_key(name)),
            ("infomorphism", self.infomorphisms.contains_key(name)),
            ("signature", self.signatures.contains_key(name)),
            ("table", self.tables.contains_key(name)),
            ("shape", self.shapes.contains_key(name)),
            ("database", self.databases.contains_key(name)),
            ("morphism", self.morphisms.contains_key(name)),
            ("diagram", self.diagrams.contains_key(name)),
            ("passage", self.passages.contains_key(name)),
            ("indexed", self.indexed.contains_key(name)),
        ];
        kinds.into_iter().find(|k| k.1).map(|k| k.0)
    }
}

fn strs(s: &FinSet) -> Vec<String> {
    s.iter().map(|e| e.to_string()).collect()
}

fn str_pairs(f: &SetFn) -> Pairs {
    f.pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// A shape written out extensionally.
pub fn shape_doc(name: &str, c: &FinCategory) -> ShapeDoc {
    let o = |x: ObjId| c.obj_name(x).to_string();
    let m = |f: MorId| c.mor_name(f).to_string();
    ShapeDoc {
        name: name.into(),
        body: ShapeBody::Extensional(ExtensionalDoc {
            objects: c.objects().map(o).collect(),
            morphisms: c.morphisms().map(|f| (m(f), o(c.src(f)), o(c.tgt(f)))).collect(),
            identities: c.objects().map(|x| (o(x), m(c.id(x)))).collect(),
            composition: c.composable_pairs().map(|(f, g, h)| (m(f), m(g), m(h))).collect(),
        }),
    }
}

/// A document declaring a fixed-type-domain database and everything it
/// refers to. Entity names are derived from `name`; table and attribute
/// names are written with their display forms.
pub fn database_document(name: &str, db: &Database<TblA>) -> Document {
    let a = &db.tables().target().domain;
    let td = format!("{name}_A");
    let shape = db.shape();
    let mut doc = Document {
        typedomains: vec![TypeDomainDoc {
            name: td.clone(),
            sorts: strs(a.sorts()),
            values: strs(a.values()),
            incidence: a.incidence().iter().map(|(v, s)| (v.to_string(), s.to_string())).collect(),
        }],
        shapes: vec![shape_doc(&format!("{name}_shape"), shape)],
        ..Document::default()
    };
    let mut placed = Vec::new();
    for x in shape.objects() {
        let t = db.table(x);
        let tn = format!("{name}_T_{}", shape.obj_name(x));
        let sn = format!("{name}_S_{}", shape.obj_name(x));
        doc.signatures.push(SignatureDoc { name: sn.clone(), typedomain: td.clone(), attrs: str_pairs(t.signature().sort_fn()) });
        let rows = t
            .keys()
            .iter()
            .zip(t.rows())
            .map(|(k, r)| RowDoc {
                key: k.to_string(),
                values: strs(t.signature().arity())
                    .into_iter()
                    .zip(r.as_tuple().expect("rows are tuples").iter().map(|v| v.to_string()))
                    .collect(),
            })
            .collect();
        doc.tables.push(TableDoc { name: tn.clone(), signature: sn, rows });
        placed.push((shape.obj_name(x).to_string(), tn));
    }
    let arrows = shape
        .non_identity_morphisms()
        .map(|m| ArrowDoc {
            arrow: shape.mor_name(m).into(),
            h: str_pairs(db.arrow(m).h()),
            k: str_pairs(db.arrow(m).keys()),
            infomorphism: None,
        })
        .collect();
    doc.databases.push(DatabaseDoc { name: name.into(), shape: format!("{name}_shape"), tables: placed, arrows });
    doc
}
