//! Finite categories, passages (functors), bridges (natural transformations)
//! and the shape-level constructions the rest of the crate builds on.
//!
//! Composition is written diagrammatically throughout: `compose(f, g)` is
//! "first `f`, then `g`" and is defined when `target(f) == source(g)`.

mod cone;
mod construct;
mod enumerate;
mod passage;
mod set;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use cone::{all_cones, Cone, ConeKind};
pub use construct::{
    comma_category, coproduct_category, opposite, product_category, pullback_category, Comma,
    Coproduct, Product, Pullback,
};
pub use enumerate::{all_bridges, all_passages};
pub use passage::{
    compose_passages, vertical_compose, whisker_left, whisker_right, Bridge, Functor, Passage,
};
pub use set::{SetCat, MAX_HOM_ENUMERATION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("identity `{morphism}` of `{object}` is not an endomorphism of it")]
    IdentityNotEndo { object: String, morphism: String },
    #[error("composable pair ({f}, {g}) has no composite")]
    MissingComposite { f: String, g: String },
    #[error("composite given for non-composable pair ({f}, {g})")]
    NonComposablePair { f: String, g: String },
    #[error("composite `{h}` of ({f}, {g}) has the wrong endpoints")]
    CompositeEndpoints { f: String, g: String, h: String },
    #[error("identity law fails for identity `{identity}` and morphism `{morphism}`")]
    IdentityLawViolation { identity: String, morphism: String },
    #[error("associativity fails for ({f}, {g}, {h})")]
    AssociativityViolation { f: String, g: String, h: String },
    #[error("graph has a cycle through {0:?}; path closure would be infinite")]
    CycleDetected(Vec<String>),
    #[error("passage is not functorial: {0}")]
    NotFunctorial(String),
    #[error("bridge is not natural: {0}")]
    NotNatural(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("hom-set enumeration unavailable: {0}")]
    HomEnumerationUnavailable(String),
    #[error("invalid element of the target category: {0}")]
    InvalidElement(String),
    #[error("not a cone: {0}")]
    NotACone(String),
}

/// The abstract category interface.
///
/// [`FinCategory`] implements it with full tables; the computable infinite
/// categories (Set, List(X), Tbl(A), ...) implement it structurally and
/// validate lazily via [`Category::validate_object`] /
/// [`Category::validate_morphism`] on the elements a construction touches.
pub trait Category: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Obj: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Mor: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn source(&self, m: &Self::Mor) -> Self::Obj;
    fn target(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `f ; g`, or `None` when `target(f) != source(g)`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;

    fn validate_object(&self, _x: &Self::Obj) -> Result<(), String> {
        Ok(())
    }

    fn validate_morphism(&self, _m: &Self::Mor) -> Result<(), String> {
        Ok(())
    }
}

/// Categories whose hom-sets between concrete objects can be listed.
pub trait HomSets: Category {
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>, CatError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorInfo {
    name: String,
    src: usize,
    tgt: usize,
}

#[derive(PartialEq, Eq)]
struct Inner {
    objects: Vec<String>,
    morphisms: Vec<MorInfo>,
    identities: Vec<usize>,
    /// `table[f * m + g]` is the composite `f ; g`.
    table: Vec<Option<usize>>,
    obj_by_name: HashMap<String, usize>,
    mor_by_name: HashMap<String, usize>,
    homs: Vec<Vec<usize>>,
}

/// An explicitly tabulated finite category. Objects and morphisms are
/// named by opaque strings and stored in lexicographic order, so ids are
/// canonical for a given set of names.
#[derive(Clone)]
pub struct FinCategory {
    inner: Arc<Inner>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}

impl Eq for FinCategory {}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .inner
            .morphisms
            .iter()
            .map(|m| {
                format!("{}: {}->{}", m.name, self.inner.objects[m.src], self.inner.objects[m.tgt])
            })
            .collect();
        f.debug_struct("FinCategory")
            .field("objects", &self.inner.objects)
            .field("morphisms", &arrows)
            .finish()
    }
}

/// Unsorted, index-based description used by the internal constructions.
pub(crate) struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, usize, usize)>,
    pub identities: Vec<usize>,
    pub compose: HashMap<(usize, usize), usize>,
}

impl RawCategory {
    /// Sort names lexicographically and remap every index.
    pub(crate) fn canonicalize(self) -> FinCategory {
        let n = self.objects.len();
        let mut obj_order: Vec<usize> = (0..n).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut obj_new = vec![0; n];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let m = self.morphisms.len();
        let mut mor_order: Vec<usize> = (0..m).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].0.cmp(&self.morphisms[b].0));
        let mut mor_new = vec![0; m];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }
        let objects: Vec<String> = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        let morphisms: Vec<MorInfo> = mor_order
            .iter()
            .map(|&old| {
                let (name, s, t) = &self.morphisms[old];
                MorInfo { name: name.clone(), src: obj_new[*s], tgt: obj_new[*t] }
            })
            .collect();
        let mut identities = vec![0; n];
        for (old_obj, &old_id) in self.identities.iter().enumerate() {
            identities[obj_new[old_obj]] = mor_new[old_id];
        }
        let mut table = vec![None; m * m];
        for (&(f, g), &h) in &self.compose {
            table[mor_new[f] * m + mor_new[g]] = Some(mor_new[h]);
        }
        let obj_by_name = objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mor_by_name = morphisms.iter().enumerate().map(|(i, mi)| (mi.name.clone(), i)).collect();
        let mut homs = vec![Vec::new(); n * n];
        for (i, mi) in morphisms.iter().enumerate() {
            homs[mi.src * n + mi.tgt].push(i);
        }
        FinCategory {
            inner: Arc::new(Inner {
                objects,
                morphisms,
                identities,
                table,
                obj_by_name,
                mor_by_name,
                homs,
            }),
        }
    }
}

/// Build and validate a finite category from its full composition table.
///
/// `composition` lists triples `(f, g, f;g)`; it must cover exactly the
/// composable pairs. Identity and associativity laws are checked
/// exhaustively and violations name the offending morphisms.
pub fn make_category<S: AsRef<str>>(
    objects: &[S],
    morphisms: &[(S, S, S)],
    identities: &[(S, S)],
    composition: &[(S, S, S)],
) -> Result<FinCategory, CatError> {
    let mut obj_ix = HashMap::new();
    let mut objs = Vec::new();
    for o in objects {
        let o = o.as_ref().to_owned();
        if obj_ix.insert(o.clone(), objs.len()).is_some() {
            return Err(CatError::DuplicateName(o));
        }
        objs.push(o);
    }
    let mut mor_ix = HashMap::new();
    let mut mors = Vec::new();
    for (name, s, t) in morphisms {
        let name = name.as_ref().to_owned();
        let s = *obj_ix.get(s.as_ref()).ok_or_else(|| CatError::UnknownObject(s.as_ref().into()))?;
        let t = *obj_ix.get(t.as_ref()).ok_or_else(|| CatError::UnknownObject(t.as_ref().into()))?;
        if mor_ix.insert(name.clone(), mors.len()).is_some() {
            return Err(CatError::DuplicateName(name));
        }
        mors.push((name, s, t));
    }
    let mut ids: Vec<Option<usize>> = vec![None; objs.len()];
    for (o, m) in identities {
        let oi = *obj_ix.get(o.as_ref()).ok_or_else(|| CatError::UnknownObject(o.as_ref().into()))?;
        let mi = *mor_ix.get(m.as_ref()).ok_or_else(|| CatError::UnknownMorphism(m.as_ref().into()))?;
        if mors[mi].1 != oi || mors[mi].2 != oi {
            return Err(CatError::IdentityNotEndo {
                object: o.as_ref().into(),
                morphism: m.as_ref().into(),
            });
        }
        ids[oi] = Some(mi);
    }
    let identities: Vec<usize> = ids
        .iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| CatError::MissingIdentity(objs[i].clone())))
        .collect::<Result<_, _>>()?;
    let mut compose = HashMap::new();
    for (f, g, h) in composition {
        let lookup = |s: &S| {
            mor_ix.get(s.as_ref()).copied().ok_or_else(|| CatError::UnknownMorphism(s.as_ref().into()))
        };
        let (fi, gi, hi) = (lookup(f)?, lookup(g)?, lookup(h)?);
        let names = || (f.as_ref().to_owned(), g.as_ref().to_owned());
        if mors[fi].2 != mors[gi].1 {
            let (f, g) = names();
            return Err(CatError::NonComposablePair { f, g });
        }
        if mors[hi].1 != mors[fi].1 || mors[hi].2 != mors[gi].2 {
            let (f, g) = names();
            return Err(CatError::CompositeEndpoints { f, g, h: h.as_ref().into() });
        }
        compose.insert((fi, gi), hi);
    }
    // Identity composites may be left implicit.
    for (x, &id) in identities.iter().enumerate() {
        for (mi, (_, s, t)) in mors.iter().enumerate() {
            if *s == x {
                compose.entry((id, mi)).or_insert(mi);
            }
            if *t == x {
                compose.entry((mi, id)).or_insert(mi);
            }
        }
    }
    let cat = RawCategory { objects: objs, morphisms: mors, identities, compose }.canonicalize();
    cat.check_laws()?;
    Ok(cat)
}

impl FinCategory {
    /// The empty category.
    pub fn empty() -> Self {
        RawCategory {
            objects: vec![],
            morphisms: vec![],
            identities: vec![],
            compose: HashMap::new(),
        }
        .canonicalize()
    }

    /// The terminal category: one object `*`, one morphism `id_*`.
    pub fn terminal() -> Self {
        Self::discrete(["*"])
    }

    /// A discrete category (identities only); identities are named `id_<x>`.
    pub fn discrete<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        let objects: Vec<String> = names.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let morphisms = objects.iter().enumerate().map(|(i, o)| (format!("id_{o}"), i, i)).collect();
        let identities = (0..objects.len()).collect();
        let compose = (0..objects.len()).map(|i| ((i, i), i)).collect();
        RawCategory { objects, morphisms, identities, compose }.canonicalize()
    }

    /// The free category on a finite acyclic multigraph. Edges are
    /// `(name, source, target)`; morphisms are paths, identities are the
    /// empty paths `id_<x>`, and non-empty paths are named by their edge
    /// names joined with `;`.
    pub fn free_on_acyclic_graph<S: AsRef<str>>(
        nodes: &[S],
        edges: &[(S, S, S)],
    ) -> Result<Self, CatError> {
        let mut node_ix = HashMap::new();
        let node_names: Vec<String> = nodes.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, n) in node_names.iter().enumerate() {
            if node_ix.insert(n.clone(), i).is_some() {
                return Err(CatError::DuplicateName(n.clone()));
            }
        }
        let mut out_edges: Vec<Vec<(String, usize)>> = vec![Vec::new(); node_names.len()];
        let mut edge_names = std::collections::HashSet::new();
        for (e, s, t) in edges {
            let si = *node_ix.get(s.as_ref()).ok_or_else(|| CatError::UnknownObject(s.as_ref().into()))?;
            let ti = *node_ix.get(t.as_ref()).ok_or_else(|| CatError::UnknownObject(t.as_ref().into()))?;
            if !edge_names.insert(e.as_ref().to_owned()) {
                return Err(CatError::DuplicateName(e.as_ref().into()));
            }
            out_edges[si].push((e.as_ref().to_owned(), ti));
        }
        if let Some(cycle) = find_cycle(&out_edges) {
            return Err(CatError::CycleDetected(cycle.iter().map(|&i| node_names[i].clone()).collect()));
        }
        // Enumerate all non-empty paths from each node by DFS.
        let mut morphisms: Vec<(String, usize, usize)> = Vec::new();
        let mut paths: Vec<Vec<String>> = Vec::new();
        let mut identities = Vec::new();
        for (i, n) in node_names.iter().enumerate() {
            identities.push(morphisms.len());
            morphisms.push((format!("id_{n}"), i, i));
            paths.push(Vec::new());
        }
        for start in 0..node_names.len() {
            let mut stack: Vec<(usize, Vec<String>)> = vec![(start, Vec::new())];
            while let Some((at, path)) = stack.pop() {
                for (e, t) in &out_edges[at] {
                    let mut p = path.clone();
                    p.push(e.clone());
                    morphisms.push((p.join(";"), start, *t));
                    paths.push(p.clone());
                    stack.push((*t, p));
                }
            }
        }
        let mut by_path: HashMap<Vec<String>, usize> = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            if !p.is_empty() {
                if by_path.insert(p.clone(), i).is_some() {
                    return Err(CatError::DuplicateName(p.join(";")));
                }
            }
        }
        let mut names = std::collections::HashSet::new();
        for (name, _, _) in &morphisms {
            if !names.insert(name.clone()) {
                return Err(CatError::DuplicateName(name.clone()));
            }
        }
        let mut compose = HashMap::new();
        for (fi, (_, _, ft)) in morphisms.iter().enumerate() {
            for (gi, (_, gs, _)) in morphisms.iter().enumerate() {
                if ft != gs {
                    continue;
                }
                let h = if paths[fi].is_empty() {
                    gi
                } else if paths[gi].is_empty() {
                    fi
                } else {
                    let mut p = paths[fi].clone();
                    p.extend(paths[gi].iter().cloned());
                    by_path[&p]
                };
                compose.insert((fi, gi), h);
            }
        }
        Ok(RawCategory { objects: node_names, morphisms, identities, compose }.canonicalize())
    }

    /// The arrow category `a --u--> b`.
    pub fn arrow() -> Self {
        Self::free_on_acyclic_graph(&["a", "b"], &[("u", "a", "b")]).expect("acyclic")
    }

    /// The preorder on `names` given by `le`, which must be reflexive and
    /// transitive. The morphism `x → y` is named `x<=y`; identities `id_x`.
    pub fn preorder<S: AsRef<str>>(names: &[S], le: impl Fn(usize, usize) -> bool) -> Result<Self, CatError> {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut at = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if le(x, y) {
                    let name = if x == y { format!("id_{}", objects[x]) } else { format!("{}<={}", objects[x], objects[y]) };
                    at.insert((x, y), morphisms.len());
                    morphisms.push((name, x, y));
                }
            }
        }
        let identities = (0..n)
            .map(|x| at.get(&(x, x)).copied().ok_or_else(|| CatError::MissingIdentity(objects[x].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut compose = HashMap::new();
        for (&(x, y), &f) in &at {
            for z in 0..n {
                if let Some(&g) = at.get(&(y, z)) {
                    let h = at.get(&(x, z)).copied().ok_or_else(|| CatError::NonComposablePair {
                        f: morphisms[f].0.clone(),
                        g: morphisms[g].0.clone(),
                    })?;
                    compose.insert((f, g), h);
                }
            }
        }
        let cat = RawCategory { objects, morphisms, identities, compose }.canonicalize();
        cat.check_laws()?;
        Ok(cat)
    }

    /// Exhaustive check of identity and associativity laws.
    pub fn check_laws(&self) -> Result<(), CatError> {
        let m = self.n_morphisms();
        for f in 0..m {
            for g in 0..m {
                let composable = self.inner.morphisms[f].tgt == self.inner.morphisms[g].src;
                match (composable, self.inner.table[f * m + g]) {
                    (true, None) => {
                        return Err(CatError::MissingComposite {
                            f: self.inner.morphisms[f].name.clone(),
                            g: self.inner.morphisms[g].name.clone(),
                        })
                    }
                    (false, Some(_)) => {
                        return Err(CatError::NonComposablePair {
                            f: self.inner.morphisms[f].name.clone(),
                            g: self.inner.morphisms[g].name.clone(),
                        })
                    }
                    _ => {}
                }
            }
        }
        for (x, &id) in self.inner.identities.iter().enumerate() {
            for f in 0..m {
                let mi = &self.inner.morphisms[f];
                let bad = (mi.src == x && self.inner.table[id * m + f] != Some(f))
                    || (mi.tgt == x && self.inner.table[f * m + id] != Some(f));
                if bad {
                    return Err(CatError::IdentityLawViolation {
                        identity: self.inner.morphisms[id].name.clone(),
                        morphism: mi.name.clone(),
                    });
                }
            }
        }
        for f in 0..m {
            for g in self.composable_after(f) {
                let fg = self.inner.table[f * m + g].expect("checked");
                for h in self.composable_after(g) {
                    let gh = self.inner.table[g * m + h].expect("checked");
                    if self.inner.table[fg * m + h] != self.inner.table[f * m + gh] {
                        return Err(CatError::AssociativityViolation {
                            f: self.inner.morphisms[f].name.clone(),
                            g: self.inner.morphisms[g].name.clone(),
                            h: self.inner.morphisms[h].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn composable_after(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let t = self.inner.morphisms[f].tgt;
        (0..self.n_objects()).flat_map(move |y| self.inner.homs[t * self.n_objects() + y].iter().copied())
    }

    pub fn n_objects(&self) -> usize {
        self.inner.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.inner.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + Clone {
        (0..self.n_objects()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + Clone {
        (0..self.n_morphisms()).map(MorId)
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.inner.objects[x.0]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.inner.morphisms[m.0].name
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.inner.obj_by_name.get(name).copied().map(ObjId)
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.inner.mor_by_name.get(name).copied().map(MorId)
    }

    pub fn src(&self, m: MorId) -> ObjId {
        ObjId(self.inner.morphisms[m.0].src)
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        ObjId(self.inner.morphisms[m.0].tgt)
    }

    pub fn id(&self, x: ObjId) -> MorId {
        MorId(self.inner.identities[x.0])
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.inner.identities[self.src(m).0] == m.0
    }

    /// `f ; g` if composable.
    pub fn comp(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.inner.table[f.0 * self.n_morphisms() + g.0].map(MorId)
    }

    pub fn homs(&self, a: ObjId, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.inner.homs[a.0 * self.n_objects() + b.0].iter().copied().map(MorId)
    }

    /// All composable pairs `(f, g)` with their composite.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId, MorId)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.composable_after(f.0).map(move |g| (f, MorId(g))))
            .map(move |(f, g)| (f, g, self.comp(f, g).expect("composable")))
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |&m| !self.is_identity(m))
    }

    pub(crate) fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.inner.objects.clone(),
            morphisms: self.inner.morphisms.iter().map(|m| (m.name.clone(), m.src, m.tgt)).collect(),
            identities: self.inner.identities.clone(),
            compose: self
                .composable_pairs()
                .map(|(f, g, h)| ((f.0, g.0), h.0))
                .collect(),
        }
    }
}

impl Category for FinCategory {
    type Obj = ObjId;
    type Mor = MorId;

    fn source(&self, m: &MorId) -> ObjId {
        self.src(*m)
    }

    fn target(&self, m: &MorId) -> ObjId {
        self.tgt(*m)
    }

    fn identity(&self, x: &ObjId) -> MorId {
        self.id(*x)
    }

    fn compose(&self, f: &MorId, g: &MorId) -> Option<MorId> {
        self.comp(*f, *g)
    }

    fn validate_object(&self, x: &ObjId) -> Result<(), String> {
        if x.0 < self.n_objects() {
            Ok(())
        } else {
            Err(format!("object id {} out of range", x.0))
        }
    }

    fn validate_morphism(&self, m: &MorId) -> Result<(), String> {
        if m.0 < self.n_morphisms() {
            Ok(())
        } else {
            Err(format!("morphism id {} out of range", m.0))
        }
    }
}

impl HomSets for FinCategory {
    fn hom(&self, a: &ObjId, b: &ObjId) -> Result<Vec<MorId>, CatError> {
        Ok(self.homs(*a, *b).collect())
    }
}

fn find_cycle(out_edges: &[Vec<(String, usize)>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let n = out_edges.len();
    let mut state = vec![0u8; n];
    let mut stack_path = Vec::new();
    fn visit(
        v: usize,
        out: &[Vec<(String, usize)>],
        state: &mut [u8],
        path: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        path.push(v);
        for (_, t) in &out[v] {
            match state[*t] {
                1 => {
                    let start = path.iter().position(|&p| p == *t).expect("on stack");
                    return Some(path[start..].to_vec());
                }
                0 => {
                    if let Some(c) = visit(*t, out, state, path) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        path.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = visit(v, out_edges, &mut state, &mut stack_path) {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_has_one_morphism() {
        let t = make_category(&["*"], &[("id", "*", "*")], &[("*", "id")], &[]).unwrap();
        assert_eq!((t.n_objects(), t.n_morphisms()), (1, 1));
    }

    #[test]
    fn empty_object_list_is_the_empty_context() {
        let e = make_category::<&str>(&[], &[], &[], &[]).unwrap();
        assert_eq!(e.n_objects(), 0);
        assert_eq!(e, FinCategory::empty());
    }

    #[test]
    fn arrow_category_from_table() {
        let c = make_category(
            &["a", "b"],
            &[("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b")],
            &[("a", "id_a"), ("b", "id_b")],
            &[("u", "id_b", "u"), ("id_a", "u", "u")],
        )
        .unwrap();
        assert_eq!(c, FinCategory::arrow());
    }

    #[test]
    fn identity_law_violation_names_morphisms() {
        // Two endomorphisms of one object where the declared identity is not neutral.
        let err = make_category(
            &["x"],
            &[("i", "x", "x"), ("e", "x", "x")],
            &[("x", "i")],
            &[("i", "e", "i"), ("e", "i", "e"), ("e", "e", "e")],
        )
        .unwrap_err();
        assert_eq!(
            err,
            CatError::IdentityLawViolation { identity: "i".into(), morphism: "e".into() }
        );
    }

    #[test]
    fn associativity_violation_detected() {
        // Monoid {1, a, b} with a;a = b, a;b = a, b;a = b, b;b = b is not associative:
        // (a;a);b = b;b = b but a;(a;b) = a;a = b ... choose a table that fails.
        let err = make_category(
            &["x"],
            &[("1", "x", "x"), ("a", "x", "x"), ("b", "x", "x")],
            &[("x", "1")],
            &[
                ("a", "a", "b"),
                ("a", "b", "a"),
                ("b", "a", "a"),
                ("b", "b", "a"),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, CatError::AssociativityViolation { .. }), "{err:?}");
    }

    #[test]
    fn non_composable_pair_rejected() {
        let err = make_category(
            &["a", "b"],
            &[("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b")],
            &[("a", "id_a"), ("b", "id_b")],
            &[("u", "u", "u")],
        )
        .unwrap_err();
        assert_eq!(err, CatError::NonComposablePair { f: "u".into(), g: "u".into() });
    }

    #[test]
    fn missing_composite_rejected() {
        let err = make_category(
            &["a", "b", "c"],
            &[
                ("id_a", "a", "a"),
                ("id_b", "b", "b"),
                ("id_c", "c", "c"),
                ("u", "a", "b"),
                ("v", "b", "c"),
            ],
            &[("a", "id_a"), ("b", "id_b"), ("c", "id_c")],
            &[],
        )
        .unwrap_err();
        assert_eq!(err, CatError::MissingComposite { f: "u".into(), g: "v".into() });
    }

    #[test]
    fn free_terminal_and_cospan() {
        let t = FinCategory::free_on_acyclic_graph(&["x"], &[]).unwrap();
        assert_eq!((t.n_objects(), t.n_morphisms()), (1, 1));
        let cospan =
            FinCategory::free_on_acyclic_graph(&["a", "b", "c"], &[("f", "a", "c"), ("g", "b", "c")])
                .unwrap();
        assert_eq!(cospan.n_morphisms(), 5);
        cospan.check_laws().unwrap();
    }

    #[test]
    fn free_chain_has_composites() {
        let c = FinCategory::free_on_acyclic_graph(
            &["a", "b", "c"],
            &[("u", "a", "b"), ("v", "b", "c")],
        )
        .unwrap();
        assert_eq!(c.n_morphisms(), 6);
        let u = c.mor_by_name("u").unwrap();
        let v = c.mor_by_name("v").unwrap();
        assert_eq!(c.mor_name(c.comp(u, v).unwrap()), "u;v");
    }

    #[test]
    fn cycle_detected() {
        let err = FinCategory::free_on_acyclic_graph(&["a", "b"], &[("f", "a", "b"), ("g", "b", "a")])
            .unwrap_err();
        assert!(matches!(err, CatError::CycleDetected(_)));
        let err = FinCategory::free_on_acyclic_graph(&["a"], &[("l", "a", "a")]).unwrap_err();
        assert!(matches!(err, CatError::CycleDetected(_)));
    }
}
