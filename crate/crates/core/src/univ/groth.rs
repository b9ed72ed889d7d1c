use std::collections::HashMap;

use super::oracle::oracle_universal_fin;
use super::{LimitResult, UnivError};
use crate::base::{Adjunction, AdjunctionWitness};
use crate::fincat::{
    compose_passages, Bridge, CatError, Category, Cone, ConeKind, FinCategory, Functor, HomSets, MorId, ObjId,
    Passage, RawCategory,
};

/// An index category with a finite fiber per object and, per index
/// morphism `a: i → j`, passages `Ć_a: C_i → C_j` and/or `C̀_a: C_j → C_i`.
/// When both are present they come with an adjunction `Ć_a ⊣ C̀_a`. Each
/// assignment is strictly functorial.
#[derive(Debug, Clone)]
pub struct IndexedAdjunction {
    pub index: FinCategory,
    pub fibers: Vec<FinCategory>,
    acute: Option<Vec<Passage<FinCategory>>>,
    grave: Option<Vec<Passage<FinCategory>>>,
    witnesses: Option<Vec<AdjunctionWitness>>,
}

impl IndexedAdjunction {
    pub fn new(
        index: FinCategory,
        fibers: Vec<FinCategory>,
        adjunctions: Vec<AdjunctionWitness>,
    ) -> Result<Self, UnivError> {
        let acute = adjunctions.iter().map(|w| w.left.clone()).collect();
        let grave = adjunctions.iter().map(|w| w.right.clone()).collect();
        let ix = IndexedAdjunction { index, fibers, acute: Some(acute), grave: Some(grave), witnesses: Some(adjunctions) };
        ix.check()?;
        Ok(ix)
    }

    /// Only the covariant assignment `a ↦ Ć_a`.
    pub fn covariant(index: FinCategory, fibers: Vec<FinCategory>, acute: Vec<Passage<FinCategory>>) -> Result<Self, UnivError> {
        let ix = IndexedAdjunction { index, fibers, acute: Some(acute), grave: None, witnesses: None };
        ix.check()?;
        Ok(ix)
    }

    /// Only the contravariant assignment `a ↦ C̀_a`.
    pub fn contravariant(
        index: FinCategory,
        fibers: Vec<FinCategory>,
        grave: Vec<Passage<FinCategory>>,
    ) -> Result<Self, UnivError> {
        let ix = IndexedAdjunction { index, fibers, acute: None, grave: Some(grave), witnesses: None };
        ix.check()?;
        Ok(ix)
    }

    fn check(&self) -> Result<(), UnivError> {
        let index = &self.index;
        let bad = |m: String| Err(UnivError::StrictnessViolation(m));
        if self.fibers.len() != index.n_objects() {
            return bad("one fiber per index object".into());
        }
        for (list, covariant) in [(&self.acute, true), (&self.grave, false)] {
            let Some(list) = list else { continue };
            if list.len() != index.n_morphisms() {
                return bad("one passage per index morphism".into());
            }
            for a in index.morphisms() {
                let (i, j) = (&self.fibers[index.src(a).0], &self.fibers[index.tgt(a).0]);
                let (from, to) = if covariant { (i, j) } else { (j, i) };
                if list[a.0].source() != from || list[a.0].target() != to {
                    return bad(format!("passage at {} has wrong fibers", index.mor_name(a)));
                }
            }
            for i in index.objects() {
                if list[index.id(i).0] != Passage::identity(&self.fibers[i.0]) {
                    return bad(format!("identity at {} is not the identity", index.obj_name(i)));
                }
            }
            for (a, b, ab) in index.composable_pairs() {
                let c = if covariant {
                    compose_passages(&list[a.0], &list[b.0])?
                } else {
                    compose_passages(&list[b.0], &list[a.0])?
                };
                if c != list[ab.0] {
                    return bad(format!("{} ; {} is not preserved", index.mor_name(a), index.mor_name(b)));
                }
            }
        }
        Ok(())
    }

    pub fn acute(&self, a: MorId) -> &Passage<FinCategory> {
        &self.acute.as_ref().expect("covariant assignment")[a.0]
    }

    pub fn grave(&self, a: MorId) -> &Passage<FinCategory> {
        &self.grave.as_ref().expect("contravariant assignment")[a.0]
    }

    pub fn has_acute(&self) -> bool {
        self.acute.is_some()
    }

    pub fn has_grave(&self) -> bool {
        self.grave.is_some()
    }

    pub fn adjunction(&self, a: MorId) -> Option<&AdjunctionWitness> {
        self.witnesses.as_ref().map(|w| &w[a.0])
    }

    fn witness(&self, a: MorId) -> Result<&AdjunctionWitness, UnivError> {
        self.adjunction(a).ok_or_else(|| UnivError::StrictnessViolation("no adjunction to transpose along".into()))
    }
}

/// Which fiber passage morphisms of the total category are typed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `⟨a, f̀⟩` with `f̀ : A → C̀_a B` in the source fiber.
    Fibration,
    /// `⟨a, f́⟩` with `f́ : Ć_a A → B` in the target fiber.
    Opfibration,
}

/// The total category `∫C` of an indexed adjunction.
#[derive(Debug, Clone)]
pub struct GrothendieckTotal {
    pub convention: Convention,
    pub category: FinCategory,
    /// `(i, A)` per total object.
    pub objects: Vec<(ObjId, ObjId)>,
    /// `(a, f)` per total morphism.
    pub morphisms: Vec<(MorId, MorId)>,
    pub projection: Passage<FinCategory>,
    /// `C_i → ∫C` per index object.
    pub inclusions: Vec<Passage<FinCategory>>,
    pub indexed: IndexedAdjunction,
    obj_ix: HashMap<(ObjId, ObjId), ObjId>,
    /// By total endpoints, index morphism and fiber morphism.
    mor_ix: HashMap<(ObjId, ObjId, MorId, MorId), MorId>,
}

pub fn grothendieck(ix: &IndexedAdjunction, convention: Convention) -> Result<GrothendieckTotal, UnivError> {
    let present = match convention {
        Convention::Opfibration => ix.has_acute(),
        Convention::Fibration => ix.has_grave(),
    };
    if !present {
        return Err(UnivError::StrictnessViolation("no fiber assignment for this convention".into()));
    }
    let index = &ix.index;
    let mut objects = Vec::new();
    let mut obj_names = Vec::new();
    let mut obj_ix = HashMap::new();
    for i in index.objects() {
        for a in ix.fibers[i.0].objects() {
            obj_ix.insert((i, a), objects.len());
            obj_names.push(format!("({},{})", index.obj_name(i), ix.fibers[i.0].obj_name(a)));
            objects.push((i, a));
        }
    }
    // Fiber morphism typing ⟨a, f⟩ between (i, A) and (j, B).
    let fiber_hom = |a: MorId, x: ObjId, y: ObjId| -> (usize, ObjId, ObjId) {
        match convention {
            Convention::Opfibration => (index.tgt(a).0, *ix.acute(a).obj(x), y),
            Convention::Fibration => (index.src(a).0, x, *ix.grave(a).obj(y)),
        }
    };
    let mut morphisms = Vec::new();
    let mut mor_names = Vec::new();
    let mut raw_mors = Vec::new();
    let mut mor_ix = HashMap::new();
    for (s, &(i, x)) in objects.iter().enumerate() {
        for (t, &(j, y)) in objects.iter().enumerate() {
            for a in index.homs(i, j) {
                let (fib, from, to) = fiber_hom(a, x, y);
                for f in ix.fibers[fib].homs(from, to) {
                    mor_ix.insert((s, t, a, f), morphisms.len());
                    // ⟨a, f⟩ alone does not fix the endpoints.
                    let name = format!("({},{}):{}->{}", index.mor_name(a), ix.fibers[fib].mor_name(f), obj_names[s], obj_names[t]);
                    raw_mors.push((name.clone(), s, t));
                    mor_names.push(name);
                    morphisms.push((a, f));
                }
            }
        }
    }
    let compose_pair = |(a, f): (MorId, MorId), (b, g): (MorId, MorId)| -> (MorId, MorId) {
        let ab = index.comp(a, b).expect("composable");
        let h = match convention {
            Convention::Opfibration => {
                let fib = &ix.fibers[index.tgt(b).0];
                fib.comp(*ix.acute(b).mor(f), g).expect("typed")
            }
            Convention::Fibration => {
                let fib = &ix.fibers[index.src(a).0];
                fib.comp(f, *ix.grave(a).mor(g)).expect("typed")
            }
        };
        (ab, h)
    };
    let mut compose = HashMap::new();
    for (p, &(_, s1, t)) in raw_mors.iter().enumerate() {
        for (q, &(_, s2, t2)) in raw_mors.iter().enumerate() {
            if t == s2 {
                let (ab, h) = compose_pair(morphisms[p], morphisms[q]);
                compose.insert((p, q), *mor_ix.get(&(s1, t2, ab, h)).expect("composite exists"));
            }
        }
    }
    let identities = objects
        .iter()
        .enumerate()
        .map(|(s, &(i, x))| mor_ix[&(s, s, index.id(i), ix.fibers[i.0].id(x))])
        .collect();
    let category = RawCategory { objects: obj_names.clone(), morphisms: raw_mors, identities, compose }.canonicalize();
    category.check_laws()?;
    // Re-align the (i, A) / (a, f) tables with canonical ids.
    let mut objs = vec![(ObjId(0), ObjId(0)); objects.len()];
    for (old, n) in obj_names.iter().enumerate() {
        objs[category.obj_by_name(n).expect("object").0] = objects[old];
    }
    let mut mors = vec![(MorId(0), MorId(0)); morphisms.len()];
    for (old, n) in mor_names.iter().enumerate() {
        mors[category.mor_by_name(n).expect("morphism").0] = morphisms[old];
    }
    let obj_ix: HashMap<_, _> = objs.iter().enumerate().map(|(k, p)| (*p, ObjId(k))).collect();
    let mor_ix: HashMap<_, _> =
        mors.iter().enumerate().map(|(k, p)| ((category.src(MorId(k)), category.tgt(MorId(k)), p.0, p.1), MorId(k))).collect();
    let projection = Passage::new(
        category.clone(),
        index.clone(),
        objs.iter().map(|p| p.0).collect(),
        mors.iter().map(|p| p.0).collect(),
    )?;
    let inclusions = index
        .objects()
        .map(|i| {
            let fib = &ix.fibers[i.0];
            Passage::new(
                fib.clone(),
                category.clone(),
                fib.objects().map(|x| obj_ix[&(i, x)]).collect(),
                fib.morphisms().map(|f| mor_ix[&(obj_ix[&(i, fib.src(f))], obj_ix[&(i, fib.tgt(f))], index.id(i), f)]).collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GrothendieckTotal {
        convention,
        category,
        objects: objs,
        morphisms: mors,
        projection,
        inclusions,
        indexed: ix.clone(),
        obj_ix,
        mor_ix,
    })
}

impl GrothendieckTotal {
    pub fn obj(&self, i: ObjId, x: ObjId) -> ObjId {
        self.obj_ix[&(i, x)]
    }

    /// The morphism `⟨a, f⟩ : src → tgt`.
    pub fn mor(&self, src: ObjId, tgt: ObjId, a: MorId, f: MorId) -> Option<MorId> {
        self.mor_ix.get(&(src, tgt, a, f)).copied()
    }

    /// The fiber part of `m` in the other convention: `f́ ↦ η_A ; C̀_a(f́)`
    /// and `f̀ ↦ Ć_a(f̀) ; ε_B`.
    pub fn transpose_fiber(&self, m: MorId) -> Result<MorId, UnivError> {
        let (a, f) = self.morphisms[m.0];
        let w = self.indexed.witness(a)?;
        let (s, t) = (self.category.src(m), self.category.tgt(m));
        Ok(match self.convention {
            Convention::Opfibration => w.transpose_down(&self.objects[s.0].1, &f).expect("typed"),
            Convention::Fibration => w.transpose_up(&self.objects[t.0].1, &f).expect("typed"),
        })
    }

    /// The morphism of `other` (same indexed adjunction, other convention)
    /// corresponding to `m`.
    pub fn transpose_into(&self, other: &GrothendieckTotal, m: MorId) -> Result<Option<MorId>, UnivError> {
        let (i, x) = self.objects[self.category.src(m).0];
        let (j, y) = self.objects[self.category.tgt(m).0];
        Ok(other.mor(other.obj(i, x), other.obj(j, y), self.morphisms[m.0].0, self.transpose_fiber(m)?))
    }

    /// `ί_a : incl_i ⇒ Ć_a ; incl_j`.
    pub fn iota_acute(&self, a: MorId) -> Result<Bridge<FinCategory>, UnivError> {
        let ix = &self.indexed;
        let (i, j) = (ix.index.src(a), ix.index.tgt(a));
        let w = ix.witness(a)?;
        let comps = ix.fibers[i.0]
            .objects()
            .map(|x| {
                let f = match self.convention {
                    Convention::Opfibration => ix.fibers[j.0].id(*w.left.obj(x)),
                    Convention::Fibration => w.unit(&x),
                };
                self.mor(self.obj(i, x), self.obj(j, *w.left.obj(x)), a, f).expect("typed")
            })
            .collect();
        Ok(Bridge::new(
            self.inclusions[i.0].clone(),
            compose_passages(&w.left, &self.inclusions[j.0])?,
            comps,
        )?)
    }

    /// `ὶ_a : C̀_a ; incl_i ⇒ incl_j`.
    pub fn iota_grave(&self, a: MorId) -> Result<Bridge<FinCategory>, UnivError> {
        let ix = &self.indexed;
        let (i, j) = (ix.index.src(a), ix.index.tgt(a));
        let w = ix.witness(a)?;
        let comps = ix.fibers[j.0]
            .objects()
            .map(|y| {
                let f = match self.convention {
                    Convention::Opfibration => w.counit(&y),
                    Convention::Fibration => ix.fibers[i.0].id(*w.right.obj(y)),
                };
                self.mor(self.obj(i, *w.right.obj(y)), self.obj(j, y), a, f).expect("typed")
            })
            .collect();
        Ok(Bridge::new(
            compose_passages(&w.right, &self.inclusions[i.0])?,
            self.inclusions[j.0].clone(),
            comps,
        )?)
    }

    /// Fiber part of `m` read in the fibration convention.
    fn grave_part(&self, m: MorId) -> Result<MorId, UnivError> {
        match self.convention {
            Convention::Fibration => Ok(self.morphisms[m.0].1),
            Convention::Opfibration => self.transpose_fiber(m),
        }
    }

    /// Fiber part of `m` read in the opfibration convention.
    fn acute_part(&self, m: MorId) -> Result<MorId, UnivError> {
        match self.convention {
            Convention::Opfibration => Ok(self.morphisms[m.0].1),
            Convention::Fibration => self.transpose_fiber(m),
        }
    }

    /// `⟨a, f̀⟩` with `f̀ : A → C̀_a B`, as a morphism of this category.
    fn from_grave(&self, src: ObjId, tgt: ObjId, a: MorId, f: MorId) -> Result<MorId, UnivError> {
        let b = self.objects[tgt.0].1;
        let f = match self.convention {
            Convention::Fibration => f,
            Convention::Opfibration => self.indexed.witness(a)?.transpose_up(&b, &f).expect("typed"),
        };
        self.mor(src, tgt, a, f).ok_or_else(|| UnivError::NoMediator("leg is not a total morphism".into()))
    }

    /// `⟨a, f́⟩` with `f́ : Ć_a A → B`, as a morphism of this category.
    fn from_acute(&self, src: ObjId, tgt: ObjId, a: MorId, f: MorId) -> Result<MorId, UnivError> {
        let x = self.objects[src.0].1;
        let f = match self.convention {
            Convention::Opfibration => f,
            Convention::Fibration => self.indexed.witness(a)?.transpose_down(&x, &f).expect("typed"),
        };
        self.mor(src, tgt, a, f).ok_or_else(|| UnivError::NoMediator("leg is not a total morphism".into()))
    }
}

fn search_mediator(total: &FinCategory, through: Cone<FinCategory>) -> impl Fn(&Cone<FinCategory>) -> Result<MorId, UnivError> {
    let total = total.clone();
    move |c: &Cone<FinCategory>| {
        let homs = match c.kind {
            ConeKind::Limit => total.hom(&c.vertex, &through.vertex)?,
            ConeKind::Colimit => total.hom(&through.vertex, &c.vertex)?,
        };
        let fs: Vec<MorId> = homs.into_iter().filter(|m| c.factors_through(&total, &through, m)).collect();
        match fs.len() {
            1 => Ok(fs[0]),
            0 => Err(UnivError::NoMediator("no morphism factors the candidate".into())),
            n => Err(UnivError::NonUniqueMediator(n)),
        }
    }
}

/// Limit in `∫C`: limit of the projected diagram in the index, fiber
/// components pulled back along the legs by `C̀`, then the limit in the
/// apex fiber.
pub fn groth_structured_limit(
    total: &GrothendieckTotal,
    d: &Passage<FinCategory>,
) -> Result<LimitResult<FinCategory>, UnivError> {
    let ix = &total.indexed;
    if !ix.has_grave() {
        return Err(UnivError::StrictnessViolation("limits need the contravariant assignment".into()));
    }
    let shape = d.source();
    let base = oracle_universal_fin(&compose_passages(d, &total.projection)?, ConeKind::Limit)?;
    let l = *base.vertex();
    let pi = base.legs().to_vec();
    let fib = &ix.fibers[l.0];
    let objs: Vec<ObjId> = shape.objects().map(|j| *ix.grave(pi[j.0]).obj(total.objects[d.obj(j).0].1)).collect();
    let mors = shape
        .morphisms()
        .map(|m| Ok(*ix.grave(pi[shape.src(m).0]).mor(total.grave_part(*d.mor(m))?)))
        .collect::<Result<Vec<MorId>, UnivError>>()?;
    let fd = Passage::new(shape.clone(), fib.clone(), objs, mors)?;
    let fl = oracle_universal_fin(&fd, ConeKind::Limit).map_err(|e| UnivError::FiberNotCocomplete(e.to_string()))?;
    let vertex = total.obj(l, *fl.vertex());
    let legs = shape
        .objects()
        .map(|j| total.from_grave(vertex, *d.obj(j), pi[j.0], fl.legs()[j.0]))
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone::new(d, ConeKind::Limit, vertex, legs)?;
    let med = search_mediator(&total.category, cone.clone());
    Ok(LimitResult::new(d.clone(), cone, med))
}

/// Colimit in `∫C`: colimit in the index, fiber components pushed along
/// the legs by `Ć`, then the colimit in the apex fiber.
pub fn groth_structured_colimit(
    total: &GrothendieckTotal,
    d: &Passage<FinCategory>,
) -> Result<LimitResult<FinCategory>, UnivError> {
    let ix = &total.indexed;
    if !ix.has_acute() {
        return Err(UnivError::StrictnessViolation("colimits need the covariant assignment".into()));
    }
    let shape = d.source();
    let base = oracle_universal_fin(&compose_passages(d, &total.projection)?, ConeKind::Colimit)?;
    let l = *base.vertex();
    let iota = base.legs().to_vec();
    let fib = &ix.fibers[l.0];
    let objs: Vec<ObjId> = shape.objects().map(|j| *ix.acute(iota[j.0]).obj(total.objects[d.obj(j).0].1)).collect();
    let mors = shape
        .morphisms()
        .map(|m| Ok(*ix.acute(iota[shape.tgt(m).0]).mor(total.acute_part(*d.mor(m))?)))
        .collect::<Result<Vec<MorId>, UnivError>>()?;
    let fd = Passage::new(shape.clone(), fib.clone(), objs, mors)?;
    let fc = oracle_universal_fin(&fd, ConeKind::Colimit).map_err(|e| UnivError::FiberNotCocomplete(e.to_string()))?;
    let vertex = total.obj(l, *fc.vertex());
    let legs = shape
        .objects()
        .map(|j| total.from_acute(*d.obj(j), vertex, iota[j.0], fc.legs()[j.0]))
        .collect::<Result<Vec<_>, _>>()?;
    let cone = Cone::new(d, ConeKind::Colimit, vertex, legs)?;
    let med = search_mediator(&total.category, cone.clone());
    Ok(LimitResult::new(d.clone(), cone, med))
}

/// A finite full subcategory of a category with enumerable hom-sets,
/// tabulated as a [`FinCategory`]. Object `k` is named `o<k>` and
/// morphism `n` is named `m<n>` (zero-padded, so ids follow the lists).
#[derive(Debug, Clone)]
pub struct FiniteModel<T: Category> {
    pub category: FinCategory,
    pub objects: Vec<T::Obj>,
    pub morphisms: Vec<T::Mor>,
}

pub fn finite_model<T: HomSets>(cat: &T, objects: Vec<T::Obj>) -> Result<FiniteModel<T>, UnivError> {
    let n = objects.len();
    let mut morphisms = Vec::new();
    let mut raw = Vec::new();
    let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (s, a) in objects.iter().enumerate() {
        for (t, b) in objects.iter().enumerate() {
            for m in cat.hom(a, b)? {
                homs.entry((s, t)).or_default().push(morphisms.len());
                raw.push((format!("m{:06}", morphisms.len()), s, t));
                morphisms.push(m);
            }
        }
    }
    let find = |s: usize, t: usize, m: &T::Mor| -> Option<usize> {
        homs.get(&(s, t))?.iter().copied().find(|&k| &morphisms[k] == m)
    };
    let identities = (0..n)
        .map(|s| find(s, s, &cat.identity(&objects[s])).ok_or_else(|| CatError::MissingIdentity(format!("o{s:04}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut compose = HashMap::new();
    for (p, &(_, s, t)) in raw.iter().enumerate() {
        for (q, &(_, s2, t2)) in raw.iter().enumerate() {
            if t != s2 {
                continue;
            }
            let c = cat.compose(&morphisms[p], &morphisms[q]).and_then(|c| find(s, t2, &c));
            let c = c.ok_or_else(|| CatError::MissingComposite { f: raw[p].0.clone(), g: raw[q].0.clone() })?;
            compose.insert((p, q), c);
        }
    }
    let category = RawCategory {
        objects: (0..n).map(|k| format!("o{k:04}")).collect(),
        morphisms: raw,
        identities,
        compose,
    }
    .canonicalize();
    Ok(FiniteModel { category, objects, morphisms })
}

impl<T: Category> FiniteModel<T> {
    pub fn obj_id(&self, x: &T::Obj) -> Option<ObjId> {
        self.objects.iter().position(|o| o == x).map(ObjId)
    }

    pub fn mor_id(&self, m: &T::Mor) -> Option<MorId> {
        self.morphisms.iter().position(|o| o == m).map(MorId)
    }

    /// A functor between modelled categories as a passage, when it maps
    /// modelled objects to modelled objects.
    pub fn lift<F, U>(&self, f: &F, target: &FiniteModel<U>) -> Result<Passage<FinCategory>, UnivError>
    where
        F: Functor<Src = T, Tgt = U>,
        U: Category,
    {
        let objs = self
            .objects
            .iter()
            .map(|x| target.obj_id(&f.on_obj(x)).ok_or_else(|| UnivError::StrictnessViolation(format!("{x:?} leaves the model"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mors = self
            .morphisms
            .iter()
            .map(|m| target.mor_id(&f.on_mor(m)).ok_or_else(|| UnivError::StrictnessViolation(format!("{m:?} leaves the model"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Passage::new(self.category.clone(), target.category.clone(), objs, mors)?)
    }
}
