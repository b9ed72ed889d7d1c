use super::{DomMorphism, FoleError, Infomorphism, ListX, Signature, SignatureMorphism, SignedDomain, Table, TableMorphism, TblA};
use crate::elem::{product_choices, Elem, FinSet, SetFn};
use crate::fincat::{
    compose_passages, Bridge, CatError, Category, FinCategory, Functor, HomSets, MorId, ObjId, Passage,
};

/// An adjunction `L ⊣ R` with `L: Lower → Upper`, presented by its unit
/// `η_x : x → R L x` and counit `ε_y : L R y → y`.
pub trait Adjunction {
    type Lower: Category;
    type Upper: Category;

    fn lower(&self) -> &Self::Lower;
    fn upper(&self) -> &Self::Upper;
    fn left_obj(&self, x: &<Self::Lower as Category>::Obj) -> <Self::Upper as Category>::Obj;
    fn left_mor(&self, m: &<Self::Lower as Category>::Mor) -> <Self::Upper as Category>::Mor;
    fn right_obj(&self, y: &<Self::Upper as Category>::Obj) -> <Self::Lower as Category>::Obj;
    fn right_mor(&self, m: &<Self::Upper as Category>::Mor) -> <Self::Lower as Category>::Mor;
    fn unit(&self, x: &<Self::Lower as Category>::Obj) -> <Self::Lower as Category>::Mor;
    fn counit(&self, y: &<Self::Upper as Category>::Obj) -> <Self::Upper as Category>::Mor;

    /// `L x → y` to `x → R y`: `η_x ; R(m)`.
    fn transpose_down(
        &self,
        x: &<Self::Lower as Category>::Obj,
        m: &<Self::Upper as Category>::Mor,
    ) -> Option<<Self::Lower as Category>::Mor> {
        self.lower().compose(&self.unit(x), &self.right_mor(m))
    }

    /// `x → R y` to `L x → y`: `L(n) ; ε_y`.
    fn transpose_up(
        &self,
        y: &<Self::Upper as Category>::Obj,
        n: &<Self::Lower as Category>::Mor,
    ) -> Option<<Self::Upper as Category>::Mor> {
        self.upper().compose(&self.left_mor(n), &self.counit(y))
    }

    /// `L(η_x) ; ε_{L x} = id_{L x}`.
    fn left_triangle(&self, x: &<Self::Lower as Category>::Obj) -> bool {
        let lx = self.left_obj(x);
        self.upper().compose(&self.left_mor(&self.unit(x)), &self.counit(&lx)) == Some(self.upper().identity(&lx))
    }

    /// `η_{R y} ; R(ε_y) = id_{R y}`.
    fn right_triangle(&self, y: &<Self::Upper as Category>::Obj) -> bool {
        let ry = self.right_obj(y);
        self.lower().compose(&self.unit(&ry), &self.right_mor(&self.counit(y))) == Some(self.lower().identity(&ry))
    }
}

/// Checks that transposition is a bijection `hom(L x, y) ≅ hom(x, R y)`
/// by enumerating both sides. Returns the common cardinality.
pub fn check_hom_bijection<A>(
    adj: &A,
    x: &<A::Lower as Category>::Obj,
    y: &<A::Upper as Category>::Obj,
) -> Result<usize, String>
where
    A: Adjunction,
    A::Lower: HomSets,
    A::Upper: HomSets,
{
    let lx = adj.left_obj(x);
    let ry = adj.right_obj(y);
    let ups = adj.upper().hom(&lx, y).map_err(|e| e.to_string())?;
    let downs = adj.lower().hom(x, &ry).map_err(|e| e.to_string())?;
    if ups.len() != downs.len() {
        return Err(format!("|hom(Lx, y)| = {} but |hom(x, Ry)| = {}", ups.len(), downs.len()));
    }
    for m in &ups {
        let n = adj.transpose_down(x, m).ok_or("transpose does not compose")?;
        if !downs.contains(&n) {
            return Err(format!("transpose of {m:?} is not a morphism x → R y"));
        }
        if adj.transpose_up(y, &n).as_ref() != Some(m) {
            return Err(format!("transposing {m:?} twice does not return it"));
        }
    }
    for n in &downs {
        let m = adj.transpose_up(y, n).ok_or("transpose does not compose")?;
        if adj.transpose_down(x, &m).as_ref() != Some(n) {
            return Err(format!("transposing {n:?} twice does not return it"));
        }
    }
    Ok(ups.len())
}

/// An adjunction between finite categories, given by passages and
/// bridges `η : id ⇒ L ; R` and `ε : R ; L ⇒ id`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjunctionWitness {
    pub left: Passage<FinCategory>,
    pub right: Passage<FinCategory>,
    pub unit: Bridge<FinCategory>,
    pub counit: Bridge<FinCategory>,
}

impl AdjunctionWitness {
    pub fn new(
        left: Passage<FinCategory>,
        right: Passage<FinCategory>,
        unit: Vec<MorId>,
        counit: Vec<MorId>,
    ) -> Result<Self, CatError> {
        let lower = left.source().clone();
        let upper = left.target().clone();
        if right.source() != &upper || right.target() != &lower {
            return Err(CatError::EndpointMismatch("right adjoint must run back".into()));
        }
        let unit = Bridge::new(Passage::identity(&lower), compose_passages(&left, &right)?, unit)?;
        let counit = Bridge::new(compose_passages(&right, &left)?, Passage::identity(&upper), counit)?;
        let w = AdjunctionWitness { left, right, unit, counit };
        for x in lower.objects() {
            if !w.left_triangle(&x) {
                return Err(CatError::NotNatural(format!("left triangle fails at {}", lower.obj_name(x))));
            }
        }
        for y in upper.objects() {
            if !w.right_triangle(&y) {
                return Err(CatError::NotNatural(format!("right triangle fails at {}", upper.obj_name(y))));
            }
        }
        Ok(w)
    }

    /// The adjunction `id ⊣ id`.
    pub fn identity(c: &FinCategory) -> Self {
        let id = Passage::identity(c);
        let comps: Vec<MorId> = c.objects().map(|x| c.id(x)).collect();
        AdjunctionWitness {
            unit: Bridge::new_unchecked(id.clone(), id.clone(), comps.clone()).expect("sized"),
            counit: Bridge::new_unchecked(id.clone(), id.clone(), comps).expect("sized"),
            left: id.clone(),
            right: id,
        }
    }

    /// For a preorder-like pair of passages: the unit and counit are
    /// forced when hom-sets have at most one element. Returns `None` when
    /// the required morphisms do not exist.
    pub fn between_posets(left: Passage<FinCategory>, right: Passage<FinCategory>) -> Option<Self> {
        let lower = left.source().clone();
        let upper = left.target().clone();
        let unit: Option<Vec<MorId>> =
            lower.objects().map(|x| lower.homs(x, *right.obj(*left.obj(x))).next()).collect();
        let counit: Option<Vec<MorId>> =
            upper.objects().map(|y| upper.homs(*left.obj(*right.obj(y)), y).next()).collect();
        AdjunctionWitness::new(left, right, unit?, counit?).ok()
    }

    /// `L ; L'` and `R' ; R` with the composite unit and counit.
    pub fn then(&self, next: &AdjunctionWitness) -> Result<AdjunctionWitness, CatError> {
        let left = compose_passages(&self.left, &next.left)?;
        let right = compose_passages(&next.right, &self.right)?;
        let lower = self.lower().clone();
        let mid = next.lower().clone();
        let upper = next.upper().clone();
        let unit = lower
            .objects()
            .map(|x| {
                let inner = next.unit.component(*self.left.obj(x));
                lower.comp(*self.unit.component(x), *self.right.mor(*inner))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CatError::EndpointMismatch("unit composite".into()))?;
        let counit = upper
            .objects()
            .map(|y| {
                let inner = self.counit.component(*next.right.obj(y));
                upper.comp(*next.left.mor(*inner), *next.counit.component(y))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CatError::EndpointMismatch("counit composite".into()))?;
        let _ = mid;
        AdjunctionWitness::new(left, right, unit, counit)
    }
}

impl Adjunction for AdjunctionWitness {
    type Lower = FinCategory;
    type Upper = FinCategory;

    fn lower(&self) -> &FinCategory {
        self.left.source()
    }

    fn upper(&self) -> &FinCategory {
        self.left.target()
    }

    fn left_obj(&self, x: &ObjId) -> ObjId {
        *self.left.obj(*x)
    }

    fn left_mor(&self, m: &MorId) -> MorId {
        *self.left.mor(*m)
    }

    fn right_obj(&self, y: &ObjId) -> ObjId {
        *self.right.obj(*y)
    }

    fn right_mor(&self, m: &MorId) -> MorId {
        *self.right.mor(*m)
    }

    fn unit(&self, x: &ObjId) -> MorId {
        *self.unit.component(*x)
    }

    fn counit(&self, y: &ObjId) -> MorId {
        *self.counit.component(*y)
    }
}

/// `Σ_f ⊣ f*` between List(X2) and List(X1) for a sort function
/// `f: X2 → X1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ListFiberAdjunction {
    f: SetFn,
    lower: ListX,
    upper: ListX,
}

impl ListFiberAdjunction {
    pub fn new(f: SetFn) -> Self {
        let lower = ListX::new(f.dom().clone());
        let upper = ListX::new(f.cod().clone());
        ListFiberAdjunction { f, lower, upper }
    }

    pub fn f(&self) -> &SetFn {
        &self.f
    }

    /// `Σ_f` as a functor.
    pub fn sigma(&self) -> SigmaF {
        SigmaF(self.clone())
    }

    /// `f*` as a functor.
    pub fn f_star(&self) -> FStar {
        FStar(self.clone())
    }

    /// Along an identity sort map the chosen pullback is the identity.
    fn trivial(&self) -> bool {
        self.f.is_identity()
    }

    /// `(i, x2) ↦ i`: the arity part of the counit.
    fn first(&self, s1: &Signature) -> SetFn {
        if self.trivial() {
            return SetFn::identity(s1.arity());
        }
        let pulled = self.right_obj(s1);
        SetFn::from_fn(pulled.arity().clone(), s1.arity().clone(), |p| p.as_tuple().expect("pair")[0].clone())
            .expect("first projection")
    }
}

impl Adjunction for ListFiberAdjunction {
    type Lower = ListX;
    type Upper = ListX;

    fn lower(&self) -> &ListX {
        &self.lower
    }

    fn upper(&self) -> &ListX {
        &self.upper
    }

    /// `Σ_f (I, s) = (I, s ; f)`.
    fn left_obj(&self, s2: &Signature) -> Signature {
        Signature::new(s2.sort_fn().then(&self.f).expect("signature over X2"))
    }

    fn left_mor(&self, m: &SignatureMorphism) -> SignatureMorphism {
        SignatureMorphism::new_unchecked(
            self.left_obj(m.source()),
            self.left_obj(m.target()),
            m.h().clone(),
            SetFn::identity(self.f.cod()),
        )
    }

    /// `f* (I, s) = { (i, x2) | s(i) = f(x2) }` sorted by `x2`.
    fn right_obj(&self, s1: &Signature) -> Signature {
        if self.trivial() {
            return s1.clone();
        }
        let mut pairs = Vec::new();
        for (i, x1) in s1.sort_fn().pairs() {
            for (x2, fx) in self.f.pairs() {
                if fx == x1 {
                    pairs.push((Elem::pair(i.clone(), x2.clone()), x2.clone()));
                }
            }
        }
        let arity: FinSet = pairs.iter().map(|(p, _)| p.clone()).collect();
        Signature::from_pairs(arity, self.f.dom().clone(), pairs).expect("pullback signature")
    }

    fn right_mor(&self, m: &SignatureMorphism) -> SignatureMorphism {
        if self.trivial() {
            return m.clone();
        }
        let src = self.right_obj(m.source());
        let tgt = self.right_obj(m.target());
        let h = SetFn::from_fn(src.arity().clone(), tgt.arity().clone(), |p| {
            let v = p.as_tuple().expect("pair");
            Elem::pair(m.h().apply(&v[0]).expect("in arity").clone(), v[1].clone())
        })
        .expect("pulled back arity map");
        SignatureMorphism::new_unchecked(src, tgt, h, SetFn::identity(self.f.dom()))
    }

    /// `i ↦ (i, s2(i))`.
    fn unit(&self, s2: &Signature) -> SignatureMorphism {
        if self.trivial() {
            return SignatureMorphism::identity(s2);
        }
        let tgt = self.right_obj(&self.left_obj(s2));
        let h = SetFn::from_fn(s2.arity().clone(), tgt.arity().clone(), |i| {
            Elem::pair(i.clone(), s2.sort_of(i).expect("in arity").clone())
        })
        .expect("unit arity map");
        SignatureMorphism::new_unchecked(s2.clone(), tgt, h, SetFn::identity(self.f.dom()))
    }

    /// `(i, x2) ↦ i`.
    fn counit(&self, s1: &Signature) -> SignatureMorphism {
        let src = self.left_obj(&self.right_obj(s1));
        SignatureMorphism::new_unchecked(src, s1.clone(), self.first(s1), SetFn::identity(self.f.cod()))
    }
}

/// `Σ_f : List(X2) → List(X1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaF(pub ListFiberAdjunction);

impl Functor for SigmaF {
    type Src = ListX;
    type Tgt = ListX;

    fn target_category(&self) -> &ListX {
        &self.0.upper
    }

    fn on_obj(&self, x: &Signature) -> Signature {
        self.0.left_obj(x)
    }

    fn on_mor(&self, m: &SignatureMorphism) -> SignatureMorphism {
        self.0.left_mor(m)
    }
}

/// `f* : List(X1) → List(X2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FStar(pub ListFiberAdjunction);

impl Functor for FStar {
    type Src = ListX;
    type Tgt = ListX;

    fn target_category(&self) -> &ListX {
        &self.0.lower
    }

    fn on_obj(&self, x: &Signature) -> Signature {
        self.0.right_obj(x)
    }

    fn on_mor(&self, m: &SignatureMorphism) -> SignatureMorphism {
        self.0.right_mor(m)
    }
}

/// `tbĺ ⊣ tbl̀` between Tbl(A1) and Tbl(A2) for an infomorphism
/// `⟨f, g⟩ : A2 ⇄ A1`, together with the signed domain and table
/// inclusion bridges and the tuple bridges along `⟨f, g⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TblFiberAdjunction {
    info: Infomorphism,
    list: ListFiberAdjunction,
    lower: TblA,
    upper: TblA,
}

impl TblFiberAdjunction {
    pub fn new(info: Infomorphism) -> Self {
        let list = ListFiberAdjunction::new(info.f().clone());
        let lower = TblA::new(info.target().clone());
        let upper = TblA::new(info.source().clone());
        TblFiberAdjunction { info, list, lower, upper }
    }

    pub fn info(&self) -> &Infomorphism {
        &self.info
    }

    pub fn list(&self) -> &ListFiberAdjunction {
        &self.list
    }

    pub fn acute(&self) -> TblAcute {
        TblAcute(self.clone())
    }

    pub fn grave(&self) -> TblGrave {
        TblGrave(self.clone())
    }

    pub fn tup_along(&self) -> TupAlong {
        TupAlong(self.clone())
    }

    fn trivial(&self) -> bool {
        self.info.is_identity()
    }

    fn a1(&self) -> &crate::base::TypeDomain {
        self.info.target()
    }

    fn a2(&self) -> &crate::base::TypeDomain {
        self.info.source()
    }

    fn signed(&self, s: Signature, upper: bool) -> SignedDomain {
        let a = if upper { self.a2() } else { self.a1() };
        SignedDomain::new(s, a.clone()).expect("signature over the fiber's sorts")
    }

    fn over_id(&self, m: &SignatureMorphism, upper: bool) -> DomMorphism {
        let a = if upper { self.a2() } else { self.a1() };
        DomMorphism::over_identity(m, a).expect("morphism in the fiber")
    }

    /// `ί_{S2} : ⟨S2, A2⟩ → ⟨Σ_f S2, A1⟩` with identity arity map.
    pub fn iota_acute(&self, s2: &Signature) -> DomMorphism {
        DomMorphism::new(
            self.signed(s2.clone(), true),
            self.signed(self.list.left_obj(s2), false),
            SetFn::identity(s2.arity()),
            self.info.clone(),
        )
        .expect("inclusion bridge component")
    }

    /// `ὶ_{S1} : ⟨f* S1, A2⟩ → ⟨S1, A1⟩` with `(i, x2) ↦ i`.
    pub fn iota_grave(&self, s1: &Signature) -> DomMorphism {
        DomMorphism::new(
            self.signed(self.list.right_obj(s1), true),
            self.signed(s1.clone(), false),
            self.list.first(s1),
            self.info.clone(),
        )
        .expect("inclusion bridge component")
    }

    /// `χ́_{T1} : T1 → tbĺ T1` in Tbl.
    pub fn chi_acute(&self, t1: &Table) -> TableMorphism {
        let lt = self.left_obj(t1);
        TableMorphism::new(t1.clone(), lt, self.iota_grave(t1.signature()), SetFn::identity(t1.keys()))
            .expect("inclusion bridge component")
    }

    /// `χ̀_{T2} : tbl̀ T2 → T2` in Tbl.
    pub fn chi_grave(&self, t2: &Table) -> TableMorphism {
        if self.trivial() {
            return TableMorphism::identity(t2);
        }
        let rt = self.right_obj(t2);
        let keys = SetFn::from_fn(rt.keys().clone(), t2.keys().clone(), |p| p.as_tuple().expect("pair")[0].clone())
            .expect("first projection");
        TableMorphism::new(rt, t2.clone(), self.iota_acute(t2.signature()), keys).expect("inclusion bridge component")
    }
}

impl Adjunction for TblFiberAdjunction {
    type Lower = TblA;
    type Upper = TblA;

    fn lower(&self) -> &TblA {
        &self.lower
    }

    fn upper(&self) -> &TblA {
        &self.upper
    }

    /// `tbĺ(T1) = ⟨f* S1, K1, κ ↦ ((i, x2) ↦ g(t1(κ)(i)))⟩`.
    fn left_obj(&self, t1: &Table) -> Table {
        if self.trivial() {
            return t1.clone();
        }
        let s = self.list.right_obj(t1.signature());
        let d = self.signed(s, true);
        let arity1 = t1.signature().arity();
        let rows = t1
            .rows()
            .iter()
            .map(|row| {
                let vals = row.as_tuple().expect("tuple");
                Elem::Tuple(
                    d.signature()
                        .arity()
                        .iter()
                        .map(|p| {
                            let i = &p.as_tuple().expect("pair")[0];
                            self.info.g().apply(&vals[arity1.index_of(i).expect("in arity")]).expect("in Y1").clone()
                        })
                        .collect(),
                )
            })
            .collect();
        Table::new_unchecked(d, t1.keys().clone(), rows)
    }

    fn left_mor(&self, m: &TableMorphism) -> TableMorphism {
        if self.trivial() {
            return m.clone();
        }
        let src = self.left_obj(m.source());
        let tgt = self.left_obj(m.target());
        let sm = self.list.right_mor(&m.dom().signature_morphism());
        TableMorphism::new_unchecked(src, tgt, self.over_id(&sm, true), m.keys().clone())
    }

    /// `tbl̀(T2) = ⟨Σ_f S2, K̀, (k2, t) ↦ t⟩` with
    /// `K̀ = { (k2, t) | t ∈ tup_{A1}(Σ_f S2), g ∘ t = t2(k2) }`.
    fn right_obj(&self, t2: &Table) -> Table {
        if self.trivial() {
            return t2.clone();
        }
        let s = self.list.left_obj(t2.signature());
        let d = self.signed(s, false);
        let mut keyed = Vec::new();
        for (k2, row) in t2.keys().iter().zip(t2.rows()) {
            let vals = row.as_tuple().expect("tuple");
            let choices: Vec<Vec<Elem>> = d
                .signature()
                .sort_fn()
                .images()
                .iter()
                .zip(vals)
                .map(|(x1, y2)| {
                    self.a1().extent(x1).iter().filter(|y1| self.info.g().apply(y1) == Some(y2)).cloned().collect()
                })
                .collect();
            for t in product_choices(&choices) {
                let t = Elem::Tuple(t);
                keyed.push((Elem::pair(k2.clone(), t.clone()), t));
            }
        }
        keyed.sort();
        let (keys, rows): (Vec<Elem>, Vec<Elem>) = keyed.into_iter().unzip();
        Table::new_unchecked(d, FinSet::new(keys), rows)
    }

    fn right_mor(&self, m: &TableMorphism) -> TableMorphism {
        if self.trivial() {
            return m.clone();
        }
        let src = self.right_obj(m.source());
        let tgt = self.right_obj(m.target());
        let sm = self.list.left_mor(&m.dom().signature_morphism());
        let dom = self.over_id(&sm, false);
        let keys = SetFn::from_fn(src.keys().clone(), tgt.keys().clone(), |p| {
            let v = p.as_tuple().expect("pair");
            Elem::pair(m.keys().apply(&v[0]).expect("key").clone(), dom.transport(&v[1]))
        })
        .expect("transported keys");
        TableMorphism::new_unchecked(src, tgt, dom, keys)
    }

    /// Arity part `(i, x2) ↦ i`, keys `κ ↦ (κ, t1(κ) ∘ that)`.
    fn unit(&self, t1: &Table) -> TableMorphism {
        if self.trivial() {
            return TableMorphism::identity(t1);
        }
        let tgt = self.right_obj(&self.left_obj(t1));
        let dom = self.over_id(&self.list.counit(t1.signature()), false);
        let keys = SetFn::from_fn(t1.keys().clone(), tgt.keys().clone(), |k| {
            Elem::pair(k.clone(), dom.transport(t1.tuple(k).expect("key")))
        })
        .expect("unit keys");
        TableMorphism::new_unchecked(t1.clone(), tgt, dom, keys)
    }

    /// Arity part `i2 ↦ (i2, s2(i2))`, keys `(k2, t) ↦ k2`.
    fn counit(&self, t2: &Table) -> TableMorphism {
        if self.trivial() {
            return TableMorphism::identity(t2);
        }
        let src = self.left_obj(&self.right_obj(t2));
        let dom = self.over_id(&self.list.unit(t2.signature()), true);
        let keys = SetFn::from_fn(src.keys().clone(), t2.keys().clone(), |p| p.as_tuple().expect("pair")[0].clone())
            .expect("counit keys");
        TableMorphism::new_unchecked(src, t2.clone(), dom, keys)
    }
}

/// `tbĺ : Tbl(A1) → Tbl(A2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TblAcute(pub TblFiberAdjunction);

impl Functor for TblAcute {
    type Src = TblA;
    type Tgt = TblA;

    fn target_category(&self) -> &TblA {
        &self.0.upper
    }

    fn on_obj(&self, x: &Table) -> Table {
        self.0.left_obj(x)
    }

    fn on_mor(&self, m: &TableMorphism) -> TableMorphism {
        self.0.left_mor(m)
    }
}

/// `tbl̀ : Tbl(A2) → Tbl(A1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TblGrave(pub TblFiberAdjunction);

impl Functor for TblGrave {
    type Src = TblA;
    type Tgt = TblA;

    fn target_category(&self) -> &TblA {
        &self.0.lower
    }

    fn on_obj(&self, x: &Table) -> Table {
        self.0.right_obj(x)
    }

    fn on_mor(&self, m: &TableMorphism) -> TableMorphism {
        self.0.right_mor(m)
    }
}

/// The tuple bridges `τ́` and `τ̀` along an infomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct TupAlong(TblFiberAdjunction);

impl TupAlong {
    /// `τ́_{S1} : tup_{A1}(S1) → tup_{A2}(f* S1)`, `t ↦ ((i, x2) ↦ g(t(i)))`.
    pub fn acute(&self, s1: &Signature) -> SetFn {
        let adj = &self.0;
        let d1 = adj.signed(s1.clone(), false);
        let d2 = adj.signed(adj.list.right_obj(s1), true);
        let first = adj.list.first(s1);
        SetFn::from_fn(d1.tup_set(), d2.tup_set(), |t| {
            Elem::Tuple(
                first
                    .images()
                    .iter()
                    .map(|i| adj.info.g().apply(d1.value_at(t, i).expect("attribute")).expect("value").clone())
                    .collect(),
            )
        })
        .expect("infomorphism keeps tuples sort-correct")
    }

    /// `τ̀_{S2} : tup_{A1}(Σ_f S2) → tup_{A2}(S2)`, `t ↦ g ∘ t`.
    pub fn grave(&self, s2: &Signature) -> SetFn {
        let adj = &self.0;
        let d1 = adj.signed(adj.list.left_obj(s2), false);
        let d2 = adj.signed(s2.clone(), true);
        SetFn::from_fn(d1.tup_set(), d2.tup_set(), |t| {
            Elem::Tuple(
                t.as_tuple()
                    .expect("tuple")
                    .iter()
                    .map(|y| adj.info.g().apply(y).expect("value").clone())
                    .collect(),
            )
        })
        .expect("infomorphism keeps tuples sort-correct")
    }
}

impl From<FoleError> for String {
    fn from(e: FoleError) -> String {
        e.to_string()
    }
}
