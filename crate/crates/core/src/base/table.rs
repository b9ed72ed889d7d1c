use std::fmt;

use super::{FoleError, Infomorphism, Signature, SignatureMorphism, TypeDomain};
use crate::elem::{product_choices, Elem, FinSet, SetFn};
use crate::fincat::{CatError, Category, Functor, HomSets, SetCat};

/// A signature paired with a type domain over the same sort set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedDomain {
    signature: Signature,
    domain: TypeDomain,
}

impl SignedDomain {
    pub fn new(signature: Signature, domain: TypeDomain) -> Result<Self, FoleError> {
        if signature.sort_set() != domain.sorts() {
            return Err(FoleError::SortSetMismatch(format!(
                "signature sorts {:?} vs type domain sorts {:?}",
                signature.sort_set(),
                domain.sorts()
            )));
        }
        Ok(SignedDomain { signature, domain })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn type_domain(&self) -> &TypeDomain {
        &self.domain
    }

    /// Whether `t` is a sort-correct tuple: a value per attribute (aligned
    /// with the sorted arity) classified by the attribute's sort.
    pub fn contains_tuple(&self, t: &Elem) -> bool {
        let Some(vals) = t.as_tuple() else { return false };
        vals.len() == self.signature.arity().len()
            && self
                .signature
                .sort_fn()
                .images()
                .iter()
                .zip(vals)
                .all(|(x, y)| self.domain.satisfies(y, x))
    }

    /// `tup(D) = { t : I → Y | t(i) ⊨ s(i) }` in canonical order.
    pub fn tup_set(&self) -> FinSet {
        let choices: Vec<Vec<Elem>> = self
            .signature
            .sort_fn()
            .images()
            .iter()
            .map(|x| self.domain.extent(x).as_slice().to_vec())
            .collect();
        product_choices(&choices).into_iter().map(Elem::Tuple).collect()
    }

    /// The component of `t` at attribute `attr`.
    pub fn value_at<'a>(&self, t: &'a Elem, attr: &Elem) -> Option<&'a Elem> {
        let i = self.signature.arity().index_of(attr)?;
        t.as_tuple()?.get(i)
    }
}

/// A signed domain morphism `D2 → D1`: a signature morphism `⟨h, f⟩ : S2 → S1`
/// together with an infomorphism `⟨f, g⟩ : A2 ⇄ A1` sharing the sort map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DomMorphism {
    source: SignedDomain,
    target: SignedDomain,
    h: SetFn,
    info: Infomorphism,
}

impl DomMorphism {
    pub fn new(source: SignedDomain, target: SignedDomain, h: SetFn, info: Infomorphism) -> Result<Self, FoleError> {
        if info.source() != &source.domain || info.target() != &target.domain {
            return Err(FoleError::EndpointMismatch("infomorphism must run A2 → A1".into()));
        }
        SignatureMorphism::new(source.signature.clone(), target.signature.clone(), h.clone(), info.f().clone())?;
        Ok(DomMorphism { source, target, h, info })
    }

    /// A morphism over the identity infomorphism of `a`.
    pub fn over_identity(m: &SignatureMorphism, a: &TypeDomain) -> Result<Self, FoleError> {
        DomMorphism::new(
            SignedDomain::new(m.source().clone(), a.clone())?,
            SignedDomain::new(m.target().clone(), a.clone())?,
            m.h().clone(),
            Infomorphism::identity(a),
        )
    }

    pub fn identity(d: &SignedDomain) -> Self {
        DomMorphism {
            source: d.clone(),
            target: d.clone(),
            h: SetFn::identity(d.signature.arity()),
            info: Infomorphism::identity(&d.domain),
        }
    }

    pub fn source(&self) -> &SignedDomain {
        &self.source
    }

    pub fn target(&self) -> &SignedDomain {
        &self.target
    }

    pub fn h(&self) -> &SetFn {
        &self.h
    }

    pub fn info(&self) -> &Infomorphism {
        &self.info
    }

    pub fn signature_morphism(&self) -> SignatureMorphism {
        SignatureMorphism::new_unchecked(
            self.source.signature.clone(),
            self.target.signature.clone(),
            self.h.clone(),
            self.info.f().clone(),
        )
    }

    /// Diagrammatic composite `D3 → D2 → D1`.
    pub fn then(&self, next: &DomMorphism) -> Option<DomMorphism> {
        if self.target != next.source {
            return None;
        }
        Some(DomMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            h: self.h.then(&next.h).ok()?,
            info: self.info.then(&next.info)?,
        })
    }

    /// `tup(m)` at one tuple: `t1 ↦ (i2 ↦ g(t1(h(i2))))`.
    pub fn transport(&self, t1: &Elem) -> Elem {
        let vals = t1.as_tuple().expect("tuple");
        let arity1 = self.target.signature.arity();
        Elem::Tuple(
            self.h
                .images()
                .iter()
                .map(|hi| {
                    let y1 = &vals[arity1.index_of(hi).expect("in arity")];
                    self.info.g().apply(y1).expect("value in Y1").clone()
                })
                .collect(),
        )
    }

    /// `tup(m) : tup(D1) → tup(D2)`.
    pub fn tup_fn(&self) -> SetFn {
        let cod = self.source.tup_set();
        SetFn::from_fn(self.target.tup_set(), cod, |t| self.transport(t)).expect("infomorphism keeps tuples sort-correct")
    }
}

/// Signed domains and their morphisms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DomCat;

impl Category for DomCat {
    type Obj = SignedDomain;
    type Mor = DomMorphism;

    fn source(&self, m: &DomMorphism) -> SignedDomain {
        m.source.clone()
    }

    fn target(&self, m: &DomMorphism) -> SignedDomain {
        m.target.clone()
    }

    fn identity(&self, x: &SignedDomain) -> DomMorphism {
        DomMorphism::identity(x)
    }

    fn compose(&self, f: &DomMorphism, g: &DomMorphism) -> Option<DomMorphism> {
        f.then(g)
    }
}

/// A table `⟨D, K, t⟩`: a signed domain, a key set and a row per key.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Table {
    domain: SignedDomain,
    keys: FinSet,
    rows: Vec<Elem>,
}

impl Table {
    pub fn new(
        domain: SignedDomain,
        keys: FinSet,
        rows: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, FoleError> {
        let mut slots: Vec<Option<Elem>> = vec![None; keys.len()];
        for (k, t) in rows {
            let i = keys.index_of(&k).ok_or_else(|| FoleError::TupleNotInDomain { key: k.clone() })?;
            if !domain.contains_tuple(&t) {
                return Err(FoleError::TupleNotInDomain { key: k });
            }
            slots[i] = Some(t);
        }
        let rows = slots
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| crate::elem::SetError::NotTotal(keys.get(i).clone()).into()))
            .collect::<Result<_, FoleError>>()?;
        Ok(Table { domain, keys, rows })
    }

    /// Rows given as attribute/value pairs.
    pub fn from_records(
        domain: SignedDomain,
        records: impl IntoIterator<Item = (Elem, Vec<(Elem, Elem)>)>,
    ) -> Result<Self, FoleError> {
        let arity = domain.signature().arity().clone();
        let mut keys = Vec::new();
        let mut rows = Vec::new();
        for (k, pairs) in records {
            let f = SetFn::from_pairs(arity.clone(), domain.type_domain().values().clone(), pairs)
                .map_err(|_| FoleError::TupleNotInDomain { key: k.clone() })?;
            keys.push(k.clone());
            rows.push((k, Elem::Tuple(f.images().to_vec())));
        }
        Table::new(domain, keys.into_iter().collect(), rows)
    }

    pub(crate) fn new_unchecked(domain: SignedDomain, keys: FinSet, rows: Vec<Elem>) -> Self {
        debug_assert_eq!(keys.len(), rows.len());
        Table { domain, keys, rows }
    }

    /// Empty signature, one key, the empty tuple.
    pub fn terminal(a: &TypeDomain) -> Self {
        let d = SignedDomain::new(Signature::empty(a.sorts()), a.clone()).expect("same sorts");
        Table { domain: d, keys: FinSet::singleton(Elem::tuple([])), rows: vec![Elem::tuple([])] }
    }

    pub fn domain(&self) -> &SignedDomain {
        &self.domain
    }

    pub fn signature(&self) -> &Signature {
        &self.domain.signature
    }

    pub fn type_domain(&self) -> &TypeDomain {
        &self.domain.domain
    }

    pub fn keys(&self) -> &FinSet {
        &self.keys
    }

    pub fn rows(&self) -> &[Elem] {
        &self.rows
    }

    pub fn tuple(&self, key: &Elem) -> Option<&Elem> {
        self.keys.index_of(key).map(|i| &self.rows[i])
    }

    /// `t : K → tup(D)`.
    pub fn tuple_map(&self) -> SetFn {
        SetFn::from_images_unchecked(self.keys.clone(), self.domain.tup_set(), self.rows.clone())
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Table")
            .field("signature", self.signature())
            .field("rows", &self.keys.iter().zip(&self.rows).collect::<Vec<_>>())
            .finish()
    }
}

/// A table morphism from `T1` to `T2`: a signed domain morphism
/// `D2 → D1` and a key function `k: K1 → K2` with
/// `t2(k(κ)) = tup(dom)(t1(κ))` for every key `κ` of `T1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TableMorphism {
    source: Table,
    target: Table,
    dom: DomMorphism,
    keys: SetFn,
}

impl TableMorphism {
    pub fn new(source: Table, target: Table, dom: DomMorphism, keys: SetFn) -> Result<Self, FoleError> {
        if dom.source != target.domain || dom.target != source.domain {
            return Err(FoleError::EndpointMismatch("signed domain part must run D2 → D1".into()));
        }
        if keys.dom() != &source.keys || keys.cod() != &target.keys {
            return Err(FoleError::EndpointMismatch("key function must run K1 → K2".into()));
        }
        let m = TableMorphism { source, target, dom, keys };
        if let Some(key) = m.violations().into_iter().next() {
            return Err(FoleError::TableMorphismCondition { key });
        }
        Ok(m)
    }

    /// A morphism over the identity infomorphism, from an arity map
    /// `h: I2 → I1` and a key map.
    pub fn fixed(source: Table, target: Table, h: SetFn, keys: SetFn) -> Result<Self, FoleError> {
        if source.type_domain() != target.type_domain() {
            return Err(FoleError::EndpointMismatch("tables over different type domains".into()));
        }
        let a = source.type_domain().clone();
        let sm = SignatureMorphism::in_list_x(target.signature().clone(), source.signature().clone(), h)?;
        let dom = DomMorphism::over_identity(&sm, &a)?;
        TableMorphism::new(source, target, dom, keys)
    }

    /// Skips the morphism condition (endpoints are trusted too). Used to
    /// load inputs that are then reported on; see [`TableMorphism::violations`].
    pub fn new_unchecked(source: Table, target: Table, dom: DomMorphism, keys: SetFn) -> Self {
        TableMorphism { source, target, dom, keys }
    }

    /// Keys of the source where the morphism condition fails.
    pub fn violations(&self) -> Vec<Elem> {
        self.source
            .keys
            .iter()
            .zip(&self.source.rows)
            .filter(|(k, t1)| {
                let k2 = self.keys.apply(k).expect("total");
                self.target.tuple(k2) != Some(&self.dom.transport(t1))
            })
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn identity(t: &Table) -> Self {
        TableMorphism {
            source: t.clone(),
            target: t.clone(),
            dom: DomMorphism::identity(&t.domain),
            keys: SetFn::identity(&t.keys),
        }
    }

    pub fn source(&self) -> &Table {
        &self.source
    }

    pub fn target(&self) -> &Table {
        &self.target
    }

    /// The signed domain part `D2 → D1`.
    pub fn dom(&self) -> &DomMorphism {
        &self.dom
    }

    /// The key function `K1 → K2`.
    pub fn keys(&self) -> &SetFn {
        &self.keys
    }

    /// The arity map `h: I2 → I1`.
    pub fn h(&self) -> &SetFn {
        &self.dom.h
    }

    pub fn is_over_identity(&self) -> bool {
        self.dom.info.is_identity()
    }

    /// Diagrammatic composite `T1 → T2 → T3`: keys compose forward, the
    /// signed domain parts in reverse.
    pub fn then(&self, next: &TableMorphism) -> Option<TableMorphism> {
        if self.target != next.source {
            return None;
        }
        Some(TableMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            dom: next.dom.then(&self.dom)?,
            keys: self.keys.then(&next.keys).ok()?,
        })
    }
}

/// Tables over a fixed type domain `A`, with morphisms over `id_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TblA {
    pub domain: TypeDomain,
}

impl TblA {
    pub fn new(domain: TypeDomain) -> Self {
        TblA { domain }
    }
}

fn tbl_compose(f: &TableMorphism, g: &TableMorphism) -> Option<TableMorphism> {
    f.then(g)
}

impl Category for TblA {
    type Obj = Table;
    type Mor = TableMorphism;

    fn source(&self, m: &TableMorphism) -> Table {
        m.source.clone()
    }

    fn target(&self, m: &TableMorphism) -> Table {
        m.target.clone()
    }

    fn identity(&self, x: &Table) -> TableMorphism {
        TableMorphism::identity(x)
    }

    fn compose(&self, f: &TableMorphism, g: &TableMorphism) -> Option<TableMorphism> {
        tbl_compose(f, g)
    }

    fn validate_object(&self, x: &Table) -> Result<(), String> {
        if x.type_domain() != &self.domain {
            return Err("table over a different type domain".into());
        }
        Ok(())
    }

    fn validate_morphism(&self, m: &TableMorphism) -> Result<(), String> {
        self.validate_object(&m.source)?;
        self.validate_object(&m.target)?;
        if !m.is_over_identity() {
            return Err(FoleError::NotOverIdentity.to_string());
        }
        TblCat.validate_morphism(m)
    }
}

impl HomSets for TblA {
    fn hom(&self, a: &Table, b: &Table) -> Result<Vec<TableMorphism>, CatError> {
        let list = super::ListX::new(self.domain.sorts().clone());
        let mut out = Vec::new();
        for sm in list.hom(b.signature(), a.signature())? {
            let dom = DomMorphism {
                source: b.domain.clone(),
                target: a.domain.clone(),
                h: sm.h().clone(),
                info: Infomorphism::identity(&self.domain),
            };
            // Per source key, the target keys whose row matches.
            let choices: Vec<Vec<Elem>> = a
                .rows
                .iter()
                .map(|t1| {
                    let want = dom.transport(t1);
                    b.keys.iter().zip(&b.rows).filter(|(_, t2)| **t2 == want).map(|(k, _)| k.clone()).collect()
                })
                .collect();
            let total: f64 = choices.iter().map(|c| c.len() as f64).product();
            if total > crate::fincat::MAX_HOM_ENUMERATION as f64 {
                return Err(CatError::HomEnumerationUnavailable(format!("{total} key maps")));
            }
            for images in product_choices(&choices) {
                let keys = SetFn::from_images_unchecked(a.keys.clone(), b.keys.clone(), images);
                out.push(TableMorphism::new_unchecked(a.clone(), b.clone(), dom.clone(), keys));
            }
        }
        Ok(out)
    }
}

/// Tables over any type domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TblCat;

impl Category for TblCat {
    type Obj = Table;
    type Mor = TableMorphism;

    fn source(&self, m: &TableMorphism) -> Table {
        m.source.clone()
    }

    fn target(&self, m: &TableMorphism) -> Table {
        m.target.clone()
    }

    fn identity(&self, x: &Table) -> TableMorphism {
        TableMorphism::identity(x)
    }

    fn compose(&self, f: &TableMorphism, g: &TableMorphism) -> Option<TableMorphism> {
        tbl_compose(f, g)
    }

    fn validate_morphism(&self, m: &TableMorphism) -> Result<(), String> {
        TableMorphism::new(m.source.clone(), m.target.clone(), m.dom.clone(), m.keys.clone())
            .map(|_| ())
            .map_err(|e| e.to_string())
    }
}

/// `key : Tbl → Set`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KeyProjection<C>(pub C);

impl<C: Category<Obj = Table, Mor = TableMorphism>> Functor for KeyProjection<C> {
    type Src = C;
    type Tgt = SetCat;

    fn target_category(&self) -> &SetCat {
        &SetCat
    }

    fn on_obj(&self, x: &Table) -> FinSet {
        x.keys.clone()
    }

    fn on_mor(&self, m: &TableMorphism) -> SetFn {
        m.keys.clone()
    }
}
