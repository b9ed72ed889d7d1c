//! Diagrams over a finite shape: schemas (signatures), schemed domains
//! (signed domains) and databases (tables), their morphisms, projections
//! and the levo/dextro presentations across a fiber adjunction.

mod database;
mod fixed;
mod lax;

use thiserror::Error;

use crate::base::{
    ClsCat, DomCat, DomMorphism, FoleError, Infomorphism, ListCat, Signature, SignatureMorphism, SignedDomain,
    TypeDomain,
};
use crate::elem::{FinSet, SetFn};
use crate::fincat::{CatError, Category, FinCategory, Functor, Passage, SetCat};

pub use database::{check_database_morphism, Database, DatabaseMorphism, MorphismReport};
pub use fixed::{FixedDbMorphism, FixedSchemedMorphism};
pub use lax::LaxMorphism;

/// A schema: a diagram of signatures over a shape.
pub type Schema = Passage<ListCat>;
pub type SchemaMorphism = LaxMorphism<ListCat>;
/// A schemed domain: a diagram of signed domains over a shape.
pub type SchemedDomain = Passage<DomCat>;
pub type SchemedMorphism = LaxMorphism<DomCat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Fole(#[from] FoleError),
    #[error("sort diagrams differ at objects {objects:?} and morphisms {morphisms:?}")]
    SortDiagramMismatch { objects: Vec<String>, morphisms: Vec<String> },
    #[error("component at {0} is typed in the lax direction; database bridges run T1(R r) → T2(r)")]
    LaxDirection(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("tuple bridge is not natural at {0:?}")]
    TupleBridgeNotNatural(Vec<String>),
}

/// `arity : List → Set`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ArityProjection<C>(pub C);

impl<C: Category<Obj = Signature, Mor = SignatureMorphism>> Functor for ArityProjection<C> {
    type Src = C;
    type Tgt = SetCat;

    fn target_category(&self) -> &SetCat {
        &SetCat
    }

    fn on_obj(&self, x: &Signature) -> FinSet {
        x.arity().clone()
    }

    fn on_mor(&self, m: &SignatureMorphism) -> SetFn {
        m.h().clone()
    }
}

/// `sort : List → Set`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SortProjection<C>(pub C);

impl<C: Category<Obj = Signature, Mor = SignatureMorphism>> Functor for SortProjection<C> {
    type Src = C;
    type Tgt = SetCat;

    fn target_category(&self) -> &SetCat {
        &SetCat
    }

    fn on_obj(&self, x: &Signature) -> FinSet {
        x.sort_set().clone()
    }

    fn on_mor(&self, m: &SignatureMorphism) -> SetFn {
        m.f().clone()
    }
}

/// `sign : Dom → List`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SignProjection;

impl Functor for SignProjection {
    type Src = DomCat;
    type Tgt = ListCat;

    fn target_category(&self) -> &ListCat {
        &ListCat
    }

    fn on_obj(&self, x: &SignedDomain) -> Signature {
        x.signature().clone()
    }

    fn on_mor(&self, m: &DomMorphism) -> SignatureMorphism {
        m.signature_morphism()
    }
}

/// `data : Dom → Cls`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DataProjection;

impl Functor for DataProjection {
    type Src = DomCat;
    type Tgt = ClsCat;

    fn target_category(&self) -> &ClsCat {
        &ClsCat
    }

    fn on_obj(&self, x: &SignedDomain) -> TypeDomain {
        x.type_domain().clone()
    }

    fn on_mor(&self, m: &DomMorphism) -> Infomorphism {
        m.info().clone()
    }
}

/// `sort : Cls → Set` (the sort function of an infomorphism runs forward).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClsSortProjection;

impl Functor for ClsSortProjection {
    type Src = ClsCat;
    type Tgt = SetCat;

    fn target_category(&self) -> &SetCat {
        &SetCat
    }

    fn on_obj(&self, x: &TypeDomain) -> FinSet {
        x.sorts().clone()
    }

    fn on_mor(&self, m: &Infomorphism) -> SetFn {
        m.f().clone()
    }
}

/// `aritẙ` and `sort̊` of a schema.
pub fn schema_projections(s: &Schema) -> (Passage<SetCat>, Passage<SetCat>) {
    (
        s.then(&ArityProjection(ListCat)).expect("projection is a functor"),
        s.then(&SortProjection(ListCat)).expect("projection is a functor"),
    )
}

/// `sign̊` and `datå` of a schemed domain.
pub fn schemed_domain_projections(q: &SchemedDomain) -> (Schema, Passage<ClsCat>) {
    (
        q.then(&SignProjection).expect("projection is a functor"),
        q.then(&DataProjection).expect("projection is a functor"),
    )
}

/// Rebuild a schemed domain from its signature and type-domain diagrams,
/// which must share the sort diagram on the nose.
pub fn reconstruct_schemed_domain(sign: &Schema, data: &Passage<ClsCat>) -> Result<SchemedDomain, DiagramError> {
    let shape = sign.source();
    if data.source() != shape {
        return Err(DiagramError::EndpointMismatch("diagrams over different shapes".into()));
    }
    let objects: Vec<String> = shape
        .objects()
        .filter(|x| sign.obj(*x).sort_set() != data.obj(*x).sorts())
        .map(|x| shape.obj_name(x).to_string())
        .collect();
    let morphisms: Vec<String> = shape
        .morphisms()
        .filter(|m| sign.mor(*m).f() != data.mor(*m).f())
        .map(|m| shape.mor_name(m).to_string())
        .collect();
    if !objects.is_empty() || !morphisms.is_empty() {
        return Err(DiagramError::SortDiagramMismatch { objects, morphisms });
    }
    let objs = shape
        .objects()
        .map(|x| SignedDomain::new(sign.obj(x).clone(), data.obj(x).clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let mors = shape
        .morphisms()
        .map(|m| {
            DomMorphism::new(
                objs[shape.src(m).0].clone(),
                objs[shape.tgt(m).0].clone(),
                sign.mor(m).h().clone(),
                data.mor(m).clone(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Passage::new(shape.clone(), DomCat, objs, mors)?)
}

/// A schemed domain over a single type domain: `r ↦ ⟨S(r), A⟩`.
pub fn schemed_over(schema: &Passage<crate::base::ListX>, a: &TypeDomain) -> Result<SchemedDomain, DiagramError> {
    let shape = schema.source();
    let objs = shape
        .objects()
        .map(|x| SignedDomain::new(schema.obj(x).clone(), a.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let mors = shape
        .morphisms()
        .map(|m| DomMorphism::over_identity(schema.mor(m), a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Passage::new(shape.clone(), DomCat, objs, mors)?)
}

pub(crate) fn shape_names(shape: &FinCategory, xs: impl IntoIterator<Item = crate::fincat::ObjId>) -> Vec<String> {
    xs.into_iter().map(|x| shape.obj_name(x).to_string()).collect()
}
