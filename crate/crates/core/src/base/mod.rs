//! Classifications, signatures, signed domains and tables, with the fiber
//! adjunctions that transport them along sort functions and infomorphisms.

mod adjunction;
mod signature;
mod table;
mod typedom;

use thiserror::Error;

use crate::elem::{Elem, SetError};
use crate::fincat::CatError;

pub use adjunction::{
    check_hom_bijection, Adjunction, AdjunctionWitness, FStar, ListFiberAdjunction, SigmaF, TblAcute, TblFiberAdjunction, TblGrave,
    TupAlong,
};
pub use signature::{ListCat, ListX, Signature, SignatureMorphism};
pub use table::{DomCat, DomMorphism, KeyProjection, SignedDomain, Table, TableMorphism, TblA, TblCat};
pub use typedom::{ClsCat, Infomorphism, TypeDomain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoleError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("incidence pair ({value}, {sort}) mentions an undeclared value or sort")]
    IncidenceOutOfRange { value: Elem, sort: Elem },
    #[error("infomorphism condition fails at value {value} and sort {sort}")]
    InfomorphismViolation { value: Elem, sort: Elem },
    #[error("sort condition fails at attribute {0}")]
    SortConditionViolation(Elem),
    #[error("sort sets differ: {0}")]
    SortSetMismatch(String),
    #[error("row of key {key} is not a tuple of the signed domain")]
    TupleNotInDomain { key: Elem },
    #[error("table morphism condition fails at key {key}")]
    TableMorphismCondition { key: Elem },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("expected a morphism over the identity infomorphism")]
    NotOverIdentity,
}
