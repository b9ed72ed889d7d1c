//! Universal constructions: (co)limits in Set, List(X), List and Tbl(A),
//! joins and sums of databases, the initial/coproduct/product databases,
//! Kan extensions, Grothendieck constructions, and brute-force oracles
//! that check all of them against their universal properties.

mod db;
mod groth;
mod kan;
mod list;
mod oracle;
mod set;
mod tbl;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::base::FoleError;
use crate::diagrams::DiagramError;
use crate::elem::Elem;
use crate::fincat::{CatError, Category, Cone, ConeKind, HomSets, Passage};

pub use db::{
    all_database_morphisms, db_coproduct, db_initial, db_initial_universal, db_product, initial_morphism, DbCat, DbCoproduct, DbProduct,
    ShapeProjection,
};
pub use groth::{
    finite_model, groth_structured_colimit, groth_structured_limit, grothendieck, Convention, FiniteModel,
    GrothendieckTotal, IndexedAdjunction,
};
pub use kan::{kan_adjunction, lan, natural_iso, ran, KanExtension, LeftKan, RightKan, SetFunctors};
pub use list::{colimit_in_list, colimit_in_listx, limit_in_listx};
pub use oracle::{check_continuity, oracle_universal, oracle_universal_fin, oracle_universal_with, ContinuityReport, CxtCat};
pub use set::{colimit_in_set, limit_in_set};
pub use tbl::{
    colim_passage_on_schema_morphism, colimit_tbl, join_general, lim_passage_on_morphism, limit_tbl,
    signature_diagram, sum_general,
};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnivError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Fole(#[from] FoleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("attributes identified in the colimit carry different sorts (class of {0})")]
    SortGluingConflict(Elem),
    #[error("rows glued into the sum disagree at key class {key}")]
    TupleGluingInconsistent { key: Elem },
    #[error("join/sum of a database whose tables vary over type domains is not supported")]
    UnsupportedVaryingTypeDomains,
    #[error("no mediating morphism: {0}")]
    NoMediator(String),
    #[error("{0} morphisms factor the candidate; expected exactly one")]
    NonUniqueMediator(usize),
    #[error("indexed assignment is not strictly functorial: {0}")]
    StrictnessViolation(String),
    #[error("fiber has no required (co)limit: {0}")]
    FiberNotCocomplete(String),
    #[error("no universal cone among the candidates")]
    NoUniversalCone,
    #[error("universal cones found that are not isomorphic")]
    NonIsomorphicUniversalCones,
}

type Mediator<T> = dyn Fn(&Cone<T>) -> Result<<T as Category>::Mor, UnivError> + Send + Sync;

/// A universal cone (or cocone) over a diagram together with the
/// procedure that factors any other cone through it.
#[derive(Clone)]
pub struct LimitResult<T: Category> {
    pub diagram: Passage<T>,
    pub cone: Cone<T>,
    mediator: Arc<Mediator<T>>,
}

impl<T: Category> fmt::Debug for LimitResult<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LimitResult").field("cone", &self.cone).finish_non_exhaustive()
    }
}

impl<T: Category + 'static> LimitResult<T> {
    pub fn new(
        diagram: Passage<T>,
        cone: Cone<T>,
        mediator: impl Fn(&Cone<T>) -> Result<T::Mor, UnivError> + Send + Sync + 'static,
    ) -> Self {
        LimitResult { diagram, cone, mediator: Arc::new(mediator) }
    }

    pub fn kind(&self) -> ConeKind {
        self.cone.kind
    }

    pub fn vertex(&self) -> &T::Obj {
        &self.cone.vertex
    }

    pub fn legs(&self) -> &[T::Mor] {
        &self.cone.legs
    }

    /// The mediating morphism for `candidate`, checked to factor it.
    pub fn mediate(&self, candidate: &Cone<T>) -> Result<T::Mor, UnivError> {
        if candidate.kind != self.cone.kind {
            return Err(UnivError::NoMediator("candidate has the other variance".into()));
        }
        candidate.check_over(&self.diagram).map_err(|e| UnivError::NoMediator(e.to_string()))?;
        let m = (self.mediator)(candidate)?;
        if !candidate.factors_through(self.diagram.target(), &self.cone, &m) {
            return Err(UnivError::NoMediator("computed morphism does not factor the candidate".into()));
        }
        Ok(m)
    }
}

impl<T: HomSets + 'static> LimitResult<T> {
    /// Mediator exists, factors, and is the only morphism that does,
    /// by exhaustive search of the relevant hom-set.
    pub fn check_universal_for(&self, candidate: &Cone<T>) -> Result<T::Mor, UnivError> {
        let m = self.mediate(candidate)?;
        let cat = self.diagram.target();
        let homs = match self.cone.kind {
            ConeKind::Limit => cat.hom(&candidate.vertex, &self.cone.vertex)?,
            ConeKind::Colimit => cat.hom(&self.cone.vertex, &candidate.vertex)?,
        };
        let n = homs.iter().filter(|h| candidate.factors_through(cat, &self.cone, h)).count();
        if n != 1 {
            return Err(UnivError::NonUniqueMediator(n));
        }
        Ok(m)
    }
}
