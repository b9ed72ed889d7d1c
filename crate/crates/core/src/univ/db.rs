use super::oracle::CxtCat;
use super::{LimitResult, UnivError};
use crate::base::{TableMorphism, TblA, TypeDomain};
use crate::diagrams::{Database, DatabaseMorphism};
use crate::fincat::{
    all_bridges, all_passages, compose_passages, coproduct_category, opposite, pullback_category, CatError, Category,
    Cone, ConeKind, Coproduct, FinCategory, Functor, HomSets, Passage, Pullback,
};

/// The discrete two-object diagram `1 ↦ db1`, `2 ↦ db2` in [`DbCat`].
fn pair_diagram(db1: &Database<TblA>, db2: &Database<TblA>) -> Passage<DbCat> {
    let cat = DbCat { domain: db1.tables().target().domain.clone() };
    let ids = vec![DatabaseMorphism::identity(db1), DatabaseMorphism::identity(db2)];
    Passage::new(FinCategory::discrete(["1", "2"]), cat, vec![db1.clone(), db2.clone()], ids).expect("discrete")
}

/// [`db_initial`] as the colimit of the empty diagram in [`DbCat`].
pub fn db_initial_universal(a: &TypeDomain) -> LimitResult<DbCat> {
    let cat = DbCat { domain: a.clone() };
    let d = Passage::new(FinCategory::empty(), cat, vec![], vec![]).expect("empty");
    let cone = Cone { kind: ConeKind::Colimit, vertex: db_initial(a), legs: vec![] };
    LimitResult::new(d, cone, |c: &Cone<DbCat>| Ok(initial_morphism(&c.vertex)))
}

/// The database over the empty shape.
pub fn db_initial(a: &TypeDomain) -> Database<TblA> {
    let empty = FinCategory::empty();
    let tables = Passage::new(opposite(&empty), TblA::new(a.clone()), vec![], vec![]).expect("empty passage");
    Database::new(empty, tables).expect("empty database")
}

/// The unique morphism out of [`db_initial`].
pub fn initial_morphism(target: &Database<TblA>) -> DatabaseMorphism<TblA> {
    let a = &target.tables().target().domain;
    let shape = Passage::new(FinCategory::empty(), target.shape().clone(), vec![], vec![]).expect("empty passage");
    DatabaseMorphism::new(db_initial(a), target.clone(), shape, vec![]).expect("no components")
}

fn identity_components(db: &Database<TblA>) -> Vec<TableMorphism> {
    db.shape().objects().map(|r| TableMorphism::identity(db.table(r))).collect()
}

/// Independent union of two databases over the coproduct shape.
#[derive(Debug, Clone)]
pub struct DbCoproduct {
    pub database: Database<TblA>,
    pub left: DatabaseMorphism<TblA>,
    pub right: DatabaseMorphism<TblA>,
    op: Coproduct,
}

impl DbCoproduct {
    /// `[m1, m2]`: copaired shapes, components taken from either side.
    pub fn copair(
        &self,
        m1: &DatabaseMorphism<TblA>,
        m2: &DatabaseMorphism<TblA>,
    ) -> Result<DatabaseMorphism<TblA>, UnivError> {
        if m1.source() != self.left.source() || m2.source() != self.right.source() || m1.target() != m2.target() {
            return Err(UnivError::NoMediator("morphisms do not start at the summands or end apart".into()));
        }
        let shape = self.op.copair(&m1.shape().opposite(), &m2.shape().opposite())?.opposite();
        let mut comps: Vec<Option<TableMorphism>> = vec![None; self.database.shape().n_objects()];
        for (inj, m) in [(&self.op.left, m1), (&self.op.right, m2)] {
            for r in inj.source().objects() {
                comps[inj.obj(r).0] = Some(m.component(r).clone());
            }
        }
        let comps = comps.into_iter().map(|c| c.expect("covered")).collect();
        Ok(DatabaseMorphism::new(self.database.clone(), m1.target().clone(), shape, comps)?)
    }

    /// As a colimiting cocone in [`DbCat`], mediated by [`DbCoproduct::copair`].
    pub fn universal(&self) -> LimitResult<DbCat> {
        let d = pair_diagram(self.left.source(), self.right.source());
        let cone = Cone { kind: ConeKind::Colimit, vertex: self.database.clone(), legs: vec![self.left.clone(), self.right.clone()] };
        let me = self.clone();
        LimitResult::new(d, cone, move |c: &Cone<DbCat>| me.copair(&c.legs[0], &c.legs[1]))
    }
}

pub fn db_coproduct(db1: &Database<TblA>, db2: &Database<TblA>) -> Result<DbCoproduct, UnivError> {
    if db1.tables().target() != db2.tables().target() {
        return Err(UnivError::UnsupportedVaryingTypeDomains);
    }
    let op = coproduct_category(&opposite(db1.shape()), &opposite(db2.shape()));
    let tables = op.copair(db1.tables(), db2.tables())?;
    let shape = opposite(&op.category);
    let database = Database::new(shape, tables)?;
    let left = DatabaseMorphism::new(db1.clone(), database.clone(), op.left.opposite(), identity_components(db1))?;
    let right = DatabaseMorphism::new(db2.clone(), database.clone(), op.right.opposite(), identity_components(db2))?;
    Ok(DbCoproduct { database, left, right, op })
}

/// The database over the pullback of the two table diagrams: objects are
/// pairs of shape objects carrying the same table.
///
/// Pairing exists only for morphisms whose shape passages agree over the
/// tables and whose components coincide.
#[derive(Debug, Clone)]
pub struct DbProduct {
    pub database: Database<TblA>,
    pub left: DatabaseMorphism<TblA>,
    pub right: DatabaseMorphism<TblA>,
    pb: Pullback,
}

impl DbProduct {
    pub fn pair(
        &self,
        m1: &DatabaseMorphism<TblA>,
        m2: &DatabaseMorphism<TblA>,
    ) -> Result<DatabaseMorphism<TblA>, UnivError> {
        if m1.target() != self.left.target() || m2.target() != self.right.target() || m1.source() != m2.source() {
            return Err(UnivError::NoMediator("morphisms do not end at the factors or start apart".into()));
        }
        let shape = self
            .pb
            .pair(&m1.shape().opposite(), &m2.shape().opposite())
            .ok_or_else(|| UnivError::NoMediator("shape passages disagree over the tables".into()))?
            .opposite();
        if m1.bridge().components() != m2.bridge().components() {
            return Err(UnivError::NoMediator("components differ".into()));
        }
        Ok(DatabaseMorphism::new(
            m1.source().clone(),
            self.database.clone(),
            shape,
            m1.bridge().components().to_vec(),
        )?)
    }

    /// As a limiting cone in [`DbCat`], mediated by [`DbProduct::pair`].
    pub fn universal(&self) -> LimitResult<DbCat> {
        let d = pair_diagram(self.left.target(), self.right.target());
        let cone = Cone { kind: ConeKind::Limit, vertex: self.database.clone(), legs: vec![self.left.clone(), self.right.clone()] };
        let me = self.clone();
        LimitResult::new(d, cone, move |c: &Cone<DbCat>| me.pair(&c.legs[0], &c.legs[1]))
    }
}

pub fn db_product(db1: &Database<TblA>, db2: &Database<TblA>) -> Result<DbProduct, UnivError> {
    if db1.tables().target() != db2.tables().target() {
        return Err(UnivError::UnsupportedVaryingTypeDomains);
    }
    let pb = pullback_category(db1.tables(), db2.tables())?;
    let tables = compose_passages(&pb.left, db1.tables())?;
    let database = Database::new(opposite(&pb.category), tables)?;
    let left = DatabaseMorphism::new(database.clone(), db1.clone(), pb.left.opposite(), identity_components(&database))?;
    let right =
        DatabaseMorphism::new(database.clone(), db2.clone(), pb.right.opposite(), identity_components(&database))?;
    Ok(DbProduct { database, left, right, pb })
}

/// Every database morphism between two fixed-A databases: all shape
/// passages, then all natural families of table morphisms.
pub fn all_database_morphisms(
    source: &Database<TblA>,
    target: &Database<TblA>,
) -> Result<Vec<DatabaseMorphism<TblA>>, UnivError> {
    let mut out = Vec::new();
    for r in all_passages(source.shape(), target.shape()) {
        let pulled = compose_passages(&r.opposite(), target.tables())?;
        for b in all_bridges(&pulled, source.tables())? {
            out.push(DatabaseMorphism::new(source.clone(), target.clone(), r.clone(), b.components().to_vec())?);
        }
    }
    Ok(out)
}

/// Fixed-A databases and their morphisms, with exhaustive hom-sets.
#[derive(Debug, Clone, PartialEq)]
pub struct DbCat {
    pub domain: TypeDomain,
}

impl Category for DbCat {
    type Obj = Database<TblA>;
    type Mor = DatabaseMorphism<TblA>;

    fn source(&self, m: &Self::Mor) -> Self::Obj {
        m.source().clone()
    }

    fn target(&self, m: &Self::Mor) -> Self::Obj {
        m.target().clone()
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        DatabaseMorphism::identity(x)
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        f.then(g).ok()
    }
}

impl HomSets for DbCat {
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>, CatError> {
        all_database_morphisms(a, b).map_err(|e| CatError::HomEnumerationUnavailable(e.to_string()))
    }
}

/// `⟨R, T⟩ ↦ R`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeProjection(pub DbCat);

impl Functor for ShapeProjection {
    type Src = DbCat;
    type Tgt = CxtCat;

    fn target_category(&self) -> &CxtCat {
        &CxtCat
    }

    fn on_obj(&self, x: &Database<TblA>) -> FinCategory {
        x.shape().clone()
    }

    fn on_mor(&self, m: &DatabaseMorphism<TblA>) -> Passage<FinCategory> {
        m.shape().clone()
    }
}
