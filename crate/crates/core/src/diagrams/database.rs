use super::{shape_names, DiagramError, SchemedDomain};
use crate::base::{DomCat, KeyProjection, Table, TableMorphism, TblCat};
use crate::elem::Elem;
use crate::fincat::{compose_passages, opposite, Bridge, Category, FinCategory, MorId, ObjId, Passage, SetCat};

/// A database `⟨R, T⟩`: a shape `R` and a diagram `T : R^op → Tbl`
/// (or `Tbl(A)`). For `r: a → b` in `R`, `T(r)` is a table morphism
/// `T(b) → T(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Database<C: Category<Obj = Table, Mor = TableMorphism>> {
    shape: FinCategory,
    tables: Passage<C>,
}

impl<C: Category<Obj = Table, Mor = TableMorphism>> Database<C> {
    /// Checked: `tables` must be a functor out of `shape^op`.
    pub fn new(shape: FinCategory, tables: Passage<C>) -> Result<Self, DiagramError> {
        let db = Database::new_unchecked(shape, tables)?;
        db.tables.validate()?;
        Ok(db)
    }

    /// Only the shapes are checked. Arrow images may violate the table
    /// morphism condition; see [`Database::arrow_violations`].
    pub fn new_unchecked(shape: FinCategory, tables: Passage<C>) -> Result<Self, DiagramError> {
        if tables.source() != &opposite(&shape) {
            return Err(DiagramError::EndpointMismatch("table diagram must be indexed by the opposite shape".into()));
        }
        Ok(Database { shape, tables })
    }

    /// From per-object tables and the images `(h, k)` of some shape
    /// morphisms. For `r: a → b`, `h: I_a → I_b` and `k: K_b → K_a`.
    /// Identities and composites are derived.
    pub fn from_arrows(
        target: C,
        shape: FinCategory,
        tables: Vec<Table>,
        arrows: Vec<(MorId, TableMorphism)>,
        check: bool,
    ) -> Result<Self, DiagramError> {
        let op = opposite(&shape);
        let tables = Passage::from_generators(op, target, tables, arrows, check)?;
        if check {
            Database::new(shape, tables)
        } else {
            Database::new_unchecked(shape, tables)
        }
    }

    pub fn shape(&self) -> &FinCategory {
        &self.shape
    }

    pub fn tables(&self) -> &Passage<C> {
        &self.tables
    }

    pub fn table(&self, r: ObjId) -> &Table {
        self.tables.obj(r)
    }

    /// `T(r) : T(b) → T(a)` for `r: a → b`.
    pub fn arrow(&self, r: MorId) -> &TableMorphism {
        self.tables.mor(r)
    }

    /// Same diagram viewed in the general context of tables.
    pub fn to_general(&self) -> Database<TblCat> {
        Database {
            shape: self.shape.clone(),
            tables: Passage::new_unchecked(
                self.tables.source().clone(),
                TblCat,
                self.tables.object_images().to_vec(),
                self.tables.morphism_images().to_vec(),
            )
            .expect("sizes match"),
        }
    }

    /// `dom̊ = ⟨R, T^op ; dom⟩`.
    pub fn schemed_domain(&self) -> SchemedDomain {
        Passage::new_unchecked(
            self.shape.clone(),
            DomCat,
            self.tables.object_images().iter().map(|t| t.domain().clone()).collect(),
            self.tables.morphism_images().iter().map(|m| m.dom().clone()).collect(),
        )
        .expect("sizes match")
    }

    /// `keẙ = ⟨R, T ; key⟩` as a diagram `R^op → Set`.
    pub fn key_diagram(&self) -> Passage<SetCat> {
        self.tables.then(&KeyProjection(self.tables.target().clone())).expect("key projection is a functor")
    }

    /// `r ↦ tup(D_r)` as a diagram `R^op → Set`.
    pub fn tuple_diagram(&self) -> Passage<SetCat> {
        Passage::new_unchecked(
            self.tables.source().clone(),
            SetCat,
            self.tables.object_images().iter().map(|t| t.domain().tup_set()).collect(),
            self.tables.morphism_images().iter().map(|m| m.dom().tup_fn()).collect(),
        )
        .expect("sizes match")
    }

    /// The tuple bridge `τ : keẙ ⇒ dom̊^op ; tup`, component `t_r` at `r`.
    /// Fails, naming the offending shape morphisms, when it is not natural.
    pub fn tuple_bridge(&self) -> Result<Bridge<SetCat>, DiagramError> {
        let comps = self.tables.object_images().iter().map(|t| t.tuple_map()).collect();
        let b = Bridge::new_unchecked(self.key_diagram(), self.tuple_diagram(), comps)?;
        let bad = b.non_natural_morphisms();
        if bad.is_empty() {
            Ok(b)
        } else {
            Err(DiagramError::TupleBridgeNotNatural(bad.iter().map(|m| self.shape.mor_name(*m).to_string()).collect()))
        }
    }

    /// Shape morphisms whose images violate the table morphism condition,
    /// computed pointwise without enumerating tuple sets.
    pub fn arrow_violations(&self) -> Vec<String> {
        self.shape
            .morphisms()
            .filter(|m| !self.tables.mor(*m).violations().is_empty())
            .map(|m| self.shape.mor_name(m).to_string())
            .collect()
    }
}

/// A database morphism from `⟨R2, T2⟩` to `⟨R1, T1⟩`: a shape passage
/// `R : R2 → R1` and a bridge `ξ : R^op ; T1 ⇒ T2` with components
/// `ξ_r : T1(R r) → T2(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DatabaseMorphism<C: Category<Obj = Table, Mor = TableMorphism>> {
    source: Database<C>,
    target: Database<C>,
    shape: Passage<FinCategory>,
    bridge: Bridge<C>,
}

impl<C: Category<Obj = Table, Mor = TableMorphism>> DatabaseMorphism<C> {
    /// Checks shapes, component endpoints and their direction. Naturality
    /// and the projection condition are reported by
    /// [`check_database_morphism`].
    pub fn new(
        source: Database<C>,
        target: Database<C>,
        shape: Passage<FinCategory>,
        components: Vec<TableMorphism>,
    ) -> Result<Self, DiagramError> {
        if shape.source() != &source.shape || shape.target() != &target.shape {
            return Err(DiagramError::EndpointMismatch("shape passage does not join the two shapes".into()));
        }
        let r2 = &source.shape;
        if components.len() != r2.n_objects() {
            return Err(DiagramError::EndpointMismatch("one component per source shape object".into()));
        }
        for x in r2.objects() {
            let c = &components[x.0];
            let t1 = target.table(*shape.obj(x));
            let t2 = source.table(x);
            if c.source() == t1 && c.target() == t2 {
                continue;
            }
            if c.source() == t2 && c.target() == t1 {
                return Err(DiagramError::LaxDirection(r2.obj_name(x).to_string()));
            }
            return Err(DiagramError::EndpointMismatch(format!("component at {}", r2.obj_name(x))));
        }
        let pulled = compose_passages(&shape.opposite(), &target.tables)?;
        let bridge = Bridge::new_unchecked(pulled, source.tables.clone(), components)?;
        Ok(DatabaseMorphism { source, target, shape, bridge })
    }

    pub fn identity(db: &Database<C>) -> Self {
        DatabaseMorphism {
            source: db.clone(),
            target: db.clone(),
            shape: Passage::identity(&db.shape),
            bridge: Bridge::identity(&db.tables),
        }
    }

    pub fn source(&self) -> &Database<C> {
        &self.source
    }

    pub fn target(&self) -> &Database<C> {
        &self.target
    }

    pub fn shape(&self) -> &Passage<FinCategory> {
        &self.shape
    }

    pub fn bridge(&self) -> &Bridge<C> {
        &self.bridge
    }

    pub fn component(&self, r: ObjId) -> &TableMorphism {
        self.bridge.component(r)
    }

    /// Composite of `self : A → B` and `next : B → C`: shape `R ; R'`,
    /// component `ξ'_{R a} ; ξ_a`.
    pub fn then(&self, next: &DatabaseMorphism<C>) -> Result<DatabaseMorphism<C>, DiagramError> {
        if self.target != next.source {
            return Err(DiagramError::EndpointMismatch("database morphisms are not composable".into()));
        }
        let shape = compose_passages(&self.shape, &next.shape)?;
        let t = self.source.tables.target();
        let comps = self
            .source
            .shape
            .objects()
            .map(|a| {
                t.compose(next.bridge.component(*self.shape.obj(a)), self.bridge.component(a))
                    .ok_or_else(|| DiagramError::EndpointMismatch("components do not compose".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        DatabaseMorphism::new(self.source.clone(), next.target.clone(), shape, comps)
    }

    pub fn to_general(&self) -> DatabaseMorphism<TblCat> {
        DatabaseMorphism::new(
            self.source.to_general(),
            self.target.to_general(),
            self.shape.clone(),
            self.bridge.components().to_vec(),
        )
        .expect("same data in the general context")
    }
}

/// Outcome of checking a database morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// Source shape morphisms where `ξ` is not natural.
    pub naturality_failures: Vec<String>,
    /// Source shape objects where the projection condition fails, with
    /// the first offending key.
    pub condition_failures: Vec<(String, Elem)>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.naturality_failures.is_empty() && self.condition_failures.is_empty()
    }

    pub fn failing_objects(&self) -> Vec<String> {
        self.condition_failures.iter().map(|(o, _)| o.clone()).collect()
    }
}

/// Naturality of `ξ` and, at each `r2`, the projection condition
/// `(ξ∘key)•τ2 = (R^op∘τ1)•(ξ∘dom^op∘tup)`: for each key `κ` of
/// `T1(R r2)`, `t2(k κ) = tup(dom)(t1 κ)`.
pub fn check_database_morphism<C: Category<Obj = Table, Mor = TableMorphism>>(
    m: &DatabaseMorphism<C>,
) -> MorphismReport {
    let r2 = &m.source.shape;
    let naturality_failures = m.bridge.non_natural_morphisms().iter().map(|f| r2.mor_name(*f).to_string()).collect();
    let mut condition_failures = Vec::new();
    for x in r2.objects() {
        let c = m.bridge.component(x);
        let keys = c.keys();
        let t2 = c.target();
        let bad = c
            .source()
            .keys()
            .iter()
            .zip(c.source().rows())
            .find(|(k, t1)| t2.tuple(keys.apply(k).expect("total")) != Some(&c.dom().transport(t1)));
        if let Some((k, _)) = bad {
            condition_failures.push((shape_names(r2, [x]).remove(0), k.clone()));
        }
    }
    MorphismReport { naturality_failures, condition_failures }
}

