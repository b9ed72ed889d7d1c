use super::{schemed_over, shape_names, Database, DatabaseMorphism, DiagramError, SchemedMorphism};
use crate::base::{
    Adjunction, DomMorphism, FoleError, Infomorphism, ListX, SignatureMorphism, Table, TableMorphism, TblA, TblCat,
    TblFiberAdjunction,
};
use crate::fincat::{compose_passages, Bridge, FinCategory, Passage};

/// A morphism of schemed domains over an infomorphism `⟨f, g⟩ : A2 ⇄ A1`,
/// from `⟨R2, S2⟩` (over `X2`) to `⟨R1, S1⟩` (over `X1`), stored in levo
/// form `φ́ : S2 ⇒ R ; S1 ; f*`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedSchemedMorphism {
    source: Passage<ListX>,
    target: Passage<ListX>,
    shape: Passage<FinCategory>,
    adj: TblFiberAdjunction,
    levo: Bridge<ListX>,
}

impl FixedSchemedMorphism {
    pub fn from_levo(
        source: Passage<ListX>,
        target: Passage<ListX>,
        shape: Passage<FinCategory>,
        info: Infomorphism,
        components: Vec<SignatureMorphism>,
    ) -> Result<Self, DiagramError> {
        let adj = TblFiberAdjunction::new(info);
        check_sorts(&source, &target, &adj)?;
        let pulled = compose_passages(&shape, &target)?.then(&adj.list().f_star())?;
        let levo = Bridge::new(source.clone(), pulled, components)?;
        Ok(FixedSchemedMorphism { source, target, shape, adj, levo })
    }

    /// From dextro components `φ̀_r : Σ_f S2(r) → S1(R r)`.
    pub fn from_dextro(
        source: Passage<ListX>,
        target: Passage<ListX>,
        shape: Passage<FinCategory>,
        info: Infomorphism,
        components: Vec<SignatureMorphism>,
    ) -> Result<Self, DiagramError> {
        let adj = TblFiberAdjunction::new(info.clone());
        check_sorts(&source, &target, &adj)?;
        let pushed = source.then(&adj.list().sigma())?;
        Bridge::new(pushed, compose_passages(&shape, &target)?, components.clone())?;
        let levo = source
            .source()
            .objects()
            .map(|r| adj.list().transpose_down(source.obj(r), &components[r.0]).expect("composable"))
            .collect();
        FixedSchemedMorphism::from_levo(source, target, shape, info, levo)
    }

    /// Factor a general schemed-domain morphism whose type-domain parts
    /// are all `⟨f, g⟩`.
    pub fn from_general(
        source: Passage<ListX>,
        target: Passage<ListX>,
        m: &SchemedMorphism,
        info: Infomorphism,
    ) -> Result<Self, DiagramError> {
        let dextro = m
            .bridge()
            .components()
            .iter()
            .map(|c| {
                if c.info() != &info {
                    return Err(DiagramError::EndpointMismatch("component over a different infomorphism".into()));
                }
                let sm = c.signature_morphism();
                Ok(SignatureMorphism::in_list_x(
                    crate::base::ListFiberAdjunction::new(info.f().clone()).left_obj(sm.source()),
                    sm.target().clone(),
                    sm.h().clone(),
                )?)
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        FixedSchemedMorphism::from_dextro(source, target, m.shape().clone(), info, dextro)
    }

    pub fn source(&self) -> &Passage<ListX> {
        &self.source
    }

    pub fn target(&self) -> &Passage<ListX> {
        &self.target
    }

    pub fn shape(&self) -> &Passage<FinCategory> {
        &self.shape
    }

    pub fn info(&self) -> &Infomorphism {
        self.adj.info()
    }

    pub fn adjunction(&self) -> &TblFiberAdjunction {
        &self.adj
    }

    pub fn levo(&self) -> &[SignatureMorphism] {
        self.levo.components()
    }

    /// `φ̀_r = Σ_f(φ́_r) ; ε_{S1(R r)}`.
    pub fn dextro(&self) -> Vec<SignatureMorphism> {
        self.source
            .source()
            .objects()
            .map(|r| {
                let y = self.target.obj(*self.shape.obj(r));
                self.adj.list().transpose_up(y, self.levo.component(r)).expect("composable")
            })
            .collect()
    }

    /// `ς_r = φ́_r ; ὶ_{S1(R r)}`.
    pub fn composite_via_levo(&self) -> Vec<DomMorphism> {
        let a2 = self.adj.info().source();
        self.source
            .source()
            .objects()
            .map(|r| {
                let s1 = self.target.obj(*self.shape.obj(r));
                DomMorphism::over_identity(self.levo.component(r), a2)
                    .expect("fiber morphism")
                    .then(&self.adj.iota_grave(s1))
                    .expect("composable")
            })
            .collect()
    }

    /// `ς_r = ί_{S2(r)} ; φ̀_r`.
    pub fn composite_via_dextro(&self) -> Vec<DomMorphism> {
        let a1 = self.adj.info().target();
        let dextro = self.dextro();
        self.source
            .source()
            .objects()
            .map(|r| {
                self.adj
                    .iota_acute(self.source.obj(r))
                    .then(&DomMorphism::over_identity(&dextro[r.0], a1).expect("fiber morphism"))
                    .expect("composable")
            })
            .collect()
    }

    /// The underlying morphism of general schemed domains.
    pub fn include(&self) -> Result<SchemedMorphism, DiagramError> {
        let info = self.adj.info();
        let q2 = schemed_over(&self.source, info.source())?;
        let q1 = schemed_over(&self.target, info.target())?;
        Ok(SchemedMorphism::new(q2, q1, self.shape.clone(), self.composite_via_levo())?)
    }
}

fn check_sorts(source: &Passage<ListX>, target: &Passage<ListX>, adj: &TblFiberAdjunction) -> Result<(), DiagramError> {
    let info = adj.info();
    if source.target().sorts != *info.source().sorts() || target.target().sorts != *info.target().sorts() {
        return Err(FoleError::SortSetMismatch("schemas do not match the infomorphism's sort sets".into()).into());
    }
    Ok(())
}

/// A database morphism over an infomorphism `⟨f, g⟩ : A2 ⇄ A1`, from
/// `⟨R2, T2⟩` (over `A2`) to `⟨R1, T1⟩` (over `A1`), stored in levo form
/// `ψ́ : R^op ; T1 ; tbĺ ⇒ T2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedDbMorphism {
    source: Database<TblA>,
    target: Database<TblA>,
    shape: Passage<FinCategory>,
    adj: TblFiberAdjunction,
    levo: Bridge<TblA>,
}

impl FixedDbMorphism {
    pub fn from_levo(
        source: Database<TblA>,
        target: Database<TblA>,
        shape: Passage<FinCategory>,
        info: Infomorphism,
        components: Vec<TableMorphism>,
    ) -> Result<Self, DiagramError> {
        let adj = TblFiberAdjunction::new(info);
        check_domains(&source, &target, &shape, &adj)?;
        let pulled = compose_passages(&shape.opposite(), target.tables())?.then(&adj.acute())?;
        let levo = Bridge::new(pulled, source.tables().clone(), components)?;
        Ok(FixedDbMorphism { source, target, shape, adj, levo })
    }

    /// From dextro components `ψ̀_r : T1(R r) → tbl̀ T2(r)`.
    pub fn from_dextro(
        source: Database<TblA>,
        target: Database<TblA>,
        shape: Passage<FinCategory>,
        info: Infomorphism,
        components: Vec<TableMorphism>,
    ) -> Result<Self, DiagramError> {
        let adj = TblFiberAdjunction::new(info.clone());
        check_domains(&source, &target, &shape, &adj)?;
        let pulled = compose_passages(&shape.opposite(), target.tables())?;
        Bridge::new(pulled, source.tables().then(&adj.grave())?, components.clone())?;
        let levo = source
            .shape()
            .objects()
            .map(|r| adj.transpose_up(source.table(r), &components[r.0]).expect("composable"))
            .collect();
        FixedDbMorphism::from_levo(source, target, shape, info, levo)
    }

    /// Factor a general database morphism `ξ` whose components all lie
    /// over `⟨f, g⟩` as `ξ = χ́ ; ψ́`.
    pub fn from_general(
        source: Database<TblA>,
        target: Database<TblA>,
        m: &DatabaseMorphism<TblCat>,
        info: Infomorphism,
    ) -> Result<Self, DiagramError> {
        let adj = TblFiberAdjunction::new(info.clone());
        let list = adj.list();
        let levo = source
            .shape()
            .objects()
            .map(|r| {
                let xi = m.component(r);
                if xi.dom().info() != &info {
                    return Err(DiagramError::EndpointMismatch(format!(
                        "component at {} lies over a different infomorphism",
                        source.shape().obj_name(r)
                    )));
                }
                let sm = xi.dom().signature_morphism();
                let down = SignatureMorphism::in_list_x(list.left_obj(sm.source()), sm.target().clone(), sm.h().clone())?;
                let h = list.transpose_down(sm.source(), &down).expect("composable");
                let lt = adj.left_obj(xi.source());
                let dom = DomMorphism::over_identity(&h, info.source())?;
                Ok(TableMorphism::new(lt, xi.target().clone(), dom, xi.keys().clone())?)
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        FixedDbMorphism::from_levo(source, target, m.shape().clone(), info, levo)
    }

    pub fn source(&self) -> &Database<TblA> {
        &self.source
    }

    pub fn target(&self) -> &Database<TblA> {
        &self.target
    }

    pub fn shape(&self) -> &Passage<FinCategory> {
        &self.shape
    }

    pub fn info(&self) -> &Infomorphism {
        self.adj.info()
    }

    pub fn adjunction(&self) -> &TblFiberAdjunction {
        &self.adj
    }

    pub fn levo(&self) -> &[TableMorphism] {
        self.levo.components()
    }

    fn pulled_table(&self, r: crate::fincat::ObjId) -> &Table {
        self.target.table(*self.shape.obj(r))
    }

    /// `ψ̀_r = η_{T1(R r)} ; tbl̀(ψ́_r)`.
    pub fn dextro(&self) -> Vec<TableMorphism> {
        self.source
            .shape()
            .objects()
            .map(|r| self.adj.transpose_down(self.pulled_table(r), self.levo.component(r)).expect("composable"))
            .collect()
    }

    /// `ξ_r = χ́_{T1(R r)} ; ψ́_r`.
    pub fn bridge_via_levo(&self) -> Vec<TableMorphism> {
        self.source
            .shape()
            .objects()
            .map(|r| self.adj.chi_acute(self.pulled_table(r)).then(self.levo.component(r)).expect("composable"))
            .collect()
    }

    /// `ξ_r = ψ̀_r ; χ̀_{T2(r)}`.
    pub fn bridge_via_dextro(&self) -> Vec<TableMorphism> {
        let dextro = self.dextro();
        self.source
            .shape()
            .objects()
            .map(|r| dextro[r.0].then(&self.adj.chi_grave(self.source.table(r))).expect("composable"))
            .collect()
    }

    /// The underlying morphism of general databases.
    pub fn include(&self) -> Result<DatabaseMorphism<TblCat>, DiagramError> {
        DatabaseMorphism::new(
            self.source.to_general(),
            self.target.to_general(),
            self.shape.clone(),
            self.bridge_via_levo(),
        )
    }

    /// Composite through the general context, factored back.
    pub fn then(&self, next: &FixedDbMorphism) -> Result<FixedDbMorphism, DiagramError> {
        let info = self
            .info()
            .then(next.info())
            .ok_or_else(|| DiagramError::EndpointMismatch("infomorphisms do not compose".into()))?;
        let general = self.include()?.then(&next.include()?)?;
        FixedDbMorphism::from_general(self.source.clone(), next.target.clone(), &general, info)
    }

    /// The levo and dextro projection conditions, evaluated with the tuple
    /// bridges `τ́` and `τ̀`. Returns the source shape objects failing each.
    ///
    /// levo: `t2(k κ) = tup_{A2}(φ́)(τ́_{S1}(t1 κ))`;
    /// dextro: `t2(k κ) = τ̀_{S2}(tup_{A1}(φ̀)(t1 κ))`.
    pub fn coherence(&self) -> (Vec<String>, Vec<String>) {
        let tau = self.adj.tup_along();
        let (a1, a2) = (self.info().target(), self.info().source());
        let dextro = self.dextro();
        let shape = self.source.shape();
        let mut levo_bad = Vec::new();
        let mut dextro_bad = Vec::new();
        for r in shape.objects() {
            let t1 = self.pulled_table(r);
            let t2 = self.source.table(r);
            let psi = self.levo.component(r);
            let phi_levo = DomMorphism::over_identity(&psi.dom().signature_morphism(), a2).expect("fiber").tup_fn();
            let phi_dextro =
                DomMorphism::over_identity(&dextro[r.0].dom().signature_morphism(), a1).expect("fiber").tup_fn();
            let tau_acute = tau.acute(t1.signature());
            let tau_grave = tau.grave(t2.signature());
            for (k, row) in t1.keys().iter().zip(t1.rows()) {
                let lhs = t2.tuple(psi.keys().apply(k).expect("total"));
                let via_levo = phi_levo.apply(tau_acute.apply(row).expect("tuple")).expect("tuple");
                let via_dextro = tau_grave.apply(phi_dextro.apply(row).expect("tuple")).expect("tuple");
                if lhs != Some(via_levo) && !levo_bad.contains(&r) {
                    levo_bad.push(r);
                }
                if lhs != Some(via_dextro) && !dextro_bad.contains(&r) {
                    dextro_bad.push(r);
                }
            }
        }
        (shape_names(shape, levo_bad), shape_names(shape, dextro_bad))
    }
}

fn check_domains(
    source: &Database<TblA>,
    target: &Database<TblA>,
    shape: &Passage<FinCategory>,
    adj: &TblFiberAdjunction,
) -> Result<(), DiagramError> {
    let info = adj.info();
    if source.tables().target().domain != *info.source() || target.tables().target().domain != *info.target() {
        return Err(DiagramError::EndpointMismatch("databases do not match the infomorphism's type domains".into()));
    }
    if shape.source() != source.shape() || shape.target() != target.shape() {
        return Err(DiagramError::EndpointMismatch("shape passage does not join the two shapes".into()));
    }
    Ok(())
}

