use crate::fincat::{compose_passages, whisker_right, Bridge, CatError, Category, FinCategory, Functor, Passage};

/// A morphism of diagrams `⟨R2, S2⟩ → ⟨R1, S1⟩`: a shape passage
/// `R : R2 → R1` and a bridge `σ : S2 ⇒ R ; S1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaxMorphism<T: Category> {
    source: Passage<T>,
    target: Passage<T>,
    shape: Passage<FinCategory>,
    bridge: Bridge<T>,
}

impl<T: Category> LaxMorphism<T> {
    pub fn new(
        source: Passage<T>,
        target: Passage<T>,
        shape: Passage<FinCategory>,
        components: Vec<T::Mor>,
    ) -> Result<Self, CatError> {
        if shape.source() != source.source() || shape.target() != target.source() {
            return Err(CatError::EndpointMismatch("shape passage does not join the two shapes".into()));
        }
        let bridge = Bridge::new(source.clone(), compose_passages(&shape, &target)?, components)?;
        Ok(LaxMorphism { source, target, shape, bridge })
    }

    pub fn identity(d: &Passage<T>) -> Self {
        LaxMorphism {
            source: d.clone(),
            target: d.clone(),
            shape: Passage::identity(d.source()),
            bridge: Bridge::identity(d),
        }
    }

    pub fn source(&self) -> &Passage<T> {
        &self.source
    }

    pub fn target(&self) -> &Passage<T> {
        &self.target
    }

    pub fn shape(&self) -> &Passage<FinCategory> {
        &self.shape
    }

    pub fn bridge(&self) -> &Bridge<T> {
        &self.bridge
    }

    /// Componentwise composite: shape `R ; R'`, component
    /// `σ_{r} ; σ'_{R r}`.
    pub fn then(&self, next: &LaxMorphism<T>) -> Result<LaxMorphism<T>, CatError> {
        if self.target != next.source {
            return Err(CatError::EndpointMismatch("morphisms are not composable".into()));
        }
        let shape = compose_passages(&self.shape, &next.shape)?;
        let t = self.source.target();
        let comps = self
            .source
            .source()
            .objects()
            .map(|x| {
                t.compose(self.bridge.component(x), next.bridge.component(*self.shape.obj(x)))
                    .ok_or_else(|| CatError::EndpointMismatch("components do not compose".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        LaxMorphism::new(self.source.clone(), next.target.clone(), shape, comps)
    }

    /// Push the whole morphism along a functor (a projection).
    pub fn map<F: Functor<Src = T>>(&self, f: &F) -> Result<LaxMorphism<F::Tgt>, CatError> {
        Ok(LaxMorphism {
            source: self.source.then(f)?,
            target: self.target.then(f)?,
            shape: self.shape.clone(),
            bridge: whisker_right(&self.bridge, f)?,
        })
    }
}
