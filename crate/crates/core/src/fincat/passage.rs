use super::{CatError, Category, FinCategory, MorId, ObjId};

/// A structure-preserving map out of some category, evaluated pointwise.
///
/// [`Passage`] is the finite-source case. The fiber passages (Σ_f, f*,
/// tbl transports, tuple functors, inclusions) implement this trait
/// directly over their infinite source categories.
pub trait Functor {
    type Src: Category;
    type Tgt: Category;

    fn target_category(&self) -> &Self::Tgt;
    fn on_obj(&self, x: &<Self::Src as Category>::Obj) -> <Self::Tgt as Category>::Obj;
    fn on_mor(&self, m: &<Self::Src as Category>::Mor) -> <Self::Tgt as Category>::Mor;
}

/// A functor from a finite category into any [`Category`], stored as its
/// object and morphism images.
#[derive(Clone, Debug, PartialEq)]
pub struct Passage<T: Category> {
    source: FinCategory,
    target: T,
    objects: Vec<T::Obj>,
    morphisms: Vec<T::Mor>,
}

impl<T: Category> Passage<T> {
    /// Build and check functoriality exhaustively: endpoints, identities
    /// and every composable pair.
    pub fn new(
        source: FinCategory,
        target: T,
        objects: Vec<T::Obj>,
        morphisms: Vec<T::Mor>,
    ) -> Result<Self, CatError> {
        let p = Self::new_unchecked(source, target, objects, morphisms)?;
        p.validate()?;
        Ok(p)
    }

    /// Build without the functoriality check (lengths are still checked).
    /// Used to load possibly-corrupt inputs that are then reported on.
    pub fn new_unchecked(
        source: FinCategory,
        target: T,
        objects: Vec<T::Obj>,
        morphisms: Vec<T::Mor>,
    ) -> Result<Self, CatError> {
        if objects.len() != source.n_objects() || morphisms.len() != source.n_morphisms() {
            return Err(CatError::NotFunctorial(format!(
                "expected {} object and {} morphism images, got {} and {}",
                source.n_objects(),
                source.n_morphisms(),
                objects.len(),
                morphisms.len()
            )));
        }
        Ok(Passage { source, target, objects, morphisms })
    }

    pub fn from_fn(
        source: FinCategory,
        target: T,
        obj: impl Fn(ObjId) -> T::Obj,
        mor: impl Fn(MorId) -> T::Mor,
    ) -> Result<Self, CatError> {
        let objects = source.objects().map(&obj).collect();
        let morphisms = source.morphisms().map(&mor).collect();
        Self::new(source, target, objects, morphisms)
    }

    /// Constant passage at `x`.
    pub fn constant(source: FinCategory, target: T, x: T::Obj) -> Self {
        let id = target.identity(&x);
        let objects = vec![x; source.n_objects()];
        let morphisms = vec![id; source.n_morphisms()];
        Passage { source, target, objects, morphisms }
    }

    /// Build from object images and the images of some morphisms.
    /// Identities and composites are filled in; every morphism must be
    /// reachable as a composite of the given ones. The result is validated
    /// unless `check` is false.
    pub fn from_generators(
        source: FinCategory,
        target: T,
        objects: Vec<T::Obj>,
        given: Vec<(MorId, T::Mor)>,
        check: bool,
    ) -> Result<Self, CatError> {
        if objects.len() != source.n_objects() {
            return Err(CatError::NotFunctorial("wrong number of object images".into()));
        }
        let mut mor: Vec<Option<T::Mor>> = vec![None; source.n_morphisms()];
        for x in source.objects() {
            mor[source.id(x).0] = Some(target.identity(&objects[x.0]));
        }
        for (m, img) in given {
            mor[m.0] = Some(img);
        }
        loop {
            let mut progress = false;
            for (f, g, h) in source.composable_pairs() {
                if mor[h.0].is_some() {
                    continue;
                }
                if let (Some(a), Some(b)) = (&mor[f.0], &mor[g.0]) {
                    let c = target.compose(a, b).ok_or_else(|| {
                        CatError::NotFunctorial(format!(
                            "images of {} and {} do not compose",
                            source.mor_name(f),
                            source.mor_name(g)
                        ))
                    })?;
                    mor[h.0] = Some(c);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let morphisms = mor
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| CatError::NotFunctorial(format!("no image for {}", source.mor_name(MorId(i)))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if check {
            Self::new(source, target, objects, morphisms)
        } else {
            Self::new_unchecked(source, target, objects, morphisms)
        }
    }

    pub fn validate(&self) -> Result<(), CatError> {
        let s = &self.source;
        let t = &self.target;
        for x in s.objects() {
            t.validate_object(&self.objects[x.0]).map_err(|e| {
                CatError::InvalidElement(format!("image of object {}: {e}", s.obj_name(x)))
            })?;
        }
        for m in s.morphisms() {
            let fm = &self.morphisms[m.0];
            t.validate_morphism(fm).map_err(|e| {
                CatError::InvalidElement(format!("image of morphism {}: {e}", s.mor_name(m)))
            })?;
            if t.source(fm) != self.objects[s.src(m).0] || t.target(fm) != self.objects[s.tgt(m).0] {
                return Err(CatError::NotFunctorial(format!(
                    "image of {} has the wrong endpoints",
                    s.mor_name(m)
                )));
            }
        }
        for x in s.objects() {
            if self.morphisms[s.id(x).0] != t.identity(&self.objects[x.0]) {
                return Err(CatError::NotFunctorial(format!(
                    "identity of {} not preserved",
                    s.obj_name(x)
                )));
            }
        }
        for (f, g, h) in s.composable_pairs() {
            let composite = t.compose(&self.morphisms[f.0], &self.morphisms[g.0]);
            if composite.as_ref() != Some(&self.morphisms[h.0]) {
                return Err(CatError::NotFunctorial(format!(
                    "composite ({}, {}) not preserved",
                    s.mor_name(f),
                    s.mor_name(g)
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    pub fn obj(&self, x: ObjId) -> &T::Obj {
        &self.objects[x.0]
    }

    pub fn mor(&self, m: MorId) -> &T::Mor {
        &self.morphisms[m.0]
    }

    pub fn object_images(&self) -> &[T::Obj] {
        &self.objects
    }

    pub fn morphism_images(&self) -> &[T::Mor] {
        &self.morphisms
    }

    /// Post-compose with a functor out of `T`.
    pub fn then<F: Functor<Src = T>>(&self, f: &F) -> Result<Passage<F::Tgt>, CatError> {
        Passage::new(
            self.source.clone(),
            f.target_category().clone(),
            self.objects.iter().map(|x| f.on_obj(x)).collect(),
            self.morphisms.iter().map(|m| f.on_mor(m)).collect(),
        )
    }

    /// Re-target through explicit object and morphism maps.
    pub fn map_target<U: Category>(
        &self,
        target: U,
        obj: impl Fn(&T::Obj) -> U::Obj,
        mor: impl Fn(&T::Mor) -> U::Mor,
    ) -> Result<Passage<U>, CatError> {
        Passage::new(
            self.source.clone(),
            target,
            self.objects.iter().map(obj).collect(),
            self.morphisms.iter().map(mor).collect(),
        )
    }
}

impl Passage<FinCategory> {
    /// Identity passage on a finite category.
    pub fn identity(c: &FinCategory) -> Self {
        Passage {
            source: c.clone(),
            target: c.clone(),
            objects: c.objects().collect(),
            morphisms: c.morphisms().collect(),
        }
    }

    /// `F^op : C^op -> D^op` for `F : C -> D`.
    pub fn opposite(&self) -> Self {
        Passage {
            source: super::opposite(&self.source),
            target: super::opposite(&self.target),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Look up a passage from name pairs.
    pub fn from_names<S: AsRef<str>>(
        source: &FinCategory,
        target: &FinCategory,
        objects: &[(S, S)],
        morphisms: &[(S, S)],
    ) -> Result<Self, CatError> {
        let mut obj = vec![None; source.n_objects()];
        for (a, b) in objects {
            let x = source.obj_by_name(a.as_ref()).ok_or_else(|| CatError::UnknownObject(a.as_ref().into()))?;
            let y = target.obj_by_name(b.as_ref()).ok_or_else(|| CatError::UnknownObject(b.as_ref().into()))?;
            obj[x.0] = Some(y);
        }
        let mut mor = vec![None; source.n_morphisms()];
        for (a, b) in morphisms {
            let x = source.mor_by_name(a.as_ref()).ok_or_else(|| CatError::UnknownMorphism(a.as_ref().into()))?;
            let y = target.mor_by_name(b.as_ref()).ok_or_else(|| CatError::UnknownMorphism(b.as_ref().into()))?;
            mor[x.0] = Some(y);
        }
        let objects: Vec<ObjId> = obj
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| CatError::NotFunctorial(format!("object {} unmapped", source.obj_name(ObjId(i))))))
            .collect::<Result<_, _>>()?;
        // Identities may be omitted.
        let morphisms: Vec<MorId> = mor
            .into_iter()
            .enumerate()
            .map(|(i, m)| match m {
                Some(m) => Ok(m),
                None if source.is_identity(MorId(i)) => Ok(target.id(objects[source.src(MorId(i)).0])),
                None => Err(CatError::NotFunctorial(format!(
                    "morphism {} unmapped",
                    source.mor_name(MorId(i))
                ))),
            })
            .collect::<Result<_, _>>()?;
        Passage::new(source.clone(), target.clone(), objects, morphisms)
    }
}

impl<T: Category> Functor for Passage<T> {
    type Src = FinCategory;
    type Tgt = T;

    fn target_category(&self) -> &T {
        &self.target
    }

    fn on_obj(&self, x: &ObjId) -> T::Obj {
        self.objects[x.0].clone()
    }

    fn on_mor(&self, m: &MorId) -> T::Mor {
        self.morphisms[m.0].clone()
    }
}

/// `F ; G` for passages with `target(F) == source(G)`.
pub fn compose_passages<T: Category>(
    f: &Passage<FinCategory>,
    g: &Passage<T>,
) -> Result<Passage<T>, CatError> {
    if f.target != g.source {
        return Err(CatError::EndpointMismatch(
            "target of the first passage is not the source of the second".into(),
        ));
    }
    f.then(g)
}

/// A natural transformation between two passages with the same source and
/// target categories, stored as one component per source object.
#[derive(Clone, Debug, PartialEq)]
pub struct Bridge<T: Category> {
    source: Passage<T>,
    target: Passage<T>,
    components: Vec<T::Mor>,
}

impl<T: Category> Bridge<T> {
    pub fn new(source: Passage<T>, target: Passage<T>, components: Vec<T::Mor>) -> Result<Self, CatError> {
        let b = Self::new_unchecked(source, target, components)?;
        b.validate()?;
        Ok(b)
    }

    /// Build without the naturality check (shapes must still agree).
    pub fn new_unchecked(
        source: Passage<T>,
        target: Passage<T>,
        components: Vec<T::Mor>,
    ) -> Result<Self, CatError> {
        if source.source != target.source || source.target != target.target {
            return Err(CatError::EndpointMismatch(
                "bridge between passages with different source or target categories".into(),
            ));
        }
        if components.len() != source.source.n_objects() {
            return Err(CatError::NotNatural(format!(
                "expected {} components, got {}",
                source.source.n_objects(),
                components.len()
            )));
        }
        Ok(Bridge { source, target, components })
    }

    pub fn from_fn(
        source: Passage<T>,
        target: Passage<T>,
        component: impl Fn(ObjId) -> T::Mor,
    ) -> Result<Self, CatError> {
        let components = source.source.objects().map(component).collect();
        Self::new(source, target, components)
    }

    pub fn identity(p: &Passage<T>) -> Self {
        let components = p.objects.iter().map(|x| p.target.identity(x)).collect();
        Bridge { source: p.clone(), target: p.clone(), components }
    }

    /// Component typing plus every naturality square.
    pub fn validate(&self) -> Result<(), CatError> {
        let c = &self.source.source;
        let t = &self.source.target;
        for x in c.objects() {
            let a = &self.components[x.0];
            t.validate_morphism(a).map_err(|e| {
                CatError::InvalidElement(format!("component at {}: {e}", c.obj_name(x)))
            })?;
            if t.source(a) != *self.source.obj(x) || t.target(a) != *self.target.obj(x) {
                return Err(CatError::NotNatural(format!(
                    "component at {} has the wrong endpoints",
                    c.obj_name(x)
                )));
            }
        }
        if let Some(m) = self.first_non_natural() {
            return Err(CatError::NotNatural(format!("square at {} does not commute", c.mor_name(m))));
        }
        Ok(())
    }

    /// Source-category morphisms whose naturality square fails.
    pub fn non_natural_morphisms(&self) -> Vec<MorId> {
        let c = &self.source.source;
        c.morphisms().filter(|&m| !self.square_commutes(m)).collect()
    }

    fn first_non_natural(&self) -> Option<MorId> {
        let c = &self.source.source;
        c.morphisms().find(|&m| !self.square_commutes(m))
    }

    fn square_commutes(&self, m: MorId) -> bool {
        let c = &self.source.source;
        let t = &self.source.target;
        let (x, y) = (c.src(m), c.tgt(m));
        let lhs = t.compose(&self.components[x.0], self.target.mor(m));
        let rhs = t.compose(self.source.mor(m), &self.components[y.0]);
        lhs.is_some() && lhs == rhs
    }

    pub fn source(&self) -> &Passage<T> {
        &self.source
    }

    pub fn target(&self) -> &Passage<T> {
        &self.target
    }

    pub fn component(&self, x: ObjId) -> &T::Mor {
        &self.components[x.0]
    }

    pub fn components(&self) -> &[T::Mor] {
        &self.components
    }
}

/// `α • β` (first α, then β).
pub fn vertical_compose<T: Category>(a: &Bridge<T>, b: &Bridge<T>) -> Result<Bridge<T>, CatError> {
    if a.target != b.source {
        return Err(CatError::EndpointMismatch("target of α is not the source of β".into()));
    }
    let t = &a.source.target;
    let components = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(x, y)| t.compose(x, y).ok_or_else(|| CatError::EndpointMismatch("components do not compose".into())))
        .collect::<Result<_, _>>()?;
    Bridge::new(a.source.clone(), b.target.clone(), components)
}

/// `F ∘ α`: restrict α along a passage `F` into its source category.
pub fn whisker_left<T: Category>(f: &Passage<FinCategory>, a: &Bridge<T>) -> Result<Bridge<T>, CatError> {
    if f.target != a.source.source {
        return Err(CatError::EndpointMismatch("passage target is not the bridge's source category".into()));
    }
    Bridge::new(
        f.then(&a.source)?,
        f.then(&a.target)?,
        f.objects.iter().map(|x| a.components[x.0].clone()).collect(),
    )
}

/// `α ∘ G`: push α forward along a functor out of its target category.
pub fn whisker_right<T: Category, G: Functor<Src = T>>(
    a: &Bridge<T>,
    g: &G,
) -> Result<Bridge<G::Tgt>, CatError> {
    Bridge::new(
        a.source.then(g)?,
        a.target.then(g)?,
        a.components.iter().map(|m| g.on_mor(m)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_to_chain() -> (FinCategory, FinCategory) {
        let chain = FinCategory::free_on_acyclic_graph(&["x", "y", "z"], &[("p", "x", "y"), ("q", "y", "z")])
            .unwrap();
        (FinCategory::arrow(), chain)
    }

    #[test]
    fn functoriality_checked() {
        let (arrow, chain) = arrow_to_chain();
        let ok = Passage::from_names(&arrow, &chain, &[("a", "x"), ("b", "z")], &[("u", "p;q")]);
        assert!(ok.is_ok());
        let bad = Passage::from_names(&arrow, &chain, &[("a", "x"), ("b", "z")], &[("u", "p")]);
        assert!(matches!(bad, Err(CatError::NotFunctorial(_))));
    }

    #[test]
    fn whisker_with_identity_is_unchanged() {
        let (arrow, chain) = arrow_to_chain();
        let f = Passage::from_names(&arrow, &chain, &[("a", "x"), ("b", "y")], &[("u", "p")]).unwrap();
        let g = Passage::from_names(&arrow, &chain, &[("a", "y"), ("b", "z")], &[("u", "q")]).unwrap();
        let alpha = Bridge::from_fn(f.clone(), g, |o| {
            if o == arrow.obj_by_name("a").unwrap() { chain.mor_by_name("p").unwrap() } else { chain.mor_by_name("q").unwrap() }
        })
        .unwrap();
        let id = Passage::identity(&arrow);
        assert_eq!(whisker_left(&id, &alpha).unwrap(), alpha);
        assert_eq!(whisker_right(&alpha, &Passage::identity(&chain)).unwrap(), alpha);
        let ida = Bridge::identity(alpha.target());
        assert_eq!(vertical_compose(&alpha, &ida).unwrap(), alpha);
        assert_eq!(vertical_compose(&Bridge::identity(&f), &alpha).unwrap(), alpha);
    }

    #[test]
    fn non_natural_bridge_rejected() {
        let (arrow, chain) = arrow_to_chain();
        let f = Passage::from_names(&arrow, &chain, &[("a", "x"), ("b", "y")], &[("u", "p")]).unwrap();
        let g = Passage::constant(arrow.clone(), chain.clone(), chain.obj_by_name("z").unwrap());
        let ok = Bridge::from_fn(f.clone(), g.clone(), |o| {
            if o.0 == 0 { chain.mor_by_name("p;q").unwrap() } else { chain.mor_by_name("q").unwrap() }
        });
        assert!(ok.is_ok());
        // A constant passage at y with an identity component cannot be natural from f to const z.
        let bad = Bridge::new_unchecked(f, g, vec![chain.mor_by_name("p;q").unwrap(), chain.id(chain.obj_by_name("y").unwrap())]);
        assert!(bad.unwrap().validate().is_err());
    }

    #[test]
    fn compose_passages_checks_endpoints() {
        let (arrow, chain) = arrow_to_chain();
        let f = Passage::identity(&arrow);
        let g = Passage::identity(&chain);
        assert!(matches!(compose_passages(&f, &g), Err(CatError::EndpointMismatch(_))));
    }
}
