use std::fmt;

use super::FoleError;
use crate::elem::{product_choices, Elem, FinSet, SetFn};
use crate::fincat::{CatError, Category, HomSets};

/// A sorted signature `⟨I, s, X⟩`, stored as its sort function `s: I → X`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    sort: SetFn,
}

impl Signature {
    pub fn new(sort: SetFn) -> Self {
        Signature { sort }
    }

    pub fn from_pairs(
        arity: FinSet,
        sorts: FinSet,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, FoleError> {
        Ok(Signature { sort: SetFn::from_pairs(arity, sorts, pairs)? })
    }

    /// Attribute/sort pairs given as atoms.
    pub fn from_atoms(sorts: &FinSet, attrs: &[(&str, &str)]) -> Result<Self, FoleError> {
        let arity = FinSet::atoms(attrs.iter().map(|(a, _)| *a));
        Signature::from_pairs(arity, sorts.clone(), attrs.iter().map(|(a, s)| (Elem::atom(*a), Elem::atom(*s))))
    }

    /// The empty signature over `sorts`.
    pub fn empty(sorts: &FinSet) -> Self {
        Signature { sort: SetFn::from_pairs(FinSet::empty(), sorts.clone(), []).expect("empty function") }
    }

    /// `X` sorted by the identity: the terminal object of List(X).
    pub fn terminal(sorts: &FinSet) -> Self {
        Signature { sort: SetFn::identity(sorts) }
    }

    pub fn arity(&self) -> &FinSet {
        self.sort.dom()
    }

    pub fn sort_set(&self) -> &FinSet {
        self.sort.cod()
    }

    pub fn sort_fn(&self) -> &SetFn {
        &self.sort
    }

    pub fn sort_of(&self, attr: &Elem) -> Option<&Elem> {
        self.sort.apply(attr)
    }

    /// Attributes of the given sort.
    pub fn fiber(&self, sort: &Elem) -> Vec<Elem> {
        self.sort.pairs().filter(|(_, s)| *s == sort).map(|(i, _)| i.clone()).collect()
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sig{:?}", self.sort)
    }
}

/// A signature morphism `⟨h, f⟩ : S2 → S1` with `h: I2 → I1`,
/// `f: X2 → X1` and `s2 ; f = h ; s1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignatureMorphism {
    source: Signature,
    target: Signature,
    h: SetFn,
    f: SetFn,
}

impl SignatureMorphism {
    pub fn new(source: Signature, target: Signature, h: SetFn, f: SetFn) -> Result<Self, FoleError> {
        if h.dom() != source.arity() || h.cod() != target.arity() {
            return Err(FoleError::EndpointMismatch("arity map must run I2 → I1".into()));
        }
        if f.dom() != source.sort_set() || f.cod() != target.sort_set() {
            return Err(FoleError::EndpointMismatch("sort map must run X2 → X1".into()));
        }
        for (i, hi) in h.pairs() {
            let lhs = f.apply(source.sort_of(i).expect("in arity")).expect("in sorts");
            if lhs != target.sort_of(hi).expect("in arity") {
                return Err(FoleError::SortConditionViolation(i.clone()));
            }
        }
        Ok(SignatureMorphism { source, target, h, f })
    }

    /// A morphism of List(X): the sort map is the identity.
    pub fn in_list_x(source: Signature, target: Signature, h: SetFn) -> Result<Self, FoleError> {
        if source.sort_set() != target.sort_set() {
            return Err(FoleError::SortSetMismatch("List(X) morphism between different sort sets".into()));
        }
        let f = SetFn::identity(source.sort_set());
        SignatureMorphism::new(source, target, h, f)
    }

    pub(crate) fn new_unchecked(source: Signature, target: Signature, h: SetFn, f: SetFn) -> Self {
        SignatureMorphism { source, target, h, f }
    }

    pub fn identity(s: &Signature) -> Self {
        SignatureMorphism {
            source: s.clone(),
            target: s.clone(),
            h: SetFn::identity(s.arity()),
            f: SetFn::identity(s.sort_set()),
        }
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn h(&self) -> &SetFn {
        &self.h
    }

    pub fn f(&self) -> &SetFn {
        &self.f
    }

    pub fn then(&self, next: &SignatureMorphism) -> Option<SignatureMorphism> {
        if self.target != next.source {
            return None;
        }
        Some(SignatureMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            h: self.h.then(&next.h).ok()?,
            f: self.f.then(&next.f).ok()?,
        })
    }
}

/// List(X): signatures over a fixed sort set, morphisms over `id_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListX {
    pub sorts: FinSet,
}

impl ListX {
    pub fn new(sorts: FinSet) -> Self {
        ListX { sorts }
    }
}

impl Category for ListX {
    type Obj = Signature;
    type Mor = SignatureMorphism;

    fn source(&self, m: &SignatureMorphism) -> Signature {
        m.source.clone()
    }

    fn target(&self, m: &SignatureMorphism) -> Signature {
        m.target.clone()
    }

    fn identity(&self, x: &Signature) -> SignatureMorphism {
        SignatureMorphism::identity(x)
    }

    fn compose(&self, f: &SignatureMorphism, g: &SignatureMorphism) -> Option<SignatureMorphism> {
        f.then(g)
    }

    fn validate_object(&self, x: &Signature) -> Result<(), String> {
        if x.sort_set() != &self.sorts {
            return Err(format!("signature over {:?}, expected {:?}", x.sort_set(), self.sorts));
        }
        Ok(())
    }

    fn validate_morphism(&self, m: &SignatureMorphism) -> Result<(), String> {
        self.validate_object(&m.source)?;
        self.validate_object(&m.target)?;
        if !m.f.is_identity() {
            return Err("sort map is not the identity".into());
        }
        SignatureMorphism::new(m.source.clone(), m.target.clone(), m.h.clone(), m.f.clone())
            .map(|_| ())
            .map_err(|e| e.to_string())
    }
}

/// All arity maps `h` making `s2 = h ; s1` hold, for a fixed sort map `f`.
fn arity_maps(a: &Signature, b: &Signature, f: &SetFn) -> Vec<SetFn> {
    let choices: Vec<Vec<Elem>> =
        a.sort_fn().images().iter().map(|x| b.fiber(f.apply(x).expect("sort in domain"))).collect();
    product_choices(&choices)
        .into_iter()
        .map(|images| SetFn::from_pairs(a.arity().clone(), b.arity().clone(), a.arity().iter().cloned().zip(images)).expect("fiberwise choice"))
        .collect()
}

impl HomSets for ListX {
    fn hom(&self, a: &Signature, b: &Signature) -> Result<Vec<SignatureMorphism>, CatError> {
        if a.sort_set() != b.sort_set() {
            return Ok(vec![]);
        }
        let f = SetFn::identity(a.sort_set());
        Ok(arity_maps(a, b, &f)
            .into_iter()
            .map(|h| SignatureMorphism::new_unchecked(a.clone(), b.clone(), h, f.clone()))
            .collect())
    }
}

/// The general context List of signatures over varying sort sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ListCat;

impl Category for ListCat {
    type Obj = Signature;
    type Mor = SignatureMorphism;

    fn source(&self, m: &SignatureMorphism) -> Signature {
        m.source.clone()
    }

    fn target(&self, m: &SignatureMorphism) -> Signature {
        m.target.clone()
    }

    fn identity(&self, x: &Signature) -> SignatureMorphism {
        SignatureMorphism::identity(x)
    }

    fn compose(&self, f: &SignatureMorphism, g: &SignatureMorphism) -> Option<SignatureMorphism> {
        f.then(g)
    }

    fn validate_morphism(&self, m: &SignatureMorphism) -> Result<(), String> {
        SignatureMorphism::new(m.source.clone(), m.target.clone(), m.h.clone(), m.f.clone())
            .map(|_| ())
            .map_err(|e| e.to_string())
    }
}

impl HomSets for ListCat {
    fn hom(&self, a: &Signature, b: &Signature) -> Result<Vec<SignatureMorphism>, CatError> {
        let mut out = Vec::new();
        for f in SetFn::all(a.sort_set(), b.sort_set()) {
            for h in arity_maps(a, b, &f) {
                out.push(SignatureMorphism::new_unchecked(a.clone(), b.clone(), h, f.clone()));
            }
        }
        Ok(out)
    }
}
