use std::fmt;
use std::sync::Arc;

use super::FoleError;
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::Category;

/// A classification `⟨X, Y, ⊨⟩`: sorts, values and an incidence relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeDomain(Arc<Inner>);

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    sorts: FinSet,
    values: FinSet,
    /// `(value, sort)` pairs, sorted.
    incidence: Vec<(Elem, Elem)>,
    /// Extension of each sort, aligned with `sorts`.
    extents: Vec<FinSet>,
}

impl TypeDomain {
    pub fn new(
        sorts: FinSet,
        values: FinSet,
        incidence: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, FoleError> {
        let mut inc: Vec<(Elem, Elem)> = incidence.into_iter().collect();
        inc.sort();
        inc.dedup();
        for (y, x) in &inc {
            if !values.contains(y) || !sorts.contains(x) {
                return Err(FoleError::IncidenceOutOfRange { value: y.clone(), sort: x.clone() });
            }
        }
        let extents = sorts
            .iter()
            .map(|x| inc.iter().filter(|(_, s)| s == x).map(|(y, _)| y.clone()).collect())
            .collect();
        Ok(TypeDomain(Arc::new(Inner { sorts, values, incidence: inc, extents })))
    }

    /// Convenience constructor from string atoms.
    pub fn from_atoms(sorts: &[&str], values: &[&str], incidence: &[(&str, &str)]) -> Result<Self, FoleError> {
        TypeDomain::new(
            FinSet::atoms(sorts.iter().copied()),
            FinSet::atoms(values.iter().copied()),
            incidence.iter().map(|(y, x)| (Elem::atom(*y), Elem::atom(*x))),
        )
    }

    pub fn sorts(&self) -> &FinSet {
        &self.0.sorts
    }

    pub fn values(&self) -> &FinSet {
        &self.0.values
    }

    pub fn incidence(&self) -> &[(Elem, Elem)] {
        &self.0.incidence
    }

    pub fn satisfies(&self, value: &Elem, sort: &Elem) -> bool {
        self.0.incidence.binary_search_by(|(y, x)| (y, x).cmp(&(value, sort))).is_ok()
    }

    /// The values classified by `sort` (empty for an unknown sort).
    pub fn extent(&self, sort: &Elem) -> FinSet {
        self.0.sorts.index_of(sort).map(|i| self.0.extents[i].clone()).unwrap_or_default()
    }
}

impl fmt::Debug for TypeDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TypeDomain")
            .field("sorts", &self.0.sorts)
            .field("values", &self.0.values)
            .field("incidence", &self.0.incidence)
            .finish()
    }
}

/// An infomorphism `⟨f, g⟩ : A2 ⇄ A1` with `f: X2 → X1` on sorts and
/// `g: Y1 → Y2` on values. As a morphism of classifications it runs
/// `A2 → A1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Infomorphism {
    source: TypeDomain,
    target: TypeDomain,
    f: SetFn,
    g: SetFn,
}

impl Infomorphism {
    pub fn new(source: TypeDomain, target: TypeDomain, f: SetFn, g: SetFn) -> Result<Self, FoleError> {
        if f.dom() != source.sorts() || f.cod() != target.sorts() {
            return Err(FoleError::EndpointMismatch("sort function must run X2 → X1".into()));
        }
        if g.dom() != target.values() || g.cod() != source.values() {
            return Err(FoleError::EndpointMismatch("value function must run Y1 → Y2".into()));
        }
        for (y1, gy) in g.pairs() {
            for (x2, fx) in f.pairs() {
                if target.satisfies(y1, fx) != source.satisfies(gy, x2) {
                    return Err(FoleError::InfomorphismViolation { value: y1.clone(), sort: x2.clone() });
                }
            }
        }
        Ok(Infomorphism { source, target, f, g })
    }

    pub fn identity(a: &TypeDomain) -> Self {
        Infomorphism {
            source: a.clone(),
            target: a.clone(),
            f: SetFn::identity(a.sorts()),
            g: SetFn::identity(a.values()),
        }
    }

    /// `A2` (the side `f` starts from).
    pub fn source(&self) -> &TypeDomain {
        &self.source
    }

    /// `A1`.
    pub fn target(&self) -> &TypeDomain {
        &self.target
    }

    pub fn f(&self) -> &SetFn {
        &self.f
    }

    pub fn g(&self) -> &SetFn {
        &self.g
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.f.is_identity() && self.g.is_identity()
    }

    /// Diagrammatic composite `A3 → A2 → A1`.
    pub fn then(&self, next: &Infomorphism) -> Option<Infomorphism> {
        if self.target != next.source {
            return None;
        }
        Some(Infomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f: self.f.then(&next.f).ok()?,
            g: next.g.then(&self.g).ok()?,
        })
    }
}

/// Classifications and infomorphisms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClsCat;

impl Category for ClsCat {
    type Obj = TypeDomain;
    type Mor = Infomorphism;

    fn source(&self, m: &Infomorphism) -> TypeDomain {
        m.source.clone()
    }

    fn target(&self, m: &Infomorphism) -> TypeDomain {
        m.target.clone()
    }

    fn identity(&self, x: &TypeDomain) -> Infomorphism {
        Infomorphism::identity(x)
    }

    fn compose(&self, f: &Infomorphism, g: &Infomorphism) -> Option<Infomorphism> {
        f.then(g)
    }
}
