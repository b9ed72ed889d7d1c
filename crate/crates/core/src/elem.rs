//! Finite sets of structured elements and total functions between them.
//!
//! Everything in the crate that is "a set" at desk scale (sorts, values,
//! arities, key sets, tuple sets, limit vertices) is a [`FinSet`] of
//! [`Elem`]s. Sets are kept sorted and deduplicated so that equality is
//! structural and iteration order is canonical.

use std::fmt;

use thiserror::Error;

/// An element of a finite set.
///
/// Atoms come from user input. Tuples and tags are produced by
/// constructions: families in a limit are tuples, elements of a disjoint
/// union are tagged with the index object they came from.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Atom(String),
    Tuple(Vec<Elem>),
    Tag(String, Box<Elem>),
}

impl Elem {
    pub fn atom(s: impl Into<String>) -> Self {
        Elem::Atom(s.into())
    }

    pub fn tuple(items: impl IntoIterator<Item = Elem>) -> Self {
        Elem::Tuple(items.into_iter().collect())
    }

    pub fn tag(label: impl Into<String>, inner: Elem) -> Self {
        Elem::Tag(label.into(), Box::new(inner))
    }

    pub fn pair(a: Elem, b: Elem) -> Self {
        Elem::Tuple(vec![a, b])
    }

    /// Components of a tuple element, if this is one.
    pub fn as_tuple(&self) -> Option<&[Elem]> {
        match self {
            Elem::Tuple(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => f.write_str(s),
            Elem::Tuple(items) => {
                f.write_str("(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            Elem::Tag(label, inner) => write!(f, "{label}.{inner}"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Elem {
    fn from(s: &str) -> Self {
        Elem::Atom(s.to_owned())
    }
}

impl From<String> for Elem {
    fn from(s: String) -> Self {
        Elem::Atom(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("function is not defined on {0}")]
    NotTotal(Elem),
    #[error("function assigns two images to {0}")]
    NotSingleValued(Elem),
    #[error("{0} is not in the declared domain")]
    OutsideDomain(Elem),
    #[error("image {image} of {arg} is not in the codomain")]
    OutsideCodomain { arg: Elem, image: Elem },
    #[error("cannot compose: codomain of the first function differs from the domain of the second")]
    NotComposable,
}

/// A finite set, stored sorted and without duplicates.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet(Vec<Elem>);

impl FinSet {
    pub fn new(items: impl IntoIterator<Item = Elem>) -> Self {
        let mut v: Vec<Elem> = items.into_iter().collect();
        v.sort();
        v.dedup();
        FinSet(v)
    }

    pub fn empty() -> Self {
        FinSet(Vec::new())
    }

    pub fn singleton(e: Elem) -> Self {
        FinSet(vec![e])
    }

    /// Build from atoms, e.g. `FinSet::atoms(["p", "q"])`.
    pub fn atoms<S: Into<String>>(items: impl IntoIterator<Item = S>) -> Self {
        Self::new(items.into_iter().map(|s| Elem::Atom(s.into())))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.0.binary_search(e).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Elem {
        &self.0[i]
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }
}

impl FromIterator<Elem> for FinSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Elem;
    type IntoIter = std::slice::Iter<'a, Elem>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A total function between finite sets. Images are stored aligned with
/// the (sorted) domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFn {
    dom: FinSet,
    cod: FinSet,
    images: Vec<Elem>,
}

impl SetFn {
    /// Build from an explicit graph. Every domain element must appear
    /// exactly once and land in the codomain.
    pub fn from_pairs(
        dom: FinSet,
        cod: FinSet,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, SetError> {
        let mut slots: Vec<Option<Elem>> = vec![None; dom.len()];
        for (a, b) in pairs {
            let i = dom.index_of(&a).ok_or_else(|| SetError::OutsideDomain(a.clone()))?;
            if !cod.contains(&b) {
                return Err(SetError::OutsideCodomain { arg: a, image: b });
            }
            match &slots[i] {
                Some(prev) if *prev != b => return Err(SetError::NotSingleValued(a)),
                _ => slots[i] = Some(b),
            }
        }
        let mut images = Vec::with_capacity(dom.len());
        for (i, s) in slots.into_iter().enumerate() {
            images.push(s.ok_or_else(|| SetError::NotTotal(dom.get(i).clone()))?);
        }
        Ok(SetFn { dom, cod, images })
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(&Elem) -> Elem) -> Result<Self, SetError> {
        let images: Vec<Elem> = dom.iter().map(&f).collect();
        for (a, b) in dom.iter().zip(&images) {
            if !cod.contains(b) {
                return Err(SetError::OutsideCodomain { arg: a.clone(), image: b.clone() });
            }
        }
        Ok(SetFn { dom, cod, images })
    }

    /// Images given positionally (aligned with the sorted domain). The
    /// caller guarantees they lie in the codomain.
    pub(crate) fn from_images_unchecked(dom: FinSet, cod: FinSet, images: Vec<Elem>) -> Self {
        debug_assert_eq!(dom.len(), images.len());
        SetFn { dom, cod, images }
    }

    pub fn identity(set: &FinSet) -> Self {
        SetFn { dom: set.clone(), cod: set.clone(), images: set.as_slice().to_vec() }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, e: &Elem) -> Option<&Elem> {
        self.dom.index_of(e).map(|i| &self.images[i])
    }

    pub fn at(&self, i: usize) -> &Elem {
        &self.images[i]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Elem, &Elem)> {
        self.dom.iter().zip(self.images.iter())
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &SetFn) -> Result<SetFn, SetError> {
        if self.cod != next.dom {
            return Err(SetError::NotComposable);
        }
        let images = self
            .images
            .iter()
            .map(|b| next.apply(b).cloned().expect("codomain checked"))
            .collect();
        Ok(SetFn { dom: self.dom.clone(), cod: next.cod.clone(), images })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.dom.as_slice() == self.images.as_slice()
    }

    pub fn is_injective(&self) -> bool {
        let img: FinSet = self.images.iter().cloned().collect();
        img.len() == self.images.len()
    }

    /// The same graph with the codomain replaced (must still contain the
    /// image).
    pub fn with_codomain(&self, cod: FinSet) -> Result<SetFn, SetError> {
        SetFn::from_pairs(self.dom.clone(), cod, self.pairs().map(|(a, b)| (a.clone(), b.clone())))
    }

    /// Every function `dom -> cod`, in lexicographic order of image
    /// vectors. There are `|cod|^|dom|` of them.
    pub fn all(dom: &FinSet, cod: &FinSet) -> Vec<SetFn> {
        let mut out = Vec::new();
        for images in product_choices(&vec![cod.as_slice().to_vec(); dom.len()]) {
            out.push(SetFn { dom: dom.clone(), cod: cod.clone(), images });
        }
        out
    }
}

impl fmt::Debug for SetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// Cartesian product of per-position choice lists, in lexicographic order.
/// An empty outer list yields a single empty choice.
pub fn product_choices<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[&str]) -> FinSet {
        FinSet::atoms(items.iter().copied())
    }

    #[test]
    fn finset_is_canonical() {
        assert_eq!(s(&["b", "a", "b"]), s(&["a", "b"]));
        assert_eq!(s(&["b", "a"]).as_slice()[0], Elem::atom("a"));
    }

    #[test]
    fn function_must_be_total_and_single_valued() {
        let d = s(&["a", "b"]);
        let c = s(&["1"]);
        assert!(matches!(
            SetFn::from_pairs(d.clone(), c.clone(), [("a".into(), "1".into())]),
            Err(SetError::NotTotal(_))
        ));
        assert!(matches!(
            SetFn::from_pairs(d.clone(), s(&["1", "2"]), [
                ("a".into(), "1".into()),
                ("a".into(), "2".into()),
                ("b".into(), "1".into())
            ]),
            Err(SetError::NotSingleValued(_))
        ));
        assert!(matches!(
            SetFn::from_pairs(d, c, [("a".into(), "9".into()), ("b".into(), "1".into())]),
            Err(SetError::OutsideCodomain { .. })
        ));
    }

    #[test]
    fn composition_is_diagrammatic() {
        let f = SetFn::from_fn(s(&["a", "b"]), s(&["x", "y"]), |e| {
            if *e == Elem::atom("a") { "x".into() } else { "y".into() }
        })
        .unwrap();
        let g = SetFn::from_fn(s(&["x", "y"]), s(&["1"]), |_| "1".into()).unwrap();
        let fg = f.then(&g).unwrap();
        assert_eq!(fg.apply(&"b".into()), Some(&Elem::atom("1")));
        assert!(g.then(&f).is_err());
    }

    #[test]
    fn all_functions_counts() {
        assert_eq!(SetFn::all(&s(&["a", "b"]), &s(&["1", "2", "3"])).len(), 9);
        assert_eq!(SetFn::all(&FinSet::empty(), &FinSet::empty()).len(), 1);
        assert_eq!(SetFn::all(&s(&["a"]), &FinSet::empty()).len(), 0);
    }

    #[test]
    fn display_nests() {
        let e = Elem::tag("L", Elem::tuple([Elem::atom("k1"), Elem::atom("m1")]));
        assert_eq!(e.to_string(), "L.(k1,m1)");
    }
}
