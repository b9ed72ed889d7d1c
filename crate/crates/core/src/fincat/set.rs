use super::{CatError, Category, HomSets};
use crate::elem::{FinSet, SetFn};

/// Hom-sets larger than this are refused rather than enumerated.
pub const MAX_HOM_ENUMERATION: usize = 1 << 20;

/// The category of finite sets and total functions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SetCat;

impl Category for SetCat {
    type Obj = FinSet;
    type Mor = SetFn;

    fn source(&self, m: &SetFn) -> FinSet {
        m.dom().clone()
    }

    fn target(&self, m: &SetFn) -> FinSet {
        m.cod().clone()
    }

    fn identity(&self, x: &FinSet) -> SetFn {
        SetFn::identity(x)
    }

    fn compose(&self, f: &SetFn, g: &SetFn) -> Option<SetFn> {
        f.then(g).ok()
    }
}

impl HomSets for SetCat {
    fn hom(&self, a: &FinSet, b: &FinSet) -> Result<Vec<SetFn>, CatError> {
        let count = (b.len() as f64).powi(a.len() as i32);
        if count > MAX_HOM_ENUMERATION as f64 {
            return Err(CatError::HomEnumerationUnavailable(format!(
                "{}^{} functions",
                b.len(),
                a.len()
            )));
        }
        Ok(SetFn::all(a, b))
    }
}
