use super::{LimitResult, UnivError};
use crate::fincat::{
    all_cones, all_passages, compose_passages, CatError, Category, Cone, ConeKind, FinCategory, Functor, HomSets,
    Passage,
};
use crate::par::Exec;

/// Morphisms between the two vertices that factor `c` through `through`.
fn factorizations<T: HomSets>(cat: &T, c: &Cone<T>, through: &Cone<T>) -> Result<Vec<T::Mor>, CatError> {
    let homs = match c.kind {
        ConeKind::Limit => cat.hom(&c.vertex, &through.vertex)?,
        ConeKind::Colimit => cat.hom(&through.vertex, &c.vertex)?,
    };
    Ok(homs.into_iter().filter(|m| c.factors_through(cat, through, m)).collect())
}

/// Exhaustive search for a universal cone among all cones whose vertex is
/// in `pool`. A cone is universal when every cone in the search space
/// factors through it in exactly one way.
pub fn oracle_universal<T: HomSets + 'static>(
    pool: &[T::Obj],
    d: &Passage<T>,
    kind: ConeKind,
) -> Result<LimitResult<T>, UnivError> {
    oracle_universal_with(Exec::default(), pool, d, kind)
}

/// [`oracle_universal`] with the candidate scan run under `exec`.
pub fn oracle_universal_with<T: HomSets + 'static>(
    exec: Exec,
    pool: &[T::Obj],
    d: &Passage<T>,
    kind: ConeKind,
) -> Result<LimitResult<T>, UnivError> {
    let cat = d.target();
    let mut cones = Vec::new();
    for v in pool {
        cones.extend(all_cones(d, kind, v)?);
    }
    let flags = exec.map(&cones, |u| {
        cones.iter().all(|c| factorizations(cat, c, u).map(|f| f.len() == 1).unwrap_or(false))
    });
    let universal: Vec<&Cone<T>> = cones.iter().zip(flags).filter(|(_, ok)| *ok).map(|(c, _)| c).collect();
    let Some(&first) = universal.first() else {
        return Err(UnivError::NoUniversalCone);
    };
    for other in &universal[1..] {
        let there = factorizations(cat, other, first)?;
        let back = factorizations(cat, first, other)?;
        let (u, v) = (&there[0], &back[0]);
        let (round1, round2) = match kind {
            ConeKind::Limit => (cat.compose(u, v), cat.compose(v, u)),
            ConeKind::Colimit => (cat.compose(v, u), cat.compose(u, v)),
        };
        let id_first = cat.identity(&first.vertex);
        let id_other = cat.identity(&other.vertex);
        let iso = match kind {
            ConeKind::Limit => round1 == Some(id_other) && round2 == Some(id_first),
            ConeKind::Colimit => round1 == Some(id_other) && round2 == Some(id_first),
        };
        if !iso {
            return Err(UnivError::NonIsomorphicUniversalCones);
        }
    }
    let cone = first.clone();
    let through = cone.clone();
    let cat = cat.clone();
    Ok(LimitResult::new(d.clone(), cone, move |c: &Cone<T>| {
        let fs = factorizations(&cat, c, &through)?;
        match fs.len() {
            1 => Ok(fs.into_iter().next().expect("one")),
            0 => Err(UnivError::NoMediator("no morphism factors the candidate".into())),
            n => Err(UnivError::NonUniqueMediator(n)),
        }
    }))
}

/// [`oracle_universal`] over every object of a finite category.
pub fn oracle_universal_fin(d: &Passage<FinCategory>, kind: ConeKind) -> Result<LimitResult<FinCategory>, UnivError> {
    let pool: Vec<_> = d.target().objects().collect();
    oracle_universal(&pool, d, kind)
}

/// Outcome of checking that a passage preserves one universal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityReport {
    /// The image of the cone is a cone over the image diagram.
    pub image_is_cone: bool,
    /// Candidate vertices (by pool index) whose cones do not factor
    /// uniquely through the image cone.
    pub failures: Vec<usize>,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.image_is_cone && self.failures.is_empty()
    }
}

/// Whether `f` maps the universal cone of `universal` to a universal cone,
/// tested against every cone over the image diagram with vertex in `pool`.
pub fn check_continuity<F>(
    f: &F,
    universal: &LimitResult<F::Src>,
    pool: &[<F::Tgt as Category>::Obj],
) -> Result<ContinuityReport, UnivError>
where
    F: Functor,
    F::Src: Category + 'static,
    F::Tgt: HomSets,
{
    let image = universal.diagram.then(f)?;
    let cone = universal.cone.map(f);
    if cone.check_over(&image).is_err() {
        return Ok(ContinuityReport { image_is_cone: false, failures: vec![] });
    }
    let cat = image.target();
    let mut failures = Vec::new();
    for (i, v) in pool.iter().enumerate() {
        for c in all_cones(&image, cone.kind, v)? {
            if factorizations(cat, &c, &cone)?.len() != 1 {
                failures.push(i);
                break;
            }
        }
    }
    Ok(ContinuityReport { image_is_cone: true, failures })
}

/// Finite categories and passages, with hom-sets by enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CxtCat;

impl Category for CxtCat {
    type Obj = FinCategory;
    type Mor = Passage<FinCategory>;

    fn source(&self, m: &Passage<FinCategory>) -> FinCategory {
        m.source().clone()
    }

    fn target(&self, m: &Passage<FinCategory>) -> FinCategory {
        m.target().clone()
    }

    fn identity(&self, x: &FinCategory) -> Passage<FinCategory> {
        Passage::identity(x)
    }

    fn compose(&self, f: &Passage<FinCategory>, g: &Passage<FinCategory>) -> Option<Passage<FinCategory>> {
        compose_passages(f, g).ok()
    }
}

impl HomSets for CxtCat {
    fn hom(&self, a: &FinCategory, b: &FinCategory) -> Result<Vec<Passage<FinCategory>>, CatError> {
        Ok(all_passages(a, b))
    }
}
