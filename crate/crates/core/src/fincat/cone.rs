use super::{CatError, Category, Functor, HomSets, Passage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeKind {
    /// Legs run from the vertex to the diagram.
    Limit,
    /// Legs run from the diagram to the vertex.
    Colimit,
}

/// A cone (or cocone) over a diagram, one leg per object of the diagram's
/// source category.
#[derive(Debug, Clone, PartialEq)]
pub struct Cone<T: Category> {
    pub kind: ConeKind,
    pub vertex: T::Obj,
    pub legs: Vec<T::Mor>,
}

impl<T: Category> Cone<T> {
    pub fn new(
        diagram: &Passage<T>,
        kind: ConeKind,
        vertex: T::Obj,
        legs: Vec<T::Mor>,
    ) -> Result<Self, CatError> {
        let c = Cone { kind, vertex, legs };
        c.check_over(diagram)?;
        Ok(c)
    }

    /// Leg endpoints and commutation with every diagram morphism.
    pub fn check_over(&self, diagram: &Passage<T>) -> Result<(), CatError> {
        let shape = diagram.source();
        let t = diagram.target();
        if self.legs.len() != shape.n_objects() {
            return Err(CatError::NotACone(format!(
                "{} legs for {} diagram objects",
                self.legs.len(),
                shape.n_objects()
            )));
        }
        for x in shape.objects() {
            let leg = &self.legs[x.0];
            let (s, e) = (t.source(leg), t.target(leg));
            let ok = match self.kind {
                ConeKind::Limit => s == self.vertex && e == *diagram.obj(x),
                ConeKind::Colimit => s == *diagram.obj(x) && e == self.vertex,
            };
            if !ok {
                return Err(CatError::NotACone(format!("leg at {} has the wrong endpoints", shape.obj_name(x))));
            }
        }
        for m in shape.morphisms() {
            let (x, y) = (shape.src(m), shape.tgt(m));
            let commutes = match self.kind {
                ConeKind::Limit => t.compose(&self.legs[x.0], diagram.mor(m)).as_ref() == Some(&self.legs[y.0]),
                ConeKind::Colimit => t.compose(diagram.mor(m), &self.legs[y.0]).as_ref() == Some(&self.legs[x.0]),
            };
            if !commutes {
                return Err(CatError::NotACone(format!("legs do not commute with {}", shape.mor_name(m))));
            }
        }
        Ok(())
    }

    /// Does `m` factor this cone through `through` (the candidate universal
    /// cone)? For limits `m : vertex -> through.vertex` with `m ; λ = μ`; for
    /// colimits `m : through.vertex -> vertex` with `λ ; m = μ`.
    pub fn factors_through(&self, cat: &T, through: &Cone<T>, m: &T::Mor) -> bool {
        self.legs.iter().zip(&through.legs).all(|(mu, lambda)| {
            let composite = match self.kind {
                ConeKind::Limit => cat.compose(m, lambda),
                ConeKind::Colimit => cat.compose(lambda, m),
            };
            composite.as_ref() == Some(mu)
        })
    }

    /// Image of the cone under a functor.
    pub fn map<F: Functor<Src = T>>(&self, f: &F) -> Cone<F::Tgt> {
        Cone {
            kind: self.kind,
            vertex: f.on_obj(&self.vertex),
            legs: self.legs.iter().map(|l| f.on_mor(l)).collect(),
        }
    }
}

/// Every cone of the given kind with the given vertex, by backtracking over
/// leg choices and pruning on commutation.
pub fn all_cones<T: HomSets>(
    diagram: &Passage<T>,
    kind: ConeKind,
    vertex: &T::Obj,
) -> Result<Vec<Cone<T>>, CatError> {
    let shape = diagram.source();
    let t = diagram.target();
    let mut options = Vec::with_capacity(shape.n_objects());
    for x in shape.objects() {
        options.push(match kind {
            ConeKind::Limit => t.hom(vertex, diagram.obj(x))?,
            ConeKind::Colimit => t.hom(diagram.obj(x), vertex)?,
        });
    }
    let mut out = Vec::new();
    let mut chosen: Vec<T::Mor> = Vec::with_capacity(options.len());
    fn consistent<T: Category>(diagram: &Passage<T>, kind: ConeKind, chosen: &[T::Mor]) -> bool {
        let shape = diagram.source();
        let t = diagram.target();
        let n = chosen.len();
        shape.morphisms().all(|m| {
            let (x, y) = (shape.src(m).0, shape.tgt(m).0);
            if x >= n || y >= n || (x != n - 1 && y != n - 1) {
                return true;
            }
            match kind {
                ConeKind::Limit => t.compose(&chosen[x], diagram.mor(m)).as_ref() == Some(&chosen[y]),
                ConeKind::Colimit => t.compose(diagram.mor(m), &chosen[y]).as_ref() == Some(&chosen[x]),
            }
        })
    }
    fn go<T: Category>(
        diagram: &Passage<T>,
        kind: ConeKind,
        vertex: &T::Obj,
        options: &[Vec<T::Mor>],
        chosen: &mut Vec<T::Mor>,
        out: &mut Vec<Cone<T>>,
    ) {
        let i = chosen.len();
        if i == options.len() {
            out.push(Cone { kind, vertex: vertex.clone(), legs: chosen.clone() });
            return;
        }
        for m in &options[i] {
            chosen.push(m.clone());
            if consistent(diagram, kind, chosen) {
                go(diagram, kind, vertex, options, chosen, out);
            }
            chosen.pop();
        }
    }
    go(diagram, kind, vertex, &options, &mut chosen, &mut out);
    Ok(out)
}
