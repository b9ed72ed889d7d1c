//! The on-disk workspace document. Everything is strings: sets are arrays,
//! functions are `[from, to]` pairs, entities refer to each other by name.

use serde::{Deserialize, Serialize};

pub type Pairs = Vec<(String, String)>;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Document {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub typedomains: Vec<TypeDomainDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub infomorphisms: Vec<InfomorphismDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub signatures: Vec<SignatureDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<TableDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub shapes: Vec<ShapeDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub databases: Vec<DatabaseDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismDoc>,
    /// Set-valued diagrams, for `limit`, `colimit` and `kan`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<DiagramDoc>,
    /// Passages between shapes, for `kan`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub passages: Vec<PassageDoc>,
    /// Indexed categories, for `groth`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indexed: Vec<IndexedDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeDomainDoc {
    pub name: String,
    pub sorts: Vec<String>,
    pub values: Vec<String>,
    /// `[value, sort]`.
    pub incidence: Pairs,
}

/// `f` runs over sorts from `source` to `target`, `g` over values the
/// other way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfomorphismDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub f: Pairs,
    pub g: Pairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureDoc {
    pub name: String,
    pub typedomain: String,
    /// `[attribute, sort]`.
    pub attrs: Pairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub name: String,
    pub signature: String,
    pub rows: Vec<RowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    pub key: String,
    /// `[attribute, value]`.
    pub values: Pairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeDoc {
    pub name: String,
    #[serde(flatten)]
    pub body: ShapeBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeBody {
    FreeAcyclic(FreeAcyclicDoc),
    Extensional(ExtensionalDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeAcyclicDoc {
    pub nodes: Vec<String>,
    /// `[name, source, target]`.
    pub edges: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionalDoc {
    pub objects: Vec<String>,
    /// `[name, source, target]`, identities included.
    pub morphisms: Vec<(String, String, String)>,
    /// `[object, identity morphism]`.
    pub identities: Pairs,
    /// `[f, g, f;g]`, diagrammatic order.
    pub composition: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatabaseDoc {
    pub name: String,
    pub shape: String,
    /// `[shape object, table]`.
    pub tables: Pairs,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

/// For a shape arrow `r: a → b`: `h` maps attributes of `T_a` to those of
/// `T_b`, `k` maps keys of `T_b` to those of `T_a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub arrow: String,
    pub h: Pairs,
    pub k: Pairs,
    /// Needed only when the two tables live over different type domains.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infomorphism: Option<String>,
}

/// A database morphism `source → target`: a shape passage from the
/// source shape to the target shape and, per source shape object `r`, a
/// component from the target's table at `R r` to the source's table at `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: Pairs,
    /// Images of generating arrows; the rest are composed.
    #[serde(default)]
    pub arrows: Pairs,
    pub components: Vec<ComponentDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub object: String,
    pub h: Pairs,
    pub k: Pairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub name: String,
    pub shape: String,
    pub sets: Vec<(String, Vec<String>)>,
    #[serde(default)]
    pub maps: Vec<MapDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub arrow: String,
    pub pairs: Pairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PassageDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: Pairs,
    #[serde(default)]
    pub arrows: Pairs,
}

/// An index shape with a fiber shape per object and, per non-identity
/// index morphism, a covariant and/or contravariant fiber passage. With
/// both, fibers must be preorders so the adjunctions are determined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexedDoc {
    pub name: String,
    pub index: String,
    pub fibers: Pairs,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub acute: Vec<FiberPassageDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grave: Vec<FiberPassageDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberPassageDoc {
    pub morphism: String,
    pub objects: Pairs,
    #[serde(default)]
    pub arrows: Pairs,
}

impl Document {
    /// Entities sorted by name, pair lists sorted, duplicates dropped.
    /// Order inside tuples (edges, incidence) is meaningful and kept.
    pub fn canonical(mut self) -> Self {
        fn sp(p: &mut Pairs) {
            p.sort();
            p.dedup();
        }
        fn ss(s: &mut Vec<String>) {
            s.sort();
            s.dedup();
        }
        self.typedomains.sort_by(|a, b| a.name.cmp(&b.name));
        for t in &mut self.typedomains {
            ss(&mut t.sorts);
            ss(&mut t.values);
            sp(&mut t.incidence);
        }
        self.infomorphisms.sort_by(|a, b| a.name.cmp(&b.name));
        for i in &mut self.infomorphisms {
            sp(&mut i.f);
            sp(&mut i.g);
        }
        self.signatures.sort_by(|a, b| a.name.cmp(&b.name));
        for s in &mut self.signatures {
            sp(&mut s.attrs);
        }
        self.tables.sort_by(|a, b| a.name.cmp(&b.name));
        for t in &mut self.tables {
            t.rows.sort_by(|a, b| a.key.cmp(&b.key));
            for r in &mut t.rows {
                sp(&mut r.values);
            }
        }
        self.shapes.sort_by(|a, b| a.name.cmp(&b.name));
        for s in &mut self.shapes {
            match &mut s.body {
                ShapeBody::FreeAcyclic(f) => {
                    ss(&mut f.nodes);
                    f.edges.sort();
                    f.edges.dedup();
                }
                ShapeBody::Extensional(e) => {
                    ss(&mut e.objects);
                    e.morphisms.sort();
                    e.morphisms.dedup();
                    sp(&mut e.identities);
                    e.composition.sort();
                    e.composition.dedup();
                }
            }
        }
        self.databases.sort_by(|a, b| a.name.cmp(&b.name));
        for d in &mut self.databases {
            sp(&mut d.tables);
            d.arrows.sort_by(|a, b| a.arrow.cmp(&b.arrow));
            for a in &mut d.arrows {
                sp(&mut a.h);
                sp(&mut a.k);
            }
        }
        self.morphisms.sort_by(|a, b| a.name.cmp(&b.name));
        for m in &mut self.morphisms {
            sp(&mut m.objects);
            sp(&mut m.arrows);
            m.components.sort_by(|a, b| a.object.cmp(&b.object));
            for c in &mut m.components {
                sp(&mut c.h);
                sp(&mut c.k);
            }
        }
        self.diagrams.sort_by(|a, b| a.name.cmp(&b.name));
        for d in &mut self.diagrams {
            d.sets.sort();
            for (_, s) in &mut d.sets {
                ss(s);
            }
            d.maps.sort_by(|a, b| a.arrow.cmp(&b.arrow));
            for m in &mut d.maps {
                sp(&mut m.pairs);
            }
        }
        self.passages.sort_by(|a, b| a.name.cmp(&b.name));
        for p in &mut self.passages {
            sp(&mut p.objects);
            sp(&mut p.arrows);
        }
        self.indexed.sort_by(|a, b| a.name.cmp(&b.name));
        for ix in &mut self.indexed {
            sp(&mut ix.fibers);
            for ps in [&mut ix.acute, &mut ix.grave] {
                ps.sort_by(|a, b| a.morphism.cmp(&b.morphism));
                for p in ps.iter_mut() {
                    sp(&mut p.objects);
                    sp(&mut p.arrows);
                }
            }
        }
        self
    }
}
