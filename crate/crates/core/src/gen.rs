//! Seeded random instances for tests, benches and the acceptance suite.
//!
//! Everything here is built so that the result is valid by construction:
//! databases satisfy the table morphism condition on every generating
//! arrow, infomorphisms satisfy the fundamental property, and indexed
//! adjunctions are strictly functorial.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{
    AdjunctionWitness, Infomorphism, ListX, Signature, SignatureMorphism, SignedDomain, Table, TableMorphism, TblA,
    TblFiberAdjunction, TypeDomain,
};
use crate::diagrams::{Database, FixedDbMorphism, FixedSchemedMorphism};
use crate::elem::{Elem, FinSet, SetFn};
use crate::fincat::{FinCategory, MorId, ObjId, Passage, SetCat};
use crate::univ::IndexedAdjunction;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for generated instances.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub sorts: usize,
    pub values: usize,
    pub keys: usize,
    pub attrs: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { sorts: 3, values: 4, keys: 4, attrs: 2 }
    }
}

/// Sorts `s0..`, values `v0..`, random incidence; every sort has a
/// nonempty extent.
pub fn type_domain(rng: &mut GenRng, b: Bounds) -> TypeDomain {
    let nx = rng.gen_range(1..=b.sorts);
    let ny = rng.gen_range(1..=b.values);
    let sorts: Vec<String> = (0..nx).map(|i| format!("s{i}")).collect();
    let values: Vec<String> = (0..ny).map(|i| format!("v{i}")).collect();
    let mut inc = Vec::new();
    for x in &sorts {
        let mut any = false;
        for y in &values {
            if rng.gen_bool(0.5) {
                inc.push((Elem::atom(y), Elem::atom(x)));
                any = true;
            }
        }
        if !any {
            inc.push((Elem::atom(values.choose(rng).expect("nonempty")), Elem::atom(x)));
        }
    }
    TypeDomain::new(FinSet::atoms(sorts), FinSet::atoms(values), inc).expect("incidence in range")
}

/// Shapes whose table diagrams are joined in the test suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    /// `L ← M → R`: the tables form a cospan, the join is a pullback.
    Cospan,
    /// `a → b`, `b → c`, `a → c` freely: two parallel paths `a → c`.
    ThreeArrow,
}

pub fn shape(kind: ShapeKind) -> FinCategory {
    match kind {
        ShapeKind::Cospan => crate::fixtures::span_shape(),
        ShapeKind::ThreeArrow => FinCategory::free_on_acyclic_graph(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
        )
        .expect("acyclic"),
    }
}

/// Non-identity morphisms that are not composites of two non-identities.
pub fn generators(c: &FinCategory) -> Vec<MorId> {
    let composites: Vec<MorId> = c
        .composable_pairs()
        .filter(|(f, g, _)| !c.is_identity(*f) && !c.is_identity(*g))
        .map(|(_, _, h)| h)
        .collect();
    c.non_identity_morphisms().filter(|m| !composites.contains(m)).collect()
}

/// Objects ordered so that every generator runs forward.
fn topological(c: &FinCategory, gens: &[MorId]) -> Vec<ObjId> {
    let mut order = Vec::new();
    let mut left: Vec<ObjId> = c.objects().collect();
    while !left.is_empty() {
        let pos = left
            .iter()
            .position(|&x| gens.iter().all(|&g| c.tgt(g) != x || order.contains(&c.src(g))))
            .expect("acyclic shape");
        order.push(left.remove(pos));
    }
    order
}

/// A random table with the given signature over `a`.
pub fn table(rng: &mut GenRng, a: &TypeDomain, sig: Signature, max_keys: usize, prefix: &str) -> Table {
    let n = rng.gen_range(0..=max_keys);
    let d = SignedDomain::new(sig, a.clone()).expect("signature over the sorts of a");
    let keys: Vec<Elem> = (0..n).map(|i| Elem::atom(format!("{prefix}{i}"))).collect();
    let rows: Vec<(Elem, Elem)> = keys
        .iter()
        .map(|k| {
            let t = d.signature().sort_fn().images().iter().map(|x| pick(rng, &a.extent(x))).collect::<Vec<_>>();
            (k.clone(), Elem::Tuple(t))
        })
        .collect();
    Table::new(d, FinSet::new(keys), rows).expect("rows drawn from extents")
}

fn pick(rng: &mut GenRng, s: &FinSet) -> Elem {
    s.get(rng.gen_range(0..s.len())).clone()
}

/// A random signature over `sorts` with at most `max_attrs` attributes.
pub fn signature(rng: &mut GenRng, sorts: &FinSet, max_attrs: usize, prefix: &str) -> Signature {
    let n = rng.gen_range(0..=max_attrs);
    Signature::from_pairs(
        FinSet::new((0..n).map(|i| Elem::atom(format!("{prefix}{i}")))),
        sorts.clone(),
        (0..n).map(|i| (Elem::atom(format!("{prefix}{i}")), pick(rng, sorts))),
    )
    .expect("total")
}

/// Every signature over `sorts` with attributes `i0..i{n-1}`, `n ≤ max`.
pub fn all_signatures(sorts: &FinSet, max: usize) -> Vec<Signature> {
    (0..=max)
        .flat_map(|n| {
            let arity = FinSet::new((0..n).map(|i| Elem::atom(format!("i{i}"))));
            SetFn::all(&arity, sorts).into_iter().map(Signature::new)
        })
        .collect()
}

/// A fixed-`A` database over a free shape, valid by construction. Tables
/// are generated along a topological order; each key of a later table
/// picks a key of every earlier neighbour and extends its row.
pub fn database(rng: &mut GenRng, a: &TypeDomain, shape: &FinCategory, b: Bounds) -> Database<TblA> {
    let gens = generators(shape);
    let mut tables: HashMap<ObjId, Table> = HashMap::new();
    let mut h_maps: HashMap<MorId, SetFn> = HashMap::new();
    let mut k_maps: HashMap<MorId, Vec<Elem>> = HashMap::new();
    let mut key_lists: HashMap<ObjId, Vec<Elem>> = HashMap::new();
    for x in topological(shape, &gens) {
        let name = shape.obj_name(x).to_lowercase();
        let incoming: Vec<MorId> = gens.iter().copied().filter(|&g| shape.tgt(g) == x).collect();
        // Signature: random attributes plus one per sort an upstream table uses.
        let mut attrs: Vec<(Elem, Elem)> = Vec::new();
        for i in 0..rng.gen_range(usize::from(incoming.is_empty())..=b.attrs) {
            attrs.push((Elem::atom(format!("{name}a{i}")), pick(rng, a.sorts())));
        }
        for &g in &incoming {
            for s in tables[&shape.src(g)].signature().sort_fn().images() {
                if !attrs.iter().any(|(_, t)| t == s) {
                    attrs.push((Elem::atom(format!("{name}a{}", attrs.len())), s.clone()));
                }
            }
        }
        let sig = Signature::from_pairs(FinSet::new(attrs.iter().map(|p| p.0.clone())), a.sorts().clone(), attrs)
            .expect("total");
        for &g in &incoming {
            let up = tables[&shape.src(g)].signature();
            let mut images = Vec::new();
            for i in up.arity() {
                let s = up.sort_of(i).expect("attribute");
                let same: Vec<&Elem> = sig.arity().iter().filter(|j| sig.sort_of(j) == Some(s)).collect();
                images.push((i.clone(), same[rng.gen_range(0..same.len())].clone()));
            }
            let h = SetFn::from_pairs(up.arity().clone(), sig.arity().clone(), images).expect("into the arity");
            h_maps.insert(g, h);
        }
        // Rows.
        let d = SignedDomain::new(sig.clone(), a.clone()).expect("same sorts");
        let n = rng.gen_range(0..=b.keys);
        let mut keys = Vec::new();
        let mut rows = Vec::new();
        let mut picks: Vec<Vec<Elem>> = vec![Vec::new(); incoming.len()];
        'key: for i in 0..n {
            for _ in 0..8 {
                let mut chosen = Vec::new();
                let mut need: HashMap<Elem, Elem> = HashMap::new();
                let mut ok = true;
                for &g in &incoming {
                    let up = &tables[&shape.src(g)];
                    if up.keys().is_empty() {
                        continue 'key;
                    }
                    let kk = pick(rng, up.keys());
                    let row = up.tuple(&kk).expect("key").as_tuple().expect("tuple");
                    for (pos, attr) in up.signature().arity().iter().enumerate() {
                        let j = h_maps[&g].apply(attr).expect("total").clone();
                        if let Some(prev) = need.insert(j, row[pos].clone()) {
                            if prev != row[pos] {
                                ok = false;
                            }
                        }
                    }
                    chosen.push(kk);
                }
                if !ok {
                    continue;
                }
                let t: Vec<Elem> = sig
                    .arity()
                    .iter()
                    .map(|j| need.get(j).cloned().unwrap_or_else(|| pick(rng, &a.extent(sig.sort_of(j).expect("attr")))))
                    .collect();
                let k = Elem::atom(format!("{name}k{i}"));
                keys.push(k.clone());
                rows.push((k, Elem::Tuple(t)));
                for (slot, kk) in picks.iter_mut().zip(chosen) {
                    slot.push(kk);
                }
                continue 'key;
            }
        }
        for (g, p) in incoming.iter().zip(picks) {
            k_maps.insert(*g, p);
        }
        tables.insert(x, Table::new(d, FinSet::new(keys.clone()), rows).expect("rows in the domain"));
        key_lists.insert(x, keys);
    }
    let arrows = gens
        .iter()
        .map(|&g| {
            let (src, tgt) = (&tables[&shape.src(g)], &tables[&shape.tgt(g)]);
            let keys = SetFn::from_pairs(
                tgt.keys().clone(),
                src.keys().clone(),
                key_lists[&shape.tgt(g)].iter().cloned().zip(k_maps[&g].iter().cloned()),
            )
            .expect("total key map");
            (g, TableMorphism::fixed(tgt.clone(), src.clone(), h_maps[&g].clone(), keys).expect("valid by construction"))
        })
        .collect();
    let objs = shape.objects().map(|x| tables[&x].clone()).collect();
    Database::from_arrows(TblA::new(a.clone()), shape.clone(), objs, arrows, true).expect("valid by construction")
}

/// An infomorphism `⟨f, g⟩ : A2 ⇄ A1` with random `A1`, `f` and `g`;
/// `A2`'s incidence is forced on the image of `g` and random elsewhere.
pub fn infomorphism(rng: &mut GenRng, b: Bounds) -> Infomorphism {
    let a1 = type_domain(rng, b);
    let nx2 = rng.gen_range(1..=b.sorts);
    let x2: Vec<Elem> = (0..nx2).map(|i| Elem::atom(format!("t{i}"))).collect();
    let f: Vec<Elem> = x2.iter().map(|_| pick(rng, a1.sorts())).collect();
    let profile = |y1: &Elem| -> Vec<bool> { f.iter().map(|fx| a1.satisfies(y1, fx)).collect() };
    let mut y2: Vec<(Elem, Vec<bool>)> = Vec::new();
    let mut g = Vec::new();
    for y1 in a1.values() {
        let p = profile(y1);
        let same: Vec<usize> = (0..y2.len()).filter(|&i| y2[i].1 == p).collect();
        let target = if !same.is_empty() && rng.gen_bool(0.4) {
            y2[*same.choose(rng).expect("nonempty")].0.clone()
        } else {
            let w = Elem::atom(format!("w{}", y2.len()));
            y2.push((w.clone(), p));
            w
        };
        g.push((y1.clone(), target));
    }
    if y2.len() < b.values && rng.gen_bool(0.5) {
        let p = (0..nx2).map(|_| rng.gen_bool(0.5)).collect();
        y2.push((Elem::atom(format!("w{}", y2.len())), p));
    }
    let inc = y2.iter().flat_map(|(y, p)| {
        x2.iter().zip(p).filter(|(_, on)| **on).map(|(x, _)| (y.clone(), x.clone())).collect::<Vec<_>>()
    });
    let a2 = TypeDomain::new(FinSet::new(x2.clone()), FinSet::new(y2.iter().map(|p| p.0.clone())), inc.collect::<Vec<_>>())
        .expect("in range");
    let fx = SetFn::from_pairs(a2.sorts().clone(), a1.sorts().clone(), x2.into_iter().zip(f)).expect("total");
    let gy = SetFn::from_pairs(a1.values().clone(), a2.values().clone(), g).expect("total");
    Infomorphism::new(a2, a1, fx, gy).expect("fundamental property by construction")
}

/// A random Set-valued diagram over a free shape: sets of size at most
/// `max`, arbitrary functions along generators.
pub fn set_diagram(rng: &mut GenRng, shape: &FinCategory, max: usize) -> Passage<SetCat> {
    let gens = generators(shape);
    loop {
        let sets: Vec<FinSet> = shape
            .objects()
            .map(|x| FinSet::new((0..rng.gen_range(0..=max)).map(|i| Elem::atom(format!("{}{i}", shape.obj_name(x))))))
            .collect();
        let mut arrows = Vec::new();
        let mut ok = true;
        for &g in &gens {
            let (s, t) = (&sets[shape.src(g).0], &sets[shape.tgt(g).0]);
            if t.is_empty() && !s.is_empty() {
                ok = false;
                break;
            }
            let images: Vec<(Elem, Elem)> = s.iter().map(|e| (e.clone(), pick(rng, t))).collect();
            arrows.push((g, SetFn::from_pairs(s.clone(), t.clone(), images).expect("total")));
        }
        if ok {
            return Passage::from_generators(shape.clone(), SetCat, sets, arrows, true).expect("free shape");
        }
    }
}

/// The chain `0 → 1 → … → n-1` as a poset.
pub fn chain(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    FinCategory::preorder(&names, |x, y| x <= y).expect("total order")
}

/// The square lattice `⊥ ≤ l, r ≤ ⊤`, objects `0, l, r, 1`.
pub fn diamond() -> FinCategory {
    let names = ["0", "l", "r", "1"];
    FinCategory::preorder(&names, |x, y| x == y || x == 0 || y == 3).expect("lattice")
}

/// Small finite lattices: chains of length 1 to 4 and the square.
pub fn lattice(rng: &mut GenRng, max: usize) -> FinCategory {
    let mut options: Vec<FinCategory> = (1..=max.min(4)).map(chain).collect();
    if max >= 4 {
        options.push(diamond());
    }
    options.swap_remove(rng.gen_range(0..options.len()))
}

/// Monotone maps between posets, each with its right adjoint.
pub fn galois_connections(lower: &FinCategory, upper: &FinCategory) -> Vec<AdjunctionWitness> {
    let le = |c: &FinCategory, x: ObjId, y: ObjId| c.homs(x, y).next().is_some();
    let mut out = Vec::new();
    for l in crate::fincat::all_passages(lower, upper) {
        // R y = the greatest x with L x ≤ y, when it exists.
        let right: Option<Vec<ObjId>> = upper
            .objects()
            .map(|y| {
                let below: Vec<ObjId> = lower.objects().filter(|&x| le(upper, *l.obj(x), y)).collect();
                below.iter().copied().find(|&m| below.iter().all(|&x| le(lower, x, m)))
            })
            .collect();
        let Some(right) = right else { continue };
        let Ok(r) = Passage::from_fn(upper.clone(), lower.clone(), |y| right[y.0], |m| {
            lower.homs(right[upper.src(m).0], right[upper.tgt(m).0]).next().expect("monotone")
        }) else {
            continue;
        };
        if let Some(w) = AdjunctionWitness::between_posets(l, r) {
            out.push(w);
        }
    }
    out
}

/// A strict indexed adjunction over a chain of at most `max_index`
/// objects, with lattice fibers of at most `max_fiber` objects and random
/// Galois connections along the chain's generators.
/// A random morphism of fixed-type-domain databases over a random
/// infomorphism: the target is a random database over `A1`, the source is
/// its transport `T1 ; tbĺ` along the same shape, and the levo components
/// are identities.
pub fn levo_db_morphism(rng: &mut GenRng, b: Bounds) -> FixedDbMorphism {
    let info = infomorphism(rng, b);
    let kind = if rng.gen_bool(0.5) { ShapeKind::Cospan } else { ShapeKind::ThreeArrow };
    let db1 = database(rng, info.target(), &shape(kind), b);
    let adj = TblFiberAdjunction::new(info.clone());
    let t2 = db1.tables().then(&adj.acute()).expect("tbĺ is a functor");
    let db2 = Database::new(db1.shape().clone(), t2).expect("transport of a database");
    let comps = db2.shape().objects().map(|r| TableMorphism::identity(db2.table(r))).collect();
    let id = Passage::identity(db1.shape());
    FixedDbMorphism::from_levo(db2, db1, id, info, comps).expect("identity levo components")
}

/// The schema-level analogue: the source schema is the target's image
/// under `f*`, with identity levo components.
pub fn levo_schemed_morphism(rng: &mut GenRng, b: Bounds) -> FixedSchemedMorphism {
    let info = infomorphism(rng, b);
    let kind = if rng.gen_bool(0.5) { ShapeKind::Cospan } else { ShapeKind::ThreeArrow };
    let db1 = database(rng, info.target(), &shape(kind), b);
    let dom = db1.schemed_domain();
    let s1 = Passage::new(
        dom.source().clone(),
        ListX::new(info.target().sorts().clone()),
        dom.object_images().iter().map(|d| d.signature().clone()).collect(),
        dom.morphism_images().iter().map(|m| m.signature_morphism()).collect(),
    )
    .expect("schema of a database");
    let adj = TblFiberAdjunction::new(info.clone());
    let s2 = s1.then(&adj.list().f_star()).expect("f* is a functor");
    let levo = s2.object_images().iter().map(SignatureMorphism::identity).collect();
    let id = Passage::identity(s1.source());
    FixedSchemedMorphism::from_levo(s2, s1, id, info, levo).expect("identity levo components")
}

pub fn indexed_adjunction(rng: &mut GenRng, max_index: usize, max_fiber: usize) -> IndexedAdjunction {
    let index = chain(rng.gen_range(1..=max_index));
    let fibers: Vec<FinCategory> = index.objects().map(|_| lattice(rng, max_fiber)).collect();
    let mut step: HashMap<usize, AdjunctionWitness> = HashMap::new();
    for i in 0..index.n_objects().saturating_sub(1) {
        let options = galois_connections(&fibers[i], &fibers[i + 1]);
        step.insert(i, options.choose(rng).expect("the constant-bottom map always has a right adjoint").clone());
    }
    let adjunctions = index
        .morphisms()
        .map(|m| {
            let (s, t) = (index.src(m).0, index.tgt(m).0);
            let mut w = AdjunctionWitness::identity(&fibers[s]);
            for i in s..t {
                w = w.then(&step[&i]).expect("composable");
            }
            w
        })
        .collect();
    IndexedAdjunction::new(index, fibers, adjunctions).expect("strict by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_databases_are_valid() {
        let mut r = rng(7);
        for kind in [ShapeKind::Cospan, ShapeKind::ThreeArrow] {
            for _ in 0..20 {
                let a = type_domain(&mut r, Bounds::default());
                let db = database(&mut r, &a, &shape(kind), Bounds::default());
                assert!(db.arrow_violations().is_empty());
            }
        }
    }

    #[test]
    fn generated_infomorphisms_and_indexed_adjunctions() {
        let mut r = rng(11);
        for _ in 0..20 {
            infomorphism(&mut r, Bounds::default());
            let ix = indexed_adjunction(&mut r, 3, 4);
            assert!(ix.index.n_objects() <= 3);
        }
    }

    #[test]
    fn chain_generators() {
        assert_eq!(generators(&chain(3)).len(), 2);
        assert_eq!(generators(&shape(ShapeKind::ThreeArrow)).len(), 3);
        assert_eq!(galois_connections(&chain(1), &chain(2)).len(), 1);
    }
}
