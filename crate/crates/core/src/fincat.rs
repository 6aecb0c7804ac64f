//! Finite categories, functors, Set-valued functors and natural
//! transformations, all as explicit tables.
//!
//! Object and morphism identifiers are stable strings; every derived
//! construction (opposite, product, ...) produces deterministic identifiers
//! so that results are reproducible and diffable. Equality of categories is
//! identifier-exact: same object list, same morphism table, same
//! composition map. Names of categories are cosmetic and ignored.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A morphism entry: identifier plus source/target object indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morph {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category as object/morphism tables with a total composition map.
#[derive(Clone, Debug)]
pub struct FinCat {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<Morph>,
    /// Index of the identity morphism of each object.
    pub identity: Vec<usize>,
    /// `(g, f) -> g∘f` for exactly the composable pairs (src g = dst f).
    compose: HashMap<(usize, usize), usize>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.compose == other.compose
    }
}
impl Eq for FinCat {}

impl FinCat {
    /// Build a category from raw tables. Checks structural well-formedness
    /// (unique identifiers, indices in range, identity endpoints) but not
    /// the category laws; see [`validate_category`] for those.
    pub fn assemble(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<Morph>,
        identity: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<FinCat> {
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate object id {o:?}")));
            }
        }
        let mut mor_index = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= objects.len() || m.dst >= objects.len() {
                return Err(Error::Validation(format!("morphism {:?} endpoint out of range", m.id)));
            }
            if mor_index.insert(m.id.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate morphism id {:?}", m.id)));
            }
        }
        if identity.len() != objects.len() {
            return Err(Error::Validation("identity table length mismatch".into()));
        }
        for (x, &i) in identity.iter().enumerate() {
            let m = morphisms
                .get(i)
                .ok_or_else(|| Error::Validation("identity index out of range".into()))?;
            if m.src != x || m.dst != x {
                return Err(Error::Validation(format!(
                    "identity of {:?} has wrong endpoints",
                    objects[x]
                )));
            }
        }
        for (&(g, f), &h) in &compose {
            if g >= morphisms.len() || f >= morphisms.len() || h >= morphisms.len() {
                return Err(Error::Validation("composition index out of range".into()));
            }
        }
        Ok(FinCat { name: name.into(), objects, morphisms, identity, compose, obj_index, mor_index })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }
    pub fn obj(&self, id: &str) -> Option<usize> {
        self.obj_index.get(id).copied()
    }
    pub fn mor(&self, id: &str) -> Option<usize> {
        self.mor_index.get(id).copied()
    }
    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.morphisms[m].src] == m
    }
    /// `g∘f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }
    /// `g∘f` for a pair known to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[&(g, f)]
    }
    pub fn compose_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }
    /// Morphisms x → y, in table order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == x && self.morphisms[m].dst == y)
            .collect()
    }
    /// Compose a chain `ms[k-1] ∘ ... ∘ ms[0]`; identity of `at` when empty.
    pub fn compose_chain(&self, at: usize, ms: &[usize]) -> usize {
        let mut acc = self.identity[at];
        for &m in ms {
            acc = self.comp(m, acc);
        }
        acc
    }
}

/// A violated category law, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    Closure { g: String, f: String, detail: String },
    IdentityLaw { m: String, detail: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::Closure { g, f, detail } => {
                write!(w, "closure violation at ({g}, {f}): {detail}")
            }
            LawViolation::IdentityLaw { m, detail } => {
                write!(w, "identity-law violation at {m}: {detail}")
            }
            LawViolation::Associativity { h, g, f } => {
                write!(w, "associativity violation at ({h}, {g}, {f})")
            }
        }
    }
}

/// Check the category laws exhaustively, returning the first violation in a
/// deterministic scan order: closure, then identity laws, then
/// associativity.
pub fn validate_category(c: &FinCat) -> std::result::Result<(), LawViolation> {
    // closure: compose defined for exactly the composable pairs, with
    // correct endpoints
    for g in 0..c.n_morphisms() {
        for f in 0..c.n_morphisms() {
            let composable = c.morphisms[g].src == c.morphisms[f].dst;
            match c.compose(g, f) {
                Some(h) if !composable => {
                    return Err(LawViolation::Closure {
                        g: c.morphisms[g].id.clone(),
                        f: c.morphisms[f].id.clone(),
                        detail: format!("non-composable pair has composite {}", c.morphisms[h].id),
                    })
                }
                Some(h) => {
                    let m = &c.morphisms[h];
                    if m.src != c.morphisms[f].src || m.dst != c.morphisms[g].dst {
                        return Err(LawViolation::Closure {
                            g: c.morphisms[g].id.clone(),
                            f: c.morphisms[f].id.clone(),
                            detail: format!("composite {} has wrong endpoints", m.id),
                        });
                    }
                }
                None if composable => {
                    return Err(LawViolation::Closure {
                        g: c.morphisms[g].id.clone(),
                        f: c.morphisms[f].id.clone(),
                        detail: "composable pair has no composite".into(),
                    })
                }
                None => {}
            }
        }
    }
    for f in 0..c.n_morphisms() {
        let (x, y) = (c.morphisms[f].src, c.morphisms[f].dst);
        if c.compose(c.identity[y], f) != Some(f) {
            return Err(LawViolation::IdentityLaw {
                m: c.morphisms[f].id.clone(),
                detail: "id ∘ f ≠ f".into(),
            });
        }
        if c.compose(f, c.identity[x]) != Some(f) {
            return Err(LawViolation::IdentityLaw {
                m: c.morphisms[f].id.clone(),
                detail: "f ∘ id ≠ f".into(),
            });
        }
    }
    for h in 0..c.n_morphisms() {
        for g in 0..c.n_morphisms() {
            if c.morphisms[h].src != c.morphisms[g].dst {
                continue;
            }
            for f in 0..c.n_morphisms() {
                if c.morphisms[g].src != c.morphisms[f].dst {
                    continue;
                }
                let left = c.comp(h, c.comp(g, f));
                let right = c.comp(c.comp(h, g), f);
                if left != right {
                    return Err(LawViolation::Associativity {
                        h: c.morphisms[h].id.clone(),
                        g: c.morphisms[g].id.clone(),
                        f: c.morphisms[f].id.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The opposite category. Keeps every identifier, so
/// `opposite(opposite(c)) == c` exactly.
pub fn opposite(c: &Arc<FinCat>) -> Arc<FinCat> {
    let morphisms = c
        .morphisms
        .iter()
        .map(|m| Morph { id: m.id.clone(), src: m.dst, dst: m.src })
        .collect();
    let compose = c.compose.iter().map(|(&(g, f), &h)| ((f, g), h)).collect();
    let name = match c.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", c.name),
    };
    Arc::new(
        FinCat::assemble(name, c.objects.clone(), morphisms, c.identity.clone(), compose).unwrap(),
    )
}

/// Index of the product object `(x, y)`; objects are enumerated row-major
/// in the first factor.
pub fn product_obj_index(b: &FinCat, x: usize, y: usize) -> usize {
    x * b.n_objects() + y
}

/// Index of the product morphism `(f, g)`, row-major in the first factor.
pub fn product_mor_index(b: &FinCat, f: usize, g: usize) -> usize {
    f * b.n_morphisms() + g
}

/// The product category. Objects `(x,y)` and morphisms `(f,g)` are pairs,
/// composition is componentwise.
pub fn product(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Arc<FinCat> {
    let mut objects = Vec::with_capacity(a.n_objects() * b.n_objects());
    for x in &a.objects {
        for y in &b.objects {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut morphisms = Vec::with_capacity(a.n_morphisms() * b.n_morphisms());
    for f in &a.morphisms {
        for g in &b.morphisms {
            morphisms.push(Morph {
                id: format!("({},{})", f.id, g.id),
                src: f.src * b.n_objects() + g.src,
                dst: f.dst * b.n_objects() + g.dst,
            });
        }
    }
    let identity = (0..objects.len())
        .map(|p| {
            let (x, y) = (p / b.n_objects(), p % b.n_objects());
            product_mor_index(b, a.identity[x], b.identity[y])
        })
        .collect();
    let mut compose = HashMap::new();
    for (&(g1, f1), &h1) in &a.compose {
        for (&(g2, f2), &h2) in &b.compose {
            compose.insert(
                (product_mor_index(b, g1, g2), product_mor_index(b, f1, f2)),
                product_mor_index(b, h1, h2),
            );
        }
    }
    Arc::new(
        FinCat::assemble(format!("{}x{}", a.name, b.name), objects, morphisms, identity, compose)
            .unwrap(),
    )
}

/// A functor between finite categories, as index maps.
#[derive(Clone, Debug, PartialEq)]
pub struct FinFunctor {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FinFunctor {
    pub fn identity(c: &Arc<FinCat>) -> FinFunctor {
        FinFunctor {
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..c.n_objects()).collect(),
            mor_map: (0..c.n_morphisms()).collect(),
        }
    }
}

/// Check functoriality exhaustively: endpoint preservation, identities and
/// all composites.
pub fn validate_functor(f: &FinFunctor) -> Result<()> {
    let (s, t) = (&f.source, &f.target);
    if f.obj_map.len() != s.n_objects() || f.mor_map.len() != s.n_morphisms() {
        return Err(Error::Shape("functor table length mismatch".into()));
    }
    for (m, mor) in s.morphisms.iter().enumerate() {
        let im = &t.morphisms[f.mor_map[m]];
        if im.src != f.obj_map[mor.src] || im.dst != f.obj_map[mor.dst] {
            return Err(Error::Validation(format!("functor breaks endpoints at {}", mor.id)));
        }
    }
    for x in 0..s.n_objects() {
        if f.mor_map[s.identity[x]] != t.identity[f.obj_map[x]] {
            return Err(Error::Validation(format!(
                "functor breaks identity at {}",
                s.objects[x]
            )));
        }
    }
    for (&(g, h), &gh) in s.compose_table() {
        let lhs = f.mor_map[gh];
        let rhs = t
            .compose(f.mor_map[g], f.mor_map[h])
            .ok_or_else(|| Error::Validation("image pair not composable".into()))?;
        if lhs != rhs {
            return Err(Error::Validation(format!(
                "functor breaks composition at ({}, {})",
                s.morphisms[g].id, s.morphisms[h].id
            )));
        }
    }
    Ok(())
}

/// Compose two functors (`second ∘ first`).
pub fn compose_functor(second: &FinFunctor, first: &FinFunctor) -> FinFunctor {
    debug_assert_eq!(*first.target, *second.source);
    FinFunctor {
        source: first.source.clone(),
        target: second.target.clone(),
        obj_map: first.obj_map.iter().map(|&x| second.obj_map[x]).collect(),
        mor_map: first.mor_map.iter().map(|&m| second.mor_map[m]).collect(),
    }
}

/// The same index maps read as a functor between the opposite categories.
pub fn opposite_functor(f: &FinFunctor) -> FinFunctor {
    FinFunctor {
        source: opposite(&f.source),
        target: opposite(&f.target),
        obj_map: f.obj_map.clone(),
        mor_map: f.mor_map.clone(),
    }
}

/// Pair two functors with a common source into the product of their targets.
pub fn pair_functor(f: &FinFunctor, g: &FinFunctor) -> FinFunctor {
    debug_assert_eq!(*f.source, *g.source);
    let prod = product(&f.target, &g.target);
    let obj_map = (0..f.source.n_objects())
        .map(|x| product_obj_index(&g.target, f.obj_map[x], g.obj_map[x]))
        .collect();
    let mor_map = (0..f.source.n_morphisms())
        .map(|m| product_mor_index(&g.target, f.mor_map[m], g.mor_map[m]))
        .collect();
    FinFunctor { source: f.source.clone(), target: prod, obj_map, mor_map }
}

/// The coordinate-swap isomorphism `product(a, b) → product(b, a)`.
pub fn swap_functor(a: &Arc<FinCat>, b: &Arc<FinCat>) -> FinFunctor {
    let source = product(a, b);
    let target = product(b, a);
    let obj_map = (0..source.n_objects())
        .map(|p| {
            let (x, y) = (p / b.n_objects(), p % b.n_objects());
            product_obj_index(a, y, x)
        })
        .collect();
    let mor_map = (0..source.n_morphisms())
        .map(|p| {
            let (f, g) = (p / b.n_morphisms(), p % b.n_morphisms());
            product_mor_index(a, g, f)
        })
        .collect();
    FinFunctor { source, target, obj_map, mor_map }
}

/// A functor to finite sets: one element list per object, one function
/// table per morphism.
#[derive(Clone, Debug, PartialEq)]
pub struct SetFunctor {
    pub base: Arc<FinCat>,
    /// Element names, per object.
    pub sets: Vec<Vec<String>>,
    /// `maps[m][e]` = image index of element `e` under morphism `m`.
    pub maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn set(&self, x: usize) -> &[String] {
        &self.sets[x]
    }
    pub fn map(&self, m: usize) -> &[usize] {
        &self.maps[m]
    }

    /// Check functoriality exhaustively.
    pub fn validate(&self) -> Result<()> {
        let b = &self.base;
        if self.sets.len() != b.n_objects() || self.maps.len() != b.n_morphisms() {
            return Err(Error::Shape("set-functor table length mismatch".into()));
        }
        for (m, mor) in b.morphisms.iter().enumerate() {
            let tbl = &self.maps[m];
            if tbl.len() != self.sets[mor.src].len() {
                return Err(Error::Shape(format!("table length mismatch at {}", mor.id)));
            }
            if tbl.iter().any(|&e| e >= self.sets[mor.dst].len()) {
                return Err(Error::Shape(format!("table image out of range at {}", mor.id)));
            }
        }
        for x in 0..b.n_objects() {
            let id = &self.maps[b.identity[x]];
            if id.iter().enumerate().any(|(e, &v)| e != v) {
                return Err(Error::Validation(format!(
                    "identity of {} is not the identity function",
                    b.objects[x]
                )));
            }
        }
        for (&(g, f), &h) in b.compose_table() {
            for e in 0..self.maps[f].len() {
                if self.maps[g][self.maps[f][e]] != self.maps[h][e] {
                    return Err(Error::Validation(format!(
                        "composition broken at ({}, {})",
                        b.morphisms[g].id, b.morphisms[f].id
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Reindex a Set-valued functor along a functor into its base.
pub fn compose_set(f: &SetFunctor, g: &FinFunctor) -> SetFunctor {
    debug_assert_eq!(*g.target, *f.base);
    SetFunctor {
        base: g.source.clone(),
        sets: g.obj_map.iter().map(|&x| f.sets[x].clone()).collect(),
        maps: g.mor_map.iter().map(|&m| f.maps[m].clone()).collect(),
    }
}

/// A natural transformation between two Set-valued functors on a shared
/// base, as one function table per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransf {
    pub components: Vec<Vec<usize>>,
}

/// Check naturality of `t : f ⇒ g` on every morphism of the base.
pub fn is_natural(f: &SetFunctor, g: &SetFunctor, t: &NatTransf) -> bool {
    let b = &f.base;
    for m in 0..b.n_morphisms() {
        let (x, y) = (b.morphisms[m].src, b.morphisms[m].dst);
        for e in 0..f.sets[x].len() {
            if g.maps[m][t.components[x][e]] != t.components[y][f.maps[m][e]] {
                return false;
            }
        }
    }
    true
}

fn functions_between(n_src: usize, n_dst: usize) -> Vec<Vec<usize>> {
    // all function tables src -> dst, lexicographic
    if n_src == 0 {
        return vec![vec![]];
    }
    if n_dst == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n_src];
    loop {
        out.push(cur.clone());
        let mut k = n_src;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < n_dst {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Enumerate all natural transformations `f ⇒ g` by exhaustive search over
/// component choices with a naturality filter.
pub fn enumerate_nat(f: &SetFunctor, g: &SetFunctor, budget: usize) -> Result<Vec<NatTransf>> {
    if !Arc::ptr_eq(&f.base, &g.base) && *f.base != *g.base {
        return Err(Error::Shape("natural transformation requires a shared base".into()));
    }
    let b = &f.base;
    let candidates: Vec<Vec<Vec<usize>>> = (0..b.n_objects())
        .map(|x| functions_between(f.sets[x].len(), g.sets[x].len()))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut visited = 0usize;
    search_nat(f, g, &candidates, &mut chosen, &mut out, &mut visited, budget)?;
    Ok(out)
}

fn search_nat(
    f: &SetFunctor,
    g: &SetFunctor,
    candidates: &[Vec<Vec<usize>>],
    chosen: &mut Vec<Vec<usize>>,
    out: &mut Vec<NatTransf>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    let b = &f.base;
    let x = chosen.len();
    if x == b.n_objects() {
        out.push(NatTransf { components: chosen.clone() });
        return Ok(());
    }
    'cand: for cand in &candidates[x] {
        *visited += 1;
        if *visited > budget {
            return Err(Error::Budget(format!(
                "natural-transformation search exceeded {budget} candidates"
            )));
        }
        // naturality on morphisms between already-chosen objects
        for m in 0..b.n_morphisms() {
            let (s, d) = (b.morphisms[m].src, b.morphisms[m].dst);
            if s > x || d > x || (s < x && d < x) {
                continue;
            }
            let comp_s = if s == x { cand } else { &chosen[s] };
            let comp_d = if d == x { cand } else { &chosen[d] };
            for e in 0..f.sets[s].len() {
                if g.maps[m][comp_s[e]] != comp_d[f.maps[m][e]] {
                    continue 'cand;
                }
            }
        }
        chosen.push(cand.clone());
        search_nat(f, g, candidates, chosen, out, visited, budget)?;
        chosen.pop();
    }
    Ok(())
}

/// Enumerate all functors `c → d`, by backtracking over object images and
/// morphism images with functoriality filtering.
pub fn functor_category_objects(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    budget: usize,
) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    let mut obj_map = Vec::new();
    let mut visited = 0usize;
    search_functor_objects(c, d, &mut obj_map, &mut out, &mut visited, budget)?;
    Ok(out)
}

fn search_functor_objects(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    obj_map: &mut Vec<usize>,
    out: &mut Vec<FinFunctor>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    if obj_map.len() == c.n_objects() {
        let mut mor_map = vec![usize::MAX; c.n_morphisms()];
        for x in 0..c.n_objects() {
            mor_map[c.identity[x]] = d.identity[obj_map[x]];
        }
        let free: Vec<usize> = (0..c.n_morphisms()).filter(|&m| !c.is_identity(m)).collect();
        return search_functor_mors(c, d, obj_map, &free, 0, &mut mor_map, out, visited, budget);
    }
    for y in 0..d.n_objects() {
        *visited += 1;
        if *visited > budget {
            return Err(Error::Budget(format!("functor search exceeded {budget} candidates")));
        }
        obj_map.push(y);
        search_functor_objects(c, d, obj_map, out, visited, budget)?;
        obj_map.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn search_functor_mors(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    obj_map: &[usize],
    free: &[usize],
    k: usize,
    mor_map: &mut Vec<usize>,
    out: &mut Vec<FinFunctor>,
    visited: &mut usize,
    budget: usize,
) -> Result<()> {
    if k == free.len() {
        // composition closure over all composable pairs
        for (&(g, f), &h) in c.compose_table() {
            match d.compose(mor_map[g], mor_map[f]) {
                Some(img) if img == mor_map[h] => {}
                _ => return Ok(()),
            }
        }
        out.push(FinFunctor {
            source: c.clone(),
            target: d.clone(),
            obj_map: obj_map.to_vec(),
            mor_map: mor_map.clone(),
        });
        return Ok(());
    }
    let m = free[k];
    let (x, y) = (c.morphisms[m].src, c.morphisms[m].dst);
    for cand in d.hom(obj_map[x], obj_map[y]) {
        *visited += 1;
        if *visited > budget {
            return Err(Error::Budget(format!("functor search exceeded {budget} candidates")));
        }
        mor_map[m] = cand;
        search_functor_mors(c, d, obj_map, free, k + 1, mor_map, out, visited, budget)?;
    }
    mor_map[m] = usize::MAX;
    Ok(())
}

// ---------------------------------------------------------------------------
// Standard Set-valued functors
// ---------------------------------------------------------------------------

/// The covariant representable `Hom(x, −)` on `c`. Elements are named by
/// morphism identifiers.
pub fn representable_cov(c: &Arc<FinCat>, x: usize) -> SetFunctor {
    let sets: Vec<Vec<String>> = (0..c.n_objects())
        .map(|y| c.hom(x, y).into_iter().map(|m| c.morphisms[m].id.clone()).collect())
        .collect();
    let index: Vec<HashMap<&str, usize>> = sets
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect())
        .collect();
    let maps = c
        .morphisms
        .iter()
        .enumerate()
        .map(|(u, mor)| {
            c.hom(x, mor.src)
                .into_iter()
                .map(|h| index[mor.dst][c.morphisms[c.comp(u, h)].id.as_str()])
                .collect()
        })
        .collect();
    SetFunctor { base: c.clone(), sets, maps }
}

/// The representable presheaf `Hom(−, x)`, as a Set-valued functor on
/// `opposite(c)`.
pub fn representable_psh(c: &Arc<FinCat>, x: usize) -> SetFunctor {
    let op = opposite(c);
    let sets: Vec<Vec<String>> = (0..c.n_objects())
        .map(|y| c.hom(y, x).into_iter().map(|m| c.morphisms[m].id.clone()).collect())
        .collect();
    let index: Vec<HashMap<&str, usize>> = sets
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect())
        .collect();
    // op-morphism u with underlying u : y' -> y in c acts by h ↦ h∘u
    let maps = op
        .morphisms
        .iter()
        .enumerate()
        .map(|(u, mor)| {
            c.hom(mor.src, x)
                .into_iter()
                .map(|h| index[mor.dst][c.morphisms[c.comp(h, u)].id.as_str()])
                .collect()
        })
        .collect();
    SetFunctor { base: op, sets, maps }
}

/// The constant functor with the given element names at every object.
pub fn constant_set(c: &Arc<FinCat>, elements: &[&str]) -> SetFunctor {
    let sets = vec![elements.iter().map(|s| s.to_string()).collect::<Vec<_>>(); c.n_objects()];
    let maps = c.morphisms.iter().map(|_| (0..elements.len()).collect()).collect();
    SetFunctor { base: c.clone(), sets, maps }
}

/// Objectwise coproduct of two Set-valued functors on a shared base.
/// Elements are tagged `l:`/`r:`.
pub fn coproduct_set(f: &SetFunctor, g: &SetFunctor) -> SetFunctor {
    let base = f.base.clone();
    let sets: Vec<Vec<String>> = (0..base.n_objects())
        .map(|x| {
            f.sets[x]
                .iter()
                .map(|e| format!("l:{e}"))
                .chain(g.sets[x].iter().map(|e| format!("r:{e}")))
                .collect()
        })
        .collect();
    let maps = (0..base.n_morphisms())
        .map(|m| {
            let off = f.sets[base.morphisms[m].dst].len();
            f.maps[m]
                .iter()
                .copied()
                .chain(g.maps[m].iter().map(|&e| e + off))
                .collect()
        })
        .collect();
    SetFunctor { base, sets, maps }
}

/// The Hom bifunctor in end convention: a Set-valued functor on
/// `product(opposite(c), c)` with `F(x, y) = Hom(x, y)`.
pub fn hom_end_bifunctor(c: &Arc<FinCat>) -> SetFunctor {
    let op = opposite(c);
    let base = product(&op, c);
    hom_bifunctor_on(c, &base, |c, a, h, b| c.comp(b, c.comp(h, a)), true)
}

/// The Hom bifunctor in coend convention: a Set-valued functor on
/// `product(c, opposite(c))` with `F(x, y) = Hom(y, x)`.
pub fn hom_coend_bifunctor(c: &Arc<FinCat>) -> SetFunctor {
    let op = opposite(c);
    let base = product(c, &op);
    hom_bifunctor_on(c, &base, |c, u, h, v| c.comp(u, c.comp(h, v)), false)
}

fn hom_bifunctor_on(
    c: &Arc<FinCat>,
    base: &Arc<FinCat>,
    act: impl Fn(&FinCat, usize, usize, usize) -> usize,
    end_convention: bool,
) -> SetFunctor {
    let n = c.n_objects();
    let nm = c.n_morphisms();
    // object p = x*n + y; hom set is Hom(x,y) (end) or Hom(y,x) (coend)
    let homset = |p: usize| {
        let (x, y) = (p / n, p % n);
        if end_convention {
            c.hom(x, y)
        } else {
            c.hom(y, x)
        }
    };
    let sets: Vec<Vec<String>> = (0..base.n_objects())
        .map(|p| homset(p).into_iter().map(|m| c.morphisms[m].id.clone()).collect())
        .collect();
    let index: Vec<HashMap<&str, usize>> = sets
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, nme)| (nme.as_str(), i)).collect())
        .collect();
    let maps = (0..base.n_morphisms())
        .map(|pm| {
            let (first, second) = (pm / nm, pm % nm);
            let src = base.morphisms[pm].src;
            let dst = base.morphisms[pm].dst;
            homset(src)
                .into_iter()
                .map(|h| {
                    let img = act(c, first, h, second);
                    index[dst][c.morphisms[img].id.as_str()]
                })
                .collect()
        })
        .collect();
    SetFunctor { base: base.clone(), sets, maps }
}
