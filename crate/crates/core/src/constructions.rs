//! Categories derived from a base: twisted arrow categories with their
//! endpoint projections, truncated categories of simplices with last- and
//! initial-vertex functors, the edgewise comparison between the two, and
//! categories of elements of Set-valued weights.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{
    opposite, opposite_functor, pair_functor, product, product_mor_index, product_obj_index,
    FinCat, FinFunctor, Morph, SetFunctor,
};
use crate::simplicial::{epsilon, DeltaTrunc, MonotoneMap};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Twisted arrow categories
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Handedness {
    Left,
    Right,
}

/// A twisted arrow category. Carrier objects are the morphisms of the base;
/// in the left-handed version a carrier morphism from f: x→y to f′: x′→y′
/// is a pair (a: x′→x, b: y→y′) with b∘f∘a = f′, and `eta` projects to
/// base^op × base. The right-handed version is the exact opposite, with
/// `eta` landing in base × base^op.
pub struct TwCat {
    pub base: Arc<FinCat>,
    pub handedness: Handedness,
    pub carrier: Arc<FinCat>,
    pub eta: FinFunctor,
    /// The (a, b) pair underlying each carrier morphism, as base indices.
    pub tw_mors: Vec<(usize, usize)>,
}

pub fn twisted(c: &Arc<FinCat>, handedness: Handedness) -> TwCat {
    let objects: Vec<String> = c.morphisms.iter().map(|m| m.id.clone()).collect();
    let mut morphisms = Vec::new();
    let mut tw_mors = Vec::new();
    let mut identity = vec![0; objects.len()];
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (fi, f) in c.morphisms.iter().enumerate() {
        for a in 0..c.n_morphisms() {
            if c.morphisms[a].dst != f.src {
                continue;
            }
            for b in 0..c.n_morphisms() {
                if c.morphisms[b].src != f.dst {
                    continue;
                }
                let target = c.comp(b, c.comp(fi, a));
                let k = morphisms.len();
                if c.is_identity(a) && c.is_identity(b) {
                    identity[fi] = k;
                }
                index.insert((a, b, fi), k);
                morphisms.push(Morph {
                    id: format!("({},{})@{}", c.morphisms[a].id, c.morphisms[b].id, f.id),
                    src: fi,
                    dst: target,
                });
                tw_mors.push((a, b));
            }
        }
    }
    let mut compose = HashMap::new();
    for (mi, m) in morphisms.iter().enumerate() {
        let (a1, b1) = tw_mors[mi];
        for (ni, n) in morphisms.iter().enumerate() {
            if n.src != m.dst {
                continue;
            }
            let (a2, b2) = tw_mors[ni];
            compose.insert((ni, mi), index[&(c.comp(a1, a2), c.comp(b2, b1), m.src)]);
        }
    }
    let carrier = Arc::new(
        FinCat::assemble(format!("Tw({})", c.name), objects, morphisms, identity, compose)
            .unwrap(),
    );
    let op = opposite(c);
    let eta = FinFunctor {
        source: carrier.clone(),
        target: product(&op, c),
        obj_map: c.morphisms.iter().map(|f| product_obj_index(c, f.src, f.dst)).collect(),
        mor_map: tw_mors.iter().map(|&(a, b)| product_mor_index(c, a, b)).collect(),
    };
    match handedness {
        Handedness::Left => TwCat { base: c.clone(), handedness, carrier, eta, tw_mors },
        Handedness::Right => {
            // identifier-exactly the opposite; eta lands in base × base^op
            let eta = opposite_functor(&eta);
            TwCat {
                base: c.clone(),
                handedness,
                carrier: eta.source.clone(),
                eta,
                tw_mors,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Categories of simplices
// ---------------------------------------------------------------------------

/// A composable string in the base: n+1 vertices and n arrows, degenerates
/// (identity arrows) included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    pub fn id(&self, c: &FinCat) -> String {
        if self.arrows.is_empty() {
            format!("<{}>", c.objects[self.vertices[0]])
        } else {
            format!(
                "<{}>",
                self.arrows.iter().map(|&m| c.morphisms[m].id.clone()).collect::<Vec<_>>().join("|")
            )
        }
    }

    /// The face/degeneracy restriction along φ: [k] → [dim]: vertex i goes
    /// to vertex φ(i), arrow i to the composite between φ(i) and φ(i+1).
    pub fn restrict(&self, c: &FinCat, phi: &MonotoneMap) -> Simplex {
        debug_assert_eq!(phi.dst, self.dim());
        let vertices = phi.vals.iter().map(|&i| self.vertices[i]).collect();
        let arrows = (0..phi.src)
            .map(|i| {
                c.compose_chain(
                    self.vertices[phi.vals[i]],
                    &self.arrows[phi.vals[i]..phi.vals[i + 1]],
                )
            })
            .collect();
        Simplex { vertices, arrows }
    }
}

/// The truncated category of simplices Δ_{/C}^{≤N}: objects are strings
/// [n] → base for n ≤ N, a morphism α → β is a monotone φ with β∘φ = α.
pub struct SimplexCat {
    pub base: Arc<FinCat>,
    pub max_dim: usize,
    pub carrier: Arc<FinCat>,
    /// Aligned with carrier objects.
    pub simplices: Vec<Simplex>,
    /// (src, dst, φ) per carrier morphism.
    pub mors: Vec<(usize, usize, MonotoneMap)>,
    /// Object indices grouped by dimension.
    pub levels: Vec<Vec<usize>>,
    /// The level functor to Δ^{≤N}.
    pub level: FinFunctor,
    pub delta: DeltaTrunc,
}

pub fn simplices(c: &Arc<FinCat>, max_dim: usize, budget: usize) -> Result<SimplexCat> {
    let mut simps: Vec<Simplex> = Vec::new();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for n in 0..=max_dim {
        let mut level = Vec::new();
        if n == 0 {
            for x in 0..c.n_objects() {
                level.push(simps.len());
                simps.push(Simplex { vertices: vec![x], arrows: vec![] });
            }
        } else {
            for &p in &levels[n - 1] {
                let prev = simps[p].clone();
                let end = *prev.vertices.last().unwrap();
                for (mi, m) in c.morphisms.iter().enumerate() {
                    if m.src != end {
                        continue;
                    }
                    let mut s = prev.clone();
                    s.vertices.push(m.dst);
                    s.arrows.push(mi);
                    level.push(simps.len());
                    simps.push(s);
                }
            }
        }
        if simps.len() > budget {
            return Err(Error::Budget(format!(
                "simplex enumeration for {} exceeded {budget} at dimension {n}",
                c.name
            )));
        }
        levels.push(level);
    }
    let objects: Vec<String> = simps.iter().map(|s| s.id(c)).collect();
    let obj_of: HashMap<String, usize> =
        objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut mors = Vec::new();
    let mut morphisms = Vec::new();
    let mut identity = vec![0; simps.len()];
    let mut index: HashMap<(usize, String), usize> = HashMap::new();
    for (bi, beta) in simps.iter().enumerate() {
        let m = beta.dim();
        for n in 0..=max_dim {
            for phi in crate::simplicial::monotone_maps(n, m) {
                let alpha = beta.restrict(c, &phi);
                let ai = obj_of[&alpha.id(c)];
                let k = morphisms.len();
                if ai == bi && phi == MonotoneMap::id(n) {
                    identity[bi] = k;
                }
                index.insert((bi, phi.key()), k);
                morphisms.push(Morph {
                    id: format!("{}~>{}", phi.key(), objects[bi]),
                    src: ai,
                    dst: bi,
                });
                mors.push((ai, bi, phi));
                if morphisms.len() > budget {
                    return Err(Error::Budget(format!(
                        "simplex morphism enumeration for {} exceeded {budget}",
                        c.name
                    )));
                }
            }
        }
    }
    let mut compose = HashMap::new();
    for (mi, (_, md, phi)) in mors.iter().enumerate() {
        for (ni, (ns, nd, psi)) in mors.iter().enumerate() {
            if *ns == *md {
                compose.insert((ni, mi), index[&(*nd, psi.compose(phi).key())]);
            }
        }
    }
    let carrier = Arc::new(
        FinCat::assemble(
            format!("Simp<={max_dim}({})", c.name),
            objects,
            morphisms,
            identity,
            compose,
        )
        .unwrap(),
    );
    let delta = DeltaTrunc::new(max_dim);
    let level = FinFunctor {
        source: carrier.clone(),
        target: delta.cat.clone(),
        obj_map: simps.iter().map(|s| s.dim()).collect(),
        mor_map: mors.iter().map(|(_, _, phi)| delta.mor_index(phi)).collect(),
    };
    Ok(SimplexCat { base: c.clone(), max_dim, carrier, simplices: simps, mors, levels, level, delta })
}

impl SimplexCat {
    pub fn obj_of(&self, s: &Simplex) -> usize {
        let id = s.id(&self.base);
        self.carrier.obj(&id).unwrap()
    }
}

/// α ↦ α(n); a morphism over φ goes to the composite β(φ(n)) → β(m).
/// Morphisms over last-vertex maps land on identities.
pub fn last_vertex(s: &SimplexCat) -> FinFunctor {
    FinFunctor {
        source: s.carrier.clone(),
        target: s.base.clone(),
        obj_map: s.simplices.iter().map(|a| *a.vertices.last().unwrap()).collect(),
        mor_map: s
            .mors
            .iter()
            .map(|(_, d, phi)| {
                let beta = &s.simplices[*d];
                let at = *phi.vals.last().unwrap();
                s.base.compose_chain(beta.vertices[at], &beta.arrows[at..])
            })
            .collect(),
    }
}

/// α ↦ α(0), into base^op; a morphism over φ goes to β(0) → β(φ(0)) read
/// backwards. Morphisms over initial-vertex maps land on identities.
pub fn initial_vertex(s: &SimplexCat) -> FinFunctor {
    FinFunctor {
        source: s.carrier.clone(),
        target: opposite(&s.base),
        obj_map: s.simplices.iter().map(|a| a.vertices[0]).collect(),
        mor_map: s
            .mors
            .iter()
            .map(|(_, d, phi)| {
                let beta = &s.simplices[*d];
                s.base.compose_chain(beta.vertices[0], &beta.arrows[..phi.vals[0]])
            })
            .collect(),
    }
}

/// The pairing (initial_vertex, last_vertex): Δ_{/C}^{≤N} → base^op × base.
pub fn simplex_endpoints(s: &SimplexCat) -> FinFunctor {
    pair_functor(&initial_vertex(s), &last_vertex(s))
}

// ---------------------------------------------------------------------------
// The edgewise comparison
// ---------------------------------------------------------------------------

/// The image of a level-n simplex of Tw^ℓ(c) under the level-n bijection
/// Fun([n], Tw^ℓ c) ≅ Fun([2n+1], c): the string
/// x_n → … → x_0 → y_0 → … → y_n, first block the reversed a-components,
/// middle the source morphism f_0, second block the b-components.
fn edgewise_image(c: &FinCat, tw: &TwCat, s: &Simplex) -> Simplex {
    let n = s.dim();
    let mut arrows = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        arrows.push(tw.tw_mors[s.arrows[n - 1 - i]].0);
    }
    arrows.push(s.vertices[0]); // carrier objects are base morphisms
    for j in 0..n {
        arrows.push(tw.tw_mors[s.arrows[j]].1);
    }
    let start = c.morphisms[s.vertices[n]].src;
    let mut vertices = vec![start];
    for &m in &arrows {
        vertices.push(c.morphisms[m].dst);
    }
    Simplex { vertices, arrows }
}

/// The comparison functor Δ_{/Tw^ℓ(c)}^{≤N} → Δ_{/c}^{≤2N+1}: a level-n
/// simplex goes to its [2n+1]-string, a morphism over φ to one over ε(φ).
/// The level-wise bijectivity is re-verified during construction.
pub fn epsilon_compare(
    c: &Arc<FinCat>,
    tw: &TwCat,
    st: &SimplexCat,
    sc: &SimplexCat,
) -> Result<FinFunctor> {
    if sc.max_dim != 2 * st.max_dim + 1 {
        return Err(Error::Shape(format!(
            "target truncation must be 2·{}+1, got {}",
            st.max_dim, sc.max_dim
        )));
    }
    let obj_map: Vec<usize> = st
        .simplices
        .iter()
        .map(|s| sc.obj_of(&edgewise_image(c, tw, s)))
        .collect();
    // per-level bijectivity onto the full target level
    for (n, level) in st.levels.iter().enumerate() {
        let mut seen: Vec<usize> = level.iter().map(|&o| obj_map[o]).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != level.len() || seen.len() != sc.levels[2 * n + 1].len() {
            return Err(Error::Convention(format!(
                "edgewise level-{n} correspondence is not bijective for {}",
                c.name
            )));
        }
    }
    let mor_map = st
        .mors
        .iter()
        .map(|(_, d, phi)| {
            let image_id = format!(
                "{}~>{}",
                epsilon(phi).key(),
                sc.carrier.objects[obj_map[*d]]
            );
            sc.carrier.mor(&image_id).ok_or_else(|| {
                Error::Convention(format!("edgewise image morphism {image_id} is missing"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f = FinFunctor {
        source: st.carrier.clone(),
        target: sc.carrier.clone(),
        obj_map,
        mor_map,
    };
    crate::fincat::validate_functor(&f)?;
    Ok(f)
}

/// Strict commutation of the endpoint square: going simplices-of-Tw →
/// simplices-of-base → base^op × base agrees with projecting to Tw and
/// applying η.
pub fn twsquare_commutes(c: &Arc<FinCat>, max_dim: usize, budget: usize) -> Result<()> {
    let tw = twisted(c, Handedness::Left);
    let st = simplices(&tw.carrier, max_dim, budget)?;
    let sc = simplices(c, 2 * max_dim + 1, budget)?;
    let eps = epsilon_compare(c, &tw, &st, &sc)?;
    let lhs = crate::fincat::compose_functor(&simplex_endpoints(&sc), &eps);
    let rhs = crate::fincat::compose_functor(&tw.eta, &last_vertex(&st));
    if lhs != rhs {
        return Err(Error::Convention(format!(
            "endpoint square does not commute strictly for {}",
            c.name
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Categories of elements
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// The category of elements of a Set-valued weight W. Covariant: objects
/// (i, w ∈ W(i)), a morphism (i,w) → (i′,w′) is u: i→i′ with W(u)(w) = w′.
/// Contravariant reads W as a presheaf on the opposite of its base: the
/// carrier lives over opposite(base) and the condition is W(u)(w′) = w.
pub struct ElementsCat {
    pub weight: SetFunctor,
    pub variance: Variance,
    pub carrier: Arc<FinCat>,
    /// (base object, element index) per carrier object.
    pub points: Vec<(usize, usize)>,
    /// The underlying projected morphism per carrier morphism.
    pub mor_under: Vec<usize>,
    pub proj: FinFunctor,
}

pub fn elements(w: &SetFunctor, variance: Variance) -> ElementsCat {
    let over = match variance {
        Variance::Covariant => w.base.clone(),
        Variance::Contravariant => opposite(&w.base),
    };
    let mut points = Vec::new();
    let mut point_index = HashMap::new();
    for i in 0..over.n_objects() {
        for e in 0..w.sets[i].len() {
            point_index.insert((i, e), points.len());
            points.push((i, e));
        }
    }
    let objects: Vec<String> = points
        .iter()
        .map(|&(i, e)| format!("({},{})", over.objects[i], w.sets[i][e]))
        .collect();
    let mut morphisms = Vec::new();
    let mut mor_under = Vec::new();
    let mut identity = vec![0; points.len()];
    let mut index = HashMap::new();
    for (pi, &(i, e)) in points.iter().enumerate() {
        for (qi, &(j, e2)) in points.iter().enumerate() {
            for u in over.hom(i, j) {
                let ok = match variance {
                    // W(u): W(i) → W(j) must carry the source element
                    Variance::Covariant => w.maps[u][e] == e2,
                    // u: j → i in the weight's base; W(u): W(j) → W(i)
                    Variance::Contravariant => w.maps[u][e2] == e,
                };
                if !ok {
                    continue;
                }
                let k = morphisms.len();
                if over.is_identity(u) {
                    identity[pi] = k;
                }
                index.insert((u, pi, qi), k);
                morphisms.push(Morph {
                    id: format!("{}:{}>{}", over.morphisms[u].id, objects[pi], objects[qi]),
                    src: pi,
                    dst: qi,
                });
                mor_under.push(u);
            }
        }
    }
    let mut compose = HashMap::new();
    for (mi, m) in morphisms.iter().enumerate() {
        for (ni, n) in morphisms.iter().enumerate() {
            if n.src != m.dst {
                continue;
            }
            let u = over.comp(mor_under[ni], mor_under[mi]);
            compose.insert((ni, mi), index[&(u, m.src, n.dst)]);
        }
    }
    let carrier = Arc::new(
        FinCat::assemble(format!("El({})", w.base.name), objects, morphisms, identity, compose)
            .unwrap(),
    );
    let proj = FinFunctor {
        source: carrier.clone(),
        target: over,
        obj_map: points.iter().map(|&(i, _)| i).collect(),
        mor_map: mor_under.clone(),
    };
    ElementsCat { weight: w.clone(), variance, carrier, points, mor_under, proj }
}

/// Sections of the covariant projection: one element per base object, carried
/// correctly along every base morphism. Returned as families aligned with
/// base objects, in lexicographic order — the same normal form as a limit.
pub fn sections(e: &ElementsCat) -> Vec<Vec<usize>> {
    assert_eq!(e.variance, Variance::Covariant);
    let base = &e.weight.base;
    let mut out = Vec::new();
    let mut family = Vec::new();
    fn go(e: &ElementsCat, base: &FinCat, family: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = family.len();
        if i == base.n_objects() {
            out.push(family.clone());
            return;
        }
        'next: for v in 0..e.weight.sets[i].len() {
            for (u, m) in base.morphisms.iter().enumerate() {
                if m.src < i && m.dst == i && e.weight.maps[u][family[m.src]] != v {
                    continue 'next;
                }
                if m.dst < i && m.src == i && e.weight.maps[u][v] != family[m.dst] {
                    continue 'next;
                }
                if m.src == i && m.dst == i && e.weight.maps[u][v] != v {
                    continue 'next;
                }
            }
            family.push(v);
            go(e, base, family, out);
            family.pop();
        }
    }
    go(e, base, &mut family, &mut out);
    out
}

/// The identifier-explicit isomorphism between the contravariant category of
/// elements of the Hom bifunctor and the right twisted arrow category.
pub struct HomElementsIso {
    pub elements: ElementsCat,
    pub tw: TwCat,
    pub iso: FinFunctor,
}

pub fn elements_of_hom(c: &Arc<FinCat>) -> Result<HomElementsIso> {
    let w = crate::fincat::hom_end_bifunctor(c);
    let el = elements(&w, Variance::Contravariant);
    let tw = twisted(c, Handedness::Right);
    if *el.proj.target != *tw.eta.target {
        return Err(Error::Convention(
            "elements carrier and Tw^r do not live over the same product".into(),
        ));
    }
    // object ((x,y), f) ↦ the Tw^r object f
    let obj_map: Vec<usize> = el
        .points
        .iter()
        .map(|&(p, e)| {
            let id = &w.sets[p][e];
            tw.carrier.obj(id).ok_or_else(|| {
                Error::Convention(format!("hom element {id} has no twisted-arrow object"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // a morphism over (a,b) from ((x,y),f) to ((x′,y′),f′) ↦ "(a,b)@f′"
    let mor_map: Vec<usize> = (0..el.carrier.n_morphisms())
        .map(|m| {
            let u = el.mor_under[m];
            let prod = &el.proj.target;
            let (a, b) = (u / c.n_morphisms(), u % c.n_morphisms());
            let _ = prod;
            let fp = el.carrier.morphisms[m].dst;
            let id = format!(
                "({},{})@{}",
                c.morphisms[a].id,
                c.morphisms[b].id,
                tw.carrier.objects[obj_map[fp]]
            );
            tw.carrier.mor(&id).ok_or_else(|| {
                Error::Convention(format!("no twisted-arrow morphism {id}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = FinFunctor { source: el.carrier.clone(), target: tw.carrier.clone(), obj_map, mor_map };
    crate::fincat::validate_functor(&iso)?;
    // bijectivity on objects and morphisms
    let mut objs = iso.obj_map.clone();
    objs.sort_unstable();
    objs.dedup();
    let mut morsv = iso.mor_map.clone();
    morsv.sort_unstable();
    morsv.dedup();
    if objs.len() != tw.carrier.n_objects() || morsv.len() != tw.carrier.n_morphisms() {
        return Err(Error::Convention(format!(
            "elements-of-hom comparison is not an isomorphism for {}",
            c.name
        )));
    }
    Ok(HomElementsIso { elements: el, tw, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fincat::{
        compose_functor, constant_set, functor_category_objects, representable_psh,
        validate_category, validate_functor,
    };
    use crate::setops::limit;
    use crate::simplicial::monotone_maps;

    const BUDGET: usize = 1_000_000;

    #[test]
    fn tw_of_walking_arrow_is_the_pair_poset() {
        // the poset of pairs (i,j) with 0 ≤ i ≤ j ≤ 1; (0,1) is terminal
        let two = corpus::walking_arrow();
        let tw = twisted(&two, Handedness::Left);
        validate_category(&tw.carrier).unwrap();
        validate_functor(&tw.eta).unwrap();
        assert_eq!(tw.carrier.n_objects(), 3);
        let non_id = (0..tw.carrier.n_morphisms())
            .filter(|&m| !tw.carrier.is_identity(m))
            .count();
        assert_eq!(non_id, 2);
        // (0,1), i.e. the object named by u, receives exactly one morphism
        // from each object
        let u = tw.carrier.obj("u").unwrap();
        for x in 0..3 {
            assert_eq!(tw.carrier.hom(x, u).len(), 1, "terminality at {x}");
        }
    }

    #[test]
    fn tw_of_terminal_is_terminal() {
        let one = corpus::terminal();
        let tw = twisted(&one, Handedness::Left);
        assert_eq!(tw.carrier.n_objects(), 1);
        assert_eq!(tw.carrier.n_morphisms(), 1);
        assert!(tw.carrier.is_identity(0));
    }

    #[test]
    fn tw_right_is_identifier_exact_opposite() {
        for c in corpus::base_categories() {
            let l = twisted(&c, Handedness::Left);
            let r = twisted(&c, Handedness::Right);
            assert_eq!(*r.carrier, *opposite(&l.carrier), "{}", c.name);
            assert_eq!(
                r.carrier.morphisms.iter().map(|m| &m.id).collect::<Vec<_>>(),
                l.carrier.morphisms.iter().map(|m| &m.id).collect::<Vec<_>>()
            );
            assert_eq!(*r.eta.target, *product(&c, &opposite(&c)), "{}", c.name);
            validate_functor(&r.eta).unwrap();
        }
    }

    #[test]
    fn tw_eta_validates_on_corpus() {
        for c in corpus::base_categories() {
            let tw = twisted(&c, Handedness::Left);
            validate_category(&tw.carrier).unwrap();
            validate_functor(&tw.eta).unwrap();
        }
    }

    #[test]
    fn simplex_level_counts_for_walking_arrow() {
        let two = corpus::walking_arrow();
        let s = simplices(&two, 2, BUDGET).unwrap();
        validate_category(&s.carrier).unwrap();
        assert_eq!(s.levels.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![2, 3, 4]);
        // level-n object count = |Fun([n], base)|
        for n in 0..=2usize {
            let chain = corpus::chain(n);
            let funs = functor_category_objects(&chain, &two, BUDGET).unwrap();
            assert_eq!(s.levels[n].len(), funs.len(), "level {n}");
        }
        validate_functor(&s.level).unwrap();
    }

    #[test]
    fn simplices_of_terminal_are_singletons_per_level() {
        let one = corpus::terminal();
        let s = simplices(&one, 3, BUDGET).unwrap();
        assert_eq!(s.levels.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn vertex_a_to_u_has_one_morphism_over_delta1() {
        let two = corpus::walking_arrow();
        let s = simplices(&two, 1, BUDGET).unwrap();
        let a = s.carrier.obj("<a>").unwrap();
        let u = s.carrier.obj("<u>").unwrap();
        let hom = s.carrier.hom(a, u);
        assert_eq!(hom.len(), 1);
        let (_, _, phi) = &s.mors[hom[0]];
        assert_eq!(phi.vals, vec![0]); // δ^1: picks vertex 0
    }

    #[test]
    fn last_and_initial_vertex_examples() {
        let two = corpus::walking_arrow();
        let s = simplices(&two, 1, BUDGET).unwrap();
        let lv = last_vertex(&s);
        let iv = initial_vertex(&s);
        validate_functor(&lv).unwrap();
        validate_functor(&iv).unwrap();
        let a = s.carrier.obj("<a>").unwrap();
        let b = s.carrier.obj("<b>").unwrap();
        let u = s.carrier.obj("<u>").unwrap();
        assert_eq!(two.objects[lv.obj_map[u]], "b");
        assert_eq!(two.objects[iv.obj_map[u]], "a");
        // vertex-b → u over δ^0 (LV) ↦ id_b under last_vertex, u backwards
        // under initial_vertex
        let m_b = s.carrier.hom(b, u)[0];
        assert!(two.is_identity(lv.mor_map[m_b]));
        assert_eq!(two.morphisms[iv.mor_map[m_b]].id, "u");
        // vertex-a → u over δ^1 (IV) ↦ u under last_vertex, id under initial
        let m_a = s.carrier.hom(a, u)[0];
        assert_eq!(two.morphisms[lv.mor_map[m_a]].id, "u");
        assert!(two.is_identity(iv.mor_map[m_a]));
    }

    #[test]
    fn lv_and_iv_morphisms_collapse_to_identities() {
        for c in [corpus::walking_arrow(), corpus::zmod2(), corpus::free_span()] {
            let s = simplices(&c, 2, BUDGET).unwrap();
            let lv = last_vertex(&s);
            let iv = initial_vertex(&s);
            for (mi, (_, _, phi)) in s.mors.iter().enumerate() {
                if phi.is_lv() {
                    assert!(c.is_identity(lv.mor_map[mi]));
                }
                if phi.is_iv() {
                    assert!(c.is_identity(iv.mor_map[mi]));
                }
            }
        }
    }

    #[test]
    fn endpoints_functor_validates() {
        for c in [corpus::walking_arrow(), corpus::zmod2(), corpus::diamond_poset()] {
            let s = simplices(&c, 2, BUDGET).unwrap();
            let q = simplex_endpoints(&s);
            validate_functor(&q).unwrap();
            assert_eq!(*q.target, *product(&opposite(&c), &c));
        }
    }

    #[test]
    fn simplices_of_opposite_by_string_reversal() {
        for c in [corpus::walking_arrow(), corpus::zmod2(), corpus::free_span()] {
            let s = simplices(&c, 2, BUDGET).unwrap();
            let so = simplices(&opposite(&c), 2, BUDGET).unwrap();
            // levelwise reversal: same arrow indices, reversed, with the
            // structure map over rev(φ)
            let obj_map: Vec<usize> = s
                .simplices
                .iter()
                .map(|a| {
                    let rsimp = Simplex {
                        vertices: a.vertices.iter().rev().copied().collect(),
                        arrows: a.arrows.iter().rev().copied().collect(),
                    };
                    so.obj_of(&rsimp)
                })
                .collect();
            let mor_map: Vec<usize> = s
                .mors
                .iter()
                .map(|(_, d, phi)| {
                    let id = format!(
                        "{}~>{}",
                        crate::simplicial::rev(phi).key(),
                        so.carrier.objects[obj_map[*d]]
                    );
                    so.carrier.mor(&id).unwrap()
                })
                .collect();
            let f = FinFunctor {
                source: s.carrier.clone(),
                target: so.carrier.clone(),
                obj_map,
                mor_map,
            };
            validate_functor(&f).unwrap();
            assert_eq!(s.carrier.n_objects(), so.carrier.n_objects());
            assert_eq!(s.carrier.n_morphisms(), so.carrier.n_morphisms());
        }
    }

    #[test]
    fn edgewise_level_counts_for_walking_arrow() {
        let two = corpus::walking_arrow();
        let tw = twisted(&two, Handedness::Left);
        let st = simplices(&tw.carrier, 1, BUDGET).unwrap();
        let sc = simplices(&two, 3, BUDGET).unwrap();
        // |Fun([1], Tw^ℓ(2))| = |Fun([3], 2)| = 5
        assert_eq!(st.levels[1].len(), 5);
        assert_eq!(sc.levels[3].len(), 5);
        let eps = epsilon_compare(&two, &tw, &st, &sc).unwrap();
        validate_functor(&eps).unwrap();
    }

    #[test]
    fn twsquare_commutes_on_small_corpus() {
        for c in [corpus::terminal(), corpus::walking_arrow(), corpus::zmod2()] {
            twsquare_commutes(&c, 1, BUDGET).unwrap();
        }
    }

    #[test]
    fn elements_of_constant_singleton_is_the_base() {
        for c in [corpus::walking_arrow(), corpus::diamond_poset()] {
            let w = constant_set(&c, &["*"]);
            let e = elements(&w, Variance::Covariant);
            assert_eq!(e.carrier.n_objects(), c.n_objects());
            assert_eq!(e.carrier.n_morphisms(), c.n_morphisms());
            let mut under = e.proj.mor_map.clone();
            under.sort_unstable();
            assert_eq!(under, (0..c.n_morphisms()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn covariant_elements_example_on_walking_arrow() {
        let two = corpus::walking_arrow();
        let w = corpus::example_two_colim_diagram(&two);
        // W(a) = {p}, W(b) = {q, r}, u ↦ p↦q
        let e = elements(&w, Variance::Covariant);
        validate_category(&e.carrier).unwrap();
        validate_functor(&e.proj).unwrap();
        assert_eq!(e.carrier.n_objects(), 3);
        let non_id = (0..e.carrier.n_morphisms())
            .filter(|&m| !e.carrier.is_identity(m))
            .count();
        assert_eq!(non_id, 1);
        let m = (0..e.carrier.n_morphisms()).find(|&m| !e.carrier.is_identity(m)).unwrap();
        assert_eq!(e.carrier.objects[e.carrier.morphisms[m].src], "(a,p)");
        assert_eq!(e.carrier.objects[e.carrier.morphisms[m].dst], "(b,q)");
    }

    #[test]
    fn contravariant_elements_of_representable_is_the_slice() {
        let two = corpus::walking_arrow();
        let b = two.obj("b").unwrap();
        // Hom(−, b) lives over opposite(two); its contravariant elements
        // live back over two and form the slice 2/b
        let w = representable_psh(&two, b);
        let e = elements(&w, Variance::Contravariant);
        validate_category(&e.carrier).unwrap();
        assert_eq!(e.carrier.n_objects(), 2);
        let non_id = (0..e.carrier.n_morphisms())
            .filter(|&m| !e.carrier.is_identity(m))
            .count();
        assert_eq!(non_id, 1);
    }

    #[test]
    fn sections_match_limits() {
        for c in [corpus::walking_arrow(), corpus::diamond_poset(), corpus::zmod2()] {
            for w in corpus::covariant_pool(&c, 11, 3, 4) {
                let e = elements(&w, Variance::Covariant);
                let secs = sections(&e);
                let lim = limit(&w);
                assert_eq!(secs, lim.elements, "{}", c.name);
            }
        }
    }

    #[test]
    fn elements_of_hom_is_iso_to_tw_right() {
        for c in corpus::base_categories() {
            if c.n_morphisms() > 12 {
                continue;
            }
            let h = elements_of_hom(&c).unwrap();
            assert_eq!(h.elements.carrier.n_objects(), c.n_morphisms());
            assert_eq!(h.elements.carrier.n_objects(), h.tw.carrier.n_objects());
            assert_eq!(h.elements.carrier.n_morphisms(), h.tw.carrier.n_morphisms());
        }
    }

    #[test]
    fn elements_of_hom_examples() {
        let one = corpus::terminal();
        let h = elements_of_hom(&one).unwrap();
        assert_eq!(h.elements.carrier.n_objects(), 1);
        let z2 = corpus::zmod2();
        let h = elements_of_hom(&z2).unwrap();
        assert_eq!(h.elements.carrier.n_objects(), 2);
    }

    #[test]
    fn tw_simplex_counts_match_edgewise_levels() {
        for c in [corpus::walking_arrow(), corpus::chain(2), corpus::zmod2()] {
            let tw = twisted(&c, Handedness::Left);
            let st = simplices(&tw.carrier, 1, BUDGET).unwrap();
            let sc = simplices(&c, 3, BUDGET).unwrap();
            for n in 0..=1usize {
                assert_eq!(st.levels[n].len(), sc.levels[2 * n + 1].len(), "{} level {n}", c.name);
            }
        }
    }

    #[test]
    fn simplex_budget_is_enforced() {
        let c = corpus::zmod2();
        match simplices(&c, 3, 5) {
            Err(crate::Error::Budget(_)) => {}
            other => panic!("expected budget error, got {:?}", other.map(|s| s.carrier.name.clone())),
        }
    }

    #[test]
    fn simplex_restrict_agrees_with_monotone_composition() {
        let c = corpus::free_triangle();
        let s = simplices(&c, 2, BUDGET).unwrap();
        for beta in &s.simplices {
            let m = beta.dim();
            for n in 0..=2usize {
                for phi in monotone_maps(n, m) {
                    for k in 0..=n {
                        for psi in monotone_maps(k, n) {
                            assert_eq!(
                                beta.restrict(&c, &phi).restrict(&c, &psi),
                                beta.restrict(&c, &phi.compose(&psi))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eta_projects_endpoints() {
        let two = corpus::walking_arrow();
        let tw = twisted(&two, Handedness::Left);
        let u = two.mor("u").unwrap();
        let prod = product(&opposite(&two), &two);
        let a = two.obj("a").unwrap();
        let b = two.obj("b").unwrap();
        assert_eq!(
            prod.objects[tw.eta.obj_map[u]],
            format!("({},{})", two.objects[a], two.objects[b])
        );
        let _ = compose_functor(&tw.eta, &crate::fincat::FinFunctor::identity(&tw.carrier));
    }
}
