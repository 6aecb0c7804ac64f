//! Limits and colimits of Set-valued functors over finite index categories,
//! plus the equalizer/coequalizer specializations of function tables.

use crate::fincat::SetFunctor;
use crate::{Error, Result};

/// The limit of a Set-valued functor: all compatible families, one
/// component per index object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    /// Each element is a tuple of element indices, one per base object, in
    /// object order. Sorted lexicographically.
    pub elements: Vec<Vec<usize>>,
}

impl LimitResult {
    /// Projection table onto the component at `obj`.
    pub fn projection(&self, obj: usize) -> Vec<usize> {
        self.elements.iter().map(|e| e[obj]).collect()
    }
}

/// Compute the limit by backtracking with forward propagation: assigning a
/// component forces the components at all targets of outgoing morphisms.
/// The empty diagram has a one-element limit (the empty family).
pub fn limit(f: &SetFunctor) -> LimitResult {
    let b = &f.base;
    // outgoing morphisms per object
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); b.n_objects()];
    for (m, mor) in b.morphisms.iter().enumerate() {
        out[mor.src].push(m);
    }
    let mut assign: Vec<Option<usize>> = vec![None; b.n_objects()];
    let mut elements = Vec::new();
    search_limit(f, &out, &mut assign, &mut elements);
    elements.sort();
    LimitResult { elements }
}

fn search_limit(
    f: &SetFunctor,
    out: &[Vec<usize>],
    assign: &mut Vec<Option<usize>>,
    elements: &mut Vec<Vec<usize>>,
) {
    let b = &f.base;
    let Some(x) = assign.iter().position(Option::is_none) else {
        elements.push(assign.iter().map(|v| v.unwrap()).collect());
        return;
    };
    for e in 0..f.sets[x].len() {
        // propagate; remember what we assigned so we can undo
        let mut trail = Vec::new();
        let mut queue = vec![(x, e)];
        let mut ok = true;
        while let Some((y, v)) = queue.pop() {
            match assign[y] {
                Some(w) => {
                    if w != v {
                        ok = false;
                        break;
                    }
                }
                None => {
                    assign[y] = Some(v);
                    trail.push(y);
                    for &m in &out[y] {
                        queue.push((b.morphisms[m].dst, f.maps[m][v]));
                    }
                }
            }
        }
        if ok {
            search_limit(f, out, assign, elements);
        }
        for y in trail {
            assign[y] = None;
        }
    }
}

/// Minimal union-find with path compression.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so representatives are canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The colimit of a Set-valued functor: the disjoint union of all values,
/// modulo the equivalence closure of `e ~ F(u)(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitResult {
    /// Start offset of each object's block in the flattened disjoint union.
    pub offsets: Vec<usize>,
    /// Class index per flattened element. Classes are numbered in order of
    /// their least member.
    pub class_of: Vec<usize>,
    pub n_classes: usize,
    /// Least flattened member of each class.
    pub reps: Vec<usize>,
}

impl ColimitResult {
    pub fn flat(&self, obj: usize, elt: usize) -> usize {
        self.offsets[obj] + elt
    }
    /// Injection table of the object's component into the classes.
    pub fn injection(&self, obj: usize, set_len: usize) -> Vec<usize> {
        (0..set_len).map(|e| self.class_of[self.offsets[obj] + e]).collect()
    }
}

pub fn colimit(f: &SetFunctor) -> ColimitResult {
    let b = &f.base;
    let mut offsets = Vec::with_capacity(b.n_objects());
    let mut total = 0usize;
    for x in 0..b.n_objects() {
        offsets.push(total);
        total += f.sets[x].len();
    }
    let mut uf = UnionFind::new(total);
    for (m, mor) in b.morphisms.iter().enumerate() {
        for e in 0..f.sets[mor.src].len() {
            uf.union(offsets[mor.src] + e, offsets[mor.dst] + f.maps[m][e]);
        }
    }
    canonicalize(uf, total, offsets)
}

fn canonicalize(mut uf: UnionFind, total: usize, offsets: Vec<usize>) -> ColimitResult {
    let mut class_of = vec![usize::MAX; total];
    let mut reps = Vec::new();
    for i in 0..total {
        let r = uf.find(i);
        if class_of[r] == usize::MAX {
            class_of[r] = reps.len();
            reps.push(r);
        }
        class_of[i] = class_of[r];
    }
    ColimitResult { offsets, n_classes: reps.len(), class_of, reps }
}

/// A function table between finite sets given by sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnTable {
    pub src_size: usize,
    pub dst_size: usize,
    pub map: Vec<usize>,
}

impl FnTable {
    pub fn new(src_size: usize, dst_size: usize, map: Vec<usize>) -> Result<FnTable> {
        if map.len() != src_size || map.iter().any(|&v| v >= dst_size) {
            return Err(Error::Shape("function table does not fit its endpoints".into()));
        }
        Ok(FnTable { src_size, dst_size, map })
    }
}

/// `{x : f(x) = g(x)}` with its inclusion, as the sorted list of indices.
pub fn equalizer(f: &FnTable, g: &FnTable) -> Result<Vec<usize>> {
    if f.src_size != g.src_size || f.dst_size != g.dst_size {
        return Err(Error::Shape("equalizer requires a common source and target".into()));
    }
    Ok((0..f.src_size).filter(|&x| f.map[x] == g.map[x]).collect())
}

/// A partition of a finite set, classes numbered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub n_classes: usize,
    pub reps: Vec<usize>,
}

/// The target modulo the equivalence closure of `f(x) ~ g(x)`.
pub fn coequalizer(f: &FnTable, g: &FnTable) -> Result<Partition> {
    if f.src_size != g.src_size || f.dst_size != g.dst_size {
        return Err(Error::Shape("coequalizer requires a common source and target".into()));
    }
    let mut uf = UnionFind::new(f.dst_size);
    for x in 0..f.src_size {
        uf.union(f.map[x], g.map[x]);
    }
    let c = canonicalize(uf, f.dst_size, vec![]);
    Ok(Partition { class_of: c.class_of, n_classes: c.n_classes, reps: c.reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fincat::{constant_set, SetFunctor};

    #[test]
    fn limit_constant_singleton() {
        let two = corpus::walking_arrow();
        let s = constant_set(&two, &["*"]);
        assert_eq!(limit(&s).elements.len(), 1);
    }

    #[test]
    fn limit_two_diagram() {
        let two = corpus::walking_arrow();
        let f = corpus::example_two_diagram(&two); // f(a)={x,y}, f(b)={z,w}, u↦(x↦z,y↦z)
        let l = limit(&f);
        // limit ≅ {(x,z),(y,z)}
        assert_eq!(l.elements, vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn limit_discrete_is_product() {
        let d = corpus::discrete(2);
        let f = SetFunctor {
            base: d.clone(),
            sets: vec![
                vec!["0".into(), "1".into()],
                vec!["0".into(), "1".into(), "2".into()],
            ],
            maps: vec![vec![0, 1], vec![0, 1, 2]],
        };
        assert_eq!(limit(&f).elements.len(), 6);
    }

    #[test]
    fn limit_of_empty_diagram_is_singleton() {
        let empty = corpus::empty_category();
        let f = SetFunctor { base: empty, sets: vec![], maps: vec![] };
        assert_eq!(limit(&f).elements, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn colimit_two_diagram() {
        let two = corpus::walking_arrow();
        // F(a)={p}, F(b)={q,r}, u↦(p↦q) → 2 classes {p,q},{r}
        let f = corpus::example_two_colim_diagram(&two);
        let c = colimit(&f);
        assert_eq!(c.n_classes, 2);
        assert_eq!(c.class_of, vec![0, 0, 1]);
    }

    #[test]
    fn colimit_discrete_is_coproduct() {
        let d = corpus::discrete(2);
        let f = SetFunctor {
            base: d,
            sets: vec![vec!["0".into(), "1".into()], vec!["0".into()]],
            maps: vec![vec![0, 1], vec![0]],
        };
        assert_eq!(colimit(&f).n_classes, 3);
    }

    #[test]
    fn colimit_of_empty_diagram_is_empty() {
        let empty = corpus::empty_category();
        let f = SetFunctor { base: empty, sets: vec![], maps: vec![] };
        assert_eq!(colimit(&f).n_classes, 0);
    }

    #[test]
    fn equalizer_basics() {
        let f = FnTable::new(2, 2, vec![0, 1]).unwrap();
        let g = FnTable::new(2, 2, vec![0, 0]).unwrap();
        assert_eq!(equalizer(&f, &f).unwrap(), vec![0, 1]);
        assert_eq!(equalizer(&f, &g).unwrap(), vec![0]);
    }

    #[test]
    fn coequalizer_basics() {
        let f = FnTable::new(1, 2, vec![0]).unwrap();
        let g = FnTable::new(1, 2, vec![1]).unwrap();
        assert_eq!(coequalizer(&f, &f).unwrap().n_classes, 2);
        assert_eq!(coequalizer(&f, &g).unwrap().n_classes, 1);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let f = FnTable::new(1, 2, vec![0]).unwrap();
        let g = FnTable::new(2, 2, vec![0, 1]).unwrap();
        assert!(matches!(equalizer(&f, &g), Err(Error::Shape(_))));
        assert!(matches!(coequalizer(&f, &g), Err(Error::Shape(_))));
    }

    #[test]
    fn limit_universal_property_against_enumerated_cones() {
        // every cone factors uniquely through the limit, on small corpus
        // diagrams
        for (c, f) in corpus::small_diagrams() {
            let l = limit(&f);
            // a cone from a singleton apex is exactly a compatible family
            let mut cones = Vec::new();
            enumerate_families(&f, &mut vec![], &mut cones);
            let compatible: Vec<Vec<usize>> = cones
                .into_iter()
                .filter(|fam| {
                    c.morphisms
                        .iter()
                        .enumerate()
                        .all(|(m, mor)| f.maps[m][fam[mor.src]] == fam[mor.dst])
                })
                .collect();
            assert_eq!(l.elements, compatible, "limit vs brute-force cones on {}", c.name);
        }
    }

    fn enumerate_families(f: &SetFunctor, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == f.base.n_objects() {
            out.push(cur.clone());
            return;
        }
        for e in 0..f.sets[cur.len()].len() {
            cur.push(e);
            enumerate_families(f, cur, out);
            cur.pop();
        }
    }

    #[test]
    fn colimit_universal_property_against_enumerated_cocones() {
        for (c, f) in corpus::small_diagrams() {
            let col = colimit(&f);
            // brute-force: finest partition closed under e ~ F(u)(e), computed
            // by repeated refinement from the discrete partition on pairs
            let total: usize = f.sets.iter().map(Vec::len).sum();
            let mut class: Vec<usize> = (0..total).collect();
            let mut changed = true;
            while changed {
                changed = false;
                for (m, mor) in c.morphisms.iter().enumerate() {
                    for e in 0..f.sets[mor.src].len() {
                        let a = col.offsets[mor.src] + e;
                        let b = col.offsets[mor.dst] + f.maps[m][e];
                        let (ca, cb) = (class[a], class[b]);
                        if ca != cb {
                            let lo = ca.min(cb);
                            for v in class.iter_mut() {
                                if *v == ca || *v == cb {
                                    *v = lo;
                                }
                            }
                            changed = true;
                        }
                    }
                }
            }
            // same partition?
            for i in 0..total {
                for j in 0..total {
                    assert_eq!(
                        class[i] == class[j],
                        col.class_of[i] == col.class_of[j],
                        "colimit partition mismatch on {}",
                        c.name
                    );
                }
            }
        }
    }
}
