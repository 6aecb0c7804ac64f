//! Generators for the test corpus: finite posets, small monoids as
//! one-object categories, free categories on acyclic quivers, and pools of
//! Set-valued functors over them.
//!
//! Raw random composition tables almost never satisfy associativity, so
//! categories come from constructions that guarantee it; random Set-valued
//! functors are rejection-sampled and validated.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{
    constant_set, coproduct_set, hom_end_bifunctor, hom_coend_bifunctor, opposite, product,
    representable_cov, representable_psh, FinCat, Morph, SetFunctor,
};

pub fn empty_category() -> Arc<FinCat> {
    Arc::new(FinCat::assemble("0", vec![], vec![], vec![], HashMap::new()).unwrap())
}

pub fn terminal() -> Arc<FinCat> {
    poset("1", &["*"], |_, _| true)
}

/// The walking arrow 2 = {a, b, u: a → b}.
pub fn walking_arrow() -> Arc<FinCat> {
    let objects = vec!["a".to_string(), "b".to_string()];
    let morphisms = vec![
        Morph { id: "id_a".into(), src: 0, dst: 0 },
        Morph { id: "id_b".into(), src: 1, dst: 1 },
        Morph { id: "u".into(), src: 0, dst: 1 },
    ];
    let mut compose = HashMap::new();
    compose.insert((0, 0), 0);
    compose.insert((1, 1), 1);
    compose.insert((2, 0), 2);
    compose.insert((1, 2), 2);
    Arc::new(FinCat::assemble("2", objects, morphisms, vec![0, 1], compose).unwrap())
}

/// The chain poset [n] with objects 0..n.
pub fn chain(n: usize) -> Arc<FinCat> {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    poset(&format!("[{n}]"), &refs, |i, j| i <= j)
}

/// The discrete category on n objects.
pub fn discrete(n: usize) -> Arc<FinCat> {
    let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    poset(&format!("disc{n}"), &refs, |i, j| i == j)
}

/// The commuting square: the product poset [1] × [1].
pub fn square_poset() -> Arc<FinCat> {
    poset("square", &["00", "01", "10", "11"], |i, j| (i | j) == j)
}

/// The diamond poset a < b, a < c, b < d, c < d with b and c incomparable.
pub fn diamond_poset() -> Arc<FinCat> {
    let leq = |i: usize, j: usize| i == j || i == 0 || j == 3;
    poset("diamond", &["a", "b", "c", "d"], leq)
}

/// A poset as a category: a unique morphism `x->y` whenever `leq(x, y)`.
pub fn poset(name: &str, objects: &[&str], leq: impl Fn(usize, usize) -> bool) -> Arc<FinCat> {
    let mut morphisms = Vec::new();
    let mut identity = vec![0; objects.len()];
    let mut mor_at = HashMap::new();
    for i in 0..objects.len() {
        for j in 0..objects.len() {
            if leq(i, j) {
                let id = if i == j {
                    format!("id_{}", objects[i])
                } else {
                    format!("{}->{}", objects[i], objects[j])
                };
                if i == j {
                    identity[i] = morphisms.len();
                }
                mor_at.insert((i, j), morphisms.len());
                morphisms.push(Morph { id, src: i, dst: j });
            }
        }
    }
    let mut compose = HashMap::new();
    for (&(i, j), &f) in &mor_at {
        for (&(j2, k), &g) in &mor_at {
            if j == j2 {
                compose.insert((g, f), mor_at[&(i, k)]);
            }
        }
    }
    let objects = objects.iter().map(|s| s.to_string()).collect();
    Arc::new(FinCat::assemble(name, objects, morphisms, identity, compose).unwrap())
}

/// A finite monoid as a one-object category. `table[i][j]` is the index of
/// the product `m_i ∘ m_j`; element 0 must be the unit.
pub fn monoid(name: &str, elements: &[&str], table: &[&[usize]]) -> Arc<FinCat> {
    let morphisms = elements
        .iter()
        .map(|e| Morph { id: e.to_string(), src: 0, dst: 0 })
        .collect();
    let mut compose = HashMap::new();
    for (i, row) in table.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            compose.insert((i, j), v);
        }
    }
    Arc::new(
        FinCat::assemble(name, vec!["*".into()], morphisms, vec![0], compose).unwrap(),
    )
}

/// Z/2 as a one-object category.
pub fn zmod2() -> Arc<FinCat> {
    monoid("Z/2", &["id_*", "s"], &[&[0, 1], &[1, 0]])
}

/// The two-element monoid {1, e} with e·e = e.
pub fn idempotent_monoid() -> Arc<FinCat> {
    monoid("idem", &["id_*", "e"], &[&[0, 1], &[1, 1]])
}

/// The free category on an acyclic quiver: morphisms are paths, named by
/// joining edge identifiers with `.` in diagrammatic order.
pub fn free_category(
    name: &str,
    objects: &[&str],
    edges: &[(&str, usize, usize)],
) -> Arc<FinCat> {
    // enumerate paths by length; acyclicity keeps this finite
    let mut paths: Vec<(Vec<usize>, usize, usize)> = Vec::new(); // (edge list, src, dst)
    for (x, _) in objects.iter().enumerate() {
        paths.push((vec![], x, x));
    }
    let mut frontier: Vec<(Vec<usize>, usize, usize)> =
        edges.iter().enumerate().map(|(i, &(_, s, d))| (vec![i], s, d)).collect();
    while !frontier.is_empty() {
        paths.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for (p, s, d) in &frontier {
            for (i, &(_, es, ed)) in edges.iter().enumerate() {
                if es == *d {
                    let mut q = p.clone();
                    q.push(i);
                    next.push((q, *s, ed));
                }
            }
        }
        assert!(paths.len() < 10_000, "quiver is not acyclic or too large");
        frontier = next;
    }
    let path_id = |p: &[usize], src: usize| -> String {
        if p.is_empty() {
            format!("id_{}", objects[src])
        } else {
            p.iter().map(|&e| edges[e].0).collect::<Vec<_>>().join(".")
        }
    };
    let mut key_index = HashMap::new();
    let morphisms: Vec<Morph> = paths
        .iter()
        .enumerate()
        .map(|(i, (p, s, d))| {
            key_index.insert((p.clone(), *s), i);
            Morph { id: path_id(p, *s), src: *s, dst: *d }
        })
        .collect();
    let identity = (0..objects.len())
        .map(|x| paths.iter().position(|(p, s, _)| p.is_empty() && *s == x).unwrap())
        .collect();
    let mut compose = HashMap::new();
    for (fi, (fp, fs, fd)) in paths.iter().enumerate() {
        for (gi, (gp, gs, _)) in paths.iter().enumerate() {
            if *gs == *fd {
                let mut h = fp.clone();
                h.extend(gp);
                compose.insert((gi, fi), key_index[&(h, *fs)]);
            }
        }
    }
    let objects = objects.iter().map(|s| s.to_string()).collect();
    Arc::new(FinCat::assemble(name, objects, morphisms, identity, compose).unwrap())
}

pub fn free_parallel_pair() -> Arc<FinCat> {
    free_category("par", &["a", "b"], &[("e1", 0, 1), ("e2", 0, 1)])
}

pub fn free_span() -> Arc<FinCat> {
    free_category("span", &["a", "b", "c"], &[("l", 0, 1), ("r", 0, 2)])
}

pub fn free_triangle() -> Arc<FinCat> {
    free_category("tri", &["a", "b", "c"], &[("f", 0, 1), ("g", 1, 2), ("h", 0, 2)])
}

/// The deterministic base category corpus (each ≤ 4 objects, ≤ 12
/// morphisms): posets, monoids, free categories, plus opposites and a few
/// binary products.
pub fn base_categories() -> Vec<Arc<FinCat>> {
    vec![
        terminal(),
        walking_arrow(),
        chain(2),
        chain(3),
        square_poset(),
        diamond_poset(),
        zmod2(),
        idempotent_monoid(),
        free_parallel_pair(),
        free_span(),
        free_triangle(),
        opposite(&free_span()),
        opposite(&chain(2)),
        product(&walking_arrow(), &walking_arrow()),
        product(&walking_arrow(), &zmod2()),
    ]
}

/// g(a)={x,y}, g(b)={z,w}, u ↦ (x↦z, y↦z) over the walking arrow.
pub fn example_two_diagram(two: &Arc<FinCat>) -> SetFunctor {
    SetFunctor {
        base: two.clone(),
        sets: vec![vec!["x".into(), "y".into()], vec!["z".into(), "w".into()]],
        maps: vec![vec![0, 1], vec![0, 1], vec![0, 0]],
    }
}

/// F(a)={p}, F(b)={q,r}, u ↦ (p↦q) over the walking arrow.
pub fn example_two_colim_diagram(two: &Arc<FinCat>) -> SetFunctor {
    SetFunctor {
        base: two.clone(),
        sets: vec![vec!["p".into()], vec!["q".into(), "r".into()]],
        maps: vec![vec![0, 1], vec![0, 1], vec![0]],
    }
}

/// Small named (category, diagram) pairs for universal-property tests.
pub fn small_diagrams() -> Vec<(Arc<FinCat>, SetFunctor)> {
    let mut out = Vec::new();
    for c in base_categories() {
        out.push((c.clone(), constant_set(&c, &["*"])));
        for x in 0..c.n_objects() {
            out.push((c.clone(), representable_cov(&c, x)));
        }
    }
    let two = walking_arrow();
    out.push((two.clone(), example_two_diagram(&two)));
    out.push((two.clone(), example_two_colim_diagram(&two)));
    out
}

/// Try to draw a random functorial Set-valued assignment on `c` by
/// rejection sampling.
pub fn random_setfunctor(
    c: &Arc<FinCat>,
    rng: &mut ChaCha8Rng,
    cap: usize,
    tries: usize,
) -> Option<SetFunctor> {
    for _ in 0..tries {
        let sizes: Vec<usize> = (0..c.n_objects()).map(|_| rng.gen_range(1..=cap)).collect();
        let sets: Vec<Vec<String>> = sizes
            .iter()
            .enumerate()
            .map(|(x, &n)| (0..n).map(|e| format!("{}#{e}", c.objects[x])).collect())
            .collect();
        let maps: Vec<Vec<usize>> = c
            .morphisms
            .iter()
            .enumerate()
            .map(|(m, mor)| {
                if c.is_identity(m) {
                    (0..sizes[mor.src]).collect()
                } else {
                    (0..sizes[mor.src]).map(|_| rng.gen_range(0..sizes[mor.dst])).collect()
                }
            })
            .collect();
        let f = SetFunctor { base: c.clone(), sets, maps };
        if f.validate().is_ok() {
            return Some(f);
        }
    }
    None
}

/// A pool of validated covariant Set-valued functors on `c`: representables,
/// constants, coproducts, plus rejection-sampled random assignments.
pub fn covariant_pool(c: &Arc<FinCat>, seed: u64, cap: usize, count: usize) -> Vec<SetFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f76); // per-kind stream
    let mut pool = Vec::new();
    for x in 0..c.n_objects() {
        pool.push(representable_cov(c, x));
    }
    pool.push(constant_set(c, &["*"]));
    pool.push(constant_set(c, &["0", "1"]));
    if c.n_objects() >= 2 {
        pool.push(coproduct_set(&representable_cov(c, 0), &representable_cov(c, 1)));
    }
    while pool.len() < count {
        match random_setfunctor(c, &mut rng, cap, 50) {
            Some(f) => pool.push(f),
            None => pool.push(constant_set(c, &["*"])),
        }
    }
    pool.truncate(count);
    pool
}

/// A pool of presheaves on `c` (Set-valued functors over `opposite(c)`).
pub fn presheaf_pool(c: &Arc<FinCat>, seed: u64, cap: usize, count: usize) -> Vec<SetFunctor> {
    let op = opposite(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x707368);
    let mut pool = Vec::new();
    for x in 0..c.n_objects() {
        pool.push(representable_psh(c, x));
    }
    pool.push(constant_set(&op, &["*"]));
    if c.n_objects() >= 2 {
        pool.push(coproduct_set(&representable_psh(c, 0), &representable_psh(c, 1)));
    }
    while pool.len() < count {
        match random_setfunctor(&op, &mut rng, cap, 50) {
            Some(f) => pool.push(f),
            None => pool.push(constant_set(&op, &["*"])),
        }
    }
    pool.truncate(count);
    pool
}

/// Objectwise product of Set-valued functors on two bases, over the product
/// base. Element names are `a⊗b`.
pub fn outer_set(f: &SetFunctor, g: &SetFunctor) -> SetFunctor {
    let base = product(&f.base, &g.base);
    let nb = g.base.n_objects();
    let nbm = g.base.n_morphisms();
    let sets: Vec<Vec<String>> = (0..base.n_objects())
        .map(|p| {
            let (x, y) = (p / nb, p % nb);
            f.sets[x]
                .iter()
                .flat_map(|a| g.sets[y].iter().map(move |b| format!("{a}⊗{b}")))
                .collect()
        })
        .collect();
    let maps = (0..base.n_morphisms())
        .map(|pm| {
            let (u, v) = (pm / nbm, pm % nbm);
            let src = base.morphisms[pm].src;
            let (x, y) = (src / nb, src % nb);
            let dst_y = base.morphisms[pm].dst % nb;
            let w_dst = g.sets[dst_y].len();
            (0..f.sets[x].len())
                .flat_map(|a| {
                    (0..g.sets[y].len())
                        .map(move |b| f.maps[u][a] * w_dst + g.maps[v][b])
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    SetFunctor { base, sets, maps }
}

/// Bifunctors in end convention (over `product(opposite(c), c)`): the Hom
/// bifunctor, outer products of presheaf and covariant pool members, and a
/// constant.
pub fn end_bifunctor_pool(c: &Arc<FinCat>, seed: u64, cap: usize, count: usize) -> Vec<SetFunctor> {
    let mut pool = vec![hom_end_bifunctor(c)];
    let contra = presheaf_pool(c, seed, cap, 3);
    let cov = covariant_pool(c, seed, cap, 3);
    for a in &contra {
        for b in &cov {
            pool.push(outer_set(a, b));
        }
    }
    let op = opposite(c);
    pool.push(constant_set(&product(&op, c), &["*"]));
    pool.truncate(count.max(1));
    pool
}

/// Bifunctors in coend convention (over `product(c, opposite(c))`).
pub fn coend_bifunctor_pool(
    c: &Arc<FinCat>,
    seed: u64,
    cap: usize,
    count: usize,
) -> Vec<SetFunctor> {
    let mut pool = vec![hom_coend_bifunctor(c)];
    let cov = covariant_pool(c, seed, cap, 3);
    let contra = presheaf_pool(c, seed, cap, 3);
    for a in &cov {
        for b in &contra {
            pool.push(outer_set(a, b));
        }
    }
    let op = opposite(c);
    pool.push(constant_set(&product(c, &op), &["*"]));
    pool.truncate(count.max(1));
    pool
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    #[test]
    fn corpus_categories_validate() {
        for c in base_categories() {
            assert_eq!(validate_category(&c), Ok(()), "category {}", c.name);
        }
    }

    #[test]
    fn pools_validate() {
        for c in base_categories().into_iter().take(8) {
            for f in covariant_pool(&c, 7, 3, 6) {
                f.validate().unwrap();
            }
            for f in presheaf_pool(&c, 7, 3, 6) {
                f.validate().unwrap();
            }
            for f in end_bifunctor_pool(&c, 7, 2, 4) {
                f.validate().unwrap();
            }
            for f in coend_bifunctor_pool(&c, 7, 2, 4) {
                f.validate().unwrap();
            }
        }
    }

    #[test]
    fn free_category_counts() {
        let tri = free_triangle();
        assert_eq!(tri.n_objects(), 3);
        assert_eq!(tri.n_morphisms(), 7); // 3 ids, f, g, h, g.f
    }
}
