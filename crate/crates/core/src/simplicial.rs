//! The combinatorics of the simplex category Δ: truncations as finite
//! categories, the pointed variant Δ_* with its adjoint triple, the
//! last-vertex and initial-vertex morphism classes, the order-reversal
//! automorphism, and the edgewise-subdivision endomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCat, FinFunctor, Morph};
use crate::{Error, Result};

/// A monotone map [n] → [m], as its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    pub src: usize,
    pub dst: usize,
    pub vals: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(src: usize, dst: usize, vals: Vec<usize>) -> Result<MonotoneMap> {
        if vals.len() != src + 1
            || vals.windows(2).any(|w| w[0] > w[1])
            || vals.iter().any(|&v| v > dst)
        {
            return Err(Error::Shape(format!("not a monotone map [{src}] -> [{dst}]: {vals:?}")));
        }
        Ok(MonotoneMap { src, dst, vals })
    }

    pub fn id(n: usize) -> MonotoneMap {
        MonotoneMap { src: n, dst: n, vals: (0..=n).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonotoneMap) -> MonotoneMap {
        debug_assert_eq!(other.dst, self.src);
        MonotoneMap {
            src: other.src,
            dst: self.dst,
            vals: other.vals.iter().map(|&i| self.vals[i]).collect(),
        }
    }

    /// Last-vertex map: φ(n) = m.
    pub fn is_lv(&self) -> bool {
        *self.vals.last().unwrap() == self.dst
    }

    /// Initial-vertex map: φ(0) = 0.
    pub fn is_iv(&self) -> bool {
        self.vals[0] == 0
    }

    pub fn key(&self) -> String {
        format!(
            "[{}]>[{}]:{}",
            self.src,
            self.dst,
            self.vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
        )
    }
}

/// All monotone maps [n] → [m], lexicographic in the value table.
pub fn monotone_maps(n: usize, m: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn go(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if cur.len() == n + 1 {
            out.push(MonotoneMap { src: n, dst: m, vals: cur.clone() });
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=m {
            cur.push(v);
            go(n, m, cur, out);
            cur.pop();
        }
    }
    go(n, m, &mut cur, &mut out);
    out
}

/// The order-reversing automorphism: rev(φ)(i) = m − φ(n − i).
pub fn rev(phi: &MonotoneMap) -> MonotoneMap {
    let (n, m) = (phi.src, phi.dst);
    MonotoneMap { src: n, dst: m, vals: (0..=n).map(|i| m - phi.vals[n - i]).collect() }
}

/// The edgewise endomorphism on objects: [n] ↦ [2n+1] (the join of [n]
/// reversed with [n]). On morphisms the first block is reversed, the second
/// direct; this action is validated by the naturality tests for ι and ρ.
pub fn epsilon(phi: &MonotoneMap) -> MonotoneMap {
    let (n, m) = (phi.src, phi.dst);
    let mut vals = Vec::with_capacity(2 * n + 2);
    for i in 0..=n {
        vals.push(m - phi.vals[n - i]);
    }
    for j in 0..=n {
        vals.push(m + 1 + phi.vals[j]);
    }
    MonotoneMap { src: 2 * n + 1, dst: 2 * m + 1, vals }
}

/// ι_n : [n] → [2n+1], the inclusion of the direct factor (j ↦ n+1+j).
pub fn iota(n: usize) -> MonotoneMap {
    MonotoneMap { src: n, dst: 2 * n + 1, vals: (0..=n).map(|j| n + 1 + j).collect() }
}

/// ρ_n : [n] → [2n+1], the inclusion of the reversed factor. In position
/// coordinates this is the identity on indices; its naturality square runs
/// through rev.
pub fn rho(n: usize) -> MonotoneMap {
    MonotoneMap { src: n, dst: 2 * n + 1, vals: (0..=n).collect() }
}

/// The truncated simplex category Δ^{≤N} as a finite category.
pub struct DeltaTrunc {
    pub max_dim: usize,
    pub cat: Arc<FinCat>,
    /// The monotone map underlying each morphism, aligned with the table.
    pub mors: Vec<MonotoneMap>,
    index: HashMap<String, usize>,
}

impl DeltaTrunc {
    pub fn new(max_dim: usize) -> DeltaTrunc {
        let objects: Vec<String> = (0..=max_dim).map(|n| format!("[{n}]")).collect();
        let mut mors = Vec::new();
        let mut morphisms = Vec::new();
        let mut identity = vec![0; objects.len()];
        let mut index = HashMap::new();
        for n in 0..=max_dim {
            for m in 0..=max_dim {
                for phi in monotone_maps(n, m) {
                    let i = morphisms.len();
                    if n == m && phi == MonotoneMap::id(n) {
                        identity[n] = i;
                    }
                    index.insert(phi.key(), i);
                    morphisms.push(Morph { id: phi.key(), src: n, dst: m });
                    mors.push(phi);
                }
            }
        }
        let mut compose = HashMap::new();
        for (fi, f) in mors.iter().enumerate() {
            for (gi, g) in mors.iter().enumerate() {
                if g.src == f.dst {
                    compose.insert((gi, fi), index[&g.compose(f).key()]);
                }
            }
        }
        let cat = Arc::new(
            FinCat::assemble(format!("Delta<={max_dim}"), objects, morphisms, identity, compose)
                .unwrap(),
        );
        DeltaTrunc { max_dim, cat, mors, index }
    }

    pub fn mor_index(&self, phi: &MonotoneMap) -> usize {
        self.index[&phi.key()]
    }
}

/// The truncated pointed simplex category Δ_*^{≤N}: objects ([n], i) with
/// 0 ≤ i ≤ n, morphisms monotone maps φ with φ(i) ≤ j.
pub struct DeltaStarTrunc {
    pub max_dim: usize,
    pub cat: Arc<FinCat>,
    /// (n, i) per object, aligned with the table.
    pub objs: Vec<(usize, usize)>,
    /// (src object, dst object, underlying map) per morphism.
    pub mors: Vec<(usize, usize, MonotoneMap)>,
    obj_index: HashMap<(usize, usize), usize>,
    mor_index: HashMap<(usize, usize, String), usize>,
}

impl DeltaStarTrunc {
    pub fn new(max_dim: usize) -> DeltaStarTrunc {
        let mut objs = Vec::new();
        let mut obj_index = HashMap::new();
        for n in 0..=max_dim {
            for i in 0..=n {
                obj_index.insert((n, i), objs.len());
                objs.push((n, i));
            }
        }
        let objects: Vec<String> = objs.iter().map(|&(n, i)| format!("([{n}],{i})")).collect();
        let mut mors = Vec::new();
        let mut morphisms = Vec::new();
        let mut identity = vec![0; objs.len()];
        let mut mor_index = HashMap::new();
        for (s, &(n, i)) in objs.iter().enumerate() {
            for (d, &(m, j)) in objs.iter().enumerate() {
                for phi in monotone_maps(n, m) {
                    if phi.vals[i] > j {
                        continue;
                    }
                    let k = morphisms.len();
                    if s == d && phi == MonotoneMap::id(n) {
                        identity[s] = k;
                    }
                    mor_index.insert((s, d, phi.key()), k);
                    morphisms.push(Morph {
                        id: format!("([{n}],{i})>([{m}],{j}):{}", tail(&phi)),
                        src: s,
                        dst: d,
                    });
                    mors.push((s, d, phi));
                }
            }
        }
        let mut compose = HashMap::new();
        for (fi, (fs, fd, f)) in mors.iter().enumerate() {
            for (gi, (gs, gd, g)) in mors.iter().enumerate() {
                if *gs == *fd {
                    let h = g.compose(f);
                    compose.insert((gi, fi), mor_index[&(*fs, *gd, h.key())]);
                }
            }
        }
        let cat = Arc::new(
            FinCat::assemble(
                format!("Delta*<={max_dim}"),
                objects,
                morphisms,
                identity,
                compose,
            )
            .unwrap(),
        );
        DeltaStarTrunc { max_dim, cat, objs, mors, obj_index, mor_index }
    }

    pub fn obj(&self, n: usize, i: usize) -> usize {
        self.obj_index[&(n, i)]
    }
    pub fn mor(&self, src: usize, dst: usize, phi: &MonotoneMap) -> usize {
        self.mor_index[&(src, dst, phi.key())]
    }
}

fn tail(phi: &MonotoneMap) -> String {
    phi.vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

/// The projection π : Δ_* → Δ, forgetting the marked vertex.
pub fn pi_functor(star: &DeltaStarTrunc, delta: &DeltaTrunc) -> FinFunctor {
    FinFunctor {
        source: star.cat.clone(),
        target: delta.cat.clone(),
        obj_map: star.objs.iter().map(|&(n, _)| n).collect(),
        mor_map: star.mors.iter().map(|(_, _, phi)| delta.mor_index(phi)).collect(),
    }
}

/// The section l : Δ → Δ_*, [n] ↦ ([n], n). Right adjoint to π.
pub fn l_functor(delta: &DeltaTrunc, star: &DeltaStarTrunc) -> FinFunctor {
    FinFunctor {
        source: delta.cat.clone(),
        target: star.cat.clone(),
        obj_map: (0..=delta.max_dim).map(|n| star.obj(n, n)).collect(),
        mor_map: delta
            .mors
            .iter()
            .map(|phi| star.mor(star.obj(phi.src, phi.src), star.obj(phi.dst, phi.dst), phi))
            .collect(),
    }
}

/// λ : Δ_* → Δ, ([n], i) ↦ [i], restricting maps to the initial segment.
/// Right adjoint to l.
pub fn lambda_functor(star: &DeltaStarTrunc, delta: &DeltaTrunc) -> FinFunctor {
    let obj_map: Vec<usize> = star.objs.iter().map(|&(_, i)| i).collect();
    let mor_map = star
        .mors
        .iter()
        .map(|(s, d, phi)| {
            let i = star.objs[*s].1;
            let j = star.objs[*d].1;
            let restricted = MonotoneMap { src: i, dst: j, vals: phi.vals[..=i].to_vec() };
            delta.mor_index(&restricted)
        })
        .collect();
    FinFunctor {
        source: star.cat.clone(),
        target: delta.cat.clone(),
        obj_map,
        mor_map,
    }
}

/// Whether a Δ_* morphism is π-cocartesian: over φ, of the form
/// ([n], i) → ([m], φ(i)).
pub fn is_cocartesian(star: &DeltaStarTrunc, mor: usize) -> bool {
    let (s, d, phi) = &star.mors[mor];
    let i = star.objs[*s].1;
    star.objs[*d].1 == phi.vals[i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{compose_functor, validate_category, validate_functor};

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn hom_counts_are_binomial() {
        for n in 0..=4 {
            for m in 0..=4 {
                assert_eq!(monotone_maps(n, m).len(), binom(n + m + 1, n + 1), "[{n}]->[{m}]");
            }
        }
    }

    #[test]
    fn delta_trunc_is_a_category() {
        let d = DeltaTrunc::new(3);
        assert_eq!(validate_category(&d.cat), Ok(()));
    }

    #[test]
    fn delta_star_trunc_is_a_category() {
        let s = DeltaStarTrunc::new(3);
        assert_eq!(validate_category(&s.cat), Ok(()));
        // morphism count matches direct enumeration
        let mut count = 0;
        for &(n, i) in &s.objs {
            for &(m, j) in &s.objs {
                count += monotone_maps(n, m).iter().filter(|p| p.vals[i] <= j).count();
            }
        }
        assert_eq!(s.cat.n_morphisms(), count);
    }

    #[test]
    fn triple_functors_validate_and_sections_hold() {
        let d = DeltaTrunc::new(3);
        let s = DeltaStarTrunc::new(3);
        let pi = pi_functor(&s, &d);
        let l = l_functor(&d, &s);
        let lam = lambda_functor(&s, &d);
        validate_functor(&pi).unwrap();
        validate_functor(&l).unwrap();
        validate_functor(&lam).unwrap();
        // π ∘ l = id and λ ∘ l = id exactly
        let id = crate::fincat::FinFunctor::identity(&d.cat);
        assert_eq!(compose_functor(&pi, &l), id);
        assert_eq!(compose_functor(&lam, &l), id);
        // spot values
        assert_eq!(s.objs[pi.obj_map.iter().position(|_| false).unwrap_or(0)].0, 0);
        assert_eq!(lam.obj_map[s.obj(3, 1)], 1); // ([3],1) ↦ [1]
        assert_eq!(l.obj_map[2], s.obj(2, 2)); // [2] ↦ ([2],2)
    }

    #[test]
    fn pi_l_adjunction_hom_bijection() {
        // Hom_{Δ*}(([n],i), l[m]) ≅ Hom_Δ([n],[m]) via the underlying map,
        // for all n, m, i ≤ 3
        let s = DeltaStarTrunc::new(3);
        for &(n, i) in &s.objs {
            for m in 0..=3usize {
                let x = s.obj(n, i);
                let lm = s.obj(m, m);
                let hom_star: Vec<&MonotoneMap> = s
                    .mors
                    .iter()
                    .filter(|(a, b, _)| *a == x && *b == lm)
                    .map(|(_, _, p)| p)
                    .collect();
                let hom_delta = monotone_maps(n, m);
                assert_eq!(hom_star.len(), hom_delta.len());
                // the bijection is literally the underlying map
                for p in &hom_delta {
                    assert!(hom_star.iter().any(|q| *q == p));
                }
            }
        }
    }

    #[test]
    fn l_lambda_adjunction_hom_bijection() {
        // Hom_{Δ*}(l[n], ([m],i)) ≅ Hom_Δ([n], [i]) via codomain restriction
        let s = DeltaStarTrunc::new(3);
        for n in 0..=3usize {
            for &(m, i) in &s.objs {
                let ln = s.obj(n, n);
                let y = s.obj(m, i);
                let hom_star: Vec<&MonotoneMap> = s
                    .mors
                    .iter()
                    .filter(|(a, b, _)| *a == ln && *b == y)
                    .map(|(_, _, p)| p)
                    .collect();
                // a map l[n] → ([m],i) is φ with φ(n) ≤ i, i.e. image in [i]
                let hom_delta = monotone_maps(n, i);
                assert_eq!(hom_star.len(), hom_delta.len());
                for p in &hom_delta {
                    // include into [m]
                    assert!(hom_star.iter().any(|q| q.vals == p.vals));
                }
            }
        }
    }

    #[test]
    fn adjunction_bijections_are_natural() {
        // transport of the π ⊣ l bijection along pre/post-composition
        let d = DeltaTrunc::new(2);
        let s = DeltaStarTrunc::new(2);
        let pi = pi_functor(&s, &d);
        let l = l_functor(&d, &s);
        let lam = lambda_functor(&s, &d);
        // π ⊣ l: b(f) = π(f); naturality b(l(ω)∘f∘ξ) = ω∘b(f)∘π(ξ)
        for (fi, (fs, fd, _)) in s.mors.iter().enumerate() {
            if s.objs[*fd].1 != s.objs[*fd].0 {
                continue; // target must be l[m]
            }
            for (xi, (_, xd, _)) in s.mors.iter().enumerate() {
                if *xd != *fs {
                    continue;
                }
                for (wi, w) in d.mors.iter().enumerate() {
                    if w.src != s.objs[*fd].0 {
                        continue;
                    }
                    let lw = l.mor_map[wi];
                    let lhs = pi.mor_map[s.cat.comp(lw, s.cat.comp(fi, xi))];
                    let rhs = d.cat.comp(
                        d.cat.comp(d.mor_index(w), pi.mor_map[fi]),
                        pi.mor_map[xi],
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // l ⊣ λ: b(g) = λ(g) on maps out of l[n]
        for (gi, (gs, _, _)) in s.mors.iter().enumerate() {
            if s.objs[*gs].1 != s.objs[*gs].0 {
                continue;
            }
            for (hi, (hs, hd, _)) in s.mors.iter().enumerate() {
                if *hs != s.mors[gi].1 {
                    continue;
                }
                let _ = hd;
                let lhs = lam.mor_map[s.cat.comp(hi, gi)];
                let rhs = d.cat.comp(lam.mor_map[hi], lam.mor_map[gi]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn counit_is_cocartesian_with_factorization() {
        // counit lλ([n],i) = ([i],i) → ([n],i) is the segment inclusion; it
        // is cocartesian and has the unique-factorization property
        let s = DeltaStarTrunc::new(3);
        for &(n, i) in &s.objs {
            let src = s.obj(i, i);
            let dst = s.obj(n, i);
            let inc = MonotoneMap::new(i, n, (0..=i).collect()).unwrap();
            let counit = s.mor(src, dst, &inc);
            assert!(is_cocartesian(&s, counit));
            assert!(inc.is_iv());
            // factorization: any h: ([i],i) → ([k],l) over ψ∘inc with ψ from
            // [n] factors uniquely through the counit
            for (hi, (hs, hd, h)) in s.mors.iter().enumerate() {
                if *hs != src {
                    continue;
                }
                let (k, _l) = s.objs[*hd];
                for psi in monotone_maps(n, k) {
                    if psi.compose(&inc) != *h {
                        continue;
                    }
                    if psi.vals[i] > s.objs[*hd].1 {
                        continue; // ψ is not a Δ_* morphism to that object
                    }
                    let through = s.mor(dst, *hd, &psi);
                    assert_eq!(s.cat.comp(through, counit), hi);
                }
            }
        }
    }

    #[test]
    fn rev_is_an_involution_and_swaps_lv_iv() {
        for n in 0..=3 {
            assert_eq!(rev(&MonotoneMap::id(n)), MonotoneMap::id(n));
            for m in 0..=3 {
                for phi in monotone_maps(n, m) {
                    assert_eq!(rev(&rev(&phi)), phi);
                    assert_eq!(rev(&phi).is_lv(), phi.is_iv());
                    assert_eq!(rev(&phi).is_iv(), phi.is_lv());
                }
            }
        }
    }

    #[test]
    fn rev_is_a_functor() {
        for n in 0..=2 {
            for m in 0..=2 {
                for k in 0..=2 {
                    for f in monotone_maps(n, m) {
                        for g in monotone_maps(m, k) {
                            assert_eq!(rev(&g.compose(&f)), rev(&g).compose(&rev(&f)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rev_of_coface() {
        // rev(δ^0: [0]→[1]) = δ^1
        let d0 = MonotoneMap::new(0, 1, vec![1]).unwrap();
        let d1 = MonotoneMap::new(0, 1, vec![0]).unwrap();
        assert_eq!(rev(&d0), d1);
    }

    #[test]
    fn epsilon_objects_and_identities() {
        assert_eq!(epsilon(&MonotoneMap::id(0)), MonotoneMap::id(1));
        for n in 0..=3 {
            assert_eq!(epsilon(&MonotoneMap::id(n)), MonotoneMap::id(2 * n + 1));
        }
    }

    #[test]
    fn epsilon_is_a_functor() {
        for n in 0..=2 {
            for m in 0..=2 {
                for k in 0..=2 {
                    for f in monotone_maps(n, m) {
                        for g in monotone_maps(m, k) {
                            assert_eq!(epsilon(&g.compose(&f)), epsilon(&g).compose(&epsilon(&f)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_of_coface_example() {
        // ε(δ^1: [0]→[1]) = [1]→[3] with values (1, 2); neither IV nor LV,
        // consistent with δ^1 ∉ LV
        let d1 = MonotoneMap::new(0, 1, vec![0]).unwrap();
        let e = epsilon(&d1);
        assert_eq!(e.vals, vec![1, 2]);
        assert!(!e.is_iv() && !e.is_lv());
    }

    #[test]
    fn epsilon_sends_lv_into_iv_and_lv() {
        for n in 0..=2 {
            for m in 0..=3 {
                for phi in monotone_maps(n, m) {
                    if phi.is_lv() {
                        let e = epsilon(&phi);
                        assert!(e.is_iv() && e.is_lv(), "ε({phi:?}) = {e:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn iota_rho_are_natural() {
        // ε(φ)∘ι_n = ι_m∘φ and ε(φ)∘ρ_n = ρ_m∘rev(φ) for all φ: [n]→[m]
        assert_eq!(iota(0).vals, vec![1]);
        assert_eq!(rho(0).vals, vec![0]);
        for n in 0..=2 {
            for m in 0..=2 {
                for phi in monotone_maps(n, m) {
                    assert_eq!(epsilon(&phi).compose(&iota(n)), iota(m).compose(&phi));
                    assert_eq!(epsilon(&phi).compose(&rho(n)), rho(m).compose(&rev(&phi)));
                }
            }
        }
    }

    #[test]
    fn rev_extends_to_an_automorphism_of_delta_trunc() {
        let d = DeltaTrunc::new(3);
        let f = FinFunctor {
            source: d.cat.clone(),
            target: d.cat.clone(),
            obj_map: (0..=3).collect(),
            mor_map: d.mors.iter().map(|p| d.mor_index(&rev(p))).collect(),
        };
        validate_functor(&f).unwrap();
        // involution on morphisms
        for (i, p) in d.mors.iter().enumerate() {
            assert_eq!(d.mor_index(&rev(&rev(p))), i);
        }
    }
}
