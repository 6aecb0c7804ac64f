//! The property-check suites: every route-independence and structural
//! invariant, run over the seeded corpus with reproducible instance names.
//!
//! Each check returns a list of [`Record`]s with a stable field order, so a
//! fixed [`RunConfig`] always produces byte-identical structured output. The
//! `mutate` flag injects a deliberately variance-flipped comparison into the
//! naturality check; it must produce at least one failure, which is how the
//! harness proves it can see red.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coends::{
    check_fubini, coend_simplicial, coend_via_coequalizer, coend_via_simplices, coend_via_tw,
    coends_agree, colim_bk, end_via_equalizer, end_via_simplices, end_via_tw, ends_agree,
    Bifunctor, Convention,
};
use crate::constructions::{epsilon_compare, simplices, twisted, twsquare_commutes, Handedness};
use crate::corpus;
use crate::fincat::{opposite, FinCat};
use crate::simplicial::{epsilon, monotone_maps, DeltaStarTrunc};
use crate::weighted::{
    cocompletion_check, coend_as_weighted, density_check, nat_space, wcolimit_via_coend,
    wcolimit_via_fibration, wcolimits_agree, wlimit_via_end, wlimit_via_fibration, wlimits_agree,
};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Seed for corpus generation.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Truncation level N for simplex-category routes.
    #[serde(default = "default_trunc")]
    pub trunc: usize,
    /// Cap on generated set sizes.
    #[serde(default = "default_set_cap")]
    pub set_cap: usize,
    /// Enumeration budget for backtracking searches.
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Inject a variance-flipped comparison that must fail.
    #[serde(default)]
    pub mutate: bool,
}

fn default_seed() -> u64 {
    17
}
fn default_trunc() -> usize {
    1
}
fn default_set_cap() -> usize {
    3
}
fn default_budget() -> usize {
    1_000_000
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: default_seed(),
            trunc: default_trunc(),
            set_cap: default_set_cap(),
            budget: default_budget(),
            mutate: false,
        }
    }
}

/// One checked instance. Field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check: &'static str,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

impl Record {
    fn ok(check: &'static str, instance: impl Into<String>, detail: impl Into<String>) -> Record {
        Record { check, instance: instance.into(), pass: true, detail: detail.into() }
    }
    fn fail(check: &'static str, instance: impl Into<String>, detail: impl Into<String>) -> Record {
        Record { check, instance: instance.into(), pass: false, detail: detail.into() }
    }
    fn from_result(
        check: &'static str,
        instance: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Record {
        Record { check, instance: instance.into(), pass, detail: detail.into() }
    }
    /// The structured output line: stable field order, one record per line.
    pub fn line(&self) -> String {
        format!(
            "check={} instance={} pass={} detail={}",
            self.check, self.instance, self.pass, self.detail
        )
    }
}

pub fn all_pass(records: &[Record]) -> bool {
    records.iter().all(|r| r.pass)
}

pub fn failures(records: &[Record]) -> Vec<&Record> {
    records.iter().filter(|r| !r.pass).collect()
}

fn corpus_categories() -> Vec<Arc<FinCat>> {
    corpus::base_categories()
        .into_iter()
        .filter(|c| c.n_objects() <= 4 && c.n_morphisms() <= 12)
        .collect()
}

/// Three end routes agree on every corpus (category, bifunctor) instance.
pub fn check_end_routes(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        for (i, f) in corpus::end_bifunctor_pool(&c, cfg.seed, cfg.set_cap, 4)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}#{}", c.name, i);
            let b = match Bifunctor::new(&c, f, Convention::End) {
                Ok(b) => b,
                Err(e) => {
                    out.push(Record::fail("end_routes", name, e.to_string()));
                    continue;
                }
            };
            let routes = end_via_equalizer(&b).and_then(|eq| {
                let tw = end_via_tw(&b)?;
                let simp = end_via_simplices(&b, cfg.trunc, cfg.budget)?;
                Ok(vec![eq, tw, simp])
            });
            out.push(match routes {
                Ok(rs) => Record::from_result(
                    "end_routes",
                    name,
                    ends_agree(&rs),
                    format!("{} elements", rs[0].families.len()),
                ),
                Err(e) => Record::fail("end_routes", name, e.to_string()),
            });
        }
    }
    out
}

/// The three coend routes plus the level-1 simplicial presentation agree.
pub fn check_coend_routes(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        for (i, f) in corpus::coend_bifunctor_pool(&c, cfg.seed, cfg.set_cap, 4)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}#{}", c.name, i);
            let b = match Bifunctor::new(&c, f, Convention::Coend) {
                Ok(b) => b,
                Err(e) => {
                    out.push(Record::fail("coend_routes", name, e.to_string()));
                    continue;
                }
            };
            let routes = coend_via_coequalizer(&b).and_then(|coeq| {
                let tw = coend_via_tw(&b)?;
                let simp = coend_via_simplices(&b, cfg.trunc, cfg.budget)?;
                let level1 = coend_simplicial(&b, cfg.budget)?;
                Ok(vec![coeq, tw, simp, level1])
            });
            out.push(match routes {
                Ok(rs) => Record::from_result(
                    "coend_routes",
                    name,
                    coends_agree(&rs),
                    format!("{} classes", rs[0].n_classes),
                ),
                Err(e) => Record::fail("coend_routes", name, e.to_string()),
            });
        }
    }
    out
}

/// Bousfield–Kan style colimit formula agrees with the direct colimit.
pub fn check_bk(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        for (i, f) in corpus::covariant_pool(&c, cfg.seed, cfg.set_cap, 3)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}#{}", c.name, i);
            out.push(match colim_bk(&f) {
                Ok(bk) => {
                    let direct = crate::setops::colimit(&f);
                    Record::from_result(
                        "bk_colimit",
                        name,
                        bk.class_of == direct.class_of && bk.n_classes == direct.n_classes,
                        format!("{} classes", direct.n_classes),
                    )
                }
                Err(e) => Record::fail("bk_colimit", name, e.to_string()),
            });
        }
    }
    out
}

/// Fubini: the joint end over c × d equals both iterated ends.
pub fn check_fubini_products(cfg: &RunConfig) -> Vec<Record> {
    let one = corpus::terminal();
    let two = corpus::walking_arrow();
    let z2 = corpus::zmod2();
    let pairs = [
        (one.clone(), one.clone()),
        (one.clone(), two.clone()),
        (one, z2.clone()),
        (two.clone(), two.clone()),
        (two, z2.clone()),
        (z2.clone(), z2),
    ];
    let mut out = Vec::new();
    for (c, d) in &pairs {
        let cd = crate::fincat::product(c, d);
        for (i, f) in corpus::end_bifunctor_pool(&cd, cfg.seed, cfg.set_cap, 2)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}x{}#{}", c.name, d.name, i);
            out.push(match check_fubini(c, d, &f) {
                Ok(rep) => Record::from_result(
                    "fubini",
                    name,
                    rep.agree(),
                    format!("{} elements", rep.joint.len()),
                ),
                Err(e) => Record::fail("fubini", name, e.to_string()),
            });
        }
    }
    out
}

/// Weighted limit and colimit route independence (end/coend formula vs
/// fibration over the category of elements).
pub fn check_weighted_routes(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        for (i, w) in corpus::covariant_pool(&c, cfg.seed, 2, 2).into_iter().enumerate() {
            for (j, psi) in corpus::covariant_pool(&c, cfg.seed + 23 + i as u64, cfg.set_cap, 2)
                .into_iter()
                .enumerate()
            {
                let name = format!("{}#lim{}:{}", c.name, i, j);
                let routes = wlimit_via_end(&w, &psi)
                    .and_then(|e| Ok((e, wlimit_via_fibration(&w, &psi)?)));
                out.push(match routes {
                    Ok((e, f)) => Record::from_result(
                        "wlimit_routes",
                        name,
                        wlimits_agree(&e, &f),
                        format!("{} elements", e.families.len()),
                    ),
                    Err(err) => Record::fail("wlimit_routes", name, err.to_string()),
                });
            }
        }
        for (i, w) in corpus::presheaf_pool(&c, cfg.seed, 2, 2).into_iter().enumerate() {
            for (j, phi) in corpus::covariant_pool(&c, cfg.seed + 57 + i as u64, 2, 2)
                .into_iter()
                .enumerate()
            {
                let name = format!("{}#colim{}:{}", c.name, i, j);
                let routes = wcolimit_via_coend(&w, &phi)
                    .and_then(|a| Ok((a, wcolimit_via_fibration(&w, &phi)?)));
                out.push(match routes {
                    Ok((a, b)) => Record::from_result(
                        "wcolimit_routes",
                        name,
                        wcolimits_agree(&a, &b),
                        format!("{} classes", a.n_classes),
                    ),
                    Err(err) => Record::fail("wcolimit_routes", name, err.to_string()),
                });
            }
        }
    }
    out
}

/// Nat(φ, ψ) is the end of the exponent; with `mutate`, the arguments of the
/// exponent pairing are flipped, which must surface as failures.
pub fn check_nat(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        let mut pool = corpus::presheaf_pool(&c, cfg.seed + 3, cfg.set_cap, 2);
        if c.n_objects() > 0 {
            pool.push(crate::fincat::representable_psh(&c, 0));
            pool.push(crate::fincat::constant_set(&opposite(&c), &["0", "1"]));
        }
        for i in 0..pool.len() {
            for j in 0..pool.len() {
                if (i + j) % 2 == 1 && i != j {
                    continue; // thin the grid, keep the diagonal
                }
                let (phi, psi) = (&pool[i], &pool[j]);
                let name = format!("{}#{}:{}", c.name, i, j);
                out.push(match nat_space(phi, psi, cfg.budget) {
                    Ok(rep) => Record::from_result(
                        "nat_space",
                        name.clone(),
                        rep.agree(),
                        format!("{} transformations", rep.nat_tables.len()),
                    ),
                    Err(e) => Record::fail("nat_space", name.clone(), e.to_string()),
                });
                if cfg.mutate {
                    let flipped = match (
                        crate::fincat::enumerate_nat(phi, psi, cfg.budget),
                        wlimit_via_end(psi, phi),
                    ) {
                        (Ok(nats), Ok(wl)) => {
                            let pass = nats.len() == wl.families.len();
                            Record::from_result(
                                "nat_space_mutated",
                                name,
                                pass,
                                format!("|Nat|={} flipped-end={}", nats.len(), wl.families.len()),
                            )
                        }
                        (a, b) => Record::fail(
                            "nat_space_mutated",
                            name,
                            format!("{:?} / {:?}", a.err(), b.err()),
                        ),
                    };
                    out.push(flipped);
                }
            }
        }
    }
    out
}

/// Every corpus presheaf is the colimit of representables over its category
/// of elements.
pub fn check_density(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        let mut pool = corpus::presheaf_pool(&c, cfg.seed + 11, cfg.set_cap, 2);
        for x in 0..c.n_objects().min(2) {
            pool.push(crate::fincat::representable_psh(&c, x));
        }
        for (i, phi) in pool.iter().enumerate() {
            let name = format!("{}#{}", c.name, i);
            out.push(match density_check(&c, phi) {
                Ok(()) => Record::ok("density", name, "bijective at every object"),
                Err(e) => Record::fail("density", name, e.to_string()),
            });
        }
    }
    out
}

/// Concrete twisted-arrow combinatorics: Tw of a chain is the expected pair
/// poset with terminal object, right-handed Tw is the identifier-exact
/// opposite, edgewise subdivision matches simplex levels, and the
/// comparison square commutes strictly.
pub fn check_tw_combinatorics(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    // Tw^ℓ([n]) for n ≤ 3: poset of pairs i ≤ j ordered by reverse
    // inclusion of intervals, with (0, n) terminal.
    for n in 1..=3usize {
        let c = corpus::chain(n);
        let tw = twisted(&c, Handedness::Left);
        let name = format!("chain({n})");
        let mut pass = tw.carrier.n_objects() == (n + 1) * (n + 2) / 2;
        for f in 0..c.n_morphisms() {
            for g in 0..c.n_morphisms() {
                let (fi, fj) = (c.morphisms[f].src, c.morphisms[f].dst);
                let (gi, gj) = (c.morphisms[g].src, c.morphisms[g].dst);
                let expect = usize::from(gi <= fi && fj <= gj);
                pass &= tw.carrier.hom(f, g).len() == expect;
            }
        }
        let top = c
            .morphisms
            .iter()
            .position(|m| m.src == 0 && m.dst == n)
            .expect("chain has a bottom-to-top morphism");
        let into_top = (0..tw.carrier.n_morphisms())
            .filter(|&m| tw.carrier.morphisms[m].dst == top)
            .count();
        pass &= into_top == tw.carrier.n_objects();
        out.push(Record::from_result(
            "tw_chain_poset",
            name,
            pass,
            format!("{} objects, (0,{n}) terminal", tw.carrier.n_objects()),
        ));
    }
    // Tw^r is the identifier-exact opposite of Tw^ℓ.
    for c in corpus_categories() {
        let l = twisted(&c, Handedness::Left);
        let r = twisted(&c, Handedness::Right);
        out.push(Record::from_result(
            "tw_right_is_opposite",
            c.name.clone(),
            *r.carrier == *opposite(&l.carrier),
            "carrier comparison",
        ));
    }
    // Edgewise subdivision: level-k simplices of Tw^ℓ(c) biject with
    // level-(2k+1) simplices of c, for k ≤ 1, and the square commutes.
    for c in [corpus::walking_arrow(), corpus::chain(2), corpus::zmod2()] {
        let tw = twisted(&c, Handedness::Left);
        let eps = simplices(&tw.carrier, 1, cfg.budget).and_then(|st| {
            let sc = simplices(&c, 3, cfg.budget)?;
            epsilon_compare(&c, &tw, &st, &sc)
        });
        out.push(match eps {
            Ok(_) => Record::ok("edgewise_levels", c.name.clone(), "levels 0,1 biject"),
            Err(e) => Record::fail("edgewise_levels", c.name.clone(), e.to_string()),
        });
        out.push(match twsquare_commutes(&c, 1, cfg.budget) {
            Ok(()) => Record::ok("tw_square", c.name.clone(), "strictly commutes"),
            Err(e) => Record::fail("tw_square", c.name.clone(), e.to_string()),
        });
    }
    out
}

/// The pointed-simplex adjunction triple π ⊣ l ⊣ λ at desk scale, plus
/// ε(LV) ⊆ IV ∩ LV.
pub fn check_pointed_adjunctions(_cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    let star = DeltaStarTrunc::new(3);
    // π ⊣ l: maps (n,i) → l(m) = (m,m) are exactly the monotone maps
    // [n] → [m] (the marked-point condition φ(i) ≤ m is vacuous).
    // l ⊣ λ: maps l(n) = (n,n) → (m,j) are exactly the monotone maps
    // [n] → λ(m,j) = [j].
    for n in 0..=3usize {
        for m in 0..=3usize {
            for i in 0..=n {
                let left = star
                    .mors
                    .iter()
                    .filter(|(s, d, _)| *s == star.obj(n, i) && *d == star.obj(m, m))
                    .count();
                let pass_pi = left == monotone_maps(n, m).len();
                out.push(Record::from_result(
                    "pi_l_adjunction",
                    format!("({n},{i})>l({m})"),
                    pass_pi,
                    format!("{left} maps"),
                ));
            }
            for j in 0..=m {
                let left = star
                    .mors
                    .iter()
                    .filter(|(s, d, _)| *s == star.obj(n, n) && *d == star.obj(m, j))
                    .count();
                let pass_l = left == monotone_maps(n, j).len();
                out.push(Record::from_result(
                    "l_lambda_adjunction",
                    format!("l({n})>({m},{j})"),
                    pass_l,
                    format!("{left} maps"),
                ));
            }
        }
    }
    // ε sends last-vertex maps to maps that are both initial- and
    // last-vertex, for all sources up to [2].
    for n in 0..=2usize {
        for m in 0..=4usize {
            let mut pass = true;
            let mut n_lv = 0usize;
            for phi in monotone_maps(n, m) {
                if phi.is_lv() {
                    n_lv += 1;
                    let e = epsilon(&phi);
                    pass &= e.is_iv() && e.is_lv();
                }
            }
            out.push(Record::from_result(
                "epsilon_lv",
                format!("[{n}]>[{m}]"),
                pass,
                format!("{n_lv} LV maps"),
            ));
        }
    }
    out
}

/// Truncated simplex-category ends are already stable at N = 1: the results
/// at N and N + 1 coincide for N = 1, 2.
pub fn check_stabilization(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in [
        corpus::terminal(),
        corpus::walking_arrow(),
        corpus::chain(2),
        corpus::zmod2(),
        corpus::free_parallel_pair(),
        corpus::free_span(),
    ] {
        for (i, f) in corpus::end_bifunctor_pool(&c, cfg.seed, cfg.set_cap, 2)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}#{}", c.name, i);
            let b = Bifunctor::new(&c, f, Convention::End).expect("pool is in end convention");
            let res = end_via_simplices(&b, 1, cfg.budget)
                .and_then(|r1| Ok((r1, end_via_simplices(&b, 2, cfg.budget)?)));
            out.push(match res {
                Ok((r1, r2)) => Record::from_result(
                    "simplices_stable",
                    name,
                    r1.families == r2.families,
                    format!("{} elements at N=1,2", r1.families.len()),
                ),
                Err(e) => Record::fail("simplices_stable", name, e.to_string()),
            });
        }
    }
    out
}

/// The coend is the Hom-weighted colimit, routed through the category of
/// elements of the Hom presheaf.
pub fn check_coend_weighted(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        for (i, f) in corpus::coend_bifunctor_pool(&c, cfg.seed + 7, cfg.set_cap, 2)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}#{}", c.name, i);
            let rep = Bifunctor::new(&c, f, Convention::Coend).and_then(|b| coend_as_weighted(&b));
            out.push(match rep {
                Ok(rep) => Record::from_result(
                    "coend_as_weighted",
                    name,
                    rep.agree,
                    format!("{} classes", rep.via_tw.n_classes),
                ),
                Err(e) => Record::fail("coend_as_weighted", name, e.to_string()),
            });
        }
    }
    out
}

/// Weighted colimits extend the weight along the Yoneda embedding:
/// representables go to the weight's values, and binary coproducts and
/// coequalizers of presheaves are preserved.
pub fn check_cocompletion(cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for c in corpus_categories() {
        for (i, w) in corpus::covariant_pool(&c, cfg.seed + 29, cfg.set_cap, 1)
            .into_iter()
            .enumerate()
        {
            let name = format!("{}#{}", c.name, i);
            out.push(match cocompletion_check(&c, &w, cfg.budget) {
                Ok(()) => Record::ok("cocompletion", name, "representables, coproducts, coequalizers"),
                Err(e) => Record::fail("cocompletion", name, e.to_string()),
            });
        }
    }
    out
}

pub const SUITES: [&str; 3] = ["ends", "weighted", "simplicial"];

/// Run one named suite ("ends" | "weighted" | "simplicial") or "all".
pub fn run_suite(suite: &str, cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut known = false;
    if suite == "all" || suite == "ends" {
        known = true;
        out.extend(check_end_routes(cfg));
        out.extend(check_coend_routes(cfg));
        out.extend(check_bk(cfg));
        out.extend(check_fubini_products(cfg));
        out.extend(check_stabilization(cfg));
    }
    if suite == "all" || suite == "weighted" {
        known = true;
        out.extend(check_weighted_routes(cfg));
        out.extend(check_nat(cfg));
        out.extend(check_density(cfg));
        out.extend(check_coend_weighted(cfg));
        out.extend(check_cocompletion(cfg));
    }
    if suite == "all" || suite == "simplicial" {
        known = true;
        out.extend(check_tw_combinatorics(cfg));
        out.extend(check_pointed_adjunctions(cfg));
    }
    if !known {
        return Err(Error::Parse(format!("unknown suite {suite:?}")));
    }
    Ok(out)
}

/// Pass/fail counts per check name, in first-appearance order.
pub fn summary(records: &[Record]) -> Vec<(String, usize, usize)> {
    let mut order: Vec<String> = Vec::new();
    let mut counts: std::collections::HashMap<&str, (usize, usize)> = Default::default();
    for r in records {
        if !counts.contains_key(r.check) {
            order.push(r.check.to_string());
        }
        let e = counts.entry(r.check).or_insert((0, 0));
        if r.pass {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    order
        .into_iter()
        .map(|name| {
            let (p, f) = counts[name.as_str()];
            (name, p, f)
        })
        .collect()
}
