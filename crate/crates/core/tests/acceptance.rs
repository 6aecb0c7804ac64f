//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! Run as part of `cargo test --workspace`.

use std::process::ExitCode;
use std::time::Instant;

use endcalc::check::{self, Record, RunConfig};

struct Criterion {
    /// Minimum number of checked instances, where the criterion sets a bar.
    min_instances: usize,
    /// Wall-clock bound in seconds.
    max_seconds: u64,
    description: &'static str,
    run: fn(&RunConfig) -> Vec<Record>,
}

fn nat_records(cfg: &RunConfig) -> Vec<Record> {
    // the mutated comparison is not part of acceptance
    check::check_nat(cfg)
        .into_iter()
        .filter(|r| r.check == "nat_space")
        .collect()
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let criteria: [Criterion; 12] = [
        Criterion {
            min_instances: 30,
            max_seconds: 60,
            description: "end routes (equalizer / twisted arrow / simplices) agree",
            run: check::check_end_routes,
        },
        Criterion {
            min_instances: 30,
            max_seconds: 60,
            description: "coend routes plus the level-1 simplicial presentation agree",
            run: check::check_coend_routes,
        },
        Criterion {
            min_instances: 30,
            max_seconds: 60,
            description: "simplicial colimit formula matches the direct colimit",
            run: check::check_bk,
        },
        Criterion {
            min_instances: 10,
            max_seconds: 60,
            description: "Fubini: joint end over a product equals both iterated ends",
            run: check::check_fubini_products,
        },
        Criterion {
            min_instances: 30,
            max_seconds: 60,
            description: "weighted (co)limit formula and fibration routes agree",
            run: check::check_weighted_routes,
        },
        Criterion {
            min_instances: 30,
            max_seconds: 60,
            description: "Nat(phi, psi) is the end of the exponent",
            run: nat_records,
        },
        Criterion {
            min_instances: 20,
            max_seconds: 60,
            description: "density: every presheaf is the colimit of its representables",
            run: check::check_density,
        },
        Criterion {
            min_instances: 1,
            max_seconds: 60,
            description: "twisted arrow combinatorics: chain posets, opposites, edgewise levels, square",
            run: check::check_tw_combinatorics,
        },
        Criterion {
            min_instances: 1,
            max_seconds: 60,
            description: "pointed-simplex adjunction triple and epsilon on last-vertex maps",
            run: check::check_pointed_adjunctions,
        },
        Criterion {
            min_instances: 1,
            max_seconds: 60,
            description: "truncated simplex ends are stable between N and N+1 for N = 1, 2",
            run: check::check_stabilization,
        },
        Criterion {
            min_instances: 20,
            max_seconds: 60,
            description: "coends are Hom-weighted colimits through the category of elements",
            run: check::check_coend_weighted,
        },
        Criterion {
            min_instances: 10,
            max_seconds: 60,
            description: "weighted colimits extend the weight along Yoneda and preserve colimits",
            run: check::check_cocompletion,
        },
    ];

    let mut ok = true;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let records = (c.run)(&cfg);
        let elapsed = start.elapsed();
        let fails = check::failures(&records);
        let pass = fails.is_empty()
            && records.len() >= c.min_instances
            && elapsed.as_secs() < c.max_seconds;
        println!(
            "criterion {:>2}: {} — {} ({} instances, {} failed, {:.1}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            c.description,
            records.len(),
            fails.len(),
            elapsed.as_secs_f64(),
        );
        for f in fails {
            println!("    witness: {}", f.line());
        }
        ok &= pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
