//! `endcalc`: command-line surface over the finite-category computation
//! engine. Exit codes: 0 success, 1 route comparison failure, 2 validation
//! failure, 3 parse error, 4 budget/truncation error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use endcalc::check::{self, RunConfig};
use endcalc::coends::{
    check_fubini, coend_simplicial, coend_via_coequalizer, coend_via_simplices, coend_via_tw,
    coends_agree, colim_bk, end_via_equalizer, end_via_simplices, end_via_tw, ends_agree,
    Bifunctor, CoendResult, Convention, EndResult,
};
use endcalc::constructions::{elements, simplices, twisted, Handedness, Variance};
use endcalc::fincat::{opposite, product, FinCat, SetFunctor};
use endcalc::schema;
use endcalc::weighted::{
    nat_space, wcolimit_via_coend, wcolimit_via_fibration, wcolimits_agree, wlimit_via_end,
    wlimit_via_fibration, wlimits_agree,
};
use endcalc::{Error, Result};

#[derive(Parser)]
#[command(name = "endcalc", about = "ends, coends and weighted (co)limits over finite categories")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Equalizer,
    Tw,
    Simplices,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hand {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarianceArg {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Ends,
    Weighted,
    Simplicial,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Ends => "ends",
            Suite::Weighted => "weighted",
            Suite::Simplicial => "simplicial",
        }
    }
}

#[derive(Args)]
struct ConfigArgs {
    /// Read a RunConfig from a JSON file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    set_cap: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    /// Inject a variance-flipped comparison that must fail (harness sanity).
    #[arg(long)]
    mutate: bool,
}

impl ConfigArgs {
    fn build(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => serde_json::from_str(&read(path)?)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
            None => RunConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trunc {
            cfg.trunc = t;
        }
        if let Some(c) = self.set_cap {
            cfg.set_cap = c;
        }
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        if self.mutate {
            cfg.mutate = true;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a category, functor, or setfunctor file against the laws.
    Validate { path: PathBuf },
    /// Compute an end by one or all routes and compare them.
    End {
        category: PathBuf,
        bifunctor: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
        #[arg(long, default_value_t = 1)]
        trunc: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Compute a coend by one or all routes and compare them.
    Coend {
        category: PathBuf,
        bifunctor: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
        #[arg(long, default_value_t = 1)]
        trunc: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Emit a twisted arrow category in the file format.
    Tw {
        category: PathBuf,
        #[arg(long, value_enum, default_value_t = Hand::Left)]
        handedness: Hand,
    },
    /// Emit a truncated category of simplices in the file format.
    Simplices {
        category: PathBuf,
        #[arg(long, default_value_t = 1)]
        trunc: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Emit a category of elements in the file format.
    Elements {
        /// Setfunctor file with an embedded base.
        setfunctor: PathBuf,
        #[arg(long, value_enum, default_value_t = VarianceArg::Covariant)]
        variance: VarianceArg,
    },
    /// Weighted limit by the end formula and the fibration route.
    Wlim {
        /// Covariant weight with an embedded base c.
        weight: PathBuf,
        /// Covariant diagram over the same base.
        diagram: PathBuf,
    },
    /// Weighted colimit by the coend formula and the fibration route.
    Wcolim {
        /// Presheaf weight: covariant over the opposite of the diagram base.
        weight: PathBuf,
        /// Covariant diagram with an embedded base.
        diagram: PathBuf,
    },
    /// Natural transformations vs the end of the exponent.
    Nat {
        /// Presheaves over a common embedded base.
        phi: PathBuf,
        psi: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Simplicial colimit formula vs the direct colimit.
    Bk {
        /// Covariant diagram with an embedded base.
        diagram: PathBuf,
    },
    /// Joint end over a product vs both iterated ends.
    Fubini {
        category_c: PathBuf,
        category_d: PathBuf,
        /// End-convention bifunctor over the product of the two bases.
        bifunctor: PathBuf,
    },
    /// Run the property-check suites over the seeded corpus.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_category(path: &PathBuf) -> Result<Arc<FinCat>> {
    schema::category_from_doc(&schema::parse_category(&read(path)?)?)
}

/// Setfunctor whose base is supplied by the caller (e.g. a derived product).
fn load_setfunctor_over(path: &PathBuf, base: &Arc<FinCat>) -> Result<SetFunctor> {
    let doc = schema::parse_setfunctor(&read(path)?);
    let doc = doc?;
    if let Some(embedded) = &doc.base {
        let embedded = schema::category_from_doc(embedded)?;
        if *embedded != **base {
            return Err(Error::Validation(format!(
                "embedded base {} does not match the derived base {}",
                embedded.name, base.name
            )));
        }
    }
    schema::setfunctor_from_doc(&doc, base)
}

/// Setfunctor that must carry its own base.
fn load_setfunctor(path: &PathBuf) -> Result<SetFunctor> {
    let doc = schema::parse_setfunctor(&read(path)?)?;
    let base = doc
        .base
        .as_ref()
        .ok_or_else(|| Error::Parse(format!("{}: setfunctor needs an embedded base", path.display())))?;
    let base = schema::category_from_doc(base)?;
    schema::setfunctor_from_doc(&doc, &base)
}

fn emit_category(c: &FinCat, format: Format) {
    let doc = schema::category_to_doc(c);
    match format {
        Format::Structured => println!("{}", serde_json::to_string(&doc).unwrap()),
        Format::Human => println!("{}", serde_json::to_string_pretty(&doc).unwrap()),
    }
}

/// Report one or more end results; Err(1) signals a comparison failure.
fn report_ends(results: &[EndResult], format: Format) -> std::result::Result<(), u8> {
    for r in results {
        match format {
            Format::Structured => println!(
                "route={} elements={} families={:?}",
                r.route,
                r.families.len(),
                r.families
            ),
            Format::Human => println!("route {:<10} {} element(s)", r.route, r.families.len()),
        }
    }
    if results.len() > 1 {
        if ends_agree(results) {
            println!("routes agree");
        } else {
            println!("ROUTES DISAGREE");
            for r in results {
                println!("  witness {}: {:?}", r.route, r.families);
            }
            return Err(1);
        }
    }
    Ok(())
}

fn report_coends(results: &[CoendResult], format: Format) -> std::result::Result<(), u8> {
    for r in results {
        match format {
            Format::Structured => println!(
                "route={} classes={} partition={:?}",
                r.route, r.n_classes, r.classes
            ),
            Format::Human => println!("route {:<11} {} class(es)", r.route, r.n_classes),
        }
    }
    if results.len() > 1 {
        if coends_agree(results) {
            println!("routes agree");
        } else {
            println!("ROUTES DISAGREE");
            for r in results {
                println!("  witness {}: {:?}", r.route, r.classes);
            }
            return Err(1);
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> std::result::Result<(), u8> {
    let format = cli.format;
    match &cli.command {
        Command::Validate { path } => {
            let kind = schema::peek_kind(&read(path).map_err(fail)?).map_err(fail)?;
            match kind.as_str() {
                "category" => {
                    load_category(path).map_err(fail)?;
                }
                "functor" => {
                    let doc = schema::parse_functor(&read(path).map_err(fail)?).map_err(fail)?;
                    schema::functor_from_doc(&doc).map_err(fail)?;
                }
                "setfunctor" => {
                    load_setfunctor(path).map_err(fail)?;
                }
                other => return Err(fail(Error::Parse(format!("unknown kind {other:?}")))),
            }
            println!("valid {kind}");
            Ok(())
        }
        Command::End { category, bifunctor, route, trunc, budget } => {
            let c = load_category(category).map_err(fail)?;
            let base = product(&opposite(&c), &c);
            let f = load_setfunctor_over(bifunctor, &base).map_err(fail)?;
            let b = Bifunctor::new(&c, f, Convention::End).map_err(fail)?;
            let results = match route {
                Route::Equalizer => vec![end_via_equalizer(&b).map_err(fail)?],
                Route::Tw => vec![end_via_tw(&b).map_err(fail)?],
                Route::Simplices => vec![end_via_simplices(&b, *trunc, *budget).map_err(fail)?],
                Route::All => vec![
                    end_via_equalizer(&b).map_err(fail)?,
                    end_via_tw(&b).map_err(fail)?,
                    end_via_simplices(&b, *trunc, *budget).map_err(fail)?,
                ],
            };
            report_ends(&results, format)
        }
        Command::Coend { category, bifunctor, route, trunc, budget } => {
            let c = load_category(category).map_err(fail)?;
            let base = product(&c, &opposite(&c));
            let f = load_setfunctor_over(bifunctor, &base).map_err(fail)?;
            let b = Bifunctor::new(&c, f, Convention::Coend).map_err(fail)?;
            let results = match route {
                Route::Equalizer => vec![coend_via_coequalizer(&b).map_err(fail)?],
                Route::Tw => vec![coend_via_tw(&b).map_err(fail)?],
                Route::Simplices => vec![coend_via_simplices(&b, *trunc, *budget).map_err(fail)?],
                Route::All => vec![
                    coend_via_coequalizer(&b).map_err(fail)?,
                    coend_via_tw(&b).map_err(fail)?,
                    coend_via_simplices(&b, *trunc, *budget).map_err(fail)?,
                    coend_simplicial(&b, *budget).map_err(fail)?,
                ],
            };
            report_coends(&results, format)
        }
        Command::Tw { category, handedness } => {
            let c = load_category(category).map_err(fail)?;
            let tw = twisted(
                &c,
                match handedness {
                    Hand::Left => Handedness::Left,
                    Hand::Right => Handedness::Right,
                },
            );
            // flag terminal objects (every object has exactly one map in)
            let n = tw.carrier.n_objects();
            for t in 0..n {
                if (0..n).all(|s| tw.carrier.hom(s, t).len() == 1) {
                    println!("terminal object: {}", tw.carrier.objects[t]);
                }
            }
            emit_category(&tw.carrier, format);
            Ok(())
        }
        Command::Simplices { category, trunc, budget } => {
            let c = load_category(category).map_err(fail)?;
            let s = simplices(&c, *trunc, *budget).map_err(fail)?;
            let levels: Vec<usize> = s.levels.iter().map(Vec::len).collect();
            println!("levels {levels:?}");
            emit_category(&s.carrier, format);
            Ok(())
        }
        Command::Elements { setfunctor, variance } => {
            let w = load_setfunctor(setfunctor).map_err(fail)?;
            let e = elements(
                &w,
                match variance {
                    VarianceArg::Covariant => Variance::Covariant,
                    VarianceArg::Contravariant => Variance::Contravariant,
                },
            );
            emit_category(&e.carrier, format);
            Ok(())
        }
        Command::Wlim { weight, diagram } => {
            let w = load_setfunctor(weight).map_err(fail)?;
            let psi = load_setfunctor_over(diagram, &w.base).map_err(fail)?;
            let e = wlimit_via_end(&w, &psi).map_err(fail)?;
            let f = wlimit_via_fibration(&w, &psi).map_err(fail)?;
            println!("end formula: {} element(s)", e.families.len());
            println!("fibration:   {} element(s)", f.families.len());
            if wlimits_agree(&e, &f) {
                println!("routes agree");
                Ok(())
            } else {
                println!("ROUTES DISAGREE");
                println!("  witness end: {:?}", e.families);
                println!("  witness fibration: {:?}", f.families);
                Err(1)
            }
        }
        Command::Wcolim { weight, diagram } => {
            let phi = load_setfunctor(diagram).map_err(fail)?;
            let w = load_setfunctor_over(weight, &opposite(&phi.base)).map_err(fail)?;
            let a = wcolimit_via_coend(&w, &phi).map_err(fail)?;
            let b = wcolimit_via_fibration(&w, &phi).map_err(fail)?;
            println!("coend formula: {} class(es)", a.n_classes);
            println!("fibration:     {} class(es)", b.n_classes);
            if wcolimits_agree(&a, &b) {
                println!("routes agree");
                Ok(())
            } else {
                println!("ROUTES DISAGREE");
                println!("  witness coend: {:?}", a.classes);
                println!("  witness fibration: {:?}", b.classes);
                Err(1)
            }
        }
        Command::Nat { phi, psi, budget } => {
            let phi = load_setfunctor(phi).map_err(fail)?;
            let psi = load_setfunctor_over(psi, &phi.base).map_err(fail)?;
            let rep = nat_space(&phi, &psi, *budget).map_err(fail)?;
            println!("transformations: {}", rep.nat_tables.len());
            println!("end of exponent: {}", rep.wlim.families.len());
            if rep.agree() {
                println!("routes agree");
                Ok(())
            } else {
                println!("ROUTES DISAGREE");
                println!("  witness nat tables: {:?}", rep.nat_tables);
                println!("  witness end: {:?}", rep.wlim.families);
                Err(1)
            }
        }
        Command::Bk { diagram } => {
            let f = load_setfunctor(diagram).map_err(fail)?;
            let bk = colim_bk(&f).map_err(fail)?;
            let direct = endcalc::setops::colimit(&f);
            println!("simplicial formula: {} class(es)", bk.n_classes);
            println!("direct colimit:     {} class(es)", direct.n_classes);
            if bk.class_of == direct.class_of && bk.n_classes == direct.n_classes {
                println!("BK agrees with direct colimit");
                Ok(())
            } else {
                println!("ROUTES DISAGREE");
                println!("  witness simplicial: {:?}", bk.class_of);
                println!("  witness direct: {:?}", direct.class_of);
                Err(1)
            }
        }
        Command::Fubini { category_c, category_d, bifunctor } => {
            let c = load_category(category_c).map_err(fail)?;
            let d = load_category(category_d).map_err(fail)?;
            let cd = product(&c, &d);
            let base = product(&opposite(&cd), &cd);
            let f = load_setfunctor_over(bifunctor, &base).map_err(fail)?;
            let rep = check_fubini(&c, &d, &f).map_err(fail)?;
            println!("joint end:        {} element(s)", rep.joint.len());
            println!("outer-c iterated: {} element(s)", rep.outer_c.len());
            println!("outer-d iterated: {} element(s)", rep.outer_d.len());
            if rep.agree() {
                println!("three ends agree");
                Ok(())
            } else {
                println!("ENDS DISAGREE");
                println!("  witness joint: {:?}", rep.joint);
                println!("  witness outer-c: {:?}", rep.outer_c);
                println!("  witness outer-d: {:?}", rep.outer_d);
                Err(1)
            }
        }
        Command::Check { suite, config } => {
            let cfg = config.build().map_err(fail)?;
            let records = check::run_suite(suite.name(), &cfg).map_err(fail)?;
            match format {
                Format::Structured => {
                    for r in &records {
                        println!("{}", r.line());
                    }
                }
                Format::Human => {
                    for (name, pass, failed) in check::summary(&records) {
                        println!("{name:<22} {pass} passed, {failed} failed");
                    }
                    for r in check::failures(&records) {
                        println!("FAIL {}", r.line());
                    }
                }
            }
            if check::all_pass(&records) {
                println!("all checks passed");
                Ok(())
            } else {
                Err(1)
            }
        }
    }
}

/// Map an engine error to its exit code, printing the message.
fn fail(e: Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::Parse(_) => 3,
        Error::Budget(_) | Error::Truncation(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
