//! Regenerate the sample input files in `samples/` from the corpus.
//! Run with: cargo run -p endcalc --example gen_samples

use std::path::Path;

use endcalc::fincat::{hom_coend_bifunctor, hom_end_bifunctor, opposite, product};
use endcalc::{corpus, schema};

fn write(dir: &Path, name: &str, text: String) {
    let path = dir.join(name);
    std::fs::write(&path, text + "\n").expect("write sample");
    println!("wrote {}", path.display());
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples");
    std::fs::create_dir_all(&dir).expect("create samples dir");
    let pretty = |v: &dyn erased::Doc| v.pretty();

    let two = corpus::walking_arrow();
    let z2 = corpus::zmod2();

    write(&dir, "two.json", pretty(&schema::category_to_doc(&two)));
    write(&dir, "zmod2.json", pretty(&schema::category_to_doc(&z2)));
    write(&dir, "chain2.json", pretty(&schema::category_to_doc(&corpus::chain(2))));

    // Hom bifunctors, bases derived by the end/coend commands
    write(
        &dir,
        "hom_end_two.json",
        pretty(&schema::setfunctor_to_doc(&hom_end_bifunctor(&two), "hom-end-two", false)),
    );
    write(
        &dir,
        "hom_coend_zmod2.json",
        pretty(&schema::setfunctor_to_doc(&hom_coend_bifunctor(&z2), "hom-coend-zmod2", false)),
    );

    // covariant diagram over the walking arrow, base embedded
    write(
        &dir,
        "diagram_two.json",
        pretty(&schema::setfunctor_to_doc(
            &corpus::example_two_colim_diagram(&two),
            "diagram-two",
            true,
        )),
    );
    // covariant weight over the same base
    write(
        &dir,
        "weight_two.json",
        pretty(&schema::setfunctor_to_doc(&corpus::example_two_diagram(&two), "weight-two", true)),
    );
    // presheaves over the walking arrow (base two^op embedded)
    let op = opposite(&two);
    let b = two.obj("b").unwrap();
    write(
        &dir,
        "presheaf_rep_b.json",
        pretty(&schema::setfunctor_to_doc(
            &endcalc::fincat::representable_psh(&two, b),
            "yoneda-b",
            true,
        )),
    );
    write(
        &dir,
        "presheaf_const2.json",
        pretty(&schema::setfunctor_to_doc(
            &endcalc::fincat::constant_set(&op, &["0", "1"]),
            "constant-two-points",
            true,
        )),
    );

    // joint Hom bifunctor over two × zmod2, for the fubini command
    let cd = product(&two, &z2);
    write(
        &dir,
        "hom_end_two_x_zmod2.json",
        pretty(&schema::setfunctor_to_doc(&hom_end_bifunctor(&cd), "hom-end-two-x-zmod2", false)),
    );

    // a run configuration for the check command
    write(
        &dir,
        "runconfig.json",
        serde_json::to_string_pretty(&endcalc::check::RunConfig::default()).unwrap(),
    );
}

/// Tiny helper so both doc types share the pretty-printing call site.
mod erased {
    pub trait Doc {
        fn pretty(&self) -> String;
    }
    impl<T: serde::Serialize> Doc for T {
        fn pretty(&self) -> String {
            serde_json::to_string_pretty(self).unwrap()
        }
    }
}
