//! The Smith-is-Huq scan: groups come out clean, the hyperbolic quaternion
//! loop does not.
//!
//! Run with `cargo run --example smith_vs_huq`.

use cosmash::catalog::builtin;
use cosmash::commutators::sh_check;

fn main() {
    for name in ["symmetric(3)", "dihedral(4)", "quaternion8", "cyclic(2)xcyclic(4)"] {
        let x = builtin(name).expect("catalog entry");
        let report = sh_check(&x).expect("scan");
        println!(
            "{name}: {} normal pairs scanned, {} with [K,L] = 0, {} violations",
            report.pairs_scanned,
            report.pairs_applicable,
            report.violations.len()
        );
    }

    let x = builtin("hyperbolic_quaternion_loop").expect("catalog entry");
    let report = sh_check(&x).expect("scan");
    println!(
        "\nhyperbolic_quaternion_loop: {} pairs scanned, {} applicable, {} violations",
        report.pairs_scanned,
        report.pairs_applicable,
        report.violations.len()
    );
    for v in &report.violations {
        println!(
            "  K = {{{}}}, L = {{{}}}: obstruction {{{}}}, witnesses [{}]",
            v.k.element_names().join(","),
            v.l.element_names().join(","),
            v.obstruction.element_names().join(","),
            v.witnesses
                .iter()
                .map(|&e| x.name(e))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
}
