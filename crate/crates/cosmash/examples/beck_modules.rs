//! Beck modules: abelian kernel plus a self-commuting kernel congruence.
//! The loop action of Z2 on the Klein four-group shows an abelian action
//! that is not a module structure.
//!
//! Run with `cargo run --example beck_modules`.

use cosmash::structures::{beck_module_check, builtin_extension};

fn main() {
    for (name, label) in [
        ("z3_rtimes_z2_inversion", "Z3 ⋊ Z2 by inversion"),
        ("z3_times_z2_trivial", "Z3 × Z2 (trivial action)"),
        ("z4_rtimes_z2_inversion", "Z4 ⋊ Z2 by inversion"),
        ("m8_as_v_rtimes_z2", "M8 = V ⋊ Z2 (loop action)"),
    ] {
        let ext = builtin_extension(name).expect("catalog extension");
        let verdict = beck_module_check(&ext).expect("check");
        println!(
            "{label}: kernel abelian = {}, Beck module = {verdict}",
            ext.kernel_algebra().is_abelian()
        );
    }
    println!("\nThe loop case has an abelian kernel and still fails: the");
    println!("ternary coherence morphism is nontrivial on the associator.");
}
