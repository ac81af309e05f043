//! Staged crossed-module verdicts: equivariance, the Peiffer condition via
//! the binary commutator, then the ternary coherence.
//!
//! Run with `cargo run --example crossed_modules`.

use cosmash::algebra::hom_check;
use cosmash::structures::{builtin_extension, xmod_check};

fn main() {
    // conjugation of S3 on A3 with the inclusion boundary: a crossed module
    let ext = builtin_extension("a3_rtimes_s3_conj").expect("catalog extension");
    let incl_map: Vec<_> = ext
        .kernel_algebra()
        .names()
        .iter()
        .map(|n| ext.base().element_by_name(n).unwrap())
        .collect();
    let incl = hom_check(ext.kernel_algebra(), ext.base(), incl_map).unwrap();
    println!("(A3 ⋊ S3 by conjugation, ∂ = inclusion): {:?}", xmod_check(&ext, &incl).unwrap());

    // Z4 with the Z2-inversion action and the mod-2 reduction boundary:
    // equivariant, but the Peiffer identity fails
    let ext = builtin_extension("z4_rtimes_z2_inversion").expect("catalog extension");
    let reduction = hom_check(ext.kernel_algebra(), ext.base(), vec![0, 1, 0, 1]).unwrap();
    println!("(Z4 ⋊ Z2 by inversion, ∂ = reduction): {:?}", xmod_check(&ext, &reduction).unwrap());

    // the identity boundary against an action through a quotient is not
    // even equivariant
    let ext = builtin_extension("z4_rtimes_z4_inversion_through_quotient").expect("catalog");
    let id = hom_check(ext.kernel_algebra(), ext.base(), vec![0, 1, 2, 3]).unwrap();
    println!("(Z4 ⋊ Z4 through quotient, ∂ = identity): {:?}", xmod_check(&ext, &id).unwrap());

    // the loop action: Peiffer holds, the ternary coherence does not
    let ext = builtin_extension("m8_as_v_rtimes_z2").expect("catalog extension");
    let zero = hom_check(
        ext.kernel_algebra(),
        ext.base(),
        vec![0; ext.kernel_algebra().order()],
    )
    .unwrap();
    println!("(M8 = V ⋊ Z2, ∂ = 0): {:?}", xmod_check(&ext, &zero).unwrap());
}
