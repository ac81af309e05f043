//! Binary Higgins commutators on small groups, with the classical
//! commutator subgroup as a cross-check, plus the group ternary commutator
//! through the nested decomposition.
//!
//! Run with `cargo run --example higgins_commutators`.

use cosmash::algebra::{normal_subobjects, subobject_generate};
use cosmash::catalog::builtin;
use cosmash::commutators::{higgins_binary, huq_commutator, ternary_group_exact};
use cosmash::oracle::classical_commutator_subgroup;

fn main() {
    let s3 = builtin("symmetric(3)").expect("catalog entry");
    let a3 = subobject_generate(&s3, &[s3.element_by_name("(123)").unwrap()]);
    let whole = subobject_generate(&s3, &s3.elements().collect::<Vec<_>>());

    let kl = higgins_binary(&s3, &a3, &whole);
    println!("[A3, S3] = {{{}}}", kl.element_names().join(", "));
    let oracle = classical_commutator_subgroup(&s3, a3.elements(), whole.elements());
    println!("generator-closure oracle agrees: {}", kl.elements() == oracle.as_slice());

    println!("[A3, A3] = {{{}}}", higgins_binary(&s3, &a3, &a3).element_names().join(", "));
    println!(
        "Huq commutator [A3, S3]^Huq = {{{}}}",
        huq_commutator(&s3, &a3, &whole).element_names().join(", ")
    );

    // the dihedral group of order 16 is nilpotent of class 3, so the
    // ternary self-commutator survives
    let d8 = builtin("dihedral(8)").expect("catalog entry");
    let w8 = subobject_generate(&d8, &d8.elements().collect::<Vec<_>>());
    let ternary = ternary_group_exact(&d8, &w8, &w8, &w8).expect("group kind");
    println!("\nD8 (order 16): [X,X,X] = {{{}}}", ternary.element_names().join(", "));

    // all normal-subobject pairs of the quaternion group
    let q8 = builtin("quaternion8").expect("catalog entry");
    println!("\nQ8 commutator table over its normal subgroups:");
    let normals = normal_subobjects(&q8);
    for k in &normals {
        for l in &normals {
            let c = higgins_binary(&q8, k, l);
            println!(
                "  [{{{}}}, {{{}}}] = {{{}}}",
                k.element_names().join(","),
                l.element_names().join(","),
                c.element_names().join(",")
            );
        }
    }
}
