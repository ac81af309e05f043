//! The order-eight hyperbolic quaternion loop: an abelian normal subloop
//! whose binary commutator vanishes while the ternary obstruction does not,
//! so its denormalisation fails to Smith-commute with itself.
//!
//! Run with `cargo run --example counterexample_loop`.

use cosmash::algebra::{denormalize, normalize, subobject_generate};
use cosmash::catalog::builtin;
use cosmash::commutators::{higgins_binary, smith_commutator, ternary_obstruction};

fn main() {
    let x = builtin("hyperbolic_quaternion_loop").expect("catalog entry");
    println!("X = hyperbolic quaternion loop, order {}", x.order());
    println!("elements: {}", x.names().join(", "));

    // spot products from the defining rules
    let e = |n: &str| x.element_by_name(n).unwrap();
    println!("\nij = {}", x.name(x.mul(e("i"), e("j"))));
    println!("ji = {}", x.name(x.mul(e("j"), e("i"))));
    println!("j(ji) = {}  while  (jj)i = {}",
        x.name(x.mul(e("j"), x.mul(e("j"), e("i")))),
        x.name(x.mul(x.mul(e("j"), e("j")), e("i"))));

    // the associator element ⟦j,j,i⟧
    let assoc = x.rdiv(
        x.mul(x.mul(e("j"), e("j")), e("i")),
        x.mul(e("j"), x.mul(e("j"), e("i"))),
    );
    println!("associator [[j,j,i]] = {}", x.name(assoc));

    // A = <j, -1> is an abelian normal subloop of index two
    let a = subobject_generate(&x, &[e("j"), e("-1")]);
    println!("\nA = {{{}}}", a.element_names().join(", "));
    println!("A abelian: {}, A normal: {}", a.is_abelian(), a.is_normal());

    let binary = higgins_binary(&x, &a, &a);
    println!("[A,A] = {{{}}}", binary.element_names().join(", "));

    let obstruction = ternary_obstruction(&x, &a, &a).expect("binary part vanishes");
    println!("[A,A,X] = {{{}}}", obstruction.element_names().join(", "));

    // the Smith commutator of R_A with itself is nontrivial
    let ra = denormalize(&a);
    let (delta, connector) = smith_commutator(&x, &ra, &ra).expect("verified construction");
    println!("\n[R_A, R_A]^S is the diagonal: {}", delta.is_diagonal());
    println!("connector exists: {}", connector.is_some());
    println!(
        "normalisation of [R_A, R_A]^S = {{{}}}",
        normalize(&delta).element_names().join(", ")
    );
    println!("\nSo loops do not satisfy Smith-is-Huq: the ternary obstruction is the gap.");
}
