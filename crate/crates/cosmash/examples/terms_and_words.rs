//! The term engine: parsing, evaluation, free-product reduction, co-smash
//! membership, and the depth-bounded enumeration stream.
//!
//! Run with `cargo run --example terms_and_words`.

use std::collections::HashMap;

use cosmash::algebra::Kind;
use cosmash::catalog::builtin;
use cosmash::words::{
    cosmash_membership_group, enumerate_cosmash_terms, eval_term, freeword_reduce,
    loop_normalize, parse_term, Factors, Term,
};

fn main() {
    let sorts = ["k", "l", "m"];

    // parsing and evaluation
    let commutator = parse_term("k1*l1*inv(k1)*inv(l1)", &sorts).unwrap();
    let s3 = builtin("symmetric(3)").unwrap();
    let mut asg = HashMap::new();
    asg.insert((0, 1), s3.element_by_name("(123)").unwrap());
    asg.insert((1, 1), s3.element_by_name("(12)").unwrap());
    let value = eval_term(&commutator, &s3, &asg).unwrap();
    println!("[(123), (12)] evaluates to {} in S3", s3.name(value));

    // membership: the commutator word lies in the binary co-smash product,
    // a bare letter does not
    println!(
        "klk⁻¹l⁻¹ in K⊗L: {}",
        cosmash_membership_group(&commutator, 2, &Factors::Generic).unwrap()
    );
    println!(
        "k1 in K⊗L: {}",
        cosmash_membership_group(&Term::letter(0, 1), 2, &Factors::Generic).unwrap()
    );
    let triple = Term::commutator(
        Term::commutator(Term::letter(0, 1), Term::letter(1, 1)),
        Term::letter(2, 1),
    );
    println!(
        "[[k,l],m] in K⊗L⊗M: {}",
        cosmash_membership_group(&triple, 3, &Factors::Generic).unwrap()
    );

    // loop rewriting
    let t = parse_term("k1\\(k1*l1)", &sorts).unwrap();
    println!("\nk1\\(k1*l1) rewrites to {}", loop_normalize(&t));
    let assoc = Term::associator(Term::letter(0, 1), Term::letter(1, 1), Term::letter(2, 1));
    for sort in 0..3 {
        let killed = cosmash::words::zero_substitute(&assoc, sort);
        println!(
            "associator with sort {} killed rewrites to {}",
            sorts[sort],
            loop_normalize(&killed)
        );
    }

    // free-product word reduction over concrete factors
    let z4 = builtin("cyclic(4)").unwrap();
    let r = s3.element_by_name("(123)").unwrap();
    let rr = s3.element_by_name("(132)").unwrap();
    let factors = vec![s3.clone(), z4];
    let word = freeword_reduce(&factors, &[(0, r), (1, 1), (1, 3), (0, rr), (1, 2)]).unwrap();
    println!("\nreduced free-product word has {} syllables", word.len());

    // enumeration streams
    let binary = enumerate_cosmash_terms(Kind::Group, 2, 1, 3);
    println!("\nbinary group stream at depth 3: {} member terms", binary.len());
    for t in binary.iter().take(4) {
        println!("  {t}");
    }
    let ternary = enumerate_cosmash_terms(Kind::Loop, 3, 1, 3);
    println!("ternary loop stream at depth 3: {} member terms", ternary.len());
    for t in ternary.iter().skip(1).take(3) {
        println!("  {t}");
    }
}
