//! The algebra file format: serialize a catalog entry, read it back, and
//! validate a hand-written document.
//!
//! Run with `cargo run --example algebra_files`.

use cosmash::catalog::{load_algebra, parse_algebra, save_algebra, builtin, serialize_algebra};

fn main() {
    let m8 = builtin("hyperbolic_quaternion_loop").expect("catalog entry");
    let path = std::env::temp_dir().join("m8.json");
    save_algebra(&m8, &path).expect("write");
    let back = load_algebra(&path).expect("read");
    println!("roundtrip identical: {}", *m8 == *back && m8.names() == back.names());
    std::fs::remove_file(&path).ok();

    let z2 = builtin("cyclic(2)").expect("catalog entry");
    println!("\nZ2 document:\n{}", serialize_algebra(&z2));

    // a hand-written loop of order five: the cyclic group written as a loop
    let document = r#"{
        "kind": "loop",
        "order": 5,
        "elements": ["0", "1", "2", "3", "4"],
        "mul": [
            [0, 1, 2, 3, 4],
            [1, 2, 3, 4, 0],
            [2, 3, 4, 0, 1],
            [3, 4, 0, 1, 2],
            [4, 0, 1, 2, 3]
        ]
    }"#;
    let x = parse_algebra(document).expect("valid loop");
    println!("parsed loop of order {}; divisions are derived:", x.order());
    println!("  3 \\ 1 = {}", x.name(x.ldiv(3, 1)));
    println!("  1 / 3 = {}", x.name(x.rdiv(1, 3)));

    // a violation is named precisely
    let broken = r#"{
        "kind": "loop",
        "order": 3,
        "elements": ["0", "1", "2"],
        "mul": [[0, 1, 2], [1, 2, 2], [2, 0, 1]]
    }"#;
    println!("\nbroken table: {}", parse_algebra(broken).unwrap_err());
}
