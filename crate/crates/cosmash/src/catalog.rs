//! Built-in algebras, catalog-name parsing, and the algebra file format.
//!
//! Catalog names: `cyclic(n)`, `dihedral(n)` (order `2n`), `symmetric(n)` for
//! `n <= 4`, `quaternion8`, `klein4`, `hyperbolic_quaternion_loop`, and
//! direct products of these joined with `x`, e.g. `cyclic(2)xcyclic(4)`.
//! Short aliases: `Z<n>`, `D<n>`, `S3`, `S4`, `Q8`, `V4`, `M8`, `trivial`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{direct_product, validate_algebra, Alg, AlgebraError, Elem, Kind};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("format error at line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Builds a catalog algebra by name.
pub fn builtin(name: &str) -> Result<Alg, CatalogError> {
    // whole name first: `x` only acts as a product separator as a fallback
    let whole = builtin_factor(name.trim());
    if whole.is_ok() {
        return whole;
    }
    let factors = split_product(name);
    if factors.len() <= 1 {
        return whole;
    }
    let mut algs = Vec::new();
    for f in factors {
        match builtin_factor(f.trim()) {
            Ok(a) => algs.push(a),
            Err(_) => return Err(CatalogError::UnknownEntry(name.to_string())),
        }
    }
    let mut iter = algs.into_iter();
    let first = iter.next().expect("at least two factors");
    iter.try_fold(first, |acc, next| {
        direct_product(&acc, &next).map_err(CatalogError::from)
    })
}

fn split_product(name: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            'x' if depth == 0 => {
                parts.push(&name[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&name[start..]);
    parts
}

fn builtin_factor(name: &str) -> Result<Alg, CatalogError> {
    let (base, param) = match name.find('(') {
        Some(open) if name.ends_with(')') => {
            let inner = &name[open + 1..name.len() - 1];
            let n: usize = inner.parse().map_err(|_| CatalogError::BadParams {
                name: name.to_string(),
                reason: format!("`{inner}` is not a positive integer"),
            })?;
            (&name[..open], Some(n))
        }
        _ => (name, None),
    };
    // short aliases carry their parameter in the name
    let (base, param) = match (base, param) {
        (b, None) if b.len() > 1 && (b.starts_with('Z') || b.starts_with('D')) => {
            match b[1..].parse::<usize>() {
                Ok(n) => (if b.starts_with('Z') { "cyclic" } else { "dihedral" }, Some(n)),
                Err(_) => (b, None),
            }
        }
        ("S3", None) => ("symmetric", Some(3)),
        ("S4", None) => ("symmetric", Some(4)),
        other => other,
    };
    match (base, param) {
        ("trivial", None) | ("cyclic", Some(1)) => cyclic(1),
        ("cyclic", Some(n)) => cyclic(n),
        ("dihedral", Some(n)) => dihedral(n),
        ("symmetric", Some(n)) => symmetric(n),
        ("quaternion8", None) | ("Q8", None) => quaternion8(),
        ("klein4", None) | ("V4", None) => klein4(),
        ("hyperbolic_quaternion_loop", None) | ("M8", None) => hyperbolic_quaternion_loop(),
        ("cyclic" | "dihedral" | "symmetric", None) => Err(CatalogError::BadParams {
            name: name.to_string(),
            reason: "missing parameter".to_string(),
        }),
        _ => Err(CatalogError::UnknownEntry(name.to_string())),
    }
}

fn cyclic(n: usize) -> Result<Alg, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParams {
            name: "cyclic".into(),
            reason: "order must be positive".into(),
        });
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = (a + b) % n;
        }
    }
    Ok(validate_algebra(Kind::Group, names, mul, None)?)
}

fn dihedral(n: usize) -> Result<Alg, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParams {
            name: "dihedral".into(),
            reason: "parameter must be positive".into(),
        });
    }
    // element (eps, i) = s^eps r^i, index eps*n + i
    let order = 2 * n;
    let idx = |eps: usize, i: usize| eps * n + (i % n);
    let mut mul = vec![0; order * order];
    for e1 in 0..2 {
        for i in 0..n {
            for e2 in 0..2 {
                for j in 0..n {
                    // (s^e1 r^i)(s^e2 r^j) = s^(e1+e2) r^(j + i or j - i)
                    let v = if e2 == 0 {
                        idx(e1, i + j)
                    } else {
                        idx(1 - e1, (n + j) - (i % n))
                    };
                    mul[idx(e1, i) * order + idx(e2, j)] = v;
                }
            }
        }
    }
    let mut names = Vec::with_capacity(order);
    for eps in 0..2usize {
        for i in 0..n {
            names.push(match (eps, i) {
                (0, 0) => "e".to_string(),
                (0, 1) => "r".to_string(),
                (0, i) => format!("r{i}"),
                (_, 0) => "s".to_string(),
                (_, 1) => "sr".to_string(),
                (_, i) => format!("sr{i}"),
            });
        }
    }
    Ok(validate_algebra(Kind::Group, names, mul, None)?)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out // lexicographic; identity first
}

fn cycle_notation(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = p[start];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = p[cur];
        }
        out.push('(');
        for v in cycle {
            out.push_str(&(v + 1).to_string());
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

fn symmetric(n: usize) -> Result<Alg, CatalogError> {
    if n == 0 || n > 4 {
        return Err(CatalogError::BadParams {
            name: "symmetric".into(),
            reason: "supported range is 1..=4".into(),
        });
    }
    let perms = permutations(n);
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let order = perms.len();
    let mut mul = vec![0; order * order];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // apply q first, then p
            let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
            mul[i * order + j] = index_of(&composed);
        }
    }
    let names: Vec<String> = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(validate_algebra(Kind::Group, names, mul, None)?)
}

fn klein4() -> Result<Alg, CatalogError> {
    let names = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    #[rustfmt::skip]
    let mul = vec![
        0, 1, 2, 3,
        1, 0, 3, 2,
        2, 3, 0, 1,
        3, 2, 1, 0,
    ];
    Ok(validate_algebra(Kind::Group, names, mul, None)?)
}

const UNIT_NAMES: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

fn quaternion8() -> Result<Alg, CatalogError> {
    let names: Vec<String> = UNIT_NAMES.iter().map(|s| s.to_string()).collect();
    #[rustfmt::skip]
    let mul = vec![
        0, 1, 2, 3, 4, 5, 6, 7,
        1, 0, 3, 2, 5, 4, 7, 6,
        2, 3, 1, 0, 6, 7, 5, 4,
        3, 2, 0, 1, 7, 6, 4, 5,
        4, 5, 7, 6, 1, 0, 2, 3,
        5, 4, 6, 7, 0, 1, 3, 2,
        6, 7, 4, 5, 3, 2, 1, 0,
        7, 6, 5, 4, 2, 3, 0, 1,
    ];
    Ok(validate_algebra(Kind::Group, names, mul, None)?)
}

/// The order-eight loop of the hyperbolic quaternions: `ij = k = -ji`,
/// `jk = i = -kj`, `ki = j = -ik`, `ii = jj = kk = 1`, with `-1` central
/// and `(-x)y = x(-y) = -(xy)`, `(-x)(-y) = xy`.
///
/// The table is spelled out entry by entry; a unit test re-derives it from
/// the sign rules.
fn hyperbolic_quaternion_loop() -> Result<Alg, CatalogError> {
    let names: Vec<String> = UNIT_NAMES.iter().map(|s| s.to_string()).collect();
    #[rustfmt::skip]
    let mul = vec![
        0, 1, 2, 3, 4, 5, 6, 7,
        1, 0, 3, 2, 5, 4, 7, 6,
        2, 3, 0, 1, 6, 7, 5, 4,
        3, 2, 1, 0, 7, 6, 4, 5,
        4, 5, 7, 6, 0, 1, 2, 3,
        5, 4, 6, 7, 1, 0, 3, 2,
        6, 7, 4, 5, 3, 2, 0, 1,
        7, 6, 5, 4, 2, 3, 1, 0,
    ];
    Ok(validate_algebra(Kind::Loop, names, mul, None)?)
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// On-disk document: JSON with fields `kind`, `order`, `elements`, `mul`
/// (row-major), and optional `inv` for groups. Index 0 is the unit.
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub kind: Kind,
    pub order: usize,
    pub elements: Vec<String>,
    pub mul: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<Vec<Elem>>,
}

impl AlgebraFile {
    pub fn from_algebra(x: &Alg) -> AlgebraFile {
        let n = x.order();
        let mul: Vec<Vec<Elem>> = (0..n)
            .map(|a| (0..n).map(|b| x.mul(a, b)).collect())
            .collect();
        let inv = match x.kind() {
            Kind::Group => Some((0..n).map(|a| x.inv(a)).collect()),
            Kind::Loop => None,
        };
        AlgebraFile { kind: x.kind(), order: n, elements: x.names().to_vec(), mul, inv }
    }

    pub fn into_algebra(self) -> Result<Alg, CatalogError> {
        if self.order != self.elements.len() {
            return Err(CatalogError::Format {
                line: 0,
                reason: format!(
                    "order {} does not match {} element names",
                    self.order,
                    self.elements.len()
                ),
            });
        }
        if self.mul.len() != self.order || self.mul.iter().any(|r| r.len() != self.order) {
            return Err(CatalogError::Format {
                line: 0,
                reason: "mul table is not order x order".to_string(),
            });
        }
        let flat: Vec<Elem> = self.mul.into_iter().flatten().collect();
        Ok(validate_algebra(self.kind, self.elements, flat, self.inv)?)
    }
}

/// Parses a document against the algebra file format.
pub fn parse_algebra(text: &str) -> Result<Alg, CatalogError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| CatalogError::Format {
        line: e.line(),
        reason: e.to_string(),
    })?;
    file.into_algebra()
}

pub fn serialize_algebra(x: &Alg) -> String {
    let mut out = serde_json::to_string_pretty(&AlgebraFile::from_algebra(x))
        .expect("algebra serialization cannot fail");
    out.push('\n');
    out
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<Alg, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebra(&text)
}

pub fn save_algebra(x: &Alg, path: impl AsRef<Path>) -> Result<(), CatalogError> {
    let path = path.as_ref();
    std::fs::write(path, serialize_algebra(x)).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Base catalog entries, as accepted by [`builtin`]. Parameterized families
/// take their argument in parentheses; products join entries with `x`.
pub fn entry_names() -> &'static [&'static str] {
    &[
        "cyclic(n)",
        "dihedral(n)",
        "symmetric(n<=4)",
        "quaternion8",
        "klein4",
        "hyperbolic_quaternion_loop",
        "trivial",
    ]
}

/// Names of every catalog entry exercised by the test corpus.
pub fn corpus_names() -> Vec<&'static str> {
    vec![
        "cyclic(1)",
        "cyclic(2)",
        "cyclic(3)",
        "cyclic(4)",
        "cyclic(5)",
        "cyclic(6)",
        "cyclic(8)",
        "cyclic(9)",
        "cyclic(12)",
        "cyclic(16)",
        "klein4",
        "cyclic(2)xcyclic(4)",
        "cyclic(2)xcyclic(6)",
        "cyclic(3)xcyclic(3)",
        "cyclic(2)xcyclic(2)xcyclic(2)",
        "cyclic(4)xcyclic(4)",
        "dihedral(3)",
        "dihedral(4)",
        "dihedral(5)",
        "dihedral(6)",
        "dihedral(7)",
        "dihedral(8)",
        "symmetric(3)",
        "quaternion8",
        "cyclic(2)xsymmetric(3)",
        "cyclic(2)xquaternion8",
        "cyclic(2)xdihedral(4)",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UNIT;

    #[test]
    fn every_catalog_entry_validates() {
        for name in corpus_names() {
            let x = builtin(name).unwrap();
            x.validate().unwrap();
        }
        builtin("symmetric(4)").unwrap().validate().unwrap();
        builtin("hyperbolic_quaternion_loop").unwrap().validate().unwrap();
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(*builtin("Z6").unwrap(), *builtin("cyclic(6)").unwrap());
        assert_eq!(*builtin("S3").unwrap(), *builtin("symmetric(3)").unwrap());
        assert_eq!(*builtin("D4").unwrap(), *builtin("dihedral(4)").unwrap());
        assert_eq!(*builtin("M8").unwrap(), *builtin("hyperbolic_quaternion_loop").unwrap());
        assert_eq!(*builtin("Z2xZ2").unwrap(), *builtin("cyclic(2)xcyclic(2)").unwrap());
    }

    #[test]
    fn unknown_entry_and_bad_params() {
        assert!(matches!(builtin("nonexistent"), Err(CatalogError::UnknownEntry(_))));
        assert!(matches!(builtin("symmetric(5)"), Err(CatalogError::BadParams { .. })));
        assert!(matches!(builtin("cyclic(0)"), Err(CatalogError::BadParams { .. })));
    }

    #[test]
    fn m8_spot_checks_against_the_multiplication_rules() {
        let x = builtin("M8").unwrap();
        let e = |n: &str| x.element_by_name(n).unwrap();
        // j·(j·i): ji = -k, j·(-k) = -i
        assert_eq!(x.mul(e("j"), e("i")), e("-k"));
        assert_eq!(x.mul(e("j"), x.mul(e("j"), e("i"))), e("-i"));
        // while (j·j)·i = i
        assert_eq!(x.mul(x.mul(e("j"), e("j")), e("i")), e("i"));
        // ij·j = kj = -i
        assert_eq!(x.mul(x.mul(e("i"), e("j")), e("j")), e("-i"));
        assert!(!x.is_associative());
    }

    /// Re-derives the stored M8 table from the sign rules:
    /// `(-x)y = x(-y) = -(xy)` and `(-x)(-y) = xy` over base products
    /// `ij = k, ji = -k, jk = i, kj = -i, ki = j, ik = -j, ii = jj = kk = 1`.
    #[test]
    fn m8_table_matches_sign_rule_derivation() {
        // base indices: 1 -> 0, i -> 1, j -> 2, k -> 3; (sign, base) -> 2*base + sign
        let base_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, b) => (0, b),
                (a, 0) => (0, a),
                (1, 1) | (2, 2) | (3, 3) => (0, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let x = builtin("M8").unwrap();
        for a in 0..8usize {
            for b in 0..8usize {
                let (sa, ba) = (a % 2, a / 2);
                let (sb, bb) = (b % 2, b / 2);
                let (sp, bp) = base_mul(ba, bb);
                let sign = (sa + sb + sp) % 2;
                assert_eq!(x.mul(a, b), 2 * bp + sign, "at ({a},{b})");
            }
        }
    }

    #[test]
    fn quaternion8_has_unique_element_of_order_two() {
        let q = builtin("quaternion8").unwrap();
        let squares_to_unit: Vec<_> = q
            .elements()
            .filter(|&e| e != UNIT && q.mul(e, e) == UNIT)
            .collect();
        assert_eq!(squares_to_unit.len(), 1);
        assert!(q.is_associative());
        assert!(!q.is_commutative());
    }

    #[test]
    fn file_roundtrip_on_catalog_entries() {
        let dir = std::env::temp_dir();
        for name in ["symmetric(3)", "M8", "cyclic(2)"] {
            let x = builtin(name).unwrap();
            let path = dir.join(format!("cosmash_test_{}.json", name.replace(['(', ')'], "_")));
            save_algebra(&x, &path).unwrap();
            let y = load_algebra(&path).unwrap();
            assert_eq!(*x, *y);
            assert_eq!(x.names(), y.names());
            std::fs::remove_file(&path).ok();
        }
    }

    #[test]
    fn z2_serializes_to_the_addition_table() {
        let z2 = builtin("cyclic(2)").unwrap();
        let text = serialize_algebra(&z2);
        let file: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.mul, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn bad_kind_is_a_format_error() {
        let text = r#"{ "kind": "ring", "order": 1, "elements": ["e"], "mul": [[0]] }"#;
        assert!(matches!(parse_algebra(text), Err(CatalogError::Format { .. })));
    }

    #[test]
    fn io_error_on_missing_file() {
        assert!(matches!(
            load_algebra("/nonexistent/path/alg.json"),
            Err(CatalogError::Io { .. })
        ));
        let z2 = builtin("cyclic(2)").unwrap();
        assert!(matches!(
            save_algebra(&z2, "/nonexistent/path/alg.json"),
            Err(CatalogError::Io { .. })
        ));
    }
}
