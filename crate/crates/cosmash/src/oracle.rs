//! Independent brute-force references for the verification suites.
//!
//! These deliberately bypass the subobject/congruence machinery: they work
//! on raw element vectors with explicit closure loops, so they can serve as
//! oracles for the commutator implementations.

use crate::algebra::{Alg, Elem, UNIT};

/// Multiplicative closure of a set of group elements (contains the unit).
fn close_under_mul(x: &Alg, seed: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; x.order()];
    member[UNIT] = true;
    let mut items = vec![UNIT];
    for &s in seed {
        if !member[s] {
            member[s] = true;
            items.push(s);
        }
    }
    let mut i = 0;
    while i < items.len() {
        let a = items[i];
        i += 1;
        for j in 0..items.len() {
            let b = items[j];
            for v in [x.mul(a, b), x.mul(b, a)] {
                if !member[v] {
                    member[v] = true;
                    items.push(v);
                }
            }
        }
    }
    items.sort_unstable();
    items
}

/// The classical commutator subgroup `[K,L]`: the subgroup generated by all
/// `aba⁻¹b⁻¹` with `a ∈ K`, `b ∈ L`. Group kind only.
pub fn classical_commutator_subgroup(x: &Alg, k: &[Elem], l: &[Elem]) -> Vec<Elem> {
    assert!(x.is_group());
    let mut gens = Vec::new();
    for &a in k {
        for &b in l {
            gens.push(x.mul(x.mul(x.mul(a, b), x.inv(a)), x.inv(b)));
        }
    }
    close_under_mul(x, &gens)
}

/// The classical normal closure: smallest subgroup containing `seed` that is
/// stable under conjugation by every element. Group kind only.
pub fn classical_normal_closure(x: &Alg, seed: &[Elem]) -> Vec<Elem> {
    assert!(x.is_group());
    let mut current = close_under_mul(x, seed);
    loop {
        let mut gens = current.clone();
        for &g in &current {
            for c in x.elements() {
                gens.push(x.mul(x.mul(c, g), x.inv(c)));
            }
        }
        let next = close_under_mul(x, &gens);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Brute-force isomorphism search with backtracking, for small orders.
pub fn isomorphic(x: &Alg, y: &Alg) -> bool {
    if x.order() != y.order() || x.kind() != y.kind() {
        return false;
    }
    fn extend(x: &Alg, y: &Alg, map: &mut Vec<Option<Elem>>, used: &mut Vec<bool>) -> bool {
        let a = match map.iter().position(|m| m.is_none()) {
            None => return true,
            Some(a) => a,
        };
        for b in 0..y.order() {
            if used[b] {
                continue;
            }
            map[a] = Some(b);
            used[b] = true;
            let consistent = (0..x.order()).all(|c| {
                (0..x.order()).all(|d| match (map[c], map[d], map[x.mul(c, d)]) {
                    (Some(mc), Some(md), Some(mcd)) => y.mul(mc, md) == mcd,
                    _ => true,
                })
            });
            if consistent && extend(x, y, map, used) {
                return true;
            }
            map[a] = None;
            used[b] = false;
        }
        false
    }
    let mut map: Vec<Option<Elem>> = vec![None; x.order()];
    map[UNIT] = Some(UNIT);
    let mut used = vec![false; x.order()];
    used[UNIT] = true;
    extend(x, y, &mut map, &mut used)
}
