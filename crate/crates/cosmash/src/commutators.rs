//! The commutator calculus on finite algebras.
//!
//! * **Higgins binary** `[K,L]`: the fold image of the co-smash product,
//!   computed exactly as a fiber of a closure inside `X × K × L`.
//! * **Huq** `[K,L]^Huq`: smallest normal subobject whose quotient makes the
//!   cooperator `(k,l) ↦ k·l` a homomorphism, by defect fixpoint.
//! * **Smith** `[R,S]^S`: the term-condition commutator on congruences, with
//!   a mandatory post-hoc connector verification using the canonical
//!   Mal'tsev term `x·(y\z)`.
//! * **Ternary obstruction** `[K,L,X]`: exact whenever `[K,L] = 0`, as the
//!   normalisation of the Smith commutator of the denormalisations.
//! * Group ternary commutators decompose into nested binary ones;
//!   loop ternary commutators are reported as witnessed lower bounds.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    self, congruence_generate, denormalize, normal_closure, normalize, quotient, subalgebra,
    subobject_generate, Alg, Congruence, Elem, Homomorphism, Kind, Subobject, UNIT,
};
use crate::words::{enumerate_cached, eval_term, Term};

#[derive(Debug, Error)]
pub enum CommutatorError {
    #[error("{which} must be a normal subobject")]
    NotNormal { which: String },
    #[error("operation requires a {expected}, got a {found}")]
    WrongKind { expected: Kind, found: Kind },
    #[error("precondition failed: {requirement} (witness {witness})")]
    PreconditionFailed { requirement: String, witness: String },
    #[error("internal inconsistency: {context}")]
    InternalInconsistency { context: String },
}

// ---------------------------------------------------------------------------
// Higgins binary commutator
// ---------------------------------------------------------------------------

/// The Higgins commutator `[K,L] ≤ X`: the image of the co-smash product
/// `K⊗L` under the fold map.
///
/// Computed by closing `D ≤ X×K×L` over the seeds `(k,k,1)` and `(l,1,l)`:
/// `D` is the image of `K+L` under the triple (fold, retraction onto `K`,
/// retraction onto `L`), and the fiber of `D` over `(1,1)` is exactly the
/// image of the co-smash kernel. Closure under `mul` suffices: in a finite
/// quasigroup with unit, a multiplicatively closed subset containing the
/// unit is closed under the divisions as well.
pub fn higgins_binary(x: &Alg, k: &Subobject, l: &Subobject) -> Subobject {
    let ke = k.elements();
    let le = l.elements();
    let (nk, nl) = (ke.len(), le.len());
    let pos_k: HashMap<Elem, usize> = ke.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let pos_l: HashMap<Elem, usize> = le.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let idx = |xv: Elem, kv: usize, lv: usize| (xv * nk + kv) * nl + lv;
    let mut member = vec![false; x.order() * nk * nl];
    let mut items: Vec<(Elem, usize, usize)> = Vec::new();
    let push = |t: (Elem, usize, usize),
                    member: &mut Vec<bool>,
                    items: &mut Vec<(Elem, usize, usize)>| {
        let i = idx(t.0, t.1, t.2);
        if !member[i] {
            member[i] = true;
            items.push(t);
        }
    };
    for &e in ke {
        push((e, pos_k[&e], 0), &mut member, &mut items);
    }
    for &e in le {
        push((e, 0, pos_l[&e]), &mut member, &mut items);
    }

    let mut frontier = 0;
    while frontier < items.len() {
        let a = items[frontier];
        frontier += 1;
        for i in 0..items.len() {
            let b = items[i];
            for (u, v) in [(a, b), (b, a)] {
                let t = (
                    x.mul(u.0, v.0),
                    pos_k[&x.mul(ke[u.1], ke[v.1])],
                    pos_l[&x.mul(le[u.2], le[v.2])],
                );
                push(t, &mut member, &mut items);
            }
        }
    }

    let fiber: Vec<Elem> = (0..x.order()).filter(|&e| member[idx(e, 0, 0)]).collect();
    Subobject::from_closed_unchecked(x, fiber)
}

// ---------------------------------------------------------------------------
// Cooperator and Huq commutator
// ---------------------------------------------------------------------------

/// Outcome of testing whether `K` and `L` Huq-commute in `X`.
#[derive(Debug)]
pub enum Cooperation {
    /// The forced candidate `φ(k,l) = k·l` is a homomorphism `K×L → X`.
    Commutes(Homomorphism),
    /// First violating tuple `(op, (k,l), (k',l'))`, elements of `X`.
    Fails {
        op: String,
        first: (Elem, Elem),
        second: (Elem, Elem),
    },
}

impl Cooperation {
    pub fn commutes(&self) -> bool {
        matches!(self, Cooperation::Commutes(_))
    }
}

/// Tests the forced cooperator `φ(k,l) = k·l` for preservation of every
/// operation of `K×L` into `X`.
pub fn cooperator_check(x: &Alg, k: &Subobject, l: &Subobject) -> Cooperation {
    for op in x.kind().binary_ops() {
        for &ka in k.elements() {
            for &la in l.elements() {
                for &kb in k.elements() {
                    for &lb in l.elements() {
                        let lhs = x.binary_op(op, x.mul(ka, la), x.mul(kb, lb));
                        let rhs = x.mul(x.binary_op(op, ka, kb), x.binary_op(op, la, lb));
                        if lhs != rhs {
                            return Cooperation::Fails {
                                op: op.to_string(),
                                first: (ka, la),
                                second: (kb, lb),
                            };
                        }
                    }
                }
            }
        }
    }
    if x.is_group() {
        for &ka in k.elements() {
            for &la in l.elements() {
                if x.inv(x.mul(ka, la)) != x.mul(x.inv(ka), x.inv(la)) {
                    return Cooperation::Fails {
                        op: "inv".to_string(),
                        first: (ka, la),
                        second: (ka, la),
                    };
                }
            }
        }
    }
    // φ is forced on the generators, so the validated map is the whole table
    let (ka, _) = subalgebra(k);
    let (la, _) = subalgebra(l);
    let product = algebra::direct_product(&ka, &la).expect("same kind");
    let map: Vec<Elem> = (0..product.order())
        .map(|p| x.mul(k.elements()[p / la.order()], l.elements()[p % la.order()]))
        .collect();
    Cooperation::Commutes(Homomorphism::from_map_unchecked(&product, x, map))
}

/// The Huq commutator: smallest normal `N ⊴ X` such that the images of `K`
/// and `L` cooperate in `X/N`.
///
/// Defect fixpoint: in each quotient, every failure of the cooperator law
/// names a defect element `d = rdiv(ω applied to products, product of
/// ω-applications)`; the next stage divides out the normal closure of all
/// defects. The congruence strictly grows, so this terminates.
pub fn huq_commutator(x: &Alg, k: &Subobject, l: &Subobject) -> Subobject {
    let mut theta = Congruence::diagonal(x);
    loop {
        let (q, proj) = quotient(x, &theta);
        let kq = proj.image_of(k);
        let lq = proj.image_of(l);
        let mut defects: BTreeSet<Elem> = BTreeSet::new();
        for op in q.kind().binary_ops() {
            for &ka in kq.elements() {
                for &la in lq.elements() {
                    for &kb in kq.elements() {
                        for &lb in lq.elements() {
                            let applied = q.binary_op(op, q.mul(ka, la), q.mul(kb, lb));
                            let of_parts =
                                q.mul(q.binary_op(op, ka, kb), q.binary_op(op, la, lb));
                            let d = q.rdiv(applied, of_parts);
                            if d != UNIT {
                                defects.insert(d);
                            }
                        }
                    }
                }
            }
        }
        if q.is_group() {
            for &ka in kq.elements() {
                for &la in lq.elements() {
                    let d = q.rdiv(q.inv(q.mul(ka, la)), q.mul(q.inv(ka), q.inv(la)));
                    if d != UNIT {
                        defects.insert(d);
                    }
                }
            }
        }
        if defects.is_empty() {
            return normalize(&theta);
        }
        // lift each defect class back to X and force it into the kernel
        let mut pairs: Vec<(Elem, Elem)> = theta
            .class_vector()
            .iter()
            .enumerate()
            .map(|(e, &r)| (e, r))
            .collect();
        for d in defects {
            let rep = proj
                .map()
                .iter()
                .position(|&v| v == d)
                .expect("projection is surjective");
            pairs.push((rep, UNIT));
        }
        theta = congruence_generate(x, &pairs);
    }
}

// ---------------------------------------------------------------------------
// Smith commutator
// ---------------------------------------------------------------------------

/// A verified connector between two congruences: a partial Mal'tsev
/// operation on the domain `{(x,y,z) : x α y, y β z}`.
#[derive(Debug, Clone)]
pub struct ConnectorWitness {
    parent: Alg,
    domain: Vec<(Elem, Elem, Elem)>,
    values: Vec<Elem>,
}

impl ConnectorWitness {
    pub fn domain(&self) -> &[(Elem, Elem, Elem)] {
        &self.domain
    }

    pub fn value(&self, triple: (Elem, Elem, Elem)) -> Option<Elem> {
        self.domain
            .iter()
            .position(|&t| t == triple)
            .map(|i| self.values[i])
    }

    /// Re-checks the Mal'tsev laws and operation compatibility.
    pub fn verify(&self, alpha: &Congruence, beta: &Congruence) -> bool {
        verify_connector(&self.parent, alpha, beta).is_some()
    }
}

/// Validates the canonical Mal'tsev candidate `θ(x,y,z) = x·(y\z)` as a
/// connector between `α` and `β` on their parent: the Mal'tsev laws on the
/// whole domain plus compatibility with every operation on composable
/// triples. Returns the witness if it passes.
fn verify_connector(
    x: &Alg,
    alpha: &Congruence,
    beta: &Congruence,
) -> Option<ConnectorWitness> {
    let n = x.order();
    let mut domain: Vec<(Elem, Elem, Elem)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !alpha.related(a, b) {
                continue;
            }
            for c in 0..n {
                if beta.related(b, c) {
                    domain.push((a, b, c));
                }
            }
        }
    }
    let theta = |t: (Elem, Elem, Elem)| x.mul(t.0, x.ldiv(t.1, t.2));
    let values: Vec<Elem> = domain.iter().map(|&t| theta(t)).collect();

    for (i, &(a, b, c)) in domain.iter().enumerate() {
        if a == b && values[i] != c {
            return None;
        }
        if b == c && values[i] != a {
            return None;
        }
    }
    for op in x.kind().binary_ops() {
        for (i, &(a1, b1, c1)) in domain.iter().enumerate() {
            for (j, &(a2, b2, c2)) in domain.iter().enumerate() {
                let composed = (
                    x.binary_op(op, a1, a2),
                    x.binary_op(op, b1, b2),
                    x.binary_op(op, c1, c2),
                );
                if theta(composed) != x.binary_op(op, values[i], values[j]) {
                    return None;
                }
            }
        }
    }
    if x.is_group() {
        for (i, &(a, b, c)) in domain.iter().enumerate() {
            if theta((x.inv(a), x.inv(b), x.inv(c))) != x.inv(values[i]) {
                return None;
            }
        }
    }
    Some(ConnectorWitness { parent: x.clone(), domain, values })
}

/// The Smith (term-condition) commutator `[α,β]^S`, with connector
/// verification.
///
/// Construction: on the algebra `A(β) = {(x,y) : x β y} ≤ X×X`, let `Δ` be
/// the congruence generated by `{((a,a),(b,b)) : a α b}`; then
/// `δ = {(x,y) : (x,y) Δ (y,y)}`. In `X/δ` the canonical Mal'tsev candidate
/// must pass connector validation; failure is an internal inconsistency,
/// never valid output. The returned witness is present exactly when
/// `δ = Δ_X`, i.e. when `α` and `β` Smith-commute on `X` itself.
pub fn smith_commutator(
    x: &Alg,
    alpha: &Congruence,
    beta: &Congruence,
) -> Result<(Congruence, Option<ConnectorWitness>), CommutatorError> {
    let n = x.order();
    // carrier of A(β)
    let mut pairs: Vec<(Elem, Elem)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if beta.related(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let pos: HashMap<(Elem, Elem), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let m = pairs.len();
    let mut mul = vec![0; m * m];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (jj, &(c, d)) in pairs.iter().enumerate() {
            mul[i * m + jj] = pos[&(x.mul(a, c), x.mul(b, d))];
        }
    }
    let names: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", x.name(a), x.name(b)))
        .collect();
    let a_beta = algebra::from_tables_unchecked(x.kind(), names, mul);

    // Δ = Cg^{A(β)}({((a,a),(b,b)) : a α b})
    let mut seeds: Vec<(Elem, Elem)> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if alpha.related(a, b) {
                seeds.push((pos[&(a, a)], pos[&(b, b)]));
            }
        }
    }
    let delta_big = congruence_generate(&a_beta, &seeds);

    // δ = {(x,y) : (x,y) Δ (y,y)}
    let mut rel: Vec<(Elem, Elem)> = Vec::new();
    for &(a, b) in &pairs {
        if delta_big.related(pos[&(a, b)], pos[&(b, b)]) {
            rel.push((a, b));
        }
    }
    let delta = congruence_from_relation(x, &rel)?;

    // verification contract: in X/δ the Mal'tsev candidate is a connector
    let (q, proj) = quotient(x, &delta);
    let alpha_q = alpha.pushforward(&proj);
    let beta_q = beta.pushforward(&proj);
    let witness_q = verify_connector(&q, &alpha_q, &beta_q).ok_or_else(|| {
        CommutatorError::InternalInconsistency {
            context: "Mal'tsev candidate failed connector validation after \
                      a term-condition quotient"
                .to_string(),
        }
    })?;

    let witness = if delta.is_diagonal() {
        // X/Δ_X is X itself up to renaming, and quotient keeps the indices
        Some(ConnectorWitness {
            parent: x.clone(),
            domain: witness_q.domain,
            values: witness_q.values,
        })
    } else {
        None
    };
    Ok((delta, witness))
}

/// Builds the congruence with the given related pairs, verifying that the
/// relation really is operation-compatible (a failed check indicates a bug
/// in the term-condition construction, not bad input).
fn congruence_from_relation(
    x: &Alg,
    rel: &[(Elem, Elem)],
) -> Result<Congruence, CommutatorError> {
    let n = x.order();
    let mut related = vec![false; n * n];
    for &(a, b) in rel {
        related[a * n + b] = true;
    }
    let reflexive = (0..n).all(|a| related[a * n + a]);
    let symmetric = (0..n).all(|a| (0..n).all(|b| related[a * n + b] == related[b * n + a]));
    let transitive = (0..n).all(|a| {
        (0..n).all(|b| {
            !related[a * n + b]
                || (0..n).all(|c| !related[b * n + c] || related[a * n + c])
        })
    });
    let compatible = x.kind().binary_ops().iter().all(|op| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                !related[a * n + b]
                    || (0..n).all(|c| {
                        related[x.binary_op(op, a, c) * n + x.binary_op(op, b, c)]
                            && related[x.binary_op(op, c, a) * n + x.binary_op(op, c, b)]
                    })
            })
        })
    });
    if !(reflexive && symmetric && transitive && compatible) {
        return Err(CommutatorError::InternalInconsistency {
            context: "term-condition relation is not a congruence".to_string(),
        });
    }
    let mut class_of: Vec<Elem> = (0..n).collect();
    for e in 0..n {
        class_of[e] = (0..n).find(|&r| related[e * n + r]).expect("reflexive");
    }
    Ok(Congruence::from_class_vector(x, class_of))
}

/// `normalize([R_K, R_L]^S)`: by the Smith-commutator decomposition this is
/// the join `[K,L,X] ∨ [K,L]`, and it is normal in `X`.
pub fn smith_normalization(
    x: &Alg,
    k: &Subobject,
    l: &Subobject,
) -> Result<Subobject, CommutatorError> {
    for (s, label) in [(k, "K"), (l, "L")] {
        if !s.is_normal() {
            return Err(CommutatorError::NotNormal { which: label.to_string() });
        }
    }
    let (delta, _) = smith_commutator(x, &denormalize(k), &denormalize(l))?;
    Ok(normalize(&delta))
}

/// The ternary commutator obstruction `[K,L,X]`, exact in the `[K,L] = 0`
/// regime where the join `[K,L,X] ∨ [K,L]` collapses.
pub fn ternary_obstruction(
    x: &Alg,
    k: &Subobject,
    l: &Subobject,
) -> Result<Subobject, CommutatorError> {
    let binary = higgins_binary(x, k, l);
    if !binary.is_trivial() {
        let witness = binary
            .elements()
            .iter()
            .copied()
            .find(|&e| e != UNIT)
            .expect("nontrivial");
        return Err(CommutatorError::PreconditionFailed {
            requirement: "binary commutator [K,L] must vanish".to_string(),
            witness: x.name(witness).to_string(),
        });
    }
    smith_normalization(x, k, l)
}

/// Exact group ternary commutator via the nested decomposition
/// `[K,L,M] = [K,[L,M]] ∨ [L,[M,K]] ∨ [M,[K,L]]`.
pub fn ternary_group_exact(
    x: &Alg,
    k: &Subobject,
    l: &Subobject,
    m: &Subobject,
) -> Result<Subobject, CommutatorError> {
    if !x.is_group() {
        return Err(CommutatorError::WrongKind { expected: Kind::Group, found: x.kind() });
    }
    let a = higgins_binary(x, k, &higgins_binary(x, l, m));
    let b = higgins_binary(x, l, &higgins_binary(x, m, k));
    let c = higgins_binary(x, m, &higgins_binary(x, k, l));
    Ok(a.join(&b).join(&c))
}

/// The associator subloop `⟦K,L,M⟧`: the normal closure inside `K∨L∨M` of
/// all associator values `⟦x,y,z⟧ = (xy·z)/(x·yz)` with `(x,y,z)` (in any
/// order) drawn from `K×L×M`. Always a lower bound for `[K,L,M]`.
pub fn associator_subobject(
    x: &Alg,
    k: &Subobject,
    l: &Subobject,
    m: &Subobject,
) -> Result<Subobject, CommutatorError> {
    if x.is_group() {
        return Err(CommutatorError::WrongKind { expected: Kind::Loop, found: x.kind() });
    }
    let join = k.join(l).join(m);
    let (ja, embed) = subalgebra(&join);
    let to_j: HashMap<Elem, Elem> = embed
        .map()
        .iter()
        .enumerate()
        .map(|(inner, &outer)| (outer, inner))
        .collect();
    let assoc = |a: Elem, b: Elem, c: Elem| {
        ja.rdiv(ja.mul(ja.mul(a, b), c), ja.mul(a, ja.mul(b, c)))
    };
    let mut values: BTreeSet<Elem> = BTreeSet::new();
    let sets = [k, l, m];
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for &a in sets[perm[0]].elements() {
            for &b in sets[perm[1]].elements() {
                for &c in sets[perm[2]].elements() {
                    values.insert(assoc(to_j[&a], to_j[&b], to_j[&c]));
                }
            }
        }
    }
    let closure = normal_closure(&ja, &values.into_iter().collect::<Vec<_>>());
    let outer: Vec<Elem> = closure.elements().iter().map(|&e| embed.apply(e)).collect();
    Ok(Subobject::from_closed_unchecked(x, outer))
}

// ---------------------------------------------------------------------------
// Ternary lower bound by enumeration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

/// A term together with the assignment that produced a nontrivial value.
#[derive(Debug, Clone)]
pub struct TermWitness {
    pub term: Term,
    pub assignment: [Elem; 3],
    pub value: Elem,
}

#[derive(Debug)]
pub struct TernaryLowerBound {
    pub subobject: Subobject,
    pub exactness: Exactness,
    pub witnesses: Vec<TermWitness>,
}

/// Subobject generated by evaluating every member of the co-smash term
/// stream at the given depth, with letters ranging over `K`, `L`, `M`.
///
/// Sound for both kinds (members instantiate to co-smash kernel elements of
/// `K+L+M`, so their values lie in `[K,L,M]`). For groups with normal
/// inputs the result is compared against the nested-commutator formula:
/// containment pins the value exactly (the enumeration can only produce a
/// subobject of the true commutator), so the result is flagged `Exact`.
pub fn ternary_lower_bound(
    x: &Alg,
    k: &Subobject,
    l: &Subobject,
    m: &Subobject,
    depth: usize,
) -> Result<TernaryLowerBound, CommutatorError> {
    let enumeration = enumerate_cached(x.kind(), 3, 1, depth);
    let mut collected: BTreeSet<Elem> = BTreeSet::new();
    collected.insert(UNIT);
    let mut witnesses: Vec<TermWitness> = Vec::new();
    let sets = [k, l, m];
    for (_, t) in &enumeration.members {
        let mut asg: HashMap<(usize, usize), Elem> = HashMap::new();
        for &a in sets[0].elements() {
            asg.insert((0, 1), a);
            for &b in sets[1].elements() {
                asg.insert((1, 1), b);
                for &c in sets[2].elements() {
                    asg.insert((2, 1), c);
                    let v = eval_term(t, x, &asg).map_err(|e| {
                        CommutatorError::InternalInconsistency {
                            context: format!("stream term failed to evaluate: {e}"),
                        }
                    })?;
                    if collected.insert(v) && witnesses.len() < 8 {
                        witnesses.push(TermWitness {
                            term: t.clone(),
                            assignment: [a, b, c],
                            value: v,
                        });
                    }
                }
            }
        }
    }
    let subobject = subobject_generate(x, &collected.into_iter().collect::<Vec<_>>());

    let mut exactness = Exactness::LowerBound;
    if x.is_group() && k.is_normal() && l.is_normal() && m.is_normal() {
        let formula = ternary_group_exact(x, k, l, m)?;
        let contains_formula =
            formula.elements().iter().all(|&e| subobject.contains(e));
        if contains_formula {
            // soundness gives ⊆, containment gives ⊇: the bound has landed
            if subobject.elements() != formula.elements() {
                return Err(CommutatorError::InternalInconsistency {
                    context: "enumeration escaped the exact ternary commutator".to_string(),
                });
            }
            exactness = Exactness::Exact;
        }
    }
    Ok(TernaryLowerBound { subobject, exactness, witnesses })
}

// ---------------------------------------------------------------------------
// Smith-is-Huq scan
// ---------------------------------------------------------------------------

/// One failing pair: Huq-commuting normal subobjects whose ternary
/// obstruction does not vanish.
#[derive(Debug)]
pub struct ShViolation {
    pub k: Subobject,
    pub l: Subobject,
    pub obstruction: Subobject,
    pub witnesses: Vec<Elem>,
}

#[derive(Debug)]
pub struct ShReport {
    pub pairs_scanned: usize,
    pub pairs_applicable: usize,
    pub violations: Vec<ShViolation>,
}

/// Scans every unordered pair of normal subobjects; for the pairs whose
/// binary commutator vanishes, computes the ternary obstruction and reports
/// each pair where it fails to vanish.
pub fn sh_check(x: &Alg) -> Result<ShReport, CommutatorError> {
    let normals = algebra::normal_subobjects(x);
    let mut report =
        ShReport { pairs_scanned: 0, pairs_applicable: 0, violations: Vec::new() };
    for (i, k) in normals.iter().enumerate() {
        for l in normals.iter().skip(i) {
            report.pairs_scanned += 1;
            if !higgins_binary(x, k, l).is_trivial() {
                continue;
            }
            report.pairs_applicable += 1;
            let obstruction = ternary_obstruction(x, k, l)?;
            if !obstruction.is_trivial() {
                let witnesses: Vec<Elem> = obstruction
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&e| e != UNIT)
                    .collect();
                report.violations.push(ShViolation {
                    k: k.clone(),
                    l: l.clone(),
                    obstruction,
                    witnesses,
                });
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorKind {
    HigginsBinary,
    Huq,
    Smith,
    TernaryObstruction,
    SmithNormalization,
    TernaryGroupExact,
    Associator,
    TernaryLowerBound,
}

/// Machine-readable account of one commutator computation. Witnesses are
/// element names that must re-verify against the result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub kind: CommutatorKind,
    pub inputs: Vec<(String, Vec<String>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result_elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result_classes: Option<Vec<Vec<String>>>,
    pub witnesses: Vec<String>,
    pub exactness: Exactness,
}

impl CommutatorReport {
    pub fn for_subobject(
        kind: CommutatorKind,
        inputs: Vec<(String, Vec<String>)>,
        result: &Subobject,
        exactness: Exactness,
    ) -> CommutatorReport {
        let witnesses: Vec<String> = result
            .elements()
            .iter()
            .copied()
            .filter(|&e| e != UNIT)
            .take(4)
            .map(|e| result.parent().name(e).to_string())
            .collect();
        CommutatorReport {
            kind,
            inputs,
            result_elements: Some(result.element_names()),
            result_classes: None,
            witnesses,
            exactness,
        }
    }

    pub fn for_congruence(
        kind: CommutatorKind,
        inputs: Vec<(String, Vec<String>)>,
        result: &Congruence,
        exactness: Exactness,
    ) -> CommutatorReport {
        let classes: Vec<Vec<String>> = result
            .classes()
            .into_iter()
            .map(|c| c.iter().map(|&e| result.parent().name(e).to_string()).collect())
            .collect();
        let witnesses: Vec<String> = normalize(result)
            .elements()
            .iter()
            .copied()
            .filter(|&e| e != UNIT)
            .take(4)
            .map(|e| result.parent().name(e).to_string())
            .collect();
        CommutatorReport {
            kind,
            inputs,
            result_elements: None,
            result_classes: Some(classes),
            witnesses,
            exactness,
        }
    }

    /// Every witness must genuinely lie in the reported result.
    pub fn verify(&self) -> bool {
        if let Some(elems) = &self.result_elements {
            return self.witnesses.iter().all(|w| elems.contains(w));
        }
        if let Some(classes) = &self.result_classes {
            let unit_class = classes.iter().find(|c| !c.is_empty());
            // witnesses certify nontriviality of the unit class
            return match unit_class {
                Some(_) => self
                    .witnesses
                    .iter()
                    .all(|w| classes.iter().flatten().any(|e| e == w)),
                None => self.witnesses.is_empty(),
            };
        }
        self.witnesses.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::oracle;

    fn s3() -> Alg {
        builtin("symmetric(3)").unwrap()
    }

    fn m8() -> Alg {
        builtin("M8").unwrap()
    }

    fn sub(x: &Alg, names: &[&str]) -> Subobject {
        let elems: Vec<Elem> = names.iter().map(|n| x.element_by_name(n).unwrap()).collect();
        subobject_generate(x, &elems)
    }

    fn whole(x: &Alg) -> Subobject {
        subobject_generate(x, &(0..x.order()).collect::<Vec<_>>())
    }

    #[test]
    fn higgins_examples() {
        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        assert!(higgins_binary(&s3, &a3, &a3).is_trivial());
        let got = higgins_binary(&s3, &a3, &whole(&s3));
        assert_eq!(got.elements(), a3.elements());

        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        assert!(higgins_binary(&x, &a, &a).is_trivial());
    }

    #[test]
    fn higgins_matches_classical_oracle_on_s3_and_d4() {
        for x in [s3(), builtin("dihedral(4)").unwrap(), builtin("quaternion8").unwrap()] {
            let normals = algebra::normal_subobjects(&x);
            for k in &normals {
                for l in &normals {
                    let fast = higgins_binary(&x, k, l);
                    let slow = oracle::classical_commutator_subgroup(&x, k.elements(), l.elements());
                    assert_eq!(fast.elements(), slow.as_slice());
                }
            }
        }
    }

    #[test]
    fn higgins_is_symmetric_and_monotone() {
        let x = builtin("dihedral(4)").unwrap();
        let normals = algebra::normal_subobjects(&x);
        for k in &normals {
            for l in &normals {
                let kl = higgins_binary(&x, k, l);
                let lk = higgins_binary(&x, l, k);
                assert_eq!(kl.elements(), lk.elements());
            }
        }
    }

    #[test]
    fn cooperator_examples() {
        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        assert!(cooperator_check(&x, &a, &a).commutes());

        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        match cooperator_check(&s3, &a3, &whole(&s3)) {
            Cooperation::Fails { .. } => {}
            Cooperation::Commutes(_) => panic!("A3 and S3 must not cooperate"),
        }
        assert!(cooperator_check(&s3, &sub(&s3, &[]), &whole(&s3)).commutes());
    }

    #[test]
    fn huq_examples() {
        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        let got = huq_commutator(&s3, &a3, &whole(&s3));
        assert_eq!(got.elements(), a3.elements());

        assert!(huq_commutator(&s3, &sub(&s3, &[]), &whole(&s3)).is_trivial());

        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        assert!(huq_commutator(&x, &a, &a).is_trivial());
    }

    /// Lattice oracle for the Huq commutator: the least normal subobject
    /// whose quotient makes the images cooperate, found by scanning every
    /// normal subobject.
    fn huq_oracle(x: &Alg, k: &Subobject, l: &Subobject) -> Vec<Elem> {
        let valid: Vec<Subobject> = algebra::normal_subobjects(x)
            .into_iter()
            .filter(|n| {
                let (_, proj) = quotient(x, &denormalize(n));
                let q = proj.target().clone();
                cooperator_check(&q, &proj.image_of(k), &proj.image_of(l)).commutes()
            })
            .collect();
        let least = valid
            .iter()
            .find(|n| {
                valid
                    .iter()
                    .all(|other| n.elements().iter().all(|e| other.contains(*e)))
            })
            .expect("the defect fixpoint target exists");
        least.elements().to_vec()
    }

    #[test]
    fn huq_matches_the_lattice_oracle() {
        for x in [s3(), builtin("dihedral(4)").unwrap(), m8()] {
            let subs = algebra::all_subobjects(&x);
            for k in &subs {
                for l in &subs {
                    let fast = huq_commutator(&x, k, l);
                    assert_eq!(fast.elements(), huq_oracle(&x, k, l).as_slice());
                }
            }
        }
    }

    #[test]
    fn higgins_matches_the_oracle_on_arbitrary_subgroup_pairs() {
        // the fold image of the co-smash product is generated by the
        // elementwise commutators whether or not the subgroups are normal
        for x in [s3(), builtin("dihedral(4)").unwrap()] {
            for k in algebra::all_subobjects(&x) {
                for l in algebra::all_subobjects(&x) {
                    let fast = higgins_binary(&x, &k, &l);
                    let slow =
                        oracle::classical_commutator_subgroup(&x, k.elements(), l.elements());
                    assert_eq!(fast.elements(), slow.as_slice());
                }
            }
        }
    }

    #[test]
    fn smith_commutator_is_symmetric() {
        for x in [s3(), builtin("dihedral(4)").unwrap(), m8()] {
            let normals = algebra::normal_subobjects(&x);
            for k in &normals {
                for l in &normals {
                    let (d1, _) = smith_commutator(&x, &denormalize(k), &denormalize(l)).unwrap();
                    let (d2, _) = smith_commutator(&x, &denormalize(l), &denormalize(k)).unwrap();
                    assert_eq!(d1, d2);
                    // the commutator sits below the meet
                    let meet = denormalize(k).meet(&denormalize(l));
                    for a in x.elements() {
                        for b in x.elements() {
                            if d1.related(a, b) {
                                assert!(meet.related(a, b));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lower_bound_without_normal_inputs_stays_a_lower_bound() {
        let s3 = s3();
        let z2 = sub(&s3, &["(12)"]); // not normal
        let lb = ternary_lower_bound(&s3, &z2, &z2, &z2, 6).unwrap();
        assert_eq!(lb.exactness, Exactness::LowerBound);
        assert!(lb.subobject.elements().iter().all(|&e| z2.contains(e)));
    }

    #[test]
    fn huq_is_normal_closure_of_higgins_on_normal_pairs() {
        for x in [s3(), builtin("dihedral(4)").unwrap(), m8()] {
            let normals = algebra::normal_subobjects(&x);
            for k in &normals {
                for l in &normals {
                    let higgins = higgins_binary(&x, k, l);
                    let closure = normal_closure(&x, higgins.elements());
                    let huq = huq_commutator(&x, k, l);
                    assert_eq!(huq.elements(), closure.elements());
                }
            }
        }
    }

    #[test]
    fn smith_examples() {
        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        let r = denormalize(&a3);
        let (delta, witness) = smith_commutator(&s3, &r, &r).unwrap();
        assert!(delta.is_diagonal());
        assert!(witness.is_some());

        // diagonal alpha commutes with anything
        let (delta, witness) = smith_commutator(&s3, &Congruence::diagonal(&s3), &r).unwrap();
        assert!(delta.is_diagonal());
        assert!(witness.is_some());

        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        let ra = denormalize(&a);
        let (delta, witness) = smith_commutator(&x, &ra, &ra).unwrap();
        assert!(!delta.is_diagonal());
        assert!(witness.is_none());
        let unit_class = normalize(&delta);
        assert!(unit_class.contains(x.element_by_name("-1").unwrap()));
    }

    #[test]
    fn smith_normalization_examples() {
        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        let got = smith_normalization(&x, &a, &a).unwrap();
        assert_eq!(got.element_names(), vec!["1", "-1"]);

        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        assert!(smith_normalization(&s3, &a3, &a3).unwrap().is_trivial());
        assert!(smith_normalization(&s3, &a3, &sub(&s3, &[])).unwrap().is_trivial());

        let not_normal = sub(&s3, &["(12)"]);
        assert!(matches!(
            smith_normalization(&s3, &a3, &not_normal),
            Err(CommutatorError::NotNormal { .. })
        ));
    }

    #[test]
    fn ternary_obstruction_examples() {
        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        let got = ternary_obstruction(&x, &a, &a).unwrap();
        assert!(got.contains(x.element_by_name("-1").unwrap()));

        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        assert!(ternary_obstruction(&s3, &a3, &a3).unwrap().is_trivial());
        assert!(ternary_obstruction(&s3, &a3, &sub(&s3, &[])).unwrap().is_trivial());

        // precondition: [A3, S3] = A3 is nonzero
        assert!(matches!(
            ternary_obstruction(&s3, &a3, &whole(&s3)),
            Err(CommutatorError::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn ternary_group_exact_examples() {
        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        let got = ternary_group_exact(&s3, &a3, &a3, &whole(&s3)).unwrap();
        assert!(got.is_trivial());

        // D4 is nilpotent of class 2: the third lower-central term vanishes
        let d4 = builtin("dihedral(4)").unwrap();
        let w = whole(&d4);
        assert!(ternary_group_exact(&d4, &w, &w, &w).unwrap().is_trivial());

        // D8 (order 16) is nilpotent of class 3: it does not
        let d8 = builtin("dihedral(8)").unwrap();
        let w8 = whole(&d8);
        assert!(!ternary_group_exact(&d8, &w8, &w8, &w8).unwrap().is_trivial());

        assert!(ternary_group_exact(&s3, &a3, &a3, &sub(&s3, &[])).unwrap().is_trivial());
        assert!(matches!(
            ternary_group_exact(&m8(), &a3, &a3, &a3),
            Err(CommutatorError::WrongKind { .. })
        ));
    }

    #[test]
    fn associator_examples() {
        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        let got = associator_subobject(&x, &a, &a, &whole(&x)).unwrap();
        assert!(got.contains(x.element_by_name("-1").unwrap()));

        let trivial = sub(&x, &[]);
        assert!(associator_subobject(&x, &trivial, &a, &whole(&x)).unwrap().is_trivial());

        assert!(matches!(
            associator_subobject(&s3(), &a, &a, &a),
            Err(CommutatorError::WrongKind { .. })
        ));
    }

    #[test]
    fn lower_bound_examples() {
        let s3 = s3();
        let a3 = sub(&s3, &["(123)"]);
        let w = whole(&s3);

        let at0 = ternary_lower_bound(&s3, &a3, &a3, &w, 0).unwrap();
        assert!(at0.subobject.is_trivial());

        let at6 = ternary_lower_bound(&s3, &a3, &a3, &w, 6).unwrap();
        let exact = ternary_group_exact(&s3, &a3, &a3, &w).unwrap();
        assert_eq!(at6.subobject.elements(), exact.elements());
        assert_eq!(at6.exactness, Exactness::Exact);

        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        let lb = ternary_lower_bound(&x, &a, &a, &whole(&x), 3).unwrap();
        assert!(lb.subobject.contains(x.element_by_name("-1").unwrap()));
        assert_eq!(lb.exactness, Exactness::LowerBound);
        assert!(!lb.witnesses.is_empty());
    }

    #[test]
    fn lower_bound_is_monotone_in_depth() {
        let d8 = builtin("dihedral(8)").unwrap();
        let w = whole(&d8);
        let mut previous: Vec<Elem> = Vec::new();
        for depth in [0, 3, 6] {
            let lb = ternary_lower_bound(&d8, &w, &w, &w, depth).unwrap();
            assert!(previous.iter().all(|e| lb.subobject.contains(*e)));
            previous = lb.subobject.elements().to_vec();
        }
    }

    #[test]
    fn sh_check_examples() {
        let x = m8();
        let report = sh_check(&x).unwrap();
        assert!(!report.violations.is_empty());
        let a = sub(&x, &["j", "-1"]);
        let minus_one = x.element_by_name("-1").unwrap();
        let found = report.violations.iter().any(|v| {
            v.k.elements() == a.elements()
                && v.l.elements() == a.elements()
                && v.witnesses.contains(&minus_one)
        });
        assert!(found, "expected an (A, A) violation with witness -1");

        assert!(sh_check(&s3()).unwrap().violations.is_empty());
        assert!(sh_check(&builtin("cyclic(12)").unwrap()).unwrap().violations.is_empty());
    }

    #[test]
    fn reports_verify_their_witnesses() {
        let x = m8();
        let a = sub(&x, &["j", "-1"]);
        let obstruction = ternary_obstruction(&x, &a, &a).unwrap();
        let report = CommutatorReport::for_subobject(
            CommutatorKind::TernaryObstruction,
            vec![("K".into(), a.element_names())],
            &obstruction,
            Exactness::Exact,
        );
        assert!(report.verify());
        assert!(!report.witnesses.is_empty());
    }
}
