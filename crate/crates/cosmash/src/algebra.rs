//! Finite pointed algebras (groups and loops) given by operation tables,
//! together with the subobject, congruence, quotient and product machinery
//! that the commutator calculus is built on.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * the unit element is index `0` in every algebra;
//! * congruences are stored as canonical class vectors (class label = least
//!   member), so congruence equality is vector equality;
//! * loop division tables are derived from the multiplication table, never
//!   taken as input;
//! * validation is exhaustive and happens once, at construction; algebras
//!   produced internally (products, subalgebras, quotients) are valid by
//!   construction and skip the axiom scan.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Index of an element in an algebra's carrier.
pub type Elem = usize;

/// The unit element of every algebra.
pub const UNIT: Elem = 0;

/// Variety the algebra lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Signature (mul, inv, 1); multiplication is associative.
    Group,
    /// Signature (mul, ldiv, rdiv, 1); every row/column of mul is a permutation.
    Loop,
}

impl Kind {
    /// Names of the binary operations of this signature.
    pub fn binary_ops(self) -> &'static [&'static str] {
        match self {
            Kind::Group => &["mul"],
            Kind::Loop => &["mul", "ldiv", "rdiv"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Group => write!(f, "group"),
            Kind::Loop => write!(f, "loop"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("table shape invalid: {0}")]
    BadShape(String),
    #[error("axiom `{identity}` fails at {witness}")]
    AxiomViolation { identity: String, witness: String },
    #[error("Cayley {line} {index} repeats entry {duplicate}")]
    NonQuasigroup {
        line: &'static str,
        index: usize,
        duplicate: Elem,
    },
    #[error("map is not a homomorphism: `{op}` fails at {witness}")]
    NotHomomorphism { op: String, witness: String },
    #[error("operands have different signature kinds ({0} vs {1})")]
    KindMismatch(Kind, Kind),
    #[error("subobject is not normal")]
    NotNormal,
    #[error("subset is not closed: missing {0}")]
    NotClosed(String),
    #[error("no element named `{0}`")]
    UnknownElement(String),
}

/// A finite pointed group or loop, immutable after validation.
///
/// Division tables are stored for both kinds (for a group, `x\y = x⁻¹y` and
/// `x/y = xy⁻¹`), so the Mal'tsev term `x·(y\z)` and the right-division
/// defect used by the Huq fixpoint are available uniformly.
pub struct FiniteAlgebra {
    kind: Kind,
    order: usize,
    names: Vec<String>,
    mul: Vec<Elem>,
    ldiv: Vec<Elem>,
    rdiv: Vec<Elem>,
    inv: Option<Vec<Elem>>,
}

/// Shared handle to an algebra; operations return and accept these.
pub type Alg = Arc<FiniteAlgebra>;

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.names == other.names && self.mul == other.mul
    }
}
impl Eq for FiniteAlgebra {}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of order {} [{}]", self.kind, self.order, self.names.join(", "))
    }
}

fn same_parent(a: &Alg, b: &Alg) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteAlgebra {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn element_by_name(&self, name: &str) -> Result<Elem, AlgebraError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    /// Left division: the unique `z` with `a·z = b`.
    #[inline]
    pub fn ldiv(&self, a: Elem, b: Elem) -> Elem {
        self.ldiv[a * self.order + b]
    }

    /// Right division: the unique `z` with `z·b = a`.
    #[inline]
    pub fn rdiv(&self, a: Elem, b: Elem) -> Elem {
        self.rdiv[a * self.order + b]
    }

    /// Group inverse. Panics for loop-kind algebras.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv.as_ref().expect("inv is only defined for groups")[a]
    }

    pub fn is_group(&self) -> bool {
        self.kind == Kind::Group
    }

    pub fn binary_op(&self, op: &str, a: Elem, b: Elem) -> Elem {
        match op {
            "mul" => self.mul(a, b),
            "ldiv" => self.ldiv(a, b),
            "rdiv" => self.rdiv(a, b),
            other => panic!("unknown binary operation `{other}`"),
        }
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Abelian in the categorical sense: for groups, commutative; for loops,
    /// commutative and associative (the abelian objects in loops are exactly
    /// the abelian groups).
    pub fn is_abelian(&self) -> bool {
        match self.kind {
            Kind::Group => self.is_commutative(),
            Kind::Loop => self.is_commutative() && self.is_associative(),
        }
    }

    /// Re-runs the full exhaustive axiom scan. Constructors call this once;
    /// tests use it to confirm that derived algebras are valid.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        validate_tables(self.kind, self.order, &self.names, &self.mul, self.inv.as_deref())
            .map(|_| ())
    }
}

fn invert_rows(order: usize, mul: &[Elem]) -> Vec<Elem> {
    // ldiv[a][b] = z with mul[a][z] = b
    let mut t = vec![0; order * order];
    for a in 0..order {
        for z in 0..order {
            t[a * order + mul[a * order + z]] = z;
        }
    }
    t
}

fn invert_cols(order: usize, mul: &[Elem]) -> Vec<Elem> {
    // rdiv[a][b] = z with mul[z][b] = a
    let mut t = vec![0; order * order];
    for z in 0..order {
        for b in 0..order {
            t[mul[z * order + b] * order + b] = z;
        }
    }
    t
}

fn validate_tables(
    kind: Kind,
    order: usize,
    names: &[String],
    mul: &[Elem],
    inv: Option<&[Elem]>,
) -> Result<Option<Vec<Elem>>, AlgebraError> {
    if order == 0 {
        return Err(AlgebraError::BadShape("order must be positive".into()));
    }
    if names.len() != order {
        return Err(AlgebraError::BadShape(format!(
            "expected {order} element names, got {}",
            names.len()
        )));
    }
    if mul.len() != order * order {
        return Err(AlgebraError::BadShape(format!(
            "mul table must have {0}x{0} entries",
            order
        )));
    }
    if let Some(e) = mul.iter().find(|&&e| e >= order) {
        return Err(AlgebraError::BadShape(format!("mul entry {e} out of range")));
    }

    // Rows and columns must be permutations. Groups satisfy this too
    // (cancellation), and it is what makes the derived divisions total.
    for a in 0..order {
        let mut seen = vec![false; order];
        for b in 0..order {
            let v = mul[a * order + b];
            if seen[v] {
                return Err(AlgebraError::NonQuasigroup { line: "row", index: a, duplicate: v });
            }
            seen[v] = true;
        }
    }
    for b in 0..order {
        let mut seen = vec![false; order];
        for a in 0..order {
            let v = mul[a * order + b];
            if seen[v] {
                return Err(AlgebraError::NonQuasigroup { line: "column", index: b, duplicate: v });
            }
            seen[v] = true;
        }
    }

    // Unit laws at index 0.
    for x in 0..order {
        if mul[UNIT * order + x] != x {
            return Err(AlgebraError::AxiomViolation {
                identity: "1*x = x".into(),
                witness: format!("x = {}", names[x]),
            });
        }
        if mul[x * order + UNIT] != x {
            return Err(AlgebraError::AxiomViolation {
                identity: "x*1 = x".into(),
                witness: format!("x = {}", names[x]),
            });
        }
    }

    match kind {
        Kind::Group => {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul[a * order + b];
                    for c in 0..order {
                        if mul[ab * order + c] != mul[a * order + mul[b * order + c]] {
                            return Err(AlgebraError::AxiomViolation {
                                identity: "(x*y)*z = x*(y*z)".into(),
                                witness: format!(
                                    "x = {}, y = {}, z = {}",
                                    names[a], names[b], names[c]
                                ),
                            });
                        }
                    }
                }
            }
            let inv = match inv {
                Some(t) => {
                    if t.len() != order {
                        return Err(AlgebraError::BadShape(format!(
                            "inv table must have {order} entries"
                        )));
                    }
                    if let Some(e) = t.iter().find(|&&e| e >= order) {
                        return Err(AlgebraError::BadShape(format!(
                            "inv entry {e} out of range"
                        )));
                    }
                    t.to_vec()
                }
                // A finite associative quasigroup has two-sided inverses:
                // read them off the unit column.
                None => {
                    let rdiv = invert_cols(order, mul);
                    (0..order).map(|x| rdiv[UNIT * order + x]).collect()
                }
            };
            for x in 0..order {
                if mul[x * order + inv[x]] != UNIT || mul[inv[x] * order + x] != UNIT {
                    return Err(AlgebraError::AxiomViolation {
                        identity: "x*inv(x) = 1 = inv(x)*x".into(),
                        witness: format!("x = {}", names[x]),
                    });
                }
            }
            Ok(Some(inv))
        }
        Kind::Loop => {
            // The derived divisions satisfy the quasigroup identities by
            // construction; scan them anyway, as the contract promises.
            let ldiv = invert_rows(order, mul);
            let rdiv = invert_cols(order, mul);
            for x in 0..order {
                for y in 0..order {
                    let i1 = mul[x * order + ldiv[x * order + y]] == y;
                    let i2 = ldiv[x * order + mul[x * order + y]] == y;
                    let i3 = mul[rdiv[x * order + y] * order + y] == x;
                    let i4 = rdiv[mul[x * order + y] * order + y] == x;
                    if !(i1 && i2 && i3 && i4) {
                        return Err(AlgebraError::AxiomViolation {
                            identity: "quasigroup division laws".into(),
                            witness: format!("x = {}, y = {}", names[x], names[y]),
                        });
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Validates operation tables and constructs the algebra.
///
/// For groups, `inv` may be omitted; it is then derived from the unit column.
/// Loops never take division tables: `ldiv`/`rdiv` are derived from `mul`.
pub fn validate_algebra(
    kind: Kind,
    names: Vec<String>,
    mul: Vec<Elem>,
    inv: Option<Vec<Elem>>,
) -> Result<Alg, AlgebraError> {
    let order = names.len();
    let inv = validate_tables(kind, order, &names, &mul, inv.as_deref())?;
    let ldiv = invert_rows(order, &mul);
    let rdiv = invert_cols(order, &mul);
    Ok(Arc::new(FiniteAlgebra { kind, order, names, mul, ldiv, rdiv, inv }))
}

/// Constructs an algebra whose validity is guaranteed by construction
/// (products, subalgebras, quotients of valid algebras). Skips the axiom
/// scan; unit tests re-validate representative instances.
pub(crate) fn from_tables_unchecked(
    kind: Kind,
    names: Vec<String>,
    mul: Vec<Elem>,
) -> Alg {
    let order = names.len();
    debug_assert_eq!(mul.len(), order * order);
    let ldiv = invert_rows(order, &mul);
    let rdiv = invert_cols(order, &mul);
    let inv = match kind {
        Kind::Group => Some((0..order).map(|x| rdiv[UNIT * order + x]).collect()),
        Kind::Loop => None,
    };
    Arc::new(FiniteAlgebra { kind, order, names, mul, ldiv, rdiv, inv })
}

// ---------------------------------------------------------------------------
// Subobjects
// ---------------------------------------------------------------------------

/// A closed subset of an algebra containing the unit, with a lazily computed
/// normality certificate (the `normalize ∘ denormalize` roundtrip).
#[derive(Clone)]
pub struct Subobject {
    parent: Alg,
    elements: Vec<Elem>,
    normal: OnceLock<bool>,
}

impl PartialEq for Subobject {
    fn eq(&self, other: &Self) -> bool {
        same_parent(&self.parent, &other.parent) && self.elements == other.elements
    }
}
impl Eq for Subobject {}

impl fmt::Debug for Subobject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.elements.iter().map(|&e| self.parent.name(e)).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl Subobject {
    /// Wraps an explicit subset, verifying unit membership and closure.
    pub fn from_elements(parent: &Alg, elements: &[Elem]) -> Result<Subobject, AlgebraError> {
        let mut set: BTreeSet<Elem> = elements.iter().copied().collect();
        set.insert(UNIT);
        for &a in &set {
            assert!(a < parent.order(), "element index out of range");
            for &b in &set {
                for op in parent.kind().binary_ops() {
                    let v = parent.binary_op(op, a, b);
                    if !set.contains(&v) {
                        return Err(AlgebraError::NotClosed(format!(
                            "{}({}, {}) = {}",
                            op,
                            parent.name(a),
                            parent.name(b),
                            parent.name(v)
                        )));
                    }
                }
            }
        }
        Ok(Subobject {
            parent: parent.clone(),
            elements: set.into_iter().collect(),
            normal: OnceLock::new(),
        })
    }

    pub(crate) fn from_closed_unchecked(parent: &Alg, mut elements: Vec<Elem>) -> Subobject {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(elements.contains(&UNIT));
        Subobject { parent: parent.clone(), elements, normal: OnceLock::new() }
    }

    pub(crate) fn mark_normal(&self) {
        let _ = self.normal.set(true);
    }

    pub fn parent(&self) -> &Alg {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// True when the subobject is the zero subobject `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    /// Normality via the denormalization roundtrip, cached.
    pub fn is_normal(&self) -> bool {
        *self.normal.get_or_init(|| {
            let theta = denormalize(self);
            normalize(&theta).elements == self.elements
        })
    }

    /// Restriction of the multiplication to this subset is commutative and,
    /// for loop parents, associative.
    pub fn is_abelian(&self) -> bool {
        let x = &self.parent;
        let comm = self
            .elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| x.mul(a, b) == x.mul(b, a)));
        if !comm {
            return false;
        }
        match x.kind() {
            Kind::Group => true,
            Kind::Loop => self.elements.iter().all(|&a| {
                self.elements.iter().all(|&b| {
                    self.elements
                        .iter()
                        .all(|&c| x.mul(x.mul(a, b), c) == x.mul(a, x.mul(b, c)))
                })
            }),
        }
    }

    pub fn element_names(&self) -> Vec<String> {
        self.elements.iter().map(|&e| self.parent.name(e).to_string()).collect()
    }

    /// Join `K ∨ L`: the subobject generated by the union.
    pub fn join(&self, other: &Subobject) -> Subobject {
        assert!(same_parent(&self.parent, &other.parent));
        let mut seed = self.elements.clone();
        seed.extend_from_slice(&other.elements);
        subobject_generate(&self.parent, &seed)
    }

    /// Meet `K ∧ L`: plain intersection, always closed.
    pub fn meet(&self, other: &Subobject) -> Subobject {
        assert!(same_parent(&self.parent, &other.parent));
        let elements: Vec<Elem> = self
            .elements
            .iter()
            .copied()
            .filter(|e| other.contains(*e))
            .collect();
        Subobject::from_closed_unchecked(&self.parent, elements)
    }
}

/// Smallest closed subset of `x` containing `seed ∪ {unit}`.
pub fn subobject_generate(x: &Alg, seed: &[Elem]) -> Subobject {
    let n = x.order();
    let mut member = vec![false; n];
    member[UNIT] = true;
    let mut items: Vec<Elem> = vec![UNIT];
    for &s in seed {
        assert!(s < n, "seed element out of range");
        if !member[s] {
            member[s] = true;
            items.push(s);
        }
    }
    let ops = x.kind().binary_ops();
    let mut frontier = 0;
    while frontier < items.len() {
        let a = items[frontier];
        frontier += 1;
        // pair the new element against everything accumulated so far
        for i in 0..items.len() {
            let b = items[i];
            for op in ops {
                for v in [x.binary_op(op, a, b), x.binary_op(op, b, a)] {
                    if !member[v] {
                        member[v] = true;
                        items.push(v);
                    }
                }
            }
        }
    }
    Subobject::from_closed_unchecked(x, items)
}

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

/// An operation-compatible partition, stored canonically: `class_of[e]` is
/// the least member of `e`'s class.
#[derive(Clone, PartialEq, Eq)]
pub struct Congruence {
    parent: Alg,
    class_of: Vec<Elem>,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes = self.classes();
        let rendered: Vec<String> = classes
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&e| self.parent.name(e)).collect();
                format!("{{{}}}", names.join(", "))
            })
            .collect();
        write!(f, "{}", rendered.join(" | "))
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, a: usize) -> usize {
        let mut root = a;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = a;
        while cur != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Unites the classes; keeps the smaller index as representative.
    fn unite(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl Congruence {
    /// The discrete congruence `Δ_X`.
    pub fn diagonal(parent: &Alg) -> Congruence {
        Congruence { parent: parent.clone(), class_of: (0..parent.order()).collect() }
    }

    /// The full congruence `∇_X` (one class).
    pub fn full(parent: &Alg) -> Congruence {
        Congruence { parent: parent.clone(), class_of: vec![UNIT; parent.order()] }
    }

    pub(crate) fn from_class_vector(parent: &Alg, class_of: Vec<Elem>) -> Congruence {
        Congruence { parent: parent.clone(), class_of }
    }

    pub fn parent(&self) -> &Alg {
        &self.parent
    }

    pub fn class_vector(&self) -> &[Elem] {
        &self.class_of
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_diagonal(&self) -> bool {
        self.class_of.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// Classes listed by ascending representative; the unit class comes first.
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut by_rep: HashMap<Elem, Vec<Elem>> = HashMap::new();
        for (e, &r) in self.class_of.iter().enumerate() {
            by_rep.entry(r).or_default().push(e);
        }
        let mut reps: Vec<Elem> = by_rep.keys().copied().collect();
        reps.sort_unstable();
        reps.into_iter().map(|r| by_rep.remove(&r).unwrap()).collect()
    }

    pub fn class_count(&self) -> usize {
        let mut reps: Vec<Elem> = self.class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    }

    /// Congruence join: smallest congruence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        assert!(same_parent(&self.parent, &other.parent));
        let pairs: Vec<(Elem, Elem)> = other
            .class_of
            .iter()
            .enumerate()
            .map(|(e, &r)| (e, r))
            .collect();
        let mut seeded: Vec<(Elem, Elem)> = self
            .class_of
            .iter()
            .enumerate()
            .map(|(e, &r)| (e, r))
            .collect();
        seeded.extend(pairs);
        congruence_generate(&self.parent, &seeded)
    }

    /// Congruence meet: intersection of the relations, always a congruence.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        assert!(same_parent(&self.parent, &other.parent));
        let n = self.parent.order();
        // canonical labels for the intersection: least member per joint class
        let mut label: HashMap<(Elem, Elem), Elem> = HashMap::new();
        let mut class_of = vec![0; n];
        for e in 0..n {
            let key = (self.class_of[e], other.class_of[e]);
            let rep = *label.entry(key).or_insert(e);
            class_of[e] = rep;
        }
        Congruence { parent: self.parent.clone(), class_of }
    }

    /// Image congruence under a surjective homomorphism: the smallest
    /// congruence on the target relating `f(a) ~ f(b)` for `a ~ b`.
    pub fn pushforward(&self, f: &Homomorphism) -> Congruence {
        assert!(same_parent(&self.parent, f.source()));
        let pairs: Vec<(Elem, Elem)> = self
            .class_of
            .iter()
            .enumerate()
            .map(|(e, &r)| (f.apply(e), f.apply(r)))
            .collect();
        congruence_generate(f.target(), &pairs)
    }
}

/// Smallest congruence on `x` containing the given pairs
/// (union-find with operation propagation to fixpoint).
pub fn congruence_generate(x: &Alg, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = x.order();
    let ops = x.kind().binary_ops();
    let mut dsu = Dsu::new(n);
    let mut queue: VecDeque<(Elem, Elem)> = VecDeque::new();
    for &(a, b) in pairs {
        assert!(a < n && b < n, "pair index out of range");
        if dsu.unite(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for c in 0..n {
            for op in ops {
                let candidates = [
                    (x.binary_op(op, a, c), x.binary_op(op, b, c)),
                    (x.binary_op(op, c, a), x.binary_op(op, c, b)),
                ];
                for (u, v) in candidates {
                    if dsu.find(u) != dsu.find(v) {
                        dsu.unite(u, v);
                        queue.push_back((u, v));
                    }
                }
            }
        }
    }
    let class_of: Vec<Elem> = (0..n).map(|e| dsu.find(e)).collect();
    // DSU keeps least index as root, so the vector is already canonical.
    Congruence { parent: x.clone(), class_of }
}

/// Unit class of a congruence, marked normal.
pub fn normalize(theta: &Congruence) -> Subobject {
    let elements: Vec<Elem> = theta
        .class_of
        .iter()
        .enumerate()
        .filter(|(_, &r)| r == theta.class_of[UNIT])
        .map(|(e, _)| e)
        .collect();
    let s = Subobject::from_closed_unchecked(theta.parent(), elements);
    s.mark_normal();
    s
}

/// Congruence generated by `N × {unit}`: the kernel pair of the cokernel
/// when `N` is normal. `normalize(denormalize(N)) = N` is the normality test.
pub fn denormalize(n: &Subobject) -> Congruence {
    let pairs: Vec<(Elem, Elem)> = n.elements().iter().map(|&e| (e, UNIT)).collect();
    congruence_generate(n.parent(), &pairs)
}

/// Smallest normal subobject containing `seed`.
pub fn normal_closure(x: &Alg, seed: &[Elem]) -> Subobject {
    let pairs: Vec<(Elem, Elem)> = seed.iter().map(|&e| (e, UNIT)).collect();
    normalize(&congruence_generate(x, &pairs))
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

/// A unit- and operation-preserving map, validated exhaustively.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Alg,
    target: Alg,
    map: Vec<Elem>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{} -> {}", self.source.name(a), self.target.name(b)))
            .collect();
        write!(f, "[{}]", entries.join(", "))
    }
}

/// Validates `map` as a homomorphism `source -> target`.
///
/// Preserving `mul` and the unit forces preservation of the divisions (and,
/// for groups, of `inv`), but the scan checks every listed operation anyway.
pub fn hom_check(source: &Alg, target: &Alg, map: Vec<Elem>) -> Result<Homomorphism, AlgebraError> {
    if source.kind() != target.kind() {
        return Err(AlgebraError::KindMismatch(source.kind(), target.kind()));
    }
    if map.len() != source.order() {
        return Err(AlgebraError::BadShape(format!(
            "map must have {} entries, got {}",
            source.order(),
            map.len()
        )));
    }
    if let Some(e) = map.iter().find(|&&e| e >= target.order()) {
        return Err(AlgebraError::BadShape(format!("map entry {e} out of range")));
    }
    if map[UNIT] != UNIT {
        return Err(AlgebraError::NotHomomorphism {
            op: "unit".into(),
            witness: format!("1 -> {}", target.name(map[UNIT])),
        });
    }
    for op in source.kind().binary_ops() {
        for a in source.elements() {
            for b in source.elements() {
                if map[source.binary_op(op, a, b)] != target.binary_op(op, map[a], map[b]) {
                    return Err(AlgebraError::NotHomomorphism {
                        op: op.to_string(),
                        witness: format!("x = {}, y = {}", source.name(a), source.name(b)),
                    });
                }
            }
        }
    }
    if source.is_group() {
        for a in source.elements() {
            if map[source.inv(a)] != target.inv(map[a]) {
                return Err(AlgebraError::NotHomomorphism {
                    op: "inv".into(),
                    witness: format!("x = {}", source.name(a)),
                });
            }
        }
    }
    Ok(Homomorphism { source: source.clone(), target: target.clone(), map })
}

impl Homomorphism {
    pub fn identity(x: &Alg) -> Homomorphism {
        Homomorphism { source: x.clone(), target: x.clone(), map: (0..x.order()).collect() }
    }

    pub(crate) fn from_map_unchecked(source: &Alg, target: &Alg, map: Vec<Elem>) -> Homomorphism {
        debug_assert_eq!(map.len(), source.order());
        Homomorphism { source: source.clone(), target: target.clone(), map }
    }

    pub fn source(&self) -> &Alg {
        &self.source
    }

    pub fn target(&self) -> &Alg {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    pub fn compose(&self, then: &Homomorphism) -> Homomorphism {
        assert!(same_parent(&self.target, &then.source));
        Homomorphism {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&e| then.apply(e)).collect(),
        }
    }

    /// Direct image of a subobject of the source (closed automatically).
    pub fn image_of(&self, s: &Subobject) -> Subobject {
        assert!(same_parent(&self.source, s.parent()));
        let elements: Vec<Elem> = s.elements().iter().map(|&e| self.apply(e)).collect();
        Subobject::from_closed_unchecked(&self.target, elements)
    }

    /// Image of the whole source.
    pub fn image(&self) -> Subobject {
        let elements: Vec<Elem> = self.map.clone();
        Subobject::from_closed_unchecked(&self.target, elements)
    }

    /// Kernel `f⁻¹(1)`, marked normal.
    pub fn kernel(&self) -> Subobject {
        let elements: Vec<Elem> = self
            .map
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == UNIT)
            .map(|(e, _)| e)
            .collect();
        let s = Subobject::from_closed_unchecked(&self.source, elements);
        s.mark_normal();
        s
    }

    /// Kernel pair as a congruence on the source.
    pub fn kernel_pair(&self) -> Congruence {
        let n = self.source.order();
        let mut least_for: HashMap<Elem, Elem> = HashMap::new();
        let mut class_of = vec![0; n];
        for e in 0..n {
            let rep = *least_for.entry(self.map[e]).or_insert(e);
            class_of[e] = rep;
        }
        Congruence { parent: self.source.clone(), class_of }
    }
}

/// Direct image and kernel in one call.
pub fn hom_image_kernel(f: &Homomorphism, s: &Subobject) -> (Subobject, Subobject) {
    (f.image_of(s), f.kernel())
}

// ---------------------------------------------------------------------------
// Quotients, products, subalgebras
// ---------------------------------------------------------------------------

/// Quotient algebra on class representatives plus the projection.
pub fn quotient(x: &Alg, theta: &Congruence) -> (Alg, Homomorphism) {
    assert!(same_parent(x, theta.parent()));
    let reps: Vec<Elem> = {
        let mut r: Vec<Elem> = theta.class_of.clone();
        r.sort_unstable();
        r.dedup();
        r
    };
    let index_of_rep: HashMap<Elem, Elem> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let m = reps.len();
    let mut mul = vec![0; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * m + j] = index_of_rep[&theta.class_of[x.mul(a, b)]];
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| x.name(r).to_string()).collect();
    let q = from_tables_unchecked(x.kind(), names, mul);
    let map: Vec<Elem> = (0..x.order()).map(|e| index_of_rep[&theta.class_of[e]]).collect();
    let proj = Homomorphism::from_map_unchecked(x, &q, map);
    (q, proj)
}

/// Componentwise product on the `n·m` carrier with canonical index pairing
/// `(a, b) -> a·m + b`.
pub fn direct_product(x: &Alg, y: &Alg) -> Result<Alg, AlgebraError> {
    if x.kind() != y.kind() {
        return Err(AlgebraError::KindMismatch(x.kind(), y.kind()));
    }
    let (n, m) = (x.order(), y.order());
    let size = n * m;
    let mut mul = vec![0; size * size];
    for a in 0..n {
        for b in 0..m {
            let p = a * m + b;
            for c in 0..n {
                for d in 0..m {
                    let q = c * m + d;
                    mul[p * size + q] = x.mul(a, c) * m + y.mul(b, d);
                }
            }
        }
    }
    let names: Vec<String> = (0..size)
        .map(|p| format!("({},{})", x.name(p / m), y.name(p % m)))
        .collect();
    Ok(from_tables_unchecked(x.kind(), names, mul))
}

/// Materializes a subobject as an algebra of its own, with the embedding.
pub fn subalgebra(s: &Subobject) -> (Alg, Homomorphism) {
    let x = s.parent();
    let elems = s.elements();
    let index_of: HashMap<Elem, Elem> =
        elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let m = elems.len();
    let mut mul = vec![0; m * m];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            mul[i * m + j] = index_of[&x.mul(a, b)];
        }
    }
    let names: Vec<String> = elems.iter().map(|&e| x.name(e).to_string()).collect();
    let a = from_tables_unchecked(x.kind(), names, mul);
    let embed = Homomorphism::from_map_unchecked(&a, x, elems.to_vec());
    (a, embed)
}

// ---------------------------------------------------------------------------
// Lattice enumeration
// ---------------------------------------------------------------------------

/// Every subobject, by growing closures one generator at a time.
pub fn all_subobjects(x: &Alg) -> Vec<Subobject> {
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let trivial = subobject_generate(x, &[]);
    let mut queue: VecDeque<Vec<Elem>> = VecDeque::new();
    seen.insert(trivial.elements().to_vec());
    queue.push_back(trivial.elements().to_vec());
    while let Some(current) = queue.pop_front() {
        for e in x.elements() {
            if current.binary_search(&e).is_ok() {
                continue;
            }
            let mut seed = current.clone();
            seed.push(e);
            let bigger = subobject_generate(x, &seed);
            if seen.insert(bigger.elements().to_vec()) {
                queue.push_back(bigger.elements().to_vec());
            }
        }
    }
    seen.into_iter()
        .map(|elements| Subobject::from_closed_unchecked(x, elements))
        .collect()
}

/// Every normal subobject: closures of singletons, then joins to fixpoint.
pub fn normal_subobjects(x: &Alg) -> Vec<Subobject> {
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    seen.insert(vec![UNIT]);
    for e in x.elements() {
        seen.insert(normal_closure(x, &[e]).elements().to_vec());
    }
    loop {
        let current: Vec<Vec<Elem>> = seen.iter().cloned().collect();
        let before = seen.len();
        for a in &current {
            for b in &current {
                let mut seed = a.clone();
                seed.extend_from_slice(b);
                seen.insert(subobject_generate(x, &seed).elements().to_vec());
            }
        }
        if seen.len() == before {
            break;
        }
    }
    seen.into_iter()
        .map(|elements| {
            let s = Subobject::from_closed_unchecked(x, elements);
            s.mark_normal();
            s
        })
        .collect()
}

/// Every congruence: principal congruences joined to fixpoint.
pub fn all_congruences(x: &Alg) -> Vec<Congruence> {
    let n = x.order();
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    seen.insert(Congruence::diagonal(x).class_of);
    let mut principals: Vec<Congruence> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let c = congruence_generate(x, &[(a, b)]);
            if !seen.contains(&c.class_of) {
                seen.insert(c.class_of.clone());
                principals.push(c);
            }
        }
    }
    loop {
        let before = seen.len();
        let current: Vec<Vec<Elem>> = seen.iter().cloned().collect();
        for v in &current {
            let c = Congruence::from_class_vector(x, v.clone());
            for p in &principals {
                let j = c.join(p);
                seen.insert(j.class_of);
            }
        }
        if seen.len() == before {
            break;
        }
    }
    seen.into_iter()
        .map(|v| Congruence::from_class_vector(x, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn z(n: usize) -> Alg {
        builtin(&format!("cyclic({n})")).unwrap()
    }

    fn s3() -> Alg {
        builtin("symmetric(3)").unwrap()
    }

    fn m8() -> Alg {
        builtin("hyperbolic_quaternion_loop").unwrap()
    }

    #[test]
    fn z2_validates_as_group() {
        let names = vec!["0".to_string(), "1".to_string()];
        let a = validate_algebra(Kind::Group, names, vec![0, 1, 1, 0], None).unwrap();
        assert_eq!(a.order(), 2);
        assert_eq!(a.inv(1), 1);
    }

    #[test]
    fn repeated_row_entry_is_nonquasigroup() {
        let names = vec!["0".into(), "1".into(), "2".into()];
        // row 1 repeats entry 2
        let mul = vec![0, 1, 2, 1, 2, 2, 2, 0, 1];
        let err = validate_algebra(Kind::Loop, names, mul, None).unwrap_err();
        assert!(matches!(err, AlgebraError::NonQuasigroup { line: "row", index: 1, duplicate: 2 }));
    }

    #[test]
    fn nonassociative_table_fails_group_validation() {
        // M8's table is a perfectly fine quasigroup but not associative.
        let x = m8();
        let err = validate_algebra(
            Kind::Group,
            x.names().to_vec(),
            (0..x.order())
                .flat_map(|a| (0..x.order()).map(move |b| (a, b)))
                .map(|(a, b)| x.mul(a, b))
                .collect(),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::AxiomViolation { .. }));
    }

    #[test]
    fn m8_is_valid_loop_with_derived_divisions() {
        let x = m8();
        assert_eq!(x.kind(), Kind::Loop);
        for a in x.elements() {
            for b in x.elements() {
                assert_eq!(x.mul(a, x.ldiv(a, b)), b);
                assert_eq!(x.ldiv(a, x.mul(a, b)), b);
                assert_eq!(x.mul(x.rdiv(a, b), b), a);
                assert_eq!(x.rdiv(x.mul(a, b), b), a);
            }
        }
        assert!(!x.is_associative());
    }

    #[test]
    fn sign_map_is_a_homomorphism() {
        let s3 = s3();
        let z2 = z(2);
        // even permutations -> 0, transpositions -> 1
        let map: Vec<Elem> = s3
            .names()
            .iter()
            .map(|n| match n.as_str() {
                "e" | "(123)" | "(132)" => 0,
                _ => 1,
            })
            .collect();
        let f = hom_check(&s3, &z2, map).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.kernel().order(), 3);
    }

    #[test]
    fn identity_map_is_a_homomorphism() {
        let x = s3();
        let f = hom_check(&x, &x, (0..x.order()).collect()).unwrap();
        assert!(f.is_injective() && f.is_surjective());
    }

    #[test]
    fn constant_nonunit_map_is_rejected() {
        let z4 = z(4);
        let err = hom_check(&z4, &z4, vec![2, 2, 2, 2]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotHomomorphism { .. }));
    }

    #[test]
    fn subobject_generation_in_s3() {
        let s3 = s3();
        let r = s3.element_by_name("(123)").unwrap();
        let a3 = subobject_generate(&s3, &[r]);
        assert_eq!(a3.element_names(), vec!["e", "(123)", "(132)"]);
        assert!(subobject_generate(&s3, &[]).is_trivial());
    }

    #[test]
    fn subobject_generation_in_m8() {
        let x = m8();
        let j = x.element_by_name("j").unwrap();
        let minus_one = x.element_by_name("-1").unwrap();
        let a = subobject_generate(&x, &[j, minus_one]);
        assert_eq!(a.element_names(), vec!["1", "-1", "j", "-j"]);
        assert!(a.is_abelian());
        assert!(a.is_normal());
    }

    #[test]
    fn congruence_generation_examples() {
        let s3 = s3();
        let r = s3.element_by_name("(123)").unwrap();
        let c = congruence_generate(&s3, &[(UNIT, r)]);
        assert_eq!(c.class_count(), 2);
        assert!(congruence_generate(&s3, &[]).is_diagonal());

        let x = m8();
        let minus_one = x.element_by_name("-1").unwrap();
        let c = congruence_generate(&x, &[(UNIT, minus_one)]);
        assert_eq!(c.class_count(), 4);
        for cl in c.classes() {
            assert_eq!(cl.len(), 2);
        }
    }

    /// Independent oracle: the smallest congruence containing the pairs,
    /// found by scanning every congruence of the algebra.
    fn congruence_generate_oracle(x: &Alg, pairs: &[(Elem, Elem)]) -> Congruence {
        let mut best: Option<Congruence> = None;
        for c in all_congruences(x) {
            if pairs.iter().all(|&(a, b)| c.related(a, b)) {
                let better = match &best {
                    None => true,
                    Some(b) => c.class_count() > b.class_count(),
                };
                if better {
                    best = Some(c);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn congruence_generation_matches_lattice_oracle() {
        let s3 = s3();
        let r = s3.element_by_name("(123)").unwrap();
        let t = s3.element_by_name("(12)").unwrap();
        for seed in [vec![], vec![(UNIT, r)], vec![(UNIT, t)], vec![(r, t)]] {
            let fast = congruence_generate(&s3, &seed);
            let slow = congruence_generate_oracle(&s3, &seed);
            assert_eq!(fast, slow);
        }
        let x = m8();
        let minus_one = x.element_by_name("-1").unwrap();
        let i = x.element_by_name("i").unwrap();
        for seed in [vec![(UNIT, minus_one)], vec![(UNIT, i)]] {
            let fast = congruence_generate(&x, &seed);
            let slow = congruence_generate_oracle(&x, &seed);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn quotients_are_valid_and_sized_correctly() {
        let s3 = s3();
        let r = s3.element_by_name("(123)").unwrap();
        let a3 = subobject_generate(&s3, &[r]);
        let (q, proj) = quotient(&s3, &denormalize(&a3));
        assert_eq!(q.order(), 2);
        q.validate().unwrap();
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel().elements(), a3.elements());

        let x = m8();
        let minus_one = x.element_by_name("-1").unwrap();
        let (q, _) = quotient(&x, &congruence_generate(&x, &[(UNIT, minus_one)]));
        assert_eq!(q.order(), 4);
        q.validate().unwrap();

        let (q, _) = quotient(&s3, &Congruence::diagonal(&s3));
        assert_eq!(*q, *s3);
    }

    #[test]
    fn normalize_denormalize_examples() {
        let s3 = s3();
        let r = s3.element_by_name("(123)").unwrap();
        let a3 = subobject_generate(&s3, &[r]);
        assert_eq!(normalize(&denormalize(&a3)).elements(), a3.elements());
        assert!(normalize(&Congruence::full(&s3)).is_whole());
        assert!(normalize(&Congruence::diagonal(&s3)).is_trivial());
        assert!(denormalize(&subobject_generate(&s3, &[])).is_diagonal());

        // index-2 partition {A, X∖A} in the hyperbolic quaternion loop
        let x = m8();
        let j = x.element_by_name("j").unwrap();
        let minus_one = x.element_by_name("-1").unwrap();
        let a = subobject_generate(&x, &[j, minus_one]);
        let theta = denormalize(&a);
        assert_eq!(theta.class_count(), 2);
        assert_eq!(normalize(&theta).elements(), a.elements());
    }

    #[test]
    fn denormalization_of_a3_is_the_sign_kernel_congruence() {
        let s3 = s3();
        let z2 = z(2);
        let sign: Vec<Elem> = s3
            .names()
            .iter()
            .map(|n| match n.as_str() {
                "e" | "(123)" | "(132)" => 0,
                _ => 1,
            })
            .collect();
        let f = hom_check(&s3, &z2, sign).unwrap();
        let a3 = subobject_generate(&s3, &[s3.element_by_name("(123)").unwrap()]);
        assert_eq!(denormalize(&a3), f.kernel_pair());
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = s3();
        let t = s3.element_by_name("(12)").unwrap();
        assert!(normal_closure(&s3, &[t]).is_whole());
        assert!(normal_closure(&s3, &[UNIT]).is_trivial());

        // {1,i} is not normal in M8 (ij·j = -i falls outside i's closure),
        // so the closure of {i} grows to {1,-1,i,-i}.
        let x = m8();
        let i = x.element_by_name("i").unwrap();
        let c = normal_closure(&x, &[i]);
        assert_eq!(c.element_names(), vec!["1", "-1", "i", "-i"]);
        let just_i = Subobject::from_elements(&x, &[i]).unwrap();
        assert_eq!(just_i.element_names(), vec!["1", "i"]);
        assert!(!just_i.is_normal());
    }

    #[test]
    fn direct_product_examples() {
        let z2 = z(2);
        let p = direct_product(&z2, &z2).unwrap();
        assert_eq!(p.order(), 4);
        p.validate().unwrap();
        // Klein four: every element self-inverse
        for e in p.elements() {
            assert_eq!(p.mul(e, e), UNIT);
        }

        let trivial = builtin("cyclic(1)").unwrap();
        let x = s3();
        let p = direct_product(&x, &trivial).unwrap();
        assert_eq!(p.order(), x.order());
        for a in x.elements() {
            for b in x.elements() {
                assert_eq!(p.mul(a, b), x.mul(a, b));
            }
        }

        assert!(matches!(
            direct_product(&m8(), &z2).unwrap_err(),
            AlgebraError::KindMismatch(..)
        ));
    }

    #[test]
    fn z2_times_z3_is_cyclic_of_order_six() {
        let p = direct_product(&z(2), &z(3)).unwrap();
        assert!(crate::oracle::isomorphic(&p, &z(6)));
    }

    #[test]
    fn image_and_kernel_of_sign_map() {
        let s3 = s3();
        let z2 = z(2);
        let map: Vec<Elem> = s3
            .names()
            .iter()
            .map(|n| match n.as_str() {
                "e" | "(123)" | "(132)" => 0,
                _ => 1,
            })
            .collect();
        let f = hom_check(&s3, &z2, map).unwrap();
        let whole = subobject_generate(&s3, &(0..s3.order()).collect::<Vec<_>>());
        let (img, ker) = hom_image_kernel(&f, &whole);
        assert!(img.is_whole());
        assert_eq!(ker.order(), 3);
        assert!(ker.is_normal());

        let r = s3.element_by_name("(123)").unwrap();
        let a3 = subobject_generate(&s3, &[r]);
        let (img, _) = hom_image_kernel(&f, &a3);
        assert!(img.is_trivial());

        let id = Homomorphism::identity(&s3);
        let (img, ker) = hom_image_kernel(&id, &a3);
        assert_eq!(img.elements(), a3.elements());
        assert!(ker.is_trivial());
    }

    #[test]
    fn subalgebra_extraction_roundtrip() {
        let x = m8();
        let j = x.element_by_name("j").unwrap();
        let minus_one = x.element_by_name("-1").unwrap();
        let a = subobject_generate(&x, &[j, minus_one]);
        let (alg, embed) = subalgebra(&a);
        alg.validate().unwrap();
        assert_eq!(alg.order(), 4);
        for p in alg.elements() {
            for q in alg.elements() {
                assert_eq!(embed.apply(alg.mul(p, q)), x.mul(embed.apply(p), embed.apply(q)));
            }
        }
    }

    #[test]
    fn lattice_enumeration_counts() {
        let s3 = s3();
        assert_eq!(all_subobjects(&s3).len(), 6); // {e}, 3×Z2, A3, S3
        assert_eq!(normal_subobjects(&s3).len(), 3); // {e}, A3, S3
        assert_eq!(all_congruences(&s3).len(), 3);

        let z6 = z(6);
        assert_eq!(all_subobjects(&z6).len(), 4);
        assert_eq!(normal_subobjects(&z6).len(), 4);

        let x = m8();
        let normals = normal_subobjects(&x);
        // {1}, {1,-1}, the three {1,-1,t,-t}, and X
        assert_eq!(normals.len(), 6);
        for n in &normals {
            assert!(n.is_normal());
        }
    }

    #[test]
    fn closure_operator_properties_on_small_corpus() {
        for x in [z(4), z(6), s3(), m8(), direct_product(&z(2), &z(2)).unwrap()] {
            let subs = all_subobjects(&x);
            for s in &subs {
                let closed = normalize(&denormalize(s));
                // extensive
                assert!(s.elements().iter().all(|e| closed.contains(*e)));
                // idempotent
                let twice = normalize(&denormalize(&closed));
                assert_eq!(twice.elements(), closed.elements());
            }
            // monotone
            for s in &subs {
                for t in &subs {
                    if s.elements().iter().all(|e| t.contains(*e)) {
                        let cs = normalize(&denormalize(s));
                        let ct = normalize(&denormalize(t));
                        assert!(cs.elements().iter().all(|e| ct.contains(*e)));
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_is_an_order_isomorphism() {
        for x in [z(6), s3(), m8()] {
            for theta in all_congruences(&x) {
                let n = normalize(&theta);
                assert_eq!(denormalize(&n), theta);
            }
            for n in normal_subobjects(&x) {
                assert_eq!(normalize(&denormalize(&n)).elements(), n.elements());
            }
        }
    }

    #[test]
    fn quotient_orders_multiply() {
        for x in [z(6), s3(), m8()] {
            for n in normal_subobjects(&x) {
                let theta = denormalize(&n);
                let (q, proj) = quotient(&x, &theta);
                assert_eq!(q.order() * n.order(), x.order());
                assert_eq!(proj.kernel().elements(), n.elements());
                q.validate().unwrap();
            }
        }
    }

    #[test]
    fn shared_algebras_support_concurrent_readers() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FiniteAlgebra>();
        assert_send_sync::<Subobject>();
        assert_send_sync::<Congruence>();
        assert_send_sync::<Homomorphism>();

        let x = s3();
        let handles: Vec<_> = (0..4)
            .map(|seed| {
                let x = x.clone();
                std::thread::spawn(move || {
                    let sub = subobject_generate(&x, &[1 + seed % (x.order() - 1)]);
                    let theta = denormalize(&sub);
                    (sub.is_normal(), theta.class_count())
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn subobject_generate_idempotent_monotone() {
        let x = s3();
        let subs = all_subobjects(&x);
        for s in &subs {
            let again = subobject_generate(&x, s.elements());
            assert_eq!(again.elements(), s.elements());
        }
        let r = x.element_by_name("(123)").unwrap();
        let t = x.element_by_name("(12)").unwrap();
        let small = subobject_generate(&x, &[r]);
        let big = subobject_generate(&x, &[r, t]);
        assert!(small.elements().iter().all(|e| big.contains(*e)));
    }
}
