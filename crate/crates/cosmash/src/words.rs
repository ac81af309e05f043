//! Multi-sorted term syntax, free-product word reduction for groups, sound
//! loop-term rewriting, and co-smash membership testing.
//!
//! A term over sorts `k, l, m, …` lies in the (binary or ternary) co-smash
//! product when killing any single sort leaves a word that is trivial in the
//! free product of the remaining sorts. For groups that vanishing condition
//! is decided exactly by free-word reduction; for loops we rewrite with the
//! ten loop axioms and accept only terms whose killed forms reach `1`.
//! That test is sound but incomplete, so loop results are always lower bounds.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Alg, Elem, Kind, UNIT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at byte {position}: expected {expected}")]
    ParseError { position: usize, expected: String },
    #[error("letter {letter} has no assigned value")]
    UnboundLetter { letter: String },
    #[error("operation `{op}` is not part of the {kind} signature")]
    UnsupportedOperation { op: &'static str, kind: Kind },
    #[error("syllable element {elem} out of range for factor {factor}")]
    BadSyllable { factor: usize, elem: Elem },
}

/// Syntax tree over the variety signature. Letters carry a sort index and a
/// 1-based id within the sort, printed `k1`, `l2`, ….
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Unit,
    Letter { sort: usize, id: usize },
    Mul(Box<Term>, Box<Term>),
    Ldiv(Box<Term>, Box<Term>),
    Rdiv(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

pub const DEFAULT_SORT_NAMES: [&str; 4] = ["k", "l", "m", "n"];

impl Term {
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::Ldiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::Rdiv(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    pub fn letter(sort: usize, id: usize) -> Term {
        Term::Letter { sort, id }
    }

    /// Group commutator word `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: Term, v: Term) -> Term {
        Term::mul(
            Term::mul(Term::mul(u.clone(), v.clone()), Term::inv(u)),
            Term::inv(v),
        )
    }

    /// Loop associator word `(uv·w) / (u·vw)`.
    pub fn associator(u: Term, v: Term, w: Term) -> Term {
        Term::rdiv(
            Term::mul(Term::mul(u.clone(), v.clone()), w.clone()),
            Term::mul(u, Term::mul(v, w)),
        )
    }

    /// Loop commutator word `(uv) / (vu)`.
    pub fn loop_commutator(u: Term, v: Term) -> Term {
        Term::rdiv(Term::mul(u.clone(), v.clone()), Term::mul(v, u))
    }

    /// Tree depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Unit | Term::Letter { .. } => 0,
            Term::Inv(a) => a.depth() + 1,
            Term::Mul(a, b) | Term::Ldiv(a, b) | Term::Rdiv(a, b) => {
                a.depth().max(b.depth()) + 1
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Unit | Term::Letter { .. } => 1,
            Term::Inv(a) => a.leaf_count(),
            Term::Mul(a, b) | Term::Ldiv(a, b) | Term::Rdiv(a, b) => {
                a.leaf_count() + b.leaf_count()
            }
        }
    }

    /// Renders with explicit parentheses around binary subterms.
    pub fn render(&self, sort_names: &[&str]) -> String {
        fn go(t: &Term, names: &[&str], top: bool, out: &mut String) {
            match t {
                Term::Unit => out.push('1'),
                Term::Letter { sort, id } => {
                    let name = names.get(*sort).copied().unwrap_or("?");
                    out.push_str(name);
                    out.push_str(&id.to_string());
                }
                Term::Inv(a) => {
                    out.push_str("inv(");
                    go(a, names, true, out);
                    out.push(')');
                }
                Term::Mul(a, b) | Term::Ldiv(a, b) | Term::Rdiv(a, b) => {
                    let op = match t {
                        Term::Mul(..) => '*',
                        Term::Ldiv(..) => '\\',
                        _ => '/',
                    };
                    if !top {
                        out.push('(');
                    }
                    go(a, names, false, out);
                    out.push(op);
                    go(b, names, false, out);
                    if !top {
                        out.push(')');
                    }
                }
            }
        }
        let mut out = String::new();
        go(self, sort_names, true, &mut out);
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&DEFAULT_SORT_NAMES))
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    sort_names: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn error<T>(&self, expected: &str) -> Result<T, WordError> {
        Err(WordError::ParseError { position: self.pos, expected: expected.to_string() })
    }

    fn expr(&mut self) -> Result<Term, WordError> {
        let mut acc = self.primary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Term::mul(acc, self.primary()?);
                }
                Some(b'\\') => {
                    self.pos += 1;
                    acc = Term::ldiv(acc, self.primary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = Term::rdiv(acc, self.primary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn primary(&mut self) -> Result<Term, WordError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::Unit)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    self.error("`)`")
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let rest = &self.text[self.pos..];
                if rest.starts_with(b"inv") && rest.get(3).map_or(false, |&c| c == b'(') {
                    self.pos += 4;
                    let inner = self.expr()?;
                    if self.peek() == Some(b')') {
                        self.pos += 1;
                        return Ok(Term::inv(inner));
                    }
                    return self.error("`)`");
                }
                self.letter()
            }
            _ => self.error("`1`, a letter, `inv(`, or `(`"),
        }
    }

    fn letter(&mut self) -> Result<Term, WordError> {
        let rest = std::str::from_utf8(&self.text[self.pos..]).expect("input was a str");
        // longest sort-name prefix wins
        let mut best: Option<(usize, usize)> = None;
        for (sort, name) in self.sort_names.iter().enumerate() {
            if rest.starts_with(name) {
                match best {
                    Some((_, len)) if len >= name.len() => {}
                    _ => best = Some((sort, name.len())),
                }
            }
        }
        let (sort, len) = match best {
            Some(found) => found,
            None => return self.error("a sort name"),
        };
        let digits: String = rest[len..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            self.pos += len;
            return self.error("a letter index");
        }
        self.pos += len + digits.len();
        Ok(Term::letter(sort, digits.parse().expect("digits parse")))
    }
}

/// Parses the grammar: infix `*` (mul), `\` (ldiv), `/` (rdiv), `inv(...)`,
/// `1`, and letters `k1`, `l2`, … (sort prefix + index). Binary operators
/// associate to the left with equal precedence.
pub fn parse_term(text: &str, sort_names: &[&str]) -> Result<Term, WordError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, sort_names };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return p.error("end of input");
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Evaluation and substitution
// ---------------------------------------------------------------------------

/// Structural evaluation in `x` under an assignment of letters to elements.
///
/// Group terms may not use `\` or `/`; loop terms may not use `inv`.
pub fn eval_term(
    t: &Term,
    x: &Alg,
    assignment: &HashMap<(usize, usize), Elem>,
) -> Result<Elem, WordError> {
    match t {
        Term::Unit => Ok(UNIT),
        Term::Letter { sort, id } => {
            assignment.get(&(*sort, *id)).copied().ok_or_else(|| WordError::UnboundLetter {
                letter: Term::letter(*sort, *id).to_string(),
            })
        }
        Term::Inv(a) => {
            if !x.is_group() {
                return Err(WordError::UnsupportedOperation { op: "inv", kind: x.kind() });
            }
            Ok(x.inv(eval_term(a, x, assignment)?))
        }
        Term::Mul(a, b) => Ok(x.mul(eval_term(a, x, assignment)?, eval_term(b, x, assignment)?)),
        Term::Ldiv(a, b) | Term::Rdiv(a, b) => {
            if x.is_group() {
                let op = if matches!(t, Term::Ldiv(..)) { "ldiv" } else { "rdiv" };
                return Err(WordError::UnsupportedOperation { op, kind: x.kind() });
            }
            let (va, vb) = (eval_term(a, x, assignment)?, eval_term(b, x, assignment)?);
            Ok(match t {
                Term::Ldiv(..) => x.ldiv(va, vb),
                _ => x.rdiv(va, vb),
            })
        }
    }
}

/// Replaces every letter of the given sort by `1`.
pub fn zero_substitute(t: &Term, sort: usize) -> Term {
    match t {
        Term::Unit => Term::Unit,
        Term::Letter { sort: s, .. } if *s == sort => Term::Unit,
        Term::Letter { .. } => t.clone(),
        Term::Inv(a) => Term::inv(zero_substitute(a, sort)),
        Term::Mul(a, b) => Term::mul(zero_substitute(a, sort), zero_substitute(b, sort)),
        Term::Ldiv(a, b) => Term::ldiv(zero_substitute(a, sort), zero_substitute(b, sort)),
        Term::Rdiv(a, b) => Term::rdiv(zero_substitute(a, sort), zero_substitute(b, sort)),
    }
}

// ---------------------------------------------------------------------------
// Loop rewriting
// ---------------------------------------------------------------------------

/// Exhaustively applies the ten loop-axiom rewrite rules, innermost first
/// with the rule list as tie-break:
///
/// `x·1 → x`, `1·x → x`, `x\(x·y) → y`, `x·(x\y) → y`, `(x·y)/y → x`,
/// `(x/y)·y → x`, `x\x → 1`, `x/x → 1`, `1\x → x`, `x/1 → x`.
///
/// A term normalizing to `1` is trivial in every loop, hence in the free
/// product. Sound, not complete.
pub fn loop_normalize(t: &Term) -> Term {
    match t {
        Term::Unit | Term::Letter { .. } => t.clone(),
        Term::Inv(a) => Term::inv(loop_normalize(a)),
        Term::Mul(a, b) => rebuild(LoopOp::Mul, loop_normalize(a), loop_normalize(b)),
        Term::Ldiv(a, b) => rebuild(LoopOp::Ldiv, loop_normalize(a), loop_normalize(b)),
        Term::Rdiv(a, b) => rebuild(LoopOp::Rdiv, loop_normalize(a), loop_normalize(b)),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum LoopOp {
    Mul,
    Ldiv,
    Rdiv,
}

/// Root-rule application over already-normalized children. Every rule's
/// right-hand side is a subterm of the pattern, so one pass suffices.
fn rebuild(op: LoopOp, a: Term, b: Term) -> Term {
    match op {
        LoopOp::Mul => {
            if b == Term::Unit {
                return a; // x·1 → x
            }
            if a == Term::Unit {
                return b; // 1·x → x
            }
            if let Term::Ldiv(b1, b2) = &b {
                if **b1 == a {
                    return (**b2).clone(); // x·(x\y) → y
                }
            }
            if let Term::Rdiv(a1, a2) = &a {
                if **a2 == b {
                    return (**a1).clone(); // (x/y)·y → x
                }
            }
            Term::mul(a, b)
        }
        LoopOp::Ldiv => {
            if let Term::Mul(b1, b2) = &b {
                if **b1 == a {
                    return (**b2).clone(); // x\(x·y) → y
                }
            }
            if a == b {
                return Term::Unit; // x\x → 1
            }
            if a == Term::Unit {
                return b; // 1\x → x
            }
            Term::ldiv(a, b)
        }
        LoopOp::Rdiv => {
            if let Term::Mul(a1, a2) = &a {
                if **a2 == b {
                    return (**a1).clone(); // (x·y)/y → x
                }
            }
            if a == b {
                return Term::Unit; // x/x → 1
            }
            if b == Term::Unit {
                return a; // x/1 → x
            }
            Term::rdiv(a, b)
        }
    }
}

// ---------------------------------------------------------------------------
// Free-product words
// ---------------------------------------------------------------------------

/// An alternating-syllable word in a free product of finite groups:
/// adjacent syllables have distinct factor indices, no syllable is a unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    syllables: Vec<(usize, Elem)>,
}

impl FreeWord {
    pub fn syllables(&self) -> &[(usize, Elem)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }
}

/// Canonical normal form in the free product of the given group factors:
/// merge adjacent same-factor syllables by factor multiplication, delete
/// unit syllables, repeat to fixpoint. Two words are equal in the free
/// product iff their normal forms coincide.
pub fn freeword_reduce(
    factors: &[Alg],
    syllables: &[(usize, Elem)],
) -> Result<FreeWord, WordError> {
    let mut stack: Vec<(usize, Elem)> = Vec::with_capacity(syllables.len());
    for &(factor, elem) in syllables {
        if factor >= factors.len() || elem >= factors[factor].order() {
            return Err(WordError::BadSyllable { factor, elem });
        }
        push_syllable(factors, &mut stack, factor, elem);
    }
    Ok(FreeWord { syllables: stack })
}

fn push_syllable(factors: &[Alg], stack: &mut Vec<(usize, Elem)>, factor: usize, elem: Elem) {
    if elem == UNIT {
        return;
    }
    match stack.last().copied() {
        Some((f, e)) if f == factor => {
            let merged = factors[factor].mul(e, elem);
            stack.pop();
            if merged != UNIT {
                stack.push((factor, merged));
            }
        }
        _ => stack.push((factor, elem)),
    }
}

#[cfg(test)]
fn concat_reduce(factors: &[Alg], left: &[(usize, Elem)], right: &[(usize, Elem)]) -> Vec<(usize, Elem)> {
    let mut stack = left.to_vec();
    for &(f, e) in right {
        push_syllable(factors, &mut stack, f, e);
    }
    stack
}

/// Reduced word over formal letters: positive code = letter, negative =
/// inverse letter. Cancellation of `c` against `-c` is free-group reduction.
fn push_letter(stack: &mut Vec<i32>, code: i32) {
    if stack.last().is_some_and(|&top| top == -code) {
        stack.pop();
    } else {
        stack.push(code);
    }
}

fn reduce_letter_word(codes: &[i32]) -> Vec<i32> {
    let mut stack = Vec::with_capacity(codes.len());
    for &c in codes {
        push_letter(&mut stack, c);
    }
    stack
}

/// Flattens a group term to formal letter codes (`inv` reverses and negates).
fn flatten_generic(t: &Term, out: &mut Vec<i32>, negate: bool) -> Result<(), WordError> {
    match t {
        Term::Unit => Ok(()),
        Term::Letter { sort, id } => {
            let code = letter_code(*sort, *id);
            out.push(if negate { -code } else { code });
            Ok(())
        }
        Term::Inv(a) => flatten_generic(a, out, !negate),
        Term::Mul(a, b) => {
            if negate {
                flatten_generic(b, out, true)?;
                flatten_generic(a, out, true)
            } else {
                flatten_generic(a, out, false)?;
                flatten_generic(b, out, false)
            }
        }
        Term::Ldiv(..) => Err(WordError::UnsupportedOperation { op: "ldiv", kind: Kind::Group }),
        Term::Rdiv(..) => Err(WordError::UnsupportedOperation { op: "rdiv", kind: Kind::Group }),
    }
}

fn letter_code(sort: usize, id: usize) -> i32 {
    (sort as i32) * 1024 + (id as i32)
}

fn code_sort(code: i32) -> usize {
    (code.abs() / 1024) as usize
}

/// Flattens a group term with concrete letters (id = element index of the
/// sort's factor group) to free-product syllables.
fn flatten_concrete(
    t: &Term,
    factors: &[Alg],
    out: &mut Vec<(usize, Elem)>,
    negate: bool,
) -> Result<(), WordError> {
    match t {
        Term::Unit => Ok(()),
        Term::Letter { sort, id } => {
            if *sort >= factors.len() || *id >= factors[*sort].order() {
                return Err(WordError::BadSyllable { factor: *sort, elem: *id });
            }
            let e = if negate { factors[*sort].inv(*id) } else { *id };
            out.push((*sort, e));
            Ok(())
        }
        Term::Inv(a) => flatten_concrete(a, factors, out, !negate),
        Term::Mul(a, b) => {
            if negate {
                flatten_concrete(b, factors, out, true)?;
                flatten_concrete(a, factors, out, true)
            } else {
                flatten_concrete(a, factors, out, false)?;
                flatten_concrete(b, factors, out, false)
            }
        }
        Term::Ldiv(..) => Err(WordError::UnsupportedOperation { op: "ldiv", kind: Kind::Group }),
        Term::Rdiv(..) => Err(WordError::UnsupportedOperation { op: "rdiv", kind: Kind::Group }),
    }
}

/// Interpretation of a term's letters for membership testing.
pub enum Factors<'a> {
    /// Letters are free generators: membership must hold in every group.
    Generic,
    /// Letter ids are element indices of the given factor groups.
    Concrete(&'a [Alg]),
}

/// Exact co-smash membership for group terms: for every sort, killing that
/// sort must leave a word that reduces to the empty word in the free product
/// of the remaining factors.
pub fn cosmash_membership_group(
    t: &Term,
    n_sorts: usize,
    factors: &Factors<'_>,
) -> Result<bool, WordError> {
    for sort in 0..n_sorts {
        let killed = zero_substitute(t, sort);
        let vanishes = match factors {
            Factors::Generic => {
                let mut codes = Vec::new();
                flatten_generic(&killed, &mut codes, false)?;
                reduce_letter_word(&codes).is_empty()
            }
            Factors::Concrete(groups) => {
                let mut syl = Vec::new();
                flatten_concrete(&killed, groups, &mut syl, false)?;
                freeword_reduce(groups, &syl)?.is_empty()
            }
        };
        if !vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sound loop membership: every single-sort kill must rewrite to `1`.
pub fn cosmash_membership_loop(t: &Term, n_sorts: usize) -> bool {
    (0..n_sorts).all(|sort| loop_normalize(&zero_substitute(t, sort)) == Term::Unit)
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Candidate compositions tolerated per depth level before the enumeration
/// saturates. All levels built before saturation are exhaustive.
pub const LEVEL_BUDGET: usize = 2_000_000;

/// Breadth-first enumeration of canonical term representatives by tree
/// depth, deduplicated by normal form (reduced free word for groups, the
/// rewriting normal form for loops).
pub struct Enumeration {
    /// Member representatives with the depth at which each first appeared.
    pub members: Vec<(usize, Term)>,
    /// True when a level was abandoned because its candidate count exceeded
    /// [`LEVEL_BUDGET`]; deeper witnesses may then be missing.
    pub saturated: bool,
}

/// All member terms of tree-depth at most `depth`, filtered by the exact
/// group decision or the sound loop rewriting test.
pub fn enumerate_cosmash_terms(
    kind: Kind,
    n_sorts: usize,
    letters_per_sort: usize,
    depth: usize,
) -> Vec<Term> {
    enumerate_with_details(kind, n_sorts, letters_per_sort, depth)
        .members
        .into_iter()
        .map(|(_, t)| t)
        .collect()
}

/// Cached member streams: the stream is a pure function of its parameters,
/// and consumers like corpus scans request the same stream repeatedly.
pub fn enumerate_cached(
    kind: Kind,
    n_sorts: usize,
    letters_per_sort: usize,
    depth: usize,
) -> std::sync::Arc<Enumeration> {
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(Kind, usize, usize, usize), Arc<Enumeration>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (kind, n_sorts, letters_per_sort, depth);
    if let Some(hit) = cache.lock().expect("enumeration cache").get(&key) {
        return hit.clone();
    }
    let fresh = Arc::new(enumerate_with_details(kind, n_sorts, letters_per_sort, depth));
    cache.lock().expect("enumeration cache").insert(key, fresh.clone());
    fresh
}

pub fn enumerate_with_details(
    kind: Kind,
    n_sorts: usize,
    letters_per_sort: usize,
    depth: usize,
) -> Enumeration {
    let mut enumeration = match kind {
        Kind::Group => enumerate_group(n_sorts, letters_per_sort, depth),
        Kind::Loop => enumerate_loop(n_sorts, letters_per_sort, depth),
    };
    // The witness family keeps the canonical nested commutator / associator
    // words in the stream even at depths the exhaustive walk cannot afford.
    for t in witness_family(kind, n_sorts, letters_per_sort, depth) {
        let member = match kind {
            Kind::Group => {
                cosmash_membership_group(&t, n_sorts, &Factors::Generic).unwrap_or(false)
            }
            Kind::Loop => cosmash_membership_loop(&t, n_sorts),
        };
        if member {
            enumeration.members.push((t.depth(), t));
        }
    }
    dedup_members(kind, &mut enumeration.members);
    enumeration.members.sort_by_key(|(d, _)| *d);
    enumeration
}

fn dedup_members(kind: Kind, members: &mut Vec<(usize, Term)>) {
    let mut seen_words: HashMap<Vec<i32>, usize> = HashMap::new();
    let mut seen_forms: HashMap<Term, usize> = HashMap::new();
    let mut keep: Vec<(usize, Term)> = Vec::new();
    for (d, t) in members.drain(..) {
        let duplicate = match kind {
            Kind::Group => {
                let mut w = Vec::new();
                flatten_generic(&t, &mut w, false).expect("group term");
                let w = reduce_letter_word(&w);
                match seen_words.get(&w) {
                    Some(&prev) if prev <= d => true,
                    _ => {
                        seen_words.insert(w, d);
                        false
                    }
                }
            }
            Kind::Loop => {
                let nf = loop_normalize(&t);
                match seen_forms.get(&nf) {
                    Some(&prev) if prev <= d => true,
                    _ => {
                        seen_forms.insert(nf, d);
                        false
                    }
                }
            }
        };
        if !duplicate {
            keep.push((d, t));
        }
    }
    *members = keep;
}

/// The directed family of canonical co-smash witnesses: iterated group
/// commutator words `[u,v]`, and for loops iterated associators
/// `⟦u,v,w⟧` together with loop commutator words `(uv)/(vu)`.
fn witness_family(
    kind: Kind,
    n_sorts: usize,
    letters_per_sort: usize,
    depth: usize,
) -> Vec<Term> {
    const FAMILY_CAP: usize = 3000;
    let mut pool: Vec<Term> = Vec::new();
    for sort in 0..n_sorts {
        for id in 1..=letters_per_sort {
            pool.push(Term::letter(sort, id));
        }
    }
    let mut seen: std::collections::HashSet<Term> = pool.iter().cloned().collect();
    let mut frontier = pool.clone();
    while !frontier.is_empty() && pool.len() < FAMILY_CAP {
        let mut next = Vec::new();
        let push = |t: Term, next: &mut Vec<Term>, seen: &mut std::collections::HashSet<Term>| {
            if t.depth() <= depth && seen.insert(t.clone()) {
                next.push(t);
            }
        };
        match kind {
            Kind::Group => {
                for u in &frontier {
                    for v in &pool {
                        push(Term::commutator(u.clone(), v.clone()), &mut next, &mut seen);
                        push(Term::commutator(v.clone(), u.clone()), &mut next, &mut seen);
                    }
                }
            }
            Kind::Loop => {
                for u in &frontier {
                    for v in &pool {
                        push(Term::loop_commutator(u.clone(), v.clone()), &mut next, &mut seen);
                        push(Term::loop_commutator(v.clone(), u.clone()), &mut next, &mut seen);
                        for w in &pool {
                            for (a, b, c) in [
                                (u.clone(), v.clone(), w.clone()),
                                (v.clone(), u.clone(), w.clone()),
                                (v.clone(), w.clone(), u.clone()),
                            ] {
                                push(Term::associator(a, b, c), &mut next, &mut seen);
                            }
                        }
                    }
                }
            }
        }
        pool.extend(next.iter().cloned());
        frontier = next;
    }
    pool
}

enum NodeRepr {
    Leaf(Term),
    Bin(LoopOp, usize, usize),
    Inv(usize),
}

fn rebuild_term(nodes: &[NodeRepr], id: usize) -> Term {
    match &nodes[id] {
        NodeRepr::Leaf(t) => t.clone(),
        NodeRepr::Inv(a) => Term::inv(rebuild_term(nodes, *a)),
        NodeRepr::Bin(op, a, b) => {
            let (ta, tb) = (rebuild_term(nodes, *a), rebuild_term(nodes, *b));
            match op {
                LoopOp::Mul => Term::mul(ta, tb),
                LoopOp::Ldiv => Term::ldiv(ta, tb),
                LoopOp::Rdiv => Term::rdiv(ta, tb),
            }
        }
    }
}

fn enumerate_group(n_sorts: usize, letters_per_sort: usize, depth: usize) -> Enumeration {
    // canonical form: reduced word over formal letters
    let mut nodes: Vec<NodeRepr> = Vec::new();
    let mut words: Vec<Vec<i32>> = Vec::new();
    let mut intern: HashMap<Vec<i32>, usize> = HashMap::new();
    let add = |word: Vec<i32>,
                   repr: NodeRepr,
                   nodes: &mut Vec<NodeRepr>,
                   words: &mut Vec<Vec<i32>>,
                   intern: &mut HashMap<Vec<i32>, usize>|
     -> (usize, bool) {
        if let Some(&id) = intern.get(&word) {
            return (id, false);
        }
        let id = nodes.len();
        intern.insert(word.clone(), id);
        words.push(word);
        nodes.push(repr);
        (id, true)
    };

    let mut level: Vec<usize> = Vec::new();
    let (unit_id, _) = add(Vec::new(), NodeRepr::Leaf(Term::Unit), &mut nodes, &mut words, &mut intern);
    level.push(unit_id);
    for sort in 0..n_sorts {
        for id in 1..=letters_per_sort {
            let (n, _) = add(
                vec![letter_code(sort, id)],
                NodeRepr::Leaf(Term::letter(sort, id)),
                &mut nodes,
                &mut words,
                &mut intern,
            );
            level.push(n);
        }
    }

    let mut members = Vec::new();
    let mut collect = |d: usize, ids: &[usize], nodes: &[NodeRepr], words: &[Vec<i32>]| {
        for &id in ids {
            let w = &words[id];
            let member = (0..n_sorts).all(|sort| {
                let killed: Vec<i32> =
                    w.iter().copied().filter(|&c| code_sort(c) != sort).collect();
                reduce_letter_word(&killed).is_empty()
            });
            if member {
                members.push((d, rebuild_term(nodes, id)));
            }
        }
    };

    let mut all: Vec<usize> = level.clone();
    collect(0, &level, &nodes, &words);
    let mut saturated = false;
    for d in 1..=depth {
        let candidates = 2 * level.len() * all.len() + level.len();
        if candidates > LEVEL_BUDGET {
            saturated = true;
            break;
        }
        let mut next: Vec<usize> = Vec::new();
        let push_new = |id: usize, is_new: bool, next: &mut Vec<usize>| {
            if is_new {
                next.push(id);
            }
        };
        for &a in &level {
            for &b in &all {
                for (x, y) in [(a, b), (b, a)] {
                    let word = {
                        let mut w = words[x].clone();
                        for &c in &words[y] {
                            push_letter(&mut w, c);
                        }
                        w
                    };
                    let (id, is_new) =
                        add(word, NodeRepr::Bin(LoopOp::Mul, x, y), &mut nodes, &mut words, &mut intern);
                    push_new(id, is_new, &mut next);
                }
            }
            let inv_word: Vec<i32> = words[a].iter().rev().map(|&c| -c).collect();
            let (id, is_new) = add(inv_word, NodeRepr::Inv(a), &mut nodes, &mut words, &mut intern);
            push_new(id, is_new, &mut next);
        }
        collect(d, &next, &nodes, &words);
        all.extend_from_slice(&next);
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Enumeration { members, saturated }
}

fn enumerate_loop(n_sorts: usize, letters_per_sort: usize, depth: usize) -> Enumeration {
    // Interned DAG of rewriting normal forms. Children of every node are
    // canonical, and each rule's right-hand side is an existing node, so
    // applying the root rules once at construction maintains normal forms.
    struct Dag {
        nodes: Vec<NodeRepr>,
        kills: Vec<Vec<usize>>, // normal form of each single-sort kill
        intern: HashMap<(LoopOp, usize, usize), usize>,
        n_sorts: usize,
    }

    impl Dag {
        fn construct(&mut self, op: LoopOp, a: usize, b: usize) -> (usize, bool) {
            if let Some(id) = self.try_rules(op, a, b) {
                return (id, false);
            }
            if let Some(&id) = self.intern.get(&(op, a, b)) {
                return (id, false);
            }
            let id = self.nodes.len();
            self.intern.insert((op, a, b), id);
            self.nodes.push(NodeRepr::Bin(op, a, b));
            // kills compose structurally; rules fire on killed children too
            let kills: Vec<usize> = (0..self.n_sorts)
                .map(|s| {
                    let (ka, kb) = (self.kills[a][s], self.kills[b][s]);
                    self.construct_for_kill(op, ka, kb)
                })
                .collect();
            self.kills.push(kills);
            (id, true)
        }

        fn construct_for_kill(&mut self, op: LoopOp, a: usize, b: usize) -> usize {
            self.construct(op, a, b).0
        }

        fn try_rules(&self, op: LoopOp, a: usize, b: usize) -> Option<usize> {
            const UNIT_ID: usize = 0;
            match op {
                LoopOp::Mul => {
                    if b == UNIT_ID {
                        return Some(a);
                    }
                    if a == UNIT_ID {
                        return Some(b);
                    }
                    if let NodeRepr::Bin(LoopOp::Ldiv, b1, b2) = self.nodes[b] {
                        if b1 == a {
                            return Some(b2);
                        }
                    }
                    if let NodeRepr::Bin(LoopOp::Rdiv, a1, a2) = self.nodes[a] {
                        if a2 == b {
                            return Some(a1);
                        }
                    }
                    None
                }
                LoopOp::Ldiv => {
                    if let NodeRepr::Bin(LoopOp::Mul, b1, b2) = self.nodes[b] {
                        if b1 == a {
                            return Some(b2);
                        }
                    }
                    if a == b {
                        return Some(UNIT_ID);
                    }
                    if a == UNIT_ID {
                        return Some(b);
                    }
                    None
                }
                LoopOp::Rdiv => {
                    if let NodeRepr::Bin(LoopOp::Mul, a1, a2) = self.nodes[a] {
                        if a2 == b {
                            return Some(a1);
                        }
                    }
                    if a == b {
                        return Some(UNIT_ID);
                    }
                    if b == UNIT_ID {
                        return Some(a);
                    }
                    None
                }
            }
        }
    }

    let mut dag = Dag {
        nodes: vec![NodeRepr::Leaf(Term::Unit)],
        kills: vec![vec![0; n_sorts]],
        intern: HashMap::new(),
        n_sorts,
    };
    let mut level: Vec<usize> = vec![0];
    for sort in 0..n_sorts {
        for id in 1..=letters_per_sort {
            let node = dag.nodes.len();
            dag.nodes.push(NodeRepr::Leaf(Term::letter(sort, id)));
            dag.kills.push((0..n_sorts).map(|s| if s == sort { 0 } else { node }).collect());
            level.push(node);
        }
    }

    let mut members = Vec::new();
    let mut collect = |d: usize, ids: &[usize], dag: &Dag| {
        for &id in ids {
            if dag.kills[id].iter().all(|&k| k == 0) && id != 0 || (id == 0 && d == 0) {
                members.push((d, rebuild_term(&dag.nodes, id)));
            }
        }
    };

    let mut all: Vec<usize> = level.clone();
    collect(0, &level, &dag);
    let mut saturated = false;
    let ops = [LoopOp::Mul, LoopOp::Ldiv, LoopOp::Rdiv];
    for d in 1..=depth {
        let candidates = ops.len() * 2 * level.len() * all.len();
        if candidates > LEVEL_BUDGET {
            saturated = true;
            break;
        }
        let mut next: Vec<usize> = Vec::new();
        for &a in &level {
            for bi in 0..all.len() {
                let b = all[bi];
                for op in ops {
                    for (x, y) in [(a, b), (b, a)] {
                        let (id, is_new) = dag.construct(op, x, y);
                        if is_new {
                            next.push(id);
                        }
                    }
                }
            }
        }
        collect(d, &next, &dag);
        all.extend_from_slice(&next);
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Enumeration { members, saturated }
}
