//! Quasisymmetric functions in the monomial basis, with coefficients that are
//! integer polynomials in a formal variable `q`.
//!
//! An expression is a finite sum `sum_alpha p_alpha(q) * M_alpha` over
//! compositions `alpha`. The product is the quasi-shuffle (overlapping
//! shuffle) of monomials, the coproduct is deconcatenation, and the antipode
//! has the closed form
//! `S(M_alpha) = (-1)^k(alpha) * sum of M_beta over coarsenings beta of the
//! reversed composition`. A recursive antipode derived directly from the
//! coproduct is kept alongside as an independent cross-check.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A composition: a finite sequence of positive integer parts.
///
/// The derived ordering is the canonical one used for serialization:
/// first by weight, then by length, then lexicographically by parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Build a composition, rejecting zero parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Composition { parts })
    }

    /// The empty composition (indexing the unit `M_()`).
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// Single-part composition `(n)`.
    pub fn single(n: u32) -> Self {
        debug_assert!(n > 0);
        Composition { parts: vec![n] }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parts in reverse order.
    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// Concatenation `alpha . beta`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    /// Composition with one extra part appended.
    pub fn appended(&self, r: u32) -> Self {
        debug_assert!(r > 0);
        let mut parts = self.parts.clone();
        parts.push(r);
        Composition { parts }
    }

    /// All coarsenings: merge any choice of adjacent parts. A composition
    /// with `k` parts has `2^(k-1)` coarsenings (itself included).
    pub fn coarsenings(&self) -> Vec<Composition> {
        let k = self.parts.len();
        if k == 0 {
            return vec![Composition::empty()];
        }
        let boundaries = k - 1;
        let mut out = Vec::with_capacity(1 << boundaries);
        for cut in 0..(1u32 << boundaries) {
            // Bit i set means we keep the boundary after part i.
            let mut parts = Vec::new();
            let mut acc = self.parts[0];
            for i in 0..boundaries {
                if cut >> i & 1 == 1 {
                    parts.push(acc);
                    acc = self.parts[i + 1];
                } else {
                    acc += self.parts[i + 1];
                }
            }
            parts.push(acc);
            out.push(Composition { parts });
        }
        out
    }

    /// Deconcatenation coproduct: all splittings `alpha = beta . gamma`,
    /// in order of the prefix length (`k + 1` pairs).
    pub fn coproduct(&self) -> Vec<(Composition, Composition)> {
        (0..=self.parts.len())
            .map(|i| {
                (
                    Composition {
                        parts: self.parts[..i].to_vec(),
                    },
                    Composition {
                        parts: self.parts[i..].to_vec(),
                    },
                )
            })
            .collect()
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.len().cmp(&other.parts.len()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All `2^(n-1)` compositions of `n`, in canonical order. `compositions(0)`
/// is the singleton list holding the empty composition.
pub fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for cut in 0..(1u32 << (n - 1)) {
        let mut parts = Vec::new();
        let mut acc = 1u32;
        for i in 0..(n - 1) {
            if cut >> i & 1 == 1 {
                parts.push(acc);
                acc = 1;
            } else {
                acc += 1;
            }
        }
        parts.push(acc);
        out.push(Composition { parts });
    }
    out.sort();
    out
}

/// Binomial coefficient `C(m, k)` for any integer `m`, via the falling
/// factorial: `m (m-1) ... (m-k+1) / k!`. In particular
/// `C(-1, k) = (-1)^k`.
pub fn binomial_int(m: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(m) - BigInt::from(i as i64);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(i as i64);
    }
    num / den
}

/// Multinomial coefficient `(sum parts)! / (prod parts!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut result = BigInt::one();
    let mut total: u64 = 0;
    for &p in parts {
        for i in 1..=(p as u64) {
            total += 1;
            result = result * BigInt::from(total) / BigInt::from(i);
        }
    }
    result
}

/// An integer polynomial in `q`, stored as ascending coefficients with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        QPolynomial::from_coeffs(vec![c.into()])
    }

    /// The monomial `q^k`.
    pub fn q_power(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPolynomial { coeffs }
    }

    /// Normalize a coefficient vector (ascending order) by trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        QPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn add_assign_q_power(&mut self, k: usize, c: &BigInt) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Evaluate at an integer point by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Substitute `q -> -q` (negate odd coefficients).
    pub fn substitute_neg_q(&self) -> Self {
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// JSON form: ascending decimal-string coefficients.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("polynomial must be an array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for entry in arr {
            let c = match entry {
                Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| Error::Json(format!("bad coefficient {s:?}: {e}")))?,
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Json(format!("bad coefficient {n}")))?,
                other => return Err(Error::Json(format!("bad coefficient {other}"))),
            };
            coeffs.push(c);
        }
        Ok(QPolynomial::from_coeffs(coeffs))
    }

    /// JSON form as a plain integer array (used for f-polynomials).
    /// Fails if a coefficient does not fit in an `i64`.
    pub fn to_json_int_array(&self) -> Result<Value> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let small: i64 = c.try_into().map_err(|_| {
                Error::Json(format!("coefficient {c} does not fit an integer field"))
            })?;
            out.push(Value::Number(small.into()));
        }
        Ok(Value::Array(out))
    }
}

impl fmt::Display for QPolynomial {
    /// Explicit dense rendering, e.g. `6q^0+0q^1+1q^2`; the zero polynomial
    /// prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if c.is_negative() {
                write!(f, "({})q^{}", c, i)?;
            } else {
                write!(f, "{}q^{}", c, i)?;
            }
        }
        Ok(())
    }
}

/// The quasi-shuffles of two part sequences, with repetition (multiplicity
/// is carried by repeats in the output list).
fn quasi_shuffle_words(a: &[u32], b: &[u32]) -> Vec<Composition> {
    fn rec(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if a.is_empty() {
            let mut parts = prefix.clone();
            parts.extend_from_slice(b);
            out.push(Composition::from_parts_unchecked(parts));
            return;
        }
        if b.is_empty() {
            let mut parts = prefix.clone();
            parts.extend_from_slice(a);
            out.push(Composition::from_parts_unchecked(parts));
            return;
        }
        prefix.push(a[0]);
        rec(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0]);
        rec(a, &b[1..], prefix, out);
        prefix.pop();
        prefix.push(a[0] + b[0]);
        rec(&a[1..], &b[1..], prefix, out);
        prefix.pop();
    }
    let mut out = Vec::new();
    rec(a, b, &mut Vec::new(), &mut out);
    out
}

/// A quasisymmetric expression: a map from compositions to `q`-polynomial
/// coefficients, kept in canonical key order with no zero values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QSymExpr {
    terms: BTreeMap<Composition, QPolynomial>,
}

impl QSymExpr {
    pub fn zero() -> Self {
        QSymExpr {
            terms: BTreeMap::new(),
        }
    }

    /// The unit `M_()`.
    pub fn unit() -> Self {
        QSymExpr::term(Composition::empty(), QPolynomial::one())
    }

    /// The basis element `M_alpha`.
    pub fn monomial(alpha: Composition) -> Self {
        QSymExpr::term(alpha, QPolynomial::one())
    }

    /// A single term `p(q) * M_alpha`.
    pub fn term(alpha: Composition, p: QPolynomial) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(alpha, p);
        }
        QSymExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &QPolynomial)> {
        self.terms.iter()
    }

    /// Coefficient of `M_alpha` (zero if absent).
    pub fn coefficient(&self, alpha: &Composition) -> QPolynomial {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// The common weight of all keys, if the expression is homogeneous and
    /// nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight();
        if it.all(|k| k.weight() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn add_term(&mut self, alpha: Composition, p: &QPolynomial) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Occupied(mut e) => {
                let sum = e.get().add(p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(p.clone());
            }
        }
    }

    pub(crate) fn add_assign_q_power(&mut self, alpha: Composition, k: usize, c: &BigInt) {
        let entry = self.terms.entry(alpha.clone()).or_default();
        entry.add_assign_q_power(k, c);
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (alpha, p) in &other.terms {
            out.add_term(alpha.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (alpha, p) in &other.terms {
            out.add_term(alpha.clone(), &p.neg());
        }
        out
    }

    pub fn scale(&self, c: &QPolynomial) -> Self {
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            out.add_term(alpha.clone(), &p.mul(c));
        }
        out
    }

    /// Quasi-shuffle product `M_alpha * M_beta = sum over overlapping
    /// shuffles`, extended bilinearly.
    pub fn quasi_shuffle(&self, other: &Self) -> Self {
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            for (beta, r) in &other.terms {
                let coeff = p.mul(r);
                for gamma in quasi_shuffle_words(alpha.parts(), beta.parts()) {
                    out.add_term(gamma, &coeff);
                }
            }
        }
        out
    }

    /// Concatenation product `M_alpha . M_beta = M_(alpha.beta)`, extended
    /// bilinearly. Associative but not commutative.
    pub fn concat_product(&self, other: &Self) -> Self {
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            for (beta, r) in &other.terms {
                out.add_term(alpha.concat(beta), &p.mul(r));
            }
        }
        out
    }

    /// The shift `(F)_r`: append a part `r` to every key (`M_() -> M_(r)`).
    pub fn shift(&self, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("shift requires r >= 1".into()));
        }
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            out.add_term(alpha.appended(r), p);
        }
        Ok(out)
    }

    /// Reverse every key, keeping coefficients.
    pub fn reverse(&self) -> Self {
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            out.add_term(alpha.reversed(), p);
        }
        out
    }

    /// Antipode in closed form:
    /// `S(M_alpha) = (-1)^k(alpha) sum_beta M_beta` over coarsenings `beta`
    /// of the reversed composition.
    pub fn antipode(&self) -> Self {
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            let signed = if alpha.len() % 2 == 1 { p.neg() } else { p.clone() };
            for beta in alpha.reversed().coarsenings() {
                out.add_term(beta, &signed);
            }
        }
        out
    }

    /// Antipode computed recursively from the deconcatenation coproduct:
    /// `S(M_()) = M_()` and
    /// `S(M_alpha) = -sum S(M_beta) * M_gamma` over proper splittings
    /// `alpha = beta.gamma` with `beta != alpha`, using the quasi-shuffle
    /// product. Kept as an independent cross-check of `antipode`.
    pub fn antipode_recursive(&self) -> Self {
        let mut memo: HashMap<Composition, QSymExpr> = HashMap::new();
        fn s_of(alpha: &Composition, memo: &mut HashMap<Composition, QSymExpr>) -> QSymExpr {
            if alpha.is_empty() {
                return QSymExpr::unit();
            }
            if let Some(hit) = memo.get(alpha) {
                return hit.clone();
            }
            let mut acc = QSymExpr::zero();
            for (beta, gamma) in alpha.coproduct() {
                if &beta == alpha {
                    continue;
                }
                let s_beta = s_of(&beta, memo);
                acc = acc.add(&s_beta.quasi_shuffle(&QSymExpr::monomial(gamma)));
            }
            let result = QSymExpr::zero().sub(&acc);
            memo.insert(alpha.clone(), result.clone());
            result
        }
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            out = out.add(&s_of(alpha, &mut memo).scale(p));
        }
        out
    }

    /// Principal specialization: substitute `x_1 = ... = x_m = 1` and the
    /// remaining variables `0`, so `ps(M_alpha)(m) = C(m, k(alpha))` with the
    /// falling-factorial binomial (valid for negative `m` too).
    pub fn principal_specialization(&self, m: i64) -> QPolynomial {
        let mut acc = QPolynomial::zero();
        for (alpha, p) in &self.terms {
            acc = acc.add(&p.scale(&binomial_int(m, alpha.len())));
        }
        acc
    }

    /// Substitute an integer for `q`, returning the map of nonzero
    /// composition coefficients.
    pub fn eval_q(&self, q0: i64) -> BTreeMap<Composition, BigInt> {
        let mut out = BTreeMap::new();
        for (alpha, p) in &self.terms {
            let v = p.eval_int(q0);
            if !v.is_zero() {
                out.insert(alpha.clone(), v);
            }
        }
        out
    }

    /// Substitute `q -> -q` in every coefficient.
    pub fn substitute_neg_q(&self) -> Self {
        let mut out = QSymExpr::zero();
        for (alpha, p) in &self.terms {
            out.add_term(alpha.clone(), &p.substitute_neg_q());
        }
        out
    }

    /// `(M_1)^k` under the quasi-shuffle product.
    pub fn m1_pow(k: usize) -> Self {
        let m1 = QSymExpr::monomial(Composition::single(1));
        let mut acc = QSymExpr::unit();
        for _ in 0..k {
            acc = acc.quasi_shuffle(&m1);
        }
        acc
    }

    /// JSON form:
    /// `{"degree": n, "terms": [{"composition": [...], "coeffs": ["..."]}]}`
    /// with terms in canonical key order.
    pub fn to_json(&self) -> Result<Value> {
        let degree = match self.homogeneous_degree() {
            Some(d) => d,
            None if self.is_zero() => 0,
            None => return Err(Error::NonHomogeneous),
        };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(alpha, p)| {
                json!({
                    "composition": alpha.parts(),
                    "coeffs": p.to_json(),
                })
            })
            .collect();
        Ok(json!({ "degree": degree, "terms": terms }))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("expression must be an object".into()))?;
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing terms array".into()))?;
        let mut out = QSymExpr::zero();
        for t in terms {
            let comp = t
                .get("composition")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("term missing composition".into()))?;
            let mut parts = Vec::with_capacity(comp.len());
            for p in comp {
                let p = p
                    .as_u64()
                    .filter(|&p| p > 0 && p <= u32::MAX as u64)
                    .ok_or_else(|| Error::Json(format!("bad composition part {p}")))?;
                parts.push(p as u32);
            }
            let coeffs = t
                .get("coeffs")
                .ok_or_else(|| Error::Json("term missing coeffs".into()))?;
            out.add_term(
                Composition::from_parts_unchecked(parts),
                &QPolynomial::from_json(coeffs)?,
            );
        }
        Ok(out)
    }
}

impl fmt::Display for QSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}] M{}", p, alpha)?;
        }
        Ok(())
    }
}
