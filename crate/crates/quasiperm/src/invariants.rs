//! Polytope-level invariants derived from a flag-rank oracle.
//!
//! A `RankProvider` abstracts a generalized permutohedron `Q` inside the
//! standard permutohedron on {1..n}: it assigns to every flag the dimension
//! of the face of `Q` selected by any weight vector realizing that flag.
//! From it we form the weighted enumerator
//! `F_q(Q) = sum over flags of q^rank(flag) * M_type(flag)`,
//! and derive the f-polynomial, the Euler relation, and the expansion of the
//! antipode image as a signed sum of face f-polynomials.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::flags::{enumerate_flags, Flag};
use crate::qsym::{QPolynomial, QSymExpr};

/// Canonical identifier of the face of `Q` selected by a flag. Flags in the
/// same fiber of the face map must share a key; distinct faces must not.
pub type FaceKey = Vec<u64>;

/// Flag-rank oracle for a generalized permutohedron on ground set {1..n}.
pub trait RankProvider {
    /// Ground size `n`.
    fn degree(&self) -> usize;

    /// Dimension of the face selected by the flag, in `0..=n-1`.
    fn rank(&self, flag: &Flag) -> usize;
}

/// Extension mapping flags to faces and faces to their f-polynomials.
pub trait FaceProvider: RankProvider {
    /// Canonical key of the face selected by the flag.
    fn face_key(&self, flag: &Flag) -> FaceKey;

    /// f-polynomial of the face selected by the flag.
    fn face_fpoly(&self, flag: &Flag) -> QPolynomial;
}

/// The weighted enumerator `F_q(Q)` as a flag sum.
pub fn fq_from_provider<P: RankProvider + ?Sized>(p: &P) -> Result<QSymExpr> {
    let n = p.degree();
    if n == 0 {
        return Ok(QSymExpr::unit());
    }
    let one = BigInt::one();
    let mut out = QSymExpr::zero();
    for flag in enumerate_flags(n)? {
        out.add_assign_q_power(flag.flag_type(), p.rank(&flag), &one);
    }
    Ok(out)
}

/// Recover the f-polynomial `f(Q, q) = sum over faces q^dim` from a
/// homogeneous enumerator: `f = (-1)^n ps(F_{-q})(-1)`.
pub fn fpolynomial(f: &QSymExpr) -> Result<QPolynomial> {
    if f.is_zero() {
        return Ok(QPolynomial::zero());
    }
    let n = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
    let spec = f.substitute_neg_q().principal_specialization(-1);
    Ok(if n % 2 == 1 { spec.neg() } else { spec })
}

/// The Euler relation: `f(Q, -1) = 1` for any nonempty polytope.
pub fn euler_check(f: &QSymExpr) -> Result<bool> {
    Ok(fpolynomial(f)?.eval_int(-1) == BigInt::one())
}

/// Expand the antipode image directly over faces:
/// `S(F_q(Q)) = (-1)^n sum over flags G of f(face(G^op), -q) * M_type(G)`.
///
/// Must agree with `QSymExpr::antipode` applied to `fq_from_provider`.
pub fn antipode_face_expansion<P: FaceProvider + ?Sized>(p: &P) -> Result<QSymExpr> {
    let n = p.degree();
    if n == 0 {
        return Ok(QSymExpr::unit());
    }
    let mut out = QSymExpr::zero();
    let negate = n % 2 == 1;
    for flag in enumerate_flags(n)? {
        let fpoly = p.face_fpoly(&flag.opposite()).substitute_neg_q();
        let signed = if negate { fpoly.neg() } else { fpoly };
        out.add_term(flag.flag_type(), &signed);
    }
    Ok(out)
}

/// Check `ps(S(F_q(Q)))(-1) = q^dim`.
pub fn antipode_corollary_check(f: &QSymExpr, dim: usize) -> bool {
    f.antipode().principal_specialization(-1) == QPolynomial::q_power(dim)
}

/// Per-face summary gathered by [`euler_fiber_report`].
pub struct EulerFiberReport {
    /// Number of distinct face keys seen.
    pub faces: usize,
    /// Whether every fiber had constant rank, rank matching the face
    /// f-polynomial degree, and alternating sum `(-1)^(n - rank - 1)`.
    pub ok: bool,
}

/// Group flags by face key and verify, per fiber: the rank is constant, it
/// equals the degree of the face f-polynomial, and
/// `sum (-1)^length = (-1)^(n - rank - 1)`.
pub fn euler_fiber_report<P: FaceProvider + ?Sized>(p: &P) -> Result<EulerFiberReport> {
    use std::collections::HashMap;
    let n = p.degree();
    let mut fibers: HashMap<FaceKey, (usize, i64, QPolynomial)> = HashMap::new();
    let mut ok = true;
    for flag in enumerate_flags(n)? {
        let key = p.face_key(&flag);
        let rank = p.rank(&flag);
        let sign = if flag.length() % 2 == 0 { 1 } else { -1 };
        match fibers.get_mut(&key) {
            Some((r, acc, _)) => {
                if *r != rank {
                    ok = false;
                }
                *acc += sign;
            }
            None => {
                fibers.insert(key, (rank, sign, p.face_fpoly(&flag)));
            }
        }
    }
    for (rank, acc, fpoly) in fibers.values() {
        let expected = if (n - rank - 1).is_multiple_of(2) { 1 } else { -1 };
        if *acc != expected {
            ok = false;
        }
        if fpoly.degree() != Some(*rank) {
            ok = false;
        }
    }
    Ok(EulerFiberReport {
        faces: fibers.len(),
        ok,
    })
}
