//! Exact weighted enumerators for generalized permutohedra.
//!
//! For a polytope `Q` in R^n whose normal fan coarsens the braid fan —
//! nestohedra of building sets, graph associahedra, and matroid base
//! polytopes — every strictly positive weight vector selects a face, and
//! only the flag of level sets of the weights matters. Summing
//! `q^(dim of face) M_(type of flag)` over all flags of ordered set
//! partitions of {1..n} yields the weighted quasisymmetric enumerator
//! `F_q(Q)`, a Hopf-algebraic invariant that refines the f-polynomial:
//!
//! * `f(Q, q) = (-1)^n ps(F_{-q}(Q))(-1)` where `ps` is the principal
//!   specialization,
//! * the antipode satisfies
//!   `S(F_q(Q)) = (-1)^n sum over faces f(face, -q) M_(type)`,
//! * `F_q` is multiplicative under products of polytopes and reverses
//!   under matroid duality.
//!
//! Everything is computed in exact integer arithmetic ([`num_bigint`]
//! coefficients; no floating point, no silent overflow). Each main
//! computation has an independent cross-check: literal flag sums against
//! structural recurrences, closed forms for uniform matroids, and
//! brute-force truncated power series evaluated one weight vector at a
//! time.

pub mod building_set;
pub mod error;
pub mod flags;
pub mod graph;
pub mod invariants;
pub mod matroid;
pub mod oracle;
pub mod qsym;
mod util;

pub use building_set::{BuildingSet, BuildingSetProvider, Skeleton};
pub use error::{Error, Result};
pub use flags::{enumerate_flags, flag_from_weight, Flag, DEFAULT_MAX_GROUND};
pub use graph::{
    CollisionGroup, CollisionGrouping, CollisionReport, Graph, GraphProvider, UniverseReport,
};
pub use invariants::{
    antipode_corollary_check, antipode_face_expansion, euler_check, euler_fiber_report,
    fpolynomial, fq_from_provider, EulerFiberReport, FaceKey, FaceProvider, RankProvider,
};
pub use matroid::{
    edge_criterion_witness, fq_uniform_closed_form, fvector_uniform, FlagMinorDecomposition,
    Matroid, MatroidProvider,
};
pub use oracle::{
    compare_series, enumerate_fq, series_product_check, truncate, OracleMismatch, OracleReport,
    TruncatedSeries, DEFAULT_POINT_BUDGET,
};
pub use qsym::{binomial_int, compositions, multinomial, Composition, QPolynomial, QSymExpr};
