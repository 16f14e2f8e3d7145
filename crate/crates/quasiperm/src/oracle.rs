//! Brute-force oracles: truncation of quasisymmetric expressions to finitely
//! many variables, and direct point-by-point enumeration of the weighted
//! enumerator.
//!
//! Setting all variables past the m-th to zero is a ring homomorphism, so a
//! truncated product equals the truncation of the product exactly; no
//! precision is lost. Dense storage indexes exponent vectors in mixed radix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flags::flag_from_weight;
use crate::invariants::RankProvider;
use crate::qsym::{QPolynomial, QSymExpr};

/// Most weight vectors a single enumeration may visit.
pub const DEFAULT_POINT_BUDGET: u64 = 1_000_000;

/// Largest dense coefficient table for a truncated series.
const MAX_TABLE: u64 = 10_000_000;

/// A polynomial in `num_vars` commuting variables with coefficients in
/// `Z[q]`, every exponent at most `cap`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    num_vars: usize,
    cap: u32,
    coeffs: Vec<QPolynomial>,
}

impl TruncatedSeries {
    pub fn new(num_vars: usize, cap: u32) -> Result<Self> {
        let size = (cap as u64 + 1)
            .checked_pow(num_vars as u32)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "dense table of ({cap}+1)^{num_vars} coefficients exceeds {MAX_TABLE}"
                ))
            })?;
        Ok(TruncatedSeries {
            num_vars,
            cap,
            coeffs: vec![QPolynomial::zero(); size as usize],
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn index(&self, exps: &[u32]) -> usize {
        let stride = self.cap as usize + 1;
        exps.iter()
            .rev()
            .fold(0usize, |acc, &e| acc * stride + e as usize)
    }

    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let stride = self.cap as usize + 1;
        let mut exps = Vec::with_capacity(self.num_vars);
        for _ in 0..self.num_vars {
            exps.push((idx % stride) as u32);
            idx /= stride;
        }
        exps
    }

    pub fn add_term(&mut self, exps: &[u32], p: &QPolynomial) -> Result<()> {
        if exps.len() != self.num_vars || exps.iter().any(|&e| e > self.cap) {
            return Err(Error::InvalidArgument(
                "exponent vector does not fit the series shape".into(),
            ));
        }
        let idx = self.index(exps);
        self.coeffs[idx] = self.coeffs[idx].add(p);
        Ok(())
    }

    /// Nonzero terms, keyed by exponent vector.
    pub fn terms_map(&self) -> BTreeMap<Vec<u32>, QPolynomial> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (self.decode(i), p.clone()))
            .collect()
    }

    /// Exact product; the exponent cap grows to the sum of the caps.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.num_vars != other.num_vars {
            return Err(Error::InvalidArgument(
                "series have different variable counts".into(),
            ));
        }
        let mut out = TruncatedSeries::new(self.num_vars, self.cap + other.cap)?;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let a = self.decode(i);
            for (j, r) in other.coeffs.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let b = other.decode(j);
                let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                out.add_term(&sum, &p.mul(r))?;
            }
        }
        Ok(out)
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.terms_map() == other.terms_map()
    }
}

impl Eq for TruncatedSeries {}

/// Evaluate a quasisymmetric expression in the variables x_1..x_m (all
/// later variables zero): each `M_alpha` becomes the sum of its monomials
/// over increasing position choices.
pub fn truncate(f: &QSymExpr, m: usize) -> Result<TruncatedSeries> {
    let cap = f
        .terms()
        .map(|(alpha, _)| alpha.weight())
        .max()
        .unwrap_or(0);
    let mut out = TruncatedSeries::new(m, cap)?;
    for (alpha, p) in f.terms() {
        let k = alpha.len();
        if k > m {
            continue;
        }
        let parts = alpha.parts();
        for_each_combination(m, k, &mut |positions| {
            let mut exps = vec![0u32; m];
            for (&pos, &part) in positions.iter().zip(parts) {
                exps[pos] = part;
            }
            out.add_term(&exps, p)
                .expect("exponents fit by construction");
        });
    }
    Ok(out)
}

/// Visit every increasing k-subset of {0..m-1}.
fn for_each_combination(m: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        start: usize,
        m: usize,
        left: usize,
        acc: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if left == 0 {
            visit(acc);
            return;
        }
        for pos in start..=(m - left) {
            acc.push(pos);
            rec(pos + 1, m, left - 1, acc, visit);
            acc.pop();
        }
    }
    rec(0, m, k, &mut Vec::new(), visit);
}

/// Brute-force the truncated enumerator from the definition: one weight
/// vector in {1..m}^n at a time, reading the face dimension from the rank
/// oracle of the flag of level sets.
pub fn enumerate_fq<P: RankProvider + ?Sized>(
    provider: &P,
    m: usize,
    budget: u64,
) -> Result<TruncatedSeries> {
    let n = provider.degree();
    if m == 0 {
        return Err(Error::InvalidArgument("no variables".into()));
    }
    let points = (m as u64).checked_pow(n as u32);
    if points.is_none_or(|p| p > budget) {
        return Err(Error::BudgetExceeded(format!(
            "{m}^{n} weight vectors exceed the budget of {budget}"
        )));
    }
    let mut out = TruncatedSeries::new(m, n as u32)?;
    if n == 0 {
        let zeros = vec![0u32; m];
        out.add_term(&zeros, &QPolynomial::one())?;
        return Ok(out);
    }
    let one = BigInt::one();
    let mut weights = vec![1u32; n];
    loop {
        let flag = flag_from_weight(&weights)?;
        let rank = provider.rank(&flag);
        let mut exps = vec![0u32; m];
        for &w in &weights {
            exps[w as usize - 1] += 1;
        }
        let mut term = QPolynomial::zero();
        term.add_assign_q_power(rank, &one);
        out.add_term(&exps, &term)?;
        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            if (weights[pos] as usize) < m {
                weights[pos] += 1;
                break;
            }
            weights[pos] = 1;
            pos += 1;
        }
    }
}

/// Check `truncate(f) * truncate(g) == truncate(f * g)` in m variables.
pub fn series_product_check(f: &QSymExpr, g: &QSymExpr, m: usize) -> Result<bool> {
    let lhs = truncate(f, m)?.mul(&truncate(g, m)?)?;
    let rhs = truncate(&f.quasi_shuffle(g), m)?;
    Ok(lhs == rhs)
}

/// One differing coefficient between two series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleMismatch {
    pub exponents: Vec<u32>,
    /// Coefficients of the left polynomial in q, ascending, as decimal
    /// strings.
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// Outcome of comparing an enumerator against a brute-force series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub equal: bool,
    /// At most the first ten mismatches.
    pub mismatches: Vec<OracleMismatch>,
}

/// Compare two series coefficient by coefficient.
pub fn compare_series(left: &TruncatedSeries, right: &TruncatedSeries) -> OracleReport {
    let a = left.terms_map();
    let b = right.terms_map();
    let mut mismatches = Vec::new();
    let keys: std::collections::BTreeSet<&Vec<u32>> = a.keys().chain(b.keys()).collect();
    let strings = |p: Option<&QPolynomial>| -> Vec<String> {
        p.map(|p| p.coeffs().iter().map(BigInt::to_string).collect())
            .unwrap_or_default()
    };
    for key in keys {
        let l = a.get(key);
        let r = b.get(key);
        if l != r
            && mismatches.len() < 10 {
                mismatches.push(OracleMismatch {
                    exponents: key.clone(),
                    left: strings(l),
                    right: strings(r),
                });
            }
    }
    OracleReport {
        equal: mismatches.is_empty(),
        mismatches,
    }
}
