//! Matroids given by their bases, and their base polytopes.
//!
//! The base polytope lives in R^n; a weight vector selects the face spanned
//! by its maximum-weight bases. In the canonical flag orientation (blocks by
//! increasing weight), a basis is on the face of a flag exactly when it meets
//! every suffix union of blocks in full rank. Flag ranks are computed from a
//! precomputed subset-rank table, with the literal restriction/contraction
//! chain and a greedy maximum-weight oracle as independent cross-checks.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::invariants::{fq_from_provider, FaceKey, FaceProvider, RankProvider};
use crate::qsym::{binomial_int, Composition, QPolynomial, QSymExpr};
use crate::util::{
    for_each_grouped_permutation, mask_components, mask_elements, mask_from_elements, remap_mask,
};

/// Memo key: ground size, rank, and canonically relabeled sorted base masks.
pub type MatroidKey = (usize, usize, Vec<u32>);

/// A matroid on a bitmask ground set, stored by its bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    ground: u32,
    rank: usize,
    bases: Vec<u32>, // sorted ascending, deduplicated
}

impl Matroid {
    /// Build and validate a matroid on {1..n} from 1-based bases.
    pub fn new(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if n > 32 {
            return Err(Error::InvalidMatroid(format!("unsupported ground size {n}")));
        }
        let ground = ((1u64 << n) - 1) as u32;
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            let mask = if b.is_empty() {
                0
            } else {
                mask_from_elements(b.iter().copied())
                    .filter(|&x| x & !ground == 0)
                    .ok_or_else(|| {
                        Error::InvalidMatroid(format!("basis {b:?} outside ground set 1..={n}"))
                    })?
            };
            masks.push(mask);
        }
        Matroid::from_masks(ground, masks)
    }

    /// Build and validate a matroid with an explicit bitmask ground.
    pub fn from_masks(ground: u32, mut bases: Vec<u32>) -> Result<Self> {
        bases.sort_unstable();
        bases.dedup();
        if bases.is_empty() {
            return Err(Error::InvalidMatroid("no bases".into()));
        }
        for &b in &bases {
            if b & !ground != 0 {
                return Err(Error::InvalidMatroid(format!(
                    "basis {:?} outside ground set",
                    mask_elements(b)
                )));
            }
        }
        let rank = bases[0].count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != rank) {
            return Err(Error::InvalidMatroid("bases differ in size".into()));
        }
        let m = Matroid { ground, rank, bases };
        m.validate_exchange()?;
        Ok(m)
    }

    /// Basis exchange: for bases A, B and a in A \ B there must be
    /// b in B \ A with A - a + b again a basis.
    fn validate_exchange(&self) -> Result<()> {
        for &a in &self.bases {
            for &b in &self.bases {
                let mut leave = a & !b;
                while leave != 0 {
                    let e = leave & leave.wrapping_neg();
                    leave &= leave - 1;
                    let mut enter = b & !a;
                    let mut ok = false;
                    while enter != 0 {
                        let f = enter & enter.wrapping_neg();
                        enter &= enter - 1;
                        if self.contains_basis((a & !e) | f) {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "exchange fails for bases {:?} and {:?} at element {}",
                            mask_elements(a),
                            mask_elements(b),
                            e.trailing_zeros() + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_masks_unchecked(ground: u32, mut bases: Vec<u32>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].count_ones() as usize;
        Matroid { ground, rank, bases }
    }

    /// The empty matroid U(0, 0).
    pub fn empty() -> Self {
        Matroid {
            ground: 0,
            rank: 0,
            bases: vec![0],
        }
    }

    /// The uniform matroid U(n, r): every r-subset of {1..n} is a basis.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if n > 20 {
            return Err(Error::InvalidMatroid(format!("unsupported ground size {n}")));
        }
        if r > n {
            return Err(Error::InvalidMatroid(format!("rank {r} exceeds ground size {n}")));
        }
        if n == 0 {
            return Ok(Matroid::empty());
        }
        let ground = ((1u64 << n) - 1) as u32;
        let bases: Vec<u32> = (0..=ground)
            .filter(|m| m.count_ones() as usize == r)
            .collect();
        Ok(Matroid {
            ground,
            rank: r,
            bases,
        })
    }

    /// Sparse paving matroid on {1..6} of rank 3: all triples except
    /// {1,2,3} and {4,5,6}.
    pub fn m1() -> Matroid {
        let mut bases: Vec<u32> = Matroid::uniform(6, 3)
            .expect("static")
            .bases
            .into_iter()
            .filter(|&b| b != 0b000111 && b != 0b111000)
            .collect();
        bases.sort_unstable();
        Matroid {
            ground: 0b111111,
            rank: 3,
            bases,
        }
    }

    /// Sparse paving matroid on {1..6} of rank 3: all triples except
    /// {1,2,3} and {3,4,5}.
    pub fn m2() -> Matroid {
        let mut bases: Vec<u32> = Matroid::uniform(6, 3)
            .expect("static")
            .bases
            .into_iter()
            .filter(|&b| b != 0b000111 && b != 0b011100)
            .collect();
        bases.sort_unstable();
        Matroid {
            ground: 0b111111,
            rank: 3,
            bases,
        }
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.count_ones() as usize
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    /// Bases as sorted 1-based element lists.
    pub fn base_sets(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| mask_elements(b)).collect()
    }

    pub fn contains_basis(&self, mask: u32) -> bool {
        self.bases.binary_search(&mask).is_ok()
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, a: u32) -> usize {
        self.bases
            .iter()
            .map(|&b| (b & a).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Restriction M|_A: bases are the maximum-size traces of bases on A.
    pub fn restriction(&self, a: u32) -> Result<Matroid> {
        if a & !self.ground != 0 {
            return Err(Error::InvalidArgument(
                "restriction set is not a subset of the ground set".into(),
            ));
        }
        let r = self.rank_of(a);
        let bases: Vec<u32> = self
            .bases
            .iter()
            .map(|&b| b & a)
            .filter(|m| m.count_ones() as usize == r)
            .collect();
        Ok(Matroid::from_masks_unchecked(a, bases))
    }

    /// Contraction M/A on ground `V \ A`: traces of the bases that meet A
    /// in full rank.
    pub fn contraction(&self, a: u32) -> Result<Matroid> {
        if a & !self.ground != 0 {
            return Err(Error::InvalidArgument(
                "contraction set is not a subset of the ground set".into(),
            ));
        }
        let r = self.rank_of(a);
        let bases: Vec<u32> = self
            .bases
            .iter()
            .filter(|&&b| (b & a).count_ones() as usize == r)
            .map(|&b| b & !a)
            .collect();
        Ok(Matroid::from_masks_unchecked(self.ground & !a, bases))
    }

    /// Connected components, from transitive closure of basis exchanges:
    /// two elements are linked when some pair of bases differs exactly by
    /// swapping one for the other. Loops and coloops are singletons.
    pub fn components(&self) -> Vec<u32> {
        let links = self.bases.iter().enumerate().flat_map(|(i, &a)| {
            self.bases[i + 1..].iter().filter_map(move |&b| {
                let d = a ^ b;
                (d.count_ones() == 2).then_some(d)
            })
        });
        mask_components(self.ground, links)
    }

    pub fn c(&self) -> usize {
        self.components().len()
    }

    pub fn connected(&self) -> bool {
        self.ground != 0 && self.c() == 1
    }

    /// Dimension of the base polytope.
    pub fn dimension(&self) -> usize {
        self.ground_size() - self.c()
    }

    /// Direct sum, with the second summand relabeled above the first.
    /// Requires a contiguous ground set on both sides.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.ground_size();
        let m = other.ground_size();
        if !self.is_contiguous() || !other.is_contiguous() {
            return Err(Error::InvalidArgument(
                "direct sum requires ground sets {1..n}".into(),
            ));
        }
        if n + m > 32 {
            return Err(Error::InvalidArgument("direct sum ground set too large".into()));
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | (b << n));
            }
        }
        Ok(Matroid {
            ground: ((1u64 << (n + m)) - 1) as u32,
            rank: self.rank + other.rank,
            bases,
        })
    }

    /// Dual matroid: complements of bases.
    pub fn dual(&self) -> Matroid {
        let bases: Vec<u32> = self.bases.iter().map(|&b| self.ground & !b).collect();
        let mut m = Matroid::from_masks_unchecked(self.ground, bases);
        m.rank = self.ground_size() - self.rank;
        m
    }

    fn is_contiguous(&self) -> bool {
        let n = self.ground_size();
        self.ground == ((1u64 << n) - 1) as u32
    }

    /// Order-preserving relabeling of the ground set onto {1..m}.
    pub fn relabeled(&self) -> Matroid {
        let elements = mask_elements(self.ground);
        let mut map = [0usize; 32];
        for (new, &old) in elements.iter().enumerate() {
            map[old - 1] = new;
        }
        let bases: Vec<u32> = self.bases.iter().map(|&b| remap_mask(b, &map)).collect();
        let mut m = Matroid::from_masks_unchecked(((1u64 << elements.len()) - 1) as u32, bases);
        m.rank = self.rank;
        m
    }

    /// Canonical form under ground relabeling: the least sorted base list,
    /// brute-forced over permutations refined by per-element basis counts.
    pub fn canonical_key(&self) -> MatroidKey {
        let m = self.relabeled();
        let n = m.ground_size();
        if n == 0 {
            return (0, self.rank, vec![0]);
        }
        let mut invariants: Vec<(usize, usize)> = (0..n)
            .map(|e| {
                (
                    m.bases.iter().filter(|&&b| b >> e & 1 == 1).count(),
                    e,
                )
            })
            .collect();
        invariants.sort();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut prev = usize::MAX;
        for &(count, e) in &invariants {
            if count == prev {
                groups.last_mut().unwrap().push(e);
            } else {
                groups.push(vec![e]);
                prev = count;
            }
        }
        let mut best: Option<Vec<u32>> = None;
        for_each_grouped_permutation(&groups, &mut |perm| {
            let mut relabeled: Vec<u32> =
                m.bases.iter().map(|&b| remap_mask(b, perm)).collect();
            relabeled.sort_unstable();
            if best.as_ref().is_none_or(|cur| relabeled < *cur) {
                best = Some(relabeled);
            }
        });
        (n, self.rank, best.unwrap())
    }

    /// The minors cut out by a flag, in decreasing-weight order: the first
    /// minor is the restriction to the last block, then each earlier block
    /// contributes the restriction to its suffix union contracted by the
    /// blocks after it.
    pub fn flag_decomposition(&self, flag: &Flag) -> Result<FlagMinorDecomposition> {
        let n = self.ground_size();
        if flag.n() != n || !self.is_contiguous() {
            return Err(Error::InvalidArgument(
                "flag does not match the ground set".into(),
            ));
        }
        let blocks = flag.block_masks();
        let k = blocks.len();
        let mut minors = Vec::with_capacity(k);
        let mut suffix = 0u32;
        let mut suffixes = vec![0u32; k + 1];
        for j in (0..k).rev() {
            suffix |= blocks[j];
            suffixes[j] = suffix;
        }
        for j in (0..k).rev() {
            let restricted = self.restriction(suffixes[j])?;
            let minor = if suffixes[j + 1] == 0 {
                restricted
            } else {
                restricted.contraction(suffixes[j + 1])?
            };
            minors.push(minor);
        }
        let total_components: usize = minors.iter().map(Matroid::c).sum();
        Ok(FlagMinorDecomposition {
            flag_rank: n - total_components,
            total_components,
            minors,
        })
    }

    /// Weighted enumerator of the base polytope.
    pub fn fq(&self) -> Result<QSymExpr> {
        if self.ground == 0 {
            return Ok(QSymExpr::unit());
        }
        let relabeled;
        let base = if self.is_contiguous() {
            self
        } else {
            relabeled = self.relabeled();
            &relabeled
        };
        let provider = MatroidProvider::new(base)?;
        fq_from_provider(&provider)
    }

    /// The bases of maximum total weight under a per-element weight vector
    /// (index v-1 weights element v).
    pub fn max_weight_bases(&self, weights: &[u32]) -> Result<Vec<u32>> {
        if weights.len() != self.ground_size() || !self.is_contiguous() {
            return Err(Error::InvalidArgument(
                "weight vector length must match a {1..n} ground set".into(),
            ));
        }
        let weight_of = |b: u32| -> u64 {
            let mut scan = b;
            let mut total = 0u64;
            while scan != 0 {
                total += weights[scan.trailing_zeros() as usize] as u64;
                scan &= scan - 1;
            }
            total
        };
        let best = self.bases.iter().map(|&b| weight_of(b)).max().unwrap();
        Ok(self
            .bases
            .iter()
            .copied()
            .filter(|&b| weight_of(b) == best)
            .collect())
    }

    /// Greedy oracle for the dimension of the face selected by a weight
    /// vector: the maximum-weight bases form a matroid, and the dimension
    /// is `n` minus its component count.
    pub fn rank_from_weight_vector(&self, weights: &[u32]) -> Result<usize> {
        let face = Matroid::from_masks_unchecked(self.ground, self.max_weight_bases(weights)?);
        Ok(self.ground_size() - face.c())
    }

    /// Parse the text format: first line `n r`, then one basis per line as
    /// space-separated 1-based elements (a lone `-` denotes the empty
    /// basis).
    pub fn parse(text: &str) -> Result<Matroid> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: "empty input".into(),
            })?;
        let header: Vec<&str> = first.split_whitespace().collect();
        let parse_head = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("expected `n r`, found {first:?}"),
            })
        };
        if header.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected `n r`, found {first:?}"),
            });
        }
        let n = parse_head(header[0])?;
        let r = parse_head(header[1])?;
        let mut bases = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut basis = Vec::new();
            if line != "-" {
                for tok in line.split_whitespace() {
                    let e: usize = tok.parse().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("expected element, found {tok:?}"),
                    })?;
                    basis.push(e);
                }
            }
            if basis.len() != r {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("basis has {} elements, expected rank {r}", basis.len()),
                });
            }
            bases.push(basis);
        }
        Matroid::new(n, &bases)
    }
}

/// Minor chain of a flag on a matroid, in decreasing-weight order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagMinorDecomposition {
    pub minors: Vec<Matroid>,
    pub total_components: usize,
    pub flag_rank: usize,
}

/// Closed-form enumerator of the uniform base polytope U(n, r) in
/// decreasing-weight orientation:
/// `C(n,r) (M1)^r * (M1)^(n-r) + sum over 0 <= r' < r < r'+s <= n of
/// C(n,r') C(n-r',s) q^(s-1) (M1)^(r') * M_s * (M1)^(n-r'-s)`,
/// where powers of M1 are quasi-shuffle powers and `*` concatenates.
pub fn fq_uniform_closed_form(n: usize, r: usize) -> Result<QSymExpr> {
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!(
            "closed form needs 0 < r < n, got ({n}, {r})"
        )));
    }
    let binom = |top: usize, k: usize| binomial_int(top as i64, k);
    let mut acc = QSymExpr::m1_pow(r)
        .concat_product(&QSymExpr::m1_pow(n - r))
        .scale(&QPolynomial::from_coeffs(vec![binom(n, r)]));
    for s in 2..=n {
        for rp in 0..r {
            if r < rp + s && rp + s <= n {
                let coeff = binom(n, rp) * binom(n - rp, s);
                let mut poly = QPolynomial::zero();
                poly.add_assign_q_power(s - 1, &coeff);
                let term = QSymExpr::m1_pow(rp)
                    .concat_product(&QSymExpr::monomial(Composition::single(s as u32)))
                    .concat_product(&QSymExpr::m1_pow(n - rp - s));
                acc = acc.add(&term.scale(&poly));
            }
        }
    }
    Ok(acc)
}

/// f-vector of the uniform base polytope for 0 < r < n: the vertex count is
/// C(n, r), and the number of (s-1)-dimensional faces for s >= 2 is the sum
/// of trinomials n! / (r'! s! (n-r'-s)!) over admissible r'.
pub fn fvector_uniform(n: usize, r: usize) -> Result<QPolynomial> {
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!(
            "f-vector formula needs 0 < r < n, got ({n}, {r})"
        )));
    }
    let binom = |top: usize, k: usize| binomial_int(top as i64, k);
    let mut poly = QPolynomial::zero();
    poly.add_assign_q_power(0, &binom(n, r));
    for s in 2..=n {
        for rp in 0..r {
            if r < rp + s && rp + s <= n {
                poly.add_assign_q_power(s - 1, &(binom(n, rp) * binom(n - rp, s)));
            }
        }
    }
    Ok(poly)
}

/// Scan small weight vectors for a violation of the base-exchange edge
/// geometry: a weight vector with exactly two maximizers differing in more
/// than one swap. Returns the first witness, or None. The scan covers
/// weight entries 1..=max_weight.
pub fn edge_criterion_witness(
    ground: u32,
    bases: &[u32],
    max_weight: u32,
) -> Result<Option<Vec<u32>>> {
    let n = ground.count_ones() as usize;
    if ground == 0 || bases.is_empty() {
        return Err(Error::InvalidArgument("empty ground or basis list".into()));
    }
    let points = (max_weight as u64).checked_pow(n as u32);
    if points.is_none_or(|p| p > 1_000_000) {
        return Err(Error::BudgetExceeded(format!(
            "{max_weight}^{n} weight vectors exceed the scan budget"
        )));
    }
    let elements = mask_elements(ground);
    let mut weights = vec![1u32; n];
    loop {
        let weight_of = |b: u32| -> u64 {
            elements
                .iter()
                .enumerate()
                .filter(|&(_, &e)| b >> (e - 1) & 1 == 1)
                .map(|(i, _)| weights[i] as u64)
                .sum()
        };
        let best = bases.iter().map(|&b| weight_of(b)).max().unwrap();
        let maximizers: Vec<u32> = bases
            .iter()
            .copied()
            .filter(|&b| weight_of(b) == best)
            .collect();
        if maximizers.len() == 2 && (maximizers[0] ^ maximizers[1]).count_ones() != 2 {
            return Ok(Some(weights));
        }
        // Advance the mixed-radix counter.
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            if weights[pos] < max_weight {
                weights[pos] += 1;
                break;
            }
            weights[pos] = 1;
            pos += 1;
        }
    }
}

/// Flag-rank oracle for a base polytope, from a full subset-rank table.
pub struct MatroidProvider<'a> {
    m: &'a Matroid,
    n: usize,
    rank_table: Vec<usize>,
    face_memo: RefCell<HashMap<FaceKey, QPolynomial>>,
    fpoly_memo: RefCell<HashMap<MatroidKey, QPolynomial>>,
}

impl<'a> MatroidProvider<'a> {
    pub fn new(m: &'a Matroid) -> Result<Self> {
        if !m.is_contiguous() || m.ground == 0 {
            return Err(Error::InvalidArgument(
                "provider requires a ground set {1..n}".into(),
            ));
        }
        let n = m.ground_size();
        let full = m.ground;
        let mut rank_table = vec![0usize; full as usize + 1];
        for (s, slot) in rank_table.iter_mut().enumerate() {
            *slot = m.rank_of(s as u32);
        }
        Ok(MatroidProvider {
            m,
            n,
            rank_table,
            face_memo: RefCell::new(HashMap::new()),
            fpoly_memo: RefCell::new(HashMap::new()),
        })
    }

    /// Bases lying on the face of the flag: those meeting every suffix
    /// union of blocks in full rank.
    fn face_bases(&self, flag: &Flag) -> Vec<u32> {
        let blocks = flag.block_masks();
        let mut suffixes = Vec::with_capacity(blocks.len());
        let mut acc = 0u32;
        for &b in blocks.iter().rev() {
            acc |= b;
            suffixes.push(acc);
        }
        self.m
            .bases
            .iter()
            .copied()
            .filter(|&b| {
                suffixes
                    .iter()
                    .all(|&s| (b & s).count_ones() as usize == self.rank_table[s as usize])
            })
            .collect()
    }

    fn block_minors(&self, flag: &Flag, face_bases: &[u32]) -> Vec<Matroid> {
        flag.block_masks()
            .iter()
            .map(|&block| {
                let projected: Vec<u32> = face_bases.iter().map(|&b| b & block).collect();
                Matroid::from_masks_unchecked(block, projected)
            })
            .collect()
    }
}

impl RankProvider for MatroidProvider<'_> {
    fn degree(&self) -> usize {
        self.n
    }

    fn rank(&self, flag: &Flag) -> usize {
        let face_bases = self.face_bases(flag);
        let components: usize = self
            .block_minors(flag, &face_bases)
            .iter()
            .map(Matroid::c)
            .sum();
        self.n - components
    }
}

impl FaceProvider for MatroidProvider<'_> {
    /// The face is determined by its vertex set: the maximum-weight bases.
    fn face_key(&self, flag: &Flag) -> FaceKey {
        self.face_bases(flag).iter().map(|&b| b as u64).collect()
    }

    /// f-polynomial of the face: product over the block minors, each
    /// computed from its own enumerator and memoized canonically.
    fn face_fpoly(&self, flag: &Flag) -> QPolynomial {
        let key = self.face_key(flag);
        if let Some(hit) = self.face_memo.borrow().get(&key) {
            return hit.clone();
        }
        let face_bases = self.face_bases(flag);
        let mut acc = QPolynomial::one();
        for minor in self.block_minors(flag, &face_bases) {
            let canon = minor.canonical_key();
            let cached = self.fpoly_memo.borrow().get(&canon).cloned();
            let fpoly = match cached {
                Some(p) => p,
                None => {
                    let p = crate::invariants::fpolynomial(
                        &minor.relabeled().fq().expect("minor enumerator"),
                    )
                    .expect("homogeneous minor enumerator");
                    self.fpoly_memo.borrow_mut().insert(canon, p.clone());
                    p
                }
            };
            acc = acc.mul(&fpoly);
        }
        self.face_memo.borrow_mut().insert(key, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::flag_from_weight;
    use num_traits::Zero;

    #[test]
    fn exchange_validation_rejects_non_matroids() {
        let err = Matroid::new(4, &[vec![1, 2], vec![3, 4]]).unwrap_err();
        assert!(err.to_string().contains("exchange fails"), "{err}");
        assert!(Matroid::new(2, &[vec![1], vec![1, 2]]).is_err());
        assert!(Matroid::new(2, &[]).is_err());
    }

    #[test]
    fn uniform_and_named_matroids() {
        assert_eq!(Matroid::uniform(4, 2).unwrap().bases().len(), 6);
        assert_eq!(Matroid::m1().bases().len(), 18);
        assert_eq!(Matroid::m2().bases().len(), 18);
        // Both are genuine matroids.
        assert!(Matroid::from_masks(0b111111, Matroid::m1().bases().to_vec()).is_ok());
        assert!(Matroid::from_masks(0b111111, Matroid::m2().bases().to_vec()).is_ok());
    }

    #[test]
    fn restriction_takes_maximal_traces() {
        let m = Matroid::uniform(4, 2).unwrap();
        let r = m.restriction(0b0011).unwrap();
        assert_eq!(r.bases(), &[0b0011]);
        assert_eq!(r.rank(), 2);
        let u31 = Matroid::uniform(3, 1).unwrap();
        let r = u31.restriction(0b011).unwrap();
        assert_eq!(r.bases(), &[0b001, 0b010]);
    }

    #[test]
    fn contraction_keeps_full_rank_traces() {
        let u31 = Matroid::uniform(3, 1).unwrap();
        let c = u31.contraction(0b011).unwrap();
        assert_eq!(c.bases(), &[0]);
        assert_eq!(c.ground(), 0b100);
        let m = Matroid::uniform(4, 2).unwrap();
        let c = m.contraction(0b0001).unwrap();
        assert_eq!(c.bases(), &[0b0010, 0b0100, 0b1000]);
    }

    #[test]
    fn component_counts() {
        assert_eq!(Matroid::uniform(4, 2).unwrap().c(), 1);
        assert_eq!(Matroid::uniform(3, 3).unwrap().c(), 3);
        assert_eq!(Matroid::uniform(3, 0).unwrap().c(), 3);
        assert_eq!(Matroid::uniform(5, 2).unwrap().dimension(), 4);
        let sum = Matroid::uniform(2, 1)
            .unwrap()
            .direct_sum(&Matroid::uniform(3, 1).unwrap())
            .unwrap();
        assert_eq!(sum.ground_size(), 5);
        assert_eq!(sum.rank(), 2);
        assert_eq!(sum.c(), 2);
    }

    #[test]
    fn duality() {
        let m = Matroid::uniform(4, 2).unwrap();
        assert_eq!(m.dual(), m);
        assert_eq!(
            Matroid::uniform(3, 1).unwrap().dual(),
            Matroid::uniform(3, 2).unwrap()
        );
        assert_eq!(Matroid::m1().dual().rank(), 3);
    }

    #[test]
    fn flag_decomposition_on_the_triangle() {
        // Lowest weight on element 3, highest on the pair {1, 2}: the face
        // is the edge between the vertices e1 and e2.
        let m = Matroid::uniform(3, 1).unwrap();
        let flag = Flag::new(3, &[vec![3], vec![1, 2]]).unwrap();
        let d = m.flag_decomposition(&flag).unwrap();
        assert_eq!(d.minors.len(), 2);
        assert_eq!(d.minors[0].ground(), 0b011);
        assert_eq!(d.minors[0].bases(), &[0b001, 0b010]);
        assert_eq!(d.minors[1].ground(), 0b100);
        assert_eq!(d.minors[1].bases(), &[0]);
        assert_eq!(d.total_components, 2);
        assert_eq!(d.flag_rank, 1);
    }

    #[test]
    fn fq_of_the_triangle() {
        // U(3, 1) is the standard triangle: vertices at each e_i.
        let m = Matroid::uniform(3, 1).unwrap();
        let f = m.fq().unwrap();
        let mut expected = QSymExpr::term(
            Composition::new(vec![1, 1, 1]).unwrap(),
            QPolynomial::constant(6),
        );
        expected.add_term(Composition::new(vec![2, 1]).unwrap(), &QPolynomial::constant(3));
        expected.add_term(
            Composition::new(vec![1, 2]).unwrap(),
            &QPolynomial::from_i64_coeffs(&[0, 3]),
        );
        expected.add_term(Composition::single(3), &QPolynomial::from_i64_coeffs(&[0, 0, 1]));
        assert_eq!(f, expected);
    }

    #[test]
    fn provider_rank_matches_flag_decomposition_and_greedy() {
        for m in [
            Matroid::uniform(4, 2).unwrap(),
            Matroid::uniform(4, 1).unwrap(),
            Matroid::uniform(4, 4).unwrap(),
        ] {
            let provider = MatroidProvider::new(&m).unwrap();
            for flag in crate::flags::enumerate_flags(4).unwrap() {
                let rank = provider.rank(&flag);
                assert_eq!(rank, m.flag_decomposition(&flag).unwrap().flag_rank);
            }
            // Greedy oracle on explicit weight vectors.
            for weights in [[1, 1, 1, 1], [2, 2, 1, 1], [3, 1, 2, 1], [4, 3, 2, 1]] {
                let flag = flag_from_weight(&weights).unwrap();
                assert_eq!(
                    provider.rank(&flag),
                    m.rank_from_weight_vector(&weights).unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_form_matches_enumerator_for_u42() {
        // Assemble the literal closed form for U(4, 2) by hand.
        let m1 = |k: usize| QSymExpr::m1_pow(k);
        let mono = |parts: Vec<u32>| QSymExpr::monomial(Composition::new(parts).unwrap());
        let q = |k: usize, c: i64| {
            let mut p = QPolynomial::zero();
            p.add_assign_q_power(k, &num_bigint::BigInt::from(c));
            p
        };
        let literal = m1(2)
            .concat_product(&m1(2))
            .scale(&QPolynomial::constant(6))
            .add(&mono(vec![1, 2, 1]).scale(&q(1, 12)))
            .add(&mono(vec![3, 1]).add(&mono(vec![1, 3])).scale(&q(2, 4)))
            .add(&mono(vec![4]).scale(&q(3, 1)));
        let closed = fq_uniform_closed_form(4, 2).unwrap();
        assert_eq!(closed, literal);
        // The hypersimplex is self-dual, so the enumerator is reversal-
        // symmetric and matches the closed form directly.
        let computed = Matroid::uniform(4, 2).unwrap().fq().unwrap();
        assert_eq!(computed.reverse(), closed);
        assert_eq!(computed, closed);
    }

    #[test]
    fn closed_form_matches_reversed_enumerator_for_u31() {
        let computed = Matroid::uniform(3, 1).unwrap().fq().unwrap();
        assert_eq!(computed.reverse(), fq_uniform_closed_form(3, 1).unwrap());
    }

    #[test]
    fn uniform_fvectors() {
        assert_eq!(
            fvector_uniform(3, 1).unwrap(),
            QPolynomial::from_i64_coeffs(&[3, 3, 1])
        );
        assert_eq!(
            fvector_uniform(4, 2).unwrap(),
            QPolynomial::from_i64_coeffs(&[6, 12, 8, 1])
        );
        assert!(fvector_uniform(3, 0).is_err());
        assert!(fvector_uniform(3, 3).is_err());
    }

    #[test]
    fn edge_criterion_scan() {
        // The pair {{1,2},{3,4}} fails the edge criterion at equal weights.
        let witness = edge_criterion_witness(0b1111, &[0b0011, 0b1100], 2).unwrap();
        assert_eq!(witness, Some(vec![1, 1, 1, 1]));
        let u = Matroid::uniform(4, 2).unwrap();
        assert_eq!(edge_criterion_witness(u.ground(), u.bases(), 2).unwrap(), None);
    }

    #[test]
    fn canonical_key_identifies_relabelings() {
        let a = Matroid::new(3, &[vec![1], vec![2]]).unwrap();
        let b = Matroid::new(3, &[vec![2], vec![3]]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(
            Matroid::m1().canonical_key(),
            Matroid::m2().canonical_key()
        );
        assert_ne!(
            Matroid::m1().canonical_key(),
            Matroid::uniform(6, 3).unwrap().canonical_key()
        );
    }

    #[test]
    fn greedy_rank_examples() {
        let m = Matroid::uniform(3, 1).unwrap();
        assert_eq!(m.rank_from_weight_vector(&[1, 1, 1]).unwrap(), 2);
        assert_eq!(m.rank_from_weight_vector(&[2, 2, 1]).unwrap(), 1);
        assert_eq!(m.rank_from_weight_vector(&[3, 2, 1]).unwrap(), 0);
    }

    #[test]
    fn rank_of_subsets() {
        let m = Matroid::m1();
        assert_eq!(m.rank_of(0b000111), 2);
        assert_eq!(m.rank_of(0b001111), 3);
        assert_eq!(m.rank_of(0), 0);
    }

    #[test]
    fn m1_and_m2_share_vertex_counts() {
        let f1 = Matroid::m1().fq().unwrap();
        let f2 = Matroid::m2().fq().unwrap();
        assert_eq!(f1.eval_q(0), f2.eval_q(0));
        assert_ne!(f1, f2);
        let alpha = Composition::new(vec![1, 4, 1]).unwrap();
        let c1 = f1.coefficient(&alpha);
        let c2 = f2.coefficient(&alpha);
        let mut q3_30 = QPolynomial::zero();
        q3_30.add_assign_q_power(3, &num_bigint::BigInt::from(30));
        assert_eq!(c1, q3_30);
        assert!(!c2.coeff(2).is_zero());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let m = Matroid::parse("3 1\n1\n2\n3\n").unwrap();
        assert_eq!(m, Matroid::uniform(3, 1).unwrap());
        let err = Matroid::parse("3 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(Matroid::parse("3\n1\n").is_err());
        // Rank-zero matroid via explicit empty bases.
        let z = Matroid::parse("2 0\n-\n").unwrap();
        assert_eq!(z.rank(), 0);
        assert_eq!(z.bases(), &[0]);
    }

    #[test]
    fn empty_matroid_enumerator_is_the_unit() {
        assert_eq!(Matroid::empty().fq().unwrap(), QSymExpr::unit());
    }
}
