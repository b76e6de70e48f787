//! Signed subgraph statistics.
//!
//! For a class F without isolated vertices, S(F, G) sums over all placements
//! of F in G (distinct edge-set copies, one per unlabeled copy, matching the
//! induced-count convention) the product of (I_G(e) - p) over the placed
//! edges. S_ij(F, G) is the exact amount S(F, G) moves when the pair ij is
//! flipped on.
//!
//! The module also derives, symbolically, the coefficients a_{F,H}(n, p) of
//! the exact linear decomposition
//!
//!   N(H, G) = E[N(H, G(n,p))] + sum over F of a_{F,H}(n,p) S(F, G)
//!
//! by expanding I_G(e) = (I_G(e) - p) + p and 1 - I_G(e) = (1-p) - (I_G(e)-p)
//! over one placement and collecting monomials by their support graph. The
//! coefficients have integer polynomial form in p once the binomial
//! multiplicity in n is fixed; everything stays exact under the rational
//! backend. Inverting the decomposition bottom-up by vertex count turns the
//! fast census into fast signed statistics for large n.

use rand::Rng;

use crate::catalog::{self, Family, SmallGraph};
use crate::census::{self, pow_scalar, CensusResult};
use crate::error::Error;
use crate::graph::Graph;
use crate::numeric::{binomial, Scalar};
use crate::Result;

/// Number of subsets the direct enumeration paths may visit.
const DIRECT_SUBSET_CAP: u128 = 200_000_000;

// ---------------------------------------------------------------------------
// Integer polynomials in p
// ---------------------------------------------------------------------------

/// Polynomial in p with i128 coefficients; coefficient magnitudes stay well
/// inside i128 for every n this crate supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<i128>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    fn add_assign(&mut self, other: &Poly) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
    }

    fn scale(&mut self, factor: i128) {
        for c in &mut self.coeffs {
            *c *= factor;
        }
    }

    /// sign * p^a (1-p)^b as an integer polynomial.
    fn signed_power_product(a: u32, b: u32, negative: bool) -> Poly {
        // (1-p)^b via binomial expansion
        let mut coeffs = vec![0i128; (a + b + 1) as usize];
        for t in 0..=b {
            let c = binomial(b as u64, t as u64) as i128;
            let sign = if t % 2 == 0 { 1 } else { -1 };
            coeffs[(a + t) as usize] = sign * c;
        }
        if negative {
            for c in &mut coeffs {
                *c = -*c;
            }
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval<T: Scalar>(&self, p: &T) -> T {
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * p.clone() + T::from_int(c);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Placement tables
// ---------------------------------------------------------------------------

/// Per-class lookup tables over induced edge patterns of a k-subset.
///
/// `span[c][pattern]` sums, over all spanning placements of class `c` on a
/// fixed k-set, the product of (I - p) factors read off the pattern bits.
/// `delta[c][pattern]` does the same for placements that contain the pair in
/// slot 0 (the "ij" pair), with the slot-0 bit removed from the pattern and
/// from the product.
pub struct ClassTables<T> {
    pub k: usize,
    pub span: Vec<Vec<T>>,
    pub delta: Vec<Vec<T>>,
}

/// Builds span and delta tables for all classes on k vertices at a given p.
pub fn class_tables<T: Scalar>(k: usize, p: &T) -> Result<ClassTables<T>> {
    let cat = catalog::catalog(k)?;
    let nslots = k * (k - 1) / 2;
    let npatterns = 1usize << nslots;

    // factor_product[e][a] = (1-p)^a * (-p)^(e-a)
    let q = T::one() - p.clone();
    let neg_p = T::zero() - p.clone();
    let mut factor_product = vec![vec![T::one(); nslots + 1]; nslots + 1];
    for e in 0..=nslots {
        for a in 0..=e {
            factor_product[e][a] =
                pow_scalar(&q, a as u32) * pow_scalar(&neg_p, (e - a) as u32);
        }
    }

    let nclasses = cat.classes.len();
    let mut span = vec![vec![T::zero(); npatterns]; nclasses];
    let mut delta = vec![vec![T::zero(); npatterns >> 1]; nclasses];

    for mask in 0..npatterns as u32 {
        if !cat.spans(mask) {
            continue;
        }
        let class = cat.class_index(mask);
        let e = mask.count_ones() as usize;
        for pattern in 0..npatterns as u32 {
            let a = (mask & pattern).count_ones() as usize;
            let value = factor_product[e][a].clone();
            span[class][pattern as usize] = span[class][pattern as usize].clone() + value;
        }
        if mask & 1 == 1 {
            // placement contains the slot-0 pair; product skips that factor
            let rest = mask >> 1;
            let er = rest.count_ones() as usize;
            for pattern in 0..(npatterns >> 1) as u32 {
                let a = (rest & pattern).count_ones() as usize;
                let value = factor_product[er][a].clone();
                delta[class][pattern as usize] =
                    delta[class][pattern as usize].clone() + value;
            }
        }
    }

    Ok(ClassTables {
        k,
        span,
        delta,
    })
}

// ---------------------------------------------------------------------------
// Direct enumeration
// ---------------------------------------------------------------------------

fn guard_loopless(g: &Graph, op: &'static str) -> Result<()> {
    if g.loops_enabled() && g.loop_count() > 0 {
        return Err(Error::LoopsUnsupported { op });
    }
    Ok(())
}

/// S(F, G) by direct enumeration over all v(F)-subsets; cost O(n^{v(F)}).
pub fn signed_sum<T: Scalar>(f: &SmallGraph, g: &Graph, p: &T) -> Result<T> {
    guard_loopless(g, "signed_sum")?;
    let n = g.n();
    if f.k > n {
        return Err(Error::InvalidArgument(format!(
            "signed_sum needs v(F) <= n, got v(F)={} n={n}",
            f.k
        )));
    }
    if f.min_degree == 0 {
        return Err(Error::InvalidArgument(format!(
            "signed sums are defined for isolated-vertex-free classes, got {}",
            f.name
        )));
    }
    if f.k == 2 {
        return Ok(s_k2(g, p));
    }
    let work = binomial(n as u64, f.k as u64);
    if work > DIRECT_SUBSET_CAP {
        return Err(Error::WorkCapExceeded {
            op: "signed_sum",
            required: work,
            cap: DIRECT_SUBSET_CAP,
        });
    }
    let tables = class_tables(f.k, p)?;
    let table = &tables.span[f.index];
    let mut acc = T::zero();
    let mut subset: Vec<usize> = (0..f.k).collect();
    loop {
        let pattern = g.induced_mask(&subset);
        acc = acc + table[pattern as usize].clone();
        if !census::next_combination(&mut subset, n) {
            break;
        }
    }
    Ok(acc)
}

/// S(K2, G) = e(G) - p C(n,2), exact in both backends.
pub fn s_k2<T: Scalar>(g: &Graph, p: &T) -> T {
    let pairs = T::from_int(binomial(g.n() as u64, 2) as i128);
    T::from_count(g.edge_count()) - p.clone() * pairs
}

/// Signed statistics for every member of the family F_k.
#[derive(Clone, Debug)]
pub struct SignedStats<T> {
    pub family: Family,
    pub values: Vec<T>,
}

impl<T: Scalar> SignedStats<T> {
    pub fn get(&self, class: &SmallGraph) -> &T {
        let pos = self
            .family
            .members
            .iter()
            .position(|m| m.k == class.k && m.mask == class.mask)
            .expect("class is a family member");
        &self.values[pos]
    }

    pub fn by_name(&self, name: &str) -> &T {
        let pos = self
            .family
            .members
            .iter()
            .position(|m| m.name == name)
            .expect("named class is a family member");
        &self.values[pos]
    }

    pub fn named(&self) -> Vec<(String, f64)> {
        self.family
            .members
            .iter()
            .zip(&self.values)
            .map(|(m, v)| (m.name.clone(), v.to_f64_lossy()))
            .collect()
    }
}

/// All S(F, G), F in F_k, by direct enumeration (one subset pass per order).
pub fn signed_stats<T: Scalar>(g: &Graph, p: &T, k: usize) -> Result<SignedStats<T>> {
    guard_loopless(g, "signed_stats")?;
    let family = catalog::family(k)?;
    let n = g.n();
    let mut values = vec![T::zero(); family.members.len()];

    for v in 2..=k {
        let members: Vec<usize> = family
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.k == v)
            .map(|(i, _)| i)
            .collect();
        if members.is_empty() || v > n {
            continue;
        }
        if v == 2 {
            values[members[0]] = s_k2(g, p);
            continue;
        }
        let work = binomial(n as u64, v as u64);
        if work > DIRECT_SUBSET_CAP {
            return Err(Error::WorkCapExceeded {
                op: "signed_stats",
                required: work,
                cap: DIRECT_SUBSET_CAP,
            });
        }
        let tables = class_tables(v, p)?;
        let mut acc = vec![T::zero(); members.len()];
        let mut subset: Vec<usize> = (0..v).collect();
        loop {
            let pattern = g.induced_mask(&subset) as usize;
            for (slot, &mi) in members.iter().enumerate() {
                let class_idx = family.members[mi].index;
                acc[slot] = acc[slot].clone() + tables.span[class_idx][pattern].clone();
            }
            if !census::next_combination(&mut subset, n) {
                break;
            }
        }
        for (slot, &mi) in members.iter().enumerate() {
            values[mi] = acc[slot].clone();
        }
    }
    Ok(SignedStats { family, values })
}

// ---------------------------------------------------------------------------
// Pair deltas S_ij
// ---------------------------------------------------------------------------

/// S_ij(F, G) = S(F, G + ij) - S(F, G - ij), computed directly as the sum
/// over placements of F that contain the pair ij of the product over the
/// remaining edges.
pub fn pair_delta<T: Scalar>(
    f: &SmallGraph,
    g: &Graph,
    p: &T,
    i: usize,
    j: usize,
) -> Result<T> {
    guard_loopless(g, "pair_delta")?;
    if i == j || i >= g.n() || j >= g.n() {
        return Err(Error::InvalidPair {
            i,
            j,
            reason: "pair delta needs two distinct vertices in range".into(),
        });
    }
    if f.k == 2 {
        // single placement, empty product
        return Ok(T::one());
    }
    let tables = class_tables(f.k, p)?;
    let deltas = pair_deltas_exact(g, &tables, i, j)?;
    Ok(deltas[f.index].clone())
}

/// Exact S_ij for every class on `tables.k` vertices at once.
///
/// Returns a vector indexed by catalog class index; classes with isolated
/// vertices get zero. Cost O(n^{k-2}) subset visits.
pub fn pair_deltas_exact<T: Scalar>(
    g: &Graph,
    tables: &ClassTables<T>,
    i: usize,
    j: usize,
) -> Result<Vec<T>> {
    let n = g.n();
    let k = tables.k;
    let nclasses = tables.delta.len();
    let mut acc = vec![T::zero(); nclasses];
    match k {
        3 => {
            for w in 0..n {
                if w == i || w == j {
                    continue;
                }
                let pattern =
                    (g.has_edge(i, w) as usize) | ((g.has_edge(j, w) as usize) << 1);
                for (c, table) in tables.delta.iter().enumerate() {
                    acc[c] = acc[c].clone() + table[pattern].clone();
                }
            }
        }
        4 => {
            return Ok(pair_deltas_exact_k4(g, tables, i, j));
        }
        5 => {
            let work = binomial(n as u64, 3);
            if work > DIRECT_SUBSET_CAP {
                return Err(Error::WorkCapExceeded {
                    op: "pair_deltas_exact",
                    required: work,
                    cap: DIRECT_SUBSET_CAP,
                });
            }
            let mut others: Vec<usize> = (0..n).filter(|&v| v != i && v != j).collect();
            others.sort_unstable();
            let m = others.len();
            for a in 0..m {
                for b in (a + 1)..m {
                    for c in (b + 1)..m {
                        let tuple = [i, j, others[a], others[b], others[c]];
                        let pattern = delta_pattern(g, &tuple);
                        for (ci, table) in tables.delta.iter().enumerate() {
                            acc[ci] = acc[ci].clone() + table[pattern].clone();
                        }
                    }
                }
            }
        }
        _ => {
            return Err(Error::UnsupportedOrder { k, min: 3, max: 5 });
        }
    }
    Ok(acc)
}

/// Pattern bits over the pairs of `tuple` skipping slot 0 (the ij pair).
fn delta_pattern(g: &Graph, tuple: &[usize]) -> usize {
    let slots = catalog::pair_slots(tuple.len());
    let mut pattern = 0usize;
    for (s, &(a, b)) in slots.iter().enumerate().skip(1) {
        if g.has_edge(tuple[a], tuple[b]) {
            pattern |= 1 << (s - 1);
        }
    }
    pattern
}

/// k = 4 fast path: for each third vertex w, bucket the fourth vertex by its
/// 3-bit pattern with word-level popcounts, then combine counts with table
/// rows. Each unordered {w, x} is visited twice, so the total is halved.
fn pair_deltas_exact_k4<T: Scalar>(
    g: &Graph,
    tables: &ClassTables<T>,
    i: usize,
    j: usize,
) -> Vec<T> {
    let n = g.n();
    let words = g.row(0).len();
    let nclasses = tables.delta.len();
    let mut acc = vec![T::zero(); nclasses];

    // pattern bit layout for tuple (i, j, w, x): slot1=(i,w) slot2=(j,w)
    // slot3=(i,x) slot4=(j,x) slot5=(w,x)
    let row_i = g.row(i);
    let row_j = g.row(j);
    let mut counts_by_prefix = vec![[0u64; 8]; 4];

    let mut valid = vec![u64::MAX; words];
    if n % 64 != 0 {
        valid[words - 1] = (1u64 << (n % 64)) - 1;
    }
    clear_bit(&mut valid, i);
    clear_bit(&mut valid, j);

    for w in 0..n {
        if w == i || w == j {
            continue;
        }
        let prefix = (g.has_edge(i, w) as usize) | ((g.has_edge(j, w) as usize) << 1);
        let row_w = g.row(w);
        let mut local = [0u64; 8];
        for wd in 0..words {
            let mut v = valid[wd];
            if w / 64 == wd {
                v &= !(1u64 << (w % 64));
            }
            if v == 0 {
                continue;
            }
            let a = row_i[wd];
            let b = row_j[wd];
            let c = row_w[wd];
            for (pat, slot) in local.iter_mut().enumerate() {
                let x = if pat & 1 == 1 { a } else { !a }
                    & if pat & 2 == 2 { b } else { !b }
                    & if pat & 4 == 4 { c } else { !c }
                    & v;
                *slot += x.count_ones() as u64;
            }
        }
        for (pat, &cnt) in local.iter().enumerate() {
            counts_by_prefix[prefix][pat] += cnt;
        }
    }

    // pattern = prefix bits (i-w, j-w) | (i-x, j-x, w-x) << 2
    let half = T::from_count(2);
    for (c, table) in tables.delta.iter().enumerate() {
        let mut sum = T::zero();
        for (prefix, counts) in counts_by_prefix.iter().enumerate() {
            for (pat3, &cnt) in counts.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                let pattern = prefix | (pat3 << 2);
                sum = sum + T::from_count(cnt) * table[pattern].clone();
            }
        }
        acc[c] = sum / half.clone();
    }
    acc
}

fn clear_bit(words: &mut [u64], bit: usize) {
    words[bit / 64] &= !(1u64 << (bit % 64));
}

/// Monte-Carlo estimate of S_ij for every class on `tables.k` vertices:
/// `samples` uniformly drawn (k-2)-subsets, scaled to the full subset count.
pub fn pair_deltas_sampled(
    g: &Graph,
    tables: &ClassTables<f64>,
    i: usize,
    j: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<f64> {
    let n = g.n();
    let k = tables.k;
    let others = k - 2;
    let nclasses = tables.delta.len();
    let mut acc = vec![0.0f64; nclasses];
    let mut tuple = vec![0usize; k];
    tuple[0] = i;
    tuple[1] = j;
    let mut chosen = vec![0usize; others];
    for _ in 0..samples {
        // rejection-sample `others` distinct vertices avoiding i and j
        let mut filled = 0;
        while filled < others {
            let v = rng.random_range(0..n);
            if v == i || v == j || chosen[..filled].contains(&v) {
                continue;
            }
            chosen[filled] = v;
            filled += 1;
        }
        chosen.sort_unstable();
        tuple[2..].copy_from_slice(&chosen);
        let pattern = delta_pattern(g, &tuple);
        for (c, table) in tables.delta.iter().enumerate() {
            acc[c] += table[pattern];
        }
    }
    let total_subsets = binomial((n - 2) as u64, others as u64) as f64;
    acc.iter()
        .map(|a| a / samples as f64 * total_subsets)
        .collect()
}

/// Monte-Carlo estimate of S(F, G) for every class on `tables.k` vertices.
pub fn signed_sampled(
    g: &Graph,
    tables: &ClassTables<f64>,
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<f64> {
    let n = g.n();
    let k = tables.k;
    let nclasses = tables.span.len();
    let mut acc = vec![0.0f64; nclasses];
    let mut chosen = vec![0usize; k];
    for _ in 0..samples {
        let mut filled = 0;
        while filled < k {
            let v = rng.random_range(0..n);
            if chosen[..filled].contains(&v) {
                continue;
            }
            chosen[filled] = v;
            filled += 1;
        }
        chosen.sort_unstable();
        let pattern = g.induced_mask(&chosen) as usize;
        for (c, table) in tables.span.iter().enumerate() {
            acc[c] += table[pattern];
        }
    }
    let total_subsets = binomial(n as u64, k as u64) as f64;
    acc.iter()
        .map(|a| a / samples as f64 * total_subsets)
        .collect()
}

// ---------------------------------------------------------------------------
// Decomposition coefficients
// ---------------------------------------------------------------------------

/// Coefficients of N(H, G) = E[N(H, G(n,p))] + sum_F a_{F,H}(n,p) S(F, G).
#[derive(Clone, Debug)]
pub struct DecompositionCoefficients {
    pub h: SmallGraph,
    pub n: usize,
    /// Polynomial form of E[N(H, G(n,p))] in p.
    pub constant: Poly,
    /// Per family member of F_{v(H)}, in family order.
    pub coeffs: Vec<(SmallGraph, Poly)>,
}

/// Derives the decomposition coefficients for H on graphs of order n.
pub fn decomposition_coefficients(h: &SmallGraph, n: usize) -> Result<DecompositionCoefficients> {
    let k = h.k;
    if n < k {
        return Err(Error::InvalidArgument(format!(
            "decomposition needs n >= v(H), got n={n}, v(H)={k}"
        )));
    }
    let cat = catalog::catalog(k)?;
    let family = catalog::family(k.max(3))?;
    let nslots = k * (k - 1) / 2;
    let total_pairs = nslots as u32;

    // all placements of H with vertex set exactly the fixed k-set
    let placements: Vec<u32> = (0..1u32 << nslots)
        .filter(|&m| cat.class_index(m) == h.index)
        .collect();
    debug_assert_eq!(
        placements.len() as u64,
        (1..=k as u64).product::<u64>() / h.aut
    );

    let mut constant = Poly::zero();
    for _ in &placements {
        constant.add_assign(&Poly::signed_power_product(
            h.edges,
            total_pairs - h.edges,
            false,
        ));
    }
    constant.scale(binomial(n as u64, k as u64) as i128);

    let mut coeffs = Vec::new();
    for f in family.members.iter().filter(|f| f.k <= k) {
        // the fixed F-placement occupies the first v(F) vertices of the
        // k-set; its slot indices coincide in both slot spaces
        let j0 = f.mask;
        let jk = f.k;
        let mut poly = Poly::zero();
        for &hm in &placements {
            let a = (j0 & hm).count_ones();
            let b = (j0 & !hm).count_ones();
            poly.add_assign(&Poly::signed_power_product(
                h.edges - a,
                total_pairs - h.edges - b,
                b % 2 == 1,
            ));
        }
        poly.scale(binomial((n - jk) as u64, (k - jk) as u64) as i128);
        coeffs.push((f.clone(), poly));
    }

    Ok(DecompositionCoefficients {
        h: h.clone(),
        n,
        constant,
        coeffs,
    })
}

impl DecompositionCoefficients {
    /// Residual N(H,G) - E[N] - sum a_F S(F,G); exactly zero on the rational
    /// backend for every graph.
    pub fn residual<T: Scalar>(&self, g: &Graph, p: &T, stats: &SignedStats<T>) -> Result<T> {
        let census = census::induced_census(g, self.h.k)?;
        let mut acc = T::from_count(census.count(&self.h)) - self.constant.eval(p);
        for (f, poly) in &self.coeffs {
            if poly.is_zero() {
                continue;
            }
            acc = acc - poly.eval(p) * stats.get(f).clone();
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Fast signed stats: invert the decomposition against the census
// ---------------------------------------------------------------------------

/// Signed statistics recovered from exact censuses via the decomposition,
/// solved bottom-up by vertex count. Needs census order up to k, so k <= 4
/// runs at large n; k = 5 falls back to the brute census and its caps.
pub fn signed_stats_fast<T: Scalar>(g: &Graph, p: &T, k: usize) -> Result<SignedStats<T>> {
    guard_loopless(g, "signed_stats_fast")?;
    let family = catalog::family(k)?;
    let n = g.n();
    let mut values = vec![T::zero(); family.members.len()];

    for v in 2..=k {
        let unknowns: Vec<usize> = family
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.k == v)
            .map(|(i, _)| i)
            .collect();
        if unknowns.is_empty() {
            continue;
        }
        if v == 2 {
            values[unknowns[0]] = s_k2(g, p);
            continue;
        }
        let census_v: CensusResult = census::induced_census(g, v)?;
        let classes = catalog::enumerate_classes(v)?;
        // rows: one equation per v-vertex class H
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(classes.len());
        let mut rhs: Vec<T> = Vec::with_capacity(classes.len());
        for h in classes {
            let dc = decomposition_coefficients(h, n)?;
            let mut b = T::from_count(census_v.count(h)) - dc.constant.eval(p);
            let mut row = vec![T::zero(); unknowns.len()];
            for (f, poly) in &dc.coeffs {
                if poly.is_zero() {
                    continue;
                }
                let fam_pos = family
                    .members
                    .iter()
                    .position(|m| m.k == f.k && m.mask == f.mask)
                    .expect("coefficient class is in the family");
                if f.k < v {
                    b = b - poly.eval(p) * values[fam_pos].clone();
                } else {
                    let col = unknowns
                        .iter()
                        .position(|&u| u == fam_pos)
                        .expect("v-vertex family member");
                    row[col] = poly.eval(p);
                }
            }
            rows.push(row);
            rhs.push(b);
        }
        let solution = solve_overdetermined(rows, rhs)?;
        for (col, &fam_pos) in unknowns.iter().enumerate() {
            values[fam_pos] = solution[col].clone();
        }
    }
    Ok(SignedStats { family, values })
}

/// Gaussian elimination with partial pivoting on a consistent overdetermined
/// system; returns the unique solution.
fn solve_overdetermined<T: Scalar>(mut rows: Vec<Vec<T>>, mut rhs: Vec<T>) -> Result<Vec<T>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let nrows = rows.len();
    let mut pivot_rows = Vec::with_capacity(ncols);
    let mut used = vec![false; nrows];
    for col in 0..ncols {
        // best remaining pivot by magnitude
        let mut best: Option<(usize, T)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            let mag = row[col].abs();
            if best.as_ref().map(|(_, m)| &mag > m).unwrap_or(true) {
                best = Some((r, mag));
            }
        }
        let (pr, mag) = best.expect("more rows than columns");
        if mag.is_zero() {
            return Err(Error::InvalidArgument(
                "singular decomposition system".into(),
            ));
        }
        used[pr] = true;
        pivot_rows.push(pr);
        let pivot_val = rows[pr][col].clone();
        let pivot_row: Vec<T> = rows[pr].clone();
        let pivot_rhs = rhs[pr].clone();
        for r in 0..nrows {
            if r == pr || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / pivot_val.clone();
            for c in col..ncols {
                rows[r][c] = rows[r][c].clone() - factor.clone() * pivot_row[c].clone();
            }
            rhs[r] = rhs[r].clone() - factor * pivot_rhs.clone();
        }
    }
    let mut solution = vec![T::zero(); ncols];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        solution[col] = rhs[pr].clone() / rows[pr][col].clone();
    }
    Ok(solution)
}

// ---------------------------------------------------------------------------
// Quadratic identities
// ---------------------------------------------------------------------------

/// Residuals of the two exact quadratic identities.
#[derive(Clone, Debug)]
pub struct QuadraticReport<T> {
    /// e(G)^2 - sum over F with 2 <= v(F) <= 4 of alpha_F N(F, G).
    pub edge_square_residual: T,
    /// S(K2)^2 - [p(1-p)C(n,2) + (1-2p)S(K2) + 2 S(P2) + 2 S(2K2)].
    pub signed_square_residual: T,
    pub s_k2: T,
}

/// alpha_F: ordered pairs (e, f) of edges of F with e ∪ f = V(F); e = f
/// allowed (which only covers V(F) when F = K2).
pub fn alpha_coefficient(f: &SmallGraph) -> u64 {
    let edges = f.edge_list();
    let full = (1u32 << f.k) - 1;
    let mut count = 0;
    for a in &edges {
        for b in &edges {
            let cover = 1u32 << a.0 | 1 << a.1 | 1 << b.0 | 1 << b.1;
            if cover == full {
                count += 1;
            }
        }
    }
    count
}

/// Verifies the edge-square decomposition and the S(K2)^2 identity exactly.
pub fn quadratic_identities_check<T: Scalar>(g: &Graph, p: &T) -> Result<QuadraticReport<T>> {
    guard_loopless(g, "quadratic_identities_check")?;
    if g.n() < 4 {
        return Err(Error::InvalidArgument(
            "quadratic identities need n >= 4".into(),
        ));
    }
    let m = g.edge_count();
    let mut rhs: i128 = 0;
    for v in 2..=4usize {
        let census = census::induced_census(g, v)?;
        for class in catalog::enumerate_classes(v)? {
            let alpha = alpha_coefficient(class);
            if alpha > 0 {
                rhs += alpha as i128 * census.count(class) as i128;
            }
        }
    }
    let edge_square_residual = T::from_int((m as i128) * (m as i128) - rhs);

    let stats = signed_stats(g, p, 4)?;
    let s2 = stats.by_name("K2").clone();
    let q = T::one() - p.clone();
    let one = T::one();
    let two = T::from_count(2);
    let expect = p.clone() * q * T::from_int(binomial(g.n() as u64, 2) as i128)
        + (one - two.clone() * p.clone()) * s2.clone()
        + two.clone() * stats.by_name("P2").clone()
        + two * stats.by_name("2K2").clone();
    let signed_square_residual = s2.clone() * s2.clone() - expect;

    Ok(QuadraticReport {
        edge_square_residual,
        signed_square_residual,
        s_k2: s2,
    })
}
