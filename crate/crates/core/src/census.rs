//! Exact induced-subgraph counts N(F, G), their expectations under G(n,p),
//! and the deviation statistics u_F and u_k.
//!
//! Two counting paths exist and are cross-checked in tests: brute-force
//! subset enumeration (any k <= 5, the oracle), and an algebraic path for
//! k <= 4 built from degrees, codegrees, triangles and one triple-
//! intersection scan, good for n in the thousands. Counts are exact
//! integers either way; the numeric backend only enters through
//! expectations.

use rayon::prelude::*;

use crate::catalog::{self, SmallGraph};
use crate::error::Error;
use crate::graph::Graph;
use crate::numeric::{binomial, falling, Scalar};
use crate::Result;

/// Exact induced counts for all k-vertex classes, in catalog order.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub k: usize,
    pub counts: Vec<u64>,
}

impl CensusResult {
    pub fn count(&self, class: &SmallGraph) -> u64 {
        debug_assert_eq!(class.k, self.k);
        self.counts[class.index]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// (name, count) pairs in catalog order, for reports.
    pub fn named(&self) -> Vec<(String, u64)> {
        catalog::enumerate_classes(self.k)
            .expect("census result has a valid k")
            .iter()
            .map(|c| (c.name.clone(), self.counts[c.index]))
            .collect()
    }
}

/// Per-class deviations |N(F,G) - E[N(F,G(n,p))]| and their maximum.
#[derive(Clone, Debug)]
pub struct DeviationResult<T> {
    pub k: usize,
    /// u_F per class, catalog order.
    pub u_f: Vec<T>,
    pub u_k: T,
    /// Catalog index of the class attaining the maximum.
    pub argmax: usize,
}

impl<T: Scalar> DeviationResult<T> {
    pub fn argmax_class(&self) -> &'static SmallGraph {
        &catalog::enumerate_classes(self.k).expect("valid k")[self.argmax]
    }
}

fn guard_census_input(g: &Graph, k: usize) -> Result<()> {
    if g.loops_enabled() && g.loop_count() > 0 {
        return Err(Error::LoopsUnsupported {
            op: "induced_census",
        });
    }
    if !(2..=catalog::MAX_K).contains(&k) {
        return Err(Error::UnsupportedOrder {
            k,
            min: 2,
            max: catalog::MAX_K,
        });
    }
    if k > g.n() {
        return Err(Error::InvalidArgument(format!(
            "census order k={k} exceeds graph order n={}",
            g.n()
        )));
    }
    Ok(())
}

/// Exact induced census. Dispatches to the algebraic path for k <= 4 and to
/// subset enumeration for k = 5.
pub fn induced_census(g: &Graph, k: usize) -> Result<CensusResult> {
    guard_census_input(g, k)?;
    match k {
        2..=4 => induced_census_fast(g, k),
        _ => induced_census_bruteforce(g, k),
    }
}

/// Work cap for the brute-force path (number of subsets).
const BRUTE_SUBSET_CAP: u128 = 200_000_000;

/// Brute-force census by enumerating all C(n,k) vertex subsets.
pub fn induced_census_bruteforce(g: &Graph, k: usize) -> Result<CensusResult> {
    guard_census_input(g, k)?;
    let n = g.n();
    let subsets = binomial(n as u64, k as u64);
    if subsets > BRUTE_SUBSET_CAP {
        return Err(Error::WorkCapExceeded {
            op: "induced_census_bruteforce",
            required: subsets,
            cap: BRUTE_SUBSET_CAP,
        });
    }
    let cat = catalog::catalog(k)?;
    let lut = cat.lut();
    let mut counts = vec![0u64; cat.classes.len()];

    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mask = g.induced_mask(&subset);
        counts[lut[mask as usize] as usize] += 1;
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    Ok(CensusResult { k, counts })
}

/// Advances `subset` to the next lexicographic k-combination of 0..n.
pub fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Algebraic census for k <= 4; exact for every n >= k.
pub fn induced_census_fast(g: &Graph, k: usize) -> Result<CensusResult> {
    guard_census_input(g, k)?;
    match k {
        2 => {
            let cat = catalog::catalog(2)?;
            let m = g.edge_count();
            let mut counts = vec![0u64; cat.classes.len()];
            counts[cat.class_index(0b1)] = m;
            counts[cat.class_index(0b0)] = binomial(g.n() as u64, 2) as u64 - m;
            Ok(CensusResult { k, counts })
        }
        3 => census3(g),
        4 => census4(g),
        _ => Err(Error::UnsupportedOrder { k, min: 2, max: 4 }),
    }
}

struct EdgeStats {
    m: u64,
    degrees: Vec<u64>,
    /// 3 * (number of triangles)
    codegree_edge_sum: i128,
    /// sum over edges of C(codeg, 2): spanning diamond count
    codegree_edge_choose2: i128,
    /// sum over edges of (d_u - 1)(d_v - 1)
    deg_product_sum: i128,
    /// per-vertex triangle counts
    tri_at: Vec<u64>,
}

fn edge_stats(g: &Graph) -> EdgeStats {
    let n = g.n();
    let degrees: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    let m: u64 = degrees.iter().sum::<u64>() / 2;

    let rows: Vec<(i128, i128, i128, Vec<u64>)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut codeg_sum = 0i128;
            let mut codeg_c2 = 0i128;
            let mut dd = 0i128;
            let mut tri2 = vec![0u64; n]; // twice-counted per-vertex triangle increments
            for v in g.neighbors_above(u, u) {
                let c = g.codegree(u, v) as i128;
                codeg_sum += c;
                codeg_c2 += c * (c - 1) / 2;
                dd += (degrees[u] as i128 - 1) * (degrees[v] as i128 - 1);
                tri2[u] += c as u64;
                tri2[v] += c as u64;
            }
            (codeg_sum, codeg_c2, dd, tri2)
        })
        .collect();

    let mut codegree_edge_sum = 0i128;
    let mut codegree_edge_choose2 = 0i128;
    let mut deg_product_sum = 0i128;
    let mut tri_twice = vec![0u64; n];
    for (cs, c2, dd, tri2) in rows {
        codegree_edge_sum += cs;
        codegree_edge_choose2 += c2;
        deg_product_sum += dd;
        for (v, t) in tri2.iter().enumerate() {
            tri_twice[v] += t;
        }
    }
    let tri_at = tri_twice.iter().map(|t| t / 2).collect();

    EdgeStats {
        m,
        degrees,
        codegree_edge_sum,
        codegree_edge_choose2,
        deg_product_sum,
        tri_at,
    }
}

fn census3(g: &Graph) -> Result<CensusResult> {
    let n = g.n() as u64;
    let stats = edge_stats(g);
    let triangles = (stats.codegree_edge_sum / 3) as u64;
    // 2-edge paths as subgraphs: sum over centers of C(deg, 2)
    let paths2: u64 = stats
        .degrees
        .iter()
        .map(|&d| (d * d.saturating_sub(1)) / 2)
        .sum();

    let cat = catalog::catalog(3)?;
    let mut counts = vec![0u64; cat.classes.len()];
    let ind_k3 = triangles;
    let ind_p2 = paths2 - 3 * triangles;
    let ind_edge = stats.m * (n - 2) - 2 * ind_p2 - 3 * ind_k3;
    let ind_empty = binomial(n, 3) as u64 - ind_edge - ind_p2 - ind_k3;

    counts[cat.class_index(0b111)] = ind_k3;
    counts[cat.class_index(cat.canonical_mask(0b011))] = ind_p2;
    counts[cat.class_index(cat.canonical_mask(0b001))] = ind_edge;
    counts[cat.class_index(0)] = ind_empty;
    Ok(CensusResult { k: 3, counts })
}

fn census4(g: &Graph) -> Result<CensusResult> {
    let n = g.n();
    let stats = edge_stats(g);
    let m = stats.m as i128;
    let triangles = stats.codegree_edge_sum / 3;

    // C(codeg, 2) summed over all unordered pairs (adjacent or not): twice
    // the number of spanning 4-cycles, one count per diagonal.
    let allpair_codeg_c2: i128 = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut acc = 0i128;
            for v in (u + 1)..n {
                let c = g.codegree(u, v) as i128;
                acc += c * (c - 1) / 2;
            }
            acc
        })
        .sum();

    // K4 count: scan u < v < w < x over edges and common neighborhoods.
    let k4: i128 = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut acc = 0i128;
            let row_u = g.row(u);
            for v in g.neighbors_above(u, u) {
                let row_v = g.row(v);
                for w in common_above(row_u, row_v, v) {
                    let row_w = g.row(w);
                    acc += common_above_count3(row_u, row_v, row_w, w);
                }
            }
            acc
        })
        .sum();

    // Spanning-subgraph counts on 4-point sets.
    let nn = n as i128;
    let deg_c2: i128 = stats
        .degrees
        .iter()
        .map(|&d| (d as i128) * (d as i128 - 1) / 2)
        .sum();
    let deg_c3: i128 = stats
        .degrees
        .iter()
        .map(|&d| {
            let d = d as i128;
            d * (d - 1) * (d - 2) / 6
        })
        .sum();
    let paw: i128 = stats
        .tri_at
        .iter()
        .zip(&stats.degrees)
        .map(|(&t, &d)| t as i128 * (d as i128 - 2))
        .sum();

    let idx = |name: &str| -> usize { catalog::by_name(name).unwrap().index };
    let cat = catalog::catalog(4)?;
    let nclasses = cat.classes.len();
    let mut spanning = vec![0i128; nclasses];
    spanning[idx("E4")] = binomial(n as u64, 4) as i128;
    spanning[idx("K2+2K1")] = m * binomial(n as u64 - 2, 2) as i128;
    spanning[idx("2K2")] = m * (m - 1) / 2 - deg_c2;
    spanning[idx("P2+K1")] = deg_c2 * (nn - 3);
    spanning[idx("P3")] = stats.deg_product_sum - 3 * triangles;
    spanning[idx("K1_3")] = deg_c3;
    spanning[idx("K3+K1")] = triangles * (nn - 3);
    spanning[idx("C4")] = allpair_codeg_c2 / 2;
    spanning[idx("paw")] = paw;
    spanning[idx("diamond")] = stats.codegree_edge_choose2;
    spanning[idx("K4")] = k4;

    // Moebius inversion: spanning(F) = sum over hosts of M(F, host) ind(host),
    // with M triangular by edge count and unit diagonal.
    let mut order: Vec<usize> = (0..nclasses).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cat.classes[i].edges));
    let mut ind = vec![0i128; nclasses];
    for &fi in &order {
        let f = &cat.classes[fi];
        let mut v = spanning[fi];
        for &hi in &order {
            let host = &cat.classes[hi];
            if host.edges > f.edges {
                v -= catalog::spanning_copies(f, host) as i128 * ind[hi];
            }
        }
        ind[fi] = v;
    }

    let counts: Vec<u64> = ind
        .iter()
        .map(|&v| {
            debug_assert!(v >= 0, "negative induced count in fast census");
            v as u64
        })
        .collect();
    Ok(CensusResult { k: 4, counts })
}

/// Set bits of (a & b) strictly above `above`.
fn common_above(a: &[u64], b: &[u64], above: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let start_word = above / 64;
    for wi in start_word..a.len() {
        let mut w = a[wi] & b[wi];
        if wi == start_word {
            w &= u64::MAX.checked_shl((above % 64) as u32 + 1).unwrap_or(0);
        }
        while w != 0 {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            out.push(wi * 64 + bit);
        }
    }
    out
}

/// |a & b & c| restricted to indices strictly above `above`.
fn common_above_count3(a: &[u64], b: &[u64], c: &[u64], above: usize) -> i128 {
    let start_word = above / 64;
    let mut acc = 0u32;
    for wi in start_word..a.len() {
        let mut w = a[wi] & b[wi] & c[wi];
        if wi == start_word {
            w &= u64::MAX.checked_shl((above % 64) as u32 + 1).unwrap_or(0);
        }
        acc += w.count_ones();
    }
    acc as i128
}

/// Scalar exponentiation by a small non-negative power.
pub fn pow_scalar<T: Scalar>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// E[N(F, G(n,p))] = n(n-1)...(n-k+1) / |Aut(F)| * p^e(F) (1-p)^(C(k,2)-e(F)).
pub fn expected_count<T: Scalar>(f: &SmallGraph, n: usize, p: &T) -> T {
    assert!(n >= f.k, "expected_count needs n >= v(F)");
    let fact: u64 = (1..=f.k as u64).product();
    // falling(n,k)/|Aut| = C(n,k) * (k!/|Aut|), an integer
    let placements = binomial(n as u64, f.k as u64) * (fact / f.aut) as u128;
    debug_assert_eq!(placements, falling(n as u64, f.k as u64) / f.aut as u128);
    let pairs = (f.k * (f.k - 1) / 2) as u32;
    let q = T::one() - p.clone();
    T::from_int(placements as i128) * pow_scalar(p, f.edges) * pow_scalar(&q, pairs - f.edges)
}

/// Deviation u_F = |N(F,G) - E[N(F,G(n,p))]| per k-class, and u_k = max.
pub fn deviation<T: Scalar>(g: &Graph, p: &T, k: usize) -> Result<DeviationResult<T>> {
    let census = induced_census(g, k)?;
    deviation_from_census(&census, g.n(), p)
}

/// Deviations from an already-computed census.
pub fn deviation_from_census<T: Scalar>(
    census: &CensusResult,
    n: usize,
    p: &T,
) -> Result<DeviationResult<T>> {
    let classes = catalog::enumerate_classes(census.k)?;
    let mut u_f = Vec::with_capacity(classes.len());
    for class in classes {
        let expected = expected_count(class, n, p);
        let observed = T::from_count(census.counts[class.index]);
        u_f.push((observed - expected).abs());
    }
    let mut argmax = 0;
    for i in 1..u_f.len() {
        if u_f[i] > u_f[argmax] {
            argmax = i;
        }
    }
    Ok(DeviationResult {
        k: census.k,
        u_k: u_f[argmax].clone(),
        u_f,
        argmax,
    })
}

/// Left and right side of the step-up identity
/// (n-k) N(F,G) = sum over (k+1)-classes F' of N(F,F') N(F',G)
/// for one class F with v(F) = k < n.
pub fn step_up_sides(f: &SmallGraph, g: &Graph) -> Result<(u128, u128)> {
    let k = f.k;
    if k + 1 > catalog::MAX_K {
        return Err(Error::UnsupportedOrder {
            k: k + 1,
            min: 2,
            max: catalog::MAX_K,
        });
    }
    let census_k = induced_census(g, k)?;
    let census_k1 = induced_census(g, k + 1)?;
    let lhs = (g.n() - k) as u128 * census_k.count(f) as u128;
    let rhs: u128 = catalog::enumerate_classes(k + 1)?
        .iter()
        .map(|fp| catalog::count_induced_small(f, fp) as u128 * census_k1.count(fp) as u128)
        .sum();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Seed;
    use crate::numeric::EdgeProbability;
    use num::rational::BigRational;

    fn prob(s: &str) -> EdgeProbability {
        s.parse().unwrap()
    }

    fn rational(s: &str) -> BigRational {
        prob(s).as_rational()
    }

    #[test]
    fn census_of_k3() {
        let g = Graph::complete(3, false);
        let c = induced_census(&g, 3).unwrap();
        assert_eq!(c.count(catalog::by_name("K3").unwrap()), 1);
        assert_eq!(c.total(), 1);
    }

    #[test]
    fn census_of_c4() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let c = induced_census(&g, 3).unwrap();
        assert_eq!(c.count(catalog::by_name("P2").unwrap()), 4);
        assert_eq!(c.count(catalog::by_name("K3").unwrap()), 0);
        assert_eq!(c.count(catalog::by_name("K2+K1").unwrap()), 0);
        assert_eq!(c.count(catalog::by_name("E3").unwrap()), 0);
        assert_eq!(c.total(), 4);

        let c4 = induced_census(&g, 4).unwrap();
        assert_eq!(c4.count(catalog::by_name("C4").unwrap()), 1);
        assert_eq!(c4.total(), 1);
    }

    #[test]
    fn census_rejects_bad_inputs() {
        let mut loopy = Graph::empty(6, true);
        loopy.set_loop(0, true);
        assert!(matches!(
            induced_census(&loopy, 3),
            Err(Error::LoopsUnsupported { .. })
        ));
        let g = Graph::empty(3, false);
        assert!(induced_census(&g, 4).is_err());
        assert!(induced_census(&g, 1).is_err());
        assert!(induced_census(&g, 6).is_err());
    }

    #[test]
    fn census_totals_are_binomials() {
        let p = prob("0.4");
        for seed in 0..5u64 {
            let g = Graph::sample_gnp(11, &p, Seed(seed), false);
            for k in 2..=5 {
                let c = induced_census(&g, k).unwrap();
                assert_eq!(c.total() as u128, binomial(11, k as u64));
            }
        }
    }

    #[test]
    fn fast_census_agrees_with_bruteforce() {
        // oracle-equivalence contract: 500 random graphs at n=25, k=4
        let p = prob("0.5");
        for seed in 0..500u64 {
            let g = Graph::sample_gnp(25, &p, Seed(seed), false);
            let fast = induced_census_fast(&g, 4).unwrap();
            let brute = induced_census_bruteforce(&g, 4).unwrap();
            assert_eq!(fast.counts, brute.counts, "seed {seed}");
        }
        // and k=3 on a smaller batch
        for seed in 0..50u64 {
            let g = Graph::sample_gnp(19, &prob("0.3"), Seed(seed), false);
            assert_eq!(
                induced_census_fast(&g, 3).unwrap().counts,
                induced_census_bruteforce(&g, 3).unwrap().counts
            );
        }
    }

    #[test]
    fn expected_count_formulas() {
        let k3 = catalog::by_name("K3").unwrap();
        let k2 = catalog::by_name("K2").unwrap();
        let p2 = catalog::by_name("P2").unwrap();

        let p = rational("1/2");
        // E[N(K3, G(3,p))] = p^3
        assert_eq!(expected_count(k3, 3, &p), rational("1/8"));
        // E[N(K2, G(n,p))] = p C(n,2)
        let e = expected_count(k2, 10, &p);
        assert_eq!(e, BigRational::new(45.into(), 2.into()));
        // E[N(P2, G(3, 1/2))] = 3 * (1/2)^2 * (1/2) = 3/8
        assert_eq!(expected_count(p2, 3, &p), rational("3/8"));

        // float backend agrees
        let ef: f64 = expected_count(p2, 3, &0.5f64);
        assert!((ef - 0.375).abs() < 1e-15);
    }

    #[test]
    fn deviation_of_balanced_edge_count_is_zero() {
        // any 5-vertex graph with 5 edges at p=1/2 has u_2 = 0
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let d = deviation(&g, &rational("1/2"), 2).unwrap();
        assert!(num_traits::Zero::is_zero(&d.u_k));
    }

    #[test]
    fn deviation_of_k5_at_half() {
        let g = Graph::complete(5, false);
        let d = deviation(&g, &0.5f64, 2).unwrap();
        assert_eq!(d.u_k, 5.0);
        // both classes deviate by 5 here; argmax keeps the lowest index
        assert!(["E2", "K2"].contains(&d.argmax_class().name.as_str()));
    }

    #[test]
    fn deviation_of_k3_at_half() {
        let g = Graph::complete(3, false);
        let d = deviation(&g, &rational("1/2"), 3).unwrap();
        assert_eq!(d.u_k, rational("7/8"));
        let u_p2 = &d.u_f[catalog::by_name("P2").unwrap().index];
        assert_eq!(u_p2, &rational("3/8"));
    }

    #[test]
    fn complement_symmetry_of_deviation() {
        let p = rational("1/3");
        let q = BigRational::from_integer(1.into()) - p.clone();
        for seed in 0..10u64 {
            let g = Graph::sample_gnp(9, &prob("0.45"), Seed(seed), false);
            for k in 2..=4 {
                let d = deviation(&g, &p, k).unwrap();
                let dc = deviation(&g.complement(), &q, k).unwrap();
                assert_eq!(d.u_k, dc.u_k, "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn step_up_identity_on_random_graphs() {
        let p = prob("0.5");
        for seed in 0..20u64 {
            let n = 6 + (seed as usize % 7);
            let g = Graph::sample_gnp(n, &p, Seed(seed), false);
            for k in 2..=4usize {
                for f in catalog::enumerate_classes(k).unwrap() {
                    let (lhs, rhs) = step_up_sides(f, &g).unwrap();
                    assert_eq!(lhs, rhs, "n={n} seed={seed} class={}", f.name);
                }
            }
        }
    }

    #[test]
    fn bruteforce_work_cap() {
        let g = Graph::empty(5000, false);
        assert!(matches!(
            induced_census_bruteforce(&g, 5),
            Err(Error::WorkCapExceeded { .. })
        ));
    }
}
