//! Dense graph representation and the elementary operations every statistic
//! builds on: seeded G(n,p) sampling, complementation, single-pair flips and
//! the nearest-integer distance D(n,p).
//!
//! Adjacency is a row-major packed bitset. All kernels downstream are dense
//! O(n^2)-O(n^3) scans at n up to a few thousand, so there is no sparse path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num_traits::Signed;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::numeric::{binomial, EdgeProbability};

/// RNG seed. Identical seed and parameters reproduce the identical graph
/// within one build of the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed(pub u64);

/// Undirected graph on `n` vertices with optional loops, packed row-major.
///
/// Values are immutable in spirit: statistic kernels take `&Graph`, and the
/// flip phases own their working copy and mutate it through `toggle_pair`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    adj: Vec<u64>,
    /// Loop bitset; present exactly when the graph is loop-enabled.
    loops: Option<Vec<u64>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .field("loops", &self.loops_enabled().then(|| self.loop_count()))
            .finish()
    }
}

impl Graph {
    /// Edgeless graph.
    pub fn empty(n: usize, loops_enabled: bool) -> Self {
        assert!(n >= 1, "graph needs at least one vertex");
        let words_per_row = n.div_ceil(64);
        Self {
            n,
            words_per_row,
            adj: vec![0; n * words_per_row],
            loops: loops_enabled.then(|| vec![0; words_per_row]),
        }
    }

    /// Complete graph (every loop present too, in loop mode).
    pub fn complete(n: usize, loops_enabled: bool) -> Self {
        let mut g = Self::empty(n, loops_enabled);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set_pair(i, j, true);
            }
            if loops_enabled {
                g.set_loop(i, true);
            }
        }
        g
    }

    /// Loopless graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n, false);
        for &(i, j) in edges {
            g.set_pair(i, j, true);
        }
        g
    }

    /// Seeded Erdős–Rényi sample: every unordered pair (and every loop when
    /// `loops` is set) present independently with probability p.
    ///
    /// Pairs are drawn in lexicographic order from a ChaCha stream keyed by
    /// the seed, so the outcome is a pure function of (n, p, seed, loops).
    pub fn sample_gnp(n: usize, p: &EdgeProbability, seed: Seed, loops: bool) -> Self {
        assert!(n >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
        let pv = p.value();
        let mut g = Self::empty(n, loops);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(pv) {
                    g.set_pair(i, j, true);
                }
            }
        }
        if loops {
            for v in 0..n {
                if rng.random_bool(pv) {
                    g.set_loop(v, true);
                }
            }
        }
        g
    }

    /// Uniformly random loopless graph; used by oracle and test harnesses.
    pub fn random_uniform(n: usize, rng: &mut SmallRng) -> Self {
        let mut g = Self::empty(n, false);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(0.5) {
                    g.set_pair(i, j, true);
                }
            }
        }
        g
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loops_enabled(&self) -> bool {
        self.loops.is_some()
    }

    #[inline(always)]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    #[inline(always)]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.adj[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline(always)]
    pub fn has_loop(&self, v: usize) -> bool {
        match &self.loops {
            Some(w) => w[v / 64] >> (v % 64) & 1 == 1,
            None => false,
        }
    }

    pub fn set_pair(&mut self, i: usize, j: usize, present: bool) {
        assert!(i != j && i < self.n && j < self.n, "invalid pair ({i},{j})");
        let wpr = self.words_per_row;
        let (wi, bi) = (i * wpr + j / 64, j % 64);
        let (wj, bj) = (j * wpr + i / 64, i % 64);
        if present {
            self.adj[wi] |= 1 << bi;
            self.adj[wj] |= 1 << bj;
        } else {
            self.adj[wi] &= !(1 << bi);
            self.adj[wj] &= !(1 << bj);
        }
    }

    pub fn set_loop(&mut self, v: usize, present: bool) {
        let w = self
            .loops
            .as_mut()
            .expect("set_loop requires a loop-enabled graph");
        if present {
            w[v / 64] |= 1 << (v % 64);
        } else {
            w[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Toggles pair membership in place. Single-owner mutation for the flip
    /// phases; everything else should go through [`Graph::flip_pair`].
    #[inline]
    pub fn toggle_pair(&mut self, i: usize, j: usize) {
        let present = self.has_edge(i, j);
        self.set_pair(i, j, !present);
    }

    /// Returns a copy with the membership of pair ij toggled.
    pub fn flip_pair(&self, i: usize, j: usize) -> Result<Self, Error> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { v: i, n: self.n });
        }
        if j >= self.n {
            return Err(Error::VertexOutOfRange { v: j, n: self.n });
        }
        if i == j {
            return Err(Error::InvalidPair {
                i,
                j,
                reason: "pair endpoints must differ in loopless flips".into(),
            });
        }
        let mut g = self.clone();
        g.toggle_pair(i, j);
        Ok(g)
    }

    /// Complement: every non-loop pair toggled; in loop mode every loop
    /// toggled as well (loopless vertices become loops and vice versa).
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n, self.loops_enabled());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.has_edge(i, j) {
                    g.set_pair(i, j, true);
                }
            }
        }
        if self.loops_enabled() {
            for v in 0..self.n {
                if !self.has_loop(v) {
                    g.set_loop(v, true);
                }
            }
        }
        g
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> u64 {
        let total: u64 = self.adj.iter().map(|w| w.count_ones() as u64).sum();
        total / 2
    }

    pub fn loop_count(&self) -> u64 {
        match &self.loops {
            Some(w) => w.iter().map(|x| x.count_ones() as u64).sum(),
            None => 0,
        }
    }

    /// |N(i) ∩ N(j)| excluding i and j themselves (automatic for loopless
    /// rows: bit i is never set in row i).
    #[inline]
    pub fn codegree(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Vertices adjacent to exactly one of i, j (excluding i and j).
    #[inline]
    pub fn exclusive_neighbors(&self, i: usize, j: usize) -> usize {
        let raw: usize = self
            .row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum();
        // When ij is an edge, bits i and j each appear once in the xor.
        if self.has_edge(i, j) {
            raw - 2
        } else {
            raw
        }
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Neighbors of v above a threshold vertex, in increasing order.
    pub fn neighbors_above(&self, v: usize, above: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let row = self.row(v);
        for (wi, &word) in row.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                let u = wi * 64 + b;
                if u > above {
                    out.push(u);
                }
            }
        }
        out
    }

    /// Induced edge bitmask of the vertex subset `vs`, using the pair slot
    /// order shared with the small-graph catalog: slot(i<j) = C(j,2) + i over
    /// positions within `vs`.
    pub fn induced_mask(&self, vs: &[usize]) -> u32 {
        let mut mask = 0u32;
        let mut slot = 0;
        for b in 1..vs.len() {
            for a in 0..b {
                if self.has_edge(vs[a], vs[b]) {
                    mask |= 1 << slot;
                }
                slot += 1;
            }
        }
        mask
    }
}

/// D(n, p): distance from p * C(n,2) to the nearest integer, in [0, 1/2].
pub fn nearest_integer_distance(n: usize, p: &EdgeProbability) -> f64 {
    assert!(n >= 2);
    match p.exact() {
        Some(r) => {
            crate::numeric::Scalar::to_f64_lossy(&nearest_integer_distance_exact(n, r))
        }
        None => {
            let x = p.value() * binomial(n as u64, 2) as f64;
            (x - x.round()).abs()
        }
    }
}

/// Exact D(n, p) for rational p.
pub fn nearest_integer_distance_exact(n: usize, p: &BigRational) -> BigRational {
    assert!(n >= 2);
    let x = p * BigRational::from_integer(BigInt::from(binomial(n as u64, 2)));
    let nearest = (&x + BigRational::new(BigInt::from(1), BigInt::from(2))).floor();
    (x - nearest).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Scalar;

    fn p(s: &str) -> EdgeProbability {
        s.parse().unwrap()
    }

    #[test]
    fn single_vertex_has_no_pairs() {
        let g = Graph::sample_gnp(1, &p("0.5"), Seed(0), false);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.n(), 1);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = Graph::sample_gnp(100, &p("0.5"), Seed(42), false);
        let b = Graph::sample_gnp(100, &p("0.5"), Seed(42), false);
        assert_eq!(a, b);
        let c = Graph::sample_gnp(100, &p("0.5"), Seed(43), false);
        assert_ne!(a, c);
    }

    #[test]
    fn sample_edge_count_in_support() {
        let g = Graph::sample_gnp(3, &p("0.999999"), Seed(7), false);
        assert!(g.edge_count() <= 3);
    }

    #[test]
    fn complement_is_an_involution() {
        for seed in 0..5u64 {
            let g = Graph::sample_gnp(17, &p("0.4"), Seed(seed), false);
            assert_eq!(g.complement().complement(), g);
            let h = Graph::sample_gnp(9, &p("0.4"), Seed(seed), true);
            assert_eq!(h.complement().complement(), h);
        }
    }

    #[test]
    fn complement_of_empty_is_complete() {
        let e4 = Graph::empty(4, false);
        assert_eq!(e4.complement(), Graph::complete(4, false));

        let e3 = Graph::empty(3, true);
        let c = e3.complement();
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.loop_count(), 3);
    }

    #[test]
    fn edge_counts_complementary() {
        let g = Graph::sample_gnp(23, &p("0.3"), Seed(5), false);
        assert_eq!(
            g.edge_count() + g.complement().edge_count(),
            binomial(23, 2) as u64
        );
        let h = Graph::sample_gnp(23, &p("0.3"), Seed(5), true);
        assert_eq!(
            h.edge_count() + h.loop_count() + h.complement().edge_count()
                + h.complement().loop_count(),
            binomial(23, 2) as u64 + 23
        );
    }

    #[test]
    fn flip_changes_edge_count_by_one() {
        let g = Graph::empty(5, false);
        let g1 = g.flip_pair(0, 3).unwrap();
        assert_eq!(g1.edge_count(), 1);
        assert_eq!(g1.flip_pair(0, 3).unwrap(), g);

        let k3 = Graph::complete(3, false);
        let p2 = k3.flip_pair(1, 2).unwrap();
        assert_eq!(p2.edge_count(), 2);
        assert_eq!(p2.degree(0), 2);
    }

    #[test]
    fn flip_rejects_diagonal_and_out_of_range() {
        let g = Graph::empty(4, false);
        assert!(matches!(
            g.flip_pair(2, 2),
            Err(Error::InvalidPair { .. })
        ));
        assert!(matches!(
            g.flip_pair(0, 9),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn codegree_and_exclusive_counts() {
        // Path 0-1-2-3 plus edge 0-2.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]);
        assert_eq!(g.codegree(0, 2), 1); // vertex 1
        assert_eq!(g.codegree(0, 3), 1); // vertex 2
        assert_eq!(g.exclusive_neighbors(0, 2), 1); // vertex 3 (0's nbr 1,2 / 2's nbr 0,1,3)
        assert_eq!(g.exclusive_neighbors(1, 3), 1); // 1: {0,2}, 3: {2} -> {0}
    }

    #[test]
    fn distance_to_nearest_integer() {
        assert_eq!(nearest_integer_distance(4, &p("1/2")), 0.0);
        assert_eq!(nearest_integer_distance(5, &p("0.55")), 0.5);
        assert_eq!(nearest_integer_distance(1000, &p("1/2")), 0.0);
        let d = nearest_integer_distance_exact(5, &"3/7".parse::<EdgeProbability>().unwrap().as_rational());
        // 3/7 * 10 = 30/7 ~ 4.2857 -> distance 2/7
        assert_eq!(d, BigRational::new(BigInt::from(2), BigInt::from(7)));
        assert!(d.to_f64_lossy() <= 0.5);
    }

    #[test]
    fn empirical_density_within_four_sigma() {
        // Binomial model over 1000 samples at n=50, p=0.3.
        let n = 50usize;
        let pairs = binomial(n as u64, 2) as f64;
        let samples = 1000usize;
        let mut total_edges = 0u64;
        for s in 0..samples {
            total_edges += Graph::sample_gnp(n, &p("0.3"), Seed(s as u64), false).edge_count();
        }
        let density = total_edges as f64 / (pairs * samples as f64);
        let sigma = (0.3 * 0.7 / (pairs * samples as f64)).sqrt();
        assert!(
            (density - 0.3).abs() < 4.0 * sigma,
            "density {density} outside 4 sigma of 0.3"
        );
    }

    #[test]
    fn induced_mask_uses_catalog_slot_order() {
        let k3 = Graph::complete(3, false);
        assert_eq!(k3.induced_mask(&[0, 1, 2]), 0b111);
        let g = Graph::from_edges(4, &[(1, 3)]);
        // subset (1,2,3): pairs in slot order (1,2),(1,3),(2,3) -> only (1,3)
        assert_eq!(g.induced_mask(&[1, 2, 3]), 0b010);
    }
}
