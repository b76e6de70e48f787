//! Catalog of all graphs on 2..=5 vertices up to isomorphism.
//!
//! Canonical form is the minimum edge bitmask over all k! vertex relabelings;
//! with k <= 5 that is at most 120 permutations, so no general isomorphism
//! machinery is needed. The catalogs are built once and cached.
//!
//! Pair slots use the column order slot(i < j) = C(j,2) + i, shared with
//! `Graph::induced_mask` and the graph6 bit order.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::Error;

pub const MIN_K: usize = 2;
pub const MAX_K: usize = 5;

/// One isomorphism class of k-vertex graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    /// Vertex count, 2..=5.
    pub k: usize,
    /// Canonical edge bitmask (minimum over relabelings).
    pub mask: u32,
    /// Number of automorphisms; divides k!.
    pub aut: u64,
    /// Edge count.
    pub edges: u32,
    /// Minimum degree; 0 iff some vertex is isolated.
    pub min_degree: u32,
    /// Conventional name (K2, P2, C4, paw, ...) or a hex fallback.
    pub name: String,
    /// Position within the k-catalog (classes sorted by canonical mask).
    pub index: usize,
}

impl SmallGraph {
    /// Edge list of the canonical representative.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let slots = pair_slots(self.k);
        (0..slots.len())
            .filter(|&s| self.mask >> s & 1 == 1)
            .map(|s| slots[s])
            .collect()
    }
}

/// The family F_k: all classes on 2..=k vertices without isolated vertices.
#[derive(Clone, Debug)]
pub struct Family {
    pub k: usize,
    pub members: Vec<SmallGraph>,
}

pub struct Catalog {
    pub k: usize,
    pub classes: Vec<SmallGraph>,
    /// mask -> class index, over all 2^C(k,2) labeled graphs.
    class_of: Vec<u16>,
    /// Per permutation of [k], the induced slot permutation.
    perm_slot_maps: Vec<Vec<u8>>,
}

impl Catalog {
    #[inline]
    pub fn class_index(&self, mask: u32) -> usize {
        self.class_of[mask as usize] as usize
    }

    #[inline]
    pub fn class_of_mask(&self, mask: u32) -> &SmallGraph {
        &self.classes[self.class_index(mask)]
    }

    /// mask -> class index lookup table for hot census loops.
    pub fn lut(&self) -> &[u16] {
        &self.class_of
    }

    pub fn canonical_mask(&self, mask: u32) -> u32 {
        self.perm_slot_maps
            .iter()
            .map(|map| relabel(mask, map))
            .min()
            .expect("at least the identity permutation")
    }

    /// True when every vertex is covered by some edge of `mask`.
    pub fn spans(&self, mask: u32) -> bool {
        let slots = pair_slots(self.k);
        let mut covered = 0u32;
        for (s, &(i, j)) in slots.iter().enumerate() {
            if mask >> s & 1 == 1 {
                covered |= 1 << i | 1 << j;
            }
        }
        covered == (1 << self.k) - 1
    }
}

fn relabel(mask: u32, slot_map: &[u8]) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    while m != 0 {
        let s = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << slot_map[s];
    }
    out
}

/// Slot order (i, j) with i < j: (0,1), (0,2), (1,2), (0,3), ...
pub fn pair_slots(k: usize) -> &'static [(usize, usize)] {
    static SLOTS: OnceLock<Vec<Vec<(usize, usize)>>> = OnceLock::new();
    let all = SLOTS.get_or_init(|| {
        (0..=MAX_K)
            .map(|k| {
                let mut v = Vec::new();
                for j in 1..k {
                    for i in 0..j {
                        v.push((i, j));
                    }
                }
                v
            })
            .collect()
    });
    &all[k]
}

#[inline]
pub fn slot_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    heap_permute(&mut items, k, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
    if m == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..m {
        heap_permute(items, m - 1, out);
        if m % 2 == 0 {
            items.swap(i, m - 1);
        } else {
            items.swap(0, m - 1);
        }
    }
}

fn build_catalog(k: usize) -> Catalog {
    let slots = pair_slots(k);
    let nslots = slots.len();
    let perms = permutations(k);
    let perm_slot_maps: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| {
            slots
                .iter()
                .map(|&(i, j)| slot_index(p[i], p[j]) as u8)
                .collect()
        })
        .collect();

    let total = 1usize << nslots;
    let mut canonical = vec![u32::MAX; total];
    for mask in 0..total as u32 {
        canonical[mask as usize] = perm_slot_maps
            .iter()
            .map(|map| relabel(mask, map))
            .min()
            .unwrap();
    }

    let names = named_masks(k, &perm_slot_maps);

    let mut reps: Vec<u32> = canonical
        .iter()
        .copied()
        .enumerate()
        .filter(|&(m, c)| m as u32 == c)
        .map(|(m, _)| m as u32)
        .collect();
    reps.sort_unstable();

    let mut classes = Vec::with_capacity(reps.len());
    for (index, &mask) in reps.iter().enumerate() {
        let aut = perm_slot_maps
            .iter()
            .filter(|map| relabel(mask, map) == mask)
            .count() as u64;
        let mut degrees = vec![0u32; k];
        for (s, &(i, j)) in slots.iter().enumerate() {
            if mask >> s & 1 == 1 {
                degrees[i] += 1;
                degrees[j] += 1;
            }
        }
        let name = names
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| format!("g{k}_{mask:03x}"));
        classes.push(SmallGraph {
            k,
            mask,
            aut,
            edges: mask.count_ones(),
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            name,
            index,
        });
    }

    let mut class_of = vec![0u16; total];
    let index_of: HashMap<u32, u16> = classes
        .iter()
        .map(|c| (c.mask, c.index as u16))
        .collect();
    for mask in 0..total {
        class_of[mask] = index_of[&canonical[mask]];
    }

    Catalog {
        k,
        classes,
        class_of,
        perm_slot_maps,
    }
}

fn mask_of_edges(edges: &[(usize, usize)]) -> u32 {
    edges
        .iter()
        .fold(0u32, |m, &(i, j)| m | 1 << slot_index(i, j))
}

/// Conventional names, keyed by canonical mask.
fn named_masks(k: usize, perm_slot_maps: &[Vec<u8>]) -> HashMap<u32, String> {
    let canon = |edges: &[(usize, usize)]| -> u32 {
        let m = mask_of_edges(edges);
        perm_slot_maps
            .iter()
            .map(|map| relabel(m, map))
            .min()
            .unwrap()
    };

    let mut named: Vec<(String, Vec<(usize, usize)>)> = Vec::new();
    let mut add = |name: &str, edges: &[(usize, usize)]| {
        named.push((name.to_string(), edges.to_vec()));
    };

    match k {
        2 => {
            add("E2", &[]);
            add("K2", &[(0, 1)]);
        }
        3 => {
            add("E3", &[]);
            add("K2+K1", &[(0, 1)]);
            add("P2", &[(0, 1), (0, 2)]);
            add("K3", &[(0, 1), (0, 2), (1, 2)]);
        }
        4 => {
            add("E4", &[]);
            add("K2+2K1", &[(0, 1)]);
            add("2K2", &[(0, 1), (2, 3)]);
            add("P2+K1", &[(0, 1), (0, 2)]);
            add("P3", &[(0, 1), (1, 2), (2, 3)]);
            add("K1_3", &[(0, 1), (0, 2), (0, 3)]);
            add("K3+K1", &[(0, 1), (0, 2), (1, 2)]);
            add("C4", &[(0, 1), (1, 2), (2, 3), (0, 3)]);
            add("paw", &[(0, 1), (0, 2), (1, 2), (0, 3)]);
            add("diamond", &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
            add(
                "K4",
                &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            );
        }
        5 => {
            add("E5", &[]);
            add("K2+3K1", &[(0, 1)]);
            add("2K2+K1", &[(0, 1), (2, 3)]);
            add("P2+2K1", &[(0, 1), (0, 2)]);
            add("P3+K1", &[(0, 1), (1, 2), (2, 3)]);
            add("K1_3+K1", &[(0, 1), (0, 2), (0, 3)]);
            add("K3+2K1", &[(0, 1), (0, 2), (1, 2)]);
            add("C4+K1", &[(0, 1), (1, 2), (2, 3), (0, 3)]);
            add("paw+K1", &[(0, 1), (0, 2), (1, 2), (0, 3)]);
            add("diamond+K1", &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
            add(
                "K4+K1",
                &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            );
            add("P2+K2", &[(0, 1), (1, 2), (3, 4)]);
            add("P4", &[(0, 1), (1, 2), (2, 3), (3, 4)]);
            add("chair", &[(0, 1), (1, 2), (2, 3), (1, 4)]);
            add("K1_4", &[(0, 1), (0, 2), (0, 3), (0, 4)]);
            add("K3+K2", &[(0, 1), (0, 2), (1, 2), (3, 4)]);
            add("C5", &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
            add("banner", &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]);
            add("bull", &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]);
            add("cricket", &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)]);
            add("tadpole", &[(0, 1), (0, 2), (1, 2), (0, 3), (3, 4)]);
            add(
                "butterfly",
                &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
            );
            add(
                "house",
                &[(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)],
            );
            add("K2_3", &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
            add(
                "kite",
                &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
            );
            add(
                "gem",
                &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)],
            );
            add(
                "W4",
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (0, 3),
                    (0, 4),
                    (1, 4),
                    (2, 4),
                    (3, 4),
                ],
            );
            add(
                "K5-e",
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (1, 2),
                    (1, 3),
                    (1, 4),
                    (2, 3),
                    (2, 4),
                ],
            );
            add(
                "K5",
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (1, 2),
                    (1, 3),
                    (1, 4),
                    (2, 3),
                    (2, 4),
                    (3, 4),
                ],
            );
        }
        _ => {}
    }

    let mut out = HashMap::new();
    for (name, edges) in named {
        let c = canon(&edges);
        let prev = out.insert(c, name.clone());
        assert!(
            prev.is_none(),
            "name collision: {name} and {} map to the same class",
            prev.unwrap()
        );
    }
    out
}

/// Cached catalog for k in 2..=5.
pub fn catalog(k: usize) -> Result<&'static Catalog, Error> {
    if !(MIN_K..=MAX_K).contains(&k) {
        return Err(Error::UnsupportedOrder {
            k,
            min: MIN_K,
            max: MAX_K,
        });
    }
    static CATALOGS: OnceLock<Vec<Catalog>> = OnceLock::new();
    let all = CATALOGS.get_or_init(|| (MIN_K..=MAX_K).map(build_catalog).collect());
    Ok(&all[k - MIN_K])
}

/// Every isomorphism class on exactly k vertices, sorted by canonical mask.
pub fn enumerate_classes(k: usize) -> Result<&'static [SmallGraph], Error> {
    Ok(&catalog(k)?.classes)
}

/// The family F_k of isolated-vertex-free classes on 2..=k vertices,
/// ordered by (vertex count, canonical mask).
pub fn family(k: usize) -> Result<Family, Error> {
    if !(3..=MAX_K).contains(&k) {
        return Err(Error::UnsupportedOrder { k, min: 3, max: MAX_K });
    }
    let mut members = Vec::new();
    for v in MIN_K..=k {
        for class in enumerate_classes(v)? {
            if class.min_degree >= 1 {
                members.push(class.clone());
            }
        }
    }
    Ok(Family { k, members })
}

/// Looks a class up by conventional name (or hex fallback name).
pub fn by_name(name: &str) -> Option<&'static SmallGraph> {
    for k in MIN_K..=MAX_K {
        for class in enumerate_classes(k).unwrap() {
            if class.name == name {
                return Some(class);
            }
        }
    }
    None
}

/// N(F, F'): number of vertex subsets of F' that induce a copy of F.
pub fn count_induced_small(f: &SmallGraph, host: &SmallGraph) -> u64 {
    assert!(f.k <= host.k, "need v(F) <= v(F')");
    let sub_cat = catalog(f.k).unwrap();
    let mut count = 0;
    for subset in subsets_of_size(host.k, f.k) {
        let induced = induced_submask(host.mask, host.k, &subset);
        if sub_cat.canonical_mask(induced) == f.mask {
            count += 1;
        }
    }
    count
}

/// Number of spanning subgraphs of `host` isomorphic to `f` (same order,
/// edge subsets, isolated vertices allowed on both sides).
pub fn spanning_copies(f: &SmallGraph, host: &SmallGraph) -> u64 {
    assert_eq!(f.k, host.k);
    let cat = catalog(host.k).unwrap();
    let mut count = 0;
    let mut sub = host.mask;
    // iterate all submasks of host.mask, including 0
    loop {
        if cat.canonical_mask(sub) == f.mask {
            count += 1;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & host.mask;
    }
    count
}

/// Ordered pairs of vertex-disjoint edges in the class.
pub fn ordered_disjoint_edge_pairs(g: &SmallGraph) -> u64 {
    let edges = g.edge_list();
    let mut count = 0;
    for a in &edges {
        for b in &edges {
            if a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 {
                count += 1;
            }
        }
    }
    count
}

/// Induced mask of `subset` positions within a k-vertex mask.
pub fn induced_submask(mask: u32, k: usize, subset: &[usize]) -> u32 {
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    let _ = k;
    let mut out = 0u32;
    let mut slot = 0;
    for b in 1..subset.len() {
        for a in 0..b {
            if mask >> slot_index(subset[a], subset[b]) & 1 == 1 {
                out |= 1 << slot;
            }
            slot += 1;
        }
    }
    out
}

/// All size-`r` subsets of 0..n in lexicographic order.
pub fn subsets_of_size(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < r - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, r, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::binomial;

    #[test]
    fn class_counts_match_known_values() {
        assert_eq!(enumerate_classes(2).unwrap().len(), 2);
        assert_eq!(enumerate_classes(3).unwrap().len(), 4);
        assert_eq!(enumerate_classes(4).unwrap().len(), 11);
        assert_eq!(enumerate_classes(5).unwrap().len(), 34);
        assert!(enumerate_classes(1).is_err());
        assert!(enumerate_classes(6).is_err());
    }

    #[test]
    fn orbit_counting_identity() {
        // sum over classes of k!/|Aut| equals the number of labeled graphs
        for k in 2..=5 {
            let fact: u64 = (1..=k as u64).product();
            let total: u64 = enumerate_classes(k)
                .unwrap()
                .iter()
                .map(|c| fact / c.aut)
                .sum();
            assert_eq!(total, 1 << binomial(k as u64, 2), "k={k}");
        }
    }

    #[test]
    fn automorphism_counts_divide_factorial() {
        for k in 2..=5 {
            let fact: u64 = (1..=k as u64).product();
            for c in enumerate_classes(k).unwrap() {
                assert_eq!(fact % c.aut, 0, "{}", c.name);
            }
        }
    }

    #[test]
    fn known_automorphism_counts() {
        assert_eq!(by_name("K3").unwrap().aut, 6);
        assert_eq!(by_name("P2").unwrap().aut, 2);
        assert_eq!(by_name("C4").unwrap().aut, 8);
        assert_eq!(by_name("K4").unwrap().aut, 24);
        assert_eq!(by_name("2K2").unwrap().aut, 8);
        assert_eq!(by_name("C5").unwrap().aut, 10);
        assert_eq!(by_name("K5").unwrap().aut, 120);
        assert_eq!(by_name("K1_3").unwrap().aut, 6);
    }

    #[test]
    fn family_sizes() {
        let f3 = family(3).unwrap();
        assert_eq!(
            f3.members.iter().map(|m| m.name.as_str()).collect::<Vec<_>>(),
            vec!["K2", "P2", "K3"]
        );
        assert_eq!(family(4).unwrap().members.len(), 10);
        assert_eq!(family(5).unwrap().members.len(), 33);
        assert!(family(2).is_err());
        for m in family(5).unwrap().members {
            assert!(m.min_degree >= 1, "{} has an isolated vertex", m.name);
        }
    }

    #[test]
    fn all_k4_classes_are_named() {
        for c in enumerate_classes(4).unwrap() {
            assert!(
                !c.name.starts_with("g4_"),
                "class {:#x} lacks a conventional name",
                c.mask
            );
        }
    }

    #[test]
    fn induced_counts_in_small_hosts() {
        let k2 = by_name("K2").unwrap();
        let p2 = by_name("P2").unwrap();
        let k4 = by_name("K4").unwrap();
        let c4 = by_name("C4").unwrap();
        let k3 = by_name("K3").unwrap();

        assert_eq!(count_induced_small(k2, k4), 6);
        assert_eq!(count_induced_small(p2, k3), 0); // induced, not subgraph
        assert_eq!(count_induced_small(k2, c4), 4);
        assert_eq!(count_induced_small(p2, c4), 4);
        assert_eq!(count_induced_small(k3, k4), 4);
        assert_eq!(count_induced_small(k3, c4), 0);
    }

    #[test]
    fn each_subset_induces_exactly_one_class() {
        // sum over k-classes F of N(F, host) = C(v(host), k)
        for host in enumerate_classes(5).unwrap() {
            for k in 2..=4usize {
                let total: u64 = enumerate_classes(k)
                    .unwrap()
                    .iter()
                    .map(|f| count_induced_small(f, host))
                    .sum();
                assert_eq!(total as u128, binomial(5, k as u64));
            }
        }
    }

    #[test]
    fn spanning_copies_examples() {
        let e4 = by_name("E4").unwrap();
        let k4 = by_name("K4").unwrap();
        let c4 = by_name("C4").unwrap();
        let two_k2 = by_name("2K2").unwrap();
        // K4 contains 3 spanning C4's and 3 spanning perfect matchings
        assert_eq!(spanning_copies(c4, k4), 3);
        assert_eq!(spanning_copies(two_k2, k4), 3);
        assert_eq!(spanning_copies(e4, k4), 1);
        assert_eq!(spanning_copies(k4, k4), 1);
    }

    #[test]
    fn disjoint_edge_pair_counts() {
        assert_eq!(ordered_disjoint_edge_pairs(by_name("K2").unwrap()), 0);
        assert_eq!(ordered_disjoint_edge_pairs(by_name("P2").unwrap()), 0);
        assert_eq!(ordered_disjoint_edge_pairs(by_name("2K2").unwrap()), 2);
        assert_eq!(ordered_disjoint_edge_pairs(by_name("C4").unwrap()), 4);
        assert_eq!(ordered_disjoint_edge_pairs(by_name("K4").unwrap()), 6);
    }

    #[test]
    fn canonical_masks_are_fixed_points() {
        for k in 2..=5 {
            let cat = catalog(k).unwrap();
            for c in &cat.classes {
                assert_eq!(cat.canonical_mask(c.mask), c.mask);
                assert_eq!(cat.class_index(c.mask), c.index);
            }
        }
    }
}
