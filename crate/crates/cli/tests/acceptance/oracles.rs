//! Reference implementations written straight from the definitions. They
//! share no code with the library beyond plain edge lists.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

pub type Edge = Vec<usize>;

pub fn edge_set(edges: &[Edge]) -> HashSet<Edge> {
    edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e
        })
        .collect()
}

/// All `(i+1)`-subsets of edges.
pub fn skeleton(edges: &[Edge], i: usize) -> Vec<Edge> {
    let set: BTreeSet<Edge> = edges
        .iter()
        .flat_map(|e| e.iter().copied().sorted().combinations(i + 1))
        .collect();
    set.into_iter().collect()
}

/// Degeneracy of a uniform hypergraph: the largest minimum degree met while
/// repeatedly deleting a vertex of minimum degree.
pub fn degeneracy(n: usize, edges: &[Edge]) -> usize {
    let mut alive = vec![true; n];
    let mut live_edges: Vec<&Edge> = edges.iter().collect();
    let mut best = 0;
    for _ in 0..n {
        let mut deg = vec![0usize; n];
        for e in &live_edges {
            for &v in e.iter() {
                deg[v] += 1;
            }
        }
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| deg[v])
            .unwrap();
        best = best.max(deg[v]);
        alive[v] = false;
        live_edges.retain(|e| !e.contains(&v));
    }
    best
}

pub fn skeletal_degeneracy(n: usize, edges: &[Edge], i: usize) -> usize {
    degeneracy(n, &skeleton(edges, i))
}

/// `e` with its vertex in `part` replaced by `x`.
pub fn substitute(e: &[usize], part_of: &[usize], part: usize, x: usize) -> Edge {
    let mut f: Edge = e
        .iter()
        .map(|&v| if part_of[v] == part { x } else { v })
        .collect();
    f.sort_unstable();
    f
}

/// Edges surviving one dependent random choice round against `part`.
pub fn drc_survivors(
    edges: &[Edge],
    part_of: &[usize],
    part: usize,
    xs: &[usize],
) -> BTreeSet<Edge> {
    let set = edge_set(edges);
    set.iter()
        .filter(|e| {
            xs.iter()
                .all(|&x| set.contains(&substitute(e, part_of, part, x)))
        })
        .cloned()
        .collect()
}

/// Edges `e` whose whole box `∏_j ({e_j} ∪ X_j)` lies in the edge set.
pub fn product_survivors(
    edges: &[Edge],
    part_of: &[usize],
    tuples: &[Vec<usize>],
) -> BTreeSet<Edge> {
    let set = edge_set(edges);
    let k = tuples.len();
    set.iter()
        .filter(|e| {
            let mut coord = vec![0; k];
            for &v in e.iter() {
                coord[part_of[v]] = v;
            }
            (0..k)
                .map(|j| {
                    std::iter::once(coord[j])
                        .chain(tuples[j].iter().copied())
                        .collect::<Vec<_>>()
                })
                .multi_cartesian_product()
                .all(|f| set.contains(&f.into_iter().sorted().collect::<Vec<_>>()))
        })
        .cloned()
        .collect()
}

/// `(a, d)`-vertex-extending to `part`: every set `S` of at most `d`
/// vertices outside `part` spans edges-minus-a-vertex with at least `a`
/// common extensions in `part`, or spans none.
pub fn is_vertex_extending(
    edges: &[Edge],
    part_of: &[usize],
    part: usize,
    a: usize,
    d: usize,
) -> bool {
    let set = edge_set(edges);
    let n = part_of.len();
    let outside: Vec<usize> = (0..n).filter(|&v| part_of[v] != part).collect();
    let inside: Vec<usize> = (0..n).filter(|&v| part_of[v] == part).collect();
    let stubs: HashSet<Edge> = set
        .iter()
        .map(|e| e.iter().copied().filter(|&v| part_of[v] != part).collect())
        .collect();
    for size in 0..=d.min(outside.len()) {
        for s in outside.iter().copied().combinations(size) {
            let spanned: Vec<&Edge> = stubs
                .iter()
                .filter(|f| f.iter().all(|v| s.contains(v)))
                .collect();
            if spanned.is_empty() {
                continue;
            }
            let ext = inside
                .iter()
                .filter(|&&x| {
                    spanned.iter().all(|f| {
                        let mut g = (*f).clone();
                        g.push(x);
                        g.sort_unstable();
                        set.contains(&g)
                    })
                })
                .count();
            if ext < a {
                return false;
            }
        }
    }
    true
}

/// Conclusions (i)-(iv) of the pattern partition, from scratch. `level_of`
/// is zero-based; `d` is the degree parameter.
pub fn h_partition_holds(
    n: usize,
    edges: &[Edge],
    part_of: &[usize],
    level_of: &[usize],
    d: usize,
) -> bool {
    if n == 0 {
        return true;
    }
    let levels = level_of.iter().max().map_or(0, |&t| t + 1);
    // (i) 2^T ≤ n, and T ≤ 1 for a single vertex
    if n == 1 {
        if levels > 1 {
            return false;
        }
    } else if levels >= 64 || (1u128 << levels) > n as u128 {
        return false;
    }
    // (ii) |W_i^(j)| ≤ 2^{-i} n
    let mut sizes: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..n {
        *sizes.entry((level_of[v], part_of[v])).or_default() += 1;
    }
    if sizes
        .iter()
        .any(|(&(i, _), &s)| (s as u128) << i > n as u128)
    {
        return false;
    }
    // (iii) holds whenever every vertex has one level, which `level_of` encodes
    // (iv) at most 4d neighbours in the same or later levels
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for e in edges {
        for (&u, &v) in e.iter().tuple_combinations() {
            nbrs[u].insert(v);
            nbrs[v].insert(u);
        }
    }
    (0..n).all(|v| {
        nbrs[v]
            .iter()
            .filter(|&&u| level_of[u] >= level_of[v])
            .count()
            <= 4 * d
    })
}

/// Whether the graph contains a 4-cycle: two vertices with two common
/// neighbours.
pub fn has_c4(n: usize, edges: &[Edge]) -> bool {
    let mut adj = vec![vec![false; n]; n];
    for e in edges {
        adj[e[0]][e[1]] = true;
        adj[e[1]][e[0]] = true;
    }
    (0..n)
        .tuple_combinations()
        .any(|(a, b)| (0..n).filter(|&c| adj[a][c] && adj[b][c]).count() >= 2)
}

/// Whether the graph contains the octahedron `K_{2,2,2}`: six vertices
/// missing at most a perfect matching.
pub fn has_octahedron(n: usize, edges: &[Edge]) -> bool {
    let mut adj = vec![vec![false; n]; n];
    for e in edges {
        adj[e[0]][e[1]] = true;
        adj[e[1]][e[0]] = true;
    }
    let deg: Vec<usize> = (0..n)
        .map(|v| adj[v].iter().filter(|&&b| b).count())
        .collect();
    let cand: Vec<usize> = (0..n).filter(|&v| deg[v] >= 4).collect();
    cand.iter().copied().combinations(6).any(|s| {
        s.iter()
            .all(|&v| s.iter().filter(|&&u| u != v && !adj[v][u]).count() <= 1)
            && s.iter()
                .tuple_combinations()
                .filter(|(&a, &b)| adj[a][b])
                .count()
                >= 12
    })
}

/// Largest number of edges in a triangle-free graph on `n` vertices, over
/// every labelled graph.
pub fn ex_triangle_exhaustive(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let triangles: Vec<[usize; 3]> = (0..n)
        .tuple_combinations()
        .map(|(a, b, c)| {
            let idx = |x: usize, y: usize| pairs.iter().position(|&p| p == (x, y)).unwrap();
            [idx(a, b), idx(a, c), idx(b, c)]
        })
        .collect();
    (0u32..1 << pairs.len())
        .filter(|mask| {
            triangles
                .iter()
                .all(|t| t.iter().any(|&i| mask & (1 << i) == 0))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Number of 2-colorings of `K_n` with no monochromatic triangle.
pub fn triangle_free_colorings(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let idx = |x: usize, y: usize| pairs.iter().position(|&p| p == (x, y)).unwrap();
    let triangles: Vec<[usize; 3]> = (0..n)
        .tuple_combinations()
        .map(|(a, b, c)| [idx(a, b), idx(a, c), idx(b, c)])
        .collect();
    (0u32..1 << pairs.len())
        .filter(|mask| {
            triangles.iter().all(|t| {
                let bits: Vec<u32> = t.iter().map(|&i| (mask >> i) & 1).collect();
                !(bits[0] == bits[1] && bits[1] == bits[2])
            })
        })
        .count()
}

/// Replays a pulled-back copy: injective, and every pattern edge maps to a
/// `k`-set of color `color`. `colors` is indexed by lexicographic rank.
pub fn monochromatic_copy(
    n: usize,
    k: usize,
    colors: &[usize],
    pattern: &[Edge],
    map: &[usize],
    color: usize,
) -> bool {
    let rank: HashMap<Edge, usize> = (0..n)
        .combinations(k)
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    map.iter().all_unique()
        && pattern.iter().all(|e| {
            let img: Edge = e.iter().map(|&x| map[x]).sorted().collect();
            rank.get(&img).is_some_and(|&r| colors[r] == color)
        })
}

/// Whether the map sends the pattern injectively and edge-preservingly.
pub fn is_embedding(pattern: &[Edge], host: &[Edge], map: &[usize]) -> bool {
    let set = edge_set(host);
    map.iter().all_unique()
        && pattern
            .iter()
            .all(|e| set.contains(&e.iter().map(|&x| map[x]).sorted().collect::<Vec<_>>()))
}
