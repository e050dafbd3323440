//! Poisson Voronoi tessellation: the random planar street-network model
//! used by the synthetic Dijkstra experiments.
//!
//! `N ~ Poisson(n)` seed points are dropped uniformly in the unit square;
//! their Delaunay triangulation (incremental Bowyer-Watson against a far
//! super-triangle) is dualized into the Voronoi diagram, whose edges are
//! clipped to the square. Edge weights are Euclidean lengths, emitted in
//! both directions; the largest connected component is returned.

use std::collections::HashMap;

use super::graph::Graph;
use crate::instrument::Rng;

/// Far corners of the super-triangle; circumcenters of triangles touching
/// them land far outside the unit square and get clipped away.
const SUPER: f64 = 1.0e3;

type Point = (f64, f64);

/// Poisson sample via Knuth's product-of-uniforms method, chunked so the
/// running product never underflows.
pub fn sample_poisson(lambda: f64, rng: &mut Rng) -> u64 {
    assert!(lambda >= 0.0);
    let mut remaining = lambda;
    let mut total = 0u64;
    while remaining > 0.0 {
        let chunk = remaining.min(500.0);
        remaining -= chunk;
        let limit = (-chunk).exp();
        let mut product = 1.0;
        let mut count = 0u64;
        loop {
            product *= rng.f64();
            if product <= limit {
                break;
            }
            count += 1;
        }
        total += count;
    }
    total
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Is `p` strictly inside the circumcircle of triangle `(a, b, c)`?
fn in_circumcircle(a: Point, b: Point, c: Point, p: Point) -> bool {
    let (ax, ay) = (a.0 - p.0, a.1 - p.1);
    let (bx, by) = (b.0 - p.0, b.1 - p.1);
    let (cx, cy) = (c.0 - p.0, c.1 - p.1);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    if orient(a, b, c) > 0.0 {
        det > 0.0
    } else {
        det < 0.0
    }
}

fn circumcenter(a: Point, b: Point, c: Point) -> Option<Point> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    if d.abs() < 1e-12 {
        return None;
    }
    let a2 = a.0 * a.0 + a.1 * a.1;
    let b2 = b.0 * b.0 + b.1 * b.1;
    let c2 = c.0 * c.0 + c.1 * c.1;
    let ux = (a2 * (b.1 - c.1) + b2 * (c.1 - a.1) + c2 * (a.1 - b.1)) / d;
    let uy = (a2 * (c.0 - b.0) + b2 * (a.0 - c.0) + c2 * (b.0 - a.0)) / d;
    Some((ux, uy))
}

/// Incremental Bowyer-Watson over `points`, which must already contain the
/// three super-triangle vertices at indices 0..3. Returns index triples.
fn bowyer_watson(points: &[Point]) -> Vec<[usize; 3]> {
    let mut triangles: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for (p_idx, &p) in points.iter().enumerate().skip(3) {
        let mut bad = Vec::new();
        for (t_idx, t) in triangles.iter().enumerate() {
            if in_circumcircle(points[t[0]], points[t[1]], points[t[2]], p) {
                bad.push(t_idx);
            }
        }
        // boundary of the cavity: edges of bad triangles seen exactly once
        let mut edge_count: HashMap<(usize, usize), u32> = HashMap::new();
        for &t_idx in &bad {
            let t = triangles[t_idx];
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (u.min(v), u.max(v));
                *edge_count.entry(key).or_insert(0) += 1;
            }
        }
        for &t_idx in bad.iter().rev() {
            triangles.swap_remove(t_idx);
        }
        let mut boundary: Vec<(usize, usize)> = edge_count
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(e, _)| e)
            .collect();
        boundary.sort_unstable();
        for (u, v) in boundary {
            triangles.push([u, v, p_idx]);
        }
    }
    triangles
}

/// Liang-Barsky clip of segment `p..q` to the unit square.
fn clip_unit_square(p: Point, q: Point) -> Option<(Point, Point)> {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for (num, den) in [
        (p.0, -dx),       // left
        (1.0 - p.0, dx),  // right
        (p.1, -dy),       // bottom
        (1.0 - p.1, dy),  // top
    ] {
        if den == 0.0 {
            if num < 0.0 {
                return None;
            }
            continue;
        }
        let t = num / den;
        if den < 0.0 {
            // entering the half-plane
            if t > t1 {
                return None;
            }
            t0 = t0.max(t);
        } else {
            // leaving it
            if t < t0 {
                return None;
            }
            t1 = t1.min(t);
        }
    }
    let a = (p.0 + t0 * dx, p.1 + t0 * dy);
    let b = (p.0 + t1 * dx, p.1 + t1 * dy);
    Some((a, b))
}

fn quantize(p: Point) -> (i64, i64) {
    ((p.0 * 1e9).round() as i64, (p.1 * 1e9).round() as i64)
}

/// Generates a PVT graph targeting `n` expected seeds. Draws with fewer
/// than three seeds (or a degenerate diagram) are resampled.
pub fn gen_pvt(n: usize, rng: &mut Rng) -> Graph {
    assert!(n >= 4, "PVT target size must be at least 4");
    loop {
        let seeds = sample_poisson(n as f64, rng);
        if seeds < 3 {
            continue;
        }
        let mut points: Vec<Point> =
            vec![(-SUPER, -SUPER), (2.0 * SUPER, -SUPER), (0.5, 2.0 * SUPER)];
        for _ in 0..seeds {
            points.push((rng.f64(), rng.f64()));
        }
        let triangles = bowyer_watson(&points);

        // Voronoi dual: an edge between the circumcenters of every pair of
        // adjacent triangles, clipped to the square.
        let centers: Vec<Option<Point>> = triangles
            .iter()
            .map(|t| circumcenter(points[t[0]], points[t[1]], points[t[2]]))
            .collect();
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (t_idx, t) in triangles.iter().enumerate() {
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                by_edge.entry((u.min(v), u.max(v))).or_default().push(t_idx);
            }
        }

        let mut node_ids: HashMap<(i64, i64), usize> = HashMap::new();
        let mut coords: Vec<Point> = Vec::new();
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        let mut node_of = |p: Point, coords: &mut Vec<Point>| -> usize {
            *node_ids.entry(quantize(p)).or_insert_with(|| {
                coords.push(p);
                coords.len() - 1
            })
        };

        let mut pairs: Vec<(&(usize, usize), &Vec<usize>)> = by_edge.iter().collect();
        pairs.sort_unstable_by_key(|(e, _)| **e);
        for (_, tris) in pairs {
            if tris.len() != 2 {
                continue;
            }
            let (Some(c1), Some(c2)) = (centers[tris[0]], centers[tris[1]]) else {
                continue;
            };
            let Some((a, b)) = clip_unit_square(c1, c2) else {
                continue;
            };
            let len = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            if len < 1e-12 {
                continue;
            }
            let na = node_of(a, &mut coords);
            let nb = node_of(b, &mut coords);
            edges.push((na, nb, len));
        }

        if coords.len() < 2 || edges.is_empty() {
            continue;
        }

        // keep the largest connected component
        let mut component = vec![usize::MAX; coords.len()];
        let mut undirected: Vec<Vec<usize>> = vec![Vec::new(); coords.len()];
        for &(a, b, _) in &edges {
            undirected[a].push(b);
            undirected[b].push(a);
        }
        let mut comp_count = 0usize;
        for start in 0..coords.len() {
            if component[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component[start] = comp_count;
            while let Some(v) = stack.pop() {
                for &w in &undirected[v] {
                    if component[w] == usize::MAX {
                        component[w] = comp_count;
                        stack.push(w);
                    }
                }
            }
            comp_count += 1;
        }
        let mut sizes = vec![0usize; comp_count];
        for &c in &component {
            sizes[c] += 1;
        }
        let biggest = sizes.iter().enumerate().max_by_key(|(_, s)| **s).unwrap().0;

        let mut remap = vec![usize::MAX; coords.len()];
        let mut kept_coords = Vec::new();
        for (v, &c) in component.iter().enumerate() {
            if c == biggest {
                remap[v] = kept_coords.len();
                kept_coords.push(coords[v]);
            }
        }
        let mut graph = Graph::new(kept_coords.len());
        graph.coords = Some(kept_coords);
        for (a, b, w) in edges {
            if component[a] == biggest && component[b] == biggest {
                graph.add_edge(remap[a], remap[b], w);
                graph.add_edge(remap[b], remap[a], w);
            }
        }
        if graph.node_count() >= 2 {
            return graph;
        }
    }
}
