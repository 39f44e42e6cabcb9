//! Plain finite graphs with the searches the classification pipeline needs:
//! connectivity, bipartitions, modular-decomposition closures (the prime
//! witness machinery), induced odd holes, cliques, graph products, and a
//! deterministic isomorphism search. Everything here is field-agnostic; the
//! gcd-graph layer supplies vertex meanings.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices 0..n with sorted neighbor lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    nbrs: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn edgeless(n: usize) -> Graph {
        Graph {
            n,
            nbrs: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds from per-vertex neighbor lists, validating symmetry and rejecting
    /// loops; lists need not be pre-sorted.
    pub fn from_neighbor_lists(lists: Vec<Vec<u32>>) -> Result<Graph> {
        let n = lists.len();
        let mut g = Graph {
            n,
            nbrs: lists,
            labels: None,
        };
        g.normalize();
        for u in 0..n {
            for &v in &g.nbrs[u] {
                if v as usize >= n {
                    return Err(Error::BadGraph(format!("neighbor {v} out of range")));
                }
                if v as usize == u {
                    return Err(Error::BadGraph(format!("loop at vertex {u}")));
                }
                if g.nbrs[v as usize].binary_search(&(u as u32)).is_err() {
                    return Err(Error::BadGraph(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::BadGraph(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::BadGraph(format!("loop at vertex {u}")));
            }
            g.nbrs[u].push(v as u32);
            g.nbrs[v].push(u as u32);
        }
        g.normalize();
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph is well-formed")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path graph is well-formed")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle graph is well-formed")
    }

    fn normalize(&mut self) {
        for l in &mut self.nbrs {
            l.sort_unstable();
            l.dedup();
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::BadGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.nbrs[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.nbrs[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.nbrs[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges as (u, v) with u < v, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                if (v as usize) > u {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.nbrs[u] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        comp.push(v as usize);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two-coloring if bipartite (color per vertex), else None.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = vec![s];
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &v in &self.nbrs[u] {
                    let v = v as usize;
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn complement(&self) -> Result<Graph> {
        if self.n > 4096 {
            return Err(Error::TooLarge(format!(
                "complement of a {}-vertex graph",
                self.n
            )));
        }
        let mut nbrs = vec![Vec::new(); self.n];
        for u in 0..self.n {
            let mut it = self.nbrs[u].iter().peekable();
            for v in 0..self.n as u32 {
                if Some(&&v) == it.peek() {
                    it.next();
                    continue;
                }
                if v as usize != u {
                    nbrs[u].push(v);
                }
            }
        }
        Ok(Graph {
            n: self.n,
            nbrs,
            labels: self.labels.clone(),
        })
    }

    /// Induced subgraph on the given (distinct) vertices, in the given order.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.n {
                return Err(Error::BadGraph(format!("vertex {v} out of range")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::BadGraph(format!("vertex {v} repeated")));
            }
            pos[v] = i;
        }
        let mut g = Graph::edgeless(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.nbrs[v] {
                let j = pos[w as usize];
                if j != usize::MAX && j > i {
                    g.nbrs[i].push(j as u32);
                    g.nbrs[j].push(i as u32);
                }
            }
        }
        g.normalize();
        if let Some(labels) = &self.labels {
            g.labels = Some(verts.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }

    /// Tensor (categorical) product: (a,b) ~ (a',b') iff a~a' and b~b'.
    /// Vertex (a, b) has index a * other.n + b.
    pub fn tensor_product(&self, other: &Graph) -> Result<Graph> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&x| x <= 1 << 20)
            .ok_or_else(|| Error::TooLarge("tensor product".into()))?;
        let mut g = Graph::edgeless(n);
        for a in 0..self.n {
            for b in 0..other.n {
                let u = a * other.n + b;
                let mut list = Vec::with_capacity(self.degree(a) * other.degree(b));
                for &a2 in &self.nbrs[a] {
                    for &b2 in &other.nbrs[b] {
                        list.push((a2 as usize * other.n + b2 as usize) as u32);
                    }
                }
                list.sort_unstable();
                g.nbrs[u] = list;
            }
        }
        Ok(g)
    }

    /// Wreath (lexicographic) product: (a,b) ~ (a',b') iff a~a', or a=a' and
    /// b~b'. Vertex (a, b) has index a * other.n + b.
    pub fn wreath_product(&self, other: &Graph) -> Result<Graph> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&x| x <= 1 << 20)
            .ok_or_else(|| Error::TooLarge("wreath product".into()))?;
        let mut g = Graph::edgeless(n);
        for a in 0..self.n {
            for b in 0..other.n {
                let u = a * other.n + b;
                let mut list = Vec::new();
                for &a2 in &self.nbrs[a] {
                    for b2 in 0..other.n {
                        list.push((a2 as usize * other.n + b2) as u32);
                    }
                }
                for &b2 in &other.nbrs[b] {
                    list.push((a * other.n + b2 as usize) as u32);
                }
                list.sort_unstable();
                g.nbrs[u] = list;
            }
        }
        Ok(g)
    }

    /// Neighbor bitmasks for graphs on at most 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::TooLarge(format!(
                "bitmask representation of {} vertices",
                self.n
            )));
        }
        Ok(self
            .nbrs
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect())
    }

    /// Smallest module containing the seed: repeatedly absorbs any outside
    /// vertex adjacent to part but not all of the current set. Runs in
    /// O(n^2) via full/empty/violator bookkeeping.
    pub fn module_closure(&self, seed: &[usize]) -> Vec<usize> {
        assert!(seed.len() >= 2, "module closure needs at least two seeds");
        const IN_X: u8 = 0;
        const EMPTY: u8 = 1;
        const VIOL: u8 = 2;
        const FULL: u8 = 3;
        let mut state = vec![EMPTY; self.n];
        let mut cnt = vec![0usize; self.n];
        let mut x_size = 0usize;
        for &s in seed {
            if state[s] != IN_X {
                state[s] = IN_X;
                x_size += 1;
            }
        }
        for w in 0..self.n {
            if state[w] == IN_X {
                continue;
            }
            cnt[w] = self.nbrs[w]
                .iter()
                .filter(|&&v| state[v as usize] == IN_X)
                .count();
            state[w] = if cnt[w] == 0 {
                EMPTY
            } else if cnt[w] == x_size {
                FULL
            } else {
                VIOL
            };
        }
        let mut work: Vec<usize> = (0..self.n).filter(|&w| state[w] == VIOL).collect();
        while let Some(w) = work.pop() {
            if state[w] != VIOL {
                continue;
            }
            state[w] = IN_X;
            x_size += 1;
            let mut is_nbr = vec![false; self.n];
            for &v in &self.nbrs[w] {
                is_nbr[v as usize] = true;
            }
            for v in 0..self.n {
                match state[v] {
                    IN_X => {}
                    EMPTY if is_nbr[v] => {
                        cnt[v] += 1;
                        state[v] = VIOL;
                        work.push(v);
                    }
                    VIOL if is_nbr[v] => {
                        cnt[v] += 1;
                        if cnt[v] == x_size {
                            state[v] = FULL;
                        }
                    }
                    FULL => {
                        if is_nbr[v] {
                            cnt[v] += 1; // stays full
                        } else {
                            state[v] = VIOL;
                            work.push(v);
                        }
                    }
                    _ => {}
                }
            }
        }
        (0..self.n).filter(|&w| state[w] == IN_X).collect()
    }

    /// Searches for a nontrivial module containing `anchor`; sound and
    /// complete for vertex-transitive graphs (every nontrivial module can be
    /// translated to one through any chosen vertex).
    pub fn prime_witness_anchored(&self, anchor: usize) -> Option<Vec<usize>> {
        for v in 0..self.n {
            if v == anchor {
                continue;
            }
            let x = self.module_closure(&[anchor, v]);
            if x.len() < self.n {
                return Some(x);
            }
        }
        None
    }

    /// Searches all seed pairs for a nontrivial module.
    pub fn prime_witness_all_pairs(&self) -> Option<Vec<usize>> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                let x = self.module_closure(&[u, v]);
                if x.len() < self.n {
                    return Some(x);
                }
            }
        }
        None
    }

    /// Finds an induced odd cycle of length in [5, max_len], returned as its
    /// vertex sequence, or None if there is none within the bound.
    pub fn find_induced_odd_hole(&self, max_len: usize) -> Option<Vec<usize>> {
        if max_len < 5 || self.n < 5 {
            return None;
        }
        let mut path: Vec<usize> = Vec::with_capacity(max_len);
        for s in 0..self.n {
            path.clear();
            path.push(s);
            if let Some(hole) = self.hole_dfs(s, &mut path, max_len) {
                return Some(hole);
            }
        }
        None
    }

    fn hole_dfs(&self, s: usize, path: &mut Vec<usize>, max_len: usize) -> Option<Vec<usize>> {
        let last = *path.last().expect("path nonempty");
        for &wn in &self.nbrs[last] {
            let w = wn as usize;
            if w <= s || path.contains(&w) {
                continue;
            }
            // w must avoid all interior path vertices to keep the cycle induced
            let interior = if path.len() >= 2 {
                &path[1..path.len() - 1]
            } else {
                &[][..]
            };
            let interior_ok = interior.iter().all(|&u| !self.has_edge(u, w));
            if !interior_ok {
                continue;
            }
            let cycle_len = path.len() + 1;
            if path.len() >= 2 && self.has_edge(s, w) {
                if cycle_len >= 5 && cycle_len % 2 == 1 && cycle_len <= max_len && path[1] < w {
                    let mut hole = path.clone();
                    hole.push(w);
                    return Some(hole);
                }
                continue; // chord back to s: cannot extend an induced path
            }
            if cycle_len < max_len {
                path.push(w);
                if let Some(h) = self.hole_dfs(s, path, max_len) {
                    return Some(h);
                }
                path.pop();
            }
        }
        None
    }

    /// Exact clique number via mask branch-and-bound; n <= 64 only.
    pub fn clique_number(&self) -> Result<usize> {
        let masks = self.adjacency_masks()?;
        let full: u64 = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut best = 0usize;
        fn bb(masks: &[u64], mut cand: u64, size: usize, best: &mut usize) {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            while cand != 0 {
                if size + cand.count_ones() as usize <= *best {
                    return;
                }
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                bb(masks, cand & masks[v], size + 1, best);
            }
        }
        bb(&masks, full, 0, &mut best);
        Ok(best)
    }

    /// Deterministic greedy proper coloring in vertex order; returns the
    /// color of each vertex. The color count upper-bounds the chromatic
    /// number.
    pub fn greedy_coloring(&self) -> Vec<usize> {
        let mut colors = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let mut used: Vec<usize> = self.nbrs[v]
                .iter()
                .filter(|&&u| (u as usize) < v)
                .map(|&u| colors[u as usize])
                .collect();
            used.sort_unstable();
            let mut c = 0;
            for u in used {
                if u == c {
                    c += 1;
                } else if u > c {
                    break;
                }
            }
            colors[v] = c;
        }
        colors
    }

    /// Deterministic isomorphism search (color refinement + backtracking).
    /// Returns a vertex map self -> other, or None. Guarded at 512 vertices.
    pub fn find_isomorphism(&self, other: &Graph) -> Result<Option<Vec<usize>>> {
        if self.n > 512 || other.n > 512 {
            return Err(Error::TooLarge("isomorphism search beyond 512 vertices".into()));
        }
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return Ok(None);
        }
        let ca = refine_colors(self);
        let cb = refine_colors(other);
        let mut count_a = BTreeMap::new();
        let mut count_b = BTreeMap::new();
        for &c in &ca {
            *count_a.entry(c).or_insert(0usize) += 1;
        }
        for &c in &cb {
            *count_b.entry(c).or_insert(0usize) += 1;
        }
        if count_a != count_b {
            return Ok(None);
        }
        // map vertices of self in order of rarest color class first
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (count_a[&ca[v]], ca[v], v));
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        if backtrack_iso(self, other, &ca, &cb, &order, 0, &mut map, &mut used) {
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges()
            .into_iter()
            .map(|(u, v)| json!([u, v]))
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("n".into(), json!(self.n));
        obj.insert("edges".into(), Value::Array(edges));
        if let Some(labels) = &self.labels {
            obj.insert("labels".into(), json!(labels));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Graph> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("graph JSON must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("graph JSON needs integer field \"n\"".into()))?
            as usize;
        let edges_v = obj
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("graph JSON needs array field \"edges\"".into()))?;
        let mut edges = Vec::with_capacity(edges_v.len());
        for e in edges_v {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Parse("each edge must be a two-element array".into())
            })?;
            let u = pair[0]
                .as_u64()
                .ok_or_else(|| Error::Parse("edge endpoints must be integers".into()))?;
            let v = pair[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("edge endpoints must be integers".into()))?;
            edges.push((u as usize, v as usize));
        }
        let g = Graph::from_edges(n, &edges)?;
        match obj.get("labels") {
            None => Ok(g),
            Some(Value::Array(ls)) => {
                let labels = ls
                    .iter()
                    .map(|l| {
                        l.as_str()
                            .map(String::from)
                            .ok_or_else(|| Error::Parse("labels must be strings".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                g.with_labels(labels)
            }
            Some(_) => Err(Error::Parse("labels must be an array".into())),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            match &self.labels {
                Some(ls) => out.push_str(&format!("  v{} [label=\"{}\"];\n", v, ls[v])),
                None => out.push_str(&format!("  v{};\n", v)),
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  v{} -- v{};\n", u, v));
        }
        out.push_str("}\n");
        out
    }
}

/// Cayley graph on 0..n under the given group operations; index 0 must be
/// the identity. The connection set must exclude 0 and be negation-closed.
pub fn cayley_graph(
    n: usize,
    connection: &[usize],
    add: impl Fn(usize, usize) -> usize,
    neg: impl Fn(usize) -> usize,
) -> Result<Graph> {
    let mut conn: Vec<usize> = connection.to_vec();
    conn.sort_unstable();
    conn.dedup();
    if conn.contains(&0) {
        return Err(Error::IdentityInConnection);
    }
    for &s in &conn {
        if conn.binary_search(&neg(s)).is_err() {
            return Err(Error::NonSymmetricConnection);
        }
    }
    if n.saturating_mul(conn.len()) > 1 << 26 {
        return Err(Error::TooLarge(format!(
            "cayley graph with {n} vertices and {} connection elements",
            conn.len()
        )));
    }
    let mut g = Graph::edgeless(n);
    for u in 0..n {
        let mut list: Vec<u32> = conn.iter().map(|&s| add(u, s) as u32).collect();
        list.sort_unstable();
        list.dedup();
        g.nbrs[u] = list;
    }
    Ok(g)
}

/// Checks that `map` realizes `target` as an induced subgraph of the host
/// structure described by the adjacency oracle.
pub fn verify_embedding(
    target: &Graph,
    map: &[u64],
    adjacent: impl Fn(u64, u64) -> bool,
) -> bool {
    if map.len() != target.n() {
        return false;
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for u in 0..target.n() {
        for v in u + 1..target.n() {
            if target.has_edge(u, v) != adjacent(map[u], map[v]) {
                return false;
            }
        }
    }
    true
}

/// Module closure on a bitmask graph (n <= 64); used by the exhaustive
/// sweeps where closure dominates the running time.
pub fn module_closure_masked(masks: &[u64], n: usize, seed: u64) -> u64 {
    debug_assert!(n <= 64);
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut x = seed;
    // classify outside vertices by their adjacency to X
    let mut full = all & !x;
    let mut empty = all & !x;
    let mut seeds = x;
    while seeds != 0 {
        let v = seeds.trailing_zeros() as usize;
        seeds &= seeds - 1;
        full &= masks[v];
        empty &= !masks[v];
    }
    let mut viol = all & !x & !full & !empty;
    while viol != 0 {
        let w = viol.trailing_zeros() as usize;
        let wbit = 1u64 << w;
        viol &= !wbit;
        x |= wbit;
        full &= !wbit;
        empty &= !wbit;
        let moved_from_full = full & !masks[w];
        let moved_from_empty = empty & masks[w];
        full &= masks[w];
        empty &= !masks[w];
        viol |= moved_from_full | moved_from_empty;
    }
    x
}

fn refine_colors(g: &Graph) -> Vec<u64> {
    let mut colors: Vec<u64> = (0..g.n()).map(|v| g.degree(v) as u64).collect();
    for _ in 0..g.n() {
        let mut sig: Vec<(u64, Vec<u64>)> = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let mut ns: Vec<u64> = g.neighbors(v).iter().map(|&u| colors[u as usize]).collect();
            ns.sort_unstable();
            sig.push((colors[v], ns));
        }
        let mut palette: BTreeMap<&(u64, Vec<u64>), u64> = BTreeMap::new();
        for s in &sig {
            let next = palette.len() as u64;
            palette.entry(s).or_insert(next);
        }
        let new_colors: Vec<u64> = sig.iter().map(|s| palette[s]).collect();
        if new_colors == colors {
            break;
        }
        colors = new_colors;
    }
    colors
}

#[allow(clippy::too_many_arguments)]
fn backtrack_iso(
    a: &Graph,
    b: &Graph,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    pos: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    'cand: for w in 0..b.n() {
        if used[w] || ca[v] != cb[w] {
            continue;
        }
        for &earlier in &order[..pos] {
            if a.has_edge(v, earlier) != b.has_edge(w, map[earlier]) {
                continue 'cand;
            }
        }
        map[v] = w;
        used[w] = true;
        if backtrack_iso(a, b, ca, cb, order, pos + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}
