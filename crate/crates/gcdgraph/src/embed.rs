//! Induced-subgraph embeddings into gcd-graphs.
//!
//! Every graph sits inside a product of complete graphs under the
//! all-coordinates-differ adjacency rule (one injective coordinate plus one
//! collision coordinate per non-edge always works). Unitary gcd-graphs
//! realize such products: modulo a squarefree modulus the residue ring splits
//! into blocks, unit differences are exactly the tuples that differ in every
//! block, and a block with q^deg residues carries a complete graph of that
//! order. The constructions here search for a small product representation,
//! lay the target into a unitary host, and when the ambient divisor set is
//! constrained, relocate the host into an ideal so the surrounding modulus
//! can absorb the prescribed divisors.

use crate::error::{Error, Result};
use crate::gcdgraph::GcdGraphSpec;
use crate::gf::{Field, FieldElement};
use crate::graphcore::{verify_embedding, Graph};
use crate::polyring::{crt, factorize, gcd_monic, irreducibles_of_degree, lcm_monic, Poly};
use serde_json::{json, Value};

/// Hard cap on embedding-target order; the searches below are exponential.
pub const MAX_TARGET_VERTICES: usize = 10;

/// Residue-count ceiling for constructed hosts, so that every embedding can
/// be re-verified (and enumerated downstream) at tolerable cost.
pub const EMBED_RING_BUDGET: u128 = 1 << 16;

/// Node budget for the representation backtracking. Exceeding it reports
/// exhaustion, which is inconclusive rather than a nonexistence proof.
const MAX_SEARCH_NODES: u64 = 2_000_000;

/// An induced copy of `target` inside K_{sizes[0]} x ... x K_{sizes[r-1]}
/// under the tensor rule: vertex v sits at tuple `assignment[v]`, and u ~ v
/// in the target exactly when the tuples differ in every coordinate.
#[derive(Clone, Debug)]
pub struct CliqueProductRep {
    pub target: Graph,
    pub sizes: Vec<u64>,
    pub assignment: Vec<Vec<u64>>,
}

impl CliqueProductRep {
    pub fn r(&self) -> usize {
        self.sizes.len()
    }

    /// Re-checks the defining property from scratch: tuples in range,
    /// pairwise distinct, and all-coordinates-differ matching adjacency.
    pub fn verify(&self) -> bool {
        let n = self.target.n();
        if self.assignment.len() != n || self.sizes.is_empty() {
            return false;
        }
        let r = self.sizes.len();
        for row in &self.assignment {
            if row.len() != r || row.iter().zip(&self.sizes).any(|(&v, &s)| v >= s) {
                return false;
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if self.assignment[u] == self.assignment[v] {
                    return false;
                }
                let all_diff = (0..r).all(|j| self.assignment[u][j] != self.assignment[v][j]);
                if all_diff != self.target.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.sizes.len(),
            "sizes": self.sizes,
            "assignment": self.assignment,
        })
    }
}

/// Searches for a clique-product representation with at most `max_r`
/// coordinates and clique orders at most `max_size`, preferring fewer
/// coordinates. Vertex 0 is pinned to the origin and each coordinate
/// introduces new values in increasing order; value renamings are
/// automorphisms of the product, so the normalization loses no solutions.
/// `SearchExhausted` means nothing was found within the bounds (or the node
/// budget ran out), not that no representation exists.
pub fn find_clique_product_rep(
    target: &Graph,
    max_r: usize,
    max_size: u64,
) -> Result<CliqueProductRep> {
    let n = target.n();
    if n == 0 {
        return Err(Error::BadGraph("embedding target has no vertices".into()));
    }
    if n > MAX_TARGET_VERTICES {
        return Err(Error::TooLarge(format!(
            "embedding target has {n} vertices, limit {MAX_TARGET_VERTICES}"
        )));
    }
    if max_r == 0 || max_size == 0 {
        return Err(Error::HypothesesViolated(
            "representation bounds must be positive".into(),
        ));
    }
    let mut nodes = 0u64;
    for r in 1..=max_r {
        let mut assignment: Vec<Vec<u64>> = vec![vec![0; r]];
        if n == 1 || assign_rest(target, r, max_size, &mut assignment, &mut nodes) {
            let sizes: Vec<u64> = (0..r)
                .map(|j| 1 + assignment.iter().map(|row| row[j]).max().unwrap())
                .collect();
            let rep = CliqueProductRep {
                target: target.clone(),
                sizes,
                assignment,
            };
            debug_assert!(rep.verify());
            return Ok(rep);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no clique-product representation with r <= {max_r} and clique orders <= {max_size}"
    )))
}

fn assign_rest(
    target: &Graph,
    r: usize,
    max_size: u64,
    assignment: &mut Vec<Vec<u64>>,
    nodes: &mut u64,
) -> bool {
    let n = target.n();
    let i = assignment.len();
    if i == n {
        return true;
    }
    // Values used so far in a coordinate form a prefix 0..=seen, so seen+1 is
    // the only fresh value worth trying.
    let caps: Vec<u64> = (0..r)
        .map(|j| {
            let seen = assignment.iter().map(|row| row[j]).max().unwrap();
            (seen + 1).min(max_size - 1)
        })
        .collect();
    let mut cand = vec![0u64; r];
    loop {
        *nodes += 1;
        if *nodes > MAX_SEARCH_NODES {
            return false;
        }
        if compatible(target, assignment, i, &cand) {
            assignment.push(cand.clone());
            if assign_rest(target, r, max_size, assignment, nodes) {
                return true;
            }
            assignment.pop();
        }
        // odometer over the capped tuple space, last coordinate fastest
        let mut j = r;
        loop {
            if j == 0 {
                return false;
            }
            j -= 1;
            if cand[j] < caps[j] {
                cand[j] += 1;
                for t in cand.iter_mut().skip(j + 1) {
                    *t = 0;
                }
                break;
            }
        }
    }
}

fn compatible(target: &Graph, assignment: &[Vec<u64>], i: usize, cand: &[u64]) -> bool {
    for (w, row) in assignment.iter().enumerate() {
        if row.as_slice() == cand {
            return false;
        }
        let all_diff = row.iter().zip(cand).all(|(a, b)| a != b);
        if all_diff != target.has_edge(w, i) {
            return false;
        }
    }
    true
}

/// Representation that always exists: one injective coordinate plus one
/// coordinate per non-edge on which exactly that pair collides.
fn constructive_rep(target: &Graph) -> CliqueProductRep {
    let n = target.n();
    let mut columns: Vec<Vec<u64>> = vec![(0..n as u64).collect()];
    for u in 0..n {
        for v in (u + 1)..n {
            if !target.has_edge(u, v) {
                let mut col = vec![0u64; n];
                let mut next = 1u64;
                for (w, slot) in col.iter_mut().enumerate() {
                    if w != u && w != v {
                        *slot = next;
                        next += 1;
                    }
                }
                columns.push(col);
            }
        }
    }
    let sizes: Vec<u64> = columns
        .iter()
        .map(|c| 1 + c.iter().max().copied().unwrap_or(0))
        .collect();
    let assignment: Vec<Vec<u64>> = (0..n)
        .map(|v| columns.iter().map(|c| c[v]).collect())
        .collect();
    let rep = CliqueProductRep {
        target: target.clone(),
        sizes,
        assignment,
    };
    debug_assert!(rep.verify());
    rep
}

/// Small-bounds search first, constructive fallback second. The fallback can
/// be wide (one coordinate per non-edge), so downstream ring budgets may
/// still reject what it produces.
fn find_rep_with_fallback(target: &Graph) -> Result<CliqueProductRep> {
    match find_clique_product_rep(target, 3, (target.n() as u64).max(3)) {
        Ok(rep) => Ok(rep),
        Err(Error::SearchExhausted(_)) => Ok(constructive_rep(target)),
        Err(e) => Err(e),
    }
}

/// An induced-subgraph embedding: `vertex_map[v]` is the residue index of the
/// image of target vertex v. `verified` records that injectivity and
/// adjacency preservation (both directions) were re-checked from scratch
/// against gcd arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub vertex_map: Vec<u64>,
    pub verified: bool,
}

impl Embedding {
    pub fn to_json(&self) -> Value {
        json!({
            "vertex_map": self.vertex_map,
            "verified": self.verified,
        })
    }
}

fn gcd_adjacent(spec: &GcdGraphSpec, x: u64, y: u64) -> bool {
    if x == y {
        return false;
    }
    let a = Poly::from_index(spec.field(), x);
    let b = Poly::from_index(spec.field(), y);
    let g = gcd_monic(&(&a - &b), spec.f()).expect("difference is nonzero");
    spec.d().binary_search(&g).is_ok()
}

fn check_ring_budget(spec: &GcdGraphSpec) -> Result<()> {
    if spec.ring_size() > EMBED_RING_BUDGET {
        return Err(Error::TooLarge(format!(
            "host ring has {} residues, embedding budget is {}",
            spec.ring_size(),
            EMBED_RING_BUDGET
        )));
    }
    Ok(())
}

/// The `count` canonically smallest distinct monic irreducibles whose block
/// order q^deg strictly exceeds `threshold`, skipping `exclude`.
fn irreducibles_above(
    field: &Field,
    count: usize,
    threshold: u64,
    exclude: &[Poly],
) -> Result<Vec<Poly>> {
    let q = field.q() as u128;
    let mut out = Vec::with_capacity(count);
    for deg in 1..=16usize {
        if out.len() == count {
            break;
        }
        if q.pow(deg as u32) <= threshold as u128 {
            continue;
        }
        for h in irreducibles_of_degree(field, deg)? {
            if out.len() == count {
                break;
            }
            if !exclude.contains(&h) {
                out.push(h);
            }
        }
    }
    if out.len() == count {
        Ok(out)
    } else {
        Err(Error::SearchExhausted(format!(
            "fewer than {count} irreducible factors of degree <= 16 above block order {threshold}"
        )))
    }
}

fn smallest_irreducible_excluding(field: &Field, exclude: &[Poly]) -> Result<Poly> {
    for deg in 1..=16usize {
        for h in irreducibles_of_degree(field, deg)? {
            if !exclude.contains(&h) {
                return Ok(h);
            }
        }
    }
    Err(Error::SearchExhausted(
        "no spare irreducible of degree <= 16".into(),
    ))
}

/// Builds a squarefree modulus with exactly `d` irreducible factors whose
/// unitary gcd-graph hosts `rep.target`, together with the verified
/// embedding. Every factor's block order q^deg strictly exceeds all clique
/// orders in `rep`, the target order, and `n_bound`; coordinates j >= r pad
/// with the vertex index, which keeps the map injective and cannot destroy
/// adjacency because a complete block has no non-edges to hit.
pub fn build_fd(
    field: &Field,
    rep: &CliqueProductRep,
    d: usize,
    n_bound: u64,
) -> Result<(Poly, Embedding)> {
    if !rep.verify() {
        return Err(Error::BadGraph(
            "invalid clique-product representation".into(),
        ));
    }
    let r = rep.r();
    if d < r {
        return Err(Error::HypothesesViolated(format!(
            "factor count {d} is below the representation arity {r}"
        )));
    }
    let n = rep.target.n();
    let threshold = rep
        .sizes
        .iter()
        .copied()
        .chain([n as u64, n_bound])
        .max()
        .unwrap();
    let factors = irreducibles_above(field, d, threshold, &[])?;
    let fd = factors.iter().fold(Poly::one(field), |acc, h| &acc * h);
    debug_assert_eq!(factorize(&fd)?.omega(), d);
    let spec = GcdGraphSpec::new(field, &fd, std::slice::from_ref(&Poly::one(field)))?;
    check_ring_budget(&spec)?;
    let mut vertex_map = Vec::with_capacity(n);
    for v in 0..n {
        let parts: Vec<(Poly, Poly)> = factors
            .iter()
            .enumerate()
            .map(|(j, h)| {
                let val = if j < r { rep.assignment[v][j] } else { v as u64 };
                // val < q^{deg h}: the block order strictly exceeds both the
                // clique orders and the target order
                (Poly::from_index(field, val), h.clone())
            })
            .collect();
        vertex_map.push(crt(&parts)?.to_index());
    }
    if !verify_embedding(&rep.target, &vertex_map, |x, y| gcd_adjacent(&spec, x, y)) {
        return Err(Error::OracleMismatch(
            "unitary host embedding failed re-verification".into(),
        ));
    }
    Ok((
        fd,
        Embedding {
            vertex_map,
            verified: true,
        },
    ))
}

/// Realizes `target` as an induced subgraph of a gcd-graph whose divisor set
/// has exactly `k` members. An extra irreducible factor h0 is glued onto the
/// unitary host modulus; the ideal (h0) then carries the unitary copy, and
/// k-1 of the host factors join the divisor set without touching the ideal's
/// induced adjacency (no multiple of h0 has gcd equal to a factor coprime to
/// h0).
pub fn embed_into_gcdgraph(
    target: &Graph,
    field: &Field,
    k: usize,
) -> Result<(GcdGraphSpec, Embedding)> {
    if k == 0 {
        return Err(Error::HypothesesViolated(
            "divisor count k must be at least 1".into(),
        ));
    }
    let rep = find_rep_with_fallback(target)?;
    let d = rep.r().max(k);
    let (fd, base_emb) = build_fd(field, &rep, d, 0)?;
    let hs: Vec<Poly> = factorize(&fd)?.factors.into_iter().map(|(p, _)| p).collect();
    let h0 = smallest_irreducible_excluding(field, &hs)?;
    let f = &h0 * &fd;
    let mut dset = vec![h0.clone()];
    dset.extend(hs.iter().take(k - 1).cloned());
    let spec = GcdGraphSpec::new(field, &f, &dset)?;
    check_ring_budget(&spec)?;
    // u = h0 * w stays reduced: deg h0 + deg w < deg f
    let vertex_map: Vec<u64> = base_emb
        .vertex_map
        .iter()
        .map(|&wi| (&h0 * &Poly::from_index(field, wi)).to_index())
        .collect();
    if !verify_embedding(target, &vertex_map, |x, y| gcd_adjacent(&spec, x, y)) {
        return Err(Error::OracleMismatch(
            "ideal embedding failed re-verification".into(),
        ));
    }
    Ok((
        spec,
        Embedding {
            vertex_map,
            verified: true,
        },
    ))
}

/// Builds F_{q^m} over `base` together with the canonical coefficient
/// embedding, tabulated by base-element index. The map sends the base
/// generator to the canonically smallest root of the base defining
/// polynomial in the extension, which pins one specific field homomorphism.
fn extend_field(base: &Field, m: u32) -> Result<(Field, Vec<FieldElement>)> {
    if m == 1 {
        return Ok((base.clone(), base.elements().collect()));
    }
    let ext = Field::new(base.p(), base.m() * m as usize, None)?;
    let table: Vec<FieldElement> = if base.m() == 1 {
        base.elements().map(|a| ext.from_prime(a.index())).collect()
    } else {
        let coeffs: Vec<FieldElement> = base
            .modulus()
            .iter()
            .map(|&c| ext.from_prime(c))
            .collect();
        let mut root = None;
        for e in ext.elements() {
            let mut acc = ext.zero();
            for &c in coeffs.iter().rev() {
                acc = ext.add(ext.mul(acc, e), c);
            }
            if acc == ext.zero() {
                root = Some(e);
                break;
            }
        }
        // the base defining polynomial splits in any extension of divisible degree
        let root = root.ok_or_else(|| {
            Error::SearchExhausted("no root of the base modulus in the extension".into())
        })?;
        base.elements()
            .map(|a| {
                let mut acc = ext.zero();
                let mut pw = ext.one();
                for &c in &base.coords(a) {
                    acc = ext.add(acc, ext.mul(ext.from_prime(c), pw));
                    pw = ext.mul(pw, root);
                }
                acc
            })
            .collect()
    };
    Ok((ext, table))
}

fn poly_to_ext(p: &Poly, ext: &Field, table: &[FieldElement]) -> Poly {
    let coeffs: Vec<FieldElement> = p
        .coeffs()
        .iter()
        .map(|&c| table[c.index() as usize])
        .collect();
    Poly::from_coeffs(ext, coeffs)
}

/// Embeds `target` into a gcd-graph over F_{q^m} whose divisor set is exactly
/// the image of `d_fixed` (members are monicized, deduplicated, and sorted).
/// Returns the extension degree actually used alongside the spec and the
/// verified embedding.
///
/// With `forced_m = Some(m)` that extension degree is taken as given;
/// otherwise the smallest workable degree is chosen. Whenever g = lcm(D) is
/// nonconstant, the divisor-lcm clique bound omega(target) <= (q^m)^{deg g}
/// is checked before any search and violations surface as
/// `CliqueBoundViolated`.
///
/// Construction: f = h * g with h a product of fresh irreducibles, the
/// target lands in the ideal generated by the smallest member f1 of D, rep
/// coordinates and injective padding occupy the blocks of h, and on every
/// remaining block of f/f1 the images carry pairwise distinct constants, so
/// differences of images are units there and the prescribed divisors never
/// leak into mapped-pair gcds.
pub fn embed_with_prescribed_divisors(
    target: &Graph,
    field: &Field,
    d_fixed: &[Poly],
    forced_m: Option<u32>,
) -> Result<(u32, GcdGraphSpec, Embedding)> {
    if d_fixed.is_empty() {
        return Err(Error::HypothesesViolated(
            "prescribed divisor set is empty".into(),
        ));
    }
    let mut dset = Vec::with_capacity(d_fixed.len());
    for g in d_fixed {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        dset.push(g.monic()?.0);
    }
    dset.sort();
    dset.dedup();
    let mut g = Poly::one(field);
    for member in &dset {
        g = lcm_monic(&g, member)?;
    }
    let deg_g = g.deg().expect("nonzero lcm") as u32;
    let n = target.n();
    if n == 0 {
        return Err(Error::BadGraph("embedding target has no vertices".into()));
    }
    if n > MAX_TARGET_VERTICES {
        return Err(Error::TooLarge(format!(
            "embedding target has {n} vertices, limit {MAX_TARGET_VERTICES}"
        )));
    }
    let clique = target.clique_number()? as u64;
    let q = field.q() as u128;
    let bound_of = |m: u32| -> u128 {
        let qm = q.checked_pow(m).unwrap_or(u128::MAX);
        qm.checked_pow(deg_g).unwrap_or(u128::MAX)
    };
    if let Some(m) = forced_m {
        if m == 0 {
            return Err(Error::HypothesesViolated(
                "extension degree m must be at least 1".into(),
            ));
        }
        // the clique bound is decisive before any search happens
        if deg_g >= 1 && (clique as u128) > bound_of(m) {
            return Err(Error::CliqueBoundViolated {
                bound: bound_of(m),
                clique,
            });
        }
    }
    let rep = find_rep_with_fallback(target)?;
    let r = rep.r();
    // every block must seat its largest clique and a full set of vertex labels
    let t0 = rep.sizes.iter().copied().chain([n as u64]).max().unwrap();
    let m = match forced_m {
        Some(m) => {
            let qm = q.checked_pow(m).unwrap_or(u128::MAX);
            if qm < t0 as u128 {
                return Err(Error::SearchExhausted(format!(
                    "extension of degree {m} has only {qm} elements; the construction needs {t0}"
                )));
            }
            m
        }
        None => {
            let mut m = 1u32;
            while q.checked_pow(m).unwrap_or(u128::MAX) < t0 as u128 {
                m += 1;
                if m > 16 {
                    return Err(Error::TooLarge(format!(
                        "no extension of degree <= 16 holds {t0} elements"
                    )));
                }
            }
            debug_assert!(deg_g == 0 || (clique as u128) <= bound_of(m));
            m
        }
    };
    let (ext, lift) = extend_field(field, m)?;
    let g_ext = poly_to_ext(&g, &ext, &lift);
    let dset_ext: Vec<Poly> = dset.iter().map(|p| poly_to_ext(p, &ext, &lift)).collect();
    // gcds are stable under coefficient extension, so divisor relations
    // computed over the base field survive unchanged
    let mut h_factors: Vec<Poly> = Vec::new();
    for deg in 1..=16usize {
        if h_factors.len() == r {
            break;
        }
        for cand in irreducibles_of_degree(field, deg)? {
            if h_factors.len() == r {
                break;
            }
            if !cand.divides(&g) {
                h_factors.push(cand);
            }
        }
    }
    if h_factors.len() < r {
        return Err(Error::SearchExhausted(format!(
            "fewer than {r} irreducibles of degree <= 16 coprime to the divisor lcm"
        )));
    }
    let h_ext = h_factors
        .iter()
        .fold(Poly::one(&ext), |acc, h| &acc * &poly_to_ext(h, &ext, &lift));
    let f_ext = &h_ext * &g_ext;
    let f1_ext = poly_to_ext(&dset[0], &ext, &lift);
    let fbar = f_ext.divexact(&f1_ext)?;
    let mut h_blocks: Vec<Poly> = Vec::new();
    let mut g_blocks: Vec<Poly> = Vec::new();
    for (prime, e) in factorize(&fbar)?.factors {
        if prime.divides(&h_ext) {
            debug_assert_eq!(e, 1);
            h_blocks.push(prime);
        } else {
            g_blocks.push(prime.pow(e));
        }
    }
    // distinct base irreducibles stay coprime upstairs, so h contributes at
    // least r blocks
    debug_assert!(h_blocks.len() >= r);
    let spec = GcdGraphSpec::new(&ext, &f_ext, &dset_ext)?;
    check_ring_budget(&spec)?;
    let mut vertex_map = Vec::with_capacity(n);
    for v in 0..n {
        let mut parts: Vec<(Poly, Poly)> = Vec::with_capacity(h_blocks.len() + g_blocks.len());
        for (j, block) in h_blocks.iter().enumerate() {
            let val = if j < r { rep.assignment[v][j] } else { v as u64 };
            // val < q^m <= block order, since every extension block holds t0 values
            parts.push((Poly::from_index(&ext, val), block.clone()));
        }
        for block in &g_blocks {
            parts.push((Poly::constant(&ext, ext.element(v as u64)?), block.clone()));
        }
        let w = crt(&parts)?;
        // u = f1 * w stays reduced: deg f1 + deg w < deg f
        vertex_map.push((&f1_ext * &w).to_index());
    }
    if !verify_embedding(target, &vertex_map, |x, y| gcd_adjacent(&spec, x, y)) {
        return Err(Error::OracleMismatch(
            "prescribed-divisor embedding failed re-verification".into(),
        ));
    }
    Ok((
        m,
        spec,
        Embedding {
            vertex_map,
            verified: true,
        },
    ))
}
