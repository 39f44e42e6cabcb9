//! Gcd-graph specifications and constructions.
//!
//! A spec (field, f, D) fixes the Cayley graph on R = F_q[x]/(f) whose
//! connection set is S_D = { s : gcd(s, f) in D }, for a set D of monic
//! proper divisors of f. Vertices are residues in canonical order (index =
//! base-q numeral), so every construction here is reproducible bit for bit.
//! Alongside the builder live the two structure predicates whose answers are
//! closed-form: connectedness (with exact component counts) and
//! bipartiteness (with an explicit partition rule whenever a theorem, not a
//! search, decided the answer).

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::graphcore::Graph;
use crate::par;
use crate::polyring::{divisors, gcd_monic, Poly};

/// Residue rings are enumerated only up to this many elements.
pub const MAX_RING_SIZE: u64 = 1 << 16;

/// The residue ring F_q[x]/(modulus) with index arithmetic: residue index =
/// base-q numeral of the coefficient vector.
#[derive(Clone)]
pub struct RingEnumeration {
    field: Field,
    modulus: Poly,
    n: usize,
    size: u64,
}

impl RingEnumeration {
    pub fn new(field: &Field, modulus: &Poly) -> Result<RingEnumeration> {
        if modulus.field() != field {
            return Err(Error::FieldMismatch);
        }
        let n = match modulus.deg() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => {
                return Err(Error::DegreeMismatch(
                    "residue ring needs a modulus of positive degree".into(),
                ))
            }
            Some(d) => d,
        };
        let (modulus, _) = modulus.monic()?;
        let size = (field.q() as u128).pow(n as u32);
        if size > MAX_RING_SIZE as u128 {
            return Err(Error::TooLarge(format!(
                "residue ring of size {size} exceeds 2^16"
            )));
        }
        Ok(RingEnumeration {
            field: field.clone(),
            modulus,
            n,
            size: size as u64,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn deg(&self) -> usize {
        self.n
    }

    pub fn residue(&self, idx: u64) -> Poly {
        debug_assert!(idx < self.size);
        Poly::from_index(&self.field, idx)
    }

    /// Index of an arbitrary polynomial's residue mod the modulus.
    pub fn index_of(&self, p: &Poly) -> Result<u64> {
        let r = p.rem(&self.modulus)?;
        Ok(r.to_index())
    }

    fn zip_digits(&self, a: u64, b: u64, op: impl Fn(FieldElement, FieldElement) -> FieldElement) -> u64 {
        let q = self.field.q();
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.n {
            let da = self.field.element(a % q).expect("digit below q");
            let db = self.field.element(b % q).expect("digit below q");
            out += op(da, db).index() * scale;
            a /= q;
            b /= q;
            scale *= q;
        }
        out
    }

    /// Residue addition directly on indices (digit-wise, no carries).
    pub fn add_idx(&self, a: u64, b: u64) -> u64 {
        self.zip_digits(a, b, |x, y| self.field.add(x, y))
    }

    pub fn sub_idx(&self, a: u64, b: u64) -> u64 {
        self.zip_digits(a, b, |x, y| self.field.sub(x, y))
    }

    pub fn neg_idx(&self, a: u64) -> u64 {
        self.zip_digits(a, 0, |x, _| self.field.neg(x))
    }

    /// Scalar multiplication by a field element, digit-wise on the index.
    pub fn scalar_mul_idx(&self, c: FieldElement, a: u64) -> u64 {
        self.zip_digits(a, 0, |x, _| self.field.mul(c, x))
    }

    /// All residues in canonical order. Materializes size polynomials.
    pub fn residues(&self) -> Vec<Poly> {
        (0..self.size).map(|i| self.residue(i)).collect()
    }
}

/// A gcd-graph specification: monic modulus f of positive degree plus a set
/// of monic proper divisors. Normalized on construction (monic, deduped,
/// sorted), so equal specs compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdGraphSpec {
    field: Field,
    f: Poly,
    d: Vec<Poly>,
}

impl GcdGraphSpec {
    pub fn new(field: &Field, f: &Poly, d: &[Poly]) -> Result<GcdGraphSpec> {
        if f.field() != field {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (f, _) = f.monic()?;
        if f.deg() == Some(0) {
            return Err(Error::DegreeMismatch(
                "gcd-graph modulus must have positive degree".into(),
            ));
        }
        let mut divs = Vec::with_capacity(d.len());
        for g in d {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let (g, _) = g.monic()?;
            if !g.divides(&f) {
                return Err(Error::NotADivisor {
                    g: g.to_string(),
                    f: f.to_string(),
                });
            }
            if g == f {
                return Err(Error::NonProper(g.to_string()));
            }
            divs.push(g);
        }
        divs.sort();
        divs.dedup();
        Ok(GcdGraphSpec {
            field: field.clone(),
            f,
            d: divs,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// The divisor set, monic, deduped, canonically sorted.
    pub fn d(&self) -> &[Poly] {
        &self.d
    }

    pub fn deg_f(&self) -> usize {
        self.f.deg().expect("positive degree by construction")
    }

    pub fn ring_size(&self) -> u128 {
        (self.field.q() as u128).pow(self.deg_f() as u32)
    }

    pub fn enumeration(&self) -> Result<RingEnumeration> {
        RingEnumeration::new(&self.field, &self.f)
    }

    /// The complementary spec: all monic proper divisors of f not in D.
    pub fn complement(&self) -> Result<GcdGraphSpec> {
        let mut rest = Vec::new();
        for g in divisors(&self.f)? {
            if g != self.f && !self.d.contains(&g) {
                rest.push(g);
            }
        }
        GcdGraphSpec::new(&self.field, &self.f, &rest)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.spec_string(),
            "f": self.f.to_string(),
            "D": self.d.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<GcdGraphSpec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("spec JSON must be an object".into()))?;
        let field_s = obj
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("spec JSON needs string field \"field\"".into()))?;
        let field = Field::parse_spec(field_s)?;
        let f_s = obj
            .get("f")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("spec JSON needs string field \"f\"".into()))?;
        let f = Poly::parse(&field, f_s)?;
        let d_v = obj
            .get("D")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("spec JSON needs array field \"D\"".into()))?;
        let d = d_v
            .iter()
            .map(|s| {
                s.as_str()
                    .ok_or_else(|| Error::Parse("divisors must be strings".into()))
                    .and_then(|s| Poly::parse(&field, s))
            })
            .collect::<Result<Vec<_>>>()?;
        GcdGraphSpec::new(&field, &f, &d)
    }
}

impl fmt::Display for GcdGraphSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.d.iter().map(|g| g.to_string()).collect();
        write!(
            out,
            "gcd-graph over F_{} with f = {}, D = {{{}}}",
            self.field.q(),
            self.f,
            ds.join(", ")
        )
    }
}

/// Sorted residue indices of the connection set S_D.
pub fn connection_set(spec: &GcdGraphSpec) -> Result<Vec<u64>> {
    let enumeration = spec.enumeration()?;
    let mut out = Vec::new();
    for idx in 1..enumeration.size() {
        let g = gcd_monic(&enumeration.residue(idx), spec.f())?;
        if spec.d().binary_search(&g).is_ok() {
            out.push(idx);
        }
    }
    Ok(out)
}

/// Whether a connection set (as indices) is invariant under scalar
/// multiplication by every unit of the field — a structural property all
/// S_D share.
pub fn connection_is_scalar_closed(enumeration: &RingEnumeration, s: &[u64]) -> bool {
    let field = enumeration.field().clone();
    for c in field.elements().skip(1) {
        for &idx in s {
            let scaled = enumeration.scalar_mul_idx(c, idx);
            if s.binary_search(&scaled).is_err() {
                return false;
            }
        }
    }
    true
}

fn build_graph(spec: &GcdGraphSpec, parallel: bool) -> Result<Graph> {
    let enumeration = spec.enumeration()?;
    let s = connection_set(spec)?;
    let n = enumeration.size();
    if n.saturating_mul(s.len() as u64) > 1 << 26 {
        return Err(Error::TooLarge(format!(
            "gcd-graph with {n} vertices and {} connection elements",
            s.len()
        )));
    }
    let nbrs_of = |u: u64| -> Vec<u32> {
        let mut list: Vec<u32> = s.iter().map(|&w| enumeration.add_idx(u, w) as u32).collect();
        list.sort_unstable();
        list
    };
    let lists: Vec<Vec<u32>> = if parallel {
        par::map_indices(n, nbrs_of)
    } else {
        (0..n).map(nbrs_of).collect()
    };
    let labels: Vec<String> = (0..n).map(|i| enumeration.residue(i).to_string()).collect();
    Graph::from_neighbor_lists(lists)?.with_labels(labels)
}

/// Builds the gcd-graph, fanning the per-vertex work out in parallel when
/// the `parallel` feature is enabled.
pub fn gcd_graph(spec: &GcdGraphSpec) -> Result<Graph> {
    build_graph(spec, true)
}

/// Single-threaded reference builder; always produces the same graph as
/// `gcd_graph`.
pub fn gcd_graph_sequential(spec: &GcdGraphSpec) -> Result<Graph> {
    build_graph(spec, false)
}

/// All divisors of f with, for every residue, the index of its gcd class:
/// class_of[r] locates gcd(r, f) in `divisors`. One pass of q^n gcds that
/// every exhaustive sweep over divisor subsets reuses.
pub struct GcdClassTable {
    pub enumeration: RingEnumeration,
    pub divisors: Vec<Poly>,
    pub class_of: Vec<u32>,
}

pub fn gcd_class_table(field: &Field, f: &Poly) -> Result<GcdClassTable> {
    let enumeration = RingEnumeration::new(field, f)?;
    let divs = divisors(&enumeration.modulus().clone())?;
    let f = enumeration.modulus().clone();
    let class_of: Vec<u32> = (0..enumeration.size())
        .map(|idx| {
            let g = if idx == 0 {
                f.clone()
            } else {
                gcd_monic(&enumeration.residue(idx), &f).expect("nonzero residue")
            };
            divs.binary_search(&g).expect("gcd is a divisor") as u32
        })
        .collect();
    Ok(GcdClassTable {
        enumeration,
        divisors: divs,
        class_of,
    })
}

/// D projected along a divisor g of f: the set {gcd(f_i, g)}, deduped and
/// sorted. The image divisor set of the reduction R/(f) -> R/(g).
pub fn project_divisors(spec: &GcdGraphSpec, g: &Poly) -> Result<Vec<Poly>> {
    if !g.divides(spec.f()) {
        return Err(Error::NotADivisor {
            g: g.to_string(),
            f: spec.f().to_string(),
        });
    }
    let mut out = Vec::with_capacity(spec.d().len());
    for fi in spec.d() {
        out.push(gcd_monic(fi, g)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

// --- connectedness ---

/// Why a gcd-graph is connected or not. Every disconnected reason carries
/// enough data to recount the components without touching the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectednessReason {
    /// gcd over D is 1 and no binary obstruction applies.
    GcdOne,
    /// D is empty: the graph has no edges at all.
    EmptyConnection,
    /// Every member of D is divisible by this nonunit, so edges never leave
    /// a coset of its ideal.
    CommonDivisor(Poly),
    /// q = 2 and x(x+1) | f: the projection to F_2[x]/(x^2+x) pins all
    /// connection elements into an index-2 subgroup. Carries the projected
    /// divisor set.
    BinaryProjection(Vec<Poly>),
    /// q = 2 and x(x+1) | f, but the projected divisors span the quotient.
    BinaryProjectionSpans(Vec<Poly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectednessVerdict {
    pub connected: bool,
    /// Exact number of connected components.
    pub components: u128,
    pub reason: ConnectednessReason,
}

/// Decides connectedness in closed form (no graph is built):
///  * empty D: q^deg f components;
///  * gcd(D) = e nonunit: q^deg e times the components of the quotient
///    graph over f/e;
///  * gcd(D) = 1: connected, except over F_2 with x(x+1) | f, where the
///    graph is connected iff the projection of D to F_2[x]/(x^2+x) contains
///    at least two divisors besides x^2+x itself — otherwise exactly 2
///    components.
pub fn predicate_connected(spec: &GcdGraphSpec) -> Result<ConnectednessVerdict> {
    if spec.d().is_empty() {
        return Ok(ConnectednessVerdict {
            connected: spec.ring_size() == 1,
            components: spec.ring_size(),
            reason: ConnectednessReason::EmptyConnection,
        });
    }
    let field = spec.field().clone();
    let mut e = spec.d()[0].clone();
    for g in &spec.d()[1..] {
        e = gcd_monic(&e, g)?;
    }
    if !e.is_one() {
        // components multiply along the quotient to f / e
        let fe = spec.f().divexact(&e)?;
        let de: Vec<Poly> = spec
            .d()
            .iter()
            .map(|fi| fi.divexact(&e))
            .collect::<Result<Vec<_>>>()?;
        let sub = GcdGraphSpec::new(&field, &fe, &de)?;
        let inner = predicate_connected(&sub)?;
        let cosets = (field.q() as u128).pow(e.deg().expect("nonunit") as u32);
        return Ok(ConnectednessVerdict {
            connected: false,
            components: cosets * inner.components,
            reason: ConnectednessReason::CommonDivisor(e),
        });
    }
    if field.q() == 2 {
        let xx1 = Poly::from_indices(&field, &[0, 1, 1])?; // x^2 + x
        if xx1.divides(spec.f()) {
            let dbar = project_divisors(spec, &xx1)?;
            let others = dbar.iter().filter(|g| **g != xx1).count();
            debug_assert!(others >= 1, "gcd(D) = 1 forces a proper projection");
            if others >= 2 {
                return Ok(ConnectednessVerdict {
                    connected: true,
                    components: 1,
                    reason: ConnectednessReason::BinaryProjectionSpans(dbar),
                });
            }
            return Ok(ConnectednessVerdict {
                connected: false,
                components: 2,
                reason: ConnectednessReason::BinaryProjection(dbar),
            });
        }
    }
    Ok(ConnectednessVerdict {
        connected: true,
        components: 1,
        reason: ConnectednessReason::GcdOne,
    })
}

// --- bipartiteness ---

/// How the two sides of a bipartition are described.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipartitionRule {
    /// Side 0 is the ideal (c); side 1 is its unique other coset (q = 2,
    /// c linear).
    MultiplesOf(Poly),
    /// Side 0 is { r : r(0) = r(1) }; side 1 is the rest (q = 2).
    EqualValues,
    /// Coloring found by breadth-first search (disconnected cases only).
    Explicit(Vec<u8>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteVerdict {
    pub bipartite: bool,
    pub rule: Option<BipartitionRule>,
    /// True when the answer came from searching the realized graph rather
    /// than a closed-form criterion.
    pub oracle_only: bool,
}

/// Decides bipartiteness. Connected graphs are decided in closed form:
/// never bipartite unless q = 2, and over F_2 governed by c = gcd(f, x^2+x)
/// — for linear c the graph is bipartite iff c divides no member of D, and
/// for c = x^2+x iff the projected divisor set has exactly two members.
/// Disconnected graphs fall back to a breadth-first two-coloring of the
/// realized graph (flagged `oracle_only`).
pub fn predicate_bipartite(spec: &GcdGraphSpec) -> Result<BipartiteVerdict> {
    let conn = predicate_connected(spec)?;
    if !conn.connected {
        let graph = gcd_graph(spec)?;
        return Ok(match graph.bipartition() {
            Some(colors) => BipartiteVerdict {
                bipartite: true,
                rule: Some(BipartitionRule::Explicit(colors)),
                oracle_only: true,
            },
            None => BipartiteVerdict {
                bipartite: false,
                rule: None,
                oracle_only: true,
            },
        });
    }
    let field = spec.field().clone();
    if field.q() != 2 {
        // connected and at least one edge: an odd scalar closure obstruction
        // rules out any index-2 split unless q = 2
        return Ok(BipartiteVerdict {
            bipartite: false,
            rule: None,
            oracle_only: false,
        });
    }
    let x = Poly::x(&field);
    let x1 = Poly::from_indices(&field, &[1, 1])?;
    let xx1 = Poly::from_indices(&field, &[0, 1, 1])?;
    let c = gcd_monic(&xx1, spec.f())?;
    if c.is_one() {
        return Ok(BipartiteVerdict {
            bipartite: false,
            rule: None,
            oracle_only: false,
        });
    }
    if c == x || c == x1 {
        let clean = spec.d().iter().all(|fi| !c.divides(fi));
        return Ok(BipartiteVerdict {
            bipartite: clean,
            rule: clean.then(|| BipartitionRule::MultiplesOf(c)),
            oracle_only: false,
        });
    }
    // c = x(x+1), connected: bipartite iff the projection has exactly two
    // members; the partition depends on which pair it is.
    let dbar = project_divisors(spec, &xx1)?;
    if dbar.len() != 2 {
        return Ok(BipartiteVerdict {
            bipartite: false,
            rule: None,
            oracle_only: false,
        });
    }
    let one = Poly::one(&field);
    let rule = if dbar == [one.clone(), x1.clone()] {
        BipartitionRule::MultiplesOf(x)
    } else if dbar == [one, x.clone()] {
        BipartitionRule::MultiplesOf(x1)
    } else if dbar == [x, x1] {
        BipartitionRule::EqualValues
    } else {
        // pairs with x^2+x cannot be connected, so this is unreachable
        unreachable!("connected projection pair must avoid x^2+x")
    };
    Ok(BipartiteVerdict {
        bipartite: true,
        rule: Some(rule),
        oracle_only: false,
    })
}

/// Materializes a partition rule as the two sorted residue index sets.
pub fn realize_bipartition(
    spec: &GcdGraphSpec,
    rule: &BipartitionRule,
) -> Result<(Vec<u64>, Vec<u64>)> {
    let enumeration = spec.enumeration()?;
    let mut side0 = Vec::new();
    let mut side1 = Vec::new();
    match rule {
        BipartitionRule::MultiplesOf(c) => {
            for idx in 0..enumeration.size() {
                let r = enumeration.residue(idx);
                if c.divides(&r) {
                    side0.push(idx);
                } else {
                    side1.push(idx);
                }
            }
        }
        BipartitionRule::EqualValues => {
            let field = spec.field();
            for idx in 0..enumeration.size() {
                let r = enumeration.residue(idx);
                if r.eval(field.zero()) == r.eval(field.one()) {
                    side0.push(idx);
                } else {
                    side1.push(idx);
                }
            }
        }
        BipartitionRule::Explicit(colors) => {
            if colors.len() as u64 != enumeration.size() {
                return Err(Error::BadGraph(
                    "coloring length does not match the ring size".into(),
                ));
            }
            for (idx, &c) in colors.iter().enumerate() {
                if c == 0 {
                    side0.push(idx as u64);
                } else {
                    side1.push(idx as u64);
                }
            }
        }
    }
    Ok((side0, side1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn p(field: &Field, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    fn spec(field: &Field, f: &str, d: &[&str]) -> GcdGraphSpec {
        let fp = p(field, f);
        let dp: Vec<Poly> = d.iter().map(|s| p(field, s)).collect();
        GcdGraphSpec::new(field, &fp, &dp).unwrap()
    }

    #[test]
    fn spec_validation() {
        let f2 = f2();
        let f = p(&f2, "x^2+x");
        assert!(matches!(
            GcdGraphSpec::new(&f2, &f, &[f.clone()]),
            Err(Error::NonProper(_))
        ));
        assert!(matches!(
            GcdGraphSpec::new(&f2, &f, &[p(&f2, "x^2+1")]),
            Err(Error::NotADivisor { .. })
        ));
        assert!(matches!(
            GcdGraphSpec::new(&f2, &p(&f2, "1"), &[]),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(
            GcdGraphSpec::new(&f2, &Poly::zero(&f2), &[]),
            Err(Error::ZeroPolynomial)
        ));
        let f3 = f3();
        assert!(matches!(
            GcdGraphSpec::new(&f3, &p(&f2, "x^2"), &[]),
            Err(Error::FieldMismatch)
        ));
        // monicization and dedup of D
        let s = GcdGraphSpec::new(
            &f3,
            &p(&f3, "2*x^2"),
            &[p(&f3, "2*x"), p(&f3, "x"), p(&f3, "1")],
        )
        .unwrap();
        assert_eq!(s.f(), &p(&f3, "x^2"));
        assert_eq!(s.d(), &[p(&f3, "1"), p(&f3, "x")]);
    }

    #[test]
    fn ring_enumeration_arithmetic() {
        let f3 = f3();
        let ring = RingEnumeration::new(&f3, &p(&f3, "x^2")).unwrap();
        assert_eq!(ring.size(), 9);
        for a in 0..9 {
            for b in 0..9 {
                let direct = ring.add_idx(a, b);
                let via_poly = ring
                    .index_of(&(&ring.residue(a) + &ring.residue(b)))
                    .unwrap();
                assert_eq!(direct, via_poly);
                let ds = ring.sub_idx(a, b);
                let vs = ring
                    .index_of(&(&ring.residue(a) - &ring.residue(b)))
                    .unwrap();
                assert_eq!(ds, vs);
            }
            assert_eq!(ring.add_idx(a, ring.neg_idx(a)), 0);
            let two = f3.element(2).unwrap();
            assert_eq!(
                ring.scalar_mul_idx(two, a),
                ring.index_of(&ring.residue(a).scale(two)).unwrap()
            );
        }
    }

    #[test]
    fn unitary_graph_on_prime_modulus_is_complete() {
        let f3 = f3();
        let s = spec(&f3, "x", &["1"]);
        let g = gcd_graph(&s).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.clique_number().unwrap(), 3);
    }

    #[test]
    fn binary_unitary_square_is_c4() {
        let f2 = f2();
        let s = spec(&f2, "x^2", &["1"]);
        let g = gcd_graph(&s).unwrap();
        // S = {1, x+1}: the 4-cycle 0,1,x,x+1 with parts (x) and 1+(x)
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.bipartition().is_some());
        assert!(g.is_connected());
        assert_eq!(g.labels().unwrap(), &["0", "1", "x", "x+1"]);
    }

    #[test]
    fn connection_sets() {
        let f2 = f2();
        let s = spec(&f2, "x^2", &["1"]);
        assert_eq!(connection_set(&s).unwrap(), vec![1, 3]);
        let s = spec(&f2, "x^2", &["x"]);
        assert_eq!(connection_set(&s).unwrap(), vec![2]);
        let s = spec(&f2, "x^2", &[]);
        assert!(connection_set(&s).unwrap().is_empty());
        let enumeration = s.enumeration().unwrap();
        assert!(connection_is_scalar_closed(
            &enumeration,
            &connection_set(&spec(&f2, "x^2", &["1"])).unwrap()
        ));
    }

    #[test]
    fn parallel_and_sequential_builders_agree() {
        let f3 = f3();
        for (f, d) in [
            ("x^2+x", vec!["1", "x"]),
            ("x^3+2*x", vec!["x^2+2", "x"]),
            ("x^2", vec!["1", "x"]),
        ] {
            let s = spec(&f3, f, &d.iter().map(|x| *x).collect::<Vec<_>>());
            let a = gcd_graph(&s).unwrap();
            let b = gcd_graph_sequential(&s).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn class_table_matches_direct_gcds() {
        let f2 = f2();
        let f = p(&f2, "x^3+x^2"); // x^2(x+1)
        let table = gcd_class_table(&f2, &f).unwrap();
        assert_eq!(table.divisors.len(), 6);
        for idx in 0..table.enumeration.size() {
            let expect = if idx == 0 {
                f.clone()
            } else {
                gcd_monic(&table.enumeration.residue(idx), &f).unwrap()
            };
            assert_eq!(table.divisors[table.class_of[idx as usize] as usize], expect);
        }
    }

    #[test]
    fn complement_spec() {
        let f2 = f2();
        let s = spec(&f2, "x^2", &["1"]);
        assert_eq!(s.complement().unwrap().d(), &[p(&f2, "x")]);
        let s = spec(&f2, "x^2+x", &[]);
        assert_eq!(
            s.complement().unwrap().d(),
            &[p(&f2, "1"), p(&f2, "x"), p(&f2, "x+1")]
        );
    }

    #[test]
    fn json_round_trip() {
        let f4 = Field::new(2, 2, None).unwrap();
        let f = p(&f4, "x^2+[0,1]*x");
        let s = GcdGraphSpec::new(&f4, &f, &[p(&f4, "1"), p(&f4, "x")]).unwrap();
        let j = s.to_json();
        assert_eq!(GcdGraphSpec::from_json(&j).unwrap(), s);
        assert!(GcdGraphSpec::from_json(&json!({"field": "2"})).is_err());
    }

    #[test]
    fn connectedness_closed_form_matches_bfs() {
        // exhaustive over F_2 deg <= 3 and F_3 deg <= 2, all divisor subsets
        for field in [f2(), f3()] {
            for deg in 1..=if field.q() == 2 { 3 } else { 2 } {
                for f in crate::polyring::monic_of_degree(&field, deg).unwrap() {
                    let divs: Vec<Poly> = divisors(&f)
                        .unwrap()
                        .into_iter()
                        .filter(|g| *g != f)
                        .collect();
                    for mask in 0u32..1 << divs.len() {
                        let d: Vec<Poly> = divs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, g)| g.clone())
                            .collect();
                        let s = GcdGraphSpec::new(&field, &f, &d).unwrap();
                        let verdict = predicate_connected(&s).unwrap();
                        let graph = gcd_graph(&s).unwrap();
                        assert_eq!(
                            verdict.connected,
                            graph.is_connected(),
                            "connectivity mismatch for {s}"
                        );
                        assert_eq!(
                            verdict.components,
                            graph.components().len() as u128,
                            "component count mismatch for {s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn binary_hard_case_connectivity() {
        let f2 = f2();
        // f = x(x+1), D = {1}: unitary graph on F_2 x F_2 has 2 components
        let s = spec(&f2, "x^2+x", &["1"]);
        let v = predicate_connected(&s).unwrap();
        assert!(!v.connected);
        assert_eq!(v.components, 2);
        assert!(matches!(v.reason, ConnectednessReason::BinaryProjection(_)));
        // D = {x, x+1}: projection has two members besides x^2+x
        let s = spec(&f2, "x^2+x", &["x", "x+1"]);
        let v = predicate_connected(&s).unwrap();
        assert!(v.connected);
        // common divisor: f = x^2, D = {x}
        let s = spec(&f2, "x^2", &["x"]);
        let v = predicate_connected(&s).unwrap();
        assert_eq!(v.components, 2);
        assert!(matches!(v.reason, ConnectednessReason::CommonDivisor(_)));
        // empty D
        let s = spec(&f2, "x^2", &[]);
        let v = predicate_connected(&s).unwrap();
        assert_eq!(v.components, 4);
    }

    #[test]
    fn bipartite_closed_forms() {
        let f2 = f2();
        let f3 = f3();
        // C4: bipartite with parts (x), 1+(x)
        let v = predicate_bipartite(&spec(&f2, "x^2", &["1"])).unwrap();
        assert!(v.bipartite && !v.oracle_only);
        assert_eq!(v.rule, Some(BipartitionRule::MultiplesOf(p(&f2, "x"))));
        // K4: not bipartite
        let v = predicate_bipartite(&spec(&f2, "x^2", &["1", "x"])).unwrap();
        assert!(!v.bipartite && !v.oracle_only);
        // odd q connected: never bipartite
        let v = predicate_bipartite(&spec(&f3, "x^2", &["1", "x"])).unwrap();
        assert!(!v.bipartite && !v.oracle_only);
        // hard case pair {x, x+1}
        let v = predicate_bipartite(&spec(&f2, "x^2+x", &["x", "x+1"])).unwrap();
        assert!(v.bipartite && !v.oracle_only);
        assert_eq!(v.rule, Some(BipartitionRule::EqualValues));
        // disconnected: matching via oracle
        let v = predicate_bipartite(&spec(&f2, "x^2", &["x"])).unwrap();
        assert!(v.bipartite && v.oracle_only);
    }

    #[test]
    fn bipartite_verdicts_match_bfs_exhaustively() {
        for field in [f2(), f3()] {
            for deg in 1..=if field.q() == 2 { 3 } else { 2 } {
                for f in crate::polyring::monic_of_degree(&field, deg).unwrap() {
                    let divs: Vec<Poly> = divisors(&f)
                        .unwrap()
                        .into_iter()
                        .filter(|g| *g != f)
                        .collect();
                    for mask in 0u32..1 << divs.len() {
                        let d: Vec<Poly> = divs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, g)| g.clone())
                            .collect();
                        let s = GcdGraphSpec::new(&field, &f, &d).unwrap();
                        let verdict = predicate_bipartite(&s).unwrap();
                        let graph = gcd_graph(&s).unwrap();
                        assert_eq!(
                            verdict.bipartite,
                            graph.bipartition().is_some(),
                            "bipartite mismatch for {s}"
                        );
                        if let Some(rule) = &verdict.rule {
                            let (s0, s1) = realize_bipartition(&s, rule).unwrap();
                            assert_eq!(s0.len() + s1.len(), graph.n());
                            for (u, v) in graph.edges() {
                                let u0 = s0.binary_search(&(u as u64)).is_ok();
                                let v0 = s0.binary_search(&(v as u64)).is_ok();
                                assert_ne!(u0, v0, "partition not proper for {s}");
                            }
                        }
                    }
                }
            }
        }
    }
}
