//! Integral spectra of gcd-graphs, two independent ways.
//!
//! The closed form: the eigenvalue attached to a residue g is the sum, over
//! the divisors f_i in D, of the Ramanujan sum for modulus f/f_i evaluated
//! at g, and each Ramanujan sum collapses to mu(t) * phi(m)/phi(t) with
//! t = m/gcd(m, g). Everything is an integer and depends only on gcd(g, f),
//! so the whole spectrum is a small table fanned out over residues.
//!
//! The oracle: the same eigenvalues summed character by character in
//! Z[zeta_p], using the additive character g -> zeta^Tr(top coefficient).
//! No rounding anywhere; the two computations must agree coefficient for
//! coefficient, and the oracle must come out rational on its own.

use serde_json::{json, Value};

use crate::cyclo::CycloInt;
use crate::error::{Error, Result};
use crate::gcdgraph::{connection_set, gcd_class_table, GcdGraphSpec, RingEnumeration};
use crate::graphcore::Graph;
use crate::par;
use crate::polyring::{euler_phi, gcd_monic, mobius, Poly};

/// Residue rings larger than this are rejected by the brute-force spectrum
/// (it walks all residues against all connection elements).
pub const MAX_BRUTEFORCE_SIZE: u64 = 1 << 12;

/// Largest vertex count accepted by the moment verifier.
pub const MAX_MOMENT_VERTICES: usize = 2048;

/// Highest walk length the moment verifier knows closed trace forms for.
pub const MAX_MOMENT_ORDER: u32 = 4;

/// Ramanujan sum for modulus m at g: the sum of zeta^Tr(psi(h*g)) over the
/// units h of F_q[x]/(m), evaluated in closed form as
/// mu(t) * phi(m) / phi(t) with t = m / gcd(m, g).
pub fn ramanujan_formula(g: &Poly, modulus: &Poly) -> Result<i64> {
    if modulus.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, _) = modulus.monic()?;
    if m.is_constant() {
        // zero ring: the empty product of unit factors, a single trivial term
        return Ok(1);
    }
    let d = gcd_monic(&m, g)?;
    let t = m.divexact(&d)?;
    let mu = mobius(&t)?;
    if mu == 0 {
        return Ok(0);
    }
    let phi_m = euler_phi(&m)?;
    let phi_t = euler_phi(&t)?;
    debug_assert_eq!(phi_m % phi_t, 0, "phi(t) divides phi(m) when t | m");
    Ok(mu * (phi_m / phi_t) as i64)
}

/// The additive-character pairing on F_q[x]/(f): residues a, b map to the
/// exponent Tr(psi(a*b mod f)) in [0, p), where psi reads off the
/// coefficient of x^(n-1) and Tr is the absolute trace of F_q.
pub struct CharacterSystem {
    enumeration: RingEnumeration,
    /// Trace exponent of each field element, indexed by element index.
    trace_exp: Vec<u64>,
    /// q^(n-1): dividing a residue index by this isolates the top digit.
    top_divisor: u64,
}

impl CharacterSystem {
    pub fn new(enumeration: RingEnumeration) -> CharacterSystem {
        let field = enumeration.field().clone();
        let trace_exp = field.elements().map(|e| field.trace(e)).collect();
        let top_divisor = (field.q() as u128).pow(enumeration.deg() as u32 - 1) as u64;
        CharacterSystem {
            enumeration,
            trace_exp,
            top_divisor,
        }
    }

    pub fn enumeration(&self) -> &RingEnumeration {
        &self.enumeration
    }

    pub fn p(&self) -> u64 {
        self.enumeration.field().p()
    }

    /// Exponent of the character value at a single residue: Tr(psi(r)).
    pub fn exponent_at(&self, idx: u64) -> u64 {
        self.trace_exp[(idx / self.top_divisor) as usize]
    }

    /// Exponent of the pairing of two residues: Tr(psi(a*b mod f)).
    pub fn exponent(&self, a: u64, b: u64) -> Result<u64> {
        let prod = &self.enumeration.residue(a) * &self.enumeration.residue(b);
        Ok(self.exponent_at(self.enumeration.index_of(&prod)?))
    }
}

/// Ramanujan sum the slow way: a literal unit-by-unit character sum in
/// Z[zeta_p]. The independent check on `ramanujan_formula`.
pub fn ramanujan_bruteforce(g: &Poly, modulus: &Poly) -> Result<CycloInt> {
    let field = modulus.field().clone();
    if modulus.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, _) = modulus.monic()?;
    if m.is_constant() {
        return Ok(CycloInt::from_int(field.p(), 1));
    }
    let chars = CharacterSystem::new(RingEnumeration::new(&field, &m)?);
    let ring = chars.enumeration();
    let g_idx = ring.index_of(g)?;
    let mut acc = CycloInt::zero(field.p());
    for h in 0..ring.size() {
        if h == 0 {
            continue;
        }
        if gcd_monic(&ring.residue(h), &m)?.is_one() {
            acc.add_zeta(chars.exponent(h, g_idx)?);
        }
    }
    Ok(acc)
}

/// Eigenvalues of an arbitrary translation graph on the ring, one exact
/// cyclotomic sum per residue: entry a is the sum of zeta^Tr(psi(a*s)) over
/// the connection indices s.
pub fn cayley_spectrum_bruteforce(
    chars: &CharacterSystem,
    connection: &[u64],
) -> Result<Vec<CycloInt>> {
    let p = chars.p();
    let ring = chars.enumeration();
    let n = ring.size();
    if n > MAX_BRUTEFORCE_SIZE {
        return Err(Error::TooLarge(format!(
            "brute-force spectrum on {n} residues exceeds 2^12"
        )));
    }
    for &s in connection {
        if s >= n {
            return Err(Error::ElementOutOfRange(s));
        }
    }
    (0..n)
        .map(|a| {
            let mut acc = CycloInt::zero(p);
            for &s in connection {
                acc.add_zeta(chars.exponent(a, s)?);
            }
            Ok(acc)
        })
        .collect()
}

fn spectrum_bruteforce_impl(spec: &GcdGraphSpec, parallel: bool) -> Result<Vec<CycloInt>> {
    let enumeration = spec.enumeration()?;
    let n = enumeration.size();
    if n > MAX_BRUTEFORCE_SIZE {
        return Err(Error::TooLarge(format!(
            "brute-force spectrum on {n} residues exceeds 2^12"
        )));
    }
    let s = connection_set(spec)?;
    let chars = CharacterSystem::new(enumeration);
    let one = |a: u64| -> CycloInt {
        let mut acc = CycloInt::zero(chars.p());
        for &si in &s {
            let e = chars
                .exponent(a, si)
                .expect("connection indices lie in the ring");
            acc.add_zeta(e);
        }
        acc
    };
    Ok(if parallel {
        par::map_indices(n, one)
    } else {
        (0..n).map(one).collect()
    })
}

/// Per-residue eigenvalues as exact cyclotomic sums, computed with no help
/// from the closed form.
pub fn spectrum_bruteforce(spec: &GcdGraphSpec) -> Result<Vec<CycloInt>> {
    spectrum_bruteforce_impl(spec, true)
}

/// Single-threaded twin of `spectrum_bruteforce`.
pub fn spectrum_bruteforce_sequential(spec: &GcdGraphSpec) -> Result<Vec<CycloInt>> {
    spectrum_bruteforce_impl(spec, false)
}

/// The full integral spectrum of a gcd-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub spec: GcdGraphSpec,
    /// Degree of the graph, i.e. the size of the connection set.
    pub degree: u64,
    /// One eigenvalue per divisor of f, aligned with the divisor order of
    /// the gcd class table.
    pub class_values: Vec<(Poly, i64)>,
    /// Eigenvalue of each residue in canonical order.
    pub eigenvalues: Vec<i64>,
}

impl SpectrumTable {
    /// Distinct eigenvalues with multiplicities, ascending by value.
    pub fn multiset(&self) -> Vec<(i64, u64)> {
        eigenvalue_multiset(&self.eigenvalues)
    }

    pub fn to_json(&self) -> Value {
        let multiset: Vec<Value> = self
            .multiset()
            .into_iter()
            .map(|(v, m)| json!([v, m]))
            .collect();
        let classes: Vec<Value> = self
            .class_values
            .iter()
            .map(|(g, v)| json!({"gcd": g.to_string(), "value": v}))
            .collect();
        json!({
            "spec": self.spec.to_json(),
            "degree": self.degree,
            "class_values": classes,
            "eigenvalues": self.eigenvalues,
            "multiset": multiset,
        })
    }
}

/// Sorted (value, multiplicity) pairs of an eigenvalue list.
pub fn eigenvalue_multiset(eigenvalues: &[i64]) -> Vec<(i64, u64)> {
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(i64, u64)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((w, m)) if *w == v => *m += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn spectrum_impl(spec: &GcdGraphSpec, parallel: bool) -> Result<SpectrumTable> {
    let table = gcd_class_table(spec.field(), spec.f())?;
    // one Ramanujan evaluation per (divisor class, member of D); everything
    // after this line is table lookup
    let mut class_values = Vec::with_capacity(table.divisors.len());
    for d_j in &table.divisors {
        let mut lambda = 0i64;
        for fi in spec.d() {
            let m = spec.f().divexact(fi)?;
            lambda += ramanujan_formula(d_j, &m)?;
        }
        class_values.push((d_j.clone(), lambda));
    }
    let n = table.enumeration.size();
    let class_of = &table.class_of;
    let lookup = |idx: u64| class_values[class_of[idx as usize] as usize].1;
    let eigenvalues: Vec<i64> = if parallel {
        par::map_indices(n, lookup)
    } else {
        (0..n).map(lookup).collect()
    };
    let degree = connection_set(spec)?.len() as u64;
    Ok(SpectrumTable {
        spec: spec.clone(),
        degree,
        class_values,
        eigenvalues,
    })
}

/// Integral spectrum via the Ramanujan closed form, one value per residue.
pub fn spectrum(spec: &GcdGraphSpec) -> Result<SpectrumTable> {
    spectrum_impl(spec, true)
}

/// Single-threaded twin of `spectrum`.
pub fn spectrum_sequential(spec: &GcdGraphSpec) -> Result<SpectrumTable> {
    spectrum_impl(spec, false)
}

/// Recomputes the spectrum by brute force and demands exact per-residue
/// agreement with the closed form, including rationality of every
/// cyclotomic sum.
pub fn check_spectrum_against_bruteforce(spec: &GcdGraphSpec) -> Result<SpectrumTable> {
    let table = spectrum(spec)?;
    let direct = spectrum_bruteforce(spec)?;
    for (idx, value) in direct.iter().enumerate() {
        let v = value.as_i64()?;
        if v != table.eigenvalues[idx] {
            return Err(Error::OracleMismatch(format!(
                "eigenvalue at residue index {idx}: closed form {}, character sum {v}",
                table.eigenvalues[idx]
            )));
        }
    }
    Ok(table)
}

/// Closed walk counts tr A^k of a graph for k = 0..=k_max (k_max <= 4),
/// computed row by row from the adjacency lists in exact integers.
pub fn walk_traces(graph: &Graph, k_max: u32) -> Result<Vec<i128>> {
    if k_max > MAX_MOMENT_ORDER {
        return Err(Error::HypothesesViolated(format!(
            "walk traces implemented up to order {MAX_MOMENT_ORDER}, got {k_max}"
        )));
    }
    let n = graph.n();
    if n > MAX_MOMENT_VERTICES {
        return Err(Error::TooLarge(format!(
            "moment verification on {n} vertices exceeds {MAX_MOMENT_VERTICES}"
        )));
    }
    let mut traces = vec![n as i128];
    if k_max >= 1 {
        traces.push(0); // simple graph: empty diagonal
    }
    if k_max >= 2 {
        traces.push(2 * graph.edge_count() as i128);
    }
    if k_max >= 3 {
        // per-row square: row[v] = (A^2)_{uv}, then tr A^3 pairs it with A
        // and tr A^4 is its squared norm
        let mut t3: i128 = 0;
        let mut t4: i128 = 0;
        let mut row = vec![0u32; n];
        for u in 0..n {
            for &w in graph.neighbors(u) {
                for &v in graph.neighbors(w as usize) {
                    row[v as usize] += 1;
                }
            }
            for &v in graph.neighbors(u) {
                t3 += row[v as usize] as i128;
            }
            for v in 0..n {
                let c = row[v] as i128;
                t4 += c * c;
                row[v] = 0;
            }
        }
        traces.push(t3);
        if k_max >= 4 {
            traces.push(t4);
        }
    }
    Ok(traces)
}

/// Confirms that claimed eigenvalues reproduce the graph's closed walk
/// counts: sum of lambda^k must equal tr A^k for every k = 0..=k_max.
pub fn verify_moments(graph: &Graph, eigenvalues: &[i64], k_max: u32) -> Result<Vec<i128>> {
    if eigenvalues.len() != graph.n() {
        return Err(Error::BadGraph(format!(
            "{} eigenvalues against {} vertices",
            eigenvalues.len(),
            graph.n()
        )));
    }
    let traces = walk_traces(graph, k_max)?;
    for (k, trace) in traces.iter().enumerate() {
        let power_sum: i128 = eigenvalues
            .iter()
            .map(|&l| (l as i128).pow(k as u32))
            .sum();
        if power_sum != *trace {
            return Err(Error::MomentMismatch { k: k as u32 });
        }
    }
    Ok(traces)
}

/// Convenience wrapper: spectrum, brute-force cross-check, realized graph,
/// and moment verification in one pass. The strongest self-check the
/// library offers for a single spec.
pub fn certified_spectrum(spec: &GcdGraphSpec, k_max: u32) -> Result<SpectrumTable> {
    let table = check_spectrum_against_bruteforce(spec)?;
    let graph = crate::gcdgraph::gcd_graph(spec)?;
    verify_moments(&graph, &table.eigenvalues, k_max)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::polyring::{divisors, monic_of_degree};

    fn p(field: &Field, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    fn spec(field: &Field, f: &str, d: &[&str]) -> GcdGraphSpec {
        let fp = p(field, f);
        let dp: Vec<Poly> = d.iter().map(|s| p(field, s)).collect();
        GcdGraphSpec::new(field, &fp, &dp).unwrap()
    }

    #[test]
    fn ramanujan_formula_basics() {
        let f2 = Field::prime(2).unwrap();
        let f = p(&f2, "x^2+x");
        // at g = 0 the sum counts all units
        assert_eq!(
            ramanujan_formula(&Poly::zero(&f2), &f).unwrap(),
            euler_phi(&f).unwrap() as i64
        );
        // coprime g on squarefree modulus: mu(f)
        assert_eq!(ramanujan_formula(&Poly::one(&f2), &f).unwrap(), 1);
        let fx2 = p(&f2, "x^2");
        assert_eq!(ramanujan_formula(&Poly::one(&f2), &fx2).unwrap(), 0);
        // constant modulus: empty product, single trivial character term
        assert_eq!(ramanujan_formula(&Poly::one(&f2), &Poly::one(&f2)).unwrap(), 1);
    }

    #[test]
    fn ramanujan_formula_matches_character_sum() {
        // exhaustive: all moduli of degree <= 3 over F_2 and <= 2 over F_3,
        // every residue
        for field in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let dmax = if field.q() == 2 { 3 } else { 2 };
            for deg in 1..=dmax {
                for f in monic_of_degree(&field, deg).unwrap() {
                    let ring = RingEnumeration::new(&field, &f).unwrap();
                    for g_idx in 0..ring.size() {
                        let g = ring.residue(g_idx);
                        let direct = ramanujan_bruteforce(&g, &f).unwrap();
                        let closed = ramanujan_formula(&g, &f).unwrap();
                        assert_eq!(
                            direct.as_i64().unwrap(),
                            closed,
                            "modulus {f}, residue {g}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ramanujan_in_extension_field() {
        let f4 = Field::new(2, 2, None).unwrap();
        for f in monic_of_degree(&f4, 2).unwrap() {
            let ring = RingEnumeration::new(&f4, &f).unwrap();
            for g_idx in 0..ring.size() {
                let g = ring.residue(g_idx);
                let direct = ramanujan_bruteforce(&g, &f).unwrap();
                let closed = ramanujan_formula(&g, &f).unwrap();
                assert_eq!(direct.as_i64().unwrap(), closed);
            }
        }
    }

    #[test]
    fn c4_spectrum_pinned() {
        let f2 = Field::prime(2).unwrap();
        let s = spec(&f2, "x^2", &["1"]);
        let table = spectrum(&s).unwrap();
        assert_eq!(table.degree, 2);
        assert_eq!(table.multiset(), vec![(-2, 1), (0, 2), (2, 1)]);
        // trivial character sees the degree
        assert_eq!(table.eigenvalues[0], 2);
    }

    #[test]
    fn complete_graph_spectrum_pinned() {
        // f = x^2 over F_2 with D = {1, x} realizes K_4
        let f2 = Field::prime(2).unwrap();
        let table = spectrum(&spec(&f2, "x^2", &["1", "x"])).unwrap();
        assert_eq!(table.multiset(), vec![(-1, 3), (3, 1)]);
    }

    #[test]
    fn spectrum_matches_bruteforce_exhaustively() {
        for field in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let dmax = if field.q() == 2 { 3 } else { 2 };
            for deg in 1..=dmax {
                for f in monic_of_degree(&field, deg).unwrap() {
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
                        check_spectrum_against_bruteforce(&s).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_spectra_agree() {
        let f3 = Field::prime(3).unwrap();
        let s = spec(&f3, "x^3+2*x", &["1", "x"]);
        assert_eq!(spectrum(&s).unwrap(), spectrum_sequential(&s).unwrap());
        assert_eq!(
            spectrum_bruteforce(&s).unwrap(),
            spectrum_bruteforce_sequential(&s).unwrap()
        );
    }

    #[test]
    fn moments_catch_corruption() {
        let f2 = Field::prime(2).unwrap();
        let s = spec(&f2, "x^2", &["1"]);
        let table = certified_spectrum(&s, 4).unwrap();
        let graph = crate::gcdgraph::gcd_graph(&s).unwrap();
        let traces = verify_moments(&graph, &table.eigenvalues, 4).unwrap();
        assert_eq!(traces, vec![4, 0, 8, 0, 32]);
        let mut bad = table.eigenvalues.clone();
        bad[1] += 1;
        assert!(matches!(
            verify_moments(&graph, &bad, 4),
            Err(Error::MomentMismatch { .. })
        ));
        // a wrong count is rejected before any arithmetic
        assert!(matches!(
            verify_moments(&graph, &table.eigenvalues[1..], 4),
            Err(Error::BadGraph(_))
        ));
    }

    #[test]
    fn walk_traces_against_known_graphs() {
        // 5-cycle: tr A^2 = 10, tr A^3 = 0, tr A^4 = 30
        let c5 = Graph::cycle(5);
        assert_eq!(walk_traces(&c5, 4).unwrap(), vec![5, 0, 10, 0, 30]);
        // triangle: tr A^3 = 6 closed triangles walks
        let k3 = Graph::complete(3);
        assert_eq!(walk_traces(&k3, 4).unwrap(), vec![3, 0, 6, 6, 18]);
        assert!(walk_traces(&k3, 5).is_err());
    }

    #[test]
    fn empty_connection_spectrum_is_zero() {
        let f3 = Field::prime(3).unwrap();
        let table = spectrum(&spec(&f3, "x^2", &[])).unwrap();
        assert_eq!(table.degree, 0);
        assert!(table.eigenvalues.iter().all(|&l| l == 0));
    }

    #[test]
    fn character_pairing_is_nondegenerate() {
        let f3 = Field::prime(3).unwrap();
        let ring = RingEnumeration::new(&f3, &p(&f3, "x^2+1")).unwrap();
        let chars = CharacterSystem::new(ring);
        // a residue pairing to exponent 0 with everything must be zero
        for a in 0..chars.enumeration().size() {
            let all_trivial =
                (0..chars.enumeration().size()).all(|b| chars.exponent(a, b).unwrap() == 0);
            assert_eq!(all_trivial, a == 0);
        }
    }

    #[test]
    fn spectrum_json_shape() {
        let f2 = Field::prime(2).unwrap();
        let table = spectrum(&spec(&f2, "x^2", &["1"])).unwrap();
        let j = table.to_json();
        assert_eq!(j["degree"], 2);
        assert_eq!(j["eigenvalues"].as_array().unwrap().len(), 4);
        assert!(j["multiset"].is_array());
    }
}
