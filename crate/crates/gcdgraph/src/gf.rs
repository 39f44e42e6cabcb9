//! Finite fields F_{p^m} of size at most 2^16, with exact arithmetic on
//! packed element indices.
//!
//! An element c_0 + c_1 t + ... + c_{m-1} t^{m-1} (c_i in F_p, t the class of
//! the generator) is stored as the integer index c_0 + c_1 p + ... + c_{m-1} p^{m-1}.
//! Index 0 is zero, index 1 is one, and the canonical order on elements is
//! integer order on indices (counting order). Arithmetic goes through a
//! `Field` context; fields of size <= 512 precompute full operation tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size q = p^m.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;
/// Fields with q <= this get full add/mul/neg/inv/trace tables.
const TABLE_LIMIT: u64 = 512;
const MAX_EXT_DEGREE: usize = 16;

/// An element of a specific `Field`, stored as its packed index.
/// Only meaningful relative to the field that produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed index in [0, q); doubles as the canonical position of the element.
    pub fn index(self) -> u64 {
        self.0 as u64
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>, // inv[0] is a sentinel, never read
    trace: Vec<u32>,
}

struct Inner {
    p: u64,
    m: usize,
    q: u64,
    /// Monic irreducible over F_p, coefficients in [0, p), low to high, length m+1.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field F_{p^m}. Cheap to clone (shared representation); equality
/// is structural on (p, m, modulus).
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl Field {
    /// Builds F_{p^m}. With `modulus = None` the defining polynomial is the
    /// lexicographically smallest monic irreducible of degree m over F_p
    /// (coefficient tuples compared constant-term first).
    pub fn new(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<Field> {
        if p > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { q: p as u128 });
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || m > MAX_EXT_DEGREE {
            return Err(Error::DegreeMismatch(format!(
                "extension degree {m} out of range 1..=16"
            )));
        }
        let q = (p as u128).pow(m as u32);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge { q });
        }
        let q = q as u64;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m + 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "modulus needs {} coefficients, got {}",
                        m + 1,
                        c.len()
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::Parse("modulus coefficient out of range".into()));
                }
                if c[m] != 1 {
                    return Err(Error::Parse("modulus must be monic".into()));
                }
                if !fp_is_irreducible(p, c) {
                    return Err(Error::ReducibleModulus(fp_poly_string(c)));
                }
                c.to_vec()
            }
            None => default_modulus(p, m),
        };
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Parses "p", "p^m", or "p^m:c0,c1,...,cm" (modulus coefficients low to
    /// high, including the leading 1).
    pub fn parse_spec(s: &str) -> Result<Field> {
        let s = s.trim();
        let (head, modulus_part) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let (p_str, m_str) = match head.split_once('^') {
            Some((a, b)) => (a, Some(b)),
            None => (head, None),
        };
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field characteristic {p_str:?}")))?;
        let m: usize = match m_str {
            Some(t) => t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad extension degree {t:?}")))?,
            None => 1,
        };
        let modulus: Option<Vec<u64>> = match modulus_part {
            Some(t) => Some(
                t.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad modulus coefficient {x:?}")))
                    })
                    .collect::<Result<_>>()?,
            ),
            None => None,
        };
        Field::new(p, m, modulus.as_deref())
    }

    /// Canonical spec string. Prime fields with the default modulus print as
    /// "p"; everything else prints the modulus in full.
    pub fn spec_string(&self) -> String {
        let i = &*self.0;
        if i.m == 1 && i.modulus == [0, 1] {
            return i.p.to_string();
        }
        let coeffs: Vec<String> = i.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", i.p, i.m, coeffs.join(","))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Defining polynomial coefficients, low to high, length m+1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.0.q {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::ElementOutOfRange(index))
        }
    }

    /// Embeds an integer via the prime subfield: k maps to (k mod p) * 1.
    pub fn from_prime(&self, k: u64) -> FieldElement {
        FieldElement((k % self.0.p) as u32)
    }

    /// Builds an element from F_p coordinates (low to high, at most m of them).
    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElement> {
        let i = &*self.0;
        if coords.len() > i.m {
            return Err(Error::DegreeMismatch(format!(
                "element needs at most {} coordinates, got {}",
                i.m,
                coords.len()
            )));
        }
        let mut v = 0u64;
        for (k, &c) in coords.iter().enumerate() {
            if c >= i.p {
                return Err(Error::ElementOutOfRange(c));
            }
            v += c * i.p.pow(k as u32);
        }
        Ok(FieldElement(v as u32))
    }

    /// F_p coordinates of `a`, low to high, length m.
    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let i = &*self.0;
        let mut v = a.index();
        let mut out = Vec::with_capacity(i.m);
        for _ in 0..i.m {
            out.push(v % i.p);
            v /= i.p;
        }
        out
    }

    /// All elements in canonical (counting) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q as u32).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let i = &*self.0;
        debug_assert!(a.index() < i.q && b.index() < i.q);
        match &i.tables {
            Some(t) => FieldElement(t.add[a.0 as usize * i.q as usize + b.0 as usize]),
            None => FieldElement(add_raw(i, a.index(), b.index()) as u32),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let i = &*self.0;
        match &i.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => FieldElement(neg_raw(i, a.index()) as u32),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let i = &*self.0;
        debug_assert!(a.index() < i.q && b.index() < i.q);
        match &i.tables {
            Some(t) => FieldElement(t.mul[a.0 as usize * i.q as usize + b.0 as usize]),
            None => FieldElement(mul_raw(i, a.index(), b.index()) as u32),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a == FieldElement::ZERO {
            return Err(Error::DivisionByZero);
        }
        let i = &*self.0;
        match &i.tables {
            Some(t) => Ok(FieldElement(t.inv[a.0 as usize])),
            None => Ok(self.pow(a, i.q - 2)),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.p)
    }

    /// Absolute trace Tr(a) = a + a^p + ... + a^{p^{m-1}}, returned as an
    /// integer in [0, p) (the value always lands in the prime subfield).
    pub fn trace(&self, a: FieldElement) -> u64 {
        let i = &*self.0;
        if let Some(t) = &i.tables {
            return t.trace[a.0 as usize] as u64;
        }
        trace_raw(self, a)
    }

    /// Renders an element: a plain residue for prime fields, a full
    /// coordinate vector "[c0,...,c{m-1}]" otherwise.
    pub fn element_string(&self, a: FieldElement) -> String {
        if self.0.m == 1 {
            return a.index().to_string();
        }
        let coords: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", coords.join(","))
    }
}

fn trace_raw(field: &Field, a: FieldElement) -> u64 {
    let i = &*field.0;
    let mut acc = a;
    let mut cur = a;
    for _ in 1..i.m {
        cur = field.pow(cur, i.p);
        acc = field.add(acc, cur);
    }
    let v = acc.index();
    debug_assert!(v < i.p, "trace must land in the prime subfield");
    v % i.p
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as usize;
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    let mut neg = vec![0u32; q];
    let mut inv = vec![u32::MAX; q];
    for a in 0..q as u64 {
        neg[a as usize] = neg_raw(inner, a) as u32;
        for b in a..q as u64 {
            let s = add_raw(inner, a, b) as u32;
            let p = mul_raw(inner, a, b) as u32;
            add[a as usize * q + b as usize] = s;
            add[b as usize * q + a as usize] = s;
            mul[a as usize * q + b as usize] = p;
            mul[b as usize * q + a as usize] = p;
        }
    }
    for a in 1..q as u64 {
        let e = pow_raw(inner, a, inner.q - 2);
        debug_assert_eq!(mul_raw(inner, a, e), 1);
        inv[a as usize] = e as u32;
    }
    let mut trace = vec![0u32; q];
    for a in 0..q as u64 {
        // a + a^p + ... + a^{p^{m-1}}, all via raw ops
        let mut acc = a;
        let mut cur = a;
        for _ in 1..inner.m {
            cur = pow_raw(inner, cur, inner.p);
            acc = add_raw(inner, acc, cur);
        }
        debug_assert!(acc < inner.p);
        trace[a as usize] = acc as u32;
    }
    Tables {
        add,
        mul,
        neg,
        inv,
        trace,
    }
}

fn unpack(p: u64, m: usize, mut v: u64, out: &mut [u64; MAX_EXT_DEGREE]) {
    for d in out.iter_mut().take(m) {
        *d = v % p;
        v /= p;
    }
}

fn add_raw(i: &Inner, a: u64, b: u64) -> u64 {
    let (mut da, mut db) = ([0u64; MAX_EXT_DEGREE], [0u64; MAX_EXT_DEGREE]);
    unpack(i.p, i.m, a, &mut da);
    unpack(i.p, i.m, b, &mut db);
    let mut v = 0u64;
    let mut scale = 1u64;
    for k in 0..i.m {
        v += ((da[k] + db[k]) % i.p) * scale;
        scale *= i.p;
    }
    v
}

fn neg_raw(i: &Inner, a: u64) -> u64 {
    let mut da = [0u64; MAX_EXT_DEGREE];
    unpack(i.p, i.m, a, &mut da);
    let mut v = 0u64;
    let mut scale = 1u64;
    for k in 0..i.m {
        v += ((i.p - da[k]) % i.p) * scale;
        scale *= i.p;
    }
    v
}

fn mul_raw(i: &Inner, a: u64, b: u64) -> u64 {
    let (mut da, mut db) = ([0u64; MAX_EXT_DEGREE], [0u64; MAX_EXT_DEGREE]);
    unpack(i.p, i.m, a, &mut da);
    unpack(i.p, i.m, b, &mut db);
    let mut conv = [0u64; 2 * MAX_EXT_DEGREE];
    for x in 0..i.m {
        if da[x] == 0 {
            continue;
        }
        for y in 0..i.m {
            conv[x + y] += da[x] * db[y];
        }
    }
    for c in conv.iter_mut() {
        *c %= i.p;
    }
    // Fold t^k for k >= m using t^m = -(modulus truncated to degree < m).
    for k in (i.m..=2 * i.m - 2).rev() {
        let c = conv[k];
        if c == 0 {
            continue;
        }
        conv[k] = 0;
        for j in 0..i.m {
            conv[k - i.m + j] = (conv[k - i.m + j] + c * (i.p - i.modulus[j])) % i.p;
        }
    }
    let mut v = 0u64;
    let mut scale = 1u64;
    for d in conv.iter().take(i.m) {
        v += d * scale;
        scale *= i.p;
    }
    v
}

fn pow_raw(i: &Inner, a: u64, mut e: u64) -> u64 {
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(i, acc, base);
        }
        base = mul_raw(i, base, base);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over F_p,
/// coefficient tuples (c_0, ..., c_{m-1}) compared constant-term first.
fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let total = p.pow(m as u32);
    for k in 0..total {
        let mut coeffs = vec![0u64; m + 1];
        coeffs[m] = 1;
        let mut v = k;
        // c_0 is the most significant digit of k, so k-order equals lex order.
        for idx in (0..m).rev() {
            coeffs[idx] = v % p;
            v /= p;
        }
        if fp_is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

// --- polynomials over F_p as raw coefficient vectors (modulus machinery only) ---

fn fp_deg(c: &[u64]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

/// Remainder of a mod d over F_p; d monic of positive degree.
fn fp_rem(p: u64, a: &[u64], d: &[u64]) -> Vec<u64> {
    let dd = fp_deg(d).expect("divisor must be nonzero");
    debug_assert_eq!(d[dd], 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    loop {
        let rd = match fp_deg(&r) {
            Some(x) if x >= dd => x,
            _ => break,
        };
        let c = r[rd];
        let shift = rd - dd;
        for j in 0..=dd {
            r[shift + j] = (r[shift + j] + c * (p - d[j])) % p;
        }
        debug_assert_eq!(r[rd], 0);
    }
    r.truncate(fp_deg(&r).map_or(0, |x| x + 1));
    r
}

/// Trial-division irreducibility for monic f over F_p (fast at these sizes:
/// the candidate count is at most ~2*sqrt(p^deg)).
fn fp_is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = match fp_deg(f) {
        None | Some(0) => return false,
        Some(x) => x,
    };
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by t
    }
    for t in 1..=d / 2 {
        let count = p.pow(t as u32);
        for k in 0..count {
            let mut cand = vec![0u64; t + 1];
            cand[t] = 1;
            let mut v = k;
            for c in cand.iter_mut().take(t) {
                *c = v % p;
                v /= p;
            }
            if fp_rem(p, f, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

fn fp_poly_string(c: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &x) in c.iter().enumerate().rev() {
        if x == 0 {
            continue;
        }
        let t = match (i, x) {
            (0, v) => v.to_string(),
            (1, 1) => "t".into(),
            (1, v) => format!("{v}*t"),
            (k, 1) => format!("t^{k}"),
            (k, v) => format!("{v}*t^{k}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_lex_smallest() {
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(5, 1, None).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn f4_multiplication_table() {
        let f4 = Field::new(2, 2, None).unwrap();
        let t = f4.element(2).unwrap();
        let t1 = f4.element(3).unwrap();
        // t^2 = t + 1 under t^2+t+1
        assert_eq!(f4.mul(t, t), t1);
        assert_eq!(f4.mul(t, t1), f4.one());
        assert_eq!(f4.inv(t).unwrap(), t1);
        assert_eq!(f4.add(t, f4.one()), t1);
        assert_eq!(f4.add(t, t), f4.zero());
    }

    #[test]
    fn traces_f4() {
        let f4 = Field::new(2, 2, None).unwrap();
        let tr: Vec<u64> = f4.elements().map(|a| f4.trace(a)).collect();
        assert_eq!(tr, vec![0, 0, 1, 1]);
    }

    #[test]
    fn trace_is_additive_and_onto_f9() {
        let f9 = Field::new(3, 2, None).unwrap();
        let mut seen = [false; 3];
        for a in f9.elements() {
            seen[f9.trace(a) as usize] = true;
            for b in f9.elements() {
                let lhs = f9.trace(f9.add(a, b));
                let rhs = (f9.trace(a) + f9.trace(b)) % 3;
                assert_eq!(lhs, rhs);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn inverses_exhaustive_f9() {
        let f9 = Field::new(3, 2, None).unwrap();
        for a in f9.elements().skip(1) {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), f9.one());
        }
        assert_eq!(f9.inv(f9.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_is_additive_f8() {
        let f8 = Field::new(2, 3, None).unwrap();
        for a in f8.elements() {
            for b in f8.elements() {
                assert_eq!(
                    f8.frobenius(f8.add(a, b)),
                    f8.add(f8.frobenius(a), f8.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn untabled_field_arithmetic() {
        // 65521 is the largest prime below 2^16; no tables at this size.
        let f = Field::prime(65521).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(f.mul(two, f.inv(two).unwrap()), f.one());
        assert_eq!(f.trace(two), 2);
        let a = f.element(65520).unwrap();
        assert_eq!(f.add(a, f.one()), f.zero());
    }

    #[test]
    fn largest_binary_field_builds() {
        let f = Field::new(2, 16, None).unwrap();
        assert_eq!(f.q(), 65536);
        let a = f.element(12345).unwrap();
        let b = f.element(54321).unwrap();
        let c = f.element(999).unwrap();
        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
    }

    #[test]
    fn coords_round_trip() {
        let f27 = Field::new(3, 3, None).unwrap();
        for a in f27.elements() {
            let c = f27.coords(a);
            assert_eq!(f27.from_coords(&c).unwrap(), a);
        }
        assert_eq!(f27.from_coords(&[1, 2]).unwrap().index(), 1 + 2 * 3);
        assert!(f27.from_coords(&[3]).is_err());
        assert!(f27.from_coords(&[0, 0, 0, 1]).is_err());
    }

    #[test]
    fn spec_string_round_trips() {
        for s in ["2", "3", "65521", "2^2:1,1,1", "3^2:1,0,1", "2^4:1,1,0,0,1"] {
            let f = Field::parse_spec(s).unwrap();
            assert_eq!(Field::parse_spec(&f.spec_string()).unwrap(), f);
        }
        assert_eq!(Field::parse_spec("2^2").unwrap().spec_string(), "2^2:1,1,1");
        assert_eq!(Field::parse_spec("7").unwrap().spec_string(), "7");
    }

    #[test]
    fn constructor_rejections() {
        assert_eq!(Field::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(1, 1, None), Err(Error::NotPrime(1)));
        assert!(matches!(
            Field::new(2, 17, None),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(
            Field::new(257, 2, None),
            Err(Error::FieldTooLarge { .. })
        ));
        // t^2 is reducible
        assert!(matches!(
            Field::new(2, 2, Some(&[0, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        // t^2+1 = (t+1)^2 over F_2
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(Field::new(2, 2, Some(&[1, 1])).is_err());
        assert!(Field::new(2, 2, Some(&[1, 1, 2])).is_err());
    }

    #[test]
    fn custom_modulus_changes_arithmetic() {
        // F_9 with t^2+2t+2 instead of the default t^2+1.
        let f = Field::new(3, 2, Some(&[2, 2, 1])).unwrap();
        let t = f.element(3).unwrap();
        // t^2 = -2t-2 = t+1, which has coords [1,1], index 4.
        assert_eq!(f.mul(t, t).index(), 4);
        assert_ne!(f, Field::new(3, 2, None).unwrap());
    }

    #[test]
    fn element_string_forms() {
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.element_string(f9.element(5).unwrap()), "[2,1]");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.element_string(f5.element(3).unwrap()), "3");
    }
}
