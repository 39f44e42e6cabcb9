//! Univariate polynomials over a finite field: exact arithmetic, euclidean
//! structure, deterministic factorization, and the arithmetic functions
//! (divisors, Mobius, Euler phi, omega, radical) driving everything else.
//!
//! Canonical order on polynomials: by degree, then by coefficient tuples
//! compared from the highest degree down, elements in counting order. Under
//! this order the residues mod a degree-n polynomial are exactly the base-q
//! numerals 0 .. q^n - 1.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Divisor enumeration refuses to materialize more than this many divisors.
pub const MAX_DIVISORS: u64 = 1 << 20;

/// A polynomial over a specific field. Coefficients are stored low to high
/// with no trailing zeros (the zero polynomial has an empty vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn x(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn constant(field: &Field, c: FieldElement) -> Poly {
        let coeffs = if c == FieldElement::ZERO {
            Vec::new()
        } else {
            vec![c]
        };
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn monomial(field: &Field, deg: usize, c: FieldElement) -> Poly {
        if c == FieldElement::ZERO {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last() == Some(&FieldElement::ZERO) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Convenience constructor from element indices, low to high.
    pub fn from_indices(field: &Field, indices: &[u64]) -> Result<Poly> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(field, coeffs))
    }

    /// Inverse of `to_index`: digits of `idx` in base q become coefficients.
    pub fn from_index(field: &Field, mut idx: u64) -> Poly {
        let q = field.q();
        let mut coeffs = Vec::new();
        while idx > 0 {
            coeffs.push(field.element(idx % q).expect("digit below q"));
            idx /= q;
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Position of this polynomial in the canonical enumeration: the base-q
    /// numeral with the coefficients as digits. Panics if it exceeds u64.
    pub fn to_index(&self) -> u64 {
        let q = self.field.q() as u128;
        let mut acc: u128 = 0;
        let mut scale: u128 = 1;
        for c in &self.coeffs {
            acc += c.index() as u128 * scale;
            scale = scale.saturating_mul(q);
        }
        u64::try_from(acc).expect("polynomial index exceeds u64")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElement::ONE)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        if c == FieldElement::ZERO {
            return Poly::zero(&self.field);
        }
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    /// Monic associate plus the leading coefficient it was divided by.
    pub fn monic(&self) -> Result<(Poly, FieldElement)> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        if lead == FieldElement::ONE {
            return Ok((self.clone(), lead));
        }
        Ok((self.scale(self.field.inv(lead)?), lead))
    }

    pub fn eval(&self, at: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.add(self.field.mul(acc, at), c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.field.mul(self.field.from_prime(i as u64), c))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        assert!(self.field == d.field, "polynomial field mismatch");
        let dd = match d.deg() {
            None => return Err(Error::DivisionByZero),
            Some(x) => x,
        };
        let f = &self.field;
        let lead_inv = f.inv(d.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; n - dd];
        for k in (dd..n).rev() {
            let c = rem[k];
            if c == FieldElement::ZERO {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quot[k - dd] = qc;
            for j in 0..=dd {
                let t = f.mul(qc, d.coeffs[j]);
                rem[k - dd + j] = f.sub(rem[k - dd + j], t);
            }
            debug_assert_eq!(rem[k], FieldElement::ZERO);
        }
        rem.truncate(dd);
        Ok((
            Poly::from_coeffs(f, quot),
            Poly::from_coeffs(f, rem),
        ))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn divexact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::NotADivisor {
                g: d.to_string(),
                f: self.to_string(),
            });
        }
        Ok(q)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "polynomial field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "polynomial field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "polynomial field mismatch");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![FieldElement::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == FieldElement::ZERO {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: field parameters, then degree, then coefficients from
/// the top down in counting order.
impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        let key = |p: &Poly| (p.field.p(), p.field.m() as u64);
        key(self)
            .cmp(&key(other))
            .then_with(|| self.field.modulus().cmp(other.field.modulus()))
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| {
                for i in (0..self.coeffs.len()).rev() {
                    match self.coeffs[i].cmp(&other.coeffs[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let f = &self.field;
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == FieldElement::ZERO {
                continue;
            }
            if !first {
                out.write_str("+")?;
            }
            first = false;
            let cs = f.element_string(c);
            match (i, f.m()) {
                (0, _) => out.write_str(&cs)?,
                (1, 1) if c == FieldElement::ONE => out.write_str("x")?,
                (1, _) => write!(out, "{cs}*x")?,
                (k, 1) if c == FieldElement::ONE => write!(out, "x^{k}")?,
                (k, _) => write!(out, "{cs}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

// --- parsing ---

impl Poly {
    /// Parses either grammar:
    ///  * human form: `x^3+2*x+1`, `[1,1]*x^2+[0,1]` — plain integers are
    ///    prime-subfield constants, bracketed vectors are F_p coordinates
    ///    (low to high);
    ///  * positional form: a whole-string bracket `[c0,c1,...]` listing the
    ///    coefficients low to high, each a plain integer or a bracketed
    ///    coordinate vector.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Positional form is a single balanced bracket group spanning the
        // whole string; anything else (including terms with bracketed
        // coefficients like "[1,1]*x^2") is the human form.
        if s.starts_with('[') {
            let mut depth = 0i32;
            let mut close = None;
            for (i, ch) in s.char_indices() {
                match ch {
                    '[' => depth += 1,
                    ']' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            if close == Some(s.len() - 1) {
                return parse_positional(field, s);
            }
        }
        parse_human(field, s)
    }
}

fn parse_uint(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

/// Parses a bracketed coordinate vector like "[1,0,2]" into an element.
fn parse_coord_element(field: &Field, s: &str) -> Result<FieldElement> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {s:?}")))?;
    let p = field.p() as i64;
    let coords = inner
        .split(',')
        .map(|t| {
            let v = t
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))?;
            Ok(v.rem_euclid(p) as u64)
        })
        .collect::<Result<Vec<u64>>>()?;
    field.from_coords(&coords)
}

/// Splits at top-level (bracket depth zero) occurrences of any of `seps`.
fn split_top_level(s: &str, seps: &[char]) -> Vec<(char, String)> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut lead = '\0';
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            c if depth == 0 && seps.contains(&c) => {
                parts.push((lead, cur));
                cur = String::new();
                lead = c;
            }
            c => cur.push(c),
        }
    }
    parts.push((lead, cur));
    parts
}

fn parse_human(field: &Field, s: &str) -> Result<Poly> {
    let mut acc = Poly::zero(field);
    for (sign, term) in split_top_level(s, &['+', '-']) {
        let term = term.trim().to_string();
        if term.is_empty() {
            if sign == '\0' {
                continue; // leading sign like "-x+1"
            }
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let mut coeff = field.one();
        let mut deg = 0usize;
        let factors = split_top_level(&term, &['*']);
        if factors.len() > 2 {
            return Err(Error::Parse(format!("too many factors in term {term:?}")));
        }
        let mut saw_x = false;
        let mut saw_coeff = false;
        for (_, factor) in factors {
            let factor = factor.trim().to_string();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in term {term:?}")));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                if saw_x {
                    return Err(Error::Parse(format!("repeated x in term {term:?}")));
                }
                saw_x = true;
                deg = match rest.strip_prefix('^') {
                    None if rest.is_empty() => 1,
                    Some(e) => {
                        let e = parse_uint(e)?;
                        if e > 8192 {
                            return Err(Error::Parse(format!("exponent {e} too large")));
                        }
                        e as usize
                    }
                    _ => return Err(Error::Parse(format!("bad power {factor:?}"))),
                };
            } else {
                if saw_coeff || saw_x {
                    return Err(Error::Parse(format!("bad term {term:?}")));
                }
                saw_coeff = true;
                coeff = if factor.starts_with('[') {
                    parse_coord_element(field, &factor)?
                } else {
                    field.from_prime(parse_uint(&factor)?)
                };
            }
        }
        if sign == '-' {
            coeff = field.neg(coeff);
        }
        acc = &acc + &Poly::monomial(field, deg, coeff);
    }
    Ok(acc)
}

fn parse_positional(field: &Field, s: &str) -> Result<Poly> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Poly::zero(field));
    }
    let mut coeffs = Vec::new();
    for (_, entry) in split_top_level(inner, &[',']) {
        let entry = entry.trim().to_string();
        let c = if entry.starts_with('[') {
            parse_coord_element(field, &entry)?
        } else {
            field.from_prime(parse_uint(&entry)?)
        };
        coeffs.push(c);
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

// --- euclidean structure ---

/// Monic gcd. gcd(a, 0) = monic(a); gcd(0, 0) is an error.
pub fn gcd_monic(a: &Poly, b: &Poly) -> Result<Poly> {
    assert!(a.field() == b.field(), "polynomial field mismatch");
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic()?.0)
}

/// Monic lcm; lcm with zero is zero.
pub fn lcm_monic(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(a.field()));
    }
    let g = gcd_monic(a, b)?;
    let prod = &(a * b).monic()?.0;
    prod.divexact(&g)
}

/// Extended euclid: returns (g, u, v) with u*a + v*b = g, g the monic gcd.
pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    assert!(a.field() == b.field(), "polynomial field mismatch");
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let f = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
    let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let nu = &u0 - &(&q * &u1);
        u0 = std::mem::replace(&mut u1, nu);
        let nv = &v0 - &(&q * &v1);
        v0 = std::mem::replace(&mut v1, nv);
    }
    let lead = r0.leading().expect("gcd of non-both-zero is nonzero");
    let c = f.inv(lead)?;
    Ok((r0.scale(c), u0.scale(c), v0.scale(c)))
}

/// Chinese remainder: the unique residue mod the product of the (pairwise
/// coprime) moduli matching every pair.
pub fn crt(pairs: &[(Poly, Poly)]) -> Result<Poly> {
    let field = pairs
        .first()
        .map(|(a, _)| a.field().clone())
        .ok_or_else(|| Error::HypothesesViolated("empty residue system".into()))?;
    let mut acc = Poly::zero(&field);
    let mut modulus = Poly::one(&field);
    for (a, mi) in pairs {
        if mi.deg().unwrap_or(0) == 0 {
            return Err(Error::HypothesesViolated(
                "constant modulus in residue system".into(),
            ));
        }
        let (g, inv_mod, _) = xgcd(&modulus, mi)?;
        if !g.is_one() {
            return Err(Error::HypothesesViolated(
                "residue system moduli are not coprime".into(),
            ));
        }
        // acc + modulus * t = a (mod mi)  =>  t = (a - acc) * modulus^{-1} (mod mi)
        let t = (&(a - &acc) * &inv_mod).rem(mi)?;
        acc = &acc + &(&modulus * &t);
        modulus = &modulus * mi;
    }
    acc.rem(&modulus)
}

/// base^e mod f, square-and-multiply over the bits of e.
pub fn powmod(base: &Poly, e: u128, f: &Poly) -> Result<Poly> {
    let mut acc = Poly::one(base.field()).rem(f)?;
    let mut b = base.rem(f)?;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(f)?;
        }
        b = (&b * &b).rem(f)?;
        e >>= 1;
    }
    Ok(acc)
}

// --- enumeration ---

/// All monic polynomials of the given degree, canonical order.
pub fn monic_of_degree(field: &Field, deg: usize) -> Result<Vec<Poly>> {
    let q = field.q() as u128;
    let count = q.pow(deg as u32);
    if count > MAX_DIVISORS as u128 {
        return Err(Error::TooLarge(format!(
            "q^deg = {count} monic candidates of degree {deg}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..count as u64 {
        let mut p = Poly::from_index(field, k);
        p = &p + &Poly::monomial(field, deg, field.one());
        out.push(p);
    }
    Ok(out)
}

/// All monic irreducibles of the given degree, canonical order.
pub fn irreducibles_of_degree(field: &Field, deg: usize) -> Result<Vec<Poly>> {
    if deg == 0 {
        return Ok(Vec::new());
    }
    Ok(monic_of_degree(field, deg)?
        .into_iter()
        .filter(|p| is_irreducible(p).expect("nonzero by construction"))
        .collect())
}

// --- irreducibility and factorization ---

/// Deterministic irreducibility test (no randomness): checks
/// x^{q^d} = x mod f together with gcd(x^{q^{d/l}} - x, f) = 1 for every
/// prime l dividing d = deg f.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = match f.deg() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let field = f.field();
    let q = field.q() as u128;
    let x = Poly::x(field);
    // h_i = x^{q^i} mod f, computed by iterating the q-power map.
    let mut h = x.clone();
    let mut checkpoints = Vec::new(); // (i, needed at d/l)
    let prime_divs = small_prime_divisors(d as u64);
    let targets: Vec<usize> = prime_divs.iter().map(|&l| d / l as usize).collect();
    for i in 1..=d {
        h = powmod(&h, q, f)?;
        if targets.contains(&i) {
            checkpoints.push(h.clone());
        }
        if i == d {
            if h != x.rem(f)? {
                return Ok(false);
            }
        }
    }
    for ck in checkpoints {
        let g = gcd_monic(&(&ck - &x), f);
        match g {
            Err(Error::BothZero) => return Ok(false), // x^{q^{d/l}} = x mod f
            Err(e) => return Err(e),
            Ok(g) => {
                if !g.is_one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn small_prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Factorization into monic irreducibles: f = unit * prod factors[i]^e_i,
/// factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Complete factorization. Deterministic: degree <= 4 uses trial division;
/// larger degrees use squarefree + distinct-degree + equal-degree splitting
/// driven by a fixed-seed generator, so results never vary between runs.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    let deg = f.deg().ok_or(Error::ZeroPolynomial)?;
    let unit = f.leading().expect("nonzero");
    if deg == 0 {
        return Ok(Factorization {
            unit,
            factors: Vec::new(),
        });
    }
    let (w, _) = f.monic()?;
    let mut factors = if deg <= 4 {
        factor_trial(&w)?
    } else {
        factor_general(&w)?
    };
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(factors.windows(2).all(|w| w[0].0 != w[1].0));
    Ok(Factorization { unit, factors })
}

fn factor_trial(w: &Poly) -> Result<Vec<(Poly, u32)>> {
    let field = w.field().clone();
    let mut rem = w.clone();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1usize;
    while 2 * d <= rem.deg().unwrap_or(0) {
        for cand in monic_of_degree(&field, d)? {
            let mut e = 0u32;
            while cand.divides(&rem) {
                rem = rem.divexact(&cand)?;
                e += 1;
            }
            if e > 0 {
                out.push((cand, e));
            }
        }
        d += 1;
    }
    if rem.deg().unwrap_or(0) >= 1 {
        out.push((rem, 1));
    }
    Ok(out)
}

fn factor_general(w: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    let mut squarefree_parts = Vec::new();
    squarefree_decompose(w, 1, &mut squarefree_parts)?;
    for (part, mult) in squarefree_parts {
        for (block, d) in distinct_degree(&part)? {
            let pieces = equal_degree(&block, d, &mut rng)?;
            for p in pieces {
                out.push((p, mult));
            }
        }
    }
    Ok(out)
}

/// Coefficient-wise p-th root of f(x) = g(x^p); valid whenever f' = 0.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let m = field.m() as u32;
    // c -> c^{p^{m-1}} inverts the Frobenius c -> c^p on F_{p^m}.
    let root_exp = (field.p() as u128).pow(m - 1) as u64;
    let deg = f.deg().unwrap_or(0);
    let mut coeffs = Vec::with_capacity(deg / p + 1);
    for i in (0..=deg).step_by(p) {
        coeffs.push(field.pow(f.coeff(i), root_exp));
    }
    Poly::from_coeffs(field, coeffs)
}

/// Characteristic-p squarefree decomposition: pushes (g, e * mult_scale)
/// pairs with g squarefree, pairwise coprime, and f = prod g^e.
fn squarefree_decompose(
    f: &Poly,
    mult_scale: u32,
    out: &mut Vec<(Poly, u32)>,
) -> Result<()> {
    if f.deg().unwrap_or(0) == 0 {
        return Ok(());
    }
    let p = f.field().p() as u32;
    let d = f.derivative();
    if d.is_zero() {
        return squarefree_decompose(&pth_root(f), mult_scale * p, out);
    }
    let mut c = gcd_monic(f, &d)?;
    let mut w = f.divexact(&c)?;
    let mut i = 1u32;
    while w.deg().unwrap_or(0) > 0 {
        let y = gcd_monic(&w, &c)?;
        let z = w.divexact(&y)?;
        if z.deg().unwrap_or(0) > 0 {
            out.push((z, i * mult_scale));
        }
        w = y;
        c = c.divexact(&w)?;
        i += 1;
    }
    if c.deg().unwrap_or(0) > 0 {
        squarefree_decompose(&pth_root(&c), mult_scale * p, out)?;
    }
    Ok(())
}

/// Distinct-degree splitting of a squarefree monic w: returns blocks
/// (product of all irreducible factors of degree d, d).
fn distinct_degree(w: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = w.field();
    let q = field.q() as u128;
    let x = Poly::x(field);
    let mut rem = w.clone();
    let mut h = x.rem(&rem)?;
    let mut out = Vec::new();
    let mut d = 0usize;
    while rem.deg().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rem.deg().unwrap_or(0) {
            let deg = rem.deg().unwrap_or(0);
            out.push((rem.clone(), deg));
            break;
        }
        h = powmod(&h, q, &rem)?;
        let g = gcd_monic(&(&h - &x), &rem)?;
        if g.deg().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            rem = rem.divexact(&g)?;
            h = h.rem(&rem)?;
        }
    }
    Ok(out)
}

fn random_poly_below(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.q();
    let coeffs = (0..deg)
        .map(|_| field.element(rng.gen_range(0..q)).expect("below q"))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

/// Equal-degree splitting: block is squarefree, all factors of degree d.
fn equal_degree(block: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let deg = block.deg().unwrap_or(0);
    if deg == d {
        return Ok(vec![block.clone()]);
    }
    let field = block.field().clone();
    let q = field.q() as u128;
    for _ in 0..4096 {
        let r = random_poly_below(&field, deg, rng);
        if r.is_constant() {
            continue;
        }
        let g0 = gcd_monic(&r, block)?;
        if g0.deg().unwrap_or(0) > 0 && g0.deg() < block.deg() {
            let rest = block.divexact(&g0)?;
            let mut out = equal_degree(&g0, d, rng)?;
            out.extend(equal_degree(&rest, d, rng)?);
            return Ok(out);
        }
        let splitter = if field.p() == 2 {
            // Trace map over F_2: T(r) = sum r^{2^i}, i < m*d, lands in {0,1}
            // on each component.
            let steps = field.m() * d;
            let mut acc = r.clone().rem(block)?;
            let mut cur = acc.clone();
            for _ in 1..steps {
                cur = powmod(&cur, 2, block)?;
                acc = &acc + &cur;
            }
            acc
        } else {
            let e = q
                .checked_pow(d as u32)
                .ok_or_else(|| Error::TooLarge("equal-degree exponent".into()))?;
            let s = powmod(&r, (e - 1) / 2, block)?;
            &s - &Poly::one(&field)
        };
        if splitter.is_zero() {
            continue;
        }
        let g = gcd_monic(&splitter, block)?;
        if g.deg().unwrap_or(0) > 0 && g.deg() < block.deg() {
            let rest = block.divexact(&g)?;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&rest, d, rng)?);
            return Ok(out);
        }
    }
    unreachable!("equal-degree splitting failed to converge on a fixed seed")
}

// --- arithmetic functions ---

/// All monic divisors of f (including 1 and the monic associate of f),
/// canonical order. Errors with TooManyDivisors past 2^20.
pub fn divisors(f: &Poly) -> Result<Vec<Poly>> {
    let fac = factorize(f)?;
    let field = f.field();
    let mut count: u64 = 1;
    for (_, e) in &fac.factors {
        count = count
            .checked_mul(*e as u64 + 1)
            .filter(|&c| c <= MAX_DIVISORS)
            .ok_or(Error::TooManyDivisors)?;
    }
    let powers: Vec<Vec<Poly>> = fac
        .factors
        .iter()
        .map(|(p, e)| (0..=*e).map(|k| p.pow(k)).collect())
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut exps = vec![0u32; fac.factors.len()];
    loop {
        let mut d = Poly::one(field);
        for (i, &e) in exps.iter().enumerate() {
            d = &d * &powers[i][e as usize];
        }
        out.push(d);
        // odometer
        let mut i = 0;
        loop {
            if i == exps.len() {
                out.sort();
                return Ok(out);
            }
            if exps[i] < fac.factors[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Mobius function: 0 unless squarefree, else (-1)^omega.
pub fn mobius(f: &Poly) -> Result<i64> {
    let fac = factorize(f)?;
    if !fac.is_squarefree() {
        return Ok(0);
    }
    Ok(if fac.omega() % 2 == 0 { 1 } else { -1 })
}

/// Euler phi: the number of units in F_q[x]/(f), i.e. residues coprime to f.
pub fn euler_phi(f: &Poly) -> Result<u64> {
    let fac = factorize(f)?;
    let q = f.field().q() as u128;
    let mut acc: u128 = 1;
    for (p, e) in &fac.factors {
        let d = p.deg().expect("irreducible") as u32;
        let qd = q
            .checked_pow(d * e)
            .ok_or_else(|| Error::Overflow("euler_phi".into()))?;
        let qd1 = q.pow(d * (e - 1));
        acc = acc
            .checked_mul(qd - qd1)
            .ok_or_else(|| Error::Overflow("euler_phi".into()))?;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("euler_phi".into()))
}

/// Number of distinct monic irreducible factors.
pub fn omega(f: &Poly) -> Result<u32> {
    Ok(factorize(f)?.omega() as u32)
}

/// Product of the distinct monic irreducible factors.
pub fn radical(f: &Poly) -> Result<Poly> {
    let fac = factorize(f)?;
    let mut acc = Poly::one(f.field());
    for (p, _) in &fac.factors {
        acc = &acc * p;
    }
    Ok(acc)
}
