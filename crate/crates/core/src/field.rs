//! Arithmetic in `F_{p^r}` over a polynomial basis, the absolute trace and the
//! canonical additive character `e(z) = exp(2πi·Tr(z)/p)`.
//!
//! Elements are stored as [`Fq`], the canonical index `Σ c_i p^i` of the
//! coefficient vector `(c_0, …, c_{r-1})` (constant term first). Index order is
//! the canonical element order used everywhere downstream.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field. The tables are generated with schoolbook polynomial multiplication
//! ([`Field::mul_polynomial`]), which stays available as the reference path.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{param, resource, Error, Result};

/// Largest field order accepted by default.
pub const DEFAULT_FIELD_CAP: u32 = 1 << 16;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of a finite field, identified by its canonical index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Characteristic, degree and defining polynomial of `F_{p^r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    r: u32,
    /// Monic, degree `r`, constant term first (`r + 1` coefficients).
    modulus: Vec<u32>,
    q: u32,
}

impl FieldParams {
    /// Validated parameters with the default order cap.
    ///
    /// With `modulus = None` the smallest monic irreducible of degree `r` is
    /// chosen, ordering candidates by their canonical index.
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(p, r, modulus, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, r: u32, modulus: Option<&[u32]>, cap: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(param(alloc::format!("characteristic {p} is not prime")));
        }
        if r == 0 {
            return Err(param("extension degree must be at least 1"));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= cap)
            .ok_or_else(|| resource("field order p^r", (p as u128).pow(r.min(32)), cap as u128))?;

        let modulus = match modulus {
            Some(m) => {
                let m = trim(m.to_vec());
                if m.len() != r as usize + 1 {
                    return Err(param(alloc::format!(
                        "modulus must have degree {r}, got {}",
                        m.len().saturating_sub(1)
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(param("modulus coefficients must lie in [0, p)"));
                }
                if m[r as usize] != 1 {
                    return Err(param("modulus must be monic"));
                }
                if !poly_is_irreducible(&m, p) {
                    return Err(param("modulus is not irreducible over F_p"));
                }
                m
            }
            None => smallest_irreducible(p, r),
        };
        Ok(FieldParams { p, r, modulus, q })
    }

    /// Skips every check except the size arithmetic. Exists for negative
    /// controls that need a deliberately broken modulus.
    pub fn new_unchecked(p: u32, r: u32, modulus: Vec<u32>) -> Self {
        FieldParams {
            p,
            r,
            modulus,
            q: p.saturating_pow(r),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Exhaustive factor search over all monic polynomials of degree `≤ r/2`.
    pub fn is_irreducible(&self) -> bool {
        self.modulus.len() == self.r as usize + 1
            && self.modulus.last() == Some(&1)
            && self.modulus.iter().all(|&c| c < self.p)
            && poly_is_irreducible(&self.modulus, self.p)
    }
}

struct Inner {
    params: FieldParams,
    /// `p^i` for `i < r`.
    radix: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    trace: Vec<u32>,
    roots: Vec<Complex64>,
    add: Option<Vec<u32>>,
}

/// A constructed finite field. Cheap to clone; all clones share tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.params == other.inner.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.inner.params;
        f.debug_struct("Field")
            .field("p", &p.p)
            .field("r", &p.r)
            .field("modulus", &p.modulus)
            .finish()
    }
}

impl Field {
    pub fn new(params: FieldParams) -> Result<Self> {
        if !is_prime(params.p) || params.r == 0 {
            return Err(param("invalid characteristic or degree"));
        }
        if !params.is_irreducible() {
            return Err(param("modulus is not irreducible over F_p"));
        }
        let p = params.p;
        let r = params.r as usize;
        let q = params.q;
        let radix: Vec<u32> = (0..r).map(|i| p.pow(i as u32)).collect();

        let mut field = Inner {
            params,
            radix,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            trace: Vec::new(),
            roots: Vec::new(),
            add: None,
        };

        field.neg = (0..q)
            .map(|a| {
                let mut out = 0;
                for &base in &field.radix {
                    let d = (a / base) % p;
                    out += ((p - d) % p) * base;
                }
                out
            })
            .collect();

        let (exp, log) = discrete_log_tables(&field)?;
        field.exp = exp;
        field.log = log;

        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = digit_add(&field, a, b);
                }
            }
            field.add = Some(table);
        }

        let mut handle = Field {
            inner: Arc::new(field),
        };
        let trace = (0..q)
            .map(|z| handle.trace_by_powers(Fq(z)))
            .collect::<Result<Vec<u32>>>()?;
        let roots = (0..p)
            .map(|t| {
                let angle = 2.0 * core::f64::consts::PI * t as f64 / p as f64;
                let (s, c) = libm::sincos(angle);
                Complex64::new(c, s)
            })
            .collect();
        let inner = Arc::get_mut(&mut handle.inner).expect("fresh field handle is unique");
        inner.trace = trace;
        inner.roots = roots;
        Ok(handle)
    }

    /// `F_p` for prime `p`.
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(FieldParams::new(p, 1, None)?)
    }

    /// `F_{p^r}` with the default modulus.
    pub fn with_degree(p: u32, r: u32) -> Result<Self> {
        Field::new(FieldParams::new(p, r, None)?)
    }

    pub fn params(&self) -> &FieldParams {
        &self.inner.params
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.params.p
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.inner.params.r
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.params.q
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Element with the given canonical index.
    pub fn element(&self, index: u32) -> Result<Fq> {
        if index < self.q() {
            Ok(Fq(index))
        } else {
            Err(param(alloc::format!(
                "element index {index} out of range for q = {}",
                self.q()
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() != self.r() as usize {
            return Err(param(alloc::format!(
                "expected {} coordinates, got {}",
                self.r(),
                coeffs.len()
            )));
        }
        let p = self.p();
        let mut index = 0;
        for (&c, &base) in coeffs.iter().zip(&self.inner.radix) {
            if c >= p {
                return Err(param(alloc::format!("coordinate {c} not below p = {p}")));
            }
            index += c * base;
        }
        Ok(Fq(index))
    }

    /// Polynomial-basis coordinates, constant term first.
    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let p = self.p();
        self.inner.radix.iter().map(|&b| (a.0 / b) % p).collect()
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match &self.inner.add {
            Some(table) => Fq(table[(a.0 * self.q() + b.0) as usize]),
            None => Fq(digit_add(&self.inner, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let order = self.q() - 1;
        let log = &self.inner.log;
        let e = (log[a.0 as usize] as u64 + log[b.0 as usize] as u64) % order as u64;
        Fq(self.inner.exp[e as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q() - 1;
        let e = (order - self.inner.log[a.0 as usize]) % order;
        Ok(Fq(self.inner.exp[e as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let order = (self.q() - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64;
        Fq(self.inner.exp[((l * (e % order)) % order) as usize])
    }

    /// Schoolbook product reduced modulo the defining polynomial and `p`.
    pub fn mul_polynomial(&self, a: Fq, b: Fq) -> Fq {
        Fq(poly_mul_index(&self.inner, a.0, b.0))
    }

    /// Absolute trace `z + z^p + … + z^{p^{r-1}}`, as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, z: Fq) -> u32 {
        self.inner.trace[z.0 as usize]
    }

    /// The additive character `exp(2πi·Tr(z)/p)`.
    #[inline]
    pub fn character(&self, z: Fq) -> Complex64 {
        self.inner.roots[self.trace(z) as usize]
    }

    /// `exp(2πi·t/p)` for a prime-field residue `t`.
    #[inline]
    pub fn root_of_unity(&self, t: u32) -> Complex64 {
        self.inner.roots[(t % self.p()) as usize]
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone + '_ {
        (0..self.q()).map(Fq)
    }

    /// Frobenius sum evaluated with the schoolbook product.
    fn trace_by_powers(&self, z: Fq) -> Result<u32> {
        let p = self.p() as u64;
        let mut acc = Fq::ZERO;
        let mut term = z;
        for _ in 0..self.r() {
            acc = self.add(acc, term);
            term = self.pow_polynomial(term, p);
        }
        if acc.0 >= self.p() {
            return Err(Error::Contract(alloc::format!(
                "trace of {} left the prime subfield",
                z.0
            )));
        }
        Ok(acc.0)
    }

    fn pow_polynomial(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_polynomial(acc, base);
            }
            base = self.mul_polynomial(base, base);
            e >>= 1;
        }
        acc
    }

    /// Human-readable form: the residue for prime fields, `c0:c1:…` otherwise.
    pub fn format_element(&self, a: Fq) -> alloc::string::String {
        use alloc::string::ToString;
        if self.r() == 1 {
            a.0.to_string()
        } else {
            let parts: Vec<_> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            parts.join(":")
        }
    }
}

/// A field element bundled with its field. Binary operations check that both
/// operands live in the same field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Fq,
}

impl FieldElement {
    pub fn new(field: &Field, value: Fq) -> Result<Self> {
        field.element(value.0)?;
        Ok(FieldElement {
            field: field.clone(),
            value,
        })
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Result<Self> {
        Ok(FieldElement {
            field: field.clone(),
            value: field.from_coeffs(coeffs)?,
        })
    }

    pub fn value(&self) -> Fq {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(param("operands belong to different fields"))
        }
    }

    fn wrap(&self, value: Fq) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn trace(&self) -> u32 {
        self.field.trace(self.value)
    }

    pub fn character(&self) -> Complex64 {
        self.field.character(self.value)
    }
}

/// All `q` elements in canonical order, refusing fields larger than `cap`.
pub fn enumerate_field(field: &Field, cap: u32) -> Result<Vec<Fq>> {
    if field.q() > cap {
        return Err(resource("field enumeration", field.q() as u128, cap as u128));
    }
    Ok(field.elements().collect())
}

/// Checks `Σ_z e(z(x−y)) = q·δ_{x,y}` for all `x, y` within `1e-9`.
pub fn character_orthogonality_check(field: &Field) -> bool {
    let q = field.q() as f64;
    // The sum depends only on c = x − y, so it suffices to sweep c.
    let sums: Vec<Complex64> = field
        .elements()
        .map(|c| field.elements().map(|z| field.character(field.mul(z, c))).sum())
        .collect();
    field.elements().all(|x| {
        field.elements().all(|y| {
            let s = sums[field.sub(x, y).0 as usize];
            let expected = if x == y { q } else { 0.0 };
            (s - Complex64::new(expected, 0.0)).norm() <= 1e-9
        })
    })
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digit_add(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.params.p;
    let mut out = 0;
    for &base in &f.radix {
        out += (((a / base) % p + (b / base) % p) % p) * base;
    }
    out
}

fn trim(mut poly: Vec<u32>) -> Vec<u32> {
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

fn poly_mul_index(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.params.p as u64;
    let r = f.params.r as usize;
    let digits = |x: u32| -> Vec<u64> { f.radix.iter().map(|&base| ((x / base) as u64) % p).collect() };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let modulus: Vec<u64> = f.params.modulus.iter().map(|&c| c as u64).collect();
    for deg in (r..prod.len()).rev() {
        let lead = prod[deg];
        if lead == 0 {
            continue;
        }
        // modulus is monic: subtract lead·x^{deg-r}·modulus
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - r + i;
            prod[idx] = (prod[idx] + p * p - (lead * m) % p) % p;
        }
    }
    prod.iter()
        .take(r)
        .zip(&f.radix)
        .map(|(&c, &base)| c as u32 * base)
        .sum()
}

fn discrete_log_tables(f: &Inner) -> Result<(Vec<u32>, Vec<u32>)> {
    let q = f.params.q;
    if q == 2 {
        return Ok((vec![1], vec![0, 0]));
    }
    let order = q - 1;
    'candidates: for g in 2..q {
        let mut exp = Vec::with_capacity(order as usize);
        let mut x = 1u32;
        for i in 0..order {
            if i > 0 && x == 1 {
                continue 'candidates;
            }
            exp.push(x);
            x = poly_mul_index(f, x, g);
        }
        if x != 1 {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        return Ok((exp, log));
    }
    Err(Error::Contract(
        "no multiplicative generator found; modulus is not irreducible".into(),
    ))
}

/// Remainder of `a` modulo the monic polynomial `b`, both constant term first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    while rem.len() > db {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + p * p - (lead * c as u64) % p) % p;
            }
        }
        rem.pop();
    }
    rem.into_iter().map(|c| c as u32).collect()
}

fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let r = f.len() - 1;
    for d in 1..=r / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g: Vec<u32> = (0..d).map(|i| (low / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = p.pow(r);
    for low in 0..count {
        let mut f: Vec<u32> = (0..r).map(|i| (low / p.pow(i)) % p).collect();
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::with_degree(2, 2).unwrap()
    }

    #[test]
    fn prime_field_examples() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f5.add(Fq(3), Fq(4)), Fq(2));
        assert_eq!(f7.mul(Fq(3), Fq(5)), Fq(1));
        assert_eq!(f7.inv(Fq(3)).unwrap(), Fq(5));
        assert_eq!(f5.inv(Fq(1)).unwrap(), Fq(1));
        assert_eq!(f5.trace(Fq(3)), 3);
        for a in f5.elements() {
            assert_eq!(f5.add(a, Fq::ZERO), a);
            assert_eq!(f5.mul(a, Fq::ONE), a);
        }
    }

    #[test]
    fn f4_examples() {
        let f = f4();
        assert_eq!(f.params().modulus(), &[1, 1, 1]);
        let omega = f.from_coeffs(&[0, 1]).unwrap();
        let omega1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.add(omega, omega), Fq::ZERO);
        assert_eq!(f.mul(omega, omega), omega1);
        assert_eq!(f.inv(omega).unwrap(), omega1);
        assert_eq!(f.trace(Fq::ZERO), 0);
        assert_eq!(f.trace(omega), 1);
        let e = f.character(omega);
        assert!((e - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inverse_search_matches_table() {
        // exhaustive search over nonzero elements in F_4
        let f = f4();
        let omega = f.from_coeffs(&[0, 1]).unwrap();
        let found: Vec<Fq> = f
            .elements()
            .filter(|&b| f.mul_polynomial(omega, b) == Fq::ONE)
            .collect();
        assert_eq!(found, vec![f.from_coeffs(&[1, 1]).unwrap()]);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(Fq::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn character_of_prime_field() {
        let f = Field::prime(5).unwrap();
        let expected = Complex64::new(0.0, 4.0 * core::f64::consts::PI / 5.0).exp();
        assert!((f.character(Fq(2)) - expected).norm() < 1e-12);
        assert!((f.character(Fq::ZERO) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn default_moduli() {
        let f8 = FieldParams::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f9 = FieldParams::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldParams::new(4, 1, None), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(3, 0, None), Err(Error::Parameter(_))));
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(
            FieldParams::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            FieldParams::new(2, 2, Some(&[1, 1, 0])),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            FieldParams::new(2, 17, None),
            Err(Error::Resource { .. })
        ));
        let broken = FieldParams::new_unchecked(2, 2, vec![1, 0, 1]);
        assert!(!broken.is_irreducible());
        assert!(Field::new(broken).is_err());
    }

    #[test]
    fn cap_is_configurable() {
        assert!(FieldParams::with_cap(5, 2, None, 20).is_err());
        assert!(FieldParams::with_cap(5, 2, None, 25).is_ok());
    }

    #[test]
    fn enumeration_order() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(enumerate_field(&f2, 100).unwrap(), vec![Fq(0), Fq(1)]);
        let f = f4();
        let coords: Vec<Vec<u32>> = enumerate_field(&f, 100)
            .unwrap()
            .into_iter()
            .map(|a| f.coeffs(a))
            .collect();
        assert_eq!(coords, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let f9 = Field::with_degree(3, 2).unwrap();
        assert_eq!(enumerate_field(&f9, 100).unwrap().len(), 9);
        assert!(matches!(enumerate_field(&f9, 8), Err(Error::Resource { .. })));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = FieldElement::new(&Field::prime(5).unwrap(), Fq(1)).unwrap();
        let b = FieldElement::new(&Field::prime(7).unwrap(), Fq(1)).unwrap();
        assert!(matches!(a.add(&b), Err(Error::Parameter(_))));
        assert!(matches!(a.mul(&b), Err(Error::Parameter(_))));
        let c = FieldElement::new(&Field::prime(5).unwrap(), Fq(4)).unwrap();
        assert_eq!(a.add(&c).unwrap().value(), Fq(0));
    }

    #[test]
    fn orthogonality_small_fields() {
        assert!(character_orthogonality_check(&Field::prime(5).unwrap()));
        assert!(character_orthogonality_check(&f4()));
    }
}
