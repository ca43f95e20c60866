//! Exact arithmetic in GF(p^k) at desk scale (q <= 2^16).
//!
//! Elements are coefficient vectors over the prime field, constant term
//! first, reduced modulo a monic irreducible polynomial of degree k.
//! Every element has a canonical index `sum c_i * p^i`; all deterministic
//! tie-breaks (roots, isotropic tuples, default moduli) pick the smallest
//! index.

use std::fmt;

use arrayvec::ArrayVec;

/// Hard cap on the field size; all oracles are exhaustive or randomized
/// at desk scale.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;
/// Largest extension degree compatible with the size cap (p = 2, k = 16).
pub const MAX_EXT_DEGREE: usize = 16;

/// Fixed-capacity coefficient storage; keeps element arithmetic off the heap.
pub type Coeffs = ArrayVec<u64, MAX_EXT_DEGREE>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    DegreeOutOfRange(usize),
    FieldTooLarge { p: u64, k: usize },
    BadModulus(String),
    FieldMismatch,
    DivisionByZero,
    ZeroArgument,
    InvalidArgument(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::DegreeOutOfRange(k) => write!(f, "extension degree {k} out of range"),
            FieldError::FieldTooLarge { p, k } => {
                write!(f, "GF({p}^{k}) exceeds the size cap {MAX_FIELD_SIZE}")
            }
            FieldError::BadModulus(msg) => write!(f, "bad modulus: {msg}"),
            FieldError::FieldMismatch => write!(f, "operands belong to different fields"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::ZeroArgument => write!(f, "zero argument where a unit is required"),
            FieldError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of GF(p^k): exactly k residues mod p, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coeffs: Coeffs,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The base field K = GF(p^k), carrying the modulus and precomputed
/// reduction rows for x^k .. x^(2k-2).
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    reduction: Vec<Coeffs>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

impl FieldSpec {
    /// Builds GF(p^k). When `modulus` is omitted the smallest monic
    /// irreducible of degree k (by coefficient encoding) is chosen, so
    /// specs are reproducible across runs.
    pub fn new(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(FieldError::FieldTooLarge { p, k })?;
            if q > MAX_FIELD_SIZE {
                return Err(FieldError::FieldTooLarge { p, k });
            }
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 {
                    return Err(FieldError::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        k + 1,
                        m.len()
                    )));
                }
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if m[k] != 1 {
                    return Err(FieldError::BadModulus("not monic".into()));
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::BadModulus("reducible over the prime field".into()));
                }
                m
            }
            None => poly::smallest_irreducible(p, k),
        };
        let reduction = poly::reduction_rows(&modulus, p, k);
        Ok(FieldSpec { p, k, modulus, reduction })
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        FieldSpec::new(p, 1, None)
    }

    /// GF(p^k) with the default modulus.
    pub fn gf(p: u64, k: usize) -> Result<Self, FieldError> {
        FieldSpec::new(p, k, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Field size q = p^k.
    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        let mut coeffs = Coeffs::new();
        for _ in 0..self.k {
            coeffs.push(0);
        }
        FieldElem { coeffs }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// Embeds an integer residue into the field (constant polynomial).
    pub fn from_u64(&self, c: u64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p;
        e
    }

    /// Embeds a signed integer, reducing mod p.
    pub fn from_i64(&self, c: i64) -> FieldElem {
        let p = self.p as i64;
        self.from_u64(c.rem_euclid(p) as u64)
    }

    /// The class of x, a generator of the extension as a ring.
    pub fn gen(&self) -> FieldElem {
        let mut e = self.zero();
        if self.k > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn elem_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem, FieldError> {
        if coeffs.len() != self.k {
            return Err(FieldError::FieldMismatch);
        }
        let mut c = Coeffs::new();
        for &v in coeffs {
            c.push(v % self.p);
        }
        Ok(FieldElem { coeffs: c })
    }

    /// The canonical index: sum c_i * p^i. Indices order the field and
    /// drive every deterministic tie-break.
    pub fn elem_index(&self, a: &FieldElem) -> u64 {
        let mut idx = 0;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn elem_from_index(&self, mut idx: u64) -> FieldElem {
        let mut e = self.zero();
        for i in 0..self.k {
            e.coeffs[i] = idx % self.p;
            idx /= self.p;
        }
        e
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q()).map(move |i| self.elem_from_index(i))
    }

    fn check(&self, a: &FieldElem) -> Result<(), FieldError> {
        if a.coeffs.len() != self.k || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut c = Coeffs::new();
        for i in 0..self.k {
            c.push((a.coeffs[i] + b.coeffs[i]) % self.p);
        }
        FieldElem { coeffs: c }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut c = Coeffs::new();
        for i in 0..self.k {
            c.push((a.coeffs[i] + self.p - b.coeffs[i]) % self.p);
        }
        FieldElem { coeffs: c }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let mut c = Coeffs::new();
        for i in 0..self.k {
            c.push((self.p - a.coeffs[i]) % self.p);
        }
        FieldElem { coeffs: c }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if self.k == 1 {
            let mut c = Coeffs::new();
            c.push(a.coeffs[0] * b.coeffs[0] % self.p);
            return FieldElem { coeffs: c };
        }
        // Schoolbook convolution; sums stay far below u64 overflow at
        // k <= 16, p < 2^16.
        let mut conv = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..self.k {
            let ai = a.coeffs[i];
            if ai == 0 {
                continue;
            }
            for j in 0..self.k {
                conv[i + j] += ai * b.coeffs[j];
            }
        }
        for e in (self.k..=2 * self.k - 2).rev() {
            let c = conv[e] % self.p;
            if c != 0 {
                let row = &self.reduction[e - self.k];
                for (i, &r) in row.iter().enumerate() {
                    conv[i] += c * r;
                }
            }
            conv[e] = 0;
        }
        let mut c = Coeffs::new();
        for item in conv.iter().take(self.k) {
            c.push(item % self.p);
        }
        FieldElem { coeffs: c }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u64(a, self.q() - 2))
    }

    /// a^e for any signed exponent; negative exponents invert first.
    pub fn pow(&self, a: &FieldElem, e: i64) -> Result<FieldElem, FieldError> {
        if e < 0 {
            let inv = self.inv(a)?;
            return Ok(self.pow_u64(&inv, e.unsigned_abs()));
        }
        Ok(self.pow_u64(a, e as u64))
    }

    pub fn pow_u64(&self, a: &FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        let e = e % (self.q() - 1);
        if e == 0 {
            return self.one();
        }
        let mut base = a.clone();
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: &FieldElem) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let q1 = self.q() - 1;
        let mut ord = q1;
        for (l, _) in factor(q1) {
            while ord % l == 0 && self.pow_u64(a, ord / l) == self.one() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> FieldElem {
        let q1 = self.q() - 1;
        let primes: Vec<u64> = factor(q1).into_iter().map(|(l, _)| l).collect();
        for idx in 1..self.q() {
            let g = self.elem_from_index(idx);
            if primes.iter().all(|&l| self.pow_u64(&g, q1 / l) != self.one()) {
                return g;
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Some mu with mu^n = a, smallest by index, or None when no n-th root
    /// exists. Existence is decided by a^((q-1)/gcd(n, q-1)) = 1.
    pub fn nth_root(&self, a: &FieldElem, n: u64) -> Result<Option<FieldElem>, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        if n == 0 {
            return Err(FieldError::InvalidArgument("0th root".into()));
        }
        if n == 1 {
            return Ok(Some(a.clone()));
        }
        let q = self.q();
        let q1 = q - 1;
        let g = gcd(n, q1);
        if self.pow_u64(a, q1 / g) != self.one() {
            return Ok(None);
        }
        if q <= 1 << 12 {
            // Brute force in index order: the first hit is the smallest root.
            for idx in 1..q {
                let x = self.elem_from_index(idx);
                if self.pow_u64(&x, n) == *a {
                    return Ok(Some(x));
                }
            }
            return Ok(None);
        }
        let ord = self.elem_order(a)?;
        if gcd(n, ord) == 1 {
            // Exponent inversion gives one root; the full root set is its
            // coset under the n-torsion subgroup, enumerated for the
            // smallest-index tie-break.
            let m = mod_inverse(n % ord.max(1), ord).unwrap_or(0);
            let mu0 = self.pow_u64(a, m);
            debug_assert_eq!(self.pow_u64(&mu0, n), *a);
            let t = g;
            let zeta = self.pow_u64(&self.multiplicative_generator(), q1 / t);
            let mut best = mu0.clone();
            let mut best_idx = self.elem_index(&best);
            let mut cur = mu0;
            for _ in 1..t {
                cur = self.mul(&cur, &zeta);
                let idx = self.elem_index(&cur);
                if idx < best_idx {
                    best_idx = idx;
                    best = cur.clone();
                }
            }
            Ok(Some(best))
        } else {
            // Torsion obstructs exponent inversion; fall back to an index
            // scan (existence already established, so this terminates).
            for idx in 1..q {
                let x = self.elem_from_index(idx);
                if self.pow_u64(&x, n) == *a {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
    }

    /// Smallest square root by index; `None` when a is a non-square.
    /// Unlike `nth_root` this accepts zero (sqrt 0 = 0).
    pub fn sqrt_min(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return Some(self.zero());
        }
        let q = self.q();
        if self.p == 2 {
            // Squaring is the Frobenius bijection; invert it by iterating.
            return Some(self.pow_u64(a, 1 << (self.k - 1)));
        }
        if self.pow_u64(a, (q - 1) / 2) != self.one() {
            return None;
        }
        if q % 4 == 3 {
            let r = self.pow_u64(a, (q + 1) / 4);
            debug_assert_eq!(self.mul(&r, &r), *a);
            let neg = self.neg(&r);
            if self.elem_index(&r) <= self.elem_index(&neg) {
                return Some(r);
            }
            return Some(neg);
        }
        self.nth_root(a, 2).ok().flatten()
    }

    /// A nonzero pair (a, b) with a^2 + b^2 = 0, smallest by index, when
    /// one exists. None exactly when p = 3 (mod 4) and k is odd.
    pub fn isotropic_pair(&self) -> Option<(FieldElem, FieldElem)> {
        if self.p != 2 && self.q() % 4 != 1 {
            return None;
        }
        // The first component cannot be 0, so the smallest valid pair is
        // (1, min sqrt(-1)).
        let b = self.sqrt_min(&self.neg(&self.one()))?;
        Some((self.one(), b))
    }

    /// A nonzero triple (x, y, z) with x^2 + y^2 + z^2 = 0, smallest by
    /// index. Always exists over a finite field.
    pub fn isotropic_triple(&self) -> Option<(FieldElem, FieldElem, FieldElem)> {
        if let Some((_, b)) = self.isotropic_pair() {
            // (0, 1, sqrt(-1)) beats every triple with x != 0.
            return Some((self.zero(), self.one(), b));
        }
        // Here -1 is a non-square, so x = 0 admits no solution and
        // 1 + y^2 never vanishes; scan y in index order.
        let one = self.one();
        for yi in 0..self.q() {
            let y = self.elem_from_index(yi);
            let target = self.neg(&self.add(&one, &self.mul(&y, &y)));
            if let Some(z) = self.sqrt_min(&target) {
                return Some((one, y, z));
            }
        }
        None
    }

    /// Whether the integer n is invertible in K, i.e. p does not divide n.
    pub fn integer_invertible(&self, n: u64) -> bool {
        debug_assert!(n >= 1);
        gcd(n, self.p) == 1
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        let tmp = old_r - qt * r;
        old_r = r;
        r = tmp;
        let tmp = old_s - qt * s;
        old_s = s;
        s = tmp;
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Dense polynomial helpers over GF(p), little-endian coefficients.
mod poly {
    use super::{Coeffs, MAX_EXT_DEGREE};

    fn trim(v: &mut Vec<u64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        debug_assert_eq!(m[dm], 1);
        while r.len() > dm {
            let lead = *r.last().unwrap() % p;
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for i in 0..=dm {
                    let idx = shift + i;
                    r[idx] = (r[idx] + (p - lead) * m[i]) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        while r.len() < dm.max(1) {
            r.push(0);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut conv = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                conv[i + j] = (conv[i + j] + ai * bj) % p;
            }
        }
        rem(&conv, m, p)
    }

    /// t^(p^reps) mod m by repeated p-th powering.
    fn frobenius_iter(t: &[u64], reps: u32, m: &[u64], p: u64) -> Vec<u64> {
        let mut cur = t.to_vec();
        for _ in 0..reps {
            let mut acc = vec![1u64];
            let mut base = cur.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                e >>= 1;
            }
            cur = acc;
        }
        cur
    }

    fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn gcd_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !is_zero(&b) {
            // Make b monic before reducing.
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = super::mod_inverse(lead, p).expect("p prime");
                for c in b.iter_mut() {
                    *c = *c * inv % p;
                }
            }
            let r = rem(&a, &b, p);
            a = b;
            b = r;
            trim(&mut a);
            trim(&mut b);
        }
        a
    }

    fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        if r.len() < 2 {
            r.resize(2, 0);
        }
        r[1] = (r[1] + p - 1) % p;
        r
    }

    /// Rabin's test: f of degree k is irreducible over GF(p) iff
    /// x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for each prime r | k.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let full = frobenius_iter(&x, k as u32, f, p);
        let diff = {
            let mut d = sub_x(&full, p);
            super::poly::trim_pub(&mut d);
            d
        };
        if !is_zero(&diff) {
            return false;
        }
        for (r, _) in super::factor(k as u64) {
            let t = frobenius_iter(&x, (k as u64 / r) as u32, f, p);
            let g = gcd_poly(&sub_x(&t, p), f, p);
            let mut g = g;
            trim(&mut g);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    pub(super) fn trim_pub(v: &mut Vec<u64>) {
        trim(v)
    }

    /// Smallest monic irreducible of degree k by coefficient encoding.
    pub fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
        let mut count: u64 = 1;
        for _ in 0..k {
            count *= p;
        }
        for idx in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut t = idx;
            for _ in 0..k {
                f.push(t % p);
                t /= p;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducibles of every degree exist over GF(p)")
    }

    /// Rows x^(k+j) mod f for j in 0..k-1, used for fast reduction.
    pub fn reduction_rows(f: &[u64], p: u64, k: usize) -> Vec<Coeffs> {
        if k == 1 {
            return Vec::new();
        }
        let mut rows: Vec<Coeffs> = Vec::with_capacity(k - 1);
        // x^k mod f = -(f - x^k)
        let mut cur = vec![0u64; k];
        for i in 0..k {
            cur[i] = (p - f[i] % p) % p;
        }
        for _ in 0..k - 1 {
            let mut row = Coeffs::new();
            for &c in cur.iter().take(MAX_EXT_DEGREE.min(k)) {
                row.push(c);
            }
            rows.push(row);
            // Multiply by x and fold the overflow term through row 0.
            let carry = cur[k - 1];
            for i in (1..k).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if carry != 0 {
                for i in 0..k {
                    cur[i] = (cur[i] + carry * rows[0][i]) % p;
                }
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: usize) -> FieldSpec {
        FieldSpec::gf(p, k).unwrap()
    }

    #[test]
    fn construction_rejects_bad_specs() {
        assert!(matches!(FieldSpec::prime(6), Err(FieldError::NotPrime(6))));
        assert!(matches!(
            FieldSpec::new(2, 17, None),
            Err(FieldError::DegreeOutOfRange(17))
        ));
        assert!(matches!(
            FieldSpec::new(251, 3, None),
            Err(FieldError::FieldTooLarge { .. })
        ));
        // x^2 + 1 splits over GF(5).
        assert!(matches!(
            FieldSpec::new(5, 2, Some(vec![1, 0, 1])),
            Err(FieldError::BadModulus(_))
        ));
    }

    #[test]
    fn default_moduli_are_the_conventional_ones() {
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]); // x^2+x+1
        assert_eq!(gf(2, 3).modulus(), &[1, 1, 0, 1]); // x^3+x+1
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]); // x^2+1
        assert_eq!(gf(5, 2).modulus(), &[2, 0, 1]); // x^2+2
        assert_eq!(gf(7, 2).modulus(), &[1, 0, 1]); // x^2+1
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = gf(5, 1);
        let two = f5.from_u64(2);
        assert_eq!(f5.inv(&two).unwrap(), f5.from_u64(3));

        let f4 = gf(2, 2);
        let x = f4.gen();
        let xx = f4.mul(&x, &x);
        assert_eq!(xx, f4.elem_from_coeffs(&[1, 1]).unwrap()); // x^2 = x+1

        let f7 = gf(7, 1);
        assert_eq!(f7.pow(&f7.from_u64(3), 6).unwrap(), f7.one());
    }

    #[test]
    fn inv_of_zero_fails() {
        let f5 = gf(5, 1);
        assert_eq!(f5.inv(&f5.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let f5 = gf(5, 1);
        let f25 = gf(5, 2);
        let a = f25.one();
        assert_eq!(f5.checked_add(&a, &a), Err(FieldError::FieldMismatch));
    }

    /// Independent oracle: all n-th roots of a by trying every element.
    fn roots_brute(f: &FieldSpec, a: &FieldElem, n: u64) -> Vec<FieldElem> {
        f.elements()
            .filter(|x| !x.is_zero() && f.pow_u64(x, n) == *a)
            .collect()
    }

    #[test]
    fn nth_root_examples() {
        let f5 = gf(5, 1);
        let four = f5.from_u64(4);
        // Oracle over all 5 elements: 2^2 = 3^2 = 4; tie-break picks 2.
        let oracle = roots_brute(&f5, &four, 2);
        assert_eq!(oracle, vec![f5.from_u64(2), f5.from_u64(3)]);
        assert_eq!(f5.nth_root(&four, 2).unwrap(), Some(f5.from_u64(2)));

        // Squares in GF(5) are {0, 1, 4}.
        assert!(roots_brute(&f5, &f5.from_u64(2), 2).is_empty());
        assert_eq!(f5.nth_root(&f5.from_u64(2), 2).unwrap(), None);

        assert_eq!(f5.nth_root(&f5.one(), 1).unwrap(), Some(f5.one()));
        assert_eq!(f5.nth_root(&f5.zero(), 2), Err(FieldError::ZeroArgument));
    }

    #[test]
    fn nth_root_of_one_is_one() {
        // The smallest n-th root of 1 must be 1 itself: rescalings of a
        // trivial cocycle stay trivial.
        for spec in [gf(2, 2), gf(3, 2), gf(5, 2), gf(7, 1), gf(13, 1)] {
            for n in 1..=8 {
                let r = spec.nth_root(&spec.one(), n).unwrap().unwrap();
                assert_eq!(r, spec.one(), "{spec} n={n}");
            }
        }
    }

    #[test]
    fn nth_root_large_field_smart_path_matches_brute_force() {
        // q = 5^6 = 15625 > 2^12 exercises the order/inversion path.
        let f = gf(5, 6);
        assert!(f.q() > 1 << 12);
        for seed_idx in [7u64, 123, 4567, 11111] {
            let a = f.elem_from_index(seed_idx);
            if a.is_zero() {
                continue;
            }
            for n in [2u64, 3, 4, 6] {
                let got = f.nth_root(&a, n).unwrap();
                match got {
                    Some(mu) => {
                        assert_eq!(f.pow_u64(&mu, n), a);
                        // Must be the minimum root.
                        let all = roots_brute(&f, &a, n);
                        let min = all
                            .iter()
                            .min_by_key(|x| f.elem_index(x))
                            .cloned()
                            .unwrap();
                        assert_eq!(mu, min);
                    }
                    None => assert!(roots_brute(&f, &a, n).is_empty()),
                }
            }
        }
    }

    /// Brute-force oracle for the smallest isotropic pair.
    fn isotropic_pair_brute(f: &FieldSpec) -> Option<(FieldElem, FieldElem)> {
        for ai in 0..f.q() {
            for bi in 0..f.q() {
                if ai == 0 && bi == 0 {
                    continue;
                }
                let a = f.elem_from_index(ai);
                let b = f.elem_from_index(bi);
                if f.add(&f.mul(&a, &a), &f.mul(&b, &b)).is_zero() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    #[test]
    fn isotropic_pair_examples() {
        let f5 = gf(5, 1);
        let oracle = isotropic_pair_brute(&f5).unwrap();
        assert_eq!(oracle, (f5.one(), f5.from_u64(2)));
        assert_eq!(f5.isotropic_pair().unwrap(), oracle);

        let f7 = gf(7, 1);
        assert_eq!(isotropic_pair_brute(&f7), None);
        assert_eq!(f7.isotropic_pair(), None);

        let f49 = gf(7, 2);
        let got = f49.isotropic_pair().unwrap();
        assert_eq!(isotropic_pair_brute(&f49).unwrap(), got);
    }

    #[test]
    fn isotropic_pair_existence_criterion() {
        // None exactly when p = 3 (mod 4) and k odd, checked against brute
        // force for q <= 2^12.
        for p in [2u64, 3, 5, 7, 11, 13] {
            for k in 1..=3 {
                let Ok(f) = FieldSpec::gf(p, k) else { continue };
                if f.q() > 1 << 12 {
                    continue;
                }
                let expected_none = p % 4 == 3 && k % 2 == 1;
                let brute = isotropic_pair_brute(&f);
                assert_eq!(brute.is_none(), expected_none, "{f}");
                match (f.isotropic_pair(), brute) {
                    (Some(got), Some(want)) => {
                        assert_eq!(got, want, "{f}");
                        let lhs = f.add(&f.mul(&got.0, &got.0), &f.mul(&got.1, &got.1));
                        assert!(lhs.is_zero());
                    }
                    (None, None) => {}
                    other => panic!("{f}: mismatch {other:?}"),
                }
            }
        }
    }

    /// Brute-force oracle for the smallest isotropic triple.
    fn isotropic_triple_brute(f: &FieldSpec) -> Option<(FieldElem, FieldElem, FieldElem)> {
        for xi in 0..f.q() {
            for yi in 0..f.q() {
                for zi in 0..f.q() {
                    if xi == 0 && yi == 0 && zi == 0 {
                        continue;
                    }
                    let x = f.elem_from_index(xi);
                    let y = f.elem_from_index(yi);
                    let z = f.elem_from_index(zi);
                    let s = f.add(
                        &f.add(&f.mul(&x, &x), &f.mul(&y, &y)),
                        &f.mul(&z, &z),
                    );
                    if s.is_zero() {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn isotropic_triple_examples() {
        let f7 = gf(7, 1);
        let oracle = isotropic_triple_brute(&f7).unwrap();
        assert_eq!(
            oracle,
            (f7.one(), f7.from_u64(2), f7.from_u64(3))
        );
        assert_eq!(f7.isotropic_triple().unwrap(), oracle);

        for f in [gf(2, 1), gf(3, 1), gf(5, 1), gf(3, 2), gf(2, 2)] {
            let got = f.isotropic_triple().unwrap();
            assert_eq!(got, isotropic_triple_brute(&f).unwrap(), "{f}");
        }
    }

    #[test]
    fn integer_invertibility() {
        assert!(gf(3, 2).integer_invertible(8));
        assert!(!gf(2, 1).integer_invertible(2));
        assert!(gf(5, 1).integer_invertible(1));
    }

    #[test]
    fn element_index_round_trip() {
        let f = gf(3, 3);
        for i in 0..f.q() {
            let e = f.elem_from_index(i);
            assert_eq!(f.elem_index(&e), i);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_field() -> impl Strategy<Value = FieldSpec> {
            prop_oneof![
                Just(gf(2, 1)),
                Just(gf(3, 1)),
                Just(gf(5, 1)),
                Just(gf(7, 1)),
                Just(gf(2, 2)),
                Just(gf(3, 2)),
                Just(gf(5, 2)),
                Just(gf(2, 4)),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn field_axioms((f, ai, bi, ci) in small_field().prop_flat_map(|f| {
                let q = f.q();
                (Just(f), 0..q, 0..q, 0..q)
            })) {
                let a = f.elem_from_index(ai);
                let b = f.elem_from_index(bi);
                let c = f.elem_from_index(ci);
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                prop_assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                if !a.is_zero() {
                    prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }

            #[test]
            fn nth_root_is_exact((f, ai, n) in small_field().prop_flat_map(|f| {
                let q = f.q();
                (Just(f), 1..q, 1u64..10)
            })) {
                let a = f.elem_from_index(ai);
                match f.nth_root(&a, n).unwrap() {
                    Some(mu) => prop_assert_eq!(f.pow_u64(&mu, n), a),
                    None => {
                        // Exhaustive confirmation that no root exists.
                        for x in f.elements() {
                            if !x.is_zero() {
                                prop_assert_ne!(f.pow_u64(&x, n), a.clone());
                            }
                        }
                    }
                }
            }
        }
    }
}
