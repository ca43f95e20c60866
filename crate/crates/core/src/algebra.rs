//! Elements of the twisted group algebra K_rho G: twisted convolution,
//! supports, regular representations over the prime field, nilpotency and
//! centrality tests, the commutative nilradical via Frobenius kernels, and
//! the support-restriction operation for equations a x b = c.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::cocycle::FactorSystem;
use crate::field::{FieldElem, FieldSpec};
use crate::group::{Group, GroupElem};
use crate::matrix::PrimeMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    AmbientMismatch,
    NotCommutative,
    PreconditionFailed(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::AmbientMismatch => write!(f, "elements belong to different algebras"),
            AlgebraError::NotCommutative => write!(f, "operation requires a commutative algebra"),
            AlgebraError::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// The ambient algebra (K, G, rho); cheap to clone and share.
#[derive(Debug, Clone)]
pub struct Algebra {
    inner: Arc<FactorSystem>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}

impl Eq for Algebra {}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.group())
    }
}

impl Algebra {
    pub fn new(rho: FactorSystem) -> Self {
        Algebra { inner: Arc::new(rho) }
    }

    pub fn rho(&self) -> &FactorSystem {
        &self.inner
    }

    pub fn field(&self) -> &FieldSpec {
        self.inner.field()
    }

    pub fn group(&self) -> &Arc<Group> {
        self.inner.group()
    }

    /// K-dimension |G|.
    pub fn dim(&self) -> usize {
        self.group().order()
    }

    /// GF(p)-dimension k * |G|.
    pub fn prime_dim(&self) -> usize {
        self.field().k() * self.dim()
    }

    /// Commutative iff G is abelian and rho is symmetric.
    pub fn is_commutative(&self) -> bool {
        self.group().is_abelian() && self.inner.is_symmetric()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            alg: self.clone(),
            coeffs: vec![self.field().zero(); self.dim()],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.unit(0)
    }

    /// The basis unit u_g.
    pub fn unit(&self, g: GroupElem) -> AlgebraElement {
        self.unit_scaled(g, self.field().one())
    }

    /// c * u_g.
    pub fn unit_scaled(&self, g: GroupElem, c: FieldElem) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[g] = c;
        e
    }

    /// The scalar c embedded at the identity.
    pub fn scalar(&self, c: FieldElem) -> AlgebraElement {
        self.unit_scaled(0, c)
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElem>) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::AmbientMismatch);
        }
        Ok(AlgebraElement { alg: self.clone(), coeffs })
    }

    /// Number of elements q^|G| when it does not exceed `cap`.
    pub fn space_size_capped(&self, cap: u64) -> Option<u64> {
        let q = self.field().q();
        let mut total: u64 = 1;
        for _ in 0..self.dim() {
            total = total.checked_mul(q)?;
            if total > cap {
                return None;
            }
        }
        Some(total)
    }

    /// Element number `idx` in the canonical enumeration: group slot j
    /// carries digit (idx / q^j) mod q, each digit read as a field index.
    pub fn element_from_index(&self, mut idx: u64) -> AlgebraElement {
        let q = self.field().q();
        let mut e = self.zero();
        for slot in 0..self.dim() {
            e.coeffs[slot] = self.field().elem_from_index(idx % q);
            idx /= q;
        }
        e
    }

    /// Flattens an element to k*|G| prime-field residues, slot-major.
    pub fn vectorize(&self, a: &AlgebraElement) -> Vec<u64> {
        let k = self.field().k();
        let mut v = Vec::with_capacity(self.prime_dim());
        for c in &a.coeffs {
            v.extend_from_slice(c.coeffs());
        }
        debug_assert_eq!(v.len(), k * self.dim());
        v
    }

    pub fn devectorize(&self, v: &[u64]) -> AlgebraElement {
        let k = self.field().k();
        debug_assert_eq!(v.len(), self.prime_dim());
        let coeffs = v
            .chunks(k)
            .map(|c| self.field().elem_from_coeffs(c).expect("chunk length k"))
            .collect();
        AlgebraElement { alg: self.clone(), coeffs }
    }

    /// GF(p)-basis of the algebra: u_g x^j in slot-major order.
    pub fn prime_basis(&self) -> Vec<AlgebraElement> {
        let k = self.field().k();
        let mut out = Vec::with_capacity(self.prime_dim());
        for g in 0..self.dim() {
            for j in 0..k {
                let mut c = vec![0u64; k];
                c[j] = 1;
                out.push(self.unit_scaled(g, self.field().elem_from_coeffs(&c).unwrap()));
            }
        }
        out
    }

    /// Matrix of x -> a*x (left) or x -> x*a (right) on the prime-field
    /// space.
    pub fn rep_matrix(&self, a: &AlgebraElement, left: bool) -> PrimeMatrix {
        let dim = self.prime_dim();
        let mut m = PrimeMatrix::zeros(self.field().p(), dim, dim);
        for (col, e) in self.prime_basis().iter().enumerate() {
            let prod = if left { a.mul_ref(e) } else { e.mul_ref(a) };
            m.set_column(col, &self.vectorize(&prod));
        }
        m
    }

    /// Basis of the center, solved by intersecting the kernels of the
    /// commutator maps with each basis unit.
    pub fn center_basis(&self) -> Vec<AlgebraElement> {
        let mut basis = self.prime_basis();
        for g in 1..self.dim() {
            if basis.is_empty() {
                break;
            }
            let ug = self.unit(g);
            // Columns: commutators [u_g, b] of the current basis.
            let mut m = PrimeMatrix::zeros(self.field().p(), self.prime_dim(), basis.len());
            for (col, b) in basis.iter().enumerate() {
                let comm = ug.mul_ref(b) - b.mul_ref(&ug);
                m.set_column(col, &self.vectorize(&comm));
            }
            let kernel = m.kernel_basis();
            basis = kernel
                .iter()
                .map(|combo| {
                    let mut acc = self.zero();
                    for (i, &c) in combo.iter().enumerate() {
                        if c != 0 {
                            acc = acc + basis[i].scalar_mul(&self.field().from_u64(c));
                        }
                    }
                    acc
                })
                .collect();
        }
        basis
    }

    /// Nilradical of a commutative ambient: the kernel of the e-th
    /// Frobenius iterate x -> x^(p^e) with p^e >= k|G|, as a GF(p)-linear
    /// map.
    pub fn nilradical_commutative(&self) -> Result<Vec<AlgebraElement>, AlgebraError> {
        if !self.is_commutative() {
            return Err(AlgebraError::NotCommutative);
        }
        let p = self.field().p();
        let dim = self.prime_dim();
        let mut frob = PrimeMatrix::zeros(p, dim, dim);
        for (col, e) in self.prime_basis().iter().enumerate() {
            let img = e.pow(p);
            frob.set_column(col, &self.vectorize(&img));
        }
        let mut e = 0u32;
        let mut pe: u64 = 1;
        while pe < dim as u64 {
            pe *= p;
            e += 1;
        }
        let m = frob.pow(e.max(1));
        Ok(m.kernel_basis().iter().map(|v| self.devectorize(v)).collect())
    }

    /// Central nilpotent elements form the nilradical of the (commutative)
    /// center; returned as a GF(p)-basis. For a commutative ambient this
    /// is the full nilradical.
    pub fn central_nilradical(&self) -> Vec<AlgebraElement> {
        if self.is_commutative() {
            return self.nilradical_commutative().expect("commutative");
        }
        let center = self.center_basis();
        if center.is_empty() {
            return Vec::new();
        }
        let p = self.field().p();
        let dim = self.prime_dim();
        let z = center.len();
        // Coordinates of z_i^p in the center basis; the center is a
        // commutative subalgebra closed under Frobenius.
        let mut zmat = PrimeMatrix::zeros(p, dim, z);
        for (j, b) in center.iter().enumerate() {
            zmat.set_column(j, &self.vectorize(b));
        }
        let mut frob = PrimeMatrix::zeros(p, z, z);
        for (j, b) in center.iter().enumerate() {
            let img = self.vectorize(&b.pow(p));
            let coords = zmat.solve(&img).expect("center is Frobenius-closed");
            frob.set_column(j, &coords);
        }
        let mut e = 0u32;
        let mut pe: u64 = 1;
        while pe < dim as u64 {
            pe *= p;
            e += 1;
        }
        let kernel = frob.pow(e.max(1)).kernel_basis();
        kernel
            .iter()
            .map(|combo| {
                let mut acc = self.zero();
                for (i, &c) in combo.iter().enumerate() {
                    if c != 0 {
                        acc = acc + center[i].scalar_mul(&self.field().from_u64(c));
                    }
                }
                acc
            })
            .collect()
    }
}

/// An element sum_g u_g alpha_g, stored as |G| field coefficients.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    alg: Algebra,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: GroupElem) -> &FieldElem {
        &self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Indices of the nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<GroupElem> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, _)| g)
            .collect()
    }

    fn same_ambient(&self, other: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.alg != other.alg {
            return Err(AlgebraError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_ambient(other)?;
        Ok(self.add_ref(other))
    }

    pub fn checked_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_ambient(other)?;
        Ok(self.sub_ref(other))
    }

    pub fn checked_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same_ambient(other)?;
        Ok(self.mul_ref(other))
    }

    pub fn add_ref(&self, other: &AlgebraElement) -> AlgebraElement {
        let f = self.alg.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.add(a, b))
            .collect();
        AlgebraElement { alg: self.alg.clone(), coeffs }
    }

    pub fn sub_ref(&self, other: &AlgebraElement) -> AlgebraElement {
        let f = self.alg.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        AlgebraElement { alg: self.alg.clone(), coeffs }
    }

    pub fn neg_ref(&self) -> AlgebraElement {
        let f = self.alg.field();
        let coeffs = self.coeffs.iter().map(|a| f.neg(a)).collect();
        AlgebraElement { alg: self.alg.clone(), coeffs }
    }

    pub fn scalar_mul(&self, c: &FieldElem) -> AlgebraElement {
        let f = self.alg.field();
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        AlgebraElement { alg: self.alg.clone(), coeffs }
    }

    /// Twisted convolution: coefficient of u_f is
    /// sum over gh = f of rho(g,h) a_g b_h.
    pub fn mul_ref(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.alg.zero();
        self.mul_into(other, &mut out);
        out
    }

    fn mul_into(&self, other: &AlgebraElement, out: &mut AlgebraElement) {
        let f = self.alg.field();
        let grp = self.alg.group();
        let rho = self.alg.rho();
        for c in out.coeffs.iter_mut() {
            *c = f.zero();
        }
        for (g, ag) in self.coeffs.iter().enumerate() {
            if ag.is_zero() {
                continue;
            }
            for (h, bh) in other.coeffs.iter().enumerate() {
                if bh.is_zero() {
                    continue;
                }
                let gh = grp.mul(g, h);
                let term = f.mul(&f.mul(rho.rho(g, h), ag), bh);
                out.coeffs[gh] = f.add(&out.coeffs[gh], &term);
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> AlgebraElement {
        let mut acc = self.alg.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Nilpotency via the dimension bound: a is nilpotent iff a^|G| = 0,
    /// computed by repeated squaring.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.alg.dim() as u64;
        let mut s = self.clone();
        let mut e = 1u64;
        while e < n {
            if s.is_zero() {
                return true;
            }
            s = s.mul_ref(&s);
            e *= 2;
        }
        s.is_zero()
    }

    /// Central iff it commutes with every basis unit.
    pub fn is_central(&self) -> bool {
        for g in 0..self.alg.dim() {
            let ug = self.alg.unit(g);
            if self.mul_ref(&ug) != ug.mul_ref(self) {
                return false;
            }
        }
        true
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("ambient mismatch")
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("ambient mismatch")
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("ambient mismatch")
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// Given a x b = c, truncates x to the subgroup H generated by the
/// supports of a, b and c; the truncation still satisfies a y b = c and
/// Supp(y) is contained in H.
pub fn restrict_equation(
    a: &AlgebraElement,
    x: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let alg = a.algebra().clone();
    if a.mul_ref(x).mul_ref(b) != *c {
        return Err(AlgebraError::PreconditionFailed("a*x*b != c".into()));
    }
    let mut gens = a.support();
    gens.extend(b.support());
    gens.extend(c.support());
    let (_, embed) = alg.group().generated_subgroup(&gens);
    let mut member = vec![false; alg.dim()];
    for &g in &embed {
        member[g] = true;
    }
    let coeffs = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(g, v)| if member[g] { v.clone() } else { alg.field().zero() })
        .collect();
    let y = AlgebraElement { alg, coeffs };
    debug_assert_eq!(a.mul_ref(&y).mul_ref(b), *c);
    Ok(y)
}
