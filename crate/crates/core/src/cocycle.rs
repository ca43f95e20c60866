//! Factor systems rho: G x G -> U(K) for twisted group algebras, with
//! validation, symmetry testing, power scalars, and the diagonal
//! rescalings u_g -> v_g = u_g mu_g used throughout the deciders.

use std::fmt;
use std::sync::Arc;

use crate::field::{FieldElem, FieldError, FieldSpec};
use crate::group::{Group, GroupElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleError {
    ZeroEntry(GroupElem, GroupElem),
    ZeroValue,
    DimensionMismatch { expected: usize, got: usize },
    IncompatibleLambda { order: u64, required_divisor: u64 },
    NotProductGroup,
    InvalidTable(ValidationReport),
    Field(FieldError),
}

impl fmt::Display for CocycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleError::ZeroEntry(g, h) => write!(f, "zero entry at ({g}, {h})"),
            CocycleError::ZeroValue => write!(f, "zero value where a unit is required"),
            CocycleError::DimensionMismatch { expected, got } => {
                write!(f, "table size {got} does not match group order {expected}")
            }
            CocycleError::IncompatibleLambda { order, required_divisor } => write!(
                f,
                "lambda has multiplicative order {order}, which does not divide {required_divisor}"
            ),
            CocycleError::NotProductGroup => {
                write!(f, "group is not the canonical product of two cyclic groups")
            }
            CocycleError::InvalidTable(r) => write!(
                f,
                "table violates the factor-system identities ({} normalization, {} cocycle)",
                r.normalization.len(),
                r.cocycle.len()
            ),
            CocycleError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CocycleError {}

impl From<FieldError> for CocycleError {
    fn from(e: FieldError) -> Self {
        CocycleError::Field(e)
    }
}

/// Violations found by `validate`: normalization failures rho(g,1) != 1 or
/// rho(1,g) != 1, and cocycle identity failures at triples (g, h, f).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub normalization: Vec<GroupElem>,
    pub cocycle: Vec<(GroupElem, GroupElem, GroupElem)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.normalization.is_empty() && self.cocycle.is_empty()
    }
}

/// A diagonal rescaling mu: G -> U(K) with mu(1) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rescaling {
    mu: Vec<FieldElem>,
}

impl Rescaling {
    pub fn new(field: &FieldSpec, mut mu: Vec<FieldElem>) -> Result<Self, CocycleError> {
        if mu.is_empty() {
            return Err(CocycleError::DimensionMismatch { expected: 1, got: 0 });
        }
        if mu.iter().any(|v| v.is_zero()) {
            return Err(CocycleError::ZeroValue);
        }
        mu[0] = field.one();
        Ok(Rescaling { mu })
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Rescaling { mu: vec![field.one(); n] }
    }

    pub fn get(&self, g: GroupElem) -> &FieldElem {
        &self.mu[g]
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// Pointwise product; rescalings act on factor systems as a group.
    pub fn compose(&self, field: &FieldSpec, other: &Rescaling) -> Rescaling {
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| field.mul(a, b))
            .collect();
        Rescaling { mu }
    }

    pub fn pointwise_inverse(&self, field: &FieldSpec) -> Rescaling {
        let mu = self.mu.iter().map(|a| field.inv(a).expect("units")).collect();
        Rescaling { mu }
    }
}

/// Result of trying to rescale every u_g to a v_g with v_g^ord(g) = 1.
#[derive(Debug, Clone)]
pub enum UnitRescaleOutcome {
    Rescaled { mu: Rescaling, system: FactorSystem },
    MissingRoots(Vec<MissingRoot>),
}

/// An element whose power scalar admits no ord(g)-th root in K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingRoot {
    pub element: GroupElem,
    pub order: u64,
    pub alpha: FieldElem,
}

/// The table rho(g, h) in U(K) twisting u_g u_h = rho(g, h) u_{gh}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSystem {
    field: FieldSpec,
    group: Arc<Group>,
    table: Vec<FieldElem>,
}

impl FactorSystem {
    /// rho = 1 everywhere (the ordinary group algebra).
    pub fn trivial(field: FieldSpec, group: Arc<Group>) -> Self {
        let n = group.order();
        let table = vec![field.one(); n * n];
        FactorSystem { field, group, table }
    }

    /// Builds from an explicit table without checking the cocycle
    /// identities, so invalid tables can still be fed to `validate`.
    /// Zero entries and shape mismatches are rejected here.
    pub fn from_table(
        field: FieldSpec,
        group: Arc<Group>,
        table: Vec<Vec<FieldElem>>,
    ) -> Result<Self, CocycleError> {
        let n = group.order();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(CocycleError::DimensionMismatch {
                expected: n,
                got: table.len(),
            });
        }
        for (g, row) in table.iter().enumerate() {
            for (h, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(CocycleError::ZeroEntry(g, h));
                }
            }
        }
        let table = table.into_iter().flatten().collect();
        Ok(FactorSystem { field, group, table })
    }

    /// Like `from_table` but additionally requires the identities to hold.
    pub fn from_table_checked(
        field: FieldSpec,
        group: Arc<Group>,
        table: Vec<Vec<FieldElem>>,
    ) -> Result<Self, CocycleError> {
        let fs = FactorSystem::from_table(field, group, table)?;
        let report = fs.validate();
        if !report.is_valid() {
            return Err(CocycleError::InvalidTable(report));
        }
        Ok(fs)
    }

    /// The standard nontrivial 2-cocycle on C_m x C_n (canonical product
    /// numbering): rho((a1,a2),(b1,b2)) = lambda^(a2*b1). Well-defined
    /// exactly when ord(lambda) divides gcd(m, n).
    pub fn lambda_pairing(
        field: FieldSpec,
        group: Arc<Group>,
        m: usize,
        n: usize,
        lambda: FieldElem,
    ) -> Result<Self, CocycleError> {
        if lambda.is_zero() {
            return Err(CocycleError::ZeroValue);
        }
        let cm = Group::cyclic(m).map_err(|_| CocycleError::NotProductGroup)?;
        let cn = Group::cyclic(n).map_err(|_| CocycleError::NotProductGroup)?;
        let expected =
            Group::direct_product(&cm, &cn).map_err(|_| CocycleError::NotProductGroup)?;
        if group.order() != m * n || group.table_rows() != expected.table_rows() {
            return Err(CocycleError::NotProductGroup);
        }
        let required = crate::field::gcd(m as u64, n as u64);
        let ord = field.elem_order(&lambda)?;
        if required % ord != 0 {
            return Err(CocycleError::IncompatibleLambda {
                order: ord,
                required_divisor: required,
            });
        }
        let size = m * n;
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            let a2 = (a % n) as u64;
            for b in 0..size {
                let b1 = (b / n) as u64;
                table.push(field.pow_u64(&lambda, a2 * b1));
            }
        }
        let fs = FactorSystem { field, group, table };
        debug_assert!(fs.validate().is_valid());
        Ok(fs)
    }

    /// The coboundary of the trivial system under mu.
    pub fn coboundary(
        field: FieldSpec,
        group: Arc<Group>,
        mu: &Rescaling,
    ) -> Result<Self, CocycleError> {
        if mu.len() != group.order() {
            return Err(CocycleError::DimensionMismatch {
                expected: group.order(),
                got: mu.len(),
            });
        }
        Ok(FactorSystem::trivial(field, group).apply_rescaling(mu))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    #[inline]
    pub fn rho(&self, g: GroupElem, h: GroupElem) -> &FieldElem {
        &self.table[g * self.group.order() + h]
    }

    pub fn table_rows(&self) -> Vec<Vec<FieldElem>> {
        let n = self.group.order();
        (0..n)
            .map(|g| (0..n).map(|h| self.rho(g, h).clone()).collect())
            .collect()
    }

    /// Lists every normalization violation and every triple breaking
    /// rho(g,h) rho(gh,f) = rho(h,f) rho(g,hf); an empty report means the
    /// u-basis multiplication is associative.
    pub fn validate(&self) -> ValidationReport {
        let n = self.group.order();
        let one = self.field.one();
        let mut report = ValidationReport::default();
        for g in 0..n {
            if *self.rho(g, 0) != one || *self.rho(0, g) != one {
                report.normalization.push(g);
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                let left_base = self.rho(g, h);
                for f in 0..n {
                    let lhs = self.field.mul(left_base, self.rho(gh, f));
                    let rhs = self.field.mul(self.rho(h, f), self.rho(g, self.group.mul(h, f)));
                    if lhs != rhs {
                        report.cocycle.push((g, h, f));
                    }
                }
            }
        }
        report
    }

    /// First commuting pair (g, h) in index order with
    /// rho(g,h) != rho(h,g), or None when the system is symmetric.
    pub fn symmetry_counterexample(&self) -> Option<(GroupElem, GroupElem)> {
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                if self.group.mul(g, h) == self.group.mul(h, g) && self.rho(g, h) != self.rho(h, g)
                {
                    return Some((g, h));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_counterexample().is_none()
    }

    /// The unit alpha_g with u_g^ord(g) = alpha_g u_1, as the product
    /// prod_{i=1}^{ord-1} rho(g, g^i).
    pub fn power_scalar(&self, g: GroupElem) -> FieldElem {
        let ord = self.group.element_order(g);
        let mut acc = self.field.one();
        let mut pw = g;
        for _ in 1..ord {
            acc = self.field.mul(&acc, self.rho(g, pw));
            pw = self.group.mul(pw, g);
        }
        acc
    }

    /// Diagonal change of basis u_g -> u_g mu_g:
    /// rho'(g,h) = rho(g,h) mu(g) mu(h) mu(gh)^-1.
    pub fn apply_rescaling(&self, mu: &Rescaling) -> FactorSystem {
        debug_assert_eq!(mu.len(), self.group.order());
        let n = self.group.order();
        let inv: Vec<FieldElem> = (0..n)
            .map(|g| self.field.inv(mu.get(g)).expect("rescaling values are units"))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                let v = self.field.mul(
                    &self.field.mul(self.rho(g, h), mu.get(g)),
                    &self.field.mul(mu.get(h), &inv[gh]),
                );
                table.push(v);
            }
        }
        let out = FactorSystem { field: self.field.clone(), group: self.group.clone(), table };
        debug_assert!(out.validate().is_valid() || !self.validate().is_valid());
        out
    }

    /// For each g of order n, takes mu(g) = the smallest n-th root of
    /// alpha_g^-1; on success every rescaled power scalar is 1
    /// (v_g^ord(g) = 1 exactly).
    pub fn unit_power_rescaling(&self) -> UnitRescaleOutcome {
        let n = self.group.order();
        let mut mu = Vec::with_capacity(n);
        let mut missing = Vec::new();
        for g in 0..n {
            let ord = self.group.element_order(g) as u64;
            let alpha = self.power_scalar(g);
            let target = self.field.inv(&alpha).expect("power scalars are units");
            match self.field.nth_root(&target, ord).expect("target is a unit") {
                Some(root) => mu.push(root),
                None => {
                    mu.push(self.field.one());
                    missing.push(MissingRoot { element: g, order: ord, alpha });
                }
            }
        }
        if !missing.is_empty() {
            return UnitRescaleOutcome::MissingRoots(missing);
        }
        let mu = Rescaling { mu };
        let system = self.apply_rescaling(&mu);
        debug_assert!((0..n).all(|g| system.power_scalar(g) == self.field.one()));
        UnitRescaleOutcome::Rescaled { mu, system }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: usize) -> FieldSpec {
        FieldSpec::gf(p, k).unwrap()
    }

    fn klein() -> Arc<Group> {
        let c2 = Group::cyclic(2).unwrap();
        Arc::new(Group::direct_product(&c2, &c2).unwrap())
    }

    fn lambda4_on_klein() -> FactorSystem {
        let f5 = gf(5, 1);
        let lam = f5.from_u64(4);
        FactorSystem::lambda_pairing(f5, klein(), 2, 2, lam).unwrap()
    }

    fn random_rescaling(field: &FieldSpec, n: usize, seed: u64) -> Rescaling {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = (0..n)
            .map(|i| {
                if i == 0 {
                    field.one()
                } else {
                    field.elem_from_index(rng.gen_range(1..field.q()))
                }
            })
            .collect();
        Rescaling::new(field, mu).unwrap()
    }

    #[test]
    fn trivial_system_is_valid_and_symmetric() {
        let fs = FactorSystem::trivial(gf(5, 1), Arc::new(Group::quaternion8()));
        assert!(fs.validate().is_valid());
        assert!(fs.is_symmetric());
    }

    #[test]
    fn lambda_pairing_is_valid_but_asymmetric() {
        let fs = lambda4_on_klein();
        // Independent oracle: check all 4^3 triples of the identity.
        let (f, g) = (fs.field().clone(), fs.group().clone());
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let lhs = f.mul(fs.rho(a, b), fs.rho(g.mul(a, b), c));
                    let rhs = f.mul(fs.rho(b, c), fs.rho(a, g.mul(b, c)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert!(fs.validate().is_valid());
        // (0,1) has index 1 and (1,0) has index 2: rho differs there.
        assert_eq!(fs.symmetry_counterexample(), Some((1, 2)));
        assert_eq!(*fs.rho(1, 2), f.from_u64(4));
        assert_eq!(*fs.rho(2, 1), f.one());
    }

    #[test]
    fn corrupting_one_entry_is_detected() {
        let f5 = gf(5, 1);
        let g = klein();
        let mut rows = FactorSystem::trivial(f5.clone(), g.clone()).table_rows();
        rows[1][2] = f5.from_u64(2);
        let fs = FactorSystem::from_table(f5, g, rows).unwrap();
        let report = fs.validate();
        assert!(!report.is_valid());
        assert!(report.normalization.is_empty());
        // Every reported triple must actually touch the edited entry.
        assert!(!report.cocycle.is_empty());
        for &(a, b, c) in &report.cocycle {
            let touches = (a == 1 && b == 2)
                || (fs.group().mul(a, b) == 1 && c == 2)
                || (b == 1 && c == 2)
                || (a == 1 && fs.group().mul(b, c) == 2);
            assert!(touches, "spurious triple ({a},{b},{c})");
        }
        assert!(matches!(
            FactorSystem::from_table_checked(
                fs.field().clone(),
                fs.group().clone(),
                fs.table_rows()
            ),
            Err(CocycleError::InvalidTable(_))
        ));
    }

    #[test]
    fn zero_entries_are_rejected() {
        let f5 = gf(5, 1);
        let g = klein();
        let mut rows = FactorSystem::trivial(f5.clone(), g.clone()).table_rows();
        rows[2][3] = f5.zero();
        assert_eq!(
            FactorSystem::from_table(f5, g, rows).unwrap_err(),
            CocycleError::ZeroEntry(2, 3)
        );
    }

    #[test]
    fn power_scalars() {
        let fs = FactorSystem::trivial(gf(5, 1), Arc::new(Group::cyclic(6).unwrap()));
        for g in 0..6 {
            assert_eq!(fs.power_scalar(g), fs.field().one());
        }
        let fs = lambda4_on_klein();
        assert_eq!(fs.power_scalar(0), fs.field().one());
        // g = (1,1) at index 3: u_g^2 = rho(g,g) u_1 = 4 u_1.
        assert_eq!(fs.power_scalar(3), fs.field().from_u64(4));
    }

    #[test]
    fn power_scalar_both_accumulation_orders_agree() {
        // prod rho(g, g^i) = prod rho(g^i, g) since u_g^n is well defined.
        let fs = lambda4_on_klein();
        let f = fs.field().clone();
        let grp = fs.group().clone();
        for g in 0..grp.order() {
            let ord = grp.element_order(g);
            let mut acc = f.one();
            let mut pw = g;
            for _ in 1..ord {
                acc = f.mul(&acc, fs.rho(pw, g));
                pw = grp.mul(pw, g);
            }
            assert_eq!(acc, fs.power_scalar(g));
        }
    }

    #[test]
    fn rescaling_identity_and_inverse() {
        let f5 = gf(5, 1);
        let g = klein();
        let fs = FactorSystem::trivial(f5.clone(), g.clone());
        let id = Rescaling::identity(&f5, 4);
        assert_eq!(fs.apply_rescaling(&id).table_rows(), fs.table_rows());

        let mu = random_rescaling(&f5, 4, 7);
        let fwd = fs.apply_rescaling(&mu);
        let back = fwd.apply_rescaling(&mu.pointwise_inverse(&f5));
        assert_eq!(back.table_rows(), fs.table_rows());
    }

    #[test]
    fn rescaling_is_a_group_action() {
        let f7 = gf(7, 1);
        let g = Arc::new(Group::cyclic(6).unwrap());
        let fs = FactorSystem::trivial(f7.clone(), g.clone());
        for seed in 0..5u64 {
            let mu1 = random_rescaling(&f7, 6, seed);
            let mu2 = random_rescaling(&f7, 6, seed + 100);
            let lhs = fs.apply_rescaling(&mu1).apply_rescaling(&mu2);
            let rhs = fs.apply_rescaling(&mu1.compose(&f7, &mu2));
            assert_eq!(lhs.table_rows(), rhs.table_rows());
        }
    }

    #[test]
    fn coboundary_power_scalars_recompute() {
        // For a coboundary of the trivial system, alpha_g = mu(g)^ord(g).
        let f4 = gf(2, 2);
        let g = Arc::new(Group::cyclic(3).unwrap());
        let mu = random_rescaling(&f4, 3, 3);
        let fs = FactorSystem::coboundary(f4.clone(), g.clone(), &mu).unwrap();
        assert!(fs.validate().is_valid());
        assert!(fs.is_symmetric());
        for i in 0..3 {
            let ord = g.element_order(i) as u64;
            assert_eq!(fs.power_scalar(i), f4.pow_u64(mu.get(i), ord));
        }
    }

    #[test]
    fn coboundaries_on_abelian_groups_stay_symmetric() {
        for (p, k, n) in [(5u64, 1usize, 4usize), (3, 2, 6), (2, 2, 3)] {
            let f = gf(p, k);
            let g = Arc::new(Group::cyclic(n).unwrap());
            for seed in 0..4u64 {
                let mu = random_rescaling(&f, n, seed);
                let fs = FactorSystem::coboundary(f.clone(), g.clone(), &mu).unwrap();
                assert!(fs.is_symmetric());
            }
        }
    }

    #[test]
    fn unit_power_rescaling_trivial_stays_trivial() {
        let f9 = gf(3, 2);
        let g = Arc::new(Group::cyclic(4).unwrap());
        let fs = FactorSystem::trivial(f9.clone(), g);
        match fs.unit_power_rescaling() {
            UnitRescaleOutcome::Rescaled { mu, system } => {
                assert!(mu.values().iter().all(|m| *m == f9.one()));
                assert_eq!(system.table_rows(), fs.table_rows());
            }
            UnitRescaleOutcome::MissingRoots(m) => panic!("missing roots: {m:?}"),
        }
    }

    #[test]
    fn unit_power_rescaling_lambda_pairing() {
        let fs = lambda4_on_klein();
        let f = fs.field().clone();
        match fs.unit_power_rescaling() {
            UnitRescaleOutcome::Rescaled { mu, system } => {
                // alpha = 4 at g=(1,1); mu = sqrt(4^-1) = sqrt(4) -> 2.
                assert_eq!(*mu.get(3), f.from_u64(2));
                for g in 0..4 {
                    assert_eq!(system.power_scalar(g), f.one());
                }
            }
            UnitRescaleOutcome::MissingRoots(m) => panic!("missing roots: {m:?}"),
        }
    }

    #[test]
    fn unit_power_rescaling_reports_missing_roots() {
        // On C2 over GF(7) with rho(g,g) = 3: need mu^2 = 3^-1 = 5, but 5
        // is a non-square mod 7 (squares are {1, 2, 4}).
        let f7 = gf(7, 1);
        let g = Arc::new(Group::cyclic(2).unwrap());
        let rows = vec![
            vec![f7.one(), f7.one()],
            vec![f7.one(), f7.from_u64(3)],
        ];
        let fs = FactorSystem::from_table_checked(f7.clone(), g, rows).unwrap();
        match fs.unit_power_rescaling() {
            UnitRescaleOutcome::MissingRoots(missing) => {
                assert_eq!(
                    missing,
                    vec![MissingRoot { element: 1, order: 2, alpha: f7.from_u64(3) }]
                );
            }
            UnitRescaleOutcome::Rescaled { .. } => panic!("root should not exist"),
        }
    }

    #[test]
    fn lambda_pairing_requires_compatible_order_and_group() {
        let f5 = gf(5, 1);
        // ord(2) = 4 does not divide gcd(2, 2) = 2.
        assert!(matches!(
            FactorSystem::lambda_pairing(f5.clone(), klein(), 2, 2, f5.from_u64(2)),
            Err(CocycleError::IncompatibleLambda { order: 4, required_divisor: 2 })
        ));
        let c4 = Arc::new(Group::cyclic(4).unwrap());
        assert!(matches!(
            FactorSystem::lambda_pairing(f5.clone(), c4, 2, 2, f5.from_u64(4)),
            Err(CocycleError::NotProductGroup)
        ));
    }
}
