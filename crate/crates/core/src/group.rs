//! Finite groups as explicit Cayley tables, identity at index 0.
//!
//! Orders are capped at 64, so the table invariants (identity placement,
//! Latin square, associativity) are always verified in full at
//! construction.

use std::fmt;

/// Hard cap on the group order; the algebra dimension |G| bounds every
/// matrix and search below.
pub const MAX_GROUP_ORDER: usize = 64;

/// Index of a group element in the canonical numbering of its group.
pub type GroupElem = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableDefect {
    BadShape,
    IdentityMisplaced(usize),
    NotLatin { line: usize, is_row: bool },
    NotAssociative(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    TooLarge(usize),
    Empty,
    InvalidTable(TableDefect),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::TooLarge(n) => write!(f, "group order {n} exceeds cap {MAX_GROUP_ORDER}"),
            GroupError::Empty => write!(f, "empty Cayley table"),
            GroupError::InvalidTable(d) => match d {
                TableDefect::BadShape => write!(f, "table is not square"),
                TableDefect::IdentityMisplaced(i) => {
                    write!(f, "index 0 is not an identity (fails at {i})")
                }
                TableDefect::NotLatin { line, is_row } => {
                    let kind = if *is_row { "row" } else { "column" };
                    write!(f, "{kind} {line} is not a permutation")
                }
                TableDefect::NotAssociative(a, b, c) => {
                    write!(f, "associativity fails at ({a}, {b}, {c})")
                }
            },
        }
    }
}

impl std::error::Error for GroupError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupClass {
    Abelian,
    Hamiltonian,
    Other,
}

/// A finite group given by its Cayley table (flat, row-major) with the
/// identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    names: Option<Vec<String>>,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.n)
    }
}

impl Group {
    pub fn from_table(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if table.iter().any(|row| row.len() != n)
            || table.iter().flatten().any(|&v| v >= n)
        {
            return Err(GroupError::InvalidTable(TableDefect::BadShape));
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(GroupError::InvalidTable(TableDefect::BadShape));
            }
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&v| v as u32).collect();
        let g = Group { n, table: flat, inv: Vec::new(), names };
        g.validate()?;
        Ok(g.with_inverses())
    }

    fn with_inverses(mut self) -> Self {
        let mut inv = vec![0u32; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                if self.mul(a, b) == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        self.inv = inv;
        self
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.n;
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(GroupError::InvalidTable(TableDefect::IdentityMisplaced(i)));
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = self.mul(i, j);
                let c = self.mul(j, i);
                if seen_row[r] {
                    return Err(GroupError::InvalidTable(TableDefect::NotLatin {
                        line: i,
                        is_row: true,
                    }));
                }
                if seen_col[c] {
                    return Err(GroupError::InvalidTable(TableDefect::NotLatin {
                        line: i,
                        is_row: false,
                    }));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // n <= 64 keeps the full n^3 sweep at most 2^18 triples.
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::InvalidTable(TableDefect::NotAssociative(
                            a, b, c,
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cyclic group of order m; element i is g^i.
    pub fn cyclic(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::Empty);
        }
        if m > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(m));
        }
        let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        let names = (0..m)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        Group::from_table(table, Some(names))
    }

    /// Dihedral group of order 2m: rotations r^i at 0..m, reflections
    /// r^i s at m..2m.
    pub fn dihedral(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::Empty);
        }
        let n = 2 * m;
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (i, s1) = if a < m { (a, false) } else { (a - m, true) };
                let (j, s2) = if b < m { (b, false) } else { (b - m, true) };
                // r^i s^e * r^j s^f = r^(i + j * (-1)^e) s^(e+f)
                let rot = if s1 { (i + m - j % m) % m } else { (i + j) % m };
                table[a][b] = if s1 ^ s2 { m + rot } else { rot };
            }
        }
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    "1".to_string()
                } else if i < m {
                    if i == 1 { "r".to_string() } else { format!("r{i}") }
                } else if i == m {
                    "s".to_string()
                } else if i == m + 1 {
                    "rs".to_string()
                } else {
                    format!("r{}s", i - m)
                }
            })
            .collect();
        Group::from_table(table, Some(names))
    }

    /// The quaternion group of order 8 with numbering
    /// 1, g, g2, g3, h, gh, g2h, g3h and relations g^4 = 1, h^2 = g^2,
    /// h^-1 g h = g^-1.
    pub fn quaternion8() -> Self {
        let idx = |a: usize, b: usize| a % 4 + 4 * (b % 2);
        let mut table = vec![vec![0usize; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (a, b) = (x % 4, x / 4);
                let (c, d) = (y % 4, y / 4);
                // g^a h^b * g^c h^d = g^(a + (-1)^b c + 2[b+d=2]) h^(b+d mod 2)
                let mut e = a + if b == 1 { (4 - c % 4) % 4 } else { c };
                if b + d == 2 {
                    e += 2;
                }
                table[x][y] = idx(e, b + d);
            }
        }
        let names = ["1", "g", "g2", "g3", "h", "gh", "g2h", "g3h"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Group::from_table(table, Some(names)).expect("Q8 table is a group")
    }

    /// Direct product with lexicographic pair numbering: (i, j) -> i * |B| + j.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Self, GroupError> {
        let n = a.n * b.n;
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut table = vec![vec![0usize; n]; n];
        for i1 in 0..a.n {
            for j1 in 0..b.n {
                for i2 in 0..a.n {
                    for j2 in 0..b.n {
                        let x = i1 * b.n + j1;
                        let y = i2 * b.n + j2;
                        table[x][y] = a.mul(i1, i2) * b.n + b.mul(j1, j2);
                    }
                }
            }
        }
        let names = (0..a.n)
            .flat_map(|i| {
                let b_names: Vec<String> =
                    (0..b.n).map(|j| format!("({},{})", a.name(i), b.name(j))).collect();
                b_names
            })
            .collect();
        Group::from_table(table, Some(names))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: GroupElem) -> GroupElem {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> GroupElem {
        0
    }

    pub fn pow(&self, g: GroupElem, e: usize) -> GroupElem {
        let mut out = 0;
        for _ in 0..e {
            out = self.mul(out, g);
        }
        out
    }

    pub fn name(&self, i: GroupElem) -> String {
        match &self.names {
            Some(ns) => ns[i].clone(),
            None => format!("g_{i}"),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Least m >= 1 with g^m = 1.
    pub fn element_order(&self, g: GroupElem) -> usize {
        let mut cur = g;
        let mut m = 1;
        while cur != 0 {
            cur = self.mul(cur, g);
            m += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.n {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// The cyclic subgroup generated by g, as a sorted index set.
    pub fn cyclic_subgroup(&self, g: GroupElem) -> Vec<GroupElem> {
        let mut members = vec![0];
        let mut cur = g;
        while cur != 0 {
            members.push(cur);
            cur = self.mul(cur, g);
        }
        members.sort_unstable();
        members
    }

    /// h^-1 g h.
    pub fn conjugate(&self, g: GroupElem, h: GroupElem) -> GroupElem {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// Abelian iff the table is symmetric; hamiltonian iff nonabelian with
    /// every cyclic subgroup normal.
    pub fn classify(&self) -> GroupClass {
        if self.is_abelian() {
            return GroupClass::Abelian;
        }
        for g in 1..self.n {
            let sub = self.cyclic_subgroup(g);
            for h in 1..self.n {
                let c = self.conjugate(g, h);
                if sub.binary_search(&c).is_err() {
                    return GroupClass::Other;
                }
            }
        }
        GroupClass::Hamiltonian
    }

    /// Closure of S, re-indexed with identity at position 0, together with
    /// the embedding (subgroup index -> ambient index).
    pub fn generated_subgroup(&self, gens: &[GroupElem]) -> (Group, Vec<GroupElem>) {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut work: Vec<usize> = vec![0];
        for &g in gens {
            if !member[g] {
                member[g] = true;
                work.push(g);
            }
        }
        // Worklist closure under the table (inverses come for free in a
        // finite group).
        let mut i = 0;
        while i < work.len() {
            let a = work[i];
            i += 1;
            for j in 0..work.len() {
                for prod in [self.mul(a, work[j]), self.mul(work[j], a)] {
                    if !member[prod] {
                        member[prod] = true;
                        work.push(prod);
                    }
                }
            }
        }
        let mut embed: Vec<usize> = (0..self.n).filter(|&i| member[i]).collect();
        embed.sort_unstable();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &g) in embed.iter().enumerate() {
            pos[g] = i;
        }
        let m = embed.len();
        let table: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).map(|j| pos[self.mul(embed[i], embed[j])]).collect())
            .collect();
        let names = self
            .names
            .as_ref()
            .map(|ns| embed.iter().map(|&g| ns[g].clone()).collect());
        let sub = Group::from_table(table, names).expect("closure of a subset is a subgroup");
        (sub, embed)
    }

    /// All ordered pairs (g, h) with gh = hg, in index order.
    pub fn commuting_pairs(&self) -> Vec<(GroupElem, GroupElem)> {
        let mut out = Vec::new();
        for g in 0..self.n {
            for h in 0..self.n {
                if self.mul(g, h) == self.mul(h, g) {
                    out.push((g, h));
                }
            }
        }
        out
    }

    pub fn has_element_of_order(&self, m: usize) -> bool {
        (0..self.n).any(|g| self.element_order(g) == m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = Group::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.table_rows(), vec![vec![0]]);
    }

    #[test]
    fn quaternion8_structure() {
        let q8 = Group::quaternion8();
        assert_eq!(q8.order(), 8);
        // Orders derived by walking the table: exactly one element of
        // order 2 (g^2), six of order 4.
        let orders: Vec<usize> = (0..8).map(|g| q8.element_order(g)).collect();
        assert_eq!(orders, vec![1, 4, 2, 4, 4, 4, 4, 4]);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        // Defining relations.
        let (g, h) = (1, 4);
        assert_eq!(q8.pow(g, 4), 0);
        assert_eq!(q8.mul(h, h), q8.mul(g, g));
        assert_eq!(q8.conjugate(g, h), q8.inv(g));
    }

    #[test]
    fn klein_four_group() {
        let c2 = Group::cyclic(2).unwrap();
        let v4 = Group::direct_product(&c2, &c2).unwrap();
        assert_eq!(v4.order(), 4);
        for g in 1..4 {
            assert_eq!(v4.element_order(g), 2);
        }
    }

    #[test]
    fn element_orders() {
        let c6 = Group::cyclic(6).unwrap();
        assert_eq!(c6.element_order(0), 1);
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(Group::quaternion8().element_order(1), 4);
    }

    #[test]
    fn classification() {
        assert_eq!(Group::cyclic(4).unwrap().classify(), GroupClass::Abelian);
        assert_eq!(Group::quaternion8().classify(), GroupClass::Hamiltonian);
        // S3: conjugating a transposition leaves its cyclic subgroup.
        assert_eq!(Group::dihedral(3).unwrap().classify(), GroupClass::Other);
    }

    #[test]
    fn hamiltonian_products() {
        // Q8 x A stays hamiltonian for abelian A of odd order; |A| <= 7
        // keeps the product inside the order-64 cap.
        let q8 = Group::quaternion8();
        let odd_abelian: Vec<Group> = vec![
            Group::cyclic(1).unwrap(),
            Group::cyclic(3).unwrap(),
            Group::cyclic(5).unwrap(),
            Group::cyclic(7).unwrap(),
        ];
        for a in odd_abelian {
            let g = Group::direct_product(&q8, &a).unwrap();
            assert_eq!(g.classify(), GroupClass::Hamiltonian, "Q8 x |A|={}", a.order());
        }
        // But Q8 x C2 x ... with even factors of order 4 break it:
        let c4 = Group::cyclic(4).unwrap();
        let g = Group::direct_product(&q8, &c4).unwrap();
        assert_eq!(g.classify(), GroupClass::Other);
    }

    #[test]
    fn generated_subgroups() {
        let c6 = Group::cyclic(6).unwrap();
        let (h, embed) = c6.generated_subgroup(&[3]);
        assert_eq!(h.order(), 2);
        assert_eq!(embed, vec![0, 3]);

        let q8 = Group::quaternion8();
        let (h, embed) = q8.generated_subgroup(&[1]);
        assert_eq!(h.order(), 4);
        assert_eq!(embed, vec![0, 1, 2, 3]);
        // Embedding preserves the table.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(embed[h.mul(i, j)], q8.mul(embed[i], embed[j]));
            }
        }

        let (t, embed) = c6.generated_subgroup(&[]);
        assert_eq!(t.order(), 1);
        assert_eq!(embed, vec![0]);
    }

    #[test]
    fn commuting_pair_counts() {
        // Abelian: all n^2 pairs.
        assert_eq!(Group::cyclic(5).unwrap().commuting_pairs().len(), 25);
        // Q8: sum of centralizer sizes = 2*8 + 6*4 = 40.
        assert_eq!(Group::quaternion8().commuting_pairs().len(), 40);
        // S3: 6 * 3 classes = 18.
        assert_eq!(Group::dihedral(3).unwrap().commuting_pairs().len(), 18);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // Identity misplaced.
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            Group::from_table(t, None),
            Err(GroupError::InvalidTable(TableDefect::IdentityMisplaced(_)))
        ));
        // Not a Latin square.
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            Group::from_table(t, None),
            Err(GroupError::InvalidTable(TableDefect::NotLatin { .. }))
        ));
        // Latin with identity but not associative: order-5 loop.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            Group::from_table(t, None),
            Err(GroupError::InvalidTable(TableDefect::NotAssociative(..)))
        ));
        assert!(matches!(Group::cyclic(65), Err(GroupError::TooLarge(65))));
    }

    #[test]
    fn dihedral_small_cases() {
        assert_eq!(Group::dihedral(1).unwrap().order(), 2);
        let d2 = Group::dihedral(2).unwrap();
        assert!(d2.is_abelian());
        let d4 = Group::dihedral(4).unwrap();
        assert_eq!(d4.classify(), GroupClass::Other);
        assert!(d4.has_element_of_order(4));
    }
}
