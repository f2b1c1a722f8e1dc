//! Finite groups given by a multiplication table.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupSpec {
    pub fn trivial() -> Self {
        GroupSpec::cyclic(1)
    }

    /// `Z/n` with elements named `e, g, g2, ..., g{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order zero");
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        GroupSpec { names, table, identity: 0, inverse }
    }

    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidHopf("group must be nonempty".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidHopf("group table must be square and match the names".into()));
        }
        if let Some(bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::UnknownGroupElement(*bad));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidHopf(format!("duplicate group element name {a}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidHopf("group table has no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidHopf(format!("{} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidHopf("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(GroupSpec { names, table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_inverses() {
        let g = GroupSpec::cyclic(5);
        for a in 0..5 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn s3_table_accepted_and_bad_rejected() {
        // S3 via permutations of {0,1,2}.
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| perms.iter().position(|r| *r == compose(p, q)).unwrap()).collect())
            .collect();
        let names = (0..6).map(|i| format!("s{i}")).collect();
        let g = GroupSpec::from_table(names, table).unwrap();
        assert_eq!(g.order(), 6);
        let bad = GroupSpec::from_table(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]);
        assert!(bad.is_err());
    }
}
