//! Finite groups given by Cayley tables.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// `table[g][h]` is the index of `g h`.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable(format!("table must be {n}x{n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::MalformedTable(format!("entry {bad} out of range")));
        }
        for g in 0..n {
            for h in 0..n {
                for t in 0..n {
                    if table[table[g][h]][t] != table[g][table[h][t]] {
                        return Err(Error::NotAssociative(g, h, t));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or(Error::NoInverse(g))?;
            inverse.push(inv);
        }
        for (g, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::MalformedTable(format!("row {g} repeats an entry")));
                }
            }
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// `Z_n` with elements `1, g, g2, ..., g{n-1}`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::new(names, table).expect("cyclic table is a group")
    }

    /// The Klein four-group with elements `1, a, b, c`.
    pub fn klein4() -> FiniteGroup {
        let names = ["1", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        FiniteGroup::new(names, table).expect("Klein table is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(z2.inv(1), 1);
        let v4 = FiniteGroup::klein4();
        assert!(v4.elements().all(|g| v4.inv(g) == g));
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.inv(1), 2);
        assert_eq!(z3.name(2), "g2");
    }

    #[test]
    fn non_associative_latin_square() {
        // x * y = -x - y mod 3
        let t: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (6 - x - y) % 3).collect()).collect();
        let mut first = None;
        'outer: for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        first = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        let (a, b, c) = first.unwrap();
        let names = vec!["x0".into(), "x1".into(), "x2".into()];
        assert_eq!(FiniteGroup::new(names, t), Err(Error::NotAssociative(a, b, c)));
    }

    #[test]
    fn missing_identity_and_inverse() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let zero = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(FiniteGroup::new(names.clone(), zero), Err(Error::NoIdentity));
        let monoid = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(FiniteGroup::new(names, monoid), Err(Error::NoInverse(1)));
    }
}
