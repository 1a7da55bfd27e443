//! Finite groups given by a Cayley table, and their right actions on quivers.

mod action;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use action::{
    is_free, orbits, validate_action, ActionError, ActionReport, ActionViolation, Orbits,
    PermutationMaps, QuiverAction,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be at least 1")]
    Empty,
    #[error("symmetric group degree must be in 1..=5, got {0}")]
    DegreeOutOfRange(usize),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("table must be {n}x{n}")]
    TableShape { n: usize },
    #[error("table is not a Latin square at row `{0}`")]
    NotLatin(String),
    #[error("`{0}` is not a two-sided identity")]
    Identity(String),
    #[error("associativity fails for ({0}, {1}, {2})")]
    Associativity(String, String, String),
}

/// Finite group: element names, identity, and a full multiplication table
/// `table[g][h] = g·h` over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    identity: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    index: HashMap<String, usize>,
}

impl FiniteGroup {
    /// Validates the table eagerly: Latin square, identity, associativity.
    /// Inverses exist in any finite associative Latin square with identity.
    pub fn from_table(
        elements: Vec<String>,
        identity: &str,
        table: Vec<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(GroupError::DuplicateElement(e.clone()));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::TableShape { n });
        }
        let lookup = |s: &String| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| GroupError::UnknownElement(s.clone()))
        };
        let identity = lookup(&identity.to_string())?;
        let table = table
            .iter()
            .map(|row| row.iter().map(lookup).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::from_index_table(elements, identity, table)
    }

    fn from_index_table(
        elements: Vec<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        for g in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for h in 0..n {
                row_seen[table[g][h]] = true;
                col_seen[table[h][g]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(GroupError::NotLatin(elements[g].clone()));
            }
        }
        if (0..n).any(|g| table[identity][g] != g || table[g][identity] != g) {
            return Err(GroupError::Identity(elements[identity].clone()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::Associativity(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity)
                    .expect("Latin square has an inverse in every row")
            })
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(FiniteGroup {
            elements,
            identity,
            table,
            inverse,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Table rows as element names.
    pub fn name_table(&self) -> Vec<Vec<String>> {
        self.table
            .iter()
            .map(|row| row.iter().map(|&g| self.elements[g].clone()).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.table[g][h] == self.table[h][g]))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order())
    }
}

/// Cyclic group `Z/n` with elements `"0".."n-1"` under addition mod `n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Empty);
    }
    let elements = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n)
        .map(|g| (0..n).map(|h| (g + h) % n).collect())
        .collect();
    FiniteGroup::from_index_table(elements, 0, table)
}

/// Symmetric group `S_n` for `1 <= n <= 5`.
///
/// Elements are permutations of `1..=n` in one-line notation (`"213"` sends
/// 1 to 2, 2 to 1, 3 to 3), listed lexicographically so the identity comes
/// first. The product `g·h` applies `g` first, then `h`, matching the
/// right-action convention used for quiver actions.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if !(1..=5).contains(&n) {
        return Err(GroupError::DegreeOutOfRange(n));
    }
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let table = perms
        .iter()
        .map(|g| {
            perms
                .iter()
                .map(|h| {
                    let gh: Vec<usize> = (0..n).map(|i| h[g[i]]).collect();
                    index[&gh]
                })
                .collect()
        })
        .collect();
    let elements = perms
        .iter()
        .map(|p| p.iter().map(|&i| char::from(b'1' + i as u8)).collect())
        .collect();
    FiniteGroup::from_index_table(elements, 0, table)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        assert_eq!(make_cyclic(0), Err(GroupError::Empty));
        let trivial = make_cyclic(1).unwrap();
        assert_eq!(trivial.order(), 1);
        let z2 = make_cyclic(2).unwrap();
        assert_eq!(z2.name_table(), vec![vec!["0", "1"], vec!["1", "0"]]);
        let z4 = make_cyclic(4).unwrap();
        let g = z4.mul(z4.index_of("3").unwrap(), z4.index_of("2").unwrap());
        assert_eq!(z4.name(g), "1");
        assert_eq!(z4.name(z4.inv(z4.index_of("1").unwrap())), "3");
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(make_symmetric(0), Err(GroupError::DegreeOutOfRange(0)));
        assert_eq!(make_symmetric(6), Err(GroupError::DegreeOutOfRange(6)));
        assert_eq!(make_symmetric(1).unwrap().order(), 1);
        assert_eq!(make_symmetric(2).unwrap().order(), 2);
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.name(s3.identity()), "123");
        // exhaustive scan for a non-commuting pair
        let n = s3.order();
        let noncommuting = (0..n).any(|g| (0..n).any(|h| s3.mul(g, h) != s3.mul(h, g)));
        assert!(noncommuting);
        assert!(!s3.is_abelian());
        assert_eq!(make_symmetric(5).unwrap().order(), 120);
    }

    #[test]
    fn symmetric_product_applies_left_factor_first() {
        let s3 = make_symmetric(3).unwrap();
        let g = s3.index_of("213").unwrap();
        let h = s3.index_of("132").unwrap();
        // 1 -g-> 2 -h-> 3, 2 -g-> 1 -h-> 1, 3 -g-> 3 -h-> 2
        assert_eq!(s3.name(s3.mul(g, h)), "312");
    }

    #[test]
    fn table_groups_are_validated() {
        let els = vec!["e".to_string(), "a".to_string()];
        let s = |rows: &[[&str; 2]]| -> Vec<Vec<String>> {
            rows.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        let ok = FiniteGroup::from_table(els.clone(), "e", s(&[["e", "a"], ["a", "e"]])).unwrap();
        assert_eq!(ok.order(), 2);
        assert!(matches!(
            FiniteGroup::from_table(els.clone(), "e", s(&[["e", "a"], ["e", "a"]])),
            Err(GroupError::NotLatin(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(els.clone(), "a", s(&[["e", "a"], ["a", "e"]])),
            Err(GroupError::Identity(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(els.clone(), "x", s(&[["e", "a"], ["a", "e"]])),
            Err(GroupError::UnknownElement(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(els, "e", vec![vec!["e".into()]]),
            Err(GroupError::TableShape { .. })
        ));
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // A loop of order 5 that is not a group.
        let rows = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let els: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let table = rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        assert!(matches!(
            FiniteGroup::from_table(els, "0", table),
            Err(GroupError::Associativity(..))
        ));
    }
}
