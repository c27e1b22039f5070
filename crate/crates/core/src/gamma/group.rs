use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("group must be nonempty".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate group element {l}")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("multiplication table must be {n}×{n}")));
        }
        if table.iter().flatten().any(|&k| k >= n) {
            return Err(Error::Invalid("multiplication table is not closed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity).ok_or_else(|| {
                    Error::Invalid(format!("element {} has no inverse", labels[a]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { labels, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::new(vec!["e".into()], vec![vec![0]]).expect("valid")
    }

    /// The cyclic group of order `n` with elements `e, g, g2, ...`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table)
    }

    /// The symmetric group on three letters with transpositions
    /// `s = (0 1)` and `t = (1 2)`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels = ["e", "s", "t", "st", "ts", "sts"].map(String::from).to_vec();
        // (p·q)(x) = p(q(x))
        let index = |p: [usize; 3]| perms.iter().position(|&r| r == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        Self::new(labels, table).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Whether two groups have the same multiplication table.
    pub fn same_table(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        let s = g.index_of("s").unwrap();
        let t = g.index_of("t").unwrap();
        assert_ne!(g.mul(s, t), g.mul(t, s));
        assert_eq!(g.label(g.mul(s, t)), "st");
        assert_eq!(g.inv(g.mul(s, t)), g.mul(t, s));
    }

    #[test]
    fn rejects_non_associative_table() {
        let labels = vec!["e".into(), "a".into(), "b".into()];
        // a Latin square with identity that is not a group
        let table = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::new(labels, table).is_err());
    }

    #[test]
    fn cyclic_inverses() {
        let g = FiniteGroup::cyclic(4).unwrap();
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }
}
