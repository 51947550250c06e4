use crate::error::Error;

/// A finite group with elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// `Z/m` written additively; the identity is `0`.
    Cyclic(usize),
    /// An explicit multiplication table: `mul[a][b] = a·b`.
    Table { mul: Vec<Vec<usize>>, identity: usize },
}

impl Group {
    pub fn cyclic(m: usize) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::InvalidGroup("Z/0 is not finite".into()));
        }
        Ok(Group::Cyclic(m))
    }

    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| mul[a][b] == identity) {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(Group::Table { mul, identity })
    }

    pub fn order(&self) -> usize {
        match self {
            Group::Cyclic(m) => *m,
            Group::Table { mul, .. } => mul.len(),
        }
    }

    pub fn identity(&self) -> usize {
        match self {
            Group::Cyclic(_) => 0,
            Group::Table { identity, .. } => *identity,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Group::Cyclic(m) => (a + b) % m,
            Group::Table { mul, .. } => mul[a][b],
        }
    }

    /// Generating set used for the slot-label endomorphism generators.
    pub fn generators(&self) -> Vec<usize> {
        match self {
            Group::Cyclic(1) => vec![],
            Group::Cyclic(_) => vec![1],
            Group::Table { identity, mul } => (0..mul.len()).filter(|a| a != identity).collect(),
        }
    }

    /// Generators `h1, ..., hk` with `a = h1·...·hk`.
    pub fn word(&self, a: usize) -> Vec<usize> {
        if a == self.identity() {
            return vec![];
        }
        match self {
            Group::Cyclic(_) => vec![1; a],
            Group::Table { .. } => vec![a],
        }
    }

    /// `z/<m>` or `table:<n>`
    pub fn spec(&self) -> String {
        match self {
            Group::Cyclic(m) => format!("z/{m}"),
            Group::Table { mul, .. } => format!("table:{}", mul.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation() {
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = Group::from_table(z3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.identity(), 0);
        assert!(Group::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(Group::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn words_multiply_back() {
        // S_3 as a table: elements are permutations of {0,1,2} in lexicographic order
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mul: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        for g in [Group::from_table(mul).unwrap(), Group::cyclic(5).unwrap()] {
            for a in 0..g.order() {
                let prod = g.word(a).into_iter().fold(g.identity(), |acc, h| g.mul(acc, h));
                assert_eq!(prod, a);
            }
        }
    }
}
