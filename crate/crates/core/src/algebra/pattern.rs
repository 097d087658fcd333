use std::collections::BTreeSet;

use super::Label;
use crate::error::{Error, Result};

/// A partial order on `{1, ..., n}` given as a set of pairs `(i, j)` meaning `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetPattern {
    n: usize,
    relation: BTreeSet<Label>,
}

impl PosetPattern {
    /// Validates and closes reflexively; the relation must already be transitive and antisymmetric.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = Label>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPattern("size must be positive".into()));
        }
        let mut relation: BTreeSet<Label> = (1..=n).map(|i| (i, i)).collect();
        for (i, j) in pairs {
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(Error::InvalidPattern(format!("pair ({i}, {j}) outside 1..={n}")));
            }
            relation.insert((i, j));
        }
        for &(i, j) in &relation {
            if i != j && relation.contains(&(j, i)) {
                return Err(Error::InvalidPattern(format!("pairs ({i}, {j}) and ({j}, {i}) violate antisymmetry")));
            }
        }
        for &(i, j) in &relation {
            for &(_, k) in relation.range((j, 1)..=(j, n)) {
                if !relation.contains(&(i, k)) {
                    return Err(Error::InvalidPattern(format!(
                        "not transitive: ({i}, {j}) and ({j}, {k}) present but ({i}, {k}) missing"
                    )));
                }
            }
        }
        Ok(Self { n, relation })
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(n, []).expect("discrete order")
    }

    pub fn total_order(n: usize) -> Self {
        let pairs = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j)));
        Self::new(n, pairs).expect("total order")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> impl Iterator<Item = Label> + '_ {
        self.relation.iter().copied()
    }

    pub fn contains(&self, pair: Label) -> bool {
        self.relation.contains(&pair)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexive_pairs_are_implied() {
        let p = PosetPattern::new(3, [(1, 2), (1, 3)]).unwrap();
        assert_eq!(p.pairs().collect::<Vec<_>>(), vec![(1, 1), (1, 2), (1, 3), (2, 2), (3, 3)]);
    }

    #[test]
    fn rejects_bad_relations() {
        let e = PosetPattern::new(3, [(1, 2), (2, 3)]).unwrap_err();
        assert!(e.to_string().contains("(1, 3) missing"), "{e}");
        assert!(PosetPattern::new(2, [(1, 2), (2, 1)]).is_err());
        assert!(PosetPattern::new(2, [(1, 3)]).is_err());
        assert!(PosetPattern::new(0, []).is_err());
    }

    #[test]
    fn total_order_size() {
        assert_eq!(PosetPattern::total_order(4).pairs().count(), 10);
    }
}
