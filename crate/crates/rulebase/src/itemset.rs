//! Itemsets and rules, the currency every other module trades in.

use std::fmt;

/// A set of item ids, stored as a strictly increasing sequence.
///
/// The derived `Ord` is lexicographic on the id sequence, which gives the
/// deterministic ordering used for all sorted output.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ItemSet(Vec<u32>);

impl ItemSet {
    pub fn empty() -> ItemSet {
        ItemSet(Vec::new())
    }

    /// Builds from arbitrary ids; sorts and deduplicates.
    pub fn from_items(items: impl IntoIterator<Item = u32>) -> ItemSet {
        let mut v: Vec<u32> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ItemSet(v)
    }

    /// Builds from a sequence already strictly increasing.
    pub fn from_sorted(items: Vec<u32>) -> ItemSet {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        ItemSet(items)
    }

    pub fn singleton(item: u32) -> ItemSet {
        ItemSet(vec![item])
    }

    /// The full universe `{0, ..., n-1}`.
    pub fn universe(n: u32) -> ItemSet {
        ItemSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, item: u32) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn is_subset(&self, other: &ItemSet) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for &x in &self.0 {
            for &y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &ItemSet) -> bool {
        self.0.len() < other.0.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &ItemSet) -> ItemSet {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        ItemSet(out)
    }

    pub fn intersection(&self, other: &ItemSet) -> ItemSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        ItemSet(out)
    }

    pub fn difference(&self, other: &ItemSet) -> ItemSet {
        let mut out = Vec::new();
        let mut j = 0;
        for &x in &self.0 {
            while j < other.0.len() && other.0[j] < x {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != x {
                out.push(x);
            }
        }
        ItemSet(out)
    }

    pub fn with_item(&self, item: u32) -> ItemSet {
        if self.contains(item) {
            return self.clone();
        }
        let mut v = self.0.clone();
        let pos = v.partition_point(|&x| x < item);
        v.insert(pos, item);
        ItemSet(v)
    }

    pub fn without_item(&self, item: u32) -> ItemSet {
        ItemSet(self.0.iter().copied().filter(|&x| x != item).collect())
    }

    /// Renders item ids through a name table, space separated.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedItems { set: self, names }
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<u32> for ItemSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> ItemSet {
        ItemSet::from_items(iter)
    }
}

struct NamedItems<'a> {
    set: &'a ItemSet,
    names: &'a [String],
}

impl fmt::Display for NamedItems<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, id) in self.set.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match self.names.get(*id as usize) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "#{id}")?,
            }
        }
        Ok(())
    }
}

/// An association rule `antecedent -> consequent`.
///
/// Sides may overlap internally; user-facing output goes through
/// [`Rule::canonical`], which strips the antecedent out of the consequent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rule {
    pub antecedent: ItemSet,
    pub consequent: ItemSet,
}

impl Rule {
    pub fn new(antecedent: ItemSet, consequent: ItemSet) -> Rule {
        Rule { antecedent, consequent }
    }

    /// Antecedent and consequent union, the set whose support is the rule support.
    pub fn full_itemset(&self) -> ItemSet {
        self.antecedent.union(&self.consequent)
    }

    /// Display form with disjoint sides: `X -> Y - X`.
    pub fn canonical(&self) -> Rule {
        Rule {
            antecedent: self.antecedent.clone(),
            consequent: self.consequent.difference(&self.antecedent),
        }
    }

    /// Trivial rules hold with confidence 1 in every dataset.
    pub fn is_trivial(&self) -> bool {
        self.consequent.is_subset(&self.antecedent)
    }
}

/// Same antecedent and same antecedent-consequent union: such rules have
/// identical support and confidence in every dataset.
pub fn equivalent_by_reflexivity(r0: &Rule, r1: &Rule) -> bool {
    r0.antecedent == r1.antecedent && r0.full_itemset() == r1.full_itemset()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[u32]) -> ItemSet {
        ItemSet::from_items(items.iter().copied())
    }

    #[test]
    fn algebra_basics() {
        let a = set(&[1, 3, 5]);
        let b = set(&[3, 4]);
        assert_eq!(a.union(&b), set(&[1, 3, 4, 5]));
        assert_eq!(a.intersection(&b), set(&[3]));
        assert_eq!(a.difference(&b), set(&[1, 5]));
        assert!(set(&[3]).is_subset(&a));
        assert!(!set(&[2]).is_subset(&a));
        assert!(set(&[]).is_subset(&a));
        assert!(set(&[1, 3]).is_proper_subset(&a));
        assert!(!a.is_proper_subset(&a));
    }

    #[test]
    fn from_items_sorts_and_dedupes() {
        assert_eq!(ItemSet::from_items([5, 1, 5, 3]), set(&[1, 3, 5]));
    }

    #[test]
    fn equivalence_by_reflexivity() {
        // A -> BC vs A -> ABC: same antecedent, same union.
        let r0 = Rule::new(set(&[0]), set(&[1, 2]));
        let r1 = Rule::new(set(&[0]), set(&[0, 1, 2]));
        assert!(equivalent_by_reflexivity(&r0, &r1));
        // A -> BC vs AB -> C: antecedents differ.
        let r2 = Rule::new(set(&[0, 1]), set(&[2]));
        assert!(!equivalent_by_reflexivity(&r0, &r2));
    }

    #[test]
    fn distinct_disjoint_rules_are_never_equivalent() {
        // Two rules with disjoint sides that are equivalent by reflexivity
        // must be the same rule; check the contrapositive on a small sweep.
        let sets: Vec<ItemSet> = (0u32..8)
            .map(|m| ItemSet::from_items((0..3).filter(|i| m >> i & 1 == 1)))
            .collect();
        for x0 in &sets {
            for y0 in &sets {
                for x1 in &sets {
                    for y1 in &sets {
                        let r0 = Rule::new(x0.clone(), y0.difference(x0));
                        let r1 = Rule::new(x1.clone(), y1.difference(x1));
                        if r0 != r1 && equivalent_by_reflexivity(&r0, &r1) {
                            panic!("distinct disjoint-side rules reported equivalent");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_strips_antecedent() {
        let r = Rule::new(set(&[0, 1]), set(&[0, 2]));
        assert_eq!(r.canonical().consequent, set(&[2]));
        assert!(Rule::new(set(&[0, 1]), set(&[0])).is_trivial());
    }
}
