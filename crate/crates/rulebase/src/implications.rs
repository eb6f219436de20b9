//! Full-confidence implications: logical closure, the iteration-free basis,
//! and the Guigues-Duquenne basis.

use crate::closure::ClosureLattice;
use crate::dataset::Dataset;
use crate::itemset::{ItemSet, Rule};

/// A set of implications, each read as `X => Y` with confidence 1.
/// Rules are stored with disjoint sides in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ImplicationSet {
    rules: Vec<Rule>,
}

impl ImplicationSet {
    pub fn new(rules: Vec<Rule>) -> ImplicationSet {
        let mut rules: Vec<Rule> = rules.into_iter().map(|r| r.canonical()).collect();
        rules.sort();
        rules.dedup();
        ImplicationSet { rules }
    }

    pub fn empty() -> ImplicationSet {
        ImplicationSet { rules: Vec::new() }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Checks that every stored implication holds with confidence 1 in `d`.
    pub fn holds_in(&self, d: &Dataset) -> bool {
        self.rules.iter().all(|r| d.confidence(r).is_one())
    }

    /// Serialization format: one `X => Y` line per rule, sorted.
    pub fn export_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&format!(
                "{} => {}\n",
                r.antecedent.display_with(names),
                r.consequent.display_with(names)
            ));
        }
        out
    }
}

/// Least fixpoint of applying every implication of `b` starting from `x`:
/// the set of items derivable from `x` by reflexivity, augmentation, and
/// transitivity. Iterates passes until stable; implication sets stay small
/// enough that indexed propagation would not pay for itself.
pub fn logical_closure(b: &ImplicationSet, x: &ItemSet) -> ItemSet {
    let mut acc = x.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for r in &b.rules {
            if r.antecedent.is_subset(&acc) && !r.consequent.is_subset(&acc) {
                acc = acc.union(&r.consequent);
                changed = true;
            }
        }
    }
    acc
}

/// True iff `r` follows from `b` by the Armstrong schemes.
pub fn implies(b: &ImplicationSet, r: &Rule) -> bool {
    r.consequent.is_subset(&logical_closure(b, &r.antecedent))
}

/// The iteration-free basis: one implication `G => close(G) - G` per
/// non-trivial minimal generator of each closed set in the lattice. These are
/// exactly the representative rules at confidence 1.
pub fn iteration_free_basis(lattice: &ClosureLattice, _d: &Dataset) -> ImplicationSet {
    let mut rules = Vec::new();
    for node in lattice.nodes() {
        for g in &node.min_generators {
            if g != &node.itemset {
                rules.push(Rule::new(g.clone(), node.itemset.difference(g)));
            }
        }
    }
    ImplicationSet::new(rules)
}

/// The Guigues-Duquenne basis of the implication theory generated by the
/// lattice: the unique minimum-size implication cover, with pseudo-closed
/// left-hand sides.
///
/// Construction: start from the iteration-free basis, right-saturate every
/// consequent to the full logical closure, then repeatedly left-saturate each
/// antecedent under all *other* rules, dropping rules that become derivable.
/// The fixpoint is the canonical basis.
pub fn gd_basis(lattice: &ClosureLattice, d: &Dataset) -> ImplicationSet {
    let start = iteration_free_basis(lattice, d);
    canonical_basis_of(&start)
}

/// Minimum-size cover of the theory of an arbitrary implication set.
pub fn canonical_basis_of(b: &ImplicationSet) -> ImplicationSet {
    // right-saturation: X -> closure(X)
    let mut rules: Vec<(ItemSet, ItemSet)> = b
        .rules
        .iter()
        .map(|r| (r.antecedent.clone(), logical_closure(b, &r.antecedent)))
        .collect();
    rules.sort();
    rules.dedup_by(|a, b| a.0 == b.0);

    loop {
        let mut changed = false;
        let mut i = 0;
        while i < rules.len() {
            let lhs = rules[i].0.clone();
            let saturated = closure_excluding(&rules, i, &lhs);
            if rules[i].1.is_subset(&saturated) {
                // derivable from the other rules
                rules.remove(i);
                changed = true;
                continue;
            }
            if saturated != lhs {
                // left-saturate; the right side is already the full closure.
                // Rules whose lhs collide afterwards are caught by the
                // redundancy branch on a later sweep.
                rules[i].0 = saturated;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    rules.sort();

    ImplicationSet::new(
        rules
            .into_iter()
            .map(|(x, y)| Rule::new(x.clone(), y.difference(&x)))
            .collect(),
    )
}

/// Fixpoint of all rules except the one at `skip`.
fn closure_excluding(rules: &[(ItemSet, ItemSet)], skip: usize, x: &ItemSet) -> ItemSet {
    let mut acc = x.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for (k, (lhs, rhs)) in rules.iter().enumerate() {
            if k == skip {
                continue;
            }
            if lhs.is_subset(&acc) && !rhs.is_subset(&acc) {
                acc = acc.union(rhs);
                changed = true;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::enumerate_closures;
    use crate::dataset::parse_transactions_str;

    fn set(items: &[u32]) -> ItemSet {
        ItemSet::from_items(items.iter().copied())
    }

    #[test]
    fn empty_set_closure_is_identity() {
        let b = ImplicationSet::empty();
        assert_eq!(logical_closure(&b, &set(&[2, 5])), set(&[2, 5]));
    }

    #[test]
    fn transitive_chain() {
        let b = ImplicationSet::new(vec![
            Rule::new(set(&[0]), set(&[1])),
            Rule::new(set(&[1]), set(&[2])),
        ]);
        assert_eq!(logical_closure(&b, &set(&[0])), set(&[0, 1, 2]));
    }

    #[test]
    fn implies_covers_reflexivity_and_augmentation() {
        let b = ImplicationSet::new(vec![Rule::new(set(&[0]), set(&[1]))]);
        // X -> X always
        assert!(implies(&b, &Rule::new(set(&[3, 4]), set(&[3, 4]))));
        // A => B gives AC -> B
        assert!(implies(&b, &Rule::new(set(&[0, 2]), set(&[1]))));
        assert!(!implies(&b, &Rule::new(set(&[2]), set(&[1]))));
    }

    #[test]
    fn all_sets_closed_means_empty_basis() {
        // every subset occurs alone, so every set is closed
        let d = parse_transactions_str("a\nb\na b\n").unwrap();
        let lat = enumerate_closures(&d, 1);
        assert!(iteration_free_basis(&lat, &d).is_empty());
        assert!(gd_basis(&lat, &d).is_empty());
    }

    #[test]
    fn export_format_one_implication_per_line() {
        let b = ImplicationSet::new(vec![
            Rule::new(set(&[0, 2]), set(&[1])),
            Rule::new(set(&[1, 2]), set(&[0])),
        ]);
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(b.export_text(&names), "a c => b\nb c => a\n");
    }

    #[test]
    fn canonical_basis_on_known_instance() {
        // theory: a => b, b => c over items {a,b,c}
        // pseudo-closed sets: {a}, {b}; GD basis has exactly two rules.
        let b = ImplicationSet::new(vec![
            Rule::new(set(&[0]), set(&[1])),
            Rule::new(set(&[0, 1]), set(&[2])),
            Rule::new(set(&[1]), set(&[2])),
        ]);
        let gd = canonical_basis_of(&b);
        assert_eq!(gd.len(), 2);
        assert_eq!(logical_closure(&gd, &set(&[0])), set(&[0, 1, 2]));
        assert_eq!(logical_closure(&gd, &set(&[1])), set(&[1, 2]));
    }

    #[test]
    fn canonical_basis_entails_original_and_back() {
        let b = ImplicationSet::new(vec![
            Rule::new(set(&[0]), set(&[1, 2])),
            Rule::new(set(&[2, 3]), set(&[0])),
            Rule::new(set(&[1]), set(&[3])),
        ]);
        let gd = canonical_basis_of(&b);
        for r in b.rules() {
            assert!(implies(&gd, r));
        }
        for r in gd.rules() {
            assert!(implies(&b, r));
        }
        assert!(gd.len() <= b.len());
    }
}
