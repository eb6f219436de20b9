//! Shared fixtures and brute-force oracles for the integration suites.
//!
//! Every oracle here works from first definitions over explicit subset
//! enumeration and never calls the code path it is used to check.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rulebase::dataset::parse_transactions_str;
use rulebase::fraction::Frac;
use rulebase::itemset::{ItemSet, Rule};
use rulebase::Dataset;

/// Twelve transactions over six items realizing the running example:
/// seven distinct itemsets, six implications, ten representative rules at
/// confidence 3/4, and the known B* bases at 3/4 and 3/5.
pub const EXAMPLE_FIMI: &str = "\
a b c
a b c
a b c
a b d
a f
b f
c d
c d
c d f
c d f
c d f
e
";

pub fn example_dataset() -> Dataset {
    parse_transactions_str(EXAMPLE_FIMI).expect("example dataset parses")
}

/// Parses a rule like "a c -> b" against the example dataset's names.
pub fn example_rule(d: &Dataset, text: &str) -> Rule {
    d.parse_rule(text).expect("well-formed rule")
}

pub fn rules_of(d: &Dataset, texts: &[&str]) -> Vec<Rule> {
    let mut v: Vec<Rule> = texts.iter().map(|t| example_rule(d, t)).collect();
    v.sort();
    v
}

pub fn frac(n: u64, den: u64) -> Frac {
    Frac::new(n, den).unwrap()
}

// ---------------------------------------------------------------------------
// mask-level brute-force machinery (universe of at most 16 items)

pub fn mask_of(s: &ItemSet) -> u32 {
    s.iter().fold(0, |m, i| m | 1 << i)
}

pub fn set_of(mask: u32) -> ItemSet {
    ItemSet::from_items((0..32).filter(|i| mask >> i & 1 == 1))
}

/// Support of every subset mask by direct counting.
pub fn brute_supports(d: &Dataset) -> Vec<u64> {
    let u = d.universe_len() as usize;
    let tx: Vec<u32> = d.transactions().iter().map(mask_of).collect();
    (0..1u32 << u)
        .map(|m| tx.iter().filter(|&&t| m & !t == 0).count() as u64)
        .collect()
}

/// Closure of every subset mask: intersection of covering transactions,
/// the full universe when none covers.
pub fn brute_closures(d: &Dataset) -> Vec<u32> {
    let u = d.universe_len() as usize;
    let full = (1u32 << u) - 1;
    let tx: Vec<u32> = d.transactions().iter().map(mask_of).collect();
    (0..1u32 << u)
        .map(|m| tx.iter().filter(|&&t| m & !t == 0).fold(full, |acc, &t| acc & t))
        .collect()
}

/// All distinct closed sets with support at least `floor`.
pub fn brute_closed_family(d: &Dataset, floor: u64) -> Vec<u32> {
    let supp = brute_supports(d);
    let mut family: Vec<u32> = brute_closures(d)
        .into_iter()
        .filter(|&c| supp[c as usize] >= floor)
        .collect();
    family.sort_unstable();
    family.dedup();
    family
}

/// Representative rules straight from the valid-antecedent definition,
/// enumerating every itemset pair. `floor` restricts consequent unions (and
/// the maximality quantifier) to supported sets, mirroring a pruned lattice.
pub fn brute_representative_rules(d: &Dataset, gamma: Frac, floor: u64) -> Vec<Rule> {
    let u = d.universe_len() as usize;
    let supp = brute_supports(d);
    let nmasks = 1u32 << u;
    let mut rules = Vec::new();
    for y in 0..nmasks {
        if supp[y as usize] < floor {
            continue;
        }
        for x in subsets_of(y) {
            if x == y {
                continue;
            }
            // gamma-antecedent
            if gamma.gt_scaled(supp[y as usize], supp[x as usize]) {
                continue;
            }
            // no proper subset is one
            let minimal = subsets_of(x)
                .filter(|&xp| xp != x)
                .all(|xp| gamma.gt_scaled(supp[y as usize], supp[xp as usize]));
            if !minimal {
                continue;
            }
            // no supported proper superset keeps x as antecedent
            let maximal = (0..nmasks)
                .filter(|&yp| yp != y && yp & y == y && supp[yp as usize] >= floor)
                .all(|yp| gamma.gt_scaled(supp[yp as usize], supp[x as usize]));
            if !maximal {
                continue;
            }
            let xs = set_of(x);
            rules.push(Rule::new(xs.clone(), set_of(y).difference(&xs)));
        }
    }
    rules.sort();
    rules
}

/// B* straight from the basic-antecedent definition over the closed family.
pub fn brute_bstar(d: &Dataset, gamma: Frac, floor: u64) -> Vec<Rule> {
    let supp = brute_supports(d);
    let family = brute_closed_family(d, floor);
    let mut rules = Vec::new();
    for &y in &family {
        for &x in &family {
            if x == y || x & !y != 0 {
                continue;
            }
            if gamma.gt_scaled(supp[y as usize], supp[x as usize]) {
                continue;
            }
            let minimal = family
                .iter()
                .filter(|&&xp| xp != x && xp & !x == 0)
                .all(|&xp| gamma.gt_scaled(supp[y as usize], supp[xp as usize]));
            if !minimal {
                continue;
            }
            let basic = family
                .iter()
                .filter(|&&yp| yp != y && yp & y == y)
                .all(|&yp| gamma.gt_scaled(supp[yp as usize], supp[x as usize]));
            if !basic {
                continue;
            }
            let xs = set_of(x);
            rules.push(Rule::new(xs.clone(), set_of(y).difference(&xs)));
        }
    }
    rules.sort();
    rules
}

/// Pseudo-closed sets of a closure operator given as a mask table, by
/// cardinality induction from the definition.
pub fn brute_pseudo_closed(cl: &[u32], u: usize) -> Vec<u32> {
    let mut order: Vec<u32> = (0..1u32 << u).collect();
    order.sort_by_key(|m| m.count_ones());
    let mut pseudo: Vec<u32> = Vec::new();
    for &p in &order {
        if cl[p as usize] == p {
            continue;
        }
        let ok = pseudo
            .iter()
            .filter(|&&q| q != p && q & !p == 0)
            .all(|&q| cl[q as usize] & !p == 0);
        if ok {
            pseudo.push(p);
        }
    }
    pseudo.sort_unstable();
    pseudo
}

/// Logical-closure table of an implication list over masks.
pub fn closure_table_of_rules(rules: &[(u32, u32)], u: usize) -> Vec<u32> {
    (0..1u32 << u)
        .map(|m| {
            let mut acc = m;
            let mut changed = true;
            while changed {
                changed = false;
                for &(lhs, rhs) in rules {
                    if acc & lhs == lhs && acc & rhs != rhs {
                        acc |= rhs;
                        changed = true;
                    }
                }
            }
            acc
        })
        .collect()
}

pub fn subsets_of(mask: u32) -> impl Iterator<Item = u32> {
    let mut cur = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == 0 {
            done = true;
        } else {
            cur = (cur - 1) & mask;
        }
        Some(out)
    })
}

// ---------------------------------------------------------------------------
// random data

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random dataset over at most `max_items` items and `max_tx` transactions.
pub fn random_dataset(rng: &mut ChaCha8Rng, max_items: u32, max_tx: usize) -> Dataset {
    let u = rng.gen_range(1..=max_items);
    let n = rng.gen_range(1..=max_tx);
    let density = rng.gen_range(0.2..0.9);
    let txs: Vec<ItemSet> = (0..n)
        .map(|_| ItemSet::from_items((0..u).filter(|_| rng.gen_bool(density))))
        .collect();
    Dataset::from_itemsets(u, txs)
}

pub fn random_itemset(rng: &mut ChaCha8Rng, universe: u32) -> ItemSet {
    ItemSet::from_items((0..universe).filter(|_| rng.gen_bool(0.4)))
}

pub fn random_rule(rng: &mut ChaCha8Rng, universe: u32) -> Rule {
    Rule::new(random_itemset(rng, universe), random_itemset(rng, universe))
}
