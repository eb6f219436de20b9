//! Minimum-size rule bases and the verifiers that certify them.
//!
//! * Representative rules: the unique smallest basis that is complete for
//!   plain redundancy.
//! * `B*`: the smallest basis of partial rules complete for closure-based
//!   redundancy, with min-max / min-min generator variants.
//! * Double-support mining: support-constrained bases computed from a
//!   lattice pruned at `gamma * tau`.
//! * Completeness and minimality verifiers driven by exhaustive rule
//!   enumeration.

use std::collections::HashMap;

use crate::closure::{enumerate_closures, ClosureLattice, SupportIndex};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fraction::Frac;
use crate::implications::{gd_basis, iteration_free_basis, logical_closure, ImplicationSet};
use crate::itemset::{ItemSet, Rule};
use crate::redundancy::{closure_redundant, plainly_redundant};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    RR,
    Bstar,
    BstarMinMax,
    BstarMinMin,
    GD,
    IterFree,
}

impl BasisKind {
    pub fn name(&self) -> &'static str {
        match self {
            BasisKind::RR => "rr",
            BasisKind::Bstar => "bstar",
            BasisKind::BstarMinMax => "bstar-minmax",
            BasisKind::BstarMinMin => "bstar-minmin",
            BasisKind::GD => "gd",
            BasisKind::IterFree => "iterfree",
        }
    }
}

/// A constructed rule basis. Rules are canonical (disjoint sides) and sorted.
#[derive(Clone, Debug)]
pub struct Basis {
    pub kind: BasisKind,
    pub gamma: Frac,
    pub support_floor: u64,
    pub rules: Vec<Rule>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Header line plus one annotated rule per line, sorted.
    pub fn export_text(&self, d: &Dataset) -> String {
        let names = d.names();
        let mut out = format!("# {} {} {}\n", self.kind.name(), self.gamma, self.support_floor);
        for r in &self.rules {
            let supp = d.support(&r.full_itemset()).unwrap_or(0);
            let conf = d.confidence(r);
            let lhs = r.antecedent.display_with(names).to_string();
            let sep = if lhs.is_empty() { "" } else { " " };
            out.push_str(&format!(
                "{lhs}{sep}-> {} ; supp={} conf={} ~{:.4}\n",
                r.consequent.display_with(names),
                supp,
                conf,
                conf.approx()
            ));
        }
        out
    }
}

/// `x` is a gamma-antecedent of `y`: `s(y) >= gamma * s(x)`, exactly.
pub fn is_gamma_antecedent(d: &Dataset, x: &ItemSet, y: &ItemSet, gamma: Frac) -> Result<bool> {
    if !x.is_subset(y) {
        return Err(Error::NotASubset);
    }
    Ok(gamma.le_scaled(d.support(y)?, d.support(x)?))
}

fn check_gamma(gamma: Frac, allow_one: bool) -> Result<()> {
    let bad = || Error::BadGamma {
        gamma: gamma.to_string(),
        expected: if allow_one { "0 < gamma <= 1" } else { "0 < gamma < 1" },
    };
    if gamma.is_zero() || gamma > Frac::ONE || (!allow_one && gamma.is_one()) {
        return Err(bad());
    }
    Ok(())
}

/// The representative rules of the lattice's dataset at threshold `gamma`:
/// one rule `X -> Y - X` per valid gamma-antecedent `X` of each closed `Y`.
/// Only minimal generators can be valid antecedents and only closed sets can
/// be consequent unions, so the search runs over those.
pub fn representative_rules(d: &Dataset, lattice: &ClosureLattice, gamma: Frac) -> Result<Basis> {
    check_gamma(gamma, true)?;
    let idx = SupportIndex::new(d);
    let mut rules = Vec::new();
    for y in lattice.nodes() {
        for xc in lattice.nodes() {
            if !xc.itemset.is_subset(&y.itemset) {
                continue;
            }
            for g in &xc.min_generators {
                if g == &y.itemset {
                    continue;
                }
                // gamma-antecedent
                if gamma.gt_scaled(y.support, xc.support) {
                    continue;
                }
                // no proper subset may be one; immediate subsets suffice
                let minimal = g
                    .iter()
                    .all(|i| gamma.gt_scaled(y.support, idx.support(&g.without_item(i))));
                if !minimal {
                    continue;
                }
                // no proper superset of Y may keep X as antecedent; covers suffice
                let maximal = y
                    .upper_covers
                    .iter()
                    .all(|&w| gamma.gt_scaled(lattice.node(w).support, xc.support));
                if !maximal {
                    continue;
                }
                rules.push(Rule::new(g.clone(), y.itemset.difference(g)));
            }
        }
    }
    rules.sort();
    Ok(Basis { kind: BasisKind::RR, gamma, support_floor: lattice.support_floor(), rules })
}

/// The `B*` basis: one rule per basic gamma-antecedent, where both sides are
/// closed. First scan collects minimal closed gamma-antecedents per closure,
/// second scan drops antecedents that still work for a larger closure.
pub fn bstar(d: &Dataset, lattice: &ClosureLattice, gamma: Frac) -> Result<Basis> {
    let _ = d;
    check_gamma(gamma, false)?;
    let mut rules = Vec::new();
    for y in lattice.nodes() {
        'cand: for x in lattice.nodes() {
            if !x.itemset.is_proper_subset(&y.itemset) {
                continue;
            }
            if gamma.gt_scaled(y.support, x.support) {
                continue;
            }
            // minimality among closed antecedents: lower covers suffice
            for &lc in &x.lower_covers {
                if gamma.le_scaled(y.support, lattice.node(lc).support) {
                    continue 'cand;
                }
            }
            // basic: no strictly larger closed set keeps X as antecedent
            for &w in &y.upper_covers {
                if gamma.le_scaled(lattice.node(w).support, x.support) {
                    continue 'cand;
                }
            }
            rules.push(Rule::new(x.itemset.clone(), y.itemset.difference(&x.itemset)));
        }
    }
    rules.sort();
    Ok(Basis { kind: BasisKind::Bstar, gamma, support_floor: lattice.support_floor(), rules })
}

fn least_generator(lattice: &ClosureLattice, set: &ItemSet) -> ItemSet {
    let node = lattice
        .find(set)
        .expect("basis rule side must be a lattice node");
    lattice.node(node).min_generators.first().cloned().unwrap_or_else(|| set.clone())
}

fn least_small_generator(lattice: &ClosureLattice, set: &ItemSet) -> ItemSet {
    let node = lattice
        .find(set)
        .expect("basis rule side must be a lattice node");
    let gens = &lattice.node(node).min_generators;
    let min_len = gens.iter().map(ItemSet::len).min().unwrap_or(0);
    gens.iter()
        .find(|g| g.len() == min_len)
        .cloned()
        .unwrap_or_else(|| set.clone())
}

/// Replaces each closed antecedent by its least minimal generator. Rules
/// stay aligned with the source basis, one variant per original.
pub fn minmax_variant(basis: &Basis, lattice: &ClosureLattice) -> Basis {
    assert_eq!(basis.kind, BasisKind::Bstar, "variants start from a B* basis");
    let rules: Vec<Rule> = basis
        .rules
        .iter()
        .map(|r| Rule::new(least_generator(lattice, &r.antecedent), r.consequent.clone()))
        .collect();
    Basis { kind: BasisKind::BstarMinMax, ..clone_meta(basis, rules) }
}

/// Replaces both sides by least minimum-cardinality generators: the rule
/// `X -> Y - X` becomes `X' -> Y' - X`. Rules stay aligned with the source.
pub fn minmin_variant(basis: &Basis, lattice: &ClosureLattice) -> Basis {
    assert_eq!(basis.kind, BasisKind::Bstar, "variants start from a B* basis");
    let rules: Vec<Rule> = basis
        .rules
        .iter()
        .map(|r| {
            let x = &r.antecedent;
            let y = r.full_itemset();
            let x_gen = least_small_generator(lattice, x);
            let y_gen = least_small_generator(lattice, &y);
            Rule::new(x_gen, y_gen.difference(x))
        })
        .collect();
    Basis { kind: BasisKind::BstarMinMin, ..clone_meta(basis, rules) }
}

fn clone_meta(basis: &Basis, rules: Vec<Rule>) -> Basis {
    Basis { kind: basis.kind, gamma: basis.gamma, support_floor: basis.support_floor, rules }
}

/// Implication bases wrapped as `Basis` values for uniform handling.
pub fn implication_basis(d: &Dataset, lattice: &ClosureLattice, kind: BasisKind) -> Basis {
    let set = match kind {
        BasisKind::GD => gd_basis(lattice, d),
        BasisKind::IterFree => iteration_free_basis(lattice, d),
        _ => panic!("implication_basis takes GD or IterFree"),
    };
    Basis {
        kind,
        gamma: Frac::ONE,
        support_floor: lattice.support_floor(),
        rules: set.rules().to_vec(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DoubleSupportMode {
    /// All rules of the full `B*` basis whose support reaches `tau`,
    /// computed from the lattice pruned at `ceil(gamma * tau)`.
    IntersectFullBasis,
    /// The minimum-size basis for the rules with confidence at least `gamma`
    /// and support at least `tau`, computed from the lattice pruned at `tau`.
    MinimumBasisAtTau,
}

/// Double-support mining: both constructions avoid enumerating the full
/// closure space when a support constraint is in play.
pub fn double_support_bstar(
    d: &Dataset,
    gamma: Frac,
    tau: u64,
    mode: DoubleSupportMode,
) -> Result<Basis> {
    check_gamma(gamma, false)?;
    match mode {
        DoubleSupportMode::IntersectFullBasis => {
            let floor = gamma.ceil_mul(tau);
            let lattice = enumerate_closures(d, floor);
            let mut basis = bstar(d, &lattice, gamma)?;
            basis.rules.retain(|r| {
                lattice
                    .find(&r.full_itemset())
                    .map(|n| lattice.node(n).support >= tau)
                    .unwrap_or(false)
            });
            basis.support_floor = tau;
            Ok(basis)
        }
        DoubleSupportMode::MinimumBasisAtTau => {
            let lattice = enumerate_closures(d, tau);
            bstar(d, &lattice, gamma)
        }
    }
}

/// Which redundancy notion a verifier checks against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyMode {
    Plain,
    Closure,
}

#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub candidates: u64,
    pub violators: Vec<Rule>,
    /// True when every rule of the requested confidence and support was
    /// enumerated; false for the large-universe screen over canonical forms.
    pub exhaustive: bool,
}

impl CompletenessReport {
    pub fn ok(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Checks that every rule of confidence at least `gamma` and support at
/// least `tau` is redundant with respect to some basis rule.
///
/// Universes of at most 16 items are swept exhaustively over all
/// antecedent/union pairs; larger universes screen the canonical candidates
/// (minimal-generator antecedents, closed consequents).
pub fn verify_completeness(
    basis: &Basis,
    d: &Dataset,
    gamma: Frac,
    tau: u64,
    mode: VerifyMode,
    bimp: &ImplicationSet,
) -> CompletenessReport {
    if d.universe_len() <= 16 {
        verify_completeness_masks(basis, d, gamma, tau, mode, bimp)
    } else {
        verify_completeness_screen(basis, d, gamma, tau, mode, bimp)
    }
}

fn mask_of(s: &ItemSet) -> u32 {
    s.iter().fold(0u32, |m, i| m | 1 << i)
}

fn itemset_of(mask: u32) -> ItemSet {
    ItemSet::from_items((0..32).filter(|i| mask >> i & 1 == 1))
}

/// Supports for every sub-universe mask via a superset-sum sweep.
fn support_table(d: &Dataset) -> Vec<u64> {
    let u = d.universe_len() as usize;
    let mut cnt = vec![0u64; 1 << u];
    for t in d.transactions() {
        cnt[mask_of(t) as usize] += 1;
    }
    for i in 0..u {
        let bit = 1usize << i;
        for m in 0..cnt.len() {
            if m & bit == 0 {
                cnt[m] += cnt[m | bit];
            }
        }
    }
    cnt
}

fn closure_table(b: &ImplicationSet, u: usize) -> Vec<u32> {
    let rules: Vec<(u32, u32)> = b
        .rules()
        .iter()
        .map(|r| (mask_of(&r.antecedent), mask_of(&r.consequent)))
        .collect();
    (0..(1u32 << u))
        .map(|m| {
            let mut acc = m;
            let mut changed = true;
            while changed {
                changed = false;
                for &(lhs, rhs) in &rules {
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

fn verify_completeness_masks(
    basis: &Basis,
    d: &Dataset,
    gamma: Frac,
    tau: u64,
    mode: VerifyMode,
    bimp: &ImplicationSet,
) -> CompletenessReport {
    let u = d.universe_len() as usize;
    let supp = support_table(d);
    let clb = match mode {
        VerifyMode::Plain => Vec::new(),
        VerifyMode::Closure => closure_table(bimp, u),
    };
    let brules: Vec<(u32, u32, u32)> = basis
        .rules
        .iter()
        .map(|r| {
            let xb = mask_of(&r.antecedent);
            let zb = xb | mask_of(&r.consequent);
            let clzb = match mode {
                VerifyMode::Plain => zb,
                VerifyMode::Closure => clb[zb as usize],
            };
            (xb, zb, clzb)
        })
        .collect();

    let mut candidates = 0u64;
    let mut violators = Vec::new();
    for z in 0..(1u32 << u) {
        if supp[z as usize] < tau {
            continue;
        }
        // every subset of z as antecedent, including the empty set
        let mut x = z;
        loop {
            // x == z is the trivial rule; below-threshold pairs are not candidates
            let skip = x == z || gamma.gt_scaled(supp[z as usize], supp[x as usize]);
            let covered = if skip {
                true
            } else {
                candidates += 1;
                match mode {
                    VerifyMode::Plain => {
                        brules.iter().any(|&(xb, zb, _)| xb & !x == 0 && z & !zb == 0)
                    }
                    VerifyMode::Closure => {
                        let clx = clb[x as usize];
                        z & !clx == 0
                            || brules
                                .iter()
                                .any(|&(xb, _, clzb)| xb & !clx == 0 && z & !clzb == 0)
                    }
                }
            };
            if !covered {
                let xs = itemset_of(x);
                violators.push(Rule::new(xs.clone(), itemset_of(z).difference(&xs)));
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & z;
        }
    }
    violators.sort();
    CompletenessReport { candidates, violators, exhaustive: true }
}

fn verify_completeness_screen(
    basis: &Basis,
    d: &Dataset,
    gamma: Frac,
    tau: u64,
    mode: VerifyMode,
    bimp: &ImplicationSet,
) -> CompletenessReport {
    let lattice = enumerate_closures(d, tau.max(1));
    let mut candidates = 0u64;
    let mut violators = Vec::new();
    for zn in lattice.nodes() {
        for xn in lattice.nodes() {
            if !xn.itemset.is_subset(&zn.itemset) {
                continue;
            }
            for g in &xn.min_generators {
                if g == &zn.itemset || gamma.gt_scaled(zn.support, xn.support) {
                    continue;
                }
                candidates += 1;
                let cand = Rule::new(g.clone(), zn.itemset.difference(g));
                let covered = match mode {
                    VerifyMode::Plain => basis.rules.iter().any(|b| plainly_redundant(b, &cand)),
                    VerifyMode::Closure => {
                        cand.consequent.is_subset(&logical_closure(bimp, &cand.antecedent))
                            || basis.rules.iter().any(|b| closure_redundant(bimp, b, &cand))
                    }
                };
                if !covered {
                    violators.push(cand);
                }
            }
        }
    }
    violators.sort();
    violators.dedup();
    CompletenessReport { candidates, violators, exhaustive: false }
}

#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub rule_count: usize,
    /// Rules whose removal leaves the basis complete (should be empty).
    pub removable: Vec<Rule>,
    /// Exact size of the smallest complete basis within the candidate rule
    /// pool, when the pool is small enough to decide.
    pub smallest_complete: Option<usize>,
}

impl MinimalityReport {
    pub fn ok(&self) -> bool {
        self.removable.is_empty()
            && self.smallest_complete.is_none_or(|m| m == self.rule_count)
    }
}

/// Certifies minimality of a basis: (a) no single rule can be dropped, and
/// (b) no smaller subset of the candidate rules is complete. Completeness is
/// judged for the rules at the basis's own support floor, so pruned bases are
/// measured against the rule set they were built for. The exhaustive part
/// runs a set-cover search over basis-rule coverage masks; bases of more than
/// 22 rules report irredundancy only.
pub fn verify_minimality(
    basis: &Basis,
    d: &Dataset,
    gamma: Frac,
    mode: VerifyMode,
    bimp: &ImplicationSet,
) -> MinimalityReport {
    let tau = basis.support_floor;
    let mut removable = Vec::new();
    for i in 0..basis.rules.len() {
        let mut rest = basis.clone();
        let removed = rest.rules.remove(i);
        let report = verify_completeness(&rest, d, gamma, tau, mode, bimp);
        if report.ok() {
            removable.push(removed);
        }
    }

    let smallest_complete = if basis.rules.len() <= 22 && d.universe_len() <= 16 {
        Some(smallest_cover(basis, d, gamma, tau, mode, bimp))
    } else {
        None
    };

    MinimalityReport { rule_count: basis.rules.len(), removable, smallest_complete }
}

/// Size of the smallest complete basis drawn from the candidate rules.
///
/// Redundancy is transitive, so a set of candidate rules is complete exactly
/// when every rule of the (complete) input basis is redundant to one of its
/// members. That is a minimum set cover over coverage bitmasks.
fn smallest_cover(
    basis: &Basis,
    d: &Dataset,
    gamma: Frac,
    tau: u64,
    mode: VerifyMode,
    bimp: &ImplicationSet,
) -> usize {
    let u = d.universe_len() as usize;
    let supp = support_table(d);
    let clb = match mode {
        VerifyMode::Plain => Vec::new(),
        VerifyMode::Closure => closure_table(bimp, u),
    };
    let basis_masks: Vec<(u32, u32)> = basis
        .rules
        .iter()
        .map(|r| (mask_of(&r.antecedent), mask_of(&r.full_itemset())))
        .collect();

    // candidate pool: every qualifying rule, encoded by its coverage of the
    // basis; only distinct coverage masks matter
    let mut cover_masks: Vec<u64> = Vec::new();
    for z in 0..(1u32 << u) {
        if supp[z as usize] < tau {
            continue;
        }
        let mut x = z;
        loop {
            if x != z && gamma.le_scaled(supp[z as usize], supp[x as usize]) {
                let partial = supp[z as usize] < supp[x as usize];
                let admissible = match mode {
                    VerifyMode::Plain => true,
                    // closure-based bases consist of partial rules
                    VerifyMode::Closure => partial,
                };
                if admissible {
                    let mut cm = 0u64;
                    for (j, &(xb, zb)) in basis_masks.iter().enumerate() {
                        let covered = match mode {
                            VerifyMode::Plain => x & !xb == 0 && zb & !z == 0,
                            VerifyMode::Closure => {
                                x & !clb[xb as usize] == 0 && zb & !clb[z as usize] == 0
                            }
                        };
                        if covered {
                            cm |= 1 << j;
                        }
                    }
                    if cm != 0 {
                        cover_masks.push(cm);
                    }
                }
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & z;
        }
    }
    cover_masks.sort_unstable();
    cover_masks.dedup();
    // drop dominated masks
    let maximal: Vec<u64> = cover_masks
        .iter()
        .filter(|&&m| !cover_masks.iter().any(|&o| o != m && o & m == m))
        .copied()
        .collect();

    let full: u64 = if basis.rules.len() == 64 { !0 } else { (1u64 << basis.rules.len()) - 1 };
    let mut best = vec![u8::MAX; (full + 1) as usize];
    best[0] = 0;
    let mut frontier = vec![0u64];
    let mut depth = 0u8;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &m in &frontier {
            for &cm in &maximal {
                let nm = m | cm;
                if best[nm as usize] > depth {
                    best[nm as usize] = depth;
                    if nm == full {
                        return depth as usize;
                    }
                    next.push(nm);
                }
            }
        }
        frontier = next;
    }
    // unreachable for a complete basis: the basis rules cover themselves
    basis.rules.len()
}

/// Rule-counting conventions for threshold sweeps and comparisons.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountConvention {
    /// Disjoint sides, singleton consequent, nonempty antecedent.
    TraditionalSingleton,
    /// Disjoint sides, nonempty consequent, antecedent may be empty.
    General,
}

/// Number of rules meeting both thresholds under the convention.
pub fn all_rules_count(d: &Dataset, gamma: Frac, tau: u64, convention: CountConvention) -> u64 {
    let mut supports: HashMap<ItemSet, u64> = HashMap::new();
    if d.is_empty() {
        return 0;
    }
    let idx = SupportIndex::new(d);
    collect_frequent(&idx, d.universe_len(), tau, &ItemSet::empty(), d.len(), &mut supports);

    let mut count = 0u64;
    for (z, &sz) in &supports {
        match convention {
            CountConvention::TraditionalSingleton => {
                if z.len() < 2 {
                    continue;
                }
                for i in z.iter() {
                    let x = z.without_item(i);
                    if gamma.le_scaled(sz, supports[&x]) {
                        count += 1;
                    }
                }
            }
            CountConvention::General => {
                if z.is_empty() {
                    continue;
                }
                // every proper subset of z as antecedent
                let items: Vec<u32> = z.iter().collect();
                for m in 0..(1u64 << items.len()) - 1 {
                    let x = ItemSet::from_items(
                        items
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| m >> k & 1 == 1)
                            .map(|(_, &i)| i),
                    );
                    if gamma.le_scaled(sz, supports[&x]) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn collect_frequent(
    idx: &SupportIndex,
    universe: u32,
    tau: u64,
    prefix: &ItemSet,
    support: u64,
    out: &mut HashMap<ItemSet, u64>,
) {
    out.insert(prefix.clone(), support);
    let next = prefix.items().last().map_or(0, |&m| m + 1);
    for i in next..universe {
        let ext = prefix.with_item(i);
        let s = idx.support(&ext);
        if s >= tau {
            collect_frequent(idx, universe, tau, &ext, s, out);
        }
    }
}
