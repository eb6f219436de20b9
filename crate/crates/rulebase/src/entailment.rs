//! Entailment of a partial rule from two partial premises.
//!
//! Above confidence 1/2 a rule can follow jointly from two premises that do
//! not each entail it alone; the decider checks seven structural inclusions
//! through the logical closure. Below 1/2 proper two-premise entailment
//! never happens and the decider degenerates to the single-premise cases.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fraction::Frac;
use crate::implications::{implies, logical_closure, ImplicationSet};
use crate::itemset::{ItemSet, Rule};
use crate::redundancy::{check_step, closure_redundant, Scheme, SchemeTag};

/// Why a two-premise entailment holds, or which structural conditions failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub holds: bool,
    pub reason: EntailmentReason,
    /// Indices (1-based, i..vii) of failed structural conditions. Populated
    /// whenever the structural route was evaluated.
    pub failed_conditions: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntailmentReason {
    /// Consequent already follows from the antecedent and the implications.
    Trivial,
    /// Redundant with respect to the first premise alone.
    SinglePremise1,
    /// Redundant with respect to the second premise alone.
    SinglePremise2,
    /// All seven structural conditions hold (proper two-premise entailment).
    SevenConditions,
    None,
}

/// The seven inclusions characterizing proper two-premise entailment at
/// `gamma >= 1/2`; all closures are logical closures under `b`.
fn structural_conditions(
    b: &ImplicationSet,
    r1: &Rule,
    r2: &Rule,
    r0: &Rule,
) -> Vec<u8> {
    let cl = |s: &ItemSet| logical_closure(b, s);
    let cl_x0 = cl(&r0.antecedent);
    let x1y1 = r1.full_itemset();
    let x2y2 = r2.full_itemset();
    let cl_x1y1 = cl(&x1y1);
    let cl_x2y2 = cl(&x2y2);
    let checks = [
        r1.antecedent.is_subset(&cl_x0),
        r2.antecedent.is_subset(&cl_x0),
        r1.antecedent.is_subset(&cl_x2y2),
        r2.antecedent.is_subset(&cl_x1y1),
        r0.antecedent.is_subset(&cl(&x1y1.union(&x2y2))),
        r0.consequent.is_subset(&cl(&r0.antecedent.union(&r1.consequent))),
        r0.consequent.is_subset(&cl(&r0.antecedent.union(&r2.consequent))),
    ];
    checks
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| (i + 1) as u8)
        .collect()
}

/// Decides whether every dataset satisfying `b` with confidence 1 and both
/// premises with confidence at least `gamma` must satisfy `r0` with
/// confidence at least `gamma`.
pub fn two_premise_entails(
    b: &ImplicationSet,
    r1: &Rule,
    r2: &Rule,
    r0: &Rule,
    gamma: Frac,
) -> Result<EntailmentVerdict> {
    if gamma.is_zero() || gamma >= Frac::ONE {
        return Err(Error::BadGamma { gamma: gamma.to_string(), expected: "0 < gamma < 1" });
    }
    if r0.consequent.is_subset(&logical_closure(b, &r0.antecedent)) {
        return Ok(EntailmentVerdict {
            holds: true,
            reason: EntailmentReason::Trivial,
            failed_conditions: vec![],
        });
    }
    if closure_redundant(b, r1, r0) {
        return Ok(EntailmentVerdict {
            holds: true,
            reason: EntailmentReason::SinglePremise1,
            failed_conditions: vec![],
        });
    }
    if closure_redundant(b, r2, r0) {
        return Ok(EntailmentVerdict {
            holds: true,
            reason: EntailmentReason::SinglePremise2,
            failed_conditions: vec![],
        });
    }
    let failed = structural_conditions(b, r1, r2, r0);
    let half = Frac::new(1, 2).expect("1/2");
    if gamma >= half && failed.is_empty() {
        Ok(EntailmentVerdict {
            holds: true,
            reason: EntailmentReason::SevenConditions,
            failed_conditions: vec![],
        })
    } else {
        Ok(EntailmentVerdict {
            holds: false,
            reason: EntailmentReason::None,
            failed_conditions: failed,
        })
    }
}

/// Applies the two-premise scheme: from `X1 -> Y1`, `X2 -> Y2` and five
/// implication side conditions, concludes `X1X2Z1 -> Z2`. Errors name the
/// failed side condition.
pub fn apply_2a(
    b: &ImplicationSet,
    r1: &Rule,
    r2: &Rule,
    z1: &ItemSet,
    z2: &ItemSet,
) -> Result<Rule> {
    let x1y1 = r1.full_itemset();
    let x2y2 = r2.full_itemset();
    let side: [(&'static str, Rule); 5] = [
        ("X1Y1 => X2", Rule::new(x1y1.clone(), r2.antecedent.clone())),
        ("X2Y2 => X1", Rule::new(x2y2.clone(), r1.antecedent.clone())),
        ("X1Y1X2Y2 => Z1", Rule::new(x1y1.union(&x2y2), z1.clone())),
        ("X1Y1Z1 => Z2", Rule::new(x1y1.union(z1), z2.clone())),
        ("X2Y2Z1 => Z2", Rule::new(x2y2.union(z1), z2.clone())),
    ];
    for (name, imp) in &side {
        if !implies(b, imp) {
            return Err(Error::SideCondition { scheme: "2A", condition: name });
        }
    }
    let conclusion = Rule::new(
        r1.antecedent.union(&r2.antecedent).union(z1),
        z2.clone(),
    );
    let step = Scheme {
        tag: SchemeTag::TwoA,
        premises: vec![r1.clone(), r2.clone()],
        implication_premises: side.into_iter().map(|(_, imp)| imp).collect(),
        conclusion: conclusion.clone(),
    };
    debug_assert!(check_step(b, &step));
    Ok(conclusion)
}

/// Searches for a dataset where both premises reach confidence `gamma`, all
/// implications of `b` hold, and `r0` stays below `gamma`.
///
/// Transactions are drawn from the six closure shapes a failed entailment
/// can always be witnessed with; candidate multiplicity patterns follow the
/// failure-case constructions for the given threshold, capped at `bound`.
pub fn counterexample_search(
    b: &ImplicationSet,
    r1: &Rule,
    r2: &Rule,
    r0: &Rule,
    gamma: Frac,
    bound: u64,
) -> Option<Dataset> {
    let cl = |s: &ItemSet| logical_closure(b, s);
    let x1y1 = r1.full_itemset();
    let x2y2 = r2.full_itemset();
    let both = x1y1.union(&x2y2);
    let shapes = [
        cl(&r0.antecedent),
        cl(&x1y1),
        cl(&x2y2),
        cl(&r0.antecedent.union(&r1.consequent)),
        cl(&r0.antecedent.union(&r2.consequent)),
        cl(&both),
        cl(&r0.antecedent.union(&both)),
    ];
    let [cl_x0, cl_x1y1, cl_x2y2, cl_x0y1, cl_x0y2, cl_both, cl_all] = &shapes;

    let m = gamma.numer();
    let n = gamma.denom();
    let mut candidates: Vec<Vec<(&ItemSet, u64)>> = vec![
        // one premise unsatisfied structurally: big block of cl(X0)
        vec![(cl_x2y2, 1), (cl_all, m * n - 1), (cl_x0, n * (n - m))],
        vec![(cl_x1y1, 1), (cl_all, m * n - 1), (cl_x0, n * (n - m))],
        vec![(cl_all, 1), (cl_x0, n)],
        // cross conditions
        vec![(cl_x0, 1), (cl_x1y1, n), (cl_x2y2, n * n)],
        vec![(cl_x0, 1), (cl_x2y2, n), (cl_x1y1, n * n)],
        // joint antecedent condition
        vec![(cl_x0, 1), (cl_both, n - 1)],
    ];
    // consequent conditions
    if m >= 1 && n > m {
        candidates.push(vec![
            (cl_x0y1, 1),
            (cl_x2y2, 1),
            (cl_both, m - 1),
            (cl_x0, n - m - 1),
        ]);
        candidates.push(vec![
            (cl_x0y2, 1),
            (cl_x1y1, 1),
            (cl_both, m - 1),
            (cl_x0, n - m - 1),
        ]);
    }
    // below one half: premises can be fed independently
    if 2 * m < n {
        // smallest k with k/(2k+1) >= gamma
        let k = m.div_ceil(n - 2 * m);
        candidates.push(vec![(cl_x0, 1), (cl_x1y1, k), (cl_x2y2, k)]);
        candidates.push(vec![(cl_x1y1, 1), (cl_x2y2, 1), (cl_x0, bound)]);
    }
    candidates.push(vec![(cl_x1y1, 1), (cl_x0, bound)]);
    candidates.push(vec![(cl_x2y2, 1), (cl_x0, bound)]);

    let universe = shapes
        .iter()
        .flat_map(|s| s.items().iter().copied())
        .max()
        .map_or(1, |m| m + 2);

    for pattern in candidates {
        if pattern.iter().any(|&(_, k)| k > bound) {
            continue;
        }
        let weighted: Vec<(&ItemSet, u64)> =
            pattern.into_iter().filter(|&(_, k)| k > 0).collect();
        if weighted.is_empty() {
            continue;
        }
        let conf = |r: &Rule| -> (u64, u64) {
            let full = r.full_itemset();
            let mut sx = 0;
            let mut sxy = 0;
            for &(t, k) in &weighted {
                if r.antecedent.is_subset(t) {
                    sx += k;
                    if full.is_subset(t) {
                        sxy += k;
                    }
                }
            }
            (sxy, sx)
        };
        let ge_gamma = |(sxy, sx): (u64, u64)| sx == 0 || gamma.le_scaled(sxy, sx);
        if ge_gamma(conf(r1)) && ge_gamma(conf(r2)) && !ge_gamma(conf(r0)) {
            let mut txs = Vec::new();
            for (t, k) in weighted {
                txs.extend(std::iter::repeat_n(t.clone(), k as usize));
            }
            return Some(Dataset::from_itemsets(universe, txs));
        }
    }
    None
}

/// Greedily removes basis rules that a pair of remaining rules entails at
/// `gamma`; below 1/2 nothing can be removed. Completeness is preserved:
/// every removed rule is re-verified to still be entailed.
pub fn prune_basis_2premise(
    b: &ImplicationSet,
    basis: &crate::bases::Basis,
    gamma: Frac,
) -> Result<crate::bases::Basis> {
    let mut rules = basis.rules.clone();
    if gamma < Frac::new(1, 2).expect("1/2") {
        return Ok(crate::bases::Basis { rules, ..basis.clone() });
    }
    let mut i = 0;
    while i < rules.len() {
        let target = rules[i].clone();
        let mut entailed = false;
        'pairs: for j in 0..rules.len() {
            for k in j..rules.len() {
                if j == i || k == i {
                    continue;
                }
                let verdict = two_premise_entails(b, &rules[j], &rules[k], &target, gamma)?;
                if verdict.holds {
                    entailed = true;
                    break 'pairs;
                }
            }
        }
        if entailed {
            rules.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(crate::bases::Basis { rules, ..basis.clone() })
}
