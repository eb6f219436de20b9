//! Redundancy deciders and the deduction calculi behind them.
//!
//! Plain redundancy (`c(r0) >= c(r1)` in every dataset) is decided by the
//! cover test; closure-based redundancy (the same, over datasets satisfying a
//! set of implications) by two inclusions through the logical closure. Both
//! deciders come with constructive derivations in the matching calculus and
//! with bounded counterexample searches that realize the other direction.

use crate::dataset::Dataset;
use crate::implications::{implies, logical_closure, ImplicationSet};
use crate::itemset::{ItemSet, Rule};

use crate::error::{Error, Result};

/// `r1` covers `r0`: `X1 subseteq X0` and `X0Y0 subseteq X1Y1`.
pub fn covers(r1: &Rule, r0: &Rule) -> bool {
    r1.antecedent.is_subset(&r0.antecedent) && r0.full_itemset().is_subset(&r1.full_itemset())
}

/// `r0` has at least the confidence of `r1` in every dataset. Holds exactly
/// when `r0` is trivial or `r1` covers `r0`; coincides with the standard
/// notion that also compares supports.
pub fn plainly_redundant(r1: &Rule, r0: &Rule) -> bool {
    r0.is_trivial() || covers(r1, r0)
}

/// Closure-based redundancy relative to the implications `b`: in every
/// dataset where `b` holds with confidence 1, `c(r0) >= c(r1)`.
/// With `b` empty this degenerates to plain redundancy.
pub fn closure_redundant(b: &ImplicationSet, r1: &Rule, r0: &Rule) -> bool {
    let cl_x0 = logical_closure(b, &r0.antecedent);
    if r0.consequent.is_subset(&cl_x0) {
        return true;
    }
    r1.antecedent.is_subset(&cl_x0)
        && r0.full_itemset().is_subset(&logical_closure(b, &r1.full_itemset()))
}

/// Inference scheme identifiers across both calculi.
///
/// Plain calculus: `rR` (reduce consequent), `RaPlain` (copy antecedent into
/// consequent), `La` (move consequent items left), `REmpty` (trivial rule).
/// Closure calculus replaces `rR`/`RaPlain` with implication-aware forms
/// `RaClosure` and `Ri`, adds `Li`, and keeps `La`/`REmpty`. `TwoA` is the
/// two-premise scheme.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SchemeTag {
    RR,
    RaPlain,
    La,
    REmpty,
    RaClosure,
    Ri,
    Li,
    TwoA,
}

impl SchemeTag {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeTag::RR => "rR",
            SchemeTag::RaPlain => "rA",
            SchemeTag::La => "lA",
            SchemeTag::REmpty => "rEmpty",
            SchemeTag::RaClosure => "rA",
            SchemeTag::Ri => "rI",
            SchemeTag::Li => "lI",
            SchemeTag::TwoA => "2A",
        }
    }
}

/// One applied inference: premises, implication premises, conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub tag: SchemeTag,
    pub premises: Vec<Rule>,
    pub implication_premises: Vec<Rule>,
    pub conclusion: Rule,
}

/// Validates the side conditions of one scheme instance. Implication
/// premises must follow from `b` by the Armstrong schemes.
pub fn check_step(b: &ImplicationSet, s: &Scheme) -> bool {
    let imp_ok = || s.implication_premises.iter().all(|r| implies(b, r));
    match s.tag {
        SchemeTag::RR => {
            // X -> Y, Z subseteq Y |- X -> Z
            let [p] = s.premises.as_slice() else { return false };
            s.implication_premises.is_empty()
                && s.conclusion.antecedent == p.antecedent
                && s.conclusion.consequent.is_subset(&p.consequent)
        }
        SchemeTag::RaPlain => {
            // X -> Y |- X -> XY
            let [p] = s.premises.as_slice() else { return false };
            s.implication_premises.is_empty()
                && s.conclusion.antecedent == p.antecedent
                && s.conclusion.consequent == p.full_itemset()
        }
        SchemeTag::La => {
            // X -> YZ |- XY -> Z
            let [p] = s.premises.as_slice() else { return false };
            let (x, w) = (&p.antecedent, &p.consequent);
            let (ca, cc) = (&s.conclusion.antecedent, &s.conclusion.consequent);
            s.implication_premises.is_empty()
                && x.is_subset(ca)
                && ca.difference(x).is_subset(w)
                && cc.is_subset(w)
                && w.is_subset(&ca.union(cc))
        }
        SchemeTag::REmpty => {
            // |- X -> {}
            s.premises.is_empty()
                && s.implication_premises.is_empty()
                && s.conclusion.consequent.is_empty()
        }
        SchemeTag::RaClosure => {
            // X -> Y, X => Z |- X -> YZ
            let ([p], [imp]) = (s.premises.as_slice(), s.implication_premises.as_slice()) else {
                return false;
            };
            imp.antecedent == p.antecedent
                && s.conclusion.antecedent == p.antecedent
                && s.conclusion.consequent == p.consequent.union(&imp.consequent)
                && imp_ok()
        }
        SchemeTag::Ri => {
            // X -> Y, Y => Z |- X -> Z
            let ([p], [imp]) = (s.premises.as_slice(), s.implication_premises.as_slice()) else {
                return false;
            };
            imp.antecedent == p.consequent
                && s.conclusion.antecedent == p.antecedent
                && s.conclusion.consequent == imp.consequent
                && imp_ok()
        }
        SchemeTag::Li => {
            // X -> Y, Z subseteq X, Z => X |- Z -> Y
            let ([p], [imp]) = (s.premises.as_slice(), s.implication_premises.as_slice()) else {
                return false;
            };
            imp.antecedent == s.conclusion.antecedent
                && imp.consequent == p.antecedent
                && s.conclusion.antecedent.is_subset(&p.antecedent)
                && s.conclusion.consequent == p.consequent
                && imp_ok()
        }
        SchemeTag::TwoA => {
            let ([p1, p2], [i1, i2, i3, i4, i5]) =
                (s.premises.as_slice(), s.implication_premises.as_slice())
            else {
                return false;
            };
            let x1y1 = p1.full_itemset();
            let x2y2 = p2.full_itemset();
            let both = x1y1.union(&x2y2);
            let z1 = &i3.consequent;
            let z2 = &i4.consequent;
            i1.antecedent == x1y1
                && i1.consequent == p2.antecedent
                && i2.antecedent == x2y2
                && i2.consequent == p1.antecedent
                && i3.antecedent == both
                && i4.antecedent == x1y1.union(z1)
                && i5.antecedent == x2y2.union(z1)
                && i5.consequent == *z2
                && s.conclusion.antecedent == p1.antecedent.union(&p2.antecedent).union(z1)
                && s.conclusion.consequent == *z2
                && imp_ok()
        }
    }
}

/// A checkable sequence of scheme applications from premises to a final rule.
#[derive(Clone, Debug)]
pub struct DerivationTrace {
    pub root_premises: Vec<Rule>,
    pub steps: Vec<Scheme>,
    pub final_rule: Rule,
}

impl DerivationTrace {
    /// Replays the trace: every step must validate and use only root
    /// premises, implications of `b`, or earlier conclusions; the last
    /// conclusion must be the final rule.
    pub fn check(&self, b: &ImplicationSet) -> bool {
        let mut derived: Vec<Rule> = self.root_premises.clone();
        for step in &self.steps {
            if !check_step(b, step) {
                return false;
            }
            if !step.premises.iter().all(|p| derived.contains(p)) {
                return false;
            }
            derived.push(step.conclusion.clone());
        }
        match self.steps.last() {
            Some(last) => last.conclusion == self.final_rule,
            None => self.root_premises.contains(&self.final_rule),
        }
    }

    /// One `SCHEME: premises |- conclusion` line per step.
    pub fn export_text(&self, names: &[String]) -> String {
        let fmt_rule = |r: &Rule| {
            format!(
                "{} -> {}",
                r.antecedent.display_with(names),
                r.consequent.display_with(names)
            )
        };
        let mut out = String::new();
        for step in &self.steps {
            let mut parts: Vec<String> = step.premises.iter().map(&fmt_rule).collect();
            parts.extend(step.implication_premises.iter().map(|r| {
                format!(
                    "{} => {}",
                    r.antecedent.display_with(names),
                    r.consequent.display_with(names)
                )
            }));
            out.push_str(&format!(
                "{}: {} |- {}\n",
                step.tag.name(),
                parts.join(", "),
                fmt_rule(&step.conclusion)
            ));
        }
        out
    }
}

/// Which calculus a derivation runs in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Plain,
    Closure,
}

/// Builds the canonical derivation of `r0` from `r1` (at most four steps,
/// identity steps elided). Fails with `NotRedundant` when the corresponding
/// decider rejects the pair, which is exactly when no derivation exists.
pub fn derive(b: &ImplicationSet, r1: &Rule, r0: &Rule, mode: Mode) -> Result<DerivationTrace> {
    match mode {
        Mode::Plain => derive_plain(r1, r0),
        Mode::Closure => derive_closure(b, r1, r0),
    }
}

fn push_step(
    steps: &mut Vec<Scheme>,
    tag: SchemeTag,
    premises: Vec<Rule>,
    implication_premises: Vec<Rule>,
    conclusion: Rule,
) {
    // elide identity steps
    if premises.len() == 1 && premises[0] == conclusion {
        return;
    }
    steps.push(Scheme { tag, premises, implication_premises, conclusion });
}

fn derive_plain(r1: &Rule, r0: &Rule) -> Result<DerivationTrace> {
    let mut steps = Vec::new();
    if r0.is_trivial() {
        let empty = Rule::new(r0.antecedent.clone(), ItemSet::empty());
        steps.push(Scheme {
            tag: SchemeTag::REmpty,
            premises: vec![],
            implication_premises: vec![],
            conclusion: empty.clone(),
        });
        let copied = Rule::new(r0.antecedent.clone(), r0.antecedent.clone());
        push_step(&mut steps, SchemeTag::RaPlain, vec![empty], vec![], copied.clone());
        push_step(&mut steps, SchemeTag::RR, vec![copied], vec![], r0.clone());
        return Ok(trace(steps, vec![], r0));
    }
    if !covers(r1, r0) {
        return Err(Error::NotRedundant);
    }
    let widened = Rule::new(r1.antecedent.clone(), r1.full_itemset());
    let mut steps = Vec::new();
    push_step(&mut steps, SchemeTag::RaPlain, vec![r1.clone()], vec![], widened.clone());
    let narrowed = Rule::new(r1.antecedent.clone(), r0.full_itemset());
    let last = steps.last().map_or(r1.clone(), |s| s.conclusion.clone());
    push_step(&mut steps, SchemeTag::RR, vec![last.clone()], vec![], narrowed.clone());
    let last = steps.last().map_or(r1.clone(), |s| s.conclusion.clone());
    push_step(&mut steps, SchemeTag::La, vec![last], vec![], r0.clone());
    Ok(trace(steps, vec![r1.clone()], r0))
}

fn derive_closure(b: &ImplicationSet, r1: &Rule, r0: &Rule) -> Result<DerivationTrace> {
    let cl_x0 = logical_closure(b, &r0.antecedent);
    if r0.consequent.is_subset(&cl_x0) {
        // implied rule: state it trivially, then augment through b
        let empty = Rule::new(r0.antecedent.clone(), ItemSet::empty());
        let mut steps = vec![Scheme {
            tag: SchemeTag::REmpty,
            premises: vec![],
            implication_premises: vec![],
            conclusion: empty.clone(),
        }];
        let imp = Rule::new(r0.antecedent.clone(), r0.consequent.clone());
        push_step(&mut steps, SchemeTag::RaClosure, vec![empty], vec![imp], r0.clone());
        return Ok(trace(steps, vec![], r0));
    }
    if !closure_redundant(b, r1, r0) {
        return Err(Error::NotRedundant);
    }
    let mut steps = Vec::new();
    let mut current = r1.clone();

    // X1 -> Y1  |-(rA)  X1 -> X1Y1
    let widened = Rule::new(r1.antecedent.clone(), r1.full_itemset());
    push_step(
        &mut steps,
        SchemeTag::RaClosure,
        vec![current.clone()],
        vec![Rule::new(r1.antecedent.clone(), r1.antecedent.clone())],
        widened.clone(),
    );
    current = widened;

    // |-(rI)  X1 -> cl(X0)Y0
    let target = cl_x0.union(&r0.consequent);
    let narrowed = Rule::new(r1.antecedent.clone(), target.clone());
    push_step(
        &mut steps,
        SchemeTag::Ri,
        vec![current.clone()],
        vec![Rule::new(current.consequent.clone(), target.clone())],
        narrowed.clone(),
    );
    current = narrowed;

    // |-(lA)  cl(X0) -> Y0
    let shifted = Rule::new(cl_x0.clone(), r0.consequent.clone());
    push_step(&mut steps, SchemeTag::La, vec![current.clone()], vec![], shifted.clone());
    current = shifted;

    // |-(lI)  X0 -> Y0
    push_step(
        &mut steps,
        SchemeTag::Li,
        vec![current.clone()],
        vec![Rule::new(r0.antecedent.clone(), cl_x0)],
        r0.clone(),
    );
    Ok(trace(steps, vec![r1.clone()], r0))
}

fn trace(steps: Vec<Scheme>, root_premises: Vec<Rule>, final_rule: &Rule) -> DerivationTrace {
    DerivationTrace { root_premises, steps, final_rule: final_rule.clone() }
}

/// Weighted confidence of `r` over `(transaction, multiplicity)` pairs, as a
/// normalized numerator/denominator with the vacuous-1 convention.
fn weighted_confidence(shapes: &[(&ItemSet, u64)], r: &Rule) -> (u64, u64) {
    let full = r.full_itemset();
    let mut sx = 0;
    let mut sxy = 0;
    for &(t, k) in shapes {
        if r.antecedent.is_subset(t) {
            sx += k;
            if full.is_subset(t) {
                sxy += k;
            }
        }
    }
    if sx == 0 {
        (1, 1)
    } else {
        (sxy, sx)
    }
}

fn conf_lt(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

fn materialize(universe: u32, shapes: &[(&ItemSet, u64)]) -> Dataset {
    let mut txs = Vec::new();
    for &(t, k) in shapes {
        txs.extend(std::iter::repeat_n(t.clone(), k as usize));
    }
    Dataset::from_itemsets(universe, txs)
}

/// Bounded counterexample search for plain redundancy. Tries the two dataset
/// shapes that witness every failure: one `X1Y1` transaction against `m`
/// copies of `X0`, and the reverse. Returns a dataset where
/// `c(r0) < c(r1)`, or `None` if the pair is redundant.
pub fn plain_counterexample(r1: &Rule, r0: &Rule, bound: u64) -> Option<Dataset> {
    let universe = oracle_universe(&[r1, r0], &ImplicationSet::empty());
    let x0 = r0.antecedent.clone();
    let x1y1 = r1.full_itemset();
    for m in 1..=bound.max(1) {
        for shapes in [[(&x1y1, 1), (&x0, m)], [(&x0, 1), (&x1y1, m)]] {
            if conf_lt(weighted_confidence(&shapes, r0), weighted_confidence(&shapes, r1)) {
                return Some(materialize(universe, &shapes));
            }
        }
    }
    None
}

/// Bounded counterexample search for closure-based redundancy: datasets made
/// of `m` copies of `cl(X0)` and `k` copies of `cl(X1Y1)`, all transactions
/// closed under `b` so the implications hold with confidence 1. The failure
/// constructions only ever need one block of each shape with the other
/// repeated, so those are the multiplicity patterns tried.
pub fn closure_counterexample(
    b: &ImplicationSet,
    r1: &Rule,
    r0: &Rule,
    bound: u64,
) -> Option<Dataset> {
    let universe = oracle_universe(&[r1, r0], b);
    let cl_x0 = logical_closure(b, &r0.antecedent);
    let cl_x1y1 = logical_closure(b, &r1.full_itemset());
    for i in 1..=bound.max(1) {
        for shapes in [
            [(&cl_x0, i), (&cl_x1y1, 0)],
            [(&cl_x0, 0), (&cl_x1y1, i)],
            [(&cl_x0, 1), (&cl_x1y1, i)],
            [(&cl_x0, i), (&cl_x1y1, 1)],
        ] {
            let shapes: Vec<(&ItemSet, u64)> =
                shapes.iter().filter(|&&(_, k)| k > 0).copied().collect();
            if conf_lt(weighted_confidence(&shapes, r0), weighted_confidence(&shapes, r1)) {
                return Some(materialize(universe, &shapes));
            }
        }
    }
    None
}

/// Items mentioned by the rules plus one fresh item.
fn oracle_universe(rules: &[&Rule], b: &ImplicationSet) -> u32 {
    let mut max_id = 0;
    let mut track = |s: &ItemSet| {
        if let Some(&m) = s.items().last() {
            max_id = max_id.max(m + 1);
        }
    };
    for r in rules {
        track(&r.antecedent);
        track(&r.consequent);
    }
    for r in b.rules() {
        track(&r.antecedent);
        track(&r.consequent);
    }
    max_id + 1
}
