//! Transaction datasets, FIMI parsing, and the support/confidence primitives.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::fraction::Frac;
use crate::itemset::{ItemSet, Rule};

/// A finite multiset of transactions over a dense item universe.
///
/// Item ids are assigned in first-appearance order while parsing and map
/// bijectively to the original item names. Transaction ids are line numbers
/// in parse order. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Dataset {
    names: Vec<String>,
    transactions: Vec<ItemSet>,
}

impl Dataset {
    /// Builds a dataset directly from itemsets over `0..universe`.
    /// Names default to `i0, i1, ...` when not supplied.
    pub fn from_itemsets(universe: u32, transactions: Vec<ItemSet>) -> Dataset {
        Dataset {
            names: (0..universe).map(|i| format!("i{i}")).collect(),
            transactions,
        }
    }

    pub fn with_names(names: Vec<String>, transactions: Vec<ItemSet>) -> Dataset {
        Dataset { names, transactions }
    }

    pub fn len(&self) -> u64 {
        self.transactions.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn universe_len(&self) -> u32 {
        self.names.len() as u32
    }

    pub fn universe(&self) -> ItemSet {
        ItemSet::universe(self.universe_len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn transactions(&self) -> &[ItemSet] {
        &self.transactions
    }

    pub fn item_id(&self, name: &str) -> Result<u32> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::UnknownItem(name.to_string()))
    }

    /// Number of transactions containing `x`. Unnormalized.
    pub fn support(&self, x: &ItemSet) -> Result<u64> {
        if let Some(&id) = x.items().iter().find(|&&id| id >= self.universe_len()) {
            return Err(Error::ItemOutOfUniverse(id));
        }
        Ok(self.transactions.iter().filter(|t| x.is_subset(t)).count() as u64)
    }

    /// `s(XY) / s(X)` as an exact rational; 1 when `s(X) = 0`, so the
    /// confidence of a rule with unsupported antecedent is vacuously true.
    pub fn confidence(&self, r: &Rule) -> Frac {
        let sx = self
            .transactions
            .iter()
            .filter(|t| r.antecedent.is_subset(t))
            .count() as u64;
        if sx == 0 {
            return Frac::ONE;
        }
        let sxy = self
            .transactions
            .iter()
            .filter(|t| r.antecedent.is_subset(t) && r.consequent.is_subset(t))
            .count() as u64;
        Frac::new(sxy, sx).expect("nonzero denominator")
    }

    /// Parses an itemset of space-separated item names.
    pub fn parse_items(&self, text: &str) -> Result<ItemSet> {
        let mut ids = Vec::new();
        for tok in text.split_whitespace() {
            ids.push(self.item_id(tok)?);
        }
        Ok(ItemSet::from_items(ids))
    }

    /// Parses `"a b -> c d"`. Either side may be empty.
    pub fn parse_rule(&self, text: &str) -> Result<Rule> {
        let (lhs, rhs) = text
            .split_once("->")
            .ok_or_else(|| Error::BadRuleSyntax(text.to_string()))?;
        Ok(Rule::new(self.parse_items(lhs)?, self.parse_items(rhs)?))
    }

    /// Serializes back to FIMI lines.
    pub fn to_fimi(&self) -> String {
        let mut out = String::new();
        for t in &self.transactions {
            out.push_str(&format!("{}\n", t.display_with(&self.names)));
        }
        out
    }
}

/// Parses the FIMI transaction format: one transaction per line, items as
/// whitespace-separated tokens, no header. Duplicate tokens in a line
/// collapse; blank lines are skipped; an input without any transaction is an
/// error.
pub fn parse_transactions(reader: impl BufRead) -> Result<Dataset> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut transactions = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|_| Error::NoTransactions)?;
        let mut items = Vec::new();
        for tok in line.split_whitespace() {
            let id = *ids.entry(tok.to_string()).or_insert_with(|| {
                names.push(tok.to_string());
                (names.len() - 1) as u32
            });
            items.push(id);
        }
        if items.is_empty() {
            continue;
        }
        transactions.push(ItemSet::from_items(items));
    }
    if transactions.is_empty() {
        return Err(Error::NoTransactions);
    }
    Ok(Dataset { names, transactions })
}

pub fn parse_transactions_str(text: &str) -> Result<Dataset> {
    parse_transactions(text.as_bytes())
}

/// Free-function forms of the primitives, for symmetry with the rest of the API.
pub fn support(d: &Dataset, x: &ItemSet) -> Result<u64> {
    d.support(x)
}

pub fn confidence(d: &Dataset, r: &Rule) -> Frac {
    d.confidence(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_lines() {
        let d = parse_transactions_str("a b c\na b\n").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.universe_len(), 3);
        assert_eq!(d.names(), &["a", "b", "c"]);
    }

    #[test]
    fn collapses_duplicates_within_line() {
        let d = parse_transactions_str("a a b\n").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.transactions()[0], ItemSet::from_items([0, 1]));
    }

    #[test]
    fn skips_blank_lines_and_rejects_empty_input() {
        let d = parse_transactions_str("a b\n   \n\nb c\n").unwrap();
        assert_eq!(d.len(), 2);
        assert!(matches!(parse_transactions_str(""), Err(Error::NoTransactions)));
        assert!(matches!(parse_transactions_str("  \n \n"), Err(Error::NoTransactions)));
    }

    #[test]
    fn support_of_empty_set_is_dataset_size() {
        let d = parse_transactions_str("a b\nb c\nc\n").unwrap();
        assert_eq!(d.support(&ItemSet::empty()).unwrap(), 3);
        // A full transaction's itemset has support >= 1.
        assert!(d.support(&d.transactions()[0].clone()).unwrap() >= 1);
    }

    #[test]
    fn support_rejects_items_outside_universe() {
        let d = parse_transactions_str("a b\n").unwrap();
        assert!(matches!(
            d.support(&ItemSet::from_items([7])),
            Err(Error::ItemOutOfUniverse(7))
        ));
    }

    #[test]
    fn confidence_conventions() {
        let d = parse_transactions_str("a b\na\nb c\n").unwrap();
        let ab = d.parse_rule("a -> b").unwrap();
        assert_eq!(d.confidence(&ab), Frac::new(1, 2).unwrap());
        // consequent inside antecedent: always 1
        let refl = d.parse_rule("a b -> a").unwrap();
        assert_eq!(d.confidence(&refl), Frac::ONE);
        // zero-support antecedent: vacuously 1
        let vac = d.parse_rule("a c -> b").unwrap();
        assert_eq!(d.confidence(&vac), Frac::ONE);
        // empty antecedent: normalized support of the consequent
        let norm = d.parse_rule("-> b").unwrap();
        assert_eq!(d.confidence(&norm), Frac::new(2, 3).unwrap());
    }

    #[test]
    fn rule_parsing_roundtrip() {
        let d = parse_transactions_str("x y z\n").unwrap();
        let r = d.parse_rule("x y -> z").unwrap();
        assert_eq!(r.antecedent, ItemSet::from_items([0, 1]));
        assert_eq!(r.consequent, ItemSet::from_items([2]));
        assert!(d.parse_rule("x -> q").is_err());
        let empty_lhs = d.parse_rule("-> z").unwrap();
        assert!(empty_lhs.antecedent.is_empty());
    }
}
