use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input stream contained no transactions.
    NoTransactions,
    /// A rule or query referenced an item name absent from the dataset.
    UnknownItem(String),
    /// Rule text without the `->` separator.
    BadRuleSyntax(String),
    /// An itemset contains an item id outside the dataset universe.
    ItemOutOfUniverse(u32),
    /// Confidence threshold outside its admissible range.
    BadGamma { gamma: String, expected: &'static str },
    /// A fraction literal could not be parsed or had a zero denominator.
    BadFraction(String),
    /// The antecedent is not contained in the candidate consequent set.
    NotASubset,
    /// Asked for a derivation between rules that are not redundant.
    NotRedundant,
    /// A deduction scheme side condition failed.
    SideCondition {
        scheme: &'static str,
        condition: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoTransactions => write!(f, "no transactions"),
            Error::UnknownItem(name) => write!(f, "unknown item {name:?}"),
            Error::BadRuleSyntax(text) => {
                write!(f, "expected a rule like \"a b -> c\", got {text:?}")
            }
            Error::ItemOutOfUniverse(id) => write!(f, "item id {id} outside dataset universe"),
            Error::BadGamma { gamma, expected } => {
                write!(f, "confidence threshold {gamma} out of range, expected {expected}")
            }
            Error::BadFraction(s) => write!(f, "cannot parse {s:?} as a fraction"),
            Error::NotASubset => write!(f, "antecedent is not a subset of the target itemset"),
            Error::NotRedundant => write!(f, "not redundant"),
            Error::SideCondition { scheme, condition } => {
                write!(f, "scheme {scheme}: side condition failed: {condition}")
            }
        }
    }
}

impl std::error::Error for Error {}
