use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("instance exceeds size limits: {0}")]
    SizeLimit(String),

    #[error("polynomial restricted to axes {axes:?} is identically zero")]
    ZeroRestriction { axes: Vec<usize> },

    #[error("Gröbner budget exceeded: {pairs} pairs > limit {limit}{}", context.as_deref().map(|c| format!(" ({c})")).unwrap_or_default())]
    BudgetExceeded { pairs: usize, limit: usize, context: Option<String> },

    #[error("non-finite {what}")]
    NonFinite { what: String },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("family member is constant on S at t = {t}")]
    ConstantFamily { t: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::NegativeExponent { .. } | Error::Instance(_)
        )
    }

    /// Attaches a description of the work item that ran out of budget.
    pub fn with_context(self, ctx: impl FnOnce() -> String) -> Self {
        match self {
            Error::BudgetExceeded { pairs, limit, context: None } => {
                Error::BudgetExceeded { pairs, limit, context: Some(ctx()) }
            }
            other => other,
        }
    }
}

/// Collects per-item results keeping the first error in input order. Rayon's
/// own `collect` into a `Result` may surface any failing item.
pub(crate) fn ordered<T, C: FromIterator<T>>(results: Vec<Result<T>>) -> Result<C> {
    results.into_iter().collect()
}
