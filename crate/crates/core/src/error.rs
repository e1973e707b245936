use alloc::string::String;

/// Errors raised by constructors and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The arguments violate a precondition.
    #[error("input error: {0}")]
    Input(String),
    /// An enumeration ran past its configured budget.
    #[error("budget exceeded: {what} (bound {bound})")]
    Budget { what: String, bound: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
