use alloc::string::String;

/// Errors raised by library operations.
///
/// Every fallible operation reports either a violated precondition or an
/// exceeded feasibility cap; nothing else can go wrong in pure code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidInput(alloc::format!($($arg)*))
    };
}

macro_rules! capped {
    ($($arg:tt)*) => {
        $crate::error::Error::ResourceCap(alloc::format!($($arg)*))
    };
}

pub(crate) use {capped, invalid};
