use thiserror::Error;

/// Error type shared by all toolkit modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible latency budget: short by {deficit_us} us")]
    Infeasible { deficit_us: f64 },

    #[error("capacity exceeded: offered {offered_mbps} Mbps above peak {peak_mbps} Mbps")]
    Capacity { offered_mbps: f64, peak_mbps: f64 },

    #[error("oversized input: {0}")]
    Size(String),

    #[error("framing error at byte {offset}: {reason}")]
    Framing { offset: usize, reason: String },

    #[error("transport error: {0}")]
    Transport(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI surface.
    /// 2 = configuration, 3 = infeasibility/capacity, 4 = transport/session.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::Size(_) => 2,
            Error::Infeasible { .. } | Error::Capacity { .. } => 3,
            Error::Framing { .. } | Error::Transport(_) => 4,
        }
    }
}
