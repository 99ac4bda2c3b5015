//! Command-line tools and the HTTP session service.

pub mod args;
pub mod cli;
pub mod commands;
pub mod http;
pub mod play;
pub mod service;
pub mod session;
pub mod store;

pub use service::{ApiError, CreateRequest, MoveRequest, SessionService, SessionView};
pub use session::{Controller, GameSession, Seat, Status};
