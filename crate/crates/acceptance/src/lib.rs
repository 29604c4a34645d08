//! Acceptance suite lives in tests/.
