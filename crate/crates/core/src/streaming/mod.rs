//! Streaming (under construction).
