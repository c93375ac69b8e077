//! Conjugacy (under construction).
