//! HNN (under construction).
