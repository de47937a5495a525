//! C ABI for the pi4 engine (filled in later).
