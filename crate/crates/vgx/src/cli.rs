//! Command-line surface (placeholder during bring-up).

pub fn run() -> i32 {
    0
}
