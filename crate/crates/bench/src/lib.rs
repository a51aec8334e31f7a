//! Benchmark fixtures.

use twistq::engine::Engine;
use twistq::TypeSpec;

/// `(type, node, k)` cases shared by the engine benchmarks.
pub const CASES: &[(&str, u8, u32)] = &[("A2-2", 0, 4), ("A4-2", 1, 2), ("D4-3", 2, 1), ("A5-2", 2, 2), ("E6-2", 1, 1)];

/// A fresh engine, so every iteration pays for the full expansion.
pub fn engine(ty: &str) -> Engine {
    Engine::new(TypeSpec::parse(ty).expect("fixture types parse"))
}
