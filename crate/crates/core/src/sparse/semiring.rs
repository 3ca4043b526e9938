// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// An `(add, multiply)` pair over `f64` with the additive identity that
/// absent sparse entries stand for.
#[derive(Clone, Copy)]
pub struct Semiring {
    pub name: &'static str,
    pub add: fn(f64, f64) -> f64,
    pub add_identity: f64,
    pub multiply: fn(f64, f64) -> f64,
    pub multiply_identity: f64,
}

fn truth(x: bool) -> f64 {
    if x {
        1.0
    } else {
        0.0
    }
}

/// Tropical `(min, +)`: absent means unreachable.
pub const MIN_PLUS: Semiring = Semiring {
    name: "min-plus",
    add: f64::min,
    add_identity: f64::INFINITY,
    multiply: |a, b| a + b,
    multiply_identity: 0.0,
};

pub const PLUS_TIMES: Semiring = Semiring {
    name: "plus-times",
    add: |a, b| a + b,
    add_identity: 0.0,
    multiply: |a, b| a * b,
    multiply_identity: 1.0,
};

/// Boolean `(or, and)` with non-zero read as true and results in {0.0, 1.0}.
pub const OR_AND: Semiring = Semiring {
    name: "or-and",
    add: |a, b| truth(a != 0.0 || b != 0.0),
    add_identity: 0.0,
    multiply: |a, b| truth(a != 0.0 && b != 0.0),
    multiply_identity: 1.0,
};

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}
