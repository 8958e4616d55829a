//! Words in the generators of U_q(s) and their PBW normal forms.
//!
//! Normal monomials are ordered `Y^a F^b K^c Z^d X^e E^f` with `c` a signed
//! exponent. Products are computed by moving one generator at a time into
//! place with the oriented defining relations:
//!
//! ```text
//! XY = qYX - Z         XF = FX - YK^-1      XK = q^-1 KX
//! EY = X + q^-1 YE     EF = FE + (K - K^-1)/(q - q^-1)
//! EK = q^-2 KE         EX = qXE             KY = q^-1 YK
//! KF = q^-2 FK         FY = YF              Z central
//! ```

mod element;
mod word;

pub use element::{multiply, normal_form, PbwElement, PbwMono};
pub use word::{parse_expr, parse_word_expr, FreeExpr};

use serde::{Deserialize, Serialize};

/// A generator of U_q(s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E,
    F,
    K,
    Kinv,
    X,
    Y,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::E,
        Generator::F,
        Generator::K,
        Generator::Kinv,
        Generator::X,
        Generator::Y,
        Generator::Z,
    ];

    /// The U_q(sl2) generators.
    pub const SL2: [Generator; 4] = [Generator::E, Generator::F, Generator::K, Generator::Kinv];

    /// How far the generator raises the weight, in powers of q.
    pub fn degree(self) -> i64 {
        match self {
            Generator::E => 2,
            Generator::X => 1,
            Generator::K | Generator::Kinv | Generator::Z => 0,
            Generator::Y => -1,
            Generator::F => -2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::E => "E",
            Generator::F => "F",
            Generator::K => "K",
            Generator::Kinv => "Kinv",
            Generator::X => "X",
            Generator::Y => "Y",
            Generator::Z => "Z",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Position in the normal order `Y < F < K < Z < X < E`.
    pub(crate) fn rank(self) -> u8 {
        match self {
            Generator::Y => 0,
            Generator::F => 1,
            Generator::K | Generator::Kinv => 2,
            Generator::Z => 3,
            Generator::X => 4,
            Generator::E => 5,
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests;
