use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::poly::VarTable;

/// The three exceptional types handled by the versal-form pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EType {
    E6,
    E7,
    E8,
}

impl EType {
    pub const ALL: [EType; 3] = [EType::E6, EType::E7, EType::E8];

    pub fn rank(self) -> usize {
        match self {
            EType::E6 => 6,
            EType::E7 => 7,
            EType::E8 => 8,
        }
    }

    /// Weights of the generators `X, Y, Z, W`.
    pub fn generator_weights(self) -> [u32; 4] {
        match self {
            EType::E6 => [9, 7, 6, 3],
            EType::E7 => [15, 9, 7, 3],
            EType::E8 => [24, 16, 9, 3],
        }
    }

    /// Names of the versal coefficients, in solve order.
    pub fn eps_names(self) -> Vec<String> {
        self.eps_weights().iter().map(|w| format!("eps{w}")).collect()
    }

    pub fn eps_weights(self) -> &'static [u32] {
        match self {
            EType::E6 => &[2, 5, 6, 8, 9, 12],
            EType::E7 => &[2, 6, 8, 10, 12, 14, 18],
            EType::E8 => &[2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    /// Coefficients of the barred defining polynomial with their weights.
    pub fn barred_coeffs(self) -> &'static [(&'static str, u32)] {
        match self {
            EType::E6 => &[
                ("phib1", 1),
                ("phib2", 2),
                ("epsb2", 2),
                ("phib3p", 3),
                ("phib3pp", 3),
                ("phib4", 4),
                ("epsb5", 5),
                ("phib6", 6),
                ("epsb6", 6),
                ("epsb8", 8),
                ("epsb9", 9),
                ("epsb12", 12),
            ],
            EType::E7 => &[
                ("epsb2", 2),
                ("phib2", 2),
                ("phib4", 4),
                ("epsb6", 6),
                ("phib6", 6),
                ("epsb8", 8),
                ("epsb10", 10),
                ("epsb12", 12),
                ("epsb14", 14),
                ("epsb18", 18),
            ],
            EType::E8 => &[
                ("epsb2", 2),
                ("phib4", 4),
                ("phib6", 6),
                ("epsb8", 8),
                ("phib10", 10),
                ("epsb12", 12),
                ("epsb14", 14),
                ("epsb18", 18),
                ("epsb20", 20),
                ("epsb24", 24),
                ("epsb30", 30),
            ],
        }
    }

    /// Coefficients of the change of generators.
    pub fn psi_coeffs(self) -> &'static [(&'static str, u32)] {
        match self {
            EType::E6 => &[("psi1", 1), ("psi2", 2), ("psi3p", 3), ("psi3pp", 3), ("psi4", 4), ("psi6", 6)],
            EType::E7 => &[("psi2", 2), ("psi4", 4), ("psi6", 6)],
            EType::E8 => &[("psi4", 4), ("psi6", 6), ("psi10", 10)],
        }
    }

    pub fn s_names(self) -> Vec<String> {
        (1..=self.rank()).map(|i| format!("s{i}")).collect()
    }

    /// Variable table holding every symbol used by the pipeline of this type.
    pub fn table(self) -> Arc<VarTable> {
        let [a, b, c, d] = self.generator_weights();
        let mut v: Vec<(String, u32)> = vec![("x".into(), 1), ("y".into(), 3), ("z".into(), 0), ("U".into(), 1)];
        for (n, w) in [("X", a), ("Y", b), ("Z", c), ("W", d)] {
            v.push((n.into(), w));
            v.push((format!("{n}b"), w));
        }
        v.extend((1..=self.rank()).map(|i| (format!("s{i}"), i as u32)));
        v.extend(self.barred_coeffs().iter().map(|(n, w)| (n.to_string(), *w)));
        v.extend(self.psi_coeffs().iter().map(|(n, w)| (n.to_string(), *w)));
        v.extend(self.eps_weights().iter().map(|w| (format!("eps{w}"), *w)));
        VarTable::new(&v).expect("distinct names")
    }
}

impl fmt::Display for EType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.rank())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown exceptional type `{0}` (expected E6, E7 or E8)")]
pub struct ParseETypeError(String);

impl FromStr for EType {
    type Err = ParseETypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "E6" => Ok(EType::E6),
            "E7" => Ok(EType::E7),
            "E8" => Ok(EType::E8),
            _ => Err(ParseETypeError(s.to_string())),
        }
    }
}
