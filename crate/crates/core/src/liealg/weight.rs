use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// Integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The groups the catalog needs. Weyl dimensions are closed formulas per type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    #[serde(rename = "SL2")]
    Sl2,
    #[serde(rename = "SL2xSL2")]
    Sl2Sl2,
    #[serde(rename = "SL3")]
    Sl3,
}

impl GroupType {
    pub fn rank(self) -> usize {
        match self {
            GroupType::Sl2 => 1,
            GroupType::Sl2Sl2 | GroupType::Sl3 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupType::Sl2 => "SL2",
            GroupType::Sl2Sl2 => "SL2xSL2",
            GroupType::Sl3 => "SL3",
        }
    }

    /// Simple root `alpha_i` in fundamental-weight coordinates (row `i` of the
    /// Cartan matrix).
    pub fn simple_root(self, i: usize) -> Weight {
        let cartan: &[&[i64]] = match self {
            GroupType::Sl2 => &[&[2]],
            GroupType::Sl2Sl2 => &[&[2, 0], &[0, 2]],
            GroupType::Sl3 => &[&[2, -1], &[-1, 2]],
        };
        Weight(cartan[i].to_vec())
    }

    pub fn weyl_dimension(self, w: &Weight) -> u64 {
        let c: Vec<u64> = w.0.iter().map(|&x| x.max(0) as u64).collect();
        match self {
            GroupType::Sl2 => c[0] + 1,
            GroupType::Sl2Sl2 => (c[0] + 1) * (c[1] + 1),
            GroupType::Sl3 => (c[0] + 1) * (c[1] + 1) * (c[0] + c[1] + 2) / 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_dimensions() {
        assert_eq!(GroupType::Sl2.weyl_dimension(&Weight(vec![2])), 3);
        assert_eq!(GroupType::Sl2Sl2.weyl_dimension(&Weight(vec![2, 2])), 9);
        assert_eq!(GroupType::Sl3.weyl_dimension(&Weight(vec![1, 1])), 8);
        assert_eq!(GroupType::Sl3.weyl_dimension(&Weight(vec![3, 0])), 10);
    }

    #[test]
    fn dominance() {
        assert!(Weight(vec![0, 3]).is_dominant());
        assert!(!Weight(vec![1, -1]).is_dominant());
    }
}
