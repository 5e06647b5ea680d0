//! How an odd prime `p` decomposes in `Z[zeta_l]` over the real subring, which
//! decides between the unitary (inert) and the linear (split) case.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::prime::{check_pair, ord_mod};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Unitary,
    Split,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Case::Unitary => f.write_str("unitary"),
            Case::Split => f.write_str("split"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingData {
    pub p: u64,
    pub l: u64,
    /// Multiplicative order of `p` modulo `l`.
    pub f: u64,
    pub case: Case,
    /// Order of the fixed field.
    #[serde(with = "crate::serde_big")]
    pub q: BigUint,
    /// Classification by the parity of `(l - 1) / f` (odd means unitary).
    pub parity_case: Case,
}

impl SplittingData {
    pub fn disagrees_with_parity_rule(&self) -> bool {
        self.case != self.parity_case
    }

    /// Degree of the fixed field over `F_p`.
    pub fn fixed_degree(&self) -> u64 {
        match self.case {
            Case::Unitary => self.f / 2,
            Case::Split => self.f,
        }
    }

    /// `q` as a machine word, when it fits.
    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

/// Classifies `(p, l)` by whether `-1` lies in the subgroup generated by `p`
/// in `(Z/l)^x`.
pub fn splitting_data(p: u64, l: u64) -> Result<SplittingData> {
    check_pair(p, l)?;
    let f = ord_mod(p, l)?;
    let minus_one_in_subgroup = {
        let mut acc = 1u64;
        let mut hit = false;
        for _ in 0..f {
            acc = acc * (p % l) % l;
            if acc == l - 1 {
                hit = true;
            }
        }
        hit
    };
    let case = if minus_one_in_subgroup {
        Case::Unitary
    } else {
        Case::Split
    };
    let exponent = match case {
        Case::Unitary => f / 2,
        Case::Split => f,
    };
    let q = BigUint::from(p).pow(exponent as u32);
    let parity_case = if ((l - 1) / f) % 2 == 1 {
        Case::Unitary
    } else {
        Case::Split
    };
    Ok(SplittingData {
        p,
        l,
        f,
        case,
        q,
        parity_case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let sd = splitting_data(5, 3).unwrap();
        assert_eq!((sd.f, sd.case, sd.q_u64(), sd.parity_case), (2, Case::Unitary, Some(5), Case::Unitary));
        let sd = splitting_data(11, 5).unwrap();
        assert_eq!((sd.f, sd.case, sd.q_u64(), sd.parity_case), (1, Case::Split, Some(11), Case::Split));
        let sd = splitting_data(103, 13).unwrap();
        assert_eq!((sd.f, sd.case, sd.q_u64(), sd.parity_case), (2, Case::Unitary, Some(103), Case::Split));
        assert!(sd.disagrees_with_parity_rule());
        let sd = splitting_data(3, 7).unwrap();
        assert_eq!((sd.f, sd.case, sd.q_u64()), (6, Case::Unitary, Some(27)));
    }

    #[test]
    fn unitary_iff_f_even() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for l in [3u64, 5, 7, 11, 13, 17, 19, 23] {
                if p == l {
                    continue;
                }
                let sd = splitting_data(p, l).unwrap();
                assert_eq!(sd.case == Case::Unitary, sd.f % 2 == 0);
                let q_mod_l = (&sd.q % l).to_u64().unwrap();
                match sd.case {
                    Case::Unitary => assert_eq!((q_mod_l + 1) % l, 0),
                    Case::Split => assert_eq!(q_mod_l, 1),
                }
            }
        }
    }
}
