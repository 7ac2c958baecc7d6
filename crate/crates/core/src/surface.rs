//! Invariant algebra for compact surfaces with punctures and boundary.
//!
//! A surface is recorded by four numbers: orientability, genus (crosscap
//! count when nonorientable, handle count when orientable), punctures and
//! boundary circles. Two surfaces are homeomorphic iff all four agree, so
//! every classification question in this crate bottoms out here.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    /// The Euler characteristic formula does not invert to an integer genus.
    #[error("parity error: genus formula is non-integral for {0}")]
    Parity(String),
    #[error("negative genus: {0}")]
    NegativeGenus(String),
    /// Operation is defined only for a subfamily of surfaces.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("bad surface literal `{0}`")]
    BadLiteral(String),
}

/// Classification data of a compact surface: orientability, genus,
/// punctures (k) and boundary circles (r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub orientable: bool,
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

impl SurfaceInvariants {
    pub fn orientable(genus: u32, punctures: u32, boundary: u32) -> Self {
        SurfaceInvariants { orientable: true, genus, punctures, boundary }
    }

    /// Nonorientable surface; genus is the crosscap count and must be >= 1.
    pub fn nonorientable(genus: u32, punctures: u32, boundary: u32) -> Self {
        debug_assert!(genus >= 1, "nonorientable surface needs genus >= 1");
        SurfaceInvariants { orientable: false, genus, punctures, boundary }
    }

    pub fn sphere() -> Self {
        Self::orientable(0, 0, 0)
    }

    pub fn disc() -> Self {
        Self::orientable(0, 0, 1)
    }

    pub fn annulus() -> Self {
        Self::orientable(0, 0, 2)
    }

    pub fn moebius_band() -> Self {
        Self::nonorientable(1, 0, 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let g = self.genus as i64;
        let kr = self.punctures as i64 + self.boundary as i64;
        if self.orientable {
            2 - 2 * g - kr
        } else {
            2 - g - kr
        }
    }

    /// Invert the Euler characteristic formula to recover the genus.
    pub fn from_chi(
        orientable: bool,
        chi: i64,
        punctures: u32,
        boundary: u32,
    ) -> Result<Self, SurfaceError> {
        let twice_or_once = 2 - chi - punctures as i64 - boundary as i64;
        if orientable {
            if twice_or_once % 2 != 0 {
                return Err(SurfaceError::Parity(format!(
                    "orientable, chi={chi}, k={punctures}, r={boundary}"
                )));
            }
            let g = twice_or_once / 2;
            if g < 0 {
                return Err(SurfaceError::NegativeGenus(format!(
                    "orientable, chi={chi}, k={punctures}, r={boundary}"
                )));
            }
            Ok(Self::orientable(g as u32, punctures, boundary))
        } else {
            // crosscap count; 0 crosscaps would not be nonorientable
            if twice_or_once < 1 {
                return Err(SurfaceError::NegativeGenus(format!(
                    "nonorientable, chi={chi}, k={punctures}, r={boundary}"
                )));
            }
            Ok(Self::nonorientable(twice_or_once as u32, punctures, boundary))
        }
    }

    /// Invariants of the orientation double cover of a closed nonorientable
    /// surface: N_g with k punctures is covered by the orientable surface of
    /// genus g-1 with 2k punctures.
    pub fn orientation_double_cover(&self) -> Result<Self, SurfaceError> {
        if self.orientable {
            return Err(SurfaceError::NotApplicable(
                "orientation double cover of an orientable surface".into(),
            ));
        }
        if self.boundary != 0 {
            return Err(SurfaceError::NotApplicable(
                "orientation double cover with boundary".into(),
            ));
        }
        Ok(Self::orientable(self.genus - 1, 2 * self.punctures, 0))
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    pub fn is_disc(&self) -> bool {
        *self == Self::disc()
    }

    pub fn is_once_punctured_disc(&self) -> bool {
        self.orientable && self.genus == 0 && self.punctures == 1 && self.boundary == 1
    }

    pub fn is_annulus(&self) -> bool {
        *self == Self::annulus()
    }

    pub fn is_moebius_band(&self) -> bool {
        *self == Self::moebius_band()
    }

    /// chi = -1, genus 0 orientable: a pair of pants up to trading boundary
    /// circles for punctures.
    pub fn is_pants_class(&self) -> bool {
        self.orientable && self.genus == 0 && self.punctures + self.boundary == 3
    }

    /// chi = -1, one crosscap: a two-holed projective plane up to trading
    /// boundary circles for punctures.
    pub fn is_two_holed_projective_class(&self) -> bool {
        !self.orientable && self.genus == 1 && self.punctures + self.boundary == 2
    }

    /// Parse a literal like `N5k1b0`, `S2k0b2`, `N3`, `S0k1`. `k0` and `b0`
    /// may be omitted.
    pub fn parse_literal(s: &str) -> Result<Self, SurfaceError> {
        let bad = || SurfaceError::BadLiteral(s.to_string());
        let mut chars = s.chars().peekable();
        let orientable = match chars.next() {
            Some('N') => false,
            Some('S') => true,
            _ => return Err(bad()),
        };
        let read_num = |chars: &mut std::iter::Peekable<std::str::Chars>| -> Option<u32> {
            let mut digits = String::new();
            while let Some(c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(*c);
                    chars.next();
                } else {
                    break;
                }
            }
            digits.parse().ok()
        };
        let genus = read_num(&mut chars).ok_or_else(bad)?;
        let mut punctures = 0;
        let mut boundary = 0;
        while let Some(c) = chars.next() {
            match c {
                'k' => punctures = read_num(&mut chars).ok_or_else(bad)?,
                'b' => boundary = read_num(&mut chars).ok_or_else(bad)?,
                _ => return Err(bad()),
            }
        }
        if !orientable && genus == 0 {
            return Err(SurfaceError::NegativeGenus(s.to_string()));
        }
        Ok(SurfaceInvariants { orientable, genus, punctures, boundary })
    }

    /// Canonical literal: `k` always written, `b` omitted when zero.
    pub fn literal(&self) -> String {
        let tag = if self.orientable { 'S' } else { 'N' };
        if self.boundary == 0 {
            format!("{}{}k{}", tag, self.genus, self.punctures)
        } else {
            format!("{}{}k{}b{}", tag, self.genus, self.punctures, self.boundary)
        }
    }
}

impl fmt::Display for SurfaceInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

/// Rank of the distinguished maximal free abelian twist subgroup on a closed
/// nonorientable surface of genus g with k punctures.
///
/// With a separating twist in the group the rank is (3g-7)/2 + k for odd g
/// and (3g-8)/2 + k for even g. Without one, only the even-genus value
/// (3g-6)/2 + k is defined; odd genus is a parity error.
pub fn expected_abelian_rank(
    g: u32,
    k: u32,
    contains_separating_twist: bool,
) -> Result<u32, SurfaceError> {
    if g < 5 {
        return Err(SurfaceError::NotApplicable(format!("genus {g} < 5")));
    }
    let g = g as i64;
    let k = k as i64;
    let numerator = if contains_separating_twist {
        if g % 2 == 1 {
            3 * g - 7
        } else {
            3 * g - 8
        }
    } else {
        3 * g - 6
    };
    if numerator % 2 != 0 {
        return Err(SurfaceError::Parity(format!("g={g}, k={k}, rank formula {numerator}/2")));
    }
    Ok((numerator / 2 + k) as u32)
}

/// Even-genus rank variant with the crosscap-pair parameter s:
/// (3g-6-2s)/2 + k, for 0 <= s <= (g-2)/2.
pub fn expected_abelian_rank_with_s(g: u32, k: u32, s: u32) -> Result<u32, SurfaceError> {
    if g % 2 != 0 {
        return Err(SurfaceError::Parity(format!("g={g} odd, s-variant needs even genus")));
    }
    if g < 4 {
        return Err(SurfaceError::NotApplicable(format!("genus {g} < 4")));
    }
    if s > (g - 2) / 2 {
        return Err(SurfaceError::NotApplicable(format!("s={s} > (g-2)/2 for g={g}")));
    }
    let value = (3 * g as i64 - 6 - 2 * s as i64) / 2 + k as i64;
    Ok(value as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristic_examples() {
        // closed nonorientable genus 5 with one puncture
        assert_eq!(SurfaceInvariants::nonorientable(5, 1, 0).euler_characteristic(), -4);
        assert_eq!(SurfaceInvariants::sphere().euler_characteristic(), 2);
        // pair of pants
        assert_eq!(SurfaceInvariants::orientable(0, 0, 3).euler_characteristic(), -1);
    }

    #[test]
    fn from_chi_examples() {
        assert_eq!(
            SurfaceInvariants::from_chi(false, -3, 0, 1).unwrap(),
            SurfaceInvariants::nonorientable(4, 0, 1)
        );
        assert_eq!(
            SurfaceInvariants::from_chi(true, 0, 0, 0).unwrap(),
            SurfaceInvariants::orientable(1, 0, 0)
        );
        // 2 - (-3) - 0 - 1 = 4 is even: genus 2, no parity error
        assert_eq!(
            SurfaceInvariants::from_chi(true, -3, 0, 1).unwrap(),
            SurfaceInvariants::orientable(2, 0, 1)
        );
        assert!(matches!(
            SurfaceInvariants::from_chi(true, -2, 0, 1),
            Err(SurfaceError::Parity(_))
        ));
        assert!(matches!(
            SurfaceInvariants::from_chi(true, 6, 0, 0),
            Err(SurfaceError::NegativeGenus(_))
        ));
        assert!(matches!(
            SurfaceInvariants::from_chi(false, 2, 0, 0),
            Err(SurfaceError::NegativeGenus(_))
        ));
    }

    #[test]
    fn double_cover_examples() {
        let n5k2 = SurfaceInvariants::nonorientable(5, 2, 0);
        assert_eq!(n5k2.orientation_double_cover().unwrap(), SurfaceInvariants::orientable(4, 4, 0));
        let n1 = SurfaceInvariants::nonorientable(1, 0, 0);
        assert_eq!(n1.orientation_double_cover().unwrap(), SurfaceInvariants::sphere());
        let n6k1 = SurfaceInvariants::nonorientable(6, 1, 0);
        let cover = n6k1.orientation_double_cover().unwrap();
        assert_eq!(cover, SurfaceInvariants::orientable(5, 2, 0));
        assert_eq!(cover.euler_characteristic(), 2 * n6k1.euler_characteristic());
        assert!(SurfaceInvariants::orientable(2, 0, 0).orientation_double_cover().is_err());
        assert!(SurfaceInvariants::nonorientable(3, 0, 1).orientation_double_cover().is_err());
    }

    #[test]
    fn double_cover_doubles_chi_broadly() {
        for g in 1..=12 {
            for k in 0..=4 {
                let s = SurfaceInvariants::nonorientable(g, k, 0);
                let cover = s.orientation_double_cover().unwrap();
                assert_eq!(cover, SurfaceInvariants::orientable(g - 1, 2 * k, 0));
                assert_eq!(cover.euler_characteristic(), 2 * s.euler_characteristic());
            }
        }
    }

    #[test]
    fn from_chi_round_trip() {
        for orientable in [false, true] {
            for genus in 0..6u32 {
                if !orientable && genus == 0 {
                    continue;
                }
                for punctures in 0..4 {
                    for boundary in 0..4 {
                        let s = SurfaceInvariants { orientable, genus, punctures, boundary };
                        let back = SurfaceInvariants::from_chi(
                            orientable,
                            s.euler_characteristic(),
                            punctures,
                            boundary,
                        )
                        .unwrap();
                        assert_eq!(back, s);
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_rank_examples() {
        assert_eq!(expected_abelian_rank(7, 0, true).unwrap(), 7);
        assert_eq!(expected_abelian_rank(6, 0, true).unwrap(), 5);
        assert_eq!(expected_abelian_rank_with_s(6, 0, 1).unwrap(), 5);
        assert_eq!(expected_abelian_rank_with_s(6, 2, 0).unwrap(), 8);
        assert!(matches!(expected_abelian_rank_with_s(5, 0, 0), Err(SurfaceError::Parity(_))));
        assert!(matches!(expected_abelian_rank(5, 0, false), Err(SurfaceError::Parity(_))));
        assert!(expected_abelian_rank_with_s(6, 0, 3).is_err());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["N5k0", "S2k0b2", "N5k1", "S0k0", "N1k0", "N3k2b1"] {
            let parsed = SurfaceInvariants::parse_literal(s).unwrap();
            assert_eq!(parsed.literal(), s);
        }
        // omitted fields default to zero
        assert_eq!(
            SurfaceInvariants::parse_literal("N5").unwrap(),
            SurfaceInvariants::nonorientable(5, 0, 0)
        );
        assert_eq!(
            SurfaceInvariants::parse_literal("S2b2").unwrap(),
            SurfaceInvariants::orientable(2, 0, 2)
        );
        assert!(SurfaceInvariants::parse_literal("X2").is_err());
        assert!(SurfaceInvariants::parse_literal("N0").is_err());
    }
}
