//! Fuchsian signatures `(g; k₁, …, k_l, ∞, …, ∞)` and their exact invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Genus, finite periods (sorted ascending) and number of cusps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct Signature {
    genus: u64,
    periods: Vec<u64>,
    cusps: u64,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    genus: u64,
    #[serde(default)]
    periods: Vec<u64>,
    #[serde(default)]
    cusps: u64,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;

    fn try_from(raw: RawSignature) -> Result<Self> {
        Signature::new(raw.genus, raw.periods, raw.cusps)
    }
}

impl From<Signature> for RawSignature {
    fn from(s: Signature) -> Self {
        RawSignature {
            genus: s.genus,
            periods: s.periods,
            cusps: s.cusps,
        }
    }
}

impl Signature {
    /// Build a signature; periods must be at least 2 and are stored sorted.
    pub fn new(genus: u64, mut periods: Vec<u64>, cusps: u64) -> Result<Self> {
        if let Some(k) = periods.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidSignature(format!(
                "period {k} is smaller than 2"
            )));
        }
        periods.sort_unstable();
        Ok(Self {
            genus,
            periods,
            cusps,
        })
    }

    pub fn cocompact(genus: u64, periods: &[u64]) -> Result<Self> {
        Self::new(genus, periods.to_vec(), 0)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn cusps(&self) -> u64 {
        self.cusps
    }

    /// Number of cone points and cusps.
    pub fn r(&self) -> u64 {
        self.periods.len() as u64 + self.cusps
    }

    pub fn is_cocompact(&self) -> bool {
        self.cusps == 0
    }

    /// Hyperbolic area of a fundamental domain divided by 2π.
    pub fn coarea(&self) -> BigRational {
        let mut c = BigRational::from_integer(BigInt::from(2 * self.genus as i128 - 2));
        for &k in &self.periods {
            c += BigRational::new(BigInt::from(k - 1), BigInt::from(k));
        }
        c + BigRational::from_integer(BigInt::from(self.cusps))
    }

    pub fn is_valid(&self) -> bool {
        self.coarea().is_positive()
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSignature(format!(
                "{self} has non-positive coarea"
            )))
        }
    }

    /// Least common multiple of the finite periods (1 when there are none).
    pub fn lcm(&self) -> BigInt {
        self.periods
            .iter()
            .fold(BigInt::one(), |acc, &k| acc.lcm(&BigInt::from(k)))
    }

    /// `e(Γ) = d·coarea` for cocompact groups, 0 when there are cusps.
    pub fn e_gamma(&self) -> Result<BigInt> {
        self.require_valid()?;
        if !self.is_cocompact() {
            return Ok(BigInt::zero());
        }
        let e = self.coarea() * BigRational::from_integer(self.lcm());
        debug_assert!(e.is_integer());
        Ok(e.to_integer())
    }

    /// `e(Γ)` as a machine integer.
    pub fn e_gamma_u64(&self) -> Result<u64> {
        self.e_gamma()?
            .to_u64()
            .ok_or_else(|| Error::InvalidSignature(format!("e(Γ) of {self} overflows")))
    }

    /// `(m, n)`: the largest 2-adic valuation among the periods and how many periods attain it.
    pub fn two_power_data(&self) -> Result<(u32, usize)> {
        if !self.is_cocompact() {
            return Err(Error::NotCocompact);
        }
        let m = self
            .periods
            .iter()
            .map(|k| k.trailing_zeros())
            .max()
            .unwrap_or(0);
        if m == 0 {
            return Ok((0, 0));
        }
        let n = self
            .periods
            .iter()
            .filter(|k| k.trailing_zeros() >= m)
            .count();
        Ok((m, n))
    }

    /// Whether some representation with image in the group has odd Euler class.
    pub fn admits_odd(&self) -> Result<bool> {
        self.require_valid()?;
        if !self.is_cocompact() {
            return Ok(false);
        }
        Ok(self.two_power_data()?.1 % 2 == 1)
    }

    /// Bounds on the smallest genus of a surface group representation with
    /// Euler class `n·e(Γ)` and image in the group.
    pub fn genus_bounds(&self, n: u64) -> Result<(BigInt, BigInt)> {
        self.require_valid()?;
        if !self.is_cocompact() {
            return Err(Error::NotCocompact);
        }
        if n == 0 {
            return Err(Error::InvalidSignature(
                "multiplier n must be at least 1".into(),
            ));
        }
        let ne = self.e_gamma()? * BigInt::from(n);
        let lower = ne.div_ceil(&BigInt::from(2)) + 1;
        let nd = self.lcm() * BigInt::from(n);
        let exp = nd
            .to_u32()
            .ok_or_else(|| Error::InvalidSignature("exponent n·d too large".into()))?;
        let r = BigInt::from(self.periods.len());
        let upper = &nd * BigInt::from(self.genus) + num_traits::pow(r, exp as usize);
        Ok((lower, upper))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.genus)?;
        let mut entries: Vec<String> = self.periods.iter().map(|k| k.to_string()).collect();
        entries.extend((0..self.cusps).map(|_| "inf".to_string()));
        if entries.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&entries.join(","))
        }
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Parse `"g;k1,k2,...,inf"`. `"g"`, `"g;"` and `"g;-"` mean no periods.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Parse(format!("signature {s:?}: {msg}"));
        let (g, rest) = match s.split_once(';') {
            Some((g, rest)) => (g, rest),
            None => (s.as_str(), ""),
        };
        let genus = g
            .parse::<u64>()
            .map_err(|_| bad("genus is not a nonnegative integer"))?;
        let mut periods = Vec::new();
        let mut cusps = 0;
        if !rest.is_empty() && rest != "-" {
            for item in rest.split(',') {
                match item {
                    "inf" | "∞" => cusps += 1,
                    _ => {
                        let k = item.parse::<u64>().map_err(|_| bad("bad period"))?;
                        if k < 2 {
                            return Err(bad("periods must be at least 2"));
                        }
                        periods.push(k);
                    }
                }
            }
        }
        Signature::new(genus, periods, cusps)
    }
}

/// All cocompact signatures with `0 < e(Γ) ≤ kmax`, sorted by `(e(Γ), genus, periods)`.
///
/// The search covers `4g + r ≤ 2·kmax + 4` and periods dividing an lcm of at
/// most `42·kmax`.
pub fn enumerate_by_capacity(kmax: u64) -> Vec<Signature> {
    let kmax = kmax as i128;
    if kmax < 1 {
        return Vec::new();
    }
    let box_size = 2 * kmax + 4;
    let dmax = 42 * kmax;
    let mut found: Vec<(i128, Signature)> = Vec::new();
    let mut g = 0;
    while 4 * g <= box_size {
        let rmax = (box_size - 4 * g) as usize;
        let mut periods = Vec::with_capacity(rmax);
        search(g, rmax, 2, 1, 0, kmax, dmax, &mut periods, &mut found);
        g += 1;
    }
    found.sort_by(|(e1, s1), (e2, s2)| {
        (e1, s1.genus, &s1.periods).cmp(&(e2, s2.genus, &s2.periods))
    });
    found.dedup_by(|a, b| a.1 == b.1);
    found.into_iter().map(|(_, s)| s).collect()
}

/// Depth-first search over nondecreasing period lists. `lcm` is the lcm of
/// `periods` and `inv_sum` is `Σ lcm/kᵢ`.
#[allow(clippy::too_many_arguments)]
fn search(
    g: i128,
    rmax: usize,
    kmin: i128,
    lcm: i128,
    inv_sum: i128,
    kmax: i128,
    dmax: i128,
    periods: &mut Vec<u64>,
    out: &mut Vec<(i128, Signature)>,
) {
    let r = periods.len() as i128;
    // coarea numerator over the denominator `lcm`
    let num = lcm * (2 * g - 2 + r) - inv_sum;
    if num > 0 && num <= kmax {
        let sig = Signature {
            genus: g as u64,
            periods: periods.clone(),
            cusps: 0,
        };
        out.push((num, sig));
    }
    if periods.len() == rmax {
        return;
    }
    for k in kmin..=dmax {
        let new_lcm = lcm.lcm(&k);
        if new_lcm > dmax {
            continue;
        }
        // Any completion has coarea ≥ c + 1 − 1/k and lcm ≥ k, so e(Γ) ≥ k(c + 1) − 1,
        // which grows with k once c + 1 > 0.
        let c_plus_one = num + lcm;
        if c_plus_one > 0 && k * c_plus_one - lcm > kmax * lcm {
            break;
        }
        periods.push(k as u64);
        let scale = new_lcm / lcm;
        search(
            g,
            rmax,
            k,
            new_lcm,
            inv_sum * scale + new_lcm / k,
            kmax,
            dmax,
            periods,
            out,
        );
        periods.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn coarea_examples() {
        assert_eq!(sig("0;2,3,7").coarea(), rat(1, 42));
        assert_eq!(sig("2;-").coarea(), rat(2, 1));
        assert_eq!(sig("0;2,3,inf").coarea(), rat(1, 6));
    }

    #[test]
    fn validity_examples() {
        assert!(!sig("0;2,2,2,2").is_valid());
        assert!(sig("0;2,3,7").is_valid());
        assert!(sig("1;2").is_valid());
        assert!(!sig("1;-").is_valid());
    }

    #[test]
    fn e_gamma_examples() {
        assert_eq!(sig("0;2,3,7").e_gamma().unwrap(), 1.into());
        for gp in 1..6u64 {
            let s = Signature::cocompact(gp, &[2]).unwrap();
            assert_eq!(s.e_gamma().unwrap(), BigInt::from(4 * gp - 3));
        }
        assert_eq!(sig("0;2,3,inf").e_gamma().unwrap(), 0.into());
        assert!(matches!(
            sig("0;2,2,2,2").e_gamma(),
            Err(Error::InvalidSignature(_))
        ));
        for g in 2..=10u64 {
            assert_eq!(
                Signature::cocompact(g, &[]).unwrap().e_gamma_u64().unwrap(),
                2 * g - 2
            );
        }
    }

    #[test]
    fn two_power_examples() {
        assert_eq!(sig("0;2,3,7").two_power_data().unwrap(), (1, 1));
        assert_eq!(sig("0;4,4,3").two_power_data().unwrap(), (2, 2));
        assert_eq!(sig("2;-").two_power_data().unwrap(), (0, 0));
        assert_eq!(sig("0;2,3,inf").two_power_data(), Err(Error::NotCocompact));
    }

    #[test]
    fn admits_odd_examples() {
        assert!(sig("0;2,3,7").admits_odd().unwrap());
        assert!(!sig("0;4,4,3").admits_odd().unwrap());
        assert!(!sig("0;2,3,inf").admits_odd().unwrap());
    }

    #[test]
    fn genus_bound_examples() {
        assert_eq!(sig("1;2").genus_bounds(1).unwrap(), (2.into(), 3.into()));
        assert_eq!(sig("2;-").genus_bounds(1).unwrap(), (2.into(), 2.into()));
        let (lo, hi) = sig("0;2,3,7").genus_bounds(2).unwrap();
        assert_eq!(lo, 2.into());
        assert_eq!(hi, num_traits::pow(BigInt::from(3), 84));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(sig("0;7,3,2"), sig("0;2,3,7"));
        assert_eq!(sig("0;2,3,inf").to_string(), "0;2,3,inf");
        assert_eq!(sig("2").to_string(), "2;-");
        assert_eq!(sig("2;"), sig("2;-"));
        assert_eq!(sig(" 1 ; 2 "), sig("1;2"));
        assert!("x;2".parse::<Signature>().is_err());
        assert!("0;1,3".parse::<Signature>().is_err());
        assert!("0;2,,3".parse::<Signature>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = sig("0;2,3,inf");
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"genus":0,"periods":[2,3],"cusps":1}"#);
        assert_eq!(serde_json::from_str::<Signature>(&text).unwrap(), s);
        assert!(serde_json::from_str::<Signature>(r#"{"genus":0,"periods":[1]}"#).is_err());
    }

    #[test]
    fn enumerate_capacity_one() {
        let list = enumerate_by_capacity(1);
        for s in [
            "0;2,3,7", "0;2,3,8", "0;2,3,9", "0;2,3,12", "0;2,4,5", "0;2,4,6", "0;2,4,8",
            "0;2,5,5", "0;3,3,4", "1;2",
        ] {
            assert!(list.contains(&sig(s)), "{s} missing");
        }
        for s in &list {
            assert_eq!(s.e_gamma().unwrap(), 1.into());
            assert!(4 * s.genus() + s.periods().len() as u64 <= 6);
        }
    }

    #[test]
    fn enumerate_capacity_two() {
        let list = enumerate_by_capacity(2);
        assert!(list.contains(&sig("2;-")));
        assert!(list.contains(&sig("0;2,3,10")));
        let ones: Vec<_> = list
            .iter()
            .filter(|s| s.e_gamma().unwrap() == 1.into())
            .collect();
        assert!(ones.len() >= 10);
        assert!(list
            .windows(2)
            .all(|w| w[0].e_gamma().unwrap() <= w[1].e_gamma().unwrap()));
    }

    #[test]
    fn adding_a_period_increases_coarea() {
        let base = sig("1;3,5");
        let bigger = Signature::cocompact(1, &[3, 5, 4]).unwrap();
        assert!(bigger.coarea() > base.coarea());
    }

    #[test]
    fn divisibility_for_known_inclusion() {
        // (2;−) has index 4 in (1;2)
        let small = sig("2;-");
        let big = sig("1;2");
        assert_eq!(small.coarea() / big.coarea(), rat(4, 1));
        let (e, e2) = (small.e_gamma().unwrap(), big.e_gamma().unwrap());
        assert!((e % e2).is_zero());
    }
}
