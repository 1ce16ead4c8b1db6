//! Exact finite-`n` probabilities of the events "connected", "no cycles",
//! "no component larger than `r`" and "`m` vertices lie in components
//! larger than `r`", plus brute-force enumerators for tiny graphs.
//!
//! When the edge probability is rational and `n ≤ 200`, values are computed
//! exactly (see [`rational`]); otherwise a log-space floating point
//! recursion is used (see [`float`]).

pub mod arith;
pub mod brute;
pub mod dp;
pub mod float;
pub mod modular;
pub mod partition;
pub mod rational;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combin::big_ln;
use crate::error::{Error, Result};
use crate::prob::LogProb;

pub use brute::{brute_force_enumerate, brute_force_grounded};
pub use partition::exact_q;

/// Largest `n` handled in exact rational arithmetic.
pub const RATIONAL_MAX_N: usize = 200;

/// Per-edge occupation probability.
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeProb {
    Rational(BigRational),
    Real(f64),
}

impl EdgeProb {
    pub fn rational(p: BigRational) -> Result<Self> {
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::Domain(format!("edge probability {p} is outside [0, 1]")));
        }
        Ok(EdgeProb::Rational(p))
    }

    pub fn real(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("edge probability {p} is outside [0, 1]")));
        }
        Ok(EdgeProb::Real(p))
    }

    /// `p = α/n`, exactly.
    pub fn from_alpha(n: usize, alpha: &BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        Self::rational(alpha / BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_alpha_f64(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        Self::real(alpha / n as f64)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            EdgeProb::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            EdgeProb::Real(x) => *x,
        }
    }

    /// The rational value; reals are converted without rounding.
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            EdgeProb::Rational(r) => Ok(r.clone()),
            EdgeProb::Real(x) => BigRational::from_float(*x)
                .ok_or_else(|| Error::Domain(format!("{x} is not finite"))),
        }
    }

    pub fn to_real(&self) -> EdgeProb {
        EdgeProb::Real(self.as_f64())
    }
}

impl fmt::Display for EdgeProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeProb::Rational(r) => write!(f, "{r}"),
            EdgeProb::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `"3"`, `"1/3"`, `"0.25"` or `"2.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int.starts_with('-');
    let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        value = -value;
    }
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(value, num_traits::pow(ten, (-scale) as usize))
    })
}

/// The event whose probability is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventSpec {
    Connected,
    NoCycles,
    AllSmall(usize),
    NoCyclesAndSmall(usize),
    MacroVolume { r: usize, m: usize },
}

impl EventSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        let r = match *self {
            EventSpec::Connected | EventSpec::NoCycles => return Ok(()),
            EventSpec::AllSmall(r) | EventSpec::NoCyclesAndSmall(r) => r,
            EventSpec::MacroVolume { r, m } => {
                if m > n {
                    return Err(Error::Event(format!("m = {m} exceeds n = {n}")));
                }
                r
            }
        };
        if r == 0 || r > n {
            return Err(Error::Event(format!("r = {r} must lie in [1, {n}]")));
        }
        Ok(())
    }

    /// Whether a graph with the given component sizes (any order) and cycle
    /// status belongs to the event.
    pub fn holds(&self, sizes: &[usize], acyclic: bool) -> bool {
        let largest = sizes.iter().copied().max().unwrap_or(0);
        match *self {
            EventSpec::Connected => sizes.len() <= 1,
            EventSpec::NoCycles => acyclic,
            EventSpec::AllSmall(r) => largest <= r,
            EventSpec::NoCyclesAndSmall(r) => acyclic && largest <= r,
            EventSpec::MacroVolume { r, m } => sizes.iter().filter(|&&s| s > r).sum::<usize>() == m,
        }
    }
}

impl fmt::Display for EventSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventSpec::Connected => write!(f, "connected"),
            EventSpec::NoCycles => write!(f, "no-cycles"),
            EventSpec::AllSmall(r) => write!(f, "all-small(r={r})"),
            EventSpec::NoCyclesAndSmall(r) => write!(f, "forest-small(r={r})"),
            EventSpec::MacroVolume { r, m } => write!(f, "macro-volume(r={r},m={m})"),
        }
    }
}

/// An exact probability `num / den`.
#[derive(Debug, Clone)]
pub struct ExactProb {
    num: BigUint,
    den: BigUint,
}

impl ExactProb {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ExactProb { num, den }
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    pub fn log_prob(&self) -> LogProb {
        if self.num.is_zero() {
            LogProb::ZERO
        } else {
            LogProb::from_rounded(big_ln(&self.num) - big_ln(&self.den))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.log_prob().prob()
    }
}

impl PartialEq for ExactProb {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ExactProb {}

impl PartialOrd for ExactProb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactProb {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

pub(crate) fn rational_to_log_prob(x: &BigRational) -> LogProb {
    if x.is_zero() {
        return LogProb::ZERO;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    LogProb::from_rounded(big_ln(num) - big_ln(den))
}

/// The route a probability is computed by.
fn exact_route(n: usize, p: &EdgeProb) -> Option<&BigRational> {
    match p {
        EdgeProb::Rational(r) if n <= RATIONAL_MAX_N => Some(r),
        _ => None,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `ln P(G(n, p) is connected)`.
pub fn exact_connectivity(n: usize, p: &EdgeProb) -> Result<LogProb> {
    check_n(n)?;
    match exact_route(n, p) {
        Some(r) => Ok(rational::connectivity(n, r)?.log_prob()),
        None => LogProb::new(float::connectivity_all(p.as_f64(), n)[n]),
    }
}

/// `ln P(no cycles and no component larger than r)`; `r = None` means no
/// size constraint.
pub fn exact_forest(n: usize, p: &EdgeProb, r: Option<usize>) -> Result<LogProb> {
    check_n(n)?;
    let r = r.unwrap_or(n);
    EventSpec::NoCyclesAndSmall(r).validate(n)?;
    match exact_route(n, p) {
        Some(x) => Ok(rational::forest(n, x, r)?.log_prob()),
        None => LogProb::new(float::forest(p.as_f64(), n, r).min(0.0)),
    }
}

/// `ln P(no component larger than r)`.
pub fn exact_small_components(n: usize, p: &EdgeProb, r: usize) -> Result<LogProb> {
    check_n(n)?;
    EventSpec::AllSmall(r).validate(n)?;
    match exact_route(n, p) {
        Some(x) => Ok(rational::small_components(n, x, r)?.log_prob()),
        None => LogProb::new(float::small_components(p.as_f64(), n, r).min(0.0)),
    }
}

/// `ln P(|V_r| = m)`, where `V_r` is the set of vertices in components with
/// more than `r` vertices. Infeasible `m` (`0 < m ≤ r`) gives probability 0.
pub fn exact_macro_volume(n: usize, p: &EdgeProb, r: usize, m: usize) -> Result<LogProb> {
    check_n(n)?;
    EventSpec::MacroVolume { r, m }.validate(n)?;
    Ok(exact_macro_volume_law(n, p, r)?.swap_remove(m))
}

/// `ln P(|V_r| = m)` for every `m = 0..=n`.
pub fn exact_macro_volume_law(n: usize, p: &EdgeProb, r: usize) -> Result<Vec<LogProb>> {
    check_n(n)?;
    EventSpec::MacroVolume { r, m: 0 }.validate(n)?;
    match exact_route(n, p) {
        Some(x) => Ok(rational::macro_volume_law(n, x, r)?.iter().map(ExactProb::log_prob).collect()),
        None => float::macro_volume_law(p.as_f64(), n, r)
            .into_iter()
            .map(|x| LogProb::new(x.min(0.0)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rat(1, 400));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn edge_prob_domain() {
        assert!(EdgeProb::rational(rat(3, 2)).is_err());
        assert!(EdgeProb::real(-0.1).is_err());
        assert_eq!(EdgeProb::from_alpha(50, &rat(3, 1)).unwrap(), EdgeProb::Rational(rat(3, 50)));
        assert!(EdgeProb::from_alpha(2, &rat(3, 1)).is_err());
    }

    #[test]
    fn event_validation() {
        assert!(EventSpec::AllSmall(0).validate(5).is_err());
        assert!(EventSpec::AllSmall(6).validate(5).is_err());
        assert!(EventSpec::MacroVolume { r: 2, m: 6 }.validate(5).is_err());
        assert!(EventSpec::MacroVolume { r: 2, m: 1 }.validate(5).is_ok());
    }

    #[test]
    fn exact_prob_ordering() {
        let a = ExactProb::new(BigUint::from(1u32), BigUint::from(3u32));
        let b = ExactProb::new(BigUint::from(2u32), BigUint::from(6u32));
        let c = ExactProb::new(BigUint::from(1u32), BigUint::from(2u32));
        assert_eq!(a, b);
        assert!(a < c);
        assert!((c.log_prob().ln() - 0.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn dispatch_agrees_between_routes() {
        let n = 30;
        let exact = EdgeProb::from_alpha(n, &rat(3, 2)).unwrap();
        let real = exact.to_real();
        let pairs = [
            (exact_connectivity(n, &exact).unwrap(), exact_connectivity(n, &real).unwrap()),
            (exact_forest(n, &exact, None).unwrap(), exact_forest(n, &real, None).unwrap()),
            (exact_forest(n, &exact, Some(4)).unwrap(), exact_forest(n, &real, Some(4)).unwrap()),
            (exact_small_components(n, &exact, 5).unwrap(), exact_small_components(n, &real, 5).unwrap()),
            (exact_macro_volume(n, &exact, 3, 20).unwrap(), exact_macro_volume(n, &real, 3, 20).unwrap()),
        ];
        for (a, b) in pairs {
            assert!((a.ln() - b.ln()).abs() < 1e-10 * a.ln().abs().max(1.0), "{a} vs {b}");
        }
    }
}
