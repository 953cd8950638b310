//! Rational functions in one variable t over Q(ζ), kept in a canonical
//! reduced form so that structural equality is mathematical equality.
//!
//! Canonical form: the denominator is a polynomial with lowest exponent 0
//! and constant coefficient 1, sharing no factor with the numerator's
//! polynomial part; any monomial shift lives in the numerator. Zero is 0/1.

use super::cyclotomic::Cyclotomic;
use super::laurent::LaurentPoly;
use num_rational::BigRational;
use num_traits::Signed;

/// The exponent spread of a rational function: highest minus lowest degree
/// of the numerator, minus the same for the denominator. The zero function
/// has width −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Width {
    NegInfinity,
    Finite(i64),
}

impl Width {
    pub fn as_finite(self) -> Option<i64> {
        match self {
            Width::NegInfinity => None,
            Width::Finite(n) => Some(n),
        }
    }
}

impl std::fmt::Display for Width {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Width::NegInfinity => write!(f, "-inf"),
            Width::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl serde::Serialize for Width {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Width::NegInfinity => s.serialize_str("MINUS_INFINITY"),
            Width::Finite(n) => s.serialize_i64(*n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::new(p, LaurentPoly::one())
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::from_integer(n))
    }

    /// Builds num/den and reduces to canonical form. den must be nonzero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let num_low = num.lowest_exponent().unwrap();
        let den_low = den.lowest_exponent().unwrap();
        let n = num.shift(-num_low);
        let d = den.shift(-den_low);
        let g = n.gcd(&d);
        let (n, rn) = n.divmod(&g);
        let (d, rd) = d.divmod(&g);
        debug_assert!(rn.is_zero() && rd.is_zero());
        // gcd removal cannot introduce a factor of t: both parts keep a
        // nonzero constant term, so the rescale below is always defined.
        let scale = d.coeff(0).inverse();
        let num = n.scale(&scale).shift(num_low - den_low);
        let den = d.scale(&scale);
        RatFunc { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is trivial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inverse(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn scale(&self, c: &Cyclotomic) -> RatFunc {
        self.mul(&RatFunc::from_cyclotomic(c.clone()))
    }

    pub fn width(&self) -> Width {
        match (self.num.exponent_spread(), self.den.exponent_spread()) {
            (None, _) => Width::NegInfinity,
            (Some(n), Some(d)) => Width::Finite(n - d),
            (Some(_), None) => unreachable!("denominator is never zero"),
        }
    }
}

/// The unit ±ζ_k^a · t^b relating x to y, if one exists.
fn unit_quotient(x: &RatFunc, y: &RatFunc, k: u32) -> Option<(bool, i64, i64)> {
    if y.is_zero() {
        return None;
    }
    let q = x.div(y);
    if !q.den.is_one() || q.num.num_terms() != 1 {
        return None;
    }
    let (b, c) = q.num.terms().next().map(|(e, c)| (e, c.clone())).unwrap();
    for a in 0..k as i64 {
        let z = Cyclotomic::zeta_pow(k, a);
        if c == z {
            return Some((false, a, b));
        }
        if c == z.neg() {
            return Some((true, a, b));
        }
    }
    None
}

/// Equality up to the units ±ζ_k^a·t^b, the natural equivalence for
/// torsion values.
pub fn w_equal(x: &RatFunc, y: &RatFunc, k: u32) -> bool {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => true,
        (true, false) | (false, true) => false,
        (false, false) => unit_quotient(x, y, k).is_some(),
    }
}

/// A nonzero rational function considered up to ±ζ_k^a·t^b, stored as the
/// canonical representative of its unit class: numerator and denominator
/// both have lowest exponent 0, the denominator's constant coefficient is
/// 1, and the numerator is scaled by the unique sign-and-root-of-unity
/// factor whose lowest coefficient has the lexicographically smallest
/// coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionValue {
    rep: RatFunc,
    order: u32,
}

impl TorsionValue {
    pub fn new(value: RatFunc, order: u32) -> Self {
        assert!(!value.is_zero(), "torsion value must be nonzero");
        assert!(order >= 1);
        let shift = -value.numerator().lowest_exponent().unwrap();
        let num = value.numerator().shift(shift);
        let den = value.denominator().clone();
        let low = num.coeff(0);
        let mut rational_pick: Option<Cyclotomic> = None;
        let mut best: Option<(Vec<BigRational>, Cyclotomic)> = None;
        for signed in [false, true] {
            for a in 0..order as i64 {
                let mut u = Cyclotomic::zeta_pow(order, a);
                if signed {
                    u = u.neg();
                }
                let candidate = u.mul(&low);
                // a positive rational lowest coefficient is reachable by at
                // most one unit, and is the preferred normalization
                if rational_pick.is_none() {
                    if let Some(q) = candidate.as_rational() {
                        if q.is_positive() {
                            rational_pick = Some(u.clone());
                        }
                    }
                }
                let key = candidate.coeff_vector_at(order);
                let better = match &best {
                    None => true,
                    Some((k0, _)) => key < *k0,
                };
                if better {
                    best = Some((key, u));
                }
            }
        }
        let u = rational_pick.unwrap_or_else(|| best.unwrap().1);
        let rep = RatFunc {
            num: num.scale(&u),
            den,
        };
        TorsionValue { rep, order }
    }

    pub fn value(&self) -> &RatFunc {
        &self.rep
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn width(&self) -> Width {
        self.rep.width()
    }

    pub fn mul(&self, other: &TorsionValue) -> TorsionValue {
        assert_eq!(self.order, other.order, "mixed coefficient orders");
        TorsionValue::new(self.rep.mul(&other.rep), self.order)
    }

    pub fn inverse(&self) -> TorsionValue {
        TorsionValue::new(self.rep.inverse(), self.order)
    }
}
