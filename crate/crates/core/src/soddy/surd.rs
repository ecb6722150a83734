//! Exact arithmetic in `Q(√d)` for a fixed rational `d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{fraction_string, rational_sqrt_exact, to_f64, Rational};

/// `a + b·√d`; normalized so that `b = 0` whenever `d` is a rational square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QuadSurd {
    pub fn rational(a: Rational) -> Self {
        QuadSurd {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// Panics on a negative `d`. The radicand is brought to an integer with
    /// small square factors pulled out, so `√(27/4)` becomes `3/2·√3`.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() {
            return Self::rational(a);
        }
        if let Some(s) = rational_sqrt_exact(&d) {
            return Self::rational(a + b * s);
        }
        let (mut rest, den) = (d.numer() * d.denom(), d.denom().clone());
        let mut outside = BigInt::one();
        let mut p = 2u32;
        while p < 1000 {
            let sq = BigInt::from(p * p);
            while (&rest % &sq).is_zero() {
                rest /= &sq;
                outside *= p;
            }
            p += 1;
        }
        let b = b * Rational::new(outside, den);
        QuadSurd {
            a,
            b,
            d: Rational::from_integer(rest),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Common radicand and the two `√d` coefficients expressed over it.
    fn align(&self, other: &Self) -> (Rational, Rational, Rational) {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => (other.d.clone(), self.b.clone(), other.b.clone()),
            (_, true) => (self.d.clone(), self.b.clone(), other.b.clone()),
            _ if self.d == other.d => (self.d.clone(), self.b.clone(), other.b.clone()),
            _ => {
                let ratio = rational_sqrt_exact(&(&other.d / &self.d)).expect("surds from different fields");
                (self.d.clone(), self.b.clone(), &other.b * ratio)
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: `-1`, `0` or `1`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with b²d.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        if lhs > rhs {
            sa
        } else if lhs < rhs {
            sb
        } else {
            0
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(QuadSurd {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            d: self.d.clone(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.d).sqrt()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Exact {
            exact: String,
        }
        #[derive(Serialize)]
        struct Irrational {
            irrational: bool,
            a: String,
            b: String,
            d: String,
            approx: f64,
        }
        if self.is_rational() {
            serde_json::to_value(Exact {
                exact: fraction_string(&self.a),
            })
        } else {
            serde_json::to_value(Irrational {
                irrational: true,
                a: fraction_string(&self.a),
                b: fraction_string(&self.b),
                d: fraction_string(&self.d),
                approx: self.to_f64(),
            })
        }
        .expect("surd JSON")
    }
}

fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for QuadSurd {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl Add for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: &QuadSurd) -> QuadSurd {
        let (d, b1, b2) = self.align(o);
        QuadSurd::new(&self.a + &o.a, b1 + b2, d)
    }
}

impl Sub for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: &QuadSurd) -> QuadSurd {
        let (d, b1, b2) = self.align(o);
        QuadSurd::new(&self.a - &o.a, b1 - b2, d)
    }
}

impl Mul for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: &QuadSurd) -> QuadSurd {
        let (d, b1, b2) = self.align(o);
        let a = &self.a * &o.a + &b1 * &b2 * &d;
        let b = &self.a * &b2 + &b1 * &o.a;
        QuadSurd::new(a, b, d)
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            String::new()
        } else {
            format!("{}*", self.b.abs())
        };
        let op = if self.b.is_negative() { '-' } else { '+' };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{b}sqrt({})", self.d)
        } else {
            write!(f, "{}{op}{b}sqrt({})", self.a, self.d)
        }
    }
}
