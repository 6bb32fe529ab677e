use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials. The denominator is nonzero, coprime to
/// the numerator, and has graded-lex leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFn {
                num,
                den: Poly::one(n),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides"),
                    den.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        Self::normalized(num, den)
    }

    /// Scales an already coprime pair to a monic denominator.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFn {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<Poly> {
        if self.is_polynomial() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        // powers of a reduced fraction stay reduced
        let lc = self.den.leading_coefficient();
        debug_assert!(lc.is_one());
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RatFn::reduce(&self.num * p, self.den.clone())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Total degree of `num * den`, the pivot heuristic used by elimination.
    pub fn size_degree(&self) -> i64 {
        self.num.total_degree().finite().unwrap_or(0)
            + self.den.total_degree().finite().unwrap_or(0)
    }

    pub fn derivative(&self, var: usize) -> RatFn {
        if self.den.is_constant() {
            return RatFn {
                num: self.num.derivative(var),
                den: self.den.clone(),
            };
        }
        let top =
            &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        RatFn::reduce(top, self.den.pow(2))
    }

    pub fn substitute(&self, images: &[Poly]) -> Result<RatFn> {
        let d = self.den.substitute(images);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(RatFn::reduce(self.num.substitute(images), d))
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the
        // new numerator.
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFn::normalized(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let h = poly_gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        RatFn::normalized(num, &(&b * &d) * &g)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.nvars());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        // both inputs are reduced, so only cross factors can cancel
        let cancel = |p: &Poly, q: &Poly| {
            let g = poly_gcd(p, q);
            if g.is_one() {
                (p.clone(), q.clone())
            } else {
                (p.div_exact(&g).expect("gcd divides"), q.div_exact(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFn::normalized(&a * &c, &b * &d)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: &'a RatFn) -> RatFn {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
