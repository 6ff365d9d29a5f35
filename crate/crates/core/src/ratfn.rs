//! Rational functions in the circle variable `μ`.
//!
//! Characters of the circle are written in `λ = e^{z}`; the spin lift
//! produces half powers, so the working variable is `μ = λ^{1/2}`. Laurent
//! monomials `μ^{-k}` are represented as `1/μ^k`.

use std::fmt;

use crate::poly::QPoly;
use crate::ring::{fmt_rational, Rational, Ring};

/// `numerator / denominator` with a monic denominator and coprime parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    /// Builds and reduces `num / den`. Panics on a zero denominator.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self {
                num,
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = d.leading().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Self { num: n, den: d }
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    /// The Laurent monomial `c μ^k`, `k` of either sign.
    pub fn mu_power(c: Rational, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(QPoly::monomial(c, k as usize))
        } else {
            Self::new(
                QPoly::constant(c),
                QPoly::monomial(Rational::one(), (-k) as usize),
            )
        }
    }

    /// `μ^k - μ^{-k}`, the spin character of a rotation by weight `k`.
    pub fn spin_difference(k: i64) -> Self {
        Self::mu_power(Rational::one(), k).sub_ref(&Self::mu_power(Rational::one(), -k))
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.degree() == Some(0) && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Evaluation at a rational point; `None` at a pole.
    pub fn eval_rational(&self, t: &Rational) -> Option<Rational> {
        let d: Rational = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        let n: Rational = self.num.eval(t);
        Some(n / d)
    }

    /// True when both parts only involve even powers of `μ`, i.e. the
    /// function is a rational function of `λ`.
    pub fn is_even_in_mu(&self) -> bool {
        let even = |p: &QPoly| {
            p.coeffs()
                .iter()
                .enumerate()
                .all(|(i, c)| i % 2 == 0 || c.is_zero())
        };
        even(&self.num) && even(&self.den)
    }

    fn render(p: &QPoly, in_lambda: bool) -> String {
        if in_lambda {
            let halved: Vec<Rational> = p.coeffs().iter().step_by(2).cloned().collect();
            QPoly::new(halved).display_with("λ")
        } else {
            p.display_with("μ")
        }
    }

    /// Pretty form, in `λ` when possible, otherwise in `μ`.
    pub fn pretty(&self) -> String {
        let lam = self.is_even_in_mu();
        if let Some(c) = self.as_constant() {
            return fmt_rational(&c);
        }
        let n = Self::render(&self.num, lam);
        if self.den.degree() == Some(0) {
            return n;
        }
        let d = Self::render(&self.den, lam);
        let wrap = |s: String, p: &QPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(QPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_rem(&g).0;
        let b = rhs.den.div_rem(&g).0;
        let num = self.num.mul(&b).add(&rhs.num.mul(&a));
        Self::new(num, a.mul(&rhs.den))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.degree() == Some(0) && rhs.den.degree() == Some(0) {
            return Self {
                num: self.num.mul(&rhs.num),
                den: QPoly::one(),
            };
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = rhs.den.div_rem(&g1).0;
        let n2 = rhs.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        Self::new(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg_ref(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}
