//! Exact multivariate polynomials over arbitrary-precision integers.
//!
//! The variable universe is fixed: the structure scalars beta, gamma, mu,
//! the curvature parameter c, and four derivative symbols used by the
//! certification routines. Terms live in a BTreeMap keyed by graded-lex
//! monomials, so the representation is canonical and no zero coefficient
//! is ever stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Number of variables in the fixed universe.
pub const NVARS: usize = 8;

/// Variable universe. The first four are the structure scalars; the last
/// four stand for directional derivatives treated as fresh symbols during
/// elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Beta = 0,
    Gamma = 1,
    Mu = 2,
    /// The holomorphic curvature parameter c.
    HoloC = 3,
    /// e3-derivative of beta.
    BetaRate = 4,
    /// e3-derivative of gamma.
    GammaRate = 5,
    /// xi-derivative of beta.
    XiBeta = 6,
    /// xi-derivative of gamma.
    XiGamma = 7,
}

impl Var {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::Mu => "mu",
            Var::HoloC => "c",
            Var::BetaRate => "e3beta",
            Var::GammaRate => "e3gamma",
            Var::XiBeta => "xibeta",
            Var::XiGamma => "xigamma",
        }
    }
}

/// Exponent vector with graded-lex ordering (total degree first, then the
/// exponent tuple).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn of(var: Var, exp: u16) -> Self {
        let mut e = [0; NVARS];
        e[var.index()] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, var: Var) -> u16 {
        self.0[var.index()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (lhs, rhs) in e.iter_mut().zip(&other.0) {
            *lhs = lhs.checked_add(*rhs).expect("monomial degree overflow");
        }
        Monomial(e)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; requires `self.divides(other)`.
    fn div_into(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (lhs, rhs) in e.iter_mut().zip(&self.0) {
            *lhs -= rhs;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(k: i64) -> Self {
        Self::constant_big(BigInt::from(k))
    }

    pub fn constant_big(k: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !k.is_zero() {
            terms.insert(Monomial::ONE, k);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::of(v, 1), BigInt::one())
    }

    pub fn term(mon: Monomial, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mon, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Constant value if the polynomial has degree zero; `Some(0)` for the
    /// zero polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("len checked");
                (*m == Monomial::ONE).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading (maximal graded-lex) term.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    fn insert_add(&mut self, mon: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mon) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative.
    pub fn derivative(&self, var: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut em = *m;
            em.0[var.index()] = e - 1;
            out.insert_add(em, c * BigInt::from(e));
        }
        out
    }

    /// Coefficients with respect to `var`, ascending by power; the entries
    /// are polynomials in the remaining variables.
    pub fn coefficients_in(&self, var: Var) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            let mut rest = *m;
            rest.0[var.index()] = 0;
            out[k].insert_add(rest, c.clone());
        }
        out
    }

    /// Substitutes a polynomial for a variable.
    pub fn subst_poly(&self, var: Var, value: &MPoly) -> MPoly {
        let coeffs = self.coefficients_in(var);
        let mut acc = MPoly::zero();
        let mut power = MPoly::one();
        for c in coeffs {
            acc = &acc + &(&c * &power);
            power = &power * value;
        }
        acc
    }

    /// Substitutes a rational expression, tracking the denominator power:
    /// `p(var := num/den) = (sum_k a_k num^k den^(d-k)) / den^d`.
    pub fn subst_rational(&self, var: Var, value: &RationalExpr) -> RationalExpr {
        let coeffs = self.coefficients_in(var);
        let d = coeffs.len() - 1;
        let mut acc = MPoly::zero();
        for (k, a) in coeffs.iter().enumerate() {
            let t = &(a * &value.num.pow(k as u32)) * &value.den.pow((d - k) as u32);
            acc = &acc + &t;
        }
        RationalExpr::new(acc, value.den.pow(d as u32))
            .expect("denominator power of a nonzero polynomial")
    }

    /// Exact division: `Some(q)` iff `self = q * divisor` in the ring.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let (q, r) = num_integer_div_rem(&rc, dc);
            if !r.is_zero() {
                return None;
            }
            let qm = dm.div_into(&rm);
            let qt = MPoly::term(qm, q);
            rem = &rem - &(&qt * divisor);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Largest `k` with `var^k` dividing every term.
    pub fn var_content(&self, var: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(var)).min().unwrap_or(0)
    }

    /// Divides out `var^k`; requires the content to be at least `k`.
    pub fn strip_var_power(&self, var: Var, k: u16) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut e = *m;
            assert!(e.exp(var) >= k, "insufficient variable content");
            e.0[var.index()] -= k;
            out.insert_add(e, c.clone());
        }
        out
    }

    /// Gcd of all coefficients (positive), zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = gcd_big(&g, c);
        }
        g
    }

    /// Exact evaluation at an integer point (derivative symbols included).
    pub fn eval(&self, point: &[BigInt; NVARS]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [Var; NVARS] = [
            Var::Beta,
            Var::Gamma,
            Var::Mu,
            Var::HoloC,
            Var::BetaRate,
            Var::GammaRate,
            Var::XiBeta,
            Var::XiGamma,
        ];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for v in NAMES {
                let e = m.exp(v);
                if e == 1 {
                    factors.push(v.name().to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", v.name(), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Quotient of two polynomials; the denominator is nonzero as a polynomial
/// and no automatic reduction is performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalExpr {
    pub num: MPoly,
    pub den: MPoly,
}

impl RationalExpr {
    pub fn new(num: MPoly, den: MPoly) -> Option<Self> {
        (!den.is_zero()).then_some(Self { num, den })
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn add(&self, rhs: &RationalExpr) -> RationalExpr {
        RationalExpr {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn mul(&self, rhs: &RationalExpr) -> RationalExpr {
        RationalExpr { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MPoly {
        MPoly::var(x)
    }

    #[test]
    fn difference_of_squares() {
        let sum = &v(Var::Beta) + &v(Var::Gamma);
        let diff = &v(Var::Beta) - &v(Var::Gamma);
        let want = &(&v(Var::Beta) * &v(Var::Beta)) - &(&v(Var::Gamma) * &v(Var::Gamma));
        assert_eq!(&sum * &diff, want);
    }

    #[test]
    fn substitute_constant_for_c() {
        // (c - mu gamma)(mu - gamma) + mu beta^2 at c = -1
        let c = v(Var::HoloC);
        let mu = v(Var::Mu);
        let g = v(Var::Gamma);
        let b = v(Var::Beta);
        let p = &(&(&c - &(&mu * &g)) * &(&mu - &g)) + &(&mu * &b.pow(2));
        let specialized = p.subst_poly(Var::HoloC, &MPoly::constant(-1));
        let want = &(&(&MPoly::constant(-1) - &(&mu * &g)) * &(&mu - &g)) + &(&mu * &b.pow(2));
        assert_eq!(specialized, want);
    }

    #[test]
    fn binomial_coefficients() {
        let p = (&v(Var::Beta).pow(2) + &v(Var::Gamma).pow(2)).pow(3);
        assert_eq!(p.num_terms(), 4);
        let coeffs: Vec<i64> = p.terms().map(|(_, c)| i64::try_from(c.clone()).unwrap()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 3, 3]);
    }

    #[test]
    fn exact_division_round_trip() {
        let a = &(&v(Var::Beta) + &v(Var::Mu)).pow(3) * &(&v(Var::Gamma) - &MPoly::constant(7));
        let b = &(&v(Var::Beta) + &v(Var::Mu)) * &MPoly::constant(1);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(&q * &b, a);
        // Non-divisible case.
        assert!(a.div_exact(&(&v(Var::Beta) + &MPoly::constant(1))).is_none());
        // Coefficient non-divisibility.
        let three = &v(Var::Beta) * &MPoly::constant(3);
        assert!(three.div_exact(&MPoly::constant(2)).is_none());
    }

    #[test]
    fn rational_substitution_tracks_denominator() {
        // p = x^2 + 1 at x := num/den gives (num^2 + den^2) / den^2.
        let p = &v(Var::BetaRate).pow(2) + &MPoly::one();
        let num = v(Var::Beta);
        let den = &v(Var::Gamma) + &MPoly::one();
        let re = RationalExpr::new(num.clone(), den.clone()).unwrap();
        let out = p.subst_rational(Var::BetaRate, &re);
        assert_eq!(out.den, den.pow(2));
        assert_eq!(out.num, &num.pow(2) + &den.pow(2));
        // A zero denominator is not a rational expression.
        assert!(RationalExpr::new(num, MPoly::zero()).is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&v(Var::Beta).pow(3) * &v(Var::Mu)) + &v(Var::Gamma);
        let d = p.derivative(Var::Beta);
        let want = &MPoly::constant(3) * &(&v(Var::Beta).pow(2) * &v(Var::Mu));
        assert_eq!(d, want);
        let mut pt: [BigInt; NVARS] = Default::default();
        pt[Var::Beta.index()] = BigInt::from(2);
        pt[Var::Gamma.index()] = BigInt::from(-5);
        pt[Var::Mu.index()] = BigInt::from(3);
        assert_eq!(p.eval(&pt), BigInt::from(8 * 3 - 5));
    }

    #[test]
    fn display_reads_naturally() {
        let p = &(&MPoly::constant(2) * &(&v(Var::Beta).pow(2) * &v(Var::Mu))) - &v(Var::Gamma);
        assert_eq!(p.to_string(), "2*beta^2*mu - gamma");
    }
}
