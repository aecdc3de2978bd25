//! Exact arithmetic in `Q(t)`.
//!
//! [`PolyT`] is a dense univariate polynomial over arbitrary-precision
//! rationals, [`RatFunc`] a quotient of two of them kept in lowest terms with
//! a monic denominator. Because every value is canonical, structural equality
//! is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::partitions::WeakComposition;

pub type BigQ = BigRational;

pub fn bigq(n: i64) -> BigQ {
    BigQ::from_integer(BigInt::from(n))
}

pub fn bigq_frac(n: i64, d: i64) -> BigQ {
    BigQ::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial in `t`, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyT {
    coeffs: Vec<BigQ>,
}

impl PolyT {
    pub fn new(mut coeffs: Vec<BigQ>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        PolyT::new(c.iter().map(|&x| bigq(x)).collect())
    }

    pub fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyT::constant(BigQ::one())
    }

    pub fn constant(c: BigQ) -> Self {
        PolyT::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigQ, k: usize) -> Self {
        if c.is_zero() {
            return PolyT::zero();
        }
        let mut v = vec![BigQ::zero(); k + 1];
        v[k] = c;
        PolyT { coeffs: v }
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        PolyT::monomial(BigQ::one(), k)
    }

    pub fn coeffs(&self) -> &[BigQ] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigQ {
        self.coeffs.get(k).cloned().unwrap_or_else(BigQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigQ {
        self.coeffs.last().cloned().unwrap_or_else(BigQ::zero)
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigQ) -> PolyT {
        if c.is_zero() {
            return PolyT::zero();
        }
        PolyT {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> PolyT {
        if self.is_zero() {
            return PolyT::zero();
        }
        let mut v = vec![BigQ::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        PolyT { coeffs: v }
    }

    pub fn pow(&self, e: usize) -> PolyT {
        let mut acc = PolyT::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over `Q`.
    pub fn div_rem(&self, b: &PolyT) -> Result<(PolyT, PolyT)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let lb = b.leading();
        if r.len() <= db {
            return Ok((PolyT::zero(), self.clone()));
        }
        let mut q = vec![BigQ::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lb;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((PolyT::new(q), PolyT::new(r)))
    }

    /// Division that must be exact; a nonzero remainder is reported as an error.
    pub fn exact_div(&self, b: &PolyT) -> Result<PolyT> {
        let (q, r) = self.div_rem(b)?;
        if !r.is_zero() {
            return Err(Error::NotPolynomial(format!("({self}) / ({b})")));
        }
        Ok(q)
    }

    pub fn eval(&self, x: &BigQ) -> BigQ {
        let mut acc = BigQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(t^d)`.
    pub fn subst_power(&self, d: usize) -> PolyT {
        assert!(d >= 1, "substitution exponent must be positive");
        if d == 1 || self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigQ::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * d] = c.clone();
        }
        PolyT { coeffs: v }
    }

    /// Coefficient reversal `t^{deg} p(1/t)`.
    fn reversed(&self) -> PolyT {
        let mut v = self.coeffs.clone();
        v.reverse();
        PolyT::new(v)
    }

    pub fn monic(&self) -> PolyT {
        if self.is_zero() {
            return PolyT::zero();
        }
        let l = self.leading();
        self.scale(&l.recip())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Monic greatest common divisor, computed by a primitive
    /// pseudo-remainder sequence over `Z`.
    pub fn gcd(&self, other: &PolyT) -> PolyT {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return PolyT::one();
        }
        // t^a * u and t^b * v with u, v coprime to t share t^{min(a,b)}.
        let va = self.valuation().unwrap();
        let vb = other.valuation().unwrap();
        let tpow = va.min(vb);
        let a = PolyT::new(self.coeffs[va..].to_vec());
        let b = PolyT::new(other.coeffs[vb..].to_vec());
        let g = if a.degree() == Some(0) || b.degree() == Some(0) {
            PolyT::one()
        } else {
            let mut x = primitive_int(&a);
            let mut y = primitive_int(&b);
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
            }
            while !(y.len() == 1 || y.is_empty()) {
                let r = primitive_of(pseudo_rem(&x, &y));
                x = y;
                y = r;
            }
            if y.is_empty() {
                PolyT::new(x.into_iter().map(BigQ::from_integer).collect()).monic()
            } else {
                PolyT::one()
            }
        };
        g.shift(tpow)
    }
}

fn primitive_int(p: &PolyT) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in &p.coeffs {
        l = l.lcm(c.denom());
    }
    let v: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    primitive_of(v)
}

fn primitive_of(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

// lc(b)^{deg a - deg b + 1} a mod b, over Z.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add for &PolyT {
    type Output = PolyT;
    fn add(self, o: &PolyT) -> PolyT {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyT::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &PolyT {
    type Output = PolyT;
    fn sub(self, o: &PolyT) -> PolyT {
        self + &(-o)
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyT {
    type Output = PolyT;
    fn mul(self, o: &PolyT) -> PolyT {
        if self.is_zero() || o.is_zero() {
            return PolyT::zero();
        }
        let mut v = vec![BigQ::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolyT::new(v)
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(PolyT, Add, add);
forward_owned!(PolyT, Sub, sub);
forward_owned!(PolyT, Mul, mul);

fn fmt_coeff_poly(coeffs: &[BigQ], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if k == 0 {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{a}*{mono}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coeff_poly(&self.coeffs, f)
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyT({self})")
    }
}

/// A reduced rational function `num/den` with monic `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: PolyT,
    den: PolyT,
}

impl RatFunc {
    pub fn new(num: PolyT, den: PolyT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: PolyT, den: PolyT) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let l = den.leading();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = l.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: PolyT::zero(),
            den: PolyT::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(PolyT::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(PolyT::constant(bigq(n)))
    }

    pub fn from_bigq(c: BigQ) -> Self {
        RatFunc::from_poly(PolyT::constant(c))
    }

    pub fn from_poly(p: PolyT) -> Self {
        RatFunc {
            num: p,
            den: PolyT::one(),
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        RatFunc::from_poly(PolyT::t_pow(1))
    }

    /// `t^k` for any integer `k`; negative powers live in the denominator.
    pub fn t_pow(k: i64) -> Self {
        if k >= 0 {
            RatFunc::from_poly(PolyT::t_pow(k as usize))
        } else {
            RatFunc {
                num: PolyT::one(),
                den: PolyT::t_pow((-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &PolyT {
        &self.num
    }

    pub fn den(&self) -> &PolyT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Result<PolyT> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotPolynomial(self.to_string()))
        }
    }

    pub fn scale(&self, c: &BigQ) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if o.is_polynomial() && o.num.degree() == Some(0) {
            return Ok(self.scale(&o.num.coeffs[0].recip()));
        }
        Ok(RatFunc::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs() as usize;
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// `f(t^d)`. Coprimality survives the substitution, so no reduction is needed.
    pub fn subst_power(&self, d: usize) -> RatFunc {
        RatFunc {
            num: self.num.subst_power(d),
            den: self.den.subst_power(d),
        }
    }

    /// `f(1/t)`.
    pub fn subst_invert(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dd >= dn {
            num = num.shift(dd - dn);
        } else {
            den = den.shift(dn - dd);
        }
        RatFunc::normalized(num, den)
    }

    pub fn eval_at(&self, q: &BigQ) -> Result<BigQ> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::Pole(q.to_string()));
        }
        Ok(self.num.eval(q) / d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ratfunc serializes")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<PolyT> for RatFunc {
    fn from(p: PolyT) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &o.num);
            }
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        RatFunc::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

forward_owned!(RatFunc, Add, add);
forward_owned!(RatFunc, Sub, sub);
forward_owned!(RatFunc, Mul, mul);

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &PolyT| {
            if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

fn coeff_str(c: &BigQ) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_bigq(s: &str) -> Result<BigQ> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigQ::new(n, d))
        }
        None => Ok(BigQ::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncWire {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncWire {
            num: self.num.coeffs.iter().map(coeff_str).collect(),
            den: self.den.coeffs.iter().map(coeff_str).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = RatFuncWire::deserialize(d)?;
        let conv = |v: &[String]| -> std::result::Result<PolyT, D::Error> {
            let c: Result<Vec<BigQ>> = v.iter().map(|x| parse_bigq(x)).collect();
            c.map(PolyT::new).map_err(D::Error::custom)
        };
        RatFunc::new(conv(&w.num)?, conv(&w.den)?).map_err(D::Error::custom)
    }
}

/// `[n]_t = 1 + t + ... + t^{n-1}`.
pub fn q_int(n: usize) -> PolyT {
    PolyT::new(vec![BigQ::one(); n])
}

pub fn q_factorial(n: usize) -> PolyT {
    static MEMO: Memo<usize, PolyT> = Memo::new();
    (*MEMO.get_or_insert_with(&n, || {
        (1..=n).fold(PolyT::one(), |acc, i| &acc * &q_int(i))
    }))
    .clone()
}

/// Gaussian binomial `[n choose k]_t`; zero when `k > n`.
pub fn q_binomial(n: usize, k: usize) -> PolyT {
    if k > n {
        return PolyT::zero();
    }
    static MEMO: Memo<(usize, usize), PolyT> = Memo::new();
    let k = k.min(n - k);
    (*MEMO.get_or_insert_with(&(n, k), || {
        // prod_{i=1}^{k} (1 - t^{n-k+i}) / (1 - t^i); every partial product
        // is itself a Gaussian binomial, so each division is exact.
        let mut acc = PolyT::one();
        for i in 1..=k {
            let numer = &PolyT::one() - &PolyT::t_pow(n - k + i);
            let denom = &PolyT::one() - &PolyT::t_pow(i);
            acc = (&acc * &numer)
                .exact_div(&denom)
                .expect("Gaussian binomial partial products are polynomials");
        }
        acc
    }))
    .clone()
}

/// Gaussian binomial with signed arguments, rejecting negative input.
pub fn q_binomial_checked(n: i64, k: i64) -> Result<PolyT> {
    if n < 0 || k < 0 {
        return Err(Error::InvalidArgument(format!(
            "q_binomial({n}, {k}) needs nonnegative arguments"
        )));
    }
    Ok(q_binomial(n as usize, k as usize))
}

/// `[n]_t! / prod_i [α_i]_t!`.
pub fn q_multinomial(n: usize, alpha: &WeakComposition) -> Result<RatFunc> {
    if alpha.size() != n {
        return Err(Error::SizeMismatch(format!(
            "q_multinomial: |{alpha:?}| != {n}"
        )));
    }
    let den = alpha
        .parts()
        .iter()
        .fold(PolyT::one(), |acc, &a| &acc * &q_factorial(a));
    Ok(RatFunc::from_poly(q_factorial(n).exact_div(&den)?))
}

/// Converts an exact rational to an integer if it is one.
pub fn as_integer(x: &BigQ) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn as_i128(x: &BigQ) -> Option<i128> {
    as_integer(x).and_then(|v| v.to_i128())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> PolyT {
        PolyT::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn reduction_and_normal_form() {
        // (1 - t^2)/(1 - t) = 1 + t
        assert_eq!(rf(&[1, 0, -1], &[1, -1]), RatFunc::from_poly(poly(&[1, 1])));
        let t_inv = RatFunc::t_pow(-1);
        assert_eq!(&RatFunc::t() * &t_inv, RatFunc::one());
        // denominators come out monic
        let x = rf(&[2], &[0, 4]);
        assert_eq!(x.den(), &poly(&[0, 1]));
        assert_eq!(x.num(), &PolyT::constant(bigq_frac(1, 2)));
        assert!(RatFunc::new(poly(&[1]), PolyT::zero()).is_err());
    }

    #[test]
    fn geometric_series_division() {
        for m in 1..=4 {
            for k in 1..=3 {
                let n = m * k;
                let num = &PolyT::t_pow(n) - &PolyT::one();
                let den = &PolyT::t_pow(m) - &PolyT::one();
                let q = RatFunc::new(num, den).unwrap();
                let expect: PolyT = (0..k).fold(PolyT::zero(), |a, j| &a + &PolyT::t_pow(j * m));
                assert_eq!(q, RatFunc::from_poly(expect));
            }
        }
    }

    #[test]
    fn gcd_cases() {
        let a = &poly(&[1, 1]) * &poly(&[-2, 0, 1]);
        let b = &poly(&[1, 1]) * &poly(&[3, 1]);
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
        assert_eq!(poly(&[0, 0, 1, 1]).gcd(&poly(&[0, 1])), poly(&[0, 1]));
        assert_eq!(poly(&[1, 2, 1]).gcd(&poly(&[2, 2])), poly(&[1, 1]));
        assert_eq!(poly(&[1, 1]).gcd(&poly(&[1, -1])), PolyT::one());
    }

    #[test]
    fn q_analogs() {
        assert_eq!(q_binomial(2, 1), poly(&[1, 1]));
        assert_eq!(q_binomial(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 5), PolyT::zero());
        assert_eq!(q_binomial(0, 0), PolyT::one());
        assert_eq!(
            q_multinomial(2, &WeakComposition::new(vec![1, 1])).unwrap(),
            RatFunc::from_poly(poly(&[1, 1]))
        );
        assert!(q_binomial_checked(-1, 0).is_err());
        assert_eq!(q_factorial(3), poly(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_binomial_at_one_is_binomial() {
        let one = bigq(1);
        for n in 0..=12usize {
            let mut c = 1i64;
            for k in 0..=n {
                assert_eq!(q_binomial(n, k).eval(&one), bigq(c));
                assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
                c = c * (n - k) as i64 / (k as i64 + 1);
            }
        }
    }

    #[test]
    fn substitutions() {
        let f = RatFunc::from_poly(poly(&[1, 1]));
        assert_eq!(f.subst_power(2), RatFunc::from_poly(poly(&[1, 0, 1])));
        assert_eq!(RatFunc::t().subst_power(3), RatFunc::t_pow(3));
        assert_eq!(rf(&[1], &[1, -1]).subst_power(2), rf(&[1], &[1, 0, -1]));
        assert_eq!(f.subst_invert(), rf(&[1, 1], &[0, 1]));
        assert_eq!(RatFunc::t_pow(2).subst_invert(), RatFunc::t_pow(-2));
        assert_eq!(rf(&[1, 1], &[0, 1]).subst_invert(), f);
        assert_eq!(RatFunc::zero().subst_invert(), RatFunc::zero());
    }

    #[test]
    fn evaluation() {
        let f = RatFunc::from_poly(poly(&[1, 1]));
        assert_eq!(f.eval_at(&bigq(2)).unwrap(), bigq(3));
        assert_eq!(
            RatFunc::from_poly(q_binomial(4, 2)).eval_at(&bigq(2)).unwrap(),
            bigq(35)
        );
        // stored reduced, so (t^2 - 1)/(t - 1) has no pole at 1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]).eval_at(&bigq(1)).unwrap(), bigq(2));
        assert!(matches!(rf(&[1], &[-1, 1]).eval_at(&bigq(1)), Err(Error::Pole(_))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[1, 1, 2]).to_string(), "1 + t + 2*t^2");
        assert_eq!(poly(&[0, -1]).to_string(), "-t");
        assert_eq!(rf(&[1, 1], &[0, 1]).to_string(), "(1 + t)/t");
        assert_eq!(PolyT::zero().to_string(), "0");
    }

    #[test]
    fn json_wire_format() {
        let f = rf(&[1, 2], &[0, 3]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":["1/3","2/3"],"den":["0/1","1/1"]}"#);
        let back: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let unreduced: RatFunc =
            serde_json::from_str(r#"{"num":["-1","0","1"],"den":["-1","1"]}"#).unwrap();
        assert_eq!(unreduced, RatFunc::from_poly(poly(&[1, 1])));
        assert!(serde_json::from_str::<RatFunc>(r#"{"num":["1"],"den":[]}"#).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = PolyT> {
        proptest::collection::vec(-4i64..=4, 0..5).prop_map(|v| PolyT::from_ints(&v))
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly().prop_filter("nonzero", |p| !p.is_zero()))
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn json_round_trip(f in arb_ratfunc()) {
            let s = serde_json::to_string(&f).unwrap();
            let g: RatFunc = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(g, f);
        }

        #[test]
        fn invert_is_involution(f in arb_ratfunc()) {
            prop_assert_eq!(f.subst_invert().subst_invert(), f);
        }

        #[test]
        fn field_laws(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&a.try_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
                prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
            }
        }
    }
}
