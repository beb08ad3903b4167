//! The ground field abstraction.
//!
//! All core machinery is generic over an exact field: the rationals are the
//! primary scalar, and the prime field of size 101 serves as an independent
//! cross-check oracle for counts. No floating point anywhere.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field. Arithmetic never rounds and equality is decidable.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Parse a rational literal like `"3"`, `"-2/3"`.
    fn from_ratio_str(s: &str) -> Result<Self, String>;
    /// Candidate roots of the polynomial (coefficients low to high) that lie
    /// in this field. Must contain every actual root in the field.
    fn root_candidates(poly: &[Self]) -> Vec<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// The primary scalar: exact rationals with arbitrary-precision integers.
pub type Q = BigRational;

fn parse_ratio(s: &str) -> Result<(BigInt, BigInt), String> {
    let s = s.trim().replace('\u{2212}', "-");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().to_string(), d.trim().to_string()),
        None => (s, "1".to_string()),
    };
    let n: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok((n, d))
}

// --- exact rational root extraction ------------------------------------
//
// Rational roots of arbitrary rational polynomials, found by Sturm-sequence
// isolation followed by bisection and a simplest-rational (Stern-Brocot)
// reconstruction, verified by exact evaluation. Robust against coefficient
// blowup, where naive divisor enumeration of the rational root theorem fails.

fn qp_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map_or(false, |c| Zero::is_zero(c)) {
        p.pop();
    }
    p
}

fn qp_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc: BigRational = Zero::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn qp_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = qp_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bc);
        }
        r = qp_trim(r);
    }
    r
}

fn qp_derivative(p: &[BigRational]) -> Vec<BigRational> {
    qp_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![p.to_vec(), qp_derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            return chain;
        }
        let r = qp_rem(&chain[n - 2], &chain[n - 1]);
        chain.push(r.iter().map(|c| -c).collect());
    }
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for p in chain {
        let e = qp_eval(p, x);
        let s = if Zero::is_zero(&e) {
            0
        } else if e > Zero::zero() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// The rational with smallest denominator in the closed interval [lo, hi].
fn simplest_in(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    if lo == hi {
        return lo.clone();
    }
    let zero: BigRational = Zero::zero();
    if *lo <= zero && zero <= *hi {
        return zero;
    }
    if *hi < zero {
        return -simplest_in(&-hi.clone(), &-lo.clone());
    }
    let n = lo.ceil();
    if n <= *hi {
        return n;
    }
    let f = lo.floor();
    let one: BigRational = One::one();
    &f + &(one.clone() / simplest_in(&(one.clone() / (hi - &f)), &(one / (lo - &f))))
}

/// All rational roots of the polynomial, exactly.
fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let p = qp_trim(poly.to_vec());
    if p.len() < 2 {
        return vec![];
    }
    // squarefree part
    let mut a = p.clone();
    let mut b = qp_derivative(&p);
    while !b.is_empty() {
        let r = qp_rem(&a, &b);
        a = b;
        b = r;
    }
    let sqf = if a.len() > 1 {
        // p / gcd(p, p'): synthetic division
        let mut q = vec![<BigRational as Zero>::zero(); p.len() - a.len() + 1];
        let mut rem = p.clone();
        let da = a.len() - 1;
        let lead = a.last().unwrap().clone();
        while rem.len() > da {
            let shift = rem.len() - 1 - da;
            let c = rem.last().unwrap() / &lead;
            q[shift] = c.clone();
            for (i, ac) in a.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * ac);
            }
            rem = qp_trim(rem);
        }
        qp_trim(q)
    } else {
        p.clone()
    };
    if sqf.len() < 2 {
        return vec![];
    }
    // Cauchy root bound
    let lead = sqf.last().unwrap();
    let mut bound: BigRational = One::one();
    for c in &sqf[..sqf.len() - 1] {
        let t: BigRational = (c / lead).abs() + BigRational::from_integer(BigInt::one());
        if t > bound {
            bound = t;
        }
    }
    let chain = sturm_chain(&sqf);
    let mut out = Vec::new();
    let lo = -bound.clone();
    let hi = bound;
    let vlo = sign_variations(&chain, &lo);
    let vhi = sign_variations(&chain, &hi);
    let mut stack = vec![(lo, hi, vlo, vhi)];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        if vlo <= vhi {
            continue;
        }
        let count = vlo - vhi;
        if count == 1 {
            // isolated: bisect, then reconstruct the simplest candidate
            let (mut lo, mut hi) = (lo, hi);
            if Zero::is_zero(&qp_eval(&sqf, &lo)) {
                out.push(lo);
                continue;
            }
            if Zero::is_zero(&qp_eval(&sqf, &hi)) {
                out.push(hi);
                continue;
            }
            'isolated: for round in 0..2 {
                let iters = 100 * (round + 1);
                let mut slo = qp_eval(&sqf, &lo) > Zero::zero();
                for _ in 0..iters {
                    let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                    let e = qp_eval(&sqf, &mid);
                    if Zero::is_zero(&e) {
                        out.push(mid);
                        break 'isolated;
                    }
                    if (e > Zero::zero()) == slo {
                        lo = mid;
                        slo = e > Zero::zero();
                    } else {
                        hi = mid;
                    }
                }
                let cand = simplest_in(&lo, &hi);
                if Zero::is_zero(&qp_eval(&sqf, &cand)) {
                    out.push(cand);
                    break 'isolated;
                }
                // nothing after deep bisection: the root is irrational
            }
            continue;
        }
        // split at an interior point that is not itself a root, so the
        // Sturm variation counts stay valid
        let width = &hi - &lo;
        let mut mid = None;
        for (num, den) in [(1i64, 2i64), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5), (4, 5), (1, 7)] {
            let cand = &lo + &(&width * BigRational::new(BigInt::from(num), BigInt::from(den)));
            if Zero::is_zero(&qp_eval(&sqf, &cand)) {
                out.push(cand);
            } else {
                mid = Some(cand);
                break;
            }
        }
        let Some(mid) = mid else { continue };
        let vmid = sign_variations(&chain, &mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    out.sort();
    out.dedup();
    out
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio_str(s: &str) -> Result<Self, String> {
        let (n, d) = parse_ratio(s)?;
        Ok(BigRational::new(n, d))
    }

    fn root_candidates(poly: &[Self]) -> Vec<Self> {
        rational_roots(poly)
    }
}

/// The prime field with 101 elements, used only as a cross-check oracle.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F101(pub u16);

pub const F101_P: u16 = 101;

impl Debug for F101 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for F101 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl F101 {
    fn pow(self, mut e: u32) -> F101 {
        let mut b = self;
        let mut acc = F101(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &b);
            }
            b = Scalar::mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for F101 {
    fn zero() -> Self {
        F101(0)
    }
    fn one() -> Self {
        F101(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        F101((self.0 + rhs.0) % F101_P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        F101((self.0 + F101_P - rhs.0) % F101_P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        F101((self.0 as u32 * rhs.0 as u32 % F101_P as u32) as u16)
    }
    fn neg(&self) -> Self {
        F101((F101_P - self.0) % F101_P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(F101_P as u32 - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        F101(n.rem_euclid(F101_P as i64) as u16)
    }
    fn from_ratio_str(s: &str) -> Result<Self, String> {
        let (n, d) = parse_ratio(s)?;
        let p = BigInt::from(F101_P);
        let nm = ((n % &p) + &p) % &p;
        let dm = ((d % &p) + &p) % &p;
        let nf = F101(nm.to_string().parse::<u16>().unwrap());
        let df = F101(dm.to_string().parse::<u16>().unwrap());
        let di = df.inv().ok_or_else(|| "denominator vanishes mod 101".to_string())?;
        Ok(Scalar::mul(&nf, &di))
    }
    fn root_candidates(_poly: &[Self]) -> Vec<Self> {
        (0..F101_P).map(F101).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        let x = Q::from_ratio_str("-2/3").unwrap();
        assert_eq!(x, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        assert!(Q::from_ratio_str("1/0").is_err());
        assert_eq!(Q::from_ratio_str("7").unwrap(), Q::from_i64(7));
    }

    #[test]
    fn f101_field_axioms() {
        for a in 1..F101_P {
            let x = F101(a);
            let i = x.inv().unwrap();
            assert!(Scalar::mul(&x, &i).is_one());
        }
        assert_eq!(F101::from_ratio_str("1/2").unwrap(), F101(51));
    }

    #[test]
    fn rational_roots_found() {
        // (t-2)(t+3)t = t^3 + t^2 - 6t
        let poly = vec![Q::from_i64(0), Q::from_i64(-6), Q::from_i64(1), Q::from_i64(1)];
        let cands = Q::root_candidates(&poly);
        assert!(cands.contains(&Q::from_i64(2)));
        assert!(cands.contains(&Q::from_i64(-3)));
        assert!(cands.contains(&Q::from_i64(0)));
    }
}
