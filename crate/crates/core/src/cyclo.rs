//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored as a polynomial in ζ of degree below φ(n), reduced
//! modulo the cyclotomic polynomial Φ_n, with integer numerators over one
//! positive common denominator. The representation is canonical: numerators
//! and denominator share no common factor, so structural equality and hashing
//! coincide with field equality.
//!
//! Small values live in `i64` and are promoted to big integers only when an
//! intermediate result overflows.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

/// Working conductor for every matrix in the catalog.
pub const DEFAULT_CONDUCTOR: u32 = 72;

/// Largest conductor accepted; keeps the reduction tables in machine words.
pub const MAX_CONDUCTOR: u32 = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor must be an even integer in 2..={MAX_CONDUCTOR}, got {0}")]
    BadConductor(u32),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed cyclotomic number: {0}")]
    Malformed(String),
}

/// Precomputed data for one conductor.
#[derive(Debug)]
pub(crate) struct Field {
    phi: usize,
    /// Reduced power basis image of ζ^j for 0 <= j < max(n, 2φ - 1).
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn build(n: u32) -> Result<Field, CycloError> {
        let cyclo = cyclotomic_poly(n).ok_or(CycloError::BadConductor(n))?;
        let phi = cyclo.len() - 1;
        let count = (n as usize).max(2 * phi);
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by ζ: shift up, then fold the top coefficient using Φ_n
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(cyclo[i]).ok_or(CycloError::BadConductor(n))?)
                        .ok_or(CycloError::BadConductor(n))?;
                }
            }
        }
        Ok(Field { phi, powers })
    }

    pub(crate) fn get(n: u32) -> Result<&'static Field, CycloError> {
        if n < 2 || n % 2 != 0 || n > MAX_CONDUCTOR {
            return Err(CycloError::BadConductor(n));
        }
        static FIELDS: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
        let mut map = FIELDS.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = map.get(&n) {
            return Ok(f);
        }
        let field: &'static Field = Box::leak(Box::new(Field::build(n)?));
        map.insert(n, field);
        Ok(field)
    }

    fn expect(n: u32) -> &'static Field {
        match Field::get(n) {
            Ok(f) => f,
            Err(e) => panic!("{e}"),
        }
    }
}

/// Validates a conductor without constructing anything.
pub fn check_conductor(n: u32) -> Result<(), CycloError> {
    Field::get(n).map(|_| ())
}

/// Euler's totient of the conductor: the dimension of Q(ζ_n) over Q.
pub fn degree(n: u32) -> Result<usize, CycloError> {
    Field::get(n).map(|f| f.phi)
}

/// Integer coefficients of Φ_n in ascending order, computed by dividing
/// x^n - 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_poly(n: u32) -> Option<Vec<i64>> {
    fn rec(n: u32, memo: &mut HashMap<u32, Vec<i128>>) -> Option<Vec<i128>> {
        if let Some(p) = memo.get(&n) {
            return Some(p.clone());
        }
        let mut num = vec![0i128; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in 1..n {
            if n % d == 0 {
                let den = rec(d, memo)?;
                num = div_monic(&num, &den)?;
            }
        }
        memo.insert(n, num.clone());
        Some(num)
    }
    if n == 0 {
        return None;
    }
    let mut memo = HashMap::new();
    rec(n, &mut memo)?.into_iter().map(|c| i64::try_from(c).ok()).collect()
}

/// Exact quotient of integer polynomials by a monic divisor.
fn div_monic(num: &[i128], den: &[i128]) -> Option<Vec<i128>> {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quo = vec![0i128; num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] = rem[i + j].checked_sub(c.checked_mul(*d)?)?;
            }
        }
    }
    if rem.iter().any(|c| *c != 0) {
        return None;
    }
    Some(quo)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Num {
    Small { coeffs: Box<[i64]>, den: i64 },
    Big { coeffs: Box<[BigInt]>, den: BigInt },
}

/// An exact element of Q(ζ_n) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    n: u32,
    num: Num,
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

impl CycloNum {
    fn field(&self) -> &'static Field {
        Field::expect(self.n)
    }

    fn from_i128(n: u32, mut coeffs: Vec<i128>, mut den: i128) -> CycloNum {
        debug_assert!(den != 0);
        if den == i128::MIN || coeffs.contains(&i128::MIN) {
            return Self::from_big(n, coeffs.into_iter().map(BigInt::from).collect(), BigInt::from(den));
        }
        if den < 0 {
            coeffs.iter_mut().for_each(|c| *c = -*c);
            den = -den;
        }
        let mut g = den;
        for c in &coeffs {
            if g == 1 {
                break;
            }
            g = gcd_i128(g, *c);
        }
        if coeffs.iter().all(|c| *c == 0) {
            g = den;
        }
        let den = den / g;
        let small: Option<Vec<i64>> = coeffs.iter().map(|c| i64::try_from(*c / g).ok()).collect();
        match (small, i64::try_from(den)) {
            (Some(c), Ok(d)) => CycloNum { n, num: Num::Small { coeffs: c.into(), den: d } },
            _ => CycloNum {
                n,
                num: Num::Big {
                    coeffs: coeffs.into_iter().map(|c| BigInt::from(c / g)).collect(),
                    den: BigInt::from(den),
                },
            },
        }
    }

    fn from_big(n: u32, mut coeffs: Vec<BigInt>, mut den: BigInt) -> CycloNum {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        if coeffs.iter().all(Zero::is_zero) {
            return CycloNum::zero(n);
        }
        let mut g = den.clone();
        for c in &coeffs {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den = &den / &g;
            coeffs.iter_mut().for_each(|c| *c = &*c / &g);
        }
        let small: Option<Vec<i64>> = coeffs.iter().map(|c| c.to_i64()).collect();
        match (small, den.to_i64()) {
            (Some(c), Some(d)) => CycloNum { n, num: Num::Small { coeffs: c.into(), den: d } },
            _ => CycloNum { n, num: Num::Big { coeffs: coeffs.into(), den } },
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.num {
            Num::Small { coeffs, den } => (coeffs.iter().map(|c| BigInt::from(*c)).collect(), BigInt::from(*den)),
            Num::Big { coeffs, den } => (coeffs.to_vec(), den.clone()),
        }
    }

    /// The zero element of Q(ζ_n).
    ///
    /// # Panics
    /// If `n` is not a valid conductor (see [`check_conductor`]).
    pub fn zero(n: u32) -> CycloNum {
        let f = Field::expect(n);
        CycloNum { n, num: Num::Small { coeffs: vec![0; f.phi].into(), den: 1 } }
    }

    pub fn one(n: u32) -> CycloNum {
        CycloNum::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> CycloNum {
        let f = Field::expect(n);
        let mut coeffs = vec![0; f.phi];
        coeffs[0] = v;
        CycloNum { n, num: Num::Small { coeffs: coeffs.into(), den: 1 } }
    }

    /// The rational `num/den` as an element of Q(ζ_n).
    pub fn from_ratio(n: u32, num: i64, den: i64) -> Result<CycloNum, CycloError> {
        if den == 0 {
            return Err(CycloError::ZeroDenominator);
        }
        let f = Field::get(n)?;
        let mut coeffs = vec![0i128; f.phi];
        coeffs[0] = num as i128;
        Ok(CycloNum::from_i128(n, coeffs, den as i128))
    }

    pub fn from_rational(n: u32, q: &BigRational) -> CycloNum {
        let f = Field::expect(n);
        let mut coeffs = vec![BigInt::zero(); f.phi];
        coeffs[0] = q.numer().clone();
        CycloNum::from_big(n, coeffs, q.denom().clone())
    }

    /// Builds an element from power-basis coefficients (ascending powers of
    /// ζ), reducing modulo Φ_n when more than φ(n) are given.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> Result<CycloNum, CycloError> {
        let f = Field::get(n)?;
        let mut acc = CycloNum::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if k < f.phi {
                let mut v = vec![BigInt::zero(); f.phi];
                v[k] = c.numer().clone();
                CycloNum::from_big(n, v, c.denom().clone())
            } else {
                &CycloNum::root_of_unity(n, k as i64) * &CycloNum::from_rational(n, c)
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// ζ_n^k = e^{2πik/n} in canonical form.
    pub fn root_of_unity(n: u32, k: i64) -> CycloNum {
        let f = Field::expect(n);
        let j = k.rem_euclid(n as i64) as usize;
        CycloNum { n, num: Num::Small { coeffs: f.powers[j].clone().into(), den: 1 } }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        match &self.num {
            Num::Small { coeffs, .. } => coeffs.iter().all(|c| *c == 0),
            Num::Big { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == CycloNum::one(self.n)
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (c, d) = self.big_parts();
        c.into_iter().map(|x| BigRational::new(x, d.clone())).collect()
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        let c = self.coeffs();
        if c[1..].iter().all(Zero::is_zero) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &CycloNum) -> Result<(), CycloError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(CycloError::ConductorMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.check(other)?;
        if let (Num::Small { coeffs: a, den: da }, Num::Small { coeffs: b, den: db }) = (&self.num, &other.num) {
            if da == db {
                let c: Vec<i128> = a.iter().zip(b.iter()).map(|(x, y)| *x as i128 + *y as i128).collect();
                return Ok(CycloNum::from_i128(self.n, c, *da as i128));
            }
            let (da, db) = (*da as i128, *db as i128);
            let g = gcd_i128(da, db);
            let (ma, mb) = (db / g, da / g);
            let small = (|| {
                let den = da.checked_mul(ma)?;
                let c = a
                    .iter()
                    .zip(b.iter())
                    .map(|(x, y)| (*x as i128).checked_mul(ma)?.checked_add((*y as i128).checked_mul(mb)?))
                    .collect::<Option<Vec<i128>>>()?;
                Some((c, den))
            })();
            if let Some((c, den)) = small {
                return Ok(CycloNum::from_i128(self.n, c, den));
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let c = a.iter().zip(b.iter()).map(|(x, y)| x * &db + y * &da).collect();
        Ok(CycloNum::from_big(self.n, c, da * db))
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycloNum::zero(self.n));
        }
        let f = self.field();
        if let (Num::Small { coeffs: a, den: da }, Num::Small { coeffs: b, den: db }) = (&self.num, &other.num) {
            if let Some(r) = mul_small(f, a, b, *da, *db) {
                return Ok(CycloNum::from_i128(self.n, r.0, r.1));
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let mut prod = vec![BigInt::zero(); 2 * f.phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigInt::zero(); f.phi];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(f.powers[k].iter()) {
                if *p != 0 {
                    *o += c * p;
                }
            }
        }
        Ok(CycloNum::from_big(self.n, out, da * db))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<CycloNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let f = self.field();
        let modulus: Vec<BigRational> = cyclotomic_poly(self.n)
            .expect("conductor already validated")
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        let a = poly_trim(self.coeffs());
        // invariant: s * a ≡ r (mod Φ_n)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_n is irreducible
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        let mut padded = inv;
        padded.resize(f.phi.max(padded.len()), BigRational::zero());
        CycloNum::from_coeffs(self.n, &padded)
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum, CycloError> {
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<CycloNum, CycloError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloNum::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image under ζ ↦ ζ⁻¹, i.e. complex conjugation in the standard embedding.
    pub fn conj(&self) -> CycloNum {
        let f = self.field();
        let n = self.n as usize;
        match &self.num {
            Num::Small { coeffs, den } => {
                let mut out = vec![0i128; f.phi];
                let mut ok = true;
                'outer: for (k, c) in coeffs.iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    for (o, p) in out.iter_mut().zip(f.powers[(n - k) % n].iter()) {
                        match (*c as i128).checked_mul(*p as i128).and_then(|t| o.checked_add(t)) {
                            Some(v) => *o = v,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                if ok {
                    return CycloNum::from_i128(self.n, out, *den as i128);
                }
            }
            Num::Big { .. } => {}
        }
        let (c, d) = self.big_parts();
        let mut out = vec![BigInt::zero(); f.phi];
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(f.powers[(n - k) % n].iter()) {
                *o += x * p;
            }
        }
        CycloNum::from_big(self.n, out, d)
    }

    /// Real part `(x + conj x) / 2`.
    pub fn re(&self) -> CycloNum {
        let half = CycloNum::from_ratio(self.n, 1, 2).expect("nonzero denominator");
        &(self + &self.conj()) * &half
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Standard complex embedding (ζ_n ↦ e^{2πi/n}) in double precision.
    /// Diagnostics and sign checks only.
    pub fn approx(&self) -> (f64, f64) {
        let (c, d) = self.big_parts();
        let d = d.to_f64().unwrap_or(f64::INFINITY);
        let (mut re, mut im) = (0.0, 0.0);
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let v = x.to_f64().unwrap_or(f64::NAN) / d;
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// JSON form: φ(n) `[numerator, denominator]` pairs in ascending powers of
    /// ζ_n. Integers outside the i64 range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let (c, d) = self.big_parts();
        Value::Array(
            c.into_iter()
                .map(|x| {
                    let q = BigRational::new(x, d.clone());
                    Value::Array(vec![int_json(q.numer()), int_json(q.denom())])
                })
                .collect(),
        )
    }

    pub fn from_json(n: u32, v: &Value) -> Result<CycloNum, CycloError> {
        let f = Field::get(n)?;
        let arr = v.as_array().ok_or_else(|| CycloError::Malformed("expected an array".into()))?;
        if arr.len() != f.phi {
            return Err(CycloError::Malformed(format!("expected {} coefficient pairs, got {}", f.phi, arr.len())));
        }
        let mut coeffs = Vec::with_capacity(f.phi);
        for pair in arr {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| CycloError::Malformed("coefficient must be a [num, den] pair".into()))?;
            let num = json_int(&p[0])?;
            let den = json_int(&p[1])?;
            if den.is_zero() {
                return Err(CycloError::ZeroDenominator);
            }
            coeffs.push(BigRational::new(num, den));
        }
        CycloNum::from_coeffs(n, &coeffs)
    }
}

fn mul_small(f: &Field, a: &[i64], b: &[i64], da: i64, db: i64) -> Option<(Vec<i128>, i128)> {
    let phi = f.phi;
    let mut prod = vec![0i128; 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        let x = *x as i128;
        for (j, y) in b.iter().enumerate() {
            if *y != 0 {
                prod[i + j] = prod[i + j].checked_add(x.checked_mul(*y as i128)?)?;
            }
        }
    }
    let mut out = prod[..phi].to_vec();
    for (k, c) in prod.iter().enumerate().skip(phi) {
        if *c == 0 {
            continue;
        }
        for (o, p) in out.iter_mut().zip(f.powers[k].iter()) {
            if *p != 0 {
                *o = o.checked_add(c.checked_mul(*p as i128)?)?;
            }
        }
    }
    Some((out, (da as i128).checked_mul(db as i128)?))
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn json_int(v: &Value) -> Result<BigInt, CycloError> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse::<BigInt>().ok())
        .ok_or_else(|| CycloError::Malformed(format!("not an integer: {v}")))
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = poly_trim(b.to_vec());
    let mut rem = poly_trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b.last().expect("nonempty divisor").clone();
    let mut quo = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quo[i] = c;
    }
    rem.truncate(b.len() - 1);
    if rem.is_empty() {
        rem.push(BigRational::zero());
    }
    (poly_trim(quo), poly_trim(rem))
}

/// Square root of a rational inside Q(ζ_n), when it exists there via the
/// quadratic subfields generated by i, √2 and √3. Returns the root whose
/// embedding has nonnegative real part (or positive imaginary part for
/// negative inputs).
pub fn sqrt_rational(n: u32, q: &BigRational) -> Option<CycloNum> {
    Field::get(n).ok()?;
    if q.is_zero() {
        return Some(CycloNum::zero(n));
    }
    let neg = q.is_negative();
    let prod = (q.numer() * q.denom()).abs();
    for t in [1u32, 2, 3, 6] {
        let (m, r) = prod.div_rem(&BigInt::from(t));
        if !r.is_zero() {
            continue;
        }
        let s = m.sqrt();
        if &s * &s != m {
            continue;
        }
        let mut root = sqrt_small(n, t)?;
        if neg {
            if n % 4 != 0 {
                return None;
            }
            root = &root * &CycloNum::root_of_unity(n, n as i64 / 4);
        }
        let scale = CycloNum::from_rational(n, &BigRational::new(s, q.denom().clone()));
        return Some(&root * &scale);
    }
    None
}

fn sqrt_small(n: u32, t: u32) -> Option<CycloNum> {
    let two_cos = |m: u32| -> Option<CycloNum> {
        // 2cos(2π/m) = ζ_m + ζ_m⁻¹, needs m | n
        if n % m != 0 {
            return None;
        }
        let k = (n / m) as i64;
        Some(&CycloNum::root_of_unity(n, k) + &CycloNum::root_of_unity(n, -k))
    };
    match t {
        1 => Some(CycloNum::one(n)),
        2 => two_cos(8),
        3 => two_cos(12),
        6 => Some(&two_cos(8)? * &two_cos(12)?),
        _ => None,
    }
}

impl Ord for CycloNum {
    /// Lexicographic order on the rational power-basis coefficients. Only
    /// meaningful within one conductor; mixed conductors order by conductor.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.n != other.n {
            return self.n.cmp(&other.n);
        }
        if let (Num::Small { coeffs: a, den: da }, Num::Small { coeffs: b, den: db }) = (&self.num, &other.num) {
            for (x, y) in a.iter().zip(b.iter()) {
                let o = (*x as i128 * *db as i128).cmp(&(*y as i128 * *da as i128));
                if o != Ordering::Equal {
                    return o;
                }
            }
            return Ordering::Equal;
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        for (x, y) in a.iter().zip(b.iter()) {
            let o = (x * &db).cmp(&(y * &da));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            /// # Panics
            /// On conductor mismatch; use the `try_` variant to handle it.
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        match &self.num {
            Num::Small { coeffs, den } => {
                CycloNum::from_i128(self.n, coeffs.iter().map(|c| -(*c as i128)).collect(), *den as i128)
            }
            Num::Big { coeffs, den } => CycloNum::from_big(self.n, coeffs.iter().map(|c| -c).collect(), den.clone()),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    /// Exact form such as `1/2 - 1/2*z^12 + z^18`, with `z = ζ_n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx();
        write!(f, "CycloNum[{}]({self} ≈ {re:.6}{im:+.6}i)", self.n)
    }
}

/// Shorthand for ζ₇₂^k.
pub fn zeta(k: i64) -> CycloNum {
    CycloNum::root_of_unity(DEFAULT_CONDUCTOR, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: u32 = DEFAULT_CONDUCTOR;

    fn q(a: i64, b: i64) -> CycloNum {
        CycloNum::from_ratio(N, a, b).unwrap()
    }

    fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol
    }

    #[test]
    fn phi_72_is_x24_minus_x12_plus_1() {
        let p = cyclotomic_poly(72).unwrap();
        let mut expect = vec![0i64; 25];
        expect[0] = 1;
        expect[12] = -1;
        expect[24] = 1;
        assert_eq!(p, expect);
        assert_eq!(degree(72).unwrap(), 24);
    }

    #[test]
    fn cyclotomic_poly_matches_product_formula_oracle() {
        // oracle: x^n - 1 = ∏_{d | n} Φ_d, multiplied out with plain integers
        for n in [1u32, 2, 6, 8, 12, 18, 24, 30, 36, 72] {
            let mut prod = vec![1i64];
            for d in 1..=n {
                if n % d == 0 {
                    let p = cyclotomic_poly(d).unwrap();
                    let mut out = vec![0i64; prod.len() + p.len() - 1];
                    for (i, x) in prod.iter().enumerate() {
                        for (j, y) in p.iter().enumerate() {
                            out[i + j] += x * y;
                        }
                    }
                    prod = out;
                }
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(zeta(36), CycloNum::from_int(N, -1));
        assert_eq!(zeta(0), CycloNum::one(N));
        assert_eq!(&zeta(24) + &zeta(48), CycloNum::from_int(N, -1));
        assert_eq!(&zeta(5) * &zeta(67), CycloNum::one(N));
        assert_eq!(zeta(72), zeta(0));
        assert_eq!(zeta(-1), zeta(71));
    }

    #[test]
    fn sqrt2_over_2_squares_to_half() {
        let x = &(&zeta(9) + &zeta(-9)) * &q(1, 2);
        assert_eq!(&x * &x, q(1, 2));
        assert!(close(x.approx(), (std::f64::consts::FRAC_1_SQRT_2, 0.0), 1e-12));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(zeta(5).inv().unwrap(), zeta(67));
        assert_eq!(q(1, 2).inv().unwrap(), CycloNum::from_int(N, 2));
        assert_eq!(CycloNum::zero(N).inv(), Err(CycloError::DivisionByZero));
        let s3 = &zeta(6) + &zeta(66);
        let x = &s3 + &q(2, 1);
        assert_eq!(&x * &x.inv().unwrap(), CycloNum::one(N));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(zeta(7).conj(), zeta(65));
        assert_eq!(q(3, 4).conj(), q(3, 4));
        let (a, b) = (zeta(3), &zeta(10) * &q(5, 7));
        assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        assert!(close(zeta(18).approx(), (0.0, 1.0), 1e-12));
        assert!(close(CycloNum::from_int(N, -1).approx(), (-1.0, 0.0), 1e-12));
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        let a = CycloNum::one(72);
        let b = CycloNum::one(24);
        assert_eq!(a.try_add(&b), Err(CycloError::ConductorMismatch(72, 24)));
        assert!(check_conductor(9).is_err());
        assert!(check_conductor(0).is_err());
    }

    #[test]
    fn prime_root_sums_vanish() {
        for n in [24u32, 72] {
            for p in [2u32, 3] {
                let s = (0..p as i64)
                    .map(|j| CycloNum::root_of_unity(n, j * (n / p) as i64))
                    .fold(CycloNum::zero(n), |acc, x| &acc + &x);
                assert!(s.is_zero(), "n={n} p={p}");
            }
            assert!(CycloNum::root_of_unity(n, n as i64).is_one());
        }
    }

    #[test]
    fn big_path_round_trips() {
        let big = CycloNum::from_int(N, i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.num, Num::Big { .. }));
        let back = sq.try_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.num, Num::Small { .. }));
    }

    #[test]
    fn json_round_trip() {
        let x = &(&zeta(9) * &q(-3, 8)) + &zeta(40);
        let j = x.to_json();
        assert_eq!(j.as_array().unwrap().len(), 24);
        assert_eq!(CycloNum::from_json(N, &j).unwrap(), x);
        let big = &CycloNum::from_int(N, i64::MAX) * &CycloNum::from_int(N, 3);
        assert_eq!(CycloNum::from_json(N, &big.to_json()).unwrap(), big);
    }

    #[test]
    fn sqrt_rational_cases() {
        for (num, den) in [(1, 2), (3, 1), (2, 3), (6, 25), (8, 1), (-3, 4)] {
            let r = BigRational::new(num.into(), den.into());
            let s = sqrt_rational(N, &r).unwrap();
            assert_eq!(&s * &s, CycloNum::from_rational(N, &r));
        }
        assert!(sqrt_rational(N, &BigRational::from_integer(5.into())).is_none());
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
        proptest::collection::vec((-3i64..=3, 0i64..72), 0..5).prop_flat_map(|terms| {
            (Just(terms), 1i64..5).prop_map(|(terms, den)| {
                terms.iter().fold(CycloNum::zero(N), |acc, (c, k)| &acc + &(&zeta(*k) * &q(*c, den)))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), CycloNum::one(N));
            }
        }

        #[test]
        fn canonical_form_is_idempotent(a in arb_cyclo()) {
            let again = CycloNum::from_coeffs(N, &a.coeffs()).unwrap();
            prop_assert_eq!(&again, &a);
            let (c, d) = a.big_parts();
            prop_assert!(d.is_positive());
            let g = c.iter().fold(d.clone(), |g, x| g.gcd(x));
            prop_assert!(g.is_one());
        }

        #[test]
        fn conj_is_an_involutive_automorphism(a in arb_cyclo(), b in arb_cyclo()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            let norm = &a * &a.conj();
            prop_assert!(norm.is_real());
            prop_assert!(norm.approx().0 >= -1e-9);
        }

        #[test]
        fn approx_is_multiplicative(a in arb_cyclo(), b in arb_cyclo()) {
            let (x, y) = (a.approx(), b.approx());
            let expect = (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
            prop_assert!(close((&a * &b).approx(), expect, 1e-9));
        }
    }
}
