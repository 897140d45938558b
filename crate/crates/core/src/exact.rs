//! Exact arithmetic over the field generated by logarithms of rationals.
//!
//! A value is a quotient of polynomials in symbols `log₂ b`, where the bases
//! `b` are odd integers ≥ 3, pairwise coprime across each polynomial and
//! never proper powers; powers of two fold into rational constants.
//! Logarithms of pairwise coprime integers ≥ 2 are ℚ-linearly independent,
//! so the coefficientwise zero test is sound at every degree and complete
//! for polynomials of degree ≤ 1.  Signs that do not cancel symbolically are
//! certified by interval arithmetic with exact rational endpoints, doubling
//! the precision twice before giving up with [`Error::AmbiguousSign`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default certification precision in bits.
pub const DEFAULT_PREC: u32 = 256;

/// Rational interval `[lo, hi]` guaranteed to contain the true value.
pub type Enclosure = (BigRational, BigRational);

/// Certified sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Odd primes up to 1000, used for trial division.
fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut sieve = vec![true; 1001];
        let mut primes = Vec::new();
        for p in 2..=1000usize {
            if sieve[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q <= 1000 {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        primes
    })
}

/// Largest `(root, k)` with `root^k == n`; `k == 1` when `n` is no proper power.
fn perfect_root(n: &BigUint) -> (BigUint, u32) {
    let one = BigUint::one();
    if *n <= one {
        return (n.clone(), 1);
    }
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if r > one && r.pow(k) == *n {
            return (r, k);
        }
    }
    (n.clone(), 1)
}

/// `n = 2^e · Π bᵢ^{mᵢ}` with the `bᵢ` odd, ≥ 3, pairwise coprime, non-powers.
fn decompose(n: &BigUint) -> (u64, Vec<(BigUint, u32)>) {
    assert!(!n.is_zero(), "decompose(0)");
    let mut n = n.clone();
    let e = n.trailing_zeros().unwrap_or(0);
    n >>= e;
    let mut atoms = Vec::new();
    for &p in small_primes().iter().skip(1) {
        if n.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            atoms.push((n.clone(), 1));
            n = BigUint::one();
            break;
        }
        let mut m = 0u32;
        while (&n % &pb).is_zero() {
            n /= &pb;
            m += 1;
        }
        if m > 0 {
            atoms.push((pb, m));
        }
    }
    if !n.is_one() {
        // cofactor with all prime factors > 1000; keep it whole, but never
        // as a proper power
        let (root, k) = perfect_root(&n);
        atoms.push((root, k));
    }
    (e, atoms)
}

/// Pairwise-coprime refinement.  Returns a basis of pairwise coprime
/// non-power integers ≥ 2 and, per input, its exponent vector over it.
fn refine_basis(inputs: &[BigUint]) -> (Vec<BigUint>, Vec<Vec<u32>>) {
    let one = BigUint::one();
    let mut work: Vec<BigUint> = inputs.to_vec();
    work.sort();
    work.dedup();
    let mut basis: Vec<BigUint> = Vec::new();
    'next: while let Some(n) = work.pop() {
        if n <= one {
            continue;
        }
        for i in 0..basis.len() {
            let g = n.gcd(&basis[i]);
            if !g.is_one() {
                let u = basis.swap_remove(i);
                let u_rest = &u / &g;
                let n_rest = &n / &g;
                work.push(g);
                if u_rest > one {
                    work.push(u_rest);
                }
                if n_rest > one {
                    work.push(n_rest);
                }
                continue 'next;
            }
        }
        basis.push(n);
    }
    for b in basis.iter_mut() {
        let (root, _) = perfect_root(b);
        *b = root;
    }
    basis.sort();
    basis.dedup();
    let vectors = inputs
        .iter()
        .map(|input| {
            let mut rem = input.clone();
            let mut v = vec![0u32; basis.len()];
            for (j, b) in basis.iter().enumerate() {
                while (&rem % b).is_zero() {
                    rem /= b;
                    v[j] += 1;
                }
            }
            assert!(rem.is_one(), "factor refinement left a cofactor");
            v
        })
        .collect();
    (basis, vectors)
}

/// Enclosure of `2·atanh z` for rational `0 ≤ z ≤ 1/3`, tail bound included.
fn atanh2_enclosure(z: &BigRational, prec: u32) -> Enclosure {
    if z.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let k = prec as usize / 3 + 2;
    let z2 = z * z;
    let mut sum = BigRational::zero();
    let mut pow = z.clone();
    for j in 0..k {
        sum += &pow / rat_int(2 * j as i64 + 1);
        pow = &pow * &z2;
    }
    // tail ≤ 2·z^(2k+1) / ((2k+1)(1−z²)) ≤ 2·z^(2k+1)·(9/8)/(2k+1) for z ≤ 1/3
    let lo = rat_int(2) * sum;
    let tail = rat_int(2) * pow * BigRational::new(BigInt::from(9), BigInt::from(8 * (2 * k as i64 + 1)));
    (lo.clone(), lo + tail)
}

/// Certified enclosure of `ln 2`, cached per precision.
pub fn ln2_enclosure(prec: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&prec) {
        return hit.clone();
    }
    // ln 2 = 2·atanh(1/3)
    let enc = atanh2_enclosure(&BigRational::new(BigInt::one(), BigInt::from(3)), prec);
    cache.lock().unwrap().insert(prec, enc.clone());
    enc
}

/// Certified enclosure of `log₂ e = 1/ln 2`.
pub fn log2_e_enclosure(prec: u32) -> Enclosure {
    let (lo, hi) = ln2_enclosure(prec);
    (BigRational::one() / hi, BigRational::one() / lo)
}

/// Certified enclosure of `log₂ n` for an integer `n ≥ 1`, cached.
pub fn log2_enclosure(n: &BigUint, prec: u32) -> Enclosure {
    assert!(!n.is_zero(), "log₂ 0");
    static CACHE: OnceLock<Mutex<HashMap<(BigUint, u32), Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n.clone(), prec);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    // n = 2^e·m with m ∈ [1, 2):  log₂ n = e + ln m / ln 2
    let e = n.bits() - 1;
    let pow = BigUint::one() << e;
    let z = BigRational::new(BigInt::from(n - &pow), BigInt::from(n + &pow));
    let (m_lo, m_hi) = atanh2_enclosure(&z, prec);
    let (l_lo, l_hi) = ln2_enclosure(prec);
    let e_rat = BigRational::from_integer(BigInt::from(e));
    let enc = (&e_rat + m_lo / l_hi, &e_rat + m_hi / l_lo);
    cache.lock().unwrap().insert(key, enc.clone());
    enc
}

/// Certified enclosure of `log₂ r` for a positive rational `r`.
pub fn log2_rational_enclosure(r: &BigRational, prec: u32) -> Result<Enclosure> {
    if !r.is_positive() {
        return Err(Error::Precondition(format!("log₂ of non-positive value {r}")));
    }
    let (p_lo, p_hi) = log2_enclosure(r.numer().magnitude(), prec);
    let (q_lo, q_hi) = log2_enclosure(r.denom().magnitude(), prec);
    Ok((p_lo - q_hi, p_hi - q_lo))
}

/// `f64` approximation of an exact rational, good to a couple of ulp.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let a = r.numer().magnitude();
    let b = r.denom().magnitude();
    // scale the quotient to roughly 80 bits, then undo in the exponent
    let shift = 80i64 - (a.bits() as i64 - b.bits() as i64);
    let q = if shift >= 0 {
        (a.clone() << shift as usize) / b
    } else {
        a / (b.clone() << (-shift) as usize)
    };
    let f = q.to_f64().unwrap_or(f64::MAX) * (-shift as f64).exp2();
    if r.is_negative() {
        -f
    } else {
        f
    }
}

/// Polynomial over ℚ in the symbols `log₂ b`.
///
/// Keys are monomials: sorted multisets of bases.  The empty monomial is the
/// rational constant term.  All distinct bases across one polynomial are
/// pairwise coprime; binary operations re-establish this jointly.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LogPoly {
    terms: BTreeMap<Vec<BigUint>, BigRational>,
}

impl LogPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        Self { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// `log₂ n` for an integer `n ≥ 1`.
    pub fn log2_uint(n: &BigUint) -> Self {
        let (e, atoms) = decompose(n);
        let mut terms = BTreeMap::new();
        if e > 0 {
            terms.insert(Vec::new(), BigRational::from_integer(BigInt::from(e)));
        }
        for (b, m) in atoms {
            terms.insert(vec![b], BigRational::from_integer(BigInt::from(m)));
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |q| q.is_one())
    }

    /// Largest monomial length; 0 for constants.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(q)` when the polynomial is the constant `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let empty: &[BigUint] = &[];
                self.terms.get(empty).cloned()
            }
            _ => None,
        }
    }

    fn bases(&self) -> Vec<BigUint> {
        let mut v: Vec<BigUint> = self.terms.keys().flatten().cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Rewrites both polynomials over one jointly coprime basis.
    fn align(&self, other: &Self) -> (Self, Self) {
        let ours = self.bases();
        let theirs = other.bases();
        let compatible = ours
            .iter()
            .all(|x| theirs.iter().all(|y| x == y || x.gcd(y).is_one()));
        if compatible {
            return (self.clone(), other.clone());
        }
        let mut all = ours;
        all.extend(theirs);
        all.sort();
        all.dedup();
        let (basis, exps) = refine_basis(&all);
        let subst: HashMap<BigUint, Vec<(BigUint, u32)>> = all
            .into_iter()
            .zip(exps)
            .map(|(b, v)| {
                let parts = basis
                    .iter()
                    .zip(v)
                    .filter(|(_, e)| *e > 0)
                    .map(|(u, e)| (u.clone(), e))
                    .collect();
                (b, parts)
            })
            .collect();
        (self.rewrite(&subst), other.rewrite(&subst))
    }

    /// Substitutes `log b = Σ e·log u` per `subst` and re-expands.
    fn rewrite(&self, subst: &HashMap<BigUint, Vec<(BigUint, u32)>>) -> Self {
        let mut out = Self::zero();
        for (mono, coeff) in &self.terms {
            let mut acc = Self::from_rational(coeff.clone());
            for b in mono {
                let mut linear = Self::zero();
                for (u, e) in &subst[b] {
                    linear
                        .terms
                        .insert(vec![u.clone()], BigRational::from_integer(BigInt::from(*e)));
                }
                acc = acc.mul_raw(&linear);
            }
            out = out.add_raw(&acc);
        }
        out
    }

    fn add_raw(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            let slot = terms.entry(mono.clone()).or_insert_with(BigRational::zero);
            *slot += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    fn mul_raw(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Vec<BigUint>, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut mono = m1.clone();
                mono.extend_from_slice(m2);
                mono.sort();
                let slot = terms.entry(mono).or_insert_with(BigRational::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        a.add_raw(&b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat_int(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        a.mul_raw(&b)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * q))
            .collect();
        Self { terms }
    }

    /// Certified enclosure; width shrinks roughly like `2^-prec`.
    pub fn eval(&self, prec: u32) -> Enclosure {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (mono, coeff) in &self.terms {
            // every log₂ b with b ≥ 3 exceeds 1, so monomial intervals stay positive
            let mut t_lo = BigRational::one();
            let mut t_hi = BigRational::one();
            for b in mono {
                let (b_lo, b_hi) = log2_enclosure(b, prec);
                t_lo *= b_lo;
                t_hi *= b_hi;
            }
            if coeff.is_negative() {
                lo += coeff * t_hi;
                hi += coeff * t_lo;
            } else {
                lo += coeff * t_lo;
                hi += coeff * t_hi;
            }
        }
        (lo, hi)
    }
}

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<BigUint>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(m1, c1), (m2, c2)| {
            c2.is_positive()
                .cmp(&c1.is_positive())
                .then(m2.len().cmp(&m1.len()))
                .then(m1.cmp(m2))
        });
        for (i, (mono, coeff)) in terms.iter().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if mono.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            let mut i = 0;
            while i < mono.len() {
                let mut j = i;
                while j < mono.len() && mono[j] == mono[i] {
                    j += 1;
                }
                if i > 0 {
                    write!(f, " ")?;
                }
                if j - i == 1 {
                    write!(f, "log {}", mono[i])?;
                } else {
                    write!(f, "(log {})^{}", mono[i], j - i)?;
                }
                i = j;
            }
        }
        Ok(())
    }
}

/// Exact real number: a quotient of [`LogPoly`]s with positive denominator.
///
/// The denominator is usually `1`; proper quotients arise from division, e.g.
/// the constant [`ExactReal::epsilon`].
#[derive(Clone, Debug)]
pub struct ExactReal {
    num: LogPoly,
    den: LogPoly,
}

impl ExactReal {
    fn normalized(num: LogPoly, den: LogPoly) -> Self {
        if num.is_zero() {
            return Self { num: LogPoly::zero(), den: LogPoly::one() };
        }
        if let Some(q) = den.as_rational() {
            // positive rational denominators fold into the numerator
            return Self { num: num.scale(&q.recip()), den: LogPoly::one() };
        }
        if num == den {
            return Self::one();
        }
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self { num: LogPoly::zero(), den: LogPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: LogPoly::one(), den: LogPoly::one() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self { num: LogPoly::from_rational(q), den: LogPoly::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self { num: LogPoly::from_integer(n), den: LogPoly::one() }
    }

    /// `log₂ n` for an integer `n ≥ 1`.
    pub fn log2_uint(n: &BigUint) -> Self {
        Self { num: LogPoly::log2_uint(n), den: LogPoly::one() }
    }

    /// `log₂ r` for a positive rational `r`.
    pub fn log2(r: &BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::Precondition(format!("log₂ of non-positive value {r}")));
        }
        let num = LogPoly::log2_uint(r.numer().magnitude())
            .sub(&LogPoly::log2_uint(r.denom().magnitude()));
        Ok(Self { num, den: LogPoly::one() })
    }

    /// `log₂ 3`, the base constant of the entropy bound.
    pub fn log3() -> Self {
        Self::log2_uint(&BigUint::from(3u32))
    }

    /// `ε = (2·log 3 − (3·log 3 − 2)) / log 3 = (2 − log 3)/log 3 ≈ 0.26186`.
    pub fn epsilon() -> Self {
        let num = LogPoly::from_integer(2).sub(&LogPoly::log2_uint(&BigUint::from(3u32)));
        let den = LogPoly::log2_uint(&BigUint::from(3u32));
        Self { num, den }
    }

    pub fn num(&self) -> &LogPoly {
        &self.num
    }

    pub fn den(&self) -> &LogPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            Self::normalized(self.num.add(&other.num), self.den.clone())
        } else if other.den.is_one() {
            Self::normalized(self.num.add(&other.num.mul(&self.den)), self.den.clone())
        } else if self.den.is_one() {
            other.add(self)
        } else {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            Self::normalized(num, self.den.mul(&other.den))
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::normalized(self.num.scale(q), self.den.clone())
    }

    /// Division; the divisor must have a certifiable nonzero sign.
    pub fn div(&self, other: &Self) -> Result<Self> {
        match other.sign()? {
            Sign::Zero => Err(Error::Precondition("division by zero".into())),
            Sign::Positive => Ok(Self::normalized(
                self.num.mul(&other.den),
                self.den.mul(&other.num),
            )),
            Sign::Negative => Ok(Self::normalized(
                self.num.mul(&other.den).neg(),
                self.den.mul(&other.num.neg()),
            )),
        }
    }

    /// Sound zero test: `true` means the value is exactly zero.
    pub fn is_zero_symbolic(&self) -> bool {
        self.num.is_zero()
    }

    /// Sound equality test via symbolic cancellation of the difference.
    pub fn eq_symbolic(&self, other: &Self) -> bool {
        self.sub(other).is_zero_symbolic()
    }

    /// `Some(q)` when the value is the exact rational `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_rational()
        } else {
            None
        }
    }

    pub fn sign(&self) -> Result<Sign> {
        self.sign_at(DEFAULT_PREC)
    }

    /// Certified sign: symbolic zero first, then intervals at `prec`, `2·prec`
    /// and `4·prec` bits.
    pub fn sign_at(&self, prec: u32) -> Result<Sign> {
        if self.num.is_zero() {
            return Ok(Sign::Zero);
        }
        for p in [prec, 2 * prec, 4 * prec] {
            let (lo, hi) = self.num.eval(p);
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
        }
        Err(Error::AmbiguousSign(self.to_string()))
    }

    pub fn cmp_at(&self, other: &Self, prec: u32) -> Result<std::cmp::Ordering> {
        Ok(match self.sub(other).sign_at(prec)? {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }

    /// Certified `self ≤ other`.
    pub fn le_at(&self, other: &Self, prec: u32) -> Result<bool> {
        Ok(self.cmp_at(other, prec)? != std::cmp::Ordering::Greater)
    }

    /// Certified enclosure of the quotient.
    pub fn interval(&self, prec: u32) -> Enclosure {
        let (n_lo, n_hi) = self.num.eval(prec);
        if self.den.is_one() {
            return (n_lo, n_hi);
        }
        let mut p = prec;
        let (d_lo, d_hi) = loop {
            let enc = self.den.eval(p);
            if enc.0.is_positive() {
                break enc;
            }
            p = p.saturating_mul(2);
            assert!(p <= prec.saturating_mul(64), "denominator not certified positive");
        };
        let cands = [&n_lo / &d_lo, &n_lo / &d_hi, &n_hi / &d_lo, &n_hi / &d_hi];
        (
            cands.iter().min().unwrap().clone(),
            cands.iter().max().unwrap().clone(),
        )
    }

    /// Midpoint of the default-precision enclosure.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.interval(DEFAULT_PREC);
        rat_to_f64(&((lo + hi) / rat_int(2)))
    }
}

impl From<LogPoly> for ExactReal {
    fn from(num: LogPoly) -> Self {
        Self { num, den: LogPoly::one() }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::ops::Add for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        ExactReal::add(self, rhs)
    }
}

impl std::ops::Sub for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        ExactReal::sub(self, rhs)
    }
}

impl std::ops::Mul for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        ExactReal::mul(self, rhs)
    }
}

impl std::ops::Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal::neg(self)
    }
}

/// Binary entropy `h(p) = p·log(1/p) + (1−p)·log(1/(1−p))` in bits.
pub fn binary_entropy(p: &BigRational) -> Result<ExactReal> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::Precondition(format!("entropy argument {p} outside [0, 1]")));
    }
    if p.is_zero() || p.is_one() {
        return Ok(ExactReal::zero());
    }
    let q = BigRational::one() - p;
    let first = ExactReal::log2(&p.recip())?.scale(p);
    let second = ExactReal::log2(&q.recip())?.scale(&q);
    Ok(first.add(&second))
}
