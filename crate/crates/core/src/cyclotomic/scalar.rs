//! Elements of the cyclotomic field `Q(ζ_N)`.
//!
//! A scalar is a rational polynomial in `ζ = ζ_N` of degree `< φ(N)`, i.e. the
//! canonical residue modulo the cyclotomic polynomial `Φ_N`. Reduction data
//! for each order is computed once and shared process-wide.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use smallvec::SmallVec;

use super::rat::Rat;
use super::CycError;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 96;

pub(crate) type Coeffs = SmallVec<[Rat; 4]>;

/// Reduction data for one field order.
#[derive(Debug)]
pub struct FieldTables {
    pub order: u32,
    pub phi: usize,
    /// Coefficients of `Φ_N`, lowest degree first (monic, length `phi + 1`).
    pub cyclotomic: Vec<i64>,
    /// `ζ^k` for `k < 2·phi - 1`, as canonical integer coefficient vectors.
    reduce: Vec<Vec<i64>>,
}

static TABLES: [OnceLock<FieldTables>; (MAX_ORDER + 1) as usize] =
    [const { OnceLock::new() }; (MAX_ORDER + 1) as usize];

/// Tables for `Q(ζ_order)`; panics if `order` is outside `1..=MAX_ORDER`.
pub fn tables(order: u32) -> &'static FieldTables {
    assert!(
        (1..=MAX_ORDER).contains(&order),
        "unsupported cyclotomic order {order}"
    );
    TABLES[order as usize].get_or_init(|| FieldTables::build(order))
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[k + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub(crate) fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_divexact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

impl FieldTables {
    fn build(order: u32) -> FieldTables {
        let cyclotomic = cyclotomic_poly(order);
        let phi = cyclotomic.len() - 1;
        debug_assert_eq!(phi, euler_phi(order));
        let count = (2 * phi).saturating_sub(1).max(order as usize).max(1);
        let mut reduce = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            reduce.push(cur.clone());
            // multiply by x, then reduce the x^phi term with Φ
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * cyclotomic[j];
                }
            }
        }
        FieldTables {
            order,
            phi,
            cyclotomic,
            reduce,
        }
    }

    /// Canonical coefficients of `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> &[i64] {
        let k = k.rem_euclid(self.order as i64) as usize;
        &self.reduce[k]
    }
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    order: u32,
    coeffs: Coeffs,
}

impl CycScalar {
    pub fn zero(order: u32) -> CycScalar {
        let t = tables(order);
        CycScalar {
            order,
            coeffs: SmallVec::from_elem(Rat::ZERO, t.phi),
        }
    }

    pub fn one(order: u32) -> CycScalar {
        CycScalar::from_rat(order, Rat::ONE)
    }

    pub fn from_int(order: u32, n: i64) -> CycScalar {
        CycScalar::from_rat(order, Rat::from_int(n))
    }

    pub fn from_rat(order: u32, r: Rat) -> CycScalar {
        let mut s = CycScalar::zero(order);
        s.coeffs[0] = r;
        s
    }

    /// `ζ^k` for any integer `k` (negative allowed).
    pub fn zeta_pow(order: u32, k: i64) -> CycScalar {
        let t = tables(order);
        let coeffs = t.zeta_pow(k).iter().map(|&c| Rat::from_int(c)).collect();
        CycScalar { order, coeffs }
    }

    /// The fixed primitive root `q := ζ_N`.
    pub fn zeta(order: u32) -> CycScalar {
        CycScalar::zeta_pow(order, 1)
    }

    /// Builds a scalar from an arbitrary-length coefficient vector in powers of
    /// `ζ`, reducing modulo `Φ_N`.
    pub fn from_coeffs(order: u32, coeffs: &[Rat]) -> CycScalar {
        let t = tables(order);
        let mut out = CycScalar::zero(order);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &r) in t.zeta_pow(k as i64).iter().enumerate() {
                if r != 0 {
                    out.coeffs[j] = out.coeffs[j].add(&c.mul_int(r));
                }
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// `Some(r)` when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &CycScalar) -> Result<(), CycError> {
        if self.order != other.order {
            return Err(CycError::ModulusMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycScalar) -> Result<CycScalar, CycError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &CycScalar) -> Result<CycScalar, CycError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_inv(&self) -> Result<CycScalar, CycError> {
        self.inv_impl().ok_or(CycError::DivisionByZero)
    }

    fn add_unchecked(&self, other: &CycScalar) -> CycScalar {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        CycScalar {
            order: self.order,
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &CycScalar) -> CycScalar {
        let phi = self.coeffs.len();
        if let Some(r) = other.as_rational() {
            return self.scale_rat(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale_rat(r);
        }
        let t = tables(self.order);
        let mut prod: SmallVec<[Rat; 8]> = SmallVec::from_elem(Rat::ZERO, 2 * phi - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        let mut coeffs: Coeffs = prod[..phi].iter().cloned().collect();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (j, &r) in t.reduce[k].iter().enumerate() {
                if r != 0 {
                    coeffs[j] = coeffs[j].add(&c.mul_int(r));
                }
            }
        }
        CycScalar {
            order: self.order,
            coeffs,
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> CycScalar {
        let coeffs = self.coeffs.iter().map(|c| c.mul(r)).collect();
        CycScalar {
            order: self.order,
            coeffs,
        }
    }

    fn inv_impl(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycScalar::from_rat(self.order, r.inv()?));
        }
        // Solve (multiplication-by-self) · x = 1 over Q.
        let phi = self.coeffs.len();
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let z = self.mul_unchecked(&CycScalar::zeta_pow(self.order, j as i64));
            cols.push(z.coeffs.to_vec());
        }
        // augmented row-major matrix [M | e_0]
        let mut m: Vec<Vec<Rat>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rat> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { Rat::ONE } else { Rat::ZERO });
                row
            })
            .collect();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, p);
            let inv = m[c][c].inv()?;
            for x in m[c].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..phi {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in 0..=phi {
                        let v = m[c][k].mul(&f);
                        m[r][k] = m[r][k].sub(&v);
                    }
                }
            }
        }
        let coeffs = m.iter().map(|row| row[phi].clone()).collect();
        Some(CycScalar {
            order: self.order,
            coeffs,
        })
    }

    pub fn inv(&self) -> Option<CycScalar> {
        self.inv_impl()
    }

    /// Integer power; negative exponents invert (panics on `0^negative`).
    pub fn pow(&self, e: i64) -> CycScalar {
        let base = if e < 0 {
            self.inv().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut acc = CycScalar::one(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            b = b.mul_unchecked(&b);
            k >>= 1;
        }
        acc
    }

    /// Reduction of an already-canonical scalar is the identity; exposed for
    /// property testing of the canonical form.
    pub fn reduce(&self) -> CycScalar {
        CycScalar::from_coeffs(self.order, &self.coeffs)
    }

    /// When the scalar is `±ζ^k`, returns `(sign, k)` with `k` in `0..N`.
    pub fn as_signed_root_of_unity(&self) -> Option<(i32, u32)> {
        for k in 0..self.order {
            let z = CycScalar::zeta_pow(self.order, k as i64);
            if &z == self {
                return Some((1, k));
            }
            if z.neg_ref() == *self {
                return Some((-1, k));
            }
        }
        None
    }

    fn neg_ref(&self) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(Rat::neg).collect(),
        }
    }

    /// Canonical coefficient strings, lowest power first.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coeff_strings(order: u32, coeffs: &[String]) -> Result<CycScalar, CycError> {
        let t = tables(order);
        if coeffs.len() != t.phi {
            return Err(CycError::Parse(format!(
                "expected {} coefficients for order {order}, got {}",
                t.phi,
                coeffs.len()
            )));
        }
        let coeffs = coeffs
            .iter()
            .map(|c| c.parse::<Rat>().map_err(|e| CycError::Parse(e.to_string())))
            .collect::<Result<Coeffs, _>>()?;
        Ok(CycScalar { order, coeffs })
    }

    /// Parses literals such as `8`, `-1/8`, `z^2`, `1 + z`, `3/2*z^-1`, where
    /// `z` (or `q`) denotes `ζ_N`.
    pub fn parse(order: u32, s: &str) -> Result<CycScalar, CycError> {
        parse_literal(order, s)
    }
}

fn parse_literal(order: u32, s: &str) -> Result<CycScalar, CycError> {
    let err = |m: &str| CycError::Parse(format!("`{s}`: {m}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty literal"));
    }
    // split into signed terms at top-level '+'/'-' not following '^'
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let chars: Vec<char> = compact.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        if (c == '+' || c == '-') && !(i > 0 && chars[i - 1] == '^') {
            if i > 0 {
                if cur.is_empty() {
                    return Err(err("dangling sign"));
                }
                terms.push((neg, std::mem::take(&mut cur)));
            }
            neg = c == '-';
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(err("dangling sign"));
    }
    terms.push((neg, cur));
    let mut total = CycScalar::zero(order);
    for (neg, term) in terms {
        let mut value = CycScalar::one(order);
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            let f = if let Some(rest) = factor
                .strip_prefix('z')
                .or_else(|| factor.strip_prefix('q'))
            {
                let e: i64 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| err("expected `^` after z"))?
                        .parse()
                        .map_err(|_| err("bad exponent"))?
                };
                CycScalar::zeta_pow(order, e)
            } else {
                let r: Rat = factor.parse().map_err(|_| err("bad rational"))?;
                CycScalar::from_rat(order, r)
            };
            value = value.mul_unchecked(&f);
        }
        if neg {
            value = value.neg_ref();
        }
        total = total.add_unchecked(&value);
    }
    Ok(total)
}

impl FromStr for CycScalar {
    type Err = CycError;

    /// Parses `"<literal>@N"`; plain literals need [`CycScalar::parse`].
    fn from_str(s: &str) -> Result<CycScalar, CycError> {
        let (lit, n) = s
            .rsplit_once('@')
            .ok_or_else(|| CycError::Parse(format!("`{s}`: missing @N")))?;
        let n: u32 = n
            .parse()
            .map_err(|_| CycError::Parse(format!("`{s}`: bad order")))?;
        parse_literal(n, lit)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.signum() < 0 {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            /// Panics when the operands live in different fields.
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                assert_eq!(self.order, rhs.order, "cyclotomic modulus mismatch");
                self.$imp(rhs)
            }
        }
        impl std::ops::$tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}

impl CycScalar {
    fn sub_unchecked(&self, other: &CycScalar) -> CycScalar {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        CycScalar {
            order: self.order,
            coeffs,
        }
    }
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl std::ops::AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.order, rhs.order, "cyclotomic modulus mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a = a.add(b);
            }
        }
    }
}

impl std::ops::SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.order, rhs.order, "cyclotomic modulus mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a = a.sub(b);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycScalar {
        CycScalar::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len() - 1, 8);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn minimal_polynomial_relation_n3() {
        // ζ² + ζ = -1
        assert_eq!(&z(3, 2) + &z(3, 1), CycScalar::from_int(3, -1));
    }

    #[test]
    fn zeta_inverse_n3() {
        assert_eq!(z(3, 1).inv().unwrap(), z(3, 2));
        assert_eq!(z(3, 1).try_inv().unwrap(), z(3, -1));
    }

    #[test]
    fn norm_of_one_minus_zeta_n3() {
        let one = CycScalar::one(3);
        let p = (&one - &z(3, 1)) * (&one - &z(3, 2));
        assert_eq!(p, CycScalar::from_int(3, 3));
    }

    #[test]
    fn errors() {
        assert_eq!(CycScalar::zero(5).try_inv(), Err(CycError::DivisionByZero));
        assert_eq!(
            CycScalar::one(3).try_add(&CycScalar::one(5)),
            Err(CycError::ModulusMismatch(3, 5))
        );
    }

    #[test]
    fn parse_and_display() {
        let s = CycScalar::parse(3, "z^2").unwrap();
        assert_eq!(s, z(3, 2));
        assert_eq!(s.to_string(), "-1 - z");
        assert_eq!(CycScalar::parse(3, "1/8").unwrap().to_string(), "1/8");
        assert_eq!(
            CycScalar::parse(5, "1 + z^-1").unwrap(),
            &CycScalar::one(5) + &z(5, 4)
        );
        assert_eq!(
            CycScalar::parse(3, "-2*z").unwrap(),
            z(3, 1) * CycScalar::from_int(3, -2)
        );
        assert!(CycScalar::parse(3, "w").is_err());
        assert!(CycScalar::parse(3, "1 +").is_err());
        assert_eq!("z@5".parse::<CycScalar>().unwrap(), z(5, 1));
    }

    #[test]
    fn roots_of_unity_detection() {
        assert_eq!(z(5, 3).as_signed_root_of_unity(), Some((1, 3)));
        assert_eq!((-z(3, 1)).as_signed_root_of_unity(), Some((-1, 1)));
        assert_eq!(CycScalar::from_int(3, 2).as_signed_root_of_unity(), None);
    }

    #[test]
    fn powers() {
        assert!(z(5, 1).pow(5).is_one());
        assert_eq!(z(5, 2).pow(-1), z(5, 3));
        let two = CycScalar::from_int(3, 2);
        assert_eq!(two.pow(-3), CycScalar::from_rat(3, Rat::new(1, 8)));
    }
}
