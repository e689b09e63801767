//! Laurent polynomials in one variable `t` with arbitrary-precision integer
//! coefficients, plus exact determinants of square matrices over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `sum_k coeffs[k] * t^(low + k)`, kept trimmed: the first and last
/// coefficients are nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        Self::from_coeffs(k, vec![BigInt::from(c)])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitute `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { low: -self.high(), coeffs }
    }

    /// Representative of the class up to units `±t^k`: lowest exponent 0 and
    /// positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        if coeffs.last().unwrap().is_negative() {
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
        }
        Laurent { low: 0, coeffs }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// in `Z[t, t^-1]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        // Both are t^low times a polynomial with nonzero constant term, so
        // divisibility reduces to ordinary polynomial long division.
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let dc = &d.coeffs;
        if rem.len() < dc.len() {
            return None;
        }
        let lead = dc.last().unwrap();
        let qlen = rem.len() - dc.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dc.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (quo, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in dc.iter().enumerate() {
                rem[k + j] -= &quo * c;
            }
            q[k] = quo;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_coeffs(self.low - d.low, q))
    }

    /// Evaluate at an integer point (used for quick sanity checks such as
    /// `Δ(1) = ±1` for knots).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// Coefficients as machine integers, when they fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl Default for Laurent {
    fn default() -> Self {
        Laurent::zero()
    }
}

fn add_into(out: &mut [BigInt], out_low: i64, p: &Laurent, sign: bool) {
    for (i, c) in p.coeffs.iter().enumerate() {
        let k = (p.low + i as i64 - out_low) as usize;
        if sign {
            out[k] += c;
        } else {
            out[k] -= c;
        }
    }
}

fn combine(a: &Laurent, b: &Laurent, sign: bool) -> Laurent {
    if a.is_zero() {
        return if sign { b.clone() } else { -b.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    let low = a.low.min(b.low);
    let high = a.high().max(b.high());
    let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
    add_into(&mut out, low, a, true);
    add_into(&mut out, low, b, sign);
    Laurent::from_coeffs(low, out)
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        combine(self, rhs, true)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        combine(self, rhs, false)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Laurent::from_coeffs(self.low + rhs.low, out)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Wire form: exponent offset plus coefficient list (lowest first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentRepr {
    pub low: i64,
    pub coeffs: Vec<String>,
}

impl From<&Laurent> for LaurentRepr {
    fn from(p: &Laurent) -> Self {
        LaurentRepr { low: p.low, coeffs: p.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

/// Square matrix over `Laurent`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Laurent>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Laurent::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Laurent::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Laurent>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend(r);
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = if i == j { &Laurent::one() - self.get(i, j) } else { -self.get(i, j).clone() };
                out.set(i, j, v);
            }
        }
        out
    }

    /// Delete row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let mut rows = Vec::with_capacity(self.n.saturating_sub(1));
        for i in (0..self.n).filter(|&i| i != r) {
            rows.push((0..self.n).filter(|&j| j != c).map(|j| self.get(i, j).clone()).collect());
        }
        Matrix::from_rows(rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every division
    /// is exact; a failed division means a bug and panics.
    pub fn det(&self) -> Laurent {
        let n = self.n;
        if n == 0 {
            return Laurent::one();
        }
        let mut a: Vec<Vec<Laurent>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = false;
        let mut prev = Laurent::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return Laurent::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
                }
                a[i][k] = Laurent::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> Laurent {
        Laurent::from_i64s(low, c)
    }

    #[test]
    fn trims_and_displays() {
        let a = p(-1, &[0, 1, -1, 1, 0]);
        assert_eq!(a.low(), 0);
        assert_eq!(a.to_string(), "t^2 - t + 1");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(p(-2, &[3]).to_string(), "3*t^-2");
    }

    #[test]
    fn arithmetic() {
        let a = p(0, &[1, 1]);
        let b = p(0, &[1, -1]);
        assert_eq!(&a * &b, p(0, &[1, 0, -1]));
        assert_eq!(&a - &a, Laurent::zero());
        assert_eq!(&a + &b, Laurent::constant(2));
    }

    #[test]
    fn exact_division() {
        let num = p(0, &[1, 0, 0, 1]);
        let den = p(0, &[1, 1]);
        assert_eq!(num.div_exact(&den), Some(p(0, &[1, -1, 1])));
        assert_eq!(p(0, &[1, 0, 1]).div_exact(&den), None);
        assert_eq!(p(3, &[2, 4]).div_exact(&p(-1, &[2])), Some(p(4, &[1, 2])));
    }

    #[test]
    fn normalization() {
        assert_eq!(p(-3, &[-1, 1, -1]).normalized(), p(0, &[1, -1, 1]));
        let a = p(0, &[2, -3]);
        assert_eq!(a.invert_variable(), p(-1, &[-3, 2]));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = Matrix::from_rows(vec![
            vec![p(0, &[1, 1]), p(1, &[2]), Laurent::zero()],
            vec![Laurent::constant(3), p(-1, &[1]), p(0, &[0, 1, 1])],
            vec![Laurent::zero(), Laurent::constant(-1), p(0, &[5])],
        ]);
        let mut cof = Laurent::zero();
        for j in 0..3 {
            let term = m.get(0, j) * &m.minor(0, j).det();
            cof = if j % 2 == 0 { &cof + &term } else { &cof - &term };
        }
        assert_eq!(m.det(), cof);
    }

    #[test]
    fn det_needs_pivoting() {
        let m = Matrix::from_rows(vec![
            vec![Laurent::zero(), Laurent::one()],
            vec![Laurent::one(), Laurent::zero()],
        ]);
        assert_eq!(m.det(), Laurent::constant(-1));
    }
}
