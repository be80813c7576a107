//! Exact arithmetic over Q and Q(√2, √5), plus dense square matrices.
//!
//! `QuadScalar` stores a + b√2 + c√5 + d√10 with rational coordinates. The four
//! basis elements are linearly independent over Q, so equality is coordinate-wise.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const SQRT2_F64: f64 = std::f64::consts::SQRT_2;
pub const SQRT5_F64: f64 = 2.23606797749979;
pub const SQRT10_F64: f64 = 3.1622776601683795;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadScalar {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        QuadScalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadScalar {
            a: r,
            ..Default::default()
        }
    }

    pub fn sqrt2() -> Self {
        QuadScalar {
            b: Rational::one(),
            ..Default::default()
        }
    }

    pub fn sqrt5() -> Self {
        QuadScalar {
            c: Rational::one(),
            ..Default::default()
        }
    }

    pub fn sqrt10() -> Self {
        QuadScalar {
            d: Rational::one(),
            ..Default::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// The rational value, if the irrational coordinates vanish.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        QuadScalar {
            a: &self.a * r,
            b: &self.b * r,
            c: &self.c * r,
            d: &self.d * r,
        }
    }

    /// Flip the sign of √2 (σ₂) or √5 (σ₅); √10 flips under either.
    fn conj2(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
        }
    }

    fn conj5(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Field norm down to Q: product of all four conjugates.
    pub fn norm(&self) -> Rational {
        let n1 = self * &self.conj2(); // lies in Q(√5)
        let n2 = &n1 * &n1.conj5();
        debug_assert!(n2.is_rational());
        n2.a
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let s2 = self.conj2();
        let n1 = self * &s2;
        let s5 = n1.conj5();
        let n = (&n1 * &s5).a;
        Ok((&s2 * &s5).scale(&n.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a)
            + rat_to_f64(&self.b) * SQRT2_F64
            + rat_to_f64(&self.c) * SQRT5_F64
            + rat_to_f64(&self.d) * SQRT10_F64
    }

    /// Square root of a non-negative rational, when it lands in Q(√2, √5).
    pub fn sqrt_of_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::zero());
        }
        // √(p/q) = √(p q) / q
        let pq = r.numer() * r.denom();
        let q = r.denom().clone();
        for k in [1i64, 2, 5, 10] {
            let kk = BigInt::from(k);
            if !(&pq % &kk).is_zero() {
                continue;
            }
            let m = &pq / &kk;
            let s = m.sqrt();
            if &s * &s == m {
                let coef = Rational::new(s, q.clone());
                let unit = match k {
                    1 => Self::one(),
                    2 => Self::sqrt2(),
                    5 => Self::sqrt5(),
                    _ => Self::sqrt10(),
                };
                return Some(unit.scale(&coef));
            }
        }
        None
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (r, unit) in [
            (&self.a, ""),
            (&self.b, "√2"),
            (&self.c, "√5"),
            (&self.d, "√10"),
        ] {
            if r.is_zero() {
                continue;
            }
            let s = if unit.is_empty() {
                rat_to_string(r)
            } else if r.is_one() {
                unit.to_string()
            } else if (-r).is_one() {
                format!("-{unit}")
            } else {
                format!("{}*{unit}", rat_to_string(r))
            };
            parts.push(s);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

impl<'a> Add<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        QuadScalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            d: &self.d + &rhs.d,
        }
    }
}

impl<'a> Sub<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        QuadScalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }
}

impl<'a> Mul<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn mul(self, y: &QuadScalar) -> QuadScalar {
        if self.is_zero() || y.is_zero() {
            return QuadScalar::zero();
        }
        if let (Some(p), Some(q)) = (self.as_rational(), y.as_rational()) {
            return QuadScalar::from_rational(p * q);
        }
        if let Some(p) = self.as_rational() {
            return y.scale(p);
        }
        if let Some(q) = y.as_rational() {
            return self.scale(q);
        }
        let x = self;
        // (a + b√2 + c√5 + d√10)(e + f√2 + g√5 + h√10)
        let a = &x.a * &y.a
            + rat_int(2) * &x.b * &y.b
            + rat_int(5) * &x.c * &y.c
            + rat_int(10) * &x.d * &y.d;
        let b = &x.a * &y.b + &x.b * &y.a + rat_int(5) * (&x.c * &y.d + &x.d * &y.c);
        let c = &x.a * &y.c + &x.c * &y.a + rat_int(2) * (&x.b * &y.d + &x.d * &y.b);
        let d = &x.a * &y.d + &x.d * &y.a + &x.b * &y.c + &x.c * &y.b;
        QuadScalar { a, b, c, d }
    }
}

impl<'a> Neg for &'a QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, rhs: &QuadScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl SubAssign<&QuadScalar> for QuadScalar {
    fn sub_assign(&mut self, rhs: &QuadScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qs_arith(x: &QuadScalar, y: &QuadScalar, op: QsOp) -> Result<QuadScalar> {
    match op {
        QsOp::Add => Ok(x + y),
        QsOp::Sub => Ok(x - y),
        QsOp::Mul => Ok(x * y),
        QsOp::Div => x.checked_div(y),
    }
}

/// Dense n×n matrix over `QuadScalar`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<QuadScalar>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![QuadScalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = QuadScalar::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> QuadScalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<QuadScalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| QuadScalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[QuadScalar]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, v) in diag.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &QuadScalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QuadScalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[QuadScalar] {
        &self.entries
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bkj = other.get(k, j);
                    if bkj.is_zero() {
                        continue;
                    }
                    let p = aik * bkj;
                    out.entries[i * n + j] += &p;
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.mat_mul(other)?;
        let ba = other.mat_mul(self)?;
        ab.sub(&ba)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(ExactMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(ExactMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    pub fn scale(&self, s: &QuadScalar) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> QuadScalar {
        let mut t = QuadScalar::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadScalar::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| (self.get(i, j) + self.get(j, i)).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[QuadScalar]) -> Result<Vec<QuadScalar>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                let mut acc = QuadScalar::zero();
                for (j, vj) in v.iter().enumerate() {
                    let m = self.get(i, j);
                    if !m.is_zero() && !vj.is_zero() {
                        acc += &(m * vj);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix {
            n: self.n,
            entries: self.entries.iter().map(QuadScalar::to_f64).collect(),
        }
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.mat_mul(b)
}

pub fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.commutator(b)
}

/// Σ_k h_k (A·B)_kk, without forming the full product.
pub fn trace_metric(h: &[QuadScalar], a: &ExactMatrix, b: &ExactMatrix) -> Result<QuadScalar> {
    a.check_dim(b)?;
    if h.len() != a.n {
        return Err(Error::DimensionMismatch {
            left: h.len(),
            right: a.n,
        });
    }
    let n = a.n;
    let mut acc = QuadScalar::zero();
    for (k, hk) in h.iter().enumerate() {
        if hk.is_zero() {
            continue;
        }
        let mut d = QuadScalar::zero();
        for l in 0..n {
            let x = a.get(k, l);
            if x.is_zero() {
                continue;
            }
            let y = b.get(l, k);
            if y.is_zero() {
                continue;
            }
            d += &(x * y);
        }
        if !d.is_zero() {
            acc += &(hk * &d);
        }
    }
    Ok(acc)
}

/// Reduced row echelon form over Q(√2, √5). Returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<QuadScalar>]) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is non-zero");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..m {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..ncols {
                if rows[r][j].is_zero() {
                    continue;
                }
                let t = &f * &rows[r][j];
                rows[i][j] -= &t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<QuadScalar>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work).len()
}

/// Basis of { x : M x = 0 } for an m×n coefficient array.
pub fn null_space(rows: &[Vec<QuadScalar>], ncols: usize) -> Vec<Vec<QuadScalar>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![QuadScalar::zero(); ncols];
            v[fc] = QuadScalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[r][fc];
            }
            v
        })
        .collect()
}

/// Solves Σ_k x_k columns[k] = target exactly. `None` if inconsistent or not unique.
pub fn solve_in_span(
    columns: &[Vec<QuadScalar>],
    target: &[QuadScalar],
) -> Option<Vec<QuadScalar>> {
    let k = columns.len();
    let m = target.len();
    let mut rows: Vec<Vec<QuadScalar>> = (0..m)
        .map(|i| {
            let mut r: Vec<QuadScalar> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some((0..k).map(|r| rows[r][k].clone()).collect())
}

/// Dense n×n binary64 matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn zeros(n: usize) -> Self {
        FloatMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        FloatMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(FloatMatrix {
            n,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.mat_mul(other)?;
        let ba = other.mat_mul(self)?;
        Ok(ab.axpy(-1.0, &ba))
    }

    /// self + s·other (dimensions must agree).
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        FloatMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x + s * y)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        FloatMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    pub fn expm(&self) -> Self {
        let norm = self.max_abs() * self.n as f64;
        let mut s = 0;
        let mut scaled = self.clone();
        if norm > 0.5 {
            s = (norm / 0.5).log2().ceil() as i32;
            scaled = self.scale(0.5f64.powi(s));
        }
        let mut result = Self::identity(self.n);
        let mut term = Self::identity(self.n);
        for k in 1..=20 {
            term = term
                .mat_mul(&scaled)
                .expect("same dimension")
                .scale(1.0 / k as f64);
            result = result.axpy(1.0, &term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        for _ in 0..s {
            result = result.mat_mul(&result).expect("same dimension");
        }
        result
    }
}
