//! Octonions, the 7d cross product, ad_{Im O}, the 14 g₂ generators and the
//! su(3) stabilizer of a fixed imaginary unit.
//!
//! Vectors in Im O are indexed 1..=7 in docs and 0..7 in storage.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    null_space, rank, rat_int, rat_to_string, solve_in_span, ExactMatrix, QuadScalar, Rational,
};
use crate::liealg::LieBasis;

/// (sign, unit) for e_i e_j, row i, column j, unit 0 being 1.
/// Row e3 / column e7 reads −e4 (antisymmetric partner of e7 e3 = e4).
const TABLE: [[(i8, u8); 8]; 8] = {
    const fn p(k: u8) -> (i8, u8) {
        (1, k)
    }
    const fn m(k: u8) -> (i8, u8) {
        (-1, k)
    }
    [
        [p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7)],
        [p(1), m(0), p(3), m(2), p(5), m(4), m(7), p(6)],
        [p(2), m(3), m(0), p(1), p(6), p(7), m(4), m(5)],
        [p(3), p(2), m(1), m(0), p(7), m(6), p(5), m(4)],
        [p(4), m(5), m(6), m(7), m(0), p(1), p(2), p(3)],
        [p(5), p(4), m(7), p(6), m(1), m(0), m(3), p(2)],
        [p(6), p(7), p(4), m(5), m(2), p(3), m(0), m(1)],
        [p(7), m(6), p(5), p(4), m(3), m(2), p(1), m(0)],
    ]
};

/// Product of basis units, both in 0..8.
pub fn unit_product(i: usize, j: usize) -> (i8, usize) {
    let (s, k) = TABLE[i][j];
    (s, k as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    pub c: [Rational; 8],
}

impl Octonion {
    pub fn zero() -> Self {
        Octonion {
            c: std::array::from_fn(|_| Rational::zero()),
        }
    }

    /// e_k for k in 0..8, e_0 = 1.
    pub fn unit(k: usize) -> Self {
        let mut o = Self::zero();
        o.c[k] = rat_int(1);
        o
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Octonion { c: c.map(rat_int) }
    }

    pub fn real(&self) -> &Rational {
        &self.c[0]
    }

    pub fn imag(&self) -> ImOctonion {
        ImOctonion {
            a: std::array::from_fn(|i| self.c[i + 1].clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Octonion {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Octonion {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

pub fn oct_mul(a: &Octonion, b: &Octonion) -> Octonion {
    let mut out = Octonion::zero();
    for i in 0..8 {
        if a.c[i].is_zero() {
            continue;
        }
        for j in 0..8 {
            if b.c[j].is_zero() {
                continue;
            }
            let (s, k) = unit_product(i, j);
            let t = &a.c[i] * &b.c[j];
            if s > 0 {
                out.c[k] += t;
            } else {
                out.c[k] -= t;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImOctonion {
    pub a: [Rational; 7],
}

impl ImOctonion {
    pub fn zero() -> Self {
        ImOctonion {
            a: std::array::from_fn(|_| Rational::zero()),
        }
    }

    /// e_k, k in 1..=7.
    pub fn e(k: usize) -> Self {
        assert!((1..=7).contains(&k), "imaginary unit index {k}");
        let mut v = Self::zero();
        v.a[k - 1] = rat_int(1);
        v
    }

    pub fn from_ints(a: [i64; 7]) -> Self {
        ImOctonion { a: a.map(rat_int) }
    }

    pub fn to_octonion(&self) -> Octonion {
        let mut o = Octonion::zero();
        for i in 0..7 {
            o.c[i + 1] = self.a[i].clone();
        }
        o
    }

    pub fn dot(&self, o: &Self) -> Rational {
        self.a.iter().zip(&o.a).map(|(x, y)| x * y).sum()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ImOctonion {
            a: std::array::from_fn(|i| &self.a[i] * s),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ImOctonion {
            a: std::array::from_fn(|i| &self.a[i] + &o.a[i]),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ImOctonion {
            a: std::array::from_fn(|i| &self.a[i] - &o.a[i]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn to_quad(&self) -> Vec<QuadScalar> {
        self.a
            .iter()
            .cloned()
            .map(QuadScalar::from_rational)
            .collect()
    }

    /// Fails if any component is irrational.
    pub fn from_quad(v: &[QuadScalar]) -> Result<Self> {
        if v.len() != 7 {
            return Err(Error::DimensionMismatch {
                left: 7,
                right: v.len(),
            });
        }
        let mut out = Self::zero();
        for (i, x) in v.iter().enumerate() {
            out.a[i] = x.as_rational().cloned().ok_or_else(|| {
                Error::InvalidArgument(format!("component {} is irrational: {x}", i + 1))
            })?;
        }
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.a.iter().map(rat_to_string).collect()
    }
}

impl std::fmt::Display for ImOctonion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// a × b = Im(ab); the scalar part of ab is −⟨a, b⟩.
pub fn cross(a: &ImOctonion, b: &ImOctonion) -> ImOctonion {
    oct_mul(&a.to_octonion(), &b.to_octonion()).imag()
}

/// The component formula as printed, including its second-row typo
/// (−a₇b₅ − a₅b₇ where the table gives +a₅b₇ − a₇b₅).
pub fn cross_printed(a: &ImOctonion, b: &ImOctonion) -> ImOctonion {
    let x = |i: usize| &a.a[i - 1];
    let y = |j: usize| &b.a[j - 1];
    let t = |i: usize, j: usize| x(i) * y(j);
    ImOctonion {
        a: [
            t(2, 3) - t(3, 2) - t(5, 4) + t(4, 5) + t(7, 6) - t(6, 7),
            -t(1, 3) + t(3, 1) - t(6, 4) + t(4, 6) - t(7, 5) - t(5, 7),
            t(1, 2) - t(2, 1) + t(4, 7) - t(7, 4) + t(6, 5) - t(5, 6),
            -t(1, 5) + t(5, 1) - t(2, 6) + t(6, 2) - t(3, 7) + t(7, 3),
            t(1, 4) - t(4, 1) - t(2, 7) + t(7, 2) + t(3, 6) - t(6, 3),
            t(1, 7) - t(7, 1) + t(2, 4) - t(4, 2) - t(3, 5) + t(5, 3),
            -t(1, 6) + t(6, 1) + t(2, 5) - t(5, 2) + t(3, 4) - t(4, 3),
        ],
    }
}

/// 7×7 matrix with entries linear in seven parameters a..g, written as
/// strings like "-2e" or "0".
pub type Display7 = [[&'static str; 7]; 7];

pub const AD_DISPLAY: Display7 = [
    ["0", "c", "-b", "e", "-d", "-g", "f"],
    ["-c", "0", "a", "f", "g", "-d", "-e"],
    ["b", "-a", "0", "g", "-f", "e", "-d"],
    ["-e", "-f", "-g", "0", "a", "b", "c"],
    ["d", "-g", "f", "-a", "0", "-c", "b"],
    ["g", "d", "-e", "-b", "c", "0", "-a"],
    ["-f", "e", "d", "-c", "-b", "a", "0"],
];

pub const A_DISPLAY: Display7 = [
    ["0", "c", "-b", "0", "-d", "-g", "f"],
    ["-c", "0", "a", "0", "-g", "d", "-e"],
    ["b", "-a", "0", "0", "f", "-e", "0"],
    ["0", "0", "0", "0", "0", "0", "0"],
    ["d", "g", "-f", "0", "0", "c", "-b"],
    ["g", "-d", "e", "0", "-c", "0", "a"],
    ["-f", "e", "0", "0", "b", "-a", "0"],
];

pub const G_DISPLAY_PRINTED: Display7 = [
    ["0", "c", "-b", "-2e", "-d", "-g", "f"],
    ["-c", "0", "a", "-2f", "g", "-d", "-e"],
    ["b", "-a", "0", "-2g", "-f", "e", "2d"],
    ["2e", "2f", "2g", "0", "-2a", "-2b", "-2c"],
    ["d", "-g", "f", "2a", "0", "-c", "-b"],
    ["g", "d", "-e", "2b", "c", "0", "-a"],
    ["-f", "e", "-2d", "2c", "b", "a", "0"],
];

/// Printed G display with the b entries at (5,7) and (7,5) swapped in sign.
pub const G_DISPLAY: Display7 = [
    ["0", "c", "-b", "-2e", "-d", "-g", "f"],
    ["-c", "0", "a", "-2f", "g", "-d", "-e"],
    ["b", "-a", "0", "-2g", "-f", "e", "2d"],
    ["2e", "2f", "2g", "0", "-2a", "-2b", "-2c"],
    ["d", "-g", "f", "2a", "0", "-c", "b"],
    ["g", "d", "-e", "2b", "c", "0", "-a"],
    ["-f", "e", "-2d", "2c", "-b", "a", "0"],
];

fn parse_entry(s: &str) -> (i64, Option<usize>) {
    if s == "0" {
        return (0, None);
    }
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    let split = rest
        .find(|c: char| c.is_ascii_alphabetic())
        .expect("parameter letter");
    let coef: i64 = if split == 0 {
        1
    } else {
        rest[..split].parse().expect("coefficient")
    };
    let param = (rest.as_bytes()[split] - b'a') as usize;
    (sign * coef, Some(param))
}

/// Evaluates a display at parameter values (a, ..., g).
pub fn eval_display(d: &Display7, params: &[Rational; 7]) -> ExactMatrix {
    ExactMatrix::from_fn(7, |i, j| match parse_entry(d[i][j]) {
        (_, None) => QuadScalar::zero(),
        (c, Some(p)) => QuadScalar::from_rational(&params[p] * rat_int(c)),
    })
}

/// Coefficient matrix of the k-th parameter, k in 1..=7.
pub fn display_generator(d: &Display7, k: usize) -> ExactMatrix {
    let params: [Rational; 7] = std::array::from_fn(|i| rat_int((i + 1 == k) as i64));
    eval_display(d, &params)
}

/// The printed ad display at a; it sends v to v × a.
pub fn ad_display(a: &ImOctonion) -> ExactMatrix {
    eval_display(&AD_DISPLAY, &a.a)
}

/// Matrix of v ↦ a × v.
pub fn ad_matrix(a: &ImOctonion) -> ExactMatrix {
    ExactMatrix::from_fn(7, |i, j| {
        let col = cross(a, &ImOctonion::e(j + 1));
        QuadScalar::from_rational(col.a[i].clone())
    })
}

pub fn apply(m: &ExactMatrix, v: &ImOctonion) -> Result<ImOctonion> {
    ImOctonion::from_quad(&m.mul_vec(&v.to_quad())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Element {
    /// Coefficients over (A_1..A_7, G_1..G_7).
    pub coeffs: [Rational; 14],
}

impl G2Element {
    pub fn basis(k: usize) -> Self {
        G2Element {
            coeffs: std::array::from_fn(|i| rat_int((i == k) as i64)),
        }
    }

    pub fn matrix(&self) -> ExactMatrix {
        let basis = g2_basis();
        let mut m = ExactMatrix::zeros(7);
        for (c, b) in self.coeffs.iter().zip(&basis) {
            if !c.is_zero() {
                m = m
                    .add(&b.scale(&QuadScalar::from_rational(c.clone())))
                    .expect("7x7");
            }
        }
        m
    }
}

pub const G2_LABELS: [&str; 14] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "G1", "G2", "G3", "G4", "G5", "G6", "G7",
];

/// A_1..A_7 then G_1..G_7.
pub fn g2_basis() -> Vec<ExactMatrix> {
    (1..=7)
        .map(|k| display_generator(&A_DISPLAY, k))
        .chain((1..=7).map(|k| display_generator(&G_DISPLAY, k)))
        .collect()
}

/// g₂ basis followed by ad_{e_1..e_7}.
pub fn so7_basis() -> Vec<ExactMatrix> {
    let mut v = g2_basis();
    v.extend((1..=7).map(|k| ad_matrix(&ImOctonion::e(k))));
    v
}

/// Basis pairs (i, j), 1-based, on which X fails to be a derivation.
pub fn derivation_failures(x: &ExactMatrix) -> Result<Vec<(usize, usize)>> {
    if x.dim() != 7 {
        return Err(Error::DimensionMismatch {
            left: 7,
            right: x.dim(),
        });
    }
    if !x.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let xe: Vec<ImOctonion> = (1..=7)
        .map(|k| apply(x, &ImOctonion::e(k)))
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for i in 1..=7 {
        for j in 1..=7 {
            let lhs = apply(x, &cross(&ImOctonion::e(i), &ImOctonion::e(j)))?;
            let rhs =
                cross(&xe[i - 1], &ImOctonion::e(j)).add(&cross(&ImOctonion::e(i), &xe[j - 1]));
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

pub fn is_derivation(x: &ExactMatrix) -> Result<bool> {
    Ok(derivation_failures(x)?.is_empty())
}

fn flatten(ms: &[ExactMatrix]) -> Vec<Vec<QuadScalar>> {
    ms.iter().map(|m| m.entries().to_vec()).collect()
}

#[derive(Clone, Debug)]
pub struct So7Split {
    pub g2_coeffs: Vec<QuadScalar>,
    pub g2_part: ExactMatrix,
    pub ad_part: ImOctonion,
}

pub fn so7_decompose(m: &ExactMatrix) -> Result<So7Split> {
    if m.dim() != 7 {
        return Err(Error::DimensionMismatch {
            left: 7,
            right: m.dim(),
        });
    }
    if !m.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let basis = so7_basis();
    let coeffs = solve_in_span(&flatten(&basis), m.entries())
        .ok_or_else(|| Error::InvalidArgument("matrix outside so(7)".into()))?;
    let mut g2_part = ExactMatrix::zeros(7);
    for (c, b) in coeffs[..14].iter().zip(&basis) {
        g2_part = g2_part.add(&b.scale(c))?;
    }
    Ok(So7Split {
        g2_coeffs: coeffs[..14].to_vec(),
        g2_part,
        ad_part: ImOctonion::from_quad(&coeffs[14..])?,
    })
}

/// Exact (dimension, rank) of span + bracket closure over the three pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BracketRelations {
    pub g2_g2_in_g2: bool,
    pub g2_ad_in_ad: bool,
    pub ad_ad_in_g2: bool,
    pub ad_ad_has_g2_part: bool,
}

pub fn bracket_relations() -> Result<BracketRelations> {
    let g2 = g2_basis();
    let ad: Vec<ExactMatrix> = (1..=7).map(|k| ad_matrix(&ImOctonion::e(k))).collect();
    let mut r = BracketRelations {
        g2_g2_in_g2: true,
        g2_ad_in_ad: true,
        ad_ad_in_g2: true,
        ad_ad_has_g2_part: false,
    };
    for x in &g2 {
        for y in &g2 {
            if !so7_decompose(&x.commutator(y)?)?.ad_part.is_zero() {
                r.g2_g2_in_g2 = false;
            }
        }
        for y in &ad {
            if !so7_decompose(&x.commutator(y)?)?.g2_part.is_zero() {
                r.g2_ad_in_ad = false;
            }
        }
    }
    for x in &ad {
        for y in &ad {
            let s = so7_decompose(&x.commutator(y)?)?;
            if !s.ad_part.is_zero() {
                r.ad_ad_in_g2 = false;
            }
            if !s.g2_part.is_zero() {
                r.ad_ad_has_g2_part = true;
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct Su3Stabilizer {
    pub z: ImOctonion,
    /// Null-space coefficient vectors over (A_1..A_7, G_1..G_7).
    pub coords: Vec<Vec<QuadScalar>>,
    pub basis: Vec<ExactMatrix>,
}

impl Su3Stabilizer {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lie_basis(&self) -> Result<LieBasis> {
        LieBasis::new(self.basis.clone())
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.lie_basis()?.is_closed())
    }

    /// Sylvester-style test: symmetric elimination with strictly negative pivots.
    pub fn killing_negative_definite(&self) -> Result<bool> {
        let k = self.lie_basis()?.killing_matrix()?;
        Ok(is_negative_definite(&k))
    }

    /// Minimum centralizer dimension over a few seeded random elements.
    /// For a generic element this is the rank.
    pub fn rank_estimate(&self, seed: u64) -> Result<usize> {
        let lb = self.lie_basis()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = usize::MAX;
        for _ in 0..4 {
            let c: Vec<QuadScalar> = (0..lb.len())
                .map(|_| QuadScalar::from_int(rng.gen_range(-7i64..=7)))
                .collect();
            let h = lb.combine(&c);
            let ad = lb.ad(&h)?;
            best = best.min(null_space(&ad, lb.len()).len());
        }
        Ok(best)
    }

    /// Spans the same subspace as `others`.
    pub fn same_span(&self, others: &[ExactMatrix]) -> bool {
        let mine = flatten(&self.basis);
        let theirs = flatten(others);
        let both: Vec<Vec<QuadScalar>> = mine.iter().chain(&theirs).cloned().collect();
        let r = rank(&mine);
        r == rank(&theirs) && r == rank(&both)
    }
}

pub fn is_negative_definite(m: &[Vec<QuadScalar>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<QuadScalar>> = m.to_vec();
    for p in 0..n {
        let piv = a[p][p].clone();
        let negative = match piv.as_rational() {
            Some(r) => r.is_negative(),
            None => piv.to_f64() < 0.0,
        };
        if !negative {
            return false;
        }
        let inv = piv.inv().expect("nonzero pivot");
        for i in p + 1..n {
            let f = &a[i][p] * &inv;
            for j in p..n {
                let t = &f * &a[p][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    true
}

/// {X ∈ g₂ : X z = 0}.
pub fn stabilizer_su3(z: &ImOctonion) -> Result<Su3Stabilizer> {
    if z.is_zero() {
        return Err(Error::InvalidArgument(
            "stabilizer of the zero vector".into(),
        ));
    }
    let g2 = g2_basis();
    let images: Vec<Vec<QuadScalar>> = g2
        .iter()
        .map(|x| x.mul_vec(&z.to_quad()))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<QuadScalar>> = (0..7)
        .map(|i| images.iter().map(|col| col[i].clone()).collect())
        .collect();
    let coords = null_space(&rows, 14);
    let basis = coords
        .iter()
        .map(|c| {
            c.iter()
                .zip(&g2)
                .try_fold(ExactMatrix::zeros(7), |acc, (s, b)| acc.add(&b.scale(s)))
        })
        .collect::<Result<_>>()?;
    Ok(Su3Stabilizer {
        z: z.clone(),
        coords,
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiConsistency {
    /// [X, ad_Y] Z.
    pub lhs: ImOctonion,
    /// (XY) × Z.
    pub rhs: ImOctonion,
    pub chain_holds: bool,
    pub xz: ImOctonion,
    /// Y × (XZ), the term whose vanishing the chain requires.
    pub residual: ImOctonion,
    pub consistent: bool,
}

pub fn jacobi_consistency(
    x: &ExactMatrix,
    y: &ImOctonion,
    z: &ImOctonion,
) -> Result<JacobiConsistency> {
    let ad_y = ad_matrix(y);
    let lhs = apply(&x.commutator(&ad_y)?, z)?;
    let rhs = cross(&apply(x, y)?, z);
    let xz = apply(x, z)?;
    let residual = cross(y, &xz);
    Ok(JacobiConsistency {
        chain_holds: lhs == rhs,
        consistent: xz.is_zero(),
        lhs,
        rhs,
        xz,
        residual,
    })
}

/// Parses "e4" or a comma list of seven rationals.
pub fn parse_im(s: &str) -> Result<ImOctonion> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix('e') {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad unit '{s}'")))?;
        if !(1..=7).contains(&k) {
            return Err(Error::InvalidArgument(format!("unit e{k} outside e1..e7")));
        }
        return Ok(ImOctonion::e(k));
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 7 {
        return Err(Error::InvalidArgument(format!(
            "expected e1..e7 or 7 components, got '{s}'"
        )));
    }
    let mut v = ImOctonion::zero();
    for (i, p) in parts.iter().enumerate() {
        v.a[i] = p
            .parse::<Rational>()
            .map_err(|_| Error::InvalidArgument(format!("bad component '{p}'")))?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn e(k: usize) -> ImOctonion {
        ImOctonion::e(k)
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            oct_mul(&Octonion::unit(1), &Octonion::unit(2)),
            Octonion::unit(3)
        );
        assert_eq!(
            oct_mul(&Octonion::unit(4), &Octonion::unit(5)),
            Octonion::unit(1)
        );
        let mut minus_one = Octonion::zero();
        minus_one.c[0] = rat_int(-1);
        assert_eq!(oct_mul(&Octonion::unit(6), &Octonion::unit(6)), minus_one);
        // the corrected entry
        assert_eq!(unit_product(3, 7), (-1, 4));
        assert_eq!(unit_product(7, 3), (1, 4));
    }

    #[test]
    fn table_is_anticommutative_off_diagonal() {
        for i in 1..8 {
            assert_eq!(unit_product(i, i), (-1, 0));
            for j in 1..8 {
                if i != j {
                    let (s, k) = unit_product(i, j);
                    assert_eq!(unit_product(j, i), (-s, k));
                    assert_ne!(k, 0);
                }
            }
        }
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&e(1), &e(2)), e(3));
        assert_eq!(cross(&e(2), &e(3)), e(1));
        let a = ImOctonion::from_ints([1, -2, 3, 0, 5, -1, 2]);
        assert!(cross(&a, &a).is_zero());
    }

    #[test]
    fn printed_cross_differs_only_on_e5_e7() {
        let mut bad = Vec::new();
        for i in 1..=7 {
            for j in 1..=7 {
                let (p, c) = (cross_printed(&e(i), &e(j)), cross(&e(i), &e(j)));
                for k in 0..7 {
                    if p.a[k] != c.a[k] {
                        bad.push((i, j, k + 1));
                    }
                }
            }
        }
        assert_eq!(bad, vec![(5, 7, 2)]);
    }

    #[test]
    fn ad_matrix_is_left_cross() {
        assert_eq!(apply(&ad_matrix(&e(1)), &e(2)).unwrap(), e(3));
        let a = ImOctonion::from_ints([2, 0, -1, 3, 1, 1, -4]);
        assert!(apply(&ad_matrix(&a), &a).unwrap().is_zero());
        for k in 1..=7 {
            assert_eq!(ad_display(&e(k)), ad_matrix(&e(k)).neg());
        }
        // column 5 of the display for e4 carries −d at row 1; e4 × e5 = +e1
        assert_eq!(ad_display(&e(4)).get(0, 4), &QuadScalar::from_int(-1));
        assert_eq!(ad_matrix(&e(4)).get(0, 4), &QuadScalar::from_int(1));
    }

    #[test]
    fn g2_generators() {
        let b = g2_basis();
        assert_eq!(b.len(), 14);
        assert_eq!(b[3].get(4, 0), &QuadScalar::one());
        let g4 = &b[10];
        assert!(g4.get(2, 3).is_zero());
        assert!((0..7).all(|i| g4.get(i, 3).is_zero()));
        for (m, label) in b.iter().zip(G2_LABELS) {
            assert!(m.is_antisymmetric(), "{label}");
            assert!(is_derivation(m).unwrap(), "{label}");
        }
        assert_eq!(rank(&flatten(&b)), 14);
        assert_eq!(rank(&flatten(&so7_basis())), 21);
    }

    #[test]
    fn printed_g2_sign_fails() {
        let printed = display_generator(&G_DISPLAY_PRINTED, 2);
        assert_eq!(derivation_failures(&printed).unwrap().len(), 24);
        for k in [1, 3, 4, 5, 6, 7] {
            assert_eq!(
                display_generator(&G_DISPLAY_PRINTED, k),
                display_generator(&G_DISPLAY, k)
            );
        }
    }

    #[test]
    fn derivation_examples() {
        for k in 1..=7 {
            assert!(!is_derivation(&ad_matrix(&e(k))).unwrap());
        }
        assert!(is_derivation(&ExactMatrix::zeros(7)).unwrap());
        assert!(is_derivation(&ExactMatrix::identity(7)).is_err());
    }

    #[test]
    fn decompose_examples() {
        let b = g2_basis();
        let s = so7_decompose(&b[5]).unwrap();
        assert!(s.ad_part.is_zero());
        assert_eq!(s.g2_part, b[5]);
        let s = so7_decompose(&ad_matrix(&e(3))).unwrap();
        assert!(s.g2_part.is_zero());
        assert_eq!(s.ad_part, e(3));
        let m = b[0]
            .add(&ad_matrix(&e(5)).scale(&QuadScalar::from_int(2)))
            .unwrap();
        let s = so7_decompose(&m).unwrap();
        assert_eq!(s.g2_part, b[0]);
        assert_eq!(s.ad_part, e(5).scale(&rat_int(2)));
        assert!(is_derivation(&s.g2_part).unwrap());
    }

    #[test]
    fn brackets() {
        let r = bracket_relations().unwrap();
        assert!(r.g2_g2_in_g2);
        assert!(r.g2_ad_in_ad);
        assert!(r.ad_ad_has_g2_part);
        assert!(!r.ad_ad_in_g2);
    }

    #[test]
    fn stabilizer_of_e4() {
        let s = stabilizer_su3(&e(4)).unwrap();
        assert_eq!(s.dim(), 8);
        let b = g2_basis();
        let expected: Vec<ExactMatrix> = b[..7]
            .iter()
            .chain(std::iter::once(&b[10]))
            .cloned()
            .collect();
        assert!(s.same_span(&expected));
        assert!(s.is_closed().unwrap());
        assert!(s.killing_negative_definite().unwrap());
        assert_eq!(s.rank_estimate(0).unwrap(), 2);
        let s2 = stabilizer_su3(&e(4).scale(&rat_int(2))).unwrap();
        assert!(s2.same_span(&s.basis));
        assert!(stabilizer_su3(&ImOctonion::zero()).is_err());
    }

    #[test]
    fn stabilizer_generic_direction() {
        let z = ImOctonion::from_ints([1, 0, 2, -1, 0, 3, 1]);
        let s = stabilizer_su3(&z).unwrap();
        assert_eq!(s.dim(), 8);
        assert!(s.is_closed().unwrap());
        for m in &s.basis {
            assert!(apply(m, &z).unwrap().is_zero());
        }
    }

    #[test]
    fn jacobi_examples() {
        let b = g2_basis();
        for y in 1..=7 {
            let r = jacobi_consistency(&b[0], &e(y), &e(4)).unwrap();
            assert!(r.chain_holds);
            assert!(r.residual.is_zero());
            assert!(r.consistent);
        }
        let r = jacobi_consistency(&b[7], &e(4), &e(4)).unwrap();
        assert!(r.chain_holds);
        assert_eq!(r.xz, e(5).scale(&rat_int(2)));
        assert_eq!(r.residual, e(1).scale(&rat_int(2)));
        assert!(!r.consistent);
        let r = jacobi_consistency(&ExactMatrix::zeros(7), &e(2), &e(6)).unwrap();
        assert!(r.consistent && r.residual.is_zero());
    }

    #[test]
    fn negative_definite_helper() {
        let q = QuadScalar::from_int;
        assert!(is_negative_definite(&[
            vec![q(-2), q(1)],
            vec![q(1), q(-2)]
        ]));
        assert!(!is_negative_definite(&[
            vec![q(-1), q(2)],
            vec![q(2), q(-1)]
        ]));
        assert!(!is_negative_definite(&[vec![q(0)]]));
    }

    #[test]
    fn parse_im_forms() {
        assert_eq!(parse_im("e4").unwrap(), e(4));
        assert_eq!(parse_im("1,0,0,0,0,0,1/2").unwrap().a[6], rat(1, 2));
        assert!(parse_im("e8").is_err());
        assert!(parse_im("1,2").is_err());
    }
}
