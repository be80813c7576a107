//! The h metric on the 28-dim reduced jet space, the Proca form tr(h·A·A),
//! sector censuses and totally isotropic subspaces.
//!
//! Global index order: 1-jets 1..=4, 2-jet classes 5..=8, 3-jet classes 9..=28.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{rat, trace_metric, ExactMatrix, FloatMatrix, QuadScalar};
use crate::liealg::{so_generator, LieElement};

pub const PROCA_DIM: usize = 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMetric {
    diag: Vec<QuadScalar>,
}

impl HMetric {
    /// 1-based entry.
    pub fn entry(&self, i: usize) -> &QuadScalar {
        &self.diag[i - 1]
    }

    pub fn sign(&self, i: usize) -> i64 {
        let v = self.entry(i);
        if v.is_zero() {
            0
        } else if v.a.numer().sign() == num_bigint::Sign::Minus {
            -1
        } else {
            1
        }
    }

    pub fn as_slice(&self) -> &[QuadScalar] {
        &self.diag
    }

    pub fn signs(&self) -> Vec<i64> {
        (1..=self.diag.len()).map(|i| self.sign(i)).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.diag.iter().map(QuadScalar::to_f64).collect()
    }
}

pub fn h_metric() -> HMetric {
    let mut d = vec![0i64; 4];
    d.extend([1, -1, -1, -1]);
    d.extend([-1; 7]);
    d.extend([1; 13]);
    HMetric {
        diag: d.into_iter().map(QuadScalar::from_int).collect(),
    }
}

fn check_index(i: usize) -> Result<()> {
    if i == 0 || i > PROCA_DIM {
        return Err(Error::InvalidIndex(format!("{i} outside 1..={PROCA_DIM}")));
    }
    Ok(())
}

/// tr(h X_ij X_ij), computed on the realized 28×28 generator.
pub fn proca_trace(i: usize, j: usize) -> Result<QuadScalar> {
    check_index(i)?;
    check_index(j)?;
    if i == j {
        return Err(Error::InvalidIndex(format!(
            "proca_trace needs i != j, got ({i}, {i})"
        )));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let x = so_generator(PROCA_DIM, lo, hi)?;
    trace_metric(h_metric().as_slice(), &x, &x)
}

pub fn proca_table() -> ExactMatrix {
    let mut t = ExactMatrix::zeros(PROCA_DIM);
    for i in 1..=PROCA_DIM {
        for j in i + 1..=PROCA_DIM {
            let v = proca_trace(i, j).expect("valid pair");
            t.set(i - 1, j - 1, v.clone());
            t.set(j - 1, i - 1, v);
        }
    }
    t
}

pub fn order_range(order: usize) -> Result<RangeInclusive<usize>> {
    match order {
        1 => Ok(1..=4),
        2 => Ok(5..=8),
        3 => Ok(9..=28),
        _ => Err(Error::InvalidArgument(format!(
            "jet order {order} not in 1..=3"
        ))),
    }
}

/// (|α|, |β|), stored with |α| ≤ |β|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SectorLabel {
    pub alpha: usize,
    pub beta: usize,
}

impl SectorLabel {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        order_range(a)?;
        order_range(b)?;
        Ok(SectorLabel {
            alpha: a.min(b),
            beta: a.max(b),
        })
    }

    pub fn all() -> Vec<SectorLabel> {
        let mut v = Vec::new();
        for a in 1..=3 {
            for b in a..=3 {
                v.push(SectorLabel { alpha: a, beta: b });
            }
        }
        v
    }

    /// Generator pairs (i, j), i < j, spanning the sector.
    pub fn generators(&self) -> Vec<(usize, usize)> {
        let ra = order_range(self.alpha).expect("validated");
        let rb = order_range(self.beta).expect("validated");
        if self.alpha == self.beta {
            ra.clone()
                .flat_map(|i| (i + 1..=*ra.end()).map(move |j| (i, j)))
                .collect()
        } else {
            ra.flat_map(|i| rb.clone().map(move |j| (i, j))).collect()
        }
    }
}

impl std::fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

pub fn mode_census(sector: SectorLabel) -> Result<Census> {
    SectorLabel::new(sector.alpha, sector.beta)?;
    let mut c = Census {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for (i, j) in sector.generators() {
        let v = proca_trace(i, j)?;
        if v.is_zero() {
            c.zero += 1;
        } else if v.to_f64() > 0.0 {
            c.positive += 1;
        } else {
            c.negative += 1;
        }
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct IsotropicBasis {
    pub sector: SectorLabel,
    pub vectors: Vec<LieElement>,
}

impl IsotropicBasis {
    pub fn gram(&self) -> Result<Vec<Vec<QuadScalar>>> {
        let h = h_metric();
        self.vectors
            .iter()
            .map(|v| {
                self.vectors
                    .iter()
                    .map(|w| trace_metric(h.as_slice(), v.matrix(), w.matrix()))
                    .collect()
            })
            .collect()
    }

    pub fn is_totally_isotropic(&self) -> Result<bool> {
        Ok(self.gram()?.iter().flatten().all(QuadScalar::is_zero))
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<QuadScalar>> = self
            .vectors
            .iter()
            .map(|v| v.matrix().entries().to_vec())
            .collect();
        crate::exactnum::rank(&rows)
    }
}

/// v_ij = X_{i+8,j+8} + X_{i+15,j+15}, 1 ≤ i < j ≤ 7.
pub fn isotropic_33_basis() -> IsotropicBasis {
    let mut vectors = Vec::new();
    for i in 1..=7 {
        for j in i + 1..=7 {
            let v = LieElement::from_terms(
                PROCA_DIM,
                [
                    ((i + 8, j + 8), QuadScalar::one()),
                    ((i + 15, j + 15), QuadScalar::one()),
                ],
            )
            .expect("valid indices");
            vectors.push(v);
        }
    }
    IsotropicBasis {
        sector: SectorLabel { alpha: 3, beta: 3 },
        vectors,
    }
}

/// v_i = X_{i+15,5} + (1/√2) X_{i+8,6} + (1/√2) X_{i+8,7}, 1 ≤ i ≤ 7.
pub fn isotropic_23_basis() -> IsotropicBasis {
    let inv_sqrt2 = QuadScalar::sqrt2().scale(&rat(1, 2));
    let vectors = (1..=7)
        .map(|i| {
            LieElement::from_terms(
                PROCA_DIM,
                [
                    ((i + 15, 5), QuadScalar::one()),
                    ((i + 8, 6), inv_sqrt2.clone()),
                    ((i + 8, 7), inv_sqrt2.clone()),
                ],
            )
            .expect("valid indices")
        })
        .collect();
    IsotropicBasis {
        sector: SectorLabel { alpha: 2, beta: 3 },
        vectors,
    }
}

/// Greedy pairing of a positive-trace generator with an unused negative-trace
/// generator of equal magnitude sharing no ambient index. Distinct generators
/// are trace-orthogonal, so each pair sum is null and the span is isotropic.
pub fn find_isotropic_basis(sector: SectorLabel) -> Result<IsotropicBasis> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, j) in sector.generators() {
        let v = proca_trace(i, j)?;
        if v.is_zero() {
            continue;
        }
        if v.to_f64() > 0.0 {
            pos.push(((i, j), v));
        } else {
            neg.push(((i, j), v));
        }
    }
    let mut used = vec![false; neg.len()];
    let mut vectors = Vec::new();
    for (p, pv) in &pos {
        let found = neg.iter().enumerate().find(|(k, (q, qv))| {
            !used[*k] && (pv + qv).is_zero() && p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
        });
        if let Some((k, (q, _))) = found {
            used[k] = true;
            vectors.push(LieElement::from_terms(
                PROCA_DIM,
                [(*p, QuadScalar::one()), (*q, QuadScalar::one())],
            )?);
        }
    }
    Ok(IsotropicBasis { sector, vectors })
}

/// γ direction of the hypercharge action, X_{6,7}.
pub fn u1y_generator() -> LieElement {
    LieElement::generator(PROCA_DIM, 6, 7).expect("valid")
}

/// tr h v_i [G, v_j] + tr h [G, v_i] v_j for all pairs.
pub fn u1y_first_order_variation(v: &IsotropicBasis) -> Result<Vec<Vec<QuadScalar>>> {
    let h = h_metric();
    let g = u1y_generator();
    let moved: Vec<ExactMatrix> = v
        .vectors
        .iter()
        .map(|x| g.matrix().commutator(x.matrix()))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, vi) in v.vectors.iter().enumerate() {
        let mut row = Vec::new();
        for (j, vj) in v.vectors.iter().enumerate() {
            let a = trace_metric(h.as_slice(), vi.matrix(), &moved[j])?;
            let b = trace_metric(h.as_slice(), &moved[i], vj.matrix())?;
            row.push(&a + &b);
        }
        out.push(row);
    }
    Ok(out)
}

fn float_trace_metric(h: &[f64], a: &FloatMatrix, b: &FloatMatrix) -> f64 {
    let n = a.dim();
    (0..n)
        .filter(|&k| h[k] != 0.0)
        .map(|k| h[k] * (0..n).map(|l| a.get(k, l) * b.get(l, k)).sum::<f64>())
        .sum()
}

/// Largest |Gram(exp(θG) v exp(−θG)) − Gram(v)| entry.
pub fn u1y_finite_deviation(v: &IsotropicBasis, theta: f64) -> Result<f64> {
    let h = h_metric().to_f64();
    let g = u1y_generator().matrix().to_float().scale(theta);
    let r = g.expm();
    let rt = r.transpose();
    let orig: Vec<FloatMatrix> = v.vectors.iter().map(|x| x.matrix().to_float()).collect();
    let rotated: Vec<FloatMatrix> = orig
        .iter()
        .map(|m| r.mat_mul(m).and_then(|x| x.mat_mul(&rt)))
        .collect::<Result<_>>()?;
    let mut dev: f64 = 0.0;
    for i in 0..orig.len() {
        for j in 0..orig.len() {
            let before = float_trace_metric(&h, &orig[i], &orig[j]);
            let after = float_trace_metric(&h, &rotated[i], &rotated[j]);
            dev = dev.max((after - before).abs());
        }
    }
    Ok(dev)
}

pub const U1Y_ANGLES: [f64; 2] = [0.1, 0.7];
pub const U1Y_FLOAT_TOL: f64 = 1e-12;

pub fn u1y_invariance_check(v: &IsotropicBasis) -> bool {
    let exact = match u1y_first_order_variation(v) {
        Ok(m) => m.iter().flatten().all(QuadScalar::is_zero),
        Err(_) => false,
    };
    exact
        && U1Y_ANGLES.iter().all(|&t| {
            u1y_finite_deviation(v, t)
                .map(|d| d <= U1Y_FLOAT_TOL)
                .unwrap_or(false)
        })
}

/// Value of the (3,3) Proca form after conjugation by exp(−θ X_{7,8}),
/// normalized so that θ = 0 gives Σ_{i<j≤7} a² − Σ_{8≤i<j} a².
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotatedProca {
    /// ½ tr(h' A' A') with A' = R A R⁻¹.
    pub direct: f64,
    /// base + K₀ + ½ C cos 2θ − S sin 2θ.
    pub closed_form: f64,
    /// base + C cos 2θ + S sin 2θ, the printed arrangement.
    pub printed: f64,
}

impl RotatedProca {
    pub fn agrees(&self, tol: f64) -> bool {
        (self.direct - self.closed_form).abs() <= tol
    }
}

pub const BLOCK33_DIM: usize = 20;

pub fn rotated_proca_value(
    coeffs: &BTreeMap<(usize, usize), f64>,
    theta: f64,
) -> Result<RotatedProca> {
    let n = BLOCK33_DIM;
    let mut a = FloatMatrix::zeros(n);
    for (&(i, j), &v) in coeffs {
        if i == 0 || j > n || i >= j {
            return Err(Error::InvalidIndex(format!(
                "({i}, {j}) in the 20-dim block"
            )));
        }
        a.set(i - 1, j - 1, v);
        a.set(j - 1, i - 1, -v);
    }
    let aa = |i: usize, j: usize| -> f64 {
        if i < j {
            coeffs.get(&(i, j)).copied().unwrap_or(0.0)
        } else {
            -coeffs.get(&(j, i)).copied().unwrap_or(0.0)
        }
    };
    let h: Vec<f64> = (0..n).map(|k| if k < 7 { -1.0 } else { 1.0 }).collect();
    let gen = so_generator(n, 7, 8)?.to_float();
    let r = gen.scale(-theta).expm();
    let ap = r.mat_mul(&a)?.mat_mul(&r.transpose())?;
    let direct = 0.5 * float_trace_metric(&h, &ap, &ap);

    let sq = |it: &mut dyn Iterator<Item = f64>| it.map(|x| x * x).sum::<f64>();
    let base = sq(&mut (1..=6)
        .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
        .map(|(i, j)| aa(i, j)))
        - sq(&mut (9..=20)
            .flat_map(|i| (i + 1..=20).map(move |j| (i, j)))
            .map(|(i, j)| aa(i, j)));
    let c = sq(&mut (1..=6).map(|i| aa(i, 7))) + sq(&mut (9..=20).map(|i| aa(7, i)))
        - sq(&mut (1..=6).map(|j| aa(j, 8)))
        - sq(&mut (9..=20).map(|j| aa(8, j)));
    let s = (1..=6).map(|i| aa(i, 7) * aa(i, 8)).sum::<f64>()
        + (9..=20).map(|j| aa(7, j) * aa(8, j)).sum::<f64>();
    let k0 = 0.5
        * ((1..=6)
            .map(|k| aa(k, 7).powi(2) + aa(k, 8).powi(2))
            .sum::<f64>()
            - (9..=20)
                .map(|k| aa(7, k).powi(2) + aa(8, k).powi(2))
                .sum::<f64>());
    let (c2, s2) = ((2.0 * theta).cos(), (2.0 * theta).sin());
    Ok(RotatedProca {
        direct,
        closed_form: base + k0 + 0.5 * c * c2 - s * s2,
        printed: base + c * c2 + s * s2,
    })
}

/// Census statements that disagree with the computed (2,3) census, kept verbatim.
pub const CENSUS_23_CONFLICT: &str = "remaining 7 positive and 39 negative modes, signature (7,39)";
