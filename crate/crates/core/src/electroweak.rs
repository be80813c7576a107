//! Electroweak block of the (2,2) connection: mass matrix, mixing, spectrum.
//!
//! Field order is (B⁰, A⁰, A¹, A²) throughout.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{rat, trace_metric, ExactMatrix, FloatMatrix, QuadScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EwFieldConfig {
    pub b0: QuadScalar,
    pub a0: QuadScalar,
    pub a1: QuadScalar,
    pub a2: QuadScalar,
    pub g_prime: QuadScalar,
    pub g: QuadScalar,
}

impl Default for EwFieldConfig {
    fn default() -> Self {
        EwFieldConfig {
            b0: QuadScalar::zero(),
            a0: QuadScalar::zero(),
            a1: QuadScalar::zero(),
            a2: QuadScalar::zero(),
            g_prime: QuadScalar::one(),
            g: QuadScalar::from_int(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedFields {
    pub gamma0: QuadScalar,
    pub z0: QuadScalar,
    pub a1: QuadScalar,
    pub a2: QuadScalar,
}

/// ½ times an antisymmetric 4×4 block. The printed (4,1) entry 2A₀ + B₀ is
/// replaced by −(2A₀ − B₀) so the result lies in so(4).
pub fn ew_connection(cfg: &EwFieldConfig) -> ExactMatrix {
    let two = QuadScalar::from_int(2);
    let a0 = &two * &cfg.a0;
    let a1 = &two * &cfg.a1;
    let a2 = &two * &cfg.a2;
    let p = &a0 + &cfg.b0;
    let m = &a0 - &cfg.b0;
    let z = QuadScalar::zero;
    let rows = vec![
        vec![z(), -&a2, a1.clone(), m.clone()],
        vec![a2.clone(), z(), p.clone(), -&a1],
        vec![-&a1, -&p, z(), -&a2],
        vec![-&m, a1, a2, z()],
    ];
    ExactMatrix::from_rows(rows)
        .expect("4x4")
        .scale(&QuadScalar::from_rational(rat(1, 2)))
}

/// ½ tr(h A A) with h = diag(1, −1, −1, −1).
pub fn ew_proca_form(cfg: &EwFieldConfig) -> QuadScalar {
    let h: Vec<QuadScalar> = [1, -1, -1, -1]
        .into_iter()
        .map(QuadScalar::from_int)
        .collect();
    let a = ew_connection(cfg);
    trace_metric(&h, &a, &a).expect("4x4").scale(&rat(1, 2))
}

/// prefactor × matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassForm {
    pub prefactor: Rational,
    pub matrix: ExactMatrix,
}

impl MassForm {
    pub fn full(&self) -> ExactMatrix {
        self.matrix
            .scale(&QuadScalar::from_rational(self.prefactor.clone()))
    }
}

pub fn mass_matrix(g_prime: &QuadScalar, g: &QuadScalar) -> MassForm {
    let gp2 = g_prime * g_prime;
    let g2 = g * g;
    let ggp = g * g_prime;
    let z = QuadScalar::zero;
    let rows = vec![
        vec![gp2, ggp.clone(), z(), z()],
        vec![ggp, g2.clone(), z(), z()],
        vec![z(), z(), g2.clone(), z()],
        vec![z(), z(), z(), g2],
    ];
    MassForm {
        prefactor: rat(1, 2),
        matrix: ExactMatrix::from_rows(rows).expect("4x4"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeinbergAngle {
    pub sin_sq: QuadScalar,
    /// Present when √(sin²θ) lies in Q(√2, √5).
    pub sin: Option<QuadScalar>,
    pub cos: Option<QuadScalar>,
}

pub fn weinberg_angle(g_prime: &QuadScalar, g: &QuadScalar) -> Result<WeinbergAngle> {
    let gp2 = g_prime * g_prime;
    let total = &gp2 + &(g * g);
    if total.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let sin_sq = gp2.checked_div(&total)?;
    let cos_sq = &QuadScalar::one() - &sin_sq;
    let root = |x: &QuadScalar| x.as_rational().and_then(QuadScalar::sqrt_of_rational);
    Ok(WeinbergAngle {
        sin: root(&sin_sq),
        cos: root(&cos_sq),
        sin_sq,
    })
}

/// Rotation taking (B⁰, A⁰, A¹, A²) to (γ⁰, Z⁰, A¹, A²).
pub fn mixing_rotation(cos: &QuadScalar, sin: &QuadScalar) -> Result<ExactMatrix> {
    if !(&(cos * cos) + &(sin * sin) - QuadScalar::one()).is_zero() {
        return Err(Error::NonUnitRotation);
    }
    let z = QuadScalar::zero;
    let o = QuadScalar::one;
    ExactMatrix::from_rows(vec![
        vec![cos.clone(), sin.clone(), z(), z()],
        vec![-sin, cos.clone(), z(), z()],
        vec![z(), z(), o(), z()],
        vec![z(), z(), z(), o()],
    ])
}

/// Rᵀ M R. This is the arrangement whose 2×2 block equals
/// (g′c − gs)², gg′cos2θ + (g′² − g²)cs, (gc + g′s)².
pub fn apply_mixing(cos: &QuadScalar, sin: &QuadScalar, m: &ExactMatrix) -> Result<ExactMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: m.dim(),
        });
    }
    let r = mixing_rotation(cos, sin)?;
    r.transpose().mat_mul(m)?.mat_mul(&r)
}

pub fn mix_fields(cos: &QuadScalar, sin: &QuadScalar, cfg: &EwFieldConfig) -> Result<MixedFields> {
    let r = mixing_rotation(cos, sin)?;
    let v = r.mul_vec(&[
        cfg.b0.clone(),
        cfg.a0.clone(),
        cfg.a1.clone(),
        cfg.a2.clone(),
    ])?;
    let mut it = v.into_iter();
    Ok(MixedFields {
        gamma0: it.next().expect("4"),
        z0: it.next().expect("4"),
        a1: it.next().expect("4"),
        a2: it.next().expect("4"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassSpectrum {
    pub photon: QuadScalar,
    pub z: QuadScalar,
    pub w: QuadScalar,
    /// M_Z / M_W = sec θ.
    pub ratio: QuadScalar,
    pub ratio_sq: QuadScalar,
}

/// With g′ = 1, g = 2, on the bracketed matrix.
pub fn mass_spectrum() -> MassSpectrum {
    let (gp, g) = (QuadScalar::one(), QuadScalar::from_int(2));
    let w = weinberg_angle(&gp, &g).expect("nonzero couplings");
    let (c, s) = (w.cos.expect("2/sqrt5"), w.sin.expect("1/sqrt5"));
    let d = apply_mixing(&c, &s, &mass_matrix(&gp, &g).matrix).expect("unit rotation");
    let ratio = c.inv().expect("cos nonzero");
    MassSpectrum {
        photon: d.get(0, 0).clone(),
        z: d.get(1, 1).clone(),
        w: d.get(2, 2).clone(),
        ratio_sq: &ratio * &ratio,
        ratio,
    }
}

pub const SIN2_THETA_W_EXPERIMENT: f64 = 0.23120;
pub const SIN2_THETA_W_EXPERIMENT_ERR: f64 = 0.00015;

/// Cyclic Jacobi rotations; eigenvalues ascending.
pub fn float_eigen_crosscheck(m: &FloatMatrix) -> Result<Vec<f64>> {
    if !m.is_symmetric(1e-12) {
        return Err(Error::NotSymmetric);
    }
    let n = m.dim();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).powi(2))
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    Ok(ev)
}

/// Report-friendly summary for g′ = 1, g = 2.
#[derive(Clone, Debug, Serialize)]
pub struct EwSummary {
    pub mass_prefactor: String,
    pub mass_matrix: Vec<Vec<String>>,
    pub cos_theta: String,
    pub sin_theta: String,
    pub sin2_theta: String,
    pub mixed_matrix: Vec<Vec<String>>,
    pub spectrum: [String; 4],
    pub ratio: String,
    pub ratio_float: f64,
    pub sin2_theory: f64,
    pub sin2_experiment: f64,
    pub sin2_experiment_err: f64,
    pub jacobi_eigenvalues: Vec<f64>,
}

pub fn summary() -> EwSummary {
    let (gp, g) = (QuadScalar::one(), QuadScalar::from_int(2));
    let mm = mass_matrix(&gp, &g);
    let w = weinberg_angle(&gp, &g).expect("nonzero");
    let (c, s) = (w.cos.clone().expect("exact"), w.sin.clone().expect("exact"));
    let mixed = apply_mixing(&c, &s, &mm.matrix).expect("unit");
    let sp = mass_spectrum();
    EwSummary {
        mass_prefactor: crate::exactnum::rat_to_string(&mm.prefactor),
        mass_matrix: mm.matrix.rows_as_strings(),
        cos_theta: c.to_string(),
        sin_theta: s.to_string(),
        sin2_theta: w.sin_sq.to_string(),
        mixed_matrix: mixed.rows_as_strings(),
        spectrum: [
            sp.photon.to_string(),
            sp.z.to_string(),
            sp.w.to_string(),
            mixed.get(3, 3).to_string(),
        ],
        ratio: sp.ratio.to_string(),
        ratio_float: sp.ratio.to_f64(),
        sin2_theory: w.sin_sq.to_f64(),
        sin2_experiment: SIN2_THETA_W_EXPERIMENT,
        sin2_experiment_err: SIN2_THETA_W_EXPERIMENT_ERR,
        jacobi_eigenvalues: float_eigen_crosscheck(&mm.matrix.to_float()).expect("symmetric"),
    }
}
