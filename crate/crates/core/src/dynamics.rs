//! Weak-field dynamics: field strength from the metric potentials g_ν, the
//! non-abelian F = dA + [A, A], and RK4 trajectories for the Lorentz and Wong
//! force laws.
//!
//! Conventions: η = diag(−1, 1, 1, 1), F_{μν} = ∂_μ g_ν − ∂_ν g_μ,
//! F^μ_ν = η^{μμ} F_{μν}, du^μ/dλ = (q/m) F^μ_ν u^ν. For the uniform fields
//! F_{i0} = E_i and F_{ij} = ε_{ijk} B_k, so the spatial equation reads
//! du/dλ = (q/m)(E u⁰ + u × B).

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::FloatMatrix;

pub type Vec4 = [f64; 4];
pub type Tensor4 = [[f64; 4]; 4];

pub const ETA: Vec4 = [-1.0, 1.0, 1.0, 1.0];

pub fn eta_dot(a: &Vec4, b: &Vec4) -> f64 {
    (0..4).map(|k| ETA[k] * a[k] * b[k]).sum()
}

/// F^μ_ν from F_{μν}.
pub fn raise_first(f: &Tensor4) -> Tensor4 {
    std::array::from_fn(|m| std::array::from_fn(|n| ETA[m] * f[m][n]))
}

fn shifted(x: &Vec4, mu: usize, d: f64) -> Vec4 {
    let mut y = *x;
    y[mu] += d;
    y
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Potentials g_ν(x) = g_{ν,00}(x).
pub trait MetricField: Sync {
    fn potential(&self, x: &Vec4) -> Result<Vec4>;
}

/// Wraps any closure as a metric field.
pub struct ClosureMetric<F>(pub F);

impl<F: Fn(&Vec4) -> Vec4 + Sync> MetricField for ClosureMetric<F> {
    fn potential(&self, x: &Vec4) -> Result<Vec4> {
        Ok((self.0)(x))
    }
}

/// g_0 = E·x, g_i = ½ (B × x)_i.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UniformPotential {
    pub e: [f64; 3],
    pub b: [f64; 3],
}

impl UniformPotential {
    pub fn electric(e: [f64; 3]) -> Self {
        UniformPotential { e, b: [0.0; 3] }
    }

    pub fn magnetic(b: [f64; 3]) -> Self {
        UniformPotential { e: [0.0; 3], b }
    }

    /// F_{μν}, exact.
    pub fn tensor(&self) -> Tensor4 {
        let mut f = [[0.0; 4]; 4];
        for i in 0..3 {
            f[i + 1][0] = self.e[i];
            f[0][i + 1] = -self.e[i];
            for j in 0..3 {
                f[i + 1][j + 1] = (0..3).map(|k| levi_civita(i, j, k) * self.b[k]).sum();
            }
        }
        f
    }
}

impl MetricField for UniformPotential {
    fn potential(&self, x: &Vec4) -> Result<Vec4> {
        let s = [x[1], x[2], x[3]];
        let b = &self.b;
        let bxs = [
            b[1] * s[2] - b[2] * s[1],
            b[2] * s[0] - b[0] * s[2],
            b[0] * s[1] - b[1] * s[0],
        ];
        Ok([
            self.e[0] * s[0] + self.e[1] * s[1] + self.e[2] * s[2],
            0.5 * bxs[0],
            0.5 * bxs[1],
            0.5 * bxs[2],
        ])
    }
}

/// ∂_μ g_ν with the five-point stencil.
pub fn metric_gradient(g: &dyn MetricField, x: &Vec4, h: f64) -> Result<Tensor4> {
    let mut d = [[0.0; 4]; 4];
    for mu in 0..4 {
        let p1 = g.potential(&shifted(x, mu, h))?;
        let m1 = g.potential(&shifted(x, mu, -h))?;
        let p2 = g.potential(&shifted(x, mu, 2.0 * h))?;
        let m2 = g.potential(&shifted(x, mu, -2.0 * h))?;
        for nu in 0..4 {
            d[mu][nu] = (-p2[nu] + 8.0 * p1[nu] - 8.0 * m1[nu] + m2[nu]) / (12.0 * h);
        }
    }
    Ok(d)
}

fn curl(d: &Tensor4) -> Tensor4 {
    std::array::from_fn(|m| std::array::from_fn(|n| d[m][n] - d[n][m]))
}

/// F_{μν} at x; raise with [`raise_first`].
pub fn field_strength_em(g: &dyn MetricField, x: &Vec4, h: f64) -> Result<Tensor4> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step {h} must be positive")));
    }
    Ok(curl(&metric_gradient(g, x, h)?))
}

/// Something that yields F_{μν} at a point.
pub trait EmField: Sync {
    fn f_lower(&self, x: &Vec4) -> Result<Tensor4>;
}

impl EmField for UniformPotential {
    fn f_lower(&self, _x: &Vec4) -> Result<Tensor4> {
        Ok(self.tensor())
    }
}

/// Finite-difference field strength of a metric field.
pub struct NumericEm<'a> {
    pub g: &'a dyn MetricField,
    pub h: f64,
}

impl EmField for NumericEm<'_> {
    fn f_lower(&self, x: &Vec4) -> Result<Tensor4> {
        field_strength_em(self.g, x, self.h)
    }
}

/// Potentials sampled on a regular 4d grid. F is computed at interior nodes
/// with the five-point stencil and interpolated multilinearly.
#[derive(Clone, Debug)]
pub struct GridField {
    pub origin: Vec4,
    pub spacing: Vec4,
    pub dims: [usize; 4],
    node_f: Vec<Option<Tensor4>>,
}

impl GridField {
    pub fn sample(
        g: &dyn MetricField,
        origin: Vec4,
        spacing: Vec4,
        dims: [usize; 4],
    ) -> Result<Self> {
        if dims.iter().any(|&d| d < 6) {
            return Err(Error::InvalidArgument(
                "grid needs at least 6 nodes per axis".into(),
            ));
        }
        if spacing.iter().any(|&h| !(h > 0.0)) {
            return Err(Error::InvalidArgument(
                "grid spacing must be positive".into(),
            ));
        }
        let total: usize = dims.iter().product();
        let mut pot = Vec::with_capacity(total);
        for idx in 0..total {
            let n = unflatten(idx, &dims);
            let x: Vec4 = std::array::from_fn(|k| origin[k] + n[k] as f64 * spacing[k]);
            pot.push(g.potential(&x)?);
        }
        let node_f = (0..total)
            .map(|idx| {
                let n = unflatten(idx, &dims);
                if (0..4).any(|k| n[k] < 2 || n[k] + 2 >= dims[k]) {
                    return None;
                }
                let mut d = [[0.0; 4]; 4];
                for mu in 0..4 {
                    let at = |off: isize| {
                        let mut m = n;
                        m[mu] = (m[mu] as isize + off) as usize;
                        &pot[flatten(&m, &dims)]
                    };
                    for nu in 0..4 {
                        d[mu][nu] = (-at(2)[nu] + 8.0 * at(1)[nu] - 8.0 * at(-1)[nu] + at(-2)[nu])
                            / (12.0 * spacing[mu]);
                    }
                }
                Some(curl(&d))
            })
            .collect();
        Ok(GridField {
            origin,
            spacing,
            dims,
            node_f,
        })
    }
}

fn unflatten(mut idx: usize, dims: &[usize; 4]) -> [usize; 4] {
    let mut n = [0; 4];
    for k in (0..4).rev() {
        n[k] = idx % dims[k];
        idx /= dims[k];
    }
    n
}

fn flatten(n: &[usize; 4], dims: &[usize; 4]) -> usize {
    n.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

impl EmField for GridField {
    fn f_lower(&self, x: &Vec4) -> Result<Tensor4> {
        let mut base = [0usize; 4];
        let mut frac = [0.0; 4];
        for k in 0..4 {
            let s = (x[k] - self.origin[k]) / self.spacing[k];
            if !s.is_finite() || s < 0.0 {
                return Err(Error::Boundary);
            }
            let i = s.floor() as usize;
            if i < 2 || i + 3 >= self.dims[k] {
                return Err(Error::Boundary);
            }
            base[k] = i;
            frac[k] = s - i as f64;
        }
        let mut out = [[0.0; 4]; 4];
        for corner in 0..16usize {
            let mut n = base;
            let mut w = 1.0;
            for k in 0..4 {
                let bit = (corner >> k) & 1;
                n[k] += bit;
                w *= if bit == 1 { frac[k] } else { 1.0 - frac[k] };
            }
            let f = self.node_f[flatten(&n, &self.dims)].ok_or(Error::Boundary)?;
            for (o, fr) in out.iter_mut().zip(f.iter()) {
                for (a, b) in o.iter_mut().zip(fr) {
                    *a += w * b;
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    pub x: Vec4,
    pub u: Vec4,
    pub m: f64,
    pub q: f64,
    /// Gauge charge vector; empty for the abelian law.
    #[serde(default)]
    pub charge: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub lambda: f64,
    pub x: Vec4,
    pub u: Vec4,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub step: f64,
    pub order: u32,
    pub samples: Vec<Sample>,
    /// max |η(u,u) − η(u₀,u₀)| along the run.
    pub eta_drift: f64,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("at least the initial sample")
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "lambda,x0,x1,x2,x3,u0,u1,u2,u3")?;
        for s in &self.samples {
            let cols: Vec<String> = std::iter::once(s.lambda)
                .chain(s.x)
                .chain(s.u)
                .map(|v| format!("{v:e}"))
                .collect();
            writeln!(w, "{}", cols.join(","))?;
        }
        Ok(())
    }
}

fn check_run(s0: &ParticleState, dl: f64) -> Result<()> {
    if !(s0.m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mass {} must be positive",
            s0.m
        )));
    }
    if !(dl > 0.0) || !dl.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step {dl} must be positive and finite"
        )));
    }
    Ok(())
}

/// Classical RK4 on (x, u) with du^μ/dλ = k F^μ_ν(x) u^ν, F given lowered.
fn rk4(
    s0: &ParticleState,
    dl: f64,
    n: usize,
    k: f64,
    f: &dyn Fn(&Vec4) -> Result<Tensor4>,
) -> Result<Trajectory> {
    let rhs = |x: &Vec4, u: &Vec4| -> Result<(Vec4, Vec4)> {
        let fm = raise_first(&f(x)?);
        let du: Vec4 = std::array::from_fn(|m| k * (0..4).map(|v| fm[m][v] * u[v]).sum::<f64>());
        Ok((*u, du))
    };
    let add = |a: &Vec4, b: &Vec4, s: f64| -> Vec4 { std::array::from_fn(|i| a[i] + s * b[i]) };
    let (mut x, mut u) = (s0.x, s0.u);
    let eta0 = eta_dot(&u, &u);
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(Sample { lambda: 0.0, x, u });
    let mut drift: f64 = 0.0;
    for step in 1..=n {
        let (k1x, k1u) = rhs(&x, &u)?;
        let (k2x, k2u) = rhs(&add(&x, &k1x, dl / 2.0), &add(&u, &k1u, dl / 2.0))?;
        let (k3x, k3u) = rhs(&add(&x, &k2x, dl / 2.0), &add(&u, &k2u, dl / 2.0))?;
        let (k4x, k4u) = rhs(&add(&x, &k3x, dl), &add(&u, &k3u, dl))?;
        for i in 0..4 {
            x[i] += dl / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
            u[i] += dl / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
        }
        if x.iter().chain(&u).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step });
        }
        drift = drift.max((eta_dot(&u, &u) - eta0).abs());
        samples.push(Sample {
            lambda: step as f64 * dl,
            x,
            u,
        });
    }
    Ok(Trajectory {
        step: dl,
        order: 4,
        samples,
        eta_drift: drift,
    })
}

pub fn integrate_lorentz(
    s0: &ParticleState,
    field: &dyn EmField,
    dl: f64,
    n: usize,
) -> Result<Trajectory> {
    check_run(s0, dl)?;
    rk4(s0, dl, n, s0.q / s0.m, &|x| field.f_lower(x))
}

/// ⟨X, Y⟩ = −tr(XY)/2; on so(n) this is −K/(2(n − 2)) and gives X_{12} unit norm.
pub fn gauge_pairing(x: &FloatMatrix, y: &FloatMatrix) -> f64 {
    let n = x.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += x.get(i, j) * y.get(j, i);
        }
    }
    -s / 2.0
}

pub type GaugeTensor = [[FloatMatrix; 4]; 4];

/// Matrix-valued F_{μν}.
pub trait GaugeField: Sync {
    fn dim(&self) -> usize;
    fn f_lower(&self, x: &Vec4) -> Result<GaugeTensor>;
}

/// F_{μν} = f_{μν} T for a scalar field f and fixed generator T.
pub struct AbelianEmbedding<'a> {
    pub field: &'a dyn EmField,
    pub generator: FloatMatrix,
}

impl GaugeField for AbelianEmbedding<'_> {
    fn dim(&self) -> usize {
        self.generator.dim()
    }

    fn f_lower(&self, x: &Vec4) -> Result<GaugeTensor> {
        let f = self.field.f_lower(x)?;
        Ok(std::array::from_fn(|m| {
            std::array::from_fn(|n| self.generator.scale(f[m][n]))
        }))
    }
}

#[derive(Clone, Debug)]
pub struct ConstantGaugeField {
    pub f: GaugeTensor,
}

impl GaugeField for ConstantGaugeField {
    fn dim(&self) -> usize {
        self.f[0][0].dim()
    }

    fn f_lower(&self, _x: &Vec4) -> Result<GaugeTensor> {
        Ok(self.f.clone())
    }
}

/// du^μ/dλ = (q/m) (F^μ_ν · I) u^ν with F·I = Σ_a I_a ⟨F, T_a⟩; I is constant.
pub fn integrate_wong(
    s0: &ParticleState,
    field: &dyn GaugeField,
    basis: &[FloatMatrix],
    dl: f64,
    n: usize,
) -> Result<Trajectory> {
    check_run(s0, dl)?;
    if s0.charge.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            left: basis.len(),
            right: s0.charge.len(),
        });
    }
    if let Some(b) = basis.iter().find(|b| b.dim() != field.dim()) {
        return Err(Error::DimensionMismatch {
            left: field.dim(),
            right: b.dim(),
        });
    }
    let contract = |x: &Vec4| -> Result<Tensor4> {
        let f = field.f_lower(x)?;
        Ok(std::array::from_fn(|m| {
            std::array::from_fn(|v| {
                s0.charge
                    .iter()
                    .zip(basis)
                    .filter(|(c, _)| **c != 0.0)
                    .map(|(c, t)| c * gauge_pairing(&f[m][v], t))
                    .sum()
            })
        }))
    };
    rk4(s0, dl, n, s0.q / s0.m, &contract)
}

/// Matrix-valued potentials A_μ(x).
pub trait GaugePotential: Sync {
    fn dim(&self) -> usize;
    fn a(&self, x: &Vec4) -> Result<[FloatMatrix; 4]>;
    /// ∂_μ A_ν, indexed [μ][ν], when known in closed form.
    fn jacobian(&self, _x: &Vec4) -> Option<GaugeTensor> {
        None
    }
}

/// A_ν(x) = c_ν + Σ_μ x^μ s_{μν}.
#[derive(Clone, Debug)]
pub struct LinearGauge {
    pub constant: [FloatMatrix; 4],
    pub slope: GaugeTensor,
}

impl GaugePotential for LinearGauge {
    fn dim(&self) -> usize {
        self.constant[0].dim()
    }

    fn a(&self, x: &Vec4) -> Result<[FloatMatrix; 4]> {
        Ok(std::array::from_fn(|nu| {
            (0..4).fold(self.constant[nu].clone(), |acc, mu| {
                acc.axpy(x[mu], &self.slope[mu][nu])
            })
        }))
    }

    fn jacobian(&self, _x: &Vec4) -> Option<GaugeTensor> {
        Some(self.slope.clone())
    }
}

pub struct ClosureGauge<F> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(&Vec4) -> [FloatMatrix; 4] + Sync> GaugePotential for ClosureGauge<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn a(&self, x: &Vec4) -> Result<[FloatMatrix; 4]> {
        Ok((self.f)(x))
    }
}

/// Λ A Λ⁻¹ for constant orthogonal Λ.
pub struct ConjugatedGauge<'a> {
    pub inner: &'a dyn GaugePotential,
    pub lambda: FloatMatrix,
}

impl ConjugatedGauge<'_> {
    fn conj(&self, m: &FloatMatrix) -> FloatMatrix {
        self.lambda
            .mat_mul(m)
            .and_then(|t| t.mat_mul(&self.lambda.transpose()))
            .expect("matching dimensions")
    }
}

impl GaugePotential for ConjugatedGauge<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn a(&self, x: &Vec4) -> Result<[FloatMatrix; 4]> {
        let a = self.inner.a(x)?;
        Ok(std::array::from_fn(|k| self.conj(&a[k])))
    }

    fn jacobian(&self, x: &Vec4) -> Option<GaugeTensor> {
        let j = self.inner.jacobian(x)?;
        Some(std::array::from_fn(|m| {
            std::array::from_fn(|n| self.conj(&j[m][n]))
        }))
    }
}

fn central_jacobian(a: &dyn GaugePotential, x: &Vec4, h: f64) -> Result<GaugeTensor> {
    let mut rows = Vec::with_capacity(4);
    for mu in 0..4 {
        let p = a.a(&shifted(x, mu, h))?;
        let m = a.a(&shifted(x, mu, -h))?;
        rows.push(std::array::from_fn::<FloatMatrix, 4, _>(|nu| {
            p[nu].axpy(-1.0, &m[nu]).scale(0.5 / h)
        }));
    }
    Ok(rows
        .try_into()
        .map_err(|_| Error::InvalidArgument("jacobian".into()))?)
}

fn assemble(a: &[FloatMatrix; 4], d: &GaugeTensor, mu: usize, nu: usize) -> Result<FloatMatrix> {
    Ok(d[mu][nu]
        .axpy(-1.0, &d[nu][mu])
        .axpy(1.0, &a[mu].commutator(&a[nu])?))
}

/// F_{μν} = ∂_μ A_ν − ∂_ν A_μ + [A_μ, A_ν], derivatives by central differences.
pub fn discrete_field_strength(
    a: &dyn GaugePotential,
    x: &Vec4,
    (mu, nu): (usize, usize),
    h: f64,
) -> Result<FloatMatrix> {
    if mu > 3 || nu > 3 {
        return Err(Error::InvalidIndex(format!("({mu}, {nu})")));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step {h} must be positive")));
    }
    assemble(&a.a(x)?, &central_jacobian(a, x, h)?, mu, nu)
}

/// All F_{μν}; uses the closed-form Jacobian when the potential has one.
pub fn field_strength_at(a: &dyn GaugePotential, x: &Vec4, h: f64) -> Result<GaugeTensor> {
    let av = a.a(x)?;
    let d = match a.jacobian(x) {
        Some(j) => j,
        None => central_jacobian(a, x, h)?,
    };
    let mut out: Vec<[FloatMatrix; 4]> = Vec::with_capacity(4);
    for mu in 0..4 {
        let mut row = Vec::with_capacity(4);
        for nu in 0..4 {
            row.push(assemble(&av, &d, mu, nu)?);
        }
        out.push(
            row.try_into()
                .map_err(|_| Error::InvalidArgument("row".into()))?,
        );
    }
    out.try_into()
        .map_err(|_| Error::InvalidArgument("tensor".into()))
}

/// Field strength of a potential, exposed as a gauge field.
pub struct PotentialGaugeField<'a> {
    pub potential: &'a dyn GaugePotential,
    pub h: f64,
}

impl GaugeField for PotentialGaugeField<'_> {
    fn dim(&self) -> usize {
        self.potential.dim()
    }

    fn f_lower(&self, x: &Vec4) -> Result<GaugeTensor> {
        field_strength_at(self.potential, x, self.h)
    }
}

/// max over λ < μ < ν of max|∂_λF_{μν} + [A_λ, F_{μν}] + cyclic|, outer
/// derivative by central differences.
pub fn bianchi_residual(a: &dyn GaugePotential, x: &Vec4, h: f64) -> Result<f64> {
    let av = a.a(x)?;
    let f0 = field_strength_at(a, x, h)?;
    let mut df: Vec<GaugeTensor> = Vec::with_capacity(4);
    for l in 0..4 {
        let p = field_strength_at(a, &shifted(x, l, h), h)?;
        let m = field_strength_at(a, &shifted(x, l, -h), h)?;
        df.push(std::array::from_fn(|i| {
            std::array::from_fn(|j| p[i][j].axpy(-1.0, &m[i][j]).scale(0.5 / h))
        }));
    }
    let mut worst: f64 = 0.0;
    for l in 0..4 {
        for m in l + 1..4 {
            for n in m + 1..4 {
                let mut r = FloatMatrix::zeros(a.dim());
                for (i, j, k) in [(l, m, n), (m, n, l), (n, l, m)] {
                    r = r
                        .axpy(1.0, &df[i][j][k])
                        .axpy(1.0, &av[i].commutator(&f0[j][k])?);
                }
                worst = worst.max(r.max_abs());
            }
        }
    }
    Ok(worst)
}

fn check_orthogonal(lambda: &FloatMatrix) -> Result<()> {
    let dev = lambda
        .mat_mul(&lambda.transpose())?
        .max_abs_diff(&FloatMatrix::identity(lambda.dim()));
    if dev > 1e-12 {
        return Err(Error::NotOrthogonal(dev));
    }
    Ok(())
}

/// max|F(ΛAΛ⁻¹)_{μν} − Λ F(A)_{μν} Λ⁻¹|.
pub fn gauge_covariance_deviation(
    a: &dyn GaugePotential,
    lambda: &FloatMatrix,
    x: &Vec4,
    pair: (usize, usize),
    h: f64,
) -> Result<f64> {
    check_orthogonal(lambda)?;
    let conj = ConjugatedGauge {
        inner: a,
        lambda: lambda.clone(),
    };
    let lhs = discrete_field_strength(&conj, x, pair, h)?;
    let rhs = conj.conj(&discrete_field_strength(a, x, pair, h)?);
    Ok(lhs.max_abs_diff(&rhs))
}

pub const GAUGE_COVARIANCE_TOL: f64 = 1e-10;

pub fn gauge_covariance_check(
    a: &dyn GaugePotential,
    lambda: &FloatMatrix,
    x: &Vec4,
    pair: (usize, usize),
    h: f64,
) -> Result<bool> {
    Ok(gauge_covariance_deviation(a, lambda, x, pair, h)? <= GAUGE_COVARIANCE_TOL)
}

/// q + √α m.
pub fn recalibrate_charge(q: f64, m: f64, alpha: f64) -> Result<f64> {
    if !(m > 0.0) {
        return Err(Error::InvalidArgument(format!("mass {m} must be positive")));
    }
    if alpha < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "alpha {alpha} must be non-negative"
        )));
    }
    Ok(q + alpha.sqrt() * m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "uniform_E")]
    UniformE {
        #[serde(rename = "E")]
        e: [f64; 3],
    },
    #[serde(rename = "uniform_B")]
    UniformB {
        #[serde(rename = "B")]
        b: [f64; 3],
    },
    /// Uniform E and B potentials sampled on a grid.
    #[serde(rename = "grid")]
    Grid {
        #[serde(rename = "E", default)]
        e: [f64; 3],
        #[serde(rename = "B", default)]
        b: [f64; 3],
        origin: Vec4,
        spacing: Vec4,
        dims: [usize; 4],
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticleSpec {
    pub x0: Vec4,
    pub u0: Vec4,
    pub m: f64,
    pub q: f64,
    #[serde(rename = "I", default)]
    pub charge: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorSpec {
    pub dlambda: f64,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub field: FieldSpec,
    pub particle: ParticleSpec,
    pub integrator: IntegratorSpec,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

/// A charge vector selects the Wong law on so(3) embedded along X_{12}, X_{13}, X_{23}
/// with the scalar field placed along X_{12}.
pub fn run_simulation(cfg: &SimConfig) -> Result<Trajectory> {
    let p = &cfg.particle;
    let s0 = ParticleState {
        x: p.x0,
        u: p.u0,
        m: p.m,
        q: p.q,
        charge: p.charge.clone().unwrap_or_default(),
    };
    let (dl, n) = (cfg.integrator.dlambda, cfg.integrator.steps);
    let grid;
    let uniform;
    let field: &dyn EmField = match &cfg.field {
        FieldSpec::UniformE { e } => {
            uniform = UniformPotential::electric(*e);
            &uniform
        }
        FieldSpec::UniformB { b } => {
            uniform = UniformPotential::magnetic(*b);
            &uniform
        }
        FieldSpec::Grid {
            e,
            b,
            origin,
            spacing,
            dims,
        } => {
            grid = GridField::sample(&UniformPotential { e: *e, b: *b }, *origin, *spacing, *dims)?;
            &grid
        }
    };
    if s0.charge.is_empty() {
        integrate_lorentz(&s0, field, dl, n)
    } else {
        let basis = so3_float_basis();
        let embedded = AbelianEmbedding {
            field,
            generator: basis[0].clone(),
        };
        integrate_wong(&s0, &embedded, &basis, dl, n)
    }
}

/// X_{12}, X_{13}, X_{23} as float matrices.
pub fn so3_float_basis() -> Vec<FloatMatrix> {
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let mut m = FloatMatrix::zeros(3);
            m.set(i, j, 1.0);
            m.set(j, i, -1.0);
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: &Tensor4, b: &Tensor4, tol: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| (a[i][j] - b[i][j]).abs() <= tol))
    }

    fn particle(u: Vec4) -> ParticleState {
        ParticleState {
            x: [0.0; 4],
            u,
            m: 1.0,
            q: 1.0,
            charge: vec![],
        }
    }

    fn gen(n: usize, i: usize, j: usize, s: f64) -> FloatMatrix {
        let mut m = FloatMatrix::zeros(n);
        m.set(i, j, s);
        m.set(j, i, -s);
        m
    }

    #[test]
    fn constant_potential_has_no_field() {
        let g = ClosureMetric(|_: &Vec4| [1.0, -2.0, 0.5, 3.0]);
        let f = field_strength_em(&g, &[0.3, 0.1, -0.2, 1.0], 1e-3).unwrap();
        assert!(close(&f, &[[0.0; 4]; 4], 1e-12));
    }

    #[test]
    fn electric_from_linear_phi() {
        // g_0 = −2φ with φ = −(E·x)/2
        let e = [0.4, -1.0, 2.5];
        let g =
            ClosureMetric(move |x: &Vec4| [e[0] * x[1] + e[1] * x[2] + e[2] * x[3], 0.0, 0.0, 0.0]);
        let f = field_strength_em(&g, &[0.0, 1.0, 2.0, -1.0], 1e-2).unwrap();
        for i in 0..3 {
            assert!((f[i + 1][0] - e[i]).abs() < 1e-12);
        }
        let mixed = raise_first(&f);
        assert!((mixed[0][1] - e[0]).abs() < 1e-12);
        assert!((mixed[1][0] - e[0]).abs() < 1e-12);
    }

    #[test]
    fn magnetic_from_curl_pattern() {
        let b = [0.3, -0.7, 1.1];
        let pot = UniformPotential::magnetic(b);
        let f = field_strength_em(&pot, &[0.0, 0.5, -1.5, 2.0], 1e-2).unwrap();
        assert!(close(&f, &pot.tensor(), 1e-12));
        assert!((f[1][2] - b[2]).abs() < 1e-12);
        assert!((f[2][3] - b[0]).abs() < 1e-12);
        assert!((f[3][1] - b[1]).abs() < 1e-12);
    }

    #[test]
    fn field_strength_antisymmetric_for_smooth_potential() {
        let g = ClosureMetric(|x: &Vec4| {
            [
                x[1].sin() * x[0],
                (x[2] * x[3]).cos(),
                x[0] * x[0] * x[3],
                (x[1] + x[2]).exp(),
            ]
        });
        let f = field_strength_em(&g, &[0.2, 0.4, -0.3, 0.7], 1e-3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((f[i][j] + f[j][i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn grid_matches_uniform_and_reports_boundary() {
        let pot = UniformPotential {
            e: [0.1, 0.0, -0.2],
            b: [0.0, 0.5, 1.0],
        };
        let grid = GridField::sample(&pot, [-1.0; 4], [0.25; 4], [9; 4]).unwrap();
        let f = grid.f_lower(&[0.05, 0.0, 0.1, -0.05]).unwrap();
        assert!(close(&f, &pot.tensor(), 1e-12));
        assert!(matches!(
            grid.f_lower(&[-0.9, 0.0, 0.0, 0.0]),
            Err(Error::Boundary)
        ));
        assert!(matches!(
            grid.f_lower(&[0.0, 0.0, 0.0, 5.0]),
            Err(Error::Boundary)
        ));
    }

    #[test]
    fn free_particle_is_straight() {
        let u = [1.2, 0.3, -0.4, 0.5];
        let t = integrate_lorentz(&particle(u), &UniformPotential::default(), 0.01, 500).unwrap();
        let last = t.last();
        for k in 0..4 {
            assert!((last.x[k] - u[k] * 5.0).abs() < 1e-12);
            assert_eq!(last.u[k], u[k]);
        }
    }

    #[test]
    fn cyclotron_radius() {
        let (v, b) = (0.01, 2.0);
        let gamma = (1.0f64 + v * v).sqrt();
        let period = 2.0 * PI / b;
        let n = 1000;
        let t = integrate_lorentz(
            &particle([gamma, v, 0.0, 0.0]),
            &UniformPotential::magnetic([0.0, 0.0, b]),
            period / n as f64,
            n,
        )
        .unwrap();
        let r = v / b;
        // centre sits at (0, −r) for positive charge moving along +x with B along +z
        for s in &t.samples {
            let d = (s.x[1].powi(2) + (s.x[2] + r).powi(2)).sqrt();
            assert!((d / r - 1.0).abs() < 1e-3);
        }
        let last = t.last();
        assert!(last.x[1].abs() < 1e-3 * r && last.x[2].abs() < 1e-3 * r);
    }

    #[test]
    fn rk4_global_error_is_fourth_order() {
        let b = 1.0;
        let period = 2.0 * PI / b;
        let err = |n: usize| {
            let t = integrate_lorentz(
                &particle([1.0, 0.5, 0.0, 0.0]),
                &UniformPotential::magnetic([0.0, 0.0, b]),
                period / n as f64,
                n,
            )
            .unwrap();
            let l = t.last();
            (l.x[1].powi(2) + l.x[2].powi(2)).sqrt()
        };
        let (e1, e2, e3) = (err(50), err(100), err(200));
        let p1 = (e1 / e2).log2();
        let p2 = (e2 / e3).log2();
        assert!((p1 - 4.0).abs() < 0.3, "{p1}");
        assert!((p2 - 4.0).abs() < 0.3, "{p2}");
    }

    #[test]
    fn electric_run_conserves_norm() {
        let t = integrate_lorentz(
            &particle([1.0, 0.0, 0.0, 0.0]),
            &UniformPotential::electric([1.0, 0.0, 0.0]),
            1e-4,
            10_000,
        )
        .unwrap();
        assert!(t.eta_drift <= 1e-9, "{}", t.eta_drift);
        // hyperbolic motion: u⁰ = cosh λ, u¹ = sinh λ
        let l = t.last();
        assert!((l.u[0] - 1f64.cosh()).abs() < 1e-10);
        assert!((l.u[1] - 1f64.sinh()).abs() < 1e-10);
    }

    #[test]
    fn bad_runs() {
        let mut p = particle([1.0, 0.0, 0.0, 0.0]);
        assert!(integrate_lorentz(&p, &UniformPotential::default(), 0.0, 3).is_err());
        p.m = 0.0;
        assert!(integrate_lorentz(&p, &UniformPotential::default(), 0.1, 3).is_err());
        let p = particle([1.0, 0.0, 0.0, 0.0]);
        let huge = UniformPotential::electric([1e300, 0.0, 0.0]);
        assert!(matches!(
            integrate_lorentz(&p, &huge, 1.0, 10),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn wong_reduces_to_lorentz() {
        let field = UniformPotential {
            e: [0.2, 0.0, 0.1],
            b: [0.0, 0.3, 1.0],
        };
        let basis = so3_float_basis();
        let emb = AbelianEmbedding {
            field: &field,
            generator: basis[0].clone(),
        };
        let mut p = particle([1.1, 0.2, 0.1, -0.3]);
        let lor = integrate_lorentz(&p, &field, 0.01, 400).unwrap();
        p.charge = vec![1.0, 0.0, 0.0];
        let wong = integrate_wong(&p, &emb, &basis, 0.01, 400).unwrap();
        for (a, b) in lor.samples.iter().zip(&wong.samples) {
            for k in 0..4 {
                assert!((a.x[k] - b.x[k]).abs() <= 1e-12);
                assert!((a.u[k] - b.u[k]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn wong_zero_charge_and_effective_charge() {
        let field = UniformPotential::magnetic([0.0, 0.0, 1.0]);
        let basis = so3_float_basis();
        let emb = AbelianEmbedding {
            field: &field,
            generator: basis[2].clone(),
        };
        let mut p = particle([1.0, 0.4, 0.0, 0.0]);
        p.charge = vec![0.0; 3];
        let t = integrate_wong(&p, &emb, &basis, 0.01, 100).unwrap();
        assert!((t.last().x[1] - 0.4).abs() < 1e-12);
        // I along the same axis with weight 2 acts like charge 2q
        p.charge = vec![0.0, 0.0, 2.0];
        let w = integrate_wong(&p, &emb, &basis, 0.01, 100).unwrap();
        let mut p2 = particle([1.0, 0.4, 0.0, 0.0]);
        p2.q = 2.0;
        let l = integrate_lorentz(&p2, &field, 0.01, 100).unwrap();
        for k in 0..4 {
            assert!((w.last().x[k] - l.last().x[k]).abs() < 1e-12);
        }
        p.charge = vec![1.0];
        assert!(integrate_wong(&p, &emb, &basis, 0.01, 10).is_err());
    }

    fn su2_linear(scale: f64) -> LinearGauge {
        let b = so3_float_basis();
        let z = FloatMatrix::zeros(3);
        LinearGauge {
            constant: [
                b[0].scale(scale),
                b[1].scale(-scale),
                z.clone(),
                b[2].scale(0.5 * scale),
            ],
            slope: std::array::from_fn(|m| {
                std::array::from_fn(|n| {
                    if (m + n) % 2 == 1 {
                        b[(m + 2 * n) % 3].scale(scale * (m as f64 - n as f64))
                    } else {
                        z.clone()
                    }
                })
            }),
        }
    }

    #[test]
    fn constant_potential_gives_commutator() {
        let b = so3_float_basis();
        let a = LinearGauge {
            constant: [
                b[0].clone(),
                b[1].clone(),
                b[2].clone(),
                FloatMatrix::zeros(3),
            ],
            slope: std::array::from_fn(|_| std::array::from_fn(|_| FloatMatrix::zeros(3))),
        };
        let f = discrete_field_strength(&a, &[0.0; 4], (0, 1), 1e-3).unwrap();
        assert!(f.max_abs_diff(&b[0].commutator(&b[1]).unwrap()) < 1e-15);
    }

    #[test]
    fn pure_gauge_abelian_vanishes() {
        // A_μ = ∂_μ χ · T with χ = sin(x⁰) x¹ + x² x³
        let t = gen(2, 0, 1, 1.0);
        let a = ClosureGauge {
            dim: 2,
            f: move |x: &Vec4| {
                let g = [x[0].cos() * x[1], x[0].sin(), x[3], x[2]];
                std::array::from_fn(|k| t.scale(g[k]))
            },
        };
        for (m, n) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            let f = discrete_field_strength(&a, &[0.3, 0.2, -0.4, 0.9], (m, n), 1e-3).unwrap();
            assert!(f.max_abs() < 1e-6);
        }
    }

    #[test]
    fn linear_su2_matches_hand_formula() {
        let a = su2_linear(0.7);
        let x = [0.1, -0.2, 0.3, 0.05];
        let av = a.a(&x).unwrap();
        for m in 0..4 {
            for n in 0..4 {
                let f = discrete_field_strength(&a, &x, (m, n), 1e-2).unwrap();
                let expected = a.slope[m][n]
                    .axpy(-1.0, &a.slope[n][m])
                    .axpy(1.0, &av[m].commutator(&av[n]).unwrap());
                assert!(f.max_abs_diff(&expected) < 1e-12);
            }
        }
    }

    /// Scalar potential times X_{12} with its closed-form Jacobian.
    struct SmoothAbelian(FloatMatrix);

    impl SmoothAbelian {
        fn scalars(x: &Vec4) -> Vec4 {
            [
                (x[1] * x[2]).sin(),
                x[0].powi(3) * x[3],
                (x[3] - x[1]).cos(),
                x[2].exp() * x[0],
            ]
        }

        fn grad(x: &Vec4) -> Tensor4 {
            let mut d = [[0.0; 4]; 4];
            d[1][0] = x[2] * (x[1] * x[2]).cos();
            d[2][0] = x[1] * (x[1] * x[2]).cos();
            d[0][1] = 3.0 * x[0].powi(2) * x[3];
            d[3][1] = x[0].powi(3);
            d[1][2] = (x[3] - x[1]).sin();
            d[3][2] = -(x[3] - x[1]).sin();
            d[2][3] = x[2].exp() * x[0];
            d[0][3] = x[2].exp();
            d
        }
    }

    impl GaugePotential for SmoothAbelian {
        fn dim(&self) -> usize {
            2
        }

        fn a(&self, x: &Vec4) -> Result<[FloatMatrix; 4]> {
            let g = Self::scalars(x);
            Ok(std::array::from_fn(|k| self.0.scale(g[k])))
        }

        fn jacobian(&self, x: &Vec4) -> Option<GaugeTensor> {
            let d = Self::grad(x);
            Some(std::array::from_fn(|m| {
                std::array::from_fn(|n| self.0.scale(d[m][n]))
            }))
        }
    }

    #[test]
    fn bianchi_converges_at_second_order() {
        let a = SmoothAbelian(gen(2, 0, 1, 1.0));
        let x = [0.3, 0.5, -0.2, 0.4];
        let r1 = bianchi_residual(&a, &x, 0.02).unwrap();
        let r2 = bianchi_residual(&a, &x, 0.01).unwrap();
        assert!(r1 > 0.0);
        let ratio = r1 / r2;
        assert!((ratio / 4.0 - 1.0).abs() < 0.2, "{ratio}");
        let zero = LinearGauge {
            constant: std::array::from_fn(|_| FloatMatrix::zeros(3)),
            slope: std::array::from_fn(|_| std::array::from_fn(|_| FloatMatrix::zeros(3))),
        };
        assert_eq!(bianchi_residual(&zero, &x, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn bianchi_small_nonabelian() {
        let b = so3_float_basis();
        let eps = 1e-3;
        let a = ClosureGauge {
            dim: 3,
            f: move |x: &Vec4| {
                [
                    b[0].scale(eps * (x[1] * x[2]).sin()),
                    b[1].scale(eps * x[0].cos() * x[3]),
                    b[2].scale(eps * (x[3] + x[0]).sin()),
                    b[0].axpy(1.0, &b[2]).scale(eps * x[2] * x[1]),
                ]
            },
        };
        let x = [0.2, 0.1, 0.4, -0.3];
        for h in [0.02, 0.01] {
            let r = bianchi_residual(&a, &x, h).unwrap();
            assert!(r <= eps * h * h + eps.powi(3), "{r}");
        }
    }

    #[test]
    fn gauge_covariance() {
        let a = su2_linear(0.4);
        let x = [0.3, 0.1, -0.5, 0.2];
        assert!(gauge_covariance_check(&a, &FloatMatrix::identity(3), &x, (0, 1), 1e-3).unwrap());
        let rot = gen(3, 0, 1, 0.3).expm();
        assert!(gauge_covariance_check(&a, &rot, &x, (1, 3), 1e-3).unwrap());
        let perm = FloatMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(gauge_covariance_check(&a, &perm, &x, (2, 3), 1e-3).unwrap());
        let bad = FloatMatrix::identity(3).scale(1.1);
        assert!(matches!(
            gauge_covariance_check(&a, &bad, &x, (0, 1), 1e-3),
            Err(Error::NotOrthogonal(_))
        ));
    }

    #[test]
    fn recalibration() {
        let alpha: f64 = 1.0 / 137.035999084;
        assert!((recalibrate_charge(0.0, 2.0, alpha).unwrap() - 2.0 * alpha.sqrt()).abs() < 1e-15);
        assert_eq!(recalibrate_charge(0.7, 3.0, 0.0).unwrap(), 0.7);
        assert!(
            recalibrate_charge(-alpha.sqrt() * 3.0, 3.0, alpha)
                .unwrap()
                .abs()
                < 1e-15
        );
        assert!(recalibrate_charge(1.0, 0.0, alpha).is_err());
    }

    #[test]
    fn config_round_trip_and_run() {
        let json = r#"{
            "field": {"kind": "uniform_B", "B": [0, 0, 1]},
            "particle": {"x0": [0, 0, 0, 0], "u0": [1, 0.1, 0, 0], "m": 1, "q": 1},
            "integrator": {"dlambda": 0.01, "steps": 10},
            "output": {"path": null, "format": "csv"}
        }"#;
        let cfg: SimConfig = serde_json::from_str(json).unwrap();
        let t = run_simulation(&cfg).unwrap();
        assert_eq!(t.samples.len(), 11);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("lambda,x0,x1,x2,x3,u0,u1,u2,u3\n"));
        assert_eq!(text.lines().count(), 12);

        let grid: SimConfig = serde_json::from_str(
            r#"{"field": {"kind": "grid", "B": [0, 0, 1], "origin": [-2, -2, -2, -2], "spacing": [0.5, 0.5, 0.5, 0.5], "dims": [9, 9, 9, 9]},
                "particle": {"x0": [0, 0, 0, 0], "u0": [1, 0.1, 0, 0], "m": 1, "q": 1, "I": [1, 0, 0]},
                "integrator": {"dlambda": 0.01, "steps": 10}}"#,
        )
        .unwrap();
        let g = run_simulation(&grid).unwrap();
        for (a, b) in g.samples.iter().zip(&t.samples) {
            assert!((a.x[1] - b.x[1]).abs() < 1e-12);
        }
    }
}
