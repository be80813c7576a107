//! so(N) generators X_ij, brackets, the so(4) bases and Killing forms.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactnum::{solve_in_span, ExactMatrix, QuadScalar};

/// (X_ij)_kl = δ_ik δ_jl − δ_il δ_jk, indices 1-based with i < j.
pub fn so_generator(n: usize, i: usize, j: usize) -> Result<ExactMatrix> {
    if i == 0 || j > n || i >= j {
        return Err(Error::InvalidIndex(format!(
            "so({n}) generator needs 1 <= i < j <= {n}, got ({i}, {j})"
        )));
    }
    let mut m = ExactMatrix::zeros(n);
    m.set(i - 1, j - 1, QuadScalar::one());
    m.set(j - 1, i - 1, QuadScalar::from_int(-1));
    Ok(m)
}

/// X_ij for any ordered pair, using X_ji = −X_ij. Fails on i = j.
pub fn signed_generator(n: usize, i: usize, j: usize) -> Result<ExactMatrix> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => so_generator(n, i, j),
        std::cmp::Ordering::Greater => Ok(so_generator(n, j, i)?.neg()),
        std::cmp::Ordering::Equal => {
            Err(Error::InvalidIndex(format!("X_{i}{i} is not a generator")))
        }
    }
}

/// All generator pairs (i, j), i < j, in lexicographic order.
pub fn generator_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

/// Element of so(n) held as coefficients over X_ij; the matrix view is built on demand.
#[derive(Debug, Default)]
pub struct LieElement {
    n: usize,
    coeffs: BTreeMap<(usize, usize), QuadScalar>,
    matrix: OnceLock<ExactMatrix>,
}

impl Clone for LieElement {
    fn clone(&self) -> Self {
        LieElement {
            n: self.n,
            coeffs: self.coeffs.clone(),
            matrix: self.matrix.clone(),
        }
    }
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }
}

impl Eq for LieElement {}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement {
            n,
            ..Default::default()
        }
    }

    pub fn generator(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_terms(n, [((i, j), QuadScalar::one())])
    }

    /// Accepts any ordered pairs; (j, i) is folded onto (i, j) with a sign flip.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = ((usize, usize), QuadScalar)>,
    ) -> Result<Self> {
        let mut e = Self::zero(n);
        for ((i, j), c) in terms {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidIndex(format!("({i}, {j}) in so({n})")));
            }
            let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
            let slot = e.coeffs.entry(key).or_default();
            *slot += &c;
        }
        e.coeffs.retain(|_, v| !v.is_zero());
        Ok(e)
    }

    pub fn from_matrix(m: &ExactMatrix) -> Result<Self> {
        if !m.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        let n = m.dim();
        let terms = generator_pairs(n)
            .into_iter()
            .filter(|&(i, j)| !m.get(i - 1, j - 1).is_zero())
            .map(|(i, j)| ((i, j), m.get(i - 1, j - 1).clone()));
        let e = Self::from_terms(n, terms)?;
        let _ = e.matrix.set(m.clone());
        Ok(e)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), QuadScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> QuadScalar {
        if i < j {
            self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            -self.coeffs.get(&(j, i)).cloned().unwrap_or_default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        self.matrix.get_or_init(|| {
            let mut m = ExactMatrix::zeros(self.n);
            for (&(i, j), c) in &self.coeffs {
                m.set(i - 1, j - 1, c.clone());
                m.set(j - 1, i - 1, -c);
            }
            m
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Self::from_terms(
            self.n,
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(&k, v)| (k, v.clone())),
        )
    }

    pub fn scale(&self, s: &QuadScalar) -> Self {
        Self::from_terms(self.n, self.coeffs.iter().map(|(&k, v)| (k, v * s)))
            .expect("indices already validated")
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Self::from_matrix(&self.matrix().commutator(other.matrix())?)
    }
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// [X_ab, X_cd] = δ_bc X_ad − δ_ac X_bd + δ_ad X_bc − δ_bd X_ac.
pub fn so_bracket_closed_form(
    n: usize,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
) -> Result<LieElement> {
    for &(i, j) in &[(a, b), (c, d)] {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidIndex(format!("({i}, {j}) in so({n})")));
        }
    }
    let mut terms = Vec::new();
    let mut push = |cond: bool, sign: i64, i: usize, j: usize| {
        if cond && i != j {
            terms.push(((i, j), QuadScalar::from_int(sign)));
        }
    };
    push(delta(b, c), 1, a, d);
    push(delta(a, c), -1, b, d);
    push(delta(a, d), 1, b, c);
    push(delta(b, d), -1, a, c);
    LieElement::from_terms(n, terms)
}

/// The six printed so(4) generators and the split combinations.
#[derive(Clone, Debug)]
pub struct So4Bases {
    pub a: [ExactMatrix; 3],
    pub b: [ExactMatrix; 3],
    pub x: [ExactMatrix; 3],
    pub y: [ExactMatrix; 3],
}

pub fn so4_bases() -> So4Bases {
    let m = |rows: [[i64; 4]; 4]| {
        let r: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        ExactMatrix::from_int_rows(&r).expect("4x4")
    };
    let a = [
        m([[0, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 0]]),
        m([[0, 0, 1, 0], [0, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0]]),
        m([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
    ];
    let b = [
        m([[0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]),
        m([[0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0], [0, 1, 0, 0]]),
        m([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
    ];
    let half = QuadScalar::from_rational(crate::exactnum::rat(1, 2));
    let x = std::array::from_fn(|i| a[i].add(&b[i]).expect("4x4").scale(&half));
    let y = std::array::from_fn(|i| a[i].sub(&b[i]).expect("4x4").scale(&half));
    So4Bases { a, b, x, y }
}

/// Levi-Civita symbol on {0, 1, 2}.
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

fn family(
    name: &str,
    left: &[ExactMatrix; 3],
    right: &[ExactMatrix; 3],
    target: Option<&[ExactMatrix; 3]>,
) -> RelationCheck {
    let n = left[0].dim();
    let mut holds = true;
    for i in 0..3 {
        for j in 0..3 {
            let br = left[i].commutator(&right[j]).expect("same dimension");
            let mut expected = ExactMatrix::zeros(n);
            if let Some(t) = target {
                for (k, tk) in t.iter().enumerate() {
                    let e = epsilon(i, j, k);
                    if e != 0 {
                        expected = expected
                            .add(&tk.scale(&QuadScalar::from_int(e)))
                            .expect("dim");
                    }
                }
            }
            holds &= br == expected;
        }
    }
    RelationCheck {
        name: name.to_string(),
        holds,
    }
}

/// Each family covers all nine (i, j) index pairs.
pub fn so4_relation_checks(s: &So4Bases) -> Vec<RelationCheck> {
    vec![
        family("[A_i,A_j] = eps_ijk A_k", &s.a, &s.a, Some(&s.a)),
        family("[B_i,B_j] = eps_ijk A_k", &s.b, &s.b, Some(&s.a)),
        family("[A_i,B_j] = eps_ijk B_k", &s.a, &s.b, Some(&s.b)),
        family("[X_i,X_j] = eps_ijk X_k", &s.x, &s.x, Some(&s.x)),
        family("[Y_i,Y_j] = eps_ijk Y_k", &s.y, &s.y, Some(&s.y)),
        family("[X_i,Y_j] = 0", &s.x, &s.y, None),
    ]
}

/// Coordinates of [x, X_kl] read off the (k, l) entries.
fn so_ad_column(
    x: &ExactMatrix,
    g: &ExactMatrix,
    pairs: &[(usize, usize)],
) -> Result<Vec<QuadScalar>> {
    let br = x.commutator(g)?;
    Ok(pairs
        .iter()
        .map(|&(k, l)| br.get(k - 1, l - 1).clone())
        .collect())
}

/// tr(ad_X ∘ ad_Y) over the generator basis of so(n).
pub fn killing_adjoint(x: &ExactMatrix, y: &ExactMatrix) -> Result<QuadScalar> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    if !x.is_antisymmetric() || !y.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let n = x.dim();
    let pairs = generator_pairs(n);
    let mut acc = QuadScalar::zero();
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        let g = so_generator(n, i, j)?;
        let ady_g = y.commutator(&g)?;
        let col = so_ad_column(x, &ady_g, &pairs)?;
        acc += &col[idx];
    }
    Ok(acc)
}

/// A finite matrix Lie algebra given by an explicit basis.
#[derive(Clone, Debug)]
pub struct LieBasis {
    mats: Vec<ExactMatrix>,
    flat: Vec<Vec<QuadScalar>>,
}

impl LieBasis {
    pub fn new(mats: Vec<ExactMatrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidArgument("empty basis".into()));
        };
        let n = first.dim();
        if let Some(bad) = mats.iter().find(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.dim(),
            });
        }
        let flat: Vec<Vec<QuadScalar>> = mats.iter().map(|m| m.entries().to_vec()).collect();
        if crate::exactnum::rank(&flat) != mats.len() {
            return Err(Error::InvalidArgument("basis is linearly dependent".into()));
        }
        Ok(LieBasis { mats, flat })
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.mats
    }

    pub fn coordinates(&self, m: &ExactMatrix) -> Option<Vec<QuadScalar>> {
        if m.dim() != self.mats[0].dim() {
            return None;
        }
        solve_in_span(&self.flat, m.entries())
    }

    pub fn combine(&self, coeffs: &[QuadScalar]) -> ExactMatrix {
        let n = self.mats[0].dim();
        let mut out = ExactMatrix::zeros(n);
        for (c, m) in coeffs.iter().zip(&self.mats) {
            if !c.is_zero() {
                out = out.add(&m.scale(c)).expect("same dimension");
            }
        }
        out
    }

    /// Matrix of ad_x in this basis (column j = coordinates of [x, e_j]).
    pub fn ad(&self, x: &ExactMatrix) -> Result<Vec<Vec<QuadScalar>>> {
        let k = self.len();
        let mut cols = Vec::with_capacity(k);
        for e in &self.mats {
            let br = x.commutator(e)?;
            let c = self.coordinates(&br).ok_or_else(|| {
                Error::InvalidArgument("bracket leaves the span of the basis".into())
            })?;
            cols.push(c);
        }
        Ok((0..k)
            .map(|i| (0..k).map(|j| cols[j][i].clone()).collect())
            .collect())
    }

    pub fn killing(&self, x: &ExactMatrix, y: &ExactMatrix) -> Result<QuadScalar> {
        let ax = self.ad(x)?;
        let ay = self.ad(y)?;
        Ok(trace_of_product(&ax, &ay))
    }

    /// Gram matrix of the Killing form on the basis itself.
    pub fn killing_matrix(&self) -> Result<Vec<Vec<QuadScalar>>> {
        let ads = self
            .mats
            .iter()
            .map(|m| self.ad(m))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.len())
            .map(|i| {
                (0..self.len())
                    .map(|j| trace_of_product(&ads[i], &ads[j]))
                    .collect()
            })
            .collect())
    }

    /// Largest |residual| is zero iff every bracket of basis elements stays in the span.
    pub fn is_closed(&self) -> bool {
        self.mats.iter().enumerate().all(|(i, a)| {
            self.mats[i + 1..].iter().all(|b| {
                a.commutator(b)
                    .ok()
                    .and_then(|br| self.coordinates(&br))
                    .is_some()
            })
        })
    }
}

fn trace_of_product(a: &[Vec<QuadScalar>], b: &[Vec<QuadScalar>]) -> QuadScalar {
    let k = a.len();
    let mut t = QuadScalar::zero();
    for i in 0..k {
        for j in 0..k {
            if !a[i][j].is_zero() && !b[j][i].is_zero() {
                t += &(&a[i][j] * &b[j][i]);
            }
        }
    }
    t
}

/// η̂ = diag(−1, 1, 1, 1).
pub fn eta_hat() -> ExactMatrix {
    ExactMatrix::diagonal(&[
        QuadScalar::from_int(-1),
        QuadScalar::one(),
        QuadScalar::one(),
        QuadScalar::one(),
    ])
}

/// so(1,3) realized as L_ij = η̂ X_ij, the antisymmetric X_ij with one index raised.
pub fn so13_basis() -> Vec<((usize, usize), ExactMatrix)> {
    let eta = eta_hat();
    generator_pairs(4)
        .into_iter()
        .map(|(i, j)| {
            let x = so_generator(4, i, j).expect("valid");
            ((i, j), eta.mat_mul(&x).expect("4x4"))
        })
        .collect()
}

/// 2·tr(η̂ X η̂ Y): the product of two lowered-index so(4) matrices with the
/// contracted index raised and the trace taken against η̂.
pub fn killing_minkowski(x: &ExactMatrix, y: &ExactMatrix) -> Result<QuadScalar> {
    let eta = eta_hat();
    let p = eta.mat_mul(x)?.mat_mul(&eta)?.mat_mul(y)?;
    Ok(p.trace().scale(&crate::exactnum::rat_int(2)))
}

/// 2·tr(η̂ X Y) read with a single metric factor.
pub fn killing_eta_literal(x: &ExactMatrix, y: &ExactMatrix) -> Result<QuadScalar> {
    let p = eta_hat().mat_mul(x)?.mat_mul(y)?;
    Ok(p.trace().scale(&crate::exactnum::rat_int(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn so2_generator_matrix() {
        let x = so_generator(2, 1, 2).unwrap();
        assert_eq!(x, ExactMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]).unwrap());
        assert_eq!(so_generator(4, 1, 2).unwrap().get(0, 1), &QuadScalar::one());
    }

    #[test]
    fn generator_square_trace() {
        for n in 2..7 {
            for (i, j) in generator_pairs(n) {
                let x = so_generator(n, i, j).unwrap();
                assert_eq!(x.mat_mul(&x).unwrap().trace(), QuadScalar::from_int(-2));
            }
        }
    }

    #[test]
    fn generator_errors() {
        assert!(so_generator(4, 2, 2).is_err());
        assert!(so_generator(4, 3, 2).is_err());
        assert!(so_generator(4, 0, 2).is_err());
        assert!(so_generator(4, 1, 5).is_err());
        assert!(signed_generator(4, 2, 2).is_err());
        assert!(so_bracket_closed_form(3, (1, 1), (1, 2)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert!(so_bracket_closed_form(4, (1, 2), (3, 4)).unwrap().is_zero());
        let b = so_bracket_closed_form(3, (1, 2), (2, 3)).unwrap();
        assert_eq!(b, LieElement::generator(3, 1, 3).unwrap());
        for a in [1, 2, 3, 4, 5, 8] {
            let b = so_bracket_closed_form(8, (6, 7), (a, 6)).unwrap();
            let expected = LieElement::from_terms(8, [((a, 7), QuadScalar::from_int(-1))]).unwrap();
            assert_eq!(b, expected);
        }
    }

    #[test]
    fn closed_form_matches_commutator_exhaustively() {
        for n in 2..=8 {
            let pairs = generator_pairs(n);
            let mats: Vec<ExactMatrix> = pairs
                .iter()
                .map(|&(i, j)| so_generator(n, i, j).unwrap())
                .collect();
            for (p, mp) in pairs.iter().zip(&mats) {
                for (q, mq) in pairs.iter().zip(&mats) {
                    let cf = so_bracket_closed_form(n, *p, *q).unwrap();
                    assert_eq!(
                        cf.matrix(),
                        &mp.commutator(mq).unwrap(),
                        "n={n} {p:?} {q:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn lie_element_views_agree() {
        let e = LieElement::from_terms(
            4,
            [
                ((1, 2), QuadScalar::from_int(3)),
                ((3, 1), QuadScalar::sqrt2()),
            ],
        )
        .unwrap();
        assert_eq!(e.coeff(1, 3), -QuadScalar::sqrt2());
        let back = LieElement::from_matrix(e.matrix()).unwrap();
        assert_eq!(back, e);
        assert!(e.matrix().is_antisymmetric());
        assert!(LieElement::from_matrix(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn so4_relations_hold() {
        let s = so4_bases();
        assert_eq!(s.a[0].commutator(&s.a[1]).unwrap(), s.a[2]);
        assert_eq!(s.b[0].commutator(&s.b[1]).unwrap(), s.a[2]);
        for c in so4_relation_checks(&s) {
            assert!(c.holds, "{}", c.name);
        }
    }

    #[test]
    fn killing_examples_so4() {
        let x12 = so_generator(4, 1, 2).unwrap();
        let x34 = so_generator(4, 3, 4).unwrap();
        assert!(killing_adjoint(&x12, &x34).unwrap().is_zero());
        assert_eq!(
            killing_adjoint(&x12, &x12).unwrap(),
            QuadScalar::from_int(-4)
        );
        let tr = x12.mat_mul(&x12).unwrap().trace();
        assert_eq!(killing_adjoint(&x12, &x12).unwrap(), tr.scale(&rat_int(2)));
        assert!(killing_adjoint(&x12, &so_generator(3, 1, 2).unwrap()).is_err());
    }

    #[test]
    fn killing_is_n_minus_two_trace() {
        for n in 3..=5 {
            let pairs = generator_pairs(n);
            let x = LieElement::from_terms(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| (p, QuadScalar::from_rational(rat(k as i64 + 1, 3)))),
            )
            .unwrap();
            let y = LieElement::from_terms(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| (p, QuadScalar::from_int(2 - k as i64))),
            )
            .unwrap();
            let k = killing_adjoint(x.matrix(), y.matrix()).unwrap();
            let t = x.matrix().mat_mul(y.matrix()).unwrap().trace();
            assert_eq!(k, t.scale(&rat_int(n as i64 - 2)));
        }
    }

    #[test]
    fn lie_basis_killing_matches_so_killing() {
        let mats: Vec<ExactMatrix> = generator_pairs(4)
            .into_iter()
            .map(|(i, j)| so_generator(4, i, j).unwrap())
            .collect();
        let basis = LieBasis::new(mats.clone()).unwrap();
        assert!(basis.is_closed());
        for a in &mats {
            for b in &mats {
                assert_eq!(basis.killing(a, b).unwrap(), killing_adjoint(a, b).unwrap());
            }
        }
    }

    #[test]
    fn so13_killing_identity() {
        let basis = so13_basis();
        let lie = LieBasis::new(basis.iter().map(|(_, m)| m.clone()).collect()).unwrap();
        for (p, lp) in &basis {
            for (q, lq) in &basis {
                let k = lie.killing(lp, lq).unwrap();
                let xp = so_generator(4, p.0, p.1).unwrap();
                let xq = so_generator(4, q.0, q.1).unwrap();
                assert_eq!(k, killing_minkowski(&xp, &xq).unwrap());
            }
        }
        // a boost has positive Killing norm; the single-metric reading gives 0
        let x12 = so_generator(4, 1, 2).unwrap();
        assert_eq!(
            killing_minkowski(&x12, &x12).unwrap(),
            QuadScalar::from_int(4)
        );
        assert!(killing_eta_literal(&x12, &x12).unwrap().is_zero());
    }
}
