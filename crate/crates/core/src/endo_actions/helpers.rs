use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{ActionError, EndoAction};
use crate::exact_linalg::{mat_mul, BigRational, RationalMatrix};
use crate::variety_models::{GradedClass, ModelKind, VarietyModel};

fn from_columns(columns: &[Vec<BigRational>]) -> RationalMatrix {
    let rows = columns.first().map_or(0, Vec::len);
    let data = (0..rows)
        .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
        .collect();
    RationalMatrix::new(rows, columns.len(), data).expect("columns of equal length")
}

/// Builds the action determined by `f^*` on divisors, assuming every
/// codimension is spanned by products of divisor classes.
///
/// `divisor_action` has the images of the codim-1 basis as its columns.
pub fn from_divisor_action(
    model: Arc<VarietyModel>,
    divisor_action: &RationalMatrix,
) -> Result<EndoAction, ActionError> {
    let ranks = model.ranks().to_vec();
    let d = model.dim();
    if divisor_action.rows() != ranks[1] || divisor_action.cols() != ranks[1] {
        return Err(ActionError::Unsupported(format!(
            "divisor action must be {0}x{0}, found {1}x{2}",
            ranks[1],
            divisor_action.rows(),
            divisor_action.cols()
        )));
    }
    let divisors: Vec<(GradedClass, GradedClass)> = (0..ranks[1])
        .map(|i| {
            let image = GradedClass::homogeneous(&ranks, 1, divisor_action.column(i));
            (model.basis(1, i), image)
        })
        .collect();
    let mut pullback = vec![RationalMatrix::identity(1), divisor_action.clone()];
    let mut previous = divisors.clone();
    for q in 2..=d {
        let mut chosen: Vec<(GradedClass, GradedClass)> = Vec::new();
        'search: for (x, fx) in &previous {
            for (h, fh) in &divisors {
                let class = model.cup(x, h)?;
                let mut candidate: Vec<Vec<BigRational>> =
                    chosen.iter().map(|(c, _)| c.part(q).to_vec()).collect();
                candidate.push(class.part(q).to_vec());
                if from_columns(&candidate).rank() == candidate.len() {
                    let image = model.cup(fx, fh)?;
                    chosen.push((class, image));
                    if chosen.len() == ranks[q] {
                        break 'search;
                    }
                }
            }
        }
        if chosen.len() != ranks[q] {
            return Err(ActionError::NotDivisorGenerated { codim: q });
        }
        let classes = from_columns(&chosen.iter().map(|(c, _)| c.part(q).to_vec()).collect::<Vec<_>>());
        let images = from_columns(&chosen.iter().map(|(_, i)| i.part(q).to_vec()).collect::<Vec<_>>());
        pullback.push(mat_mul(&images, &classes.inverse()?)?);
        previous = chosen;
    }
    pullback.truncate(d + 1);
    let top = &pullback[d][(0, 0)];
    if !top.is_integer() || !top.is_positive() {
        return Err(ActionError::Unsupported(format!(
            "divisor action has non-positive or fractional degree {top}"
        )));
    }
    let degree = top.to_integer();
    EndoAction::validated(model, pullback, degree)
}

/// Dimensions of the projective-space factors, if the model is a product of them.
fn projective_factors(kind: &ModelKind) -> Option<Vec<usize>> {
    match kind {
        ModelKind::ProjectiveSpace { dim } => Some(vec![*dim]),
        ModelKind::Product(factors) => factors
            .iter()
            .map(|k| match k {
                ModelKind::ProjectiveSpace { dim } => Some(*dim),
                _ => None,
            })
            .collect(),
        _ => None,
    }
}

/// `[x_0 : … : x_n] ↦ [x_0^k : … : x_n^k]`, factorwise on products; `[k]` on `E×E`.
pub fn power_map(model: Arc<VarietyModel>, k: u64) -> Result<EndoAction, ActionError> {
    if k == 0 {
        return Err(ActionError::Unsupported("power map needs k >= 1".into()));
    }
    if matches!(model.kind(), ModelKind::AbelianSurface) {
        let k = i64::try_from(k).map_err(|_| ActionError::Unsupported("k too large".into()))?;
        return abelian_matrix(model, [[k, 0], [0, k]]);
    }
    let factors = projective_factors(model.kind())
        .ok_or_else(|| ActionError::Unsupported(format!("no power map on {}", model.name())))?;
    product_power_map(model, &vec![k; factors.len()])
}

/// Power map with exponent `ks[i]` on the `i`-th projective factor.
pub fn product_power_map(model: Arc<VarietyModel>, ks: &[u64]) -> Result<EndoAction, ActionError> {
    let factors = projective_factors(model.kind())
        .ok_or_else(|| ActionError::Unsupported(format!("no power map on {}", model.name())))?;
    if ks.len() != factors.len() {
        return Err(ActionError::Unsupported(format!(
            "{} has {} factors, got {} exponents",
            model.name(),
            factors.len(),
            ks.len()
        )));
    }
    if ks.contains(&0) {
        return Err(ActionError::Unsupported("power map needs k >= 1".into()));
    }
    let diag: Vec<BigRational> = ks.iter().map(|&k| BigRational::from_integer(BigInt::from(k))).collect();
    from_divisor_action(model, &RationalMatrix::diagonal(&diag))
}

/// Induced action of `(x, y) ↦ (ax + by, cx + dy)` on `E×E` in the basis `{F1, F2, D}`.
///
/// On `H¹ = ⟨α1, β1, α2, β2⟩` the map sends `α1 ↦ aα1 + bα2`, `α2 ↦ cα1 + dα2`
/// and likewise for the `β`s; the divisor basis embeds in `Λ²H¹` as
/// `F1 = α1∧β1`, `F2 = α2∧β2`, `D = -(α1∧β2 + α2∧β1)`.
pub fn abelian_matrix(model: Arc<VarietyModel>, m: [[i64; 2]; 2]) -> Result<EndoAction, ActionError> {
    if !matches!(model.kind(), ModelKind::AbelianSurface) {
        return Err(ActionError::Unsupported(format!(
            "abelian_matrix needs the E×E model, got {}",
            model.name()
        )));
    }
    let [[a, b], [c, d]] = m;
    if a * d - b * c == 0 {
        return Err(ActionError::Unsupported("abelian matrix must be nonsingular".into()));
    }
    let h1 = exterior_square_h1(m);
    let lambda2 = exterior_square(&h1);
    let embedding = ns_embedding();
    let image = mat_mul(&lambda2, &embedding)?;
    let gram = mat_mul(&embedding.transpose(), &embedding)?;
    let coords = mat_mul(
        &mat_mul(&gram.inverse()?, &embedding.transpose())?,
        &image,
    )?;
    if mat_mul(&embedding, &coords)? != image {
        return Err(ActionError::Unsupported("image leaves the Néron–Severi span".into()));
    }
    let det = h1.determinant()?;
    let degree = det.to_integer();
    let pullback = vec![
        RationalMatrix::identity(1),
        coords,
        RationalMatrix::scalar(1, det),
    ];
    EndoAction::validated(model, pullback, degree)
}

/// The 4×4 action on `(α1, β1, α2, β2)`, images as columns.
pub fn exterior_square_h1(m: [[i64; 2]; 2]) -> RationalMatrix {
    let [[a, b], [c, d]] = m;
    RationalMatrix::from_i64_rows(&[&[a, 0, c, 0], &[0, a, 0, c], &[b, 0, d, 0], &[0, b, 0, d]])
        .expect("4x4")
}

/// Basis pairs `(i, j)`, `i < j`, of `Λ²` of a 4-dimensional space.
pub const WEDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `Λ²A` on the basis [`WEDGE_PAIRS`].
pub fn exterior_square(a: &RationalMatrix) -> RationalMatrix {
    let mut rows = Vec::with_capacity(6);
    for &(k, l) in &WEDGE_PAIRS {
        rows.push(
            WEDGE_PAIRS
                .iter()
                .map(|&(i, j)| &a[(k, i)] * &a[(l, j)] - &a[(k, j)] * &a[(l, i)])
                .collect(),
        );
    }
    RationalMatrix::from_rows(rows).expect("6x6")
}

fn ns_embedding() -> RationalMatrix {
    // columns F1, F2, D in the wedge basis
    RationalMatrix::from_i64_rows(&[
        &[1, 0, 0],
        &[0, 0, 0],
        &[0, 0, -1],
        &[0, 0, 1],
        &[0, 0, 0],
        &[0, 1, 0],
    ])
    .expect("6x3")
}

/// Coordinate permutation: trivial on `P^d`, a factor permutation on products
/// of equal projective spaces (`f^*H_i = H_{perm[i]}`).
pub fn coordinate_permutation(model: Arc<VarietyModel>, perm: &[usize]) -> Result<EndoAction, ActionError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(ActionError::Unsupported(format!("{perm:?} is not a permutation")));
        }
    }
    match model.kind() {
        ModelKind::ProjectiveSpace { dim } if perm.len() == dim + 1 => Ok(EndoAction::identity(model)),
        kind => {
            let factors = projective_factors(kind)
                .filter(|f| f.len() == perm.len() && f.len() > 1)
                .ok_or_else(|| {
                    ActionError::Unsupported(format!(
                        "permutation of length {} does not act on {}",
                        perm.len(),
                        model.name()
                    ))
                })?;
            if perm.iter().enumerate().any(|(i, &p)| factors[i] != factors[p]) {
                return Err(ActionError::Unsupported("permuted factors must have equal dimension".into()));
            }
            let n = perm.len();
            let mut m = RationalMatrix::zeros(n, n).to_rows();
            for (i, &p) in perm.iter().enumerate() {
                m[p][i] = BigRational::one();
            }
            from_divisor_action(model, &RationalMatrix::from_rows(m)?)
        }
    }
}

/// Explicit pullback matrices, validated.
pub fn explicit(
    model: Arc<VarietyModel>,
    pullback: Vec<RationalMatrix>,
    degree: i64,
) -> Result<EndoAction, ActionError> {
    EndoAction::validated(model, pullback, BigInt::from(degree))
}

