//! Built-in models: projective spaces, products (Künneth), and the abelian
//! surface `E × E` for an elliptic curve without complex multiplication.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::model::{AmpleCone, CupTable, ModelKind, ModelParts, VarietyModel};
use super::ModelError;
use crate::exact_linalg::rational::int;
use crate::exact_linalg::BigRational;

/// Coefficients of `x / (1 - e^{-x})` up to `x^order`.
pub fn todd_series(order: usize) -> Vec<BigRational> {
    // (1 - e^{-x}) / x = Σ (-1)^k x^k / (k+1)!
    let mut g = Vec::with_capacity(order + 1);
    let mut factorial = BigInt::one();
    for k in 0..=order {
        factorial *= BigInt::from(k + 1);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        g.push(BigRational::new(BigInt::from(sign), factorial.clone()));
    }
    let mut inv = vec![BigRational::one()];
    for n in 1..=order {
        let s: BigRational = (1..=n).map(|k| &g[k] * &inv[n - k]).sum();
        inv.push(-s);
    }
    inv
}

fn series_mul(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    (0..=order)
        .map(|n| (0..=n).map(|k| &a[k] * &b[n - k]).sum())
        .collect()
}

/// `P^d` with ring `Q[H]/H^{d+1}`, `c1(L) = H`, `K = -(d+1)H` and
/// `td = (H / (1 - e^{-H}))^{d+1}`.
pub fn projective_space(d: usize) -> Result<VarietyModel, ModelError> {
    if d == 0 {
        return Err(ModelError::Shape("projective space needs dimension >= 1".into()));
    }
    let ranks = vec![1; d + 1];
    let mut cup: Vec<Vec<Option<CupTable>>> = vec![vec![None; d + 1]; d + 1];
    for (q1, row) in cup.iter_mut().enumerate().skip(1) {
        for (q2, slot) in row.iter_mut().enumerate().skip(1) {
            if q1 + q2 <= d {
                *slot = Some(vec![vec![vec![BigRational::one()]]]);
            }
        }
    }
    let base = todd_series(d);
    let mut todd = vec![BigRational::zero(); d + 1];
    todd[0] = BigRational::one();
    for _ in 0..=d {
        todd = series_mul(&todd, &base, d);
    }
    VarietyModel::from_parts(ModelParts {
        name: format!("P{d}"),
        kind: ModelKind::ProjectiveSpace { dim: d },
        dim: d,
        ranks,
        cup,
        integrate: vec![BigRational::one()],
        c1l: vec![BigRational::one()],
        canonical: vec![int(-(d as i64 + 1))],
        todd: todd.into_iter().map(|c| vec![c]).collect(),
        canonical_ample: false,
        anticanonical_ample: true,
        ample_cone: AmpleCone::Simplicial,
    })
}

/// Basis element `x_i ⊗ y_j` of a product, with `x_i` in codim `left.0` and `y_j` in codim `right.0`.
type KunnethIndex = ((usize, usize), (usize, usize));

/// Künneth bases per codimension, first-factor codimension descending.
fn kunneth_bases(x: &VarietyModel, y: &VarietyModel) -> Vec<Vec<KunnethIndex>> {
    let (a, b) = (x.dim(), y.dim());
    (0..=a + b)
        .map(|q| {
            let mut basis = Vec::new();
            for q1 in (q.saturating_sub(b)..=q.min(a)).rev() {
                let q2 = q - q1;
                for i in 0..x.ranks()[q1] {
                    for j in 0..y.ranks()[q2] {
                        basis.push(((q1, i), (q2, j)));
                    }
                }
            }
            basis
        })
        .collect()
}

/// Coordinates of `x ⊗ y` in the Künneth basis of the product.
fn tensor_coords(
    bases: &[Vec<KunnethIndex>],
    x: &[Vec<BigRational>],
    y: &[Vec<BigRational>],
) -> Vec<Vec<BigRational>> {
    bases
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|&((q1, i), (q2, j))| &x[q1][i] * &y[q2][j])
                .collect()
        })
        .collect()
}

/// Product variety `X × Y` with the tensor-product ring.
pub fn product(x: &VarietyModel, y: &VarietyModel) -> Result<VarietyModel, ModelError> {
    let (a, b) = (x.dim(), y.dim());
    let d = a + b;
    let bases = kunneth_bases(x, y);
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let positions: Vec<HashMap<KunnethIndex, usize>> = bases
        .iter()
        .map(|basis| basis.iter().enumerate().map(|(n, &k)| (k, n)).collect())
        .collect();

    let mut cup: Vec<Vec<Option<CupTable>>> = vec![vec![None; d + 1]; d + 1];
    for q1 in 1..=d {
        for q2 in 1..=d - q1 {
            let target = q1 + q2;
            let table: CupTable = bases[q1]
                .iter()
                .map(|&((p1, i), (p2, j))| {
                    bases[q2]
                        .iter()
                        .map(|&((r1, k), (r2, l))| {
                            let mut out = vec![BigRational::zero(); ranks[target]];
                            if p1 + r1 <= a && p2 + r2 <= b {
                                let xs = &x.cup_table(p1, r1).expect("factor table")[i][k];
                                let ys = &y.cup_table(p2, r2).expect("factor table")[j][l];
                                for (s, xv) in xs.iter().enumerate() {
                                    for (t, yv) in ys.iter().enumerate() {
                                        if xv.is_zero() || yv.is_zero() {
                                            continue;
                                        }
                                        let pos = positions[target][&((p1 + r1, s), (p2 + r2, t))];
                                        out[pos] += xv * yv;
                                    }
                                }
                            }
                            out
                        })
                        .collect()
                })
                .collect();
            cup[q1][q2] = Some(table);
        }
    }

    let integrate: Vec<BigRational> = bases[d]
        .iter()
        .map(|&((_, i), (_, j))| &x.integrate[i] * &y.integrate[j])
        .collect();
    let tensor = |u: &[Vec<BigRational>], v: &[Vec<BigRational>]| tensor_coords(&bases, u, v);
    let unit_x = x.unit();
    let unit_y = y.unit();
    let sum_divisors = |dx: &[Vec<BigRational>], dy: &[Vec<BigRational>]| -> Vec<BigRational> {
        let left = tensor(dx, unit_y.parts());
        let right = tensor(unit_x.parts(), dy);
        left[1].iter().zip(&right[1]).map(|(p, q)| p + q).collect()
    };
    let c1l = sum_divisors(x.c1l().parts(), y.c1l().parts());
    let canonical = sum_divisors(x.canonical().parts(), y.canonical().parts());
    let todd = tensor(x.todd().parts(), y.todd().parts());

    let mut kinds = Vec::new();
    for k in [x.kind(), y.kind()] {
        match k {
            ModelKind::Product(inner) => kinds.extend(inner.iter().cloned()),
            other => kinds.push(other.clone()),
        }
    }
    let ample_cone = if x.ample_cone() == AmpleCone::Simplicial && y.ample_cone() == AmpleCone::Simplicial {
        AmpleCone::Simplicial
    } else {
        AmpleCone::Surrogate
    };
    VarietyModel::from_parts(ModelParts {
        name: format!("{}x{}", x.name(), y.name()),
        kind: ModelKind::Product(kinds),
        dim: d,
        ranks,
        cup,
        integrate,
        c1l,
        canonical,
        todd,
        canonical_ample: x.canonical_ample() && y.canonical_ample(),
        anticanonical_ample: x.anticanonical_ample() && y.anticanonical_ample(),
        ample_cone,
    })
}

/// `(P^1)^d`.
pub fn p1_power(d: usize) -> Result<VarietyModel, ModelError> {
    let p1 = projective_space(1)?;
    let mut model = p1.clone();
    for _ in 1..d {
        model = product(&model, &p1)?;
    }
    Ok(model)
}

/// `E × E` for a generic elliptic curve: Néron-Severi basis `{F1, F2, D}` with
/// `F1 = pt × E`, `F2 = E × pt`, `D = Δ - F1 - F2`. Intersection form
/// `F1·F2 = 1`, `D² = -2`, all other basis products zero. Trivial canonical
/// class, `td = 1`, polarization `F1 + F2`.
pub fn abelian_surface() -> Result<VarietyModel, ModelError> {
    let point = |v: i64| vec![int(v)];
    let table: CupTable = vec![
        vec![point(0), point(1), point(0)],
        vec![point(1), point(0), point(0)],
        vec![point(0), point(0), point(-2)],
    ];
    let mut cup: Vec<Vec<Option<CupTable>>> = vec![vec![None; 3]; 3];
    cup[1][1] = Some(table);
    VarietyModel::from_parts(ModelParts {
        name: "ExE-rank3".into(),
        kind: ModelKind::AbelianSurface,
        dim: 2,
        ranks: vec![1, 3, 1],
        cup,
        integrate: vec![BigRational::one()],
        c1l: vec![int(1), int(1), int(0)],
        canonical: vec![int(0), int(0), int(0)],
        todd: vec![vec![int(1)], vec![int(0), int(0), int(0)], vec![int(0)]],
        canonical_ample: false,
        anticanonical_ample: false,
        ample_cone: AmpleCone::PositiveCone,
    })
}

/// Resolves a built-in name: `Pd:<d>` or `P<d>`, `P<a>xP<b>[x...]`, `(P1)^<d>`, `ExE-rank3`.
pub fn builtin(name: &str) -> Result<VarietyModel, ModelError> {
    let name = name.trim();
    let unknown = || ModelError::UnknownBuiltin(name.to_string());
    if name == "ExE-rank3" || name == "ExE" {
        return abelian_surface();
    }
    if let Some(rest) = name.strip_prefix("Pd:") {
        let d: usize = rest.trim().parse().map_err(|_| unknown())?;
        return projective_space(d);
    }
    if let Some(rest) = name.strip_prefix("(P1)^") {
        let d: usize = rest.trim().parse().map_err(|_| unknown())?;
        if d == 0 {
            return Err(unknown());
        }
        return p1_power(d);
    }
    let factors: Vec<usize> = name
        .split('x')
        .map(|f| f.strip_prefix('P').and_then(|n| n.parse().ok()).filter(|&n| n > 0))
        .collect::<Option<_>>()
        .ok_or_else(unknown)?;
    let mut model = projective_space(factors[0])?;
    for &f in &factors[1..] {
        model = product(&model, &projective_space(f)?)?;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rational::rational;

    #[test]
    fn todd_of_p1_and_p2() {
        let p1 = builtin("Pd:1").unwrap();
        assert_eq!(p1.todd().parts(), &[vec![int(1)], vec![int(1)]]);
        let p2 = builtin("Pd:2").unwrap();
        assert_eq!(p2.ranks(), &[1, 1, 1]);
        assert_eq!(p2.todd().parts(), &[vec![int(1)], vec![rational(3, 2)], vec![int(1)]]);
    }

    /// x/(1 - e^{-x}) = Σ B_k^+ x^k / k! with B_1^+ = 1/2.
    #[test]
    fn todd_series_matches_bernoulli_numbers() {
        let n = 8;
        // B_m from Σ_{k<m+1} C(m+1,k) B_k = 0 (B_1 = -1/2 convention)
        let mut bern: Vec<BigRational> = vec![int(1)];
        for m in 1..=n {
            let mut s = int(0);
            let mut binom = BigInt::one();
            for (k, bk) in bern.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            bern.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        bern[1] = -bern[1].clone();
        let mut fact = BigInt::one();
        let series = todd_series(n);
        for k in 0..=n {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            assert_eq!(series[k], &bern[k] / BigRational::from_integer(fact.clone()), "k = {k}");
        }
    }

    #[test]
    fn names_resolve() {
        assert_eq!(builtin("P1xP1").unwrap().ranks(), &[1, 2, 1]);
        assert_eq!(builtin("P1xP2").unwrap().ranks(), &[1, 2, 2, 1]);
        assert_eq!(builtin("(P1)^3").unwrap().ranks(), &[1, 3, 3, 1]);
        assert_eq!(builtin("ExE-rank3").unwrap().ranks(), &[1, 3, 1]);
        assert!(builtin("Q3").is_err());
        assert!(builtin("Pd:0").is_err());
    }

    #[test]
    fn product_canonical_class_and_flags() {
        let m = builtin("P1xP2").unwrap();
        assert_eq!(m.canonical().part(1), &[int(-2), int(-3)]);
        assert!(m.anticanonical_ample());
        assert!(!m.canonical_ample());
        assert_eq!(m.c1l().part(1), &[int(1), int(1)]);
    }
}
