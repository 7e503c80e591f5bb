use num_traits::{One, Signed, Zero};

use super::graded::GradedClass;
use super::ModelError;
use crate::exact_linalg::{BigRational, RationalMatrix};

/// `table[i][j]` is the product of basis elements `i` (codim `q1`) and `j`
/// (codim `q2`) expressed in the codim `q1 + q2` basis.
pub type CupTable = Vec<Vec<Vec<BigRational>>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    ProjectiveSpace { dim: usize },
    Product(Vec<ModelKind>),
    AbelianSurface,
    Custom,
}

/// How ampleness of a divisor class is decided on a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmpleCone {
    /// Ample iff every codim-1 coordinate is positive (projective spaces and their products).
    Simplicial,
    /// Surface with ample cone a component of the positive cone: `D² > 0` and `D · c1(L) > 0`.
    PositiveCone,
    /// `∫ D^k · c1(L)^(d-k) > 0` for `k = 1..=d`; necessary only, used for custom models.
    Surrogate,
}

/// Finite presentation of the numerical even ring of a smooth projective variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyModel {
    pub(crate) name: String,
    pub(crate) kind: ModelKind,
    pub(crate) dim: usize,
    pub(crate) ranks: Vec<usize>,
    /// `cup[q1][q2]` for `q1 + q2 <= dim`.
    pub(crate) cup: Vec<Vec<CupTable>>,
    pub(crate) integrate: Vec<BigRational>,
    pub(crate) c1l: GradedClass,
    pub(crate) canonical: GradedClass,
    pub(crate) todd: GradedClass,
    pub(crate) canonical_ample: bool,
    pub(crate) anticanonical_ample: bool,
    pub(crate) ample_cone: AmpleCone,
}

/// Raw ingredients of a model before validation.
#[derive(Debug, Clone)]
pub struct ModelParts {
    pub name: String,
    pub kind: ModelKind,
    pub dim: usize,
    pub ranks: Vec<usize>,
    /// Tables for `1 <= q1, q2` with `q1 + q2 <= dim`; `None` entries are
    /// filled from the transposed table. Unit tables are generated.
    pub cup: Vec<Vec<Option<CupTable>>>,
    pub integrate: Vec<BigRational>,
    pub c1l: Vec<BigRational>,
    pub canonical: Vec<BigRational>,
    pub todd: Vec<Vec<BigRational>>,
    pub canonical_ample: bool,
    pub anticanonical_ample: bool,
    pub ample_cone: AmpleCone,
}

fn unit_table(rank: usize) -> CupTable {
    vec![(0..rank)
        .map(|j| {
            let mut v = vec![BigRational::zero(); rank];
            v[j] = BigRational::one();
            v
        })
        .collect()]
}

fn transpose_table(t: &CupTable) -> CupTable {
    let rows = t.len();
    let cols = t.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| t[i][j].clone()).collect()).collect()
}

impl VarietyModel {
    /// Assembles and validates a model.
    pub fn from_parts(parts: ModelParts) -> Result<Self, ModelError> {
        let ModelParts {
            name,
            kind,
            dim,
            ranks,
            cup: raw_cup,
            integrate,
            c1l,
            canonical,
            todd,
            canonical_ample,
            anticanonical_ample,
            ample_cone,
        } = parts;
        if dim == 0 {
            return Err(ModelError::Shape("dimension must be at least 1".into()));
        }
        if ranks.len() != dim + 1 {
            return Err(ModelError::Shape(format!(
                "expected {} ranks for dimension {dim}, got {}",
                dim + 1,
                ranks.len()
            )));
        }
        if ranks[0] != 1 {
            return Err(ModelError::Shape("codimension 0 must have rank 1".into()));
        }
        if ranks.contains(&0) {
            return Err(ModelError::Shape("every codimension needs a nonzero rank".into()));
        }
        if integrate.len() != ranks[dim] {
            return Err(ModelError::RankMismatch {
                what: "integrate".into(),
                expected: ranks[dim],
                found: integrate.len(),
            });
        }
        for (what, v) in [("c1L", &c1l), ("canonical", &canonical)] {
            if v.len() != ranks[1] {
                return Err(ModelError::RankMismatch {
                    what: what.into(),
                    expected: ranks[1],
                    found: v.len(),
                });
            }
        }
        let todd_class = GradedClass::from_parts(todd);
        if !todd_class.conforms_to(&ranks) {
            return Err(ModelError::RankMismatch {
                what: "todd".into(),
                expected: ranks.iter().sum(),
                found: todd_class.shape().iter().sum(),
            });
        }

        let mut cup: Vec<Vec<CupTable>> = Vec::with_capacity(dim + 1);
        for q1 in 0..=dim {
            let mut row = Vec::with_capacity(dim + 1 - q1);
            for q2 in 0..=dim - q1 {
                let table = if q1 == 0 {
                    unit_table(ranks[q2])
                } else if q2 == 0 {
                    transpose_table(&unit_table(ranks[q1]))
                } else {
                    let given = raw_cup.get(q1).and_then(|r| r.get(q2)).cloned().flatten();
                    let mirrored = raw_cup
                        .get(q2)
                        .and_then(|r| r.get(q1))
                        .cloned()
                        .flatten()
                        .map(|t| transpose_table(&t));
                    given.or(mirrored).ok_or(ModelError::MissingCupTable { q1, q2 })?
                };
                check_table_shape(&table, q1, q2, &ranks)?;
                row.push(table);
            }
            cup.push(row);
        }

        let model = Self {
            name,
            kind,
            dim,
            ranks: ranks.clone(),
            cup,
            integrate,
            c1l: GradedClass::homogeneous(&ranks, 1, c1l),
            canonical: GradedClass::homogeneous(&ranks, 1, canonical),
            todd: todd_class,
            canonical_ample,
            anticanonical_ample,
            ample_cone,
        };
        model.validate_ring(raw_cup.as_slice())?;
        Ok(model)
    }

    fn validate_ring(&self, raw_cup: &[Vec<Option<CupTable>>]) -> Result<(), ModelError> {
        let d = self.dim;
        // commutativity, including tables supplied in both orders
        for q1 in 1..=d {
            for q2 in 1..=d - q1 {
                let both_given = raw_cup.get(q1).and_then(|r| r.get(q2)).is_some_and(Option::is_some)
                    && raw_cup.get(q2).and_then(|r| r.get(q1)).is_some_and(Option::is_some);
                if q1 != q2 && !both_given {
                    continue;
                }
                for i in 0..self.ranks[q1] {
                    for j in 0..self.ranks[q2] {
                        if self.cup[q1][q2][i][j] != self.cup[q2][q1][j][i] {
                            return Err(ModelError::NonCommutative {
                                left: (q1, i),
                                right: (q2, j),
                            });
                        }
                    }
                }
            }
        }
        // associativity on basis triples
        for q1 in 1..=d {
            for q2 in 1..=d - q1 {
                for q3 in 1..=(d - q1 - q2) {
                    for i in 0..self.ranks[q1] {
                        for j in 0..self.ranks[q2] {
                            for k in 0..self.ranks[q3] {
                                let x = GradedClass::basis(&self.ranks, q1, i);
                                let y = GradedClass::basis(&self.ranks, q2, j);
                                let z = GradedClass::basis(&self.ranks, q3, k);
                                let left = self.cup_unchecked(&self.cup_unchecked(&x, &y), &z);
                                let right = self.cup_unchecked(&x, &self.cup_unchecked(&y, &z));
                                if left != right {
                                    return Err(ModelError::NonAssociative {
                                        triple: [(q1, i), (q2, j), (q3, k)],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        if !self.todd.part(0)[0].is_one() {
            return Err(ModelError::ToddNormalization);
        }
        for q in 0..=d {
            let pairing = self.pairing_matrix(q)?;
            if pairing.determinant().map_or(true, |det| det.is_zero()) {
                return Err(ModelError::DegeneratePairing { codim: q });
            }
        }
        let volume = self.integrate_unchecked(&self.power_unchecked(&self.c1l, d));
        if !volume.is_positive() {
            return Err(ModelError::NotAmple { volume });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn c1l(&self) -> &GradedClass {
        &self.c1l
    }

    pub fn canonical(&self) -> &GradedClass {
        &self.canonical
    }

    pub fn todd(&self) -> &GradedClass {
        &self.todd
    }

    pub fn canonical_ample(&self) -> bool {
        self.canonical_ample
    }

    pub fn anticanonical_ample(&self) -> bool {
        self.anticanonical_ample
    }

    pub fn ample_cone(&self) -> AmpleCone {
        self.ample_cone
    }

    /// Dimension `d` when the model is `P^d`.
    pub fn projective_dim(&self) -> Option<usize> {
        match self.kind {
            ModelKind::ProjectiveSpace { dim } => Some(dim),
            _ => None,
        }
    }

    pub fn cup_table(&self, q1: usize, q2: usize) -> Option<&CupTable> {
        self.cup.get(q1).and_then(|r| r.get(q2))
    }

    pub fn unit(&self) -> GradedClass {
        GradedClass::unit(&self.ranks)
    }

    pub fn zero(&self) -> GradedClass {
        GradedClass::zero(&self.ranks)
    }

    pub fn basis(&self, codim: usize, index: usize) -> GradedClass {
        GradedClass::basis(&self.ranks, codim, index)
    }

    /// Codim-1 class with the given coordinates.
    pub fn divisor(&self, coords: &[BigRational]) -> Result<GradedClass, ModelError> {
        if coords.len() != self.ranks[1] {
            return Err(ModelError::RankMismatch {
                what: "divisor".into(),
                expected: self.ranks[1],
                found: coords.len(),
            });
        }
        Ok(GradedClass::homogeneous(&self.ranks, 1, coords.to_vec()))
    }

    pub(crate) fn conform(&self, x: &GradedClass, what: &str) -> Result<(), ModelError> {
        if x.conforms_to(&self.ranks) {
            Ok(())
        } else {
            Err(ModelError::RankMismatch {
                what: what.into(),
                expected: self.total_rank(),
                found: x.shape().iter().sum(),
            })
        }
    }

    /// Graded product; components past codim `d` vanish.
    pub fn cup(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass, ModelError> {
        self.conform(x, "left factor")?;
        self.conform(y, "right factor")?;
        Ok(self.cup_unchecked(x, y))
    }

    pub(crate) fn cup_unchecked(&self, x: &GradedClass, y: &GradedClass) -> GradedClass {
        let mut out = self.zero();
        for q1 in 0..=self.dim {
            for q2 in 0..=self.dim - q1 {
                let table = &self.cup[q1][q2];
                let target = out.part_mut(q1 + q2);
                for (i, xi) in x.part(q1).iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.part(q2).iter().enumerate() {
                        if yj.is_zero() {
                            continue;
                        }
                        let coeff = xi * yj;
                        for (t, c) in target.iter_mut().zip(&table[i][j]) {
                            if !c.is_zero() {
                                *t += &coeff * c;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Degree of the codim-`d` component.
    pub fn integrate(&self, x: &GradedClass) -> Result<BigRational, ModelError> {
        self.conform(x, "integrand")?;
        Ok(self.integrate_unchecked(x))
    }

    pub(crate) fn integrate_unchecked(&self, x: &GradedClass) -> BigRational {
        x.part(self.dim)
            .iter()
            .zip(&self.integrate)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `k`-fold cup power, `x^0 = 1`.
    pub fn power_class(&self, x: &GradedClass, k: usize) -> Result<GradedClass, ModelError> {
        self.conform(x, "base")?;
        Ok(self.power_unchecked(x, k))
    }

    pub(crate) fn power_unchecked(&self, x: &GradedClass, k: usize) -> GradedClass {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.cup_unchecked(&acc, x);
        }
        acc
    }

    /// `∫ x · y` over `x` in codim `q`, `y` in codim `d - q`, as a `ranks[q] × ranks[d-q]` matrix.
    pub fn pairing_matrix(&self, q: usize) -> Result<RationalMatrix, ModelError> {
        if q > self.dim {
            return Err(ModelError::CodimOutOfRange { codim: q, dim: self.dim });
        }
        let other = self.dim - q;
        let rows = (0..self.ranks[q])
            .map(|i| {
                (0..self.ranks[other])
                    .map(|j| {
                        let prod = &self.cup[q][other][i][j];
                        prod.iter().zip(&self.integrate).map(|(a, b)| a * b).sum()
                    })
                    .collect()
            })
            .collect();
        RationalMatrix::from_rows(rows).map_err(|e| ModelError::Shape(e.to_string()))
    }

    /// Whether a codim-1 class is ample, as decided by [`AmpleCone`].
    pub fn is_ample(&self, divisor: &GradedClass) -> Result<bool, ModelError> {
        self.conform(divisor, "divisor")?;
        if !divisor.is_concentrated_in(1) {
            return Err(ModelError::NotDivisor);
        }
        let coords = divisor.part(1);
        Ok(match self.ample_cone {
            AmpleCone::Simplicial => coords.iter().all(Signed::is_positive),
            AmpleCone::PositiveCone => {
                let self_int = self.integrate_unchecked(&self.cup_unchecked(divisor, divisor));
                let degree = self.integrate_unchecked(&self.cup_unchecked(
                    divisor,
                    &self.power_unchecked(&self.c1l, self.dim - 1),
                ));
                self_int.is_positive() && degree.is_positive()
            }
            AmpleCone::Surrogate => (1..=self.dim).all(|k| {
                let mixed = self.cup_unchecked(
                    &self.power_unchecked(divisor, k),
                    &self.power_unchecked(&self.c1l, self.dim - k),
                );
                self.integrate_unchecked(&mixed).is_positive()
            }),
        })
    }
}

fn check_table_shape(table: &CupTable, q1: usize, q2: usize, ranks: &[usize]) -> Result<(), ModelError> {
    let ok = table.len() == ranks[q1]
        && table.iter().all(|row| {
            row.len() == ranks[q2] && row.iter().all(|v| v.len() == ranks[q1 + q2])
        });
    if ok {
        Ok(())
    } else {
        Err(ModelError::Shape(format!(
            "cup table ({q1},{q2}) must be {}x{} vectors of length {}",
            ranks[q1],
            ranks[q2],
            ranks[q1 + q2]
        )))
    }
}
