//! Matrix algebras over an octonion algebra as structure-constant data:
//! hermitian matrices under the anticommutator, antihermitian matrices
//! under the commutator, and full matrix spaces under the standard,
//! commutator, and anticommutator products.
//!
//! Structure constants are always computed by generic octonionic matrix
//! multiplication and basis decomposition; the closed-form product formulas
//! for the hermitian and antihermitian families are implemented separately
//! in [`crosscheck_products`] as an independent route, so a transcription
//! error on either side cannot pass unnoticed.

use std::collections::HashMap;

use crate::octonion::{Oct, OctType, OctonionAlgebra};
use crate::scalar::Field;
use crate::{Error, Result};

/// Symmetry of a structure-constant tensor in its two lower indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    None,
    Commutative,
    Anticommutative,
}

/// A finite-dimensional algebra given by structure constants
/// `b_i * b_j = sum_k c_{ij}^k b_k`, stored sparsely per (i, j).
#[derive(Debug, Clone)]
pub struct StructureAlgebra<F: Field> {
    field: F,
    dim: usize,
    labels: Vec<String>,
    /// Sparse product coordinates at index `i*dim + j`, sorted by k.
    products: Vec<Vec<(u32, F::Elem)>>,
    symmetry: Symmetry,
    name: String,
}

impl<F: Field> StructureAlgebra<F> {
    /// Builds the algebra and verifies the claimed symmetry flag against the
    /// full tensor.
    pub fn from_products(
        field: F,
        dim: usize,
        labels: Vec<String>,
        mut products: Vec<Vec<(u32, F::Elem)>>,
        symmetry: Symmetry,
        name: String,
    ) -> Result<Self> {
        if labels.len() != dim || products.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: products.len(),
            });
        }
        for row in products.iter_mut() {
            row.retain(|(_, v)| !field.is_zero(v));
            row.sort_by_key(|e| e.0);
            if row.iter().any(|(k, _)| *k as usize >= dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.iter().map(|(k, _)| *k as usize).max().unwrap() + 1,
                });
            }
        }
        let alg = StructureAlgebra {
            field,
            dim,
            labels,
            products,
            symmetry,
            name,
        };
        alg.verify_symmetry()?;
        Ok(alg)
    }

    fn verify_symmetry(&self) -> Result<()> {
        let bad = || {
            Err(Error::Unsupported(format!(
                "symmetry flag {:?} does not hold for {}",
                self.symmetry, self.name
            )))
        };
        match self.symmetry {
            Symmetry::None => Ok(()),
            Symmetry::Commutative => {
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        if self.product(i, j) != self.product(j, i) {
                            return bad();
                        }
                    }
                }
                Ok(())
            }
            Symmetry::Anticommutative => {
                for i in 0..self.dim {
                    if !self.product(i, i).is_empty() {
                        return bad();
                    }
                    for j in 0..self.dim {
                        let ij = self.product(i, j);
                        let ji = self.product(j, i);
                        if ij.len() != ji.len() {
                            return bad();
                        }
                        for ((k1, v1), (k2, v2)) in ij.iter().zip(ji) {
                            if k1 != k2 || *v1 != self.field.neg(v2) {
                                return bad();
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn product(&self, i: usize, j: usize) -> &[(u32, F::Elem)] {
        &self.products[i * self.dim + j]
    }

    pub fn basis_coords(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Bilinear product of dense coordinate vectors.
    pub fn mul_coords(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let t = f.mul(xi, yj);
                for (k, c) in self.product(i, j) {
                    let u = f.mul(&t, c);
                    f.add_assign(&mut out[*k as usize], &u);
                }
            }
        }
        out
    }

    /// All nonzero structure constants as (i, j, k, value), sorted.
    pub fn constants(&self) -> Vec<(u32, u32, u32, F::Elem)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in self.product(i, j) {
                    out.push((i as u32, j as u32, *k, v.clone()));
                }
            }
        }
        out
    }
}

/// The five matrix-space kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Hermitian matrices under `x o y = xy + yx`.
    HermitianAnticommutator,
    /// Antihermitian matrices under `[x, y] = xy - yx`.
    AntihermitianCommutator,
    /// All matrices under the standard product.
    FullStandard,
    /// All matrices under the commutator.
    FullCommutator,
    /// All matrices under the anticommutator.
    FullAnticommutator,
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::HermitianAnticommutator => "hermitian_anticommutator",
            SpaceKind::AntihermitianCommutator => "antihermitian_commutator",
            SpaceKind::FullStandard => "full_standard",
            SpaceKind::FullCommutator => "full_commutator",
            SpaceKind::FullAnticommutator => "full_anticommutator",
        }
    }

    /// Symmetry of the resulting product tensor.
    pub fn symmetry(&self) -> Symmetry {
        match self {
            SpaceKind::HermitianAnticommutator | SpaceKind::FullAnticommutator => {
                Symmetry::Commutative
            }
            SpaceKind::AntihermitianCommutator | SpaceKind::FullCommutator => {
                Symmetry::Anticommutative
            }
            SpaceKind::FullStandard => Symmetry::None,
        }
    }

    /// Dimension of the space over n x n matrices.
    pub fn dim(&self, n: usize) -> usize {
        match self {
            SpaceKind::HermitianAnticommutator => n + 4 * n * (n - 1),
            SpaceKind::AntihermitianCommutator => 7 * n + 4 * n * (n - 1),
            _ => 8 * n * n,
        }
    }
}

/// Which matrix space to build: kind, size, and octonion type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixSpaceSpec {
    pub kind: SpaceKind,
    pub n: usize,
    pub oct_type: OctType,
}

impl MatrixSpaceSpec {
    pub fn new(kind: SpaceKind, n: usize, oct_type: OctType) -> Result<Self> {
        if n < 1 {
            return Err(Error::Unsupported("matrix size must be at least 1".into()));
        }
        Ok(MatrixSpaceSpec { kind, n, oct_type })
    }

    pub fn dim(&self) -> usize {
        self.kind.dim(self.n)
    }

    /// Short display like `h3(O type I)` or `M2(O type II, commutator)`.
    pub fn display_name(&self) -> String {
        match self.kind {
            SpaceKind::HermitianAnticommutator => format!("h{}(O type {})", self.n, self.oct_type),
            SpaceKind::AntihermitianCommutator => format!("a{}(O type {})", self.n, self.oct_type),
            SpaceKind::FullStandard => format!("M{}(O type {}, standard)", self.n, self.oct_type),
            SpaceKind::FullCommutator => {
                format!("M{}(O type {}, commutator)", self.n, self.oct_type)
            }
            SpaceKind::FullAnticommutator => {
                format!("M{}(O type {}, anticommutator)", self.n, self.oct_type)
            }
        }
    }
}

/// A dense n x n matrix of octonions.
#[derive(Debug, Clone, PartialEq)]
pub struct OctMatrix<F: Field> {
    pub n: usize,
    entries: Vec<Oct<F>>,
}

impl<F: Field> OctMatrix<F> {
    pub fn zero(alg: &OctonionAlgebra<F>, n: usize) -> Self {
        OctMatrix {
            n,
            entries: (0..n * n).map(|_| alg.zero()).collect(),
        }
    }

    pub fn identity(alg: &OctonionAlgebra<F>, n: usize) -> Self {
        let mut m = Self::zero(alg, n);
        for i in 0..n {
            *m.get_mut(i, i) = alg.one();
        }
        m
    }

    /// The matrix `z * E_ij`.
    pub fn unit(alg: &OctonionAlgebra<F>, n: usize, i: usize, j: usize, z: &Oct<F>) -> Self {
        let mut m = Self::zero(alg, n);
        *m.get_mut(i, j) = z.clone();
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Oct<F> {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Oct<F> {
        &mut self.entries[i * self.n + j]
    }

    pub fn add(&self, alg: &OctonionAlgebra<F>, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        OctMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| alg.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, alg: &OctonionAlgebra<F>, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        OctMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| alg.sub(a, b))
                .collect(),
        }
    }

    /// Conjugate transpose: transpose and conjugate every entry.
    pub fn conj_transpose(&self, alg: &OctonionAlgebra<F>) -> Self {
        let mut m = Self::zero(alg, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *m.get_mut(j, i) = alg.conj(self.get(i, j));
            }
        }
        m
    }

    pub fn is_hermitian(&self, alg: &OctonionAlgebra<F>) -> bool {
        self.conj_transpose(alg) == *self
    }

    pub fn is_antihermitian(&self, alg: &OctonionAlgebra<F>) -> bool {
        let mut neg = self.clone();
        for e in neg.entries.iter_mut() {
            *e = alg.neg(e);
        }
        self.conj_transpose(alg) == neg
    }

    pub fn is_zero(&self, alg: &OctonionAlgebra<F>) -> bool {
        self.entries.iter().all(|e| alg.is_zero(e))
    }
}

/// Row-column product with octonion entry multiplication, performed in the
/// written order (entries do not associate, so no reassociation happens).
pub fn matmul_oct<F: Field>(
    alg: &OctonionAlgebra<F>,
    x: &OctMatrix<F>,
    y: &OctMatrix<F>,
) -> Result<OctMatrix<F>> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch {
            expected: x.n,
            got: y.n,
        });
    }
    let n = x.n;
    let mut out = OctMatrix::zero(alg, n);
    for i in 0..n {
        for k in 0..n {
            let a = x.get(i, k);
            if alg.is_zero(a) {
                continue;
            }
            for j in 0..n {
                let b = y.get(k, j);
                if alg.is_zero(b) {
                    continue;
                }
                let prod = alg.mul(a, b);
                let slot = out.get_mut(i, j);
                *slot = alg.add(slot, &prod);
            }
        }
    }
    Ok(out)
}

/// The product attached to a space kind.
pub fn space_product<F: Field>(
    alg: &OctonionAlgebra<F>,
    kind: SpaceKind,
    x: &OctMatrix<F>,
    y: &OctMatrix<F>,
) -> Result<OctMatrix<F>> {
    let xy = matmul_oct(alg, x, y)?;
    Ok(match kind {
        SpaceKind::FullStandard => xy,
        SpaceKind::HermitianAnticommutator | SpaceKind::FullAnticommutator => {
            let yx = matmul_oct(alg, y, x)?;
            xy.add(alg, &yx)
        }
        SpaceKind::AntihermitianCommutator | SpaceKind::FullCommutator => {
            let yx = matmul_oct(alg, y, x)?;
            xy.sub(alg, &yx)
        }
    })
}

/// An enumerated basis of a matrix space, with the index arithmetic needed
/// to decompose arbitrary members back into coordinates.
pub struct SpaceBasis<F: Field> {
    pub spec: MatrixSpaceSpec,
    pub labels: Vec<String>,
    pub mats: Vec<OctMatrix<F>>,
    /// (i, j) block -> offset of its 8 octonion coordinates.
    block_offset: HashMap<(usize, usize), usize>,
}

impl<F: Field> SpaceBasis<F> {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }
}

fn oct_label(k: usize) -> String {
    if k == 0 {
        "1".into()
    } else {
        format!("e{k}")
    }
}

/// Enumerates the basis of a matrix space in the fixed documented order:
/// diagonal families first (by index), then off-diagonal blocks in (i, j)
/// lexicographic order, octonion basis index last.
pub fn basis_enumerate<F: Field>(
    alg: &OctonionAlgebra<F>,
    spec: MatrixSpaceSpec,
) -> Result<SpaceBasis<F>> {
    if spec.oct_type != alg.oct_type {
        return Err(Error::Unsupported(format!(
            "spec octonion type {} does not match algebra type {}",
            spec.oct_type, alg.oct_type
        )));
    }
    let n = spec.n;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut block_offset = HashMap::new();
    match spec.kind {
        SpaceKind::HermitianAnticommutator => {
            for i in 0..n {
                labels.push(format!("E({},{})", i + 1, j1(i)));
                mats.push(OctMatrix::unit(alg, n, i, i, &alg.one()));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    block_offset.insert((i, j), mats.len());
                    for k in 0..8 {
                        let z = alg.basis(k);
                        let zbar = alg.conj(&z);
                        let mut m = OctMatrix::unit(alg, n, i, j, &z);
                        *m.get_mut(j, i) = zbar;
                        let sign = if k == 0 { '+' } else { '-' };
                        labels.push(format!(
                            "{}*E({},{}) {} {}*E({},{})",
                            oct_label(k),
                            i + 1,
                            j + 1,
                            sign,
                            oct_label(k),
                            j + 1,
                            i + 1
                        ));
                        mats.push(m);
                    }
                }
            }
        }
        SpaceKind::AntihermitianCommutator => {
            for t in 0..n {
                for k in 1..8 {
                    labels.push(format!("{}*E({},{})", oct_label(k), t + 1, t + 1));
                    mats.push(OctMatrix::unit(alg, n, t, t, &alg.basis(k)));
                }
            }
            for t in 0..n {
                for r in (t + 1)..n {
                    block_offset.insert((t, r), mats.len());
                    for k in 0..8 {
                        let z = alg.basis(k);
                        let neg_zbar = alg.neg(&alg.conj(&z));
                        let mut m = OctMatrix::unit(alg, n, t, r, &z);
                        *m.get_mut(r, t) = neg_zbar;
                        let sign = if k == 0 { '-' } else { '+' };
                        labels.push(format!(
                            "{}*E({},{}) {} {}*E({},{})",
                            oct_label(k),
                            t + 1,
                            r + 1,
                            sign,
                            oct_label(k),
                            r + 1,
                            t + 1
                        ));
                        mats.push(m);
                    }
                }
            }
        }
        _ => {
            for i in 0..n {
                block_offset.insert((i, i), mats.len());
                for k in 0..8 {
                    labels.push(format!("{}*E({},{})", oct_label(k), i + 1, i + 1));
                    mats.push(OctMatrix::unit(alg, n, i, i, &alg.basis(k)));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    block_offset.insert((i, j), mats.len());
                    for k in 0..8 {
                        labels.push(format!("{}*E({},{})", oct_label(k), i + 1, j + 1));
                        mats.push(OctMatrix::unit(alg, n, i, j, &alg.basis(k)));
                    }
                }
            }
        }
    }
    debug_assert_eq!(mats.len(), spec.dim());
    Ok(SpaceBasis {
        spec,
        labels,
        mats,
        block_offset,
    })
}

fn j1(i: usize) -> usize {
    i + 1
}

impl<F: Field> SpaceBasis<F> {
    /// Expresses a member of the space in basis coordinates. Panics if the
    /// matrix lies outside the space: members are produced by closed
    /// products, so that indicates a construction bug and must abort rather
    /// than truncate.
    pub fn decompose(&self, alg: &OctonionAlgebra<F>, m: &OctMatrix<F>) -> Vec<F::Elem> {
        let f = &alg.field;
        let n = self.spec.n;
        assert_eq!(m.n, n, "matrix size mismatch");
        let d = self.dim();
        let mut coords = vec![f.zero(); d];
        match self.spec.kind {
            SpaceKind::HermitianAnticommutator => {
                for i in 0..n {
                    let z = m.get(i, i);
                    assert!(
                        z.iter().skip(1).all(|c| f.is_zero(c)),
                        "hermitian diagonal entry has imaginary part: product outside basis span"
                    );
                    coords[i] = z[0].clone();
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        let z = m.get(i, j);
                        assert!(
                            *m.get(j, i) == alg.conj(z),
                            "matrix is not hermitian: product outside basis span"
                        );
                        let off = self.block_offset[&(i, j)];
                        for k in 0..8 {
                            coords[off + k] = z[k].clone();
                        }
                    }
                }
            }
            SpaceKind::AntihermitianCommutator => {
                for t in 0..n {
                    let z = m.get(t, t);
                    assert!(
                        f.is_zero(&z[0]),
                        "antihermitian diagonal entry has a real part: product outside basis span"
                    );
                    for k in 1..8 {
                        coords[t * 7 + (k - 1)] = z[k].clone();
                    }
                }
                for t in 0..n {
                    for r in (t + 1)..n {
                        let z = m.get(t, r);
                        assert!(
                            *m.get(r, t) == alg.neg(&alg.conj(z)),
                            "matrix is not antihermitian: product outside basis span"
                        );
                        let off = self.block_offset[&(t, r)];
                        for k in 0..8 {
                            coords[off + k] = z[k].clone();
                        }
                    }
                }
            }
            _ => {
                for i in 0..n {
                    for j in 0..n {
                        let z = m.get(i, j);
                        let off = self.block_offset[&(i, j)];
                        for k in 0..8 {
                            coords[off + k] = z[k].clone();
                        }
                    }
                }
            }
        }
        coords
    }

    /// Rebuilds the matrix for a coordinate vector.
    pub fn compose(&self, alg: &OctonionAlgebra<F>, coords: &[F::Elem]) -> OctMatrix<F> {
        assert_eq!(coords.len(), self.dim());
        let f = &alg.field;
        let mut out = OctMatrix::zero(alg, self.spec.n);
        for (c, mat) in coords.iter().zip(&self.mats) {
            if f.is_zero(c) {
                continue;
            }
            for i in 0..self.spec.n {
                for j in 0..self.spec.n {
                    let e = mat.get(i, j);
                    if !alg.is_zero(e) {
                        let scaled = alg.scale(c, e);
                        let slot = out.get_mut(i, j);
                        *slot = alg.add(slot, &scaled);
                    }
                }
            }
        }
        out
    }
}

/// Builds the structure-constant algebra of a matrix space by multiplying
/// all ordered basis pairs generically. The symmetry flag is verified
/// against the full tensor afterwards.
pub fn build_algebra<F: Field>(
    alg: &OctonionAlgebra<F>,
    spec: MatrixSpaceSpec,
) -> Result<StructureAlgebra<F>> {
    let basis = basis_enumerate(alg, spec)?;
    build_algebra_from_basis(alg, &basis)
}

pub fn build_algebra_from_basis<F: Field>(
    alg: &OctonionAlgebra<F>,
    basis: &SpaceBasis<F>,
) -> Result<StructureAlgebra<F>> {
    let f = &alg.field;
    let d = basis.dim();
    let mut products = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            let prod = space_product(alg, basis.spec.kind, &basis.mats[p], &basis.mats[q])?;
            let coords = basis.decompose(alg, &prod);
            let entries: Vec<(u32, F::Elem)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !f.is_zero(v))
                .map(|(k, v)| (k as u32, v))
                .collect();
            products.push(entries);
        }
    }
    StructureAlgebra::from_products(
        f.clone(),
        d,
        basis.labels.clone(),
        products,
        basis.spec.kind.symmetry(),
        basis.spec.display_name(),
    )
}

/// One closed-form product family check.
#[derive(Debug, Clone)]
pub struct FamilyCheck {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
}

/// Result of checking the five closed-form product families against the
/// generic structure constants.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub algebra: String,
    pub families: Vec<FamilyCheck>,
}

impl CrosscheckReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(|f| f.failures == 0)
    }
}

/// Independently evaluates the five closed-form product families of the
/// hermitian (anticommutator) or antihermitian (commutator) space with z, w
/// ranging over the octonion basis, and compares each against the product
/// computed through the structure constants.
pub fn crosscheck_products<F: Field>(
    alg: &OctonionAlgebra<F>,
    spec: MatrixSpaceSpec,
) -> Result<CrosscheckReport> {
    match spec.kind {
        SpaceKind::HermitianAnticommutator | SpaceKind::AntihermitianCommutator => {}
        _ => {
            return Err(Error::Unsupported(
                "cross-checks exist for the hermitian and antihermitian spaces".into(),
            ))
        }
    }
    let basis = basis_enumerate(alg, spec)?;
    let tensor = build_algebra_from_basis(alg, &basis)?;
    let n = spec.n;
    let f = &alg.field;
    let two = f.from_i64(2);

    // compare tensor-route and closed-form products of two space members
    let check = |x: &OctMatrix<F>, y: &OctMatrix<F>, expect: &OctMatrix<F>| -> bool {
        let cx = basis.decompose(alg, x);
        let cy = basis.decompose(alg, y);
        let via_tensor = tensor.mul_coords(&cx, &cy);
        let closed = basis.decompose(alg, expect);
        via_tensor == closed
    };

    let mut families = Vec::new();
    match spec.kind {
        SpaceKind::HermitianAnticommutator => {
            // E_ii o E_ii = 2 E_ii
            let mut fam = FamilyCheck {
                name: "diag o diag",
                instances: 0,
                failures: 0,
            };
            for i in 0..n {
                let eii = OctMatrix::unit(alg, n, i, i, &alg.one());
                let expect = OctMatrix::unit(alg, n, i, i, &alg.scale(&two, &alg.one()));
                fam.instances += 1;
                if !check(&eii, &eii, &expect) {
                    fam.failures += 1;
                }
            }
            families.push(fam);

            let herm = |i: usize, j: usize, z: &Oct<F>| -> OctMatrix<F> {
                let mut m = OctMatrix::unit(alg, n, i, j, z);
                *m.get_mut(j, i) = alg.conj(z);
                m
            };

            // E_ii o (zE_ij + zbar E_ji) = the same element, and with E_jj
            let mut fam2 = FamilyCheck {
                name: "left-diag o offdiag",
                instances: 0,
                failures: 0,
            };
            let mut fam3 = FamilyCheck {
                name: "right-diag o offdiag",
                instances: 0,
                failures: 0,
            };
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for k in 0..8 {
                        let x = herm(i, j, &alg.basis(k));
                        let eii = OctMatrix::unit(alg, n, i, i, &alg.one());
                        let ejj = OctMatrix::unit(alg, n, j, j, &alg.one());
                        fam2.instances += 1;
                        if !check(&eii, &x, &x) {
                            fam2.failures += 1;
                        }
                        fam3.instances += 1;
                        if !check(&ejj, &x, &x) {
                            fam3.failures += 1;
                        }
                    }
                }
            }
            families.push(fam2);
            families.push(fam3);

            // (zE_ij + zbar E_ji) o (wE_ij + wbar E_ji)
            //   = 2 real(z wbar) (E_ii + E_jj)
            let mut fam4 = FamilyCheck {
                name: "offdiag o offdiag (same block)",
                instances: 0,
                failures: 0,
            };
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for zk in 0..8 {
                        for wk in 0..8 {
                            let (z, w) = (alg.basis(zk), alg.basis(wk));
                            let x = herm(i, j, &z);
                            let y = herm(i, j, &w);
                            let r = alg.real_part(&alg.mul(&z, &alg.conj(&w)));
                            let c = f.mul(&two, &r);
                            let mut expect = OctMatrix::zero(alg, n);
                            expect.get_mut(i, i)[0] = c.clone();
                            expect.get_mut(j, j)[0] = c;
                            fam4.instances += 1;
                            if !check(&x, &y, &expect) {
                                fam4.failures += 1;
                            }
                        }
                    }
                }
            }
            families.push(fam4);

            // (zE_ij + zbar E_ji) o (wE_jk + wbar E_kj)
            //   = zw E_ik + wbar zbar E_ki
            let mut fam5 = FamilyCheck {
                name: "offdiag o offdiag (shared index)",
                instances: 0,
                failures: 0,
            };
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        for zk in 0..8 {
                            for wk in 0..8 {
                                let (z, w) = (alg.basis(zk), alg.basis(wk));
                                let x = herm(i, j, &z);
                                let y = herm(j, k, &w);
                                let zw = alg.mul(&z, &w);
                                let wbzb = alg.mul(&alg.conj(&w), &alg.conj(&z));
                                let mut expect = OctMatrix::unit(alg, n, i, k, &zw);
                                *expect.get_mut(k, i) = wbzb;
                                fam5.instances += 1;
                                if !check(&x, &y, &expect) {
                                    fam5.failures += 1;
                                }
                            }
                        }
                    }
                }
            }
            families.push(fam5);
        }
        SpaceKind::AntihermitianCommutator => {
            let anti = |t: usize, r: usize, z: &Oct<F>| -> OctMatrix<F> {
                let mut m = OctMatrix::unit(alg, n, t, r, z);
                *m.get_mut(r, t) = alg.neg(&alg.conj(z));
                m
            };

            // [e_i E_tt, e_j E_tt] = 2 e_i e_j E_tt, i != j
            let mut fam1 = FamilyCheck {
                name: "diag bracket diag",
                instances: 0,
                failures: 0,
            };
            for t in 0..n {
                for i in 1..8 {
                    for j in 1..8 {
                        if i == j {
                            continue;
                        }
                        let x = OctMatrix::unit(alg, n, t, t, &alg.basis(i));
                        let y = OctMatrix::unit(alg, n, t, t, &alg.basis(j));
                        let prod = alg.scale(&two, &alg.mul(&alg.basis(i), &alg.basis(j)));
                        let expect = OctMatrix::unit(alg, n, t, t, &prod);
                        fam1.instances += 1;
                        if !check(&x, &y, &expect) {
                            fam1.failures += 1;
                        }
                    }
                }
            }
            families.push(fam1);

            // [e_i E_tt, zE_tr - zbar E_rt] = e_i z E_tr + zbar e_i E_rt
            let mut fam2 = FamilyCheck {
                name: "left-diag bracket offdiag",
                instances: 0,
                failures: 0,
            };
            for t in 0..n {
                for r in 0..n {
                    if t == r {
                        continue;
                    }
                    for i in 1..8 {
                        for zk in 0..8 {
                            let ei = alg.basis(i);
                            let z = alg.basis(zk);
                            let x = OctMatrix::unit(alg, n, t, t, &ei);
                            let y = anti(t, r, &z);
                            let mut expect =
                                OctMatrix::unit(alg, n, t, r, &alg.mul(&ei, &z));
                            *expect.get_mut(r, t) = alg.mul(&alg.conj(&z), &ei);
                            fam2.instances += 1;
                            if !check(&x, &y, &expect) {
                                fam2.failures += 1;
                            }
                        }
                    }
                }
            }
            families.push(fam2);

            // [e_i E_rr, zE_tr - zbar E_rt] = -z e_i E_tr - e_i zbar E_rt
            let mut fam3 = FamilyCheck {
                name: "right-diag bracket offdiag",
                instances: 0,
                failures: 0,
            };
            for t in 0..n {
                for r in 0..n {
                    if t == r {
                        continue;
                    }
                    for i in 1..8 {
                        for zk in 0..8 {
                            let ei = alg.basis(i);
                            let z = alg.basis(zk);
                            let x = OctMatrix::unit(alg, n, r, r, &ei);
                            let y = anti(t, r, &z);
                            let mut expect =
                                OctMatrix::unit(alg, n, t, r, &alg.neg(&alg.mul(&z, &ei)));
                            *expect.get_mut(r, t) =
                                alg.neg(&alg.mul(&ei, &alg.conj(&z)));
                            fam3.instances += 1;
                            if !check(&x, &y, &expect) {
                                fam3.failures += 1;
                            }
                        }
                    }
                }
            }
            families.push(fam3);

            // [zE_tr - zbar E_rt, wE_tr - wbar E_rt]
            //   = 2 imag(w zbar) E_tt + 2 imag(wbar z) E_rr
            let mut fam4 = FamilyCheck {
                name: "offdiag bracket offdiag (same block)",
                instances: 0,
                failures: 0,
            };
            for t in 0..n {
                for r in 0..n {
                    if t == r {
                        continue;
                    }
                    for zk in 0..8 {
                        for wk in 0..8 {
                            let (z, w) = (alg.basis(zk), alg.basis(wk));
                            let x = anti(t, r, &z);
                            let y = anti(t, r, &w);
                            let itt = alg.imag_part(&alg.mul(&w, &alg.conj(&z)));
                            let irr = alg.imag_part(&alg.mul(&alg.conj(&w), &z));
                            let mut expect =
                                OctMatrix::unit(alg, n, t, t, &alg.scale(&two, &itt));
                            *expect.get_mut(r, r) = alg.scale(&two, &irr);
                            fam4.instances += 1;
                            if !check(&x, &y, &expect) {
                                fam4.failures += 1;
                            }
                        }
                    }
                }
            }
            families.push(fam4);

            // [zE_tr - zbar E_rt, wE_rs - wbar E_sr] = zw E_ts - wbar zbar E_st
            let mut fam5 = FamilyCheck {
                name: "offdiag bracket offdiag (shared index)",
                instances: 0,
                failures: 0,
            };
            for t in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        if t == r || r == s || t == s {
                            continue;
                        }
                        for zk in 0..8 {
                            for wk in 0..8 {
                                let (z, w) = (alg.basis(zk), alg.basis(wk));
                                let x = anti(t, r, &z);
                                let y = anti(r, s, &w);
                                let zw = alg.mul(&z, &w);
                                let wbzb =
                                    alg.mul(&alg.conj(&w), &alg.conj(&z));
                                let mut expect = OctMatrix::unit(alg, n, t, s, &zw);
                                *expect.get_mut(s, t) = alg.neg(&wbzb);
                                fam5.instances += 1;
                                if !check(&x, &y, &expect) {
                                    fam5.failures += 1;
                                }
                            }
                        }
                    }
                }
            }
            families.push(fam5);
        }
        _ => unreachable!(),
    }
    Ok(CrosscheckReport {
        algebra: spec.display_name(),
        families,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::build_octonion;
    use crate::scalar::{Field, PrimeField, Rationals};

    fn oct(t: OctType) -> OctonionAlgebra<Rationals> {
        build_octonion(Rationals, t).unwrap()
    }

    fn spec(kind: SpaceKind, n: usize) -> MatrixSpaceSpec {
        MatrixSpaceSpec::new(kind, n, OctType::TypeI).unwrap()
    }

    #[test]
    fn matmul_unit_matrices() {
        let a = oct(OctType::TypeI);
        let e12 = OctMatrix::unit(&a, 3, 0, 1, &a.one());
        let e23 = OctMatrix::unit(&a, 3, 1, 2, &a.one());
        let e13 = OctMatrix::unit(&a, 3, 0, 2, &a.one());
        assert_eq!(matmul_oct(&a, &e12, &e23).unwrap(), e13);

        let id = OctMatrix::identity(&a, 3);
        assert_eq!(matmul_oct(&a, &id, &e23).unwrap(), e23);

        // size mismatch is an error
        let e11 = OctMatrix::unit(&a, 2, 0, 0, &a.one());
        assert!(matmul_oct(&a, &e12, &e11).is_err());
    }

    #[test]
    fn matmul_single_summand() {
        let a = oct(OctType::TypeII);
        let f = Rationals;
        // a couple of fixed "random" octonions
        let z: crate::octonion::Oct<Rationals> =
            std::array::from_fn(|k| f.from_i64([3, -1, 0, 2, 5, 0, -4, 1][k]));
        let w: crate::octonion::Oct<Rationals> =
            std::array::from_fn(|k| f.from_i64([-2, 4, 1, 0, -3, 2, 0, 7][k]));
        let x = OctMatrix::unit(&a, 2, 0, 1, &z);
        let y = OctMatrix::unit(&a, 2, 1, 0, &w);
        let expect = OctMatrix::unit(&a, 2, 0, 0, &a.mul(&z, &w));
        assert_eq!(matmul_oct(&a, &x, &y).unwrap(), expect);
    }

    #[test]
    fn basis_counts() {
        let a = oct(OctType::TypeI);
        assert_eq!(
            basis_enumerate(&a, spec(SpaceKind::HermitianAnticommutator, 3))
                .unwrap()
                .dim(),
            27
        );
        assert_eq!(
            basis_enumerate(&a, spec(SpaceKind::HermitianAnticommutator, 1))
                .unwrap()
                .dim(),
            1
        );
        assert_eq!(
            basis_enumerate(&a, spec(SpaceKind::HermitianAnticommutator, 4))
                .unwrap()
                .dim(),
            52
        );
        assert_eq!(
            basis_enumerate(&a, spec(SpaceKind::AntihermitianCommutator, 1))
                .unwrap()
                .dim(),
            7
        );
        for n in 1..=5 {
            assert_eq!(
                SpaceKind::HermitianAnticommutator.dim(n),
                4 * n * n - 3 * n
            );
            assert_eq!(SpaceKind::AntihermitianCommutator.dim(n), 4 * n * n + 3 * n);
            assert_eq!(SpaceKind::FullStandard.dim(n), 8 * n * n);
        }
    }

    #[test]
    fn antihermitian_n1_is_the_pure_octonions() {
        let a = oct(OctType::TypeI);
        let b = basis_enumerate(&a, spec(SpaceKind::AntihermitianCommutator, 1)).unwrap();
        assert_eq!(b.dim(), 7);
        for (k, m) in b.mats.iter().enumerate() {
            assert_eq!(m.get(0, 0), &a.basis(k + 1));
        }
    }

    #[test]
    fn hermitian_diag_product() {
        let a = oct(OctType::TypeI);
        let f = Rationals;
        let alg = build_algebra(&a, spec(SpaceKind::HermitianAnticommutator, 2)).unwrap();
        // E11 o E11 = 2 E11
        assert_eq!(alg.product(0, 0), &[(0u32, f.from_i64(2))][..]);
        assert_eq!(alg.symmetry(), Symmetry::Commutative);
    }

    #[test]
    fn hermitian_offdiag_same_block_product() {
        // (e1 E12 + conj(e1) E21) o (e1 E12 + conj(e1) E21)
        //   = 2 real(e1 conj(e1)) (E11 + E22) = 2(E11 + E22) for Type I
        let a = oct(OctType::TypeI);
        let f = Rationals;
        let alg = build_algebra(&a, spec(SpaceKind::HermitianAnticommutator, 2)).unwrap();
        let idx = 2 + 1; // diag E11, E22, then block (1,2) with z = 1 at offset 2
        assert_eq!(
            alg.product(idx, idx),
            &[(0u32, f.from_i64(2)), (1u32, f.from_i64(2))][..]
        );
    }

    #[test]
    fn antihermitian_diag_products() {
        let a = oct(OctType::TypeI);
        let f = Rationals;
        let alg = build_algebra(&a, spec(SpaceKind::AntihermitianCommutator, 2)).unwrap();
        // basis 0..6 = e1..e7 on E11, 7..13 = e1..e7 on E22
        // [e1 E11, e2 E11] = 2 e1e2 E11 = 2 e3 E11
        assert_eq!(alg.product(0, 1), &[(2u32, f.from_i64(2))][..]);
        // [e1 E11, e1 E22] = 0
        assert_eq!(alg.product(0, 7), &[][..]);
        assert_eq!(alg.symmetry(), Symmetry::Anticommutative);
    }

    #[test]
    fn products_preserve_hermiticity() {
        for t in [OctType::TypeI, OctType::TypeII] {
            let a = build_octonion(Rationals, t).unwrap();
            let hb = basis_enumerate(
                &a,
                MatrixSpaceSpec::new(SpaceKind::HermitianAnticommutator, 3, t).unwrap(),
            )
            .unwrap();
            for x in &hb.mats {
                assert!(x.is_hermitian(&a));
                for y in &hb.mats {
                    let p = space_product(&a, SpaceKind::HermitianAnticommutator, x, y).unwrap();
                    assert!(p.is_hermitian(&a));
                }
            }
            let ab = basis_enumerate(
                &a,
                MatrixSpaceSpec::new(SpaceKind::AntihermitianCommutator, 2, t).unwrap(),
            )
            .unwrap();
            for x in &ab.mats {
                assert!(x.is_antihermitian(&a));
                for y in &ab.mats {
                    let p = space_product(&a, SpaceKind::AntihermitianCommutator, x, y).unwrap();
                    assert!(p.is_antihermitian(&a));
                }
            }
        }
    }

    #[test]
    fn crosscheck_hermitian_n4() {
        for t in [OctType::TypeI, OctType::TypeII] {
            let a = build_octonion(PrimeField::new(101).unwrap(), t).unwrap();
            let r = crosscheck_products(
                &a,
                MatrixSpaceSpec::new(SpaceKind::HermitianAnticommutator, 4, t).unwrap(),
            )
            .unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert_eq!(r.families.len(), 5);
            assert!(r.families.iter().all(|fam| fam.instances > 0));
        }
    }

    #[test]
    fn crosscheck_antihermitian_n3() {
        for t in [OctType::TypeI, OctType::TypeII] {
            let a = build_octonion(PrimeField::new(101).unwrap(), t).unwrap();
            let r = crosscheck_products(
                &a,
                MatrixSpaceSpec::new(SpaceKind::AntihermitianCommutator, 3, t).unwrap(),
            )
            .unwrap();
            assert!(r.all_pass(), "{r:?}");
            assert_eq!(r.families.len(), 5);
            assert!(r.families.iter().all(|fam| fam.instances > 0));
        }
    }

    #[test]
    fn crosscheck_hermitian_n1_only_diagonal_family_applies() {
        let a = oct(OctType::TypeI);
        let r = crosscheck_products(&a, spec(SpaceKind::HermitianAnticommutator, 1)).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.families[0].instances, 1);
        for fam in &r.families[1..] {
            assert_eq!(fam.instances, 0, "{}", fam.name);
        }
    }

    #[test]
    fn full_space_symmetries() {
        let a = oct(OctType::TypeI);
        let std = build_algebra(&a, spec(SpaceKind::FullStandard, 2)).unwrap();
        assert_eq!(std.dim(), 32);
        assert_eq!(std.symmetry(), Symmetry::None);
        let com = build_algebra(&a, spec(SpaceKind::FullCommutator, 2)).unwrap();
        assert_eq!(com.symmetry(), Symmetry::Anticommutative);
        let aco = build_algebra(&a, spec(SpaceKind::FullAnticommutator, 2)).unwrap();
        assert_eq!(aco.symmetry(), Symmetry::Commutative);
    }

    #[test]
    fn decompose_compose_roundtrip() {
        let a = oct(OctType::TypeII);
        let f = Rationals;
        let basis = basis_enumerate(&a, spec2(SpaceKind::AntihermitianCommutator, 2)).unwrap();
        let coords: Vec<_> = (0..basis.dim())
            .map(|i| f.from_i64((i as i64 * 7 - 3) % 11))
            .collect();
        let m = basis.compose(&a, &coords);
        assert_eq!(basis.decompose(&a, &m), coords);
    }

    fn spec2(kind: SpaceKind, n: usize) -> MatrixSpaceSpec {
        MatrixSpaceSpec::new(kind, n, OctType::TypeII).unwrap()
    }
}
