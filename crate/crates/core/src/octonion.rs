//! Octonion algebras over an exact field: Type I (all imaginary basis
//! squares -1) and Type II (the split form, squares +1 from e4 on), with
//! conjugation, real/imaginary decomposition, the norm form, and nucleus
//! computation.
//!
//! Construction doubles a quaternion seed (i^2 = j^2 = -1, ij = k = -ji)
//! with the pair product `(a,b)(c,d) = (ac + g*conj(d)*b, da + b*conj(c))`,
//! where the doubling parameter g is -1 for Type I and +1 for Type II. The
//! sign convention is validated at build time against the whole identity
//! suite (unit, basis squares, anticommutation, linearized alternativity,
//! the left Moufang law, norm multiplicativity on basis products, and the
//! quaternion subalgebra for Type II), so any table that comes out of
//! [`build_octonion`] satisfies every property downstream code relies on.

use crate::linalg::{self, EchelonBasis, Eliminator};
use crate::matalg::{StructureAlgebra, Symmetry};
use crate::scalar::Field;
use crate::{Error, Result};

/// The two octonion algebra types, by the sign pattern of basis squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OctType {
    TypeI,
    TypeII,
}

impl OctType {
    pub fn label(&self) -> &'static str {
        match self {
            OctType::TypeI => "I",
            OctType::TypeII => "II",
        }
    }
}

impl std::fmt::Display for OctType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// An octonion as coordinates over the basis `1, e1, ..., e7`.
pub type Oct<F> = [<F as Field>::Elem; 8];

/// An 8-dimensional octonion algebra with its precomputed multiplication
/// table. Immutable once built; elements are plain coordinate arrays and
/// every operation is pure.
#[derive(Debug, Clone)]
pub struct OctonionAlgebra<F: Field> {
    pub field: F,
    pub oct_type: OctType,
    /// Coordinates of the basis product `b_i * b_j` at index `i*8 + j`.
    table: Vec<Oct<F>>,
}

/// Quaternion basis product index / sign tables for the seed 1, i, j, k.
const QIDX: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
const QSIGN: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];

fn qmul(x: &[i64; 4], y: &[i64; 4]) -> [i64; 4] {
    let mut out = [0i64; 4];
    for a in 0..4 {
        if x[a] == 0 {
            continue;
        }
        for b in 0..4 {
            if y[b] == 0 {
                continue;
            }
            out[QIDX[a][b]] += QSIGN[a][b] * x[a] * y[b];
        }
    }
    out
}

fn qconj(x: &[i64; 4]) -> [i64; 4] {
    [x[0], -x[1], -x[2], -x[3]]
}

/// Construct a Type I or Type II octonion algebra over the given field.
/// Rejects characteristic two and validates the resulting table against the
/// full identity suite.
pub fn build_octonion<F: Field>(field: F, oct_type: OctType) -> Result<OctonionAlgebra<F>> {
    if field.spec().characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let gamma: i64 = match oct_type {
        OctType::TypeI => -1,
        OctType::TypeII => 1,
    };
    // basis element m as a pair of quaternions
    let half = |m: usize| -> ([i64; 4], [i64; 4]) {
        let mut q = [0i64; 4];
        q[m % 4] = 1;
        if m < 4 {
            (q, [0; 4])
        } else {
            ([0; 4], q)
        }
    };
    let mut table = Vec::with_capacity(64);
    for i in 0..8 {
        for j in 0..8 {
            let (a, b) = half(i);
            let (c, d) = half(j);
            // (a,b)(c,d) = (ac + g*conj(d)b, da + b*conj(c))
            let mut first = qmul(&a, &c);
            let t = qmul(&qconj(&d), &b);
            for k in 0..4 {
                first[k] += gamma * t[k];
            }
            let mut second = qmul(&d, &a);
            let t = qmul(&b, &qconj(&c));
            for k in 0..4 {
                second[k] += t[k];
            }
            let coords: Oct<F> = std::array::from_fn(|k| {
                if k < 4 {
                    field.from_i64(first[k])
                } else {
                    field.from_i64(second[k - 4])
                }
            });
            table.push(coords);
        }
    }
    let alg = OctonionAlgebra {
        field,
        oct_type,
        table,
    };
    alg.validate()?;
    Ok(alg)
}

impl<F: Field> OctonionAlgebra<F> {
    pub fn zero(&self) -> Oct<F> {
        std::array::from_fn(|_| self.field.zero())
    }

    /// The basis element `1` (k = 0) or `e_k`.
    pub fn basis(&self, k: usize) -> Oct<F> {
        std::array::from_fn(|i| {
            if i == k {
                self.field.one()
            } else {
                self.field.zero()
            }
        })
    }

    pub fn one(&self) -> Oct<F> {
        self.basis(0)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Oct<F> {
        &self.table[i * 8 + j]
    }

    pub fn is_zero(&self, z: &Oct<F>) -> bool {
        z.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, x: &Oct<F>, y: &Oct<F>) -> Oct<F> {
        std::array::from_fn(|k| self.field.add(&x[k], &y[k]))
    }

    pub fn sub(&self, x: &Oct<F>, y: &Oct<F>) -> Oct<F> {
        std::array::from_fn(|k| self.field.sub(&x[k], &y[k]))
    }

    pub fn neg(&self, x: &Oct<F>) -> Oct<F> {
        std::array::from_fn(|k| self.field.neg(&x[k]))
    }

    pub fn scale(&self, c: &F::Elem, x: &Oct<F>) -> Oct<F> {
        std::array::from_fn(|k| self.field.mul(c, &x[k]))
    }

    /// Bilinear extension of the basis table.
    pub fn mul(&self, x: &Oct<F>, y: &Oct<F>) -> Oct<F> {
        let f = &self.field;
        let mut out = self.zero();
        for i in 0..8 {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..8 {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let t = f.mul(&x[i], &y[j]);
                let prod = &self.table[i * 8 + j];
                for (k, c) in prod.iter().enumerate() {
                    if !f.is_zero(c) {
                        let u = f.mul(&t, c);
                        f.add_assign(&mut out[k], &u);
                    }
                }
            }
        }
        out
    }

    /// Conjugation: negate the seven imaginary coordinates.
    pub fn conj(&self, z: &Oct<F>) -> Oct<F> {
        std::array::from_fn(|k| {
            if k == 0 {
                z[0].clone()
            } else {
                self.field.neg(&z[k])
            }
        })
    }

    pub fn real_part(&self, z: &Oct<F>) -> F::Elem {
        z[0].clone()
    }

    pub fn imag_part(&self, z: &Oct<F>) -> Oct<F> {
        std::array::from_fn(|k| if k == 0 { self.field.zero() } else { z[k].clone() })
    }

    /// `real(z * conj(z))`; multiplicative, and diagonal on the basis (all
    /// +1 for Type I, signs flipping with the basis squares for Type II).
    pub fn norm(&self, z: &Oct<F>) -> F::Elem {
        self.real_part(&self.mul(z, &self.conj(z)))
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &Oct<F>, y: &Oct<F>, z: &Oct<F>) -> Oct<F> {
        let xy_z = self.mul(&self.mul(x, y), z);
        let x_yz = self.mul(x, &self.mul(y, z));
        self.sub(&xy_z, &x_yz)
    }

    /// `z(w(zu)) - ((zw)z)u`, the left Moufang defect.
    pub fn moufang_defect(&self, z: &Oct<F>, w: &Oct<F>, u: &Oct<F>) -> Oct<F> {
        let lhs = self.mul(z, &self.mul(w, &self.mul(z, u)));
        let zwz = self.mul(&self.mul(z, w), z);
        self.sub(&lhs, &self.mul(&zwz, u))
    }

    pub fn eq(&self, x: &Oct<F>, y: &Oct<F>) -> bool {
        x == y
    }

    /// Full identity suite; run at construction so a bad sign convention can
    /// never escape.
    fn validate(&self) -> Result<()> {
        let f = &self.field;
        let fail =
            |what: String| Err(Error::Unsupported(format!("octonion table invalid: {what}")));
        // unit
        for j in 0..8 {
            let b = self.basis(j);
            if !self.eq(&self.mul(&self.one(), &b), &b) || !self.eq(&self.mul(&b, &self.one()), &b)
            {
                return fail(format!("1*e{j} or e{j}*1"));
            }
        }
        // basis squares
        for i in 1..8 {
            let sq = self.basis_product(i, i);
            let expect = match self.oct_type {
                OctType::TypeI => f.from_i64(-1),
                OctType::TypeII => {
                    if i <= 3 {
                        f.from_i64(-1)
                    } else {
                        f.one()
                    }
                }
            };
            let mut want = self.zero();
            want[0] = expect;
            if sq != &want {
                return fail(format!("e{i}^2"));
            }
        }
        // anticommutation
        for i in 1..8 {
            for j in 1..8 {
                if i == j {
                    continue;
                }
                let ij = self.basis_product(i, j).clone();
                let ji = self.basis_product(j, i);
                if !self.eq(&self.neg(&ij), ji) {
                    return fail(format!("e{i}e{j} vs e{j}e{i}"));
                }
            }
        }
        // alternativity, in linearized form so it extends to all elements:
        // [a,b,c] + [b,a,c] = 0 and [c,a,b] + [c,b,a] = 0 over all triples
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let left = self.add(&self.associator(&a, &b, &c), &self.associator(&b, &a, &c));
                    let right =
                        self.add(&self.associator(&c, &a, &b), &self.associator(&c, &b, &a));
                    if !self.is_zero(&left) || !self.is_zero(&right) {
                        return fail(format!("alternativity at ({i},{j},{k})"));
                    }
                }
            }
        }
        // left Moufang law on all basis triples
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let d = self.moufang_defect(&self.basis(i), &self.basis(j), &self.basis(k));
                    if !self.is_zero(&d) {
                        return fail(format!("Moufang at ({i},{j},{k})"));
                    }
                }
            }
        }
        // norm multiplicativity on basis products
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (self.basis(i), self.basis(j));
                let lhs = self.norm(&self.mul(&x, &y));
                let rhs = f.mul(&self.norm(&x), &self.norm(&y));
                if lhs != rhs {
                    return fail(format!("norm at ({i},{j})"));
                }
            }
        }
        // Type II: 1, e1, e2, e3 close under multiplication and match the
        // quaternion seed exactly
        if self.oct_type == OctType::TypeII {
            for i in 0..4 {
                for j in 0..4 {
                    let prod = self.basis_product(i, j);
                    for k in 4..8 {
                        if !f.is_zero(&prod[k]) {
                            return fail(format!("quaternion span not closed at ({i},{j})"));
                        }
                    }
                    let expect = f.from_i64(QSIGN[i][j]);
                    for k in 0..4 {
                        let want = if k == QIDX[i][j] {
                            expect.clone()
                        } else {
                            f.zero()
                        };
                        if prod[k] != want {
                            return fail(format!("quaternion seed mismatch at ({i},{j})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The algebra as structure-constant data (symmetry: none).
    pub fn to_structure_algebra(&self) -> StructureAlgebra<F> {
        let mut labels = vec!["1".to_string()];
        labels.extend((1..8).map(|i| format!("e{i}")));
        let mut products = Vec::with_capacity(64);
        for i in 0..8 {
            for j in 0..8 {
                let coords = self.basis_product(i, j);
                let entries: Vec<(u32, F::Elem)> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !self.field.is_zero(v))
                    .map(|(k, v)| (k as u32, v.clone()))
                    .collect();
                products.push(entries);
            }
        }
        StructureAlgebra::from_products(
            self.field.clone(),
            8,
            labels,
            products,
            Symmetry::None,
            format!("O(type {})", self.oct_type),
        )
        .expect("octonion table is a valid structure algebra")
    }

    /// Dense string table for serialization: `[i][j]` is the list of 8
    /// coordinate strings of `b_i * b_j`.
    pub fn table_strings(&self) -> Vec<Vec<Vec<String>>> {
        (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| {
                        self.basis_product(i, j)
                            .iter()
                            .map(|v| self.field.format_elem(v))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

/// The quaternion seed as a standalone 4-dimensional structure algebra
/// (useful as an associative contrast case: its nucleus is everything).
pub fn quaternion_structure_algebra<F: Field>(field: F) -> StructureAlgebra<F> {
    let labels = vec!["1".into(), "i".into(), "j".into(), "k".into()];
    let mut products = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            products.push(vec![(QIDX[i][j] as u32, field.from_i64(QSIGN[i][j]))]);
        }
    }
    StructureAlgebra::from_products(field, 4, labels, products, Symmetry::None, "H".into())
        .expect("quaternion table is a valid structure algebra")
}

/// Dimension and basis of `{a : [a, b_i, b_j] = 0 for all basis pairs}`,
/// computed as an exact null space. Every returned basis vector is
/// re-verified against the defining equations.
pub fn nucleus<F: Field>(alg: &StructureAlgebra<F>) -> (usize, EchelonBasis<F>) {
    let f = alg.field();
    let d = alg.dim();
    let mut elim = Eliminator::new(f.clone(), d);
    for i in 0..d {
        for j in 0..d {
            // rows_for_m[m]: coefficients over the unknown a_l of the m-th
            // coordinate of [a, b_i, b_j]
            let mut rows_for_m: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); d];
            for l in 0..d {
                let coords = associator_coords(alg, l, i, j);
                for (m, v) in coords {
                    rows_for_m[m as usize].push((l as u32, v));
                }
            }
            for row in rows_for_m {
                if !row.is_empty() {
                    elim.push_row(row);
                }
            }
        }
    }
    let rref = elim.finish();
    let basis = linalg::null_space_of_rref(f, d, &rref);
    // residual sweep
    for vec in basis.to_dense(f) {
        for i in 0..d {
            for j in 0..d {
                let bi = alg.basis_coords(i);
                let bj = alg.basis_coords(j);
                let ab = alg.mul_coords(&vec, &bi);
                let lhs = alg.mul_coords(&ab, &bj);
                let bibj = alg.mul_coords(&bi, &bj);
                let rhs = alg.mul_coords(&vec, &bibj);
                assert!(
                    lhs.iter().zip(&rhs).all(|(x, y)| x == y),
                    "nucleus residual nonzero"
                );
            }
        }
    }
    (basis.dim(), basis)
}

/// Sparse coordinates of `[b_l, b_i, b_j] = (b_l b_i) b_j - b_l (b_i b_j)`.
fn associator_coords<F: Field>(
    alg: &StructureAlgebra<F>,
    l: usize,
    i: usize,
    j: usize,
) -> Vec<(u32, F::Elem)> {
    let f = alg.field();
    let mut acc: std::collections::BTreeMap<u32, F::Elem> = std::collections::BTreeMap::new();
    for (k, c) in alg.product(l, i) {
        for (m, c2) in alg.product(*k as usize, j) {
            let v = f.mul(c, c2);
            let slot = acc.entry(*m).or_insert_with(|| f.zero());
            f.add_assign(slot, &v);
        }
    }
    for (k, c) in alg.product(i, j) {
        for (m, c2) in alg.product(l, *k as usize) {
            let v = f.mul(c, c2);
            let slot = acc.entry(*m).or_insert_with(|| f.zero());
            *slot = f.sub(slot, &v);
        }
    }
    acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::scalar::{Field, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn arb_oct() -> impl Strategy<Value = [i64; 8]> {
        proptest::array::uniform8(-9i64..10)
    }

    fn to_elem(a: &OctonionAlgebra<Rationals>, coords: [i64; 8]) -> Oct<Rationals> {
        std::array::from_fn(|k| a.field.from_i64(coords[k]))
    }

    fn both() -> impl Strategy<Value = OctType> {
        prop_oneof![Just(OctType::TypeI), Just(OctType::TypeII)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conj_is_an_involutive_antiautomorphism(t in both(), x in arb_oct(), y in arb_oct()) {
            let a = build_octonion(Rationals, t).unwrap();
            let (x, y) = (to_elem(&a, x), to_elem(&a, y));
            prop_assert_eq!(a.conj(&a.conj(&x)), x.clone());
            prop_assert_eq!(a.conj(&a.mul(&x, &y)), a.mul(&a.conj(&y), &a.conj(&x)));
        }

        #[test]
        fn norm_is_multiplicative(t in both(), x in arb_oct(), y in arb_oct()) {
            let a = build_octonion(Rationals, t).unwrap();
            let f = Rationals;
            let (x, y) = (to_elem(&a, x), to_elem(&a, y));
            let lhs = a.norm(&a.mul(&x, &y));
            prop_assert_eq!(lhs, f.mul(&a.norm(&x), &a.norm(&y)));
        }

        #[test]
        fn alternativity_on_random_elements(t in both(), x in arb_oct(), y in arb_oct()) {
            let a = build_octonion(Rationals, t).unwrap();
            let (x, y) = (to_elem(&a, x), to_elem(&a, y));
            prop_assert!(a.is_zero(&a.associator(&x, &x, &y)));
            prop_assert!(a.is_zero(&a.associator(&y, &x, &x)));
        }

        #[test]
        fn moufang_on_random_elements(t in both(), x in arb_oct(), y in arb_oct(), z in arb_oct()) {
            let a = build_octonion(Rationals, t).unwrap();
            let (x, y, z) = (to_elem(&a, x), to_elem(&a, y), to_elem(&a, z));
            prop_assert!(a.is_zero(&a.moufang_defect(&x, &y, &z)));
        }

        #[test]
        fn real_and_imag_decompose(t in both(), x in arb_oct()) {
            let a = build_octonion(Rationals, t).unwrap();
            let x = to_elem(&a, x);
            let mut rebuilt = a.imag_part(&x);
            rebuilt[0] = a.real_part(&x);
            prop_assert_eq!(rebuilt, x);
        }

        #[test]
        fn norm_is_the_expected_diagonal_form(t in both(), x in arb_oct()) {
            let a = build_octonion(Rationals, t).unwrap();
            let f = Rationals;
            let xe = to_elem(&a, x);
            let mut expect = BigRational::from_integer(0.into());
            for (k, &c) in x.iter().enumerate() {
                let sign = match t {
                    OctType::TypeI => 1,
                    OctType::TypeII => if k >= 4 { -1 } else { 1 },
                };
                expect = f.add(&expect, &f.from_i64(sign * c * c));
            }
            prop_assert_eq!(a.norm(&xe), expect);
        }
    }
}
