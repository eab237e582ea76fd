//! The derivation algebra of a structure-constant algebra, computed exactly
//! as the null space of the Leibniz linear system.
//!
//! For an algebra with constants `c_{ij}^k`, a linear map `D` (unknowns
//! `D_{lk}`, flattened row-major as `l*d + k`) is a derivation iff for every
//! basis pair (i, j) and every output coordinate m:
//!
//! ```text
//! sum_k c_{ij}^k D_{mk} - sum_l D_{li} c_{lj}^m - sum_l D_{lj} c_{il}^m = 0
//! ```
//!
//! Equations are generated in (i, j) lexicographic order with m ascending,
//! restricted to i <= j for commutative products and i < j for
//! anticommutative ones (the remaining pairs give the same equations), and
//! streamed straight into the eliminator. Every solution basis is
//! re-verified by a full Leibniz residual sweep over all ordered pairs, so
//! the solver output certifies the eliminator as well.

use crate::linalg::{self, EchelonBasis, Eliminator, SparseMatrix};
use crate::matalg::{StructureAlgebra, Symmetry};
use crate::scalar::Field;
use crate::{Error, Result};

/// A d x d matrix over the field, column j holding the coordinates of the
/// image of basis vector j.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<F: Field> {
    pub d: usize,
    /// Row-major entries: `D_{lk}` at `l*d + k`.
    entries: Vec<F::Elem>,
}

impl<F: Field> LinearMap<F> {
    pub fn zero(field: &F, d: usize) -> Self {
        LinearMap {
            d,
            entries: vec![field.zero(); d * d],
        }
    }

    pub fn from_flat(d: usize, entries: Vec<F::Elem>) -> Self {
        assert_eq!(entries.len(), d * d);
        LinearMap { d, entries }
    }

    pub fn identity(field: &F, d: usize) -> Self {
        let mut m = Self::zero(field, d);
        for i in 0..d {
            *m.get_mut(i, i) = field.one();
        }
        m
    }

    pub fn get(&self, l: usize, k: usize) -> &F::Elem {
        &self.entries[l * self.d + k]
    }

    pub fn get_mut(&mut self, l: usize, k: usize) -> &mut F::Elem {
        &mut self.entries[l * self.d + k]
    }

    pub fn flat(&self) -> &[F::Elem] {
        &self.entries
    }

    /// Image of a dense coordinate vector.
    pub fn apply(&self, field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.d);
        let mut out = vec![field.zero(); self.d];
        for (k, vk) in v.iter().enumerate() {
            if field.is_zero(vk) {
                continue;
            }
            for l in 0..self.d {
                let c = self.get(l, k);
                if !field.is_zero(c) {
                    let t = field.mul(c, vk);
                    field.add_assign(&mut out[l], &t);
                }
            }
        }
        out
    }

    /// Column j: coordinates of the image of basis vector j.
    pub fn column(&self, field: &F, j: usize) -> Vec<F::Elem> {
        let _ = field;
        (0..self.d).map(|l| self.get(l, j).clone()).collect()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.entries.iter().all(|e| field.is_zero(e))
    }

    /// Matrix product, for brackets.
    pub fn compose(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut out = Self::zero(field, d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        let t = field.mul(a, b);
                        field.add_assign(out.get_mut(i, j), &t);
                    }
                }
            }
        }
        out
    }
}

/// Commutator `D1 D2 - D2 D1`.
pub fn bracket<F: Field>(field: &F, d1: &LinearMap<F>, d2: &LinearMap<F>) -> Result<LinearMap<F>> {
    if d1.d != d2.d {
        return Err(Error::DimensionMismatch {
            expected: d1.d,
            got: d2.d,
        });
    }
    let ab = d1.compose(field, d2);
    let ba = d2.compose(field, d1);
    let mut out = ab;
    for (x, y) in out.entries.iter_mut().zip(&ba.entries) {
        *x = field.sub(x, y);
    }
    Ok(out)
}

/// Which (i, j) pairs to generate equations for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRange {
    /// i <= j for commutative products, i < j for anticommutative ones,
    /// everything otherwise.
    Canonical,
    /// All ordered pairs regardless of symmetry.
    AllOrdered,
}

/// Streams the Leibniz equations, one sparse row per (i, j, m) with any
/// nonzero coefficient.
pub fn leibniz_rows<F: Field>(
    alg: &StructureAlgebra<F>,
    range: PairRange,
    mut emit: impl FnMut(Vec<(u32, F::Elem)>),
) {
    let f = alg.field().clone();
    let d = alg.dim();
    // by_right[j*d + m]: (l, c_{lj}^m); by_left[i*d + m]: (l, c_{il}^m)
    let mut by_right: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); d * d];
    let mut by_left: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); d * d];
    for a in 0..d {
        for b in 0..d {
            for (m, c) in alg.product(a, b) {
                by_right[b * d + *m as usize].push((a as u32, c.clone()));
                by_left[a * d + *m as usize].push((b as u32, c.clone()));
            }
        }
    }
    let mut row: std::collections::BTreeMap<u32, F::Elem> = std::collections::BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            let skip = match (range, alg.symmetry()) {
                (PairRange::AllOrdered, _) | (_, Symmetry::None) => false,
                (PairRange::Canonical, Symmetry::Commutative) => j < i,
                (PairRange::Canonical, Symmetry::Anticommutative) => j <= i,
            };
            if skip {
                continue;
            }
            let prod = alg.product(i, j);
            for m in 0..d {
                row.clear();
                for (k, c) in prod {
                    let col = (m * d + *k as usize) as u32;
                    let slot = row.entry(col).or_insert_with(|| f.zero());
                    f.add_assign(slot, c);
                }
                for (l, c) in &by_right[j * d + m] {
                    let col = *l * d as u32 + i as u32;
                    let slot = row.entry(col).or_insert_with(|| f.zero());
                    *slot = f.sub(slot, c);
                }
                for (l, c) in &by_left[i * d + m] {
                    let col = *l * d as u32 + j as u32;
                    let slot = row.entry(col).or_insert_with(|| f.zero());
                    *slot = f.sub(slot, c);
                }
                let entries: Vec<(u32, F::Elem)> = row
                    .iter()
                    .filter(|(_, v)| !f.is_zero(v))
                    .map(|(c, v)| (*c, v.clone()))
                    .collect();
                if !entries.is_empty() {
                    emit(entries);
                }
            }
        }
    }
}

/// The Leibniz system as a materialized sparse matrix (d^2 unknowns).
pub fn leibniz_system<F: Field>(alg: &StructureAlgebra<F>, range: PairRange) -> SparseMatrix<F> {
    let d = alg.dim();
    let mut entries = Vec::new();
    let mut r = 0u32;
    leibniz_rows(alg, range, |row| {
        for (c, v) in row {
            entries.push((r, c, v));
        }
        r += 1;
    });
    SparseMatrix::from_entries(alg.field(), r as usize, d * d, entries)
        .expect("leibniz rows are well-formed")
}

/// The derivation algebra of a structure algebra: an echelonized basis of
/// linear maps, each certified by an exact Leibniz residual sweep over all
/// ordered basis pairs.
#[derive(Debug, Clone)]
pub struct DerivationSpace<F: Field> {
    pub algebra: String,
    pub dim: usize,
    pub basis: Vec<LinearMap<F>>,
    /// The same basis as vectors over the d^2 row-major flattened
    /// coordinates.
    pub echelon: EchelonBasis<F>,
}

pub fn solve_derivations<F: Field>(alg: &StructureAlgebra<F>) -> DerivationSpace<F> {
    solve_derivations_with(alg, PairRange::Canonical)
}

pub fn solve_derivations_with<F: Field>(
    alg: &StructureAlgebra<F>,
    range: PairRange,
) -> DerivationSpace<F> {
    let f = alg.field();
    let d = alg.dim();
    let mut elim = Eliminator::new(f.clone(), d * d);
    leibniz_rows(alg, range, |row| {
        elim.push_row(row);
    });
    let rref = elim.finish();
    let echelon = linalg::null_space_of_rref(f, d * d, &rref);
    let basis: Vec<LinearMap<F>> = echelon
        .to_dense(f)
        .into_iter()
        .map(|flat| LinearMap::from_flat(d, flat))
        .collect();
    for map in &basis {
        assert!(
            is_derivation(alg, map),
            "solver returned a non-derivation for {}",
            alg.name()
        );
    }
    DerivationSpace {
        algebra: alg.name().to_string(),
        dim: basis.len(),
        basis,
        echelon,
    }
}

/// Exact Leibniz check `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)` over all
/// ordered basis pairs.
pub fn is_derivation<F: Field>(alg: &StructureAlgebra<F>, map: &LinearMap<F>) -> bool {
    let f = alg.field();
    let d = alg.dim();
    if map.d != d {
        return false;
    }
    let columns: Vec<Vec<F::Elem>> = (0..d).map(|j| map.column(f, j)).collect();
    for i in 0..d {
        for j in 0..d {
            // D(b_i b_j)
            let mut lhs = vec![f.zero(); d];
            for (k, c) in alg.product(i, j) {
                for l in 0..d {
                    let e = &columns[*k as usize][l];
                    if !f.is_zero(e) {
                        let t = f.mul(c, e);
                        f.add_assign(&mut lhs[l], &t);
                    }
                }
            }
            // D(b_i) b_j + b_i D(b_j)
            let mut rhs = vec![f.zero(); d];
            for (l, e) in columns[i].iter().enumerate() {
                if f.is_zero(e) {
                    continue;
                }
                for (m, c) in alg.product(l, j) {
                    let t = f.mul(e, c);
                    f.add_assign(&mut rhs[*m as usize], &t);
                }
            }
            for (l, e) in columns[j].iter().enumerate() {
                if f.is_zero(e) {
                    continue;
                }
                for (m, c) in alg.product(i, l) {
                    let t = f.mul(e, c);
                    f.add_assign(&mut rhs[*m as usize], &t);
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Lie-algebra sanity data for a derivation space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieReport {
    /// Every pairwise bracket stays in the span.
    pub closed: bool,
    /// Dimension of `{X in span : [X, D] = 0 for all D in the basis}`.
    pub center_dim: usize,
    /// Dimension of the span of all pairwise brackets.
    pub derived_dim: usize,
}

pub fn lie_checks<F: Field>(field: &F, space: &DerivationSpace<F>) -> LieReport {
    let k = space.dim;
    if k == 0 {
        return LieReport {
            closed: true,
            center_dim: 0,
            derived_dim: 0,
        };
    }
    let d2 = space.echelon.cols;
    // brackets for i < j (the rest follow by antisymmetry)
    let mut brackets: Vec<Vec<F::Elem>> = Vec::new();
    let mut closed = true;
    for i in 0..k {
        for j in (i + 1)..k {
            let b = bracket(field, &space.basis[i], &space.basis[j]).expect("same dimension");
            let flat = b.flat().to_vec();
            if !space.echelon.contains(field, &flat) {
                closed = false;
            }
            brackets.push(flat);
        }
    }
    // derived span
    let mut elim = Eliminator::new(field.clone(), d2);
    for b in &brackets {
        let sparse: Vec<(u32, F::Elem)> = b
            .iter()
            .enumerate()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|(c, v)| (c as u32, v.clone()))
            .collect();
        elim.push_row(sparse);
    }
    let derived_dim = elim.rank();
    // center: coefficients x with sum_i x_i [D_i, D_j] = 0 for all j
    let pair_index = |i: usize, j: usize| -> usize {
        debug_assert!(i < j);
        i * k - i * (i + 1) / 2 + (j - i - 1)
    };
    let mut elim = Eliminator::new(field.clone(), k);
    for j in 0..k {
        for p in 0..d2 {
            let mut row: Vec<(u32, F::Elem)> = Vec::new();
            for i in 0..k {
                if i == j {
                    continue;
                }
                let v = if i < j {
                    brackets[pair_index(i, j)][p].clone()
                } else {
                    field.neg(&brackets[pair_index(j, i)][p])
                };
                if !field.is_zero(&v) {
                    row.push((i as u32, v));
                }
            }
            if !row.is_empty() {
                elim.push_row(row);
            }
        }
    }
    let center_dim = k - elim.rank();
    LieReport {
        closed,
        center_dim,
        derived_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matalg::Symmetry;
    use crate::octonion::{build_octonion, OctType};
    use crate::scalar::{Field, PrimeField, Rationals};

    /// The one-dimensional algebra b*b = 2b.
    fn one_dim_idempotent() -> StructureAlgebra<Rationals> {
        let f = Rationals;
        StructureAlgebra::from_products(
            f,
            1,
            vec!["b".into()],
            vec![vec![(0, Rationals.from_i64(2))]],
            Symmetry::Commutative,
            "F".into(),
        )
        .unwrap()
    }

    #[test]
    fn idempotent_line_has_no_derivations() {
        let alg = one_dim_idempotent();
        let ders = solve_derivations(&alg);
        assert_eq!(ders.dim, 0);
    }

    #[test]
    fn zero_product_algebra_has_all_maps() {
        let f = Rationals;
        let alg = StructureAlgebra::from_products(
            f,
            3,
            vec!["a".into(), "b".into(), "c".into()],
            vec![Vec::new(); 9],
            Symmetry::Commutative,
            "null3".into(),
        )
        .unwrap();
        // the system is empty, so every map derives the zero product
        let sys = leibniz_system(&alg, PairRange::Canonical);
        assert_eq!(sys.rows, 0);
        assert_eq!(solve_derivations(&alg).dim, 9);
    }

    /// Dense elimination oracle for tiny systems, written independently of
    /// the sparse eliminator.
    fn dense_null_dim(rows: Vec<Vec<i64>>, cols: usize) -> usize {
        let mut m: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as f64).collect())
            .collect();
        let mut rank = 0;
        for c in 0..cols {
            let piv = (rank..m.len()).find(|&r| m[r][c].abs() > 1e-9);
            if let Some(p) = piv {
                m.swap(rank, p);
                let lead = m[rank][c];
                for x in m[rank].iter_mut() {
                    *x /= lead;
                }
                for r in 0..m.len() {
                    if r != rank && m[r][c].abs() > 1e-9 {
                        let f = m[r][c];
                        for cc in 0..cols {
                            m[r][cc] -= f * m[rank][cc];
                        }
                    }
                }
                rank += 1;
            }
        }
        cols - rank
    }

    /// Two-dimensional algebra with a central unit u and x with x^2 = 0:
    /// brute-force enumeration of the 4-unknown system pins the answer.
    #[test]
    fn central_unit_algebra_matches_hand_elimination() {
        let f = Rationals;
        let one = f.one();
        // u*u = u, u*x = x*u = x, x*x = 0
        let products = vec![
            vec![(0u32, one.clone())], // u*u
            vec![(1u32, one.clone())], // u*x
            vec![(1u32, one.clone())], // x*u
            Vec::new(),                // x*x
        ];
        let alg = StructureAlgebra::from_products(
            f,
            2,
            vec!["u".into(), "x".into()],
            products,
            Symmetry::Commutative,
            "central-unit".into(),
        )
        .unwrap();

        // independent oracle: materialize the system over all ordered pairs
        // by explicit Leibniz expansion on the four unknowns
        // [d00, d01, d10, d11], row per (i, j, m)
        let c = |i: usize, j: usize, k: usize| -> i64 {
            match (i, j, k) {
                (0, 0, 0) => 1,
                (0, 1, 1) | (1, 0, 1) => 1,
                _ => 0,
            }
        };
        let mut rows = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for m in 0..2 {
                    let mut row = vec![0i64; 4];
                    for k in 0..2 {
                        row[m * 2 + k] += c(i, j, k);
                    }
                    for l in 0..2 {
                        row[l * 2 + i] -= c(l, j, m);
                        row[l * 2 + j] -= c(i, l, m);
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let oracle_dim = dense_null_dim(rows, 4);
        assert_eq!(oracle_dim, 1);

        let ders = solve_derivations(&alg);
        assert_eq!(ders.dim, oracle_dim);
        // the surviving derivation is E_xx: kills u, scales x
        let map = &ders.basis[0];
        let f = Rationals;
        assert_eq!(map.flat(), &[f.zero(), f.zero(), f.zero(), f.one()][..]);
    }

    #[test]
    fn bracket_examples() {
        let f = Rationals;
        let mut e12 = LinearMap::zero(&f, 2);
        *e12.get_mut(0, 1) = f.one();
        let mut e21 = LinearMap::zero(&f, 2);
        *e21.get_mut(1, 0) = f.one();
        let id = LinearMap::identity(&f, 2);

        assert!(bracket(&f, &e12, &e12).unwrap().is_zero(&f));
        assert!(bracket(&f, &e12, &id).unwrap().is_zero(&f));
        let b = bracket(&f, &e12, &e21).unwrap();
        let mut expect = LinearMap::zero(&f, 2);
        *expect.get_mut(0, 0) = f.one();
        *expect.get_mut(1, 1) = f.from_i64(-1);
        assert_eq!(b, expect);

        let e3 = LinearMap::zero(&f, 3);
        assert!(bracket(&f, &e12, &e3).is_err());
    }

    #[test]
    fn octonion_derivations_have_dimension_fourteen() {
        for t in [OctType::TypeI, OctType::TypeII] {
            let oct = build_octonion(Rationals, t).unwrap();
            let ders = solve_derivations(&oct.to_structure_algebra());
            assert_eq!(ders.dim, 14, "type {t}");
        }
    }

    #[test]
    fn symmetry_restricted_pairs_give_the_same_space() {
        let p = PrimeField::new(101).unwrap();
        for t in [OctType::TypeI, OctType::TypeII] {
            let oct = build_octonion(p, t).unwrap();
            for (kind, n) in [
                (crate::matalg::SpaceKind::HermitianAnticommutator, 2),
                (crate::matalg::SpaceKind::HermitianAnticommutator, 3),
                (crate::matalg::SpaceKind::AntihermitianCommutator, 2),
            ] {
                let spec = crate::matalg::MatrixSpaceSpec::new(kind, n, t).unwrap();
                let alg = crate::matalg::build_algebra(&oct, spec).unwrap();
                let a = solve_derivations_with(&alg, PairRange::Canonical);
                let b = solve_derivations_with(&alg, PairRange::AllOrdered);
                assert_eq!(a.echelon, b.echelon, "{}", spec.display_name());
            }
        }
    }

    #[test]
    fn lie_checks_on_zero_space() {
        let f = Rationals;
        let space = DerivationSpace {
            algebra: "trivial".into(),
            dim: 0,
            basis: Vec::new(),
            echelon: EchelonBasis::empty(1),
        };
        let r = lie_checks(&f, &space);
        assert_eq!(
            r,
            LieReport {
                closed: true,
                center_dim: 0,
                derived_dim: 0
            }
        );
    }

    #[test]
    fn g2_is_simple_shaped() {
        let oct = build_octonion(PrimeField::new(101).unwrap(), OctType::TypeI).unwrap();
        let ders = solve_derivations(&oct.to_structure_algebra());
        let r = lie_checks(&PrimeField::new(101).unwrap(), &ders);
        assert!(r.closed);
        assert_eq!(r.center_dim, 0);
        assert_eq!(r.derived_dim, 14);
    }
}
