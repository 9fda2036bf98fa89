//! Exact integer arithmetic on the rank-10 Picard lattice of the blown-up
//! quadric: intersection form, root bases, reflections, induced maps of the
//! dynamics, and the basis changes between the two surface presentations.
//!
//! Coordinate convention, fixed once for both bases: index 0 and 1 are the
//! two line classes (Hx, Hy resp. Hf, Hg), indices 2..=9 are the eight point
//! classes (F1..F8 resp. E1..E8). Every table below is transcribed in this
//! order.

use crate::report::{CheckItem, VerificationReport};
use thiserror::Error;

pub const RANK: usize = 10;

/// Which named basis a vector of coordinates refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Recurrence surface chart: (Hx, Hy, F1..F8).
    XY,
    /// Standard surface chart: (Hf, Hg, E1..E8).
    FG,
}

impl Basis {
    pub fn coord_names(self) -> [&'static str; RANK] {
        match self {
            Basis::XY => ["Hx", "Hy", "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8"],
            Basis::FG => ["Hf", "Hg", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"],
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("basis mismatch: expected {expected:?}, found {found:?}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("class has self-intersection {self_intersection}, not -2; cannot reflect in it")]
    InvalidRoot { self_intersection: i64 },
    #[error("cannot compose an empty word")]
    EmptyWord,
}

/// An element of the Picard lattice, tagged with the basis its coordinates
/// are written in. Equality is component-wise with matching tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coeffs: [i64; RANK],
    pub basis: Basis,
}

impl DivisorClass {
    pub fn new(basis: Basis, coeffs: [i64; RANK]) -> Self {
        DivisorClass { coeffs, basis }
    }

    pub fn zero(basis: Basis) -> Self {
        DivisorClass::new(basis, [0; RANK])
    }

    /// The j-th basis generator (0, 1 are the line classes; 2..=9 the point classes).
    pub fn generator(basis: Basis, j: usize) -> Self {
        let mut c = [0i64; RANK];
        c[j] = 1;
        DivisorClass::new(basis, c)
    }

    /// Convenience builder: `h1*H1 + h2*H2 + sum c_i * (point class i)`,
    /// point classes numbered 1..=8.
    pub fn build(basis: Basis, h1: i64, h2: i64, points: &[(usize, i64)]) -> Self {
        let mut c = [0i64; RANK];
        c[0] = h1;
        c[1] = h2;
        for &(i, v) in points {
            assert!((1..=8).contains(&i), "point class index out of range");
            c[1 + i] += v;
        }
        DivisorClass::new(basis, c)
    }

    pub fn add(&self, rhs: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        check_basis(self.basis, rhs.basis)?;
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        Ok(DivisorClass::new(self.basis, c))
    }

    pub fn sub(&self, rhs: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        check_basis(self.basis, rhs.basis)?;
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        Ok(DivisorClass::new(self.basis, c))
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        let mut c = self.coeffs;
        for a in c.iter_mut() {
            *a *= k;
        }
        DivisorClass::new(self.basis, c)
    }

    pub fn self_intersection(&self) -> i64 {
        intersect_unchecked(&self.coeffs, &self.coeffs)
    }

    /// Render as a signed combination of named generators, e.g. `Hx + Hy - F1 - F3`.
    pub fn display(&self) -> String {
        let names = self.basis.coord_names();
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let a = c.abs();
            if a != 1 {
                out.push_str(&a.to_string());
            }
            out.push_str(names[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn check_basis(expected: Basis, found: Basis) -> Result<(), LatticeError> {
    if expected != found {
        return Err(LatticeError::BasisMismatch { expected, found });
    }
    Ok(())
}

fn intersect_unchecked(a: &[i64; RANK], b: &[i64; RANK]) -> i64 {
    // Gram matrix: H1•H2 = 1, H•H = 0, point classes mutually -delta_ij.
    let mut v = a[0] * b[1] + a[1] * b[0];
    for i in 2..RANK {
        v -= a[i] * b[i];
    }
    v
}

/// Intersection pairing. Errors on mismatched basis tags.
pub fn intersect(c1: &DivisorClass, c2: &DivisorClass) -> Result<i64, LatticeError> {
    check_basis(c1.basis, c2.basis)?;
    Ok(intersect_unchecked(&c1.coeffs, &c2.coeffs))
}

/// Reflection of `c` through a -2 class: c + (c•alpha) alpha.
pub fn reflect(alpha: &DivisorClass, c: &DivisorClass) -> Result<DivisorClass, LatticeError> {
    let sq = alpha.self_intersection();
    if sq != -2 {
        return Err(LatticeError::InvalidRoot { self_intersection: sq });
    }
    let ip = intersect(c, alpha)?;
    c.add(&alpha.scale(ip))
}

/// The anticanonical class 2 H1 + 2 H2 - sum of all point classes.
pub fn anticanonical(basis: Basis) -> DivisorClass {
    let mut c = [-1i64; RANK];
    c[0] = 2;
    c[1] = 2;
    DivisorClass::new(basis, c)
}

/// The anticanonical class together with its decomposition check: the
/// multiplicity-weighted sum of the surface roots must reproduce it.
pub fn anticanonical_decomposition(basis: Basis) -> (DivisorClass, bool) {
    let k = anticanonical(basis);
    let roots = match basis {
        Basis::FG => standard_roots(),
        Basis::XY => recurrence_roots(),
    };
    let mut sum = DivisorClass::zero(basis);
    for (d, m) in roots.surface_roots.iter().zip(ANTICANONICAL_MULTIPLICITIES) {
        sum = sum.add(&d.scale(m)).expect("same basis");
    }
    let ok = sum == k;
    (k, ok)
}

/// Integer 10x10 matrix acting on Picard-lattice coordinates.
///
/// Columns are the images of the source-basis generators expressed in the
/// target basis, so `apply` is plain matrix-vector multiplication on
/// coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub matrix: [[i64; RANK]; RANK],
    pub source: Basis,
    pub target: Basis,
}

/// Composition order for words of maps (and of birational generators).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApplyOrder {
    /// The rightmost factor of the word acts first (function composition).
    RightmostFirst,
    /// The leftmost factor acts first.
    LeftmostFirst,
}

impl LatticeMap {
    pub fn identity(basis: Basis) -> Self {
        let mut m = [[0i64; RANK]; RANK];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        LatticeMap { matrix: m, source: basis, target: basis }
    }

    pub fn from_columns(source: Basis, target: Basis, cols: [DivisorClass; RANK]) -> Self {
        let mut m = [[0i64; RANK]; RANK];
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.basis, target, "column not expressed in target basis");
            for (row, &coeff) in m.iter_mut().zip(col.coeffs.iter()) {
                row[j] = coeff;
            }
        }
        LatticeMap { matrix: m, source, target }
    }

    pub fn apply(&self, c: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        check_basis(self.source, c.basis)?;
        let mut out = [0i64; RANK];
        for (i, row) in self.matrix.iter().enumerate() {
            out[i] = row.iter().zip(c.coeffs.iter()).map(|(m, v)| m * v).sum();
        }
        Ok(DivisorClass::new(self.target, out))
    }

    /// self ∘ rhs (rhs acts first).
    pub fn compose(&self, rhs: &LatticeMap) -> Result<LatticeMap, LatticeError> {
        check_basis(self.source, rhs.target)?;
        let mut m = [[0i64; RANK]; RANK];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..RANK).map(|k| self.matrix[i][k] * rhs.matrix[k][j]).sum();
            }
        }
        Ok(LatticeMap { matrix: m, source: rhs.source, target: self.target })
    }

    /// Whether the map preserves the intersection form on all generator pairs.
    pub fn is_isometry(&self) -> bool {
        let cols: Vec<[i64; RANK]> = (0..RANK)
            .map(|j| {
                let mut v = [0i64; RANK];
                for (val, row) in v.iter_mut().zip(self.matrix.iter()) {
                    *val = row[j];
                }
                v
            })
            .collect();
        for j in 0..RANK {
            for k in j..RANK {
                let mut e_j = [0i64; RANK];
                let mut e_k = [0i64; RANK];
                e_j[j] = 1;
                e_k[k] = 1;
                if intersect_unchecked(&cols[j], &cols[k]) != intersect_unchecked(&e_j, &e_k) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == LatticeMap::identity(self.source)
    }

    pub fn fixes(&self, c: &DivisorClass) -> bool {
        matches!(self.apply(c), Ok(img) if img == *c)
    }
}

/// Matrix form of the reflection in a -2 class.
pub fn reflection_map(alpha: &DivisorClass) -> Result<LatticeMap, LatticeError> {
    let sq = alpha.self_intersection();
    if sq != -2 {
        return Err(LatticeError::InvalidRoot { self_intersection: sq });
    }
    let cols: Vec<DivisorClass> = (0..RANK)
        .map(|j| reflect(alpha, &DivisorClass::generator(alpha.basis, j)).expect("valid root"))
        .collect();
    Ok(LatticeMap::from_columns(
        alpha.basis,
        alpha.basis,
        cols.try_into().expect("rank-many columns"),
    ))
}

/// Compose a word of maps in the declared order.
pub fn compose_word(maps: &[LatticeMap], order: ApplyOrder) -> Result<LatticeMap, LatticeError> {
    if maps.is_empty() {
        return Err(LatticeError::EmptyWord);
    }
    match order {
        ApplyOrder::RightmostFirst => {
            let mut it = maps.iter();
            let mut acc = it.next().expect("nonempty").clone();
            for m in it {
                acc = acc.compose(m)?;
            }
            Ok(acc)
        }
        ApplyOrder::LeftmostFirst => {
            let rev: Vec<LatticeMap> = maps.iter().rev().cloned().collect();
            compose_word(&rev, ApplyOrder::RightmostFirst)
        }
    }
}

/// Surface and symmetry root bases of one presentation, with labels.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub basis: Basis,
    pub surface_roots: [DivisorClass; 6],
    pub symmetry_roots: [DivisorClass; 4],
}

/// Root data of the standard surface: d0..d5 span the D5 affine diagram,
/// a0..a3 the A3 affine square.
pub fn standard_roots() -> RootSystemData {
    let b = Basis::FG;
    RootSystemData {
        basis: b,
        surface_roots: [
            DivisorClass::build(b, 0, 0, &[(1, 1), (2, -1)]),
            DivisorClass::build(b, 0, 0, &[(3, 1), (4, -1)]),
            DivisorClass::build(b, 1, 0, &[(1, -1), (3, -1)]),
            DivisorClass::build(b, 0, 1, &[(5, -1), (7, -1)]),
            DivisorClass::build(b, 0, 0, &[(5, 1), (6, -1)]),
            DivisorClass::build(b, 0, 0, &[(7, 1), (8, -1)]),
        ],
        symmetry_roots: [
            DivisorClass::build(b, 0, 1, &[(1, -1), (2, -1)]),
            DivisorClass::build(b, 1, 0, &[(5, -1), (6, -1)]),
            DivisorClass::build(b, 0, 1, &[(3, -1), (4, -1)]),
            DivisorClass::build(b, 1, 0, &[(7, -1), (8, -1)]),
        ],
    }
}

/// Root data of the recurrence surface, with the final symmetry root basis
/// (the one under which the dynamic matches the standard equation).
pub fn recurrence_roots() -> RootSystemData {
    let b = Basis::XY;
    RootSystemData {
        basis: b,
        surface_roots: [
            DivisorClass::build(b, 1, 0, &[(1, -1), (2, -1)]),
            DivisorClass::build(b, 1, 0, &[(3, -1), (4, -1)]),
            DivisorClass::build(b, 0, 1, &[(5, -1), (6, -1)]),
            DivisorClass::build(b, 0, 0, &[(6, 1), (7, -1)]),
            DivisorClass::build(b, 0, 0, &[(5, 1), (6, -1)]),
            DivisorClass::build(b, 0, 0, &[(7, 1), (8, -1)]),
        ],
        symmetry_roots: [
            DivisorClass::build(b, 0, 1, &[(2, -1), (3, -1)]),
            DivisorClass::build(b, 0, -1, &[(1, 1), (3, 1)]),
            DivisorClass::build(b, 0, 1, &[(1, -1), (4, -1)]),
            DivisorClass::build(b, 2, 1, &[(1, -1), (3, -1), (5, -1), (6, -1), (7, -1), (8, -1)]),
        ],
    }
}

/// The symmetry root basis obtained from the preliminary basis
/// identification, before the w1 adjustment.
pub fn preliminary_symmetry_roots() -> [DivisorClass; 4] {
    let b = Basis::XY;
    [
        DivisorClass::build(b, 0, 0, &[(1, 1), (2, -1)]),
        DivisorClass::build(b, 0, 1, &[(1, -1), (3, -1)]),
        DivisorClass::build(b, 0, 0, &[(3, 1), (4, -1)]),
        DivisorClass::build(b, 2, 1, &[(1, -1), (3, -1), (5, -1), (6, -1), (7, -1), (8, -1)]),
    ]
}

/// Multiplicities of the surface roots in the anticanonical decomposition:
/// -K = d0 + d1 + 2 d2 + 2 d3 + d4 + d5.
pub const ANTICANONICAL_MULTIPLICITIES: [i64; 6] = [1, 1, 2, 2, 1, 1];

/// Reflection w_j in the j-th standard symmetry root (FG basis).
pub fn weyl_generator(j: usize) -> LatticeMap {
    let roots = standard_roots();
    reflection_map(&roots.symmetry_roots[j]).expect("symmetry roots are -2 classes")
}

/// Diagram automorphism sigma_j (j = 1, 2, 3) realized as a composition of
/// reflections in -2 classes of the FG basis.
pub fn automorphism(j: usize) -> LatticeMap {
    let b = Basis::FG;
    let e = |i: usize, k: usize| DivisorClass::build(b, 0, 0, &[(i, 1), (k, -1)]);
    let refl = |c: &DivisorClass| reflection_map(c).expect("-2 class");
    let maps: Vec<LatticeMap> = match j {
        1 => vec![
            refl(&e(1, 7)),
            refl(&e(2, 8)),
            refl(&e(3, 5)),
            refl(&e(4, 6)),
            refl(&DivisorClass::build(b, 1, -1, &[])),
        ],
        2 => vec![refl(&e(1, 3)), refl(&e(2, 4))],
        3 => vec![refl(&e(5, 7)), refl(&e(6, 8))],
        _ => panic!("automorphism index must be 1, 2 or 3"),
    };
    compose_word(&maps, ApplyOrder::RightmostFirst).expect("nonempty word")
}

/// Generator names of the two translation words, leftmost factor first.
pub const STANDARD_WORD: [&str; 6] = ["s3", "s2", "w3", "w1", "w2", "w0"];
pub const RECURRENCE_WORD: [&str; 6] = ["s3", "s2", "w1", "w2", "w0", "w1"];

fn named_generator(name: &str) -> LatticeMap {
    match name {
        "w0" => weyl_generator(0),
        "w1" => weyl_generator(1),
        "w2" => weyl_generator(2),
        "w3" => weyl_generator(3),
        "s1" => automorphism(1),
        "s2" => automorphism(2),
        "s3" => automorphism(3),
        _ => panic!("unknown generator {name}"),
    }
}

fn word_map(names: &[&str], order: ApplyOrder) -> LatticeMap {
    let maps: Vec<LatticeMap> = names.iter().map(|n| named_generator(n)).collect();
    compose_word(&maps, order).expect("nonempty word")
}

/// Lattice realization of the standard translation word s3 s2 w3 w1 w2 w0.
pub fn standard_translation_map() -> LatticeMap {
    word_map(&STANDARD_WORD, ApplyOrder::RightmostFirst)
}

/// Lattice realization of the recurrence translation word s3 s2 w1 w2 w0 w1.
pub fn recurrence_translation_map() -> LatticeMap {
    word_map(&RECURRENCE_WORD, ApplyOrder::RightmostFirst)
}

/// Induced action of the forward recurrence map on the XY Picard lattice.
pub fn recurrence_lattice_action() -> LatticeMap {
    let b = Basis::XY;
    let all = [(5usize, -1i64), (6, -1), (7, -1), (8, -1)];
    let with5678 = |h1: i64, h2: i64, extra: &[(usize, i64)]| {
        let mut pts: Vec<(usize, i64)> = all.to_vec();
        pts.extend_from_slice(extra);
        DivisorClass::build(b, h1, h2, &pts)
    };
    let cols = [
        with5678(5, 2, &[(1, -1), (2, -1), (3, -1), (4, -1), (5, -1), (6, -1), (7, -1), (8, -1)]),
        with5678(2, 1, &[]),
        with5678(2, 1, &[(2, -1)]),
        with5678(2, 1, &[(1, -1)]),
        with5678(2, 1, &[(4, -1)]),
        with5678(2, 1, &[(3, -1)]),
        DivisorClass::build(b, 1, 0, &[(8, -1)]),
        DivisorClass::build(b, 1, 0, &[(7, -1)]),
        DivisorClass::build(b, 1, 0, &[(6, -1)]),
        DivisorClass::build(b, 1, 0, &[(5, -1)]),
    ];
    LatticeMap::from_columns(b, b, cols)
}

/// Final basis change between the two presentations, as the mutually inverse
/// pair (XY -> FG, FG -> XY).
pub fn basis_change_final() -> (LatticeMap, LatticeMap) {
    let fg = Basis::FG;
    let xy = Basis::XY;
    // Images of Hx, Hy, F1..F8 in the FG basis.
    let to_fg_cols = [
        DivisorClass::build(fg, 1, 1, &[(5, -1), (6, -1)]),
        DivisorClass::build(fg, 1, 2, &[(1, -1), (3, -1), (5, -1), (6, -1)]),
        DivisorClass::build(fg, 1, 1, &[(1, -1), (5, -1), (6, -1)]),
        DivisorClass::build(fg, 0, 0, &[(2, 1)]),
        DivisorClass::build(fg, 1, 1, &[(3, -1), (5, -1), (6, -1)]),
        DivisorClass::build(fg, 0, 0, &[(4, 1)]),
        DivisorClass::build(fg, 0, 1, &[(6, -1)]),
        DivisorClass::build(fg, 0, 1, &[(5, -1)]),
        DivisorClass::build(fg, 0, 0, &[(7, 1)]),
        DivisorClass::build(fg, 0, 0, &[(8, 1)]),
    ];
    // Images of Hf, Hg, E1..E8 in the XY basis.
    let to_xy_cols = [
        DivisorClass::build(xy, 2, 1, &[(1, -1), (3, -1), (5, -1), (6, -1)]),
        DivisorClass::build(xy, 1, 1, &[(1, -1), (3, -1)]),
        DivisorClass::build(xy, 1, 0, &[(1, -1)]),
        DivisorClass::build(xy, 0, 0, &[(2, 1)]),
        DivisorClass::build(xy, 1, 0, &[(3, -1)]),
        DivisorClass::build(xy, 0, 0, &[(4, 1)]),
        DivisorClass::build(xy, 1, 1, &[(1, -1), (3, -1), (6, -1)]),
        DivisorClass::build(xy, 1, 1, &[(1, -1), (3, -1), (5, -1)]),
        DivisorClass::build(xy, 0, 0, &[(7, 1)]),
        DivisorClass::build(xy, 0, 0, &[(8, 1)]),
    ];
    (
        LatticeMap::from_columns(xy, fg, to_fg_cols),
        LatticeMap::from_columns(fg, xy, to_xy_cols),
    )
}

/// Preliminary basis change (before the w1 adjustment), as the pair
/// (XY -> FG, FG -> XY).
pub fn basis_change_preliminary() -> (LatticeMap, LatticeMap) {
    let xy = Basis::XY;
    // Images of Hf, Hg, E1..E8 in the XY basis.
    let to_xy_cols = [
        DivisorClass::build(xy, 2, 1, &[(1, -1), (3, -1), (5, -1), (6, -1)]),
        DivisorClass::build(xy, 1, 0, &[]),
        DivisorClass::build(xy, 1, 0, &[(1, -1)]),
        DivisorClass::build(xy, 0, 0, &[(2, 1)]),
        DivisorClass::build(xy, 1, 0, &[(3, -1)]),
        DivisorClass::build(xy, 0, 0, &[(4, 1)]),
        DivisorClass::build(xy, 1, 0, &[(6, -1)]),
        DivisorClass::build(xy, 1, 0, &[(5, -1)]),
        DivisorClass::build(xy, 0, 0, &[(7, 1)]),
        DivisorClass::build(xy, 0, 0, &[(8, 1)]),
    ];
    let fg_to_xy = LatticeMap::from_columns(Basis::FG, xy, to_xy_cols);
    // The table is unimodular over Z; invert by solving columns exactly.
    let xy_to_fg = invert_unimodular(&fg_to_xy);
    (xy_to_fg, fg_to_xy)
}

/// Exact inverse of an integer matrix with determinant ±1.
#[allow(clippy::needless_range_loop)]
fn invert_unimodular(map: &LatticeMap) -> LatticeMap {
    let n = RANK;
    // Fraction-free Gauss-Jordan on an i128 augmented matrix.
    let mut a = [[0i128; 2 * RANK]; RANK];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = map.matrix[i][j] as i128;
        }
        a[i][n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0).expect("singular matrix");
        a.swap(col, pivot);
        // scale pivot row to make the pivot ±1-free via exact elimination
        for r in 0..n {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let (p, q) = (a[col][col], a[r][col]);
            for c in 0..2 * n {
                a[r][c] = a[r][c] * p - a[col][c] * q;
            }
            // keep entries small: divide the row by its gcd
            let mut g: i128 = 0;
            for c in 0..2 * n {
                g = gcd_i128(g, a[r][c]);
            }
            if g > 1 {
                for c in 0..2 * n {
                    a[r][c] /= g;
                }
            }
        }
    }
    let mut m = [[0i64; RANK]; RANK];
    for i in 0..n {
        let p = a[i][i];
        assert!(p != 0);
        for j in 0..n {
            let v = a[i][n + j];
            assert_eq!(v % p, 0, "inverse is not integral");
            m[i][j] = (v / p) as i64;
        }
    }
    LatticeMap { matrix: m, source: map.target, target: map.source }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// If `map` shifts every given root by an integer multiple of delta,
/// return those multiples.
pub fn translation_vector(map: &LatticeMap, roots: &[DivisorClass]) -> Option<Vec<i64>> {
    let delta = anticanonical(map.source);
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let img = map.apply(r).ok()?;
        let diff = img.sub(r).ok()?;
        // diff must be k * delta; read k off the first nonzero delta coord
        let k = diff.coeffs[0] / delta.coeffs[0];
        if diff != delta.scale(k) {
            return None;
        }
        out.push(k);
    }
    Some(out)
}

/// Exact lattice-level checks tying the two presentations together:
/// the recurrence word is the w1-conjugate of the standard word, the
/// mixed relation w1 s3 s2 = s3 s2 w3 holds, and the induced action of the
/// recurrence dynamics equals the standard translation in both the
/// preliminary (w1-conjugated) and final (plain) basis identifications.
pub fn conjugation_identity_check() -> VerificationReport {
    let mut report = VerificationReport::new("lattice-conjugation");

    let std_map = standard_translation_map();
    let rec_map = recurrence_translation_map();
    let w1 = weyl_generator(1);
    let phi = recurrence_lattice_action();

    let conj = w1.compose(&std_map).and_then(|m| m.compose(&w1)).expect("FG word");
    report.push(CheckItem::exact(
        "recurrence word equals w1 . standard word . w1",
        rec_map == conj,
    ));

    let lhs = weyl_generator(1)
        .compose(&automorphism(3))
        .and_then(|m| m.compose(&automorphism(2)))
        .expect("FG word");
    let rhs = automorphism(3)
        .compose(&automorphism(2))
        .and_then(|m| m.compose(&weyl_generator(3)))
        .expect("FG word");
    report.push(CheckItem::exact("w1 s3 s2 equals s3 s2 w3", lhs == rhs));

    let (b0_xy_to_fg, b0_fg_to_xy) = basis_change_preliminary();
    let prelim = b0_fg_to_xy
        .compose(&conj)
        .and_then(|m| m.compose(&b0_xy_to_fg))
        .expect("basis transport");
    report.push(CheckItem::exact(
        "induced action equals preliminary-basis transport of the conjugated word",
        prelim == phi,
    ));

    let (b_xy_to_fg, b_fg_to_xy) = basis_change_final();
    let fin = b_fg_to_xy
        .compose(&std_map)
        .and_then(|m| m.compose(&b_xy_to_fg))
        .expect("basis transport");
    report.push(CheckItem::exact(
        "induced action equals final-basis transport of the standard word",
        fin == phi,
    ));

    let std_tv = translation_vector(&std_map, &standard_roots().symmetry_roots);
    report.push(CheckItem::exact(
        "standard word translates symmetry roots by <-1,1,-1,1> delta",
        std_tv == Some(vec![-1, 1, -1, 1]),
    ));
    let rec_tv = translation_vector(&rec_map, &standard_roots().symmetry_roots);
    report.push(CheckItem::exact(
        "recurrence word translates symmetry roots by <0,-1,0,1> delta",
        rec_tv == Some(vec![0, -1, 0, 1]),
    ));

    report
}

/// Permutation induced by the final basis change on the surface-root labels
/// (image of the i-th recurrence surface root among the standard ones).
pub fn surface_root_label_map() -> Option<[usize; 6]> {
    let (to_fg, _) = basis_change_final();
    let rec = recurrence_roots();
    let std = standard_roots();
    let mut perm = [0usize; 6];
    for (i, r) in rec.surface_roots.iter().enumerate() {
        let img = to_fg.apply(r).ok()?;
        let j = std.surface_roots.iter().position(|s| *s == img)?;
        perm[i] = j;
    }
    Some(perm)
}

/// Cartan matrix 2 (a_i • a_j) / (a_j • a_j) of a root list.
pub fn cartan_matrix(roots: &[DivisorClass]) -> Vec<Vec<i64>> {
    roots
        .iter()
        .map(|ri| {
            roots
                .iter()
                .map(|rj| {
                    let num = 2 * intersect(ri, rj).expect("same basis");
                    let den = intersect(rj, rj).expect("same basis");
                    num / den
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hx() -> DivisorClass {
        DivisorClass::generator(Basis::XY, 0)
    }

    fn hy() -> DivisorClass {
        DivisorClass::generator(Basis::XY, 1)
    }

    #[test]
    fn intersection_form_on_generators() {
        assert_eq!(intersect(&hx(), &hy()).unwrap(), 1);
        assert_eq!(intersect(&hx(), &hx()).unwrap(), 0);
        let f1 = DivisorClass::generator(Basis::XY, 2);
        assert_eq!(intersect(&f1, &f1).unwrap(), -1);
        assert_eq!(intersect(&hx(), &f1).unwrap(), 0);
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let hf = DivisorClass::generator(Basis::FG, 0);
        assert!(matches!(
            intersect(&hx(), &hf),
            Err(LatticeError::BasisMismatch { .. })
        ));
    }

    #[test]
    fn anticanonical_is_null() {
        for b in [Basis::XY, Basis::FG] {
            let k = anticanonical(b);
            assert_eq!(k.self_intersection(), 0);
            let (k2, decomposes) = anticanonical_decomposition(b);
            assert_eq!(k2, k);
            assert!(decomposes);
        }
    }

    #[test]
    fn anticanonical_decomposition_both_surfaces() {
        for roots in [standard_roots(), recurrence_roots()] {
            let mut sum = DivisorClass::zero(roots.basis);
            for (d, m) in roots.surface_roots.iter().zip(ANTICANONICAL_MULTIPLICITIES) {
                sum = sum.add(&d.scale(m)).unwrap();
            }
            assert_eq!(sum, anticanonical(roots.basis));
            // symmetry roots sum to -K with multiplicity one
            let mut asum = DivisorClass::zero(roots.basis);
            for a in &roots.symmetry_roots {
                asum = asum.add(a).unwrap();
            }
            assert_eq!(asum, anticanonical(roots.basis));
            // -K is orthogonal to every surface root
            for d in &roots.surface_roots {
                assert_eq!(intersect(&anticanonical(roots.basis), d).unwrap(), 0);
            }
        }
    }

    #[test]
    fn root_self_intersections_and_diagrams() {
        for roots in [standard_roots(), recurrence_roots()] {
            for d in roots.surface_roots.iter().chain(roots.symmetry_roots.iter()) {
                assert_eq!(d.self_intersection(), -2, "{}", d.display());
            }
            // D5 affine diagram: edges d0-d2, d1-d2, d2-d3, d3-d4, d3-d5
            let edges = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)];
            for i in 0..6 {
                for j in (i + 1)..6 {
                    let ip = intersect(&roots.surface_roots[i], &roots.surface_roots[j]).unwrap();
                    let expect = i64::from(edges.contains(&(i, j)));
                    assert_eq!(ip, expect, "surface roots {i},{j}");
                }
            }
            // A3 affine square on the symmetry roots
            let want = [
                [2, -1, 0, -1],
                [-1, 2, -1, 0],
                [0, -1, 2, -1],
                [-1, 0, -1, 2],
            ];
            let cartan = cartan_matrix(&roots.symmetry_roots);
            for i in 0..4 {
                assert_eq!(cartan[i], want[i], "cartan row {i}");
            }
        }
    }

    #[test]
    fn reflect_examples() {
        let std = standard_roots();
        for a in &std.symmetry_roots {
            // reflection negates the root itself
            assert_eq!(reflect(a, a).unwrap(), a.scale(-1));
        }
        // orthogonal classes are fixed
        let a0 = &std.symmetry_roots[0];
        let a2 = &std.symmetry_roots[2];
        assert_eq!(reflect(a0, a2).unwrap(), *a2);
        // w0 on Hf: Hf + Hg - E1 - E2
        let hf = DivisorClass::generator(Basis::FG, 0);
        let img = reflect(a0, &hf).unwrap();
        assert_eq!(
            img,
            DivisorClass::build(Basis::FG, 1, 1, &[(1, -1), (2, -1)])
        );
    }

    #[test]
    fn reflect_rejects_non_roots() {
        let hf = DivisorClass::generator(Basis::FG, 0);
        assert!(matches!(
            reflect(&hf, &hf),
            Err(LatticeError::InvalidRoot { self_intersection: 0 })
        ));
    }

    #[test]
    fn reflections_are_involutive_isometries_fixing_delta() {
        let std = standard_roots();
        let delta = anticanonical(Basis::FG);
        for a in &std.symmetry_roots {
            let m = reflection_map(a).unwrap();
            assert!(m.is_isometry());
            assert!(m.compose(&m).unwrap().is_identity());
            assert!(m.fixes(&delta));
        }
        for j in 1..=3 {
            let s = automorphism(j);
            assert!(s.is_isometry());
            assert!(s.compose(&s).unwrap().is_identity());
            assert!(s.fixes(&delta));
        }
    }

    #[test]
    fn automorphism_permutations_match_cycle_notation() {
        let std = standard_roots();
        let perm_of = |m: &LatticeMap, roots: &[DivisorClass]| -> Vec<usize> {
            roots
                .iter()
                .map(|r| {
                    let img = m.apply(r).unwrap();
                    roots.iter().position(|s| *s == img).expect("permutes roots")
                })
                .collect()
        };
        let s1 = automorphism(1);
        assert_eq!(perm_of(&s1, &std.symmetry_roots), vec![3, 2, 1, 0]);
        assert_eq!(perm_of(&s1, &std.surface_roots), vec![5, 4, 3, 2, 1, 0]);
        let s2 = automorphism(2);
        assert_eq!(perm_of(&s2, &std.symmetry_roots), vec![2, 1, 0, 3]);
        assert_eq!(perm_of(&s2, &std.surface_roots), vec![1, 0, 2, 3, 4, 5]);
        let s3 = automorphism(3);
        assert_eq!(perm_of(&s3, &std.symmetry_roots), vec![0, 3, 2, 1]);
        assert_eq!(perm_of(&s3, &std.surface_roots), vec![0, 1, 2, 3, 5, 4]);
    }

    #[test]
    fn standard_word_is_the_expected_translation() {
        let m = standard_translation_map();
        assert!(m.is_isometry());
        assert!(m.fixes(&anticanonical(Basis::FG)));
        let tv = translation_vector(&m, &standard_roots().symmetry_roots);
        assert_eq!(tv, Some(vec![-1, 1, -1, 1]));
    }

    #[test]
    fn induced_recurrence_action() {
        let phi = recurrence_lattice_action();
        // spot-check one transcribed column: F5 -> Hx - F8
        let f5 = DivisorClass::generator(Basis::XY, 6);
        assert_eq!(
            phi.apply(&f5).unwrap(),
            DivisorClass::build(Basis::XY, 1, 0, &[(8, -1)])
        );
        assert!(phi.is_isometry());
        assert!(phi.fixes(&anticanonical(Basis::XY)));
        assert_eq!(
            translation_vector(&phi, &preliminary_symmetry_roots()),
            Some(vec![0, -1, 0, 1])
        );
        assert_eq!(
            translation_vector(&phi, &recurrence_roots().symmetry_roots),
            Some(vec![-1, 1, -1, 1])
        );
    }

    #[test]
    fn final_basis_change_is_an_inverse_pair_of_isometries() {
        let (to_fg, to_xy) = basis_change_final();
        assert!(to_fg.is_isometry());
        assert!(to_xy.is_isometry());
        assert!(to_fg.compose(&to_xy).unwrap().is_identity());
        assert!(to_xy.compose(&to_fg).unwrap().is_identity());
        // Hx -> Hf + Hg - E5 - E6
        let img = to_fg.apply(&hx()).unwrap();
        assert_eq!(img, DivisorClass::build(Basis::FG, 1, 1, &[(5, -1), (6, -1)]));
        // the label correspondence on surface roots is recorded: identity
        assert_eq!(surface_root_label_map(), Some([0, 1, 2, 3, 4, 5]));
        // final symmetry roots are the FG roots pulled back
        let rec = recurrence_roots();
        let std = standard_roots();
        for (i, a) in std.symmetry_roots.iter().enumerate() {
            assert_eq!(to_xy.apply(a).unwrap(), rec.symmetry_roots[i]);
        }
    }

    #[test]
    fn preliminary_basis_change_properties() {
        let (to_fg, to_xy) = basis_change_preliminary();
        assert!(to_fg.is_isometry());
        assert!(to_xy.is_isometry());
        assert!(to_fg.compose(&to_xy).unwrap().is_identity());
        let std = standard_roots();
        let pre = preliminary_symmetry_roots();
        for (i, a) in std.symmetry_roots.iter().enumerate() {
            assert_eq!(to_xy.apply(a).unwrap(), pre[i]);
        }
        // the two identifications differ by w1 on the FG side
        let (b_to_fg, _) = basis_change_final();
        let w1 = weyl_generator(1);
        assert_eq!(w1.compose(&to_fg).unwrap(), b_to_fg);
    }

    #[test]
    fn conjugation_suite_passes() {
        let report = conjugation_identity_check();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn word_order_flag_matters() {
        let maps = [weyl_generator(0), weyl_generator(1)];
        let rf = compose_word(&maps, ApplyOrder::RightmostFirst).unwrap();
        let lf = compose_word(&maps, ApplyOrder::LeftmostFirst).unwrap();
        assert_ne!(rf, lf);
        assert!(compose_word(&[], ApplyOrder::RightmostFirst).is_err());
    }

    #[test]
    fn display_names() {
        let k = anticanonical(Basis::FG);
        assert_eq!(k.display(), "2Hf + 2Hg - E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8");
    }
}
