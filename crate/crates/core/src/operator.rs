//! Linear operators on H_d and the Rota–Baxter equation.
//!
//! An operator is stored as its 4×4 matrix in the column convention: column
//! `j` holds the coordinates of `R(e_j)`, so entry `a{r+1}{c+1}` is the
//! `e_r`-coordinate of `R(e_c)`.
//!
//! Two independent routes decide whether `R` is a Rota–Baxter operator of
//! weight λ. [`rb_defect`] evaluates
//! `R(x)R(y) − R(R(x)y) − R(xR(y)) − λR(xy)` with the closed product
//! formula; [`MatrixIdentities`] rebuilds the same quantities from the
//! structure tensor `C`, the left-action matrices `E_i` and the
//! right-action matrices `F_j`. The defect route is the source of truth.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{DualQuaternion, StructureTable, DIM};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct OperatorMatrix {
    /// Row-major, `entries[0]` is `a11..a14`.
    pub entries: [[Scalar; DIM]; DIM],
}

impl OperatorMatrix {
    pub fn new(entries: [[Scalar; DIM]; DIM]) -> Self {
        OperatorMatrix { entries }
    }

    pub fn from_ints(rows: [[i64; DIM]; DIM]) -> Self {
        OperatorMatrix::new(rows.map(|r| r.map(Scalar::from_int)))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        OperatorMatrix::new(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn zero() -> Self {
        OperatorMatrix::default()
    }

    pub fn identity() -> Self {
        OperatorMatrix::from_fn(|r, c| if r == c { Scalar::one() } else { Scalar::zero() })
    }

    /// Matrix with the single nonzero entry `value` at 0-based `(row, col)`.
    pub fn single(row: usize, col: usize, value: Scalar) -> Self {
        let mut m = OperatorMatrix::zero();
        m.entries[row][col] = value;
        m
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    /// γ_j: the coordinates of `R(e_j)`.
    pub fn column(&self, j: usize) -> [Scalar; DIM] {
        std::array::from_fn(|r| self.entries[r][j].clone())
    }

    /// `R(e_j)` as an element.
    pub fn image_of_basis(&self, j: usize) -> DualQuaternion {
        DualQuaternion::new(self.column(j))
    }

    pub fn apply(&self, x: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(std::array::from_fn(|r| self.entries[r].iter().zip(&x.coords).map(|(a, v)| a * v).sum()))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        OperatorMatrix::from_fn(|r, c| k * &self.entries[r][c])
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(DIM, DIM, |r, c| self.entries[r][c].clone())
    }
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn apply(r: &OperatorMatrix, x: &DualQuaternion) -> DualQuaternion {
    r.apply(x)
}

/// `R(x)R(y) − R(R(x)y) − R(xR(y)) − λR(xy)`.
pub fn rb_defect(r: &OperatorMatrix, lambda: &Scalar, x: &DualQuaternion, y: &DualQuaternion) -> DualQuaternion {
    let rx = r.apply(x);
    let ry = r.apply(y);
    let lhs = rx.mul(&ry);
    let t1 = r.apply(&rx.mul(y));
    let t2 = r.apply(&x.mul(&ry));
    let t3 = r.apply(&x.mul(y)).scale(lambda);
    &(&(&lhs - &t1) - &t2) - &t3
}

/// A basis pair `(e_i, e_j)` at which the defect does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectWitness {
    pub i: usize,
    pub j: usize,
    pub defect: DualQuaternion,
}

impl fmt::Display for DefectWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e{}, e{}) defect {}", self.i, self.j, self.defect)
    }
}

/// First nonzero basis-pair defect, scanning `i` then `j` from 0.
pub fn find_defect(r: &OperatorMatrix, lambda: &Scalar) -> Option<DefectWitness> {
    for i in 0..DIM {
        for j in 0..DIM {
            let d = rb_defect(r, lambda, &DualQuaternion::basis(i), &DualQuaternion::basis(j));
            if !d.is_zero() {
                return Some(DefectWitness { i, j, defect: d });
            }
        }
    }
    None
}

/// The defect is bilinear, so vanishing on the 16 basis pairs is enough.
pub fn is_rota_baxter(r: &OperatorMatrix, lambda: &Scalar) -> bool {
    find_defect(r, lambda).is_none()
}

pub fn block_diag4(m: &Matrix) -> Matrix {
    m.block_diag4()
}

/// Matrices of the matrix-identity route, derived from a structure table.
///
/// * `c` is 4×16: block `k` (columns `4k..4k+4`) holds the `e_k`
///   coefficients of `e_p·e_q` at `(p, q)`, so the coordinates of
///   `R(e_i)R(e_j)` are `γ_iᵀ C γ_j(4)`.
/// * `left[i]` satisfies `coords(e_i·R(e_j)) = γ_jᵀ left[i]`.
/// * `right[j]` satisfies `coords(R(e_i)·e_j) = γ_iᵀ right[j]`.
/// * `product[j]` has column `i` equal to `coords(e_i·e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixIdentities {
    pub c: Matrix,
    pub left: [Matrix; DIM],
    pub right: [Matrix; DIM],
    pub product: [Matrix; DIM],
}

impl MatrixIdentities {
    pub fn new(table: &StructureTable) -> Self {
        let c = Matrix::from_fn(DIM, DIM * DIM, |p, col| {
            let (k, q) = (col / DIM, col % DIM);
            table.coefficient(p, q, k).clone()
        });
        let left = std::array::from_fn(|i| Matrix::from_fn(DIM, DIM, |q, k| table.coefficient(i, q, k).clone()));
        let right = std::array::from_fn(|j| Matrix::from_fn(DIM, DIM, |p, k| table.coefficient(p, j, k).clone()));
        let product = std::array::from_fn(|j| Matrix::from_fn(DIM, DIM, |k, i| table.coefficient(i, j, k).clone()));
        MatrixIdentities { c, left, right, product }
    }

    pub fn dual_quaternion() -> Self {
        MatrixIdentities::new(&StructureTable::dual_quaternion())
    }

    /// `R(e_i)R(e_j)` as `γ_iᵀ C γ_j(4)`.
    pub fn lemma1_product(&self, r: &OperatorMatrix, i: usize, j: usize) -> DualQuaternion {
        let gi = Matrix::column_vector(&r.column(i)).transpose();
        let gj4 = Matrix::column_vector(&r.column(j)).block_diag4();
        row_to_element(&(&(&gi * &self.c) * &gj4))
    }

    /// `e_i·R(e_j)` as `γ_jᵀ E_i`.
    pub fn lemma2_left(&self, r: &OperatorMatrix, i: usize, j: usize) -> DualQuaternion {
        let gj = Matrix::column_vector(&r.column(j)).transpose();
        row_to_element(&(&gj * &self.left[i]))
    }

    /// `R(e_i)·e_j` as `γ_iᵀ F_j`.
    pub fn lemma2_right(&self, r: &OperatorMatrix, i: usize, j: usize) -> DualQuaternion {
        let gi = Matrix::column_vector(&r.column(i)).transpose();
        row_to_element(&(&gi * &self.right[j]))
    }

    /// For each `j`, `γ_j(4)ᵀ Cᵀ R − [R (E_0ᵀ,…,E_3ᵀ) γ_j(4) + R F_jᵀ R + λ R P_j]`
    /// where `P_j` has column `i` equal to `coords(e_i·e_j)`. Column `i` of
    /// residual `j` is the defect at `(e_i, e_j)`.
    pub fn theorem3_residual(&self, r: &OperatorMatrix, lambda: &Scalar) -> [Matrix; DIM] {
        let rm = r.to_matrix();
        let left_t: Vec<Matrix> = self.left.iter().map(Matrix::transpose).collect();
        let left_block = Matrix::hcat(&left_t);
        let ct = self.c.transpose();
        std::array::from_fn(|j| {
            let gj4 = Matrix::column_vector(&r.column(j)).block_diag4();
            let lhs = &(&gj4.transpose() * &ct) * &rm;
            let middle = &(&rm * &left_block) * &gj4;
            let right = &(&rm * &self.right[j].transpose()) * &rm;
            let weight = (&rm * &self.product[j]).scale(lambda);
            &lhs - &(&(&middle + &right) + &weight)
        })
    }
}

fn row_to_element(m: &Matrix) -> DualQuaternion {
    assert_eq!((m.rows(), m.cols()), (1, DIM));
    DualQuaternion::new(std::array::from_fn(|k| m[(0, k)].clone()))
}

pub fn lemma1_product(r: &OperatorMatrix, i: usize, j: usize) -> DualQuaternion {
    MatrixIdentities::dual_quaternion().lemma1_product(r, i, j)
}

pub fn lemma2_left(r: &OperatorMatrix, i: usize, j: usize) -> DualQuaternion {
    MatrixIdentities::dual_quaternion().lemma2_left(r, i, j)
}

pub fn lemma2_right(r: &OperatorMatrix, i: usize, j: usize) -> DualQuaternion {
    MatrixIdentities::dual_quaternion().lemma2_right(r, i, j)
}

pub fn theorem3_residual(r: &OperatorMatrix, lambda: &Scalar) -> [Matrix; DIM] {
    MatrixIdentities::dual_quaternion().theorem3_residual(r, lambda)
}

/// The matrices as printed in the published lemmas and theorem, kept
/// verbatim for comparison with the derived ones.
pub mod published {
    use super::*;

    /// The 16×4 display whose transpose is `C`.
    pub fn c_transpose_display() -> Matrix {
        let rows: [[i64; 4]; 16] = [
            [1, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [1, 0, 0, 0],
        ];
        Matrix::from_fn(16, 4, |r, c| Scalar::from_int(rows[r][c]))
    }

    /// `E_0 = I`, `E_k` with a single 1 at row 0, column `k`.
    pub fn e_display() -> [Matrix; DIM] {
        std::array::from_fn(|k| if k == 0 { Matrix::identity(DIM) } else { Matrix::unit(DIM, DIM, 0, k) })
    }

    /// The matrices multiplying `R(e_i)` on the right by `e_1, e_2, e_3`,
    /// with the identity for `e_0`.
    pub fn right_display() -> [Matrix; DIM] {
        e_display()
    }

    /// Middle-term matrix `M` in `R Mᵀ R` of the four matrix equations, as
    /// printed (`None` for `j = 0`, which prints `R²`).
    pub fn theorem3_middle(j: usize) -> Option<Matrix> {
        match j {
            0 => None,
            1 => Some(Matrix::unit(DIM, DIM, 0, 1)),
            2 => Some(Matrix::unit(DIM, DIM, 0, 2)),
            // printed with the 1 in column 2
            3 => Some(Matrix::unit(DIM, DIM, 0, 2)),
            _ => panic!("basis index out of range"),
        }
    }

    /// Weight-term matrix `M` in `λ R Mᵀ`, as printed (`None` for `j = 0`,
    /// which prints `λR`).
    pub fn theorem3_weight(j: usize) -> Option<Matrix> {
        match j {
            0 => None,
            1 => Some(Matrix::unit(DIM, DIM, 0, 1)),
            // printed with a second 1 at (1, 3)
            2 => Some(&Matrix::unit(DIM, DIM, 0, 2) + &Matrix::unit(DIM, DIM, 1, 3)),
            3 => Some(Matrix::unit(DIM, DIM, 0, 3)),
            _ => panic!("basis index out of range"),
        }
    }
}

/// One difference between a printed matrix and the one derived from the
/// structure table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplayDiscrepancy {
    pub location: String,
    pub note: String,
}

/// Compares the printed `C`, `E_i`, right-action and four-equation matrices
/// with the derived ones.
pub fn published_matrix_discrepancies(ids: &MatrixIdentities) -> Vec<DisplayDiscrepancy> {
    let mut out = Vec::new();
    if published::c_transpose_display().transpose() != ids.c {
        out.push(DisplayDiscrepancy {
            location: "structure tensor C".into(),
            note: "printed C differs from the structure constants".into(),
        });
    }
    let e = published::e_display();
    for i in 0..DIM {
        if e[i] != ids.left[i] {
            out.push(DisplayDiscrepancy {
                location: format!("E_{i}"),
                note: "printed E_i differs from the derived left-action matrix".into(),
            });
        } else if e[i].transpose() != e[i] {
            out.push(DisplayDiscrepancy {
                location: format!("E_{i}"),
                note: format!(
                    "left action e_{i}·R(e_j) printed as γ_jᵀ E_{i}ᵀ; the correct contraction is γ_jᵀ E_{i}, \
                     so the four equations need (E_0ᵀ,…,E_3ᵀ) in place of (E_0,…,E_3)"
                ),
            });
        }
    }
    let right = published::right_display();
    for j in 0..DIM {
        if right[j] != ids.right[j] {
            out.push(DisplayDiscrepancy {
                location: format!("right action by e_{j}"),
                note: "printed matrix differs from the derived right-action matrix".into(),
            });
        }
    }
    for j in 1..DIM {
        if let Some(m) = published::theorem3_middle(j) {
            if m != ids.right[j] {
                out.push(DisplayDiscrepancy {
                    location: format!("matrix equation {}, middle term", j + 1),
                    note: format!("printed R Mᵀ R uses M = {m:?}; derived M has its 1 at (0,{j})"),
                });
            }
        }
        if let Some(m) = published::theorem3_weight(j) {
            if m.transpose() != ids.product[j] {
                out.push(DisplayDiscrepancy {
                    location: format!("matrix equation {}, weight term", j + 1),
                    note: format!("printed λ R Mᵀ uses M = {m:?}; derived M has a single 1 at (0,{j})"),
                });
            }
        }
    }
    out
}

/// The four-equation residual built literally from the printed matrices.
/// It is not equivalent to the Rota–Baxter condition; kept to exhibit that.
pub fn theorem3_residual_as_printed(r: &OperatorMatrix, lambda: &Scalar) -> [Matrix; DIM] {
    let rm = r.to_matrix();
    let e_block = Matrix::hcat(&published::e_display());
    let ct = published::c_transpose_display();
    std::array::from_fn(|j| {
        let gj4 = Matrix::column_vector(&r.column(j)).block_diag4();
        let lhs = &(&gj4.transpose() * &ct) * &rm;
        let middle = &(&rm * &e_block) * &gj4;
        let (right, weight) = match j {
            0 => (&rm * &rm, rm.scale(lambda)),
            _ => {
                let m = published::theorem3_middle(j).expect("j >= 1");
                let w = published::theorem3_weight(j).expect("j >= 1");
                (&(&rm * &m.transpose()) * &rm, (&rm * &w.transpose()).scale(lambda))
            }
        };
        &lhs - &(&(&middle + &right) + &weight)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> DualQuaternion {
        DualQuaternion::basis(i)
    }

    #[test]
    fn apply_examples() {
        let x = DualQuaternion::from_ints([3, -1, 4, 1]);
        assert_eq!(OperatorMatrix::identity().apply(&x), x);
        assert!(OperatorMatrix::zero().apply(&x).is_zero());
        // a34 = 1 means the e2-coordinate of R(e3) is 1
        let r = OperatorMatrix::single(2, 3, Scalar::one());
        assert_eq!(r.apply(&e(3)), e(2));
    }

    #[test]
    fn defect_examples() {
        let lam = Scalar::from_int(5);
        assert!(rb_defect(&OperatorMatrix::zero(), &lam, &e(1), &e(0)).is_zero());
        let d = rb_defect(&OperatorMatrix::identity(), &Scalar::zero(), &e(0), &e(0));
        assert_eq!(d, DualQuaternion::from_ints([-1, 0, 0, 0]));
        let r = OperatorMatrix::single(0, 0, Scalar::from_int(-1));
        assert!(rb_defect(&r, &Scalar::one(), &e(0), &e(0)).is_zero());
    }

    #[test]
    fn is_rota_baxter_examples() {
        assert!(is_rota_baxter(&OperatorMatrix::zero(), &Scalar::ratio(7, 3)));
        assert!(!is_rota_baxter(&OperatorMatrix::identity(), &Scalar::zero()));
        let w = find_defect(&OperatorMatrix::identity(), &Scalar::zero()).unwrap();
        assert_eq!((w.i, w.j), (0, 0));
        // block family d = e = f = 1: rows (0,0,0,0),(0,0,1,1),(0,0,-1,-1),(0,0,1,1)
        let block = OperatorMatrix::from_ints([[0, 0, 0, 0], [0, 0, 1, 1], [0, 0, -1, -1], [0, 0, 1, 1]]);
        assert!(is_rota_baxter(&block, &Scalar::zero()));
    }

    #[test]
    fn identity_is_rota_baxter_of_weight_minus_one() {
        // R = id: x y = 2 x y + λ x y forces λ = -1
        assert!(is_rota_baxter(&OperatorMatrix::identity(), &Scalar::from_int(-1)));
    }

    #[test]
    fn derived_c_matches_display() {
        let ids = MatrixIdentities::dual_quaternion();
        assert_eq!(ids.c, published::c_transpose_display().transpose());
        assert_eq!(ids.left, published::e_display());
        assert_eq!(ids.right, published::right_display());
    }

    #[test]
    fn lemma_paths_on_identity_and_zero() {
        let id = OperatorMatrix::identity();
        assert_eq!(lemma1_product(&id, 0, 0), e(0));
        for i in 0..DIM {
            for j in 0..DIM {
                assert!(lemma1_product(&OperatorMatrix::zero(), i, j).is_zero());
                assert!(lemma2_left(&OperatorMatrix::zero(), i, j).is_zero());
            }
        }
        let r = OperatorMatrix::from_ints([[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16]]);
        for j in 0..DIM {
            assert_eq!(lemma2_left(&r, 0, j), r.image_of_basis(j));
        }
    }

    #[test]
    fn theorem3_examples() {
        assert!(theorem3_residual(&OperatorMatrix::zero(), &Scalar::one()).iter().all(Matrix::is_zero));
        let row = OperatorMatrix::from_ints([[0, 1, 0, 0], [0; 4], [0; 4], [0; 4]]);
        let res = theorem3_residual(&row, &Scalar::zero());
        // (a,b,c) = (1,0,0) leaves defect −e0 at (e1, e1)
        assert!(!res[1].is_zero());
        assert_eq!(res[1][(0, 1)], Scalar::from_int(-1));
        assert!(!is_rota_baxter(&row, &Scalar::zero()));
        assert!(theorem3_residual(&OperatorMatrix::identity(), &Scalar::zero()).iter().any(|m| !m.is_zero()));
    }

    #[test]
    fn printed_matrix_discrepancies_are_found() {
        let found = published_matrix_discrepancies(&MatrixIdentities::dual_quaternion());
        let locs: Vec<&str> = found.iter().map(|d| d.location.as_str()).collect();
        assert!(locs.contains(&"matrix equation 3, weight term"));
        assert!(locs.contains(&"matrix equation 4, middle term"));
        assert!(locs.contains(&"E_1"));
        assert!(!locs.contains(&"structure tensor C"));
    }

    #[test]
    fn printed_equations_reject_a_true_operator() {
        // R(e0) = e1 is Rota–Baxter of weight 0, yet the printed equations
        // leave a nonzero residual.
        let r = OperatorMatrix::single(1, 0, Scalar::one());
        assert!(is_rota_baxter(&r, &Scalar::zero()));
        assert!(theorem3_residual(&r, &Scalar::zero()).iter().all(Matrix::is_zero));
        assert!(theorem3_residual_as_printed(&r, &Scalar::zero()).iter().any(|m| !m.is_zero()));
    }

    #[test]
    fn json_form() {
        let r = OperatorMatrix::single(0, 1, Scalar::ratio(1, 2));
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"entries":[["0","1/2","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]}"#);
        let back: OperatorMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
