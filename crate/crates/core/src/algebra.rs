//! The dual quaternion algebra H_d over the rationals.
//!
//! H_d has basis `e0, e1, e2, e3`; `e0` is the identity and every product of
//! two of `e1, e2, e3` vanishes. Basis indices are 0-based everywhere in the
//! code. Operator-matrix entries are reported with the 1-based names
//! `a11..a44`, where `a{r+1}{c+1}` is row `r`, column `c`.
//!
//! Multiplication exists twice: [`DualQuaternion::mul`] evaluates the closed
//! product formula directly, while [`StructureTable::multiply`] contracts
//! against structure constants and works over any [`RingElement`]
//! coefficient type. The symbolic system generator uses the latter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

pub const DIM: usize = 4;

/// Coefficient type usable in structure-constant products: exact scalars or
/// polynomials in the operator entries.
pub trait RingElement: Clone {
    fn zero() -> Self;
    fn from_scalar(c: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
}

impl RingElement for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn from_scalar(c: &Scalar) -> Self {
        c.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Element `x0·e0 + x1·e1 + x2·e2 + x3·e3` of H_d.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DualQuaternion {
    pub coords: [Scalar; DIM],
}

impl DualQuaternion {
    pub fn new(coords: [Scalar; DIM]) -> Self {
        DualQuaternion { coords }
    }

    pub fn from_ints(c: [i64; DIM]) -> Self {
        DualQuaternion::new(c.map(Scalar::from_int))
    }

    pub fn zero() -> Self {
        DualQuaternion::default()
    }

    /// The basis element `e_i`. Panics if `i >= 4`.
    pub fn basis(i: usize) -> Self {
        let mut q = DualQuaternion::zero();
        q.coords[i] = Scalar::one();
        q
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DualQuaternion::new(std::array::from_fn(|k| c * &self.coords[k]))
    }

    /// Product from the closed formula
    /// `(x0y0, x0y1 + y0x1, x0y2 + y0x2, x0y3 + y0x3)`.
    pub fn mul(&self, other: &Self) -> Self {
        let x = &self.coords;
        let y = &other.coords;
        DualQuaternion::new([
            &x[0] * &y[0],
            &x[0] * &y[1] + &y[0] * &x[1],
            &x[0] * &y[2] + &y[0] * &x[2],
            &x[0] * &y[3] + &y[0] * &x[3],
        ])
    }

    pub fn real_part(&self) -> Self {
        let mut q = DualQuaternion::zero();
        q.coords[0] = self.coords[0].clone();
        q
    }

    pub fn pure_part(&self) -> Self {
        let mut q = self.clone();
        q.coords[0] = Scalar::zero();
        q
    }

    /// Splits `x` into `(real, pure)` with `real + pure == x`.
    pub fn decompose(&self) -> (Self, Self) {
        (self.real_part(), self.pure_part())
    }
}

impl fmt::Debug for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.coords[0], self.coords[1], self.coords[2], self.coords[3])
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·e{k}")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, rhs: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(std::array::from_fn(|k| &self.coords[k] + &rhs.coords[k]))
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, rhs: DualQuaternion) -> DualQuaternion {
        &self + &rhs
    }
}

impl Sub for &DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, rhs: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(std::array::from_fn(|k| &self.coords[k] - &rhs.coords[k]))
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, rhs: DualQuaternion) -> DualQuaternion {
        &self - &rhs
    }
}

impl Neg for &DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(std::array::from_fn(|k| -&self.coords[k]))
    }
}

impl Mul for &DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, rhs: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::mul(self, rhs)
    }
}

/// Structure constants: `constants[p][q][k]` is the coefficient of `e_k` in
/// `e_p · e_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub constants: [[[Scalar; DIM]; DIM]; DIM],
}

impl StructureTable {
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        StructureTable {
            constants: std::array::from_fn(|p| std::array::from_fn(|q| std::array::from_fn(|k| f(p, q, k)))),
        }
    }

    /// The table of H_d: `e0` is a two-sided identity, all other products
    /// vanish.
    pub fn dual_quaternion() -> Self {
        StructureTable::from_fn(|p, q, k| {
            let hit = (p == 0 && q == k) || (q == 0 && p == k);
            if hit {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn coefficient(&self, p: usize, q: usize, k: usize) -> &Scalar {
        &self.constants[p][q][k]
    }

    pub fn set(&mut self, p: usize, q: usize, k: usize, value: Scalar) {
        self.constants[p][q][k] = value;
    }

    /// `x · y` by structure-constant contraction, over any coefficient ring.
    pub fn multiply<T: RingElement>(&self, x: &[T; DIM], y: &[T; DIM]) -> [T; DIM] {
        let mut out: [T; DIM] = std::array::from_fn(|_| T::zero());
        for p in 0..DIM {
            if x[p].is_zero() {
                continue;
            }
            for q in 0..DIM {
                if y[q].is_zero() {
                    continue;
                }
                let xy = x[p].mul_ref(&y[q]);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.constants[p][q][k];
                    if !c.is_zero() {
                        *slot = slot.add_ref(&xy.mul_ref(&T::from_scalar(c)));
                    }
                }
            }
        }
        out
    }

    pub fn multiply_elements(&self, x: &DualQuaternion, y: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.multiply(&x.coords, &y.coords))
    }

    fn basis_product(&self, p: usize, q: usize) -> DualQuaternion {
        DualQuaternion::new(self.constants[p][q].clone())
    }

    /// Exhaustive axiom check over all basis pairs and triples.
    pub fn check(&self) -> TableReport {
        let basis: Vec<DualQuaternion> = (0..DIM).map(DualQuaternion::basis).collect();

        let mut identity_failures = Vec::new();
        for (q, b) in basis.iter().enumerate() {
            if &self.basis_product(0, q) != b || &self.basis_product(q, 0) != b {
                identity_failures.push(q);
            }
        }

        let mut commutativity_failures = Vec::new();
        for p in 0..DIM {
            for q in p + 1..DIM {
                if self.basis_product(p, q) != self.basis_product(q, p) {
                    commutativity_failures.push((p, q));
                }
            }
        }

        let mut associativity_failures = Vec::new();
        for p in 0..DIM {
            for q in 0..DIM {
                let pq = self.basis_product(p, q);
                for r in 0..DIM {
                    let left = self.multiply_elements(&pq, &basis[r]);
                    let right = self.multiply_elements(&basis[p], &self.basis_product(q, r));
                    if left != right {
                        associativity_failures.push((p, q, r));
                    }
                }
            }
        }

        TableReport {
            unital: identity_failures.is_empty(),
            commutative: commutativity_failures.is_empty(),
            associative: associativity_failures.is_empty(),
            identity_failures,
            commutativity_failures,
            associativity_failures,
        }
    }
}

impl Default for StructureTable {
    fn default() -> Self {
        StructureTable::dual_quaternion()
    }
}

/// Verdicts of [`StructureTable::check`], with the failing basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    /// `e0` is a two-sided identity.
    pub unital: bool,
    pub commutative: bool,
    pub associative: bool,
    pub identity_failures: Vec<usize>,
    pub commutativity_failures: Vec<(usize, usize)>,
    pub associativity_failures: Vec<(usize, usize, usize)>,
}

impl TableReport {
    pub fn all_hold(&self) -> bool {
        self.unital && self.commutative && self.associative
    }
}

/// Name of operator entry `(row, col)` (0-based) in the `a11..a44` scheme.
pub fn entry_name(row: usize, col: usize) -> String {
    format!("a{}{}", row + 1, col + 1)
}
