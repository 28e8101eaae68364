//! Two-component spinors on the `{|+Z>, |-Z>}` basis and 2x2 operators.

use std::ops::Mul;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Identity,
    X,
    Y,
    Z,
}

/// Projective spin measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Z,
}

impl Basis {
    /// Eigenspinor of `sigma_basis` with eigenvalue `outcome` (`+1` or `-1`).
    pub fn eigenstate(self, outcome: Outcome) -> Spinor {
        match (self, outcome) {
            (Basis::Z, Outcome::Plus) => Spinor::plus_z(),
            (Basis::Z, Outcome::Minus) => Spinor::minus_z(),
            (Basis::X, Outcome::Plus) => Spinor::plus_x(),
            (Basis::X, Outcome::Minus) => Spinor::minus_x(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub const fn new(up: Complex64, down: Complex64) -> Self {
        Self { up, down }
    }

    pub fn plus_z() -> Self {
        Self::new(ONE, ZERO)
    }

    pub fn minus_z() -> Self {
        Self::new(ZERO, ONE)
    }

    /// `(|+Z> + |-Z>) / sqrt(2)`
    pub fn plus_x() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(h, h)
    }

    /// `(|+Z> - |-Z>) / sqrt(2)`
    pub fn minus_x() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(h, -h)
    }

    pub fn zero() -> Self {
        Self::new(ZERO, ZERO)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::new(self.up * factor, self.down * factor)
    }

    pub fn add(&self, other: &Spinor) -> Self {
        Self::new(self.up + other.up, self.down + other.down)
    }

    /// Same ray, unit norm. `None` for the zero spinor.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// Equality up to a global phase: `|<a|b>| = |a||b|` and equal norms.
    pub fn same_ray(&self, other: &Spinor, tol: f64) -> bool {
        let overlap = self.inner(other).norm();
        (overlap - self.norm() * other.norm()).abs() <= tol
            && (self.norm() - other.norm()).abs() <= tol
    }
}

/// A 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperator {
    pub m: [[Complex64; 2]; 2],
}

impl SpinOperator {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        pauli(Axis::Identity)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn determinant(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &SpinOperator) -> f64 {
        let mut acc = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                acc += (self.m[r][c] - other.m[r][c]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `||U^dagger U - I||_F`
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).distance(&Self::identity())
    }
}

impl Mul for SpinOperator {
    type Output = SpinOperator;

    fn mul(self, rhs: SpinOperator) -> SpinOperator {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        SpinOperator::new(out)
    }
}

impl Mul<Spinor> for SpinOperator {
    type Output = Spinor;

    fn mul(self, s: Spinor) -> Spinor {
        apply(&self, &s)
    }
}

pub fn pauli(axis: Axis) -> SpinOperator {
    match axis {
        Axis::Identity => SpinOperator::new([[ONE, ZERO], [ZERO, ONE]]),
        Axis::X => SpinOperator::new([[ZERO, ONE], [ONE, ZERO]]),
        Axis::Y => SpinOperator::new([[ZERO, -I], [I, ZERO]]),
        Axis::Z => SpinOperator::new([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// `cos(phi/2) 1 + i sin(phi/2) sigma_x`.
///
/// The sign of `phi` is the sign of the particle momentum along `y`, so
/// `wigner_rotation(phi)` and `wigner_rotation(-phi)` are the transformations
/// of the `+p` and `-p` components under the same boost.
pub fn wigner_rotation(phi: f64) -> SpinOperator {
    let (s, c) = (0.5 * phi).sin_cos();
    let diag = Complex64::new(c, 0.0);
    let off = Complex64::new(0.0, s);
    SpinOperator::new([[diag, off], [off, diag]])
}

pub fn apply(op: &SpinOperator, s: &Spinor) -> Spinor {
    let m = &op.m;
    Spinor::new(
        m[0][0] * s.up + m[0][1] * s.down,
        m[1][0] * s.up + m[1][1] * s.down,
    )
}
