//! Dense complex linear algebra for small operators and superoperators.
//!
//! Density matrices are vectorised column-major, vec(ρ)[i + d·j] = ρ_ij,
//! so that vec(AρB) = (Bᵀ ⊗ A) vec(ρ).

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Superoperator of ρ ↦ Aρ.
pub fn left(a: &CMatrix) -> CMatrix {
    kron(&CMatrix::identity(a.nrows(), a.nrows()), a)
}

/// Superoperator of ρ ↦ ρB.
pub fn right(b: &CMatrix) -> CMatrix {
    kron(&b.transpose(), &CMatrix::identity(b.nrows(), b.nrows()))
}

/// Superoperator of ρ ↦ −i[H, ρ].
pub fn hamiltonian_super(h: &CMatrix) -> CMatrix {
    (left(h) - right(h)) * (-I)
}

/// Superoperator of the dissipator D[L]ρ = LρL† − ½{L†L, ρ}.
pub fn dissipator_super(l: &CMatrix) -> CMatrix {
    let ld = l.adjoint();
    let ldl = &ld * l;
    kron(&l.conjugate(), l) - (left(&ldl) + right(&ldl)) * Complex64::new(0.5, 0.0)
}

pub fn vectorize(rho: &CMatrix) -> nalgebra::DVector<Complex64> {
    nalgebra::DVector::from_column_slice(rho.as_slice())
}

pub fn unvectorize(v: &nalgebra::DVector<Complex64>, dim: usize) -> CMatrix {
    CMatrix::from_column_slice(dim, dim, v.as_slice())
}

fn one_norm(a: &CMatrix) -> f64 {
    (0..a.ncols()).map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// Padé coefficients b_0..b_13 for the [13/13] approximant.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] =
    [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0];

// Largest 1-norms for which the [m/m] approximant meets unit roundoff.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068;
const THETA13: f64 = 5.371920351148152;

fn scale(a: &CMatrix, s: f64) -> CMatrix {
    a * Complex64::new(s, 0.0)
}

fn pade_low(a: &CMatrix, b: &[f64]) -> (CMatrix, CMatrix) {
    let n = a.nrows();
    let id = CMatrix::identity(n, n);
    let a2 = a * a;
    let mut pow = id.clone();
    let mut u = scale(&id, b[1]);
    let mut v = scale(&id, b[0]);
    let m = b.len() - 1;
    for k in 1..=m / 2 {
        pow = &pow * &a2;
        u += scale(&pow, b[2 * k + 1]);
        v += scale(&pow, b[2 * k]);
    }
    (a * u, v)
}

fn pade13(a: &CMatrix) -> (CMatrix, CMatrix) {
    let b = &PADE13;
    let n = a.nrows();
    let id = CMatrix::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (scale(&a6, b[13]) + scale(&a4, b[11]) + scale(&a2, b[9]))
        + scale(&a6, b[7])
        + scale(&a4, b[5])
        + scale(&a2, b[3])
        + scale(&id, b[1]);
    let u = a * u_inner;
    let v = &a6 * (scale(&a6, b[12]) + scale(&a4, b[10]) + scale(&a2, b[8]))
        + scale(&a6, b[6])
        + scale(&a4, b[4])
        + scale(&a2, b[2])
        + scale(&id, b[0]);
    (u, v)
}

/// Matrix exponential by scaling and squaring with a Padé approximant of
/// degree 3, 5, 7, 9 or 13 picked from the 1-norm of `a`.
pub fn expm(a: &CMatrix) -> CMatrix {
    assert_eq!(a.nrows(), a.ncols(), "expm needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let norm = one_norm(a);
    let (u, v, squarings) = if norm <= THETA3 {
        let (u, v) = pade_low(a, &PADE3);
        (u, v, 0)
    } else if norm <= THETA5 {
        let (u, v) = pade_low(a, &PADE5);
        (u, v, 0)
    } else if norm <= THETA7 {
        let (u, v) = pade_low(a, &PADE7);
        (u, v, 0)
    } else if norm <= THETA9 {
        let (u, v) = pade_low(a, &PADE9);
        (u, v, 0)
    } else {
        let s = ((norm / THETA13).log2().ceil()).max(0.0) as i32;
        let scaled = scale(a, 0.5f64.powi(s));
        let (u, v) = pade13(&scaled);
        (u, v, s)
    };
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is singular");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// exp(−iHt) for a Hermitian `h`.
pub fn unitary_propagator(h: &CMatrix, t: f64) -> CMatrix {
    expm(&(h * Complex64::new(0.0, -t)))
}

/// (e^{Aτ}, ∫₀^τ e^{As} ds) from one exponential of the block matrix
/// [[A, I], [0, 0]]·τ.
pub fn expm_with_integral(a: &CMatrix, tau: f64) -> (CMatrix, CMatrix) {
    let n = a.nrows();
    let mut block = CMatrix::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&(a * Complex64::new(tau, 0.0)));
    for i in 0..n {
        block[(i, n + i)] = Complex64::new(tau, 0.0);
    }
    let e = expm(&block);
    (e.view((0, 0), (n, n)).into_owned(), e.view((0, n), (n, n)).into_owned())
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn real_diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, v) in values.iter().enumerate() {
        m[(i, i)] = Complex64::new(*v, 0.0);
    }
    m
}

pub(crate) fn c(re: f64) -> Complex64 {
    ONE * re
}
