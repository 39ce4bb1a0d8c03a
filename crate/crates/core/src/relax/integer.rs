//! Integer solutions of `M x = c` through a column Hermite normal form.
//!
//! Rows are scaled to integers, then unimodular column operations bring the
//! matrix to lower echelon form `H = A U`. The system `H y = b` is solved by
//! forward substitution and `x = U y`. When that fails, a vector `y` with
//! `yᵀ M` integral and `yᵀ c` not integral proves there is no integer solution.

use super::numeric::{Int, Rational};
use super::program::LinearSystem;
use crate::error::Result;

/// `y` with `yᵀ M ∈ ℤⁿ` and `yᵀ c ∉ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerCertificate {
    pub y: Vec<Rational>,
}

impl IntegerCertificate {
    /// Checks the certificate against a system.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.y.len() != sys.rows().len() {
            return false;
        }
        let mut rhs = Rational::zero();
        for (y, c) in self.y.iter().zip(sys.rhs()) {
            if !y.is_zero() {
                rhs = rhs + y * c;
            }
        }
        if rhs.is_integer() {
            return false;
        }
        (0..sys.columns()).all(|j| {
            let mut acc = Rational::zero();
            for (y, row) in self.y.iter().zip(sys.rows()) {
                if !y.is_zero() && !row[j].is_zero() {
                    acc = acc + y * &row[j];
                }
            }
            acc.is_integer()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AipOutcome {
    Solution(Vec<Int>),
    Infeasible(IntegerCertificate),
}

impl AipOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, AipOutcome::Solution(_))
    }
}

fn lcm(a: &Int, b: &Int) -> Int {
    (a * &b.div_exact(&a.gcd(b))).abs()
}

/// Solves `M x = c` over the integers, ignoring the system's bound kind.
pub fn aip_solve(sys: &LinearSystem) -> Result<AipOutcome> {
    let m = sys.rows().len();
    let n = sys.columns();

    // Integer rows: A = diag(scale) M, b = diag(scale) c.
    let mut scale = Vec::with_capacity(m);
    let mut h: Vec<Vec<Int>> = Vec::with_capacity(m);
    let mut b: Vec<Int> = Vec::with_capacity(m);
    for (row, c) in sys.rows().iter().zip(sys.rhs()) {
        let mut l = c.denom().clone();
        for a in row {
            if !a.denom().is_one() {
                l = lcm(&l, a.denom());
            }
        }
        let lr = Rational::from(l.clone());
        h.push(row.iter().map(|a| (a * &lr).to_int().expect("scaled entry")).collect());
        b.push((c * &lr).to_int().expect("scaled entry"));
        scale.push(lr);
    }

    let mut u: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect();
    // Column operations act on h and u alike.
    let col_combine = |mat: &mut Vec<Vec<Int>>, k: usize, j: usize, s: &Int, t: &Int, p: &Int, q: &Int| {
        // (col_k, col_j) ← (s·col_k + t·col_j, p·col_k + q·col_j)
        for row in mat.iter_mut() {
            let ck = row[k].clone();
            let cj = row[j].clone();
            if ck.is_zero() && cj.is_zero() {
                continue;
            }
            row[k] = &(s * &ck) + &(t * &cj);
            row[j] = &(p * &ck) + &(q * &cj);
        }
    };
    let col_axpy = |mat: &mut Vec<Vec<Int>>, dst: usize, f: &Int, src: usize| {
        for row in mat.iter_mut() {
            if !row[src].is_zero() {
                let d = f * &row[src];
                row[dst] = &row[dst] - &d;
            }
        }
    };
    let col_negate = |mat: &mut Vec<Vec<Int>>, k: usize| {
        for row in mat.iter_mut() {
            row[k] = -&row[k];
        }
    };

    let mut pivot_rows: Vec<usize> = Vec::new();
    for i in 0..m {
        let k = pivot_rows.len();
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[i][j].is_zero() {
                continue;
            }
            if h[i][k].is_zero() {
                for mat in [&mut h, &mut u] {
                    for row in mat.iter_mut() {
                        row.swap(k, j);
                    }
                }
                continue;
            }
            let (g, s, t) = h[i][k].extended_gcd(&h[i][j]);
            let p = -&h[i][j].div_exact(&g);
            let q = h[i][k].div_exact(&g);
            col_combine(&mut h, k, j, &s, &t, &p, &q);
            col_combine(&mut u, k, j, &s, &t, &p, &q);
        }
        if h[i][k].is_zero() {
            continue;
        }
        if h[i][k].is_negative() {
            col_negate(&mut h, k);
            col_negate(&mut u, k);
        }
        let piv = h[i][k].clone();
        for l in 0..k {
            let f = h[i][l].div_floor(&piv);
            if !f.is_zero() {
                col_axpy(&mut h, l, &f, k);
                col_axpy(&mut u, l, &f, k);
            }
        }
        pivot_rows.push(i);
    }

    // Forward substitution on H y = b.
    let r = pivot_rows.len();
    let mut y: Vec<Int> = vec![Int::ZERO; n];
    let mut next = 0;
    for i in 0..m {
        let mut acc = b[i].clone();
        for (l, yl) in y.iter().enumerate().take(next) {
            if !h[i][l].is_zero() {
                acc = &acc - &(&h[i][l] * yl);
            }
        }
        if next < r && pivot_rows[next] == i {
            let piv = &h[i][next];
            if !acc.mod_floor(piv).is_zero() {
                let cert = unit_row_certificate(&h, &pivot_rows[..=next], next);
                return Ok(AipOutcome::Infeasible(to_system_rows(cert, &scale)));
            }
            y[next] = acc.div_exact(piv);
            next += 1;
        } else if !acc.is_zero() {
            let cert = residual_certificate(&h, &pivot_rows[..next], i, &acc);
            return Ok(AipOutcome::Infeasible(to_system_rows(cert, &scale)));
        }
    }
    let x: Vec<Int> = (0..n)
        .map(|i| {
            let mut acc = Int::ZERO;
            for (uij, yj) in u[i].iter().zip(&y).take(r) {
                if !uij.is_zero() && !yj.is_zero() {
                    acc = &acc + &(uij * yj);
                }
            }
            acc
        })
        .collect();
    Ok(AipOutcome::Solution(x))
}

/// Rational inverse action: solves `zᵀ B = target` where `B = H[P][0..|P|]`
/// is lower triangular with positive diagonal.
fn solve_left(h: &[Vec<Int>], pivots: &[usize], target: &[Rational]) -> Vec<Rational> {
    let k = pivots.len();
    let mut z = vec![Rational::zero(); k];
    // zᵀ B = target, column l: Σ_{j ≥ l} z_j B[j][l] = target_l.
    for l in (0..k).rev() {
        let mut acc = target[l].clone();
        for j in l + 1..k {
            let bjl = &h[pivots[j]][l];
            if !bjl.is_zero() && !z[j].is_zero() {
                acc = acc - &z[j] * &Rational::from(bjl.clone());
            }
        }
        z[l] = &acc / &Rational::from(h[pivots[l]][l].clone());
    }
    z
}

/// Row `k` of `B⁻¹` spread over the pivot rows.
fn unit_row_certificate(h: &[Vec<Int>], pivots: &[usize], k: usize) -> Vec<(usize, Rational)> {
    let mut e = vec![Rational::zero(); pivots.len()];
    e[k] = Rational::one();
    let z = solve_left(h, pivots, &e);
    pivots.iter().copied().zip(z).collect()
}

/// `e_i − zᵀ` with `zᵀ B = H[i][..]`, scaled so the right-hand side is `1/2`.
fn residual_certificate(h: &[Vec<Int>], pivots: &[usize], i: usize, residual: &Int) -> Vec<(usize, Rational)> {
    let target: Vec<Rational> = (0..pivots.len()).map(|l| Rational::from(h[i][l].clone())).collect();
    let z = solve_left(h, pivots, &target);
    let f = Rational::new(Int::ONE, residual * &Int::from(2));
    let mut out: Vec<(usize, Rational)> = pivots.iter().copied().zip(z.into_iter().map(|v| -(&v * &f))).collect();
    out.push((i, f));
    out
}

/// Moves a certificate on the scaled rows back to the original rows.
fn to_system_rows(sparse: Vec<(usize, Rational)>, scale: &[Rational]) -> IntegerCertificate {
    let mut y = vec![Rational::zero(); scale.len()];
    for (i, v) in sparse {
        y[i] = &v * &scale[i];
    }
    IntegerCertificate { y }
}
