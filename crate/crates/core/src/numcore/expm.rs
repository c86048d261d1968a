//! Matrix exponential by scaling and squaring around a degree-13 Padé
//! approximant (Higham, 2005).

use super::lu::Lu;
use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

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

/// 1-norm bound below which the unscaled Padé-13 approximant is accurate to
/// double precision.
const THETA_13: f64 = 5.371920351148152;

pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.order()?;
    if !a.is_finite() {
        return Err(Error::arg("matrix exponential of a non-finite matrix"));
    }
    let norm = a.norm_one();
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = a.scale(C64::new(2f64.powi(-s), 0.0));
    let b = &PADE13;
    let id = ComplexMatrix::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let lin = |terms: &[(&ComplexMatrix, f64)]| -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(n, n);
        for (m, c) in terms {
            acc = &acc + &m.scale(C64::new(*c, 0.0));
        }
        acc
    };
    let u_inner = lin(&[(&a6, b[13]), (&a4, b[11]), (&a2, b[9])]);
    let u_outer = lin(&[(&a6, b[7]), (&a4, b[5]), (&a2, b[3]), (&id, b[1])]);
    let u = &scaled * &(&(&a6 * &u_inner) + &u_outer);
    let v_inner = lin(&[(&a6, b[12]), (&a4, b[10]), (&a2, b[8])]);
    let v_outer = lin(&[(&a6, b[6]), (&a4, b[4]), (&a2, b[2]), (&id, b[0])]);
    let v = &(&a6 * &v_inner) + &v_outer;
    let p = &v + &u;
    let q = &v - &u;
    let lu = Lu::factor(&q)?;
    let mut r = lu.solve_matrix(&p)?;
    for _ in 0..s {
        r = &r * &r;
    }
    if !r.is_finite() {
        return Err(Error::numerical("matrix exponential overflowed"));
    }
    Ok(r)
}
