use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const MAX_AGM_STEPS: usize = 64;

/// Arithmetic-geometric mean of two non-negative numbers, iterated until the
/// pair stops changing in binary64.
pub fn agm(a: f64, b: f64) -> f64 {
    agm_with_trace(a, b, |_, _| {})
}

fn agm_with_trace(mut a: f64, mut b: f64, mut visit: impl FnMut(usize, f64)) -> f64 {
    for n in 1..=MAX_AGM_STEPS {
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        // c_n = (a_{n-1} - b_{n-1}) / 2
        visit(n, 0.5 * (a - b));
        if a_next == a && b_next == b {
            break;
        }
        a = a_next;
        b = b_next;
        if a == b {
            break;
        }
    }
    a
}

fn check_modulus(func: &'static str, r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(func, format!("modulus r = {r} must lie in [0, 1)")));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind K(r) = π / (2·AGM(1, √(1−r²))).
pub fn agm_elliptic_k(r: f64) -> Result<f64> {
    check_modulus("agm_elliptic_k", r)?;
    let r_prime = ((1.0 - r) * (1.0 + r)).sqrt();
    Ok(FRAC_PI_2 / agm(1.0, r_prime))
}

/// Complete elliptic integral of the second kind, from the same AGM sequence:
/// E(r) = K(r)·(1 − Σ 2^(n−1) c_n²) with c_0 = r.
pub fn agm_elliptic_e(r: f64) -> Result<f64> {
    check_modulus("agm_elliptic_e", r)?;
    let r_prime = ((1.0 - r) * (1.0 + r)).sqrt();
    let mut sum = 0.5 * r * r;
    let mean = agm_with_trace(1.0, r_prime, |n, c| {
        sum += (n as f64 - 1.0).exp2() * c * c;
    });
    Ok(FRAC_PI_2 / mean * (1.0 - sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn k_at_zero() {
        assert_eq!(agm_elliptic_k(0.0).unwrap(), PI / 2.0);
        assert_eq!(agm_elliptic_e(0.0).unwrap(), PI / 2.0);
    }

    #[test]
    fn k_lemniscatic() {
        // K(1/√2) = Γ(1/4)² / (4√π) = 1.854074677301372
        let k = agm_elliptic_k(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((k - 1.854_074_677_301_372).abs() < 1e-14 * k);
    }

    #[test]
    fn e_reference_value() {
        // mpmath.ellipe(0.36) = 1.41808339444872
        let e = agm_elliptic_e(0.6).unwrap();
        assert!((e - 1.418_083_394_448_72).abs() < 1e-13);
    }

    #[test]
    fn legendre_relation() {
        // E K' + E' K − K K' = π/2
        for &r in &[0.1f64, 0.35, 0.6, 0.8, 0.95] {
            let rp = (1.0 - r * r).sqrt();
            let (k, e) = (agm_elliptic_k(r).unwrap(), agm_elliptic_e(r).unwrap());
            let (kp, ep) = (agm_elliptic_k(rp).unwrap(), agm_elliptic_e(rp).unwrap());
            assert!((e * kp + ep * k - k * kp - PI / 2.0).abs() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn k_strictly_increasing() {
        let mut prev = agm_elliptic_k(0.0).unwrap();
        for i in 1..100 {
            let r = i as f64 / 100.0;
            let k = agm_elliptic_k(r).unwrap();
            assert!(k > prev, "r={r}");
            prev = k;
        }
    }

    #[test]
    fn modulus_out_of_range() {
        assert!(agm_elliptic_k(1.0).is_err());
        assert!(agm_elliptic_k(-0.1).is_err());
        assert!(agm_elliptic_e(1.5).is_err());
    }
}
