//! Bessel functions of the first kind for real order ν ≥ −1/2.
//!
//! Small and moderate arguments use Steed's continued-fraction method with
//! Temme's series below x = 2; large arguments use Hankel's asymptotic
//! expansion. Negative orders are reached through
//! J_{−μ} = cos(μπ) J_μ − sin(μπ) Y_μ.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;

// Chebyshev coefficients on [−1, 1] for the Temme auxiliary functions
// g1(μ) = (1/Γ(1−μ) − 1/Γ(1+μ)) / (2μ) and g2(μ) = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2,
// in the variable 4|μ| − 1.
const G1_CHEB: [f64; 14] = [
    -1.145_164_083_662_683_117_868_981_528_67,
    0.006_360_853_113_470_842_381_229_554_95,
    0.001_862_451_930_072_068_489_346_436_57,
    0.000_152_833_085_873_453_507_081_227_824,
    0.000_017_017_464_011_802_038_795_324_732,
    -6.459_750_292_334_725_435_466_832_645_1e-07,
    -5.181_984_843_251_938_089_410_431_296_8e-08,
    4.518_909_289_485_818_305_112_318_079_7e-10,
    3.243_322_737_102_087_304_366_625_918_0e-11,
    6.830_943_402_494_752_287_543_240_082_8e-13,
    2.835_350_275_517_210_151_311_962_813_0e-14,
    -7.988_390_576_932_359_287_563_808_754_1e-16,
    -3.372_667_730_077_194_983_334_121_345_7e-17,
    -3.658_633_480_921_052_074_405_443_710_4e-20,
];
const G2_CHEB: [f64; 15] = [
    1.882_645_524_949_671_835_019_616_975_350,
    -0.077_490_658_396_167_518_329_547_945_212,
    -0.018_256_714_847_324_929_419_579_340_950,
    0.000_633_803_020_907_489_579_592_397_173_1,
    0.000_076_229_054_350_872_902_119_446_117_5,
    -9.550_164_756_172_044_351_985_399_352_6e-07,
    -8.892_726_810_788_635_191_243_151_295_5e-08,
    -1.952_133_477_231_961_374_051_188_013_2e-09,
    -9.400_305_273_588_516_211_176_957_977_1e-11,
    4.687_513_384_953_239_317_929_087_910_1e-12,
    2.265_853_574_692_575_958_244_754_514_5e-13,
    -1.172_550_969_848_801_511_187_873_525_1e-15,
    -7.044_133_820_024_522_253_084_315_587_7e-17,
    -2.437_787_831_010_769_365_065_974_022_8e-18,
    -7.522_524_321_825_390_172_716_467_501_1e-20,
];

fn chebyshev(coeffs: &[f64], t: f64) -> f64 {
    let (mut d, mut dd) = (0.0, 0.0);
    let t2 = 2.0 * t;
    for &c in coeffs[1..].iter().rev() {
        let tmp = d;
        d = t2 * d - dd + c;
        dd = tmp;
    }
    t * d - dd + 0.5 * coeffs[0]
}

/// (J_ν, Y_ν, J'_ν, Y'_ν) for ν ≥ 0 and x > 0 by Steed's method.
fn steed(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    let nl = if x < XMIN {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν by modified Lentz.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "Bessel J continued fraction",
            residual: (c * d - 1.0).abs(),
            iterations: MAXIT,
        });
    }

    // Downward recurrence to order μ, unnormalized.
    let mut rjl = isign * FPMIN.sqrt();
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let t = 4.0 * xmu.abs() - 1.0;
        let gam1 = chebyshev(&G1_CHEB, t);
        let gam2 = chebyshev(&G2_CHEB, t);
        let gampl = gam2 - xmu * gam1;
        let gammi = gam2 + xmu * gam1;
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut i = 1usize;
        loop {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
            i += 1;
            if i > MAXIT {
                return Err(Error::NonConvergence {
                    what: "Bessel Y Temme series",
                    residual: del.abs(),
                    iterations: MAXIT,
                });
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq by Steed/Lentz.
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut done = false;
        for i in 1..MAXIT {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() <= EPS {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::NonConvergence {
                what: "Bessel J second continued fraction",
                residual: (dlr - 1.0).abs() + dli.abs(),
                iterations: MAXIT,
            });
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let fact = rjmu / rjl;
    let rj = rjl1 * fact;
    let rjp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let ry = rymu;
    let ryp = nu * xi * rymu - ry1;
    Ok((rj, ry, rjp, ryp))
}

/// Hankel's expansion J_ν(x) = √(2/(πx)) (P cos χ − Q sin χ), χ = x − (ν/2 + 1/4)π.
fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        let t = term.abs();
        if t > prev {
            break;
        }
        prev = t;
        // a_k / x^k enters P with sign (−1)^(k/2) for even k, Q with (−1)^((k−1)/2) for odd k.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if t < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn use_asymptotic(nu: f64, x: f64) -> bool {
    x >= 25f64.max(nu * nu)
}

fn check(nu: f64, x: f64) -> Result<()> {
    if !(nu >= -0.5) || !nu.is_finite() {
        return Err(Error::domain(
            "bessel_j",
            format!("order {nu} must be >= -1/2"),
        ));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_j",
            format!("argument {x} must be finite and nonnegative"),
        ));
    }
    Ok(())
}

/// J_ν(x) for ν ≥ −1/2 and x ≥ 0 (the x = 0 value is the limit; +∞ is a domain error).
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    bessel_j_with_derivative(nu, x).map(|(j, _)| j)
}

/// (J_ν(x), J'_ν(x)) for ν ≥ −1/2.
pub fn bessel_j_with_derivative(nu: f64, x: f64) -> Result<(f64, f64)> {
    check(nu, x)?;
    if x == 0.0 {
        return match nu {
            0.0 => Ok((1.0, 0.0)),
            v if v > 0.0 => Ok((
                0.0,
                if v == 1.0 {
                    0.5
                } else if v > 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                },
            )),
            _ => Err(Error::domain(
                "bessel_j",
                "negative order is singular at x = 0",
            )),
        };
    }
    if use_asymptotic(nu, x) {
        let j = hankel(nu, x);
        let jm1 = hankel(nu - 1.0, x);
        return Ok((j, jm1 - nu / x * j));
    }
    if nu >= 0.0 {
        let (j, _, jp, _) = steed(nu, x)?;
        return Ok((j, jp));
    }
    let mu = -nu;
    let (j, y, jp, yp) = steed(mu, x)?;
    let (s, c) = (mu * PI).sin_cos();
    Ok((c * j - s * y, c * jp - s * yp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.01, 0.7, 1.9, 2.1, 6.0, 24.0, 26.0, 300.0] {
            let s = (2.0 / (PI * x)).sqrt();
            assert_relative_eq!(
                bessel_j(0.5, x).unwrap(),
                s * x.sin(),
                max_relative = 1e-12,
                epsilon = 1e-15
            );
            assert_relative_eq!(
                bessel_j(-0.5, x).unwrap(),
                s * x.cos(),
                max_relative = 1e-12,
                epsilon = 1e-15
            );
        }
        assert!(bessel_j(0.5, PI).unwrap().abs() < 1e-15);
    }

    #[test]
    fn small_argument_limit() {
        assert_relative_eq!(bessel_j(0.0, 1e-8).unwrap(), 1.0, max_relative = 1e-15);
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_low_order() {
        assert!(bessel_j(-0.6, 1.0).is_err());
        assert!(bessel_j(0.0, -1.0).is_err());
    }

    #[test]
    fn derivative_matches_recurrence() {
        // J'_0 = −J_1
        for &x in &[0.3, 1.5, 4.0, 12.0, 40.0] {
            let (_, d) = bessel_j_with_derivative(0.0, x).unwrap();
            assert_relative_eq!(
                d,
                -bessel_j(1.0, x).unwrap(),
                max_relative = 1e-11,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn continuity_across_asymptotic_switch() {
        for &nu in &[-0.3f64, 0.2, 1.5] {
            let below = steed(nu.abs(), 25.0).unwrap();
            let j_below = if nu >= 0.0 {
                below.0
            } else {
                let (s, c) = (-nu * PI).sin_cos();
                c * below.0 - s * below.1
            };
            assert_relative_eq!(j_below, hankel(nu, 25.0), max_relative = 1e-12);
        }
    }
}
