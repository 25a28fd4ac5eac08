//! Phase schedules for fixed-point search.
//!
//! A schedule of `L` generalized Grover iterates `G(alpha, beta) =
//! -S_s(alpha) S_t(beta)` realizes the odd Chebyshev construction of degree
//! `2L + 1`: with `gamma^{-1} = T_{1/(2L+1)}(1/eta)`,
//!
//! ```text
//! alpha_j = -beta_{L-j+1} = 2 arccot( tan(2 pi j / (2L+1)) sqrt(1 - gamma^2) )
//! ```
//!
//! and the success probability from `|s>` is
//! `1 - eta^2 T_{2L+1}(gamma^{-1} sqrt(1 - lambda))^2`, which stays above
//! `1 - eta^2` for every overlap `lambda >= 1 - gamma^2`.
//!
//! Each iterate makes one marked-phase query, so a schedule of `L` iterates
//! costs exactly `L` oracle queries. `L` is kept odd.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSchedule<T> {
    eta: T,
    /// `(alpha_j, beta_j)` in application order, wrapped to `(-pi, pi]`.
    pairs: Vec<(T, T)>,
}

fn wrap_angle<T: Scalar>(x: T) -> T {
    let two_pi = T::TAU();
    let mut y = x % two_pi;
    if y <= -T::PI() {
        y = y + two_pi;
    } else if y > T::PI() {
        y = y - two_pi;
    }
    y
}

fn check_eta<T: Scalar>(eta: T) -> Result<()> {
    if !(eta > T::zero() && eta <= T::one()) {
        return Err(Error::EtaOutOfRange(eta.to_f64_lossy()));
    }
    Ok(())
}

/// `1/gamma = T_{1/d}(1/eta) = cosh(arccosh(1/eta) / d)`.
fn gamma_inverse<T: Scalar>(degree: usize, eta: T) -> T {
    ((T::one() / eta).acosh() / T::from_usize_lossy(degree)).cosh()
}

/// Chebyshev polynomial of the first kind on the whole real line.
fn chebyshev<T: Scalar>(degree: usize, x: T) -> T {
    let d = T::from_usize_lossy(degree);
    if x.abs() <= T::one() {
        (d * x.acos()).cos()
    } else {
        let v = (d * x.abs().acosh()).cosh();
        if x < T::zero() && degree % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

pub fn fixed_point_phase_schedule<T: Scalar>(l: usize, eta: T) -> Result<PhaseSchedule<T>> {
    if l % 2 == 0 {
        return Err(Error::EvenL(l));
    }
    check_eta(eta)?;
    let degree = 2 * l + 1;
    let gamma = T::one() / gamma_inverse(degree, eta);
    let root = (T::one() - gamma * gamma).max(T::zero()).sqrt();
    let alphas: Vec<T> = (1..=l)
        .map(|j| {
            let angle = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(degree);
            // arccot(x) on (0, pi)
            T::from_f64_lossy(2.0) * T::one().atan2(angle.tan() * root)
        })
        .collect();
    let pairs = (0..l).map(|j| (wrap_angle(alphas[j]), wrap_angle(-alphas[l - 1 - j]))).collect();
    Ok(PhaseSchedule { eta, pairs })
}

/// Smallest odd `L` whose guaranteed window reaches down to `lambda_lower`.
pub fn select_length<T: Scalar>(lambda_lower: T, eta: T) -> Result<usize> {
    check_eta(eta)?;
    if !(lambda_lower > T::zero() && lambda_lower <= T::one()) {
        return Err(Error::FloorOutOfRange(lambda_lower.to_f64_lossy()));
    }
    let mut l = 1;
    while window_floor(l, eta) > lambda_lower {
        l += 2;
    }
    Ok(l)
}

/// `1 - gamma^2`: the overlap floor above which a length-`l` schedule succeeds
/// with probability at least `1 - eta^2`.
pub fn window_floor<T: Scalar>(l: usize, eta: T) -> T {
    let g = T::one() / gamma_inverse(2 * l + 1, eta);
    T::one() - g * g
}

impl<T: Scalar> PhaseSchedule<T> {
    /// Number of oracle queries, `L`.
    pub fn queries(&self) -> usize {
        self.pairs.len()
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn pairs(&self) -> &[(T, T)] {
        &self.pairs
    }

    pub fn window_floor(&self) -> T {
        window_floor(self.queries(), self.eta)
    }

    /// Closed-form success probability `|<T|F|s>|^2` at overlap `lambda`.
    pub fn analytic_success(&self, lambda: T) -> T {
        let degree = 2 * self.queries() + 1;
        let x = gamma_inverse(degree, self.eta) * (T::one() - lambda).max(T::zero()).sqrt();
        let t = chebyshev(degree, x);
        T::one() - self.eta * self.eta * t * t
    }

    /// `<T|F|s>` evaluated in the two-dimensional span of `|T>` and
    /// `|T_perp>`. Needs no oracle access: it is what a caller who believes
    /// the overlap is `lambda` expects the search to produce.
    pub fn target_amplitude(&self, lambda: T) -> Complex<T> {
        let st = lambda.sqrt();
        let sp = (T::one() - lambda).max(T::zero()).sqrt();
        let s = [Complex::new(st, T::zero()), Complex::new(sp, T::zero())];
        let mut v = s;
        for &(alpha, beta) in &self.pairs {
            v[0] = v[0] * Complex::from_polar(T::one(), beta);
            let overlap = s[0].conj() * v[0] + s[1].conj() * v[1];
            let c = (Complex::from_polar(T::one(), -alpha) - Complex::new(T::one(), T::zero())) * overlap;
            v = [-(v[0] + c * s[0]), -(v[1] + c * s[1])];
        }
        v[0]
    }

    /// Audit dump: one `j alpha_j beta_j` line per iterate, `j` from 1.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (j, (a, b)) in self.pairs.iter().enumerate() {
            writeln!(out, "{} {:.17e} {:.17e}", j + 1, a.to_f64_lossy(), b.to_f64_lossy()).expect("string write");
        }
        out
    }

    pub fn parse_dump(text: &str, eta: T) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [j, a, b] = f.as_slice() else {
                return Err(Error::Parse(format!("bad schedule line {line:?}")));
            };
            if j.parse::<usize>().ok() != Some(i + 1) {
                return Err(Error::Parse(format!("schedule line {line:?} out of order")));
            }
            let num = |v: &str| v.parse::<f64>().map_err(|_| Error::Parse(format!("bad angle {v:?}")));
            pairs.push((T::from_f64_lossy(num(a)?), T::from_f64_lossy(num(b)?)));
        }
        if pairs.len() % 2 == 0 {
            return Err(Error::EvenL(pairs.len()));
        }
        Ok(Self { eta, pairs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_iterate_at_unit_eta_is_grover() {
        let s = fixed_point_phase_schedule(1, 1.0f64).unwrap();
        assert_eq!(s.queries(), 1);
        let (a, b) = s.pairs()[0];
        assert!((a - PI).abs() < 1e-12 && (b - PI).abs() < 1e-12, "{a} {b}");
    }

    #[test]
    fn schedule_is_deterministic_and_antisymmetric() {
        let a = fixed_point_phase_schedule(9, 0.1f64).unwrap();
        let b = fixed_point_phase_schedule(9, 0.1f64).unwrap();
        assert_eq!(a, b);
        let p = a.pairs();
        for j in 0..9 {
            let d = wrap_angle(p[j].0 + p[8 - j].1);
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(fixed_point_phase_schedule(4, 0.1f64), Err(Error::EvenL(4)));
        assert_eq!(fixed_point_phase_schedule(0, 0.1f64), Err(Error::EvenL(0)));
        assert!(matches!(fixed_point_phase_schedule(3, 0.0f64), Err(Error::EtaOutOfRange(_))));
        assert!(matches!(select_length(0.0f64, 0.1), Err(Error::FloorOutOfRange(_))));
    }

    #[test]
    fn selected_length_covers_floor() {
        for &eta in &[0.3f64, 0.1, 0.0316] {
            for &floor in &[1.0 / 256.0, 0.05, 0.25, 0.5, 1.0] {
                let l = select_length(floor, eta).unwrap();
                assert_eq!(l % 2, 1);
                assert!(window_floor(l, eta) <= floor);
                if l > 1 {
                    assert!(window_floor(l - 2, eta) > floor);
                }
            }
        }
    }

    #[test]
    fn reduced_model_matches_closed_form() {
        let s = fixed_point_phase_schedule(5, 0.1f64).unwrap();
        for i in 1..=20 {
            let lambda = i as f64 / 20.0;
            let p = s.target_amplitude(lambda).norm_sqr();
            assert!((p - s.analytic_success(lambda)).abs() < 1e-12);
        }
    }

    #[test]
    fn dump_round_trip() {
        let s = fixed_point_phase_schedule(7, 0.2f64).unwrap();
        let text = s.dump();
        assert_eq!(text.lines().count(), 7);
        assert!(text.starts_with("1 "));
        let back = PhaseSchedule::parse_dump(&text, 0.2).unwrap();
        for (x, y) in back.pairs().iter().zip(s.pairs()) {
            assert!((x.0 - y.0).abs() < 1e-15 && (x.1 - y.1).abs() < 1e-15);
        }
    }
}
