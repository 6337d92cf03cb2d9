//! Exact univariate polynomials and three-term recurrences.
//!
//! Polynomials are coefficient vectors over `Rat` in the monomial basis.
//! `Recurrence` generates the normalized orthogonal-polynomial family
//! `x·P_n = a_n·P_{n+1} + b_n·P_n + c_n·P_{n−1}` (P_0 = 1, P_1 prescribed),
//! and `linearize` expands products `P_n·P_m` back in the `{P_k}` basis by a
//! division-free triangular solve — exact rational division only.

use crate::error::{Error, Result};
use crate::rational::{rat, rat_to_string, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// Dense polynomial; `coeffs[k]` is the coefficient of x^k, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }
    }

    /// x·p, one shift.
    pub fn mul_x(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rat_to_string(c))?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", rat_to_string(c))?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

type CoeffFn = Arc<dyn Fn(usize) -> Rat + Send + Sync>;

/// Three-term recurrence `x·P_n = a_n·P_{n+1} + b_n·P_n + c_n·P_{n−1}`
/// for n ≥ 1, with P_0 = 1 and P_1 prescribed.
#[derive(Clone)]
pub struct Recurrence {
    name: String,
    a: CoeffFn,
    b: CoeffFn,
    c: CoeffFn,
    p1: Polynomial,
}

impl fmt::Debug for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Recurrence({})", self.name)
    }
}

impl Recurrence {
    pub fn new(
        name: impl Into<String>,
        a: impl Fn(usize) -> Rat + Send + Sync + 'static,
        b: impl Fn(usize) -> Rat + Send + Sync + 'static,
        c: impl Fn(usize) -> Rat + Send + Sync + 'static,
        p1: Polynomial,
    ) -> Self {
        Recurrence {
            name: name.into(),
            a: Arc::new(a),
            b: Arc::new(b),
            c: Arc::new(c),
            p1,
        }
    }

    /// Chebyshev T: x·T_n = ½T_{n+1} + ½T_{n−1}, T_1 = x.
    pub fn chebyshev_t() -> Self {
        Recurrence::new(
            "chebyshev_t",
            |_| rat(1, 2),
            |_| rat(0, 1),
            |_| rat(1, 2),
            Polynomial::x(),
        )
    }

    /// Normalized Chebyshev U (R_n = U_n/(n+1)):
    /// x·R_n = (n+2)/(2(n+1))·R_{n+1} + n/(2(n+1))·R_{n−1}, R_1 = x.
    pub fn chebyshev_u_normalized() -> Self {
        Recurrence::new(
            "chebyshev_u_normalized",
            |n| rat(n as i64 + 2, 2 * (n as i64 + 1)),
            |_| rat(0, 1),
            |n| rat(n as i64, 2 * (n as i64 + 1)),
            Polynomial::x(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// P_0 … P_{n_max}.  Asserts deg P_n = n and the normalization P_n(1) = 1;
    /// the latter is what makes linearization rows sum to one, so it is an
    /// error, never silently repaired.
    pub fn generate(&self, n_max: usize) -> Result<Vec<Polynomial>> {
        let mut ps = vec![Polynomial::one()];
        if n_max >= 1 {
            ps.push(self.p1.clone());
        }
        for n in 1..n_max {
            let a = (self.a)(n);
            if a.is_zero() {
                return Err(Error::ParamRange(format!(
                    "recurrence coefficient a_{n} = 0"
                )));
            }
            let xpn = ps[n].mul_x();
            let rest = ps[n]
                .scale(&(self.b)(n))
                .add(&ps[n - 1].scale(&(self.c)(n)));
            let next = xpn.sub(&rest).scale(&a.recip());
            ps.push(next);
        }
        for (n, p) in ps.iter().enumerate() {
            if p.degree() != Some(n) {
                return Err(Error::ParamRange(format!(
                    "generated P_{n} has degree {:?}, expected {n}",
                    p.degree()
                )));
            }
            let at_one = p.eval(&Rat::one());
            if !at_one.is_one() {
                return Err(Error::Normalization(n, rat_to_string(&at_one)));
            }
        }
        Ok(ps)
    }
}

/// Expands P_n·P_m = Σ_k g(n,m;k)·P_k; returns g(n,m;k) for k = 0…n+m.
///
/// Triangular back-substitution on the monomial coefficients: deg P_k = k
/// with nonzero leading coefficient makes the system upper triangular.
pub fn linearize(ps: &[Polynomial], n: usize, m: usize) -> Result<Vec<Rat>> {
    if ps.len() <= n + m {
        return Err(Error::ParamRange(format!(
            "linearize needs P_0..P_{}, only {} polynomials given",
            n + m,
            ps.len()
        )));
    }
    let mut q = ps[n].mul(&ps[m]);
    let mut g = vec![Rat::zero(); n + m + 1];
    for k in (0..=n + m).rev() {
        let lead = ps[k]
            .leading()
            .ok_or_else(|| Error::ParamRange(format!("P_{k} is the zero polynomial")))?;
        let c = q.coeff(k) / lead;
        if !c.is_zero() {
            q = q.sub(&ps[k].scale(&c));
        }
        g[k] = c;
    }
    debug_assert!(q.is_zero(), "residual after change of basis");
    Ok(g)
}
