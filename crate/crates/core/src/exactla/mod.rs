//! Exact linear algebra over the rationals.
//!
//! Every Hom, Ext, kernel and cokernel computation in the crate bottoms out
//! here, so all zero-tests are exact.

mod matrix;
mod rational;

pub use matrix::{LinAlgError, Matrix, Rref};
pub use rational::{ParseRationalError, Rational};

pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
    m.solve(b)
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.is_invertible()
}

/// Rational roots of a polynomial given by coefficients (constant term first),
/// without multiplicity, in increasing order.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive};

    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return roots;
    }
    // Strip zero roots.
    let shift = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Rational::zero());
        c.drain(..shift);
    }
    if c.len() > 1 {
        // Clear denominators.
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> =
            c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let divisors = |n: &BigInt| -> Option<Vec<i64>> {
            let n = n.abs().to_i64()?;
            if n > 1_000_000_000_000 {
                return None;
            }
            let mut out = Vec::new();
            let mut d = 1i64;
            while d * d <= n {
                if n % d == 0 {
                    out.push(d);
                    if d != n / d {
                        out.push(n / d);
                    }
                }
                d += 1;
            }
            Some(out)
        };
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            return roots;
        };
        let eval = |r: &Rational| -> bool {
            let mut acc = Rational::zero();
            for coeff in ints.iter().rev() {
                acc = &(&acc * r) + &Rational::from(coeff.clone());
            }
            acc.is_zero()
        };
        for p in &ps {
            for q in &qs {
                for s in [1, -1] {
                    let r = Rational::new(s * p, *q);
                    if !roots.contains(&r) && eval(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_small_polynomials() {
        let q = Rational::from_int;
        // (x - 1)(x + 2)(2x - 1) = 2x^3 + x^2 - 5x + 2
        let roots = rational_roots(&[q(2), q(-5), q(1), q(2)]);
        assert_eq!(roots, vec![q(-2), Rational::new(1, 2), q(1)]);
        // x^2 - 2 has none
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_empty());
        // x^2
        assert_eq!(rational_roots(&[q(0), q(0), q(1)]), vec![q(0)]);
    }
}
