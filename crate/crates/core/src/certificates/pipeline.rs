//! From ℓᵢ to the univariate R(x): defining polynomial L, the symmetric
//! quotient T̂, and the resultant with the involution polynomial S.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use chwave_algebra::resultant::{resultant_even_quadratics, resultant_with_quadratic};
use chwave_algebra::{AlgebraError, Poly, QAlgebra, Ring};

use super::algfrac::{mu_ell_recursion, AlgFrac};

/// Polynomials in θ with rational and integer coefficients.
pub type QT = Poly<BigRational>;
pub type ZT = Poly<BigInt>;

/// Coefficient fields whose primitive elements have an integral form.
pub trait Integral: QAlgebra {
    type Int: Ring;
    fn to_int(&self) -> Option<Self::Int>;
    fn from_int(i: &Self::Int) -> Self;
}

impl Integral for BigRational {
    type Int = BigRational;
    fn to_int(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn from_int(i: &BigRational) -> Self {
        i.clone()
    }
}

impl Integral for QT {
    type Int = ZT;
    fn to_int(&self) -> Option<ZT> {
        self.coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
    fn from_int(i: &ZT) -> Self {
        i.map(|c| BigRational::from_integer(c.clone()))
    }
}

/// S(x, y) = 2x² + 2xy + 2y² − x − y with y as the outer variable.
pub fn involution_poly<R: Ring>() -> Poly<Poly<R>> {
    Poly::new(vec![
        Poly::from_i64s(&[0, -1, 2]),
        Poly::from_i64s(&[-1, 2]),
        Poly::from_i64s(&[2]),
    ])
}

/// L(x, y) = a(x)y² − b(x) with ℓ² = b/a, scaled so that the numerator
/// P = λp of ℓ is primitive.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningPolynomial<R: Integral> {
    pub lambda: BigRational,
    /// Raw numerator p of ℓ.
    pub p: Poly<R>,
    pub big_p: Poly<R::Int>,
    /// x^{2j} (3x−1)^{2k} (x+θ)^{max(−e,0)}
    pub a: Poly<R::Int>,
    /// P² (x+θ)^{max(e,0)} = λ² b
    pub g: Poly<R::Int>,
}

impl<R: Integral> DefiningPolynomial<R> {
    /// λ²a(x)y² − g(x), y outer.
    pub fn bivariate(&self) -> Poly<Poly<R::Int>> {
        let l2 = R::from_rational(&(&self.lambda * &self.lambda))
            .to_int()
            .expect("λ² is an integer");
        let top = self.a.map(|c| c.mul_ref(&l2));
        Poly::new(vec![self.g.clone().neg_ref(), Poly::zero(), top])
    }
}

pub fn defining_polynomial<R: Integral>(ell: &AlgFrac<R>) -> Result<DefiningPolynomial<R>, AlgebraError> {
    if ell.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let content = ell.num.content();
    let lambda = <BigRational as One>::one() / content;
    let c = ell.c_poly();
    let big_p_q = ell.num.scale(&R::from_rational(&lambda));
    let to_int = |p: &Poly<R>| -> Result<Poly<R::Int>, AlgebraError> {
        p.coeffs()
            .iter()
            .map(|c| c.to_int())
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
            .ok_or(AlgebraError::InexactDivision)
    };
    let x = Poly::<R>::x();
    let t = Poly::new(vec![R::from_i64(-1), R::from_i64(3)]);
    let a = &(&x.pow(2 * ell.j as u32) * &t.pow(2 * ell.k as u32)) * &c.pow((-ell.e).max(0) as u32);
    let g = &(&big_p_q * &big_p_q) * &c.pow(ell.e.max(0) as u32);
    Ok(DefiningPolynomial {
        lambda,
        p: ell.num.clone(),
        big_p: to_int(&big_p_q)?,
        a: to_int(&a)?,
        g: to_int(&g)?,
    })
}

/// T̂(x, y) = (a(x)g(y) − a(y)g(x))/(x − y), y outer. For L = λ²a y² − g
/// one has Res_z(L(x,z), L(y,z)) = λ⁴(x − y)²T̂².
pub fn t_hat<I: Ring>(a: &Poly<I>, g: &Poly<I>) -> Result<Poly<Poly<I>>, AlgebraError> {
    let outer = |inner: &Poly<I>, coeffs: &Poly<I>| -> Poly<Poly<I>> {
        Poly::new(coeffs.coeffs().iter().map(|c| inner.scale(c)).collect())
    };
    let diff = &outer(a, g) - &outer(g, a);
    let x_minus_y = Poly::new(vec![Poly::x(), Poly::constant(I::from_i64(-1))]);
    diff.div_exact_poly(&x_minus_y).ok_or(AlgebraError::InexactDivision)
}

/// Res_z of two even quadratics L(x,z), L(y,z), as a bivariate polynomial.
pub fn resultant_in_z<I: Ring>(l: &Poly<Poly<I>>) -> Poly<Poly<I>> {
    let lift = |p: &Poly<I>| -> (Poly<Poly<I>>, Poly<Poly<I>>) {
        // as polynomial in x (constant in y), and in y
        (Poly::constant(p.clone()), p.map(|c| Poly::constant(c.clone())))
    };
    let (a_x, a_y) = lift(&l.coeff(2));
    let (b_x, b_y) = lift(&l.coeff(0).neg_ref());
    resultant_even_quadratics(&a_x, &b_x, &a_y, &b_y)
}

/// 𝓡(x) = Res_y(S(x,y), T̂(x,y)).
pub fn script_r<I: Ring>(t: &Poly<Poly<I>>) -> Result<Poly<I>, AlgebraError> {
    resultant_with_quadratic(&involution_poly(), t)
}

/// Split off the largest power of 3x − 1.
pub fn strip_3x_minus_1<I: Ring>(p: &Poly<I>) -> (Poly<I>, usize) {
    p.deflate_factor(&Poly::from_i64s(&[-1, 3]))
}

/// Everything the θ-symbolic certificate of one index needs.
#[derive(Clone, Debug)]
pub struct SymbolicCase {
    pub index: usize,
    pub ell: AlgFrac<QT>,
    pub defining: DefiningPolynomial<QT>,
    pub t_hat_xy: Poly<Poly<ZT>>,
    /// Exponent e in 𝓡 = (3x−1)^e R.
    pub strip_exponent: usize,
    /// R(x) with coefficients in ℤ[θ], x outer.
    pub r: Poly<ZT>,
    pub seconds: f64,
}

impl SymbolicCase {
    pub fn deg_t_hat(&self) -> usize {
        chwave_algebra::poly::total_degree(&self.t_hat_xy).unwrap_or(0)
    }

    pub fn deg_r(&self) -> usize {
        self.r.degree().unwrap_or(0)
    }

    /// R at a rational θ, as a polynomial in x.
    pub fn r_at(&self, theta: &BigRational) -> Poly<BigRational> {
        Poly::new(
            self.r
                .coeffs()
                .iter()
                .map(|c| c.map(|a| BigRational::from_integer(a.clone())).eval(theta))
                .collect(),
        )
    }

    /// R at a polynomial point x = φ(θ), as a polynomial in θ.
    pub fn r_at_poly(&self, x: &ZT) -> ZT {
        self.r.eval(x)
    }
}

/// Normalize R: remove the integer content and make the leading
/// coefficient in θ of R(0) positive.
fn normalize_r(r: Poly<ZT>) -> Poly<ZT> {
    let g = r
        .coeffs()
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .fold(BigInt::from(0), |g, c| num_integer::Integer::gcd(&g, c));
    let mut r = r.map(|c| c.map(|a| a / &g));
    let r0 = r.coeff(0);
    if r0.lc().is_some_and(|c| c.is_negative()) {
        r = -r;
    }
    r
}

pub fn build_symbolic_case(index: usize) -> Result<SymbolicCase, AlgebraError> {
    let start = Instant::now();
    let theta = QT::x();
    let (_, ells) = mu_ell_recursion(&theta, index);
    let ell = ells[index].clone();
    let defining = defining_polynomial(&ell)?;
    let t_hat_xy = t_hat(&defining.a, &defining.g)?;
    let r_script = script_r(&t_hat_xy)?;
    let (r, strip_exponent) = strip_3x_minus_1(&r_script);
    Ok(SymbolicCase {
        index,
        ell,
        defining,
        t_hat_xy,
        strip_exponent,
        r: normalize_r(r),
        seconds: start.elapsed().as_secs_f64(),
    })
}

static CASES: [OnceLock<Result<SymbolicCase, AlgebraError>>; 4] =
    [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];

/// The symbolic case for ℓ₁, ℓ₂ or ℓ₃, computed once per process.
pub fn symbolic_case(index: usize) -> Result<&'static SymbolicCase, AlgebraError> {
    if !(1..=3).contains(&index) {
        return Err(AlgebraError::Degree("only l1, l2 and l3 are supported"));
    }
    CASES[index]
        .get_or_init(|| build_symbolic_case(index))
        .as_ref()
        .map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chwave_algebra::rat;

    fn zt(cs: &[i64]) -> ZT {
        ZT::from_i64s(cs)
    }

    #[test]
    fn involution_identity() {
        // A(x) − A(z) = (z − x) S(x, z) / 2, checked at rational points
        let s = involution_poly::<BigRational>();
        let a = |x: &BigRational| x * x * (rat(1, 2) - x);
        for (x, z) in [(rat(1, 3), rat(-1, 6)), (rat(2, 7), rat(-5, 11)), (rat(0, 1), rat(0, 1))] {
            let sv = s.eval(&Poly::constant(z.clone())).eval(&x);
            assert_eq!(a(&x) - a(&z), (&z - &x) * sv / rat(2, 1));
        }
        assert_eq!(s.eval(&Poly::constant(rat(-1, 6))).eval(&rat(1, 3)), rat(0, 1));
    }

    #[test]
    fn ell1_pipeline() {
        let c = symbolic_case(1).unwrap();
        assert_eq!(c.defining.lambda, rat(2, 1));
        // L = 4(x+θ)(3x−1)⁶y² − ((6θ+1)x − 4θ − 1)²
        let l = c.defining.bivariate();
        let xt = Poly::new(vec![zt(&[0, 1]), zt(&[1])]);
        let t = Poly::new(vec![zt(&[-1]), zt(&[3])]);
        let pp = Poly::new(vec![zt(&[-1, -4]), zt(&[1, 6])]);
        assert_eq!(l.coeff(2), (&xt * &t.pow(6)).scale(&zt(&[4])));
        assert_eq!(l.coeff(0), -(&pp * &pp));
        let rz = resultant_in_z(&l);
        let xy = Poly::new(vec![Poly::x(), Poly::constant(zt(&[-1]))]);
        let expect = (&(&xy * &xy) * &(&c.t_hat_xy * &c.t_hat_xy)).map(|p| p.scale(&zt(&[16])));
        assert_eq!(rz, expect);
        assert_eq!(c.deg_t_hat(), 8);
        assert_eq!(c.strip_exponent, 8);
        assert_eq!(c.deg_r(), 8);
    }
}

