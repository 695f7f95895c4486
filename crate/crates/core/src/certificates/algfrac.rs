//! Algebraic fractions N(x)·(x+θ)^{e/2} / (x^j (3x−1)^k) and the μᵢ, ℓᵢ
//! recursion they are closed under.

use num_bigint::BigInt;
use num_rational::BigRational;

use chwave_algebra::{Poly, QAlgebra};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgFrac<R: QAlgebra> {
    pub theta: R,
    pub num: Poly<R>,
    /// Exponent of x + θ, in halves.
    pub e: i32,
    /// Exponent of x in the denominator.
    pub j: i32,
    /// Exponent of 3x − 1 in the denominator.
    pub k: i32,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl<R: QAlgebra> AlgFrac<R> {
    pub fn poly(theta: &R, num: Poly<R>) -> Self {
        AlgFrac {
            theta: theta.clone(),
            num,
            e: 0,
            j: 0,
            k: 0,
        }
    }

    pub fn constant(theta: &R, c: &BigRational) -> Self {
        Self::poly(theta, Poly::constant(R::from_rational(c)))
    }

    /// x + θ
    pub fn c_poly(&self) -> Poly<R> {
        Poly::new(vec![self.theta.clone(), R::one()])
    }

    fn factor_x() -> Poly<R> {
        Poly::x()
    }

    fn factor_3x1() -> Poly<R> {
        Poly::new(vec![R::from_i64(-1), R::from_i64(3)])
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        AlgFrac {
            num: self.num.scale(&R::from_rational(c)),
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        AlgFrac {
            theta: self.theta.clone(),
            num: &self.num * &o.num,
            e: self.e + o.e,
            j: self.j + o.j,
            k: self.k + o.k,
        }
    }

    /// Numerator rewritten over a larger common denominator.
    fn lift(&self, e: i32, j: i32, k: i32) -> Poly<R> {
        debug_assert!(e <= self.e && (self.e - e) % 2 == 0 && j >= self.j && k >= self.k);
        &(&(&self.num * &self.c_poly().pow(((self.e - e) / 2) as u32))
            * &Self::factor_x().pow((j - self.j) as u32))
            * &Self::factor_3x1().pow((k - self.k) as u32)
    }

    /// Sum of two fractions whose (x+θ) exponents have the same parity.
    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!((self.e - o.e).rem_euclid(2), 0, "mixed half-integer powers");
        let (e, j, k) = (self.e.min(o.e), self.j.max(o.j), self.k.max(o.k));
        AlgFrac {
            theta: self.theta.clone(),
            num: &self.lift(e, j, k) + &o.lift(e, j, k),
            e,
            j,
            k,
        }
        .reduce()
    }

    /// d/dx, via N′Cx(3x−1) + (e/2)Nx(3x−1) − jNC(3x−1) − 3kNCx over
    /// C^{e/2−1} x^{j+1} (3x−1)^{k+1}.
    pub fn derivative(&self) -> Self {
        let c = self.c_poly();
        let x = Self::factor_x();
        let t = Self::factor_3x1();
        let n = &self.num;
        let xt = &x * &t;
        let cxt = &c * &xt;
        let s = |p: &Poly<R>, r: BigRational| p.scale(&R::from_rational(&r));
        let num = &(&(&(&n.derivative() * &cxt) + &s(&(n * &xt), q(self.e as i64, 2)))
            - &s(&(&(n * &c) * &t), q(self.j as i64, 1)))
            - &s(&(&(n * &c) * &x), q(3 * self.k as i64, 1));
        AlgFrac {
            theta: self.theta.clone(),
            num,
            e: self.e - 2,
            j: self.j + 1,
            k: self.k + 1,
        }
        .reduce()
    }

    /// Cancel common factors x, 3x − 1 and x + θ from the numerator.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            return AlgFrac {
                e: 0,
                j: 0,
                k: 0,
                ..self
            };
        }
        let c = self.c_poly();
        while let Some(q) = self.num.div_exact_poly(&c) {
            self.num = q;
            self.e += 2;
        }
        while self.j > 0 {
            match self.num.div_exact_poly(&Self::factor_x()) {
                Some(q) => {
                    self.num = q;
                    self.j -= 1;
                }
                None => break,
            }
        }
        while self.k > 0 {
            match self.num.div_exact_poly(&Self::factor_3x1()) {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// ℓ(x)² at a point, where it is a rational function of x.
    pub fn square_at(&self, x: &R) -> Option<R> {
        let c = x.add_ref(&self.theta);
        let n = self.num.eval(x);
        let mut top = n.mul_ref(&n);
        let mut bottom = x.pow(2 * self.j as u32).mul_ref(&x.mul_ref(&R::from_i64(3)).sub_ref(&R::one()).pow(2 * self.k as u32));
        if self.e >= 0 {
            top = top.mul_ref(&c.pow(self.e as u32));
        } else {
            bottom = bottom.mul_ref(&c.pow((-self.e) as u32));
        }
        top.div_exact(&bottom)
    }
}

/// Data of the hypothesis: first integral A(x) + B(x)y + C(x)y² and
/// integrating factor K(x), with M = (4AC − B²)/(4|C|).
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisData<R: QAlgebra> {
    pub a: Poly<R>,
    pub b: Poly<R>,
    pub c: Poly<R>,
    pub k: Poly<R>,
    pub m: Poly<R>,
}

pub fn hypothesis_h_data<R: QAlgebra>(theta: &R) -> HypothesisData<R> {
    let a = Poly::from_rationals(&[q(0, 1), q(0, 1), q(1, 2), q(-1, 1)]);
    let c = Poly::new(vec![theta.clone(), R::one()]);
    let k = c.scale(&R::from_i64(2));
    let b = Poly::zero();
    // valid where C > 0, which holds on the annulus
    let four_ac_minus_b2 = &(&a * &c).scale(&R::from_i64(4)) - &(&b * &b);
    let m = four_ac_minus_b2
        .div_exact_poly(&c.scale(&R::from_i64(4)))
        .expect("C divides 4AC when B = 0");
    HypothesisData { a, b, c, k, m }
}

/// μ₀, …, μ_i and ℓ₀, …, ℓ_i, each in reduced form.
pub fn mu_ell_recursion<R: QAlgebra>(theta: &R, i: usize) -> (Vec<AlgFrac<R>>, Vec<AlgFrac<R>>) {
    let h = hypothesis_h_data(theta);
    // M′ = x − 3x² = −x(3x − 1), K/√C = 2√C, so ℓ = −2√C μ / (x(3x − 1))
    let ell_of = |mu: &AlgFrac<R>| {
        AlgFrac {
            theta: theta.clone(),
            num: mu.num.scale(&R::from_i64(-2)),
            e: mu.e + 1,
            j: mu.j + 1,
            k: mu.k + 1,
        }
        .reduce()
    };
    // √C M / K = M / (2√C)
    let m_over = AlgFrac {
        theta: theta.clone(),
        num: h.m.clone(),
        e: -1,
        j: 0,
        k: 0,
    };
    let mut mus = vec![AlgFrac::constant(theta, &q(-1, 1))];
    let mut ells = vec![ell_of(&mus[0])];
    for n in 1..=i {
        let d = 2 * n as i64 - 3;
        let prev = &mus[n - 1];
        let first = prev.scale(&(q(1, 2) + q(1, d)));
        let second = m_over.mul(&ells[n - 1].derivative()).scale(&q(1, 2 * d));
        let mu = first.add(&second);
        ells.push(ell_of(&mu));
        mus.push(mu);
    }
    (mus, ells)
}
