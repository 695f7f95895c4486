//! Multi-modular resultants of polynomials with one integer parameter.
//!
//! `Res_x(f, g) ∈ ℤ[t]` is recovered by evaluating `t` at small integers
//! modulo 62-bit primes, taking Euclidean resultants over 𝔽_p, interpolating,
//! and lifting with the Chinese remainder theorem. The number of primes comes
//! from a rigorous bound on the coefficients, so the result is exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::par::Execution;
use crate::poly::Poly;
use crate::AlgebraError;

/// Arithmetic modulo an odd prime below 2^62 in Montgomery form.
#[derive(Clone, Copy, Debug)]
pub struct Modulus {
    p: u64,
    /// −p⁻¹ mod 2^64
    pinv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62), "modulus must be odd and below 2^62");
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Modulus {
            p,
            pinv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// Montgomery image of an arbitrary integer.
    pub fn reduce(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        self.to_mont(r)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2^62, descending.
pub fn primes_below_2_62(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Degree of a dense residue vector (trailing zeros ignored).
fn deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `b` in place; `b` has degree `db` and is nonzero.
fn rem_in_place(m: &Modulus, a: &mut Vec<u64>, b: &[u64], db: usize) {
    let inv_lc = m.inv(b[db]);
    while let Some(da) = deg(a) {
        if da < db {
            break;
        }
        let q = m.mul(a[da], inv_lc);
        let off = da - db;
        for i in 0..=db {
            a[off + i] = m.sub(a[off + i], m.mul(q, b[i]));
        }
        a[da] = 0;
    }
    a.truncate(deg(a).map_or(0, |d| d + 1));
}

/// Resultant over 𝔽_p by the Euclidean algorithm (Montgomery residues).
pub fn resultant_mod(m: &Modulus, f: &[u64], g: &[u64]) -> u64 {
    let (Some(mut da), Some(mut db)) = (deg(f), deg(g)) else {
        return 0;
    };
    let mut a: Vec<u64> = f[..=da].to_vec();
    let mut b: Vec<u64> = g[..=db].to_vec();
    let mut acc = m.one();
    loop {
        if db == 0 {
            return m.mul(acc, m.pow(b[0], da as u64));
        }
        // Res(a, b) = (−1)^(da·db) lc(b)^(da − dr) Res(b, r)
        let mut r = a;
        rem_in_place(m, &mut r, &b, db);
        let Some(dr) = deg(&r) else {
            return 0;
        };
        if (da * db) % 2 == 1 {
            acc = m.neg(acc);
        }
        acc = m.mul(acc, m.pow(b[db], (da - dr) as u64));
        a = b;
        da = db;
        b = r;
        db = dr;
    }
}

/// Interpolating polynomial through `(xs[i], ys[i])` with strictly increasing
/// small non-negative integer abscissae (plain integers) and Montgomery ordinates.
/// Returns Montgomery coefficients in ascending order.
pub fn interpolate_mod(m: &Modulus, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let max = xs.iter().copied().max().unwrap_or(0) as usize;
    // inverses of 1..=max by the prefix-product trick
    let mut inv = vec![0u64; max + 1];
    if max >= 1 {
        let vals: Vec<u64> = (1..=max as u64).map(|k| m.to_mont(k)).collect();
        let mut prefix = Vec::with_capacity(max);
        let mut acc = m.one();
        for &v in &vals {
            acc = m.mul(acc, v);
            prefix.push(acc);
        }
        let mut run = m.inv(acc);
        for k in (0..max).rev() {
            let before = if k == 0 { m.one() } else { prefix[k - 1] };
            inv[k + 1] = m.mul(run, before);
            run = m.mul(run, vals[k]);
        }
    }
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = (xs[i] - xs[i - j]) as usize;
            c[i] = m.mul(m.sub(c[i], c[i - 1]), inv[dx]);
        }
    }
    // Newton form to monomial basis
    let mut poly = vec![c[n - 1]];
    for i in (0..n - 1).rev() {
        let xi = m.to_mont(xs[i]);
        let mut next = vec![0u64; poly.len() + 1];
        for (k, &a) in poly.iter().enumerate() {
            next[k + 1] = m.add(next[k + 1], a);
            next[k] = m.sub(next[k], m.mul(a, xi));
        }
        next[0] = m.add(next[0], c[i]);
        poly = next;
    }
    poly
}

/// 1-norm of an integer polynomial.
fn norm1(p: &Poly<BigInt>) -> BigUint {
    p.coeffs()
        .iter()
        .fold(BigUint::zero(), |s, c| s + c.magnitude())
}

/// Rigorous bound on every coefficient of `Res_x(f, g)`: the product over
/// Sylvester rows of the summed 1-norms of their entries.
pub fn resultant_coefficient_bound(f: &Poly<Poly<BigInt>>, g: &Poly<Poly<BigInt>>) -> BigUint {
    let row = |p: &Poly<Poly<BigInt>>| p.coeffs().iter().fold(BigUint::zero(), |s, c| s + norm1(c));
    let m = f.degree().unwrap_or(0) as u32;
    let n = g.degree().unwrap_or(0) as u32;
    num_traits::pow(row(f), n as usize) * num_traits::pow(row(g), m as usize)
}

fn eval_mod(m: &Modulus, c: &[u64], t: u64) -> u64 {
    let tm = m.to_mont(t);
    c.iter().rev().fold(0, |acc, &a| m.add(m.mul(acc, tm), a))
}

/// One prime's image of `Res_x(f, g)` as Montgomery-free residues.
fn resultant_image(
    p: u64,
    f: &[Vec<BigInt>],
    g: &[Vec<BigInt>],
    points: usize,
) -> Option<Vec<u64>> {
    let m = Modulus::new(p);
    let red = |c: &[Vec<BigInt>]| -> Vec<Vec<u64>> {
        c.iter().map(|v| v.iter().map(|a| m.reduce(a)).collect()).collect()
    };
    let (fr, gr) = (red(f), red(g));
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    let mut t = 0u64;
    while xs.len() < points {
        let fe: Vec<u64> = fr.iter().map(|c| eval_mod(&m, c, t)).collect();
        let ge: Vec<u64> = gr.iter().map(|c| eval_mod(&m, c, t)).collect();
        // only points where both leading coefficients survive
        if *fe.last()? != 0 && *ge.last()? != 0 {
            xs.push(t);
            ys.push(resultant_mod(&m, &fe, &ge));
        }
        t += 1;
        if t > (points as u64) * 4 + 64 {
            return None;
        }
    }
    let coeffs = interpolate_mod(&m, &xs, &ys);
    Some(coeffs.into_iter().map(|c| m.from_mont(c)).collect())
}

/// Exact `Res_x(f, g) ∈ ℤ[t]` for `f, g ∈ ℤ[t][x]` (outer variable x).
pub fn resultant_param(
    f: &Poly<Poly<BigInt>>,
    g: &Poly<Poly<BigInt>>,
    exec: Execution,
) -> Result<Poly<BigInt>, AlgebraError> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(AlgebraError::ZeroPolynomial);
    };
    let tdeg = |p: &Poly<Poly<BigInt>>| p.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let deg_bound = dg * tdeg(f) + df * tdeg(g);
    let points = deg_bound + 1;
    let bound = resultant_coefficient_bound(f, g);
    let need_bits = bound.bits() + 2;
    let dense = |p: &Poly<Poly<BigInt>>| -> Vec<Vec<BigInt>> {
        p.coeffs().iter().map(|c| c.coeffs().to_vec()).collect()
    };
    let (fd, gd) = (dense(f), dense(g));

    let mut primes = Vec::new();
    let mut bits = 0u64;
    let candidates = primes_below_2_62((need_bits / 61 + 8) as usize);
    for &p in &candidates {
        if bits >= need_bits {
            break;
        }
        primes.push(p);
        bits += 61;
    }
    let images: Vec<Option<Vec<u64>>> = exec.map(&primes, |&p| resultant_image(p, &fd, &gd, points));

    let mut acc: Vec<BigInt> = vec![BigInt::zero(); points];
    let mut modulus = BigInt::one();
    for (&p, img) in primes.iter().zip(images) {
        let img = img.ok_or(AlgebraError::UnluckyPrime(p))?;
        let pb = BigInt::from(p);
        let minv = modulus
            .mod_floor(&pb)
            .modpow(&BigInt::from(p - 2), &pb);
        for (a, &r) in acc.iter_mut().zip(&img) {
            let cur = a.mod_floor(&pb);
            let t = ((BigInt::from(r) - cur) * &minv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    for a in acc.iter_mut() {
        if *a > half {
            *a -= &modulus;
        }
    }
    let out = Poly::new(acc);

    // independent check with a prime not used in the lift
    let spare = candidates[primes.len()];
    if let Some(img) = resultant_image(spare, &fd, &gd, points) {
        let pb = BigInt::from(spare);
        for (i, &r) in img.iter().enumerate() {
            if out.coeff(i).mod_floor(&pb) != BigInt::from(r) {
                return Err(AlgebraError::InexactDivision);
            }
        }
    }
    Ok(out)
}

/// Exact discriminant in x of `f ∈ ℤ[t][x]`, as an element of ℤ[t].
pub fn discriminant_param(f: &Poly<Poly<BigInt>>, exec: Execution) -> Result<Poly<BigInt>, AlgebraError> {
    let n = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Err(AlgebraError::Degree("discriminant of a constant"));
    }
    let res = resultant_param(f, &f.derivative(), exec)?;
    let d = res
        .div_exact_poly(f.lc().unwrap())
        .ok_or(AlgebraError::InexactDivision)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}
