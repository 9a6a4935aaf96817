//! Exact arithmetic in F_{p^e} for odd primes p.
//!
//! Scalars are stored by their base-p integer encoding in the polynomial
//! basis (constant coefficient least significant); this encoding is the
//! canonical order used everywhere points or coefficients are sorted.
//! Multiplication, inversion and powering go through discrete-log tables,
//! addition through Zech logarithms, so every operation is a table lookup.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Hard cap on the number of field elements; the log tables are dense.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const LOG_ZERO: u32 = u32::MAX;

/// An element of F_{p^e}, stored by its base-p integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    /// The base-p integer encoding of this element.
    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible of degree e over F_p, length e+1, constant first.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed generator g; length q-1.
    exp: Vec<u32>,
    /// `log[enc]` for enc in 1..q; `log[0]` is the sentinel.
    log: Vec<u32>,
    /// `zech[z] = log(1 + g^z)`, sentinel when 1 + g^z = 0.
    zech: Vec<u32>,
}

/// A handle to F_{p^e}; cheap to clone and share.
#[derive(Clone)]
pub struct FiniteField {
    data: Arc<FieldData>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.data.p == other.data.p
            && self.data.e == other.data.e
            && self.data.modulus == other.data.modulus
    }
}

impl Eq for FiniteField {}

impl core::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "F_{{{}^{}}}", self.data.p, self.data.e)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial arithmetic over F_p, used only to bootstrap the tables.
mod fppoly {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for i in 0..=dm {
                let idx = shift + i;
                let sub = (lead as u64 * m[i] as u64) % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(a: &[u32], mut n: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u32];
        while n > 0 {
            if n & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            n >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic before taking remainders
            let lead = *b.last().unwrap();
            let inv = modinv(lead, p);
            let monic: Vec<u32> = b.iter().map(|&c| (c as u64 * inv as u64 % p as u64) as u32).collect();
            let r = rem(&a, &monic, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn modinv(a: u32, p: u32) -> u32 {
        // Fermat: a^(p-2)
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut n = p as u64 - 2;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            n >>= 1;
        }
        acc as u32
    }

    /// Rabin irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let e = (m.len() - 1) as u64;
        if e == 0 {
            return false;
        }
        let x = vec![0u32, 1];
        // x^(p^e) == x mod m
        let mut xq = rem(&x, m, p);
        for _ in 0..e {
            xq = powmod(&xq, p as u64, m, p);
        }
        let mut diff = sub(&xq, &x, p);
        trim(&mut diff);
        if !diff.is_empty() {
            return false;
        }
        // gcd(x^(p^(e/r)) - x, m) == 1 for every prime r | e
        for r in prime_divisors(e) {
            let mut xpe = rem(&x, m, p);
            for _ in 0..(e / r) {
                xpe = powmod(&xpe, p as u64, m, p);
            }
            let d = sub(&xpe, &x, p);
            let g = gcd(m, &d, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for i in 0..n {
            let x = *a.get(i).unwrap_or(&0) as u64;
            let y = *b.get(i).unwrap_or(&0) as u64;
            out[i] = ((x + p as u64 - y) % p as u64) as u32;
        }
        trim(&mut out);
        out
    }

    fn prime_divisors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }
}

impl FiniteField {
    /// Create F_{p^e}. When `modulus` is omitted and e > 1, the monic irreducible
    /// with the smallest base-p coefficient encoding is chosen, so the same
    /// (p, e) always names the same field.
    pub fn new(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::CompositeP { p });
        }
        if e == 0 {
            return Err(Error::BadParameters);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.saturating_mul(p);
            if q > MAX_FIELD_SIZE {
                return Err(Error::FieldTooLarge { q });
            }
        }
        let p = p as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus);
                }
                if e == 1 {
                    // any monic linear polynomial defines F_p itself, but we pin
                    // the canonical representative x
                    m.to_vec()
                } else if !fppoly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                } else {
                    m.to_vec()
                }
            }
            None => {
                if e == 1 {
                    vec![0, 1]
                } else {
                    Self::default_modulus(p, e)
                }
            }
        };
        Ok(Self::build(p, e, q as u32, modulus))
    }

    /// The lexicographically smallest (by coefficient encoding) monic irreducible
    /// of degree e over F_p.
    fn default_modulus(p: u32, e: u32) -> Vec<u32> {
        let mut count: u64 = 1;
        for _ in 0..e {
            count *= p as u64;
        }
        for enc in 0..count {
            let mut m = Vec::with_capacity(e as usize + 1);
            let mut v = enc;
            for _ in 0..e {
                m.push((v % p as u64) as u32);
                v /= p as u64;
            }
            m.push(1);
            if fppoly::is_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    fn build(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Self {
        let raw_mul = |a: u32, b: u32| -> u32 {
            let pa = enc_to_poly(a, p, e);
            let pb = enc_to_poly(b, p, e);
            poly_to_enc(&fppoly::mulmod(&pa, &pb, &modulus, p), p)
        };
        // find a generator of the cyclic group of order q-1
        let order = (q - 1) as u64;
        let mut factors = Vec::new();
        {
            let mut n = order;
            let mut d = 2u64;
            while d * d <= n {
                if n.is_multiple_of(d) {
                    factors.push(d);
                    while n.is_multiple_of(d) {
                        n /= d;
                    }
                }
                d += 1;
            }
            if n > 1 {
                factors.push(n);
            }
        }
        let raw_pow = |a: u32, mut n: u64| -> u32 {
            let mut acc = 1u32;
            let mut base = a;
            while n > 0 {
                if n & 1 == 1 {
                    acc = raw_mul(acc, base);
                }
                base = raw_mul(base, base);
                n >>= 1;
            }
            acc
        };
        let mut gen = 0;
        for cand in 2..q {
            if factors.iter().all(|&r| raw_pow(cand, order / r) != 1) {
                gen = cand;
                break;
            }
        }
        debug_assert!(gen != 0 || q == 2, "generator search failed");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![LOG_ZERO; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = raw_mul(cur, gen);
        }
        debug_assert_eq!(cur, 1);

        let add_enc = |a: u32, b: u32| -> u32 {
            let mut out = 0u32;
            let mut mult = 1u32;
            let (mut a, mut b) = (a, b);
            for _ in 0..e {
                let s = (a % p + b % p) % p;
                out += s * mult;
                mult *= p;
                a /= p;
                b /= p;
            }
            out
        };
        let mut zech = vec![LOG_ZERO; order as usize];
        for (z, slot) in zech.iter_mut().enumerate() {
            let s = add_enc(1, exp[z]);
            *slot = if s == 0 { LOG_ZERO } else { log[s as usize] };
        }

        FiniteField {
            data: Arc::new(FieldData { p, e, q, modulus, exp, log, zech }),
        }
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn degree(&self) -> u32 {
        self.data.e
    }

    /// Number of elements p^e.
    pub fn order(&self) -> u32 {
        self.data.q
    }

    /// Coefficients of the modulus polynomial, constant first, length e+1.
    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    pub fn zero(&self) -> Scalar {
        Scalar(0)
    }

    pub fn one(&self) -> Scalar {
        Scalar(1)
    }

    /// The scalar with the given base-p encoding.
    pub fn scalar(&self, encoding: u32) -> Scalar {
        assert!(encoding < self.data.q, "encoding out of range");
        Scalar(encoding)
    }

    /// The image of an integer under Z -> F_{p^e}.
    pub fn from_int(&self, n: i64) -> Scalar {
        let p = self.data.p as i64;
        Scalar(n.rem_euclid(p) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Scalar {
        assert_eq!(coords.len(), self.data.e as usize);
        let mut enc = 0u32;
        let mut mult = 1u32;
        for &c in coords {
            assert!(c < self.data.p);
            enc += c * mult;
            mult *= self.data.p;
        }
        Scalar(enc)
    }

    pub fn coords(&self, x: Scalar) -> Vec<u32> {
        let mut v = x.0;
        let mut out = Vec::with_capacity(self.data.e as usize);
        for _ in 0..self.data.e {
            out.push(v % self.data.p);
            v /= self.data.p;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.data.q).map(Scalar)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let d = &*self.data;
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let ord = d.q - 1;
        // a + b = a (1 + g^(lb - la))
        let z = d.zech[((lb + ord - la) % ord) as usize];
        if z == LOG_ZERO {
            Scalar(0)
        } else {
            Scalar(d.exp[((la + z) % ord) as usize])
        }
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        let d = &*self.data;
        if a.0 == 0 {
            return a;
        }
        let ord = d.q - 1;
        let half = ord / 2; // -1 = g^((q-1)/2) since p is odd
        Scalar(d.exp[((d.log[a.0 as usize] + half) % ord) as usize])
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        let d = &*self.data;
        if a.0 == 0 || b.0 == 0 {
            return Scalar(0);
        }
        let ord = d.q - 1;
        Scalar(d.exp[((d.log[a.0 as usize] + d.log[b.0 as usize]) % ord) as usize])
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        let d = &*self.data;
        if a.0 == 0 {
            return None;
        }
        let ord = d.q - 1;
        Some(Scalar(d.exp[((ord - d.log[a.0 as usize]) % ord) as usize]))
    }

    pub fn pow(&self, a: Scalar, n: u64) -> Scalar {
        let d = &*self.data;
        if a.0 == 0 {
            return if n == 0 { Scalar(1) } else { Scalar(0) };
        }
        let ord = (d.q - 1) as u64;
        let l = d.log[a.0 as usize] as u64;
        Scalar(d.exp[((l * (n % ord)) % ord) as usize])
    }

    /// The Frobenius automorphism x -> x^p.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.data.p as u64)
    }

    /// The unique y with y^p = x (Frobenius is bijective).
    pub fn pth_root(&self, a: Scalar) -> Scalar {
        let mut n = 1u64;
        for _ in 0..self.data.e - 1 {
            n *= self.data.p as u64;
        }
        self.pow(a, n)
    }

    /// Some y with y^2 = x when x is a square, preferring the candidate with
    /// the smaller encoding; None otherwise.
    pub fn square_root(&self, a: Scalar) -> Option<Scalar> {
        let d = &*self.data;
        if a.0 == 0 {
            return Some(Scalar(0));
        }
        let l = d.log[a.0 as usize];
        if !l.is_multiple_of(2) {
            return None;
        }
        let r = Scalar(d.exp[(l / 2) as usize]);
        let r2 = self.neg(r);
        Some(if r.0 <= r2.0 { r } else { r2 })
    }

    /// Evaluate `sum coeffs[i] x^i` with coefficients in this field.
    pub fn eval_poly(&self, coeffs: &[Scalar], x: Scalar) -> Scalar {
        let mut acc = Scalar(0);
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }
}

fn enc_to_poly(enc: u32, p: u32, e: u32) -> Vec<u32> {
    let mut v = enc;
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn poly_to_enc(poly: &[u32], p: u32) -> u32 {
    let mut enc = 0u32;
    let mut mult = 1u32;
    for &c in poly {
        enc += c * mult;
        mult *= p;
    }
    enc
}

/// An embedding F_{p^e} -> F_{p^(e*d)} determined by the smallest root of the
/// source modulus in the target field.
pub struct FieldEmbedding {
    source: FiniteField,
    target: FiniteField,
    /// powers beta^0 .. beta^(e-1) of the chosen root
    powers: Vec<Scalar>,
}

impl FieldEmbedding {
    /// Compute the canonical embedding; requires degree(source) | degree(target)
    /// and equal characteristic.
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Self> {
        if source.p() != target.p() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::FieldMismatch);
        }
        let e = source.degree() as usize;
        // modulus coefficients are in F_p, which sits inside the target
        let coeffs: Vec<Scalar> = source.modulus().iter().map(|&c| target.scalar(c)).collect();
        let mut beta = None;
        for cand in target.elements() {
            if target.eval_poly(&coeffs, cand).is_zero() {
                beta = Some(cand);
                break;
            }
        }
        let beta = beta.expect("source modulus splits in any extension of its splitting field");
        let mut powers = Vec::with_capacity(e);
        let mut cur = target.one();
        for _ in 0..e {
            powers.push(cur);
            cur = target.mul(cur, beta);
        }
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), powers })
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn map(&self, x: Scalar) -> Scalar {
        let coords = self.source.coords(x);
        let mut acc = self.target.zero();
        for (c, &pow) in coords.iter().zip(&self.powers) {
            acc = self.target.add(acc, self.target.mul(self.target.scalar(*c), pow));
        }
        acc
    }
}

/// The degree-d extension of a field, with the canonical embedding into it.
pub fn extend_field(field: &FiniteField, d: u32) -> Result<(FiniteField, FieldEmbedding)> {
    let target = FiniteField::new(field.p() as u64, field.degree() * d, None)?;
    let emb = FieldEmbedding::new(field, &target)?;
    Ok((target, emb))
}
