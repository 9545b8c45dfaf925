//! Exact table-based arithmetic in GF(p^k).
//!
//! Construction is canonical: the modulus is the lexicographically first
//! monic irreducible polynomial (coefficient sequence compared with the
//! constant term last) whose residue of X generates the multiplicative
//! group. The residue of X is the fixed primitive element; every root of
//! unity handed out is one of its powers, so twist vectors and generator
//! matrices are bit-identical across runs.

use crate::error::{Error, Result};

/// Size cap for the exp/log tables.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of a fixed [`FieldSpec`], stored as its canonical index.
///
/// The index encodes the residue polynomial c_0 + c_1 X + ... in base p:
/// `index = sum c_i p^i`. Index 0 is the zero element.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A fully constructed finite field GF(p^k) with exp/log tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    size: u64,
    /// Monic modulus, coefficient of X^i at position i, length k+1.
    modulus: Vec<u64>,
    /// exp[i] = index of g^i for 0 <= i < size-1.
    exp: Vec<u32>,
    /// log[index] for nonzero indices; log[0] is a sentinel.
    log: Vec<u32>,
    /// p^{k/2} when k is even, i.e. the q with this field = GF(q^2).
    subfield_order: Option<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

// --- dense polynomial arithmetic over GF(p), used only during construction ---

fn poly_trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod
}

/// Reduce `a` modulo the monic polynomial `f` in place.
fn poly_rem(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let df = f.len() - 1;
    while a.len() > df {
        let lead = *a.last().unwrap();
        let da = a.len() - 1;
        if lead != 0 {
            for i in 0..df {
                let sub = (lead * f[i]) % p;
                let pos = da - df + i;
                a[pos] = (a[pos] + p - sub) % p;
            }
        }
        a.pop();
        poly_trim(a);
        if a.is_empty() {
            break;
        }
    }
    poly_trim(a);
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    poly_rem(&mut b, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // make b monic
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = mod_inv(lead, p);
            for c in b.iter_mut() {
                *c = (*c * inv) % p;
            }
        }
        poly_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Rabin test: f of degree k is irreducible over GF(p) iff
/// X^{p^k} = X mod f and gcd(X^{p^{k/r}} - X, f) = 1 for every prime r | k.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    let x = vec![0u64, 1];
    for r in prime_factors(k as u64) {
        let e = p.pow(k / r as u32);
        let mut h = poly_powmod(&x, e, f, p);
        // h - x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        poly_trim(&mut h);
        let g = poly_gcd(f.to_vec(), h, p);
        if g.len() != 1 {
            return false;
        }
    }
    let mut h = poly_powmod(&x, p.pow(k), f, p);
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = (h[1] + p - 1) % p;
    poly_trim(&mut h);
    h.is_empty()
}

/// X has order p^k - 1 modulo f.
fn x_is_primitive(f: &[u64], p: u64, size: u64) -> bool {
    let x = vec![0u64, 1];
    let order = size - 1;
    for r in prime_factors(order) {
        let h = poly_powmod(&x, order / r, f, p);
        if h == vec![1u64] {
            return false;
        }
    }
    true
}

impl FieldSpec {
    /// Build the canonical GF(p^k).
    ///
    /// The modulus search runs in lexicographic order of the coefficient
    /// sequence (c_{k-1}, ..., c_1, c_0), so two calls always agree.
    pub fn make(p: u64, k: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(k >= 1, "extension degree must be >= 1");
        let size = p.checked_pow(k).filter(|&s| s <= MAX_FIELD_SIZE).ok_or(
            Error::FieldTooLarge(p.checked_pow(k).unwrap_or(u64::MAX)),
        )?;

        let modulus = if k == 1 {
            // X + c0 with residue -c0 primitive mod p; lex-first c0.
            let mut found = None;
            for c0 in 0..p {
                let g = (p - c0) % p;
                if g == 0 {
                    continue;
                }
                if prime_factors(p - 1)
                    .iter()
                    .all(|&r| mod_pow(g, (p - 1) / r, p) != 1)
                {
                    found = Some(vec![c0, 1]);
                    break;
                }
            }
            found.expect("a primitive root mod p always exists")
        } else {
            let mut found = None;
            let mut coeffs = vec![0u64; k as usize]; // (c_{k-1}, ..., c_0)
            'outer: loop {
                let mut f = vec![0u64; k as usize + 1];
                f[k as usize] = 1;
                for (i, &c) in coeffs.iter().enumerate() {
                    f[k as usize - 1 - i] = c;
                }
                if is_irreducible(&f, p) && x_is_primitive(&f, p, size) {
                    found = Some(f);
                    break 'outer;
                }
                // next coefficient sequence: constant term (last entry) is
                // least significant
                let mut pos = coeffs.len();
                loop {
                    if pos == 0 {
                        break 'outer; // exhausted: cannot happen, a primitive poly exists
                    }
                    pos -= 1;
                    coeffs[pos] += 1;
                    if coeffs[pos] < p {
                        break;
                    }
                    coeffs[pos] = 0;
                }
            }
            found.expect("a primitive polynomial of every degree exists")
        };

        // Build exp/log by repeated multiplication by X.
        let order = (size - 1) as usize;
        let mut exp = vec![0u32; order];
        let mut log = vec![u32::MAX; size as usize];
        let kk = k as usize;
        let mut cur = vec![0u64; kk];
        cur[0] = 1; // the element 1
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = Self::coeffs_to_index(&cur, p);
            *slot = idx;
            log[idx as usize] = i as u32;
            // multiply by X
            let carry = cur[kk - 1];
            for j in (1..kk).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if carry != 0 {
                for j in 0..kk {
                    let sub = carry * modulus[j] % p;
                    cur[j] = (cur[j] + p - sub) % p;
                }
            }
        }
        debug_assert_eq!(Self::coeffs_to_index(&cur, p), 1, "X must have order size-1");

        let subfield_order = if k % 2 == 0 { Some(p.pow(k / 2)) } else { None };

        Ok(FieldSpec {
            p,
            k,
            size,
            modulus,
            exp,
            log,
            subfield_order,
        })
    }

    fn coeffs_to_index(c: &[u64], p: u64) -> u32 {
        let mut idx = 0u64;
        for &ci in c.iter().rev() {
            idx = idx * p + ci;
        }
        idx as u32
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// q such that this field is GF(q^2), when the degree is even.
    pub fn subfield_order(&self) -> Option<u64> {
        self.subfield_order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.exp_of(0)
    }

    /// The fixed primitive element (the residue of X).
    pub fn generator(&self) -> FieldElement {
        self.exp_of(1)
    }

    /// g^i for any integer i (reduced mod size-1).
    pub fn exp_of(&self, i: u64) -> FieldElement {
        FieldElement(self.exp[(i % (self.size - 1)) as usize])
    }

    /// Discrete log of a nonzero element with respect to the generator.
    pub fn log_of(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as u64)
        }
    }

    fn digits(&self, a: FieldElement) -> Vec<u64> {
        let mut idx = a.0 as u64;
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!((a.0 as u64) < self.size && (b.0 as u64) < self.size);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut idx = 0u64;
        for i in (0..self.k as usize).rev() {
            idx = idx * self.p + (da[i] + db[i]) % self.p;
        }
        FieldElement(idx as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let da = self.digits(a);
        let mut idx = 0u64;
        for i in (0..self.k as usize).rev() {
            idx = idx * self.p + (self.p - da[i]) % self.p;
        }
        FieldElement(idx as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let la = self.log[a.0 as usize] as u64;
        let lb = self.log[b.0 as usize] as u64;
        self.exp_of(la + lb)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let la = self.log[a.0 as usize] as u64;
        Ok(self.exp_of(self.size - 1 - la))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { self.one() } else { FieldElement::ZERO };
        }
        let la = self.log[a.0 as usize] as u64;
        let ord = self.size - 1;
        self.exp_of((la % ord) * (e % ord) % ord)
    }

    /// Frobenius conjugation a -> a^q on GF(q^2).
    pub fn conj(&self, a: FieldElement) -> Result<FieldElement> {
        let q = self
            .subfield_order
            .ok_or(Error::NotQuadraticExtension(self.size))?;
        Ok(self.pow(a, q))
    }

    /// The canonical primitive t-th root of unity g^{(size-1)/t}.
    pub fn root_of_unity(&self, t: u64) -> Result<FieldElement> {
        let order = self.size - 1;
        if t == 0 || order % t != 0 {
            return Err(Error::NotARootOrder { t, order });
        }
        Ok(self.exp_of(order / t))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElement) -> Option<u64> {
        let la = self.log_of(a)?;
        let ord = self.size - 1;
        Some(ord / num_integer::gcd(ord, la))
    }

    /// All x in GF(q^2) with x^{q+1} = -1, by exhaustive scan,
    /// sorted by discrete log.
    pub fn solve_qplus1_power_eq_minus_one(&self) -> Result<Vec<FieldElement>> {
        let q = self
            .subfield_order
            .ok_or(Error::NotQuadraticExtension(self.size))?;
        if q % 2 == 0 {
            return Err(Error::EvenCharacteristic(q));
        }
        let minus_one = self.neg(self.one());
        let mut sols: Vec<FieldElement> = (1..self.size)
            .map(|i| FieldElement(i as u32))
            .filter(|&x| self.pow(x, q + 1) == minus_one)
            .collect();
        sols.sort_by_key(|&x| self.log[x.0 as usize]);
        Ok(sols)
    }
}

/// Convenience: GF(q^2) for a given odd prime power q.
pub fn field_for_q_squared(q: u64) -> Result<FieldSpec> {
    if q % 2 == 0 {
        return Err(Error::EvenCharacteristic(q));
    }
    let (p, s) = split_prime_power(q).ok_or(Error::NotPrime(q))?;
    FieldSpec::make(p, 2 * s)
}

/// Decompose a prime power q = p^s.
pub fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut s = 0u32;
    let mut m = q;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        s += 1;
    }
    Some((p, s))
}
