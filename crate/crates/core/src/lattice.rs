//! Exponent-set combinatorics: the box E, the self-orthogonality region E0,
//! the hyperbolic sets Delta_t, the footprint weight, and the dimension
//! count V_b(m, a).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::HashMap;

/// The box E = {0..a_1-1} x ... x {0..a_m-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentBox {
    sizes: Vec<u64>,
}

/// A single exponent tuple inside a box.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u64>);

/// A lex-sorted set of distinct exponents of one box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    bx: ExponentBox,
    members: Vec<Exponent>,
}

impl ExponentBox {
    pub fn new(sizes: Vec<u64>) -> ExponentBox {
        assert!(!sizes.is_empty());
        ExponentBox { sizes }
    }

    pub fn dims(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn len(&self) -> u64 {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        e.0.len() == self.dims() && e.0.iter().zip(&self.sizes).all(|(&c, &a)| c < a)
    }

    /// All exponents of the box in lex order (leftmost coordinate most
    /// significant), matching the point ordering of the evaluation grid.
    pub fn iter_lex(&self) -> impl Iterator<Item = Exponent> + '_ {
        let n = self.len();
        (0..n).map(move |mut i| {
            let mut coords = vec![0u64; self.dims()];
            for j in (0..self.dims()).rev() {
                coords[j] = i % self.sizes[j];
                i /= self.sizes[j];
            }
            Exponent(coords)
        })
    }

    /// The footprint weight Dis(e) = prod (a_j - e_j).
    pub fn dis(&self, e: &Exponent) -> u64 {
        debug_assert!(self.contains(e));
        e.0.iter().zip(&self.sizes).map(|(&c, &a)| a - c).product()
    }
}

/// Lexicographic comparison with the leftmost coordinate most significant.
pub fn lex_compare(e: &Exponent, f: &Exponent) -> Result<Ordering> {
    if e.0.len() != f.0.len() {
        return Err(Error::DimensionMismatch(e.0.len(), f.0.len()));
    }
    Ok(e.0.cmp(&f.0))
}

impl ExponentSet {
    pub fn new(bx: ExponentBox, mut members: Vec<Exponent>) -> ExponentSet {
        assert!(members.iter().all(|e| bx.contains(e)));
        members.sort();
        members.dedup();
        ExponentSet { bx, members }
    }

    pub fn bx(&self) -> &ExponentBox {
        &self.bx
    }

    pub fn members(&self) -> &[Exponent] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.members.binary_search(e).is_ok()
    }

    pub fn is_subset_of(&self, other: &ExponentSet) -> bool {
        self.members.iter().all(|e| other.contains(e))
    }

    /// The footprint bound d_0 = min Dis(e) over the set.
    pub fn footprint_bound(&self) -> Result<u64> {
        self.members
            .iter()
            .map(|e| self.bx.dis(e))
            .min()
            .ok_or(Error::EmptySet)
    }
}

/// E_0: all exponents of the box with first coordinate at most (q-1)/2.
pub fn build_e0(bx: &ExponentBox, q: u64) -> ExponentSet {
    let cap = (q - 1) / 2;
    let members = bx.iter_lex().filter(|e| e.0[0] <= cap).collect();
    ExponentSet::new(bx.clone(), members)
}

/// Delta_t: all exponents with prod (e_j + 1) < t.
///
/// Membership only involves e_j <= t - 2, so the enumeration runs over the
/// sub-box [0, min(a_j - 1, t - 2)]^m instead of all of E. The clamp at the
/// box bound matters: sizes a_j < t - 1 do occur (for example a narrow third
/// coordinate) and simply truncate the set.
pub fn build_delta_t(bx: &ExponentBox, t: u64) -> Result<ExponentSet> {
    if t < 2 {
        return Err(Error::BadT { t, max: 0 });
    }
    let caps: Vec<u64> = bx.sizes().iter().map(|&a| a.min(t - 1)).collect();
    let mut members = Vec::new();
    let mut cur = vec![0u64; bx.dims()];
    loop {
        let prod: u64 = cur.iter().map(|&c| c + 1).product();
        if prod < t {
            members.push(Exponent(cur.clone()));
        }
        // odometer over the sub-box
        let mut j = bx.dims();
        loop {
            if j == 0 {
                return Ok(ExponentSet::new(bx.clone(), members));
            }
            j -= 1;
            cur[j] += 1;
            if cur[j] < caps[j] {
                break;
            }
            cur[j] = 0;
        }
    }
}

/// V_b(m, a) = #{(l_1..l_m) : 1 <= l_j <= b, prod l_j <= a}, via the
/// recursion V_b(m, a) = sum_{s=1}^{b} V_b(m-1, floor(a/s)), memoized.
pub fn v_count(b: u64, m: u32, a: u64) -> u64 {
    assert!(b >= 1 && m >= 1);
    let mut memo: HashMap<(u32, u64), u64> = HashMap::new();
    v_rec(b, m, a, &mut memo)
}

fn v_rec(b: u64, m: u32, a: u64, memo: &mut HashMap<(u32, u64), u64>) -> u64 {
    if a == 0 {
        return 0;
    }
    if m == 1 {
        return a.min(b);
    }
    if let Some(&v) = memo.get(&(m, a)) {
        return v;
    }
    let v = (1..=b).map(|s| v_rec(b, m - 1, a / s, memo)).sum();
    memo.insert((m, a), v);
    v
}

/// The m = 2 closed form: #Delta_t = sum_{j=1}^{t-1} floor((t-1)/j).
pub fn delta_size_m2_closed_form(t: u64) -> u64 {
    (1..=t.saturating_sub(1)).map(|j| (t - 1) / j).sum()
}

/// The m = 3 double sum, both bounds inclusive.
pub fn delta_size_m3_closed_form(t: u64) -> u64 {
    let mut total = 0;
    for alpha in 1..=t.saturating_sub(1) {
        for beta in 1..=(t - 1) / alpha {
            total += (t - 1) / (alpha * beta);
        }
    }
    total
}

/// #Delta_t for a box. Uses the V-recursion when every side equals
/// b = a_1, otherwise enumerates directly.
pub fn delta_size(bx: &ExponentBox, t: u64) -> Result<u64> {
    if t < 2 {
        return Err(Error::BadT { t, max: 0 });
    }
    let b = bx.sizes()[0];
    if bx.sizes().iter().all(|&a| a == b) {
        Ok(v_count(b, bx.dims() as u32, t - 1))
    } else {
        Ok(build_delta_t(bx, t)?.len() as u64)
    }
}
