//! Verification engines: Hermitian self-orthogonality (Gram matrix and the
//! number-theoretic pair predicate) and exact dual minimum distance at desk
//! scale.

use crate::catalog::QuantumCodeRecord;
use crate::codes::{
    build_grid, build_twist, generator_matrix, hermitian_ip, CodeParams, GeneratorMatrix,
    TwistVector,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{build_delta_t, Exponent, ExponentSet};
use serde::Serialize;

/// Sufficient condition for two twisted monomial evaluations to be
/// Hermitian-orthogonal, in terms of their first exponents only:
/// e1 = e1' mod q+1, or e1 != e1' mod (q+1)/2.
pub fn monomials_orthogonal(e1: u64, e1p: u64, q: u64) -> bool {
    let qp1 = q + 1;
    let half = qp1 / 2;
    e1 % qp1 == e1p % qp1 || e1 % half != e1p % half
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub gram_is_zero: bool,
    pub predicate_all_pairs: bool,
    /// Row pairs (by exponent) where the Gram entry is nonzero or the pair
    /// predicate gives no guarantee.
    pub offending_pairs: Vec<(Vec<u64>, Vec<u64>)>,
}

/// All pairwise Hermitian inner products of the generator rows.
pub fn check_self_orthogonal(
    field: &FieldSpec,
    delta: &ExponentSet,
    gm: &GeneratorMatrix,
    q: u64,
) -> Result<OrthogonalityReport> {
    let rows = gm.rows();
    let exps = delta.members();
    debug_assert_eq!(rows.len(), exps.len());
    let mut gram_is_zero = true;
    let mut predicate_all_pairs = true;
    let mut offending = Vec::new();
    for i in 0..rows.len() {
        for j in i..rows.len() {
            let ip = hermitian_ip(field, &rows[i], &rows[j])?;
            let pred = monomials_orthogonal(exps[i].0[0], exps[j].0[0], q);
            if !ip.is_zero() {
                gram_is_zero = false;
            }
            if !pred {
                predicate_all_pairs = false;
            }
            if !ip.is_zero() || !pred {
                offending.push((exps[i].0.clone(), exps[j].0.clone()));
            }
        }
    }
    Ok(OrthogonalityReport {
        gram_is_zero,
        predicate_all_pairs,
        offending_pairs: offending,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    ColumnDependence,
    BruteForce,
    FootprintOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceResult {
    pub value: u64,
    pub exact: bool,
    pub method: DistanceMethod,
    /// Elementary checks performed (rank checks or enumerated words).
    pub work: u64,
    /// Colex-least dependent column subset, when one was found.
    pub witness: Option<Vec<usize>>,
}

pub const DEFAULT_DISTANCE_BUDGET: u64 = 100_000_000;

/// Colex successor of an ascending index combination; false when exhausted.
fn next_colex(c: &mut [usize], n: usize) -> bool {
    let s = c.len();
    for i in 0..s {
        let bound = if i + 1 < s { c[i + 1] } else { n };
        if c[i] + 1 < bound {
            c[i] += 1;
            for (j, slot) in c.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Minimum distance of the Euclidean dual of the code generated by `gm`:
/// the smallest number of linearly dependent columns, by subset search in
/// colex order with increasing subset size.
pub fn dual_distance_by_columns(
    field: &FieldSpec,
    gm: &GeneratorMatrix,
    budget: u64,
) -> Result<DistanceResult> {
    if budget == 0 {
        return Err(Error::BadBudget);
    }
    let k = gm.num_rows();
    let n = gm.num_cols();
    let cols: Vec<Vec<FieldElement>> = (0..n).map(|j| gm.column(j)).collect();
    let mut work = 0u64;
    // any k+1 columns of a k-row matrix are dependent
    for s in 1..=(k + 1).min(n) {
        if s == k + 1 {
            return Ok(DistanceResult {
                value: s as u64,
                exact: true,
                method: DistanceMethod::ColumnDependence,
                work,
                witness: Some((0..s).collect()),
            });
        }
        let mut c: Vec<usize> = (0..s).collect();
        loop {
            if work >= budget {
                return Ok(DistanceResult {
                    value: s as u64,
                    exact: false,
                    method: DistanceMethod::ColumnDependence,
                    work,
                    witness: None,
                });
            }
            work += 1;
            let subset: Vec<Vec<FieldElement>> = c.iter().map(|&j| cols[j].clone()).collect();
            if crate::codes::rank(field, subset) < s {
                return Ok(DistanceResult {
                    value: s as u64,
                    exact: true,
                    method: DistanceMethod::ColumnDependence,
                    work,
                    witness: Some(c),
                });
            }
            if !next_colex(&mut c, n) {
                break;
            }
        }
    }
    unreachable!("the s = k+1 level always yields a dependent subset");
}

/// Exhaustive oracle: enumerate the Euclidean nullspace of `gm` and take the
/// minimum nonzero weight. Refuses instances with more than `limit` words.
pub fn brute_force_dual_distance(
    field: &FieldSpec,
    gm: &GeneratorMatrix,
    limit: u64,
) -> Result<DistanceResult> {
    let basis = euclidean_nullspace(field, gm);
    let dim = basis.len() as u32;
    let total = (field.size() as u128).pow(dim);
    if total > limit as u128 {
        return Err(Error::InstanceTooLarge(total));
    }
    let n = gm.num_cols();
    let mut best = n as u64 + 1;
    let mut coeffs = vec![FieldElement::ZERO; dim as usize];
    let mut work = 0u64;
    'outer: loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                break 'outer;
            }
            let next = coeffs[i].0 as u64 + 1;
            if next < field.size() {
                coeffs[i] = FieldElement(next as u32);
                break;
            }
            coeffs[i] = FieldElement::ZERO;
            i += 1;
        }
        work += 1;
        let mut word = vec![FieldElement::ZERO; n];
        for (c, b) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (w, &x) in word.iter_mut().zip(b) {
                *w = field.add(*w, field.mul(*c, x));
            }
        }
        let weight = word.iter().filter(|x| !x.is_zero()).count() as u64;
        if weight > 0 && weight < best {
            best = weight;
        }
    }
    Ok(DistanceResult {
        value: best,
        exact: true,
        method: DistanceMethod::BruteForce,
        work,
        witness: None,
    })
}

/// Basis of {x : G x = 0} for the Euclidean pairing, via reduced row
/// echelon form.
pub fn euclidean_nullspace(field: &FieldSpec, gm: &GeneratorMatrix) -> Vec<Vec<FieldElement>> {
    let mut rows: Vec<Vec<FieldElement>> = gm.rows().to_vec();
    let nrows = rows.len();
    let ncols = gm.num_cols();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for j in c..ncols {
            rows[r][j] = field.mul(rows[r][j], inv);
        }
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c];
            for j in c..ncols {
                let sub = field.mul(factor, rows[r][j]);
                rows[i][j] = field.sub(rows[i][j], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![FieldElement::ZERO; ncols];
        v[f] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(rows[row][f]);
        }
        basis.push(v);
    }
    basis
}

/// Build the code for (params, t), assert self-orthogonality, and report the
/// stabilizer parameters [[n, n - 2#Delta_t, >= t]]_q, optionally upgrading
/// the distance bound to the exact value via column search on the untwisted
/// generator matrix.
pub fn quantum_params(
    params: &CodeParams,
    t: u64,
    verify_distance: bool,
    budget: u64,
) -> Result<QuantumCodeRecord> {
    let q = params.q();
    let max_t = (q + 3) / 2;
    if t < 2 || t > max_t {
        return Err(Error::BadT { t, max: max_t });
    }
    let bx = params.bx();
    let delta = build_delta_t(&bx, t)?;
    let field = params.field();
    let grid = build_grid(params);
    let twist = build_twist(params);
    let gm = generator_matrix(field, &delta, &twist, &grid)?;
    let report = check_self_orthogonal(field, &delta, &gm, q)?;
    if !report.gram_is_zero {
        return Err(Error::SelfOrthogonalityViolated(
            report.offending_pairs.len(),
        ));
    }

    let n = params.n();
    let k = n - 2 * delta.len() as u64;
    let mut d_exact = None;
    let mut method = None;
    if verify_distance {
        // the dual-distance trick: compute on the untwisted matrix
        let ones = TwistVector::ones(field, n as usize);
        let gm1 = generator_matrix(field, &delta, &ones, &grid)?;
        let res = dual_distance_by_columns(field, &gm1, budget)?;
        if res.exact {
            d_exact = Some(res.value);
            method = Some(res.method);
        }
    }
    Ok(QuantumCodeRecord::build(
        q,
        params.lambda(),
        params.sizes().to_vec(),
        t,
        n,
        k,
        d_exact,
        method,
    ))
}

/// The lex-leading exponent of a polynomial given as (exponent, coeff)
/// pairs; used by the footprint property test.
pub fn leading_exponent<'a>(
    terms: impl Iterator<Item = (&'a Exponent, FieldElement)>,
) -> Option<Exponent> {
    terms
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| e.clone())
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::eval_monomial;
    use crate::lattice::{build_e0, ExponentBox};

    #[test]
    fn predicate_examples() {
        assert!(monomials_orthogonal(2, 2, 3));
        assert!(monomials_orthogonal(0, 1, 3)); // 0 != 1 mod 2
        assert!(!monomials_orthogonal(0, 2, 3)); // 0 = 2 mod 2, 0 != 2 mod 4
    }

    #[test]
    fn predicate_cross_checked_against_inner_products() {
        // predicate true => inner product of twisted evaluations is zero
        for (q, lambda) in [(3u64, 1u64), (3, 2), (5, 1), (5, 2), (7, 1), (7, 3)] {
            let params = CodeParams::new(q, lambda, &[]).unwrap();
            let f = params.field();
            let grid = build_grid(&params);
            let twist = build_twist(&params);
            let a1 = lambda * (q + 1);
            for e1 in 0..a1 {
                for e1p in 0..a1 {
                    let w1 = eval_monomial(f, &Exponent(vec![e1]), &twist, &grid);
                    let w2 = eval_monomial(f, &Exponent(vec![e1p]), &twist, &grid);
                    let ip = hermitian_ip(f, &w1, &w2).unwrap();
                    if monomials_orthogonal(e1, e1p, q) {
                        assert!(ip.is_zero(), "q={q} lambda={lambda} ({e1},{e1p})");
                    }
                }
            }
        }
    }

    #[test]
    fn q3_pair_0_2_is_actually_nonorthogonal() {
        let params = CodeParams::new(3, 1, &[]).unwrap();
        let f = params.field();
        let grid = build_grid(&params);
        let twist = build_twist(&params);
        let w0 = eval_monomial(f, &Exponent(vec![0]), &twist, &grid);
        let w2 = eval_monomial(f, &Exponent(vec![2]), &twist, &grid);
        assert!(!hermitian_ip(f, &w0, &w2).unwrap().is_zero());
    }

    #[test]
    fn gram_zero_for_delta_inside_e0() {
        let params = CodeParams::new(3, 1, &[]).unwrap();
        let f = params.field();
        let grid = build_grid(&params);
        let twist = build_twist(&params);
        let bx = params.bx();
        let delta = build_delta_t(&bx, 3).unwrap(); // {0, 1}
        let gm = generator_matrix(f, &delta, &twist, &grid).unwrap();
        let rep = check_self_orthogonal(f, &delta, &gm, 3).unwrap();
        assert!(rep.gram_is_zero);
        assert!(rep.offending_pairs.is_empty() == rep.gram_is_zero && rep.predicate_all_pairs);
    }

    #[test]
    fn untwisted_rows_self_products_nonzero() {
        let params = CodeParams::new(3, 1, &[]).unwrap();
        let f = params.field();
        let grid = build_grid(&params);
        let ones = TwistVector::ones(f, params.n() as usize);
        let bx = params.bx();
        let e0 = build_e0(&bx, 3);
        let gm = generator_matrix(f, &e0, &ones, &grid).unwrap();
        let rep = check_self_orthogonal(f, &e0, &gm, 3).unwrap();
        assert!(!rep.gram_is_zero);
        // every diagonal pair offends
        for e in e0.members() {
            assert!(rep
                .offending_pairs
                .iter()
                .any(|(a, b)| a == &e.0 && b == &e.0));
        }
    }

    #[test]
    fn full_e0_gram_sweep_small() {
        for q in [3u64, 5, 7] {
            let lambdas: Vec<u64> = (1..=q - 1).filter(|l| (q - 1) % l == 0).collect();
            for &lambda in &lambdas {
                for extra in [vec![], vec![3]] {
                    let params = match CodeParams::new(q, lambda, &extra) {
                        Ok(p) => p,
                        Err(_) => continue,
                    };
                    let f = params.field();
                    let grid = build_grid(&params);
                    let twist = build_twist(&params);
                    let bx = params.bx();
                    let e0 = build_e0(&bx, q);
                    let gm = generator_matrix(f, &e0, &twist, &grid).unwrap();
                    let rep = check_self_orthogonal(f, &e0, &gm, q).unwrap();
                    assert!(rep.gram_is_zero, "q={q} lambda={lambda} extra={extra:?}");
                }
            }
        }
    }

    #[test]
    fn zero_column_gives_distance_one() {
        let f = crate::field::field_for_q_squared(3).unwrap();
        let one = f.one();
        let gm = GeneratorMatrix::from_rows(vec![vec![one, FieldElement::ZERO, one]]);
        let res = dual_distance_by_columns(&f, &gm, 1000).unwrap();
        assert_eq!(res.value, 1);
        assert!(res.exact);
        assert_eq!(res.witness, Some(vec![1]));
    }

    #[test]
    fn all_ones_row_dual_distance_two() {
        let f = crate::field::field_for_q_squared(3).unwrap();
        let one = f.one();
        let gm = GeneratorMatrix::from_rows(vec![vec![one, one, one]]);
        let by_cols = dual_distance_by_columns(&f, &gm, 1000).unwrap();
        assert_eq!(by_cols.value, 2);
        let brute = brute_force_dual_distance(&f, &gm, 1_000_000).unwrap();
        assert_eq!(brute.value, 2);
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let params = CodeParams::new(3, 2, &[]).unwrap();
        let f = params.field();
        let grid = build_grid(&params);
        let ones = TwistVector::ones(f, params.n() as usize);
        let delta = build_delta_t(&params.bx(), 3).unwrap();
        let gm = generator_matrix(f, &delta, &ones, &grid).unwrap();
        let res = dual_distance_by_columns(f, &gm, 2).unwrap();
        assert!(!res.exact);
        assert!(res.work <= 2);
        assert!(dual_distance_by_columns(f, &gm, 0).is_err());
    }

    #[test]
    fn oracle_agreement_small_instances() {
        // small enough for nullspace enumeration: 9^(n-k) <= 10^6
        for (q, lambda, t) in [(3u64, 1u64, 2u64), (3, 1, 3), (3, 2, 3)] {
            let params = CodeParams::new(q, lambda, &[]).unwrap();
            let f = params.field();
            let grid = build_grid(&params);
            let ones = TwistVector::ones(f, params.n() as usize);
            let delta = build_delta_t(&params.bx(), t).unwrap();
            let gm = generator_matrix(f, &delta, &ones, &grid).unwrap();
            let a = dual_distance_by_columns(f, &gm, 1_000_000).unwrap();
            let b = brute_force_dual_distance(f, &gm, 1_000_000).unwrap();
            assert_eq!(a.value, b.value, "q={q} lambda={lambda} t={t}");
            assert!(a.exact && b.exact);
        }
    }

    #[test]
    fn quantum_params_table_rows() {
        // [[12, 8, 3]]_5 exact
        let p = CodeParams::new(5, 2, &[]).unwrap();
        let rec = quantum_params(&p, 3, true, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!((rec.n, rec.k), (12, 8));
        assert_eq!(rec.d_exact, Some(3));

        // [[4, 0, 3]]_3
        let p = CodeParams::new(3, 1, &[]).unwrap();
        let rec = quantum_params(&p, 3, true, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!((rec.n, rec.k), (4, 0));
        assert_eq!(rec.d_exact, Some(3));

        // [[64, 48, >=5]]_7 without distance verification
        let p = CodeParams::new(7, 1, &[8]).unwrap();
        let rec = quantum_params(&p, 5, false, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!((rec.n, rec.k, rec.d_bound), (64, 48, 5));
        assert_eq!(rec.d_exact, None);

        assert!(quantum_params(&p, 6, false, 1).is_err());
    }

    #[test]
    fn distance_trick_twisted_equals_untwisted() {
        for (q, lambda, extra, t) in [(3u64, 1u64, vec![], 3u64), (3, 2, vec![], 3), (5, 1, vec![3], 3)] {
            let params = CodeParams::new(q, lambda, &extra).unwrap();
            let f = params.field();
            let grid = build_grid(&params);
            let delta = build_delta_t(&params.bx(), t).unwrap();
            let twist = build_twist(&params);
            let ones = TwistVector::ones(f, params.n() as usize);
            let g_twisted = generator_matrix(f, &delta, &twist, &grid).unwrap();
            let g_plain = generator_matrix(f, &delta, &ones, &grid).unwrap();
            let a = dual_distance_by_columns(f, &g_twisted, 10_000_000).unwrap();
            let b = dual_distance_by_columns(f, &g_plain, 10_000_000).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn nullspace_is_orthogonal_to_rows() {
        let params = CodeParams::new(3, 1, &[2]).unwrap();
        let f = params.field();
        let grid = build_grid(&params);
        let ones = TwistVector::ones(f, params.n() as usize);
        let delta = build_delta_t(&params.bx(), 3).unwrap();
        let gm = generator_matrix(f, &delta, &ones, &grid).unwrap();
        let basis = euclidean_nullspace(f, &gm);
        assert_eq!(basis.len(), gm.num_cols() - gm.num_rows());
        for b in &basis {
            for row in gm.rows() {
                assert!(crate::codes::euclidean_ip(f, row, b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn colex_enumeration_order() {
        let mut c = vec![0usize, 1];
        let mut seen = vec![c.clone()];
        while next_colex(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3],
            ]
        );
    }
}
