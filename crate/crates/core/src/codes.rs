//! Construction of evaluation grids, the explicit block-alternating twist
//! vector, monomial evaluation, and generator matrices over GF(q^2).

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{Exponent, ExponentBox, ExponentSet};

/// Parameters of one code family instance: q, lambda | q-1, the box sizes
/// (a_1 = lambda(q+1) implicit), and the ordered evaluation sets A_2..A_m.
pub struct CodeParams {
    field: FieldSpec,
    q: u64,
    lambda: u64,
    /// a_1..a_m
    sizes: Vec<u64>,
    /// A_2..A_m as ordered sequences of distinct nonzero elements.
    eval_sets: Vec<Vec<FieldElement>>,
}

impl CodeParams {
    /// Canonical parameters: A_j for j >= 2 defaults to the first a_j powers
    /// of the primitive element.
    pub fn new(q: u64, lambda: u64, extra_sizes: &[u64]) -> Result<CodeParams> {
        let field = crate::field::field_for_q_squared(q)?;
        let eval_sets = extra_sizes
            .iter()
            .map(|&a| (0..a).map(|i| field.exp_of(i)).collect())
            .collect();
        Self::with_eval_sets(field, q, lambda, eval_sets)
    }

    /// Parameters with explicit evaluation sets A_2..A_m.
    pub fn with_eval_sets(
        field: FieldSpec,
        q: u64,
        lambda: u64,
        eval_sets: Vec<Vec<FieldElement>>,
    ) -> Result<CodeParams> {
        if q % 2 == 0 {
            return Err(Error::EvenCharacteristic(q));
        }
        if lambda == 0 || (q - 1) % lambda != 0 {
            return Err(Error::BadLambda { lambda, qm1: q - 1 });
        }
        let mut sizes = vec![lambda * (q + 1)];
        for (i, set) in eval_sets.iter().enumerate() {
            let j = i + 2;
            let a = set.len() as u64;
            if a < 2 || a > q * q - 1 {
                return Err(Error::BadBoxSize { j, a });
            }
            if set.iter().any(|x| x.is_zero()) {
                return Err(Error::BadEvalSet {
                    j,
                    reason: "contains zero".into(),
                });
            }
            let mut distinct = set.clone();
            distinct.sort();
            distinct.dedup();
            if distinct.len() != set.len() {
                return Err(Error::BadEvalSet {
                    j,
                    reason: "elements are not distinct".into(),
                });
            }
            sizes.push(a);
        }
        Ok(CodeParams {
            field,
            q,
            lambda,
            sizes,
            eval_sets,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> u64 {
        self.sizes.iter().product()
    }

    pub fn bx(&self) -> ExponentBox {
        ExponentBox::new(self.sizes.clone())
    }
}

/// The n evaluation points in lex order of their index tuples.
pub struct PointGrid {
    points: Vec<Vec<FieldElement>>,
}

impl PointGrid {
    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Coordinate j of P_alpha: the first coordinate walks the lambda(q+1)-th
/// roots of unity, the rest walk the configured A_j in their given order.
pub fn build_grid(params: &CodeParams) -> PointGrid {
    let f = params.field();
    let zeta = f
        .root_of_unity(params.sizes[0])
        .expect("lambda(q+1) divides q^2-1");
    let points = params
        .bx()
        .iter_lex()
        .map(|Exponent(alpha)| {
            let mut coords = Vec::with_capacity(alpha.len());
            coords.push(f.pow(zeta, alpha[0]));
            for (j, &aj) in alpha.iter().enumerate().skip(1) {
                coords.push(params.eval_sets[j - 1][aj as usize]);
            }
            coords
        })
        .collect();
    PointGrid { points }
}

/// The explicit twist vector: q+1 alternating blocks of length n/(q+1),
/// starting with zeta_{q^2-1}^{(q-1)/2}, then 1.
pub struct TwistVector {
    entries: Vec<FieldElement>,
}

impl TwistVector {
    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The all-ones twist of length n (the untwisted evaluation map).
    pub fn ones(field: &FieldSpec, n: usize) -> TwistVector {
        TwistVector {
            entries: vec![field.one(); n],
        }
    }
}

pub fn build_twist(params: &CodeParams) -> TwistVector {
    let f = params.field();
    let n = params.n();
    let q = params.q;
    debug_assert_eq!(n % (q + 1), 0);
    let block = (n / (q + 1)) as usize;
    let twisted = f.exp_of((q - 1) / 2);
    let one = f.one();
    let mut entries = Vec::with_capacity(n as usize);
    for b in 0..(q + 1) {
        let v = if b % 2 == 0 { twisted } else { one };
        entries.extend(std::iter::repeat(v).take(block));
    }
    TwistVector { entries }
}

/// Coordinate alpha of ev_v(X^e): v_alpha * prod_j (P_alpha)_j^{e_j}.
pub fn eval_monomial(
    field: &FieldSpec,
    e: &Exponent,
    twist: &TwistVector,
    grid: &PointGrid,
) -> Vec<FieldElement> {
    grid.points()
        .iter()
        .zip(twist.entries())
        .map(|(p, &v)| {
            let mut acc = v;
            for (coord, &exp) in p.iter().zip(&e.0) {
                acc = field.mul(acc, field.pow(*coord, exp));
            }
            acc
        })
        .collect()
}

/// Rows in lex order of Delta, columns in lex order of the grid.
pub struct GeneratorMatrix {
    rows: Vec<Vec<FieldElement>>,
}

impl GeneratorMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> GeneratorMatrix {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols));
        GeneratorMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

pub fn generator_matrix(
    field: &FieldSpec,
    delta: &ExponentSet,
    twist: &TwistVector,
    grid: &PointGrid,
) -> Result<GeneratorMatrix> {
    if delta.is_empty() {
        return Err(Error::EmptySet);
    }
    let rows = delta
        .members()
        .iter()
        .map(|e| eval_monomial(field, e, twist, grid))
        .collect();
    Ok(GeneratorMatrix { rows })
}

/// Rank by Gaussian elimination, consuming a row-major copy.
pub fn rank(field: &FieldSpec, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
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
        for i in (r + 1)..nrows {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = field.mul(rows[i][c], inv);
            for j in c..ncols {
                let sub = field.mul(factor, rows[r][j]);
                rows[i][j] = field.sub(rows[i][j], sub);
            }
        }
        r += 1;
    }
    r
}

/// Hermitian inner product sum a_i b_i^q.
pub fn hermitian_ip(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Result<FieldElement> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let mut acc = FieldElement::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add(acc, field.mul(x, field.conj(y)?));
    }
    Ok(acc)
}

/// Euclidean inner product sum a_i b_i.
pub fn euclidean_ip(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Result<FieldElement> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let mut acc = FieldElement::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add(acc, field.mul(x, y));
    }
    Ok(acc)
}

/// Coordinate-wise product.
pub fn star(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| field.mul(x, y)).collect())
}

/// The dual twist w_i = 1 / v_i^q.
pub fn dual_twist(field: &FieldSpec, v: &TwistVector) -> Result<TwistVector> {
    let entries = v
        .entries()
        .iter()
        .map(|&x| {
            if x.is_zero() {
                return Err(Error::ZeroInverse);
            }
            field.inv(field.conj(x)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistVector { entries })
}
