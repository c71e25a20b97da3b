//! Incidence pairs `(λ, μ)` (torus fixed points of `S^[n,n+1]`), the
//! marked-cell calculus behind the hook products `h(λ,μ)` and `h₊(λ,μ)`,
//! equivariant Euler classes and Betti numbers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{consistency, domain, Error, Result};
use crate::partitions::{
    canonical_generators, enumerate_partitions, hook_length, hook_product, step_length, Cell, Corner,
    Partition,
};
use crate::scalar::{as_integer, Scalar};

/// A pair `(λ, μ)` with `|μ| = |λ| + 1` and `D_μ = D_λ ∪ {one addable corner}`.
///
/// Ordered lexicographically by `(λ, μ)`, which is a linear extension of
/// the product dominance order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct IncidencePair {
    lambda: Partition,
    mu: Partition,
}

#[derive(Deserialize)]
struct RawPair {
    lambda: Partition,
    mu: Partition,
}

impl TryFrom<RawPair> for IncidencePair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        IncidencePair::new(raw.lambda, raw.mu)
    }
}

impl fmt::Display for IncidencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.mu)
    }
}

impl IncidencePair {
    pub fn new(lambda: Partition, mu: Partition) -> Result<Self> {
        let added = added_cell(&lambda, &mu)
            .ok_or_else(|| Error::Domain(format!("({lambda}, {mu}) is not an incidence pair")))?;
        debug_assert_eq!(lambda.add_cell(added).as_ref(), Some(&mu));
        Ok(IncidencePair { lambda, mu })
    }

    /// The pair obtained by adding the corner `c` to `λ`.
    pub fn from_corner(lambda: &Partition, c: Cell) -> Result<Self> {
        match lambda.add_cell(c) {
            Some(mu) => Ok(IncidencePair {
                lambda: lambda.clone(),
                mu,
            }),
            None => domain(format!("cell ({}, {}) is not addable to {lambda}", c.row, c.col)),
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// `n = |λ|`.
    pub fn degree(&self) -> usize {
        self.lambda.size()
    }

    /// The cell `D_μ ∖ D_λ`.
    pub fn added_cell(&self) -> Cell {
        added_cell(&self.lambda, &self.mu).expect("validated pair")
    }

    /// The distinguished value `i`: the part of `λ` that `μ` increments
    /// (`0` when `μ` appends a part `1`).
    pub fn distinguished(&self) -> usize {
        self.added_cell().col
    }
}

fn added_cell(lambda: &Partition, mu: &Partition) -> Option<Cell> {
    if mu.size() != lambda.size() + 1 || mu.len() < lambda.len() {
        return None;
    }
    let row = (0..mu.len()).find(|&r| mu.part(r) != lambda.part(r))?;
    let cell = Cell::new(row, lambda.part(row));
    (lambda.add_cell(cell).as_ref() == Some(mu)).then_some(cell)
}

/// All incidence pairs with `|λ| = n`: `λ` in reverse-lexicographic order,
/// then the added corner from top-right to bottom-left.
pub fn enumerate_incidence_pairs(n: usize) -> Vec<IncidencePair> {
    enumerate_partitions(n)
        .into_iter()
        .flat_map(|lambda| {
            canonical_generators(&lambda)
                .into_iter()
                .map(move |c| IncidencePair::from_corner(&lambda, c.cell).expect("corner"))
        })
        .collect()
}

/// `μ^{(i)}`: `μ` with one part `i` replaced by `i − 1` (dropped when `i = 1`).
pub fn derive_lambda(mu: &Partition, i: usize) -> Result<Partition> {
    if i == 0 || mu.multiplicity(i) == 0 {
        return domain(format!("{mu} has no part equal to {i}"));
    }
    Ok(mu.replace_part(i, i - 1).expect("part present"))
}

/// Index `k` of the canonical generator of `λ` that `μ` adds.
pub fn k_index(p: &IncidencePair) -> usize {
    let added = p.added_cell();
    canonical_generators(p.lambda())
        .iter()
        .position(|c| c.cell == added)
        .expect("added cell is a canonical generator")
}

/// Marked cells `□_{k,j}` and `□′_{k,j}` for `j ≠ k`; entry `k` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCells {
    pub k: usize,
    pub sq: Vec<Option<Cell>>,
    pub sqp: Vec<Option<Cell>>,
}

pub fn marked_cells(p: &IncidencePair) -> MarkedCells {
    let gens = canonical_generators(p.lambda());
    let k = k_index(p);
    let ak = gens[k].cell;
    let mut sq = vec![None; gens.len()];
    let mut sqp = vec![None; gens.len()];
    for (j, g) in gens.iter().enumerate() {
        if j < k {
            let pj = g.p.expect("corners before the last have a vertical gap");
            sq[j] = Some(Cell::new(g.cell.row, ak.col));
            sqp[j] = Some(Cell::new(g.cell.row + pj - 1, ak.col));
        } else if j > k {
            let qj = g.q.expect("corners after the first have a horizontal gap");
            sq[j] = Some(Cell::new(ak.row, g.cell.col));
            sqp[j] = Some(Cell::new(ak.row, g.cell.col + qj - 1));
        }
    }
    MarkedCells { k, sq, sqp }
}

fn hook(lambda: &Partition, c: Cell) -> usize {
    hook_length(lambda, c).expect("marked cells lie inside the diagram")
}

fn marked_factor(p: &IncidencePair, marks: &MarkedCells, j: usize) -> Scalar {
    let h = hook(p.lambda(), marks.sq[j].expect("j != k"));
    let hp = hook(p.lambda(), marks.sqp[j].expect("j != k"));
    Scalar::new(BigInt::from(1 + h), BigInt::from(hp))
}

fn integral(value: Scalar, what: &str, p: &IncidencePair) -> Result<BigInt> {
    match as_integer(&value) {
        Some(v) if v.is_positive() => Ok(v),
        _ => consistency(format!("{what}{p} = {value} is not a positive integer")),
    }
}

/// `h(λ,μ) = h(λ)² ∏_{j≠k} (1 + h(□_{k,j})) / h(□′_{k,j})`.
pub fn h_pair(p: &IncidencePair) -> Result<BigInt> {
    let marks = marked_cells(p);
    let hl = Scalar::from_integer(hook_product(p.lambda()));
    let value = (0..marks.sq.len())
        .filter(|&j| j != marks.k)
        .fold(&hl * &hl, |acc, j| acc * marked_factor(p, &marks, j));
    integral(value, "h", p)
}

/// `h₊(λ,μ) = h(λ) ∏_{j>k} (1 + h(□_{k,j})) / h(□′_{k,j})`.
pub fn h_plus(p: &IncidencePair) -> Result<BigInt> {
    let marks = marked_cells(p);
    let value = (marks.k + 1..marks.sq.len())
        .fold(Scalar::from_integer(hook_product(p.lambda())), |acc, j| {
            acc * marked_factor(p, &marks, j)
        });
    integral(value, "h_+", p)
}

/// `e_T = sign · magnitude · t^{t_exponent}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerClass {
    pub sign: i8,
    #[serde(serialize_with = "crate::scalar::serialize_bigint")]
    pub magnitude: BigInt,
    pub t_exponent: usize,
}

impl EulerClass {
    pub fn coefficient(&self) -> BigInt {
        BigInt::from(self.sign) * &self.magnitude
    }
}

pub fn euler_class(p: &IncidencePair) -> Result<EulerClass> {
    let n = p.degree();
    Ok(EulerClass {
        sign: if (n + 1).is_multiple_of(2) { 1 } else { -1 },
        magnitude: h_pair(p)?,
        t_exponent: 2 * (n + 1),
    })
}

/// A multiset of torus weights (coefficients of `t`), kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightMultiset(Vec<i64>);

impl WeightMultiset {
    pub fn new(mut w: Vec<i64>) -> Self {
        w.sort_unstable();
        WeightMultiset(w)
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |a, &w| a * BigInt::from(w))
    }

    /// Product of the positive weights only.
    pub fn positive_product(&self) -> BigInt {
        self.0
            .iter()
            .filter(|&&w| w > 0)
            .fold(BigInt::one(), |a, &w| a * BigInt::from(w))
    }

    pub fn positive_count(&self) -> usize {
        self.0.iter().filter(|&&w| w > 0).count()
    }
}

/// `T_{ξ_λ} S^[n] = ⊕_□ (θ^{h(□)} ⊕ θ^{-h(□)})`.
pub fn tangent_weights_hilbert(lambda: &Partition) -> WeightMultiset {
    let mut w = Vec::with_capacity(2 * lambda.size());
    for c in lambda.cells() {
        let h = hook(lambda, c) as i64;
        w.push(h);
        w.push(-h);
    }
    WeightMultiset::new(w)
}

/// The four shapes of the kernel of `φ − ψ`, according to whether the
/// gaps `p_k`, `q_k` around the added corner equal one. A missing gap
/// (`q_0`, `p_m`) counts as infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentCase {
    /// `q_k = 1`, `p_k ≠ 1`
    OneA,
    /// `p_k = 1`, `q_k ≠ 1`
    OneB,
    /// `p_k ≠ 1`, `q_k ≠ 1`
    Two,
    /// `p_k = q_k = 1`
    Three,
}

pub fn tangent_case(corner: &Corner) -> TangentCase {
    match (corner.p == Some(1), corner.q == Some(1)) {
        (false, true) => TangentCase::OneA,
        (true, false) => TangentCase::OneB,
        (false, false) => TangentCase::Two,
        (true, true) => TangentCase::Three,
    }
}

/// Torus weights of `T_{(ξ_λ, ξ_μ)} S^[n,n+1]`, assembled from the weights
/// of `Hom(I_λ, R/I_λ)`, the basis `f_{α'_j, α_k}` of `ker ψ`, and the
/// weights of the `φ(f_{α,β})` summands that complete `im ψ`.
///
/// This is built from the tangent-space exact sequences alone and does not
/// use `h(λ,μ)`, so it serves as an independent check of [`euler_class`].
pub fn tangent_weights_incidence(p: &IncidencePair) -> Result<WeightMultiset> {
    let lambda = p.lambda();
    let gens = canonical_generators(lambda);
    let marks = marked_cells(p);
    let k = marks.k;
    let m = gens.len() - 1;
    let h = |j: usize| hook(lambda, marks.sq[j].expect("j != k")) as i64;
    let hp = |j: usize| hook(lambda, marks.sqp[j].expect("j != k")) as i64;

    let case = tangent_case(&gens[k]);
    let mut ker_psi: Vec<i64> = (0..k).map(|j| -1 - h(j)).collect();
    ker_psi.extend(match case {
        TangentCase::OneA => vec![1],
        TangentCase::OneB => vec![-1],
        TangentCase::Two => vec![-1, 1],
        TangentCase::Three => vec![],
    });
    ker_psi.extend((k + 1..=m).map(|j| 1 + h(j)));

    // φ(f_{α_j, β_j}) summands of Hom(I_μ, R/I_λ) outside im ψ
    let left_end = match case {
        TangentCase::OneB | TangentCase::Two => k,
        TangentCase::OneA | TangentCase::Three => k.saturating_sub(1),
    };
    let right_start = match case {
        TangentCase::OneA | TangentCase::Two => k + 1,
        TangentCase::OneB | TangentCase::Three => k + 2,
    };
    let removed = (0..left_end).map(|j| -hp(j)).chain((right_start..=m).map(hp));

    let mut hilb = tangent_weights_hilbert(lambda).0;
    for w in removed {
        match hilb.iter().position(|&x| x == w) {
            Some(pos) => {
                hilb.remove(pos);
            }
            None => return consistency(format!("weight {w} of a φ-summand is missing from T_λ for {p}")),
        }
    }
    hilb.extend(ker_psi);
    let out = WeightMultiset::new(hilb);
    if out.len() != 2 * (p.degree() + 1) || out.weights().contains(&0) {
        return consistency(format!("bad tangent weight list {:?} for {p}", out.0));
    }
    Ok(out)
}

/// Betti numbers `b_0, b_2, …, b_{2n}` of `S^[n,n+1]` for `n = 0..=max_n`,
/// read off `1/(1 − z²q) · ∏_{m≥1} 1/(1 − z^{2m−2} q^m)`.
pub fn betti_series(max_n: usize) -> Vec<Vec<u64>> {
    // coeff[n][k] = coefficient of q^n z^{2k}
    let mut coeff = vec![vec![0u64; max_n + 1]; max_n + 1];
    coeff[0][0] = 1;
    let mut factor = |q_step: usize, z_step: usize| {
        for n in q_step..=max_n {
            for k in z_step..=max_n {
                coeff[n][k] += coeff[n - q_step][k - z_step];
            }
        }
    };
    factor(1, 1);
    for m in 1..=max_n {
        factor(m, m - 1);
    }
    coeff
        .into_iter()
        .enumerate()
        .map(|(n, row)| row[..=n].to_vec())
        .collect()
}

/// Betti numbers of `S^[n,n+1]` from its cell decomposition: each
/// `μ ⊢ n+1` contributes `s(μ)` cells of real codimension `2(n+1−ℓ(μ))`.
pub fn betti_from_fixed_points(n: usize) -> Vec<u64> {
    let mut b = vec![0u64; n + 1];
    for mu in enumerate_partitions(n + 1) {
        b[n + 1 - mu.len()] += step_length(&mu) as u64;
    }
    b
}

/// `Σ_μ h(λ)²/h(λ,μ)` over incidence pairs with first entry `λ`.
pub fn hook_identity_lambda_sum(lambda: &Partition) -> Result<Scalar> {
    let hl = Scalar::from_integer(hook_product(lambda));
    let mut sum = Scalar::zero();
    for c in canonical_generators(lambda) {
        let p = IncidencePair::from_corner(lambda, c.cell)?;
        sum += &hl * &hl / Scalar::from_integer(h_pair(&p)?);
    }
    Ok(sum)
}

/// `Σ_λ h(μ)²/h(λ,μ)` over incidence pairs with second entry `μ`.
pub fn hook_identity_mu_sum(mu: &Partition) -> Result<Scalar> {
    let hm = Scalar::from_integer(hook_product(mu));
    let mut sum = Scalar::zero();
    for (i, _) in mu.distinct_parts() {
        let p = IncidencePair::new(derive_lambda(mu, i)?, mu.clone())?;
        sum += &hm * &hm / Scalar::from_integer(h_pair(&p)?);
    }
    Ok(sum)
}
