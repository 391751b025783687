//! Dynkin-diagram data for the `A_n` and `D_n` families: simple roots,
//! fundamental weights, Cartan matrices, reflections, group orders and
//! Weyl-orbit enumeration.
//!
//! Generator and weight indices are zero-based throughout: index `i`
//! corresponds to the diagram node usually labelled `i + 1`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactnum::{dot, ExactScalar, ExactVector};
use crate::linalg;

/// Largest rank accepted by [`LatticeSpec::new`]; keeps group orders and
/// closed-form counts inside `u128`.
pub const MAX_SUPPORTED_RANK: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Root,
    Weight,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "root" => Ok(Variant::Root),
            "weight" => Ok(Variant::Weight),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

/// Which lattice: family, rank and root/weight variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    family: Family,
    rank: usize,
    variant: Variant,
}

impl LatticeSpec {
    pub fn new(family: Family, rank: usize, variant: Variant) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::InvalidLattice("rank must be at least 1".into()));
        }
        if family == Family::D && rank < 3 {
            return Err(Error::InvalidLattice(format!(
                "D_n requires n >= 3, got {rank}"
            )));
        }
        if rank > MAX_SUPPORTED_RANK {
            return Err(Error::InvalidLattice(format!(
                "rank {rank} above supported maximum {MAX_SUPPORTED_RANK}"
            )));
        }
        Ok(LatticeSpec {
            family,
            rank,
            variant,
        })
    }

    pub fn root(family: Family, rank: usize) -> Result<Self, Error> {
        Self::new(family, rank, Variant::Root)
    }

    pub fn weight(family: Family, rank: usize) -> Result<Self, Error> {
        Self::new(family, rank, Variant::Weight)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Same family and rank with another variant.
    pub fn with_variant(&self, variant: Variant) -> Self {
        LatticeSpec { variant, ..*self }
    }

    /// `n + 1` for `A_n`, `n` for `D_n`.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::D => self.rank,
        }
    }

    pub(crate) fn require_root(&self) -> Result<(), Error> {
        if self.variant != Variant::Root {
            return Err(Error::VariantMismatch {
                expected: Variant::Root,
            });
        }
        Ok(())
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::D => "D",
        };
        let star = match self.variant {
            Variant::Root => "",
            Variant::Weight => "*",
        };
        write!(f, "{fam}{}{star}", self.rank)
    }
}

/// Dynkin labels `(c_1, …, c_n)` of `Σ c_i ω_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightCoord {
    coeffs: Vec<u32>,
}

impl WeightCoord {
    pub fn new(coeffs: Vec<u32>) -> Self {
        WeightCoord { coeffs }
    }

    /// The fundamental weight `ω_{i+1}` of a rank-`n` diagram.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        WeightCoord { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Dynkin labels of a vector: `c_i = (v, α_i)`. Fails when a label is
    /// negative or not an integer.
    pub fn from_vector(spec: &LatticeSpec, v: &ExactVector) -> Result<Self, Error> {
        let coeffs = simple_roots(spec)
            .iter()
            .map(|a| {
                let c = dot(v, a)?;
                c.to_i64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::InvalidWeight(format!("label {c:?} of {v}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightCoord { coeffs })
    }

    pub fn to_vector(&self, spec: &LatticeSpec) -> Result<ExactVector, Error> {
        if self.coeffs.len() != spec.rank() {
            return Err(Error::DimensionMismatch {
                expected: spec.rank(),
                found: self.coeffs.len(),
            });
        }
        let weights = fundamental_weights(spec);
        let mut v = ExactVector::zeros(spec.ambient_dim());
        for (c, w) in self.coeffs.iter().zip(&weights) {
            if *c != 0 {
                v = &v + &w.scale(&ExactScalar::from_integer(*c as i64));
            }
        }
        Ok(v)
    }
}

impl fmt::Display for WeightCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for WeightCoord {
    type Err = Error;

    /// Comma-separated labels, e.g. `1,0,0,1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let coeffs = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(s.into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightCoord { coeffs })
    }
}

/// Orbit seed `scale · Σ c_i ω_i`; the scale admits the rational holes of
/// the weight lattices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitSeed {
    pub weight: WeightCoord,
    pub scale: ExactScalar,
}

impl OrbitSeed {
    pub fn unit(weight: WeightCoord) -> Self {
        OrbitSeed {
            weight,
            scale: ExactScalar::one(),
        }
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        Self::unit(WeightCoord::fundamental(rank, i))
    }

    pub fn to_vector(&self, spec: &LatticeSpec) -> Result<ExactVector, Error> {
        Ok(self.weight.to_vector(spec)?.scale(&self.scale))
    }
}

/// Cartan matrix `C_ij = 2(α_i,α_j)/(α_j,α_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn determinant(&self) -> ExactScalar {
        linalg::determinant(&self.as_exact())
    }

    pub fn as_exact(&self) -> Vec<Vec<ExactScalar>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_integer(x)).collect())
            .collect()
    }

    /// Diagram adjacency: nodes `i ≠ j` joined when `C_ij ≠ 0`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[i][j] != 0
    }
}

pub fn cartan_matrix(spec: &LatticeSpec) -> CartanMatrix {
    let roots = simple_roots(spec);
    let entries = roots
        .iter()
        .map(|ai| {
            roots
                .iter()
                .map(|aj| {
                    let num = &dot(ai, aj).expect("roots share a dimension")
                        * &ExactScalar::from_integer(2);
                    let den = dot(aj, aj).expect("roots share a dimension");
                    (&num / &den).to_i64().expect("Cartan entries are integers")
                })
                .collect()
        })
        .collect();
    CartanMatrix { entries }
}

/// Simple roots in the `l_i` basis: `α_i = l_i − l_{i+1}`, plus
/// `α_n = l_{n−1} + l_n` for `D_n`.
pub fn simple_roots(spec: &LatticeSpec) -> Vec<ExactVector> {
    simple_roots_int(spec)
        .iter()
        .map(|r| ExactVector::from_integers(r))
        .collect()
}

pub(crate) fn simple_roots_int(spec: &LatticeSpec) -> Vec<Vec<i64>> {
    let n = spec.rank();
    let dim = spec.ambient_dim();
    let mut roots = Vec::with_capacity(n);
    let simple = |i: usize, j: usize, sj: i64| {
        let mut r = vec![0i64; dim];
        r[i] = 1;
        r[j] = sj;
        r
    };
    match spec.family() {
        Family::A => {
            for i in 0..n {
                roots.push(simple(i, i + 1, -1));
            }
        }
        Family::D => {
            for i in 0..n - 1 {
                roots.push(simple(i, i + 1, -1));
            }
            roots.push(simple(n - 2, n - 1, 1));
        }
    }
    roots
}

/// Fundamental weights, the basis dual to the simple roots.
pub fn fundamental_weights(spec: &LatticeSpec) -> Vec<ExactVector> {
    let n = spec.rank() as i64;
    let dim = spec.ambient_dim();
    match spec.family() {
        Family::A => (1..=n)
            .map(|i| {
                let j = n + 1 - i;
                let coords: Vec<i64> = (0..dim as i64)
                    .map(|k| if k < i { j } else { -i })
                    .collect();
                ExactVector::from_scaled(&coords, n + 1).expect("nonzero denominator")
            })
            .collect(),
        Family::D => {
            let n = n as usize;
            let mut ws = Vec::with_capacity(n);
            for i in 1..=n - 2 {
                let coords: Vec<i64> = (0..n).map(|k| if k < i { 1 } else { 0 }).collect();
                ws.push(ExactVector::from_integers(&coords));
            }
            let mut spin_minus = vec![1i64; n];
            spin_minus[n - 1] = -1;
            ws.push(ExactVector::from_scaled(&spin_minus, 2).expect("nonzero denominator"));
            ws.push(ExactVector::from_scaled(&vec![1i64; n], 2).expect("nonzero denominator"));
            ws
        }
    }
}

/// Highest root: `l_1 − l_{n+1}` for `A_n`, `l_1 + l_2` for `D_n`.
pub fn highest_root(spec: &LatticeSpec) -> ExactVector {
    let dim = spec.ambient_dim();
    let mut c = vec![0i64; dim];
    c[0] = 1;
    match spec.family() {
        Family::A => c[dim - 1] = -1,
        Family::D => c[1] = 1,
    }
    ExactVector::from_integers(&c)
}

/// Simple reflection `r_i v = v − (v, α_i) α_i` (all roots have norm² 2).
pub fn reflect(v: &ExactVector, i: usize, spec: &LatticeSpec) -> Result<ExactVector, Error> {
    if i >= spec.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: spec.rank(),
        });
    }
    let alpha = &simple_roots(spec)[i];
    let c = dot(v, alpha)?;
    if c.is_zero() {
        return Ok(v.clone());
    }
    Ok(v - &alpha.scale(&c))
}

/// Coxeter element `c = r_1 r_2 … r_n` applied to `v` (rightmost first).
pub fn coxeter_element(v: &ExactVector, spec: &LatticeSpec) -> Result<ExactVector, Error> {
    (0..spec.rank())
        .rev()
        .try_fold(v.clone(), |acc, i| reflect(&acc, i, spec))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `|W|`: `(n+1)!` for `A_n`, `2^{n−1} n!` for `D_n`.
pub fn group_order(spec: &LatticeSpec) -> u128 {
    let n = spec.rank();
    match spec.family() {
        Family::A => factorial(n + 1),
        Family::D => (1u128 << (n - 1)) * factorial(n),
    }
}

/// `h`: `n + 1` for `A_n`, `2(n − 1)` for `D_n`.
pub fn coxeter_number(spec: &LatticeSpec) -> usize {
    let n = spec.rank();
    match spec.family() {
        Family::A => n + 1,
        Family::D => 2 * (n - 1),
    }
}

/// Order of the parabolic subgroup generated by the listed nodes, by the
/// product formula over connected components of the induced subdiagram.
pub fn parabolic_order(spec: &LatticeSpec, nodes: &[usize]) -> u128 {
    let cartan = cartan_matrix(spec);
    let nodes: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut order = 1u128;
    for &start in &nodes {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &nodes {
                if cartan.adjacent(u, w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        let k = comp.len();
        let branched = comp
            .iter()
            .any(|&u| comp.iter().filter(|&&w| cartan.adjacent(u, w)).count() >= 3);
        order *= if branched {
            (1u128 << (k - 1)) * factorial(k)
        } else {
            factorial(k + 1)
        };
    }
    order
}

/// Stabilizer order of a dominant weight: the parabolic subgroup on the
/// nodes with zero label.
pub fn stabilizer_order(spec: &LatticeSpec, hw: &WeightCoord) -> u128 {
    let zeros: Vec<usize> = hw
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(i, _)| i)
        .collect();
    parabolic_order(spec, &zeros)
}

/// Closure of `seeds` under the reflections listed in `generators`,
/// deduplicated and in lexicographic order.
///
/// Enumeration runs breadth-first on a common integer scaling of the seeds;
/// `limit` caps the number of distinct vectors.
pub fn orbit_vectors(
    spec: &LatticeSpec,
    seeds: &[ExactVector],
    generators: &[usize],
    limit: Option<usize>,
) -> Result<Vec<ExactVector>, Error> {
    let dim = spec.ambient_dim();
    for s in seeds {
        if s.ambient_dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.ambient_dim(),
            });
        }
    }
    for &g in generators {
        if g >= spec.rank() {
            return Err(Error::IndexOutOfRange {
                index: g,
                rank: spec.rank(),
            });
        }
    }
    let roots = simple_roots_int(spec);
    let sparse: Vec<Vec<(usize, i64)>> = generators
        .iter()
        .map(|&g| {
            roots[g]
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (k, x))
                .collect()
        })
        .collect();
    let (scale, rows) = linalg::common_integer_frame(seeds);

    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        if seen.insert(r.clone()) {
            frontier.push(r);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for root in &sparse {
                let c: i64 = root.iter().map(|&(k, x)| v[k] * x).sum();
                if c == 0 {
                    continue;
                }
                let mut w = v.clone();
                for &(k, x) in root {
                    w[k] -= c * x;
                }
                if !seen.contains(&w) {
                    seen.insert(w.clone());
                    next.push(w);
                    if let Some(max) = limit {
                        if seen.len() > max {
                            return Err(Error::BudgetExceeded(format!(
                                "orbit exceeds {max} vectors"
                            )));
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let denom = scale;
    Ok(seen
        .into_iter()
        .map(|row| {
            ExactVector::new(
                row.into_iter()
                    .map(|x| {
                        ExactScalar::from_big(BigInt::from(x), denom.clone())
                            .expect("positive scale")
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Full Weyl orbit of a dominant weight.
pub fn orbit_of_vector(spec: &LatticeSpec, seed: &ExactVector) -> Result<Vec<ExactVector>, Error> {
    let all: Vec<usize> = (0..spec.rank()).collect();
    orbit_vectors(spec, core::slice::from_ref(seed), &all, None)
}

/// Orbit polytope `(hw)_{W}` of a dominant weight.
pub fn orbit(spec: &LatticeSpec, hw: &WeightCoord) -> Result<crate::polytope::OrbitPolytope, Error> {
    if hw.coeffs().len() != spec.rank() {
        return Err(Error::InvalidWeight(format!(
            "expected {} coefficients, found {}",
            spec.rank(),
            hw.coeffs().len()
        )));
    }
    if hw.is_trivial() {
        return Err(Error::InvalidWeight("zero weight".into()));
    }
    let label = format!("{hw}");
    crate::polytope::OrbitPolytope::from_seeds(spec, &label, alloc::vec![OrbitSeed::unit(hw.clone())])
}

/// Norm ordering helper: squared lengths of the fundamental weights.
pub fn weight_norms_squared(spec: &LatticeSpec) -> Vec<ExactScalar> {
    fundamental_weights(spec)
        .iter()
        .map(ExactVector::norm_squared)
        .collect()
}

/// Applies `word` (a sequence of generator indices, rightmost first) to `v`.
pub fn apply_word(v: &ExactVector, word: &[usize], spec: &LatticeSpec) -> Result<ExactVector, Error> {
    word.iter()
        .rev()
        .try_fold(v.clone(), |acc, &i| reflect(&acc, i, spec))
}
