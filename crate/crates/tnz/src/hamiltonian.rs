//! Commuting local Hamiltonians built from exact Hermitian terms, projector
//! guesses for their ground spaces, and a solver for the non-negative
//! (frustration-free projector) fragment that reduces to a witness search on
//! a compiled network.

use num_rational::BigRational;
use num_traits::Signed;

use crate::budget::Budget;
use crate::certify::{search_nonneg_witness, NonNegWitness};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::network::index_space;
use crate::reduce::{compile_clh, digits};
use crate::scalar::Scalar;

/// One Hermitian term acting on a list of distinct qudits. The matrix is
/// indexed by big-endian multi-indices over the support in the order given
/// (rows are outputs, columns inputs).
#[derive(Clone, Debug)]
pub struct LocalTerm {
    support: Vec<usize>,
    matrix: Matrix,
}

impl LocalTerm {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// A Hamiltonian given as a sum of local terms on `num_qudits` qudits of
/// dimension `local_dim`, together with the exact threshold pair used when
/// handing derived questions to a decision oracle.
#[derive(Clone, Debug)]
pub struct HamiltonianInstance {
    num_qudits: usize,
    local_dim: usize,
    terms: Vec<LocalTerm>,
    alpha: BigRational,
    beta: BigRational,
}

impl HamiltonianInstance {
    /// Validates every term: non-empty support of distinct in-range qudits,
    /// matrix square with side `local_dim ^ support`, exactly Hermitian.
    /// Thresholds must satisfy `alpha >= beta >= 0`; how wide the gap must
    /// be is the caller's contract with its oracle.
    pub fn new(
        num_qudits: usize,
        local_dim: usize,
        terms: Vec<(Vec<usize>, Matrix)>,
        alpha: BigRational,
        beta: BigRational,
    ) -> Result<Self> {
        if num_qudits == 0 {
            return Err(Error::OutOfRange {
                what: "qudit count",
                got: 0,
                range: ">= 1".into(),
            });
        }
        if local_dim < 2 {
            return Err(Error::OutOfRange {
                what: "local dimension",
                got: local_dim as u128,
                range: ">= 2".into(),
            });
        }
        if beta.is_negative() || alpha < beta {
            return Err(Error::BadThresholds(format!(
                "need alpha >= beta >= 0, got alpha = {}, beta = {}",
                alpha, beta
            )));
        }
        let mut validated = Vec::with_capacity(terms.len());
        for (index, (support, matrix)) in terms.into_iter().enumerate() {
            let malformed = |reason: String| Error::MalformedTerm { index, reason };
            if support.is_empty() {
                return Err(malformed("support is empty".into()));
            }
            let mut seen = std::collections::BTreeSet::new();
            for &q in &support {
                if q >= num_qudits {
                    return Err(malformed(format!(
                        "qudit {} out of range for {} qudits",
                        q, num_qudits
                    )));
                }
                if !seen.insert(q) {
                    return Err(malformed(format!("qudit {} repeated", q)));
                }
            }
            let side = (local_dim as u128)
                .checked_pow(support.len() as u32)
                .ok_or_else(|| malformed("support too large".into()))?;
            if matrix.rows() as u128 != side || matrix.cols() as u128 != side {
                return Err(malformed(format!(
                    "matrix is {}x{}, expected {}x{}",
                    matrix.rows(),
                    matrix.cols(),
                    side,
                    side
                )));
            }
            if !matrix.is_hermitian() {
                return Err(malformed("matrix is not Hermitian".into()));
            }
            validated.push(LocalTerm { support, matrix });
        }
        Ok(HamiltonianInstance {
            num_qudits,
            local_dim,
            terms: validated,
            alpha,
            beta,
        })
    }

    pub fn num_qudits(&self) -> usize {
        self.num_qudits
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn terms(&self) -> &[LocalTerm] {
        &self.terms
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    /// Requires exactly one verified guess per term. Returns the guesses
    /// cloned and sorted by ascending term index.
    pub fn check_guesses(&self, guesses: &[ProjectorGuess]) -> Result<Vec<ProjectorGuess>> {
        if guesses.len() != self.terms.len() {
            return Err(Error::GuessRejected(format!(
                "expected one guess per term ({}), got {}",
                self.terms.len(),
                guesses.len()
            )));
        }
        let mut ordered: Vec<Option<ProjectorGuess>> = vec![None; self.terms.len()];
        for guess in guesses {
            if guess.term_index >= self.terms.len() {
                return Err(Error::MalformedGuess {
                    index: guess.term_index,
                    reason: format!("instance has {} terms", self.terms.len()),
                });
            }
            if ordered[guess.term_index].is_some() {
                return Err(Error::MalformedGuess {
                    index: guess.term_index,
                    reason: "term guessed twice".into(),
                });
            }
            if !verify_projector_guess(self, guess)? {
                return Err(Error::GuessRejected(format!(
                    "guess for term {} is not a projector onto an exact eigenspace",
                    guess.term_index
                )));
            }
            ordered[guess.term_index] = Some(guess.clone());
        }
        Ok(ordered.into_iter().map(|g| g.expect("all filled")).collect())
    }
}

/// A claimed spectral projector for one term: `projector` should satisfy
/// `P^2 = P`, `P^dagger = P`, and `H_i P = eigenvalue * P`.
#[derive(Clone, Debug)]
pub struct ProjectorGuess {
    pub term_index: usize,
    pub projector: Matrix,
    pub eigenvalue: BigRational,
}

/// Checks a guess exactly: idempotent, Hermitian, and an eigenprojector of
/// its term with the claimed eigenvalue. Shape mismatches are errors; a
/// well-formed guess that fails a property returns `Ok(false)`.
pub fn verify_projector_guess(
    instance: &HamiltonianInstance,
    guess: &ProjectorGuess,
) -> Result<bool> {
    let term = instance
        .terms()
        .get(guess.term_index)
        .ok_or_else(|| Error::MalformedGuess {
            index: guess.term_index,
            reason: format!("instance has {} terms", instance.terms().len()),
        })?;
    let p = &guess.projector;
    if p.rows() != term.matrix.rows() || p.cols() != term.matrix.cols() {
        return Err(Error::MalformedGuess {
            index: guess.term_index,
            reason: format!(
                "projector is {}x{}, term is {}x{}",
                p.rows(),
                p.cols(),
                term.matrix.rows(),
                term.matrix.cols()
            ),
        });
    }
    if !p.is_hermitian() {
        return Ok(false);
    }
    if !p.mul(p).sub(p).is_zero() {
        return Ok(false);
    }
    let scaled = p.scale(&Scalar::from_rational(guess.eigenvalue.clone()));
    Ok(term.matrix.mul(p).sub(&scaled).is_zero())
}

/// True when every pair of terms commutes exactly on the union of their
/// supports. Pairs with disjoint supports commute trivially and are skipped;
/// each overlapping pair is checked densely, so the union dimension must fit
/// in `budget.max_dense_dim`.
pub fn validate_commuting(instance: &HamiltonianInstance, budget: &Budget) -> Result<bool> {
    Ok(noncommuting_pair(instance, budget)?.is_none())
}

fn noncommuting_pair(
    instance: &HamiltonianInstance,
    budget: &Budget,
) -> Result<Option<(usize, usize)>> {
    let d = instance.local_dim();
    for i in 0..instance.terms().len() {
        for j in i + 1..instance.terms().len() {
            let si = instance.terms()[i].support();
            let sj = instance.terms()[j].support();
            let mut union: Vec<usize> = si.iter().chain(sj).copied().collect();
            union.sort_unstable();
            union.dedup();
            if union.len() == si.len() + sj.len() {
                continue;
            }
            let dim = (d as u128)
                .checked_pow(union.len() as u32)
                .ok_or(Error::TooLarge {
                    what: "joint support dimension",
                    size: u128::MAX,
                    limit: budget.max_dense_dim as u128,
                })?;
            if dim > budget.max_dense_dim as u128 {
                return Err(Error::TooLarge {
                    what: "joint support dimension",
                    size: dim,
                    limit: budget.max_dense_dim as u128,
                });
            }
            let a = embed_into(&instance.terms()[i].matrix, si, &union, d);
            let b = embed_into(&instance.terms()[j].matrix, sj, &union, d);
            if !a.mul(&b).sub(&b.mul(&a)).is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Pads `matrix` (acting on `support`, big-endian in support order) with
/// identity onto the sorted qudit list `target`, which must contain the
/// support.
fn embed_into(matrix: &Matrix, support: &[usize], target: &[usize], d: usize) -> Matrix {
    let k = support.len();
    let width = target.len();
    let dim = d.pow(width as u32);
    let pos: Vec<usize> = support
        .iter()
        .map(|q| target.binary_search(q).expect("support inside target"))
        .collect();
    let rest: Vec<usize> = (0..width).filter(|p| !pos.contains(p)).collect();
    let mut out = Matrix::zero(dim, dim);
    for r in 0..matrix.rows() {
        for c in 0..matrix.cols() {
            let value = matrix.get(r, c);
            if value.is_zero() {
                continue;
            }
            let rdig = digits(r, d, k);
            let cdig = digits(c, d, k);
            for assign in index_space(&vec![d; rest.len()]) {
                let mut row_dig = vec![0usize; width];
                let mut col_dig = vec![0usize; width];
                for (j, &p) in pos.iter().enumerate() {
                    row_dig[p] = rdig[j];
                    col_dig[p] = cdig[j];
                }
                for (i, &p) in rest.iter().enumerate() {
                    row_dig[p] = assign[i];
                    col_dig[p] = assign[i];
                }
                let ri = row_dig.iter().fold(0usize, |acc, &v| acc * d + v);
                let ci = col_dig.iter().fold(0usize, |acc, &v| acc * d + v);
                out.set(ri, ci, value.clone());
            }
        }
    }
    out
}

/// True when every term is an exact orthogonal projector (Hermitian is
/// guaranteed by construction, idempotence is checked here) whose entries
/// are all non-negative rationals.
pub fn is_stoquastic_sat(instance: &HamiltonianInstance) -> bool {
    instance.terms().iter().all(|term| {
        let m = &term.matrix;
        let nonneg = (0..m.rows())
            .all(|r| (0..m.cols()).all(|c| m.get(r, c).is_nonneg_real()));
        nonneg && m.mul(m).sub(m).is_zero()
    })
}

/// Dense reference for the product of the guessed projectors: embeds each
/// guess into the full space and multiplies them up in ascending term order
/// (term 0 applied first). This works directly on matrices and shares
/// nothing with the network compilation path, so the two can check each
/// other. The full dimension must fit in `budget.max_dense_dim`.
pub fn ground_space_projector_bruteforce(
    instance: &HamiltonianInstance,
    guesses: &[ProjectorGuess],
    budget: &Budget,
) -> Result<Matrix> {
    let ordered = instance.check_guesses(guesses)?;
    let d = instance.local_dim();
    let n = instance.num_qudits();
    let dim = (d as u128)
        .checked_pow(n as u32)
        .filter(|&dim| dim <= budget.max_dense_dim as u128)
        .ok_or(Error::TooLarge {
            what: "full space dimension",
            size: u128::MAX,
            limit: budget.max_dense_dim as u128,
        })?;
    let full: Vec<usize> = (0..n).collect();
    let mut product = Matrix::identity(dim as usize);
    for guess in &ordered {
        let support = instance.terms()[guess.term_index].support();
        let embedded = embed_into(&guess.projector, support, &full, d);
        product = embedded.mul(&product);
    }
    Ok(product)
}

/// A satisfying assignment for the non-negative projector fragment: the
/// basis string `x` whose compiled network is non-zero, plus the positive
/// product term inside that network.
#[derive(Clone, Debug)]
pub struct StoqWitness {
    pub x: Vec<usize>,
    pub witness: NonNegWitness,
}

/// Decides whether the product of the guessed ground-space projectors is
/// non-zero, for commuting instances whose terms are entrywise non-negative
/// projectors. For each candidate basis string (all of them in ascending
/// order, or just the supplied one) the instance is compiled to a network
/// and searched for a positive witness; the first hit is returned.
///
/// When `guesses` is `None` each term doubles as its own guess with
/// eigenvalue 1, which is exactly the frustration-free question "is some
/// state fixed by every term".
pub fn solve_stoquastic_sat(
    instance: &HamiltonianInstance,
    guesses: Option<&[ProjectorGuess]>,
    x: Option<&[usize]>,
    budget: &Budget,
) -> Result<Option<StoqWitness>> {
    if !is_stoquastic_sat(instance) {
        return Err(Error::NotStoquastic);
    }
    if let Some((i, j)) = noncommuting_pair(instance, budget)? {
        return Err(Error::NotCommuting(i, j));
    }
    let ordered = match guesses {
        Some(gs) => instance.check_guesses(gs)?,
        None => instance
            .terms()
            .iter()
            .enumerate()
            .map(|(i, term)| ProjectorGuess {
                term_index: i,
                projector: term.matrix.clone(),
                eigenvalue: BigRational::from_integer(1.into()),
            })
            .collect(),
    };

    let d = instance.local_dim();
    let n = instance.num_qudits();
    let candidates: Vec<Vec<usize>> = match x {
        Some(point) => vec![point.to_vec()],
        None => {
            let space = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if space > budget.max_labelings as u128 {
                return Err(Error::TooLarge {
                    what: "basis string space",
                    size: space,
                    limit: budget.max_labelings as u128,
                });
            }
            index_space(&vec![d; n]).collect()
        }
    };
    for candidate in candidates {
        let network = compile_clh(instance, &ordered, &candidate)?;
        if let Some(witness) = search_nonneg_witness(&network, budget)? {
            return Ok(Some(StoqWitness {
                x: candidate,
                witness,
            }));
        }
    }
    Ok(None)
}
