//! The quantization protocol: output states, projective measurements,
//! quantum expected payoffs, and mixed-strategy reproduction.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::games::{self, GameN, MixedProfile, Partition, PayoffVector};
use crate::kernel::{inner, su2_from_angles, tensor_apply, LocalOp, StateVector};

/// Orthogonality tolerance when building measurements.
pub const MEASUREMENT_ORTHO_TOL: f64 = 1e-8;
/// Rank tolerance: basis candidates below this residual norm are dropped.
pub const RANK_TOL: f64 = 1e-10;
/// Probability mass allowed to escape a measurement.
pub const LEFTOVER_TOL: f64 = 1e-8;

/// Each player's two pure-strategy operators.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorAssignment {
    pairs: Vec<(LocalOp, LocalOp)>,
}

impl OperatorAssignment {
    /// All entries must be unitary.
    pub fn new(pairs: Vec<(LocalOp, LocalOp)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("no players".into()));
        }
        for (i, (u1, u2)) in pairs.iter().enumerate() {
            for (tag, op) in [("first", u1), ("second", u2)] {
                let r = op.unitarity_residual();
                if r > crate::kernel::UNITARY_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "player {}'s {tag} strategy operator is not unitary (residual {r:.3e})",
                        i + 1
                    )));
                }
            }
        }
        Ok(OperatorAssignment { pairs })
    }

    /// The same strategy pair for every player.
    pub fn uniform(n: usize, u1: LocalOp, u2: LocalOp) -> Result<Self> {
        Self::new(vec![(u1, u2); n])
    }

    pub fn n_players(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(LocalOp, LocalOp)] {
        &self.pairs
    }

    /// Operator of `player` (1-based) for a strategy bit (0 = first).
    pub fn op_for(&self, player: usize, bit: usize) -> &LocalOp {
        let (u1, u2) = &self.pairs[player - 1];
        if bit == 0 {
            u1
        } else {
            u2
        }
    }

    /// Per-player v = u1† u2, the operator every output overlap depends on.
    pub fn reduced_ops(&self) -> Vec<LocalOp> {
        self.pairs
            .iter()
            .map(|(u1, u2)| u1.adjoint().mul(u2))
            .collect()
    }

    /// The operators chosen by the joint pure strategy of outcome k (1-based).
    pub fn ops_for_outcome(&self, outcome: usize) -> Vec<LocalOp> {
        let n = self.n_players();
        let bits = outcome - 1;
        (1..=n)
            .map(|player| *self.op_for(player, (bits >> (n - player)) & 1))
            .collect()
    }
}

/// All 2^N output states x_k |psi> in outcome-index order.
pub fn output_states(state: &StateVector, assignment: &OperatorAssignment) -> Result<Vec<StateVector>> {
    let n = state.n_players();
    if assignment.n_players() != n {
        return Err(Error::DimensionMismatch(format!(
            "assignment covers {} players, state has {}",
            assignment.n_players(),
            n
        )));
    }
    (1..=1usize << n)
        .map(|k| tensor_apply(&assignment.ops_for_outcome(k), state))
        .collect()
}

/// One projector of a measurement: an orthonormal basis of its range plus
/// the payoff class (outcome indices) it reports.
#[derive(Debug, Clone)]
pub struct MeasurementBlock {
    /// 1-based outcome indices forming this payoff class.
    pub outcomes: Vec<usize>,
    /// Orthonormal basis of the projector's range.
    pub basis: Vec<StateVector>,
}

impl MeasurementBlock {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Probability of this block for a (possibly unnormalized) output state.
    pub fn probability(&self, out: &StateVector) -> Result<f64> {
        let mut p = 0.0;
        for b in &self.basis {
            p += inner(b, out)?.norm_sqr();
        }
        Ok(p)
    }

    /// Dense projector matrix, for verification against the basis form.
    pub fn projector_matrix(&self, dim: usize) -> Vec<Vec<C64>> {
        let mut m = vec![vec![C64::new(0.0, 0.0); dim]; dim];
        for b in &self.basis {
            for (r, br) in b.amps().iter().enumerate() {
                for (c, bc) in b.amps().iter().enumerate() {
                    m[r][c] += br * bc.conj();
                }
            }
        }
        m
    }
}

/// A projective measurement labeled by payoff classes. Blocks that do not
/// span the whole space leave an implicit discard projector on the
/// complement; probability landing there fails the integrity check in
/// [`quantum_payoff`].
#[derive(Debug, Clone)]
pub struct Measurement {
    n_players: usize,
    blocks: Vec<MeasurementBlock>,
}

impl Measurement {
    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn blocks(&self) -> &[MeasurementBlock] {
        &self.blocks
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(MeasurementBlock::rank).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.total_rank() == 1usize << self.n_players
    }

    /// Per-block outcome probabilities for an output state.
    pub fn probabilities(&self, out: &StateVector) -> Result<Vec<f64>> {
        self.blocks.iter().map(|b| b.probability(out)).collect()
    }
}

/// Modified Gram-Schmidt with a rank tolerance; dependent vectors are
/// dropped rather than rejected.
fn orthonormalize(states: &[&StateVector], tol: f64) -> Vec<StateVector> {
    let mut basis: Vec<StateVector> = Vec::new();
    for s in states {
        let mut amps = s.amps().to_vec();
        // Two projection passes keep the basis orthonormal to working
        // precision even for nearly dependent inputs.
        for _ in 0..2 {
            for b in &basis {
                let mut proj = C64::new(0.0, 0.0);
                for (x, y) in b.amps().iter().zip(&amps) {
                    proj += x.conj() * y;
                }
                for (a, x) in amps.iter_mut().zip(b.amps()) {
                    *a -= proj * x;
                }
            }
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > tol {
            for a in &mut amps {
                *a /= norm;
            }
            basis.push(StateVector::from_amps_unchecked(s.n_players(), amps));
        }
    }
    basis
}

/// Rank-1 measurement discriminating every output state (full state
/// discrimination). Requires the outputs to be mutually orthonormal.
pub fn build_measurement_scr(outputs: &[StateVector]) -> Result<Measurement> {
    if outputs.is_empty() {
        return Err(Error::InvalidArgument("no output states".into()));
    }
    let n = outputs[0].n_players();
    if outputs.len() != 1usize << n {
        return Err(Error::DimensionMismatch(format!(
            "expected {} outputs, got {}",
            1usize << n,
            outputs.len()
        )));
    }
    let mut worst = 0.0f64;
    let mut worst_pair = (0usize, 0usize);
    for (i, a) in outputs.iter().enumerate() {
        let norm_dev = (a.norm() - 1.0).abs();
        if norm_dev > MEASUREMENT_ORTHO_TOL {
            return Err(Error::InvalidArgument(format!(
                "output state {} is not normalized (norm deviation {norm_dev:.3e})",
                i + 1
            )));
        }
        for (j, b) in outputs.iter().enumerate().skip(i + 1) {
            let overlap = inner(a, b)?.norm();
            if overlap > worst {
                worst = overlap;
                worst_pair = (i + 1, j + 1);
            }
        }
    }
    if worst > MEASUREMENT_ORTHO_TOL {
        return Err(Error::NonOrthogonalOutputs {
            alpha: worst_pair.0,
            beta: worst_pair.1,
            overlap: worst,
        });
    }
    let blocks = outputs
        .iter()
        .enumerate()
        .map(|(i, s)| MeasurementBlock {
            outcomes: vec![i + 1],
            basis: vec![s.clone()],
        })
        .collect();
    Ok(Measurement {
        n_players: n,
        blocks,
    })
}

/// Subspace measurement discriminating the payoff-equivalence sets of a
/// partition (set discrimination). Requires all cross-set overlaps to
/// vanish; states inside one set may be linearly dependent, in which case
/// the projector rank drops below the set size.
pub fn build_measurement_wcr(outputs: &[StateVector], partition: &Partition) -> Result<Measurement> {
    if outputs.is_empty() {
        return Err(Error::InvalidArgument("no output states".into()));
    }
    let n = outputs[0].n_players();
    if outputs.len() != partition.n_outcomes() {
        return Err(Error::DimensionMismatch(format!(
            "{} outputs for a partition over {} outcomes",
            outputs.len(),
            partition.n_outcomes()
        )));
    }
    for (si, set_a) in partition.sets().iter().enumerate() {
        for set_b in partition.sets().iter().skip(si + 1) {
            for &a in set_a {
                for &b in set_b {
                    let overlap = inner(&outputs[a - 1], &outputs[b - 1])?.norm();
                    if overlap > MEASUREMENT_ORTHO_TOL {
                        return Err(Error::CrossSetOverlap {
                            alpha: a,
                            beta: b,
                            overlap,
                        });
                    }
                }
            }
        }
    }
    let blocks = partition
        .sets()
        .iter()
        .map(|set| {
            let members: Vec<&StateVector> = set.iter().map(|&k| &outputs[k - 1]).collect();
            MeasurementBlock {
                outcomes: set.clone(),
                basis: orthonormalize(&members, RANK_TOL),
            }
        })
        .collect();
    Ok(Measurement {
        n_players: n,
        blocks,
    })
}

/// Expected payoff vector when the players apply `ops` to the shared state
/// and the referee measures.
///
/// Every outcome in a block must carry the same payoff vector; probability
/// escaping the blocks beyond `LEFTOVER_TOL` is an integrity error.
pub fn quantum_payoff(
    game: &GameN,
    measurement: &Measurement,
    state: &StateVector,
    ops: &[LocalOp],
) -> Result<PayoffVector> {
    let n = state.n_players();
    if game.n_players() != n || measurement.n_players() != n {
        return Err(Error::DimensionMismatch(
            "game, measurement, and state disagree on the player count".into(),
        ));
    }
    let out = tensor_apply(ops, state)?;
    let mut payoff = vec![0.0; n];
    let mut total_p = 0.0;
    for block in measurement.blocks() {
        let class = game.payoff_vector(block.outcomes[0]);
        for &k in &block.outcomes[1..] {
            if game.payoff_vector(k) != class {
                return Err(Error::InvalidArgument(format!(
                    "measurement block {:?} mixes distinct payoff vectors",
                    block.outcomes
                )));
            }
        }
        let p = block.probability(&out)?;
        total_p += p;
        for (f, a) in payoff.iter_mut().zip(class) {
            *f += p * a;
        }
    }
    let leftover = 1.0 - total_p;
    if leftover.abs() > LEFTOVER_TOL {
        return Err(Error::MeasurementIntegrity { leftover });
    }
    Ok(payoff)
}

/// Per-player mixing angles for strategy combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaProfile(Vec<f64>);

impl ThetaProfile {
    pub fn new(thetas: Vec<f64>) -> Self {
        ThetaProfile(thetas)
    }

    pub fn zeros(n: usize) -> Self {
        ThetaProfile(vec![0.0; n])
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    /// First-strategy probabilities cos^2(theta_k).
    pub fn to_mixed_profile(&self) -> MixedProfile {
        MixedProfile::new(self.0.iter().map(|t| t.cos().powi(2)).collect())
            .expect("cos^2 lies in [0,1]")
    }
}

/// w_k = u_k^1 cos(theta_k) + u_k^2 sin(theta_k) per player.
///
/// Unitarity of the combination is not assumed here; it holds exactly when
/// the assignment has the operator structure required by the strong
/// criterion, and is checked where that matters.
pub fn mixed_profile_ops(assignment: &OperatorAssignment, thetas: &ThetaProfile) -> Result<Vec<LocalOp>> {
    if thetas.angles().len() != assignment.n_players() {
        return Err(Error::DimensionMismatch(format!(
            "{} angles for {} players",
            thetas.angles().len(),
            assignment.n_players()
        )));
    }
    Ok(assignment
        .pairs()
        .iter()
        .zip(thetas.angles())
        .map(|((u1, u2), &t)| {
            u1.scale(C64::new(t.cos(), 0.0))
                .add(&u2.scale(C64::new(t.sin(), 0.0)))
        })
        .collect())
}

/// How classical mixed strategies are realized in the quantum protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixMode {
    /// Players apply the linear combinations w_k(theta_k).
    LinearCombination,
    /// Players randomize classically over their two pure operators with
    /// probabilities (cos^2 theta_k, sin^2 theta_k).
    ProbabilisticChoice,
}

/// Largest per-player gap between the quantum payoff under mixing and the
/// classical mixed payoff with q_k = cos^2(theta_k).
///
/// Precondition: the assignment satisfies the strong criterion on this
/// state (the full-discrimination measurement must exist).
pub fn reproduce_mixed_check(
    state: &StateVector,
    assignment: &OperatorAssignment,
    game: &GameN,
    thetas: &ThetaProfile,
    mode: MixMode,
) -> Result<f64> {
    let outputs = output_states(state, assignment)?;
    let measurement = build_measurement_scr(&outputs).map_err(|e| {
        Error::PreconditionFailed(format!("assignment fails the strong criterion: {e}"))
    })?;
    let classical = games::classical_mixed_payoff(game, &thetas.to_mixed_profile())?;
    let quantum = match mode {
        MixMode::LinearCombination => {
            let ops = mixed_profile_ops(assignment, thetas)?;
            quantum_payoff(game, &measurement, state, &ops)?
        }
        MixMode::ProbabilisticChoice => {
            let n = state.n_players();
            let probs = thetas.to_mixed_profile();
            let mut acc = vec![0.0; n];
            for k in 1..=1usize << n {
                let pure = games::profile_of_outcome(k, n);
                let mut weight = 1.0;
                for (j, &s) in pure.iter().enumerate() {
                    let q = probs.probs()[j];
                    weight *= if s == 1 { q } else { 1.0 - q };
                }
                if weight == 0.0 {
                    continue;
                }
                let ops = assignment.ops_for_outcome(k);
                let payoff = quantum_payoff(game, &measurement, state, &ops)?;
                for (a, p) in acc.iter_mut().zip(&payoff) {
                    *a += weight * p;
                }
            }
            acc
        }
    };
    Ok(quantum
        .iter()
        .zip(&classical)
        .map(|(q, c)| (q - c).abs())
        .fold(0.0, f64::max))
}

/// Named operator specs accepted by the command line and operator files.
#[derive(Debug, Clone, PartialEq)]
pub enum OpSpec {
    Named(String),
    Su2 { theta: f64, phi: f64, lam: f64 },
    File(String),
}

impl OpSpec {
    pub fn resolve(&self) -> Result<LocalOp> {
        match self {
            OpSpec::Named(name) => named_operator(name),
            OpSpec::Su2 { theta, phi, lam } => Ok(su2_from_angles(*theta, *phi, *lam)),
            OpSpec::File(path) => read_operator_file(Path::new(path)),
        }
    }
}

impl FromStr for OpSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("su2:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse("su2 spec needs three angles".into()));
            }
            let angle = |p: &str| -> Result<f64> {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad angle '{p}'")))
            };
            return Ok(OpSpec::Su2 {
                theta: angle(parts[0])?,
                phi: angle(parts[1])?,
                lam: angle(parts[2])?,
            });
        }
        if let Some(rest) = t.strip_prefix("mat:") {
            let path = rest
                .strip_prefix('@')
                .ok_or_else(|| Error::Parse("mat spec must be mat:@file".into()))?;
            return Ok(OpSpec::File(path.to_string()));
        }
        Ok(OpSpec::Named(t.to_string()))
    }
}

impl fmt::Display for OpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpSpec::Named(n) => f.write_str(n),
            OpSpec::Su2 { theta, phi, lam } => write!(f, "su2:{theta},{phi},{lam}"),
            OpSpec::File(p) => write!(f, "mat:@{p}"),
        }
    }
}

fn named_operator(name: &str) -> Result<LocalOp> {
    let op = match name {
        "I" | "i" | "id" => LocalOp::identity(),
        "X" | "x" => LocalOp::pauli_x(),
        "Y" | "y" => LocalOp::pauli_y(),
        "Z" | "z" => LocalOp::pauli_z(),
        "iX" | "ix" => LocalOp::i_sigma_x(),
        "iY" | "iy" => LocalOp::i_sigma_y(),
        "iZ" | "iz" => LocalOp::i_sigma_z(),
        "H" | "h" => LocalOp::hadamard(),
        other => return Err(Error::Parse(format!("unknown operator name '{other}'"))),
    };
    Ok(op)
}

/// Operator matrix file: four complex entries (re im pairs), row-major,
/// whitespace separated; `#` starts a comment.
pub fn read_operator_file(path: &Path) -> Result<LocalOp> {
    let text = std::fs::read_to_string(path)?;
    let mut numbers = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            numbers.push(
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number '{tok}'")))?,
            );
        }
    }
    if numbers.len() != 8 {
        return Err(Error::Parse(format!(
            "operator file must hold 8 numbers (re im pairs, row-major), got {}",
            numbers.len()
        )));
    }
    let c = |i: usize| C64::new(numbers[2 * i], numbers[2 * i + 1]);
    LocalOp::unitary([[c(0), c(1)], [c(2), c(3)]])
}

/// Assignment file: one line per player, two operator specs separated by
/// whitespace; `#` starts a comment.
pub fn read_assignment_file(path: &Path) -> Result<OperatorAssignment> {
    let text = std::fs::read_to_string(path)?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let first = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing operators", lineno + 1)))?;
        let second = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: need two operators", lineno + 1)))?;
        if fields.next().is_some() {
            return Err(Error::Parse(format!("line {}: too many fields", lineno + 1)));
        }
        let u1 = first.parse::<OpSpec>()?.resolve()?;
        let u2 = second.parse::<OpSpec>()?.resolve()?;
        pairs.push((u1, u2));
    }
    OperatorAssignment::new(pairs)
}

/// Parse a command-line operator assignment: `u1,u2` applied to every
/// player, or per-player pairs separated by `;`. An `su2:t,p,l` spec keeps
/// its internal commas.
pub fn parse_ops_arg(arg: &str, n_players: usize) -> Result<OperatorAssignment> {
    let groups: Vec<&str> = arg.split(';').collect();
    let parse_pair = |txt: &str| -> Result<(LocalOp, LocalOp)> {
        let tokens: Vec<&str> = txt.split(',').map(str::trim).collect();
        let mut specs = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            if tokens[i].starts_with("su2:") {
                if i + 2 >= tokens.len() {
                    return Err(Error::Parse(format!(
                        "su2 spec in '{txt}' needs three angles"
                    )));
                }
                specs.push(tokens[i..i + 3].join(","));
                i += 3;
            } else {
                specs.push(tokens[i].to_string());
                i += 1;
            }
        }
        if specs.len() != 2 {
            return Err(Error::Parse(format!(
                "operator pair '{txt}' must be 'u1,u2'"
            )));
        }
        Ok((
            specs[0].parse::<OpSpec>()?.resolve()?,
            specs[1].parse::<OpSpec>()?.resolve()?,
        ))
    };
    if groups.len() == 1 {
        let pair = parse_pair(groups[0])?;
        OperatorAssignment::uniform(n_players, pair.0, pair.1)
    } else {
        if groups.len() != n_players {
            return Err(Error::Parse(format!(
                "{} operator pairs for {} players",
                groups.len(),
                n_players
            )));
        }
        let pairs = groups
            .iter()
            .map(|g| parse_pair(g))
            .collect::<Result<Vec<_>>>()?;
        OperatorAssignment::new(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{extend_2x2, catalog_table, make_native, CatalogName, NativeKind, NativeParams};
    use crate::states::{make_state, StateSpec};
    use crate::witnesses;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bell_output_states_match_hand_expansion() {
        let bell = make_state(&StateSpec::Bell).unwrap();
        let assignment = witnesses::bell_scr_assignment();
        let outs = output_states(&bell, &assignment).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [
            vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)],
            vec![c(0.0, 0.0), c(-r, 0.0), c(r, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(r, 0.0), c(r, 0.0), c(0.0, 0.0)],
            vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-r, 0.0)],
        ];
        for (out, want) in outs.iter().zip(&expect) {
            for (x, y) in out.amps().iter().zip(want) {
                assert!((x - y).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn identity_assignment_repeats_the_input() {
        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let assignment =
            OperatorAssignment::uniform(3, LocalOp::identity(), LocalOp::identity()).unwrap();
        for out in output_states(&w, &assignment).unwrap() {
            assert!((inner(&w, &out).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn first_output_is_the_all_first_strategy_state() {
        let ghz = make_state(&StateSpec::Ghz { n: 3 }).unwrap();
        let assignment = witnesses::ghz_scr_assignment(3);
        let outs = output_states(&ghz, &assignment).unwrap();
        assert!((inner(&ghz, &outs[0]).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scr_measurement_for_ghz_resolves_the_identity() {
        let ghz = make_state(&StateSpec::Ghz { n: 3 }).unwrap();
        let outs = output_states(&ghz, &witnesses::ghz_scr_assignment(3)).unwrap();
        let m = build_measurement_scr(&outs).unwrap();
        assert!(m.is_complete());
        // Sum of the dense projectors is the identity.
        let dim = 8;
        let mut total = vec![vec![c(0.0, 0.0); dim]; dim];
        for block in m.blocks() {
            let pm = block.projector_matrix(dim);
            // Projector property: idempotent and self-adjoint.
            for r in 0..dim {
                for s in 0..dim {
                    let mut sq = c(0.0, 0.0);
                    for t in 0..dim {
                        sq += pm[r][t] * pm[t][s];
                    }
                    assert!((sq - pm[r][s]).norm() < 1e-10);
                    assert!((pm[r][s] - pm[s][r].conj()).norm() < 1e-12);
                    total[r][s] += pm[r][s];
                }
            }
        }
        for r in 0..dim {
            for s in 0..dim {
                let want = if r == s { 1.0 } else { 0.0 };
                assert!((total[r][s] - c(want, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn scr_measurement_rejects_w_state_outputs() {
        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let outs = output_states(&w, &witnesses::ghz_scr_assignment(3)).unwrap();
        match build_measurement_scr(&outs) {
            Err(Error::NonOrthogonalOutputs { overlap, .. }) => assert!(overlap > 1e-3),
            other => panic!("expected non-orthogonal outputs, got {other:?}"),
        }
    }

    #[test]
    fn wcr_measurement_on_singletons_matches_scr() {
        let bell = make_state(&StateSpec::Bell).unwrap();
        let outs = output_states(&bell, &witnesses::bell_scr_assignment()).unwrap();
        let scr = build_measurement_scr(&outs).unwrap();
        let wcr = build_measurement_wcr(&outs, &Partition::singletons(4)).unwrap();
        assert_eq!(scr.blocks().len(), wcr.blocks().len());
        for (a, b) in scr.blocks().iter().zip(wcr.blocks()) {
            assert_eq!(a.outcomes, b.outcomes);
            assert_eq!(a.rank(), b.rank());
        }
    }

    #[test]
    fn wcr_measurement_for_balanced_dicke_majority() {
        let state = make_state(&StateSpec::Dicke { n: 4, m: 2 }).unwrap();
        let game = make_native(NativeKind::Majority, 4, &NativeParams::default()).unwrap();
        let partition = crate::games::payoff_partition(&game);
        let assignment = witnesses::dicke22_majority_assignment();
        let outs = output_states(&state, &assignment).unwrap();
        let m = build_measurement_wcr(&outs, &partition).unwrap();
        assert_eq!(m.blocks().len(), 3);
        assert!(m.is_complete());
    }

    #[test]
    fn dependent_states_within_a_set_reduce_rank() {
        let bell = make_state(&StateSpec::Bell).unwrap();
        let assignment =
            OperatorAssignment::uniform(2, LocalOp::identity(), LocalOp::identity()).unwrap();
        let outs = output_states(&bell, &assignment).unwrap();
        let one_set = Partition::new(vec![(1..=4).collect()], 4).unwrap();
        let m = build_measurement_wcr(&outs, &one_set).unwrap();
        assert_eq!(m.blocks()[0].rank(), 1);
    }

    #[test]
    fn pure_strategies_reproduce_classical_payoffs() {
        let n = 3;
        let ghz = make_state(&StateSpec::Ghz { n }).unwrap();
        let assignment = witnesses::ghz_scr_assignment(n);
        let game = extend_2x2(&catalog_table(CatalogName::Pd), n).unwrap();
        let outs = output_states(&ghz, &assignment).unwrap();
        let m = build_measurement_scr(&outs).unwrap();
        for k in 1..=1usize << n {
            let ops = assignment.ops_for_outcome(k);
            let payoff = quantum_payoff(&game, &m, &ghz, &ops).unwrap();
            for (p, a) in payoff.iter().zip(game.payoff_vector(k)) {
                assert!((p - a).abs() < 1e-12, "outcome {k}");
            }
        }
        // Player 1 alone switching reaches outcome 1 + 2^(N-1).
        let ops = assignment.ops_for_outcome(1 + (1 << (n - 1)));
        let payoff = quantum_payoff(&game, &m, &ghz, &ops).unwrap();
        for (p, a) in payoff.iter().zip(game.payoff_vector(1 + (1 << (n - 1)))) {
            assert!((p - a).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_profile_ops_boundary_angles() {
        let assignment = witnesses::ghz_scr_assignment(2);
        let at_zero = mixed_profile_ops(&assignment, &ThetaProfile::zeros(2)).unwrap();
        for (op, (u1, _)) in at_zero.iter().zip(assignment.pairs()) {
            assert!(op.max_abs_diff(u1) < 1e-15);
        }
        let quarter = ThetaProfile::new(vec![std::f64::consts::FRAC_PI_2; 2]);
        let at_quarter = mixed_profile_ops(&assignment, &quarter).unwrap();
        for (op, (_, u2)) in at_quarter.iter().zip(assignment.pairs()) {
            assert!(op.max_abs_diff(u2) < 1e-15);
        }
        // cos t * I + sin t * i sigma_y is a rotation, hence unitary.
        let t = 0.73;
        let ops = mixed_profile_ops(&assignment, &ThetaProfile::new(vec![t; 2])).unwrap();
        assert!(ops[0].unitarity_residual() < 1e-12);
    }

    #[test]
    fn mixed_strategies_reproduce_classical_payoffs() {
        let n = 3;
        let ghz = make_state(&StateSpec::Ghz { n }).unwrap();
        let assignment = witnesses::ghz_scr_assignment(n);
        let game = extend_2x2(&catalog_table(CatalogName::Pd), n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let thetas =
                ThetaProfile::new((0..n).map(|_| rng.gen::<f64>() * 6.0 - 3.0).collect());
            let r = reproduce_mixed_check(
                &ghz,
                &assignment,
                &game,
                &thetas,
                MixMode::LinearCombination,
            )
            .unwrap();
            assert!(r <= 1e-10, "residual {r}");
            let rp = reproduce_mixed_check(
                &ghz,
                &assignment,
                &game,
                &thetas,
                MixMode::ProbabilisticChoice,
            )
            .unwrap();
            assert!(rp <= 1e-10, "probabilistic residual {rp}");
        }
    }

    #[test]
    fn outcome_probabilities_factor_over_players_under_full_discrimination() {
        // With orthonormal outputs, the probability of outcome k under the
        // combinations w(theta) is the product of cos^2/sin^2 per strategy
        // bit.
        let n = 4;
        let state = make_state(&StateSpec::Dicke { n, m: 2 }).unwrap();
        let assignment = witnesses::dicke22_scr_assignment();
        let outs = output_states(&state, &assignment).unwrap();
        let m = build_measurement_scr(&outs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let thetas: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 6.0 - 3.0).collect();
            let ops =
                mixed_profile_ops(&assignment, &ThetaProfile::new(thetas.clone())).unwrap();
            let played = tensor_apply(&ops, &state).unwrap();
            let probs = m.probabilities(&played).unwrap();
            for (k0, p) in probs.iter().enumerate() {
                let mut expected = 1.0;
                for (i, t) in thetas.iter().enumerate() {
                    let bit = (k0 >> (n - 1 - i)) & 1;
                    expected *= if bit == 0 {
                        t.cos().powi(2)
                    } else {
                        t.sin().powi(2)
                    };
                }
                assert!((p - expected).abs() < 1e-10, "outcome {}", k0 + 1);
            }
        }
    }

    #[test]
    fn balanced_dicke_pure_payoffs_match_the_table_end_to_end() {
        let n = 4;
        let state = make_state(&StateSpec::Dicke { n, m: 2 }).unwrap();
        let assignment = witnesses::dicke22_scr_assignment();
        let game = extend_2x2(&catalog_table(CatalogName::Pd), n).unwrap();
        let outs = output_states(&state, &assignment).unwrap();
        let m = build_measurement_scr(&outs).unwrap();
        for k in 1..=1usize << n {
            let payoff =
                quantum_payoff(&game, &m, &state, &assignment.ops_for_outcome(k)).unwrap();
            for (p, a) in payoff.iter().zip(game.payoff_vector(k)) {
                assert!((p - a).abs() < 1e-12, "outcome {k}");
            }
        }
    }

    #[test]
    fn mixed_check_requires_the_strong_criterion() {
        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let assignment = witnesses::ghz_scr_assignment(3);
        let game = extend_2x2(&catalog_table(CatalogName::Pd), 3).unwrap();
        let r = reproduce_mixed_check(
            &w,
            &assignment,
            &game,
            &ThetaProfile::zeros(3),
            MixMode::LinearCombination,
        );
        assert!(matches!(r, Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn probabilities_sum_to_one_for_unitary_ops() {
        let ghz = make_state(&StateSpec::Ghz { n: 3 }).unwrap();
        let outs = output_states(&ghz, &witnesses::ghz_scr_assignment(3)).unwrap();
        let m = build_measurement_scr(&outs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let ops: Vec<LocalOp> = (0..3)
                .map(|_| {
                    su2_from_angles(
                        rng.gen::<f64>() * 6.0,
                        rng.gen::<f64>() * 6.0,
                        rng.gen::<f64>() * 6.0,
                    )
                })
                .collect();
            let out = tensor_apply(&ops, &ghz).unwrap();
            let ps = m.probabilities(&out).unwrap();
            assert!(ps.iter().all(|&p| p >= -1e-12));
            assert!((ps.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn leaked_probability_fails_the_integrity_check() {
        // All-identity outputs collapse a one-set partition to a rank-1
        // block; operators that move the state out of that span leave
        // probability in the implicit discard projector.
        let bell = make_state(&StateSpec::Bell).unwrap();
        let assignment =
            OperatorAssignment::uniform(2, LocalOp::identity(), LocalOp::identity()).unwrap();
        let outs = output_states(&bell, &assignment).unwrap();
        let one_set = Partition::new(vec![(1..=4).collect()], 4).unwrap();
        let m = build_measurement_wcr(&outs, &one_set).unwrap();
        assert!(!m.is_complete());
        // A constant table is the only game whose classes form one set.
        let game = crate::games::GameN::new(2, vec![vec![1.0, 1.0]; 4]).unwrap();
        // In-span ops are fine even though the measurement is incomplete.
        let ok = quantum_payoff(&game, &m, &bell, &[LocalOp::identity(), LocalOp::identity()]);
        assert!(ok.is_ok());
        let err = quantum_payoff(&game, &m, &bell, &[LocalOp::pauli_x(), LocalOp::identity()]);
        assert!(matches!(err, Err(Error::MeasurementIntegrity { .. })));
    }

    #[test]
    fn operator_spec_parsing() {
        assert!(matches!("I".parse::<OpSpec>().unwrap(), OpSpec::Named(_)));
        let su2: OpSpec = "su2:3.14159,0.0,1.0".parse().unwrap();
        assert!(su2.resolve().unwrap().unitarity_residual() < 1e-12);
        assert!("su2:1.0,2.0".parse::<OpSpec>().is_err());
        assert!(named_operator("Q").is_err());
        let iy = named_operator("iY").unwrap();
        assert!(iy.max_abs_diff(&LocalOp::i_sigma_y()) < 1e-15);
    }

    #[test]
    fn assignment_file_parsing() {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# one line per player: u1 u2").unwrap();
        writeln!(f, "I X").unwrap();
        writeln!(f, "I iY").unwrap();
        let a = read_assignment_file(f.path()).unwrap();
        assert_eq!(a.n_players(), 2);
        assert!(a.pairs()[0].1.max_abs_diff(&LocalOp::pauli_x()) < 1e-15);
    }

    #[test]
    fn ops_arg_parsing() {
        let a = parse_ops_arg("I,iY", 4).unwrap();
        assert_eq!(a.n_players(), 4);
        let b = parse_ops_arg("I,X;I,iY", 2).unwrap();
        assert!(b.pairs()[0].1.max_abs_diff(&LocalOp::pauli_x()) < 1e-15);
        assert!(parse_ops_arg("I,X;I,iY", 3).is_err());
        assert!(parse_ops_arg("I", 2).is_err());
        // su2 specs keep their internal commas inside a pair.
        let c = parse_ops_arg("su2:0,0,0,iY;I,su2:0,0,0", 2).unwrap();
        assert!(c.pairs()[0].0.max_abs_diff(&LocalOp::identity()) < 1e-15);
        assert!(c.pairs()[0].1.max_abs_diff(&LocalOp::i_sigma_y()) < 1e-15);
        assert!(c.pairs()[1].1.max_abs_diff(&LocalOp::identity()) < 1e-15);
        assert!(parse_ops_arg("su2:0,0,iY", 1).is_err());
    }

    #[test]
    fn assignment_requires_unitary_entries() {
        let bad = LocalOp::from_matrix([[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(OperatorAssignment::uniform(2, LocalOp::identity(), bad).is_err());
    }
}
