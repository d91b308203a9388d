//! Verdicts on the strong and weak criteria: numerical orthogonality checks,
//! operator- and state-structure analysis, and the symbolic contradiction
//! rule engine for Dicke-class states.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::Partition;
use crate::kernel::{self, eig2, inner, LocalOp, StateVector};
use crate::referee::{mixed_profile_ops, output_states, OperatorAssignment, ThetaProfile};
use crate::states::StateSpec;

/// Default orthogonality tolerance for the numeric checks.
pub const ORTHO_TOL: f64 = 1e-10;
/// Largest player count accepted by the dense all-pairs checks.
pub const MAX_CHECK_PLAYERS: usize = 12;

/// Quantitative result of an orthogonality or structure check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    /// Largest magnitude among the quantities required to vanish.
    pub max_violation: f64,
    /// Outcome pair (1-based) realizing the worst violation, when the check
    /// is over pairs.
    pub worst_pair: Option<(usize, usize)>,
    /// Player subset (1-based) realizing the worst violation, for the
    /// state-structure check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_subset: Option<Vec<usize>>,
    pub tolerance: f64,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_CHECK_PLAYERS {
        return Err(Error::InvalidArgument(format!(
            "dense all-pairs check supports at most {MAX_CHECK_PLAYERS} players, got {n}"
        )));
    }
    Ok(())
}

/// Strong criterion: all C(2^N, 2) pairwise output overlaps must vanish.
pub fn scr_check(
    state: &StateVector,
    assignment: &OperatorAssignment,
    tol: f64,
) -> Result<CheckReport> {
    check_size(state.n_players())?;
    let outputs = output_states(state, assignment)?;
    let mut worst = 0.0f64;
    let mut worst_pair = None;
    for (i, a) in outputs.iter().enumerate() {
        for (j, b) in outputs.iter().enumerate().skip(i + 1) {
            let overlap = inner(a, b)?.norm();
            if overlap > worst {
                worst = overlap;
                worst_pair = Some((i + 1, j + 1));
            }
        }
    }
    Ok(CheckReport {
        passed: worst <= tol,
        max_violation: worst,
        worst_pair,
        worst_subset: None,
        tolerance: tol,
    })
}

/// Weak criterion: only overlaps across different partition sets must
/// vanish.
pub fn wcr_check(
    state: &StateVector,
    assignment: &OperatorAssignment,
    partition: &Partition,
    tol: f64,
) -> Result<CheckReport> {
    check_size(state.n_players())?;
    let n_outcomes = 1usize << state.n_players();
    if partition.n_outcomes() != n_outcomes {
        return Err(Error::DimensionMismatch(format!(
            "partition covers {} outcomes, state has {}",
            partition.n_outcomes(),
            n_outcomes
        )));
    }
    let outputs = output_states(state, assignment)?;
    let mut worst = 0.0f64;
    let mut worst_pair = None;
    for (si, set_a) in partition.sets().iter().enumerate() {
        for set_b in partition.sets().iter().skip(si + 1) {
            for &a in set_a {
                for &b in set_b {
                    let overlap = inner(&outputs[a - 1], &outputs[b - 1])?.norm();
                    if overlap > worst {
                        worst = overlap;
                        worst_pair = Some((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    Ok(CheckReport {
        passed: worst <= tol,
        max_violation: worst,
        worst_pair,
        worst_subset: None,
        tolerance: tol,
    })
}

/// Structure analysis of one player's strategy pair.
#[derive(Debug, Clone)]
pub struct PlayerStructure {
    /// 1-based player index.
    pub player: usize,
    /// v = u1† u2, raw.
    pub v: LocalOp,
    /// det-normalized SU(2) representative of v.
    pub v_normalized: LocalOp,
    /// Eigenphases of the representative, larger first, in (-π, π].
    pub eigenphases: (f64, f64),
    /// |trace of the representative| vanishes.
    pub traceless: bool,
    /// Eigenphases are ±π/2: the diagonalized form is i sigma_z.
    pub i_sigma_z_form: bool,
    /// v itself is anti-Hermitian (no determinant phase left). Exactly in
    /// this case every combination u1 cos(t) + u2 sin(t) stays unitary.
    pub anti_hermitian: bool,
    /// Z with Z v' Z† diagonal.
    pub diagonalizer: LocalOp,
    /// 2 * P(player's qubit reads 0 in the Z-rotated state) - 1.
    pub marginal_balance: f64,
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub players: Vec<PlayerStructure>,
}

impl StructureReport {
    pub fn all_i_sigma_z(&self) -> bool {
        self.players.iter().all(|p| p.i_sigma_z_form)
    }
}

const STRUCTURE_TOL: f64 = 1e-10;

/// Analyze every player's v = u1† u2: eigenphases of the SU(2)
/// representative, whether its diagonal form is i sigma_z, and the marginal
/// balance of the state in the rotated basis.
pub fn operator_structure(
    state: &StateVector,
    assignment: &OperatorAssignment,
) -> Result<StructureReport> {
    let n = state.n_players();
    if assignment.n_players() != n {
        return Err(Error::DimensionMismatch(format!(
            "assignment covers {} players, state has {}",
            assignment.n_players(),
            n
        )));
    }
    let mut players = Vec::with_capacity(n);
    for (idx, v) in assignment.reduced_ops().into_iter().enumerate() {
        let v_normalized = v.det_normalized()?;
        let eig = eig2(&v_normalized)?;
        let trace_mag = v_normalized.trace().norm();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let i_sigma_z_form = (eig.phases.0 - half_pi).abs() <= STRUCTURE_TOL
            && (eig.phases.1 + half_pi).abs() <= STRUCTURE_TOL;
        let anti_hermitian = v.add(&v.adjoint()).spectral_norm() <= STRUCTURE_TOL;

        let player = idx + 1;
        let bit = StateVector::bit_of_player(n, player);
        let mut amps = state.amps().to_vec();
        kernel::apply_at_bit(&mut amps, bit, &eig.diagonalizer);
        let p0: f64 = amps
            .iter()
            .enumerate()
            .filter(|(b, _)| (b >> bit) & 1 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();

        players.push(PlayerStructure {
            player,
            v,
            v_normalized,
            eigenphases: eig.phases,
            traceless: trace_mag <= STRUCTURE_TOL,
            i_sigma_z_form,
            anti_hermitian,
            diagonalizer: eig.diagonalizer,
            marginal_balance: 2.0 * p0 - 1.0,
        });
    }
    Ok(StructureReport { players })
}

/// State-structure check: with every player's diagonalizer applied, all
/// 2^N - 1 expectation values of sigma_z patterns must vanish (equivalently
/// every |c|^2 equals 2^-N).
///
/// Precondition: [`operator_structure`] reports the i sigma_z form for all
/// players.
pub fn state_structure_check(
    state: &StateVector,
    assignment: &OperatorAssignment,
) -> Result<CheckReport> {
    let structure = operator_structure(state, assignment)?;
    if !structure.all_i_sigma_z() {
        let offenders: Vec<usize> = structure
            .players
            .iter()
            .filter(|p| !p.i_sigma_z_form)
            .map(|p| p.player)
            .collect();
        return Err(Error::PreconditionFailed(format!(
            "players {offenders:?} lack the i sigma_z operator form"
        )));
    }
    let n = state.n_players();
    let mut amps = state.amps().to_vec();
    for p in &structure.players {
        kernel::apply_at_bit(
            &mut amps,
            StateVector::bit_of_player(n, p.player),
            &p.diagonalizer,
        );
    }
    let probs: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
    let dim = probs.len();
    let mut worst = 0.0f64;
    let mut worst_mask = 0usize;
    for mask in 1..dim {
        let mut expectation = 0.0;
        for (b, p) in probs.iter().enumerate() {
            let parity = (b & mask).count_ones() & 1;
            expectation += if parity == 0 { *p } else { -*p };
        }
        if expectation.abs() > worst {
            worst = expectation.abs();
            worst_mask = mask;
        }
    }
    let worst_subset = if worst_mask != 0 {
        Some(
            (1..=n)
                .filter(|&player| (worst_mask >> StateVector::bit_of_player(n, player)) & 1 == 1)
                .collect(),
        )
    } else {
        None
    };
    Ok(CheckReport {
        passed: worst <= ORTHO_TOL,
        max_violation: worst,
        worst_pair: None,
        worst_subset,
        tolerance: ORTHO_TOL,
    })
}

/// A two-player phase constraint with the outcome pair that witnesses it.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PhaseEdge {
    /// 1-based player indices.
    pub players: (usize, usize),
    /// 1-based outcome pair whose required orthogonality produced the edge.
    pub witness_pair: (usize, usize),
}

/// A contradiction rule together with its replayable data.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ContradictionRule {
    /// Pairwise phase-difference constraints close around an odd cycle; a
    /// 3-cycle is the classic three-player triple.
    OddCycle {
        cycle: Vec<usize>,
        edges: Vec<PhaseEdge>,
        triangles: Vec<[usize; 3]>,
    },
    /// Balanced Dicke states (m = N/2, N >= 6): two distinct pair couplings
    /// over four players combined with a required four-player-difference
    /// orthogonality are jointly unsatisfiable.
    BalancedQuad {
        players: [usize; 4],
        pairings: [[(usize, usize); 2]; 2],
        four_diff_witness: (usize, usize),
    },
    /// A payoff-equivalence set of odd size.
    OddSet { set_index: usize, size: usize },
    /// A two-element set holding exactly the two unanimity outcomes.
    UnanimityDoubleton { set_index: usize },
}

impl ContradictionRule {
    pub fn name(&self) -> &'static str {
        match self {
            ContradictionRule::OddCycle { .. } => "odd_cycle",
            ContradictionRule::BalancedQuad { .. } => "balanced_quad",
            ContradictionRule::OddSet { .. } => "odd_set",
            ContradictionRule::UnanimityDoubleton { .. } => "unanimity_doubleton",
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Certificate {
    pub primary: ContradictionRule,
    /// Further rules that fired on the same instance.
    pub also_fired: Vec<ContradictionRule>,
}

impl Certificate {
    pub fn all_rules(&self) -> impl Iterator<Item = &ContradictionRule> {
        std::iter::once(&self.primary).chain(self.also_fired.iter())
    }

    pub fn fired(&self, name: &str) -> bool {
        self.all_rules().any(|r| r.name() == name)
    }

    /// Player triples certified by 3-cycles, when the primary rule is the
    /// odd-cycle rule.
    pub fn triangles(&self) -> &[[usize; 3]] {
        match &self.primary {
            ContradictionRule::OddCycle { triangles, .. } => triangles,
            _ => &[],
        }
    }
}

/// Outcome of the symbolic rule pipeline.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// No operator assignment can satisfy the required orthogonality.
    Contradiction { certificate: Certificate },
    /// No rule applies; feasibility is deferred to the numerical search.
    NoRuleFired,
}

impl Verdict {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Verdict::Contradiction { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Contradiction { certificate } => Some(certificate),
            Verdict::NoRuleFired => None,
        }
    }
}

/// Player (1-based) at a given qubit bit position.
fn player_of_bit(n: usize, bit: usize) -> usize {
    n - bit
}

struct RequiredDiffs {
    /// player -> witnessing outcome pair, for single-strategy differences.
    forced: BTreeMap<usize, (usize, usize)>,
    /// (player j < player k) -> witnessing pair, both players forced.
    edges: BTreeMap<(usize, usize), (usize, usize)>,
    /// sorted 4-player support -> witnessing pair.
    quads: BTreeMap<[usize; 4], (usize, usize)>,
}

fn collect_required_diffs(n: usize, partition: &Partition, want_quads: bool) -> RequiredDiffs {
    let dim = 1usize << n;
    let mut set_of = vec![0usize; dim + 1];
    for (si, set) in partition.sets().iter().enumerate() {
        for &k in set {
            set_of[k] = si;
        }
    }
    let crosses = |a: usize, b: usize| set_of[a] != set_of[b];

    let mut forced = BTreeMap::new();
    for alpha in 1..=dim {
        for bit in 0..n {
            let beta = ((alpha - 1) ^ (1 << bit)) + 1;
            if beta > alpha && crosses(alpha, beta) {
                forced
                    .entry(player_of_bit(n, bit))
                    .or_insert((alpha, beta));
            }
        }
    }

    let mut edges = BTreeMap::new();
    for alpha in 1..=dim {
        for bit_a in 0..n {
            for bit_b in bit_a + 1..n {
                let beta = ((alpha - 1) ^ (1 << bit_a) ^ (1 << bit_b)) + 1;
                if beta > alpha && crosses(alpha, beta) {
                    let pa = player_of_bit(n, bit_b);
                    let pb = player_of_bit(n, bit_a);
                    let key = (pa.min(pb), pa.max(pb));
                    if forced.contains_key(&key.0) && forced.contains_key(&key.1) {
                        edges.entry(key).or_insert((alpha, beta));
                    }
                }
            }
        }
    }

    let mut quads = BTreeMap::new();
    if want_quads {
        let masks: Vec<usize> = {
            let mut v = Vec::new();
            for m in 1..dim {
                if (m as u64).count_ones() == 4 {
                    v.push(m);
                }
            }
            v
        };
        for alpha in 1..=dim {
            for &mask in &masks {
                let beta = ((alpha - 1) ^ mask) + 1;
                if beta > alpha && crosses(alpha, beta) {
                    let mut players: Vec<usize> = (0..n)
                        .filter(|b| (mask >> b) & 1 == 1)
                        .map(|b| player_of_bit(n, b))
                        .collect();
                    players.sort_unstable();
                    let key = [players[0], players[1], players[2], players[3]];
                    quads.entry(key).or_insert((alpha, beta));
                }
            }
        }
    }

    RequiredDiffs {
        forced,
        edges,
        quads,
    }
}

/// Find an odd cycle in the forced-player constraint graph, if one exists.
fn find_odd_cycle(
    forced: &BTreeMap<usize, (usize, usize)>,
    edges: &BTreeMap<(usize, usize), (usize, usize)>,
) -> Option<Vec<usize>> {
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges.keys() {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let mut color: BTreeMap<usize, u8> = BTreeMap::new();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    for &start in forced.keys() {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, 0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[&u];
            let Some(neighbors) = adjacency.get(&u) else {
                continue;
            };
            for &v in neighbors {
                match color.get(&v) {
                    None => {
                        color.insert(v, cu ^ 1);
                        parent.insert(v, u);
                        queue.push_back(v);
                    }
                    Some(&cv) if cv == cu => {
                        // Same-color edge closes an odd cycle through the
                        // BFS tree paths of u and v.
                        let path = |mut x: usize| -> Vec<usize> {
                            let mut p = vec![x];
                            while let Some(&px) = parent.get(&x) {
                                p.push(px);
                                x = px;
                            }
                            p
                        };
                        let pu = path(u);
                        let pv = path(v);
                        let common: Vec<usize> =
                            pu.iter().copied().filter(|x| pv.contains(x)).collect();
                        let meet = common[0];
                        let mut cycle: Vec<usize> =
                            pu.iter().copied().take_while(|&x| x != meet).collect();
                        cycle.push(meet);
                        let tail: Vec<usize> =
                            pv.iter().copied().take_while(|&x| x != meet).collect();
                        cycle.extend(tail.into_iter().rev());
                        return Some(cycle);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    None
}

/// Apply the symbolic contradiction rules for a Dicke-class state against a
/// partition of the outcome space.
///
/// Pipeline: single-strategy differences across sets force the
/// anti-diagonal (unbalanced) or two-parameter (balanced) operator form;
/// two-player differences among forced players yield pairwise phase
/// constraints; unbalanced states contradict around any odd cycle;
/// balanced states with N >= 6 contradict when two distinct pair couplings
/// meet a required four-player difference; odd-size sets and the unanimity
/// doubleton are terminal filters. The two balanced states |1,1> and |2,2>
/// are exempt from the terminal filters.
pub fn symbolic_contradiction(state: &StateSpec, partition: &Partition) -> Result<Verdict> {
    let (n, m) = state.dicke_class().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "symbolic rules cover Dicke-class states only, got {state}"
        ))
    })?;
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!(
            "invalid Dicke excitation m={m} for N={n}"
        )));
    }
    let dim = 1usize << n;
    if partition.n_outcomes() != dim {
        return Err(Error::DimensionMismatch(format!(
            "partition covers {} outcomes, state has {dim}",
            partition.n_outcomes()
        )));
    }

    let balanced = 2 * m == n;
    let exempt = balanced && n <= 4;
    let diffs = collect_required_diffs(n, partition, balanced && n >= 6);

    let mut fired: Vec<ContradictionRule> = Vec::new();

    if !balanced {
        // Triangles give the classic three-player certificates; any odd
        // cycle contradicts the same way.
        let mut triangles = Vec::new();
        let players: Vec<usize> = diffs.forced.keys().copied().collect();
        for (ii, &i) in players.iter().enumerate() {
            for (jj, &j) in players.iter().enumerate().skip(ii + 1) {
                for &k in players.iter().skip(jj + 1) {
                    if diffs.edges.contains_key(&(i, j))
                        && diffs.edges.contains_key(&(i, k))
                        && diffs.edges.contains_key(&(j, k))
                    {
                        triangles.push([i, j, k]);
                    }
                }
            }
        }
        let cycle = if let Some(t) = triangles.first() {
            Some(t.to_vec())
        } else {
            find_odd_cycle(&diffs.forced, &diffs.edges)
        };
        if let Some(cycle) = cycle {
            let mut cycle_edges = Vec::new();
            for i in 0..cycle.len() {
                let a = cycle[i];
                let b = cycle[(i + 1) % cycle.len()];
                let key = (a.min(b), a.max(b));
                cycle_edges.push(PhaseEdge {
                    players: key,
                    witness_pair: diffs.edges[&key],
                });
            }
            fired.push(ContradictionRule::OddCycle {
                cycle,
                edges: cycle_edges,
                triangles,
            });
        }
    } else if n >= 6 {
        'quads: for (&quad, &witness) in &diffs.quads {
            let [i, j, k, l] = quad;
            let matchings = [
                [(i, j), (k, l)],
                [(i, k), (j, l)],
                [(i, l), (j, k)],
            ];
            let complete: Vec<[(usize, usize); 2]> = matchings
                .into_iter()
                .filter(|m| m.iter().all(|e| diffs.edges.contains_key(e)))
                .collect();
            if complete.len() >= 2 {
                fired.push(ContradictionRule::BalancedQuad {
                    players: quad,
                    pairings: [complete[0], complete[1]],
                    four_diff_witness: witness,
                });
                break 'quads;
            }
        }
    }

    if !exempt {
        if let Some((set_index, set)) = partition
            .sets()
            .iter()
            .enumerate()
            .find(|(_, s)| s.len() % 2 == 1)
        {
            fired.push(ContradictionRule::OddSet {
                set_index,
                size: set.len(),
            });
        }
        if let Some(set_index) = partition
            .sets()
            .iter()
            .position(|s| s.len() == 2 && s[0] == 1 && s[1] == dim)
        {
            fired.push(ContradictionRule::UnanimityDoubleton { set_index });
        }
    }

    Ok(match fired.split_first() {
        Some((primary, rest)) => Verdict::Contradiction {
            certificate: Certificate {
                primary: primary.clone(),
                also_fired: rest.to_vec(),
            },
        },
        None => Verdict::NoRuleFired,
    })
}

/// Largest unitarity residual among the strategy combinations w_k(theta_k).
pub fn wk_unitarity_check(assignment: &OperatorAssignment, thetas: &ThetaProfile) -> Result<f64> {
    let ops = mixed_profile_ops(assignment, thetas)?;
    Ok(ops
        .iter()
        .map(LocalOp::unitarity_residual)
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{make_native, payoff_partition, NativeKind, NativeParams};
    use crate::kernel::su2_from_angles;
    use crate::states::{make_state, StateSpec};
    use crate::witnesses;
    use num_complex::Complex64 as C64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scr_positives_from_the_catalog() {
        for n in 2..=8 {
            let ghz = make_state(&StateSpec::Ghz { n }).unwrap();
            let rep = scr_check(&ghz, &witnesses::ghz_scr_assignment(n), ORTHO_TOL).unwrap();
            assert!(rep.passed, "ghz n={n}: {}", rep.max_violation);
            assert!(rep.max_violation <= 1e-12);
        }
        let bell = make_state(&StateSpec::Bell).unwrap();
        let rep = scr_check(&bell, &witnesses::bell_scr_assignment(), ORTHO_TOL).unwrap();
        assert!(rep.passed && rep.max_violation <= 1e-12);

        let d22 = make_state(&StateSpec::Dicke { n: 4, m: 2 }).unwrap();
        let rep = scr_check(&d22, &witnesses::dicke22_scr_assignment(), ORTHO_TOL).unwrap();
        assert!(rep.passed, "dicke22: {}", rep.max_violation);
        assert!(rep.max_violation <= 1e-10);

        let d11 = make_state(&StateSpec::Dicke { n: 2, m: 1 }).unwrap();
        let rep = scr_check(&d11, &witnesses::dicke11_scr_assignment(), ORTHO_TOL).unwrap();
        assert!(rep.passed && rep.max_violation <= 1e-10);
    }

    #[test]
    fn scr_fails_for_w_states() {
        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let rep = scr_check(&w, &witnesses::ghz_scr_assignment(3), ORTHO_TOL).unwrap();
        assert!(!rep.passed);
        assert!(rep.max_violation > 0.1);
        assert!(rep.worst_pair.is_some());
    }

    #[test]
    fn wcr_on_singletons_matches_scr() {
        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let a = witnesses::ghz_scr_assignment(3);
        let scr = scr_check(&w, &a, ORTHO_TOL).unwrap();
        let wcr = wcr_check(&w, &a, &Partition::singletons(8), ORTHO_TOL).unwrap();
        assert_eq!(scr.passed, wcr.passed);
        assert!((scr.max_violation - wcr.max_violation).abs() < 1e-15);
    }

    #[test]
    fn wcr_passes_for_balanced_dicke_under_majority() {
        let d22 = make_state(&StateSpec::Dicke { n: 4, m: 2 }).unwrap();
        let game = make_native(NativeKind::Majority, 4, &NativeParams::default()).unwrap();
        let partition = payoff_partition(&game);
        let rep = wcr_check(
            &d22,
            &witnesses::dicke22_majority_assignment(),
            &partition,
            ORTHO_TOL,
        )
        .unwrap();
        assert!(rep.passed, "violation {}", rep.max_violation);
        assert!(rep.max_violation <= 1e-10);
    }

    #[test]
    fn wcr_fails_for_w4_under_minority() {
        let w4 = make_state(&StateSpec::W { n: 4 }).unwrap();
        let game = make_native(NativeKind::Minority, 4, &NativeParams::default()).unwrap();
        let partition = payoff_partition(&game);
        let rep = wcr_check(&w4, &witnesses::ghz_scr_assignment(4), &partition, ORTHO_TOL).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn operator_structure_examples() {
        let ghz = make_state(&StateSpec::Ghz { n: 2 }).unwrap();
        // {I, i sigma_y}: traceless, i sigma_z form.
        let a = witnesses::ghz_scr_assignment(2);
        let s = operator_structure(&ghz, &a).unwrap();
        assert!(s.players.iter().all(|p| p.traceless && p.i_sigma_z_form));

        // {I, sigma_x}: the SU(2) representative is ±i sigma_x, still the
        // i sigma_z form after diagonalization.
        let a = crate::referee::OperatorAssignment::uniform(
            2,
            LocalOp::identity(),
            LocalOp::pauli_x(),
        )
        .unwrap();
        let s = operator_structure(&ghz, &a).unwrap();
        assert!(s.players[0].i_sigma_z_form);

        // {I, diag(1, i)}: representative has trace magnitude sqrt(2); not
        // the i sigma_z form.
        let phase = LocalOp::diag(C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        let a = crate::referee::OperatorAssignment::uniform(2, LocalOp::identity(), phase).unwrap();
        let s = operator_structure(&ghz, &a).unwrap();
        assert!(!s.players[0].i_sigma_z_form);
        assert!((s.players[0].v_normalized.trace().norm() - 2.0_f64.sqrt()).abs() < 1e-12);

        // Hadamard is traceless with eigenvalues ±1, so its representative
        // has the i sigma_z form as well.
        let a = crate::referee::OperatorAssignment::uniform(
            2,
            LocalOp::identity(),
            LocalOp::hadamard(),
        )
        .unwrap();
        let s = operator_structure(&ghz, &a).unwrap();
        assert!(s.players[0].traceless && s.players[0].i_sigma_z_form);
    }

    #[test]
    fn ghz_balances_in_the_rotated_basis() {
        let ghz = make_state(&StateSpec::Ghz { n: 4 }).unwrap();
        let s = operator_structure(&ghz, &witnesses::ghz_scr_assignment(4)).unwrap();
        for p in &s.players {
            assert!(p.marginal_balance.abs() < 1e-12);
        }
        // W-state marginals stay computational-diagonal, so a diagonal v
        // (diagonalizer = I) exposes the imbalance 2*(2/3) - 1 = 1/3.
        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let a = crate::referee::OperatorAssignment::uniform(
            3,
            LocalOp::identity(),
            LocalOp::i_sigma_z(),
        )
        .unwrap();
        let s = operator_structure(&w, &a).unwrap();
        for p in &s.players {
            assert!((p.marginal_balance - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn state_structure_check_examples() {
        let ghz = make_state(&StateSpec::Ghz { n: 4 }).unwrap();
        let rep = state_structure_check(&ghz, &witnesses::ghz_scr_assignment(4)).unwrap();
        assert!(rep.passed, "violation {}", rep.max_violation);
        assert!(rep.max_violation <= 1e-10);

        let product = make_state(&StateSpec::Product { n: 3 }).unwrap();
        let rep = state_structure_check(&product, &witnesses::ghz_scr_assignment(3)).unwrap();
        assert!(rep.passed);

        let w = make_state(&StateSpec::W { n: 3 }).unwrap();
        let rep = state_structure_check(&w, &witnesses::ghz_scr_assignment(3)).unwrap();
        assert!(!rep.passed);
        assert!(rep.worst_subset.is_some());

        // Precondition: operators without the i sigma_z form are rejected.
        let phase = LocalOp::diag(C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        let a = crate::referee::OperatorAssignment::uniform(3, LocalOp::identity(), phase).unwrap();
        assert!(matches!(
            state_structure_check(&w, &a),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn w3_scr_contradiction_is_the_three_player_triple() {
        let verdict =
            symbolic_contradiction(&StateSpec::W { n: 3 }, &Partition::singletons(8)).unwrap();
        let cert = verdict.certificate().expect("contradiction");
        match &cert.primary {
            ContradictionRule::OddCycle { cycle, triangles, edges } => {
                assert_eq!(cycle, &vec![1, 2, 3]);
                assert!(triangles.contains(&[1, 2, 3]));
                assert_eq!(edges.len(), 3);
            }
            other => panic!("unexpected rule {other:?}"),
        }
    }

    #[test]
    fn minority_partition_spares_the_balanced_dicke_state() {
        let game = make_native(NativeKind::Minority, 4, &NativeParams::default()).unwrap();
        let partition = payoff_partition(&game);
        let verdict =
            symbolic_contradiction(&StateSpec::Dicke { n: 4, m: 2 }, &partition).unwrap();
        assert_eq!(verdict, Verdict::NoRuleFired);

        let verdict = symbolic_contradiction(&StateSpec::W { n: 4 }, &partition).unwrap();
        let cert = verdict.certificate().expect("contradiction");
        assert!(cert.triangles().contains(&[2, 3, 4]));
    }

    #[test]
    fn majority_three_player_contradiction_for_w() {
        let game = make_native(NativeKind::Majority, 3, &NativeParams::default()).unwrap();
        let partition = payoff_partition(&game);
        let verdict = symbolic_contradiction(&StateSpec::W { n: 3 }, &partition).unwrap();
        let cert = verdict.certificate().expect("contradiction");
        assert!(cert.triangles().contains(&[1, 2, 3]));
    }

    #[test]
    fn balanced_six_player_quad_rule_fires_for_full_discrimination() {
        let verdict =
            symbolic_contradiction(&StateSpec::Dicke { n: 6, m: 3 }, &Partition::singletons(64))
                .unwrap();
        let cert = verdict.certificate().expect("contradiction");
        assert!(matches!(
            cert.primary,
            ContradictionRule::BalancedQuad { .. }
        ));
    }

    #[test]
    fn unanimity_doubleton_fires_for_w_under_coordination() {
        let game = make_native(
            NativeKind::Coordination,
            4,
            &NativeParams {
                lambda0: Some(1.0),
                lambda1: Some(1.0),
                ..Default::default()
            },
        )
        .unwrap();
        let partition = payoff_partition(&game);
        let verdict = symbolic_contradiction(&StateSpec::W { n: 4 }, &partition).unwrap();
        let cert = verdict.certificate().expect("contradiction");
        assert!(cert.fired("unanimity_doubleton"));

        // The balanced |2,2> state is exempt from the terminal filters and
        // no structural rule applies at N = 4.
        let verdict =
            symbolic_contradiction(&StateSpec::Dicke { n: 4, m: 2 }, &partition).unwrap();
        assert_eq!(verdict, Verdict::NoRuleFired);
    }

    #[test]
    fn odd_set_fires_for_zero_sum_partitions() {
        let game = make_native(NativeKind::Zerosum, 3, &NativeParams::default()).unwrap();
        let partition = payoff_partition(&game);
        let verdict = symbolic_contradiction(&StateSpec::W { n: 3 }, &partition).unwrap();
        let cert = verdict.certificate().expect("contradiction");
        assert!(cert.fired("odd_set"));
        assert!(cert.fired("unanimity_doubleton"));
    }

    #[test]
    fn symbolic_rejects_non_dicke_states() {
        assert!(symbolic_contradiction(&StateSpec::Ghz { n: 3 }, &Partition::singletons(8)).is_err());
        assert!(symbolic_contradiction(&StateSpec::Bell, &Partition::singletons(4)).is_err());
    }

    #[test]
    fn anti_hermitian_reduced_operators_keep_combinations_unitary() {
        let ghz = make_state(&StateSpec::Ghz { n: 4 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for assignment in [
            witnesses::ghz_scr_assignment(4),
            witnesses::dicke22_scr_assignment(),
        ] {
            let s = operator_structure(&ghz, &assignment).unwrap();
            assert!(s.players.iter().all(|p| p.anti_hermitian));
            for _ in 0..20 {
                let thetas =
                    ThetaProfile::new((0..4).map(|_| rng.gen::<f64>() * 6.0).collect());
                assert!(wk_unitarity_check(&assignment, &thetas).unwrap() <= 1e-12);
            }
        }
        // {I, sigma_x}: i sigma_z eigenphase form but not anti-Hermitian, and
        // the combinations are indeed non-unitary.
        let sx = crate::referee::OperatorAssignment::uniform(
            4,
            LocalOp::identity(),
            LocalOp::pauli_x(),
        )
        .unwrap();
        let s = operator_structure(&ghz, &sx).unwrap();
        assert!(s.players.iter().all(|p| p.i_sigma_z_form && !p.anti_hermitian));
        let thetas = ThetaProfile::new(vec![std::f64::consts::FRAC_PI_4; 4]);
        assert!(wk_unitarity_check(&sx, &thetas).unwrap() > 0.5);
    }

    #[test]
    fn wk_unitarity_examples() {
        let n = 3;
        let iy = witnesses::ghz_scr_assignment(n);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let thetas = ThetaProfile::new((0..n).map(|_| rng.gen::<f64>() * 6.0).collect());
            assert!(wk_unitarity_check(&iy, &thetas).unwrap() <= 1e-12);
        }
        // {I, sigma_x} without phase normalization: w†w = I + sin(2θ) σx.
        let sx = crate::referee::OperatorAssignment::uniform(
            1,
            LocalOp::identity(),
            LocalOp::pauli_x(),
        )
        .unwrap();
        let r = wk_unitarity_check(
            &sx,
            &ThetaProfile::new(vec![std::f64::consts::FRAC_PI_4]),
        )
        .unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        // {I, i sigma_z}: anti-Hermitian v keeps w unitary.
        let iz = crate::referee::OperatorAssignment::uniform(
            2,
            LocalOp::identity(),
            LocalOp::i_sigma_z(),
        )
        .unwrap();
        let thetas = ThetaProfile::new(vec![0.41, 2.3]);
        assert!(wk_unitarity_check(&iz, &thetas).unwrap() <= 1e-12);
    }

    #[test]
    fn overlaps_depend_only_on_the_reduced_operators() {
        // Replacing (u1, u2) by (g u1, g u2) leaves every |<Φa|Φb>| fixed.
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let state = make_state(&StateSpec::Dicke { n: 3, m: 1 }).unwrap();
        for _ in 0..20 {
            let rand_op = |rng: &mut ChaCha8Rng| {
                su2_from_angles(
                    rng.gen::<f64>() * 6.0,
                    rng.gen::<f64>() * 6.0,
                    rng.gen::<f64>() * 6.0,
                )
            };
            let base: Vec<(LocalOp, LocalOp)> =
                (0..3).map(|_| (rand_op(&mut rng), rand_op(&mut rng))).collect();
            let gauged: Vec<(LocalOp, LocalOp)> = base
                .iter()
                .map(|(u1, u2)| {
                    let g = rand_op(&mut rng);
                    (g.mul(u1), g.mul(u2))
                })
                .collect();
            let a = crate::referee::OperatorAssignment::new(base).unwrap();
            let b = crate::referee::OperatorAssignment::new(gauged).unwrap();
            let ra = scr_check(&state, &a, ORTHO_TOL).unwrap();
            let rb = scr_check(&state, &b, ORTHO_TOL).unwrap();
            assert!((ra.max_violation - rb.max_violation).abs() < 1e-10);
        }
    }

    #[test]
    fn verdicts_ignore_global_operator_phases() {
        let d22 = make_state(&StateSpec::Dicke { n: 4, m: 2 }).unwrap();
        let base = witnesses::dicke22_scr_assignment();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let pairs: Vec<(LocalOp, LocalOp)> = base
            .pairs()
            .iter()
            .map(|(u1, u2)| {
                let p1 = C64::from_polar(1.0, rng.gen::<f64>() * 6.0);
                let p2 = C64::from_polar(1.0, rng.gen::<f64>() * 6.0);
                (u1.scale(p1), u2.scale(p2))
            })
            .collect();
        let phased = crate::referee::OperatorAssignment::new(pairs).unwrap();
        let rep = scr_check(&d22, &phased, ORTHO_TOL).unwrap();
        assert!(rep.passed, "violation {}", rep.max_violation);
        let s = operator_structure(&d22, &phased).unwrap();
        assert!(s.all_i_sigma_z());
    }
}
