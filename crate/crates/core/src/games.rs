//! Classical game layer: payoff tables, N-player extension of 2x2 games,
//! group classification, payoff-equivalence partitions, and classical
//! expected payoffs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The 2x2 game catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogName {
    Pd,
    Sh,
    Cg,
    Dl,
    Bos,
    Sd,
    Bp,
    Md,
    Rc,
    Ag,
    Hd,
    Bb,
    Mp,
}

impl CatalogName {
    pub const ALL: [CatalogName; 13] = [
        CatalogName::Pd,
        CatalogName::Sh,
        CatalogName::Cg,
        CatalogName::Dl,
        CatalogName::Bos,
        CatalogName::Sd,
        CatalogName::Bp,
        CatalogName::Md,
        CatalogName::Rc,
        CatalogName::Ag,
        CatalogName::Hd,
        CatalogName::Bb,
        CatalogName::Mp,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::Pd => "pd",
            CatalogName::Sh => "sh",
            CatalogName::Cg => "cg",
            CatalogName::Dl => "dl",
            CatalogName::Bos => "bos",
            CatalogName::Sd => "sd",
            CatalogName::Bp => "bp",
            CatalogName::Md => "md",
            CatalogName::Rc => "rc",
            CatalogName::Ag => "ag",
            CatalogName::Hd => "hd",
            CatalogName::Bb => "bb",
            CatalogName::Mp => "mp",
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .iter()
            .copied()
            .find(|g| g.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown catalog game '{s}'")))
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A two-player two-strategy payoff table.
///
/// `cells[r][c]` holds (row player's payoff, column player's payoff) when the
/// row player uses strategy r+1 and the column player strategy c+1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Game2x2 {
    pub cells: [[(f64, f64); 2]; 2],
}

impl Game2x2 {
    pub fn new(cells: [[(f64, f64); 2]; 2]) -> Self {
        Game2x2 { cells }
    }
}

static DEFAULT_TABLES: OnceLock<BTreeMap<CatalogName, Game2x2>> = OnceLock::new();

/// Default payoff tables, loaded from the config file shipped with the crate.
pub fn default_tables() -> &'static BTreeMap<CatalogName, Game2x2> {
    DEFAULT_TABLES.get_or_init(|| {
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(include_str!("../data/games_default.json"))
                .expect("embedded game table config is valid JSON");
        let mut map = BTreeMap::new();
        for (key, value) in raw {
            if key.starts_with('_') {
                continue;
            }
            let name: CatalogName = key.parse().expect("catalog key");
            let cells: [[[f64; 2]; 2]; 2] =
                serde_json::from_value(value).expect("catalog cell layout");
            map.insert(
                name,
                Game2x2::new([
                    [
                        (cells[0][0][0], cells[0][0][1]),
                        (cells[0][1][0], cells[0][1][1]),
                    ],
                    [
                        (cells[1][0][0], cells[1][0][1]),
                        (cells[1][1][0], cells[1][1][1]),
                    ],
                ]),
            );
        }
        map
    })
}

pub fn catalog_table(name: CatalogName) -> Game2x2 {
    *default_tables().get(&name).expect("all catalog games present")
}

/// Ordered list of every player's payoff for one outcome.
pub type PayoffVector = Vec<f64>;

/// An N-player two-strategy payoff table with 2^N outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct GameN {
    n_players: usize,
    /// payoffs[k-1] is the payoff vector A_k for 1-based outcome k.
    payoffs: Vec<PayoffVector>,
}

impl GameN {
    pub fn new(n_players: usize, payoffs: Vec<PayoffVector>) -> Result<Self> {
        if n_players == 0 {
            return Err(Error::InvalidArgument("need at least one player".into()));
        }
        if payoffs.len() != 1 << n_players {
            return Err(Error::InvalidArgument(format!(
                "expected {} payoff vectors, got {}",
                1 << n_players,
                payoffs.len()
            )));
        }
        for (i, v) in payoffs.iter().enumerate() {
            if v.len() != n_players {
                return Err(Error::InvalidArgument(format!(
                    "payoff vector for outcome {} has {} entries, expected {}",
                    i + 1,
                    v.len(),
                    n_players
                )));
            }
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidArgument("non-finite payoff".into()));
            }
        }
        Ok(GameN { n_players, payoffs })
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn n_outcomes(&self) -> usize {
        self.payoffs.len()
    }

    /// Payoff vector A_k for the 1-based outcome index k.
    pub fn payoff_vector(&self, outcome: usize) -> &PayoffVector {
        &self.payoffs[outcome - 1]
    }

    pub fn payoffs(&self) -> &[PayoffVector] {
        &self.payoffs
    }
}

/// 1-based outcome index of a pure-strategy profile (entries 1 or 2).
pub fn outcome_of_profile(profile: &[u8]) -> Result<usize> {
    let n = profile.len();
    let mut idx = 0usize;
    for (i, s) in profile.iter().enumerate() {
        match s {
            1 => {}
            2 => idx |= 1 << (n - 1 - i),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "strategy must be 1 or 2, got {s}"
                )))
            }
        }
    }
    Ok(idx + 1)
}

/// Pure-strategy profile (entries 1 or 2) of a 1-based outcome index.
pub fn profile_of_outcome(outcome: usize, n_players: usize) -> Vec<u8> {
    let bits = outcome - 1;
    (0..n_players)
        .map(|i| 1 + ((bits >> (n_players - 1 - i)) & 1) as u8)
        .collect()
}

/// Extend a 2x2 game to N players by summing simultaneous pairwise plays.
///
/// In each unordered pair the lower-indexed player takes the row role; for
/// symmetric tables the convention is immaterial.
pub fn extend_2x2(base: &Game2x2, n: usize) -> Result<GameN> {
    if n < 2 {
        return Err(Error::InvalidArgument("extension needs n >= 2".into()));
    }
    let outcomes = 1usize << n;
    let mut payoffs = Vec::with_capacity(outcomes);
    for k in 1..=outcomes {
        let profile = profile_of_outcome(k, n);
        let mut vector = vec![0.0; n];
        for i in 0..n {
            let si = (profile[i] - 1) as usize;
            let mut total = 0.0;
            for (j, sj_raw) in profile.iter().enumerate() {
                if i == j {
                    continue;
                }
                let sj = (sj_raw - 1) as usize;
                total += if i < j {
                    base.cells[si][sj].0
                } else {
                    base.cells[sj][si].1
                };
            }
            vector[i] = total;
        }
        payoffs.push(vector);
    }
    GameN::new(n, payoffs)
}

/// Games defined directly as N-player rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NativeKind {
    Minority,
    Majority,
    Coordination,
    Zerosum,
    MpExtension,
}

impl NativeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NativeKind::Minority => "minority",
            NativeKind::Majority => "majority",
            NativeKind::Coordination => "coordination",
            NativeKind::Zerosum => "zerosum",
            NativeKind::MpExtension => "mp_extension",
        }
    }
}

impl FromStr for NativeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minority" => Ok(NativeKind::Minority),
            "majority" => Ok(NativeKind::Majority),
            "coordination" => Ok(NativeKind::Coordination),
            "zerosum" => Ok(NativeKind::Zerosum),
            "mp_extension" | "mp-extension" => Ok(NativeKind::MpExtension),
            _ => Err(Error::Parse(format!("unknown native game '{s}'"))),
        }
    }
}

impl fmt::Display for NativeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reward parameters for the native games; `None` means the kind's default.
#[derive(Debug, Clone, Copy, Default)]
pub struct NativeParams {
    pub lambda0: Option<f64>,
    pub lambda1: Option<f64>,
    pub lambda: Option<f64>,
}

fn positive(value: f64, what: &str) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidArgument(format!("{what} must be positive")))
    }
}

/// Build one of the natively N-player games.
///
/// Rules:
/// - minority: the strictly smaller nonempty side wins λ each; everyone else
///   (and everyone, on even splits or unanimity) gets 0.
/// - majority: all players get λ0 (λ1) when a strict majority plays the
///   first (second) strategy; all get 0 on an even split.
/// - coordination: all get λ0 (λ1) on first- (second-) strategy unanimity,
///   otherwise 0.
/// - zerosum: on unanimity all get 0; otherwise each of the m first-strategy
///   players gets λ/m and each of the rest loses λ/(N-m).
/// - mp_extension: the pairwise matching-pennies extension with stake λ.
pub fn make_native(kind: NativeKind, n: usize, params: &NativeParams) -> Result<GameN> {
    if n < 2 {
        return Err(Error::InvalidArgument("native games need n >= 2".into()));
    }
    let outcomes = 1usize << n;
    match kind {
        NativeKind::MpExtension => {
            let lam = positive(params.lambda.unwrap_or(1.0), "lambda")?;
            let base = catalog_table(CatalogName::Mp);
            let scaled = Game2x2::new([
                [
                    (base.cells[0][0].0 * lam, base.cells[0][0].1 * lam),
                    (base.cells[0][1].0 * lam, base.cells[0][1].1 * lam),
                ],
                [
                    (base.cells[1][0].0 * lam, base.cells[1][0].1 * lam),
                    (base.cells[1][1].0 * lam, base.cells[1][1].1 * lam),
                ],
            ]);
            extend_2x2(&scaled, n)
        }
        _ => {
            let mut payoffs = Vec::with_capacity(outcomes);
            for k in 1..=outcomes {
                let profile = profile_of_outcome(k, n);
                let first = profile.iter().filter(|&&s| s == 1).count();
                let second = n - first;
                let vector: Vec<f64> = match kind {
                    NativeKind::Minority => {
                        let lam = positive(params.lambda.unwrap_or(1.0), "lambda")?;
                        if first == 0 || second == 0 || first == second {
                            vec![0.0; n]
                        } else {
                            let winner: u8 = if first < second { 1 } else { 2 };
                            profile
                                .iter()
                                .map(|&s| if s == winner { lam } else { 0.0 })
                                .collect()
                        }
                    }
                    NativeKind::Majority => {
                        let l0 = positive(params.lambda0.unwrap_or(2.0), "lambda0")?;
                        let l1 = positive(params.lambda1.unwrap_or(1.0), "lambda1")?;
                        if first > second {
                            vec![l0; n]
                        } else if second > first {
                            vec![l1; n]
                        } else {
                            vec![0.0; n]
                        }
                    }
                    NativeKind::Coordination => {
                        let l0 = positive(params.lambda0.unwrap_or(1.0), "lambda0")?;
                        let l1 = positive(params.lambda1.unwrap_or(1.0), "lambda1")?;
                        if first == n {
                            vec![l0; n]
                        } else if second == n {
                            vec![l1; n]
                        } else {
                            vec![0.0; n]
                        }
                    }
                    NativeKind::Zerosum => {
                        let lam = positive(params.lambda.unwrap_or(1.0), "lambda")?;
                        if first == 0 || second == 0 {
                            vec![0.0; n]
                        } else {
                            profile
                                .iter()
                                .map(|&s| {
                                    if s == 1 {
                                        lam / first as f64
                                    } else {
                                        -lam / second as f64
                                    }
                                })
                                .collect()
                        }
                    }
                    NativeKind::MpExtension => unreachable!(),
                };
                payoffs.push(vector);
            }
            GameN::new(n, payoffs)
        }
    }
}

/// Grouping of the outcome indices 1..2^N into payoff-equivalence sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    sets: Vec<Vec<usize>>,
    n_outcomes: usize,
}

impl Partition {
    /// Validate and canonicalize: members ascending within sets, sets ordered
    /// by smallest member.
    pub fn new(mut sets: Vec<Vec<usize>>, n_outcomes: usize) -> Result<Self> {
        let mut seen = vec![false; n_outcomes + 1];
        let mut count = 0usize;
        for set in &mut sets {
            if set.is_empty() {
                return Err(Error::InvalidArgument("empty partition set".into()));
            }
            set.sort_unstable();
            for &k in set.iter() {
                if k == 0 || k > n_outcomes {
                    return Err(Error::InvalidArgument(format!(
                        "outcome index {k} out of range 1..={n_outcomes}"
                    )));
                }
                if seen[k] {
                    return Err(Error::InvalidArgument(format!(
                        "outcome index {k} appears twice"
                    )));
                }
                seen[k] = true;
                count += 1;
            }
        }
        if count != n_outcomes {
            return Err(Error::InvalidArgument(format!(
                "partition covers {count} of {n_outcomes} outcomes"
            )));
        }
        sets.sort_by_key(|s| s[0]);
        Ok(Partition { sets, n_outcomes })
    }

    /// The all-singletons partition (full state discrimination).
    pub fn singletons(n_outcomes: usize) -> Self {
        Partition {
            sets: (1..=n_outcomes).map(|k| vec![k]).collect(),
            n_outcomes,
        }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn n_outcomes(&self) -> usize {
        self.n_outcomes
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn is_singletons(&self) -> bool {
        self.sets.len() == self.n_outcomes
    }

    /// Index of the set containing a 1-based outcome.
    pub fn set_of(&self, outcome: usize) -> Option<usize> {
        self.sets.iter().position(|s| s.binary_search(&outcome).is_ok())
    }
}

fn payoff_key(v: &[f64]) -> Vec<u64> {
    // +0.0 collapses -0.0 so bit equality matches numeric equality.
    v.iter().map(|x| (x + 0.0).to_bits()).collect()
}

/// Group outcomes by exact equality of their payoff vectors.
pub fn payoff_partition(game: &GameN) -> Partition {
    let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for k in 1..=game.n_outcomes() {
        groups
            .entry(payoff_key(game.payoff_vector(k)))
            .or_default()
            .push(k);
    }
    let sets: Vec<Vec<usize>> = groups.into_values().collect();
    Partition::new(sets, game.n_outcomes()).expect("grouping is a partition")
}

/// Group I: all payoff vectors pairwise distinct. Group II: at least one
/// repeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Group {
    I,
    II,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::I => f.write_str("Group I"),
            Group::II => f.write_str("Group II"),
        }
    }
}

pub fn classify_group(game: &GameN) -> Group {
    if payoff_partition(game).is_singletons() {
        Group::I
    } else {
        Group::II
    }
}

/// Payoff vector for a pure joint strategy.
pub fn classical_pure_payoff(game: &GameN, profile: &[u8]) -> Result<PayoffVector> {
    if profile.len() != game.n_players() {
        return Err(Error::DimensionMismatch(format!(
            "profile has {} entries for {} players",
            profile.len(),
            game.n_players()
        )));
    }
    Ok(game.payoff_vector(outcome_of_profile(profile)?).clone())
}

/// Per-player probabilities of choosing the first strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile(Vec<f64>);

impl MixedProfile {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.iter().any(|q| !(0.0..=1.0).contains(q)) {
            return Err(Error::InvalidArgument(
                "mixed-strategy probabilities must lie in [0, 1]".into(),
            ));
        }
        Ok(MixedProfile(probs))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }
}

/// Expected payoffs when every player independently randomizes.
pub fn classical_mixed_payoff(game: &GameN, profile: &MixedProfile) -> Result<PayoffVector> {
    let n = game.n_players();
    if profile.probs().len() != n {
        return Err(Error::DimensionMismatch(format!(
            "mixed profile has {} entries for {} players",
            profile.probs().len(),
            n
        )));
    }
    let mut expected = vec![0.0; n];
    for k in 1..=game.n_outcomes() {
        let pure = profile_of_outcome(k, n);
        let mut weight = 1.0;
        for (j, &s) in pure.iter().enumerate() {
            let q = profile.probs()[j];
            weight *= if s == 1 { q } else { 1.0 - q };
        }
        if weight == 0.0 {
            continue;
        }
        for (f, a) in expected.iter_mut().zip(game.payoff_vector(k)) {
            *f += weight * a;
        }
    }
    Ok(expected)
}

/// On-disk game description: outcome bitstrings (player 1 first, 0 = first
/// strategy) mapped to payoff vectors.
#[derive(Debug, Serialize, Deserialize)]
pub struct GameFile {
    pub players: usize,
    pub payoffs: BTreeMap<String, Vec<f64>>,
}

impl GameFile {
    pub fn to_game(&self) -> Result<GameN> {
        let n = self.players;
        if n == 0 || n > 24 {
            return Err(Error::InvalidArgument("bad player count".into()));
        }
        let outcomes = 1usize << n;
        if self.payoffs.len() != outcomes {
            return Err(Error::InvalidArgument(format!(
                "game file has {} outcomes, expected {}",
                self.payoffs.len(),
                outcomes
            )));
        }
        let mut payoffs = vec![Vec::new(); outcomes];
        for (bits, vector) in &self.payoffs {
            if bits.len() != n || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Parse(format!("bad outcome bitstring '{bits}'")));
            }
            let idx = usize::from_str_radix(bits, 2)
                .map_err(|_| Error::Parse(format!("bad outcome bitstring '{bits}'")))?;
            payoffs[idx] = vector.clone();
        }
        GameN::new(n, payoffs)
    }

    pub fn from_game(game: &GameN) -> Self {
        let n = game.n_players();
        let mut payoffs = BTreeMap::new();
        for k in 1..=game.n_outcomes() {
            payoffs.insert(format!("{:0width$b}", k - 1, width = n), game.payoff_vector(k).clone());
        }
        GameFile {
            players: n,
            payoffs,
        }
    }
}

pub fn read_game_file(path: &Path) -> Result<GameN> {
    let text = std::fs::read_to_string(path)?;
    let file: GameFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("game file: {e}")))?;
    file.to_game()
}

/// How a game is addressed from the command line or a report.
#[derive(Debug, Clone, PartialEq)]
pub enum GameSpec {
    Catalog(CatalogName),
    Native(NativeKind),
    File(PathBuf),
}

impl GameSpec {
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix('@') {
            return Ok(GameSpec::File(PathBuf::from(path)));
        }
        if let Ok(native) = s.parse::<NativeKind>() {
            return Ok(GameSpec::Native(native));
        }
        if let Ok(name) = s.parse::<CatalogName>() {
            return Ok(GameSpec::Catalog(name));
        }
        Err(Error::Parse(format!("unknown game '{s}'")))
    }

    /// Build the N-player table. `n` is ignored for file games, which carry
    /// their own player count.
    pub fn build(&self, n: usize, params: &NativeParams) -> Result<GameN> {
        match self {
            GameSpec::Catalog(name) => extend_2x2(&catalog_table(*name), n),
            GameSpec::Native(kind) => make_native(*kind, n, params),
            GameSpec::File(path) => read_game_file(path),
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSpec::Catalog(name) => write!(f, "{name}"),
            GameSpec::Native(kind) => write!(f, "{kind}"),
            GameSpec::File(path) => write!(f, "@{}", path.display()),
        }
    }
}
