//! Seeded random profiles inside each restricted domain.
//!
//! Generation uses `ChaCha8Rng::seed_from_u64`, so a spec always yields the
//! same profile on every platform.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::detection::StructureProperty;
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, CandidateSet, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Property(StructureProperty),
    Unrestricted,
}

impl std::str::FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("unrestricted") || s.eq_ignore_ascii_case("none") {
            Ok(Structure::Unrestricted)
        } else {
            s.parse().map(Structure::Property)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenParams {
    /// Largest vote size.
    pub max_vote_size: Option<usize>,
    /// Largest number of approvers of one candidate.
    pub max_degree: Option<usize>,
    /// Range of embedding coordinates for DUE.
    pub spread: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub structure: Structure,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub params: GenParams,
}

impl GenSpec {
    pub fn new(structure: Structure, n: usize, m: usize, seed: u64) -> Self {
        GenSpec {
            structure,
            n,
            m,
            seed,
            params: GenParams::default(),
        }
    }

    pub fn with_params(mut self, params: GenParams) -> Self {
        self.params = params;
        self
    }
}

/// `a`..`z`, then `a1`..`z1`, and so on.
pub fn candidate_label(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        r => format!("{letter}{r}"),
    }
}

fn labels(m: usize) -> Vec<String> {
    (0..m).map(candidate_label).collect()
}

fn permutation(rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..len).collect();
    v.shuffle(rng);
    v
}

struct Gen {
    rng: ChaCha8Rng,
    n: usize,
    m: usize,
    s: usize,
    d: usize,
}

impl Gen {
    fn build(&self, votes: Vec<CandidateSet>) -> Result<ApprovalProfile> {
        ApprovalProfile::from_sets(labels(self.m), votes)
    }

    fn unrestricted(&mut self) -> Result<ApprovalProfile> {
        let (n, m, s) = (self.n, self.m, self.s);
        let votes = (0..n)
            .map(|_| {
                let mut v: Vec<usize> = (0..m).filter(|_| self.rng.gen_bool(0.5)).collect();
                v.shuffle(&mut self.rng);
                v.truncate(s);
                CandidateSet::from_indices(m, v)
            })
            .collect();
        self.build(votes)
    }

    /// Votes are intervals of a random candidate axis.
    fn ci(&mut self) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let axis = permutation(&mut self.rng, m);
        let mut degree = vec![0usize; m];
        let mut votes = Vec::with_capacity(n);
        for _ in 0..n {
            let mut vote = CandidateSet::empty(m);
            if !self.rng.gen_bool(0.1) {
                for _ in 0..20 {
                    let len = self.rng.gen_range(1..=self.s.min(m));
                    let b = self.rng.gen_range(0..=m - len);
                    let span = &axis[b..b + len];
                    if span.iter().all(|&c| degree[c] < self.d) {
                        span.iter().for_each(|&c| degree[c] += 1);
                        vote = CandidateSet::from_indices(m, span.iter().copied());
                        break;
                    }
                }
            }
            votes.push(vote);
        }
        self.build(votes)
    }

    /// Each candidate's approvers are an interval of a random voter order.
    fn vi(&mut self) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let order = permutation(&mut self.rng, n);
        let mut votes = vec![CandidateSet::empty(m); n];
        for c in 0..m {
            if self.rng.gen_bool(0.15) {
                continue;
            }
            for _ in 0..20 {
                let len = self.rng.gen_range(1..=self.d.min(n));
                let b = self.rng.gen_range(0..=n - len);
                let span = &order[b..b + len];
                if span.iter().all(|&i| votes[i].len() < self.s) {
                    span.iter().for_each(|&i| votes[i].insert(c));
                    break;
                }
            }
        }
        self.build(votes)
    }

    /// Votes are prefixes or suffixes of a random candidate axis.
    fn cei(&mut self) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let axis = permutation(&mut self.rng, m);
        let votes = (0..n)
            .map(|_| {
                let len = self.rng.gen_range(0..=m);
                let span = if self.rng.gen_bool(0.5) {
                    &axis[..len]
                } else {
                    &axis[m - len..]
                };
                CandidateSet::from_indices(m, span.iter().copied())
            })
            .collect();
        self.build(votes)
    }

    /// Each candidate's approvers are a prefix or suffix of a random voter
    /// order.
    fn vei(&mut self) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let order = permutation(&mut self.rng, n);
        let mut votes = vec![CandidateSet::empty(m); n];
        for c in 0..m {
            let len = self.rng.gen_range(0..=n);
            let span = if self.rng.gen_bool(0.5) {
                &order[..len]
            } else {
                &order[n - len..]
            };
            span.iter().for_each(|&i| votes[i].insert(c));
        }
        self.build(votes)
    }

    /// Extremes `u`, `w` from four random candidate blocks, plus possibly
    /// their intersection or union.
    fn wsc(&mut self) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let block: Vec<usize> = (0..m).map(|_| self.rng.gen_range(0..4)).collect();
        let members = |bs: &[usize]| {
            CandidateSet::from_indices(m, (0..m).filter(|&c| bs.contains(&block[c])))
        };
        let u = members(&[0, 1]);
        let w = members(&[0, 2]);
        let middle = match self.rng.gen_range(0..3) {
            0 => None,
            1 => Some(u.intersection(&w)),
            _ => Some(u.union(&w)),
        };
        let mut classes = vec![u, w];
        classes.extend(middle);
        let votes = (0..n)
            .map(|_| classes[self.rng.gen_range(0..classes.len())].clone())
            .collect();
        self.build(votes)
    }

    /// Distinct votes partition the candidates into `parts` blocks, each
    /// voted for at least once.
    fn partition(&mut self, parts: usize) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let axis = permutation(&mut self.rng, m);
        let mut cuts: Vec<usize> = (1..m).collect();
        cuts.shuffle(&mut self.rng);
        cuts.truncate(parts - 1);
        cuts.sort_unstable();
        let mut bounds = vec![0];
        bounds.extend(cuts);
        bounds.push(m);
        let blocks: Vec<CandidateSet> = bounds
            .windows(2)
            .map(|w| CandidateSet::from_indices(m, axis[w[0]..w[1]].iter().copied()))
            .collect();
        let mut assign: Vec<usize> = (0..parts).collect();
        assign.extend((parts..n).map(|_| self.rng.gen_range(0..parts)));
        assign.shuffle(&mut self.rng);
        self.build(assign.into_iter().map(|j| blocks[j].clone()).collect())
    }

    fn part(&mut self) -> Result<ApprovalProfile> {
        let parts = self.rng.gen_range(1..=self.m.min(self.n));
        self.partition(parts)
    }

    fn two_part(&mut self) -> Result<ApprovalProfile> {
        if self.m < 2 || self.n < 2 {
            return Err(Error::Unsatisfiable("2PART needs n >= 2 and m >= 2".into()));
        }
        self.partition(2)
    }

    /// Voters and candidates at random half-integer positions with one
    /// radius; resampled while every vote is empty.
    fn due(&mut self, spread: usize) -> Result<ApprovalProfile> {
        let (n, m) = (self.n, self.m);
        let half = |x: usize| Rational::new(BigInt::from(x), BigInt::from(2));
        for _ in 0..1000 {
            let cpos: Vec<Rational> = (0..m)
                .map(|_| half(self.rng.gen_range(0..=2 * spread)))
                .collect();
            let vpos: Vec<Rational> = (0..n)
                .map(|_| half(self.rng.gen_range(0..=2 * spread)))
                .collect();
            let r = half(self.rng.gen_range(0..=spread));
            let votes: Vec<CandidateSet> = vpos
                .iter()
                .map(|x| {
                    CandidateSet::from_indices(m, (0..m).filter(|&c| (x - &cpos[c]).abs() <= r))
                })
                .collect();
            if votes.iter().any(|v| !v.is_empty()) {
                return self.build(votes);
            }
        }
        Err(Error::Unsatisfiable(
            "DUE sampling kept producing empty profiles".into(),
        ))
    }
}

/// A random profile satisfying the requested structure.
pub fn generate(spec: &GenSpec) -> Result<ApprovalProfile> {
    if spec.n == 0 || spec.m == 0 {
        return Err(Error::Unsatisfiable("n and m must be at least 1".into()));
    }
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        n: spec.n,
        m: spec.m,
        s: spec.params.max_vote_size.unwrap_or(spec.m).max(1),
        d: spec.params.max_degree.unwrap_or(spec.n).max(1),
    };
    use StructureProperty as S;
    match spec.structure {
        Structure::Unrestricted => g.unrestricted(),
        Structure::Property(p) => match p.canonical() {
            S::TwoPart => g.two_part(),
            S::Part => g.part(),
            S::Vei => g.vei(),
            S::Vi => g.vi(),
            S::Cei => g.cei(),
            S::Ci => g.ci(),
            S::Wsc => g.wsc(),
            S::Due => g.due(spec.params.spread.unwrap_or(2 * spec.m.max(spec.n)).max(1)),
            other => Err(Error::Unsupported(format!(
                "generating {} profiles",
                other.name()
            ))),
        },
    }
}
