//! Channel layouts and low-weight error enumeration.
//!
//! Every vertex of the graph is a `p`-level sub-qudit. A physical channel is
//! a group of sub-qudits sent together; some sub-qudits are noiseless. This
//! one model covers standard codes (singleton channels, nothing noiseless),
//! entanglement assistance (channels whose sub-qudits are all noiseless) and
//! half-noisy `p²`-level channels (a pair with one noiseless member).
//!
//! The weight of an error is the number of channels its support touches.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_state::PauliError;
use crate::zp::{Modulus, ZVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    Noisy,
    /// Exactly half of the channel's sub-qudits are noiseless.
    HalfNoisy,
    /// Some but not half of the sub-qudits are noiseless.
    PartialNoisy,
    Noiseless,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelLayout {
    n: usize,
    channels: Vec<Vec<usize>>,
    noiseless: BTreeSet<usize>,
    channel_of: Vec<usize>,
    /// Per channel, the vertices that can carry errors (ascending).
    noisy: Vec<Vec<usize>>,
}

impl ChannelLayout {
    /// `channels` must partition `0..n`; `noiseless` must lie in `0..n`.
    pub fn new(n: usize, channels: Vec<Vec<usize>>, noiseless: BTreeSet<usize>) -> Result<Self> {
        let mut channel_of = vec![usize::MAX; n];
        let mut channels = channels;
        for (ci, ch) in channels.iter_mut().enumerate() {
            if ch.is_empty() {
                return Err(Error::InvalidLayout(format!("channel {ci} is empty")));
            }
            ch.sort_unstable();
            for &v in ch.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if channel_of[v] != usize::MAX {
                    return Err(Error::InvalidLayout(format!(
                        "vertex {v} appears in more than one channel"
                    )));
                }
                channel_of[v] = ci;
            }
        }
        if let Some(v) = channel_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidLayout(format!(
                "vertex {v} is not in any channel"
            )));
        }
        if let Some(&v) = noiseless.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let noisy = channels
            .iter()
            .map(|ch| {
                ch.iter()
                    .copied()
                    .filter(|v| !noiseless.contains(v))
                    .collect()
            })
            .collect();
        Ok(ChannelLayout {
            n,
            channels,
            noiseless,
            channel_of,
            noisy,
        })
    }

    /// Every vertex its own fully noisy channel.
    pub fn singletons(n: usize) -> Self {
        ChannelLayout::new(n, (0..n).map(|v| vec![v]).collect(), BTreeSet::new()).unwrap()
    }

    /// Two subsystems of `m` sub-qudits each, channel `i` = `{i, m + i}`.
    pub fn paired(m: usize, noiseless: BTreeSet<usize>) -> Result<Self> {
        ChannelLayout::new(2 * m, (0..m).map(|i| vec![i, m + i]).collect(), noiseless)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn channels(&self) -> &[Vec<usize>] {
        &self.channels
    }

    pub fn noiseless(&self) -> &BTreeSet<usize> {
        &self.noiseless
    }

    pub fn channel_of(&self, v: usize) -> usize {
        self.channel_of[v]
    }

    pub fn noisy_vertices(&self, channel: usize) -> &[usize] {
        &self.noisy[channel]
    }

    pub fn kind(&self, channel: usize) -> ChannelKind {
        let total = self.channels[channel].len();
        let quiet = total - self.noisy[channel].len();
        if quiet == 0 {
            ChannelKind::Noisy
        } else if quiet == total {
            ChannelKind::Noiseless
        } else if 2 * quiet == total {
            ChannelKind::HalfNoisy
        } else {
            ChannelKind::PartialNoisy
        }
    }

    /// Number of channels meeting `support`.
    pub fn channel_weight(&self, support: &BTreeSet<usize>) -> Result<usize> {
        if let Some(&v) = support.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.weight_unchecked(support.iter().copied()))
    }

    pub(crate) fn weight_unchecked(&self, support: impl Iterator<Item = usize>) -> usize {
        let mut hit = vec![false; self.channels.len()];
        let mut w = 0;
        for v in support {
            let c = self.channel_of[v];
            if !hit[c] {
                hit[c] = true;
                w += 1;
            }
        }
        w
    }

    /// Whether the error avoids every noiseless vertex.
    pub fn admissible(&self, e: &PauliError) -> Result<bool> {
        if e.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: e.n(),
            });
        }
        Ok(e.support().is_disjoint(&self.noiseless))
    }

    pub(crate) fn support_admissible_and_light(&self, support: &BTreeSet<usize>, d: usize) -> bool {
        support.is_disjoint(&self.noiseless) && self.weight_unchecked(support.iter().copied()) < d
    }

    /// Streams every admissible `X^s Z^t` with `0 < weight < d`.
    ///
    /// Order: weight ascending, then channel subsets lexicographically, then
    /// the tuple of per-channel local error indices lexicographically. A local
    /// index is the base-`p` number `s_{v1} t_{v1} s_{v2} t_{v2} …` over the
    /// channel's noisy vertices in ascending order.
    pub fn enumerate_errors(&self, p: Modulus, d: usize) -> ErrorStream<'_> {
        ErrorStream {
            walker: LocalWalker::new(self, p, d.saturating_sub(1), 2),
        }
    }

    /// Closed-form length of [`enumerate_errors`](Self::enumerate_errors).
    pub fn count_errors(&self, p: Modulus, d: usize) -> u128 {
        let per_channel: Vec<u128> = self
            .noisy
            .iter()
            .map(|vs| (p.get() as u128).pow(2 * vs.len() as u32) - 1)
            .collect();
        // elementary symmetric sums e_1 .. e_{d-1}
        let max = d.saturating_sub(1).min(per_channel.len());
        let mut esum = vec![0u128; max + 1];
        esum[0] = 1;
        for &x in &per_channel {
            for k in (1..=max).rev() {
                esum[k] += esum[k - 1] * x;
            }
        }
        esum[1..].iter().sum()
    }

    /// Streams every nonzero `s` whose support is admissible with weight `< d`.
    pub(crate) fn enumerate_shifts(&self, p: Modulus, d: usize) -> LocalWalker<'_> {
        LocalWalker::new(self, p, d.saturating_sub(1), 1)
    }
}

/// An error together with its channel weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedErrorClass {
    pub error: PauliError,
    pub weight: usize,
}

/// Odometer over channel subsets and nonzero local digit assignments.
pub(crate) struct LocalWalker<'a> {
    layout: &'a ChannelLayout,
    p: Modulus,
    digits_per_vertex: usize,
    max_weight: usize,
    /// Channels with at least one noisy vertex.
    eligible: Vec<usize>,
    /// Local configuration count per eligible channel, including zero.
    radix: Vec<u64>,
    weight: usize,
    combo: Vec<usize>,
    locals: Vec<u64>,
    done: bool,
}

impl<'a> LocalWalker<'a> {
    fn new(layout: &'a ChannelLayout, p: Modulus, max_weight: usize, digits_per_vertex: usize) -> Self {
        let eligible: Vec<usize> = (0..layout.channels.len())
            .filter(|&c| !layout.noisy[c].is_empty())
            .collect();
        let radix = eligible
            .iter()
            .map(|&c| (p.get() as u64).pow((digits_per_vertex * layout.noisy[c].len()) as u32))
            .collect();
        let mut w = LocalWalker {
            layout,
            p,
            digits_per_vertex,
            max_weight,
            eligible,
            radix,
            weight: 0,
            combo: Vec::new(),
            locals: Vec::new(),
            done: false,
        };
        w.start_weight(1);
        w
    }

    fn start_weight(&mut self, weight: usize) {
        if weight > self.max_weight || weight > self.eligible.len() {
            self.done = true;
            return;
        }
        self.weight = weight;
        self.combo = (0..weight).collect();
        self.locals = vec![1; weight];
    }

    fn advance(&mut self) {
        // local odometer, last channel fastest
        for i in (0..self.weight).rev() {
            let r = self.radix[self.combo[i]];
            if self.locals[i] + 1 < r {
                self.locals[i] += 1;
                return;
            }
            self.locals[i] = 1;
        }
        // next channel subset
        let k = self.weight;
        let m = self.eligible.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.combo[i] < m - k + i {
                self.combo[i] += 1;
                for j in i + 1..k {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                self.locals = vec![1; k];
                return;
            }
        }
        self.start_weight(self.weight + 1);
    }

    /// Writes the current assignment into per-vertex digit slots.
    fn fill(&self, slots: &mut [Vec<u32>]) -> usize {
        let p = self.p.get() as u64;
        for (&ei, &local) in self.combo.iter().zip(&self.locals) {
            let verts = &self.layout.noisy[self.eligible[ei]];
            let mut x = local;
            for &v in verts.iter().rev() {
                for k in (0..self.digits_per_vertex).rev() {
                    slots[k][v] = (x % p) as u32;
                    x /= p;
                }
            }
        }
        self.weight
    }
}

impl Iterator for LocalWalker<'_> {
    type Item = ZVec;

    fn next(&mut self) -> Option<ZVec> {
        if self.done {
            return None;
        }
        let mut slots = vec![vec![0u32; self.layout.n]];
        self.fill(&mut slots);
        self.advance();
        Some(ZVec::from_residues(self.p, slots.pop().unwrap()).unwrap())
    }
}

pub struct ErrorStream<'a> {
    walker: LocalWalker<'a>,
}

impl Iterator for ErrorStream<'_> {
    type Item = WeightedErrorClass;

    fn next(&mut self) -> Option<WeightedErrorClass> {
        let w = &mut self.walker;
        if w.done {
            return None;
        }
        let mut slots = vec![vec![0u32; w.layout.n]; 2];
        let weight = w.fill(&mut slots);
        w.advance();
        let t = slots.pop().unwrap();
        let s = slots.pop().unwrap();
        let error = PauliError::new(
            ZVec::from_residues(w.p, s).unwrap(),
            ZVec::from_residues(w.p, t).unwrap(),
        )
        .unwrap();
        Some(WeightedErrorClass { error, weight })
    }
}
