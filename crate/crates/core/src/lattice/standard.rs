use std::fmt;

use super::{Lattice, DEFAULT_MAX_ELEMENTS};
use crate::error::{Error, Result};

/// The named lattice families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Standard {
    /// `0 < 1 < ... < n`.
    Chain(usize),
    /// Product of `chain(m)` and `chain(n)`.
    Grid(usize, usize),
    /// Subsets of an `n`-set.
    Boolean(usize),
    /// Bottom, top and `n` pairwise incomparable middle elements.
    Bowtie(usize),
    /// `M3`.
    Diamond,
    /// `N5`: `0 < a < b < 1` and `0 < c < 1`.
    Pentagon,
}

impl Standard {
    pub fn parse(kind: &str, params: &[usize]) -> Result<Standard> {
        let bad = |reason: &str| Error::BadParams {
            kind: kind.to_string(),
            reason: reason.to_string(),
        };
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s), got {}", params.len())))
            }
        };
        match kind {
            "chain" => arity(1).map(|_| Standard::Chain(params[0])),
            "grid" => arity(2).map(|_| Standard::Grid(params[0], params[1])),
            "boolean" => arity(1).map(|_| Standard::Boolean(params[0])),
            "bowtie" => {
                arity(1)?;
                if params[0] == 0 {
                    return Err(bad("bowtie needs at least one middle element"));
                }
                Ok(Standard::Bowtie(params[0]))
            }
            "diamond" => arity(0).map(|_| Standard::Diamond),
            "pentagon" => arity(0).map(|_| Standard::Pentagon),
            _ => Err(bad("unknown lattice kind")),
        }
    }

    pub fn size(&self) -> usize {
        match *self {
            Standard::Chain(n) => n.saturating_add(1),
            Standard::Grid(m, n) => m.saturating_add(1).saturating_mul(n.saturating_add(1)),
            Standard::Boolean(n) => {
                if n >= 63 {
                    usize::MAX
                } else {
                    1 << n
                }
            }
            Standard::Bowtie(n) => n.saturating_add(2),
            Standard::Diamond | Standard::Pentagon => 5,
        }
    }

    pub fn build(self) -> Result<Lattice> {
        self.build_with_cap(DEFAULT_MAX_ELEMENTS)
    }

    pub fn build_with_cap(self, cap: usize) -> Result<Lattice> {
        let size = self.size();
        let cap = cap.min(DEFAULT_MAX_ELEMENTS);
        if size > cap {
            return Err(Error::TooLarge { size, cap });
        }
        let (labels, pairs): (Vec<String>, Vec<(usize, usize)>) = match self {
            Standard::Chain(n) => (
                (0..=n).map(|i| i.to_string()).collect(),
                (0..n).map(|i| (i, i + 1)).collect(),
            ),
            Standard::Grid(m, n) => {
                let idx = |i: usize, j: usize| i * (n + 1) + j;
                let mut labels = Vec::new();
                let mut pairs = Vec::new();
                for i in 0..=m {
                    for j in 0..=n {
                        labels.push(format!("({i},{j})"));
                        if i < m {
                            pairs.push((idx(i, j), idx(i + 1, j)));
                        }
                        if j < n {
                            pairs.push((idx(i, j), idx(i, j + 1)));
                        }
                    }
                }
                (labels, pairs)
            }
            Standard::Boolean(n) => {
                let labels = (0..1usize << n)
                    .map(|mask| {
                        let items: Vec<String> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b.to_string()).collect();
                        format!("{{{}}}", items.join(","))
                    })
                    .collect();
                let mut pairs = Vec::new();
                for mask in 0..1usize << n {
                    for b in 0..n {
                        if mask >> b & 1 == 0 {
                            pairs.push((mask, mask | 1 << b));
                        }
                    }
                }
                (labels, pairs)
            }
            Standard::Bowtie(n) => {
                let mut labels = vec!["0".to_string()];
                labels.extend((1..=n).map(|i| format!("m{i}")));
                labels.push("1".to_string());
                let pairs = (1..=n).flat_map(|i| [(0, i), (i, n + 1)]).collect();
                (labels, pairs)
            }
            Standard::Diamond => (
                ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
                vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            ),
            Standard::Pentagon => (
                ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
                vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
            ),
        };
        Ok(Lattice::from_indexed(labels, &pairs, cap)?.with_shape(self))
    }
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Standard::Chain(n) => write!(f, "chain({n})"),
            Standard::Grid(m, n) => write!(f, "grid({m},{n})"),
            Standard::Boolean(n) => write!(f, "boolean({n})"),
            Standard::Bowtie(n) => write!(f, "bowtie({n})"),
            Standard::Diamond => write!(f, "diamond"),
            Standard::Pentagon => write!(f, "pentagon"),
        }
    }
}

/// Parses the `Display` form, e.g. `grid(2,1)` or `diamond`. `M3` and `N5`
/// are accepted as aliases.
impl std::str::FromStr for Standard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Standard> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a standard lattice: {s:?}"));
        let (kind, params) = match s.split_once('(') {
            Some((kind, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                let params = inner
                    .split(',')
                    .map(|p| p.trim())
                    .filter(|p| !p.is_empty())
                    .map(|p| p.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (kind.trim().to_ascii_lowercase(), params)
            }
            None => (s.to_ascii_lowercase(), Vec::new()),
        };
        let kind = match kind.as_str() {
            "m3" => "diamond",
            "n5" => "pentagon",
            k => k,
        };
        Standard::parse(kind, &params)
    }
}

/// Builds a standard lattice from a kind name and integer parameters.
pub fn make_standard(kind: &str, params: &[usize]) -> Result<Lattice> {
    Standard::parse(kind, params)?.build()
}
