//! Brute-force reference computations by explicit enumeration of
//! histories. Nothing here uses products or normal forms: the relation is
//! only ever queried through runs on concrete word pairs.

use std::collections::HashMap;

use crate::alphabet::{words_of_length, Symbol, Word};
use crate::automata::{MealyMachine, StateId, TwoTapeDfa, WordPair};
use crate::error::{Error, Result};
use crate::synthesis::StateMatrix;

/// Largest depths the enumerations accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub partition: usize,
    pub matrix: usize,
    pub kernel: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            partition: 8,
            matrix: 6,
            kernel: 6,
        }
    }
}

impl OracleBudget {
    /// A budget allowing every enumeration up to `depth`.
    pub fn uniform(depth: usize) -> Self {
        OracleBudget {
            partition: depth,
            matrix: depth,
            kernel: depth,
        }
    }
}

fn check_depth(depth: usize, max: usize) -> Result<()> {
    if depth > max {
        return Err(Error::DepthBudgetExceeded { depth, max });
    }
    Ok(())
}

fn related(r: &TwoTapeDfa, x: &[Symbol], y: &[Symbol]) -> bool {
    r.accepts(x, y).expect("words over the base alphabet")
}

/// Information sets per length. `classes[ℓ]` lists the classes of
/// histories of length `ℓ`, each sorted lexicographically, ordered by their
/// least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    pub depth: usize,
    pub classes: Vec<Vec<Vec<Word>>>,
}

impl PartitionTable {
    /// Index of the class of `word` at its length.
    pub fn class_of(&self, word: &[Symbol]) -> Option<usize> {
        self.classes
            .get(word.len())?
            .iter()
            .position(|c| c.binary_search_by(|w| w.as_slice().cmp(word)).is_ok())
    }
}

fn classes_at(r: &TwoTapeDfa, len: usize) -> Vec<Vec<Word>> {
    let mut classes: Vec<Vec<Word>> = Vec::new();
    for w in words_of_length(r.base().len(), len) {
        match classes.iter_mut().find(|c| related(r, &c[0], &w)) {
            Some(c) => c.push(w),
            None => classes.push(vec![w]),
        }
    }
    classes
}

/// Partitions histories of every length up to `depth` by running `r` on
/// pairs against the least member of each class found so far.
pub fn enumerate_partition(r: &TwoTapeDfa, depth: usize, budget: &OracleBudget) -> Result<PartitionTable> {
    check_depth(depth, budget.partition)?;
    Ok(PartitionTable {
        depth,
        classes: (0..=depth).map(|len| classes_at(r, len)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoNode {
    pub length: usize,
    /// Index into the partition table's classes at `length`.
    pub class: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// The information tree restricted to lengths up to `depth`. Nodes at
/// `depth` have their branching degree computed from length `depth + 1`
/// but those children are not included as nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoTreeSlice {
    pub partition: PartitionTable,
    pub nodes: Vec<InfoNode>,
    pub degrees: Vec<usize>,
}

impl InfoTreeSlice {
    pub fn members(&self, node: usize) -> &[Word] {
        let n = &self.nodes[node];
        &self.partition.classes[n.length][n.class]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.parent.map(|p| (p, i)))
            .collect()
    }

    pub fn node_of(&self, word: &[Symbol]) -> Option<usize> {
        let class = self.partition.class_of(word)?;
        self.nodes.iter().position(|n| n.length == word.len() && n.class == class)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

pub fn info_tree(r: &TwoTapeDfa, depth: usize, budget: &OracleBudget) -> Result<InfoTreeSlice> {
    check_depth(depth + 1, budget.partition)?;
    let full = enumerate_partition(r, depth + 1, budget)?;
    let mut nodes = Vec::new();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    for len in 0..=depth {
        for (class, members) in full.classes[len].iter().enumerate() {
            let id = nodes.len();
            let parent = (len > 0).then(|| {
                let prefix = &members[0][..len - 1];
                ids[&(len - 1, full.class_of(prefix).expect("prefix is enumerated"))]
            });
            if let Some(p) = parent {
                let node: &mut InfoNode = &mut nodes[p];
                node.children.push(id);
            }
            ids.insert((len, class), id);
            nodes.push(InfoNode {
                length: len,
                class,
                parent,
                children: Vec::new(),
            });
        }
    }
    let degrees = nodes
        .iter()
        .map(|n| {
            if n.length < depth {
                n.children.len()
            } else {
                child_classes(&full, n.length, n.class).len()
            }
        })
        .collect();
    let mut partition = full;
    partition.classes.truncate(depth + 1);
    partition.depth = depth;
    Ok(InfoTreeSlice {
        partition,
        nodes,
        degrees,
    })
}

/// Classes at `len + 1` whose members extend a member of class `class` at
/// `len`, in class order.
fn child_classes(p: &PartitionTable, len: usize, class: usize) -> Vec<usize> {
    let mut out: Vec<usize> = p.classes[len + 1]
        .iter()
        .enumerate()
        .filter(|(_, c)| p.class_of(&c[0][..len]) == Some(class))
        .map(|(i, _)| i)
        .collect();
    out.sort_unstable();
    out
}

/// The rank of `τc` is the position, counted from 1, of its information set
/// among the children of the information set of `τ`, ordered by least
/// member.
pub fn rank_observation(r: &TwoTapeDfa, depth: usize, budget: &OracleBudget) -> Result<HashMap<Word, usize>> {
    let p = enumerate_partition(r, depth, budget)?;
    let mut ranks = HashMap::new();
    for len in 1..=depth {
        for (class, members) in p.classes[len].iter().enumerate() {
            let parent = p.class_of(&members[0][..len - 1]).expect("prefix is enumerated");
            let siblings = child_classes(&p, len - 1, parent);
            let rank = siblings.iter().position(|&c| c == class).expect("own class is a child") + 1;
            for w in members {
                ranks.insert(w.clone(), rank);
            }
        }
    }
    Ok(ranks)
}

/// Matrix and one-based index of `τ`, from the definition: the members of
/// the information set of `τ` are grouped by their behaviour against every
/// same-length history, groups are ordered by least member, and entries
/// are the states reached on pairs of least members.
pub fn brute_matrix(r: &TwoTapeDfa, tau: &[Symbol], budget: &OracleBudget) -> Result<(StateMatrix, usize)> {
    check_depth(tau.len(), budget.matrix)?;
    let all: Vec<Word> = words_of_length(r.base().len(), tau.len()).collect();
    let run = |x: &[Symbol], y: &[Symbol]| -> StateId { r.run_pair(x, y).expect("base alphabet") };
    let signature = |x: &[Symbol]| -> Vec<StateId> { all.iter().map(|pi| run(x, pi)).collect() };
    let mut groups: Vec<(Vec<StateId>, Word)> = Vec::new();
    let mut index = 0;
    for w in all.iter().filter(|w| related(r, tau, w)) {
        let sig = signature(w);
        let pos = match groups.iter().position(|(s, _)| *s == sig) {
            Some(i) => i,
            None => {
                groups.push((sig, w.clone()));
                groups.len() - 1
            }
        };
        if w.as_slice() == tau {
            index = pos + 1;
        }
    }
    let reps: Vec<&Word> = groups.iter().map(|(_, w)| w).collect();
    let rows: Vec<Vec<StateId>> = reps
        .iter()
        .map(|x| reps.iter().map(|y| run(x, y)).collect())
        .collect();
    Ok((StateMatrix::from_rows(&rows), index))
}

/// Searches for same-length histories up to `depth` on which equality of
/// observation histories disagrees with the relation. Returns the first
/// such pair in length-then-lexicographic order.
pub fn kernel_equal(
    m: &MealyMachine,
    r: &TwoTapeDfa,
    depth: usize,
    budget: &OracleBudget,
) -> Result<Option<WordPair>> {
    check_depth(depth, budget.kernel)?;
    for len in 0..=depth {
        let words: Vec<Word> = words_of_length(r.base().len(), len).collect();
        let obs: Vec<Word> = words.iter().map(|w| m.observe(w)).collect::<Result<_>>()?;
        for (i, x) in words.iter().enumerate() {
            for (j, y) in words.iter().enumerate() {
                if (obs[i] == obs[j]) != related(r, x, y) {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
    }
    Ok(None)
}
