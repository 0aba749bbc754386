//! State matrices of a minimal relation automaton and the matrix-index
//! successor used to build the information-set closure.

use std::fmt;

use crate::alphabet::Symbol;
use crate::automata::{StateId, TwoTapeDfa};

/// Square matrix of automaton states. Entry `(i, j)` is the state reached
/// on the pair (representative `i`, representative `j`) of the
/// interchangeability classes inside one information set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateMatrix {
    dim: usize,
    entries: Vec<StateId>,
}

impl StateMatrix {
    pub fn new(dim: usize, entries: Vec<StateId>) -> Self {
        assert_eq!(entries.len(), dim * dim, "matrix entries must be dim²");
        StateMatrix { dim, entries }
    }

    pub fn singleton(state: StateId) -> Self {
        StateMatrix::new(1, vec![state])
    }

    pub fn from_rows(rows: &[Vec<StateId>]) -> Self {
        let dim = rows.len();
        let entries: Vec<StateId> = rows.iter().flatten().copied().collect();
        StateMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> StateId {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<StateId>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    fn column_equal(&self, a: usize, b: usize) -> bool {
        (0..self.dim).all(|i| self.get(i, a) == self.get(i, b))
    }

    /// Keeps only the rows and columns listed in `keep`, in that order.
    fn restrict(&self, keep: &[usize]) -> StateMatrix {
        let mut entries = Vec::with_capacity(keep.len() * keep.len());
        for &i in keep {
            for &j in keep {
                entries.push(self.get(i, j));
            }
        }
        StateMatrix::new(keep.len(), entries)
    }

    pub fn display_with<'a>(&'a self, r: &'a TwoTapeDfa) -> impl fmt::Display + 'a {
        MatrixDisplay { m: self, r }
    }
}

struct MatrixDisplay<'a> {
    m: &'a StateMatrix,
    r: &'a TwoTapeDfa,
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.m.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let names: Vec<&str> = row.iter().map(|&q| self.r.name(q)).collect();
            write!(f, "{}", names.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Expands every entry by the full pair alphabet: entry
/// `((i, a), (j, b))` is `δ(M[i][j], (a, b))`, with rows ordered by `i`
/// first, then `a`.
pub fn transform(m: &StateMatrix, r: &TwoTapeDfa) -> StateMatrix {
    let k = r.base().len();
    let n = m.dim() * k;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..m.dim() {
        for a in 0..k {
            for j in 0..m.dim() {
                for b in 0..k {
                    entries.push(r.step(m.get(i, j), a, b));
                }
            }
        }
    }
    StateMatrix::new(n, entries)
}

/// A matrix together with the position of the current history's class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixIndexState {
    pub matrix: StateMatrix,
    /// Zero-based column.
    pub column: usize,
}

impl MatrixIndexState {
    pub fn initial(r: &TwoTapeDfa) -> Self {
        MatrixIndexState {
            matrix: StateMatrix::singleton(r.initial()),
            column: 0,
        }
    }

    /// One-based index, as usually written.
    pub fn index(&self) -> usize {
        self.column + 1
    }

    pub fn display_with<'a>(&'a self, r: &'a TwoTapeDfa) -> impl fmt::Display + 'a {
        StateDisplay { s: self, r }
    }
}

struct StateDisplay<'a> {
    s: &'a MatrixIndexState,
    r: &'a TwoTapeDfa,
}

impl fmt::Display for StateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s.matrix.display_with(self.r), self.s.index())
    }
}

/// Successor of `(M, column)` on input `c`: expand, keep the classes still
/// related to the chosen one, then merge duplicate columns keeping the
/// first of each.
pub fn successor(m: &StateMatrix, column: usize, c: Symbol, r: &TwoTapeDfa) -> MatrixIndexState {
    let k = r.base().len();
    let t = transform(m, r);
    let mut j = column * k + c;
    let mut keep: Vec<usize> = (0..t.dim()).filter(|&u| r.is_accepting(t.get(u, j))).collect();
    j = keep.iter().position(|&u| u == j).expect("a class is related to itself");
    let mut n = t.restrict(&keep);
    loop {
        let dim = n.dim();
        let dup = (0..dim).find_map(|p| ((p + 1)..dim).find(|&q| n.column_equal(p, q)).map(|q| (p, q)));
        let Some((p, q)) = dup else { break };
        keep = (0..dim).filter(|&u| u != q).collect();
        n = n.restrict(&keep);
        if j == q {
            j = p;
        } else if j > q {
            j -= 1;
        }
    }
    MatrixIndexState { matrix: n, column: j }
}
