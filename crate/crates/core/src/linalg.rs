//! Sparse exact linear algebra over [`CycScalar`].

use std::collections::{BTreeMap, HashMap};

use crate::cyclotomic::CycScalar;

/// Sorted `(index, coefficient)` pairs with no stored zeros.
pub type SparseVec = Vec<(usize, CycScalar)>;

/// Accumulates terms by index, dropping zeros on output.
#[derive(Default, Clone, Debug)]
pub struct Accumulator {
    terms: BTreeMap<usize, CycScalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => *v += c,
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &[(usize, CycScalar)], c: &CycScalar) {
        if c.is_one() {
            for (i, x) in v {
                self.add(*i, x);
            }
        } else {
            for (i, x) in v {
                self.add(*i, &(x * c));
            }
        }
    }

    pub fn into_sparse(self) -> SparseVec {
        self.terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// Accumulator keyed by index pairs, used for elements of a tensor square.
#[derive(Default, Clone, Debug)]
pub struct PairAccumulator {
    terms: HashMap<(usize, usize), CycScalar>,
}

impl PairAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, j: usize, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(v) => *v += c,
            None => {
                self.terms.insert((i, j), c.clone());
            }
        }
    }

    pub fn from_terms(t: &[(usize, usize, CycScalar)]) -> Self {
        let mut acc = Self::new();
        for (a, b, c) in t {
            acc.add(*a, *b, c);
        }
        acc
    }

    pub fn into_sorted(self) -> Vec<(usize, usize, CycScalar)> {
        let mut v: Vec<_> = self
            .terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| (i, j, c))
            .collect();
        v.sort_by_key(|t| (t.0, t.1));
        v
    }
}

pub fn sparse_scale(v: &[(usize, CycScalar)], c: &CycScalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter()
        .map(|(i, x)| (*i, x * c))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// `a + c·b` for sorted sparse vectors.
pub fn sparse_axpy(a: &[(usize, CycScalar)], b: &[(usize, CycScalar)], c: &CycScalar) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = &b[j].1 * c;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * c);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_get(v: &[(usize, CycScalar)], idx: usize) -> CycScalar {
    match v.binary_search_by_key(&idx, |t| t.0) {
        Ok(p) => v[p].1.clone(),
        Err(_) => CycScalar::zero(),
    }
}

pub fn sparse_eq(a: &[(usize, CycScalar)], b: &[(usize, CycScalar)]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && x.1 == y.1)
}

/// Row-echelon basis built incrementally; every stored row has leading coefficient 1.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current basis and stores it if independent.
    /// Returns the pivot column of the new row, if any.
    pub fn insert(&mut self, mut row: SparseVec) -> Option<usize> {
        loop {
            let (lead, c) = match row.first() {
                None => return None,
                Some((l, c)) => (*l, c.clone()),
            };
            match self.pivot_row.get(&lead) {
                Some(&r) => {
                    row = sparse_axpy(&row, &self.rows[r], &(-&c));
                }
                None => {
                    let inv = c.inv().expect("nonzero leading coefficient");
                    let row = sparse_scale(&row, &inv);
                    self.pivot_row.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return Some(lead);
                }
            }
        }
    }

    /// Converts to reduced row-echelon form; returns rows sorted by pivot.
    pub fn reduced(mut self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        // Process pivots from the largest column down so each elimination only
        // touches columns to the right of the current row's pivot.
        for (pos, &r) in order.iter().enumerate() {
            let piv = self.rows[r][0].0;
            let prow = self.rows[r].clone();
            for &other in &order[pos + 1..] {
                let c = sparse_get(&self.rows[other], piv);
                if !c.is_zero() {
                    self.rows[other] = sparse_axpy(&self.rows[other], &prow, &(-&c));
                }
            }
        }
        order.reverse();
        order
            .into_iter()
            .map(|r| std::mem::take(&mut self.rows[r]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Inconsistent,
    Underdetermined { free: usize },
}

/// Basis of the solution space of the homogeneous system whose rows are `equations`.
pub fn nullspace(equations: impl IntoIterator<Item = SparseVec>, n: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for eq in equations {
        ech.insert(eq);
        if ech.rank() == n {
            return Vec::new();
        }
    }
    let rows = ech.reduced();
    let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !is_pivot.contains(c)) {
        let mut acc = Accumulator::new();
        acc.add(free, &CycScalar::one());
        for (row, &p) in rows.iter().zip(&pivots) {
            let c = sparse_get(row, free);
            if !c.is_zero() {
                acc.add(p, &(-&c));
            }
        }
        basis.push(acc.into_sparse());
    }
    basis
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Solves `A x = b` for a unique solution. Equations are `(row, rhs)` pairs.
/// The system is split into independent blocks of unknowns before elimination.
pub fn solve_unique(
    equations: Vec<(SparseVec, CycScalar)>,
    n: usize,
) -> Result<Vec<CycScalar>, SolveError> {
    let mut uf = UnionFind::new(n);
    for (row, rhs) in &equations {
        if row.is_empty() {
            if !rhs.is_zero() {
                return Err(SolveError::Inconsistent);
            }
            continue;
        }
        for w in row.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, (row, _)) in equations.iter().enumerate() {
        if let Some((first, _)) = row.first() {
            blocks.entry(uf.find(*first)).or_default().push(k);
        }
    }
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        members.entry(uf.find(v)).or_default().push(v);
    }
    let mut solution = vec![CycScalar::zero(); n];
    for (root, vars) in members {
        let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = vars.len();
        let mut ech = Echelon::new();
        for &k in blocks.get(&root).map(|v| v.as_slice()).unwrap_or(&[]) {
            let (row, rhs) = &equations[k];
            let mut r: SparseVec = row.iter().map(|(c, x)| (local[c], x.clone())).collect();
            r.sort_by_key(|t| t.0);
            if !rhs.is_zero() {
                r.push((m, rhs.clone()));
            }
            if ech.insert(r) == Some(m) {
                return Err(SolveError::Inconsistent);
            }
        }
        if ech.rank() < m {
            return Err(SolveError::Underdetermined {
                free: m - ech.rank(),
            });
        }
        for row in ech.reduced() {
            let p = row[0].0;
            if p == m {
                return Err(SolveError::Inconsistent);
            }
            solution[vars[p]] = sparse_get(&row, m);
        }
    }
    Ok(solution)
}
