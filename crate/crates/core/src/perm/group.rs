use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::permutation::Permutation;
use crate::perm::subgroup::Subgroup;

pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// Full Cayley tables are kept only up to this order; larger groups multiply on demand.
const CAYLEY_TABLE_LIMIT: usize = 2_048;

/// A conjugacy class as a sorted element-index set; `representative` is its least index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// A finite permutation group with every element enumerated.
///
/// Elements are sorted lexicographically by image array, so index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    cayley: Option<Vec<u32>>,
    inverses: Vec<usize>,
    generator_indices: Vec<usize>,
    classes: OnceLock<Vec<ConjugacyClass>>,
    class_of: OnceLock<Vec<usize>>,
    normals: OnceLock<Vec<Subgroup>>,
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` with the default cap.
    pub fn closure(name: &str, degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::closure_with_cap(name, degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn closure_with_cap(
        name: &str,
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut found = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        found.sort();
        let lookup: HashMap<Permutation, usize> = found
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let n = found.len();
        let cayley = (n <= CAYLEY_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = lookup[&found[a].compose(&found[b])] as u32;
                }
            }
            t
        });
        let inverses = found.iter().map(|p| lookup[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| lookup[g]).collect();
        Ok(Self {
            name: name.to_string(),
            degree,
            generators,
            elements: found,
            lookup,
            cayley,
            inverses,
            generator_indices,
            classes: OnceLock::new(),
            class_of: OnceLock::new(),
            normals: OnceLock::new(),
        })
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        Self::closure(&format!("S{n}"), n.max(1), gens).expect("symmetric group within cap")
    }

    /// The alternating group on `n` points.
    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        Self::closure(&format!("A{n}"), n.max(1), gens).expect("alternating group within cap")
    }

    /// The cyclic group of order `n` acting regularly.
    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            vec![]
        };
        Self::closure(&format!("C{n}"), n.max(1), gens).expect("cyclic group within cap")
    }

    /// The dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let refl_cycles: Vec<Vec<usize>> = (1..n)
            .filter(|&i| i < n - i)
            .map(|i| vec![i, n - i])
            .collect();
        let refl = Permutation::from_cycles(n, &refl_cycles).unwrap();
        Self::closure(&format!("D{}", 2 * n), n, vec![rot, refl])
            .expect("dihedral group within cap")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.lookup[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x g x⁻¹`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        (0..self.order()).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_indices;
        g.iter().all(|&a| g.iter().all(|&b| self.commute(a, b)))
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_id = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for s in 0..n {
                if class_id[s] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = vec![s];
                class_id[s] = id;
                let mut k = 0;
                while k < members.len() {
                    let x = members[k];
                    for &g in &self.generator_indices {
                        let y = self.conj(g, x);
                        if class_id[y] == usize::MAX {
                            class_id[y] = id;
                            members.push(y);
                        }
                    }
                    k += 1;
                }
                members.sort_unstable();
                classes.push(ConjugacyClass {
                    representative: members[0],
                    members,
                });
            }
            classes
        })
    }

    /// Index into [`Self::conjugacy_classes`] for each element.
    pub fn class_index(&self) -> &[usize] {
        self.class_of.get_or_init(|| {
            let mut out = vec![0; self.order()];
            for (k, c) in self.conjugacy_classes().iter().enumerate() {
                for &m in &c.members {
                    out[m] = k;
                }
            }
            out
        })
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        self.subgroup_from_members((0..self.order()).filter(|&x| self.commute(x, g)).collect())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members((0..self.order()).collect())
            .with_generators(self.generator_indices.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_members(vec![self.identity()])
    }

    pub(crate) fn normals_cell(&self) -> &OnceLock<Vec<Subgroup>> {
        &self.normals
    }
}
