//! Subgroup-level algorithms: generation, normal lattice, socle, quotients.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::group::FiniteGroup;
use crate::perm::permutation::Permutation;
use crate::perm::subgroup::{GroupHom, Subgroup};

/// Socle data: the socle itself and whether it is a non-abelian simple group.
#[derive(Clone, Debug)]
pub struct SocleInfo {
    pub socle: Subgroup,
    pub minimal_normals: Vec<Subgroup>,
    pub socle_simple_nonabelian: bool,
}

impl FiniteGroup {
    fn closure_members(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity()] = true;
        let mut out = vec![self.identity()];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out
    }

    /// Greedy generating set: keep each member not already in the span of the previous picks.
    fn reduce_generators(&self, members: &[usize], candidates: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: HashSet<usize> = HashSet::from([self.identity()]);
        for &c in candidates.iter().chain(members) {
            if span.len() == members.len() {
                break;
            }
            if !span.contains(&c) {
                gens.push(c);
                span = self.closure_members(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// Subgroup generated by the given element indices.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let members = self.closure_members(gens);
        let reduced = self.reduce_generators(&members, gens);
        Subgroup::from_members(members).with_generators(reduced)
    }

    /// Wraps a closed member set, choosing generators greedily.
    pub fn subgroup_from_members(&self, members: Vec<usize>) -> Subgroup {
        let s = Subgroup::from_members(members);
        let gens = self.reduce_generators(s.members(), &[]);
        s.with_generators(gens)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generator_indices()
            .iter()
            .all(|&g| h.generators().iter().all(|&x| h.contains(self.conj(g, x))))
            && h.members().iter().all(|&x| {
                self.generator_indices()
                    .iter()
                    .all(|&g| h.contains(self.conj(g, x)))
            })
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut conjugates = Vec::new();
        for &s in set {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            conjugates.push(x);
            for &g in self.generator_indices() {
                let y = self.conj(g, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.generate(&conjugates)
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = a
            .generators()
            .iter()
            .chain(b.generators())
            .copied()
            .collect();
        self.generate(&gens)
    }

    /// All normal subgroups, sorted by order then member set.
    ///
    /// Every normal subgroup is a join of normal closures of single classes.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.normals_cell().get_or_init(|| {
            let atoms: Vec<Subgroup> = self
                .conjugacy_classes()
                .iter()
                .skip(1)
                .map(|c| self.normal_closure(&[c.representative]))
                .collect();
            let mut found: Vec<Subgroup> = vec![self.trivial()];
            let mut keys: HashSet<Vec<usize>> = HashSet::from([found[0].members().to_vec()]);
            let mut k = 0;
            while k < found.len() {
                let base = found[k].clone();
                for a in &atoms {
                    if a.is_subset_of(&base) {
                        continue;
                    }
                    let j = self.join(&base, a);
                    if keys.insert(j.members().to_vec()) {
                        found.push(j);
                    }
                }
                k += 1;
            }
            found.sort_by(|a, b| {
                a.order()
                    .cmp(&b.order())
                    .then_with(|| a.members().cmp(b.members()))
            });
            found
        })
    }

    pub fn centralize_each_other(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.generators()
            .iter()
            .all(|&x| b.generators().iter().all(|&y| self.commute(x, y)))
    }

    /// The subgroup as a standalone permutation group on the same points.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: &str) -> FiniteGroup {
        let gens: Vec<Permutation> = h
            .generators()
            .iter()
            .map(|&g| self.element(g).clone())
            .collect();
        FiniteGroup::closure_with_cap(name, self.degree(), gens, usize::MAX)
            .expect("subgroup of an enumerated group")
    }

    /// True iff the group has exactly two normal subgroups.
    pub fn is_simple(&self) -> bool {
        self.order() > 1 && self.normal_subgroups().len() == 2
    }

    pub fn socle(&self) -> SocleInfo {
        let normals = self.normal_subgroups();
        let minimal: Vec<Subgroup> = normals
            .iter()
            .filter(|n| !n.is_trivial())
            .filter(|n| {
                !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subset_of(n))
            })
            .cloned()
            .collect();
        let socle = minimal
            .iter()
            .fold(self.trivial(), |acc, m| self.join(&acc, m));
        let as_group = self.subgroup_as_group(&socle, "socle");
        let socle_simple_nonabelian = as_group.is_simple() && !as_group.is_abelian();
        SocleInfo {
            socle,
            minimal_normals: minimal,
            socle_simple_nonabelian,
        }
    }

    pub fn is_almost_simple(&self) -> bool {
        self.socle().socle_simple_nonabelian
    }

    /// `G/N` acting on left cosets, with the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &m in n.members() {
                coset_of[self.mul(g, m)] = reps.len();
            }
            reps.push(g);
        }
        let idx = reps.len();
        let action = |g: usize| -> Permutation {
            Permutation::from_images(
                reps.iter()
                    .map(|&r| coset_of[self.mul(g, r)] as u32)
                    .collect(),
            )
            .expect("coset action is a bijection")
        };
        let gens: Vec<Permutation> = self
            .generator_indices()
            .iter()
            .map(|&g| action(g))
            .collect();
        let q =
            FiniteGroup::closure_with_cap(&format!("{}/N", self.name()), idx, gens, usize::MAX)?;
        let image = (0..self.order())
            .map(|g| q.index_of(&action(g)).expect("action lies in the quotient"))
            .collect();
        Ok((q, GroupHom::new(image)))
    }

    pub fn has_normal_subgroup_of_index(&self, m: usize) -> Option<Subgroup> {
        if m == 0 || self.order() % m != 0 {
            return None;
        }
        self.normal_subgroups()
            .iter()
            .find(|n| n.order() * m == self.order())
            .cloned()
    }

    /// `[G,G]` as the normal closure of commutators of generators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generator_indices();
        let comms: Vec<usize> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn abelianization(&self) -> (FiniteGroup, GroupHom) {
        self.quotient(&self.derived_subgroup())
            .expect("derived subgroup is normal")
    }

    /// Exhaustive check that `hom` is multiplicative from `self` into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, hom: &GroupHom) -> bool {
        hom.apply(self.identity()) == target.identity()
            && (0..self.order()).all(|a| {
                (0..self.order())
                    .all(|b| hom.apply(self.mul(a, b)) == target.mul(hom.apply(a), hom.apply(b)))
            })
    }

    /// Every subgroup, built bottom-up by adjoining one cyclic generator at a time.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        // One generator per cyclic subgroup suffices.
        let mut cyclic_keys: HashSet<Vec<usize>> = HashSet::new();
        let mut cyclic_gens = Vec::new();
        for g in 1..self.order() {
            let mut m = self.closure_members(&[g]);
            m.sort_unstable();
            if cyclic_keys.insert(m) {
                cyclic_gens.push(g);
            }
        }
        let mut found = vec![self.trivial()];
        let mut keys: HashSet<Vec<usize>> = HashSet::from([found[0].members().to_vec()]);
        let mut k = 0;
        while k < found.len() {
            let base = found[k].clone();
            for &g in &cyclic_gens {
                if base.contains(g) {
                    continue;
                }
                let mut gens = base.generators().to_vec();
                gens.push(g);
                let members = self.closure_members(&gens);
                let mut key = members.clone();
                key.sort_unstable();
                if keys.insert(key) {
                    found.push(Subgroup::from_members(members).with_generators(gens));
                }
            }
            k += 1;
        }
        found.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members().cmp(b.members()))
        });
        found
    }
}
