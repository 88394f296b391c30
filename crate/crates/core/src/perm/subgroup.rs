/// A subgroup stored as a sorted set of element indices of its parent group,
/// together with a small generating set (also parent indices).
///
/// Equality, hashing and ordering look only at the member set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl Subgroup {
    /// `members` must be closed under the parent product; generators are filled in later by the group.
    pub(crate) fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self {
            members,
            generators: Vec::new(),
        }
    }

    pub(crate) fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = generators;
        self
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Position of `g` in the sorted member list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn intersection_members(&self, other: &Subgroup) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect()
    }
}

/// A homomorphism recorded as an element-index image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(image: Vec<usize>) -> Self {
        Self { image }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn table(&self) -> &[usize] {
        &self.image
    }

    /// Element indices mapped to the target identity (index 0).
    pub fn kernel_members(&self) -> Vec<usize> {
        (0..self.image.len())
            .filter(|&g| self.image[g] == 0)
            .collect()
    }
}
