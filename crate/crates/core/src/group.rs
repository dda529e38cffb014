//! The subgroups `S_n`, `A_n`, `C_n`, `D_n` of the symmetric group, their
//! action on `n`-bit strings, and orbit/stabilizer records.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An `n`-bit string `i₁i₂…i_n`, position 1 leftmost (most significant).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: u8,
    value: u64,
}

impl BitString {
    pub const MAX_LEN: usize = 63;

    pub fn new(n: usize, value: u64) -> Result<Self> {
        if n == 0 || n > Self::MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "bit string length {n} out of range"
            )));
        }
        if value >> n != 0 {
            return Err(Error::InvalidInput(format!(
                "value {value} does not fit in {n} bits"
            )));
        }
        Ok(Self { n: n as u8, value })
    }

    pub(crate) fn new_unchecked(n: usize, value: u64) -> Self {
        Self { n: n as u8, value }
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The string read as a binary integer.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Bit at one-based position `k`.
    pub fn bit(&self, k: usize) -> u8 {
        (self.value >> (self.len() - k) & 1) as u8
    }

    pub fn weight(&self) -> usize {
        self.value.count_ones() as usize
    }

    pub fn reversed(&self) -> Self {
        let n = self.len();
        let mut v = 0;
        for j in 0..n {
            if self.value >> j & 1 == 1 {
                v |= 1 << (n - 1 - j);
            }
        }
        Self::new_unchecked(n, v)
    }

    /// `ε^k` applied to the string: a right cyclic shift by `k`.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.len();
        let k = k % n;
        if k == 0 {
            return *self;
        }
        let mask = (1u64 << n) - 1;
        Self::new_unchecked(n, ((self.value >> k) | (self.value << (n - k))) & mask)
    }

    pub fn complement(&self) -> Self {
        Self::new_unchecked(self.len(), !self.value & ((1u64 << self.len()) - 1))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.len())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidInput(format!("{s:?} is not a bit string")));
        }
        let value = u64::from_str_radix(s, 2)
            .map_err(|_| Error::InvalidInput(format!("{s:?} is too long")))?;
        Self::new(s.len(), value)
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(g·I)_k = i_{g⁻¹(k)}`.
pub fn act_on_bits(g: &Permutation, bits: &BitString) -> Result<BitString> {
    if g.n() != bits.len() {
        return Err(Error::ArityMismatch {
            expected: g.n(),
            found: bits.len(),
        });
    }
    Ok(BitString::new_unchecked(
        bits.len(),
        g.act_on_index(bits.value()),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    S,
    A,
    C,
    D,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::S => "S",
            GroupKind::A => "A",
            GroupKind::C => "C",
            GroupKind::D => "D",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(GroupKind::S),
            "A" | "a" => Ok(GroupKind::A),
            "C" | "c" => Ok(GroupKind::C),
            "D" | "d" => Ok(GroupKind::D),
            _ => Err(Error::InvalidInput(format!("unknown group kind {s:?}"))),
        }
    }
}

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Largest `n` for `S_n` and `A_n`.
    pub max_symmetric_n: usize,
    /// Largest `n` for `C_n` and `D_n`.
    pub max_cyclic_n: usize,
    /// Largest `n` for which all `2^n` strings are enumerated.
    pub max_bits: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            max_symmetric_n: 8,
            max_cyclic_n: 20,
            max_bits: 20,
        }
    }
}

/// A fully enumerated permutation group of one of the four supported kinds.
///
/// Elements are sorted by one-line notation, so the identity is element 0.
pub struct PermSubgroup {
    n: usize,
    kind: GroupKind,
    caps: EnumerationCaps,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

pub type GroupRef = Arc<PermSubgroup>;

impl fmt::Debug for PermSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} (order {})", self.kind, self.n, self.order())
    }
}

pub fn make_subgroup(kind: GroupKind, n: usize) -> Result<GroupRef> {
    make_subgroup_with_caps(kind, n, EnumerationCaps::default())
}

pub fn make_subgroup_with_caps(
    kind: GroupKind,
    n: usize,
    caps: EnumerationCaps,
) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::InvalidInput("group arity must be at least 1".into()));
    }
    let cap = match kind {
        GroupKind::S | GroupKind::A => caps.max_symmetric_n,
        GroupKind::C | GroupKind::D => caps.max_cyclic_n,
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group enumeration",
            n,
            cap,
        });
    }

    let generators = match kind {
        GroupKind::S => (1..n)
            .map(|j| Permutation::transposition(n, j, j + 1))
            .collect::<Result<Vec<_>>>()?,
        GroupKind::A => three_cycles(n),
        GroupKind::C => vec![Permutation::full_cycle(n)],
        GroupKind::D => vec![Permutation::full_cycle(n), Permutation::reversal(n)],
    };

    let mut elements = close_under(&generators, n);
    elements.sort();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();

    Ok(Arc::new(PermSubgroup {
        n,
        kind,
        caps,
        generators,
        elements,
        index,
    }))
}

fn three_cycles(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in a + 1..=n {
                if c != b {
                    out.push(Permutation::cycle(n, &[a, b, c]).expect("distinct points"));
                }
            }
        }
    }
    out
}

/// Breadth-first closure of `{e}` under left multiplication by `generators`.
pub(crate) fn close_under(generators: &[Permutation], n: usize) -> Vec<Permutation> {
    let id = Permutation::identity(n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

impl PermSubgroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn caps(&self) -> EnumerationCaps {
        self.caps
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn compose_idx(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inverse_idx(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// Short label such as `A4`.
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.n)
    }
}

/// A `G`-orbit `[I]` of bit strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    group_kind: GroupKind,
    n: usize,
    group_order: usize,
    representative: BitString,
    members: Vec<BitString>,
    transversal: Vec<usize>,
    stabilizer: Vec<usize>,
}

impl OrbitRecord {
    pub fn group_kind(&self) -> GroupKind {
        self.group_kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// The member that is largest as a binary integer.
    pub fn representative(&self) -> BitString {
        self.representative
    }

    /// Members in descending binary order (so the representative is first).
    pub fn members(&self) -> &[BitString] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, bits: &BitString) -> bool {
        self.position(bits).is_some()
    }

    pub fn position(&self, bits: &BitString) -> Option<usize> {
        self.members
            .binary_search_by(|m| bits.value().cmp(&m.value()))
            .ok()
    }

    /// Group-element indices `g` with `g·representative = members[i]`,
    /// aligned with [`members`](Self::members).
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Group-element indices fixing the representative.
    pub fn stabilizer(&self) -> &[usize] {
        &self.stabilizer
    }

    pub fn stabilizer_order(&self) -> usize {
        self.stabilizer.len()
    }

    pub fn weight(&self) -> usize {
        self.representative.weight()
    }
}

pub fn orbit_of(group: &PermSubgroup, bits: &BitString) -> Result<OrbitRecord> {
    if group.n() != bits.len() {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: bits.len(),
        });
    }
    let n = group.n();
    let representative = group
        .elements()
        .iter()
        .map(|g| g.act_on_index(bits.value()))
        .max()
        .expect("group is non-empty");

    let mut first_hit: HashMap<u64, usize> = HashMap::new();
    let mut stabilizer = Vec::new();
    for (i, g) in group.elements().iter().enumerate() {
        let image = g.act_on_index(representative);
        first_hit.entry(image).or_insert(i);
        if image == representative {
            stabilizer.push(i);
        }
    }
    let mut pairs: Vec<(u64, usize)> = first_hit.into_iter().collect();
    pairs.sort_unstable_by(|a, b| b.0.cmp(&a.0));

    Ok(OrbitRecord {
        group_kind: group.kind(),
        n,
        group_order: group.order(),
        representative: BitString::new_unchecked(n, representative),
        members: pairs
            .iter()
            .map(|&(v, _)| BitString::new_unchecked(n, v))
            .collect(),
        transversal: pairs.iter().map(|&(_, g)| g).collect(),
        stabilizer,
    })
}

/// Partitions all `2^n` strings into orbits, sorted by representative
/// descending.
pub fn all_orbits(group: &PermSubgroup) -> Result<Vec<OrbitRecord>> {
    let n = group.n();
    let cap = group.caps().max_bits;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "bit-string enumeration",
            n,
            cap,
        });
    }
    let mut visited = vec![false; 1 << n];
    let mut out = Vec::new();
    for value in (0..1u64 << n).rev() {
        if visited[value as usize] {
            continue;
        }
        let orbit = orbit_of(group, &BitString::new_unchecked(n, value))?;
        for m in orbit.members() {
            visited[m.value() as usize] = true;
        }
        out.push(orbit);
    }
    Ok(out)
}
