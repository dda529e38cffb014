//! One-dimensional characters `t: G → U(1)` of a permutation group,
//! stored exactly as roots of unity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    close_under, make_subgroup_with_caps, EnumerationCaps, GroupKind, GroupRef, OrbitRecord,
    PermSubgroup,
};
use crate::perm::{parse_cycles, Permutation};

/// Snapping tolerance for numerically measured phases.
pub const SNAP_TOL: f64 = 1e-6;

/// A root of unity `e^{2πi·q}` stored as the fraction `q ∈ [0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub fn zero() -> Self {
        Phase(Ratio::from_integer(0))
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom <= 0 {
            return Err(Error::InvalidInput(format!(
                "bad phase denominator {denom}"
            )));
        }
        Ok(Self::wrap(Ratio::new(numer, denom)))
    }

    fn wrap(r: Ratio<i64>) -> Self {
        let frac = r - r.floor();
        Phase(frac)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn add(self, other: Phase) -> Phase {
        Self::wrap(self.0 + other.0)
    }

    pub fn neg(self) -> Phase {
        Self::wrap(-self.0)
    }

    pub fn scale(self, k: i64) -> Phase {
        Self::wrap(self.0 * k)
    }

    /// `e^{2πi·q}`, exact for multiples of a quarter turn.
    pub fn to_complex(&self) -> Complex64 {
        match (self.numer(), self.denom()) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            (p, q) => Complex64::from_polar(1.0, std::f64::consts::TAU * p as f64 / q as f64),
        }
    }

    /// The `order`-th root of unity closest to `z`, if within [`SNAP_TOL`].
    pub fn snap(z: Complex64, order: usize) -> Option<Phase> {
        let order = order.max(1) as i64;
        let turns = z.arg() / std::f64::consts::TAU;
        let k = (turns * order as f64).round() as i64;
        let p = Phase::new(k, order).ok()?;
        ((z - p.to_complex()).norm() <= SNAP_TOL).then_some(p)
    }

    /// `±1` as an integer when the phase is `0` or `1/2`.
    pub fn as_sign(&self) -> Option<i8> {
        match (self.numer(), self.denom()) {
            (0, _) => Some(1),
            (1, 2) => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `"p/q"` or an integer (turns of `2π`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad phase fraction {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => Phase::new(
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => Phase::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A homomorphism `t: G → U(1)`; `values[i]` is the phase of `G.element(i)`.
#[derive(Clone)]
pub struct PhaseHom {
    group: GroupRef,
    values: Vec<Phase>,
}

impl fmt::Debug for PhaseHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generator_phases()
            .iter()
            .map(|(g, p)| format!("{g}->{p}"))
            .collect();
        write!(f, "PhaseHom[{}]{{{}}}", self.group.label(), gens.join(", "))
    }
}

impl PartialEq for PhaseHom {
    fn eq(&self, other: &Self) -> bool {
        self.group.kind() == other.group.kind()
            && self.group.n() == other.group.n()
            && self.values == other.values
    }
}

impl Eq for PhaseHom {}

impl PhaseHom {
    pub fn trivial(group: &GroupRef) -> Self {
        Self {
            group: Arc::clone(group),
            values: vec![Phase::zero(); group.order()],
        }
    }

    /// Extends phases given on a generating set to the whole group,
    /// checking the homomorphism law on every Cayley-graph edge.
    pub fn from_generator_phases(
        group: &GroupRef,
        assignment: &[(Permutation, Phase)],
    ) -> Result<Self> {
        let gens: Vec<(usize, Phase)> = assignment
            .iter()
            .map(|(g, p)| {
                group
                    .index_of(g)
                    .map(|i| (i, *p))
                    .ok_or_else(|| Error::NotInGroup(g.to_string()))
            })
            .collect::<Result<_>>()?;

        let mut values: Vec<Option<Phase>> = vec![None; group.order()];
        values[0] = Some(Phase::zero());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let vx = values[x].expect("queued elements are assigned");
            for &(g, pg) in &gens {
                let y = group.compose_idx(g, x);
                let vy = pg.add(vx);
                match values[y] {
                    None => {
                        values[y] = Some(vy);
                        queue.push_back(y);
                    }
                    Some(existing) if existing != vy => {
                        return Err(Error::NotAHomomorphism(format!(
                            "{} would need phases {existing} and {vy}",
                            group.element(y)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "listed generators do not reach {}",
                        group.element(i)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group: Arc::clone(group),
            values,
        })
    }

    /// Phases on the group's own generators.
    pub fn from_phases_on_generators(group: &GroupRef, phases: &[Phase]) -> Result<Self> {
        if phases.len() != group.generators().len() {
            return Err(Error::InvalidInput(format!(
                "{} has {} generators, got {} phases",
                group.label(),
                group.generators().len(),
                phases.len()
            )));
        }
        let pairs: Vec<_> = group
            .generators()
            .iter()
            .cloned()
            .zip(phases.iter().copied())
            .collect();
        Self::from_generator_phases(group, &pairs)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn phase_at(&self, index: usize) -> Phase {
        self.values[index]
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn phase(&self, g: &Permutation) -> Result<Phase> {
        self.group
            .index_of(g)
            .map(|i| self.values[i])
            .ok_or_else(|| Error::NotInGroup(g.to_string()))
    }

    /// `t(g)` as a unit complex number.
    pub fn evaluate(&self, g: &Permutation) -> Result<Complex64> {
        Ok(self.phase(g)?.to_complex())
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Phase::is_zero)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn generator_phases(&self) -> Vec<(Permutation, Phase)> {
        self.group
            .generators()
            .iter()
            .map(|g| {
                (
                    g.clone(),
                    self.values[self.group.index_of(g).expect("generator")],
                )
            })
            .collect()
    }

    /// Exhaustive check of `t(gh) = t(g)t(h)` over the full table.
    pub fn satisfies_homomorphism_law(&self) -> bool {
        let order = self.group.order();
        (0..order).all(|i| {
            (0..order).all(|j| {
                self.values[self.group.compose_idx(i, j)] == self.values[i].add(self.values[j])
            })
        })
    }

    pub fn to_spec(&self) -> CharacterSpec {
        CharacterSpec {
            kind: self.group.kind(),
            n: self.group.n(),
            generators: self
                .generator_phases()
                .into_iter()
                .map(|(g, p)| GeneratorPhase {
                    perm: g.to_string(),
                    angle: p,
                })
                .collect(),
        }
    }

    pub fn from_spec(spec: &CharacterSpec, caps: EnumerationCaps) -> Result<Self> {
        let group = make_subgroup_with_caps(spec.kind, spec.n, caps)?;
        let pairs = spec
            .generators
            .iter()
            .map(|gp| Ok((parse_cycles(&gp.perm, spec.n)?, gp.angle)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_phases(&group, &pairs)
    }
}

/// Serialized form of a character: phases on generators only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub kind: GroupKind,
    pub n: usize,
    pub generators: Vec<GeneratorPhase>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorPhase {
    pub perm: String,
    /// Fraction of a full turn, e.g. `"1/3"`.
    pub angle: Phase,
}

/// Every character of `group`, trivial first.
///
/// Works from the group table: the commutator subgroup `G'` is built as
/// the normal closure of generator commutators, the abelian quotient
/// `G/G'` gets a non-redundant generating set, every consistent phase
/// assignment on that set is enumerated, and each one is lifted to `G`.
pub fn dual_group(group: &GroupRef) -> Vec<PhaseHom> {
    let derived = commutator_subgroup(group);
    let (coset_of, coset_count) = left_cosets(group, &derived);

    let reps: Vec<usize> = {
        let mut reps = vec![usize::MAX; coset_count];
        for (g, &c) in coset_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = g;
            }
        }
        reps
    };
    let q_mul = |a: usize, b: usize| coset_of[group.compose_idx(reps[a], reps[b])];

    // Non-redundant generating set of the quotient, with element orders.
    let mut q_gens: Vec<(usize, usize)> = Vec::new();
    let mut span: HashSet<usize> = HashSet::from([coset_of[0]]);
    for g in group.generators() {
        let c = coset_of[group.index_of(g).expect("generator")];
        if span.contains(&c) {
            continue;
        }
        let mut ord = 1;
        let mut x = c;
        while x != coset_of[0] {
            x = q_mul(c, x);
            ord += 1;
        }
        q_gens.push((c, ord));
        span = quotient_closure(&q_gens, coset_of[0], &q_mul);
    }

    let identity_coset = coset_of[0];
    let mut out = Vec::new();
    let mut choice = vec![0usize; q_gens.len()];
    loop {
        let assignment: Vec<(usize, Phase)> = q_gens
            .iter()
            .zip(&choice)
            .map(|(&(c, ord), &k)| (c, Phase::new(k as i64, ord as i64).expect("positive order")))
            .collect();
        if let Some(chi) = quotient_character(coset_count, identity_coset, &assignment, &q_mul) {
            out.push(PhaseHom {
                group: Arc::clone(group),
                values: coset_of.iter().map(|&c| chi[c]).collect(),
            });
        }
        // Odometer over the assignment space, first generator slowest.
        let mut pos = choice.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < q_gens[pos].1 {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn quotient_closure(
    gens: &[(usize, usize)],
    identity: usize,
    q_mul: &impl Fn(usize, usize) -> usize,
) -> HashSet<usize> {
    let mut seen = HashSet::from([identity]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for &(g, _) in gens {
            let y = q_mul(g, x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn quotient_character(
    size: usize,
    identity: usize,
    assignment: &[(usize, Phase)],
    q_mul: &impl Fn(usize, usize) -> usize,
) -> Option<Vec<Phase>> {
    let mut chi: Vec<Option<Phase>> = vec![None; size];
    chi[identity] = Some(Phase::zero());
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        let vx = chi[x]?;
        for &(g, pg) in assignment {
            let y = q_mul(g, x);
            let vy = pg.add(vx);
            match chi[y] {
                None => {
                    chi[y] = Some(vy);
                    queue.push_back(y);
                }
                Some(v) if v != vy => return None,
                Some(_) => {}
            }
        }
    }
    chi.into_iter().collect()
}

/// Normal closure of `{[a, b] : a, b generators}`.
pub fn commutator_subgroup(group: &PermSubgroup) -> Vec<Permutation> {
    let n = group.n();
    let gens = group.generators();
    let mut normal_gens: Vec<Permutation> = Vec::new();
    let mut members: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);

    let mut pending: Vec<Permutation> = Vec::new();
    for a in gens {
        for b in gens {
            pending.push(a.compose(b).compose(&a.inverse()).compose(&b.inverse()));
        }
    }
    while let Some(x) = pending.pop() {
        if members.contains(&x) {
            continue;
        }
        normal_gens.push(x.clone());
        members = close_under(&normal_gens, n).into_iter().collect();
        for g in gens {
            pending.push(g.compose(&x).compose(&g.inverse()));
        }
    }
    let mut out: Vec<Permutation> = members.into_iter().collect();
    out.sort();
    out
}

fn left_cosets(group: &PermSubgroup, subgroup: &[Permutation]) -> (Vec<usize>, usize) {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut count = 0;
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        for h in subgroup {
            let idx = group
                .index_of(&group.element(g).compose(h))
                .expect("closed");
            coset_of[idx] = count;
        }
        count += 1;
    }
    (coset_of, count)
}

/// The unique character of `group` taking the listed values, which need
/// not generate the group.
pub fn character_matching(group: &GroupRef, values: &[(Permutation, Phase)]) -> Result<PhaseHom> {
    let mut indexed = Vec::with_capacity(values.len());
    for (g, p) in values {
        let i = group
            .index_of(g)
            .ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        indexed.push((i, *p));
    }
    let mut hits = dual_group(group)
        .into_iter()
        .filter(|t| indexed.iter().all(|&(i, p)| t.phase_at(i) == p));
    match (hits.next(), hits.next()) {
        (Some(t), None) => Ok(t),
        (None, _) => Err(Error::NotAHomomorphism(format!(
            "no character of {} takes the listed values",
            group.label()
        ))),
        (Some(_), Some(_)) => Err(Error::InvalidInput(format!(
            "the listed values do not determine a unique character of {}",
            group.label()
        ))),
    }
}

/// True iff `t` is trivial on the stabilizer of the orbit representative.
pub fn compatible_with_orbit(t: &PhaseHom, orbit: &OrbitRecord) -> bool {
    debug_assert_eq!(t.group().kind(), orbit.group_kind());
    debug_assert_eq!(t.group().n(), orbit.n());
    orbit.stabilizer().iter().all(|&g| t.phase_at(g).is_zero())
}

/// Map from the printed permutation to its phase, for reports.
pub fn phase_table(t: &PhaseHom) -> HashMap<String, Phase> {
    t.group()
        .elements()
        .iter()
        .zip(t.values())
        .map(|(g, p)| (g.to_string(), *p))
        .collect()
}
