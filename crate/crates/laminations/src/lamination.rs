//! Finite truncations of the rabbit and airplane laminations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use cyclic_order::{classify, Angle, Classification, FinitePartialMap};
use serde::{Deserialize, Serialize};

use crate::leaf::{crosses, Leaf};
use crate::LaminationError;

/// Which lamination to grow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Seed {
    /// The `n`-rabbit; `n = 2` is the basilica.
    Rabbit(usize),
    Airplane,
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Rabbit(2) => f.write_str("basilica"),
            Seed::Rabbit(n) => write!(f, "rabbit:{n}"),
            Seed::Airplane => f.write_str("airplane"),
        }
    }
}

impl FromStr for Seed {
    type Err = LaminationError;

    /// `basilica`, `airplane`, or `rabbit:N` (also `rabbitN`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LaminationError::UnknownSeed(s.to_string());
        match s {
            "basilica" => Ok(Seed::Rabbit(2)),
            "airplane" => Ok(Seed::Airplane),
            _ => {
                let n = s.strip_prefix("rabbit").ok_or_else(bad)?;
                let n: usize = n.strip_prefix(':').unwrap_or(n).parse().map_err(|_| bad())?;
                if n < 2 {
                    return Err(LaminationError::BadArity(n));
                }
                Ok(Seed::Rabbit(n))
            }
        }
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite set of identified angles, in increasing (cyclic) order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolygonClass {
    pub angles: Vec<Angle>,
}

impl PolygonClass {
    pub fn new(angles: impl IntoIterator<Item = Angle>) -> Self {
        let set: BTreeSet<Angle> = angles.into_iter().collect();
        PolygonClass {
            angles: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Consecutive pairs in cyclic order; a single leaf for two angles.
    pub fn sides(&self) -> Vec<Leaf> {
        let n = self.angles.len();
        match n {
            0 | 1 => Vec::new(),
            2 => vec![Leaf::new(self.angles[0].clone(), self.angles[1].clone()).expect("distinct")],
            _ => (0..n)
                .map(|i| Leaf::new(self.angles[i].clone(), self.angles[(i + 1) % n].clone()).expect("distinct"))
                .collect(),
        }
    }
}

/// The rabbit polygon `2^i / (2^n − 1)`, `i = 0 … n−1`: the angles of the
/// rays landing at the fixed point where the `n` ears meet.
pub fn rabbit_seed(n: usize) -> Result<PolygonClass, LaminationError> {
    if !(2..=62).contains(&n) {
        return Err(LaminationError::BadArity(n));
    }
    let q = (1i64 << n) - 1;
    Ok(PolygonClass::new((0..n).map(|i| Angle::frac(1 << i, q))))
}

/// The airplane leaf `{3/7, 4/7}`, of period 3 under doubling.
pub fn airplane_seed() -> Leaf {
    Leaf::new(Angle::frac(3, 7), Angle::frac(4, 7)).expect("distinct")
}

/// Leaves sharing endpoints, grouped as in union–find, with the doubled
/// angles of each group to keep classes injective under doubling.
struct ClassIndex {
    parent: BTreeMap<Angle, Angle>,
    members: BTreeMap<Angle, BTreeSet<Angle>>,
}

impl ClassIndex {
    fn new<'a>(leaves: impl IntoIterator<Item = &'a Leaf>) -> Self {
        let mut ix = ClassIndex {
            parent: BTreeMap::new(),
            members: BTreeMap::new(),
        };
        for l in leaves {
            ix.add(l);
        }
        ix
    }

    fn root(&self, x: &Angle) -> Angle {
        let mut cur = x.clone();
        while let Some(p) = self.parent.get(&cur) {
            if *p == cur {
                break;
            }
            cur = p.clone();
        }
        cur
    }

    fn class_of(&self, x: &Angle) -> BTreeSet<Angle> {
        self.members
            .get(&self.root(x))
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([x.clone()]))
    }

    fn add(&mut self, l: &Leaf) {
        let (a, b) = l.endpoints();
        for x in [a, b] {
            if !self.parent.contains_key(x) {
                self.parent.insert(x.clone(), x.clone());
                self.members.insert(x.clone(), BTreeSet::from([x.clone()]));
            }
        }
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            let moved = self.members.remove(&rb).expect("root has members");
            self.members.get_mut(&ra).expect("root has members").extend(moved);
            self.parent.insert(rb, ra);
        }
    }

    /// Whether adding `leaves` keeps doubling injective on every class.
    fn injective_after(&self, leaves: &[Leaf]) -> bool {
        let mut groups: Vec<BTreeSet<Angle>> = Vec::new();
        for l in leaves {
            let (a, b) = l.endpoints();
            let mut merged: BTreeSet<Angle> = self.class_of(a);
            merged.extend(self.class_of(b));
            let (touching, rest): (Vec<_>, Vec<_>) = groups.into_iter().partition(|g| !g.is_disjoint(&merged));
            for g in touching {
                merged.extend(g);
            }
            groups = rest;
            groups.push(merged);
        }
        groups
            .iter()
            .all(|g| g.iter().map(Angle::double).collect::<BTreeSet<_>>().len() == g.len())
    }
}

/// A finite truncation of a lamination: the forward orbit of the seed,
/// pulled back `generation` times under doubling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LaminationRepr")]
pub struct Lamination {
    seed: Seed,
    generation: usize,
    leaves: BTreeSet<Leaf>,
}

#[derive(Deserialize)]
struct LaminationRepr {
    seed: Seed,
    generation: usize,
    leaves: BTreeSet<Leaf>,
}

impl TryFrom<LaminationRepr> for Lamination {
    type Error = LaminationError;
    fn try_from(r: LaminationRepr) -> Result<Self, Self::Error> {
        let lam = Lamination {
            seed: r.seed,
            generation: r.generation,
            leaves: r.leaves,
        };
        if let Some((x, y)) = lam.first_crossing() {
            return Err(LaminationError::Crossing(x.to_string(), y.to_string()));
        }
        Ok(lam)
    }
}

impl Lamination {
    /// Generation 0: the seed's sides together with their forward images,
    /// so that the leaf set is invariant under doubling from the start.
    pub fn seed(seed: Seed) -> Result<Self, LaminationError> {
        let mut frontier: Vec<Leaf> = match seed {
            Seed::Rabbit(n) => rabbit_seed(n)?.sides(),
            Seed::Airplane => vec![airplane_seed()],
        };
        let mut leaves = BTreeSet::new();
        while let Some(l) = frontier.pop() {
            let d = l.double();
            leaves.insert(l);
            frontier.extend(d.filter(|d| !leaves.contains(d)));
        }
        Ok(Lamination {
            seed,
            generation: 0,
            leaves,
        })
    }

    /// The truncation at `generation`.
    pub fn generate(seed: Seed, generation: usize) -> Result<Self, LaminationError> {
        let mut lam = Lamination::seed(seed)?;
        for _ in 0..generation {
            lam = lam.pullback()?;
        }
        Ok(lam)
    }

    pub fn seed_kind(&self) -> Seed {
        self.seed
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn leaves(&self) -> &BTreeSet<Leaf> {
        &self.leaves
    }

    pub fn endpoints(&self) -> BTreeSet<Angle> {
        self.leaves
            .iter()
            .flat_map(|l| {
                let (a, b) = l.endpoints();
                [a.clone(), b.clone()]
            })
            .collect()
    }

    /// Adds the preimages of every leaf whose preimages are missing. Of the
    /// two pairings of the four preimage angles, one is kept whose leaves
    /// cross neither each other nor any leaf so far, and which leaves
    /// doubling injective on every class; pairing `A` wins ties.
    pub fn pullback(&self) -> Result<Lamination, LaminationError> {
        let mut out = self.leaves.clone();
        let mut classes = ClassIndex::new(&self.leaves);
        for l in &self.leaves {
            let pairings = l.preimage_pairings();
            if pairings.iter().any(|p| p.iter().all(|x| out.contains(x))) {
                continue;
            }
            let ok = |p: &[Leaf; 2]| {
                !crosses(&p[0], &p[1])
                    && p.iter().all(|x| out.iter().all(|y| !crosses(x, y)))
                    && classes.injective_after(p)
            };
            let chosen = pairings
                .iter()
                .find(|p| ok(p))
                .ok_or_else(|| LaminationError::NoConsistentPairing(l.to_string()))?;
            for x in chosen {
                classes.add(x);
                out.insert(x.clone());
            }
        }
        Ok(Lamination {
            seed: self.seed,
            generation: self.generation + 1,
            leaves: out,
        })
    }

    /// Some pair of crossing leaves, if any.
    pub fn first_crossing(&self) -> Option<(&Leaf, &Leaf)> {
        let v: Vec<&Leaf> = self.leaves.iter().collect();
        for (i, x) in v.iter().enumerate() {
            for y in &v[i + 1..] {
                if crosses(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_unlinked(&self) -> bool {
        self.first_crossing().is_none()
    }

    /// Every leaf doubles to a leaf of the set (or collapses).
    pub fn is_forward_invariant(&self) -> bool {
        self.leaves
            .iter()
            .all(|l| l.double().is_none_or(|d| self.leaves.contains(&d)))
    }

    /// The classes: connected components of the shared-endpoint relation.
    pub fn classes(&self) -> Vec<PolygonClass> {
        let ix = ClassIndex::new(&self.leaves);
        let mut out: Vec<PolygonClass> = ix.members.into_values().map(PolygonClass::new).collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, LaminationError> {
        serde_json::from_str(s).map_err(|e| LaminationError::Invalid(e.to_string()))
    }
}

/// Whether `m`, a bijection of the endpoint set of `lam`, preserves the
/// cyclic orientation and carries every class onto a class. A map whose
/// domain is the endpoint set but whose image is not cannot preserve the
/// classes and yields `false`.
pub fn automorphism_check(lam: &Lamination, m: &FinitePartialMap) -> Result<bool, LaminationError> {
    let pts = lam.endpoints();
    let sources: BTreeSet<Angle> = m.sources().cloned().collect();
    if sources != pts {
        return Err(LaminationError::NotBijection(
            "domain differs from the endpoint set".into(),
        ));
    }
    if m.targets().cloned().collect::<BTreeSet<_>>() != pts {
        return Ok(false);
    }
    if m.len() >= 3 && classify(m).expect("at least three points") != Classification::Preserving {
        return Ok(false);
    }
    let classes: BTreeSet<PolygonClass> = lam.classes().into_iter().collect();
    Ok(classes.iter().all(|c| {
        let image = PolygonClass::new(c.angles.iter().map(|x| m.get(x).expect("in domain").clone()));
        classes.contains(&image)
    }))
}
