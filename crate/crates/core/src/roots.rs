//! The two rank-two root-data worlds.
//!
//! Coordinates are always integral: for Ã₂ the coweight lattice Λ is written in
//! the basis of the two fundamental coweights with Gram matrix `[[2,1],[1,2]]`;
//! for C̃₂ it is the standard `ℤ²` with the identity form. Only ratios of
//! pairings ever matter, so the overall scale is irrelevant.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootKind {
    A2,
    C2,
}

impl RootKind {
    pub fn reps(self) -> [Rep; 2] {
        match self {
            RootKind::A2 => [Rep::Pi1, Rep::Pi2],
            RootKind::C2 => [Rep::Spin, Rep::St],
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::A2 => "A2",
            RootKind::C2 => "C2",
        })
    }
}

impl FromStr for RootKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A2" | "a2" => Ok(RootKind::A2),
            "C2" | "c2" => Ok(RootKind::C2),
            other => Err(Error::Spec(format!(
                "unknown root system '{other}' (expected A2 or C2)"
            ))),
        }
    }
}

/// The four supported representations of the complex dual group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Pi1,
    Pi2,
    Spin,
    St,
}

impl Rep {
    pub fn kind(self) -> RootKind {
        match self {
            Rep::Pi1 | Rep::Pi2 => RootKind::A2,
            Rep::Spin | Rep::St => RootKind::C2,
        }
    }

    /// The complementary representation π′ (pi1 ↔ pi2, spin ↔ st).
    pub fn partner(self) -> Rep {
        match self {
            Rep::Pi1 => Rep::Pi2,
            Rep::Pi2 => Rep::Pi1,
            Rep::Spin => Rep::St,
            Rep::St => Rep::Spin,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rep::Pi1 => "pi1",
            Rep::Pi2 => "pi2",
            Rep::Spin => "spin",
            Rep::St => "st",
        }
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "pi1" => Ok(Rep::Pi1),
            "pi2" => Ok(Rep::Pi2),
            "spin" => Ok(Rep::Spin),
            "st" => Ok(Rep::St),
            other => Err(Error::Spec(format!("unknown representation '{other}'"))),
        }
    }
}

/// A point of the coweight lattice Λ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn doubled(self) -> HalfVector {
        HalfVector::new(2 * self.x, 2 * self.y)
    }

    /// `det[self, other]`
    pub fn cross(self, other: LatticeVector) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_primitive(self) -> bool {
        num_integer::Integer::gcd(&self.x, &self.y) == 1
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.x, self * v.y)
    }
}

/// A point of ½Λ, stored by its doubled coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct HalfVector {
    pub x2: i64,
    pub y2: i64,
}

impl HalfVector {
    pub const fn new(x2: i64, y2: i64) -> Self {
        HalfVector { x2, y2 }
    }

    /// `½ v`
    pub fn half_of(v: LatticeVector) -> Self {
        HalfVector::new(v.x, v.y)
    }

    pub fn in_lattice(self) -> bool {
        self.x2 % 2 == 0 && self.y2 % 2 == 0
    }

    pub fn to_lattice(self) -> Option<LatticeVector> {
        self.in_lattice().then(|| LatticeVector::new(self.x2 / 2, self.y2 / 2))
    }

    /// Class of the point in ½Λ / Λ, as doubled coordinates mod 2.
    pub fn residue(self) -> (i64, i64) {
        (self.x2.rem_euclid(2), self.y2.rem_euclid(2))
    }

    pub fn doubled_coords(self) -> LatticeVector {
        LatticeVector::new(self.x2, self.y2)
    }

    pub fn plus(self, v: LatticeVector) -> HalfVector {
        HalfVector::new(self.x2 + 2 * v.x, self.y2 + 2 * v.y)
    }
}

impl Add for HalfVector {
    type Output = HalfVector;
    fn add(self, o: HalfVector) -> HalfVector {
        HalfVector::new(self.x2 + o.x2, self.y2 + o.y2)
    }
}

impl From<LatticeVector> for HalfVector {
    fn from(v: LatticeVector) -> Self {
        v.doubled()
    }
}

impl fmt::Display for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |c: i64| {
            if c % 2 == 0 {
                format!("{}", c / 2)
            } else {
                format!("{c}/2")
            }
        };
        write!(f, "({},{})", part(self.x2), part(self.y2))
    }
}

impl fmt::Debug for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear map of Λ given by an integer matrix (acting on column vectors).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub m: [[i64; 2]; 2],
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement { m: [[1, 0], [0, 1]] };

    pub const fn new(m: [[i64; 2]; 2]) -> Self {
        WeylElement { m }
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    pub fn apply_half(&self, v: HalfVector) -> HalfVector {
        let d = self.apply(v.doubled_coords());
        HalfVector::new(d.x, d.y)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let a = &self.m;
        let b = &other.m;
        WeylElement::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Inverse; panics unless the determinant is ±1.
    pub fn inverse(&self) -> WeylElement {
        let d = self.det();
        assert!(d == 1 || d == -1, "not invertible over the integers");
        let m = &self.m;
        WeylElement::new([[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]])
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::IDENTITY
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// Weight data of one distinguished representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReprData {
    pub rep: Rep,
    pub nontrivial_weights: Vec<LatticeVector>,
    /// Multiplicity ε of the trivial weight.
    pub epsilon: u32,
    /// `2(α,β)/(α,α)` for α in this representation and β a maximal partner.
    pub n_value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: RootKind,
    pub gram: [[i64; 2]; 2],
    pub weyl: Vec<WeylElement>,
    pub reps: Vec<ReprData>,
}

fn lv(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

impl RootSystem {
    pub fn new(kind: RootKind) -> Self {
        let (gram, reps) = match kind {
            RootKind::A2 => (
                [[2, 1], [1, 2]],
                vec![
                    ReprData {
                        rep: Rep::Pi1,
                        nontrivial_weights: vec![lv(1, 0), lv(-1, 1), lv(0, -1)],
                        epsilon: 0,
                        n_value: 1,
                    },
                    ReprData {
                        rep: Rep::Pi2,
                        nontrivial_weights: vec![lv(-1, 0), lv(1, -1), lv(0, 1)],
                        epsilon: 0,
                        n_value: 1,
                    },
                ],
            ),
            RootKind::C2 => (
                [[1, 0], [0, 1]],
                vec![
                    ReprData {
                        rep: Rep::Spin,
                        nontrivial_weights: vec![lv(1, 0), lv(-1, 0), lv(0, 1), lv(0, -1)],
                        epsilon: 0,
                        n_value: 2,
                    },
                    ReprData {
                        rep: Rep::St,
                        nontrivial_weights: vec![lv(1, 1), lv(1, -1), lv(-1, 1), lv(-1, -1)],
                        epsilon: 1,
                        n_value: 1,
                    },
                ],
            ),
        };
        let mut rs = RootSystem {
            kind,
            gram,
            weyl: Vec::new(),
            reps,
        };
        rs.weyl = rs.generate_weyl();
        rs
    }

    // Closure of the reflections fixing each weight line; these are exactly
    // the reflections of W in rank two.
    fn generate_weyl(&self) -> Vec<WeylElement> {
        let gens: Vec<WeylElement> = self
            .reps
            .iter()
            .flat_map(|r| r.nontrivial_weights.iter())
            .map(|&d| self.reflection_matrix(d))
            .collect();
        let mut seen: BTreeSet<WeylElement> = BTreeSet::new();
        let mut frontier = vec![WeylElement::IDENTITY];
        seen.insert(WeylElement::IDENTITY);
        while let Some(g) = frontier.pop() {
            for s in &gens {
                let h = s.compose(&g);
                if seen.insert(h) {
                    frontier.push(h);
                }
            }
        }
        seen.into_iter().collect()
    }

    // x -> -x + (2(x,d)/(d,d)) d
    fn reflection_matrix(&self, d: LatticeVector) -> WeylElement {
        let dd = self.pairing_int(d, d);
        let col = |e: LatticeVector| {
            let c = 2 * self.pairing_int(e, d);
            assert!(c % dd == 0, "reflection is not integral on Λ");
            lv(-e.x + (c / dd) * d.x, -e.y + (c / dd) * d.y)
        };
        let c0 = col(lv(1, 0));
        let c1 = col(lv(0, 1));
        WeylElement::new([[c0.x, c1.x], [c0.y, c1.y]])
    }

    /// `xᵀ · gram · y`
    pub fn pairing_int(&self, x: LatticeVector, y: LatticeVector) -> i64 {
        let g = &self.gram;
        x.x * (g[0][0] * y.x + g[0][1] * y.y) + x.y * (g[1][0] * y.x + g[1][1] * y.y)
    }

    pub fn pairing(&self, x: LatticeVector, y: LatticeVector) -> Rational {
        Rational::from_integer(self.pairing_int(x, y).into())
    }

    /// Pairing of points of ½Λ, exact.
    pub fn pairing_half(&self, x: HalfVector, y: HalfVector) -> Rational {
        Rational::new(
            self.pairing_int(x.doubled_coords(), y.doubled_coords()).into(),
            4.into(),
        )
    }

    pub fn repr(&self, rep: Rep) -> Result<&ReprData> {
        self.reps
            .iter()
            .find(|r| r.rep == rep)
            .ok_or_else(|| Error::RepMismatch {
                rep: rep.to_string(),
                kind: self.kind.to_string(),
            })
    }

    /// Nontrivial weights wt′(rep).
    pub fn weights(&self, rep: Rep) -> Result<&[LatticeVector]> {
        Ok(&self.repr(rep)?.nontrivial_weights)
    }

    /// The representation whose nontrivial weights contain `d`.
    pub fn rep_of_weight(&self, d: LatticeVector) -> Option<Rep> {
        self.reps
            .iter()
            .find(|r| r.nontrivial_weights.contains(&d))
            .map(|r| r.rep)
    }

    pub fn in_coroot_lattice(&self, v: LatticeVector) -> bool {
        match self.kind {
            RootKind::A2 => (v.x - v.y).rem_euclid(3) == 0,
            RootKind::C2 => (v.x + v.y).rem_euclid(2) == 0,
        }
    }

    /// Index of the coroot lattice in Λ.
    pub fn coroot_index(&self) -> i64 {
        match self.kind {
            RootKind::A2 => 3,
            RootKind::C2 => 2,
        }
    }

    /// The Weyl reflection `x ↦ -x + 2(x,d)/(d,d)·d`, which fixes the weight `d`.
    pub fn reflection_fixing(&self, d: LatticeVector) -> Result<WeylElement> {
        if self.rep_of_weight(d).is_none() {
            return Err(Error::InvalidGroup(format!("{d} is not a nontrivial weight")));
        }
        let r = self.reflection_matrix(d);
        if !self.weyl.contains(&r) {
            return Err(Error::Invariant(format!("reflection fixing {d} is not in W")));
        }
        Ok(r)
    }

    /// Weights of the complementary representation maximizing the pairing with `alpha`.
    pub fn beta_candidates(&self, alpha: LatticeVector) -> Result<Vec<LatticeVector>> {
        let rep = self
            .rep_of_weight(alpha)
            .ok_or_else(|| Error::InvalidGroup("alpha is not a nontrivial weight".into()))?;
        let others = self.weights(rep.partner())?;
        let best = others
            .iter()
            .map(|&b| self.pairing_int(alpha, b))
            .max()
            .expect("nonempty weight set");
        Ok(others
            .iter()
            .copied()
            .filter(|&b| self.pairing_int(alpha, b) == best)
            .collect())
    }

    /// Ordered pairs (λ, μ) that may be consecutive central-edge directions of
    /// a geodesic gallery; a gallery alternates the two weights of one pair.
    pub fn gallery_pairs(&self, rep: Rep) -> Result<Vec<(LatticeVector, LatticeVector)>> {
        let w = self.weights(rep)?;
        let mut out = Vec::new();
        for &l in w {
            for &m in w {
                let ok = match self.kind {
                    RootKind::A2 => l != m,
                    RootKind::C2 => self.pairing_int(l, m) == 0,
                };
                if ok {
                    out.push((l, m));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        RootSystem::new(RootKind::A2)
    }
    fn c2() -> RootSystem {
        RootSystem::new(RootKind::C2)
    }

    // Orbit of a seed under the group generated by the given matrices,
    // computed without the crate's Weyl table.
    fn orbit(seed: LatticeVector, gens: &[[[i64; 2]; 2]]) -> BTreeSet<LatticeVector> {
        let mut seen = BTreeSet::from([seed]);
        let mut stack = vec![seed];
        while let Some(v) = stack.pop() {
            for g in gens {
                let w = WeylElement::new(*g).apply(v);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    #[test]
    fn weight_sets_are_single_orbits() {
        // A2 simple reflections in the fundamental-coweight basis.
        let a2_gens = [[[-1, 0], [1, 1]], [[1, 1], [0, -1]]];
        let o = orbit(lv(1, 0), &a2_gens);
        let w: BTreeSet<_> = a2().weights(Rep::Pi1).unwrap().iter().copied().collect();
        assert_eq!(o, w);
        assert_eq!(o.len(), 3);

        // C2: signed coordinate permutations.
        let c2_gens = [[[0, 1], [1, 0]], [[-1, 0], [0, 1]]];
        let st: BTreeSet<_> = c2().weights(Rep::St).unwrap().iter().copied().collect();
        assert_eq!(orbit(lv(1, 1), &c2_gens), st);
        let spin: BTreeSet<_> = c2().weights(Rep::Spin).unwrap().iter().copied().collect();
        assert_eq!(orbit(lv(1, 0), &c2_gens), spin);
    }

    #[test]
    fn weyl_group_orders_and_invariance() {
        for (rs, order) in [(a2(), 6), (c2(), 8)] {
            assert_eq!(rs.weyl.len(), order);
            for g in &rs.weyl {
                for r in &rs.reps {
                    let img: BTreeSet<_> = r.nontrivial_weights.iter().map(|&v| g.apply(v)).collect();
                    let orig: BTreeSet<_> = r.nontrivial_weights.iter().copied().collect();
                    assert_eq!(img, orig);
                }
                // preserves the form
                for a in [lv(1, 0), lv(0, 1), lv(2, -3)] {
                    for b in [lv(1, 0), lv(0, 1), lv(-1, 5)] {
                        assert_eq!(rs.pairing_int(g.apply(a), g.apply(b)), rs.pairing_int(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn rep_kind_mismatch() {
        assert!(matches!(a2().weights(Rep::St), Err(Error::RepMismatch { .. })));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(a2().pairing(lv(1, 0), lv(0, 1)), Rational::from_integer(1.into()));
        let c = c2();
        assert_eq!(c.pairing_int(lv(1, 0), lv(1, 1)), 1);
        assert_eq!(
            2 * c.pairing_int(lv(1, 0), lv(1, 1)) / c.pairing_int(lv(1, 0), lv(1, 0)),
            2
        );
        assert_eq!(
            c.pairing_half(HalfVector::new(1, 0), HalfVector::new(1, 0)),
            Rational::new(1.into(), 4.into())
        );
    }

    #[test]
    fn coroot_lattice_membership() {
        let (a, c) = (a2(), c2());
        assert!(a.in_coroot_lattice(lv(1, 1)));
        assert!(!a.in_coroot_lattice(lv(1, 0)));
        assert!(c.in_coroot_lattice(lv(1, 1)));
        assert!(!c.in_coroot_lattice(lv(1, 0)));
        assert!(a.in_coroot_lattice(lv(0, 0)) && c.in_coroot_lattice(lv(0, 0)));
        // index by residue counting over a window
        for rs in [a, c] {
            let mut classes = BTreeSet::new();
            for x in 0..6 {
                for y in 0..6 {
                    let v = lv(x, y);
                    let rep = (0..6)
                        .flat_map(|i| (0..6).map(move |j| lv(i, j)))
                        .find(|&w| rs.in_coroot_lattice(v - w))
                        .unwrap();
                    classes.insert(rep);
                }
            }
            assert_eq!(classes.len() as i64, rs.coroot_index());
        }
    }

    #[test]
    fn reflections_fixing_weights() {
        let a = a2();
        let r = a.reflection_fixing(lv(1, 0)).unwrap();
        assert_eq!(r, WeylElement::new([[1, 1], [0, -1]]));
        assert_eq!(r.apply(lv(-1, 1)), lv(0, -1));
        assert_eq!(r.apply(lv(0, -1)), lv(-1, 1));
        let c = c2();
        assert_eq!(
            c.reflection_fixing(lv(1, 0)).unwrap(),
            WeylElement::new([[1, 0], [0, -1]])
        );
        assert_eq!(
            c.reflection_fixing(lv(1, 1)).unwrap(),
            WeylElement::new([[0, 1], [1, 0]])
        );
        assert!(c.reflection_fixing(lv(2, 0)).is_err());
    }

    #[test]
    fn gallery_successors() {
        let succ = |rs: &RootSystem, rep, l| -> BTreeSet<LatticeVector> {
            rs.gallery_pairs(rep)
                .unwrap()
                .into_iter()
                .filter(|&(a, _)| a == l)
                .map(|(_, m)| m)
                .collect()
        };
        assert_eq!(succ(&a2(), Rep::Pi1, lv(1, 0)), BTreeSet::from([lv(-1, 1), lv(0, -1)]));
        assert_eq!(succ(&c2(), Rep::Spin, lv(1, 0)), BTreeSet::from([lv(0, 1), lv(0, -1)]));
        assert_eq!(succ(&c2(), Rep::St, lv(1, 1)), BTreeSet::from([lv(1, -1), lv(-1, 1)]));
        assert_eq!(a2().gallery_pairs(Rep::Pi1).unwrap().len(), 6);
        assert_eq!(c2().gallery_pairs(Rep::Spin).unwrap().len(), 8);
        assert_eq!(c2().gallery_pairs(Rep::St).unwrap().len(), 8);
    }

    #[test]
    fn weight_structure_invariants() {
        for rs in [a2(), c2()] {
            for r in &rs.reps {
                // closed under negation within the pair of representations
                for &l in &r.nontrivial_weights {
                    assert!(l.is_primitive());
                    assert!(rs.rep_of_weight(-l).is_some());
                }
                // n_value is the common 2(λ,β_max)/(λ,λ)
                for &l in &r.nontrivial_weights {
                    let beta = rs.beta_candidates(l).unwrap()[0];
                    assert_eq!(2 * rs.pairing_int(l, beta) / rs.pairing_int(l, l), r.n_value);
                    assert_eq!((2 * rs.pairing_int(l, beta)) % rs.pairing_int(l, l), 0);
                }
                // one period of the alternation returns to the coroot lattice:
                // two steps for C2, six for A2
                let period = match rs.kind {
                    RootKind::A2 => 3,
                    RootKind::C2 => 1,
                };
                for (l, m) in rs.gallery_pairs(r.rep).unwrap() {
                    assert!(rs.in_coroot_lattice(period * (l + m)), "{l} + {m}");
                    assert_eq!(rs.in_coroot_lattice(l + m), rs.kind == RootKind::C2);
                }
            }
            let pos_def = [lv(1, 0), lv(0, 1), lv(1, -1), lv(-3, 2), lv(5, 7)];
            assert!(pos_def.iter().all(|&v| rs.pairing_int(v, v) > 0));
        }
    }

    #[test]
    fn beta_ties() {
        let c = a2().beta_candidates(lv(1, 0)).unwrap();
        assert_eq!(c, vec![lv(1, -1), lv(0, 1)]);
    }
}
