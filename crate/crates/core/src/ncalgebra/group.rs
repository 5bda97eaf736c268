use std::fmt;

use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

/// The finite groups of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `⟨g | g^n⟩`.
    Cyclic(u32),
    /// `⟨h | h²⟩`.
    Sym2,
    /// `⟨g, h | g^n, h², (hg)²⟩`.
    Dihedral(u32),
}

/// A group element in normal form `g^i h^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub i: u32,
    pub j: u8,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { i: 0, j: 0 };

    pub fn new(i: u32, j: u8) -> Self {
        GroupElement { i, j }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "e"),
            (0, _) => write!(f, "h"),
            (1, 0) => write!(f, "g"),
            (i, 0) => write!(f, "g^{i}"),
            (1, _) => write!(f, "gh"),
            (i, _) => write!(f, "g^{i}h"),
        }
    }
}

/// How an element acts on the generators: `f·u = ω^{eu}·(u or v)`,
/// `f·v = ω^{ev}·(v or u)`, swapping when `swap` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialAction {
    pub swap: bool,
    pub eu: i64,
    pub ev: i64,
}

/// A finite group together with the root of unity ω driving its action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    omega: CyclotomicNumber,
    omega_powers: Vec<CyclotomicNumber>,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, omega: CyclotomicNumber) -> Result<Self> {
        let n = match kind {
            GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => n,
            GroupKind::Sym2 => 1,
        };
        if n == 0 {
            return Err(QksError::InvalidGroup("order must be positive".into()));
        }
        if omega.multiplicative_order() != Some(n) {
            return Err(QksError::InvalidGroup(format!(
                "omega = {omega} does not have multiplicative order {n}"
            )));
        }
        let mut omega_powers = Vec::with_capacity(n as usize);
        let mut p = CyclotomicNumber::one();
        for _ in 0..n {
            omega_powers.push(p.clone());
            p = &p * &omega;
        }
        Ok(GroupSpec {
            kind,
            omega,
            omega_powers,
        })
    }

    /// `C_n` acting through ζ_n.
    pub fn cyclic(n: u32) -> Self {
        Self::new(GroupKind::Cyclic(n), CyclotomicNumber::zeta(n)).expect("valid")
    }

    pub fn sym2() -> Self {
        Self::new(GroupKind::Sym2, CyclotomicNumber::one()).expect("valid")
    }

    /// `D_n` acting through ζ_n.
    pub fn dihedral(n: u32) -> Self {
        Self::new(GroupKind::Dihedral(n), CyclotomicNumber::zeta(n)).expect("valid")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn omega(&self) -> &CyclotomicNumber {
        &self.omega
    }

    /// ω^e.
    pub fn omega_pow(&self, e: i64) -> CyclotomicNumber {
        let n = self.omega_powers.len() as i64;
        self.omega_powers[e.rem_euclid(n) as usize].clone()
    }

    fn rotation_order(&self) -> u32 {
        match self.kind {
            GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => n,
            GroupKind::Sym2 => 1,
        }
    }

    fn has_reflection(&self) -> bool {
        !matches!(self.kind, GroupKind::Cyclic(_))
    }

    pub fn order(&self) -> usize {
        self.rotation_order() as usize * if self.has_reflection() { 2 } else { 1 }
    }

    /// All elements in normal-form order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let js: &[u8] = if self.has_reflection() { &[0, 1] } else { &[0] };
        let mut out = Vec::with_capacity(self.order());
        for i in 0..self.rotation_order() {
            for &j in js {
                out.push(GroupElement::new(i, j));
            }
        }
        out.sort();
        out
    }

    /// The presentation generators (`g` and/or `h`), omitting trivial ones.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut out = vec![];
        if self.rotation_order() > 1 {
            out.push(GroupElement::new(1, 0));
        }
        if self.has_reflection() {
            out.push(GroupElement::new(0, 1));
        }
        out
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// `g^i` reduced.
    pub fn rotation(&self, i: i64) -> GroupElement {
        GroupElement::new(i.rem_euclid(self.rotation_order() as i64) as u32, 0)
    }

    /// The product `xy` in normal form, using `h g^i = g^{-i} h`.
    pub fn multiply(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        let n = self.rotation_order() as i64;
        let sign = if x.j == 1 { -1 } else { 1 };
        let i = (x.i as i64 + sign * y.i as i64).rem_euclid(n) as u32;
        GroupElement::new(i, (x.j + y.j) % 2)
    }

    pub fn inverse(&self, x: GroupElement) -> GroupElement {
        if x.j == 1 {
            x
        } else {
            self.rotation(-(x.i as i64))
        }
    }

    pub fn power(&self, x: GroupElement, e: i64) -> GroupElement {
        let base = if e < 0 { self.inverse(x) } else { x };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.multiply(acc, base);
        }
        acc
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        x.i < self.rotation_order() && (x.j == 0 || (x.j == 1 && self.has_reflection()))
    }

    /// Action of `g^i h^j` on `u, v`: `g·u = ωu`, `g·v = ω^{-1}v`, `h` swaps.
    pub fn action(&self, x: GroupElement) -> MonomialAction {
        let i = x.i as i64;
        if x.j == 0 {
            MonomialAction {
                swap: false,
                eu: i,
                ev: -i,
            }
        } else {
            // g^i·(h·u) = g^i·v = ω^{-i} v
            MonomialAction {
                swap: true,
                eu: -i,
                ev: i,
            }
        }
    }

    /// 2×2 matrix of the action on span{u, v}; column `c` is the image of
    /// the `c`-th generator.
    pub fn matrix(&self, x: GroupElement) -> [[CyclotomicNumber; 2]; 2] {
        let act = self.action(x);
        let z = CyclotomicNumber::zero;
        let (cu, cv) = (self.omega_pow(act.eu), self.omega_pow(act.ev));
        if act.swap {
            [[z(), cv], [cu, z()]]
        } else {
            [[cu, z()], [z(), cv]]
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Sym2 => write!(f, "S2"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}
