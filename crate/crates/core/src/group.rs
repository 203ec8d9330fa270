//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}`, their Pontryagin duals,
//! subgroups, annihilators and the phase space `F = G × Ĝ`.
//!
//! Elements are indexed in lexicographic order of their coordinates, which is
//! the row-major mixed-radix index with the first factor most significant.
//! The dual group is identified with `G` coordinatewise: the character with
//! coordinates `a` is `λ_a(g) = exp(2πi Σ_j a_j g_j / n_j)`.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Result, WehrlError};
use crate::phase::Phase;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    cyclic_orders: Vec<usize>,
    order: usize,
    exponent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(Vec<usize>);

/// A point `z = (g, λ)` of the phase space `F = G × Ĝ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseSpacePoint {
    pub g: GroupElement,
    pub lambda: Character,
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl Character {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl PhaseSpacePoint {
    pub fn new(g: GroupElement, lambda: Character) -> Self {
        PhaseSpacePoint { g, lambda }
    }
}

fn fmt_coords(f: &mut fmt::Formatter<'_>, coords: &[usize]) -> fmt::Result {
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.0)
    }
}

impl fmt::Display for PhaseSpacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.g, self.lambda)
    }
}

impl fmt::Debug for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupDescriptor({self})")
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.cyclic_orders.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupDescriptor {
    type Err = WehrlError;

    fn from_str(s: &str) -> Result<Self> {
        GroupDescriptor::parse(s)
    }
}

fn parse_coords(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<usize>()
                .map_err(|_| WehrlError::Parse(format!("invalid coordinate {c:?} in {text:?}")))
        })
        .collect()
}

impl GroupDescriptor {
    pub fn new(cyclic_orders: Vec<usize>) -> Result<Self> {
        if cyclic_orders.is_empty() {
            return Err(WehrlError::Parse(
                "a group needs at least one cyclic factor".into(),
            ));
        }
        if let Some(bad) = cyclic_orders.iter().find(|&&n| n == 0) {
            return Err(WehrlError::Parse(format!(
                "cyclic order {bad} must be at least 1"
            )));
        }
        let order = cyclic_orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&o| o.checked_mul(o).is_some())
            .ok_or_else(|| WehrlError::Parse("group order overflows".into()))?;
        let exponent = cyclic_orders.iter().fold(1usize, |acc, &n| acc.lcm(&n));
        Ok(GroupDescriptor {
            cyclic_orders,
            order,
            exponent,
        })
    }

    /// Parses the `Z<n>` factors joined by `x` grammar, e.g. `Z4xZ2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(WehrlError::Parse("empty group spec".into()));
        }
        let orders = spec
            .split(['x', 'X'])
            .map(|factor| {
                let factor = factor.trim();
                factor
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| {
                        WehrlError::Parse(format!("invalid cyclic factor {factor:?} in {spec:?}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        GroupDescriptor::new(orders)
    }

    pub fn cyclic_orders(&self) -> &[usize] {
        &self.cyclic_orders
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the cyclic orders; every character value is
    /// an `exponent`-th root of unity.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Number of `ℝ` factors in the structure decomposition. A finite group
    /// is compact, so this is always zero.
    pub fn n_invariant(&self) -> usize {
        0
    }

    /// `|F| = |G|²`.
    pub fn phase_space_order(&self) -> usize {
        self.order * self.order
    }

    /// The descriptor of `F = G × Ĝ ≅ G × G`. Point indices of `F` agree with
    /// element indices of this descriptor.
    pub fn phase_space(&self) -> GroupDescriptor {
        let mut orders = self.cyclic_orders.clone();
        orders.extend_from_slice(&self.cyclic_orders);
        GroupDescriptor::new(orders).expect("phase space of a valid group")
    }

    /// The direct product `self × other`; indices follow the Kronecker order.
    pub fn product(&self, other: &GroupDescriptor) -> Result<GroupDescriptor> {
        let mut orders = self.cyclic_orders.clone();
        orders.extend_from_slice(&other.cyclic_orders);
        GroupDescriptor::new(orders)
    }

    fn check_coords(&self, coords: &[usize], what: &str) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(WehrlError::DescriptorMismatch(format!(
                "{what} has {} coordinates, {self} has {} factors",
                coords.len(),
                self.rank()
            )));
        }
        for (c, n) in coords.iter().zip(&self.cyclic_orders) {
            if c >= n {
                return Err(WehrlError::DescriptorMismatch(format!(
                    "{what} coordinate {c} is not reduced modulo {n} in {self}"
                )));
            }
        }
        Ok(())
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(WehrlError::DescriptorMismatch(format!(
                "{} coordinates given for {self}",
                coords.len()
            )));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.cyclic_orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
                .collect(),
        ))
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        self.element(coords).map(|g| Character(g.0))
    }

    /// Parses one comma-separated coordinate tuple such as `2,0`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let coords = parse_coords(text)?;
        self.check_coords(&coords, "element")?;
        Ok(GroupElement(coords))
    }

    /// Parses semicolon-separated generator tuples such as `2,0;0,1`.
    /// An empty string yields no generators.
    pub fn parse_generators(&self, text: &str) -> Result<Vec<GroupElement>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(';').map(|t| self.parse_element(t)).collect()
    }

    /// Parses a phase-space point written `g;λ`, e.g. `1,0;0,1` in `Z2xZ2`.
    pub fn parse_point(&self, text: &str) -> Result<PhaseSpacePoint> {
        let (g, lambda) = text
            .split_once(';')
            .ok_or_else(|| WehrlError::Parse(format!("expected `g;lambda`, got {text:?}")))?;
        let g = self.parse_element(g)?;
        let lambda = Character(self.parse_element(lambda)?.0);
        Ok(PhaseSpacePoint { g, lambda })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    pub fn origin(&self) -> PhaseSpacePoint {
        PhaseSpacePoint::new(self.zero(), self.trivial_character())
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        coords_index(&self.cyclic_orders, &g.0)
    }

    pub fn character_index(&self, lambda: &Character) -> usize {
        coords_index(&self.cyclic_orders, &lambda.0)
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement(index_coords(&self.cyclic_orders, index))
    }

    pub fn character_at(&self, index: usize) -> Character {
        Character(index_coords(&self.cyclic_orders, index))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(move |i| self.character_at(i))
    }

    /// Index of `z` in `F`, i.e. `index(g)·|G| + index(λ)`.
    pub fn point_index(&self, z: &PhaseSpacePoint) -> usize {
        self.index_of(&z.g) * self.order + self.character_index(&z.lambda)
    }

    pub fn point_at(&self, index: usize) -> PhaseSpacePoint {
        PhaseSpacePoint::new(
            self.element_at(index / self.order),
            self.character_at(index % self.order),
        )
    }

    pub fn points(&self) -> impl Iterator<Item = PhaseSpacePoint> + '_ {
        (0..self.phase_space_order()).map(move |i| self.point_at(i))
    }

    pub fn check_element(&self, g: &GroupElement) -> Result<()> {
        self.check_coords(&g.0, "element")
    }

    pub fn check_character(&self, lambda: &Character) -> Result<()> {
        self.check_coords(&lambda.0, "character")
    }

    pub fn check_point(&self, z: &PhaseSpacePoint) -> Result<()> {
        self.check_element(&z.g)?;
        self.check_character(&z.lambda)
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.check_element(h)?;
        Ok(GroupElement(self.add_coords(&g.0, &h.0)))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        Ok(GroupElement(self.neg_coords(&g.0)))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.check_element(h)?;
        Ok(GroupElement(self.add_coords(&g.0, &self.neg_coords(&h.0))))
    }

    /// `z + z' = (g + g', λλ')`.
    pub fn point_add(&self, z: &PhaseSpacePoint, w: &PhaseSpacePoint) -> Result<PhaseSpacePoint> {
        self.check_point(z)?;
        self.check_point(w)?;
        Ok(PhaseSpacePoint::new(
            GroupElement(self.add_coords(&z.g.0, &w.g.0)),
            Character(self.add_coords(&z.lambda.0, &w.lambda.0)),
        ))
    }

    /// `z - z' = (g - g', λ·conj(λ'))`.
    pub fn point_sub(&self, z: &PhaseSpacePoint, w: &PhaseSpacePoint) -> Result<PhaseSpacePoint> {
        self.check_point(z)?;
        self.check_point(w)?;
        Ok(PhaseSpacePoint::new(
            GroupElement(self.add_coords(&z.g.0, &self.neg_coords(&w.g.0))),
            Character(self.add_coords(&z.lambda.0, &self.neg_coords(&w.lambda.0))),
        ))
    }

    pub fn point_neg(&self, z: &PhaseSpacePoint) -> Result<PhaseSpacePoint> {
        self.check_point(z)?;
        Ok(PhaseSpacePoint::new(
            GroupElement(self.neg_coords(&z.g.0)),
            Character(self.neg_coords(&z.lambda.0)),
        ))
    }

    fn add_coords(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter()
            .zip(b)
            .zip(&self.cyclic_orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    fn neg_coords(&self, a: &[usize]) -> Vec<usize> {
        a.iter()
            .zip(&self.cyclic_orders)
            .map(|(x, n)| (n - x) % n)
            .collect()
    }

    /// Index of `element_at(i) - element_at(j)` without allocating.
    pub(crate) fn sub_index(&self, i: usize, j: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        let (mut i, mut j) = (i, j);
        for &n in self.cyclic_orders.iter().rev() {
            let d = (i % n + n - j % n) % n;
            out += d * stride;
            stride *= n;
            i /= n;
            j /= n;
        }
        out
    }

    /// Index of `element_at(i) + element_at(j)`.
    pub(crate) fn add_index(&self, i: usize, j: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        let (mut i, mut j) = (i, j);
        for &n in self.cyclic_orders.iter().rev() {
            out += ((i % n + j % n) % n) * stride;
            stride *= n;
            i /= n;
            j /= n;
        }
        out
    }

    /// Numerator `k` of `λ_a(g) = exp(2πi k / exponent)` for element indices.
    pub(crate) fn pairing_index(&self, a: usize, g: usize) -> usize {
        let (mut a, mut g) = (a, g);
        let mut k = 0;
        for &n in self.cyclic_orders.iter().rev() {
            k = (k + (a % n) * (g % n) % n * (self.exponent / n)) % self.exponent;
            a /= n;
            g /= n;
        }
        k
    }

    /// `exp(2πi k / exponent)` for `k` in `0..exponent`, each computed from
    /// the reduced phase so the table agrees bit-for-bit with [`char_eval`].
    ///
    /// [`char_eval`]: GroupDescriptor::char_eval
    pub(crate) fn roots_of_unity(&self) -> Vec<Complex64> {
        (0..self.exponent)
            .map(|k| Phase::new(k as i64, self.exponent as u64).to_complex())
            .collect()
    }

    /// The exact phase of `λ(g)`.
    pub fn char_phase(&self, lambda: &Character, g: &GroupElement) -> Result<Phase> {
        self.check_character(lambda)?;
        self.check_element(g)?;
        let k = self.pairing_index(self.character_index(lambda), self.index_of(g));
        Ok(Phase::new(k as i64, self.exponent as u64))
    }

    /// `λ(g) = exp(2πi Σ_j a_j g_j / n_j)`.
    pub fn char_eval(&self, lambda: &Character, g: &GroupElement) -> Result<Complex64> {
        self.char_phase(lambda, g).map(Phase::to_complex)
    }

    pub fn whole(&self) -> Subgroup {
        let gens = (0..self.rank())
            .map(|j| {
                let mut c = vec![0; self.rank()];
                c[j] = 1 % self.cyclic_orders[j];
                GroupElement(c)
            })
            .collect();
        self.subgroup_closure(gens)
            .expect("unit generators are valid")
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_closure(Vec::new())
            .expect("empty generator set")
    }

    /// The smallest subgroup containing `gens`, with elements sorted
    /// lexicographically.
    pub fn subgroup_closure(&self, gens: Vec<GroupElement>) -> Result<Subgroup> {
        for g in &gens {
            self.check_element(g)?;
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| self.index_of(g)).collect();
        let members = self.closure_members(&gen_idx);
        Ok(Subgroup::from_members(self.clone(), gens, members))
    }

    fn closure_members(&self, gens: &[usize]) -> Vec<bool> {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.add_index(x, s);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        members
    }

    /// Every subgroup of `G`, ordered by size and then by element list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: Vec<Vec<bool>> = vec![self.closure_members(&[])];
        let mut next = 0;
        while next < seen.len() {
            let base = seen[next].clone();
            next += 1;
            for x in 0..self.order {
                if base[x] {
                    continue;
                }
                let gens: Vec<usize> = base
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &m)| m.then_some(i))
                    .chain(std::iter::once(x))
                    .collect();
                let joined = self.closure_members(&gens);
                if !seen.contains(&joined) {
                    seen.push(joined);
                }
            }
        }
        let mut subgroups: Vec<Subgroup> = seen
            .into_iter()
            .map(|m| {
                let gens = minimal_generators(self, &m);
                Subgroup::from_members(self.clone(), gens, m)
            })
            .collect();
        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        subgroups
    }
}

fn coords_index(orders: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(orders).fold(0, |acc, (c, n)| acc * n + c)
}

fn index_coords(orders: &[usize], mut index: usize) -> Vec<usize> {
    let mut coords = vec![0; orders.len()];
    for (c, n) in coords.iter_mut().zip(orders).rev() {
        *c = index % n;
        index /= n;
    }
    coords
}

/// Greedy generating set: scan members in order, keep those not yet reached.
fn minimal_generators(group: &GroupDescriptor, members: &[bool]) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    let mut reached = group.closure_members(&[]);
    for (i, &m) in members.iter().enumerate() {
        if m && !reached[i] {
            gens.push(i);
            reached = group.closure_members(&gens);
        }
    }
    gens.into_iter().map(|i| group.element_at(i)).collect()
}

/// A subgroup stored by full element enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupDescriptor,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    members: Vec<bool>,
}

impl Subgroup {
    fn from_members(
        parent: GroupDescriptor,
        generators: Vec<GroupElement>,
        members: Vec<bool>,
    ) -> Self {
        let elements = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| parent.element_at(i))
            .collect();
        Subgroup {
            parent,
            generators,
            elements,
            members,
        }
    }

    pub fn parent(&self) -> &GroupDescriptor {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Membership flags indexed by element index of the parent group.
    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.parent.check_element(g).is_ok() && self.members[self.parent.index_of(g)]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members[index]
    }

    /// Generators written in the `2,0;0,1` grammar.
    pub fn generator_string(&self) -> String {
        self.generators
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }

    /// The elements reinterpreted as characters, for subgroups of `Ĝ`.
    pub fn characters(&self) -> Vec<Character> {
        self.elements
            .iter()
            .map(|g| Character(g.0.clone()))
            .collect()
    }

    /// `A(Ĝ, H) = {λ : λ(h) = 1 ∀h ∈ H}`, found by filtering every character
    /// against the generators of `H` in exact arithmetic. The result is a
    /// subgroup of `Ĝ`, stored with character coordinates.
    ///
    /// Since `λ_a(g) = λ_g(a)`, applying this to a subgroup of `Ĝ` gives the
    /// annihilator in `G`.
    pub fn annihilator(&self) -> Subgroup {
        let g = &self.parent;
        let gen_idx: Vec<usize> = if self.generators.is_empty() {
            Vec::new()
        } else {
            self.generators.iter().map(|h| g.index_of(h)).collect()
        };
        let members: Vec<bool> = (0..g.order())
            .map(|a| gen_idx.iter().all(|&h| g.pairing_index(a, h) == 0))
            .collect();
        let gens = minimal_generators(g, &members);
        let ann = Subgroup::from_members(g.clone(), gens, members);
        assert_eq!(
            ann.order() * self.order(),
            g.order(),
            "annihilator duality |A|·|H| = |G| violated"
        );
        ann
    }

    /// True iff the doubling map `h ↦ 2h` is onto `H`.
    pub fn is_corwin(&self) -> bool {
        let g = &self.parent;
        let mut doubled = vec![false; g.order()];
        for h in &self.elements {
            let i = g.index_of(h);
            doubled[g.add_index(i, i)] = true;
        }
        doubled == self.members
    }

    /// Checks that every `g ∉ H` is moved by some character of `A(Ĝ, H)`.
    pub fn separated_by_annihilator(&self, annihilator: &Subgroup) -> bool {
        let g = &self.parent;
        let chars: Vec<usize> = annihilator.elements.iter().map(|a| g.index_of(a)).collect();
        (0..g.order())
            .filter(|&x| !self.members[x])
            .all(|x| chars.iter().any(|&a| g.pairing_index(a, x) != 0))
    }

    /// `H₁ × H₂` inside `G₁ × G₂`.
    pub fn product(&self, other: &Subgroup) -> Result<Subgroup> {
        let parent = self.parent.product(&other.parent)?;
        let mut gens = Vec::new();
        for h in &self.generators {
            let mut c = h.0.clone();
            c.extend(std::iter::repeat_n(0, other.parent.rank()));
            gens.push(GroupElement(c));
        }
        for h in &other.generators {
            let mut c = vec![0; self.parent.rank()];
            c.extend_from_slice(&h.0);
            gens.push(GroupElement(c));
        }
        parent.subgroup_closure(gens)
    }
}

/// A subgroup of the phase space `F`, stored as a subgroup of
/// [`GroupDescriptor::phase_space`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSubgroup {
    group: GroupDescriptor,
    inner: Subgroup,
}

impl PhaseSubgroup {
    /// `K = H × A(Ĝ, H)`. Panics if the maximality property fails, which
    /// would indicate an arithmetic bug rather than bad input.
    pub fn maximal_compact(h: &Subgroup) -> PhaseSubgroup {
        let group = h.parent().clone();
        let ann = h.annihilator();
        assert!(
            h.separated_by_annihilator(&ann),
            "maximality of H × A(Ĝ,H) violated"
        );
        let space = group.phase_space();
        let n = group.order();
        let mut members = vec![false; space.order()];
        for g in h.elements() {
            for a in ann.elements() {
                members[group.index_of(g) * n + group.index_of(a)] = true;
            }
        }
        let mut gens: Vec<GroupElement> = Vec::new();
        for g in h.generators() {
            let mut c = g.0.clone();
            c.extend(std::iter::repeat_n(0, group.rank()));
            gens.push(GroupElement(c));
        }
        for a in ann.generators() {
            let mut c = vec![0; group.rank()];
            c.extend_from_slice(&a.0);
            gens.push(GroupElement(c));
        }
        let inner = Subgroup::from_members(space, gens, members);
        assert_eq!(inner.order(), n, "|K| = |G| violated");
        PhaseSubgroup { group, inner }
    }

    /// Closure of arbitrary phase-space points.
    pub fn closure(group: &GroupDescriptor, gens: &[PhaseSpacePoint]) -> Result<PhaseSubgroup> {
        let space = group.phase_space();
        let mut lifted = Vec::with_capacity(gens.len());
        for z in gens {
            group.check_point(z)?;
            let mut c = z.g.0.clone();
            c.extend_from_slice(&z.lambda.0);
            lifted.push(GroupElement(c));
        }
        Ok(PhaseSubgroup {
            group: group.clone(),
            inner: space.subgroup_closure(lifted)?,
        })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn contains(&self, z: &PhaseSpacePoint) -> bool {
        self.group.check_point(z).is_ok() && self.inner.members[self.group.point_index(z)]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.inner.members[index]
    }

    pub fn elements(&self) -> Vec<PhaseSpacePoint> {
        self.point_indices()
            .map(|i| self.group.point_at(i))
            .collect()
    }

    pub fn point_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.inner
            .members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    /// Coset labels for every point of `F` (by point index) together with
    /// the lexicographically least representative of each coset. Labels
    /// count cosets in order of their representatives.
    pub fn coset_labels(&self) -> (Vec<PhaseSpacePoint>, Vec<usize>) {
        let space = self.inner.parent();
        let members: Vec<usize> = self.point_indices().collect();
        let mut label = vec![usize::MAX; space.order()];
        let mut reps = Vec::new();
        for z in 0..space.order() {
            if label[z] != usize::MAX {
                continue;
            }
            for &k in &members {
                label[space.add_index(z, k)] = reps.len();
            }
            reps.push(self.group.point_at(z));
        }
        (reps, label)
    }

    /// One representative per coset of `F/K`, each the least member of its
    /// coset.
    pub fn cosets(&self) -> Vec<PhaseSpacePoint> {
        self.coset_labels().0
    }
}
