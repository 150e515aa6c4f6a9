//! The Néron-Severi model built from a [`SurfaceConfig`].
//!
//! Basis order: `O`, `F`, then `v^t_1 … v^t_{n_t-1}` for each fiber in
//! config order, then the tracked sections. `v^t_0` is the derived class
//! `F - Σ_{i≥1} v^t_i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{FibralSpace, FibralVector};
use crate::matrix::IntMatrix;

use super::config::{FiberOrigin, SurfaceConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub name: String,
    pub n: usize,
    pub space: FibralSpace,
    /// Basis index of `v^t_1`.
    pub offset: usize,
    pub origin: Option<FiberOrigin>,
}

impl Fiber {
    /// Root name and ramification degree relative to the original surface.
    pub fn root(&self) -> (&str, usize) {
        match &self.origin {
            Some(o) => (&o.root, o.e),
            None => (&self.name, 1),
        }
    }
}

/// Coordinates of a Mordell-Weil element: free part and component vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MwKey {
    pub free: Vec<i64>,
    pub comps: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    /// Component met on each fiber, reduced mod `n_t`.
    pub components: Vec<usize>,
    pub order: Option<u64>,
    pub key: Option<MwKey>,
}

/// An element of the Néron-Severi model in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NSDivisor {
    pub coeffs: Vec<i64>,
}

impl NSDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsLattice {
    config: SurfaceConfig,
    chi: i64,
    fibers: Vec<Fiber>,
    sections: Vec<Section>,
    section_offset: usize,
    gram: IntMatrix,
    /// Intersection numbers among `O` (point 0) and the sections.
    points: Vec<Vec<i64>>,
    keys: Vec<Option<MwKey>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl MwKey {
    fn zero(rank: usize, fibers: usize) -> Self {
        Self {
            free: vec![0; rank],
            comps: vec![0; fibers],
        }
    }

    fn combine(&self, other: &MwKey, sign: i64, moduli: &[i64]) -> MwKey {
        MwKey {
            free: self
                .free
                .iter()
                .zip(&other.free)
                .map(|(a, b)| a + sign * b)
                .collect(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .zip(moduli)
                .map(|((a, b), m)| (a + sign * b).rem_euclid(*m))
                .collect(),
        }
    }

    /// Order of the component vector in `Π Z/n_t`.
    fn component_order(&self, moduli: &[i64]) -> i64 {
        self.comps
            .iter()
            .zip(moduli)
            .map(|(c, m)| m / gcd(*c, *m))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }
}

/// Validates `config` and assembles the lattice.
pub fn build_ns(config: &SurfaceConfig) -> Result<NsLattice> {
    NsLattice::new(config.clone())
}

impl NsLattice {
    pub fn new(config: SurfaceConfig) -> Result<Self> {
        let mut names = BTreeSet::new();
        for f in &config.fibers {
            if f.n < 3 {
                return Err(Error::ConfigSmallFiber {
                    name: f.name.clone(),
                    n: f.n,
                });
            }
            check_name(&f.name)?;
            if !names.insert(f.name.clone()) {
                return Err(Error::InvalidConfig(format!("duplicate name {}", f.name)));
            }
        }
        let total = config.fiber_sum();
        if total == 0 || !total.is_multiple_of(12) {
            return Err(Error::ConfigInvalidDivisibility(total));
        }
        let chi = (total / 12) as i64;

        let mut fibers = Vec::with_capacity(config.fibers.len());
        let mut offset = 2;
        for f in &config.fibers {
            fibers.push(Fiber {
                name: f.name.clone(),
                n: f.n,
                space: FibralSpace::new(f.n)?,
                offset,
                origin: f.origin.clone(),
            });
            offset += f.n - 1;
        }
        let section_offset = offset;
        let moduli: Vec<i64> = fibers.iter().map(|f| f.n as i64).collect();

        let rank = config
            .sections
            .iter()
            .filter_map(|s| s.free.as_ref().map(Vec::len))
            .max()
            .unwrap_or(0);
        let mut sections = Vec::with_capacity(config.sections.len());
        for s in &config.sections {
            check_name(&s.name)?;
            if !names.insert(s.name.clone()) {
                return Err(Error::InvalidConfig(format!("duplicate name {}", s.name)));
            }
            for t in s.components.keys() {
                if !fibers.iter().any(|f| &f.name == t) {
                    return Err(Error::InvalidConfig(format!(
                        "section {} names unknown fiber {t}",
                        s.name
                    )));
                }
            }
            let components: Vec<usize> = fibers
                .iter()
                .map(|f| {
                    let c = s.components.get(&f.name).copied().unwrap_or(0);
                    f.space.residue(c)
                })
                .collect();
            let comps: Vec<i64> = components.iter().map(|&c| c as i64).collect();
            let key = match (s.order, &s.free) {
                (Some(_), Some(free)) if free.iter().any(|&x| x != 0) => {
                    return Err(Error::InvalidConfig(format!(
                        "torsion section {} has nonzero free coordinates",
                        s.name
                    )))
                }
                (Some(order), _) => {
                    let key = MwKey {
                        free: vec![0; rank],
                        comps,
                    };
                    let expected = key.component_order(&moduli);
                    if order as i64 != expected {
                        return Err(Error::InvalidConfig(format!(
                            "torsion section {} has order {order} but its component vector has order {expected}",
                            s.name
                        )));
                    }
                    Some(key)
                }
                (None, Some(free)) => {
                    if free.len() != rank {
                        return Err(Error::InvalidConfig(format!(
                            "section {} has {} free coordinates, expected {rank}",
                            s.name,
                            free.len()
                        )));
                    }
                    if free.iter().all(|&x| x == 0) {
                        return Err(Error::InvalidConfig(format!(
                            "section {} has zero free part but no torsion order",
                            s.name
                        )));
                    }
                    Some(MwKey {
                        free: free.clone(),
                        comps,
                    })
                }
                (None, None) => None,
            };
            sections.push(Section {
                name: s.name.clone(),
                components,
                order: s.order,
                key,
            });
        }

        let mut keys = vec![Some(MwKey::zero(rank, fibers.len()))];
        keys.extend(sections.iter().map(|s| s.key.clone()));
        for (a, ka) in keys.iter().enumerate() {
            for (b, kb) in keys.iter().enumerate().take(a) {
                if ka.is_some() && ka == kb {
                    let first = point_name(&sections, b);
                    let second = point_name(&sections, a);
                    let torsion = a > 0 && sections[a - 1].order.is_some();
                    return Err(if torsion {
                        Error::TorsionCollision { first, second }
                    } else {
                        Error::InvalidConfig(format!("{first} and {second} are the same element"))
                    });
                }
            }
        }

        let points = pairing_table(&config, &sections, &keys, &moduli, chi)?;

        let mut lattice = Self {
            config,
            chi,
            fibers,
            sections,
            section_offset,
            gram: IntMatrix::zeros(0, 0),
            points,
            keys,
        };
        lattice.gram = lattice.assemble_gram();
        Ok(lattice)
    }

    fn assemble_gram(&self) -> IntMatrix {
        let dim = self.dim();
        let mut g = IntMatrix::zeros(dim, dim);
        g[(0, 0)] = -self.chi;
        g[(0, 1)] = 1;
        g[(1, 0)] = 1;
        for f in &self.fibers {
            for i in 1..f.n {
                for j in 1..f.n {
                    g[(f.offset + i - 1, f.offset + j - 1)] = f.space.gram(i, j);
                }
            }
        }
        for (p, s) in self.sections.iter().enumerate() {
            let row = self.section_offset + p;
            g[(row, 1)] = 1;
            g[(1, row)] = 1;
            for (f, &c) in self.fibers.iter().zip(&s.components) {
                if c >= 1 {
                    let col = f.offset + c - 1;
                    g[(row, col)] = 1;
                    g[(col, row)] = 1;
                }
            }
        }
        for a in 0..self.points.len() {
            for b in 0..self.points.len() {
                g[(self.point_index(a), self.point_index(b))] = self.points[a][b];
            }
        }
        g
    }

    pub fn config(&self) -> &SurfaceConfig {
        &self.config
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn dim(&self) -> usize {
        self.section_offset + self.sections.len()
    }

    /// Rank of the span of `O`, `F` and the fibral components.
    pub fn trivial_rank(&self) -> usize {
        self.section_offset
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn fiber_index(&self, name: &str) -> Option<usize> {
        self.fibers.iter().position(|f| f.name == name)
    }

    /// Number of points: `O` plus the tracked sections.
    pub fn point_count(&self) -> usize {
        self.sections.len() + 1
    }

    /// Point index of `O` (0) or a named section.
    pub fn point(&self, name: &str) -> Option<usize> {
        if name == "O" {
            return Some(0);
        }
        self.sections.iter().position(|s| s.name == name).map(|p| p + 1)
    }

    pub fn point_name(&self, p: usize) -> String {
        point_name(&self.sections, p)
    }

    /// Basis index of a point.
    pub fn point_index(&self, p: usize) -> usize {
        if p == 0 {
            0
        } else {
            self.section_offset + p - 1
        }
    }

    /// Point whose basis vector is `v`, if any.
    pub fn point_of(&self, v: &[i64]) -> Option<usize> {
        (0..self.point_count()).find(|&p| v == self.unit(self.point_index(p)).as_slice())
    }

    /// Component of point `p` on fiber `t` (`O` meets `v^t_0`).
    pub fn point_component(&self, p: usize, t: usize) -> usize {
        if p == 0 {
            0
        } else {
            self.sections[p - 1].components[t]
        }
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> NSDivisor {
        NSDivisor::new(vec![0; self.dim()])
    }

    pub fn fiber_class(&self) -> Vec<i64> {
        self.unit(1)
    }

    /// `v^t_i` in basis coordinates; `i` is taken mod `n_t`.
    pub fn component_vector(&self, t: usize, i: i64) -> Vec<i64> {
        let f = &self.fibers[t];
        let i = f.space.residue(i);
        if i == 0 {
            let mut v = self.fiber_class();
            for j in 1..f.n {
                v[f.offset + j - 1] = -1;
            }
            v
        } else {
            self.unit(f.offset + i - 1)
        }
    }

    /// Embeds `x ∈ V_{n_t}` as `x_0·F + Σ_{j≥1} (x_j - x_0)·v^t_j`.
    pub fn embed_fibral(&self, t: usize, x: &FibralVector) -> Result<Vec<i64>> {
        let f = &self.fibers[t];
        if x.space() != f.space {
            return Err(Error::SpaceMismatch {
                left: f.n,
                right: x.space().n(),
            });
        }
        let c = x.coeffs();
        let mut v = vec![0; self.dim()];
        v[1] = c[0];
        for j in 1..f.n {
            v[f.offset + j - 1] = c[j] - c[0];
        }
        Ok(v)
    }

    /// Inverse of [`embed_fibral`](Self::embed_fibral): `None` unless `v` is
    /// supported on `F` and the components of fiber `t`.
    pub fn fibral_part(&self, t: usize, v: &[i64]) -> Option<FibralVector> {
        let f = &self.fibers[t];
        let block = f.offset..f.offset + f.n - 1;
        let outside = v
            .iter()
            .enumerate()
            .any(|(i, &x)| x != 0 && i != 1 && !block.contains(&i));
        if outside {
            return None;
        }
        let a = v[1];
        let mut c = vec![a; f.n];
        for j in 1..f.n {
            c[j] += v[f.offset + j - 1];
        }
        f.space.vector(c).ok()
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let gy = self.gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn key(&self, p: usize) -> Option<&MwKey> {
        self.keys[p].as_ref()
    }

    fn moduli(&self) -> Vec<i64> {
        self.fibers.iter().map(|f| f.n as i64).collect()
    }

    fn lookup(&self, key: &MwKey) -> Option<usize> {
        self.keys.iter().position(|k| k.as_ref() == Some(key))
    }

    /// The point `p + q` in the Mordell-Weil group.
    pub fn add_points(&self, p: usize, q: usize) -> Result<usize> {
        self.combine_points(p, q, 1, "+")
    }

    /// The point `p - q`.
    pub fn sub_points(&self, p: usize, q: usize) -> Result<usize> {
        self.combine_points(p, q, -1, "-")
    }

    pub fn neg_point(&self, p: usize) -> Result<usize> {
        self.sub_points(0, p)
    }

    fn combine_points(&self, p: usize, q: usize, sign: i64, op: &str) -> Result<usize> {
        let describe = || format!("{} {op} {}", self.point_name(p), self.point_name(q));
        let (Some(kp), Some(kq)) = (self.key(p), self.key(q)) else {
            return Err(Error::UntrackedTranslate(describe()));
        };
        self.lookup(&kp.combine(kq, sign, &self.moduli()))
            .ok_or_else(|| Error::UntrackedTranslate(describe()))
    }

    /// Label of basis element `i`.
    pub fn basis_label(&self, i: usize) -> String {
        match i {
            0 => "O".to_string(),
            1 => "F".to_string(),
            _ if i < self.section_offset => {
                let f = self
                    .fibers
                    .iter()
                    .find(|f| (f.offset..f.offset + f.n - 1).contains(&i))
                    .expect("index inside a fibral block");
                format!("v[{},{}]", f.name, i - f.offset + 1)
            }
            _ => format!("({})", self.sections[i - self.section_offset].name),
        }
    }

    pub fn render(&self, d: &NSDivisor) -> String {
        let mut out = String::new();
        for (i, &c) in d.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&self.basis_label(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses literals such as `O + 2F + v[t0,1] - 3v[t1,2] + (P)`.
    /// `v[t,0]` expands to the derived class.
    pub fn parse_divisor(&self, literal: &str) -> Result<NSDivisor> {
        DivisorParser {
            lattice: self,
            chars: literal.char_indices().collect(),
            pos: 0,
        }
        .parse()
    }

    /// Divisor from basis coordinates, checking the length.
    pub fn divisor(&self, coeffs: Vec<i64>) -> Result<NSDivisor> {
        if coeffs.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: coeffs.len(),
            });
        }
        Ok(NSDivisor::new(coeffs))
    }
}

fn point_name(sections: &[Section], p: usize) -> String {
    if p == 0 {
        "O".to_string()
    } else {
        sections[p - 1].name.clone()
    }
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name != "O"
        && name != "F"
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("unusable name {name:?}")))
    }
}

/// Intersection numbers among `O` and the sections: declared values, then
/// translation-invariant derivation, then a consistency check over every
/// derivable pair.
fn pairing_table(
    config: &SurfaceConfig,
    sections: &[Section],
    keys: &[Option<MwKey>],
    moduli: &[i64],
    chi: i64,
) -> Result<Vec<Vec<i64>>> {
    let count = sections.len() + 1;
    let index = |name: &str| -> Option<usize> {
        if name == "O" {
            Some(0)
        } else {
            sections.iter().position(|s| s.name == name).map(|p| p + 1)
        }
    };
    let mut table: Vec<Vec<Option<i64>>> = vec![vec![None; count]; count];
    for (a, row) in table.iter_mut().enumerate() {
        row[a] = Some(-chi);
    }
    for (p, s) in config.sections.iter().enumerate() {
        let a = p + 1;
        for (other, &value) in &s.pairings {
            let b = index(other).ok_or_else(|| {
                Error::InvalidConfig(format!("section {} pairs with unknown {other}", s.name))
            })?;
            for (x, y) in [(a, b), (b, a)] {
                match table[x][y] {
                    Some(prev) if prev != value => {
                        return Err(Error::InconsistentPairing(format!(
                            "{}.{} given as {prev} and {value}",
                            point_name(sections, x),
                            point_name(sections, y)
                        )))
                    }
                    _ => table[x][y] = Some(value),
                }
            }
        }
    }

    let minus = |a: usize, b: usize| -> Option<usize> {
        let key = keys[a].as_ref()?.combine(keys[b].as_ref()?, -1, moduli);
        keys.iter().position(|k| k.as_ref() == Some(&key))
    };
    loop {
        let mut changed = false;
        for a in 0..count {
            for b in 0..count {
                if table[a][b].is_some() {
                    continue;
                }
                for r in 0..count {
                    if let (Some(x), Some(y)) = (minus(a, r), minus(b, r)) {
                        if let Some(v) = table[x][y] {
                            table[a][b] = Some(v);
                            table[b][a] = Some(v);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut out = vec![vec![0; count]; count];
    for a in 0..count {
        for b in 0..count {
            out[a][b] = table[a][b].ok_or_else(|| {
                Error::MissingPairing(point_name(sections, a), point_name(sections, b))
            })?;
        }
    }
    for a in 0..count {
        for b in 0..count {
            for r in 0..count {
                if let (Some(x), Some(y)) = (minus(a, r), minus(b, r)) {
                    if out[x][y] != out[a][b] {
                        return Err(Error::InconsistentPairing(format!(
                            "{}.{} = {} but translating by -{} gives {}.{} = {}",
                            point_name(sections, a),
                            point_name(sections, b),
                            out[a][b],
                            point_name(sections, r),
                            point_name(sections, x),
                            point_name(sections, y),
                            out[x][y]
                        )));
                    }
                }
            }
        }
    }
    Ok(out)
}

struct DivisorParser<'a> {
    lattice: &'a NsLattice,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl DivisorParser<'_> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(i, c)| i + c.len_utf8()),
            |&(i, _)| i,
        )
    }

    fn err<T>(&self, msg: impl fmt::Display) -> Result<T> {
        Err(Error::parse(format!("divisor offset {}", self.offset()), msg.to_string()))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| pred(c)) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn integer(&mut self) -> Result<Option<i64>> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Ok(None);
        }
        match digits.parse() {
            Ok(v) => Ok(Some(v)),
            Err(e) => self.err(e),
        }
    }

    fn name(&mut self) -> String {
        self.take_while(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
    }

    fn parse(mut self) -> Result<NSDivisor> {
        let mut acc = vec![0i64; self.lattice.dim()];
        let mut first = true;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                if first {
                    return self.err("empty divisor");
                }
                break;
            }
            let mut sign = 1;
            if self.eat('-') {
                sign = -1;
            } else if !self.eat('+') && !first {
                return self.err("expected '+' or '-'");
            }
            first = false;
            self.skip_ws();
            let coeff = self.integer()?;
            self.skip_ws();
            if self.eat('*') || self.eat('·') {
                self.skip_ws();
            }
            let term = match self.peek() {
                Some('O') => {
                    self.pos += 1;
                    self.lattice.unit(0)
                }
                Some('F') => {
                    self.pos += 1;
                    self.lattice.fiber_class()
                }
                Some('v') => {
                    self.pos += 1;
                    self.expect('[')?;
                    self.skip_ws();
                    let fiber = self.name();
                    let Some(t) = self.lattice.fiber_index(&fiber) else {
                        return self.err(format!("unknown fiber {fiber:?}"));
                    };
                    self.skip_ws();
                    self.expect(',')?;
                    self.skip_ws();
                    let neg = self.eat('-');
                    let Some(i) = self.integer()? else {
                        return self.err("expected component index");
                    };
                    self.skip_ws();
                    self.expect(']')?;
                    let i = if neg { -i } else { i };
                    self.lattice.component_vector(t, i)
                }
                Some('(') => {
                    self.pos += 1;
                    self.skip_ws();
                    let name = self.name();
                    self.skip_ws();
                    self.expect(')')?;
                    let Some(p) = self.lattice.point(&name) else {
                        return self.err(format!("unknown section {name:?}"));
                    };
                    self.lattice.unit(self.lattice.point_index(p))
                }
                _ if coeff == Some(0) => vec![0; self.lattice.dim()],
                _ => return self.err("expected O, F, v[t,i] or (P)"),
            };
            let c = sign * coeff.unwrap_or(1);
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += c * t;
            }
        }
        Ok(NSDivisor::new(acc))
    }
}
