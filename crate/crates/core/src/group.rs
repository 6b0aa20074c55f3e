//! Finite groups as dense multiplication tables, homomorphisms to Z₂,
//! finite G-sets and central extensions by roots of unity.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default closure bound for permutation-generated groups.
pub const DEFAULT_ELEMENT_BOUND: usize = 4096;

/// A finite group on the element indices `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    names: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("names", &self.names)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from an explicit Cayley table, checking every axiom.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        let mult: Vec<usize> = table.into_iter().flatten().collect();
        if mult.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[mult[a * n + b]] = true;
                col[mult[b * n + a]] = true;
            }
            if row.iter().chain(col.iter()).any(|&seen| !seen) {
                return Err(Error::InvalidGroup(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] == x && mult[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mult[a * n + b] == identity)
                .expect("latin square has an inverse in every row");
            if mult[inv[a] * n + a] != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(_) => return Err(Error::InvalidGroup("wrong number of element names".into())),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let g = FiniteGroup { order: n, mult, identity, inv, names };
        if !g.is_associative() {
            return Err(Error::InvalidGroup("multiplication is not associative".into()));
        }
        Ok(g)
    }

    /// Closes a set of permutations of `0..degree` under composition.
    ///
    /// The product `g·h` is the composite "first h, then g". Returns the group
    /// together with the permutation realizing each element.
    pub fn from_permutations(
        gens: &[Vec<usize>],
        bound: usize,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        let degree = gens.first().map_or(0, |p| p.len());
        for p in gens {
            if p.len() != degree {
                return Err(Error::InvalidGroup("generators act on different sets".into()));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let p: Vec<usize> = elems[i].iter().map(|&x| s[x]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= bound {
                        return Err(Error::ClosureBound(bound));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = elems[b].iter().map(|&x| elems[a][x]).collect();
                mult[a * n + b] = index[&p];
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mult[a * n + b] == 0).expect("closed group"))
            .collect();
        let names = elems.iter().map(|p| cycle_notation(p)).collect();
        Ok((FiniteGroup { order: n, mult, identity: 0, inv, names }, elems))
    }

    fn from_parts_unchecked(order: usize, mult: Vec<usize>, names: Vec<String>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mult[e * order + x] == x))
            .expect("identity");
        let inv = (0..order)
            .map(|a| (0..order).find(|&b| mult[a * order + b] == identity).expect("inverse"))
            .collect();
        FiniteGroup { order, mult, identity, inv, names }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = self.identity;
        for _ in 0..k {
            r = self.op(r, a);
        }
        r
    }

    pub fn conj(&self, g: usize, k: usize) -> usize {
        // g⁻¹ k g
        self.op(self.op(self.inv(g), k), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Full triple-loop associativity check.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.op(a, b);
                (0..n).all(|c| self.op(ab, c) == self.op(a, self.op(b, c)))
            })
        })
    }

    /// Conjugacy classes, each sorted, ordered by smallest member; the
    /// identity class comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut starts: Vec<usize> = vec![self.identity];
        starts.extend(self.elements().filter(|&a| a != self.identity));
        for a in starts {
            if class_of[a] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = self.elements().map(|g| self.conj(g, a)).collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        classes
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.op(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// A generating set built greedily from the element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Every subgroup as a sorted element list, ordered by size and then
    /// lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let cyclic: BTreeSet<Vec<usize>> = self.elements().map(|a| self.closure(&[a])).collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
        found.extend(cyclic.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let mut gens = h.clone();
                    gens.extend(c.iter().copied());
                    let j = self.closure(&gens);
                    if !found.contains(&j) {
                        found.insert(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        all
    }

    /// The subgroup on `elements` as a standalone group plus its embedding.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut emb: Vec<usize> = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if emb.binary_search(&self.identity).is_err() {
            return Err(Error::InvalidGroup("subset misses the identity".into()));
        }
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = emb.len();
        let mut mult = vec![0; n * n];
        for (i, &a) in emb.iter().enumerate() {
            for (j, &b) in emb.iter().enumerate() {
                mult[i * n + j] = *pos
                    .get(&self.op(a, b))
                    .ok_or_else(|| Error::InvalidGroup("subset is not closed".into()))?;
            }
        }
        let names = emb.iter().map(|&g| self.names[g].clone()).collect();
        Ok((FiniteGroup::from_parts_unchecked(n, mult, names), emb))
    }

    /// Kernel of a homomorphism to Z₂, with its embedding.
    pub fn kernel(&self, h: &Z2Hom) -> Result<(FiniteGroup, Vec<usize>)> {
        h.validate(self)?;
        let ker: Vec<usize> = self.elements().filter(|&g| !h.is_odd(g)).collect();
        self.subgroup(&ker)
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let set: BTreeSet<usize> = sub.iter().copied().collect();
        self.elements().all(|g| sub.iter().all(|&k| set.contains(&self.conj(g, k))))
    }

    /// Direct product with element index `a·|other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let x = self.op(a / n2, b / n2);
                let y = other.op(a % n2, b % n2);
                mult[a * n + b] = x * n2 + y;
            }
        }
        let names = (0..n)
            .map(|a| {
                let l = strip_parens(&self.names[a / n2]);
                let r = strip_parens(&other.names[a % n2]);
                format!("({l},{r})")
            })
            .collect();
        FiniteGroup::from_parts_unchecked(n, mult, names)
    }

    /// Searches for an isomorphism onto `other` by backtracking over
    /// generator images. Intended for tests on small groups.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order || self.order > 64 {
            return None;
        }
        let gens = self.generators();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_iso(other, &gens, &mut images)
    }

    fn extend_iso(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.try_hom(other, gens, images);
        }
        let want = self.element_order(gens[images.len()]);
        for cand in other.elements() {
            if other.element_order(cand) != want {
                continue;
            }
            images.push(cand);
            if let Some(m) = self.extend_iso(other, gens, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }

    fn try_hom(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (s, &t) in gens.iter().zip(images) {
                let y = self.op(x, *s);
                let fy = other.op(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let mut hit = vec![false; other.order];
        for &v in &map {
            if hit[v] {
                return None;
            }
            hit[v] = true;
        }
        let ok = self
            .elements()
            .all(|a| self.elements().all(|b| map[self.op(a, b)] == other.op(map[a], map[b])));
        ok.then_some(map)
    }
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        let body: Vec<String> = cyc.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation such as `(1 2)(3 4)` on 1-based points.
///
/// The degree is the largest point mentioned unless `degree` is larger.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidGroup(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::InvalidGroup(format!("unclosed cycle in {text:?}")))?;
        let body = &open[..close];
        let pts: std::result::Result<Vec<usize>, _> = body
            .split(|c: char| c == ' ' || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::parse::<usize>)
            .collect();
        let pts = pts.map_err(|_| Error::InvalidGroup(format!("bad point in {text:?}")))?;
        if pts.iter().any(|&x| x == 0) {
            return Err(Error::InvalidGroup("points are 1-based".into()));
        }
        cycles.push(pts);
        rest = open[close + 1..].trim_start();
    }
    let max = cycles.iter().flatten().copied().max().unwrap_or(0).max(degree);
    let mut p: Vec<usize> = (0..max).collect();
    // cycles compose right to left, like the group product
    for cyc in cycles.iter().rev() {
        let distinct: BTreeSet<usize> = cyc.iter().copied().collect();
        if distinct.len() != cyc.len() {
            return Err(Error::InvalidGroup("repeated point in cycle".into()));
        }
        let mut q: Vec<usize> = (0..max).collect();
        for (i, &a) in cyc.iter().enumerate() {
            q[a - 1] = cyc[(i + 1) % cyc.len()] - 1;
        }
        p = p.iter().map(|&x| q[x]).collect();
    }
    Ok(p)
}

/// A homomorphism G → Z₂ = {±1}, stored as its table of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Hom {
    odd: Vec<bool>,
}

impl Z2Hom {
    pub fn trivial(order: usize) -> Self {
        Z2Hom { odd: vec![false; order] }
    }

    /// Builds from signs ±1, validating against `g`.
    pub fn from_signs(g: &FiniteGroup, signs: &[i8]) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidHom("values must be ±1".into()));
        }
        let h = Z2Hom { odd: signs.iter().map(|&s| s == -1).collect() };
        h.validate(g)?;
        Ok(h)
    }

    pub fn from_odd(g: &FiniteGroup, odd: Vec<bool>) -> Result<Self> {
        let h = Z2Hom { odd };
        h.validate(g)?;
        Ok(h)
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if self.odd.len() != g.order() {
            return Err(Error::InvalidHom("table size differs from the group order".into()));
        }
        if self.odd[g.identity()] {
            return Err(Error::InvalidHom("identity must map to +1".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.odd[g.op(a, b)] != (self.odd[a] ^ self.odd[b]) {
                    return Err(Error::InvalidHom(format!(
                        "not multiplicative at ({}, {})",
                        g.name(a),
                        g.name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn is_odd(&self, g: usize) -> bool {
        self.odd[g]
    }

    #[inline]
    pub fn sign(&self, g: usize) -> i64 {
        if self.odd[g] {
            -1
        } else {
            1
        }
    }

    pub fn is_trivial(&self) -> bool {
        !self.odd.iter().any(|&b| b)
    }

    pub fn len(&self) -> usize {
        self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.odd.is_empty()
    }

    pub fn values(&self) -> Vec<i8> {
        self.odd.iter().map(|&b| if b { -1 } else { 1 }).collect()
    }

    pub fn odd_table(&self) -> &[bool] {
        &self.odd
    }

    /// Pointwise product of two homomorphisms.
    pub fn mul(&self, other: &Z2Hom) -> Z2Hom {
        Z2Hom { odd: self.odd.iter().zip(&other.odd).map(|(a, b)| a ^ b).collect() }
    }

    /// Pull back along an element map (e.g. a subgroup embedding).
    pub fn pullback(&self, map: &[usize]) -> Z2Hom {
        Z2Hom { odd: map.iter().map(|&g| self.odd[g]).collect() }
    }

    /// All homomorphisms G → Z₂, trivial first.
    pub fn all(g: &FiniteGroup) -> Vec<Z2Hom> {
        let gens = g.generators();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << gens.len()) {
            let mut odd = vec![None; g.order()];
            odd[g.identity()] = Some(false);
            let mut queue = VecDeque::from([g.identity()]);
            let mut ok = true;
            while let Some(x) = queue.pop_front() {
                for (i, &s) in gens.iter().enumerate() {
                    let y = g.op(x, s);
                    let v = odd[x].unwrap() ^ (mask >> i & 1 == 1);
                    match odd[y] {
                        None => {
                            odd[y] = Some(v);
                            queue.push_back(y);
                        }
                        Some(w) if w != v => ok = false,
                        _ => {}
                    }
                }
            }
            if !ok {
                continue;
            }
            let h = Z2Hom { odd: odd.into_iter().map(Option::unwrap).collect() };
            if h.validate(g).is_ok() {
                out.push(h);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// A finite left G-set; `act(g, x)` is the point g·x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group_order: usize,
    size: usize,
    action: Vec<usize>,
}

impl GSet {
    pub fn point(g: &FiniteGroup) -> Self {
        GSet { group_order: g.order(), size: 1, action: vec![0; g.order()] }
    }

    pub fn from_table(g: &FiniteGroup, size: usize, action: Vec<usize>) -> Result<Self> {
        let s = GSet { group_order: g.order(), size, action };
        s.validate(g)?;
        Ok(s)
    }

    /// The coset space G/H with left translation; coset i is listed by its
    /// smallest representative.
    pub fn cosets(g: &FiniteGroup, h: &[usize]) -> Result<Self> {
        let reps = left_coset_reps(g, h)?;
        let coset_of = |x: usize| -> usize {
            reps.iter()
                .position(|&r| h.iter().any(|&k| g.op(r, k) == x))
                .expect("cosets cover the group")
        };
        let size = reps.len();
        let mut action = vec![0; g.order() * size];
        for a in g.elements() {
            for (i, &r) in reps.iter().enumerate() {
                action[a * size + i] = coset_of(g.op(a, r));
            }
        }
        GSet::from_table(g, size, action)
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if self.group_order != g.order() || self.action.len() != g.order() * self.size {
            return Err(Error::InvalidGSet("table dimensions".into()));
        }
        if self.size == 0 || self.action.iter().any(|&x| x >= self.size) {
            return Err(Error::InvalidGSet("point out of range".into()));
        }
        for x in 0..self.size {
            if self.act(g.identity(), x) != x {
                return Err(Error::InvalidGSet("identity moves a point".into()));
            }
            for a in g.elements() {
                for b in g.elements() {
                    if self.act(g.op(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(Error::InvalidGSet("composition law fails".into()));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let orb: BTreeSet<usize> = (0..self.group_order).map(|g| self.act(g, x)).collect();
            for &y in &orb {
                seen[y] = true;
            }
            out.push(orb.into_iter().collect());
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group_order).filter(|&g| self.act(g, x) == x).collect()
    }
}

/// Smallest representative of each left coset gH, in increasing order.
pub fn left_coset_reps(g: &FiniteGroup, h: &[usize]) -> Result<Vec<usize>> {
    if g.closure(h) != {
        let mut s = h.to_vec();
        s.sort_unstable();
        s
    } {
        return Err(Error::InvalidGroup("not a subgroup".into()));
    }
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if covered[a] {
            continue;
        }
        reps.push(a);
        for &k in h {
            covered[g.op(a, k)] = true;
        }
    }
    Ok(reps)
}

/// Extension of `base` by Z_m realized from a φ-twisted 2-cocycle table.
///
/// Elements are pairs (z, g) stored at index `g·m + z`, multiplied by
/// (z₁,g₁)(z₂,g₂) = (z₁ + φ(g₁)z₂ + t(g₁,g₂), g₁g₂).
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub base_order: usize,
    pub modulus: usize,
    pub total: FiniteGroup,
    pub projection: Vec<usize>,
    pub section: Vec<usize>,
    pub central_inclusion: Vec<usize>,
}

impl CentralExtension {
    /// `t[g·|G| + h]` holds the exponent of τ(g,h) in Z_m.
    pub fn from_cocycle_table(
        base: &FiniteGroup,
        phi: &Z2Hom,
        m: usize,
        t: &[u64],
    ) -> Result<Self> {
        let n = base.order();
        if m == 0 || t.len() != n * n {
            return Err(Error::Mismatch("cocycle table does not fit the group".into()));
        }
        let m64 = m as u64;
        let neg = |v: u64| (m64 - v % m64) % m64;
        for a in base.elements() {
            for b in base.elements() {
                for c in base.elements() {
                    // τ(a,b) + τ(ab,c) = φ(a)τ(b,c) + τ(a,bc)
                    let lhs = t[a * n + b] + t[base.op(a, b) * n + c];
                    let tw = if phi.is_odd(a) { neg(t[b * n + c]) } else { t[b * n + c] };
                    let rhs = tw + t[a * n + base.op(b, c)];
                    if lhs % m64 != rhs % m64 {
                        return Err(Error::NotCocycle);
                    }
                }
            }
        }
        let order = n * m;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            let (g1, z1) = (x / m, (x % m) as u64);
            for y in 0..order {
                let (g2, z2) = (y / m, (y % m) as u64);
                let tz = if phi.is_odd(g1) { neg(z2) } else { z2 };
                let z = (z1 + tz + t[g1 * n + g2]) % m64;
                mult[x * order + y] = base.op(g1, g2) * m + z as usize;
            }
        }
        let names = (0..order)
            .map(|x| format!("[{};{}]", x % m, base.name(x / m)))
            .collect();
        let total = FiniteGroup::from_parts_unchecked(order, mult, names);
        // the cocycle identity above is associativity of this product
        let projection = (0..order).map(|x| x / m).collect();
        let section = (0..n).map(|g| g * m).collect();
        // z ↦ (z − τ(e,e), e) is a homomorphism onto the kernel of the projection
        let t0 = t[base.identity() * n + base.identity()] % m64;
        let central_inclusion = (0..m as u64)
            .map(|z| base.identity() * m + ((z + m64 - t0) % m64) as usize)
            .collect();
        Ok(CentralExtension { base_order: n, modulus: m, total, projection, section, central_inclusion })
    }
}

/// Named groups used throughout.
pub mod presets {
    use super::*;

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_parts_unchecked(1, vec![0], vec!["1".into()])
    }

    /// Z_n; Z₂ uses the multiplicative labels `1`, `-1`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mult = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let names = if n == 2 {
            vec!["1".into(), "-1".into()]
        } else {
            (0..n).map(|k| k.to_string()).collect()
        };
        FiniteGroup::from_parts_unchecked(n, mult, names)
    }

    /// Product of cyclic groups Z_{n₁} × … × Z_{n_k}.
    pub fn abelian(factors: &[usize]) -> FiniteGroup {
        factors
            .iter()
            .map(|&n| cyclic(n))
            .reduce(|a, b| a.direct_product(&b))
            .unwrap_or_else(trivial)
    }

    pub fn klein() -> FiniteGroup {
        abelian(&[2, 2])
    }

    /// Dihedral group of order 2n: rotations r^k at index k, reflections
    /// s r^k at index n + k.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let ord = 2 * n;
        let mut mult = vec![0; ord * ord];
        for a in 0..ord {
            for b in 0..ord {
                let (sa, ka) = (a / n, a % n);
                let (sb, kb) = (b / n, b % n);
                // s^sa r^ka s^sb r^kb = s^(sa+sb) r^(±ka + kb)
                let k = if sb == 1 { (n - ka + kb) % n } else { (ka + kb) % n };
                mult[a * ord + b] = ((sa + sb) % 2) * n + k;
            }
        }
        let names = (0..ord)
            .map(|a| if a < n { format!("r{}", a) } else { format!("sr{}", a - n) })
            .collect();
        FiniteGroup::from_parts_unchecked(ord, mult, names)
    }

    /// Dicyclic group of order 4n: a^k at index k (k < 2n), x a^k at 2n + k,
    /// with x² = a^n and x a x⁻¹ = a⁻¹.
    pub fn dicyclic(n: usize) -> FiniteGroup {
        let m = 2 * n;
        let ord = 2 * m;
        let mut mult = vec![0; ord * ord];
        for p in 0..ord {
            for q in 0..ord {
                let (xp, kp) = (p / m, p % m);
                let (xq, kq) = (q / m, q % m);
                // x^xp a^kp x^xq a^kq
                let (xs, k) = match (xp, xq) {
                    (_, 0) => (xp, (kp + kq) % m),
                    (0, 1) => (1, (m - kp + kq) % m),
                    _ => (0, (m - kp + kq + n) % m),
                };
                mult[p * ord + q] = xs * m + k;
            }
        }
        let names = (0..ord)
            .map(|a| if a < m { format!("a{}", a) } else { format!("xa{}", a - m) })
            .collect();
        FiniteGroup::from_parts_unchecked(ord, mult, names)
    }

    pub fn quaternion() -> FiniteGroup {
        dicyclic(2)
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        if gens.is_empty() {
            return trivial();
        }
        FiniteGroup::from_permutations(&gens, DEFAULT_ELEMENT_BOUND).expect("S_n closes").0
    }

    pub fn alternating4() -> FiniteGroup {
        let g1 = vec![1, 2, 0, 3];
        let g2 = vec![1, 0, 3, 2];
        FiniteGroup::from_permutations(&[g1, g2], DEFAULT_ELEMENT_BOUND).expect("A4 closes").0
    }

    /// Resolves a preset name: `Z2`, `Z2xZ2`, `Z4`, `D4`, `Q8`, `S3`, `A4`,
    /// `Zn`, products `ZaxZbx…`, `Dn` (order 2n), `Dicn` (order 4n), `Sn`,
    /// `1`.
    pub fn by_name(name: &str) -> Result<FiniteGroup> {
        let s = name.trim();
        let num = |t: &str| t.parse::<usize>().ok().filter(|&k| k >= 1);
        if s == "1" || s.eq_ignore_ascii_case("trivial") {
            return Ok(trivial());
        }
        if s == "Q8" {
            return Ok(quaternion());
        }
        if s == "A4" {
            return Ok(alternating4());
        }
        if let Some(rest) = s.strip_prefix("Dic") {
            if let Some(k) = num(rest).filter(|&k| k >= 2) {
                return Ok(dicyclic(k));
            }
        }
        if let Some(rest) = s.strip_prefix('D') {
            if let Some(k) = num(rest).filter(|&k| k >= 2) {
                return Ok(dihedral(k));
            }
        }
        if let Some(rest) = s.strip_prefix('S') {
            if let Some(k) = num(rest).filter(|&k| (1..=5).contains(&k)) {
                return Ok(symmetric(k));
            }
        }
        let parts: Vec<&str> = s.split(['x', '×']).collect();
        let factors: Option<Vec<usize>> = parts
            .iter()
            .map(|p| p.trim().strip_prefix('Z').and_then(num))
            .collect();
        match factors {
            Some(f) if !f.is_empty() && f.iter().product::<usize>() <= DEFAULT_ELEMENT_BOUND => {
                Ok(abelian(&f))
            }
            _ => Err(Error::UnknownName(format!("group preset {s:?}"))),
        }
    }

    /// Small groups used by sweeps: the named presets plus every abelian
    /// group, all of order at most `max_order`, with a display label.
    pub fn sweep_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
        let mut out: Vec<(String, FiniteGroup)> = Vec::new();
        out.push(("1".into(), trivial()));
        for n in 2..=max_order {
            for f in abelian_invariant_factors(n) {
                let label = f.iter().map(|k| format!("Z{k}")).collect::<Vec<_>>().join("x");
                out.push((label, abelian(&f)));
            }
            if n >= 6 && n % 2 == 0 {
                out.push((format!("D{}", n / 2), dihedral(n / 2)));
            }
            if n >= 8 && n % 4 == 0 {
                out.push((format!("Dic{}", n / 4), dicyclic(n / 4)));
            }
        }
        // a few nonabelian products and A4
        for (label, g) in [
            ("Z2xD4", cyclic(2).direct_product(&dihedral(4))),
            ("Z2xQ8", cyclic(2).direct_product(&quaternion())),
            ("Z2xS3", cyclic(2).direct_product(&dihedral(3))),
            ("A4", alternating4()),
        ] {
            if g.order() <= max_order {
                out.push((label.into(), g));
            }
        }
        out.sort_by_key(|(_, g)| g.order());
        out
    }

    /// Invariant-factor lists d₁ | d₂ | … with product n.
    pub fn abelian_invariant_factors(n: usize) -> Vec<Vec<usize>> {
        fn rec(rem: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 1 {
                out.push(acc.clone());
                return;
            }
            for d in 2..=rem {
                if rem % d == 0 && d % prev == 0 && (rem / d == 1 || (rem / d) % d == 0) {
                    acc.push(d);
                    rec(rem / d, d, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, 1, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn permutation_closure_gives_d4() {
        let a = parse_cycles("(1 2 3 4)", 4).unwrap();
        let b = parse_cycles("(1 3)", 4).unwrap();
        let (g, _) = FiniteGroup::from_permutations(&[a, b], DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert!(g.isomorphism_to(&dihedral(4)).is_some());
    }

    #[test]
    fn commuting_involutions_give_klein() {
        let a = parse_cycles("(1 2)", 4).unwrap();
        let b = parse_cycles("(3 4)", 4).unwrap();
        let (g, _) = FiniteGroup::from_permutations(&[a, b], DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.elements().all(|x| g.op(x, x) == g.identity()));
    }

    #[test]
    fn four_cycle_is_cyclic() {
        let a = parse_cycles("(1 2 3 4)", 4).unwrap();
        let (g, _) = FiniteGroup::from_permutations(&[a], DEFAULT_ELEMENT_BOUND).unwrap();
        assert!(g.isomorphism_to(&cyclic(4)).is_some());
    }

    #[test]
    fn class_sizes() {
        let sizes = |g: &FiniteGroup| {
            let mut v: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
            v.sort();
            v
        };
        assert_eq!(sizes(&klein()), vec![1, 1, 1, 1]);
        assert_eq!(sizes(&dihedral(4)), vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes(&quaternion()), vec![1, 1, 2, 2, 2]);
        assert!(dihedral(4).isomorphism_to(&quaternion()).is_none());
    }

    #[test]
    fn kernels() {
        let g = klein();
        let p1 = Z2Hom::from_signs(&g, &[1, 1, -1, -1]).unwrap();
        let (k, emb) = g.kernel(&p1).unwrap();
        assert_eq!(k.order(), 2);
        let names: Vec<&str> = emb.iter().map(|&x| g.name(x)).collect();
        assert_eq!(names, vec!["(1,1)", "(1,-1)"]);
        let z4 = cyclic(4);
        let sign = Z2Hom::from_signs(&z4, &[1, -1, 1, -1]).unwrap();
        let (k, emb) = z4.kernel(&sign).unwrap();
        assert_eq!(k.order(), 2);
        assert_eq!(emb, vec![0, 2]);
        assert_eq!(g.kernel(&Z2Hom::trivial(4)).unwrap().0.order(), 4);
    }

    #[test]
    fn hom_counts() {
        assert_eq!(Z2Hom::all(&klein()).len(), 4);
        assert_eq!(Z2Hom::all(&cyclic(3)).len(), 1);
        assert_eq!(Z2Hom::all(&dihedral(4)).len(), 4);
        assert_eq!(Z2Hom::all(&quaternion()).len(), 4);
        assert_eq!(Z2Hom::all(&alternating4()).len(), 1);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]], None).is_err());
        // a Latin square without associativity
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t, None), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn closure_bound() {
        let a = parse_cycles("(1 2 3 4 5 6 7)", 7).unwrap();
        let b = parse_cycles("(1 2)", 7).unwrap();
        assert_eq!(
            FiniteGroup::from_permutations(&[a, b], 100).unwrap_err(),
            Error::ClosureBound(100)
        );
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(klein().subgroups().len(), 5);
        assert_eq!(dihedral(4).subgroups().len(), 10);
        assert_eq!(quaternion().subgroups().len(), 6);
    }

    #[test]
    fn coset_sets() {
        let g = klein();
        for h in g.subgroups() {
            let x = GSet::cosets(&g, &h).unwrap();
            assert_eq!(x.size() * h.len(), 4);
            assert_eq!(x.orbits().len(), 1);
            assert_eq!(x.stabilizer(0), h);
        }
    }

    #[test]
    fn invariant_factor_lists() {
        assert_eq!(abelian_invariant_factors(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_invariant_factors(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(abelian_invariant_factors(16).len(), 5);
    }

    #[test]
    fn preset_names() {
        for (name, ord) in [("Z2", 2), ("Z2xZ2", 4), ("Z4", 4), ("D4", 8), ("Q8", 8), ("S3", 6), ("A4", 12), ("Dic3", 12), ("Z2xZ4", 8)] {
            assert_eq!(by_name(name).unwrap().order(), ord, "{name}");
        }
        assert!(by_name("Q9").is_err());
        assert!(by_name("S3").unwrap().isomorphism_to(&dihedral(3)).is_some());
    }

    #[test]
    fn extension_of_z2_by_tau_id() {
        let g = cyclic(2);
        let phi = Z2Hom::from_signs(&g, &[1, -1]).unwrap();
        let t = vec![0, 0, 0, 1];
        let e = CentralExtension::from_cocycle_table(&g, &phi, 2, &t).unwrap();
        assert_eq!(e.total.order(), 4);
        let lift = e.section[1];
        assert_eq!(e.total.op(lift, lift), e.central_inclusion[1]);
    }
}
