//! Clifford algebras Cl_{p,q} (e_i² = −1 for the first p generators, +1 for
//! the remaining q), their graded modules, and K-groups of a point as
//! quotient monoids of graded modules by those that extend.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::{AbelianGroupPresentation, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    R,
    C,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::R => "R",
            Field::C => "C",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionAlgebra {
    R,
    C,
    H,
}

impl DivisionAlgebra {
    pub fn real_dim(self) -> usize {
        match self {
            DivisionAlgebra::R => 1,
            DivisionAlgebra::C => 2,
            DivisionAlgebra::H => 4,
        }
    }
}

/// `factors` copies of the matrix algebra M_size(division).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixForm {
    pub division: DivisionAlgebra,
    pub size: usize,
    pub factors: usize,
}

impl MatrixForm {
    fn tensor_m2(self) -> Self {
        MatrixForm { size: self.size * 2, ..self }
    }

    /// ⊗_R H
    fn tensor_h(self) -> Self {
        match self.division {
            DivisionAlgebra::R => MatrixForm { division: DivisionAlgebra::H, ..self },
            DivisionAlgebra::C => MatrixForm { size: self.size * 2, ..self },
            DivisionAlgebra::H => {
                MatrixForm { division: DivisionAlgebra::R, size: self.size * 4, ..self }
            }
        }
    }

    /// Dimension over the base field of the algebra.
    pub fn dim_over(self, field: Field) -> usize {
        let d = self.factors * self.size * self.size * self.division.real_dim();
        match field {
            Field::R => d,
            Field::C => d / 2,
        }
    }

    /// Dimension over the base field of one irreducible module.
    pub fn irreducible_dim(self, field: Field) -> usize {
        let d = self.size * self.division.real_dim();
        match field {
            Field::R => d,
            Field::C => d / 2,
        }
    }
}

impl fmt::Display for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.division {
            DivisionAlgebra::R => "R",
            DivisionAlgebra::C => "C",
            DivisionAlgebra::H => "H",
        };
        let one = if self.size == 1 { d.to_string() } else { format!("M{}({d})", self.size) };
        if self.factors == 2 {
            write!(f, "{one}+{one}")
        } else {
            f.write_str(&one)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CliffordDescriptor {
    pub field: Field,
    pub p: usize,
    pub q: usize,
    pub form: MatrixForm,
}

pub const MAX_SIGNATURE: usize = 32;

/// Ungraded structure of Cl_{p,q} over R or C.
pub fn classify_clifford(p: usize, q: usize, field: Field) -> Result<CliffordDescriptor> {
    if p > MAX_SIGNATURE || q > MAX_SIGNATURE + 1 {
        return Err(Error::SizeBound(format!("signature ({p},{q})")));
    }
    let form = match field {
        Field::R => real_form(p, q),
        Field::C => {
            let n = p + q;
            MatrixForm {
                division: DivisionAlgebra::C,
                size: 1 << (n / 2),
                factors: if n % 2 == 1 { 2 } else { 1 },
            }
        }
    };
    let d = CliffordDescriptor { field, p, q, form };
    let total = form.dim_over(field);
    if total != 1usize << (p + q) {
        return Err(Error::Internal(format!("Cl_{{{p},{q}}} has dimension {total}")));
    }
    Ok(d)
}

fn real_form(p: usize, q: usize) -> MatrixForm {
    // Cl_{p+1,q+1} ≅ Cl_{p,q} ⊗ M₂(R)
    if p > 0 && q > 0 {
        return real_form(p - 1, q - 1).tensor_m2();
    }
    let base = |division, size, factors| MatrixForm { division, size, factors };
    match (p, q) {
        (0, 0) => base(DivisionAlgebra::R, 1, 1),
        (1, 0) => base(DivisionAlgebra::C, 1, 1),
        (2, 0) => base(DivisionAlgebra::H, 1, 1),
        (0, 1) => base(DivisionAlgebra::R, 1, 2),
        (0, 2) => base(DivisionAlgebra::R, 2, 1),
        // Cl_{n+2,0} ≅ Cl_{0,n} ⊗ Cl_{2,0}
        (n, 0) => real_form(0, n - 2).tensor_h(),
        // Cl_{0,n+2} ≅ Cl_{n,0} ⊗ Cl_{0,2}
        (0, n) => real_form(n - 2, 0).tensor_m2(),
        _ => unreachable!(),
    }
}

/// Dimensions over the base field of the even and odd parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuleShape {
    pub even: usize,
    pub odd: usize,
}

impl ModuleShape {
    pub fn dim(self) -> usize {
        self.even + self.odd
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

/// Graded irreducible Cl_{p,q}-modules: the ungraded irreducibles of
/// Cl_{p,q+1}, the extra generator acting as the grading operator.
pub fn irreducible_graded_modules(p: usize, q: usize, field: Field) -> Result<Vec<ModuleShape>> {
    let d = classify_clifford(p, q + 1, field)?;
    let dim = d.form.irreducible_dim(field);
    if p + q == 0 {
        // the grading operator is ±1 on the whole module
        return Ok(vec![ModuleShape { even: dim, odd: 0 }, ModuleShape { even: 0, odd: dim }]);
    }
    // any generator is an odd automorphism, so both parts have equal size
    let shape = ModuleShape { even: dim / 2, odd: dim / 2 };
    Ok(vec![shape; d.form.factors])
}

/// The monoid of graded Cl_{p,q}-modules up to isomorphism: N^r on the
/// graded irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModuleMonoid {
    pub descriptor: CliffordDescriptor,
    pub irreducibles: Vec<ModuleShape>,
}

impl GradedModuleMonoid {
    pub fn new(p: usize, q: usize, field: Field) -> Result<Self> {
        Ok(GradedModuleMonoid {
            descriptor: classify_clifford(p, q, field)?,
            irreducibles: irreducible_graded_modules(p, q, field)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.irreducibles.len()
    }

    /// Grading reversal Π on multiplicity vectors. With two irreducibles Π
    /// exchanges them; with one it fixes it.
    pub fn reversal(&self, x: &[u64]) -> Vec<u64> {
        let mut y = x.to_vec();
        y.reverse();
        y
    }
}

/// A monoid homomorphism N^source → N^target given by the images of the
/// source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidMap {
    pub images: Vec<Vec<u64>>,
    pub target_rank: usize,
}

impl MonoidMap {
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.target_rank];
        for (c, img) in x.iter().zip(&self.images) {
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        out
    }
}

/// Which generator is forgotten when restricting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extra {
    /// an extra generator squaring to −1: M^{p+1,q} → M^{p,q}
    Negative,
    /// an extra generator squaring to +1: M^{p,q+1} → M^{p,q}
    Positive,
}

/// Restriction of graded modules along Cl_{p,q} ⊂ Cl_{p+1,q} (or Cl_{p,q+1}).
///
/// Counting dimensions fixes the image: a restricted irreducible of
/// dimension d lands on k = d/d' copies of a lone target irreducible of
/// dimension d'. With two targets N and ΠN the forgotten generator is an odd
/// isomorphism N ≅ ΠN on the restriction, so both occur equally often.
pub fn restriction_map(p: usize, q: usize, field: Field, extra: Extra) -> Result<MonoidMap> {
    let (sp, sq) = match extra {
        Extra::Negative => (p + 1, q),
        Extra::Positive => (p, q + 1),
    };
    let source = irreducible_graded_modules(sp, sq, field)?;
    let target = irreducible_graded_modules(p, q, field)?;
    let td = target[0].dim();
    let images = source
        .iter()
        .map(|s| {
            let d = s.dim();
            match target.len() {
                1 => {
                    if d % td != 0 {
                        return Err(Error::Internal("restriction dimension mismatch".into()));
                    }
                    Ok(vec![(d / td) as u64])
                }
                _ => {
                    if d % (2 * td) != 0 {
                        return Err(Error::Internal("restriction dimension mismatch".into()));
                    }
                    let k = (d / (2 * td)) as u64;
                    Ok(vec![k, k])
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let map = MonoidMap { images, target_rank: target.len() };
    // even and odd dimensions must be preserved
    for (s, img) in source.iter().zip(&map.images) {
        let (mut e, mut o) = (0, 0);
        for (t, &c) in target.iter().zip(img) {
            e += t.even * c as usize;
            o += t.odd * c as usize;
        }
        if (e, o) != (s.even, s.odd) {
            return Err(Error::Internal("restriction does not preserve the grading".into()));
        }
    }
    Ok(map)
}

/// M/Z for M = N^r, Z generated by `z_gens`, with inversion map `inv`.
#[derive(Clone, Debug)]
pub struct QuotientMonoidGroup {
    pub rank: usize,
    pub z_gens: Vec<Vec<u64>>,
    pub result: AbelianGroupPresentation,
}

/// Membership of a vector in the submonoid generated by `gens`, by bounded
/// search (vectors here have tiny entries).
pub fn in_submonoid(v: &[u64], gens: &[Vec<u64>]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    gens.iter().any(|g| {
        g.iter().any(|&x| x > 0)
            && g.iter().zip(v).all(|(a, b)| a <= b)
            && in_submonoid(&v.iter().zip(g).map(|(a, b)| a - b).collect::<Vec<_>>(), gens)
    })
}

/// The group M/Z under the hypotheses I(Z) = Z and I(x) + x ∈ Z, checked on
/// generators. Then x ~ x′ iff x − x′ lies in the group generated by Z, so
/// M/Z is the cokernel of the generator matrix of Z.
pub fn quotient_monoid(
    rank: usize,
    z_gens: &[Vec<u64>],
    inv: impl Fn(&[u64]) -> Vec<u64>,
) -> Result<QuotientMonoidGroup> {
    for z in z_gens {
        if z.len() != rank {
            return Err(Error::Mismatch("generator of Z has the wrong length".into()));
        }
        if !in_submonoid(&inv(z), z_gens) {
            return Err(Error::Precondition("I(Z) ⊄ Z".into()));
        }
    }
    for i in 0..rank {
        let mut e = vec![0u64; rank];
        e[i] = 1;
        let s: Vec<u64> = inv(&e).iter().zip(&e).map(|(a, b)| a + b).collect();
        if !in_submonoid(&s, z_gens) {
            return Err(Error::Precondition("I(x) + x ∉ Z for a generator x".into()));
        }
    }
    let mut a = IntMatrix::zeros(rank, z_gens.len());
    for (j, z) in z_gens.iter().enumerate() {
        for (i, &v) in z.iter().enumerate() {
            a.set(i, j, v.into());
        }
    }
    Ok(QuotientMonoidGroup {
        rank,
        z_gens: z_gens.to_vec(),
        result: AbelianGroupPresentation::cokernel(&a),
    })
}

/// Class of a monoid element in M/Z as a vector modulo the Z-lattice; two
/// elements are equal in M/Z iff their difference lies in the lattice.
pub fn same_class(x: &[u64], y: &[u64], z_gens: &[Vec<u64>]) -> bool {
    // x + z = y + z′ for some z, z′ in Z, searched with small coefficients
    let rank = x.len();
    let combos = |bound: u64| -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; rank]];
        for g in z_gens {
            let mut next = Vec::new();
            for v in &out {
                for c in 0..=bound {
                    next.push(v.iter().zip(g).map(|(a, b)| a + c * b).collect());
                }
            }
            out = next;
        }
        out
    };
    let cs = combos(4);
    cs.iter().any(|z| {
        let lhs: Vec<u64> = x.iter().zip(z).map(|(a, b)| a + b).collect();
        cs.iter().any(|z2| lhs.iter().zip(y.iter().zip(z2)).all(|(l, (a, b))| *l == a + b))
    })
}

/// M^{p,q} / Res(M^{p+1,q}): the K-group of a point at Clifford index p − q.
pub fn abs_group(p: usize, q: usize, field: Field) -> Result<AbelianGroupPresentation> {
    Ok(abs_quotient(p, q, field, Extra::Negative)?.result)
}

/// M^{p,q} / Res(M^{p,q+1}); equals `abs_group` at index q − p.
pub fn abs_group_plus(p: usize, q: usize, field: Field) -> Result<AbelianGroupPresentation> {
    Ok(abs_quotient(p, q, field, Extra::Positive)?.result)
}

pub fn abs_quotient(p: usize, q: usize, field: Field, extra: Extra) -> Result<QuotientMonoidGroup> {
    let m = GradedModuleMonoid::new(p, q, field)?;
    let res = restriction_map(p, q, field, extra)?;
    quotient_monoid(m.rank(), &res.images, |x| m.reversal(x))
}

/// The K-group contributed at Clifford index k (taken mod 8 over R, mod 2
/// over C), realized at signature (k, 0).
/// The quotient-monoid computation runs once per field and process.
pub fn abs_at_index(k: i64, field: Field) -> Result<AbelianGroupPresentation> {
    static REAL: OnceLock<std::result::Result<Vec<AbelianGroupPresentation>, String>> = OnceLock::new();
    static COMPLEX: OnceLock<std::result::Result<Vec<AbelianGroupPresentation>, String>> = OnceLock::new();
    let (cell, period) = match field {
        Field::R => (&REAL, 8),
        Field::C => (&COMPLEX, 2),
    };
    let table = cell.get_or_init(|| {
        (0..period).map(|p| abs_group(p, 0, field).map_err(|e| e.to_string())).collect()
    });
    match table {
        Ok(t) => Ok(t[k.rem_euclid(period as i64) as usize].clone()),
        Err(e) => Err(Error::Internal(e.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroupPresentation {
        AbelianGroupPresentation::parse(s).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(classify_clifford(1, 0, Field::R).unwrap().form.to_string(), "C");
        assert_eq!(classify_clifford(0, 1, Field::R).unwrap().form.to_string(), "R+R");
        let names: Vec<String> =
            (0..8).map(|n| classify_clifford(n, 0, Field::R).unwrap().form.to_string()).collect();
        assert_eq!(names, ["R", "C", "H", "H+H", "M2(H)", "M4(C)", "M8(R)", "M8(R)+M8(R)"]);
        let names: Vec<String> =
            (0..8).map(|n| classify_clifford(0, n, Field::R).unwrap().form.to_string()).collect();
        assert_eq!(names, ["R", "R+R", "M2(R)", "M2(C)", "M2(H)", "M2(H)+M2(H)", "M4(H)", "M8(C)"]);
    }

    #[test]
    fn periodicity_of_descriptors() {
        for p in 0..10 {
            for q in 0..10 {
                let a = classify_clifford(p, q, Field::R).unwrap().form;
                let b = classify_clifford(p + 8, q, Field::R).unwrap().form;
                assert_eq!((a.division, a.factors, a.size * 16), (b.division, b.factors, b.size));
                let c = classify_clifford(p + 2, q, Field::C).unwrap().form;
                let d = classify_clifford(p, q, Field::C).unwrap().form;
                assert_eq!((c.factors, c.size), (d.factors, d.size * 2));
            }
        }
    }

    #[test]
    fn irreducible_shapes() {
        let r0 = irreducible_graded_modules(0, 0, Field::R).unwrap();
        assert_eq!(r0, vec![ModuleShape { even: 1, odd: 0 }, ModuleShape { even: 0, odd: 1 }]);
        assert_eq!(irreducible_graded_modules(1, 0, Field::R).unwrap(), vec![ModuleShape { even: 1, odd: 1 }]);
        let c0 = irreducible_graded_modules(0, 0, Field::C).unwrap();
        assert_eq!(c0.len(), 2);
        let dims: Vec<usize> =
            (0..=8).map(|p| irreducible_graded_modules(p, 0, Field::R).unwrap()[0].dim()).collect();
        assert_eq!(dims, vec![1, 2, 4, 8, 8, 16, 16, 16, 16]);
    }

    #[test]
    fn restrictions() {
        assert_eq!(restriction_map(0, 0, Field::R, Extra::Negative).unwrap().images, vec![vec![1, 1]]);
        let c = abs_quotient(1, 0, Field::C, Extra::Negative).unwrap();
        assert!(c.result.is_trivial());
    }

    #[test]
    fn grothendieck_and_trivial_quotients() {
        let swap = |x: &[u64]| vec![x[1], x[0]];
        let q = quotient_monoid(2, &[vec![1, 1]], swap).unwrap();
        assert_eq!(q.result, g("Z"));
        let all = quotient_monoid(2, &[vec![1, 0], vec![0, 1]], swap).unwrap();
        assert!(all.result.is_trivial());
        // hypothesis (ii) fails for Z = 0
        assert!(quotient_monoid(2, &[], swap).is_err());
    }

    #[test]
    fn abs_at_one_is_z2() {
        assert_eq!(abs_group(1, 0, Field::R).unwrap(), g("Z/2"));
    }

    #[test]
    fn period_and_shift() {
        for p in 0..=9 {
            for q in 0..=9 {
                let k = (p as i64 - q as i64).rem_euclid(8) as usize;
                assert_eq!(abs_group(p, q, Field::R).unwrap(), abs_group(k, 0, Field::R).unwrap());
                let kc = (p + q) % 2;
                assert_eq!(abs_group(p, q, Field::C).unwrap(), abs_group(kc, 0, Field::C).unwrap());
                let kp = (q as i64 - p as i64).rem_euclid(8);
                assert_eq!(abs_group_plus(p, q, Field::R).unwrap(), abs_at_index(kp, Field::R).unwrap());
            }
        }
    }

    #[test]
    fn reversal_is_inverse() {
        for p in 0..8 {
            let m = GradedModuleMonoid::new(p, 0, Field::R).unwrap();
            let res = restriction_map(p, 0, Field::R, Extra::Negative).unwrap();
            for i in 0..m.rank() {
                let mut e = vec![0; m.rank()];
                e[i] = 1;
                let sum: Vec<u64> = m.reversal(&e).iter().zip(&e).map(|(a, b)| a + b).collect();
                assert!(same_class(&sum, &vec![0; m.rank()], &res.images));
            }
        }
    }

    /// Exhaustive search for an odd matrix squaring to −1 in small graded
    /// real dimensions.
    #[test]
    fn brute_force_minimal_cl10_module() {
        let found = |e: usize, o: usize| -> bool {
            let n = e + o;
            let odd_slots: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| (i < e) != (j < e))
                .collect();
            let total = 3usize.pow(odd_slots.len() as u32);
            (0..total).any(|mut code| {
                let mut m = vec![vec![0i64; n]; n];
                for &(i, j) in &odd_slots {
                    m[i][j] = (code % 3) as i64 - 1;
                    code /= 3;
                }
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let s: i64 = (0..n).map(|k| m[i][k] * m[k][j]).sum();
                        s == if i == j { -1 } else { 0 }
                    })
                })
            })
        };
        assert!(!found(1, 0) && !found(0, 1));
        assert!(found(1, 1));
    }
}
