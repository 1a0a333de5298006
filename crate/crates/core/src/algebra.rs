//! Signatures, basis-blade indexing and the sign/metric rules of the
//! geometric product on basis blades.
//!
//! Blades are indexed two ways: by *bits* (bit i set means generator
//! e_{i+1} is a factor) and by *position*, the rank in graded-lexicographic
//! order (grade ascending, then lexicographic by ascending index tuple).
//! Position 0 is always the scalar e0; for [3,0,0] the order is
//! e0,e1,e2,e3,e12,e13,e23,e123.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{GaError, Result};

/// Metric descriptor (p, q, r): counts of generators squaring to +1, -1, 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl Signature {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        let n = p + q + r;
        if n < 1 {
            return Err(GaError::InvalidSignature("p+q+r must be at least 1".into()));
        }
        if n > MAX_GENERATORS {
            return Err(GaError::InvalidSignature(format!(
                "p+q+r = {} exceeds the supported maximum of {}",
                n, MAX_GENERATORS
            )));
        }
        Ok(Signature { p, q, r })
    }

    /// Number of generators.
    pub fn n(&self) -> u32 {
        self.p + self.q + self.r
    }

    /// Dimension of the algebra, 2^(p+q+r).
    pub fn dim(&self) -> usize {
        1usize << self.n()
    }

    /// Square of generator `i` (0-based): +1, -1 or 0.
    pub fn metric(&self, i: u32) -> i8 {
        debug_assert!(i < self.n());
        if i < self.p {
            1
        } else if i < self.p + self.q {
            -1
        } else {
            0
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.r > 0
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.p, self.q, self.r)
    }
}

/// Dense storage keeps things practical up to roughly 2^14 coefficients.
pub const MAX_GENERATORS: u32 = 14;
/// Dense blade-product tables are memoized only up to this many generators
/// (4^n entries); larger algebras compute signs on the fly.
const TABLE_MAX_GENERATORS: u32 = 8;

/// Product of two basis blades: the resulting blade position and a
/// coefficient in {-1, 0, +1} (zero when a shared generator is null).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BladeProduct {
    pub position: u32,
    pub coefficient: i8,
}

struct ProductTable {
    position: Vec<u32>,
    sign: Vec<i8>,
}

/// One algebra: the signature plus the bits/position conversion tables.
/// Obtain shared instances through [`Algebra::get`]; construction is
/// memoized per signature.
pub struct Algebra {
    sig: Signature,
    bits_of_pos: Vec<u32>,
    pos_of_bits: Vec<u32>,
    grade_of_pos: Vec<u32>,
    table: OnceLock<ProductTable>,
}

/// Sign from reordering the concatenation of two ascending index tuples
/// back into ascending order (metric-free part of the blade product).
fn reorder_sign(a: u32, b: u32) -> i8 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Graded-lexicographic comparison of blade bitsets.
fn graded_lex_cmp(a: u32, b: u32) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {}
        other => return other,
    }
    let (mut a, mut b) = (a, b);
    while a != 0 && b != 0 {
        let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
        match ia.cmp(&ib) {
            Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
    Ordering::Equal
}

static REGISTRY: OnceLock<Mutex<HashMap<Signature, Arc<Algebra>>>> = OnceLock::new();

impl Algebra {
    /// Shared, memoized instance for a signature.
    pub fn get(sig: Signature) -> Arc<Algebra> {
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = registry.lock().expect("algebra registry poisoned");
        map.entry(sig).or_insert_with(|| Arc::new(Algebra::build(sig))).clone()
    }

    /// Unmemoized construction (used by the registry and by timing code).
    pub fn build(sig: Signature) -> Algebra {
        let dim = sig.dim();
        let mut order: Vec<u32> = (0..dim as u32).collect();
        order.sort_by(|&a, &b| graded_lex_cmp(a, b));
        let mut pos_of_bits = vec![0u32; dim];
        for (pos, &bits) in order.iter().enumerate() {
            pos_of_bits[bits as usize] = pos as u32;
        }
        let grade_of_pos = order.iter().map(|b| b.count_ones()).collect();
        Algebra { sig, bits_of_pos: order, pos_of_bits, grade_of_pos, table: OnceLock::new() }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    pub fn n(&self) -> u32 {
        self.sig.n()
    }

    pub fn bits_of(&self, position: u32) -> Result<u32> {
        self.bits_of_pos
            .get(position as usize)
            .copied()
            .ok_or(GaError::IndexOutOfRange(position as usize))
    }

    pub fn position_of(&self, bits: u32) -> Result<u32> {
        self.pos_of_bits
            .get(bits as usize)
            .copied()
            .ok_or(GaError::IndexOutOfRange(bits as usize))
    }

    /// Grade (popcount of the bitset) of the blade at `position`.
    pub fn grade_of(&self, position: u32) -> u32 {
        self.grade_of_pos[position as usize]
    }

    /// Position of the pseudoscalar e_{1..n}.
    pub fn pseudoscalar_position(&self) -> u32 {
        (self.dim() - 1) as u32
    }

    fn product_by_bits(&self, a_bits: u32, b_bits: u32) -> (u32, i8) {
        let mut sign = reorder_sign(a_bits, b_bits);
        let mut shared = a_bits & b_bits;
        while shared != 0 {
            let i = shared.trailing_zeros();
            sign *= self.sig.metric(i);
            if sign == 0 {
                break;
            }
            shared &= shared - 1;
        }
        (a_bits ^ b_bits, sign)
    }

    /// Geometric product of two basis blades, by position.
    pub fn blade_product(&self, a: u32, b: u32) -> BladeProduct {
        if self.n() <= TABLE_MAX_GENERATORS {
            let table = self.table.get_or_init(|| self.build_table());
            let idx = a as usize * self.dim() + b as usize;
            return BladeProduct { position: table.position[idx], coefficient: table.sign[idx] };
        }
        let a_bits = self.bits_of_pos[a as usize];
        let b_bits = self.bits_of_pos[b as usize];
        let (bits, sign) = self.product_by_bits(a_bits, b_bits);
        BladeProduct { position: self.pos_of_bits[bits as usize], coefficient: sign }
    }

    fn build_table(&self) -> ProductTable {
        let dim = self.dim();
        let mut position = vec![0u32; dim * dim];
        let mut sign = vec![0i8; dim * dim];
        for a in 0..dim {
            let a_bits = self.bits_of_pos[a];
            for b in 0..dim {
                let (bits, s) = self.product_by_bits(a_bits, self.bits_of_pos[b]);
                position[a * dim + b] = self.pos_of_bits[bits as usize];
                sign[a * dim + b] = s;
            }
        }
        ProductTable { position, sign }
    }

    /// Force construction of the memoized product table (timing studies).
    pub fn warm_up(&self) {
        if self.n() <= TABLE_MAX_GENERATORS {
            let _ = self.table.get_or_init(|| self.build_table());
        }
    }

    /// Name of the blade at `position`: "e0", "e1", ..., "e12...".
    pub fn basis_name(&self, position: u32) -> String {
        let bits = self.bits_of_pos[position as usize];
        if bits == 0 {
            return "e0".to_string();
        }
        let mut name = String::from("e");
        let mut rest = bits;
        while rest != 0 {
            let i = rest.trailing_zeros();
            name.push_str(&(i + 1).to_string());
            rest &= rest - 1;
        }
        name
    }

    /// Name of the blade at `position` under the conformal display
    /// convention: the first generator renders as "n0", the last as "ni"
    /// and the ones between as Euclidean "e1..", e.g. "n0e1ni".
    pub fn conformal_basis_name(&self, position: u32) -> String {
        let bits = self.bits_of_pos[position as usize];
        if bits == 0 {
            return "e0".to_string();
        }
        let n = self.n();
        let mut name = String::new();
        let mut euclid_started = false;
        let mut rest = bits;
        while rest != 0 {
            let i = rest.trailing_zeros();
            if i == 0 {
                name.push_str("n0");
            } else if i == n - 1 {
                name.push_str("ni");
            } else {
                if !euclid_started {
                    name.push('e');
                    euclid_started = true;
                }
                name.push_str(&i.to_string());
            }
            rest &= rest - 1;
        }
        name
    }

    /// Parse a plain basis name back to a position: "e0", "e2", "e13".
    /// Indices must be strictly ascending single digits.
    pub fn position_of_name(&self, name: &str) -> Result<u32> {
        let digits = name
            .strip_prefix('e')
            .ok_or_else(|| GaError::UnknownBasis(name.into()))?;
        if digits == "0" {
            return Ok(0);
        }
        let mut bits = 0u32;
        let mut last = 0u32;
        for ch in digits.chars() {
            let d = ch.to_digit(10).ok_or_else(|| GaError::UnknownBasis(name.into()))?;
            if d == 0 || d <= last || d > self.n() {
                return Err(GaError::UnknownBasis(name.into()));
            }
            bits |= 1 << (d - 1);
            last = d;
        }
        Ok(self.pos_of_bits[bits as usize])
    }
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({})", self.sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32, q: u32, r: u32) -> Arc<Algebra> {
        Algebra::get(Signature::new(p, q, r).unwrap())
    }

    #[test]
    fn graded_lex_order_matches_listing() {
        let a = alg(3, 0, 0);
        let names: Vec<String> = (0..8).map(|i| a.basis_name(i)).collect();
        assert_eq!(names, ["e0", "e1", "e2", "e3", "e12", "e13", "e23", "e123"]);
        assert_eq!(a.basis_name(3), "e3");
        assert_eq!(a.basis_name(5), "e13");
        let b = alg(2, 0, 0);
        assert_eq!(b.basis_name(3), "e12");
    }

    #[test]
    fn bits_position_bijection() {
        for &(p, q, r) in &[(3u32, 0u32, 0u32), (4, 1, 0), (2, 0, 1), (5, 2, 1)] {
            let a = alg(p, q, r);
            for pos in 0..a.dim() as u32 {
                assert_eq!(a.position_of(a.bits_of(pos).unwrap()).unwrap(), pos);
            }
        }
    }

    #[test]
    fn blade_product_examples() {
        let g2 = alg(2, 0, 0);
        let e1 = g2.position_of_name("e1").unwrap();
        let e2 = g2.position_of_name("e2").unwrap();
        let e12 = g2.position_of_name("e12").unwrap();
        assert_eq!(g2.blade_product(e1, e1), BladeProduct { position: 0, coefficient: 1 });
        assert_eq!(g2.blade_product(e1, e2), BladeProduct { position: e12, coefficient: 1 });
        assert_eq!(g2.blade_product(e2, e1), BladeProduct { position: e12, coefficient: -1 });

        let pga = alg(2, 0, 1);
        let e3 = pga.position_of_name("e3").unwrap();
        assert_eq!(pga.blade_product(e3, e3), BladeProduct { position: 0, coefficient: 0 });
    }

    #[test]
    fn antisymmetry_of_distinct_generators() {
        let a = alg(4, 2, 1);
        for i in 1..=a.n() {
            for j in 1..=a.n() {
                if i == j {
                    continue;
                }
                let pi = a.position_of(1 << (i - 1)).unwrap();
                let pj = a.position_of(1 << (j - 1)).unwrap();
                let ij = a.blade_product(pi, pj);
                let ji = a.blade_product(pj, pi);
                assert_eq!(ij.position, ji.position);
                assert_eq!(ij.coefficient, -ji.coefficient);
            }
        }
    }

    #[test]
    fn blade_associativity_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for &(p, q, r) in &[(8u32, 0u32, 0u32), (5, 2, 1), (4, 4, 0)] {
            let a = alg(p, q, r);
            let dim = a.dim() as u32;
            for _ in 0..500 {
                let (x, y, z) =
                    (rng.random_range(0..dim), rng.random_range(0..dim), rng.random_range(0..dim));
                let xy = a.blade_product(x, y);
                let left = a.blade_product(xy.position, z);
                let yz = a.blade_product(y, z);
                let right = a.blade_product(x, yz.position);
                assert_eq!(left.position, right.position);
                assert_eq!(left.coefficient * xy.coefficient, right.coefficient * yz.coefficient);
            }
        }
    }

    #[test]
    fn result_grade_is_xor_grade() {
        let a = alg(3, 1, 0);
        for x in 0..a.dim() as u32 {
            for y in 0..a.dim() as u32 {
                let p = a.blade_product(x, y);
                let bits = a.bits_of(x).unwrap() ^ a.bits_of(y).unwrap();
                assert_eq!(a.grade_of(p.position), bits.count_ones());
            }
        }
    }

    #[test]
    fn grade_counts() {
        let a = alg(4, 0, 0);
        let mut counts = [0usize; 5];
        for pos in 0..a.dim() as u32 {
            counts[a.grade_of(pos) as usize] += 1;
        }
        assert_eq!(counts, [1, 4, 6, 4, 1]);
    }

    #[test]
    fn conformal_names() {
        // conformal model of R^2 lives in [3,1,0]
        let a = alg(3, 1, 0);
        let grade1: Vec<String> = (1..=4).map(|i| a.conformal_basis_name(i)).collect();
        assert_eq!(grade1, ["n0", "e1", "e2", "ni"]);
        let all: Vec<String> = (0..16).map(|i| a.conformal_basis_name(i)).collect();
        assert_eq!(
            all,
            [
                "e0", "n0", "e1", "e2", "ni", "n0e1", "n0e2", "n0ni", "e12", "e1ni", "e2ni",
                "n0e12", "n0e1ni", "n0e2ni", "e12ni", "n0e12ni"
            ]
        );
    }

    #[test]
    fn name_parsing() {
        let a = alg(3, 0, 0);
        assert_eq!(a.position_of_name("e0").unwrap(), 0);
        assert_eq!(a.position_of_name("e13").unwrap(), 5);
        assert!(a.position_of_name("e31").is_err());
        assert!(a.position_of_name("e4").is_err());
    }
}
