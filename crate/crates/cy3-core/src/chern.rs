//! Chern-class bookkeeping for divisors on Calabi-Yau threefolds.
//!
//! The two numbers that matter for a divisor class `D` are its cube
//! `d3 = D^3` and its pairing `dc2 = D.c2` with the second Chern class.
//! Riemann-Roch on a Calabi-Yau threefold gives
//!
//! ```text
//! chi(O(nD)) = (d3/6) n^3 + (dc2/12) n
//! ```
//!
//! which is the Hilbert polynomial of `(X, D)` when `D` is ample. For a
//! smooth surface `S` in `X` with canonical self-intersection `K^2` and
//! topological Euler number `e`, adjunction gives the pair directly:
//! `S^3 = K^2` and `S.c2 = e - K^2`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, mod_floor, Int, MultiPoly, Rational};

/// Invariants of a smooth surface: canonical self-intersection and
/// topological Euler number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub name: String,
    pub k_squared: Int,
    pub euler: Int,
}

impl SurfaceInvariants {
    pub fn new(name: &str, k_squared: i64, euler: i64) -> Self {
        Self {
            name: name.to_string(),
            k_squared: int(k_squared),
            euler: int(euler),
        }
    }
}

/// The pair `(D^3, D.c2)` attached to a divisor class.
///
/// Both components are polynomials so that parametric classes (ample
/// families with free parameters) carry their pairs symbolically; a
/// numeric pair is the constant special case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPair {
    pub d3: MultiPoly,
    pub dc2: MultiPoly,
}

impl ChernPair {
    pub fn new(d3: MultiPoly, dc2: MultiPoly) -> Self {
        Self { d3, dc2 }
    }

    /// A numeric (parameter-free) pair.
    pub fn numeric(d3: Int, dc2: Int) -> Self {
        Self {
            d3: MultiPoly::from(d3),
            dc2: MultiPoly::from(dc2),
        }
    }

    pub fn from_i64(d3: i64, dc2: i64) -> Self {
        Self::numeric(int(d3), int(dc2))
    }

    /// Extracts `(d3, dc2)` as integers, or reports which component still
    /// has free parameters.
    pub fn as_numeric(&self) -> Result<(Int, Int)> {
        let d3 = self.d3.as_constant().ok_or_else(|| Error::NonConstant {
            context: "d3 component".to_string(),
            value: self.d3.to_string(),
        })?;
        let dc2 = self.dc2.as_constant().ok_or_else(|| Error::NonConstant {
            context: "d.c2 component".to_string(),
            value: self.dc2.to_string(),
        })?;
        Ok((d3, dc2))
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d3, self.dc2)
    }
}

/// The pair of a smooth divisor surface: `(K^2, e - K^2)`.
pub fn chern_pair_of_surface(s: &SurfaceInvariants) -> ChernPair {
    ChernPair::numeric(s.k_squared.clone(), &s.euler - &s.k_squared)
}

/// The Hilbert polynomial `P(n) = (d3/6) n^3 + (dc2/12) n` of a numeric
/// pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub d3: Int,
    pub dc2: Int,
}

/// Builds the Hilbert polynomial of a numeric pair; symbolic pairs are
/// rejected.
pub fn hilbert_polynomial(pair: &ChernPair) -> Result<HilbertPolynomial> {
    let (d3, dc2) = pair.as_numeric()?;
    Ok(HilbertPolynomial { d3, dc2 })
}

impl HilbertPolynomial {
    /// Coefficient of `n^3`, as an exact rational.
    pub fn n3_coefficient(&self) -> Rational {
        Rational::new(self.d3.clone(), int(6))
    }

    /// Coefficient of `n`, as an exact rational.
    pub fn n_coefficient(&self) -> Rational {
        Rational::new(self.dc2.clone(), int(12))
    }

    /// Exact value `P(n)`.
    pub fn eval(&self, n: &Int) -> Rational {
        let numerator = int(2) * &self.d3 * n.pow(3) + &self.dc2 * n;
        Rational::new(numerator, int(12))
    }

    /// `P(n)` when it is an integer.
    pub fn eval_int(&self, n: &Int) -> Option<Int> {
        let v = self.eval(n);
        v.is_integer().then(|| v.to_integer())
    }

    /// True when `P(n)` is an integer for every integer `n`.
    ///
    /// `P` has degree 3, so integrality at the four points `n = 0, 1, 2,
    /// 3` decides it (finite differences); `P(0) = 0` always, leaving
    /// three checks. Equivalently, `2*d3 + dc2 = 0 (mod 12)`.
    pub fn is_integer_valued(&self) -> bool {
        (1..=3).all(|n| {
            let numerator = int(2) * &self.d3 * int(n).pow(3) + &self.dc2 * int(n);
            numerator.mod_floor(&int(12)).is_zero()
        })
    }
}

impl fmt::Display for HilbertPolynomial {
    /// Common-denominator form, e.g. `(351*n^3 + 27*n)/2` for the pair
    /// `(1053, 162)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c3 = self.n3_coefficient();
        let c1 = self.n_coefficient();
        let den = c3.denom().lcm(c1.denom());
        let a = (c3 * Rational::from_integer(den.clone())).to_integer();
        let b = (c1 * Rational::from_integer(den.clone())).to_integer();
        let n = MultiPoly::var("n");
        let numerator = &n.pow(3).scale(&a) + &n.scale(&b);
        if den.is_one() {
            write!(f, "{numerator}")
        } else {
            write!(f, "({numerator})/{den}")
        }
    }
}

/// Scales the pair of `D` to the pair of `k*D`: `(k^3 * d3, k * dc2)`.
/// Only positive multiples are meaningful for ample classes.
pub fn scale_divisor(pair: &ChernPair, k: &Int) -> Result<ChernPair> {
    if !k.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "divisor scale must be positive, got {k}"
        )));
    }
    Ok(ChernPair {
        d3: pair.d3.scale(&k.pow(3)),
        dc2: pair.dc2.scale(k),
    })
}

/// Two polarized threefolds lie in the same Hilbert scheme exactly when
/// their `(d3, dc2)` pairs agree (equal Hilbert polynomials).
pub fn same_hilbert_scheme(p1: &ChernPair, p2: &ChernPair) -> bool {
    p1 == p2
}

/// Outcome of [`rr_cubic_divisibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RrVerdict {
    /// `6 | dc2`, so the integrality of `chi` forces `3 | d3`; the trace
    /// records each step of the implication with its computed residue.
    Applicable { holds: bool, trace: RrTrace },
    /// `dc2` is not divisible by 6, so the implication says nothing.
    NotApplicable { dc2_mod_6: Int },
}

/// Residues realizing the chain
/// `chi(1) integral => 2*d3 + dc2 = 0 (mod 12) => d3 = -dc2/2 (mod 6) => 3 | d3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrTrace {
    /// `2*d3 + dc2`, the numerator of `12 * chi(1)`.
    pub chi1_numerator: Int,
    /// `2*d3 + dc2 mod 12` (zero by the integrality precondition).
    pub chi1_numerator_mod_12: Int,
    /// `-dc2/2 mod 6`, the forced residue of `d3`.
    pub forced_d3_mod_6: Int,
    /// `d3 mod 6`, which must match the forced residue.
    pub d3_mod_6: Int,
    /// `d3 mod 3`, zero when the implication holds.
    pub d3_mod_3: Int,
}

impl fmt::Display for RrTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2*d3 + d.c2 = {} = {} (mod 12); d3 = {} (mod 6), forced {}; d3 = {} (mod 3)",
            self.chi1_numerator,
            self.chi1_numerator_mod_12,
            self.d3_mod_6,
            self.forced_d3_mod_6,
            self.d3_mod_3
        )
    }
}

/// Checks the Riemann-Roch divisibility implication on a numeric,
/// integer-valued pair: if `6 | dc2` then `3 | d3`.
///
/// The chain is elementary: integrality of `chi(O(D))` at `n = 1` gives
/// `2*d3 + dc2 = 0 (mod 12)`; halving, `d3 = -dc2/2 (mod 6)`; and when
/// `dc2 = 0 (mod 6)` the right side is `0 (mod 3)`.
pub fn rr_cubic_divisibility(pair: &ChernPair) -> Result<RrVerdict> {
    let (d3, dc2) = pair.as_numeric()?;
    let hp = HilbertPolynomial {
        d3: d3.clone(),
        dc2: dc2.clone(),
    };
    if !hp.is_integer_valued() {
        return Err(Error::NotIntegerValued { d3, dc2 });
    }
    let six = int(6);
    let dc2_mod_6 = mod_floor(&dc2, &six);
    if !dc2_mod_6.is_zero() {
        return Ok(RrVerdict::NotApplicable { dc2_mod_6 });
    }
    let chi1_numerator = int(2) * &d3 + &dc2;
    let half_dc2 = &dc2 / int(2); // exact: 6 | dc2
    let trace = RrTrace {
        chi1_numerator_mod_12: mod_floor(&chi1_numerator, &int(12)),
        chi1_numerator,
        forced_d3_mod_6: mod_floor(&-half_dc2, &six),
        d3_mod_6: mod_floor(&d3, &six),
        d3_mod_3: mod_floor(&d3, &int(3)),
    };
    let holds = trace.d3_mod_3.is_zero();
    Ok(RrVerdict::Applicable { holds, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn surface_rule_on_the_catalog() {
        let cases = [
            ("projective plane", 9, 3, 9, -6),
            ("Hirzebruch F1", 8, 4, 8, -4),
            ("abelian surface", 0, 0, 0, 0),
            ("relatively minimal rational elliptic", 0, 12, 0, 12),
            ("rational elliptic, three points blown up", -3, 15, -3, 18),
        ];
        for (name, k2, e, d3, dc2) in cases {
            let s = SurfaceInvariants::new(name, k2, e);
            assert_eq!(
                chern_pair_of_surface(&s),
                ChernPair::from_i64(d3, dc2),
                "{name}"
            );
        }
    }

    #[test]
    fn hilbert_polynomial_display_and_values() {
        let hp = hilbert_polynomial(&ChernPair::from_i64(1053, 162)).unwrap();
        assert_eq!(hp.to_string(), "(351*n^3 + 27*n)/2");
        assert_eq!(hp.eval_int(&int(1)).unwrap(), int(189));
        assert_eq!(hp.eval_int(&int(2)).unwrap(), int(1431));
        assert!(hp.is_integer_valued());

        let hp = hilbert_polynomial(&ChernPair::from_i64(5, 50)).unwrap();
        assert_eq!(hp.to_string(), "(5*n^3 + 25*n)/6");
        assert_eq!(hp.eval_int(&int(1)).unwrap(), int(5));
        assert!(hp.is_integer_valued());

        let hp = hilbert_polynomial(&ChernPair::from_i64(0, 0)).unwrap();
        assert_eq!(hp.to_string(), "0");
        assert_eq!(hp.eval(&int(7)), Rational::from_integer(int(0)));
    }

    #[test]
    fn hilbert_polynomial_rejects_symbolic_pairs() {
        let pair = ChernPair::new(MultiPoly::parse("54*x*y*z - 243").unwrap(), 162.into());
        assert!(hilbert_polynomial(&pair).is_err());
    }

    #[test]
    fn hilbert_polynomial_is_odd_and_vanishes_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5150);
        for _ in 0..200 {
            let hp = HilbertPolynomial {
                d3: int(rng.gen_range(-500..=500)),
                dc2: int(rng.gen_range(-500..=500)),
            };
            assert_eq!(hp.eval(&int(0)), Rational::from_integer(int(0)));
            for n in [1i64, 2, 5, 13] {
                assert_eq!(hp.eval(&int(-n)), -hp.eval(&int(n)));
            }
        }
    }

    #[test]
    fn integer_valuedness_examples() {
        let by_pair = |d3: i64, dc2: i64| {
            hilbert_polynomial(&ChernPair::from_i64(d3, dc2))
                .unwrap()
                .is_integer_valued()
        };
        assert!(!by_pair(1, 0)); // n^3/6 is not integral at n = 1
        assert!(by_pair(6, 0)); // n^3
        assert!(by_pair(1053, 162));
        assert!(by_pair(9, -6));
        assert!(by_pair(-3, 18));
        assert!(by_pair(8, -4));
        assert!(!by_pair(0, 1));
    }

    #[test]
    fn integer_valuedness_equals_mod_12_criterion() {
        // The three-point check is equivalent to 2*d3 + dc2 = 0 (mod 12).
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..2000 {
            let hp = HilbertPolynomial {
                d3: int(rng.gen_range(-1000..=1000)),
                dc2: int(rng.gen_range(-1000..=1000)),
            };
            let lhs = hp.is_integer_valued();
            let rhs = mod_floor(&(int(2) * &hp.d3 + &hp.dc2), &int(12)).is_zero();
            assert_eq!(lhs, rhs, "d3={} dc2={}", hp.d3, hp.dc2);
        }
    }

    #[test]
    fn scaling_acts_by_cube_and_first_power() {
        let pair = ChernPair::from_i64(9, -6);
        assert_eq!(
            scale_divisor(&pair, &int(10)).unwrap(),
            ChernPair::from_i64(9000, -60)
        );
        assert_eq!(scale_divisor(&pair, &int(1)).unwrap(), pair);
        assert!(scale_divisor(&pair, &int(0)).is_err());
        assert!(scale_divisor(&pair, &int(-2)).is_err());
    }

    #[test]
    fn scaled_hilbert_polynomial_is_reparametrization() {
        // P_{kD}(n) = P_D(k*n).
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let pair = ChernPair::numeric(
                int(rng.gen_range(-50..=50)),
                int(rng.gen_range(-50..=50)),
            );
            let k = int(rng.gen_range(1..=9));
            let hp = hilbert_polynomial(&pair).unwrap();
            let hp_scaled = hilbert_polynomial(&scale_divisor(&pair, &k).unwrap()).unwrap();
            for n in [1i64, 2, 3, 7] {
                assert_eq!(hp_scaled.eval(&int(n)), hp.eval(&(&k * int(n))));
            }
        }
    }

    #[test]
    fn cubes_9k3_and_5l3_never_match() {
        // 3 divides 9k^3 to an exponent = 2 (mod 3) only when paired with
        // the factor 5, so the two scaled families stay disjoint; checked
        // directly over the box.
        for k in 1..=100i64 {
            for l in 1..=100i64 {
                assert_ne!(9 * k * k * k, 5 * l * l * l);
            }
        }
    }

    #[test]
    fn same_hilbert_scheme_is_pair_equality() {
        let a = ChernPair::from_i64(1053, 162);
        let b = ChernPair::from_i64(1053, 162);
        let c = ChernPair::from_i64(1053, 150);
        assert!(same_hilbert_scheme(&a, &b));
        assert!(!same_hilbert_scheme(&a, &c));
    }

    #[test]
    fn rr_divisibility_examples() {
        match rr_cubic_divisibility(&ChernPair::from_i64(9, -6)).unwrap() {
            RrVerdict::Applicable { holds, trace } => {
                assert!(holds);
                assert_eq!(trace.chi1_numerator, int(12));
                assert_eq!(trace.forced_d3_mod_6, int(3));
                assert_eq!(trace.d3_mod_6, int(3));
                assert_eq!(trace.d3_mod_3, int(0));
            }
            v => panic!("expected applicable verdict, got {v:?}"),
        }
        match rr_cubic_divisibility(&ChernPair::from_i64(-3, 18)).unwrap() {
            RrVerdict::Applicable { holds, .. } => assert!(holds),
            v => panic!("expected applicable verdict, got {v:?}"),
        }
        match rr_cubic_divisibility(&ChernPair::from_i64(8, -4)).unwrap() {
            RrVerdict::NotApplicable { dc2_mod_6 } => assert_eq!(dc2_mod_6, int(2)),
            v => panic!("expected not-applicable verdict, got {v:?}"),
        }
    }

    #[test]
    fn rr_divisibility_requires_integer_valued_pairs() {
        let err = rr_cubic_divisibility(&ChernPair::from_i64(1, 6)).unwrap_err();
        assert_eq!(
            err,
            Error::NotIntegerValued {
                d3: int(1),
                dc2: int(6)
            }
        );
    }

    #[test]
    fn rr_divisibility_holds_on_10000_random_integer_valued_pairs() {
        // Sample pairs satisfying 2*d3 + dc2 = 0 (mod 12) uniformly, keep
        // those with 6 | dc2, and confirm 3 | d3 on every one.
        let mut rng = ChaCha8Rng::seed_from_u64(112358);
        let mut applicable = 0usize;
        let mut seen = 0usize;
        while seen < 10_000 {
            let d3 = int(rng.gen_range(-100_000i64..=100_000));
            let t = int(rng.gen_range(-20_000i64..=20_000));
            let dc2 = int(12) * t - int(2) * &d3;
            seen += 1;
            let pair = ChernPair::numeric(d3.clone(), dc2.clone());
            match rr_cubic_divisibility(&pair).unwrap() {
                RrVerdict::Applicable { holds, trace } => {
                    applicable += 1;
                    assert!(holds, "implication failed at d3={d3}, dc2={dc2}");
                    assert!(trace.chi1_numerator_mod_12.is_zero());
                    assert_eq!(trace.d3_mod_6, trace.forced_d3_mod_6);
                }
                RrVerdict::NotApplicable { dc2_mod_6 } => {
                    assert!(!dc2_mod_6.is_zero());
                }
            }
        }
        assert!(applicable > 1000, "sample should hit the applicable case");
    }
}
