//! Named identity checks grouped into suites, shared by the command line and
//! the acceptance tests.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::classes::{realize_euler_series, HalfInt};
use crate::dtgen::{
    feit_fine_c, feit_fine_double_product, macmahon_guess, refined_macmahon, twisted_quotient_check,
    z_c3_product, z_c3_recursion,
};
use crate::error::{Error, Result};
use crate::partitions::{count_dpartitions_upto, refined_sum, size_ceiling};
use crate::plethysm::{exp_pleth, exp_via_adams, log_pleth, pow_class, ExpArgument};
use crate::ring::{expand_at_infinity, Coeff};
use crate::series::TruncSeries;
use crate::{MotSeries, MotWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Flagship,
    Plethysm,
    FeitFine,
    Refined,
    Guess,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "flagship" => Suite::Flagship,
            "plethysm" => Suite::Plethysm,
            "feitfine" => Suite::FeitFine,
            "refined" => Suite::Refined,
            "guess" => Suite::Guess,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Flagship => "flagship",
            Suite::Plethysm => "plethysm",
            Suite::FeitFine => "feitfine",
            Suite::Refined => "refined",
            Suite::Guess => "guess",
        }
    }
}

/// Outcome of one identity at one truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub order: usize,
    pub passed: bool,
    pub first_failure_degree: Option<usize>,
    pub lhs_sample: Option<String>,
    pub rhs_sample: Option<String>,
    pub note: Option<String>,
}

impl IdentityCheck {
    pub fn pass(name: impl Into<String>, order: usize) -> Self {
        IdentityCheck {
            name: name.into(),
            order,
            passed: true,
            first_failure_degree: None,
            lhs_sample: None,
            rhs_sample: None,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, order: usize, degree: Option<usize>, lhs: String, rhs: String) -> Self {
        IdentityCheck {
            passed: false,
            first_failure_degree: degree,
            lhs_sample: Some(lhs),
            rhs_sample: Some(rhs),
            ..IdentityCheck::pass(name, order)
        }
    }

    /// Coefficientwise comparison of two series.
    pub fn compare<C: Coeff>(name: &str, lhs: &TruncSeries<C>, rhs: &TruncSeries<C>) -> Self {
        let order = lhs.order().min(rhs.order());
        match lhs.first_mismatch(rhs) {
            None => IdentityCheck::pass(name, order),
            Some(n) => IdentityCheck::fail(
                name,
                order,
                Some(n),
                format!("{:?}", lhs.coeff(n)),
                format!("{:?}", rhs.coeff(n)),
            ),
        }
    }

    fn from_result(name: &str, order: usize, r: Result<IdentityCheck>) -> Self {
        r.unwrap_or_else(|e| IdentityCheck {
            note: Some(e.to_string()),
            ..IdentityCheck::fail(name, order, None, String::new(), String::new())
        })
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "order": self.order,
            "status": self.status(),
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(d) = self.first_failure_degree {
            obj.insert("first_failure_degree".into(), json!(d));
        }
        if let Some(s) = &self.lhs_sample {
            obj.insert("lhs".into(), json!(s));
        }
        if let Some(s) = &self.rhs_sample {
            obj.insert("rhs".into(), json!(s));
        }
        if let Some(s) = &self.note {
            obj.insert("note".into(), json!(s));
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub identities: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "all_pass": self.all_pass(),
            "identities": self.identities.iter().map(IdentityCheck::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs a suite at truncation order `order`. Enumeration-backed identities
/// are capped at the enumeration ceilings.
pub fn run_suite(suite: Suite, order: usize) -> VerifyReport {
    let identities = match suite {
        Suite::All => [Suite::Flagship, Suite::Plethysm, Suite::FeitFine, Suite::Refined, Suite::Guess]
            .into_iter()
            .flat_map(|s| run_suite(s, order).identities)
            .collect(),
        Suite::Flagship => flagship(order),
        Suite::Plethysm => plethysm_suite(order.min(10), 200, 0x5eed),
        Suite::FeitFine => feit_fine(order),
        Suite::Refined => refined(order.min(size_ceiling(3))),
        Suite::Guess => guess(order),
    };
    VerifyReport { suite, identities }
}

pub fn flagship(order: usize) -> Vec<IdentityCheck> {
    let name = "recursion_equals_product";
    let product = z_c3_product(order).series;
    let mut out = vec![IdentityCheck::from_result(
        name,
        order,
        z_c3_recursion(order).map(|r| IdentityCheck::compare(name, &r.series, &product)),
    )];
    let n = order.min(size_ceiling(3));
    out.push(IdentityCheck::from_result(
        "euler_is_signed_plane_partition_count",
        n,
        count_dpartitions_upto(3, n).map(|counts| {
            let signed: Vec<BigInt> = counts
                .into_iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c } else { -c })
                .collect();
            IdentityCheck::compare(
                "euler_is_signed_plane_partition_count",
                &realize_euler_series(&product.truncate(n)),
                &TruncSeries::new(signed, n),
            )
        }),
    ));
    out
}

pub fn feit_fine(order: usize) -> Vec<IdentityCheck> {
    let report = twisted_quotient_check(order);
    let twisted = match report.first_failure() {
        None => IdentityCheck::pass("twisted_quotient", order),
        Some(n) => IdentityCheck::fail("twisted_quotient", order, Some(n), String::new(), String::new()),
    };
    vec![twisted, double_product(order.min(6), -80)]
}

/// Double-product expansion of the Feit–Fine series against the expansion
/// at infinity of the `Exp`-route coefficients, above `floor` (half-powers of `L`).
pub fn double_product(order: usize, floor: i64) -> IdentityCheck {
    let name = "double_product_vs_expansion";
    let product = feit_fine_double_product(order, floor);
    let c = feit_fine_c(order);
    for n in 0..=order {
        let expected = expand_at_infinity(c.coeff(n), floor);
        if !product.coeff(n).agrees_above(&expected, floor) {
            return IdentityCheck::fail(
                name,
                order,
                Some(n),
                product.coeff(n).to_string(),
                expected.to_string(),
            );
        }
    }
    IdentityCheck::pass(name, order).with_note(format!("floor L^({floor}/2)"))
}

pub fn refined(order: usize) -> Vec<IdentityCheck> {
    (-3..=3)
        .map(|twice| {
            let delta = HalfInt::from_twice(twice);
            let name = format!("refined_macmahon_delta_{delta}");
            IdentityCheck::from_result(
                &name,
                order,
                refined_sum(order, delta)
                    .map(|sum| IdentityCheck::compare(&name, &refined_macmahon(delta, order), &sum)),
            )
        })
        .collect()
}

/// The first degree at which MacMahon's guess for `d`-dimensional partitions
/// disagrees with enumeration, with both values.
pub fn guess_mismatch(d: u32, order: usize) -> Result<Option<(usize, BigInt, BigInt)>> {
    let g = macmahon_guess(d, order)?;
    let counts = count_dpartitions_upto(d, order)?;
    Ok((0..=order)
        .find(|&n| g.coeff(n) != &counts[n])
        .map(|n| (n, g.coeff(n).clone(), counts[n].clone())))
}

pub fn guess(order: usize) -> Vec<IdentityCheck> {
    let n3 = order.min(size_ceiling(3));
    let three = IdentityCheck::from_result(
        "guess_d3_matches_enumeration",
        n3,
        guess_mismatch(3, n3).map(|m| match m {
            None => IdentityCheck::pass("guess_d3_matches_enumeration", n3),
            Some((n, g, c)) => {
                IdentityCheck::fail("guess_d3_matches_enumeration", n3, Some(n), g.to_string(), c.to_string())
            }
        }),
    );
    let n4 = order.min(8);
    let four = IdentityCheck::from_result(
        "guess_d4_fails",
        n4,
        guess_mismatch(4, n4).map(|m| match m {
            Some((n, g, c)) => IdentityCheck::pass("guess_d4_fails", n4)
                .with_note(format!("first mismatch at n = {n}: guess {g}, enumeration {c}")),
            None => IdentityCheck::fail(
                "guess_d4_fails",
                n4,
                None,
                "no mismatch".into(),
                "mismatch expected".into(),
            ),
        }),
    );
    vec![three, four]
}

/// Random Laurent polynomial with at most `terms` terms, exponents in
/// `-span..=span` and coefficients in `-3..=3`.
pub fn random_weight(rng: &mut impl Rng, terms: usize, span: i64) -> MotWeight {
    MotWeight::from_terms(
        (0..terms).map(|_| (rng.gen_range(-span..=span), BigInt::from(rng.gen_range(-3i64..=3)))),
    )
}

/// Random series with zero constant term.
pub fn random_augmented(rng: &mut impl Rng, order: usize) -> MotSeries {
    let mut coeffs = vec![MotWeight::zero()];
    for _ in 1..=order {
        let terms = rng.gen_range(0..=2);
        coeffs.push(random_weight(rng, terms, 3));
    }
    TruncSeries::new(coeffs, order)
}

fn check_eq<T: PartialEq + Debug>(failures: &mut Vec<String>, what: &str, a: &T, b: &T) {
    if a != b {
        failures.push(what.to_string());
    }
}

/// Runs every plethysm law on one random case; returns the laws that failed.
pub fn plethysm_case(rng: &mut impl Rng, max_order: usize) -> Result<Vec<String>> {
    let order = rng.gen_range(1..=max_order.max(1));
    let a = random_augmented(rng, order);
    let b = random_augmented(rng, order);
    let x = random_weight(rng, 2, 2);
    let y = random_weight(rng, 2, 2);
    let mut failures = Vec::new();

    let ea = exp_pleth(&a)?;
    let eb = exp_pleth(&b)?;
    check_eq(&mut failures, "log_exp", &log_pleth(&ea)?.into_series(), &a);
    check_eq(&mut failures, "exp_log", &exp_pleth(&log_pleth(&ea)?.into_series())?, &ea);
    check_eq(&mut failures, "exp_additive", &exp_pleth(&(&a + &b))?, &ea.mul_series(&eb));
    check_eq(
        &mut failures,
        "exp_routes_agree",
        &exp_via_adams(&ExpArgument::new(a.clone())?)?,
        &ea,
    );
    for n in [-2i64, -1, 1, 2, 3] {
        let un = MotWeight::u_pow(n);
        check_eq(
            &mut failures,
            &format!("substitution_u^{n}"),
            &ea.rescale(1, &un),
            &exp_pleth(&a.rescale(1, &un))?,
        );
    }
    check_eq(&mut failures, "pow_one", &pow_class(&ea, &MotWeight::one())?, &ea);
    check_eq(&mut failures, "pow_zero", &pow_class(&ea, &MotWeight::zero())?, &MotSeries::one(order));
    check_eq(
        &mut failures,
        "pow_sum",
        &pow_class(&ea, &(&x + &y))?,
        &pow_class(&ea, &x)?.mul_series(&pow_class(&ea, &y)?),
    );
    check_eq(
        &mut failures,
        "pow_product_base",
        &pow_class(&ea.mul_series(&eb), &x)?,
        &pow_class(&ea, &x)?.mul_series(&pow_class(&eb, &x)?),
    );
    check_eq(
        &mut failures,
        "pow_composite",
        &pow_class(&ea, &(&x * &y))?,
        &pow_class(&pow_class(&ea, &x)?, &y)?,
    );
    check_eq(&mut failures, "pow_integer", &pow_class(&ea, &MotWeight::constant(3.into()))?, &ea.pow_int(3)?);
    Ok(failures)
}

/// `cases` seeded random plethysm cases at order at most `max_order`.
pub fn plethysm_suite(max_order: usize, cases: usize, seed: u64) -> Vec<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = Vec::new();
    for i in 0..cases {
        match plethysm_case(&mut rng, max_order) {
            Ok(f) if f.is_empty() => {}
            Ok(f) => failed.push(format!("case {i}: {}", f.join(", "))),
            Err(e) => failed.push(format!("case {i}: {e}")),
        }
    }
    let name = "plethysm_laws_randomized";
    let check = if failed.is_empty() {
        IdentityCheck::pass(name, max_order)
    } else {
        IdentityCheck::fail(name, max_order, None, failed.join("; "), String::new())
    };
    vec![check.with_note(format!("{cases} cases, seed {seed}"))]
}

/// Parses a suite name or reports a usage error.
pub fn parse_suite(s: &str) -> Result<Suite> {
    Suite::parse(s).ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s}")))
}
