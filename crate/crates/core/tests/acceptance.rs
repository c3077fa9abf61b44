//! Acceptance suite: one line per criterion, exact comparisons throughout.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::One;

use motivic_core::classes::{realize_euler_series, realize_weight_series, HalfInt};
use motivic_core::dtgen::{
    cheah_assembly, goettsche_surface, refined_macmahon, twisted_quotient_check, unified_formula,
    weight_partition_function, z_c3_product, z_c3_recursion, z_x_exp, z_x_power,
};
use motivic_core::partitions::{count_dpartitions_upto, refined_sum};
use motivic_core::verify::{double_product, guess_mismatch, plethysm_suite};
use motivic_core::{BettiVector, IntSeries, MotSeries, MotWeight};

type Outcome = Result<String, String>;

fn compare<T: PartialEq + std::fmt::Debug>(what: &str, a: &T, b: &T) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a:?} != {b:?}"))
    }
}

fn l_poly(c: &[i64]) -> MotWeight {
    MotWeight::from_l_coeffs(c)
}

fn flagship() -> Outcome {
    let rec = z_c3_recursion(8).map_err(|e| e.to_string())?;
    let prod = z_c3_product(8);
    match rec.series.first_mismatch(&prod.series) {
        None => Ok("recursion = product through t^8, all coefficients polynomial".into()),
        Some(n) => Err(format!("first mismatch at t^{n}")),
    }
}

fn euler_oracle() -> Outcome {
    let chi = realize_euler_series(&z_c3_product(12).series);
    let counts = count_dpartitions_upto(3, 12).map_err(|e| e.to_string())?;
    for (n, c) in counts.iter().enumerate() {
        let signed = if n % 2 == 0 { c.clone() } else { -c.clone() };
        compare(&format!("t^{n}"), chi.coeff(n), &signed)?;
    }
    Ok(format!("chi = (-1)^n #plane partitions for n <= 12 (#pp(12) = {})", counts[12]))
}

fn refined() -> Outcome {
    for twice in -3..=3 {
        let delta = HalfInt::from_twice(twice);
        let sum = refined_sum(10, delta).map_err(|e| e.to_string())?;
        if let Some(n) = refined_macmahon(delta, 10).first_mismatch(&sum) {
            return Err(format!("delta = {delta}: mismatch at t^{n}"));
        }
    }
    Ok("product = statistics sum for n <= 10, seven values of delta".into())
}

fn twisted() -> Outcome {
    let r = twisted_quotient_check(8);
    match r.first_failure() {
        None => Ok("C(L^(1/2) t) = Z(t) C(L^(-1/2) t) through t^8 over rational weights".into()),
        Some(n) => Err(format!("fails at t^{n}")),
    }
}

fn threefolds() -> Outcome {
    let p3 = l_poly(&[1, 1, 1, 1]);
    let classes = [
        MotWeight::from_l_coeffs(&[]),
        MotWeight::one(),
        l_poly(&[1, 1]),
        l_poly(&[0, 0, 0, 1]),
        p3.clone(),
    ];
    for x in &classes {
        let e = z_x_exp(x, 8).series;
        let p = z_x_power(x, 8).map_err(|e| e.to_string())?.series;
        compare(&format!("[X] = {}", x.to_l_string()), &e, &p)?;
    }
    compare("[X] = L^3 vs C^3 product", &z_x_exp(&classes[3], 8).series, &z_c3_product(8).series)?;
    let w = realize_weight_series(&z_x_exp(&p3, 8).series);
    compare("weight realization of P^3", &w, &weight_partition_function(&BettiVector::p3(), 8))?;
    Ok("Exp route = power route for 0, 1, 1+L, L^3, [P^3] through t^8; weight series of P^3 matches".into())
}

fn lower_dimensions() -> Outcome {
    let order = 12;
    let n_points = 3i64;
    let z0 = unified_formula(0, &MotWeight::constant(n_points.into()), order).map_err(|e| e.to_string())?;
    let binom = IntSeries::new(IntSeries::from_i64(&[1, 3, 3, 1]).into_coeffs(), order);
    compare("d = 0", &z0.series, &binom.map(|c| MotWeight::constant(c.clone())))?;

    let z1 = unified_formula(1, &l_poly(&[1, 1]), order).map_err(|e| e.to_string())?;
    for n in 0..=order {
        let pn = l_poly(&vec![1; n + 1]);
        compare(&format!("d = 1, t^{n}"), z1.series.coeff(n), &(&pn * &MotWeight::l_half_pow(-(n as i64))))?;
    }

    let plane = MotWeight::l_pow(2);
    let z2 = unified_formula(2, &plane, order).map_err(|e| e.to_string())?;
    let g: MotSeries = goettsche_surface(&plane, order).rescale(1, &MotWeight::l_pow(-1));
    compare("d = 2 vs Goettsche", &z2.series, &g)?;
    let p = count_dpartitions_upto(2, order).map_err(|e| e.to_string())?;
    compare("d = 2 Euler", &realize_euler_series(&z2.series), &IntSeries::new(p, order))?;
    Ok("d = 0 binomial, d = 1 projective spaces, d = 2 Goettsche with chi = p(n) for n <= 12".into())
}

fn cheah() -> Outcome {
    for d in 4..=6u32 {
        let u = unified_formula(d as i64, &MotWeight::l_pow(d as i64), 3).map_err(|e| e.to_string())?;
        compare(&format!("d = {d}"), &u.series, &cheah_assembly(d).map_err(|e| e.to_string())?)?;
    }
    Ok("order-3 extension = normalized Cheah assembly for d = 4, 5, 6".into())
}

fn guess() -> Outcome {
    if let Some((n, g, c)) = guess_mismatch(3, 10).map_err(|e| e.to_string())? {
        return Err(format!("d = 3 differs at n = {n}: guess {g}, enumeration {c}"));
    }
    match guess_mismatch(4, 8).map_err(|e| e.to_string())? {
        Some((n, g, c)) => Ok(format!(
            "d = 3 exact for n <= 10; d = 4 first differs at n = {n}: guess {g}, enumeration {c}"
        )),
        None => Err("d = 4 guess agrees with enumeration through n = 8".into()),
    }
}

fn plethysm() -> Outcome {
    let check = &plethysm_suite(10, 200, 0x5eed)[0];
    if check.passed {
        Ok("200 seeded random cases at order <= 10, all laws exact".into())
    } else {
        Err(check.lhs_sample.clone().unwrap_or_default())
    }
}

fn feit_fine_double() -> Outcome {
    // floor -40 in powers of L is -80 in half-powers
    let check = double_product(6, -80);
    if check.passed {
        Ok("double product = expansion at infinity for n <= 6 above L^-40".into())
    } else {
        Err(format!(
            "t^{}: {} vs {}",
            check.first_failure_degree.unwrap_or(0),
            check.lhs_sample.clone().unwrap_or_default(),
            check.rhs_sample.clone().unwrap_or_default()
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("flagship identity", flagship),
        ("euler oracle", euler_oracle),
        ("refined macmahon", refined),
        ("twisted quotient", twisted),
        ("threefold cross-routes", threefolds),
        ("lower dimensions", lower_dimensions),
        ("cheah low orders", cheah),
        ("macmahon guess", guess),
        ("plethysm properties", plethysm),
        ("feit-fine double product", feit_fine_double),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {msg} ({secs:.2}s)", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
