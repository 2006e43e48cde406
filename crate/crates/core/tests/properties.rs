use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use ipgap::bounds::integrality_gap;
use ipgap::exact::{compute_invariants, kernel_lattice_basis, rank, IntegerMatrix};
use ipgap::integer::{IntError, IntOptions};
use ipgap::io::InstanceFile;
use ipgap::polyhedra::{enumerate_vertices, lp_solve, Instance, LpOutcome};

type Q = BigRational;

/// `(A, x0, c)` with `A` of full row rank; `b = A x0` makes the IP feasible.
fn instances() -> impl Strategy<Value = Instance> {
    (1usize..=2, 1usize..=3)
        .prop_flat_map(|(m, extra)| {
            let n = m + extra;
            (
                prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
                prop::collection::vec(0i64..=2, n),
                prop::collection::vec(-3i64..=3, n),
            )
        })
        .prop_filter("full row rank", |(a, _, _)| {
            rank(&IntegerMatrix::from_rows(a).unwrap()) == a.len()
        })
        .prop_map(|(a, x0, c)| {
            let b: Vec<i64> = a.iter().map(|r| r.iter().zip(&x0).map(|(p, q)| p * q).sum()).collect();
            Instance::from_ints(&a, &b, &c).unwrap()
        })
}

fn positive_rational() -> impl Strategy<Value = Q> {
    (1i64..=9, 1i64..=9).prop_map(|(p, q)| Q::new(p.into(), q.into()))
}

fn opts() -> IntOptions {
    IntOptions {
        node_cap: 200_000,
        cross_check: true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gap_scales_with_the_cost(inst in instances(), t in positive_rational()) {
        let base = match integrality_gap(&inst, &opts()) {
            Ok(d) => d.gap,
            Err(IntError::Unbounded | IntError::BudgetExceeded(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let scaled = inst.with_cost(inst.c().iter().map(|c| c * &t).collect()).unwrap();
        let gap = integrality_gap(&scaled, &opts()).unwrap().gap;
        prop_assert_eq!(gap, base * t);
    }

    #[test]
    fn row_space_costs_have_no_gap(inst in instances(), y in prop::collection::vec(-3i64..=3, 2)) {
        // c = y^T A is constant on P(A, b)
        let c: Vec<Q> = (0..inst.n())
            .map(|j| (0..inst.m()).map(|i| Q::from_integer(&inst.a()[(i, j)] * BigInt::from(y[i]))).sum())
            .collect();
        let inst = inst.with_cost(c).unwrap();
        let gap = integrality_gap(&inst, &opts()).unwrap().gap;
        prop_assert!(gap.is_zero());
    }

    #[test]
    fn gap_is_nonnegative(inst in instances()) {
        if let Ok(d) = integrality_gap(&inst, &opts()) {
            prop_assert!(d.gap >= Q::zero());
            prop_assert!(inst.contains(&d.lp.x));
            prop_assert!(inst.contains_int(&d.ip.z));
        }
    }

    #[test]
    fn lp_optimum_is_the_best_vertex(inst in instances()) {
        if let Ok(LpOutcome::Optimal(x)) = lp_solve(&inst) {
            let best = enumerate_vertices(&inst).unwrap().into_iter().map(|v| v.value).min().unwrap();
            prop_assert_eq!(x.value, best);
        }
    }

    #[test]
    fn kernel_lattice_determinant(inst in instances()) {
        let inv = compute_invariants(inst.a()).unwrap();
        let lattice = kernel_lattice_basis(inst.a()).unwrap();
        prop_assert_eq!(lattice.gram_det() * &inv.gcd * &inv.gcd, inv.gram_det);
    }

    #[test]
    fn instance_files_round_trip(
        inst in instances(),
        name in proptest::option::of("[a-z]{1,8}"),
        dens in prop::collection::vec(1i64..=6, 6),
        bx in proptest::option::of(prop::collection::vec(0i64..=9, 6)),
    ) {
        let mut file = InstanceFile::from_instance(&inst, name);
        for (c, d) in file.c.iter_mut().zip(&dens) {
            *c = &*c / Q::from_integer((*d).into());
        }
        file.search_box = bx.map(|mut b| { b.truncate(inst.n()); b.resize(inst.n(), 1); b });
        let back = InstanceFile::parse(&file.to_json()).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), file.to_json());
    }
}
