use super::recipe::{Construction, Recipe, ThetaSpec};
use super::suite::{Check, Suite};
use crate::topology::TopologyKind;

fn zbr(carrier: &str, theta: ThetaSpec) -> Recipe {
    Recipe::new(Construction::Zbr, carrier, theta)
}

fn doubling_c6() -> Recipe {
    Recipe::new(Construction::Warne, "c6", ThetaSpec::Table(vec![0, 2, 4, 0, 2, 4])).with_u(vec![(-1, 1), (-2, 3)])
}

const TOPOLOGY_WINDOW: (i64, i64) = (-2, 2);

fn topology_suite(name: &str, recipe: Recipe, kind: TopologyKind, checks: &[Check]) -> Suite {
    let mut s = Suite::new(name, recipe, TOPOLOGY_WINDOW, 2).topology(kind);
    for c in checks {
        s = s.check(c.clone());
    }
    s
}

/// The standard suites, in report order.
pub fn builtin_suites() -> Vec<Suite> {
    use Check::*;
    let annihilating = ThetaSpec::Annihilating;
    let mut out = vec![
        Suite::new("ext-bicyclic-assoc", Recipe::new(Construction::ExtBicyclic, "trivial", annihilating.clone()), (-4, 4), 0)
            .check(Associativity)
            .check(Grading),
        Suite::new(
            "ext-bicyclic-structure",
            Recipe::new(Construction::ExtBicyclic, "trivial", annihilating.clone()),
            (-3, 3),
            0,
        )
        .check(Idempotents)
        .check(InverseTransfer { enlargement: 2 })
        .check(Simple { pairs: 200, enlargement: 2, seed: 11 })
        .check(IBisimple { bound: 6 })
        .check(Translation),
    ];
    for (name, carrier, theta) in [
        ("semilattice2", "semilattice2", annihilating.clone()),
        ("c2-identity", "c2", ThetaSpec::Identity),
        ("leftzero2", "leftzero2+1", annihilating.clone()),
    ] {
        out.push(
            Suite::new(&format!("zbr-assoc-{name}"), zbr(carrier, theta.clone()), (-3, 3), 0)
                .check(Associativity)
                .check(Grading)
                .check(Idempotents),
        );
        out.push(
            Suite::new(&format!("prop-1.1-i-{name}"), zbr(carrier, theta), (-3, 3), 0)
                .check(Simple { pairs: 200, enlargement: 2, seed: 17 })
                .check(Translation),
        );
    }
    out.extend([
        Suite::new("zbruck-assoc-chain3", Recipe::new(Construction::Zbruck, "chain3", annihilating.clone()), (-2, 2), 0)
            .check(Associativity)
            .check(Grading),
        Suite::new("prop-1.1-ii-semilattice2", zbr("semilattice2", annihilating.clone()), (-3, 3), 0)
            .check(InverseTransfer { enlargement: 2 }),
        Suite::new("prop-1.1-ii-leftzero", zbr("leftzero2+1", annihilating.clone()), (-3, 3), 0)
            .check(InverseTransfer { enlargement: 2 }),
        Suite::new("prop-1.1-iii-leftzero", zbr("leftzero2+1", annihilating.clone()), (-2, 2), 0)
            .check(RegularTransfer { enlargement: 2 }),
        Suite::new("prop-1.1-iii-nil3", zbr("nil3", annihilating.clone()), (-2, 2), 0)
            .check(RegularTransfer { enlargement: 2 }),
        Suite::new("remark-1.2-grading-int", zbr("int-group", ThetaSpec::Scale(-1)), (-3, 3), 3)
            .check(Grading)
            .check(GradingFuzz { samples: 100_000, seed: 5, spread: 30 }),
        Suite::new("warne-unit-coefficient", doubling_c6(), (-3, 3), 0).check(WarneUnitCoefficient { lo: -5, hi: 5 }),
        Suite::new("warne-branch-agreement", doubling_c6(), (-3, 3), 0).check(WarneBranchAgreement),
        Suite::new("warne-assoc", doubling_c6(), (-3, 3), 0)
            .check(Associativity)
            .check(GradingFuzz { samples: 100_000, seed: 3, spread: 20 }),
        Suite::new("i-bisimple-warne", doubling_c6(), (-2, 2), 0).check(IBisimple { bound: 4 }).check(Idempotents),
        Suite::new("i-bisimple-semilattice2", zbr("semilattice2", annihilating.clone()), (-2, 2), 0)
            .expect_failure(IBisimple { bound: 4 }),
        Suite::new("example-3.7-containments", zbr("int-group", annihilating.clone()), (0, 0), 0)
            .check(Example37Containments { indices: (-3, 3), tails: (-6, 6), groups: (-3, 3) }),
    ]);

    let int = || zbr("int-group", ThetaSpec::Annihilating);
    let nat = |n: &str| zbr(n, ThetaSpec::Annihilating);
    let common = [Hausdorff, SeparateContinuity, NbhdLowerset];
    let with = |extra: &[Check]| common.iter().chain(extra).cloned().collect::<Vec<_>>();
    out.extend([
        topology_suite(
            "topology-direct-sum",
            zbr("c2", ThetaSpec::Identity),
            TopologyKind::DirectSum,
            &with(&[JointContinuity, InversionContinuity, Discrete, RestrictionDiscrete]),
        ),
        topology_suite(
            "topology-example-2.7",
            nat("nplus"),
            TopologyKind::Example2_7,
            &with(&[JointContinuity, CoarserStrict, RestrictionDiscrete]),
        ),
        topology_suite(
            "topology-example-2.8",
            nat("nmax"),
            TopologyKind::Example2_8,
            &with(&[JointContinuity, InversionContinuity, CoarserStrict, RestrictionDiscrete]),
        ),
        topology_suite(
            "topology-example-3.7",
            int(),
            TopologyKind::Example3_7,
            &with(&[JointContinuity, CoarserStrict, RestrictionDiscrete]),
        ),
        topology_suite("example-3.7-inversion-discontinuity", int(), TopologyKind::Example3_7, &[])
            .expect_failure(InversionContinuity),
        topology_suite(
            "topology-example-3.9",
            int(),
            TopologyKind::Example3_9,
            &with(&[InversionContinuity, CoarserStrict, RestrictionDiscrete]),
        ),
        topology_suite("example-3.9-joint-discontinuity", int(), TopologyKind::Example3_9, &[])
            .expect_failure(JointContinuity),
        topology_suite(
            "topology-coarsened-nplus",
            nat("nplus"),
            TopologyKind::Coarsened,
            &with(&[JointContinuity, CoarserStrict, RestrictionDiscrete]),
        ),
        topology_suite(
            "topology-coarsened-nmax",
            nat("nmax"),
            TopologyKind::Coarsened,
            &with(&[JointContinuity, InversionContinuity, CoarserStrict, RestrictionDiscrete]),
        ),
        Suite::new("oip-nplus", nat("nplus"), (0, 0), 6).check(Oip { upto: 8 }),
        Suite::new("oip-nmax", nat("nmax"), (0, 0), 6).check(Oip { upto: 8 }),
        Suite::new("oip-semilattice2", zbr("semilattice2", ThetaSpec::Annihilating), (0, 0), 0)
            .expect_failure(Oip { upto: 0 }),
        topology_suite("trivial-carrier-discrete", zbr("trivial", ThetaSpec::Annihilating), TopologyKind::DirectSum, &[])
            .check(ApplicableKinds { expected: vec![TopologyKind::DirectSum] })
            .check(Discrete),
    ]);
    out
}

/// A builtin suite by name.
pub fn builtin_suite(name: &str) -> Option<Suite> {
    builtin_suites().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_include_the_standard_ones() {
        let suites = builtin_suites();
        let mut names: Vec<&str> = suites.iter().map(|s| s.name.as_str()).collect();
        for n in ["warne-branch-agreement", "example-3.7-inversion-discontinuity", "oip-nmax", "ext-bicyclic-assoc"] {
            assert!(names.contains(&n), "{n}");
        }
        names.sort();
        names.dedup();
        assert_eq!(names.len(), suites.len());
    }

    #[test]
    fn recipes_build() {
        for s in builtin_suites() {
            assert!(s.recipe.build().is_ok(), "{}", s.name);
        }
    }
}
