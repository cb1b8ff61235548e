//! Property tests for the module invariants: derivative correctness against
//! finite-difference oracles, structural symmetries, Euclidean and
//! reparametrization invariance, and degenerate-view behavior.

mod common;

use common::{assert_close, d1_5pt, d2_5pt, fd_tolerance, monomial};
use proptest::prelude::*;
use std::f64::consts::PI;

use curvefam::expr::{differentiate, eval, eval_jet2, parse, BinOp, Expr, Var};
use curvefam::invariants::{
    family_curvature_with_eps, squared_velocity, sv_derivative, FamilyParam, PlanarMapJet,
};
use curvefam::projection::{projection_jet, Regularity, ViewDirection};
use curvefam::surface::{Builtin, Surface};
use curvefam::verify::{check_theorem, fd_projection_jet, TheoremId};
use curvefam::invariants::invariant_sample;

/// Strategy for small polynomials in x and y (1–3 monomials, coefficients in
/// [−0.4, 0.4], per-variable degree ≤ 3). Magnitudes stay below ~1.5 on the
/// sample box so the 1e-7 absolute floor of the fd comparison is meaningful.
fn poly_strategy() -> impl Strategy<Value = Expr> {
    prop::collection::vec((-0.4f64..0.4, 0u32..=3, 0u32..=3), 1..=3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, px, py)| monomial(c, px, py))
            .reduce(|a, b| Expr::bin(BinOp::Add, a, b))
            .expect("vec is non-empty")
    })
}

fn planar_jet_strategy() -> impl Strategy<Value = PlanarMapJet> {
    let c = -2.0f64..2.0;
    [c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c]
        .prop_map(|v| PlanarMapJet {
            du: [v[0], v[1]],
            dv: [v[2], v[3]],
            duu: [v[4], v[5]],
            duv: [v[6], v[7]],
            dvv: [v[8], v[9]],
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, .. ProptestConfig::default() })]

    /// Symbolic jets of random polynomials agree with five-point stencil
    /// finite differences at step 1e-4.
    #[test]
    fn expr_jet_matches_fd_oracle(
        e in poly_strategy(),
        x in -0.7f64..0.7,
        y in -0.7f64..0.7,
    ) {
        let h = 1e-4;
        let jet = eval_jet2(&e, x, y).unwrap();
        let f = |xx: f64, yy: f64| eval(&e, xx, yy).unwrap();

        let gx = d1_5pt(|t| f(t, y), x, h);
        let gy = d1_5pt(|t| f(x, t), y, h);
        let gxx = d2_5pt(|t| f(t, y), x, h);
        let gyy = d2_5pt(|t| f(x, t), y, h);
        let gxy = d1_5pt(|t| d1_5pt(|s| f(s, t), x, h), y, h);

        for (name, a, b) in [
            ("gx", jet.gx, gx),
            ("gy", jet.gy, gy),
            ("gxx", jet.gxx, gxx),
            ("gxy", jet.gxy, gxy),
            ("gyy", jet.gyy, gyy),
        ] {
            assert_close(a, b, fd_tolerance(a, b), name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, .. ProptestConfig::default() })]

    /// d/dy d/dx e and d/dx d/dy e evaluate identically.
    #[test]
    fn mixed_partials_commute(
        e in poly_strategy(),
        x in -1.0f64..1.0,
        y in -1.0f64..1.0,
    ) {
        let xy = eval(&differentiate(&differentiate(&e, Var::X), Var::Y), x, y).unwrap();
        let yx = eval(&differentiate(&differentiate(&e, Var::Y), Var::X), x, y).unwrap();
        prop_assert!((xy - yx).abs() <= 1e-12, "{xy} vs {yx}");
    }

    /// Printing an expression and parsing it back evaluates identically.
    #[test]
    fn display_parse_round_trip(
        e in poly_strategy(),
        x in -1.0f64..1.0,
        y in -1.0f64..1.0,
    ) {
        let text = e.to_string();
        let back = parse(&text).unwrap_or_else(|err| panic!("reparse of `{text}`: {err}"));
        let a = eval(&e, x, y).unwrap();
        let b = eval(&back, x, y).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits(), "`{}` evals {} vs {}", text, a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, .. ProptestConfig::default() })]

    /// Hard-coded builtin jets agree with the symbolic jets of their formulas.
    #[test]
    fn builtin_jets_match_parsed_formulas(
        bi in 0usize..Builtin::ALL.len(),
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
    ) {
        let b = Builtin::ALL[bi];
        let parsed = Surface::from_expr_text(b.formula()).unwrap();
        let jb = b.jet(x, y);
        let jp = parsed.jet2(x, y).unwrap();
        for (name, a, c) in [
            ("g", jb.g, jp.g),
            ("gx", jb.gx, jp.gx),
            ("gy", jb.gy, jp.gy),
            ("gxx", jb.gxx, jp.gxx),
            ("gxy", jb.gxy, jp.gxy),
            ("gyy", jb.gyy, jp.gyy),
        ] {
            prop_assert!((a - c).abs() <= 1e-12, "{}:{} {} vs {}", b.name(), name, a, c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, .. ProptestConfig::default() })]

    /// Finite-difference projection jets track the closed-form jets within
    /// 1e-6 at step 1e-4, everywhere in the sampling box.
    #[test]
    fn fd_and_closed_projection_jets_agree(
        bi in 0usize..Builtin::ALL.len(),
        theta in 0.0f64..PI,
        phi in 0.0f64..(2.0 * PI),
        x in -1.0f64..1.0,
        y in -1.0f64..1.0,
    ) {
        let s = Surface::builtin(Builtin::ALL[bi]);
        let view = ViewDirection::new(theta, phi);
        let exact = projection_jet(&s, &view, x, y).unwrap();
        let fd = fd_projection_jet(&s, &view, x, y, 1e-4).unwrap();
        for (name, a, b) in [
            ("dx", fd.dx, exact.dx),
            ("dy", fd.dy, exact.dy),
            ("dxx", fd.dxx, exact.dxx),
            ("dxy", fd.dxy, exact.dxy),
            ("dyy", fd.dyy, exact.dyy),
        ] {
            prop_assert!((a[0] - b[0]).abs() <= 1e-6, "{name}[0] {} vs {}", a[0], b[0]);
            prop_assert!((a[1] - b[1]).abs() <= 1e-6, "{name}[1] {} vs {}", a[1], b[1]);
        }
        prop_assert!((fd.p - exact.p).abs() <= 1e-6);
        prop_assert!((fd.q - exact.q).abs() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, .. ProptestConfig::default() })]

    /// Rotating a planar jet by any R in SO(2) leaves curvature, squared
    /// velocity and its derivative unchanged (translations act only on the
    /// curve values, which the invariants never see).
    #[test]
    fn invariants_are_euclidean_invariant(
        j in planar_jet_strategy(),
        alpha in 0.0f64..(2.0 * PI),
    ) {
        let (s, c) = alpha.sin_cos();
        let rot = |v: [f64; 2]| [c * v[0] - s * v[1], s * v[0] + c * v[1]];
        let rj = PlanarMapJet {
            du: rot(j.du),
            dv: rot(j.dv),
            duu: rot(j.duu),
            duv: rot(j.duv),
            dvv: rot(j.dvv),
        };
        for along in [FamilyParam::U, FamilyParam::V] {
            let sv_a = squared_velocity(&j, along);
            let sv_b = squared_velocity(&rj, along);
            prop_assert!((sv_a - sv_b).abs() <= 1e-12 * sv_a.max(1.0));
            let dsv_a = sv_derivative(&j, along);
            let dsv_b = sv_derivative(&rj, along);
            prop_assert!((dsv_a - dsv_b).abs() <= 1e-12 * dsv_a.abs().max(1.0));
            if let (Ok(ka), Ok(kb)) = (
                family_curvature_with_eps(&j, along, 1e-6),
                family_curvature_with_eps(&rj, along, 1e-6),
            ) {
                prop_assert!((ka - kb).abs() <= 1e-9 * ka.abs().max(1.0), "{ka} vs {kb}");
            }
        }
    }

    /// Scaling the family parameter by a positive power of two scales SV by
    /// λ², d/du SV by λ³ and leaves curvature bit-identical.
    #[test]
    fn reparametrization_scaling_is_exact_for_powers_of_two(
        j in planar_jet_strategy(),
        lambda in prop::sample::select(vec![0.25f64, 0.5, 2.0, 4.0, 8.0]),
    ) {
        let scaled = PlanarMapJet {
            du: [lambda * j.du[0], lambda * j.du[1]],
            duu: [lambda * lambda * j.duu[0], lambda * lambda * j.duu[1]],
            ..j
        };
        let along = FamilyParam::U;
        let l2 = lambda * lambda;
        let l3 = l2 * lambda;
        prop_assert_eq!(
            squared_velocity(&scaled, along).to_bits(),
            (l2 * squared_velocity(&j, along)).to_bits()
        );
        prop_assert_eq!(
            sv_derivative(&scaled, along).to_bits(),
            (l3 * sv_derivative(&j, along)).to_bits()
        );
        if let Ok(k) = family_curvature_with_eps(&j, along, 0.0) {
            let ks = family_curvature_with_eps(&scaled, along, 0.0).unwrap();
            prop_assert_eq!(ks.to_bits(), k.to_bits());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, .. ProptestConfig::default() })]

    /// Views along the vertical axis (sin θ = 0) collapse both sides of every
    /// product law to zero.
    #[test]
    fn degenerate_views_zero_every_law(
        bi in 0usize..Builtin::ALL.len(),
        top in proptest::bool::ANY,
        phi in 0.0f64..(2.0 * PI),
        x in -1.0f64..1.0,
        y in -1.0f64..1.0,
    ) {
        let theta = if top { 0.0 } else { PI };
        let s = Surface::builtin(Builtin::ALL[bi]);
        for th in TheoremId::ALL {
            let r = check_theorem(th, &s, &ViewDirection::new(theta, phi), x, y).unwrap();
            if r.hypotheses_met {
                prop_assert!(r.lhs.abs() < 1e-12, "{} lhs {}", th.id(), r.lhs);
                prop_assert!(r.rhs.abs() < 1e-12, "{} rhs {}", th.id(), r.rhs);
            }
        }
    }

    /// A regular verdict comes with a defined curvature, and a non-regular
    /// verdict with none.
    #[test]
    fn curvature_presence_tracks_regularity(
        bi in 0usize..Builtin::ALL.len(),
        theta in 0.0f64..PI,
        phi in 0.0f64..(2.0 * PI),
        x in -1.0f64..1.0,
        y in -1.0f64..1.0,
    ) {
        let s = Surface::builtin(Builtin::ALL[bi]);
        let view = ViewDirection::new(theta, phi);
        let sample = invariant_sample(&s, &view, x, y, 1e-9).unwrap();
        prop_assert_eq!(
            sample.kappa_x.is_some(),
            sample.regular_x == Regularity::Regular
        );
        prop_assert_eq!(
            sample.kappa_y.is_some(),
            sample.regular_y == Regularity::Regular
        );
    }
}
