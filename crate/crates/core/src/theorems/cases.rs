use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, pow};

use super::{CaseFlag, Conclusion, Conds, Draw, GridChoice, Inputs, LawRef, TheoremCase};
use crate::orders::{Relation, ShapeClass};

use Conclusion::{Order, Shape};
use LawRef::{Baseline as F, Domo as G, DomoSecond as G1, Ell as K, EllSecond as K1};
use Relation::{
    ConvexTransform as C, Dispersive as Disp, HazardRate as Hr, LikelihoodRatio as Lr,
    ReversedHazard as Rh, Stochastic as St,
};
use ShapeClass::{CdfConcave, CdfConvex, Dhr, Dor, Ihr, Ior};

fn case(
    id: &'static str,
    statement: &'static str,
    requires: &'static [ShapeClass],
    draw: Draw,
    hypothesis: fn(&Inputs) -> Conds,
    conclusion: Conclusion,
) -> TheoremCase {
    TheoremCase {
        id,
        statement,
        requires,
        conclusion,
        flag: None,
        delegated: false,
        premise: None,
        hypothesis,
        draw,
        grid: GridChoice::Standard,
    }
}

impl TheoremCase {
    fn flagged(mut self, flag: CaseFlag) -> Self {
        self.flag = Some(flag);
        self
    }

    fn with_premise(mut self, relation: Relation, left: LawRef, right: LawRef) -> Self {
        self.premise = Some((relation, left, right));
        self
    }
}

fn c() -> Conds {
    Conds::new()
}

/// `α^{θ−1}βθ`, the slope of the d-oMO odds at the origin relative to `Λ_F`.
fn slope_at_origin(a: f64, b: f64, t: f64) -> f64 {
    pow(a, t - 1.0) * b * t
}

/// Condition (ST1) for the pair `(α, β, θ)`, `(α₁, β₁, θ₁)`.
fn st1(i: &Inputs) -> Conds {
    let (a, b, t) = (i.p.alpha(), i.p.beta(), i.p.theta());
    let (a1, b1, t1) = (i.q.alpha(), i.q.beta(), i.q.theta());
    c().lt(t, t1)
        .lt(slope_at_origin(a, b, t), slope_at_origin(a1, b1, t1))
        .ge(a1 * (1.0 - t) - a * (1.0 - t1), 0.0)
}

/// Condition (ST2).
fn st2(i: &Inputs) -> Conds {
    let (a, b, t) = (i.p.alpha(), i.p.beta(), i.p.theta());
    let (a1, b1, t1) = (i.q.alpha(), i.q.beta(), i.q.theta());
    c().when(t == t1)
        .lt(b, b1)
        .lt(pow(a, t - 1.0) * b, pow(a1, t - 1.0) * b1)
        .gt((1.0 - t) * (pow(a1, t) * b1 - pow(a, t) * b), 0.0)
}

/// `ββ₁θθ₁ f(0) α^{θ−1} a^{θ₁−1}` with `a` the second factor's base.
fn disp_product(i: &Inputs, second_base: f64) -> f64 {
    let (a, b, t) = (i.p.alpha(), i.p.beta(), i.p.theta());
    let (b1, t1) = (i.q.beta(), i.q.theta());
    b * b1 * t * t1 * i.f0 * pow(a, t - 1.0) * pow(second_base, t1 - 1.0)
}

/// The (HR6) expression.
fn hr6_expression(i: &Inputs) -> f64 {
    let (b, t) = (i.p.beta(), i.p.theta());
    let (a1, b1) = (i.q.alpha(), i.q.beta());
    let e = 1.0 - 1.0 / t;
    let a1t = pow(a1, t);
    a1 + (1.0 - a1) * pow(b1, e) * (pow(1.0 - a1t, e) - b) / pow(b1 * (1.0 - a1t) - b, e)
}

/// The full registry.
pub fn list_cases() -> Vec<TheoremCase> {
    let mut cases = vec![
        // oMO with θ = 1
        case("OMO-IHR", "F in IHR, a=0, t=1, b<=1 => G in IHR", &[Ihr], Draw::Omo1,
            |i| c().le(i.p.beta(), 1.0), Shape(G, Ihr)),
        case("OMO-DHR", "F in DHR, a=0, t=1, b>=1 => G in DHR", &[Dhr], Draw::Omo1,
            |i| c().ge(i.p.beta(), 1.0), Shape(G, Dhr)),
        case("OMO-IOR", "F in IOR, a=0, t>=1 => G in IOR", &[Ior], Draw::Omo,
            |i| c().ge(i.p.theta(), 1.0), Shape(G, Ior)),
        case("OMO-LR-1", "a=0, t=1, b<=1 => F <=lr G", &[], Draw::Omo1,
            |i| c().le(i.p.beta(), 1.0), Order(Lr, F, G)),
        case("OMO-LR-2", "a=0, t=1, b>=1 => G <=lr F", &[], Draw::Omo1,
            |i| c().ge(i.p.beta(), 1.0), Order(Lr, G, F)),
        case("OMO-HR-1", "a=0, t=1, b<=1 => F <=hr G", &[], Draw::Omo1,
            |i| c().le(i.p.beta(), 1.0), Order(Hr, F, G)),
        case("OMO-HR-2", "a=0, t=1, b>=1 => G <=hr F", &[], Draw::Omo1,
            |i| c().ge(i.p.beta(), 1.0), Order(Hr, G, F)),
        case("OMO-RH-1", "a=0, t=1, b<=1 => F <=rh G", &[], Draw::Omo1,
            |i| c().le(i.p.beta(), 1.0), Order(Rh, F, G)),
        case("OMO-RH-2", "a=0, t=1, b>=1 => G <=rh F", &[], Draw::Omo1,
            |i| c().ge(i.p.beta(), 1.0), Order(Rh, G, F)),
        case("OMO-ST-1", "a=0, t=1, b<=1 => F <=st G", &[], Draw::Omo1,
            |i| c().le(i.p.beta(), 1.0), Order(St, F, G)),
        case("OMO-ST-2", "a=0, t=1, b>=1 => G <=st F", &[], Draw::Omo1,
            |i| c().ge(i.p.beta(), 1.0), Order(St, G, F)),
        case("OMO-HAZARD-BOUNDS", "a=0, t=1 => min(b,1) h_F <= h_G <= max(b,1) h_F", &[], Draw::Omo1,
            |_| c(), Conclusion::HazardSandwich),
        {
            let mut k = case("OMO-NONCOMP", "a=0, t!=1 => F and G cross in st", &[], Draw::OmoResolvable,
                |i| c().gt(fabs(i.p.theta() - 1.0), 0.0), Conclusion::Crosses(St, F, G));
            k.grid = GridChoice::Wide;
            k
        },
        case("PROP-CONV-1", "F concave, a=0, t=1, b>=1 => G concave", &[CdfConcave], Draw::Omo1,
            |i| c().ge(i.p.beta(), 1.0), Shape(G, CdfConcave)),
        case("PROP-CONV-2", "F convex, a=0, t=1, b<=1 => G convex", &[CdfConvex], Draw::Omo1,
            |i| c().le(i.p.beta(), 1.0), Shape(G, CdfConvex)),
        // d-oMO shape preservation
        case("DOMO-IHR-1", "D(0)<0, (1-a)(t-1)<0, F in IHR => G in IHR", &[Ihr], Draw::Domo,
            |i| c().lt(i.p.d_polynomial(0.0), 0.0).lt((1.0 - i.p.alpha()) * (i.p.theta() - 1.0), 0.0),
            Shape(G, Ihr)),
        case("DOMO-IHR-2", "D(0)>0, (1-a)(t-1)>0, F in DHR => G in DHR", &[Dhr], Draw::Domo,
            |i| c().gt(i.p.d_polynomial(0.0), 0.0).gt((1.0 - i.p.alpha()) * (i.p.theta() - 1.0), 0.0),
            Shape(G, Dhr)),
        case("DOMO-IHR-3", "a=1 or t=1, b<=1, F in IHR => G in IHR", &[Ihr], Draw::DomoUnit,
            |i| c().when(i.p.alpha() == 1.0 || i.p.theta() == 1.0).le(i.p.beta(), 1.0),
            Shape(G, Ihr)),
        case("DOMO-IHR-4", "a=1 or t=1, b>=1, F in DHR => G in DHR", &[Dhr], Draw::DomoUnit,
            |i| c().when(i.p.alpha() == 1.0 || i.p.theta() == 1.0).ge(i.p.beta(), 1.0),
            Shape(G, Dhr)),
        case("DOMO-IOR", "t>=1, F in IOR => G in IOR", &[Ior], Draw::Domo,
            |i| c().ge(i.p.theta(), 1.0), Shape(G, Ior)),
        case("DOMO-DOR", "t<=1, F in DOR => G in DOR", &[Dor], Draw::Domo,
            |i| c().le(i.p.theta(), 1.0), Shape(G, Dor)),
        // d-oMO against its baseline
        case("DOMO-ST-1", "t>1, a^(t-1) b t > 1 => G <=st F", &[], Draw::Domo,
            |i| c().gt(i.p.theta(), 1.0).gt(slope_at_origin(i.p.alpha(), i.p.beta(), i.p.theta()), 1.0),
            Order(St, G, F)),
        case("DOMO-ST-2", "t<1, a^(t-1) b t < 1 => F <=st G", &[], Draw::Domo,
            |i| c().lt(i.p.theta(), 1.0).lt(slope_at_origin(i.p.alpha(), i.p.beta(), i.p.theta()), 1.0),
            Order(St, F, G)),
        case("DOMO-HR-1", "b t a^(t-1) > 1, T increasing => G <=hr F", &[], Draw::Domo,
            |i| c().gt(slope_at_origin(i.p.alpha(), i.p.beta(), i.p.theta()), 1.0)
                .when(i.p.t_monotonicity().is_nondecreasing()),
            Order(Hr, G, F)),
        case("DOMO-HR-2", "b t a^(t-1) < 1, T decreasing => F <=hr G", &[], Draw::Domo,
            |i| c().lt(slope_at_origin(i.p.alpha(), i.p.beta(), i.p.theta()), 1.0)
                .when(i.p.t_monotonicity().is_nonincreasing()),
            Order(Hr, F, G)),
        case("DOMO-HR-1-PRINTED", "a^(t-1) > 1, T increasing => G <=hr F", &[], Draw::Domo,
            |i| c().gt(pow(i.p.alpha(), i.p.theta() - 1.0), 1.0)
                .when(i.p.t_monotonicity().is_nondecreasing()),
            Order(Hr, G, F)).flagged(CaseFlag::AsPrinted),
        case("DOMO-HR-2-PRINTED", "a^(t-1) < 1, T decreasing => F <=hr G", &[], Draw::Domo,
            |i| c().lt(pow(i.p.alpha(), i.p.theta() - 1.0), 1.0)
                .when(i.p.t_monotonicity().is_nonincreasing()),
            Order(Hr, F, G)).flagged(CaseFlag::AsPrinted),
        case("DOMO-LR-1", "t>1, F <=hr G => F <=lr G", &[], Draw::Domo,
            |i| c().gt(i.p.theta(), 1.0), Order(Lr, F, G)).with_premise(Hr, F, G),
        case("DOMO-LR-2", "t<1, G <=hr F => G <=lr F", &[], Draw::Domo,
            |i| c().lt(i.p.theta(), 1.0), Order(Lr, G, F)).with_premise(Hr, G, F),
        case("DOMO-LR-1-PRINTED", "t>1, F <=hr G => G <=lr F", &[], Draw::Domo,
            |i| c().gt(i.p.theta(), 1.0), Order(Lr, G, F))
            .with_premise(Hr, F, G).flagged(CaseFlag::AsPrinted),
        case("DOMO-LR-2-PRINTED", "t<1, G <=hr F => F <=lr G", &[], Draw::Domo,
            |i| c().lt(i.p.theta(), 1.0), Order(Lr, F, G))
            .with_premise(Hr, G, F).flagged(CaseFlag::AsPrinted),
        {
            let mut k = case("GEOM-STABILITY", "min/max of Geometric(p) draws of G follow G with b/p and b*p",
                &[], Draw::Geometric, |_| c(), Conclusion::GeometricStability);
            k.delegated = true;
            k
        },
        // ELL shape
        case("ELL-DHR", "a+t>1 => K in DHR", &[], Draw::Ell,
            |i| c().gt(i.p.alpha() + i.p.theta(), 1.0), Shape(K, Dhr)),
        case("ELL-IOR", "t<=1 => K in IOR", &[], Draw::Ell,
            |i| c().le(i.p.theta(), 1.0), Shape(K, Ior)),
        case("ELL-DOR", "t>=1 => K in DOR", &[], Draw::Ell,
            |i| c().ge(i.p.theta(), 1.0), Shape(K, Dor)),
        // ELL stochastic order
        case("ELL-ST-ST1", "(ST1) => K <=st K1", &[], Draw::EllPair, st1, Order(St, K, K1)),
        case("ELL-ST-ST2", "(ST2) => K <=st K1", &[], Draw::EllPairSameTheta, st2, Order(St, K, K1)),
        case("ELL-ST-COR-1", "a>=a1>=0, t<=1 => K(a,b,t) <=st K(a1,b,t)", &[], Draw::EllPairSameBetaTheta,
            |i| c().ge(i.p.alpha(), i.q.alpha()).le(i.p.theta(), 1.0), Order(St, K, K1)),
        case("ELL-ST-COR-2", "b<=b1, t<=1 => K(a,b,t) <=st K(a,b1,t)", &[], Draw::EllPairSameAlphaTheta,
            |i| c().le(i.p.beta(), i.q.beta()).le(i.p.theta(), 1.0), Order(St, K, K1)),
        case("ELL-ST-COR-3", "t<t1<=1, a^(t1-t) > t/t1, (1-t)/(a^t t) > (1-t1)/(a^t1 t1) => K(a,b,t) <=st K(a,b,t1)",
            &[], Draw::EllPairSameAlphaBeta,
            |i| {
                let (a, t, t1) = (i.p.alpha(), i.p.theta(), i.q.theta());
                c().lt(t, t1)
                    .le(t1, 1.0)
                    .gt(pow(a, t1 - t), t / t1)
                    .gt((1.0 - t) / (pow(a, t) * t), (1.0 - t1) / (pow(a, t1) * t1))
            },
            Order(St, K, K1)),
        case("DOMO-ODDS-POINTWISE", "(ST1) or (ST2) => odds(G) <= odds(G1)", &[], Draw::EllPairMixed,
            |i| st1(i).or(st2(i)), Conclusion::OddsBelow(G, G1)),
        case("DOMO-ST-CROSSFAMILY", "(ST1) or (ST2) => G1 <=st G", &[], Draw::EllPairMixed,
            |i| st1(i).or(st2(i)), Order(St, G1, G)),
        // ELL hazard rate order
        case("ELL-HR-GEN", "(HR1)-(HR4), a, a1 > 0 => K <=hr K1", &[], Draw::EllPairPositive,
            |i| {
                let (a, b, t) = (i.p.alpha(), i.p.beta(), i.p.theta());
                let (a1, b1, t1) = (i.q.alpha(), i.q.beta(), i.q.theta());
                c().gt(a, 0.0)
                    .gt(a1, 0.0)
                    .le(b * t * pow(a, t - 1.0), b1 * t1 * pow(a1, t1 - 1.0))
                    .le(b * t * pow(a, t), b1 * t1 * pow(a1, t1))
                    .lt(t, t1)
                    .ge((1.0 - a1) * (t1 - 1.0), 0.0)
                    .le((1.0 / a - 1.0) * (t - 1.0), (1.0 / a1 - 1.0) * (t1 - 1.0))
            },
            Order(Hr, K, K1)),
        case("ELL-HR-A0", "a=0, 0<t<=1, a1>0, t<t1, (1-a1)(t1-1)>=0 => K(0,b,t) <=hr K1", &[],
            Draw::EllZeroAlphaPair,
            |i| {
                let (a, t) = (i.p.alpha(), i.p.theta());
                let (a1, t1) = (i.q.alpha(), i.q.theta());
                c().when(a == 0.0)
                    .le(t, 1.0)
                    .gt(a1, 0.0)
                    .lt(t, t1)
                    .ge((1.0 - a1) * (t1 - 1.0), 0.0)
            },
            Order(Hr, K, K1)),
        case("ELL-HR-THETA-EQ", "a>a1>0, b a^(t-1) <= b1 a1^(t-1), tail condition => K(a,b,t) <=hr K(a1,b1,t)",
            &[], Draw::EllPairSameThetaPositive,
            |i| {
                let (a, b, t) = (i.p.alpha(), i.p.beta(), i.p.theta());
                let (a1, b1) = (i.q.alpha(), i.q.beta());
                let mut k = c()
                    .when(t == i.q.theta())
                    .gt(a, a1)
                    .gt(a1, 0.0)
                    .le(b * pow(a, t - 1.0), b1 * pow(a1, t - 1.0));
                if t >= 1.0 {
                    k = k.le((1.0 - a) * pow(b, 1.0 / t), (1.0 - a1) * pow(b1, 1.0 / t));
                }
                if t <= 1.0 {
                    k = k.lt(b * pow(a, t), b1 * pow(a1, t));
                }
                k
            },
            Order(Hr, K, K1)),
        case("ELL-HR-THETA-EQ-A0-HR5", "a=0, a1>0, b^(1/t) <= (1-a1) b1^(1/t), (HR5) => K(0,b,t) <=hr K(a1,b1,t)",
            &[], Draw::EllZeroAlphaPairSameTheta,
            |i| {
                let (b, t) = (i.p.beta(), i.p.theta());
                let (a1, b1) = (i.q.alpha(), i.q.beta());
                c().when(i.p.alpha() == 0.0 && t == i.q.theta())
                    .gt(a1, 0.0)
                    .le(pow(b, 1.0 / t), (1.0 - a1) * pow(b1, 1.0 / t))
                    .ge((1.0 - a1) * (t - 1.0), 0.0)
            },
            Order(Hr, K, K1)),
        case("ELL-HR-THETA-EQ-A0-HR6", "a=0, a1>0, b^(1/t) <= (1-a1) b1^(1/t), (HR6) => K(0,b,t) <=hr K(a1,b1,t)",
            &[], Draw::EllZeroAlphaPairSameTheta,
            |i| {
                let (b, t) = (i.p.beta(), i.p.theta());
                let (a1, b1) = (i.q.alpha(), i.q.beta());
                c().when(i.p.alpha() == 0.0 && t == i.q.theta())
                    .gt(a1, 0.0)
                    .le(pow(b, 1.0 / t), (1.0 - a1) * pow(b1, 1.0 / t))
                    .lt((1.0 - a1) * (t - 1.0), 0.0)
                    .ge(hr6_expression(i), 0.0)
            },
            Order(Hr, K, K1)).flagged(CaseFlag::Typo),
        // convex transform and dispersive orders
        case("ELL-CTO-1", "t<=t1, a(t1-1)+a1(1-t)>=0 => K <=c K1", &[], Draw::EllPair,
            |i| {
                let (a, t, a1, t1) = (i.p.alpha(), i.p.theta(), i.q.alpha(), i.q.theta());
                c().le(t, t1).ge(a * (t1 - 1.0) + a1 * (1.0 - t), 0.0)
            },
            Order(C, K, K1)),
        case("ELL-CTO-2", "t>=t1, a(t1-1)+a1(1-t)<=0 => K1 <=c K", &[], Draw::EllPair,
            |i| {
                let (a, t, a1, t1) = (i.p.alpha(), i.p.theta(), i.q.alpha(), i.q.theta());
                c().ge(t, t1).le(a * (t1 - 1.0) + a1 * (1.0 - t), 0.0)
            },
            Order(C, K1, K)),
        case("ELL-CTO-COR-1", "t>=1 => K(0,b,1) <=c K <=c K(0,b,t)", &[], Draw::Ell,
            |i| c().ge(i.p.theta(), 1.0),
            Conclusion::All(vec![Order(C, LawRef::LogLogistic, K), Order(C, K, LawRef::EllZeroAlpha)])),
        case("ELL-CTO-COR-2", "t<=1 => K(0,b,t) <=c K <=c K(0,b,1)", &[], Draw::Ell,
            |i| c().le(i.p.theta(), 1.0),
            Conclusion::All(vec![Order(C, LawRef::EllZeroAlpha, K), Order(C, K, LawRef::LogLogistic)])),
        case("IOR-NESTING", "F <=c K(0,b,1), t>=1 => F <=c K", &[], Draw::Ell,
            |i| c().ge(i.p.theta(), 1.0), Order(C, F, K)).with_premise(C, F, LawRef::LogLogistic),
        case("CROSS-CTO-1", "F in IOR, t, t1 >= 1 => G <=c K1", &[Ior], Draw::DomoEll,
            |i| c().ge(i.p.theta(), 1.0).ge(i.q.theta(), 1.0), Order(C, G, K1)),
        case("CROSS-CTO-2", "F in DOR, t, t1 <= 1 => K1 <=c G", &[Dor], Draw::DomoEll,
            |i| c().le(i.p.theta(), 1.0).le(i.q.theta(), 1.0), Order(C, K1, G)),
        case("CROSS-DISP-1", "F in IOR, t, t1 >= 1, b b1 t t1 f(0) a^(t-1) a1^(t1-1) >= 1 => G <=disp K1",
            &[Ior], Draw::DomoEll,
            |i| c().ge(i.p.theta(), 1.0).ge(i.q.theta(), 1.0).ge(disp_product(i, i.q.alpha()), 1.0),
            Order(Disp, G, K1)),
        case("CROSS-DISP-2", "F in DOR, t, t1 <= 1, b b1 t t1 f(0) a^(t-1) a1^(t1-1) <= 1 => K1 <=disp G",
            &[Dor], Draw::DomoEll,
            |i| c().le(i.p.theta(), 1.0).le(i.q.theta(), 1.0).le(disp_product(i, i.q.alpha()), 1.0),
            Order(Disp, K1, G)),
        case("CROSS-DISP-1-PRINTED", "F in IOR, t, t1 >= 1, b b1 t t1 f(0) a^(t-1) a^(t1-1) >= 1 => G <=disp K1",
            &[Ior], Draw::DomoEll,
            |i| c().ge(i.p.theta(), 1.0).ge(i.q.theta(), 1.0).ge(disp_product(i, i.p.alpha()), 1.0),
            Order(Disp, G, K1)).flagged(CaseFlag::Typo),
        case("CROSS-DISP-2-PRINTED", "F in DOR, t, t1 <= 1, b b1 t t1 f(0) a^(t-1) a^(t1-1) <= 1 => K1 <=disp G",
            &[Dor], Draw::DomoEll,
            |i| c().le(i.p.theta(), 1.0).le(i.q.theta(), 1.0).le(disp_product(i, i.p.alpha()), 1.0),
            Order(Disp, K1, G)).flagged(CaseFlag::Typo),
    ];
    cases.shrink_to_fit();
    cases
}
