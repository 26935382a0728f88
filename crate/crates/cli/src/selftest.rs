//! Golden examples run by `superhopf selftest`.

use superhopf_core::chargroup::{GroupDescriptor, LieFunctional};
use superhopf_core::dgxrep::{self, Dgx, IndecompLabel, Supercomodule};
use superhopf_core::field::Field;
use superhopf_core::hcp::{self, HarishChandraPair, IsoVerdict};
use superhopf_core::hopf::{self, Generator, MonomialHopfSuperalgebra, Tensor};
use superhopf_core::smoothcheck::{self, SuperAlgebraPresentation};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Probe = fn(u64) -> Result<bool, String>;

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn gm_ggx(lambda: i64) -> Result<MonomialHopfSuperalgebra, String> {
    let q = Field::rationals();
    let g = GroupDescriptor::gm();
    let x = LieFunctional::from_ints(&g, &q, &[lambda], &[], &[]).map_err(s)?;
    MonomialHopfSuperalgebra::ggx(&q, &g, &g.identity(), &x).map_err(s)
}

fn hopf_axioms(seed: u64) -> Result<bool, String> {
    Ok(hopf::verify_hopf_axioms(&gm_ggx(1)?, 100, seed).passed())
}

fn tampered_counit(seed: u64) -> Result<bool, String> {
    let mut a = gm_ggx(1)?;
    let z = a.generator_monomial(Generator::Odd);
    a.set_delta(Generator::Odd, Tensor::term(vec![a.one(), z], a.field.one()));
    let r = hopf::verify_hopf_axioms(&a, 20, seed);
    Ok(r.check("counit").is_some_and(|c| !c.passed))
}

fn gx_rejects(_: u64) -> Result<bool, String> {
    let q = Field::rationals();
    let g = GroupDescriptor::gm();
    let x = LieFunctional::from_ints(&g, &q, &[1], &[], &[]).map_err(s)?;
    Ok(hopf::validate_gx(&q, &g, &g.generator(0), &x).is_err())
}

fn pair_checks(_: u64) -> Result<bool, String> {
    let q = Field::rationals();
    let g = GroupDescriptor::gm();
    let y = LieFunctional::from_ints(&g, &q, &[2], &[], &[]).map_err(s)?;
    let mut bad = HarishChandraPair::new(&q, &g, vec![g.generator(0)]).map_err(s)?;
    bad.set_bracket(0, 0, y.clone());
    let mut good = HarishChandraPair::new(&q, &g, vec![g.identity()]).map_err(s)?;
    good.set_bracket(0, 0, y);
    Ok(!hcp::check_pair(&bad).accepted() && hcp::check_pair(&good).accepted())
}

fn counterexample(_: u64) -> Result<bool, String> {
    let q = Field::rationals();
    let r = hcp::counterexample_71(&q, &q.one(), &q.one()).map_err(s)?;
    let split = hcp::counterexample_71(&q, &q.zero(), &q.one()).map_err(s)?;
    let rad = hcp::counterexample_71(&q, &q.one(), &q.zero()).map_err(s)?;
    Ok(!r.splits && r.radical_is_ga && r.super_trigonalizable && r.trigonalizable_but_nonsplit && split.splits && !rad.radical_is_ga)
}

fn iso_classes(_: u64) -> Result<bool, String> {
    let q = Field::rationals();
    let g = GroupDescriptor::gm();
    let one = g.identity();
    let x = |l: i64| LieFunctional::from_ints(&g, &q, &[l], &[], &[]).map_err(s);
    let iso = |a: i64, b: i64| -> Result<bool, String> {
        let r = hcp::iso_ggx(&q, &g, (&one, &x(a)?), (&one, &x(b)?)).map_err(s)?;
        Ok(matches!(r, IsoVerdict::Isomorphic { .. }))
    };
    Ok(iso(1, 4)? && iso(1, -1)? && !iso(1, 2)? && !iso(1, 3)?)
}

fn chain(_: u64) -> Result<bool, String> {
    let q = Field::rationals();
    let g = GroupDescriptor::gm();
    let x = LieFunctional::from_ints(&g, &q, &[1], &[], &[]).map_err(s)?;
    let p = HarishChandraPair::ggx(&q, &g, &g.identity(), &x).map_err(s)?;
    let c = hcp::normal_chain(&p).map_err(s)?;
    Ok(c.odd_count() == 1 && c.all_normal() && c.factors.len() == 1)
}

fn nilpotency(_: u64) -> Result<bool, String> {
    let mu4 = GroupDescriptor::mu(4);
    let t2 = mu4.pow(&mu4.generator(0), 2).map_err(s)?;
    Ok(hcp::nilpotent_ggx(&GroupDescriptor::gm(), &GroupDescriptor::gm().identity()).map_err(s)? && !hcp::nilpotent_ggx(&mu4, &t2).map_err(s)?)
}

fn decomposition(_: u64) -> Result<bool, String> {
    let f5 = Field::prime(5).map_err(s)?;
    let g = GroupDescriptor::mu(4);
    let t2 = g.pow(&g.generator(0), 2).map_err(s)?;
    let a = Dgx::new(&f5, &g, &t2, &LieFunctional::zero(&g, &f5)).map_err(s)?;
    let labels = vec![IndecompLabel::l(g.generator(0), false), IndecompLabel::s(g.identity(), true)];
    let m = Supercomodule::direct_sum_of(&a, &labels).map_err(s)?;
    let d = dgxrep::decompose(&a, &m).map_err(s)?;
    let mut want: Vec<IndecompLabel> = labels.iter().map(|l| l.canonical(&a)).collect();
    let mut got: Vec<IndecompLabel> = d.labels.iter().map(|l| l.canonical(&a)).collect();
    want.sort();
    got.sort();
    Ok(d.verified && want == got)
}

fn smoothness(_: u64) -> Result<bool, String> {
    let q = Field::rationals();
    let ext = SuperAlgebraPresentation::new(&q, &[], &["z"], &[]).map_err(s)?;
    let dual = SuperAlgebraPresentation::new(&q, &["t"], &["z"], &["t^2"]).map_err(s)?;
    let e1 = SuperAlgebraPresentation::e_alpha(3, "1").map_err(s)?;
    let reg = smoothcheck::is_regular(&e1).map_err(s)?;
    Ok(smoothcheck::is_smooth(&ext, 2).map_err(s)?.smooth
        && !smoothcheck::is_smooth(&dual, 2).map_err(s)?.smooth
        && !smoothcheck::is_regular(&dual).map_err(s)?.regular
        && reg.regular
        && reg.declared_axiom
        && !smoothcheck::is_smooth(&e1, 4).map_err(s)?.exterior_iso)
}

fn hochschild(_: u64) -> Result<bool, String> {
    let x = smoothcheck::hochschild_ealpha(3, "x").map_err(s)?;
    let one = smoothcheck::hochschild_ealpha(3, "1").map_err(s)?;
    Ok(x.split && !one.split && x.agrees_with_section_search && one.agrees_with_section_search)
}

fn hopf_smooth(_: u64) -> Result<bool, String> {
    let f5 = Field::prime(5).map_err(s)?;
    let mk = |n: u64| MonomialHopfSuperalgebra::even(&f5, &GroupDescriptor::mu(n)).map_err(s);
    Ok(!smoothcheck::hopf_smooth_reduction(&mk(5)?).smooth && smoothcheck::hopf_smooth_reduction(&mk(3)?).smooth)
}

const PROBES: &[(&str, Probe)] = &[
    ("hopf axioms for (G_m)_{1,y}", hopf_axioms),
    ("dropping z⊗g breaks the counit law", tampered_counit),
    ("g = t with x = y rejected on G_m", gx_rejects),
    ("bracket equivariance", pair_checks),
    ("G_a x G_m counterexample verdicts", counterexample),
    ("iso classes over Q", iso_classes),
    ("normal chain of (G_m)_{1,y}", chain),
    ("nilpotency iff g = 1", nilpotency),
    ("decomposition over mu_4", decomposition),
    ("smooth and regular verdicts", smoothness),
    ("E_x splits, E_1 does not", hochschild),
    ("mu_5 not smooth over F_5, mu_3 smooth", hopf_smooth),
];

pub fn run_all(seed: u64) -> Vec<Check> {
    PROBES
        .iter()
        .map(|(name, probe)| match probe(seed) {
            Ok(passed) => Check { name, passed, detail: String::new() },
            Err(e) => Check { name, passed: false, detail: e },
        })
        .collect()
}
