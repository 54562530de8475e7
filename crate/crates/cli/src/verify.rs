//! The cross-module invariant suite behind `qca verify`.

use num_rational::Ratio;
use qca_core::classify::{
    collision_search, find_intertwiner, shift_equivalent, signatures_equal, symmetric_fdqc_check, witness_to_qca,
    z2_enumerate, z2_solve, RepSpectrum,
};
use qca_core::doubled::{doubled_pi0, index_via_doubled};
use qca_core::gnvw::{gnvw_index, gnvw_index_auto, raw_index, EtaMethod};
use qca_core::info_flow::{transport_nu, transport_nu_mutual};
use qca_core::qca::{
    haar_unitary, random_brickwork, shift_qca, spi_example_circuit, symmetric_brickwork, ChainSpec, Interval,
    OnsiteRep, Qca,
};
use qca_core::spi::{lr_decompose, refined_spi_from_parts, spi_from_parts};
use qca_core::tensor::{matmul, Matrix, C64};
use qca_core::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::options::{CliError, Options};
use crate::report::Report;

fn step(r: &mut Report, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
    match f() {
        Ok((ok, detail)) => r.check(name, ok, detail),
        Err(e) => r.check(name, false, format!("error: {e}")),
    }
}

fn one() -> Ratio<u64> {
    Ratio::from_integer(1)
}

fn powers(m: &Matrix, n: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::identity(m.nrows(), m.ncols())];
    for g in 1..n {
        out.push(matmul(&out[g - 1], m));
    }
    out
}

pub fn run(o: &Options) -> std::result::Result<Report, CliError> {
    let seed = o.seed;
    let mut r = Report::new("verify");
    r.input("seed", seed);
    let chain6 = ChainSpec::new(6, 2).map_err(CliError::from)?;
    let twisted = |s: u64| -> Result<Qca> { shift_qca(chain6, 1)?.compose(&random_brickwork(chain6, s)?) };
    let a = Interval::new(0, 2);
    let b = Interval::new(2, 2);

    step(&mut r, "gnvw-shift", || {
        let mut got = Vec::new();
        for d in [2u64, 3] {
            let chain = ChainSpec::new(6, d as usize)?;
            let f = gnvw_index(&shift_qca(chain, 1)?, a, b)?.ratio();
            let back = gnvw_index(&shift_qca(chain, -1)?, a, b)?.ratio();
            let id = gnvw_index(&Qca::identity(chain)?, a, b)?.ratio();
            got.push(f == Ratio::from_integer(d) && back == Ratio::new(1, d) && id == one());
        }
        Ok((got.iter().all(|&x| x), "shift = d, shift† = 1/d, identity = 1 for d = 2, 3".into()))
    });

    step(&mut r, "eta-methods-agree", || {
        let u = twisted(seed)?;
        let x = raw_index(&u, a, b, EtaMethod::Direct)?;
        let y = raw_index(&u, a, b, EtaMethod::Swap)?;
        let rel = (x - y).abs() / x;
        Ok((rel <= 1e-8, format!("relative difference {rel:.3e}")))
    });

    // products must stay narrow enough for n = 6, so the factors are the
    // shift, its inverse and a brickwork
    step(&mut r, "gnvw-multiplicativity", || {
        let s = shift_qca(chain6, 1)?;
        let bw = random_brickwork(chain6, seed)?;
        let u = s.compose(&bw)?;
        let ind = |q: &Qca| gnvw_index(q, a, b).map(|i| i.ratio());
        let (iu, is, ib) = (ind(&u)?, ind(&s)?, ind(&bw)?);
        let back = ind(&u.compose(&s.dagger()?)?)?;
        let ok = iu == is * ib && back == iu * ind(&s.dagger()?)?;
        Ok((ok, format!("ind(SB) = {}/{}, ind(SBS†) = {}/{}", iu.numer(), iu.denom(), back.numer(), back.denom())))
    });

    step(&mut r, "interval-independence", || {
        let u = twisted(seed)?;
        let est = gnvw_index_auto(&u)?;
        let other = gnvw_index(&u, Interval::new(3, 1), Interval::new(4, 1));
        let ok = match other {
            Ok(i) => i.ratio() == est.index.ratio(),
            Err(_) => true,
        };
        Ok((ok, format!("{} placements agree on {}", est.placements.len(), est.index)))
    });

    step(&mut r, "doubled-equals-gnvw", || {
        let u = twisted(seed)?;
        let g = gnvw_index(&u, a, b)?;
        let di = index_via_doubled(&u, a)?;
        let pi0 = doubled_pi0(&u, a, b)?;
        let ok = di.index.ratio() == g.ratio() && pi0.ratio() == g.ratio() * g.ratio();
        Ok((ok, format!("doubled {} and pi0 {} against {}", di.index, pi0, g)))
    });

    step(&mut r, "z3-example", || {
        let rep = OnsiteRep::diagonal(3, &[0, 1, 1])?;
        let l = RepSpectrum::new(vec![1, 0, 2])?;
        let u = spi_example_circuit(6, &rep, &l, &l)?;
        let lr = lr_decompose(&u, &rep, Interval::new(1, 2))?;
        let mut ok = true;
        for g in 1..3 {
            let f = lr.factor(g)?;
            ok &= (spi_from_parts(1.0, f)? - 1.0).abs() <= 1e-8;
            let rind = refined_spi_from_parts(1.0, f, &rep)?;
            ok &= (rind - C64::new(-1.0, 0.0)).norm() <= 1e-8;
            let turned = refined_spi_from_parts(1.0, &f.rephased(1.234), &rep)?;
            ok &= (turned - rind).norm() <= 1e-9;
        }
        Ok((ok, "ind_g = 1, rind_g = -1, stable under rephasing".into()))
    });

    step(&mut r, "collisions", || {
        let mut ok = true;
        for n in [2, 3, 5] {
            ok &= collision_search(n, 6)?.is_empty();
        }
        let pairs = collision_search(4, 4)?;
        for (x, y) in &pairs {
            ok &= signatures_equal(x, y) && !shift_equivalent(x, y)?;
        }
        Ok((ok && !pairs.is_empty(), format!("none for N = 2, 3, 5; {} for N = 4 at dim 4", pairs.len())))
    });

    step(&mut r, "z2-classification", || {
        let w = z2_solve(4, 2, one(), Ratio::from_integer(2), 8)?;
        let mut ok = w.is_some_and(|w| w.satisfies(4, 2, one(), Ratio::from_integer(2)));
        ok &= z2_solve(4, 0, one(), Ratio::from_integer(2), 8)?.is_none();
        ok &= z2_solve(4, 0, one(), one(), 8)?.is_some();
        let set = z2_enumerate(4, 2, 8)?;
        ok &= set.iter().all(|(p0, p1)| {
            let smooth = |x: u64, base: u64| {
                let mut x = x;
                while x % base == 0 {
                    x /= base;
                }
                x == 1
            };
            [*p0.numer(), *p0.denom()].iter().all(|&x| smooth(x, 2)) && [*p1.numer(), *p1.denom()].iter().all(|&x| smooth(x, 2))
        });
        Ok((ok, format!("{} index pairs up to bound 8", set.len())))
    });

    step(&mut r, "witness-construction", || {
        let rep = OnsiteRep::diagonal(2, &[0, 0, 0, 1])?;
        let w = z2_solve(4, 2, one(), Ratio::from_integer(2), 8)?
            .ok_or_else(|| qca_core::QcaError::Domain("no witness".into()))?;
        let wq = witness_to_qca(w, &rep, 4)?;
        Ok((wq.pi0 == one() && wq.pi1 == Some(Ratio::from_integer(2)), format!("built from {w}")))
    });

    step(&mut r, "transport", || {
        let chain = ChainSpec::new(8, 2)?;
        let s = shift_qca(chain, 1)?;
        let nu = transport_nu(&s, 2)?;
        let back = transport_nu(&s.dagger()?, 2)?;
        let bw = random_brickwork(chain, seed)?;
        let nb = transport_nu(&bw, 2)?;
        let paths = (transport_nu_mutual(&s, 2)? - nu).abs().max((transport_nu_mutual(&bw, 2)? - nb).abs());
        let ok = (nu - std::f64::consts::LN_2).abs() <= 1e-8 && (nu + back).abs() <= 1e-9 && nb.abs() <= 1e-8 && paths <= 1e-10;
        Ok((ok, format!("nu(shift) = {nu:.12}, nu(brickwork) = {nb:.3e}, paths differ by {paths:.3e}")))
    });

    step(&mut r, "symmetric-circuit-spectrum", || {
        let z2 = OnsiteRep::diagonal(2, &[0, 1])?;
        let sym = symmetric_fdqc_check(&symmetric_brickwork(chain6, &z2, seed)?, &z2, Interval::new(1, 2))?;
        let rep = OnsiteRep::diagonal(2, &[0, 0, 0, 1])?;
        let shift = symmetric_fdqc_check(&shift_qca(ChainSpec::new(4, 4)?, 1)?, &rep, Interval::new(1, 2))?;
        Ok((sym && !shift, format!("brickwork {sym}, shift {shift}")))
    });

    step(&mut r, "intertwiner", || {
        let rep = OnsiteRep::diagonal(4, &[0, 1, 1, 3])?;
        let rho = powers(rep.mu1(), 4);
        let w = haar_unitary(4, &mut ChaCha8Rng::seed_from_u64(seed));
        let phase = C64::new(0.0, 1.0);
        let rho_p: Vec<Matrix> = powers(&(&w * rep.mu1() * w.adjoint() * phase), 4);
        let t = find_intertwiner(&rho, &rho_p)?;
        let other = powers(OnsiteRep::diagonal(4, &[0, 0, 1, 3])?.mu1(), 4);
        let none = find_intertwiner(&rho, &other).is_err();
        Ok((t.residual <= 1e-8 && none, format!("residual {:.3e}, shift {}", t.residual, t.shift)))
    });

    Ok(r)
}
