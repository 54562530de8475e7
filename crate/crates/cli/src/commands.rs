//! One function per subcommand, each producing a report.

use num_rational::Ratio;
use qca_core::classify::{
    collision_search, exact_powered_signature, powered_signature, shift_equivalent, signatures_equal, witness_to_qca,
    z2_solve, RepSpectrum,
};
use qca_core::doubled::{copy_exchange, doubled_pi0, extract_boundary_ops, index_via_doubled, SPLIT_TOLERANCE};
use qca_core::gnvw::{gnvw_index, gnvw_index_auto, raw_index, rational_snap, EtaMethod};
use qca_core::info_flow::{transport_nu, transport_nu_mutual};
use qca_core::qca::{verify_locality, Interval, OnsiteRep, Qca, DENSE_LIMIT};
use qca_core::spi::{
    gaussian_rational_snap, lr_decompose, refined_spi_from_parts, spi_from_parts, symmetry_defect, z2_from_parts,
    SYMMETRY_TOLERANCE,
};
use qca_core::QcaError;
use serde_json::json;

use crate::options::{invalid, CliError, Options};
use crate::report::{complex, ratio, sig, Report};

type Out = Result<Report, CliError>;

fn chain_inputs(r: &mut Report, o: &Options, u: &Qca) {
    r.input("d", u.chain().d());
    r.input("sites", u.chain().n_sites());
    r.input("qca", o.qca.as_deref().unwrap_or(""));
    r.input("xi", u.xi());
}

fn locality_check(r: &mut Report, u: &Qca) -> Result<(), CliError> {
    let ok = verify_locality(u, u.xi())?;
    r.check("locality", ok, format!("operators stay within xi = {}", u.xi()));
    Ok(())
}

pub fn index(o: &Options) -> Out {
    let rep = o.rep()?;
    let u = o.qca(rep.as_ref(), None)?;
    let mut r = Report::new("index");
    chain_inputs(&mut r, o, &u);
    locality_check(&mut r, &u)?;
    let ud = u.dagger()?;
    match o.intervals()? {
        (Some(a), b) => {
            let b = b.unwrap_or_else(|| a.next(a.len(), u.chain()));
            r.input("A", a);
            r.input("B", b);
            let ind = gnvw_index(&u, a, b)?;
            r.index("ind", &ind);
            let direct = raw_index(&u, a, b, EtaMethod::Direct)?;
            let swap = raw_index(&u, a, b, EtaMethod::Swap)?;
            r.real("raw_direct", direct);
            r.real("raw_swap", swap);
            let rel = (direct - swap).abs() / direct.abs();
            r.check("eta-methods-agree", rel <= o.tol, format!("relative difference {rel:.3e}"));
            let inv = gnvw_index(&ud, a, b)?;
            r.index("ind_dagger", &inv);
            r.check("inverse", inv.ratio() * ind.ratio() == Ratio::from_integer(1), format!("ind(U†) = {inv}"));
        }
        (None, Some(_)) => return invalid("give interval A together with B"),
        (None, None) => {
            let est = gnvw_index_auto(&u)?;
            r.index("ind", &est.index);
            r.text("placements", est.placements.len());
            let inv = gnvw_index_auto(&ud)?.index;
            r.index("ind_dagger", &inv);
            r.check("inverse", inv.ratio() * est.index.ratio() == Ratio::from_integer(1), format!("ind(U†) = {inv}"));
        }
    }
    Ok(r)
}

pub fn spi(o: &Options) -> Out {
    let rep = o.require_rep()?;
    let u = o.qca(Some(&rep), None)?;
    let (a, _) = o.intervals()?;
    let a = a.ok_or_else(|| CliError::Validation("spi needs --interval A:start:len".into()))?;
    let mut r = Report::new("spi");
    chain_inputs(&mut r, o, &u);
    r.input("rep", o.rep.as_deref().unwrap_or(""));
    r.input("A", a);
    locality_check(&mut r, &u)?;
    let defect = symmetry_defect(&u, &rep)?;
    r.check("symmetric", defect <= SYMMETRY_TOLERANCE, format!("max |[U, U_g]| = {defect:.3e}"));
    if defect > SYMMETRY_TOLERANCE {
        return Ok(r);
    }

    let est = gnvw_index_auto(&u)?;
    let ind = est.index.float_value();
    r.index("ind", &est.index);
    let lr = lr_decompose(&u, &rep, a)?;
    for g in 1..rep.order() {
        let f = lr.factor(g)?;
        r.real(&format!("residual[{g}]"), f.residual);
        r.check(&format!("factorizes[{g}]"), f.residual <= o.tol, format!("residual {:.3e}", f.residual));
        match spi_from_parts(ind, f) {
            Ok(v) => r.real(&format!("ind_g[{g}]"), v),
            Err(e @ QcaError::UndefinedSpi(_)) => r.text(&format!("ind_g[{g}]"), format!("undefined ({e})")),
            Err(e) => return Err(e.into()),
        }
        match refined_spi_from_parts(ind, f, &rep) {
            Ok(z) => {
                r.complex(&format!("rind_g[{g}]"), z);
                if let Some((re, im)) = gaussian_rational_snap(z, 64, 1e-8) {
                    r.text(&format!("rind_g_snapped[{g}]"), format!("{}+({})i", ratio(&re), ratio(&im)));
                }
                let turned = refined_spi_from_parts(ind, &f.rephased(0.731), &rep)?;
                let dev = (turned - z).norm();
                r.check(&format!("rephasing-invariant[{g}]"), dev <= 1e-9, format!("shift under rephasing {dev:.3e}"));
            }
            Err(e @ QcaError::UndefinedSpi(_)) => r.text(&format!("rind_g[{g}]"), format!("undefined ({e})")),
            Err(e) => return Err(e.into()),
        }
    }
    if rep.order() == 2 {
        let z = z2_from_parts(est.index, lr.factor(1)?, &rep, u.chain().n_sites())?;
        r.index("pi0", &z.pi0);
        match z.pi1 {
            Some(p) => r.index("pi1", &p),
            None => r.text("pi1", "undefined (traceless generator)"),
        }
    }
    Ok(r)
}

/// ℤ₂ generator on `d` levels with trace `chi`.
fn z2_rep(d: u64, chi: i64) -> Result<OnsiteRep, CliError> {
    let plus = (d as i64 + chi) / 2;
    let exps: Vec<i64> = (0..d as i64).map(|k| i64::from(k >= plus)).collect();
    Ok(OnsiteRep::diagonal(2, &exps)?)
}

pub fn classify_z2(o: &Options) -> Out {
    let d = o.require(o.d, "d")? as u64;
    let chi = o.require(o.chi, "chi")?;
    let pi0 = o.ratio(&o.pi0, "pi0")?;
    let pi1 = o.ratio(&o.pi1, "pi1")?;
    let bound = o.max_dim.unwrap_or(8) as u32;
    let mut r = Report::new("classify-z2");
    r.input("d", d);
    r.input("chi", chi);
    r.input("pi0", ratio(&pi0));
    r.input("pi1", ratio(&pi1));
    r.input("exponent_bound", bound);
    let Some(w) = z2_solve(d, chi, pi0, pi1, bound)? else {
        r.text("witness", "none within the exponent bound");
        r.value("feasible", "false".into(), json!(false));
        return Ok(r);
    };
    r.value("feasible", "true".into(), json!(true));
    r.value(
        "witness",
        format!("({},{},{},{},{},{})", w.n1, w.n2, w.alpha0, w.alpha1, w.beta0, w.beta1),
        serde_json::to_value(w).expect("witness serializes"),
    );
    r.check("conditions", w.satisfies(d, chi, pi0, pi1), "exact integer arithmetic");

    let rep = z2_rep(d, chi)?;
    let wq = witness_to_qca(w, &rep, 4)?;
    r.rational("construction_pi0", &wq.pi0);
    let pi1_ok = match wq.pi1 {
        Some(p) => {
            r.rational("construction_pi1", &p);
            p == pi1
        }
        None => {
            r.text("construction_pi1", "undefined");
            chi == 0
        }
    };
    r.check("construction-indices", wq.pi0 == pi0 && pi1_ok, "symbolic indices of the built automaton");
    let super_dim = wq.qca.chain().d();
    if super_dim.checked_pow(4).is_some_and(|t| t <= DENSE_LIMIT) {
        let z = wq.dense_indices()?;
        let ok = z.pi0.ratio() == pi0 && z.pi1.map(|p| p.ratio()) == wq.pi1;
        r.check("construction-dense", ok, format!("dense pi0 = {}, pi1 = {}", z.pi0, z.pi1.map_or("undefined".into(), |p| p.to_string())));
    } else {
        r.text("construction_dense", format!("skipped (supersite dimension {super_dim})"));
    }
    Ok(r)
}

fn signature_text(s: &RepSpectrum) -> String {
    match exact_powered_signature(s) {
        Some(sig) => format!("({})", sig.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")),
        None => format!("({})", powered_signature(s).into_iter().map(complex).collect::<Vec<_>>().join(", ")),
    }
}

pub fn search_collisions(o: &Options) -> Out {
    let n = o.require(o.n, "N")?;
    let max_dim = o.max_dim.unwrap_or(4);
    let mut r = Report::new("search-collisions");
    r.input("N", n);
    r.input("max_dim", max_dim);
    let pairs = collision_search(n, max_dim)?;
    r.text("pairs", pairs.len());
    let mut all = Vec::new();
    for (k, (a, b)) in pairs.iter().enumerate() {
        r.text(&format!("pair[{k}]"), format!("{a} ~ {b}, signature {}", signature_text(a)));
        let ok = signatures_equal(a, b) && !shift_equivalent(a, b)?;
        r.check(&format!("collision[{k}]"), ok, "equal powered signatures, not related by a 1D representation");
        all.push(json!({ "a": a.multiplicities(), "b": b.multiplicities(), "signature": signature_text(a) }));
    }
    r.value("pair_list", format!("{} pairs", all.len()), json!(all));
    Ok(r)
}

pub fn doubled_check(o: &Options) -> Out {
    let rep = o.rep()?;
    let u = o.qca(rep.as_ref(), None)?;
    let (a, b) = o.intervals()?;
    let a = a.unwrap_or(Interval::new(0, 2));
    let n = u.chain().n_sites();
    // the reference placement falls back to the automatic one when A is too wide
    let (ind, b) = match b {
        Some(b) => (gnvw_index(&u, a, b)?, b),
        None if 2 * a.len() + 2 <= n => {
            let b = a.next(a.len(), u.chain());
            (gnvw_index(&u, a, b)?, b)
        }
        None => {
            let est = gnvw_index_auto(&u)?;
            (est.index, est.placements[0].1)
        }
    };
    let mut r = Report::new("doubled-check");
    chain_inputs(&mut r, o, &u);
    r.input("A", a);
    r.input("B", b);
    r.index("ind", &ind);
    let di = index_via_doubled(&u, a)?;
    r.index("ind_doubled", &di.index);
    r.real("ind_doubled_raw", di.raw);
    r.real("inverse_raw", di.inverse_raw);
    r.real("split_residual", di.residual);
    r.check("doubled-equals-gnvw", di.index.ratio() == ind.ratio(), format!("{} vs {}", di.index, ind));
    let dev = (di.inverse_raw * ind.float_value() - 1.0).abs();
    r.check("inverse-ratio", dev <= 1e-6, format!("|ind · inverse_raw − 1| = {dev:.3e}"));
    r.check("split", di.residual <= SPLIT_TOLERANCE, format!("residual {:.3e}", di.residual));
    let pi0 = if a.len() + b.len() + 2 <= n {
        doubled_pi0(&u, a, b)?
    } else {
        let (pa, pb) = gnvw_index_auto(&u)?.placements[0];
        doubled_pi0(&u, pa, pb)?
    };
    r.index("pi0_doubled", &pi0);
    r.check("pi0-is-square", pi0.ratio() == ind.ratio() * ind.ratio(), format!("{pi0} vs ({ind})²"));
    let ops = extract_boundary_ops(&u, a)?;
    r.real("theta", ops.theta);
    r.real("edge_mismatch", ops.right_left_mismatch()?);
    let doubled_dim = u.chain().dense_dim()?.pow(2);
    if doubled_dim <= 256 && u.chain().n_sites() >= 4 {
        let uu = u.stack(&u)?;
        let z = qca_core::spi::z2_indices(&uu, &copy_exchange(u.chain().d())?, a)?;
        let ok = z.pi0.ratio() == ind.ratio() * ind.ratio() && z.pi1.map(|p| p.ratio()) == Some(ind.ratio());
        r.check("dense-doubled", ok, format!("pi0 = {}, pi1 = {}", z.pi0, z.pi1.map_or("-".into(), |p| p.to_string())));
    }
    Ok(r)
}

pub fn transport(o: &Options) -> Out {
    let half = o.require(o.n, "N")?;
    let u = o.qca(o.rep()?.as_ref(), Some(4 * half))?;
    let mut r = Report::new("transport");
    chain_inputs(&mut r, o, &u);
    r.input("N", half);
    r.input("log_base", "e");
    let nu = transport_nu(&u, half)?;
    let nu_mi = transport_nu_mutual(&u, half)?;
    let nu_dag = transport_nu(&u.dagger()?, half)?;
    r.real("nu", nu);
    r.real("nu_mutual_information", nu_mi);
    r.real("nu_dagger", nu_dag);
    r.real("exp_nu", nu.exp());
    let ind = gnvw_index_auto(&u)?.index;
    r.index("ind", &ind);
    let n = u.chain().n_sites() as u32;
    let snapped = rational_snap(nu.exp(), u.chain().d() as u64, 2 * n)?;
    r.check("exp-nu-is-index", snapped.ratio() == ind.ratio(), format!("exp(nu) snaps to {snapped}"));
    r.check("paths-agree", (nu - nu_mi).abs() <= 1e-10, format!("difference {}", sig((nu - nu_mi).abs())));
    r.check("antisymmetry", (nu + nu_dag).abs() <= 1e-9, format!("nu(U) + nu(U†) = {}", sig(nu + nu_dag)));
    Ok(r)
}
