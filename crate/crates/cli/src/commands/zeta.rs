use anyhow::Result;
use ncg_core::zeta_lab::{
    compare, count_zeros, hardy_z, hardy_z_complex, osc_correlation, semiclassical_area, smooth_n, MAX_T,
};
use serde::Serialize;
use serde_json::json;

use super::{report_for, tol, usage, write_csv};
use crate::config::{parse_grid, RunConfig, ZetaCmd};
use crate::report::{num, Report};
use crate::InModule;

const M: &str = "zeta_lab";

#[derive(Serialize)]
struct ZeroRow {
    index: usize,
    ordinate: f64,
}

#[derive(Serialize)]
struct CompareCsv {
    #[serde(rename = "E")]
    e: f64,
    #[serde(rename = "N")]
    n: usize,
    smooth: f64,
    osc_measured: f64,
    osc_predicted: f64,
}

pub fn run(cfg: &RunConfig, cmd: &ZetaCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    match cmd {
        ZetaCmd::Count { e, resolution } => {
            let zc = count_zeros(*e, *resolution).in_module(M)?;
            let smooth = smooth_n(*e).in_module(M)?;
            // N − smooth is the argument term S(E), of size below 1 on this range.
            rep.within("N(E) stays within 2 of its smooth part", zc.count as f64, smooth - 2.0, smooth + 2.0);
            rep.check("ordinates increase", zc.zeros.ordinates.windows(2).all(|w| w[0] < w[1]), zc.count);
            rep.warn_unless("no stretch suspected of hiding a close pair", !zc.warning(), json!(zc.suspected_missed));
            rep.set("count", zc.count);
            rep.set("smooth", num(smooth));
            rep.set("ordinates", zc.zeros.ordinates.iter().map(|&t| num(t)).collect::<Vec<_>>());
            if let Some(path) = &cfg.csv {
                write_csv(path, zc.zeros.ordinates.iter().enumerate().map(|(i, &t)| ZeroRow { index: i + 1, ordinate: t }))?;
            }
        }
        ZetaCmd::Compare { e_grid, p_max, m_max } => {
            let grid = parse_grid("E-grid", e_grid)?;
            let rows = compare(&grid, *p_max, *m_max).in_module(M)?;
            let worst = rows.iter().fold(0.0f64, |m, r| m.max((r.osc_measured - r.osc_predicted).abs()));
            rep.within("max |measured − predicted oscillation|", worst, 0.0, tol(cfg, 1.5));
            if rows.len() >= 3 {
                let r = osc_correlation(&rows).in_module(M)?;
                rep.within("correlation of measured and predicted oscillation", r, 0.5, 1.0);
            }
            rep.set(
                "rows",
                rows.iter()
                    .map(|r| json!({"E": num(r.e), "N": r.n, "smooth": num(r.smooth), "osc_measured": num(r.osc_measured), "osc_predicted": num(r.osc_predicted)}))
                    .collect::<Vec<_>>(),
            );
            if let Some(path) = &cfg.csv {
                write_csv(
                    path,
                    rows.iter().map(|r| CompareCsv {
                        e: r.e,
                        n: r.n,
                        smooth: r.smooth,
                        osc_measured: r.osc_measured,
                        osc_predicted: r.osc_predicted,
                    }),
                )?;
            }
        }
        ZetaCmd::Hardy { t } => {
            if !(t.abs() <= MAX_T) {
                return Err(usage("t", format!("|t| must not exceed {MAX_T}")));
            }
            let z = hardy_z(*t).in_module(M)?;
            let zc = hardy_z_complex(*t).in_module(M)?;
            rep.close("Z(t) is real", zc.im, 0.0, tol(cfg, 1e-8) * (1.0 + zc.re.abs()));
            rep.set("Z", num(z));
        }
        ZetaCmd::Area { e, lambda } => {
            let a = semiclassical_area(*e, *lambda).in_module(M)?;
            rep.close("quadrature matches the closed form", a.relative_gap(), 0.0, tol(cfg, 1e-6));
            rep.set("numeric", num(a.numeric));
            rep.set("closed_form", num(a.closed_form));
        }
    }
    Ok(rep)
}
