use crate::error::CliError;
use crate::output::{read, Sink};
use crate::Cli;
use discrete_orthopoly::families::{
    default_truncation, product_basis, product_recurrence, triangle_basis, univariate_basis, univariate_recurrence,
    Family, FamilyBasis, FamilyError, HahnParams, MeixnerParams, TriangleHahnParams,
};
use discrete_orthopoly::io::{from_json, to_json, BasisFile, PointSetFile, Rat, RecurrenceFile, WeightsFile};
use discrete_orthopoly::Recurrence;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
enum Univariate {
    Hahn {
        a: Rat,
        b: Rat,
        #[serde(rename = "N")]
        n: usize,
    },
    Meixner {
        b: Rat,
        c: Rat,
        degree: usize,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
enum Spec {
    Hahn {
        a: Rat,
        b: Rat,
        #[serde(rename = "N")]
        n: usize,
    },
    Meixner {
        b: Rat,
        c: Rat,
        degree: usize,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Product {
        x: Univariate,
        y: Univariate,
        #[serde(default)]
        truncation: Option<usize>,
    },
    Triangle {
        sigma: [Rat; 3],
        #[serde(rename = "N")]
        n: usize,
    },
}

impl Univariate {
    fn family(self) -> Result<(Family, usize), FamilyError> {
        Ok(match self {
            Univariate::Hahn { a, b, n } => (Family::Hahn(HahnParams::new(a.0, b.0, n)?), n),
            Univariate::Meixner { b, c, degree } => (Family::Meixner(MeixnerParams::new(b.0, c.0)?), degree),
        })
    }
}

fn invalid(e: FamilyError) -> CliError {
    CliError::Input(e.to_string())
}

/// Truncation for infinite supports: the flag, then the spec, then the default tail bound.
fn truncation_for(cli: &Cli, spec: Option<usize>, fallback: impl FnOnce() -> usize) -> usize {
    cli.truncation.or(spec).unwrap_or_else(fallback)
}

pub fn run_family(cli: &Cli, sink: &Sink, spec_path: &Path) -> Result<(), CliError> {
    let spec: Spec = from_json(&read(spec_path)?)?;
    let (fb, rec): (FamilyBasis, Option<Recurrence>) = match spec {
        Spec::Hahn { a, b, n } => {
            let f = Family::Hahn(HahnParams::new(a.0, b.0, n).map_err(invalid)?);
            (univariate_basis(&f, n, 0).map_err(invalid)?, Some(univariate_recurrence(&f, n).map_err(invalid)?))
        }
        Spec::Meixner { b, c, degree, truncation } => {
            let p = MeixnerParams::new(b.0, c.0).map_err(invalid)?;
            let t = truncation_for(cli, truncation, || default_truncation(degree, degree, &p));
            let f = Family::Meixner(p);
            (univariate_basis(&f, degree, t).map_err(invalid)?, Some(univariate_recurrence(&f, degree).map_err(invalid)?))
        }
        Spec::Product { x, y, truncation } => {
            let (fx, n) = x.family().map_err(invalid)?;
            let (fy, m) = y.family().map_err(invalid)?;
            let t = truncation_for(cli, truncation, || {
                [(&fx, n), (&fy, m)]
                    .iter()
                    .filter_map(|(f, d)| match f {
                        Family::Meixner(p) => Some(default_truncation(*d, *d, p)),
                        Family::Hahn(_) => None,
                    })
                    .max()
                    .unwrap_or(0)
            });
            (
                product_basis(&fx, &fy, n, m, t).map_err(invalid)?,
                Some(product_recurrence(&fx, &fy, n, m).map_err(invalid)?),
            )
        }
        Spec::Triangle { sigma, n } => {
            let [s1, s2, s3] = sigma;
            let p = TriangleHahnParams::new([s1.0, s2.0, s3.0], n).map_err(invalid)?;
            (triangle_basis(&p).map_err(invalid)?, None)
        }
    };
    let basis = fb.basis().map_err(CliError::from)?;
    sink.emit(&to_json(&BasisFile::from_basis(&basis)))?;
    if sink.out.is_some() {
        sink.emit_sibling("points", &to_json(&PointSetFile::from_points(&fb.points)))?;
        let weights = WeightsFile { values: Some(fb.weights.values().iter().cloned().map(Rat).collect()), uniform: None };
        sink.emit_sibling("weights", &to_json(&weights))?;
        if let Some(rec) = &rec {
            sink.emit_sibling("recurrence", &to_json(&RecurrenceFile::from_recurrence(rec)))?;
        }
    }
    let sizes: Vec<String> = basis.block_sizes().iter().map(usize::to_string).collect();
    sink.say(&format!("{} polynomials on {} points, r = ({})", basis.polys().count(), fb.points.len(), sizes.join(", ")));
    Ok(())
}
