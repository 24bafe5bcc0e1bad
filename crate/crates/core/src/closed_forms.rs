//! Entrywise formulas, as rational functions of `γ`, for the rational
//! rotators with `m ∈ {2, 3, 4}` and the scalar circular shifts with
//! `m ∈ {2, 3}`; plus a routine that diffs them against the polynomial
//! closed forms.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::displacement::projector_fix;
use crate::error::{Error, Result};
use crate::isometry::FiniteOrderIsometry;
use crate::matrix::DenseMatrix;
use crate::oracle::materialize;
use crate::polynomial::PolynomialOperator;
use crate::resolvent::{resolvent_inverse_operator, resolvent_operator, yosida_inverse_operator, yosida_operator};

/// Entrywise tolerance for [`reproduce`].
pub const REPRODUCTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Isometry,
    FixedProjector,
    Resolvent,
    InverseResolvent,
    Yosida,
    InverseYosida,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Isometry,
        Family::FixedProjector,
        Family::Resolvent,
        Family::InverseResolvent,
        Family::Yosida,
        Family::InverseYosida,
    ];

    pub fn needs_gamma(self) -> bool {
        !matches!(self, Family::Isometry | Family::FixedProjector)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Isometry => "R",
            Family::FixedProjector => "P_D",
            Family::Resolvent => "J_{gM}",
            Family::InverseResolvent => "J_{gM^-1}",
            Family::Yosida => "Yosida(M)",
            Family::InverseYosida => "Yosida(M^-1)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "m", rename_all = "snake_case")]
pub enum Example {
    Rotator(usize),
    Shift(usize),
}

impl Example {
    pub const ALL: [Example; 5] =
        [Example::Rotator(2), Example::Rotator(3), Example::Rotator(4), Example::Shift(2), Example::Shift(3)];

    pub fn isometry(self) -> Result<FiniteOrderIsometry> {
        match self {
            Example::Rotator(m) => FiniteOrderIsometry::rotator(m, 1),
            Example::Shift(m) => FiniteOrderIsometry::circular_shift(m, 1),
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Example::Rotator(m) => write!(f, "rotator m={m}"),
            Example::Shift(m) => write!(f, "shift m={m}"),
        }
    }
}

fn mat(scale: f64, rows: &[&[f64]]) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    DenseMatrix::from_rows(&rows).expect("well-formed literal").scaled(scale)
}

/// The written-out matrix for `family` on `example`, or `None` outside the
/// tabulated range.
pub fn tabulated(example: Example, family: Family, gamma: f64) -> Option<DenseMatrix> {
    let g = gamma;
    let s3 = 3f64.sqrt();
    let m = match (example, family) {
        (Example::Rotator(2), Family::Isometry) => mat(1.0, &[&[-1.0, 0.0], &[0.0, -1.0]]),
        (Example::Rotator(3), Family::Isometry) => mat(0.5, &[&[-1.0, -s3], &[s3, -1.0]]),
        (Example::Rotator(4), Family::Isometry) => mat(1.0, &[&[0.0, -1.0], &[1.0, 0.0]]),
        (Example::Rotator(2..=4), Family::FixedProjector) => DenseMatrix::zeros(2, 2),

        (Example::Rotator(2), Family::Resolvent) => DenseMatrix::identity(2).scaled(1.0 / (1.0 + 2.0 * g)),
        (Example::Rotator(2), Family::InverseResolvent) => DenseMatrix::identity(2).scaled(2.0 / (2.0 + g)),
        (Example::Rotator(2), Family::Yosida) => DenseMatrix::identity(2).scaled(2.0 / (1.0 + 2.0 * g)),
        (Example::Rotator(2), Family::InverseYosida) => DenseMatrix::identity(2).scaled(1.0 / (2.0 + g)),

        (Example::Rotator(3), Family::Resolvent) => mat(
            1.0 / (2.0 + 6.0 * g + 6.0 * g * g),
            &[&[2.0 + 3.0 * g, -s3 * g], &[s3 * g, 2.0 + 3.0 * g]],
        ),
        (Example::Rotator(3), Family::InverseResolvent) => mat(
            1.0 / (6.0 + 6.0 * g + 2.0 * g * g),
            &[&[6.0 + 3.0 * g, s3 * g], &[-s3 * g, 6.0 + 3.0 * g]],
        ),
        (Example::Rotator(3), Family::Yosida) => mat(
            1.0 / (2.0 + 6.0 * g + 6.0 * g * g),
            &[&[3.0 + 6.0 * g, s3], &[-s3, 3.0 + 6.0 * g]],
        ),
        (Example::Rotator(3), Family::InverseYosida) => mat(
            1.0 / (6.0 + 6.0 * g + 2.0 * g * g),
            &[&[3.0 + 2.0 * g, -s3], &[s3, 3.0 + 2.0 * g]],
        ),

        (Example::Rotator(4), Family::Resolvent) => {
            mat(1.0 / (1.0 + 2.0 * g + 2.0 * g * g), &[&[1.0 + g, -g], &[g, 1.0 + g]])
        }
        (Example::Rotator(4), Family::InverseResolvent) => {
            mat(1.0 / (2.0 + 2.0 * g + g * g), &[&[2.0 + g, g], &[-g, 2.0 + g]])
        }
        (Example::Rotator(4), Family::Yosida) => {
            mat(1.0 / (1.0 + 2.0 * g + 2.0 * g * g), &[&[1.0 + 2.0 * g, 1.0], &[-1.0, 1.0 + 2.0 * g]])
        }
        (Example::Rotator(4), Family::InverseYosida) => {
            mat(1.0 / (2.0 + 2.0 * g + g * g), &[&[1.0 + g, -1.0], &[1.0, 1.0 + g]])
        }

        (Example::Shift(2), Family::Isometry) => mat(1.0, &[&[0.0, 1.0], &[1.0, 0.0]]),
        (Example::Shift(2), Family::FixedProjector) => mat(0.5, &[&[1.0, 1.0], &[1.0, 1.0]]),
        (Example::Shift(2), Family::Resolvent) => mat(1.0 / (1.0 + 2.0 * g), &[&[1.0 + g, g], &[g, 1.0 + g]]),
        (Example::Shift(2), Family::InverseResolvent) => mat(1.0 / (2.0 + g), &[&[1.0, -1.0], &[-1.0, 1.0]]),
        (Example::Shift(2), Family::Yosida) => mat(1.0 / (1.0 + 2.0 * g), &[&[1.0, -1.0], &[-1.0, 1.0]]),
        (Example::Shift(2), Family::InverseYosida) => {
            mat(1.0 / ((2.0 + g) * g), &[&[1.0 + g, 1.0], &[1.0, 1.0 + g]])
        }

        (Example::Shift(3), Family::Isometry) => {
            mat(1.0, &[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])
        }
        (Example::Shift(3), Family::FixedProjector) => mat(1.0 / 3.0, &[&[1.0; 3], &[1.0; 3], &[1.0; 3]]),
        (Example::Shift(3), Family::Resolvent) => {
            let (a, b, c) = ((1.0 + g) * (1.0 + g), g * g, (1.0 + g) * g);
            mat(1.0 / (1.0 + 3.0 * g + 3.0 * g * g), &[&[a, b, c], &[c, a, b], &[b, c, a]])
        }
        (Example::Shift(3), Family::InverseResolvent) => {
            let (a, b, c) = (2.0 + g, -1.0, -(1.0 + g));
            mat(1.0 / (3.0 + 3.0 * g + g * g), &[&[a, b, c], &[c, a, b], &[b, c, a]])
        }
        (Example::Shift(3), Family::Yosida) => {
            let (a, b, c) = (1.0 + 2.0 * g, -g, -1.0 - g);
            mat(1.0 / (1.0 + 3.0 * g + 3.0 * g * g), &[&[a, b, c], &[c, a, b], &[b, c, a]])
        }
        (Example::Shift(3), Family::InverseYosida) => {
            let (a, b, c) = ((1.0 + g) * (1.0 + g), 1.0, 1.0 + g);
            mat(1.0 / ((3.0 + 3.0 * g + g * g) * g), &[&[a, b, c], &[c, a, b], &[b, c, a]])
        }
        _ => return None,
    };
    Some(m)
}

/// The polynomial closed form for `family` over `r`.
pub fn polynomial_form(r: &Arc<FiniteOrderIsometry>, family: Family, gamma: f64) -> Result<PolynomialOperator> {
    match family {
        Family::Isometry => Ok(PolynomialOperator::monomial(r.clone(), 1)),
        Family::FixedProjector => Ok(projector_fix(r)),
        Family::Resolvent => resolvent_operator(r, gamma),
        Family::InverseResolvent => resolvent_inverse_operator(r, gamma),
        Family::Yosida => yosida_operator(r, gamma),
        Family::InverseYosida => yosida_inverse_operator(r, gamma),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproductionEntry {
    pub instance: Example,
    pub family: Family,
    pub gamma: f64,
    pub computed: DenseMatrix,
    pub expected: DenseMatrix,
    pub max_abs_deviation: f64,
    pub pass: bool,
}

/// Materializes every family on every tabulated example at `gamma` and diffs
/// it entrywise against the written-out matrix.
pub fn reproduce(gamma: f64) -> Result<Vec<ReproductionEntry>> {
    let mut out = Vec::new();
    for example in Example::ALL {
        let r = Arc::new(example.isometry()?);
        for family in Family::ALL {
            let computed = materialize(&polynomial_form(&r, family, gamma)?, r.dim())?;
            let expected = tabulated(example, family, gamma)
                .ok_or_else(|| Error::Parameter(format!("no tabulated form for {family} on {example}")))?;
            let dev = computed.max_abs_diff(&expected)?;
            out.push(ReproductionEntry {
                instance: example,
                family,
                gamma,
                computed,
                expected,
                max_abs_deviation: dev,
                pass: dev <= REPRODUCTION_TOL,
            });
        }
    }
    Ok(out)
}
