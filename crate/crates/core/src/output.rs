//! Delimited-text tables: solutions, summaries, sweeps and plot series.
//!
//! Numbers use the shortest representation that round-trips to the same
//! `f64` (never more than 17 significant digits). Lines end in `\n`.

use std::io::{self, BufRead, Write};

use crate::analysis::{ResidualReport, SweepRow};
use crate::ode::{IvpState, Trajectory};
use crate::problems::Sign;
use crate::scaling::ScaledSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    #[default]
    Comma,
    Tab,
}

impl Delimiter {
    pub fn char(&self) -> char {
        match self {
            Delimiter::Comma => ',',
            Delimiter::Tab => '\t',
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Delimiter::Comma => "csv",
            Delimiter::Tab => "tsv",
        }
    }
}

/// Shortest round-trip formatting; exponent notation outside `[1e-5, 1e16)`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn write_row<W: Write>(w: &mut W, delim: Delimiter, fields: &[String]) -> io::Result<()> {
    let sep = delim.char().to_string();
    writeln!(w, "{}", fields.join(&sep))
}

pub const SOLUTION_HEADER: [&str; 4] = ["eta", "f", "df", "d2f"];

pub fn write_trajectory<W: Write>(
    w: &mut W,
    traj: &Trajectory,
    delim: Delimiter,
) -> io::Result<()> {
    write_row(w, delim, &SOLUTION_HEADER.map(String::from))?;
    for s in &traj.samples {
        write_row(w, delim, &[s.eta, s.f, s.df, s.d2f].map(format_number))?;
    }
    Ok(())
}

/// Reads a table written by [`write_trajectory`].
pub fn read_trajectory<R: BufRead>(
    r: R,
    delim: Delimiter,
    plateau_tol: f64,
) -> io::Result<Trajectory> {
    let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("empty solution table".into()))??;
    let expected = SOLUTION_HEADER.join(&delim.char().to_string());
    if header != expected {
        return Err(bad(format!("unexpected header '{header}'")));
    }
    let mut samples = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let vals: Vec<f64> = line
            .split(delim.char())
            .map(|v| v.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(format!("line {}: {e}", i + 2)))?;
        if vals.len() != 4 {
            return Err(bad(format!("line {}: expected 4 fields", i + 2)));
        }
        samples.push(IvpState::new(vals[0], vals[1], vals[2], vals[3]));
    }
    if samples.is_empty() {
        return Err(bad("solution table has no rows".into()));
    }
    Ok(Trajectory::from_samples(samples, plateau_tol))
}

pub const SUMMARY_HEADER: [&str; 11] = [
    "family",
    "p_star",
    "sign",
    "df_star_inf",
    "lambda",
    "P",
    "f0",
    "df0",
    "d2f0",
    "eta_inf",
    "ode_max_residual",
];

pub fn write_summary<W: Write>(
    w: &mut W,
    sol: &ScaledSolution,
    residual: &ResidualReport,
    delim: Delimiter,
) -> io::Result<()> {
    write_row(w, delim, &SUMMARY_HEADER.map(String::from))?;
    let mut fields = vec![
        sol.family.name().to_string(),
        format_number(sol.p_star),
        sol.sign.to_string(),
    ];
    fields.extend(
        [
            sol.df_star_inf,
            sol.lambda,
            sol.p_physical,
            sol.f0,
            sol.df0,
            sol.d2f0,
            sol.trajectory.eta_inf,
            residual.ode_max,
        ]
        .map(format_number),
    );
    write_row(w, delim, &fields)
}

pub const SWEEP_HEADER: [&str; 12] = [
    "family",
    "p_star",
    "sign",
    "df_star_inf",
    "lambda",
    "P",
    "f0",
    "neg_f0",
    "d2f0",
    "eta_inf",
    "plateau_ok",
    "status",
];

pub fn write_sweep<W: Write>(w: &mut W, rows: &[SweepRow], delim: Delimiter) -> io::Result<()> {
    write_row(w, delim, &SWEEP_HEADER.map(String::from))?;
    for r in rows {
        let mut fields = vec![
            r.family.name().to_string(),
            format_number(r.p_star),
            r.sign.to_string(),
        ];
        fields.extend(
            [
                r.df_star_inf,
                r.lambda,
                r.p_physical,
                r.f0,
                0.0 - r.f0,
                r.d2f0,
                r.eta_inf_used,
            ]
            .map(format_number),
        );
        fields.push(r.plateau_ok.to_string());
        fields.push(r.status().to_string());
        write_row(w, delim, &fields)?;
    }
    Ok(())
}

/// Two-column plot series with the given axis names.
pub fn write_series<W: Write>(
    w: &mut W,
    x_name: &str,
    y_name: &str,
    points: impl IntoIterator<Item = (f64, f64)>,
    delim: Delimiter,
) -> io::Result<()> {
    write_row(w, delim, &[x_name.to_string(), y_name.to_string()])?;
    for (x, y) in points {
        write_row(w, delim, &[format_number(x), format_number(y)])?;
    }
    Ok(())
}

/// One star parameter of a sweep list, with an optional fixed normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PStarEntry {
    pub p_star: f64,
    pub sign: Option<Sign>,
}

/// Parses a list of star parameters: one or more numbers per line separated
/// by whitespace or commas; `#` starts a comment. A line `sign +1` or
/// `sign -1` fixes the normalization of the values that follow it, and
/// `sign auto` clears it.
pub fn parse_p_star_list(text: &str) -> Result<Vec<PStarEntry>, String> {
    let mut out = Vec::new();
    let mut sign = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut tokens = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .peekable();
        if tokens.peek() == Some(&"sign") {
            tokens.next();
            let (Some(value), None) = (tokens.next(), tokens.next()) else {
                return Err(format!("line {}: expected 'sign +1|-1|auto'", i + 1));
            };
            sign = match value {
                "auto" => None,
                v => Some(
                    v.parse::<Sign>()
                        .map_err(|e| format!("line {}: {e}", i + 1))?,
                ),
            };
            continue;
        }
        for tok in tokens {
            let v: f64 = tok
                .parse()
                .map_err(|_| format!("line {}: '{tok}' is not a number", i + 1))?;
            if !v.is_finite() {
                return Err(format!("line {}: '{tok}' is not finite", i + 1));
            }
            out.push(PStarEntry { p_star: v, sign });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_formats() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(1.5), "1.5");
        assert_eq!(format_number(-0.548447), "-0.548447");
        assert_eq!(format_number(5.46e-7), "5.46e-7");
        assert_eq!(format_number(1.55e17), "1.55e17");
        assert_eq!(format_number(f64::NAN), "NaN");
    }

    proptest! {
        #[test]
        fn numbers_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = format_number(x);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
            let digits = s.split(['e', 'E']).next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect::<String>();
            prop_assert!(digits.trim_start_matches('0').len() <= 17);
        }
    }

    #[test]
    fn trajectory_round_trip() {
        let traj = Trajectory::from_samples(
            vec![
                IvpState::new(0.0, 0.0, 0.1, 0.3),
                IvpState::new(0.25, 1.0 / 3.0, 0.7, 1e-9),
            ],
            1e-6,
        );
        let mut buf = Vec::new();
        write_trajectory(&mut buf, &traj, Delimiter::Comma).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("eta,f,df,d2f\n"));
        assert!(!text.contains('\r'));
        let back = read_trajectory(&buf[..], Delimiter::Comma, 1e-6).unwrap();
        assert_eq!(back, traj);
    }

    #[test]
    fn p_star_lists() {
        let values = |t: &str| {
            parse_p_star_list(t)
                .unwrap()
                .iter()
                .map(|e| e.p_star)
                .collect::<Vec<_>>()
        };
        assert_eq!(values("1, 2\n# c\n-0.5 # x\n\n"), vec![1.0, 2.0, -0.5]);
        let e = parse_p_star_list("0 1\nsign -1\n2\nsign auto\n3").unwrap();
        let signs: Vec<_> = e.iter().map(|e| e.sign).collect();
        assert_eq!(signs, vec![None, None, Some(Sign::Minus), None]);
        assert!(parse_p_star_list("sign 2").is_err());
        assert!(parse_p_star_list("sign").is_err());
        assert!(parse_p_star_list("1 a").is_err());
        assert!(parse_p_star_list("inf").is_err());
    }
}
