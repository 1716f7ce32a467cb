//! Subcommand implementations. Each returns a finished report or a domain
//! error; exit-code policy lives in main.

pub mod contour;
pub mod gamma;
pub mod rearrange;
pub mod renorm;
pub mod zeta;

use zetalab::Complex64;

use crate::report::Report;

/// A domain or usage failure detected past argument parsing. The optional
/// report still gets written so the error row lands in the output file.
pub struct CmdError {
    pub message: String,
    pub report: Option<Report>,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        CmdError {
            message: message.into(),
            report: None,
        }
    }

    pub fn with_report(message: impl Into<String>, report: Report) -> Self {
        CmdError {
            message: message.into(),
            report: Some(report),
        }
    }
}

pub type CmdResult = Result<Report, CmdError>;

/// Accepts `a`, `a,b`, `a+bi`, `a-bi`, and `bi`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    let err = || format!("cannot parse {t:?} as a complex number");
    if t.is_empty() {
        return Err(err());
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some((re, im)) = t.split_once(',') {
        let re = re.trim().parse::<f64>().map_err(|_| err())?;
        let im = im.trim().parse::<f64>().map_err(|_| err())?;
        return Ok(Complex64::new(re, im));
    }
    let body = t.strip_suffix(['i', 'I']).ok_or_else(err)?;
    // split at the sign that starts the imaginary part, skipping exponent
    // signs and a leading sign on the real part
    let mut split = None;
    let mut prev = '\0';
    for (pos, ch) in body.char_indices() {
        if pos > 0 && (ch == '+' || ch == '-') && prev != 'e' && prev != 'E' {
            split = Some(pos);
        }
        prev = ch;
    }
    match split {
        Some(pos) => {
            let (re, im) = body.split_at(pos);
            let re = re.parse::<f64>().map_err(|_| err())?;
            let im = match im {
                "+" => 1.0,
                "-" => -1.0,
                _ => im.parse::<f64>().map_err(|_| err())?,
            };
            Ok(Complex64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => body.parse::<f64>().map_err(|_| err())?,
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}

pub fn parse_f64_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>()
                .map_err(|_| format!("cannot parse {part:?} as a number"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::parse_complex;

    #[test]
    fn complex_forms_parse() {
        assert_eq!(parse_complex("2").unwrap(), zetalab::Complex64::new(2.0, 0.0));
        assert_eq!(
            parse_complex("-0.5").unwrap(),
            zetalab::Complex64::new(-0.5, 0.0)
        );
        assert_eq!(
            parse_complex("0.5,14.1").unwrap(),
            zetalab::Complex64::new(0.5, 14.1)
        );
        assert_eq!(
            parse_complex("1.5+2i").unwrap(),
            zetalab::Complex64::new(1.5, 2.0)
        );
        assert_eq!(
            parse_complex("1e-3-2e1i").unwrap(),
            zetalab::Complex64::new(1e-3, -20.0)
        );
        assert_eq!(parse_complex("3i").unwrap(), zetalab::Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), zetalab::Complex64::new(0.0, -1.0));
        assert!(parse_complex("nope").is_err());
    }
}
