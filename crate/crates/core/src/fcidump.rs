//! FCIDUMP text interchange for [`SpatialIntegrals`].
//!
//! The accepted dialect follows the de-facto Molpro convention: a namelist
//! header starting `&FCI` and ending `&END` or `/` with required fields
//! `NORB`, `NELEC`, `MS2` (`ORBSYM`/`ISYM` are parsed and ignored), then
//! free-form records `value i j k l` with 1-based indices. Index patterns
//! classify a record: four nonzero indices are a two-electron integral
//! `(ij|kl)`, `(i j 0 0)` one-electron, `(i 0 0 0)` an orbital energy, and
//! `(0 0 0 0)` the core energy. Unlisted permutations are filled by
//! symmetry; unlisted values are zero.

use crate::integrals::{IntegralsError, SpatialIntegrals};
use crate::util::fmt_f17;
use std::collections::HashMap;
use thiserror::Error;

/// Duplicate records may repeat a value; beyond this tolerance they conflict.
pub const DUPLICATE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum FcidumpError {
    #[error("line {line}: expected '&FCI' namelist header")]
    MissingNamelist { line: usize },
    #[error("header field {field} missing or unparsable")]
    MissingHeaderField { field: &'static str },
    #[error("line {line}: malformed header entry '{entry}'")]
    MalformedHeader { line: usize, entry: String },
    #[error("header not terminated by '&END' or '/'")]
    UnterminatedHeader,
    #[error("line {line}: expected 'value i j k l', got '{record}'")]
    BadRecord { line: usize, record: String },
    #[error("line {line}: index {index} out of range [0, {n_orb}]")]
    IndexOutOfRange { line: usize, index: i64, n_orb: usize },
    #[error("line {line}: index pattern ({i} {j} {k} {l}) is not a recognized record type")]
    UnclassifiableIndices { line: usize, i: usize, j: usize, k: usize, l: usize },
    #[error("line {line}: duplicate entry differs from earlier value by {delta:e}")]
    ConflictingDuplicate { line: usize, delta: f64 },
    #[error(transparent)]
    Invalid(#[from] IntegralsError),
}

fn parse_float(tok: &str) -> Option<f64> {
    // tolerate Fortran D exponents
    let t = tok.replace(['D', 'd'], "E");
    t.parse::<f64>().ok()
}

struct HeaderFields {
    norb: Option<i64>,
    nelec: Option<i64>,
    ms2: Option<i64>,
}

fn parse_header_tokens(
    fields: &mut HeaderFields,
    line_no: usize,
    tokens: &[&str],
) -> Result<(), FcidumpError> {
    let mut it = tokens.iter().peekable();
    while let Some(tok) = it.next() {
        if let Some((key, first)) = tok.split_once('=') {
            let key = key.trim().to_ascii_uppercase();
            let mut values: Vec<&str> = if first.is_empty() { vec![] } else { vec![first] };
            // list-valued keys (ORBSYM) continue until the next KEY= token
            while let Some(peek) = it.peek() {
                if peek.contains('=') {
                    break;
                }
                values.push(it.next().unwrap());
            }
            let scalar = |values: &[&str]| -> Option<i64> {
                if values.len() == 1 {
                    values[0].parse::<i64>().ok()
                } else {
                    None
                }
            };
            match key.as_str() {
                "NORB" => fields.norb = Some(scalar(&values).ok_or(FcidumpError::MalformedHeader { line: line_no, entry: tok.to_string() })?),
                "NELEC" => fields.nelec = Some(scalar(&values).ok_or(FcidumpError::MalformedHeader { line: line_no, entry: tok.to_string() })?),
                "MS2" => fields.ms2 = Some(scalar(&values).ok_or(FcidumpError::MalformedHeader { line: line_no, entry: tok.to_string() })?),
                // ORBSYM, ISYM and anything else: parsed, ignored
                _ => {}
            }
        } else if !tok.is_empty() {
            return Err(FcidumpError::MalformedHeader { line: line_no, entry: tok.to_string() });
        }
    }
    Ok(())
}

/// Parses FCIDUMP text into [`SpatialIntegrals`].
pub fn parse_fcidump(text: &str) -> Result<SpatialIntegrals, FcidumpError> {
    let mut lines = text.lines().enumerate().peekable();

    // locate the header start
    let (first_line_no, first) = loop {
        match lines.next() {
            Some((no, l)) if l.trim().is_empty() => {
                if lines.peek().is_none() {
                    return Err(FcidumpError::MissingNamelist { line: no + 1 });
                }
            }
            Some((no, l)) => break (no + 1, l),
            None => return Err(FcidumpError::MissingNamelist { line: 1 }),
        }
    };
    let trimmed = first.trim_start();
    if !trimmed.to_ascii_uppercase().starts_with("&FCI") {
        return Err(FcidumpError::MissingNamelist { line: first_line_no });
    }

    let mut fields = HeaderFields { norb: None, nelec: None, ms2: None };
    let mut header_done = false;
    let mut data_start: Vec<(usize, String)> = Vec::new();

    let mut process_header_line = |line_no: usize, content: &str, fields: &mut HeaderFields| -> Result<Option<String>, FcidumpError> {
        // header may end mid-line; anything after the terminator is data
        let upper = content.to_ascii_uppercase();
        let (head, rest) = if let Some(pos) = upper.find("&END") {
            (&content[..pos], Some(content[pos + 4..].to_string()))
        } else if let Some(pos) = content.find('/') {
            (&content[..pos], Some(content[pos + 1..].to_string()))
        } else {
            (content, None)
        };
        let cleaned = head.replace(',', " ");
        let tokens: Vec<&str> = cleaned.split_whitespace().collect();
        parse_header_tokens(fields, line_no, &tokens)?;
        Ok(rest)
    };

    let after = process_header_line(first_line_no, &trimmed[4..], &mut fields)?;
    if let Some(rest) = after {
        header_done = true;
        if !rest.trim().is_empty() {
            data_start.push((first_line_no, rest));
        }
    }
    for (no, line) in lines {
        let line_no = no + 1;
        if header_done {
            data_start.push((line_no, line.to_string()));
        } else if let Some(rest) = process_header_line(line_no, line, &mut fields)? {
            header_done = true;
            if !rest.trim().is_empty() {
                data_start.push((line_no, rest));
            }
        }
    }
    if !header_done {
        return Err(FcidumpError::UnterminatedHeader);
    }

    let norb = fields.norb.ok_or(FcidumpError::MissingHeaderField { field: "NORB" })?;
    let nelec = fields.nelec.ok_or(FcidumpError::MissingHeaderField { field: "NELEC" })?;
    let ms2 = fields.ms2.ok_or(FcidumpError::MissingHeaderField { field: "MS2" })?;
    if norb <= 0 {
        return Err(FcidumpError::MissingHeaderField { field: "NORB" });
    }
    let n_orb = norb as usize;

    let mut x = SpatialIntegrals::new(n_orb, nelec.max(0) as usize, ms2 as i32);
    let mut seen_eri: HashMap<(usize, usize, usize, usize), f64> = HashMap::new();
    let mut seen_h: HashMap<(usize, usize), f64> = HashMap::new();
    let mut seen_orb: HashMap<usize, f64> = HashMap::new();
    let mut seen_core: Option<f64> = None;
    let mut orb_energies: Option<Vec<f64>> = None;

    for (line_no, line) in data_start {
        let record = line.trim();
        if record.is_empty() {
            continue;
        }
        let toks: Vec<&str> = record.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(FcidumpError::BadRecord { line: line_no, record: record.to_string() });
        }
        let value = parse_float(toks[0])
            .ok_or_else(|| FcidumpError::BadRecord { line: line_no, record: record.to_string() })?;
        let mut idx = [0usize; 4];
        for (slot, tok) in toks[1..].iter().enumerate() {
            let v: i64 = tok
                .parse()
                .map_err(|_| FcidumpError::BadRecord { line: line_no, record: record.to_string() })?;
            if v < 0 || v > n_orb as i64 {
                return Err(FcidumpError::IndexOutOfRange { line: line_no, index: v, n_orb });
            }
            idx[slot] = v as usize;
        }
        let [i, j, k, l] = idx;

        let check_dup = |old: Option<f64>, line: usize| -> Result<(), FcidumpError> {
            if let Some(prev) = old {
                let delta = (prev - value).abs();
                if delta > DUPLICATE_TOL {
                    return Err(FcidumpError::ConflictingDuplicate { line, delta });
                }
            }
            Ok(())
        };

        match (i, j, k, l) {
            (0, 0, 0, 0) => {
                check_dup(seen_core, line_no)?;
                seen_core = Some(value);
                x.e_core = value;
            }
            (i, 0, 0, 0) => {
                check_dup(seen_orb.insert(i, value), line_no)?;
                orb_energies.get_or_insert_with(|| vec![0.0; n_orb])[i - 1] = value;
            }
            (i, j, 0, 0) => {
                let key = (i.max(j), i.min(j));
                check_dup(seen_h.insert(key, value), line_no)?;
                x.set_h(i - 1, j - 1, value);
            }
            (i, j, k, l) if i != 0 && j != 0 && k != 0 && l != 0 => {
                let (p, q, r, s) = (i - 1, j - 1, k - 1, l - 1);
                let pq = (p.max(q), p.min(q));
                let rs = (r.max(s), r.min(s));
                let key = if pq >= rs { (pq.0, pq.1, rs.0, rs.1) } else { (rs.0, rs.1, pq.0, pq.1) };
                check_dup(seen_eri.insert(key, value), line_no)?;
                x.set_eri(p, q, r, s, value);
            }
            _ => return Err(FcidumpError::UnclassifiableIndices { line: line_no, i, j, k, l }),
        }
    }

    x.orb_energies = orb_energies;
    x.validate()?;
    Ok(x)
}

/// Emits FCIDUMP text; `parse_fcidump(write_fcidump(x))` reproduces `x`
/// exactly (values are printed with 17 significant digits).
pub fn write_fcidump(x: &SpatialIntegrals) -> String {
    let n = x.n_orb;
    let mut out = String::new();
    out.push_str(&format!("&FCI NORB={},NELEC={},MS2={},\n", n, x.n_elec, x.ms2));
    out.push_str("&END\n");

    // canonical two-electron entries: p>=q, r>=s, (pq) >= (rs) as pairs
    for p in 0..n {
        for q in 0..=p {
            for r in 0..=p {
                for s in 0..=r {
                    if (p, q) < (r, s) {
                        continue;
                    }
                    let v = x.eri(p, q, r, s);
                    if v != 0.0 {
                        out.push_str(&format!("{} {} {} {} {}\n", fmt_f17(v), p + 1, q + 1, r + 1, s + 1));
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            let v = x.h(p, q);
            if v != 0.0 {
                out.push_str(&format!("{} {} {} 0 0\n", fmt_f17(v), p + 1, q + 1));
            }
        }
    }
    if let Some(eps) = &x.orb_energies {
        for (i, &v) in eps.iter().enumerate() {
            out.push_str(&format!("{} {} 0 0 0\n", fmt_f17(v), i + 1));
        }
    }
    out.push_str(&format!("{} 0 0 0 0\n", fmt_f17(x.e_core)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_and_core_energy() {
        let x = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.7137 0 0 0 0\n").unwrap();
        assert_eq!(x.n_orb, 2);
        assert_eq!(x.n_elec, 2);
        assert!((x.e_core - 0.7137).abs() < 1e-15);
    }

    #[test]
    fn single_eri_entry_fills_symmetry_only() {
        let x = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.6757 1 1 1 1\n").unwrap();
        assert!((x.eri(0, 0, 0, 0) - 0.6757).abs() < 1e-15);
        for (p, q, r, s) in [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 1, 1), (0, 0, 1, 1)] {
            assert_eq!(x.eri(p, q, r, s), 0.0);
        }
    }

    #[test]
    fn symmetry_fill_from_one_listing() {
        let x = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 2 1 1 1\n").unwrap();
        for (p, q, r, s) in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)] {
            assert!((x.eri(p, q, r, s) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn missing_norb_is_an_error() {
        let e = parse_fcidump("&FCI NELEC=2,MS2=0,\n&END\n").unwrap_err();
        assert!(matches!(e, FcidumpError::MissingHeaderField { field: "NORB" }));
    }

    #[test]
    fn missing_nelec_is_an_error() {
        let e = parse_fcidump("&FCI NORB=2,MS2=0,\n&END\n").unwrap_err();
        assert!(matches!(e, FcidumpError::MissingHeaderField { field: "NELEC" }));
    }

    #[test]
    fn index_out_of_range_reports_line() {
        let e = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 3 1 1 1\n").unwrap_err();
        match e {
            FcidumpError::IndexOutOfRange { line, index, n_orb } => {
                assert_eq!((line, index, n_orb), (3, 3, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn conflicting_duplicate_rejected_matching_allowed() {
        let ok = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 1 1 1 1\n0.5 1 1 1 1\n");
        assert!(ok.is_ok());
        let e = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 1 1 1 1\n0.6 1 1 1 1\n").unwrap_err();
        assert!(matches!(e, FcidumpError::ConflictingDuplicate { line: 4, .. }));
        // symmetry-equivalent listing conflicts too
        let e = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 2 1 1 1\n0.6 1 2 1 1\n").unwrap_err();
        assert!(matches!(e, FcidumpError::ConflictingDuplicate { .. }));
    }

    #[test]
    fn unclassifiable_pattern_rejected() {
        let e = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 1 0 1 1\n").unwrap_err();
        assert!(matches!(e, FcidumpError::UnclassifiableIndices { .. }));
    }

    #[test]
    fn orbital_energy_lines() {
        let x = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n-0.5 1 0 0 0\n0.6 2 0 0 0\n").unwrap();
        assert_eq!(x.orb_energies, Some(vec![-0.5, 0.6]));
    }

    #[test]
    fn header_with_orbsym_and_slash_end() {
        let x = parse_fcidump("&FCI NORB=3, NELEC=2, MS2=0,\n ORBSYM=1,1,1,\n ISYM=1,\n/\n0.1 0 0 0 0\n").unwrap();
        assert_eq!(x.n_orb, 3);
    }

    #[test]
    fn fortran_d_exponent() {
        let x = parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n0.5D+00 1 1 1 1\n").unwrap();
        assert!((x.eri(0, 0, 0, 0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(parse_fcidump("").is_err());
        assert!(parse_fcidump("  \n \n").is_err());
    }

    #[test]
    fn h2_fixture_roundtrip_exact() {
        let x = crate::integrals::tests::h2_fixture();
        let y = parse_fcidump(&write_fcidump(&x)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn zero_eri_writes_no_four_index_lines() {
        let mut x = SpatialIntegrals::new(2, 2, 0);
        x.set_h(0, 0, -1.0);
        x.e_core = 0.5;
        let text = write_fcidump(&x);
        for line in text.lines().skip(2) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            assert!(toks[3] == "0" && toks[4] == "0", "unexpected four-index line: {line}");
        }
    }

    proptest! {
        #[test]
        fn write_parse_is_fixed_point(seed in 0u64..200) {
            let x = crate::integrals::tests::random_integrals(3, 4, seed);
            let once = parse_fcidump(&write_fcidump(&x)).unwrap();
            let twice = parse_fcidump(&write_fcidump(&once)).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(&once, &x);
        }
    }
}
