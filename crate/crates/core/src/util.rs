/// Format a float with 17 significant digits and a signed two-digit
/// exponent, e.g. `-1.2524636057911351E+00`. 17 digits round-trip any f64
/// exactly through parsing.
pub(crate) fn fmt_f17(v: f64) -> String {
    let s = format!("{:.16e}", v);
    let (mantissa, exp) = s.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{}E{}{:02}", mantissa.to_uppercase(), sign, exp.abs())
}
