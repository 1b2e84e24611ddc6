//! Text expressions: operator words applied to the vacuum.
//!
//! An expression is a sum of terms separated by `+`; each term is an
//! optional rational coefficient, a word of operator tokens and `|0>`.
//! Tokens act right to left. The rendered form of every state is itself a
//! valid expression that evaluates back to the same state.
//!
//! Neutral tokens: `phi[p/2]`, `h[n]`, `Lhalf[n]`, `Lhalf~[n]`, `L1[n]`,
//! `L1~[n]`, `Llb[l,b;n]`, `J[k,n]`.
//! Charged tokens: `psi+[n]`, `psi-[n]`, `hA[n]`, `LA[l,b;n]`, `JA[k,n]`.

use std::fmt;
use std::sync::Arc;

use crate::charged::{charged_vacuum, h_a_mode, l_a_family, ChargedClifford, ChargedModeIndex, ChargedMonomial, ChargedState};
use crate::error::ParseError;
use crate::fock::{vacuum_state, CliffordMode, FermionMonomial, FockState, ModeIndex};
use crate::heisenberg::h_mode;
use crate::operator::SharedOp;
use crate::scalar::{parse_scalar, Scalar};
use crate::virasoro::{l1_family, l1_tilde_family, l_half_family, l_half_tilde_family, l_lambda_b_family, VirasoroParams};
use crate::winf::{jk_family_neutral, jk_mode_charged};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvaluatedState<T: Scalar> {
    Neutral(FockState<T>),
    Charged(ChargedState<T>),
}

impl<T: Scalar> fmt::Display for EvaluatedState<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvaluatedState::Neutral(s) => write!(f, "{s}"),
            EvaluatedState::Charged(s) => write!(f, "{s}"),
        }
    }
}

enum Token<T: Scalar> {
    Neutral(SharedOp<FermionMonomial, T>),
    Charged(SharedOp<ChargedMonomial, T>),
}

fn bracket_args<'a>(token: &'a str, name: &str) -> Option<&'a str> {
    token.strip_prefix(name)?.strip_prefix('[')?.strip_suffix(']')
}

fn int(s: &str, token: &str) -> Result<i64, ParseError> {
    s.trim().parse().map_err(|_| ParseError::Malformed(format!("bad integer `{s}` in `{token}`")))
}

fn order(s: &str, token: &str) -> Result<u32, ParseError> {
    s.trim().parse().map_err(|_| ParseError::Malformed(format!("bad order `{s}` in `{token}`")))
}

fn pair<'a>(args: &'a str, sep: char, token: &str) -> Result<(&'a str, &'a str), ParseError> {
    args.split_once(sep)
        .ok_or_else(|| ParseError::Malformed(format!("expected `{sep}` in `{token}`")))
}

/// `l,b;n`
fn lambda_args<T: Scalar>(args: &str, token: &str) -> Result<(T, T, i64), ParseError> {
    let (params, n) = pair(args, ';', token)?;
    let (l, b) = pair(params, ',', token)?;
    Ok((parse_scalar(l.trim())?, parse_scalar(b.trim())?, int(n, token)?))
}

fn parse_token<T: Scalar>(token: &str) -> Result<Token<T>, ParseError> {
    if let Some(a) = bracket_args(token, "phi") {
        let mode: ModeIndex = a.parse()?;
        return Ok(Token::Neutral(Arc::new(CliffordMode(mode))));
    }
    if token.starts_with("psi+[") || token.starts_with("psi-[") {
        let mode: ChargedModeIndex = token.parse()?;
        return Ok(Token::Charged(Arc::new(ChargedClifford(mode))));
    }
    if let Some(a) = bracket_args(token, "hA") {
        return Ok(Token::Charged(Arc::new(h_a_mode::<T>(int(a, token)?))));
    }
    if let Some(a) = bracket_args(token, "LA") {
        let (l, b, n) = lambda_args::<T>(a, token)?;
        return Ok(Token::Charged(l_a_family(l, b).mode(n)));
    }
    if let Some(a) = bracket_args(token, "JA") {
        let (k, n) = pair(a, ',', token)?;
        return Ok(Token::Charged(Arc::new(jk_mode_charged::<T>(order(k, token)?, int(n, token)?))));
    }
    if let Some(a) = bracket_args(token, "h") {
        return Ok(Token::Neutral(Arc::new(h_mode::<T>(int(a, token)?))));
    }
    if let Some(a) = bracket_args(token, "Lhalf~") {
        return Ok(Token::Neutral(l_half_tilde_family().mode(int(a, token)?)));
    }
    if let Some(a) = bracket_args(token, "Lhalf") {
        return Ok(Token::Neutral(l_half_family().mode(int(a, token)?)));
    }
    if let Some(a) = bracket_args(token, "L1~") {
        return Ok(Token::Neutral(l1_tilde_family().mode(int(a, token)?)));
    }
    if let Some(a) = bracket_args(token, "L1") {
        return Ok(Token::Neutral(l1_family().mode(int(a, token)?)));
    }
    if let Some(a) = bracket_args(token, "Llb") {
        let (l, b, n) = lambda_args::<T>(a, token)?;
        return Ok(Token::Neutral(l_lambda_b_family(&VirasoroParams::new(l, b)).mode(n)));
    }
    if let Some(a) = bracket_args(token, "J") {
        let (k, n) = pair(a, ',', token)?;
        return Ok(Token::Neutral(jk_family_neutral(order(k, token)?).mode(int(n, token)?)));
    }
    Err(ParseError::UnknownToken(token.to_string()))
}

fn is_coefficient(token: &str) -> bool {
    let body = token.strip_prefix('-').unwrap_or(token);
    body.starts_with(|c: char| c.is_ascii_digit())
}

/// Split on whitespace, keeping bracketed arguments such as `Llb[1/3, 2/5; 1]` intact.
fn tokenize(text: &str) -> Result<Vec<String>, ParseError> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for c in text.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(ParseError::Malformed(format!("unbalanced `]` in `{text}`")));
        }
        if c.is_whitespace() && depth == 0 {
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        } else {
            current.push(c);
        }
    }
    if depth != 0 {
        return Err(ParseError::Malformed(format!("unbalanced `[` in `{text}`")));
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    Ok(tokens)
}

/// Evaluate an expression exactly.
pub fn evaluate<T: Scalar>(text: &str) -> Result<EvaluatedState<T>, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Malformed("empty expression".into()));
    }
    if tokens.len() == 1 && tokens[0] == "0" {
        return Ok(EvaluatedState::Neutral(FockState::zero()));
    }
    let mut neutral = FockState::<T>::zero();
    let mut charged = ChargedState::<T>::zero();
    let (mut saw_neutral, mut saw_charged) = (false, false);
    for term in tokens.split(|t| t == "+") {
        let Some((last, body)) = term.split_last() else {
            return Err(ParseError::Malformed(format!("empty term in `{text}`")));
        };
        if last != "|0>" {
            return Err(ParseError::Malformed(format!("term must end in `|0>`, found `{last}`")));
        }
        let (coeff, ops) = match body.first() {
            Some(c) if is_coefficient(c) => (parse_scalar::<T>(c)?, &body[1..]),
            _ => (T::one(), body),
        };
        let parsed: Vec<Token<T>> = ops.iter().map(|t| parse_token(t)).collect::<Result<_, _>>()?;
        let is_charged = parsed.iter().any(|t| matches!(t, Token::Charged(_)));
        let is_neutral = parsed.iter().any(|t| matches!(t, Token::Neutral(_)));
        if is_charged && is_neutral {
            return Err(ParseError::Malformed("neutral and charged operators cannot be mixed".into()));
        }
        if is_charged {
            saw_charged = true;
            let s = parsed.iter().rev().fold(charged_vacuum::<T>(), |acc, t| match t {
                Token::Charged(op) => op.apply(&acc),
                Token::Neutral(_) => unreachable!(),
            });
            charged.add_scaled(&s, &coeff);
        } else {
            saw_neutral = true;
            let s = parsed.iter().rev().fold(vacuum_state::<T>(), |acc, t| match t {
                Token::Neutral(op) => op.apply(&acc),
                Token::Charged(_) => unreachable!(),
            });
            neutral.add_scaled(&s, &coeff);
        }
    }
    match (saw_neutral, saw_charged) {
        (true, true) => Err(ParseError::Malformed("neutral and charged terms cannot be added".into())),
        (_, true) => Ok(EvaluatedState::Charged(charged)),
        _ => Ok(EvaluatedState::Neutral(neutral)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::scalar::HalfInteger;
    use crate::Rational as Q;

    fn eval(s: &str) -> String {
        evaluate::<Q>(s).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(eval("h[0] phi[-5/2] |0>"), "-1 phi[-5/2] |0>");
        assert_eq!(eval("Lhalf[0] |0>"), "0");
        assert_eq!(eval("phi[-5/2] phi[-1/2] |0>"), "1 phi[-5/2] phi[-1/2] |0>");
        assert_eq!(eval("L1~[0] |0>"), "1/32 |0>");
        assert_eq!(eval("psi+[-1] psi-[-2] |0>"), "1 psi+[-1] psi-[-2] |0>");
    }

    #[test]
    fn round_trip() {
        for v in enumerate_basis(HalfInteger::from_int(4)) {
            for expr in [format!("h[-1] {v}"), format!("Llb[1/3,2/5;-2] {v}"), format!("J[1,-1] {v}")] {
                let s = evaluate::<Q>(&expr).unwrap();
                assert_eq!(evaluate::<Q>(&s.to_string()).unwrap(), s, "{expr}");
            }
        }
        let s = evaluate::<Q>("JA[2,-1] psi+[-1] |0>").unwrap();
        assert_eq!(evaluate::<Q>(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn errors() {
        assert!(matches!(evaluate::<Q>("foo[1] |0>"), Err(ParseError::UnknownToken(_))));
        assert!(evaluate::<Q>("phi[1] |0>").is_err());
        assert!(evaluate::<Q>("0.5 |0>").is_err());
        assert!(evaluate::<Q>("h[1]").is_err());
        assert!(evaluate::<Q>("h[0] psi+[-1] |0>").is_err());
        assert!(evaluate::<Q>("h[0 |0>").is_err());
    }
}
