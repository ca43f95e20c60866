//! Mini-language for algebra elements entered on the command line:
//! sums of terms `coef*g_i`, where `g_i` names the basis unit with
//! canonical index i.
//!
//!   expr  := ['-'] term (('+' | '-') term)*
//!   term  := coef '*' basis | coef | basis
//!   coef  := integer | '[' integer (',' integer)* ']'
//!   basis := 'g_' index | 'g' index | 'g' | '1'
//!
//! A bare integer is a multiple of the identity unit; bare `g` is `g_1`;
//! bracketed coefficients give extension-field elements, constant term
//! first. Examples: `1+g`, `2*g_3 - g_1`, `[1,2]*g_2`.

use tga_core::field::FieldElem;
use tga_core::{Algebra, AlgebraElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError(pub String);

impl std::fmt::Display for ExprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "expression error: {}", self.0)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Bracket(Vec<i64>),
    Basis(usize),
    Plus,
    Minus,
    Star,
}

fn tokenize(input: &str, dim: usize) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '[' => {
                let mut j = i + 1;
                let mut cur = String::new();
                let mut vals = Vec::new();
                loop {
                    if j >= chars.len() {
                        return Err(ExprError("unterminated '['".into()));
                    }
                    match chars[j] {
                        ']' => {
                            if !cur.trim().is_empty() {
                                vals.push(parse_int(cur.trim())?);
                            }
                            j += 1;
                            break;
                        }
                        ',' => {
                            vals.push(parse_int(cur.trim())?);
                            cur.clear();
                            j += 1;
                        }
                        ch => {
                            cur.push(ch);
                            j += 1;
                        }
                    }
                }
                out.push(Token::Bracket(vals));
                i = j;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                out.push(Token::Int(parse_int(&text)?));
                i = j;
            }
            'g' => {
                let mut j = i + 1;
                if j < chars.len() && chars[j] == '_' {
                    j += 1;
                }
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let idx = if start == j {
                    1 // bare `g`
                } else {
                    let text: String = chars[start..j].iter().collect();
                    text.parse::<usize>()
                        .map_err(|_| ExprError(format!("bad basis index in \"{text}\"")))?
                };
                if idx >= dim {
                    return Err(ExprError(format!(
                        "basis index {idx} out of range for |G| = {dim}"
                    )));
                }
                out.push(Token::Basis(idx));
                i = j;
            }
            other => return Err(ExprError(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

fn parse_int(s: &str) -> Result<i64, ExprError> {
    s.parse::<i64>().map_err(|_| ExprError(format!("bad integer \"{s}\"")))
}

fn coef_elem(alg: &Algebra, tok: &Token) -> Result<FieldElem, ExprError> {
    let field = alg.field();
    match tok {
        Token::Int(v) => Ok(field.from_i64(*v)),
        Token::Bracket(vals) => {
            if vals.len() != field.k() {
                return Err(ExprError(format!(
                    "coefficient needs {} entries for {}",
                    field.k(),
                    field
                )));
            }
            let coeffs: Vec<u64> =
                vals.iter().map(|&v| v.rem_euclid(field.p() as i64) as u64).collect();
            field
                .elem_from_coeffs(&coeffs)
                .map_err(|e| ExprError(e.to_string()))
        }
        _ => Err(ExprError("expected a coefficient".into())),
    }
}

/// Parses an element expression against the given algebra.
pub fn parse_element(alg: &Algebra, input: &str) -> Result<AlgebraElement, ExprError> {
    let tokens = tokenize(input, alg.dim())?;
    if tokens.is_empty() {
        return Err(ExprError("empty expression".into()));
    }
    let mut acc = alg.zero();
    let mut i = 0;
    let mut sign_negative = false;
    // Leading sign.
    if tokens[0] == Token::Minus {
        sign_negative = true;
        i = 1;
    } else if tokens[0] == Token::Plus {
        i = 1;
    }
    loop {
        // One term.
        let (coef, basis, consumed) = match tokens.get(i) {
            Some(t @ (Token::Int(_) | Token::Bracket(_))) => {
                let coef = coef_elem(alg, t)?;
                match tokens.get(i + 1) {
                    Some(Token::Star) => match tokens.get(i + 2) {
                        Some(Token::Basis(b)) => (coef, *b, 3),
                        _ => return Err(ExprError("expected basis unit after '*'".into())),
                    },
                    _ => (coef, 0, 1),
                }
            }
            Some(Token::Basis(b)) => (alg.field().one(), *b, 1),
            _ => return Err(ExprError("expected a term".into())),
        };
        let coef = if sign_negative { alg.field().neg(&coef) } else { coef };
        acc = acc.add_ref(&alg.unit_scaled(basis, coef));
        i += consumed;
        match tokens.get(i) {
            None => break,
            Some(Token::Plus) => {
                sign_negative = false;
                i += 1;
            }
            Some(Token::Minus) => {
                sign_negative = true;
                i += 1;
            }
            Some(t) => return Err(ExprError(format!("unexpected token {t:?}"))),
        }
    }
    Ok(acc)
}

/// Canonical rendering: terms in index order, identity coefficient bare,
/// unit coefficients dropped, extension coefficients bracketed.
pub fn render_element(e: &AlgebraElement) -> String {
    let alg = e.algebra();
    let field = alg.field();
    let mut parts = Vec::new();
    for (g, c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coef = if field.k() == 1 {
            format!("{}", c.coeffs()[0])
        } else {
            format!(
                "[{}]",
                c.coeffs().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            )
        };
        let part = if g == 0 {
            coef
        } else if *c == field.one() {
            format!("g_{g}")
        } else {
            format!("{coef}*g_{g}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use tga_core::cocycle::FactorSystem;
    use tga_core::field::FieldSpec;
    use tga_core::group::Group;

    fn alg(p: u64, k: usize, n: usize) -> Algebra {
        Algebra::new(FactorSystem::trivial(
            FieldSpec::gf(p, k).unwrap(),
            Arc::new(Group::cyclic(n).unwrap()),
        ))
    }

    #[test]
    fn parse_one_plus_g() {
        let a = alg(3, 1, 2);
        let e = parse_element(&a, "1+g").unwrap();
        assert_eq!(e, a.one() + a.unit(1));
        assert_eq!(render_element(&e), "1 + g_1");
    }

    #[test]
    fn parse_indexed_and_scaled_terms() {
        let a = alg(5, 1, 6);
        let e = parse_element(&a, "2*g_3 - g_1 + 4").unwrap();
        let want = a.unit_scaled(3, a.field().from_u64(2))
            - a.unit(1)
            + a.scalar(a.field().from_u64(4));
        assert_eq!(e, want);
        assert_eq!(render_element(&e), "4 + 4*g_1 + 2*g_3");
        // g7 form is accepted too.
        let e2 = parse_element(&a, "2*g3 + 4 + 4*g1").unwrap();
        assert_eq!(e2, want);
    }

    #[test]
    fn parse_extension_coefficients() {
        let a = alg(2, 2, 3);
        let e = parse_element(&a, "[1,1]*g_2 + [0,1]").unwrap();
        let x_plus_1 = a.field().elem_from_coeffs(&[1, 1]).unwrap();
        let x = a.field().elem_from_coeffs(&[0, 1]).unwrap();
        assert_eq!(e, a.unit_scaled(2, x_plus_1) + a.scalar(x));
        assert_eq!(render_element(&e), "[0,1] + [1,1]*g_2");
    }

    #[test]
    fn negatives_and_leading_sign() {
        let a = alg(7, 1, 2);
        let e = parse_element(&a, "-g + 3").unwrap();
        assert_eq!(e, a.scalar(a.field().from_u64(3)) - a.unit(1));
    }

    #[test]
    fn zero_renders_as_zero() {
        let a = alg(3, 1, 2);
        assert_eq!(render_element(&a.zero()), "0");
        let e = parse_element(&a, "1+2").unwrap();
        assert_eq!(render_element(&e), "0");
    }

    #[test]
    fn parse_errors() {
        let a = alg(3, 1, 2);
        assert!(parse_element(&a, "").is_err());
        assert!(parse_element(&a, "g_9").is_err());
        assert!(parse_element(&a, "2*").is_err());
        assert!(parse_element(&a, "h+1").is_err());
        assert!(parse_element(&a, "[1,2]").is_err()); // k = 1 wants 1 entry
    }

    #[test]
    fn round_trip_through_render() {
        let a = alg(5, 1, 4);
        for idx in [0u64, 1, 17, 123, 624] {
            let e = a.element_from_index(idx);
            let back = parse_element(&a, &render_element(&e)).unwrap();
            assert_eq!(e, back);
        }
    }
}
