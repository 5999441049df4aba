//! Text syntax for elements: a parser and the canonical printer.
//!
//! ```text
//! element := ['+'|'-'] term (('+'|'-') term)*
//! term    := coeff ['*'] factors | coeff | factors
//! coeff   := int ['/' int] | '(' polynomial in q ')'
//! factor  := e(x1,..,xt) | a(x1,..,xt;i) | a*(x1,..,xt;i) | E_i | F_i | K_i | Kinv_i
//!          | factor '^' int
//! ```
//! A bare coefficient stands for that multiple of the identity.

mod format;
mod parse;

pub use format::{format_element, format_tensor, format_word};
pub use parse::parse_element;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::quiver::{AlgebraKind, Alphabet, CartanMatrix, Element, Presentation, Setting};
    use std::sync::Arc;

    fn alphabet(kind: AlgebraKind, ty: &str) -> Arc<Alphabet> {
        let s = Setting::new(CartanMatrix::of_type(ty).unwrap(), 5).unwrap();
        Presentation::build(kind, s).unwrap().alphabet().clone()
    }

    #[test]
    fn trivial_path_and_sum() {
        let al = alphabet(AlgebraKind::UqC, "A1");
        let e = parse_element("e(3)", &al).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.words().next().unwrap().is_trivial());
        assert_eq!(format_element(&al, &parse_element("e(0)+e(1)", &al).unwrap()), "e(0) + e(1)");
        assert_eq!(format_element(&al, &Element::zero()), "0");
        assert_eq!(parse_element("1", &al).unwrap().len(), 5);
    }

    #[test]
    fn composed_path() {
        let al = alphabet(AlgebraKind::UqC, "A1");
        let e = parse_element("a(2;1) a*(2;1)", &al).unwrap();
        let (w, _) = e.leading().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!((w.target(), w.source()), (2, 2));
        assert_eq!(format_element(&al, &e), "a(2;1) a*(2;1)");
        // non-composable
        assert!(parse_element("a(2;1) a(2;1)", &al).unwrap().is_zero());
    }

    #[test]
    fn coefficient_rendering() {
        let al = alphabet(AlgebraKind::UqC, "A1");
        let e = parse_element("(q + q^-1)*e(0)", &al).unwrap();
        assert_eq!(format_element(&al, &e), "(q + q^4)*e(0)");
        let e = parse_element("3/5*e(1) - 2 e(0) - (q^2)*e(2)", &al).unwrap();
        assert_eq!(format_element(&al, &e), "-2*e(0) + 3/5*e(1) - (q^2)*e(2)");
    }

    #[test]
    fn errors_carry_positions() {
        let al = alphabet(AlgebraKind::UqC, "A2");
        match parse_element("a(1,2;3)", &al) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 6);
                assert!(msg.contains("out of range"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("e(1)", &al), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("E_1", &al), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("e(1,2) +", &al), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("e(1,2) $", &al), Err(Error::Parse { pos: 7, .. })));
        let pq = alphabet(AlgebraKind::PathQ, "A1");
        assert!(parse_element("a*(1;1)", &pq).is_err());
    }

    #[test]
    fn quantum_words() {
        let al = alphabet(AlgebraKind::Uq, "A2");
        let e = parse_element("2 - K_1^2 E_2 + (q)*F_1*Kinv_2", &al).unwrap();
        assert_eq!(e.len(), 3);
        let s = format_element(&al, &e);
        assert_eq!(parse_element(&s, &al).unwrap(), e);
        assert_eq!(format_element(&al, &parse_element("K_1^0", &al).unwrap()), "1");
    }
}
