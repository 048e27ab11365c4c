//! Jones-Wenzl idempotents.

use super::element::TLElement;
use crate::chebpoly::quantum_integer;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// The Jones-Wenzl idempotent on `n` strands.
///
/// With loop value `δ = -[2]`, the recursion is
/// `p_{k+1} = p_k ⊗ 1 + ([k]/[k+1]) (p_k ⊗ 1) e_k (p_k ⊗ 1)`,
/// so for instance `p_2 = id + e_1/(q + q⁻¹)`. Fails at the first
/// `[k]_q = 0`.
pub fn jones_wenzl(n: usize, q: &Scalar) -> Result<TLElement> {
    let field = q.field();
    let id1 = TLElement::identity(field, 1);
    let mut p = TLElement::identity(field, n.min(1));
    let mut qk = quantum_integer(1, q)?;
    for k in 1..n {
        let qk1 = quantum_integer(k + 1, q)?;
        if qk1.is_zero() {
            return Err(Error::QuantumIntegerZero(k + 1));
        }
        let lifted = p.tensor(&id1)?;
        let ek = TLElement::e(field, k, k + 1)?;
        let sandwich = lifted.compose(&ek, q)?.compose(&lifted, q)?;
        p = lifted.add(&sandwich.scale(&(&qk / &qk1)))?;
        qk = qk1;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Field;
    use crate::tlcat::TLDiagram;

    #[test]
    fn small_cases() {
        let q = Scalar::q_var();
        assert_eq!(
            jones_wenzl(1, &q).unwrap(),
            TLElement::identity(Field::RationalFunction, 1)
        );
        let p2 = jones_wenzl(2, &q).unwrap();
        let c = (&q + &q.inv().unwrap()).inv().unwrap();
        assert_eq!(p2.coefficient(&TLDiagram::identity(2)), q.one_like());
        assert_eq!(p2.coefficient(&TLDiagram::e(1, 2).unwrap()), c);
    }

    #[test]
    fn root_of_unity_failure() {
        assert!(matches!(
            jones_wenzl(3, &Scalar::zeta(6, 1)),
            Err(Error::QuantumIntegerZero(3))
        ));
        assert!(jones_wenzl(2, &Scalar::zeta(6, 1)).is_ok());
    }

    #[test]
    fn idempotent_and_killed_by_caps() {
        let q = Scalar::q_var();
        for n in 1..=5 {
            let p = jones_wenzl(n, &q).unwrap();
            assert_eq!(p.compose(&p, &q).unwrap(), p, "n = {}", n);
            for i in 1..n {
                let e = TLElement::e(q.field(), i, n).unwrap();
                assert!(p.compose(&e, &q).unwrap().is_zero());
                assert!(e.compose(&p, &q).unwrap().is_zero());
            }
        }
    }
}
