//! Effective divisors in factored form and their rational multiples.

use num_rational::Rational64;

use crate::field::Field;

use super::{Form, PolyError};

/// `floor(a / b)` for `b > 0`.
pub fn floor_div(a: i64, b: i64) -> i64 {
    assert!(b > 0, "floor_div needs a positive divisor");
    a.div_euclid(b)
}

/// `sum m_j D_j` with each `D_j` given by a monic form, assumed irreducible;
/// components are pairwise non-associate and multiplicities positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredDivisor {
    field: Field,
    num_vars: usize,
    components: Vec<(Form<Field>, u32)>,
}

impl FactoredDivisor {
    pub fn new(field: &Field, num_vars: usize, components: Vec<(Form<Field>, u32)>) -> Result<Self, PolyError> {
        let mut normalized = Vec::with_capacity(components.len());
        for (f, m) in components {
            if f.ring() != field {
                return Err(PolyError::RingMismatch);
            }
            if f.num_vars() != num_vars {
                return Err(PolyError::ArityMismatch { expected: num_vars, found: f.num_vars() });
            }
            if f.is_zero() {
                return Err(PolyError::ZeroPolynomial);
            }
            if m == 0 {
                return Err(PolyError::ZeroMultiplicity);
            }
            normalized.push((f.monic(), m));
        }
        for i in 0..normalized.len() {
            for j in i + 1..normalized.len() {
                if normalized[i].0 == normalized[j].0 {
                    return Err(PolyError::AssociateComponents(i, j));
                }
            }
        }
        Ok(Self { field: field.clone(), num_vars, components: normalized })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn components(&self) -> &[(Form<Field>, u32)] {
        &self.components
    }

    pub fn degree(&self) -> u64 {
        self.components.iter().map(|(f, m)| f.degree() as u64 * *m as u64).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|(_, m)| *m == 1)
    }

    /// `D_red`.
    pub fn reduced(&self) -> Self {
        Self {
            components: self.components.iter().map(|(f, _)| (f.clone(), 1)).collect(),
            ..self.clone()
        }
    }

    pub fn scaled(&self, k: u32) -> Result<Self, PolyError> {
        if k == 0 {
            return Err(PolyError::ZeroMultiplicity);
        }
        Ok(Self {
            components: self.components.iter().map(|(f, m)| (f.clone(), m * k)).collect(),
            ..self.clone()
        })
    }

    /// `prod D_j^{m_j}`, the monic defining form.
    pub fn product(&self) -> Form<Field> {
        self.components.iter().fold(Form::constant(&self.field, self.num_vars, self.field.one()), |acc, (f, m)| {
            acc.mul(&f.pow(*m)).expect("same ring")
        })
    }

    /// Defining form of `D_red`.
    pub fn reduced_form(&self) -> Form<Field> {
        self.reduced().product()
    }

    pub fn to_q(&self) -> QDivisor {
        QDivisor {
            components: self.components.iter().map(|(f, m)| (f.clone(), Rational64::from_integer(*m as i64))).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundMode {
    Floor,
    Ceil,
    Frac,
}

/// `sum b_j B_j` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisor {
    pub components: Vec<(Form<Field>, Rational64)>,
}

impl QDivisor {
    pub fn scale(&self, c: Rational64) -> Self {
        Self { components: self.components.iter().map(|(f, b)| (f.clone(), b * c)).collect() }
    }

    pub fn round(&self, mode: RoundMode) -> Self {
        let op = |b: Rational64| match mode {
            RoundMode::Floor => b.floor(),
            RoundMode::Ceil => b.ceil(),
            RoundMode::Frac => b - b.floor(),
        };
        Self { components: self.components.iter().map(|(f, b)| (f.clone(), op(*b))).collect() }
    }

    pub fn coefficients(&self) -> Vec<Rational64> {
        self.components.iter().map(|(_, b)| *b).collect()
    }

    pub fn degree(&self) -> Rational64 {
        self.components.iter().map(|(f, b)| b * Rational64::from_integer(f.degree() as i64)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn point(k: &Field) -> Form<Field> {
        Form::variable(k, 2, 0)
    }

    #[test]
    fn rounding_modes() {
        let k = Field::new(5, 1, None).unwrap();
        let b = QDivisor { components: vec![(point(&k), r(3, 2))] };
        assert_eq!(b.round(RoundMode::Floor).coefficients(), vec![r(1, 1)]);
        assert_eq!(b.round(RoundMode::Ceil).coefficients(), vec![r(2, 1)]);
        let c = QDivisor { components: vec![(point(&k), r(-1, 2))] };
        assert_eq!(c.round(RoundMode::Frac).coefficients(), vec![r(1, 2)]);
        assert_eq!(c.round(RoundMode::Floor).coefficients(), vec![r(-1, 1)]);
    }

    #[test]
    fn divisor_validation() {
        let k = Field::new(5, 1, None).unwrap();
        let x = point(&k);
        let two_x = x.scalar_mul(k.from_int(2));
        assert_eq!(
            FactoredDivisor::new(&k, 2, vec![(x.clone(), 1), (two_x, 2)]),
            Err(PolyError::AssociateComponents(0, 1))
        );
        assert_eq!(FactoredDivisor::new(&k, 2, vec![(x.clone(), 0)]), Err(PolyError::ZeroMultiplicity));
        let z = Form::variable(&k, 2, 1);
        let d = FactoredDivisor::new(&k, 2, vec![(x.clone(), 2), (z.clone(), 1)]).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(!d.is_reduced());
        assert_eq!(d.reduced_form(), x.mul(&z).unwrap());
        assert_eq!(d.product(), x.pow(2).mul(&z).unwrap());
        assert_eq!(d.scaled(3).unwrap().reduced(), d.reduced());
    }

    proptest! {
        #[test]
        fn round_down_inequality(n in 1i64..60, i in 0i64..60, m in 1i64..40) {
            prop_assume!(i < n);
            prop_assert!(floor_div(i * m, n) >= m * floor_div(i, n));
        }

        #[test]
        fn floor_plus_frac(a in -200i64..200, b in 1i64..50) {
            let k = Field::new(3, 1, None).unwrap();
            let q = QDivisor { components: vec![(point(&k), r(a, b))] };
            let f = q.round(RoundMode::Floor).coefficients()[0];
            let fr = q.round(RoundMode::Frac).coefficients()[0];
            prop_assert_eq!(f + fr, r(a, b));
            prop_assert!(fr >= r(0, 1) && fr < r(1, 1));
            prop_assert_eq!(f, Rational64::from_integer(floor_div(a, b)));
            prop_assert_eq!(q.round(RoundMode::Ceil).coefficients()[0], -Rational64::from_integer(floor_div(-a, b)));
        }
    }
}
