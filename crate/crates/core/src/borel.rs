//! The bivariate q-Borel operator: `q^e x^m y^n -> q^(e + 2 C(m,2) + 4 C(n,2)) x^m y^n`.

use crate::series::{Result, Series, SeriesError};

fn choose2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// Applies the operator to a series over exactly `{q, x, y}`. Terms pushed
/// past the truncation order are dropped.
pub fn borel_apply(a: &Series) -> Result<Series> {
    let vars = a.vars();
    let mut names: Vec<&str> = vars.names().iter().map(String::as_str).collect();
    names.sort_unstable();
    if names != ["q", "x", "y"] {
        return Err(SeriesError::UnsupportedVars {
            expected: "{q, x, y}".into(),
        });
    }
    let (iq, ix, iy) = (vars.trunc_index(), vars.index_of("x")?, vars.index_of("y")?);
    Series::make(
        vars,
        a.order(),
        a.iter().map(|(m, c)| {
            let extra = 2 * choose2(m.get(ix)) + 4 * choose2(m.get(iy));
            (m.with(iq, m.get(iq) + extra), c.clone())
        }),
    )
}

/// [`borel_apply`] for a comparison at order `requested`; rejects inputs
/// built to a lower order.
pub fn borel_apply_at(a: &Series, requested: u32) -> Result<Series> {
    if a.order() < requested {
        return Err(SeriesError::BeyondOrder {
            requested,
            order: a.order(),
        });
    }
    borel_apply(&a.truncate(requested)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::VarSet;

    fn s(v: &std::sync::Arc<VarSet>, n: u32, terms: &[(&str, i64)]) -> Series {
        Series::make(v, n, terms.iter().map(|(m, c)| (v.parse_monomial(m).unwrap(), *c))).unwrap()
    }

    #[test]
    fn examples() {
        let v = VarSet::new(&["q", "x", "y"]).unwrap();
        let a = s(&v, 10, &[("1", 1), ("x*q", 1), ("x^2*q^2", 1)]);
        assert_eq!(
            borel_apply(&a).unwrap(),
            s(&v, 10, &[("1", 1), ("x*q", 1), ("x^2*q^4", 1)])
        );
        let c = Series::constant(&v, 10, 7);
        assert_eq!(borel_apply(&c).unwrap(), c);
        let y = s(&v, 20, &[("y^3*q", 2)]);
        assert_eq!(borel_apply(&y).unwrap(), s(&v, 20, &[("y^3*q^13", 2)]));
        assert!(borel_apply(&s(&v, 6, &[("y^3*q", 2)])).unwrap().is_zero());
    }

    #[test]
    fn rejects_other_variable_sets() {
        let v = VarSet::new(&["q", "x"]).unwrap();
        assert!(matches!(
            borel_apply(&Series::one(&v, 3)),
            Err(SeriesError::UnsupportedVars { .. })
        ));
    }

    #[test]
    fn guard_rejects_short_input() {
        let v = VarSet::new(&["q", "x", "y"]).unwrap();
        assert!(borel_apply_at(&Series::one(&v, 5), 10).is_err());
        assert!(borel_apply_at(&Series::one(&v, 10), 5).is_ok());
    }

    #[test]
    fn not_multiplicative() {
        let v = VarSet::new(&["q", "x", "y"]).unwrap();
        let x = s(&v, 10, &[("x", 1)]);
        let lhs = borel_apply(&(&x * &x)).unwrap();
        let rhs = &borel_apply(&x).unwrap() * &borel_apply(&x).unwrap();
        assert_ne!(lhs, rhs);
    }
}
