//! Classical identities among covariants of small binary forms.

use serde::Serialize;

use crate::error::Result;
use crate::rational::{int, rat};
use crate::transvectant::{cubic_covariant, generic_form, transvect, Covariant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub d: usize,
    pub holds: bool,
}

fn h(d: usize, q: u32) -> Result<Covariant> {
    let f = generic_form(d);
    transvect(&f, &f, 2 * q)
}

/// `7 (F, (F,F)_2)_3 = (F, (F,F)_4)_1` for the sextic.
pub fn sextic_cubic_identity() -> Result<bool> {
    let f = generic_form(6);
    let lhs = transvect(&f, &h(6, 1)?, 3)?.scale(&int(7));
    let rhs = transvect(&f, &h(6, 2)?, 1)?;
    Ok(lhs.body() == rhs.body() && !lhs.is_zero())
}

/// `H_4 F = 6 (H_2, F)_2` for the quartic.
pub fn quartic_product_identity() -> Result<bool> {
    let f = generic_form(4);
    let lhs = h(4, 2)?.try_mul(&f)?;
    let rhs = transvect(&h(4, 1)?, &f, 2)?.scale(&int(6));
    Ok(lhs.body() == rhs.body() && !lhs.is_zero())
}

/// `(H_4, H_6)_2 = 42/13 (H_2, F^2)_10 + 15876/845 (H_2, H_2)_8 + 10332/715 (H_2, H_4)_6`
/// for the septic.
pub fn septic_three_term_identity() -> Result<bool> {
    let f = generic_form(7);
    let (h2, h4, h6) = (h(7, 1)?, h(7, 2)?, h(7, 3)?);
    let lhs = transvect(&h4, &h6, 2)?;
    let rhs = transvect(&h2, &f.pow(2), 10)?
        .scale(&rat(42, 13))
        .try_add(&transvect(&h2, &h2, 8)?.scale(&rat(15876, 845)))?
        .try_add(&transvect(&h2, &h4, 6)?.scale(&rat(10332, 715)))?;
    Ok(lhs.body() == rhs.body() && !lhs.is_zero())
}

/// `{2, 5} = ((F,F)_2, F)_5 = 0` for the quintic.
pub fn quintic_cubic_vanishes() -> Result<bool> {
    Ok(cubic_covariant(5, 2, 5).is_zero())
}

pub fn all_identities() -> Result<Vec<IdentityCheck>> {
    Ok(vec![
        IdentityCheck {
            name: "7(F,(F,F)_2)_3 = (F,(F,F)_4)_1",
            d: 6,
            holds: sextic_cubic_identity()?,
        },
        IdentityCheck {
            name: "H_4 F = 6(H_2,F)_2",
            d: 4,
            holds: quartic_product_identity()?,
        },
        IdentityCheck {
            name: "(H_4,H_6)_2 three-term relation",
            d: 7,
            holds: septic_three_term_identity()?,
        },
        IdentityCheck {
            name: "{2,5} = 0",
            d: 5,
            holds: quintic_cubic_vanishes()?,
        },
    ])
}
