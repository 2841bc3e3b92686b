//! Multiple-precision evaluation of exact objects.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::exact_algebra::{Polynomial, Rational, RationalFunction};

pub fn to_rug_rational(q: &Rational) -> rug::Rational {
    let n: rug::Integer = q.numer().to_string().parse().expect("integer literal");
    let d: rug::Integer = q.denom().to_string().parse().expect("integer literal");
    rug::Rational::from((n, d))
}

pub fn float(prec: u32, q: &Rational) -> Float {
    Float::with_val(prec, to_rug_rational(q))
}

pub fn complex(prec: u32, q: &Rational) -> Complex {
    Complex::with_val(prec, to_rug_rational(q))
}

pub fn eval_poly_complex(p: &Polynomial, z: &Complex) -> Complex {
    let prec = z.prec().0;
    let mut acc = Complex::new(prec);
    for c in p.coeffs().iter().rev() {
        acc *= z;
        acc += complex(prec, c);
    }
    acc
}

pub fn eval_poly_float(p: &Polynomial, x: &Float) -> Float {
    let prec = x.prec();
    let mut acc = Float::new(prec);
    for c in p.coeffs().iter().rev() {
        acc *= x;
        acc += float(prec, c);
    }
    acc
}

/// Evaluates `f` at `z`; the denominator counts as vanishing when it is
/// below `2^(-prec/2)` relative to the numerator scale.
pub fn eval_ratfunc_complex(f: &RationalFunction, z: &Complex) -> Result<Complex> {
    let prec = z.prec().0;
    let den = eval_poly_complex(f.denominator(), z);
    let num = eval_poly_complex(f.numerator(), z);
    let scale = Float::with_val(prec, num.abs_ref()).max(&Float::with_val(prec, 1));
    let threshold = scale * Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)));
    if Float::with_val(prec, den.abs_ref()) <= threshold {
        return Err(Error::Pole(format!("{}", z)));
    }
    Ok(num / den)
}

pub fn eval_ratfunc_float(f: &RationalFunction, x: &Float) -> Result<Float> {
    let den = eval_poly_float(f.denominator(), x);
    if den.is_zero() {
        return Err(Error::Pole(format!("{}", x)));
    }
    Ok(eval_poly_float(f.numerator(), x) / den)
}
