//! Graded (weight-preserving) coordinate changes of `C[X0, Y0, Y1, Z0, U0]`.

use super::poly::{Vars, WPoly, Wps};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Ring endomorphism `x_i -> images[i]`, each image homogeneous of the
/// weight of `x_i`. Applying `s` to `p` gives `p(s(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubstitution {
    images: Vec<WPoly>,
    inverse: Option<Vec<WPoly>>,
}

fn identity_images(field: Field) -> Vec<WPoly> {
    (0..Wps::count()).map(|i| WPoly::var(field, i).with_degree(Wps::WEIGHTS[i]).expect("variable")).collect()
}

fn check_graded(images: &[WPoly]) -> Result<Field> {
    if images.len() != Wps::count() {
        return Err(Error::NotGraded(format!("need {} images", Wps::count())));
    }
    let field = images[0].field();
    for (i, img) in images.iter().enumerate() {
        if img.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !img.is_homogeneous_of(Wps::WEIGHTS[i]) {
            return Err(Error::NotGraded(format!(
                "image of {} is not homogeneous of degree {}",
                Wps::NAMES[i],
                Wps::WEIGHTS[i]
            )));
        }
    }
    Ok(field)
}

fn compose_images(first: &[WPoly], then: &[WPoly]) -> Vec<WPoly> {
    first
        .iter()
        .zip(Wps::WEIGHTS)
        .map(|(img, &w)| img.compose(then).expect("images checked graded").with_degree(w).expect("grading preserved"))
        .collect()
}

impl GradedSubstitution {
    pub fn new(images: Vec<WPoly>) -> Result<Self> {
        check_graded(&images)?;
        let images =
            images.into_iter().zip(Wps::WEIGHTS).map(|(p, &w)| p.with_degree(w)).collect::<Result<Vec<_>>>()?;
        Ok(GradedSubstitution { images, inverse: None })
    }

    /// Records an inverse after checking both composites are the identity.
    pub fn with_inverse(mut self, inverse: Vec<WPoly>) -> Result<Self> {
        let field = check_graded(&inverse)?;
        if field != self.field() {
            return Err(Error::FieldMismatch);
        }
        let id = identity_images(field);
        if compose_images(&self.images, &inverse) != id || compose_images(&inverse, &self.images) != id {
            return Err(Error::NotGraded("recorded inverse does not invert the substitution".into()));
        }
        self.inverse = Some(inverse);
        Ok(self)
    }

    pub fn identity(field: Field) -> Self {
        GradedSubstitution { images: identity_images(field), inverse: Some(identity_images(field)) }
    }

    /// `x_i -> a^{w_i} x_i`.
    pub fn scaling(a: &Scalar) -> Result<Self> {
        let inv = a.inv().ok_or_else(|| Error::NotInvertible("scaling by zero".into()))?;
        let field = a.field();
        let scaled = |c: &Scalar| {
            identity_images(field).into_iter().zip(Wps::WEIGHTS).map(|(p, &w)| p.scale(&c.pow(w))).collect::<Vec<_>>()
        };
        Ok(GradedSubstitution { images: scaled(a), inverse: Some(scaled(&inv)) })
    }

    pub fn field(&self) -> Field {
        self.images[0].field()
    }

    pub fn images(&self) -> &[WPoly] {
        &self.images
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_identity(&self) -> bool {
        self.images == identity_images(self.field())
    }

    pub fn inverse(&self) -> Option<GradedSubstitution> {
        self.inverse.as_ref().map(|inv| GradedSubstitution { images: inv.clone(), inverse: Some(self.images.clone()) })
    }

    pub fn apply(&self, p: &WPoly) -> Result<WPoly> {
        let out = p.compose(&self.images)?;
        match p.degree_tag() {
            Some(d) => out.with_degree(d),
            None => Ok(out),
        }
    }

    /// The substitution "apply `self`, then `next`": `p -> next(self(p))`.
    pub fn then(&self, next: &GradedSubstitution) -> Result<GradedSubstitution> {
        if self.field() != next.field() {
            return Err(Error::FieldMismatch);
        }
        let images = compose_images(&self.images, &next.images);
        let inverse = match (&self.inverse, &next.inverse) {
            (Some(a), Some(b)) => Some(compose_images(b, a)),
            _ => None,
        };
        Ok(GradedSubstitution { images, inverse })
    }
}

/// `p(s(x))`.
pub fn substitute(p: &WPoly, s: &GradedSubstitution) -> Result<WPoly> {
    s.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wring::{parse_poly, X0};

    fn q(s: &str) -> WPoly {
        parse_poly::<Wps>(s, Field::Rational).unwrap()
    }

    #[test]
    fn non_graded_rejected() {
        let mut imgs = identity_images(Field::Rational);
        imgs[X0] = q("X0 + Y0");
        assert!(matches!(GradedSubstitution::new(imgs), Err(Error::NotGraded(_))));
    }

    #[test]
    fn wrong_inverse_rejected() {
        let mut imgs = identity_images(Field::Rational);
        imgs[3] = q("Z0 + X0^3");
        let s = GradedSubstitution::new(imgs.clone()).unwrap();
        assert!(s.clone().with_inverse(imgs).is_err());
        let mut inv = identity_images(Field::Rational);
        inv[3] = q("Z0 - X0^3");
        assert!(s.with_inverse(inv).is_ok());
    }

    #[test]
    fn scaling_multiplies_by_power_of_degree() {
        let a = Field::Rational.from_i64(3);
        let s = GradedSubstitution::scaling(&a).unwrap();
        let p = q("X0^6 + 2*Y0*Z0*X0 + Z0^2 - X0*U0");
        let sp = s.apply(&p).unwrap();
        assert_eq!(sp, p.scale(&a.pow(6)));
    }
}
