//! Dense univariate polynomials over a [`Field`].

use crate::field::{Elem, Field, FieldError, FieldResult};

#[derive(Clone, PartialEq)]
pub struct UPoly {
    field: Field,
    c: Vec<Elem>,
}

impl std::fmt::Debug for UPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display("X"))
    }
}

impl UPoly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> UPoly {
        let mut p = UPoly { field: field.clone(), c: coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|e| e.is_zero()) {
            self.c.pop();
        }
    }

    pub fn zero(field: &Field) -> UPoly {
        UPoly { field: field.clone(), c: vec![] }
    }

    pub fn one(field: &Field) -> UPoly {
        UPoly::constant(field.one())
    }

    pub fn constant(a: Elem) -> UPoly {
        UPoly::new(&a.field().clone(), vec![a])
    }

    /// The variable itself.
    pub fn x(field: &Field) -> UPoly {
        UPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(a: Elem, k: usize) -> UPoly {
        let f = a.field().clone();
        let mut c = vec![f.zero(); k];
        c.push(a);
        UPoly::new(&f, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.c.last().cloned()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        UPoly::new(&self.field, c)
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(&self.field, self.c.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &Elem) -> UPoly {
        UPoly::new(&self.field, self.c.iter().map(|b| b * a).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(&self.field, c)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, d: &UPoly) -> FieldResult<(UPoly, UPoly)> {
        let dl = d.leading().ok_or(FieldError::DivisionByZero)?;
        let inv = dl.checked_inv()?;
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let mut q = vec![self.field.zero(); self.c.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let f = &r.leading().unwrap() * &inv;
            let shift = rd - dd;
            q[shift] = &q[shift] + &f;
            for (i, b) in d.c.iter().enumerate() {
                r.c[i + shift] = &r.c[i + shift] - &(&f * b);
            }
            r.trim();
        }
        Ok((UPoly::new(&self.field, q), r))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(l) => self.scale(&l.checked_inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).unwrap().1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * &self.field.from_int(i as i64))
            .collect();
        UPoly::new(&self.field, c)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = self.field.zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let s = a.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', ' ']) => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let body = if body.contains(' ') { format!("({body})") } else { body };
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                body
            } else if body == "1" {
                mon
            } else {
                format!("{body}*{mon}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let k = Field::prime(7).unwrap();
        let x = UPoly::x(&k);
        let one = UPoly::one(&k);
        let a = x.add(&one).mul(&x.sub(&one));
        let b = x.add(&one).pow(2);
        assert_eq!(a.gcd(&b), x.add(&one));
        let (q, r) = b.div_rem(&x.sub(&one)).unwrap();
        assert_eq!(q.mul(&x.sub(&one)).add(&r), b);
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn derivative_in_positive_characteristic() {
        let k = Field::prime(3).unwrap();
        let x = UPoly::x(&k);
        assert!(x.pow(3).derivative().is_zero());
        assert_eq!(x.pow(2).derivative(), x.scale(&k.from_int(2)));
    }
}
