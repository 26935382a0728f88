//! Exact scalar fields.
//!
//! A [`Field`] is a cheap handle on a validated descriptor; every [`Elem`]
//! carries its field so that mixing elements of different fields is caught.
//! Supported: `Q`, `F_p` (odd prime), `F_p(t)` and `Q(t)` (written `p = 0`),
//! and `Q(sqrt d)` for square-free `d`.

use crate::expr::{self, Expr, Exponent};
use crate::poly::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot parse {input:?} as a field element: {msg}")]
    Parse { input: String, msg: String },
}

pub type FieldResult<T> = Result<T, FieldError>;

/// Serialized form, e.g. `{"kind":"Fpt","p":5,"var":"t"}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    Q,
    Fp { p: u64 },
    Fpt { p: u64, var: String },
    Qsqrt { d: i64 },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Q => write!(f, "Q"),
            FieldDescriptor::Fp { p } => write!(f, "F_{p}"),
            FieldDescriptor::Fpt { p: 0, var } => write!(f, "Q({var})"),
            FieldDescriptor::Fpt { p, var } => write!(f, "F_{p}({var})"),
            FieldDescriptor::Qsqrt { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl std::str::FromStr for FieldDescriptor {
    type Err = FieldError;

    /// Short forms used on the command line: `Q`, `Fp:5`, `Fpt:5:t`, `Qt`, `Qsqrt:-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::InvalidDescriptor(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["Q"] => Ok(FieldDescriptor::Q),
            ["Qt"] => Ok(FieldDescriptor::Fpt { p: 0, var: "t".into() }),
            ["Fp", p] => Ok(FieldDescriptor::Fp { p: p.parse().map_err(|_| bad())? }),
            ["Fpt", p] => Ok(FieldDescriptor::Fpt {
                p: p.parse().map_err(|_| bad())?,
                var: "t".into(),
            }),
            ["Fpt", p, v] => Ok(FieldDescriptor::Fpt {
                p: p.parse().map_err(|_| bad())?,
                var: v.to_string(),
            }),
            ["Qsqrt", d] => Ok(FieldDescriptor::Qsqrt { d: d.parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Square root modulo an odd prime (Tonelli-Shanks); `None` for non-residues.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut q = 2u64;
    while q * q <= n {
        if n % (q * q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Handle on a validated field descriptor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldDescriptor>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq)]
enum Val {
    Q(BigRational),
    P(u64),
    F(UPoly, UPoly),
    S(BigRational, BigRational),
}

/// An element of a [`Field`], kept in canonical form.
#[derive(Clone, PartialEq)]
pub struct Elem {
    field: Field,
    val: Val,
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> FieldResult<Field> {
        match &desc {
            FieldDescriptor::Q => {}
            FieldDescriptor::Fp { p } | FieldDescriptor::Fpt { p, .. } => {
                let zero_ok = matches!(desc, FieldDescriptor::Fpt { .. }) && *p == 0;
                if *p == 2 {
                    return Err(FieldError::InvalidDescriptor(
                        "characteristic 2 is not supported".into(),
                    ));
                }
                if !zero_ok && !is_prime(*p) {
                    return Err(FieldError::InvalidDescriptor(format!("{p} is not an odd prime")));
                }
                if let FieldDescriptor::Fpt { var, .. } = &desc {
                    let ok = !var.is_empty()
                        && var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        && var.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && var != "sqrt";
                    if !ok {
                        return Err(FieldError::InvalidDescriptor(format!(
                            "bad variable name {var:?}"
                        )));
                    }
                }
            }
            FieldDescriptor::Qsqrt { d } => {
                if *d == 0 || *d == 1 || !is_squarefree(*d) {
                    return Err(FieldError::InvalidDescriptor(format!(
                        "{d} is not a square-free non-square"
                    )));
                }
            }
        }
        Ok(Field(Arc::new(desc)))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor::Q))
    }

    pub fn prime(p: u64) -> FieldResult<Field> {
        Field::new(FieldDescriptor::Fp { p })
    }

    /// `F_p(var)`, or `Q(var)` when `p == 0`.
    pub fn function_field(p: u64, var: &str) -> FieldResult<Field> {
        Field::new(FieldDescriptor::Fpt { p, var: var.to_string() })
    }

    pub fn quadratic(d: i64) -> FieldResult<Field> {
        Field::new(FieldDescriptor::Qsqrt { d })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldDescriptor::Fp { p } | FieldDescriptor::Fpt { p, .. } => *p,
            _ => 0,
        }
    }

    /// Every finite extension is separable.
    pub fn is_perfect(&self) -> bool {
        !matches!(&*self.0, FieldDescriptor::Fpt { p, .. } if *p > 0)
    }

    pub fn prime_subfield(&self) -> Field {
        match self.characteristic() {
            0 => Field::rationals(),
            p => Field(Arc::new(FieldDescriptor::Fp { p })),
        }
    }

    pub fn variable(&self) -> Option<&str> {
        match &*self.0 {
            FieldDescriptor::Fpt { var, .. } => Some(var),
            _ => None,
        }
    }

    fn mk(&self, val: Val) -> Elem {
        Elem { field: self.clone(), val }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            FieldDescriptor::Q => self.mk(Val::Q(BigRational::from_integer(n.clone()))),
            FieldDescriptor::Fp { p } => {
                let r = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                self.mk(Val::P(r))
            }
            FieldDescriptor::Fpt { .. } => {
                let k = self.prime_subfield();
                let c = k.from_bigint(n);
                self.mk(Val::F(UPoly::constant(c), UPoly::one(&k)))
            }
            FieldDescriptor::Qsqrt { .. } => self.mk(Val::S(
                BigRational::from_integer(n.clone()),
                BigRational::zero(),
            )),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> FieldResult<Elem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        n.checked_div(&d)
    }

    /// `t` for function fields, `sqrt(d)` for quadratic fields.
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            FieldDescriptor::Fpt { .. } => {
                let k = self.prime_subfield();
                Some(self.mk(Val::F(UPoly::x(&k), UPoly::one(&k))))
            }
            FieldDescriptor::Qsqrt { .. } => {
                Some(self.mk(Val::S(BigRational::zero(), BigRational::one())))
            }
            _ => None,
        }
    }

    /// Image of an element of the prime subfield.
    pub fn embed_prime(&self, a: &Elem) -> FieldResult<Elem> {
        if a.field != self.prime_subfield() {
            return Err(FieldError::DescriptorMismatch(
                a.field.to_string(),
                self.prime_subfield().to_string(),
            ));
        }
        Ok(match (&a.val, &*self.0) {
            (_, FieldDescriptor::Q) | (_, FieldDescriptor::Fp { .. }) => a.clone(),
            (_, FieldDescriptor::Fpt { .. }) => {
                let k = self.prime_subfield();
                self.mk(Val::F(UPoly::constant(a.clone()), UPoly::one(&k)))
            }
            (Val::Q(q), FieldDescriptor::Qsqrt { .. }) => self.mk(Val::S(q.clone(), BigRational::zero())),
            _ => unreachable!(),
        })
    }

    /// Build a rational function `num/den` over the prime subfield.
    pub fn from_fraction(&self, num: UPoly, den: UPoly) -> FieldResult<Elem> {
        if !matches!(&*self.0, FieldDescriptor::Fpt { .. }) {
            return Err(FieldError::Unsupported(format!("{self} is not a function field")));
        }
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.mk(normalize_fraction(num, den)))
    }

    pub fn parse(&self, s: &str) -> FieldResult<Elem> {
        let e = expr::parse(s).map_err(|e| FieldError::Parse {
            input: s.to_string(),
            msg: e.to_string(),
        })?;
        self.eval(&e).map_err(|err| match err {
            FieldError::Parse { msg, .. } => FieldError::Parse { input: s.to_string(), msg },
            other => other,
        })
    }

    pub(crate) fn eval(&self, e: &Expr) -> FieldResult<Elem> {
        let perr = |msg: String| FieldError::Parse { input: String::new(), msg };
        Ok(match e {
            Expr::Num(n) => self.from_bigint(n),
            Expr::Ident(name) => match self.variable() {
                Some(v) if v == name => self.generator().unwrap(),
                _ => return Err(perr(format!("unknown name {name:?} in {self}"))),
            },
            Expr::Call(f, arg) if f == "sqrt" => {
                let d = match &*self.0 {
                    FieldDescriptor::Qsqrt { d } => *d,
                    _ => return Err(perr(format!("sqrt(..) is not an element of {self}"))),
                };
                let a = self.eval(arg)?;
                if a != self.from_int(d) {
                    return Err(perr(format!("only sqrt({d}) is available")));
                }
                self.generator().unwrap()
            }
            Expr::Call(f, _) => return Err(perr(format!("unknown function {f:?}"))),
            Expr::Add(a, b) => self.eval(a)?.checked_add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.checked_sub(&self.eval(b)?)?,
            Expr::Mul(a, b) => self.eval(a)?.checked_mul(&self.eval(b)?)?,
            Expr::Div(a, b) => self.eval(a)?.checked_div(&self.eval(b)?)?,
            Expr::Neg(a) => -self.eval(a)?,
            Expr::Pow(a, Exponent::Int(k)) => self.eval(a)?.pow(*k as i64)?,
            Expr::Pow(a, Exponent::Ident(s)) if s == "p" && self.characteristic() > 0 => {
                self.eval(a)?.pow(self.characteristic() as i64)?
            }
            Expr::Pow(_, Exponent::Ident(s)) => {
                return Err(perr(format!("unknown exponent {s:?}")))
            }
        })
    }

    /// Small random element, used for sampling.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &*self.0 {
            FieldDescriptor::Q => {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=4);
                self.mk(Val::Q(BigRational::new(n.into(), d.into())))
            }
            FieldDescriptor::Fp { p } => self.mk(Val::P(rng.gen_range(0..*p))),
            FieldDescriptor::Fpt { .. } => {
                let k = self.prime_subfield();
                let t = self.generator().unwrap();
                let mut acc = self.zero();
                for i in 0..3 {
                    let c = self.embed_prime(&k.random_elem(rng)).unwrap();
                    acc = &acc + &(&c * &t.pow(i).unwrap());
                }
                if rng.gen_bool(0.3) {
                    let d = &t + &self.from_int(rng.gen_range(1..4));
                    acc = acc.checked_div(&d).unwrap();
                }
                acc
            }
            FieldDescriptor::Qsqrt { .. } => {
                let q = Field::rationals();
                let a = q.random_elem(rng);
                let b = if rng.gen_bool(0.5) { q.random_elem(rng) } else { q.zero() };
                match (a.val, b.val) {
                    (Val::Q(a), Val::Q(b)) => self.mk(Val::S(a, b)),
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Coordinates of each element over the prime subfield, chosen so that
    /// prime-subfield-linear relations among `elems` are exactly the linear
    /// relations among the coordinate vectors.
    pub fn prime_coordinates(&self, elems: &[Elem]) -> FieldResult<Vec<Vec<Elem>>> {
        for e in elems {
            self.check(e)?;
        }
        let k = self.prime_subfield();
        Ok(match &*self.0 {
            FieldDescriptor::Q | FieldDescriptor::Fp { .. } => {
                elems.iter().map(|e| vec![e.clone()]).collect()
            }
            FieldDescriptor::Qsqrt { .. } => elems
                .iter()
                .map(|e| match &e.val {
                    Val::S(a, b) => vec![k.mk(Val::Q(a.clone())), k.mk(Val::Q(b.clone()))],
                    _ => unreachable!(),
                })
                .collect(),
            FieldDescriptor::Fpt { .. } => {
                let mut common = UPoly::one(&k);
                for e in elems {
                    if let Val::F(_, d) = &e.val {
                        let g = common.gcd(d);
                        common = common.mul(&d.div_rem(&g).unwrap().0);
                    }
                }
                let nums: Vec<UPoly> = elems
                    .iter()
                    .map(|e| match &e.val {
                        Val::F(n, d) => n.mul(&common.div_rem(d).unwrap().0),
                        _ => unreachable!(),
                    })
                    .collect();
                let len = nums.iter().map(|n| n.coeffs().len()).max().unwrap_or(0);
                nums.iter()
                    .map(|n| (0..len).map(|i| n.coeff(i)).collect())
                    .collect()
            }
        })
    }

    pub(crate) fn check(&self, e: &Elem) -> FieldResult<()> {
        if &e.field == self {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch(e.field.to_string(), self.to_string()))
        }
    }
}

fn normalize_fraction(num: UPoly, den: UPoly) -> Val {
    if num.is_zero() {
        let k = den.field().clone();
        return Val::F(UPoly::zero(&k), UPoly::one(&k));
    }
    let g = num.gcd(&den);
    let (mut n, _) = num.div_rem(&g).unwrap();
    let (mut d, _) = den.div_rem(&g).unwrap();
    let lc = d.leading().unwrap();
    let inv = lc.checked_inv().unwrap();
    n = n.scale(&inv);
    d = d.scale(&inv);
    Val::F(n, d)
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            Val::Q(q) => q.is_zero(),
            Val::P(a) => *a == 0,
            Val::F(n, _) => n.is_zero(),
            Val::S(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    fn same(&self, o: &Elem) -> FieldResult<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch(self.field.to_string(), o.field.to_string()))
        }
    }

    fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn checked_add(&self, o: &Elem) -> FieldResult<Elem> {
        self.same(o)?;
        let val = match (&self.val, &o.val) {
            (Val::Q(a), Val::Q(b)) => Val::Q(a + b),
            (Val::P(a), Val::P(b)) => Val::P((a + b) % self.p()),
            (Val::F(a, b), Val::F(c, d)) => {
                if b == d {
                    normalize_fraction(a.add(c), b.clone())
                } else {
                    normalize_fraction(a.mul(d).add(&c.mul(b)), b.mul(d))
                }
            }
            (Val::S(a, b), Val::S(c, d)) => Val::S(a + c, b + d),
            _ => unreachable!(),
        };
        Ok(self.field.mk(val))
    }

    pub fn checked_sub(&self, o: &Elem) -> FieldResult<Elem> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Elem) -> FieldResult<Elem> {
        self.same(o)?;
        let val = match (&self.val, &o.val) {
            (Val::Q(a), Val::Q(b)) => Val::Q(a * b),
            (Val::P(a), Val::P(b)) => Val::P(mul_mod(*a, *b, self.p())),
            (Val::F(a, b), Val::F(c, d)) => normalize_fraction(a.mul(c), b.mul(d)),
            (Val::S(a, b), Val::S(c, d)) => {
                let dd = match &*self.field.0 {
                    FieldDescriptor::Qsqrt { d } => BigRational::from_integer((*d).into()),
                    _ => unreachable!(),
                };
                Val::S(a * c + dd * b * d, a * d + b * c)
            }
            _ => unreachable!(),
        };
        Ok(self.field.mk(val))
    }

    pub fn checked_inv(&self) -> FieldResult<Elem> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let val = match &self.val {
            Val::Q(a) => Val::Q(a.recip()),
            Val::P(a) => Val::P(inv_mod(*a, self.p()).unwrap()),
            Val::F(n, d) => normalize_fraction(d.clone(), n.clone()),
            Val::S(a, b) => {
                let dd = match &*self.field.0 {
                    FieldDescriptor::Qsqrt { d } => BigRational::from_integer((*d).into()),
                    _ => unreachable!(),
                };
                let norm = a * a - dd * b * b;
                Val::S(a / &norm, -(b / &norm))
            }
        };
        Ok(self.field.mk(val))
    }

    pub fn checked_div(&self, o: &Elem) -> FieldResult<Elem> {
        self.same(o)?;
        self.checked_mul(&o.checked_inv()?)
    }

    pub fn pow(&self, e: i64) -> FieldResult<Elem> {
        let mut base = if e < 0 { self.checked_inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// The element as a member of the prime subfield, if it lies there.
    pub fn as_prime(&self) -> Option<Elem> {
        let k = self.field.prime_subfield();
        match &self.val {
            Val::Q(_) | Val::P(_) => Some(self.clone()),
            Val::F(n, d) => {
                if d.degree() == Some(0) && n.degree().unwrap_or(0) == 0 {
                    Some(n.coeff(0))
                } else {
                    None
                }
            }
            Val::S(a, b) => b.is_zero().then(|| k.mk(Val::Q(a.clone()))),
        }
    }

    /// The rational value of an element of `Q`, `Q(t)` or `Q(sqrt d)` lying in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.as_prime()?.val {
            Val::Q(q) => Some(q),
            _ => None,
        }
    }

    /// Residue in `0..p` of an element lying in the prime field `F_p`.
    pub fn to_residue(&self) -> Option<u64> {
        match self.as_prime()?.val {
            Val::P(a) => Some(a),
            _ => None,
        }
    }

    /// Numerator and monic denominator of a function-field element.
    pub fn to_fraction(&self) -> Option<(UPoly, UPoly)> {
        match &self.val {
            Val::F(n, d) => Some((n.clone(), d.clone())),
            _ => None,
        }
    }

    /// Decide whether the element is a square, returning a root when it is.
    ///
    /// Complete for `Q` and `F_p`; for the other fields only elements of the
    /// prime subfield are handled and anything else is `Unsupported`.
    pub fn is_square(&self) -> FieldResult<Option<Elem>> {
        match &self.val {
            Val::Q(q) => Ok(rational_sqrt(q).map(|r| self.field.mk(Val::Q(r)))),
            Val::P(a) => Ok(sqrt_mod(*a, self.p()).map(|r| self.field.mk(Val::P(r)))),
            Val::F(..) => {
                let a = self.as_prime().ok_or_else(|| {
                    FieldError::Unsupported(format!(
                        "square test for the non-constant element {self} of {}",
                        self.field
                    ))
                })?;
                match a.is_square()? {
                    Some(r) => Ok(Some(self.field.embed_prime(&r)?)),
                    None => Ok(None),
                }
            }
            Val::S(a, b) => {
                if !b.is_zero() {
                    return Err(FieldError::Unsupported(format!(
                        "square test for the irrational element {self} of {}",
                        self.field
                    )));
                }
                if let Some(r) = rational_sqrt(a) {
                    return Ok(Some(self.field.mk(Val::S(r, BigRational::zero()))));
                }
                let d = match &*self.field.0 {
                    FieldDescriptor::Qsqrt { d } => BigRational::from_integer((*d).into()),
                    _ => unreachable!(),
                };
                Ok(rational_sqrt(&(a / d)).map(|c| self.field.mk(Val::S(BigRational::zero(), c))))
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.val {
            Val::Q(q) => write!(f, "{q}"),
            Val::P(a) => write!(f, "{a}"),
            Val::F(n, d) => {
                let var = self.field.variable().unwrap();
                if d.degree() == Some(0) {
                    write!(f, "{}", n.display(var))
                } else {
                    write!(f, "({})/({})", n.display(var), d.display(var))
                }
            }
            Val::S(a, b) => {
                let d = match &*self.field.0 {
                    FieldDescriptor::Qsqrt { d } => *d,
                    _ => unreachable!(),
                };
                let root = format!("sqrt({d})");
                let bpart = |b: &BigRational| -> String {
                    if b.is_one() {
                        root.clone()
                    } else {
                        format!("{b}*{root}")
                    }
                };
                if b.is_zero() {
                    write!(f, "{a}")
                } else if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{}", bpart(&-b))
                    } else {
                        write!(f, "{}", bpart(b))
                    }
                } else if b.is_negative() {
                    write!(f, "{a} - {}", bpart(&-b))
                } else {
                    write!(f, "{a} + {}", bpart(b))
                }
            }
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        let val = match &self.val {
            Val::Q(q) => Val::Q(-q),
            Val::P(a) => Val::P((self.p() - a) % self.p()),
            Val::F(n, d) => Val::F(n.neg(), d.clone()),
            Val::S(a, b) => Val::S(-a, -b),
        };
        self.field.mk(val)
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Elem> for &Elem {
            type Output = Elem;
            /// Panics when the operands live in different fields.
            fn $m(self, o: &Elem) -> Elem {
                self.$checked(o).expect("field mismatch in arithmetic")
            }
        }
        impl std::ops::$tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$m(&o)
            }
        }
        impl std::ops::$tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
