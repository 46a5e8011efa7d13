//! Exact arithmetic in the rings of integers `O_K` of the nine imaginary
//! quadratic fields `K = Q(√−d)` of class number one, their fraction fields,
//! unit groups and plane embedding.
//!
//! Elements of `O_K` are written `a + b·ω` with
//! `ω = i√d` when `d ≡ 1, 2 (mod 4)` and `ω = (1 + i√d)/2` when `d ≡ 3 (mod 4)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{self, NormForm};

pub type Rational = BigRational;

/// The class-number-one discriminant parameters.
pub const HEEGNER: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("d = {0} is not one of the nine class-number-one values")]
    UnknownField(u32),
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("gcd of two zero elements is undefined")]
    BothZero,
    #[error("division by zero")]
    DivByZero,
    #[error("elements belong to different fields (d = {0} and d = {1})")]
    FieldMismatch(u32, u32),
}

/// Identifies `K = Q(√−d)` for one of the nine admissible `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldId(u32);

impl FieldId {
    pub fn new(d: u32) -> Result<Self, QuadError> {
        if HEEGNER.contains(&d) {
            Ok(FieldId(d))
        } else {
            Err(QuadError::UnknownField(d))
        }
    }

    pub fn all() -> impl Iterator<Item = FieldId> {
        HEEGNER.iter().map(|&d| FieldId(d))
    }

    pub fn d(self) -> u32 {
        self.0
    }

    pub fn d_big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// True when `ω = (1 + i√d)/2`.
    pub fn half_integral(self) -> bool {
        self.0 % 4 == 3
    }

    /// Order of the unit group: 4 for `Q(i)`, 6 for `Q(i√3)`, 2 otherwise.
    pub fn unit_order(self) -> usize {
        match self.0 {
            1 => 4,
            3 => 6,
            _ => 2,
        }
    }

    /// Norm form in `(a, b)` coordinates.
    pub fn norm_form(self) -> NormForm {
        if self.half_integral() {
            NormForm { t: BigInt::one(), c: BigInt::from((1 + self.0) / 4) }
        } else {
            NormForm { t: BigInt::zero(), c: self.d_big() }
        }
    }

    /// Minimal polynomial of `ω` as `(c1, c0)` for `x² + c1·x + c0`.
    pub fn omega_min_poly(self) -> (i64, i64) {
        if self.half_integral() {
            (-1, i64::from((1 + self.0) / 4))
        } else {
            (0, i64::from(self.0))
        }
    }

    /// Absolute value of the field discriminant.
    pub fn abs_discriminant(self) -> u32 {
        if self.half_integral() {
            self.0
        } else {
            4 * self.0
        }
    }

    pub fn omega(self) -> QuadInt {
        QuadInt::new(self, 0, 1)
    }

    pub fn one(self) -> QuadInt {
        QuadInt::new(self, 1, 0)
    }

    pub fn zero(self) -> QuadInt {
        QuadInt::new(self, 0, 0)
    }

    /// The unit generating `U_K`: `i`, `ω` for `d = 3`, or `−1`.
    pub fn unit_generator(self) -> QuadInt {
        match self.0 {
            1 => self.omega(),
            3 => self.omega(),
            _ => -self.one(),
        }
    }

    /// All units, in order `ζ⁰, ζ¹, …` of increasing argument.
    pub fn units(self) -> Vec<QuadInt> {
        let z = self.unit_generator();
        let mut out = vec![self.one()];
        for _ in 1..self.unit_order() {
            let next = out.last().unwrap() * &z;
            out.push(next);
        }
        out
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt(-{}))", self.0)
    }
}

/// An element `a + b·ω` of `O_K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub field: FieldId,
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(field: FieldId, a: i64, b: i64) -> Self {
        QuadInt { field, a: BigInt::from(a), b: BigInt::from(b) }
    }

    pub fn from_big(field: FieldId, a: BigInt, b: BigInt) -> Self {
        QuadInt { field, a, b }
    }

    pub fn from_integer(field: FieldId, n: BigInt) -> Self {
        QuadInt { field, a: n, b: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        self.field.norm_form().eval(&(self.a.clone(), self.b.clone()))
    }

    pub fn trace(&self) -> BigInt {
        if self.field.half_integral() {
            BigInt::from(2) * &self.a + &self.b
        } else {
            BigInt::from(2) * &self.a
        }
    }

    pub fn conj(&self) -> QuadInt {
        if self.field.half_integral() {
            QuadInt { field: self.field, a: &self.a + &self.b, b: -&self.b }
        } else {
            QuadInt { field: self.field, a: self.a.clone(), b: -&self.b }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt { field: self.field, a: &self.a * k, b: &self.b * k }
    }

    /// Content: largest positive integer dividing both coordinates.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    pub fn embed(&self) -> PlanePoint {
        if self.field.half_integral() {
            let half = Rational::new(self.b.clone(), BigInt::from(2));
            PlanePoint { x: Rational::from_integer(self.a.clone()) + &half, y: half }
        } else {
            PlanePoint { x: Rational::from_integer(self.a.clone()), y: Rational::from_integer(self.b.clone()) }
        }
    }

    /// The unique unit multiple whose argument lies in `[0, θ_K)`.
    pub fn canonical_unit_rep(&self) -> Result<QuadInt, QuadError> {
        if self.is_zero() {
            return Err(QuadError::ZeroInput);
        }
        let order = self.field.unit_order();
        for u in self.field.units() {
            let cand = &u * self;
            if cand.embed().in_sector(order) {
                return Ok(cand);
            }
        }
        unreachable!("unit orbit always meets the fundamental sector")
    }

    /// Exact quotient `self / y` in canonical form.
    pub fn div_exact(&self, y: &QuadInt) -> Result<QuadRat, QuadError> {
        if y.is_zero() {
            return Err(QuadError::DivByZero);
        }
        check_same(self.field, y.field)?;
        Ok(QuadRat::new(self * &y.conj(), y.norm()))
    }

    /// `self | x` in `O_K`.
    pub fn divides(&self, x: &QuadInt) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).map(|q| q.is_integral()).unwrap_or(false)
    }

    /// Generator of the ideal `(x, y)`, found as a shortest vector of the
    /// rank-2 lattice spanned by `x, ωx, y, ωy`; returned unit-canonical.
    pub fn gcd(x: &QuadInt, y: &QuadInt) -> Result<QuadInt, QuadError> {
        check_same(x.field, y.field)?;
        if x.is_zero() && y.is_zero() {
            return Err(QuadError::BothZero);
        }
        let field = x.field;
        let w = field.omega();
        let gens: Vec<lattice::Vec2> = [x.clone(), x * &w, y.clone(), y * &w].into_iter().map(|q| (q.a, q.b)).collect();
        let s = lattice::shortest_vector(&field.norm_form(), &gens).expect("nonzero ideal has a nonzero vector");
        QuadInt::from_big(field, s.0, s.1).canonical_unit_rep()
    }

    pub fn pow(&self, e: u32) -> QuadInt {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse embedding: the element of `O_K` at a plane point, if integral.
    pub fn from_plane(field: FieldId, p: &PlanePoint) -> Option<QuadInt> {
        let q = QuadRat::from_plane(field, p);
        if q.is_integral() {
            Some(q.num)
        } else {
            None
        }
    }
}

pub(crate) fn check_same(f: FieldId, g: FieldId) -> Result<(), QuadError> {
    if f == g {
        Ok(())
    } else {
        Err(QuadError::FieldMismatch(f.d(), g.d()))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}w", self.a, self.b)
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, y: &QuadInt) -> QuadInt {
        assert_eq!(self.field, y.field, "field mismatch in multiplication");
        let (c1, c0) = self.field.omega_min_poly();
        // ω² = −c1·ω − c0
        let bb = &self.b * &y.b;
        let a = &self.a * &y.a - &bb * BigInt::from(c0);
        let b = &self.a * &y.b + &self.b * &y.a - &bb * BigInt::from(c1);
        QuadInt { field: self.field, a, b }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, y: &QuadInt) -> QuadInt {
        assert_eq!(self.field, y.field, "field mismatch in addition");
        QuadInt { field: self.field, a: &self.a + &y.a, b: &self.b + &y.b }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, y: &QuadInt) -> QuadInt {
        assert_eq!(self.field, y.field, "field mismatch in subtraction");
        QuadInt { field: self.field, a: &self.a - &y.a, b: &self.b - &y.b }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { field: self.field, a: -self.a, b: -self.b }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -self.clone()
    }
}

/// An element `num / den` of `K`, with `den > 0` and
/// `gcd(content(num), den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub num: QuadInt,
    pub den: BigInt,
}

impl QuadRat {
    /// Builds the canonical representative. Panics if `den` is zero.
    pub fn new(num: QuadInt, den: BigInt) -> QuadRat {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let g = num.content().gcd(&den);
        if g.is_one() {
            QuadRat { num, den }
        } else {
            QuadRat { num: QuadInt { field: num.field, a: &num.a / &g, b: &num.b / &g }, den: &den / &g }
        }
    }

    pub fn from_int(x: QuadInt) -> QuadRat {
        QuadRat { num: x, den: BigInt::one() }
    }

    pub fn from_integer(field: FieldId, n: i64) -> QuadRat {
        QuadRat::from_int(QuadInt::new(field, n, 0))
    }

    pub fn from_parts(field: FieldId, a: i64, b: i64, den: i64) -> QuadRat {
        QuadRat::new(QuadInt::new(field, a, b), BigInt::from(den))
    }

    pub fn field(&self) -> FieldId {
        self.num.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn norm(&self) -> Rational {
        Rational::new(self.num.norm(), &self.den * &self.den)
    }

    pub fn trace(&self) -> Rational {
        Rational::new(self.num.trace(), self.den.clone())
    }

    pub fn inv(&self) -> Result<QuadRat, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivByZero);
        }
        Ok(QuadRat::new(self.num.conj().scale(&self.den), self.num.norm()))
    }

    pub fn div(&self, y: &QuadRat) -> Result<QuadRat, QuadError> {
        check_same(self.field(), y.field())?;
        Ok(self * &y.inv()?)
    }

    pub fn pow(&self, e: i64) -> QuadRat {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut acc = QuadRat::from_integer(self.field(), 1);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn to_plane(&self) -> PlanePoint {
        let p = self.num.embed();
        let d = Rational::from_integer(self.den.clone());
        PlanePoint { x: p.x / &d, y: p.y / &d }
    }

    pub fn from_plane(field: FieldId, p: &PlanePoint) -> QuadRat {
        // a + bω with b = y (resp. 2y) and a = x (resp. x − y)
        let (a, b) = if field.half_integral() {
            (&p.x - &p.y, &p.y * Rational::from_integer(BigInt::from(2)))
        } else {
            (p.x.clone(), p.y.clone())
        };
        let den = a.denom().lcm(b.denom());
        let an = a.numer() * (&den / a.denom());
        let bn = b.numer() * (&den / b.denom());
        QuadRat::new(QuadInt::from_big(field, an, bn), den)
    }

    /// Unit multiple with argument in `[0, θ_K)`.
    pub fn canonical_unit_rep(&self) -> Result<QuadRat, QuadError> {
        Ok(QuadRat { num: self.num.canonical_unit_rep()?, den: self.den.clone() })
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;
    fn mul(self, y: &QuadRat) -> QuadRat {
        QuadRat::new(&self.num * &y.num, &self.den * &y.den)
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, y: &QuadRat) -> QuadRat {
        QuadRat::new(&self.num.scale(&y.den) + &y.num.scale(&self.den), &self.den * &y.den)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { num: -&self.num, den: self.den.clone() }
    }
}

/// The complex number `x + y·√d·i`, stored by its exact rational
/// coordinates `(x, y)`. The `√d` factor is never evaluated; scaling the
/// second axis by a positive constant preserves orientation, convexity and
/// extremality, so all geometric predicates run on `(x, y)` directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub x: Rational,
    pub y: Rational,
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        PlanePoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlanePoint { x: Rational::from_integer(x.into()), y: Rational::from_integer(y.into()) }
    }

    pub fn origin() -> Self {
        PlanePoint::from_ints(0, 0)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Complex multiplication, with `(√d)² = d`.
    pub fn mul(&self, o: &PlanePoint, field: FieldId) -> PlanePoint {
        let d = Rational::from_integer(field.d_big());
        PlanePoint { x: &self.x * &o.x - d * &self.y * &o.y, y: &self.x * &o.y + &self.y * &o.x }
    }

    pub fn add(&self, o: &PlanePoint) -> PlanePoint {
        PlanePoint { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &PlanePoint) -> PlanePoint {
        PlanePoint { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn neg(&self) -> PlanePoint {
        PlanePoint { x: -&self.x, y: -&self.y }
    }

    /// Squared modulus `x² + d·y²`.
    pub fn modulus2(&self, field: FieldId) -> Rational {
        &self.x * &self.x + Rational::from_integer(field.d_big()) * &self.y * &self.y
    }

    /// Multiplication by the unit generator of `U_K`.
    pub fn rotate_unit(&self, field: FieldId) -> PlanePoint {
        match field.d() {
            1 => PlanePoint { x: -&self.y, y: self.x.clone() },
            3 => {
                let two = Rational::from_integer(BigInt::from(2));
                let three = Rational::from_integer(BigInt::from(3));
                PlanePoint { x: (&self.x - three * &self.y) / &two, y: (&self.x + &self.y) / two }
            }
            _ => self.neg(),
        }
    }

    /// The full `U_K`-orbit, in the unit order of [`FieldId::units`].
    pub fn orbit(&self, field: FieldId) -> Vec<PlanePoint> {
        let mut out = vec![self.clone()];
        for _ in 1..field.unit_order() {
            let next = out.last().unwrap().rotate_unit(field);
            out.push(next);
        }
        out
    }

    /// Argument in `[0, θ_K)` where `θ_K = 2π / unit_order`. Argument 0 is
    /// in the sector, argument `θ_K` is not; the origin is in no sector.
    pub fn in_sector(&self, unit_order: usize) -> bool {
        let zero = Rational::zero();
        match unit_order {
            4 => self.x > zero && self.y >= zero,
            6 => self.y >= zero && self.y < self.x,
            _ => self.y > zero || (self.y.is_zero() && self.x > zero),
        }
    }
}

/// Twice the signed area of the triangle `(o, a, b)` in stored coordinates.
pub fn cross(o: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Angular order of two points lying in a common half-open half-plane
/// through the origin (such as a sector): `Less` if `p` comes first.
pub fn angular_cmp(p: &PlanePoint, q: &PlanePoint) -> Ordering {
    let c = &p.x * &q.y - &p.y * &q.x;
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}
