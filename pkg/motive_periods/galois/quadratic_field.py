from fractions import Fraction

"""
Exact arithmetic in Q or in an imaginary quadratic field Q(sqrt(d)), written in the basis
{1, gamma} with gamma = (d + sqrt(d)) / 2 the generator of the order of discriminant d:

    gamma^2 = d gamma - (d^2 - d) / 4
"""


class QuadraticFieldScalar:
    __slots__ = ('a', 'b', 'discriminant')

    def __init__(self, a, b=0, discriminant=None):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.discriminant = discriminant
        if discriminant is None and self.b != 0:
            raise ValueError('scalars of Q have no gamma component')
        if discriminant is not None and (discriminant >= 0 or discriminant % 4 not in (0, 1)):
            raise ValueError('{} is not the discriminant of an imaginary quadratic order'.format(discriminant))

    def __repr__(self):
        if self.discriminant is None:
            return 'QuadraticFieldScalar({})'.format(self.a)
        return 'QuadraticFieldScalar({} + {}*gamma, d={})'.format(self.a, self.b, self.discriminant)

    @property
    def norm_constant(self):
        d = self.discriminant
        return Fraction(d * d - d, 4)

    def _coerce(self, other):
        if isinstance(other, QuadraticFieldScalar):
            if other.discriminant is None:
                return QuadraticFieldScalar(other.a, 0, self.discriminant)
            if self.discriminant is not None and other.discriminant != self.discriminant:
                raise ValueError('cannot mix Q(sqrt({})) and Q(sqrt({}))'.format(self.discriminant, other.discriminant))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticFieldScalar(other, 0, self.discriminant)
        return NotImplemented

    def _field(self, other):
        return self.discriminant if self.discriminant is not None else other.discriminant

    def _lift(self, discriminant):
        if self.discriminant == discriminant:
            return self
        return QuadraticFieldScalar(self.a, self.b, discriminant)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return QuadraticFieldScalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticFieldScalar(-self.a, -self.b, self.discriminant)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        if d is None:
            return QuadraticFieldScalar(self.a * other.a)
        x, y = self._lift(d), other._lift(d)
        constant = x.a * y.a - x.b * y.b * x.norm_constant
        linear = x.a * y.b + x.b * y.a + x.b * y.b * d
        return QuadraticFieldScalar(constant, linear, d)

    __rmul__ = __mul__

    def conjugate(self):
        """ gamma -> d - gamma """
        if self.discriminant is None:
            return self
        return QuadraticFieldScalar(self.a + self.b * self.discriminant, -self.b, self.discriminant)

    def norm(self):
        """ x * conj(x) = a^2 + a b d + b^2 (d^2 - d) / 4, an exact rational """
        if self.discriminant is None:
            return self.a * self.a
        return self.a * self.a + self.a * self.b * self.discriminant + self.b * self.b * self.norm_constant

    def inverse(self):
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError('inverse of zero')
        conjugate = self.conjugate()
        return QuadraticFieldScalar(conjugate.a / norm, conjugate.b / norm, self.discriminant)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.a, self.b, self.discriminant))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def numeric(self, gamma_value):
        """ Complex value with gamma acting as gamma_value """
        return float(self.a) + float(self.b) * complex(gamma_value)

    def to_json(self):
        return [str(self.a), str(self.b)]
