"""Gaussian rationals a + b*i, used only where a form splits over Q(i) but not over Q."""

from __future__ import annotations

from .poly import QQ, to_q


class GaussQ:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_q(re)
        self.im = to_q(im)

    @staticmethod
    def of(x):
        return x if isinstance(x, GaussQ) else GaussQ(x, 0)

    def simplify(self):
        return self.re if self.im == 0 else self

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def __add__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re + o.re, self.im + o.im).simplify()

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re - o.re, self.im - o.im).simplify()

    def __rsub__(self, o):
        return GaussQ.of(o) - self

    def __mul__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re).simplify()

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussQ.of(o)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero")
        return (self * o.conjugate()) * GaussQ(1 / n, 0)

    def __rtruediv__(self, o):
        return GaussQ.of(o) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = GaussQ.of(to_q(o) if not isinstance(o, GaussQ) else o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re}+{self.im}i)"


I_UNIT = GaussQ(0, 1)


def to_field(x):
    """Exact scalar: an mpq, or a GaussQ when the imaginary part is nonzero."""
    if isinstance(x, GaussQ):
        return x.simplify()
    return to_q(x)


def is_real(x) -> bool:
    return not isinstance(x, GaussQ) or x.im == 0


def re_part(x):
    return x.re if isinstance(x, GaussQ) else to_q(x)


def im_part(x):
    return x.im if isinstance(x, GaussQ) else QQ(0)
