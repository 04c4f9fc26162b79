"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import gmpy2

from .errors import ParseError

QQ = gmpy2.mpq
Exp = tuple  # exponent vector


def to_q(value) -> "gmpy2.mpq":
    """Coerce ints, Fractions, mpq and strings like "3/2" to an exact rational."""
    if isinstance(value, type(QQ())):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, type(gmpy2.mpz()))):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        return QQ(Fraction(value.strip()).numerator, Fraction(value.strip()).denominator)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not allowed in exact arithmetic")
    raise TypeError(f"cannot use {value!r} as a rational coefficient")


def q_to_str(c) -> str:
    c = to_q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# monomial orders


def _grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class ExponentOrder:
    """A monomial order. ``key`` maps an exponent vector to a tuple; larger tuple = larger monomial.

    kind is one of "lex", "grevlex" or "block". A block order compares the
    first ``split`` variables by grevlex and breaks ties with grevlex on the rest,
    which makes it an elimination order for the first block.
    """

    kind: str = "grevlex"
    split: int | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and (self.split is None or self.split < 0):
            raise ValueError("block order needs a nonnegative split point")

    def key(self, e: Sequence[int]) -> tuple:
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return tuple(e)
        k = self.split
        return _grevlex_key(e[:k]) + _grevlex_key(e[k:])


LEX = ExponentOrder("lex")
GREVLEX = ExponentOrder("grevlex")


def block_order(split: int) -> ExponentOrder:
    return ExponentOrder("block", split)


# ---------------------------------------------------------------------------


class MultiPoly:
    """Immutable sparse polynomial over the rationals in a fixed ordered variable list."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent {e}")
                c = to_q(c)
                if c:
                    clean[e] = clean.get(e, QQ(0)) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "MultiPoly":
        c = to_q(c)
        n = len(variables)
        return cls._raw(tuple(variables), {(0,) * n: c} if c else {})

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        k = variables.index(name)
        e = [0] * len(variables)
        e[k] = 1
        return cls._raw(variables, {tuple(e): QQ(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Sequence[int], c=1) -> "MultiPoly":
        return cls(variables, {tuple(exp): c})

    # basic properties -----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, QQ(0))

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        k = self.variables.index(var)
        return max((e[k] for e in self.terms), default=-1)

    def __len__(self) -> int:
        return len(self.terms)

    # coercion -------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, other)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MultiPoly._raw(self.variables, t)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = to_q(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return divide_exact(self, other)
        c = to_q(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def mul_term(self, exp: Exp, c) -> "MultiPoly":
        return MultiPoly._raw(
            self.variables,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # orders ---------------------------------------------------------------
    def sorted_terms(self, order: ExponentOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: ExponentOrder = GREVLEX) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_coefficient(self, order: ExponentOrder = GREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order: ExponentOrder = GREVLEX) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    # calculus and substitution -------------------------------------------
    def derivative(self, var: str) -> "MultiPoly":
        k = self.variables.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                t[tuple(e2)] = c * e[k]
        return MultiPoly._raw(self.variables, t)

    def evaluate(self, values: Sequence | Mapping, coerce: Callable | None = None):
        """Evaluate at a point. Exact for rational inputs; ``coerce`` maps coefficients
        into another number type (e.g. ``complex`` or an mpmath constructor)."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.variables]
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        conv = coerce or (lambda c: c)
        total = conv(QQ(0))
        for e, c in self.terms.items():
            m = conv(c)
            for x, k in zip(values, e):
                if k:
                    m = m * x**k
            total = total + m
        return total

    def substitute(self, mapping: Mapping[str, "MultiPoly"], variables: Sequence[str] | None = None) -> "MultiPoly":
        """Compose: replace each variable by a polynomial (variables not in ``mapping`` are
        kept, which requires them to exist in the target variable list)."""
        target = tuple(variables) if variables is not None else None
        if target is None:
            some = next(iter(mapping.values()), None)
            target = some.variables if some is not None else self.variables
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if img.variables != target:
                    raise ValueError("substitution images must share one variable list")
                images.append(img)
            else:
                images.append(MultiPoly.var(target, v))
        powers: list[dict] = [dict() for _ in images]

        def pw(k: int, a: int) -> MultiPoly:
            cache = powers[k]
            if a not in cache:
                cache[a] = images[k] ** a
            return cache[a]

        result = MultiPoly.zero(target)
        for e, c in self.terms.items():
            m = MultiPoly.constant(target, c)
            for k, a in enumerate(e):
                if a:
                    m = m * pw(k, a)
            result = result + m
        return result

    def embed(self, variables: Sequence[str]) -> "MultiPoly":
        """Rewrite in a larger (or reordered) variable list."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = []
        for v in variables:
            idx.append(self.variables.index(v) if v in self.variables else None)
        for k, v in enumerate(self.variables):
            if v not in variables and any(e[k] for e in self.terms):
                raise ValueError(f"variable {v} used but absent from target list")
        t = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self.terms.items()}
        return MultiPoly._raw(variables, t)

    def used_variables(self) -> tuple:
        return tuple(v for k, v in enumerate(self.variables) if any(e[k] for e in self.terms))

    def is_homogeneous(self) -> tuple[bool, int | None]:
        """(True, d) when every term has total degree d; the zero polynomial gives (True, None)."""
        if not self.terms:
            return True, None
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def weighted_degree(self, weights: Sequence[int]) -> int | None:
        """Common weighted degree if weight-homogeneous, else None (zero polynomial: None)."""
        ws = {sum(w * a for w, a in zip(weights, e)) for e in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def is_weight_homogeneous(self, weights: Sequence[int], weight: int) -> bool:
        return all(sum(w * a for w, a in zip(weights, e)) == weight for e in self.terms)

    def numeric(self) -> Callable:
        """Vectorised float evaluator: takes one array per variable."""
        items = [(float(c), e) for e, c in self.terms.items()]

        def f(*xs):
            total = 0.0
            for c, e in items:
                m = c
                for x, k in zip(xs, e):
                    if k:
                        m = m * x**k
                total = total + m
            return total

        return f

    # printing -------------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r}, vars={list(self.variables)})"


# ---------------------------------------------------------------------------
# printing and parsing


def _monomial_str(variables: Sequence[str], e: Exp) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(GREVLEX)):
        mono = _monomial_str(p.variables, e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{q_to_str(a)}*{mono}"
        else:
            body = q_to_str(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", 1, start + 1)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(f"{msg} in {self.text!r}", 1, tok[2] + 1)

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok[:2] == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif tok[:2] == ("op", "/"):
                self.take()
                den = self.power()
                if not den.is_constant() or den.is_zero():
                    raise self.error("division only by nonzero constants", tok)
                acc = acc.scale(1 / den.constant_value())
            elif tok[0] in ("num", "id") or tok[:2] == ("op", "("):
                raise self.error("juxtaposition is not allowed; use '*'", tok)
            else:
                return acc

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise self.error("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return MultiPoly.constant(self.variables, int(val))
        if kind == "id":
            if val not in self.variables:
                raise self.error(f"unknown variable {val!r}", tok)
            return MultiPoly.var(self.variables, val)
        if tok[:2] == ("op", "("):
            inner = self.expr()
            if self.take()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            return inner
        if tok[:2] == ("op", "-"):
            return -self.power()
        raise self.error("unexpected token", tok)


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Parse the text grammar, e.g. ``"x^2*y - 3/2*y^3"``.

    When ``variables`` is omitted the identifiers found are used, sorted.
    """
    if variables is None:
        names = sorted({v for k, v, _ in _tokenize(text) if k == "id"})
        variables = tuple(names)
    p = _Parser(text, tuple(variables))
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", 1, 1)
    result = p.expr()
    if p.peek()[0] != "end":
        raise p.error("unexpected trailing input")
    return result


def polys(variables: Sequence[str], *texts: str) -> list[MultiPoly]:
    return [parse_poly(t, variables) for t in texts]


# ---------------------------------------------------------------------------
# division, gcd, resultant


def divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient p/q, which must be exact."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.variables != q.variables:
        raise ValueError("variable mismatch")
    lq, cq = q.leading_term(GREVLEX)
    rest = [(e, c) for e, c in q.terms.items() if e != lq]
    r = dict(p.terms)
    quot = {}
    key = GREVLEX.key
    while r:
        e = max(r, key=key)
        c = r.pop(e)
        m = tuple(a - b for a, b in zip(e, lq))
        if any(x < 0 for x in m):
            raise ArithmeticError("division is not exact")
        f = c / cq
        quot[m] = f
        for e2, c2 in rest:
            t = tuple(a + b for a, b in zip(e2, m))
            v = r.get(t, QQ(0)) - f * c2
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return MultiPoly._raw(p.variables, quot)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        divide_exact(p, q)
        return True
    except ArithmeticError:
        return False


def _coeffs_in(p: MultiPoly, k: int) -> list[MultiPoly]:
    """Coefficients of p viewed as univariate in variable k (index = degree)."""
    deg = max((e[k] for e in p.terms), default=-1)
    buckets: list[dict] = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        e2 = e[:k] + (0,) + e[k + 1:]
        buckets[e[k]][e2] = c
    return [MultiPoly._raw(p.variables, b) for b in buckets]


def _from_coeffs(coeffs: list[MultiPoly], k: int, variables: tuple) -> MultiPoly:
    t = {}
    for d, c in enumerate(coeffs):
        for e, v in c.terms.items():
            t[e[:k] + (d,) + e[k + 1:]] = v
    return MultiPoly._raw(variables, t)


def _strip(c: list[MultiPoly]) -> list[MultiPoly]:
    while c and c[-1].is_zero():
        c = c[:-1]
    return c


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over the coefficient ring."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        shift = da - db
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[i + shift] = a[i + shift] - la * bc
        a = _strip(a)
        e -= 1
    if e > 0:
        f = lb ** e
        a = [c * f for c in a]
    return a


def _content(coeffs: list[MultiPoly]) -> MultiPoly:
    g = None
    for c in coeffs:
        if c.is_zero():
            continue
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return MultiPoly.constant(c.variables, 1)
    return g


def _gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    vars_ = p.variables
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(vars_, 1)
    used_p = set(p.used_variables())
    used_q = set(q.used_variables())
    k = next(i for i, v in enumerate(vars_) if v in used_p or v in used_q)
    v = vars_[k]
    if v not in used_q:
        g = q
        for c in _coeffs_in(p, k):
            if not c.is_zero():
                g = _gcd(g, c)
                if g.is_constant():
                    break
        return g
    if v not in used_p:
        return _gcd(q, p)
    cp_list, cq_list = _coeffs_in(p, k), _coeffs_in(q, k)
    cp, cq = _content(cp_list), _content(cq_list)
    a = [divide_exact(c, cp) if not c.is_zero() else c for c in cp_list]
    b = [divide_exact(c, cq) if not c.is_zero() else c for c in cq_list]
    if len(a) < len(b):
        a, b = b, a
    # subresultant PRS
    g = MultiPoly.constant(vars_, 1)
    h = MultiPoly.constant(vars_, 1)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            last = b
            break
        if len(r) == 1:
            last = [MultiPoly.constant(vars_, 1)]
            break
        a = b
        div = g * h ** delta
        b = [divide_exact(c, div) if not c.is_zero() else c for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = divide_exact(g ** delta, h ** (delta - 1))
    cl = _content(last)
    prim = [divide_exact(c, cl) if not c.is_zero() else c for c in last]
    return _gcd(cp, cq) * _from_coeffs(prim, k, vars_)


def gcd_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to leading coefficient 1 under grevlex."""
    if p.variables != q.variables:
        raise ValueError("variable mismatch")
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return _gcd(p, q).monic(GREVLEX)


def gcd_list(ps: Iterable[MultiPoly]) -> MultiPoly:
    g = None
    for p in ps:
        if p.is_zero():
            continue
        g = p.monic() if g is None else gcd_poly(g, p)
    if g is None:
        raise ValueError("gcd of zero polynomials is undefined")
    return g


def _det_bareiss(m: list[list[MultiPoly]], variables: tuple) -> MultiPoly:
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = MultiPoly.constant(variables, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(variables)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev) if not num.is_zero() else num
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list[list[MultiPoly]]:
    k = p.variables.index(var)
    a = _coeffs_in(p, k)[::-1]  # leading first
    b = _coeffs_in(q, k)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MultiPoly.zero(p.variables)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - i - len(a)))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - i - len(b)))
    return rows


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant Res_var(p, q) = det Syl(p, q).

    Convention: rows of p's coefficients first, so Res(x-1, x+1) = 2 and in general
    Res(p, q) = lc(p)^deg(q) * prod q(roots of p).
    """
    if p.variables != q.variables:
        raise ValueError("variable mismatch")
    if p.degree(var) <= 0 or q.degree(var) <= 0:
        raise ValueError(f"resultant needs positive degree in {var}")
    return _det_bareiss(sylvester_matrix(p, q, var), p.variables)
