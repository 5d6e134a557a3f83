"""Exact scalars for q-deformed linear algebra.

The ground field is Q(p), rational functions in one parameter ``p`` over the
rationals, with the deformation parameter entering as q = p^2 so that square
roots of q stay inside the field.  A :class:`Scalar` is a fully reduced
fraction of integer polynomials; all arithmetic is exact and canonical, so
``==`` is a decision procedure for equality in Q(p).

Polynomials are plain tuples of ints, coefficient of degree k at index k,
no trailing zeros, ``()`` for zero.  Keeping coefficients in Z (contents
carried along instead of cleared into Q) makes gcd reduction fraction-free
and fast.

The module also provides :class:`PowerSeries`, truncated formal power series
used by the Poincare/Hilbert series pipeline, together with the two derived
series transforms ``series_log_derivative`` and ``series_exp_integral``.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd as _igcd

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "P",
    "Q",
    "scalar",
    "q_int",
    "q_fact",
    "rf_eval_at_one",
    "PoleAtOneError",
    "parse_scalar",
    "PowerSeries",
    "series_log_derivative",
    "series_exp_integral",
]


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense tuples, low degree first)


def _ptrim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ptrim(out)


def _pscale(a, k):
    if not k:
        return ()
    return tuple(x * k for x in a)


def _pcontent(a):
    g = 0
    for x in a:
        g = _igcd(g, x)
        if g == 1:
            return 1
    return g


def _pprim(a):
    """Split off the (positive) integer content.  Zero maps to (0, ())."""
    if not a:
        return 0, ()
    c = _pcontent(a)
    if c == 1:
        return 1, a
    return c, tuple(x // c for x in a)


def _pquo_exact(a, b):
    """Exact quotient a / b in Z[p]; b must divide a."""
    if not a:
        return ()
    db = len(b) - 1
    lb = b[-1]
    rem = list(a)
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        top = rem[db + i]
        if top:
            c, r = divmod(top, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out[i] = c
            for j in range(db + 1):
                rem[i + j] -= c * b[j]
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _ptrim(out)


def _pprem(a, b):
    """Pseudo-remainder of a by b (b nonzero)."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lb = b[-1]
    r = list(a)
    for i in range(da - db, -1, -1):
        c = r[db + i]
        r = [lb * t for t in r]
        if c:
            for j in range(db + 1):
                r[i + j] -= c * b[j]
        del r[db + i:]
    return _ptrim(r)


@lru_cache(maxsize=1 << 14)
def _pgcd(a, b):
    """Primitive gcd in Z[p], leading coefficient positive; gcd(0,0) = ()."""
    _, a = _pprim(a)
    _, b = _pprim(b)
    if not a:
        a, b = b, a
    if not b:
        if a and a[-1] < 0:
            a = _pneg(a)
        return a
    if len(a) < len(b):
        a, b = b, a
    # primitive PRS: strip content every round to stop coefficient growth
    while True:
        if len(b) == 1:
            return (1,)
        r = _pprem(a, b)
        if not r:
            if b[-1] < 0:
                b = _pneg(b)
            return b
        _, r = _pprim(r)
        a, b = b, r


def _peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


_PONE = (1,)


class PoleAtOneError(ArithmeticError):
    """Raised when a scalar is evaluated at p = 1 but has a pole there."""


class Scalar:
    """A rational function in p with exact, canonical arithmetic.

    Construct from ints, Fractions, or via the module constants ``P`` (the
    parameter) and ``Q`` (= P*P).  Instances are immutable; arithmetic
    returns new canonical instances, so ``==`` and ``hash`` are reliable.

    >>> f = (Q**3 - 1) / (Q - 1)
    >>> f == q_int(3)
    True
    >>> rf_eval_at_one(f)
    Fraction(3, 1)
    """

    __slots__ = ("num", "den")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            num, den = value.num, value.den
        elif isinstance(value, int):
            num = (value,) if value else ()
            den = _PONE
        elif isinstance(value, Fraction):
            n, d = value.numerator, value.denominator
            num = (n,) if n else ()
            den = (d,)
        else:
            raise TypeError(f"cannot make a Scalar from {type(value).__name__}")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- construction ------------------------------------------------------

    @staticmethod
    def _make(num, den):
        self = object.__new__(Scalar)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    @staticmethod
    def _reduced(num, den):
        num = _ptrim(num)
        den = _ptrim(den)
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not num:
            return Scalar._make((), _PONE)
        if den == _PONE:
            return Scalar._make(num, _PONE)
        cn, pn = _pprim(num)
        cd, pd = _pprim(den)
        g = _pgcd(pn, pd)
        if len(g) > 1:
            pn = _pquo_exact(pn, g)
            pd = _pquo_exact(pd, g)
        c = _igcd(cn, cd)
        if c > 1:
            cn //= c
            cd //= c
        num = _pscale(pn, cn)
        den = _pscale(pd, cd)
        if den[-1] < 0:
            num = _pneg(num)
            den = _pneg(den)
        return Scalar._make(num, den)

    @staticmethod
    def _content_reduced(num, den):
        """Canonicalize a pair already coprime as polynomials."""
        if not num:
            return ZERO
        c = _igcd(_pcontent(num), _pcontent(den))
        if c > 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        if den[-1] < 0:
            num = _pneg(num)
            den = _pneg(den)
        return Scalar._make(num, den)

    @staticmethod
    def _add_pair(n1, d1, n2, d2):
        """Sum of two canonical fractions, reduced via the denominator gcd."""
        if d1 == d2:
            t = _padd(n1, n2)
            if d1 == _PONE:
                return Scalar._make(t, _PONE) if t else ZERO
            return Scalar._reduced(t, d1)
        g = _pgcd(d1, d2)
        if len(g) == 1:
            # coprime denominators: only integer content can cancel
            t = _padd(_pmul(n1, d2), _pmul(n2, d1))
            return Scalar._content_reduced(t, _pmul(d1, d2))
        a1 = _pquo_exact(d1, g)
        a2 = _pquo_exact(d2, g)
        t = _padd(_pmul(n1, a2), _pmul(n2, a1))
        if not t:
            return ZERO
        g2 = _pgcd(t, g)
        if len(g2) > 1:
            t = _pquo_exact(t, g2)
            g = _pquo_exact(g, g2)
        return Scalar._content_reduced(t, _pmul(g, _pmul(a1, a2)))

    # -- ring structure ----------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == Scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return Scalar._make(_pneg(self.num), self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return Scalar._add_pair(self.num, self.den, other.num, other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return Scalar._add_pair(self.num, self.den, _pneg(other.num), other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == _PONE and other.den == _PONE:
            return Scalar._make(_pmul(self.num, other.num), _PONE)
        # cross-reduce first; the product of the reduced pairs is then
        # already coprime as polynomials, so only contents remain
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = _pgcd(n1, d2)
        if len(g) > 1:
            n1 = _pquo_exact(n1, g)
            d2 = _pquo_exact(d2, g)
        g = _pgcd(n2, d1)
        if len(g) > 1:
            n2 = _pquo_exact(n2, g)
            d1 = _pquo_exact(d1, g)
        return Scalar._content_reduced(_pmul(n1, n2), _pmul(d1, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("scalar division by zero")
        inv = Scalar._make(other.den, other.num)
        return self * inv

    def __rtruediv__(self, other):
        if not self.num:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(other) * Scalar._make(self.den, self.num)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return ONE
        base = self
        if k < 0:
            if not self.num:
                raise ZeroDivisionError("0 ** negative")
            base = Scalar._make(self.den, self.num)
            if base.den[-1] < 0:
                base = Scalar._make(_pneg(base.num), _pneg(base.den))
            k = -k
        out = ONE
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation and display --------------------------------------------

    def evaluate(self, x):
        """Value at p = x as an exact Fraction; raises on a pole."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at p = {x}")
        return Fraction(_peval(self.num, x)) / d

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) <= 1

    def as_fraction(self):
        """The constant value, for scalars not involving p."""
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[0], self.den[0])

    def __str__(self):
        if self.den == _PONE:
            return _poly_str(self.num)
        num = _poly_str(self.num)
        den = _poly_str(self.den)
        if len(self.num) <= 1 and self.num and self.num[0] > 0:
            pass  # bare positive constant numerator reads fine unwrapped
        else:
            num = "(" + num + ")"
        return f"{num}/({den})"

    def __repr__(self):
        return f"Scalar[{self}]"


def _poly_str(c):
    if not c:
        return "0"
    parts = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if not a:
            continue
        if k == 0:
            mono = str(abs(a))
        else:
            head = "" if abs(a) == 1 else f"{abs(a)}*"
            mono = f"{head}p" if k == 1 else f"{head}p^{k}"
        if not parts:
            parts.append(("-" if a < 0 else "") + mono)
        else:
            parts.append((" - " if a < 0 else " + ") + mono)
    return "".join(parts)


ZERO = Scalar(0)
ONE = Scalar(1)
P = Scalar._make((0, 1), _PONE)
Q = Scalar._make((0, 0, 1), _PONE)


def scalar(x):
    """Coerce an int, Fraction, string, or Scalar to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar(x)


def q_int(n):
    """[n]_q = 1 + q + ... + q^(n-1) with q = p^2; [0]_q = 0."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    coeffs = [0] * (2 * n)
    for k in range(n):
        coeffs[2 * k] = 1
    return Scalar._make(_ptrim(coeffs), _PONE)


def q_fact(n):
    """[n]_q! = [1]_q [2]_q ... [n]_q; [0]_q! = 1."""
    out = ONE
    for k in range(2, n + 1):
        out = out * q_int(k)
    return out


def rf_eval_at_one(f):
    """Evaluate a scalar at p = 1 (so q = 1), as an exact Fraction.

    The input is already in lowest terms, so a vanishing denominator is an
    honest pole and raises PoleAtOneError; no limits are taken.
    """
    f = scalar(f)
    d = _peval(f.den, 1)
    if d == 0:
        raise PoleAtOneError(f"pole at p = 1: {f}")
    return Fraction(_peval(f.num, 1), d)


# ---------------------------------------------------------------------------
# scalar expression parser
#
# grammar:  expr   := term (('+'|'-') term)*
#           term   := factor (('*'|'/') factor)*
#           factor := ('+'|'-')* base ('^' exponent)?
#           base   := INT | 'p' | '(' expr ')'
# '^' binds tighter than unary minus, so -p^2 means -(p^2).


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
        elif ch == "p":
            toks.append(("p", None))
            i += 1
        elif ch in "+-*/^()":
            toks.append((ch, None))
            i += 1
        else:
            raise ValueError(f"bad character {ch!r} in scalar expression")
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op, _ = self.take()
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self):
        sign = 1
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            if op == "-":
                sign = -sign
        val = self.base()
        if self.peek() == "^":
            self.take()
            esign = 1
            while self.peek() in ("+", "-"):
                op, _ = self.take()
                if op == "-":
                    esign = -esign
            kind, k = self.take()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            val = val ** (esign * k)
        return val if sign > 0 else -val

    def base(self):
        kind, payload = self.take() if self.pos < len(self.toks) else (None, None)
        if kind == "int":
            return Scalar(payload)
        if kind == "p":
            return P
        if kind == "(":
            val = self.expr()
            if self.peek() != ")":
                raise ValueError("unbalanced parentheses")
            self.take()
            return val
        raise ValueError("malformed scalar expression")


def parse_scalar(text):
    """Parse an expression in p into a canonical Scalar.

    Accepts integer and rational literals, the parameter p, the operators
    + - * / ^, and parentheses.  str(Scalar) round-trips through this.
    """
    parser = _Parser(_tokenize(text))
    val = parser.expr()
    if parser.pos != len(parser.toks):
        raise ValueError(f"trailing input in scalar expression: {text!r}")
    return val


# ---------------------------------------------------------------------------
# truncated power series


class PowerSeries:
    """A power series truncated at a fixed order.

    ``coeffs[k]`` is the coefficient of t^k; the truncation order is
    len(coeffs) - 1.  Coefficients can be Fractions or Scalars (any exact
    field element supporting the arithmetic operators).  Binary operations
    truncate to the smaller order of the two operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least the t^0 term")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{inner}])"

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[: order + 1])

    def _one(self):
        return self.coeffs[0] ** 0

    def __add__(self, other):
        n = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1))
        )

    def __sub__(self, other):
        n = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(n + 1))
        )

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order)
        zero = self.coeffs[0] * 0
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: n + 1 - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(out)

    __rmul__ = __mul__

    def reciprocal(self):
        """Multiplicative inverse; requires an invertible constant term."""
        c = self.coeffs
        if not c[0]:
            raise ZeroDivisionError("series with zero constant term")
        b0 = self._one() / c[0]
        out = [b0]
        for n in range(1, self.order + 1):
            acc = c[0] * 0
            for k in range(1, n + 1):
                if k < len(c) and c[k]:
                    acc = acc + c[k] * out[n - k]
            out.append(-b0 * acc)
        return PowerSeries(out)

    def derivative(self):
        """Termwise d/dt, one order lower (constants go to the zero series)."""
        c = self.coeffs
        if len(c) == 1:
            return PowerSeries((c[0] * 0,))
        return PowerSeries(tuple(c[k] * k for k in range(1, len(c))))

    def integral(self):
        """Termwise integral with zero constant term, one order higher."""
        zero = self.coeffs[0] * 0
        return PowerSeries(
            (zero,) + tuple(self.coeffs[k] / (k + 1) for k in range(len(self.coeffs)))
        )

    def exp(self):
        """exp of a series with zero constant term, same order."""
        c = self.coeffs
        if c[0]:
            raise ValueError("exp needs a zero constant term")
        out = [self._one()]
        for n in range(1, self.order + 1):
            acc = c[0] * 0
            for k in range(1, n + 1):
                if c[k]:
                    acc = acc + (c[k] * k) * out[n - k]
            out.append(acc / n)
        return PowerSeries(out)

    def log(self):
        """log of a series with constant term 1, same order."""
        c = self.coeffs
        one = self._one()
        if c[0] != one:
            raise ValueError("log needs constant term 1")
        zero = c[0] * 0
        out = [zero]
        for n in range(1, self.order + 1):
            acc = c[n] * n
            for k in range(1, n):
                acc = acc - (out[k] * k) * c[n - k]
            out.append(acc / n)
        return PowerSeries(out)


def series_log_derivative(series):
    """P'(t)/P(t) for a series with constant term 1, one order lower."""
    one = series.coeffs[0] ** 0
    if series.coeffs[0] != one:
        raise ValueError("logarithmic derivative needs constant term 1")
    if series.order == 0:
        raise ValueError("need at least order 1")
    return series.derivative() * series.truncate(series.order - 1).reciprocal()


def series_exp_integral(series):
    """exp of the termwise integral, one order higher than the input."""
    return series.integral().exp()
