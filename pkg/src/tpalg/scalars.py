"""Exact scalar arithmetic.

Four layers, each closed under +, -, *:

* ``Fraction`` (stdlib) -- rationals, printed ``p/q`` or ``p``.
* ``GaussianRational`` -- pairs of rationals re + im*i.
* ``ParamPoly`` -- sparse polynomials in a fixed tuple of named parameters
  with rational or Gaussian coefficients.
* ``TruncSeries`` -- truncated power series in ``h`` over any of the above;
  all arithmetic is modulo h^order and mixing orders is an error.

Ring descriptors (``RationalField``, ``GaussianField``, ``PolynomialRing``,
``SeriesRing``) bundle zero/one/coerce with a shared string parser and
formatter, so every scalar round-trips through its printed form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadScalar, MissingSymbol, NotInvertible, OrderMismatch

INF = math.inf


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction

    @staticmethod
    def of(re=0, im=0) -> "GaussianRational":
        return GaussianRational(Fraction(re), Fraction(im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def _lift(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise NotInvertible("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        return format_scalar(self)


GAUSS_I = GaussianRational.of(0, 1)


# ---------------------------------------------------------------------------
# Sparse parameter polynomials
# ---------------------------------------------------------------------------


class ParamPoly:
    """Polynomial in a fixed ordered tuple of parameter names.

    ``terms`` maps exponent tuples (one slot per variable) to nonzero
    coefficients.  Two polynomials combine only when their variable tuples
    agree; plain numbers are lifted to constants.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        clean = {}
        for expo, coeff in terms.items():
            expo = tuple(expo)
            if len(expo) != len(self.variables):
                raise ValueError("exponent tuple has wrong length")
            if coeff == 0:
                continue
            clean[expo] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, variables, value):
        variables = tuple(variables)
        zero = (0,) * len(variables)
        return cls(variables, {zero: value})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        if name not in variables:
            raise MissingSymbol(f"unknown parameter {name!r}")
        expo = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {expo: Fraction(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        zero = (0,) * len(self.variables)
        return all(e == zero for e in self.terms)

    def constant_value(self):
        zero = (0,) * len(self.variables)
        return self.terms.get(zero, Fraction(0))

    def used_variables(self):
        used = set()
        for expo in self.terms:
            for name, e in zip(self.variables, expo):
                if e:
                    used.add(name)
        return used

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, ParamPoly):
            if other.variables != self.variables:
                raise ValueError("parameter polynomials over different variables")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return ParamPoly.constant(self.variables, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for expo, coeff in o.terms.items():
            terms[expo] = terms.get(expo, 0) + coeff
        return ParamPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = terms.get(expo, 0) + c1 * c2
        return ParamPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = ParamPoly.constant(self.variables, Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, ParamPoly):
            if not other.is_constant():
                raise NotInvertible("cannot divide by a non-constant polynomial")
            other = other.constant_value()
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                raise NotInvertible("division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not self.terms:
                return other == 0
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.variables, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __bool__(self):
        return not self.is_zero()

    def is_affine(self):
        return all(sum(expo) <= 1 for expo in self.terms)

    def affine_parts(self):
        """(constant, {name: coefficient}) for an affine polynomial."""
        if not self.is_affine():
            raise ValueError("polynomial is not affine")
        const = Fraction(0)
        linear = {}
        for expo, coeff in self.terms.items():
            deg = sum(expo)
            if deg == 0:
                const = coeff
            else:
                name = self.variables[expo.index(1)]
                linear[name] = coeff
        return const, linear

    def subs(self, mapping):
        """Replace some variables by polynomials (same variable tuple);
        variables absent from the mapping stay symbolic."""
        out = ParamPoly(self.variables, {})
        for expo, coeff in self.terms.items():
            term = ParamPoly.constant(self.variables, coeff)
            for name, e in zip(self.variables, expo):
                if e == 0:
                    continue
                rep = mapping.get(name)
                base = rep if rep is not None else ParamPoly.var(self.variables, name)
                term = term * base**e
            out = out + term
        return out

    def substitute(self, assignment):
        """Evaluate with every variable bound; see ``substitute_params``."""
        missing = self.used_variables() - set(assignment)
        if missing:
            raise MissingSymbol(f"no value for parameter(s) {sorted(missing)}")
        total = None
        for expo, coeff in self.terms.items():
            term = coeff
            for name, e in zip(self.variables, expo):
                for _ in range(e):
                    term = term * assignment[name]
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ParamPoly({format_scalar(self)!r})"


# ---------------------------------------------------------------------------
# Truncated power series in h
# ---------------------------------------------------------------------------


class TruncSeries:
    """Element of R[h]/(h^order): ``coeffs[k]`` multiplies h^k.

    Arithmetic between two series insists on equal orders; there is no
    silent re-truncation.  Numbers and ParamPolys lift to constant series.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        if order < 1:
            raise ValueError("truncation order must be at least 1")
        coeffs = tuple(coeffs)
        if len(coeffs) > order:
            raise ValueError("more coefficients than the truncation order allows")
        if len(coeffs) < order:
            coeffs = coeffs + (Fraction(0),) * (order - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def h(cls, order, base_one=None):
        one = Fraction(1) if base_one is None else base_one
        return cls(order, (one * 0, one))

    @classmethod
    def constant(cls, order, value):
        return cls(order, (value,))

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                raise OrderMismatch(
                    f"series orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction, GaussianRational, ParamPoly)):
            return TruncSeries.constant(self.order, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = self.order
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                b = o.coeffs[j]
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncSeries(n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("series powers must be nonnegative integers")
        out = TruncSeries.constant(self.order, Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * series_invert(o)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.order == other.order and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, (int, Fraction, GaussianRational, ParamPoly)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def is_zero(self):
        return not self

    def shift_down(self, k):
        """Divide by h^k, discarding the k lowest coefficients (which must
        vanish) and padding the top with zeros."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise NotInvertible(f"series is not divisible by h^{k}")
        return TruncSeries(self.order, self.coeffs[k:] + (Fraction(0),) * k)

    def shift_up(self, k):
        """Multiply by h^k (truncating)."""
        if k == 0:
            return self
        return TruncSeries(self.order, (Fraction(0),) * k + self.coeffs[: self.order - k])

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"TruncSeries({format_scalar(self)!r})"


# ---------------------------------------------------------------------------
# Free functions on the tower
# ---------------------------------------------------------------------------


def _invert_base(c):
    if isinstance(c, int):
        c = Fraction(c)
    if isinstance(c, Fraction):
        if not c:
            raise NotInvertible("division by zero")
        return Fraction(1) / c
    if isinstance(c, GaussianRational):
        return c.inverse()
    if isinstance(c, ParamPoly):
        if not c.is_constant() or c.constant_value() == 0:
            raise NotInvertible("constant term is not an invertible constant")
        return ParamPoly.constant(c.variables, _invert_base(c.constant_value()))
    raise NotInvertible(f"cannot invert {c!r}")


def series_invert(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse in R[h]/(h^order); requires a unit constant
    term.  Computed by the standard recursion

        t_0 = 1/s_0,   t_k = -(sum_{j=1..k} s_j t_{k-j}) / s_0 .
    """
    if not isinstance(s, TruncSeries):
        raise TypeError("series_invert expects a TruncSeries")
    inv0 = _invert_base(s.coeffs[0])
    out = [inv0]
    for k in range(1, s.order):
        acc = None
        for j in range(1, k + 1):
            piece = s.coeffs[j] * out[k - j]
            acc = piece if acc is None else acc + piece
        out.append(-(acc * inv0) if acc is not None else inv0 * 0)
    return TruncSeries(s.order, out)


def h_valuation(s: TruncSeries):
    """Index of the lowest nonzero coefficient, or ``math.inf`` for the
    zero class."""
    for k, c in enumerate(s.coeffs):
        if c != 0:
            return k
    return INF


def series_divide_exact(num: TruncSeries, den: TruncSeries) -> TruncSeries:
    """num/den when val(num) >= val(den): shift both down by val(den) and
    invert the resulting unit.  Top coefficients of the quotient beyond
    order - val(den) are taken to be zero (the canonical lift)."""
    v = h_valuation(den)
    if v is INF:
        raise NotInvertible("division by the zero series")
    if v > 0:
        num = num.shift_down(v)
        den = den.shift_down(v)
    return num * series_invert(den)


def substitute_params(x, assignment):
    """Bind every parameter appearing in ``x`` (a scalar of any layer)
    to a concrete scalar; raises MissingSymbol when one is unbound."""
    if isinstance(x, TruncSeries):
        return TruncSeries(x.order, tuple(substitute_params(c, assignment) for c in x.coeffs))
    if isinstance(x, ParamPoly):
        return x.substitute(assignment)
    return x


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


def _format_fraction(q: Fraction) -> str:
    return str(q)


def _format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return _format_fraction(z.re)
    if z.im == 1:
        imag = "i"
    elif z.im == -1:
        imag = "-i"
    else:
        imag = f"{z.im}i"
    if z.re == 0:
        return imag
    sign = "+" if z.im > 0 else ""
    return f"{z.re}{sign}{imag}"


def _poly_term_key(item):
    expo, _ = item
    return (-sum(expo), tuple(-e for e in expo))


def _format_poly(p: ParamPoly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for expo, coeff in sorted(p.terms.items(), key=_poly_term_key):
        factors = []
        for name, e in zip(p.variables, expo):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if isinstance(coeff, GaussianRational) and coeff.re != 0 and coeff.im != 0:
            coeff_str = f"({_format_gaussian(coeff)})"
            sign = "+"
        else:
            coeff_str = format_scalar(coeff)
            sign = "+"
            if coeff_str.startswith("-"):
                sign = "-"
                coeff_str = coeff_str[1:]
        if factors:
            body = "*".join(factors) if coeff_str == "1" else "*".join([coeff_str] + factors)
        else:
            body = coeff_str
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += sign + body
    return out


def _series_coeff_str(c, k):
    """Render one series term coeff*h^k; non-numeric coefficients are
    parenthesized so the h factor cannot be misread as part of a name."""
    if k == 0:
        if isinstance(c, (ParamPoly, GaussianRational)) and _needs_parens(c):
            return f"({format_scalar(c)})"
        return format_scalar(c)
    hpow = "h" if k == 1 else f"h^{k}"
    if isinstance(c, (int, Fraction)):
        if c == 1:
            return hpow
        if c == -1:
            return f"-{hpow}"
        return f"{c}{hpow}"
    return f"({format_scalar(c)}){hpow}"


def _needs_parens(c):
    if isinstance(c, GaussianRational):
        return bool(c.im)
    if isinstance(c, ParamPoly):
        return not c.is_constant() or _needs_parens(c.constant_value())
    return False


def _format_series(s: TruncSeries) -> str:
    pieces = []
    for k, c in enumerate(s.coeffs):
        if c == 0:
            continue
        pieces.append(_series_coeff_str(c, k))
    if not pieces:
        body = "0"
    else:
        body = pieces[0]
        for piece in pieces[1:]:
            body += piece if piece.startswith("-") else "+" + piece
    return f"{body}@order={s.order}"


def format_scalar(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _format_fraction(x)
    if isinstance(x, GaussianRational):
        return _format_gaussian(x)
    if isinstance(x, ParamPoly):
        return _format_poly(x)
    if isinstance(x, TruncSeries):
        return _format_series(x)
    raise TypeError(f"not a scalar: {x!r}")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()@=]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise BadScalar(f"unexpected character {text[pos]!r} in {text!r}")
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int"))))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    """Recursive-descent parser for the scalar grammar.

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor (('*')? factor)*        # juxtaposition multiplies
    factor  := INT ['/' INT] | NAME ['^' INT] | '(' expr ')' ['^' INT]
    """

    def __init__(self, tokens, env, text):
        self.tokens = tokens
        self.pos = 0
        self.env = env
        self.text = text

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, why):
        raise BadScalar(f"{why} in scalar {self.text!r}")

    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"trailing input at token {self.peek()[1]!r}")
        return value

    def expr(self):
        negate = False
        if self.peek() == ("op", "-"):
            self.take()
            negate = True
        elif self.peek() == ("op", "+"):
            self.take()
        value = self.term()
        if negate:
            value = -value
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                value = value * self.factor()
            elif kind in ("int", "name") or (kind == "op" and tok == "("):
                value = value * self.factor()
            else:
                return value

    def factor(self):
        kind, tok = self.take()
        if kind == "int":
            num = Fraction(tok)
            if self.peek() == ("op", "/"):
                self.take()
                k2, t2 = self.take()
                if k2 != "int":
                    self.fail("expected an integer denominator")
                if t2 == 0:
                    self.fail("zero denominator")
                num = num / t2
            return self.env["__const__"](num)
        if kind == "name":
            if tok not in self.env:
                self.fail(f"unknown symbol {tok!r}")
            value = self.env[tok]
            return self._maybe_power(value)
        if kind == "op" and tok == "(":
            value = self.expr()
            if self.take() != ("op", ")"):
                self.fail("expected ')'")
            return self._maybe_power(value)
        self.fail(f"unexpected token {tok!r}")

    def _maybe_power(self, value):
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.take()
            if kind != "int":
                self.fail("expected an integer exponent")
            return value**tok
        return value


def _split_order_suffix(text):
    """Split trailing '@order=N' off a series string, if present."""
    marker = text.rfind("@order=")
    if marker < 0:
        return text, None
    tail = text[marker + len("@order=") :].strip()
    if not tail.isdigit():
        raise BadScalar(f"malformed order suffix in {text!r}")
    return text[:marker], int(tail)


def parse_in_env(text, env):
    tokens = _tokenize(text)
    if tokens[0][0] == "end":
        raise BadScalar("empty scalar string")
    return _Parser(tokens, env, text).parse()


# ---------------------------------------------------------------------------
# Ring descriptors
# ---------------------------------------------------------------------------

_RESERVED_NAMES = {"h", "i"}


@dataclass(frozen=True)
class RationalField:
    tag: str = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, bool):
            raise BadScalar("booleans are not scalars")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        if isinstance(x, GaussianRational) and x.im == 0:
            return x.re
        if isinstance(x, ParamPoly) and x.is_constant():
            return self.coerce(x.constant_value())
        raise BadScalar(f"not a rational scalar: {x!r}")

    def _env(self):
        return {"__const__": lambda q: q}

    def parse(self, text):
        return self.coerce(parse_in_env(text, self._env()))

    def format(self, x):
        return format_scalar(x)

    def invert(self, x):
        return _invert_base(self.coerce(x))


@dataclass(frozen=True)
class GaussianField:
    tag: str = "Qi"

    def zero(self):
        return GaussianRational.of(0)

    def one(self):
        return GaussianRational.of(1)

    def coerce(self, x):
        if isinstance(x, bool):
            raise BadScalar("booleans are not scalars")
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x), Fraction(0))
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, ParamPoly) and x.is_constant():
            return self.coerce(x.constant_value())
        raise BadScalar(f"not a Gaussian rational: {x!r}")

    def _env(self):
        return {"__const__": lambda q: GaussianRational(q, Fraction(0)), "i": GAUSS_I}

    def parse(self, text):
        return self.coerce(parse_in_env(text, self._env()))

    def format(self, x):
        return format_scalar(x)

    def invert(self, x):
        return self.coerce(x).inverse()


@dataclass(frozen=True)
class PolynomialRing:
    base: object
    variables: tuple

    def __post_init__(self):
        bad = set(self.variables) & _RESERVED_NAMES
        if bad:
            raise BadScalar(f"parameter names {sorted(bad)} are reserved")
        if len(set(self.variables)) != len(self.variables):
            raise BadScalar("duplicate parameter names")

    @property
    def tag(self):
        return self.base.tag

    def zero(self):
        return ParamPoly(self.variables, {})

    def one(self):
        return ParamPoly.constant(self.variables, self.base.one())

    def var(self, name):
        return ParamPoly.var(self.variables, name)

    def coerce(self, x):
        if isinstance(x, ParamPoly):
            if x.variables == self.variables:
                return x
            if x.is_constant():
                return ParamPoly.constant(self.variables, x.constant_value())
            if set(x.variables) <= set(self.variables):
                # remap exponents into the larger variable tuple
                slots = [self.variables.index(v) for v in x.variables]
                terms = {}
                for expo, coeff in x.terms.items():
                    new = [0] * len(self.variables)
                    for slot, e in zip(slots, expo):
                        new[slot] = e
                    terms[tuple(new)] = coeff
                return ParamPoly(self.variables, terms)
            raise BadScalar("polynomial over a different parameter tuple")
        if isinstance(x, (int, Fraction, GaussianRational)):
            return ParamPoly.constant(self.variables, self.base.coerce(x))
        raise BadScalar(f"not a polynomial scalar: {x!r}")

    def _env(self):
        env = {"__const__": lambda q: ParamPoly.constant(self.variables, self.base.coerce(q))}
        if isinstance(self.base, GaussianField):
            env["i"] = ParamPoly.constant(self.variables, GAUSS_I)
        for name in self.variables:
            env[name] = ParamPoly.var(self.variables, name)
        return env

    def parse(self, text):
        return self.coerce(parse_in_env(text, self._env()))

    def format(self, x):
        return format_scalar(x)


@dataclass(frozen=True)
class SeriesRing:
    base: object
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be at least 1")

    @property
    def tag(self):
        return self.base.tag

    def zero(self):
        return TruncSeries.constant(self.order, self.base.zero())

    def one(self):
        return TruncSeries.constant(self.order, self.base.one())

    def h(self):
        return TruncSeries(self.order, (self.base.zero(), self.base.one()))

    def coerce(self, x):
        if isinstance(x, TruncSeries):
            if x.order != self.order:
                raise OrderMismatch(
                    f"series order {x.order} does not match ring order {self.order}"
                )
            return TruncSeries(self.order, tuple(self.base.coerce(c) for c in x.coeffs))
        return TruncSeries.constant(self.order, self.base.coerce(x))

    def _env(self):
        env = dict(self.base._env())
        base_env_const = env["__const__"]
        env["__const__"] = lambda q: TruncSeries.constant(self.order, base_env_const(q))
        for name, value in list(env.items()):
            if name != "__const__" and not isinstance(value, TruncSeries):
                env[name] = TruncSeries.constant(self.order, value)
        env["h"] = self.h()
        return env

    def parse(self, text):
        body, order = _split_order_suffix(text)
        if order is not None and order != self.order:
            raise OrderMismatch(
                f"series literal declares order {order}, ring has order {self.order}"
            )
        return self.coerce(parse_in_env(body, self._env()))

    def format(self, x):
        return format_scalar(self.coerce(x))


QQ = RationalField()
QI = GaussianField()


def field_by_tag(tag):
    if tag == "Q":
        return QQ
    if tag == "Qi":
        return QI
    raise BadScalar(f"unknown field tag {tag!r} (expected 'Q' or 'Qi')")


def parse_series(text, base=QQ, order=None):
    """Parse a standalone series string; the truncation order comes from the
    '@order=N' suffix unless supplied explicitly."""
    body, declared = _split_order_suffix(text)
    if order is None:
        order = declared
    elif declared is not None and declared != order:
        raise OrderMismatch(
            f"series literal declares order {declared}, expected {order}"
        )
    if order is None:
        raise BadScalar(f"series literal needs an '@order=N' suffix: {text!r}")
    return SeriesRing(base, order).parse(f"{body}@order={order}")
