"""Exact polynomial arithmetic over the Gaussian rationals.

Every scalar in the package is a :class:`Polynomial`: a finite map from
monomials to :class:`GaussianRational` coefficients.  Symbols come in two
kinds.  A ``real`` symbol is its own conjugate; a ``complex`` symbol ``x``
is paired with ``x_bar`` and conjugation swaps the two.

Coefficients use :class:`fractions.Fraction`, so there is no floating
point anywhere.  Monomials are ordered lexicographically by symbol name,
which fixes the printing order.

The textual syntax accepted by :func:`parse_polynomial` and produced by
``str(Polynomial)`` is::

    3/2*psi2*lam^2 - (1/2+3*i)*phi01 + 1-2i
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .errors import ConjugationMismatch, NotExactlyDivisible, ParseError, SymbolicCoefficient

__all__ = [
    "GaussianRational",
    "Symbol",
    "Polynomial",
    "poly_arith",
    "poly_conj",
    "substitute",
    "conj_closure",
    "is_identically_zero",
    "squarefree_decomposition",
    "parse_polynomial",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return NotImplemented

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        im = _imag_str(abs(self.im))
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{im}"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)


class Symbol:
    """An interned scalar symbol.

    Symbols are interned by ``(name, kind)`` in a process-wide table, so
    identity comparison is equality.  The table is append-only.
    """

    __slots__ = ("name", "kind", "key", "__weakref__")
    _table: dict = {}

    def __new__(cls, name: str, kind: str = "complex"):
        if kind not in ("real", "complex"):
            raise ValueError(f"unknown symbol kind {kind!r}")
        if not _NAME_RE.fullmatch(name) or name == "i":
            raise ValueError(f"invalid symbol name {name!r}")
        if kind == "real" and name.endswith("_bar"):
            raise ValueError("the _bar suffix is reserved for complex conjugates")
        found = cls._table.get((name, kind))
        if found is not None:
            return found
        obj = super().__new__(cls)
        obj.name = name
        obj.kind = kind
        obj.key = (name, kind)
        # setdefault keeps interning race-free under concurrent callers
        return cls._table.setdefault((name, kind), obj)

    def __reduce__(self):
        return (Symbol, (self.name, self.kind))

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def is_conjugate(self) -> bool:
        """True for the ``_bar`` member of a complex pair."""
        return self.kind == "complex" and self.name.endswith("_bar")

    def conj(self) -> "Symbol":
        if self.kind == "real":
            return self
        if self.name.endswith("_bar"):
            return Symbol(self.name[:-4], "complex")
        return Symbol(self.name + "_bar", "complex")

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.kind!r})"

    def __str__(self):
        return self.name


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_SENTINEL = (("\U0010ffff",), 0)


def _sym_key(item):
    return item[0].key


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items(), key=_sym_key))


def _lex_key(mono: tuple):
    """Sort key that puts lexicographically larger monomials first."""
    return tuple((s.key, -e) for s, e in mono) + (_SENTINEL,)


def _mono_div(a: tuple, b: tuple):
    """Return a/b as a monomial, or None if b does not divide a."""
    d = dict(a)
    for s, e in b:
        have = d.get(s, 0)
        if have < e:
            return None
        if have == e:
            del d[s]
        else:
            d[s] = have - e
    return tuple(sorted(d.items(), key=_sym_key))


Scalar = Union["Polynomial", GaussianRational, Fraction, int]


class Polynomial:
    """Multivariate polynomial with Gaussian rational coefficients.

    Instances are immutable; the term map never stores a zero coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        if terms is None:
            self._terms = {}
        else:
            self._terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, value) -> "Polynomial":
        c = GaussianRational.coerce(value)
        if c is NotImplemented:
            raise TypeError(f"cannot make a constant polynomial from {value!r}")
        return cls._raw({(): c} if c else {})

    @classmethod
    def symbol(cls, name: str | Symbol, kind: str = "complex") -> "Polynomial":
        s = name if isinstance(name, Symbol) else Symbol(name, kind)
        return cls._raw({((s, 1),): _GR_ONE})

    @staticmethod
    def coerce(value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return Polynomial.const(value)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise SymbolicCoefficient(f"polynomial {self} is not constant")
        return self._terms.get((), _GR_ZERO)

    def symbols(self) -> set:
        out = set()
        for mono in self._terms:
            for s, _ in mono:
                out.add(s)
        return out

    def degree(self, sym: Symbol | None = None) -> int:
        """Total degree, or the degree in ``sym``.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if sym is None:
            return max(sum(e for _, e in m) for m in self._terms)
        return max(dict(m).get(sym, 0) for m in self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: _lex_key(t[0]))

    def leading_term(self):
        return min(self._terms.items(), key=lambda t: _lex_key(t[0]))

    def is_self_conjugate(self) -> bool:
        return self.conj() == self

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce_or_none(other)
            if other is None:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce_or_none(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = GaussianRational.coerce(other)
            if c is NotImplemented:
                return NotImplemented
            return self.scale(c)
        if not self._terms or not other._terms:
            return Polynomial._raw({})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                prev = out.get(m)
                out[m] = c1 * c2 if prev is None else prev + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        if not c:
            return Polynomial._raw({})
        if c == _GR_ONE:
            return self
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def __truediv__(self, other):
        """Division by a nonzero constant only; see :meth:`divexact` otherwise."""
        if isinstance(other, Polynomial):
            other = other.constant_value()
        c = GaussianRational.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / other``; raises NotExactlyDivisible otherwise."""
        other = Polynomial.coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term()
        lc_inv = lc.inverse()
        rem = self
        quot: dict = {}
        while rem._terms:
            m, c = rem.leading_term()
            qm = _mono_div(m, lm)
            if qm is None:
                raise NotExactlyDivisible(f"{other} does not divide {self}")
            qc = c * lc_inv
            quot[qm] = qc
            rem = rem - Polynomial._raw({qm: qc}) * other
        return Polynomial._raw(quot)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.divexact(self)
        except NotExactlyDivisible:
            return False
        return True

    def conj(self) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            cm = tuple(sorted(((s.conj(), e) for s, e in m), key=_sym_key))
            out[cm] = c.conj()
        return Polynomial._raw(out)

    def substitute(self, bindings: Mapping, check: bool = True) -> "Polynomial":
        return substitute(self, bindings, check=check)

    def evaluate(self, values: Mapping) -> GaussianRational:
        """Evaluate at constant values; every symbol must be bound."""
        total = _GR_ZERO
        for m, c in self._terms.items():
            t = c
            for s, e in m:
                try:
                    v = values[s]
                except KeyError:
                    raise SymbolicCoefficient(f"no value for symbol {s}") from None
                t = t * _gr_pow(GaussianRational.coerce(v), e)
            total = total + t
        return total

    def coefficient(self, sym: Symbol, power: int = 1) -> "Polynomial":
        """Coefficient of ``sym**power`` viewing self as a polynomial in ``sym``."""
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            if d.get(sym, 0) != power:
                continue
            d.pop(sym, None)
            out[tuple(sorted(d.items(), key=_sym_key))] = c
        return Polynomial._raw(out)

    def content(self) -> "Polynomial":
        """Monomial gcd of the terms times the leading coefficient."""
        if not self._terms:
            return Polynomial._raw({})
        monos = list(self._terms)
        common = dict(monos[0])
        for m in monos[1:]:
            d = dict(m)
            for s in list(common):
                e = min(common[s], d.get(s, 0))
                if e:
                    common[s] = e
                else:
                    del common[s]
        _, lc = self.leading_term()
        return Polynomial._raw({tuple(sorted(common.items(), key=_sym_key)): lc})

    def normalized(self) -> "Polynomial":
        """Scale so the leading coefficient is 1."""
        if not self._terms:
            return self
        _, lc = self.leading_term()
        return self.scale(lc.inverse())

    # -- comparison and printing -----------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce_or_none(other)
            if other is None:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            neg, body = _term_str(mono, c)
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


def _coerce_or_none(value):
    c = GaussianRational.coerce(value)
    if c is NotImplemented:
        return None
    return Polynomial.const(c)


def _gr_pow(v: GaussianRational, e: int) -> GaussianRational:
    out = _GR_ONE
    for _ in range(e):
        out = out * v
    return out


def _term_str(mono: tuple, c: GaussianRational) -> tuple:
    mono_s = "*".join(s.name if e == 1 else f"{s.name}^{e}" for s, e in mono)
    if c.im and c.re:
        coeff = f"({c})"
        neg = False
    else:
        value = c.re if c.re else c.im
        neg = value < 0
        mag = abs(value)
        if c.im:
            coeff = "i" if mag == 1 else f"{mag}*i"
        else:
            coeff = "" if (mag == 1 and mono_s) else str(mag)
    if not mono_s:
        return neg, coeff
    if not coeff:
        return neg, mono_s
    return neg, f"{coeff}*{mono_s}"


# ---------------------------------------------------------------------------
# free-function API


def poly_arith(a: Scalar, b: Scalar, op: str) -> Polynomial:
    a, b = Polynomial.coerce(a), Polynomial.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_conj(a: Scalar) -> Polynomial:
    return Polynomial.coerce(a).conj()


def is_identically_zero(a: Scalar) -> bool:
    return Polynomial.coerce(a).is_zero()


def conj_closure(bindings: Mapping) -> dict:
    """Complete ``bindings`` with the conjugate binding of every complex symbol."""
    out = {}
    for s, v in bindings.items():
        v = Polynomial.coerce(v)
        out[s] = v
        if not s.is_real:
            out.setdefault(s.conj(), v.conj())
    return out


def _check_bindings(bindings: Mapping) -> None:
    for s, v in bindings.items():
        if s.is_real:
            if not v.is_self_conjugate():
                raise ConjugationMismatch(f"real symbol {s} bound to non-real value {v}")
            continue
        partner = s.conj()
        if partner not in bindings:
            raise ConjugationMismatch(f"{s} is bound but its partner {partner} is not")
        if bindings[partner] != v.conj():
            raise ConjugationMismatch(f"bindings of {s} and {partner} are not conjugate")


def substitute(a: Scalar, bindings: Mapping, check: bool = True) -> Polynomial:
    """Replace symbols by polynomials.

    With ``check`` the bindings must respect conjugation: a bound complex
    symbol needs the conjugate binding for its partner, and a real symbol
    needs a self-conjugate value.  ``check=False`` is for formal
    variables that never get conjugated.
    """
    a = Polynomial.coerce(a)
    bindings = {s: Polynomial.coerce(v) for s, v in bindings.items()}
    if check:
        _check_bindings(bindings)
    if not bindings:
        return a
    result: dict = {}
    power_cache: dict = {}
    for mono, c in a._terms.items():
        term = Polynomial._raw({(): c})
        rest = []
        for s, e in mono:
            v = bindings.get(s)
            if v is None:
                rest.append((s, e))
                continue
            key = (s, e)
            pv = power_cache.get(key)
            if pv is None:
                pv = power_cache[key] = v ** e
            term = term * pv
        if rest:
            term = term * Polynomial._raw({tuple(rest): _GR_ONE})
        for m, v in term._terms.items():
            prev = result.get(m)
            result[m] = v if prev is None else prev + v
    return Polynomial._raw({m: v for m, v in result.items() if v})


# ---------------------------------------------------------------------------
# univariate machinery: dense coefficient lists, lowest degree first


def _ustrip(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _uderiv(p: list) -> list:
    return _ustrip([p[k] * k for k in range(1, len(p))])


def _usub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _ustrip([(a[k] if k < len(a) else _GR_ZERO) - (b[k] if k < len(b) else _GR_ZERO)
                    for k in range(n)])


def _umonic(p: list) -> list:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _uprem(a: list, b: list) -> list:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed without division."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    k = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[j + shift] = r[j + shift] - lr * bc
        _ustrip(r)
        k -= 1
    if k > 0:
        f = _gr_pow(lb, k)
        r = [c * f for c in r]
    return r


def _udivexact(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    q = [_GR_ZERO] * (len(a) - db)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv
        q[shift] = c
        for j, bc in enumerate(b):
            a[j + shift] = a[j + shift] - c * bc
        _ustrip(a)
    if a:
        raise NotExactlyDivisible("univariate division left a remainder")
    return q


def _ugcd(a: list, b: list) -> list:
    """Monic gcd by a pseudo-remainder sequence with monic normalization."""
    a, b = _ustrip(list(a)), _ustrip(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _uprem(a, b)
        a, b = b, (_umonic(r) if r else r)
    return _umonic(a) if a else a


def _to_dense(q: Polynomial):
    syms = q.symbols()
    if len(syms) > 1:
        raise SymbolicCoefficient(f"{q} is not univariate with constant coefficients")
    var = next(iter(syms)) if syms else None
    deg = q.degree(var) if var is not None else 0
    dense = [_GR_ZERO] * (deg + 1)
    for m, c in q.items():
        dense[m[0][1] if m else 0] = c
    return var, dense


def _from_dense(p: list, var: Symbol) -> Polynomial:
    terms = {}
    for k, c in enumerate(p):
        if c:
            terms[((var, k),) if k else ()] = c
    return Polynomial._raw(terms)


def squarefree_decomposition_dense(q: list) -> list:
    """Yun's algorithm on a dense coefficient list.

    Returns ``[(factor, multiplicity), ...]`` with monic, squarefree,
    pairwise coprime factors of positive degree.
    """
    f = _ustrip([GaussianRational.coerce(c) for c in q])
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if len(f) == 1:
        return []
    f = _umonic(f)
    out = []
    df = _uderiv(f)
    a = _ugcd(f, df)
    b = _udivexact(f, a)
    c = _udivexact(df, a)
    d = _usub(c, _uderiv(b))
    i = 1
    while len(b) > 1:
        a = _ugcd(b, d) if d else list(b)
        if len(a) > 1:
            out.append((a, i))
        b = _udivexact(b, a)
        c = _udivexact(d, a) if d else []
        d = _usub(c, _uderiv(b))
        i += 1
    return out


def squarefree_decomposition(q: Polynomial) -> list:
    """Squarefree decomposition of a univariate polynomial with constant coefficients.

    ``q == lc * prod(f**m for f, m in result)`` where ``lc`` is the leading
    coefficient of ``q``.  Each factor is monic.

    >>> z = Polynomial.symbol("z", "real")
    >>> [(str(f), m) for f, m in squarefree_decomposition(z**4 + 6*z**2)]
    [('z', 2), ('z^2 + 6', 1)]
    """
    q = Polynomial.coerce(q)
    var, dense = _to_dense(q)
    if var is None:
        if q.is_zero():
            raise ValueError("squarefree decomposition of the zero polynomial")
        return []
    return [(_from_dense(f, var), m) for f, m in squarefree_decomposition_dense(dense)]


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, resolve: Callable[[str], Symbol]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.resolve = resolve

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                value = value * self.unary()
            elif tok == ("op", "/"):
                self.take()
                den = self.unary()
                if not den.is_constant() or den.is_zero():
                    self.fail("division by a non-constant or zero")
                value = value / den
            elif tok == ("name", "i"):
                # juxtaposed imaginary unit, as in 2i
                self.take()
                value = value * GaussianRational(0, 1)
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer")
            return base ** n
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial.const(val)
        if kind == "name":
            if val == "i":
                return Polynomial.const(GaussianRational(0, 1))
            return Polynomial.symbol(self.resolve(val))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail(f"unexpected token {val!r}")


def parse_polynomial(text: str, symbols: Mapping[str, Symbol] | Callable[[str], Symbol] | None = None) -> Polynomial:
    """Parse the textual scalar syntax.

    ``symbols`` maps names to :class:`Symbol` (``x_bar`` is resolved as the
    partner of a declared complex ``x``), or is a resolver callable.  With
    ``None`` only numeric input is accepted.
    """
    if callable(symbols):
        resolve = symbols
    else:
        table = dict(symbols or {})

        def resolve(name: str) -> Symbol:
            s = table.get(name)
            if s is not None:
                return s
            if name.endswith("_bar"):
                base = table.get(name[:-4])
                if base is not None and not base.is_real:
                    return base.conj()
            raise ParseError(f"undeclared symbol {name!r}")

    return _Parser(str(text), resolve).parse()


def symbols_of(polys: Iterable[Polynomial]) -> set:
    out = set()
    for p in polys:
        out |= p.symbols()
    return out
