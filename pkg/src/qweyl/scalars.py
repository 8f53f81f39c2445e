"""Exact scalar arithmetic for the coefficient field.

Coefficients live in the field of rational functions over Q in a fixed
tuple of parameter symbols, with every symbol invertible (Laurent).  A
sparse Laurent polynomial maps integer exponent vectors to nonzero
Fractions; a Scalar is a pair of such polynomials num/den.

Generic parameters are a free abelian group on the symbols: a monomial is
just its exponent vector, so multiplicative independence (no parameter a
root of unity, no hidden relations) is encoded exactly.  Fractions are not
reduced by multivariate GCD; normalization extracts monomial content from
the denominator and scales it monic, and equality is decided by
cross-multiplication of the (canonical, zero-free) term dicts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Exponents = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LatticeMismatchError(ValueError):
    """Raised when operands belong to different parameter lattices."""


class SpecializationError(ValueError):
    """Raised when a substitution makes a denominator vanish."""


class ParameterLattice:
    """Ordered set of parameter symbols; fixes exponent-vector layout."""

    __slots__ = ("symbols", "index")

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if len(set(syms)) != len(syms):
            raise ValueError(f"duplicate parameter symbols: {syms}")
        self.symbols = syms
        self.index = {s: i for i, s in enumerate(syms)}

    @property
    def k(self) -> int:
        return len(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParameterLattice) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"ParameterLattice({list(self.symbols)})"

    # -- constructors ------------------------------------------------------

    def zero_exponents(self) -> Exponents:
        return (0,) * self.k

    def zero(self) -> "Scalar":
        return Scalar(LaurentPoly(self, {}), self.poly_one(), _normalized=True)

    def one(self) -> "Scalar":
        return self.monomial({})

    def rational(self, value) -> "Scalar":
        c = Fraction(value)
        num = LaurentPoly(self, {self.zero_exponents(): c} if c else {})
        return Scalar(num, self.poly_one(), _normalized=True)

    def poly_one(self) -> "LaurentPoly":
        return LaurentPoly(self, {self.zero_exponents(): _ONE})

    def symbol(self, name: str) -> "Scalar":
        return self.monomial({name: 1})

    def monomial(self, powers: Mapping[str, int]) -> "Scalar":
        """Scalar 1 * prod(symbol**power)."""
        exps = [0] * self.k
        for name, e in powers.items():
            if name not in self.index:
                raise KeyError(f"unknown parameter symbol {name!r}")
            exps[self.index[name]] = e
        num = LaurentPoly(self, {tuple(exps): _ONE})
        return Scalar(num, self.poly_one(), _normalized=True)

    def from_exponents(self, exps: Iterable[int]) -> "Scalar":
        v = tuple(exps)
        if len(v) != self.k:
            raise LatticeMismatchError(f"exponent vector length {len(v)} != {self.k}")
        return Scalar(LaurentPoly(self, {v: _ONE}), self.poly_one(), _normalized=True)


class LaurentPoly:
    """Sparse Laurent polynomial: exponent vector -> nonzero Fraction."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: ParameterLattice, terms: Mapping[Exponents, Fraction]):
        self.lattice = lattice
        self.terms = {e: c for e, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.lattice == other.lattice
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LaurentPoly({render_poly(self)})"

    def _check(self, other: "LaurentPoly") -> None:
        if self.lattice != other.lattice:
            raise LatticeMismatchError("operands use different parameter lattices")

    def add(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.lattice, out)

    def neg(self) -> "LaurentPoly":
        return LaurentPoly(self.lattice, {e: -c for e, c in self.terms.items()})

    def sub(self, other: "LaurentPoly") -> "LaurentPoly":
        return self.add(other.neg())

    def mul(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.lattice, out)

    def scale(self, c: Fraction) -> "LaurentPoly":
        if not c:
            return LaurentPoly(self.lattice, {})
        return LaurentPoly(self.lattice, {e: c * v for e, v in self.terms.items()})

    def shift(self, delta: Exponents) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector delta."""
        return LaurentPoly(
            self.lattice,
            {tuple(x + d for x, d in zip(e, delta)): c for e, c in self.terms.items()},
        )

    def content_exponents(self) -> Exponents:
        """Componentwise minimum exponent over all terms (zero poly: zeros)."""
        if not self.terms:
            return self.lattice.zero_exponents()
        mins = None
        for e in self.terms:
            mins = e if mins is None else tuple(map(min, mins, e))
        return mins

    def substitute(self, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at exact rational parameter values (all symbols required)."""
        lat = self.lattice
        vals = []
        for s in lat.symbols:
            if s not in values:
                raise SpecializationError(f"no value supplied for symbol {s!r}")
            v = Fraction(values[s])
            if v == 0:
                raise SpecializationError(f"symbol {s!r} specialized to zero")
            vals.append(v)
        total = _ZERO
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                term *= v**p
            total += term
        return total


class Scalar:
    """Element of the fraction field: num / den with den != 0.

    Equality is cross-multiplication; no multivariate GCD is performed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _normalized: bool = False):
        if num.lattice != den.lattice:
            raise LatticeMismatchError("num/den use different parameter lattices")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def lattice(self) -> ParameterLattice:
        return self.num.lattice

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self == self.lattice.one()

    def _check(self, other: "Scalar") -> None:
        if self.lattice != other.lattice:
            raise LatticeMismatchError("operands use different parameter lattices")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if self.den == other.den:
            return Scalar(self.num.add(other.num), self.den)
        num = self.num.mul(other.den).add(other.num.mul(self.den))
        return Scalar(num, self.den.mul(other.den))

    def __neg__(self) -> "Scalar":
        return Scalar(self.num.neg(), self.den, _normalized=True)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.num.mul(other.num), self.den.mul(other.den))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.num.mul(other.den), self.den.mul(other.num))

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero scalar")
        return Scalar(self.den, self.num)

    def __pow__(self, e: int) -> "Scalar":
        if e == 0:
            return self.lattice.one()
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        return self.num.mul(other.den) == other.num.mul(self.den)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Scalar({render_scalar(self)})"

    def as_monomial(self) -> Exponents | None:
        """Exponent vector if this is exactly 1 * monomial, else None."""
        if len(self.num.terms) != 1 or len(self.den.terms) != 1:
            return None
        (en, cn), = self.num.terms.items()
        (ed, cd), = self.den.terms.items()
        if cn != cd:
            return None
        return tuple(a - b for a, b in zip(en, ed))

    def substitute(self, values: Mapping[str, Fraction]) -> Fraction:
        den = self.den.substitute(values)
        if den == 0:
            raise SpecializationError("denominator vanishes under this substitution")
        return self.num.substitute(values) / den


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Canonicalize: zero -> 0/1; strip den's monomial content; make den monic."""
    if num.is_zero():
        return num, num.lattice.poly_one()
    content = den.content_exponents()
    if any(content):
        delta = tuple(-x for x in content)
        num = num.shift(delta)
        den = den.shift(delta)
    lead = den.terms[max(den.terms)]
    if lead != _ONE:
        inv = 1 / lead
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


# -- rendering and parsing of the external monomial-string format ----------
#
# Monomial strings look like "q1^2*g12^-1"; "1" is the empty monomial.

def render_exponents(lattice: ParameterLattice, exps: Exponents) -> str:
    parts = []
    for s, e in zip(lattice.symbols, exps):
        if e == 1:
            parts.append(s)
        elif e != 0:
            parts.append(f"{s}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(lattice: ParameterLattice, text: str) -> Scalar:
    text = text.strip()
    if text == "1":
        return lattice.one()
    powers: dict[str, int] = {}
    for part in text.split("*"):
        part = part.strip()
        if "^" in part:
            name, _, exp = part.partition("^")
            e = int(exp)
        else:
            name, e = part, 1
        if name not in lattice.index:
            raise KeyError(f"unknown parameter symbol {name!r} in monomial {text!r}")
        powers[name] = powers.get(name, 0) + e
    return lattice.monomial(powers)


def render_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = render_exponents(p.lattice, e)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def render_scalar(s: Scalar) -> str:
    return f"({render_poly(s.num)})/({render_poly(s.den)})"
