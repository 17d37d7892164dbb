"""Exact polynomials in the two colour indeterminates ``a`` and ``b``.

``a`` counts the colours available to a square (monomer) and ``b`` the
colours available to a domino (dimer).  Coefficients are Python ints, so
nothing ever overflows.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import ParameterError

Exponents = Tuple[int, int]
Scalar = int


def _canonical_key(item):
    (da, db), _ = item
    return (-(da + db), -da)


class BiPoly:
    """Immutable sparse polynomial ``sum c * a^i * b^j``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Exponents, int], int, None] = None):
        if terms is None:
            clean = {}
        elif isinstance(terms, int):
            clean = {(0, 0): terms} if terms else {}
        else:
            clean = {}
            for (da, db), c in terms.items():
                if da < 0 or db < 0:
                    raise ParameterError(f"negative exponent in term {(da, db)}")
                if c:
                    clean[(int(da), int(db))] = int(c)
        self._terms = clean
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def promote(cls, value) -> "BiPoly":
        if isinstance(value, BiPoly):
            return value
        if isinstance(value, int):
            return cls(value)
        raise TypeError(f"cannot promote {type(value).__name__} to BiPoly")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponents, int]]:
        """Terms in canonical order: descending total degree, then descending a-degree."""
        return iter(sorted(self._terms.items(), key=_canonical_key))

    def coeff(self, da: int, db: int) -> int:
        return self._terms.get((da, db), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def constant(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0, 0), 0)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            # constants hash like the int they compare equal to
            if self.is_constant():
                self._hash = hash(self._terms.get((0, 0), 0))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = BiPoly.promote(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = BiPoly.promote(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return BiPoly.promote(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return BiPoly()
            return BiPoly._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ParameterError(f"exponent must be a non-negative int, got {e!r}")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def eval(self, a: int, b: int) -> int:
        """Exact evaluation at integer (or any ring) values of a and b."""
        return sum(c * a**i * b**j for (i, j), c in self._terms.items())

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self.items():
            factors = []
            if i:
                factors.append("a" if i == 1 else f"a^{i}")
            if j:
                factors.append("b" if j == 1 else f"b^{j}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[i, j, str(c)] for (i, j), c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable) -> "BiPoly":
        return cls({(int(i), int(j)): int(c) for i, j, c in data})


def monomial(c: int, da: int, db: int) -> BiPoly:
    if da < 0 or db < 0:
        raise ParameterError(f"monomial exponents must be >= 0, got ({da}, {db})")
    return BiPoly({(da, db): c})


ZERO = BiPoly()
ONE = BiPoly(1)
A = monomial(1, 1, 0)
B = monomial(1, 0, 1)


def add(p: BiPoly, q: BiPoly) -> BiPoly:
    return BiPoly.promote(p) + q


def mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return BiPoly.promote(p) * q


def evaluate(p: BiPoly, a_val: int, b_val: int) -> int:
    return BiPoly.promote(p).eval(a_val, b_val)
