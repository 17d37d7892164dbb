"""Sequence machinery for tilings of (2 x n)-boards on {4, q}.

Everything is computed over BiPoly first; integer tables are evaluations,
except for the Fibonacci-specialised formulas (``fib_*``) which work with
plain ints on purpose so they form an independent route.

Indexing convention throughout: ``u(-1) == 0`` and ``fib(-1) == 0``.
"""
from __future__ import annotations

import csv
import functools
import io
import itertools
import json
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .bipoly import A, B, ONE, ZERO, BiPoly
from .errors import InvariantViolation, ParameterError

KINDS = ("R", "A", "B", "C", "Rtilde", "Atilde", "Btilde", "Ctilde", "u", "f", "r", "rtilde")
PROVENANCES = ("oracle", "system", "closed", "fib")
AS_STATED, CORRECTED = "as_stated", "corrected"
MODES = (AS_STATED, CORRECTED)


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 4:
        raise ParameterError(f"q must be an integer >= 4, got {q!r}")


def _check_n(N: int, lowest: int = 0) -> None:
    if not isinstance(N, int) or N < lowest:
        raise ParameterError(f"table length must be an integer >= {lowest}, got {N!r}")


# -- generalised Fibonacci ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def u(k: int) -> BiPoly:
    """u_k = a u_{k-1} + b u_{k-2}, u_0 = 1, u_1 = a, u_{-1} = 0."""
    if k < -1:
        raise ParameterError(f"u is defined for k >= -1, got {k}")
    if k == -1:
        return ZERO
    if k == 0:
        return ONE
    if k == 1:
        return A
    return A * u(k - 1) + B * u(k - 2)


@functools.lru_cache(maxsize=None)
def fib(k: int) -> int:
    """Shifted Fibonacci numbers f_k = F_{k+1}: f_{-1}=0, f_0=f_1=1."""
    if k < -1:
        raise ParameterError(f"f is defined for k >= -1, got {k}")
    if k == -1:
        return 0
    if k <= 1:
        return 1
    return fib(k - 1) + fib(k - 2)


def fibonacci(n: int) -> int:
    """Standard Fibonacci F_n with F_0 = 0, F_1 = 1."""
    return fib(n - 1)


@dataclass(frozen=True)
class SequenceTable:
    q: int
    kind: str
    provenance: str
    values: Tuple[BiPoly, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown table kind {self.kind!r}")
        if self.provenance not in PROVENANCES:
            raise ParameterError(f"unknown provenance {self.provenance!r}")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def get(self, k: int) -> BiPoly:
        """Like indexing, but ``k == -1`` gives 0 for the u and f families."""
        if k == -1 and self.kind in ("u", "f"):
            return ZERO
        if k < 0:
            raise IndexError(k)
        return self.values[k]

    def at(self, a: int = 1, b: int = 1) -> List[int]:
        return [v.eval(a, b) for v in self.values]

    def same_values(self, other: "SequenceTable") -> bool:
        return tuple(self.values) == tuple(other.values)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "kind": self.kind,
            "provenance": self.provenance,
            "values": [v.to_json() for v in self.values],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self, a: int = 1, b: int = 1) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(self.at(a, b))
        return buf.getvalue().rstrip("\n")


def _table(q, kind, provenance, values) -> SequenceTable:
    return SequenceTable(q, kind, provenance, tuple(BiPoly.promote(v) for v in values))


def u_table(N: int) -> SequenceTable:
    _check_n(N)
    return _table(0, "u", "system", [u(k) for k in range(N + 1)])


def f_table(N: int) -> SequenceTable:
    _check_n(N)
    return _table(0, "f", "fib", [fib(k) for k in range(N + 1)])


# -- coupled system for R, A, B, C ------------------------------------------


@dataclass(frozen=True)
class Matrix4:
    """4x4 matrix of BiPoly entries, rows/columns ordered (R, A, B, C)."""

    rows: Tuple[Tuple[BiPoly, ...], ...]

    def __post_init__(self):
        if len(self.rows) != 4 or any(len(r) != 4 for r in self.rows):
            raise ParameterError("Matrix4 needs exactly 4 rows of 4 entries")

    @classmethod
    def of(cls, rows) -> "Matrix4":
        return cls(tuple(tuple(BiPoly.promote(x) for x in r) for r in rows))

    @classmethod
    def identity(cls) -> "Matrix4":
        return cls.of([[int(i == j) for j in range(4)] for i in range(4)])

    def entry(self, i: int, j: int) -> BiPoly:
        """1-based access, matching the usual matrix notation."""
        return self.rows[i - 1][j - 1]

    def at(self, a: int, b: int) -> List[List[int]]:
        return [[x.eval(a, b) for x in r] for r in self.rows]

    def apply(self, vec: Sequence[BiPoly]) -> Tuple[BiPoly, ...]:
        return tuple(sum((x * v for x, v in zip(r, vec)), ZERO) for r in self.rows)


def coefficient_matrix(q: int) -> Matrix4:
    _check_q(q)
    u2, u3, u4, u5 = u(q - 2), u(q - 3), u(q - 4), u(q - 5)
    ab, b2 = A * B, B * B
    return Matrix4.of([
        [u2, ab * u4, B * u3, b2 * u4],
        [u3, ab * u5, B * u4, b2 * u5],
        [u3, B * u4, ZERO, ZERO],
        [u4, B * u5, ZERO, ZERO],
    ])


def unbreakable_matrix(q: int) -> Matrix4:
    """Coefficient matrix of the system with breakable tilings removed."""
    m = coefficient_matrix(q)
    return Matrix4.of([[ZERO] + list(r[1:]) for r in m.rows])


def _iterate_system(matrix: Matrix4, start, N):
    cols = [[v] for v in start]
    vec = tuple(start)
    for _ in range(N):
        vec = matrix.apply(vec)
        for col, v in zip(cols, vec):
            col.append(v)
    return cols


def system_tables(q: int, N: int) -> Tuple[SequenceTable, SequenceTable, SequenceTable, SequenceTable]:
    """R, A, B, C from the coupled recurrence, started at R_0=1, A_0=B_0=C_0=0.

    The first step reproduces R_1=u_{q-2}, A_1=B_1=u_{q-3}, C_1=u_{q-4}.
    """
    _check_q(q)
    _check_n(N)
    cols = _iterate_system(coefficient_matrix(q), (ONE, ZERO, ZERO, ZERO), N)
    return tuple(_table(q, k, "system", c) for k, c in zip("RABC", cols))  # type: ignore[return-value]


# -- polynomials in x with BiPoly coefficients (index = power of x) -----------


def xpoly_mul(p: Sequence[BiPoly], r: Sequence[BiPoly]) -> List[BiPoly]:
    out = [ZERO] * (len(p) + len(r) - 1) if p and r else []
    for i, x in enumerate(p):
        if x.is_zero():
            continue
        for j, y in enumerate(r):
            out[i + j] = out[i + j] + x * y
    return out


def xpoly_add(p: Sequence[BiPoly], r: Sequence[BiPoly]) -> List[BiPoly]:
    n = max(len(p), len(r))
    return [(p[i] if i < len(p) else ZERO) + (r[i] if i < len(r) else ZERO) for i in range(n)]


def xpoly_trim(p: Sequence[BiPoly]) -> List[BiPoly]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def characteristic_polynomial(rows: Sequence[Sequence[BiPoly]]) -> List[BiPoly]:
    """det(x I - M) by full Leibniz expansion; coefficients from x^0 upwards."""
    n = len(rows)
    entries = [
        [[-BiPoly.promote(rows[i][j]), ONE] if i == j else [-BiPoly.promote(rows[i][j])] for j in range(n)]
        for i in range(n)
    ]
    total: List[BiPoly] = []
    for perm in itertools.permutations(range(n)):
        term: List[BiPoly] = [BiPoly(_perm_sign(perm))]
        for i, j in enumerate(perm):
            term = xpoly_mul(term, entries[i][j])
        total = xpoly_add(total, term)
    return xpoly_trim(total)


def characteristic_coeffs(m: Matrix4) -> Tuple[BiPoly, BiPoly, BiPoly, BiPoly]:
    """(c3, c2, c1, c0) with det(xI - M) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0."""
    poly = characteristic_polynomial(m.rows)
    poly += [ZERO] * (5 - len(poly))
    if poly[4] != ONE:
        raise InvariantViolation(f"characteristic polynomial not monic: leading {poly[4]}")
    return poly[3], poly[2], poly[1], poly[0]


# -- quartic recurrence coefficients ----------------------------------------


@dataclass(frozen=True)
class CoeffSet:
    """Coefficients of R_n = alpha R_{n-1} + beta R_{n-2} + gamma R_{n-3} + delta R_{n-4}."""

    q: int
    alpha: BiPoly
    beta: BiPoly
    gamma: BiPoly
    delta: BiPoly

    def as_tuple(self) -> Tuple[BiPoly, BiPoly, BiPoly, BiPoly]:
        return self.alpha, self.beta, self.gamma, self.delta

    def at(self, a: int = 1, b: int = 1) -> Tuple[int, int, int, int]:
        return tuple(x.eval(a, b) for x in self.as_tuple())  # type: ignore[return-value]

    def to_dict(self) -> dict:
        return {"q": self.q, **{k: v.to_json() for k, v in zip(("alpha", "beta", "gamma", "delta"), self.as_tuple())}}


def coeffs_from_u(q: int) -> CoeffSet:
    """Coefficient formulas written in u_{q-2} .. u_{q-5}."""
    u2, u3, u4, u5 = u(q - 2), u(q - 3), u(q - 4), u(q - 5)
    a, b = A, B
    alpha = a * b * u5 + u2
    beta = b * (b**2 * u5**2 - a * u5 * u2 + 2 * b * u4**2 + a * u4 * u3 + u3**2)
    gamma = -(b**2) * (b * u5**2 * u2 - 2 * u4 * u3**2 + a * u5 * u3**2 + u4**2 * u2)
    delta = -(b**4) * (u5**2 * u3**2 - 2 * u5 * u4**2 * u3 + u4**4)
    return CoeffSet(q, alpha, beta, gamma, delta)


def coeffs_reduced(q: int) -> CoeffSet:
    """Coefficient formulas written in u_{q-4} and u_{q-5} only."""
    u4, u5 = u(q - 4), u(q - 5)
    a, b = A, B
    alpha = (a**2 + b) * u4 + 2 * a * b * u5
    beta = (2 * a**2 + 2 * b) * b * u4**2 + (-(a**3) + 2 * a * b) * b * u4 * u5 + (-(a**2) * b + 2 * b**2) * b * u5**2
    gamma = (
        (a**2 - b) * b**2 * u4**3
        - (a**3 - 3 * a * b) * b**2 * u4**2 * u5
        - (3 * a**2 * b - b**2) * b**2 * u4 * u5**2
        - 2 * a * b**4 * u5**3
    )
    delta = -(b ** (2 * (q - 2)))
    return CoeffSet(q, alpha, beta, gamma, delta)


@functools.lru_cache(maxsize=None)
def closed_coeffs(q: int) -> CoeffSet:
    """Explicit alpha..delta for mosaic q; both written forms must agree."""
    _check_q(q)
    long_form = coeffs_from_u(q)
    short_form = coeffs_reduced(q)
    if long_form != short_form:
        raise InvariantViolation(f"explicit coefficient forms disagree at q={q}")
    return short_form


def coeff_tables_recursive(q_max: int) -> List[CoeffSet]:
    """Coefficients for q = 4..q_max grown from their own recurrences in q."""
    _check_q(q_max)
    a, b = A, B
    alpha = {4: a**2 + b, 5: a * (a**2 + 3 * b)}
    beta = {
        4: 2 * b * (a**2 + b),
        5: b * (a**2 + b) * (a**2 + 2 * b),
        6: b * (a**6 + 6 * a**4 * b + 10 * a**2 * b**2 + 2 * b**3),
    }
    gamma = {4: b**2 * (a**2 - b), 5: -a * b**3 * (a**2 + b)}
    delta = {4: -(b**4)}
    for q in range(6, q_max + 1):
        alpha[q] = a * alpha[q - 1] + b * alpha[q - 2]
        gamma[q] = -a * b * gamma[q - 1] + b**3 * gamma[q - 2]
    for q in range(7, q_max + 1):
        beta[q] = (a**2 + b) * beta[q - 1] + b * (a**2 + b) * beta[q - 2] - b**3 * beta[q - 3]
    for q in range(5, q_max + 1):
        delta[q] = b**2 * delta[q - 1]
    return [CoeffSet(q, alpha[q], beta[q], gamma[q], delta[q]) for q in range(4, q_max + 1)]


def delta_law_holds(q: int) -> bool:
    """delta_q = -b^(2(q-2)) and delta_{q+1} = b^2 delta_q."""
    here = coeffs_from_u(q).delta
    nxt = coeffs_from_u(q + 1).delta
    return here == -(B ** (2 * (q - 2))) and nxt == B**2 * here


def characteristic_matches_closed(q: int) -> bool:
    c3, c2, c1, c0 = characteristic_coeffs(coefficient_matrix(q))
    cs = closed_coeffs(q)
    return (c3, c2, c1, c0) == (-cs.alpha, -cs.beta, -cs.gamma, -cs.delta)


# -- closed forms for R_n ------------------------------------------------------


def closed_initial_values(q: int) -> Tuple[BiPoly, BiPoly, BiPoly, BiPoly]:
    """R_0 .. R_3 from their closed formulas."""
    _check_q(q)
    u2, u3, u4, u5 = u(q - 2), u(q - 3), u(q - 4), u(q - 5)
    a, b = A, B
    r2 = u2**2 + a * b * u4 * u3 + b * u3**2 + b**2 * u4**2
    r3 = (
        (u2**2 + 2 * a * b * u4 * u3 + 2 * b * u3**2 + 2 * b**2 * u4**2) * u2
        + b**2 * (u3 * u4 + (a**2 + b) * u4 * u5 + a * u4**2) * u3
        + a * b**3 * u4**2 * u5
    )
    r3_expanded = (
        (u2**2 + a * b * u4 * u3 + b * u3**2 + b**2 * u4**2) * u2
        + (a * b * u2 * u4 + a**2 * b**2 * u4 * u5 + b**2 * u3 * u4 + b**3 * u4 * u5) * u3
        + (b * u2 * u3 + a * b**2 * u4**2) * u3
        + (b**2 * u2 * u4 + a * b**3 * u4 * u5) * u4
    )
    if r3 != r3_expanded:
        raise InvariantViolation(f"the two R_3 formulas disagree at q={q}")
    return ONE, u2, r2, r3


def _extend_linear(seed: Sequence, coeffs: Sequence, N: int, zero):
    """Extend ``seed`` to length N+1 with x_n = sum_k coeffs[k] x_{n-1-k}."""
    vals = list(seed[: N + 1])
    while len(vals) <= N:
        n = len(vals)
        acc = zero
        for k, c in enumerate(coeffs):
            acc = acc + c * vals[n - 1 - k]
        vals.append(acc)
    return vals[: N + 1]


def closed_R_table(q: int, N: int) -> SequenceTable:
    _check_q(q)
    _check_n(N)
    cs = closed_coeffs(q)
    vals = _extend_linear(closed_initial_values(q), cs.as_tuple(), N, ZERO)
    return _table(q, "R", "closed", vals)


def fib_coeffs(q: int) -> Tuple[int, int, int, int]:
    """Quartic recurrence coefficients at a = b = 1, written with Fibonacci numbers."""
    _check_q(q)
    sign = (-1) ** (q - 1)
    return 2 * fib(q - 3), 5 * fib(q - 4) ** 2 + sign, 2 * (-1) ** q * fib(q - 5), -1


def fib_r_table(q: int, N: int) -> SequenceTable:
    _check_q(q)
    _check_n(N)
    f4, f5 = fib(q - 4), fib(q - 5)
    seed = [
        1,
        fib(q - 2),
        7 * f4**2 + 7 * f4 * f5 + 2 * f5**2,
        22 * f4**3 + 36 * f4**2 * f5 + 19 * f4 * f5**2 + 3 * f5**3,
    ]
    return _table(q, "r", "fib", _extend_linear(seed, fib_coeffs(q), N, 0))


def katz_stenson_table(N: int) -> SequenceTable:
    """q = 4 cubic recurrence R_n = (a^2+2b)R_{n-1} + a^2 b R_{n-2} - b^3 R_{n-3}."""
    _check_n(N)
    a, b = A, B
    seed = [ONE, a**2 + b, a**4 + 4 * a**2 * b + 2 * b**2]
    return _table(4, "R", "closed", _extend_linear(seed, (a**2 + 2 * b, a**2 * b, -(b**3)), N, ZERO))


def mcquistan_table(N: int) -> SequenceTable:
    """Untinted q = 4 counts: r_n = 3 r_{n-1} + r_{n-2} - r_{n-3}, from 1, 2, 7."""
    _check_n(N)
    return _table(4, "r", "fib", _extend_linear([1, 2, 7], (3, 1, -1), N, 0))


def quartic_q4() -> List[BiPoly]:
    """x^4 - alpha_4 x^3 - beta_4 x^2 - gamma_4 x - delta_4, low powers first."""
    cs = closed_coeffs(4)
    return [-cs.delta, -cs.gamma, -cs.beta, -cs.alpha, ONE]


def q4_factorisation() -> Tuple[List[BiPoly], List[BiPoly]]:
    """The quartic for q=4 and the product (x + b)(x^3 - (a^2+2b)x^2 - a^2 b x + b^3)."""
    a, b = A, B
    cubic = [b**3, -(a**2) * b, -(a**2 + 2 * b), ONE]
    return quartic_q4(), xpoly_mul([b, ONE], cubic)


# -- unbreakable tilings -------------------------------------------------------


def unbreakable_system_tables(q: int, N: int):
    """R~, A~, B~, C~ with breakable tilings removed from the coupled system.

    Seeded at n = 1 with (u_{q-2}, u_{q-3}, u_{q-3}, u_{q-4}).  Index 0 holds
    the empty board: R~_0 = 1 (its single tiling is vacuously unbreakable)
    and the subboard entries are 0.
    """
    _check_q(q)
    _check_n(N, 1)
    start = (u(q - 2), u(q - 3), u(q - 3), u(q - 4))
    cols = _iterate_system(unbreakable_matrix(q), start, N - 1)
    zero_row = (ONE, ZERO, ZERO, ZERO)
    kinds = ("Rtilde", "Atilde", "Btilde", "Ctilde")
    return tuple(_table(q, k, "system", [z] + c) for k, z, c in zip(kinds, zero_row, cols))


def binary_coeffs(q: int) -> Tuple[BiPoly, BiPoly]:
    """Coefficients of the two-term recurrence for unbreakable tilings."""
    u4, u5 = u(q - 4), u(q - 5)
    return A * B * u5, B**2 * (u4**2 + B * u5**2)


def unbreakable_r2(q: int) -> BiPoly:
    u3, u4 = u(q - 3), u(q - 4)
    return A * B * u3 * u4 + B * u3**2 + B**2 * u4**2


def unbreakable_closed_table(q: int, N: int, mode: str = CORRECTED) -> SequenceTable:
    """R~_n from the two-term recurrence.

    ``as_stated`` seeds R~_1, R~_2 and recurs from n = 3.  ``corrected`` also
    takes R~_3, R~_4 from the coupled system and recurs only from n = 5, after
    the two zero eigenvalues of the unbreakable matrix have died out.
    """
    _check_q(q)
    _check_n(N, 1)
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    seed = [ONE, u(q - 2), unbreakable_r2(q)]
    if mode == CORRECTED:
        system = unbreakable_system_tables(q, max(N, 4))[0]
        seed += [system[3], system[4]]
    return _table(q, "Rtilde", "closed", _extend_linear(seed, binary_coeffs(q), N, ZERO))


def fib_unbreakable_table(q: int, N: int, mode: str = CORRECTED) -> SequenceTable:
    _check_q(q)
    _check_n(N, 1)
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    f2, f4, f5 = fib(q - 2), fib(q - 4), fib(q - 5)
    seed = [1, f2, 2 * f4 * f2 + (-1) ** (q - 1)]
    if mode == CORRECTED:
        system = unbreakable_system_tables(q, max(N, 4))[0]
        seed += [system[3].eval(1, 1), system[4].eval(1, 1)]
    coeffs = (f5, f4**2 + f5**2)
    return _table(q, "rtilde", "fib", _extend_linear(seed, coeffs, N, 0))


def fibonacci_identity_holds(n: int) -> bool:
    """F_n^2 - F_n F_{n-1} - F_{n-1}^2 == (-1)^(n-1)."""
    fn, fp = fibonacci(n), fibonacci(n - 1)
    return fn * fn - fn * fp - fp * fp == (-1) ** (n - 1)


def fib_bridge(q: int) -> Dict[str, Tuple[int, int]]:
    """(evaluated coefficient at a=b=1, Fibonacci formula) per coefficient."""
    cs = closed_coeffs(q).at(1, 1)
    fc = fib_coeffs(q)
    return {name: (x, y) for name, x, y in zip(("alpha", "beta", "gamma", "delta"), cs, fc)}
