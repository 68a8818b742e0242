"""Exact rational linear algebra for cochain complexes.

Everything here works over the rationals (``fractions.Fraction``) or over a
prime field ``GF(p)``.  Matrices are stored densely, but coboundary matrices
are mostly zeros, so rank works on the non-zero pattern of each row:
fraction-free elimination over the integers (rows kept primitive by their
gcd) for the rational case, ordinary elimination modulo ``p`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import NotAComplexError

__all__ = [
    "RationalMatrix",
    "CochainComplex",
    "rank",
    "determinant",
    "solve_unique",
    "cohomology_dims",
    "euler_characteristic",
]


_ZERO = Fraction(0)


def _compact(x: Fraction):
    # integral entries as int: exact, and much faster to multiply
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix with rational entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(
            self, "entries", tuple(x if type(x) is Fraction else Fraction(x) for x in self.entries)
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def from_entries(cls, rows: int, cols: int, nonzero: dict):
        """Build from a ``{(i, j): value}`` map of the non-zero entries."""
        out = [_ZERO] * (rows * cols)
        sparse = [{} for _ in range(rows)]
        for (i, j), x in sorted(nonzero.items()):
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            x = Fraction(x)
            if x:
                out[i * cols + j] = x
                sparse[i][j] = _compact(x)
        m = cls(rows, cols, tuple(out))
        # seed the cached sparse view; it is derived data, not state
        m.__dict__["sparse_rows"] = tuple(sparse)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    @cached_property
    def sparse_rows(self) -> tuple:
        """Per row, the ``{column: value}`` map of its non-zero entries.

    Integral values are stored as ``int``.
    """
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append({j: _compact(x) for j, x in enumerate(r) if x})
        return tuple(out)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        right = other.sparse_rows
        out = {}
        for i, r in enumerate(self.sparse_rows):
            for k, x in r.items():
                for j, y in right[k].items():
                    out[i, j] = out.get((i, j), 0) + x * y
        return RationalMatrix.from_entries(self.rows, other.cols, {ij: x for ij, x in out.items() if x})

    def is_zero(self):
        return not any(self.entries)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, {self.to_rows()!r})"


def _integer_rows(m: RationalMatrix) -> list:
    # Scale each row by the lcm of its denominators; rank is unchanged.
    out = []
    for r in m.sparse_rows:
        den = lcm(*(x.denominator for x in r.values())) if r else 1
        out.append({j: int(x * den) for j, x in r.items()})
    return out


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def _integer_rank(rows) -> int:
    """Rank over Q of integer rows given as ``{column: value}`` maps.

    Rows are reduced one at a time against the pivots found so far; each
    step ``a * row - b * pivot`` stays in the integers.
    """
    pivots = {}
    for row in rows:
        r = _primitive(dict(row))
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = r
                break
            a, b = piv[c], r[c]
            new = {j: a * v for j, v in r.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            r = _primitive(new) if new else new
    return len(pivots)


def _modp_rank(rows, p: int) -> int:
    """Rank over GF(p) of rows given as ``{column: residue}`` maps."""
    pivots = {}
    for row in rows:
        r = {j: v % p for j, v in row.items() if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in r.items()}
                break
            f = r[c]
            for j, v in piv.items():
                w = (r.get(j, 0) - f * v) % p
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
    return len(pivots)


def rank(m: RationalMatrix, prime: Optional[int] = None) -> int:
    """Rank of ``m`` over Q, or over GF(prime) when ``prime`` is given.

    Rational entries are reduced to the prime field via their denominators,
    which must then be invertible mod ``prime``.
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    if prime is None:
        return _integer_rank(_integer_rows(m))
    red = []
    for r in m.sparse_rows:
        rr = {}
        for j, x in r.items():
            if x.denominator % prime == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} not invertible mod {prime}")
            rr[j] = x.numerator * pow(x.denominator, -1, prime)
        red.append(rr)
    return _modp_rank(red, prime)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_unique(a: Sequence[Sequence], b: Sequence) -> Optional[tuple]:
    """Solve ``a x = b`` exactly when ``a`` has full column rank.

    Returns the unique rational solution, or None if the system is
    inconsistent.  Raises ValueError when the solution is not unique.
    """
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        return None
    if len(pivots) < n_cols:
        raise ValueError("system does not have full column rank")
    return tuple(aug[i][-1] for i in range(n_cols))


@dataclass(frozen=True)
class CochainComplex:
    """``0 -> C^0 -> C^1 -> ... -> C^top -> 0`` described by dimensions.

    ``boundaries[p]`` maps ``C^p`` to ``C^{p+1}``; missing trailing maps are
    zero.
    """

    dims: tuple
    boundaries: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        if len(self.boundaries) > max(len(self.dims) - 1, 0):
            raise ValueError("more boundary maps than gaps between terms")
        for p, d in enumerate(self.boundaries):
            if d.cols != self.dims[p] or d.rows != self.dims[p + 1]:
                raise ValueError(
                    f"boundary {p} has shape {d.rows}x{d.cols}, "
                    f"expected {self.dims[p + 1]}x{self.dims[p]}"
                )

    def check(self):
        """Raise NotAComplexError unless consecutive boundaries compose to zero."""
        for p in range(len(self.boundaries) - 1):
            comp = self.boundaries[p + 1] @ self.boundaries[p]
            if not comp.is_zero():
                raise NotAComplexError(f"d^{p + 1} o d^{p} is non-zero")


def cohomology_dims(c: CochainComplex, prime: Optional[int] = None, check: bool = True) -> list:
    """Dimensions of ``H^p`` for every term of the complex."""
    if check:
        c.check()
    ranks = [rank(d, prime) for d in c.boundaries]
    ranks += [0] * (len(c.dims) - len(ranks))
    out = []
    for p, dim in enumerate(c.dims):
        incoming = ranks[p - 1] if p > 0 else 0
        out.append(dim - ranks[p] - incoming)
    return out


def euler_characteristic(values: Sequence[int]) -> int:
    return sum((-1) ** p * v for p, v in enumerate(values))
