"""Exact dense linear algebra over prime fields F_p.

Matrices are immutable, hold int64 entries reduced mod p, and every routine
is exact integer arithmetic; there is no floating point anywhere. Reduction
makes deterministic choices (leftmost pivot, top-down elimination, free
variables set to zero) so that downstream reports are byte-reproducible.

Zero-row and zero-column matrices are first-class citizens: kernels of
injective maps, homs between zero objects and empty direct sums all pass
through here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, FieldMismatch
from .rng import SplitMix64

_PRIMES_TO_97 = frozenset(
    {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
     53, 59, 61, 67, 71, 73, 79, 83, 89, 97}
)


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p for 2 <= p <= 97."""

    p: int

    def __post_init__(self):
        if self.p not in _PRIMES_TO_97:
            raise ValueError(f"p={self.p} is not a prime in [2, 97]")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)


class Mat:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("field", "arr")

    def __init__(self, field: PrimeField, entries):
        a = np.asarray(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2d array, got ndim={a.ndim}")
        a = a % field.p
        a.setflags(write=False)
        self.field = field
        self.arr = a

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zeros(field: PrimeField, rows: int, cols: int) -> "Mat":
        return Mat(field, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(field: PrimeField, n: int) -> "Mat":
        return Mat(field, np.eye(n, dtype=np.int64))

    @staticmethod
    def from_rows(field: PrimeField, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Mat":
        """Build from a row list; `cols` disambiguates the zero-row case."""
        if len(rows) == 0:
            return Mat.zeros(field, 0, 0 if cols is None else cols)
        return Mat(field, np.array(rows, dtype=np.int64))

    # -- basic views ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.arr.shape[0]

    @property
    def cols(self) -> int:
        return self.arr.shape[1]

    @property
    def entries(self) -> tuple:
        """Row-major flat entries."""
        return tuple(int(x) for x in self.arr.reshape(-1))

    def tolist(self) -> list:
        return [[int(x) for x in row] for row in self.arr]

    def transpose(self) -> "Mat":
        return Mat(self.field, self.arr.T)

    def is_zero(self) -> bool:
        return not self.arr.any()

    # -- arithmetic -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field.p == other.field.p
            and self.arr.shape == other.arr.shape
            and bool(np.array_equal(self.arr, other.arr))
        )

    __hash__ = None  # mutable-free but unhashable; compare by value

    def __add__(self, other: "Mat") -> "Mat":
        _check_same_shape(self, other)
        return Mat(self.field, self.arr + other.arr)

    def __sub__(self, other: "Mat") -> "Mat":
        _check_same_shape(self, other)
        return Mat(self.field, self.arr - other.arr)

    def __neg__(self) -> "Mat":
        return Mat(self.field, -self.arr)

    def __rmul__(self, scalar: int) -> "Mat":
        return Mat(self.field, self.arr * (scalar % self.field.p))

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"Mat(F{self.field.p}, {self.rows}x{self.cols})"


def _check_same_field(a: Mat, b: Mat) -> None:
    if a.field.p != b.field.p:
        raise FieldMismatch(f"F{a.field.p} vs F{b.field.p}")


def _check_same_shape(a: Mat, b: Mat) -> None:
    _check_same_field(a, b)
    if a.arr.shape != b.arr.shape:
        raise DimensionMismatch(f"{a.arr.shape} vs {b.arr.shape}")


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Exact product mod p. Entries stay far below int64 overflow."""
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    return Mat(a.field, (a.arr @ b.arr) % a.field.p)


class RrefResult(NamedTuple):
    reduced: Mat
    pivots: tuple
    rank: int


def rref(a: Mat) -> RrefResult:
    """Reduced row-echelon form, leftmost-pivot, top-down; deterministic."""
    p = a.field.p
    m = np.array(a.arr, dtype=np.int64)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        colv = m[:, c].copy()
        colv[r] = 0
        hot = np.nonzero(colv)[0]
        if hot.size:
            m[hot] = (m[hot] - np.outer(colv[hot], m[r])) % p
        pivots.append(c)
        r += 1
    return RrefResult(Mat(a.field, m), tuple(pivots), r)


def rank(a: Mat) -> int:
    return rref(a).rank


def is_invertible(a: Mat) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def kernel_basis(a: Mat) -> Mat:
    """Columns form the canonical null-space basis.

    Free variables are taken in ascending column order; pivot entries are
    back-solved from the reduced form. Column count is cols - rank.
    """
    red, pivots, rk = rref(a)
    p = a.field.p
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    k = np.zeros((a.cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, c in enumerate(pivots):
            k[c, j] = (-int(red.arr[i, f])) % p
    return Mat(a.field, k)


def solve_linear(a: Mat, b: Mat) -> Optional[Mat]:
    """Some X with a @ X = b, or None if inconsistent.

    Deterministic choice: free variables are set to zero.
    """
    _check_same_field(a, b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"a has {a.rows} rows, b has {b.rows}")
    aug = Mat(a.field, np.concatenate([a.arr, b.arr], axis=1))
    red, pivots, rk = rref(aug)
    if any(c >= a.cols for c in pivots):
        return None
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c, :] = red.arr[i, a.cols:]
    return Mat(a.field, x)


def kronecker(a: Mat, b: Mat) -> Mat:
    _check_same_field(a, b)
    return Mat(a.field, np.kron(a.arr, b.arr))


def direct_sum_mat(a: Mat, b: Mat) -> Mat:
    """Block-diagonal sum."""
    _check_same_field(a, b)
    out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=np.int64)
    out[: a.rows, : a.cols] = a.arr
    out[a.rows:, a.cols:] = b.arr
    return Mat(a.field, out)


def hstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("hstack of nothing")
    for m in mats[1:]:
        _check_same_field(mats[0], m)
    return Mat(mats[0].field, np.concatenate([m.arr for m in mats], axis=1))


def vstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("vstack of nothing")
    for m in mats[1:]:
        _check_same_field(mats[0], m)
    return Mat(mats[0].field, np.concatenate([m.arr for m in mats], axis=0))


def row_space(a: Mat) -> Mat:
    """Canonical form of the row space: nonzero rows of the rref."""
    red, pivots, rk = rref(a)
    return Mat(a.field, red.arr[:rk, :])


def quotient_projection(field: PrimeField, ambient_dim: int, image: Mat):
    """Projection onto a canonical complement of a column space.

    Returns (projection, section) with projection @ section = identity.
    The quotient coordinates are the non-pivot coordinates left after
    reducing by the echelon form of the image, so they are deterministic.
    """
    ech, pivots, rk = rref(image.transpose())
    rows = ech.arr[:rk, :]
    pivot_set = set(pivots)
    rest = [c for c in range(ambient_dim) if c not in pivot_set]
    sel = np.zeros((rk, ambient_dim), dtype=np.int64)
    for i, c in enumerate(pivots):
        sel[i, c] = 1
    full = (np.eye(ambient_dim, dtype=np.int64) - rows.T @ sel) % field.p
    proj = Mat(field, full[rest, :]) if rest else Mat.zeros(field, 0, ambient_dim)
    section = np.zeros((ambient_dim, len(rest)), dtype=np.int64)
    for j, c in enumerate(rest):
        section[c, j] = 1
    return proj, Mat(field, section)


def column_space_basis(a: Mat) -> Mat:
    """Canonical basis of the column space, returned as columns."""
    return row_space(a.transpose()).transpose()


def rand_mat(field: PrimeField, rows: int, cols: int, rng: SplitMix64) -> Mat:
    ent = [[rng.below(field.p) for _ in range(cols)] for _ in range(rows)]
    return Mat(field, np.array(ent, dtype=np.int64).reshape(rows, cols)) if rows and cols \
        else Mat.zeros(field, rows, cols)


def rand_invertible(field: PrimeField, n: int, rng: SplitMix64) -> Mat:
    if n == 0:
        return Mat.zeros(field, 0, 0)
    while True:
        m = rand_mat(field, n, n, rng)
        if is_invertible(m):
            return m
