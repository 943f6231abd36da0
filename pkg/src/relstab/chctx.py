"""Bounded chain complexes of F_p spaces: the second Frobenius context.

Conventions: differentials go down, d_i : X_i -> X_{i-1}; the shift [1]
moves a complex up one degree and negates its differential. Contractible
complexes play the role of the projective-injectives, so "stably zero"
here means nullhomotopic. Support is confined to a fixed window so that
repeated (de)suspension cannot run away.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import SquareNonzero, WindowExceeded
from .linalg import (
    Mat,
    PrimeField,
    kernel_basis,
    kronecker,
    mat_mul,
    rand_invertible,
    solve_linear,
    vstack,
)
from .rng import SplitMix64

DEFAULT_WINDOW = (-8, 8)


class FComplex:
    """A bounded complex of finite-dimensional F_p spaces.

    Construction trims zero components at both ends, so equal-looking
    complexes have equal support data. The zero complex is normalized to a
    single zero component in degree 0.
    """

    __slots__ = ("field", "lo", "hi", "dims", "diffs")

    def __init__(self, field: PrimeField, lo: int, dims: Sequence[int],
                 diffs: Sequence[Mat], window: Tuple[int, int] = DEFAULT_WINDOW):
        dims = [int(d) for d in dims]
        hi = lo + len(dims) - 1
        if len(diffs) != max(len(dims) - 1, 0):
            raise ValueError("need one differential per adjacent pair of degrees")
        diffs = list(diffs)
        # trim zero components (keeping differentials aligned)
        while dims and dims[-1] == 0:
            dims.pop()
            if diffs:
                diffs.pop()
            hi -= 1
        while dims and dims[0] == 0:
            dims.pop(0)
            if diffs:
                diffs.pop(0)
            lo += 1
        if not dims:
            lo, hi, dims, diffs = 0, 0, [0], []
        if lo < window[0] or hi > window[1]:
            raise WindowExceeded(f"support [{lo}, {hi}] outside window {window}")
        for k, d in enumerate(diffs):
            i = lo + k + 1  # d is X_i -> X_{i-1}
            if d.rows != dims[k] or d.cols != dims[k + 1]:
                raise ValueError(f"differential at degree {i} has shape "
                                 f"{d.rows}x{d.cols}, expected {dims[k]}x{dims[k + 1]}")
            if d.field.p != field.p:
                raise ValueError("differential over the wrong field")
        for k in range(len(diffs) - 1):
            if not mat_mul(diffs[k], diffs[k + 1]).is_zero():
                raise SquareNonzero(f"d.d != 0 entering degree {lo + k}", degree=lo + k + 2)
        self.field = field
        self.lo = lo
        self.hi = lo + len(dims) - 1
        self.dims = tuple(dims)
        self.diffs = tuple(diffs)

    def dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def d(self, i: int) -> Mat:
        """The differential X_i -> X_{i-1} (zero-shaped outside support)."""
        if self.lo + 1 <= i <= self.hi:
            return self.diffs[i - self.lo - 1]
        return Mat.zeros(self.field, self.dim(i - 1), self.dim(i))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def __repr__(self) -> str:
        return f"FComplex(F{self.field.p}, [{self.lo}..{self.hi}], dims={list(self.dims)})"


class ChainMap:
    """A degreewise map satisfying d f = f d exactly."""

    __slots__ = ("src", "dst", "comps")

    def __init__(self, src: FComplex, dst: FComplex, comps: Dict[int, Mat]):
        if src.field.p != dst.field.p:
            raise ValueError("source and target over different fields")
        kept: Dict[int, Mat] = {}
        for i, m in comps.items():
            if m.rows != dst.dim(i) or m.cols != src.dim(i):
                raise ValueError(f"component at degree {i} has shape "
                                 f"{m.rows}x{m.cols}, expected {dst.dim(i)}x{src.dim(i)}")
            if m.rows and m.cols:
                kept[i] = m
        self.src = src
        self.dst = dst
        self.comps = kept
        lo = min(src.lo, dst.lo)
        hi = max(src.hi, dst.hi)
        for i in range(lo, hi + 2):
            lhs = mat_mul(dst.d(i), self.comp(i))
            rhs = mat_mul(self.comp(i - 1), src.d(i))
            if lhs != rhs:
                raise ValueError(f"chain condition fails at degree {i}")

    def comp(self, i: int) -> Mat:
        got = self.comps.get(i)
        if got is not None:
            return got
        return Mat.zeros(self.src.field, self.dst.dim(i), self.src.dim(i))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def __repr__(self) -> str:
        return f"ChainMap([{self.src.lo}..{self.src.hi}] -> [{self.dst.lo}..{self.dst.hi}])"


def complex_from_data(field: PrimeField, lo: int, dims: Sequence[int],
                      diffs: Sequence[Mat], window: Tuple[int, int] = DEFAULT_WINDOW) -> FComplex:
    """Validated complex; raises SquareNonzero with a witness degree."""
    return FComplex(field, lo, dims, diffs, window)


def zero_complex(field: PrimeField) -> FComplex:
    return FComplex(field, 0, [0], [])


def sphere(field: PrimeField, i: int) -> FComplex:
    """S(i): one copy of F_p in degree i."""
    return FComplex(field, i, [1], [])


def disk(field: PrimeField, i: int) -> FComplex:
    """D(i): F_p in degrees i and i-1 with identity differential; contractible."""
    return FComplex(field, i - 1, [1, 1], [Mat.identity(field, 1)])


def shift(x: FComplex, k: int) -> FComplex:
    """[k]: degrees move up by k, differential picks up sign (-1)^k."""
    sign = 1 if k % 2 == 0 else -1
    return FComplex(x.field, x.lo + k, list(x.dims), [sign * d for d in x.diffs])


def homology_dims(x: FComplex) -> Dict[int, int]:
    """dim H_i = dim ker d_i - rank d_{i+1}, for each supported degree."""
    out = {}
    for i in x.degrees():
        ker = x.dim(i) - _rank(x.d(i))
        out[i] = ker - _rank(x.d(i + 1))
    return out


def _rank(m: Mat) -> int:
    from .linalg import rank
    return rank(m)


def disk_embedding(x: FComplex, window: Tuple[int, int] = DEFAULT_WINDOW) -> ChainMap:
    """The split mono x -> C(x) into the contractible complex on x.

    C(x)_i = x_i (+) x_{i-1} with differential [[d, id], [0, -d]]; the
    embedding is the identity into the first block. The target carries a
    nullhomotopy of its identity, so it is stably zero.
    """
    f = x.field
    lo, hi = x.lo, x.hi + 1
    dims = [x.dim(i) + x.dim(i - 1) for i in range(lo, hi + 1)]
    diffs = []
    for i in range(lo + 1, hi + 1):
        top = np.concatenate([x.d(i).arr,
                              np.eye(x.dim(i - 1), dtype=np.int64)], axis=1)
        bot = np.concatenate([np.zeros((x.dim(i - 2), x.dim(i)), dtype=np.int64),
                              (-x.d(i - 1).arr) % f.p], axis=1)
        diffs.append(Mat(f, np.concatenate([top, bot], axis=0)))
    target = FComplex(f, lo, dims, diffs, window)
    comps = {}
    for i in x.degrees():
        block = np.concatenate([np.eye(x.dim(i), dtype=np.int64),
                                np.zeros((x.dim(i - 1), x.dim(i)), dtype=np.int64)], axis=0)
        comps[i] = Mat(f, block)
    return ChainMap(x, target, comps)


def disk_epi(x: FComplex, window: Tuple[int, int] = DEFAULT_WINDOW) -> ChainMap:
    """The split epi P(x) -> x from the contractible complex under x.

    P(x)_i = x_i (+) x_{i+1} with differential [[d, 0], [id, -d]]; the epi
    projects onto the first block. Kernel coordinates realize the
    down-shift with negated differential.
    """
    f = x.field
    lo, hi = x.lo - 1, x.hi
    dims = [x.dim(i) + x.dim(i + 1) for i in range(lo, hi + 1)]
    diffs = []
    for i in range(lo + 1, hi + 1):
        top = np.concatenate([x.d(i).arr,
                              np.zeros((x.dim(i - 1), x.dim(i + 1)), dtype=np.int64)], axis=1)
        bot = np.concatenate([np.eye(x.dim(i), dtype=np.int64),
                              (-x.d(i + 1).arr) % f.p], axis=1)
        diffs.append(Mat(f, np.concatenate([top, bot], axis=0)))
    source = FComplex(f, lo, dims, diffs, window)
    comps = {}
    for i in x.degrees():
        block = np.concatenate([np.eye(x.dim(i), dtype=np.int64),
                                np.zeros((x.dim(i), x.dim(i + 1)), dtype=np.int64)], axis=1)
        comps[i] = Mat(f, block)
    return ChainMap(source, x, comps)


def truncation_W(x: FComplex) -> Tuple[FComplex, ChainMap]:
    """Good truncation at 0: W(x) = (... -> X_1 -> ker d_0 -> 0), included in x."""
    f = x.field
    k0 = kernel_basis(x.d(0))
    if x.hi < 0:
        w = zero_complex(f)
        return w, ChainMap(w, x, {})
    dims = [k0.cols] + [x.dim(i) for i in range(1, x.hi + 1)]
    diffs = []
    if x.hi >= 1:
        d1 = solve_linear(k0, x.d(1))
        assert d1 is not None, "im d_1 must land in ker d_0"
        diffs.append(d1)
        for i in range(2, x.hi + 1):
            diffs.append(x.d(i))
    w = FComplex(f, 0, dims, diffs)
    comps = {0: k0}
    for i in range(1, x.hi + 1):
        comps[i] = Mat.identity(f, x.dim(i))
    return w, ChainMap(w, x, comps)


def _hom_degrees(x: FComplex, y: FComplex) -> List[int]:
    return [i for i in range(min(x.lo, y.lo), max(x.hi, y.hi) + 1)
            if x.dim(i) > 0 and y.dim(i) > 0]


def chain_hom_basis(x: FComplex, y: FComplex) -> List[ChainMap]:
    """Basis of chain maps x -> y via one linear system over all degrees."""
    if x.field.p != y.field.p:
        raise ValueError("complexes over different fields")
    f = x.field
    degs = _hom_degrees(x, y)
    sizes = [y.dim(i) * x.dim(i) for i in degs]
    total = sum(sizes)
    if total == 0:
        return []
    offsets = {}
    off = 0
    for i, s in zip(degs, sizes):
        offsets[i] = off
        off += s
    rows = []
    for i in range(min(x.lo, y.lo), max(x.hi, y.hi) + 2):
        r = y.dim(i - 1) * x.dim(i)
        if r == 0:
            continue
        block = np.zeros((r, total), dtype=np.int64)
        present = False
        if i in offsets:  # d_y . f_i term
            coeff = kronecker(y.d(i), Mat.identity(f, x.dim(i)))
            if not coeff.is_zero():
                block[:, offsets[i]:offsets[i] + sizes[degs.index(i)]] = coeff.arr
                present = True
        if (i - 1) in offsets:  # - f_{i-1} . d_x term
            coeff = kronecker(Mat.identity(f, y.dim(i - 1)), x.d(i).transpose())
            if not coeff.is_zero():
                j = degs.index(i - 1)
                block[:, offsets[i - 1]:offsets[i - 1] + sizes[j]] = (
                    block[:, offsets[i - 1]:offsets[i - 1] + sizes[j]] - coeff.arr) % f.p
                present = True
        if present:
            rows.append(Mat(f, block))
    sys_mat = vstack(rows) if rows else Mat.zeros(f, 0, total)
    basis = kernel_basis(sys_mat)
    out = []
    for j in range(basis.cols):
        comps = {}
        for i, s in zip(degs, sizes):
            seg = basis.arr[offsets[i]:offsets[i] + s, j]
            comps[i] = Mat(f, seg.reshape(y.dim(i), x.dim(i)))
        out.append(ChainMap(x, y, comps))
    return out


def nullhomotopy_solve(fmap: ChainMap) -> Optional[Dict[int, Mat]]:
    """Find h with f = d h + h d, or report that none exists."""
    x, y = fmap.src, fmap.dst
    f = x.field
    hdegs = [i for i in range(min(x.lo, y.lo) - 1, max(x.hi, y.hi) + 1)
             if x.dim(i) > 0 and y.dim(i + 1) > 0]
    sizes = [y.dim(i + 1) * x.dim(i) for i in hdegs]
    total = sum(sizes)
    offsets = {}
    off = 0
    for i, s in zip(hdegs, sizes):
        offsets[i] = off
        off += s
    rows, rhs = [], []
    for i in range(min(x.lo, y.lo), max(x.hi, y.hi) + 1):
        r = y.dim(i) * x.dim(i)
        if r == 0:
            continue
        block = np.zeros((r, total), dtype=np.int64)
        if i in offsets:  # d_{i+1} h_i
            coeff = kronecker(y.d(i + 1), Mat.identity(f, x.dim(i)))
            block[:, offsets[i]:offsets[i] + sizes[hdegs.index(i)]] = coeff.arr
        if (i - 1) in offsets:  # h_{i-1} d_i
            coeff = kronecker(Mat.identity(f, y.dim(i)), x.d(i).transpose())
            j = hdegs.index(i - 1)
            block[:, offsets[i - 1]:offsets[i - 1] + sizes[j]] = (
                block[:, offsets[i - 1]:offsets[i - 1] + sizes[j]] + coeff.arr) % f.p
        rows.append(Mat(f, block))
        rhs.append(Mat(f, fmap.comp(i).arr.reshape(r, 1)))
    if not rows:
        return {}
    sol = solve_linear(vstack(rows), vstack(rhs))
    if sol is None:
        return None
    out = {}
    for i, s in zip(hdegs, sizes):
        seg = sol.arr[offsets[i]:offsets[i] + s, 0]
        out[i] = Mat(f, seg.reshape(y.dim(i + 1), x.dim(i)))
    return out


def random_complex(field: PrimeField, rng: SplitMix64, lo: int = -3, hi: int = 3,
                   max_dim: int = 3) -> FComplex:
    """Seeded bounded complex with component dims <= max_dim.

    Built as a sum of spheres and disks, then conjugated degreewise by
    random invertible base changes; over a field this reaches every
    isomorphism class with d^2 = 0 holding by construction.
    """
    for _ in range(64):
        spheres = {i: rng.below(2) for i in range(lo, hi + 1)}
        disks = {i: rng.below(2) for i in range(lo + 1, hi + 1)}  # D(i) sits in i, i-1
        dims = {i: spheres.get(i, 0) + disks.get(i, 0) + disks.get(i + 1, 0)
                for i in range(lo, hi + 1)}
        if all(v <= max_dim for v in dims.values()) and any(dims.values()):
            break
    else:
        return sphere(field, max(lo, 0))
    # per-degree basis order: spheres, tops of D(i), bottoms of D(i+1)
    diffs = []
    for i in range(lo + 1, hi + 1):
        m = np.zeros((dims[i - 1], dims[i]), dtype=np.int64)
        for t in range(disks.get(i, 0)):
            col = spheres.get(i, 0) + t
            row = spheres.get(i - 1, 0) + disks.get(i - 1, 0) + t
            m[row, col] = 1
        diffs.append(Mat(field, m))
    x = FComplex(field, lo, [dims[i] for i in range(lo, hi + 1)], diffs)
    # conjugate by random base changes
    changes = {i: rand_invertible(field, x.dim(i), rng) for i in x.degrees()}
    new_diffs = []
    for i in range(x.lo + 1, x.hi + 1):
        pi = changes[i - 1]
        qi = changes[i]
        qin = solve_linear(qi, Mat.identity(field, qi.rows))
        assert qin is not None
        new_diffs.append(mat_mul(mat_mul(pi, x.d(i)), qin))
    return FComplex(field, x.lo, list(x.dims), new_diffs)
