"""Exact dense linear algebra over prime fields GF(p).

Row-vector convention: vectors are rows and matrices act on the right, so
the image of ``x`` under the map represented by ``m`` is ``x * m``.  This
makes the left and right multiplication maps of an algebra both plain
matrices acting on coefficient rows.

All values are immutable after construction, all operations are pure
functions, and nothing here uses floating point.  Batched numpy kernels
for sweeping large element sets live at the bottom of the module; they are
plain GF(p) arithmetic, vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

DEFAULT_GUARD = 1 << 20
MAX_PRIME = 1 << 16


class ModulusMismatch(ValueError):
    """Two operands carry different moduli."""


class InputError(ValueError):
    """Invalid user-facing input (bad prime, shape mismatch, bad table)."""


class ResourceGuardError(RuntimeError):
    """An enumeration would exceed the configured guard."""


class InternalCheckError(RuntimeError):
    """A structural self-check failed; indicates a bug, not bad input."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"{p!r} is not prime")
    if p > MAX_PRIME:
        raise InputError(f"prime {p} exceeds the supported bound {MAX_PRIME}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class Scalar:
    """A residue in GF(p).  Arithmetic rejects mixed moduli and division by zero."""

    value: int
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other: "Scalar | int") -> int:
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return Scalar(self.value + self._other(other), self.p)

    def __sub__(self, other):
        return Scalar(self.value - self._other(other), self.p)

    def __neg__(self):
        return Scalar(-self.value, self.p)

    def __mul__(self, other):
        return Scalar(self.value * self._other(other), self.p)

    def __truediv__(self, other):
        return Scalar(self.value * inv_mod(self._other(other), self.p), self.p)

    def __pow__(self, n: int):
        return Scalar(pow(self.value, n, self.p), self.p)

    def inverse(self) -> "Scalar":
        return Scalar(inv_mod(self.value, self.p), self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


def _check_same_p(a: "Mat", b: "Mat") -> None:
    if a.p != b.p:
        raise ModulusMismatch(f"mixed moduli {a.p} and {b.p}")


@dataclass(frozen=True)
class Mat:
    """Dense matrix over GF(p); rows are tuples of reduced ints."""

    p: int
    data: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(p: int, rows: Iterable[Sequence[int]]) -> "Mat":
        data = tuple(tuple(int(v) % p for v in row) for row in rows)
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise InputError("ragged matrix rows")
        return Mat(p, data)

    @staticmethod
    def identity(p: int, n: int) -> "Mat":
        return Mat(p, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(p: int, rows: int, cols: int) -> "Mat":
        return Mat(p, tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def transpose(self) -> "Mat":
        return Mat(self.p, tuple(zip(*self.data)) if self.data else ())

    def __add__(self, other: "Mat") -> "Mat":
        _check_same_p(self, other)
        return Mat(self.p, tuple(tuple((a + b) % self.p for a, b in zip(r1, r2))
                                 for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        _check_same_p(self, other)
        return Mat(self.p, tuple(tuple((a - b) % self.p for a, b in zip(r1, r2))
                                 for r1, r2 in zip(self.data, other.data)))

    def __mul__(self, other: "Mat") -> "Mat":
        _check_same_p(self, other)
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        p = self.p
        bt = other.transpose().data
        return Mat(p, tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt)
                            for row in self.data))

    def scale(self, c: int) -> "Mat":
        c %= self.p
        return Mat(self.p, tuple(tuple((c * v) % self.p for v in row) for row in self.data))

    def __pow__(self, n: int) -> "Mat":
        if self.rows != self.cols:
            raise InputError("power of a non-square matrix")
        result = Mat.identity(self.p, self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def trace(self) -> int:
        return sum(self.data[i][i] for i in range(min(self.rows, self.cols))) % self.p

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix: the image of ``vec`` under this map."""
        if len(vec) != self.rows:
            raise InputError("vector length does not match matrix rows")
        p = self.p
        out = [0] * self.cols
        for xi, row in zip(vec, self.data):
            if xi:
                for j, v in enumerate(row):
                    out[j] = (out[j] + xi * v) % p
        return tuple(out)

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> "Mat | None":
        """Gauss-Jordan inverse, or None if singular."""
        n = self.rows
        if n != self.cols:
            raise InputError("inverse of a non-square matrix")
        p = self.p
        aug = [list(self.data[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        row = 0
        for col in range(n):
            piv = next((r for r in range(row, n) if aug[r][col] % p), None)
            if piv is None:
                return None
            aug[row], aug[piv] = aug[piv], aug[row]
            inv = inv_mod(aug[row][col], p)
            aug[row] = [(v * inv) % p for v in aug[row]]
            for r in range(n):
                if r != row and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[row])]
            row += 1
        return Mat(p, tuple(tuple(r[n:]) for r in aug))


def _rref_rows(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = inv_mod(rows[r][col], p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(m: Mat) -> tuple[Mat, int]:
    """Canonical reduced row echelon form with zero rows dropped, plus rank.

    Idempotent: rref(rref(m)) == rref(m).
    """
    rows, pivots = _rref_rows([list(r) for r in m.data], m.p)
    return Mat(m.p, tuple(tuple(r) for r in rows)), len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of GF(p)^n held as a canonical RREF basis.

    Two subspaces are equal iff their basis matrices are identical, so
    equality of spans is literal equality of the dataclass.
    """

    p: int
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @staticmethod
    def from_vectors(p: int, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        rows = [[int(v) % p for v in vec] for vec in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise InputError("vector length does not match ambient dimension")
        red, pivots = _rref_rows(rows, p)
        return Subspace(p, ambient_dim, tuple(tuple(r) for r in red), tuple(pivots))

    @staticmethod
    def zero(p: int, ambient_dim: int) -> "Subspace":
        return Subspace(p, ambient_dim, (), ())

    @staticmethod
    def full(p: int, ambient_dim: int) -> "Subspace":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient_dim)) for i in range(ambient_dim))
        return Subspace(p, ambient_dim, eye, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"mixed moduli {self.p} and {other.p}")
        if self.ambient_dim != other.ambient_dim:
            raise InputError("ambient dimension mismatch")

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Eliminate the pivot coordinates of ``vec``; zero iff vec is a member."""
        p = self.p
        v = [int(x) % p for x in vec]
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if c:
                for j, b in enumerate(row):
                    if b:
                        v[j] = (v[j] - c * b) % p
        return tuple(v)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients of ``vec`` over the basis, or None if not a member."""
        if not self.contains_vector(vec):
            return None
        return tuple(int(vec[piv]) % self.p for piv in self.pivots)

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(row) for row in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(self.p, self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [[A A],[B 0]]; rows with zero left half carry the intersection."""
        self._check_compatible(other)
        n = self.ambient_dim
        rows = [list(r) + list(r) for r in self.basis]
        rows += [list(r) + [0] * n for r in other.basis]
        red, _ = _rref_rows(rows, self.p)
        vecs = [r[n:] for r in red if all(x == 0 for x in r[:n])]
        return Subspace.from_vectors(self.p, n, vecs)

    def elements(self) -> Iterable[tuple[int, ...]]:
        """All member vectors; p**dim of them."""
        p, n = self.p, self.ambient_dim
        coeffs = all_vectors(p, self.dim)
        if self.dim == 0:
            yield (0,) * n
            return
        basis = np.array(self.basis, dtype=np.int64)
        members = (coeffs @ basis) % p
        for row in members:
            yield tuple(int(v) for v in row)


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    """Sum, intersection, containment and equality of two subspaces.

    The modular dimension identity dim a + dim b = dim(a+b) + dim(a&b) is
    asserted on every call.
    """
    s = a.sum(b)
    i = a.intersect(b)
    if a.dim + b.dim != s.dim + i.dim:
        raise InternalCheckError("dimension formula violated in subspace_ops")
    return {"sum": s, "intersection": i, "contains": a.contains(b), "equal": a == b}


def kernel(m: Mat) -> Subspace:
    """Left kernel {x : x*m = 0} over the row convention; dim = rows - rank."""
    p = m.p
    nvars = m.rows
    red, pivots = _rref_rows([list(r) for r in m.transpose().data], p)
    pivset = set(pivots)
    free = [j for j in range(nvars) if j not in pivset]
    vecs = []
    for f in free:
        v = [0] * nvars
        v[f] = 1
        for row, piv in zip(red, pivots):
            v[piv] = (-row[f]) % p
        vecs.append(v)
    ker = Subspace.from_vectors(p, nvars, vecs)
    if ker.dim + rref(m)[1] != m.rows:
        raise InternalCheckError("rank-nullity violated in kernel")
    return ker


def express_in_rows(rows: Sequence[Sequence[int]], target: Sequence[int], p: int) -> tuple[int, ...] | None:
    """Solve sum_i x_i * rows[i] = target over GF(p); None if unsolvable."""
    k = len(rows)
    n = len(target)
    if k == 0:
        return () if all(int(t) % p == 0 for t in target) else None
    aug = [[int(rows[i][j]) % p for i in range(k)] + [int(target[j]) % p] for j in range(n)]
    red, pivots = _rref_rows(aug, p)
    x = [0] * k
    for row, piv in zip(red, pivots):
        if piv == k:
            return None
        x[piv] = row[k]
    return tuple(x)


def solve_row(m: Mat, target: Sequence[int]) -> tuple[int, ...] | None:
    """Solve x * m = target for a row vector x, or None."""
    return express_in_rows(m.data, target, m.p)


# ---------------------------------------------------------------------------
# Batched kernels (numpy).  Entries are int64 residues in [0, p).
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """inv[a] = a^-1 mod p for a in [1, p); inv[0] = 0 (never used as a pivot)."""
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = np.array([pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
    return inv


def all_vectors(p: int, dim: int) -> np.ndarray:
    """All of GF(p)^dim as a (p**dim, dim) array in lexicographic order.

    Row index i equals the base-p integer with the first coordinate most
    significant, so index order and lexicographic order coincide.
    """
    count = p ** dim
    out = np.empty((count, dim), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    for j in range(dim - 1, -1, -1):
        out[:, j] = idx % p
        idx //= p
    return out


def vectors_to_indices(vecs: np.ndarray, p: int) -> np.ndarray:
    """Inverse of all_vectors row indexing."""
    dim = vecs.shape[-1]
    weights = np.array([p ** (dim - 1 - j) for j in range(dim)], dtype=np.int64)
    return vecs @ weights


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of matrices over GF(p); mats has shape (N, r, c)."""
    a = np.ascontiguousarray(mats % p).copy()
    n, r, c = a.shape
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    inv = inverse_table(p)
    cur = np.zeros(n, dtype=np.int64)
    rows_idx = np.arange(r)[None, :]
    batch = np.arange(n)
    for col in range(c):
        ok = (a[:, :, col] != 0) & (rows_idx >= cur[:, None])
        has = ok.any(axis=1)
        if not has.any():
            continue
        piv = ok.argmax(axis=1)
        idx = batch[has]
        pr = piv[has]
        cr = cur[has]
        tmp = a[idx, pr, :].copy()
        a[idx, pr, :] = a[idx, cr, :]
        a[idx, cr, :] = tmp
        pivvals = a[idx, cr, col]
        a[idx, cr, :] = (a[idx, cr, :] * inv[pivvals][:, None]) % p
        colv = a[idx, :, col].copy()
        colv[np.arange(len(idx)), cr] = 0
        pivrows = a[idx, cr, :]
        a[idx] = (a[idx] - colv[:, :, None] * pivrows[:, None, :]) % p
        cur = cur + has
    return cur


def batch_member_mask(vecs: np.ndarray, space: Subspace) -> np.ndarray:
    """Boolean mask of which rows of ``vecs`` lie in ``space``."""
    p = space.p
    red = vecs % p
    red = red.copy()
    for row, piv in zip(space.basis, space.pivots):
        c = red[:, piv].copy()
        nz = c != 0
        if nz.any():
            red[nz] = (red[nz] - c[nz, None] * np.array(row, dtype=np.int64)[None, :]) % p
    return (red == 0).all(axis=1)
