"""Finite-dimensional associative unital algebras over GF(p).

An :class:`Algebra` is given by structure constants: ``table[i][j]`` holds
the coefficient vector of the basis product ``b_i * b_j``.  Construction
validates associativity on all basis triples, the two unit laws, primality
of ``p`` and the global precondition ``p > dim`` (required by the trace
form radical criterion downstream, and enforced here to fail fast).

Every constructor documents its basis order, because all reports built on
top of an algebra must be byte-reproducible:

* ``lower_triangular(p, n)`` / ``upper_triangular(p, n)`` / ``full_matrix(p, n)``
  use the matrix units ``E_ij`` of the shape, ordered lexicographically by
  ``(i, j)`` with 1-based indices; e.g. lower triangular 2x2 has basis
  ``(E_11, E_21, E_22)``.
* ``truncated_poly(p, k)`` is GF(p)[x]/(x^k) with basis ``1, x, ..., x^(k-1)``.
* ``direct_product`` concatenates the factors' bases block by block.
* ``opposite_algebra`` keeps the basis and transposes the table.
* ``matrix_subalgebra`` closes the unital span of generator matrices under
  multiplication; its basis is the canonical RREF basis of the closed span
  of flattened (row-major) matrices.

Algebras, elements and ideals are immutable after construction and all
operations are pure functions; concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import (
    InputError,
    InternalCheckError,
    Mat,
    ModulusMismatch,
    Subspace,
    all_vectors,
    batch_rank,
    check_prime,
    express_in_rows,
    kernel,
    solve_row,
    vectors_to_indices,
)

MAX_CLOSURE_DIM = 64


class Algebra:
    """Associative unital algebra over GF(p) given by structure constants."""

    def __init__(self, p: int, table: Sequence[Sequence[Sequence[int]]],
                 one: Sequence[int], label: str = "A",
                 matrix_model: tuple[int, tuple[tuple[tuple[int, ...], ...], ...]] | None = None):
        check_prime(p)
        dim = len(table)
        if dim == 0:
            raise InputError("algebra dimension must be positive")
        if p <= dim:
            raise InputError(f"p = {p} must exceed dim = {dim}")
        tab = np.array(table, dtype=np.int64) % p
        if tab.shape != (dim, dim, dim):
            raise InputError(f"structure constant table must be {dim}x{dim}x{dim}")
        one_vec = np.array([int(v) % p for v in one], dtype=np.int64)
        if one_vec.shape != (dim,):
            raise InputError("identity vector length does not match dim")
        self.p = p
        self.dim = dim
        self.label = label
        tab.flags.writeable = False
        self.np_table = tab
        self.table = tuple(tuple(tuple(int(v) for v in tab[i, j]) for j in range(dim)) for i in range(dim))
        self.one_coeffs = tuple(int(v) for v in one_vec)
        self.matrix_model = matrix_model
        self._cache: dict = {}
        self._validate()

    def _validate(self) -> None:
        t = self.np_table
        p, d = self.p, self.dim
        eye = np.eye(d, dtype=np.int64)
        if not (np.einsum("j,jik->ik", np.array(self.one_coeffs), t) % p == eye).all():
            raise InputError("identity fails one*b_i = b_i")
        if not (np.einsum("j,ijk->ik", np.array(self.one_coeffs), t) % p == eye).all():
            raise InputError("identity fails b_i*one = b_i")
        for i in range(d):
            lhs = np.einsum("jm,mkl->jkl", t[i], t, optimize=True) % p
            rhs = np.einsum("jkm,ml->jkl", t, t[i], optimize=True) % p
            if not (lhs == rhs).all():
                raise InputError(f"associativity fails on basis triples with first index {i}")

    # -- element plumbing ---------------------------------------------------

    def element(self, coeffs: Sequence[int]) -> "Element":
        v = tuple(int(c) % self.p for c in coeffs)
        if len(v) != self.dim:
            raise InputError(f"coefficient vector length {len(v)} != dim {self.dim}")
        return Element(self, v)

    @property
    def one(self) -> "Element":
        return Element(self, self.one_coeffs)

    @property
    def zero(self) -> "Element":
        return Element(self, (0,) * self.dim)

    def basis_element(self, i: int) -> "Element":
        return Element(self, tuple(1 if j == i else 0 for j in range(self.dim)))

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def from_matrix(self, literal: Sequence[Sequence[int]]) -> "Element":
        """Desugar an ambient-matrix literal for matrix-modelled algebras."""
        if self.matrix_model is None:
            raise InputError(f"{self.label} has no matrix model; pass a coefficient vector")
        n, basis_mats = self.matrix_model
        flat = [int(v) % self.p for row in literal for v in row]
        if len(flat) != n * n:
            raise InputError(f"matrix literal must be {n}x{n}")
        rows = [tuple(v for r in bm for v in r) for bm in basis_mats]
        coeffs = express_in_rows(rows, flat, self.p)
        if coeffs is None:
            raise InputError("matrix literal is not in the algebra")
        return self.element(coeffs)

    def mul_coeffs(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        out = [0] * self.dim
        table = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = (xi * yj) % p
                for k, v in enumerate(ti[j]):
                    if v:
                        out[k] = (out[k] + c * v) % p
        return tuple(out)

    # -- bulk kernels (numpy) ----------------------------------------------

    def enumerate_coeffs(self) -> np.ndarray:
        """All p**dim coefficient vectors in canonical (lexicographic) order."""
        if "all_coeffs" not in self._cache:
            arr = all_vectors(self.p, self.dim)
            arr.flags.writeable = False
            self._cache["all_coeffs"] = arr
        return self._cache["all_coeffs"]

    def coeffs_to_indices(self, arr: np.ndarray) -> np.ndarray:
        return vectors_to_indices(arr % self.p, self.p)

    def batch_mul(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return np.einsum("ni,nj,ijk->nk", xs, ys, self.np_table, optimize=True) % self.p

    def batch_mul_left(self, x: Sequence[int], ys: np.ndarray) -> np.ndarray:
        """x * y for fixed x over a batch of y."""
        return np.einsum("i,nj,ijk->nk", np.array(x, dtype=np.int64), ys, self.np_table,
                         optimize=True) % self.p

    def batch_mul_right(self, xs: np.ndarray, y: Sequence[int]) -> np.ndarray:
        """x * y for a batch of x and fixed y."""
        return np.einsum("ni,j,ijk->nk", xs, np.array(y, dtype=np.int64), self.np_table,
                         optimize=True) % self.p

    def batch_left_matrices(self, xs: np.ndarray) -> np.ndarray:
        """Matrices of y -> x*y acting on coefficient rows, one per batch row."""
        return np.einsum("nj,jik->nik", xs, self.np_table, optimize=True) % self.p

    def batch_right_matrices(self, xs: np.ndarray) -> np.ndarray:
        return np.einsum("nj,ijk->nik", xs, self.np_table, optimize=True) % self.p

    def batch_unit_mask(self, xs: np.ndarray) -> np.ndarray:
        return batch_rank(self.batch_left_matrices(xs), self.p) == self.dim

    def batch_nilpotent_mask(self, xs: np.ndarray) -> np.ndarray:
        k = (self.dim - 1).bit_length()
        ys = xs % self.p
        for _ in range(max(k, 1)):
            ys = self.batch_mul(ys, ys)
        return (ys == 0).all(axis=1)

    def iter_elements(self) -> Iterable["Element"]:
        for row in self.enumerate_coeffs():
            yield Element(self, tuple(int(v) for v in row))

    def __repr__(self) -> str:
        return f"Algebra({self.label}, p={self.p}, dim={self.dim})"


class Element:
    """An algebra element held as its coefficient row over the canonical basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs: tuple[int, ...]):
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other: "Element") -> None:
        if self.algebra is not other.algebra:
            raise ModulusMismatch("elements of different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        p = self.algebra.p
        return Element(self.algebra, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        p = self.algebra.p
        return Element(self.algebra, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Element":
        p = self.algebra.p
        return Element(self.algebra, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, self.algebra.mul_coeffs(self.coeffs, other.coeffs))
        c = int(other) % self.algebra.p
        return Element(self.algebra, tuple((c * a) % self.algebra.p for a in self.coeffs))

    def __rmul__(self, other):
        if isinstance(other, Element):  # pragma: no cover - Element*Element hits __mul__
            return other.__mul__(self)
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise InputError("negative powers: invert explicitly")
        result = self.algebra.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and self.algebra is other.algebra
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"El{list(self.coeffs)}"


@dataclass(frozen=True)
class Ideal:
    """A one- or two-sided ideal held as a canonical subspace.

    Closure under the declared side's basis multiplication is checked at
    construction, so an Ideal value is trustworthy by type.
    """

    algebra: Algebra
    space: Subspace
    side: str  # "left" | "right" | "twosided"

    def __post_init__(self) -> None:
        if self.side not in ("left", "right", "twosided"):
            raise InputError(f"bad ideal side {self.side!r}")
        a, sp = self.algebra, self.space
        if sp.ambient_dim != a.dim or sp.p != a.p:
            raise InputError("ideal subspace does not match its algebra")
        for v in sp.basis:
            for i in range(a.dim):
                b = tuple(1 if j == i else 0 for j in range(a.dim))
                if self.side in ("left", "twosided") and not sp.contains_vector(a.mul_coeffs(b, v)):
                    raise InputError("subspace is not closed under left multiplication")
                if self.side in ("right", "twosided") and not sp.contains_vector(a.mul_coeffs(v, b)):
                    raise InputError("subspace is not closed under right multiplication")

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, x: Element) -> bool:
        return self.space.contains_vector(x.coeffs)

    def is_zero(self) -> bool:
        return self.space.dim == 0

    def basis_elements(self) -> list[Element]:
        return [Element(self.algebra, row) for row in self.space.basis]

    def __repr__(self) -> str:
        return f"Ideal(side={self.side}, dim={self.dim})"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def _matrix_unit_algebra(p: int, pairs: list[tuple[int, int]], n: int, label: str) -> Algebra:
    index = {pair: k for k, pair in enumerate(pairs)}
    dim = len(pairs)
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for k1, (a, b) in enumerate(pairs):
        for k2, (c, d) in enumerate(pairs):
            if b == c and (a, d) in index:
                table[k1][k2][index[(a, d)]] = 1
    one = [0] * dim
    for i in range(1, n + 1):
        if (i, i) in index:
            one[index[(i, i)]] = 1
    mats = tuple(tuple(tuple(1 if (r + 1, c + 1) == pair else 0 for c in range(n)) for r in range(n))
                 for pair in pairs)
    return Algebra(p, table, one, label, matrix_model=(n, mats))


def lower_triangular(p: int, n: int) -> Algebra:
    """Lower triangular n x n matrices; basis E_ij (i >= j) lex by (i, j)."""
    if n < 1:
        raise InputError("n must be positive")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i >= j]
    return _matrix_unit_algebra(p, pairs, n, f"L{n}(GF({p}))")


def upper_triangular(p: int, n: int) -> Algebra:
    """Upper triangular n x n matrices; basis E_ij (i <= j) lex by (i, j)."""
    if n < 1:
        raise InputError("n must be positive")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i <= j]
    return _matrix_unit_algebra(p, pairs, n, f"U{n}(GF({p}))")


def full_matrix(p: int, n: int) -> Algebra:
    """Full n x n matrix algebra; basis E_ij lex by (i, j)."""
    if n < 1:
        raise InputError("n must be positive")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    label = f"M{n}(GF({p}))" if n > 1 else f"GF({p})"
    return _matrix_unit_algebra(p, pairs, n, label)


def truncated_poly(p: int, k: int) -> Algebra:
    """GF(p)[x]/(x^k); basis 1, x, ..., x^(k-1)."""
    if k < 1:
        raise InputError("k must be positive")
    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i + j < k:
                table[i][j][i + j] = 1
    one = [1] + [0] * (k - 1)
    return Algebra(p, table, one, f"GF({p})[x]/(x^{k})")


def direct_product(factors: Sequence[Algebra]) -> tuple[Algebra, list[tuple[int, int]]]:
    """Direct product; basis is the concatenation of the factors' bases.

    Returns the product and the coordinate range of each factor block.
    """
    if not factors:
        raise InputError("empty product")
    p = factors[0].p
    for f in factors:
        if f.p != p:
            raise ModulusMismatch("direct product factors over different primes")
    dim = sum(f.dim for f in factors)
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    one = [0] * dim
    embeddings: list[tuple[int, int]] = []
    offset = 0
    for f in factors:
        embeddings.append((offset, offset + f.dim))
        for i in range(f.dim):
            one[offset + i] = f.one_coeffs[i]
            for j in range(f.dim):
                for k in range(f.dim):
                    table[offset + i][offset + j][offset + k] = f.table[i][j][k]
        offset += f.dim
    label = " x ".join(f.label for f in factors)
    return Algebra(p, table, one, label), embeddings


def opposite_algebra(a: Algebra) -> Algebra:
    """Same basis, transposed multiplication: mul_op(i, j) = mul(j, i)."""
    d = a.dim
    table = [[a.table[j][i] for j in range(d)] for i in range(d)]
    return Algebra(a.p, table, a.one_coeffs, f"op({a.label})", matrix_model=a.matrix_model)


def matrix_subalgebra(p: int, n: int, generators: Sequence[Sequence[Sequence[int]]]) -> Algebra:
    """Unital span of the generator matrices closed under multiplication.

    The basis is the canonical RREF basis of the closed span of row-major
    flattened matrices inside M_n(GF(p)).  Closure beyond MAX_CLOSURE_DIM
    dimensions is rejected so downstream enumerations stay tractable.
    """
    check_prime(p)
    if n < 1:
        raise InputError("ambient size must be positive")
    amb = n * n
    eye = [1 if i % (n + 1) == 0 else 0 for i in range(amb)]
    vecs = [eye] + [[int(v) % p for row in g for v in row] for g in generators]
    for v in vecs:
        if len(v) != amb:
            raise InputError(f"generator is not an {n}x{n} matrix")
    span = Subspace.from_vectors(p, amb, vecs)
    bound = min(MAX_CLOSURE_DIM, amb)

    def matmul_flat(x: Sequence[int], y: Sequence[int]) -> list[int]:
        out = [0] * amb
        for i in range(n):
            for k in range(n):
                c = x[i * n + k]
                if c:
                    for j in range(n):
                        out[i * n + j] = (out[i * n + j] + c * y[k * n + j]) % p
        return out

    while True:
        new_vecs = list(span.basis)
        for u in span.basis:
            for v in span.basis:
                new_vecs.append(matmul_flat(u, v))
        bigger = Subspace.from_vectors(p, amb, new_vecs)
        if bigger.dim == span.dim:
            break
        span = bigger
        if span.dim > bound:
            raise InputError(f"closure exceeded the {bound}-dimensional bound")
    dim = span.dim
    table = []
    for u in span.basis:
        row = []
        for v in span.basis:
            coords = span.coordinates(matmul_flat(u, v))
            if coords is None:
                raise InternalCheckError("closure is not multiplicatively closed")
            row.append(list(coords))
        table.append(row)
    one = span.coordinates(eye)
    if one is None:
        raise InternalCheckError("identity left the closed span")
    mats = tuple(tuple(tuple(row[i * n:(i + 1) * n]) for i in range(n)) for row in span.basis)
    return Algebra(p, table, one, f"subalg({n}x{n}, dim {dim}, GF({p}))", matrix_model=(n, mats))


def build_algebra(desc: dict) -> Algebra:
    """Build an algebra from a neutral description dictionary.

    The description mirrors the CLI JSON schema: ``{"scalar": {"prime": p},
    "kind": "constructor" | "structure_constants", ...}``.  Nested
    descriptions (product factors, opposite inner) may omit "scalar" and
    inherit the outer prime.
    """
    if not isinstance(desc, dict):
        raise InputError("algebra description must be an object")
    scalar = desc.get("scalar")
    if not isinstance(scalar, dict) or "prime" not in scalar:
        raise InputError('description must carry {"scalar": {"prime": p}}')
    p = scalar["prime"]
    if not isinstance(p, int):
        raise InputError("prime must be an integer")
    check_prime(p)
    return _build_with_prime(desc, p)


def _build_with_prime(desc: dict, p: int) -> Algebra:
    kind = desc.get("kind")
    if kind == "structure_constants":
        for key in ("dim", "one", "mul_table"):
            if key not in desc:
                raise InputError(f"structure_constants description missing {key!r}")
        dim = desc["dim"]
        table = desc["mul_table"]
        if len(table) != dim:
            raise InputError("mul_table size does not match dim")
        return Algebra(p, table, desc["one"], desc.get("label", f"A(dim {dim}, GF({p}))"))
    if kind != "constructor":
        raise InputError(f"unknown description kind {kind!r}")
    name = desc.get("name")
    if name == "lower_triangular":
        return lower_triangular(p, _int_param(desc, "n"))
    if name == "upper_triangular":
        return upper_triangular(p, _int_param(desc, "n"))
    if name == "full_matrix":
        return full_matrix(p, _int_param(desc, "n"))
    if name == "truncated_poly":
        return truncated_poly(p, _int_param(desc, "k"))
    if name == "product":
        factors = desc.get("factors")
        if not isinstance(factors, list) or not factors:
            raise InputError("product needs a non-empty factors list")
        built = [_build_nested(f, p) for f in factors]
        return direct_product(built)[0]
    if name == "opposite":
        inner = desc.get("inner")
        if not isinstance(inner, dict):
            raise InputError("opposite needs an inner description")
        return opposite_algebra(_build_nested(inner, p))
    if name == "matrix_subalgebra":
        gens = desc.get("generators")
        if not isinstance(gens, list):
            raise InputError("matrix_subalgebra needs a generators list")
        return matrix_subalgebra(p, _int_param(desc, "ambient_n"), gens)
    raise InputError(f"unknown constructor {name!r}")


def _build_nested(desc: dict, p: int) -> Algebra:
    if not isinstance(desc, dict):
        raise InputError("nested description must be an object")
    if "scalar" in desc:
        inner_p = desc["scalar"].get("prime")
        if inner_p != p:
            raise InputError("nested description changes the prime")
    return _build_with_prime(desc, p)


def _int_param(desc: dict, key: str) -> int:
    v = desc.get(key)
    if not isinstance(v, int):
        raise InputError(f"constructor parameter {key!r} must be an integer")
    return v


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def regular_matrix(a: Algebra, x: Element, side: str) -> Mat:
    """Matrix of y -> x*y (side="left") or y -> y*x (side="right") on rows.

    With rows acting on the right, composition reverses for the left maps:
    regular_matrix(x, left) * regular_matrix(y, left) equals
    regular_matrix(y*x, left), while the right maps compose covariantly.
    """
    if x.algebra is not a:
        raise InputError("element does not belong to the algebra")
    if side == "left":
        rows = [a.mul_coeffs(x.coeffs, b.coeffs) for b in a.basis()]
    elif side == "right":
        rows = [a.mul_coeffs(b.coeffs, x.coeffs) for b in a.basis()]
    else:
        raise InputError(f"bad side {side!r}")
    return Mat.from_rows(a.p, rows)


def left_matrix(a: Algebra, coeffs: Sequence[int]) -> Mat:
    rows = [a.mul_coeffs(coeffs, tuple(1 if j == i else 0 for j in range(a.dim)))
            for i in range(a.dim)]
    return Mat.from_rows(a.p, rows)


def right_matrix(a: Algebra, coeffs: Sequence[int]) -> Mat:
    rows = [a.mul_coeffs(tuple(1 if j == i else 0 for j in range(a.dim)), coeffs)
            for i in range(a.dim)]
    return Mat.from_rows(a.p, rows)


@dataclass(frozen=True)
class ElementProfile:
    is_unit: bool
    inverse: Element | None
    is_nilpotent: bool
    is_idempotent: bool
    is_left_regular: bool


def classify_element_basic(a: Algebra, x: Element) -> ElementProfile:
    """Unit/nilpotent/idempotent/left-regular tests from the regular representation.

    In a finite-dimensional algebra a left regular element (injective right
    multiplication) is a unit; the implication is asserted.
    """
    lm = regular_matrix(a, x, "left")
    is_unit = lm.rank() == a.dim
    inverse = None
    if is_unit:
        sol = solve_row(lm, a.one_coeffs)
        if sol is None:
            raise InternalCheckError("invertible map with no solution for the inverse")
        inverse = a.element(sol)
        if (x * inverse) != a.one or (inverse * x) != a.one:
            raise InternalCheckError("inverse failed verification by multiplication")
    is_nilpotent = (lm ** a.dim).is_zero()
    is_idempotent = (x * x) == x
    rm = regular_matrix(a, x, "right")
    is_left_regular = kernel(rm).dim == 0
    if is_left_regular and not is_unit:
        raise InternalCheckError("left regular element is not a unit")
    return ElementProfile(is_unit, inverse, is_nilpotent, is_idempotent, is_left_regular)


def is_unit(a: Algebra, x: Element) -> bool:
    return regular_matrix(a, x, "left").rank() == a.dim


def is_nilpotent(a: Algebra, x: Element) -> bool:
    return (regular_matrix(a, x, "left") ** a.dim).is_zero()


def ideal_generated(a: Algebra, gens: Iterable[Element], side: str) -> Ideal:
    """Least side-closed subspace containing the generators."""
    if side not in ("left", "right", "twosided"):
        raise InputError(f"bad ideal side {side!r}")
    span = Subspace.from_vectors(a.p, a.dim, [g.coeffs for g in gens])
    basis_vecs = [tuple(1 if j == i else 0 for j in range(a.dim)) for i in range(a.dim)]
    while True:
        new_vecs = list(span.basis)
        for v in span.basis:
            for b in basis_vecs:
                if side in ("left", "twosided"):
                    new_vecs.append(a.mul_coeffs(b, v))
                if side in ("right", "twosided"):
                    new_vecs.append(a.mul_coeffs(v, b))
        bigger = Subspace.from_vectors(a.p, a.dim, new_vecs)
        if bigger.dim == span.dim:
            return Ideal(a, span, side)
        span = bigger


def principal_right_ideal(a: Algebra, x: Element) -> Ideal:
    return ideal_generated(a, [x], "right")


def ideal_combine(x: Ideal, y: Ideal, op: str) -> Ideal:
    """Product, intersection or sum of ideals (product needs two-sided operands)."""
    if x.algebra is not y.algebra:
        raise InputError("ideals of different algebras")
    a = x.algebra
    if op == "product":
        if x.side != "twosided" or y.side != "twosided":
            raise InputError("ideal product requires two-sided operands")
        vecs = [a.mul_coeffs(u, v) for u in x.space.basis for v in y.space.basis]
        return Ideal(a, Subspace.from_vectors(a.p, a.dim, vecs), "twosided")
    if x.side != y.side:
        raise InputError("ideal sum/intersection requires matching sides")
    if op == "intersection":
        return Ideal(a, x.space.intersect(y.space), x.side)
    if op == "sum":
        return Ideal(a, x.space.sum(y.space), x.side)
    raise InputError(f"bad ideal operation {op!r}")


@dataclass(frozen=True)
class Quotient:
    """Quotient algebra with its projection and linear section.

    project is an algebra map; section is only linear, but
    project(section(q)) == q for every quotient element q.
    """

    algebra: Algebra
    parent: Algebra
    ideal: Ideal
    keep: tuple[int, ...]

    def project_coeffs(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        red = self.ideal.space.reduce(coeffs)
        return tuple(red[j] for j in self.keep)

    def project(self, x: Element) -> Element:
        if x.algebra is not self.parent:
            raise InputError("element does not belong to the quotient's parent")
        return self.algebra.element(self.project_coeffs(x.coeffs))

    def section(self, q: Element) -> Element:
        if q.algebra is not self.algebra:
            raise InputError("element does not belong to the quotient")
        v = [0] * self.parent.dim
        for idx, j in enumerate(self.keep):
            v[j] = q.coeffs[idx]
        return self.parent.element(v)

    def batch_project(self, coeffs: np.ndarray) -> np.ndarray:
        p = self.parent.p
        red = coeffs % p
        red = red.copy()
        for row, piv in zip(self.ideal.space.basis, self.ideal.space.pivots):
            c = red[:, piv].copy()
            nz = c != 0
            if nz.any():
                red[nz] = (red[nz] - c[nz, None] * np.array(row, dtype=np.int64)[None, :]) % p
        return red[:, list(self.keep)]


def quotient_algebra(a: Algebra, ideal: Ideal) -> Quotient:
    """Quotient by a proper two-sided ideal on the pivot-complement basis."""
    if ideal.algebra is not a:
        raise InputError("ideal does not belong to the algebra")
    if ideal.side != "twosided":
        raise InputError("quotient requires a two-sided ideal")
    if ideal.dim == a.dim:
        raise InputError("cannot quotient by the whole algebra")
    piv = set(ideal.space.pivots)
    keep = tuple(j for j in range(a.dim) if j not in piv)
    qdim = len(keep)

    def proj(coeffs: Sequence[int]) -> tuple[int, ...]:
        red = ideal.space.reduce(coeffs)
        return tuple(red[j] for j in keep)

    def sect(qcoeffs: Sequence[int]) -> tuple[int, ...]:
        v = [0] * a.dim
        for idx, j in enumerate(keep):
            v[j] = qcoeffs[idx]
        return tuple(v)

    table = []
    for i in range(qdim):
        ei = sect(tuple(1 if t == i else 0 for t in range(qdim)))
        row = []
        for j in range(qdim):
            ej = sect(tuple(1 if t == j else 0 for t in range(qdim)))
            row.append(list(proj(a.mul_coeffs(ei, ej))))
        table.append(row)
    one_q = proj(a.one_coeffs)
    q = Algebra(a.p, table, one_q, f"{a.label}/(dim {ideal.dim} ideal)")
    return Quotient(q, a, ideal, keep)
