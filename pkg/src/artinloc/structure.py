"""Structure theory feeding the localization layer.

Provides the Jacobson radical (as the kernel of the trace bilinear form of
the regular representation, valid because every algebra here enforces
p > dim), the block decomposition of the semisimple quotient, and a family
of orthogonal idempotents of the algebra lifting the blocks' central
identities.

Everything is deterministic: the semisimple center is split by scanning
its canonical basis in order and extracting Lagrange idempotents at the
sorted roots of minimal polynomials (roots found by evaluating over all of
GF(p)); the final blocks are ordered by the pivot of the central
idempotent's coefficient vector; lifting uses the Newton iteration
x -> 3x^2 - 2x^3 inside corners of previously lifted idempotents.  The
lifted family is canonical for this pipeline.  Conjugate lifts would give
conjugate families; conjugation-independence of downstream reports is
documented, not verified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Element, Ideal, Quotient, ideal_combine, left_matrix, quotient_algebra
from .linalg import InternalCheckError, Mat, Subspace

__all__ = ["IdempotentFamily", "radical", "block_decomposition", "ideal_block_support"]


def radical(a: Algebra) -> Ideal:
    """Jacobson radical as the kernel of (x, y) -> trace of left multiplication by x*y.

    The criterion needs p > dim, which Algebra construction guarantees.
    Postconditions checked: the kernel is a nilpotent two-sided ideal and
    the quotient's trace form is nondegenerate.
    """
    if "radical" in a._cache:
        return a._cache["radical"]
    p, d = a.p, a.dim
    traces = np.array([left_matrix(a, tuple(1 if j == k else 0 for j in range(d))).trace()
                       for k in range(d)], dtype=np.int64)
    gram = np.einsum("ijk,k->ij", a.np_table, traces) % p
    from .linalg import kernel as _kernel
    rad_space = _kernel(Mat.from_rows(p, gram.tolist()))
    rad = Ideal(a, rad_space, "twosided")
    power = rad
    for _ in range(d):
        if power.dim == 0:
            break
        power = ideal_combine(power, rad, "product")
    if power.dim != 0:
        raise InternalCheckError("radical candidate is not nilpotent")
    if rad.dim > 0:
        q = quotient_algebra(a, rad)
        if _trace_form_kernel_dim(q.algebra) != 0:
            raise InternalCheckError("trace form of the semisimple quotient is degenerate")
    a._cache["radical"] = rad
    return rad


def _trace_form_kernel_dim(a: Algebra) -> int:
    d = a.dim
    traces = np.array([left_matrix(a, tuple(1 if j == k else 0 for j in range(d))).trace()
                       for k in range(d)], dtype=np.int64)
    gram = np.einsum("ijk,k->ij", a.np_table, traces) % a.p
    from .linalg import kernel as _kernel
    return _kernel(Mat.from_rows(a.p, gram.tolist())).dim


@dataclass(frozen=True)
class IdempotentFamily:
    """Orthogonal idempotents 1 = sum(1_i) lifting the semisimple blocks.

    block_dims[i] is the GF(p)-dimension of block i of the semisimple
    quotient; block_commutative[i] records whether that block is
    commutative (over a finite field this is exactly the 1x1 matrix case).
    """

    algebra: Algebra
    idempotents: tuple[Element, ...]
    block_dims: tuple[int, ...]
    block_commutative: tuple[bool, ...]
    rad: Ideal
    quotient: Quotient
    central_images: tuple[Element, ...]

    @property
    def s(self) -> int:
        return len(self.idempotents)

    def __post_init__(self) -> None:
        a = self.algebra
        one = a.one
        total = a.zero
        for i, e in enumerate(self.idempotents):
            if (e * e) != e:
                raise InternalCheckError(f"lifted idempotent {i} is not idempotent")
            total = total + e
            for j, f in enumerate(self.idempotents):
                if i != j and not (e * f).is_zero():
                    raise InternalCheckError(f"lifted idempotents {i},{j} are not orthogonal")
        if total != one:
            raise InternalCheckError("lifted idempotents do not sum to 1")
        for e, ebar in zip(self.idempotents, self.central_images):
            if self.quotient.project(e) != ebar:
                raise InternalCheckError("lift does not reduce to its central idempotent")

    def sum_over(self, subset: tuple[int, ...]) -> Element:
        """e_I = sum of 1_i over a 1-based index subset."""
        out = self.algebra.zero
        for i in subset:
            out = out + self.idempotents[i - 1]
        return out


def _center_subspace(a: Algebra) -> Subspace:
    """Solutions of z*b_k = b_k*z for every basis element b_k."""
    d, p = a.dim, a.p
    t = a.np_table
    # row z satisfies, for all k: sum_j z_j (t[j,k,:] - t[k,j,:]) = 0
    comm = (t.transpose(0, 1, 2) - t.transpose(1, 0, 2)) % p  # comm[j,k,:] = t[j,k]-t[k,j]
    stacked = comm.reshape(d, d * d)
    from .linalg import kernel as _kernel
    return _kernel(Mat.from_rows(p, stacked.tolist()))


def _element_power(a: Algebra, coeffs: tuple[int, ...], n: int) -> tuple[int, ...]:
    result = a.one_coeffs
    base = coeffs
    while n:
        if n & 1:
            result = a.mul_coeffs(result, base)
        base = a.mul_coeffs(base, base)
        n >>= 1
    return result


def _minimal_polynomial(a: Algebra, x: tuple[int, ...], unit: tuple[int, ...]) -> list[int]:
    """Monic minimal polynomial of x over GF(p) relative to the given unity.

    Works inside the unital subalgebra spanned by powers of x; `unit` is
    the identity of the corner being split.
    """
    p, d = a.p, a.dim
    powers = [unit]
    while True:
        rows = [list(v) for v in powers]
        nxt = a.mul_coeffs(powers[-1], x)
        from .linalg import express_in_rows
        combo = express_in_rows(rows, nxt, p)
        if combo is not None:
            k = len(powers)
            poly = [(-c) % p for c in combo] + [1]  # x^k - sum c_i x^i
            return poly
        powers.append(nxt)
        if len(powers) > d + 1:
            raise InternalCheckError("minimal polynomial search exceeded the dimension bound")


def _poly_roots(poly: list[int], p: int) -> list[int]:
    """Roots in GF(p) by exhaustive evaluation (p is bounded, so this is cheap)."""
    roots = []
    for alpha in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * alpha + c) % p
        if acc == 0:
            roots.append(alpha)
    return roots


def block_decomposition(a: Algebra) -> IdempotentFamily:
    """Split the semisimple quotient into blocks and lift their identities.

    Pipeline: radical; quotient; center of the quotient; its subspace fixed
    by z -> z^p (a GF(p)-linear map on the commutative center, whose fixed
    space is spanned by the primitive central idempotents); deterministic
    Lagrange splitting; pivot-ordered blocks; sequential Newton lifting.
    """
    if "family" in a._cache:
        return a._cache["family"]
    rad = radical(a)
    if rad.dim > 0:
        quo = quotient_algebra(a, rad)
    else:
        zero_ideal = Ideal(a, Subspace.zero(a.p, a.dim), "twosided")
        quo = quotient_algebra(a, zero_ideal)
    abar = quo.algebra
    p = a.p
    center = _center_subspace(abar)
    # Frobenius-fixed subspace of the center.
    frob_rows = []
    for z in center.basis:
        zp = _element_power(abar, tuple(z), p)
        diff = tuple((u - v) % p for u, v in zip(zp, z))
        frob_rows.append(diff)
    from .linalg import express_in_rows, kernel as _kernel
    # Solve sum_i c_i (z_i^p - z_i) = 0 for c over the center basis.
    fixed_coords = _kernel(Mat.from_rows(p, [list(r) for r in frob_rows]))
    f_basis = []
    center_mat = np.array(center.basis, dtype=np.int64) if center.dim else np.zeros((0, abar.dim), dtype=np.int64)
    for c in fixed_coords.basis:
        vec = (np.array(c, dtype=np.int64) @ center_mat) % p
        f_basis.append(tuple(int(v) for v in vec))
    fixed = Subspace.from_vectors(p, abar.dim, f_basis)

    # Deterministic splitting into primitive idempotents of the fixed space.
    blocks = [abar.one_coeffs]
    while True:
        split_happened = False
        new_blocks = []
        for f in blocks:
            span_dim = _corner_span_dim(abar, f, fixed)
            if span_dim == 1:
                new_blocks.append(f)
                continue
            pieces = _split_block(abar, f, fixed)
            if len(pieces) == 1:
                new_blocks.append(f)
            else:
                new_blocks.extend(pieces)
                split_happened = True
        blocks = new_blocks
        if not split_happened:
            break
    for f in blocks:
        if _corner_span_dim(abar, f, fixed) != 1:
            raise InternalCheckError("block splitting did not reach primitive idempotents")
    blocks.sort(key=lambda v: (_pivot(v), v))
    central = [abar.element(b) for b in blocks]

    # Lift sequentially into corners of 1 - (sum of previous lifts).
    lifted: list[Element] = []
    newton_steps = max(1, (a.dim - 1).bit_length() + 1)
    fsum = a.zero
    for ebar in central:
        x0 = quo.section(ebar)
        corner_unit = a.one - fsum
        y = corner_unit * x0 * corner_unit
        for _ in range(newton_steps):
            y2 = y * y
            y = (y2 * 3) - (y2 * y * 2)
        if (y * y) != y:
            raise InternalCheckError("Newton iteration did not converge to an idempotent")
        if not (fsum * y).is_zero() or not (y * fsum).is_zero():
            raise InternalCheckError("lift escaped the orthogonal corner")
        if quo.project(y) != ebar:
            raise InternalCheckError("lift does not reduce to the central idempotent")
        lifted.append(y)
        fsum = fsum + y

    dims = []
    comm = []
    for ebar in central:
        rm = np.array([abar.mul_coeffs(tuple(1 if j == i else 0 for j in range(abar.dim)), ebar.coeffs)
                       for i in range(abar.dim)], dtype=np.int64)
        block_space = Subspace.from_vectors(p, abar.dim, rm.tolist())
        dims.append(block_space.dim)
        is_comm = True
        for u in block_space.basis:
            for v in block_space.basis:
                if abar.mul_coeffs(u, v) != abar.mul_coeffs(v, u):
                    is_comm = False
                    break
            if not is_comm:
                break
        comm.append(is_comm)

    fam = IdempotentFamily(a, tuple(lifted), tuple(dims), tuple(comm), rad, quo, tuple(central))
    a._cache["family"] = fam
    return fam


def _pivot(vec: tuple[int, ...]) -> int:
    for i, v in enumerate(vec):
        if v:
            return i
    return len(vec)


def _corner_span_dim(abar: Algebra, f: tuple[int, ...], fixed: Subspace) -> int:
    vecs = [abar.mul_coeffs(f, z) for z in fixed.basis]
    return Subspace.from_vectors(abar.p, abar.dim, vecs).dim


def _split_block(abar: Algebra, f: tuple[int, ...], fixed: Subspace) -> list[tuple[int, ...]]:
    """Split the idempotent f of the fixed space using the first basis element
    of the fixed space whose corner restriction has at least two eigenvalues."""
    p = abar.p
    for z in fixed.basis:
        w = abar.mul_coeffs(f, z)
        poly = _minimal_polynomial(abar, w, f)
        roots = _poly_roots(poly, p)
        if len(poly) - 1 != len(roots):
            raise InternalCheckError("minimal polynomial of a split semisimple element "
                                     "did not factor into distinct linear factors")
        if len(roots) < 2:
            continue
        pieces = []
        for alpha in sorted(roots):
            e = f
            for beta in roots:
                if beta == alpha:
                    continue
                shifted = tuple((wi - beta * fi) % p for wi, fi in zip(w, f))
                e = abar.mul_coeffs(e, shifted)
                inv = pow((alpha - beta) % p, p - 2, p)
                e = tuple((inv * v) % p for v in e)
            pieces.append(e)
        total = tuple(sum(col) % p for col in zip(*pieces))
        if total != f:
            raise InternalCheckError("Lagrange idempotents do not sum back to the block")
        return pieces
    return [f]


def ideal_block_support(fam: IdempotentFamily, ideal: Ideal) -> tuple[frozenset[int], bool]:
    """Block indices met by the ideal's image in the semisimple quotient.

    Returns (support, contained_in_radical).  Indices are 1-based; an ideal
    inside the radical has empty support and the flag set.
    """
    if ideal.side != "twosided":
        raise InternalCheckError("block support needs a two-sided ideal")
    abar = fam.quotient.algebra
    images = [fam.quotient.project_coeffs(v) for v in ideal.space.basis]
    if all(all(c == 0 for c in img) for img in images):
        return frozenset(), True
    support = set()
    for i, ebar in enumerate(fam.central_images, start=1):
        for img in images:
            if any(c != 0 for c in abar.mul_coeffs(ebar.coeffs, img)):
                support.add(i)
                break
    return frozenset(support), False
