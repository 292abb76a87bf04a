"""Classification of denominator sets and Ore localizations.

For a finite-dimensional (hence Artinian) algebra the module computes:

* the triangular block-sum idempotents e_I (sums of lifted block
  idempotents with e_I * R * (1 - e_I) = 0), which index every left
  localization class and every associated kernel ideal;
* per-class data: the ideal (1 - e_I)R and the quotient R/(1 - e_I)R;
* the maximal denominator sets T_e (unit preimages over minimal e),
  represented by their membership predicate and materializable within the
  enumeration guard;
* the localization radical (intersection over the maximal classes,
  cross-checked against the ideal product and the closed form) and the
  little radical (intersection of all nonzero kernel ideals, cross-checked
  four ways);
* decision procedures: powers-of-an-element criterion, finite monoid
  decision, idempotent check, element localizability, and the duality
  between left and right localizations via the opposite algebra;
* the two-sided theory, where only central idempotents matter.

Reports are deterministic: subsets are ordered by (size, lexicographic)
and all underlying idempotents come from the deterministic lift in
:mod:`artinloc.structure`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    Algebra,
    Element,
    Ideal,
    Quotient,
    ideal_combine,
    opposite_algebra,
    quotient_algebra,
    regular_matrix,
)
from .linalg import (
    DEFAULT_GUARD,
    InputError,
    InternalCheckError,
    Mat,
    ResourceGuardError,
    Subspace,
    kernel,
)
from .structure import IdempotentFamily, block_decomposition

MAX_SUBSET_ENUM = 1 << 20

Subset = tuple[int, ...]


def subset_str(subset: Subset) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


def _left_ideal_of(a: Algebra, x: Element) -> Subspace:
    """Row space of the right-multiplication matrix: the left ideal R*x."""
    return Subspace.from_vectors(a.p, a.dim, regular_matrix(a, x, "right").data)


def _right_ideal_of(a: Algebra, x: Element) -> Subspace:
    """Row space of the left-multiplication matrix: the right ideal x*R."""
    return Subspace.from_vectors(a.p, a.dim, regular_matrix(a, x, "left").data)


def _is_left_triangular(a: Algebra, e: Element) -> bool:
    """e * R * (1 - e) = 0, tested on basis elements."""
    om = a.one - e
    for b in a.basis():
        if not (e * b * om).is_zero():
            return False
    return True


def _is_central(a: Algebra, e: Element) -> bool:
    return all((e * b) == (b * e) for b in a.basis())


# ---------------------------------------------------------------------------
# Triangular idempotent sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangularIdempotentSet:
    """Block-sum idempotents e_I with e_I R (1 - e_I) = 0, ordered by (|I|, I).

    The poset order is subset inclusion of the index sets; minima are the
    indices of the maximal localization classes.
    """

    algebra: Algebra
    family: IdempotentFamily
    entries: tuple[tuple[Subset, Element], ...]
    minima: tuple[Subset, ...]

    def subsets(self) -> list[Subset]:
        return [s for s, _ in self.entries]

    def idempotent(self, subset: Subset) -> Element:
        for s, e in self.entries:
            if s == subset:
                return e
        raise KeyError(subset)

    def ge(self, bigger: Subset, smaller: Subset) -> bool:
        return set(bigger) >= set(smaller)


def left_triangular_idempotents(a: Algebra, fam: IdempotentFamily | None = None) -> TriangularIdempotentSet:
    """Scan all nonempty block subsets for the triangularity condition.

    Verifies, for the found set: the full subset is present, distinct
    subsets give distinct ideals (1-e)R, products/sums of entries behave
    (intersections multiply down, disjoint unions add), and distinct
    minima are orthogonal with e_I R e_J = 0.
    """
    fam = fam or block_decomposition(a)
    s = fam.s
    if (1 << s) > MAX_SUBSET_ENUM:
        raise ResourceGuardError(f"2^{s} block subsets exceed the enumeration bound")
    entries: list[tuple[Subset, Element]] = []
    for size in range(1, s + 1):
        for combo in itertools.combinations(range(1, s + 1), size):
            e = fam.sum_over(combo)
            if _is_left_triangular(a, e):
                entries.append((combo, e))
    full = tuple(range(1, s + 1))
    if not any(sub == full for sub, _ in entries):
        raise InternalCheckError("the full block subset must always qualify")
    spaces = {}
    for sub, e in entries:
        sp = _right_ideal_of(a, a.one - e)
        if sp in spaces.values():
            raise InternalCheckError("distinct subsets gave the same kernel ideal")
        spaces[sub] = sp
    # the subset order and the kernel ideals are anti-isomorphic posets
    for i_sub, sp_i in spaces.items():
        for j_sub, sp_j in spaces.items():
            if (set(i_sub) >= set(j_sub)) != sp_j.contains(sp_i):
                raise InternalCheckError("subset containment does not reverse into the ideals")
    subset_set = {sub for sub, _ in entries}
    for (i_sub, e_i), (j_sub, e_j) in itertools.product(entries, entries):
        inter = tuple(sorted(set(i_sub) & set(j_sub)))
        prod = e_i * e_j
        if inter:
            if prod != fam.sum_over(inter) or prod != e_j * e_i:
                raise InternalCheckError("block-sum idempotents do not multiply to the intersection")
            if inter not in subset_set:
                raise InternalCheckError("intersection of qualifying subsets does not qualify")
        else:
            if not prod.is_zero():
                raise InternalCheckError("disjoint block-sum idempotents are not orthogonal")
            union = tuple(sorted(set(i_sub) | set(j_sub)))
            if union not in subset_set:
                raise InternalCheckError("disjoint union of qualifying subsets does not qualify")
    minima = []
    for sub, _ in entries:
        if not any(set(other) < set(sub) for other, _ in entries):
            minima.append(sub)
    for i_sub in minima:
        for j_sub in minima:
            if i_sub == j_sub:
                continue
            e_i, e_j = fam.sum_over(i_sub), fam.sum_over(j_sub)
            for b in a.basis():
                if not (e_i * b * e_j).is_zero():
                    raise InternalCheckError("distinct minima do not annihilate through the ring")
    return TriangularIdempotentSet(a, fam, tuple(entries), tuple(minima))


# ---------------------------------------------------------------------------
# Descriptors and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DenSetDescriptor:
    """A classified denominator set: its witness idempotent, kernel ideal,
    quotient, and core data.

    kind is one of "idempotent", "powers", "monoid", "maximal".  For the
    powers kind the core is the set of powers at or above
    min_core_exponent; otherwise core membership is the lazy predicate
    (1-e) s (1-e) = 0.
    """

    kind: str
    witness_idempotent: Element
    ass: Ideal
    quotient: Quotient
    min_core_exponent: int | None = None

    def __post_init__(self) -> None:
        a = self.witness_idempotent.algebra
        e = self.witness_idempotent
        expected = _right_ideal_of(a, a.one - e)
        if expected != self.ass.space:
            raise InternalCheckError("descriptor kernel ideal is not (1-e)R")
        sq = ideal_combine(self.ass, self.ass, "product")
        if sq.space != self.ass.space:
            raise InternalCheckError("kernel ideal is not idempotent as an ideal")
        if self.quotient.algebra.dim != a.dim - self.ass.dim:
            raise InternalCheckError("quotient dimension mismatch")

    @property
    def quotient_algebra(self) -> Algebra:
        return self.quotient.algebra

    def image_is_unit(self, r: Element) -> bool:
        q = self.quotient
        img = q.project(r)
        return regular_matrix(q.algebra, img, "left").rank() == q.algebra.dim

    def core_member(self, x: Element) -> bool:
        a = self.witness_idempotent.algebra
        om = a.one - self.witness_idempotent
        return (om * x * om).is_zero()

    def members_within(self, guard: int = DEFAULT_GUARD) -> list[Element]:
        """Materialize the unit-preimage set explicitly (guarded enumeration)."""
        a = self.witness_idempotent.algebra
        total = a.p ** a.dim
        if total > guard:
            raise ResourceGuardError(f"{total} elements exceed the guard {guard}")
        coeffs = a.enumerate_coeffs()
        imgs = self.quotient.batch_project(coeffs)
        qa = self.quotient.algebra
        mask = qa.batch_unit_mask(imgs)
        return [a.element(tuple(int(v) for v in row)) for row in coeffs[mask]]


@dataclass(frozen=True)
class LocEntry:
    subset: Subset
    idempotent: Element
    ass: Ideal
    quotient: Quotient


@dataclass(frozen=True)
class LocalizationReport:
    """Everything the classification says about one side of one algebra."""

    algebra: Algebra
    side: str
    tri: TriangularIdempotentSet
    entries: tuple[LocEntry, ...]
    max_den: tuple[DenSetDescriptor, ...]
    l_rad: Ideal
    little_rad: Ideal
    flags: dict

    @property
    def loc_count(self) -> int:
        return len(self.entries)

    @property
    def minima(self) -> tuple[Subset, ...]:
        return self.tri.minima

    def entry(self, subset: Subset) -> LocEntry:
        for e in self.entries:
            if e.subset == subset:
                return e
        raise KeyError(subset)

    def to_dict(self) -> dict:
        a = self.algebra
        return {
            "side": self.side,
            "algebra": {"label": a.label, "p": a.p, "dim": a.dim},
            "blocks": {
                "s": self.tri.family.s,
                "dims": list(self.tri.family.block_dims),
                "commutative": list(self.tri.family.block_commutative),
                "rad_dim": self.tri.family.rad.dim,
            },
            "loc_count": self.loc_count,
            "entries": [
                {
                    "subset": subset_str(e.subset),
                    "idempotent": list(e.idempotent.coeffs),
                    "ass_dim": e.ass.dim,
                    "ass_basis": [list(r) for r in e.ass.space.basis],
                    "quotient_dim": e.quotient.algebra.dim,
                }
                for e in self.entries
            ],
            "minima": [subset_str(s) for s in self.minima],
            "max_den": [
                {
                    "kind": d.kind,
                    "idempotent": list(d.witness_idempotent.coeffs),
                    "ass_dim": d.ass.dim,
                    "quotient_dim": d.quotient.algebra.dim,
                }
                for d in self.max_den
            ],
            "l_rad_dim": self.l_rad.dim,
            "l_rad_basis": [list(r) for r in self.l_rad.space.basis],
            "little_rad_dim": self.little_rad.dim,
            "little_rad_basis": [list(r) for r in self.little_rad.space.basis],
            "flags": dict(sorted(self.flags.items())),
        }


def _intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for nxt in ideals[1:]:
        out = ideal_combine(out, nxt, "intersection")
    return out


def _product_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for nxt in ideals[1:]:
        out = ideal_combine(out, nxt, "product")
    return out


def localization_report(a: Algebra, side: str = "left") -> LocalizationReport:
    """Full classification for one side.  The right side is the left side of
    the opposite algebra; see :func:`duality_report` for the pairing."""
    if side == "right":
        raise InputError("build right-side reports through duality_report")
    cache_key = "report_left"
    if cache_key in a._cache:
        return a._cache[cache_key]
    fam = block_decomposition(a)
    tri = left_triangular_idempotents(a, fam)
    entries = []
    for subset, e in tri.entries:
        space = _right_ideal_of(a, a.one - e)
        ass = Ideal(a, space, "twosided")
        quo = quotient_algebra(a, ass) if ass.dim < a.dim else None
        if quo is None:
            raise InternalCheckError("kernel ideal of a triangular idempotent cannot be everything")
        entries.append(LocEntry(subset, e, ass, quo))
    by_subset = {en.subset: en for en in entries}

    max_den = []
    for subset in tri.minima:
        en = by_subset[subset]
        max_den.append(DenSetDescriptor("maximal", en.idempotent, en.ass, en.quotient))
    if len(max_den) > fam.s:
        raise InternalCheckError("more maximal classes than blocks")
    # Semisimple algebras have a maximal class per block.  The converse is
    # false: a local algebra with radical (one block, one class) also has
    # as many classes as blocks.
    if fam.rad.dim == 0 and len(max_den) != fam.s:
        raise InternalCheckError("semisimple algebra without one maximal class per block")

    minima_idems = [by_subset[sub].idempotent for sub in tri.minima]
    e_sum = a.zero
    for e in minima_idems:
        e_sum = e_sum + e
    closed_form = Ideal(a, _right_ideal_of(a, a.one - e_sum), "twosided")
    inter_form = _intersect_all([by_subset[sub].ass for sub in tri.minima])
    prod_form = _product_all([by_subset[sub].ass for sub in tri.minima])
    if not (closed_form.space == inter_form.space == prod_form.space):
        raise InternalCheckError("the three computations of the localization radical disagree")
    l_rad = closed_form
    lsq = ideal_combine(l_rad, l_rad, "product")
    if lsq.space != l_rad.space:
        raise InternalCheckError("localization radical is not an idempotent ideal")
    if (fam.rad.space.contains(l_rad.space)) != (l_rad.dim == 0):
        raise InternalCheckError("localization radical sits inside the nilpotent radical "
                                 "only when it vanishes")

    # Union of the minima must itself qualify, with kernel ideal l_rad, and be
    # the least upper bound of the minima.
    union_sub = tuple(sorted(set().union(*[set(s) for s in tri.minima])))
    if union_sub not in by_subset:
        raise InternalCheckError("union of minima does not qualify")
    if by_subset[union_sub].ass.space != l_rad.space:
        raise InternalCheckError("kernel ideal at the union of minima is not the radical")
    for sub, _ in tri.entries:
        if all(set(sub) >= set(m) for m in tri.minima) and not set(sub) >= set(union_sub):
            raise InternalCheckError("union of minima is not the least upper bound")

    nonzero_ass = [en.ass for en in entries if en.ass.dim > 0]
    if nonzero_ass:
        little = _intersect_all(nonzero_ass)
        little_prod = _product_all(nonzero_ass)
        maximal_ideals = [i for i in nonzero_ass
                          if not any(j.dim > i.dim and j.space.contains(i.space) for j in nonzero_ass)]
        minimal_ideals = [i for i in nonzero_ass
                          if not any(j.dim < i.dim and i.space.contains(j.space) for j in nonzero_ass)]
        if _intersect_all(minimal_ideals).space != little.space:
            raise InternalCheckError("little radical: intersection over minimal ideals disagrees")
        if little_prod.space != little.space:
            raise InternalCheckError("little radical: product form disagrees")
        if _intersect_all(maximal_ideals).space != l_rad.space:
            raise InternalCheckError("radical: intersection over maximal kernel ideals disagrees")
        if _product_all(maximal_ideals).space != l_rad.space:
            raise InternalCheckError("radical: product over maximal kernel ideals disagrees")
    else:
        little = Ideal(a, Subspace.zero(a.p, a.dim), "twosided")
    if not l_rad.space.contains(little.space):
        raise InternalCheckError("little radical is not inside the localization radical")

    for en in entries:
        sq = ideal_combine(en.ass, en.ass, "product")
        if sq.space != en.ass.space:
            raise InternalCheckError("kernel ideal is not idempotent")
        er = _right_ideal_of(a, en.idempotent)
        if en.ass.space.sum(er).dim != a.dim or en.ass.space.intersect(er).dim != 0:
            raise InternalCheckError("kernel ideal plus eR is not a direct decomposition")
    for en1 in entries:
        for en2 in entries:
            prod = ideal_combine(en1.ass, en2.ass, "product")
            inter = en1.ass.space.intersect(en2.ass.space)
            prod2 = ideal_combine(en2.ass, en1.ass, "product")
            if prod.space != inter or prod2.space != inter:
                raise InternalCheckError("kernel ideals do not multiply to their intersection")

    flags = {
        "localization_maximal": len(entries) == 1,
        "semisimple": fam.rad.dim == 0,
        "is_direct_product_of_loc_max": l_rad.dim == 0,
        "completely_loc_equals_units": l_rad.dim == 0,
    }
    report = LocalizationReport(a, "left", tri, tuple(entries), tuple(max_den), l_rad, little, flags)
    a._cache[cache_key] = report
    return report


# ---------------------------------------------------------------------------
# Element-level criteria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssociatedIdempotent:
    n: int
    e: Element
    e_prime: Element
    is_nilpotent: bool


def associated_idempotent(a: Algebra, s: Element) -> AssociatedIdempotent:
    """Split 1 = e + e' along R*s^n (+) ker(.s^n) at the stabilization power n.

    For nilpotent s the split degenerates: e = 0 is returned with the flag
    set.  For a unit, n = 0 and e = 1.
    """
    rm = regular_matrix(a, s, "right")
    prev = Subspace.full(a.p, a.dim)
    power = Mat.identity(a.p, a.dim)
    n = 0
    while True:
        nxt_mat = power * rm
        nxt = Subspace.from_vectors(a.p, a.dim, nxt_mat.data)
        if nxt == prev:
            break
        prev, power = nxt, nxt_mat
        n += 1
    space = prev
    if space.dim == 0:
        return AssociatedIdempotent(n, a.zero, a.one, True)
    ker = kernel(power)
    if space.dim + ker.dim != a.dim or space.intersect(ker).dim != 0:
        raise InternalCheckError("R s^n and ker(.s^n) do not decompose the algebra")
    from .linalg import express_in_rows
    rows = list(space.basis) + list(ker.basis)
    combo = express_in_rows(rows, a.one_coeffs, a.p)
    if combo is None:
        raise InternalCheckError("identity is not reachable from the direct decomposition")
    k1 = space.dim
    e_vec = [0] * a.dim
    for c, row in zip(combo[:k1], space.basis):
        for j, v in enumerate(row):
            e_vec[j] = (e_vec[j] + c * v) % a.p
    e = a.element(e_vec)
    e_prime = a.one - e
    if (e * e) != e or (e_prime * e_prime) != e_prime:
        raise InternalCheckError("decomposition of 1 is not by idempotents")
    if not (e * e_prime).is_zero() or not (e_prime * e).is_zero():
        raise InternalCheckError("decomposition idempotents are not orthogonal")
    return AssociatedIdempotent(n, e, e_prime, False)


def powers_denominator_criterion(a: Algebra, s: Element) -> tuple[bool, DenSetDescriptor | None]:
    """Do the powers of s form a denominator set?

    Nilpotent s fails outright (its powers reach 0, which no multiplicative
    set may contain).  Otherwise, with e the idempotent associated with s:
    the powers qualify iff e R (1 - e) = 0 and (1 - e) s (1 - e) is
    nilpotent; the kernel ideal is then (1 - e)R and the localization is
    the quotient by it.  The core is the set of powers s^i, i >= 1, with
    (1 - e) s^i (1 - e) = 0 (every i once one qualifies); for a unit the
    kernel ideal is zero and every power, including s^0, is in the core.
    """
    assoc = associated_idempotent(a, s)
    if assoc.is_nilpotent:
        return False, None
    e = assoc.e
    if not _is_left_triangular(a, e):
        return False, None
    om = a.one - e
    w = om * s * om
    lw = regular_matrix(a, w, "left")
    if not (lw ** a.dim).is_zero():
        return False, None
    ass = Ideal(a, _right_ideal_of(a, om), "twosided")
    quo = quotient_algebra(a, ass) if ass.dim < a.dim else None
    if quo is None:
        raise InternalCheckError("triangular kernel ideal cannot be the whole algebra")
    if ass.dim == 0:
        min_exp = 0
    else:
        min_exp = None
        power = s
        for i in range(1, a.dim + 1):
            if (om * power * om).is_zero():
                min_exp = i
                break
            power = power * s
        if min_exp is None:
            raise InternalCheckError("no core exponent found below the dimension bound")
    return True, DenSetDescriptor("powers", e, ass, quo, min_core_exponent=min_exp)


@dataclass(frozen=True)
class IdempotentCheck:
    left: bool
    right: bool
    twosided: bool
    central: bool
    descriptor: DenSetDescriptor | None


def idempotent_denominator_check(a: Algebra, e: Element) -> IdempotentCheck:
    """Check {1, e} on both sides.  Requires a nonzero idempotent.

    Left holds iff e R (1 - e) = 0; right iff (1 - e) R e = 0; two-sided
    iff both iff e is central (asserted).
    """
    if e.is_zero():
        raise InputError("the idempotent 0 is excluded (its set would contain 0)")
    if (e * e) != e:
        raise InputError("element is not idempotent")
    om = a.one - e
    left = all((e * b * om).is_zero() for b in a.basis())
    right = all((om * b * e).is_zero() for b in a.basis())
    central = _is_central(a, e)
    if (left and right) != central:
        raise InternalCheckError("two-sided triangularity must coincide with centrality")
    descriptor = None
    if left:
        ass = Ideal(a, _right_ideal_of(a, om), "twosided")
        quo = quotient_algebra(a, ass) if ass.dim < a.dim else None
        if quo is None:
            raise InternalCheckError("kernel ideal of a denominator idempotent is proper")
        descriptor = DenSetDescriptor("idempotent", e, ass, quo)
    return IdempotentCheck(left, right, left and right, central, descriptor)


def monoid_denominator_decision(a: Algebra, gens: Sequence[Element],
                                guard: int = DEFAULT_GUARD) -> tuple[bool, DenSetDescriptor | None]:
    """Decide whether the monoid generated by ``gens`` is a left denominator set.

    Implements the witness search: the monoid qualifies iff it contains an
    element s whose powers qualify and modulo whose kernel ideal every
    generator becomes a unit.  The kernel ideal is witness-independent;
    this is asserted across all witnesses, and a witness whose
    left-multiplication kernel equals the whole ideal (a core element) must
    exist and is used for the descriptor.
    """
    from .oracle import monoid_closure
    closure = monoid_closure(a, gens, guard)
    if closure.contains_zero:
        return False, None
    witnesses: list[tuple[Element, DenSetDescriptor]] = []
    for s in closure.members:
        ok, desc = powers_denominator_criterion(a, s)
        if not ok:
            continue
        if all(desc.image_is_unit(g) for g in gens):
            witnesses.append((s, desc))
    if not witnesses:
        return False, None
    spaces = {desc.ass.space for _, desc in witnesses}
    if len(spaces) != 1:
        raise InternalCheckError("witnesses disagree about the kernel ideal")
    ass_space = witnesses[0][1].ass.space
    core_witness = None
    for s, desc in witnesses:
        ker_s = kernel(regular_matrix(a, s, "left"))
        if ker_s == ass_space:
            core_witness = (s, desc)
            break
    if core_witness is None:
        raise InternalCheckError("no witness with full left-multiplication kernel")
    desc = core_witness[1]
    return True, DenSetDescriptor("monoid", desc.witness_idempotent, desc.ass, desc.quotient)


def classify_element(a: Algebra, r: Element, report: LocalizationReport) -> dict:
    """Localizability of one element against the maximal classes."""
    if report.algebra is not a or report.side != "left":
        raise InputError("report does not match the algebra/side")
    witnesses = []
    by_subset = {en.subset: en for en in report.entries}
    for sub in report.minima:
        en = by_subset[sub]
        img = en.quotient.project(r)
        if regular_matrix(en.quotient.algebra, img, "left").rank() == en.quotient.algebra.dim:
            witnesses.append(sub)
    left_localizable = bool(witnesses)
    completely = len(witnesses) == len(report.minima)
    if regular_matrix(a, r, "left").rank() == a.dim and not completely:
        raise InternalCheckError("a unit must be completely localizable")
    return {"left_localizable": left_localizable, "completely": completely,
            "witnesses": tuple(witnesses)}


def nl_ideal_test(a: Algebra, report: LocalizationReport, samples: int = 50, seed: int = 0) -> bool:
    """True iff the non-localizable elements form an ideal: every quotient at
    a minimal class is a division ring (over GF(p): semisimple, one block,
    commutative).  The two-sided absorption of the non-localizable set is
    spot-checked by sampling."""
    import random
    by_subset = {en.subset: en for en in report.entries}
    result = True
    for sub in report.minima:
        q = by_subset[sub].quotient.algebra
        fam = block_decomposition(q)
        if not (fam.rad.dim == 0 and fam.s == 1 and fam.block_commutative[0]):
            result = False
            break
    rng = random.Random(seed)
    nl_pool = [a.zero]
    for _ in range(samples):
        x = rng.choice(nl_pool)
        r = a.element([rng.randrange(a.p) for _ in range(a.dim)])
        y = a.element([rng.randrange(a.p) for _ in range(a.dim)])
        prod = r * x * y
        if classify_element(a, prod, report)["left_localizable"]:
            raise InternalCheckError("the non-localizable set absorbed into a localizable element")
        cand = a.element([rng.randrange(a.p) for _ in range(a.dim)])
        if not classify_element(a, cand, report)["left_localizable"]:
            nl_pool.append(cand)
    return result


# ---------------------------------------------------------------------------
# Duality and the two-sided theory
# ---------------------------------------------------------------------------

def _transfer_ideal(target: Algebra, ideal: Ideal) -> Ideal:
    return Ideal(target, Subspace(target.p, target.dim, ideal.space.basis, ideal.space.pivots),
                 "twosided")


@dataclass(frozen=True)
class DualityReport:
    left: LocalizationReport
    right: LocalizationReport       # built on the opposite algebra
    pairing: tuple[tuple[Subset, Subset], ...]
    counts_equal: bool
    l_zero_iff_r_zero: bool
    r_rad: Ideal                    # right localization radical, as an ideal of the original
    l_neq_r: bool

    def to_dict(self) -> dict:
        return {
            "counts_equal": self.counts_equal,
            "loc_count_left": self.left.loc_count,
            "loc_count_right": self.right.loc_count,
            "pairing": [[subset_str(i), subset_str(ci)] for i, ci in self.pairing],
            "l_zero_iff_r_zero": self.l_zero_iff_r_zero,
            "l_rad_dim": self.left.l_rad.dim,
            "r_rad_dim": self.r_rad.dim,
            "l_neq_r": self.l_neq_r,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


def duality_report(a: Algebra) -> DualityReport:
    """Left and right classifications with the complement pairing between them.

    The right side is computed as the left side of the opposite algebra;
    the deterministic pipeline produces the same lifted idempotents there
    (asserted), so block indices agree across sides.  The pairing
    I -> complement(I) is an order-reversing bijection between the proper
    subsets on the two sides.
    """
    left = localization_report(a)
    op = a._cache.get("opposite")
    if op is None:
        op = opposite_algebra(a)
        a._cache["opposite"] = op
    right = localization_report(op)
    fam_l, fam_r = left.tri.family, right.tri.family
    if [e.coeffs for e in fam_l.idempotents] != [e.coeffs for e in fam_r.idempotents]:
        raise InternalCheckError("opposite algebra produced a different idempotent family")
    s = fam_l.s
    full = tuple(range(1, s + 1))
    left_proper = [sub for sub, _ in left.tri.entries if sub != full]
    right_proper = {sub for sub, _ in right.tri.entries if sub != full}
    pairing = []
    for sub in left_proper:
        comp = tuple(sorted(set(full) - set(sub)))
        if comp not in right_proper:
            raise InternalCheckError("complement of a left subset is not a right subset")
        pairing.append((sub, comp))
    if len(pairing) != len(right_proper):
        raise InternalCheckError("complement map is not onto the right subsets")
    for (i1, c1), (i2, c2) in itertools.product(pairing, pairing):
        if (set(i1) <= set(i2)) != (set(c1) >= set(c2)):
            raise InternalCheckError("complement pairing failed to reverse the order")
    counts_equal = left.loc_count == right.loc_count
    if not counts_equal:
        raise InternalCheckError("left and right localization counts differ")
    l_zero_iff_r_zero = (left.l_rad.dim == 0) == (right.l_rad.dim == 0)
    if not l_zero_iff_r_zero:
        raise InternalCheckError("localization radicals do not vanish together")
    if left.flags["localization_maximal"] != right.flags["localization_maximal"]:
        raise InternalCheckError("localization maximality is not side-symmetric")
    r_rad = _transfer_ideal(a, right.l_rad)
    l_neq_r = left.l_rad.space != r_rad.space
    return DualityReport(left, right, tuple(pairing), counts_equal, l_zero_iff_r_zero,
                         r_rad, l_neq_r)


def _center_algebra(a: Algebra) -> tuple[Algebra, list[Element]]:
    """The center as an algebra together with its basis inside a."""
    from .structure import _center_subspace
    center = _center_subspace(a)
    basis = [a.element(v) for v in center.basis]
    table = []
    for u in center.basis:
        row = []
        for v in center.basis:
            coords = center.coordinates(a.mul_coeffs(u, v))
            if coords is None:
                raise InternalCheckError("center is not multiplicatively closed")
            row.append(list(coords))
        table.append(row)
    one = center.coordinates(a.one_coeffs)
    if one is None:
        raise InternalCheckError("identity is not central")
    return Algebra(a.p, table, one, f"Z({a.label})"), basis


@dataclass(frozen=True)
class TwoSidedReport:
    """Two-sided classification: everything is governed by the primitive
    central idempotents (the finest direct product decomposition)."""

    algebra: Algebra
    central_idempotents: tuple[Element, ...]
    factor_quotients: tuple[Quotient, ...]
    max_den: tuple[DenSetDescriptor, ...]
    loc_radical: Ideal

    @property
    def factors(self) -> int:
        return len(self.central_idempotents)

    @property
    def loc_count(self) -> int:
        return (1 << self.factors) - 1

    def component(self, r: Element, i: int) -> Element:
        """Image of r in factor i (0-based)."""
        return self.factor_quotients[i].project(r)

    def powers_criterion(self, r: Element) -> bool:
        """Powers of r form a two-sided denominator set iff r is not
        nilpotent and each factor component is a unit or nilpotent."""
        a = self.algebra
        if (regular_matrix(a, r, "left") ** a.dim).is_zero():
            return False
        for quo in self.factor_quotients:
            img = quo.project(r)
            qa = quo.algebra
            if regular_matrix(qa, img, "left").rank() == qa.dim:
                continue
            if (regular_matrix(qa, img, "left") ** qa.dim).is_zero():
                continue
            return False
        return True

    def core_rule(self, members: Iterable[Element], subset: Subset) -> list[Element]:
        """Core of a two-sided denominator set with kernel ideal R(1-e_I):
        the members annihilated by 1 - e_I on the left."""
        e = self.algebra.zero
        for i in subset:
            e = e + self.central_idempotents[i - 1]
        om = self.algebra.one - e
        return [s for s in members if (om * s).is_zero()]

    def to_dict(self) -> dict:
        return {
            "factors": self.factors,
            "loc_count": self.loc_count,
            "central_idempotents": [list(e.coeffs) for e in self.central_idempotents],
            "factor_dims": [q.algebra.dim for q in self.factor_quotients],
            "max_den": [
                {"kind": d.kind, "idempotent": list(d.witness_idempotent.coeffs),
                 "ass_dim": d.ass.dim, "quotient_dim": d.quotient.algebra.dim}
                for d in self.max_den
            ],
            "loc_radical_dim": self.loc_radical.dim,
        }


def two_sided_report(a: Algebra) -> TwoSidedReport:
    """Primitive central idempotents via the center (radical of the center,
    split of its semisimple quotient, unique lifts in the commutative
    center), then the counting and radical facts that follow."""
    if "two_sided" in a._cache:
        return a._cache["two_sided"]
    zalg, zbasis = _center_algebra(a)
    zfam = block_decomposition(zalg)
    cents = []
    for e in zfam.idempotents:
        vec = [0] * a.dim
        for c, zb in zip(e.coeffs, zbasis):
            if c:
                for j, v in enumerate(zb.coeffs):
                    vec[j] = (vec[j] + c * v) % a.p
        cents.append(a.element(vec))
    cents.sort(key=lambda e: (_pivot_of(e.coeffs), e.coeffs))
    total = a.zero
    for e in cents:
        if (e * e) != e or not _is_central(a, e):
            raise InternalCheckError("central idempotent candidate failed verification")
        total = total + e
    if total != a.one:
        raise InternalCheckError("central idempotents do not sum to 1")
    for i, e in enumerate(cents):
        for j, f in enumerate(cents):
            if i != j and not (e * f).is_zero():
                raise InternalCheckError("central idempotents are not orthogonal")
    t = len(cents)
    if (1 << t) > MAX_SUBSET_ENUM:
        raise ResourceGuardError(f"2^{t} central subsets exceed the enumeration bound")
    count = 0
    for size in range(1, t + 1):
        for combo in itertools.combinations(range(t), size):
            e = a.zero
            for i in combo:
                e = e + cents[i]
            om = a.one - e
            for b in a.basis():
                if not (e * b * om).is_zero() or not (om * b * e).is_zero():
                    raise InternalCheckError("central subset sum is not two-sided triangular")
            count += 1
    if count != (1 << t) - 1:
        raise InternalCheckError("central subset enumeration miscounted")
    quotients = []
    descriptors = []
    for e in cents:
        ass = Ideal(a, _right_ideal_of(a, a.one - e), "twosided")
        quo = quotient_algebra(a, ass) if ass.dim < a.dim else None
        if quo is None:
            raise InternalCheckError("factor ideal cannot be the whole algebra")
        left_space = _left_ideal_of(a, a.one - e)
        if left_space != ass.space:
            raise InternalCheckError("central kernel ideal must be side-symmetric")
        quotients.append(quo)
        descriptors.append(DenSetDescriptor("maximal", e, ass, quo))
    rad_ideal = _intersect_all([d.ass for d in descriptors]) if descriptors else None
    if rad_ideal is None or rad_ideal.dim != 0:
        raise InternalCheckError("two-sided localization radical must vanish")
    report = TwoSidedReport(a, tuple(cents), tuple(quotients), tuple(descriptors), rad_ideal)
    a._cache["two_sided"] = report
    return report


def _pivot_of(vec: tuple[int, ...]) -> int:
    for i, v in enumerate(vec):
        if v:
            return i
    return len(vec)
