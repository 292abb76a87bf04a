"""Cross-module invariant battery.

Runs every structural identity the classification promises against the
definitional oracles on one algebra: radical cross-checks, the idempotent
family laws, kernel-ideal identities, duality, the five-way equivalence
bundle for "completely localizable = units", and the element sweeps that
compare the powers criterion and the idempotent criterion with brute
force.  The CLI ``verify`` command runs exactly this battery; the test
suite runs it across the fixture corpus.

Sweep work is bounded: ``guard`` caps any single enumeration (default
2**20), while full per-element sweeps run only when the ring has at most
``sweep_limit`` elements and fall back to seeded sampling above that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Element, regular_matrix
from .linalg import DEFAULT_GUARD, Subspace, kernel
from .localization import (
    classify_element,
    duality_report,
    idempotent_denominator_check,
    localization_report,
    monoid_denominator_decision,
    powers_denominator_criterion,
    two_sided_report,
)
from .oracle import (
    FiniteSetOfElements,
    brute_denominator_check,
    brute_idempotents,
    brute_radical,
    monoid_closure,
)
from .structure import block_decomposition, radical

DEFAULT_SWEEP_LIMIT = 2048


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _random_element(a: Algebra, rng: random.Random) -> Element:
    return a.element([rng.randrange(a.p) for _ in range(a.dim)])


def powers_agreement(a: Algebra, s: Element, guard: int = DEFAULT_GUARD) -> tuple[bool, str]:
    """Compare the powers criterion with the definitional check on one element.

    Agreement covers the verdict and, on success, the kernel ideal and the
    core.  A nilpotent element fails on both sides because its powers
    reach 0.
    """
    ok, desc = powers_denominator_criterion(a, s)
    closure = monoid_closure(a, [s], guard)
    if closure.contains_zero:
        if ok:
            return False, f"criterion accepted a set containing 0 at {s!r}"
        return True, ""
    res = brute_denominator_check(a, closure, "left", guard)
    if ok != res.is_den:
        return False, f"verdict mismatch at {s!r}: criterion {ok}, oracle {res.is_den}"
    if not ok:
        return True, ""
    if res.ass is None or res.ass.space != desc.ass.space:
        return False, f"kernel ideal mismatch at {s!r}"
    crit_core = {m.coeffs for m in closure.members if desc.core_member(m)}
    oracle_core = {m.coeffs for m in res.core.members}
    if crit_core != oracle_core:
        return False, f"core mismatch at {s!r}"
    return True, ""


def bundle_conditions(a: Algebra, sweep_limit: int = DEFAULT_SWEEP_LIMIT,
                      rng: random.Random | None = None,
                      samples: int = 64) -> tuple[bool, bool, bool, bool, bool]:
    """The five conditions that hold together for left Artinian algebras:

    1. the completely localizable elements are exactly the units;
    2. the minimal class subsets cover every block;
    3. the minima sum to 1 and their corners decompose the algebra;
    4. every finest central factor is localization maximal;
    5. the localization radical vanishes.

    Condition 1 is swept exhaustively up to ``sweep_limit`` ring elements
    and sampled above that (plus the deterministic witness: the sum of the
    minima idempotents is completely localizable but is a unit only when
    the radical vanishes).
    """
    rng = rng or random.Random(0)
    total = a.p ** a.dim
    vector_limit = max(sweep_limit, 1 << 20)  # the unit sweep is batched
    rep = localization_report(a)
    fam = rep.tri.family
    full = set(range(1, fam.s + 1))
    c5 = rep.l_rad.dim == 0
    c2 = set().union(*[set(m) for m in rep.minima]) == full
    e_sum = a.zero
    corner_dims = 0
    for sub in rep.minima:
        e = rep.entry(sub).idempotent
        e_sum = e_sum + e
        corner = [a.mul_coeffs(a.mul_coeffs(e.coeffs, b.coeffs), e.coeffs) for b in a.basis()]
        corner_dims += Subspace.from_vectors(a.p, a.dim, corner).dim
    c3 = (e_sum == a.one) and corner_dims == a.dim
    ts = two_sided_report(a)
    c4 = all(localization_report(quo.algebra).loc_count == 1 for quo in ts.factor_quotients)
    if total <= vector_limit:
        coeffs = a.enumerate_coeffs()
        unit = a.batch_unit_mask(coeffs)
        complete = np.ones(total, dtype=bool)
        for sub in rep.minima:
            en = rep.entry(sub)
            imgs = en.quotient.batch_project(coeffs)
            complete &= en.quotient.algebra.batch_unit_mask(imgs)
        c1 = bool((complete == unit).all())
    else:
        c1 = True
        for _ in range(samples):
            r = _random_element(a, rng)
            is_unit = regular_matrix(a, r, "left").rank() == a.dim
            if classify_element(a, r, rep)["completely"] != is_unit:
                c1 = False
                break
        if not c5 and c1:
            # the sum of the minima idempotents is always completely
            # localizable but is a unit only when the radical vanishes
            if classify_element(a, e_sum, rep)["completely"]:
                c1 = False
    return c1, c2, c3, c4, c5


def run_invariants(a: Algebra, guard: int = DEFAULT_GUARD,
                   sweep_limit: int | None = None, seed: int = 0,
                   samples: int = 64) -> list[CheckResult]:
    if sweep_limit is None:
        sweep_limit = min(guard, DEFAULT_SWEEP_LIMIT)
    total = a.p ** a.dim
    rng = random.Random(seed)
    results: list[CheckResult] = []

    def check(name: str, fn) -> None:
        try:
            out = fn()
        except Exception as exc:  # noqa: BLE001 - every failure must be reported, not raised
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
            return
        if out is None:
            results.append(CheckResult(name, True))
        else:
            ok, detail = out
            results.append(CheckResult(name, bool(ok), detail))

    # -- structure ----------------------------------------------------------
    def _radical_crosscheck():
        rad = radical(a)
        if total <= guard:
            brute = brute_radical(a, guard)
            if brute.space != rad.space:
                return False, "trace-form radical disagrees with the quasi-regularity sweep"
        fam = block_decomposition(a)
        if radical(fam.quotient.algebra).dim != 0:
            return False, "semisimple quotient has a nonzero radical"
        return True, ""
    check("radical_crosscheck", _radical_crosscheck)

    def _family_laws():
        fam = block_decomposition(a)
        if sum(fam.block_dims) != fam.quotient.algebra.dim:
            return False, "block dimensions do not add up to the semisimple quotient"
        again = block_decomposition(a)
        if [e.coeffs for e in again.idempotents] != [e.coeffs for e in fam.idempotents]:
            return False, "idempotent family is not deterministic"
        return True, ""
    check("idempotent_family", _family_laws)

    def _left_regular_units():
        # vectorized, so the full enumeration bound applies rather than the
        # per-element sweep limit
        if total <= guard:
            coeffs = a.enumerate_coeffs()
            unit = a.batch_unit_mask(coeffs)
            from .linalg import batch_rank
            left_regular = batch_rank(a.batch_right_matrices(coeffs), a.p) == a.dim
            if (left_regular & ~unit).any():
                return False, "a left regular element is not a unit"
            return True, f"exhaustive over {total}"
        for _ in range(max(samples, 10_000)):
            x = _random_element(a, rng)
            if kernel(regular_matrix(a, x, "right")).dim == 0:
                if regular_matrix(a, x, "left").rank() != a.dim:
                    return False, f"left regular non-unit {x!r}"
        return True, "sampled 10000"
    check("left_regular_implies_unit", _left_regular_units)

    def _split_equivalence():
        for _ in range(samples):
            s = _random_element(a, rng)
            rm = regular_matrix(a, s, "right")
            rs = Subspace.from_vectors(a.p, a.dim, rm.data)
            ker = kernel(rm)
            if rs.dim + ker.dim != a.dim:
                return False, f"rank-nullity broken at {s!r}"
            trivial_meet = rs.intersect(ker).dim == 0
            covers = rs.sum(ker).dim == a.dim
            if trivial_meet != covers:
                return False, f"split equivalence broken at {s!r}"
        return True, ""
    check("image_kernel_split", _split_equivalence)

    # -- classification reports ---------------------------------------------
    def _report_builds():
        localization_report(a)
    check("left_report_invariants", _report_builds)

    def _duality():
        duality_report(a)
    check("duality", _duality)

    def _two_sided():
        two_sided_report(a)
    check("two_sided_report", _two_sided)

    def _bundle():
        c1, c2, c3, c4, c5 = bundle_conditions(a, sweep_limit, rng, samples)
        if not (c1 == c2 == c3 == c4 == c5):
            return False, f"bundle split: units={c1} cover={c2} product={c3} factors={c4} radical={c5}"
        return True, ""
    check("completely_localizable_bundle", _bundle)

    def _minima_quotients_are_maximal():
        rep = localization_report(a)
        for sub in rep.minima:
            q = rep.entry(sub).quotient.algebra
            if localization_report(q).loc_count != 1:
                return False, f"quotient at {sub} still localizes"
        return True, ""
    check("minima_quotients_maximal", _minima_quotients_are_maximal)

    # -- oracle agreement ----------------------------------------------------
    def _idempotent_oracle():
        if total > guard:
            return True, "skipped (guard)"
        rep = localization_report(a)
        class_spaces = {en.ass.space for en in rep.entries}
        ids = brute_idempotents(a, guard)
        all_den = True
        for e in ids.members:
            if e.is_zero():
                continue
            chk = idempotent_denominator_check(a, e)
            sset = FiniteSetOfElements.from_elements(a, [a.one, e])
            left = brute_denominator_check(a, sset, "left", guard)
            if chk.left != left.is_den:
                return False, f"left disagreement at {e!r}"
            if chk.left and left.ass.space != chk.descriptor.ass.space:
                return False, f"kernel ideal disagreement at {e!r}"
            if chk.left and chk.descriptor.ass.space not in class_spaces:
                return False, f"denominator idempotent {e!r} outside the classified classes"
            right = brute_denominator_check(a, sset, "right", guard)
            if chk.right != right.is_den:
                return False, f"right disagreement at {e!r}"
            two = brute_denominator_check(a, sset, "twosided", guard)
            if chk.central != two.is_den:
                return False, f"two-sided/centrality disagreement at {e!r}"
            if not chk.left:
                all_den = False
        ts = two_sided_report(a)
        local = all(block_decomposition(q.algebra).s == 1 and
                    block_decomposition(q.algebra).block_commutative[0]
                    for q in ts.factor_quotients)
        if all_den != local:
            return False, "all-idempotents-qualify does not match product-of-local-factors"
        return True, f"{len(ids)} idempotents"
    check("idempotent_oracle", _idempotent_oracle)

    def _powers_oracle():
        if total <= sweep_limit:
            for s in a.iter_elements():
                ok, detail = powers_agreement(a, s, guard)
                if not ok:
                    return False, detail
            return True, f"exhaustive over {total}"
        for _ in range(samples):
            ok, detail = powers_agreement(a, _random_element(a, rng), guard)
            if not ok:
                return False, detail
        return True, f"sampled {samples}"
    check("powers_oracle", _powers_oracle)

    def _maximal_den_oracle():
        if total > sweep_limit:
            return True, "skipped (sweep limit)"
        rep = localization_report(a)
        for desc in rep.max_den:
            members = desc.members_within(guard)
            sset = FiniteSetOfElements.from_elements(a, members)
            res = brute_denominator_check(a, sset, "left", guard)
            if not res.is_den:
                return False, f"T_e at {desc.witness_idempotent!r} failed the brute check"
            if res.ass.space != desc.ass.space:
                return False, "materialized maximal set has the wrong kernel ideal"
            oracle_core = {m.coeffs for m in res.core.members}
            formula_core = {m.coeffs for m in members if desc.core_member(m)}
            if oracle_core != formula_core:
                return False, "core formula disagrees with the definitional core"
        return True, f"{len(rep.max_den)} maximal sets"
    check("maximal_den_oracle", _maximal_den_oracle)

    def _two_sided_powers_oracle():
        if total > guard:
            return True, "skipped (guard)"
        ts = two_sided_report(a)
        for _ in range(samples):
            r = _random_element(a, rng)
            verdict = ts.powers_criterion(r)
            closure = monoid_closure(a, [r], guard)
            if closure.contains_zero:
                oracle_verdict = False
            else:
                oracle_verdict = brute_denominator_check(a, closure, "twosided", guard).is_den
            if verdict != oracle_verdict:
                return False, f"two-sided powers disagreement at {r!r}"
        return True, f"sampled {samples}"
    check("two_sided_powers_oracle", _two_sided_powers_oracle)

    def _monoid_oracle():
        if total > guard:
            return True, "skipped (guard)"
        from .linalg import ResourceGuardError
        closure_cap = min(guard, max(sweep_limit // 2, 256))
        tested = skipped = 0
        while tested < samples and skipped < 10 * samples:
            gens = [_random_element(a, rng) for _ in range(rng.choice([1, 2]))]
            try:
                closure = monoid_closure(a, gens, closure_cap)
            except ResourceGuardError:
                skipped += 1
                continue
            tested += 1
            verdict, desc = monoid_denominator_decision(a, gens, guard)
            if closure.contains_zero:
                oracle_verdict = False
                res = None
            else:
                res = brute_denominator_check(a, closure, "left", guard)
                oracle_verdict = res.is_den
            if verdict != oracle_verdict:
                return False, f"monoid disagreement at {[g.coeffs for g in gens]}"
            if verdict and res.ass.space != desc.ass.space:
                return False, "monoid kernel ideal disagreement"
            if verdict:
                # every denominator set's kernel ideal is a classified class
                rep = localization_report(a)
                if desc.ass.space not in {en.ass.space for en in rep.entries}:
                    return False, "denominator monoid outside the classified classes"
        return True, f"tested {tested}, closure-capped {skipped}"
    check("monoid_oracle", _monoid_oracle)

    def _block_support_complements():
        rep = localization_report(a)
        fam = rep.tri.family
        full = frozenset(range(1, fam.s + 1))
        from .structure import ideal_block_support
        for en in rep.entries:
            if en.ass.dim == 0:
                continue
            support, in_rad = ideal_block_support(fam, en.ass)
            if in_rad or support != full - frozenset(en.subset):
                return False, f"support of the {en.subset} class is not the complement"
        return True, ""
    check("kernel_ideal_block_support", _block_support_complements)

    return results
