"""Certificates and bounds for stable translation length on the curve graph.

Each checker validates one hypothesis shape against a trusted curve system
and reports every condition with the symbolic threshold *and* its
instantiated value.  When a condition fails, the numeric bounds are still
reported as would-be values so the torus backend can be used for
experiments, but the result is flagged unverified and the pseudo-Anosov
field stays unknown.  Everything is exact integer/rational arithmetic.

Theorem tags are wire constants used in JSON reports:

* ``Main3.1``       exact length for a word alternating on two filling curves
* ``Cycle3.2``      two-sided bound for a cycle of single curves
* ``TwoMulti3.4``   two-sided bound for alternating multicurve blocks
* ``MultiCycle3.5`` two-sided bound for a cycle of multicurve blocks
* ``Penner2.4``     positivity-only certificate (positive/negative twists)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import CurveSystem, dist_multicurve, proj_multicurve
from .errors import (
    MissingDistance,
    MissingProjection,
    UnknownCurve,
    WrongShape,
)
from .thurston import is_penner_word
from .words import Syllable, TwistWord, block_decompose, normalize

THEOREM_EXACT_TWO_FILLING = "Main3.1"
THEOREM_CURVE_CYCLE = "Cycle3.2"
THEOREM_TWO_MULTICURVE = "TwoMulti3.4"
THEOREM_MULTICURVE_CYCLE = "MultiCycle3.5"
THEOREM_PENNER = "Penner2.4"
THEOREM_NONE = "None"


@dataclass(frozen=True)
class ConditionVerdict:
    """One checked hypothesis; failed verdicts always name a witness."""

    description: str
    passed: bool
    witness: str | None = None

    def __post_init__(self):
        assert self.passed or self.witness, "failed verdicts must carry a witness"


@dataclass(frozen=True)
class BoundResult:
    theorem: str
    conditions: tuple[ConditionVerdict, ...]
    lower: int
    upper: int | None  # None is +infinity
    exact: int | None
    pseudo_anosov: bool | None

    def __post_init__(self):
        assert self.upper is None or self.lower <= self.upper
        if self.exact is not None:
            assert self.lower == self.exact == self.upper

    @property
    def verified(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def width(self) -> int | None:
        return None if self.upper is None else self.upper - self.lower

    def failed_conditions(self) -> list[ConditionVerdict]:
        return [c for c in self.conditions if not c.passed]


def identity_result() -> BoundResult:
    """The empty word: the identity, translation length exactly zero."""
    verdict = ConditionVerdict("word normalizes to the identity: not pseudo-Anosov", True)
    return BoundResult(THEOREM_NONE, (verdict,), 0, 0, 0, False)


def _ok(conds) -> bool:
    return all(c.passed for c in conds)


def _interval_result(theorem, conds, lower, upper, exact_when_ok=None) -> BoundResult:
    ok = _ok(conds)
    lower = max(0, lower)
    upper = max(0, upper) if upper is not None else None
    return BoundResult(
        theorem,
        tuple(conds),
        lower,
        upper,
        exact_when_ok if ok else None,
        True if ok else None,
    )


# ---------------------------------------------------------------------------
# alternating word on two filling curves: exact value


def exact_two_filling(word: TwistWord, sys: CurveSystem) -> BoundResult:
    """Exact translation length 2n(l-2) for T_a^{e1} T_b^{e2} ... (2n syllables).

    Conditions: the two curves are at distance l >= 3 and every exponent
    exceeds 2M in absolute value.
    """
    w = normalize(word)
    if not w.syllables:
        return identity_result()
    curves = w.curves()
    if len(curves) != 2:
        raise WrongShape(f"need a word alternating on exactly two curves, got {curves}")
    if len(w) % 2 != 0:
        raise WrongShape("need an even number of syllables (the word ends on the second curve)")
    a, b = curves
    for c in curves:
        sys.require_curve(c)
    n = len(w) // 2
    l = sys.dist(a, b)
    threshold = 2 * sys.M
    conds = [
        ConditionVerdict(
            f"dist({a}, {b}) = {l} >= 3 (filling pair)",
            l >= 3,
            None if l >= 3 else f"dist({a}, {b}) = {l}",
        )
    ]
    offender = next((s for s in w if abs(s.exponent) <= threshold), None)
    conds.append(
        ConditionVerdict(
            f"every |exponent| > 2M = {threshold}",
            offender is None,
            str(offender) if offender is not None else None,
        )
    )
    value = 2 * n * (l - 2)
    ok = _ok(conds)
    return _interval_result(
        THEOREM_EXACT_TWO_FILLING, conds, value, value, value if ok else None
    )


# ---------------------------------------------------------------------------
# cycle of single curves: two-sided bound


def bounds_curve_cycle(word: TwistWord, sys: CurveSystem) -> BoundResult:
    """Bounds sum(dist) - 2k <= length <= sum(dist) for one twist per curve.

    The normalized word must have one syllable per curve (all curves
    distinct); conditions are cyclic: consecutive curves at distance >= 3
    and each exponent beyond 2M + 2 + proj at its curve between its cyclic
    neighbors.
    """
    w = normalize(word)
    if not w.syllables:
        return identity_result()
    k = len(w)
    if k < 2:
        raise WrongShape("a twist cycle needs at least two syllables")
    curves = [s.curve for s in w]
    if len(set(curves)) != k:
        raise WrongShape("each curve may appear in exactly one syllable of the cycle")
    for c in curves:
        sys.require_curve(c)
    conds = []
    total = 0
    for i in range(k):
        cur, nxt = curves[i], curves[(i + 1) % k]
        d = sys.dist(cur, nxt)
        total += d
        conds.append(
            ConditionVerdict(
                f"dist({cur}, {nxt}) = {d} >= 3",
                d >= 3,
                None if d >= 3 else f"dist({cur}, {nxt}) = {d}",
            )
        )
    for i in range(k):
        prev_c, cur, nxt = curves[(i - 1) % k], curves[i], curves[(i + 1) % k]
        pr = sys.proj(cur, prev_c, nxt)
        threshold = 2 * sys.M + 2 + pr
        e = w.syllables[i]
        conds.append(
            ConditionVerdict(
                f"|exponent of {cur}| = {abs(e.exponent)} > "
                f"2M + 2 + proj({cur}; {prev_c}, {nxt}) = {threshold}",
                abs(e.exponent) > threshold,
                str(e) if abs(e.exponent) <= threshold else None,
            )
        )
    return _interval_result(THEOREM_CURVE_CYCLE, conds, total - 2 * k, total)


# ---------------------------------------------------------------------------
# alternating blocks on two multicurves: two-sided bound


def bounds_two_multicurve(word: TwistWord, sys: CurveSystem, A: str, B: str) -> BoundResult:
    """Bounds 2kl - 4k <= length <= 2kl for 2k alternating A/B blocks.

    Conditions: dist(A, B) = l >= 3, and every block contains one twist with
    |exponent| > 2M + 3.
    """
    w = normalize(word)
    if not w.syllables:
        return identity_result()
    partition = {c: A for c in sys.multicurve(A)}
    for c in sys.multicurve(B):
        partition[c] = B
    try:
        blocks = block_decompose(w, partition)
    except UnknownCurve as exc:
        raise WrongShape(str(exc)) from None
    if len(blocks) % 2 != 0:
        raise WrongShape(
            f"need an even number of alternating {A}/{B} blocks, got {len(blocks)}"
        )
    k = len(blocks) // 2
    l = dist_multicurve(sys, A, B)
    threshold = 2 * sys.M + 3
    conds = [
        ConditionVerdict(
            f"dist({A}, {B}) = {l} >= 3 (filling multicurves)",
            l >= 3,
            None if l >= 3 else f"dist({A}, {B}) = {l}",
        )
    ]
    for idx in range(len(blocks)):
        big = max(blocks.syllables_of(idx), key=lambda s: abs(s.exponent))
        passed = abs(big.exponent) > threshold
        conds.append(
            ConditionVerdict(
                f"block {idx + 1} ({blocks.ids[idx]}) has a twist with "
                f"|exponent| > 2M + 3 = {threshold}",
                passed,
                None if passed else f"largest is {big}",
            )
        )
    return _interval_result(THEOREM_TWO_MULTICURVE, conds, 2 * k * l - 4 * k, 2 * k * l)


# ---------------------------------------------------------------------------
# cycle of multicurve blocks: two-sided bound


def bounds_multicurve_cycle(word: TwistWord, sys: CurveSystem, cycle) -> BoundResult:
    """Bounds sum(dist) - 2n <= length <= sum(dist) for blocks on a cycle.

    ``cycle`` lists the multicurve names C1..Cn the blocks must follow in
    order; conditions are cyclic consecutive distances >= 3 and per block
    some twist T_g^t with |t| > 2M + 3 + proj(g; previous, next).
    """
    w = normalize(word)
    if not w.syllables:
        return identity_result()
    cycle = list(cycle)
    n = len(cycle)
    if n < 2:
        raise WrongShape("a multicurve cycle needs at least two blocks")
    partition = {}
    for name in cycle:
        for c in sys.multicurve(name):
            partition[c] = name
    try:
        blocks = block_decompose(w, partition)
    except UnknownCurve as exc:
        raise WrongShape(str(exc)) from None
    if blocks.ids != cycle:
        raise WrongShape(f"block sequence {blocks.ids} does not follow the cycle {cycle}")
    conds = []
    total = 0
    for i in range(n):
        cur, nxt = cycle[i], cycle[(i + 1) % n]
        d = dist_multicurve(sys, cur, nxt)
        total += d
        conds.append(
            ConditionVerdict(
                f"dist({cur}, {nxt}) = {d} >= 3",
                d >= 3,
                None if d >= 3 else f"dist({cur}, {nxt}) = {d}",
            )
        )
    for i in range(n):
        prev_mc, nxt_mc = cycle[(i - 1) % n], cycle[(i + 1) % n]
        missing: MissingProjection | None = None
        found: Syllable | None = None
        best: tuple[int, Syllable] | None = None
        threshold_seen = 2 * sys.M + 3
        for s in blocks.syllables_of(i):
            try:
                pr = proj_multicurve(sys, s.curve, prev_mc, nxt_mc)
            except MissingProjection as exc:
                missing = exc
                continue
            threshold = 2 * sys.M + 3 + pr
            margin = abs(s.exponent) - threshold
            if best is None or margin > best[0]:
                best = (margin, s)
                threshold_seen = threshold
            if margin > 0:
                found = s
                break
        if found is not None:
            conds.append(
                ConditionVerdict(
                    f"block {i + 1} ({cycle[i]}) has {found} with |exponent| > "
                    f"2M + 3 + proj({found.curve}; {prev_mc}, {nxt_mc}) = {threshold_seen}",
                    True,
                )
            )
        elif missing is not None:
            raise missing
        else:
            assert best is not None
            conds.append(
                ConditionVerdict(
                    f"block {i + 1} ({cycle[i]}) needs a twist with |exponent| > "
                    f"2M + 3 + proj(curve; {prev_mc}, {nxt_mc}); best margin {best[0]}",
                    False,
                    f"largest-margin syllable is {best[1]}",
                )
            )
    return _interval_result(THEOREM_MULTICURVE_CYCLE, conds, total - 2 * n, total)


# ---------------------------------------------------------------------------
# positive/negative twist certificate (no length bound, positivity only)


def penner_certificate(word: TwistWord, sys: CurveSystem, A: str, B: str) -> BoundResult:
    """Pseudo-Anosov certificate for positive-A / negative-B words.

    The filling hypothesis is certified through dist(A, B) >= 3, which is
    sufficient (though not necessary) for the two families to fill.  The
    certificate carries no length bound: lower 0, upper unbounded.
    """
    w = normalize(word)
    if not w.syllables:
        return identity_result()
    a_curves, b_curves = sys.multicurve(A), sys.multicurve(B)
    try:
        shape = is_penner_word(w, a_curves, b_curves)
    except UnknownCurve as exc:
        raise WrongShape(str(exc)) from None
    witness = None
    if not shape:
        used = {s.curve for s in w}
        bad = next(
            (s for s in w if (s.curve in a_curves) != (s.exponent > 0)),
            None,
        )
        unused = sorted((set(a_curves) | set(b_curves)) - used)
        witness = str(bad) if bad is not None else f"unused curves: {unused}"
    conds = [
        ConditionVerdict(
            f"positive twists on {A}, negative twists on {B}, every curve used",
            shape,
            witness,
        )
    ]
    l = dist_multicurve(sys, A, B)
    conds.append(
        ConditionVerdict(
            f"dist({A}, {B}) = {l} >= 3 (filling certificate)",
            l >= 3,
            None if l >= 3 else f"dist({A}, {B}) = {l}",
        )
    )
    ok = _ok(conds)
    return BoundResult(
        THEOREM_PENNER, tuple(conds), 0, None, None, True if ok else None
    )


# ---------------------------------------------------------------------------
# dispatcher


def _skip_note(theorem: str, exc: Exception) -> ConditionVerdict:
    return ConditionVerdict(
        f"[{theorem}] not applicable", False, f"{type(exc).__name__}: {exc}"
    )


def best_bound(word: TwistWord, sys: CurveSystem) -> BoundResult:
    """Try every theorem shape and return the tightest verified interval.

    Shapes are tried in the order exact-two-filling, curve cycle, two
    multicurves (every covering pair), multicurve cycle (the word's own
    block sequence), then the positivity certificate.  If nothing verifies,
    the result carries theorem "None" with every collected verdict and an
    unknown pseudo-Anosov status.
    """
    w = normalize(word)
    if not w.syllables:
        return identity_result()
    data_errors = (WrongShape, MissingDistance, MissingProjection, UnknownCurve)
    attempts: list[BoundResult] = []
    notes: list[ConditionVerdict] = []

    try:
        attempts.append(exact_two_filling(w, sys))
    except data_errors as exc:
        notes.append(_skip_note(THEOREM_EXACT_TWO_FILLING, exc))
    try:
        attempts.append(bounds_curve_cycle(w, sys))
    except data_errors as exc:
        notes.append(_skip_note(THEOREM_CURVE_CYCLE, exc))

    used = {s.curve for s in w}
    names = list(sys.multicurves)
    for i, A in enumerate(names):
        for B in names[i + 1 :]:
            if used <= set(sys.multicurve(A)) | set(sys.multicurve(B)):
                try:
                    attempts.append(bounds_two_multicurve(w, sys, A, B))
                except data_errors as exc:
                    notes.append(_skip_note(THEOREM_TWO_MULTICURVE, exc))

    full_partition = {c: name for name in names for c in sys.multicurve(name)}
    if used <= set(full_partition):
        try:
            ids = block_decompose(w, full_partition).ids
            if len(ids) >= 2:
                attempts.append(bounds_multicurve_cycle(w, sys, ids))
        except data_errors as exc:
            notes.append(_skip_note(THEOREM_MULTICURVE_CYCLE, exc))

    for A in names:
        for B in names:
            if A == B or not used <= set(sys.multicurve(A)) | set(sys.multicurve(B)):
                continue
            try:
                res = penner_certificate(w, sys, A, B)
            except data_errors as exc:
                notes.append(_skip_note(THEOREM_PENNER, exc))
                continue
            if res.conditions[0].passed:
                attempts.append(res)

    verified = [r for r in attempts if r.verified]
    if verified:
        infinite = Fraction(10**30)  # wider than any finite certificate
        return min(
            verified,
            key=lambda r: Fraction(r.width) if r.width is not None else infinite,
        )
    merged: list[ConditionVerdict] = []
    for r in attempts:
        for c in r.conditions:
            merged.append(
                ConditionVerdict(f"[{r.theorem}] {c.description}", c.passed, c.witness)
            )
    merged.extend(notes)
    if not merged:
        merged.append(
            ConditionVerdict(
                "no theorem shape matches this word", False, f"word: {w}"
            )
        )
    return BoundResult(THEOREM_NONE, tuple(merged), 0, None, None, None)
