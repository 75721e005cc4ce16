"""Theorem catalog: recipe tables, construction builders, verification.

Each builder assembles the same ingredients: a base triplet of linear
forms, channel congruences on m (the residue tables carry their audit
tags), planted prime powers per form, zero-claims for primes the class
keeps out of a form entirely, and the two-term relations that pair the
forms. The generic machinery then CRT-merges the congruences, divides
out the planted parts, predicts both sides of every pair, and fixes the
coprimality cutoff C as the largest prime any fixed part contains.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .arith import Factorization, ResidueClass, crt_solve, factorize, next_prime
from .construction import AdjoinRecipe, AdjoinedSystem, Plant, adjoin_factors, guaranteed_valuation
from .errors import CaseUnavailable, InternalCheckFailed, OutOfDomain
from .forms import (
    FormSystem,
    LinearForm,
    Relation,
    check_admissible,
    find_relation,
    is_reduced,
)
from .twins import check_hypothesis_t, first_strong_pair

THEOREM_IDS = (
    "T1",
    "T2",
    "T3",
    "T123",
    "T4",
    "T5",
    "T6",
    "T8a",
    "T9a",
    "T10a",
    "T11a",
    "T12a",
    "T13a",
)

STATISTICS = ("omega", "big_omega", "d", "pattern")


@dataclass(frozen=True)
class TheoremInfo:
    id: str
    statistic: str
    summary: str
    domain: str
    takes_n: bool
    takes_A: bool
    targets: tuple[str, ...] = ()


@dataclass(frozen=True)
class Claim:
    """What both members of every produced pair satisfy."""

    statistic: str
    value: int | tuple[int, ...]
    shift: int | None  # None: pair-dependent (see each prediction)

    def __post_init__(self):
        if self.statistic not in STATISTICS:
            raise ValueError(f"unknown statistic {self.statistic!r}")


@dataclass(frozen=True)
class SidePrediction:
    """Forecast for one side of a pair at any qualifying hit."""

    form: int  # 0-based index into the base system
    multiplier: int
    fixed: Factorization  # multiplier times the form's divided-out part
    omega: int
    big_omega: int
    d: int
    pattern: tuple[int, ...]

    def stat(self, statistic: str):
        if statistic == "pattern":
            return self.pattern
        return getattr(self, {"omega": "omega", "big_omega": "big_omega", "d": "d"}[statistic])


@dataclass(frozen=True)
class PairPrediction:
    relation: Relation
    shift: int  # |relation.shift|
    low: SidePrediction  # the x side
    high: SidePrediction  # the x + shift side


@dataclass(frozen=True)
class ProfileClaim:
    """Guaranteed valuation of prime p on a base form over the class.

    exact=True: every member has valuation exactly v (v=0 means the class
    keeps p out of the form entirely). exact=None: only the minimum v is
    claimed (non-exact plants).
    """

    form: int
    p: int
    v: int
    exact: bool | None


@dataclass(frozen=True)
class Construction:
    theorem: str
    n: int | None
    A: int | None
    target: str | None
    case: str | None
    base: FormSystem
    recipe: AdjoinRecipe
    adjoined: AdjoinedSystem
    relations: tuple[Relation, ...]
    C: int
    claim: Claim
    predictions: tuple[PairPrediction, ...]
    profile_claims: tuple[ProfileClaim, ...]
    tags: tuple[str, ...]
    unproven_sketch: bool = False

    @property
    def constraint(self) -> ResidueClass:
        return self.adjoined.constraint


@dataclass(frozen=True)
class Stage2Input:
    """A stage-1 simultaneous E2 hit, packaged for the stage-2 builders.

    q is the anchor value of the pair (q1*q2), partner the other one
    (q + 6/14/8 = q3*q4); k ties q to the case's multiplier family.
    """

    case: int
    q: int
    k: int
    q_factors: tuple[int, int]
    partner: int
    partner_factors: tuple[int, int]


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[tuple[str, bool, str], ...]  # (name, passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


_STAGE1_FORMS = FormSystem((LinearForm(672, 41), LinearForm(672, 47), LinearForm(672, 55)))
_STAGE2_GAPS = {1: 6, 2: 14, 3: 8}
_STAGE2_PAIRS = {1: (0, 1), 2: (0, 2), 3: (1, 2)}


def stage1_system() -> FormSystem:
    """The fixed triplet whose simultaneous E2 pairs feed build_stage2."""
    return _STAGE1_FORMS


def stage1_cutoff(n: int) -> int:
    """Coprimality cutoff for the stage-1 search: largest prime in 13n."""
    if n < 1:
        raise OutOfDomain("n must be positive")
    return max(13, max(factorize(n).primes(), default=2))


def stage2_case_for_pair(pair: tuple[int, int]) -> int:
    for case, indices in _STAGE2_PAIRS.items():
        if tuple(pair) == indices:
            return case
    raise ValueError(f"no stage-2 case for pair {pair}")


def make_stage2_input(case: int, q: int, n: int) -> Stage2Input:
    """Validate and package a (synthetic or searched) stage-1 value q."""
    if case not in (1, 2, 3):
        raise OutOfDomain(f"case must be 1, 2 or 3, got {case}")
    if n < 1 or n % 2 == 0:
        raise OutOfDomain(f"stage-2 shifts are odd, got n={n}")
    gap = _STAGE2_GAPS[case]
    if (q + 1) % gap:
        raise OutOfDomain(f"case {case} needs q = {gap}k - 1, got q={q}")
    k = (q + 1) // gap
    if case in (1, 2) and k % 4 != 3:
        raise OutOfDomain(f"case {case} needs k = 3 (mod 4), got k={k}")
    if case == 3 and k % 4 != 2:
        raise OutOfDomain(f"case 3 needs k = 2 (mod 4), got k={k}")
    partner = q + gap
    cutoff = stage1_cutoff(n)
    fq = factorize(q)
    fp = factorize(partner)
    for name, f in (("q", fq), ("partner", fp)):
        if f.pattern() != (1, 1):
            raise OutOfDomain(f"{name} must be a product of two distinct primes, got {f.pairs}")
        if f.pairs[0][0] <= cutoff:
            raise OutOfDomain(f"{name} has a prime factor <= C={cutoff}")
    return Stage2Input(case, q, k, fq.primes(), partner, fp.primes())


# ---------------------------------------------------------------------------
# assembly machinery


def _fresh_primes(count: int, involved: set[int]) -> list[int]:
    """count smallest primes outside involved, ascending; reserves them."""
    out: list[int] = []
    p = 2
    while len(out) < count:
        if p not in involved:
            out.append(p)
            involved.add(p)
        p = next_prime(p)
    return out


class _PrimePool:
    """Hands out plant primes: a preferred prime when nothing already uses
    it, otherwise the smallest prime clear of every reservation."""

    def __init__(self, used: set[int], preferred: set[int]):
        self.used = set(used)
        self.reserved = self.used | set(preferred)

    def pick(self, preferred: int | None) -> int:
        if preferred is not None and preferred not in self.used:
            self.used.add(preferred)
            self.reserved.add(preferred)
            return preferred
        p = _fresh_primes(1, self.reserved)[0]
        self.used.add(p)
        return p

    def fresh(self, count: int) -> list[int]:
        out = _fresh_primes(count, self.reserved)
        self.used.update(out)
        return out


def _prime_set(x: int) -> set[int]:
    return set(factorize(x).primes()) if x > 1 else set()


def _side(form: int, multiplier: int, recipe: AdjoinRecipe) -> SidePrediction:
    fixed = factorize(multiplier) * recipe.divisor_factorization(form)
    pattern = tuple(sorted(fixed.pattern() + (1, 1), reverse=True))
    return SidePrediction(
        form=form,
        multiplier=multiplier,
        fixed=fixed,
        omega=fixed.omega + 2,
        big_omega=fixed.big_omega + 2,
        d=fixed.divisor_count * 4,
        pattern=pattern,
    )


def _assemble(
    *,
    theorem: str,
    base: FormSystem,
    channels: list[tuple[int, int, str]],  # (residue, modulus, tag)
    plants: list[list[Plant]],
    zero_claims: list[tuple[int, int]],  # (form, prime) kept out entirely
    relation_shifts: list[tuple[int, int, int]],  # (i, j, shift)
    claim: Claim,
    n: int | None,
    A: int | None,
    target: str | None,
    case: str | None,
    tags: tuple[str, ...],
    c_floor: int = 2,
    unproven_sketch: bool = False,
) -> Construction:
    pre = None
    if channels:
        pre = crt_solve([(r, mod) for r, mod, _ in channels])
    recipe = AdjoinRecipe(tuple(tuple(ps) for ps in plants), pre=pre)
    adjoined = adjoin_factors(base, recipe)
    relations = tuple(find_relation(base, i, j, s) for i, j, s in relation_shifts)
    predictions = []
    for rel in relations:
        lo_form, lo_c = rel.low_side()
        hi_form, hi_c = rel.high_side()
        predictions.append(
            PairPrediction(
                relation=rel,
                shift=abs(rel.shift),
                low=_side(lo_form, lo_c, recipe),
                high=_side(hi_form, hi_c, recipe),
            )
        )
    for pred in predictions:
        for sp in (pred.low, pred.high):
            got = sp.stat(claim.statistic)
            if got != claim.value:
                raise InternalCheckFailed(
                    f"{theorem}: form {sp.form + 1} side predicts "
                    f"{claim.statistic}={got}, claim says {claim.value}"
                )
    cutoff = c_floor
    for pred in predictions:
        for sp in (pred.low, pred.high):
            cutoff = max(cutoff, max(sp.fixed.primes(), default=2))
    profile_claims = [ProfileClaim(f, p, 0, True) for f, p in zero_claims]
    for fi, form_plants in enumerate(recipe.plants):
        for plant in form_plants:
            exact = True if plant.kind in ("exact", "implied") else None
            profile_claims.append(ProfileClaim(fi, plant.p, plant.exponent, exact))
    if adjoined.K.a > 2**62:
        warnings.warn(
            f"{theorem}: constraint modulus {adjoined.K.a} puts witnesses beyond the "
            "64-bit search range",
            stacklevel=3,
        )
    return Construction(
        theorem=theorem,
        n=n,
        A=A,
        target=target,
        case=case,
        base=base,
        recipe=recipe,
        adjoined=adjoined,
        relations=relations,
        C=cutoff,
        claim=claim,
        predictions=tuple(predictions),
        profile_claims=tuple(profile_claims),
        tags=tags,
        unproven_sketch=unproven_sketch,
    )


# ---------------------------------------------------------------------------
# theorem builders


def _require(cond: bool, msg: str):
    if not cond:
        raise OutOfDomain(msg)


def _build_t1(A: int) -> Construction:
    _require(A >= 4, f"T1 needs A >= 4, got {A}")
    base = FormSystem((LinearForm(4, 1), LinearForm(5, 1), LinearForm(6, 1)))
    if A == 4:
        plants = [[Plant(11, 1)], [], [Plant(7, 1)]]
        tags = ("54", "55", "57", "59")
    else:
        e = A - 4
        plants = [
            [Plant(11, 1), Plant(13, e)],
            [Plant(17, e)],
            [Plant(7, 1), Plant(19, e)],
        ]
        tags = ("54", "55")
    return _assemble(
        theorem="T1",
        base=base,
        channels=[],
        plants=plants,
        zero_claims=[],
        relation_shifts=[(0, 1, 1), (0, 2, 1), (1, 2, 1)],
        claim=Claim("big_omega", A, 1),
        n=1,
        A=A,
        target="big_omega",
        case=None,
        tags=tags,
    )


def _build_t2(A: int) -> Construction:
    _require(A >= 3, f"T2 needs A >= 3, got {A}")
    base = FormSystem((LinearForm(6, 1), LinearForm(8, 1), LinearForm(9, 1)))
    involved = {2, 3}
    plants = [[Plant(p, 1) for p in _fresh_primes(A - 3, involved)] for _ in range(3)]
    return _assemble(
        theorem="T2",
        base=base,
        channels=[],
        plants=plants,
        zero_claims=[],
        relation_shifts=[(0, 1, 1), (0, 2, 1), (1, 2, 1)],
        claim=Claim("omega", A, 1),
        n=1,
        A=A,
        target="omega",
        case=None,
        tags=("51", "52"),
    )


_T123_BASE = FormSystem((LinearForm(3, 2), LinearForm(4, 3), LinearForm(10, 7)))


def _build_t123() -> Construction:
    return _assemble(
        theorem="T123",
        base=_T123_BASE,
        channels=[],
        plants=[[Plant(5, 1)], [Plant(7, 2)], [Plant(11, 2)]],
        zero_claims=[],
        relation_shifts=[(0, 1, 1), (0, 2, 1), (1, 2, 1)],
        claim=Claim("pattern", (2, 1, 1, 1), 1),
        n=1,
        A=None,
        target="pattern",
        case=None,
        tags=(),
    )


def _build_t3(A: int) -> Construction:
    _require(A >= 24 and A % 24 == 0, f"T3 needs 24 | A, got {A}")
    B = A // 24
    involved = {2, 3, 5, 7, 11}
    extra = _fresh_primes(3, involved)  # 13, 17, 19
    plants = [[Plant(5, 1)], [Plant(7, 2)], [Plant(11, 2)]]
    if B > 1:
        for i in range(3):
            plants[i].append(Plant(extra[i], B - 1))
    return _assemble(
        theorem="T3",
        base=_T123_BASE,
        channels=[],
        plants=plants,
        zero_claims=[],
        relation_shifts=[(0, 1, 1), (0, 2, 1), (1, 2, 1)],
        claim=Claim("d", 24 * B, 1),
        n=1,
        A=A,
        target="d",
        case=None,
        tags=(),
    )


_T45_BASE = FormSystem((LinearForm(2, 1), LinearForm(12, 5), LinearForm(20, 9)))


def _build_t4(A: int) -> Construction:
    _require(A >= 4, f"T4 needs A >= 4, got {A}")
    involved = {2, 3, 5}
    counts = (A - 4, A - 3, A - 3)
    plants = [[Plant(p, 1) for p in _fresh_primes(c, involved)] for c in counts]
    return _assemble(
        theorem="T4",
        base=_T45_BASE,
        channels=[],
        plants=plants,
        zero_claims=[],
        relation_shifts=[(0, 1, 2), (0, 2, 2), (1, 2, 2)],
        claim=Claim("omega", A, 2),
        n=2,
        A=A,
        target="omega",
        case=None,
        tags=(),
    )


def _build_t5(A: int) -> Construction:
    _require(A >= 5, f"T5 needs A >= 5, got {A}")
    involved = {2, 3, 5}
    counts = (A - 5, A - 3, A - 3)
    plants = [[Plant(p, 1) for p in _fresh_primes(c, involved)] for c in counts]
    return _assemble(
        theorem="T5",
        base=_T45_BASE,
        channels=[],
        plants=plants,
        zero_claims=[],
        relation_shifts=[(0, 1, 2), (0, 2, 2), (1, 2, 2)],
        claim=Claim("big_omega", A, 2),
        n=2,
        A=A,
        target="big_omega",
        case=None,
        tags=(),
    )


def _build_t6() -> Construction:
    base = FormSystem((LinearForm(24, 1), LinearForm(36, 1), LinearForm(72, 1)))
    return _assemble(
        theorem="T6",
        base=base,
        channels=[],
        plants=[[], [], [Plant(5, 1)]],
        zero_claims=[],
        relation_shifts=[(0, 1, 1), (0, 2, 2), (1, 2, 1)],
        claim=Claim("big_omega", 3, None),
        n=None,
        A=3,
        target="big_omega",
        case=None,
        tags=("204",),
    )


_T8A_BASE_TAG = "141"


def _t8a_base(n: int) -> FormSystem:
    return FormSystem((LinearForm(2, n), LinearForm(3, n), LinearForm(5, 2 * n)))


def _t8a_channels(n: int) -> tuple[list[tuple[int, int, str]], tuple[int, int, int]]:
    """Residue table rows (tag 141c) and the exact valuations (a1, a2, a3)."""
    n2 = n // 2
    a1 = 1 if n % 4 == 0 else 2
    a2 = 1 if n % 3 == 0 else 0
    a3 = 1 if n % 5 == 0 else 0
    mod4 = 1 if n2 % 2 == 0 else n2 % 4
    if n % 3 == 0:
        n3 = n // 3
        mod3 = 1 if n3 % 3 != 2 else 2
    else:
        mod3 = 0
    if n % 5 == 0:
        n5 = n // 5
        mod5 = 1 if n5 % 5 != 2 else 2
    else:
        mod5 = 0
    channels = [
        (mod4, 4, "141c"),
        (mod3, 3, "141c"),
        (mod5, 5, "141c"),
    ]
    return channels, (a1, a2, a3)


def _t8a_naturals(n: int) -> tuple[list[list[Plant]], list[tuple[int, int]]]:
    """Implied plants for the fixed small primes plus exact-zero claims."""
    _, (a1, a2, a3) = _t8a_channels(n)
    naturals: list[list[Plant]] = [[Plant(2, a1, "implied")], [], []]
    zeros = [(0, 3), (0, 5), (1, 2), (1, 5), (2, 2), (2, 3)]
    if a2:
        naturals[1].append(Plant(3, 1, "implied"))
    else:
        zeros.append((1, 3))
    if a3:
        naturals[2].append(Plant(5, 1, "implied"))
    else:
        zeros.append((2, 5))
    return naturals, zeros


_T8A_RELATIONS = [(0, 1, None), (0, 2, None), (1, 2, None)]


def _build_t8a(n: int, *, theorem="T8a", target="pattern", A=None, extra=(0, 0, 0), claim=None, tags=("141", "141a", "141c", "145")) -> Construction:
    _require(n >= 2 and n % 2 == 0, f"{theorem} needs even n >= 2, got {n}")
    channels, (a1, a2, a3) = _t8a_channels(n)
    plants, zeros = _t8a_naturals(n)
    pool = _PrimePool({2, 3, 5} | _prime_set(n), {7, 11, 13, 17, 19})
    plants[0].append(Plant(pool.pick(19), 2 if a1 == 1 else 1))
    plants[1].append(Plant(pool.pick(7), 2))
    if not a2:
        plants[1].append(Plant(pool.pick(13), 1))
    plants[2].append(Plant(pool.pick(11), 2))
    if not a3:
        plants[2].append(Plant(pool.pick(17), 1))
    for i, count_or_exp in enumerate(extra):
        if isinstance(count_or_exp, tuple):
            p_exp = count_or_exp[0]
            if p_exp > 0:
                plants[i].append(Plant(pool.fresh(1)[0], p_exp))
        elif count_or_exp:
            plants[i].extend(Plant(p, 1) for p in pool.fresh(count_or_exp))
    return _assemble(
        theorem=theorem,
        base=_t8a_base(n),
        channels=channels,
        plants=plants,
        zero_claims=zeros,
        relation_shifts=[(0, 1, n), (0, 2, n), (1, 2, n)],
        claim=claim or Claim("pattern", (2, 1, 1, 1, 1), n),
        n=n,
        A=A,
        target=target,
        case=None,
        tags=tags,
    )


def _build_t9a(n: int, A: int, target: str) -> Construction:
    _require(n >= 2 and n % 2 == 0, f"T9a needs even n >= 2, got {n}")
    channels, (a1, a2, a3) = _t8a_channels(n)
    if target == "d":
        _require(A >= 48 and A % 48 == 0, f"T9a d-target needs 48 | A, got {A}")
        K = A // 48
        return _build_t8a(
            n,
            theorem="T9a",
            target="d",
            A=A,
            extra=((K - 1,), (K - 1,), (K - 1,)),
            claim=Claim("d", A, n),
            tags=("141", "141c", "145"),
        )
    plants, zeros = _t8a_naturals(n)
    if target == "big_omega":
        minimum = 4 if n % 4 == 0 else 5
        _require(A >= minimum, f"T9a Omega-target needs A >= {minimum} for n={n}, got {A}")
        counts = (A - 3 - a1, A - 3 - a2, A - 3 - a3)
    elif target == "omega":
        _require(A >= 4, f"T9a omega-target needs A >= 4, got {A}")
        counts = (A - 4, A - 3 - (1 if a2 else 0), A - 3 - (1 if a3 else 0))
    else:
        raise OutOfDomain(f"T9a target must be omega, big_omega or d, got {target}")
    involved = {2, 3, 5} | _prime_set(n)
    for i, c in enumerate(counts):
        plants[i].extend(Plant(p, 1) for p in _fresh_primes(c, involved))
    return _assemble(
        theorem="T9a",
        base=_t8a_base(n),
        channels=channels,
        plants=plants,
        zero_claims=zeros,
        relation_shifts=[(0, 1, n), (0, 2, n), (1, 2, n)],
        claim=Claim(target, A, n),
        n=n,
        A=A,
        target=target,
        case=None,
        tags=("141", "141c", "145"),
    )


def _case1_base(n: int) -> FormSystem:
    return FormSystem((LinearForm(2, n), LinearForm(3, n), LinearForm(5, 2 * n)))


def _case2_base(n: int, p: int) -> FormSystem:
    k = (p - 1) // 2
    return FormSystem(
        (LinearForm(2, n), LinearForm(p, k * n), LinearForm(p + 2, (k + 1) * n))
    )


def _residue_avoiding(modulus: int, excluded: set[int]) -> int:
    for c in range(1, modulus):
        if c % modulus not in excluded:
            return c
    raise InternalCheckFailed(f"no residue mod {modulus} avoids {excluded}")


def _twin_case_parts(n: int, p: int):
    """Channels, plants, zero-claims and case label for the shifted-pattern
    family at odd n, using twin pair (p, p+2)."""
    if p == 3:
        base = _case1_base(n)
        div3, div5 = n % 3 == 0, n % 5 == 0
        if not div3 and not div5:
            case = "1a"
            channels = [(0, 4, "402a"), ((6 + 5 * n) % 9, 9, "402b"), (0, 5, "402c")]
            naturals = [[], [], [Plant(2, 1, "implied"), Plant(3, 1, "implied")]]
            zeros = [(0, 2), (0, 3), (0, 5), (1, 2), (1, 3), (1, 5), (2, 5)]
            squares, square_forms, singles = (11, 13), (0, 1), {}
        elif not div3 and div5:
            case = "1b"
            n5 = n // 5
            c5 = 1 if (1 + 2 * n5) % 5 else 2
            channels = [(0, 4, "403a"), ((6 + 5 * n) % 9, 9, "403b"), (c5, 5, "403c")]
            naturals = [
                [],
                [],
                [Plant(2, 1, "implied"), Plant(3, 1, "implied"), Plant(5, 1, "implied")],
            ]
            zeros = [(0, 2), (0, 3), (0, 5), (1, 2), (1, 3), (1, 5)]
            squares, square_forms, singles = (11, 13), (0, 1), {0: 17, 1: 19}
        else:
            case = "1c"
            n3 = n // 3
            c3 = 1 if (1 + n3) % 3 else 2
            channels = [
                ((2 + n) % 4, 4, "404a"),
                ((10 + 8 * n) % 25, 25, "404b"),
                (c3, 3, "404c"),
            ]
            naturals = [
                [],
                [Plant(2, 1, "implied"), Plant(3, 1, "implied"), Plant(5, 1, "implied")],
                [],
            ]
            zeros = [(0, 2), (0, 3), (0, 5), (2, 2), (2, 3), (2, 5)]
            squares, square_forms, singles = (11, 13), (0, 2), {0: 17, 2: 19}
        base_forms, mults = base, (2, 3, 5)
    else:
        base_forms = _case2_base(n, p)
        k = (p - 1) // 2
        P2 = p + 2
        divp, divP2 = n % p == 0, n % P2 == 0
        if not divp and not divP2:
            case = "2a"
            channels = [
                (1, 3, "412"),
                ((2 + (k + 1) * n) % 4, 4, "412a"),
                (0, P2, "412c"),
            ]
            naturals = [[], [], [Plant(2, 1, "implied"), Plant(p, 1, "exact")]]
            zeros = [(0, 2), (0, 3), (0, p), (0, P2), (1, 2), (1, 3), (1, p), (1, P2), (2, 3), (2, P2)]
            squares, square_forms, singles = (None, None), (0, 1), {}
        elif not divp and divP2:
            case = "2b"
            n0 = n // P2
            cP2 = _residue_avoiding(P2, {0, (-(k + 1) * n0) % P2})
            channels = [
                (1, 3, "412"),
                ((2 + 3 * P2 * (k + 1) * n) % 4, 4, "413a"),
                ((-(k + 1) * n0 + p) % (p * p), p * p, "413b"),
                (cP2, P2, "413c"),
            ]
            naturals = [
                [],
                [],
                [Plant(2, 1, "implied"), Plant(p, 1, "implied"), Plant(P2, 1, "implied")],
            ]
            zeros = [(0, 2), (0, 3), (0, p), (0, P2), (1, 2), (1, 3), (1, p), (1, P2), (2, 3)]
            squares, square_forms, singles = (None, None), (0, 1), {0: None, 1: None}
        else:
            case = "2c"
            n0 = n // p
            cp = _residue_avoiding(p, {0, (-k * n0) % p})
            channels = [
                (1, 3, "412"),
                ((2 + 3 * p * k * n) % 4, 4, "414a"),
                ((-k * n0 + P2) % (P2 * P2), P2 * P2, "414b"),
                (cp, p, "414c"),
            ]
            naturals = [
                [],
                [Plant(2, 1, "implied"), Plant(p, 1, "implied"), Plant(P2, 1, "implied")],
                [],
            ]
            zeros = [(0, 2), (0, 3), (0, p), (0, P2), (2, 2), (2, 3), (2, p), (2, P2)]
            squares, square_forms, singles = (None, None), (0, 2), {0: None, 2: None}
        mults = (2, p, P2)
    return base_forms, case, channels, naturals, zeros, squares, square_forms, singles, mults


def _build_twin_pattern(
    n: int,
    p: int,
    *,
    theorem: str,
    extend: bool,
    A: int | None = None,
    target: str = "pattern",
    extra_each: int = 0,
    d_exponent: int = 0,
    claim: Claim | None = None,
    unproven_sketch: bool = False,
) -> Construction:
    (base, case, channels, plants, zeros, squares, square_forms, singles, mults) = _twin_case_parts(n, p)
    preferred_pool = {11, 13, 17, 19} if squares[0] is not None else set()
    pool = _PrimePool(set(mults) | {2, 3} | _prime_set(n), preferred_pool)
    tags = tuple(sorted({t for _, _, t in channels}))
    if case == "2a":
        tags += ("412b",)
    # squared plants on the two forms carrying them
    for idx, fi in enumerate(square_forms):
        plants[fi].append(Plant(pool.pick(squares[idx]), 2))
    # single plants where the subcase table adds them
    for fi, preferred in singles.items():
        plants[fi].append(Plant(pool.pick(preferred), 1))
    if extend:
        for fi in range(3):
            plants[fi].append(Plant(pool.fresh(1)[0], 1))
    for fi in range(3):
        if extra_each:
            plants[fi].extend(Plant(pr, 1) for pr in pool.fresh(extra_each))
        if d_exponent:
            plants[fi].append(Plant(pool.fresh(1)[0], d_exponent))
    if claim is None:
        short = case in ("1a", "2a") and not extend
        claim = Claim("pattern", (2, 1, 1, 1) if short else (2, 1, 1, 1, 1), n)
    return _assemble(
        theorem=theorem,
        base=base,
        channels=channels,
        plants=plants,
        zero_claims=zeros,
        relation_shifts=[(0, 1, n), (0, 2, n), (1, 2, n)],
        claim=claim,
        n=n,
        A=A,
        target=target,
        case=case,
        tags=tags + (("400", "401") if p == 3 else ("410", "411")),
        unproven_sketch=unproven_sketch,
    )


def _twin_anchor(theorem: str, n: int, twin_limit: int) -> int:
    """The twin pair the shifted-pattern family hangs on, or CaseUnavailable."""
    _require(n >= 1 and n % 2 == 1, f"{theorem} needs odd n >= 1, got {n}")
    report = check_hypothesis_t(n, twin_limit)
    if report.pair is None:
        raise CaseUnavailable(
            f"{theorem}: no twin pair with p(p+2) not dividing n={n} below {twin_limit}"
        )
    return report.pair.p


def _build_t10a(n: int, twin_limit: int) -> Construction:
    p = _twin_anchor("T10a", n, twin_limit)
    needs_extension = p == 3 and n % 3 != 0 and n % 5 != 0 or p > 3 and n % p != 0 and n % (p + 2) != 0
    return _build_twin_pattern(n, p, theorem="T10a", extend=needs_extension)


def _build_t13a(n: int, twin_limit: int) -> Construction:
    _require(n >= 1 and n % 2 == 1, f"T13a needs odd n >= 1, got {n}")
    if n % 3 and n % 5 == 0:
        raise CaseUnavailable(
            "T13a: for n divisible by 5 but not 3 no subcase leaves the mod-3 "
            "channel open; no {2,1,1,1} construction exists in this family"
        )
    if n % 3 and n % 5:
        p = 3
    else:
        # 3 | n here, so the first strong pair automatically has p > 3 and
        # the mod-3 channel of subcase 2a stays available.
        pair = first_strong_pair(n, twin_limit)
        if pair is None:
            raise CaseUnavailable(
                f"T13a: no twin pair with both members coprime to n={n} below {twin_limit}"
            )
        p = pair.p
    return _build_twin_pattern(n, p, theorem="T13a", extend=False)


def _build_t11a(n: int, A: int, target: str, twin_limit: int) -> Construction:
    p = _twin_anchor("T11a", n, twin_limit)
    extend = (p == 3 and n % 3 != 0 and n % 5 != 0) or (
        p > 3 and n % p != 0 and n % (p + 2) != 0
    )
    if target == "omega":
        _require(A >= 5, f"T11a omega-target needs A >= 5, got {A}")
        return _build_twin_pattern(
            n, p, theorem="T11a", extend=extend, A=A, target="omega",
            extra_each=A - 5, claim=Claim("omega", A, n),
        )
    if target == "d":
        _require(A >= 48 and A % 48 == 0, f"T11a d-target needs 48 | A, got {A}")
        B = A // 48
        return _build_twin_pattern(
            n, p, theorem="T11a", extend=extend, A=A, target="d",
            d_exponent=B - 1, claim=Claim("d", A, n),
        )
    if target == "big_omega":
        _require(A >= 6, f"T11a Omega-sketch needs A >= 6, got {A}")
        return _build_twin_pattern(
            n, p, theorem="T11a", extend=extend, A=A, target="big_omega",
            extra_each=A - 6, claim=Claim("big_omega", A, n), unproven_sketch=True,
        )
    raise OutOfDomain(f"T11a target must be omega, d or big_omega, got {target}")


def _build_t12a_omega_shift(n: int, A: int) -> Construction:
    """The uniform Omega construction on the {2m+n, 3m+n, 5m+2n} triplet."""
    _require(n >= 1 and n % 2 == 1, f"T12a needs odd n >= 1, got {n}")
    _require(A >= 5, f"T12a Omega-target needs A >= 5, got {A}")
    base = _case1_base(n)
    channels = [((n + 2) % 4, 4, "141c")]
    naturals: list[list[Plant]] = [[], [Plant(2, 1, "implied")], []]
    zeros = [(0, 2), (0, 3), (0, 5), (1, 5), (2, 2), (2, 3)]
    b = [0, 1, 0]
    if n % 3 == 0:
        n3 = n // 3
        c3 = _residue_avoiding(3, {0, (-n3) % 3})
        channels.append((c3, 3, "141c"))
        naturals[1].append(Plant(3, 1, "implied"))
        b[1] += 1
    else:
        channels.append((0, 3, "141c"))
        zeros.append((1, 3))
    if n % 5 == 0:
        n5 = n // 5
        c5 = _residue_avoiding(5, {0, (-2 * n5) % 5})
        channels.append((c5, 5, "141c"))
        naturals[2].append(Plant(5, 1, "implied"))
        b[2] += 1
    else:
        channels.append((0, 5, "141c"))
        zeros.append((2, 5))
    involved = {2, 3, 5} | _prime_set(n)
    for i in range(3):
        naturals[i].extend(Plant(pr, 1) for pr in _fresh_primes(A - 3 - b[i], involved))
    return _assemble(
        theorem="T12a",
        base=base,
        channels=channels,
        plants=naturals,
        zero_claims=zeros,
        relation_shifts=[(0, 1, n), (0, 2, n), (1, 2, n)],
        claim=Claim("big_omega", A, n),
        n=n,
        A=A,
        target="big_omega",
        case=None,
        tags=("141", "141a"),
    )


def build_stage2(case: int, q_input: Stage2Input, n: int, target: str) -> Construction:
    """Stage-2 construction from a stage-1 simultaneous E2 pair.

    Cases 1 and 2 give d=96 and omega=6 on both sides of every pair; case
    3 gives d=144 (d-target plants) or omega=6 (omega-target plants).
    """
    _require(n >= 1 and n % 2 == 1, f"stage 2 needs odd n >= 1, got {n}")
    _require(target in ("omega", "d"), f"stage-2 target must be omega or d, got {target}")
    if case != q_input.case:
        raise OutOfDomain(f"case {case} does not match q_input.case {q_input.case}")
    q, k = q_input.q, q_input.k
    q1, q2 = q_input.q_factors
    q3, q4 = q_input.partner_factors
    involved = {2, 3, 5, 7} | _prime_set(n) | {q1, q2, q3, q4}
    if case == 1:
        _require(n % 3 == 0, f"stage-2 case 1 needs 3 | n, got {n}")
        base = FormSystem(
            (LinearForm(6, n), LinearForm(q, k * n), LinearForm(q + 6, (k + 1) * n))
        )
        n3 = n // 3
        c3 = _residue_avoiding(3, {0, n3 % 3})
        channels = [(2, 4, "243a"), (c3, 3, "243b")]
        naturals: list[list[Plant]] = [[Plant(3, 1, "implied")], [], [Plant(2, 1, "implied")]]
        zeros = [(0, 2), (1, 2), (1, 3), (2, 3), (0, q1), (1, q1)]
        tag_plant = "243c"
    elif case == 2:
        _require(n % 7 == 0, f"stage-2 case 2 needs 7 | n, got {n}")
        base = FormSystem(
            (LinearForm(14, n), LinearForm(q, k * n), LinearForm(q + 14, (k + 1) * n))
        )
        n7 = n // 7
        c7 = _residue_avoiding(7, {0} | {c for c in range(7) if (2 * c + n7) % 7 == 0})
        channels = [(2, 4, "244a"), (c7, 7, "244b")]
        naturals = [[Plant(7, 1, "implied")], [], [Plant(2, 1, "implied")]]
        zeros = [(0, 2), (1, 2), (1, 7), (2, 7), (0, q1), (1, q1)]
        tag_plant = "244c"
    else:
        base = FormSystem(
            (LinearForm(8, n), LinearForm(q, k * n), LinearForm(q + 8, (k + 1) * n))
        )
        channels = [((4 + (k + 1) * n) % 8, 8, "245a")]
        naturals = [[], [], [Plant(2, 2, "implied")]]
        zeros = [(0, 2), (1, 2), (0, q1), (1, q1)]
        tag_plant = "245b"
    plants = naturals
    if case in (1, 2):
        plants[0].append(Plant(_fresh_primes(1, involved)[0], 2))
        plants[1].append(Plant(_fresh_primes(1, involved)[0], 2))
        plants[1].append(Plant(_fresh_primes(1, involved)[0], 1))
        plants[2].append(Plant(_fresh_primes(1, involved)[0], 1))
        plants[2].append(Plant(q1, 1, "exact"))
        claim = Claim("d", 96, n) if target == "d" else Claim("omega", 6, n)
    elif target == "d":
        plants[0].append(Plant(_fresh_primes(1, involved)[0], 2))
        plants[0].append(Plant(_fresh_primes(1, involved)[0], 2))
        plants[1].append(Plant(_fresh_primes(1, involved)[0], 2))
        plants[1].append(Plant(_fresh_primes(1, involved)[0], 2))
        plants[2].append(Plant(q1, 1, "exact"))
        plants[2].append(Plant(q2, 2, "exact"))
        claim = Claim("d", 144, n)
    else:
        plants[0].append(Plant(_fresh_primes(1, involved)[0], 1))
        plants[1].append(Plant(_fresh_primes(1, involved)[0], 1))
        plants[1].append(Plant(q3, 1, "exact"))
        plants[2].append(Plant(q1, 1, "exact"))
        plants[2].append(Plant(q2, 1, "exact"))
        for fi in range(3):
            plants[fi].append(Plant(_fresh_primes(1, involved)[0], 1))
        claim = Claim("omega", 6, n)
    return _assemble(
        theorem="T12a",
        base=base,
        channels=channels,
        plants=plants,
        zero_claims=zeros,
        relation_shifts=[(0, 1, n), (0, 2, n), (1, 2, n)],
        claim=claim,
        n=n,
        A=claim.value if isinstance(claim.value, int) else None,
        target=target,
        case=f"stage2-{case}",
        tags=tuple(sorted({t for _, _, t in channels} | {tag_plant, "242"})),
        c_floor=stage1_cutoff(n),
    )


def list_theorems() -> tuple[TheoremInfo, ...]:
    return (
        TheoremInfo("T1", "big_omega", "Omega(x) = Omega(x+1) = A", "n=1; A>=4", False, True),
        TheoremInfo("T2", "omega", "omega(x) = omega(x+1) = A", "n=1; A>=3", False, True),
        TheoremInfo("T3", "d", "d(x) = d(x+1) = A", "n=1; A=24B", False, True),
        TheoremInfo(
            "T123", "pattern", "x and x+1 both with exponent pattern {2,1,1,1}", "n=1", False, False
        ),
        TheoremInfo("T4", "omega", "omega(x) = omega(x+2) = A", "n=2; A>=4", False, True),
        TheoremInfo("T5", "big_omega", "Omega(x) = Omega(x+2) = A", "n=2; A>=5", False, True),
        TheoremInfo(
            "T6", "big_omega", "Omega(x) = Omega(x+s) = 3 with pair-dependent s <= 2", "fixed", False, False
        ),
        TheoremInfo(
            "T8a", "pattern", "x, x+n both with pattern {2,1,1,1,1}", "n even, n>=2", True, False
        ),
        TheoremInfo(
            "T9a",
            "omega",
            "omega/Omega/d agree at shift n",
            "n even; omega: A>=4; big_omega: A>=4 if 4|n else A>=5; d: 48|A",
            True,
            True,
            ("omega", "big_omega", "d"),
        ),
        TheoremInfo(
            "T10a",
            "pattern",
            "x, x+n both with pattern {2,1,1,1,1}",
            "n odd with some twin product p(p+2) not dividing n",
            True,
            False,
        ),
        TheoremInfo(
            "T11a",
            "omega",
            "omega/d agree at shift n (Omega behind unproven-sketch flag)",
            "n odd (needs a qualifying twin pair); omega: A>=5; d: 48|A; big_omega: A>=6 sketch",
            True,
            True,
            ("omega", "d", "big_omega"),
        ),
        TheoremInfo(
            "T12a",
            "big_omega",
            "Omega(x) = Omega(x+n) = A for every odd n; omega/d via stage 2",
            "n odd; big_omega: A>=5; omega/d need a stage-1 E2 pair (targets 6 / 96|144)",
            True,
            True,
            ("big_omega", "omega", "d"),
        ),
        TheoremInfo(
            "T13a",
            "pattern",
            "x, x+n both with pattern {2,1,1,1}",
            "n odd with a twin pair coprime to n; unavailable when gcd(n,15)=5",
            True,
            False,
        ),
    )


def theorem_info(theorem: str) -> TheoremInfo:
    for info in list_theorems():
        if info.id == theorem:
            return info
    raise OutOfDomain(f"unknown theorem {theorem!r}; known: {', '.join(THEOREM_IDS)}")


def build_construction(
    theorem: str,
    n: int | None = None,
    A: int | None = None,
    target: str | None = None,
    twin_limit: int = 10**6,
    stage2: Stage2Input | None = None,
) -> Construction:
    """Build the named theorem's construction at the given parameters."""
    info = theorem_info(theorem)
    if info.takes_n:
        if n is None:
            raise OutOfDomain(f"{theorem} needs n")
        if n < 1:
            raise OutOfDomain(f"n must be positive, got {n}")
    if theorem == "T1":
        return _build_t1(_need_A(theorem, A))
    if theorem == "T2":
        return _build_t2(_need_A(theorem, A))
    if theorem == "T3":
        return _build_t3(_need_A(theorem, A))
    if theorem == "T123":
        return _build_t123()
    if theorem == "T4":
        return _build_t4(_need_A(theorem, A))
    if theorem == "T5":
        return _build_t5(_need_A(theorem, A))
    if theorem == "T6":
        return _build_t6()
    if theorem == "T8a":
        return _build_t8a(n)
    if theorem == "T9a":
        return _build_t9a(n, _need_A(theorem, A), target or "big_omega")
    if theorem == "T10a":
        return _build_t10a(n, twin_limit)
    if theorem == "T11a":
        return _build_t11a(n, _need_A(theorem, A), target or "omega", twin_limit)
    if theorem == "T12a":
        tgt = target or "big_omega"
        if tgt == "big_omega":
            return _build_t12a_omega_shift(n, _need_A(theorem, A))
        if stage2 is None:
            raise CaseUnavailable(
                "T12a omega/d targets need a stage-1 E2 pair (build_stage2 or --bound on the CLI)"
            )
        return build_stage2(stage2.case, stage2, n, tgt)
    if theorem == "T13a":
        return _build_t13a(n, twin_limit)
    raise OutOfDomain(f"unknown theorem {theorem!r}")


def _need_A(theorem: str, A: int | None) -> int:
    if A is None:
        raise OutOfDomain(f"{theorem} needs A")
    return A


# ---------------------------------------------------------------------------
# verification


def _check_prime_set(c: Construction) -> list[int]:
    """Every prime that could be a fixed divisor or carries a claim."""
    primes: set[int] = set()
    for f in c.base.forms:
        primes |= _prime_set(f.a)
    if c.recipe.pre is not None:
        primes |= _prime_set(c.recipe.pre.modulus)
    for form_plants in c.recipe.plants:
        for plant in form_plants:
            primes.add(plant.p)
    for claim in c.profile_claims:
        primes.add(claim.p)
    return sorted(primes)


def verify_construction(c: Construction, samples: int = 100) -> VerificationReport:
    """Recheck everything a Construction asserts about itself."""
    checks: list[tuple[str, bool, str]] = []

    ok = is_reduced(c.adjoined.reduced)
    checks.append(("reduced", ok, "" if ok else "reduced system has a common divisor"))

    cert = check_admissible(c.adjoined.reduced)
    checks.append(
        ("admissible", cert.admissible, "" if cert.admissible else f"fails at p={cert.failing_prime}")
    )

    detail = ""
    ok = len(c.relations) == len(c.predictions) > 0
    covered = set()
    for rel, pred in zip(c.relations, c.predictions):
        if not rel.holds_for(c.base):
            ok, detail = False, f"relation {rel} is not an identity"
            break
        covered.add((min(rel.i, rel.j), max(rel.i, rel.j)))
        if c.claim.shift is not None and abs(rel.shift) != c.claim.shift:
            ok, detail = False, f"relation shift {rel.shift} != claim shift {c.claim.shift}"
            break
        for m in c.constraint.members(samples):
            fi, fj = c.base[rel.i], c.base[rel.j]
            if rel.ci * fi(m) - rel.cj * fj(m) != rel.shift:
                ok, detail = False, f"relation {rel} fails at m={m}"
                break
        lo_form, lo_c = rel.low_side()
        if (pred.low.form, pred.low.multiplier) != (lo_form, lo_c):
            ok, detail = False, "prediction orientation disagrees with relation"
            break
    if ok and len(c.base) == 3 and covered != {(0, 1), (0, 2), (1, 2)}:
        ok, detail = False, f"pairs covered: {sorted(covered)}"
    checks.append(("relations", ok, detail))

    ok, detail = True, ""
    expected: dict[tuple[int, int], tuple[int, bool | None]] = {}
    for claim in c.profile_claims:
        expected[(claim.form, claim.p)] = (claim.v, claim.exact)
    for fi in range(len(c.base)):
        for p in _check_prime_set(c):
            want_v, want_exact = expected.get((fi, p), (0, None))
            report = guaranteed_valuation(c.base[fi], c.constraint, p)
            if report.v != want_v or (want_exact is not None and report.exact != want_exact):
                ok = False
                detail = (
                    f"form {fi + 1}, p={p}: guaranteed v={report.v} exact={report.exact}, "
                    f"claimed v={want_v} exact={want_exact}"
                )
                break
        if not ok:
            break
    checks.append(("profile", ok, detail))

    ok, detail = True, ""
    for pred in c.predictions:
        for side in (pred.low, pred.high):
            recomputed = factorize(side.multiplier) * c.recipe.divisor_factorization(side.form)
            if recomputed != side.fixed:
                ok, detail = False, f"fixed part of form {side.form + 1} is inconsistent"
                break
            stats = {
                "omega": recomputed.omega + 2,
                "big_omega": recomputed.big_omega + 2,
                "d": recomputed.divisor_count * 4,
                "pattern": tuple(sorted(recomputed.pattern() + (1, 1), reverse=True)),
            }
            if stats[c.claim.statistic] != c.claim.value:
                ok, detail = (
                    False,
                    f"form {side.form + 1} side gives {c.claim.statistic}="
                    f"{stats[c.claim.statistic]}, claim {c.claim.value}",
                )
                break
            if max(recomputed.primes(), default=2) > c.C:
                ok, detail = False, f"fixed prime above C={c.C} on form {side.form + 1}"
                break
        if not ok:
            break
    checks.append(("predictions", ok, detail))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# serialization


def claim_to_dict(claim: Claim) -> dict:
    value = list(claim.value) if isinstance(claim.value, tuple) else claim.value
    return {"statistic": claim.statistic, "value": value, "shift": claim.shift}


def construction_to_dict(c: Construction, report: VerificationReport | None = None) -> dict:
    doc = {
        "schema": "parity-forge/1",
        "kind": "construction",
        "theorem": c.theorem,
        "params": {"n": c.n, "A": c.A, "target": c.target},
        "case": c.case,
        "claim": claim_to_dict(c.claim),
        "base_forms": [[f.a, f.b] for f in c.base.forms],
        "constraint": {"modulus": c.constraint.modulus, "residue": c.constraint.residue},
        "recipe": {
            "pre": (
                None
                if c.recipe.pre is None
                else {"modulus": c.recipe.pre.modulus, "residue": c.recipe.pre.residue}
            ),
            "plants": [
                [{"p": pl.p, "e": pl.exponent, "kind": pl.kind} for pl in form_plants]
                for form_plants in c.recipe.plants
            ],
        },
        "substitution": [c.adjoined.K.a, c.adjoined.K.b],
        "reduced_forms": [[f.a, f.b] for f in c.adjoined.reduced.forms],
        "divisors": [c.recipe.divisor(i) for i in range(len(c.base))],
        "relations": [
            {"i": r.i + 1, "j": r.j + 1, "ci": r.ci, "cj": r.cj, "shift": r.shift}
            for r in c.relations
        ],
        "C": c.C,
        "predictions": [
            {
                "pair": [p.relation.i + 1, p.relation.j + 1],
                "shift": p.shift,
                "x": _side_to_dict(p.low),
                "x_plus_n": _side_to_dict(p.high),
            }
            for p in c.predictions
        ],
        "profile": [
            {"form": pc.form + 1, "p": pc.p, "v": pc.v, "exact": pc.exact}
            for pc in c.profile_claims
        ],
        "tags": list(c.tags),
        "unproven_sketch": c.unproven_sketch,
    }
    if report is not None:
        doc["checks"] = {name: passed for name, passed, _ in report.checks}
    return doc


def _side_to_dict(side: SidePrediction) -> dict:
    return {
        "form": side.form + 1,
        "multiplier": side.multiplier,
        "fixed": [list(pair) for pair in side.fixed.pairs],
        "omega": side.omega,
        "big_omega": side.big_omega,
        "d": side.d,
        "pattern": list(side.pattern),
    }
