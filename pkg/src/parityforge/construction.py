"""Adjoining prime-power factors to a form system via congruence classes.

A recipe plants prime powers on individual forms. Each plant kind turns
into a congruence on m:

  divides  L_i(m) = 0       (mod p^e)      guaranteed p^e | L_i, maybe more
  exact    L_i(m) = p^e     (mod p^(e+1))  guaranteed p^e exactly divides L_i
  implied  no new congruence; the pre-constraint already forces p^e || L_i

All congruences plus the optional pre-constraint are merged in a single
CRT pass; the substitution K(l) = M*l + k then turns each L_i into a form
divisible by its planted product, and dividing that out yields the
reduced system the searches run on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import (
    Factorization,
    ResidueClass,
    crt_solve,
    sieve_primes,
    solve_linear_congruence,
    valuation,
)
from .errors import InternalCheckFailed
from .forms import FormSystem, LinearForm, divide_form, is_reduced

_ENUM_LIMIT = 1 << 20
_V_MAX = 40


@dataclass(frozen=True)
class Plant:
    p: int
    exponent: int
    kind: str = "divides"  # divides | exact | implied

    def __post_init__(self):
        if self.p < 2 or self.exponent < 1:
            raise ValueError(f"bad plant ({self.p}, {self.exponent})")
        if self.kind not in ("divides", "exact", "implied"):
            raise ValueError(f"bad plant kind {self.kind!r}")

    @property
    def power(self) -> int:
        return self.p**self.exponent


@dataclass(frozen=True)
class AdjoinRecipe:
    """Per-form plants plus an optional residue pre-constraint on m."""

    plants: tuple[tuple[Plant, ...], ...]
    pre: ResidueClass | None = None

    def divisor(self, i: int) -> int:
        d = 1
        for plant in self.plants[i]:
            d *= plant.power
        return d

    def divisor_factorization(self, i: int) -> Factorization:
        merged: dict[int, int] = {}
        for plant in self.plants[i]:
            merged[plant.p] = merged.get(plant.p, 0) + plant.exponent
        return Factorization(tuple(sorted(merged.items())))


@dataclass(frozen=True)
class AdjoinedSystem:
    """K(l) = M*l + k and the reduced forms K_i = L_i(K(l)) / r_i."""

    K: LinearForm
    reduced: FormSystem
    planted: tuple[Factorization, ...]

    @property
    def constraint(self) -> ResidueClass:
        return ResidueClass(self.K.b, self.K.a)


def adjoin_factors(s: FormSystem, recipe: AdjoinRecipe) -> AdjoinedSystem:
    """Build the substitution and reduced system for a planting recipe.

    Raises Incompatible when the congruences conflict, and
    InternalCheckFailed when the divided system is not reduced (an
    unplanned fixed divisor survived, so the recipe is inconsistent).
    """
    if len(recipe.plants) != len(s):
        raise ValueError("recipe must carry one plant tuple per form")
    congruences: list[tuple[int, int]] = []
    if recipe.pre is not None:
        congruences.append((recipe.pre.residue, recipe.pre.modulus))
    for i, plants in enumerate(recipe.plants):
        f = s[i]
        for plant in plants:
            if plant.kind == "implied":
                continue
            if plant.kind == "divides":
                target, modulus = 0, plant.power
            else:
                target, modulus = plant.power, plant.power * plant.p
            cls = solve_linear_congruence(f.a, target - f.b, modulus)
            congruences.append((cls.residue, cls.modulus))
    constraint = crt_solve(congruences)
    K = LinearForm(constraint.modulus, constraint.residue)
    reduced_forms = []
    planted = []
    for i in range(len(s)):
        composed = LinearForm(s[i].a * K.a, s[i].a * K.b + s[i].b)
        divided = divide_form(composed, recipe.divisor(i))
        if math.gcd(divided.a, divided.b) != 1:
            raise InternalCheckFailed(
                f"form {i + 1} keeps fixed divisor "
                f"{math.gcd(divided.a, divided.b)} after dividing out {recipe.divisor(i)}"
            )
        reduced_forms.append(divided)
        planted.append(recipe.divisor_factorization(i))
    system = FormSystem(tuple(reduced_forms))
    if not is_reduced(system):
        raise InternalCheckFailed("adjoined system is not reduced")
    return AdjoinedSystem(K, system, tuple(planted))


@dataclass(frozen=True)
class ValuationReport:
    """Guaranteed p-adic valuation of a form over a residue class.

    v is the minimum valuation over the class, exact says whether every
    member has valuation exactly v. method records how it was settled:
    closed-form valuation algebra always runs; when the deciding period
    p^(v+1) is small enough the class is also enumerated exhaustively.
    """

    p: int
    v: int
    exact: bool
    method: str  # "enumerated" | "algebra"
    period: int  # enumeration period when method == "enumerated", else 0


def guaranteed_valuation(f: LinearForm, cls: ResidueClass, p: int, v_max: int = _V_MAX) -> ValuationReport:
    """Minimum valuation of f(m) for m in cls, and whether it is constant.

    Over the class, f(m) = B + t*A with A = a*modulus and B = f(residue).
    With alpha = val(A), beta = val(B): the minimum is min(alpha, beta) and
    it is attained everywhere iff beta < alpha. (If beta >= alpha, some t
    lifts the valuation above alpha; if beta < alpha, B pins it.)
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    A = f.a * cls.modulus
    B = f(cls.residue)
    alpha = min(valuation(A, p), v_max)
    if B == 0:
        # One member evaluates to 0; every valuation claim is vacuous there.
        return ValuationReport(p, min(alpha, v_max), False, "algebra", 0)
    beta = min(valuation(abs(B), p), v_max)
    v = min(alpha, beta)
    exact = beta < alpha
    period = p ** (v + 1)
    if period <= _ENUM_LIMIT:
        seen_min = v_max + 1
        constant = True
        for t in range(period):
            val = _capped_valuation(B + t * A, p, v + 1)
            seen_min = min(seen_min, val)
            if val != v:
                constant = False
        if seen_min != v or constant != exact:
            raise InternalCheckFailed(
                f"valuation algebra disagrees with enumeration for {f} at p={p}"
            )
        return ValuationReport(p, v, exact, "enumerated", period)
    return ValuationReport(p, v, exact, "algebra", 0)


def _capped_valuation(x: int, p: int, cap: int) -> int:
    x = abs(x)
    if x == 0:
        return cap
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


def fixed_divisor_profile(
    f: LinearForm, cls: ResidueClass, prime_bound: int
) -> dict[int, ValuationReport]:
    """Guaranteed valuations for every prime <= prime_bound.

    Only primes dividing a*modulus can be fixed divisors of a reduced
    form over the class; all others get a v=0 report without enumeration.
    """
    out: dict[int, ValuationReport] = {}
    for p in sieve_primes(prime_bound):
        if (f.a * cls.modulus) % p == 0:
            out[p] = guaranteed_valuation(f, cls, p)
        else:
            out[p] = ValuationReport(p, 0, False, "algebra", 0)
    return out
