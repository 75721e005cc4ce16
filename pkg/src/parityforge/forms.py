"""Linear forms a*m + b, triplet systems, admissibility, and two-term relations."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .arith import MAX_VALUE
from .errors import FormParseError, NoRelation, NotDivisible


@dataclass(frozen=True)
class LinearForm:
    """a*m + b with a > 0. Coefficients are exact ints; range checks happen
    at evaluation time, not construction time."""

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"leading coefficient must be positive, got {self.a}")

    def __call__(self, m: int) -> int:
        # Unchecked exact evaluation; use evaluate() for the checked 64-bit op.
        return self.a * m + self.b

    def content(self) -> int:
        """gcd of the form's values over all integers."""
        return math.gcd(self.a, self.b)

    def __str__(self) -> str:
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}*m{sign}{abs(self.b)}"


@dataclass(frozen=True)
class FormSystem:
    forms: tuple[LinearForm, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("a system needs at least one form")

    def __len__(self) -> int:
        return len(self.forms)

    def __getitem__(self, i: int) -> LinearForm:
        return self.forms[i]

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.forms) + "}"


@dataclass(frozen=True)
class AdmissibilityCertificate:
    """Result of check_admissible, with one witness residue per checked prime."""

    admissible: bool
    reduced: bool
    witnesses: tuple[tuple[int, int], ...]  # (prime, residue avoiding all roots)
    failing_prime: int | None = None


@dataclass(frozen=True)
class Relation:
    """c_i * L_i - c_j * L_j = shift, an identity in m.

    Multipliers are positive; the sign of shift records which side is
    larger (positive: the i side exceeds the j side by |shift|).
    """

    i: int
    j: int
    ci: int
    cj: int
    shift: int

    def holds_for(self, s: FormSystem) -> bool:
        fi, fj = s[self.i], s[self.j]
        return (
            self.ci * fi.a == self.cj * fj.a
            and self.ci * fi.b - self.cj * fj.b == self.shift
        )

    def low_side(self) -> tuple[int, int]:
        """(form index, multiplier) of the smaller value x."""
        return (self.j, self.cj) if self.shift > 0 else (self.i, self.ci)

    def high_side(self) -> tuple[int, int]:
        """(form index, multiplier) of x + |shift|."""
        return (self.i, self.ci) if self.shift > 0 else (self.j, self.cj)


def evaluate(f: LinearForm, m: int) -> int:
    """Checked evaluation: the result must fit the 64-bit range."""
    v = f.a * m + f.b
    if abs(v) > MAX_VALUE:
        raise OverflowError(f"{f} at m={m} leaves the 64-bit range")
    return v


def compose(outer: LinearForm, inner: LinearForm) -> LinearForm:
    """outer(inner(m)) as a form; checked against the 64-bit range."""
    a = outer.a * inner.a
    b = outer.a * inner.b + outer.b
    if a > MAX_VALUE or abs(b) > MAX_VALUE:
        raise OverflowError(f"composing {outer} with {inner} leaves the 64-bit range")
    return LinearForm(a, b)


def divide_form(f: LinearForm, d: int) -> LinearForm:
    """f / d when d divides both coefficients, else NotDivisible."""
    if d < 1:
        raise ValueError(f"divisor must be positive, got {d}")
    if f.a % d or f.b % d:
        raise NotDivisible(f"{d} does not divide {f}")
    return LinearForm(f.a // d, f.b // d)


def is_reduced(s: FormSystem) -> bool:
    """Every form has positive leading coefficient and coprime coefficients."""
    return all(math.gcd(f.a, f.b) == 1 for f in s.forms)


def check_admissible(s: FormSystem) -> AdmissibilityCertificate:
    """Reduced + for every prime p <= len(s) some residue avoids all roots.

    For p > len(s) the product of the forms has at most len(s) roots mod p,
    so a free residue always exists and only p <= len(s) need enumeration.
    """
    if not is_reduced(s):
        return AdmissibilityCertificate(False, False, ())
    witnesses = []
    k = len(s)
    p = 2
    while p <= k:
        hit = None
        for x in range(p):
            if all((f.a * x + f.b) % p for f in s.forms):
                hit = x
                break
        if hit is None:
            return AdmissibilityCertificate(False, True, tuple(witnesses), failing_prime=p)
        witnesses.append((p, hit))
        p += 1 if p == 2 else 2
    return AdmissibilityCertificate(True, True, tuple(witnesses))


def find_relation(s: FormSystem, i: int, j: int, shift: int) -> Relation:
    """Two-term relation between forms i and j with offset difference +-shift.

    Base multipliers clear the leading coefficients (a_j/g, a_i/g); if the
    resulting offset difference divides shift, both are scaled up by the
    quotient. Raises NoRelation otherwise.
    """
    if shift < 1:
        raise ValueError("shift must be >= 1")
    fi, fj = s[i], s[j]
    g = math.gcd(fi.a, fj.a)
    ci, cj = fj.a // g, fi.a // g
    delta = ci * fi.b - cj * fj.b
    if delta == 0 or shift % abs(delta):
        raise NoRelation(
            f"no relation with shift {shift} between {fi} and {fj} (base offset {delta})"
        )
    t = shift // abs(delta)
    return Relation(i, j, t * ci, t * cj, t * delta)


_FORM_RE = re.compile(r"^\s*(\d+)\s*\*?\s*([A-Za-z])\s*([+-])\s*(\d+)\s*$")


def parse_form(text: str) -> LinearForm:
    """Parse 'a*m+b' (the * is optional, the variable letter free)."""
    m = _FORM_RE.match(text)
    if not m:
        bad = next(
            (k for k, ch in enumerate(text) if not (ch.isalnum() or ch in " *+-")),
            len(text.rstrip()),
        )
        raise FormParseError(f"expected 'a*m+b', got {text!r}", bad)
    a, _, sign, b = m.groups()
    if int(a) == 0:
        raise FormParseError("leading coefficient must be positive", m.start(1))
    return LinearForm(int(a), int(b) if sign == "+" else -int(b))


def parse_system(text: str) -> FormSystem:
    """Parse 'a1,b1;a2,b2;...' into a FormSystem."""
    forms = []
    pos = 0
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise FormParseError(f"expected 'a,b', got {chunk!r}", pos)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormParseError(f"bad integer in {chunk!r}", pos) from None
        if a <= 0:
            raise FormParseError("leading coefficient must be positive", pos)
        forms.append(LinearForm(a, b))
        pos += len(chunk) + 1
    return FormSystem(tuple(forms))
