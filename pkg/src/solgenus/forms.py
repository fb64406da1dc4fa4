"""Binary quadratic forms: reduction, cycles, class sets, equivalence witnesses.

Transformation convention
-------------------------
A form q acts on column vectors, q(x, y) = a*x^2 + b*xy + c*y^2.  A matrix
U in GL2(Z) acts on forms by the determinant-twisted substitution

    (q . U)(v) = det(U) * q(U v).

For det(U) = +1 this is the classical proper (SL2) action.  The twist makes
the action compatible with matrix conjugacy: the fixed-line form of
V^-1 A V is exactly (form of A) . V.  Consequently GL2(Z)-orbits under this
action correspond to conjugacy classes of matrices and to ideal classes of
the order under ordinary (not narrow) equivalence.

``EquivMode.PROPER`` tests SL2-equivalence; ``EquivMode.IMPROPER`` tests
equivalence under the full twisted GL2 action.  For D < 0 the twist maps
positive definite forms to negative definite ones, so on the normalized
(positive definite) carrier the two modes coincide, matching the classical
fact that ordinary and narrow class numbers agree for imaginary fields.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import DiscriminantMismatch, ImprimitiveForm, SolgenusError
from .matrices import IntMat2, is_square
from .orders import OrderDisc, disc_from_int

_SWAP = IntMat2(0, -1, 1, 0)  # q -> (c, -b, a)
_FLIP = IntMat2(1, 0, 0, -1)  # det -1 reflection


class EquivMode(Enum):
    PROPER = "proper"
    IMPROPER = "improper"


@dataclass(frozen=True)
class BQForm:
    """Primitive binary quadratic form a*x^2 + b*xy + c*y^2, nondegenerate disc."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        D = self.disc
        if D == 0 or (D > 0 and is_square(D)):
            raise SolgenusError(f"degenerate discriminant {D} for form {self.triple()}")
        if math.gcd(math.gcd(self.a, self.b), self.c) != 1:
            raise ImprimitiveForm(f"form {self.triple()} is not primitive")
        if D < 0 and self.a < 0:
            raise SolgenusError("definite forms are carried by their positive representative")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def transform(self, u: IntMat2) -> "BQForm":
        """Determinant-twisted substitution (see module docstring)."""
        det = u.det()
        if det not in (1, -1):
            raise SolgenusError("form transformations must lie in GL2(Z)")
        a, b, c = _apply(self.triple(), u)
        return BQForm(det * a, det * b, det * c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def _apply(f: tuple[int, int, int], u: IntMat2) -> tuple[int, int, int]:
    """Plain substitution q(Uv), no determinant twist."""
    a, b, c = f
    p, q, r, s = u.a, u.b, u.c, u.d
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def _opposite(f: tuple[int, int, int]) -> tuple[int, int, int]:
    """Image under any det -1 element of the twisted action, e.g. -q(x, -y)."""
    a, b, c = f
    return (-a, b, -c)


# ---------------------------------------------------------------------------
# Definite reduction (D < 0, a > 0)
# ---------------------------------------------------------------------------


def _is_reduced_definite(f: tuple[int, int, int]) -> bool:
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if b < 0 and (abs(b) == a or a == c):
        return False
    return True


def _reduce_definite(f: tuple[int, int, int]) -> tuple[tuple[int, int, int], IntMat2]:
    """Unique reduced representative plus U with f . U = reduced (det U = 1)."""
    a, b, c = f
    assert a > 0, "definite reduction expects the positive representative"
    u = IntMat2.identity()
    while True:
        if a > c:
            a, b, c = c, -b, a
            u = u * _SWAP
            continue
        if b > a or b <= -a:
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            k = (r - b) // (2 * a)
            c = a * k * k + b * k + c
            b = r
            u = u * IntMat2(1, k, 0, 1)
            continue
        if a == c and b < 0:
            a, b, c = c, -b, a
            u = u * _SWAP
            continue
        return (a, b, c), u


def reduce_definite(q: BQForm) -> BQForm:
    """Gauss reduction of a positive definite form to its unique reduced equivalent."""
    if q.disc >= 0:
        raise SolgenusError("reduce_definite requires negative discriminant")
    f, _ = _reduce_definite(q.triple())
    return BQForm(*f)


# ---------------------------------------------------------------------------
# Indefinite reduction (D > 0 nonsquare): rho steps and cycles
# ---------------------------------------------------------------------------


def _is_reduced_indefinite(f: tuple[int, int, int], D: int) -> bool:
    # 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, all exact
    a, b, _ = f
    if b <= 0 or b * b >= D:
        return False
    ta = 2 * abs(a)
    if D >= (ta + b) ** 2:
        return False
    if ta - b >= 0 and (ta - b) ** 2 >= D:
        return False
    return True


def _rho_raw(f: tuple[int, int, int], D: int) -> tuple[tuple[int, int, int], IntMat2]:
    """One neighboring step; returns the new form and its SL2 transformation."""
    _, b, c = f
    mmod = 2 * abs(c)
    s = math.isqrt(D)
    if abs(c) > s:
        r = (-b) % mmod
        if r > abs(c):
            r -= mmod
    else:
        r = s - ((s + b) % mmod)
    new = (c, r, (r * r - D) // (4 * c))
    step = IntMat2(0, -1, 1, (b + r) // (2 * c))
    return new, step


def _reduce_indefinite(f: tuple[int, int, int], D: int) -> tuple[tuple[int, int, int], IntMat2]:
    u = IntMat2.identity()
    guard = 0
    while not _is_reduced_indefinite(f, D):
        f, step = _rho_raw(f, D)
        u = u * step
        guard += 1
        assert guard < 10_000, "indefinite reduction failed to terminate"
    return f, u


def rho_step(q: BQForm) -> BQForm:
    """The standard reduction/neighboring step on forms of positive discriminant."""
    D = q.disc
    if D <= 0:
        raise SolgenusError("rho step requires positive nonsquare discriminant")
    f, _ = _rho_raw(q.triple(), D)
    return BQForm(*f)


def _cycle_raw(start: tuple[int, int, int], D: int) -> list[tuple[int, int, int]]:
    """Full rho-cycle through the reduction of ``start``."""
    f, _ = _reduce_indefinite(start, D)
    first = f
    out = [f]
    while True:
        f, _ = _rho_raw(f, D)
        if f == first:
            return out
        out.append(f)
        assert len(out) < 100_000, "runaway cycle"


def cycle(q: BQForm) -> list[BQForm]:
    """The cycle of reduced forms containing the reduction of q (finite, even length)."""
    D = q.disc
    if D <= 0:
        raise SolgenusError("cycles exist only for positive nonsquare discriminant")
    return [BQForm(*f) for f in _cycle_raw(q.triple(), D)]


# ---------------------------------------------------------------------------
# Enumeration of reduced forms and class sets
# ---------------------------------------------------------------------------


def _reduced_definite_forms(D: int) -> list[tuple[int, int, int]]:
    out = []
    amax = math.isqrt(abs(D) // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2 != 0 or (b * b - D) % (4 * a) != 0:
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return sorted(out)


def _reduced_indefinite_forms(D: int) -> list[tuple[int, int, int]]:
    out = []
    for b in range(1, math.isqrt(D) + 1):
        if (D - b) % 2 != 0:
            continue
        m = (D - b * b) // 4  # = |a*c|, positive
        for aa in range(1, math.isqrt(m) + 1):
            if m % aa:
                continue
            for av in {aa, m // aa}:
                ta = 2 * av
                if D >= (ta + b) ** 2:
                    continue
                if ta - b >= 0 and (ta - b) ** 2 >= D:
                    continue
                cv = m // av
                for a, c in ((av, -cv), (-av, cv)):
                    if math.gcd(math.gcd(a, b), c) == 1:
                        out.append((a, b, c))
    return sorted(set(out))


@dataclass(frozen=True)
class FormClassSet:
    """One reduced representative per equivalence class of primitive forms."""

    disc: OrderDisc
    mode: EquivMode
    reps: tuple[BQForm, ...]
    class_members: tuple[frozenset, ...]  # reduced triples per class, aligned with reps

    @property
    def count(self) -> int:
        return len(self.reps)

    def class_index_of(self, q: BQForm) -> int:
        """Index of the class containing q; raises on discriminant mismatch."""
        if q.disc != self.disc.D:
            raise DiscriminantMismatch(f"form of disc {q.disc}, class set of disc {self.disc.D}")
        if self.disc.D < 0:
            key = reduce_definite(q).triple()
        else:
            key = _reduce_indefinite(q.triple(), self.disc.D)[0]
        for i, members in enumerate(self.class_members):
            if key in members:
                return i
        raise AssertionError(f"reduced form {key} missing from class set of {self.disc.D}")


@lru_cache(maxsize=None)
def _class_set_cached(D: int, mode: EquivMode) -> FormClassSet:
    od = disc_from_int(D)
    if D < 0:
        # each reduced positive definite form is one proper class; the twisted
        # det -1 action leaves the positive definite carrier, so improper
        # classes coincide with proper ones
        classes = [frozenset([f]) for f in _reduced_definite_forms(D)]
    else:
        reduced = _reduced_indefinite_forms(D)
        cycle_of: dict[tuple[int, int, int], int] = {}
        cycles: list[list[tuple[int, int, int]]] = []
        for f in reduced:
            if f in cycle_of:
                continue
            cyc = _cycle_raw(f, D)
            for g in cyc:
                cycle_of[g] = len(cycles)
            cycles.append(cyc)
        assert sorted(cycle_of) == reduced, "cycle partition must exhaust reduced forms"
        if mode is EquivMode.PROPER:
            classes = [frozenset(c) for c in cycles]
        else:
            merged: list[set] = []
            seen: set[int] = set()
            for i, cyc in enumerate(cycles):
                if i in seen:
                    continue
                j = cycle_of[_opposite(cyc[0])]
                seen.update({i, j})
                members = set(cycles[i]) | set(cycles[j])
                merged.append(members)
            classes = [frozenset(c) for c in merged]
    classes.sort(key=lambda members: min(members))
    reps = tuple(BQForm(*min(members)) for members in classes)
    return FormClassSet(od, mode, reps, tuple(classes))


def class_set(disc: OrderDisc | int, mode: EquivMode = EquivMode.IMPROPER) -> FormClassSet:
    """All classes of primitive forms of the given discriminant under ``mode``."""
    D = disc.D if isinstance(disc, OrderDisc) else int(disc)
    if not isinstance(disc, OrderDisc):
        disc_from_int(D)  # validation
    return _class_set_cached(D, mode)


def class_count(disc: OrderDisc | int, mode: EquivMode = EquivMode.IMPROPER) -> int:
    return class_set(disc, mode).count


# ---------------------------------------------------------------------------
# Equivalence with explicit transformation
# ---------------------------------------------------------------------------


def _equiv_proper(f1: tuple[int, int, int], f2: tuple[int, int, int], D: int) -> IntMat2 | None:
    """U in SL2(Z) with f1(Uv) = f2(v), or None."""
    if D < 0:
        r1, u1 = _reduce_definite(f1)
        r2, u2 = _reduce_definite(f2)
        if r1 != r2:
            return None
        return u1 * u2.inverse()
    r1, u1 = _reduce_indefinite(f1, D)
    r2, u2 = _reduce_indefinite(f2, D)
    w = IntMat2.identity()
    f = r1
    while True:
        if f == r2:
            return u1 * w * u2.inverse()
        f, step = _rho_raw(f, D)
        w = w * step
        if f == r1:
            return None


def forms_equivalent(q1: BQForm, q2: BQForm, mode: EquivMode = EquivMode.IMPROPER) -> IntMat2 | None:
    """Transformation carrying q1 to q2 under the twisted action, or None.

    Returns U with q1.transform(U) == q2; det(U) = +1 in PROPER mode,
    det(U) = +-1 in IMPROPER mode.
    """
    if q1.disc != q2.disc:
        raise DiscriminantMismatch(f"discriminants {q1.disc} != {q2.disc}")
    D = q1.disc
    u = _equiv_proper(q1.triple(), q2.triple(), D)
    if u is None and mode is EquivMode.IMPROPER and D > 0:
        m = _equiv_proper(_opposite(q1.triple()), q2.triple(), D)
        if m is not None:
            u = _FLIP * m
    if u is not None:
        assert q1.transform(u) == q2, "equivalence witness failed verification"
    return u
