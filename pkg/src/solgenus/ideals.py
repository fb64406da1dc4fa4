"""From form classes to matrix representatives of GL2(Z)-conjugacy classes.

Each primitive form (a, b, c) of discriminant D yields the lattice
I = Z*|a| + Z*(-b + sqrt(D))/2, an ideal of the order of discriminant D.
Multiplication by the eigenvalue lam = (t + sqrt(D))/2 on that basis is an
integer matrix with characteristic polynomial x^2 - t*x + n, and inequivalent
form classes give non-conjugate matrices.  Enumerating one form per class
therefore produces one matrix per conjugacy class with that characteristic
polynomial (among the classes attached to the order itself).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SolgenusError
from .forms import BQForm, EquivMode, class_set
from .matrices import CharPoly, IntMat2
from .orders import OrderDisc, disc_from_int, order_disc


@dataclass(frozen=True)
class IdealRep:
    """Ideal with Z-basis (a, (-b + sqrt(D))/2); norm a > 0."""

    a: int
    b: int
    disc: OrderDisc

    def __post_init__(self):
        if self.a <= 0:
            raise SolgenusError("ideal norm must be positive")
        if (self.b * self.b - self.disc.D) % (4 * self.a) != 0:
            raise SolgenusError(
                f"(a, b) = ({self.a}, {self.b}) is not an ideal basis for disc {self.disc.D}"
            )

    @property
    def norm(self) -> int:
        return self.a


def form_to_ideal(q: BQForm) -> IdealRep:
    """Ideal attached to a primitive form, normalized to positive norm."""
    return IdealRep(abs(q.a), q.b, disc_from_int(q.disc))


def multiplication_matrix(ideal: IdealRep, p: CharPoly) -> IntMat2:
    """Matrix of multiplication by lam = (t + sqrt(D))/2 on the ideal basis."""
    if p.disc != ideal.disc.D:
        raise SolgenusError("ideal and characteristic polynomial disagree on discriminant")
    t, D, a, b = p.t, ideal.disc.D, ideal.a, ideal.b
    m = IntMat2((t + b) // 2, (D - b * b) // (4 * a), a, (t - b) // 2)
    assert m.trace() == p.t and m.det() == p.n, "multiplication matrix postcondition"
    return m


def companion(p: CharPoly) -> IntMat2:
    """Companion matrix [[0, -n], [1, t]]; multiplication by lam on basis (1, lam)."""
    return IntMat2(0, -p.n, 1, p.t)


@dataclass(frozen=True)
class LMSet:
    """One matrix per form class of the order, principal class first."""

    p: CharPoly
    reps: tuple[IntMat2, ...]
    forms: tuple[BQForm, ...]

    def __post_init__(self):
        if len(self.reps) != len(self.forms):
            raise SolgenusError("representative/provenance length mismatch")

    @property
    def count(self) -> int:
        return len(self.reps)


def principal_form(D: int) -> BQForm:
    """The form (1, b0, c0) with b0 = D mod 2, representing the order itself."""
    b0 = D % 2
    return BQForm(1, b0, (b0 * b0 - D) // 4)


def lm_representatives(p: CharPoly) -> LMSet:
    """One conjugacy-class representative per form class of discriminant t^2 - 4n.

    The principal class is listed first and realized as the companion matrix;
    the remaining classes are realized by multiplication matrices on their
    ideals, in lexicographic order of the class representatives.
    """
    od = order_disc(p)
    cs = class_set(od, EquivMode.IMPROPER)
    principal_idx = cs.class_index_of(principal_form(od.D))
    order_of_classes = [principal_idx] + [i for i in range(cs.count) if i != principal_idx]
    reps: list[IntMat2] = []
    forms: list[BQForm] = []
    for rank, i in enumerate(order_of_classes):
        q = cs.reps[i]
        if rank == 0:
            reps.append(companion(p))
        else:
            reps.append(multiplication_matrix(form_to_ideal(q), p))
        forms.append(q)
    return LMSet(p, tuple(reps), tuple(forms))
