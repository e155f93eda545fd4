"""The unwrapping central extension of a circularly ordered group.

A circular ordering c on G induces a {0,1}-valued inhomogeneous 2-cocycle
f_c, and Z x G equipped with (n,a)(m,b) = (n + m + f_c(a,b), ab) is a group
carrying a left order whose cone is {(n,a) : n >= 0} minus (0, id).  For
G = Z/n the extension is infinite cyclic, which `cyclic_lift_iso_check`
certifies on a bounded window.
"""

from __future__ import annotations

import functools
import itertools
from typing import Any, Iterable

from .groups import Ball, CyclicGroup, Element, Group
from .orders import CircularOrdering, ValidationReport, as_carrier


class Cocycle:
    """The inhomogeneous 2-cocycle f_c of a circular ordering.

    Evaluation follows an exclusive case ladder: identity arguments give 0,
    then ab = id gives 1, then the orientation of (id, a, ab) decides.
    Exactly one case must fire; anything else means c is not a valid
    circular ordering.  Values are memoized in a bounded cache.
    """

    def __init__(
        self,
        ordering: CircularOrdering,
        cache_size: int = 1 << 16,
        overrides: dict[tuple[Any, Any], int] | None = None,
    ):
        self.ordering = ordering
        self.group = ordering.group
        self._cache: dict[tuple[Any, Any], int] = {}
        self._cache_size = cache_size
        self._overrides = dict(overrides) if overrides else {}

    def __call__(self, a: Element, b: Element) -> int:
        key = (a.value, b.value)
        if key in self._overrides:
            return self._overrides[key]
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        value = self._evaluate(a, b)
        if len(self._cache) < self._cache_size:
            self._cache[key] = value
        return value

    def _evaluate(self, a: Element, b: Element) -> int:
        if a.is_identity or b.is_identity:
            return 0
        ab = a * b
        if ab.is_identity:
            return 1
        ident = self.group.identity()
        if self.ordering(ident, a, ab) == 1:
            return 0
        if self.ordering(ident, ab, a) == 1:
            return 1
        raise AssertionError(
            f"no cocycle case fires at ({a!r}, {b!r}); "
            "the underlying circular ordering is invalid"
        )


class LiftGroup(Group):
    """Z x G with the cocycle-twisted law; elements are (n, base_value)."""

    def __init__(self, cocycle: Cocycle):
        self.cocycle = cocycle
        self.base = cocycle.group

    @property
    def descriptor(self) -> str:
        ordering = self.cocycle.ordering
        return (
            f"lift:{self.base.descriptor}"
            f":{ordering.provenance}:{ordering.description}"
        )

    @property
    def is_finite(self) -> bool:
        return False

    def _identity_value(self):
        return (0, self.base._identity_value())

    def _op_values(self, x, y):
        n, a = x
        m, b = y
        ea, eb = Element(self.base, a), Element(self.base, b)
        return (n + m + self.cocycle(ea, eb), self.base._op_values(a, b))

    def _inv_value(self, x):
        n, a = x
        ea = Element(self.base, a)
        inv_a = self.base._inv_value(a)
        f = self.cocycle(ea, Element(self.base, inv_a))
        return (-n - f, inv_a)

    def check_value(self, value) -> None:
        if not isinstance(value, tuple) or len(value) != 2:
            raise ValueError(f"not a lift pair: {value!r}")
        n, a = value
        if not isinstance(n, int):
            raise ValueError(f"lift degree must be an integer: {n!r}")
        self.base.check_value(a)

    def sort_key(self, value):
        return (value[0], self.base.sort_key(value[1]))

    def encode(self, value):
        return [value[0], self.base.encode(value[1])]

    def decode(self, obj):
        return (int(obj[0]), self.base.decode(obj[1]))

    def format_value(self, value) -> str:
        return f"({value[0]}, {self.base.format_value(value[1])})"

    def element_from(self, n: int, a: Element) -> Element:
        if a.group != self.base:
            raise ValueError(f"{a!r} is not in base group {self.base.descriptor}")
        return Element(self, (n, a.value))

    def central_generator(self) -> Element:
        return Element(self, (1, self.base._identity_value()))


def lift_op(x: Element, y: Element) -> Element:
    return x * y


def lift_inv(x: Element) -> Element:
    return ~x


def lift_is_positive(x: Element) -> bool:
    """Cone membership: n >= 0, excluding the identity (0, id)."""
    n, a = x.value
    if n < 0:
        return False
    group: LiftGroup = x.group
    return not (n == 0 and a == group.base._identity_value())


def lift_window(
    lift: LiftGroup, degree_bound: int, base_carrier: Iterable[Element]
) -> list[Element]:
    """All (n, a) with |n| <= degree_bound and a in the base carrier."""
    out = [
        Element(lift, (n, a.value))
        for n in range(-degree_bound, degree_bound + 1)
        for a in as_carrier(base_carrier)
    ]
    return sorted(out, key=lambda e: e.sort_key())


def check_inhomogeneous_cocycle(
    f: Cocycle, carrier: Ball | Group | Iterable[Element]
) -> ValidationReport:
    """Verify f(b,c) - f(ab,c) + f(a,bc) - f(a,b) = 0 over carrier triples."""
    elems = as_carrier(carrier)
    checked = 0
    for a, b, c in itertools.product(elems, repeat=3):
        checked += 1
        defect = f(b, c) - f(a * b, c) + f(a, b * c) - f(a, b)
        if defect != 0:
            return ValidationReport(
                "inhomogeneous-cocycle",
                "fail",
                checked,
                {
                    "kind": "cocycle-identity",
                    "tuple": [x.encode() for x in (a, b, c)],
                    "defect": defect,
                },
            )
    return ValidationReport("inhomogeneous-cocycle", "pass", checked, None)


def recover_c(f: Cocycle, g1: Element, g2: Element, g3: Element) -> int:
    """Reconstruct the circular ordering from its cocycle."""
    if g1.value == g2.value or g2.value == g3.value or g1.value == g3.value:
        return 0
    return 1 - 2 * f(~g1 * g2, ~g2 * g3)


def cyclic_enumeration(c: CircularOrdering) -> list[Element]:
    """Elements of a finite group in the cyclic order of c, identity first."""
    group = c.group
    elems = group.elements()
    ident = group.identity()
    rest = [g for g in elems if g != ident]

    def cmp(x: Element, y: Element) -> int:
        if x.value == y.value:
            return 0
        return -c(ident, x, y)

    rest.sort(key=functools.cmp_to_key(cmp))
    return [ident] + rest


def cyclic_lift_iso_check(
    n: int, c: CircularOrdering, window: int = 3
) -> ValidationReport:
    """Certify that the lift of (Z/n, c) is infinite cyclic on a window.

    Builds the candidate isomorphism (m, a) -> m*n + idx(a), idx being the
    position in the cyclic enumeration of c, and verifies on the window
    {(m, a) : |m| <= window}: the homomorphism identity on all pairs,
    injectivity with contiguous image, that powers of the index-1 element
    sweep the window, and absence of torsion.
    """
    group = CyclicGroup(n)
    if c.group != group:
        raise ValueError(f"ordering is on {c.group.descriptor}, wanted {group.descriptor}")
    enum = cyclic_enumeration(c)
    index = {g.value: i for i, g in enumerate(enum)}
    lift = LiftGroup(Cocycle(c))

    def phi(x: Element) -> int:
        m, a = x.value
        return m * n + index[a]

    def phi_inverse(t: int) -> Element:
        return Element(lift, (t // n, enum[t % n].value))

    elems = lift_window(lift, window, group)
    checked = 0

    for x, y in itertools.product(elems, repeat=2):
        checked += 1
        if phi(x * y) != phi(x) + phi(y):
            return ValidationReport(
                "cyclic-lift-iso",
                "fail",
                checked,
                {
                    "kind": "not-a-homomorphism",
                    "tuple": [x.encode(), y.encode()],
                    "lhs": phi(x * y),
                    "rhs": phi(x) + phi(y),
                },
            )

    images = sorted(phi(x) for x in elems)
    expected = list(range(-window * n, window * n + n))
    if images != expected:
        return ValidationReport(
            "cyclic-lift-iso",
            "fail",
            checked,
            {"kind": "not-bijective-on-window", "images": images[:10]},
        )

    if n > 1:
        gen = phi_inverse(1)
        for t in range(-window * n, window * n + n):
            checked += 1
            if gen**t != phi_inverse(t):
                return ValidationReport(
                    "cyclic-lift-iso",
                    "fail",
                    checked,
                    {
                        "kind": "window-not-generated",
                        "power": t,
                        "tuple": [(gen**t).encode(), phi_inverse(t).encode()],
                    },
                )

    # injectivity of a homomorphism to Z rules out torsion on the window
    return ValidationReport(
        "cyclic-lift-iso",
        "pass",
        checked,
        None,
        notes=(
            f"window |m| <= {window}; image is the contiguous range "
            f"[{-window * n}, {window * n + n - 1}]; torsion-free on window",
        ),
    )


def lift_check_report(
    c: CircularOrdering,
    base_carrier: Ball | Group | Iterable[Element],
    degree_bound: int = 3,
    triple_cap: int = 200_000,
) -> dict:
    """Composite cocycle/associativity/cone report for the lift of (G, c)."""
    f = Cocycle(c)
    lift = LiftGroup(f)
    carrier = as_carrier(base_carrier)
    reports: list[ValidationReport] = [check_inhomogeneous_cocycle(f, carrier)]

    window = lift_window(lift, degree_bound, carrier)
    checked = 0
    counter = None

    size = len(window)
    if size**3 <= triple_cap:
        triple_iter = itertools.product(window, repeat=3)
        mode = "exhaustive"
    else:
        import random

        rng = random.Random(0)
        triple_iter = (
            (rng.choice(window), rng.choice(window), rng.choice(window))
            for _ in range(triple_cap)
        )
        mode = "sampled"
    for x, y, z in triple_iter:
        checked += 1
        if (x * y) * z != x * (y * z):
            counter = {
                "kind": "associativity",
                "tuple": [x.encode(), y.encode(), z.encode()],
            }
            break
    reports.append(
        ValidationReport(
            "lift-associativity",
            "pass" if counter is None else "fail",
            checked,
            counter,
            mode,
        )
    )

    ident = lift.identity()
    checked = 0
    counter = None
    for x in window:
        checked += 1
        if x * ident != x or ident * x != x or x * ~x != ident or ~x * x != ident:
            counter = {"kind": "identity-or-inverse", "tuple": [x.encode()]}
            break
        if x.value != ident.value:
            pos, neg = lift_is_positive(x), lift_is_positive(~x)
            if pos == neg:
                counter = {
                    "kind": "cone-trichotomy",
                    "tuple": [x.encode()],
                    "positive": pos,
                    "inverse_positive": neg,
                }
                break
    if counter is None and lift_is_positive(ident):
        counter = {"kind": "identity-positive", "tuple": [ident.encode()]}
    if counter is None:
        positives = [x for x in window if lift_is_positive(x)]
        for x, y in itertools.product(positives, repeat=2):
            checked += 1
            if not lift_is_positive(x * y):
                counter = {
                    "kind": "cone-not-closed",
                    "tuple": [x.encode(), y.encode()],
                }
                break
    reports.append(
        ValidationReport(
            "lift-cone-axioms",
            "pass" if counter is None else "fail",
            checked,
            counter,
        )
    )

    central = lift.central_generator()
    checked = 0
    counter = None
    for x in window:
        checked += 1
        if central * x != x * central:
            counter = {"kind": "central-generator", "tuple": [x.encode()]}
            break
    reports.append(
        ValidationReport(
            "lift-central-generator",
            "pass" if counter is None else "fail",
            checked,
            counter,
        )
    )

    status = "pass" if all(r.passed for r in reports) else "fail"
    return {
        "schema": 1,
        "group": c.group.descriptor,
        "ordering": f"{c.provenance}:{c.description}",
        "degree_bound": degree_bound,
        "status": status,
        "checks": [r.to_dict() for r in reports],
    }
