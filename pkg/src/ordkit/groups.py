"""Computable groups with decidable equality via canonical forms.

Every group exposes identity/op/inv plus a canonical form per element, so
equality, hashing and deterministic sorting are always available.  Infinite
groups are handled through finite balls (word-metric neighbourhoods of the
identity) rather than full enumeration.
"""

from __future__ import annotations

import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Sequence

DEFAULT_MAX_BALL = 10**6
MAX_BALL_ENV = "ORDKIT_MAX_BALL"


class GroupMismatchError(ValueError):
    """Raised when elements of different groups are combined."""


class ResourceCapError(RuntimeError):
    """Raised when a construction exceeds its configured size cap."""


class InvalidHomomorphismError(ValueError):
    """Raised when a claimed homomorphism fails its relator check."""


def max_ball_size() -> int:
    raw = os.environ.get(MAX_BALL_ENV)
    if raw is None:
        return DEFAULT_MAX_BALL
    try:
        value = int(raw)
    except ValueError as exc:
        raise ResourceCapError(f"invalid {MAX_BALL_ENV}={raw!r}") from exc
    if value <= 0:
        raise ResourceCapError(f"{MAX_BALL_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Element:
    """A group element: group tag plus canonical form."""

    group: "Group"
    value: Any

    def __mul__(self, other: "Element") -> "Element":
        return self.group.op(self, other)

    def __invert__(self) -> "Element":
        return self.group.inv(self)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            return (~self) ** (-n)
        result = self.group.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    @property
    def is_identity(self) -> bool:
        return self.value == self.group.identity().value

    def sort_key(self) -> Any:
        return self.group.sort_key(self.value)

    def encode(self) -> Any:
        return self.group.encode(self.value)

    def __repr__(self) -> str:
        return f"<{self.group.descriptor}: {self.group.format_value(self.value)}>"


class Group(ABC):
    """Base class for the concrete groups the toolkit computes with.

    Subclasses implement the group law on canonical forms.  Instances are
    immutable and compare equal exactly when their descriptors match, so
    elements of independently constructed handles interoperate.
    """

    @property
    @abstractmethod
    def descriptor(self) -> str: ...

    @property
    @abstractmethod
    def is_finite(self) -> bool: ...

    @property
    def order(self) -> int | None:
        return None

    @abstractmethod
    def _identity_value(self) -> Any: ...

    @abstractmethod
    def _op_values(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def _inv_value(self, a: Any) -> Any: ...

    @abstractmethod
    def check_value(self, value: Any) -> None:
        """Raise ValueError if value is not a canonical form of this group."""

    def sort_key(self, value: Any) -> Any:
        return value

    def encode(self, value: Any) -> Any:
        return value

    def decode(self, obj: Any) -> Any:
        self.check_value(obj)
        return obj

    def format_value(self, value: Any) -> str:
        return str(value)

    # -- wrapped API ------------------------------------------------------

    def identity(self) -> Element:
        return Element(self, self._identity_value())

    def element(self, value: Any) -> Element:
        self.check_value(value)
        return Element(self, value)

    def op(self, g: Element, h: Element) -> Element:
        if g.group != self or h.group != self:
            raise GroupMismatchError(
                f"cannot multiply elements of {g.group.descriptor} and "
                f"{h.group.descriptor} in {self.descriptor}"
            )
        return Element(self, self._op_values(g.value, h.value))

    def inv(self, g: Element) -> Element:
        if g.group != self:
            raise GroupMismatchError(
                f"element of {g.group.descriptor} is not in {self.descriptor}"
            )
        return Element(self, self._inv_value(g.value))

    def elements(self) -> list[Element]:
        """All elements in canonical sort order (finite groups only)."""
        raise ValueError(f"{self.descriptor} is not finite-enumerable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Group) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"Group({self.descriptor})"


class CyclicGroup(Group):
    """Z/n with residues 0..n-1 as canonical forms."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"cyclic group order must be >= 1, got {n}")
        self.n = n

    @property
    def descriptor(self) -> str:
        return f"cyclic:{self.n}"

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.n

    def _identity_value(self) -> int:
        return 0

    def _op_values(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def _inv_value(self, a: int) -> int:
        return (-a) % self.n

    def check_value(self, value: Any) -> None:
        if not isinstance(value, int) or not 0 <= value < self.n:
            raise ValueError(f"not a residue mod {self.n}: {value!r}")

    def elements(self) -> list[Element]:
        return [Element(self, k) for k in range(self.n)]


class IntegerGroup(Group):
    """(Z, +)."""

    @property
    def descriptor(self) -> str:
        return "integers"

    @property
    def is_finite(self) -> bool:
        return False

    def _identity_value(self) -> int:
        return 0

    def _op_values(self, a: int, b: int) -> int:
        return a + b

    def _inv_value(self, a: int) -> int:
        return -a

    def check_value(self, value: Any) -> None:
        if not isinstance(value, int):
            raise ValueError(f"not an integer: {value!r}")


class FreeAbelianGroup(Group):
    """Z^k with integer vectors as canonical forms."""

    def __init__(self, rank: int):
        if rank < 0:
            raise ValueError(f"rank must be >= 0, got {rank}")
        self.rank = rank

    @property
    def descriptor(self) -> str:
        return f"free-abelian:{self.rank}"

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        return 1 if self.rank == 0 else None

    def _identity_value(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def _op_values(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    def _inv_value(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(-x for x in a)

    def check_value(self, value: Any) -> None:
        if (
            not isinstance(value, tuple)
            or len(value) != self.rank
            or not all(isinstance(x, int) for x in value)
        ):
            raise ValueError(f"not an integer {self.rank}-vector: {value!r}")

    def elements(self) -> list[Element]:
        if self.rank == 0:
            return [self.identity()]
        return super().elements()

    def encode(self, value: tuple[int, ...]) -> list[int]:
        return list(value)

    def decode(self, obj: Any) -> tuple[int, ...]:
        value = tuple(obj)
        self.check_value(value)
        return value

    def basis(self) -> list[Element]:
        out = []
        for i in range(self.rank):
            vec = [0] * self.rank
            vec[i] = 1
            out.append(Element(self, tuple(vec)))
        return out


class DirectProductGroup(Group):
    """Direct product with componentwise law."""

    def __init__(self, left: Group, right: Group, name: str | None = None):
        self.left = left
        self.right = right
        self._name = name

    @property
    def descriptor(self) -> str:
        if self._name is not None:
            return self._name
        return f"product:{self.left.descriptor},{self.right.descriptor}"

    @property
    def is_finite(self) -> bool:
        return self.left.is_finite and self.right.is_finite

    @property
    def order(self) -> int | None:
        if self.is_finite:
            return self.left.order * self.right.order
        return None

    def _identity_value(self) -> tuple[Any, Any]:
        return (self.left._identity_value(), self.right._identity_value())

    def _op_values(self, a: tuple[Any, Any], b: tuple[Any, Any]) -> tuple[Any, Any]:
        return (
            self.left._op_values(a[0], b[0]),
            self.right._op_values(a[1], b[1]),
        )

    def _inv_value(self, a: tuple[Any, Any]) -> tuple[Any, Any]:
        return (self.left._inv_value(a[0]), self.right._inv_value(a[1]))

    def check_value(self, value: Any) -> None:
        if not isinstance(value, tuple) or len(value) != 2:
            raise ValueError(f"not a pair: {value!r}")
        self.left.check_value(value[0])
        self.right.check_value(value[1])

    def sort_key(self, value: tuple[Any, Any]) -> Any:
        return (self.left.sort_key(value[0]), self.right.sort_key(value[1]))

    def encode(self, value: tuple[Any, Any]) -> list[Any]:
        return [self.left.encode(value[0]), self.right.encode(value[1])]

    def decode(self, obj: Any) -> tuple[Any, Any]:
        return (self.left.decode(obj[0]), self.right.decode(obj[1]))

    def format_value(self, value: tuple[Any, Any]) -> str:
        return (
            f"({self.left.format_value(value[0])}, "
            f"{self.right.format_value(value[1])})"
        )

    def elements(self) -> list[Element]:
        if not self.is_finite:
            return super().elements()
        return [
            Element(self, (a.value, b.value))
            for a in self.left.elements()
            for b in self.right.elements()
        ]

    def pair(self, a: Element, b: Element) -> Element:
        return Element(self, (a.value, b.value))


_HALF = Fraction(1, 2)

# Coset translation patterns of the four point-group parts: entry k is the
# fractional part (0 or 1/2) forced on coordinate k of the translation.
_PROMISLOW_COSET_FRAC = {
    (1, 1, 1): (0, 0, 0),
    (1, -1, -1): (_HALF, _HALF, 0),
    (-1, 1, -1): (0, _HALF, _HALF),
    (-1, -1, 1): (_HALF, 0, _HALF),
}


class PromislowGroup(Group):
    """The Promislow (Hantzsche-Wendt) group in its affine representation.

    Elements are exact affine maps (D, t): a diagonal matrix D with entries
    +-1 stored as a triple, and a translation t in (1/2)Z^3.  Generators:

        a = (diag(1,-1,-1), (1/2, 1/2, 0))
        b = (diag(-1,1,-1), (0, 1/2, 1/2))

    The defining relations a b^2 a^-1 b^2 and b a^2 b^-1 a^2 hold exactly in
    this representation (checked in the test suite before anything trusts it).
    """

    @property
    def descriptor(self) -> str:
        return "promislow"

    @property
    def is_finite(self) -> bool:
        return False

    def _identity_value(self):
        return ((1, 1, 1), (Fraction(0), Fraction(0), Fraction(0)))

    def _op_values(self, g, h):
        (da, ta), (db, tb) = g, h
        diag = (da[0] * db[0], da[1] * db[1], da[2] * db[2])
        trans = tuple(da[k] * tb[k] + ta[k] for k in range(3))
        return (diag, trans)

    def _inv_value(self, g):
        d, t = g
        return (d, tuple(-d[k] * t[k] for k in range(3)))

    def check_value(self, value: Any) -> None:
        try:
            d, t = value
        except (TypeError, ValueError):
            raise ValueError(f"not an affine pair: {value!r}") from None
        if d not in _PROMISLOW_COSET_FRAC:
            raise ValueError(f"not a Promislow point-group part: {d!r}")
        frac = _PROMISLOW_COSET_FRAC[d]
        for k in range(3):
            x = Fraction(t[k])
            if x - frac[k] != int(x - frac[k]):
                raise ValueError(
                    f"translation {t!r} incompatible with point part {d!r}"
                )

    def sort_key(self, value):
        d, t = value
        return (d, t)

    def encode(self, value) -> dict[str, list]:
        d, t = value
        return {"diag": list(d), "t": [str(x) for x in t]}

    def decode(self, obj: Any):
        d = tuple(int(x) for x in obj["diag"])
        t = tuple(Fraction(s) for s in obj["t"])
        value = (d, t)
        self.check_value(value)
        return value

    def format_value(self, value) -> str:
        d, t = value
        return f"diag{d}+({t[0]},{t[1]},{t[2]})"

    def gen_a(self) -> Element:
        return Element(self, ((1, -1, -1), (_HALF, _HALF, Fraction(0))))

    def gen_b(self) -> Element:
        return Element(self, ((-1, 1, -1), (Fraction(0), _HALF, _HALF)))

    def generators(self) -> list[Element]:
        return [self.gen_a(), self.gen_b()]

    def translation(self, x: int, y: int, z: int) -> Element:
        return Element(
            self, ((1, 1, 1), (Fraction(x), Fraction(y), Fraction(z)))
        )

    def phi2_value(self, value) -> int:
        """Image in Z/2 of the map sending a -> 1, b -> 0 (a-exponent mod 2)."""
        d, _ = value
        return 1 if d in ((1, -1, -1), (-1, -1, 1)) else 0

    def psi4_value(self, value) -> int:
        """Image in Z/4 of the abelianization followed by the a-factor.

        Computed from the affine canonical form: peel off the coset
        representative (id, a, b or ab), read the remaining integer
        translation (v1, v2, v3), and combine 2*(v1+v3) with the
        representative's own image (1, 0 or 1).
        """
        d, t = value
        if d == (1, 1, 1):
            base, v1, v3 = 0, t[0], t[2]
        elif d == (1, -1, -1):  # a * tau
            base, v1, v3 = 1, t[0] - _HALF, -t[2]
        elif d == (-1, 1, -1):  # b * tau
            base, v1, v3 = 0, -t[0], -(t[2] - _HALF)
        else:  # ab * tau
            base, v1, v3 = 1, -(t[0] - _HALF), t[2] + _HALF
        return (base + 2 * (int(v1) + int(v3))) % 4

    def kernel_coords(self, value) -> tuple[int, int, int]:
        """Coordinates (x, w, j) of a phi-kernel element as a^2x (ab)^2w b^j.

        Only defined on the kernel of phi2 (point part diag(1,1,1) or
        diag(-1,1,-1)); raises ValueError otherwise.
        """
        d, t = value
        if d == (1, 1, 1):
            x, y, z = (int(c) for c in t)
            return (x, -z, 2 * y)
        if d == (-1, 1, -1):
            # g = tau * b with tau = g * b^-1 a pure translation
            m = int(t[0])
            n = int(t[1] - _HALF)
            k = int(t[2] - _HALF)
            return (m, -k, 2 * n + 1)
        raise ValueError(f"element with point part {d!r} is not in ker(phi)")


# -- registry --------------------------------------------------------------


def klein_four_group() -> DirectProductGroup:
    return DirectProductGroup(CyclicGroup(2), CyclicGroup(2), name="klein4")


def get_group(descriptor: str) -> Group:
    """Resolve a builtin group descriptor such as ``cyclic:6`` or ``promislow``."""
    if descriptor == "integers":
        return IntegerGroup()
    if descriptor == "promislow":
        return PromislowGroup()
    if descriptor == "klein4":
        return klein_four_group()
    if descriptor == "trivial":
        return CyclicGroup(1)
    if descriptor.startswith("cyclic:"):
        return CyclicGroup(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("free-abelian:"):
        return FreeAbelianGroup(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("witness:"):
        from . import witness

        return witness.WitnessAmbientGroup(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("product:"):
        body = descriptor[len("product:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(
                f"product descriptor needs exactly two factors: {descriptor!r}"
            )
        return DirectProductGroup(get_group(parts[0]), get_group(parts[1]))
    raise ValueError(f"unknown group descriptor: {descriptor!r}")


# -- element order ----------------------------------------------------------


def element_order(g: Element, cap: int) -> int | None:
    """Least k <= cap with g^k = id, or None when the order exceeds cap."""
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    ident = g.group.identity()
    power = g
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = power * g
    return None


# -- balls -------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    """All products of at most `radius` generators and inverses."""

    group: Group
    gens: tuple[Element, ...]
    radius: int
    elements: tuple[Element, ...]
    _value_set: frozenset = field(repr=False, hash=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, g: Element) -> bool:
        return g.group == self.group and g.value in self._value_set

    def contains_value(self, value: Any) -> bool:
        return value in self._value_set


def ball(gens: Sequence[Element], radius: int, max_size: int | None = None) -> Ball:
    """Breadth-first ball of the given radius around the identity.

    Deterministic: the element list is sorted by canonical form.  Raises
    ResourceCapError when the ball would exceed max_size (default from
    ORDKIT_MAX_BALL, falling back to 10^6).
    """
    b, _ = ball_with_words(gens, radius, max_size)
    return b


def ball_with_words(
    gens: Sequence[Element], radius: int, max_size: int | None = None
) -> tuple[Ball, dict[Any, tuple[int, ...]]]:
    """Ball plus one shortest defining word per element.

    Words are tuples of signed generator indices (1-based; negative means
    inverse), the first found in deterministic BFS order.
    """
    if not gens:
        raise ValueError("ball needs at least one generator")
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    group = gens[0].group
    for g in gens:
        if g.group != group:
            raise GroupMismatchError("ball generators must share one group")
    cap = max_ball_size() if max_size is None else max_size

    steps: list[tuple[int, Element]] = []
    for i, g in enumerate(gens):
        steps.append((i + 1, g))
        steps.append((-(i + 1), ~g))

    ident = group.identity()
    words: dict[Any, tuple[int, ...]] = {ident.value: ()}
    seen: dict[Any, Element] = {ident.value: ident}
    frontier = [ident]
    for _ in range(radius):
        frontier.sort(key=lambda e: group.sort_key(e.value))
        next_frontier: list[Element] = []
        for elem in frontier:
            for letter, step in steps:
                new = elem * step
                if new.value in seen:
                    continue
                if len(seen) >= cap:
                    raise ResourceCapError(
                        f"ball of radius {radius} exceeds cap {cap} elements"
                    )
                seen[new.value] = new
                words[new.value] = words[elem.value] + (letter,)
                next_frontier.append(new)
        frontier = next_frontier
    ordered = tuple(
        sorted(seen.values(), key=lambda e: group.sort_key(e.value))
    )
    result = Ball(
        group=group,
        gens=tuple(gens),
        radius=radius,
        elements=ordered,
        _value_set=frozenset(seen.keys()),
    )
    return result, words


# -- presentations -----------------------------------------------------------


def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a valid letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """Finite presentation: generator count plus reduced relator words."""

    num_generators: int
    relators: tuple[tuple[int, ...], ...]
    generator_names: tuple[str, ...] = ()

    def __post_init__(self):
        names = self.generator_names or tuple(
            _default_gen_name(i) for i in range(self.num_generators)
        )
        object.__setattr__(self, "generator_names", names)
        if len(names) != self.num_generators:
            raise ValueError("one name per generator required")
        reduced = tuple(free_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", reduced)
        for rel in reduced:
            for letter in rel:
                if not 1 <= abs(letter) <= self.num_generators:
                    raise ValueError(f"letter {letter} out of range in {rel}")

    def exponent_sum_matrix(self) -> list[list[int]]:
        """Row per relator, column per generator: signed letter counts."""
        rows = []
        for rel in self.relators:
            row = [0] * self.num_generators
            for letter in rel:
                row[abs(letter) - 1] += 1 if letter > 0 else -1
            rows.append(row)
        return rows


def _default_gen_name(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[i] if i < len(letters) else f"g{i}"


PROMISLOW_PRESENTATION = Presentation(
    2, ((1, 2, 2, -1, 2, 2), (2, 1, 1, -2, 1, 1)), ("a", "b")
)


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format.

    One ``gens: a b`` line followed by ``rel: a b b A b b`` lines; an
    uppercase letter is the inverse of its lowercase generator.
    """
    names: list[str] | None = None
    relators: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            if names is not None:
                raise ValueError(f"line {lineno}: duplicate gens line")
            names = line[len("gens:"):].split()
            if not names:
                raise ValueError(f"line {lineno}: empty generator list")
        elif line.startswith("rel:"):
            if names is None:
                raise ValueError(f"line {lineno}: rel before gens")
            word = []
            for token in line[len("rel:"):].split():
                lowered = token.lower()
                if lowered not in names:
                    raise ValueError(f"line {lineno}: unknown letter {token!r}")
                index = names.index(lowered) + 1
                word.append(index if token == lowered else -index)
            relators.append(tuple(word))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if names is None:
        raise ValueError("missing gens line")
    return Presentation(len(names), tuple(relators), tuple(names))


def evaluate_word(images: Sequence[Element], word: Iterable[int]) -> Element:
    """Evaluate a signed-letter word using the given generator images."""
    if not images:
        raise ValueError("need at least one generator image")
    result = images[0].group.identity()
    for letter in word:
        base = images[abs(letter) - 1]
        result = result * (base if letter > 0 else ~base)
    return result


# -- homomorphisms -----------------------------------------------------------


class Homomorphism:
    """Group homomorphism given by a rule on canonical forms.

    When the source carries a presentation and generator images are supplied,
    the relators are verified at construction time (fail-fast on invalid
    certificates).  Sources without a presentation rely on
    `validate_on_carrier` for extensional checking.
    """

    def __init__(
        self,
        source: Group,
        target: Group,
        rule: Callable[[Element], Element],
        *,
        name: str = "",
        presentation: Presentation | None = None,
        gen_images: Sequence[Element] | None = None,
    ):
        self.source = source
        self.target = target
        self._rule = rule
        self.name = name or "hom"
        self.presentation = presentation
        self.gen_images = tuple(gen_images) if gen_images is not None else None
        if presentation is not None:
            if self.gen_images is None:
                raise InvalidHomomorphismError(
                    f"{self.name}: presentation given without generator images"
                )
            if len(self.gen_images) != presentation.num_generators:
                raise InvalidHomomorphismError(
                    f"{self.name}: expected {presentation.num_generators} images"
                )
            ident = target.identity()
            for rel in presentation.relators:
                image = evaluate_word(self.gen_images, rel)
                if image != ident:
                    raise InvalidHomomorphismError(
                        f"{self.name}: relator {rel} maps to "
                        f"{target.format_value(image.value)}, not the identity"
                    )

    def __call__(self, g: Element) -> Element:
        if g.group != self.source:
            raise GroupMismatchError(
                f"{self.name}: element of {g.group.descriptor} is not in "
                f"source {self.source.descriptor}"
            )
        image = self._rule(g)
        if image.group != self.target:
            raise InvalidHomomorphismError(
                f"{self.name}: rule returned element of {image.group.descriptor}"
            )
        return image

    def validate_on_carrier(self, carrier: Sequence[Element]) -> bool:
        """Check f(gh) = f(g)f(h) over all pairs from the carrier."""
        images = {g.value: self(g) for g in carrier}
        for g in carrier:
            for h in carrier:
                if images[g.value] * images[h.value] != self(g * h):
                    return False
        return True

    def kernel_contains(self, g: Element) -> bool:
        return self(g) == self.target.identity()
