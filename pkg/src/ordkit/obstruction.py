"""Obstruction spectra: which n make G x Z/n fail to be circularly-orderable.

Finite groups are decided outright (a finite group is circularly-orderable
exactly when it is cyclic).  Infinite groups get certificate-based
bracketing: an exponent certificate from a finite abelianization puts
multiples of the exponent into the spectrum under recorded hypotheses,
and homomorphism certificates with left-orderable kernel evidence keep
individual n out of it.  The Promislow group's spectrum (the multiples of
four) is reproduced end to end at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterable, Sequence

from .groups import (
    Ball,
    CyclicGroup,
    DirectProductGroup,
    Element,
    Group,
    Homomorphism,
    Presentation,
    PROMISLOW_PRESENTATION,
    PromislowGroup,
    ResourceCapError,
    ball,
    element_order,
)
from .orders import (
    CircularOrdering,
    LeftOrdering,
    OrderingTable,
    OutsideCarrierError,
    SESData,
    ValidationReport,
    as_carrier,
    lex_circular,
    natural_circular_cyclic,
    validate_circular,
    validate_left_ordering,
)
from .snf import abelianization

RECORDED_HYPOTHESES = ("countable", "amenable")


# -- torsion ------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionProfile:
    """Realized element orders up to a search cap, each with a witness."""

    group: Group
    cap: int
    orders: tuple[int, ...]
    witnesses: dict[int, Element] = field(hash=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "group": self.group.descriptor,
            "cap": self.cap,
            "orders": list(self.orders),
            "witnesses": {
                str(k): self.witnesses[k].encode() for k in self.orders
            },
        }


def torsion_profile(
    source: Group | Ball, cap: int | None = None
) -> TorsionProfile:
    """Element orders realized in a finite group or within a ball."""
    if isinstance(source, Ball):
        group = source.group
        elems = list(source.elements)
        cap = cap or max(len(elems), 16)
    else:
        group = source
        elems = group.elements()
        cap = cap or group.order
    found: dict[int, Element] = {}
    for g in elems:
        k = element_order(g, cap)
        if k is not None and k not in found:
            found[k] = g
    if 1 not in found:
        found[1] = group.identity()
    return TorsionProfile(group, cap, tuple(sorted(found)), found)


def torsion_part(profile: TorsionProfile, cap: int) -> set[int]:
    """{n in [2, cap] : some realized order k > 1 has gcd(k, n) != 1}."""
    torsion_orders = [k for k in profile.orders if k > 1]
    return {
        n
        for n in range(2, cap + 1)
        if any(gcd(k, n) != 1 for k in torsion_orders)
    }


# -- finite groups -------------------------------------------------------------


def finite_co_decide(group: Group) -> bool:
    """A finite group is circularly-orderable iff it is cyclic."""
    if not group.is_finite:
        raise ValueError(f"{group.descriptor} is not finite")
    order = group.order
    return any(element_order(g, order) == order for g in group.elements())


def brute_force_circular_orders(
    group: Group, cap: int = 8
) -> list[OrderingTable]:
    """All left-invariant circular orderings of a small finite group.

    Enumerates cyclic arrangements with the identity pinned first, keeps
    those whose left translations are all rotations, then confirms each
    survivor with the exhaustive axiom validator.  Sorted canonically.
    """
    if not group.is_finite:
        raise ValueError(f"{group.descriptor} is not finite")
    n = group.order
    if n > cap:
        raise ResourceCapError(
            f"brute force capped at order {cap}, group has order {n}"
        )
    elems = as_carrier(group)
    ident = group.identity()
    others = [g for g in elems if g.value != ident.value]

    tables: list[OrderingTable] = []
    for perm in itertools.permutations(others):
        arrangement = [ident, *perm]
        position = {g.value: idx for idx, g in enumerate(arrangement)}
        ok = True
        for h in others:
            shifted = [position[(h * g).value] for g in arrangement]
            start = shifted[0]
            if any(shifted[i] != (start + i) % n for i in range(n)):
                ok = False
                break
        if not ok:
            continue
        table = OrderingTable.from_arrangement(group, arrangement)
        report = validate_circular(table.ordering(), elems)
        if report.passed:
            tables.append(table)
    return tables


# -- spectrum reports ----------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    """Partition of {2..cap} into obstructed / unobstructed / undetermined."""

    group_label: str
    cap: int
    obstructed: dict[int, dict]
    unobstructed: dict[int, dict]
    undetermined: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        full = set(range(2, self.cap + 1))
        triple = (
            set(self.obstructed),
            set(self.unobstructed),
            set(self.undetermined),
        )
        union = triple[0] | triple[1] | triple[2]
        total = sum(len(part) for part in triple)
        if union != full or total != len(full):
            raise ValueError(
                f"spectrum parts do not partition [2, {self.cap}]"
            )

    @property
    def obstructed_set(self) -> set[int]:
        return set(self.obstructed)

    @property
    def unobstructed_set(self) -> set[int]:
        return set(self.unobstructed)

    @property
    def fully_determined(self) -> bool:
        return not self.undetermined

    def divisibility_closed(self) -> bool:
        """Certified obstructed n must drag every multiple <= cap along."""
        for n in self.obstructed:
            for m in range(2 * n, self.cap + 1, n):
                if m not in self.obstructed:
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "group": self.group_label,
            "cap": self.cap,
            "obstructed": [
                {"n": n, "certificate": self.obstructed[n]}
                for n in sorted(self.obstructed)
            ],
            "unobstructed": [
                {"n": n, "certificate": self.unobstructed[n]}
                for n in sorted(self.unobstructed)
            ],
            "undetermined": sorted(self.undetermined),
            "notes": list(self.notes),
        }


def obstruction_finite(group: Group, cap: int) -> SpectrumReport:
    """Fully determined spectrum of a finite group: n is obstructed exactly
    when G x Z/n is not cyclic."""
    if not group.is_finite:
        raise ValueError(f"{group.descriptor} is not finite")
    order = group.order
    cyclic = finite_co_decide(group)
    profile = torsion_profile(group)
    generator = None
    if cyclic:
        generator = next(
            g for g in group.elements() if element_order(g, order) == order
        )

    obstructed: dict[int, dict] = {}
    unobstructed: dict[int, dict] = {}
    for n in range(2, cap + 1):
        if cyclic and gcd(order, n) == 1:
            unobstructed[n] = {
                "kind": "cyclic-product",
                "product_order": order * n,
                "generator": generator.encode(),
                "note": "G x Z/n is cyclic, hence circularly-orderable",
            }
        elif not cyclic:
            obstructed[n] = {
                "kind": "factor-not-cyclic",
                "note": "G is a non-cyclic finite group, so G x Z/n is "
                "never cyclic and never circularly-orderable",
            }
        else:
            shared = next(
                k
                for k in profile.orders
                if k > 1 and gcd(k, n) != 1
            )
            obstructed[n] = {
                "kind": "torsion",
                "element_order": shared,
                "witness": profile.witnesses[shared].encode(),
                "shared_prime": next(
                    q for q in range(2, shared + 1)
                    if shared % q == 0 and n % q == 0
                ),
            }
    notes = () if cyclic else (
        "the group itself is not circularly-orderable (not cyclic)",
    )
    return SpectrumReport(group.descriptor, cap, obstructed, unobstructed, (), notes)


def free_product_union(reports: Sequence[SpectrumReport]) -> SpectrumReport:
    """Spectrum of the free product: the union of the factors' spectra."""
    if not reports:
        raise ValueError("need at least one factor spectrum")
    cap = reports[0].cap
    for rep in reports:
        if rep.cap != cap:
            raise ValueError("factor spectra have mixed caps")
        if not rep.fully_determined:
            raise ValueError("factor spectra must be fully determined")
    obstructed: dict[int, dict] = {}
    unobstructed: dict[int, dict] = {}
    for n in range(2, cap + 1):
        sources = [
            (i, rep.obstructed[n])
            for i, rep in enumerate(reports)
            if n in rep.obstructed
        ]
        if sources:
            i, certificate = sources[0]
            obstructed[n] = {
                "kind": "free-factor",
                "factor": i,
                "factor_group": reports[i].group_label,
                "certificate": certificate,
            }
        else:
            unobstructed[n] = {
                "kind": "all-factors-unobstructed",
                "factors": [rep.group_label for rep in reports],
            }
    label = "free-product(" + ", ".join(r.group_label for r in reports) + ")"
    return SpectrumReport(label, cap, obstructed, unobstructed)


def monotonicity_check(
    hom: Homomorphism,
    kernel_evidence: "LeftOrderEvidence | str",
    rep_source: SpectrumReport,
    rep_target: SpectrumReport,
    carrier: Iterable[Element] | None = None,
) -> ValidationReport:
    """Cross-validate two spectra against a homomorphism with left-orderable
    kernel: the source's obstructed set must sit inside the target's.

    A failure here means one of the input certificates is wrong, not new
    mathematics.
    """
    if rep_source.cap != rep_target.cap:
        raise ValueError("spectra have different caps")
    elems = (
        as_carrier(carrier)
        if carrier is not None
        else as_carrier(hom.source)
    )
    checked = 0
    if kernel_evidence == "trivial-kernel":
        seen: dict[Any, Element] = {}
        for g in elems:
            checked += 1
            img = hom(g)
            if img.value in seen:
                return ValidationReport(
                    "monotonicity-check",
                    "fail",
                    checked,
                    {
                        "kind": "kernel-evidence",
                        "tuple": [seen[img.value].encode(), g.encode()],
                        "note": "claimed trivial kernel is not injective",
                    },
                )
            seen[img.value] = g
    else:
        kernel_part = [g for g in elems if hom.kernel_contains(g)]
        report = validate_left_ordering(kernel_evidence.order, kernel_part)
        checked += report.checked_tuples
        if not report.passed:
            return ValidationReport(
                "monotonicity-check",
                "fail",
                checked,
                {"kind": "kernel-evidence", **(report.counterexample or {})},
            )
    missing = sorted(rep_source.obstructed_set - rep_target.obstructed_set)
    checked += rep_source.cap - 1
    if missing:
        return ValidationReport(
            "monotonicity-check",
            "fail",
            checked,
            {
                "kind": "inclusion",
                "missing": missing,
                "note": "obstructed values of the source absent from the target",
            },
        )
    return ValidationReport("monotonicity-check", "pass", checked, None)


# -- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class LeftOrderEvidence:
    """Left-orderability evidence: a named poly-Z chain or an explicit cone."""

    kind: str  # "poly-z-chain" | "cone-table"
    order: LeftOrdering
    generators: tuple[Element, ...] = ()
    description: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generators": [g.encode() for g in self.generators],
            "description": self.description,
        }


@dataclass(frozen=True)
class UnobstructedCertificate:
    """Keeps one n out of a spectrum: a homomorphism into a cyclic group
    whose order-n subgroup pulls back to a left-orderable subgroup."""

    n: int
    hom: Homomorphism
    subgroup_generator: Element
    kernel_evidence: LeftOrderEvidence
    hypotheses: tuple[str, ...] = RECORDED_HYPOTHESES
    description: str = ""

    def summary(self) -> dict:
        return {
            "kind": "cyclic-quotient",
            "n": self.n,
            "target": self.hom.target.descriptor,
            "hom": self.hom.name,
            "subgroup_generator": self.subgroup_generator.encode(),
            "kernel_evidence": self.kernel_evidence.to_dict(),
            "hypotheses": list(self.hypotheses),
            "hypotheses_verified": False,
            "description": self.description,
        }


def verify_unobstructed(
    cert: UnobstructedCertificate,
    carrier: Ball | Group | Iterable[Element],
    *,
    chain_radius: int = 6,
) -> dict:
    """Validate an unobstructed certificate at desk scale.

    Checks, on the supplied carrier of the source group: the target is
    cyclic and the designated subgroup has order exactly n; the combined
    map (g, t) -> hom(g) + t * generator witnesses surjectivity onto the
    target; and the kernel evidence validates as a left ordering on the
    preimage of the subgroup.  Amenability and countability stay recorded,
    unchecked hypotheses.
    """
    elems = as_carrier(carrier)
    target = cert.hom.target
    checks: list[dict] = []

    def add(name: str, passed: bool, detail: dict | None = None) -> None:
        checks.append(
            {"name": name, "status": "pass" if passed else "fail",
             **({"detail": detail} if detail else {})}
        )

    cyclic_target = isinstance(target, CyclicGroup)
    add("target-cyclic", cyclic_target, {"target": target.descriptor})
    if cyclic_target:
        h_order = element_order(cert.subgroup_generator, target.order)
        add(
            "subgroup-order",
            h_order == cert.n,
            {"expected": cert.n, "got": h_order},
        )
        subgroup_values = set()
        power = target.identity()
        for _ in range(cert.n):
            subgroup_values.add(power.value)
            power = power * cert.subgroup_generator

        images = set()
        for g in elems:
            base = cert.hom(g).value
            for t in range(cert.n):
                images.add(
                    (base + t * cert.subgroup_generator.value) % target.order
                )
        add(
            "composed-surjectivity",
            images == set(range(target.order)),
            {"witnessed": len(images), "needed": target.order},
        )

        preimage = [g for g in elems if cert.hom(g).value in subgroup_values]
        evidence_report = validate_left_ordering(
            cert.kernel_evidence.order, preimage
        )
        add(
            "kernel-evidence",
            evidence_report.passed,
            {
                "carrier_size": len(preimage),
                "counterexample": evidence_report.counterexample,
            },
        )

        if cert.kernel_evidence.kind == "poly-z-chain":
            gens = cert.kernel_evidence.generators
            ok = True
            detail: dict | None = None
            for i in range(1, len(gens)):
                lower = ball(gens[:i], chain_radius)
                for j in range(i, len(gens)):
                    conj = gens[j] * gens[i - 1] * ~gens[j]
                    if conj not in lower:
                        ok = False
                        detail = {
                            "conjugator": gens[j].encode(),
                            "generator": gens[i - 1].encode(),
                            "note": "conjugate left the lower chain ball",
                        }
                        break
                if not ok:
                    break
            add("poly-z-chain-normality", ok, detail)

    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {
        "schema": 1,
        "n": cert.n,
        "status": status,
        "verdict": (
            "unobstructed-under-recorded-hypotheses"
            if status == "pass"
            else "certificate-rejected"
        ),
        "hypotheses": list(cert.hypotheses),
        "hypotheses_verified": False,
        "checks": checks,
        "certificate": cert.summary(),
    }


def exponent_obstruction(
    presentation: Presentation,
) -> tuple[int | None, dict]:
    """Exponent of a finite abelianization, recorded as an obstruction.

    Returns (e, record): e is the largest invariant factor when the
    abelianization is finite, else None with a not-applicable record.  The
    obstruction conclusion carries its unchecked hypotheses explicitly.
    """
    result = abelianization(presentation)
    if not result.is_finite:
        return None, {
            "kind": "not-applicable",
            "invariant_factors": list(result.invariant_factors),
            "note": "abelianization is infinite; the exponent argument "
            "does not apply",
        }
    e = result.exponent
    record = {
        "kind": "abelianization-exponent",
        "exponent": e,
        "invariant_factors": list(result.invariant_factors),
        "hypotheses": [
            "finitely generated",
            "amenable",
            "circularly-orderable",
        ],
        "hypotheses_verified": False,
        "conclusion": f"{e} lies in the obstruction spectrum under the "
        "recorded hypotheses",
    }
    return e, record


# -- the Promislow worked example ----------------------------------------------


def promislow_phi() -> Homomorphism:
    """phi: G -> Z/2, a -> 1, b -> 0 (a-exponent mod 2)."""
    group = PromislowGroup()
    target = CyclicGroup(2)
    return Homomorphism(
        group,
        target,
        lambda g: Element(target, group.phi2_value(g.value)),
        name="phi",
        presentation=PROMISLOW_PRESENTATION,
        gen_images=[Element(target, 1), Element(target, 0)],
    )


def promislow_psi() -> Homomorphism:
    """psi: G -> Z/4, the abelianization followed by the a-factor."""
    group = PromislowGroup()
    target = CyclicGroup(4)
    return Homomorphism(
        group,
        target,
        lambda g: Element(target, group.psi4_value(g.value)),
        name="psi",
        presentation=PROMISLOW_PRESENTATION,
        gen_images=[Element(target, 1), Element(target, 0)],
    )


def promislow_product_c2() -> DirectProductGroup:
    return DirectProductGroup(PromislowGroup(), CyclicGroup(2))


def promislow_beta() -> Homomorphism:
    """beta: G x Z/2 -> Z/4, (g, t) -> psi(g) + 2t."""
    group = PromislowGroup()
    prod = promislow_product_c2()
    target = CyclicGroup(4)
    return Homomorphism(
        prod,
        target,
        lambda u: Element(
            target, (group.psi4_value(u.value[0]) + 2 * u.value[1]) % 4
        ),
        name="beta",
    )


def promislow_kernel_order() -> LeftOrdering:
    """Left order on ker(phi) via poly-Z coordinates in a^2, (ab)^2, b.

    An element of the kernel factors uniquely as (a^2)^x ((ab)^2)^w b^j;
    the cone takes the topmost nonzero coordinate (j, then w, then x)
    positive.
    """
    group = PromislowGroup()

    def positive(g: Element) -> bool:
        try:
            x, w, j = group.kernel_coords(g.value)
        except ValueError as exc:
            raise OutsideCarrierError(str(exc)) from exc
        if j != 0:
            return j > 0
        if w != 0:
            return w > 0
        return x > 0

    return LeftOrdering(
        group, "poly-z-lex", positive, "chain a^2 < (ab)^2 < b on ker(phi)"
    )


def promislow_kernel_evidence() -> LeftOrderEvidence:
    group = PromislowGroup()
    a, b = group.gen_a(), group.gen_b()
    return LeftOrderEvidence(
        kind="poly-z-chain",
        order=promislow_kernel_order(),
        generators=(a * a, (a * b) * (a * b), b),
        description="ker(phi) = <a^2, (ab)^2> x| <b>, poly-Z of length 3",
    )


def promislow_ses() -> SESData:
    """1 -> ker(phi) -> G -> Z/2 -> 1 with the poly-Z kernel order."""
    phi = promislow_phi()
    return SESData(
        group=phi.source,
        quotient=phi.target,
        projection=phi,
        kernel_order=promislow_kernel_order(),
        quotient_ordering=natural_circular_cyclic(2, 1),
    )


def promislow_circular() -> CircularOrdering:
    """The lexicographic circular ordering that makes G circularly ordered."""
    return lex_circular(promislow_ses())


def promislow_product_c2_circular() -> CircularOrdering:
    """The circular ordering on G x Z/2 promised by the n = 2 certificate.

    Lexicographic over beta: G x Z/2 -> Z/4, with the kernel ordered by
    pulling the poly-Z order back through the projection (g, t) -> g.
    """
    beta = promislow_beta()
    kernel = promislow_kernel_order()
    prod = beta.source
    group = PromislowGroup()
    kernel_order = LeftOrdering(
        prod,
        "poly-z-lex",
        lambda u: kernel.positive(Element(group, u.value[0])),
        "pullback of the ker(phi) order through the factor projection",
    )
    ses = SESData(
        group=prod,
        quotient=beta.target,
        projection=beta,
        kernel_order=kernel_order,
        quotient_ordering=natural_circular_cyclic(4, 1),
    )
    return lex_circular(ses)


def promislow_unobstructed_certificate(n: int) -> UnobstructedCertificate:
    """Certificate that n (not a multiple of 4) stays out of the spectrum.

    Odd n: embed the phi image Z/2 into Z/2n.  n = 2 mod 4: embed the psi
    image Z/4 into Z/2n.  Either way the order-n subgroup of Z/2n pulls
    back to ker(phi), covered by the poly-Z evidence.
    """
    if n < 2 or n % 4 == 0:
        raise ValueError(f"no unobstructed certificate for n = {n}")
    group = PromislowGroup()
    target = CyclicGroup(2 * n)
    if n % 2 == 1:
        scale = n  # Z/2 -> Z/2n, 1 -> n
        base = promislow_phi()
        description = f"(phi x id): G x Z/{n} -> Z/2 x Z/{n} = Z/{2 * n}"
    else:
        scale = n // 2  # Z/4 -> Z/2n = Z/4m with m = n/2 odd, 1 -> m
        base = promislow_psi()
        description = (
            f"(psi-based beta x id): G x Z/{n} -> Z/4 x Z/{n // 2} = Z/{2 * n}"
        )
    hom = Homomorphism(
        group,
        target,
        lambda g: Element(target, (scale * base(g).value) % (2 * n)),
        name=f"{base.name}-into-{target.descriptor}",
        presentation=PROMISLOW_PRESENTATION,
        gen_images=[
            Element(target, scale * base.gen_images[0].value % (2 * n)),
            Element(target, scale * base.gen_images[1].value % (2 * n)),
        ],
    )
    return UnobstructedCertificate(
        n=n,
        hom=hom,
        subgroup_generator=Element(target, 2),
        kernel_evidence=promislow_kernel_evidence(),
        description=description,
    )


def promislow_alpha_check(radius: int = 4) -> dict:
    """Certify alpha: ker(beta) -> ker(phi), (g, t) -> g, bijectively on balls.

    Injectivity and the homomorphism law are checked on the kernel part of
    a product ball; surjectivity is witnessed by the explicit section
    g -> (g, psi(g)/2) over the kernel part of the factor ball.
    """
    group = PromislowGroup()
    phi = promislow_phi()
    beta = promislow_beta()
    prod = beta.source
    a, b = group.gen_a(), group.gen_b()
    ball_g = ball([a, b], radius)
    ball_prod = ball(
        [prod.pair(a, CyclicGroup(2).element(0)),
         prod.pair(b, CyclicGroup(2).element(0)),
         prod.pair(group.identity(), CyclicGroup(2).element(1))],
        radius,
    )
    kernel_beta = [u for u in ball_prod if beta.kernel_contains(u)]
    kernel_phi = [g for g in ball_g if phi.kernel_contains(g)]

    checks: list[dict] = []

    def alpha(u: Element) -> Element:
        return Element(group, u.value[0])

    seen: dict[Any, Element] = {}
    injective = True
    for u in kernel_beta:
        img = alpha(u)
        if img.value in seen:
            injective = False
            break
        seen[img.value] = u
    checks.append(
        {"name": "alpha-injective", "status": "pass" if injective else "fail",
         "cases": len(kernel_beta)}
    )

    into = all(phi.kernel_contains(alpha(u)) for u in kernel_beta)
    checks.append(
        {"name": "alpha-into-kernel", "status": "pass" if into else "fail",
         "cases": len(kernel_beta)}
    )

    hom_ok = all(
        alpha(u * v) == alpha(u) * alpha(v)
        for u, v in itertools.product(kernel_beta, repeat=2)
    )
    checks.append(
        {"name": "alpha-homomorphism", "status": "pass" if hom_ok else "fail",
         "cases": len(kernel_beta) ** 2}
    )

    psi = promislow_psi()
    section_ok = True
    for g in kernel_phi:
        t = psi(g).value // 2
        u = prod.pair(g, CyclicGroup(2).element(t))
        if not beta.kernel_contains(u) or alpha(u) != g:
            section_ok = False
            break
    checks.append(
        {"name": "alpha-section-onto", "status": "pass" if section_ok else "fail",
         "cases": len(kernel_phi),
         "note": "two-sided inverse witnessed on the factor ball"}
    )

    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {
        "schema": 1,
        "radius": radius,
        "status": status,
        "kernel_sizes": {"beta": len(kernel_beta), "phi": len(kernel_phi)},
        "checks": checks,
    }


def promislow_worked_example(radius: int = 4) -> dict:
    """End-to-end desk reproduction of the Promislow computation."""
    group = PromislowGroup()
    a, b = group.gen_a(), group.gen_b()
    checks: list[dict] = []

    def add(name: str, passed: bool, detail: Any = None) -> None:
        entry = {"name": name, "status": "pass" if passed else "fail"}
        if detail is not None:
            entry["detail"] = detail
        checks.append(entry)

    rel1 = a * b * b * ~a * b * b
    rel2 = b * a * a * ~b * a * a
    add(
        "relators-vanish",
        rel1.is_identity and rel2.is_identity,
        {"rel1": rel1.encode(), "rel2": rel2.encode()},
    )

    squares = {
        "a^2": (a * a).value,
        "b^2": (b * b).value,
        "(ab)^2": ((a * b) * (a * b)).value,
    }
    from fractions import Fraction

    expected_squares = {
        "a^2": ((1, 1, 1), (Fraction(1), Fraction(0), Fraction(0))),
        "b^2": ((1, 1, 1), (Fraction(0), Fraction(1), Fraction(0))),
        "(ab)^2": ((1, 1, 1), (Fraction(0), Fraction(0), Fraction(-1))),
    }
    add("squares-are-translations", squares == expected_squares)

    ab_result = abelianization(PROMISLOW_PRESENTATION)
    add(
        "abelianization",
        ab_result.invariant_factors == (4, 4) and ab_result.exponent == 4,
        {
            "invariant_factors": list(ab_result.invariant_factors),
            "exponent": ab_result.exponent,
        },
    )

    carrier = ball([a, b], radius)
    phi, psi, beta = promislow_phi(), promislow_psi(), promislow_beta()
    add("phi-homomorphism", phi.validate_on_carrier(list(carrier)))
    add("psi-homomorphism", psi.validate_on_carrier(list(carrier)))

    prod = beta.source
    c2 = CyclicGroup(2)
    prod_carrier = ball(
        [prod.pair(a, c2.element(0)), prod.pair(b, c2.element(0)),
         prod.pair(group.identity(), c2.element(1))],
        radius,
    )
    add("beta-homomorphism", beta.validate_on_carrier(list(prod_carrier)))

    alpha_report = promislow_alpha_check(radius)
    add("alpha-bijective-on-ball", alpha_report["status"] == "pass",
        alpha_report["kernel_sizes"])

    kernel = [g for g in carrier if phi.kernel_contains(g)]
    kernel_report = validate_left_ordering(promislow_kernel_order(), kernel)
    add(
        "kernel-order-validates",
        kernel_report.passed,
        {"carrier_size": len(kernel)},
    )

    # index-2 and ball-generation evidence for ker(phi) = <b, a^2, (ab)^2>
    cosets = {phi(g).value for g in carrier}
    gen_ball = ball([a * a, (a * b) * (a * b), b], 2 * radius)
    generated = all(g in gen_ball for g in kernel)
    add(
        "kernel-index-2-and-generated",
        cosets == {0, 1} and generated,
        {"kernel_size": len(kernel)},
    )

    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {
        "schema": 1,
        "radius": radius,
        "status": status,
        "checks": checks,
        "alpha": alpha_report,
    }


def promislow_spectrum(cap: int, radius: int = 3) -> SpectrumReport:
    """The Promislow group's spectrum up to cap: the multiples of four.

    Multiples of four are obstructed through the abelianization exponent
    (4) and divisibility closure; everything else carries a verified
    unobstructed certificate.  Certificates that fail verification would
    land in undetermined rather than being asserted.
    """
    if cap < 2:
        raise ValueError(f"cap must be >= 2, got {cap}")
    e, exponent_record = exponent_obstruction(PROMISLOW_PRESENTATION)
    assert e == 4, "Promislow abelianization exponent must be 4"
    group = PromislowGroup()
    carrier = ball([group.gen_a(), group.gen_b()], radius)

    obstructed: dict[int, dict] = {}
    unobstructed: dict[int, dict] = {}
    undetermined: list[int] = []
    for n in range(2, cap + 1):
        if n % 4 == 0:
            if n == 4:
                obstructed[n] = exponent_record
            else:
                obstructed[n] = {
                    "kind": "divisibility-closure",
                    "divisor": 4,
                    "base_certificate": "abelianization-exponent",
                }
        else:
            cert = promislow_unobstructed_certificate(n)
            verification = verify_unobstructed(cert, carrier)
            if verification["status"] == "pass":
                unobstructed[n] = {
                    **cert.summary(),
                    "verification": {
                        "status": "pass",
                        "checks": [c["name"] for c in verification["checks"]],
                    },
                }
            else:
                undetermined.append(n)
    return SpectrumReport(
        "promislow",
        cap,
        obstructed,
        unobstructed,
        tuple(undetermined),
        notes=(
            "obstructed certificates rely on recorded hypotheses "
            "(finitely generated, amenable, circularly-orderable)",
        ),
    )


# -- spectra for other builtin descriptors ---------------------------------------


def left_orderable_spectrum(
    lo: LeftOrdering,
    cap: int,
    carrier: Ball | Group | Iterable[Element],
) -> SpectrumReport:
    """Empty spectrum of a left-orderable group, with the cone validated once."""
    report = validate_left_ordering(lo, carrier)
    if not report.passed:
        raise ValueError(f"left ordering failed validation: {report.counterexample}")
    unobstructed = {
        n: {
            "kind": "left-orderable-lex",
            "note": "a left order on G makes every G x Z/n circularly-orderable "
            "via the lexicographic construction",
            "cone_validated_on": len(as_carrier(carrier)),
        }
        for n in range(2, cap + 1)
    }
    return SpectrumReport(lo.group.descriptor, cap, {}, unobstructed)


def presentation_spectrum(presentation: Presentation, cap: int) -> SpectrumReport:
    """Bracketing report for a presented group via the exponent certificate."""
    e, record = exponent_obstruction(presentation)
    obstructed: dict[int, dict] = {}
    undetermined: list[int] = []
    for n in range(2, cap + 1):
        if e is not None and n % e == 0:
            obstructed[n] = (
                record
                if n == e
                else {
                    "kind": "divisibility-closure",
                    "divisor": e,
                    "base_certificate": "abelianization-exponent",
                }
            )
        else:
            undetermined.append(n)
    notes = [
        "bracketing only: no unobstructed certificates are derivable from a "
        "bare presentation",
    ]
    if e is None:
        notes.append("abelianization is infinite; exponent argument not applicable")
    else:
        notes.append(
            "obstructed entries hold under recorded hypotheses "
            "(finitely generated, amenable, circularly-orderable)"
        )
    label = "presentation(" + " ".join(presentation.generator_names) + ")"
    return SpectrumReport(label, cap, obstructed, {}, tuple(undetermined), tuple(notes))
