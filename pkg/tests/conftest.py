"""Shared representation fixtures used across the suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from leaftype import Representation, SurfacePresentation
from leaftype.scalars import ExponentScalar, GaussianRational
from leaftype.targets import MoebiusElement


def moebius(a, b, c, d) -> MoebiusElement:
    return MoebiusElement.of(a, b, c, d)


def rational(p, q=1) -> ExponentScalar:
    return ExponentScalar.rational(Fraction(p, q))


def symbol(name: str, coeff=1) -> ExponentScalar:
    return ExponentScalar.symbol(name, coeff)


def circle_rep(n: int, exponents) -> Representation:
    return Representation.circle_from_exponents(
        SurfacePresentation(0, n), list(exponents)
    )


@pytest.fixture
def free_rank_two_rep() -> Representation:
    """Genus-3 suspension with two unipotent generators (Cantor-type cover)."""
    pres = SurfacePresentation(3, 0)
    ident = MoebiusElement.identity()
    images = {g: ident for g in pres.free_gens}
    images["a1"] = moebius(1, 2, 0, 1)
    images["a2"] = moebius(1, 0, 2, 1)
    return Representation(pres, "moebius", images)


@pytest.fixture
def genus2_free_rep() -> Representation:
    """Genus-2 suspension with two unipotent generators (tree-type cover)."""
    pres = SurfacePresentation(2, 0)
    ident = MoebiusElement.identity()
    images = {g: ident for g in pres.free_gens}
    images["a1"] = moebius(1, 2, 0, 1)
    images["a2"] = moebius(1, 0, 2, 1)
    return Representation(pres, "moebius", images)


@pytest.fixture
def translation_rep() -> Representation:
    """Genus-2 suspension with a single translation generator (ladder cover)."""
    pres = SurfacePresentation(2, 0)
    ident = MoebiusElement.identity()
    images = {g: ident for g in pres.free_gens}
    images["a1"] = moebius(1, 1, 0, 1)
    return Representation(pres, "moebius", images)


@pytest.fixture
def log3_case1() -> Representation:
    """Three-puncture circle holonomy with exponents (t, 1, -t): planar cover."""
    t = symbol("t")
    return circle_rep(3, [t, rational(1), -t])


@pytest.fixture
def log3_case2() -> Representation:
    """Exponents (t, 1/2, 1/2 - t): infinite-genus cover with discrete ends."""
    t = symbol("t")
    return circle_rep(3, [t, rational(1, 2), rational(1, 2) - t])


@pytest.fixture
def log3_case3() -> Representation:
    """Exponents (t1, t2, 1 - t1 - t2): one-ended infinite-genus cover."""
    t1, t2 = symbol("t1"), symbol("t2")
    return circle_rep(3, [t1, t2, rational(1) - t1 - t2])
