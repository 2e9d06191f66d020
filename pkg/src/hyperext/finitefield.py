"""Reduction modulo ``p``, good primes and finite-field point counts.

Counting points of ``F_p^d`` off the hyperplanes of ``A_p`` evaluates
``chi(A, p)`` at good primes, which makes the counts an independent oracle
for the whole lattice pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np
import structlog
from sympy import Poly, isprime, nextprime

from hyperext.adjoint import induced_adjoint
from hyperext.arrangement import (
    Arrangement,
    Degeneracy,
    build_semilattice,
    char_poly,
    restriction,
    t,
)
from hyperext.exactq import GF, Hyperplane
from hyperext.extension import classify_extensions, extend, extend_by
from hyperext.isomorphism import poset_isomorphic

log = structlog.get_logger()

DEFAULT_BUDGET = 10_000_000

PrimeArrangement = Arrangement
"""An :class:`Arrangement` whose field is ``GF(p)``."""


class BadPrime(ValueError):
    """Reduction modulo ``p`` changes the arrangement."""

    def __init__(self, p: int, reason: str):
        super().__init__(f"p={p}: {reason}")
        self.p = p
        self.reason = reason


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more points than allowed."""

    def __init__(self, requested: int, allowed: int):
        super().__init__(f"{requested} points requested, budget is {allowed}")
        self.requested = requested
        self.allowed = allowed


def reduce_mod_p(arrangement: Arrangement, p: int) -> PrimeArrangement:
    """Reduce the primitive integer data of every hyperplane modulo ``p``.

    Raises:
        BadPrime: If ``p`` is not prime, a normal vanishes or two hyperplanes
            collide modulo ``p``.
    """
    if arrangement.field.is_prime:
        raise ValueError(f"arrangement is already over {arrangement.field}")
    if not isprime(p):
        raise BadPrime(p, "not a prime")
    fld = GF(p)
    reduced = []
    seen: dict[Hyperplane, int] = {}
    for label, h in zip(arrangement.labels, arrangement.hyperplanes):
        alpha, a = h.integer_data()
        hp = Hyperplane(fld.vector(alpha), fld.coerce(a), fld).canonicalize()
        if hp.is_degenerate:
            raise BadPrime(p, f"normal of hyperplane {label} vanishes")
        if hp in seen and not arrangement.multi:
            raise BadPrime(p, f"hyperplanes {seen[hp]} and {label} collide")
        seen.setdefault(hp, label)
        reduced.append(hp)
    return Arrangement(
        arrangement.dim, tuple(reduced), arrangement.labels, fld, arrangement.degeneracy, arrangement.multi
    )


@dataclass
class GoodPrimeCertificate:
    """Lattice isomorphisms that certify ``p`` for an arrangement."""

    p: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _same_lattice(rational: Arrangement, p: int) -> bool:
    try:
        reduced = reduce_mod_p(rational, p)
    except BadPrime:
        return False
    return poset_isomorphic(build_semilattice(rational), build_semilattice(reduced))


def certify(arrangement: Arrangement, p: int) -> GoodPrimeCertificate:
    """Check ``L(A)``, ``L(Ã)`` and every stratum extension modulo ``p``."""
    cert = GoodPrimeCertificate(p)
    cert.checks["L(A)"] = _same_lattice(arrangement, p)
    if cert.ok and arrangement.is_essential:
        cert.checks["L(Ã)"] = _same_lattice(induced_adjoint(arrangement).induced, p)
        if cert.ok:
            for stratum in classify_extensions(arrangement).strata:
                if stratum.degeneracy is Degeneracy.NONE:
                    extended = extend_by(arrangement, stratum.representative)
                    cert.checks[f"stratum {stratum.index}"] = _same_lattice(extended, p)
    return cert


def good_prime(arrangement: Arrangement, floor: int = 2) -> tuple[int, GoodPrimeCertificate]:
    """Smallest prime ``>= floor`` whose certificate passes."""
    p = floor if isprime(floor) else int(nextprime(floor))
    while True:
        cert = certify(arrangement, p)
        if cert.ok:
            log.info("good prime", p=p, checks=len(cert.checks))
            return p, cert
        failed = [name for name, ok in cert.checks.items() if not ok]
        log.debug("prime rejected", p=p, failed=failed)
        p = int(nextprime(p))


def _chunks(p: int, n: int) -> Iterator[np.ndarray]:
    """All points of ``F_p^n`` in blocks sharing the leading coordinate."""
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    if n == 1:
        yield np.arange(p, dtype=np.int64).reshape(-1, 1)
        return
    axes = np.meshgrid(*([np.arange(p, dtype=np.int64)] * (n - 1)), indexing="ij")
    tail = np.stack(axes, axis=-1).reshape(-1, n - 1)
    for lead in range(p):
        yield np.hstack([np.full((len(tail), 1), lead, dtype=np.int64), tail])


def _data(arrangement: PrimeArrangement) -> tuple[int, np.ndarray, np.ndarray]:
    p = arrangement.field.modulus
    if p is None:
        raise ValueError("point counting needs an arrangement over GF(p)")
    normals = np.zeros((len(arrangement), arrangement.dim), dtype=np.int64)
    for k, h in enumerate(arrangement.hyperplanes):
        normals[k] = [int(v) for v in h.normal]
    offsets = np.array([int(h.offset) for h in arrangement.hyperplanes], dtype=np.int64)
    return p, normals, offsets


def _check_budget(p: int, n: int, budget: int) -> None:
    if p**n > budget:
        raise BudgetExceeded(p**n, budget)


def _stratum_blocks(
    arrangement: PrimeArrangement, inside: Sequence[int], budget: int
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(points, selected)`` blocks; ``selected`` marks the stratum points."""
    p, normals, offsets = _data(arrangement)
    _check_budget(p, arrangement.dim, budget)
    positions = {lab: k for k, lab in enumerate(arrangement.labels)}
    on = [positions[lab] for lab in inside]
    off = [k for k in range(len(arrangement)) if k not in set(on)]
    for points in _chunks(p, arrangement.dim):
        zeros = (points @ normals.T - offsets) % p == 0
        selected = zeros[:, on].all(axis=1) & ~zeros[:, off].any(axis=1)
        yield points, selected


def count_points(arrangement: PrimeArrangement, inside: Sequence[int] = (), budget: int = DEFAULT_BUDGET) -> int:
    """Points on every hyperplane labelled in ``inside`` and on no other member.

    Raises:
        BudgetExceeded: If ``p^d`` exceeds ``budget``.
    """
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        _check_budget(arrangement.field.modulus or 0, arrangement.dim, budget)
        return 0
    return int(sum(int(selected.sum()) for _, selected in _stratum_blocks(arrangement, inside, budget)))


def count_complement(arrangement: PrimeArrangement, budget: int = DEFAULT_BUDGET) -> int:
    """``#(F_p^d minus the union of A_p)``, equal to ``chi(A, p)`` for good ``p``."""
    return count_points(arrangement, (), budget)


def omega_count(arrangement: PrimeArrangement, budget: int = DEFAULT_BUDGET) -> int:
    """``#{((alpha, a), x) : x in M(A_p + H_{alpha,a})}`` by direct enumeration.

    Raises:
        BudgetExceeded: If ``p^(2d+1)`` exceeds ``budget``.
    """
    p = arrangement.field.modulus
    if p is None:
        raise ValueError("point counting needs an arrangement over GF(p)")
    d = arrangement.dim
    _check_budget(p, 2 * d + 1, budget)
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return 0
    complement = np.vstack([points[selected] for points, selected in _stratum_blocks(arrangement, (), budget)])
    if not len(complement):
        return 0
    total = 0
    for data in _chunks(p, d + 1):
        alphas, offsets = data[:, :d], data[:, d]
        total += int(np.count_nonzero((alphas @ complement.T - offsets[:, None]) % p))
    return total


class ConvolutionCheck(NamedTuple):
    lhs: Poly
    rhs: Poly
    equal: bool


def verify_convolution(arrangement: Arrangement) -> ConvolutionCheck:
    """``sum_X chi(Ã/X, t) chi(X, t)`` against ``t^d (t - 1) chi(A, t)``.

    ``chi(X, t)`` is the characteristic polynomial of ``A`` extended by the
    representative of the stratum ``X``.
    """
    d = arrangement.dim
    induced = induced_adjoint(arrangement).induced
    lhs = Poly(0, t, domain="ZZ")
    for stratum in classify_extensions(arrangement).strata:
        chi_x = char_poly(extend_by(arrangement, stratum.representative))
        lhs += char_poly(restriction(induced, stratum.flat)) * chi_x
    rhs = Poly(t**d * (t - 1), t, domain="ZZ") * char_poly(arrangement)
    equal = lhs == rhs
    if not equal:
        log.warning("convolution identity failed", lhs=str(lhs.as_expr()), rhs=str(rhs.as_expr()))
    return ConvolutionCheck(lhs, rhs, equal)


def spot_check_size(arrangement: Arrangement, p: int) -> int:
    """Points the spot check must enumerate at ``p``.

    Essential arrangements need ``p^(d+1)`` for the strata census; the others
    only have ``Omega``, which needs ``p^(2d+1)``.
    """
    d = arrangement.dim
    return p ** (d + 1) if arrangement.is_essential else p ** (2 * d + 1)


@dataclass(frozen=True)
class SpotCheck:
    """Both sides of the convolution identity evaluated by counting at ``q = p``.

    ``strata_sum`` is ``None`` for non-essential arrangements, which have no
    induced adjoint. ``omega`` is ``None`` when its ``p^(2d+1)`` enumeration
    does not fit the budget. At least one of them is always present.
    """

    p: int
    strata_sum: Optional[int]
    omega: Optional[int]
    rhs: int

    @property
    def equal(self) -> bool:
        return self.omega in (None, self.rhs) and self.strata_sum in (None, self.rhs)

    def __bool__(self) -> bool:
        return self.equal


def _strata_census(induced: PrimeArrangement, budget: int) -> dict[tuple[bool, ...], tuple[int, tuple[int, ...]]]:
    """Group ``F_p^(d+1)`` by the set of members of ``Ã_p`` through each point.

    Every group is one stratum ``M(Ã_p/X)``; the value is its size and its
    first point.
    """
    p, normals, offsets = _data(induced)
    _check_budget(p, induced.dim, budget)
    census: dict[tuple[bool, ...], tuple[int, tuple[int, ...]]] = {}
    for points in _chunks(p, induced.dim):
        zeros = (points @ normals.T - offsets) % p == 0
        keys, first, counts = np.unique(zeros, axis=0, return_index=True, return_counts=True)
        for row, k, n in zip(keys, first, counts):
            key = tuple(bool(v) for v in row)
            size, point = census.get(key, (0, tuple(int(v) for v in points[k])))
            census[key] = (size + int(n), point)
    return census


def ff_convolution_spot_check(arrangement: Arrangement, p: int, budget: int = DEFAULT_BUDGET) -> SpotCheck:
    """Count ``sum_X #M(Ã_p/X) #M(A_p + H_X)``, ``Omega`` and ``q^d (q-1) #M(A_p)``.

    The strata sum needs ``p^(d+1)`` points; ``Omega`` is added only when
    ``p^(2d+1)`` fits ``budget`` too.

    Raises:
        BadPrime: If reduction modulo ``p`` fails.
        BudgetExceeded: If :func:`spot_check_size` exceeds ``budget``.
    """
    d = arrangement.dim
    if spot_check_size(arrangement, p) > budget:
        raise BudgetExceeded(spot_check_size(arrangement, p), budget)
    reduced = reduce_mod_p(arrangement, p)
    rhs = p**d * (p - 1) * count_complement(reduced, budget)
    omega = omega_count(reduced, budget) if p ** (2 * d + 1) <= budget else None

    strata_sum = None
    if arrangement.is_essential:
        induced = reduce_mod_p(induced_adjoint(arrangement).induced, p)
        strata_sum = 0
        for size, point in _strata_census(induced, budget).values():
            strata_sum += size * count_complement(extend(reduced, point[:-1], point[-1]), budget)

    check = SpotCheck(p, strata_sum, omega, rhs)
    log.info("finite-field spot check", p=p, strata_sum=strata_sum, omega=omega, rhs=rhs, equal=check.equal)
    return check
