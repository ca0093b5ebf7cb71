"""All-pairs exchange Hamiltonian: exact diagonalization vs partition route.

The Hamiltonian is the class sum of pair exchanges restricted to the spin
sector (one particle per position); the additive constant of the spin-dot
rewriting is fixed to zero by convention and recorded in every report.

The partition route evaluates closed-form Casimir eigenvalues over integer
partitions of the particle number.  Three forms are available:

* ``bose``    -- ``+ (C2/2 - (m/2) C1)``,
* ``fermi``   -- the sign-flipped Bose form,
* ``gentile`` -- the general finite-n form, ``sec(2*pi/(n+1))`` times
  ``(C2/2 - (m/2) C1 - m * sum_J)`` with the sector coupling sum
  ``nu * coupling_j(1)``; its prefactor is singular when ``cos(2*pi/(n+1))``
  vanishes (n = 3), which is reported rather than evaluated.

Each C-eigenvalue comes in the two formula variants of
:mod:`gentile.partitions`.  ``compare_spectra`` matches the exact
diagonalization against the predictions as multisets, inferring the
symmetric-group multiplicity factor per partition and the overall sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .basis import DEFAULT_DIMENSION_CAP, enumerate_basis
from .operators import (
    ComplexOperator,
    class_sum,
    eigensolve_hermitian,
    restrict,
)
from .partitions import Partition, casimir_value, partitions_of, weyl_dimension
from .scalars import GentileOrder, coupling_j

#: Additive constant dropped from the spin-dot rewriting of the Hamiltonian.
CONSTANT_CONVENTION = 0.0

FORMS = ("bose", "fermi", "gentile")


class SingularPrefactorError(ValueError):
    """The finite-n prefactor 1/cos(2*pi/(n+1)) has no value at this order."""


@dataclass(frozen=True)
class CasimirLevel:
    """One predicted level: partition label, energy, and irrep dimension."""

    partition: Partition
    energy: float
    weyl_dim: int


@dataclass(frozen=True)
class SpectrumMatch:
    """Outcome of matching predictions against exact diagonalization."""

    variant: str
    form: str
    sign: int
    max_deviation: float
    factors: dict[Partition, float]
    matched: bool


@dataclass(frozen=True)
class SpectrumReport:
    """Everything one (n, nu, m) run produced."""

    n: int
    nu: int
    m: int
    constant: float
    ed_spectrum: tuple[tuple[float, int], ...]
    casimir: tuple[tuple[str, str, tuple[CasimirLevel, ...]], ...]
    matches: tuple[SpectrumMatch, ...]
    singular_forms: tuple[tuple[str, str], ...] = field(default_factory=tuple)


def build_hamiltonian(
    nu: int,
    m: int,
    order: GentileOrder,
    sector: int = 1,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> ComplexOperator:
    """Class sum of exchanges restricted to the fixed-total sector."""
    if nu < 2:
        raise ValueError(f"need at least two positions, got nu={nu}")
    full = enumerate_basis(nu, m, order, sector=None, cap=cap)
    sector_basis = enumerate_basis(nu, m, order, sector=sector, cap=cap)
    return restrict(class_sum(full), full, sector_basis).op


def spectrum_ed(hamiltonian: ComplexOperator) -> list[tuple[float, int]]:
    """Clustered ascending spectrum; rejects non-Hermitian input."""
    return eigensolve_hermitian(hamiltonian)


def spectrum_casimir(
    nu: int,
    m: int,
    variant: str = "shifted",
    form: str = "bose",
    order: Optional[GentileOrder] = None,
) -> list[CasimirLevel]:
    """Predicted levels for every partition of ``nu`` into at most ``m`` parts."""
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    prefactor = 1.0
    coupling_shift = 0.0
    if form == "gentile":
        if order is None:
            raise ValueError("the finite-n form needs a GentileOrder")
        cos2x = math.cos(2.0 * math.pi / (order.n + 1))
        if abs(cos2x) < 1e-12:
            raise SingularPrefactorError(
                f"cos(2*pi/(n+1)) vanishes at n={order.n}; no finite prefactor"
            )
        prefactor = 1.0 / cos2x
        coupling_shift = m * nu * coupling_j(1, order)
    levels = []
    for part in partitions_of(nu, m):
        c1 = casimir_value(1, part, m, variant)
        c2 = casimir_value(2, part, m, variant)
        base = 0.5 * c2 - 0.5 * m * c1
        if form == "bose":
            energy = base
        elif form == "fermi":
            energy = -base
        else:
            energy = prefactor * (base - coupling_shift)
        levels.append(
            CasimirLevel(partition=part, energy=float(energy), weyl_dim=weyl_dimension(part, m))
        )
    return levels


def compare_spectra(
    ed: Sequence[tuple[float, int]],
    casimir: Sequence[CasimirLevel],
    variant: str = "shifted",
    form: str = "bose",
    tol: float = 1e-9,
) -> SpectrumMatch:
    """Match predicted levels to ED clusters, trying both overall signs.

    A partition matches when some ED cluster sits within ``tol`` of its
    (possibly sign-flipped) energy and the cluster multiplicity is an integer
    multiple of the partition's irrep dimension -- that integer is the
    inferred permutation-group multiplicity.  The better sign wins.
    """
    best: Optional[SpectrumMatch] = None
    total_ed = sum(mult for _, mult in ed)
    for sign in (1, -1):
        deviation = 0.0
        factors: dict[Partition, float] = {}
        claimed = 0.0
        integral = True
        for level in casimir:
            target = sign * level.energy
            value, mult = min(ed, key=lambda pair: abs(pair[0] - target))
            deviation = max(deviation, abs(value - target))
            factor = mult / level.weyl_dim
            if abs(factor - round(factor)) < 1e-9:
                factor = float(round(factor))
            else:
                integral = False
            factors[level.partition] = factor
            claimed += level.weyl_dim * factor
        matched = deviation < tol and integral and claimed == total_ed
        candidate = SpectrumMatch(
            variant=variant,
            form=form,
            sign=sign,
            max_deviation=deviation,
            factors=factors,
            matched=matched,
        )
        rank = (not candidate.matched, candidate.max_deviation, candidate.sign != 1)
        if best is None or rank < (not best.matched, best.max_deviation, best.sign != 1):
            best = candidate
    assert best is not None
    return best


def spectrum_report(
    nu: int,
    m: int,
    order: GentileOrder,
    sector: int = 1,
    variants: Sequence[str] = ("shifted", "raw"),
    forms: Sequence[str] = FORMS,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> SpectrumReport:
    """Run ED and every requested partition-route prediction side by side."""
    hamiltonian = build_hamiltonian(nu, m, order, sector=sector, cap=cap)
    ed = tuple((float(v), int(mult)) for v, mult in spectrum_ed(hamiltonian))
    casimir_blocks = []
    matches = []
    singular = []
    for variant in variants:
        for form in forms:
            try:
                levels = tuple(spectrum_casimir(nu, m, variant, form, order))
            except SingularPrefactorError:
                singular.append((variant, form))
                continue
            casimir_blocks.append((variant, form, levels))
            matches.append(compare_spectra(ed, levels, variant, form))
    return SpectrumReport(
        n=order.n,
        nu=nu,
        m=m,
        constant=CONSTANT_CONVENTION,
        ed_spectrum=ed,
        casimir=tuple(casimir_blocks),
        matches=tuple(matches),
        singular_forms=tuple(singular),
    )
