"""Integer partitions and unitary-irrep eigenvalue arithmetic.

Partitions are plain weakly decreasing tuples, zero-padded to the requested
number of parts, enumerated in reverse-lexicographic (descending) order.
All eigenvalue formulas are exact integer arithmetic.
"""

from __future__ import annotations

from typing import Sequence

Partition = tuple[int, ...]

#: Eigenvalue formula variants for the Casimir operators.
VARIANTS = ("raw", "shifted")


def weight(partition: Sequence[int]) -> int:
    return sum(partition)


def _validate(partition: Sequence[int], m: int) -> Partition:
    parts = tuple(int(p) for p in partition)
    if any(p < 0 for p in parts):
        raise ValueError(f"partition parts must be nonnegative: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition must be weakly decreasing: {parts}")
    if len(parts) > m:
        raise ValueError(f"partition {parts} has more than m={m} parts")
    return parts + (0,) * (m - len(parts))


def partitions_of(total: int, max_parts: int) -> list[Partition]:
    """All partitions of ``total`` into at most ``max_parts`` parts.

    Reverse-lexicographic order, each padded with zeros to ``max_parts``.
    """
    if total < 0:
        raise ValueError(f"total must be nonnegative, got {total}")
    if max_parts < 1:
        raise ValueError(f"max_parts must be >= 1, got {max_parts}")
    out: list[Partition] = []

    def descend(remaining: int, largest: int, prefix: Partition) -> None:
        if remaining == 0:
            out.append(prefix + (0,) * (max_parts - len(prefix)))
            return
        if len(prefix) == max_parts:
            return
        for part in range(min(remaining, largest), 0, -1):
            descend(remaining - part, part, prefix + (part,))

    descend(total, total, ())
    return out


def casimir_sp(p: int, partition: Sequence[int], m: int) -> int:
    """Order-``p`` eigenvalue sum ``sum_i (a_i + m - i)**p - (m - i)**p``."""
    if p < 1:
        raise ValueError(f"order p must be >= 1, got {p}")
    parts = _validate(partition, m)
    return sum((parts[i] + m - (i + 1)) ** p - (m - (i + 1)) ** p for i in range(m))


def casimir_value(p: int, partition: Sequence[int], m: int, variant: str = "shifted") -> int:
    """Casimir eigenvalue of order ``p`` in one of the two formula variants.

    ``raw`` is the bare power sum; ``shifted`` subtracts ``(m-1)`` times the
    first-order value from the second-order one (the standard quadratic
    Casimir on gl(m) irreps).  Both agree at ``p = 1``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if p == 1:
        return casimir_sp(1, partition, m)
    if p == 2:
        s2 = casimir_sp(2, partition, m)
        if variant == "raw":
            return s2
        return s2 - (m - 1) * casimir_sp(1, partition, m)
    raise ValueError(f"only orders 1 and 2 are supported, got p={p}")


def weyl_dimension(partition: Sequence[int], m: int) -> int:
    """Dimension of the U(m) irrep labelled by ``partition`` (exact integer)."""
    parts = _validate(partition, m)
    num = 1
    den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= parts[i] - parts[j] + j - i
            den *= j - i
    q, r = divmod(num, den)
    if r:
        raise AssertionError(f"non-integer Weyl dimension for {parts}, m={m}")
    return q
