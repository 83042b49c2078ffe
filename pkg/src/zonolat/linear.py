"""Linear integer partitions: Sand Pile Model and Brylawski dynamics.

Partitions are tuples of positive integers in weakly decreasing order.
Column numbers in docstrings and transition labels are 1-based; Python
indexing inside the functions is 0-based.
"""
from __future__ import annotations

from collections import deque
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import SizeExceeded, WeightMismatch
from .poset import FiniteOrder

SPM = "spm"
BRYLAWSKI = "brylawski"
DEFAULT_GUARDS = {SPM: 40, BRYLAWSKI: 25}


def normalize(parts: Iterable[int]) -> tuple[int, ...]:
    """Strip trailing zeros and check the sequence is a partition."""
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    if any(x < 0 for x in parts):
        raise ValueError(f"negative part in {parts}")
    if any(x < y for x, y in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not weakly decreasing")
    return tuple(parts)


def _column(a: Sequence[int], i: int) -> int:
    return a[i] if i < len(a) else 0


def _moved(a: Sequence[int], src: int, dst: int) -> tuple[int, ...]:
    b = list(a) + [0] * (dst + 1 - len(a))
    b[src] -= 1
    b[dst] += 1
    return normalize(b)


def spm_moves(a: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """``(column, result)`` for every legal fall, column 1-based."""
    a = normalize(a)
    return [(i + 1, _moved(a, i, i + 1)) for i in range(len(a)) if a[i] - _column(a, i + 1) >= 2]


def slip_moves(a: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """``(column, result)`` for every legal slip from column i to some j > i + 1.

    The rule needs every column strictly between i and j to hold
    ``a_i - 1`` grains and column j to hold ``a_i - 2``.
    """
    a = normalize(a)
    out = []
    for i in range(len(a)):
        top = a[i]
        k = i + 1
        while k < len(a) and a[k] == top - 1:
            k += 1
            # k is now a candidate j with all of i+1..k-1 equal to top - 1
            if _column(a, k) == top - 2:
                out.append((i + 1, _moved(a, i, k)))
    return out


def spm_successors(a: Sequence[int]) -> list[tuple[int, ...]]:
    return [b for _, b in spm_moves(a)]


def brylawski_moves(a: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    moves = spm_moves(a) + slip_moves(a)
    return sorted(set(moves))


def brylawski_successors(a: Sequence[int]) -> list[tuple[int, ...]]:
    return [b for _, b in brylawski_moves(a)]


def generate(n: int, rules: str = BRYLAWSKI, max_n: int | None = None, labels: dict | None = None) -> FiniteOrder:
    """Configurations reachable from ``(n)``; ``a`` lies above ``b`` when ``b`` is reached from ``a``.

    If ``labels`` is a dict it is filled with ``(lower, upper) -> column``
    for every transition (the column the grain leaves).
    """
    if rules not in DEFAULT_GUARDS:
        raise ValueError(f"unknown rule set {rules!r}")
    guard = DEFAULT_GUARDS[rules] if max_n is None else max_n
    if n > guard:
        raise SizeExceeded(f"n = {n} exceeds the guard {guard} for {rules}")
    if n < 1:
        raise ValueError("n must be positive")
    step = spm_moves if rules == SPM else brylawski_moves
    start = (n,)
    seen = {start}
    queue = deque([start])
    pairs = []
    while queue:
        a = queue.popleft()
        for col, b in step(a):
            pairs.append((b, a))
            if labels is not None:
                labels[(b, a)] = col
            if b not in seen:
                seen.add(b)
                queue.append(b)
    elements = sorted(seen, reverse=True)
    return FiniteOrder.from_label_pairs(elements, pairs)


def prefix_sums(a: Sequence[int], length: int | None = None) -> tuple[int, ...]:
    a = list(a)
    if length is not None:
        a += [0] * (length - len(a))
    return tuple(accumulate(a))


def _same_weight(a, b):
    if sum(a) != sum(b):
        raise WeightMismatch(f"{tuple(a)} has weight {sum(a)}, {tuple(b)} has weight {sum(b)}")


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a <= b`` in dominance order: every prefix sum of ``a`` is at most that of ``b``."""
    _same_weight(a, b)
    m = max(len(a), len(b))
    return all(x <= y for x, y in zip(prefix_sums(a, m), prefix_sums(b, m)))


def from_prefix_sums(sums: Sequence[int]) -> tuple[int, ...]:
    return normalize(y - x for x, y in zip((0,) + tuple(sums), sums))


def lb_meet(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Dominance meet: the pointwise minimum of the prefix sums.

    A pointwise minimum of two concave sequences is concave, so the
    differences are again weakly decreasing.
    """
    _same_weight(a, b)
    m = max(len(a), len(b))
    return from_prefix_sums(list(map(min, prefix_sums(a, m), prefix_sums(b, m))))


def suffix_sums(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(tuple(accumulate(reversed(list(a))))))


def pi_embedding(a: Sequence[int]) -> tuple[int, ...]:
    """Suffix sums ``(a_i + a_{i+1} + ...)_i``; again a weakly decreasing sequence."""
    return suffix_sums(normalize(a))


def suffix_inf(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Evaluate ``c_i = max(S_a(i), S_b(i)) - sum_{j > i} c_j`` from the last index down.

    ``S_x(i)`` is the suffix sum of ``x`` from column i; columns past the end
    of a sequence count as zero.  Trailing zeros are stripped from the result.
    """
    m = max(len(a), len(b))
    sa = suffix_sums(list(a) + [0] * (m - len(a)))
    sb = suffix_sums(list(b) + [0] * (m - len(b)))
    c = [0] * m
    tail = 0
    for i in range(m - 1, -1, -1):
        c[i] = max(sa[i], sb[i]) - tail
        tail += c[i]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def all_partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Every partition of ``n`` with parts at most ``largest``, by direct recursion."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in all_partitions(n - first, first))
    return out
