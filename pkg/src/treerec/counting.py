"""Closed-form counts and the identities that tie them together.

Everything is exact integer arithmetic; the few ``n^(-1)`` factors that
appear at the boundary of a formula are cancelled by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .core import IntPartition
from .errors import InvalidPartition, InvalidRange


def _check_range(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise InvalidRange(f"need 1 <= k <= n, got n={n}, k={k}")


def falling(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1)``."""
    return math.perm(n, k)


def forests_with_fixed_roots(n: int, k: int) -> int:
    """Rooted forests on ``n`` vertices whose roots are a fixed ``k``-set: ``k n^(n-k-1)``."""
    if k == n:
        return 1
    return k * n ** (n - k - 1)


def tree_record_number(n: int, k: int) -> int:
    """Rooted trees on ``[n]`` with exactly ``k`` records."""
    _check_range(n, k)
    if k == n:
        return math.factorial(n - 1)
    return k * falling(n - 1, k - 1) * n ** (n - k - 1)


def girth_count(n: int, k: int) -> int:
    """Connected endofunctions on ``[n]`` whose cycle has length ``k``."""
    _check_range(n, k)
    if k == n:
        return math.factorial(n - 1)
    return falling(n, k) * n ** (n - k - 1)


def connected_endofunction_count(n: int) -> int:
    if n < 1:
        raise InvalidRange(f"n must be positive, got {n}")
    return sum(girth_count(n, k) for k in range(1, n + 1))


def fixed_point_free_connected(n: int) -> int:
    """``(n-1)! * sum_{j=0}^{n-2} n^j / j!``, always an integer."""
    if n < 1:
        raise InvalidRange(f"n must be positive, got {n}")
    total = sum(Fraction(n**j, math.factorial(j)) for j in range(n - 1))
    value = math.factorial(n - 1) * total
    assert value.denominator == 1
    return int(value)


def genesis(n: int) -> int:
    """Normalized total height of all rooted trees on ``[n]`` (OEIS A000435)."""
    if n < 1:
        raise InvalidRange(f"n must be positive, got {n}")
    return sum((k - 1) * tree_record_number(n, k) for k in range(1, n + 1))


def cayley_rooted_forest(n: int, k: int) -> int:
    """Forests on ``[n]`` rooted exactly at ``[k]``."""
    _check_range(n, k)
    return forests_with_fixed_roots(n, k)


def spanning_forest_count(n: int, k: int) -> int:
    """Rooted forests on ``[n]`` with ``k`` trees."""
    _check_range(n, k)
    return math.comb(n - 1, k - 1) * n ** (n - k)


@lru_cache(maxsize=None)
def stirling_first(n: int, m: int) -> int:
    """Unsigned Stirling number of the first kind."""
    if not 0 <= m <= n:
        raise InvalidRange(f"need 0 <= m <= n, got n={n}, m={m}")
    if n == 0:
        return 1
    if m == 0:
        return 0
    if m == n:
        return 1
    return stirling_first(n - 1, m - 1) + (n - 1) * stirling_first(n - 1, m)


def weight_sn(n: int) -> int:
    """Sum of reflection lengths over all permutations of ``[n]``."""
    if n < 1:
        raise InvalidRange(f"n must be positive, got {n}")
    return sum((n - m) * stirling_first(n, m) for m in range(1, n + 1))


def forest_record_number(n: int, k: int) -> int:
    """Rooted forests on ``[n]`` with ``k`` records in total.

    Read off the exponential formula ``exp(sum_j t^j R_j(z))``.
    """
    _check_range(n, k)
    from .series import forest_record_series

    return int(forest_record_series(n, n).count(n, k))


def doubly_cover_count(n: int, ell: int) -> int:
    """Forests on ``[n]`` with exactly ``ell`` doubly record-covering pairs."""
    if n < 1 or ell < 0:
        raise InvalidRange(f"need n >= 1 and ell >= 0, got n={n}, ell={ell}")
    return sum(
        math.comb(n - 1, q - 2)
        * stirling_first(q - 2, ell)
        * forests_with_fixed_roots(n + 1, q)
        for q in range(ell + 2, n + 2)
    )


def distance_partition_count(n: int, lam: IntPartition) -> int:
    """Forests on ``[n]`` whose distance partition is ``lam`` minus two parts 1.

    ``lam`` is the full cycle type of the record-code map, trivial cycles included.
    """
    q = lam.weight
    m1 = lam.multiplicity(1)
    if m1 < 2 or q > n + 1:
        raise InvalidPartition(f"need m_1 >= 2 and |lambda| <= n+1, got {lam} for n={n}")
    value = (
        Fraction(math.factorial(n - 1), math.factorial(n - q + 1))
        * Fraction(forests_with_fixed_roots(n + 1, q), lam.z)
        * falling(m1, 2)
    )
    assert value.denominator == 1
    return int(value)


def cycle_types_with_trivial_pair(n: int) -> list[IntPartition]:
    """Every admissible ``lam`` for ``distance_partition_count(n, .)``."""
    from .core import partitions

    out = []
    for q in range(2, n + 2):
        for rest in partitions(q - 2):
            out.append(IntPartition.from_parts([1, 1, *rest.parts]))
    return out


# Tables ---------------------------------------------------------------------


@dataclass
class CountTable:
    """Named map from parameter tuples to counts, emitted as b-file or TSV."""

    name: str
    entries: dict[tuple[int, ...], int] = field(default_factory=dict)
    provenance: str = "formula"

    def to_bfile(self) -> str:
        """``"n a(n)"`` lines; for a triangle the terms are flattened by rows."""
        keys = sorted(self.entries)
        if keys and len(keys[0]) == 1:
            return "".join(f"{key[0]} {self.entries[key]}\n" for key in keys)
        return "".join(f"{i} {self.entries[key]}\n" for i, key in enumerate(keys, 1))

    def to_tsv(self, columns: Iterable[str]) -> str:
        head = "\t".join([*columns, "value"]) + "\n"
        return head + "".join(
            "\t".join(map(str, key)) + f"\t{self.entries[key]}\n"
            for key in sorted(self.entries)
        )

    def values(self) -> list[int]:
        return [self.entries[key] for key in sorted(self.entries)]


UNIVARIATE: Mapping[str, Callable[[int], int]] = {
    "genesis": genesis,
    "connected": connected_endofunction_count,
    "fixed-point-free": fixed_point_free_connected,
    "weight-sn": weight_sn,
    "doubly-cover-0": lambda n: doubly_cover_count(n, 0),
}

TRIANGULAR: Mapping[str, Callable[[int, int], int]] = {
    "tree-records": tree_record_number,
    "girth": girth_count,
    "cayley-forest": cayley_rooted_forest,
    "spanning-forest": spanning_forest_count,
    "forest-records": forest_record_number,
}


def _triangle_bounds(name: str, n: int) -> range:
    if name == "stirling1":
        return range(0, n + 1)
    if name == "doubly-cover":
        return range(0, max(n - 1, 0) + 1)
    return range(1, n + 1)


def build_table(name: str, ns: Iterable[int], k: int | None = None) -> CountTable:
    """Evaluate a named count over ``ns`` (whole rows unless ``k`` is given)."""
    table = CountTable(name)
    if name in UNIVARIATE:
        for n in ns:
            table.entries[(n,)] = UNIVARIATE[name](n)
        return table
    fn: Callable[[int, int], int]
    if name in TRIANGULAR:
        fn = TRIANGULAR[name]
    elif name == "stirling1":
        fn = stirling_first
    elif name == "doubly-cover":
        fn = doubly_cover_count
    else:
        raise KeyError(name)
    for n in ns:
        ks = [k] if k is not None else _triangle_bounds(name, n)
        for kk in ks:
            table.entries[(n, kk)] = fn(n, kk)
    return table


TABLE_NAMES = sorted([*UNIVARIATE, *TRIANGULAR, "stirling1", "doubly-cover"])


# Identity suite -------------------------------------------------------------


@dataclass
class IdentityResult:
    identity: str
    n: int
    passed: bool
    detail: str = ""


def verify_identities(n_max: int) -> list[IdentityResult]:
    """Check the double counts and log-concavity for every ``n <= n_max``."""
    out = []
    for n in range(1, n_max + 1):
        lhs = sum(
            Fraction(k * k * math.factorial(n - 1), math.factorial(n - k)) * Fraction(n) ** (n - k - 1)
            for k in range(1, n + 1)
        )
        rhs = n ** (n - 1) + fixed_point_free_connected(n)
        out.append(IdentityResult("connected-double-count", n, lhs == rhs, f"{lhs} vs {rhs}"))

        conn = connected_endofunction_count(n)
        out.append(
            IdentityResult(
                "connected-via-records",
                n,
                conn == rhs == sum(k * tree_record_number(n, k) for k in range(1, n + 1)),
                f"{conn}",
            )
        )

        g = genesis(n)
        out.append(IdentityResult("fixed-point-free", n, g == conn - n ** (n - 1), f"{g}"))
        out.append(IdentityResult("genesis-closed-form", n, g == fixed_point_free_connected(n), f"{g}"))

        seq = [forests_with_fixed_roots(n, k) for k in range(1, n + 1)]
        concave = all(seq[i] ** 2 >= seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))
        out.append(IdentityResult("log-concave", n, concave))

        telescopes = all(
            girth_count(n, k) - (girth_count(n, k + 1) if k < n else 0) == tree_record_number(n, k)
            for k in range(1, n + 1)
        )
        out.append(IdentityResult("girth-telescoping", n, telescopes))
    return out
