"""Finite heaps as dense ternary tables, with exhaustive validators and retracts.

A heap is a set with a ternary operation [a,b,c] that is associative,
    [[a,b,c],d,e] = [a,b,[c,d,e]],
and satisfies the Mal'cev identities [a,a,b] = b = [b,a,a]. It is abelian when
[a,b,c] = [c,b,a]. Fixing the middle slot of an abelian heap yields an abelian
group (a retract); conversely a group induces a heap via a - b + c.

The associativity check costs n^5 table lookups. It runs exhaustively up to a
hard size cap (default 32) and falls back to a seeded random sample above it;
sampled checks are flagged non-exhaustive in the report.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import guard, resolve_max_enum
from .groups import AbGroup, np_elements
from .validation import Check, ValidationReport

ASSOC_EXHAUSTIVE_CAP = 32
SAMPLE_SIZE = 100_000
SAMPLE_SEED = 0


@dataclass(frozen=True)
class FiniteHeap:
    """Explicit heap on carrier {0, ..., size-1} with a row-major ternary table."""

    size: int
    ternary_table: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.size
        table = tuple(int(x) for x in self.ternary_table)
        if n < 1:
            raise ValueError("carrier must be nonempty")
        if len(table) != n**3:
            raise ValueError(f"ternary table needs {n**3} entries, got {len(table)}")
        if any(not 0 <= x < n for x in table):
            raise ValueError("ternary table entry out of carrier range")
        object.__setattr__(self, "ternary_table", table)

    def ternary(self, a: int, b: int, c: int) -> int:
        n = self.size
        return self.ternary_table[(a * n + b) * n + c]

    @cached_property
    def _array(self) -> np.ndarray:
        n = self.size
        return np.array(self.ternary_table, dtype=np.int64).reshape(n, n, n)

    def to_json_dict(self) -> dict:
        return {"size": self.size, "ternary": list(self.ternary_table)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteHeap":
        if not isinstance(data, dict) or "size" not in data or "ternary" not in data:
            raise ValueError("heap JSON must carry 'size' and 'ternary'")
        return cls(int(data["size"]), tuple(data["ternary"]))


def heap_from_group(g: AbGroup, max_enum: int | None = None) -> FiniteHeap:
    """Materialize the heap [a,b,c] = a - b + c over g's enumerated elements."""
    n = g.cardinality
    guard(n**3, resolve_max_enum(max_enum), f"heap table of {g}")
    if g.rank == 0 or n == 1:
        return FiniteHeap(n, (0,) * n**3)
    elems = np_elements(g)
    orders = np.array(g.orders, dtype=np.int64)
    strides = np.array(g._strides, dtype=np.int64)
    out = np.empty((n, n, n), dtype=np.int64)
    for a in range(n):
        diff = (elems[a][None, None, :] - elems[:, None, :] + elems[None, :, :]) % orders
        out[a] = diff @ strides
    return FiniteHeap(n, tuple(out.reshape(-1).tolist()))


def _first_mismatch(prefix: tuple[int, ...], bad: np.ndarray) -> tuple[int, ...]:
    where = np.argwhere(bad)
    return prefix + tuple(int(x) for x in where[0])


def _malcev_check(T: np.ndarray) -> Check:
    n = T.shape[0]
    idx = np.arange(n)
    left = T[idx[:, None], idx[:, None], idx[None, :]]  # [a,a,b] at (a,b)
    right = T[idx[None, :], idx[:, None], idx[:, None]]  # [b,a,a] at (a,b)
    bad = (left != idx[None, :]) | (right != idx[None, :])
    passed = not bad.any()
    ce = None if passed else _first_mismatch((), bad)
    return Check("malcev", passed, True, n * n, ce)


def _abelian_check(T: np.ndarray) -> Check:
    bad = T != T.transpose(2, 1, 0)
    passed = not bad.any()
    n = T.shape[0]
    ce = None if passed else _first_mismatch((), bad)
    return Check("abelian", passed, True, n**3, ce)


def _assoc_exhaustive(T: np.ndarray) -> Check:
    n = T.shape[0]
    rows = np.arange(n)
    for a in range(n):
        Ta = T[a]
        left = T[Ta]  # [b,c,d,e] -> T[Ta[b,c], d, e]
        right = Ta[rows[:, None, None, None], T[None, :, :, :]]  # Ta[b, T[c,d,e]]
        bad = left != right
        if bad.any():
            return Check("associativity", False, True, n**5, _first_mismatch((a,), bad))
    return Check("associativity", True, True, n**5, None)


def _assoc_sampled(T: np.ndarray, samples: int) -> Check:
    n = T.shape[0]
    rng = np.random.default_rng(SAMPLE_SEED)
    a, b, c, d, e = rng.integers(0, n, size=(5, samples))
    left = T[T[a, b, c], d, e]
    right = T[a, b, T[c, d, e]]
    bad = left != right
    if bad.any():
        k = int(np.argmax(bad))
        ce = (int(a[k]), int(b[k]), int(c[k]), int(d[k]), int(e[k]))
        return Check("associativity", False, False, samples, ce)
    return Check("associativity", True, False, samples, None)


def validate_heap(
    h: FiniteHeap,
    exhaustive_cap: int = ASSOC_EXHAUSTIVE_CAP,
    samples: int = SAMPLE_SIZE,
) -> ValidationReport:
    """Check the Mal'cev identities, associativity, and abelian symmetry.

    Each law reports its first counterexample in lexicographic scan order.
    """
    T = h._array
    n = h.size
    checks = [_malcev_check(T)]
    if n <= exhaustive_cap:
        checks.append(_assoc_exhaustive(T))
    else:
        checks.append(_assoc_sampled(T, samples))
    checks.append(_abelian_check(T))
    return ValidationReport(f"heap on {n} elements", tuple(checks))


def is_abelian_heap(h: FiniteHeap) -> bool:
    return _abelian_check(h._array).passed


def is_valid_heap(h: FiniteHeap, exhaustive_cap: int = ASSOC_EXHAUSTIVE_CAP) -> bool:
    """Heap axioms only (Mal'cev + associativity); abelian-ness not required."""
    report = validate_heap(h, exhaustive_cap=exhaustive_cap)
    return report.law_passed("malcev", "associativity")


@dataclass(frozen=True)
class RetractGroup:
    """Group structure a +_b c = [a,b,c] obtained by fixing the middle slot at b."""

    size: int
    add_table: tuple[int, ...]
    identity: int

    def __post_init__(self) -> None:
        table = tuple(int(x) for x in self.add_table)
        if len(table) != self.size**2:
            raise ValueError("addition table has wrong length")
        object.__setattr__(self, "add_table", table)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.size + b]

    @cached_property
    def inverse_table(self) -> tuple[int, ...]:
        out = []
        for a in range(self.size):
            row = self.add_table[a * self.size : (a + 1) * self.size]
            try:
                out.append(row.index(self.identity))
            except ValueError:
                raise ValueError(f"element {a} has no inverse") from None
        return tuple(out)

    def inverse(self, a: int) -> int:
        return self.inverse_table[a]

    def to_heap(self) -> FiniteHeap:
        """The induced heap [a,b,c] = a + (-b) + c of this group."""
        n = self.size
        A = np.array(self.add_table, dtype=np.int64).reshape(n, n)
        inv = np.array(self.inverse_table, dtype=np.int64)
        X = A[:, inv]  # X[a,b] = a + (-b)
        T = A[X]  # T[a,b,c] = (a + (-b)) + c
        return FiniteHeap(n, tuple(T.reshape(-1).tolist()))

    def is_abelian(self) -> bool:
        n = self.size
        A = np.array(self.add_table, dtype=np.int64).reshape(n, n)
        return bool((A == A.T).all())


def retract_at(h: FiniteHeap, b: int, validate: bool = True) -> RetractGroup:
    """The retract group (carrier, +_b, identity b); requires a valid heap."""
    if not 0 <= b < h.size:
        raise ValueError(f"base point {b} outside carrier")
    if validate and not is_valid_heap(h):
        raise ValueError("not a valid heap; retract undefined")
    n = h.size
    table = tuple(h.ternary(a, b, c) for a in range(n) for c in range(n))
    return RetractGroup(n, table, b)


def retract_iso(h: FiniteHeap, b: int, b_prime: int, validate: bool = True) -> tuple[int, ...]:
    """The map a -> [a, b, b'], an isomorphism (carrier, +_b) -> (carrier, +_b')."""
    if validate and not is_valid_heap(h):
        raise ValueError("not a valid heap")
    return tuple(h.ternary(a, b, b_prime) for a in range(h.size))
