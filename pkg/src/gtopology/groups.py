"""Finite groups given by Cayley tables, elements indexed 0..|H|-1."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group stored as its multiplication table.

    ``table[a][b]`` is the index of the product ``a*b``.  The table is
    validated on construction (closure, associativity, identity, inverses).
    """

    table: tuple[tuple[int, ...], ...]
    name: str = field(default="H", compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        _validate_table(table)

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][x] == x for x in range(n)):
                return e
        raise AssertionError("validated table has no identity")

    def inv(self, a: int) -> int:
        e = self.identity
        return self.table[a].index(e)

    def center(self) -> list[int]:
        n = self.order
        return [z for z in range(n) if all(self.table[z][x] == self.table[x][z] for x in range(n))]

    @property
    def is_abelian(self) -> bool:
        return len(self.center()) == self.order

    def to_json(self) -> dict:
        return {"name": self.name, "table": [list(r) for r in self.table]}


def _validate_table(table) -> None:
    n = len(table)
    if n == 0:
        raise ValueError("Cayley table is empty")
    if any(len(row) != n for row in table):
        raise ValueError("Cayley table must be square")
    if any(not 0 <= v < n for row in table for v in row):
        raise ValueError("Cayley table entries out of range")
    ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not ids:
        raise ValueError("Cayley table has no two-sided identity")
    e = ids[0]
    for a in range(n):
        if not any(table[a][b] == e and table[b][a] == e for b in range(n)):
            raise ValueError(f"element {a} has no inverse")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise ValueError(f"table is not associative at ({a}, {b}, {c})")


def symmetric_group(k: int = 3) -> FiniteGroup:
    """Sigma_k with elements ordered lexicographically as permutation tuples.

    The product ``p*q`` is composition ``p(q(i))``; index 0 is the identity.
    """
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(k))] for q in perms) for p in perms
    )
    return FiniteGroup(table, name=f"S{k}")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"C{n}")


def named_group(name: str) -> FiniteGroup:
    if name.upper().startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    if name.upper().startswith("C") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")
