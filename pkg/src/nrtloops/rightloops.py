"""Right loops as explicit operation tables.

A right loop is a finite magma with a two-sided identity in which every
right translation x -> x * y is a bijection. In table terms: index 0 is a
two-sided identity and every column of the table is a permutation; rows are
allowed to repeat values. Elements whose row is also a permutation are the
left non-singular elements; the structure is a loop exactly when every
element is left non-singular, and a group when it is additionally
associative.

``group_torsion`` computes the permutation group generated by the defect
maps R(x*y)^-1 R(y) R(x); it is trivial exactly on group tables, and
together with the right translations it generates the torsion envelope.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .perms import compose, invert


class RightLoopError(ValueError):
    """The table does not define a right loop."""


class NotIdentityError(RightLoopError):
    def __init__(self, index: int):
        super().__init__(f"index 0 is not a two-sided identity (witness element {index})")
        self.index = index


class ColumnNotBijectiveError(RightLoopError):
    def __init__(self, column: int):
        super().__init__(f"column {column} is not a bijection")
        self.column = column


def _check_loop_table(order: int, table) -> None:
    if order < 1:
        raise RightLoopError("a right loop needs at least one element")
    if len(table) != order:
        raise RightLoopError(f"expected {order} rows, found {len(table)}")
    rng = range(order)
    for x, row in enumerate(table):
        if len(row) != order:
            raise RightLoopError(f"row {x} has {len(row)} entries, expected {order}")
        for v in row:
            if not isinstance(v, int) or not 0 <= v < order:
                raise RightLoopError(f"entry {v!r} in row {x} out of range 0..{order - 1}")
    everything = set(rng)
    for y in rng:
        if {table[x][y] for x in rng} != everything:
            raise ColumnNotBijectiveError(y)
    for a in rng:
        if table[0][a] != a or table[a][0] != a:
            raise NotIdentityError(a)


@dataclass(frozen=True)
class RightLoop:
    """An operation table with two-sided identity 0 and bijective columns."""

    order: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))
        _check_loop_table(self.order, self.table)

    def __repr__(self):
        return f"RightLoop(order={self.order})"

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def row(self, x: int) -> tuple[int, ...]:
        return self.table[x]

    def column(self, y: int) -> tuple[int, ...]:
        return tuple(self.table[x][y] for x in range(self.order))

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.column(y) for y in range(self.order))


def validate_right_loop(table) -> RightLoop:
    """Build a RightLoop from any square sequence of index rows, raising
    NotIdentityError or ColumnNotBijectiveError with a witness on failure."""
    rows = tuple(tuple(row) for row in table)
    return RightLoop(len(rows), rows)


def left_nonsingular_elements(loop: RightLoop) -> tuple[int, ...]:
    """Elements whose left translation (table row) is a bijection."""
    everything = set(range(loop.order))
    return tuple(
        x for x in range(loop.order) if set(loop.table[x]) == everything
    )


def is_associative(table) -> bool:
    n = len(table)
    return all(
        table[table[a][b]][c] == table[a][table[b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


@dataclass(frozen=True)
class StructureFlags:
    is_loop: bool
    is_group: bool


def structure_flags(loop: RightLoop) -> StructureFlags:
    loop_flag = len(left_nonsingular_elements(loop)) == loop.order
    return StructureFlags(loop_flag, loop_flag and is_associative(loop.table))


# ---------------------------------------------------------------------------
# translation groups


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[tuple[int, ...], ...]
    elements: frozenset

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def cayley_group(self):
        """The abstract group of this permutation set as a Cayley table
        (elements sorted, which puts the identity at index 0)."""
        from .groups import FiniteGroup

        elems = sorted(self.elements)
        index = {p: i for i, p in enumerate(elems)}
        table = tuple(
            tuple(index[compose(p, q)] for q in elems) for p in elems
        )
        return FiniteGroup(len(elems), table, None, "permutation")


def close_permutations(degree: int, generators) -> PermutationGroup:
    """Work-queue closure of a generator set inside the symmetric group."""
    gens = tuple(dict.fromkeys(tuple(g) for g in generators))
    identity = tuple(range(degree))
    elements = {identity}
    queue = [identity]
    while queue:
        p = queue.pop()
        for g in gens:
            q = compose(g, p)
            if q not in elements:
                elements.add(q)
                queue.append(q)
    return PermutationGroup(degree, gens, frozenset(elements))


def group_torsion(loop: RightLoop) -> PermutationGroup:
    """Permutation group generated by R(x*y)^-1 R(y) R(x) over all pairs,
    where R(y) is the column map and R(x) acts first. Trivial exactly when
    the table is a group."""
    cols = loop.columns
    inv_cols = tuple(invert(c) for c in cols)
    gens = set()
    for x in range(loop.order):
        rx = cols[x]
        for y in range(loop.order):
            gens.add(compose(inv_cols[loop.table[x][y]], compose(cols[y], rx)))
    return close_permutations(loop.order, sorted(gens))


def torsion_envelope(loop: RightLoop) -> PermutationGroup:
    """Closure of the torsion generators together with all right
    translations."""
    torsion = group_torsion(loop)
    gens = sorted(set(torsion.generators) | set(loop.columns))
    return close_permutations(loop.order, gens)


# ---------------------------------------------------------------------------
# serialization


def dumps_table(loop: RightLoop) -> str:
    lines = [str(loop.order)]
    lines += [" ".join(str(v) for v in row) for row in loop.table]
    return "\n".join(lines) + "\n"


def loads_table(text: str) -> RightLoop:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise RightLoopError("empty table text")
    try:
        n = int(lines[0])
    except ValueError:
        raise RightLoopError(f"expected an order, found {lines[0]!r}") from None
    if len(lines) != n + 1:
        raise RightLoopError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        try:
            rows.append(tuple(int(t) for t in line.split()))
        except ValueError:
            raise RightLoopError(f"non-integer entry in row {line!r}") from None
    return validate_right_loop(rows)


def loop_to_json(loop: RightLoop) -> dict:
    flags = structure_flags(loop)
    return {
        "order": loop.order,
        "table": [list(row) for row in loop.table],
        "flags": {"is_loop": flags.is_loop, "is_group": flags.is_group},
    }


def loop_from_json(obj) -> RightLoop:
    if isinstance(obj, str):
        obj = json.loads(obj)
    loop = validate_right_loop(obj["table"])
    if loop.order != obj.get("order", loop.order):
        raise RightLoopError("order field disagrees with the table")
    return loop
