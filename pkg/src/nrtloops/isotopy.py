"""Isomorphism and isotopy of right loops.

An isotopy from L1 to L2 is a triple of bijections (alpha, beta, gamma)
with alpha(x) *2 beta(y) = gamma(x *1 y); an isomorphism is the diagonal
case alpha = beta = gamma. Every isotopy factors through a principal
isotope, so the decision procedure searches principal isotopes of the
source and composes the factorization into an explicit witness, which is
re-verified against the defining identity before being returned.

``brute_force_isotopy_oracle`` decides the same question from the raw
definition by exhausting alpha; it shares no code with the search path and
exists to cross-check it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .perms import compose, cycle_type, identity_perm, invert, is_permutation
from .rightloops import (
    RightLoop,
    group_torsion,
    left_nonsingular_elements,
    structure_flags,
    validate_right_loop,
)

AUTOTOPY_ORDER_CAP = 8
ORACLE_ORDER_CAP = 7


class NotLeftNonsingularError(ValueError):
    """The requested construction needs a bijective row at this element."""


class OrderTooLargeError(ValueError):
    """The exhaustive procedure is capped well below this order."""


@dataclass(frozen=True)
class IsotopyWitness:
    """A verified triple of bijections alpha, beta, gamma on positions."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def __repr__(self):
        return f"IsotopyWitness(alpha={self.alpha}, beta={self.beta}, gamma={self.gamma})"

    @classmethod
    def identity(cls, n: int) -> "IsotopyWitness":
        e = identity_perm(n)
        return cls(e, e, e)

    def verify(self, source: RightLoop, target: RightLoop) -> bool:
        """Check bijectivity and alpha(x) * beta(y) = gamma(x * y) on all
        pairs."""
        n = source.order
        if target.order != n:
            return False
        if not all(is_permutation(p, n) for p in (self.alpha, self.beta, self.gamma)):
            return False
        t1, t2 = source.table, target.table
        a, b, g = self.alpha, self.beta, self.gamma
        return all(
            t2[a[x]][b[y]] == g[t1[x][y]] for x in range(n) for y in range(n)
        )

    def inverse(self) -> "IsotopyWitness":
        return IsotopyWitness(invert(self.alpha), invert(self.beta), invert(self.gamma))

    def then(self, other: "IsotopyWitness") -> "IsotopyWitness":
        """Composite witness: self from A to B, then other from B to C."""
        return IsotopyWitness(
            compose(other.alpha, self.alpha),
            compose(other.beta, self.beta),
            compose(other.gamma, self.gamma),
        )

    def is_isomorphism(self) -> bool:
        return self.alpha == self.beta == self.gamma


# ---------------------------------------------------------------------------
# isomorphism search


def _signatures(loop: RightLoop):
    """Per-element invariants preserved by any isomorphism: the row's value
    multiplicities, the column's cycle type, and idempotence."""
    n = loop.order
    t = loop.table
    sigs = []
    for x in range(n):
        counts = tuple(sorted(Counter(t[x]).values()))
        sigs.append((counts, cycle_type(loop.columns[x]), t[x][x] == x))
    return sigs


def _propagate(t1, t2, f, used, sig1, sig2) -> bool:
    """Close a partial map under f(a*b) = f(a)*f(b); returns False on any
    conflict. Assigns forced images as it goes."""
    n = len(f)
    while True:
        progressed = False
        for a in range(n):
            fa = f[a]
            if fa < 0:
                continue
            row1, row2 = t1[a], t2[fa]
            for b in range(n):
                fb = f[b]
                if fb < 0:
                    continue
                v, w = row1[b], row2[fb]
                fv = f[v]
                if fv >= 0:
                    if fv != w:
                        return False
                else:
                    if used[w] or sig1[v] != sig2[w]:
                        return False
                    f[v] = w
                    used[w] = True
                    progressed = True
        if not progressed:
            return True


def isomorphisms(L1: RightLoop, L2: RightLoop):
    """Yield every isomorphism f: L1 -> L2 (as an image tuple, f[0] = 0)."""
    n = L1.order
    if L2.order != n:
        return
    sig1, sig2 = _signatures(L1), _signatures(L2)
    if sorted(sig1) != sorted(sig2) or sig1[0] != sig2[0]:
        return
    t1, t2 = L1.table, L2.table
    candidates = [
        tuple(c for c in range(n) if sig2[c] == sig1[x]) for x in range(n)
    ]

    def extend(f, used):
        x = next((i for i in range(n) if f[i] < 0), -1)
        if x < 0:
            final = tuple(f)
            if all(
                t2[final[a]][final[b]] == final[t1[a][b]]
                for a in range(n)
                for b in range(n)
            ):
                yield final
            return
        for c in candidates[x]:
            if used[c]:
                continue
            f2, used2 = f[:], used[:]
            f2[x] = c
            used2[c] = True
            if _propagate(t1, t2, f2, used2, sig1, sig2):
                yield from extend(f2, used2)

    f0, used0 = [-1] * n, [False] * n
    f0[0] = 0
    used0[0] = True
    if _propagate(t1, t2, f0, used0, sig1, sig2):
        yield from extend(f0, used0)


def are_isomorphic(L1: RightLoop, L2: RightLoop) -> tuple[int, ...] | None:
    """First isomorphism found, or None."""
    return next(isomorphisms(L1, L2), None)


# ---------------------------------------------------------------------------
# principal isotopes


def principal_isotope_with_relabel(
    loop: RightLoop, a: int, b: int
) -> tuple[RightLoop, tuple[int, ...]]:
    """The principal isotope x . y = R(b)^-1(x) * L(a)^-1(y), relabeled by
    swapping its identity a*b with 0. Returns (isotope, relabel) where
    relabel is the self-inverse swap applied to positions."""
    n = loop.order
    t = loop.table
    if set(t[a]) != set(range(n)):
        raise NotLeftNonsingularError(f"element {a} has a non-bijective row")
    rb_inv = invert(loop.columns[b])
    la_inv = invert(t[a])
    raw = [[t[rb_inv[x]][la_inv[y]] for y in range(n)] for x in range(n)]
    e = t[a][b]
    swap = list(range(n))
    swap[0], swap[e] = e, 0
    relabeled = tuple(
        tuple(swap[raw[swap[x]][swap[y]]] for y in range(n)) for x in range(n)
    )
    return validate_right_loop(relabeled), tuple(swap)


def principal_isotope(loop: RightLoop, a: int, b: int) -> RightLoop:
    return principal_isotope_with_relabel(loop, a, b)[0]


def are_isotopic(L1: RightLoop, L2: RightLoop) -> IsotopyWitness | None:
    """Search all principal isotopes of L1 for an isomorphic copy of L2 and
    compose the factorization into a witness from L1 to L2."""
    n = L1.order
    if L2.order != n:
        return None
    t1 = L1.table
    for a in left_nonsingular_elements(L1):
        for b in range(n):
            isotope, relabel = principal_isotope_with_relabel(L1, a, b)
            f = are_isomorphic(L2, isotope)
            if f is None:
                continue
            f_inv = invert(f)
            alpha = tuple(f_inv[relabel[t1[x][b]]] for x in range(n))
            beta = tuple(f_inv[relabel[t1[a][y]]] for y in range(n))
            gamma = tuple(f_inv[relabel[z]] for z in range(n))
            witness = IsotopyWitness(alpha, beta, gamma)
            if not witness.verify(L1, L2):
                raise AssertionError("composed isotopy witness failed verification")
            return witness
    return None


# ---------------------------------------------------------------------------
# independent brute-force oracle


def brute_force_isotopy_oracle(L1: RightLoop, L2: RightLoop) -> bool:
    """Decide isotopy straight from the definition.

    For any isotopy (alpha, beta, gamma), putting y = 0 in the defining
    identity forces gamma = R(beta(0)) o alpha, so gamma is a column of the
    row-reindexed table M[x][y] = t2[alpha(x)][y]; and beta(y) is then the
    unique column of M equal to gamma applied to column y of t1 (columns of
    a right-loop table are pairwise distinct maps). The scan over alpha is
    exhaustive."""
    n = L1.order
    if L2.order != n:
        return False
    if n > ORACLE_ORDER_CAP:
        raise OrderTooLargeError(
            f"oracle is capped at order {ORACLE_ORDER_CAP}, got {n}"
        )
    t1, t2 = L1.table, L2.table
    rng = range(n)
    cols1 = [tuple(t1[x][y] for x in rng) for y in rng]
    for alpha in itertools.permutations(rng):
        m_rows = [t2[a] for a in alpha]
        col_keys = [tuple(row[y] for row in m_rows) for y in rng]
        col_index = {key: y for y, key in enumerate(col_keys)}
        for gamma in col_keys:
            betas = set()
            ok = True
            for y in rng:
                target = tuple(gamma[v] for v in cols1[y])
                hit = col_index.get(target)
                if hit is None:
                    ok = False
                    break
                betas.add(hit)
            if ok and len(betas) == n:
                return True
    return False


# ---------------------------------------------------------------------------
# classification


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _bucket_key(loop: RightLoop):
    """Invariants shared by both relations: loop flag, count of bijective
    rows, the row-bijectivity profile, and the torsion order."""
    flags = structure_flags(loop)
    bij = tuple(
        sorted(len(set(row)) == loop.order for row in loop.table)
    )
    lns = sum(bij)
    return (flags.is_loop, lns, bij, group_torsion(loop).order)


@dataclass(frozen=True)
class ClassPartition:
    relation: str
    labels: tuple[str, ...]
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[RightLoop, ...]

    def __repr__(self):
        sizes = [len(c) for c in self.classes]
        return f"ClassPartition({self.relation}, sizes={sizes})"

    def class_of(self, index: int) -> int:
        for k, members in enumerate(self.classes):
            if index in members:
                return k
        raise IndexError(index)

    def to_json_obj(self) -> dict:
        return {
            "relation": self.relation,
            "classes": [
                {
                    "representative_table": [list(r) for r in rep.table],
                    "members": [self.labels[i] for i in members],
                    "size": len(members),
                }
                for rep, members in zip(self.representatives, self.classes)
            ],
        }

    def to_csv_rows(self) -> list[list]:
        rows = [["class_id", "size", "is_loop", "n_left_nonsingular"]]
        for k, (rep, members) in enumerate(zip(self.representatives, self.classes)):
            flags = structure_flags(rep)
            rows.append(
                [k, len(members), flags.is_loop, len(left_nonsingular_elements(rep))]
            )
        return rows


def _relation_test(relation: str):
    if relation in ("iso", "isomorphism"):
        return are_isomorphic
    if relation == "isotopy":
        return are_isotopic
    raise ValueError(f"unknown relation {relation!r} (expected 'iso' or 'isotopy')")


def _pair_related(args) -> bool:
    relation, table1, table2 = args
    test = _relation_test(relation)
    return test(validate_right_loop(table1), validate_right_loop(table2)) is not None


def classify(
    loops,
    relation: str = "isotopy",
    labels=None,
    jobs: int = 1,
) -> ClassPartition:
    """Partition same-order right loops into equivalence classes, bucketing
    by cheap invariants first. The class representative is the member with
    the lexicographically least table; class order follows the least member
    index. The result does not depend on jobs."""
    loops = tuple(loops)
    test = _relation_test(relation)
    if labels is None:
        labels = tuple(str(i) for i in range(len(loops)))
    else:
        labels = tuple(labels)
        if len(labels) != len(loops):
            raise ValueError("one label per loop required")
    if loops and any(l.order != loops[0].order for l in loops):
        raise ValueError("classification requires loops of equal order")

    buckets: dict = {}
    for i, loop in enumerate(loops):
        buckets.setdefault(_bucket_key(loop), []).append(i)

    uf = _UnionFind(len(loops))
    for key in sorted(buckets):
        members = buckets[key]
        if jobs > 1:
            pairs = list(itertools.combinations(members, 2))
            from concurrent.futures import ProcessPoolExecutor

            args = [(relation, loops[i].table, loops[j].table) for i, j in pairs]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                hits = list(pool.map(_pair_related, args, chunksize=16))
            for (i, j), hit in zip(pairs, hits):
                if hit:
                    uf.union(i, j)
        else:
            reps: list[int] = []
            for i in members:
                for r in reps:
                    if test(loops[r], loops[i]) is not None:
                        uf.union(r, i)
                        break
                else:
                    reps.append(i)

    grouped: dict[int, list[int]] = {}
    for i in range(len(loops)):
        grouped.setdefault(uf.find(i), []).append(i)
    classes = tuple(
        tuple(sorted(members))
        for _, members in sorted(grouped.items(), key=lambda kv: min(kv[1]))
    )
    representatives = tuple(
        validate_right_loop(min(loops[i].table for i in members))
        for members in classes
    )
    return ClassPartition(relation, labels, classes, representatives)


# ---------------------------------------------------------------------------
# autotopies and pseudo-automorphisms


@dataclass(frozen=True)
class AutotopyGroup:
    """All autotopies of a right loop, with the sizes of the stabilizer
    subgroups: A1 fixes 0 under alpha, A2 fixes 0 under beta, and their
    intersection is the automorphism group acting diagonally."""

    loop: RightLoop
    elements: tuple[IsotopyWitness, ...]

    def __repr__(self):
        return (
            f"AutotopyGroup(order={self.u_size}, a1={self.a1_size}, "
            f"a2={self.a2_size}, aut={self.aut_size})"
        )

    @property
    def u_size(self) -> int:
        return len(self.elements)

    @property
    def a1_size(self) -> int:
        return sum(1 for w in self.elements if w.alpha[0] == 0)

    @property
    def a2_size(self) -> int:
        return sum(1 for w in self.elements if w.beta[0] == 0)

    @property
    def aut_size(self) -> int:
        return len(self.automorphisms)

    @property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        maps = []
        for w in self.elements:
            if w.alpha[0] == 0 and w.beta[0] == 0:
                if not w.is_isomorphism():
                    raise AssertionError(
                        "autotopy fixing 0 on both sides is not diagonal"
                    )
                maps.append(w.alpha)
        return tuple(maps)


def autotopy_group(loop: RightLoop) -> AutotopyGroup:
    """Enumerate the full autotopy group by factoring through principal
    isotopes: every autotopy is an isomorphism onto some principal isotope
    composed with the principal isotopy back."""
    n = loop.order
    if n > AUTOTOPY_ORDER_CAP:
        raise OrderTooLargeError(
            f"autotopy enumeration is capped at order {AUTOTOPY_ORDER_CAP}, got {n}"
        )
    t = loop.table
    found = set()
    for a in left_nonsingular_elements(loop):
        la_inv = invert(t[a])
        for b in range(n):
            rb_inv = invert(loop.columns[b])
            isotope, relabel = principal_isotope_with_relabel(loop, a, b)
            for f in isomorphisms(loop, isotope):
                alpha = tuple(rb_inv[relabel[f[x]]] for x in range(n))
                beta = tuple(la_inv[relabel[f[x]]] for x in range(n))
                gamma = tuple(relabel[f[x]] for x in range(n))
                found.add((alpha, beta, gamma))
    witnesses = []
    for alpha, beta, gamma in sorted(found):
        w = IsotopyWitness(alpha, beta, gamma)
        if not w.verify(loop, loop):
            raise AssertionError("constructed autotopy failed verification")
        witnesses.append(w)
    triples = found
    for w1 in witnesses:
        if (invert(w1.alpha), invert(w1.beta), invert(w1.gamma)) not in triples:
            raise AssertionError("autotopy set is not closed under inversion")
    # closure under composition; quadratic but the order cap keeps it small
    for w1 in witnesses:
        for w2 in witnesses:
            w = w1.then(w2)
            if (w.alpha, w.beta, w.gamma) not in triples:
                raise AssertionError("autotopy set is not closed under composition")
    return AutotopyGroup(loop, tuple(witnesses))


def pseudo_automorphism_check(
    loop: RightLoop, eta, companion: int, side: str = "right"
) -> bool:
    """Check the pseudo-automorphism identity for a bijection eta with the
    given companion: on the right, eta(x*y) * c = eta(x) * (eta(y) * c); on
    the left, c * eta(x*y) = (c * eta(x)) * eta(y), which requires c to be
    left non-singular."""
    n = loop.order
    eta = tuple(eta)
    if not is_permutation(eta, n):
        raise ValueError("eta must be a bijection on positions")
    if eta[0] != 0:
        return False
    t = loop.table
    c = companion
    if side == "right":
        return all(
            t[eta[t[x][y]]][c] == t[eta[x]][t[eta[y]][c]]
            for x in range(n)
            for y in range(n)
        )
    if side == "left":
        if c not in left_nonsingular_elements(loop):
            raise NotLeftNonsingularError(
                f"left companion {c} must be left non-singular"
            )
        return all(
            t[c][eta[t[x][y]]] == t[t[c][eta[x]]][eta[y]]
            for x in range(n)
            for y in range(n)
        )
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def pseudo_autotopy_triple(
    loop: RightLoop, eta, companion: int, side: str = "right"
) -> IsotopyWitness:
    """The autotopy candidate attached to a pseudo-automorphism: on the
    right (eta, R(c) o eta, R(c) o eta); on the left (L(c) o eta, eta,
    L(c) o eta)."""
    n = loop.order
    eta = tuple(eta)
    t = loop.table
    if side == "right":
        shifted = tuple(t[eta[x]][companion] for x in range(n))
        return IsotopyWitness(eta, shifted, shifted)
    if side == "left":
        if companion not in left_nonsingular_elements(loop):
            raise NotLeftNonsingularError(
                f"left companion {companion} must be left non-singular"
            )
        shifted = tuple(t[companion][eta[x]] for x in range(n))
        return IsotopyWitness(shifted, eta, shifted)
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")
