"""Executable checks of structural facts about transversal loops, run over
a built-in catalog of (group, subgroup) pairs.

Each check id names one verifiable statement. Implication-shaped statements
are checked as implications: when the hypothesis fails on an entry the
report says "vacuous" rather than silently passing, except where a
contrapositive reading still gives the entry real content (see check
"prop3.7"). Failing reports always carry a concrete counterexample.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from .burnside import dihedral_isotopy_count, subset_orbit_count
from .flips import FlipSet, affine_families, affine_family, flip_loop
from .groups import (
    FiniteGroup,
    Subgroup,
    build_named_group,
    core,
    generated_subgroup,
    is_nilpotent,
    is_normal,
    is_solvable,
    parse_subgroup,
    quotient,
    subgroup,
)
from .isotopy import (
    are_isomorphic,
    are_isotopic,
    autotopy_group,
    classify,
    pseudo_automorphism_check,
    pseudo_autotopy_triple,
)
from .rightloops import left_nonsingular_elements, structure_flags
from .transversals import enumerate_transversals, induced_right_loop

CHECK_IDS = (
    "facts",
    "prop3.2",
    "prop3.3",
    "prop3.5",
    "prop3.7",
    "prop3.8",
    "cor3.8",
    "prop3.9",
    "thm3.12",
    "thm4.1",
    "thm4.2",
)

_FACT_KEYS = ("normal", "isotopy_classes", "isomorphism_classes", "loop_transversals")

DEFAULT_PRIMES = (3, 5, 7)


@dataclass(frozen=True)
class CatalogEntry:
    """One (group, subgroup) pair with optional expected facts."""

    label: str
    group: str
    subgroup: str
    facts: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        facts = self.facts
        if isinstance(facts, dict):
            facts = tuple(sorted(facts.items()))
        else:
            facts = tuple(sorted(tuple(facts)))
        for key, _ in facts:
            if key not in _FACT_KEYS:
                raise ValueError(f"unknown fact key {key!r}")
        object.__setattr__(self, "facts", facts)

    def facts_dict(self) -> dict:
        return dict(self.facts)


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    label: str
    verdict: str
    details: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "vacuous"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        details = self.details
        if isinstance(details, dict):
            details = tuple(sorted(details.items()))
        object.__setattr__(self, "details", tuple(details))

    def details_dict(self) -> dict:
        return dict(self.details)

    def to_json_obj(self) -> dict:
        return {
            "check": self.check_id,
            "label": self.label,
            "verdict": self.verdict,
            "details": _jsonable(self.details_dict()),
        }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return str(value)


def default_catalog() -> tuple[CatalogEntry, ...]:
    """The built-in (group, subgroup) pairs with their expected facts."""
    return (
        CatalogEntry(
            "sym3-point-swap",
            "sym:3",
            "(2,3)",
            {
                "normal": False,
                "isotopy_classes": 2,
                "isomorphism_classes": 3,
                "loop_transversals": 1,
            },
        ),
        CatalogEntry(
            "alt4-double-swap",
            "alt:4",
            "(1,2)(3,4)",
            {
                "normal": False,
                "isotopy_classes": 2,
                "isomorphism_classes": 5,
                "loop_transversals": 0,
            },
        ),
        CatalogEntry(
            "dihedral3-mirror",
            "dihedral:3",
            "x",
            {
                "normal": False,
                "isotopy_classes": 2,
                "isomorphism_classes": 3,
                "loop_transversals": 1,
            },
        ),
        CatalogEntry(
            "dihedral4-mirror",
            "dihedral:4",
            "x",
            {
                "normal": False,
                "isotopy_classes": 4,
                "isomorphism_classes": 6,
                "loop_transversals": 2,
            },
        ),
        CatalogEntry(
            "dihedral5-mirror",
            "dihedral:5",
            "x",
            {
                "normal": False,
                "isotopy_classes": 3,
                "isomorphism_classes": 6,
                "loop_transversals": 1,
            },
        ),
        CatalogEntry(
            "dihedral6-mirror",
            "dihedral:6",
            "x",
            {
                "normal": False,
                "isotopy_classes": 8,
                "isomorphism_classes": 20,
                "loop_transversals": 2,
            },
        ),
        CatalogEntry(
            "dihedral7-mirror",
            "dihedral:7",
            "x",
            {
                "normal": False,
                "isotopy_classes": 5,
                "isomorphism_classes": 14,
                "loop_transversals": 1,
            },
        ),
        CatalogEntry(
            "dihedral3-rotations",
            "dihedral:3",
            "y",
            {
                "normal": True,
                "isotopy_classes": 1,
                "isomorphism_classes": 1,
                "loop_transversals": 3,
            },
        ),
        CatalogEntry(
            "dihedral6-center",
            "dihedral:6",
            "y^3",
            {
                "normal": True,
                "isotopy_classes": 1,
                "isomorphism_classes": 1,
                "loop_transversals": 32,
            },
        ),
        CatalogEntry(
            "dihedral6-klein",
            "dihedral:6",
            "y^3 x",
            {
                "normal": False,
                "isotopy_classes": 2,
                "isomorphism_classes": 3,
                "loop_transversals": 4,
            },
        ),
        CatalogEntry(
            "cyclic8-even",
            "cyclic:8",
            "2",
            {
                "normal": True,
                "isotopy_classes": 1,
                "isomorphism_classes": 1,
                "loop_transversals": 4,
            },
        ),
    )


def load_catalog(path) -> tuple[CatalogEntry, ...]:
    """Read a catalog from a JSON file: a list of {label, group, subgroup,
    facts?} objects."""
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, list):
        raise ValueError("catalog file must hold a JSON list")
    entries = []
    for item in raw:
        entries.append(
            CatalogEntry(
                item["label"],
                item["group"],
                item["subgroup"],
                item.get("facts", {}),
            )
        )
    return tuple(entries)


class _EntryData:
    """Lazily computed artifacts for one catalog entry."""

    def __init__(self, entry: CatalogEntry):
        self.entry = entry
        self.group = build_named_group(entry.group)
        self.subgroup = parse_subgroup(self.group, entry.subgroup)
        self._transversals = None
        self._loops = None
        self._partitions = {}
        self._autotopies = {}

    @property
    def transversals(self):
        if self._transversals is None:
            self._transversals = tuple(
                enumerate_transversals(self.group, self.subgroup)
            )
        return self._transversals

    @property
    def loops(self):
        if self._loops is None:
            self._loops = tuple(induced_right_loop(t) for t in self.transversals)
        return self._loops

    def partition(self, relation: str):
        if relation not in self._partitions:
            labels = tuple(t.label() for t in self.transversals)
            self._partitions[relation] = classify(self.loops, relation, labels)
        return self._partitions[relation]

    def autotopies(self, loop):
        if loop.table not in self._autotopies:
            self._autotopies[loop.table] = autotopy_group(loop)
        return self._autotopies[loop.table]


def _quotient_pair_data(data: _EntryData):
    N = core(data.group, data.subgroup)
    Q, projection = quotient(data.group, N)
    HQ = subgroup(Q, {projection[h] for h in data.subgroup.members})
    return N, Q, HQ


def _is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _check_facts(data: _EntryData) -> CheckReport:
    expected = data.entry.facts_dict()
    computed = {}
    if "normal" in expected:
        computed["normal"] = is_normal(data.group, data.subgroup)
    if "isotopy_classes" in expected:
        computed["isotopy_classes"] = len(data.partition("isotopy").classes)
    if "isomorphism_classes" in expected:
        computed["isomorphism_classes"] = len(data.partition("iso").classes)
    if "loop_transversals" in expected:
        computed["loop_transversals"] = sum(
            1 for loop in data.loops if structure_flags(loop).is_loop
        )
    if not expected:
        return CheckReport("facts", data.entry.label, "vacuous", {"declared": 0})
    mismatches = {
        key: {"expected": expected[key], "computed": computed[key]}
        for key in computed
        if computed[key] != expected[key]
    }
    if mismatches:
        return CheckReport("facts", data.entry.label, "fail", mismatches)
    return CheckReport("facts", data.entry.label, "pass", computed)


def _check_prop32(data: _EntryData) -> CheckReport:
    """Isotopic right loops have equally many left non-singular elements,
    and a loop is isotopic only to loops."""
    partition = data.partition("isotopy")
    loops = data.loops
    profiles = []
    for members in partition.classes:
        rep = loops[members[0]]
        rep_count = len(left_nonsingular_elements(rep))
        rep_is_loop = structure_flags(rep).is_loop
        profiles.append({"size": len(members), "lns": rep_count, "loop": rep_is_loop})
        for m in members[1:]:
            other = loops[m]
            witness = are_isotopic(rep, other)
            if witness is None:
                return CheckReport(
                    "prop3.2",
                    data.entry.label,
                    "fail",
                    {"broken_class": partition.labels[m]},
                )
            if len(left_nonsingular_elements(other)) != rep_count:
                return CheckReport(
                    "prop3.2",
                    data.entry.label,
                    "fail",
                    {
                        "counterexample": partition.labels[m],
                        "lns_rep": rep_count,
                        "lns_other": len(left_nonsingular_elements(other)),
                    },
                )
            if structure_flags(other).is_loop != rep_is_loop:
                return CheckReport(
                    "prop3.2",
                    data.entry.label,
                    "fail",
                    {"loop_flag_broken": partition.labels[m]},
                )
    return CheckReport(
        "prop3.2", data.entry.label, "pass", {"classes": profiles}
    )


def _check_prop33(data: _EntryData) -> CheckReport:
    """The isotopy class count is unchanged by factoring out the core."""
    N, Q, HQ = _quotient_pair_data(data)
    upstairs = len(data.partition("isotopy").classes)
    downstairs_loops = tuple(
        induced_right_loop(t) for t in enumerate_transversals(Q, HQ)
    )
    downstairs = len(classify(downstairs_loops, "isotopy").classes)
    details = {
        "core_order": N.order,
        "itp": upstairs,
        "itp_quotient": downstairs,
    }
    verdict = "pass" if upstairs == downstairs else "fail"
    return CheckReport("prop3.3", data.entry.label, verdict, details)


def _check_prop35(data: _EntryData) -> CheckReport:
    """With a corefree subgroup and a single isotopy class, no transversal
    is a loop transversal and every transversal generates the group."""
    N = core(data.group, data.subgroup)
    itp = len(data.partition("isotopy").classes)
    if N.order != 1 or itp != 1:
        return CheckReport(
            "prop3.5",
            data.entry.label,
            "vacuous",
            {"core_order": N.order, "itp": itp},
        )
    for t, loop in zip(data.transversals, data.loops):
        if structure_flags(loop).is_loop:
            return CheckReport(
                "prop3.5", data.entry.label, "fail", {"loop_transversal": t.label()}
            )
        if generated_subgroup(data.group, t.reps).order != data.group.order:
            return CheckReport(
                "prop3.5", data.entry.label, "fail", {"proper_span": t.label()}
            )
    return CheckReport(
        "prop3.5", data.entry.label, "pass", {"transversals": len(data.loops)}
    )


def _check_prop37(data: _EntryData) -> CheckReport | None:
    """For a nilpotent group, a single isotopy class forces normality;
    checked through the contrapositive on non-normal entries."""
    if not is_nilpotent(data.group):
        return None
    normal = is_normal(data.group, data.subgroup)
    itp = len(data.partition("isotopy").classes)
    details = {"normal": normal, "itp": itp}
    if itp == 1 and not normal:
        return CheckReport("prop3.7", data.entry.label, "fail", details)
    details["reading"] = "direct" if itp == 1 else "contrapositive"
    return CheckReport("prop3.7", data.entry.label, "pass", details)


def _check_prop38(data: _EntryData) -> CheckReport | None:
    """For a solvable group with |H| coprime to the index, a single isotopy
    class forces normality."""
    index = data.group.order // data.subgroup.order
    if not (is_solvable(data.group) and math.gcd(data.subgroup.order, index) == 1):
        return None
    itp = len(data.partition("isotopy").classes)
    if itp != 1:
        return CheckReport("prop3.8", data.entry.label, "vacuous", {"itp": itp})
    normal = is_normal(data.group, data.subgroup)
    verdict = "pass" if normal else "fail"
    return CheckReport(
        "prop3.8", data.entry.label, verdict, {"itp": itp, "normal": normal}
    )


def _check_cor38(data: _EntryData) -> CheckReport | None:
    """For a group of squarefree order, a single isotopy class forces
    normality."""
    if not _is_squarefree(data.group.order):
        return None
    itp = len(data.partition("isotopy").classes)
    if itp != 1:
        return CheckReport("cor3.8", data.entry.label, "vacuous", {"itp": itp})
    normal = is_normal(data.group, data.subgroup)
    verdict = "pass" if normal else "fail"
    return CheckReport(
        "cor3.8", data.entry.label, verdict, {"itp": itp, "normal": normal}
    )


def _check_prop39() -> list[CheckReport]:
    """Autotopy / pseudo-automorphism correspondence on the mod-5 flip
    loops: for every autotopy (alpha, beta, gamma), alpha fixing 0, beta
    equalling gamma, and alpha being a right pseudo-automorphism with
    companion beta(0) are equivalent (dually on the left); and for every
    bijection eta and companion c, the pseudo-automorphism identity holds
    exactly when the associated triple is an autotopy."""
    reports = []
    n = 5
    for mask in range(1 << (n - 1)):
        B = FlipSet.from_mask(n, mask << 1)
        loop = flip_loop(n, B)
        label = f"mod5 B={B.format()}"
        group = autotopy_group(loop)
        failure = None
        for w in group.elements:
            right = (
                w.alpha[0] == 0,
                w.beta == w.gamma,
                pseudo_automorphism_check(loop, w.alpha, w.beta[0], "right"),
            )
            left = (
                w.beta[0] == 0,
                w.alpha == w.gamma,
                pseudo_automorphism_check(loop, w.beta, w.alpha[0], "left"),
            )
            if len(set(right)) != 1 or len(set(left)) != 1:
                failure = {"autotopy": repr(w), "right": right, "left": left}
                break
        if failure is None:
            lns = left_nonsingular_elements(loop)
            for eta in itertools.permutations(range(n)):
                for c in range(n):
                    holds = pseudo_automorphism_check(loop, eta, c, "right")
                    triple = pseudo_autotopy_triple(loop, eta, c, "right")
                    if holds != triple.verify(loop, loop):
                        failure = {"eta": eta, "companion": c, "side": "right"}
                        break
                    if c in lns:
                        holds = pseudo_automorphism_check(loop, eta, c, "left")
                        triple = pseudo_autotopy_triple(loop, eta, c, "left")
                        if holds != triple.verify(loop, loop):
                            failure = {"eta": eta, "companion": c, "side": "left"}
                            break
                if failure:
                    break
        if failure:
            reports.append(CheckReport("prop3.9", label, "fail", failure))
        else:
            reports.append(
                CheckReport(
                    "prop3.9",
                    label,
                    "pass",
                    {
                        "autotopies": group.u_size,
                        "a1": group.a1_size,
                        "a2": group.a2_size,
                        "aut": group.aut_size,
                    },
                )
            )
    return reports


def _aut_transitive(data: _EntryData, loop) -> bool:
    """Whether the automorphism group acts transitively on the non-identity
    positions."""
    n = loop.order
    if n <= 2:
        return True
    maps = data.autotopies(loop).automorphisms
    reached = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for f in maps:
            y = f[x]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return len(reached) == n - 1


def _check_thm312(data: _EntryData) -> CheckReport:
    """Isotopic right loops whose automorphism groups act transitively on
    non-identity elements must be isomorphic."""
    partition = data.partition("isotopy")
    loops = data.loops
    pairs = 0
    transitive_total = 0
    for members in partition.classes:
        transitive = [m for m in members if _aut_transitive(data, loops[m])]
        transitive_total += len(transitive)
        for a, b in itertools.combinations(transitive, 2):
            pairs += 1
            if are_isomorphic(loops[a], loops[b]) is None:
                return CheckReport(
                    "thm3.12",
                    data.entry.label,
                    "fail",
                    {
                        "first": partition.labels[a],
                        "second": partition.labels[b],
                    },
                )
    if pairs == 0:
        return CheckReport(
            "thm3.12",
            data.entry.label,
            "vacuous",
            {"transitive_members": transitive_total},
        )
    return CheckReport(
        "thm3.12",
        data.entry.label,
        "pass",
        {"pairs": pairs, "transitive_members": transitive_total},
    )


def _check_thm41(p: int) -> CheckReport:
    """For an odd prime modulus, two flip loops are isotopic exactly when
    each flip set lies in the other's affine family."""
    if p > 7:
        return CheckReport(
            "thm4.1", f"p={p}", "vacuous", {"note": "pairwise check capped at p=7"}
        )
    subsets = [FlipSet.from_mask(p, mask << 1) for mask in range(1 << (p - 1))]
    loops = {B: flip_loop(p, B) for B in subsets}
    families = {B: affine_family(p, B) for B in subsets}
    for B, C in itertools.combinations_with_replacement(subsets, 2):
        predicted = C in families[B]
        if predicted != (B in families[C]):
            return CheckReport(
                "thm4.1",
                f"p={p}",
                "fail",
                {"asymmetric": [B.format(), C.format()]},
            )
        witness = are_isotopic(loops[B], loops[C])
        if (witness is not None) != predicted:
            return CheckReport(
                "thm4.1",
                f"p={p}",
                "fail",
                {
                    "B": B.format(),
                    "C": C.format(),
                    "family_predicts": predicted,
                    "isotopic": witness is not None,
                },
            )
    return CheckReport("thm4.1", f"p={p}", "pass", {"subsets": len(subsets)})


def _check_thm42(p: int) -> CheckReport:
    """The isotopy class count of mod-p flip loops from the cycle-index
    formula agrees with the Burnside orbit count, the family census, and
    (for p at most 7) direct classification."""
    formula = dihedral_isotopy_count(p)
    orbit_pairs = subset_orbit_count(p)
    families = len(affine_families(p))
    details = {
        "formula": formula,
        "orbit_count": orbit_pairs,
        "families": families,
    }
    agree = orbit_pairs == 2 * formula and families == formula
    if p <= 7:
        loops = [
            flip_loop(p, FlipSet.from_mask(p, mask << 1))
            for mask in range(1 << (p - 1))
        ]
        direct = len(classify(loops, "isotopy").classes)
        details["direct"] = direct
        agree = agree and direct == formula
    return CheckReport("thm4.2", f"p={p}", "pass" if agree else "fail", details)


def run_suite(catalog=None, check_ids=None, ps=DEFAULT_PRIMES) -> list[CheckReport]:
    """Run the requested checks (all by default) over the catalog entries
    and the standalone prime-parameterized checks; reports come back in
    catalog order within check-id order."""
    if catalog is None:
        catalog = default_catalog()
    if check_ids is None:
        requested = list(CHECK_IDS)
    else:
        requested = list(check_ids)
        unknown = [c for c in requested if c not in CHECK_IDS]
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(sorted(unknown))}")
        requested = [c for c in CHECK_IDS if c in requested]
    data = [_EntryData(entry) for entry in catalog]
    per_entry = {
        "facts": _check_facts,
        "prop3.2": _check_prop32,
        "prop3.3": _check_prop33,
        "prop3.5": _check_prop35,
        "prop3.7": _check_prop37,
        "prop3.8": _check_prop38,
        "cor3.8": _check_cor38,
        "thm3.12": _check_thm312,
    }
    reports = []
    for check in requested:
        if check in per_entry:
            for d in data:
                report = per_entry[check](d)
                if report is not None:
                    reports.append(report)
        elif check == "prop3.9":
            reports.extend(_check_prop39())
        elif check == "thm4.1":
            reports.extend(_check_thm41(p) for p in ps)
        elif check == "thm4.2":
            reports.extend(_check_thm42(p) for p in ps)
    return reports


def suite_passed(reports) -> bool:
    return all(r.verdict != "fail" for r in reports)
