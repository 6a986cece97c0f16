"""The posetal category of finite families of finite-or-cofinite sets.

An object is a finite family of :class:`~famcat.nset.NSet` values kept in a
canonical form: the empty set is always a member, and apart from it no member
is contained in another.  There is an arrow ``X -> Y`` exactly when every
member of X sits inside some member of Y, so the category is posetal and
every label is a predicate on an ordered pair of families.

Three labels are decided here:

* ``c`` (cofibration): every arrow carries it.
* ``w`` (weak equivalence): the arrow exists and every member of the target
  is a near-subset of some member of the source (finitely many points may
  stick out).
* ``f`` (fibration): the arrow exists and the family satisfies the finite
  extension property decided by :func:`fibration_condition`.

The decision functions accept any iterable of NSets, not only canonical
:class:`Obj` values; the harness exploits that to evaluate labels on
non-canonical presentations of the same object.  All values are immutable
and every function is pure, so concurrent use is safe.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .nset import EMPTY, FULL, Kind, NSet

Family = Iterable[NSet]


def _member_sort_key(m: NSet) -> tuple[int, int, tuple[int, ...]]:
    return (0 if m.is_finite else 1, len(m.support), m.support)


@dataclass(frozen=True)
class Obj:
    """A canonical family: contains the empty set, plus an antichain."""

    members: tuple[NSet, ...]

    def __post_init__(self) -> None:
        ms = self.members
        if EMPTY not in ms:
            raise ValueError("a canonical family contains the empty set")
        if ms != tuple(sorted(set(ms), key=_member_sort_key)):
            raise ValueError("members must be sorted and duplicate-free")
        for a, b in itertools.permutations(ms, 2):
            if a != EMPTY and a.is_subset(b):
                raise ValueError(f"{a} is dominated by {b}; family is not an antichain")

    @classmethod
    def of(cls, *members: NSet) -> "Obj":
        return normalize(members)

    def __iter__(self) -> Iterator[NSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, m: NSet) -> bool:
        return m in self.members

    @property
    def has_full(self) -> bool:
        return FULL in self.members

    def to_json_dict(self) -> dict[str, list[dict[str, list[int]]]]:
        return {"members": [m.to_json_dict() for m in self.members]}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, object]) -> "Obj":
        if not isinstance(data, Mapping) or set(data) != {"members"}:
            raise ValueError(f"an object literal is {{'members': [...]}}: {data!r}")
        raw = data["members"]
        if not isinstance(raw, (list, tuple)):
            raise ValueError("'members' must be a list")
        return normalize(NSet.from_json_dict(m) for m in raw)

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self.members) + "}"


def normalize(members: Family) -> Obj:
    """Canonical form: add the empty set, drop duplicates and dominated members.

    The result has mutual arrows with the input family whenever the input is
    non-empty; the empty input normalizes to the initial object ``{{}}``.
    """
    pool = set(members)
    pool.add(EMPTY)
    keep = {m for m in pool if not any(m != o and m.is_subset(o) for o in pool)}
    keep.add(EMPTY)
    return Obj(tuple(sorted(keep, key=_member_sort_key)))


INITIAL = Obj((EMPTY,))
TERMINAL = Obj((EMPTY, FULL))


def initial() -> Obj:
    """The least object ``{{}}``: it maps into everything."""
    return INITIAL


def terminal() -> Obj:
    """The greatest object ``{{}, N}``: everything maps into it."""
    return TERMINAL


class StarTemplate(enum.Enum):
    """Orientation of the near-subset test behind the ``w`` label.

    SOURCE_MINUS_TARGET (the default) asks each source member to be inside
    some target member up to finitely many points.  TARGET_MINUS_SOURCE
    measures the difference the other way around; it is not invariant under
    isomorphic presentations of the endpoints and exists only so the
    harness can demonstrate that defect on request.
    """

    SOURCE_MINUS_TARGET = "source_minus_target"
    TARGET_MINUS_SOURCE = "target_minus_source"


def arrow_exists(source: Family, target: Family) -> bool:
    """True iff every member of the source is contained in some target member."""
    tgt = tuple(target)
    return all(any(s.is_subset(t) for t in tgt) for s in source)


def star_arrow(
    source: Family,
    target: Family,
    template: StarTemplate = StarTemplate.SOURCE_MINUS_TARGET,
) -> bool:
    """Near-inclusion: every source member almost fits in some target member."""
    tgt = tuple(target)
    if template is StarTemplate.SOURCE_MINUS_TARGET:
        return all(any((s - t).is_finite for t in tgt) for s in source)
    return all(any((t - s).is_finite for t in tgt) for s in source)


def label_w(
    source: Family,
    target: Family,
    template: StarTemplate = StarTemplate.SOURCE_MINUS_TARGET,
) -> bool:
    """Weak equivalence: the arrow plus a near-inclusion back."""
    src, tgt = tuple(source), tuple(target)
    return arrow_exists(src, tgt) and star_arrow(tgt, src, template)


def label_c(source: Family, target: Family) -> bool:
    """Cofibration: every arrow is one."""
    return arrow_exists(source, target)


# -- the fibration condition and its three deciders -----------------------


def fibration_condition(source: Family, target: Family) -> bool:
    """Reduced decider: every target member is contained in some source member.

    For a finite source family this is equivalent to the definitional
    condition (for every x in the source plus the empty set, every target
    member y, and every finite b inside y, some source member contains
    ``(x & y) | b``): see :func:`fibration_gap` for the witness argument
    that eliminates the quantifier over b.
    """
    src = tuple(source)
    return all(any(y.is_subset(x) for x in src) for y in target)


@dataclass(frozen=True)
class GapWitness:
    """A finite blocker showing the definitional fibration condition fails.

    No source member contains ``(x & y) | blocker`` even though ``blocker``
    is a finite subset of ``y``.
    """

    x: NSet
    y: NSet
    blocker: NSet

    def defeats(self, source: Family) -> bool:
        """Replay the witness: confirm no source member covers it."""
        need = (self.x & self.y) | self.blocker
        return not any(need.is_subset(m) for m in source)

    def to_json_dict(self) -> dict[str, object]:
        return {
            "x": self.x.to_json_dict(),
            "y": self.y.to_json_dict(),
            "blocker": self.blocker.to_json_dict(),
        }


def fibration_gap(source: Family, target: Family) -> GapWitness | None:
    """Definitional decider via witness search; ``None`` means the condition holds.

    For each pair (x, y) the candidates are the source members containing
    ``x & y``.  If none of them contains y outright, collecting one element
    of ``y - candidate`` per candidate yields a finite subset of y that no
    member can cover, because the candidate set is finite.  That blocker is
    returned; its absence for every pair decides the condition positively.
    """
    src = tuple(source)
    xs = list(src)
    if EMPTY not in xs:
        xs.append(EMPTY)
    for x in xs:
        for y in target:
            meet = x & y
            candidates = [m for m in src if meet.is_subset(m)]
            if any(y.is_subset(m) for m in candidates):
                continue
            picks = []
            for m in candidates:
                gap = (y - m).smallest()
                assert gap is not None  # y is not inside m, so something is missing
                picks.append(gap)
            return GapWitness(x=x, y=y, blocker=NSet.fin(picks))
    return None


def fibration_condition_enumerated(
    source: Family, target: Family, max_support: int = 12
) -> bool:
    """Brute-force decider enumerating every finite b; finite members only."""
    src, tgt = tuple(source), tuple(target)
    for m in src + tgt:
        if not m.is_finite:
            raise ValueError("the enumerating decider needs finite members")
        if len(m.support) > max_support:
            raise ValueError("support too large to enumerate")
    xs = list(src)
    if EMPTY not in xs:
        xs.append(EMPTY)
    for x in xs:
        for y in tgt:
            for size in range(len(y.support) + 1):
                for b in itertools.combinations(y.support, size):
                    need = (x & y) | NSet.fin(b)
                    if not any(need.is_subset(m) for m in src):
                        return False
    return True


def label_f(source: Family, target: Family) -> bool:
    """Fibration label: the arrow exists and the extension condition holds."""
    src, tgt = tuple(source), tuple(target)
    return arrow_exists(src, tgt) and fibration_condition(src, tgt)


@dataclass(frozen=True)
class LabelVerdict:
    """All label facts for one ordered pair.

    ``w`` and ``f`` imply ``arrow``; ``c`` coincides with it.  ``star`` is
    the near-inclusion in the queried direction (source into target).
    """

    arrow: bool
    star: bool
    w: bool
    f: bool
    c: bool

    def to_json_dict(self) -> dict[str, bool]:
        return {"arrow": self.arrow, "star": self.star, "w": self.w, "f": self.f, "c": self.c}


def label_verdict(
    source: Family,
    target: Family,
    template: StarTemplate = StarTemplate.SOURCE_MINUS_TARGET,
) -> LabelVerdict:
    src, tgt = tuple(source), tuple(target)
    arrow = arrow_exists(src, tgt)
    return LabelVerdict(
        arrow=arrow,
        star=star_arrow(src, tgt, template),
        w=arrow and star_arrow(tgt, src, template),
        f=arrow and fibration_condition(src, tgt),
        c=arrow,
    )


# -- limits ----------------------------------------------------------------


def product(x: Family, y: Family) -> Obj:
    """Binary product: pointwise intersections, normalized."""
    ys = tuple(y)
    return normalize(a & b for a in x for b in ys)


def coproduct(x: Family, y: Family) -> Obj:
    """Binary coproduct: the union of the families, normalized."""
    return normalize(itertools.chain(x, y))


def is_iso(x: Family, y: Family) -> bool:
    """Mutual arrows; on canonical objects this agrees with equality."""
    xs, ys = tuple(x), tuple(y)
    return arrow_exists(xs, ys) and arrow_exists(ys, xs)
