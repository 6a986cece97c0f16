"""Virtual objects: infinite families handled through decidable oracles.

Several constructions of the category produce families with infinitely many
members (every finite set, every finite enlargement of a member, ...).  They
are represented symbolically by :class:`VObj` and queried through closed
forms proved once and tested against the explicit kernel:

* ``WC(X, Y)`` - the factorization middle ``{x | b : x in X, b finite, b
  inside some member of Y}``.
* ``UNIVERSE`` - the family of all finite sets; definitionally
  ``WC(initial, terminal)`` (wire name ``utilde``).
* ``UPROD(X)`` - the product of the universe object with X; definitionally
  ``WC(initial, X)``.
* ``EXP(B, C)`` - the exponential; reducible to the explicit object computed
  by :func:`exp_explicit`.
* ``EXP_SLICE(A, B, C)`` - the exponential pulled into the slice over A.
* ``WEXP(A, B, C)`` - the weak-equivalence classifier of the slice over A;
  queried through :func:`wexp_member`.

Arrow queries that no documented rule covers raise
:class:`UndecidedPairError` rather than guessing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .kernel import (
    Obj,
    StarTemplate,
    arrow_exists,
    initial,
    label_w,
    normalize,
    product,
    star_arrow,
    terminal,
)
from .nset import EMPTY, FULL, NSet


class UndecidedPairError(Exception):
    """An arrow query between virtual objects with no documented rule."""


class VKind(enum.Enum):
    WC = "wc"
    UNIVERSE = "utilde"
    UPROD = "uprod"
    EXP = "exp"
    EXP_SLICE = "exp_slice"
    WEXP = "wexp"


@dataclass(frozen=True)
class VObj:
    """A symbolic family, described by its kind and explicit parameters."""

    kind: VKind
    x: Obj | None = None
    y: Obj | None = None
    a: Obj | None = None
    b: Obj | None = None
    c: Obj | None = None

    @classmethod
    def wc(cls, x: Obj, y: Obj) -> "VObj":
        return cls(VKind.WC, x=x, y=y)

    @classmethod
    def universe(cls) -> "VObj":
        """The family of all finite sets."""
        return cls(VKind.UNIVERSE)

    @classmethod
    def uprod(cls, x: Obj) -> "VObj":
        """The product of the universe object with an explicit object."""
        return cls(VKind.UPROD, x=x)

    @classmethod
    def exp(cls, b: Obj, c: Obj) -> "VObj":
        return cls(VKind.EXP, b=b, c=c)

    @classmethod
    def exp_slice(cls, a: Obj, b: Obj, c: Obj) -> "VObj":
        _require_slice(a, b, c)
        return cls(VKind.EXP_SLICE, a=a, b=b, c=c)

    @classmethod
    def wexp(cls, a: Obj, b: Obj, c: Obj) -> "VObj":
        _require_slice(a, b, c)
        return cls(VKind.WEXP, a=a, b=b, c=c)

    def describe(self) -> str:
        parts = [
            f"{f}={getattr(self, f)}"
            for f in ("x", "y", "a", "b", "c")
            if getattr(self, f) is not None
        ]
        return f"{self.kind.value}({', '.join(parts)})"

    def to_json_dict(self) -> dict[str, object]:
        out: dict[str, object] = {"vkind": self.kind.value}
        for f in ("x", "y", "a", "b", "c"):
            v = getattr(self, f)
            if v is not None:
                out[f] = v.to_json_dict()
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping[str, object]) -> "VObj":
        if not isinstance(data, Mapping) or "vkind" not in data:
            raise ValueError(f"a virtual-object literal carries 'vkind': {data!r}")
        try:
            kind = VKind(data["vkind"])
        except ValueError:
            raise ValueError(f"unknown vkind {data['vkind']!r}") from None
        fields = {}
        for f in ("x", "y", "a", "b", "c"):
            if f in data:
                fields[f] = Obj.from_json_dict(data[f])  # type: ignore[arg-type]
        builders = {
            VKind.WC: lambda: cls.wc(fields["x"], fields["y"]),
            VKind.UNIVERSE: cls.universe,
            VKind.UPROD: lambda: cls.uprod(fields["x"]),
            VKind.EXP: lambda: cls.exp(fields["b"], fields["c"]),
            VKind.EXP_SLICE: lambda: cls.exp_slice(fields["a"], fields["b"], fields["c"]),
            VKind.WEXP: lambda: cls.wexp(fields["a"], fields["b"], fields["c"]),
        }
        try:
            return builders[kind]()
        except KeyError as missing:
            raise ValueError(f"vkind {kind.value!r} is missing field {missing}") from None


def _require_slice(a: Obj, b: Obj, c: Obj) -> None:
    if not (arrow_exists(b, a) and arrow_exists(c, a)):
        raise ValueError("slice construction needs arrows from both b and c into a")


def _wc_parts(v: VObj) -> tuple[Obj, Obj]:
    """Source and bound families of a WC-shaped virtual object."""
    if v.kind is VKind.WC:
        return v.x, v.y  # type: ignore[return-value]
    if v.kind is VKind.UNIVERSE:
        return initial(), terminal()
    if v.kind is VKind.UPROD:
        return initial(), v.x  # type: ignore[return-value]
    raise UndecidedPairError(f"{v.describe()} is not WC-shaped")


# -- membership oracles ------------------------------------------------------


def wc_covers(v: VObj, s: NSet) -> bool:
    """Does some member of the WC-shaped family contain ``s``?

    A member is ``x | b`` with b finite and inside some bound member, so s
    is covered exactly when ``s - x`` is finite and fits inside a bound
    member for some x.
    """
    xs, ys = _wc_parts(v)
    for x in xs:
        d = s - x
        if d.is_finite and any(d.is_subset(y) for y in ys):
            return True
    return False


def wexp_member(b: Obj, c: Obj, s: NSet) -> bool:
    """Is ``s`` a member of the weak-equivalence classifier over (B, C)?

    Decided by the singleton criterion: the two-member family ``{{}, s}``
    must carry a weak equivalence between its products with B and with C.
    """
    z = normalize([s])
    return label_w(product(z, b), product(z, c))


# -- arrow oracles -----------------------------------------------------------


def arrow_into_vobj(z: Obj, v: VObj) -> bool:
    """Arrow from an explicit object into a virtual one."""
    if v.kind in (VKind.WC, VKind.UNIVERSE, VKind.UPROD):
        return all(wc_covers(v, m) for m in z)
    if v.kind is VKind.EXP:
        return arrow_exists(product(z, v.b), v.c)
    if v.kind is VKind.EXP_SLICE:
        return arrow_exists(z, v.a) and arrow_exists(product(z, v.b), v.c)
    if v.kind is VKind.WEXP:
        return arrow_exists(z, v.a) and label_w(product(z, v.b), product(z, v.c))
    raise UndecidedPairError(f"no arrow rule into {v.describe()}")


def arrow_from_vobj(v: VObj, t: Obj) -> bool:
    """Arrow from a virtual object to an explicit one, where a rule exists.

    For WC-shaped families the finite witness argument collapses the member
    quantifier: every ``x | b`` is covered exactly when each full ``x | y``
    is, because one missing point per candidate target member assembles a
    finite b that defeats them all.
    """
    if v.kind in (VKind.WC, VKind.UNIVERSE, VKind.UPROD):
        xs, ys = _wc_parts(v)
        return all(
            any((x | y).is_subset(m) for m in t) for x in xs for y in ys
        )
    if v.kind is VKind.EXP:
        return arrow_exists(exp_explicit(v.b, v.c), t)
    if v.kind is VKind.EXP_SLICE:
        return arrow_exists(exp_slice(v.a, v.b, v.c), t)
    raise UndecidedPairError(f"no arrow rule out of {v.describe()}")


def arrow_from_utilde(t: Obj) -> bool:
    """Arrow from the universe object: holds iff N itself is a member of t.

    Every finite set lies inside a member of t iff some member is N;
    otherwise picking one missing natural per member builds a finite set
    that none of them covers.
    """
    return t.has_full


def star_from_vobj(
    v: VObj, t: Obj, template: StarTemplate = StarTemplate.SOURCE_MINUS_TARGET
) -> bool:
    """Near-inclusion out of a WC-shaped family.

    The finite enlargement never matters: ``(x | b) - t`` is finite iff
    ``x - t`` is, so the query reduces to the explicit source part.
    """
    xs, _ = _wc_parts(v)
    return star_arrow(xs, t, template)


def star_into_vobj(
    t: Obj, v: VObj, template: StarTemplate = StarTemplate.SOURCE_MINUS_TARGET
) -> bool:
    """Near-inclusion into a WC-shaped family, reduced to its source part."""
    xs, _ = _wc_parts(v)
    return star_arrow(t, xs, template)


def label_w_into_vobj(z: Obj, v: VObj) -> bool:
    """Weak equivalence from an explicit object into a WC-shaped one."""
    return arrow_into_vobj(z, v) and star_from_vobj(v, z)


def is_iso_virtual(v: VObj, t: Obj) -> bool:
    """Mutual arrows between a virtual object and an explicit one."""
    return arrow_from_vobj(v, t) and arrow_into_vobj(t, v)


# -- exponentials ------------------------------------------------------------


def _maximal(sets: set[NSet]) -> list[NSet]:
    return [s for s in sets if not any(s != o and s.is_subset(o) for o in sets)]


def exp_explicit(b: Obj, c: Obj) -> Obj:
    """The exponential of C by B as an explicit object.

    A set s maps against every member of B into C exactly when s is inside
    the intersection of ``choice(m) | ~m`` over members m of B, for some
    choice of targets in C.  The maximal such intersections are the members;
    dominated partial intersections are pruned at every step, which keeps
    the choice-function blowup collapsed.
    """
    partials: set[NSet] = {FULL}
    for m in b:
        terms = {t | ~m for t in c}
        partials = set(_maximal({p & t for p in partials for t in terms}))
    return normalize(partials)


def exp_slice(a: Obj, b: Obj, c: Obj) -> Obj:
    """The exponential seen in the slice over ``a``: its product with a."""
    _require_slice(a, b, c)
    return product(exp_explicit(b, c), a)


# -- the factorization middle ------------------------------------------------


def _finite_subsets(m: NSet, margin: int) -> list[NSet]:
    """A deterministic spread of finite subsets of ``m`` for spot checks."""
    if m.is_finite:
        elems = m.support[:5]
    else:
        elems = tuple(i for i in range(margin + 1) if i in m)[:4]
    subs = [EMPTY]
    subs.extend(NSet.fin((e,)) for e in elems)
    if len(elems) > 1:
        subs.append(NSet.fin(elems))
    out: list[NSet] = []
    for s in subs:
        if s not in out:
            out.append(s)
    return out


@dataclass(frozen=True)
class FactorizationCheck:
    """Verified facts of the two-step factorization through ``WC(x, y)``."""

    x: Obj
    y: Obj
    arrow_into_middle: bool
    star_back_to_source: bool
    fibration_instances_ok: bool
    instances: int

    @property
    def ok(self) -> bool:
        return (
            self.arrow_into_middle
            and self.star_back_to_source
            and self.fibration_instances_ok
        )

    def to_json_dict(self) -> dict[str, object]:
        return {
            "wc": VObj.wc(self.x, self.y).to_json_dict(),
            "arrow_into_middle": self.arrow_into_middle,
            "star_back_to_source": self.star_back_to_source,
            "fibration_instances_ok": self.fibration_instances_ok,
            "instances": self.instances,
        }


def check_factorization(x: Obj, y: Obj) -> FactorizationCheck:
    """Verify the factorization facts for the pair (x, y) through the oracle.

    Three facts are checked instance by instance: every member of x is
    covered by the middle; sampled middle members stay near some member of
    x (the enlargement is finite by construction); and for sampled middle
    members u, target members y' and finite b inside y', the constructive
    witness ``x | ((b0 & y') | b)`` keeps ``(u & y') | b`` covered, which is
    the definitional fibration condition of the middle over y.
    """
    v = VObj.wc(x, y)
    margin = 2 + max(
        (e for m in tuple(x) + tuple(y) for e in m.support), default=0
    )
    arrow_into = all(wc_covers(v, m) for m in x)

    generators = [
        (xm, b0)
        for xm in x
        for ym in y
        for b0 in _finite_subsets(ym, margin)
    ]
    star_back = True
    for xm, b0 in generators:
        u = xm | b0
        if not any((u - m).is_finite for m in x):
            star_back = False
            break

    fib_ok = True
    instances = 0
    for xm, b0 in generators:
        u = xm | b0
        for ym in y:
            for b in _finite_subsets(ym, margin):
                instances += 1
                need = (u & ym) | b
                witness = xm | ((b0 & ym) | b)
                if not need.is_subset(witness) or not wc_covers(v, witness):
                    fib_ok = False
                if not wc_covers(v, need):
                    fib_ok = False
    return FactorizationCheck(
        x=x,
        y=y,
        arrow_into_middle=arrow_into,
        star_back_to_source=star_back,
        fibration_instances_ok=fib_ok,
        instances=instances,
    )


def uprod_dominates(base: Obj, total: Obj) -> bool:
    """Arrow from the universe-product of ``base`` into ``total``, by witness search.

    Every finite subset of a base member must fit in some member of total.
    If no member of total contains the base member outright, one missing
    element per member assembles a finite subset none of them covers, so the
    search is complete.
    """
    for x in base:
        if any(x.is_subset(t) for t in total):
            continue
        picks = [(x - t).smallest() for t in total]
        blocker = NSet.fin(p for p in picks if p is not None)
        assert wc_covers(VObj.uprod(base), blocker)  # it really is a member
        assert not any(blocker.is_subset(t) for t in total)
        return False
    return True
