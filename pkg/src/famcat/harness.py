"""Machine-checking harness for the model-structure axioms and claims.

A :class:`Universe` fixes the object supply: exhaustive enumeration of every
canonical finite-membered object over a small window, or seeded sampling
with optional cofinite members.  Each named check runs a predicate over all
(or sampled) tuples from that supply and returns a :class:`CheckResult`
with minimized, replayable counterexamples; a :class:`Report` bundles a
suite.  Identical universe and seed always produce the identical report,
and the machine serialization is byte-stable.

Checks are pure and independent, so they are safe to run concurrently;
the built-in runner is sequential to keep reports trivially reproducible.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .kernel import (
    Family,
    Obj,
    StarTemplate,
    arrow_exists,
    coproduct,
    fibration_condition,
    fibration_condition_enumerated,
    fibration_gap,
    label_f,
    label_verdict,
    label_w,
    normalize,
    product,
)
from .nset import EMPTY, NSet
from .vobj import VObj, arrow_into_vobj, check_factorization, exp_explicit, wexp_member

MAX_RECORDED_VIOLATIONS = 25


class SizeGuardError(ValueError):
    """Exhaustive enumeration was asked for a universe that is too large."""


@dataclass(frozen=True)
class Universe:
    """An object supply: ``samples == 0`` means exhaustive enumeration."""

    window: int
    include_cofinite: bool = False
    samples: int = 0
    seed: int = 42

    def __post_init__(self) -> None:
        if self.window < 0 or self.samples < 0:
            raise ValueError("window and samples are non-negative")

    @property
    def is_exhaustive(self) -> bool:
        return self.samples == 0

    def to_json_dict(self) -> dict[str, object]:
        return {
            "window": self.window,
            "include_cofinite": self.include_cofinite,
            "mode": "exhaustive" if self.is_exhaustive else "sampled",
            "samples": self.samples,
            "seed": self.seed,
        }


def _guard(u: Universe) -> None:
    if not u.is_exhaustive:
        return
    if u.include_cofinite:
        raise SizeGuardError("exhaustive enumeration supports finite members only")
    if u.window > 3:
        raise SizeGuardError(f"exhaustive enumeration is limited to window 3, got {u.window}")


def enumerate_objects(u: Universe) -> list[Obj]:
    """Every canonical object with finite members supported inside the window."""
    _guard(u)
    ground = [
        NSet.fin(combo)
        for size in range(1, u.window + 1)
        for combo in itertools.combinations(range(u.window), size)
    ]
    out: list[Obj] = []

    def extend(prefix: list[NSet], start: int) -> None:
        out.append(normalize(prefix))
        for i in range(start, len(ground)):
            g = ground[i]
            if any(g.is_subset(p) or p.is_subset(g) for p in prefix):
                continue
            prefix.append(g)
            extend(prefix, i + 1)
            prefix.pop()

    extend([], 0)
    return out


def _draw_nset(rng: random.Random, u: Universe) -> NSet:
    support = tuple(i for i in range(u.window) if rng.random() < 0.5)
    if u.include_cofinite and rng.random() < 0.25:
        return NSet.cofin(support)
    return NSet.fin(support)


def _draw_object(rng: random.Random, u: Universe) -> Obj:
    count = 1  # geometric with mean 2
    while rng.random() < 0.5:
        count += 1
    return normalize(_draw_nset(rng, u) for _ in range(count))


def sample_objects(u: Universe) -> list[Obj]:
    rng = random.Random(u.seed)
    return [_draw_object(rng, u) for _ in range(u.samples)]


def universe_objects(u: Universe) -> list[Obj]:
    return enumerate_objects(u) if u.is_exhaustive else sample_objects(u)


def instance_tuples(u: Universe, arity: int) -> Iterator[tuple[Obj, ...]]:
    """The instance stream for a check of the given arity, in fixed order."""
    if u.is_exhaustive:
        yield from itertools.product(enumerate_objects(u), repeat=arity)
    else:
        rng = random.Random(u.seed)
        for _ in range(u.samples):
            yield tuple(_draw_object(rng, u) for _ in range(arity))


# -- results -----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    objects: tuple[Obj, ...]
    detail: str

    def to_json_dict(self) -> dict[str, object]:
        return {
            "objects": [o.to_json_dict() for o in self.objects],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class CheckResult:
    name: str
    instances: int
    violations: tuple[Violation, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict[str, object]:
        # elapsed is deliberately omitted: reports must be byte-stable.
        return {
            "name": self.name,
            "instances": self.instances,
            "violations": [v.to_json_dict() for v in self.violations],
            "passed": self.passed,
        }


@dataclass(frozen=True)
class Report:
    universe: Universe
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict[str, object]:
        return {
            "universe": self.universe.to_json_dict(),
            "checks": [c.to_json_dict() for c in self.checks],
            "passed": self.passed,
        }

    def machine_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def human_text(self) -> str:
        u = self.universe.to_json_dict()
        lines = [
            "universe: window={window} cofinite={include_cofinite} mode={mode}"
            " samples={samples} seed={seed}".format(**u)
        ]
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            lines.append(
                f"[{tag}] {c.name}: {c.instances} instances,"
                f" {len(c.violations)} violations"
            )
            for v in c.violations[:3]:
                objs = "; ".join(str(o) for o in v.objects)
                lines.append(f"    {v.detail}  [{objs}]")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# -- counterexample minimization ----------------------------------------------

Predicate = Callable[[tuple[Obj, ...]], "str | None"]


def _shrink_candidates(ob: Obj) -> Iterator[Obj]:
    nonempty = [m for m in ob.members if m != EMPTY]
    for m in nonempty:  # drop a member
        yield normalize(mm for mm in ob.members if mm != m)
    for m in nonempty:  # shrink a support
        for e in m.support:
            slim = NSet(m.kind, tuple(s for s in m.support if s != e))
            yield normalize(slim if mm == m else mm for mm in ob.members)


def shrink_tuple(objs: tuple[Obj, ...], violates: Predicate) -> tuple[Obj, ...]:
    """Greedy minimization: drop members and shrink supports while the
    violation predicate keeps firing."""
    cur = list(objs)
    for _ in range(100):
        for i, ob in enumerate(cur):
            for cand in _shrink_candidates(ob):
                if cand == ob:
                    continue
                trial = cur[:i] + [cand] + cur[i + 1 :]
                if violates(tuple(trial)) is not None:
                    cur = trial
                    break
            else:
                continue
            break
        else:
            break
    return tuple(cur)


def _run_check(name: str, u: Universe, arity: int, pred: Predicate) -> CheckResult:
    start = time.perf_counter()
    instances = 0
    violations: list[Violation] = []
    for tup in instance_tuples(u, arity):
        instances += 1
        detail = pred(tup)
        if detail is None:
            continue
        if len(violations) < MAX_RECORDED_VIOLATIONS:
            small = shrink_tuple(tup, pred)
            violations.append(Violation(objects=small, detail=pred(small) or detail))
    return CheckResult(
        name=name,
        instances=instances,
        violations=tuple(violations),
        elapsed=time.perf_counter() - start,
    )


# -- presentation variants for the retract / iso checks ------------------------


def iso_presentations(x: Obj) -> list[tuple[NSet, ...]]:
    """Non-canonical families with mutual arrows to ``x``."""
    out: list[tuple[NSet, ...]] = []
    nonempty = [m for m in x.members if m != EMPTY]
    if nonempty:
        out.append(tuple(nonempty))  # drop the empty member
        out.append(x.members + (nonempty[-1].drop_least(),))  # add a dominated member
    out.append(x.members + (x.members[-1],))  # duplicate a member
    return out


def _iso_invariance_detail(
    pair: tuple[Obj, ...], template: StarTemplate
) -> str | None:
    x, y = pair
    base = label_verdict(x, y, template)
    for px in [x.members, *iso_presentations(x)]:
        for py in [y.members, *iso_presentations(y)]:
            got = label_verdict(px, py, template)
            if got != base:
                return (
                    "verdict changed under an isomorphic presentation: "
                    f"{base.to_json_dict()} vs {got.to_json_dict()} at "
                    f"[{', '.join(str(m) for m in px)}] -> "
                    f"[{', '.join(str(m) for m in py)}]"
                )
    return None


# -- axiom predicates ----------------------------------------------------------


def _pred_m1(t: tuple[Obj, ...]) -> str | None:
    x, y, w, z = t
    if (
        label_w(x, y)
        and label_f(w, z)
        and arrow_exists(x, w)
        and arrow_exists(y, z)
        and not arrow_exists(y, w)
    ):
        return "no diagonal for a trivial-cofibration / fibration square"
    if (
        arrow_exists(x, y)
        and label_w(w, z)
        and label_f(w, z)
        and arrow_exists(x, w)
        and arrow_exists(y, z)
        and not arrow_exists(y, w)
    ):
        return "no diagonal for a cofibration / trivial-fibration square"
    return None


def _pred_m2_wc_f(t: tuple[Obj, ...]) -> str | None:
    x, y = t
    if not arrow_exists(x, y):
        return None
    fc = check_factorization(x, y)
    if fc.ok:
        return None
    return (
        f"factorization facts failed: into={fc.arrow_into_middle} "
        f"star={fc.star_back_to_source} fib={fc.fibration_instances_ok}"
    )


def _pred_m2_c_wf(t: tuple[Obj, ...]) -> str | None:
    x, y = t
    if arrow_exists(x, y) and not (label_w(y, y) and label_f(y, y)):
        return "identity tail of the cofibration factorization is not (wf)"
    return None


def _pred_m5(t: tuple[Obj, ...]) -> str | None:
    x, y, z = t
    if not (arrow_exists(x, y) and arrow_exists(y, z)):
        return None
    ws = (label_w(x, y), label_w(y, z), label_w(x, z))
    if sum(ws) >= 2 and not all(ws):
        return f"two-of-three failed: (w) flags are {ws}"
    return None


def _pred_base_change(t: tuple[Obj, ...]) -> str | None:
    x, y, z = t
    if label_f(y, z) and arrow_exists(x, z) and not label_f(product(x, y), x):
        return "pullback of a fibration is not a fibration"
    return None


def _pred_cobase_change(t: tuple[Obj, ...]) -> str | None:
    x, z, y = t
    if label_w(x, z) and arrow_exists(x, y) and not label_w(y, coproduct(z, y)):
        return "pushout of a trivial cofibration is not one"
    return None


def _pred_retract(t: tuple[Obj, ...]) -> str | None:
    # Retracts collapse to isomorphisms in a posetal category, so closure
    # under retracts is closure under isomorphic presentations.
    return _iso_invariance_detail(t, StarTemplate.SOURCE_MINUS_TARGET)


# -- claim predicates -----------------------------------------------------------


def _pred_wcf_reverse(t: tuple[Obj, ...]) -> str | None:
    x, y = t
    if label_w(x, y) and label_f(x, y) and not arrow_exists(y, x):
        return "a (wcf) arrow without its reverse arrow"
    return None


def _fin_only(fams: Iterable[Family]) -> bool:
    return all(m.is_finite for fam in fams for m in fam)


def _pred_f_reduction(t: tuple[Obj, ...]) -> str | None:
    x, y = t
    gap = fibration_gap(x, y)
    reduced = fibration_condition(x, y)
    if (gap is None) != reduced:
        return "definitional and reduced fibration deciders disagree"
    if gap is not None and not gap.defeats(x):
        return "gap witness does not defeat the source family"
    if _fin_only((x, y)):
        if fibration_condition_enumerated(x, y) != reduced:
            return "enumerating decider disagrees on a finite-only pair"
    return None


def _pred_claim_products_weq(t: tuple[Obj, ...]) -> str | None:
    z, b, c = t
    whole = label_w(product(z, b), product(z, c))
    membered = all(wexp_member(b, c, m) for m in z)
    if whole != membered:
        return f"member criterion {membered} but whole-family (w) is {whole}"
    return None


def _pred_exp_representability(t: tuple[Obj, ...]) -> str | None:
    d, b, c = t
    through_exp = arrow_exists(d, exp_explicit(b, c))
    through_product = arrow_exists(product(d, b), c)
    through_vobj = arrow_into_vobj(d, VObj.exp(b, c))
    if not (through_exp == through_product == through_vobj):
        return (
            f"exponential not representing: exp={through_exp} "
            f"product={through_product} vobj={through_vobj}"
        )
    return None


def _pred_wexp_representability(t: tuple[Obj, ...]) -> str | None:
    z0, a, b0, c0 = t
    # project everything into the slice over a so the construction applies
    z, b, c = product(z0, a), product(b0, a), product(c0, a)
    via_vobj = arrow_into_vobj(z, VObj.wexp(a, b, c))
    zb, zc = product(z, b), product(z, c)
    via_hom = arrow_exists(z, a) and arrow_exists(zb, c) and label_w(zb, zc)
    if via_vobj != via_hom:
        return f"weq classifier disagrees with hom-set criterion: {via_vobj} vs {via_hom}"
    return None


def _pred_limits_universal(t: tuple[Obj, ...]) -> str | None:
    x, y, z = t
    p = product(x, y)
    if not (arrow_exists(p, x) and arrow_exists(p, y)):
        return "product lost a projection"
    if (arrow_exists(z, x) and arrow_exists(z, y)) != arrow_exists(z, p):
        return "product universal property failed"
    s = coproduct(x, y)
    if not (arrow_exists(x, s) and arrow_exists(y, s)):
        return "coproduct lost an injection"
    if (arrow_exists(x, z) and arrow_exists(y, z)) != arrow_exists(s, z):
        return "coproduct universal property failed"
    return None


_AXIOMS: dict[str, tuple[int, Predicate | None]] = {
    "M1_LIFTING": (4, _pred_m1),
    "M2_FACTOR_WC_F": (2, _pred_m2_wc_f),
    "M2_FACTOR_C_WF": (2, _pred_m2_c_wf),
    "M5_TWO_OF_THREE": (3, _pred_m5),
    "BASE_CHANGE_F": (3, _pred_base_change),
    "COBASE_CHANGE_WC": (3, _pred_cobase_change),
    "RETRACT_CLOSURE": (2, _pred_retract),
    "ISO_INVARIANCE": (2, None),  # template-dependent, built in check_axiom
}

_CLAIMS: dict[str, tuple[int, Predicate]] = {
    "WCF_REVERSE": (2, _pred_wcf_reverse),
    "F_REDUCTION": (2, _pred_f_reduction),
    "CLAIM5": (3, _pred_claim_products_weq),
    "EXP_REPRESENTABILITY": (3, _pred_exp_representability),
    "WEXP_REPRESENTABILITY": (4, _pred_wexp_representability),
    "LIMITS_UNIVERSAL": (3, _pred_limits_universal),
}

AXIOM_NAMES: tuple[str, ...] = tuple(_AXIOMS)
CLAIM_NAMES: tuple[str, ...] = tuple(_CLAIMS)


def check_axiom(name: str, u: Universe, *, literal_star: bool = False) -> CheckResult:
    """Run one named axiom check over the universe.

    ``literal_star`` switches the ISO_INVARIANCE check to the
    target-minus-source star template, the opt-in diagnostic that is
    expected to produce counterexamples.
    """
    if name not in _AXIOMS:
        raise ValueError(f"unknown axiom check {name!r}; choose from {AXIOM_NAMES}")
    arity, pred = _AXIOMS[name]
    if name == "ISO_INVARIANCE":
        template = (
            StarTemplate.TARGET_MINUS_SOURCE
            if literal_star
            else StarTemplate.SOURCE_MINUS_TARGET
        )
        pred = lambda t: _iso_invariance_detail(t, template)  # noqa: E731
    assert pred is not None
    return _run_check(name, u, arity, pred)


def check_claim(name: str, u: Universe) -> CheckResult:
    """Run one named claim check over the universe."""
    if name not in _CLAIMS:
        raise ValueError(f"unknown claim check {name!r}; choose from {CLAIM_NAMES}")
    arity, pred = _CLAIMS[name]
    return _run_check(name, u, arity, pred)


def run_axioms(
    u: Universe,
    names: Sequence[str] | None = None,
    *,
    literal_star: bool = False,
) -> Report:
    picked = tuple(names) if names is not None else AXIOM_NAMES
    return Report(
        universe=u,
        checks=tuple(check_axiom(n, u, literal_star=literal_star) for n in picked),
    )


def run_claims(u: Universe, names: Sequence[str] | None = None) -> Report:
    picked = tuple(names) if names is not None else CLAIM_NAMES
    return Report(universe=u, checks=tuple(check_claim(n, u) for n in picked))
