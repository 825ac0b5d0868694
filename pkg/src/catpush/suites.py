"""Randomized property suites shared by the ``fuzz`` command."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import fuzz
from .core import (
    SpanData,
    full_subcategory,
    is_fully_faithful,
    opposite,
    opposite_span,
)
from .kan import random_set_functor
from .necklace import OracleBudgetExceeded, PushoutOracle, check_segal_away
from .pushout import (
    OracleDisagreement,
    cross_check,
    dwyer_pushout,
    mapspace_report,
    pushout_objects,
    sieve_union_check,
    verify_beck_chevalley,
    verify_fold_square,
    verify_fourth_square,
)
from .reedy import verify_reedy_square
from .sset import nerve, nerve_map, sset_pushout


@dataclass
class Outcome:
    ok: bool
    detail: str = ""
    fixture: dict | None = None
    notes: dict = field(default_factory=dict)


@dataclass
class SuiteResult:
    name: str
    count: int
    passed: int
    failures: list  # (instance number, Outcome)
    notes: dict

    @property
    def ok(self) -> bool:
        return self.passed == self.count


def _span_fixture(span: SpanData) -> dict:
    from .io import span_to_dict

    return span_to_dict(span)


def _all_pairs(objs):
    return [(x, y) for x in objs for y in objs]


def case_fully_faithful(rng, opts) -> Outcome:
    span = fuzz.dwyer_span(rng)
    dp = dwyer_pushout(span, opts["word_bound"])
    v = is_fully_faithful(dp.fbar)
    return Outcome(bool(v), v.reason, _span_fixture(span), {"unchecked_pairs": len(dp.unchecked_pairs)})


def case_mapspace(rng, opts) -> Outcome:
    span = fuzz.dwyer_span(rng)
    oracle = PushoutOracle(span, opts["word_bound"])
    unknown = 0
    for x, y in _all_pairs(pushout_objects(span)):
        if x[0] == y[0]:
            continue
        r = mapspace_report(span, (x, y), opts["dim"], opts["word_bound"], oracle)
        if r.agreement == "UNKNOWN":
            unknown += 1
        elif r.agreement != "AGREE":
            return Outcome(False, f"{x}->{y}: {r.detail}", _span_fixture(span))
    return Outcome(True, notes={"unstable_pairs": unknown})


def case_fourth(rng, opts) -> Outcome:
    span = fuzz.dwyer_span(rng)
    dp = dwyer_pushout(span, word_bound=None)
    for b0, b1 in _all_pairs(span.B.objects):
        v = verify_fourth_square(span, b0, b1, opts["dim"], dp)
        if not v:
            return Outcome(False, f"({b0}, {b1}): {v.status} {v.detail}", _span_fixture(span))
    return Outcome(True)


def case_fold(rng, opts) -> Outcome:
    span = fuzz.dwyer_span(rng)
    dp = dwyer_pushout(span, word_bound=None)
    for b0, b1 in _all_pairs(span.B.objects):
        v = verify_fold_square(span, b0, b1, opts["dim"], dp)
        if not v:
            return Outcome(False, f"({b0}, {b1}): {v.status} {v.detail}", _span_fixture(span))
    return Outcome(True)


def case_sieve_union(rng, opts) -> Outcome:
    P = fuzz.random_poset(rng, rng.randint(1, 5))
    C0, C1 = fuzz.down_set(rng, P), fuzz.down_set(rng, P)
    v = sieve_union_check(P, C0, C1, opts["word_bound"])
    from .io import category_to_dict

    return Outcome(bool(v), v.reason, {"category": category_to_dict(P), "C0": C0, "C1": C1})


PREORDER_WORD_BOUND = 5


def case_preorder_closure(rng, opts) -> Outcome:
    span = fuzz.dwyer_poset_span(rng, preorder=True)
    dp = dwyer_pushout(span, word_bound=None)
    D = dp.D
    for x, y in _all_pairs(D.objects):
        if len(D.hom(x, y)) > 1:
            return Outcome(False, f"Hom({x}, {y}) has {len(D.hom(x, y))} elements", _span_fixture(span))
    # Isomorphic twins make the raw word count explode, so the oracle
    # comparison runs at a shorter bound and may leave pairs unchecked.
    try:
        unchecked = len(cross_check(dp, min(opts["word_bound"], PREORDER_WORD_BOUND)))
    except OracleBudgetExceeded:
        return Outcome(True, notes={"oracle_over_budget": 1})
    except OracleDisagreement as exc:
        return Outcome(False, f"oracle disagrees at {exc.pair!r}", _span_fixture(span))
    return Outcome(True, notes={"unchecked_pairs": unchecked})


def case_beck_chevalley(rng, opts) -> Outcome:
    span = fuzz.dwyer_span(rng)
    F = random_set_functor(opposite(span.C), 3, rng)
    v = verify_beck_chevalley(span, F)
    fixture = _span_fixture(span)
    fixture["presheaf"] = {
        "sets": {x: list(F.sets[x]) for x in span.C.objects},
        "maps": {m: {str(k): v for k, v in F.maps[m].items()} for m, _, _ in span.C.morphisms},
    }
    return Outcome(bool(v), v.reason, fixture)


def case_reedy(rng, opts) -> Outcome:
    B, low = fuzz.two_level_category(rng)
    _, inc = full_subcategory(B, low)
    v = verify_reedy_square(inc, opts["set_bound"], opts["dim"])
    from .io import category_to_dict

    return Outcome(bool(v), v.reason, {"B": category_to_dict(B), "sub": low},
                   {"cardinality": str(v.functor_cardinality)})


def segal_subject(span: SpanData, dim: int):
    """Pushout of nerves of a span, and the labels of the vertices from C."""
    NA, NB, NC = nerve(span.A, dim), nerve(span.B, dim), nerve(span.C, dim)
    P = sset_pushout(nerve_map(span.left, NA, NB), nerve_map(span.right, NA, NC))
    return P, [lab for lab in P.simplices[0] if lab[0] == "Y"]


def case_segal_away(rng, opts) -> Outcome:
    span = fuzz.ff_span(rng)
    bound = opts.get("segal_bound", 3)
    P, A0 = segal_subject(span, bound)
    v = check_segal_away(P, A0, bound, subject="nerve pushout")
    return Outcome(bool(v), "" if v else repr(v.witness), _span_fixture(span))


# Identity spans have every letter on both sides, so the raw word count grows
# fastest there; classes already stabilise at length 3.
IDENTITY_WORD_BOUND = 4


def case_oracle_identity(rng, opts) -> Outcome:
    C = fuzz.random_category(rng)
    span = fuzz.identity_span(C)
    oracle = PushoutOracle(span, min(opts["word_bound"], IDENTITY_WORD_BOUND))
    for x, y in _all_pairs(C.objects):
        hc = oracle.hom_classes(("C", x), ("C", y))
        if not hc.stabilized:
            return Outcome(False, f"({x}, {y}) did not stabilise")
        got = sorted(
            (C.identities[x] if not w else C.comp_path([l[1] for l in w]) for w in hc.representatives),
            key=str,
        )
        if got != sorted(C.hom(x, y), key=str):
            return Outcome(False, f"({x}, {y}): {got} against {list(C.hom(x, y))}")
    return Outcome(True)


def _reverse(w):
    return tuple(reversed(w))


def case_oracle_opposite(rng, opts) -> Outcome:
    bound = opts["word_bound"]
    if rng.random() < 0.5:
        span = fuzz.identity_span(fuzz.random_category(rng))
        bound = min(bound, IDENTITY_WORD_BOUND)
    else:
        span = fuzz.dwyer_span(rng)
    dual = opposite_span(span)
    o1, o2 = PushoutOracle(span, bound), PushoutOracle(dual, bound)
    skipped = 0
    for x, y in _all_pairs(pushout_objects(span)):
        h1, h2 = o1.hom_classes(x, y), o2.hom_classes(y, x)
        if not (h1.stabilized and h2.stabilized):
            skipped += 1
            continue
        left = sorted(tuple(sorted(o2.normal_form(_reverse(w)) for w in c)) for c in h1.classes)
        right = sorted(tuple(sorted(c)) for c in h2.classes)
        if left != right:
            return Outcome(False, f"{x}->{y} is not dual to {y}->{x}", _span_fixture(span))
    return Outcome(True, notes={"unstable_pairs": skipped})


SUITES: dict[str, Callable] = {
    "fully-faithful": case_fully_faithful,
    "mapspace": case_mapspace,
    "fourth": case_fourth,
    "fold": case_fold,
    "sieve-union": case_sieve_union,
    "preorder-closure": case_preorder_closure,
    "beck-chevalley": case_beck_chevalley,
    "reedy": case_reedy,
    "segal-away": case_segal_away,
    "oracle-identity": case_oracle_identity,
    "oracle-opposite": case_oracle_opposite,
}


# Suites that must see exactly the instances of another suite.
SHARED_INSTANCES = {"mapspace": "fully-faithful"}


def run_suite(name: str, count: int, seed: int, **opts) -> SuiteResult:
    """Run ``count`` instances; instance i uses its own seeded generator."""
    opts.setdefault("dim", 4)
    opts.setdefault("word_bound", 8)
    opts.setdefault("set_bound", 2)
    case = SUITES[name]
    failures, notes, passed = [], {}, 0
    for i in range(count):
        rng = random.Random(f"{seed}:{SHARED_INSTANCES.get(name, name)}:{i}")
        out = case(rng, opts)
        for k, v in out.notes.items():
            if isinstance(v, int):
                notes[k] = notes.get(k, 0) + v
        if out.ok:
            passed += 1
        else:
            failures.append((i, out))
    return SuiteResult(name, count, passed, failures, notes)
