"""Exhaustive audits of the bijections.

Each audit walks the whole domain, applies the forward map, checks the
result lies in the codomain and maps back, then compares the image with
an independent enumeration of the codomain.  Counterexamples are kept
as JSON-ready dicts; only the first few are retained.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator

from .. import bijections as bij
from ..codes import all_codes, decode, encode
from ..core import Catalyst, Endofunction, RootedTree, girth
from ..errors import CapExceeded, TreeRecError, UnknownStatistic
from ..records import catalysts, endofunction_records, heights, records_of_tree
from .enumerate import enumerate_objects

MAX_FAILURES = 5

AUDIT_CAPS = {
    "joyal": 7,
    "girth_shift": 6,
    "catalyst": 6,
    "riordan_sloane": 6,
    "sn_weight": 7,
    "marked_forest": 6,
    "virtual_split": 5,
    "codes": 7,
}

AUDIT_NAMES = tuple(AUDIT_CAPS)


@dataclass
class AuditReport:
    name: str
    n: int
    instances: int = 0
    failures: list[dict] = field(default_factory=list)
    codomain_size: int | None = None
    image_size: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, reason: str, **detail) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append({"reason": reason, **detail})

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "instances": self.instances,
            "failures": self.failures,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _jsonable(obj) -> object:
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Catalyst):
        return list(obj.as_pair())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (tuple, list)):
        return [_jsonable(x) for x in obj]
    return obj


def _run(
    report: AuditReport,
    domain: Iterable,
    forward: Callable,
    inverse: Callable,
    key: Callable[[object], Hashable],
    in_codomain: Callable[[object], bool],
    codomain: Iterable | None,
    extra: Callable[[object, object], str | None] | None = None,
) -> AuditReport:
    """Shared driver; ``key`` canonicalizes codomain values for set membership."""
    image: set = set()
    for x in domain:
        report.instances += 1
        try:
            y = forward(x)
        except TreeRecError as exc:
            report.fail("forward raised", instance=_jsonable(x), error=exc.tag)
            continue
        if not in_codomain(y):
            report.fail("image outside codomain", instance=_jsonable(x), image=_jsonable(y))
            continue
        k = key(y)
        if k in image:
            report.fail("not injective", instance=_jsonable(x), image=_jsonable(y))
        image.add(k)
        try:
            back = inverse(y)
        except TreeRecError as exc:
            report.fail("inverse raised", instance=_jsonable(x), image=_jsonable(y), error=exc.tag)
            continue
        if back != x:
            report.fail("inverse(forward(x)) != x", instance=_jsonable(x), got=_jsonable(back))
        if extra is not None:
            msg = extra(x, y)
            if msg:
                report.fail(msg, instance=_jsonable(x), image=_jsonable(y))
    report.image_size = len(image)
    if codomain is not None:
        size = 0
        for y in codomain:
            size += 1
            if key(y) not in image:
                report.fail("not surjective", missed=_jsonable(y))
                continue
            try:
                if forward(inverse(y)) != y:
                    report.fail("forward(inverse(y)) != y", image=_jsonable(y))
            except TreeRecError as exc:
                report.fail("inverse raised on codomain element", image=_jsonable(y), error=exc.tag)
        report.codomain_size = size
        if size != report.image_size:
            report.fail("cardinality mismatch", image=report.image_size, codomain=size)
    return report


# Helpers for trees on arbitrary label sets --------------------------------


def _trees_on(labels: tuple[int, ...]) -> Iterator[dict[int, int]]:
    """Rooted trees on ``labels`` as self-rooted parent dicts."""
    m = len(labels)
    if m == 0:
        return
    for t in enumerate_objects("rooted trees", m, cap=m):
        yield {labels[v - 1]: labels[t.parents[v] - 1] for v in range(1, m + 1)}


def _dict_key(parents) -> tuple:
    return tuple(sorted(parents.items()))


def _splits(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Ordered pairs of non-empty complementary label sets."""
    full = range(1, n + 1)
    for a in range(1, n):
        for first in itertools.combinations(full, a):
            second = tuple(v for v in full if v not in first)
            yield first, second


def _trees_with_catalyst(n: int) -> Iterator[tuple[RootedTree, Catalyst]]:
    for t in enumerate_objects("rooted trees", n):
        for c in sorted(catalysts(t)):
            yield t, c


def _tree_catalyst_key(y) -> tuple:
    t, c = y
    return t.parents, c.as_pair()


def _has_catalyst(y) -> bool:
    t, c = y
    return isinstance(t, RootedTree) and c in catalysts(t)


# Individual audits ----------------------------------------------------------


def audit_joyal(n: int) -> AuditReport:
    def domain():
        for t in enumerate_objects("rooted trees", n):
            for r in records_of_tree(t):
                yield bij.MarkedTree(t, r)

    def girth_vs_height(mt, f):
        if girth(f) != heights(mt.tree)[mt.mark] + 1:
            return "girth != height(mark) + 1"
        return None

    return _run(
        AuditReport("joyal", n),
        domain(),
        bij.joyal_forward,
        bij.joyal_inverse,
        key=lambda f: f.image,
        in_codomain=lambda f: f.is_connected,
        codomain=enumerate_objects("connected endofunctions", n),
        extra=girth_vs_height,
    )


def audit_girth_shift(n: int) -> AuditReport:
    """All ``k``: connected maps with ``>= k+1`` records onto girth ``>= 2`` with ``>= k``."""
    report = AuditReport("girth_shift", n)
    connected = list(enumerate_objects("connected endofunctions", n))
    nrec = {f: len(endofunction_records(f)) for f in connected}
    for k in range(1, n):
        def top_records(f, g, k=k):
            if endofunction_records(f)[-k:] != endofunction_records(g)[-k:]:
                return f"k={k}: the {k} greatest records changed"
            if girth(g) != girth(f) + 1:
                return f"k={k}: girth did not grow by one"
            return None

        sub = _run(
            AuditReport("girth_shift", n),
            (f for f in connected if nrec[f] >= k + 1),
            lambda f, k=k: bij.girth_shift_forward(f, k),
            lambda g, k=k: bij.girth_shift_inverse(g, k),
            key=lambda g: g.image,
            in_codomain=lambda g, k=k: g.is_connected and girth(g) >= 2 and nrec[g] >= k,
            codomain=(g for g in connected if girth(g) >= 2 and nrec[g] >= k),
            extra=top_records,
        )
        report.instances += sub.instances
        report.image_size += sub.image_size
        report.codomain_size = (report.codomain_size or 0) + (sub.codomain_size or 0)
        report.failures.extend(sub.failures[: MAX_FAILURES - len(report.failures)])
    return report


def audit_catalyst(n: int) -> AuditReport:
    def domain():
        for t in enumerate_objects("rooted trees", n):
            for r in records_of_tree(t):
                if r == t.root:
                    continue
                for v in range(1, n + 1):
                    yield (v, t, r)

    return _run(
        AuditReport("catalyst", n),
        domain(),
        lambda x: bij.catalyst_forward(*x),
        lambda y: bij.catalyst_inverse(*y),
        key=_tree_catalyst_key,
        in_codomain=_has_catalyst,
        codomain=_trees_with_catalyst(n),
    )


def audit_riordan_sloane(n: int) -> AuditReport:
    def domain():
        for first, second in _splits(n):
            for p in _trees_on(first):
                for q in _trees_on(second):
                    for s in first:
                        for u in second:
                            yield (bij.PointedTree(p, s), bij.PointedTree(q, u))

    return _run(
        AuditReport("riordan_sloane", n),
        domain(),
        lambda x: bij.riordan_sloane_forward(*x),
        lambda y: bij.riordan_sloane_inverse(*y),
        key=_tree_catalyst_key,
        in_codomain=_has_catalyst,
        codomain=_trees_with_catalyst(n),
    )


def audit_sn_weight(n: int) -> AuditReport:
    def domain():
        for f in enumerate_objects("increasing forests", n):
            for v in bij.non_root_vertices(f):
                yield (v, f)

    return _run(
        AuditReport("sn_weight", n),
        domain(),
        lambda x: bij.sn_weight_forward(*x),
        bij.sn_weight_inverse,
        key=lambda f: f.parents,
        in_codomain=lambda f: len(records_of_tree(f)) == n - 1,
        codomain=(f for f in enumerate_objects("rooted forests", n) if len(records_of_tree(f)) == n - 1),
    )


def audit_marked_forest(n: int) -> AuditReport:
    def domain():
        for f in enumerate_objects("rooted forests", n):
            recs = set(records_of_tree(f))
            per_root = [
                [r for r in sorted(recs) if f.component_root(r) == root] for root in f.roots
            ]
            for marks in itertools.product(*per_root):
                yield bij.MarkedForest(f, tuple(marks))

    return _run(
        AuditReport("marked_forest", n),
        domain(),
        bij.marked_forest_to_endofunction,
        bij.endofunction_to_marked_forest,
        key=lambda f: f.image,
        in_codomain=lambda f: isinstance(f, Endofunction),
        codomain=enumerate_objects("endofunctions", n),
    )


def _virtual_trees(labels: tuple[int, ...]) -> Iterator[bij.VirtualTree]:
    """Trees on ``labels`` plus the virtual node, satisfying the class condition."""
    big = max(labels, default=0) + 1
    for parents in _trees_on((*labels, big)):
        vt = bij.VirtualTree(bij._relabel(parents, {big: bij.VIRTUAL}))
        try:
            vt.check_class()
        except TreeRecError:
            continue
        yield vt


def _vt_key(vt: bij.VirtualTree) -> tuple:
    return _dict_key(vt.parents)


def audit_virtual_split(n: int) -> AuditReport:
    """Domain: size-``n`` virtual trees with ``k >= 2`` records; split by ``k``."""
    report = AuditReport("virtual_split", n)
    labels = tuple(range(1, n + 1))
    domain_all = list(_virtual_trees(labels))
    lone = bij.VirtualTree({bij.VIRTUAL: bij.VIRTUAL})
    for k in range(2, n + 2):
        def codomain(k=k):
            for first, second in itertools.chain([((), labels)], _splits(n)):
                bars = [lone] if not first else _virtual_trees(first)
                bars = [b for b in bars if len(b.records()) == k - 1]
                primes = list(_trees_on(second))
                for b in bars:
                    for p in primes:
                        yield (b, p)

        sub = _run(
            AuditReport("virtual_split", n),
            (t for t in domain_all if len(t.records()) == k),
            bij.virtual_node_split,
            lambda y: bij.virtual_node_join(*y),
            key=lambda y: (_vt_key(y[0]), _dict_key(y[1])),
            in_codomain=lambda y, k=k: len(y[0].records()) == k - 1
            and not (y[0].labels & set(y[1]))
            and y[0].labels | set(y[1]) == set(labels),
            codomain=codomain(),
        )
        report.instances += sub.instances
        report.image_size += sub.image_size
        report.codomain_size = (report.codomain_size or 0) + (sub.codomain_size or 0)
        report.failures.extend(sub.failures[: MAX_FAILURES - len(report.failures)])
    return report


def audit_codes(n: int) -> AuditReport:
    return _run(
        AuditReport("codes", n),
        all_codes(n),
        decode,
        encode,
        key=lambda f: f.parents,
        in_codomain=lambda f: f.n == n,
        codomain=enumerate_objects("rooted forests", n) if n else None,
    )


AUDITS: dict[str, Callable[[int], AuditReport]] = {
    "joyal": audit_joyal,
    "girth_shift": audit_girth_shift,
    "catalyst": audit_catalyst,
    "riordan_sloane": audit_riordan_sloane,
    "sn_weight": audit_sn_weight,
    "marked_forest": audit_marked_forest,
    "virtual_split": audit_virtual_split,
    "codes": audit_codes,
}


def bijection_audit(name: str, n: int, cap: int | None = None) -> AuditReport:
    key = name.replace("-", "_")
    if key not in AUDITS:
        raise UnknownStatistic(f"unknown bijection {name!r}; choose from {', '.join(AUDIT_NAMES)}")
    limit = AUDIT_CAPS[key] if cap is None else cap
    if n > limit:
        raise CapExceeded(f"audit {name} at n={n} exceeds the cap {limit}")
    if n < 1:
        raise CapExceeded(f"audit needs n >= 1, got {n}")
    return AUDITS[key](n)
