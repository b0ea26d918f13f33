"""``treerec`` command line.

Exit codes: 0 success, 1 verification mismatch, 2 domain error (the error
class name is printed), 3 environment or cap error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

import click

from . import bijections as bij
from . import counting, oeis, series
from .codes import decode, encode, parse_code
from .core import (
    Catalyst,
    RootedTree,
    endofunction_from_json,
    forest_from_json,
    tree_from_json,
)
from .errors import (
    CapExceeded,
    ParseError,
    TreeRecError,
    UnknownStatistic,
)
from .oracle import AUDIT_NAMES, bijection_audit, oracle_count
from .oracle.audit import AUDIT_CAPS

MISMATCH = 1


class Mismatch(click.ClickException):
    exit_code = MISMATCH


# Input helpers ----------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"2..5"`` or ``"1,3,7"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise ParseError(f"bad range {text!r}; use N, A..B or a comma list") from None
    if not out:
        raise ParseError(f"empty range {text!r}")
    return out


def read_instance(text: str) -> dict:
    """Literal JSON, ``@path`` for a file, or ``-`` for stdin."""
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    return data


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _field(data: dict, key: str):
    if key not in data:
        raise ParseError(f"missing field {key!r}")
    return data[key]


# Group ------------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="treerec")
def cli() -> None:
    """Records in labeled trees, forests and endofunctions."""


# code -------------------------------------------------------------------------


@cli.group()
def code() -> None:
    """Record codes of rooted forests."""


@code.command("decode")
@click.argument("text")
@click.option("--n", "n", type=int, default=None, help="Order; needed for the empty code.")
@click.option("--roundtrip", is_flag=True, help="Re-encode and fail unless identical.")
def code_decode(text: str, n: int | None, roundtrip: bool) -> None:
    """Decode a comma-separated code (``o`` or ``0`` marks the virtual root)."""
    rc = parse_code(text, n)
    forest = decode(rc)
    if roundtrip and encode(forest) != rc:
        raise Mismatch("re-encoding the decoded forest changed the code")
    click.echo(json.dumps(forest.to_json(), sort_keys=True))


@code.command("encode")
@click.argument("instance")
@click.option("--roundtrip", is_flag=True, help="Decode again and fail unless identical.")
def code_encode(instance: str, roundtrip: bool) -> None:
    """Encode a forest given as JSON ``{"n": .., "parents": [..]}``."""
    forest = forest_from_json(read_instance(instance))
    rc = encode(forest)
    if roundtrip and decode(rc) != forest:
        raise Mismatch("decoding the code did not give the forest back")
    click.echo(str(rc))


# bij --------------------------------------------------------------------------

_VIRTUAL_TAG = "virtual"


def _vlabel(x) -> int:
    return bij.VIRTUAL if x == _VIRTUAL_TAG else int(x)


def _vjson(x: int):
    return _VIRTUAL_TAG if x == bij.VIRTUAL else x


def _dict_from_json(obj) -> dict[int, int]:
    try:
        return {_vlabel(k): _vlabel(v) for k, v in obj.items()}
    except (AttributeError, ValueError):
        raise ParseError("expected a {vertex: parent} object") from None


def _dict_to_json(parents) -> dict:
    return {str(_vjson(k)): _vjson(v) for k, v in sorted(parents.items(), key=lambda kv: bij._rank(kv[0]))}


def _pointed(obj) -> bij.PointedTree:
    return bij.PointedTree(_dict_from_json(_field(obj, "parents")), int(_field(obj, "selected")))


def _catalyst(obj) -> Catalyst:
    d, a = _field(obj, "catalyst")
    return Catalyst(int(d), int(a))


def _tree_catalyst_json(t: RootedTree, c: Catalyst) -> dict:
    return {"tree": t.to_json(), "catalyst": list(c.as_pair())}


def _need_k(k: int | None) -> int:
    if k is None:
        raise click.UsageError("this bijection needs --k")
    return k


def _joyal(direction, data, k):
    if direction == "apply":
        mt = bij.MarkedTree(tree_from_json(_field(data, "tree")), int(_field(data, "mark")))
        return bij.joyal_forward(mt).to_json()
    mt = bij.joyal_inverse(endofunction_from_json(data))
    return {"tree": mt.tree.to_json(), "mark": mt.mark}


def _girth_shift(direction, data, k):
    f = endofunction_from_json(data)
    fn = bij.girth_shift_forward if direction == "apply" else bij.girth_shift_inverse
    return fn(f, _need_k(k)).to_json()


def _catalyst_bij(direction, data, k):
    if direction == "apply":
        t, c = bij.catalyst_forward(
            int(_field(data, "v")), tree_from_json(_field(data, "tree")), int(_field(data, "r"))
        )
        return _tree_catalyst_json(t, c)
    v, t, r = bij.catalyst_inverse(tree_from_json(_field(data, "tree")), _catalyst(data))
    return {"v": v, "tree": t.to_json(), "r": r}


def _riordan_sloane(direction, data, k):
    if direction == "apply":
        t, c = bij.riordan_sloane_forward(_pointed(_field(data, "first")), _pointed(_field(data, "second")))
        return _tree_catalyst_json(t, c)
    first, second = bij.riordan_sloane_inverse(tree_from_json(_field(data, "tree")), _catalyst(data))
    return {"first": first.to_json(), "second": second.to_json()}


def _sn_weight(direction, data, k):
    if direction == "apply":
        return bij.sn_weight_forward(int(_field(data, "v")), forest_from_json(_field(data, "forest"))).to_json()
    v, f = bij.sn_weight_inverse(forest_from_json(data))
    return {"v": v, "forest": f.to_json()}


def _marked_forest(direction, data, k):
    if direction == "apply":
        mf = bij.MarkedForest(forest_from_json(_field(data, "forest")), tuple(_field(data, "marks")))
        return bij.marked_forest_to_endofunction(mf).to_json()
    mf = bij.endofunction_to_marked_forest(endofunction_from_json(data))
    return {"forest": mf.forest.to_json(), "marks": list(mf.marks)}


def _virtual_split(direction, data, k):
    if direction == "apply":
        s_bar, s_prime = bij.virtual_node_split(bij.VirtualTree(_dict_from_json(_field(data, "parents"))))
        return {"s_bar": {"parents": _dict_to_json(s_bar.parents)}, "s_prime": {"parents": _dict_to_json(s_prime)}}
    s_bar = bij.VirtualTree(_dict_from_json(_field(_field(data, "s_bar"), "parents")))
    s_prime = _dict_from_json(_field(_field(data, "s_prime"), "parents"))
    return {"parents": _dict_to_json(bij.virtual_node_join(s_bar, s_prime).parents)}


BIJECTIONS: dict[str, Callable] = {
    "joyal": _joyal,
    "girth-shift": _girth_shift,
    "catalyst": _catalyst_bij,
    "riordan-sloane": _riordan_sloane,
    "sn-weight": _sn_weight,
    "marked-forest": _marked_forest,
    "virtual-split": _virtual_split,
}


@cli.command("bij")
@click.argument("name", type=click.Choice(sorted(BIJECTIONS)))
@click.argument("direction", type=click.Choice(["apply", "invert"]))
@click.argument("instance")
@click.option("--k", "k", type=int, default=None, help="Shift parameter for girth-shift.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def bij_cmd(name: str, direction: str, instance: str, k: int | None, out: str | None) -> None:
    """Apply a bijection or its inverse to a JSON instance (``@file`` and ``-`` work)."""
    emit(dump(BIJECTIONS[name](direction, read_instance(instance), k)), out)


# count ------------------------------------------------------------------------


def _oracle_value(table: str, n: int, k: int | None) -> int:
    if table == "genesis":
        return oracle_count("non-root-records", n)
    if table == "connected":
        return oracle_count("connected", n)
    if table == "fixed-point-free":
        return sum(oracle_count("girth", n, k=j) for j in range(2, n + 1))
    if table == "weight-sn":
        return oracle_count("reflection-length", n)
    if table == "doubly-cover-0":
        return oracle_count("doubly-covering", n, ell=0)
    stat = {
        "tree-records": ("records", "k"),
        "girth": ("girth", "k"),
        "cayley-forest": ("root-children-prefix", "k"),
        "spanning-forest": ("spanning-forests", "k"),
        "forest-records": ("forest-records", "k"),
        "stirling1": ("increasing-components", "m"),
        "doubly-cover": ("doubly-covering", "ell"),
    }.get(table)
    if stat is None:
        raise UnknownStatistic(f"no oracle for table {table!r}")
    if table == "stirling1" and k == 0:
        return int(n == 0)
    return oracle_count(stat[0], n, **{stat[1]: k})


@cli.command("count")
@click.argument("table", type=click.Choice([*counting.TABLE_NAMES, "identities"]))
@click.argument("n_range", required=False)
@click.option("--n", "n_opt", default=None, help="Orders: N, A..B or a list.")
@click.option("--k", "k", type=int, default=None, help="Restrict a triangle to one column.")
@click.option("--oracle", is_flag=True, help="Recompute by enumeration and diff.")
@click.option("--bfile", is_flag=True, help="Emit 'index value' lines instead of TSV.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def count_cmd(table, n_range, n_opt, k, oracle, bfile, as_json, out) -> None:
    """Exact counts from closed forms; ``identities`` runs the identity suite up to N."""
    spec = n_opt or n_range
    if spec is None:
        raise click.UsageError("give the orders as an argument or with --n")
    ns = parse_range(spec)
    if table == "identities":
        results = counting.verify_identities(max(ns))
        failed = [r for r in results if not r.passed]
        if as_json:
            emit(dump([r.__dict__ for r in results]), out)
        else:
            emit(f"{len(results) - len(failed)}/{len(results)} identities hold for n <= {max(ns)}\n", out)
        if failed:
            raise Mismatch("; ".join(f"{r.identity} at n={r.n}" for r in failed[:5]))
        return
    tab = counting.build_table(table, ns, k)
    mismatches = []
    if oracle:
        for key, value in sorted(tab.entries.items()):
            got = _oracle_value(table, key[0], key[1] if len(key) > 1 else None)
            if got != value:
                mismatches.append({"params": list(key), "formula": value, "oracle": got})
    columns = ["n"] if table in counting.UNIVARIATE else ["n", "k"]
    if as_json:
        payload = {
            "table": table,
            "entries": [{"params": list(key), "value": v} for key, v in sorted(tab.entries.items())],
        }
        if oracle:
            payload["mismatches"] = mismatches
        emit(dump(payload), out)
    elif bfile:
        emit(tab.to_bfile(), out)
    else:
        emit(tab.to_tsv(columns), out)
    if mismatches:
        raise Mismatch(f"{len(mismatches)} formula/oracle mismatches, first {mismatches[0]}")


# series -----------------------------------------------------------------------

UNIVARIATE_SERIES = {
    **series.NAMED_SERIES,
    "R": lambda order, k: series.R_k_series(order, k),
    "R-ge": lambda order, k: series.R_ge_k(order, k),
    "R-prime": lambda order, k: series.R_k_prime(order, k),
}
BIVARIATE_SERIES = {
    "F": series.forest_series,
    "C": series.connected_endo_series,
    "forest-records": series.forest_record_series,
}
NEEDS_K = {"R", "R-ge", "R-prime"}


def _count_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@cli.command("series")
@click.argument("name", type=click.Choice(sorted([*UNIVARIATE_SERIES, *BIVARIATE_SERIES])))
@click.option("--order", type=int, required=True, help="Truncation order in z.")
@click.option("--k", "k", type=int, default=None, help="Record count for the R family.")
@click.option("--t", "t", type=int, default=None, help="Degree cap in t (bivariate series).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def series_cmd(name, order, k, t, out) -> None:
    """Coefficient table as TSV: n, [k,] num, den, count (count is n! times the coefficient)."""
    if order < 0:
        raise click.UsageError("--order must be non-negative")
    lines = []
    if name in BIVARIATE_SERIES:
        s = BIVARIATE_SERIES[name](order, order if t is None else t)
        lines.append("n\tk\tnum\tden\tcount")
        for n in range(s.order + 1):
            for j in range(s.t_cap + 1):
                c = s.coefficient(n, j)
                lines.append(f"{n}\t{j}\t{c.numerator}\t{c.denominator}\t{_count_text(s.count(n, j))}")
    else:
        fn = UNIVARIATE_SERIES[name]
        if name in NEEDS_K:
            s = fn(order, _need_k(k))
        else:
            s = fn(order)
        lines.append("n\tnum\tden\tcount")
        for n in range(s.order + 1):
            c = s[n]
            lines.append(f"{n}\t{c.numerator}\t{c.denominator}\t{_count_text(s.count(n))}")
    emit("\n".join(lines) + "\n", out)


# oeis -------------------------------------------------------------------------


@cli.group("oeis")
def oeis_group() -> None:
    """Cross-check generators against OEIS b-files."""


@oeis_group.command("check")
@click.argument("oeis_id")
@click.argument("generator", type=click.Choice(oeis.GENERATORS))
@click.argument("n_range", required=False)
@click.option("--n", "n_opt", default=None)
@click.option("--offset", type=int, default=None, help="Expected sequence offset.")
@click.option("--shift", type=int, default=None, help="Generator n sits at index n + shift.")
@click.option("--fetch", is_flag=True, help="Download the b-file when no local copy exists.")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True)
def oeis_check(oeis_id, generator, n_range, n_opt, offset, shift, fetch, cache_dir, as_json) -> None:
    """Compare a generator with a b-file term by term."""
    spec = n_opt or n_range
    if spec is None:
        raise click.UsageError("give the orders as an argument or with --n")
    ref = oeis.load_sequence(oeis_id, cache_dir=cache_dir, fetch=fetch)
    report = oeis.check_sequence(ref, generator, parse_range(spec), offset=offset, shift=shift)
    if as_json:
        click.echo(dump({**report.to_json(), "source": ref.source}), nl=False)
    else:
        status = "ok" if report.passed else "MISMATCH"
        click.echo(f"{ref.oeis_id} vs {generator}: {report.compared} terms compared, {status}")
        for m in report.mismatches:
            click.echo(f"  index {m['index']}: b-file {m['expected']}, generator {m['got']}")
        if report.missing:
            click.echo(f"  indices absent from the b-file: {report.missing}")
    if not report.passed:
        raise Mismatch(f"{ref.oeis_id} does not match {generator}")


@oeis_group.command("fetch")
@click.argument("oeis_id")
@click.option("--cache-dir", type=click.Path(file_okay=False), required=True)
def oeis_fetch(oeis_id, cache_dir) -> None:
    """Download a b-file into the cache."""
    click.echo(str(oeis.fetch_bfile(oeis_id, Path(cache_dir))))


@oeis_group.command("list")
def oeis_list() -> None:
    """Bundled snapshots with their offsets."""
    for aid in oeis.bundled_ids():
        ref = oeis.load_sequence(aid)
        click.echo(f"{aid}\toffset={ref.offset}\tterms={len(ref.terms)}\t{ref.meta.get('name', '')}")


# audit ------------------------------------------------------------------------


@cli.command("audit")
@click.argument("name", type=click.Choice([*sorted(AUDIT_NAMES), "all"]))
@click.option("--n", "n", type=int, required=True, help="Audit every order 1..N.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def audit_cmd(name: str, n: int, as_json: bool, out: str | None) -> None:
    """Exhaustively check a bijection (or all of them) up to order N."""
    names = sorted(AUDIT_NAMES) if name == "all" else [name]
    for nm in names:
        if n > AUDIT_CAPS[nm]:
            raise CapExceeded(f"audit {nm} at n={n} exceeds the cap {AUDIT_CAPS[nm]}")
    reports = [bijection_audit(nm, m) for nm in names for m in range(1, n + 1)]
    if as_json:
        emit(dump([r.to_json() for r in reports]), out)
    else:
        emit(
            "".join(
                f"{r.name}\tn={r.n}\tinstances={r.instances}\t{'pass' if r.passed else 'FAIL'}\n"
                for r in reports
            ),
            out,
        )
    failed = [r for r in reports if not r.passed]
    if failed:
        if not as_json:
            click.echo(json.dumps(failed[0].failures[0], sort_keys=True), err=True)
        raise Mismatch(f"{len(failed)} audits failed")


# Entry point ------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="treerec", standalone_mode=False)
    except TreeRecError as exc:
        click.echo(f"error: {exc.tag}: {exc}", err=True)
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
