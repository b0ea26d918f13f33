"""OEIS b-files: parsing, bundled snapshots, an opt-in fetcher and term checks.

A b-file is ASCII ``"index value"`` lines.  Snapshots live in
``treerec/data/oeis`` as ``bNNNNNN.txt`` with an ``ANNNNNN.json`` sidecar
carrying the offset, the row layout for triangles and the index shift that
lines a generator up with the sequence.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .counting import TRIANGULAR, UNIVARIATE
from .errors import NetworkUnavailable, OffsetMismatch, ParseError

_ID = re.compile(r"^A\d{6}$")
OEIS_URL = "https://oeis.org/{id}/b{num}.txt"


def check_id(oeis_id: str) -> str:
    oeis_id = oeis_id.strip().upper()
    if not _ID.match(oeis_id):
        raise ParseError(f"not an OEIS id: {oeis_id!r}")
    return oeis_id


def bfile_name(oeis_id: str) -> str:
    return f"b{check_id(oeis_id)[1:]}.txt"


def parse_bfile(text: str) -> dict[int, int]:
    """Parse b-file text; comments (``#``) and blank lines are skipped."""
    terms: dict[int, int] = {}
    last = None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 'index value', got {line!r}")
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            bad = next(f for f in fields if not f.lstrip("-").isdigit())
            col = line.index(bad) + 1
            raise ParseError(f"line {lineno}, column {col}: non-integer field {bad!r}") from None
        if last is not None and index <= last:
            raise ParseError(f"line {lineno}: index {index} does not increase past {last}")
        terms[index] = value
        last = index
    return terms


def format_bfile(terms: dict[int, int] | Iterable[tuple[int, int]]) -> str:
    items = terms.items() if isinstance(terms, dict) else terms
    out = []
    last = None
    for index, value in items:
        if last is not None and index <= last:
            raise ParseError(f"index {index} does not increase past {last}")
        out.append(f"{index} {value}\n")
        last = index
    return "".join(out)


@dataclass
class SequenceRef:
    oeis_id: str
    path: Path
    terms: dict[int, int]
    meta: dict = field(default_factory=dict)

    @property
    def offset(self) -> int | None:
        return self.meta.get("offset")

    @property
    def source(self) -> str:
        return self.meta.get("provenance", "unknown")


def _bundled_dir():
    return resources.files("treerec") / "data" / "oeis"


def bundled_ids() -> list[str]:
    return sorted(p.name[:-5] for p in _bundled_dir().iterdir() if p.name.endswith(".json"))


def _read_meta(oeis_id: str, *dirs) -> dict:
    for d in dirs:
        if d is None:
            continue
        side = d / f"{oeis_id}.json"
        if side.is_file():
            return json.loads(side.read_text())
    return {}


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fetch_bfile(oeis_id: str, cache_dir: Path, timeout: float = 20.0) -> Path:
    """Download a b-file into ``cache_dir``; the cache entry appears atomically."""
    oeis_id = check_id(oeis_id)
    url = OEIS_URL.format(id=oeis_id, num=oeis_id[1:])
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            text = resp.read().decode("ascii")
    except (urllib.error.URLError, OSError) as exc:
        raise NetworkUnavailable(f"could not fetch {url}: {exc}") from None
    parse_bfile(text)
    target = Path(cache_dir) / bfile_name(oeis_id)
    atomic_write(target, text)
    return target


def load_sequence(
    oeis_id: str,
    cache_dir: Path | str | None = None,
    fetch: bool = False,
) -> SequenceRef:
    """Resolve a b-file from the cache, then the bundled snapshots, then the network."""
    oeis_id = check_id(oeis_id)
    cache = Path(cache_dir) if cache_dir is not None else None
    bundled = _bundled_dir()
    name = bfile_name(oeis_id)
    candidates = []
    if cache is not None:
        candidates.append(cache / name)
    candidates.append(bundled / name)
    for path in candidates:
        if path.is_file():
            break
    else:
        if not fetch:
            raise NetworkUnavailable(
                f"no local b-file for {oeis_id}; rerun with --fetch to download it"
                + ("" if cache is not None else " (and --cache-dir to choose where it is kept)")
            )
        path = fetch_bfile(oeis_id, cache or Path.cwd() / ".treerec-cache")
    terms = parse_bfile(path.read_text())
    meta = _read_meta(oeis_id, cache, bundled)
    return SequenceRef(oeis_id, Path(str(path)), terms, meta)


# Comparing against generators ----------------------------------------------


@dataclass
class CheckReport:
    oeis_id: str
    generator: str
    compared: int = 0
    mismatches: list[dict] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.compared > 0 and not self.mismatches and not self.missing

    def to_json(self) -> dict:
        return {
            "id": self.oeis_id,
            "generator": self.generator,
            "compared": self.compared,
            "mismatches": self.mismatches,
            "missing": self.missing,
        }


GENERATORS = sorted([*UNIVARIATE, *TRIANGULAR])


def _triangle_index(n: int, k: int, offset: int, row_start: int) -> int:
    """Position of ``T(n, k)`` in a triangle flattened by rows ``k = 1..n``."""
    before = sum(range(row_start, n))
    return offset + before + (k - 1)


def check_sequence(
    ref: SequenceRef,
    generator: str,
    ns: Iterable[int],
    offset: int | None = None,
    shift: int | None = None,
) -> CheckReport:
    """Compare generator values with the b-file term by term.

    ``offset`` overrides nothing: when given it must agree with the b-file.
    ``shift`` (generator ``n`` sits at sequence index ``n + shift``) comes
    from the sidecar; without one an explicit value is required.
    """
    file_offset = min(ref.terms) if ref.terms else None
    declared = ref.offset if ref.offset is not None else file_offset
    if offset is not None and declared is not None and offset != declared:
        raise OffsetMismatch(f"{ref.oeis_id} starts at index {declared}, not {offset}")
    if ref.offset is not None and file_offset is not None and file_offset != ref.offset:
        raise OffsetMismatch(f"{ref.oeis_id}: sidecar offset {ref.offset} but b-file starts at {file_offset}")
    if shift is None:
        if "index_shift" not in ref.meta:
            raise OffsetMismatch(
                f"{ref.oeis_id} has no sidecar; pass an explicit offset shift to line up {generator}"
            )
        shift = ref.meta["index_shift"]
    report = CheckReport(ref.oeis_id, generator)
    if generator in UNIVARIATE:
        pairs = [((n,), n + shift, UNIVARIATE[generator](n)) for n in ns]
    elif generator in TRIANGULAR:
        row_start = ref.meta.get("row_start", 1)
        base = declared if declared is not None else 1
        pairs = [
            ((n, k), _triangle_index(n + shift, k, base, row_start), TRIANGULAR[generator](n, k))
            for n in ns
            for k in range(1, n + 1)
        ]
    else:
        raise KeyError(generator)
    for params, index, value in pairs:
        if index not in ref.terms:
            report.missing.append(index)
            continue
        report.compared += 1
        if ref.terms[index] != value:
            report.mismatches.append(
                {"index": index, "params": list(params), "expected": ref.terms[index], "got": value}
            )
    return report
