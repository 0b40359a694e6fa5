"""Exhaustive enumeration of finite posets up to isomorphism, cached predicate
verdicts, catalog files, and searches over the catalog."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional

from .canon import canonical_form, canonical_poset, key_name
from .order import (
    Poset,
    PosetError,
    PosetFormatError,
    bits,
    down_closure,
    from_index_covers,
    is_distributive,
    is_lattice,
    max_of,
    parse_poset,
)
from .pseudo import (
    is_pseudocomplemented,
    is_stone,
    satisfies_ineq1,
    satisfies_stone_identity,
    star_table,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 7
HARD_MAX_N = 9
CATALOG_VERSION = "v1"

VERDICT_KEYS = (
    "pseudocomplemented",
    "lattice",
    "distributive",
    "stone",
    "stone_identity",
    "ineq1",
)

# command-line requirement flags -> (verdict key, required value)
REQUIRE_FLAGS = {
    "pc": ("pseudocomplemented", True),
    "lattice": ("lattice", True),
    "nonlattice": ("lattice", False),
    "distributive": ("distributive", True),
    "nondistributive": ("distributive", False),
    "stone": ("stone", True),
    "nonstone": ("stone", False),
    "stoneid": ("stone_identity", True),
    "nonstoneid": ("stone_identity", False),
    "ineq1": ("ineq1", True),
}


class SizeCapExceeded(PosetError):
    pass


class CatalogFormatError(PosetFormatError):
    pass


class VersionMismatch(CatalogFormatError):
    pass


def compute_verdicts(P: Poset) -> dict[str, bool]:
    v = dict.fromkeys(VERDICT_KEYS, False)
    v["lattice"] = is_lattice(P)
    v["distributive"] = is_distributive(P)
    if is_pseudocomplemented(P):
        T = star_table(P)
        v["pseudocomplemented"] = True
        v["stone"] = is_stone(P, T).holds
        v["stone_identity"] = satisfies_stone_identity(P, T).holds
        v["ineq1"] = satisfies_ineq1(P, T).holds
    return v


@dataclass(frozen=True)
class CatalogRecord:
    key: bytes
    n: int
    covers: tuple[tuple[int, int], ...]
    verdicts: Mapping[str, bool] = field(hash=False, compare=True)

    def poset(self) -> Poset:
        return from_index_covers(self.n, self.covers, name=key_name(self.key))

    def satisfies(self, require: Mapping[str, bool]) -> bool:
        return all(self.verdicts[k] == want for k, want in require.items())

    @classmethod
    def from_poset(cls, P: Poset) -> "CatalogRecord":
        C = canonical_poset(P)
        return cls(canonical_form(C), C.n, tuple(C.covers()), compute_verdicts(C))


def parse_require(flags: str | Iterable[str] | None) -> dict[str, bool]:
    if flags is None:
        return {}
    if isinstance(flags, str):
        flags = [f for f in flags.split(",") if f.strip()]
    out: dict[str, bool] = {}
    for flag in flags:
        flag = flag.strip()
        if flag not in REQUIRE_FLAGS:
            raise ValueError(f"unknown requirement {flag!r}; choose from {', '.join(REQUIRE_FLAGS)}")
        key, want = REQUIRE_FLAGS[flag]
        if out.get(key, want) != want:
            raise ValueError(f"contradictory requirements on {key}")
        out[key] = want
    return out


# ---------------------------------------------------------------------------
# enumeration


def _down_sets(P: Poset) -> Iterator[int]:
    for S in range(1 << P.n):
        if down_closure(P, S) == S:
            yield S


@lru_cache(maxsize=None)
def poset_classes(n: int) -> tuple[Poset, ...]:
    """One canonically labelled poset per isomorphism class, ascending key.

    Each class of size ``n`` arises from a class of size ``n - 1`` by adding a
    new maximal element above a down-set, so the previous level is extended
    and deduplicated by canonical form.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return (canonical_poset(from_index_covers(1, [])),)
    found: dict[bytes, Poset] = {}
    for P in poset_classes(n - 1):
        base = P.covers()
        for S in _down_sets(P):
            pairs = base + [(x, n - 1) for x in bits(max_of(P, S))]
            Q = from_index_covers(n, pairs)
            key = canonical_form(Q)
            if key not in found:
                found[key] = canonical_poset(Q)
    log.debug("n=%d: %d classes", n, len(found))
    return tuple(found[k] for k in sorted(found))


def _check_size(n: int, allow_large: bool) -> None:
    cap = HARD_MAX_N if allow_large else DEFAULT_MAX_N
    if not 1 <= n <= cap:
        raise SizeCapExceeded(
            f"n={n} is outside 1..{cap}"
            + ("" if allow_large else " (raise the cap explicitly; n=8 has 16999 classes)")
        )


@lru_cache(maxsize=None)
def _records(n: int) -> tuple[CatalogRecord, ...]:
    return tuple(
        CatalogRecord(canonical_form(P), n, tuple(P.covers()), compute_verdicts(P))
        for P in poset_classes(n)
    )


def enumerate_posets(
    n: int, require: Mapping[str, bool] | None = None, allow_large: bool = False
) -> Iterator[CatalogRecord]:
    """Stream one record per isomorphism class of ``n``-element posets."""
    _check_size(n, allow_large)
    require = require or {}
    for rec in _records(n):
        if rec.satisfies(require):
            yield rec


def bounded_posets(n: int) -> tuple[Poset, ...]:
    """Classes of ``n``-element posets with both a bottom and a top.

    Built by adjoining a new bottom and top to every class of size ``n - 2``,
    which reaches two sizes further than full enumeration at the same cost.
    """
    if n == 1:
        return poset_classes(1)
    if n == 2:
        return (canonical_poset(from_index_covers(2, [(0, 1)])),)
    out = []
    for P in poset_classes(n - 2):
        m = P.n
        pairs = [(x + 1, y + 1) for x, y in P.covers()]
        pairs += [(0, x + 1) for x in range(m)] + [(x + 1, m + 1) for x in range(m)]
        out.append(canonical_poset(from_index_covers(m + 2, pairs)))
    out.sort(key=canonical_form)
    return tuple(out)


def pseudocomplemented_posets(max_n: int) -> Iterator[Poset]:
    if max_n > HARD_MAX_N:
        raise SizeCapExceeded(f"max_n={max_n} exceeds {HARD_MAX_N}")
    for n in range(1, max_n + 1):
        for P in bounded_posets(n):
            if is_pseudocomplemented(P):
                yield P


# ---------------------------------------------------------------------------
# catalog files


def format_record(rec: CatalogRecord) -> str:
    P = rec.poset()
    cov = " ".join(f"e{x}<e{y}" for x, y in rec.covers)
    verdicts = " ".join(f"{k}={int(rec.verdicts[k])}" for k in VERDICT_KEYS)
    return (
        f"poset {P.name}\n"
        f"elements {' '.join(P.labels)}\n"
        f"covers{' ' + cov if cov else ''}\n"
        f"verdicts {verdicts}\n"
    )


def save_catalog(path, records: Iterable[CatalogRecord]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"catalog {CATALOG_VERSION}\n")
        for rec in records:
            fh.write("\n" + format_record(rec))
            count += 1
    return count


def parse_catalog(text: str) -> list[CatalogRecord]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("catalog "):
        raise CatalogFormatError("missing 'catalog' header", 1)
    version = lines[0].split(None, 1)[1].strip()
    if version != CATALOG_VERSION:
        raise VersionMismatch(f"unsupported catalog version {version!r}", 1)

    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines[1:], 2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((lineno, line))
    if current:
        blocks.append(current)

    records = []
    for block in blocks:
        heads = [line.split(None, 1)[0] for _, line in block]
        if heads != ["poset", "elements", "covers", "verdicts"]:
            lineno = block[min(len(block), len(heads)) - 1][0]
            raise CatalogFormatError(
                "record must have poset, elements, covers and verdicts lines", lineno
            )
        body = "\n".join(line for _, line in block[:3])
        try:
            P = parse_poset(body)
        except PosetError as exc:
            raise CatalogFormatError(str(exc), block[0][0]) from exc
        vline, verdict_text = block[3]
        verdicts = {}
        for item in verdict_text.split()[1:]:
            k, sep, v = item.partition("=")
            if not sep or k not in VERDICT_KEYS or v not in ("0", "1"):
                raise CatalogFormatError(f"bad verdict {item!r}", vline)
            verdicts[k] = v == "1"
        if set(verdicts) != set(VERDICT_KEYS):
            raise CatalogFormatError("incomplete verdicts", vline)
        idx = {lab: i for i, lab in enumerate(P.labels)}
        if any(lab != f"e{i}" for lab, i in idx.items()):
            raise CatalogFormatError("catalog labels must be e0..e{n-1}", block[1][0])
        records.append(CatalogRecord(canonical_form(P), P.n, tuple(P.covers()), verdicts))
    return records


def load_catalog(path) -> list[CatalogRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchQuery:
    max_n: int = DEFAULT_MAX_N
    require: Mapping[str, bool] = field(default_factory=dict)
    law: Optional[str] = None
    mode: str = "witnesses"
    limit: int = 10
    allow_large: bool = False

    def __post_init__(self):
        if self.mode not in ("witnesses", "violations"):
            raise ValueError(f"mode must be witnesses or violations, not {self.mode!r}")
        if self.limit < 1:
            raise ValueError("limit must be at least 1")
        _check_size(self.max_n, self.allow_large)


@dataclass(frozen=True)
class Match:
    record: CatalogRecord
    detail: str = ""


def search(q: SearchQuery) -> list[Match]:
    """Records meeting ``q.require`` and, if a law is given, holding or failing it."""
    from .laws import check_statement, resolve_law, uses_star_or_constants

    native = None
    stmt = None
    if q.law is not None:
        if q.law in VERDICT_KEYS:
            native = q.law
        else:
            _, stmt = resolve_law(q.law)
    needs_pc = stmt is not None and uses_star_or_constants(stmt)

    out: list[Match] = []
    for n in range(1, q.max_n + 1):
        for rec in enumerate_posets(n, q.require, allow_large=q.allow_large):
            if native is not None:
                holds = rec.verdicts[native]
                detail = f"{native}={int(holds)}"
            elif stmt is not None:
                if needs_pc and not rec.verdicts["pseudocomplemented"]:
                    continue
                P = rec.poset()
                T = star_table(P) if needs_pc else None
                result = check_statement(P, T, stmt)
                holds = result.holds
                detail = result.render(P)
            else:
                holds, detail = True, ""
            if holds == (q.mode == "witnesses"):
                out.append(Match(rec, detail))
                if len(out) >= q.limit:
                    return out
    return out
