"""Order-law DSL: parsing, printing, evaluation and the bundled law library."""

from __future__ import annotations

from importlib.resources import files

from .evaluate import (
    CheckResult,
    NoTop,
    StarUnavailable,
    UnboundVariable,
    check_at,
    check_statement,
    eval_statement,
    eval_term,
)
from .syntax import (
    ArityError,
    LawSyntaxError,
    Statement,
    format_statement,
    format_term,
    free_vars,
    parse_statement,
    parse_term,
    uses_star_or_constants,
)


class LawFileError(ValueError):
    pass


def parse_law_file(text: str) -> dict[str, Statement]:
    laws: dict[str, Statement] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition(":")
        name = name.strip()
        if not sep or not name.replace("_", "").isalnum():
            raise LawFileError(f"line {lineno}: expected 'name: statement'")
        if name in laws:
            raise LawFileError(f"line {lineno}: duplicate law {name!r}")
        try:
            laws[name] = parse_statement(body)
        except LawSyntaxError as exc:
            raise LawFileError(f"line {lineno}: {exc}") from exc
    return laws


def library_text() -> str:
    return files(__package__).joinpath("library.laws").read_text(encoding="utf-8")


_LIBRARY: dict[str, Statement] | None = None


def law_library() -> dict[str, Statement]:
    global _LIBRARY
    if _LIBRARY is None:
        _LIBRARY = parse_law_file(library_text())
    return dict(_LIBRARY)


def resolve_law(spec: str) -> tuple[str, Statement]:
    """A library name or an inline statement."""
    lib = law_library()
    if spec in lib:
        return spec, lib[spec]
    return spec, parse_statement(spec)


__all__ = [
    "ArityError",
    "CheckResult",
    "LawFileError",
    "LawSyntaxError",
    "NoTop",
    "StarUnavailable",
    "Statement",
    "UnboundVariable",
    "check_at",
    "check_statement",
    "eval_statement",
    "eval_term",
    "format_statement",
    "format_term",
    "free_vars",
    "law_library",
    "library_text",
    "parse_law_file",
    "parse_statement",
    "parse_term",
    "resolve_law",
    "uses_star_or_constants",
]
