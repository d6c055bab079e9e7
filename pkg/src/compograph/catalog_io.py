"""Catalog input/output: a line-oriented DSL and an equivalent JSON form.

DSL grammar, one service per line::

    collection <name>                      # optional, first significant line
    <name> : <in> <in> ... -> <out> <out> ...

``#`` starts a comment that runs to end-of-line; blank lines are skipped.
Parsing collects every problem in the source instead of stopping at the
first one, and never raises anything but :class:`CatalogParseError` on bad
input.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

from .types import Catalog, Service, TokenError, TypeSet, validate_token

MALFORMED_LINE = "malformed-line"
DUPLICATE_SERVICE = "duplicate-service"
EMPTY_INPUTS = "empty-inputs"
EMPTY_OUTPUTS = "empty-outputs"
DUPLICATE_TYPE = "duplicate-type-in-list"
BAD_TOKEN = "bad-token"

_WORD = re.compile(r"\S+")


@dataclass(frozen=True)
class ParseIssue:
    """One problem found in catalog source, with a 1-based position."""

    line: int
    column: int
    kind: str
    message: str

    def render(self) -> str:
        return f"{self.line}:{self.column}: {self.kind}: {self.message}"


class CatalogParseError(ValueError):
    """The catalog source is invalid; carries every issue found."""

    def __init__(self, issues: Iterable[ParseIssue]) -> None:
        self.issues: tuple[ParseIssue, ...] = tuple(issues)
        super().__init__("; ".join(issue.render() for issue in self.issues))


def _check_token(line_no: int, column: int, token: str, issues: list[ParseIssue]) -> bool:
    try:
        validate_token(token)
        return True
    except TokenError as exc:
        issues.append(ParseIssue(line_no, column, BAD_TOKEN, str(exc)))
        return False


def _token_list(
    line_no: int,
    line: str,
    start: int,
    end: int,
    empty_kind: str,
    side: str,
    empty_column: int,
    issues: list[ParseIssue],
) -> list[str]:
    words = [(m.start() + 1, m.group()) for m in _WORD.finditer(line, start, end)]
    if not words:
        issues.append(ParseIssue(line_no, empty_column, empty_kind, f"at least one {side} type is required"))
        return []
    seen: set[str] = set()
    tokens: list[str] = []
    for column, token in words:
        if not _check_token(line_no, column, token, issues):
            continue
        if token in seen:
            issues.append(ParseIssue(line_no, column, DUPLICATE_TYPE, f"type {token!r} repeated in {side} list"))
            continue
        seen.add(token)
        tokens.append(token)
    return tokens


def _parse_service_line(line_no: int, line: str, issues: list[ParseIssue]) -> tuple[int, Service] | None:
    before = len(issues)
    colon = line.find(":")
    if colon < 0:
        issues.append(ParseIssue(line_no, 1, MALFORMED_LINE, "expected '<name> : <inputs> -> <outputs>'"))
        return None
    name_words = [(m.start() + 1, m.group()) for m in _WORD.finditer(line, 0, colon)]
    if len(name_words) != 1:
        issues.append(ParseIssue(line_no, colon + 1, MALFORMED_LINE, "expected exactly one service name before ':'"))
        return None
    name_column, name = name_words[0]
    _check_token(line_no, name_column, name, issues)
    arrow = line.find("->", colon + 1)
    if arrow < 0:
        issues.append(ParseIssue(line_no, colon + 1, MALFORMED_LINE, "missing '->' between inputs and outputs"))
        return None
    inputs = _token_list(line_no, line, colon + 1, arrow, EMPTY_INPUTS, "input", arrow + 1, issues)
    outputs = _token_list(line_no, line, arrow + 2, len(line), EMPTY_OUTPUTS, "output", arrow + 3, issues)
    if len(issues) > before:
        return None
    return name_column, Service(name, TypeSet(inputs), TypeSet(outputs))


def parse_catalog_text(source: str, default_name: str = "catalog") -> Catalog:
    """Parse the line-oriented DSL form of a catalog.

    ``default_name`` (typically the file stem) names the catalog when no
    ``collection`` header is present.
    """
    issues: list[ParseIssue] = []
    services: list[Service] = []
    declared: dict[str, int] = {}
    name = default_name
    first_significant = True

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        words = [(m.start() + 1, m.group()) for m in _WORD.finditer(line)]
        if first_significant and words[0][1] == "collection" and ":" not in line:
            first_significant = False
            if len(words) != 2:
                issues.append(
                    ParseIssue(line_no, words[0][0], MALFORMED_LINE, "collection header expects exactly one name")
                )
            else:
                column, token = words[1]
                if _check_token(line_no, column, token, issues):
                    name = token
            continue
        first_significant = False
        parsed = _parse_service_line(line_no, line, issues)
        if parsed is None:
            continue
        name_column, svc = parsed
        if svc.name in declared:
            issues.append(
                ParseIssue(
                    line_no,
                    name_column,
                    DUPLICATE_SERVICE,
                    f"service {svc.name!r} already declared on line {declared[svc.name]}",
                )
            )
        else:
            declared[svc.name] = line_no
            services.append(svc)

    # the default name can come from a file stem, so it needs checking too
    try:
        validate_token(name)
    except TokenError as exc:
        issues.append(ParseIssue(1, 1, BAD_TOKEN, f"catalog name: {exc}"))
    if issues:
        raise CatalogParseError(issues)
    return Catalog(name, tuple(services))


def _schema_issue(issues: list[ParseIssue], kind: str, path: str, message: str) -> None:
    issues.append(ParseIssue(1, 1, kind, f"{path}: {message}"))


def _json_token_list(value: object, path: str, side: str, issues: list[ParseIssue]) -> list[str] | None:
    if not isinstance(value, list):
        _schema_issue(issues, MALFORMED_LINE, path, f"expected an array of {side} type names")
        return None
    before = len(issues)
    seen: set[str] = set()
    tokens: list[str] = []
    for i, item in enumerate(value):
        if not isinstance(item, str):
            _schema_issue(issues, BAD_TOKEN, f"{path}/{i}", "expected a string")
            continue
        try:
            validate_token(item)
        except TokenError as exc:
            _schema_issue(issues, BAD_TOKEN, f"{path}/{i}", str(exc))
            continue
        if item in seen:
            _schema_issue(issues, DUPLICATE_TYPE, f"{path}/{i}", f"type {item!r} repeated in {side} list")
            continue
        seen.add(item)
        tokens.append(item)
    if not value:
        _schema_issue(issues, EMPTY_INPUTS if side == "input" else EMPTY_OUTPUTS, path, f"at least one {side} type is required")
    return tokens if len(issues) == before else None


def parse_catalog_json(source: str) -> Catalog:
    """Parse the JSON form: ``{"name": ..., "services": [{name, inputs, outputs}]}``.

    Schema violations are reported with a JSON-pointer-style path in the
    issue message.
    """
    issues: list[ParseIssue] = []
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogParseError([ParseIssue(exc.lineno, exc.colno, MALFORMED_LINE, f"invalid JSON: {exc.msg}")]) from exc
    if not isinstance(data, dict):
        raise CatalogParseError([ParseIssue(1, 1, MALFORMED_LINE, "/: expected an object")])

    name = "catalog"
    raw_name = data.get("name")
    if not isinstance(raw_name, str):
        _schema_issue(issues, MALFORMED_LINE, "/name", "expected a string")
    else:
        try:
            validate_token(raw_name)
            name = raw_name
        except TokenError as exc:
            _schema_issue(issues, BAD_TOKEN, "/name", str(exc))

    services: list[Service] = []
    declared: set[str] = set()
    raw_services = data.get("services")
    if not isinstance(raw_services, list):
        _schema_issue(issues, MALFORMED_LINE, "/services", "expected an array")
    else:
        for i, entry in enumerate(raw_services):
            path = f"/services/{i}"
            if not isinstance(entry, dict):
                _schema_issue(issues, MALFORMED_LINE, path, "expected an object")
                continue
            svc_name = entry.get("name")
            if not isinstance(svc_name, str):
                _schema_issue(issues, MALFORMED_LINE, f"{path}/name", "expected a string")
                continue
            try:
                validate_token(svc_name)
            except TokenError as exc:
                _schema_issue(issues, BAD_TOKEN, f"{path}/name", str(exc))
                continue
            inputs = _json_token_list(entry.get("inputs"), f"{path}/inputs", "input", issues)
            outputs = _json_token_list(entry.get("outputs"), f"{path}/outputs", "output", issues)
            if inputs is None or outputs is None:
                continue
            if svc_name in declared:
                _schema_issue(issues, DUPLICATE_SERVICE, f"{path}/name", f"service {svc_name!r} already declared")
                continue
            declared.add(svc_name)
            services.append(Service(svc_name, TypeSet(inputs), TypeSet(outputs)))

    if issues:
        raise CatalogParseError(issues)
    return Catalog(name, tuple(services))


def serialize_catalog(catalog: Catalog, fmt: str = "dsl") -> str:
    """Render a catalog canonically: services sorted by name, type lists sorted.

    ``parse(serialize(c)) == c`` holds for both formats.
    """
    if fmt == "dsl":
        lines = [f"collection {catalog.name}"]
        for svc in catalog.services:
            lines.append(f"{svc.name} : {' '.join(svc.inputs)} -> {' '.join(svc.outputs)}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "name": catalog.name,
            "services": [
                {"name": svc.name, "inputs": list(svc.inputs), "outputs": list(svc.outputs)}
                for svc in catalog.services
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown catalog format {fmt!r}")
