"""File formats: CSV datasets, FD files, JSON rule files and reports."""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .consistency import Condition, Removal, ResolutionLog
from .errors import FdSyntaxError, MalformedCsv, MalformedRuleFile, ParseFailure, RaggedRow, SchemaMismatch, WMRRError
from .evaluation import ErrorLog, ExperimentRow
from .model import Dataset, FunctionalDependency, Kind, Row, Schema, cell_kind, validate_fds
from .repair import RepairReport
from .rules import WMRR

RULE_FORMAT = "wmrr-rules"
RULE_FORMAT_VERSION = 1


def _infer_kind(cells: list[str]) -> Kind:
    stripped = [c.strip() for c in cells]
    if stripped and all(s and cell_kind(s).kind is Kind.NUMERIC for s in stripped):
        return Kind.NUMERIC
    return Kind.STRING


def read_csv(stream: TextIO, kinds: dict[str, Kind] | None = None, id_column: str | None = None) -> Dataset:
    """Parse a header-first CSV document.

    Column kinds come from ``kinds`` where given; other columns are numeric
    when every cell parses as a finite number. Tuple ids are taken from
    ``id_column`` when named, else they are the 0-based row positions.
    """
    try:
        records = list(csv.reader(stream, strict=True))
    except csv.Error as exc:
        raise MalformedCsv(str(exc)) from exc
    if not records:
        raise MalformedCsv("missing header row")
    header = [h.strip() for h in records[0]]
    body = records[1:]
    for line, rec in enumerate(body, start=2):
        if len(rec) != len(header):
            raise RaggedRow(f"line {line}: expected {len(header)} fields, found {len(rec)}")
    ids: list = list(range(len(body)))
    if id_column is not None:
        if id_column not in header:
            raise MalformedCsv(f"id column {id_column!r} not in header")
        k = header.index(id_column)
        ids = [rec[k].strip() for rec in body]
        header = header[:k] + header[k + 1:]
        body = [rec[:k] + rec[k + 1:] for rec in body]
    kinds = dict(kinds or {})
    for i, name in enumerate(header):
        if name not in kinds:
            kinds[name] = _infer_kind([rec[i] for rec in body])
    try:
        schema = Schema.from_names(header, kinds)
        rows = []
        for tid, rec in zip(ids, body):
            rows.append(Row(tid, tuple(cell_kind(v, a.kind) for v, a in zip(rec, schema.attributes))))
        return Dataset(schema, tuple(rows))
    except (SchemaMismatch, ParseFailure) as exc:
        raise MalformedCsv(str(exc)) from exc


def load_csv(path, kinds: dict[str, Kind] | None = None, id_column: str | None = None) -> Dataset:
    with open(path, newline="", encoding="utf-8") as fh:
        return read_csv(fh, kinds, id_column)


def write_csv(d: Dataset, stream: TextIO, id_column: str | None = None):
    writer = csv.writer(stream, lineterminator="\n")
    header = d.schema.names
    writer.writerow(([id_column] if id_column else []) + header)
    for row in d.rows:
        cells = [v.text for v in row.values]
        writer.writerow(([str(row.tuple_id)] if id_column else []) + cells)


def save_csv(d: Dataset, path, id_column: str | None = None):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        write_csv(d, fh, id_column)


def dataset_to_csv(d: Dataset, id_column: str | None = None) -> str:
    buf = io.StringIO()
    write_csv(d, buf, id_column)
    return buf.getvalue()


_ARROW = re.compile(r"->|→")


def parse_fds(text: str, schema: Schema) -> list[FunctionalDependency]:
    """Parse ``A, B -> C, D`` lines; a multi-attribute rhs expands to one FD each."""
    fds = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = _ARROW.split(line)
        if len(parts) != 2:
            raise FdSyntaxError(f"line {lineno}: expected exactly one '->' in {raw!r}")
        lhs = [s.strip() for s in parts[0].split(",") if s.strip()]
        rhs = [s.strip() for s in parts[1].split(",") if s.strip()]
        if not lhs or not rhs:
            raise FdSyntaxError(f"line {lineno}: both sides of {raw!r} need attributes")
        for y in rhs:
            fds.append(FunctionalDependency.from_names(schema, lhs, y))
    return validate_fds(schema, fds)


def parse_fd_file(path, schema: Schema) -> list[FunctionalDependency]:
    return parse_fds(Path(path).read_text(encoding="utf-8"), schema)


def format_fds(fds: Iterable[FunctionalDependency], schema: Schema) -> str:
    return "".join(fd.describe(schema) + "\n" for fd in fds)


def serialize_rules(rules: Iterable[WMRR], schema: Schema) -> str:
    """JSON document with one record per rule, ordered by rule id."""
    records = []
    for r in sorted(rules, key=lambda r: r.rule_id):
        records.append({
            "rule_id": r.rule_id,
            "lhs": [schema.name_of(a) for a in r.lhs],
            "director": [v.text for _, v in r.director],
            "rhs": schema.name_of(r.rhs),
            "wrong_patterns": sorted((v.text for v in r.wrong_patterns), key=lambda t: t),
            "correct_pattern": r.correct_pattern.text,
            "w1": r.w1,
            "w2": r.w2,
        })
    doc = {"format": RULE_FORMAT, "version": RULE_FORMAT_VERSION,
           "attributes": [{"name": a.name, "kind": a.kind.value} for a in schema.attributes],
           "rules": records}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _rule_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRuleFile(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != RULE_FORMAT:
        raise MalformedRuleFile("not a rule file")
    return doc


def rule_file_schema(text: str) -> Schema:
    """The schema recorded in a rule file."""
    doc = _rule_document(text)
    try:
        attrs = doc["attributes"]
        return Schema.from_names([a["name"] for a in attrs], {a["name"]: Kind(a["kind"]) for a in attrs})
    except (KeyError, TypeError, ValueError, WMRRError) as exc:
        raise MalformedRuleFile(f"bad attribute list: {exc}") from exc


def deserialize_rules(text: str, schema: Schema | None = None) -> list[WMRR]:
    """Parse a rule file; without ``schema`` the one recorded in the file is used."""
    if not text.strip():
        return []
    doc = _rule_document(text)
    if schema is None:
        schema = rule_file_schema(text)
    rules, seen = [], set()
    for n, rec in enumerate(doc.get("rules", [])):
        try:
            lhs = [schema.id_of(a) for a in rec["lhs"]]
            rhs = schema.id_of(rec["rhs"])
            if len(rec["director"]) != len(lhs):
                raise MalformedRuleFile(f"rule #{n}: director and lhs lengths differ")
            director = [(a, cell_kind(v, schema[a].kind)) for a, v in zip(lhs, rec["director"])]
            kind = schema[rhs].kind
            wrong = frozenset(cell_kind(v, kind) for v in rec["wrong_patterns"])
            rule = WMRR(int(rec["rule_id"]), FunctionalDependency(tuple(lhs), rhs), director,
                        wrong, cell_kind(rec["correct_pattern"], kind), float(rec["w1"]), float(rec["w2"]))
            validate_fds(schema, [rule.fd])
        except MalformedRuleFile:
            raise
        except (KeyError, TypeError, ValueError, WMRRError) as exc:
            raise MalformedRuleFile(f"rule #{n}: {exc}") from exc
        if rule.rule_id in seen:
            raise MalformedRuleFile(f"duplicate rule id {rule.rule_id}")
        seen.add(rule.rule_id)
        rules.append(rule)
    return sorted(rules, key=lambda r: r.rule_id)


def save_rules(rules: Iterable[WMRR], schema: Schema, path):
    Path(path).write_text(serialize_rules(rules, schema), encoding="utf-8")


def load_rules(path, schema: Schema | None = None) -> list[WMRR]:
    return deserialize_rules(Path(path).read_text(encoding="utf-8"), schema)


def resolution_log_json(log: ResolutionLog) -> str:
    records = [{"removed": r.removed, "survivor": r.survivor, "condition": r.condition.value,
                "condition_name": r.condition.name.lower(), "removed_w1": r.removed_w1,
                "survivor_w1": r.survivor_w1} for r in log]
    return json.dumps({"removals": records}, indent=2) + "\n"


def parse_resolution_log(text: str) -> ResolutionLog:
    doc = json.loads(text)
    return ResolutionLog([Removal(r["removed"], r["survivor"], Condition(r["condition"]),
                                  r["removed_w1"], r["survivor_w1"]) for r in doc["removals"]])


def repair_report_json(report: RepairReport, schema: Schema) -> str:
    per_fd = [{"fd": fd.describe(schema), "repairs": n}
              for fd, n in sorted(report.per_fd.items(), key=lambda kv: (kv[0].lhs, kv[0].rhs))]
    actions = [{"tuple_id": a.tuple_id, "attribute": schema.name_of(a.attribute), "old": a.old.text,
                "new": a.new.text, "rule_id": a.rule_id, "kind": a.kind.value}
               for acts in report.actions.values() for a in acts]
    doc = {"repairs": report.n_repairs, "verifies": report.n_verifies, "per_fd": per_fd, "actions": actions}
    return json.dumps(doc, indent=2, ensure_ascii=False, default=str) + "\n"


def error_log_csv(log: ErrorLog, schema: Schema) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tuple_id", "attribute", "clean", "dirty", "kind"])
    for e in log:
        writer.writerow([e.tuple_id, schema.name_of(e.attribute), e.clean.text, e.dirty.text, e.kind.value])
    return buf.getvalue()


REPORT_FIELDS = ["typo_rate", "theta", "n_errors", "n_rules", "n_consistent", "n_repair",
                 "precision", "recall", "f_measure"]
TIMING_FIELDS = ["inject", "discover", "resolve", "repair", "evaluate"]


def experiment_report(rows: Sequence[ExperimentRow], delimiter: str = ",") -> str:
    """Header plus one line per sweep point; timing columns appear when recorded."""
    with_timings = any(r.timings for r in rows)
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(REPORT_FIELDS + ([f"t_{k}" for k in TIMING_FIELDS] if with_timings else []))
    for r in rows:
        cells = [f"{r.typo_rate:g}", f"{r.theta:g}", r.n_errors, r.n_rules, r.n_consistent, r.n_repair,
                 f"{r.precision:.6f}", f"{r.recall:.6f}", f"{r.f_measure:.6f}"]
        if with_timings:
            cells += [f"{r.timings.get(k, 0.0):.6f}" for k in TIMING_FIELDS]
        writer.writerow(cells)
    return buf.getvalue()
