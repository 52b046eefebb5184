"""Pipeline orchestration, run reports and report formats."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field, fields

from . import decomposition as td_mod
from .decomposition import NiceTreeDecomposition
from .dp import (Deadline, Infeasible, SolveStats, SolveTimeout, extract_answer,
                 forget_vertex, introduce_edge, introduce_vertex, join, leaf_table)
from .instance import Instance
from .reduction import ReductionPolicy, apply_policy

DEFAULT_TIMEOUT = 3600.0

OK = "ok"
TIMEOUT = "timeout"
INFEASIBLE = "infeasible"
ERROR = "error"


@dataclass
class RunReport:
    instance: str
    width: int | None
    vertices: int
    edges: int
    terminals: int
    algorithm: str
    status: str
    optimum: int | None = None
    time_ms: float = 0.0
    partial_solutions: int = 0
    fill_ms: float = 0.0
    elimination_ms: float = 0.0
    reduce_calls: int = 0
    max_table_size: dict = field(default_factory=dict)
    max_subtable_size: dict = field(default_factory=dict)
    message: str = ""


TIMING_FIELDS = ("time_ms", "fill_ms", "elimination_ms")


@dataclass
class Prepared:
    """A decomposition shared by several runs on one instance."""

    instance: Instance  # restricted to the terminals' component
    nice: NiceTreeDecomposition | None
    width: int | None
    seconds: dict


def prepare(instance: Instance) -> Prepared:
    if not instance.terminals_connected():
        return Prepared(instance, None, None, {})
    work = instance.restrict_to_terminal_component()
    t0 = time.perf_counter()
    td = td_mod.greedy_degree_decompose(work)
    t1 = time.perf_counter()
    nice = td_mod.make_nice(td, work)
    t2 = time.perf_counter()
    return Prepared(work, nice, td.width, {"decompose": t1 - t0, "nice": t2 - t1})


def run_dp(nice: NiceTreeDecomposition, instance: Instance, policy: ReductionPolicy,
           stats: SolveStats, deadline: Deadline) -> int:
    """Bottom-up traversal; returns the optimum read below the root forget node."""
    terminals = instance.terminals
    tables = {}
    nodes = nice.nodes
    for i, node in enumerate(nodes[:-1]):
        deadline.check()
        kind = node.kind
        if kind == td_mod.LEAF:
            table = leaf_table()
            stats.partial_solutions_generated += 1
        elif kind == td_mod.INTRODUCE:
            table = introduce_vertex(tables.pop(node.children[0]), node.vertex,
                                     node.vertex in terminals, stats)
        elif kind == td_mod.INTRODUCE_EDGE:
            u, v, w = node.edge
            table = introduce_edge(tables.pop(node.children[0]), u, v, w, stats)
        elif kind == td_mod.FORGET:
            table = forget_vertex(tables.pop(node.children[0]), node.vertex, stats)
        elif kind == td_mod.JOIN:
            left, right = node.children
            table = join(tables.pop(left), tables.pop(right), stats, deadline)
        else:
            raise ValueError(f"unknown node kind {kind!r}")
        table = apply_policy(table, policy, stats)
        stats.record_table(table)
        tables[i] = table
    root = nodes[-1]
    return extract_answer(tables[root.children[0]], root.vertex)


def solve(instance: Instance, mode, time_budget: float | None = DEFAULT_TIMEOUT,
          prepared: Prepared | None = None) -> RunReport:
    policy = ReductionPolicy(mode)
    start = time.perf_counter()
    deadline = Deadline(time_budget)
    report = RunReport(instance.name, None, instance.vertex_count,
                       len(instance.edges), len(instance.terminals),
                       policy.value, OK)
    stats = SolveStats()
    try:
        deadline.check()
        if prepared is None:
            prepared = prepare(instance)
        report.width = prepared.width
        if prepared.nice is None:
            raise Infeasible("terminals lie in different components")
        deadline.check()
        report.optimum = run_dp(prepared.nice, prepared.instance, policy, stats,
                                deadline)
    except SolveTimeout:
        report.status = TIMEOUT
    except Infeasible as exc:
        report.status = INFEASIBLE
        report.message = str(exc)
    except (OverflowError, ValueError) as exc:
        report.status = ERROR
        report.message = str(exc)
    report.time_ms = (time.perf_counter() - start) * 1000.0
    report.partial_solutions = stats.partial_solutions_generated
    report.fill_ms = stats.fill_seconds * 1000.0
    report.elimination_ms = stats.elimination_seconds * 1000.0
    report.reduce_calls = stats.reduce_calls
    report.max_table_size = dict(sorted(stats.max_table_size_by_bag_size.items()))
    report.max_subtable_size = dict(sorted(stats.max_subtable_size_by_ground_size.items()))
    return report


def compare(instance: Instance, modes, time_budget: float | None = DEFAULT_TIMEOUT) -> list:
    modes = list(modes)
    if not modes:
        return []
    prepared = prepare(instance)
    return [solve(instance, m, time_budget, prepared) for m in modes]


# Report formats.

CSV_COLUMNS = [f.name for f in fields(RunReport)]


def _size_map(d: dict) -> str:
    return ";".join(f"{k}:{v}" for k, v in sorted(d.items()))


def _parse_size_map(text: str) -> dict:
    if not text:
        return {}
    return {int(k): int(v) for k, v in (item.split(":") for item in text.split(";"))}


def _columns(timing: bool) -> list:
    return [c for c in CSV_COLUMNS if timing or c not in TIMING_FIELDS]


def emit_report(reports, fmt: str = "csv", timing: bool = True) -> str:
    if fmt == "csv":
        return _emit_csv(reports, timing)
    if fmt == "json":
        rows = []
        for r in reports:
            d = asdict(r)
            if not timing:
                for k in TIMING_FIELDS:
                    d.pop(k)
            rows.append(d)
        return json.dumps(rows, indent=2, sort_keys=False) + "\n"
    if fmt in ("table", "table-text"):
        return _emit_table(reports, timing)
    raise ValueError(f"unknown report format {fmt!r}")


def _emit_csv(reports, timing: bool) -> str:
    cols = _columns(timing)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in reports:
        row = []
        for c in cols:
            v = getattr(r, c)
            if isinstance(v, dict):
                v = _size_map(v)
            elif v is None:
                v = ""
            elif isinstance(v, float):
                v = f"{v:.3f}"
            row.append(v)
        writer.writerow(row)
    return buf.getvalue()


def reports_from_json(text: str) -> list:
    out = []
    for d in json.loads(text):
        for k in ("max_table_size", "max_subtable_size"):
            d[k] = {int(a): b for a, b in d[k].items()}
        out.append(RunReport(**d))
    return out


def reports_from_csv(text: str) -> list:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        d = {}
        for f in fields(RunReport):
            if f.name not in row:
                continue
            v = row[f.name]
            if f.name in ("max_table_size", "max_subtable_size"):
                d[f.name] = _parse_size_map(v)
            elif f.name in ("width", "optimum"):
                d[f.name] = int(v) if v != "" else None
            elif f.name in ("vertices", "edges", "terminals", "partial_solutions",
                            "reduce_calls"):
                d[f.name] = int(v)
            elif f.name in TIMING_FIELDS:
                d[f.name] = float(v)
            else:
                d[f.name] = v
        out.append(RunReport(**d))
    return out


def _cell(r: RunReport, value) -> str:
    return "*" if r.status == TIMEOUT else ("-" if r.status != OK else str(value))


def _emit_table(reports, timing: bool) -> str:
    # One row per instance: instance, tw, |V|, |E|, |K|, then per-mode columns.
    by_instance = {}
    modes = []
    for r in reports:
        by_instance.setdefault(r.instance, []).append(r)
        if r.algorithm not in modes:
            modes.append(r.algorithm)
    header = ["instance", "tw", "|V|", "|E|", "|K|"]
    if timing:
        header += [f"{m.upper()} ms" for m in modes]
    header += [f"{m.upper()} partial" for m in modes] + ["optimum"]
    rows = [header]
    for name, group in by_instance.items():
        first = group[0]
        per = {r.algorithm: r for r in group}
        row = [name or "-", "-" if first.width is None else str(first.width),
               str(first.vertices), str(first.edges), str(first.terminals)]
        if timing:
            row += [_cell(per[m], f"{per[m].time_ms:.0f}") if m in per else ""
                    for m in modes]
        row += [_cell(per[m], per[m].partial_solutions) if m in per else ""
                for m in modes]
        optima = {r.optimum for r in group if r.status == OK}
        row.append(",".join(str(o) for o in sorted(optima))
                   or next((r.status for r in group if r.status != OK), "-"))
        rows.append(row)
    text = _align(rows)

    sizes = sorted({k for r in reports for k in r.max_table_size})
    if sizes:
        brows = [["bag size"] + [f"{r.instance or '-'} {r.algorithm.upper()}"
                                 for r in reports]]
        for k in sizes:
            brows.append([str(k)] + [str(r.max_table_size.get(k, "")) for r in reports])
        text += "\n" + _align(brows)
    return text


def _align(rows) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
