"""Subcommand implementations; each returns a process exit code."""
from __future__ import annotations

import argparse
import asyncio
import json
from pathlib import Path
from typing import Any

from primstab.bq.search import bq_test, fibonacci_growth_report
from primstab.core import registry
from primstab.core.config import BipConfig, BqConfig, PsConfig, settings
from primstab.core.errors import NotFound, PrimstabError
from primstab.core.logging import bind_point, clear_point, get_logger
from primstab.core.types import (
    SCHEMA_VERSION,
    BipReportModel,
    ClassifyReport,
    FullReport,
    ScanSidecar,
    WordRow,
)
from primstab.farey.palindromes import BasicPair, palindromic_representative
from primstab.farey.rational import mod2_type, rationals_up_to
from primstab.farey.words import farey_word
from primstab.markoff.tracemap import TraceMap, Vertex
from primstab.markoff.triples import TraceTriple, is_escaped
from primstab.pscheck.bip import bip_report
from primstab.pscheck.broken import ps_verdict
from primstab.scan.families import CustomAffineSlice, ScanWindow, parse_complex, parse_size
from primstab.scan.image import render, write_image
from primstab.scan.orchestrator import ScanOrchestrator

log = get_logger(__name__)


# ── Flag plumbing ─────────────────────────────────────────────────────────────


def bq_config(args: argparse.Namespace) -> BqConfig:
    update: dict[str, Any] = {}
    if args.budget is not None:
        update["depth_budget"] = args.budget
    if args.m is not None:
        update["m"] = args.m
    if args.tol is not None:
        update["interval_tol"] = args.tol
        update["sqrt_mu_tol"] = args.tol
    return BqConfig(**{**settings.bq.model_dump(), **update})


def ps_config(args: argparse.Namespace) -> PsConfig:
    update = {"level": args.level} if args.level is not None else {}
    return PsConfig(**{**settings.ps.model_dump(), **update})


def bip_config(args: argparse.Namespace) -> BipConfig:
    update = {"intersection_tol": args.tol} if args.tol is not None else {}
    return BipConfig(**{**settings.bip.model_dump(), **update})


def emit(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")
    else:
        print(text)


def _fmt(t: complex) -> str:
    if is_escaped(t):
        return "inf"
    if abs(t.imag) < 1e-12:
        return f"{t.real:.6g}"
    return f"{t.real:.6g}{t.imag:+.6g}j"


def _bip_model(triple: TraceTriple, level: int, cfg: BipConfig) -> BipReportModel:
    try:
        return bip_report(triple, level, cfg).to_model()
    except PrimstabError as exc:
        # no hyperelliptic axes without three loxodromic base axes
        log.info("bip report unavailable", error=type(exc).__name__, detail=str(exc))
        return BipReportModel(D_hat=None, level=level)


# ── classify ──────────────────────────────────────────────────────────────────


def cmd_classify(args: argparse.Namespace) -> int:
    triple = TraceTriple.parse(args.triple)
    bind_point(triple, "classify")
    try:
        bq_cfg, ps_cfg, bip_cfg = bq_config(args), ps_config(args), bip_config(args)
        bq = bq_test(triple, bq_cfg)
        ps = ps_verdict(triple, ps_cfg)
        bip = _bip_model(triple, settings.bip.level, bip_cfg)
        report = ClassifyReport(
            triple=str(triple),
            mu=triple.mu,
            bq=bq.label,
            ps=ps.label,
            bip_D=bip.D_hat,
            bq_report=bq.to_report(),
            ps_report=ps.to_report(),
            budgets={
                "depth_budget": bq_cfg.depth_budget,
                "vertex_budget": bq_cfg.vertex_budget,
                "m": bq_cfg.m,
                "ps_level": ps_cfg.level,
                "bip_level": settings.bip.level,
                "depth_used": bq.depth_used,
                "vertices_explored": bq.vertices_explored,
            },
        )
        if args.format == "json":
            emit(report.model_dump_json(indent=2), args.out)
        else:
            lines = [
                f"triple  {report.triple}",
                f"mu      {_fmt(triple.mu)}",
                f"bq      {report.bq.value}",
                f"ps      {report.ps.value}",
                f"bip_D   {'-' if report.bip_D is None else f'{report.bip_D:.6g}'}",
            ]
            if bq.witness is not None:
                lines.append(
                    f"witness {bq.witness.kind.value} at {bq.witness.region} (trace {_fmt(bq.witness.trace)})"
                )
            emit("\n".join(lines), args.out)
        log.info("classified", bq=bq.label.value, ps=ps.label.value)
        return 0
    finally:
        clear_point()


# ── words ─────────────────────────────────────────────────────────────────────


def word_rows(level: int, negative: bool = False) -> list[WordRow]:
    rows: list[WordRow] = []
    for r in rationals_up_to(level, negative=negative):
        word = farey_word(r)
        e_a, e_b = word.exponent_sums
        palindromes: dict[str, str] = {}
        for pair in BasicPair:
            if mod2_type(r) not in pair.types:
                continue
            try:
                palindromes[pair.value] = str(palindromic_representative(r, pair))
            except NotFound:
                continue
        rows.append(
            WordRow(
                rational=str(r),
                word=str(word),
                length=len(word),
                e_a=e_a,
                e_b=e_b,
                mod2_type=mod2_type(r).value,
                palindromes=palindromes,
            )
        )
    return rows


def cmd_words(args: argparse.Namespace) -> int:
    level = args.level if args.level is not None else 4
    if level < 1:
        raise ValueError(f"level must be at least 1, got {level}")
    rows = word_rows(level, negative=args.negative)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "level": level,
            "rows": [row.model_dump() for row in rows],
        }
        emit(json.dumps(doc, indent=2), args.out)
    else:
        lines = []
        for row in rows:
            pals = " ".join(f"{k}={v}" for k, v in row.palindromes.items())
            lines.append(
                f"{row.rational:>7}  {row.word:<16} len={row.length:<3} "
                f"e=({row.e_a},{row.e_b}) type={row.mod2_type}  {pals}"
            )
        emit("\n".join(lines), args.out)
    return 0


# ── tree ──────────────────────────────────────────────────────────────────────


def tree_nodes(triple: TraceTriple, depth: int, m: float) -> list[dict[str, Any]]:
    """Vertices of the trace tree around the central vertex, depth first."""
    tm = TraceMap(triple)
    nodes: list[dict[str, Any]] = []
    stack: list[tuple[Vertex, Vertex | None, int]] = [(Vertex.central(), None, 0)]
    while stack:
        vertex, parent, d = stack.pop()
        traces = tm.traces_at(vertex)
        node: dict[str, Any] = {
            "depth": d,
            "regions": [str(r) for r in vertex.regions],
            "traces": [_fmt(t) for t in traces],
            "omega": [str(r) for r, t in zip(vertex.regions, traces) if not is_escaped(t) and abs(t) <= m],
            "edges": [],
        }
        children: list[Vertex] = []
        for edge in tm.edges_at(vertex):
            assert edge.u is not None and edge.v is not None and edge.z is not None
            child = Vertex.of(edge.u, edge.v, edge.z)
            if child == parent:
                continue
            node["edges"].append(
                {
                    "regions": [str(edge.u), str(edge.v)],
                    "toward_vertex": edge.toward_w,
                    "decisive": edge.decisive,
                }
            )
            children.append(child)
        if d < depth:
            stack.extend((child, vertex, d + 1) for child in reversed(children))
        nodes.append(node)
    return nodes


def cmd_tree(args: argparse.Namespace) -> int:
    triple = TraceTriple.parse(args.triple)
    if args.depth < 0:
        raise ValueError(f"depth must be non-negative, got {args.depth}")
    m = args.m if args.m is not None else settings.bq.m
    nodes = tree_nodes(triple, args.depth, m)
    if args.format == "json":
        emit(json.dumps({"schema_version": SCHEMA_VERSION, "triple": str(triple), "m": m, "nodes": nodes}, indent=2), args.out)
        return 0
    lines = []
    for node in nodes:
        pad = "  " * node["depth"]
        marks = f"  Ω({m:g}) ∋ {', '.join(node['omega'])}" if node["omega"] else ""
        lines.append(f"{pad}({', '.join(node['traces'])}) at ({', '.join(node['regions'])}){marks}")
        if node["depth"] < args.depth:
            for e in node["edges"]:
                arrow = "→ here" if e["toward_vertex"] else "← away"
                flag = "" if e["decisive"] else " (tie)"
                lines.append(f"{pad}  edge {e['regions'][0]}|{e['regions'][1]} {arrow}{flag}")
    emit("\n".join(lines), args.out)
    return 0


# ── scan ──────────────────────────────────────────────────────────────────────


def scan_params(args: argparse.Namespace) -> dict[str, Any]:
    params: dict[str, Any] = {}
    if args.x0 is not None:
        params["x0"] = parse_complex(args.x0)
    if args.y0 is not None:
        params["y0"] = parse_complex(args.y0)
    if args.affine is not None:
        params.update(CustomAffineSlice.parse_affine(args.affine))
    missing = registry.missing_params(args.family, params)
    if missing:
        flags = "--affine" if args.family == "custom" else " and ".join(f"--{k}" for k in missing)
        raise ValueError(f"--family {args.family} needs {flags}")
    return {k: params[k] for k in registry.entry(args.family).requires}


def cmd_scan(args: argparse.Namespace) -> int:
    family = registry.create(args.family, scan_params(args))
    window = ScanWindow.parse(args.window)
    size = parse_size(args.size)
    kind = args.image or settings.scan.image
    out = Path(args.out or f"scan.{kind}")
    cfg = bq_config(args)
    threads = args.threads or settings.scan.threads

    result = asyncio.run(ScanOrchestrator(family, window, size, cfg, threads).run())
    write_image(render(result.rows, kind), out)
    sidecar = ScanSidecar(
        family=args.family,
        params=family.params_json(),
        window=window.as_list(),
        size=list(size),
        image=kind,
        budgets={
            "depth_budget": cfg.depth_budget,
            "vertex_budget": cfg.vertex_budget,
            "descent_budget": cfg.descent_budget,
            "boundary_budget": cfg.boundary_budget,
            "m": cfg.m,
        },
        counts=result.metrics.counts,
        elapsed_s=round(result.elapsed_s, 3),
    )
    out.with_suffix(".json").write_text(sidecar.model_dump_json(indent=2) + "\n")
    log.info("scan written", image=str(out), workers=threads, **result.metrics.counts)
    return 0


# ── report ────────────────────────────────────────────────────────────────────


def cmd_report(args: argparse.Namespace) -> int:
    triple = TraceTriple.parse(args.triple)
    bind_point(triple, "report")
    try:
        level = args.level if args.level is not None else settings.bip.level
        growth = fibonacci_growth_report(triple, level, bq_config(args))
        ps = ps_verdict(triple, ps_config(args))
        report = FullReport(
            triple=str(triple),
            growth=growth.to_model(),
            ps=ps.to_report(),
            bip=_bip_model(triple, level, bip_config(args)),
        )
        if args.format == "json":
            emit(report.model_dump_json(indent=2), args.out)
        else:
            g = report.growth
            lines = [
                f"triple   {report.triple}",
                f"growth   c_lower={g.c_lower:.6g} c_upper={g.c_upper:.6g} violations={len(g.violations)}",
                f"ps       {report.ps.verdict.value} min_ratio={report.ps.min_ratio:.6g} K={report.ps.K:.6g}",
                f"bip      D_hat={'-' if report.bip.D_hat is None else f'{report.bip.D_hat:.6g}'} "
                f"records={len(report.bip.records)}",
            ]
            emit("\n".join(lines), args.out)
        return 0
    finally:
        clear_point()
