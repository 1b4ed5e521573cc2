"""Regression corpus: manifest parsing and per-entry checks.

A manifest is a text file with one entry per line::

    name  graph=<name or path>  [group=aut|first:N|second:N|file:PATH]
          [check=main3|main4|scan|corollary]  [expect=...]  [seed=N]  [subgroups=N]

``#`` starts a comment. Relative ``file:`` paths resolve against the manifest's
directory, then against the packaged data directory.
"""

from __future__ import annotations

import json
import shlex
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .constructions import build_lemma41, build_lemma42
from .errors import CapExceeded, HypothesisError, Violation
from .families import builtin_graph
from .graph import Graph, read_graph
from .perm import GeneratedGroup
from .semireg import (Outcome, find_semiregular, part_preserving_certificate, theorem_3valent,
                      theorem_4valent)
from .symmetry import automorphism_group, random_edge_transitive_subgroups

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
CHECKS = ("main3", "main4", "scan", "corollary")
EXPECTS = {"certificate", "semiregular", "wreath", "double", "no-semiregular"}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: str
    group: str = "aut"
    check: str = "main4"
    expect: str = "certificate"
    seed: int = 0
    subgroups: int = 0
    origin: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "graph": self.graph, "group": self.group, "check": self.check,
                "expect": self.expect, "seed": self.seed, "subgroups": self.subgroups}


@dataclass
class EntryResult:
    entry: CorpusEntry
    verdict: str
    detail: dict = field(default_factory=dict)
    counters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"entry": self.entry.to_json(), "verdict": self.verdict,
                "detail": self.detail, "counters": self.counters}


def data_path(name: str) -> Path:
    return Path(str(resources.files("etsemi") / "data" / name))


def parse_manifest(text: str, origin: str | None = None) -> list[CorpusEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *fields = shlex.split(line)
        kv = {}
        for f in fields:
            if "=" not in f:
                raise ValueError(f"line {lineno}: expected key=value, got {f!r}")
            k, v = f.split("=", 1)
            kv[k] = v
        unknown = set(kv) - {"graph", "group", "check", "expect", "seed", "subgroups"}
        if unknown or "graph" not in kv:
            raise ValueError(f"line {lineno}: bad keys {sorted(unknown) or ['graph missing']}")
        e = CorpusEntry(name, kv["graph"], kv.get("group", "aut"), kv.get("check", "main4"),
                        kv.get("expect", "certificate"), int(kv.get("seed", 0)),
                        int(kv.get("subgroups", 0)), origin)
        if e.check not in CHECKS or e.expect not in EXPECTS:
            raise ValueError(f"line {lineno}: unknown check {e.check!r} or expectation {e.expect!r}")
        entries.append(e)
    return entries


def load_manifest(path: str | Path) -> list[CorpusEntry]:
    p = Path(path)
    if not p.exists():
        p = data_path(str(path))
    return parse_manifest(p.read_text(), str(p.parent))


def _resolve(path: str, origin: str | None) -> Path:
    for base in ([Path(origin)] if origin else []) + [data_path("")]:
        cand = base / path
        if cand.exists():
            return cand
    return Path(path)


def load_graph(spec: str, origin: str | None = None) -> Graph:
    p = _resolve(spec, origin)
    if p.exists() and p.is_file():
        return read_graph(p)
    return builtin_graph(spec)


def load_group(spec: str, g: Graph, origin: str | None = None) -> tuple[Graph, GeneratedGroup]:
    """The graph (possibly replaced by a construction's own) and the group an entry names."""
    if spec == "aut":
        return g, automorphism_group(g)
    kind, _, arg = spec.partition(":")
    if kind in ("first", "second"):
        inst = build_lemma41(int(arg)) if kind == "first" else build_lemma42(int(arg))
        own = inst.graph if kind == "first" else inst.sigma_big
        if own.edges() != g.edges() or own.n != g.n:
            raise ValueError(f"group {spec} does not act on the given graph")
        return own, inst.group
    if kind == "file":
        data = json.loads(_resolve(arg, origin).read_text())
        grp = GeneratedGroup.from_json(data)
        if grp.domain_size != g.n:
            raise ValueError(f"group file {arg} acts on {grp.domain_size} points, graph has {g.n}")
        return g, grp
    raise ValueError(f"unknown group spec {spec!r}")


def run_entry(entry: CorpusEntry, cap: int | None = None) -> EntryResult:
    try:
        g = load_graph(entry.graph, entry.origin)
        g, grp = load_group(entry.group, g, entry.origin)
        return _run(entry, g, grp, cap)
    except CapExceeded as exc:
        return EntryResult(entry, INCONCLUSIVE, {"cap": exc.cap, "group_order": exc.order})
    except (Violation, HypothesisError) as exc:
        return EntryResult(entry, FAIL, {"error": f"{type(exc).__name__}: {exc}"})


def _run(entry: CorpusEntry, g: Graph, grp: GeneratedGroup, cap) -> EntryResult:
    counters = {"group_order": grp.order()}
    if entry.check == "main3":
        certs = [theorem_3valent(g, grp, cap)]
        subs = random_edge_transitive_subgroups(g, grp, entry.subgroups, entry.seed)
        counters["subgroups"] = len(subs)
        certs += [theorem_3valent(g, h, cap) for h in subs]
        ok = all(c.validate() for c in certs) and len(subs) >= entry.subgroups
        detail = {"certificate": certs[0].to_json(),
                  "cycle_lengths": sorted({c.cycle_length for c in certs})}
        return EntryResult(entry, PASS if ok else FAIL, detail, counters)
    if entry.check == "main4":
        out = theorem_4valent(g, grp, cap, entry.seed)
        counters.update(scanned=out.group_scan.scanned, exhaustive=out.group_scan.exhaustive)
        want = {"semiregular": Outcome.SEMIREGULAR, "wreath": Outcome.WREATH,
                "double": Outcome.DOUBLE}.get(entry.expect)
        ok = (want is None or out.kind is want) and out.aut_certificate is not None \
            and out.aut_certificate.validate()
        # a family witness only means "no semiregular element" when the scan was complete
        if ok and out.kind is not Outcome.SEMIREGULAR and not out.group_scan.exhaustive:
            return EntryResult(entry, INCONCLUSIVE, out.to_json(), counters)
        return EntryResult(entry, PASS if ok else FAIL, out.to_json(), counters)
    if entry.check == "corollary":
        cert, route = part_preserving_certificate(g, cap, entry.seed)
        return EntryResult(entry, PASS if cert.validate() else FAIL,
                           {"certificate": cert.to_json(), "route": route}, counters)
    res = find_semiregular(grp, cap=cap, seed=entry.seed)
    counters.update(scanned=res.scanned, prime_order=res.prime_order_count, exhaustive=res.exhaustive)
    if res.status == "inconclusive":
        return EntryResult(entry, INCONCLUSIVE, res.to_json(), counters)
    found = res.status == "found"
    ok = found if entry.expect != "no-semiregular" else not found
    return EntryResult(entry, PASS if ok else FAIL, res.to_json(), counters)
