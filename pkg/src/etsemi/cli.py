"""``etsemi`` command line: construct, classify, semireg, quotient, verify, corpus.

Exit codes: 0 pass, 1 usage or I/O error, 2 violation, 3 inconclusive (cap hit).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .constructions import build_lemma41, build_lemma42, verify_lemma41, verify_lemma42
from .corpus import FAIL, INCONCLUSIVE, PASS, load_graph, load_manifest, run_entry
from .errors import CapExceeded, HypothesisError, NormalityError, Violation
from .families import complete_bipartite, subdivided_double, subdivision, wreath
from .graph import Graph, bipartition
from .perm import GeneratedGroup, Permutation, default_cap
from .quotient import quotient_by
from .semireg import find_semiregular, part_preserving_certificate, semiregular_outcome
from .symmetry import automorphism_group, classify, is_edge_transitive

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def _verdict_exit(verdicts: list[str]) -> int:
    if FAIL in verdicts:
        return EXIT_VIOLATION
    if INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def make_report(command: str, inputs, verdicts: dict[str, str], result, counters=None,
                elapsed: float | None = None) -> dict:
    return {
        "tool": "etsemi",
        "version": __version__,
        "command": command,
        "input_digest": _digest(inputs),
        "verdicts": verdicts,
        "counters": counters or {},
        "result": result,
        "timing": {"seconds": round(elapsed, 6) if elapsed is not None else None},
    }


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def _emit(report: dict, args) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(json.dumps(report, sort_keys=True, indent=2))


def _golden(reports: list[dict], args) -> int | None:
    """Compare or record golden reports (timing masked). Returns an exit code on mismatch."""
    if not args.golden:
        return None
    path = Path(args.golden)
    lines = [json.dumps(strip_timing(r), sort_keys=True) for r in reports]
    if args.update_golden or not path.exists():
        path.write_text("\n".join(lines) + "\n")
        return None
    stored = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if stored != lines:
        print(f"golden mismatch against {path}", file=sys.stderr)
        return EXIT_VIOLATION
    return None


def _load_group(path: str | None, g: Graph) -> GeneratedGroup:
    if path is None:
        return automorphism_group(g)
    data = json.loads(Path(path).read_text())
    grp = GeneratedGroup.from_json(data)
    if grp.domain_size != g.n:
        raise ValueError(f"group acts on {grp.domain_size} points but the graph has {g.n} vertices")
    return grp


def _parse_perm(text: str, n: int) -> Permutation:
    text = text.strip()
    if text.startswith("["):
        return Permutation(json.loads(text))
    cycles = []
    for chunk in text.replace(")", "").split("("):
        if chunk.strip():
            cycles.append(tuple(int(x) for x in chunk.replace(",", " ").split()))
    return Permutation.from_cycles(n, *cycles)


def _load_perms(spec: str, n: int) -> list[Permutation]:
    """Generators from a JSON file (list of image lists or ``{generators: ...}``) or ``;``-separated cycles."""
    p = Path(spec)
    if p.exists():
        data = json.loads(p.read_text())
        gens = data["generators"] if isinstance(data, dict) else data
        return [Permutation(x) if isinstance(x, list) else _parse_perm(x, n) for x in gens]
    return [_parse_perm(s, n) for s in spec.split(";") if s.strip()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    fam, params = args.family, args.params
    labeling = None
    if fam == "wreath":
        g, lab = wreath(int(params[0]))
        labeling = {"vertex_of": [[list(k), v] for k, v in sorted(lab.vertex_of.items())]}
    elif fam in ("dd", "subdivision"):
        base = load_graph(args.base or params[0])
        if fam == "dd":
            g, lab = subdivided_double(base)
            labeling = {"edge_vertices": [[list(e), v] for e, v in sorted(lab.edge_vertices.items())],
                        "pair_vertices": [[list(k), v] for k, v in sorted(lab.pair_vertices.items())]}
        else:
            g = subdivision(base)
            labeling = {"edge_vertices": [[list(e), base.n + k] for k, e in enumerate(base.edges())]}
    elif fam == "complete-bipartite":
        g = complete_bipartite(int(params[0]), int(params[1]))
    elif fam == "lemma41-graph":
        inst = build_lemma41(args.n if args.n is not None else int(params[0]))
        g = inst.graph
        labeling = {"vertex_of": [[list(k), v] for k, v in sorted(inst.labeling.vertex_of.items())],
                    "group": inst.group.to_json()}
    elif fam == "lemma42-sigma":
        inst = build_lemma42(args.n if args.n is not None else int(params[0]))
        g = inst.sigma_big
        labels = inst.base_labels
        labeling = {
            "base_labels": list(labels),
            "edge_vertices": [[[labels[a], labels[b]], v] for (a, b), v in sorted(inst.labeling.edge_vertices.items())],
            "pair_vertices": [[[labels[a], i], v] for (a, i), v in sorted(inst.labeling.pair_vertices.items())],
            "group": inst.group.to_json(),
        }
    else:
        raise ValueError(f"unknown family {fam!r}")
    out = {"family": fam, **g.to_json()}
    if labeling is not None:
        out["labeling"] = labeling
    text = json.dumps(out, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    g = load_graph(args.graph)
    grp = _load_group(args.group, g)
    rep = classify(g, grp)
    report = make_report("classify", {"graph": g.to_json(), "group": grp.to_json()},
                         {"trichotomy": PASS}, rep.to_json(), {"group_order": grp.order()},
                         time.perf_counter() - t0)
    _emit(report, args)
    return _golden([report], args) or EXIT_OK


def cmd_semireg(args) -> int:
    t0 = time.perf_counter()
    g = load_graph(args.graph)
    grp = _load_group(args.group, g)
    inputs = {"graph": g.to_json(), "group": grp.to_json(), "parts": args.parts, "seed": args.seed}
    counters: dict = {"group_order": grp.order()}
    if args.parts:
        bp = bipartition(g)
        if bp is None:
            raise HypothesisError("graph is not bipartite")
        if args.group is None:
            cert, route = part_preserving_certificate(g, args.cap, args.seed)
            result = {"status": "found", "route": route, "certificate": cert.to_json()}
        else:
            res = find_semiregular(grp, [bp.part_a, bp.part_b], cap=args.cap, seed=args.seed)
            result = res.to_json()
            counters.update(scanned=res.scanned, exhaustive=res.exhaustive)
    elif g.valency() == 4 and is_edge_transitive(g, grp):
        out = semiregular_outcome(g, grp, args.cap, args.seed)
        result = out.to_json()
        counters.update(scanned=out.group_scan.scanned, exhaustive=out.group_scan.exhaustive)
        result["status"] = {"Refuted": "violation", "Inconclusive": "inconclusive"}.get(out.kind.value, "found")
    else:
        res = find_semiregular(grp, cap=args.cap, seed=args.seed)
        result = res.to_json()
        counters.update(scanned=res.scanned, exhaustive=res.exhaustive)
        if res.status == "none" and g.valency() == 3 and is_edge_transitive(g, grp):
            result["status"] = "violation"
    status = result["status"]
    verdict = {"found": PASS, "none": PASS, "violation": FAIL, "inconclusive": INCONCLUSIVE}[status]
    report = make_report("semireg", inputs, {"search": verdict}, result, counters, time.perf_counter() - t0)
    _emit(report, args)
    return _golden([report], args) or _verdict_exit([verdict])


def cmd_quotient(args) -> int:
    t0 = time.perf_counter()
    g = load_graph(args.graph)
    grp = _load_group(args.group, g)
    normal = GeneratedGroup(g.n, _load_perms(args.normal_gens, g.n))
    qr = quotient_by(g, grp, normal)
    result = {
        "quotient": qr.quotient.to_json(),
        "blocks": [list(b) for b in qr.blocks],
        "normal_order": normal.order(),
        "kernel_order": qr.kernel.order(),
        "induced_order": qr.induced.order(),
    }
    report = make_report("quotient", {"graph": g.to_json(), "group": grp.to_json(),
                                      "normal": normal.to_json()},
                         {"factorisation": PASS}, result, {"ambient_order": grp.order()},
                         time.perf_counter() - t0)
    _emit(report, args)
    return _golden([report], args) or EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    cap = args.cap if args.cap is not None else default_cap()
    if args.target == "lemma41":
        n = 3 if args.n is None else args.n
        rep = verify_lemma41(build_lemma41(n), cap)
    else:
        n = 2 if args.n is None else args.n
        rep = verify_lemma42(build_lemma42(n), cap)
    verdicts = {k: PASS if v else FAIL for k, v in rep.checks.items()}
    report = make_report(f"verify {args.target}", {"target": args.target, "n": n}, verdicts,
                         rep.to_json(), {"group_order": rep.data.get("order")}, time.perf_counter() - t0)
    _emit(report, args)
    return _golden([report], args) or _verdict_exit(list(verdicts.values()))


def _run_entry_json(entry_and_cap):
    entry, cap = entry_and_cap
    t0 = time.perf_counter()
    res = run_entry(entry, cap)
    return res.to_json(), time.perf_counter() - t0


def cmd_corpus(args) -> int:
    entries = load_manifest(args.manifest)
    jobs = max(1, args.jobs)
    work = [(e, args.cap) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_entry_json, work))
    else:
        results = [_run_entry_json(w) for w in work]
    reports = []
    for (res, elapsed), entry in zip(results, entries):
        reports.append(make_report("corpus-entry", entry.to_json(), {entry.name: res["verdict"]},
                                   res["detail"], res["counters"], elapsed))
    verdicts = [r["verdict"] for r, _ in results]
    summary = make_report("corpus", [e.to_json() for e in entries],
                          {e.name: v for e, v in zip(entries, verdicts)},
                          {"total": len(verdicts), "pass": verdicts.count(PASS),
                           "fail": verdicts.count(FAIL), "inconclusive": verdicts.count(INCONCLUSIVE)},
                          None, sum(t for _, t in results))
    for r in reports + [summary]:
        if args.json:
            print(json.dumps(r, sort_keys=True))
        else:
            name, verdict = next(iter(r["verdicts"].items())) if r is not summary else ("total", "")
            if r is summary:
                print(f"{summary['result']['pass']}/{summary['result']['total']} PASS, "
                      f"{summary['result']['fail']} FAIL, {summary['result']['inconclusive']} INCONCLUSIVE")
            else:
                print(f"{verdict:<13} {name}")
    return _golden(reports + [summary], args) or _verdict_exit(verdicts)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=None, help="enumeration cap (default: ETSEMI_CAP or 10^6)")
    common.add_argument("--json", action="store_true", help="one compact JSON object per line")
    common.add_argument("--golden", help="compare reports (timing masked) with this file; records it if absent")
    common.add_argument("--update-golden", action="store_true")

    p = argparse.ArgumentParser(prog="etsemi", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"etsemi {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="emit a family graph as JSON")
    c.add_argument("family", choices=["wreath", "dd", "subdivision", "complete-bipartite",
                                      "lemma41-graph", "lemma42-sigma"])
    c.add_argument("params", nargs="*")
    c.add_argument("--base", help="base graph (file or builtin name) for dd/subdivision")
    c.add_argument("--n", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("classify", parents=[common], help="edge-transitivity type of a graph and group")
    c.add_argument("--graph", required=True)
    c.add_argument("--group")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("semireg", parents=[common], help="search for a semiregular automorphism")
    c.add_argument("--graph", required=True)
    c.add_argument("--group")
    c.add_argument("--parts", action="store_true", help="require the element to preserve both parts")
    c.set_defaults(func=cmd_semireg)

    c = sub.add_parser("quotient", parents=[common], help="quotient by a normal subgroup")
    c.add_argument("--graph", required=True)
    c.add_argument("--group")
    c.add_argument("--normal-gens", required=True,
                   help="JSON file of generators, or cycles separated by ';' e.g. '(0 1)(2 3);(4 5)'")
    c.set_defaults(func=cmd_quotient)

    c = sub.add_parser("verify", parents=[common], help="check an explicit construction exhaustively")
    c.add_argument("target", choices=["lemma41", "lemma42"])
    c.add_argument("--n", type=int)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("corpus", parents=[common], help="run a regression manifest")
    c.add_argument("manifest", help="manifest path or packaged name (cubic.manifest, quartic.manifest, ...)")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    saved_cap = os.environ.get("ETSEMI_CAP")
    if args.cap is not None:
        os.environ["ETSEMI_CAP"] = str(args.cap)
    try:
        return args.func(args)
    except Violation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except CapExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (OSError, ValueError, KeyError, json.JSONDecodeError, NormalityError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved_cap is None:
            os.environ.pop("ETSEMI_CAP", None)
        else:
            os.environ["ETSEMI_CAP"] = saved_cap


if __name__ == "__main__":
    sys.exit(main())
