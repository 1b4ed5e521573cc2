"""Walk through the packaged corpus and show which kind of certificate each graph gets."""
from etsemi.corpus import load_manifest, run_entry

for manifest in ("cubic.manifest", "quartic.manifest", "bipartite.manifest", "sharpness.manifest"):
    print(f"== {manifest}")
    for entry in load_manifest(manifest):
        res = run_entry(entry)
        d = res.detail
        what = d.get("outcome") or d.get("route") or d.get("status") or ""
        cert = d.get("certificate") or d.get("aut_certificate") or {}
        length = cert.get("cycle_length", "-") if isinstance(cert, dict) else "-"
        print(f"  {res.verdict:<12} {entry.name:<16} |G|={res.counters.get('group_order', '?'):<8} "
              f"{what:<22} cycle length {length}")
