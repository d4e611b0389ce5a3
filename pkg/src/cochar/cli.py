"""Command-line interface: ``cochar <command> [options]``.

Exit status: 0 on success, 1 when a computation fails a checked
assertion (including an INCONCLUSIVE verdict on a built-in embedding or a
failed table check), 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .rootdata import (
    build_root_system,
    extended_diagram,
    good_primes,
    parse_type,
    root_system_to_json,
    subsystem_to_json,
)

FORMATS = ("json", "tsv", "pretty")

_LABEL_RE = re.compile(r"^[A-Za-z0-9~+()'\s\\{}_$Ã]{1,64}$")
_EMBEDDING_RE = re.compile(r"^[A-G0-9x]+/[A-Za-z0-9+~\-]+$")


def load_schema(command: str) -> dict:
    """Shipped JSON schema for a command's ``--format json`` output."""
    from importlib.resources import files

    return json.loads(files("cochar").joinpath("schemas", f"{command}.schema.json").read_text())


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    system: Optional[str] = None
    embedding: Optional[str] = None
    orbit: Optional[str] = None
    format: str = "pretty"
    cache_dir: Optional[str] = None
    seed: int = 0
    jobs: int = 1
    maximal: bool = False
    depth: Optional[int] = None
    action: Optional[str] = None

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.system is not None:
            try:
                parse_type(self.system)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        if self.embedding is not None and not _EMBEDDING_RE.match(self.embedding):
            raise UsageError(f"malformed embedding id {self.embedding!r}")
        if self.orbit is not None and not _LABEL_RE.match(self.orbit):
            raise UsageError(f"malformed orbit label {self.orbit!r}")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.depth is not None and self.depth < 0:
            raise UsageError("--depth must be non-negative")


def _fmt_vec(v) -> str:
    return ",".join(str(x) for x in v)


def _table(headers, rows) -> str:
    cols = [list(map(str, c)) for c in zip(headers, *rows)] if rows else [[h] for h in headers]
    widths = [max(len(x) for x in c) for c in cols]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths)))
    return "\n".join(lines)


def _tsv(headers, rows) -> str:
    out = ["\t".join(headers)]
    out += ["\t".join(str(x) for x in r) for r in rows]
    return "\n".join(out)


def _emit(cfg: RunConfig, doc, headers, rows, out) -> None:
    if cfg.format == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif cfg.format == "tsv":
        out.write(_tsv(headers, rows) + "\n")
    else:
        out.write(_table(headers, rows) + "\n")


# --------------------------------------------------------------- commands
def cmd_roots(cfg: RunConfig, out) -> int:
    sysr = build_root_system(cfg.system)
    bad = sorted(good_primes(sysr).bad)
    doc = root_system_to_json(sysr)
    doc["bad_primes"] = bad
    ext = extended_diagram(sysr)
    doc["extended_diagram"] = {
        "nodes": [list(n) for n in ext.nodes],
        "marks": list(ext.marks),
        "edges": [list(e) for e in ext.edges()],
    }
    headers = ["index", "root", "height", "norm"]
    rows = [(k, _fmt_vec(r), sum(r), sysr.norm(r)) for k, r in enumerate(sysr.roots)]
    if cfg.format == "pretty":
        out.write(
            f"{sysr.name}: {len(sysr.roots)} roots, highest "
            f"{'; '.join(_fmt_vec(h) for h in sysr.highest_roots)}, bad primes {{{', '.join(map(str, bad))}}}\n"
        )
    _emit(cfg, doc, headers, rows, out)
    return 0


def cmd_orbits(cfg: RunConfig, out) -> int:
    from .orbits import get_catalog, orbit_to_json

    cat = get_catalog(cfg.system, seed=cfg.seed, jobs=cfg.jobs, directory=cfg.cache_dir)
    orbits = list(cat.orbits)
    if cfg.orbit is not None:
        orbits = [cat.find(cfg.orbit)]
    doc = {
        "artifact_version": __version__,
        "system": cat.system.name,
        "seed": cat.seed,
        "orbits": [orbit_to_json(o) for o in orbits],
        "metadata": {"source": cat.source},
    }
    headers = ["label", "diagram", "dim_orbit", "centralizer_dim", "reductive_rank", "distinguished"]
    rows = [
        (o.label, _fmt_vec(o.diagram), o.dim_orbit, o.centralizer_dim, o.reductive_rank, "yes" if o.distinguished else "no")
        for o in orbits
    ]
    _emit(cfg, doc, headers, rows, out)
    return 0


def cmd_subsystems(cfg: RunConfig, out) -> int:
    from .subgroups import borel_de_siebenthal, maximal_subsystems

    sysr = build_root_system(cfg.system)
    if cfg.maximal:
        entries = [
            {"spec": s, "depth": 1, "parent": sysr.name, "levi": False, "maximal": True, "deriziotis": None}
            for s in maximal_subsystems(sysr)
        ]
        from .subgroups import deriziotis_check

        for e in entries:
            e["deriziotis"] = deriziotis_check(e["spec"])
    else:
        entries = [
            {
                "spec": n.spec,
                "depth": n.depth,
                "parent": n.parent,
                "levi": n.levi,
                "maximal": n.maximal,
                "deriziotis": n.deriziotis,
            }
            for n in borel_de_siebenthal(sysr, depth=cfg.depth)
        ]
    docs = []
    for e in entries:
        d = subsystem_to_json(e["spec"])
        d.update(
            depth=e["depth"], parent=e["parent"], levi=e["levi"], maximal=e["maximal"], deriziotis=e["deriziotis"]
        )
        docs.append(d)
    doc = {"artifact_version": __version__, "system": sysr.name, "subsystems": docs}
    headers = ["name", "kind", "depth", "parent", "roots", "maximal", "deriziotis"]

    def flag(x):
        return "-" if x is None else ("yes" if x else "no")

    rows = [
        (
            e["spec"].name,
            "levi" if e["levi"] else ("whole" if e["depth"] == 0 else "max-rank"),
            e["depth"],
            e["parent"] or "-",
            len(e["spec"].roots),
            flag(e["maximal"]),
            flag(e["deriziotis"]),
        )
        for e in entries
    ]
    _emit(cfg, doc, headers, rows, out)
    return 0


def cmd_dagger(cfg: RunConfig, out) -> int:
    from .dagger import INCONCLUSIVE, TSV_COLUMNS, run_dagger
    from .orbits import get_catalog
    from .subgroups import named_embedding

    if cfg.embedding is None:
        raise UsageError("dagger needs --embedding")
    try:
        emb = named_embedding(cfg.embedding)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    if cfg.orbit is not None:
        try:
            get_catalog(emb.sub_alg, seed=cfg.seed, directory=cfg.cache_dir).find(cfg.orbit)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from exc
    get_catalog(emb.ambient, seed=cfg.seed, jobs=cfg.jobs, directory=cfg.cache_dir)
    reports = run_dagger(emb, orbit=cfg.orbit, seed=cfg.seed, jobs=cfg.jobs)
    doc = {
        "artifact_version": __version__,
        "embedding": emb.describe(),
        "reports": [r.to_json() for r in reports],
    }
    rows = []
    for r in reports:
        d = r.to_json()
        row = []
        for c in TSV_COLUMNS:
            v = d[c]
            if isinstance(v, list):
                v = _fmt_vec(v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            row.append(v)
        rows.append(row)
    _emit(cfg, doc, list(TSV_COLUMNS), rows, out)
    bad = [r for r in reports if r.verdict == INCONCLUSIVE or not r.forward_ok or not r.reduction_shadow_ok]
    return 1 if bad else 0


def cmd_table1(cfg: RunConfig, out) -> int:
    from .dagger import table1_checks

    rows_doc = table1_checks(seed=cfg.seed)
    doc = {"artifact_version": __version__, "rows": rows_doc}
    headers = ["G2", "F4", "F4_catalog_label", "F4_diagram", "annotation", "status", "G2_side"]
    rows = []
    for r in rows_doc:
        notes = [f"distinguished: {'yes' if r['F4_distinguished'] else 'no'}"]
        if "reductive_rank_is_1" in r["checks"]:
            notes.append(f"reductive rank {r['F4_reductive_rank']}")
        status = ("verified" if r["ok"] else "FAILED") if r["checks"] else "no check"
        rows.append((r["G2"], r["F4"], r["F4_catalog_label"], _fmt_vec(r["F4_diagram"]), "; ".join(notes), status, r["G2_side"]))
    _emit(cfg, doc, headers, rows, out)
    return 0 if all(r["ok"] for r in rows_doc) else 1


def cmd_cache(cfg: RunConfig, out) -> int:
    from .orbits import cache_dir, clear_cache, inspect_cache

    if cfg.action == "clear":
        removed = clear_cache(cfg.cache_dir)
        doc = {"directory": str(cache_dir(cfg.cache_dir)), "removed": removed}
        rows = [(p,) for p in removed]
        _emit(cfg, doc, ["removed"], rows, out)
        return 0
    entries = inspect_cache(cfg.cache_dir)
    doc = {"directory": str(cache_dir(cfg.cache_dir)), "entries": entries}
    headers = ["system", "artifact_version", "seed", "orbits", "path"]
    rows = [tuple(e.get(h, "") for h in headers) for e in entries]
    _emit(cfg, doc, headers, rows, out)
    return 0


COMMANDS = {
    "roots": cmd_roots,
    "orbits": cmd_orbits,
    "subsystems": cmd_subsystems,
    "dagger": cmd_dagger,
    "table1": cmd_table1,
    "cache": cmd_cache,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="pretty")
    common.add_argument("--cache-dir", default=None, help="catalog cache directory (default: $COCHAR_CACHE_DIR)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="cochar", description="Nilpotent orbits and associated cocharacters.")
    p.add_argument("--version", action="version", version=f"cochar {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", parents=[common], help="roots, highest roots, bad primes")
    r.add_argument("system")

    o = sub.add_parser("orbits", parents=[common], help="nilpotent-orbit catalog")
    o.add_argument("system")
    o.add_argument("--orbit", "--label", dest="orbit", default=None)

    s = sub.add_parser("subsystems", parents=[common], help="Borel-de Siebenthal lattice")
    s.add_argument("system")
    s.add_argument("--maximal", action="store_true")
    s.add_argument("--depth", type=int, default=None)

    d = sub.add_parser("dagger", parents=[common], help="compare H- and G-associated cocharacters")
    d.add_argument("--embedding", required=True)
    d.add_argument("--orbit", "--label", dest="orbit", default=None)

    sub.add_parser("table1", parents=[common], help="stored G2 < F4 fusion table with F4-side checks")

    c = sub.add_parser("cache", parents=[common], help="inspect or clear the catalog cache")
    c.add_argument("action", choices=("inspect", "clear"), nargs="?", default="inspect")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        system=getattr(args, "system", None),
        embedding=getattr(args, "embedding", None),
        orbit=getattr(args, "orbit", None),
        format=args.format,
        cache_dir=args.cache_dir,
        seed=args.seed,
        jobs=args.jobs,
        maximal=getattr(args, "maximal", False),
        depth=getattr(args, "depth", None),
        action=getattr(args, "action", None),
    )
    saved = os.environ.get("COCHAR_CACHE_DIR")
    try:
        cfg.validate()
        if cfg.cache_dir:
            # also reaches worker processes and library-level catalog lookups
            os.environ["COCHAR_CACHE_DIR"] = cfg.cache_dir
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        print(f"cochar: error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"cochar: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except (AssertionError, RuntimeError, ValueError, LookupError) as exc:
        print(f"cochar: failure: {exc}", file=sys.stderr)
        return 1
    finally:
        if saved is None:
            os.environ.pop("COCHAR_CACHE_DIR", None)
        else:
            os.environ["COCHAR_CACHE_DIR"] = saved


if __name__ == "__main__":
    sys.exit(main())
