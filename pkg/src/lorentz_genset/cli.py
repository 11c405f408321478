"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 iteration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .chart import bisector_halfspace
from .dirichlet import SCHEMA, NonTermination, compute_dirichlet_domain
from .genset import (
    FOUR_GENERATORS,
    catalog_coset_names,
    reduce_face_pairings,
    verify_generation,
    verify_reference_relations,
)
from .isometry import InvalidIsometry, check_matrix, inverse, reference_catalog, CATALOG_NAMES, _CATALOG_ROWS
from .lattice_enum import assemble_isometries, enumerate_unit_vectors, strata_counts
from .oracle import MAX_EXHAUSTIVE_T, exhaustive_small_assembly, naive_unit_vectors
from .polytope import polytope_from_json
from .quadform import anisotropy_certificate_mod8
from .stabilizer import build_stabilizer

log = logging.getLogger("lorentz_genset")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3

COMMANDS = ("enumerate", "domain", "generators", "verify-paper", "export")


@dataclass
class RunConfig:
    command: str
    n: int = 7
    bound_T: int = 21
    output_path: Optional[Path] = None
    format: str = "json"
    self_check: bool = False
    max_doublings: int = 8
    bfs_radius: int = 12
    threads: Optional[int] = None
    input_path: Optional[Path] = None
    which: str = "domain"  # domain | rotation_domain | voronoi


class ConfigError(ValueError):
    pass


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _validate(cfg: RunConfig) -> None:
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.n < 1 or cfg.bound_T < 1 or cfg.max_doublings < 0 or cfg.bfs_radius < 1:
        raise ConfigError("n, bound and bfs radius must be positive")
    if cfg.threads is not None and cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    if cfg.command in ("domain", "generators") and not anisotropy_certificate_mod8(cfg.n):
        raise ConfigError(f"{cfg.command} needs n = 7 (mod 8) so the quotient is known to be compact")
    if cfg.command == "domain" and cfg.bound_T < 2:
        raise ConfigError("domain needs bound >= 2")
    if cfg.format not in ("json", "obj"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    if cfg.command == "export" and cfg.input_path is None:
        raise ConfigError("export needs --input")


def _self_check(cfg: RunConfig) -> bool:
    ok = naive_unit_vectors(cfg.n, cfg.bound_T) == list(enumerate_unit_vectors(cfg.n, cfg.bound_T).vectors)
    (log.info if ok else log.error)("self-check unit vectors (n=%d, T=%d): %s", cfg.n, cfg.bound_T, "ok" if ok else "MISMATCH")
    if cfg.bound_T <= MAX_EXHAUSTIVE_T:
        same = exhaustive_small_assembly(cfg.n, cfg.bound_T) == assemble_isometries(cfg.n, cfg.bound_T, threads=1)
        (log.info if same else log.error)("self-check assembly (n=%d, T=%d): %s", cfg.n, cfg.bound_T, "ok" if same else "MISMATCH")
        ok = ok and same
    return ok


def _catalog_names(n: int) -> dict:
    if n != 7:
        return {}
    return {g: name for name, g in reference_catalog().items()}


def cmd_enumerate(cfg: RunConfig) -> int:
    if not anisotropy_certificate_mod8(cfg.n):
        log.warning("Q_%d is not certified anisotropic; the enumeration is still exact", cfg.n)
    els = assemble_isometries(cfg.n, cfg.bound_T, threads=cfg.threads)
    out = {
        "schema": SCHEMA,
        "n": cfg.n,
        "bound_T": cfg.bound_T,
        "count": len(els),
        "strata": {str(k): v for k, v in strata_counts(els).items()},
        "elements": [g.to_json()["entries"] for g in els],
    }
    _emit(_dump(out), cfg.output_path)
    return EXIT_OK


def cmd_domain(cfg: RunConfig) -> int:
    res = compute_dirichlet_domain(cfg.n, cfg.bound_T, cfg.max_doublings, threads=cfg.threads)
    if cfg.format == "obj":
        poly = getattr(res, cfg.which)
        _emit(poly.to_obj(), cfg.output_path)
    else:
        _emit(_dump(res.to_json(_catalog_names(cfg.n))), cfg.output_path)
    return EXIT_OK if res.certified else EXIT_FAIL


def cmd_generators(cfg: RunConfig) -> int:
    res = compute_dirichlet_domain(cfg.n, cfg.bound_T, cfg.max_doublings, threads=cfg.threads)
    stab = build_stabilizer(cfg.n)
    classes = reduce_face_pairings(res.face_pairings, stab)
    cat_cosets = catalog_coset_names(stab) if cfg.n == 7 else {}
    if cfg.n == 7:
        cat = reference_catalog()
        gens = {k: cat[k] for k in FOUR_GENERATORS}
    else:
        gens = {"S": stab.gen_s, "R": stab.gen_r}
        for i, c in enumerate(classes):
            gens[f"g{i}"] = c.representative
    targets = assemble_isometries(cfg.n, cfg.bound_T, threads=cfg.threads)
    report = verify_generation(targets, gens, cfg.bfs_radius, cosh_cap=2 * cfg.bound_T)
    out = {
        "schema": SCHEMA,
        "n": cfg.n,
        "bound_T": res.bound_T,
        "representatives": [
            {
                "a44": c.representative.a44,
                "entries": c.representative.to_json()["entries"],
                "canonical": c.canonical.to_json()["entries"],
                "inverse_class": c.inverse_of,
                "coset_size": len(c.members),
                "facet_supported": bisector_halfspace(c.representative).reduced()
                in {res.voronoi.defining[h].reduced() for h in res.voronoi.support_ids},
                **({"catalog": cat_cosets.get(c.canonical, [])} if cfg.n == 7 else {}),
            }
            for c in classes
        ],
        "generators": {k: g.to_json()["entries"] for k, g in gens.items()},
        "generation": report.to_json(),
    }
    _emit(_dump(out), cfg.output_path)
    return EXIT_OK if report.all_reached else EXIT_FAIL


def reference_report() -> dict:
    """Catalog validation, printed relations, inverse pairs and the divisibility identities."""
    catalog = {}
    for name in CATALOG_NAMES:
        try:
            check_matrix(_CATALOG_ROWS[name], 7)
            catalog[name] = {"valid": True}
        except InvalidIsometry as exc:
            catalog[name] = {"valid": False, "error": str(exc)}
    cat = reference_catalog() if all(v["valid"] for v in catalog.values()) else {}
    relations = {r.name: r.to_json() for r in verify_reference_relations()} if cat else {}
    inverses = {}
    facts = {}
    for name, g in cat.items():
        if name + "^-1" in cat:
            inverses[name] = inverse(g) == cat[name + "^-1"]
        m, a44 = g.entries, g.a44
        facts[name] = {
            "right_column_divisible": all(m[i][3] % 7 == 0 for i in range(3)),
            "a44_mod_7": a44 % 7 in (1, 6),
            "bottom_row_identity": 7 * (m[3][0] ** 2 + m[3][1] ** 2 + m[3][2] ** 2) == a44 * a44 - 1,
        }
    passed = (
        bool(cat)
        and all(r["pass"] for r in relations.values())
        and all(inverses.values())
        and all(all(f.values()) for f in facts.values())
    )
    return {
        "schema": SCHEMA,
        "catalog": catalog,
        "relations": relations,
        "relations_passed": f"{sum(r['pass'] for r in relations.values())}/{len(relations)}",
        "inverses": inverses,
        "facts": facts,
        "passed": passed,
    }


def cmd_verify_reference(cfg: RunConfig) -> int:
    rep = reference_report()
    _emit(_dump(rep), cfg.output_path)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_export(cfg: RunConfig) -> int:
    data = json.loads(Path(cfg.input_path).read_text(encoding="utf-8"))  # type: ignore[arg-type]
    poly = polytope_from_json(data[cfg.which])
    _emit(poly.to_obj(), cfg.output_path)
    return EXIT_OK


HANDLERS = {
    "enumerate": cmd_enumerate,
    "domain": cmd_domain,
    "generators": cmd_generators,
    "verify-paper": cmd_verify_reference,
    "export": cmd_export,
}


def run(cfg: RunConfig) -> int:
    try:
        _validate(cfg)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    if cfg.self_check and not _self_check(cfg):
        return EXIT_FAIL
    try:
        return HANDLERS[cfg.command](cfg)
    except NonTermination as exc:
        log.error("%s", exc)
        return EXIT_CAP


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=7, help="form parameter in Q_n (default 7)")
    common.add_argument("--bound", type=int, default=21, help="bound T on a44 (default 21)")
    common.add_argument("-o", "--output", type=Path, help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "obj"), default="json")
    common.add_argument("--which", choices=("domain", "rotation_domain", "voronoi"), default="domain",
                        help="polytope to write as OBJ")
    common.add_argument("--self-check", action="store_true", help="compare against brute-force oracles first")
    common.add_argument("--max-doublings", type=int, default=8)
    common.add_argument("--bfs-radius", type=int, default=12)
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="lorentz-genset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "export":
            p.add_argument("--input", type=Path, required=True, help="DomainResult JSON from `domain`")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        bound_T=args.bound,
        output_path=args.output,
        format=args.format,
        self_check=args.self_check,
        max_doublings=args.max_doublings,
        bfs_radius=args.bfs_radius,
        threads=args.threads,
        input_path=getattr(args, "input", None),
        which=args.which,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
