"""Command-line front end: ``geoinv generate | eval | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import GeoinvError
from .harness import verify_all
from .invariants import expand_products, generate
from .moments import central_moments, random_cloud, read_points
from .multiindex import parse_parts, product_basis
from .poly import evaluate, parse, parse_dimension, serialize


class UsageError(Exception):
    pass


@dataclass
class Config:
    dimension: int | None = None
    parts: tuple = ()
    kind: str = "rotation"
    planes: str = "fan"
    exclude: list = field(default_factory=list)
    points: str | None = None
    invariants: str | None = None
    out: str | None = None
    trials: int = 100
    tol: float | None = None
    seed: int = 0
    orbits: bool = False


def parse_exclude(text: str) -> list[tuple[tuple[int, int], ...]]:
    """``"2:1,5:2;3:2,3:2"`` -> one factor list per product spec."""
    specs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            specs.append(parse_parts(chunk))
    if not specs:
        raise UsageError(f"no product specification in {text!r}")
    return specs


def _config(args) -> Config:
    cfg = Config(seed=args.seed)
    for name in ("dim", "parts", "kind", "planes", "points", "invariants", "out", "trials", "tol", "orbits"):
        if hasattr(args, name):
            val = getattr(args, name)
            if name == "dim":
                cfg.dimension = val
            elif name == "parts":
                try:
                    cfg.parts = parse_parts(val)
                except ValueError as exc:
                    raise UsageError(f"--parts: {exc}") from None
            else:
                setattr(cfg, name, val)
    if getattr(args, "exclude_products", None):
        try:
            cfg.exclude = parse_exclude(args.exclude_products)
        except ValueError as exc:
            raise UsageError(f"--exclude-products: {exc}") from None
    if cfg.dimension is not None and cfg.dimension < 2:
        raise UsageError(f"--dim must be >= 2, got {cfg.dimension}")
    if cfg.trials is not None and cfg.trials < 1:
        raise UsageError("--trials must be positive")
    return cfg


def _excluded_rows(cfg: Config, desc):
    if not cfg.exclude:
        return []
    if cfg.kind == "scale":
        raise UsageError("--exclude-products applies to rotation and affine classes")
    rows = []
    for spec in cfg.exclude:
        factor_sets = []
        for part in spec:
            sub = product_basis([part], cfg.dimension)
            invs, _ = generate(sub, cfg.kind, cfg.planes)
            factor_sets.append(invs)
        rows.extend(expand_products(factor_sets, desc))
    return rows


def cmd_generate(cfg: Config, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if cfg.dimension is None or not cfg.parts:
        raise UsageError("generate needs --dim and --parts")
    desc = product_basis(cfg.parts, cfg.dimension)
    known = _excluded_rows(cfg, desc)
    invs, rep = generate(desc, cfg.kind, cfg.planes, known, orbits=cfg.orbits)
    data = serialize(invs, cfg.dimension)
    summary = [
        f"# seed={cfg.seed}",
        f"# class={cfg.kind} dim={cfg.dimension} parts={desc.label()} planes={rep.planes}",
        f"# basis={rep.basis_size}",
    ]
    if rep.selected is not None:
        summary.append(f"# selected={rep.selected} d={rep.d}")
    if rep.system_shape is not None:
        summary.append(f"# system={rep.system_shape[0]}x{rep.system_shape[1]} "
                       f"pruned={rep.pruned_shape[0]}x{rep.pruned_shape[1]}")
    if rep.known_rows:
        summary.append(f"# excluded_products={rep.known_rows}")
    summary.append(f"# kernel={rep.kernel_dim} invariants={len(invs)}")
    summary.extend(f"# note: {n}" for n in rep.notes)
    if cfg.out:
        Path(cfg.out).write_bytes(data)
        print("\n".join(summary), file=stdout)
    else:
        print("\n".join(summary), file=sys.stderr)
        stdout.write(data.decode("utf-8"))
    return 0


def _load_invariants(cfg: Config):
    if not cfg.invariants:
        raise UsageError("--invariants is required")
    data = Path(cfg.invariants).read_bytes()
    dim = parse_dimension(data)
    if cfg.dimension is not None and cfg.dimension != dim:
        raise UsageError(f"--dim {cfg.dimension} but {cfg.invariants} is {dim}D")
    return dim, parse(data)


def cmd_eval(cfg: Config, stdout=None) -> int:
    stdout = stdout or sys.stdout
    dim, invs = _load_invariants(cfg)
    if not cfg.points:
        raise UsageError("eval needs --points")
    cloud = read_points(cfg.points, dim)
    top = max((inv.max_order() for inv in invs), default=0)
    table = central_moments(cloud, top)
    print(f"# seed={cfg.seed}", file=stdout)
    for i, inv in enumerate(invs):
        print(f"{inv.label()}#{i} {evaluate(inv, table)!r}", file=stdout)
    return 0


def cmd_verify(cfg: Config, stdout=None) -> int:
    stdout = stdout or sys.stdout
    dim, invs = _load_invariants(cfg)
    if cfg.points:
        cloud = read_points(cfg.points, dim)
    else:
        cloud = random_cloud(dim, 500, cfg.seed)
    report = verify_all(invs, cloud, cfg.trials, cfg.tol, cfg.seed)
    print(report.to_text(), file=stdout)
    print(f"# {'PASS' if report.passed else 'FAIL'} {len(report.results)} checks", file=stdout)
    if cfg.out:
        Path(cfg.out).write_text(report.to_json() + "\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoinv", description="Moment invariants in n dimensions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--dim", type=int)

    g = sub.add_parser("generate", help="generate invariants and write an invariant file")
    common(g)
    g.add_argument("--parts", required=True, help="descriptor as p:k[,p:k...]")
    g.add_argument("--class", dest="kind", choices=("scale", "rotation", "affine"), default="rotation")
    g.add_argument("--planes", choices=("fan", "all"), default="fan")
    g.add_argument("--exclude-products", dest="exclude_products",
                   help="product specs p:k[,p:k...][;...]; their invariant products are removed")
    g.add_argument("--orbits", action="store_true",
                   help="solve affine systems with coordinate-permutation orbit reduction")
    g.add_argument("--out")

    e = sub.add_parser("eval", help="evaluate invariants on a point cloud")
    common(e)
    e.add_argument("--invariants", required=True)
    e.add_argument("--points", required=True)

    v = sub.add_parser("verify", help="check invariance under random transforms")
    common(v)
    v.add_argument("--invariants", required=True)
    v.add_argument("--points")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--tol", type=float)
    v.add_argument("--out", help="write the machine-readable report here")
    return parser


COMMANDS = {"generate": cmd_generate, "eval": cmd_eval, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, GeoinvError, ValueError, OSError) as exc:
        print(f"geoinv {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
