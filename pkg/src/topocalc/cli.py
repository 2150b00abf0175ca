"""Command-line front end.

Every subcommand reads files (``-`` for stdin), writes to stdout and is
deterministic: identical inputs and flags give identical bytes.
Exit status: 0 success, 1 invalid input, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import builders, homology, morse, persistence, pi1
from . import io as tio
from .complex import boundary_matrices
from .errors import TopologyError
from .spaces import from_facets

RIPS_HELP = """Vietoris-Rips filtration from a point cloud (or a distance matrix).

Scale convention: a simplex enters at its DIAMETER, the largest pairwise
distance among its vertices.  Edges longer than --max-scale are dropped.
Output is a filtration in simplex-list format, ready for `persistence`."""

CECH_HELP = """Cech filtration from a point cloud in dimension <= 3.

Scale convention: a simplex enters at the RADIUS of the minimal ball
enclosing its vertices, i.e. the smallest a at which balls of radius a
around the vertices share a point.  Cech at radius a is contained in
Rips at diameter 2a.  Output is a simplex-list filtration."""

ALPHA_HELP = """2-D alpha filtration over the Delaunay triangulation.

Values are radii: triangles at their circumradius, Gabriel edges at half
their length, other edges at the smallest incident triangle value."""


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    coeff: str = "z"
    max_dim: int = 2
    max_scale: float = math.inf
    fmt: str = "json"
    seed: int = 0
    flags: dict = field(default_factory=dict)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _labels(symbols):
    return symbols.label if symbols is not None else None


def _cells_json(cells, symbols):
    return [symbols.names(c) if symbols else list(c) for c in cells]


# --------------------------------------------------------------------------
# subcommand handlers: each returns the output document as a string

def cmd_homology(cfg: RunConfig) -> str:
    parsed = tio.read_simplex_list(cfg.inputs[0])
    if cfg.coeff == "z":
        summary = homology.homology_z(parsed.complex)
        doc = summary.to_json()
        if cfg.fmt == "text":
            return "".join(f"H{k} = {g}\n" for k, g in enumerate(summary.groups))
    else:
        betti = homology.homology_gf2(parsed.complex)
        doc = {"dims": [{"k": k, "betti": b, "torsion": []} for k, b in enumerate(betti)],
               "euler": sum((-1) ** k * b for k, b in enumerate(betti))}
        if cfg.fmt == "text":
            return "".join(f"H{k} = {'(Z2)^' + str(b) if b else '0'}\n"
                           for k, b in enumerate(betti))
    return _dump(doc)


def cmd_euler(cfg: RunConfig) -> str:
    parsed = tio.read_simplex_list(cfg.inputs[0])
    view = boundary_matrices(parsed.complex)
    by_counts, by_betti = homology.euler_poincare(view)
    doc = {"counts": view.counts(), "euler_counts": by_counts, "euler_betti": by_betti,
           "equal": by_counts == by_betti}
    if cfg.fmt == "text":
        return (f"counts: {' '.join(map(str, doc['counts']))}\n"
                f"euler from counts: {by_counts}\neuler from betti: {by_betti}\n")
    return _dump(doc)


def cmd_cohomology(cfg: RunConfig) -> str:
    parsed = tio.read_simplex_list(cfg.inputs[0])
    cx, sym = parsed.complex, parsed.symbols
    view = boundary_matrices(cx)
    bases = [homology.cohomology_gf2(view, k) for k in range(cx.dim + 1)]
    dims = [{"k": b.dim, "betti": b.betti,
             "representatives": [_cells_json(r.support(cx), sym) for r in b.representatives]}
            for b in bases]
    cups = []
    for p in range(1, cx.dim + 1):
        for q in range(p, cx.dim + 1 - p):
            for i, phi in enumerate(bases[p].representatives):
                for j, psi in enumerate(bases[q].representatives):
                    prod = homology.cup_product_gf2(cx, phi, psi)
                    nonzero = bool(prod) and not homology.is_coboundary(view, prod)
                    cups.append({"p": p, "q": q, "i": i, "j": j, "nonzero": nonzero})
    doc = {"coeff": "gf2", "dims": dims, "cup": cups}
    if cfg.fmt == "text":
        lines = [f"H^{d['k']}: rank {d['betti']}" for d in dims]
        lines += [f"cup H^{c['p']}[{c['i']}] x H^{c['q']}[{c['j']}]: "
                  f"{'nonzero' if c['nonzero'] else 'zero'}" for c in cups]
        return "\n".join(lines) + "\n"
    return _dump(doc)


def _read_filtration(path):
    parsed = tio.read_simplex_list(path)
    return parsed.filtration(), parsed.symbols


def _emit_diagram(d, cfg: RunConfig, symbols=None) -> str:
    return persistence.render_diagram(d, cfg.fmt, include_zero=not cfg.flags.get("hide_zero"),
                                      labels=_labels(symbols))


def cmd_persistence(cfg: RunConfig) -> str:
    f, sym = _read_filtration(cfg.inputs[0] if cfg.inputs else "-")
    return _emit_diagram(persistence.compute_persistence(f), cfg, sym)


def _point_input(cfg: RunConfig):
    skip = cfg.flags.get("skip_header", False)
    if cfg.flags.get("distance_matrix"):
        return tio.read_distance_matrix(cfg.inputs[0], skip)
    return builders.pairwise_distances(tio.read_point_cloud(cfg.inputs[0], skip))


def cmd_rips(cfg: RunConfig) -> str:
    f = builders.rips_filtration(_point_input(cfg), cfg.max_dim, cfg.max_scale)
    return tio.format_filtration(f)


def cmd_cech(cfg: RunConfig) -> str:
    pts = tio.read_point_cloud(cfg.inputs[0], cfg.flags.get("skip_header", False))
    return tio.format_filtration(builders.cech_filtration(pts, cfg.max_dim, cfg.max_scale))


def cmd_alpha(cfg: RunConfig) -> str:
    pts = tio.read_point_cloud(cfg.inputs[0], cfg.flags.get("skip_header", False))
    f = builders.alpha_filtration_2d(pts, cfg.seed)
    if math.isfinite(cfg.max_scale):
        f = type(f)(f.cells[:f.sublevel(cfg.max_scale)], f.values[:f.sublevel(cfg.max_scale)])
    return tio.format_filtration(f)


def cmd_cubical(cfg: RunConfig) -> str:
    f = builders.cubical_lower_star(tio.read_image(cfg.inputs[0]))
    return _emit_diagram(persistence.compute_persistence(f), cfg)


def cmd_morse(cfg: RunConfig) -> str:
    parsed = tio.read_simplex_list(cfg.inputs[0])
    cx, sym = parsed.complex, parsed.symbols
    if cfg.flags.get("field"):
        V = tio.read_vector_field(cfg.flags["field"], sym)
    else:
        V = morse.greedy_gradient(cx)
    if cfg.fmt == "field":
        return tio.format_vector_field(V, sym)
    bad = morse.validate_field(cx, V)
    if bad:
        raise TopologyError("invalid vector field: " + "; ".join(bad))
    check = morse.is_gradient(cx, V)
    if not check:
        path = " > ".join("{" + " ".join(map(str, sym.names(c))) + "}" for c in check.witness)
        raise TopologyError(f"not a gradient field, closed V-path: {path}")
    mc = morse.morse_complex(cx, V)
    report = morse.morse_inequalities(cx, V)
    betti = mc.homology_gf2()
    doc = {"dims": [{"k": k, "betti": b, "torsion": []} for k, b in enumerate(betti)],
           "euler": report.euler,
           "critical": [_cells_json(mc.critical[k], sym) for k in range(cx.dim + 1)],
           "pairs": len(V),
           "inequalities": report.to_json()}
    if cfg.fmt == "text":
        lines = [f"critical {k}-cells: {len(mc.critical[k])}  "
                 + ", ".join(" ".join(map(str, sym.names(c))) for c in mc.critical[k])
                 for k in range(cx.dim + 1)]
        lines.append(f"morse betti (gf2): {' '.join(map(str, betti))}")
        lines.append(f"inequalities hold: {report.ok}")
        return "\n".join(lines) + "\n"
    return _dump(doc)


def cmd_pi1(cfg: RunConfig) -> str:
    parsed = tio.read_simplex_list(cfg.inputs[0])
    sym = parsed.symbols
    root = sym.id(cfg.flags["root"]) if cfg.flags.get("root") is not None else None
    p = pi1.presentation(parsed.complex, root)
    if not cfg.flags.get("raw"):
        p = pi1.simplify(p)
    ab = pi1.abelianize(p)
    gens = tuple(tuple(sym.label(v) for v in g) for g in p.generators)
    p = pi1.EdgePathPresentation(gens, p.relators)
    if cfg.fmt == "text":
        return p.to_text() + f"abelianization: {ab}\n"
    doc = p.to_json()
    doc["abelianization"] = ab.to_json()
    return _dump(doc)


def _load_diagram(path):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    if text.lstrip().startswith(("[", "{")):
        return persistence.diagram_from_json(text)
    return persistence.compute_persistence(tio.parse_simplex_list(text).filtration())


def cmd_bottleneck(cfg: RunConfig) -> str:
    d1 = _load_diagram(cfg.inputs[0])
    d2 = _load_diagram(cfg.inputs[1])
    dims = [cfg.flags["dim"]] if cfg.flags.get("dim") is not None else \
        list(range(max(d1.max_dim, d2.max_dim) + 1))
    dist = {k: persistence.bottleneck_distance(d1, d2, k) for k in dims}
    if cfg.fmt == "text":
        return "".join(f"H{k}: {persistence._fmt(v)}\n" for k, v in dist.items())
    return _dump([{"k": k, "distance": "inf" if v == math.inf else v} for k, v in dist.items()])


def cmd_mv_check(cfg: RunConfig) -> str:
    X = tio.read_simplex_list(cfg.inputs[0])
    Y = tio.read_simplex_list(cfg.inputs[1])
    # relabel both into one shared symbol table
    table = tio.SymbolTable(list(X.symbols.labels) + list(Y.symbols.labels))
    relabel = lambda P: [tuple(table.id(P.symbols.label(v)) for v in c) for c in P.complex]
    rep = homology.mayer_vietoris_check(from_facets(relabel(X)), from_facets(relabel(Y)))
    if cfg.fmt == "text":
        lines = [f"k={r.k}: b(XuY)={r.beta_union} predicted={r.predicted} "
                 f"{'ok' if r.holds else 'FAIL'}" for r in rep.rows]
        lines.append(f"identity holds: {rep.ok}")
        return "\n".join(lines) + "\n"
    return _dump(rep.to_json())


HANDLERS = {
    "homology": cmd_homology, "cohomology": cmd_cohomology, "euler": cmd_euler,
    "persistence": cmd_persistence, "rips": cmd_rips, "cech": cmd_cech, "alpha": cmd_alpha,
    "cubical": cmd_cubical, "morse": cmd_morse, "pi1": cmd_pi1, "bottleneck": cmd_bottleneck,
    "mv-check": cmd_mv_check,
}


# --------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topocalc", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    raw = argparse.RawDescriptionHelpFormatter

    def add(name, help_, fmts=("json", "text"), default=None, desc=None):
        p = sub.add_parser(name, help=help_, description=desc or help_, formatter_class=raw)
        p.add_argument("--format", dest="fmt", choices=fmts, default=default or fmts[0])
        return p

    p = add("homology", "homology groups of a simplex-list complex")
    p.add_argument("input")
    p.add_argument("--coeff", choices=("z", "gf2"), default="z")
    p = add("cohomology", "GF(2) cohomology bases and cup products")
    p.add_argument("input")
    p = add("euler", "Euler characteristic from cell counts and from Betti numbers")
    p.add_argument("input")

    p = add("persistence", "persistence diagram of a simplex-list filtration",
            fmts=("text", "json", "svg"))
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--hide-zero", action="store_true", help="omit zero-length intervals")

    p = add("rips", "Vietoris-Rips filtration (diameter scale)", fmts=("cplx",), desc=RIPS_HELP)
    p.add_argument("input")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--max-scale", type=float, default=math.inf,
                   help="largest edge DIAMETER kept (default: no limit)")
    p.add_argument("--distance-matrix", action="store_true",
                   help="input is a square CSV distance matrix")
    p.add_argument("--skip-header", action="store_true")

    p = add("cech", "Cech filtration (radius scale)", fmts=("cplx",), desc=CECH_HELP)
    p.add_argument("input")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--max-radius", dest="max_scale", type=float, default=math.inf,
                   help="largest enclosing-ball RADIUS kept (default: no limit)")
    p.add_argument("--skip-header", action="store_true")

    p = add("alpha", "2-D alpha filtration (radius scale)", fmts=("cplx",), desc=ALPHA_HELP)
    p.add_argument("input")
    p.add_argument("--max-scale", type=float, default=math.inf, help="largest radius kept")
    p.add_argument("--seed", type=int, default=0, help="insertion-order shuffle seed")
    p.add_argument("--skip-header", action="store_true")

    p = add("cubical", "persistence of the lower-star filtration of a PGM image or stack",
            fmts=("text", "json", "svg"))
    p.add_argument("input")
    p.add_argument("--hide-zero", action="store_true", help="omit zero-length intervals")

    p = add("morse", "gradient field, critical cells and Morse inequalities",
            fmts=("json", "text", "field"))
    p.add_argument("input")
    p.add_argument("--field", help="vector field file (default: greedy gradient)")

    p = add("pi1", "edge-path presentation of the fundamental group", fmts=("text", "json"))
    p.add_argument("input")
    p.add_argument("--root", help="spanning-tree root label (default: smallest vertex)")
    p.add_argument("--raw", action="store_true", help="skip Tietze simplification")

    p = add("bottleneck", "bottleneck distance between two diagrams or filtrations")
    p.add_argument("first", metavar="A", help="diagram JSON or filtration")
    p.add_argument("second", metavar="B", help="diagram JSON or filtration")
    p.add_argument("--dim", type=int, help="single dimension (default: all)")

    p = add("mv-check", "Mayer-Vietoris rank identity for X, Y and their union, over GF(2)")
    p.add_argument("first", metavar="X", help="simplex-list complex")
    p.add_argument("second", metavar="Y", help="simplex-list complex")
    return ap


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    cfg = RunConfig(subcommand=ns.pop("subcommand"))
    cfg.fmt = ns.pop("fmt")
    if "input" in ns:
        cfg.inputs = [ns.pop("input")]
    if "first" in ns:
        cfg.inputs = [ns.pop("first"), ns.pop("second")]
    for name in ("coeff", "max_dim", "max_scale", "seed"):
        if name in ns:
            setattr(cfg, name, ns.pop(name))
    cfg.flags = ns
    return cfg


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        cfg = parse_config(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out = HANDLERS[cfg.subcommand](cfg)
    except TopologyError as e:
        print(f"topocalc {cfg.subcommand}: error: {e}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError) as e:
        print(f"topocalc {cfg.subcommand}: error: {e}", file=sys.stderr)
        return 1
    stdout.write(out)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
