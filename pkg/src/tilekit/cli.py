"""Command-line front door.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import schema
from .algebra import Poly, binomial_product_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg_fraction(text: str) -> Fraction:
    v = _fraction(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _count(text: str) -> int:
    """Integers, also written like 2e9."""
    v = _fraction(text)
    if v.denominator != 1 or v < 0:
        raise argparse.ArgumentTypeError(f"not a nonnegative integer: {text!r}")
    return int(v)


def _positive(text: str) -> int:
    v = _count(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    v = _count(text)
    if v >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _emit(args, doc: dict, text: str) -> None:
    out = schema.dumps(doc) if getattr(args, "json", False) else text
    print(out)


def _write(path: str | None, content: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)


def _read_doc(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    return schema.loads(text)


# ------------------------------------------------------------ commands

def cmd_enumerate(args) -> int:
    from .aztec import enumerate_tilings
    from .encodings import t_polynomial_all_ones

    tilings = enumerate_tilings(args.rank, cap=args.cap)
    count = len(tilings) ** args.colors
    body = {"rank": args.rank, "colors": args.colors, "count": count}
    if args.colors == 1:
        body["tilings"] = [[[d.x, d.y, d.o] for d in t.dominos] for t in tilings]
    else:
        body["histogram"] = t_polynomial_all_ones(args.rank, args.colors, args.model, args.cap)
    _emit(args, schema.document("enumeration", **body), str(count))
    return EXIT_OK


def _all_ones_poly(m: int, k: int, model, method: str, cap: int) -> Poly:
    if method == "lattice":
        return _lattice_over_constant(m, k, model).substitute(
            {**{f"x{i}": 1 for i in range(1, m + 1)}, **{f"y{i}": 1 for i in range(1, m + 1)}})
    from .encodings import t_polynomial_all_ones

    return Poly.from_univariate(t_polynomial_all_ones(m, k, model, cap), "t")


def _lattice_over_constant(m: int, k: int, model) -> Poly:
    from .vertex import aztec_lattice_spec, lattice_constant, lattice_partition_function

    return lattice_partition_function(aztec_lattice_spec(m, k, model)) / lattice_constant(m, k, model)


def cmd_pf(args) -> int:
    from .encodings import generating_polynomial

    if args.at in ("all-ones", "x=1,y=1", "y=1,x=1"):
        p = _all_ones_poly(args.rank, args.colors, args.model, args.method, args.cap)
        factored = binomial_product_form(p)
    else:
        if args.method == "lattice":
            p = _lattice_over_constant(args.rank, args.colors, args.model)
        else:
            p = generating_polynomial(args.rank, args.colors, args.model, args.cap)
        factored = None
    text = factored or p.to_text()
    _emit(args, schema.document("polynomial", text=p.to_text(), factored=factored), text)
    return EXIT_OK


def _verify_ybe(args) -> tuple:
    from .vertex import YBE_TRIPLES, ybe_certify, ybe_grid, ybe_random_points

    details, failures = {}, []
    for k in range(1, args.colors + 1):
        pts = ybe_grid() + (ybe_random_points(args.trials, seed=args.seed + k) if k > 1 else [])
        for triple in YBE_TRIPLES:
            bad = ybe_certify(k, triple, pts)
            details[f"{triple} k={k}"] = not bad
            for (x, y, t), bds in bad[:3]:
                for bd, lhs, rhs in bds[:3]:
                    failures.append(f"{triple} k={k} x={x} y={y} t={t} boundary={bd}: "
                                    f"{lhs} != {rhs}")
    return all(details.values()), details, failures


def _verify_face_forms(args) -> tuple:
    from .vertex import FAMILIES, all_faces, weight_algebraic, weight_graphical
    from .vertex import ybe_random_points

    details, failures = {}, []
    for k in range(1, args.colors + 1):
        pts = ybe_random_points(args.trials, seed=args.seed + k)
        for fam in FAMILIES:
            ok = True
            for x, y, t in pts:
                y = y if fam == "R'" else None
                for face in all_faces(k):
                    wa = weight_algebraic(fam, k, face, x, t, y)
                    wg = weight_graphical(fam, k, face, x, t, y)
                    if wa != wg:
                        ok = False
                        failures.append(f"{fam} k={k} face={face} x={x} t={t}: {wa} != {wg}")
            details[f"{fam} k={k}"] = ok
    return all(details.values()), details, failures[:20]


def _verify_product(args) -> tuple:
    from .encodings import PG, WP, generating_polynomial, product_formula

    details = {}
    target = product_formula(args.rank, args.colors)
    for model in (PG, WP):
        details[model.value] = generating_polynomial(args.rank, args.colors, model) == target
    return all(details.values()), details, []


def _verify_lattice(args) -> tuple:
    from .encodings import PG, WP, generating_polynomial

    details = {}
    for model in (PG, WP):
        lat = _lattice_over_constant(args.rank, args.colors, model)
        details[model.value] = lat == generating_polynomial(args.rank, args.colors, model)
    return all(details.values()), details, []


VERIFIERS = {"ybe": _verify_ybe, "appendix-b": _verify_face_forms,
             "product": _verify_product, "lattice": _verify_lattice}


def cmd_verify(args) -> int:
    ok, details, failures = VERIFIERS[args.check](args)
    lines = [f"{'ok  ' if v else 'FAIL'} {k}" for k, v in details.items()]
    lines += [f"  {f}" for f in failures]
    doc = schema.document("verification", check=args.check, ok=ok, details=details,
                          failures=failures)
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bijection(args) -> int:
    from .bijections import phi_involution, t0_forward, t0_inverse

    doc = _read_doc(args.input)
    if args.map == "phi":
        out = schema.ktiling_doc(phi_involution(schema.to_ktiling(doc)))
    else:
        direction = args.direction or ("inv" if doc["kind"] == "tiling" else "fwd")
        if direction == "inv":
            out = schema.ktiling_doc(t0_inverse(schema.to_tiling(doc), args.colors))
        else:
            out = schema.tiling_doc(t0_forward(schema.to_ktiling(doc)))
    print(schema.dumps(out))
    return EXIT_OK


def _curve_family(name: str | None, k: int):
    from . import arctic

    if name in (None, "none"):
        return None
    return {"aztec-t0": lambda: arctic.aztec_t0_curves(k),
            "aztec-tinf": lambda: arctic.aztec_tinf_curves(k),
            "hexagon-t0": arctic.hexagon_t0_curves,
            "hexagon-tinf": arctic.hexagon_tinf_curves}[name]()


def _thinning(args) -> int:
    # without --thinning only the final state is recorded
    return args.thinning or max(1, args.steps - args.burn_in)


def cmd_sample(args) -> int:
    from .render import RenderSpec, render_svg
    from .sampler import SamplerConfig, run

    try:
        cfg = SamplerConfig(args.rank, args.colors, args.t, args.steps, args.seed,
                            args.burn_in, _thinning(args), args.model)
        res = run(cfg)
    except ValueError as e:
        raise UsageError(str(e)) from None
    final = res.final.to_ktiling()
    if args.stats:
        _write(args.stats, schema.dumps(schema.statistics_doc(res.stats, res.metadata())) + "\n")
    if args.out == "json":
        _write(args.output, schema.dumps(schema.ktiling_doc(final, res.metadata())) + "\n")
    else:
        legend = {"model": cfg.model.value, "rank": cfg.rank, "k": cfg.colors, "t": str(cfg.t),
                  "seed": cfg.seed}
        art = res.stats if args.heatmap else final
        spec = RenderSpec(art, overlay=_curve_family(args.overlay, args.colors),
                          legend=legend, color=args.color - 1, scale=args.scale)
        _write(args.output, render_svg(spec))
    return EXIT_OK


def cmd_hexagon(args) -> int:
    if args.hex_command == "table1":
        return _hex_table(args)
    if args.hex_command == "pf":
        return _hex_pf(args)
    return _hex_sample(args)


def _hex_table(args) -> int:
    from .hexagon import REFERENCE_TABLE, table_row

    rows = [table_row(*shape) for shape in REFERENCE_TABLE]
    ok = all(r["ok"] for r in rows)
    lines = []
    for r in rows:
        a, b, c = r["shape"]
        bad = [name for name, v in r["checks"].items() if not v]
        diff = "" if not bad else f"   differs: {', '.join(bad)} (reference {r['reference']})"
        lines.append(f"{a} {b} {c}  {r['polynomial']}{diff}")
    _emit(args, schema.document("table", rows=rows, ok=ok), "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _hex_pf(args) -> int:
    from .hexagon import hex_generating_polynomial, hex_partition_function

    if args.method == "lattice":
        p = hex_partition_function(args.a, args.b, args.c, args.colors, q=args.q)
    else:
        p = hex_generating_polynomial(args.a, args.b, args.c, args.colors, q=args.q)
    if args.t is not None:
        p = p.substitute({"t": args.t})
    _emit(args, schema.document("polynomial", text=p.to_text(), factored=None), p.to_text())
    return EXIT_OK


def _hex_sample(args) -> int:
    from .render import RenderSpec, render_svg
    from .sampler import HexSamplerConfig, hex_run

    try:
        cfg = HexSamplerConfig(args.a, args.b, args.c, args.colors, args.t, args.steps,
                               args.seed, args.burn_in, _thinning(args))
        stats, state = hex_run(cfg)
    except ValueError as e:
        raise UsageError(str(e)) from None
    layers = state.lozenge_tilings()
    meta = {"config": cfg.to_json(), "interactions": state.interactions(),
            "samples": stats.samples}
    if args.out == "json":
        _write(args.output, schema.dumps(schema.lozenge_doc(layers, meta)) + "\n")
    else:
        legend = {"model": "lozenge", "shape": f"{args.a}x{args.b}x{args.c}", "k": args.colors,
                  "t": str(cfg.t), "seed": cfg.seed}
        spec = RenderSpec(layers, overlay=_curve_family(args.overlay, args.colors),
                          legend=legend, scale=args.scale)
        _write(args.output, render_svg(spec))
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import RenderSpec, render_svg

    doc = _read_doc(args.input)
    kind = doc["kind"]
    meta = doc.get("metadata") or {}
    if kind == "tiling":
        art = schema.to_tiling(doc)
    elif kind == "ktiling":
        art = schema.to_ktiling(doc)
    elif kind == "paths":
        art = schema.to_paths(doc)
    elif kind == "statistics":
        art = schema.to_statistics(doc)
    elif kind == "lozenge":
        art = schema.to_lozenge(doc)
    else:
        raise UsageError(f"cannot render a {kind} document")
    k = getattr(art, "k", None) or getattr(art, "colors", None) or \
        (len(art) if isinstance(art, list) else 1)
    cfg = meta.get("config", {}) if isinstance(meta, dict) else {}
    legend = {"model": cfg.get("model", "purple-gray" if kind != "lozenge" else "lozenge"),
              "rank": doc.get("rank", cfg.get("rank", "")), "k": k,
              "t": cfg.get("t", ""), "seed": cfg.get("seed", "")}
    spec = RenderSpec(art, overlay=_curve_family(args.overlay, k), legend=legend,
                      color=args.color - 1, scale=args.scale)
    _write(args.output, render_svg(spec))
    return EXIT_OK


# -------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tilekit",
                                description="Colored domino and lozenge tilings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model=True):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if model:
            sp.add_argument("--model", default="purple-gray",
                            choices=["purple-gray", "white-pink"])

    sp = sub.add_parser("enumerate", help="count (and list) tilings")
    sp.add_argument("--rank", type=_positive, required=True)
    sp.add_argument("--colors", type=_positive, default=1)
    sp.add_argument("--cap", type=_positive, default=5, help="largest rank to enumerate")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("pf", help="generating polynomial")
    sp.add_argument("--rank", type=_positive, required=True)
    sp.add_argument("--colors", type=_positive, default=1)
    sp.add_argument("--at", choices=["symbolic", "all-ones", "x=1,y=1", "y=1,x=1"],
                    default="symbolic", help="x=1,y=1 (alias all-ones) leaves a polynomial in t")
    sp.add_argument("--method", choices=["enumerate", "lattice"], default="enumerate")
    sp.add_argument("--cap", type=_positive, default=5)
    common(sp)
    sp.set_defaults(func=cmd_pf)

    sp = sub.add_parser("verify", help="exact identity checks")
    sp.add_argument("check", choices=sorted(VERIFIERS))
    sp.add_argument("--colors", type=_positive, default=2)
    sp.add_argument("--rank", type=_positive, default=2)
    sp.add_argument("--trials", type=_count, default=10, help="random points per color count")
    sp.add_argument("--seed", type=_seed, default=0)
    common(sp, model=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bijection", help="t=0 shift or reflection on a JSON document")
    sp.add_argument("map", choices=["t0", "phi"])
    sp.add_argument("--in", "--input", dest="input", required=True,
                    help="JSON file, or - for stdin")
    sp.add_argument("--direction", choices=["fwd", "inv"], default=None,
                    help="t0 only: fwd merges k colors into one tiling, inv splits it")
    sp.add_argument("--colors", type=_positive, default=2, help="colors produced by inv")
    sp.set_defaults(func=cmd_bijection)

    sp = sub.add_parser("sample", help="Metropolis sampling of k-tilings")
    sp.add_argument("--rank", type=_positive, required=True)
    sp.add_argument("--colors", type=_positive, default=1)
    sp.add_argument("--t", type=_nonneg_fraction, default=Fraction(1))
    sp.add_argument("--steps", type=_count, required=True)
    sp.add_argument("--seed", type=_seed, required=True)
    sp.add_argument("--burn-in", type=_count, default=0)
    sp.add_argument("--thinning", type=_positive, default=None,
                    help="record every n-th state (default: the final state only)")
    sp.add_argument("--out", choices=["json", "svg"], default="json")
    sp.add_argument("--output", default=None, help="file (default stdout)")
    sp.add_argument("--stats", default=None, help="also write per-cell statistics JSON here")
    sp.add_argument("--heatmap", action="store_true", help="svg of the statistics")
    sp.add_argument("--overlay", default="none",
                    choices=["none", "aztec-t0", "aztec-tinf"])
    sp.add_argument("--color", type=_positive, default=1, help="color shown in the heat map")
    sp.add_argument("--scale", type=float, default=4.0)
    common(sp)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("hexagon", help="lozenge k-tilings of hexagons")
    hs = sp.add_subparsers(dest="hex_command", required=True)
    h = hs.add_parser("table1", help="two-color polynomials for the reference shapes")
    common(h, model=False)
    h = hs.add_parser("pf", help="hexagon generating polynomial")
    for side in ("a", "b", "c"):
        h.add_argument(f"--{side}", type=_count, required=True)
    h.add_argument("--colors", type=_positive, default=2)
    h.add_argument("--q", type=_fraction, default=None)
    h.add_argument("--t", type=_fraction, default=None)
    h.add_argument("--method", choices=["enumerate", "lattice"], default="enumerate")
    common(h, model=False)
    h = hs.add_parser("sample", help="Metropolis sampling of lozenge k-tilings")
    for side in ("a", "b", "c"):
        h.add_argument(f"--{side}", type=_positive, required=True)
    h.add_argument("--colors", type=_positive, default=2)
    h.add_argument("--t", type=_nonneg_fraction, default=Fraction(1))
    h.add_argument("--steps", type=_count, required=True)
    h.add_argument("--seed", type=_seed, required=True)
    h.add_argument("--burn-in", type=_count, default=0)
    h.add_argument("--thinning", type=_positive, default=None)
    h.add_argument("--out", choices=["json", "svg"], default="json")
    h.add_argument("--output", default=None)
    h.add_argument("--overlay", default="none", choices=["none", "hexagon-t0", "hexagon-tinf"])
    h.add_argument("--scale", type=float, default=12.0)
    sp.set_defaults(func=cmd_hexagon)

    sp = sub.add_parser("render", help="SVG from a JSON document")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", default=None)
    sp.add_argument("--overlay", default="none",
                    choices=["none", "aztec-t0", "aztec-tinf", "hexagon-t0", "hexagon-tinf"])
    sp.add_argument("--color", type=_positive, default=1)
    sp.add_argument("--scale", type=float, default=12.0)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, schema.SchemaError) as e:
        print(f"tilekit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"tilekit: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
