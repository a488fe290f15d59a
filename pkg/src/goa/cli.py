"""Command-line front door.

Subcommands: construct, verify, search, survey, expand, eval, catalog.
Every written design is verified first; a construction whose claims do not
hold still writes its file (with truthful verified strengths) but exits 2.
Exit codes: 0 ok, 1 partial failure, 2 verification/claim/parse failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import gf as gflib
from . import serialize
from .designs import (
    DEFAULT_WLP_BUDGET,
    GeneratorMatrix,
    GroupedDesign,
    claims_ok,
    p_of_d,
    subset_columns,
    subset_design,
    verify_claims,
)
from .constructions import (
    construct_consecutive,
    construct_ebert,
    construct_prop1,
    construct_thm1,
    construct_thm2,
    ds_catalog,
    ds_search,
    grouped_kronecker,
    rank_primitive_polys,
)
from .errors import GoaError
from .evalsim import SimModel, clarity_check, run_bias_study
from .expand import oa_to_lhd, rotate_columns
from .search import SEED_GENERATORS, SearchConfig, algorithm_42, survey, survey_table

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CLAIM = 2


def _add_out_flags(p: argparse.ArgumentParser):
    p.add_argument("--out", help="output path (default: derived from the construction)")
    p.add_argument("--format", choices=("json", "csv", "both"), default="json")


def _write_design(gd: GroupedDesign, out: str | None, fmt: str, default_name: str) -> Path:
    path = Path(out) if out else Path(f"{default_name}.json")
    if fmt in ("json", "both"):
        serialize.save_json(gd, path if path.suffix == ".json" else path.with_suffix(".json"))
    if fmt in ("csv", "both"):
        serialize.save_csv(gd.design, path.with_suffix(".csv"))
    return path


def _parse_poly(text: str, s: int) -> gflib.Poly:
    return gflib.Poly.parse(text, s)


def _load_base(args) -> GroupedDesign:
    gd = serialize.load_design_file(args.base, getattr(args, "s", None))
    if getattr(args, "base_group", None) is not None:
        grp = gd.groups[args.base_group]
        gd = subset_columns(gd, grp.columns)
    return gd


def _get_ds(args, s: int):
    if args.ds_shape:
        r, c = (int(x) for x in args.ds_shape.split(","))
        return ds_catalog(s, r, c)
    if args.ds_search:
        r, c = (int(x) for x in args.ds_search.split(","))
        return ds_search(s, r, c, seed=args.rng_seed)
    raise GoaError("need --ds-shape or --ds-search")


def cmd_construct(args) -> int:
    s = args.s
    if args.what == "thm1":
        ext = None
        if args.h:
            p, j = gflib.factor_prime_power(s)
            ext = gflib.ext_field(p, j, _parse_poly(args.h, p))
        gd = construct_thm1(s, ext)
        name = f"thm1-s{s}"
    elif args.what == "ebert":
        h = _parse_poly(args.h, s) if args.h else gflib.find_primitive_polys(s, 4)[0]
        gd = construct_ebert(gflib.ext_field(s, 4, h))
        name = f"ebert-s{s}"
    elif args.what == "consecutive":
        k, m = args.k, args.m
        h = _parse_poly(args.h, s) if args.h else rank_primitive_polys(s, k, m, args.budget)[0][0]
        gd = construct_consecutive(gflib.ext_field(s, k, h), m, args.budget)
        name = f"consecutive-s{s}-k{k}-m{m}"
    elif args.what == "prop1":
        ds = _get_ds(args, s)
        base = _load_base(args)
        size = args.blocks
        blocks = [list(range(j, min(j + size, ds.c))) for j in range(0, ds.c, size)]
        gd = construct_prop1(ds, blocks, base.design)
        name = f"prop1-s{s}"
    elif args.what == "thm2":
        ds = _get_ds(args, s)
        base = _load_base(args)
        result = construct_thm2(ds, base)
        gd = result.grouped
        for grp, bound in zip(gd.groups, result.bounds):
            print(f"group of {grp.size}: p = {grp.p} (bound {bound})")
        name = f"thm2-s{s}"
    else:
        raise GoaError(f"unknown construction {args.what}")

    if gd.generator is not None:
        for idx, grp in enumerate(gd.groups):
            block = gd.generator.matrix[:, grp.columns]
            rows = ["".join(str(int(x)) for x in row) for row in block]
            print(f"G{idx}: " + " ".join(rows))
    path = _write_design(gd, args.out, args.format, name)
    print(f"{gd.label()} -> {path}")
    report = verify_claims(gd, args.budget)
    if not (claims_ok(gd) and report.ok):
        for line in report.lines():
            print(line)
        print("verification FAILED; file written with truthful verified strengths")
        return EXIT_CLAIM
    return EXIT_OK


def cmd_verify(args) -> int:
    gd = serialize.load_design_file(args.file, args.s)
    report = verify_claims(gd, args.budget)
    for line in report.lines():
        print(line)
    if report.ok:
        for idx, grp in enumerate(gd.groups):
            extras = []
            if grp.wlp is not None:
                extras.append(f"wlp {tuple(grp.wlp)}")
            if grp.size >= 3 and grp.p is None:
                extras.append(f"p {p_of_d(gd.design, grp.columns)}")
            elif grp.p is not None:
                extras.append(f"p {grp.p}")
            print(
                f"group {idx + 1}: {grp.size} cols, verified strength "
                f"{grp.verified_strength}" + (", " + ", ".join(extras) if extras else "")
            )
        print(f"array: {gd.label()}")
        print("all claims hold")
        return EXIT_OK
    print("claim mismatch")
    return EXIT_CLAIM


def cmd_search(args) -> int:
    if args.builtin:
        gen = SEED_GENERATORS[args.builtin]
    elif not args.seed_design:
        raise GoaError("need --seed-design or --builtin")
    else:
        seed_design = serialize.load_design_file(args.seed_design)
        if seed_design.generator is not None:
            gen = seed_design.generator
        else:
            field = gflib.level_field(seed_design.design.s)
            basis = gflib.row_space_basis(field, seed_design.design.matrix)
            gen = GeneratorMatrix(seed_design.design.s, basis)
    cfg = SearchConfig(
        restarts=args.restarts,
        seed=args.rng_seed,
        wlp_budget=args.budget,
        min_groups=args.min_groups,
    )
    gd = algorithm_42(gen, cfg)
    path = _write_design(gd, args.out, args.format, f"alg42-s{gen.s}-m{gen.m}")
    print(f"{gd.label()} (g={len(gd.groups)}) -> {path}")
    return EXIT_OK if claims_ok(gd) else EXIT_CLAIM


def cmd_survey(args) -> int:
    m_values = None
    if args.mmax is not None:
        m_values = range(args.k + 1, args.mmax + 1)
    rows = survey(args.s, args.k, m_values, args.budget)
    print(survey_table(rows))
    if args.out:
        lines = ["s,k,m,t,g,A3,A4,A5,A6,max_groups,h"]
        for r in rows:
            lines.append(
                f"{r.s},{r.k},{r.m},{r.t},{r.g},"
                + ",".join(str(a) for a in r.wlp_head)
                + f",{int(r.max_groups)},{r.h.format().replace(',', ' ')}"
            )
        Path(args.out).write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_expand(args) -> int:
    gd = serialize.load_design_file(args.design, args.s)
    if args.what == "lhd":
        real = oa_to_lhd(gd.design, seed=args.rng_seed)
    else:
        real = rotate_columns(gd)
    out = Path(args.out) if args.out else Path(f"{args.what}-of-{Path(args.design).stem}.json")
    serialize.save_real_json(real.matrix, real.origin, out, real.int_matrix)
    if args.format in ("csv", "both"):
        serialize.save_real_csv(real.matrix, out.with_suffix(".csv"))
    print(f"{real.runs}x{real.cols} real design -> {out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    gd = serialize.load_design_file(args.design, args.s)
    if args.what == "clarity":
        rep = clarity_check(gd)
        print(f"main-effect columns: {rep.n_main}; interaction columns: {rep.n_interactions}")
        print(f"max |main x interaction| overall: {rep.max_abs:.3e}")
        print(f"max |main x interaction| within own group: {rep.max_abs_same_group:.3e}")
        return EXIT_OK
    sigmas = [float(x) for x in args.sigma.split(",")]
    model = SimModel(reps=args.reps, seed=args.rng_seed)
    results = run_bias_study([(Path(args.design).stem, gd)], sigmas, model)
    lines = ["design,sigma,mean,se"]
    for r in results:
        lines.append(f"{r.design},{r.sigma:g},{r.mean:.6f},{r.se:.6f}")
    text = "\n".join(lines)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Catalog


def _catalog_entries(rng_seed: int):
    """(name, recipe, builder) for every design the catalog regenerates."""
    entries = []
    for s in (2, 3, 4, 5):
        entries.append((f"thm1-s{s}", f"construct thm1 --s {s}",
                        lambda s=s: construct_thm1(s)))
    for s in (2, 3):
        h = gflib.find_primitive_polys(s, 4)[0]
        entries.append((f"ebert-s{s}", f"construct ebert --s {s} --h {h.format()}",
                        lambda s=s, h=h: construct_ebert(gflib.ext_field(s, 4, h))))

    def ebert_group(s):
        gd = construct_ebert(gflib.ext_field(s, 4, gflib.find_primitive_polys(s, 4)[0]))
        return subset_design(gd.design, gd.groups[0].columns)

    entries.append((
        "goa486-20x3",
        "construct prop1 --s 3 --ds-shape 6,6 --blocks 2 --base ebert-s3.json --base-group 0",
        lambda: construct_prop1(ds_catalog(3, 6, 6), [[0, 1], [2, 3], [4, 5]], ebert_group(3)),
    ))
    entries.append((
        "goa64-10x2",
        "construct prop1 --s 2 --ds-shape 4,4 --blocks 2 --base ebert-s2.json --base-group 0",
        lambda: construct_prop1(ds_catalog(2, 4, 4), [[0, 1], [2, 3]], ebert_group(2)),
    ))

    def wide_blocks_162():
        b = subset_design(construct_thm1(3).design, range(4))
        return grouped_kronecker(ds_catalog(3, 6, 6), [[0, 1, 2], [3, 4, 5]], b,
                                 origin="kron-blocks3(ds=6x6x3, b=thm1(s=3) group 0)")

    entries.append(("goa162-12x2",
                    "grouped_kronecker(ds=6x6x3, blocks of 3, b=thm1(s=3) group 0)",
                    wide_blocks_162))

    def ebert_subset_5544():
        gd = construct_ebert(gflib.ext_field(3, 4, gflib.find_primitive_polys(3, 4)[0]))
        keep = (gd.groups[0].columns[:5] + gd.groups[1].columns[:5]
                + gd.groups[2].columns[:4] + gd.groups[3].columns[:4])
        return subset_columns(gd, keep)

    entries.append((
        "goa486-thm2",
        "construct thm2 --s 3 --ds-shape 6,6 --base ebert-s3-subset.json",
        lambda: construct_thm2(ds_catalog(3, 6, 6), ebert_subset_5544()).grouped,
    ))
    entries.append((
        "goa486-thm2-regrouped",
        "construct thm2 --s 3 --ds-shape 6,6 --base ebert-s3-subset.json (nested)",
        lambda: construct_thm2(ds_catalog(3, 6, 6), ebert_subset_5544()).nested,
    ))

    for m, h_text in ((6, "1,1,1,1,2,1"), (7, "1,0,1,2,2,1")):
        entries.append((
            f"goa243-m{m}",
            f"construct consecutive --s 3 --k 5 --h {h_text} --m {m}",
            lambda m=m, h_text=h_text: construct_consecutive(
                gflib.ext_field(3, 5, gflib.Poly.parse(h_text, 3)), m),
        ))

    entries.append((
        "alg42-16-5",
        f"search alg42 --builtin oa16-5-ma --restarts 2000 --rng-seed {rng_seed}",
        lambda: algorithm_42(SEED_GENERATORS["oa16-5-ma"],
                             SearchConfig(restarts=2000, seed=rng_seed)),
    ))

    for s, kmax in ((2, 9), (3, 6)):
        for k in range(2, kmax + 1):
            v = (s**k - 1) // (s - 1)
            for m in range(k + 1, k + 5):
                if v // m < 1:
                    continue
                entries.append((
                    f"survey-s{s}-k{k}-m{m}",
                    f"construct consecutive --s {s} --k {k} --m {m}",
                    lambda s=s, k=k, m=m: construct_consecutive(
                        gflib.ext_field(s, k, rank_primitive_polys(s, k, m)[0][0]), m),
                ))
    return entries


def cmd_catalog(args) -> int:
    out_dir = Path(args.out or "catalog")
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = _catalog_entries(args.rng_seed)
    if args.only:
        entries = [e for e in entries if args.only in e[0]]
    index_lines = ["name,file,sha256,label,recipe"]
    failures = []
    for name, recipe, builder in entries:
        try:
            gd = builder()
            if not claims_ok(gd):
                raise GoaError(f"claims failed verification: {gd.label()}")
            path = out_dir / f"{name}.json"
            serialize.save_json(gd, path)
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
            index_lines.append(f'{name},{path.name},{digest},"{gd.label()}","{recipe}"')
            print(f"{name}: {gd.label()}")
        except GoaError as exc:
            failures.append(f"{name}: {exc}")
            print(f"{name}: FAILED ({exc})", file=sys.stderr)
    (out_dir / "index.csv").write_text("\n".join(index_lines) + "\n")
    if failures:
        print(f"{len(failures)} entries failed", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build and verify a design")
    con_sub = con.add_subparsers(dest="what", required=True)
    for what in ("thm1", "ebert", "prop1", "thm2", "consecutive"):
        p = con_sub.add_parser(what)
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--h", help="primitive polynomial, descending coefficients")
        p.add_argument("--budget", type=int, default=DEFAULT_WLP_BUDGET)
        p.add_argument("--rng-seed", type=int, default=0)
        _add_out_flags(p)
        if what == "consecutive":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--m", type=int, required=True)
        if what in ("prop1", "thm2"):
            p.add_argument("--ds-shape", help="r,c for a catalogued scheme")
            p.add_argument("--ds-search", help="r,c to search for a scheme")
            p.add_argument("--base", required=True, help="base design JSON file")
            p.add_argument("--base-group", type=int, help="use only this group of the base")
        if what == "prop1":
            p.add_argument("--blocks", type=int, choices=(1, 2), default=2,
                           help="scheme columns per block (each block becomes one group)")
        p.set_defaults(func=cmd_construct)

    ver = sub.add_parser("verify", help="re-verify the claims in a design file")
    ver.add_argument("file")
    ver.add_argument("--s", type=int, help="level count (required for CSV)")
    ver.add_argument("--budget", type=int, default=DEFAULT_WLP_BUDGET)
    ver.set_defaults(func=cmd_verify)

    sea = sub.add_parser("search", help="randomized grouping search / survey")
    sea_sub = sea.add_subparsers(dest="what", required=True)
    alg = sea_sub.add_parser("alg42")
    alg.add_argument("--seed-design", help="JSON design file providing the seed generator")
    alg.add_argument("--builtin", choices=sorted(SEED_GENERATORS),
                     help="use an embedded minimum-aberration seed")
    alg.add_argument("--restarts", type=int, default=10_000)
    alg.add_argument("--rng-seed", type=int, default=0)
    alg.add_argument("--min-groups", type=int, default=1)
    alg.add_argument("--budget", type=int, default=DEFAULT_WLP_BUDGET)
    _add_out_flags(alg)
    alg.set_defaults(func=cmd_search)
    for host in (sea_sub.add_parser("survey"), sub.add_parser("survey")):
        host.add_argument("--s", type=int, required=True)
        host.add_argument("--k", type=int, required=True)
        host.add_argument("--mmax", type=int)
        host.add_argument("--budget", type=int, default=DEFAULT_WLP_BUDGET)
        host.add_argument("--out")
        host.set_defaults(func=cmd_survey)

    exp = sub.add_parser("expand", help="Latin hypercube / rotation expansion")
    exp_sub = exp.add_subparsers(dest="what", required=True)
    for what in ("lhd", "rotate"):
        p = exp_sub.add_parser(what)
        p.add_argument("--design", required=True)
        p.add_argument("--s", type=int)
        p.add_argument("--rng-seed", type=int, default=0)
        _add_out_flags(p)
        p.set_defaults(func=cmd_expand)

    ev = sub.add_parser("eval", help="main-effects estimation study")
    ev_sub = ev.add_subparsers(dest="what", required=True)
    bias = ev_sub.add_parser("bias")
    bias.add_argument("--design", required=True)
    bias.add_argument("--s", type=int)
    bias.add_argument("--sigma", default="1,5,10")
    bias.add_argument("--reps", type=int, default=1000)
    bias.add_argument("--rng-seed", type=int, default=0)
    bias.add_argument("--out")
    bias.set_defaults(func=cmd_eval)
    clar = ev_sub.add_parser("clarity")
    clar.add_argument("--design", required=True)
    clar.add_argument("--s", type=int)
    clar.set_defaults(func=cmd_eval)

    cat = sub.add_parser("catalog", help="regenerate the design catalog")
    cat.add_argument("--out", default="catalog")
    cat.add_argument("--rng-seed", type=int, default=0)
    cat.add_argument("--only", help="restrict to entries whose name contains this")
    cat.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GoaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLAIM


if __name__ == "__main__":
    sys.exit(main())
