"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 missing data,
4 resource guard.  Reports go to stdout, diagnostics to stderr.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import surface_invariants as si
from .gl2 import MAX_ENUM_LEVEL, ResourceGuardError, compare_involution_classes
from .hj_resolution import SingularityType, fiber_multiplicities, hj_expansion
from .modular_curves import signature_checks

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_DATA, EXIT_GUARD = 0, 1, 2, 3, 4
TABULAR = ("json", "csv", "markdown")
DIAGRAM = ("svg", "dot", "text")
BUNDLED = (6, 33)

HEADERS = {
    "N": "N", "r": "r", "pg_Z": "p_g(Z)", "kappa_Z": "kappa(Z)", "pg_W": "p_g(W)",
    "kwbar_cinf": "K_Wbar.C_inf", "kw_sq": "K_W^2", "ksmall_sq": "K_small^2", "kappa_W": "kappa(W)",
}


class CliError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _level(N, r):
    try:
        level = si.Level(N, r)
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from e
    if level.normalized:
        print(f"note: r = {r} normalized to {level.r} (same square class mod {N})", file=sys.stderr)
    return level


def _override(path):
    if path is None:
        return None
    try:
        return si.load_base_data(path)
    except OSError as e:
        raise CliError(EXIT_DATA, f"cannot read base data: {e}") from e
    except (KeyError, ValueError) as e:
        raise CliError(EXIT_INPUT, f"malformed base data file {path}: {e}") from e


# --- rendering of rows ---------------------------------------------------------

def _cell(v, blank):
    return blank if v is None else str(v)


def render_rows(rows, fmt):
    cols = si.InvariantRow.COLUMNS
    dicts = [r.as_dict() for r in rows]
    if fmt == "json":
        return json.dumps(dicts, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for d in dicts:
            w.writerow([_cell(d[c], "") for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(HEADERS[c] for c in cols) + " |",
             "|" + "|".join("---:" for _ in cols) + "|"]
    for d in dicts:
        lines.append("| " + " | ".join(_cell(d[c], "-") for c in cols) + " |")
    return "\n".join(lines) + "\n"


# --- commands ------------------------------------------------------------------------

def _row(level, override):
    try:
        return si.invariant_row(level, override)
    except si.DataError as e:
        raise CliError(EXIT_DATA, str(e)) from e
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from e


def _details(level, override):
    census = si.singularity_census(level)
    out = {
        "input_r": level.raw_r,
        "k": level.k,
        "M": level.M,
        "census": {
            "at_1728": census.at_1728,
            "at_0": [{"type": f"(3,{q})", "count": c} for q, c in census.at_0],
            "at_infty": [{"type": f"({d},{q})", "count": c} for (d, q), c in census.at_infty],
        },
        "fixed_locus": [
            {"family": c.family, "multiplier": c.multiplier,
             "signature": dict(zip(("index", "e2", "e3", "cusps", "genus", "components"),
                                   c.signature.as_tuple())),
             "k_dot": c.k_dot, "in_support_S": c.in_support_S}
            for c in si.fixed_locus(level)],
    }
    fp = si.fixed_point_census(level)
    out["isolated"] = {"P1": fp.p1, "P2": fp.p2, "P3": fp.p3, "P_inf": fp.p_infty,
                       "s21": fp.s21, "s32": fp.s32}
    if not si.z_is_rational(level):
        dk2, dkf = si.blowdown_deltas(level)
        out["blowdown_deltas"] = {"dK2": dk2, "dKF": dkf}
    if si._kappa_W_listed(level.N, level.r) >= 0:
        out["frak_m"] = {"m": si.frak_m_terms(level), "value": si.frak_m(level)}
    return out


def cmd_invariants(args, out):
    level = _level(args.N, args.r)
    override = _override(args.base_data)
    row = _row(level, override)
    if args.format == "json":
        payload = {"row": row.as_dict(), **_details(level, override)}
        out.write(json.dumps(_jsonable(payload), indent=2) + "\n")
    else:
        out.write(render_rows([row], args.format))
    return EXIT_OK


def table_rows(lo, hi, override=None):
    rows = []
    for N in range(lo, hi + 1):
        for r in si.square_classes(N):
            level = si.Level(N, r)
            if si.z_is_rational(level):
                continue
            rows.append(_row(level, override))
    return rows


def cmd_table(args, out):
    lo, hi = args.min_N, args.max_N
    if lo > hi:
        raise CliError(EXIT_INPUT, f"empty range {lo}..{hi}")
    if lo < BUNDLED[0]:
        raise CliError(EXIT_INPUT, f"N = {lo} is below the tabulated range (N >= {BUNDLED[0]})")
    out.write(render_rows(table_rows(lo, hi, _override(args.base_data)), args.format))
    return EXIT_OK


def cmd_classify(args, out):
    level = _level(args.N, args.r)
    fn = si.classify_W if args.surface == "w" else si.classify_Z
    try:
        cls = fn(level)
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from e
    except AssertionError as e:
        raise CliError(EXIT_VERIFY, str(e)) from e
    name = "W" if args.surface == "w" else "Z"
    out.write(f"{name}({level.N},{level.r}): {cls.tag} (kappa = {cls.kappa})\n")
    return EXIT_OK


def cmd_resolve(args, out):
    try:
        sing = SingularityType(args.d, args.q)
        chain = hj_expansion(sing.d, sing.q)
        fc = fiber_multiplicities(args.level, sing) if args.level else None
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from e
    out.write(f"type ({sing.d},{sing.q}): {chain}\n")
    out.write("self-intersections: " + " ".join(str(x) for x in chain.self_intersections) + "\n")
    if fc is not None:
        out.write(f"multiplicities at level {args.level}:\n")
        out.write("  a : " + " ".join(str(x) for x in fc.mult_j) + "\n")
        out.write("  a': " + " ".join(str(x) for x in fc.mult_jprime) + "\n")
    return EXIT_OK


# --- diagrams --------------------------------------------------------------------------

def _incidences(level, m):
    try:
        return si.fm_cusp_incidence(level, m)
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from e


def _node_names(n):
    return ["C1"] + [f"E{i}" for i in range(1, n + 1)] + ["C2"]


def diagram_text(level, m, incs):
    lines = [f"F_{m} on the resolution of Z({level.N},{level.r}) over (inf,inf)"]
    for inc in incs:
        c = inc.cusp
        chain = "[[" + ",".join(str(x) for x in inc.chain) + "]]"
        lines.append(f"cusp [{c.c},{c.d}] width {c.width}: chain ({level.N},{inc.q}) {chain}")
        names = _node_names(len(inc.chain))
        lines.append("  " + " - ".join([names[0]] + [f"({-x})" for x in inc.chain] + [names[-1]]))
        if inc.unique:
            marks = [f"{names[i]} x{v}" for i, v in enumerate(inc.solutions[0]) if v]
            lines.append("  meets: " + ", ".join(marks))
        else:
            lines.append(f"  meets: ambiguous ({len(inc.solutions)} solutions)")
    return "\n".join(lines) + "\n"


def diagram_dot(level, m, incs):
    lines = [f'graph "F{m}_{level.N}_{level.r}" {{', "  rankdir=LR;", "  node [shape=box];",
             f'  F [label="F_{m}", shape=ellipse];']
    for j, inc in enumerate(incs):
        names = _node_names(len(inc.chain))
        ids = [f"c{j}_{i}" for i in range(len(names))]
        labels = [names[0]] + [f"{names[i]} ({-x})" for i, x in enumerate(inc.chain, 1)] + [names[-1]]
        for nid, lab in zip(ids, labels):
            lines.append(f'  {nid} [label="{lab}"];')
        lines.append("  " + " -- ".join(ids) + ";")
        if inc.unique:
            for i, v in enumerate(inc.solutions[0]):
                if v:
                    lines.append(f'  F -- {ids[i]} [label="x{v}"];')
        else:
            lines.append(f'  F -- {ids[0]} [label="ambiguous", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_svg(level, m, incs):
    step, row_h, pad = 70, 80, 20
    width = pad * 2 + step * (max(len(i.chain) for i in incs) + 2)
    height = pad * 2 + row_h * len(incs) + 20
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
           f'width="{width}" height="{height}" font-family="monospace" font-size="11">',
           f'<text x="{pad}" y="{pad}">F_{m} on Z({level.N},{level.r})</text>']
    for j, inc in enumerate(incs):
        y = pad + 20 + row_h * j + 30
        names = _node_names(len(inc.chain))
        xs = [pad + step * i + 20 for i in range(len(names))]
        c = inc.cusp
        out.append(f'<text x="{pad}" y="{y - 22}">[{c.c},{c.d}] w={c.width} '
                   f'chain ({level.N},{inc.q})</text>')
        out.append(f'<line x1="{xs[0]}" y1="{y}" x2="{xs[-1]}" y2="{y}" stroke="black"/>')
        for i, x in enumerate(xs):
            lab = names[i] if i in (0, len(xs) - 1) else str(-inc.chain[i - 1])
            out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="black"/>')
            out.append(f'<text x="{x - 8}" y="{y + 18}">{lab}</text>')
        if inc.unique:
            for i, v in enumerate(inc.solutions[0]):
                if v:
                    out.append(f'<line x1="{xs[i]}" y1="{y - 14}" x2="{xs[i]}" y2="{y}" '
                               f'stroke="red" stroke-width="2"/>')
                    out.append(f'<text x="{xs[i] + 3}" y="{y - 8}" fill="red">x{v}</text>')
        else:
            out.append(f'<text x="{xs[0]}" y="{y - 8}" fill="red">ambiguous</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_diagram(args, out):
    level = _level(args.N, args.r)
    incs = _incidences(level, args.m)
    if any(not i.unique for i in incs):
        print("warning: some cusps have more than one multiplicity solution", file=sys.stderr)
    render = {"text": diagram_text, "dot": diagram_dot, "svg": diagram_svg}[args.format]
    text = render(level, args.m, incs)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# --- oracle verification ------------------------------------------------------------------

def cmd_oracle_verify(args, out):
    K = args.max_level
    if K > MAX_ENUM_LEVEL:
        raise CliError(EXIT_GUARD, f"level {K} exceeds the enumeration guard {MAX_ENUM_LEVEL}")
    n = 0
    for chk in signature_checks(K):
        n += 1
        if not chk.ok:
            out.write(f"signatures: {n} checked\n")
            print(f"mismatch at N={chk.N} r={chk.r} family {chk.family}: "
                  f"closed form {chk.closed}, oracle {chk.oracle}", file=sys.stderr)
            return EXIT_VERIFY
    out.write(f"signatures: {n} (N, r, family) checks passed\n")
    m = 0
    for N in range(2, K + 1):
        for r in si.square_classes(N):
            m += 1
            problems = compare_involution_classes(N, r)
            if problems:
                out.write(f"involution classes: {m} checked\n")
                print(f"mismatch at N={N} r={r}: {problems[0]}", file=sys.stderr)
                return EXIT_VERIFY
    out.write(f"involution classes: {m} (N, r) checks passed\n")
    return EXIT_OK


# --- entry point ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="hmsurf", description="Invariants of Hilbert modular "
                                "surfaces Z(N,r) and their symmetric quotients W(N,r).")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("invariants", help="full invariant report for one level")
    q.add_argument("N", type=int)
    q.add_argument("r", type=int)
    q.add_argument("--format", choices=TABULAR, default="json")
    q.add_argument("--base-data", metavar="PATH")
    q.set_defaults(func=cmd_invariants)

    q = sub.add_parser("table", help="regenerate the invariant table for a range of N")
    q.add_argument("min_N", type=int)
    q.add_argument("max_N", type=int)
    q.add_argument("--format", choices=TABULAR, default="markdown")
    q.add_argument("--base-data", metavar="PATH")
    q.set_defaults(func=cmd_table)

    q = sub.add_parser("classify", help="Enriques-Kodaira class")
    q.add_argument("N", type=int)
    q.add_argument("r", type=int)
    q.add_argument("--surface", choices=("z", "w"), default="w")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("resolve", help="Hirzebruch-Jung resolution of a (d,q) point")
    q.add_argument("d", type=int)
    q.add_argument("q", type=int)
    q.add_argument("--level", type=int)
    q.set_defaults(func=cmd_resolve)

    q = sub.add_parser("diagram", help="where F_m meets the chains over (inf,inf)")
    q.add_argument("N", type=int)
    q.add_argument("r", type=int)
    q.add_argument("m", type=int)
    q.add_argument("--format", choices=DIAGRAM, default="text")
    q.add_argument("-o", "--output", metavar="PATH")
    q.set_defaults(func=cmd_diagram)

    q = sub.add_parser("oracle-verify", help="closed forms against group enumeration")
    q.add_argument("--max-level", type=int, default=21)
    q.set_defaults(func=cmd_oracle_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except ResourceGuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except si.DataError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
