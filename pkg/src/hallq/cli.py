"""Command line interface: `hallq <command> ...`.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .elements import Element
from .errors import (DimensionMismatch, ExcludedType, HallqError, InvolutionInvalid,
                     NotDynkin, VerificationFailure)
from .quiver import IQuiver, diagonal_base, parse_spec, validate
from .scalars import HalfLaurent

PRESET_DIR = Path(__file__).with_name("presets")
USAGE_ERRORS = (NotDynkin, InvolutionInvalid, ExcludedType, DimensionMismatch)


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ config
def cache_dir() -> Path:
    env = os.environ.get("HALLQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hallq"


def resolve_spec(path: str) -> Path:
    p = Path(path)
    if p.is_file():
        return p
    name = p.name if p.parent.name == "presets" or p.parent == Path(".") else None
    if name and (PRESET_DIR / name).is_file():
        return PRESET_DIR / name
    raise UsageError(f"quiver spec {path!r} not found (presets: {', '.join(list_presets())})")


def list_presets() -> list:
    return sorted(p.name for p in PRESET_DIR.iterdir() if p.is_file())


def load_quiver(path: str) -> IQuiver:
    p = resolve_spec(path)
    try:
        q = parse_spec(p.read_text(encoding="utf-8"), label=p.name)
    except ValueError as e:
        raise UsageError(f"{p}: {e}") from e
    validate(q)
    return q


def hall_cache_path(q: IQuiver) -> Path:
    return cache_dir() / f"hall-{q.fingerprint()}.json"


def prime_cache(q: IQuiver) -> None:
    from .hallpoly import hall_table
    path = hall_cache_path(q)
    if path.is_file():
        hall_table(q).load(str(path))


def split_top(text: str, sep: str = ",") -> list:
    """Split at separators outside brackets."""
    out, cur, depth = [], "", 0
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [x.strip() for x in out]


def parse_vector(text: str, n: int) -> tuple:
    try:
        vec = tuple(int(x) for x in text.strip("[]() ").split(","))
    except ValueError as e:
        raise UsageError(f"bad vector {text!r}") from e
    if len(vec) != n:
        raise UsageError(f"vector {text!r} needs {n} entries")
    return vec


def parse_literal(alg, text: str) -> dict:
    """Normal-form terms `c * K[a] * u{λ}` read as basis keys without multiplying."""
    from .ihall import _factors, _split_top
    out = {}
    for term in _split_top(text.strip()):
        term = term.strip()
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:].strip()
        coeff = HalfLaurent.const(sign)
        alpha = (0,) * alg.n
        lam = alg.rs.zero()
        for f in _factors(term):
            if f.startswith("K[") and f.endswith("]"):
                alpha = parse_vector(f[1:], alg.n)
            elif f.startswith("u{") and f.endswith("}"):
                lam = alg.rs.parse_iso(f[2:-1])
            else:
                coeff = coeff * HalfLaurent.parse(f)
        key = (alpha, lam)
        out[key] = out.get(key, HalfLaurent()) + coeff
    return {k: c for k, c in out.items() if c}


def parse_elem(alg, text: str) -> Element:
    try:
        return alg.parse_element(text)
    except (ValueError, KeyError, IndexError) as e:
        raise UsageError(f"cannot parse element {text!r}: {e}") from e


def base_of(q: IQuiver) -> IQuiver:
    """The quiver whose double is meant: the base of a diagonal preset, else q."""
    b = diagonal_base(q)
    return b if b is not None else q


# ------------------------------------------------------------------ output
def emit(args, text_lines, payload) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def element_payload(x: Element) -> dict:
    return {"terms": [{"key": x.alg.format_key(k), "coeff": str(c)} for k, c in x.items()]}


def element_lines(x: Element) -> list:
    if x.is_zero():
        return ["0"]
    return [f"({c}) {x.alg.format_key(k)}" for k, c in x.items()]


def report_out(args, reports) -> int:
    ok = all(r.ok for r in reports)
    payload = {"schema": 1, "ok": ok, "reports": [r.to_json() for r in reports]}
    emit(args, [r.summary() for r in reports], payload)
    return 0 if ok else 1


# ------------------------------------------------------------------ commands
def cmd_roots(args) -> int:
    q = load_quiver(args.quiver)
    rs = validate(q, args.tiebreak)
    names = [rs.format_root(r) for r in range(rs.size)]
    orbits = []
    for r in rs.orbit_representatives():
        o = sorted({r, rs.rho_root[r]})
        orbits.append([names[x] for x in o])
    order = [names[r] for r in rs.order]
    w = max(len(x) for x in names) + 1
    lines = [f"quiver {q.label}: {q.n} vertices, {rs.size} positive roots, types {rs.types}",
             "admissible order: " + " ".join(order),
             "rho-orbits: " + " ".join("{" + ",".join(o) + "}" for o in orbits)]
    for title, tab in (("Hom", rs.hom), ("Ext", rs.ext)):
        lines.append(f"{title}(row, column):")
        lines.append(" " * w + "".join(f"{x:>{w}}" for x in names))
        for r in range(rs.size):
            lines.append(f"{names[r]:<{w}}" + "".join(f"{tab[r][t]:>{w}}" for t in range(rs.size)))
    payload = {"schema": 1, "quiver": q.label, "roots": names, "order": order,
               "orbits": orbits, "hom": rs.hom, "ext": rs.ext}
    emit(args, lines, payload)
    return 0


def cmd_count(args) -> int:
    from .ffrep import rep_context
    q = load_quiver(args.quiver)
    rs = validate(q)
    try:
        outers = [rs.parse_iso(x) for x in split_top(args.outer)]
        total = rs.parse_iso(args.total)
    except (ValueError, KeyError) as e:
        raise UsageError(f"bad isoclass: {e}") from e
    n = rep_context(q, args.prime).count_filtrations(outers, total)
    emit(args, [str(n)], {"schema": 1, "count": n, "prime": args.prime})
    return 0


def cmd_hall_table(args) -> int:
    from .hallpoly import PRIMES, HallTable
    q = load_quiver(args.quiver)
    primes = tuple(int(p) for p in args.primes.split(",")) if args.primes else PRIMES
    if len(set(primes)) != len(primes):
        raise UsageError("primes must be pairwise distinct")
    table = HallTable(q, primes=primes)
    data = table.to_json(args.max_dim)
    out = args.out
    if out is None:
        cache_dir().mkdir(parents=True, exist_ok=True)
        out = str(hall_cache_path(q))
    table.save(out, args.max_dim)
    print(f"wrote {len(data['entries'])} entries to {out}")
    return 0


def cmd_mult(args) -> int:
    from .ihall import ihall_algebra
    q = load_quiver(args.quiver)
    prime_cache(q)
    H = ihall_algebra(q, args.tiebreak)
    x = parse_elem(H, args.left)
    y = parse_elem(H, args.right)
    z = x * y
    emit(args, element_lines(z), {"schema": 1, **element_payload(z)})
    return 0


def cmd_hopf(args) -> int:
    from .hopf import borel_algebra, double_hopf
    from .ihall import double_algebra
    q = base_of(load_quiver(args.quiver))
    prime_cache(q)
    if args.op == "pairing":
        B = borel_algebra(q, args.tiebreak)
        if len(args.elems) != 2:
            raise UsageError("pairing takes two Borel elements")
        x, y = (Element(B, parse_literal(B, t)) for t in args.elems)
        c = B.pairing(x, y)
        emit(args, [str(c)], {"schema": 1, "value": str(c)})
        return 0
    if len(args.elems) != 1:
        raise UsageError(f"{args.op} takes one element")
    if args.algebra == "borel":
        A = borel_algebra(q, args.tiebreak)
        x = Element(A, parse_literal(A, args.elems[0]))
        ops = {"delta": A.coproduct, "counit": A.counit, "antipode": A.antipode}
    else:
        A = double_algebra(q, args.tiebreak)
        x = parse_elem(A, args.elems[0])
        h = double_hopf(q, args.tiebreak)
        ops = {"delta": h.coproduct, "counit": h.counit, "antipode": h.antipode}
    r = ops[args.op](x)
    if isinstance(r, Element):
        emit(args, element_lines(r), {"schema": 1, **element_payload(r)})
    else:
        emit(args, [str(r)], {"schema": 1, "value": str(r)})
    return 0


def cmd_chi(args) -> int:
    from .hopf import borel_algebra
    from .qsp import qsp
    q = load_quiver(args.quiver)
    prime_cache(q)
    Q = qsp(q, args.tiebreak)
    B = borel_algebra(q, args.tiebreak)
    x = Element(B, parse_literal(B, args.elem))
    c = Q.chi(x)
    emit(args, [str(c)], {"schema": 1, "value": str(c)})
    return 0


def cmd_omega(args) -> int:
    from .qsp import qsp
    q = load_quiver(args.quiver)
    prime_cache(q)
    Q = qsp(q, args.tiebreak)
    x = parse_elem(Q.H, args.elem)
    r = Q.omega(x) if args.command == "omega" else Q.idelta(x)
    emit(args, element_lines(r), {"schema": 1, **element_payload(r)})
    return 0


def cmd_dcb(args) -> int:
    from .dcb import DCB
    from .ihall import ihall_algebra
    q = load_quiver(args.quiver)
    prime_cache(q)
    H = ihall_algebra(q, args.tiebreak)
    nu = parse_vector(args.grading, q.n)
    d = DCB(H)
    table = d.solve(nu)
    lines, entries = [], []
    for label in d.slice(nu):
        e = table[label]
        parts = [f"({c}) {d.format_label(k).replace('L{', 'U{')}" for k, c in
                 sorted(e.items(), key=lambda kv: d.slice(nu).index(kv[0]))]
        lines.append(f"{d.format_label(label)} = " + " + ".join(parts))
        entries.append({"label": d.format_label(label),
                        "expansion": [{"basis": d.format_label(k).replace("L{", "U{"),
                                       "coeff": str(c)} for k, c in e.items()]})
    emit(args, lines, {"schema": 1, "grading": list(nu), "entries": entries})
    return 0


def cmd_positivity(args) -> int:
    from .dcb import positivity_csv, positivity_rows
    q = load_quiver(args.quiver)
    prime_cache(q)
    rows = positivity_rows(q, args.map, args.max_height, args.tiebreak)
    sys.stdout.write(positivity_csv(rows))
    if not all(r[4] for r in rows):
        return 1
    return 0


def cmd_verify(args) -> int:
    q = load_quiver(args.quiver)
    depth = args.depth
    suite = args.suite
    reps = []
    if suite == "tU-relations":
        from .ihall import double_algebra
        from .report import Report
        base = base_of(q)
        D = double_algebra(base, args.tiebreak)
        rep = Report("tU-relations", quiver=base.label or q.label)
        for name, res in D.verify_tU_relations(raise_on_fail=False):
            rep.record(name, res.is_zero(), res)
        reps.append(rep)
    elif suite == "hopf-axioms":
        from .hopf import (verify_borel_axioms, verify_double_axioms, verify_double_transport,
                           verify_generator_coproducts, verify_pairing, verify_phi_isos)
        base = base_of(q)
        prime_cache(base)
        reps += [verify_borel_axioms(base, depth, args.tiebreak),
                 verify_double_axioms(base, depth, args.tiebreak),
                 verify_pairing(base, min(depth, 2), args.tiebreak),
                 verify_phi_isos(base, min(depth, 2), args.tiebreak),
                 verify_double_transport(base, min(depth, 2), args.tiebreak),
                 verify_generator_coproducts(base, args.tiebreak)]
    elif suite == "chi":
        from .qsp import chi_properties_check
        prime_cache(q)
        reps.append(chi_properties_check(q, depth, args.tiebreak))
    elif suite == "qsp-diagrams":
        from .qsp import verify_qsp_diagrams
        prime_cache(q)
        reps.append(verify_qsp_diagrams(q, depth, args.tiebreak))
    elif suite == "associativity":
        from .ihall import ihall_algebra, verify_associativity
        prime_cache(q)
        reps.append(verify_associativity(ihall_algebra(q, args.tiebreak), depth))
    elif suite == "dcb":
        from .dcb import verify_dcb
        from .ihall import ihall_algebra
        prime_cache(q)
        reps.append(verify_dcb(ihall_algebra(q, args.tiebreak), depth))
    return report_out(args, reps)


SUITES = ("tU-relations", "hopf-axioms", "chi", "qsp-diagrams", "associativity", "dcb")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hallq", description="iHall algebras of Dynkin iquivers")
    p.add_argument("--version", action="version", version=f"hallq {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, quiver_flag=True):
        sp = sub.add_parser(name, help=help_)
        if quiver_flag:
            sp.add_argument("--quiver", required=True, help="spec file or preset name")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--tiebreak", choices=("lex", "revlex"), default="lex",
                        help="tiebreak of the admissible order")
        sp.set_defaults(func=func)
        return sp

    sp = sub.add_parser("roots", help="positive roots, orbits, Hom and Ext tables")
    sp.add_argument("quiver", nargs="?", help="spec file or preset name")
    sp.add_argument("--quiver", dest="quiver_opt")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--tiebreak", choices=("lex", "revlex"), default="lex")
    sp.set_defaults(func=cmd_roots)

    sp = add("count", cmd_count, "brute-force filtration count over F_p")
    sp.add_argument("--outer", required=True, help="comma separated isoclasses, top first")
    sp.add_argument("--total", required=True)
    sp.add_argument("--prime", type=int, required=True)

    sp = add("hall-table", cmd_hall_table, "tabulate Hall polynomials")
    sp.add_argument("--max-dim", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--primes", help="comma separated fitting primes")

    sp = add("mult", cmd_mult, "multiply two elements of the iHall algebra")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = add("hopf", cmd_hopf, "coproduct, counit, antipode or pairing")
    sp.add_argument("--op", choices=("delta", "counit", "antipode", "pairing"), required=True)
    sp.add_argument("--algebra", choices=("double", "borel"), default="double")
    sp.add_argument("elems", nargs="+")

    sp = add("chi", cmd_chi, "the twisted compatible map on a Borel element")
    sp.add_argument("elem")
    for name in ("omega", "idelta"):
        sp = add(name, cmd_omega, f"apply {name} to an element")
        sp.add_argument("elem")

    sp = add("dcb", cmd_dcb, "dual canonical basis of one graded slice")
    sp.add_argument("--grading", required=True)

    sp = add("positivity", cmd_positivity, "dCB coefficients of omega or idelta images (CSV)")
    sp.add_argument("--map", choices=("omega", "idelta"), required=True)
    sp.add_argument("--max-height", type=int, default=3)

    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--depth", type=int, default=2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "roots":
        args.quiver = args.quiver or args.quiver_opt
        if not args.quiver:
            print("hallq roots: a quiver spec is required", file=sys.stderr)
            return 2
    for attr in ("depth", "max_height", "max_dim", "prime"):
        val = getattr(args, attr, None)
        if val is not None and val <= 0:
            print(f"hallq: --{attr.replace('_', '-')} must be positive", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hallq: {e}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as e:
        print(f"hallq: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except VerificationFailure as e:
        print(f"hallq: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except HallqError as e:
        print(f"hallq: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as e:
        print(f"hallq: bad input: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
