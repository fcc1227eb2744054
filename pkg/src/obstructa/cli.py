"""Command line front end.

Nine subcommands over the exact engine: pi, cd, series, nil, solv, ehp,
verdict, catalog, berger.  Reports are human-readable by default; --json
switches to the canonical report document, which is byte-identical for
identical argv, input files and seed.

Exit codes: 0 every requested check established or true, 1 at least one
check refuted (witnesses in the report), 2 input or parse error, 3 an
internal cross-check contradiction.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import Algebra, check_identity, series
from .catalog import catalog, cd_tower
from .errors import ConsistencyError, EngineError, InputError, ParseError
from .forms import (DEFAULT_SEED, ExteriorContext, ProductSelector,
                    auto_solv_decomposition, graded_identity_check,
                    is_ks_nil, is_ks_solv_certificate)
from .ehp import VARIANTS, HPOptions, hp_generic_vanishes
from .formats import (AlgebraDocument, GeometryDocument, build_algebra,
                      build_certificates, build_spec, load_document,
                      make_report, serialize)
from .obstruction import (BERGER_TABLE, GeometrySpec, berger_rules,
                          catalog_verdicts, check_condition, verdict, _plain)
from .rationals import ZERO, parse_scalar

__all__ = ["main"]

_IDENTITY_ALIASES = {
    "comm": "commutative", "anticomm": "anticommutative",
    "assoc": "associative", "alt": "alternative",
}
_IDENTITIES = ("commutative", "anticommutative", "associative", "jacobi",
               "jacobi_right", "left_alternative", "right_alternative",
               "alternative", "engel")


def _identity_names(text: str) -> list[str]:
    names = []
    for raw in text.split(","):
        name = raw.strip().lower()
        if not name:
            continue
        name = _IDENTITY_ALIASES.get(name, name)
        if name not in _IDENTITIES:
            raise InputError(f"unknown identity {raw.strip()!r}; choose from "
                             + ", ".join(sorted(set(_IDENTITIES)
                                                | set(_IDENTITY_ALIASES))))
        names.append(name)
    if not names:
        raise InputError("no identities requested")
    return names


def _product(name: str) -> ProductSelector:
    if name == "algebra":
        return ProductSelector.algebra()
    if name == "bracket":
        return ProductSelector.bracket()
    raise InputError("pullback products carry a section and a morphism; "
                     "build them in code, not from the command line")


def _parens(name: str) -> list[str]:
    if name == "all":
        return ["left", "right", "balanced"]
    return [name]


def _load_spec(path: str, product: str | None) -> tuple[GeometrySpec, dict]:
    """Load a document and bind it to a spec plus its certificates."""
    doc = load_document(path)
    if isinstance(doc, AlgebraDocument):
        spec = GeometrySpec(build_algebra(doc))
        certs = {}
    elif isinstance(doc, GeometryDocument):
        spec = build_spec(doc)
        certs = build_certificates(doc, spec)
    else:
        raise InputError(f"{path} is not an algebra or geometry document")
    if product is not None:
        spec = GeometrySpec(spec.algebra, decomposition=spec.decomposition,
                            flags=spec.flags, grading=spec.grading,
                            degree_shift=spec.degree_shift,
                            product=_product(product),
                            provenance=spec.provenance)
    return spec, certs


def _with_product(alg: Algebra, selector: ProductSelector) -> Algebra:
    if selector.kind == "algebra":
        return alg
    table = selector.table_on(alg)
    return Algebra(f"{alg.name}[{selector.label}]", alg.dim,
                   alg.basis_labels, dict(table),
                   provenance="constructed")


def _flag(value: bool) -> str:
    return "T" if value else "F"


# ---------------------------------------------------------------- commands

def _cmd_pi(args) -> tuple[int, dict, list[str]]:
    names = _identity_names(args.identities)
    spec, _ = _load_spec(args.spec, args.product)
    degrees = None
    if args.degrees:
        degrees = tuple(int(d) for d in args.degrees.split(","))
    results = {"algebra": spec.algebra.name, "dim": spec.algebra.dim,
               "product": spec.product.label, "identities": {}}
    lines = [f"algebra: {spec.algebra.name}  (dim {spec.algebra.dim}, "
             f"product {spec.product.label})"]
    ok = True
    for name in names:
        if degrees is None:
            rep = check_identity(_with_product(spec.algebra, spec.product),
                                 name)
            entry = {"holds": rep.holds, "witness": _plain(rep.witness),
                     "level": "algebra"}
        else:
            context = (ExteriorContext(args.generators)
                       if args.generators else None)
            rep = graded_identity_check(spec.algebra, name, degrees,
                                        spec.product, context=context)
            entry = {"holds": rep.holds, "witness": _plain(rep.witness),
                     "level": "forms", "degrees": list(degrees),
                     "method": rep.method}
        results["identities"][name] = entry
        ok = ok and rep.holds
        tail = "" if rep.holds else f"  witness: {entry['witness']}"
        where = "" if degrees is None else f" on degrees {degrees}"
        lines.append(f"  {name}{where}: "
                     f"{'holds' if rep.holds else 'fails'}{tail}")
    return (0 if ok else 1), results, lines


def _cmd_cd(args) -> tuple[int, dict, list[str]]:
    if args.iterations < 0:
        raise InputError("--iterations must be nonnegative")
    names = _identity_names(args.identities)
    levels = []
    lines = [f"Cayley-Dickson tower over {args.base}",
             "level  dim  " + "  ".join(f"{n:<14}" for n in names)]
    for level in range(args.iterations + 1):
        alg = cd_tower(args.base, level)
        flags = {}
        for name in names:
            flags[name] = bool(check_identity(alg, name).holds)
        levels.append({"level": level, "dim": alg.dim, "identities": flags})
        lines.append(f"{level:<5}  {alg.dim:<3}  "
                     + "  ".join(f"{_flag(flags[n]):<14}" for n in names))
    results = {"base": args.base, "iterations": args.iterations,
               "identities": names, "levels": levels}
    return 0, results, lines


def _cmd_series(args) -> tuple[int, dict, list[str]]:
    spec, _ = _load_spec(args.spec, args.product)
    alg = _with_product(spec.algebra, spec.product)
    rep = series(alg, args.kind)
    dims = [sub.dim for sub in rep.chain]
    reaches_zero = rep.degree is not None
    results = {"algebra": spec.algebra.name, "kind": rep.kind,
               "chain_dims": dims, "stabilized": rep.stabilized,
               "degree": rep.degree, "terminates_at_zero": reaches_zero}
    lines = [f"algebra: {spec.algebra.name}  (product {spec.product.label})",
             f"{rep.kind} series dims: " + " > ".join(str(d) for d in dims),
             f"terminates at zero: {'yes' if reaches_zero else 'no'}"
             + (f"  (degree {rep.degree})" if rep.degree is not None else "")]
    return (0 if reaches_zero else 1), results, lines


def _cmd_nil(args) -> tuple[int, dict, list[str]]:
    spec, _ = _load_spec(args.spec, args.product)
    whole = spec.algebra.whole()
    results = {"algebra": spec.algebra.name, "k": args.k, "s": args.s,
               "product": spec.product.label, "checks": {}}
    lines = [f"algebra: {spec.algebra.name}  (dim {spec.algebra.dim}, "
             f"product {spec.product.label})"]
    ok = True
    for paren in _parens(args.paren):
        rep = is_ks_nil(whole, args.k, args.s, spec.product, paren=paren,
                        oracle=args.oracle, seed=args.seed)
        results["checks"][paren] = {
            "holds": rep.holds, "witness": _plain(rep.witness),
            "method": rep.method, "generators": rep.generator_count,
            "details": _plain(rep.details)}
        ok = ok and rep.holds
        tail = "" if rep.holds else f"  witness: {_plain(rep.witness)}"
        lines.append(f"  ({args.k},{args.s})-nil [{paren}]: "
                     f"{'holds' if rep.holds else 'fails'}{tail}")
    return (0 if ok else 1), results, lines


def _cmd_solv(args) -> tuple[int, dict, list[str]]:
    spec, certs = _load_spec(args.spec, args.product)
    alg = spec.algebra
    k, s = args.k, args.s
    decomposition = None
    source = None
    for cid in sorted(certs):
        cert = certs[cid]
        if cert.kind == "solv_decomposition":
            decomposition = cert.payload["summands"]
            k = k if k is not None else cert.payload["k"]
            s = s if s is not None else cert.payload["s"]
            source = f"document certificate for {cid}"
            break
    if decomposition is None:
        decomposition = auto_solv_decomposition(
            _with_product(alg, spec.product))
        if decomposition is None:
            raise InputError("the derived series does not reach zero and "
                             "the document carries no solv certificate")
        decomposition = [alg.subspace([v for v in d.basis])
                         for d in decomposition]
        source = "derived-series complements"
    if k is None or s is None:
        raise InputError("--k and --s are required when the document "
                         "carries no solv certificate")
    results = {"algebra": alg.name, "k": k, "s": s,
               "product": spec.product.label, "source": source,
               "summand_dims": [d.dim for d in decomposition], "checks": {}}
    lines = [f"algebra: {alg.name}  (dim {alg.dim}, "
             f"product {spec.product.label})",
             f"decomposition: {source}, summand dims "
             f"{[d.dim for d in decomposition]}"]
    ok = True
    for paren in _parens(args.paren):
        rep = is_ks_solv_certificate(alg.whole(), k, s, decomposition,
                                     spec.product, paren=paren,
                                     oracle=args.oracle, seed=args.seed)
        results["checks"][paren] = {
            "holds": rep.holds, "witness": _plain(rep.witness),
            "method": rep.method, "details": _plain(rep.details)}
        ok = ok and rep.holds
        tail = "" if rep.holds else f"  witness: {_plain(rep.witness)}"
        lines.append(f"  ({k},{s})-solv [{paren}]: "
                     f"{'holds' if rep.holds else 'fails'}{tail}")
    return (0 if ok else 1), results, lines


def _cmd_ehp(args) -> tuple[int, dict, list[str]]:
    spec, _ = _load_spec(args.spec, args.product)
    lam = parse_scalar(args.lam) if args.lam is not None else ZERO
    results = {"algebra": spec.algebra.name, "dimension": args.dimension,
               "lambda": args.lam or "0", "variant": args.variant,
               "product": spec.product.label, "checks": {}}
    lines = [f"algebra: {spec.algebra.name}  (product {spec.product.label})",
             f"n = {args.dimension}, lambda = {args.lam or '0'}, "
             f"variant = {args.variant}"]
    ok = True
    for paren in _parens(args.paren):
        opt = HPOptions(args.dimension, lam=lam, product=spec.product,
                        paren=paren, variant=args.variant)
        rep = hp_generic_vanishes(spec, opt)
        results["checks"][paren] = {
            "holds": rep.holds, "witness": _plain(rep.witness),
            "details": _plain(rep.details)}
        ok = ok and rep.holds
        det = rep.details
        parts = []
        if "alpha_n_vanishes" in det:
            parts.append(f"alpha_n {'= 0' if det['alpha_n_vanishes'] else '/= 0'}")
        if "cosmological_term_vanishes" in det:
            parts.append("cosmological term "
                         + ("= 0" if det["cosmological_term_vanishes"]
                            else "/= 0"))
        lines.append(f"  [{paren}] generic vanishing: "
                     f"{'holds' if rep.holds else 'fails'}"
                     + (f"  ({', '.join(parts)})" if parts else ""))
    return (0 if ok else 1), results, lines


def _cmd_verdict(args) -> tuple[int, dict, list[str]]:
    spec, certs = _load_spec(args.spec, args.product)
    if args.condition is not None:
        cid = args.condition
        cert = certs.get(cid)
        if cert is None:
            for key in certs:
                if key.upper().rstrip("'") == cid.upper().rstrip("'"):
                    cert = certs[key]
                    break
        if cert is None:
            raise InputError(f"the document carries no certificate for "
                             f"condition {cid}")
        res = check_condition(spec, cid, cert, paren=args.paren,
                              oracle=args.oracle, seed=args.seed)
        results = {"algebra": spec.algebra.name, "condition": res.condition,
                   "status": res.status,
                   "ks": list(res.ks) if res.ks else None,
                   "witness": _plain(res.witness),
                   "details": _plain(res.details)}
        lines = [f"algebra: {spec.algebra.name}",
                 f"condition {res.condition}: {res.status}"
                 + (f"  (k,s) = {res.ks}" if res.ks else "")]
        if res.witness is not None:
            lines.append(f"  witness: {_plain(res.witness)}")
        return (0 if res.established else 1), results, lines

    if args.paren == "all":
        raise InputError("the full verdict runs a single scheme; "
                         "pick left, right or balanced")
    v = verdict(spec, certs or None, paren=args.paren,
                oracle=args.oracle, seed=args.seed)
    results = v.as_plain_dict()
    results["algebra"] = spec.algebra.name
    lines = [f"algebra: {spec.algebra.name}  "
             f"(product {v.product_label}, paren {v.paren})",
             f"status: {v.status}"]
    if v.k_s is not None:
        lines.append(f"(k, s) = {tuple(v.k_s)}")
    if v.lambda_irrelevant_from is not None:
        lines.append(f"cosmological constant irrelevant from: "
                     f"n >= {v.lambda_irrelevant_from}")
    if v.trivial_from is not None:
        lines.append(f"EHP trivial from:                      "
                     f"n >= {v.trivial_from}")
    if v.duals_trivial_from is not None:
        lines.append(f"dual theories trivial from:            "
                     f"n >= {v.duals_trivial_from}")
    for cid, res in sorted(v.condition_results.items()):
        lines.append(f"  condition {cid}: {res.status}"
                     + (f"  (k,s) = {res.ks}" if res.ks else ""))
    lines.append("cross-check: passed")
    code = 0 if v.status == "established" else 1
    if args.dimension is not None:
        n = args.dimension
        at = {"dimension": n}
        if v.trivial_from is not None:
            at["ehp_trivial"] = n >= v.trivial_from
        if v.lambda_irrelevant_from is not None:
            at["lambda_irrelevant"] = n >= v.lambda_irrelevant_from
        if v.duals_trivial_from is not None:
            at["duals_trivial"] = n >= v.duals_trivial_from
        results["at_dimension"] = at
        claims = [f"{key} {'yes' if val else 'no'}"
                  for key, val in at.items() if key != "dimension"]
        lines.append(f"at n = {n}: " + ", ".join(claims))
        if not at.get("ehp_trivial", False):
            code = 1
    return code, results, lines


def _cmd_catalog(args) -> tuple[int, dict, list[str]]:
    table = catalog_verdicts()
    lines = ["catalog comparison (claim vs engine)"]
    for row in table["rows"]:
        engine = row["engine"]
        status = "declared" if engine is None else engine.get("status",
                                                              "computed")
        lines.append(f"  [{row['reading']:<11}] {row['name']:<44} "
                     f"{status:<15} agrees={row['agrees']}")
    summary = table["summary"]
    lines.append(f"rows: {summary['rows']}  computed: {summary['computed']}"
                 f"  declared: {summary['declared']}")
    lines.append(f"contradictions: {summary['contradictions'] or 'none'}")
    lines.append(f"disagreements: {summary['disagreements'] or 'none'}")
    code = 3 if summary["contradictions"] else 0
    return code, _plain(table), lines


def _cmd_berger(args) -> tuple[int, dict, list[str]]:
    if args.group is None and args.k is None:
        rows = [{"group": e.group, "dimension": e.dimension,
                 "geometry": e.geometry} for e in BERGER_TABLE]
        lines = ["group        dimension  geometry"]
        for e in BERGER_TABLE:
            lines.append(f"{e.group:<11}  {e.dimension:<9}  {e.geometry}")
        return 0, {"table": rows}, lines
    query = {"context": args.context, "torsionless": not args.with_torsion}
    if args.group is not None:
        query["group"] = args.group
        if args.dimension is not None:
            dim = args.dimension
            query["dimension"] = int(dim) if dim.lstrip("-").isdigit() else dim
    else:
        query["k"] = args.k
    out = berger_rules(query)
    lines = []
    if out.get("group"):
        lines.append(f"group: {out['group']}  geometry: {out['geometry']}")
    if out.get("k") is not None:
        lines.append(f"k = {out['k']}")
    if out.get("applicable") is False:
        lines.append(f"not applicable: {out['note']}")
    elif out.get("nontrivial_only_if") is not None:
        lines.append(f"nontrivial only if: {out['nontrivial_only_if']}")
    for key in ("note", "certified", "declared"):
        if out.get(key) not in (None, False) and key != "note":
            lines.append(f"{key}: {out[key]}")
        elif key == "note" and out.get("applicable") is not False \
                and out.get("note"):
            lines.append(f"note: {out['note']}")
    return 0, _plain(out), lines


# ------------------------------------------------------------------ parser

def _add_spec(p, required=True):
    p.add_argument("--spec", required=required, metavar="PATH",
                   help="algebra or geometry document")


def _add_common(p, product=True, paren=True, randomized=True):
    if product:
        p.add_argument("--product", choices=("algebra", "bracket",
                                             "pullback"), default=None)
    if paren:
        p.add_argument("--paren", choices=("left", "right", "balanced",
                                           "all"), default="left")
    if randomized:
        p.add_argument("--oracle", metavar="random:COUNT", default=None)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true",
                   help="emit the canonical report document")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obstructa",
        description="exact checks for algebra-valued form identities, "
                    "nilpotency certificates and geometric obstructions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi", help="polynomial identities on an algebra")
    _add_spec(p)
    p.add_argument("--identities", default="commutative,associative",
                   help="comma-separated; comm, anticomm, assoc, alt, "
                        "jacobi, ...")
    p.add_argument("--degrees", default=None,
                   help="check at form level on these degrees, e.g. 2,1")
    p.add_argument("--generators", type=int, default=None,
                   help=argparse.SUPPRESS)
    _add_common(p, paren=False, randomized=False)
    p.set_defaults(func=_cmd_pi)

    p = sub.add_parser("cd", help="identity table along a Cayley-Dickson "
                                  "tower")
    p.add_argument("--base", default="R")
    p.add_argument("--iterations", type=int, default=4)
    p.add_argument("--identities", default="comm,assoc,alt")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_cd)

    p = sub.add_parser("series", help="derived or lower central series")
    _add_spec(p)
    p.add_argument("--kind", choices=("derived", "lower_central"),
                   default="derived")
    _add_common(p, paren=False, randomized=False)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("nil", help="(k,s)-nilpotency of the whole algebra")
    _add_spec(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_nil)

    p = sub.add_parser("solv", help="(k,s)-solvability via a decomposition")
    _add_spec(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_solv)

    p = sub.add_parser("ehp", help="generic vanishing of the degree-n "
                                   "action form")
    _add_spec(p)
    p.add_argument("--dimension", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default=None, metavar="RATIONAL")
    p.add_argument("--variant", choices=VARIANTS, default="inhomogeneous")
    _add_common(p)
    p.set_defaults(func=_cmd_ehp)

    p = sub.add_parser("verdict", help="dimension thresholds with "
                                       "cross-checks")
    _add_spec(p)
    p.add_argument("--condition", default=None, metavar="ID",
                   help="check one condition against its certificate")
    p.add_argument("--dimension", type=int, default=None,
                   help="also report the claims at this dimension")
    _add_common(p)
    p.set_defaults(func=_cmd_verdict)

    p = sub.add_parser("catalog", help="compare engine verdicts against "
                                       "the catalog claims")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("berger", help="holonomy table and nontriviality "
                                      "rules")
    p.add_argument("--group", default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--dimension", default=None)
    p.add_argument("--context", choices=("linear", "extended_linear"),
                   default="extended_linear")
    p.add_argument("--with-torsion", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_berger)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    seed = getattr(args, "seed", DEFAULT_SEED)
    try:
        code, results, lines = args.func(args)
    except ConsistencyError as exc:
        print(f"cross-check contradiction: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EngineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(serialize(make_report(args.command, results, seed)))
    else:
        for line in lines:
            print(line)
        print(f"seed: {seed}"
              + (" (default)" if seed == DEFAULT_SEED else ""))
        print(f"exit: {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
