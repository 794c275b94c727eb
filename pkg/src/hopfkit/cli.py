"""Command-line interface: file ingestion, dispatch, report cache.

Subcommands: verify, invariants, builtin, classify-map, f-frobenius, nat.
Reports are deterministic functions of (canonicalized inputs, command,
seed, version) and are cached on disk under that content hash; stdout is
the report channel, stderr the diagnostics channel.  Exit code 0 iff no
verification failure and no inconsistency trap fired.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from typing import Optional

from . import __version__, builtins as lib
from .comodule import ComoduleAlgebra, f_frobenius_element, verify_comodule_algebra
from .bimod import HLBimodule, left_dual, regular_bimodule
from .hopf import HopfAlgebra, InconsistencyError, VerificationError, verify_axioms
from .invariants import compute_bundle, verify_pivotal
from .linalg import Vec
from .maps import BialgebraMap, classify_map
from .yd import frobenius_form_check, nat_algebra, nat_form_candidate

SCHEMA = 1


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError("input file not found: %s" % path)
    except json.JSONDecodeError as exc:
        raise CliError("cannot parse %s: line %d column %d: %s"
                       % (path, exc.lineno, exc.colno, exc.msg))


_BUILTIN_HOPF = {"group_algebra", "cyclic", "taft", "uqsl2", "dual_of", "trivial"}
_BUILTIN_MAPS = {"subalg_K_power", "inclusion_taft", "unit_map", "counit_map"}
_BUILTIN_COMODULES = {"regular_comodule", "trivial_comodule"}


def build_hopf(desc) -> HopfAlgebra:
    """Resolve a Hopf algebra from a path, file dict, or builtin descriptor."""
    if isinstance(desc, str):
        desc = _load_json(desc)
    if "builtin" in desc:
        name = desc["builtin"]
        params = desc.get("params", {})
        if name == "uqsl2":
            return lib.uqsl2(int(params["n"]),
                             int(params.get("which_root", 1)))
        if name == "taft":
            return lib.taft(int(params["n"]),
                            int(params.get("which_root", 2)))
        if name == "cyclic":
            from .fields import FieldSpec
            fs = FieldSpec.from_data(params["field"]) if "field" in params else None
            return lib.cyclic_group_algebra(int(params["n"]), fs)
        if name == "group_algebra":
            from .fields import FieldSpec
            fs = FieldSpec.from_data(params["field"]) if "field" in params else None
            return lib.group_algebra(params["table"], fs)
        if name == "trivial":
            from .fields import FieldSpec
            return lib.trivial_hopf(FieldSpec.from_data(params["field"]))
        if name == "dual_of":
            return lib.dual_of(build_hopf(params["of"]))
        raise CliError("unknown builtin Hopf algebra %r" % name)
    return HopfAlgebra.from_data(desc)


def build_map(desc) -> BialgebraMap:
    if isinstance(desc, str):
        desc = _load_json(desc)
    if "builtin" in desc:
        name = desc["builtin"]
        params = desc.get("params", {})
        if name == "subalg_K_power":
            return lib.subalg_K_power(int(params["n"]), int(params["d"]),
                                      int(params.get("which_root", 1)))
        if name == "inclusion_taft":
            return lib.inclusion_taft(int(params["n"]),
                                      int(params.get("which_root", 1)))
        if name == "unit_map":
            return lib.unit_map(build_hopf(params["of"]))
        if name == "counit_map":
            return lib.counit_map(build_hopf(params["of"]))
        raise CliError("unknown builtin map %r" % name)
    source = build_hopf(desc["source"])
    target = build_hopf(desc["target"])
    field = target.field
    triples = [(int(i), int(j), field.parse(lit))
               for i, j, lit in desc["matrix"]]
    return BialgebraMap.from_triples(source, target, triples,
                                     name=desc.get("name", "f"))


def build_comodule(desc, H: Optional[HopfAlgebra] = None) -> ComoduleAlgebra:
    if isinstance(desc, str):
        desc = _load_json(desc)
    if "builtin" in desc:
        name = desc["builtin"]
        params = desc.get("params", {})
        base = build_hopf(params["of"]) if "of" in params else H
        if base is None:
            raise CliError("builtin comodule needs params.of")
        if name == "regular_comodule":
            return lib.regular_comodule(base)
        if name == "trivial_comodule":
            return lib.trivial_comodule(base)
        raise CliError("unknown builtin comodule %r" % name)
    base = build_hopf(desc["hopf"]) if "hopf" in desc else H
    if base is None:
        raise CliError("comodule file needs a 'hopf' reference")
    return ComoduleAlgebra.from_data(base, desc, name=desc.get("name", "L"))


def build_bimodule(desc, H: HopfAlgebra, L: ComoduleAlgebra) -> HLBimodule:
    if isinstance(desc, str):
        desc = _load_json(desc)
    return HLBimodule.from_data(H, L, desc, name=desc.get("name", "P"))


# ---------------------------------------------------------------------------
# report cache
# ---------------------------------------------------------------------------

def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _cache_dir(args) -> Optional[str]:
    return args.cache_dir or os.environ.get("HOPFKIT_CACHE")


def _cache_key(command: str, payload, seed) -> str:
    blob = _canonical({"command": command, "input": payload,
                       "seed": seed, "version": __version__})
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_get(cache_dir: Optional[str], key: str) -> Optional[str]:
    if not cache_dir:
        return None
    path = os.path.join(cache_dir, key + ".json")
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    return None


def _cache_put(cache_dir: Optional[str], key: str, text: str) -> None:
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, os.path.join(cache_dir, key + ".json"))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _input_payload(desc):
    if isinstance(desc, str):
        return _load_json(desc)
    return desc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> dict:
    H = build_hopf_unverified(args.hopf)
    report = verify_axioms(H, use_cache=False)
    return {"verify": report.to_data(), "ok": report.ok}


def build_hopf_unverified(desc) -> HopfAlgebra:
    if isinstance(desc, str):
        desc = _load_json(desc)
    if "builtin" in desc:
        return build_hopf(desc)
    return HopfAlgebra.from_data(desc, verify=False)


def cmd_invariants(args) -> dict:
    H = build_hopf(args.hopf)
    candidates = {}
    for expr in args.pivot_candidate or []:
        candidates[expr] = H.parse_element(expr)
    bundle = compute_bundle(H, pivot_candidates=candidates)
    return {"invariants": bundle.to_data(), "ok": True}


def cmd_builtin(args) -> dict:
    params = {}
    for kv in args.param or []:
        if "=" not in kv:
            raise CliError("--param expects key=value, got %r" % kv)
        k, v = kv.split("=", 1)
        if v.lstrip().startswith("{"):
            params[k] = json.loads(v)
        else:
            try:
                params[k] = int(v)
            except ValueError:
                params[k] = v
    name = args.name
    if name in _BUILTIN_HOPF:
        obj = build_hopf({"builtin": name, "params": params})
        data = obj.to_data()
    elif name in _BUILTIN_MAPS:
        f = build_map({"builtin": name, "params": params})
        data = {
            "source": f.source.to_data(),
            "target": f.target.to_data(),
            "matrix": [[i, j, f.target.field.format(c)]
                       for j, col in enumerate(f.columns)
                       for i, c in sorted(col.items())],
            "name": f.name,
        }
    elif name in _BUILTIN_COMODULES:
        if "of" not in params:
            raise CliError("builtin comodules need --param of=<path or "
                           "inline {...} descriptor>")
        L = build_comodule({"builtin": name, "params": params})
        data = dict(L.to_data())
        data["hopf"] = params["of"] if isinstance(params["of"], dict) else \
            _input_payload(params["of"])
        data["name"] = L.name
    else:
        raise CliError("unknown builtin %r" % name)
    return {"builtin": name, "data": data, "ok": True}


def cmd_classify_map(args) -> dict:
    f = build_map(args.map)
    cls = classify_map(f, perfect_mode=args.perfect)
    return {"classification": cls.to_data(), "ok": True}


def cmd_f_frobenius(args) -> dict:
    f = build_map(args.map)
    L = build_comodule(args.comodule, H=f.source)
    bundle_src = compute_bundle(f.source)
    bundle_tgt = compute_bundle(f.target)
    cls = classify_map(f, bundle_src=bundle_src, bundle_tgt=bundle_tgt)
    res = f_frobenius_element(f, L, cls, bundle_src, bundle_tgt,
                              seed=args.seed, attempts=args.attempts)
    return {"f_frobenius": res.to_data(L),
            "classification": cls.to_data(), "ok": True}


def cmd_nat(args) -> dict:
    H = build_hopf(args.hopf)
    L = build_comodule(args.comodule, H=H)
    P = None
    if args.bimodule:
        P = build_bimodule(args.bimodule, H, L)
    alg, ld = nat_algebra(H, L, P)
    form, method = nat_form_candidate(alg, ld, H, L)
    g_piv = None
    if args.pivot:
        g_piv = H.parse_element(args.pivot)
        if not verify_pivotal(H, g_piv):
            raise CliError("--pivot element is not pivotal")
    report = frobenius_form_check(alg, form, g_piv=g_piv)
    from .yd import canonical_form_space
    return {
        "nat": {
            "dim": alg.module.dim,
            "algebra_ok": True,
            "commutative": alg.commutative,
            "form": alg.module.format_vec(form),
            "form_method": method,
            "form_space_dim": len(canonical_form_space(alg)),
            "frobenius_form": report,
        },
        "ok": True,
    }


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help="report cache directory "
                                            "(or env HOPFKIT_CACHE)")
    p = argparse.ArgumentParser(
        prog="hopfkit",
        description="Exact decision procedures for finite-dimensional Hopf "
                    "algebras given by structure constants.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("verify", parents=[common],
                       help="check the Hopf axioms of a spec file")
    q.add_argument("hopf")

    q = sub.add_parser("invariants", parents=[common],
                       help="integrals, cointegral, modular data, flags")
    q.add_argument("hopf")
    q.add_argument("--pivot-candidate", action="append",
                   help="element expression to test for pivotality")

    q = sub.add_parser("builtin", parents=[common],
                       help="emit a builtin as a spec file")
    q.add_argument("name")
    q.add_argument("--param", action="append", help="key=value")

    q = sub.add_parser("classify-map", parents=[common],
                       help="perfect / Frobenius / tensor-Frobenius")
    q.add_argument("map")
    q.add_argument("--perfect", default="auto",
                   choices=("auto", "split", "assert", "skip"))

    q = sub.add_parser("f-frobenius", parents=[common],
                       help="solve for a twisted Frobenius element")
    q.add_argument("map")
    q.add_argument("comodule")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--attempts", type=int, default=64)

    q = sub.add_parser("nat", parents=[common],
                       help="internal-natural-transformation algebra report")
    q.add_argument("hopf")
    q.add_argument("comodule")
    q.add_argument("--bimodule")
    q.add_argument("--pivot", help="pivotal element expression")
    return p


_PERFECT_MODES = {"auto": "auto", "split": "split_test",
                  "assert": "assert_injective", "skip": "skip"}


def _payload_for(args):
    cmd = args.command
    if cmd == "verify":
        return _input_payload(args.hopf)
    if cmd == "invariants":
        return {"hopf": _input_payload(args.hopf),
                "pivot_candidates": args.pivot_candidate or []}
    if cmd == "builtin":
        return {"name": args.name, "params": sorted(args.param or [])}
    if cmd == "classify-map":
        return {"map": _input_payload(args.map), "perfect": args.perfect}
    if cmd == "f-frobenius":
        return {"map": _input_payload(args.map),
                "comodule": _input_payload(args.comodule),
                "attempts": args.attempts}
    if cmd == "nat":
        return {"hopf": _input_payload(args.hopf),
                "comodule": _input_payload(args.comodule),
                "bimodule": _input_payload(args.bimodule)
                if args.bimodule else None,
                "pivot": args.pivot}
    raise CliError("unknown command %r" % cmd)


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk("%s%s." % (prefix, k), obj[k])
        elif isinstance(obj, list):
            lines.append("%s = %s" % (prefix[:-1], json.dumps(obj)))
        else:
            lines.append("%s = %s" % (prefix[:-1], obj))

    walk("", report)
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cache_dir = _cache_dir(args)
    try:
        payload = _payload_for(args)
        seed = getattr(args, "seed", 0)
        key = _cache_key(args.command, payload, seed)
        text = _cache_get(cache_dir, key)
        if text is None:
            if args.command == "classify-map":
                args.perfect = _PERFECT_MODES[args.perfect]
            handler = {
                "verify": cmd_verify,
                "invariants": cmd_invariants,
                "builtin": cmd_builtin,
                "classify-map": cmd_classify_map,
                "f-frobenius": cmd_f_frobenius,
                "nat": cmd_nat,
            }[args.command]
            report = handler(args)
            report["schema"] = SCHEMA
            report["command"] = args.command
            report["input_hash"] = key
            report["version"] = __version__
            if seed is not None:
                report["seed"] = seed
            text = json.dumps(report, indent=2, sort_keys=True) + "\n"
            _cache_put(cache_dir, key, text)
        report = json.loads(text)
        rendered = text if args.format == "json" else _render(report,
                                                              args.format)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        else:
            sys.stdout.write(rendered)
        return 0 if report.get("ok") else 1
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except VerificationError as exc:
        report = {"schema": SCHEMA, "command": args.command, "ok": False,
                  "verify": exc.report.to_data(), "version": __version__}
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return 1
    except InconsistencyError as exc:
        print("inconsistency trap: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
