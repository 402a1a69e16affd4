"""Batch front end: load a JSON scenario, dispatch to the library, emit a
deterministic report.

Exit codes: 0 all checks passed, 1 an axiom or claim failed, 2 input
error, 3 enumeration guard tripped.  Reports are byte-identical across
runs and thread counts; --threads is accepted for interface stability and
validated, the table scans are already vectorized internally.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cohomology, extensions, samples
from .catgroups import build_catgroup, check_axioms, ker
from .cohomology import Cochain3, h2, is_3cocycle, obstruction
from .crossed import BraidedGammaCrossedModule
from .errors import SearchSpaceTooLarge, XmodcatError
from .functors import (
    catgroup_to_crossed,
    check_graded_functor,
    extract_factor_set,
    functor_to_morphism,
    is_regular_factor_set,
    morphism_to_functor,
    validate_factor_set,
)
from .groups import FiniteGroup, GammaAction, GammaModule
from .crossed import identity_morphism

SCHEMA_VERSION = 1
KINDS = ("validate", "build-catgroup", "check-axioms", "factor-set",
         "cohomology-h2", "obstruction", "schreier", "classify", "roundtrip")


class InputError(Exception):
    pass


def _load_scenario(path, kind):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read scenario: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(obj, dict):
        raise InputError("scenario must be a JSON object")
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {obj.get('schema_version')!r}")
    if obj.get("kind") != kind:
        raise InputError(f"scenario kind {obj.get('kind')!r} does not match "
                         f"subcommand {kind!r}")
    return obj.get("inputs", {}), obj.get("options", {})


def _group(obj, name):
    try:
        return FiniteGroup(obj["table"])
    except KeyError as exc:
        raise InputError(f"{name}: missing field {exc}") from exc
    except XmodcatError as exc:
        raise InputError(f"{name}: {exc}") from exc


def _module(obj):
    try:
        return BraidedGammaCrossedModule.from_json(obj)
    except KeyError as exc:
        raise InputError(f"module: missing field {exc}") from exc
    except XmodcatError as exc:
        raise InputError(f"module: {exc}") from exc


def _gamma_module(obj, gamma, name):
    grp = _group(obj, name)
    try:
        act = GammaAction(gamma, grp, obj["act"])
        return GammaModule(grp, act)
    except KeyError as exc:
        raise InputError(f"{name}: missing field {exc}") from exc
    except XmodcatError as exc:
        raise InputError(f"{name}: {exc}") from exc


def _cochain3(obj, M, N):
    try:
        return Cochain3(M, N, obj["assoc"], obj["braid"], obj["tensor"],
                        obj["comp"])
    except KeyError as exc:
        raise InputError(f"cochain: missing field {exc}") from exc
    except XmodcatError as exc:
        raise InputError(f"cochain: {exc}") from exc


def _seed(options):
    env = os.environ.get("XMODCAT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"XMODCAT_SEED must be an integer: {env!r}") from exc
    return int(options.get("seed", 0))


def _report_axioms(lines, report, prefix=""):
    ok = True
    for e in report.entries:
        status = "pass" if e.ok else f"FAIL x{e.fail_count} witness={e.first_witness}"
        lines.append(f"{prefix}{e.key}: {status}")
        ok = ok and e.ok
    return ok


def run_validate(inputs, options, guard):
    m = _module(inputs["module"])
    report = m.validate()
    lines = [f"module |B|={m.B.order} |D|={m.D.order} |gamma|={m.gamma.order}"]
    ok = _report_axioms(lines, report)
    lines.append(f"result: {'all-pass' if ok else 'axiom-failure'}")
    data = {"ok": ok,
            "axioms": {e.key: {"ok": e.ok, "fail_count": e.fail_count,
                               "witness": e.first_witness}
                       for e in report.entries}}
    return (0 if ok else 1), lines, data


def run_build_catgroup(inputs, options, guard):
    m = _module(inputs["module"])
    G = build_catgroup(m)
    lines = [f"objects: {G.n_obj}", f"morphisms: {G.n_mor}",
             f"grades: {G.gamma.order}",
             f"kernel-morphisms: {ker(G).n_mor}"]
    data = {"objects": G.n_obj, "morphisms": G.n_mor,
            "grades": G.gamma.order}
    if options.get("dump"):
        data["category"] = G.to_json()
    return 0, lines, data


def run_check_axioms(inputs, options, guard):
    mods = []
    if "module" in inputs:
        mods.append(_module(inputs["module"]))
    count = int(options.get("random_count", 0))
    if count:
        mods.extend(samples.random_corpus(_seed(options), count))
    if not mods:
        raise InputError("check-axioms needs a module or a random_count")
    lines = []
    all_ok = True
    for i, m in enumerate(mods):
        G = build_catgroup(m)
        rep = check_axioms(G, symmetric=bool(options.get("symmetric")))
        ok = rep.ok and m.is_valid
        all_ok = all_ok and ok
        first = rep.first_failure() or m.validate().first_failure()
        lines.append(f"module[{i}] |B|={m.B.order} |D|={m.D.order} "
                     f"|gamma|={m.gamma.order}: "
                     + ("pass" if ok else f"FAIL {first}"))
    lines.append(f"result: {'all-pass' if all_ok else 'axiom-failure'}")
    return (0 if all_ok else 1), lines, {"ok": all_ok, "count": len(mods)}


def run_factor_set(inputs, options, guard):
    m = _module(inputs["module"])
    G = build_catgroup(m)
    fs = extract_factor_set(G)
    rep = validate_factor_set(fs)
    lines = []
    ok = _report_axioms(lines, rep)
    theta_id = fs.theta_is_identity()
    regular = is_regular_factor_set(fs)
    lines.append(f"theta-identity: {theta_id}")
    lines.append(f"regular: {regular}")
    lines.append(f"result: {'all-pass' if ok and regular else 'axiom-failure'}")
    data = {"ok": ok, "theta_identity": theta_id, "regular": regular}
    return (0 if ok and regular else 1), lines, data


def run_cohomology_h2(inputs, options, guard):
    gamma = _group(inputs["gamma"], "gamma")
    Q = _gamma_module(inputs["Q"], gamma, "Q")
    B = _gamma_module(inputs["B"], gamma, "B")
    method = options.get("method", "snf")
    res = h2(Q, B, guard=guard, method=method)
    lines = [f"invariants: {res.invariants}",
             f"class-count: {res.class_count}",
             f"method: {res.method}"]
    for i, rep in enumerate(res.representatives):
        lines.append(f"representative[{i}]: qq={rep.qq} qgamma={rep.qg}")
    data = {"invariants": res.invariants, "class_count": res.class_count,
            "representatives": [rep.to_json() for rep in res.representatives]}
    return 0, lines, data


def run_obstruction(inputs, options, guard):
    gamma = _group(inputs["gamma"], "gamma")
    M = _gamma_module(inputs["M"], gamma, "M")
    N = _gamma_module(inputs["N"], gamma, "N")
    Mp = _gamma_module(inputs["Mp"], gamma, "Mp")
    Np = _gamma_module(inputs["Np"], gamma, "Np")
    h = _cochain3(inputs["h"], M, N)
    hp = _cochain3(inputs["hp"], Mp, Np)
    phi = inputs["phi"]
    f = inputs["f"]
    k = obstruction(phi, f, h, hp, Qmod=M)
    ok3, wit = is_3cocycle(k)
    lines = [f"cocycle: {ok3}" + ("" if ok3 else f" witness={wit}")]
    data = {"obstruction": k.to_json(), "cocycle": ok3}
    if options.get("decide_vanishing", True):
        vanish = cohomology.class_vanishes(k, (M, N, h), (Mp, Np, hp),
                                           phi, f, guard=guard)
        lines.append(f"vanishes: {vanish}")
        data["vanishes"] = vanish
    lines.append("result: all-pass" if ok3 else "result: axiom-failure")
    return (0 if ok3 else 1), lines, data


def run_schreier(inputs, options, guard):
    m = _module(inputs["module"])
    Q = _gamma_module(inputs["Q"], m.gamma, "Q")
    psi = inputs["psi"]
    rep = extensions.schreier_bijection_check(m, Q, psi, guard=guard)
    lines = [f"functor-classes: {rep.functor_class_count}",
             f"extension-classes: {rep.extension_class_count}",
             f"well-defined: {rep.well_defined}",
             f"injective: {rep.injective}",
             f"surjective: {rep.surjective}",
             f"reverse-homotopies: {rep.reverse_homotopies}",
             f"result: {'all-pass' if rep.ok else 'claim-failure'}"]
    data = {"functor_classes": rep.functor_class_count,
            "extension_classes": rep.extension_class_count,
            "ok": rep.ok}
    return (0 if rep.ok else 1), lines, data


def run_classify(inputs, options, guard):
    m = _module(inputs["module"])
    Q = _gamma_module(inputs["Q"], m.gamma, "Q")
    psi = inputs["psi"]
    res = extensions.classify(m, Q, psi, guard=guard)
    lines = [f"obstructed: {res.obstructed}"]
    if not res.obstructed:
        lines.append(f"h2-invariants: {res.h2_invariants}")
        lines.append(f"class-count: {res.class_count}")
        from .groups import abelian_invariants
        for i, e in enumerate(res.representatives):
            lines.append(f"representative[{i}]: |E|={e.E.group.order} "
                         f"invariants={abelian_invariants(e.E.group)}")
    lines.append("result: all-pass")
    return 0, lines, res.to_json()


def run_roundtrip(inputs, options, guard):
    m = _module(inputs["module"])
    G = build_catgroup(m)
    rep = check_axioms(G)
    m2 = catgroup_to_crossed(G)
    G2 = build_catgroup(m2)
    rebuilt_equal = (G2 == G)
    mid = identity_morphism(m)
    Fid = morphism_to_functor(mid, G, G)
    functor_ok = check_graded_functor(Fid).ok
    back = functor_to_morphism(Fid) == mid
    ok = rep.ok and rebuilt_equal and functor_ok and back
    lines = [f"axioms: {rep.ok}",
             f"rebuilt-category-equal: {rebuilt_equal}",
             f"identity-translation-coherent: {functor_ok}",
             f"identity-translation-roundtrip: {back}",
             f"result: {'all-pass' if ok else 'claim-failure'}"]
    data = {"ok": ok, "rebuilt_equal": rebuilt_equal}
    return (0 if ok else 1), lines, data


RUNNERS = {
    "validate": run_validate,
    "build-catgroup": run_build_catgroup,
    "check-axioms": run_check_axioms,
    "factor-set": run_factor_set,
    "cohomology-h2": run_cohomology_h2,
    "obstruction": run_obstruction,
    "schreier": run_schreier,
    "classify": run_classify,
    "roundtrip": run_roundtrip,
}


def run_scenario_text(kind, path, guard):
    """Execute one scenario; returns (exit_code, report_text, data)."""
    inputs, options = _load_scenario(path, kind)
    code, lines, data = RUNNERS[kind](inputs, options, guard)
    text = "\n".join(lines) + "\n"
    return code, text, data


def default_corpus_dir():
    return Path(__file__).resolve().parent / "corpus"


def run_corpus(path, update, guard):
    base = Path(path) if path else default_corpus_dir()
    scenarios = sorted(base.glob("*.json"))
    if not scenarios:
        print(f"no scenario files under {base}")
        return 2
    worst = 0
    for sc in scenarios:
        with open(sc, "r", encoding="utf-8") as fh:
            kind = json.load(fh).get("kind")
        if kind not in RUNNERS:
            print(f"{sc.name}: unknown kind {kind!r}")
            worst = max(worst, 2)
            continue
        code, text, _ = run_scenario_text(kind, sc, guard)
        expected = sc.with_suffix(".expected.txt")
        if update:
            expected.write_text(text, encoding="utf-8")
            print(f"{sc.name}: updated")
            continue
        if not expected.exists():
            print(f"{sc.name}: missing expected report")
            worst = max(worst, 2)
            continue
        want = expected.read_text(encoding="utf-8")
        if text == want:
            print(f"{sc.name}: match")
            worst = max(worst, code)
        else:
            got_lines = text.splitlines()
            want_lines = want.splitlines()
            diff_at = next((i for i, (a, b) in
                            enumerate(zip(want_lines, got_lines)) if a != b),
                           min(len(want_lines), len(got_lines)))
            print(f"{sc.name}: DIFF at line {diff_at + 1}")
            worst = max(worst, 1)
    return worst


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xmodcat",
        description="Validate, build, and classify finite braided equivariant "
                    "crossed modules and their graded categorical groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} scenario file")
        p.add_argument("scenario", help="path to the scenario JSON file")
        p.add_argument("--json", dest="json_path", default=None,
                       help="also write the report as JSON to this path")
        p.add_argument("--guard", type=int, default=2 ** 32,
                       help="enumeration guard (candidate count)")
        p.add_argument("--threads", type=int, default=1,
                       help="parallelism degree (reports are identical at any value)")
    p = sub.add_parser("corpus", help="run the bundled golden scenarios")
    p.add_argument("path", nargs="?", default=None,
                   help="scenario directory (bundled corpus by default)")
    p.add_argument("--update", action="store_true",
                   help="rewrite the expected reports")
    p.add_argument("--guard", type=int, default=2 ** 32)
    p.add_argument("--threads", type=int, default=1)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    if args.command == "corpus":
        return run_corpus(args.path, args.update, args.guard)
    try:
        code, text, data = run_scenario_text(args.command, args.scenario,
                                             args.guard)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except SearchSpaceTooLarge as exc:
        print(f"guard tripped: {exc}", file=sys.stderr)
        return 3
    except XmodcatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump({"kind": args.command, "exit_code": code, "report": data},
                      fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
