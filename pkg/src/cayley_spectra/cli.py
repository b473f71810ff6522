"""Command-line interface.

One JSON job document (file or stdin) plus flag overrides drives every
command.  Output is deterministic: byte-identical JSON for identical jobs,
or a human-readable table.  Exit codes: 0 all checks passed, 1 a check
failed, 2 bad input (the message names the offending field).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .characters import (
    CharacterTable,
    dixon_character_table,
    verify_galois_character_identity,
    verify_orthogonality,
)
from .cyclotomic import CycInt, get_context
from .errors import InternalConsistencyError
from .galois import (
    GaloisSubgroup,
    all_subgroups,
    check_power_closure_consistency,
    cyclic_subgroups,
    galois_conjugacy_classes,
    is_power_closed,
    is_union_of_galois_classes,
    subgroup_closure,
    unit_group,
)
from .group_core import ClassData, Group, GroupSpec, build_group, conjugacy_classes
from .oracle import (
    DEFAULT_ORACLE_CAP,
    adjacency_matrix,
    compare_spectra,
    oracle_power_closed,
    oracle_spectrum,
    verify_spectrum_exact,
)
from .spectra import (
    ConnectionSet,
    Spectrum,
    all_eigenvalues_in_subfield,
    all_eigenvalues_integral,
    check_integrality,
    check_membership,
    eigenvalues_via_characters,
    make_connection_set,
)

SCHEMA = "v1"
DEFAULT_SWEEP_LIMIT = 14
NAIVE_ORACLE_CAP = 60
EXACT_VERIFY_ORDER = 24
EXACT_VERIFY_CLASSES = 8
COMMANDS = (
    "spectrum",
    "classes",
    "check-integrality",
    "check-membership",
    "character-table",
    "verify-all",
)


class InputError(Exception):
    """Bad job input; the first argument names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ---------------------------------------------------------------------------
# job assembly


def _arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cayley-spectra",
        description="Exact spectra of normal Cayley digraphs and related checks.",
    )
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--input", help="job JSON file, or - for stdin")
    p.add_argument("--group", help="group spec string, e.g. dihedral(4)")
    p.add_argument("--classes", help="comma-separated conjugacy class indices")
    p.add_argument("--elements", help="comma-separated element indices")
    p.add_argument("--connection", help='connection spec: JSON, "all-nonidentity" or "sweep"')
    p.add_argument("--gamma", help='unit subgroup: generators "3,5", "rational" or "splitting"')
    p.add_argument("--oracle", choices=("auto", "on", "off"))
    p.add_argument("--tol", type=float, help="oracle comparison tolerance")
    p.add_argument("--output", choices=("json", "table"))
    p.add_argument("--sweep-limit", type=int, dest="sweep_limit")
    return p


def _load_document(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise InputError("input", str(exc))
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise InputError("input", f"invalid JSON: {exc}")
    if not isinstance(doc, dict):
        raise InputError("input", "job document must be a JSON object")
    return doc


def _assemble_job(args: argparse.Namespace) -> dict:
    job = dict(_load_document(args.input))
    if args.group is not None:
        job["group"] = args.group
    if args.classes is not None:
        job["connection"] = {"classes": _int_list(args.classes, "classes")}
    if args.elements is not None:
        job["connection"] = {"elements": _int_list(args.elements, "elements")}
    if args.connection is not None:
        job["connection"] = _maybe_json(args.connection)
    if args.gamma is not None:
        job["gamma"] = _maybe_json(args.gamma)
    if args.oracle is not None:
        job["oracle"] = args.oracle
    if args.tol is not None:
        job["tolerance"] = args.tol
    if args.output is not None:
        job["output"] = args.output
    if args.sweep_limit is not None:
        job["sweep_limit"] = args.sweep_limit
    if args.command is not None:
        job["command"] = args.command
    job.setdefault("oracle", "auto")
    job.setdefault("tolerance", 1e-8)
    job.setdefault("output", "json")
    job.setdefault("sweep_limit", DEFAULT_SWEEP_LIMIT)
    job.setdefault("oracle_cap", DEFAULT_ORACLE_CAP)
    if "command" not in job:
        raise InputError("command", f"missing; expected one of {', '.join(COMMANDS)}")
    if job["command"] not in COMMANDS:
        raise InputError("command", f"unknown command {job['command']!r}")
    if job["oracle"] not in ("auto", "on", "off"):
        raise InputError("oracle", f"expected auto, on or off, got {job['oracle']!r}")
    if job["output"] not in ("json", "table"):
        raise InputError("output", f"expected json or table, got {job['output']!r}")
    return job


def _int_list(text: str, field: str) -> list[int]:
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(field, f"expected integers, got {text!r}")


def _maybe_json(text: str):
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            return json.loads(text)
        except ValueError as exc:
            raise InputError("connection", f"invalid JSON: {exc}")
    if text and all(c.isdigit() or c in ", " for c in text):
        return [int(p) for p in text.replace(",", " ").split()]
    return text


def _group_from_job(job: dict) -> tuple[GroupSpec, Group, ClassData]:
    if "group" not in job:
        raise InputError("group", "missing group spec")
    try:
        spec = GroupSpec.from_json(job["group"])
        group = build_group(spec, cap=int(job.get("group_cap", 5040)))
    except ValueError as exc:
        raise InputError("group", str(exc))
    return spec, group, conjugacy_classes(group)


def _connection_from_job(job: dict, group: Group, cd: ClassData) -> ConnectionSet:
    conn = job.get("connection")
    if conn is None:
        raise InputError("connection", "missing connection set")
    if isinstance(conn, list):
        conn = {"classes": conn}
    try:
        return make_connection_set(conn, group, cd)
    except (ValueError, TypeError) as exc:
        raise InputError("connection", str(exc))


def _gamma_from_job(job: dict, m: int) -> GaloisSubgroup:
    spec = job.get("gamma")
    if spec is None:
        raise InputError("gamma", "missing unit subgroup spec")
    if isinstance(spec, dict):
        spec = spec.get("generators", spec)
    try:
        if spec == "rational":
            return unit_group(m)
        if spec == "splitting":
            return subgroup_closure(m, ())
        if isinstance(spec, list):
            return subgroup_closure(m, tuple(int(t) for t in spec))
    except (ValueError, TypeError) as exc:
        raise InputError("gamma", str(exc))
    raise InputError("gamma", f"cannot parse {spec!r}")


def _wants_sweep(job: dict) -> bool:
    return job.get("connection") == "sweep"


def _sweep_subsets(cd: ClassData, limit: int) -> list[tuple[int, ...]]:
    """All subsets of non-identity classes, in bitmask order."""
    if cd.k > limit:
        raise InputError(
            "connection",
            f"sweep over {cd.k} classes exceeds the limit of {limit}",
        )
    rest = list(range(1, cd.k))
    out = []
    for mask in range(1 << len(rest)):
        out.append(tuple(rest[i] for i in range(len(rest)) if mask >> i & 1))
    return out


# ---------------------------------------------------------------------------
# serialization


def _approx(value: complex) -> dict:
    re = round(value.real, 12) + 0.0
    im = round(value.imag, 12) + 0.0
    return {"re": re, "im": im}


def _cyc_json(v: CycInt) -> dict:
    return {"m": v.ctx.m, "coeffs": list(v.coeffs)}


def _value_json(entry) -> dict:
    v = entry.value
    rat = v.as_fraction()
    if rat is not None:
        out = {"rational": str(rat)}
    else:
        out = {"cyclotomic": _cyc_json(v.numerator), "degree_divisor": v.denominator}
    out["approx"] = _approx(v.to_complex())
    return out


def _group_json(spec: GroupSpec, group: Group) -> dict:
    return {"spec": spec.describe(), "order": group.n, "exponent": group.exponent}


def _connection_json(conn: ConnectionSet) -> dict:
    return {
        "classes": list(conn.class_indices),
        "size": conn.size,
        "contains_identity": conn.contains_identity,
    }


def _gamma_json(gamma: GaloisSubgroup) -> dict:
    return {"modulus": gamma.m, "elements": list(gamma.elements)}


def _spectrum_json(sp: Spectrum) -> list[dict]:
    return [
        {
            "character": e.character,
            "degree": e.degree,
            "multiplicity": e.multiplicity,
            "value": _value_json(e),
        }
        for e in sp.entries
    ]


def _exact_value_str(entry) -> str:
    v = entry.value
    rat = v.as_fraction()
    if rat is not None:
        return str(rat)
    if v.denominator == 1:
        return str(v.numerator)
    return f"({v.numerator})/{v.denominator}"


# ---------------------------------------------------------------------------
# commands


def _run_float_oracle(sp: Spectrum, group: Group, conn: ConnectionSet, job: dict):
    """Returns an oracle report dict, or None when switched off or too big."""
    mode = job["oracle"]
    cap = int(job["oracle_cap"])
    if mode == "off" or (mode == "auto" and group.n > cap):
        return None
    adjacency = adjacency_matrix(group, conn.elements, cap=max(cap, group.n))
    res = compare_spectra(sp, oracle_spectrum(adjacency), tolerance=float(job["tolerance"]))
    return {
        "kind": "dense-eigensolver",
        "passed": res.passed,
        "max_distance": round(res.max_distance, 14),
        "tolerance": res.tolerance,
    }


def cmd_spectrum(job: dict):
    spec, group, cd = _group_from_job(job)
    conn = _connection_from_job(job, group, cd)
    table = dixon_character_table(group, cd)
    sp = eigenvalues_via_characters(conn, table, cd)
    payload = {
        "schema": SCHEMA,
        "command": "spectrum",
        "group": _group_json(spec, group),
        "connection": _connection_json(conn),
        "entries": _spectrum_json(sp),
        "all_integral": all_eigenvalues_integral(sp),
    }
    ok = True
    oracle = _run_float_oracle(sp, group, conn, job)
    if oracle is not None:
        payload["oracle"] = oracle
        ok = oracle["passed"]
    return payload, ok


def cmd_classes(job: dict):
    spec, group, cd = _group_from_job(job)
    payload = {
        "schema": SCHEMA,
        "command": "classes",
        "group": _group_json(spec, group),
        "classes": [
            {
                "index": j,
                "size": cd.sizes[j],
                "order": int(group.orders[cd.representatives[j]]),
                "representative": group.labels[cd.representatives[j]],
                "members": list(cd.classes[j]),
                "inverse_class": cd.inverse_class[j],
            }
            for j in range(cd.k)
        ],
    }
    return payload, True


def cmd_check_integrality(job: dict):
    spec, group, cd = _group_from_job(job)
    table = dixon_character_table(group, cd)
    base = {
        "schema": SCHEMA,
        "command": "check-integrality",
        "group": _group_json(spec, group),
    }
    if _wants_sweep(job):
        subsets = _sweep_subsets(cd, int(job["sweep_limit"]))
        results = []
        disagreements = 0
        for subset in subsets:
            conn = make_connection_set({"classes": subset}, group, cd)
            rep = check_integrality(group, cd, conn, table)
            disagreements += not rep.agree
            results.append(
                {
                    "classes": list(subset),
                    "integral": rep.integral,
                    "power_closed": rep.power_closed,
                    "agree": rep.agree,
                }
            )
        base.update(
            {"sweep": results, "subsets": len(subsets), "disagreements": disagreements}
        )
        return base, disagreements == 0
    conn = _connection_from_job(job, group, cd)
    rep = check_integrality(group, cd, conn, table)
    base.update(
        {
            "connection": _connection_json(conn),
            "integral": rep.integral,
            "power_closed": rep.power_closed,
            "agree": rep.agree,
            "offending_character": rep.offending_character,
            "offending_power": list(rep.offending_power) if rep.offending_power else None,
        }
    )
    return base, rep.agree


def cmd_check_membership(job: dict):
    spec, group, cd = _group_from_job(job)
    gamma = _gamma_from_job(job, group.exponent)
    table = dixon_character_table(group, cd)
    merged = galois_conjugacy_classes(group, cd, gamma)
    base = {
        "schema": SCHEMA,
        "command": "check-membership",
        "group": _group_json(spec, group),
        "gamma": _gamma_json(gamma),
    }
    if _wants_sweep(job):
        subsets = _sweep_subsets(cd, int(job["sweep_limit"]))
        results = []
        disagreements = 0
        for subset in subsets:
            conn = make_connection_set({"classes": subset}, group, cd)
            rep = check_membership(group, cd, conn, table, gamma, merged)
            disagreements += not rep.agree
            results.append(
                {
                    "classes": list(subset),
                    "in_subfield": rep.in_subfield,
                    "class_closed": rep.class_closed,
                    "agree": rep.agree,
                }
            )
        base.update(
            {"sweep": results, "subsets": len(subsets), "disagreements": disagreements}
        )
        return base, disagreements == 0
    conn = _connection_from_job(job, group, cd)
    rep = check_membership(group, cd, conn, table, gamma, merged)
    base.update(
        {
            "connection": _connection_json(conn),
            "in_subfield": rep.in_subfield,
            "class_closed": rep.class_closed,
            "agree": rep.agree,
            "offending_character": rep.offending_character,
            "offending_class": rep.offending_class,
        }
    )
    return base, rep.agree


def cmd_character_table(job: dict):
    spec, group, cd = _group_from_job(job)
    table = dixon_character_table(group, cd)
    rows = []
    for r in range(table.k):
        rows.append(
            [
                dict(_cyc_json(v), approx=_approx(v.to_complex()))
                for v in table.values[r]
            ]
        )
    payload = {
        "schema": SCHEMA,
        "command": "character-table",
        "group": _group_json(spec, group),
        "conductor": table.m,
        "prime": table.prime,
        "degrees": list(table.degrees),
        "classes": [
            {
                "index": j,
                "size": cd.sizes[j],
                "representative": group.labels[cd.representatives[j]],
            }
            for j in range(cd.k)
        ],
        "rows": rows,
    }
    return payload, True


# ---------------------------------------------------------------------------
# verify-all


def _default_corpus() -> list[str]:
    text = resources.files("cayley_spectra").joinpath("data/corpus.json").read_text()
    return json.loads(text)["groups"]


def _gamma_lattice(m: int) -> list[GaloisSubgroup]:
    """Subgroups of the units mod m used for the membership sweep."""
    from .cyclotomic import totient

    if totient(m) <= 24:
        return all_subgroups(m)
    seen = {}
    for g in [subgroup_closure(m, ())] + cyclic_subgroups(m) + [unit_group(m)]:
        seen[g.elements] = g
    return [seen[k] for k in sorted(seen)]


def _verify_group(entry, job: dict) -> dict:
    spec = GroupSpec.from_json(entry)
    group = build_group(spec)
    cd = conjugacy_classes(group)
    checks: dict[str, str] = {}

    try:
        table = dixon_character_table(group, cd)
    except InternalConsistencyError:
        checks["character-table"] = "fail"
        return {
            "group": spec.describe(),
            "order": group.n,
            "class_count": cd.k,
            "checks": checks,
        }

    checks["character-orthogonality"] = (
        "pass" if verify_orthogonality(table, cd, group.n) else "fail"
    )
    checks["galois-character-identity"] = (
        "pass"
        if verify_galois_character_identity(table, cd, unit_group(group.exponent))
        else "fail"
    )

    limit = int(job["sweep_limit"])
    if cd.k > limit:
        for name in (
            "integrality-equivalence",
            "membership-equivalence",
            "power-closure-consistency",
            "spectrum-oracle-float",
            "spectrum-oracle-exact",
        ):
            checks[name] = "skip"
        return {
            "group": spec.describe(),
            "order": group.n,
            "class_count": cd.k,
            "checks": checks,
        }

    subsets = _sweep_subsets(cd, limit)
    gammas = _gamma_lattice(group.exponent)
    merged = [galois_conjugacy_classes(group, cd, g) for g in gammas]

    run_float = job["oracle"] != "off" and group.n <= int(job["oracle_cap"])
    run_exact = group.n <= EXACT_VERIFY_ORDER and cd.k <= EXACT_VERIFY_CLASSES
    run_naive = group.n <= NAIVE_ORACLE_CAP

    integrality_ok = True
    membership_ok = True
    closure_ok = True
    float_ok = True
    exact_ok = True

    for subset in subsets:
        conn = make_connection_set({"classes": subset}, group, cd)
        sp = eigenvalues_via_characters(conn, table, cd)

        integral = all_eigenvalues_integral(sp)
        closed = is_power_closed(conn.elements, group)
        if integral != closed:
            integrality_ok = False

        for gamma, mg in zip(gammas, merged):
            inside = all_eigenvalues_in_subfield(sp, gamma)
            union_ok, _ = is_union_of_galois_classes(subset, cd, mg)
            if inside != union_ok:
                membership_ok = False

        if not check_power_closure_consistency(group, cd, subset):
            closure_ok = False
        if run_naive and oracle_power_closed(conn.elements, group) != closed:
            closure_ok = False

        if run_float:
            adjacency = adjacency_matrix(group, conn.elements, cap=group.n)
            res = compare_spectra(
                sp, oracle_spectrum(adjacency), tolerance=float(job["tolerance"])
            )
            if not res.passed:
                float_ok = False
        if run_exact:
            adjacency = adjacency_matrix(group, conn.elements, cap=group.n)
            if not verify_spectrum_exact(sp, adjacency).passed:
                exact_ok = False

    checks["integrality-equivalence"] = "pass" if integrality_ok else "fail"
    checks["membership-equivalence"] = "pass" if membership_ok else "fail"
    checks["power-closure-consistency"] = "pass" if closure_ok else "fail"
    checks["spectrum-oracle-float"] = (
        ("pass" if float_ok else "fail") if run_float else "skip"
    )
    checks["spectrum-oracle-exact"] = (
        ("pass" if exact_ok else "fail") if run_exact else "skip"
    )
    return {
        "group": spec.describe(),
        "order": group.n,
        "class_count": cd.k,
        "checks": checks,
    }


def cmd_verify_all(job: dict):
    entries = job.get("groups")
    if entries is None:
        entries = _default_corpus()
    if not isinstance(entries, list) or not entries:
        raise InputError("groups", "expected a non-empty list of group specs")
    reports = []
    totals = {"pass": 0, "fail": 0, "skip": 0}
    for entry in entries:
        try:
            report = _verify_group(entry, job)
        except ValueError as exc:
            raise InputError("groups", str(exc))
        for outcome in report["checks"].values():
            totals[outcome] += 1
        reports.append(report)
    payload = {
        "schema": SCHEMA,
        "command": "verify-all",
        "oracle": job["oracle"],
        "tolerance": job["tolerance"],
        "groups": reports,
        "totals": totals,
        "passed": totals["fail"] == 0,
    }
    return payload, totals["fail"] == 0


# ---------------------------------------------------------------------------
# rendering


def _eta_poly(coeffs: Sequence[int]) -> str:
    parts: list[str] = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        if j == 0:
            body = f"{abs(c)}"
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = mag + ("eta" if j == 1 else f"eta^{j}")
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _render_table(payload: dict) -> str:
    cmd = payload["command"]
    lines = []
    if cmd == "spectrum":
        g = payload["group"]
        lines.append(f"group {g['spec']}  order {g['order']}  exponent {g['exponent']}")
        c = payload["connection"]
        lines.append(
            f"connection classes {c['classes']}  size {c['size']}"
            f"  identity {'in' if c['contains_identity'] else 'out'}"
        )
        lines.append("character  degree  multiplicity  eigenvalue")
        for e in payload["entries"]:
            val = e["value"]
            if "rational" in val:
                exact = val["rational"]
            else:
                poly = _eta_poly(val["cyclotomic"]["coeffs"])
                if val["degree_divisor"] != 1:
                    poly = f"({poly})/{val['degree_divisor']}"
                exact = f"{poly} (conductor {val['cyclotomic']['m']})"
            a = val["approx"]
            lines.append(
                f"{e['character']:9d}  {e['degree']:6d}  {e['multiplicity']:12d}"
                f"  {exact}  ~ {a['re']:.6f}{a['im']:+.6f}i"
            )
        lines.append(f"all eigenvalues integral: {payload['all_integral']}")
        if "oracle" in payload:
            o = payload["oracle"]
            lines.append(
                f"oracle {o['kind']}: {'pass' if o['passed'] else 'FAIL'}"
                f" (max distance {o['max_distance']:.3g}, tolerance {o['tolerance']:.3g})"
            )
    elif cmd == "classes":
        g = payload["group"]
        lines.append(f"group {g['spec']}  order {g['order']}  exponent {g['exponent']}")
        lines.append("index  size  order  inverse  representative")
        for c in payload["classes"]:
            lines.append(
                f"{c['index']:5d}  {c['size']:4d}  {c['order']:5d}"
                f"  {c['inverse_class']:7d}  {c['representative']}"
            )
    elif cmd in ("check-integrality", "check-membership"):
        g = payload["group"]
        lines.append(f"group {g['spec']}  order {g['order']}  exponent {g['exponent']}")
        if cmd == "check-membership":
            lines.append(f"gamma: units {payload['gamma']['elements']} mod {payload['gamma']['modulus']}")
        sides = (
            ("integral", "power_closed")
            if cmd == "check-integrality"
            else ("in_subfield", "class_closed")
        )
        if "sweep" in payload:
            lines.append(f"{'classes':24}  {sides[0]:12}  {sides[1]:12}  agree")
            for r in payload["sweep"]:
                lines.append(
                    f"{str(r['classes']):24}  {str(r[sides[0]]):12}"
                    f"  {str(r[sides[1]]):12}  {r['agree']}"
                )
            lines.append(
                f"{payload['subsets']} subsets, {payload['disagreements']} disagreements"
            )
        else:
            for key in (*sides, "agree"):
                lines.append(f"{key}: {payload[key]}")
    elif cmd == "character-table":
        g = payload["group"]
        lines.append(
            f"group {g['spec']}  order {g['order']}  conductor {payload['conductor']}"
            f"  prime {payload['prime']}"
        )
        heads = [c["representative"] for c in payload["classes"]]
        lines.append("degree | " + "  ".join(heads))
        for deg, row in zip(payload["degrees"], payload["rows"]):
            cells = []
            for v in row:
                a = v["approx"]
                cells.append(f"{a['re']:.6f}{a['im']:+.6f}i")
            lines.append(f"{deg:6d} | " + "  ".join(cells))
    elif cmd == "verify-all":
        for r in payload["groups"]:
            checks = "  ".join(f"{k}={v}" for k, v in sorted(r["checks"].items()))
            lines.append(
                f"{r['group']} [order {r['order']}, classes {r['class_count']}]: {checks}"
            )
        t = payload["totals"]
        lines.append(
            f"totals: {t['pass']} pass, {t['fail']} fail, {t['skip']} skip"
            f" -> {'PASS' if payload['passed'] else 'FAIL'}"
        )
    return "\n".join(lines)


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "classes": cmd_classes,
    "check-integrality": cmd_check_integrality,
    "check-membership": cmd_check_membership,
    "character-table": cmd_character_table,
    "verify-all": cmd_verify_all,
}


def run(argv: Optional[list[str]] = None) -> int:
    args = _arg_parser().parse_args(argv)
    try:
        job = _assemble_job(args)
        payload, ok = _COMMANDS[job["command"]](job)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if job["output"] == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_render_table(payload))
    return 0 if ok else 1


def console_entry() -> None:
    sys.exit(run())
