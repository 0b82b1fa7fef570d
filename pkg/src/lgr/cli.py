"""Command-line front end: every verification as a deterministic command with a JSON or table report.

Exit codes: 0 all residuals zero, 1 some residual nonzero, 2 malformed input, 3 non-symmetric matrix.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from itertools import combinations, product

from . import extalg, fock, grassmann, hyperdet, symfunc, tau
from .combinat import marked_indices, partition
from .grassmann import NotSymmetricError, Residual
from .kernel import as_matrix, fmt, is_symmetric, random_rat, rank, rat

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED, EXIT_NOT_SYMMETRIC = 0, 1, 2, 3


class MalformedInput(ValueError):
    pass


def default_truncation() -> int:
    raw = os.environ.get("LGR_TRUNCATION")
    if raw is None:
        return 12
    try:
        return int(raw)
    except ValueError:
        raise MalformedInput(f"LGR_TRUNCATION must be an integer, got {raw!r}") from None


# --- input loading -------------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path}: invalid JSON ({e.msg})") from None


def load_matrix(path: str):
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("a", data.get("matrix"))
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise MalformedInput(f"{path}: expected a JSON list of rows")
    m = as_matrix(data)
    if any(len(r) != len(m) for r in m):
        raise MalformedInput(f"{path}: matrix must be square")
    return m


def load_subspace(args, symmetric: bool = False) -> grassmann.Subspace:
    if args.affine:
        a = load_matrix(args.affine)
        if symmetric and not is_symmetric(a):
            raise NotSymmetricError("affine coordinate matrix must be symmetric")
        return grassmann.affine_columns(a)
    if getattr(args, "subspace", None):
        data = _read_json(args.subspace)
        return grassmann.subspace(data["w"], data.get("n"))
    raise MalformedInput("need --affine or --subspace")


def load_plucker(args) -> grassmann.PluckerVector:
    if getattr(args, "coords", None):
        data = _read_json(args.coords)
        terms = data.get("plucker", data.get("coords"))
        if terms is None:
            raise MalformedInput("coordinate file needs a 'plucker' list")
        return grassmann.plucker_from_coords(int(data["n"]), {tuple(t["lambda"]): t["c"] for t in terms})
    return grassmann.plucker(load_subspace(args))


def load_tau(args, symmetric: bool = False) -> tau.TauPoly:
    if getattr(args, "coords", None):
        return tau.tau_from_plucker(load_plucker(args))
    return tau.tau_from_subspace(load_subspace(args, symmetric))


def parse_list(text: str) -> list:
    try:
        return [rat(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, TypeError, ZeroDivisionError):
        raise MalformedInput(f"bad rational list {text!r}") from None


# --- reporting -----------------------------------------------------------------

def check_report(kind: str, residuals: list, details: dict | None = None) -> dict:
    bad = [r for r in residuals if r.residual]
    rep = {
        "check": kind,
        "status": "fail" if bad else "pass",
        "residuals": len(residuals),
        "failures": [r.to_json() for r in bad],
    }
    if details:
        rep["details"] = details
    return rep


def render(report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, separators=(",", ":"))
    lines = []
    if isinstance(report, dict) and "check" in report:
        lines.append(f"check {report['check']}: {report['status'].upper()} ({report['residuals']} residuals)")
        for f in report["failures"]:
            lines.append(f"  {f['relation']}  {f['residual']}")
        for k, v in report.get("details", {}).items():
            lines.append(f"  {k}: {json.dumps(v, separators=(',', ':'))}")
    elif isinstance(report, dict):
        width = max((len(str(k)) for k in report), default=0)
        for k, v in report.items():
            shown = v if isinstance(v, str) else json.dumps(v, separators=(",", ":"))
            lines.append(f"{str(k) or '{}':<{width}}  {shown}")
    else:
        lines.append(json.dumps(report, separators=(",", ":")))
    return "\n".join(lines)


def _poly_residuals(prefix: str, p) -> list:
    return [Residual(f"{prefix}{list(e)}", c) for e, c in sorted(p.terms.items())] or [Residual(prefix, 0)]


def _ext_residuals(prefix: str, v) -> list:
    return [Residual(f"{prefix}{list(k)}", c) for k, c in sorted(v.terms.items())] or [Residual(prefix, 0)]


def _fock_residuals(prefix: str, v) -> list:
    return [Residual(f"{prefix}{list(k.lam)};{k.n}", c) for k, c in sorted(v.terms.items())] or [Residual(prefix, 0)]


def _sample_point(rng, m: int, odd_only: bool = False) -> list:
    return [random_rat(rng) if not (odd_only and k % 2 == 0) else rat(0) for k in range(1, m + 1)]


# --- commands ------------------------------------------------------------------

def cmd_minors(args):
    a = load_matrix(args.file)
    w = grassmann.from_affine(a)
    coeffs = grassmann.lagrange_map(w)
    return {grassmann.subset_key(J): fmt(v) for J, v in coeffs.items()}, EXIT_OK


def check_plucker(args):
    pv = load_plucker(args)
    return check_report("plucker", grassmann.plucker_residuals(pv, "full"))


def check_lagrangian(args):
    pv = load_plucker(args)
    res = grassmann.plucker_residuals(pv, "full") + grassmann.lagrangian_linear_residuals(pv)
    return check_report("lagrangian", res)


def check_hyperdet(args):
    w = load_subspace(args, symmetric=True)
    coeffs = grassmann.lagrange_coefficients(grassmann.plucker(w))
    res = [
        Residual(f"J={list(base)};triple={list(tr)}", hyperdet.core_residual(coeffs, base, tr))
        for base, tr in hyperdet.core_instances(w.n)
    ]
    return check_report("hyperdet", res)


def check_chain(args):
    if args.st:
        data = _read_json(args.st)
        try:
            g = hyperdet.Gr36Coords(*(rat(data[k.replace("s", "*")]) for k in hyperdet.Gr36Coords._fields))
        except KeyError as e:
            raise MalformedInput(f"missing coordinate {e}") from None
        consistency = {}
    else:
        w = load_subspace(args)
        if w.n != 3:
            raise MalformedInput("the identity chain needs N = 3")
        g, consistency = hyperdet.gr36_coords(grassmann.decomposable(w))
    res = [Residual(k, v) for k, v in hyperdet.identity_chain_residuals(g).items()]
    res += [Residual(f"consistency:{k}", v) for k, v in consistency.items()]
    return check_report("chain", res, {"coords": g.to_json()})


def check_fay(args):
    t_ = load_tau(args)
    rng = random.Random(args.seed)
    res = []
    for s in range(args.samples):
        t = _sample_point(rng, t_.times)
        if not t_(t):
            continue
        for k in (1, 2, 3):
            xs = [random_rat(rng, nonzero=True) for _ in range(k)]
            ys = [random_rat(rng, nonzero=True) for _ in range(k)]
            if any(a == b for a in xs for b in ys):
                continue
            res.append(Residual(f"sample={s};k={k}", tau.fay_residual(t_, t, xs, ys)))
    return check_report("fay", res)


def check_family(args):
    t_ = load_tau(args, symmetric=True)
    xs = parse_list(args.x) if args.x else [rat(1) / p for p in (2, 3, 5, 7)]
    if len(xs) < 3:
        raise MalformedInput("need at least three x parameters")
    spec = tau.shift_spec(xs)
    rng = random.Random(args.seed)
    res = []
    r = args.radius
    for s in range(args.samples):
        tp = _sample_point(rng, t_.times, odd_only=True)
        lattice = tau.LatticeTau(t_, tp, spec.x)
        for n in product(range(-r, r + 1), repeat=len(xs)):
            for triple in combinations(range(1, len(xs) + 1), 3):
                v = hyperdet.cayley222(tau.family_cube(lattice, n, triple))
                res.append(Residual(f"sample={s};n={list(n)};triple={list(triple)}", v))
    return check_report("family", res)


def check_hirota(args):
    t_ = load_tau(args)
    rng = random.Random(args.seed)
    res = []
    for s in range(args.samples):
        t = _sample_point(rng, t_.times)
        dt = _sample_point(rng, t_.times)
        res.append(Residual(f"sample={s}", tau.hirota_residual(t_, t, dt)))
    return check_report("hirota", res)


def check_ckp(args):
    t_ = load_tau(args)
    res = _poly_residuals("tau-tilde:", tau.ckp_residual(t_))
    for k, p in tau.even_flow_residuals(t_).items():
        res += _poly_residuals(f"d/dt{k}:", p)
    return check_report("ckp", res)


def check_fock(args):
    pv = load_plucker(args)
    v = fock.from_plucker(pv.coords)
    res = []
    for name, vec in fock.ckp_null_residuals(v, args.truncation).items():
        res += _fock_residuals(f"{name}:", vec)
    return check_report("fock", res)


CHECKS = {
    "plucker": check_plucker,
    "lagrangian": check_lagrangian,
    "hyperdet": check_hyperdet,
    "chain": check_chain,
    "fay": check_fay,
    "family": check_family,
    "hirota": check_hirota,
    "ckp": check_ckp,
    "fock": check_fock,
}


def cmd_check(args):
    rep = CHECKS[args.kind](args)
    return rep, EXIT_FAIL if rep["status"] == "fail" else EXIT_OK


def cmd_decompose(args):
    n = args.n
    if not 1 <= n <= 5:
        raise MalformedInput("decompose supports 1 <= N <= 5")
    degrees = [args.k] if args.k is not None else range(2 * n + 1)
    out, failed = {}, False
    for k in degrees:
        if not 0 <= k <= 2 * n:
            raise MalformedInput(f"degree {k} outside 0..{2 * n}")
        entry = {}
        vectors = []
        for j in range(k // 2 + 1):
            if k > n + j:
                continue
            labels = extalg.basis_labels(n, k, j)
            ladder_ok = True
            for b in labels:
                up, down = extalg.ladder_residuals(b)
                if up or down:
                    ladder_ok = False
                vectors.append(extalg.phi_basis_element(b))
            entry[str(j)] = {"dim": len(labels), "ladder": "pass" if ladder_ok else "fail"}
            failed |= not ladder_ok
        keys = extalg.degree_keys(n, k)
        full = rank([extalg.coordinates(v, keys) for v in vectors]) if vectors else 0
        entry["rank"] = full
        entry["binomial"] = len(keys)
        failed |= full != len(keys)
        out[str(k)] = entry
    return {"n": n, "degrees": out}, EXIT_FAIL if failed else EXIT_OK


def cmd_reduce36(args):
    w = load_subspace(args)
    if w.n < 3:
        raise MalformedInput("reduction needs N >= 3")
    phi = grassmann.decomposable(w)
    rows, failed = [], False
    for mk in marked_indices(w.n):
        status, bad = grassmann.reduction_status(phi, mk)
        failed |= status == "fail"
        rows.append({
            "I": list(mk.I),
            "starred": list(mk.starred),
            "status": status,
            "failures": [r.to_json() for r in bad],
        })
    return {"n": w.n, "reductions": rows}, EXIT_FAIL if failed else EXIT_OK


def _parse_partition(text: str):
    try:
        return partition([int(x) for x in text.split(",") if x.strip()])
    except ValueError:
        raise MalformedInput(f"bad partition {text!r}") from None


def cmd_schur(args):
    lam = _parse_partition(args.partition)
    m = args.m if args.m is not None else max(sum(lam), 1)
    return symfunc.schur(lam, m).to_json(), EXIT_OK


def cmd_mn(args):
    lam = _parse_partition(args.partition)
    op = symfunc.mn_dual if args.dual else symfunc.mn_apply
    combo = op(args.r, {lam: 1})
    return {",".join(map(str, mu)) or "()": fmt(c) for mu, c in combo.items()}, EXIT_OK


def cmd_tau_build(args):
    t_ = load_tau(args)
    return t_.to_json(), EXIT_OK


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--truncation", type=int, default=None, help="weight bound (default $LGR_TRUNCATION or 12)")
    common.add_argument("--samples", type=int, default=10)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write the report to this file")

    def sources(p, coords=True):
        p.add_argument("--affine", help="JSON square matrix A (big-cell chart)")
        p.add_argument("--subspace", help='JSON {"n": N, "w": 2N x N matrix}')
        if coords:
            p.add_argument("--coords", help='JSON {"n": N, "plucker": [{"lambda": [...], "c": "p/q"}]}')

    parser = argparse.ArgumentParser(prog="lgr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minors", parents=[common], help="Lagrange coefficients (principal minors) of a symmetric matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_minors)

    p = sub.add_parser("check", parents=[common], help="run one family of residual checks")
    p.add_argument("kind", choices=sorted(CHECKS))
    sources(p)
    p.add_argument("--st", help="JSON object of the 14 S/T coordinates (chain only)")
    p.add_argument("--x", help="comma-separated shift parameters (family only)")
    p.add_argument("--radius", type=int, default=2, help="lattice translates |n_a| <= radius (family only)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="dimensions and ladder checks of the Sp submodules")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reduce36", parents=[common], help="all reductions of an N-plane to Gr(3,6)")
    sources(p, coords=False)
    p.set_defaults(func=cmd_reduce36)

    p = sub.add_parser("schur", parents=[common], help="Schur polynomial in t_1..t_m")
    p.add_argument("partition", help="comma-separated parts, e.g. 2,1")
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("mn", parents=[common], help="Murnaghan-Nakayama border-strip operator on s_lambda")
    p.add_argument("r", type=int)
    p.add_argument("partition")
    p.add_argument("--dual", action="store_true", help="remove strips instead of adding them")
    p.set_defaults(func=cmd_mn)

    p = sub.add_parser("tau", parents=[common], help="tau-function tools")
    tsub = p.add_subparsers(dest="tau_command", required=True)
    b = tsub.add_parser("build", parents=[common], help="tau(t) = sum pi_lambda s_lambda as Plücker JSON")
    sources(b)
    b.set_defaults(func=cmd_tau_build)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.truncation is None:
            args.truncation = default_truncation()
        report, code = args.func(args)
    except NotSymmetricError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_SYMMETRIC
    except (MalformedInput, ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    text = render(report, args.json)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
