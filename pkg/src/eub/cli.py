"""Command line surface.

Subcommands: bounds, sweep, scan, mc, fuzz, classical, verify. All output
is JSON or CSV written to --output (stdout by default) and is
byte-identical across reruns with the same arguments, seeds included.

Exit codes: 0 success, 1 property or assertion failure, 2 input or
validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .bounds import (
    bound_deutsch,
    bound_mu,
    classical_bound,
    classical_mixture_entropy,
    eur_lhs,
    ladder_from_coefficients,
    majorizing_vector,
    slomczynski_check,
)
from .entropy import majorizes, renyi_entropy
from .equivalence import random_transform, apply_transform
from .extremal import (
    SubspacePair,
    cross_gram,
    deutsch_max_product,
    lemma_max_value,
    maximizing_state,
    pair_objective,
)
from .families import (
    BirkhoffPoint,
    birkhoff_matrix,
    cross_section_scan,
    lift_residual,
    permutation_power,
    rotation_matrix,
    unistochastic_check_3,
    unistochastic_lift_3,
)
from .matrices import RngSeed, generator, haar_unitary, is_unitary, load_matrix
from .montecarlo import beat_rate, bound_gap_stats, majorization_fuzz
from .submatrices import s_coefficients


def _parse_alpha(token: str) -> float:
    if token.strip().lower() == "inf":
        return math.inf
    try:
        a = float(token)
    except ValueError:
        raise ValueError(f"cannot parse entropy order {token!r}") from None
    if math.isnan(a) or a < 0.0:
        raise ValueError(f"entropy order must be nonnegative, got {token!r}")
    return a


def _fmt_alpha(a: float) -> str:
    return "inf" if math.isinf(a) else repr(float(a))


def _emit(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require_format(args, native: str) -> None:
    fmt = getattr(args, "format", None)
    if fmt is not None and fmt != native:
        raise ValueError(f"command {args.command!r} emits {native} only")


def _seed_of(args) -> RngSeed:
    return RngSeed(seed=args.seed, stream=args.stream)


def _fmt12(v) -> str:
    return "" if v is None else f"{v:.12g}"


# --- subcommand implementations ----------------------------------------------


def _cmd_bounds(args) -> int:
    _require_format(args, "json")
    u = load_matrix(args.input)
    sc = s_coefficients(u, allow_large=args.allow_large_n)
    mv = majorizing_vector(sc)
    alphas = [_parse_alpha(a) for a in (args.alpha or ["1"])]
    obj = {
        "n": sc.n,
        "s": [float(v) for v in sc.s],
        "r": [float(v) for v in sc.r],
        "q": [float(v) for v in mv.q_full],
        "q_truncations": [[float(v) for v in t] for t in mv.truncations],
        "reports": [ladder_from_coefficients(sc, a).to_json() for a in alphas],
    }
    _emit(args.output, _dump_json(obj))
    return 0


_FAMILY_RE = re.compile(r"perm_power[:(](\d+)\)?$")


def _parse_family(token: str):
    if token == "rotation":
        return rotation_matrix
    m = _FAMILY_RE.fullmatch(token)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ValueError("perm_power requires n >= 2")
        return lambda beta: permutation_power(n, beta)
    raise ValueError(f"unknown family {token!r}; expected rotation or perm_power:N")


def _parse_range(token: str):
    parts = token.split(":")
    if len(parts) != 2:
        raise ValueError(f"cannot parse range {token!r}; expected lo:hi")
    lo, hi = float(parts[0]), float(parts[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ValueError(f"range {token!r} must be finite with hi > lo")
    return lo, hi


def _cmd_sweep(args) -> int:
    _require_format(args, "csv")
    build = _parse_family(args.family)
    lo, hi = _parse_range(args.range)
    if args.steps < 2:
        raise ValueError("steps must be >= 2 (inclusive grid point count)")
    alphas = [_parse_alpha(a) for a in (args.alpha or ["1"])]
    dim = build(lo).shape[0]
    header = ["parameter", "alpha", "b_deutsch", "b_mu"]
    header += [f"ladder_{k}" for k in range(1, dim)]
    lines = [",".join(header)]
    for i in range(args.steps):
        t = lo + (hi - lo) * i / (args.steps - 1)
        sc = s_coefficients(build(t), allow_large=args.allow_large_n)
        for a in alphas:
            rep = ladder_from_coefficients(sc, a)
            cells = [repr(t), _fmt_alpha(a), repr(rep.b_deutsch), repr(rep.b_mu)]
            cells += [repr(float(v)) for v in rep.ladder]
            lines.append(",".join(cells))
    _emit(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_scan(args) -> int:
    _require_format(args, "csv")
    alpha = _parse_alpha(args.alpha)
    records = cross_section_scan(args.grid_step, alpha)
    lines = ["a,b,feasible,b_mu,b_ladder_2,diff"]
    for rec in records:
        lines.append(
            ",".join(
                [
                    _fmt12(rec.a),
                    _fmt12(rec.b),
                    "1" if rec.feasible else "0",
                    _fmt12(rec.b_mu),
                    _fmt12(rec.b_ladder_2),
                    _fmt12(rec.diff),
                ]
            )
        )
    _emit(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_mc(args) -> int:
    _require_format(args, "json")
    result = beat_rate(args.n, args.samples, _seed_of(args), k=args.k)
    _emit(args.output, _dump_json(result.to_json()))
    if args.gap_hist is not None:
        stats = bound_gap_stats(args.n, args.samples, _parse_alpha(args.alpha), _seed_of(args))
        lo, hi, cnt = stats.hist_mu
        lines = ["bin_lo,bin_hi,count"]
        lines += [f"{repr(float(a))},{repr(float(b))},{int(c)}" for a, b, c in zip(lo, hi, cnt)]
        _emit(args.gap_hist, "\n".join(lines) + "\n")
    return 0


def _cmd_fuzz(args) -> int:
    _require_format(args, "json")
    report = majorization_fuzz(args.n, args.pairs, _seed_of(args))
    _emit(args.output, _dump_json(report.to_json()))
    return 0 if report.violations == 0 else 1


def _load_stochastic(path) -> np.ndarray:
    t = load_matrix(path)
    if float(np.abs(t.imag).max()) > 1e-12:
        raise ValueError("stochastic matrix must be real (imaginary parts found)")
    return t.real.copy()


def _cmd_classical(args) -> int:
    _require_format(args, "json")
    t = _load_stochastic(args.input)
    bound = classical_bound(t)
    kappa = float(t.max())
    if args.p is not None:
        p = np.array([float(tok) for tok in args.p.split(",")])
        mixture = classical_mixture_entropy(t, p)
        out_entropy = renyi_entropy(t @ p, 1.0)
        p_entropy = renyi_entropy(p, 1.0)
        ok_pair = slomczynski_check(t, p)
        ok_bound = p_entropy + out_entropy >= bound - 1e-10
        obj = {
            "kappa": kappa,
            "bound": bound,
            "mixture_entropy": mixture,
            "output_entropy": out_entropy,
            "input_entropy": p_entropy,
            "mixture_inequalities_hold": bool(ok_pair),
            "bound_holds": bool(ok_bound),
        }
        _emit(args.output, _dump_json(obj))
        return 0 if (ok_pair and ok_bound) else 1
    g = generator(_seed_of(args))
    worst_lower = math.inf
    worst_upper = math.inf
    worst_bound = math.inf
    for _ in range(args.samples):
        p = g.exponential(size=t.shape[1])
        p /= p.sum()
        mixture = classical_mixture_entropy(t, p)
        out_entropy = renyi_entropy(t @ p, 1.0)
        p_entropy = renyi_entropy(p, 1.0)
        worst_lower = min(worst_lower, out_entropy - mixture)
        worst_upper = min(worst_upper, mixture + p_entropy - out_entropy)
        worst_bound = min(worst_bound, p_entropy + out_entropy - bound)
    all_hold = min(worst_lower, worst_upper, worst_bound) >= -1e-10
    obj = {
        "kappa": kappa,
        "bound": bound,
        "samples": args.samples,
        "seed": _seed_of(args).to_json(),
        "min_slack_lower": worst_lower,
        "min_slack_upper": worst_upper,
        "min_slack_bound": worst_bound,
        "all_hold": bool(all_hold),
    }
    _emit(args.output, _dump_json(obj))
    return 0 if all_hold else 1


# --- verify suite -------------------------------------------------------------


def _verify_haar_unitarity(seed: RngSeed):
    for n in range(2, 7):
        for i in range(50):
            u = haar_unitary(n, RngSeed(seed.seed + 31 * n + i, seed.stream))
            if not is_unitary(u, 1e-10):
                return False, f"haar draw n={n} i={i} failed unitarity"
    return True, ""


def _verify_transform_invariance(seed: RngSeed):
    g = generator(seed)
    for n in range(2, 6):
        for i in range(10):
            u = haar_unitary(n, RngSeed(seed.seed + 97 * n + i, seed.stream))
            v = apply_transform(u, random_transform(n, g))
            delta = float(np.abs(s_coefficients(u).s - s_coefficients(v).s).max())
            if delta > 1e-10:
                return False, f"s drifted {delta:.3e} under transform at n={n}"
    return True, ""


def _verify_chain(seed: RngSeed):
    for n in range(2, 7):
        for i in range(20):
            u = haar_unitary(n, RngSeed(seed.seed + 13 * n + i, seed.stream))
            mv = majorizing_vector(s_coefficients(u))
            for k in range(len(mv.truncations) - 1):
                if not majorizes(mv.truncations[k], mv.truncations[k + 1], 1e-10):
                    return False, f"chain break at n={n} k={k + 1}"
    return True, ""


def _verify_ladder(seed: RngSeed):
    alphas = (0.0, 0.5, 1.0, 2.0, math.inf)
    g = generator(seed)
    for n in range(2, 7):
        for i in range(10):
            u = haar_unitary(n, RngSeed(seed.seed + 7 * n + i, seed.stream))
            sc = s_coefficients(u)
            for a in alphas:
                rep = ladder_from_coefficients(sc, a)
                if np.any(np.diff(rep.ladder) < -1e-12):
                    return False, f"ladder not monotone at n={n} alpha={a}"
                for _ in range(5):
                    v = g.standard_normal(n) + 1j * g.standard_normal(n)
                    v /= np.linalg.norm(v)
                    if eur_lhs(u, v, a) < rep.ladder[-1] - 1e-10:
                        return False, f"entropy sum below ladder top at n={n} alpha={a}"
    return True, ""


def _verify_product_majorization(seed: RngSeed):
    for n in range(2, 7):
        rep = majorization_fuzz(n, 300, RngSeed(seed.seed + n, seed.stream))
        if rep.violations:
            return False, f"{rep.violations} majorization violations at n={n}"
    return True, ""


def _verify_extremal(seed: RngSeed):
    g = generator(seed)
    for n in range(2, 7):
        for i in range(5):
            m1 = int(g.integers(1, n + 1))
            m2 = int(g.integers(1, n + 1))
            u1 = haar_unitary(n, RngSeed(seed.seed + 211 * n + 2 * i, seed.stream))
            u2 = haar_unitary(n, RngSeed(seed.seed + 211 * n + 2 * i + 1, seed.stream))
            sp = SubspacePair(u1[:m1], u2[:m2])
            top = lemma_max_value(sp)
            for _ in range(200):
                v = g.standard_normal(n) + 1j * g.standard_normal(n)
                v /= np.linalg.norm(v)
                if pair_objective(sp, v) > top + 1e-10:
                    return False, f"objective exceeded bound at n={n}"
            psi = maximizing_state(sp)
            if abs(pair_objective(sp, psi) - top) > 1e-10:
                return False, f"attainment failed at n={n}"
            s1 = float((np.abs(sp.first_set.conj() @ psi) ** 2).sum())
            s2 = float((np.abs(sp.second_set.conj() @ psi) ** 2).sum())
            if abs(s1 - s2) > 1e-10:
                return False, f"partial sums unequal at n={n}"
            a = cross_gram(sp)
            block = np.block(
                [
                    [np.eye(m1), a.conj().T],
                    [a, np.eye(m2)],
                ]
            )
            lam = float(np.linalg.eigvalsh(block)[-1])
            if abs(lam - top) > 1e-12:
                return False, f"block eigenvalue mismatch at n={n}"
    return True, ""


def _verify_deutsch(seed: RngSeed):
    for n in range(2, 7):
        for i in range(20):
            u = haar_unitary(n, RngSeed(seed.seed + 5 * n + i, seed.stream))
            if bound_deutsch(u) > bound_mu(u) + 1e-12:
                return False, f"closed-form ordering violated at n={n}"
            # rows of u index the transformed basis, columns the input one
            j_star, i_star = np.unravel_index(int(np.abs(u).argmax()), u.shape)
            first = np.zeros((1, n), dtype=complex)
            first[0, i_star] = 1.0
            second = u[j_star : j_star + 1, :].conj()
            psi = maximizing_state(SubspacePair(first, second))
            p = float(np.abs(psi[i_star]) ** 2)
            q = float(np.abs((u @ psi)[j_star]) ** 2)
            if abs(p * q - deutsch_max_product(u)) > 1e-10:
                return False, f"max product cross-check failed at n={n}"
    return True, ""


def _verify_classical(seed: RngSeed):
    g = generator(seed)
    for i in range(500):
        n = 2 + i % 5
        t = g.exponential(size=(n, n))
        t /= t.sum(axis=0, keepdims=True)
        p = g.exponential(size=n)
        p /= p.sum()
        if not slomczynski_check(t, p):
            return False, f"mixture inequalities failed at trial {i}"
        total = renyi_entropy(p, 1.0) + renyi_entropy(t @ p, 1.0)
        if total < classical_bound(t) - 1e-10:
            return False, f"entropy sum below -ln kappa at trial {i}"
    return True, ""


def _verify_beat_rate(seed: RngSeed):
    res = beat_rate(2, 3000, seed)
    if abs(res.rate - 0.814) > 0.03:
        return False, f"beat rate {res.rate:.3f} far from 0.814"
    return True, ""


def _verify_scan(seed: RngSeed):
    records = cross_section_scan(0.1, 1.0)
    by_point = {(round(r.a, 9), round(r.b, 9)): r for r in records}
    for corner in ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)):
        if not by_point[corner].feasible:
            return False, f"corner {corner} not feasible"
    center = by_point[(round(3 * 0.1, 9), round(3 * 0.1, 9))]
    if not (center.feasible and center.diff is not None):
        return False, "near-center point not feasible"
    if by_point[(0.5, 0.5)].feasible:
        return False, "edge midpoint unexpectedly feasible"
    for rec in records:
        if rec.feasible:
            mat = birkhoff_matrix(BirkhoffPoint(min(rec.a, 1.0), min(rec.b, 1.0)))
            resid = lift_residual(unistochastic_lift_3(mat), mat)
            if resid > 1e-9:
                return False, f"lift residual {resid:.3e} at ({rec.a}, {rec.b})"
    return True, ""


_VERIFY_CHECKS = (
    ("haar-unitarity", _verify_haar_unitarity),
    ("s-transform-invariance", _verify_transform_invariance),
    ("majorizing-chain", _verify_chain),
    ("ladder-monotone-and-lhs", _verify_ladder),
    ("product-majorization", _verify_product_majorization),
    ("extremal-suite", _verify_extremal),
    ("deutsch-closed-forms", _verify_deutsch),
    ("classical-inequalities", _verify_classical),
    ("beat-rate-sanity", _verify_beat_rate),
    ("scan-smoke", _verify_scan),
)


def _cmd_verify(args) -> int:
    seed = _seed_of(args)
    failures = 0
    for name, check in _VERIFY_CHECKS:
        ok, detail = check(seed)
        if ok:
            print(f"PASS  {name}")
        else:
            failures += 1
            print(f"FAIL  {name}: {detail}")
    total = len(_VERIFY_CHECKS)
    print(f"{total - failures}/{total} checks passed")
    return 0 if failures == 0 else 1


# --- parser -------------------------------------------------------------------


def _add_seed_args(sp) -> None:
    sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    sp.add_argument("--stream", type=int, default=0, help="RNG stream id (default 0)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eub",
        description="Majorization-based entropic uncertainty bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="full bound report for one unitary matrix")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--alpha", action="append", help="entropy order (repeatable; default 1)")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--allow-large-n", action="store_true", dest="allow_large_n")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sweep", help="bound curves along a matrix family")
    p.add_argument("--family", required=True, help="rotation or perm_power:N")
    p.add_argument("--range", required=True, help="parameter range lo:hi")
    p.add_argument("--steps", type=int, required=True, help="inclusive grid point count")
    p.add_argument("--alpha", action="append", help="entropy order (repeatable; default 1)")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--allow-large-n", action="store_true", dest="allow_large_n")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("scan", help="unistochastic cross-section scan (order 3)")
    p.add_argument("--grid-step", type=float, required=True, dest="grid_step")
    p.add_argument("--alpha", default="1", help="entropy order (default 1)")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("mc", help="Haar beat-rate experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="ladder level (default n-1)")
    p.add_argument("--alpha", default="1", help="order for --gap-hist stats")
    p.add_argument("--gap-hist", default=None, dest="gap_hist", help="also write gap histogram CSV")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    _add_seed_args(p)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("fuzz", help="product-distribution majorization fuzz")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    _add_seed_args(p)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("classical", help="stochastic-matrix entropy bound checks")
    p.add_argument("--input", required=True, help="column-stochastic matrix JSON file")
    p.add_argument("--p", default=None, help="comma-separated input distribution")
    p.add_argument("--samples", type=int, default=1000, help="random P trials when --p absent")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    _add_seed_args(p)
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("verify", help="cross-module property suite")
    _add_seed_args(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
