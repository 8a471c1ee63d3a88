"""Command-line front end.

Every subcommand prints a machine-readable payload (JSON by default, TSV
via --format tsv) that is byte-identical across runs for identical
arguments.  Exit codes: 0 success / all checks passed, 1 a numeric check
failed its tolerance, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .congruence import coset_table, rho
from .exact_core import ExtendedRational, IntMatrix2
from .farey import farey_sequence, lns, m_of_q
from .hecke import gen_sm, h_tilde, sigma, vector_hecke
from .numeric import (
    constant_lift,
    eta_line_integral,
    hecke_image,
    laplace_fd,
    r_zeta,
    three_term_residual,
)
from .verify import run_all_checks

_WORD_LETTERS = {"T": IntMatrix2(1, 1, 0, 1), "S": IntMatrix2(0, -1, 1, 0)}


class UsageError(ValueError):
    pass


def _parse_rational(text):
    try:
        return ExtendedRational.from_string(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_matrix(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("matrix must be given as a,b,c,d")
    try:
        return IntMatrix2(*(int(p) for p in parts))
    except ValueError:
        raise UsageError("matrix entries must be integers") from None


def _parse_complex(text):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError("spectral parameter must be given as re or re,im")


def _parse_word(text):
    """A product of the generators written as a string of T, S and T'."""
    from .exact_core import I

    g = I
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "T" and i + 1 < len(text) and text[i + 1] == "'":
            g = g * IntMatrix2(1, 0, 1, 1)
            i += 2
            continue
        if ch in _WORD_LETTERS:
            g = g * _WORD_LETTERS[ch]
            i += 1
            continue
        raise UsageError("word may only contain T, S and T' (got %r)" % ch)
    return g


def _sample_points(points):
    return [0.1 + 9.9 * k / max(1, points - 1) for k in range(points)]


def _flat_rows(mat):
    return [str(x) for x in mat.key]


def _tsv_formal_sum(total):
    return [[str(coeff)] + _flat_rows(mat) for coeff, mat in total]


def _render(payload, tsv_rows, fmt):
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return "\n".join("\t".join(row) for row in tsv_rows)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _cmd_farey(args):
    seq = farey_sequence(args.n)
    payload = [str(r) for r in seq]
    return payload, [[s] for s in payload], 0


def _cmd_lns(args):
    chain = lns(_parse_rational(args.q))
    payload = chain.to_json_obj()
    return payload, [[s] for s in payload], 0


def _cmd_mq(args):
    total = m_of_q(_parse_rational(args.q))
    return total.to_json_obj(), _tsv_formal_sum(total), 0


def _cmd_cosets(args):
    table = coset_table(args.n)
    payload = {"mu": table.mu, "reps": [g.rows() for g in table.reps]}
    return payload, [_flat_rows(g) for g in table.reps], 0


def _cmd_rho(args):
    table = coset_table(args.n)
    perm = rho(table, _parse_word(args.word))
    payload = list(perm.image)
    return payload, [[str(j) for j in perm.image]], 0


def _cmd_sigma(args):
    g = _parse_matrix(args.g)
    a_mat = _parse_matrix(args.A)
    result = sigma(g, a_mat)
    return {"sigma": result.rows()}, [_flat_rows(result)], 0


def _cmd_hecke_scalar(args):
    total = h_tilde(args.m)
    return total.to_json_obj(), _tsv_formal_sum(total), 0


def _cmd_hecke_vector(args):
    op = vector_hecke(coset_table(args.n), args.m)
    rows = []
    for j in range(op.mu):
        for i in range(op.mu):
            for coeff, mat in op.entries[j][i]:
                rows.append([str(j), str(i), str(coeff)] + _flat_rows(mat))
    return op.to_json_obj(), rows, 0


def _cmd_sm(args):
    mats = gen_sm(args.m)
    return [g.rows() for g in mats], [_flat_rows(g) for g in mats], 0


def _cmd_check_three_term(args):
    s = _parse_complex(args.s)
    table = coset_table(args.n)
    op = vector_hecke(table, args.m)
    image = hecke_image(op, constant_lift(lambda z: 1.0 / z, table.mu), s)
    worst = max(
        abs(x)
        for zeta in _sample_points(args.points)
        for x in three_term_residual(image, table, s, zeta)
    )
    payload = {"max_residual": worst, "points": args.points}
    rows = [["max_residual", repr(worst)], ["points", str(args.points)]]
    return payload, rows, 0 if worst < args.tolerance else 1


def _cmd_check_laplace(args):
    s = _parse_complex(args.s)
    zeta = 0.7
    f = lambda z: r_zeta(z, zeta) ** s
    worst_coarse = worst_fine = 0.0
    for k in range(args.points):
        z0 = -1.5 + 3.0 * k / max(1, args.points - 1) + 1j * (0.6 + 0.05 * k)
        reference = s * (1 - s) * f(z0)
        worst_coarse = max(worst_coarse, abs(laplace_fd(f, z0, args.h) - reference) / abs(reference))
        worst_fine = max(worst_fine, abs(laplace_fd(f, z0, args.h2) - reference) / abs(reference))
    order = math.log(worst_coarse / worst_fine) / math.log(args.h / args.h2)
    payload = {
        "error_h": worst_coarse,
        "error_h2": worst_fine,
        "h": args.h,
        "h2": args.h2,
        "order": order,
    }
    rows = [[k, repr(payload[k])] for k in sorted(payload)]
    code = 0 if abs(order - 2.0) <= args.order_window else 1
    return payload, rows, code


def _cmd_check_eta_loop(args):
    s = _parse_complex(args.s)
    u = lambda z: r_zeta(z, -1.5) ** s
    v = lambda z: r_zeta(z, 3.0) ** s
    loop = [0.2 + 0.5j, 1.2 + 0.5j, 1.2 + 1.5j, 0.2 + 1.5j, 0.2 + 0.5j]
    panels = [args.panels * 2 ** k for k in range(args.doublings + 1)]
    magnitudes = [
        abs(eta_line_integral(u, v, loop, steps=p, fd_step=1e-5)) for p in panels
    ]
    ratios = [coarse / fine for coarse, fine in zip(magnitudes, magnitudes[1:])]
    payload = {"magnitudes": magnitudes, "panels": panels, "ratios": ratios}
    rows = [
        ["panels", " ".join(str(p) for p in panels)],
        ["magnitudes", " ".join(repr(x) for x in magnitudes)],
        ["ratios", " ".join(repr(x) for x in ratios)],
    ]
    code = 0 if all(r > args.min_ratio for r in ratios) else 1
    return payload, rows, code


def _cmd_verify_all(args):
    s = _parse_complex(args.s)
    checks = run_all_checks(
        args.n, args.m, s=s, points=args.points, tolerance=args.tolerance
    )
    all_pass = all(passed for _, passed, _ in checks)
    payload = {
        "all_pass": all_pass,
        "checks": [
            {"detail": detail, "name": name, "pass": passed}
            for name, passed, detail in checks
        ],
        "m": args.m,
        "n": args.n,
    }
    rows = [[name, "pass" if passed else "FAIL", detail] for name, passed, detail in checks]
    rows.append(["all_pass", "pass" if all_pass else "FAIL", ""])
    return payload, rows, 0 if all_pass else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="periodhecke",
        description="Exact Hecke operator matrices on period functions for "
        "congruence subgroups, with numeric verification checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        for flag, options in flags.items():
            p.add_argument("--" + flag, **options)
        p.add_argument("--format", choices=["json", "tsv"], default="json")
        p.add_argument("--out", default=None)
        p.set_defaults(func=func)
        return p

    n_flag = {"type": int, "required": True}
    m_flag = {"type": int, "required": True}
    add("farey", _cmd_farey, n=n_flag)
    add("lns", _cmd_lns, q={"required": True})
    add("mq", _cmd_mq, q={"required": True})
    add("cosets", _cmd_cosets, n=n_flag)
    add("rho", _cmd_rho, n=n_flag, word={"required": True})
    p_sigma = sub.add_parser("sigma")
    p_sigma.add_argument("--g", required=True)
    p_sigma.add_argument("--A", required=True)
    p_sigma.add_argument("--format", choices=["json", "tsv"], default="json")
    p_sigma.add_argument("--out", default=None)
    p_sigma.set_defaults(func=_cmd_sigma)
    add("hecke-scalar", _cmd_hecke_scalar, m=m_flag)
    add("hecke-vector", _cmd_hecke_vector, n=n_flag, m=m_flag)
    add("sm", _cmd_sm, m=m_flag)
    add(
        "check-three-term",
        _cmd_check_three_term,
        n=n_flag,
        m=m_flag,
        s={"default": "1,0"},
        points={"type": int, "default": 100},
        tolerance={"type": float, "default": 1e-9},
    )
    add(
        "check-laplace",
        _cmd_check_laplace,
        s={"default": "0.9,0"},
        h={"type": float, "default": 1e-2},
        h2={"type": float, "default": 1e-3},
        points={"type": int, "default": 100},
        **{"order-window": {"type": float, "dest": "order_window", "default": 0.4}},
    )
    add(
        "check-eta-loop",
        _cmd_check_eta_loop,
        s={"default": "0.8,0"},
        panels={"type": int, "default": 32},
        doublings={"type": int, "default": 2},
        **{"min-ratio": {"type": float, "dest": "min_ratio", "default": 3.0}},
    )
    add(
        "verify-all",
        _cmd_verify_all,
        n=n_flag,
        m=m_flag,
        s={"default": "1,0"},
        points={"type": int, "default": 25},
        tolerance={"type": float, "default": 1e-9},
    )
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        payload, tsv_rows, code = args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    _emit(_render(payload, tsv_rows, args.format), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
