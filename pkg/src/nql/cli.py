"""Command-line frontend.

Exit codes: 0 success / nondegenerate, 1 degenerate (check) or a negative
finding (witness does not vanish, sweep disagrees with the prime-or-4 rule),
2 usage error, 3 internal certificate failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time

from .criterion import assemble_matrix, det_prime_factors, determinant, nondegenerate
from .errors import CertificateFailure
from .groups import (
    AbelianGroup,
    abelian_groups_of_order,
    format_group_spec,
    is_prime,
    parse_group_spec,
)
from .monomials import (
    compositions_prime,
    eigen_action_with_multiplicities,
    regular_eigen_action,
    regular_perm_action,
    weight,
)
from .parallel import ordered_map, thread_cap
from .reports import (
    CertificateBatch,
    MatrixResult,
    RunReport,
    SweepResult,
    SweepRow,
    WitnessResult,
)
from .witnesses import (
    check_lemma2_pairing,
    lemma2_counts,
    prime_certificate,
    select_witness,
    witness_coefficient,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUG = 0, 1, 2, 3


class UsageError(Exception):
    pass


def compute_matrix(group: AbelianGroup) -> MatrixResult:
    action = regular_perm_action(group)
    method = "entries" if group.order <= 5 else "columns"
    mat = assemble_matrix(action, method=method)
    det = determinant(mat.entries)
    return MatrixResult(
        format_group_spec(group),
        mat.labels,
        [o.size for o in mat.table.orbits],
        mat.rows(),
        det,
        det_prime_factors(det) if det else None,
    )


def compute_witness(group: AbelianGroup) -> WitnessResult:
    W = select_witness(group)
    act = regular_eigen_action(W.group)
    return WitnessResult(
        format_group_spec(W.group),
        W.case,
        W.params,
        W.monomial,
        W.monomial.degree,
        list(weight(W.monomial, act)),
        witness_coefficient(W),
    )


def expected_kind(n: int) -> str:
    return "nondegenerate" if n == 1 or n == 4 or is_prime(n) else "degenerate"


def _sweep_one(moduli: tuple[int, ...]) -> SweepRow:
    group = AbelianGroup(moduli)
    v = nondegenerate(regular_eigen_action(group))
    return SweepRow(
        format_group_spec(group),
        group.order,
        v.kind,
        expected_kind(group.order),
        v.witness,
        v.witness_source,
    )


def sweep(max_order: int) -> SweepResult:
    groups = [g.moduli for n in range(1, max_order + 1) for g in abelian_groups_of_order(n)]
    return SweepResult(max_order, ordered_map(_sweep_one, groups))


def _certificate_job(args):
    p, a = args
    return prime_certificate(p, a, strict=False)


def certify_prime(p: int, a=None) -> CertificateBatch:
    comps = [tuple(a)] if a is not None else [c.a for c in compositions_prime(p)]
    return CertificateBatch(p, ordered_map(_certificate_job, [(p, c) for c in comps]))


# -- formatting ---------------------------------------------------------------


def _pretty_matrix(res: MatrixResult) -> str:
    labels = [str(m) for m in res.labels]
    w = max(len(s) for s in labels)
    cw = max(len(str(x)) for row in res.entries for x in row)
    lines = [f"group {res.group}: {len(labels)} orbits of degree-{res.labels[0].degree} monomials"]
    for lab, row in zip(labels, res.entries):
        lines.append(lab.ljust(w) + "  " + " ".join(str(x).rjust(cw) for x in row))
    lines.append(f"determinant: {res.determinant}")
    lines.append(f"prime factors: {res.prime_factors}")
    return "\n".join(lines)


def _csv_matrix(res: MatrixResult) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    labels = [str(m) for m in res.labels]
    wr.writerow([""] + labels)
    for lab, row in zip(labels, res.entries):
        wr.writerow([lab] + row)
    return buf.getvalue().rstrip("\n")


def _pretty_verdict(v) -> str:
    lines = [f"group {v.group} ({v.representation}, {v.basis} basis): {v.kind.upper()}"]
    if v.determinant is not None:
        lines.append(f"determinant: {v.determinant}")
    if v.prime_factors is not None:
        lines.append(f"prime factors of determinant: {v.prime_factors or 'none (unit)'}")
    if v.hyperplane is not None:
        lines.append(f"left kernel vector: {v.hyperplane}")
    if v.witness is not None:
        lines.append(f"witness: {v.witness}  coefficient {v.witness_coefficient}  [{v.witness_source}]")
    if v.diagonal is not None:
        lines.append(f"{len(v.diagonal)} invariant monomials, all diagonal coefficients nonzero")
        for m, c in v.diagonal:
            lines.append(f"  {m}: {c}")
    for note in v.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _pretty_witness(w: WitnessResult) -> str:
    status = "VANISHES" if w.vanishes else "DOES NOT VANISH"
    return "\n".join(
        [
            f"group {w.group}, case {w.case} {w.params}",
            f"monomial: {w.monomial}",
            f"degree {w.degree}, weight {tuple(w.weight)}",
            f"diagonal coefficient: {w.coefficient}  -> {status}",
        ]
    )


def _pretty_certs(b: CertificateBatch) -> str:
    lines = [f"p = {b.p}: {len(b.certificates)} compositions"]
    for c in b.certificates:
        counts = ", ".join(f"{x}:{n}" for x, n in c.counts.items())
        flag = "ok" if c.ok else "FAILED " + ",".join(k for k, v in c.checks.items() if not v)
        lines.append(f"  a={c.a}  |S_x|=({counts})  reduced={list(c.reduced_poly)}  {flag}")
    return "\n".join(lines)


def _pretty_lemma2(r) -> str:
    d = r.to_dict()
    lines = [
        f"F_2^{r.k}, v1 = {d['v1']}",
        f"even subsets summing to 0: {r.even_zero}",
        f"odd subsets summing to v1: {r.odd_v1}",
        "bijection A -> A symmetric-difference {v1}:",
    ]
    for A, B in d["pairing"]:
        lines.append("  {" + ",".join(A) + "} -> {" + ",".join(B) + "}")
    return "\n".join(lines)


def _pretty_sweep(s: SweepResult) -> str:
    lines = [f"{'group':<10}{'order':>6}  {'verdict':<15}{'expected':<15}conforms"]
    for r in s.rows:
        lines.append(
            f"{r.group:<10}{r.order:>6}  {r.verdict:<15}{r.expected:<15}{'yes' if r.conforms else 'NO'}"
        )
    return "\n".join(lines)


# -- argument handling ---------------------------------------------------------


def _group_arg(text: str) -> AbelianGroup:
    try:
        return parse_group_spec(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nql", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def fmt(p, choices=("pretty", "json")):
        p.add_argument("--format", choices=choices, default="pretty")

    p = sub.add_parser("matrix", help="coefficient matrix of the regular permutation action")
    p.add_argument("--group", type=_group_arg, required=True)
    fmt(p, ("pretty", "json", "csv"))

    p = sub.add_parser("check", help="decide nondegeneracy")
    p.add_argument("--group", type=_group_arg, required=True)
    p.add_argument("--basis", choices=("perm", "eigen"), default="eigen")
    p.add_argument("--multiplicities", type=_int_list, default=None,
                   help="copies of each character, in group element order (eigen basis)")
    fmt(p)

    p = sub.add_parser("witness", help="case-dispatched degeneracy witness")
    p.add_argument("--group", type=_group_arg, required=True)
    fmt(p)

    p = sub.add_parser("certify-prime", help="prime-order certificates")
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--a", type=_int_list, default=None, help="one composition, comma-separated")
    fmt(p)

    p = sub.add_parser("lemma2", help="even/odd subset counts in F_2^k")
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--v1", required=True, help="bit string of length DIM, e.g. 101")
    fmt(p)

    p = sub.add_parser("sweep", help="check every abelian group up to an order")
    p.add_argument("--max-order", type=_positive_int, required=True)
    fmt(p)
    return ap


def run(args, argv: list[str]) -> tuple[RunReport, str, int]:
    """Execute a parsed command; returns (report, pretty text, exit code)."""
    cmd = args.cmd
    if cmd == "matrix":
        res = compute_matrix(args.group)
        rep = RunReport(argv, "matrix", res.to_dict(), res.group, "regular-perm")
        text = _csv_matrix(res) if args.format == "csv" else _pretty_matrix(res)
        return rep, text, EXIT_OK

    if cmd == "check":
        G = args.group
        if args.multiplicities is not None:
            if args.basis != "eigen":
                raise UsageError("--multiplicities requires --basis eigen")
            try:
                action = eigen_action_with_multiplicities(G, args.multiplicities)
            except ValueError as e:
                raise UsageError(str(e)) from None
        elif args.basis == "perm":
            action = regular_perm_action(G)
        else:
            action = regular_eigen_action(G)
        method = "entries" if G.order <= 5 else "columns"
        v = nondegenerate(action, method=method)
        rep = RunReport(argv, "verdict", v.to_dict(), v.group, v.representation)
        return rep, _pretty_verdict(v), EXIT_OK if v.nondegenerate else EXIT_NEGATIVE

    if cmd == "witness":
        try:
            w = compute_witness(args.group)
        except ValueError as e:
            raise UsageError(str(e)) from None
        rep = RunReport(argv, "witness", w.to_dict(), w.group, "regular-eigen")
        return rep, _pretty_witness(w), EXIT_OK if w.vanishes else EXIT_NEGATIVE

    if cmd == "certify-prime":
        if not is_prime(args.p):
            raise UsageError(f"{args.p} is not prime")
        try:
            batch = certify_prime(args.p, args.a)
        except ValueError as e:
            raise UsageError(str(e)) from None
        rep = RunReport(argv, "certificates", batch.to_dict(), str(args.p), "regular-eigen")
        ok = all(c.ok for c in batch.certificates)
        return rep, _pretty_certs(batch), EXIT_OK if ok else EXIT_BUG

    if cmd == "lemma2":
        bits = args.v1
        if len(bits) != args.dim or set(bits) - {"0", "1"}:
            raise UsageError(f"--v1 must be a bit string of length {args.dim}")
        try:
            res = lemma2_counts(args.dim, int(bits, 2))
        except ValueError as e:
            raise UsageError(str(e)) from None
        rep = RunReport(argv, "lemma2", res.to_dict())
        ok = res.even_zero == res.odd_v1 and check_lemma2_pairing(res)
        return rep, _pretty_lemma2(res), EXIT_OK if ok else EXIT_BUG

    if cmd == "sweep":
        s = sweep(args.max_order)
        rep = RunReport(argv, "sweep", s.to_dict(), None, "regular-eigen")
        return rep, _pretty_sweep(s), EXIT_OK if s.conforms else EXIT_NEGATIVE

    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        thread_cap()
        start = time.perf_counter()
        rep, text, code = run(args, argv)
        rep.duration_s = round(time.perf_counter() - start, 6)
    except (UsageError, ValueError) as e:
        print(f"nql: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateFailure as e:
        print(f"nql: certificate failure: {e}", file=sys.stderr)
        return EXIT_BUG
    print(rep.to_json() if args.format == "json" else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
