"""Command-line front end: evaluate sums, verify congruence suites, emit tables.

Exit codes: 0 success, 1 verification failure or strategy disagreement,
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import closedforms as cf
from . import general as gen
from .errors import (
    BadParamsError,
    DisagreementError,
    ExpressionError,
    StrategyInapplicableError,
    WolstenholmeError,
)
from .expressions import parse_expression
from .modarith import Prime, fermat_reduce, is_prime, make_prime
from .oracle import (
    SumSpec,
    auto_exclusions,
    brute_sum,
    residue_matrix,
)
from .polyring import symbolic_coeff_table, symbolic_sum_table, table_to_json
from .verify import REGISTRY, resolve_theorems, run_verification

STRATEGIES = ("brute", "closed", "coeff", "esp", "all")


def spec_from_expression(pr: Prime, text: str) -> SumSpec:
    """Parse an expression and build its SumSpec.

    Exclusions are derived automatically from the denominators, matching the
    convention that a ratio sum skips exactly the k where a denominator
    vanishes.
    """
    numer, denom = parse_expression(text)
    terms = [(off % pr.p, exp) for off, exp in numer]
    terms += [(off % pr.p, -exp) for off, exp in denom]
    if not terms:
        raise ExpressionError("expression has no factors")
    for off, exp in terms:
        if abs(exp) > pr.p - 1:
            raise ExpressionError(
                f"exponent {abs(exp)} out of range: must be <= p-1 = {pr.p - 1}"
            )
    return SumSpec(pr, tuple(terms), auto_exclusions(pr, terms))


def _merged_positive_terms(pr: Prime, spec: SumSpec) -> tuple[list[tuple[int, int]], list[int]]:
    """Rewrite to all-positive exponents and merge repeated offsets.

    Returns (terms, excluded_ks).  Denominator factors (c+k)^-n become
    (c+k)^(p-1-n) (vanishing at the excluded k, so only the explicit
    exclusion list still matters); exponents merge additively with Fermat
    reduction, and a factor can drop out entirely when its exponents cancel
    or a denominator exponent equals p-1.
    """
    p = pr.p
    net: dict[int, int] = {}
    for off, exp in spec.terms:
        e = exp if exp >= 0 else (p - 1 + exp)  # exp < 0: -n -> p-1-n, may be 0
        net[off] = net.get(off, 0) + e
    terms = []
    for off, e in net.items():
        if e == 0:
            continue
        terms.append((off, fermat_reduce(pr, e)))
    return terms, sorted(spec.exclusions)


def _closed_complete_sum(pr: Prime, terms: list[tuple[int, int]]) -> int:
    """Closed form of a complete sum over k of a product of shifted powers."""
    p = pr.p
    if not terms:
        return 0  # p ones
    if len(terms) == 1:
        return cf.power_sum(pr, terms[0][1])
    shift = terms[-1][0]
    shifted = [((off - shift) % p, e) for off, e in terms]
    if len(shifted) == 2:
        (a, m), (_, n) = shifted
        return cf.product_pair_k(pr, a, m, n)
    if len(shifted) == 3:
        (a, m), (b, n), (_, s) = shifted
        return cf.triple_general(pr, a, b, m, n, s)
    gp = gen.GeneralSumParams(pr, tuple(o for o, _ in shifted), tuple(e for _, e in shifted))
    return gen.multi_index_J(gp)


def _excluded_correction(pr: Prime, terms, excluded) -> int:
    """Direct evaluation of the product at each excluded k, summed."""
    p = pr.p
    total = 0
    for k in excluded:
        prod = 1
        for off, e in terms:
            prod = prod * pow((off + k) % p, e, p) % p
        total += prod
    return total % p


def eval_closed(spec: SumSpec) -> int:
    """Closed-form route: complete-sum congruences plus a finite correction
    for the explicitly excluded k values."""
    pr = spec.pr
    if spec.exclusions != auto_exclusions(pr, spec.terms):
        raise StrategyInapplicableError(
            "closed strategy handles denominator-derived exclusion sets only"
        )
    terms, excluded = _merged_positive_terms(pr, spec)
    value = _closed_complete_sum(pr, terms)
    return (value - _excluded_correction(pr, terms, excluded)) % pr.p


def _general_params(spec: SumSpec) -> gen.GeneralSumParams:
    pr = spec.pr
    if spec.exclusions != auto_exclusions(pr, spec.terms):
        raise StrategyInapplicableError(
            "strategy handles denominator-derived exclusion sets only"
        )
    terms, _ = _merged_positive_terms(pr, spec)
    if not terms:
        raise StrategyInapplicableError("no factors left after merging exponents")
    return gen.GeneralSumParams(pr, tuple(o for o, _ in terms), tuple(e for _, e in terms))


def eval_coeff(spec: SumSpec) -> int:
    pr = spec.pr
    terms, excluded = _merged_positive_terms(pr, spec)
    gp = _general_params(spec)
    value = gen.coeff_extraction_sum(gp)
    return (value - _excluded_correction(pr, terms, excluded)) % pr.p


def eval_esp(spec: SumSpec) -> int:
    pr = spec.pr
    terms, excluded = _merged_positive_terms(pr, spec)
    gp = _general_params(spec)
    value = gen.esp_sum(gp)
    return (value - _excluded_correction(pr, terms, excluded)) % pr.p


def eval_multi_index(spec: SumSpec) -> int:
    pr = spec.pr
    terms, excluded = _merged_positive_terms(pr, spec)
    gp = _general_params(spec)
    value = gen.multi_index_J(gp)
    return (value - _excluded_correction(pr, terms, excluded)) % pr.p


def evaluate_strategy(spec: SumSpec, strategy: str) -> int:
    if strategy == "brute":
        return brute_sum(spec)
    if strategy == "closed":
        return eval_closed(spec)
    if strategy == "coeff":
        return eval_coeff(spec)
    if strategy == "esp":
        return eval_esp(spec)
    raise StrategyInapplicableError(f"unknown strategy {strategy!r}")


def evaluate_all(spec: SumSpec) -> dict[str, int]:
    """Every applicable strategy, plus the multi-index route and the
    corollary shortcut when it answers; raises DisagreementError on any
    mismatch (that is always a bug, never a data problem)."""
    results: dict[str, int] = {"brute": brute_sum(spec)}
    for name, fn in (
        ("closed", eval_closed),
        ("multi-index", eval_multi_index),
        ("coeff", eval_coeff),
        ("esp", eval_esp),
    ):
        try:
            results[name] = fn(spec)
        except StrategyInapplicableError:
            continue
    quick = cf.quick_case(spec)
    if quick is not None:
        results["quick"] = quick
    if len(set(results.values())) != 1:
        raise DisagreementError(f"strategies disagree: {results}")
    return results


def _parse_primes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            out.extend(q for q in range(max(5, lo), hi + 1) if is_prime(q))
        else:
            out.append(int(part))
    return out


def cmd_eval(args) -> int:
    pr = make_prime(args.prime)
    spec = spec_from_expression(pr, args.expression)
    if args.strategy == "all":
        results = evaluate_all(spec)
        for name, value in results.items():
            print(f"{name} {value}")
    else:
        print(evaluate_strategy(spec, args.strategy))
    return 0


def cmd_verify(args) -> int:
    theorems = resolve_theorems([t for t in args.theorems.split(",") if t.strip()])
    primes = _parse_primes(args.primes)
    for q in primes:
        make_prime(q)  # validate early: composites are usage errors
    print(f"seed {args.seed}", file=sys.stderr)
    reports = run_verification(theorems, primes, budget=args.budget, seed=args.seed,
                               mode=args.mod)
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        for rep in reports:
            out.write(rep.to_json_line() + "\n")
    finally:
        if args.output:
            out.close()
    ok = all(rep.passed for rep in reports)
    for rep in reports:
        status = "pass" if rep.passed else f"FAIL ({len(rep.failures)} failures)"
        print(
            f"{rep.theorem} p={rep.prime} grid={rep.grid} "
            f"{'exhaustive' if rep.exhaustive else 'sampled'} {status} "
            f"[{rep.elapsed:.2f}s]",
            file=sys.stderr,
        )
    return 0 if ok else 1


def _render_table(rows, start_index: int, fmt: str, pr: Prime, signed: bool) -> str:
    if fmt == "text":
        lines = [f"{start_index + i}: {row.render(signed=signed)}" for i, row in enumerate(rows)]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return table_to_json(pr, rows, start_index) + "\n"
    # csv: one monomial per line
    lines = ["row,a_exp,b_exp,coeff"]
    for i, row in enumerate(rows):
        for ai, bi, c in row.monomials():
            lines.append(f"{start_index + i},{ai},{bi},{c}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    pr = make_prime(args.prime)
    if args.kind == "residue-matrix":
        if args.a is None:
            raise BadParamsError("residue-matrix needs -a")
        mat = residue_matrix(pr, args.a)
        if args.format == "csv":
            text = mat.to_csv()
        elif args.format == "json":
            text = mat.to_json() + "\n"
        else:
            width = len(str(pr.p - 1))
            text = "\n".join(
                " ".join(str(v).rjust(width) for v in row) for row in mat.entries
            ) + "\n"
    else:
        if args.m is None or args.n is None:
            raise BadParamsError(f"{args.kind} needs -m and -n")
        if args.kind == "coeff-table":
            rows = symbolic_coeff_table(pr, args.m, args.n)
            start = 0
        else:
            rows = symbolic_sum_table(pr, args.m, args.n)
            start = 1
        text = _render_table(rows, start, args.format, pr, args.signed)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wolstenholme",
        description="Evaluate sums of products/ratios of shifted residue powers "
        "modulo a prime, and verify the associated congruence identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser(
        "eval",
        help="evaluate a sum over k = 0..p-1 (k with a vanishing denominator skipped)",
        description="Expression grammar: factors '(c+k)^e' (integer c >= 0, e >= 1) "
        "multiplied by juxtaposition, optional 'k^e' factors, one optional '/' "
        "separating numerator and denominator, parentheses for grouping; "
        "whitespace-insensitive.  Example: \"(7+k)^9 / ((3+k)^13 (8+k)^8)\".  "
        "Denominator zeros are excluded from the sum automatically.",
    )
    p_eval.add_argument("expression")
    p_eval.add_argument("-p", "--prime", type=int, required=True)
    p_eval.add_argument(
        "--strategy",
        choices=STRATEGIES,
        default="all",
        help="'all' runs every applicable strategy and requires agreement",
    )
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser(
        "verify",
        help="check theorem suites over prime grids, JSON-lines report to stdout",
        epilog="The WOLSTENHOLME_THREADS environment variable caps worker threads.",
    )
    p_verify.add_argument(
        "--theorems",
        default="all",
        help="comma-separated ids or 'all'; known ids: " + ", ".join(REGISTRY),
    )
    p_verify.add_argument(
        "--primes",
        default="5,7,11",
        help="comma-separated primes and/or ranges like 5..97 (primes only)",
    )
    p_verify.add_argument(
        "--budget",
        type=int,
        default=10_000,
        help="max grid size checked exhaustively; larger grids are sampled",
    )
    p_verify.add_argument("--seed", type=int, default=0, help="sampling seed (printed)")
    p_verify.add_argument(
        "--mod",
        choices=("p", "p2"),
        default="p2",
        help="'p2' (default) checks the stated mod-p^2 congruences at p^2; "
        "'p' reduces them to mod p",
    )
    p_verify.add_argument("-o", "--output", help="write the JSON-lines report here")
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser(
        "table",
        help="emit a residue matrix or a symbolic coefficient/sum table",
    )
    p_table.add_argument("kind", choices=("residue-matrix", "sum-table", "coeff-table"))
    p_table.add_argument("-p", "--prime", type=int, required=True)
    p_table.add_argument("-a", type=int, help="offset for residue-matrix")
    p_table.add_argument("-m", type=int, help="first exponent for the symbolic tables")
    p_table.add_argument("-n", type=int, help="second exponent for the symbolic tables")
    p_table.add_argument("-f", "--format", choices=("csv", "json", "text"), default="text")
    p_table.add_argument("--signed", action="store_true", help="balanced-residue display")
    p_table.add_argument("-o", "--output")
    p_table.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DisagreementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except WolstenholmeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
