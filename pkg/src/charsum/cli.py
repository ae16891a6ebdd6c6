"""Command-line front end: closed-form evaluation, brute-force oracles,
field inspection and verification sweeps.

Exit codes: 0 success (and zero sweep failures), 1 sweep found failures,
2 argument or precondition error.
"""

import argparse
import sys

from .field import (PreconditionError, build_field, is_prime_power,
                    parse_element, parse_field_spec)
from .charsums import DSpec, count_D_closed, power_sum_closed
from . import oracles, valuesets
from .harness import (ALL_SUITES, SweepConfig, emit_report, run_suite)

SQUARE_PRINT_BOUND = 200


def _sorted_elems(elems):
    return sorted(elems, key=lambda x: x.index)


def _set_str(elems):
    return "{" + ",".join(str(x) for x in _sorted_elems(elems)) + "}"


def _parse_poly(f, text):
    """Ascending coefficient list: items separated by commas are single
    coefficients for prime fields; for extensions, coefficients are
    colon-separated groups of comma-separated prime-field entries."""
    if f.n == 1:
        return [f.from_int(int(t)) for t in text.split(",")]
    return [parse_element(f, group.replace(":", ","))
            for group in text.split(";")]


def _chi_class(v):
    if v not in (1, -1):
        raise PreconditionError("chi class must be 1 or -1")
    return v


def cmd_field_info(args):
    f = parse_field_spec(args.field)
    print(f"p = {f.p}")
    print(f"n = {f.n}")
    print(f"q = {f.q}")
    print(f"modulus = {f.modulus_str()}")
    if f.q % 2 == 1:
        from .charsums import chi_of_minus_one
        if f.q <= SQUARE_PRINT_BOUND:
            squares = [x for x in f.elements()
                       if not x.is_zero() and f.chi_raw(x.raw) == 1]
            print(f"nonzero squares = {_set_str(squares)}")
        print(f"chi(-1) = {chi_of_minus_one(f.q):+d}")
    return 0


def cmd_eval(args):
    name = args.formula
    f = parse_field_spec(args.field)

    if name == "power-sum":
        spec = DSpec(_chi_class(args.chi_a), _chi_class(args.chi_b))
        print(power_sum_closed(f, spec, args.k))
    elif name == "count-d":
        spec = DSpec(_chi_class(args.chi_a), _chi_class(args.chi_b))
        print(count_D_closed(f, spec))
    elif name == "quartic-sum":
        print(valuesets.quartic_sum_closed(
            f, parse_element(f, args.a), parse_element(f, args.b)))
    elif name == "quartic-size":
        print(valuesets.quartic_image_size(f, parse_element(f, args.a)))
    elif name == "classify-t":
        print(valuesets.classify_T(f.q).value)
    elif name == "lowdeg-sum":
        poly = valuesets.LowDegreePoly(tuple(_parse_poly(f, args.poly)))
        print(valuesets.low_degree_sum_closed(f, poly))
    elif name == "cubic-size":
        print(valuesets.cubic_image_size(f, parse_element(f, args.a)))
    elif name == "power-sum-poly":
        print(valuesets.power_poly_sum_closed(
            f, parse_element(f, args.a), parse_element(f, args.b), args.n))
    elif name == "twisted":
        print(valuesets.twisted_sum_zero(
            f, args.r, args.s, _parse_poly(f, args.poly_b)))
    elif name == "shifted":
        print(valuesets.shifted_sum(
            f, args.r, args.s, _parse_poly(f, args.poly_b),
            parse_element(f, args.shift)))
    elif name == "char3-h":
        res = valuesets.char3_h_analysis(f)
        print(f"image_size={res.image_size} sum={res.total}")
    elif name == "remark-q":
        print(valuesets.artin_schreier_remark_sum(f, args.Q))
    else:
        raise PreconditionError(f"unknown formula {name!r}")
    return 0


def cmd_oracle(args):
    f = parse_field_spec(args.field)
    kind = args.kind
    if kind == "enumerate-d":
        spec = DSpec(_chi_class(args.chi_a), _chi_class(args.chi_b))
        elems = _sorted_elems(oracles.enumerate_D(f, spec))
        print(",".join(str(x) for x in elems) if f.n == 1 else
              ";".join(str(x) for x in elems))
    elif kind == "power-sum":
        spec = DSpec(_chi_class(args.chi_a), _chi_class(args.chi_b))
        print(oracles.power_sum_oracle(f, spec, args.k))
    elif kind == "value-set":
        summary = oracles.value_set(f, _parse_poly(f, args.poly))
        print(f"{_set_str(summary.values)} size={summary.size} "
              f"sum={summary.sum}")
    elif kind == "t-set":
        print(_set_str(oracles.T_oracle(f)))
    elif kind == "theta-phi":
        print(oracles.theta_phi_check(f, parse_element(f, args.a)))
    else:
        raise PreconditionError(f"unknown oracle {kind!r}")
    return 0


def cmd_verify(args):
    suites = (ALL_SUITES if args.suites == "all"
              else tuple(args.suites.split(",")))
    cfg = SweepConfig(q_min=args.q_min, q_max=args.q_max, parity=args.parity,
                      suites=suites, k_budget=args.k_budget,
                      sample_seed=args.seed, worker_count=args.workers)
    report = run_suite(cfg)
    payload = emit_report(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return 0 if report.n_fail == 0 else 1


def build_parser():
    top = argparse.ArgumentParser(
        prog="charsum",
        description="Exact finite-field character-sum and value-set "
                    "formulas, with brute-force verification.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="describe a field")
    p.add_argument("field")
    p.set_defaults(fn=cmd_field_info)

    p = sub.add_parser("eval", help="evaluate a closed-form formula")
    p.add_argument("formula", choices=[
        "power-sum", "count-d", "quartic-sum", "quartic-size", "classify-t",
        "lowdeg-sum", "power-sum-poly", "twisted", "shifted", "char3-h",
        "remark-q", "cubic-size"])
    p.add_argument("--field", required=True)
    p.add_argument("--chi-a", type=int)
    p.add_argument("--chi-b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--poly")
    p.add_argument("--poly-b")
    p.add_argument("--shift")
    p.add_argument("--Q", type=int)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("oracle", help="compute a brute-force oracle value")
    p.add_argument("kind", choices=[
        "enumerate-d", "power-sum", "value-set", "t-set", "theta-phi"])
    p.add_argument("--field", required=True)
    p.add_argument("--chi-a", type=int)
    p.add_argument("--chi-b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--poly")
    p.add_argument("--a")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("verify", help="run closed-form-vs-oracle sweeps")
    p.add_argument("--q-min", type=int, default=3)
    p.add_argument("--q-max", type=int, default=100)
    p.add_argument("--parity", choices=["odd", "even", "all"], default="all")
    p.add_argument("--suites", default="all")
    p.add_argument("--k-budget", type=int, default=50)
    p.add_argument("--format", choices=["json", "csv", "text"],
                   default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)
    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, AttributeError) as exc:
        # a formula invoked without its required parameters lands here
        print(f"error: missing or invalid parameters ({exc})", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
