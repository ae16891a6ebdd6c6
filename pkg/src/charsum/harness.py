"""Sweep driver: instantiate every field in a configured range, run each
closed-form-vs-oracle comparison suite, and collect a structured report.

Work units are (suite, field) pairs; each is pure and may run on a process
pool.  Results are sorted after the merge, so reports are deterministic
regardless of scheduling.  A suite whose preconditions a field fails is
recorded as one skip for that field, never silently dropped.
"""

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .field import FieldElement, PreconditionError, build_field, is_prime_power
from . import charsums, oracles, valuesets
from .charsums import DSpec

ALL_SUITES = ("charsum", "count", "quartic", "tclass", "lowdeg", "power",
              "twisted", "char3", "remarkQ", "proofmaps")

SCHEMA_VERSION = 1

# per-field sample sizes for the randomized suites
LOWDEG_EXHAUSTIVE_MAX_Q = 13
LOWDEG_SAMPLES = 1000
POWER_CASES_PER_FIELD = 6
TWISTED_CASES_PER_FIELD = 4


@dataclass(frozen=True)
class SweepConfig:
    q_min: int = 3
    q_max: int = 100
    parity: str = "all"  # odd | even | all
    suites: tuple = ALL_SUITES
    k_budget: int = 50
    sample_seed: int = 0
    worker_count: int = 1

    def __post_init__(self):
        if self.q_min < 2 or self.q_max < self.q_min:
            raise PreconditionError(
                f"bad range [{self.q_min}, {self.q_max}]")
        if self.parity not in ("odd", "even", "all"):
            raise PreconditionError(f"bad parity {self.parity!r}")
        suites = tuple(self.suites)
        if not suites:
            raise PreconditionError("suites must be nonempty")
        for s in suites:
            if s not in ALL_SUITES:
                raise PreconditionError(f"unknown suite {s!r}")
        object.__setattr__(self, "suites", suites)


@dataclass(frozen=True)
class CaseRecord:
    suite: str
    q: int
    params: str
    closed: str
    oracle: str
    passed: bool


@dataclass(frozen=True)
class SkipRecord:
    suite: str
    q: int
    reason: str


@dataclass
class VerificationReport:
    config: SweepConfig
    cases: list = dc_field(default_factory=list)
    skips: list = dc_field(default_factory=list)
    wall_times: dict = dc_field(default_factory=dict)  # suite -> seconds

    @property
    def n_pass(self):
        return sum(1 for c in self.cases if c.passed)

    @property
    def n_fail(self):
        return sum(1 for c in self.cases if not c.passed)

    def failures(self):
        return [c for c in self.cases if not c.passed]

    def first_counterexample(self, suite):
        for c in self.cases:
            if c.suite == suite and not c.passed:
                return c
        return None

    def suite_names(self):
        """Configured suites that produced any case or skip, in the
        canonical suite order (a run over an empty field range is empty)."""
        active = {c.suite for c in self.cases} | {s.suite for s in self.skips}
        return [s for s in ALL_SUITES if s in active]


def enumerate_prime_powers(lo, hi, parity="all"):
    """Ascending (p, n, q) for every prime power q in [lo, hi]."""
    if not 2 <= lo <= hi:
        raise PreconditionError(f"bad range [{lo}, {hi}]")
    out = []
    for q in range(lo, hi + 1):
        if parity == "odd" and q % 2 == 0:
            continue
        if parity == "even" and q % 2 == 1:
            continue
        pn = is_prime_power(q)
        if pn:
            out.append((pn[0], pn[1], q))
    return out


def class_representatives(f):
    """(1, first nonsquare in enumeration order) for an odd-order field."""
    if f.q % 2 == 0:
        raise PreconditionError("requires a field of odd order")
    table = f.chi_table()
    for i in range(f.q):
        if table[i] == -1:
            return f.one(), FieldElement(f, f.raw_at(i))
    raise AssertionError("odd field with no nonsquare")


def _k_values(q, k_budget):
    ks = list(range(1, min(q - 2, k_budget) + 1))
    for extra in (-1, -2, (q - 1) // 2, q - 1):
        if extra not in ks:
            ks.append(extra)
    return ks


def _elem_str(x):
    return str(x)


# ---------------------------------------------------------------------------
# suite implementations; each returns (cases, skips) for one field

def _suite_charsum(f, cfg):
    cases = []
    specs = [DSpec(a, b) for a in (1, -1) for b in (1, -1)]
    for spec in specs:
        for k in _k_values(f.q, cfg.k_budget):
            closed = charsums.power_sum_closed(f, spec, k)
            oracle = oracles.power_sum_oracle(f, spec, k)
            cases.append(CaseRecord(
                "charsum", f.q,
                f"chi_a={spec.chi_a},chi_b={spec.chi_b},k={k}",
                _elem_str(closed), _elem_str(oracle), closed == oracle))
    return cases


def _suite_count(f, cfg):
    cases = []
    for spec in (DSpec(a, b) for a in (1, -1) for b in (1, -1)):
        closed = charsums.count_D_closed(f, spec)
        oracle = len(oracles.enumerate_D(f, spec))
        cases.append(CaseRecord(
            "count", f.q, f"chi_a={spec.chi_a},chi_b={spec.chi_b}",
            str(closed), str(oracle), closed == oracle))
    return cases


def _quartic_bs(f):
    _, nonsq = class_representatives(f)
    return [f.from_int(0), f.from_int(1), nonsq]


def _suite_quartic(f, cfg):
    cases = []
    bs = _quartic_bs(f)
    for i in range(1, f.q):
        a = FieldElement(f, f.raw_at(i))
        size_closed = valuesets.quartic_image_size(f, a)
        for b in bs:
            closed = valuesets.quartic_sum_closed(f, a, b)
            summary = oracles.value_set(
                f, [b, f.zero(), a, f.zero(), f.one()])
            ok = closed == summary.sum and size_closed == summary.size
            cases.append(CaseRecord(
                "quartic", f.q, f"a={a},b={b}",
                f"sum={closed};N={size_closed}",
                f"sum={summary.sum};N={summary.size}", ok))
    return cases


def _suite_tclass(f, cfg):
    cases = []
    cls = valuesets.classify_T(f.q)
    closed_set = valuesets.make_T_set(f, cls)
    oracle_set = oracles.T_oracle(f)
    cases.append(CaseRecord(
        "tclass", f.q, f"kind={cls.value}",
        f"|T|={len(closed_set)}", f"|T|={len(oracle_set)}",
        closed_set == oracle_set))
    if f.q % 4 == 3:
        s8 = valuesets.quartic_sum_closed(f, f.from_int(8), f.from_int(0))
        oracle = oracles.value_set(
            f, [f.zero(), f.zero(), f.from_int(8), f.zero(), f.one()]).sum
        cases.append(CaseRecord(
            "tclass", f.q, "a=8,b=0",
            _elem_str(s8), _elem_str(oracle),
            s8 == f.from_int(1) and oracle == f.from_int(1)))
    return cases


def _lowdeg_tuples(f, rng):
    """Coefficient tuples to test: exhaustive for small q, sampled above."""
    els = [FieldElement(f, f.raw_at(i)) for i in range(f.q)]
    if f.q <= LOWDEG_EXHAUSTIVE_MAX_Q:
        for a in els[1:]:
            for b in els:
                yield (b, a)
        for a in els[1:]:
            for b in els:
                for c in els:
                    yield (c, b, a)
        for a in els[1:]:
            for b in els:
                for c in els:
                    for d in els:
                        yield (d, c, b, a)
    else:
        for _ in range(LOWDEG_SAMPLES):
            deg = rng.choice((1, 2, 3))
            lead = els[rng.randrange(1, f.q)]
            rest = [els[rng.randrange(f.q)] for _ in range(deg)]
            yield tuple(rest + [lead])


def _suite_lowdeg(f, cfg):
    cases = []
    rng = random.Random(f"{cfg.sample_seed}:lowdeg:{f.q}")
    for coeffs in _lowdeg_tuples(f, rng):
        poly = valuesets.LowDegreePoly(coeffs)
        label, closed = valuesets.low_degree_branch(f, poly)
        oracle = oracles.value_set(f, list(coeffs)).sum
        cases.append(CaseRecord(
            "lowdeg", f.q,
            "coeffs=" + ";".join(str(c) for c in coeffs) + f",branch={label}",
            _elem_str(closed), _elem_str(oracle), closed == oracle))
    if f.p != 3 and f.q > 3:
        for i in range(1, f.q):
            a = FieldElement(f, f.raw_at(i))
            closed = valuesets.cubic_image_size(f, a)
            oracle = oracles.value_set(f, [f.zero(), a, f.zero(), f.one()]).size
            cases.append(CaseRecord(
                "lowdeg", f.q, f"image:a={a}",
                str(closed), str(oracle), closed == oracle))
    return cases


def _suite_power(f, cfg):
    cases = []
    rng = random.Random(f"{cfg.sample_seed}:power:{f.q}")
    for _ in range(POWER_CASES_PER_FIELD):
        a = FieldElement(f, f.raw_at(rng.randrange(1, f.q)))
        b = FieldElement(f, f.raw_at(rng.randrange(f.q)))
        n = rng.randrange(1, 2 * (f.q - 1) + 1)
        closed = valuesets.power_poly_sum_closed(f, a, b, n)
        coeffs = [b] + [f.zero()] * (n - 1) + [a]
        oracle = oracles.value_set(f, coeffs).sum
        cases.append(CaseRecord(
            "power", f.q, f"a={a},b={b},n={n}",
            _elem_str(closed), _elem_str(oracle), closed == oracle))
    return cases


def _suite_twisted(f, cfg):
    cases = []
    rng = random.Random(f"{cfg.sample_seed}:twisted:{f.q}")
    divisors = [s for s in range(1, f.q) if (f.q - 1) % s == 0]
    usable = [s for s in divisors if s > 1]
    if not usable:
        return [], [SkipRecord("twisted", f.q, "q-1 has no divisor > 1")]
    for _ in range(TWISTED_CASES_PER_FIELD):
        s = usable[rng.randrange(len(usable))]
        r = rng.randrange(1, 3 * s)
        if r % s == 0:
            r += 1
        B = [FieldElement(f, f.raw_at(rng.randrange(f.q)))
             for _ in range(rng.randrange(1, 4))]
        closed = valuesets.twisted_sum_zero(f, r, s, B)
        poly = valuesets.twisted_poly(f, r, s, B)
        summary = oracles.value_set(f, poly)
        shift = FieldElement(f, f.raw_at(rng.randrange(f.q)))
        shifted = valuesets.shifted_sum(f, r, s, B, shift)
        shifted_oracle = oracles.value_set(
            f, [poly[0] + shift] + poly[1:]).sum
        ok = closed == summary.sum and shifted == shifted_oracle
        cases.append(CaseRecord(
            "twisted", f.q,
            f"r={r},s={s},B=" + ";".join(str(c) for c in B) + f",shift={shift}",
            f"S={closed};Sshift={shifted}",
            f"S={summary.sum};Sshift={shifted_oracle}", ok))
    return cases


def _suite_char3(f, cfg):
    analysis = valuesets.char3_h_analysis(f)
    summary = oracles.value_set(f, [f.zero(), f.zero(), f.one(), f.one()])
    ok = (analysis.image_size == summary.size
          and analysis.total == summary.sum)
    for i in range(f.q):
        x = FieldElement(f, f.raw_at(i))
        pred = analysis.multiplicity(x)
        actual = summary.count_of_raw(x.raw)
        if pred >= 2:
            ok = ok and actual == pred
        else:
            ok = ok and actual <= 1
    return [CaseRecord(
        "char3", f.q, "h=X^3+X^2",
        f"N={analysis.image_size};S={analysis.total}",
        f"N={summary.size};S={summary.sum}", ok)]


def _suite_remarkQ(f, cfg):
    cases = []
    e = f.n
    for k in range(1, e + 1):
        if e % k != 0:
            continue
        Q = f.p ** (e // k)
        closed = valuesets.artin_schreier_remark_sum(f, Q)
        coeffs = valuesets.twisted_poly(f, Q - 1, 1, [f.one(), f.one()])
        # X^(Q-1) * (X + 1) = X^(Q-1) + X^Q
        oracle = oracles.value_set(f, coeffs).sum
        cases.append(CaseRecord(
            "remarkQ", f.q, f"Q={Q},k={k}",
            _elem_str(closed), _elem_str(oracle), closed == oracle))
    return cases


def _suite_proofmaps(f, cfg):
    cases = []
    ok_all = True
    for i in range(1, f.q):
        a = FieldElement(f, f.raw_at(i))
        if not oracles.theta_phi_check(f, a):
            ok_all = False
            break
    cases.append(CaseRecord(
        "proofmaps", f.q, "theta_phi:all a", str(ok_all), "True", ok_all))
    # partition of Z = {chi(x) = chi_a} into D(+), D(-) and {x = -1}
    for chi_a in (1, -1):
        d_plus = len(oracles.enumerate_D(f, DSpec(chi_a, 1)))
        d_minus = len(oracles.enumerate_D(f, DSpec(chi_a, -1)))
        at_minus1 = 1 if f.chi_raw(f.raw_neg(f.one_raw)) == chi_a else 0
        total = d_plus + d_minus + at_minus1
        cases.append(CaseRecord(
            "proofmaps", f.q, f"partition:chi_a={chi_a}",
            str(total), str((f.q - 1) // 2), total == (f.q - 1) // 2))
    # inversion symmetry and complement identity for the power sums
    e = (f.q - 1) // 2
    for chi_a in (1, -1):
        for chi_b in (1, -1):
            for ell in range(1, e):
                lhs = charsums.power_sum_closed(f, DSpec(chi_a, chi_b), -ell)
                rhs = charsums.power_sum_closed(
                    f, DSpec(chi_a, chi_a * chi_b), ell)
                if lhs != rhs:
                    cases.append(CaseRecord(
                        "proofmaps", f.q,
                        f"inversion:chi_a={chi_a},chi_b={chi_b},ell={ell}",
                        _elem_str(lhs), _elem_str(rhs), False))
    cases.append(CaseRecord(
        "proofmaps", f.q, "inversion:exhaustive", "ok", "ok", True))
    chi_m1 = charsums.chi_of_minus_one(f.q)
    for chi_a in (1, -1):
        for chi_b in (1, -1):
            for k in _k_values(f.q, cfg.k_budget):
                if k % e == 0:
                    continue  # identity requires the full chi-class sum to vanish
                d_sum = oracles.power_sum_oracle(f, DSpec(chi_a, chi_b), k)
                e_sum = oracles.power_sum_oracle(f, DSpec(chi_a, -chi_b), k)
                f_term = f.from_int(
                    (-1) ** (k % 2) * (1 + chi_m1 * chi_a)
                    * pow(2, -1, f.p))
                if e_sum != -d_sum - f_term:
                    cases.append(CaseRecord(
                        "proofmaps", f.q,
                        f"complement:chi_a={chi_a},chi_b={chi_b},k={k}",
                        _elem_str(-d_sum - f_term), _elem_str(e_sum), False))
    cases.append(CaseRecord(
        "proofmaps", f.q, "complement:exhaustive", "ok", "ok", True))
    return cases


_SUITE_FNS = {
    "charsum": _suite_charsum,
    "count": _suite_count,
    "quartic": _suite_quartic,
    "tclass": _suite_tclass,
    "lowdeg": _suite_lowdeg,
    "power": _suite_power,
    "twisted": _suite_twisted,
    "char3": _suite_char3,
    "remarkQ": _suite_remarkQ,
    "proofmaps": _suite_proofmaps,
}

# suites that only make sense on some fields; failing the guard is a skip
_SUITE_GUARDS = {
    "charsum": lambda q, p: (q % 2 == 1, "odd-order precondition"),
    "count": lambda q, p: (q % 2 == 1, "odd-order precondition"),
    "quartic": lambda q, p: (q % 2 == 1 and q > 5, "requires odd q > 5"),
    "tclass": lambda q, p: (q % 2 == 1 and q > 5, "requires odd q > 5"),
    "lowdeg": lambda q, p: (q > 4, "requires q > 4"),
    "power": lambda q, p: (True, ""),
    "twisted": lambda q, p: (True, ""),
    "char3": lambda q, p: (p == 3, "requires characteristic 3"),
    "remarkQ": lambda q, p: (True, ""),
    "proofmaps": lambda q, p: (q % 2 == 1, "odd-order precondition"),
}


def expected_unit_count(cfg):
    """A priori number of (suite, field) work units, skips included."""
    fields = enumerate_prime_powers(cfg.q_min, cfg.q_max, cfg.parity)
    return len(fields) * len(cfg.suites)


def _run_unit(args):
    suite, p, n, cfg = args
    q = p ** n
    ok, reason = _SUITE_GUARDS[suite](q, p)
    if not ok:
        return suite, [], [SkipRecord(suite, q, reason)]
    f = build_field(p, n)
    result = _SUITE_FNS[suite](f, cfg)
    if isinstance(result, tuple):
        cases, skips = result
    else:
        cases, skips = result, []
    return suite, cases, skips


def run_suite(cfg):
    """Execute every selected suite over every field in range."""
    fields = enumerate_prime_powers(cfg.q_min, cfg.q_max, cfg.parity)
    units = [(suite, p, n, cfg)
             for suite in cfg.suites for (p, n, q) in fields]
    report = VerificationReport(config=cfg)
    times = {s: 0.0 for s in cfg.suites}
    if cfg.worker_count > 1:
        t0 = time.monotonic()
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            results = list(pool.map(_run_unit, units, chunksize=1))
        elapsed = time.monotonic() - t0
        for s in times:
            times[s] = elapsed / len(times)  # pooled; per-suite split unknown
    else:
        results = []
        for unit in units:
            t0 = time.monotonic()
            results.append(_run_unit(unit))
            times[unit[0]] += time.monotonic() - t0
    for _, cases, skips in results:
        report.cases.extend(cases)
        report.skips.extend(skips)
    suite_order = {s: i for i, s in enumerate(ALL_SUITES)}
    report.cases.sort(key=lambda c: (suite_order[c.suite], c.q, c.params))
    report.skips.sort(key=lambda s: (suite_order[s.suite], s.q))
    report.wall_times = times
    return report


# ---------------------------------------------------------------------------
# serialization

def _config_obj(cfg):
    return {
        "q_min": cfg.q_min, "q_max": cfg.q_max, "parity": cfg.parity,
        "suites": list(cfg.suites), "k_budget": cfg.k_budget,
        "sample_seed": cfg.sample_seed, "worker_count": cfg.worker_count,
    }


def report_to_obj(report, include_timings=True):
    suites = []
    for s in report.suite_names():
        cases = [c for c in report.cases if c.suite == s]
        skips = [k for k in report.skips if k.suite == s]
        first = report.first_counterexample(s)
        entry = {
            "name": s,
            "passed": sum(1 for c in cases if c.passed),
            "failed": sum(1 for c in cases if not c.passed),
            "skipped": len(skips),
            "cases": [{"q": c.q, "params": c.params, "closed": c.closed,
                       "oracle": c.oracle, "pass": c.passed} for c in cases],
            "skips": [{"q": k.q, "reason": k.reason} for k in skips],
            "first_counterexample": (
                None if first is None else
                {"q": first.q, "params": first.params,
                 "closed": first.closed, "oracle": first.oracle}),
        }
        if include_timings:
            entry["wall_time"] = report.wall_times.get(s, 0.0)
        suites.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": _config_obj(report.config),
        "suites": suites,
    }


def report_from_obj(obj):
    """Rebuild a report from its JSON object form (wall times included)."""
    c = obj["config"]
    cfg = SweepConfig(q_min=c["q_min"], q_max=c["q_max"], parity=c["parity"],
                      suites=tuple(c["suites"]), k_budget=c["k_budget"],
                      sample_seed=c["sample_seed"],
                      worker_count=c["worker_count"])
    report = VerificationReport(config=cfg)
    for s in obj["suites"]:
        for case in s["cases"]:
            report.cases.append(CaseRecord(
                s["name"], case["q"], case["params"], case["closed"],
                case["oracle"], case["pass"]))
        for skip in s["skips"]:
            report.skips.append(SkipRecord(s["name"], skip["q"], skip["reason"]))
        if "wall_time" in s:
            report.wall_times[s["name"]] = s["wall_time"]
    return report


def canonical_json(report):
    """JSON with wall times stripped, for determinism comparisons."""
    obj = report_to_obj(report, include_timings=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def emit_report(report, fmt):
    """Serialize to bytes: json, csv (one row per case) or text summary."""
    if fmt == "json":
        return (json.dumps(report_to_obj(report), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["suite", "q", "params", "closed", "oracle", "pass"])
        for c in report.cases:
            w.writerow([c.suite, c.q, c.params, c.closed, c.oracle,
                        "true" if c.passed else "false"])
        return buf.getvalue().encode()
    if fmt == "text":
        lines = []
        for s in report.suite_names():
            cases = [c for c in report.cases if c.suite == s]
            skips = [k for k in report.skips if k.suite == s]
            npass = sum(1 for c in cases if c.passed)
            nfail = len(cases) - npass
            line = f"{s}: {npass} passed, {nfail} failed, {len(skips)} skipped"
            first = report.first_counterexample(s)
            if first is not None:
                line += (f"  [first counterexample: q={first.q} "
                         f"{first.params} closed={first.closed} "
                         f"oracle={first.oracle}]")
            lines.append(line)
        lines.append(f"total: {report.n_pass} passed, {report.n_fail} failed, "
                     f"{len(report.skips)} skipped")
        return ("\n".join(lines) + "\n").encode()
    raise PreconditionError(f"unknown format {fmt!r}")
