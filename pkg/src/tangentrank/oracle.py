"""Independent validators: exact identity battery, interpolation oracle,
and comparison of computed symbolic output against transcribed reference
formulas (treated as data, so suspected transcription typos stay quarantined
from the build's correctness claims).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DegenerateParameters
from .homogpoly import HomogPoly
from .pipeline import SyzygyParams, build_lp, pipeline_stages
from .scalars import QQ


@dataclass
class BatteryReport:
    checks: list = field(default_factory=list)     # (name, passed, detail)
    warnings: list = field(default_factory=list)   # (name, passed, detail)

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, passed, detail))

    def warn(self, name: str, passed: bool, detail: str = "") -> None:
        self.warnings.append((name, passed, detail))

    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [name for name, ok, _ in self.checks if not ok]


def identity_battery(params: SyzygyParams) -> BatteryReport:
    """Exact checks of every structural identity at one parameter point.

    Verifies the syzygy kernel (LP.G^T = 0), the degree-d Euler relation
    J.(s,t)^T = d.G^T, and that LP.J reassembles from the extracted
    morphism as rows (-t*w_k, s*w_k).  The common-factor diagnostic on G
    is a warning only (fields only; it never gates certification).
    """
    report = BatteryReport()
    ring = params.ring
    lp, curve, jac, w, fh = pipeline_stages(params)
    dims = params.dims

    for k in range(dims.n):
        acc = HomogPoly.zero(ring, dims.d + lp.row_degrees[k])
        for i in range(dims.n + 1):
            acc = acc + lp.entries[k][i] * curve.polys[i]
        if not acc.is_zero():
            report.record("syzygy-kernel", False, f"row {k + 1} of LP.G^T is nonzero")
            break
    else:
        report.record("syzygy-kernel", True)

    d_scalar = ring.from_int(dims.d)
    s_pol, t_pol = HomogPoly.var_s(ring), HomogPoly.var_t(ring)
    euler_ok = all(
        jac.entries[i][0] * s_pol + jac.entries[i][1] * t_pol
        == curve.polys[i].scaled(d_scalar)
        for i in range(dims.n + 1))
    report.record("euler-degree", euler_ok,
                  "" if euler_ok else "J.(s,t)^T differs from d.G^T")

    rebuilt_ok = True
    components = list(fh.f) + list(fh.h)
    for k, wk in enumerate(components):
        if w.entries[k][0] != -(t_pol * wk) or w.entries[k][1] != s_pol * wk:
            rebuilt_ok = False
            break
    report.record("product-factorization", rebuilt_ok,
                  "" if rebuilt_ok else f"row {k + 1} of LP.J fails (-t, s) reassembly")

    if getattr(ring, "is_field", False):
        g = curve.polys[0]
        for other in curve.polys[1:]:
            g = g.gcd(other)
            if g.degree == 0:
                break
        report.warn("components-coprime", g.degree == 0,
                    "" if g.degree == 0 else f"common factor of degree {g.degree}")
    return report


def mutated_minors_battery(params: SyzygyParams) -> BatteryReport:
    """Adversarial control: flip one minor's sign and rerun the kernel check."""
    report = BatteryReport()
    ring = params.ring
    lp = build_lp(params)
    minors = lp.signed_maximal_minors()
    minors[0] = -minors[0]
    dims = params.dims
    broken = False
    for k in range(dims.n):
        acc = HomogPoly.zero(ring, dims.d + lp.row_degrees[k])
        for i in range(dims.n + 1):
            acc = acc + lp.entries[k][i] * minors[i]
        if not acc.is_zero():
            broken = True
            break
    report.record("mutation-detected", broken,
                  "" if broken else "sign flip went unnoticed; the kernel check is blind")
    return report


# -- interpolation oracle ------------------------------------------------------


def _interpolate_coeffs(xs, ys):
    """Exact Newton interpolation; returns monomial coefficients (ascending)."""
    from fractions import Fraction

    k = len(xs)
    table = [Fraction(y) for y in ys]
    coeffs_newton = [table[0]]
    for level in range(1, k):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i])
                 for i in range(len(table) - 1)]
        coeffs_newton.append(table[0])
    poly = [Fraction(0)] * k
    basis = [Fraction(1)]
    for level in range(k):
        for i, b in enumerate(basis):
            poly[i] += coeffs_newton[level] * b
        new_basis = [Fraction(0)] * (len(basis) + 1)
        x = Fraction(xs[level])
        for i, b in enumerate(basis):
            new_basis[i] -= x * b
            new_basis[i + 1] += b
        basis = new_basis
    return poly


def interpolation_directional_gradient(params: SyzygyParams, direction):
    """All components' directional derivatives along `direction` at t=0.

    Evaluates the pipeline at integer offsets along the line, interpolates
    the exact degree-(n+1) univariate per component, and reads the linear
    coefficient.  This never touches the jet machinery, so it is a fully
    independent oracle for it.  Rationals only.
    """
    from .pipeline import psi

    dims = params.dims
    if params.ring != QQ:
        raise ValueError("the interpolation oracle runs over the rationals")
    if len(direction) != dims.domain_dim:
        raise ValueError("direction length must equal domain_dim")
    needed = dims.n + 2
    flat = params.flatten()
    nodes, values = [], []
    candidate = 0
    attempts = 0
    while len(nodes) < needed:
        if attempts > needed + 24:
            raise DegenerateParameters("could not find enough non-degenerate nodes")
        attempts += 1
        x = candidate
        candidate = -candidate if candidate > 0 else -candidate + 1
        shifted = SyzygyParams.from_flat(
            dims, QQ, [p + x * v for p, v in zip(flat, direction)])
        try:
            values.append(psi(shifted))
        except DegenerateParameters:
            continue
        nodes.append(x)
    out = []
    for comp in range(dims.codomain_dim):
        coeffs = _interpolate_coeffs(nodes, [values[k][comp] for k in range(needed)])
        out.append(coeffs[1] if len(coeffs) > 1 else 0)
    return out


def interpolation_directional_derivative(params: SyzygyParams, direction,
                                         component: int):
    """Single-component form of the interpolation oracle."""
    return interpolation_directional_gradient(params, direction)[component]


def full_property_battery(n: int, d: int, cases: int = 100, seed: int = 0,
                          bound: int = 99):
    """Every structural property at `cases` random points of one (n, d) cell.

    Checks, exactly: the identity battery (kernel, Euler, factorization),
    homogeneity of the map under parameter scaling, agreement of the jet
    directional derivative with the interpolation oracle, agreement of the
    two determinant algorithms on a random maximal square submatrix, and
    agreement of the prime-field pipeline with the rational pipeline reduced
    mod p at integer points.  Returns a list of failure descriptions.
    """
    from fractions import Fraction

    from .pipeline import build_lp, compute_dims, psi, sample_params
    from .polymatrix import PolyMatrix
    from .rank import directional_derivative_jet, trial_rng
    from .scalars import PrimeField

    dims = compute_dims(n, d)
    fp = PrimeField(1000003)
    failures = []
    for case in range(cases):
        rng = trial_rng(seed, f"props:{n}:{d}:{case}")
        try:
            params = sample_params(dims, QQ, rng, bound)
            tag = f"(n={n}, d={d}) case {case}"
            report = identity_battery(params)
            if not report.all_passed():
                failures.append(f"{tag}: identity battery {report.failures()}")
                continue
            base = psi(params)
            lam = Fraction(rng.randrange(1, 8), rng.randrange(1, 8))
            if rng.randrange(2):
                lam = -lam
            if psi(params.scaled(lam)) != [lam ** (n + 1) * v for v in base]:
                failures.append(f"{tag}: homogeneity")
            direction = [rng.randrange(-9, 10) for _ in range(dims.domain_dim)]
            via_interp = interpolation_directional_gradient(params, direction)
            via_jets = directional_derivative_jet(params, direction)
            if [Fraction(x) for x in via_interp] != [Fraction(x) for x in via_jets]:
                failures.append(f"{tag}: jet vs interpolation oracle")
            lp = build_lp(params)
            drop = rng.randrange(dims.n + 1)
            keep = [c for c in range(dims.n + 1) if c != drop]
            sub = PolyMatrix(QQ, [[lp.entries[r][c] for c in keep]
                                  for r in range(dims.n)], lp.row_degrees)
            if sub.det_fraction_free() != sub.det():
                failures.append(f"{tag}: det_fraction_free vs cofactor")
            params_p = params.map_scalars(fp, lambda x: fp.from_int(int(x)))
            if psi(params_p) != [fp.from_int(int(v)) for v in base]:
                failures.append(f"{tag}: prime-field pipeline vs reduction")
        except DegenerateParameters:
            continue
    return failures


def _property_cell(args):
    n, d, cases, seed = args
    return (n, d, full_property_battery(n, d, cases=cases, seed=seed))


# -- reference formula comparison ----------------------------------------------


@dataclass
class ComparisonReport:
    case: str
    sign: int
    rows: list = field(default_factory=list)  # dicts: item, verdict, detail

    def verdicts(self) -> dict:
        return {row["item"]: row["verdict"] for row in self.rows}

    def mismatches(self):
        return [row["item"] for row in self.rows if row["verdict"] != "match"]


def _collect_symbolic_items(case: dict):
    """(name, computed, transcribed, kind) rows for one symbolic case."""
    from .fixtures import parse_param_formula, parse_st_formula, symbolic_ring_for
    from .pipeline import compute_dims
    from .rank import symbolic_params

    n, d = case["n"], case["d"]
    dims = compute_dims(n, d)
    ring = symbolic_ring_for(n, d)
    params = symbolic_params(dims)
    _, curve, _, _, fh = pipeline_stages(params)
    items = []
    for i, text in enumerate(case.get("g", [])):
        items.append((f"G_{i}", curve.polys[i], parse_st_formula(text, ring), "homog"))
    comp_polys = {}
    for k, f in enumerate(fh.f, start=1):
        for j, c in enumerate(f.coeffs):
            comp_polys[f"f_{{{k},{j}}}"] = c
    for k, h in enumerate(fh.h, start=1):
        for j, c in enumerate(h.coeffs):
            comp_polys[f"h_{{{k},{j}}}"] = c
    for name, text in case.get("components", {}).items():
        items.append((name, comp_polys[name], parse_param_formula(text, ring), "param"))
    if "jacobian" in case:
        row_params = case["jacobian_row_params"]
        col_names = case["jacobian_columns"]
        for r, row in enumerate(case["jacobian"]):
            v = ring.var_index(row_params[r])
            for c, text in enumerate(row):
                computed = comp_polys[col_names[c]].partial(v)
                parsed = parse_param_formula(text, ring)
                items.append((f"dJ({row_params[r]},{col_names[c]})",
                              computed, parsed, "param"))
    return items, ring


def _status(computed, transcribed, kind: str) -> str:
    if kind == "homog":
        if computed == transcribed:
            return "match"
        if computed == -transcribed:
            return "match-negated"
        return "mismatch"
    if computed == transcribed:
        return "match"
    if computed == -transcribed:
        return "match-negated"
    return "mismatch"


def _difference(computed, transcribed, sign: int, kind: str):
    flipped = transcribed if sign > 0 else -transcribed
    if kind == "homog":
        diff = computed - flipped
        n_terms = sum(len(c.terms) for c in diff.coeffs)
        return n_terms, diff.render()
    diff = computed - flipped
    return len(diff.terms), diff.render()


def compare_reference_formulas(case_key: str, case: dict, mode: str = "symbolic",
                               sample_points: int = 10, seed: int = 0,
                               bound: int = 30) -> ComparisonReport:
    """Per-item verdicts for one transcribed case, up to one global sign.

    The sign is pinned by the first item that matches exactly or negated;
    remaining items are judged under that sign.  In sampled mode equality is
    tested at random integer parameter points instead of symbolically (both
    agree; symbolic is exact, sampling is the cheaper screen).
    """
    items, ring = _collect_symbolic_items(case)
    sign = 0
    statuses = []
    for name, computed, transcribed, kind in items:
        st = _status(computed, transcribed, kind)
        statuses.append(st)
        if sign == 0 and st == "match":
            sign = 1
        elif sign == 0 and st == "match-negated":
            sign = -1
    if sign == 0:
        sign = 1
    report = ComparisonReport(case=case_key, sign=sign)
    rng = random.Random(f"{seed}|compare|{case_key}")
    sample_sets = [[rng.randrange(-bound, bound + 1) for _ in range(ring.n_vars)]
                   for _ in range(sample_points)]
    for (name, computed, transcribed, kind), st in zip(items, statuses):
        if mode == "symbolic":
            ok = (st == "match" and sign > 0) or (st == "match-negated" and sign < 0)
        else:
            ok = _sampled_equal(computed, transcribed, sign, kind, sample_sets)
        if ok:
            report.rows.append({"item": name, "verdict": "match", "detail": ""})
        else:
            n_terms, diff = _difference(computed, transcribed, sign, kind)
            detail = f"{n_terms} differing monomials: {diff}" if mode == "symbolic" \
                else "disagrees at a sampled point"
            report.rows.append({"item": name, "verdict": "mismatch", "detail": detail})
    return report


def _sampled_equal(computed, transcribed, sign: int, kind: str, sample_sets) -> bool:
    for values in sample_sets:
        if kind == "homog":
            for ca, cb in zip(computed.coeffs, transcribed.coeffs):
                vb = cb.evaluate(values)
                if ca.evaluate(values) != (vb if sign > 0 else -vb):
                    return False
        else:
            vb = transcribed.evaluate(values)
            if computed.evaluate(values) != (vb if sign > 0 else -vb):
                return False
    return True
