"""Exact rank computation and certification of dominance / first-order relations.

Differentiation runs the whole pipeline over the jet ring with every
parameter active, so one pass yields the full Jacobian.  Ranks are computed
by exact Gaussian elimination over the coefficient field; a full-rank point
over the rationals is an unconditional dominance witness.

Two notions of "relation" among the degree-(d+q-2) components F_1..F_{n-1}
coexist (see the relation_notion field on certificates):

* coefficient-proportionality: rank of the (n-1) x (d+q-1) matrix of
  F-coefficients at a point is at most 1.  On this map's image that rank
  is n-1, so this check honestly reports no-relation for n >= 3; it is
  kept because it is the originally stated form of the relation test.
* first-order-syzygy: rank of the (n+2) x 2(n-1) system whose kernel is
  the space of linear-form syzygies sum_k (a_k s + b_k t) F_k = 0.  Image
  points satisfy rank <= n+1 because s*F_k and t*F_k both lie in the span
  of G_0..G_n, while generic morphisms attain n+2 when n >= 4.  The gap is
  the non-dominance witness.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (AllTrialsDegenerate, BudgetExceeded, DegenerateParameters,
                     NonzeroMinor, OutOfScope)
from .homogpoly import HomogPoly
from .parampoly import ParamPolyRing
from .pipeline import (ProblemDims, SyzygyParams, compute_dims,
                       curve_from_params, param_names, pipeline_stages, psi,
                       sample_params)
from .scalars import QQ, Jet, JetRing, PrimeField


def exact_rank(rows, ring) -> int:
    """Rank by Gaussian elimination with pivot normalization; no rounding."""
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for c in range(n_cols):
        piv = None
        for r in range(rank, n_rows):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = ring.div(ring.one, m[rank][c])
        m[rank] = [inv * x for x in m[rank]]
        pivot_row = m[rank]
        for r in range(rank + 1, n_rows):
            f = m[r][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], pivot_row)]
        rank += 1
        if rank == n_rows:
            break
    return rank


@dataclass
class JacobianMatrix:
    """codomain_dim x domain_dim matrix of partials at a parameter point."""

    dims: ProblemDims
    field: object
    entries: list
    point: SyzygyParams

    def rank(self) -> int:
        return exact_rank(self.entries, self.field)


def psi_jacobian(params: SyzygyParams) -> JacobianMatrix:
    """Differentiate the full pipeline at params via one jet pass."""
    dims = params.dims
    base = params.ring
    jets = JetRing(base, dims.domain_dim)
    flat = params.flatten()
    lifted = SyzygyParams.from_flat(
        dims, jets, [jets.lift(x, c) for c, x in enumerate(flat)])
    values = psi(lifted)
    entries = [list(v.grad) for v in values]
    return JacobianMatrix(dims, base, entries, params)


def directional_derivative_jet(params: SyzygyParams, direction):
    """d/dt psi(params + t*direction) at t=0, one active jet parameter."""
    dims = params.dims
    base = params.ring
    jets = JetRing(base, 1)
    flat = params.flatten()
    if len(direction) != dims.domain_dim:
        raise ValueError("direction length must equal domain_dim")
    lifted = SyzygyParams.from_flat(
        dims, jets, [Jet(x, (v,)) for x, v in zip(flat, direction)])
    return [out.grad[0] for out in psi(lifted)]


@dataclass
class Certificate:
    """Reproducible record of one dominance or relation check."""

    kind: str                       # "dominance" | "relation"
    n: int
    d: int
    field_name: str                 # "rationals" | "prime <p>"
    prime: int | None
    seed: int
    trials: int
    observed_rank: int
    target_rank: int
    verdict: str
    error_bound: Fraction
    error_bound_kind: str           # "exact-witness" | "schwartz-zippel" | "heuristic-zero"
    timing_ms: int
    coeff_bound: int
    point_flat: list = field(default_factory=list)
    relation_notion: str | None = None
    extra: dict = field(default_factory=dict)


def _field_tag(ring) -> tuple[str, int | None]:
    if isinstance(ring, PrimeField):
        return f"prime {ring.p}", ring.p
    return "rationals", None


def trial_rng(seed: int, label: str) -> random.Random:
    """Deterministic per-trial stream, independent of execution order."""
    return random.Random(f"{seed}|{label}")


def _sample_nondegenerate(dims, ring, rng, bound, retries):
    for _ in range(retries):
        params = sample_params(dims, ring, rng, bound)
        try:
            curve_from_params(params)
            return params
        except DegenerateParameters:
            continue
    raise AllTrialsDegenerate(
        f"no non-degenerate parameters found in {retries} attempts")


def _render_point(params: SyzygyParams) -> list:
    out = []
    for x in params.flatten():
        if isinstance(x, int):
            out.append(x)
        elif isinstance(x, Fraction):
            out.append(x.numerator if x.denominator == 1 else str(x))
        else:
            out.append(params.ring.render(x))
    return out


def certify_dominance(n: int, d: int, ring=QQ, seed: int = 0, bound: int = 99,
                      trials: int = 1, retries: int = 8,
                      run_battery: bool = True) -> Certificate:
    """Exact Jacobian rank at random points; full rank certifies dominance.

    Rank can only drop on a closed subset, so one full-rank point over an
    exact field is an unconditional witness; the certificate then carries
    error bound 0.  With trials > 1 the maximum observed rank is reported.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dims = compute_dims(n, d)
    field_name, prime = _field_tag(ring)
    t0 = time.perf_counter()
    best_rank = -1
    best_point = None
    performed = 0
    for trial in range(trials):
        rng = trial_rng(seed, f"dominance:{n}:{d}:{field_name}:{trial}")
        params = _sample_nondegenerate(dims, ring, rng, bound, retries)
        if run_battery and trial == 0:
            from .oracle import identity_battery
            report = identity_battery(params)
            if not report.all_passed():
                raise AssertionError(
                    f"identity battery failed at a certification point: {report.failures()}")
        jac = psi_jacobian(params)
        r = jac.rank()
        performed += 1
        if r > best_rank:
            best_rank, best_point = r, params
        if r == dims.codomain_dim:
            break
    verdict = ("dominant-certified" if best_rank == dims.codomain_dim
               else "not-full-rank-at-point")
    return Certificate(
        kind="dominance", n=n, d=d, field_name=field_name, prime=prime,
        seed=seed, trials=performed, observed_rank=best_rank,
        target_rank=dims.codomain_dim, verdict=verdict,
        error_bound=Fraction(0), error_bound_kind="exact-witness",
        timing_ms=int((time.perf_counter() - t0) * 1000), coeff_bound=bound,
        point_flat=_render_point(best_point))


@dataclass
class RelationMatrix:
    """(n-1) x (d+q-1) matrix of F-coefficients at a parameter point."""

    dims: ProblemDims
    rows: list
    point: SyzygyParams


def relation_matrix(params: SyzygyParams) -> RelationMatrix:
    fh = pipeline_stages(params)[4]
    return RelationMatrix(params.dims, [list(f.coeffs) for f in fh.f], params)


def relation_dims(n: int) -> ProblemDims:
    if n < 3:
        raise OutOfScope("relation checks need n >= 3")
    return compute_dims(n, n + 1)


def detect_relation(n: int, ring=QQ, seed: int = 0, trials: int = 20,
                    bound: int = 99, retries: int = 8) -> Certificate:
    """Coefficient-proportionality check: rank of the F-coefficient matrix.

    relation-detected means rank <= 1 in every trial.  A single exact point
    with rank >= 2 disproves an identical proportionality relation outright,
    so the no-relation verdict carries error bound 0.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dims = relation_dims(n)
    field_name, prime = _field_tag(ring)
    t0 = time.perf_counter()
    max_rank = 0
    first_point = None
    performed = 0
    for trial in range(trials):
        rng = trial_rng(seed, f"relation:{n}:{field_name}:{trial}")
        params = _sample_nondegenerate(dims, ring, rng, bound, retries)
        if first_point is None:
            first_point = params
        rel = relation_matrix(params)
        r = exact_rank(rel.rows, ring)
        performed += 1
        max_rank = max(max_rank, r)
        if r > 1:
            break
    detected = max_rank <= 1
    if detected:
        if prime is not None:
            per_trial = Fraction(2 * (n + 1), prime)
            error_bound = per_trial ** performed
            bound_kind = "schwartz-zippel"
        else:
            error_bound = Fraction(0)
            bound_kind = "heuristic-zero"
        verdict = "relation-detected"
    else:
        error_bound = Fraction(0)
        bound_kind = "exact-witness"
        verdict = "no-relation-detected"
    return Certificate(
        kind="relation", n=n, d=n + 1, field_name=field_name, prime=prime,
        seed=seed, trials=performed, observed_rank=max_rank, target_rank=1,
        verdict=verdict, error_bound=error_bound, error_bound_kind=bound_kind,
        timing_ms=int((time.perf_counter() - t0) * 1000), coeff_bound=bound,
        point_flat=_render_point(first_point),
        relation_notion="coefficient-proportionality")


def syzygy_system_rows(f_polys, n: int):
    """(n+2) x 2(n-1) matrix whose kernel is the linear-form syzygies of F.

    Column 2k holds the coefficients of s*F_k, column 2k+1 those of t*F_k,
    in the fixed ascending-s order of degree-(n+1) forms.
    """
    cols = []
    for f in f_polys:
        c = list(f.coeffs)
        cols.append([None] + c)        # s*F_k: s^(j+1) t^(n-j)
        cols.append(c + [None])        # t*F_k: s^j t^(n+1-j)
    ring_zero = f_polys[0].ring.zero
    rows = []
    for r in range(n + 2):
        rows.append([ring_zero if col[r] is None else col[r] for col in cols])
    return rows


def detect_first_order_relation(n: int, ring=QQ, seed: int = 0, trials: int = 20,
                                bound: int = 99, retries: int = 8) -> Certificate:
    """Linear-form syzygy check: sum_k (a_k s + b_k t) F_k = 0 with scalars a, b.

    At image points s*F_k and t*F_k all lie in the span of G_0..G_n, so the
    syzygy system has rank <= n+1; a generic morphism of the same type
    attains n+2 when n >= 4.  Observing the bound at every sampled image
    point while an exact generic witness attains n+2 certifies that the
    image is contained in a proper closed locus.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dims = relation_dims(n)
    field_name, prime = _field_tag(ring)
    t0 = time.perf_counter()
    ambient = min(2 * (n - 1), n + 2)
    image_bound = n + 1
    max_image_rank = 0
    first_point = None
    performed = 0
    for trial in range(trials):
        rng = trial_rng(seed, f"syzygy:{n}:{field_name}:{trial}")
        params = _sample_nondegenerate(dims, ring, rng, bound, retries)
        if first_point is None:
            first_point = params
        fh = pipeline_stages(params)[4]
        r = exact_rank(syzygy_system_rows(fh.f, n), ring)
        performed += 1
        max_image_rank = max(max_image_rank, r)
        if r > image_bound:
            raise AssertionError(
                "syzygy system rank exceeds the structural bound; "
                "the containment identity is violated (internal error)")
    # exact witness that generic morphisms beat the image bound
    witness_rank = 0
    wrng = trial_rng(seed, f"syzygy-generic:{n}:{field_name}")
    for _ in range(retries):
        gen_f = [HomogPoly(ring, n, [ring.sample(wrng, bound) for _ in range(n + 1)])
                 for _ in range(n - 1)]
        witness_rank = exact_rank(syzygy_system_rows(gen_f, n), ring)
        if witness_rank == ambient:
            break
    detected = max_image_rank <= image_bound < ambient and witness_rank == ambient
    if detected:
        if prime is not None:
            per_trial = Fraction((n + 1) * (n + 2), prime)
            error_bound = per_trial ** performed
            bound_kind = "schwartz-zippel"
        else:
            error_bound = Fraction(0)
            bound_kind = "heuristic-zero"
        verdict = "relation-detected"
    else:
        error_bound = Fraction(0)
        bound_kind = "exact-witness"
        verdict = "no-relation-detected"
    return Certificate(
        kind="relation", n=n, d=n + 1, field_name=field_name, prime=prime,
        seed=seed, trials=performed, observed_rank=max_image_rank,
        target_rank=image_bound, verdict=verdict, error_bound=error_bound,
        error_bound_kind=bound_kind,
        timing_ms=int((time.perf_counter() - t0) * 1000), coeff_bound=bound,
        point_flat=_render_point(first_point),
        relation_notion="first-order-syzygy",
        extra={"ambient_generic_rank": witness_rank,
               "image_rank_bound": image_bound})


def symbolic_params(dims: ProblemDims, base=QQ) -> SyzygyParams:
    """Parameters lifted to the polynomial ring in their own names."""
    ring = ParamPolyRing(param_names(dims), base=base)
    return SyzygyParams.from_flat(
        dims, ring, [ring.var(i) for i in range(dims.domain_dim)])


def relation_symbolic(n: int, max_n: int = 5, pair_budget: int = 5_000_000):
    """Expand the 2x2 minors of the F-coefficient matrix over ParamPoly.

    Returns the list of ((row_i, row_j), (col_r, col_c), minor) triples when
    every minor is the zero polynomial.  Raises NonzeroMinor as soon as one
    is not (with the offending minor attached), and BudgetExceeded when the
    expansion would exceed the term-pair budget.
    """
    if n > max_n:
        raise BudgetExceeded(f"symbolic mode budget is n <= {max_n}")
    dims = relation_dims(n)
    params = symbolic_params(dims)
    fh = pipeline_stages(params)[4]
    rows = [list(f.coeffs) for f in fh.f]
    n_rows, n_cols = len(rows), len(rows[0])
    minors = []
    for i in range(n_rows):
        for j in range(i + 1, n_rows):
            for r in range(n_cols):
                for c in range(r + 1, n_cols):
                    cost = (len(rows[i][r].terms) * len(rows[j][c].terms)
                            + len(rows[i][c].terms) * len(rows[j][r].terms))
                    if cost > pair_budget:
                        raise BudgetExceeded(
                            f"minor ({i},{j};{r},{c}) needs {cost} term pairs")
                    minor = rows[i][r] * rows[j][c] - rows[i][c] * rows[j][r]
                    if minor:
                        raise NonzeroMinor(
                            f"minor (rows {i},{j}; cols {r},{c}) is a nonzero "
                            f"polynomial with {len(minor.terms)} terms",
                            minor=minor)
                    minors.append(((i, j), (r, c), minor))
    return minors


@dataclass
class FirstOrderRelationProof:
    """Unconditional certificate that the image admits a linear-form syzygy.

    The two families of exact identities place s*F_k and t*F_k inside the
    span of G_0..G_n, which caps the syzygy-system rank at n+1 for every
    parameter value; the integer witness shows generic morphisms attain
    n+2.  Together they prove the image lies in a proper closed subset.
    """

    n: int
    identities_checked: int
    kernel_dim_bound: int
    witness_rank: int
    ambient_rank: int
    witness_coeffs: list
    conclusion: str                 # "relation-proved" | "no-relation-forced"


def prove_first_order_relation(n: int, max_n: int = 5, seed: int = 0,
                               bound: int = 99) -> FirstOrderRelationProof:
    """Symbolic proof over the integers, valid in every characteristic."""
    if n > max_n:
        raise BudgetExceeded(f"symbolic mode budget is n <= {max_n}")
    dims = relation_dims(n)
    params = symbolic_params(dims)
    lp, curve, jac, w, fh = pipeline_stages(params)
    ring = params.ring
    s_pol = HomogPoly.var_s(ring)
    t_pol = HomogPoly.var_t(ring)
    checked = 0
    for k in range(dims.a):
        lam_comb = HomogPoly.zero(ring, dims.d)
        mu_comb = HomogPoly.zero(ring, dims.d)
        for i in range(dims.n + 1):
            lam_comb = lam_comb + curve.polys[i].scaled(params.l[k][i][0])
            mu_comb = mu_comb + curve.polys[i].scaled(params.l[k][i][1])
        if s_pol * fh.f[k] != -lam_comb:
            raise NonzeroMinor(f"containment identity for s*F_{k + 1} fails")
        if t_pol * fh.f[k] != mu_comb:
            raise NonzeroMinor(f"containment identity for t*F_{k + 1} fails")
        checked += 2
    ambient = min(2 * (n - 1), n + 2)
    kernel_bound = 2 * (n - 1) - (n + 1)
    rng = trial_rng(seed, f"syzygy-proof-witness:{n}")
    witness_rank = 0
    witness = []
    for _ in range(16):
        gen_f = [HomogPoly(QQ, n, [QQ.sample(rng, bound) for _ in range(n + 1)])
                 for _ in range(n - 1)]
        witness_rank = exact_rank(syzygy_system_rows(gen_f, n), QQ)
        if witness_rank == ambient:
            witness = [list(f.coeffs) for f in gen_f]
            break
    conclusion = ("relation-proved" if kernel_bound >= 1 and ambient == n + 2
                  and witness_rank == ambient else "no-relation-forced")
    return FirstOrderRelationProof(
        n=n, identities_checked=checked, kernel_dim_bound=max(kernel_bound, 0),
        witness_rank=witness_rank, ambient_rank=ambient,
        witness_coeffs=witness, conclusion=conclusion)
