"""End-to-end construction: parameters -> syzygy matrix -> curve -> morphism.

The map psi sends the coefficient vector of an n x (n+1) syzygy matrix
(a rows of degree q, b rows of degree q+1) to the coefficient vector of the
morphism it induces.  Row k of the product of the syzygy matrix with the
curve's Jacobian factors as (-t * w_k, s * w_k); the w_k are the morphism
components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (DegenerateParameters, DimensionMismatch, InconsistentDiagram,
                     NotDivisible, OutOfScope, ParseError, ShapeMismatch)
from .homogpoly import HomogPoly
from .polymatrix import PolyMatrix
from .scalars import QQ


@dataclass(frozen=True)
class ProblemDims:
    """Integer bookkeeping for a (n, d) cell."""

    n: int
    d: int
    q: int
    a: int
    b: int
    domain_dim: int
    codomain_dim: int

    @property
    def f_len(self) -> int:
        """Coefficient count of one degree-(d+q-2) component."""
        return self.d + self.q - 1

    @property
    def h_len(self) -> int:
        """Coefficient count of one degree-(d+q-1) component."""
        return self.d + self.q


def compute_dims(n: int, d: int) -> ProblemDims:
    if n < 2:
        raise OutOfScope(f"n={n}: ambient dimension must be at least 2")
    if d < n:
        raise OutOfScope(f"(n={n}, d={d}): degree below n is degenerate")
    if d == n:
        raise OutOfScope(
            f"(n={n}, d={d}): the rational normal curve case carries every "
            "morphism and needs no computation")
    q = d // n
    a = (q + 1) * n - d
    b = d - n * q
    domain_dim = ((q + 1) * a + (q + 2) * b) * (n + 1)
    codomain_dim = a * (d + q - 1) + b * (d + q)
    dims = ProblemDims(n, d, q, a, b, domain_dim, codomain_dim)
    assert a + b == n and a >= 0 and b >= 0
    assert a * (d + q) + b * (d + q + 1) == (n + 1) * d
    assert domain_dim - codomain_dim == n * n + 2 * n
    return dims


def param_names(dims: ProblemDims):
    """Pinned flattening order: l block then p block, row-major (k, i, j)."""
    names = []
    for k in range(1, dims.a + 1):
        for i in range(dims.n + 1):
            for j in range(dims.q + 1):
                names.append(_name("l", k, i, j))
    for k in range(1, dims.b + 1):
        for i in range(dims.n + 1):
            for j in range(dims.q + 2):
                names.append(_name("p", k, i, j))
    return names


def _name(kind: str, k: int, i: int, j: int) -> str:
    if k < 10 and i < 10 and j < 10:
        return f"{kind}{k}{i}{j}"
    return f"{kind}[{k},{i},{j}]"


@dataclass
class SyzygyParams:
    """Scalar entries l[k][i][j] and p[k][i][j] over a coefficient ring.

    Indices are 0-based here; the 1-based k of the printed names is applied
    only when rendering.
    """

    dims: ProblemDims
    ring: object
    l: list
    p: list

    def __post_init__(self):
        d = self.dims
        if len(self.l) != d.a or any(len(block) != d.n + 1 for block in self.l) \
                or any(len(row) != d.q + 1 for block in self.l for row in block):
            raise DimensionMismatch("l block has the wrong shape")
        if len(self.p) != d.b or any(len(block) != d.n + 1 for block in self.p) \
                or any(len(row) != d.q + 2 for block in self.p for row in block):
            raise DimensionMismatch("p block has the wrong shape")

    def flatten(self) -> list:
        out = []
        for block in self.l:
            for row in block:
                out.extend(row)
        for block in self.p:
            for row in block:
                out.extend(row)
        return out

    @classmethod
    def from_flat(cls, dims: ProblemDims, ring, values) -> "SyzygyParams":
        values = list(values)
        if len(values) != dims.domain_dim:
            raise DimensionMismatch(
                f"expected {dims.domain_dim} scalars, got {len(values)}")
        it = iter(values)
        l = [[[next(it) for _ in range(dims.q + 1)] for _ in range(dims.n + 1)]
             for _ in range(dims.a)]
        p = [[[next(it) for _ in range(dims.q + 2)] for _ in range(dims.n + 1)]
             for _ in range(dims.b)]
        return cls(dims, ring, l, p)

    def map_scalars(self, ring, fn) -> "SyzygyParams":
        return SyzygyParams.from_flat(self.dims, ring, [fn(x) for x in self.flatten()])

    def scaled(self, factor) -> "SyzygyParams":
        return self.map_scalars(self.ring, lambda x: x * factor)


def sample_params(dims: ProblemDims, ring, rng, bound: int = 99) -> SyzygyParams:
    """Entries drawn by the ring's sampler, in the pinned flattening order."""
    return SyzygyParams.from_flat(
        dims, ring, [ring.sample(rng, bound) for _ in range(dims.domain_dim)])


@dataclass
class Curve:
    """Coordinate polynomials of the parameterized curve (degree d, n+1 of them)."""

    dims: ProblemDims
    polys: list


@dataclass
class MorphismFH:
    """Morphism components: a polys of degree d+q-2, then b of degree d+q-1."""

    dims: ProblemDims
    f: list
    h: list

    def flatten(self) -> list:
        out = []
        for poly in self.f:
            out.extend(poly.coeffs)
        for poly in self.h:
            out.extend(poly.coeffs)
        return out

    @classmethod
    def from_flat(cls, dims: ProblemDims, ring, values) -> "MorphismFH":
        values = list(values)
        if len(values) != dims.codomain_dim:
            raise DimensionMismatch(
                f"expected {dims.codomain_dim} scalars, got {len(values)}")
        f, h = [], []
        pos = 0
        for _ in range(dims.a):
            f.append(HomogPoly(ring, dims.d + dims.q - 2,
                               values[pos:pos + dims.f_len]))
            pos += dims.f_len
        for _ in range(dims.b):
            h.append(HomogPoly(ring, dims.d + dims.q - 1,
                               values[pos:pos + dims.h_len]))
            pos += dims.h_len
        return cls(dims, f, h)


def build_lp(params: SyzygyParams) -> PolyMatrix:
    """The n x (n+1) syzygy matrix: a rows of degree q, then b rows of degree q+1."""
    dims = params.dims
    ring = params.ring
    rows = []
    for k in range(dims.a):
        rows.append([HomogPoly(ring, dims.q, params.l[k][i])
                     for i in range(dims.n + 1)])
    for k in range(dims.b):
        rows.append([HomogPoly(ring, dims.q + 1, params.p[k][i])
                     for i in range(dims.n + 1)])
    return PolyMatrix(ring, rows, [dims.q] * dims.a + [dims.q + 1] * dims.b)


def curve_from_params(params: SyzygyParams) -> Curve:
    lp = build_lp(params)
    minors = lp.signed_maximal_minors()
    if all(g.is_zero() for g in minors):
        raise DegenerateParameters(
            "all maximal minors vanish; the parameters define no curve")
    return Curve(params.dims, minors)


def st_jacobian(curve: Curve) -> PolyMatrix:
    """(n+1) x 2 matrix of partials: column 0 is d/ds, column 1 is d/dt."""
    ring = curve.polys[0].ring
    rows = [[g.partial("s"), g.partial("t")] for g in curve.polys]
    return PolyMatrix(ring, rows, [curve.dims.d - 1] * (curve.dims.n + 1))


def extract_fh(lp: PolyMatrix, jac: PolyMatrix, dims: ProblemDims) -> MorphismFH:
    if lp.rows != dims.n or lp.cols != dims.n + 1 or jac.rows != dims.n + 1 \
            or jac.cols != 2:
        raise ShapeMismatch("expected an n x (n+1) syzygy matrix and an (n+1) x 2 Jacobian")
    return extract_from_product(lp.mat_mul(jac), dims)


def extract_from_product(w: PolyMatrix, dims: ProblemDims) -> MorphismFH:
    """Solve W = FH . (-t s) row by row.

    Row k must factor as (-t*w_k, s*w_k); any failure means the commutative
    square upstream was broken, which is unreachable for minors-derived
    curves and therefore reported as an internal inconsistency.
    """
    f, h = [], []
    ring = w.ring
    t_poly = HomogPoly.var_t(ring)
    for k in range(dims.n):
        try:
            wk = w.entries[k][1].div_linear("s")
        except NotDivisible as exc:
            raise InconsistentDiagram(
                f"row {k}: second column not divisible by s") from exc
        if w.entries[k][0] != -(t_poly * wk):
            raise InconsistentDiagram(
                f"row {k}: columns disagree, (-t, s) factorization failed")
        (f if k < dims.a else h).append(wk)
    return MorphismFH(dims, f, h)


def pipeline_stages(params: SyzygyParams):
    """All intermediate objects: (LP, curve, jacobian, product, morphism)."""
    lp = build_lp(params)
    curve = curve_from_params(params)
    jac = st_jacobian(curve)
    w = lp.mat_mul(jac)
    fh = extract_from_product(w, params.dims)
    return lp, curve, jac, w, fh


def psi(params: SyzygyParams) -> list:
    """Morphism coefficient vector (length codomain_dim) at the given parameters."""
    return pipeline_stages(params)[4].flatten()


# -- params files -------------------------------------------------------------


def params_to_json_dict(params: SyzygyParams) -> dict:
    def enc(x):
        frac = Fraction(x) if isinstance(x, (int, Fraction)) else None
        if frac is None:
            return params.ring.render(x)
        return frac.numerator if frac.denominator == 1 else str(frac)

    return {
        "n": params.dims.n,
        "d": params.dims.d,
        "l": [[[enc(x) for x in row] for row in block] for block in params.l],
        "p": [[[enc(x) for x in row] for row in block] for block in params.p],
    }


def params_from_json_dict(data: dict, ring=QQ) -> SyzygyParams:
    try:
        n, d = int(data["n"]), int(data["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("params file needs integer fields 'n' and 'd'") from exc
    dims = compute_dims(n, d)

    def dec(x):
        if isinstance(x, int):
            return ring.from_int(x)
        if isinstance(x, str):
            return ring.parse(x)
        raise ParseError(f"bad scalar {x!r} in params file")

    try:
        l = [[[dec(x) for x in row] for row in block] for block in data.get("l", [])]
        p = [[[dec(x) for x in row] for row in block] for block in data.get("p", [])]
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return SyzygyParams(dims, ring, l, p)
