"""Based chain complexes, chain maps, towers, cones, filtrations and torsion.

A BasedChainComplex is a finite list of degrees, each with an ordered basis
of labels, plus boundary matrices d_k mapping degree k to degree k-1 (rows
labeled by the degree k-1 basis, columns by the degree k basis).  d^2 = 0 is
validated on construction, modulo t^N when the ring is a truncated series
ring.

Torsion of an acyclic based complex is computed by two independent engines:

* over the fraction field Q(t): build a chain contraction G with
  dG + Gd = 1 from pivot-column splittings and return
  det(d + G : C_odd -> C_even);
* over a truncated series ring: repeatedly cancel a based pair of
  generators through a unit pivot (Gaussian reduction of complexes),
  multiplying the pivots with alternating exponents.

Both report the value raw and normalized (a sign and a power of t stripped,
landing in the multiplicative group of constant-term-1 integer series).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BoundarySquareNonzero,
    InconsistentTower,
    InvalidChainMap,
    NormalizationImpossible,
    NotAcyclic,
    NotAnEquivalence,
    NotLevelTriangular,
    ShapeMismatch,
    UnsupportedChange,
)
from .matrices import (
    Matrix,
    det_field,
    hstack,
    mat_rank_ff,
    pivot_columns,
    solve_field,
    vstack,
)
from .polynomial import LaurentPolynomial
from .rational import RationalFunction, rf_expand, to_rf
from .rings import QT, Ring, ZT, ZT_LAURENT, ring_from_tag, series_ring
from .series import (
    DEFAULT_ORDER,
    INT,
    RAT,
    TruncatedSeries,
    WittVector,
    is_integral,
    series_invert,
)


class BasedChainComplex:
    __slots__ = ("ring", "bases", "_bnd")

    def __init__(self, ring, bases, boundaries=None, validate=True):
        if isinstance(ring, str):
            ring = ring_from_tag(ring)
        self.ring: Ring = ring
        self.bases = tuple(tuple(b) for b in bases)
        for k, basis in enumerate(self.bases):
            if len(set(basis)) != len(basis):
                raise ShapeMismatch(f"duplicate basis labels in degree {k}")
        bnd: dict[int, Matrix] = {}
        boundaries = boundaries or {}
        if not isinstance(boundaries, dict):
            boundaries = {k: m for k, m in enumerate(boundaries, start=1)}
        for k, m in boundaries.items():
            if m is None:
                continue
            if k < 1 or k > self.top_degree:
                raise ShapeMismatch(f"boundary in degree {k} outside 1..{self.top_degree}")
            if m.shape != (len(self.bases[k - 1]), len(self.bases[k])):
                raise ShapeMismatch(
                    f"boundary {k} has shape {m.shape}, expected "
                    f"({len(self.bases[k - 1])}, {len(self.bases[k])})"
                )
            m = m.map(self.ring.coerce).relabel(
                self.bases[k - 1] or None, self.bases[k] or None
            )
            if not m.is_zero:
                bnd[k] = m
        self._bnd = bnd
        if validate:
            report = validate_complex(self)
            if not report.ok:
                raise BoundarySquareNonzero(report.degree, report.row, report.col)

    @property
    def top_degree(self):
        return len(self.bases) - 1

    def rank(self, k):
        if 0 <= k <= self.top_degree:
            return len(self.bases[k])
        return 0

    def basis(self, k):
        if 0 <= k <= self.top_degree:
            return self.bases[k]
        return ()

    @property
    def total_rank(self):
        return sum(len(b) for b in self.bases)

    def boundary(self, k) -> Matrix:
        """d_k as a labeled matrix; zero matrices are materialized."""
        if k in self._bnd:
            return self._bnd[k]
        return Matrix.zeros(
            self.rank(k - 1), self.rank(k), self.basis(k - 1) or None, self.basis(k) or None
        )

    def degrees(self):
        return range(self.top_degree + 1)

    def map_entries(self, fn, ring):
        return BasedChainComplex(
            ring,
            self.bases,
            {k: m.map(fn) for k, m in self._bnd.items()},
            validate=False,
        )

    def __eq__(self, other):
        if not isinstance(other, BasedChainComplex):
            return NotImplemented
        if self.bases != other.bases:
            return False
        return all(self.boundary(k) == other.boundary(k) for k in range(1, self.top_degree + 1))

    __hash__ = None

    def __repr__(self):
        ranks = ", ".join(str(self.rank(k)) for k in self.degrees())
        return f"BasedChainComplex({self.ring.tag}; ranks {ranks})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    degree: int | None = None
    row: str | None = None
    col: str | None = None

    def __str__(self):
        if self.ok:
            return "PASS: d^2 = 0"
        return f"FAIL: d^2 != 0 at degree {self.degree}, entry ({self.row}, {self.col})"


def validate_complex(c: BasedChainComplex) -> ValidationReport:
    """Check d_{k-1} o d_k = 0 for every degree; report the first offender."""
    for k in range(2, c.top_degree + 1):
        if c.rank(k) == 0 or c.rank(k - 2) == 0:
            continue
        comp = c.boundary(k - 1) * c.boundary(k)
        for i in range(comp.nrows):
            for j in range(comp.ncols):
                if not (comp.data[i][j] == 0):
                    return ValidationReport(False, k, c.bases[k - 2][i], c.bases[k][j])
    return ValidationReport(True)


def zero_complex(ring, degrees=1) -> BasedChainComplex:
    return BasedChainComplex(ring, [()] * degrees, {})


class ChainMap:
    __slots__ = ("source", "target", "mats")

    def __init__(self, source, target, mats=None, validate=True):
        if source.ring.tag != target.ring.tag:
            raise InvalidChainMap(
                f"source over {source.ring.tag}, target over {target.ring.tag}"
            )
        self.source = source
        self.target = target
        mats = mats or {}
        if not isinstance(mats, dict):
            mats = {k: m for k, m in enumerate(mats)}
        clean = {}
        for k, m in mats.items():
            if m is None:
                continue
            if m.shape != (target.rank(k), source.rank(k)):
                raise ShapeMismatch(
                    f"degree {k} matrix has shape {m.shape}, expected "
                    f"({target.rank(k)}, {source.rank(k)})"
                )
            m = m.map(source.ring.coerce).relabel(
                target.basis(k) or None, source.basis(k) or None
            )
            if not m.is_zero:
                clean[k] = m
        self.mats = clean
        if validate:
            k = self.first_violation()
            if k is not None:
                raise InvalidChainMap(f"does not commute with the boundaries at degree {k}")

    def matrix(self, k) -> Matrix:
        if k in self.mats:
            return self.mats[k]
        return Matrix.zeros(self.target.rank(k), self.source.rank(k))

    def first_violation(self):
        top = max(self.source.top_degree, self.target.top_degree)
        for k in range(1, top + 1):
            lhs = self.target.boundary(k) * self.matrix(k)
            rhs = self.matrix(k - 1) * self.source.boundary(k)
            if not (lhs == rhs):
                return k
        return None

    @classmethod
    def identity(cls, c: BasedChainComplex):
        one = c.ring.one()
        return cls(c, c, {k: Matrix.identity(c.rank(k), one) for k in c.degrees()}, validate=False)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other (other runs first)."""
        if other.target.bases != self.source.bases:
            raise InvalidChainMap("composition mismatch")
        top = max(self.target.top_degree, other.source.top_degree)
        mats = {k: self.matrix(k) * other.matrix(k) for k in range(top + 1)}
        return ChainMap(other.source, self.target, mats, validate=False)


def base_change(c: BasedChainComplex, target: str, order=None) -> BasedChainComplex:
    """Entrywise image of the complex under a coefficient-ring map.

    target is one of 'mod' (reduce mod t^order), 'invert_t' (t becomes a
    unit), 'rationalize' (into Q(t)), 'tensor_Lhat' (truncated series with
    t invertible, at the given order).  Bases are preserved.
    """
    kind = c.ring.kind
    if target == "mod":
        if order is None:
            raise UnsupportedChange("mod reduction needs an order")
        if kind in ("int", "rat"):
            new_ring = series_ring(INT if kind == "int" else RAT, order)
        elif kind == "poly":
            new_ring = series_ring(INT, order, laurent=c.ring.laurent)
        elif kind == "series":
            if order > c.ring.order:
                raise UnsupportedChange(
                    f"cannot reduce mod t^{order}: entries known only mod t^{c.ring.order}"
                )
            new_ring = series_ring(c.ring.coeff, order, laurent=c.ring.laurent)
        else:
            raise UnsupportedChange(f"no mod-t^n reduction from {c.ring.tag}")
        return c.map_entries(new_ring.coerce, new_ring)
    if target == "invert_t":
        if kind == "poly":
            return c.map_entries(ZT_LAURENT.coerce, ZT_LAURENT)
        if kind == "series":
            new_ring = series_ring(c.ring.coeff, c.ring.order, laurent=True)
            return c.map_entries(new_ring.coerce, new_ring)
        raise UnsupportedChange(f"cannot invert t over {c.ring.tag}")
    if target == "rationalize":
        if kind in ("int", "rat", "poly", "ratfunc"):
            return c.map_entries(QT.coerce, QT)
        raise UnsupportedChange(
            f"cannot rationalize {c.ring.tag}: truncated entries have no exact field image"
        )
    if target == "tensor_Lhat":
        n = order or (c.ring.order if kind == "series" else DEFAULT_ORDER)
        if kind == "series" and n > c.ring.order:
            raise UnsupportedChange(
                f"cannot extend to order {n}: entries known only mod t^{c.ring.order}"
            )
        if kind in ("int", "poly", "series"):
            coeff = c.ring.coeff if kind == "series" else INT
            new_ring = series_ring(coeff, n, laurent=True)
            return c.map_entries(new_ring.coerce, new_ring)
        raise UnsupportedChange(f"cannot tensor {c.ring.tag} with the Novikov ring")
    raise UnsupportedChange(f"unknown base change {target!r}")


def lift_to_polynomials(c: BasedChainComplex) -> BasedChainComplex:
    """Replace truncated-series entries by their known coefficients.

    Exact when the complex was built from polynomial data at an order that
    covers it (the incidence-data contract); polynomial and integer
    complexes pass through unchanged.
    """
    if c.ring.kind in ("poly", "ratfunc", "rat"):
        return c
    if c.ring.kind == "int":
        return c.map_entries(lambda x: LaurentPolynomial((x,)), ZT)
    if c.ring.kind != "series" or c.ring.coeff != INT:
        raise UnsupportedChange(f"cannot lift {c.ring.tag} to polynomials")
    ring = ZT_LAURENT if c.ring.laurent else ZT
    return c.map_entries(lambda s: s.to_polynomial(), ring)


def homology_ranks(c: BasedChainComplex) -> list[int]:
    """Homology ranks over the fraction field Q(t), one per degree."""
    if c.ring.kind == "series":
        c = lift_to_polynomials(c)
    bnd_rank = {}
    for k in range(1, c.top_degree + 1):
        m = c.boundary(k)
        bnd_rank[k] = mat_rank_ff(m) if m.nrows and m.ncols else 0
    return [c.rank(k) - bnd_rank.get(k, 0) - bnd_rank.get(k + 1, 0) for k in c.degrees()]


def euler_characteristic(c: BasedChainComplex) -> int:
    return sum((-1) ** k * r for k, r in enumerate(homology_ranks(c)))


def is_acyclic(c: BasedChainComplex) -> bool:
    return all(r == 0 for r in homology_ranks(c))


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class Tower:
    """Truncations of one complex over Z[t]/t^n for n = 1 .. len(levels).

    levels[i] lives over the series ring of order i+1; all levels share the
    same bases, and each level must be the mod-t^n reduction of the next.
    """

    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        for i, lvl in enumerate(self.levels):
            if lvl.ring.kind != "series" or lvl.ring.order != i + 1:
                raise ShapeMismatch(
                    f"tower level {i + 1} must live over a series ring mod t^{i + 1}"
                )

    @property
    def height(self):
        return len(self.levels)


@dataclass(frozen=True)
class TowerReport:
    ok: bool
    level: int | None = None

    def __str__(self):
        return "PASS: tower is compatible" if self.ok else f"FAIL: level {self.level}"


def tower_check(t: Tower) -> TowerReport:
    """Each level must equal the reduction of the next, on matching bases.

    The reported level for a failing adjacent pair (n, n+1) is n+1 when the
    two complexes share bases (a corrupted higher level), n otherwise.
    """
    for n in range(1, t.height):
        lower, upper = t.levels[n - 1], t.levels[n]
        if lower.bases != upper.bases:
            return TowerReport(False, n)
        reduced = base_change(upper, "mod", order=n)
        if not (reduced == lower):
            return TowerReport(False, n + 1)
    return TowerReport(True)


def inverse_limit(t: Tower, order: int) -> BasedChainComplex:
    """Reassemble the complex over Z[[t]] mod t^order from its truncations."""
    report = tower_check(t)
    if not report.ok:
        raise InconsistentTower(f"tower fails the compatibility check at level {report.level}")
    if order > t.height:
        raise InconsistentTower(f"requested order {order} exceeds the tower height {t.height}")
    top = t.levels[order - 1]
    new_ring = series_ring(top.ring.coeff, order, laurent=top.ring.laurent)
    return top.map_entries(new_ring.coerce, new_ring)


def truncation_tower(c: BasedChainComplex, n_max: int) -> Tower:
    """The tower of mod-t^n reductions, n = 1 .. n_max."""
    return Tower(tuple(base_change(c, "mod", order=n) for n in range(1, n_max + 1)))


# ---------------------------------------------------------------------------
# cones, sums, mapping torus


def _block(rows_of_blocks) -> Matrix:
    return vstack([hstack(list(row)) for row in rows_of_blocks])


def mapping_cone(f: ChainMap) -> BasedChainComplex:
    """Cone with boundary [[-d_src, 0], [f, d_tgt]] on src_{k-1} (+) tgt_k."""
    src, tgt = f.source, f.target
    top = max(src.top_degree + 1, tgt.top_degree)
    bases = [
        tuple(f"s.{x}" for x in src.basis(k - 1)) + tuple(f"t.{x}" for x in tgt.basis(k))
        for k in range(top + 1)
    ]
    bnd = {}
    for k in range(1, top + 1):
        bnd[k] = _block(
            [
                [-(src.boundary(k - 1)), Matrix.zeros(src.rank(k - 2), tgt.rank(k))],
                [f.matrix(k - 1), tgt.boundary(k)],
            ]
        )
    return BasedChainComplex(src.ring, bases, bnd)


def direct_sum(a: BasedChainComplex, b: BasedChainComplex) -> BasedChainComplex:
    if a.ring.tag != b.ring.tag:
        raise ShapeMismatch("direct sum needs a common coefficient ring")
    top = max(a.top_degree, b.top_degree)
    bases = [
        tuple(f"a.{x}" for x in a.basis(k)) + tuple(f"b.{x}" for x in b.basis(k))
        for k in range(top + 1)
    ]
    bnd = {
        k: _block(
            [
                [a.boundary(k), Matrix.zeros(a.rank(k - 1), b.rank(k))],
                [Matrix.zeros(b.rank(k - 1), a.rank(k)), b.boundary(k)],
            ]
        )
        for k in range(1, top + 1)
    }
    return BasedChainComplex(a.ring, bases, bnd)


def algebraic_mapping_torus(h_list) -> BasedChainComplex:
    """Two-row complex over Z[t] whose torsion encodes the monodromy zeta.

    Input: square integer matrices h_k acting degreewise on a complex with
    zero boundary.  Degree k module is C_k (+) C_{k-1}; the only nonzero
    boundary block maps the shifted summand by 1 - t*h_{k-1}.
    """
    h: dict[int, Matrix] = {}
    for k, m in enumerate(h_list):
        if m is None:
            continue
        if not isinstance(m, Matrix):
            m = Matrix(m)
        if not m.is_square:
            raise ShapeMismatch(f"h_{k} must be square, got {m.shape}")
        if m.nrows:
            h[k] = m
    top = (max(h) + 1) if h else 0

    def rank(k):
        return h[k].nrows if k in h else 0

    bases = [
        tuple(f"x{k}.{i}" for i in range(rank(k)))
        + tuple(f"y{k - 1}.{i}" for i in range(rank(k - 1)))
        for k in range(top + 1)
    ]
    t = LaurentPolynomial.t()
    bnd = {}
    for k in range(1, top + 1):
        r, s = rank(k - 1), rank(k - 2)
        data = [[LaurentPolynomial() for _ in range(rank(k) + r)] for _ in range(r + s)]
        if r:
            hk = h[k - 1]
            for i in range(r):
                for j in range(r):
                    diag = LaurentPolynomial((1,)) if i == j else LaurentPolynomial()
                    data[i][rank(k) + j] = diag - t * hk.data[i][j]
        bnd[k] = Matrix(data, ncols=rank(k) + r)
    return BasedChainComplex(ZT, bases, bnd)


# ---------------------------------------------------------------------------
# torsion


@dataclass(frozen=True)
class TorsionResult:
    """Raw and normalized torsion of an acyclic based complex.

    raw is a rational function (field route) or a truncated series (series
    route); the normalized value strips sign * t^power so that witt is an
    integer series with constant term 1.
    """

    raw: object
    sign: int
    power: int
    witt: WittVector
    rf_normalized: RationalFunction | None = None

    @property
    def series(self) -> TruncatedSeries:
        return self.witt.series

    def __str__(self):
        return f"{self.witt} (raw = {self.raw})"


def _normalize_rf(raw: RationalFunction, order: int) -> TorsionResult:
    if raw.is_zero:
        raise NormalizationImpossible("torsion is zero")
    v = raw.val
    shifted = RationalFunction(raw.num.shift(-v), raw.den)
    c0 = shifted.lowest_coeff()
    if c0 not in (1, -1):
        raise NormalizationImpossible(
            f"lowest coefficient {c0} of the torsion is not a unit of Z"
        )
    sign = int(c0)
    normalized = shifted * sign
    expansion = rf_expand(normalized, order)
    if not is_integral(expansion):
        raise NormalizationImpossible(
            f"normalized torsion {normalized} does not expand integrally"
        )
    return TorsionResult(raw, sign, v, WittVector(expansion.to_int()), normalized)


def _normalize_series(raw: TruncatedSeries, order: int) -> TorsionResult:
    if raw.is_zero:
        raise NormalizationImpossible("torsion is zero mod its truncation")
    v = raw.min_deg
    shifted = raw.shift(-v)
    c0 = shifted.c(0)
    if c0 not in (1, -1):
        raise NormalizationImpossible(
            f"lowest coefficient {c0} of the torsion is not a unit of Z"
        )
    sign = 1 if c0 == 1 else -1
    normalized = (shifted * sign).truncate(order)
    if not is_integral(normalized):
        raise NormalizationImpossible(
            f"normalized torsion {normalized} does not expand integrally"
        )
    return TorsionResult(raw, sign, v, WittVector(normalized.to_int()))


def _contraction(c: BasedChainComplex, strategy: str):
    """Chain contraction G of an acyclic complex over Q(t): dG + Gd = 1.

    G_k maps degree k-1 to degree k.  The pivot columns of d_k span a
    complement A_k of ker d_k; d_k maps A_k isomorphically onto
    ker d_{k-1}, and G inverts that isomorphism (vanishing on A_{k-1}).
    """
    top = c.top_degree
    bnd = {k: c.boundary(k).map(to_rf) for k in range(1, top + 1)}
    piv = {k: pivot_columns(bnd[k], strategy) for k in bnd}
    gamma = {}
    for k in range(1, top + 1):
        rows = c.rank(k - 1)
        cols_k = c.rank(k)
        if rows == 0 or cols_k == 0:
            gamma[k] = Matrix.zeros(cols_k, rows)
            continue
        bk = bnd[k]
        sk = piv.get(k, [])
        bk_s = bk.submatrix(range(bk.nrows), sk)
        prev = bnd.get(k - 1)
        sprev = piv.get(k - 1, [])
        cols = []
        for j in range(rows):
            if j in sprev:
                cols.append([RationalFunction.zero()] * cols_k)
                continue
            if prev is None or not sprev:
                u = [
                    RationalFunction.one() if i == j else RationalFunction.zero()
                    for i in range(rows)
                ]
            else:
                prev_s = prev.submatrix(range(prev.nrows), sprev)
                alpha = solve_field(prev_s, prev.col(j))
                if alpha is None:
                    raise NotAcyclic(k - 1, "no splitting: complex is not acyclic")
                a_part = [RationalFunction.zero()] * rows
                for idx, jj in enumerate(sprev):
                    a_part[jj] = alpha[idx]
                u = [
                    (RationalFunction.one() if i == j else RationalFunction.zero()) - a_part[i]
                    for i in range(rows)
                ]
            y = solve_field(bk_s, u)
            if y is None:
                raise NotAcyclic(k - 1, "kernel vector is not a boundary")
            col = [RationalFunction.zero()] * cols_k
            for idx, jj in enumerate(sk):
                col[jj] = y[idx]
            cols.append(col)
        gamma[k] = Matrix(
            [[cols[j][i] for j in range(rows)] for i in range(cols_k)], ncols=rows
        )
    return gamma


def _torsion_field(c: BasedChainComplex, order: int, strategy: str) -> TorsionResult:
    ranks = homology_ranks(c)
    for k, r in enumerate(ranks):
        if r:
            raise NotAcyclic(k)
    cq = c if c.ring.kind == "ratfunc" else base_change(c, "rationalize")
    gamma = _contraction(cq, strategy)
    top = cq.top_degree
    odd = [k for k in range(1, top + 1, 2) if cq.rank(k)]
    even = [k for k in range(0, top + 1, 2) if cq.rank(k)]
    n_odd = sum(cq.rank(k) for k in odd)
    n_even = sum(cq.rank(k) for k in even)
    if n_odd != n_even:
        raise NotAcyclic(detail="odd and even total ranks differ")
    if n_odd == 0:
        return _normalize_rf(RationalFunction.one(), order)
    row_base = {}
    pos = 0
    for k in even:
        row_base[k] = pos
        pos += cq.rank(k)
    data = [[RationalFunction.zero()] * n_odd for _ in range(n_even)]
    col = 0
    for k in odd:
        bk = cq.boundary(k)
        gk = gamma.get(k + 1)
        for j in range(cq.rank(k)):
            if k - 1 in row_base:
                for i in range(cq.rank(k - 1)):
                    data[row_base[k - 1] + i][col + j] = bk.data[i][j]
            if gk is not None and k + 1 in row_base:
                for i in range(cq.rank(k + 1)):
                    data[row_base[k + 1] + i][col + j] = gk.data[i][j]
        col += cq.rank(k)
    raw = det_field(Matrix(data, ncols=n_odd))
    if raw.is_zero:
        raise NotAcyclic(detail="contraction determinant vanished")
    return _normalize_rf(raw, order)


def _torsion_series(c: BasedChainComplex, order: int) -> TorsionResult:
    """Torsion over a truncated series ring by based pair cancellation.

    Cancelling the pair (x_j in degree k, y_i in degree k-1) through a pivot
    a = d_k[i][j] applies the Schur correction to the rest of d_k and just
    deletes row j of d_{k+1} and column i of d_{k-1} (d^2 = 0 determines
    them).  tau picks up a^{(-1)^(k+1)}.  Pivots must have zero valuation
    unless t is a unit of the ring.  Deterministic pivot choice: smallest
    valuation, then lowest degree, row-major; the raw sign depends on that
    order (the target group quotients signs out), the normalized value does
    not.
    """
    if c.ring.kind != "series":
        raise UnsupportedChange("series torsion needs a truncated series ring")
    work = base_change(c, "mod", order=min(order, c.ring.order))
    laurent = work.ring.laurent
    top = work.top_degree
    alive = {k: list(range(work.rank(k))) for k in range(top + 1)}
    mats = {}
    for k in range(1, top + 1):
        mats[k] = [[x.to_rat() if isinstance(x, TruncatedSeries) else x for x in row]
                   for row in work.boundary(k).data]

    def nonzero(x):
        return isinstance(x, TruncatedSeries) and not x.is_zero

    num = TruncatedSeries.one(RAT, 1 << 60)
    den = TruncatedSeries.one(RAT, 1 << 60)
    while True:
        best = None
        for k in range(1, top + 1):
            if not alive[k - 1] or not alive[k]:
                continue
            for i in alive[k - 1]:
                row = mats[k][i]
                for j in alive[k]:
                    x = row[j]
                    if not nonzero(x):
                        continue
                    if best is None or x.val < best[0]:
                        best = (x.val, k, i, j)
                        if not laurent and x.val == 0:
                            break
                if best and not laurent and best[0] == 0:
                    break
            if best and not laurent and best[0] == 0:
                break
        if best is None:
            break
        v, k, i, j = best
        if v > 0 and not laurent:
            deg = next(kk for kk, gens in alive.items() if gens)
            raise NotAcyclic(deg, f"no unit pivot left (best valuation {v}) over {work.ring.tag}")
        piv = mats[k][i][j]
        if k % 2 == 1:
            num = num * piv
        else:
            den = den * piv
        piv_inv = series_invert(piv)
        rest_rows = [r for r in alive[k - 1] if r != i]
        rest_cols = [s for s in alive[k] if s != j]
        for r in rest_rows:
            lead = mats[k][r][j]
            if nonzero(lead):
                factor = lead * piv_inv
                for s in rest_cols:
                    mats[k][r][s] = mats[k][r][s] - factor * mats[k][i][s]
        alive[k - 1] = rest_rows
        alive[k] = rest_cols
    leftover = [k for k, gens in alive.items() if gens]
    if leftover:
        raise NotAcyclic(leftover[0], "generators remain after exhausting unit pivots")
    if den.is_zero:
        raise NotAcyclic(detail="pivot product vanished")
    raw = num * series_invert(den)
    if raw.order > order + max(raw.min_deg, 0):
        raw = raw.truncate(order + max(raw.min_deg, 0))
    return _normalize_series(raw, order)


def torsion(c: BasedChainComplex, order: int = DEFAULT_ORDER, strategy: str = "first") -> TorsionResult:
    """Torsion of an acyclic based complex, raw and normalized.

    Complexes over Z, Q, Z[t] or Q(t) go through the fraction-field
    contraction algorithm; complexes over truncated series rings go through
    based pair cancellation.
    """
    if c.ring.kind == "series":
        return _torsion_series(c, order)
    return _torsion_field(c, order, strategy)


def torsion_of_map(f: ChainMap, order: int = DEFAULT_ORDER) -> TorsionResult:
    """Torsion of a chain equivalence, computed on its mapping cone."""
    cone = mapping_cone(f)
    try:
        return torsion(cone, order)
    except NotAcyclic as exc:
        raise NotAnEquivalence(f"mapping cone is not acyclic: {exc}") from exc


# ---------------------------------------------------------------------------
# filtrations


@dataclass(frozen=True)
class LevelFiltration:
    """A complex plus a level assignment for every basis label."""

    complex: BasedChainComplex
    levels: dict

    def level(self, label):
        return self.levels[label]


@dataclass(frozen=True)
class FiltrationReport:
    good: bool
    nice: bool
    bad_level: int | None = None
    detail: str = ""

    def __str__(self):
        verdict = "good" if self.good else f"not good (level {self.bad_level}: {self.detail})"
        return f"filtration: {verdict}; nice: {self.nice}"


def filtration_check(f: LevelFiltration) -> FiltrationReport:
    """Is the filtration good (and, for this based encoding, nice)?

    The boundary must never raise the level; each level's diagonal block,
    viewed as a complex over Q(t), must have homology concentrated in the
    degree equal to that level.  Freeness of the graded pieces is automatic
    for based complexes, so nice coincides with good here.
    """
    c = f.complex
    for k in range(1, c.top_degree + 1):
        m = c.boundary(k)
        for i, row_label in enumerate(c.basis(k - 1)):
            for j, col_label in enumerate(c.basis(k)):
                if not (m.data[i][j] == 0) and f.level(row_label) > f.level(col_label):
                    raise NotLevelTriangular(
                        f"boundary entry ({row_label}, {col_label}) raises the level"
                    )
    all_levels = sorted({f.level(x) for basis in c.bases for x in basis})
    for lvl in all_levels:
        idx = {k: [j for j, x in enumerate(c.basis(k)) if f.level(x) == lvl] for k in c.degrees()}
        bases = [tuple(c.basis(k)[j] for j in idx[k]) for k in c.degrees()]
        bnd = {}
        for k in range(1, c.top_degree + 1):
            if idx[k] and idx[k - 1]:
                bnd[k] = c.boundary(k).submatrix(idx[k - 1], idx[k])
        block = BasedChainComplex(c.ring, bases, bnd, validate=False)
        ranks = homology_ranks(block)
        for k, r in enumerate(ranks):
            if r and k != lvl:
                return FiltrationReport(False, False, lvl, f"H_{k} of the level-{lvl} block has rank {r}")
    return FiltrationReport(True, True)


# ---------------------------------------------------------------------------
# chain homotopy


def chain_maps_homotopic(f: ChainMap, g: ChainMap):
    """Solve f - g = d s + s d over Q(t); returns {k: Matrix} or None.

    Decides homotopy of chain maps between complexes with exact (non-series)
    coefficients by exact linear algebra.
    """
    if f.source.bases != g.source.bases or f.target.bases != g.target.bases:
        raise InvalidChainMap("maps must share source and target")
    if f.source.ring.kind == "series":
        raise UnsupportedChange("homotopy decision needs exact coefficients; lift first")
    src = f.source if f.source.ring.kind == "ratfunc" else base_change(f.source, "rationalize")
    tgt = f.target if f.target.ring.kind == "ratfunc" else base_change(f.target, "rationalize")
    top = max(src.top_degree, tgt.top_degree)
    var_index = {}
    n_vars = 0
    for k in range(top + 1):
        for i in range(tgt.rank(k + 1)):
            for j in range(src.rank(k)):
                var_index[(k, i, j)] = n_vars
                n_vars += 1
    rows = []
    rhs = []
    for k in range(top + 1):
        diff = f.matrix(k).map(to_rf) - g.matrix(k).map(to_rf)
        dk1 = tgt.boundary(k + 1) if k < tgt.top_degree else Matrix.zeros(0, tgt.rank(k))
        dk1 = dk1.map(to_rf) if dk1.nrows or dk1.ncols else dk1
        dsrc = src.boundary(k).map(to_rf) if k >= 1 else Matrix.zeros(0, src.rank(k))
        for a in range(tgt.rank(k)):
            for b in range(src.rank(k)):
                row = [RationalFunction.zero()] * n_vars
                for i in range(tgt.rank(k + 1)):
                    coeff = tgt.boundary(k + 1).data[a][i]
                    coeff = to_rf(coeff)
                    if not coeff.is_zero:
                        row[var_index[(k, i, b)]] = coeff
                if k >= 1:
                    for j in range(src.rank(k - 1)):
                        coeff = to_rf(src.boundary(k).data[j][b])
                        if not coeff.is_zero:
                            row[var_index[(k - 1, a, j)]] = coeff
                rows.append(row)
                rhs.append(diff.data[a][b])
    if not rows:
        return {}
    sol = solve_field(Matrix(rows, ncols=n_vars), rhs)
    if sol is None:
        return None
    out = {}
    for k in range(top + 1):
        if tgt.rank(k + 1) and src.rank(k):
            out[k] = Matrix(
                [
                    [sol[var_index[(k, i, j)]] for j in range(src.rank(k))]
                    for i in range(tgt.rank(k + 1))
                ],
                ncols=src.rank(k),
            )
    return out
